//! Brute-force ground truth, independent of the generating-series engine:
//! direct counting of absolutely indecomposable representations over small
//! prime fields, direct enumeration of cover-thin colored trees, and the
//! sweep that cross-validates the engine against the counts.

use std::collections::HashSet;
use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::covering::parallel_map;
use crate::error::{Error, Result};
use crate::kac::kac_polynomial;
use crate::quiver::{dim_vectors_up_to, enumerate_connected, DimVector, Quiver};

const MAX_POINTS: u64 = 10_000_000;
const MAX_GROUP: u64 = 100_000;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest generator of the multiplicative group of F_p.
pub fn find_primitive_root(p: u64) -> u64 {
    assert!(is_prime(p));
    if p == 2 {
        return 1;
    }
    'candidates: for g in 2..p {
        let mut x = g;
        for _ in 1..p - 2 {
            x = x * g % p;
            if x == 1 {
                continue 'candidates;
            }
        }
        return g;
    }
    unreachable!("every prime field has a primitive root");
}

/// Row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Mat {
    fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    fn at(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    fn mul(&self, other: &Mat, p: u64) -> Mat {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = (out.at(r, c) as u64 + a * other.at(k, c) as u64) % p;
                    out.set(r, c, v as u8);
                }
            }
        }
        out
    }

    /// Invertibility over F_p by elimination; leaves self untouched.
    fn is_invertible(&self, p: u64) -> bool {
        debug_assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.data.clone();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return false;
            };
            if pivot != col {
                for c in 0..n {
                    m.swap(pivot * n + c, col * n + c);
                }
            }
            let inv = mod_inverse(m[col * n + col] as u64, p);
            for r in col + 1..n {
                let factor = m[r * n + col] as u64 * inv % p;
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let v = (m[r * n + c] as u64 + (p - factor) * m[col * n + c] as u64) % p;
                    m[r * n + c] = v as u8;
                }
            }
        }
        true
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p; p is a small prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// One generator of GL_alpha: a matrix acting at a single vertex, with its
/// inverse precomputed.
struct Generator {
    vertex: usize,
    mat: Mat,
    inv: Mat,
}

/// The representation space R(Q, alpha) over F_p: all tuples of arrow
/// matrices, indexed by mixed-radix codes in [0, p^D).
struct RepSpace<'a> {
    quiver: &'a Quiver,
    p: u64,
    dims: Vec<usize>,
    /// (rows, cols) = (alpha_dst, alpha_src) per arrow.
    shapes: Vec<(usize, usize)>,
    size: u64,
}

impl<'a> RepSpace<'a> {
    fn new(quiver: &'a Quiver, alpha: &DimVector, p: u64) -> Result<RepSpace<'a>> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        quiver.check_dim_len(alpha)?;
        if !alpha.is_nonnegative() {
            return Err(Error::input("dimension vector must be non-negative"));
        }
        if alpha.is_zero() {
            return Err(Error::input("dimension vector must be non-zero"));
        }
        let dims: Vec<usize> = alpha.entries().iter().map(|&x| x as usize).collect();
        let shapes: Vec<(usize, usize)> =
            quiver.arrows().iter().map(|a| (dims[a.dst], dims[a.src])).collect();
        let digits: usize = shapes.iter().map(|&(r, c)| r * c).sum();
        let mut size = 1u64;
        for _ in 0..digits {
            size = size.saturating_mul(p);
            if size > MAX_POINTS {
                return Err(Error::resource(format!(
                    "representation space has more than {MAX_POINTS} points"
                )));
            }
        }
        let mut group = 1u64;
        for &n in &dims {
            let pn = p.pow(n as u32);
            let mut pk = 1u64;
            for _ in 0..n {
                group = group.saturating_mul(pn - pk);
                pk *= p;
                if group > MAX_GROUP {
                    return Err(Error::resource(format!(
                        "|GL_alpha(F_{p})| exceeds {MAX_GROUP}"
                    )));
                }
            }
        }
        Ok(RepSpace { quiver, p, dims, shapes, size })
    }

    fn decode(&self, mut code: u64) -> Vec<Mat> {
        let mut mats = Vec::with_capacity(self.shapes.len());
        for &(rows, cols) in &self.shapes {
            let mut m = Mat::zero(rows, cols);
            for v in m.data.iter_mut() {
                *v = (code % self.p) as u8;
                code /= self.p;
            }
            mats.push(m);
        }
        mats
    }

    fn encode(&self, mats: &[Mat]) -> u64 {
        let mut code = 0u64;
        let mut scale = 1u64;
        for m in mats {
            for &v in &m.data {
                code += v as u64 * scale;
                scale *= self.p;
            }
        }
        code
    }

    /// Transvections and one multiplicative generator per diagonal slot,
    /// for every vertex.
    fn generators(&self) -> Vec<Generator> {
        let mut gens = Vec::new();
        for (vertex, &n) in self.dims.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    if r == c {
                        continue;
                    }
                    let mut mat = Mat::identity(n);
                    mat.set(r, c, 1);
                    let mut inv = Mat::identity(n);
                    inv.set(r, c, (self.p - 1) as u8);
                    gens.push(Generator { vertex, mat, inv });
                }
            }
            if self.p > 2 {
                let g = find_primitive_root(self.p);
                let g_inv = mod_inverse(g, self.p);
                for s in 0..n {
                    let mut mat = Mat::identity(n);
                    mat.set(s, s, g as u8);
                    let mut inv = Mat::identity(n);
                    inv.set(s, s, g_inv as u8);
                    gens.push(Generator { vertex, mat, inv });
                }
            }
        }
        gens
    }

    /// The base-change M_a -> X_dst M_a X_src^{-1} for a single-vertex
    /// generator.
    fn apply(&self, gen: &Generator, mats: &[Mat]) -> Vec<Mat> {
        let mut out = Vec::with_capacity(mats.len());
        for (arrow, m) in self.quiver.arrows().iter().zip(mats) {
            let mut m = m.clone();
            if arrow.dst == gen.vertex {
                m = gen.mat.mul(&m, self.p);
            }
            if arrow.src == gen.vertex {
                m = m.mul(&gen.inv, self.p);
            }
            out.push(m);
        }
        out
    }

    /// Dimension of End(M) = solutions (X_i) of X_dst M_a = M_a X_src,
    /// together with a basis (each vector lists the X_i entries,
    /// vertex-major row-major).
    fn end_algebra(&self, mats: &[Mat]) -> (usize, Vec<Vec<u8>>) {
        let offsets: Vec<usize> = self
            .dims
            .iter()
            .scan(0usize, |acc, &n| {
                let o = *acc;
                *acc += n * n;
                Some(o)
            })
            .collect();
        let unknowns: usize = self.dims.iter().map(|&n| n * n).sum();
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for (arrow, m) in self.quiver.arrows().iter().zip(mats) {
            let (nv, nu) = (self.dims[arrow.dst], self.dims[arrow.src]);
            for r in 0..nv {
                for c in 0..nu {
                    let mut row = vec![0u8; unknowns];
                    // (X_v M)_{rc} = sum_k X_v[r,k] M[k,c]
                    for k in 0..nv {
                        let col = offsets[arrow.dst] + r * nv + k;
                        row[col] = ((row[col] as u64 + m.at(k, c) as u64) % self.p) as u8;
                    }
                    // -(M X_u)_{rc} = -sum_k M[r,k] X_u[k,c]
                    for k in 0..nu {
                        let col = offsets[arrow.src] + k * nu + c;
                        let v = (row[col] as u64 + (self.p - m.at(r, k) as u64) % self.p)
                            % self.p;
                        row[col] = v as u8;
                    }
                    if row.iter().any(|&v| v != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        null_space(rows, unknowns, self.p)
    }

    /// Locality plus residue test on one representative: M is absolutely
    /// indecomposable iff the non-units of End(M) form a subspace of
    /// codimension 1 (then End is local with residue field F_p).
    fn is_absolutely_indecomposable(&self, mats: &[Mat]) -> bool {
        let (r, basis) = self.end_algebra(mats);
        debug_assert!(r >= 1, "the identity endomorphism always exists");
        let unknowns = basis.first().map_or(0, Vec::len);
        // Enumerate all p^r elements; count and span the non-units.
        let mut nonunits: u64 = 0;
        let mut span = RankAccumulator::new(r, self.p);
        let mut coeffs = vec![0u8; r];
        let total = self.p.pow(r as u32);
        for _ in 0..total {
            let mut vec = vec![0u8; unknowns];
            for (k, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (slot, &b) in vec.iter_mut().zip(&basis[k]) {
                    *slot = ((*slot as u64 + c as u64 * b as u64) % self.p) as u8;
                }
            }
            if !self.element_is_unit(&vec) {
                nonunits += 1;
                span.add(&coeffs);
            }
            // Odometer over coefficient vectors.
            for slot in coeffs.iter_mut() {
                *slot += 1;
                if (*slot as u64) < self.p {
                    break;
                }
                *slot = 0;
            }
        }
        nonunits == self.p.pow(r as u32 - 1) && span.rank() == r - 1
    }

    fn element_is_unit(&self, vec: &[u8]) -> bool {
        let mut offset = 0;
        for &n in &self.dims {
            let mat = Mat { rows: n, cols: n, data: vec[offset..offset + n * n].to_vec() };
            if !mat.is_invertible(self.p) {
                return false;
            }
            offset += n * n;
        }
        true
    }
}

/// Null space of the given rows: (dimension, basis vectors).
fn null_space(mut rows: Vec<Vec<u8>>, unknowns: usize, p: u64) -> (usize, Vec<Vec<u8>>) {
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..unknowns {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, r);
        let inv = mod_inverse(rows[rank][col] as u64, p);
        for c in col..unknowns {
            rows[rank][c] = (rows[rank][c] as u64 * inv % p) as u8;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = rows[r][col] as u64;
                for c in col..unknowns {
                    let v = (rows[r][c] as u64 + (p - factor) * rows[rank][c] as u64) % p;
                    rows[r][c] = v as u8;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![0u8; unknowns];
        v[f] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            let coeff = rows[r][f] as u64;
            if coeff != 0 {
                v[pc] = ((p - coeff) % p) as u8;
            }
        }
        basis.push(v);
    }
    (free.len(), basis)
}

/// Incremental rank of a set of F_p vectors (row echelon accumulator).
struct RankAccumulator {
    p: u64,
    rows: Vec<Vec<u8>>,
    width: usize,
}

impl RankAccumulator {
    fn new(width: usize, p: u64) -> RankAccumulator {
        RankAccumulator { p, rows: Vec::new(), width }
    }

    fn add(&mut self, vec: &[u8]) {
        debug_assert_eq!(vec.len(), self.width);
        let mut v = vec.to_vec();
        for row in &self.rows {
            let lead = row.iter().position(|&x| x != 0).expect("stored rows are nonzero");
            if v[lead] != 0 {
                let factor = v[lead] as u64 * mod_inverse(row[lead] as u64, self.p) % self.p;
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = ((*a as u64 + (self.p - factor) * b as u64) % self.p) as u8;
                }
            }
        }
        if v.iter().any(|&x| x != 0) {
            self.rows.push(v);
            self.rows.sort_by_key(|r| r.iter().position(|&x| x != 0));
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Counts absolutely indecomposable representations of (Q, alpha) over F_p
/// by exhausting the representation space: orbit closure under GL_alpha
/// generators, then the End-algebra test on one representative per orbit.
/// Guarded by hard feasibility limits (points and group order).
pub fn count_abs_indec(quiver: &Quiver, alpha: &DimVector, p: u64) -> Result<u64> {
    let space = RepSpace::new(quiver, alpha, p)?;
    let gens = space.generators();
    let mut visited = vec![false; space.size as usize];
    let mut count = 0u64;
    let mut covered = 0u64;
    let mut stack: Vec<u64> = Vec::new();
    for start in 0..space.size {
        if visited[start as usize] {
            continue;
        }
        visited[start as usize] = true;
        stack.push(start);
        let mut orbit = 0u64;
        while let Some(code) = stack.pop() {
            orbit += 1;
            let mats = space.decode(code);
            for gen in &gens {
                let next = space.encode(&space.apply(gen, &mats));
                if !visited[next as usize] {
                    visited[next as usize] = true;
                    stack.push(next);
                }
            }
        }
        covered += orbit;
        if space.is_absolutely_indecomposable(&space.decode(start)) {
            count += 1;
        }
    }
    debug_assert_eq!(covered, space.size, "orbits must partition the space");
    Ok(count)
}

/// Isomorphism classes of bipartite trees with `d` sources and `e` sinks,
/// edges colored by one of `m` colors, pairwise distinct colors at every
/// vertex; sides are preserved by isomorphisms. Counted by exhausting the
/// spanning trees of K_{d,e} and their proper colorings, deduplicated by a
/// minimum rooted canonical encoding.
pub fn enumerate_cover_thin_trees(m: u64, d: u64, e: u64) -> Result<u64> {
    if m < 1 || d < 1 || e < 1 {
        return Err(Error::input("tree enumeration needs m, d, e >= 1"));
    }
    if d + e > 9 {
        return Err(Error::resource("tree enumeration supports d + e <= 9".to_string()));
    }
    let (d, e, m) = (d as usize, e as usize, m as usize);
    let vertices = d + e; // sources 0..d, sinks d..d+e
    let all_edges: Vec<(usize, usize)> =
        (0..d).flat_map(|s| (0..e).map(move |t| (s, d + t))).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();

    // All spanning trees of K_{d,e}: acyclic (vertices-1)-subsets.
    combinations(all_edges.len(), vertices - 1, |subset| {
        let mut parent: Vec<usize> = (0..vertices).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            r
        }
        for &idx in subset {
            let (a, b) = all_edges[idx];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return;
            }
            parent[ra] = rb;
        }
        let tree: Vec<(usize, usize)> = subset.iter().map(|&i| all_edges[i]).collect();
        color_and_canonicalize(&tree, vertices, d, m, &mut seen);
    });
    Ok(seen.len() as u64)
}

/// Calls `f` on every k-subset of 0..n (as a sorted index slice).
fn combinations<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 {
        f(&idx);
        return;
    }
    loop {
        f(&idx);
        // Rightmost index with headroom advances; the tail resets after it.
        let mut i = k - 1;
        while idx[i] == i + n - k {
            if i == 0 {
                return;
            }
            i -= 1;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Enumerates proper m-colorings of the tree edges by backtracking and adds
/// each coloring's canonical form to `seen`.
fn color_and_canonicalize(
    tree: &[(usize, usize)],
    vertices: usize,
    d: usize,
    m: usize,
    seen: &mut HashSet<Vec<u8>>,
) {
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices];
    for (i, &(a, b)) in tree.iter().enumerate() {
        adjacency[a].push((b, i));
        adjacency[b].push((a, i));
    }
    let mut colors = vec![usize::MAX; tree.len()];
    backtrack(tree, &adjacency, &mut colors, 0, m, &mut |colors| {
        seen.insert(canonical_form(&adjacency, colors, d, vertices));
    });
}

fn backtrack(
    tree: &[(usize, usize)],
    adjacency: &[Vec<(usize, usize)>],
    colors: &mut Vec<usize>,
    edge: usize,
    m: usize,
    emit: &mut impl FnMut(&[usize]),
) {
    if edge == tree.len() {
        emit(colors);
        return;
    }
    let (a, b) = tree[edge];
    'colors: for c in 0..m {
        for &(_, other) in adjacency[a].iter().chain(&adjacency[b]) {
            if other != edge && colors[other] == c {
                continue 'colors;
            }
        }
        colors[edge] = c;
        backtrack(tree, adjacency, colors, edge + 1, m, emit);
        colors[edge] = usize::MAX;
    }
}

/// Minimum over all roots of the rooted encoding: side marker, then the
/// sorted child blocks, each prefixed by its edge color.
fn canonical_form(
    adjacency: &[Vec<(usize, usize)>],
    colors: &[usize],
    d: usize,
    vertices: usize,
) -> Vec<u8> {
    fn encode(
        v: usize,
        parent: usize,
        adjacency: &[Vec<(usize, usize)>],
        colors: &[usize],
        d: usize,
    ) -> Vec<u8> {
        let mut children: Vec<Vec<u8>> = adjacency[v]
            .iter()
            .filter(|&&(w, _)| w != parent)
            .map(|&(w, edge)| {
                let mut block = vec![colors[edge] as u8 + 1];
                block.extend(encode(w, v, adjacency, colors, d));
                block
            })
            .collect();
        children.sort();
        let mut out = vec![b'(', if v < d { b's' } else { b't' }];
        for c in children {
            out.extend(c);
        }
        out.push(b')');
        out
    }
    (0..vertices)
        .map(|root| encode(root, usize::MAX, adjacency, colors, d))
        .min()
        .expect("at least one vertex")
}

/// Outcome of one sweep instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepStatus {
    Ok,
    Fail,
    Skipped,
}

impl fmt::Display for SweepStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepStatus::Ok => "OK",
            SweepStatus::Fail => "FAIL",
            SweepStatus::Skipped => "SKIPPED",
        })
    }
}

/// One (quiver, alpha, p) comparison.
#[derive(Debug, Clone)]
pub struct SweepLine {
    pub quiver: String,
    pub alpha: DimVector,
    pub p: u64,
    pub engine: BigInt,
    pub oracle: Option<u64>,
    pub status: SweepStatus,
}

/// Engine-vs-oracle comparison over a family of instances.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub lines: Vec<SweepLine>,
}

impl SweepReport {
    pub fn mismatches(&self) -> usize {
        self.lines.iter().filter(|l| l.status == SweepStatus::Fail).count()
    }

    pub fn skipped(&self) -> usize {
        self.lines.iter().filter(|l| l.status == SweepStatus::Skipped).count()
    }

    pub fn ok(&self) -> bool {
        self.mismatches() == 0
    }

    /// One line per instance: quiver, alpha, p, engine value, oracle value
    /// (`-` when skipped), status.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            let oracle =
                line.oracle.map_or_else(|| "-".to_string(), |v| v.to_string());
            let _ = writeln!(
                out,
                "{} {} {} {} {} {}",
                line.quiver, line.alpha, line.p, line.engine, oracle, line.status
            );
        }
        out
    }
}

/// Runs the oracle against the engine on every connected quiver with at
/// most 2 vertices and 3 arrows (loops included), every nonzero alpha with
/// total at most `max_total_dim`, and every prime in `primes`. Instances
/// outside the oracle's feasibility guard are reported as skipped.
pub fn oracle_sweep(max_total_dim: i64, primes: &[u64], threads: usize) -> Result<SweepReport> {
    let mut instances: Vec<(Quiver, DimVector, u64)> = Vec::new();
    for quiver in enumerate_connected(2, 3) {
        for alpha in dim_vectors_up_to(quiver.num_vertices(), max_total_dim) {
            for &p in primes {
                instances.push((quiver.clone(), alpha.clone(), p));
            }
        }
    }
    let lines = parallel_map(&instances, threads, |(quiver, alpha, p)| {
        let engine = kac_polynomial(quiver, alpha)?.eval(&BigInt::from(*p));
        let (oracle, status) = match count_abs_indec(quiver, alpha, *p) {
            Ok(count) => {
                let matches = BigInt::from(count) == engine;
                (Some(count), if matches { SweepStatus::Ok } else { SweepStatus::Fail })
            }
            Err(Error::Resource(_)) => (None, SweepStatus::Skipped),
            Err(other) => return Err(other),
        };
        Ok(SweepLine {
            quiver: quiver.canonical_serialization(),
            alpha: alpha.clone(),
            p: *p,
            engine,
            oracle,
            status,
        })
    })?;
    Ok(SweepReport { lines })
}
