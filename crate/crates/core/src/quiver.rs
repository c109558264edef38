//! Finite quivers, dimension vectors, and root-system combinatorics.
//!
//! A quiver is a finite directed multigraph: named vertices, named arrows,
//! loops and parallel arrows allowed. Dimension vectors carry signed entries
//! so that reflections can leave the positive cone; operations that require
//! non-negative input check it explicitly.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// One arrow of a quiver. `src`/`dst` are vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite quiver with named vertices and arrows.
#[derive(Debug, Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    index: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}
impl Eq for Quiver {}

impl Quiver {
    /// Builds a quiver from vertex ids and `(arrow_id, src_id, dst_id)`
    /// triples. Ids must be unique per kind and endpoints must exist.
    pub fn new<S: Into<String>>(vertices: Vec<S>, arrows: Vec<(S, S, S)>) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(Error::input("a quiver needs at least one vertex"));
        }
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::input("empty vertex id"));
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate vertex id `{v}`")));
            }
        }
        let mut arrow_ids = HashMap::new();
        let mut built = Vec::with_capacity(arrows.len());
        for (k, (id, src, dst)) in arrows.into_iter().enumerate() {
            let (id, src, dst) = (id.into(), src.into(), dst.into());
            if id.is_empty() {
                return Err(Error::input("empty arrow id"));
            }
            if arrow_ids.insert(id.clone(), k).is_some() {
                return Err(Error::input(format!("duplicate arrow id `{id}`")));
            }
            let src = *index
                .get(&src)
                .ok_or_else(|| Error::input(format!("arrow `{id}`: unknown vertex `{src}`")))?;
            let dst = *index
                .get(&dst)
                .ok_or_else(|| Error::input(format!("arrow `{id}`: unknown vertex `{dst}`")))?;
            built.push(Arrow { id, src, dst });
        }
        Ok(Quiver { vertices, arrows: built, index })
    }

    /// `m` parallel arrows `1 -> 2` (the m-Kronecker quiver).
    pub fn kronecker(m: usize) -> Quiver {
        let arrows = (1..=m).map(|k| (format!("a{k}"), "1".to_string(), "2".to_string())).collect();
        Quiver::new(vec!["1".to_string(), "2".to_string()], arrows).expect("valid builtin")
    }

    /// One vertex with `g` loops.
    pub fn loops(g: usize) -> Quiver {
        let arrows = (1..=g).map(|k| (format!("a{k}"), "1".to_string(), "1".to_string())).collect();
        Quiver::new(vec!["1".to_string()], arrows).expect("valid builtin")
    }

    /// Oriented cycle on `n` vertices (`cycle(1)` is a single loop).
    pub fn cycle(n: usize) -> Result<Quiver> {
        if n == 0 {
            return Err(Error::input("cycle needs at least one vertex"));
        }
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..=n)
            .map(|i| (format!("a{i}"), i.to_string(), (i % n + 1).to_string()))
            .collect();
        Quiver::new(vertices, arrows)
    }

    /// Linearly oriented path `1 -> 2 -> ... -> n` (type A_n).
    pub fn path(n: usize) -> Result<Quiver> {
        if n == 0 {
            return Err(Error::input("path needs at least one vertex"));
        }
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        Quiver::new(vertices, arrows)
    }

    /// Star with center `0` receiving one arrow from each of the `k` leaves
    /// `1, ..., k` (so `star(4)` is a D4-affine shape with all arrows inward).
    pub fn star(k: usize) -> Result<Quiver> {
        let mut vertices = vec!["0".to_string()];
        vertices.extend((1..=k).map(|i| i.to_string()));
        let arrows = (1..=k)
            .map(|i| (format!("a{i}"), i.to_string(), "0".to_string()))
            .collect();
        Quiver::new(vertices, arrows)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_id(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Number of loops based at `i`.
    pub fn loops_at(&self, i: usize) -> usize {
        self.arrows.iter().filter(|a| a.src == i && a.dst == i).count()
    }

    pub fn is_loop_free_at(&self, i: usize) -> bool {
        self.loops_at(i) == 0
    }

    /// Same vertices, every arrow reversed (ids preserved).
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { id: a.id.clone(), src: a.dst, dst: a.src })
                .collect(),
            index: self.index.clone(),
        }
    }

    /// Undirected adjacency lists (loops ignored; multiplicities collapsed).
    fn underlying_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for a in &self.arrows {
            if a.src != a.dst {
                if !adj[a.src].contains(&a.dst) {
                    adj[a.src].push(a.dst);
                }
                if !adj[a.dst].contains(&a.src) {
                    adj[a.dst].push(a.src);
                }
            }
        }
        adj
    }

    /// Connected-component label per vertex (underlying graph).
    pub fn component_labels(&self) -> Vec<usize> {
        let adj = self.underlying_adjacency();
        let mut label = vec![usize::MAX; self.vertices.len()];
        let mut next = 0;
        for start in 0..self.vertices.len() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// True if the underlying graph on all vertices is connected.
    pub fn is_connected(&self) -> bool {
        let adj = self.underlying_adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertices.len()
    }

    /// True if the support of `alpha` lies in one connected component of the
    /// subgraph induced on that support.
    pub fn connected_support(&self, alpha: &DimVector) -> Result<bool> {
        self.check_dim_len(alpha)?;
        let support: Vec<usize> = alpha.support();
        if support.is_empty() {
            return Err(Error::input("zero dimension vector has no support"));
        }
        let in_support = |v: usize| alpha[v] != 0;
        let adj = self.underlying_adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([support[0]]);
        seen[support[0]] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if in_support(w) && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        Ok(count == support.len())
    }

    pub(crate) fn check_dim_len(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertices.len() {
            return Err(Error::input(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                d.len(),
                self.vertices.len()
            )));
        }
        Ok(())
    }

    /// Euler form `<a,b> = sum_i a_i b_i - sum_{arrows i->j} a_i b_j`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check_dim_len(a)?;
        self.check_dim_len(b)?;
        let mut total: i64 = 0;
        for i in 0..self.vertices.len() {
            total += a[i] * b[i];
        }
        for arrow in &self.arrows {
            total -= a[arrow.src] * b[arrow.dst];
        }
        Ok(total)
    }

    /// Symmetrized Euler form `(a,b) = <a,b> + <b,a>`.
    pub fn symmetric_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        Ok(self.euler_form(a, b)? + self.euler_form(b, a)?)
    }

    /// Tits form `q(a) = <a,a>`.
    pub fn tits_form(&self, a: &DimVector) -> Result<i64> {
        self.euler_form(a, a)
    }

    /// `(a, e_i)` without materializing the unit vector.
    fn pair_with_unit(&self, a: &DimVector, i: usize) -> i64 {
        let mut total = 2 * a[i];
        for arrow in &self.arrows {
            if arrow.dst == i {
                total -= a[arrow.src];
            }
            if arrow.src == i {
                total -= a[arrow.dst];
            }
        }
        total
    }

    /// Simple reflection `s_i(a) = a - (a, e_i) e_i` at a loop-free vertex.
    pub fn reflect_at(&self, a: &DimVector, i: usize) -> Result<DimVector> {
        self.check_dim_len(a)?;
        if i >= self.vertices.len() {
            return Err(Error::input(format!("vertex index {i} out of range")));
        }
        if !self.is_loop_free_at(i) {
            return Err(Error::input(format!(
                "cannot reflect at vertex `{}`: it carries a loop",
                self.vertices[i]
            )));
        }
        let mut out = a.clone();
        out.0[i] -= self.pair_with_unit(a, i);
        Ok(out)
    }

    /// Classifies a non-zero, non-negative dimension vector as a real root,
    /// an imaginary root, or not a root at all.
    ///
    /// Reflection descent: while some loop-free vertex `i` in the support has
    /// `(a, e_i) > 0`, reflect there (this strictly decreases the total
    /// dimension). The descent ends at a unit vector (real), inside the
    /// fundamental region — connected support and `(a, e_i) <= 0` everywhere —
    /// (imaginary), or leaves the positive cone / disconnects (not a root).
    pub fn classify_root(&self, alpha: &DimVector) -> Result<RootClass> {
        self.check_dim_len(alpha)?;
        if alpha.is_zero() {
            return Err(Error::input("zero dimension vector is not classified"));
        }
        if !alpha.is_nonnegative() {
            return Err(Error::input("classify_root expects a non-negative dimension vector"));
        }
        let mut a = alpha.clone();
        // Each reflection lowers the total dimension by at least 1.
        let cap = alpha.total() + 2;
        for _ in 0..cap {
            if a.entries().iter().any(|&x| x < 0) {
                return Ok(RootClass::NotARoot);
            }
            if !self.connected_support(&a)? {
                return Ok(RootClass::NotARoot);
            }
            if let Some(i) = a.unit_index() {
                if self.is_loop_free_at(i) {
                    return Ok(RootClass::Real);
                }
                return Ok(RootClass::Imaginary);
            }
            let descent = (0..self.vertices.len()).find(|&i| {
                a[i] > 0 && self.is_loop_free_at(i) && self.pair_with_unit(&a, i) > 0
            });
            match descent {
                Some(i) => a = self.reflect_at(&a, i)?,
                None => return Ok(RootClass::Imaginary),
            }
        }
        Err(Error::internal("reflection descent did not terminate"))
    }

    /// Stable textual form: vertices sorted by id, arrows sorted by
    /// (source id, target id, arrow id).
    pub fn canonical_serialization(&self) -> String {
        let mut vs: Vec<&str> = self.vertices.iter().map(|s| s.as_str()).collect();
        vs.sort_unstable();
        let mut arrows: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .map(|a| (self.vertices[a.src].as_str(), self.vertices[a.dst].as_str(), a.id.as_str()))
            .collect();
        arrows.sort_unstable();
        let arrow_str: Vec<String> =
            arrows.iter().map(|(s, d, id)| format!("{id}:{s}>{d}")).collect();
        format!("vertices={};arrows={}", vs.join(","), arrow_str.join(","))
    }

    /// Hex content hash of [`Quiver::canonical_serialization`].
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_serialization().as_bytes());
        let mut out = String::with_capacity(16);
        for byte in digest.iter().take(8) {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }

    /// Vertex indices ordered by vertex id; the order used whenever entries
    /// of a dimension vector are serialized next to the canonical form.
    pub fn sorted_vertex_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.vertices.len()).collect();
        idx.sort_by(|&a, &b| self.vertices[a].cmp(&self.vertices[b]));
        idx
    }
}

/// Outcome of [`Quiver::classify_root`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootClass {
    Real,
    Imaginary,
    NotARoot,
}

impl fmt::Display for RootClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootClass::Real => write!(f, "real"),
            RootClass::Imaginary => write!(f, "imaginary"),
            RootClass::NotARoot => write!(f, "not_a_root"),
        }
    }
}

/// Integer vector indexed by the vertices of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimVector(Vec<i64>);

impl DimVector {
    pub fn new(entries: Vec<i64>) -> DimVector {
        DimVector(entries)
    }

    pub fn zeros(n: usize) -> DimVector {
        DimVector(vec![0; n])
    }

    pub fn all_ones(n: usize) -> DimVector {
        DimVector(vec![1; n])
    }

    /// Unit vector `e_i`.
    pub fn unit(n: usize, i: usize) -> DimVector {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Sum of entries.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Indices of non-zero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    /// `Some(i)` if the vector is exactly the unit vector `e_i`.
    pub fn unit_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.0.iter().enumerate() {
            match x {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    /// Parses a comma-separated list of integers, e.g. `2,3`.
    pub fn parse_csv(s: &str) -> Result<DimVector> {
        let mut out = Vec::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            let value: i64 = piece
                .parse()
                .map_err(|_| Error::input(format!("bad dimension entry `{piece}`")))?;
            out.push(value);
        }
        Ok(DimVector(out))
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All dimension vectors of the given length with non-negative entries and
/// `1 <= total <= max_total`, in lexicographic order.
pub fn dim_vectors_up_to(len: usize, max_total: i64) -> Vec<DimVector> {
    let mut out = Vec::new();
    let mut current = vec![0i64; len];
    fn rec(current: &mut Vec<i64>, pos: usize, remaining: i64, out: &mut Vec<DimVector>) {
        if pos == current.len() {
            if current.iter().any(|&x| x > 0) {
                out.push(DimVector::new(current.clone()));
            }
            return;
        }
        for v in 0..=remaining {
            current[pos] = v;
            rec(current, pos + 1, remaining - v, out);
        }
        current[pos] = 0;
    }
    rec(&mut current, 0, max_total, &mut out);
    out
}

/// All connected quivers with at most `max_vertices` vertices and at most
/// `max_arrows` arrows, as labeled objects (vertices `1..n`, arrows `a1..ak`
/// over non-decreasing sequences of (src, dst) pairs). No isomorphism
/// reduction is attempted.
pub fn enumerate_connected(max_vertices: usize, max_arrows: usize) -> Vec<Quiver> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let types: Vec<(usize, usize)> =
            (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        let min_arrows = n.saturating_sub(1);
        for k in min_arrows..=max_arrows {
            let mut choice = Vec::with_capacity(k);
            multisets(&types, k, 0, &mut choice, &mut |combo| {
                let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
                let arrows: Vec<(String, String, String)> = combo
                    .iter()
                    .enumerate()
                    .map(|(idx, &(s, t))| {
                        (format!("a{}", idx + 1), (s + 1).to_string(), (t + 1).to_string())
                    })
                    .collect();
                let q = Quiver::new(vertices, arrows).expect("generated quiver is valid");
                if q.is_connected() {
                    out.push(q);
                }
            });
        }
    }
    out
}

fn multisets<T: Copy>(
    items: &[T],
    k: usize,
    from: usize,
    current: &mut Vec<T>,
    emit: &mut impl FnMut(&[T]),
) {
    if current.len() == k {
        emit(current);
        return;
    }
    for i in from..items.len() {
        current.push(items[i]);
        multisets(items, k, i, current, emit);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(entries: &[i64]) -> DimVector {
        DimVector::new(entries.to_vec())
    }

    #[test]
    fn builtin_shapes() {
        let k3 = Quiver::kronecker(3);
        assert_eq!(k3.num_vertices(), 2);
        assert_eq!(k3.num_arrows(), 3);
        assert!(k3.arrows().iter().all(|a| a.src == 0 && a.dst == 1));

        let l2 = Quiver::loops(2);
        assert_eq!(l2.num_vertices(), 1);
        assert_eq!(l2.loops_at(0), 2);

        let c1 = Quiver::cycle(1).unwrap();
        assert_eq!((c1.num_vertices(), c1.num_arrows(), c1.loops_at(0)), (1, 1, 1));

        let p4 = Quiver::path(4).unwrap();
        assert_eq!((p4.num_vertices(), p4.num_arrows()), (4, 3));

        let s3 = Quiver::star(3).unwrap();
        assert_eq!((s3.num_vertices(), s3.num_arrows()), (4, 3));
        assert!(s3.arrows().iter().all(|a| a.dst == 0));
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(Quiver::new(Vec::<String>::new(), vec![]).is_err());
        assert!(Quiver::new(vec!["1", "1"], vec![]).is_err());
        assert!(Quiver::new(vec!["1"], vec![("a", "1", "2")]).is_err());
        assert!(Quiver::new(vec!["1", "2"], vec![("a", "1", "2"), ("a", "2", "1")]).is_err());
    }

    #[test]
    fn euler_form_values() {
        // <(2,3),(2,3)> on kronecker:3 = 4 + 9 - 3*2*3 = -5.
        let k3 = Quiver::kronecker(3);
        let a = dv(&[2, 3]);
        assert_eq!(k3.euler_form(&a, &a).unwrap(), -5);
        assert_eq!(k3.tits_form(&a).unwrap(), -5);

        // One loop: <(1),(1)> = 1 - 1 = 0.
        let l1 = Quiver::loops(1);
        assert_eq!(l1.tits_form(&dv(&[1])).unwrap(), 0);

        // Length mismatch is an input error.
        assert!(k3.euler_form(&dv(&[1]), &a).is_err());
    }

    #[test]
    fn euler_form_is_bilinear() {
        let quivers =
            [Quiver::kronecker(2), Quiver::cycle(3).unwrap(), Quiver::loops(2)];
        for q in &quivers {
            let n = q.num_vertices();
            let vecs = dim_vectors_up_to(n, 3);
            for a in &vecs {
                for b in &vecs {
                    for c in &vecs {
                        let sum_entries: Vec<i64> =
                            (0..n).map(|i| b[i] + c[i]).collect();
                        let bc = dv(&sum_entries);
                        assert_eq!(
                            q.euler_form(a, &bc).unwrap(),
                            q.euler_form(a, b).unwrap() + q.euler_form(a, c).unwrap()
                        );
                        assert_eq!(
                            q.euler_form(&bc, a).unwrap(),
                            q.euler_form(b, a).unwrap() + q.euler_form(c, a).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn opposite_swaps_euler_arguments() {
        let q = Quiver::new(
            vec!["1", "2", "3"],
            vec![("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3"), ("l", "2", "2")],
        )
        .unwrap();
        let op = q.opposite();
        for a in dim_vectors_up_to(3, 3) {
            for b in dim_vectors_up_to(3, 3) {
                assert_eq!(q.euler_form(&a, &b).unwrap(), op.euler_form(&b, &a).unwrap());
            }
        }
    }

    #[test]
    fn reflection_examples() {
        // kronecker:3, reflect (1,2) at the source: (1,2) -> (5,2).
        let k3 = Quiver::kronecker(3);
        assert_eq!(k3.reflect_at(&dv(&[1, 2]), 0).unwrap(), dv(&[5, 2]));
        // Reflections are involutive.
        let once = k3.reflect_at(&dv(&[2, 3]), 1).unwrap();
        assert_eq!(k3.reflect_at(&once, 1).unwrap(), dv(&[2, 3]));
        // No reflections at loops.
        assert!(Quiver::loops(1).reflect_at(&dv(&[1]), 0).is_err());
    }

    #[test]
    fn root_classification_examples() {
        let a2 = Quiver::path(2).unwrap();
        assert_eq!(a2.classify_root(&dv(&[1, 1])).unwrap(), RootClass::Real);
        assert_eq!(a2.classify_root(&dv(&[2, 1])).unwrap(), RootClass::NotARoot);
        assert_eq!(a2.classify_root(&dv(&[1, 0])).unwrap(), RootClass::Real);

        let k2 = Quiver::kronecker(2);
        assert_eq!(k2.classify_root(&dv(&[1, 1])).unwrap(), RootClass::Imaginary);
        assert_eq!(k2.classify_root(&dv(&[2, 1])).unwrap(), RootClass::Real);
        assert_eq!(k2.classify_root(&dv(&[3, 1])).unwrap(), RootClass::NotARoot);

        let k3 = Quiver::kronecker(3);
        assert_eq!(k3.classify_root(&dv(&[1, 2])).unwrap(), RootClass::Imaginary);
        assert_eq!(k3.classify_root(&dv(&[2, 3])).unwrap(), RootClass::Imaginary);

        let l1 = Quiver::loops(1);
        assert_eq!(l1.classify_root(&dv(&[1])).unwrap(), RootClass::Imaginary);
        assert_eq!(l1.classify_root(&dv(&[5])).unwrap(), RootClass::Imaginary);

        // Disconnected support is never a root.
        let p3 = Quiver::path(3).unwrap();
        assert_eq!(p3.classify_root(&dv(&[1, 0, 1])).unwrap(), RootClass::NotARoot);

        // Zero and negative vectors are input errors.
        assert!(p3.classify_root(&dv(&[0, 0, 0])).is_err());
        assert!(p3.classify_root(&dv(&[1, -1, 0])).is_err());
    }

    #[test]
    fn real_roots_of_a3_are_the_six_intervals() {
        // Positive roots of A_3: intervals [i..j], six of them; all real.
        let p3 = Quiver::path(3).unwrap();
        let mut real = 0;
        for a in dim_vectors_up_to(3, 3) {
            if p3.classify_root(&a).unwrap() == RootClass::Real {
                real += 1;
            }
        }
        assert_eq!(real, 6);
    }

    #[test]
    fn connected_support_checks() {
        let p3 = Quiver::path(3).unwrap();
        assert!(p3.connected_support(&dv(&[1, 1, 0])).unwrap());
        assert!(!p3.connected_support(&dv(&[1, 0, 2])).unwrap());
        assert!(p3.connected_support(&dv(&[0, 0, 1])).unwrap());
        assert!(p3.connected_support(&dv(&[0, 0, 0])).is_err());
    }

    #[test]
    fn canonical_serialization_is_order_independent() {
        let q1 = Quiver::new(vec!["1", "2"], vec![("a1", "1", "2"), ("a2", "1", "2")]).unwrap();
        let q2 = Quiver::new(vec!["2", "1"], vec![("a2", "1", "2"), ("a1", "1", "2")]).unwrap();
        assert_eq!(q1.canonical_serialization(), q2.canonical_serialization());
        assert_eq!(q1.content_hash(), q2.content_hash());
        assert_eq!(
            q1.canonical_serialization(),
            "vertices=1,2;arrows=a1:1>2,a2:1>2"
        );
        // Orientation matters.
        let q3 = Quiver::new(vec!["1", "2"], vec![("a1", "1", "2"), ("a2", "2", "1")]).unwrap();
        assert_ne!(q1.content_hash(), q3.content_hash());
    }

    #[test]
    fn dim_vector_parsing_and_display() {
        let d = DimVector::parse_csv("2, 3").unwrap();
        assert_eq!(d, dv(&[2, 3]));
        assert_eq!(d.to_string(), "2,3");
        assert!(DimVector::parse_csv("2,x").is_err());
        assert_eq!(DimVector::parse_csv("-1,4").unwrap(), dv(&[-1, 4]));
    }

    #[test]
    fn dim_vector_enumeration_counts() {
        // Compositions of totals 1..=3 into 2 non-negative parts: 2+3+4.
        assert_eq!(dim_vectors_up_to(2, 3).len(), 9);
        assert!(dim_vectors_up_to(2, 3).iter().all(|d| d.total() >= 1 && d.total() <= 3));
    }

    #[test]
    fn quiver_enumeration_is_connected_and_capped() {
        let qs = enumerate_connected(2, 2);
        assert!(!qs.is_empty());
        for q in &qs {
            assert!(q.is_connected());
            assert!(q.num_vertices() <= 2 && q.num_arrows() <= 2);
        }
        // Single-vertex quivers with 0..=2 loops, plus the 2-vertex connected
        // shapes with 1 or 2 arrows.
        let one_vertex = qs.iter().filter(|q| q.num_vertices() == 1).count();
        assert_eq!(one_vertex, 3);
        let two_vertex_one_arrow =
            qs.iter().filter(|q| q.num_vertices() == 2 && q.num_arrows() == 1).count();
        assert_eq!(two_vertex_one_arrow, 2);
    }
}
