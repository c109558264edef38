//! The universal abelian covering quiver and the covering identity.
//!
//! For a quiver Q the cover has vertex set Q_0 x Z^{Q_1}; the lift of arrow
//! `a` at character chi runs (i, chi) -> (j, chi + e_a). Dimension vectors on
//! the cover are considered up to translation of chi, and `beta` is
//! compatible with `alpha` when the fiberwise sums c(beta) equal alpha.
//! `verify_main_theorem` checks a_{Q,alpha}(1) = sum over compatible classes
//! of the class's own Kac value at 1, the two sides coming from independent
//! code paths.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::kac::{cached_kac, kac_at_one, KacCache};
use crate::quiver::{DimVector, Quiver, RootClass};

/// Vertex (base, chi) of the covering quiver; `chi` has one winding
/// coordinate per arrow of the base quiver.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverVertex {
    pub base: usize,
    pub chi: Vec<i64>,
}

impl CoverVertex {
    pub fn origin(base: usize, num_arrows: usize) -> CoverVertex {
        CoverVertex { base, chi: vec![0; num_arrows] }
    }
}

/// Finitely supported dimension vector on the cover; stored entries are >= 1.
pub type CoverDim = BTreeMap<CoverVertex, i64>;

/// Lifts of the arrows leaving `v.base`: pairs (arrow index, target vertex).
pub fn cover_arrows_out(quiver: &Quiver, v: &CoverVertex) -> Vec<(usize, CoverVertex)> {
    debug_assert_eq!(v.chi.len(), quiver.num_arrows());
    let mut out = Vec::new();
    for (idx, arrow) in quiver.arrows().iter().enumerate() {
        if arrow.src == v.base {
            let mut chi = v.chi.clone();
            chi[idx] += 1;
            out.push((idx, CoverVertex { base: arrow.dst, chi }));
        }
    }
    out
}

/// Lifts of the arrows entering `v.base`: pairs (arrow index, source vertex).
pub fn cover_arrows_in(quiver: &Quiver, v: &CoverVertex) -> Vec<(usize, CoverVertex)> {
    debug_assert_eq!(v.chi.len(), quiver.num_arrows());
    let mut out = Vec::new();
    for (idx, arrow) in quiver.arrows().iter().enumerate() {
        if arrow.dst == v.base {
            let mut chi = v.chi.clone();
            chi[idx] -= 1;
            out.push((idx, CoverVertex { base: arrow.src, chi }));
        }
    }
    out
}

/// Fiberwise sums: c(beta)_i = sum over chi of beta_{i,chi}.
pub fn c_map(quiver: &Quiver, beta: &CoverDim) -> DimVector {
    let mut entries = vec![0i64; quiver.num_vertices()];
    for (v, &mult) in beta {
        entries[v.base] += mult;
    }
    DimVector::new(entries)
}

/// Translates every character by `xi`.
pub fn translate(beta: &CoverDim, xi: &[i64]) -> CoverDim {
    beta.iter()
        .map(|(v, &mult)| {
            let chi = v.chi.iter().zip(xi).map(|(c, x)| c + x).collect();
            (CoverVertex { base: v.base, chi }, mult)
        })
        .collect()
}

/// Canonical representative of the translation orbit: shift so that the
/// componentwise minimum of chi over the support is zero.
pub fn canonicalize(beta: &CoverDim) -> Result<CoverDim> {
    let mut entries: CoverDim = CoverDim::new();
    for (v, &mult) in beta {
        if mult < 0 {
            return Err(Error::input("covering dimension entries must be positive"));
        }
        if mult > 0 {
            entries.insert(v.clone(), mult);
        }
    }
    let first = entries.keys().next().ok_or_else(|| Error::input("empty covering dimension"))?;
    let mut min = first.chi.clone();
    for v in entries.keys() {
        for (m, c) in min.iter_mut().zip(&v.chi) {
            *m = (*m).min(*c);
        }
    }
    let shift: Vec<i64> = min.iter().map(|m| -m).collect();
    Ok(translate(&entries, &shift))
}

/// Stable textual form of a canonical beta: `vertex@(chi):mult` entries
/// joined by `;` in (base, chi) order.
pub fn beta_serialization(quiver: &Quiver, beta: &CoverDim) -> String {
    let mut out = String::new();
    for (v, mult) in beta {
        if !out.is_empty() {
            out.push(';');
        }
        let chi: Vec<String> = v.chi.iter().map(|c| c.to_string()).collect();
        let _ = write!(out, "{}@({}):{}", quiver.vertex_id(v.base), chi.join(","), mult);
    }
    out
}

fn cover_label(quiver: &Quiver, v: &CoverVertex) -> String {
    let chi: Vec<String> = v.chi.iter().map(|c| c.to_string()).collect();
    format!("{}@({})", quiver.vertex_id(v.base), chi.join(","))
}

/// The finite subquiver of the cover induced on the support of `beta`,
/// with embedding-derived labels, plus the dimension vector in its vertex
/// order.
fn support_quiver(quiver: &Quiver, beta: &CoverDim) -> Result<(Quiver, DimVector)> {
    let vertices: Vec<String> = beta.keys().map(|v| cover_label(quiver, v)).collect();
    let mut arrows = Vec::new();
    for v in beta.keys() {
        for (idx, target) in cover_arrows_out(quiver, v) {
            if beta.contains_key(&target) {
                let id = format!("{}@{}", quiver.arrows()[idx].id, cover_label(quiver, v));
                arrows.push((id, cover_label(quiver, v), cover_label(quiver, &target)));
            }
        }
    }
    let support = Quiver::new(vertices, arrows)?;
    let dims = DimVector::new(beta.values().copied().collect());
    Ok((support, dims))
}

/// One translation class of a compatible dimension vector.
#[derive(Debug, Clone)]
pub struct CompatibleClass {
    /// Canonical representative.
    pub beta: CoverDim,
    /// [`beta_serialization`] of the representative (the dedup/sort key).
    pub serialization: String,
    /// Induced subquiver of the cover on the support, embedding labels.
    pub support_quiver: Quiver,
    /// Entries of beta in the support quiver's vertex order.
    pub support_dim: DimVector,
}

impl CompatibleClass {
    /// All entries equal to 1.
    pub fn is_thin(&self) -> bool {
        self.support_dim.entries().iter().all(|&x| x == 1)
    }

    /// A structurally relabeled copy (vertices renamed to their position,
    /// arrow ids positional): classes differing only by translation or by a
    /// relabeling of the embedding map to the same quiver, which lets engine
    /// results be shared.
    pub fn structural(&self) -> (Quiver, DimVector) {
        let n = self.support_quiver.num_vertices();
        let width = if n > 1 { (n - 1).to_string().len() } else { 1 };
        let name = |i: usize| format!("{i:0width$}");
        let vertices: Vec<String> = (0..n).map(name).collect();
        let mut endpoints: Vec<(usize, usize)> = self
            .support_quiver
            .arrows()
            .iter()
            .map(|a| (a.src, a.dst))
            .collect();
        endpoints.sort_unstable();
        let arrows: Vec<(String, String, String)> = endpoints
            .iter()
            .enumerate()
            .map(|(k, &(s, d))| (format!("e{k}"), name(s), name(d)))
            .collect();
        let quiver = Quiver::new(vertices, arrows).expect("relabeled support is valid");
        (quiver, self.support_dim.clone())
    }
}

struct Search<'a> {
    quiver: &'a Quiver,
    alpha: &'a DimVector,
    total: usize,
    node_cap: u64,
    nodes: u64,
    supports: Vec<Vec<CoverVertex>>,
}

impl Search<'_> {
    /// Connected-set enumeration with an exclusion set: each connected
    /// superset of the anchor (within the fiber caps) is visited exactly
    /// once. `set` is the current support, `counts` its fiber sizes.
    fn extend(
        &mut self,
        set: &mut BTreeSet<CoverVertex>,
        counts: &mut [i64],
        excluded: &mut HashSet<CoverVertex>,
    ) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::resource(format!(
                "covering support search exceeded the node cap ({})",
                self.node_cap
            )));
        }
        let complete =
            (0..self.alpha.len()).all(|i| self.alpha[i] == 0 || counts[i] >= 1);
        if complete {
            self.supports.push(set.iter().cloned().collect());
        }
        if set.len() >= self.total {
            return Ok(());
        }
        // Frontier of the current set, in deterministic order. Vertices
        // whose fiber is already full can never join any superset on this
        // branch, so they are excluded alongside the explored ones.
        let mut frontier: BTreeSet<CoverVertex> = BTreeSet::new();
        for v in set.iter() {
            for (_, w) in cover_arrows_out(self.quiver, v) {
                if !set.contains(&w) && !excluded.contains(&w) && counts[w.base] < self.alpha[w.base]
                {
                    frontier.insert(w);
                }
            }
            for (_, w) in cover_arrows_in(self.quiver, v) {
                if !set.contains(&w) && !excluded.contains(&w) && counts[w.base] < self.alpha[w.base]
                {
                    frontier.insert(w);
                }
            }
        }
        let mut added = Vec::with_capacity(frontier.len());
        for w in frontier {
            debug_assert!(w.chi.iter().all(|c| c.unsigned_abs() as usize <= self.total));
            set.insert(w.clone());
            counts[w.base] += 1;
            self.extend(set, counts, excluded)?;
            set.remove(&w);
            counts[w.base] -= 1;
            excluded.insert(w.clone());
            added.push(w);
        }
        for w in added {
            excluded.remove(&w);
        }
        Ok(())
    }
}

/// Ordered decompositions of `total` into `parts` positive summands.
fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    fn rec(remaining: i64, parts: usize, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            current.push(remaining);
            out.push(current.clone());
            current.pop();
            return;
        }
        for v in 1..=(remaining - parts as i64 + 1) {
            current.push(v);
            rec(remaining - v, parts - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 && total >= parts as i64 {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Enumerates the translation classes of dimension vectors on the cover that
/// are compatible with `alpha`, have connected support, and are roots of
/// their support quiver (classes that are not roots carry no absolutely
/// indecomposable representations and never contribute to the identity).
/// Deterministic order: sorted canonical serializations.
pub fn enumerate_compatible(
    quiver: &Quiver,
    alpha: &DimVector,
    node_cap: u64,
) -> Result<Vec<CompatibleClass>> {
    if alpha.len() != quiver.num_vertices() {
        return Err(Error::input(format!(
            "dimension vector has {} entries, quiver has {} vertices",
            alpha.len(),
            quiver.num_vertices()
        )));
    }
    if !alpha.is_nonnegative() {
        return Err(Error::input("dimension vector must be non-negative"));
    }
    if alpha.is_zero() {
        return Err(Error::input("dimension vector must be non-zero"));
    }
    let labels = quiver.component_labels();
    let support = alpha.support();
    if support.iter().any(|&v| labels[v] != labels[support[0]]) {
        return Err(Error::input(
            "dimension vector is supported on multiple components; split it per component",
        ));
    }

    let anchor = CoverVertex::origin(support[0], quiver.num_arrows());
    let mut search = Search {
        quiver,
        alpha,
        total: alpha.total() as usize,
        node_cap,
        nodes: 0,
        supports: Vec::new(),
    };
    let mut set = BTreeSet::from([anchor.clone()]);
    let mut counts = vec![0i64; quiver.num_vertices()];
    counts[anchor.base] = 1;
    search.extend(&mut set, &mut counts, &mut HashSet::new())?;

    // Assignments: distribute each alpha_i over the fiber lifts, one
    // composition per fiber, Cartesian product across fibers; then collapse
    // translation duplicates by canonical form.
    let mut classes: BTreeMap<String, CoverDim> = BTreeMap::new();
    for support_set in &search.supports {
        let mut fibers: Vec<Vec<&CoverVertex>> = vec![Vec::new(); quiver.num_vertices()];
        for v in support_set {
            fibers[v.base].push(v);
        }
        let active: Vec<usize> = (0..quiver.num_vertices()).filter(|&i| alpha[i] > 0).collect();
        let per_fiber: Vec<Vec<Vec<i64>>> =
            active.iter().map(|&i| compositions(alpha[i], fibers[i].len())).collect();
        let mut choice = vec![0usize; active.len()];
        'assignments: loop {
            let mut beta = CoverDim::new();
            for (pos, &i) in active.iter().enumerate() {
                for (v, &mult) in fibers[i].iter().zip(&per_fiber[pos][choice[pos]]) {
                    beta.insert((*v).clone(), mult);
                }
            }
            let canonical = canonicalize(&beta)?;
            let key = beta_serialization(quiver, &canonical);
            classes.entry(key).or_insert(canonical);
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    break 'assignments;
                }
                choice[pos] += 1;
                if choice[pos] < per_fiber[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    let mut out = Vec::new();
    for (serialization, beta) in classes {
        let (support_quiver, support_dim) = support_quiver(quiver, &beta)?;
        if support_quiver.classify_root(&support_dim)? == RootClass::NotARoot {
            continue;
        }
        out.push(CompatibleClass { beta, serialization, support_quiver, support_dim });
    }
    Ok(out)
}

/// Result of checking the covering identity for one (quiver, alpha).
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub lhs: BigInt,
    pub contributions: Vec<(CompatibleClass, BigInt)>,
    pub rhs: BigInt,
    pub ok: bool,
}

impl VerificationReport {
    /// One line per class, then the verdict line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (class, value) in &self.contributions {
            let _ = writeln!(
                out,
                "β={} support={}v/{}a a(1)={}",
                class.serialization,
                class.support_quiver.num_vertices(),
                class.support_quiver.num_arrows(),
                value
            );
        }
        let _ = writeln!(
            out,
            "lhs={} rhs={} {}",
            self.lhs,
            self.rhs,
            if self.ok { "OK" } else { "FAIL" }
        );
        out
    }
}

/// Checks a_{Q,alpha}(1) = sum over compatible classes of a(1). The left
/// side is the engine on (Q, alpha) directly; the right side enumerates
/// cover classes and runs the engine on each (structurally relabeled)
/// support, optionally in parallel and through the cache.
pub fn verify_main_theorem(
    quiver: &Quiver,
    alpha: &DimVector,
    node_cap: u64,
    threads: usize,
    cache: &KacCache,
) -> Result<VerificationReport> {
    let lhs = kac_at_one(quiver, alpha)?;
    let classes = enumerate_compatible(quiver, alpha, node_cap)?;
    let values = parallel_map(&classes, threads, |class| {
        let (support, dims) = class.structural();
        Ok(cached_kac(cache, &support, &dims)?.value_at_one)
    })?;
    let rhs: BigInt = values.iter().sum();
    let ok = lhs == rhs;
    let contributions = classes.into_iter().zip(values).collect();
    Ok(VerificationReport { lhs, contributions, rhs, ok })
}

/// Deterministic work-stealing map; results come back in input order.
pub(crate) fn parallel_map<T, R, F>(items: &[T], threads: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync,
{
    let threads = threads.clamp(1, items.len().max(1));
    if threads <= 1 {
        return items.iter().map(f).collect();
    }
    let slots: Vec<Mutex<Option<Result<R>>>> = items.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let result = f(&items[i]);
                *slots[i].lock().expect("result slot") = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("result slot").expect("worker filled every slot"))
        .collect()
}
