//! Exponent search for polynomial fitting.
//!
//! For fixed exponents `p = (p_1..p_N)` the squared error of the best fit
//! `X(p) θ ≈ y` decomposes as
//!
//! ```text
//! δ(p) = ⊕_i min_j φ_i(p_j),   φ_i(p) = max_k ((x_k − x_i)·p + y_i − y_k)
//! ```
//!
//! so that minimizing `δ` amounts to partitioning the sample indices into `N`
//! groups, each scored by the minimum of the ⊕ of its φ's. The partition is
//! found greedily: start from singletons and repeatedly merge the two groups
//! whose merged polynomial has the least minimum, until `N` groups remain.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Result, TropError};
use crate::puiseux::{Monomial, PolyMinimum, PuiseuxPoly};

/// Merge scores closer than this are ties, broken by subset indices.
pub const TIE_TOL: f64 = 1e-12;

/// The polynomials `φ_1..φ_M` in the indeterminate `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiFamily {
    polys: Vec<PuiseuxPoly>,
}

impl PhiFamily {
    pub fn polys(&self) -> &[PuiseuxPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// `δ(p) = max_i min_j φ_i(p_j)`, the squared error of the best fit with
    /// exponents `p`.
    pub fn error_at(&self, exponents: &[f64]) -> f64 {
        self.polys
            .iter()
            .map(|phi| {
                exponents
                    .iter()
                    .map(|&p| phi.eval(p))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Builds `φ_i` with monomials `(x_j − x_i, t_i − t_j)` for every `j`, where
/// `t` is the vector being approximated (the sample values, or any other
/// target on the same abscissae).
pub fn build_phi(xs: &[f64], target: &[f64]) -> Result<PhiFamily> {
    if xs.len() != target.len() {
        return Err(TropError::Shape {
            expected: format!("{} target values", xs.len()),
            actual: format!("{} target values", target.len()),
        });
    }
    if xs.is_empty() {
        return Err(TropError::InvalidArgument("no samples".into()));
    }
    let polys = (0..xs.len())
        .map(|i| {
            let terms = (0..xs.len())
                .map(|j| Monomial {
                    exponent: xs[j] - xs[i],
                    coeff: target[i] - target[j],
                })
                .collect();
            PuiseuxPoly::canonical(terms)
        })
        .collect();
    Ok(PhiFamily { polys })
}

fn merge_polys<'a>(mut polys: impl Iterator<Item = &'a PuiseuxPoly>) -> Option<PuiseuxPoly> {
    let first = polys.next()?.clone();
    Some(polys.fold(first, |acc, p| acc.oplus(p)))
}

fn attained(poly: &PuiseuxPoly) -> PolyMinimum {
    poly.minimum().expect("every φ has a zero-exponent monomial")
}

/// Minimum of `⊕_{i ∈ subset} φ_i`. Always attained, with `μ ≥ 0`.
pub fn merged_min(subset: &[usize], phi: &PhiFamily) -> Result<PolyMinimum> {
    if let Some(&bad) = subset.iter().find(|&&i| i >= phi.len()) {
        return Err(TropError::InvalidArgument(format!("index {bad} out of range")));
    }
    let merged = merge_polys(subset.iter().map(|&i| &phi.polys[i]))
        .ok_or_else(|| TropError::InvalidArgument("empty subset".into()))?;
    Ok(attained(&merged))
}

/// One group of sample indices with its merged polynomial and minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    /// Sorted, 0-based sample indices.
    pub members: Vec<usize>,
    pub poly: PuiseuxPoly,
    pub minimum: PolyMinimum,
}

impl Cluster {
    /// Group with the given members, scored against `phi`.
    pub fn from_members(members: &[usize], phi: &PhiFamily) -> Result<Self> {
        let mut members = members.to_vec();
        members.sort_unstable();
        let minimum = merged_min(&members, phi)?;
        let poly = merge_polys(members.iter().map(|&i| &phi.polys[i])).expect("nonempty");
        Ok(Self {
            members,
            poly,
            minimum,
        })
    }

    fn singleton(i: usize, phi: &PhiFamily) -> Self {
        let poly = phi.polys[i].clone();
        let minimum = attained(&poly);
        Self {
            members: vec![i],
            poly,
            minimum,
        }
    }

    fn merged(&self, other: &Cluster) -> Cluster {
        let poly = self.poly.oplus(&other.poly);
        let minimum = attained(&poly);
        let mut members = [self.members.as_slice(), other.members.as_slice()].concat();
        members.sort_unstable();
        Cluster {
            members,
            poly,
            minimum,
        }
    }
}

/// Disjoint groups covering all sample indices, ordered by smallest member.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub subsets: Vec<Cluster>,
}

impl Partition {
    pub fn member_sets(&self) -> Vec<Vec<usize>> {
        self.subsets.iter().map(|c| c.members.clone()).collect()
    }
}

/// A merge performed by [`agglomerate`]; groups are named by their smallest
/// member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeStep {
    pub left: usize,
    pub right: usize,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentResult {
    /// One representative minimizer per group, in partition order.
    pub exponents: Vec<f64>,
    /// Minimum of each group's merged polynomial.
    pub subset_minima: Vec<f64>,
    /// `max_j subset_minima_j`, the error bound certified by the partition.
    pub delta_star: f64,
    pub partition: Partition,
    pub merges: Vec<MergeStep>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Candidate {
    score: f64,
    left: usize,
    right: usize,
    left_version: u32,
    right_version: u32,
}

impl Eq for Candidate {}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then(self.left.cmp(&other.left))
            .then(self.right.cmp(&other.right))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Agglomerator {
    // slot = smallest member of the cluster living there
    slots: Vec<Option<Cluster>>,
    versions: Vec<u32>,
    heap: BinaryHeap<Reverse<Candidate>>,
}

impl Agglomerator {
    fn new(phi: &PhiFamily) -> Self {
        let m = phi.len();
        let mut this = Self {
            slots: (0..m).map(|i| Some(Cluster::singleton(i, phi))).collect(),
            versions: vec![0; m],
            heap: BinaryHeap::with_capacity(m * (m - 1) / 2),
        };
        for a in 0..m {
            for b in a + 1..m {
                this.push_pair(a, b);
            }
        }
        this
    }

    fn push_pair(&mut self, a: usize, b: usize) {
        let (left, right) = (a.min(b), a.max(b));
        let (Some(l), Some(r)) = (&self.slots[left], &self.slots[right]) else {
            return;
        };
        let score = attained(&l.poly.oplus(&r.poly)).mu;
        self.heap.push(Reverse(Candidate {
            score,
            left,
            right,
            left_version: self.versions[left],
            right_version: self.versions[right],
        }));
    }

    fn is_live(&self, c: &Candidate) -> bool {
        self.slots[c.left].is_some()
            && self.slots[c.right].is_some()
            && self.versions[c.left] == c.left_version
            && self.versions[c.right] == c.right_version
    }

    /// Least-score live pair; near-ties resolved by the smallest
    /// `(left, right)` slot pair.
    fn pop_best(&mut self) -> Option<Candidate> {
        let best = loop {
            let Reverse(c) = self.heap.pop()?;
            if self.is_live(&c) {
                break c;
            }
        };
        let mut tied = vec![best];
        while let Some(Reverse(c)) = self.heap.peek().copied() {
            if c.score > best.score + TIE_TOL {
                break;
            }
            self.heap.pop();
            if self.is_live(&c) {
                tied.push(c);
            }
        }
        let pick = tied
            .iter()
            .enumerate()
            .min_by_key(|(_, c)| (c.left, c.right))
            .map(|(i, _)| i)
            .expect("nonempty");
        let chosen = tied.swap_remove(pick);
        self.heap.extend(tied.into_iter().map(Reverse));
        Some(chosen)
    }

    fn merge(&mut self, c: Candidate) {
        let right = self.slots[c.right].take().expect("live");
        let left = self.slots[c.left].take().expect("live");
        self.slots[c.left] = Some(left.merged(&right));
        self.versions[c.left] += 1;
        self.versions[c.right] += 1;
        for other in 0..self.slots.len() {
            if other != c.left && self.slots[other].is_some() {
                self.push_pair(c.left, other);
            }
        }
    }
}

/// Greedy agglomerative minimization of `δ(p)` down to `n` groups.
///
/// Ties between candidate merges (scores within [`TIE_TOL`]) go to the pair
/// with the smallest `(min index, max index)` of the two groups' smallest
/// members. Each group reports the midpoint-style representative of its
/// minimizing interval (see [`PolyMinimum::representative`]).
pub fn agglomerate(phi: &PhiFamily, n: usize) -> Result<ExponentResult> {
    let m = phi.len();
    if n == 0 || n > m {
        return Err(TropError::InvalidArgument(format!(
            "number of monomials {n} must be between 1 and the sample count {m}"
        )));
    }
    let mut agg = Agglomerator::new(phi);
    let mut merges = Vec::with_capacity(m - n);
    for _ in 0..m - n {
        let c = agg.pop_best().expect("at least two groups remain");
        merges.push(MergeStep {
            left: c.left,
            right: c.right,
            score: c.score,
        });
        agg.merge(c);
    }
    let subsets: Vec<Cluster> = agg.slots.into_iter().flatten().collect();
    let exponents = subsets.iter().map(|c| c.minimum.representative()).collect();
    let subset_minima: Vec<f64> = subsets.iter().map(|c| c.minimum.mu).collect();
    let delta_star = subset_minima.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(ExponentResult {
        exponents,
        subset_minima,
        delta_star,
        partition: Partition { subsets },
        merges,
    })
}

/// Scores a given partition: `max` over groups of the merged minimum, with
/// one representative exponent per group.
pub fn score_partition(groups: &[Vec<usize>], phi: &PhiFamily) -> Result<(f64, Vec<f64>)> {
    let mut delta = f64::NEG_INFINITY;
    let mut exponents = Vec::with_capacity(groups.len());
    for g in groups {
        let m = merged_min(g, phi)?;
        delta = delta.max(m.mu);
        exponents.push(m.representative());
    }
    Ok((delta, exponents))
}
