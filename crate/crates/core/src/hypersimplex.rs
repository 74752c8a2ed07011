//! The hypersimplex `Δ_{k+1,n}`: moment map, positroid polytopes with
//! their facet inequalities, and `w`-simplices.
//!
//! A `w`-simplex lies in a positroid polytope exactly when each of its
//! vertices `e_{I_a}` does, because the polytope is convex; and a vertex
//! `e_I` of the hypersimplex lies in the matroid polytope iff `I` is a basis.
//! Containment is therefore decided on vertex sets alone.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, CyclicInterval, ExactMatrix, Rational};
use crate::permutations::WPermutation;
use crate::plabic::{matroid_rank, BicoloredSubdivision, Color, PlabicTiling};
use crate::subset::{self, Subset};

/// `μ(A) = Σ p_I² e_I / Σ p_I²`.
pub fn moment_map(a: &ExactMatrix) -> Result<Vec<Rational>> {
    let n = a.cols();
    let mut num = vec![Rational::zero(); n];
    let mut den = Rational::zero();
    for (labels, p) in a.plucker_vector() {
        let sq = &p * &p;
        for &i in &labels {
            num[i - 1] += &sq;
        }
        den += sq;
    }
    if den.is_zero() {
        return Err(Error::Precondition("moment map needs a full-rank matrix".into()));
    }
    Ok(num.into_iter().map(|x| x / &den).collect())
}

/// `x_{[h, j]} ≥ lb` on the cyclic interval `[h, j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntervalBound {
    pub interval: [usize; 2],
    pub lb: usize,
}

impl IntervalBound {
    pub fn mask(&self, n: usize) -> Subset {
        CyclicInterval::new(self.interval[0], self.interval[1], n).mask()
    }
}

/// Matroid polytope of a positroid, with an optional facet description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositroidPolytope {
    n: usize,
    rank: usize,
    #[serde(with = "bases_serde")]
    bases: BTreeSet<Subset>,
    nonneg: Vec<usize>,
    facets: Vec<IntervalBound>,
}

mod bases_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &BTreeSet<Subset>, s: S) -> std::result::Result<S::Ok, S::Error> {
        b.iter().map(|&x| subset::labels(x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeSet<Subset>, D::Error> {
        let v: Vec<Vec<usize>> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(subset::from_labels).collect())
    }
}

impl PositroidPolytope {
    pub fn from_bases(n: usize, bases: BTreeSet<Subset>) -> Result<Self> {
        let rank = bases.iter().next().map(|&b| subset::size(b)).ok_or_else(|| Error::Argument("no bases".into()))?;
        if bases.iter().any(|&b| subset::size(b) != rank || b >> n != 0) {
            return Err(Error::Argument("bases differ in size or leave [n]".into()));
        }
        Ok(Self { n, rank, bases, nonneg: Vec::new(), facets: Vec::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &BTreeSet<Subset> {
        &self.bases
    }

    /// Coordinates `i` with a facet `x_i ≥ 0`.
    pub fn nonneg_facets(&self) -> &[usize] {
        &self.nonneg
    }

    pub fn interval_facets(&self) -> &[IntervalBound] {
        &self.facets
    }

    pub fn subset_rank(&self, a: Subset) -> usize {
        matroid_rank(&self.bases, a)
    }

    pub fn contains_vertex(&self, i: Subset) -> bool {
        self.bases.contains(&i)
    }

    /// Membership by the rank inequalities `x_A ≤ r(A)` over every subset `A`.
    pub fn contains(&self, x: &[Rational]) -> bool {
        if x.len() != self.n || x.iter().sum::<Rational>() != rat(self.rank as i64) {
            return false;
        }
        if x.iter().any(|v| v < &Rational::zero() || v > &Rational::one()) {
            return false;
        }
        (1..(1u64 << self.n)).all(|a| {
            let s: Rational = subset::labels(a).iter().map(|&i| &x[i - 1]).sum();
            s <= rat(self.subset_rank(a) as i64)
        })
    }

    /// Membership by the stored facet list.
    pub fn satisfies_facets(&self, x: &[Rational]) -> bool {
        x.len() == self.n
            && x.iter().sum::<Rational>() == rat(self.rank as i64)
            && self.nonneg.iter().all(|&i| x[i - 1] >= Rational::zero())
            && self.facets.iter().all(|f| {
                let s: Rational = subset::labels(f.mask(self.n)).iter().map(|&i| &x[i - 1]).sum();
                s >= rat(f.lb as i64)
            })
    }

    /// Bases satisfying the facet list, found by scanning all `(k+1)`-subsets.
    pub fn lattice_points_of_facets(&self) -> BTreeSet<Subset> {
        subset::k_subsets(self.n, self.rank)
            .into_iter()
            .filter(|&b| {
                let x: Vec<Rational> = (1..=self.n).map(|i| rat(subset::contains(b, i) as i64)).collect();
                self.satisfies_facets(&x)
            })
            .collect()
    }

    /// Dimension of the polytope.
    pub fn dimension(&self) -> usize {
        vertex_matrix(self.n, self.bases.iter().copied()).rank() - 1
    }

    /// `x_A ≥ lb` is valid and its tight vertices span a facet.
    pub fn is_facet(&self, a: Subset, lb: usize) -> bool {
        let count = |b: Subset| subset::size(b & a);
        if self.bases.iter().any(|&b| count(b) < lb) {
            return false;
        }
        let tight = self.bases.iter().copied().filter(|&b| count(b) == lb);
        vertex_matrix(self.n, tight).rank() == self.dimension()
    }
}

fn vertex_matrix(n: usize, sets: impl Iterator<Item = Subset>) -> ExactMatrix {
    let rows: Vec<Vec<i64>> = sets.map(|b| (1..=n).map(|i| subset::contains(b, i) as i64).collect()).collect();
    if rows.is_empty() {
        ExactMatrix::empty(n)
    } else {
        ExactMatrix::from_i64(&rows)
    }
}

/// Polytope of the dual tree of `s`, with the facet list read off the subdivision:
/// `x_i ≥ 0` where boundary `i` meets a white polygon, and
/// `x_{[h, j-1]} ≥ area(h → j)` for every side `h → j` with a black polygon on its left.
pub fn tree_polytope(s: &BicoloredSubdivision) -> Result<PositroidPolytope> {
    let n = s.n();
    let g = s.dual_tree();
    let mut p = PositroidPolytope::from_bases(n, g.positroid_bases()?)?;
    p.nonneg = (1..=n).filter(|&i| g.color(g.boundary_neighbor(i)) == Some(Color::White)).collect();
    p.facets = s
        .facet_arcs()
        .into_iter()
        .map(|(h, j)| IntervalBound { interval: [h, j + n - 1], lb: s.area(h, j).expect("sides are compatible") })
        .map(|mut f| {
            f.interval[1] = crate::exact::cyc(f.interval[1], n);
            f
        })
        .collect();
    Ok(p)
}

/// Strict bounds `(lower, upper)` on `x_{[h, j-1]}` over the open polytope.
pub fn tiling_bounds(t: &PlabicTiling, h: usize, j: usize) -> Result<(usize, usize)> {
    let (area, punc) =
        t.area_punc(h, j).ok_or_else(|| Error::Precondition(format!("arc {h}->{j} is not compatible")))?;
    let lo = area.checked_sub(punc).ok_or_else(|| Error::Precondition("more punctures than area".into()))?;
    Ok((lo, lo + 1))
}

/// Strict bounds on `x_{[h, j-1]}` for a subdivision.
pub fn subdivision_bounds(s: &BicoloredSubdivision, h: usize, j: usize) -> Result<(usize, usize)> {
    let area = s.area(h, j).ok_or_else(|| Error::Precondition(format!("arc {h}->{j} is not compatible")))?;
    Ok((area, area + 1))
}

/// Unit simplex with vertices `e_{I_1}, …, e_{I_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WSimplex {
    pub w: WPermutation,
    #[serde(with = "sets_serde")]
    pub vertex_sets: Vec<Subset>,
}

mod sets_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Subset], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|&x| subset::labels(x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Subset>, D::Error> {
        let v: Vec<Vec<usize>> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(subset::from_labels).collect())
    }
}

pub fn w_simplex(w: &WPermutation) -> Result<WSimplex> {
    let sets = w.vertex_sets();
    if vertex_matrix(w.n(), sets.iter().copied()).rank() != w.n() {
        return Err(Error::Degenerate(format!("vertices of the {w}-simplex are affinely dependent")));
    }
    Ok(WSimplex { w: w.clone(), vertex_sets: sets })
}

/// Barycentric coordinates of `x` in the simplex, if it lies in the closed simplex.
pub fn barycentric_in_simplex(ws: &WSimplex, x: &[Rational]) -> Option<Vec<Rational>> {
    let n = ws.w.n();
    if x.len() != n {
        return None;
    }
    let lambda = vertex_matrix(n, ws.vertex_sets.iter().copied()).solve_left(x)?;
    lambda.iter().all(|l| *l >= Rational::zero()).then_some(lambda)
}

/// Every vertex of the simplex is a basis.
pub fn simplex_in_polytope(ws: &WSimplex, p: &PositroidPolytope) -> bool {
    ws.vertex_sets.iter().all(|&i| p.contains_vertex(i))
}

/// Oriented sides of a full triangulation of `s` (both orientations).
pub fn triangulation_arcs(s: &BicoloredSubdivision) -> Vec<(usize, usize)> {
    let mut arcs = BTreeSet::new();
    for (_, p) in s.polygons() {
        for t in 1..p.len() - 1 {
            for (a, b) in [(p[0], p[t]), (p[t], p[t + 1]), (p[0], p[t + 1])] {
                arcs.insert((a, b));
                arcs.insert((b, a));
            }
        }
    }
    arcs.into_iter().collect()
}

/// `|I_a ∩ [a, b-1]| = area(a → b) + 1` on every oriented arc of a triangulation of `s`.
pub fn simplex_in_tree_by_area(ws: &WSimplex, s: &BicoloredSubdivision) -> bool {
    let n = s.n();
    triangulation_arcs(s).into_iter().all(|(a, b)| {
        let inter = ws.vertex_sets[a - 1] & CyclicInterval::new(a, b + n - 1, n).mask();
        subset::size(inter) == s.area(a, b).expect("compatible") + 1
    })
}

/// The same count taken mod 2; this is the sign test used on the amplituhedron side.
pub fn simplex_in_tree_by_parity(ws: &WSimplex, s: &BicoloredSubdivision) -> bool {
    let n = s.n();
    triangulation_arcs(s).into_iter().all(|(a, b)| {
        let inter = ws.vertex_sets[a - 1] & CyclicInterval::new(a, b + n - 1, n).mask();
        (subset::size(inter) + s.area(a, b).expect("compatible") + 1) % 2 == 0
    })
}

/// `Γ_I`: the polytope of the caterpillar tree `C_I`.
pub fn descent_polytope(i_set: &[usize], n: usize) -> Result<PositroidPolytope> {
    tree_polytope(&BicoloredSubdivision::kermit(i_set, n)?)
}
