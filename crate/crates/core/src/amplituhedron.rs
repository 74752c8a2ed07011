//! The `m = 2` amplituhedron `A_{n,k,2}(Z)`: twistor coordinates, sign
//! descriptions of tiles and chambers, and explicit realizations.
//!
//! Twistor coordinates `⟨Y i j⟩ = det[Y; Z_i; Z_j]` are only defined up to a
//! global scalar, so every comparison between two points is made on whole
//! tables. The hatted coordinate is `⟨Y a ĵ⟩ = (-1)^k ⟨Y j a⟩`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{gaussian_tp_kernel, rat, sign_var_of_signs, CyclicInterval, ExactMatrix, Rational, Sign};
use crate::hypersimplex::{simplex_in_polytope, simplex_in_tree_by_parity, tree_polytope, w_simplex};
use crate::permutations::{sort_collection, WPermutation};
use crate::plabic::{BicoloredSubdivision, BicoloredTriangulation};
use crate::subset::{self, Subset};

/// An `n × (k+2)` matrix with every maximal minor positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZMatrix {
    m: ExactMatrix,
}

impl ZMatrix {
    pub fn new(m: ExactMatrix) -> Result<Self> {
        if m.cols() < 2 || m.rows() < m.cols() {
            return Err(Error::Argument(format!("Z must be n×(k+2) with n ≥ k+2, got {}×{}", m.rows(), m.cols())));
        }
        if !m.transpose().all_maximal_minors_positive() {
            return Err(Error::Precondition("Z has a nonpositive maximal minor".into()));
        }
        Ok(Self { m })
    }

    /// The Vandermonde matrix with rows `(1, i, …, i^{k+1})`.
    pub fn vandermonde(n: usize, k: usize) -> Result<Self> {
        Self::new(crate::exact::vandermonde_positive(n, k + 2)?)
    }

    pub fn random<R: Rng>(rng: &mut R, n: usize, k: usize) -> Self {
        Self::new(random_tp_matrix(rng, k + 2, n).transpose()).expect("generalized Vandermonde is positive")
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn k(&self) -> usize {
        self.m.cols() - 2
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.m
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        self.m.row(i - 1)
    }
}

/// A `k × (k+2)` matrix of rank `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YPoint {
    m: ExactMatrix,
}

impl YPoint {
    pub fn new(m: ExactMatrix) -> Result<Self> {
        if m.cols() != m.rows() + 2 || m.rank() != m.rows() {
            return Err(Error::Precondition(format!("Y must be a rank-k k×(k+2) matrix, got {}×{}", m.rows(), m.cols())));
        }
        Ok(Self { m })
    }

    /// `Y = C Z`.
    pub fn from_c(c: &ExactMatrix, z: &ZMatrix) -> Result<Self> {
        Self::new(c.mul(z.matrix())?)
    }

    pub fn k(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.m
    }
}

/// `⟨Y i j⟩`.
pub fn twistor(y: &YPoint, z: &ZMatrix, i: usize, j: usize) -> Rational {
    let mut m = y.m.clone();
    m.push_row(z.row(i));
    m.push_row(z.row(j));
    m.det()
}

/// `Σ_J p_J(C) ⟨Z_J Z_i Z_j⟩`.
pub fn twistor_via_expansion(c: &ExactMatrix, z: &ZMatrix, i: usize, j: usize) -> Rational {
    let mut total = Rational::zero();
    for (labels, p) in c.plucker_vector() {
        if p.is_zero() {
            continue;
        }
        let mut rows: Vec<Vec<Rational>> = labels.iter().map(|&l| z.row(l).to_vec()).collect();
        rows.push(z.row(i).to_vec());
        rows.push(z.row(j).to_vec());
        total += p * ExactMatrix::from_rows(rows).expect("square").det();
    }
    total
}

/// All twistor coordinates of one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistorTable {
    n: usize,
    k: usize,
    vals: Vec<Rational>,
}

impl TwistorTable {
    pub fn new(y: &YPoint, z: &ZMatrix) -> Self {
        let n = z.n();
        let mut vals = vec![Rational::zero(); n * n];
        for i in 1..=n {
            for j in i + 1..=n {
                let v = twistor(y, z, i, j);
                vals[(j - 1) * n + i - 1] = -v.clone();
                vals[(i - 1) * n + j - 1] = v;
            }
        }
        Self { n, k: y.k(), vals }
    }

    /// Table of Plücker coordinates `p_{ij}` of a `2 × n` matrix, read as twistors for rank `k`.
    pub fn from_plucker(z: &ExactMatrix, k: usize) -> Self {
        let n = z.cols();
        let mut vals = vec![Rational::zero(); n * n];
        for i in 1..=n {
            for j in i + 1..=n {
                let v = z.plucker(&[i, j]).expect("two rows");
                vals[(j - 1) * n + i - 1] = -v.clone();
                vals[(i - 1) * n + j - 1] = v;
            }
        }
        Self { n, k, vals }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.vals[(i - 1) * self.n + j - 1]
    }

    pub fn sign(&self, i: usize, j: usize) -> Sign {
        Sign::of(self.get(i, j))
    }

    /// `⟨Y a ĵ⟩ = (-1)^k ⟨Y j a⟩`.
    pub fn hat(&self, a: usize, j: usize) -> Rational {
        let v = self.get(j, a).clone();
        if self.k % 2 == 1 {
            -v
        } else {
            v
        }
    }

    /// `⟨Y a j⟩` for `j > a` and `⟨Y a ĵ⟩` for `j < a`.
    pub fn cyclic(&self, a: usize, j: usize) -> Rational {
        if j > a {
            self.get(a, j).clone()
        } else {
            self.hat(a, j)
        }
    }

    /// The single scalar `λ` with `other = λ · self`, if there is one.
    pub fn ratio_to(&self, other: &TwistorTable) -> Option<Rational> {
        if self.n != other.n {
            return None;
        }
        let mut lambda: Option<Rational> = None;
        for (a, b) in self.vals.iter().zip(&other.vals) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let r = b / a;
                    match &lambda {
                        None => lambda = Some(r),
                        Some(l) if *l == r => {}
                        Some(_) => return None,
                    }
                }
                _ => return None,
            }
        }
        lambda.filter(|l| !l.is_zero())
    }
}

/// `z = Y^⊥ Zᵀ`, whose Plücker coordinates are proportional to the twistors of `Y`.
pub fn b_embed(y: &YPoint, z: &ZMatrix) -> ExactMatrix {
    y.m.kernel().mul(&z.m.transpose()).expect("shapes agree")
}

/// Point of the cell of `Ĝ(T)` from positive weights `(α_i, β_i, γ_i)` per black triangle,
/// with the row signs fixed so that all maximal minors are nonnegative.
pub fn sample_cell_point(t: &BicoloredTriangulation, weights: &[Rational]) -> Result<ExactMatrix> {
    let k = t.k();
    if weights.len() != 3 * k {
        return Err(Error::Argument(format!("need {} weights, got {}", 3 * k, weights.len())));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::Precondition("weights must be positive".into()));
    }
    let area = |h, j| t.area(h, j).expect("triangle sides are compatible");
    let mut m = ExactMatrix::zeros(k, t.n());
    for (i, &[a, b, c]) in t.black().iter().enumerate() {
        let e1 = area(a, b);
        let e2 = e1 + area(b, c);
        let repeats = t.black()[..i].iter().filter(|tri| tri[0] == a).count();
        let sgn = |e: usize| if (e + repeats) % 2 == 0 { Rational::one() } else { -Rational::one() };
        m.set(i, a - 1, sgn(0) * &weights[3 * i]);
        m.set(i, b - 1, sgn(e1) * &weights[3 * i + 1]);
        m.set(i, c - 1, sgn(e2) * &weights[3 * i + 2]);
    }
    Ok(m)
}

/// `3k` weights drawn from `{1/4, …, 4}`-ish positive rationals.
pub fn random_weights<R: Rng>(rng: &mut R, count: usize) -> Vec<Rational> {
    (0..count).map(|_| Rational::new(rng.gen_range(1..=16).into(), rng.gen_range(1..=4).into())).collect()
}

/// A `rows × cols` generalized Vandermonde matrix `t_j^{e_i}`, strictly totally positive,
/// with random positive column scaling.
pub fn random_tp_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ExactMatrix {
    let mut t = Rational::zero();
    let ts: Vec<Rational> = (0..cols)
        .map(|_| {
            t += Rational::new(rng.gen_range(1..=6).into(), rng.gen_range(1..=3).into());
            t.clone()
        })
        .collect();
    let mut e = 0u32;
    let es: Vec<u32> = (0..rows)
        .map(|r| {
            if r > 0 {
                e += rng.gen_range(1..=2);
            }
            e
        })
        .collect();
    let scale: Vec<Rational> = (0..cols).map(|_| rat(rng.gen_range(1..=3))).collect();
    let m = es.iter().map(|&p| ts.iter().zip(&scale).map(|(t, s)| num_traits::pow(t.clone(), p as usize) * s).collect()).collect();
    ExactMatrix::from_rows(m).expect("rectangular")
}

/// Signs `sgn⟨Y i j⟩ = (-1)^{area(i → j)}` on the black arcs of the canonical triangulation.
pub fn point_in_tile(table: &TwistorTable, s: &BicoloredSubdivision) -> bool {
    point_in_tile_via(table, &s.canonical_triangulation())
}

/// The same test against a chosen triangulation.
pub fn point_in_tile_via(table: &TwistorTable, t: &BicoloredTriangulation) -> bool {
    t.black_arcs().into_iter().all(|(i, j)| table.sign(i, j) == area_sign(t.area(i, j).expect("black arc")))
}

/// The strict signs on every arc compatible with `s`.
pub fn compatible_signs_hold(table: &TwistorTable, s: &BicoloredSubdivision) -> bool {
    let n = s.n();
    (1..=n).all(|i| (i + 1..=n).all(|j| s.area(i, j).map_or(true, |a| table.sign(i, j) == area_sign(a))))
}

fn area_sign(a: usize) -> Sign {
    Sign::parity(a)
}

/// `C_{i,a} = ⟨Y b c⟩, C_{i,b} = -⟨Y a c⟩, C_{i,c} = ⟨Y a b⟩` per black triangle.
/// Inside the tile its maximal minors share one sign; see [`tnn_representative`].
pub fn twistor_matrix(table: &TwistorTable, t: &BicoloredTriangulation) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(t.k(), t.n());
    for (i, &[a, b, c]) in t.black().iter().enumerate() {
        m.set(i, a - 1, table.get(b, c).clone());
        m.set(i, b - 1, -table.get(a, c).clone());
        m.set(i, c - 1, table.get(a, b).clone());
    }
    m
}

/// Negate the first row when every nonzero maximal minor is negative.
pub fn tnn_representative(c: &ExactMatrix) -> ExactMatrix {
    let mut out = c.clone();
    if c.rows() > 0 && c.plucker_vector().iter().all(|(_, p)| !p.is_positive()) {
        out.scale_row(0, &-Rational::one());
    }
    out
}

/// Sign-flip membership anchored at `a`; zeros in the anchored sequence are skipped.
pub fn membership_signflip(table: &TwistorTable, a: usize) -> bool {
    let n = table.n();
    if (1..n).any(|i| !table.get(i, i + 1).is_positive()) || !table.hat(n, 1).is_positive() {
        return false;
    }
    let seq: Vec<Sign> = (1..n).map(|t| Sign::of(&table.cyclic(a, (a + t - 1) % n + 1))).collect();
    sign_var_of_signs(&seq) == table.k()
}

/// Why a point has no chamber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotInChamber {
    ZeroTwistor { a: usize, j: usize },
    NegativeStart { a: usize },
    FlipCount { a: usize, flips: usize },
    NotSorted,
}

impl fmt::Display for NotInChamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ZeroTwistor { a, j } => write!(f, "twistor <Y {a} {j}> vanishes"),
            Self::NegativeStart { a } => write!(f, "first twistor anchored at {a} is not positive"),
            Self::FlipCount { a, flips } => write!(f, "anchor {a} has {flips} sign flips"),
            Self::NotSorted => write!(f, "vertex sets do not form a sorted collection"),
        }
    }
}

/// The vertex set `I_a` read off the twistors anchored at `a`.
pub fn anchored_vertex_set(table: &TwistorTable, a: usize) -> std::result::Result<Subset, NotInChamber> {
    let (n, k) = (table.n(), table.k());
    let order: Vec<usize> = (1..n).map(|t| (a + t - 1) % n + 1).collect();
    let mut signs = Vec::with_capacity(n - 1);
    for &j in &order {
        let s = Sign::of(&table.cyclic(a, j));
        if s.is_zero() {
            return Err(NotInChamber::ZeroTwistor { a, j });
        }
        signs.push(s);
    }
    if signs[0] != Sign::Pos {
        return Err(NotInChamber::NegativeStart { a });
    }
    let mut set = 1u64 << (a - 1);
    let mut flips = 0;
    for t in 0..n - 2 {
        if signs[t] != signs[t + 1] {
            set |= 1 << (order[t] - 1);
            flips += 1;
        }
    }
    if flips + 1 == k {
        set |= 1 << (order[n - 2] - 1);
    } else if flips != k {
        return Err(NotInChamber::FlipCount { a, flips });
    }
    Ok(set)
}

/// The `w` whose open chamber contains the point.
pub fn chamber_of(table: &TwistorTable) -> std::result::Result<WPermutation, NotInChamber> {
    let sets = (1..=table.n()).map(|a| anchored_vertex_set(table, a)).collect::<std::result::Result<Vec<_>, _>>()?;
    if sort_collection(&sets).is_none() {
        return Err(NotInChamber::NotSorted);
    }
    WPermutation::from_vertex_sets(&sets).ok_or(NotInChamber::NotSorted)
}

/// Required sign of `⟨Y a j⟩` (`j > a`) or `⟨Y a ĵ⟩` (`j < a`) in the chamber of `w`.
pub fn chamber_sign(w: &WPermutation, a: usize, j: usize) -> Sign {
    let n = w.n();
    let ia = w.vertex_sets()[a - 1];
    let m = subset::size(ia & CyclicInterval::new(a, j + n - 1, n).mask());
    Sign::parity(m + 1)
}

/// Chamber inside tile, by bases and by sign parity; the two must agree.
pub fn chamber_in_tile_both(w: &WPermutation, s: &BicoloredSubdivision) -> Result<(bool, bool)> {
    let ws = w_simplex(w)?;
    Ok((simplex_in_polytope(&ws, &tree_polytope(s)?), simplex_in_tree_by_parity(&ws, s)))
}

pub fn chamber_in_tile(w: &WPermutation, s: &BicoloredSubdivision) -> Result<bool> {
    let (basis, parity) = chamber_in_tile_both(w, s)?;
    if basis != parity {
        return Err(Error::Degenerate(format!("containment criteria disagree for {w}")));
    }
    Ok(basis)
}

/// Certificate that the chamber of `w` is nonempty for `zt`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberCertificate {
    pub w: WPermutation,
    pub z: ExactMatrix,
    pub aprime: ExactMatrix,
    #[serde(with = "crate::exact::rational_serde")]
    pub q: Rational,
    pub zt: ZMatrix,
    pub y: YPoint,
}

/// Sign-chamber point `z` for `w` in `Gr_{2,n}`.
pub fn chamber_z(w: &WPermutation) -> ExactMatrix {
    let n = w.n();
    let word = w.word();
    let mut pos = vec![0i64; n + 1];
    pos[1] = 1;
    for (i, &v) in word.iter().take(n - 1).enumerate() {
        pos[v + 1] = i as i64 + 2;
    }
    let i1 = w.vertex_sets()[0];
    let mut z = ExactMatrix::zeros(2, n);
    for b in 1..=n {
        let m = subset::size(i1 & CyclicInterval::new(1, b - 1, n).mask());
        let s = if b == 1 || m % 2 == 1 { 1 } else { -1 };
        z.set(0, b - 1, rat(s));
        z.set(1, b - 1, rat(s * pos[b]));
    }
    z
}

/// The sign conditions defining the chamber of `w`, evaluated on a twistor table.
pub fn satisfies_chamber_signs(table: &TwistorTable, w: &WPermutation) -> bool {
    let n = w.n();
    (1..=n).all(|a| (1..=n).filter(|&j| j != a).all(|j| Sign::of(&table.cyclic(a, j)) == chamber_sign(w, a, j)))
}

/// `A'`: top row `±z^{(1)}`, then one row per sign block of `z^{(2)}`.
/// The nonzero maximal minors share one sign, which depends on the number of
/// blocks; the top row is negated when that sign is negative.
pub fn extend_to_tnn(z: &ExactMatrix) -> Result<ExactMatrix> {
    let n = z.cols();
    let mut rows = vec![z.row(0).to_vec()];
    let mut current: Option<Sign> = None;
    for c in 0..n {
        let s = Sign::of(z.get(1, c));
        if Some(s) != current {
            rows.push(vec![Rational::zero(); n]);
            current = Some(s);
        }
        rows.last_mut().expect("row").as_mut_slice()[c] = z.get(1, c).clone();
    }
    let mut a = ExactMatrix::from_rows(rows)?;
    if a.plucker_vector().iter().all(|(_, p)| !p.is_positive()) {
        a.scale_row(0, &-Rational::one());
    }
    let minors = a.plucker_vector();
    if minors.iter().any(|(_, p)| p.is_negative()) || minors.iter().all(|(_, p)| p.is_zero()) {
        return Err(Error::Degenerate("extension is not totally nonnegative".into()));
    }
    Ok(a)
}

/// Explicit `Z` and `Y` with `Y` in the chamber of `w`.
pub fn realize_chamber(w: &WPermutation) -> Result<ChamberCertificate> {
    let (n, k) = (w.n(), w.k());
    let z = chamber_z(w);
    if !satisfies_chamber_signs(&TwistorTable::from_plucker(&z, k), w) {
        return Err(Error::Degenerate(format!("sign chamber point fails for {w}")));
    }
    let aprime = extend_to_tnn(&z)?;
    if aprime.rows() != k + 2 {
        return Err(Error::Degenerate(format!("expected {} sign blocks, found {}", k + 1, aprime.rows() - 1)));
    }
    let signs = |m: &ExactMatrix| -> Vec<Sign> { m.plucker_vector().iter().map(|(_, p)| Sign::of(p)).collect() };
    let target = signs(&z);
    let mut q = Rational::new(1.into(), 2.into());
    for _ in 0..64 {
        let r = gaussian_tp_kernel(n, &q)?;
        let ar = aprime.mul(&r)?;
        let zr = z.mul(&r)?;
        if ar.all_maximal_minors_positive() && signs(&zr) == target {
            let zt = ZMatrix::new(ar.transpose())?;
            let perp = ExactMatrix::from_rows(
                (0..2).map(|r| aprime.solve_left(z.row(r)).expect("z lies in the row span of A'")).collect(),
            )?;
            let mut ym = perp.kernel();
            let y0 = YPoint::new(ym.clone())?;
            let lambda = TwistorTable::new(&y0, &zt)
                .ratio_to(&TwistorTable::from_plucker(&zr, k))
                .ok_or_else(|| Error::Degenerate("twistors not proportional to the embedded plane".into()))?;
            if lambda.is_negative() {
                ym.scale_row(0, &-Rational::one());
            }
            let y = YPoint::new(ym)?;
            let got = chamber_of(&TwistorTable::new(&y, &zt));
            if got.as_ref() != Ok(w) {
                return Err(Error::Degenerate(format!("realized point lands in {got:?}, not {w}")));
            }
            return Ok(ChamberCertificate { w: w.clone(), z, aprime, q, zt, y });
        }
        q /= rat(2);
    }
    Err(Error::Degenerate(format!("no perturbation found for {w}")))
}

/// Exact feasibility of `{x : r · x > 0 for every row r}` by Fourier–Motzkin elimination.
pub fn strict_cone_feasible(rows: &[Vec<Rational>]) -> bool {
    let Some(d) = rows.first().map(Vec::len) else {
        return true;
    };
    let normalize = |r: Vec<Rational>| -> Vec<Rational> {
        match r.iter().find(|v| !v.is_zero()) {
            Some(p) => {
                let s = p.abs();
                r.iter().map(|v| v / &s).collect()
            }
            None => r,
        }
    };
    let mut sys: BTreeSet<Vec<Rational>> = rows.iter().cloned().map(normalize).collect();
    for var in (0..d).rev() {
        if sys.iter().any(|r| r.iter().all(Zero::is_zero)) {
            return false;
        }
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for r in sys {
            if r[var].is_positive() {
                pos.push(r);
            } else if r[var].is_negative() {
                neg.push(r);
            } else {
                rest.insert(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let (a, b) = (&p[var], -&q[var]);
                let comb: Vec<Rational> = p.iter().zip(q).map(|(x, y)| x * &b + y * a).collect();
                rest.insert(normalize(comb));
            }
        }
        sys = rest;
    }
    sys.is_empty()
}

/// Exact nonemptiness of the chamber of `w` for `k = 1`.
pub fn chamber_nonempty_k1(w: &WPermutation, z: &ZMatrix) -> Result<bool> {
    if w.k() != 1 || z.k() != 1 || w.n() != z.n() {
        return Err(Error::Precondition("need k = 1 and matching n".into()));
    }
    let n = w.n();
    let cross = |u: &[Rational], v: &[Rational]| {
        vec![&u[1] * &v[2] - &u[2] * &v[1], &u[2] * &v[0] - &u[0] * &v[2], &u[0] * &v[1] - &u[1] * &v[0]]
    };
    let mut rows = Vec::new();
    for a in 1..=n {
        for j in (1..=n).filter(|&j| j != a) {
            // ⟨Y a j⟩ = y · (Z_a × Z_j), and for k = 1 the hatted coordinate equals it
            let mut r = cross(z.row(a), z.row(j));
            if chamber_sign(w, a, j) == Sign::Neg {
                r = r.into_iter().map(|v| -v).collect();
            }
            rows.push(r);
        }
    }
    Ok(strict_cone_feasible(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, twisted_shift};
    use crate::permutations::enumerate_d;
    use crate::plabic::enumerate_subdivisions;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t1() -> BicoloredTriangulation {
        BicoloredTriangulation::new(9, vec![[1, 7, 8], [1, 8, 9], [2, 3, 4], [2, 4, 7], [4, 6, 7]]).unwrap()
    }

    #[test]
    fn t1_cell_sign_pattern() {
        let w: Vec<Rational> = (1..=15).map(|_| rat(1)).collect();
        let m = sample_cell_point(&t1(), &w).unwrap();
        let expect = [
            [1, 0, 0, 0, 0, 0, -1, -1, 0],
            [-1, 0, 0, 0, 0, 0, 0, -1, -1],
            [0, 1, 1, 1, 0, 0, 0, 0, 0],
            [0, -1, 0, 1, 0, 0, -1, 0, 0],
            [0, 0, 0, 1, 0, 1, 1, 0, 0],
        ];
        for (r, row) in expect.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                assert_eq!(m.get(r, c), &rat(v), "entry ({r},{c})");
            }
        }
        assert!(m.all_maximal_minors_nonnegative());
    }

    #[test]
    fn single_triangle_row() {
        let t = BicoloredTriangulation::new(3, vec![[1, 2, 3]]).unwrap();
        let m = sample_cell_point(&t, &[rat(2), rat(3), rat(5)]).unwrap();
        assert_eq!(m.row(0), &[rat(2), rat(3), rat(5)]);
        assert!(sample_cell_point(&t, &[rat(2), rat(0), rat(5)]).is_err());
    }

    #[test]
    fn cell_points_have_the_graph_bases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 3..=7 {
            for k in 1..=(n - 2).min(3) {
                for s in enumerate_subdivisions(k, n).unwrap() {
                    let t = s.canonical_triangulation();
                    let bases = t.ghat().positroid_bases().unwrap();
                    let m = sample_cell_point(&t, &random_weights(&mut rng, 3 * k)).unwrap();
                    assert!(m.all_maximal_minors_nonnegative(), "{s:?}");
                    let support: BTreeSet<Subset> = m
                        .plucker_vector()
                        .into_iter()
                        .filter(|(_, p)| !p.is_zero())
                        .map(|(l, _)| subset::from_labels(l))
                        .collect();
                    assert_eq!(support, bases);
                }
            }
        }
    }

    #[test]
    fn expansion_and_embedding_agree_with_determinants() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let (n, k) = (6, 2);
            let z = ZMatrix::random(&mut rng, n, k);
            let c = random_tp_matrix(&mut rng, k, n);
            let y = YPoint::from_c(&c, &z).unwrap();
            let table = TwistorTable::new(&y, &z);
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(table.get(i, j), &twistor_via_expansion(&c, &z, i, j));
                }
            }
            let emb = TwistorTable::from_plucker(&b_embed(&y, &z), k);
            assert!(table.ratio_to(&emb).is_some());
            let zhat = twisted_shift(z.matrix(), n);
            for a in 1..=n {
                for j in 1..a {
                    let mut m = y.matrix().clone();
                    m.push_row(z.row(a));
                    m.push_row(zhat.row(j - 1));
                    assert_eq!(m.det(), table.hat(a, j));
                }
            }
            assert!(membership_signflip(&table, 1));
        }
    }

    #[test]
    fn tile_signs_and_inverse_problem() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 4..=7 {
            for k in 1..=(n - 2).min(3) {
                let z = ZMatrix::random(&mut rng, n, k);
                for s in enumerate_subdivisions(k, n).unwrap() {
                    let t = s.canonical_triangulation();
                    let c = sample_cell_point(&t, &random_weights(&mut rng, 3 * k)).unwrap();
                    let table = TwistorTable::new(&YPoint::from_c(&c, &z).unwrap(), &z);
                    assert!(point_in_tile(&table, &s));
                    assert!(compatible_signs_hold(&table, &s));
                    for other in s.triangulations() {
                        assert!(point_in_tile_via(&table, &other));
                    }
                    let ctw = tnn_representative(&twistor_matrix(&table, &t));
                    assert!(ctw.all_maximal_minors_nonnegative());
                    let back = TwistorTable::new(&YPoint::from_c(&ctw, &z).unwrap(), &z);
                    assert!(table.ratio_to(&back).unwrap().is_positive());
                    for a in 1..=n {
                        assert!(membership_signflip(&table, a));
                    }
                }
            }
        }
    }

    #[test]
    fn kermit_tiles_are_disjoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (n, k) = (7, 2);
        let z = ZMatrix::random(&mut rng, n, k);
        let tiles: Vec<_> = crate::subset::k_subsets(n - 2, k)
            .into_iter()
            .map(|s| BicoloredSubdivision::kermit(&subset::labels(s << 1), n).unwrap())
            .collect();
        for s in &tiles {
            let c = sample_cell_point(&s.canonical_triangulation(), &random_weights(&mut rng, 3 * k)).unwrap();
            let table = TwistorTable::new(&YPoint::from_c(&c, &z).unwrap(), &z);
            let hits = tiles.iter().filter(|o| point_in_tile(&table, o)).count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn wrong_sector_fails_signflip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let z = ZMatrix::random(&mut rng, 6, 2);
        let c = random_tp_matrix(&mut rng, 2, 6);
        let mut table = TwistorTable::new(&YPoint::from_c(&c, &z).unwrap(), &z);
        table.k = 1;
        assert!(!membership_signflip(&table, 1));
        let mut flipped = c.clone();
        flipped.scale_row(0, &rat(-1));
        let t2 = TwistorTable::new(&YPoint::from_c(&flipped, &z).unwrap(), &z);
        assert!(!membership_signflip(&t2, 1));
    }

    #[test]
    fn sampled_points_lie_in_chambers() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for (n, k) in [(5, 1), (6, 2), (7, 3)] {
            let z = ZMatrix::random(&mut rng, n, k);
            for _ in 0..30 {
                let c = random_tp_matrix(&mut rng, k, n);
                let table = TwistorTable::new(&YPoint::from_c(&c, &z).unwrap(), &z);
                let w = chamber_of(&table).unwrap();
                assert_eq!(w.k(), k);
                assert!(satisfies_chamber_signs(&table, &w));
            }
        }
    }

    #[test]
    fn kermit_tiles_contain_descent_chambers() {
        for n in 4..=7 {
            for k in 1..=n - 3 {
                let ws = enumerate_d(k, n).unwrap();
                for s in crate::subset::k_subsets(n - 2, k) {
                    let i_set = subset::labels(s << 1);
                    let tile = BicoloredSubdivision::kermit(&i_set, n).unwrap();
                    for w in &ws {
                        assert_eq!(chamber_in_tile(w, &tile).unwrap(), subset::labels(w.descents()) == i_set);
                    }
                }
            }
        }
    }

    #[test]
    fn realizability_example() {
        let w = WPermutation::parse("2614537").unwrap();
        let z = chamber_z(&w);
        let expect = ExactMatrix::from_i64(&[vec![1, 1, -1, -1, 1, 1, -1], vec![1, 4, -2, -7, 5, 6, -3]]);
        assert_eq!(z, expect);
        let a = extend_to_tnn(&z).unwrap();
        let expect_a = ExactMatrix::from_i64(&[
            vec![1, 1, -1, -1, 1, 1, -1],
            vec![1, 4, 0, 0, 0, 0, 0],
            vec![0, 0, -2, -7, 0, 0, 0],
            vec![0, 0, 0, 0, 5, 6, 0],
            vec![0, 0, 0, 0, 0, 0, -3],
        ]);
        assert_eq!(a, expect_a);
        assert_eq!(a.plucker(&[2, 3, 5, 6, 7]).unwrap(), rat(24));
        assert_eq!(z.plucker(&[5, 6]).unwrap() * rat(4 * -2 * -3), rat(24));
        let cert = realize_chamber(&w).unwrap();
        assert_eq!(chamber_of(&TwistorTable::new(&cert.y, &cert.zt)), Ok(w));
    }

    #[test]
    fn every_chamber_is_realizable() {
        for n in 3..=6 {
            for k in 0..=n - 2 {
                for w in enumerate_d(k, n).unwrap() {
                    let cert = realize_chamber(&w).map_err(|e| format!("{w}: {e} {}", chamber_z(&w))).unwrap();
                    assert!(cert.q <= ratio(1, 2));
                }
            }
        }
    }

    #[test]
    fn k1_emptiness() {
        let z = ZMatrix::vandermonde(6, 1).unwrap();
        let ws = enumerate_d(1, 6).unwrap();
        assert_eq!(ws.len(), 26);
        let nonempty = ws.iter().filter(|w| chamber_nonempty_k1(w, &z).unwrap()).count();
        assert_eq!(nonempty, 25);
        let bad = WPermutation::parse("145236").unwrap();
        let d = |r: [usize; 3]| {
            ExactMatrix::from_rows(r.iter().map(|&i| z.row(i).to_vec()).collect()).unwrap().det()
        };
        let badfcn = d([1, 2, 5]) * d([4, 3, 6]) - d([1, 3, 6]) * d([4, 2, 5]);
        assert_eq!(chamber_nonempty_k1(&bad, &z).unwrap(), badfcn.is_positive());
    }

    #[test]
    fn strict_cones() {
        assert!(strict_cone_feasible(&[vec![rat(1), rat(0)], vec![rat(0), rat(1)]]));
        assert!(!strict_cone_feasible(&[vec![rat(1), rat(0)], vec![rat(-1), rat(0)]]));
        assert!(!strict_cone_feasible(&[vec![rat(1), rat(-1)], vec![rat(-1), rat(2)], vec![rat(0), rat(-1)]]));
        assert!(strict_cone_feasible(&[]));
    }
}
