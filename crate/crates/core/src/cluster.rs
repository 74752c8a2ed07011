//! Cluster seeds of positroid tiles.
//!
//! Each black polygon of a bicoloured subdivision contributes a type-A seed:
//! mutable vertices on its diagonals, frozen vertices on its sides, minus one
//! distinguished side per polygon. Cluster variables are signed twistor
//! ratios, so exchange relations and positivity can be checked exactly at a
//! point `Y`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::amplituhedron::{point_in_tile, random_weights, sample_cell_point, TwistorTable, YPoint, ZMatrix};
use crate::error::{Error, Result};
use crate::exact::{CyclicInterval, Rational, Sign};
use crate::hypersimplex::tree_polytope;
use crate::plabic::{is_boundary_edge, polygon_edges, BicoloredSubdivision, BicoloredTriangulation};
use crate::subset;

fn norm(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Chords `{a,b}` and `{c,d}` of the polygon cross in its interior.
pub fn arcs_cross(a: (usize, usize), b: (usize, usize)) -> bool {
    let (p, q) = norm(a.0, a.1);
    let (r, s) = norm(b.0, b.1);
    if p == r || p == s || q == r || q == s {
        return false;
    }
    let inside = |x: usize| p < x && x < q;
    inside(r) != inside(s)
}

/// Facet-defining arcs of a tile, split by whether they lie on the polygon boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetArcs {
    pub internal: Vec<(usize, usize)>,
    pub boundary: Vec<(usize, usize)>,
}

pub fn facet_arcs(s: &BicoloredSubdivision) -> FacetArcs {
    let (internal, boundary) = s.facet_arcs_split();
    FacetArcs { internal, boundary }
}

/// An arc compatible with every facet arc, with its sign on the open tile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedArc {
    pub arc: (usize, usize),
    pub area: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyReport {
    pub facets: FacetArcs,
    /// No two facet arcs cross.
    pub noncrossing: bool,
    /// Arcs crossing no facet arc coincide with the arcs compatible with the subdivision.
    pub compatible_match: bool,
    pub compatible: Vec<SignedArc>,
}

impl AdjacencyReport {
    pub fn holds(&self) -> bool {
        self.noncrossing && self.compatible_match
    }
}

pub fn check_adjacency(s: &BicoloredSubdivision) -> AdjacencyReport {
    let n = s.n();
    let facets = facet_arcs(s);
    let all: Vec<(usize, usize)> = facets.internal.iter().chain(&facets.boundary).copied().collect();
    let noncrossing = all.iter().enumerate().all(|(i, &a)| all[i + 1..].iter().all(|&b| !arcs_cross(a, b)));
    let mut compatible = Vec::new();
    let mut compatible_match = true;
    for h in 1..=n {
        for l in h + 1..=n {
            let free = all.iter().all(|&f| !arcs_cross(f, (h, l)));
            match s.area(h, l) {
                Some(area) if free => {
                    compatible.push(SignedArc { arc: (h, l), area, sign: if area % 2 == 0 { 1 } else { -1 } })
                }
                None if !free => {}
                _ => compatible_match = false,
            }
        }
    }
    AdjacencyReport { facets, noncrossing, compatible_match, compatible }
}

/// Number of sampled tile points at which some compatible twistor has the wrong sign.
pub fn adjacency_sign_failures<R: Rng>(s: &BicoloredSubdivision, z: &ZMatrix, samples: usize, rng: &mut R) -> Result<usize> {
    let report = check_adjacency(s);
    let t = s.canonical_triangulation();
    let mut failures = 0;
    for _ in 0..samples {
        let c = sample_cell_point(&t, &random_weights(rng, 3 * s.k()))?;
        let table = TwistorTable::new(&YPoint::from_c(&c, z)?, z);
        let ok = report.compatible.iter().all(|a| {
            let want = if a.sign > 0 { Sign::Pos } else { Sign::Neg };
            table.sign(a.arc.0, a.arc.1) == want
        });
        failures += usize::from(!ok);
    }
    Ok(failures)
}

/// Hypersimplex side: `area < x_{[h, l-1]} < area + 1` at random interior points of the tree polytope.
pub fn hypersimplex_adjacency_failures<R: Rng>(s: &BicoloredSubdivision, samples: usize, rng: &mut R) -> Result<usize> {
    let n = s.n();
    let poly = tree_polytope(s)?;
    let bases: Vec<subset::Subset> = poly.bases().iter().copied().collect();
    let report = check_adjacency(s);
    let mut failures = 0;
    for _ in 0..samples {
        let weights: Vec<Rational> = bases.iter().map(|_| Rational::from_integer(rng.gen_range(1..=20).into())).collect();
        let total: Rational = weights.iter().sum();
        let mut x = vec![Rational::from_integer(0.into()); n];
        for (b, w) in bases.iter().zip(&weights) {
            for i in subset::labels(*b) {
                x[i - 1] += w / &total;
            }
        }
        let ok = report.compatible.iter().all(|a| {
            let (h, l) = a.arc;
            let sum: Rational = CyclicInterval::new(h, l - 1, n).members().iter().map(|&i| x[i - 1].clone()).sum();
            let lo = Rational::from_integer((a.area as i64).into());
            sum > lo && sum < lo + Rational::from_integer(1.into())
        });
        failures += usize::from(!ok);
    }
    Ok(failures)
}

/// One vertex of a seed quiver: an arc of a black polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedVertex {
    pub arc: (usize, usize),
    /// Index into the black polygons of the subdivision.
    pub polygon: usize,
    pub frozen: bool,
    /// Distinguished side of the polygon, the denominator of the cluster variable.
    pub reference: (usize, usize),
}

/// Exchange matrix over labelled vertices; `b[i][j] > 0` means arrows `i → j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<SeedVertex>,
    b: Vec<Vec<i32>>,
}

impl Quiver {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.b[i][j]
    }

    pub fn position(&self, arc: (usize, usize)) -> Option<usize> {
        let arc = norm(arc.0, arc.1);
        self.vertices.iter().position(|v| v.arc == arc)
    }

    /// Arrows `(from, to, multiplicity)`.
    pub fn arrows(&self) -> Vec<(usize, usize, u32)> {
        let m = self.len();
        (0..m)
            .flat_map(|i| (0..m).filter(move |&j| self.b[i][j] > 0).map(move |j| (i, j, self.b[i][j] as u32)))
            .collect()
    }

    /// Arc-labelled arrows, independent of vertex order.
    pub fn labelled_arrows(&self) -> BTreeMap<((usize, usize), (usize, usize)), u32> {
        self.arrows().into_iter().map(|(i, j, m)| ((self.vertices[i].arc, self.vertices[j].arc), m)).collect()
    }

    pub fn mutable(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.vertices[i].frozen).collect()
    }

    /// Connected components of the mutable part, as vertex lists.
    pub fn mutable_components(&self) -> Vec<Vec<usize>> {
        let muts = self.mutable();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &muts {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &muts {
                    if self.b[v][u] != 0 && seen.insert(u) {
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Matrix mutation at `k`; arrows between frozen vertices are dropped.
    pub fn mutated(&self, k: usize) -> Quiver {
        let m = self.len();
        let mut b = self.b.clone();
        for i in 0..m {
            for j in 0..m {
                b[i][j] = if i == k || j == k {
                    -self.b[i][j]
                } else {
                    let (bik, bkj) = (self.b[i][k], self.b[k][j]);
                    self.b[i][j] + bik.signum() * (bik * bkj).max(0)
                };
                if self.vertices[i].frozen && self.vertices[j].frozen {
                    b[i][j] = 0;
                }
            }
        }
        Quiver { vertices: self.vertices.clone(), b }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    pub triangulation: BicoloredTriangulation,
    pub polygons: Vec<Vec<usize>>,
    pub distinguished: Vec<(usize, usize)>,
    pub quiver: Quiver,
}

/// Lexicographically least side of each black polygon.
pub fn default_distinguished(s: &BicoloredSubdivision) -> Vec<(usize, usize)> {
    s.black().iter().map(|p| polygon_edges(p).into_iter().map(|(a, b)| norm(a, b)).min().expect("polygon")).collect()
}

/// Seed of a bicoloured triangulation; `distinguished` lists one side per black polygon,
/// in the polygon order of the subdivision.
pub fn build_seed(t: &BicoloredTriangulation, distinguished: Option<&[(usize, usize)]>) -> Result<Seed> {
    let s = t.subdivision();
    let polygons: Vec<Vec<usize>> = s.black().to_vec();
    let dist: Vec<(usize, usize)> = match distinguished {
        Some(d) => d.iter().map(|&(a, b)| norm(a, b)).collect(),
        None => default_distinguished(&s),
    };
    if dist.len() != polygons.len() {
        return Err(Error::Argument(format!("{} distinguished arcs for {} black polygons", dist.len(), polygons.len())));
    }
    let sides: Vec<BTreeSet<(usize, usize)>> =
        polygons.iter().map(|p| polygon_edges(p).into_iter().map(|(a, b)| norm(a, b)).collect()).collect();
    for (i, d) in dist.iter().enumerate() {
        if !sides[i].contains(d) {
            return Err(Error::Argument(format!("{}→{} is not a side of black polygon {:?}", d.0, d.1, polygons[i])));
        }
    }
    let polygon_of = |a: usize, b: usize| polygons.iter().position(|p| p.contains(&a) && p.contains(&b)).expect("black arc");
    let mut vertices: Vec<SeedVertex> = t
        .black_arcs()
        .into_iter()
        .map(|arc| {
            let polygon = polygon_of(arc.0, arc.1);
            SeedVertex { arc, polygon, frozen: sides[polygon].contains(&arc), reference: dist[polygon] }
        })
        .filter(|v| v.arc != v.reference)
        .collect();
    vertices.sort_by_key(|v| (v.polygon, v.frozen, v.arc));
    let m = vertices.len();
    let index: BTreeMap<(usize, usize), usize> = vertices.iter().enumerate().map(|(i, v)| (v.arc, i)).collect();
    let mut b = vec![vec![0i32; m]; m];
    for &[p, q, r] in t.black() {
        // labels run clockwise, so the sides in clockwise order are pq, qr, rp
        let cycle = [(p, q), (q, r), (p, r)];
        for i in 0..3 {
            if let (Some(&x), Some(&y)) = (index.get(&cycle[i]), index.get(&cycle[(i + 1) % 3])) {
                if !(vertices[x].frozen && vertices[y].frozen) {
                    b[x][y] += 1;
                    b[y][x] -= 1;
                }
            }
        }
    }
    Ok(Seed { triangulation: t.clone(), polygons, distinguished: dist, quiver: Quiver { vertices, b } })
}

impl Seed {
    pub fn size(&self) -> usize {
        self.quiver.len()
    }

    /// `A_{m-3}` for each black polygon with `m` vertices.
    pub fn cartan_type(&self) -> Vec<usize> {
        self.polygons.iter().map(|p| p.len() - 3).collect()
    }

    /// Mutation at a mutable arc, realised as the flip of that diagonal.
    pub fn mutate(&self, arc: (usize, usize)) -> Result<Seed> {
        let k = self.quiver.position(arc).ok_or_else(|| Error::Argument(format!("{}→{} is not a seed vertex", arc.0, arc.1)))?;
        if self.quiver.vertices[k].frozen {
            return Err(Error::Argument(format!("{}→{} is frozen", arc.0, arc.1)));
        }
        let (t, new_arc) = self.triangulation.flip(arc.0, arc.1)?;
        let mut quiver = self.quiver.mutated(k);
        quiver.vertices[k].arc = new_arc;
        Ok(Seed { triangulation: t, polygons: self.polygons.clone(), distinguished: self.distinguished.clone(), quiver })
    }

    /// Labelled vertices and arrows, independent of vertex order.
    pub fn canonical(&self) -> (BTreeSet<((usize, usize), bool)>, BTreeMap<((usize, usize), (usize, usize)), u32>) {
        (self.quiver.vertices.iter().map(|v| (v.arc, v.frozen)).collect(), self.quiver.labelled_arrows())
    }
}

fn area_sign(area: usize) -> Rational {
    Rational::from_integer(if area % 2 == 0 { 1.into() } else { (-1).into() })
}

/// `x_{ab} = (-1)^{area(a→b)} ⟨Y a b⟩ / (-1)^{area(h→j)} ⟨Y h j⟩`, with `x_{hj} = 1`.
pub fn cluster_variable(
    table: &TwistorTable,
    s: &BicoloredSubdivision,
    reference: (usize, usize),
    arc: (usize, usize),
) -> Result<Rational> {
    signed_ratio(table, s, reference, arc, SignConvention::Area)
}

/// Sign attached to `⟨Y a b⟩` for `a < b` in a cluster variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignConvention {
    /// `(-1)^{area(a→b)}`.
    Area,
    /// `(-1)^{area(a→b)}` on diagonals only; sides of black polygons unsigned.
    DiagonalsOnly,
    Unsigned,
}

fn signed_ratio(
    table: &TwistorTable,
    s: &BicoloredSubdivision,
    reference: (usize, usize),
    arc: (usize, usize),
    convention: SignConvention,
) -> Result<Rational> {
    let (a, b) = norm(arc.0, arc.1);
    let (h, j) = norm(reference.0, reference.1);
    if (a, b) == (h, j) {
        return Ok(Rational::from_integer(1.into()));
    }
    let area = |x, y| s.area(x, y).ok_or_else(|| Error::Argument(format!("{x}→{y} is not compatible")));
    let den = table.get(h, j).clone();
    if den == Rational::from_integer(0.into()) {
        return Err(Error::Degenerate(format!("⟨Y {h} {j}⟩ vanishes")));
    }
    let (num, den) = match convention {
        SignConvention::Area => (area_sign(area(a, b)?) * table.get(a, b), area_sign(area(h, j)?) * den),
        SignConvention::DiagonalsOnly => {
            let side = |x: usize, y: usize| s.black().iter().any(|p| polygon_edges(p).iter().any(|&e| norm(e.0, e.1) == (x, y)));
            let sg = |x, y| -> Result<Rational> {
                Ok(if side(x, y) { Rational::from_integer(1.into()) } else { area_sign(area(x, y)?) })
            };
            (sg(a, b)? * table.get(a, b), sg(h, j)? * den)
        }
        SignConvention::Unsigned => (table.get(a, b).clone(), den),
    };
    Ok(num / den)
}

/// The quadrilateral `p < q < r < s` around a flippable diagonal.
fn quadrilateral(t: &BicoloredTriangulation, arc: (usize, usize)) -> Result<[usize; 4]> {
    let (a, b) = norm(arc.0, arc.1);
    let (_, (u, v)) = t.flip(a, b)?;
    let mut q = [a, b, u, v];
    q.sort_unstable();
    Ok(q)
}

fn exchange_holds(
    table: &TwistorTable,
    t: &BicoloredTriangulation,
    arc: (usize, usize),
    convention: SignConvention,
) -> Result<bool> {
    let s = t.subdivision();
    let [p, q, r, w] = quadrilateral(t, arc)?;
    let poly = s.black().iter().position(|pg| pg.contains(&p) && pg.contains(&r)).expect("black diagonal");
    let reference = default_distinguished(&s)[poly];
    let x = |a, b| signed_ratio(table, &s, reference, (a, b), convention);
    Ok(x(p, r)? * x(q, w)? == x(p, q)? * x(r, w)? + x(p, w)? * x(q, r)?)
}

/// `x_{ab} x_{uv} = x_{au} x_{bv} + x_{av} x_{ub}` at `Y` for the flip of `arc`.
pub fn verify_exchange(y: &YPoint, z: &ZMatrix, t: &BicoloredTriangulation, arc: (usize, usize)) -> Result<bool> {
    exchange_holds(&TwistorTable::new(y, z), t, arc, SignConvention::Area)
}

/// The same identity with cluster variables signed by `convention`.
pub fn verify_exchange_with(
    y: &YPoint,
    z: &ZMatrix,
    t: &BicoloredTriangulation,
    arc: (usize, usize),
    convention: SignConvention,
) -> Result<bool> {
    exchange_holds(&TwistorTable::new(y, z), t, arc, convention)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivePart {
    /// Every cluster variable of every seed is positive.
    pub all_positive: bool,
    pub in_tile: bool,
}

impl PositivePart {
    pub fn consistent(&self) -> bool {
        self.all_positive == self.in_tile
    }
}

/// Compare positivity of all cluster variables with tile membership at `Y`.
/// Points where a distinguished twistor vanishes are outside the cluster variety's charts.
pub fn positive_part_check(y: &YPoint, z: &ZMatrix, s: &BicoloredSubdivision) -> Result<PositivePart> {
    let table = TwistorTable::new(y, z);
    let dist = default_distinguished(s);
    let zero = Rational::from_integer(0.into());
    let mut all_positive = true;
    for (p, &reference) in s.black().iter().zip(&dist) {
        for (i, &a) in p.iter().enumerate() {
            for &b in &p[i + 1..] {
                if cluster_variable(&table, s, reference, (a, b))? <= zero {
                    all_positive = false;
                }
            }
        }
    }
    Ok(PositivePart { all_positive, in_tile: point_in_tile(&table, s) })
}

/// Boundary arcs of black polygons that are also sides of the `n`-gon.
pub fn polygon_boundary_sides(s: &BicoloredSubdivision) -> Vec<(usize, usize)> {
    s.black()
        .iter()
        .flat_map(|p| polygon_edges(p))
        .map(|(a, b)| norm(a, b))
        .filter(|&(a, b)| is_boundary_edge(a, b, s.n()))
        .collect()
}
