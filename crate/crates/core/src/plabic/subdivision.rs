//! Bicoloured subdivisions and triangulations of the convex `n`-gon, their
//! arc statistics, and the two plabic graphs they determine: the dual tree
//! `G(S)` and the white-trivalent graph `Ĝ(T)`.
//!
//! Polygon vertices are labelled `1..n` clockwise. For an arc `h → j`, the
//! side it bounds on its left is the one containing `h + 1, …, j − 1`.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::graph::{Color, PlabicGraph, VertexKind};
use crate::error::{Error, Result};
use crate::exact::{cyc, CyclicInterval};
use crate::subset::{self, Subset};

fn cyclic_interval_mask(h: usize, j: usize, n: usize) -> Subset {
    CyclicInterval::new(h, j, n).mask()
}

/// `{a, b}` is a side of the `n`-gon.
pub fn is_boundary_edge(a: usize, b: usize, n: usize) -> bool {
    cyc(a + 1, n) == b || cyc(b + 1, n) == a
}

/// Sides of a polygon given by sorted vertices: `(v_1,v_2), …, (v_m, v_1)`.
pub fn polygon_edges(p: &[usize]) -> Vec<(usize, usize)> {
    let m = p.len();
    (0..m).map(|t| (p[t], p[(t + 1) % m])).collect()
}

/// Two convex polygons on the `n`-gon's vertices have disjoint interiors
/// and share no side.
fn polygons_compatible(p: &[usize], q: &[usize], n: usize) -> bool {
    polygon_edges(p).into_iter().any(|(a, b)| {
        let gap = CyclicInterval::new(a, b, n);
        q.iter().all(|&x| gap.contains(x)) && !(q.contains(&a) && q.contains(&b))
    })
}

/// Black polygons of a subdivision, each a sorted vertex list; white
/// polygons are the complementary regions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SubdivisionRecord", into = "SubdivisionRecord")]
pub struct BicoloredSubdivision {
    n: usize,
    black: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct SubdivisionRecord {
    n: usize,
    black: Vec<Vec<usize>>,
}

impl TryFrom<SubdivisionRecord> for BicoloredSubdivision {
    type Error = Error;
    fn try_from(r: SubdivisionRecord) -> Result<Self> {
        Self::new(r.n, r.black)
    }
}

impl From<BicoloredSubdivision> for SubdivisionRecord {
    fn from(s: BicoloredSubdivision) -> Self {
        SubdivisionRecord { n: s.n, black: s.black }
    }
}

impl BicoloredSubdivision {
    pub fn new(n: usize, black: Vec<Vec<usize>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument(format!("polygon needs n >= 2, got {n}")));
        }
        let mut polys = Vec::with_capacity(black.len());
        for mut p in black {
            p.sort_unstable();
            p.dedup();
            if p.len() < 3 || p.iter().any(|&v| v == 0 || v > n) {
                return Err(Error::Argument(format!("{p:?} is not a polygon of the {n}-gon")));
            }
            polys.push(p);
        }
        for (a, b) in polys.iter().tuple_combinations() {
            if !polygons_compatible(a, b, n) {
                return Err(Error::Argument(format!("black polygons {a:?} and {b:?} overlap or share a side")));
            }
        }
        polys.sort();
        Ok(Self { n, black: polys })
    }

    /// All-white polygon.
    pub fn white(n: usize) -> Self {
        Self { n, black: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn black(&self) -> &[Vec<usize>] {
        &self.black
    }

    pub fn k(&self) -> usize {
        self.black.iter().map(|p| p.len() - 2).sum()
    }

    /// Maximal regions of the complement of the black polygons.
    pub fn white_polygons(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        if n == 2 {
            return vec![vec![1, 2]];
        }
        let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n + 1];
        for i in 1..=n {
            let j = cyc(i + 1, n);
            nbrs[i].insert(j);
            nbrs[j].insert(i);
        }
        for p in &self.black {
            for (a, b) in polygon_edges(p) {
                nbrs[a].insert(b);
                nbrs[b].insert(a);
            }
        }
        let offset = |from: usize, to: usize| (to + n - from) % n;
        let mut used = BTreeSet::new();
        let mut faces = BTreeSet::new();
        for u in 1..=n {
            for &v in &nbrs[u] {
                // skip the outside of the disk
                if cyc(v + 1, n) == u || used.contains(&(u, v)) {
                    continue;
                }
                let (mut a, mut b) = (u, v);
                let mut face = Vec::new();
                loop {
                    used.insert((a, b));
                    face.push(a);
                    let back = offset(b, a);
                    let c = *nbrs[b].iter().filter(|&&w| offset(b, w) < back).max_by_key(|&&w| offset(b, w)).unwrap();
                    a = b;
                    b = c;
                    if (a, b) == (u, v) {
                        break;
                    }
                }
                face.sort_unstable();
                faces.insert(face);
            }
        }
        let black: BTreeSet<&Vec<usize>> = self.black.iter().collect();
        faces.into_iter().filter(|f| !black.contains(f)).collect()
    }

    /// Black polygons first, then white ones.
    pub fn polygons(&self) -> Vec<(Color, Vec<usize>)> {
        let mut out: Vec<(Color, Vec<usize>)> = self.black.iter().map(|p| (Color::Black, p.clone())).collect();
        out.extend(self.white_polygons().into_iter().map(|p| (Color::White, p)));
        out
    }

    /// `h` and `j` lie on a common polygon.
    pub fn compatible(&self, h: usize, j: usize) -> bool {
        h != j && self.polygons().iter().any(|(_, p)| p.contains(&h) && p.contains(&j))
    }

    /// Black triangles left of `h → j` in any triangulation, for compatible arcs.
    pub fn area(&self, h: usize, j: usize) -> Option<usize> {
        if !self.compatible(h, j) {
            return None;
        }
        Some(self.area_unchecked(h, j))
    }

    fn area_unchecked(&self, h: usize, j: usize) -> usize {
        let side = cyclic_interval_mask(h, j, self.n);
        self.black
            .iter()
            .map(|p| p.iter().filter(|&&v| subset::contains(side, v)).count().saturating_sub(2))
            .sum()
    }

    /// Sides of black polygons oriented with the polygon on their left.
    pub fn facet_arcs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.black.iter().flat_map(|p| polygon_edges(p).into_iter().map(|(a, b)| (b, a))).collect();
        out.sort_unstable();
        out
    }

    /// Facet arcs split into `(internal, boundary)`.
    pub fn facet_arcs_split(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        self.facet_arcs().into_iter().partition(|&(h, j)| !is_boundary_edge(h, j, self.n))
    }

    /// Fan each black polygon from its least vertex.
    pub fn canonical_triangulation(&self) -> BicoloredTriangulation {
        let tris = self
            .black
            .iter()
            .flat_map(|p| (1..p.len() - 1).map(move |t| [p[0], p[t], p[t + 1]]))
            .collect();
        BicoloredTriangulation::new(self.n, tris).expect("fan of a valid subdivision")
    }

    /// Every triangulation of the black polygons.
    pub fn triangulations(&self) -> Vec<BicoloredTriangulation> {
        let per_poly: Vec<Vec<Vec<[usize; 3]>>> = self.black.iter().map(|p| polygon_triangulations(p)).collect();
        per_poly
            .into_iter()
            .multi_cartesian_product()
            .map(|choice| BicoloredTriangulation::new(self.n, choice.concat()).expect("valid"))
            .collect::<Vec<_>>()
            .into_iter()
            .chain(if self.black.is_empty() { Some(BicoloredTriangulation::new(self.n, vec![]).unwrap()) } else { None })
            .collect()
    }

    pub fn arc_stats(&self, h: usize, j: usize) -> Result<ArcStats> {
        let n = self.n;
        if h == j || h == 0 || j == 0 || h > n || j > n {
            return Err(Error::Argument(format!("arc {h}->{j} is not between distinct vertices of the {n}-gon")));
        }
        let compatible = self.compatible(h, j);
        let tri = self.canonical_triangulation();
        Ok(ArcStats {
            compatible,
            area: compatible.then(|| self.area_unchecked(h, j)),
            punc: compatible.then_some(0),
            facet_defining: self.facet_arcs().contains(&(h, j)),
            black_arc: tri.black_arcs().contains(&(h.min(j), h.max(j))),
        })
    }

    /// Dual tree `G(S)`: one vertex per polygon, boundary `i` on side `{i, i+1}`.
    pub fn dual_tree(&self) -> PlabicGraph {
        dual_graph(self.n, &self.polygons(), &[]).expect("subdivision polygons tile the disk")
    }

    /// Dual graph of the canonical triangulation with white polygons kept
    /// whole; every black vertex is trivalent.
    pub fn trivalent_dual_tree(&self) -> PlabicGraph {
        let mut polys: Vec<(Color, Vec<usize>)> =
            self.canonical_triangulation().black().iter().map(|t| (Color::Black, t.to_vec())).collect();
        polys.extend(self.white_polygons().into_iter().map(|p| (Color::White, p)));
        dual_graph(self.n, &polys, &[]).expect("triangulation tiles the disk")
    }

    /// `Ĝ` of the canonical triangulation.
    pub fn ghat(&self) -> PlabicGraph {
        self.canonical_triangulation().ghat()
    }

    /// Kermit subdivision: black triangles `{1, i, i + 1}` for `i ∈ I`.
    pub fn kermit(i_set: &[usize], n: usize) -> Result<Self> {
        Ok(BicoloredTriangulation::kermit(i_set, n)?.subdivision())
    }

    /// Caterpillar `C_I`, kermit graph `K_I` and the triangulation.
    pub fn kermit_graphs(i_set: &[usize], n: usize) -> Result<(BicoloredTriangulation, PlabicGraph, PlabicGraph)> {
        let t = BicoloredTriangulation::kermit(i_set, n)?;
        let k_graph = t.ghat();
        let c_graph = t.subdivision().dual_tree();
        Ok((t, k_graph, c_graph))
    }

    /// Relabel by `i ↦ i + s` (mod `n`).
    pub fn rotate(&self, s: usize) -> Self {
        let black = self.black.iter().map(|p| p.iter().map(|&v| cyc(v + s, self.n)).collect()).collect();
        Self::new(self.n, black).expect("rotation preserves validity")
    }
}

/// Statistics of the arc `h → j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcStats {
    pub compatible: bool,
    pub area: Option<usize>,
    pub punc: Option<usize>,
    pub facet_defining: bool,
    pub black_arc: bool,
}

/// All subdivisions of type `(k, n)`, sorted.
pub fn enumerate_subdivisions(k: usize, n: usize) -> Result<Vec<BicoloredSubdivision>> {
    if n < 2 || k + 2 > n {
        return Err(Error::Precondition(format!("need 0 <= k <= n - 2, got k={k}, n={n}")));
    }
    let polys: Vec<Vec<usize>> = (3..=n)
        .flat_map(|m| (1..=n).combinations(m))
        .filter(|p| p.len() - 2 <= k)
        .collect();
    // shard by the first (least) black polygon
    let mut out: Vec<BicoloredSubdivision> = (0..polys.len())
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut acc = Vec::new();
            let mut chosen = vec![first];
            extend_subdivisions(&polys, n, k - (polys[first].len() - 2), first, &mut chosen, &mut acc);
            acc
        })
        .collect();
    if k == 0 {
        out.push(BicoloredSubdivision::white(n));
    }
    out.sort();
    Ok(out)
}

fn extend_subdivisions(
    polys: &[Vec<usize>],
    n: usize,
    budget: usize,
    last: usize,
    chosen: &mut Vec<usize>,
    acc: &mut Vec<BicoloredSubdivision>,
) {
    if budget == 0 {
        let black = chosen.iter().map(|&i| polys[i].clone()).collect();
        acc.push(BicoloredSubdivision::new(n, black).expect("compatible polygons"));
        return;
    }
    for next in last + 1..polys.len() {
        let size = polys[next].len() - 2;
        if size > budget || !chosen.iter().all(|&c| polygons_compatible(&polys[c], &polys[next], n)) {
            continue;
        }
        chosen.push(next);
        extend_subdivisions(polys, n, budget - size, next, chosen, acc);
        chosen.pop();
    }
}

/// All triangulations of a convex polygon with the given vertex list.
pub fn polygon_triangulations(p: &[usize]) -> Vec<Vec<[usize; 3]>> {
    let m = p.len();
    if m < 3 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // the side (p[0], p[m-1]) lies in exactly one triangle, with apex p[t]
    for t in 1..m - 1 {
        let left = polygon_triangulations(&p[..=t]);
        let right = polygon_triangulations(&p[t..]);
        for l in &left {
            for r in &right {
                let mut tris = l.clone();
                tris.extend(r.iter().copied());
                let mut tri = [p[0], p[t], p[m - 1]];
                tri.sort_unstable();
                tris.push(tri);
                tris.sort_unstable();
                out.push(tris);
            }
        }
    }
    out
}

/// Black triangles of a triangulation, sorted lexicographically; white
/// triangles are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BicoloredTriangulation {
    n: usize,
    black: Vec<[usize; 3]>,
}

impl BicoloredTriangulation {
    pub fn new(n: usize, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let mut tris = Vec::with_capacity(triangles.len());
        for mut t in triangles {
            t.sort_unstable();
            if t[0] == 0 || t[2] > n || t[0] == t[1] || t[1] == t[2] {
                return Err(Error::Argument(format!("{t:?} is not a triangle of the {n}-gon")));
            }
            tris.push(t);
        }
        for (a, b) in tris.iter().tuple_combinations() {
            let shares_side = polygon_edges(a).iter().any(|&(x, y)| b.contains(&x) && b.contains(&y));
            if a == b || (!shares_side && !polygons_compatible(a, b, n)) {
                return Err(Error::Argument(format!("triangles {a:?} and {b:?} overlap")));
            }
            if shares_side {
                // adjacent triangles must lie on opposite sides of the shared side
                let (x, y) = polygon_edges(a).into_iter().find(|&(x, y)| b.contains(&x) && b.contains(&y)).unwrap();
                let ap = a.iter().copied().find(|&v| v != x && v != y).unwrap();
                let bp = b.iter().copied().find(|&v| v != x && v != y).unwrap();
                let side = CyclicInterval::new(x, y, n);
                if side.contains(ap) == side.contains(bp) {
                    return Err(Error::Argument(format!("triangles {a:?} and {b:?} overlap")));
                }
            }
        }
        tris.sort_unstable();
        Ok(Self { n, black: tris })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.black.len()
    }

    pub fn black(&self) -> &[[usize; 3]] {
        &self.black
    }

    pub fn kermit(i_set: &[usize], n: usize) -> Result<Self> {
        if let Some(&bad) = i_set.iter().find(|&&i| i < 2 || i + 1 > n) {
            return Err(Error::Precondition(format!("kermit index {bad} outside [2, {}]", n - 1)));
        }
        Self::new(n, i_set.iter().map(|&i| [1, i, i + 1]).collect())
    }

    /// Merge black triangles across shared sides.
    pub fn subdivision(&self) -> BicoloredSubdivision {
        let k = self.black.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for (i, j) in (0..k).tuple_combinations() {
            let (a, b) = (&self.black[i], &self.black[j]);
            if a.iter().filter(|v| b.contains(v)).count() == 2 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
        let mut groups: HashMap<usize, BTreeSet<usize>> = HashMap::new();
        for i in 0..k {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().extend(self.black[i]);
        }
        BicoloredSubdivision::new(self.n, groups.into_values().map(|g| g.into_iter().collect()).collect())
            .expect("merged triangles form a subdivision")
    }

    pub fn area(&self, h: usize, j: usize) -> Option<usize> {
        self.subdivision().area(h, j)
    }

    /// Sides of black triangles as `(a, b)` with `a < b`.
    pub fn black_arcs(&self) -> BTreeSet<(usize, usize)> {
        self.black.iter().flat_map(|&[a, b, c]| [(a, b), (b, c), (a, c)]).collect()
    }

    /// Diagonals shared by two black triangles.
    pub fn flippable_arcs(&self) -> Vec<(usize, usize)> {
        self.black_arcs()
            .into_iter()
            .filter(|&(a, b)| self.black.iter().filter(|t| t.contains(&a) && t.contains(&b)).count() == 2)
            .collect()
    }

    /// Replace the diagonal `a b` of the quadrilateral `a u b v` by `u v`.
    pub fn flip(&self, a: usize, b: usize) -> Result<(Self, (usize, usize))> {
        let (lo, hi) = (a.min(b), a.max(b));
        let both: Vec<usize> =
            (0..self.black.len()).filter(|&t| self.black[t].contains(&lo) && self.black[t].contains(&hi)).collect();
        if both.len() != 2 {
            return Err(Error::Argument(format!("{lo}-{hi} is not a diagonal between two black triangles")));
        }
        let apex = |t: usize| self.black[t].iter().copied().find(|&v| v != lo && v != hi).unwrap();
        let (u, v) = (apex(both[0]), apex(both[1]));
        let mut tris: Vec<[usize; 3]> =
            (0..self.black.len()).filter(|t| !both.contains(t)).map(|t| self.black[t]).collect();
        tris.push([u, v, lo]);
        tris.push([u, v, hi]);
        Ok((Self::new(self.n, tris)?, (u.min(v), u.max(v))))
    }

    /// `Ĝ(T)`: black `B_i` at each polygon vertex, white `W_t` in each black triangle.
    pub fn ghat(&self) -> PlabicGraph {
        let n = self.n;
        let k = self.black.len();
        let mut kinds: Vec<VertexKind> = (1..=n).map(VertexKind::Boundary).collect();
        let mut names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        for i in 1..=n {
            kinds.push(VertexKind::Internal(Color::Black));
            names.push(format!("B{i}"));
        }
        for t in 1..=k {
            kinds.push(VertexKind::Internal(Color::White));
            names.push(format!("W{t}"));
        }
        let b_of = |i: usize| n + i - 1;
        let w_of = |t: usize| 2 * n + t;
        let mut edges = Vec::new();
        let mut rotation = vec![Vec::new(); 2 * n + k];
        for i in 1..=n {
            edges.push([i - 1, b_of(i)]);
            rotation[i - 1].push(i - 1);
            rotation[b_of(i)].push(i - 1);
        }
        let mut tri_edge: HashMap<(usize, usize), usize> = HashMap::new();
        for (t, tri) in self.black.iter().enumerate() {
            for &v in tri {
                tri_edge.insert((t, v), edges.len());
                edges.push([w_of(t), b_of(v)]);
            }
            rotation[w_of(t)] = tri.iter().map(|&v| tri_edge[&(t, v)]).collect();
        }
        for i in 1..=n {
            let mut at: Vec<(usize, usize)> = self
                .black
                .iter()
                .enumerate()
                .filter(|(_, tri)| tri.contains(&i))
                .map(|(t, tri)| {
                    let near = tri.iter().filter(|&&v| v != i).map(|&v| (v + n - i) % n).min().unwrap();
                    (near, t)
                })
                .collect();
            at.sort_unstable();
            rotation[b_of(i)].extend(at.into_iter().map(|(_, t)| tri_edge[&(t, i)]));
        }
        PlabicGraph::new(n, kinds, names, edges, rotation).expect("Ĝ is a plabic graph")
    }
}

/// Dual plabic graph of a tiling of the disk by coloured polygons, each a
/// clockwise cyclic list of nodes. Nodes `1..=n` are the polygon's corners;
/// larger ids are interior points. Boundary vertex `i` sits on side `{i, i+1}`.
pub fn dual_graph(n: usize, polygons: &[(Color, Vec<usize>)], names: &[String]) -> Result<PlabicGraph> {
    let mut kinds: Vec<VertexKind> = (1..=n).map(VertexKind::Boundary).collect();
    let mut vnames: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    for (idx, (c, p)) in polygons.iter().enumerate() {
        kinds.push(VertexKind::Internal(*c));
        vnames.push(names.get(idx).cloned().unwrap_or_else(|| format!("{{{}}}", p.iter().join(","))));
    }
    let mut edges: Vec<[usize; 2]> = Vec::new();
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n + polygons.len()];
    let mut pending: HashMap<(usize, usize), usize> = HashMap::new();
    for (idx, (_, p)) in polygons.iter().enumerate() {
        let v = n + idx;
        let m = p.len();
        for t in 0..m {
            let (a, b) = (p[t], p[(t + 1) % m]);
            let e = if a <= n && b <= n && cyc(a + 1, n) == b {
                let e = edges.len();
                edges.push([a - 1, v]);
                rotation[a - 1].push(e);
                e
            } else if let Some(e) = pending.remove(&(b, a)) {
                edges[e][1] = v;
                e
            } else {
                let e = edges.len();
                edges.push([v, usize::MAX]);
                pending.insert((a, b), e);
                e
            };
            rotation[v].push(e);
        }
    }
    if let Some((&(a, b), _)) = pending.iter().next() {
        return Err(Error::MalformedGraph(format!("polygon side {a}-{b} has no neighbour across it")));
    }
    PlabicGraph::new(n, kinds, vnames, edges, rotation)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn t1() -> BicoloredTriangulation {
        BicoloredTriangulation::new(9, vec![[1, 7, 8], [1, 8, 9], [2, 3, 4], [2, 4, 7], [4, 6, 7]]).unwrap()
    }

    #[test]
    fn t1_subdivision() {
        let s = t1().subdivision();
        assert_eq!(s.black(), &[vec![1, 7, 8, 9], vec![2, 3, 4, 6, 7]]);
        assert_eq!(s.white_polygons(), vec![vec![1, 2, 7], vec![4, 5, 6]]);
        assert_eq!(s.k(), 5);
    }

    #[test]
    fn areas_on_t1() {
        let t = t1();
        assert_eq!(t.area(1, 8), Some(4));
        assert_eq!(t.area(1, 7), Some(3));
        assert_eq!(t.area(2, 6), Some(2));
        assert_eq!(t.area(2, 8), None);
        assert_eq!(t.area(3, 8), None);
    }

    #[test]
    fn facet_arcs_on_t1() {
        let (internal, boundary) = t1().subdivision().facet_arcs_split();
        assert_eq!(internal, vec![(2, 7), (6, 4), (7, 1)]);
        assert!(boundary.contains(&(3, 2)));
        assert!(!boundary.contains(&(2, 3)));
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_subdivisions(1, 5).unwrap().len(), 10);
        assert_eq!(enumerate_subdivisions(2, 5).unwrap().len(), 10);
        assert_eq!(enumerate_subdivisions(0, 4).unwrap().len(), 1);
        assert_eq!(enumerate_subdivisions(2, 7).unwrap().len(), 161);
    }

    #[test]
    fn polygon_triangulation_counts() {
        let catalan = [1, 1, 2, 5, 14, 42];
        for m in 3..=7 {
            let p: Vec<usize> = (1..=m).collect();
            assert_eq!(polygon_triangulations(&p).len(), catalan[m - 2]);
        }
    }

    #[test]
    fn kermit_merges_runs() {
        let s = BicoloredSubdivision::kermit(&[2, 3, 5, 6, 8], 9).unwrap();
        assert_eq!(s.black(), &[vec![1, 2, 3, 4], vec![1, 5, 6, 7], vec![1, 8, 9]]);
        assert!(BicoloredSubdivision::kermit(&[1], 5).is_err());
        assert!(BicoloredSubdivision::kermit(&[5], 5).is_err());
        assert_eq!(BicoloredSubdivision::kermit(&[], 5).unwrap(), BicoloredSubdivision::white(5));
    }

    #[test]
    fn overlapping_rejected() {
        assert!(BicoloredSubdivision::new(4, vec![vec![1, 2, 3], vec![1, 3, 4]]).is_err());
        assert!(BicoloredSubdivision::new(6, vec![vec![1, 3, 5], vec![2, 4, 6]]).is_err());
        assert!(BicoloredTriangulation::new(4, vec![[1, 2, 3], [1, 2, 4]]).is_err());
    }
}
