//! Positroid tilings as covers by pairwise compatible tiles.
//!
//! Every tile is a union of `w`-chambers, so tiles are compared through
//! bitsets over `D_{k+1,n}`. A tiling is a maximal clique of the
//! compatibility graph whose chambers cover a prescribed set; since each
//! covered chamber lies in exactly one tile of the clique, the search branches
//! on which tile covers the least-supported uncovered chamber.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amplituhedron::{
    chamber_in_tile, chamber_nonempty_k1, chamber_of, random_tp_matrix, random_weights, sample_cell_point, TwistorTable,
    YPoint, ZMatrix,
};
use crate::error::{Error, Result};
use crate::hypersimplex::{simplex_in_polytope, tree_polytope, w_simplex, WSimplex};
use crate::permutations::{enumerate_d, DecoratedPermutation, WPermutation};
use crate::plabic::{enumerate_subdivisions, BicoloredSubdivision};
use crate::subset;

/// Fixed-length bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn empty(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &Self) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a |= b);
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= b);
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a &= !b);
    }

    pub fn and(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

pub type ChamberSet = BitSet;

/// `D_{k+1,n}` in lexicographic order, with lookup.
#[derive(Clone, Debug)]
pub struct ChamberIndex {
    k: usize,
    n: usize,
    words: Vec<WPermutation>,
    simplices: Vec<WSimplex>,
    pos: HashMap<WPermutation, usize>,
}

impl ChamberIndex {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        let words = enumerate_d(k, n)?;
        let simplices = words.iter().map(w_simplex).collect::<Result<Vec<_>>>()?;
        let pos = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(Self { k, n, words, simplices, pos })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> &WPermutation {
        &self.words[i]
    }

    pub fn position(&self, w: &WPermutation) -> Option<usize> {
        self.pos.get(w).copied()
    }

    pub fn words_of(&self, s: &ChamberSet) -> Vec<String> {
        s.iter().map(|i| self.words[i].to_string()).collect()
    }

    pub fn set_of<'a>(&self, ws: impl IntoIterator<Item = &'a WPermutation>) -> ChamberSet {
        let mut s = ChamberSet::empty(self.len());
        for w in ws {
            if let Some(i) = self.position(w) {
                s.insert(i);
            }
        }
        s
    }
}

/// Chambers of `D_{k+1,n}` whose simplex lies in the tile.
pub fn tile_chamber_set(index: &ChamberIndex, s: &BicoloredSubdivision) -> Result<ChamberSet> {
    if s.n() != index.n || s.k() != index.k {
        return Err(Error::Precondition(format!("tile has type ({},{}), expected ({},{})", s.k(), s.n(), index.k, index.n)));
    }
    let p = tree_polytope(s)?;
    let mut set = ChamberSet::empty(index.len());
    for (i, ws) in index.simplices.iter().enumerate() {
        if simplex_in_polytope(ws, &p) {
            set.insert(i);
        }
    }
    Ok(set)
}

/// Tiles of type `(k, n)`, their chamber sets, and the compatibility relation.
#[derive(Clone, Debug)]
pub struct CompatGraph {
    pub index: ChamberIndex,
    pub tiles: Vec<BicoloredSubdivision>,
    pub chambers: Vec<ChamberSet>,
    /// Chambers on which overlaps are tolerated.
    pub exempt: ChamberSet,
    adj: Vec<BitSet>,
}

impl CompatGraph {
    pub fn vertex_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, a: usize) -> &BitSet {
        &self.adj[a]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn position(&self, s: &BicoloredSubdivision) -> Option<usize> {
        self.tiles.binary_search(s).ok()
    }
}

/// Tiles are adjacent when their chamber sets are disjoint.
pub fn compatibility_graph(k: usize, n: usize) -> Result<CompatGraph> {
    let index = ChamberIndex::new(k, n)?;
    let exempt = ChamberSet::empty(index.len());
    compatibility_graph_with(index, exempt)
}

/// Tiles are adjacent when their chamber sets meet only inside `exempt`.
pub fn compatibility_graph_with(index: ChamberIndex, exempt: ChamberSet) -> Result<CompatGraph> {
    let tiles = enumerate_subdivisions(index.k, index.n)?;
    let chambers = tiles.par_iter().map(|s| tile_chamber_set(&index, s)).collect::<Result<Vec<_>>>()?;
    let m = tiles.len();
    let adj = (0..m)
        .into_par_iter()
        .map(|a| {
            let mut row = BitSet::empty(m);
            for b in (0..m).filter(|&b| b != a) {
                if chambers[a].and(&chambers[b]).is_subset(&exempt) {
                    row.insert(b);
                }
            }
            row
        })
        .collect();
    Ok(CompatGraph { index, tiles, chambers, exempt, adj })
}

/// Sorted tile indices into a [`CompatGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tiling {
    pub tiles: Vec<usize>,
}

struct Search<'a> {
    g: &'a CompatGraph,
    cover: &'a ChamberSet,
    /// `holders[c]`: tiles containing chamber `c`.
    holders: Vec<BitSet>,
}

impl<'a> Search<'a> {
    fn new(g: &'a CompatGraph, cover: &'a ChamberSet) -> Self {
        let m = g.vertex_count();
        let mut holders = vec![BitSet::empty(m); g.index.len()];
        for (t, cs) in g.chambers.iter().enumerate() {
            for c in cs.iter() {
                holders[c].insert(t);
            }
        }
        Self { g, cover, holders }
    }

    /// Uncovered chamber with the fewest candidate tiles, or `None` when covered.
    fn pick(&self, covered: &ChamberSet, allowed: &BitSet) -> Option<(usize, BitSet)> {
        let mut best: Option<(usize, usize, BitSet)> = None;
        for c in self.cover.minus(covered).iter() {
            let cand = self.holders[c].and(allowed);
            let sz = cand.count();
            if best.as_ref().is_none_or(|&(_, b, _)| sz < b) {
                best = Some((c, sz, cand));
                if sz == 0 {
                    break;
                }
            }
        }
        best.map(|(c, _, cand)| (c, cand))
    }

    fn step(&self, chosen: &[usize], covered: &ChamberSet, allowed: &BitSet) -> Vec<(Vec<usize>, ChamberSet, BitSet)> {
        match self.pick(covered, allowed) {
            None => Vec::new(),
            Some((_, cand)) => cand
                .iter()
                .map(|t| {
                    let mut c = chosen.to_vec();
                    c.push(t);
                    let mut cov = covered.clone();
                    cov.union_with(&self.g.chambers[t]);
                    (c, cov, allowed.and(self.g.neighbors(t)))
                })
                .collect(),
        }
    }

    fn run(&self, chosen: &mut Vec<usize>, covered: &ChamberSet, allowed: &BitSet, out: &mut dyn FnMut(&[usize])) {
        match self.pick(covered, allowed) {
            None => self.finish(chosen, allowed, out),
            Some((_, cand)) => {
                for t in cand.iter() {
                    chosen.push(t);
                    let mut cov = covered.clone();
                    cov.union_with(&self.g.chambers[t]);
                    self.run(chosen, &cov, &allowed.and(self.g.neighbors(t)), out);
                    chosen.pop();
                }
            }
        }
    }

    /// Extend a cover to every maximal clique among the remaining common neighbours.
    fn finish(&self, chosen: &mut Vec<usize>, allowed: &BitSet, out: &mut dyn FnMut(&[usize])) {
        if allowed.is_empty() {
            out(chosen);
            return;
        }
        let mut r = chosen.clone();
        bron_kerbosch(self.g, &mut r, allowed.clone(), BitSet::empty(allowed.len()), out);
    }
}

/// Pivoting Bron–Kerbosch over `p`, reporting `r ∪ clique` for each maximal clique.
fn bron_kerbosch(g: &CompatGraph, r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet, out: &mut dyn FnMut(&[usize])) {
    if p.is_empty() {
        if x.is_empty() {
            out(r);
        }
        return;
    }
    let mut px = p.clone();
    px.union_with(&x);
    let pivot = px.iter().max_by_key(|&u| p.and(g.neighbors(u)).count()).expect("nonempty");
    for v in p.minus(g.neighbors(pivot)).iter() {
        r.push(v);
        bron_kerbosch(g, r, p.and(g.neighbors(v)), x.and(g.neighbors(v)), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Worker pool honouring `POSITROID_LAB_THREADS`.
pub fn thread_pool() -> rayon::ThreadPool {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = std::env::var("POSITROID_LAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&t| t > 0) {
        b = b.num_threads(t);
    }
    b.build().expect("thread pool")
}

fn prefixes(s: &Search<'_>, depth: usize) -> Vec<(Vec<usize>, ChamberSet, BitSet)> {
    let m = s.g.vertex_count();
    let mut level = vec![(Vec::new(), ChamberSet::empty(s.g.index.len()), BitSet::full(m))];
    let mut done = Vec::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for (c, cov, allowed) in level {
            if s.pick(&cov, &allowed).is_none() {
                done.push((c, cov, allowed));
            } else {
                next.extend(s.step(&c, &cov, &allowed));
            }
        }
        level = next;
    }
    done.extend(level);
    done
}

/// Every maximal clique whose chambers contain `cover`, in sorted order.
pub fn enumerate_tilings(g: &CompatGraph, cover: &ChamberSet) -> Vec<Tiling> {
    let s = Search::new(g, cover);
    let mut all: Vec<Tiling> = thread_pool().install(|| {
        prefixes(&s, 2)
            .into_par_iter()
            .flat_map_iter(|(mut chosen, cov, allowed)| {
                let mut acc = Vec::new();
                s.run(&mut chosen, &cov, &allowed, &mut |t| {
                    let mut tiles = t.to_vec();
                    tiles.sort_unstable();
                    acc.push(Tiling { tiles });
                });
                acc
            })
            .collect()
    });
    all.sort();
    all.dedup();
    all
}

/// Number of tilings, without storing them.
pub fn count_tilings(g: &CompatGraph, cover: &ChamberSet) -> u64 {
    let s = Search::new(g, cover);
    thread_pool().install(|| {
        prefixes(&s, 3)
            .into_par_iter()
            .map(|(mut chosen, cov, allowed)| {
                let mut n = 0u64;
                s.run(&mut chosen, &cov, &allowed, &mut |_| n += 1);
                n
            })
            .sum()
    })
}

/// Plain Bron–Kerbosch without pivoting or pruning, filtered by coverage.
pub fn enumerate_tilings_naive(g: &CompatGraph, cover: &ChamberSet) -> Vec<Tiling> {
    fn rec(g: &CompatGraph, r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        for v in p.clone().iter() {
            r.push(v);
            rec(g, r, p.and(g.neighbors(v)), x.and(g.neighbors(v)), out);
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }
    let m = g.vertex_count();
    let mut cliques = Vec::new();
    rec(g, &mut Vec::new(), BitSet::full(m), BitSet::empty(m), &mut cliques);
    let mut out: Vec<Tiling> = cliques
        .into_iter()
        .filter(|c| {
            let mut u = ChamberSet::empty(g.index.len());
            c.iter().for_each(|&t| u.union_with(&g.chambers[t]));
            cover.is_subset(&u)
        })
        .map(|mut tiles| {
            tiles.sort_unstable();
            Tiling { tiles }
        })
        .collect();
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Hypersimplex,
    Amplituhedron,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Verdict {
    Valid,
    ValidModuloUnknown,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overlap {
    pub tiles: [usize; 2],
    pub chambers: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingReport {
    pub mode: VerifyMode,
    pub k: usize,
    pub n: usize,
    pub verdict: Verdict,
    pub overlaps: Vec<Overlap>,
    pub missing: Vec<String>,
    /// Chambers known to be empty for the given `Z`.
    pub empty: Vec<String>,
    /// Chambers neither sampled nor decided.
    pub unknown: Vec<String>,
    pub exact: bool,
    pub samples: usize,
    pub seed: u64,
}

/// Per-chamber emptiness for one `Z`: `(known empty, known nonempty, exact)`.
pub fn chamber_status(index: &ChamberIndex, z: &ZMatrix, samples: usize, seed: u64) -> Result<(ChamberSet, ChamberSet, bool)> {
    let (k, n) = (index.k, index.n);
    if z.n() != n || z.k() != k {
        return Err(Error::Argument(format!("Z has shape {}×{}, expected {n}×{}", z.n(), z.k() + 2, k + 2)));
    }
    let len = index.len();
    if k == 1 {
        let mut empty = ChamberSet::empty(len);
        for i in 0..len {
            if !chamber_nonempty_k1(index.word(i), z)? {
                empty.insert(i);
            }
        }
        let nonempty = ChamberSet::full(len).minus(&empty);
        return Ok((empty, nonempty, true));
    }
    if k == 0 {
        return Ok((ChamberSet::empty(len), ChamberSet::full(len), true));
    }
    let tiles = enumerate_subdivisions(k, n)?;
    let hits: Vec<Option<usize>> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(s as u64));
            let c = if s % 2 == 0 {
                random_tp_matrix(&mut rng, k, n)
            } else {
                let t = tiles[rng.gen_range(0..tiles.len())].canonical_triangulation();
                sample_cell_point(&t, &random_weights(&mut rng, 3 * k)).expect("positive weights")
            };
            let y = YPoint::from_c(&c, z).ok()?;
            chamber_of(&TwistorTable::new(&y, z)).ok().and_then(|w| index.position(&w))
        })
        .collect();
    let mut nonempty = ChamberSet::empty(len);
    hits.into_iter().flatten().for_each(|i| nonempty.insert(i));
    Ok((ChamberSet::empty(len), nonempty, false))
}

/// Pairwise disjointness and coverage of a proposed tiling.
pub fn verify_tiling(
    tiles: &[BicoloredSubdivision],
    mode: VerifyMode,
    z: Option<&ZMatrix>,
    samples: usize,
    seed: u64,
) -> Result<TilingReport> {
    let first = tiles.first().ok_or_else(|| Error::Argument("no tiles".into()))?;
    let (k, n) = (first.k(), first.n());
    let index = ChamberIndex::new(k, n)?;
    let sets = tiles.iter().map(|s| tile_chamber_set(&index, s)).collect::<Result<Vec<_>>>()?;
    let len = index.len();
    let (empty, nonempty, exact) = match mode {
        VerifyMode::Hypersimplex => (ChamberSet::empty(len), ChamberSet::full(len), true),
        VerifyMode::Amplituhedron => {
            let owned;
            let z = match z {
                Some(z) => z,
                None => {
                    owned = ZMatrix::vandermonde(n, k)?;
                    &owned
                }
            };
            chamber_status(&index, z, samples, seed)?
        }
    };
    let unknown = ChamberSet::full(len).minus(&empty).minus(&nonempty);
    let mut issues = ChamberSet::empty(len);
    let mut overlaps = Vec::new();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            let both = sets[a].and(&sets[b]).minus(&empty);
            if !both.is_empty() {
                issues.union_with(&both);
                overlaps.push(Overlap { tiles: [a, b], chambers: index.words_of(&both) });
            }
        }
    }
    let mut union = ChamberSet::empty(len);
    sets.iter().for_each(|s| union.union_with(s));
    let missing = ChamberSet::full(len).minus(&union).minus(&empty);
    issues.union_with(&missing);
    let verdict = if issues.is_empty() {
        Verdict::Valid
    } else if issues.is_subset(&unknown) {
        Verdict::ValidModuloUnknown
    } else {
        Verdict::Invalid
    };
    Ok(TilingReport {
        mode,
        k,
        n,
        verdict,
        overlaps,
        missing: index.words_of(&missing),
        empty: index.words_of(&empty),
        unknown: index.words_of(&unknown),
        exact,
        samples: if exact { 0 } else { samples },
        seed,
    })
}

/// Hypersimplex and amplituhedron labels of one tile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TDualPair {
    pub tile: BicoloredSubdivision,
    /// Trip permutation of the dual tree, type `(k+1, n)`.
    pub hypersimplex: DecoratedPermutation,
    /// Trip permutation of `Ĝ`, type `(k, n)`.
    pub amplituhedron: DecoratedPermutation,
}

pub fn tduality_transfer(tiles: &[BicoloredSubdivision]) -> Result<Vec<TDualPair>> {
    tiles
        .iter()
        .map(|s| {
            let hyp = s.dual_tree().checked_trip_permutation()?;
            let amp = s.ghat().checked_trip_permutation()?;
            if hyp.t_dual()? != amp {
                return Err(Error::Degenerate(format!("labels of {s:?} are not T-dual")));
            }
            Ok(TDualPair { tile: s.clone(), hypersimplex: hyp, amplituhedron: amp })
        })
        .collect()
}

/// The descent tiling `{kermit(I)}`.
pub fn descent_tiling(k: usize, n: usize) -> Result<Vec<BicoloredSubdivision>> {
    subset::k_subsets(n - 2, k).into_iter().map(|s| BicoloredSubdivision::kermit(&subset::labels(s << 1), n)).collect()
}

/// `(a, J_a, rotated caterpillar tile)` with `J_a = (I_a \ {a})` shifted so that `a ↦ 1`.
pub fn chamber_as_intersection(w: &WPermutation) -> Result<Vec<(usize, Vec<usize>, BicoloredSubdivision)>> {
    let n = w.n();
    w.vertex_sets()
        .into_iter()
        .enumerate()
        .map(|(i, ia)| {
            let a = i + 1;
            let mut j: Vec<usize> =
                subset::labels(ia).into_iter().filter(|&x| x != a).map(|x| crate::exact::cyc(x + n + 1 - a, n)).collect();
            j.sort_unstable();
            let tile = BicoloredSubdivision::kermit(&j, n)?.rotate(a - 1);
            Ok((a, j, tile))
        })
        .collect()
}

/// Convenience check that a chamber lies in a tile by both criteria.
pub fn chamber_in(w: &WPermutation, s: &BicoloredSubdivision) -> Result<bool> {
    chamber_in_tile(w, s)
}

/// Affine-regular hexagon whose three long diagonals meet in one point.
pub fn symmetric_hexagon() -> ZMatrix {
    let pts = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)];
    let rows: Vec<Vec<i64>> = pts.iter().map(|&(x, y)| vec![1, x, y]).collect();
    ZMatrix::new(crate::exact::ExactMatrix::from_i64(&rows)).expect("convex hexagon")
}

/// Six triangles covering [`symmetric_hexagon`] whose dual polytopes miss the chamber `145236`.
pub fn hexagon_cover() -> Vec<BicoloredSubdivision> {
    [[1, 2, 3], [1, 2, 5], [1, 3, 4], [1, 5, 6], [3, 4, 5], [3, 5, 6]]
        .iter()
        .map(|t| BicoloredSubdivision::new(6, vec![t.to_vec()]).expect("triangle"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactMatrix;

    #[test]
    fn bitset_basics() {
        let mut s = BitSet::empty(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.count(), 3);
        let f = BitSet::full(130);
        assert!(s.is_subset(&f));
        assert_eq!(f.minus(&s).count(), 127);
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(compatibility_graph(1, 5).unwrap().vertex_count(), 10);
        assert_eq!(compatibility_graph(2, 6).unwrap().vertex_count(), enumerate_subdivisions(2, 6).unwrap().len());
    }

    #[test]
    fn kermit_chamber_sets_are_descent_classes() {
        let index = ChamberIndex::new(2, 6).unwrap();
        for s in subset::k_subsets(4, 2) {
            let i_set = subset::labels(s << 1);
            let set = tile_chamber_set(&index, &BicoloredSubdivision::kermit(&i_set, 6).unwrap()).unwrap();
            let expect: Vec<usize> =
                (0..index.len()).filter(|&i| subset::labels(index.word(i).descents()) == i_set).collect();
            assert_eq!(set.iter().collect::<Vec<_>>(), expect);
        }
        let white = ChamberIndex::new(0, 5).unwrap();
        assert_eq!(tile_chamber_set(&white, &BicoloredSubdivision::white(5)).unwrap().count(), 1);
    }

    #[test]
    fn clique_search_matches_naive() {
        for (k, n) in [(1, 5), (1, 6), (2, 6)] {
            let g = compatibility_graph(k, n).unwrap();
            let full = ChamberSet::full(g.index.len());
            let fast = enumerate_tilings(&g, &full);
            assert_eq!(fast, enumerate_tilings_naive(&g, &full), "({k},{n})");
            assert_eq!(count_tilings(&g, &full), fast.len() as u64);
            for t in &fast {
                let tiles: Vec<_> = t.tiles.iter().map(|&i| g.tiles[i].clone()).collect();
                let r = verify_tiling(&tiles, VerifyMode::Hypersimplex, None, 0, 0).unwrap();
                assert_eq!(r.verdict, Verdict::Valid);
            }
        }
    }

    #[test]
    fn descent_tiling_is_valid() {
        for (k, n) in [(1, 5), (2, 6), (2, 7), (3, 7)] {
            let tiles = descent_tiling(k, n).unwrap();
            let r = verify_tiling(&tiles, VerifyMode::Hypersimplex, None, 0, 0).unwrap();
            assert_eq!(r.verdict, Verdict::Valid);
            let mut short = tiles.clone();
            short.pop();
            let r = verify_tiling(&short, VerifyMode::Hypersimplex, None, 0, 0).unwrap();
            assert_eq!(r.verdict, Verdict::Invalid);
            assert!(!r.missing.is_empty());
            let pairs = tduality_transfer(&tiles).unwrap();
            assert_eq!(pairs.len(), tiles.len());
        }
    }

    #[test]
    fn chamber_intersection_example() {
        let w = WPermutation::parse("324156").unwrap();
        let parts = chamber_as_intersection(&w).unwrap();
        let js: Vec<Vec<usize>> = parts.iter().map(|(_, j, _)| j.clone()).collect();
        assert_eq!(js, vec![vec![2, 3], vec![2, 4], vec![2, 5], vec![4, 5], vec![3, 5], vec![3, 4]]);
        assert_eq!(parts[0].2, parts[3].2);
        let index = ChamberIndex::new(2, 6).unwrap();
        let mut inter = ChamberSet::full(index.len());
        for (_, _, s) in &parts {
            inter.intersect_with(&tile_chamber_set(&index, s).unwrap());
        }
        assert_eq!(index.words_of(&inter), vec!["324156".to_string()]);
    }

    #[test]
    fn hexagon_cover_misses_one_simplex() {
        let z = symmetric_hexagon();
        let tiles = hexagon_cover();
        let hyp = verify_tiling(&tiles, VerifyMode::Hypersimplex, None, 0, 0).unwrap();
        assert_eq!(hyp.verdict, Verdict::Invalid);
        assert_eq!(hyp.missing, vec!["145236".to_string()]);
        let amp = verify_tiling(&tiles, VerifyMode::Amplituhedron, Some(&z), 0, 0).unwrap();
        assert!(amp.missing.is_empty());
        assert!(!amp.overlaps.is_empty());
        assert_eq!(amp.verdict, Verdict::Invalid);
        let rows = vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]];
        assert!(ZMatrix::new(ExactMatrix::from_i64(&rows)).is_ok());
        let bad = vec![vec![1, 0, 0], vec![1, 1, 1], vec![1, 1, 0]];
        assert!(ZMatrix::new(ExactMatrix::from_i64(&bad)).is_err());
    }

    #[test]
    fn chamber_intersection_identity() {
        for n in 3..=7 {
            for k in 0..=n - 2 {
                let index = ChamberIndex::new(k, n).unwrap();
                for i in 0..index.len() {
                    let mut inter = ChamberSet::full(index.len());
                    for (_, _, s) in chamber_as_intersection(index.word(i)).unwrap() {
                        inter.intersect_with(&tile_chamber_set(&index, &s).unwrap());
                    }
                    assert_eq!(inter.iter().collect::<Vec<_>>(), vec![i]);
                }
            }
        }
    }

    #[test]
    fn k1_tilings_match_polygon_triangulations() {
        for n in 4..=8 {
            let g = compatibility_graph(1, n).unwrap();
            let all = enumerate_tilings(&g, &ChamberSet::full(g.index.len()));
            let labels: Vec<usize> = (1..=n).collect();
            assert_eq!(all.len(), crate::plabic::polygon_triangulations(&labels).len());
            assert!(all.iter().all(|t| t.tiles.len() == n - 2));
        }
    }

    #[test]
    fn hexagon_with_concurrent_diagonals() {
        let z = symmetric_hexagon();
        let index = ChamberIndex::new(1, 6).unwrap();
        let (empty, _, exact) = chamber_status(&index, &z, 0, 0).unwrap();
        assert!(exact);
        assert_eq!(index.words_of(&empty), vec!["145236".to_string(), "341256".to_string()]);
    }
}
