//! Decorated and bounded affine permutations, T-duality on cell labels,
//! cyclic descents and w-permutations, sorted collections, and separable
//! permutations.
//!
//! **Descents here are left descents.** A letter `i >= 2` of a word `w` is a
//! left descent when `i` appears to the left of `i - 1`; this is a statement
//! about values, not about adjacent positions. The cyclic version also counts
//! `1` when `1` appears to the left of `n`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{self, Subset};

/// Colour of a fixed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decoration {
    Loop,
    Coloop,
}

/// Bijection of `[n]` whose fixed points are each a loop or a coloop.
/// Images are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DecoratedRecord", into = "DecoratedRecord")]
pub struct DecoratedPermutation {
    images: Vec<usize>,
    coloops: BTreeSet<usize>,
}

#[derive(Serialize, Deserialize)]
struct DecoratedRecord {
    n: usize,
    images: Vec<usize>,
    loops: Vec<usize>,
    coloops: Vec<usize>,
}

impl TryFrom<DecoratedRecord> for DecoratedPermutation {
    type Error = Error;
    fn try_from(r: DecoratedRecord) -> Result<Self> {
        if r.images.len() != r.n {
            return Err(Error::Argument("images length differs from n".into()));
        }
        let p = DecoratedPermutation::new(r.images, &r.coloops)?;
        if p.loops() != r.loops {
            return Err(Error::Argument("loop list disagrees with the fixed points".into()));
        }
        Ok(p)
    }
}

impl From<DecoratedPermutation> for DecoratedRecord {
    fn from(p: DecoratedPermutation) -> Self {
        DecoratedRecord { n: p.n(), loops: p.loops(), coloops: p.coloops(), images: p.images }
    }
}

impl DecoratedPermutation {
    /// Fixed points listed in `coloops` are coloops; all other fixed points are loops.
    pub fn new(images: Vec<usize>, coloops: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Argument(format!("{images:?} is not a permutation of [{n}]")));
            }
            seen[v] = true;
        }
        for &c in coloops {
            if c == 0 || c > n || images[c - 1] != c {
                return Err(Error::Argument(format!("coloop {c} is not a fixed point")));
            }
        }
        Ok(Self { images, coloops: coloops.iter().copied().collect() })
    }

    /// All fixed points are loops.
    pub fn with_loops(images: Vec<usize>) -> Result<Self> {
        Self::new(images, &[])
    }

    pub fn identity(n: usize, decoration: Decoration) -> Self {
        let images: Vec<usize> = (1..=n).collect();
        let coloops: Vec<usize> =
            if decoration == Decoration::Coloop { images.clone() } else { Vec::new() };
        Self::new(images, &coloops).expect("identity")
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.image(i) == i
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.is_fixed(i) && !self.coloops.contains(&i)
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        self.coloops.contains(&i)
    }

    pub fn loops(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.is_loop(i)).collect()
    }

    pub fn coloops(&self) -> Vec<usize> {
        self.coloops.iter().copied().collect()
    }

    pub fn decoration(&self, i: usize) -> Option<Decoration> {
        if !self.is_fixed(i) {
            None
        } else if self.is_coloop(i) {
            Some(Decoration::Coloop)
        } else {
            Some(Decoration::Loop)
        }
    }

    pub fn inverse_images(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        inv
    }

    /// Anti-excedances: `i` with `π⁻¹(i) > i`, or `i` a coloop.
    pub fn anti_excedance_set(&self) -> Vec<usize> {
        let inv = self.inverse_images();
        (1..=self.n()).filter(|&i| inv[i - 1] > i || self.is_coloop(i)).collect()
    }

    pub fn anti_excedances(&self) -> usize {
        self.anti_excedance_set().len()
    }

    /// The `k` of the type `(k, n)`.
    pub fn k(&self) -> usize {
        self.anti_excedances()
    }

    pub fn to_affine(&self) -> AffinePermutation {
        let n = self.n();
        let window = (1..=n)
            .map(|i| {
                let v = self.image(i);
                if v > i || self.is_loop(i) {
                    v as i64
                } else {
                    (v + n) as i64
                }
            })
            .collect();
        AffinePermutation { window }
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    pub fn is_coloopless(&self) -> bool {
        self.coloops.is_empty()
    }

    /// `π̂(i) = π(i − 1)` cyclically; fixed points of the result are loops.
    pub fn t_dual(&self) -> Result<Self> {
        if !self.is_loopless() {
            return Err(Error::Precondition(format!("T-duality needs a loopless permutation, got {self}")));
        }
        let n = self.n();
        let images = (1..=n).map(|i| self.image(crate::exact::cyc(i + n - 1, n))).collect();
        Self::new(images, &[])
    }

    /// Inverse of [`Self::t_dual`]: `π(i) = π̂(i + 1)`; fixed points become coloops.
    pub fn t_dual_inverse(&self) -> Result<Self> {
        if !self.is_coloopless() {
            return Err(Error::Precondition(format!(
                "inverse T-duality needs a coloopless permutation, got {self}"
            )));
        }
        let n = self.n();
        let images: Vec<usize> = (1..=n).map(|i| self.image(crate::exact::cyc(i + 1, n))).collect();
        let fixed: Vec<usize> = (1..=n).filter(|&i| images[i - 1] == i).collect();
        Self::new(images, &fixed)
    }

    /// All decorated permutations of `[n]` (both colours on every fixed point).
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for images in (1..=n).permutations(n) {
            let fixed: Vec<usize> = (1..=n).filter(|&i| images[i - 1] == i).collect();
            for mask in 0..(1u32 << fixed.len()) {
                let col: Vec<usize> =
                    fixed.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect();
                out.push(Self::new(images.clone(), &col).expect("valid"));
            }
        }
        out
    }
}

impl fmt::Display for DecoratedPermutation {
    /// One-line form with `_` after loops and `^` after coloops.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (1..=self.n())
            .map(|i| match self.decoration(i) {
                None => self.image(i).to_string(),
                Some(Decoration::Loop) => format!("{i}_"),
                Some(Decoration::Coloop) => format!("{i}^"),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for DecoratedPermutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut images = Vec::new();
        let mut coloops = Vec::new();
        let tokens: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
        for (idx, tok) in tokens.iter().enumerate() {
            let (num, mark) = match tok.strip_suffix('^') {
                Some(t) => (t, Some(Decoration::Coloop)),
                None => match tok.strip_suffix('_') {
                    Some(t) => (t, Some(Decoration::Loop)),
                    None => (*tok, None),
                },
            };
            let v: usize = num.parse().map_err(|_| Error::Argument(format!("bad token {tok:?}")))?;
            if mark.is_some() && v != idx + 1 {
                return Err(Error::Argument(format!("decorated token {tok:?} is not a fixed point")));
            }
            if mark == Some(Decoration::Coloop) {
                coloops.push(v);
            }
            images.push(v);
        }
        Self::new(images, &coloops)
    }
}

/// Bounded affine permutation stored by its window `π(1), …, π(n)`;
/// `π(i + n) = π(i) + n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        let residues: BTreeSet<i64> = window.iter().map(|v| v.rem_euclid(n)).collect();
        if residues.len() != window.len() {
            return Err(Error::Argument(format!("{window:?} does not permute residues mod {n}")));
        }
        let p = Self { window };
        if !p.is_bounded() {
            return Err(Error::Argument(format!("{:?} is not bounded", p.window)));
        }
        if p.total_shift() % n != 0 {
            return Err(Error::Argument("window shift is not a multiple of n".into()));
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn value(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        let r = (i - 1).rem_euclid(n);
        let q = (i - 1).div_euclid(n);
        self.window[r as usize] + q * n
    }

    fn total_shift(&self) -> i64 {
        self.window.iter().enumerate().map(|(i, v)| v - (i as i64 + 1)).sum()
    }

    /// `i <= π(i) <= i + n` on the window.
    pub fn is_bounded(&self) -> bool {
        let n = self.n() as i64;
        self.window.iter().enumerate().all(|(i, &v)| {
            let i = i as i64 + 1;
            i <= v && v <= i + n
        })
    }

    pub fn k(&self) -> usize {
        (self.total_shift() / self.n() as i64) as usize
    }

    /// `#{(i, j) : i ∈ [n], i < j, π(i) > π(j)}`.
    pub fn inversions(&self) -> usize {
        let n = self.n() as i64;
        let mut count = 0;
        for i in 1..=n {
            let pi = self.value(i);
            for j in i + 1..i + n {
                if self.value(j) < pi {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn cell_dimension(&self) -> usize {
        let (k, n) = (self.k(), self.n());
        k * (n - k) - self.inversions()
    }

    pub fn to_decorated(&self) -> DecoratedPermutation {
        let n = self.n();
        let images: Vec<usize> =
            self.window.iter().map(|&v| crate::exact::cyc_i(v, n)).collect();
        let coloops: Vec<usize> =
            (1..=n).filter(|&i| self.window[i - 1] == (i + n) as i64).collect();
        DecoratedPermutation::new(images, &coloops).expect("window permutes residues")
    }

    /// Bounded affine permutations obtained by one affine transposition whose
    /// cell has dimension exactly one less.
    pub fn bruhat_covers(&self) -> Vec<AffinePermutation> {
        let n = self.n() as i64;
        let target = self.inversions() + 1;
        let mut out = BTreeSet::new();
        for i in 1..=n {
            for j in i + 1..i + n {
                let mut w = self.window.clone();
                let (pi, pj) = (self.value(i), self.value(j));
                w[(i - 1) as usize] = pj;
                let jr = (j - 1).rem_euclid(n);
                let shift = (j - 1).div_euclid(n) * n;
                w[jr as usize] = pi - shift;
                let cand = AffinePermutation { window: w };
                if cand.is_bounded() && cand.inversions() == target {
                    out.insert(cand);
                }
            }
        }
        out.into_iter().collect()
    }

    /// `π(i) = i + k` for all `i`.
    pub fn top_cell(k: usize, n: usize) -> Self {
        Self { window: (1..=n as i64).map(|i| i + k as i64).collect() }
    }
}

/// Cyclic left descents of a word on `[n]`.
pub fn cyclic_descents(w: &[usize]) -> Subset {
    let n = w.len();
    let pos = positions(w);
    let mut s = left_descents(w);
    if n >= 1 && pos[1] < pos[n] {
        s |= 1;
    }
    s
}

/// Left descents: letters `i >= 2` appearing to the left of `i - 1`.
pub fn left_descents(w: &[usize]) -> Subset {
    let pos = positions(w);
    subset::from_labels((2..=w.len()).filter(|&i| pos[i] < pos[i - 1]))
}

/// Positional descents: `i` with `w_i > w_{i+1}`.
pub fn positional_descents(w: &[usize]) -> Subset {
    subset::from_labels((1..w.len()).filter(|&i| w[i - 1] > w[i]))
}

fn positions(w: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; w.len() + 1];
    for (p, &v) in w.iter().enumerate() {
        pos[v] = p;
    }
    pos
}

fn is_permutation_word(w: &[usize]) -> bool {
    let mut seen = vec![false; w.len() + 1];
    w.iter().all(|&v| v >= 1 && v <= w.len() && !std::mem::replace(&mut seen[v], true))
}

/// Permutation `w ∈ S_n` with `w_n = n` and `k + 1` cyclic descents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct WPermutation {
    word: Vec<usize>,
}

impl TryFrom<Vec<usize>> for WPermutation {
    type Error = Error;
    fn try_from(word: Vec<usize>) -> Result<Self> {
        Self::new(word)
    }
}

impl From<WPermutation> for Vec<usize> {
    fn from(w: WPermutation) -> Self {
        w.word
    }
}

impl WPermutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        if word.len() < 2 || !is_permutation_word(&word) {
            return Err(Error::Precondition(format!("{word:?} is not a permutation word of length >= 2")));
        }
        if *word.last().unwrap() != word.len() {
            return Err(Error::Precondition(format!("{word:?} does not end in n")));
        }
        Ok(Self { word })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// `|cdes(w)| - 1`, equal to the number of left descents.
    pub fn k(&self) -> usize {
        subset::size(left_descents(&self.word))
    }

    pub fn descents(&self) -> Subset {
        left_descents(&self.word)
    }

    /// Cyclic rotation of the word ending at the letter `a` (`a = 0` means `n`).
    pub fn rotation_ending_at(&self, a: usize) -> Vec<usize> {
        let n = self.n();
        let a = if a == 0 { n } else { a };
        let p = self.word.iter().position(|&v| v == a).expect("letter present");
        (0..n).map(|t| self.word[(p + 1 + t) % n]).collect()
    }

    /// `I_r = cdes(rotation ending at r − 1)` for `r = 1..n`.
    pub fn vertex_sets(&self) -> Vec<Subset> {
        (1..=self.n()).map(|r| cyclic_descents(&self.rotation_ending_at(r - 1))).collect()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<usize> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| Error::Argument(format!("bad letter {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Argument(format!("bad letter {c:?}"))))
                .collect::<Result<_>>()?
        };
        Self::new(word)
    }

    /// Inverse of [`Self::vertex_sets`]: rebuild `w` from `I_1..I_n` by
    /// following the directed circuit, then re-derive the sets to confirm.
    pub fn from_vertex_sets(sets: &[Subset]) -> Option<Self> {
        let n = sets.len();
        if n < 2 {
            return None;
        }
        let mut word = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        fn dfs(sets: &[Subset], cur: Subset, word: &mut Vec<usize>, used: &mut [bool]) -> bool {
            let n = sets.len();
            if word.len() == n - 1 {
                return subset::contains(cur, n) && (cur & !(1 << (n - 1))) | 1 == sets[0];
            }
            for x in 1..n {
                if used[x] || !subset::contains(cur, x) || subset::contains(cur, x + 1) {
                    continue;
                }
                let next = (cur & !(1 << (x - 1))) | (1 << x);
                if sets[x] != next {
                    continue;
                }
                used[x] = true;
                word.push(x);
                if dfs(sets, next, word, used) {
                    return true;
                }
                word.pop();
                used[x] = false;
            }
            false
        }
        if !dfs(sets, sets[0], &mut word, &mut used) {
            return None;
        }
        word.push(n);
        let w = Self::new(word).ok()?;
        (w.vertex_sets() == sets).then_some(w)
    }
}

impl fmt::Display for WPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() < 10 {
            f.write_str(&self.word.iter().map(|v| v.to_string()).collect::<String>())
        } else {
            f.write_str(&self.word.iter().map(|v| v.to_string()).join(","))
        }
    }
}

/// All of `D_{k+1,n}` in lexicographic order of words.
pub fn enumerate_d(k: usize, n: usize) -> Result<Vec<WPermutation>> {
    if n < 2 || k + 2 > n {
        return Err(Error::Precondition(format!("need 0 <= k <= n - 2, got k={k}, n={n}")));
    }
    Ok((1..n)
        .permutations(n - 1)
        .filter(|p| subset::size(left_descents(p)) == k)
        .map(|mut p| {
            p.push(n);
            WPermutation { word: p }
        })
        .collect())
}

/// `(I, J)` with `i_1 <= j_1 <= i_2 <= j_2 <= …`.
pub fn is_sorted_pair(i: Subset, j: Subset) -> bool {
    let (a, b) = (subset::labels(i), subset::labels(j));
    a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x <= y) && a.iter().skip(1).zip(&b).all(|(x, y)| y <= x)
}

/// Order a family into a sorted collection, if every pair is comparable.
pub fn sort_collection(sets: &[Subset]) -> Option<Vec<Subset>> {
    let mut v = sets.to_vec();
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if !is_sorted_pair(v[a], v[b]) && !is_sorted_pair(v[b], v[a]) {
                return None;
            }
        }
    }
    v.sort_by(|&x, &y| {
        if x == y {
            std::cmp::Ordering::Equal
        } else if is_sorted_pair(x, y) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    Some(v)
}

/// Column-sorted condition on an ordered tuple of equal-size sets.
pub fn is_sorted_collection(sets: &[Subset]) -> bool {
    let cols: Vec<Vec<usize>> = sets.iter().map(|&s| subset::labels(s)).collect();
    let Some(m) = cols.first().map(Vec::len) else { return true };
    if cols.iter().any(|c| c.len() != m) {
        return false;
    }
    let flat: Vec<usize> = (0..m).flat_map(|p| cols.iter().map(move |c| c[p])).collect();
    flat.windows(2).all(|w| w[0] <= w[1])
}

/// Eulerian number `A(m, d)`: permutations of `[m]` with `d` descents.
pub fn eulerian(m: usize, d: usize) -> u64 {
    let mut row = vec![1u64];
    for len in 2..=m {
        let mut next = vec![0u64; len];
        for (j, slot) in next.iter_mut().enumerate() {
            let stay = row.get(j).map_or(0, |&v| v * (j as u64 + 1));
            let up = if j > 0 { row.get(j - 1).map_or(0, |&v| v * (len - j) as u64) } else { 0 };
            *slot = stay + up;
        }
        row = next;
    }
    if m == 0 {
        return u64::from(d == 0);
    }
    row.get(d).copied().unwrap_or(0)
}

/// Decomposition of a separable permutation into skew and direct sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparableTree {
    Leaf,
    Plus(Box<SeparableTree>, Box<SeparableTree>),
    Minus(Box<SeparableTree>, Box<SeparableTree>),
}

impl SeparableTree {
    pub fn size(&self) -> usize {
        match self {
            SeparableTree::Leaf => 1,
            SeparableTree::Plus(a, b) | SeparableTree::Minus(a, b) => a.size() + b.size(),
        }
    }

    /// The permutation word this tree denotes.
    pub fn word(&self) -> Vec<usize> {
        match self {
            SeparableTree::Leaf => vec![1],
            SeparableTree::Plus(a, b) => {
                let (l, r) = (a.word(), b.word());
                let m = l.len();
                l.into_iter().chain(r.into_iter().map(|v| v + m)).collect()
            }
            SeparableTree::Minus(a, b) => {
                let (l, r) = (a.word(), b.word());
                let m = r.len();
                l.into_iter().map(|v| v + m).chain(r).collect()
            }
        }
    }
}

impl fmt::Display for SeparableTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparableTree::Leaf => write!(f, "1"),
            SeparableTree::Plus(a, b) => write!(f, "({a}⊕{b})"),
            SeparableTree::Minus(a, b) => write!(f, "({a}⊖{b})"),
        }
    }
}

/// Either a decomposition tree or the 1-based positions of a 3142 or 2413 occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separability {
    Separable(SeparableTree),
    Witness([usize; 4]),
}

pub fn separable_decompose(w: &[usize]) -> Result<Separability> {
    if w.is_empty() || !is_permutation_word(w) {
        return Err(Error::Argument(format!("{w:?} is not a permutation word")));
    }
    match decompose(w) {
        Some(t) => Ok(Separability::Separable(t)),
        None => Ok(Separability::Witness(bad_pattern(w).expect("non-separable words contain a pattern"))),
    }
}

fn standardize(w: &[usize]) -> Vec<usize> {
    let mut sorted: Vec<usize> = w.to_vec();
    sorted.sort_unstable();
    w.iter().map(|v| sorted.binary_search(v).unwrap() + 1).collect()
}

// Splits at the largest proper prefix that is a block of bottom (⊕) or top (⊖) values.
fn decompose(w: &[usize]) -> Option<SeparableTree> {
    let n = w.len();
    if n == 1 {
        return Some(SeparableTree::Leaf);
    }
    let mut max_prefix = 0;
    let mut min_prefix = usize::MAX;
    let mut plus_split = None;
    let mut minus_split = None;
    for m in 1..n {
        max_prefix = max_prefix.max(w[m - 1]);
        min_prefix = min_prefix.min(w[m - 1]);
        if max_prefix == m {
            plus_split = Some(m);
        }
        if min_prefix == n - m + 1 {
            minus_split = Some(m);
        }
    }
    if let Some(m) = plus_split {
        let l = decompose(&standardize(&w[..m]))?;
        let r = decompose(&standardize(&w[m..]))?;
        return Some(SeparableTree::Plus(Box::new(l), Box::new(r)));
    }
    if let Some(m) = minus_split {
        let l = decompose(&standardize(&w[..m]))?;
        let r = decompose(&standardize(&w[m..]))?;
        return Some(SeparableTree::Minus(Box::new(l), Box::new(r)));
    }
    None
}

fn bad_pattern(w: &[usize]) -> Option<[usize; 4]> {
    let n = w.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let pat = standardize(&[w[a], w[b], w[c], w[d]]);
                    if pat == [3, 1, 4, 2] || pat == [2, 4, 1, 3] {
                        return Some([a + 1, b + 1, c + 1, d + 1]);
                    }
                }
            }
        }
    }
    None
}

pub fn is_separable(w: &[usize]) -> bool {
    is_permutation_word(w) && bad_pattern(w).is_none()
}

/// The cycle `(w_1 w_2 … w_{n-1} n)` for a separable word on `[n − 1]`.
pub fn beta(w: &[usize]) -> Result<DecoratedPermutation> {
    if !is_permutation_word(w) || w.is_empty() {
        return Err(Error::Argument(format!("{w:?} is not a permutation word")));
    }
    if !is_separable(w) {
        return Err(Error::Precondition(format!("{w:?} is not separable")));
    }
    let n = w.len() + 1;
    let cycle: Vec<usize> = w.iter().copied().chain(std::iter::once(n)).collect();
    let mut images = vec![0; n];
    for t in 0..n {
        images[cycle[t] - 1] = cycle[(t + 1) % n];
    }
    DecoratedPermutation::with_loops(images)
}

/// All separable words on `[m]`.
pub fn separable_words(m: usize) -> Vec<Vec<usize>> {
    (1..=m).permutations(m).filter(|p| is_separable(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(s: &str) -> DecoratedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn decorated_example() {
        let p = dp("3 2_ 5 1 6 8 7^ 4");
        assert_eq!(p.anti_excedance_set(), vec![1, 4, 7]);
        assert_eq!(p.to_affine().window(), &[3, 2, 5, 9, 6, 8, 15, 12]);
        assert_eq!(p.to_affine().to_decorated(), p);
        assert_eq!(p.to_string(), "3 2_ 5 1 6 8 7^ 4");
        assert_eq!(DecoratedPermutation::identity(4, Decoration::Loop).k(), 0);
        assert_eq!(DecoratedPermutation::identity(4, Decoration::Coloop).k(), 4);
        assert_eq!(DecoratedPermutation::identity(3, Decoration::Loop).to_affine().window(), &[1, 2, 3]);
    }

    #[test]
    fn json_record() {
        let p = dp("3 2_ 5 1 6 8 7^ 4");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"n":8,"images":[3,2,5,1,6,8,7,4],"loops":[2],"coloops":[7]}"#);
        let back: DecoratedPermutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn t_dual_example() {
        let p = DecoratedPermutation::with_loops(vec![2, 4, 7, 1, 8, 5, 3, 6]).unwrap();
        let h = p.t_dual().unwrap();
        assert_eq!(h.images(), &[6, 2, 4, 7, 1, 8, 5, 3]);
        assert_eq!(h.k() + 1, p.k());
        assert_eq!(h.t_dual_inverse().unwrap(), p);
        let cyc = DecoratedPermutation::with_loops(vec![2, 3, 4, 1]).unwrap();
        assert_eq!(cyc.t_dual().unwrap().loops(), vec![1, 2, 3, 4]);
        assert!(dp("1_ 2").t_dual().is_err());
    }

    #[test]
    fn dimensions() {
        for n in 2..=6 {
            for k in 0..=n {
                let top = AffinePermutation::top_cell(k, n);
                assert_eq!(top.cell_dimension(), k * (n - k));
            }
        }
        for p in DecoratedPermutation::all(4) {
            let a = p.to_affine();
            assert_eq!(a.k(), p.k());
            if p.images().iter().enumerate().all(|(i, &v)| v == i + 1) {
                assert_eq!(a.cell_dimension(), 0);
            }
        }
    }

    #[test]
    fn covers_drop_dimension() {
        for p in DecoratedPermutation::all(4) {
            let a = p.to_affine();
            for c in a.bruhat_covers() {
                assert_eq!(c.cell_dimension() + 1, a.cell_dimension());
                assert_eq!(c.k(), a.k());
            }
            if a.cell_dimension() == 0 {
                assert!(a.bruhat_covers().is_empty());
            }
        }
    }

    #[test]
    fn descents_examples() {
        assert_eq!(subset::labels(cyclic_descents(&[3, 2, 4, 1, 5, 6])), vec![1, 2, 3]);
        assert_eq!(subset::labels(cyclic_descents(&[5, 6, 3, 2, 4, 1])), vec![2, 3, 5]);
        assert_eq!(subset::labels(cyclic_descents(&[1, 2, 3, 4])), vec![1]);
    }

    #[test]
    fn vertex_set_examples() {
        let w = WPermutation::parse("324156").unwrap();
        let got: Vec<Vec<usize>> = w.vertex_sets().into_iter().map(subset::labels).collect();
        assert_eq!(
            got,
            vec![vec![1, 2, 3], vec![2, 3, 5], vec![1, 3, 4], vec![1, 2, 4], vec![1, 3, 5], vec![2, 3, 6]]
        );
        let w2 = WPermutation::parse("2614537").unwrap();
        assert_eq!(subset::labels(w2.vertex_sets()[0]), vec![1, 2, 4, 6]);
        assert_eq!(WPermutation::from_vertex_sets(&w.vertex_sets()), Some(w));
    }

    #[test]
    fn vertex_sets_structure() {
        for n in 3..=6 {
            for k in 0..=n - 2 {
                for w in enumerate_d(k, n).unwrap() {
                    let sets = w.vertex_sets();
                    for r in 1..=n {
                        let s = sets[r - 1];
                        assert!(subset::contains(s, r));
                        assert!(!subset::contains(s, crate::exact::cyc(r + n - 1, n)));
                        assert_eq!(subset::size(s), k + 1);
                    }
                    let word = w.word();
                    let mut prev = sets[0];
                    for &x in &word[..n - 1] {
                        let next = sets[x];
                        assert_eq!(next, (prev & !(1 << (x - 1))) | (1 << x));
                        prev = next;
                    }
                    assert!(sort_collection(&sets).map_or(false, |s| is_sorted_collection(&s)));
                    assert_eq!(WPermutation::from_vertex_sets(&sets).as_ref(), Some(&w));
                }
            }
        }
    }

    #[test]
    fn sorted_pairs() {
        let s = |v: &[usize]| subset::from_labels(v.iter().copied());
        assert!(is_sorted_pair(s(&[1, 3]), s(&[2, 4])));
        assert!(!is_sorted_pair(s(&[2, 4]), s(&[1, 3])));
    }

    #[test]
    fn eulerian_counts() {
        assert_eq!(enumerate_d(1, 6).unwrap().len(), 26);
        assert_eq!(enumerate_d(1, 7).unwrap().len(), 57);
        assert_eq!(eulerian(5, 1), 26);
        assert_eq!(eulerian(4, 0), 1);
        assert!(enumerate_d(5, 6).is_err());
    }

    #[test]
    fn separable_examples() {
        let Separability::Separable(t) = separable_decompose(&[2, 3, 1, 6, 5, 4]).unwrap() else {
            panic!("separable")
        };
        assert_eq!(t.to_string(), "(((1⊕1)⊖1)⊕((1⊖1)⊖1))");
        assert_eq!(t.word(), vec![2, 3, 1, 6, 5, 4]);
        assert_eq!(separable_decompose(&[3, 1, 4, 2]).unwrap(), Separability::Witness([1, 2, 3, 4]));
        let Separability::Separable(comb) = separable_decompose(&[1, 2, 3]).unwrap() else { panic!() };
        assert_eq!(comb.to_string(), "((1⊕1)⊕1)");
        assert!(beta(&[2, 4, 1, 3]).is_err());
    }

    #[test]
    fn separable_totals() {
        let totals: Vec<usize> = (1..=6).map(|m| separable_words(m).len()).collect();
        assert_eq!(totals, vec![1, 2, 6, 22, 90, 394]);
    }

    #[test]
    fn beta_type_tracks_descents() {
        for m in 1..=6 {
            for w in separable_words(m) {
                let b = beta(&w).unwrap();
                assert_eq!(b.k(), subset::size(positional_descents(&w)) + 1, "{w:?}");
                assert!(b.is_loopless());
            }
        }
    }
}
