//! Embedded plabic graphs.
//!
//! A graph is stored as a rotation system: every vertex lists its incident
//! edge ids in clockwise order. Vertices `0..n` are the boundary vertices
//! `1..n` (clockwise around the disk), each of degree one.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::cyc;
use crate::permutations::{AffinePermutation, DecoratedPermutation};
use crate::subset::{self, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    Boundary(usize),
    Internal(Color),
}

/// One step of a face boundary walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceStep {
    /// Traverse `edge` from `from` to `to`.
    Dart { edge: usize, from: usize, to: usize },
    /// Follow the disk boundary from boundary label `j` to `j + 1`.
    Arc(usize),
}

/// A face, walked with the face on the right of every dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub steps: Vec<FaceStep>,
}

impl Face {
    /// Internal vertices visited, once per wedge, in walk order.
    pub fn internal_vertices(&self, g: &PlabicGraph) -> Vec<usize> {
        self.steps
            .iter()
            .filter_map(|s| match *s {
                FaceStep::Dart { to, .. } if !g.is_boundary(to) => Some(to),
                _ => None,
            })
            .collect()
    }

    pub fn boundary_arcs(&self) -> Vec<usize> {
        self.steps.iter().filter_map(|s| if let FaceStep::Arc(j) = *s { Some(j) } else { None }).collect()
    }

    pub fn is_internal(&self) -> bool {
        self.boundary_arcs().is_empty()
    }
}

/// Location and kind of a local move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    /// Square move at the face with this index in [`PlabicGraph::faces`].
    Square { face: usize },
    /// Merge the two endpoints of this edge.
    Contract { edge: usize },
    /// Split `vertex`; the new vertex takes `len` consecutive edges starting at `start`.
    Expand { vertex: usize, start: usize, len: usize },
    /// Put a degree-two vertex of the given colour on `edge`.
    Insert { edge: usize, color: Color },
    /// Remove the degree-two `vertex`.
    Remove { vertex: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlabicGraph {
    n: usize,
    kinds: Vec<VertexKind>,
    names: Vec<String>,
    edges: Vec<[usize; 2]>,
    rotation: Vec<Vec<usize>>,
}

impl PlabicGraph {
    /// Validates the rotation system. `kinds[i]` must be `Boundary(i + 1)` for `i < n`.
    pub fn new(
        n: usize,
        kinds: Vec<VertexKind>,
        names: Vec<String>,
        edges: Vec<[usize; 2]>,
        rotation: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::MalformedGraph(m));
        if kinds.len() != rotation.len() || names.len() != kinds.len() {
            return bad("vertex arrays differ in length".into());
        }
        for (i, kind) in kinds.iter().enumerate() {
            match *kind {
                VertexKind::Boundary(b) if i < n && b == i + 1 => {}
                VertexKind::Internal(_) if i >= n => {}
                _ => return bad(format!("vertex {i} has kind {kind:?}")),
            }
        }
        let mut seen = vec![0usize; edges.len()];
        for (v, rot) in rotation.iter().enumerate() {
            for &e in rot {
                if e >= edges.len() || !edges[e].contains(&v) {
                    return bad(format!("vertex {v} lists edge {e} it is not on"));
                }
                seen[e] += 1;
            }
            if v < n && rot.len() != 1 {
                return bad(format!("boundary vertex {} has degree {}", v + 1, rot.len()));
            }
        }
        for (e, &[a, b]) in edges.iter().enumerate() {
            if a == b {
                return bad(format!("edge {e} is a self-loop"));
            }
            if seen[e] != 2 {
                return bad(format!("edge {e} appears {} times in rotations", seen[e]));
            }
        }
        let g = Self { n, kinds, names, edges, rotation };
        if !g.all_reach_boundary() {
            return bad("an internal vertex has no path to the boundary".into());
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        match self.kinds[v] {
            VertexKind::Internal(c) => Some(c),
            VertexKind::Boundary(_) => None,
        }
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.n..self.kinds.len()
    }

    pub fn count_color(&self, c: Color) -> usize {
        self.internal_vertices().filter(|&v| self.color(v) == Some(c)).count()
    }

    /// Neighbour of boundary vertex `i` (1-based label).
    pub fn boundary_neighbor(&self, i: usize) -> usize {
        self.other_end(self.rotation[i - 1][0], i - 1)
    }

    fn all_reach_boundary(&self) -> bool {
        let mut seen = vec![false; self.kinds.len()];
        let mut queue: VecDeque<usize> = (0..self.n).collect();
        for v in 0..self.n {
            seen[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &e in &self.rotation[v] {
                let w = self.other_end(e, v);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn position(&self, v: usize, e: usize) -> usize {
        self.rotation[v].iter().position(|&x| x == e).expect("edge at vertex")
    }

    /// Follow the rules of the road from boundary `i`: maximal right turn at
    /// black vertices, maximal left turn at white ones. Returns the label reached.
    fn trip_from(&self, i: usize) -> Result<usize> {
        let mut v = i - 1;
        let mut e = self.rotation[v][0];
        let mut seen = BTreeSet::new();
        loop {
            let w = self.other_end(e, v);
            if !seen.insert((e, v)) {
                return Err(Error::MalformedGraph(format!("trip from {i} revisits edge {e}")));
            }
            if let VertexKind::Boundary(j) = self.kinds[w] {
                return Ok(j);
            }
            let d = self.degree(w);
            let p = self.position(w, e);
            let next = match self.color(w).unwrap() {
                Color::Black => self.rotation[w][(p + d - 1) % d],
                Color::White => self.rotation[w][(p + 1) % d],
            };
            v = w;
            e = next;
        }
    }

    /// Colour of the lollipop hanging from boundary `i`, if the component is a path to a leaf.
    fn lollipop_color(&self, i: usize) -> Option<Color> {
        let mut prev = i - 1;
        let mut e = self.rotation[prev][0];
        loop {
            let v = self.other_end(e, prev);
            if self.is_boundary(v) {
                return None;
            }
            match self.degree(v) {
                1 => return self.color(v),
                2 => {
                    let r = &self.rotation[v];
                    e = if r[0] == e { r[1] } else { r[0] };
                    prev = v;
                }
                _ => return None,
            }
        }
    }

    pub fn trip_permutation(&self) -> Result<DecoratedPermutation> {
        let mut images = Vec::with_capacity(self.n);
        let mut coloops = Vec::new();
        for i in 1..=self.n {
            let j = self.trip_from(i)?;
            if j == i {
                match self.lollipop_color(i) {
                    Some(Color::White) => coloops.push(i),
                    Some(Color::Black) => {}
                    None => {
                        return Err(Error::MalformedGraph(format!(
                            "fixed point {i} is not attached to a lollipop"
                        )))
                    }
                }
            }
            images.push(j);
        }
        DecoratedPermutation::new(images, &coloops)
            .map_err(|e| Error::MalformedGraph(format!("trips do not form a permutation: {e}")))
    }

    /// All faces, each walked once with the face on the right.
    pub fn faces(&self) -> Vec<Face> {
        let mut used: HashMap<(usize, usize), ()> = HashMap::new();
        let mut faces = Vec::new();
        let mut starts: Vec<(usize, usize)> = Vec::new();
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            starts.push((e, a));
            starts.push((e, b));
        }
        for &(e0, from0) in &starts {
            if used.contains_key(&(e0, from0)) {
                continue;
            }
            let mut steps = Vec::new();
            let (mut e, mut from) = (e0, from0);
            loop {
                used.insert((e, from), ());
                let to = self.other_end(e, from);
                steps.push(FaceStep::Dart { edge: e, from, to });
                let (ne, nfrom) = if let VertexKind::Boundary(j) = self.kinds[to] {
                    steps.push(FaceStep::Arc(j));
                    let next_b = j % self.n;
                    (self.rotation[next_b][0], next_b)
                } else {
                    let d = self.degree(to);
                    let p = self.position(to, e);
                    (self.rotation[to][(p + d - 1) % d], to)
                };
                if (ne, nfrom) == (e0, from0) {
                    break;
                }
                e = ne;
                from = nfrom;
            }
            faces.push(Face { steps });
        }
        faces
    }

    /// The face whose walk contains the boundary arc from `j` to `j + 1`.
    pub fn face_with_arc(faces: &[Face], j: usize) -> Option<usize> {
        faces.iter().position(|f| f.boundary_arcs().contains(&j))
    }

    /// Number of faces, boundary faces included. For a reduced graph this is
    /// the cell dimension plus one.
    pub fn face_count(&self) -> usize {
        self.faces().len()
    }

    /// Trip permutation together with the cheap reducedness test
    /// `faces = dim + 1`.
    pub fn checked_trip_permutation(&self) -> Result<DecoratedPermutation> {
        let pi = self.trip_permutation()?;
        let dim = pi.to_affine().cell_dimension();
        let faces = self.face_count();
        if faces != dim + 1 {
            return Err(Error::MalformedGraph(format!(
                "graph has {faces} faces but its trip permutation has cell dimension {dim}; not reduced"
            )));
        }
        Ok(pi)
    }

    pub fn is_bipartite_normal(&self) -> bool {
        self.edges.iter().all(|&[a, b]| match (self.kinds[a], self.kinds[b]) {
            (VertexKind::Internal(x), VertexKind::Internal(y)) => x != y,
            (VertexKind::Boundary(_), VertexKind::Internal(c))
            | (VertexKind::Internal(c), VertexKind::Boundary(_)) => c == Color::White,
            _ => false,
        })
    }

    /// Bipartite form with every boundary vertex next to a white vertex,
    /// obtained by degree-two insertions only.
    pub fn bipartite_normal(&self) -> Result<PlabicGraph> {
        let mut g = self.clone();
        let m = g.edges.len();
        for e in 0..m {
            let [a, b] = g.edges[e];
            match (g.kinds[a], g.kinds[b]) {
                (VertexKind::Internal(x), VertexKind::Internal(y)) if x == y => {
                    g.insert_vertex(e, x.opposite());
                }
                (VertexKind::Boundary(_), VertexKind::Internal(Color::Black))
                | (VertexKind::Internal(Color::Black), VertexKind::Boundary(_)) => {
                    g.insert_vertex(e, Color::White);
                }
                (VertexKind::Boundary(_), VertexKind::Boundary(_)) => {
                    // white, black, white keeps both ends next to white vertices
                    let (_, e2) = g.insert_vertex(e, Color::White);
                    let (_, e3) = g.insert_vertex(e2, Color::Black);
                    g.insert_vertex(e3, Color::White);
                }
                _ => {}
            }
        }
        debug_assert!(g.is_bipartite_normal());
        Ok(g)
    }

    /// Boundary sets `∂M` of all almost perfect matchings of the bipartite normal form.
    pub fn positroid_bases(&self) -> Result<BTreeSet<Subset>> {
        let g = if self.is_bipartite_normal() { self.clone() } else { self.bipartite_normal()? };
        let nv = g.vertex_count();
        if nv > 128 {
            return Err(Error::Argument(format!("{nv} vertices exceed the matching limit of 128")));
        }
        let adj: Vec<Vec<usize>> =
            (0..nv).map(|v| g.rotation[v].iter().map(|&e| g.other_end(e, v)).collect()).collect();
        let mut memo: HashMap<u128, BTreeSet<Subset>> = HashMap::new();
        let internal: Vec<usize> = g.internal_vertices().collect();
        let out = match_rec(0, &adj, &internal, g.n, &mut memo);
        Ok(out)
    }

    /// `#white − #black` of the bipartite normal form.
    pub fn matching_rank(&self) -> Result<usize> {
        let g = self.bipartite_normal()?;
        let (w, b) = (g.count_color(Color::White), g.count_color(Color::Black));
        w.checked_sub(b).ok_or_else(|| Error::MalformedGraph("more black than white vertices".into()))
    }

    fn insert_vertex(&mut self, e: usize, color: Color) -> (usize, usize) {
        let [a, b] = self.edges[e];
        let w = self.kinds.len();
        self.kinds.push(VertexKind::Internal(color));
        self.names.push(String::new());
        let e2 = self.edges.len();
        self.edges[e] = [a, w];
        self.edges.push([w, b]);
        let pb = self.position(b, e);
        self.rotation[b][pb] = e2;
        self.rotation.push(vec![e, e2]);
        (w, e2)
    }

    /// Drop vertices and edges flagged dead and renumber.
    fn compact(mut self, dead_v: &[bool], dead_e: &[bool]) -> PlabicGraph {
        let mut vmap = vec![usize::MAX; self.kinds.len()];
        let mut c = 0;
        for v in 0..self.kinds.len() {
            if !dead_v[v] {
                vmap[v] = c;
                c += 1;
            }
        }
        let mut emap = vec![usize::MAX; self.edges.len()];
        let mut c = 0;
        for e in 0..self.edges.len() {
            if !dead_e[e] {
                emap[e] = c;
                c += 1;
            }
        }
        let keep_v = |v: &usize| !dead_v[*v];
        let kinds = (0..self.kinds.len()).filter(keep_v).map(|v| self.kinds[v]).collect();
        let names = (0..self.kinds.len()).filter(keep_v).map(|v| std::mem::take(&mut self.names[v])).collect();
        let edges = (0..self.edges.len())
            .filter(|&e| !dead_e[e])
            .map(|e| [vmap[self.edges[e][0]], vmap[self.edges[e][1]]])
            .collect();
        let rotation = (0..self.kinds.len())
            .filter(keep_v)
            .map(|v| self.rotation[v].iter().map(|&e| emap[e]).collect())
            .collect();
        PlabicGraph { n: self.n, kinds, names, edges, rotation }
    }

    /// Apply a local move; errors if the location does not admit it.
    pub fn apply_move(&self, mv: &Move) -> Result<PlabicGraph> {
        match *mv {
            Move::Square { face } => self.square_move(face),
            Move::Contract { edge } => self.contract(edge),
            Move::Expand { vertex, start, len } => self.expand(vertex, start, len),
            Move::Insert { edge, color } => {
                if edge >= self.edges.len() {
                    return Err(Error::Move(format!("no edge {edge}")));
                }
                let mut g = self.clone();
                g.insert_vertex(edge, color);
                Ok(g)
            }
            Move::Remove { vertex } => self.remove_vertex(vertex),
        }
    }

    fn square_move(&self, face: usize) -> Result<PlabicGraph> {
        let faces = self.faces();
        let f = faces.get(face).ok_or_else(|| Error::Move(format!("no face {face}")))?;
        if !f.is_internal() || f.steps.len() != 4 {
            return Err(Error::Move(format!("face {face} is not an internal square")));
        }
        let vs = f.internal_vertices(self);
        let distinct: BTreeSet<usize> = vs.iter().copied().collect();
        if distinct.len() != 4 || vs.iter().any(|&v| self.degree(v) != 3) {
            return Err(Error::Move(format!("face {face} is not bounded by four trivalent vertices")));
        }
        let cols: Vec<Color> = vs.iter().map(|&v| self.color(v).unwrap()).collect();
        if (0..4).any(|t| cols[t] == cols[(t + 1) % 4]) {
            return Err(Error::Move(format!("face {face} colours do not alternate")));
        }
        let mut g = self.clone();
        for &v in &vs {
            g.kinds[v] = VertexKind::Internal(cols[vs.iter().position(|&x| x == v).unwrap()].opposite());
        }
        Ok(g)
    }

    fn contract(&self, edge: usize) -> Result<PlabicGraph> {
        let &[u, v] = self.edges.get(edge).ok_or_else(|| Error::Move(format!("no edge {edge}")))?;
        let (cu, cv) = (self.color(u), self.color(v));
        if cu.is_none() || cu != cv {
            return Err(Error::Move(format!("edge {edge} does not join internal vertices of one colour")));
        }
        let parallel = self.rotation[u].iter().filter(|&&e| self.other_end(e, u) == v).count();
        if parallel != 1 {
            return Err(Error::Move(format!("edge {edge} has a parallel edge")));
        }
        let after = |x: usize| -> Vec<usize> {
            let r = &self.rotation[x];
            let p = self.position(x, edge);
            (1..r.len()).map(|t| r[(p + t) % r.len()]).collect()
        };
        let mut merged = after(u);
        merged.extend(after(v));
        let mut g = self.clone();
        for &e in &merged {
            for end in g.edges[e].iter_mut() {
                if *end == v {
                    *end = u;
                }
            }
        }
        g.rotation[u] = merged;
        g.rotation[v].clear();
        let mut dead_v = vec![false; g.kinds.len()];
        dead_v[v] = true;
        let mut dead_e = vec![false; g.edges.len()];
        dead_e[edge] = true;
        Ok(g.compact(&dead_v, &dead_e))
    }

    fn expand(&self, vertex: usize, start: usize, len: usize) -> Result<PlabicGraph> {
        let color = self.color(vertex).ok_or_else(|| Error::Move(format!("{vertex} is not internal")))?;
        let d = self.degree(vertex);
        if start >= d || len == 0 || len >= d {
            return Err(Error::Move(format!("cannot split a degree-{d} vertex at ({start},{len})")));
        }
        let r = self.rotation[vertex].clone();
        let block: Vec<usize> = (0..len).map(|t| r[(start + t) % d]).collect();
        let rest: Vec<usize> = (len..d).map(|t| r[(start + t) % d]).collect();
        let mut g = self.clone();
        let u = g.kinds.len();
        let e_new = g.edges.len();
        g.kinds.push(VertexKind::Internal(color));
        g.names.push(String::new());
        g.edges.push([vertex, u]);
        for &e in &block {
            for end in g.edges[e].iter_mut() {
                if *end == vertex {
                    *end = u;
                }
            }
        }
        let mut rv = vec![e_new];
        rv.extend(rest);
        let mut ru = vec![e_new];
        ru.extend(block);
        g.rotation[vertex] = rv;
        g.rotation.push(ru);
        Ok(g)
    }

    fn remove_vertex(&self, w: usize) -> Result<PlabicGraph> {
        if self.is_boundary(w) || w >= self.kinds.len() || self.degree(w) != 2 {
            return Err(Error::Move(format!("vertex {w} is not an internal degree-two vertex")));
        }
        let (e1, e2) = (self.rotation[w][0], self.rotation[w][1]);
        let (u, v) = (self.other_end(e1, w), self.other_end(e2, w));
        if u == v {
            return Err(Error::Move(format!("removing {w} would create a loop")));
        }
        if self.is_boundary(u) && self.is_boundary(v) {
            return Err(Error::Move(format!("removing {w} would join two boundary vertices")));
        }
        let mut g = self.clone();
        g.edges[e1] = [u, v];
        let pv = g.position(v, e2);
        g.rotation[v][pv] = e1;
        g.rotation[w].clear();
        let mut dead_v = vec![false; g.kinds.len()];
        dead_v[w] = true;
        let mut dead_e = vec![false; g.edges.len()];
        dead_e[e2] = true;
        Ok(g.compact(&dead_v, &dead_e))
    }

    /// Every move applicable somewhere in the graph (expansions limited to
    /// splitting off two consecutive edges of a vertex of degree at least four).
    pub fn applicable_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        for face in 0..self.faces().len() {
            if self.square_move(face).is_ok() {
                out.push(Move::Square { face });
            }
        }
        for edge in 0..self.edges.len() {
            if self.contract(edge).is_ok() {
                out.push(Move::Contract { edge });
            }
            for color in [Color::Black, Color::White] {
                out.push(Move::Insert { edge, color });
            }
        }
        for v in self.internal_vertices() {
            if self.degree(v) == 2 && self.remove_vertex(v).is_ok() {
                out.push(Move::Remove { vertex: v });
            }
            if self.degree(v) >= 4 {
                for start in 0..self.degree(v) {
                    out.push(Move::Expand { vertex: v, start, len: 2 });
                }
            }
        }
        out
    }

    /// Remove degree-two vertices and merge same-coloured neighbours until
    /// neither applies.
    pub fn reduce_normal_form(&self) -> PlabicGraph {
        let mut g = self.clone();
        'outer: loop {
            for v in g.n..g.kinds.len() {
                if g.degree(v) == 2 {
                    if let Ok(h) = g.remove_vertex(v) {
                        g = h;
                        continue 'outer;
                    }
                }
            }
            for e in 0..g.edges.len() {
                if let Ok(h) = g.contract(e) {
                    g = h;
                    continue 'outer;
                }
            }
            return g;
        }
    }

    /// Encoding that is equal for two graphs iff they are isomorphic by a map
    /// fixing boundary labels and preserving colours and rotations.
    pub fn canonical_code(&self) -> Vec<(u8, Vec<usize>)> {
        let nv = self.vertex_count();
        let mut id = vec![usize::MAX; nv];
        let mut entry = vec![usize::MAX; nv];
        let mut queue = VecDeque::new();
        for v in 0..self.n {
            id[v] = v;
            entry[v] = self.rotation[v][0];
            queue.push_back(v);
        }
        let mut next = self.n;
        let mut order = Vec::new();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let r = &self.rotation[v];
            let p = self.position(v, entry[v]);
            for t in 0..r.len() {
                let e = r[(p + t) % r.len()];
                let w = self.other_end(e, v);
                if id[w] == usize::MAX {
                    id[w] = next;
                    entry[w] = e;
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
        order
            .into_iter()
            .map(|v| {
                let tag = match self.kinds[v] {
                    VertexKind::Boundary(_) => 0,
                    VertexKind::Internal(Color::Black) => 1,
                    VertexKind::Internal(Color::White) => 2,
                };
                let r = &self.rotation[v];
                let p = self.position(v, entry[v]);
                (tag, (0..r.len()).map(|t| id[self.other_end(r[(p + t) % r.len()], v)]).collect())
            })
            .collect()
    }

    /// Isomorphic after degree-two removal and same-colour contraction.
    pub fn equivalent_normal_form(&self, other: &PlabicGraph) -> bool {
        self.n == other.n && self.reduce_normal_form().canonical_code() == other.reduce_normal_form().canonical_code()
    }

    /// T-dual graph: a black vertex in every face, a white vertex on every
    /// black vertex, joined across wedges; boundary `î` sits between `i − 1` and `i`.
    pub fn t_dual_graph(&self) -> Result<PlabicGraph> {
        for v in self.internal_vertices() {
            if self.color(v) == Some(Color::Black) && self.degree(v) != 3 {
                return Err(Error::Precondition(format!(
                    "black vertex {v} has degree {}; T-duality needs trivalent black vertices",
                    self.degree(v)
                )));
            }
        }
        let n = self.n;
        let faces = self.faces();
        let blacks: Vec<usize> =
            self.internal_vertices().filter(|&v| self.color(v) == Some(Color::Black)).collect();
        let mut kinds: Vec<VertexKind> = (1..=n).map(VertexKind::Boundary).collect();
        let mut names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let face_vertex: Vec<usize> = (0..faces.len()).map(|f| n + f).collect();
        for f in 0..faces.len() {
            kinds.push(VertexKind::Internal(Color::Black));
            names.push(format!("F{}", f + 1));
        }
        let mut white_of = HashMap::new();
        for (t, &b) in blacks.iter().enumerate() {
            white_of.insert(b, kinds.len());
            kinds.push(VertexKind::Internal(Color::White));
            names.push(format!("W{}", t + 1));
        }
        let mut edges: Vec<[usize; 2]> = Vec::new();
        let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); kinds.len()];
        // wedge_edge[(b, t)] = edge from ŵ(b) for wedge t of b
        let mut wedge_edge: HashMap<(usize, usize), usize> = HashMap::new();
        for (f, face) in faces.iter().enumerate() {
            let fv = face_vertex[f];
            for step in &face.steps {
                match *step {
                    FaceStep::Dart { edge, to, .. } if self.color(to) == Some(Color::Black) => {
                        let p = self.position(to, edge);
                        let t = (p + 2) % 3;
                        let e = edges.len();
                        edges.push([white_of[&to], fv]);
                        wedge_edge.insert((to, t), e);
                        rotation[fv].push(e);
                    }
                    FaceStep::Arc(j) => {
                        let i = j % n + 1;
                        let e = edges.len();
                        edges.push([i - 1, fv]);
                        rotation[i - 1].push(e);
                        rotation[fv].push(e);
                    }
                    _ => {}
                }
            }
            if rotation[fv].is_empty() {
                return Err(Error::Precondition(format!(
                    "face {f} touches neither a black vertex nor the boundary"
                )));
            }
        }
        for &b in &blacks {
            rotation[white_of[&b]] = (0..3).map(|t| wedge_edge[&(b, t)]).collect();
        }
        PlabicGraph::new(n, kinds, names, edges, rotation)
    }
}

impl PlabicGraph {
    /// A reduced graph with trip permutation `pi`, built by adding one
    /// bridge at a time to a graph of lollipops.
    pub fn from_permutation(pi: &DecoratedPermutation) -> Result<PlabicGraph> {
        let n = pi.n();
        let mut f: Vec<i64> = pi.to_affine().window().to_vec();
        let fixed = |f: &[i64], i: usize| f[i - 1] == i as i64 || f[i - 1] == (i + n) as i64;
        let mut bridges = Vec::new();
        while (1..=n).any(|i| !fixed(&f, i)) {
            let dim = AffinePermutation::new(f.clone())?.cell_dimension();
            let mut step = None;
            for i in (1..=n).filter(|&i| !fixed(&f, i)) {
                let j = (1..n).map(|s| cyc(i + s, n)).find(|&j| !fixed(&f, j)).expect("two moving points");
                let shift = if j > i { 0 } else { n as i64 };
                let (fi, fj) = (f[i - 1], f[j - 1] + shift);
                if fi >= fj {
                    continue;
                }
                let mut g = f.clone();
                g[i - 1] = fj;
                g[j - 1] = fi - shift;
                if let Ok(a) = AffinePermutation::new(g.clone()) {
                    if a.is_bounded() && a.cell_dimension() + 1 == dim {
                        step = Some((i, j, g));
                        break;
                    }
                }
            }
            let (i, j, g) = step.ok_or_else(|| Error::Precondition(format!("no bridge reduces {pi}")))?;
            bridges.push((i, j));
            f = g;
        }
        let mut kinds: Vec<VertexKind> = (1..=n).map(VertexKind::Boundary).collect();
        let mut names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        let mut rotation: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        for i in 1..=n {
            let c = if f[i - 1] == i as i64 { Color::Black } else { Color::White };
            kinds.push(VertexKind::Internal(c));
            names.push(format!("L{i}"));
            edges.push([i - 1, n + i - 1]);
            rotation.push(vec![i - 1]);
        }
        let mut g = PlabicGraph { n, kinds, names, edges, rotation };
        for &(i, j) in bridges.iter().rev() {
            let (x, inward_x) = g.insert_vertex(i - 1, Color::White);
            let (y, inward_y) = g.insert_vertex(j - 1, Color::Black);
            let e = g.edges.len();
            g.edges.push([x, y]);
            g.rotation[x] = vec![i - 1, e, inward_x];
            g.rotation[y] = vec![j - 1, inward_y, e];
        }
        let g = g.prune_leaves();
        let got = g.checked_trip_permutation()?;
        if &got != pi {
            return Err(Error::MalformedGraph(format!("bridge graph has trip {got}, expected {pi}")));
        }
        Ok(g)
    }

    /// Drop internal leaves hanging from internal vertices, then degree-two vertices.
    fn prune_leaves(&self) -> PlabicGraph {
        let mut g = self.clone();
        loop {
            let leaf = (g.n..g.kinds.len())
                .find(|&v| g.degree(v) == 1 && !g.is_boundary(g.other_end(g.rotation[v][0], v)));
            let Some(v) = leaf else { break };
            let e = g.rotation[v][0];
            let u = g.other_end(e, v);
            let pu = g.position(u, e);
            g.rotation[u].remove(pu);
            g.rotation[v].clear();
            let mut dead_v = vec![false; g.kinds.len()];
            dead_v[v] = true;
            let mut dead_e = vec![false; g.edges.len()];
            dead_e[e] = true;
            g = g.compact(&dead_v, &dead_e);
        }
        'outer: loop {
            for v in g.n..g.kinds.len() {
                if g.degree(v) == 2 {
                    if let Ok(h) = g.remove_vertex(v) {
                        g = h;
                        continue 'outer;
                    }
                }
            }
            return g;
        }
    }

    /// Swap the colours of all internal vertices; trips are reversed.
    pub fn color_swap(&self) -> PlabicGraph {
        let mut g = self.clone();
        for k in g.kinds.iter_mut() {
            if let VertexKind::Internal(c) = k {
                *c = c.opposite();
            }
        }
        g
    }

    /// Split black vertices of degree above three until all are trivalent.
    pub fn black_trivalent(&self) -> PlabicGraph {
        let mut g = self.clone();
        while let Some(v) = (g.n..g.kinds.len()).find(|&v| g.color(v) == Some(Color::Black) && g.degree(v) > 3) {
            g = g.expand(v, 0, 2).expect("splitting a vertex of degree four or more");
        }
        g
    }
}

fn match_rec(
    mask: u128,
    adj: &[Vec<usize>],
    internal: &[usize],
    n: usize,
    memo: &mut HashMap<u128, BTreeSet<Subset>>,
) -> BTreeSet<Subset> {
    if let Some(r) = memo.get(&mask) {
        return r.clone();
    }
    let free = |v: usize| mask >> v & 1 == 0;
    let mut best: Option<(usize, usize)> = None;
    for &v in internal {
        if !free(v) {
            continue;
        }
        let options = adj[v].iter().filter(|&&w| free(w)).count();
        if best.map_or(true, |(_, c)| options < c) {
            best = Some((v, options));
        }
        if options == 0 {
            break;
        }
    }
    let result = match best {
        None => BTreeSet::from([0]),
        Some((_, 0)) => BTreeSet::new(),
        Some((v, _)) => {
            let mut out = BTreeSet::new();
            let mut tried = BTreeSet::new();
            for &w in &adj[v] {
                if !free(w) || !tried.insert(w) {
                    continue;
                }
                let sub = match_rec(mask | 1 << v | 1 << w, adj, internal, n, memo);
                let bit: Subset = if w < n { 1 << w } else { 0 };
                out.extend(sub.into_iter().map(|s| s | bit));
            }
            out
        }
    };
    memo.insert(mask, result.clone());
    result
}

/// Rank of a subset in the matroid with the given bases.
pub fn matroid_rank(bases: &BTreeSet<Subset>, a: Subset) -> usize {
    bases.iter().map(|&b| subset::size(b & a)).max().unwrap_or(0)
}
