//! Plabic tilings with punctures: the planar duals of connected plabic
//! graphs, drawn inside a convex `n`-gon.
//!
//! The polygon's corners sit on the convex curve `(i, -i^2)`, which lists
//! them clockwise; punctures carry explicit rational coordinates. Only the
//! statistics needed for interval inequalities are provided.

use num_traits::Zero;

use super::graph::{Color, PlabicGraph};
use super::subdivision::dual_graph;
use crate::error::{Error, Result};
use crate::exact::{cyc, rat, CyclicInterval, Rational};

/// A corner of a tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    /// Corner `i` of the `n`-gon.
    Boundary(usize),
    /// Interior point, indexed from 0.
    Puncture(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlabicTiling {
    n: usize,
    punctures: Vec<(Rational, Rational)>,
    polygons: Vec<(Color, Vec<Node>)>,
}

fn cross(o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

impl PlabicTiling {
    /// Tiles are clockwise node lists; bigons are allowed.
    pub fn new(n: usize, punctures: Vec<(Rational, Rational)>, polygons: Vec<(Color, Vec<Node>)>) -> Result<Self> {
        let t = Self { n, punctures, polygons };
        for (_, p) in &t.polygons {
            if p.len() < 2 {
                return Err(Error::Argument(format!("tile {p:?} has fewer than two corners")));
            }
            for node in p {
                let ok = match *node {
                    Node::Boundary(i) => (1..=n).contains(&i),
                    Node::Puncture(q) => q < t.punctures.len(),
                };
                if !ok {
                    return Err(Error::Argument(format!("unknown node {node:?}")));
                }
            }
            if p.len() >= 3 {
                let m = p.len();
                let clockwise = (0..m).all(|s| {
                    let (a, b, c) = (t.point(p[s]), t.point(p[(s + 1) % m]), t.point(p[(s + 2) % m]));
                    cross(&a, &b, &c) < Rational::zero()
                });
                if !clockwise {
                    return Err(Error::Argument(format!("tile {p:?} is not a clockwise convex polygon")));
                }
            }
        }
        t.dual_graph()?;
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn puncture_count(&self) -> usize {
        self.punctures.len()
    }

    pub fn polygons(&self) -> &[(Color, Vec<Node>)] {
        &self.polygons
    }

    pub fn point(&self, node: Node) -> (Rational, Rational) {
        match node {
            Node::Boundary(i) => (rat(i as i64), rat(-((i * i) as i64))),
            Node::Puncture(q) => self.punctures[q].clone(),
        }
    }

    fn node_id(&self, node: Node) -> usize {
        match node {
            Node::Boundary(i) => i,
            Node::Puncture(q) => self.n + 1 + q,
        }
    }

    /// The dual plabic graph `G(T)`.
    pub fn dual_graph(&self) -> Result<PlabicGraph> {
        let polys: Vec<(Color, Vec<usize>)> =
            self.polygons.iter().map(|(c, p)| (*c, p.iter().map(|&v| self.node_id(v)).collect())).collect();
        dual_graph(self.n, &polys, &[])
    }

    /// `h` and `j` are corners of a common tile.
    pub fn compatible(&self, h: usize, j: usize) -> bool {
        h != j && self.polygons.iter().any(|(_, p)| p.contains(&Node::Boundary(h)) && p.contains(&Node::Boundary(j)))
    }

    /// Strictly on the side of `h → j` that contains `h + 1, …, j − 1`.
    fn left_of(&self, h: usize, j: usize, node: Node) -> bool {
        let n = self.n;
        if cyc(h + 1, n) == j {
            return false;
        }
        match node {
            Node::Boundary(v) => v != h && v != j && CyclicInterval::new(h, j, n).contains(v),
            Node::Puncture(_) => {
                let (a, b) = (self.point(Node::Boundary(h)), self.point(Node::Boundary(j)));
                let reference = cross(&a, &b, &self.point(Node::Boundary(cyc(h + 1, n))));
                let here = cross(&a, &b, &self.point(node));
                !here.is_zero() && (here < Rational::zero()) == (reference < Rational::zero())
            }
        }
    }

    /// `(area, punc)` of a compatible arc.
    pub fn area_punc(&self, h: usize, j: usize) -> Option<(usize, usize)> {
        if !self.compatible(h, j) {
            return None;
        }
        let (bh, bj) = (Node::Boundary(h), Node::Boundary(j));
        let mut area = 0;
        for (c, p) in &self.polygons {
            if *c != Color::Black || p.len() < 3 {
                continue;
            }
            if let (Some(a), Some(b)) = (p.iter().position(|&v| v == bh), p.iter().position(|&v| v == bj)) {
                // the tile's corners clockwise from h to j lie on the left
                area += (b + p.len() - a) % p.len() - 1;
            } else if let Some(&v) = p.iter().find(|&&v| v != bh && v != bj) {
                if self.left_of(h, j, v) {
                    area += p.len() - 2;
                }
            }
        }
        let punc = (0..self.punctures.len()).filter(|&q| self.left_of(h, j, Node::Puncture(q))).count();
        Some((area, punc))
    }

    /// Total black triangles minus punctures, plus one: the rank of `G(T)`.
    pub fn rank(&self) -> usize {
        let tri: usize = self.polygons.iter().filter(|(c, _)| *c == Color::Black).map(|(_, p)| p.len().saturating_sub(2)).sum();
        tri + 1 - self.punctures.len()
    }

    /// A seven-gon tiling with one puncture, used as a worked example.
    pub fn example() -> Self {
        use Color::{Black, White};
        use Node::{Boundary as B, Puncture as P};
        let p = (Rational::new(13.into(), 4.into()), Rational::new((-51).into(), 4.into()));
        Self::new(
            7,
            vec![p],
            vec![
                (White, vec![B(1), B(2), B(3)]),
                (Black, vec![B(1), B(3), P(0)]),
                (White, vec![B(3), B(4), P(0)]),
                (Black, vec![B(4), B(5), P(0)]),
                (White, vec![B(1), P(0), B(5), B(7)]),
                (Black, vec![B(5), B(6), B(7)]),
            ],
        )
        .expect("example tiling is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_statistics() {
        let t = PlabicTiling::example();
        assert_eq!(t.area_punc(1, 3), Some((0, 0)));
        assert_eq!(t.area_punc(1, 5), Some((2, 1)));
        assert_eq!(t.area_punc(5, 7), Some((1, 0)));
        assert_eq!(t.area_punc(5, 1), Some((1, 0)));
        assert_eq!(t.area_punc(2, 5), None);
        assert_eq!(t.rank(), 3);
    }

    #[test]
    fn example_dual_graph() {
        let t = PlabicTiling::example();
        let g = t.dual_graph().unwrap();
        let pi = g.checked_trip_permutation().unwrap();
        assert_eq!(pi.k(), t.rank());
        assert_eq!(g.matching_rank().unwrap(), t.rank());
    }

    #[test]
    fn counter_clockwise_rejected() {
        let r = PlabicTiling::new(3, vec![], vec![(Color::White, vec![Node::Boundary(3), Node::Boundary(2), Node::Boundary(1)])]);
        assert!(r.is_err());
    }
}
