//! Cayley graphs `Cay(Z_n, S)`.
//!
//! For symmetric complete sum-free `S` the graph is `|S|`-regular,
//! triangle-free and of diameter 2. Nothing below assumes that: triangles are
//! searched edge by edge and the diameter comes from a BFS out of every vertex.

use std::fmt::Write as _;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::zn::CyclicSet;

/// Undirected graph on Z_n with `u ~ v` iff `u - v ∈ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    generators: CyclicSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphProperties {
    pub vertices: usize,
    pub edges: usize,
    pub degree: usize,
    pub regular: bool,
    pub triangle_free: bool,
    /// `None` when the graph is disconnected.
    pub diameter: Option<usize>,
}

/// Eccentricity maximum over a random sample of BFS sources. A lower bound
/// on the true diameter, exact only if the sample happens to hit a
/// worst-case source (always, for vertex-transitive graphs like these).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampledDiameter {
    pub sampled: bool,
    pub sources: Vec<usize>,
    pub seed: u64,
    pub diameter_lower_bound: Option<usize>,
}

impl CayleyGraph {
    pub fn new(generators: CyclicSet) -> Result<Self> {
        if generators.contains(0) {
            return Err(Error::ContainsZero);
        }
        if !generators.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(CayleyGraph { generators })
    }

    pub fn order(&self) -> usize {
        self.generators.modulus()
    }

    pub fn generators(&self) -> &CyclicSet {
        &self.generators
    }

    pub fn neighbours(&self, u: usize) -> CyclicSet {
        self.generators.translate(u % self.order())
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            self.neighbours(u)
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
                .collect::<Vec<_>>()
        })
    }

    pub fn is_triangle_free(&self) -> bool {
        (0..self.order()).into_par_iter().all(|u| {
            let row = self.neighbours(u);
            let free = row
                .iter()
                .filter(|&v| v > u)
                .all(|v| row.is_disjoint(&self.neighbours(v)).expect("same modulus"));
            free
        })
    }

    /// Largest BFS depth from `source`, or `None` if some vertex is unreachable.
    pub fn eccentricity(&self, source: usize) -> Option<usize> {
        let n = self.order();
        let mut reached = CyclicSet::empty(n);
        reached.insert(source);
        let mut frontier = reached.clone();
        let mut depth = 0;
        loop {
            let next = frontier
                .sumset(&self.generators)
                .and_then(|f| f.difference(&reached))
                .expect("same modulus");
            if next.is_empty() {
                break;
            }
            reached = reached.union(&next).expect("same modulus");
            frontier = next;
            depth += 1;
        }
        reached.is_full().then_some(depth)
    }

    /// Exact diameter, one BFS per vertex.
    pub fn diameter(&self) -> Option<usize> {
        let eccs: Vec<Option<usize>> = (0..self.order())
            .into_par_iter()
            .map(|u| self.eccentricity(u))
            .collect();
        eccs.into_iter().try_fold(0, |acc, e| e.map(|e| acc.max(e)))
    }

    pub fn sampled_diameter(&self, samples: usize, seed: u64) -> SampledDiameter {
        let n = self.order() as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sources: Vec<usize> = (0..samples)
            .map(|_| (rng.next_u64() % n) as usize)
            .collect();
        let eccs: Vec<Option<usize>> = sources.par_iter().map(|&u| self.eccentricity(u)).collect();
        SampledDiameter {
            sampled: true,
            seed,
            diameter_lower_bound: eccs.into_iter().try_fold(0, |acc, e| e.map(|e| acc.max(e))),
            sources,
        }
    }

    fn degrees(&self) -> (usize, bool) {
        let degree = self.neighbours(0).len();
        let regular = (0..self.order())
            .into_par_iter()
            .all(|u| self.neighbours(u).len() == degree);
        (degree, regular)
    }

    /// Degree, regularity, triangle-freeness and exact diameter.
    pub fn properties(&self) -> GraphProperties {
        let (degree, regular) = self.degrees();
        GraphProperties {
            vertices: self.order(),
            edges: self.edges().count(),
            degree,
            regular,
            triangle_free: self.is_triangle_free(),
            diameter: self.diameter(),
        }
    }

    /// Same as [`properties`](Self::properties) but without the all-pairs
    /// BFS; `diameter` is left `None` and the sample is reported separately.
    pub fn properties_sampled(
        &self,
        samples: usize,
        seed: u64,
    ) -> (GraphProperties, SampledDiameter) {
        let (degree, regular) = self.degrees();
        let props = GraphProperties {
            vertices: self.order(),
            edges: self.edges().count(),
            degree,
            regular,
            triangle_free: self.is_triangle_free(),
            diameter: None,
        };
        (props, self.sampled_diameter(samples, seed))
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("graph cayley_z{} {{\n", self.order());
        for u in 0..self.order() {
            writeln!(out, "  {u};").unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// One `u v` line per edge, `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}
