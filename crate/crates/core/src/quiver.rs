//! Ice quivers, skew-symmetrizable exchange matrices and their directed cycles.
//!
//! Vertices are labelled `1..=n` everywhere in the public API.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polynomial::{LaurentMonomial, LaurentPolynomial};
use crate::scalar::Ring;

/// Vertex sets are stored as `u64` bitmasks internally.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("loop arrow at vertex {0}")]
    LoopArrow(usize),
    #[error("directed 2-cycle between vertices {0} and {1}")]
    TwoCycle(usize, usize),
    #[error("arrow {0} -> {1} has non-positive multiplicity")]
    NonPositiveMultiplicity(usize, usize),
    #[error("frozen vertex {0} is outside 1..=n")]
    FrozenOutOfRange(usize),
    #[error("vertex {0} is outside 1..=n")]
    IndexOutOfRange(usize),
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("quiver has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("exchange matrix shape is invalid: {0}")]
    BadShape(String),
    #[error("skew-symmetrizer entry {0} is not positive")]
    NonPositiveSymmetrizer(usize),
    #[error("exchange matrix is not skew-symmetrized by D at ({0}, {1})")]
    NotSkewSymmetrizable(usize, usize),
    #[error("{0:?} is not a directed cycle of the quiver")]
    NotACycle(Vec<usize>),
    #[error("cycle {0:?} passes through frozen vertex {1}")]
    FrozenVertexInCycle(Vec<usize>, usize),
}

/// A quiver without loops or directed 2-cycles, with some vertices frozen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson", into = "QuiverJson")]
pub struct IceQuiver {
    n: usize,
    arrows: BTreeMap<(usize, usize), u32>,
    frozen: BTreeSet<usize>,
}

impl IceQuiver {
    /// Builds and validates a quiver. Repeated `(src, dst)` entries add up.
    pub fn new(
        n: usize,
        arrows: impl IntoIterator<Item = (usize, usize, i64)>,
        frozen: impl IntoIterator<Item = usize>,
    ) -> Result<Self, QuiverError> {
        if n > MAX_VERTICES {
            return Err(QuiverError::TooManyVertices(n));
        }
        let mut map: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (i, j, mult) in arrows {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(QuiverError::IndexOutOfRange(v));
                }
            }
            if i == j {
                return Err(QuiverError::LoopArrow(i));
            }
            if mult <= 0 {
                return Err(QuiverError::NonPositiveMultiplicity(i, j));
            }
            *map.entry((i, j)).or_insert(0) += mult;
        }
        for &(i, j) in map.keys() {
            if i < j && map.contains_key(&(j, i)) {
                return Err(QuiverError::TwoCycle(i, j));
            }
        }
        let mut fz = BTreeSet::new();
        for v in frozen {
            if v == 0 || v > n {
                return Err(QuiverError::FrozenOutOfRange(v));
            }
            fz.insert(v);
        }
        let arrows = map
            .into_iter()
            .map(|(k, m)| {
                u32::try_from(m)
                    .map(|m| (k, m))
                    .map_err(|_| QuiverError::NonPositiveMultiplicity(k.0, k.1))
            })
            .collect::<Result<_, _>>()?;
        Ok(IceQuiver { n, arrows, frozen: fz })
    }

    /// Re-checks the structural invariants.
    pub fn validate(&self) -> Result<(), QuiverError> {
        IceQuiver::new(
            self.n,
            self.arrows().map(|(i, j, m)| (i, j, m as i64)),
            self.frozen.iter().copied(),
        )
        .map(|_| ())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arrows as `(source, target, multiplicity)`, sorted.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.arrows.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.arrows.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn frozen(&self) -> &BTreeSet<usize> {
        &self.frozen
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen.contains(&i)
    }

    pub fn unfrozen(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(|i| !self.frozen.contains(i))
    }

    fn check_vertex(&self, i: usize) -> Result<(), QuiverError> {
        if i == 0 || i > self.n {
            Err(QuiverError::IndexOutOfRange(i))
        } else {
            Ok(())
        }
    }

    /// Exponent vectors of `p_i^+` (targets of arrows out of `i`) and `p_i^-`
    /// (sources of arrows into `i`), for any vertex.
    pub(crate) fn exchange_exponents(&self, i: usize) -> (Vec<u32>, Vec<u32>) {
        let mut plus = vec![0; self.n];
        let mut minus = vec![0; self.n];
        for (&(a, b), &m) in &self.arrows {
            if a == i {
                plus[b - 1] += m;
            }
            if b == i {
                minus[a - 1] += m;
            }
        }
        (plus, minus)
    }

    /// `(p_i^+, p_i^-)` for an unfrozen vertex.
    pub fn exchange_monomials<C: Ring>(
        &self,
        i: usize,
    ) -> Result<(LaurentPolynomial<C>, LaurentPolynomial<C>), QuiverError> {
        self.check_vertex(i)?;
        if self.is_frozen(i) {
            return Err(QuiverError::FrozenVertex(i));
        }
        let (plus, minus) = self.exchange_exponents(i);
        Ok((monomial(&plus), monomial(&minus)))
    }

    /// Same quiver with the extra vertices frozen as well.
    pub fn freeze(&self, extra: impl IntoIterator<Item = usize>) -> Result<IceQuiver, QuiverError> {
        let mut q = self.clone();
        for v in extra {
            self.check_vertex(v)?;
            q.frozen.insert(v);
        }
        Ok(q)
    }

    fn unfrozen_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in self.arrows.keys() {
            if !self.is_frozen(i) && !self.is_frozen(j) {
                adj[i - 1].push(j - 1);
            }
        }
        adj
    }

    /// Every simple directed cycle through unfrozen vertices only.
    pub fn simple_cycles(&self) -> Vec<DirectedCycle> {
        let mut out: Vec<DirectedCycle> = johnson_cycles(&self.unfrozen_adjacency())
            .into_iter()
            .map(|c| DirectedCycle {
                vertices: c.into_iter().map(|v| v + 1).collect(),
            })
            .collect();
        out.sort();
        out
    }

    /// Simple cycles of unfrozen vertices whose vertex set contains no other
    /// cycle's vertex set as a proper subset. Sorted and duplicate-free.
    pub fn vertex_minimal_cycles(&self) -> Vec<DirectedCycle> {
        let all = self.simple_cycles();
        let masks: Vec<u64> = all.iter().map(DirectedCycle::mask).collect();
        all.iter()
            .zip(&masks)
            .filter(|(_, &m)| !masks.iter().any(|&o| o != m && o & m == o))
            .map(|(c, _)| c.clone())
            .collect()
    }

    /// No directed cycle among the unfrozen vertices.
    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm on the unfrozen subgraph
        let adj = self.unfrozen_adjacency();
        let mut indeg = vec![0usize; self.n];
        for targets in &adj {
            for &t in targets {
                indeg[t] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &t in &adj[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
        seen == self.n
    }

    /// Checks that `c` is a directed cycle of unfrozen vertices.
    pub fn check_cycle(&self, c: &DirectedCycle) -> Result<(), QuiverError> {
        for &v in &c.vertices {
            self.check_vertex(v)?;
        }
        if let Some(&v) = c.vertices.iter().find(|&&v| self.is_frozen(v)) {
            return Err(QuiverError::FrozenVertexInCycle(c.vertices.clone(), v));
        }
        let k = c.len();
        if (0..k).any(|i| self.multiplicity(c.vertices[i], c.vertices[(i + 1) % k]) == 0) {
            return Err(QuiverError::NotACycle(c.vertices.clone()));
        }
        Ok(())
    }
}

pub(crate) fn monomial<C: Ring>(exps: &[u32]) -> LaurentPolynomial<C> {
    LaurentPolynomial::term(LaurentMonomial::new(exps.iter().map(|&e| e as i32).collect()), C::one())
}

/// Johnson's elementary-circuit enumeration. Each cycle is reported starting
/// at its smallest vertex.
fn johnson_cycles(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct Search<'a> {
        adj: &'a [Vec<usize>],
        start: usize,
        blocked: Vec<bool>,
        blocked_by: Vec<BTreeSet<usize>>,
        stack: Vec<usize>,
        out: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn unblock(&mut self, u: usize) {
            self.blocked[u] = false;
            for w in std::mem::take(&mut self.blocked_by[u]) {
                if self.blocked[w] {
                    self.unblock(w);
                }
            }
        }

        fn circuit(&mut self, v: usize) -> bool {
            let mut found = false;
            self.stack.push(v);
            self.blocked[v] = true;
            for idx in 0..self.adj[v].len() {
                let w = self.adj[v][idx];
                if w < self.start {
                    continue;
                }
                if w == self.start {
                    self.out.push(self.stack.clone());
                    found = true;
                } else if !self.blocked[w] && self.circuit(w) {
                    found = true;
                }
            }
            if found {
                self.unblock(v);
            } else {
                for idx in 0..self.adj[v].len() {
                    let w = self.adj[v][idx];
                    if w >= self.start {
                        self.blocked_by[w].insert(v);
                    }
                }
            }
            self.stack.pop();
            found
        }
    }

    let n = adj.len();
    let mut search = Search {
        adj,
        start: 0,
        blocked: vec![false; n],
        blocked_by: vec![BTreeSet::new(); n],
        stack: Vec::new(),
        out: Vec::new(),
    };
    for s in 0..n {
        search.start = s;
        search.blocked.iter_mut().for_each(|b| *b = false);
        search.blocked_by.iter_mut().for_each(BTreeSet::clear);
        search.circuit(s);
    }
    search.out
}

/// A simple directed cycle, rotated to start at its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DirectedCycle {
    vertices: Vec<usize>,
}

impl DirectedCycle {
    /// Canonicalizes the rotation; rejects repeated vertices and cycles
    /// shorter than three.
    pub fn new(vertices: Vec<usize>) -> Result<Self, QuiverError> {
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if vertices.len() < 3 || distinct.len() != vertices.len() {
            return Err(QuiverError::NotACycle(vertices));
        }
        let pos = vertices
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| v)
            .map(|(p, _)| p)
            .unwrap();
        let mut vertices = vertices;
        vertices.rotate_left(pos);
        Ok(DirectedCycle { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex set as a bitmask (bit `v-1` for vertex `v`).
    pub fn mask(&self) -> u64 {
        self.vertices.iter().fold(0, |m, &v| m | 1 << (v - 1))
    }
}

impl TryFrom<Vec<usize>> for DirectedCycle {
    type Error = QuiverError;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        DirectedCycle::new(v)
    }
}

impl From<DirectedCycle> for Vec<usize> {
    fn from(c: DirectedCycle) -> Self {
        c.vertices
    }
}

impl fmt::Display for DirectedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An `n x m` integer matrix `B` with a positive diagonal `D` such that the
/// top `m x m` block of `BD` is skew-symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ExchangeMatrix {
    b: Vec<Vec<i64>>,
    d: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn new(b: Vec<Vec<i64>>, d: Vec<i64>) -> Result<Self, QuiverError> {
        let n = b.len();
        let m = d.len();
        if n > MAX_VERTICES {
            return Err(QuiverError::TooManyVertices(n));
        }
        if n < m {
            return Err(QuiverError::BadShape(format!("{n} rows but {m} columns")));
        }
        if let Some((r, row)) = b.iter().enumerate().find(|(_, row)| row.len() != m) {
            return Err(QuiverError::BadShape(format!(
                "row {} has {} entries, expected {m}",
                r + 1,
                row.len()
            )));
        }
        if let Some(i) = d.iter().position(|&x| x < 1) {
            return Err(QuiverError::NonPositiveSymmetrizer(i + 1));
        }
        for i in 0..m {
            for j in i..m {
                if b[i][j] * d[j] != -b[j][i] * d[i] {
                    return Err(QuiverError::NotSkewSymmetrizable(i + 1, j + 1));
                }
            }
        }
        Ok(ExchangeMatrix { b, d })
    }

    /// Number of rows (all vertices).
    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// Number of columns (mutable vertices).
    pub fn m(&self) -> usize {
        self.d.len()
    }

    /// `B_{ij}`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub(crate) fn exchange_exponents(&self, i: usize) -> (Vec<u32>, Vec<u32>) {
        let col = (1..=self.n()).map(|j| self.entry(j, i));
        col.map(|e| (e.max(0) as u32, (-e).max(0) as u32)).unzip()
    }

    /// `p_i^+ = prod x_j^{max(B_ji, 0)}` and `p_i^- = prod x_j^{max(-B_ji, 0)}`.
    pub fn exchange_monomials<C: Ring>(
        &self,
        i: usize,
    ) -> Result<(LaurentPolynomial<C>, LaurentPolynomial<C>), QuiverError> {
        if i == 0 || i > self.m() {
            return Err(QuiverError::IndexOutOfRange(i));
        }
        let (plus, minus) = self.exchange_exponents(i);
        Ok((monomial(&plus), monomial(&minus)))
    }

    /// The sign quiver `Q(B)`: frozen vertices `m+1..=n` and a single arrow
    /// `i -> j` whenever `B_ji > 0` or `B_ij < 0`.
    pub fn quiver(&self) -> IceQuiver {
        let (n, m) = (self.n(), self.m());
        let mut arrows = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let forward = i <= m && self.entry(j, i) > 0;
                let backward = j <= m && self.entry(i, j) < 0;
                if forward || backward {
                    arrows.push((i, j, 1));
                }
            }
        }
        IceQuiver::new(n, arrows, m + 1..=n).expect("skew-symmetrizable sign pattern has no 2-cycles")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverJson {
    n: usize,
    #[serde(default)]
    arrows: Vec<(usize, usize, i64)>,
    #[serde(default)]
    frozen: Vec<usize>,
}

impl TryFrom<QuiverJson> for IceQuiver {
    type Error = QuiverError;

    fn try_from(j: QuiverJson) -> Result<Self, QuiverError> {
        IceQuiver::new(j.n, j.arrows, j.frozen)
    }
}

impl From<IceQuiver> for QuiverJson {
    fn from(q: IceQuiver) -> Self {
        QuiverJson {
            n: q.n,
            arrows: q.arrows().map(|(i, j, m)| (i, j, m as i64)).collect(),
            frozen: q.frozen.into_iter().collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    #[serde(rename = "B")]
    b: Vec<Vec<i64>>,
    #[serde(rename = "D")]
    d: Vec<i64>,
}

impl TryFrom<MatrixJson> for ExchangeMatrix {
    type Error = QuiverError;

    fn try_from(j: MatrixJson) -> Result<Self, QuiverError> {
        ExchangeMatrix::new(j.b, j.d)
    }
}

impl From<ExchangeMatrix> for MatrixJson {
    fn from(e: ExchangeMatrix) -> Self {
        MatrixJson { b: e.b, d: e.d }
    }
}

/// Quiver plus the exponent data of its exchange monomials.
///
/// For a quiver the exponents are arrow multiplicities; for an exchange matrix
/// they are the entries of `B`, while `quiver()` only records signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    quiver: IceQuiver,
    plus: Vec<Vec<u32>>,
    minus: Vec<Vec<u32>>,
    matrix: Option<ExchangeMatrix>,
}

impl Seed {
    pub fn from_quiver(quiver: IceQuiver) -> Self {
        let (plus, minus) = (1..=quiver.n()).map(|i| quiver.exchange_exponents(i)).unzip();
        Seed {
            quiver,
            plus,
            minus,
            matrix: None,
        }
    }

    pub fn from_matrix(matrix: ExchangeMatrix) -> Self {
        let quiver = matrix.quiver();
        let (plus, minus) = (1..=matrix.n())
            .map(|i| {
                if i <= matrix.m() {
                    matrix.exchange_exponents(i)
                } else {
                    (vec![0; matrix.n()], vec![0; matrix.n()])
                }
            })
            .unzip();
        Seed {
            quiver,
            plus,
            minus,
            matrix: Some(matrix),
        }
    }

    pub fn quiver(&self) -> &IceQuiver {
        &self.quiver
    }

    pub fn matrix(&self) -> Option<&ExchangeMatrix> {
        self.matrix.as_ref()
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.quiver.is_frozen(i)
    }

    /// Exponent vectors of `(p_i^+, p_i^-)`.
    pub fn exchange_exponents(&self, i: usize) -> Result<(&[u32], &[u32]), QuiverError> {
        if i == 0 || i > self.n() {
            return Err(QuiverError::IndexOutOfRange(i));
        }
        if self.is_frozen(i) {
            return Err(QuiverError::FrozenVertex(i));
        }
        Ok((&self.plus[i - 1], &self.minus[i - 1]))
    }

    pub fn exchange_monomials<C: Ring>(
        &self,
        i: usize,
    ) -> Result<(LaurentPolynomial<C>, LaurentPolynomial<C>), QuiverError> {
        let (plus, minus) = self.exchange_exponents(i)?;
        Ok((monomial(plus), monomial(minus)))
    }
}

impl From<IceQuiver> for Seed {
    fn from(q: IceQuiver) -> Self {
        Seed::from_quiver(q)
    }
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match &self.matrix {
            Some(m) => m.serialize(s),
            None => self.quiver.serialize(s),
        }
    }
}

/// Matrix JSON is recognised by its `"B"` key, anything else is read as a
/// quiver.
impl<'de> Deserialize<'de> for Seed {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Either {
            Matrix(ExchangeMatrix),
            Quiver(IceQuiver),
        }
        Ok(match Either::deserialize(d)? {
            Either::Matrix(m) => Seed::from(m),
            Either::Quiver(q) => Seed::from(q),
        })
    }
}

impl From<ExchangeMatrix> for Seed {
    fn from(e: ExchangeMatrix) -> Self {
        Seed::from_matrix(e)
    }
}

/// Parameters for [`random_quiver`].
#[derive(Clone, Debug)]
pub struct RandomQuiverConfig {
    pub n: usize,
    pub max_multiplicity: u32,
    /// Probability that an unordered pair of vertices carries arrows.
    pub arrow_probability: f64,
    pub frozen_probability: f64,
}

impl Default for RandomQuiverConfig {
    fn default() -> Self {
        RandomQuiverConfig {
            n: 5,
            max_multiplicity: 2,
            arrow_probability: 0.5,
            frozen_probability: 0.2,
        }
    }
}

/// A random valid ice quiver: each pair gets arrows in one random direction.
pub fn random_quiver<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomQuiverConfig) -> IceQuiver {
    let mut arrows = Vec::new();
    for i in 1..=cfg.n {
        for j in i + 1..=cfg.n {
            if rng.gen_bool(cfg.arrow_probability) {
                let mult = rng.gen_range(1..=cfg.max_multiplicity.max(1)) as i64;
                if rng.gen_bool(0.5) {
                    arrows.push((i, j, mult));
                } else {
                    arrows.push((j, i, mult));
                }
            }
        }
    }
    let frozen: Vec<usize> = (1..=cfg.n).filter(|_| rng.gen_bool(cfg.frozen_probability)).collect();
    IceQuiver::new(cfg.n, arrows, frozen).expect("random quiver is valid by construction")
}
