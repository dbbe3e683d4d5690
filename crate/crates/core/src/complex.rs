//! The simplicial complexes `Δ(S, C, Y)` on vertices `x_i, y_i (i ∈ S)`:
//! faces, facets, links and deletions of y-vertices, shedding certificates,
//! boundaries and the ball/sphere classification.
//!
//! A set `F` is a face when it never contains both `x_i` and `y_i`, and its
//! y-part contains no member of `C` and lies in `Y`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::limits::enumeration_bound;
use crate::polynomial::{Monomial, VarKind};
use crate::quiver::IceQuiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("ground set has {size} elements; enumeration bound is {bound} (set LBCA_MAX_N to raise it)")]
    GroundSetTooLarge { size: usize, bound: usize },
    #[error("index {0} is outside 1..=64")]
    IndexOutOfRange(usize),
    #[error("invalid complex data: {0}")]
    BadSpec(String),
    #[error("{0} is not a vertex of the complex")]
    InvalidVertex(String),
    #[error("y{0} is not a vertex of the complex")]
    NotAYVertex(usize),
    #[error("the boundary of a sphere is empty")]
    SphereHasNoBoundary,
    #[error("y{0} failed the shedding test")]
    ShedFailure(usize),
    #[error("classification evidence contradicts the verdict: {0}")]
    EvidenceMismatch(String),
    #[error("generator {0} is not of the form x_i*y_i or a product of distinct y's")]
    UnsupportedGenerator(String),
}

fn bit(i: usize) -> u64 {
    1u64 << (i - 1)
}

fn indices(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| mask >> b & 1 == 1).map(|b| b + 1)
}

fn mask_of(it: impl IntoIterator<Item = usize>) -> Result<u64, ComplexError> {
    it.into_iter().try_fold(0u64, |m, i| {
        if i == 0 || i > 64 {
            Err(ComplexError::IndexOutOfRange(i))
        } else {
            Ok(m | bit(i))
        }
    })
}

/// Iterates all submasks of `mask`, including 0 and `mask`.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// A vertex `x_i` or `y_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    X(usize),
    Y(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::X(i) => write!(f, "x{i}"),
            Vertex::Y(i) => write!(f, "y{i}"),
        }
    }
}

/// A set of vertices, stored as the masks of chosen x- and y-indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub x: u64,
    pub y: u64,
}

impl Face {
    pub fn new(x: impl IntoIterator<Item = usize>, y: impl IntoIterator<Item = usize>) -> Result<Face, ComplexError> {
        Ok(Face {
            x: mask_of(x)?,
            y: mask_of(y)?,
        })
    }

    pub fn from_vertices(vs: impl IntoIterator<Item = Vertex>) -> Result<Face, ComplexError> {
        let mut f = Face::default();
        for v in vs {
            match v {
                Vertex::X(i) => f.x |= mask_of([i])?,
                Vertex::Y(i) => f.y |= mask_of([i])?,
            }
        }
        Ok(f)
    }

    pub fn empty() -> Face {
        Face::default()
    }

    pub fn len(&self) -> usize {
        (self.x.count_ones() + self.y.count_ones()) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        match v {
            Vertex::X(i) => (1..=64).contains(&i) && self.x & bit(i) != 0,
            Vertex::Y(i) => (1..=64).contains(&i) && self.y & bit(i) != 0,
        }
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.x & !other.x == 0 && self.y & !other.y == 0
    }

    pub fn with(&self, v: Vertex) -> Face {
        let mut f = *self;
        match v {
            Vertex::X(i) => f.x |= bit(i),
            Vertex::Y(i) => f.y |= bit(i),
        }
        f
    }

    pub fn without(&self, v: Vertex) -> Face {
        let mut f = *self;
        match v {
            Vertex::X(i) => f.x &= !bit(i),
            Vertex::Y(i) => f.y &= !bit(i),
        }
        f
    }

    /// Vertices sorted by index, `x_i` before `y_i`.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = indices(self.x)
            .map(Vertex::X)
            .chain(indices(self.y).map(Vertex::Y))
            .collect();
        out.sort_by_key(|v| match *v {
            Vertex::X(i) => (i, 0),
            Vertex::Y(i) => (i, 1),
        });
        out
    }

    pub fn x_indices(&self) -> Vec<usize> {
        indices(self.x).collect()
    }

    pub fn y_indices(&self) -> Vec<usize> {
        indices(self.y).collect()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let names: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        names.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Face {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Face, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        let mut vs = Vec::with_capacity(names.len());
        for name in names {
            let (kind, rest) = name.split_at(name.len().min(1));
            let i: usize = rest
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad vertex {name:?}")))?;
            vs.push(match kind {
                "x" => Vertex::X(i),
                "y" => Vertex::Y(i),
                _ => return Err(serde::de::Error::custom(format!("bad vertex {name:?}"))),
            });
        }
        Face::from_vertices(vs).map_err(serde::de::Error::custom)
    }
}

/// The data `(S, C, Y)` of a complex. `C` is kept as a sorted antichain.
#[derive(Clone, Debug)]
pub struct ComplexSpec {
    ground: u64,
    antichain: Vec<u64>,
    y: u64,
    facets: OnceLock<Vec<Face>>,
}

impl PartialEq for ComplexSpec {
    fn eq(&self, other: &Self) -> bool {
        (self.ground, &self.antichain, self.y) == (other.ground, &other.antichain, other.y)
    }
}

impl Eq for ComplexSpec {}

fn reduce_antichain(mut family: Vec<u64>) -> Vec<u64> {
    family.sort_by_key(|m| (m.count_ones(), *m));
    family.dedup();
    let mut kept: Vec<u64> = Vec::new();
    for m in family {
        if !kept.iter().any(|&k| k & !m == 0) {
            kept.push(m);
        }
    }
    kept.sort_by_key(|&m| indices(m).collect::<Vec<_>>());
    kept
}

impl ComplexSpec {
    pub fn new(
        ground: impl IntoIterator<Item = usize>,
        family: impl IntoIterator<Item = Vec<usize>>,
        y: impl IntoIterator<Item = usize>,
    ) -> Result<ComplexSpec, ComplexError> {
        let family = family.into_iter().map(mask_of).collect::<Result<Vec<_>, _>>()?;
        ComplexSpec::from_masks(mask_of(ground)?, family, mask_of(y)?)
    }

    /// `S = {1..n}`.
    pub fn on_range(
        n: usize,
        family: impl IntoIterator<Item = Vec<usize>>,
        y: impl IntoIterator<Item = usize>,
    ) -> Result<ComplexSpec, ComplexError> {
        if n > 64 {
            return Err(ComplexError::IndexOutOfRange(n));
        }
        ComplexSpec::new(1..=n, family, y)
    }

    pub fn from_masks(ground: u64, family: Vec<u64>, y: u64) -> Result<ComplexSpec, ComplexError> {
        for &c in &family {
            if c == 0 {
                return Err(ComplexError::BadSpec("empty member of C".into()));
            }
            if c & !ground != 0 {
                return Err(ComplexError::BadSpec(format!(
                    "member {:?} of C is not contained in S",
                    indices(c).collect::<Vec<_>>()
                )));
            }
        }
        if y & !ground != 0 {
            return Err(ComplexError::BadSpec("Y is not contained in S".into()));
        }
        Ok(ComplexSpec {
            ground,
            antichain: reduce_antichain(family),
            y,
            facets: OnceLock::new(),
        })
    }

    pub fn ground(&self) -> Vec<usize> {
        indices(self.ground).collect()
    }

    pub fn ground_mask(&self) -> u64 {
        self.ground
    }

    pub fn size(&self) -> usize {
        self.ground.count_ones() as usize
    }

    pub fn family(&self) -> Vec<Vec<usize>> {
        self.antichain.iter().map(|&c| indices(c).collect()).collect()
    }

    pub fn family_masks(&self) -> &[u64] {
        &self.antichain
    }

    pub fn y_set(&self) -> Vec<usize> {
        indices(self.y).collect()
    }

    pub fn y_mask(&self) -> u64 {
        self.y
    }

    /// `C = ∅` and `Y = S`.
    pub fn is_sphere_case(&self) -> bool {
        self.antichain.is_empty() && self.y == self.ground
    }

    /// Mask of the indices `i` for which `y_i` is a vertex.
    pub fn y_vertex_mask(&self) -> u64 {
        let singletons = self
            .antichain
            .iter()
            .filter(|c| c.count_ones() == 1)
            .fold(0, |m, c| m | c);
        self.y & !singletons
    }

    pub fn y_vertices(&self) -> Vec<usize> {
        indices(self.y_vertex_mask()).collect()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.ground().into_iter().map(Vertex::X).collect();
        out.extend(self.y_vertices().into_iter().map(Vertex::Y));
        out.sort_by_key(|v| match *v {
            Vertex::X(i) => (i, 0),
            Vertex::Y(i) => (i, 1),
        });
        out
    }

    fn y_part_allowed(&self, ymask: u64) -> bool {
        ymask & !self.y_vertex_mask() == 0 && !self.antichain.iter().any(|&c| c & !ymask == 0)
    }

    fn contains_face(&self, f: &Face) -> bool {
        f.x & !self.ground == 0 && f.x & f.y == 0 && self.y_part_allowed(f.y)
    }

    pub fn is_face(&self, f: &Face) -> Result<bool, ComplexError> {
        if let Some(i) = indices(f.x & !self.ground).next() {
            return Err(ComplexError::InvalidVertex(Vertex::X(i).to_string()));
        }
        if let Some(i) = indices(f.y & !self.y_vertex_mask()).next() {
            return Err(ComplexError::InvalidVertex(Vertex::Y(i).to_string()));
        }
        Ok(self.contains_face(f))
    }

    fn check_bound(&self) -> Result<(), ComplexError> {
        let bound = enumeration_bound();
        if self.size() > bound {
            return Err(ComplexError::GroundSetTooLarge {
                size: self.size(),
                bound,
            });
        }
        Ok(())
    }

    fn valid_y_parts(&self) -> impl Iterator<Item = u64> + '_ {
        submasks(self.y_vertex_mask()).filter(move |&m| self.y_part_allowed(m))
    }

    /// Full selections `z_i ∈ {x_i, y_i}`, sorted.
    pub fn facets(&self) -> Result<&[Face], ComplexError> {
        self.check_bound()?;
        Ok(self.facets.get_or_init(|| {
            let mut out: Vec<Face> = self.valid_y_parts().map(|y| Face { x: self.ground & !y, y }).collect();
            out.sort();
            out
        }))
    }

    /// Every face, including the empty one. There can be up to `3^|S|`.
    pub fn faces(&self) -> Result<Vec<Face>, ComplexError> {
        self.check_bound()?;
        let mut out = Vec::new();
        for y in self.valid_y_parts() {
            for x in submasks(self.ground & !y) {
                out.push(Face { x, y });
            }
        }
        out.sort();
        Ok(out)
    }

    /// `f_{k-1}` for `k = 1..=|S|`, counted without listing faces.
    pub fn f_vector(&self) -> Result<Vec<u64>, ComplexError> {
        self.check_bound()?;
        let n = self.size() as u64;
        let mut f = vec![0u64; n as usize];
        for y in self.valid_y_parts() {
            let j = y.count_ones() as u64;
            for k in j.max(1)..=n {
                f[k as usize - 1] += binomial(n - j, k - j);
            }
        }
        Ok(f)
    }

    fn require_y_vertex(&self, i: usize) -> Result<(), ComplexError> {
        if (1..=64).contains(&i) && self.y_vertex_mask() & bit(i) != 0 {
            Ok(())
        } else {
            Err(ComplexError::NotAYVertex(i))
        }
    }

    /// `(S∖i, {C_j ∖ i}, Y∖i)`.
    pub fn link_y(&self, i: usize) -> Result<ComplexSpec, ComplexError> {
        self.require_y_vertex(i)?;
        let keep = !bit(i);
        ComplexSpec::from_masks(
            self.ground & keep,
            self.antichain.iter().map(|c| c & keep).collect(),
            self.y & keep,
        )
    }

    /// `(S, C, Y∖i)`.
    pub fn delete_y(&self, i: usize) -> Result<ComplexSpec, ComplexError> {
        self.require_y_vertex(i)?;
        ComplexSpec::from_masks(self.ground, self.antichain.clone(), self.y & !bit(i))
    }

    /// No facet of the deletion of `y_i` is a face of its link.
    pub fn is_shedding(&self, i: usize) -> Result<bool, ComplexError> {
        let deletion = self.delete_y(i)?;
        let v = Vertex::Y(i);
        Ok(!deletion
            .facets()?
            .iter()
            .any(|d| !d.contains(v) && self.contains_face(&d.with(v))))
    }

    /// Number of facets containing the ridge `r`, which misses exactly index `k`.
    fn ridge_degree(&self, r: &Face, k: usize) -> usize {
        [Vertex::X(k), Vertex::Y(k)]
            .iter()
            .filter(|&&v| self.contains_face(&r.with(v)))
            .count()
    }

    fn ridges(&self) -> Result<Vec<(Face, usize)>, ComplexError> {
        let mut seen = BTreeSet::new();
        for f in self.facets()? {
            for v in f.vertices() {
                let k = match v {
                    Vertex::X(k) | Vertex::Y(k) => k,
                };
                seen.insert((f.without(v), k));
            }
        }
        Ok(seen.into_iter().map(|(r, k)| (r, self.ridge_degree(&r, k))).collect())
    }

    /// Ridges lying in exactly one facet; these are the facets of the boundary.
    pub fn boundary(&self) -> Result<Vec<Face>, ComplexError> {
        if self.is_sphere_case() {
            return Err(ComplexError::SphereHasNoBoundary);
        }
        Ok(self
            .ridges()?
            .into_iter()
            .filter(|&(_, d)| d == 1)
            .map(|(r, _)| r)
            .collect())
    }

    /// Sheds the smallest available y-vertex until only simplices remain.
    pub fn vertex_decomposition(&self) -> Result<SheddingTree, ComplexError> {
        self.check_bound()?;
        let Some(i) = self.y_vertices().first().copied() else {
            let facets = self.facets()?;
            return Ok(SheddingTree::Leaf {
                spec: self.clone(),
                simplex: facets[0],
            });
        };
        if !self.is_shedding(i)? {
            return Err(ComplexError::ShedFailure(i));
        }
        Ok(SheddingTree::Node {
            spec: self.clone(),
            vertex: i,
            link: Box::new(self.link_y(i)?.vertex_decomposition()?),
            deletion: Box::new(self.delete_y(i)?.vertex_decomposition()?),
        })
    }

    /// The link of `y_i` sits inside the boundary of its deletion, and the
    /// boundary has strictly more facets.
    pub fn link_in_deletion_boundary(&self, i: usize) -> Result<BoundaryContainment, ComplexError> {
        let link = self.link_y(i)?;
        let deletion = self.delete_y(i)?;
        let boundary: BTreeSet<Face> = deletion.boundary()?.into_iter().collect();
        let link_facets: BTreeSet<Face> = link.facets()?.iter().copied().collect();
        let contained = link_facets.iter().all(|l| boundary.iter().any(|b| l.is_subset(b)));
        Ok(BoundaryContainment {
            vertex: i,
            link_facets: link_facets.len(),
            boundary_facets: boundary.len(),
            contained,
            strict: contained && link_facets != boundary,
        })
    }

    pub fn classify(&self) -> Result<Classification, ComplexError> {
        let n = self.size();
        let facets = self.facets()?;
        let f_vector = self.f_vector()?;
        let euler: i64 = f_vector
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum();
        let pure = facets.iter().all(|f| f.len() == n);
        let ridges = self.ridges()?;
        let max_ridge_degree = ridges.iter().map(|&(_, d)| d).max().unwrap_or(0);
        let min_ridge_degree = ridges.iter().map(|&(_, d)| d).min().unwrap_or(0);
        let boundary_ridges = ridges.iter().filter(|&&(_, d)| d == 1).count();
        let sphere = self.is_sphere_case();
        let cross_polytope = sphere.then(|| {
            f_vector
                .iter()
                .enumerate()
                .all(|(k, &f)| f == (1u64 << (k + 1)) * binomial(n as u64, k as u64 + 1))
        });

        let mismatch = |what: &str| Err(ComplexError::EvidenceMismatch(what.to_string()));
        if !pure {
            return mismatch("a facet has fewer than |S| vertices");
        }
        if max_ridge_degree > 2 {
            return mismatch("a ridge lies in more than two facets");
        }
        if f_vector.last().copied().unwrap_or(1) != facets.len() as u64 && n > 0 {
            return mismatch("top f-vector entry differs from the facet count");
        }
        if sphere {
            let expected = 1 + if n % 2 == 1 { 1 } else { -1 };
            if euler != expected {
                return mismatch("Euler characteristic of a sphere");
            }
            if boundary_ridges != 0 || (!ridges.is_empty() && min_ridge_degree != 2) {
                return mismatch("sphere with a boundary ridge");
            }
            if cross_polytope != Some(true) {
                return mismatch("face numbers differ from the cross-polytope boundary");
            }
        } else {
            if euler != 1 {
                return mismatch("Euler characteristic of a ball");
            }
            if boundary_ridges == 0 {
                return mismatch("ball with empty boundary");
            }
        }
        Ok(Classification {
            verdict: if sphere { Topology::Sphere } else { Topology::Ball },
            dimension: n as i64 - 1,
            facet_count: facets.len(),
            f_vector,
            euler_characteristic: euler,
            pure,
            ridge_count: ridges.len(),
            max_ridge_degree,
            boundary_ridges,
            cross_polytope,
        })
    }
}

impl fmt::Display for ComplexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(S={:?}, C={:?}, Y={:?})",
            self.ground(),
            self.family(),
            self.y_set()
        )
    }
}

/// `(S, C, S)` with `S = {1..n}` and `C` the vertex sets of the minimal cycles.
pub fn complex_of_quiver(q: &IceQuiver) -> ComplexSpec {
    let family = q.vertex_minimal_cycles().into_iter().map(|c| c.mask()).collect();
    let all = if q.n() == 64 { u64::MAX } else { (1u64 << q.n()) - 1 };
    ComplexSpec::from_masks(all, family, all).expect("cycle vertices lie in 1..=n")
}

/// Reads `(S, C, Y)` off the minimal nonfaces of a Stanley–Reisner complex:
/// generators `x_i y_i` (with `i ∈ S`) and squarefree products of y's.
pub fn from_initial_ideal(n: usize, gens: &[Monomial]) -> Result<ComplexSpec, ComplexError> {
    let mut paired = 0u64;
    let mut family = Vec::new();
    for g in gens {
        let unsupported = || ComplexError::UnsupportedGenerator(g.to_string());
        if !g.is_squarefree() || g.ambient() != n {
            return Err(unsupported());
        }
        let support: Vec<_> = g.support().map(|(v, _)| v).collect();
        let of_kind = |k: VarKind| -> Vec<usize> { support.iter().filter(|v| v.kind == k).map(|v| v.index).collect() };
        let (xs, ys) = (of_kind(VarKind::X), of_kind(VarKind::Y));
        match (xs.as_slice(), ys.as_slice()) {
            ([i], [j]) if i == j => paired |= mask_of([*i])?,
            ([], ys) if !ys.is_empty() => family.push(mask_of(ys.iter().copied())?),
            _ => return Err(unsupported()),
        }
    }
    let all = mask_of(1..=n)?;
    if paired != all {
        return Err(ComplexError::BadSpec("some x_i*y_i is not a generator".into()));
    }
    ComplexSpec::from_masks(all, family, all)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryContainment {
    pub vertex: usize,
    pub link_facets: usize,
    pub boundary_facets: usize,
    pub contained: bool,
    pub strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Sphere,
    Ball,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Sphere => "sphere",
            Topology::Ball => "ball",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Topology,
    pub dimension: i64,
    pub facet_count: usize,
    pub f_vector: Vec<u64>,
    pub euler_characteristic: i64,
    pub pure: bool,
    pub ridge_count: usize,
    pub max_ridge_degree: usize,
    pub boundary_ridges: usize,
    /// Only computed for spheres.
    pub cross_polytope: Option<bool>,
}

/// A vertex-decomposition certificate.
#[derive(Clone, Debug, PartialEq)]
pub enum SheddingTree {
    Leaf {
        spec: ComplexSpec,
        simplex: Face,
    },
    Node {
        spec: ComplexSpec,
        vertex: usize,
        link: Box<SheddingTree>,
        deletion: Box<SheddingTree>,
    },
}

impl SheddingTree {
    pub fn spec(&self) -> &ComplexSpec {
        match self {
            SheddingTree::Leaf { spec, .. } | SheddingTree::Node { spec, .. } => spec,
        }
    }

    /// Re-checks every node from scratch: each named vertex sheds, children
    /// are the link and deletion, leaves are single simplices.
    pub fn verify(&self) -> Result<(), ComplexError> {
        match self {
            SheddingTree::Leaf { spec, simplex } => {
                let facets = spec.facets()?;
                if facets != [*simplex] {
                    return Err(ComplexError::EvidenceMismatch(format!(
                        "leaf {spec} is not the simplex {simplex}"
                    )));
                }
                Ok(())
            }
            SheddingTree::Node {
                spec,
                vertex,
                link,
                deletion,
            } => {
                if !spec.is_shedding(*vertex)? {
                    return Err(ComplexError::ShedFailure(*vertex));
                }
                if link.spec() != &spec.link_y(*vertex)? || deletion.spec() != &spec.delete_y(*vertex)? {
                    return Err(ComplexError::EvidenceMismatch(format!(
                        "children of y{vertex} in {spec}"
                    )));
                }
                link.verify()?;
                deletion.verify()
            }
        }
    }

    /// The y-vertices shed along the chain of deletions from the root.
    pub fn shedding_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self;
        while let SheddingTree::Node { vertex, deletion, .. } = cur {
            out.push(*vertex);
            cur = deletion;
        }
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            SheddingTree::Leaf { .. } => 0,
            SheddingTree::Node { link, deletion, .. } => 1 + link.depth().max(deletion.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            SheddingTree::Leaf { .. } => 1,
            SheddingTree::Node { link, deletion, .. } => 1 + link.node_count() + deletion.node_count(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GroundJson {
    Count(usize),
    Indices(Vec<usize>),
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    #[serde(rename = "S")]
    s: GroundJson,
    #[serde(rename = "C", default)]
    c: Vec<Vec<usize>>,
    #[serde(rename = "Y")]
    y: Vec<usize>,
}

impl Serialize for ComplexSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.size();
        let ground = if self.ground == mask_of(1..=n).unwrap_or(0) {
            GroundJson::Count(n)
        } else {
            GroundJson::Indices(self.ground())
        };
        ComplexJson {
            s: ground,
            c: self.family(),
            y: self.y_set(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<ComplexSpec, D::Error> {
        let raw = ComplexJson::deserialize(d)?;
        let ground: Vec<usize> = match raw.s {
            GroundJson::Count(n) => (1..=n).collect(),
            GroundJson::Indices(v) => v,
        };
        ComplexSpec::new(ground, raw.c, raw.y).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    fn triangle() -> ComplexSpec {
        ComplexSpec::on_range(3, [vec![1, 2, 3]], 1..=3).unwrap()
    }

    fn face(x: &[usize], y: &[usize]) -> Face {
        Face::new(x.iter().copied(), y.iter().copied()).unwrap()
    }

    #[test]
    fn quiver_complexes() {
        assert_eq!(complex_of_quiver(&gallery::oriented_cycle(3)), triangle());
        let acyclic = complex_of_quiver(&gallery::double_edge_quiver());
        assert!(acyclic.is_sphere_case());
        let bowtie = complex_of_quiver(&gallery::bowtie());
        assert_eq!(bowtie.family(), vec![vec![1, 2, 5], vec![2, 3, 4]]);
    }

    #[test]
    fn antichain_reduction() {
        let s = ComplexSpec::on_range(3, [vec![1, 2, 3], vec![1, 2], vec![1, 2]], 1..=3).unwrap();
        assert_eq!(s.family(), vec![vec![1, 2]]);
        assert!(ComplexSpec::on_range(2, [vec![]], 1..=2).is_err());
        assert!(ComplexSpec::on_range(2, [vec![3]], 1..=2).is_err());
    }

    #[test]
    fn faces_of_triangle_complex() {
        let s = triangle();
        assert!(s.is_face(&face(&[3], &[1, 2])).unwrap());
        assert!(!s.is_face(&face(&[], &[1, 2, 3])).unwrap());
        assert!(!s.is_face(&face(&[1], &[1])).unwrap());
        assert!(s.is_face(&Face::empty()).unwrap());
        assert!(matches!(
            s.is_face(&face(&[4], &[])),
            Err(ComplexError::InvalidVertex(_))
        ));
        let point = ComplexSpec::on_range(1, [vec![1]], [1]).unwrap();
        assert!(matches!(
            point.is_face(&face(&[], &[1])),
            Err(ComplexError::InvalidVertex(_))
        ));
    }

    #[test]
    fn facet_lists() {
        assert_eq!(triangle().facets().unwrap().len(), 7);
        let square = ComplexSpec::on_range(2, [], 1..=2).unwrap();
        let want = vec![
            face(&[1, 2], &[]),
            face(&[1], &[2]),
            face(&[2], &[1]),
            face(&[], &[1, 2]),
        ];
        let mut want = want;
        want.sort();
        assert_eq!(square.facets().unwrap(), want.as_slice());
        let point = ComplexSpec::on_range(1, [vec![1]], [1]).unwrap();
        assert_eq!(point.facets().unwrap(), [face(&[1], &[])]);
    }

    #[test]
    fn links_and_deletions() {
        let s = triangle();
        assert_eq!(
            s.link_y(1).unwrap(),
            ComplexSpec::new([2, 3], [vec![2, 3]], [2, 3]).unwrap()
        );
        assert_eq!(
            s.delete_y(1).unwrap(),
            ComplexSpec::on_range(3, [vec![1, 2, 3]], [2, 3]).unwrap()
        );
        let sphere = ComplexSpec::on_range(3, [], 1..=3).unwrap();
        assert_eq!(sphere.link_y(2).unwrap(), ComplexSpec::new([1, 3], [], [1, 3]).unwrap());
        assert_eq!(s.link_y(4), Err(ComplexError::NotAYVertex(4)));
    }

    #[test]
    fn shedding() {
        assert!(triangle().is_shedding(1).unwrap());
        let sphere = ComplexSpec::on_range(4, [], 1..=4).unwrap();
        assert!((1..=4).all(|i| sphere.is_shedding(i).unwrap()));
        let point = ComplexSpec::on_range(1, [vec![1]], [1]).unwrap();
        assert_eq!(point.is_shedding(1), Err(ComplexError::NotAYVertex(1)));
    }

    #[test]
    fn decompositions() {
        let tree = triangle().vertex_decomposition().unwrap();
        tree.verify().unwrap();
        assert_eq!(tree.shedding_order(), vec![1, 2, 3]);
        assert_eq!(tree.depth(), 3);

        let point = ComplexSpec::on_range(1, [vec![1]], [1]).unwrap();
        let tree = point.vertex_decomposition().unwrap();
        assert!(matches!(tree, SheddingTree::Leaf { simplex, .. } if simplex == face(&[1], &[])));

        let zero_sphere = ComplexSpec::on_range(1, [], [1]).unwrap();
        match zero_sphere.vertex_decomposition().unwrap() {
            SheddingTree::Node {
                vertex, link, deletion, ..
            } => {
                assert_eq!(vertex, 1);
                assert!(matches!(*link, SheddingTree::Leaf { simplex, .. } if simplex.is_empty()));
                assert!(matches!(*deletion, SheddingTree::Leaf { simplex, .. } if simplex == face(&[1], &[])));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn boundaries() {
        let b = triangle().boundary().unwrap();
        assert_eq!(b, vec![face(&[], &[1, 2]), face(&[], &[1, 3]), face(&[], &[2, 3])]);
        let s = ComplexSpec::on_range(2, [vec![1, 2]], 1..=2).unwrap();
        assert_eq!(s.boundary().unwrap(), vec![face(&[], &[1]), face(&[], &[2])]);
        let sphere = ComplexSpec::on_range(2, [], 1..=2).unwrap();
        assert_eq!(sphere.boundary(), Err(ComplexError::SphereHasNoBoundary));
    }

    #[test]
    fn classifications() {
        let c = ComplexSpec::on_range(4, [], 1..=4).unwrap().classify().unwrap();
        assert_eq!(c.verdict, Topology::Sphere);
        assert_eq!(c.f_vector, vec![8, 24, 32, 16]);
        assert_eq!(c.euler_characteristic, 0);

        let c = triangle().classify().unwrap();
        assert_eq!(
            (c.verdict, c.facet_count, c.euler_characteristic, c.dimension),
            (Topology::Ball, 7, 1, 2)
        );
        assert_eq!(c.boundary_ridges, 3);

        let c = ComplexSpec::on_range(1, [vec![1]], [1]).unwrap().classify().unwrap();
        assert_eq!((c.verdict, c.dimension, c.facet_count), (Topology::Ball, 0, 1));

        let c = ComplexSpec::on_range(3, [], [1, 2]).unwrap().classify().unwrap();
        assert_eq!(c.verdict, Topology::Ball);
    }

    #[test]
    fn link_sits_in_deletion_boundary() {
        for i in 1..=3 {
            let r = triangle().link_in_deletion_boundary(i).unwrap();
            assert!(r.contained && r.strict, "{r:?}");
        }
    }

    #[test]
    fn initial_ideal_round_trip() {
        let q = gallery::bowtie();
        let gens = crate::presentation::initial_ideal_generators::<num_bigint::BigInt>(
            &crate::quiver::Seed::from(q.clone()),
            crate::polynomial::YHeavyOrder::YGradedLex,
        )
        .unwrap();
        assert_eq!(from_initial_ideal(5, &gens).unwrap(), complex_of_quiver(&q));
    }

    #[test]
    fn json_round_trip() {
        let s = triangle();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"S":3,"C":[[1,2,3]],"Y":[1,2,3]}"#);
        assert_eq!(serde_json::from_str::<ComplexSpec>(&text).unwrap(), s);
        let link = s.link_y(1).unwrap();
        let text = serde_json::to_string(&link).unwrap();
        assert_eq!(text, r#"{"S":[2,3],"C":[[2,3]],"Y":[2,3]}"#);
        let f: Face = serde_json::from_str(r#"["y1","x3","y2"]"#).unwrap();
        assert_eq!(f, face(&[3], &[1, 2]));
    }
}
