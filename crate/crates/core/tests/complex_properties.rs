use std::collections::BTreeSet;

use lbca::complex::{complex_of_quiver, from_initial_ideal, ComplexError, Topology};
use lbca::gallery;
use lbca::polynomial::VarKind;
use lbca::presentation::initial_ideal_generators;
use lbca::{ComplexSpec, Face, Seed, YHeavyOrder};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A spec kept alongside its raw, unreduced data.
struct Raw {
    ground: Vec<usize>,
    family: Vec<Vec<usize>>,
    y: Vec<usize>,
    spec: ComplexSpec,
}

fn random_spec<R: Rng>(rng: &mut R, max: usize) -> Raw {
    let ground: Vec<usize> = (1..=max).filter(|_| rng.gen_bool(0.7)).collect();
    let mut family = Vec::new();
    if !ground.is_empty() {
        for _ in 0..rng.gen_range(0..=3) {
            let member: Vec<usize> = ground.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            if !member.is_empty() {
                family.push(member);
            }
        }
    }
    let y: Vec<usize> = ground.iter().copied().filter(|_| rng.gen_bool(0.8)).collect();
    let spec = ComplexSpec::new(ground.clone(), family.clone(), y.clone()).unwrap();
    Raw {
        ground,
        family,
        y,
        spec,
    }
}

/// Faces straight from the definition: every way to pick nothing, `x_i` or
/// `y_i` at each ground index.
fn direct_faces(raw: &Raw) -> BTreeSet<Face> {
    let k = raw.ground.len();
    let mut out = BTreeSet::new();
    for code in 0..3usize.pow(k as u32) {
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        let mut c = code;
        for &i in &raw.ground {
            match c % 3 {
                1 => xs.push(i),
                2 => ys.push(i),
                _ => {}
            }
            c /= 3;
        }
        let y_ok = ys.iter().all(|i| raw.y.contains(i));
        let avoids = raw.family.iter().all(|m| !m.iter().all(|i| ys.contains(i)));
        if y_ok && avoids {
            out.insert(Face::new(xs, ys).unwrap());
        }
    }
    out
}

fn maximal(faces: &BTreeSet<Face>) -> BTreeSet<Face> {
    faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g != *f && f.is_subset(g)))
        .copied()
        .collect()
}

fn closure(gens: &BTreeSet<Face>) -> BTreeSet<Face> {
    let mut out = BTreeSet::new();
    for g in gens {
        let mut x = g.x;
        loop {
            let mut y = g.y;
            loop {
                out.insert(Face { x, y });
                if y == 0 {
                    break;
                }
                y = (y - 1) & g.y;
            }
            if x == 0 {
                break;
            }
            x = (x - 1) & g.x;
        }
    }
    out
}

fn faces_of(spec: &ComplexSpec) -> BTreeSet<Face> {
    spec.faces().unwrap().into_iter().collect()
}

fn corpus(count: usize) -> Vec<Raw> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    (0..count).map(|_| random_spec(&mut rng, 8)).collect()
}

#[test]
fn faces_and_facets_match_the_definition() {
    for raw in corpus(200) {
        let direct = direct_faces(&raw);
        assert_eq!(faces_of(&raw.spec), direct, "{}", raw.spec);
        let facets: BTreeSet<Face> = raw.spec.facets().unwrap().iter().copied().collect();
        assert_eq!(facets, maximal(&direct), "{}", raw.spec);
        assert!(facets.iter().all(|f| f.len() == raw.spec.size()));
        let mut f = vec![0u64; raw.spec.size()];
        for face in &direct {
            if !face.is_empty() {
                f[face.len() - 1] += 1;
            }
        }
        assert_eq!(raw.spec.f_vector().unwrap(), f);
    }
}

#[test]
fn link_and_deletion_closed_forms() {
    let mut trials = 0;
    for raw in corpus(200) {
        let delta = direct_faces(&raw);
        for i in raw.spec.y_vertices() {
            trials += 1;
            let v = lbca::complex::Vertex::Y(i);
            let link: BTreeSet<Face> = delta
                .iter()
                .filter(|f| !f.contains(v) && delta.contains(&f.with(v)))
                .copied()
                .collect();
            assert_eq!(
                faces_of(&raw.spec.link_y(i).unwrap()),
                link,
                "link y{i} of {}",
                raw.spec
            );

            let stuck: BTreeSet<Face> = delta.iter().filter(|f| !delta.contains(&f.with(v))).copied().collect();
            let deletion = closure(&stuck);
            let without: BTreeSet<Face> = delta.iter().filter(|f| !f.contains(v)).copied().collect();
            assert_eq!(deletion, without);
            assert_eq!(
                faces_of(&raw.spec.delete_y(i).unwrap()),
                deletion,
                "deletion y{i} of {}",
                raw.spec
            );
        }
    }
    assert!(trials > 200);
}

#[test]
fn every_y_vertex_sheds_and_decompositions_verify() {
    for raw in corpus(200) {
        for i in raw.spec.y_vertices() {
            assert!(raw.spec.is_shedding(i).unwrap());
        }
        let tree = raw.spec.vertex_decomposition().unwrap();
        tree.verify().unwrap();
        assert_eq!(tree.shedding_order(), raw.spec.y_vertices());
    }
}

#[test]
fn link_lies_in_the_boundary_of_the_deletion() {
    for raw in corpus(200).into_iter().filter(|r| !r.spec.is_sphere_case()) {
        for i in raw.spec.y_vertices() {
            let link = faces_of(&raw.spec.link_y(i).unwrap());
            let boundary: BTreeSet<Face> = raw.spec.delete_y(i).unwrap().boundary().unwrap().into_iter().collect();
            let boundary_faces = closure(&boundary);
            assert!(link.is_subset(&boundary_faces), "{} at y{i}", raw.spec);
            let link_facets: BTreeSet<Face> = raw.spec.link_y(i).unwrap().facets().unwrap().iter().copied().collect();
            assert!(link_facets.len() < boundary.len(), "{} at y{i}", raw.spec);
            let check = raw.spec.link_in_deletion_boundary(i).unwrap();
            assert!(check.contained && check.strict);
        }
    }
}

#[test]
fn classification_evidence() {
    for raw in corpus(200) {
        let c = raw.spec.classify().unwrap();
        let n = raw.spec.size();
        match c.verdict {
            Topology::Ball => {
                assert_eq!(c.euler_characteristic, 1);
                assert!(c.boundary_ridges > 0);
                assert!(!raw.spec.boundary().unwrap().is_empty());
            }
            Topology::Sphere => {
                assert_eq!(c.euler_characteristic, 1 + if n % 2 == 1 { 1 } else { -1 });
                assert_eq!(raw.spec.boundary(), Err(ComplexError::SphereHasNoBoundary));
                assert!(n == 0 || c.max_ridge_degree == 2);
                assert_eq!(c.cross_polytope, Some(true));
            }
        }
        assert!(c.max_ridge_degree <= 2);
        assert_eq!(
            c.verdict == Topology::Sphere,
            raw.family.is_empty() && raw.y.len() == raw.ground.len()
        );
    }
}

/// Faces of the Stanley–Reisner complex of a squarefree monomial ideal: sets
/// of variables whose product no generator divides.
fn stanley_reisner_faces(n: usize, gens: &[lbca::Monomial]) -> BTreeSet<Face> {
    let supports: Vec<Face> = gens
        .iter()
        .map(|g| {
            let mut f = Face::empty();
            for (v, _) in g.support() {
                f = f.with(match v.kind {
                    VarKind::X => lbca::complex::Vertex::X(v.index),
                    VarKind::Y => lbca::complex::Vertex::Y(v.index),
                });
            }
            f
        })
        .collect();
    let full = (1u64 << n) - 1;
    let mut out = BTreeSet::new();
    for x in 0..=full {
        for y in 0..=full {
            let f = Face { x, y };
            if !supports.iter().any(|s| s.is_subset(&f)) {
                out.insert(f);
            }
        }
    }
    out
}

#[test]
fn quiver_complexes_match_their_initial_ideals() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut quivers = gallery::random_corpus(&mut rng, 60, 5, 2);
    quivers.extend([
        gallery::oriented_cycle(3),
        gallery::bowtie(),
        gallery::chorded_square(),
        gallery::double_edge_quiver(),
    ]);
    for q in quivers {
        let gens = initial_ideal_generators::<BigInt>(&Seed::from(q.clone()), YHeavyOrder::YGradedLex).unwrap();
        let spec = complex_of_quiver(&q);
        assert_eq!(faces_of(&spec), stanley_reisner_faces(q.n(), &gens), "{q:?}");
        assert_eq!(from_initial_ideal(q.n(), &gens).unwrap(), spec);
    }
}

#[test]
fn enumeration_bound_is_enforced() {
    let big = ComplexSpec::on_range(30, [], 1..=30).unwrap();
    assert!(matches!(
        big.facets(),
        Err(ComplexError::GroundSetTooLarge { size: 30, .. })
    ));
    assert!(matches!(big.classify(), Err(ComplexError::GroundSetTooLarge { .. })));
}
