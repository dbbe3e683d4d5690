use std::path::Path;

use anyhow::{anyhow, bail, Result};
use lbca::complex::{complex_of_quiver, ComplexError};
use lbca::polynomial::{fraction_string, pi_map};
use lbca::presentation::{
    adjacent_cluster_variables, certify_generators, choice_expansion_oracle, cycle_expansion_rhs, cycle_polynomial,
    expansion_subset_count, generators, Verdict as CertVerdict, Witness,
};
use lbca::singularity::{jacobian_rank, on_variety, path_quiver, path_singular_locus};
use lbca::{gallery, ComplexSpec, DirectedCycle, Presentation, QPoint, Seed, YHeavyOrder, ZCertificate, ZPolynomial};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::input::{load, load_point, load_seed, Input};
use crate::report::{digest, Recorder, RunReport, Verdict};

#[derive(Serialize)]
struct CycleRecord {
    cycle: Vec<usize>,
    polynomial: String,
}

/// A presentation with polynomials in canonical text form.
#[derive(Serialize)]
struct PresentationRecord {
    order: String,
    defining: Vec<String>,
    cycles: Vec<CycleRecord>,
    verdict: Option<String>,
}

impl PresentationRecord {
    fn new(p: &Presentation<BigInt>, verdict: Option<String>) -> Self {
        let order = p.order();
        PresentationRecord {
            order: order.to_string(),
            defining: p.defining().iter().map(|g| g.display_with(order).to_string()).collect(),
            cycles: p
                .cycles()
                .iter()
                .map(|(c, g)| CycleRecord {
                    cycle: c.vertices().to_vec(),
                    polynomial: g.display_with(order).to_string(),
                })
                .collect(),
            verdict,
        }
    }

    fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.defining.iter().map(|g| g.to_string()).collect();
        out.extend(
            self.cycles
                .iter()
                .map(|c| format!("{}    (cycle {})", c.polynomial, join(&c.cycle))),
        );
        out
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn witness_text(w: &Witness<BigInt>, order: YHeavyOrder) -> String {
    match w {
        Witness::NotInKernel { index, image } => format!("generator {} maps to {image}", index + 1),
        Witness::NonUnitLeadingCoefficient { index } => {
            format!("generator {} has a non-unit leading coefficient", index + 1)
        }
        Witness::SPairRemainder { i, j, remainder } => {
            format!("S-pair ({}, {}) leaves {}", i + 1, j + 1, remainder.display_with(order))
        }
    }
}

fn verdict_text(cert: &ZCertificate, order: YHeavyOrder) -> String {
    match &cert.verdict {
        CertVerdict::Certified => "certified".to_string(),
        CertVerdict::Failed(w) => format!("failed: {}", witness_text(w, order)),
    }
}

pub fn present(path: &Path, order: YHeavyOrder, timings: bool) -> Result<RunReport> {
    let (seed, d) = load_seed(path)?;
    let mut rec = Recorder::new("present", d);
    let adjacent = rec.stage("adjacent", || adjacent_cluster_variables::<BigInt>(&seed));
    let shown: Vec<String> = adjacent.iter().map(fraction_string).collect();
    let details = shown
        .iter()
        .enumerate()
        .map(|(i, s)| format!("x{}' = {s}", i + 1))
        .collect();
    rec.push(
        Verdict::new(
            "adjacent_variables",
            true,
            format!("{} adjacent variables", shown.len()),
            &shown,
        )
        .with_details(details),
    );

    let pres = rec.stage("generators", || generators::<BigInt>(&seed, order))?;
    let record = PresentationRecord::new(&pres, None);
    let summary = format!(
        "{} defining and {} cycle generators, order {order}",
        record.defining.len(),
        record.cycles.len()
    );
    let details = record.lines();
    rec.push(Verdict::new("presentation", true, summary, &record).with_details(details));

    let gens = pres.generators();
    let nonzero: Vec<usize> = rec.stage("kernel", || -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if !pi_map(&seed, g)?.is_zero() {
                bad.push(i + 1);
            }
        }
        Ok(bad)
    })?;
    let summary = if nonzero.is_empty() {
        format!("all {} generators vanish on the Laurent side", gens.len())
    } else {
        format!("generators {} do not vanish", join(&nonzero))
    };
    rec.push(Verdict::new(
        "kernel",
        nonzero.is_empty(),
        summary,
        json!({ "nonzero": nonzero }),
    ));
    Ok(rec.finish(timings))
}

#[derive(Serialize)]
struct GroebnerRecord {
    verdict: String,
    leading_monomials: Vec<String>,
    pairs_total: usize,
    pairs_reduced: usize,
    pairs_skipped: usize,
    presentation: PresentationRecord,
}

fn groebner_one(seed: &Seed, order: YHeavyOrder) -> Result<(ZCertificate, GroebnerRecord)> {
    let pres = generators::<BigInt>(seed, order)?;
    let gens = pres.generators();
    let cert = certify_generators(seed, &gens, order)?;
    let leading_monomials = gens
        .iter()
        .map(|g| g.leading_term(order).map(|(m, _)| m.to_string()).unwrap_or_default())
        .collect();
    let verdict = verdict_text(&cert, order);
    let record = GroebnerRecord {
        verdict: verdict.clone(),
        leading_monomials,
        pairs_total: cert.pairs_total,
        pairs_reduced: cert.pairs_reduced,
        pairs_skipped: cert.pairs_skipped,
        presentation: PresentationRecord::new(&pres, Some(verdict)),
    };
    Ok((cert, record))
}

pub fn groebner(path: &Path, order: YHeavyOrder, timings: bool) -> Result<RunReport> {
    let (seed, d) = load_seed(path)?;
    let mut rec = Recorder::new("groebner", d);
    let (cert, record) = rec.stage("certify", || groebner_one(&seed, order))?;
    let summary = format!(
        "{}; {} S-pairs ({} reduced, {} coprime)",
        record.verdict, record.pairs_total, record.pairs_reduced, record.pairs_skipped
    );
    let details = vec![format!("initial ideal: {}", record.leading_monomials.join(", "))];
    rec.push(Verdict::new("groebner", cert.is_certified(), summary, &record).with_details(details));
    Ok(rec.finish(timings))
}

#[derive(Serialize)]
struct CorpusFailure {
    index: usize,
    quiver: lbca::IceQuiver,
    reason: String,
}

pub fn groebner_corpus(
    count: usize,
    rng_seed: u64,
    max_n: usize,
    order: YHeavyOrder,
    timings: bool,
) -> Result<RunReport> {
    let mut rec = Recorder::new(
        "groebner",
        digest(format!("corpus count={count} seed={rng_seed} max-n={max_n} order={order}").as_bytes()),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let corpus = gallery::random_corpus(&mut rng, count, max_n, 2);
    let (certified, failures, pairs) = rec.stage("certify", || {
        let mut failures = Vec::new();
        let mut pairs = 0;
        for (index, q) in corpus.iter().enumerate() {
            match groebner_one(&Seed::from(q.clone()), order) {
                Ok((cert, _)) if cert.is_certified() => pairs += cert.pairs_total,
                Ok((cert, _)) => failures.push(CorpusFailure {
                    index,
                    quiver: q.clone(),
                    reason: verdict_text(&cert, order),
                }),
                Err(e) => failures.push(CorpusFailure {
                    index,
                    quiver: q.clone(),
                    reason: e.to_string(),
                }),
            }
        }
        (count - failures.len(), failures, pairs)
    });
    let details = failures.iter().map(|f| format!("#{}: {}", f.index, f.reason)).collect();
    let data = json!({
        "count": count,
        "seed": rng_seed,
        "max_n": max_n,
        "certified": certified,
        "pairs_total": pairs,
        "failures": failures,
    });
    rec.push(
        Verdict::new(
            "corpus",
            failures.is_empty(),
            format!("{certified}/{count} certified, order {order}"),
            data,
        )
        .with_details(details),
    );
    Ok(rec.finish(timings))
}

#[derive(Clone, Copy, Default)]
pub struct ComplexFlags {
    pub facets: bool,
    pub f_vector: bool,
    pub classify: bool,
    pub decompose: bool,
    pub boundary: bool,
}

fn faces_text(faces: &[lbca::Face]) -> Vec<String> {
    faces.iter().map(|f| f.to_string()).collect()
}

pub fn complex(path: &Path, mut flags: ComplexFlags, timings: bool) -> Result<RunReport> {
    let loaded = load(path)?;
    let spec: ComplexSpec = match loaded.input {
        Input::Complex(c) => c,
        Input::Seed(s) => complex_of_quiver(s.quiver()),
    };
    if !(flags.facets || flags.f_vector || flags.classify || flags.decompose || flags.boundary) {
        flags.classify = true;
    }
    let mut rec = Recorder::new("complex", loaded.digest);
    let facets = rec.stage("facets", || spec.facets().map(<[_]>::to_vec))?;
    if flags.facets {
        let data = json!({ "complex": &spec, "count": facets.len(), "facets": &facets });
        rec.push(
            Verdict::new("facets", true, format!("{} facets of {spec}", facets.len()), data)
                .with_details(faces_text(&facets)),
        );
    }
    if flags.f_vector {
        let f = rec.stage("f-vector", || spec.f_vector())?;
        let shown = f.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        rec.push(Verdict::new(
            "f_vector",
            true,
            format!("({shown})"),
            json!({ "f_vector": f }),
        ));
    }
    if flags.classify {
        let c = rec.stage("classify", || spec.classify())?;
        let summary = format!(
            "{}, dim {}, {} facets, euler characteristic {}",
            c.verdict, c.dimension, c.facet_count, c.euler_characteristic
        );
        let details = vec![
            format!("f-vector: {:?}", c.f_vector),
            format!(
                "ridges: {} ({} on the boundary, max degree {})",
                c.ridge_count, c.boundary_ridges, c.max_ridge_degree
            ),
        ];
        rec.push(Verdict::new("classify", true, summary, &c).with_details(details));
    }
    if flags.boundary {
        let data = match spec.boundary() {
            Ok(b) => {
                let summary = format!("{} boundary ridges", b.len());
                let details = faces_text(&b);
                Verdict::new(
                    "boundary",
                    true,
                    summary,
                    json!({ "sphere": false, "count": b.len(), "ridges": b }),
                )
                .with_details(details)
            }
            Err(ComplexError::SphereHasNoBoundary) => Verdict::new(
                "boundary",
                true,
                "empty (sphere)",
                json!({ "sphere": true, "count": 0, "ridges": [] }),
            ),
            Err(e) => return Err(e.into()),
        };
        rec.push(data);
    }
    if flags.decompose {
        let tree = rec.stage("decompose", || spec.vertex_decomposition())?;
        let check = rec.stage("verify", || tree.verify());
        let order: Vec<String> = tree.shedding_order().iter().map(|i| format!("y{i}")).collect();
        let summary = match &check {
            Ok(()) => format!(
                "shedding order {}; all {} nodes re-verified",
                order.join(", "),
                tree.node_count()
            ),
            Err(e) => format!("re-verification failed: {e}"),
        };
        let data = json!({
            "shedding_order": order,
            "nodes": tree.node_count(),
            "depth": tree.depth(),
            "verified": check.is_ok(),
            "error": check.as_ref().err().map(|e| e.to_string()),
        });
        rec.push(Verdict::new("decompose", check.is_ok(), summary, data));
    }
    Ok(rec.finish(timings))
}

pub fn singular_path(n: usize, timings: bool) -> Result<RunReport> {
    if n == 0 {
        bail!("validation error: the path quiver needs at least one vertex");
    }
    let mut rec = Recorder::new("singular", digest(format!("path-quiver {n}").as_bytes()));
    let seed = Seed::from(path_quiver(n));
    let locus: Vec<QPoint> = rec.stage("locus", || path_singular_locus(n));
    let mut ranks = Vec::new();
    let mut consistent = true;
    for p in &locus {
        let j = jacobian_rank(&seed, p)?;
        consistent &= on_variety(&seed, p)? && j.is_singular(n);
        ranks.push(j.rank);
    }
    let summary = match locus.len() {
        0 => format!("no singular points for n = {n}"),
        1 => format!("one singular point for n = {n}, jacobian rank {}", ranks[0]),
        k => format!("{k} singular points for n = {n}"),
    };
    let details = locus
        .iter()
        .zip(&ranks)
        .map(|(p, r)| format!("{p}  rank {r}"))
        .collect();
    let data = json!({ "n": n, "points": locus, "ranks": ranks });
    rec.push(Verdict::new("singular_locus", consistent, summary, data).with_details(details));
    Ok(rec.finish(timings))
}

pub fn singular_point(path: &Path, point: &Path, timings: bool) -> Result<RunReport> {
    let (seed, _) = load_seed(path)?;
    let (p, point_bytes) = load_point(point)?;
    let mut bytes = std::fs::read(path)?;
    bytes.push(0);
    bytes.extend(point_bytes);
    let mut rec = Recorder::new("singular", digest(&bytes));
    let n = seed.n();
    let on = rec.stage("on-variety", || on_variety(&seed, &p))?;
    if !on {
        rec.push(Verdict::new(
            "on_variety",
            false,
            format!("{p} is not on the variety"),
            json!({ "point": &p, "on_variety": false }),
        ));
        return Ok(rec.finish(timings));
    }
    let j = rec.stage("jacobian", || jacobian_rank(&seed, &p))?;
    let singular = j.is_singular(n);
    let summary = format!(
        "{}, jacobian rank {} of {n}",
        if singular { "singular" } else { "smooth" },
        j.rank
    );
    let data = json!({ "point": &p, "on_variety": true, "rank": j.rank, "expected_rank": n, "singular": singular });
    rec.push(Verdict::new("jacobian", true, summary, data).with_details(vec![p.to_string()]));
    Ok(rec.finish(timings))
}

fn check_cycle(seed: &Seed, c: &DirectedCycle, max_len: usize) -> Result<Verdict> {
    let oracle = choice_expansion_oracle::<BigInt>(seed, c, max_len)?;
    let rhs = cycle_expansion_rhs::<BigInt>(seed, c)?;
    let agrees = pi_map(seed, &rhs)? == oracle;
    let rel: ZPolynomial = cycle_polynomial(seed, c)?;
    let vanishes = pi_map(seed, &rel)?.is_zero();
    let k = c.len();
    let summary = format!(
        "{} subsets vs {} choice graphs: {}; relation {}",
        expansion_subset_count(k),
        1usize << k,
        if agrees { "agree" } else { "DIFFER" },
        if vanishes { "vanishes" } else { "does NOT vanish" }
    );
    let data = json!({
        "cycle": c.vertices(),
        "subsets": expansion_subset_count(k),
        "choice_graphs": 1u64 << k,
        "expansion_agrees": agrees,
        "relation_vanishes": vanishes,
        "polynomial": rel.to_string(),
    });
    Ok(Verdict::new(
        format!("cycle {}", join(c.vertices())),
        agrees && vanishes,
        summary,
        data,
    )
    .with_details(vec![rel.to_string()]))
}

pub fn oracle(path: &Path, cycle: Option<Vec<usize>>, max_len: usize, timings: bool) -> Result<RunReport> {
    let (seed, d) = load_seed(path)?;
    let mut rec = Recorder::new("oracle", d);
    let cycles = match cycle {
        Some(v) => {
            let c = DirectedCycle::new(v).map_err(|e| anyhow!("validation error: {e}"))?;
            seed.quiver()
                .check_cycle(&c)
                .map_err(|e| anyhow!("validation error: {e}"))?;
            vec![c]
        }
        None => seed
            .quiver()
            .simple_cycles()
            .into_iter()
            .filter(|c| c.len() <= max_len)
            .collect(),
    };
    let verdicts = rec.stage("oracle", || {
        cycles
            .iter()
            .map(|c| check_cycle(&seed, c, max_len))
            .collect::<Result<Vec<_>>>()
    })?;
    if verdicts.is_empty() {
        rec.push(Verdict::new(
            "cycles",
            true,
            "no simple cycles to check",
            json!({ "count": 0 }),
        ));
    }
    for v in verdicts {
        rec.push(v);
    }
    Ok(rec.finish(timings))
}
