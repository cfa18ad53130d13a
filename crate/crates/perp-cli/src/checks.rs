//! Builders that turn a subcommand invocation into a list of named,
//! independently runnable checks, plus the worker pool that executes them
//! under a per-check wall-clock limit.

use std::fmt::Display;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{mpsc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use perp::catalog::CatalogEntry;
use perp::field::{Fp, Rat};
use perp::groebner::Budget;
use perp::{
    braid_monodromy, dual_variety, plucker_dual, projection_chain, purity_classify,
    restrict_to_line_and_monodromy, shioda_tate_rank, solve_nodes_cusps,
    surface_branch_invariants, surjectivity_certificate, verify_duality, Certificate,
    Classification, Error, LoopKind, MonodromyData, Projection, Scalar, SurfaceInvariants,
    Variety,
};

use crate::report::{complex12, CheckReport};

/// Coefficient field selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Q,
    Fp(u64),
}

impl FieldChoice {
    /// Parse `q` or `fp:<p>`, insisting `p` is a prime below 2^31.
    pub fn parse(s: &str) -> Result<FieldChoice, String> {
        if s == "q" {
            return Ok(FieldChoice::Q);
        }
        let Some(rest) = s.strip_prefix("fp:") else {
            return Err(format!("invalid field '{s}': expected 'q' or 'fp:<prime>'"));
        };
        let p: u64 = rest
            .parse()
            .map_err(|_| format!("invalid prime '{rest}' in field specifier"))?;
        if p >= 1 << 31 {
            return Err(format!("prime {p} too large: the prime field needs p < 2^31"));
        }
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        Ok(FieldChoice::Fp(p))
    }

    pub fn label(&self) -> String {
        match self {
            FieldChoice::Q => "q".into(),
            FieldChoice::Fp(p) => format!("fp:{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// One named check: an id and a closure producing its body.
pub struct CheckSpec {
    pub id: String,
    pub run: Box<dyn FnOnce() -> perp::Result<CheckBody> + Send + 'static>,
}

/// What a successful check run reports.
pub struct CheckBody {
    pub pass: bool,
    pub seeds: Vec<u64>,
    pub detail: Value,
}

/// Run all checks on up to `jobs` worker threads, each under `timeout`,
/// and return the reports in the original check order.
pub fn run_all(specs: Vec<CheckSpec>, jobs: usize, timeout: Duration) -> Vec<CheckReport> {
    let n = specs.len();
    let work: Vec<Mutex<Option<CheckSpec>>> =
        specs.into_iter().map(|s| Mutex::new(Some(s))).collect();
    let done: Vec<Mutex<Option<CheckReport>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = jobs.max(1).min(n.max(1));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let spec = work[i].lock().unwrap().take().expect("each slot taken once");
                let report = run_one(spec, timeout);
                *done[i].lock().unwrap() = Some(report);
            });
        }
    });
    done.into_iter()
        .map(|m| m.into_inner().unwrap().expect("every slot filled"))
        .collect()
}

/// Run one check on its own thread so a wall-clock limit can be imposed;
/// a check that outlives the limit is abandoned and reported as failed.
fn run_one(spec: CheckSpec, timeout: Duration) -> CheckReport {
    let CheckSpec { id, run } = spec;
    let (tx, rx) = mpsc::channel();
    let start = Instant::now();
    thread::spawn(move || {
        let _ = tx.send(run());
    });
    let outcome = rx.recv_timeout(timeout);
    let wall_ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(Ok(body)) => CheckReport {
            id,
            pass: body.pass,
            seeds: body.seeds,
            wall_ms,
            budget_exceeded: false,
            error: None,
            detail: body.detail,
        },
        Ok(Err(e)) => CheckReport {
            id,
            pass: false,
            seeds: Vec::new(),
            wall_ms,
            budget_exceeded: matches!(e, Error::Budget { .. }),
            error: Some(e.to_string()),
            detail: Value::Null,
        },
        Err(_) => CheckReport {
            id,
            pass: false,
            seeds: Vec::new(),
            wall_ms,
            budget_exceeded: false,
            error: Some(format!("wall-clock timeout after {}s", timeout.as_secs())),
            detail: Value::Null,
        },
    }
}

fn ideal_strings<F: Scalar + Display>(gens: &[perp::Poly<F>]) -> Vec<String> {
    gens.iter().map(|g| g.to_string()).collect()
}

fn class_label(c: Classification) -> &'static str {
    match c {
        Classification::IrreducibleHypersurface => "irreducible-hypersurface",
        Classification::UnionOfHyperplanes => "union-of-hyperplanes",
        Classification::Empty => "empty",
        Classification::NonDominantImage => "non-dominant-image",
    }
}

fn kind_label(k: &LoopKind) -> &'static str {
    match k {
        LoopKind::HalfTwist => "half-twist",
        LoopKind::NodeType => "node-type",
        LoopKind::Other => "other",
    }
}

// ---------------------------------------------------------------- dual --

pub fn dual_checks(entries: &[CatalogEntry], field: FieldChoice, budget: u64) -> Vec<CheckSpec> {
    entries
        .iter()
        .map(|entry| {
            let id = format!("dual/{}", entry.name);
            let e = entry.clone();
            let run: Box<dyn FnOnce() -> perp::Result<CheckBody> + Send> = match field {
                FieldChoice::Q => Box::new(move || dual_body::<Rat>(&e, &(), budget)),
                FieldChoice::Fp(p) => Box::new(move || dual_body::<Fp>(&e, &p, budget)),
            };
            CheckSpec { id, run }
        })
        .collect()
}

fn dual_body<F: Scalar + Display>(
    entry: &CatalogEntry,
    ctx: &F::Ctx,
    budget_limit: u64,
) -> perp::Result<CheckBody> {
    let x: Variety<F> = entry.realize(ctx)?;
    let mut budget = Budget::new(budget_limit);
    let dd = x.dim_deg(&mut budget)?;
    let dual = dual_variety(&x, &mut budget)?;
    let ddd = dual.dim_deg(&mut budget)?;
    let defect = if ddd.dim < 0 { Value::Null } else { json!(x.ambient as i64 - 1 - ddd.dim) };
    Ok(CheckBody {
        pass: true,
        seeds: Vec::new(),
        detail: json!({
            "input": {
                "name": entry.name,
                "ambient": x.ambient,
                "dim": dd.dim,
                "degree": dd.degree,
                "ideal": ideal_strings(&x.gens),
            },
            "dual": {
                "dim": ddd.dim,
                "degree": ddd.degree,
                "defect": defect,
                "ideal": ideal_strings(&dual.gens),
            },
        }),
    })
}

// -------------------------------------------------------------- verify --

pub fn verify_checks(
    entries: &[CatalogEntry],
    field: FieldChoice,
    k: usize,
    seed: u64,
    budget: u64,
) -> Vec<CheckSpec> {
    entries
        .iter()
        .map(|entry| {
            let id = format!("verify/{}/k{k}", entry.name);
            let e = entry.clone();
            let run: Box<dyn FnOnce() -> perp::Result<CheckBody> + Send> = match field {
                FieldChoice::Q => Box::new(move || verify_body::<Rat>(&e, &(), k, seed, budget)),
                FieldChoice::Fp(p) => {
                    Box::new(move || verify_body::<Fp>(&e, &p, k, seed, budget))
                }
            };
            CheckSpec { id, run }
        })
        .collect()
}

fn verify_body<F: Scalar + Display>(
    entry: &CatalogEntry,
    ctx: &F::Ctx,
    k: usize,
    seed: u64,
    budget_limit: u64,
) -> perp::Result<CheckBody> {
    let x: Variety<F> = entry.realize(ctx)?;
    let mut budget = Budget::new(budget_limit);
    let report = verify_duality(&x, k, seed, &mut budget)?;
    let class = purity_classify(&x, k, seed, &mut budget)?;
    let mut seeds = report.seeds.clone();
    if !seeds.contains(&seed) {
        seeds.push(seed);
    }
    Ok(CheckBody {
        pass: report.equal,
        seeds,
        detail: json!({
            "k": k,
            "equal": report.equal,
            "branch_class": class_label(class),
            "branch_dual_ideal": ideal_strings(&report.left),
            "dual_section_ideal": ideal_strings(&report.right),
        }),
    })
}

// --------------------------------------------------------------- braid --

pub fn braid_checks(entries: &[CatalogEntry], seed: u64, tol: f64) -> Vec<CheckSpec> {
    entries
        .iter()
        .map(|entry| {
            let id = format!("braid/{}", entry.name);
            let e = entry.clone();
            let run: Box<dyn FnOnce() -> perp::Result<CheckBody> + Send> =
                Box::new(move || braid_body(&e, seed, tol));
            CheckSpec { id, run }
        })
        .collect()
}

fn braid_body(entry: &CatalogEntry, seed: u64, tol: f64) -> perp::Result<CheckBody> {
    let x: Variety<Rat> = entry.realize(&())?;
    let data: MonodromyData<f64> = if x.ambient == 2 {
        if x.gens.len() != 1 {
            return Err(Error::Invalid(format!(
                "{}: braid monodromy needs a single plane-curve equation",
                entry.name
            )));
        }
        let pi = Projection::<Rat>::random(2, 1, seed, &())?;
        braid_monodromy(&x.gens[0], &pi, seed, tol)?
    } else {
        let pi = Projection::<Rat>::random(x.ambient, x.ambient - 1, seed, &())?;
        restrict_to_line_and_monodromy(&x, &pi, seed, tol)?
    };
    let cert = surjectivity_certificate(&data);
    let loops: Vec<Value> = data
        .loops
        .iter()
        .map(|l| {
            json!({
                "word": l.word,
                "permutation": l.permutation,
                "kind": kind_label(&l.kind),
            })
        })
        .collect();
    Ok(CheckBody {
        pass: true,
        seeds: vec![data.seed],
        detail: json!({
            "m": data.m,
            "braid_group": format!("B_{}", data.m),
            "branch_point_count": data.branch_points.len(),
            "branch_points": data
                .branch_points
                .iter()
                .map(|z| complex12(z.re, z.im))
                .collect::<Vec<_>>(),
            "base": complex12(data.base.re, data.base.im),
            "base_fiber": data
                .base_fiber
                .iter()
                .map(|z| complex12(z.re, z.im))
                .collect::<Vec<_>>(),
            "loops": loops,
            "return_error": data.return_error,
            "certificate": match &cert {
                Certificate::Certified => "certified".to_string(),
                Certificate::Inconclusive(why) => format!("inconclusive: {why}"),
            },
        }),
    })
}

// ------------------------------------------------------------ examples --

/// Which bundled example suite to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Plucker,
    Surfaces,
    Veronese,
    All,
}

pub fn suite_checks(
    suite: Suite,
    field: FieldChoice,
    seed: u64,
    budget: u64,
) -> Vec<CheckSpec> {
    let mut specs = Vec::new();
    if matches!(suite, Suite::Plucker | Suite::All) {
        specs.extend(plucker_suite());
    }
    if matches!(suite, Suite::Surfaces | Suite::All) {
        specs.extend(surfaces_suite());
    }
    if matches!(suite, Suite::Veronese | Suite::All) {
        specs.push(veronese_chain_check(field, seed, budget));
    }
    specs
}

/// A check that compares a computed value against a fixed expectation.
fn expect_check<T>(
    id: &str,
    expected: T,
    compute: impl FnOnce() -> perp::Result<T> + Send + 'static,
) -> CheckSpec
where
    T: PartialEq + serde::Serialize + Send + 'static,
{
    let id = id.to_string();
    CheckSpec {
        id,
        run: Box::new(move || {
            let got = compute()?;
            Ok(CheckBody {
                pass: got == expected,
                seeds: Vec::new(),
                detail: json!({ "expected": expected, "got": got }),
            })
        }),
    }
}

fn plucker_suite() -> Vec<CheckSpec> {
    vec![
        expect_check("plucker/dual-degree-and-genus", (12u64, 3u64), || {
            plucker_dual(4, 0, 0)
        }),
        expect_check("plucker/nodes-and-cusps", (28u64, 24u64), || {
            solve_nodes_cusps(12, 4, 76)
        }),
        expect_check("plucker/lattice-rank", 7i64, || shioda_tate_rank(9, 1, 0)),
    ]
}

/// Invariants of a smooth degree-d surface in P^3: K = (d-4)H, so
/// K.H = d(d-4), K^2 = d(d-4)^2, and c2 = d(d^2 - 4d + 6).
fn smooth_surface(d: i64) -> SurfaceInvariants {
    SurfaceInvariants {
        deg_s: d,
        kh: d * (d - 4),
        k2: d * (d - 4) * (d - 4),
        c2: d * (d * d - 4 * d + 6),
    }
}

fn surfaces_suite() -> Vec<CheckSpec> {
    vec![
        expect_check("surfaces/quadric", (2u64, 0u64, 0u64), || {
            surface_branch_invariants(smooth_surface(2))
        }),
        expect_check("surfaces/cubic", (6u64, 0u64, 6u64), || {
            surface_branch_invariants(smooth_surface(3))
        }),
        expect_check("surfaces/quartic", (12u64, 12u64, 24u64), || {
            surface_branch_invariants(smooth_surface(4))
        }),
    ]
}

fn veronese_chain_check(field: FieldChoice, seed: u64, budget: u64) -> CheckSpec {
    let run: Box<dyn FnOnce() -> perp::Result<CheckBody> + Send> = match field {
        FieldChoice::Q => Box::new(move || veronese_body::<Rat>(&(), seed, budget)),
        FieldChoice::Fp(p) => Box::new(move || veronese_body::<Fp>(&p, seed, budget)),
    };
    CheckSpec { id: "veronese/projection-chain".into(), run }
}

fn veronese_body<F: Scalar + Display>(
    ctx: &F::Ctx,
    seed: u64,
    budget_limit: u64,
) -> perp::Result<CheckBody> {
    let entry = perp::catalog::find("veronese-p2").expect("bundled catalog has veronese-p2");
    let x: Variety<F> = entry.realize(ctx)?;
    let mut budget = Budget::new(budget_limit);
    let chain = projection_chain(&x, 1, seed, &mut budget)?;
    let mut degrees = Vec::new();
    let mut classes = Vec::new();
    for step in &chain {
        let dd = step.discriminant.dim_deg(&mut budget)?;
        degrees.push(dd.degree);
        classes.push(class_label(step.classification));
    }
    let expected = vec![4u64, 4, 6, 3];
    Ok(CheckBody {
        pass: degrees == expected,
        seeds: vec![seed],
        detail: json!({
            "expected_degrees": expected,
            "degrees": degrees,
            "classifications": classes,
        }),
    })
}
