use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Instant;

use anyhow::{bail, ensure, Context};
use fibertorsion::fixtures::{
    self, M036_SIGNED_TAU2, M036_SIGNED_TAU3, M036_TRIVIAL_TAU2, M036_TRIVIAL_TAU3,
};
use fibertorsion::{
    build_layered, closure_residual_c, closure_residual_theta, norm_lower_bound, oneloop2_full,
    oneloop3_full, propagate_c, propagate_theta, torsion2_reduced, torsion3_reduced,
    validate_obstruction, LayeredTriangulation, MappingClass, Method, NfElem, ObstructionData,
    Solution, TorsionResult,
};
use serde_json::{json, Value};

/// What a subcommand produced: a text rendering, the same data as JSON, and
/// the names of any checks that failed.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub failures: Vec<String>,
}

/// Inputs of an `invariants` run.
pub struct JobConfig {
    pub monodromy: PathBuf,
    pub solution: PathBuf,
    pub obstruction: String,
    pub n: Vec<u32>,
    pub methods: Vec<Method>,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_layered(path: &Path) -> anyhow::Result<LayeredTriangulation> {
    let phi =
        MappingClass::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(build_layered(&phi)?)
}

fn load_obstruction(spec: &str, l: &LayeredTriangulation) -> anyhow::Result<ObstructionData> {
    if spec == "trivial" {
        return Ok(ObstructionData::trivial(l));
    }
    let data = ObstructionData::parse(&read(Path::new(spec))?, l)
        .with_context(|| format!("parsing obstruction {spec}"))?;
    ensure!(
        validate_obstruction(&data, l),
        "obstruction signs in {spec} do not come from a short-edge cocycle"
    );
    Ok(data)
}

fn load_solution(path: &Path, l: &LayeredTriangulation) -> anyhow::Result<Solution> {
    let sol =
        Solution::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if sol.c.len() != 3 * l.n() {
        bail!(
            "solution has {} values, the base has {} edges",
            sol.c.len(),
            3 * l.n()
        );
    }
    Ok(sol)
}

pub fn build(monodromy: &Path, obstruction: &str) -> anyhow::Result<Outcome> {
    let l = load_layered(monodromy)?;
    let obs = load_obstruction(obstruction, &l)?;
    let mut text = l.dump(&obs);
    text.push_str("# ptolemy equations\n");
    let ptolemy: Vec<String> = l
        .ptolemy_equations(&obs)
        .iter()
        .map(ToString::to_string)
        .collect();
    for (i, eq) in ptolemy.iter().enumerate() {
        writeln!(text, "# P{}: {eq}", i + 1).unwrap();
    }
    text.push_str("# face equations\n");
    let faces: Vec<String> = l
        .face_equations(&obs)
        .iter()
        .map(ToString::to_string)
        .collect();
    for (i, eq) in faces.iter().enumerate() {
        writeln!(text, "# E{}: {eq}", i + 1).unwrap();
    }
    let json = json!({ "dump": l.dump(&obs), "ptolemy": ptolemy, "faces": faces });
    Ok(Outcome {
        text,
        json,
        failures: vec![],
    })
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn nonzero_indices(v: &[NfElem]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

fn residual_check(name: &'static str, prefix: &str, residual: &[NfElem]) -> Check {
    let bad = nonzero_indices(residual);
    Check {
        name,
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("all {} entries zero", residual.len())
        } else {
            let at: Vec<String> = bad.iter().map(|i| format!("{prefix}{i}")).collect();
            format!("nonzero at {}", at.join(", "))
        },
    }
}

pub fn verify(monodromy: &Path, solution: &Path, obstruction: &str) -> anyhow::Result<Outcome> {
    let l = load_layered(monodromy)?;
    let obs = load_obstruction(obstruction, &l)?;
    let sol = load_solution(solution, &l)?;
    let mut checks = Vec::new();
    let zeros: Vec<String> = sol
        .c
        .iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .map(|(i, _)| format!("c{i}"))
        .collect();
    checks.push(Check {
        name: "nonzero initial values",
        pass: zeros.is_empty(),
        detail: if zeros.is_empty() {
            "ok".into()
        } else {
            format!("zero: {}", zeros.join(", "))
        },
    });
    match propagate_c(&sol.c, &l, &obs) {
        Err(e) => checks.push(Check {
            name: "propagation",
            pass: false,
            detail: e.to_string(),
        }),
        Ok(state) => {
            let later = state.values[3 * l.n()..].iter().all(|x| !x.is_zero());
            checks.push(Check {
                name: "nonzero layer values",
                pass: later,
                detail: if later {
                    "ok".into()
                } else {
                    "a layer value vanishes".into()
                },
            });
            checks.push(residual_check(
                "closure residual c",
                "c",
                &closure_residual_c(&state, &l),
            ));
            if let Some(theta) = &sol.theta {
                match propagate_theta(&state, theta, &l, &obs) {
                    Ok(th) => checks.push(residual_check(
                        "closure residual theta",
                        "θ",
                        &closure_residual_theta(&th, &l, &obs),
                    )),
                    Err(e) => checks.push(Check {
                        name: "closure residual theta",
                        pass: false,
                        detail: e.to_string(),
                    }),
                }
            }
        }
    }
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{}: {} ({})", c.name, verdict(c.pass), c.detail).unwrap();
    }
    let pass = checks.iter().all(|c| c.pass);
    writeln!(text, "verdict: {}", verdict(pass)).unwrap();
    let json = json!({
        "checks": checks.iter().map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail })).collect::<Vec<_>>(),
        "pass": pass,
    });
    let failures = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    Ok(Outcome {
        text,
        json,
        failures,
    })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// `delta_n` for the block matrix, `tau_n` for the reduced Jacobian.
fn label(n: u32, method: Method) -> String {
    match method {
        Method::FullMatrix => format!("delta{n}"),
        Method::ReducedJacobian => format!("tau{n}"),
    }
}

fn compute(
    n: u32,
    method: Method,
    c: &[NfElem],
    l: &LayeredTriangulation,
    obs: &ObstructionData,
) -> fibertorsion::Result<TorsionResult> {
    match (n, method) {
        (2, Method::FullMatrix) => oneloop2_full(c, l, obs),
        (2, Method::ReducedJacobian) => torsion2_reduced(c, l, obs),
        (_, Method::FullMatrix) => oneloop3_full(c, l, obs),
        (_, Method::ReducedJacobian) => torsion3_reduced(c, l, obs),
    }
}

/// Runs independent jobs on scoped threads; results come back sorted by key.
fn run_jobs<K: Ord + Clone + Send + Sync>(
    keys: &[K],
    job: impl Fn(&K) -> fibertorsion::Result<TorsionResult> + Sync,
) -> BTreeMap<K, fibertorsion::Result<TorsionResult>> {
    thread::scope(|s| {
        let handles: Vec<_> = keys
            .iter()
            .map(|k| (k.clone(), s.spawn(|| job(k))))
            .collect();
        handles
            .into_iter()
            .map(|(k, h)| (k, h.join().expect("job thread panicked")))
            .collect()
    })
}

fn result_json(r: &TorsionResult) -> anyhow::Result<Value> {
    let mut v = serde_json::to_value(r.report())?;
    v["label"] = json!(label(r.n, r.method));
    v["span"] = json!(r.polynomial.span());
    v["norm_lower_bound"] = json!(norm_lower_bound(&r.polynomial, r.n)?.to_string());
    Ok(v)
}

fn result_text(r: &TorsionResult) -> anyhow::Result<String> {
    Ok(format!(
        "{} [{}]: {}\n  span {}, norm bound {}\n",
        label(r.n, r.method),
        r.method,
        r.polynomial,
        r.polynomial.span().unwrap_or(0),
        norm_lower_bound(&r.polynomial, r.n)?
    ))
}

pub fn invariants(config: &JobConfig) -> anyhow::Result<Outcome> {
    ensure!(
        !config.n.is_empty() && !config.methods.is_empty(),
        "select at least one n and one method"
    );
    let l = load_layered(&config.monodromy)?;
    let obs = load_obstruction(&config.obstruction, &l)?;
    let sol = load_solution(&config.solution, &l)?;
    let keys: Vec<(u32, Method)> = config
        .n
        .iter()
        .flat_map(|&n| config.methods.iter().map(move |&m| (n, m)))
        .collect();
    let results = run_jobs(&keys, |&(n, m)| compute(n, m, &sol.c, &l, &obs));

    let mut text = String::new();
    let mut jobs = Vec::new();
    let mut agreements = Vec::new();
    let mut failures = Vec::new();
    for (key, r) in &results {
        let r = r
            .as_ref()
            .map_err(|e| anyhow::anyhow!("{} failed: {e}", label(key.0, key.1)))?;
        text.push_str(&result_text(r)?);
        jobs.push(result_json(r)?);
    }
    for &n in &config.n {
        let full = results.get(&(n, Method::FullMatrix));
        let reduced = results.get(&(n, Method::ReducedJacobian));
        if let (Some(Ok(a)), Some(Ok(b))) = (full, reduced) {
            let agree = a.polynomial.loop_equal(&b.polynomial);
            writeln!(text, "delta{n} = tau{n}: {}", verdict(agree)).unwrap();
            agreements.push(json!({ "n": n, "agree": agree }));
            if !agree {
                failures.push(format!("delta{n} and tau{n} differ"));
            }
        }
    }
    let json = json!({ "field": sol.field.header(), "results": jobs, "agreement": agreements });
    Ok(Outcome {
        text,
        json,
        failures,
    })
}

pub fn demo() -> anyhow::Result<Outcome> {
    let start = Instant::now();
    let l = fixtures::m036_layered();
    let classes = [
        (
            "signed",
            fixtures::m036_signed_solution(),
            fixtures::m036_signed_obstruction(&l),
            [M036_SIGNED_TAU2, M036_SIGNED_TAU3],
        ),
        (
            "trivial",
            fixtures::m036_trivial_solution(),
            ObstructionData::trivial(&l),
            [M036_TRIVIAL_TAU2, M036_TRIVIAL_TAU3],
        ),
    ];
    let mut keys = Vec::new();
    for (class, (name, ..)) in classes.iter().enumerate() {
        for n in [2u32, 3] {
            for m in [Method::FullMatrix, Method::ReducedJacobian] {
                keys.push((*name, n, m, class));
            }
        }
    }
    let results = run_jobs(&keys, |&(_, n, m, class)| {
        let (_, sol, obs, _) = &classes[class];
        compute(n, m, &sol.c, &l, obs)
    });

    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for ((name, n, m, class), r) in &results {
        let (_, sol, _, expected) = &classes[*class];
        let want =
            fixtures::parse_t_poly(&sol.field, expected[*n as usize - 2])?.normalize_loop()?;
        let r = r
            .as_ref()
            .map_err(|e| anyhow::anyhow!("{name} {} failed: {e}", label(*n, *m)))?;
        let pass = r.polynomial.loop_equal(&want);
        writeln!(
            text,
            "{name} {} [{m}]: {} {}",
            label(*n, *m),
            verdict(pass),
            r.polynomial
        )
        .unwrap();
        if !pass {
            writeln!(text, "  expected {want}").unwrap();
            failures.push(format!(
                "{name} {} [{m}] does not match the expected polynomial",
                label(*n, *m)
            ));
        }
        let mut row = result_json(r)?;
        row["class"] = json!(name);
        row["expected"] = json!(want.to_string());
        row["pass"] = json!(pass);
        rows.push(row);
    }
    let secs = start.elapsed().as_secs_f64();
    writeln!(
        text,
        "{} computations, {} failed, {secs:.2}s",
        results.len(),
        failures.len()
    )
    .unwrap();
    let json = json!({ "computations": rows, "failed": failures.len(), "seconds": secs });
    Ok(Outcome {
        text,
        json,
        failures,
    })
}
