//! Desk-scale acceptance suite: one line per criterion, exit status 1 if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use eeq_core::category::{
    coequalizer, coequalizer_laws, compose, coproduct_laws, initial_refutation, injective_at,
    mono_separation_pair, morphism_eq, product_laws, surjective_at, terminal_uniqueness,
    CandidateConfig, InstanceSampler, Morphism, Scope, Verdict, Witness,
};
use eeq_core::constructions::{
    bundled_family, ceer_as_coequalizer, counter_pi1_machine, epi_not_onto_example, remark_demo,
    KbarSurrogate,
};
use eeq_core::funlang::FunExpr;
use eeq_core::rel::{approximant, cantor_pair, cantor_proj, equivalence_closure, RelationSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Reflexive-symmetric-transitive fixpoint of a boolean matrix.
fn matrix_closure(pairs: &[(u64, u64)], n: usize) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in pairs {
        m[a as usize][b as usize] = true;
        m[b as usize][a as usize] = true;
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if !m[i][j] && (0..n).any(|k| m[i][k] && m[k][j]) {
                    m[i][j] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return m;
        }
    }
}

fn closure_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    for n in 1..=8usize {
        for set in 0..200 {
            let count = rng.gen_range(0..=2 * n);
            let pairs: Vec<(u64, u64)> = (0..count)
                .map(|_| (rng.gen_range(0..n as u64), rng.gen_range(0..n as u64)))
                .collect();
            let got = equivalence_closure(&pairs, n).map_err(err)?;
            let want = matrix_closure(&pairs, n);
            for (i, row) in want.iter().enumerate() {
                for (j, &expected) in row.iter().enumerate() {
                    let related = got.related(i as u64, j as u64).map_err(err)?;
                    ensure(related == expected, || {
                        format!("n={n} set={set} pairs={pairs:?} differs at ({i},{j})")
                    })?;
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} generator sets, 0 mismatches"))
}

fn pairing() -> Outcome {
    // walk the diagonals in order: z-th point is (d - y, y)
    let mut z = 0u64;
    let mut d = 0u64;
    while z < 10_000 {
        for y in 0..=d {
            if z >= 10_000 {
                break;
            }
            ensure(cantor_proj(z) == (d - y, y), || format!("cantor_proj({z})"))?;
            z += 1;
        }
        d += 1;
    }
    for x in 0..200 {
        for y in 0..200 {
            let code = cantor_pair(x, y).map_err(err)?;
            ensure(cantor_proj(code) == (x, y), || {
                format!("roundtrip ({x},{y})")
            })?;
        }
    }
    Ok("40000 pairs and 10000 codes exact".into())
}

const PRODUCT_SCOPE: Scope = Scope {
    stage: 32,
    domain: 256,
    codomain: 256,
};

fn universal_suites() -> Outcome {
    let mut sampler = InstanceSampler::new(3, 7);
    let (mut min_candidates, mut mediated) = (usize::MAX, 0);
    for i in 0..100u64 {
        let cfg = CandidateConfig {
            seed: 1000 + i,
            cap: 7,
            count: 50,
        };
        let (t, r, s) = (sampler.object(), sampler.object(), sampler.object());
        // legs below 11 keep every mediator code below cantor_pair(10, 10) = 220
        let rho_r = sampler.morphism(&t, &r, 11, PRODUCT_SCOPE).map_err(err)?;
        let rho_s = sampler.morphism(&t, &s, 11, PRODUCT_SCOPE).map_err(err)?;
        let top = FunExpr::pair(rho_r.fun.clone(), rho_s.fun.clone())
            .eval_range(PRODUCT_SCOPE.domain)
            .map_err(err)?
            .into_iter()
            .max()
            .unwrap_or(0);
        ensure(top < 256, || format!("instance {i}: mediator code {top}"))?;
        let product = product_laws(&rho_r, &rho_s, PRODUCT_SCOPE, cfg).map_err(err)?;
        ensure(product.holds(), || {
            format!("product instance {i}: {product:?}")
        })?;

        let into_r = sampler.morphism(&r, &t, 256, PRODUCT_SCOPE).map_err(err)?;
        let into_s = sampler.morphism(&s, &t, 256, PRODUCT_SCOPE).map_err(err)?;
        let coproduct = coproduct_laws(&into_r, &into_s, PRODUCT_SCOPE, cfg).map_err(err)?;
        ensure(coproduct.holds(), || {
            format!("coproduct instance {i}: {coproduct:?}")
        })?;

        min_candidates = min_candidates
            .min(product.candidates)
            .min(coproduct.candidates);
        mediated += product.commuting + coproduct.commuting;
    }
    ensure(min_candidates >= 50, || {
        format!("only {min_candidates} candidates")
    })?;
    Ok(format!(
        "100 instances, >= {min_candidates} candidates each, {mediated} commuting candidates all equal to the mediator"
    ))
}

fn coequalizers() -> Outcome {
    let scope = Scope::new(32, 128);
    let (s, n) = (scope.stage, scope.domain);
    let mut sampler = InstanceSampler::new(4, 7);
    for i in 0..100u64 {
        let (x, y) = (sampler.object(), sampler.object());
        let alpha = sampler.morphism(&x, &y, n as u64, scope).map_err(err)?;
        let beta = sampler.morphism(&x, &y, n as u64, scope).map_err(err)?;
        let cfg = CandidateConfig {
            seed: 2000 + i,
            cap: 7,
            count: 50,
        };
        let report = coequalizer_laws(&alpha, &beta, scope, cfg).map_err(err)?;
        ensure(report.holds(), || format!("instance {i}: {report:?}"))?;

        // independent oracle: closure of Y's classes and the generated pairs
        let z = approximant(&coequalizer(&alpha, &beta).map_err(err)?.spec, s, n).map_err(err)?;
        let yw = approximant(&y, s, n).map_err(err)?;
        let mut pairs: Vec<(u64, u64)> = (0..n as u64).map(|v| (v, yw.rep_unchecked(v))).collect();
        for v in 0..s {
            let (a, b) = (
                alpha.fun.eval(v).map_err(err)?,
                beta.fun.eval(v).map_err(err)?,
            );
            if a < n as u64 && b < n as u64 {
                pairs.push((a, b));
            }
        }
        let oracle = equivalence_closure(&pairs, n).map_err(err)?;
        ensure(z.same_partition(&oracle), || {
            format!("instance {i}: Z differs from closure")
        })?;
        for v in 0..s.min(n as u64) {
            let (a, b) = (
                alpha.fun.eval(v).map_err(err)?,
                beta.fun.eval(v).map_err(err)?,
            );
            if a < n as u64 && b < n as u64 {
                ensure(z.related(a, b).map_err(err)?, || {
                    format!("instance {i}: gamma alpha and gamma beta differ at {v}")
                })?;
            }
        }
    }
    Ok("100 instances, Z equals the closure oracle".into())
}

fn ceer_roundtrip() -> Outcome {
    let mut sampler = InstanceSampler::new(5, 7);
    for i in 0..50 {
        let h = sampler.pair_table(32, 24);
        let run = ceer_as_coequalizer(&h, 32, 32).map_err(err)?;
        ensure(run.roundtrip, || format!("h #{i}: roundtrip false"))?;
        let pairs: Vec<(u64, u64)> = (0..32)
            .map(|x| h.eval(x).map(cantor_proj))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let oracle = equivalence_closure(&pairs, 32).map_err(err)?;
        let z = approximant(&run.z, 32, 32).map_err(err)?;
        ensure(z.same_partition(&oracle), || {
            format!("h #{i}: Z differs from closure")
        })?;
    }
    Ok("50 table-backed enumerations round-trip".into())
}

fn counter_pi1() -> Outcome {
    let family = bundled_family();
    let run = counter_pi1_machine(&family, 64, 64).map_err(err)?;
    let z = approximant(&run.z, run.z_stage, 64).map_err(err)?;
    ensure(z.classes_count() == 2, || {
        format!("{} classes", z.classes_count())
    })?;
    for e in 0..family.indices() {
        let in_v = family.member_limit(e, e + 2);
        let related = z.related(0, e + 2).map_err(err)?;
        ensure(related == !in_v, || format!("diagonal fails at e={e}"))?;
    }
    ensure(run.diagnostics.passed(), || run.diagnostics.to_string())?;
    Ok(format!("classes=2, diagonal 8/8, U={:?}", run.u))
}

fn epi_not_onto() -> Outcome {
    let k = KbarSurrogate::bundled();
    let ex = epi_not_onto_example(&k, 64, 64).map_err(err)?;
    // oracle: x in K by stage 64 isolates 2x and 2x+1; the rest split by parity
    let isolated: Vec<u64> = k
        .events()
        .iter()
        .filter(|&&(_, t)| t <= 64)
        .flat_map(|&(x, _)| [2 * x, 2 * x + 1])
        .filter(|&v| v < 64)
        .collect();
    let a: Vec<u64> = (0..64)
        .filter(|v| v % 2 == 0 && !isolated.contains(v))
        .collect();
    let b: Vec<u64> = (0..64)
        .filter(|v| v % 2 == 1 && !isolated.contains(v))
        .collect();
    ensure(ex.a == a && ex.b == b, || {
        format!("A={:?} B={:?}", ex.a, ex.b)
    })?;
    ensure(ex.diagnostics.passed(), || ex.diagnostics.to_string())?;

    let onto = surjective_at(&ex.alpha, ex.scope).map_err(err)?;
    match onto {
        Verdict::Counterexample(Witness::Missed(missed)) => {
            ensure(missed == vec![a[0], b[0]], || format!("missed {missed:?}"))?;
            Ok(format!(
                "reduction ok, omitted classes of {} and {}",
                a[0], b[0]
            ))
        }
        other => Err(format!("surjective_at gave {other}")),
    }
}

fn separation_pairs() -> Outcome {
    let scope = Scope::new(32, 32);
    let mut sampler = InstanceSampler::new(8, 7);
    let mut found = 0;
    let mut draws = 0;
    while found < 50 {
        draws += 1;
        ensure(draws < 5000, || {
            format!("only {found} non-injective morphisms")
        })?;
        let source = sampler.object();
        let target = RelationSpec::IdN(3);
        let gamma = sampler.morphism(&source, &target, 3, scope).map_err(err)?;
        if injective_at(&gamma, scope)
            .map_err(err)?
            .witness()
            .is_none()
        {
            continue;
        }
        found += 1;
        let (a, b) = mono_separation_pair(&gamma, scope, None)
            .map_err(err)?
            .ok_or_else(|| format!("draw {draws}: no pair for a non-injective map"))?;
        ensure(!morphism_eq(&a, &b, scope).map_err(err)?, || {
            format!("draw {draws}: originals agree")
        })?;
        let (ga, gb) = (
            compose(&gamma, &a, scope).map_err(err)?,
            compose(&gamma, &b, scope).map_err(err)?,
        );
        ensure(morphism_eq(&ga, &gb, scope).map_err(err)?, || {
            format!("draw {draws}: composites differ")
        })?;
    }
    Ok(format!("50 separation pairs from {draws} draws"))
}

fn terminal_initial() -> Outcome {
    let scope = Scope::new(64, 64);
    let mut sampler = InstanceSampler::new(9, 7);
    let objects = [
        RelationSpec::IdAll,
        RelationSpec::IdN(3),
        sampler.ceer(40, 8, 30),
    ];
    for (i, x) in objects.iter().enumerate() {
        let cfg = CandidateConfig {
            seed: 9 + i as u64,
            cap: 7,
            count: 50,
        };
        let report = terminal_uniqueness(x, scope, cfg).map_err(err)?;
        ensure(report.candidates >= 50 && report.holds(), || {
            format!("object {i}: {report:?}")
        })?;
        let (zero, one) = initial_refutation(x);
        ensure(
            !morphism_eq(&zero, &one, scope.with_codomain(2)).map_err(err)?,
            || format!("object {i}: const 0 and const 1 agree in Id_2"),
        )?;
    }
    let mut into_one = Morphism::new(RelationSpec::IdAll, RelationSpec::IdN(1), FunExpr::Id);
    ensure(into_one.verify(scope).map_err(err)?.is_ok(), || {
        "id into Id_1".into()
    })?;
    Ok("50 candidates into Id_1 agree for 3 objects, Id_2 pair distinct".into())
}

fn remark() -> Outcome {
    let mut sampler = InstanceSampler::new(10, 7);
    let mut objects = vec![RelationSpec::IdAll, RelationSpec::IdN(3)];
    objects.extend((0..10).map(|_| sampler.ceer(40, 8, 30)));
    for (i, x) in objects.iter().enumerate() {
        let demo = remark_demo(x, 64, 64).map_err(err)?;
        ensure(demo.classes == 1, || {
            format!("object {i}: {} classes", demo.classes)
        })?;
    }
    Ok("12 objects collapse to one class".into())
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_eeq");
    let commands: &[&[&str]] = &[
        &["--scope", "1,9", "show", "idn3"],
        &["verify", "reduction", "f=id", "R=idn4", "S=idn2"],
        &["--seed", "42", "verify", "coeq-laws"],
        &[
            "--seed",
            "42",
            "--scope",
            "16,32",
            "verify",
            "product-laws",
            "instances=3",
        ],
        &[
            "--seed",
            "42",
            "--scope",
            "16,32",
            "verify",
            "coproduct-laws",
            "instances=3",
        ],
        &["--seed", "7", "verify", "terminal", "R=id"],
        &["construct", "counter-pi1"],
        &["construct", "epi-not-onto"],
        &["construct", "ceer-coeq", "h=table{0->1, 1->8} else const 0"],
        &["construct", "remark", "X=idn3"],
        &[
            "--seed",
            "5",
            "construct",
            "darkstar",
            "X=idn3",
            "Y=id",
            "light=id",
        ],
    ];
    for args in commands {
        let run = || -> Result<(Vec<u8>, Option<i32>), String> {
            let out = Command::new(bin)
                .arg("--format")
                .arg("structured")
                .args(*args)
                .output()
                .map_err(err)?;
            Ok((out.stdout, out.status.code()))
        };
        let (first, second) = (run()?, run()?);
        ensure(!first.0.is_empty(), || format!("{args:?}: no output"))?;
        ensure(first == second, || format!("{args:?}: runs differ"))?;
    }
    let dirs = [
        tempfile::tempdir().map_err(err)?,
        tempfile::tempdir().map_err(err)?,
    ];
    let mut files = 0;
    for which in ["counter-pi1", "epi-not-onto"] {
        for dir in &dirs {
            let status = Command::new(bin)
                .args(["construct", which, "--out"])
                .arg(dir.path())
                .status()
                .map_err(err)?;
            ensure(status.success(), || {
                format!("construct {which} --out failed")
            })?;
        }
        for ext in ["diag", "trace"] {
            let name = format!("{which}.{ext}");
            let read = |d: &tempfile::TempDir| std::fs::read(d.path().join(&name)).map_err(err);
            ensure(read(&dirs[0])? == read(&dirs[1])?, || {
                format!("{name} differs")
            })?;
            files += 1;
        }
    }
    Ok(format!(
        "{} commands and {files} artifact files byte-identical",
        commands.len()
    ))
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "closure-oracle",
            limit: secs(5),
            run: closure_oracle,
        },
        Criterion {
            id: 2,
            name: "pairing",
            limit: secs(1),
            run: pairing,
        },
        Criterion {
            id: 3,
            name: "product-coproduct",
            limit: secs(60),
            run: universal_suites,
        },
        Criterion {
            id: 4,
            name: "coequalizer",
            limit: secs(30),
            run: coequalizers,
        },
        Criterion {
            id: 5,
            name: "ceer-roundtrip",
            limit: secs(10),
            run: ceer_roundtrip,
        },
        Criterion {
            id: 6,
            name: "counter-pi1",
            limit: secs(5),
            run: counter_pi1,
        },
        Criterion {
            id: 7,
            name: "epi-not-onto",
            limit: secs(5),
            run: epi_not_onto,
        },
        Criterion {
            id: 8,
            name: "separation-pairs",
            limit: secs(10),
            run: separation_pairs,
        },
        Criterion {
            id: 9,
            name: "terminal-initial",
            limit: secs(5),
            run: terminal_initial,
        },
        Criterion {
            id: 10,
            name: "remark",
            limit: secs(5),
            run: remark,
        },
        Criterion {
            id: 11,
            name: "determinism",
            limit: secs(10),
            run: determinism,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(_) if elapsed > c.limit => ("FAIL", "over time limit".to_string()),
            Ok(detail) => ("PASS", detail),
            Err(why) => ("FAIL", why),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<18} {status} {:>7.2}s (limit {}s) {detail}",
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
