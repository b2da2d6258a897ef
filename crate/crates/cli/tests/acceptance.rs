//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Every comparison is exact; the only tolerances are the runtime budgets
//! below. Criterion 11 is expected to fail (see the README), so the target
//! succeeds iff the set of failing criteria is exactly `EXPECTED_FAILURES`.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use twistlab::ffla::PrimeField;
use twistlab::frob::{self, BracketValue, Shortcut, VerdictStatus};
use twistlab::permgrp::{Perm, PermGroup, SubgroupEmbedding};
use twistlab::repmod::{self, GModule};
use twistlab::superrep::super_space;
use twistlab::sympow::{self, Partition};
use twistlab::theorems::{self, cp_types, iterated_triv_dims, klein_four_module, CheckParams, Profile};
use twistlab::verlinde::{self, VerObject};

const CAP: usize = 5_000_000;
const GAMMAVER_BUDGET: Duration = Duration::from_secs(60);
const PROPGREEN_BUDGET: Duration = Duration::from_secs(120);
const SUITE_BUDGET: Duration = Duration::from_secs(600);
const EXPECTED_FAILURES: &[u32] = &[11];

type Verdict = Result<String, String>;

fn k(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn cli(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_twistlab")).args(args).output().expect("binary runs");
    let doc = serde_json::from_slice(&out.stdout).expect("stdout is one JSON document");
    (out.status.code().unwrap_or(-1), doc)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn check_passes(name: &str, params: &CheckParams) -> Result<usize, String> {
    let r = theorems::run_check(name, params).map_err(|e| format!("{name}: {e}"))?;
    if let Some(f) = r.failures.first() {
        return Err(format!("{name}: {} of {} failed, first: {}", r.failures.len(), r.instances_run, f.reason));
    }
    Ok(r.instances_run)
}

fn c1_gammaver() -> Verdict {
    let start = Instant::now();
    let mut n = 0;
    for p in [3u32, 5, 7] {
        for j in 2..p as usize {
            let deg = (p as usize - j + 1).to_string();
            for op in ["sym", "gamma"] {
                let (code, doc) = cli(&["verlinde", op, "--p", &p.to_string(), "--i", &j.to_string(), "--n", &deg]);
                let zero = doc["result"]["multiplicities"].as_array().is_some_and(|m| m.iter().all(|v| v == 0));
                ensure(code == 0 && zero, format!("{op}^{deg} M̄_{j} at p = {p}: {}", doc["result"]))?;
                n += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < GAMMAVER_BUDGET, format!("took {t:?}"))?;
    Ok(format!("{n} vanishing powers in {:.1?}", t))
}

fn c2_klein() -> Verdict {
    let h = PermGroup::new(4, vec![Perm::transposition(4, 0, 1)], "<a>").unwrap();
    let dims = iterated_triv_dims(&klein_four_module(), &h).map_err(|e| e.to_string())?;
    ensure(dims == (0, 1), format!("dims {dims:?}"))?;
    Ok("Triv_G X = 0, dim Triv_{G/H} Triv_H X = 1".into())
}

fn c3_super_twist() -> Verdict {
    for p in [3, 5] {
        let t = frob::fr_plus(&super_space(k(p), 1, 1).unwrap(), 1, CAP).map_err(|e| e.to_string())?;
        ensure(t.object.super_dim() == (1, 0), format!("p = {p}: super dim {:?}", t.object.super_dim()))?;
        ensure(t.object.parity().is_none_or(|v| v == [0]), format!("p = {p}: parity {:?}", t.object.parity()))?;
    }
    Ok("Fr+ k^{1|1} = k^{1|0} at p = 3, 5".into())
}

fn c4_ver_twist() -> Verdict {
    let mut n = 0;
    for p in [3u32, 5] {
        for d in 1..=5 {
            for sizes in cp_types(p, d) {
                let x = GModule::cp_module(p, &sizes).unwrap();
                let ones = sizes.iter().filter(|&&s| s == 1).count();
                let got = verlinde::fr_plus_ver(&x).map_err(|e| e.to_string())?;
                let want = VerObject::simple(p, 1).unwrap().scale(ones);
                ensure(got == want, format!("p = {p}, M_{sizes:?}: {:?}", got.multiplicities))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} direct sums over C_3 and C_5"))
}

fn c5_propgreen() -> Verdict {
    let start = Instant::now();
    let mut n = 0;
    for d in 1..=3 {
        for sizes in cp_types(2, d) {
            let x = GModule::cp_module(2, &sizes).unwrap();
            let a = frob::triv_dim_on_route(&x, 2, Shortcut::Symmetric, CAP).map_err(|e| e.to_string())?;
            let b = frob::triv_dim_on_route(&x, 2, Shortcut::Wreath, CAP).map_err(|e| e.to_string())?;
            ensure(a == b, format!("M_{sizes:?}: S_4 gives {a}, Q_2 gives {b}"))?;
            n += 1;
        }
    }
    let x = GModule::trivial(PermGroup::cyclic(3), k(3), 2);
    let a = frob::triv_dim_on_route(&x, 2, Shortcut::Symmetric, CAP).map_err(|e| e.to_string())?;
    let b = frob::triv_dim_on_route(&x, 2, Shortcut::Wreath, CAP).map_err(|e| e.to_string())?;
    ensure(a == b, format!("k^2 at p = 3: S_9 gives {a}, Q_2 gives {b}"))?;
    let t = start.elapsed();
    ensure(t < PROPGREEN_BUDGET, format!("took {t:?}"))?;
    Ok(format!("{} modules, S_9 vs Q_2 dim {a}, {:.1?}", n + 1, t))
}

fn c6_additivity() -> Verdict {
    let mut n = 0;
    for p in [2, 3] {
        let params = CheckParams { p: Some(p), trials: Some(20), seed: 0, ..CheckParams::default() };
        n += check_passes("addfrob", &params)?;
        n += check_passes("lemexex", &params)?;
    }
    Ok(format!("{n} seeded instances"))
}

fn c7_exactness() -> Verdict {
    let params = CheckParams { profile: Profile::Full, ..CheckParams::default() };
    let n = check_passes("coolthm_exactness", &params)?;
    Ok(format!("{n} short exact sequences, dim V <= 6, p = 2, 3"))
}

fn c8_alpha() -> Verdict {
    Ok(format!("{} invariant lines", check_passes("thm1p_alpha", &CheckParams::default())?))
}

fn c9_theta() -> Verdict {
    Ok(format!("{} (sequence, n) pairs", check_passes("theta_sigma", &CheckParams::default())?))
}

/// Modules of dim <= 3 over `S_3` built from the trivial, sign and standard representations.
fn s3_modules(p: u32) -> Vec<GModule> {
    let g = PermGroup::symmetric(3);
    let f = k(p);
    let one = GModule::trivial(g.clone(), f, 1);
    let sgn = GModule::sign(g.clone(), f);
    let std = sympow::specht(f, &Partition::new(vec![2, 1]).unwrap()).unwrap().module;
    let sum = |a: &GModule, b: &GModule| repmod::direct_sum(a, b).unwrap();
    vec![
        one.clone(),
        sgn.clone(),
        std.clone(),
        GModule::permutation(g.clone(), f),
        sum(&one, &sgn),
        sum(&sgn, &sgn),
        sum(&std, &sgn),
        sum(&sum(&one, &sgn), &sgn),
    ]
}

fn c10_locally_free() -> Verdict {
    let mut n = 0;
    for p in [2u32, 3] {
        let mut xs: Vec<GModule> = (1..=3).flat_map(|d| cp_types(p, d)).map(|s| GModule::cp_module(p, &s).unwrap()).collect();
        xs.extend(s3_modules(p));
        for x in xs {
            let v = frob::check_locally_free(&x, 2, None, CAP).map_err(|e| e.to_string())?;
            ensure(
                v.status == VerdictStatus::HoldsUpToBound && v.value == BracketValue::Finite(x.dim()),
                format!("{} of dim {} at p = {p}: {:?}, bracket {:?}", x.group().name(), x.dim(), v.status, v.value),
            )?;
            n += 1;
        }
    }
    let v = frob::check_locally_free(&super_space(k(3), 1, 1).unwrap(), 2, None, CAP).map_err(|e| e.to_string())?;
    ensure(v.status == VerdictStatus::Fails && v.definitive, format!("k^{{1|1}}: {:?}", v.status))?;
    Ok(format!("{n} modules hold with bracket = dim, k^{{1|1}} fails definitively at {:?}", v.witness.unwrap()))
}

fn c11_super_tannakian() -> Verdict {
    let mut bad = Vec::new();
    for (m, n) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let x = super_space(k(3), m, n).unwrap();
        let v = frob::check_locally_super_free(&x, 2, CAP).map_err(|e| e.to_string())?;
        if !v.holds {
            bad.push(format!("k^{{{m}|{n}}}: Γ_{:?} has dim {:?}", v.partition.unwrap_or_default(), v.gamma_dim));
        }
    }
    ensure(bad.is_empty(), bad.join("; "))?;
    Ok("all four super spaces".into())
}

fn c12_battery() -> Verdict {
    let mut n = 0;
    for name in ["mackey", "lempfff", "corindex", "dirsumm", "lemrepg", "lemspecht", "propgreen"] {
        n += check_passes(name, &CheckParams::default())?;
    }
    // Ind(X ⊗ Res Y) ≅ Ind X ⊗ Y for every subgroup of S_3
    let g = PermGroup::symmetric(3);
    for p in [2u32, 3] {
        let f = k(p);
        let ys = s3_modules(p);
        for gens in [vec![], vec![Perm::transposition(3, 0, 1)], vec![Perm::cycle(3, &[0, 1, 2]).unwrap()]] {
            let h = g.subgroup(&gens, "H").unwrap();
            let e = SubgroupEmbedding::new(h.clone(), g.clone()).unwrap();
            let x = repmod::restrict(&e, &ys[3]).unwrap();
            let x = repmod::direct_sum(&x, &GModule::sign(h.clone(), f)).unwrap();
            for y in &ys[..4] {
                let lhs = repmod::induce(&e, &repmod::tensor(&x, &repmod::restrict(&e, y).unwrap()).unwrap()).unwrap();
                let rhs = repmod::tensor(&repmod::induce(&e, &x).unwrap(), y).unwrap();
                let iso = repmod::iso_test(&lhs, &rhs).map_err(|e| e.to_string())?;
                ensure(lhs.dim() == rhs.dim() && iso.is_isomorphic(), format!("tensor-induction at p = {p}, |H| = {}", h.order()))?;
                n += 1;
            }
        }
    }
    let start = Instant::now();
    let (code, doc) = cli(&["suite", "quick", "--seed", "0"]);
    let t = start.elapsed();
    ensure(t < SUITE_BUDGET, format!("suite quick took {t:?}"))?;
    let failing: Vec<&str> = doc["result"]
        .as_array()
        .ok_or("suite emitted no report array")?
        .iter()
        .filter(|r| !r["failures"].as_array().is_some_and(|f| f.is_empty()))
        .filter_map(|r| r["check_name"].as_str())
        .collect();
    // the rectangle check carries the known criterion 11 failure
    ensure(code == 1 && failing == ["thmsto_rect"], format!("suite quick: exit {code}, failing {failing:?}"))?;
    Ok(format!("{n} battery instances, suite quick in {:.1?}", t))
}

fn main() {
    let criteria: [(u32, &str, fn() -> Verdict); 12] = [
        (1, "Sym/Γ of simples vanish in ver_p", c1_gammaver),
        (2, "Klein-four iterated Triv", c2_klein),
        (3, "Fr+ of a super space", c3_super_twist),
        (4, "Fr+ in ver_p counts unit summands", c4_ver_twist),
        (5, "S_{p^j} and Q_j routes agree", c5_propgreen),
        (6, "additivity of twists and brackets", c6_additivity),
        (7, "Fr+ is exact on Rep C_p", c7_exactness),
        (8, "α^p is nonzero", c8_alpha),
        (9, "θ_Σ on short exact sequences", c9_theta),
        (10, "locally-free criterion on Rep G", c10_locally_free),
        (11, "super tannakian rectangle criterion", c11_super_tannakian),
        (12, "representation-calculus battery", c12_battery),
    ];
    let mut failed = Vec::new();
    for (id, title, run) in criteria {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {id:>2} PASS  {title} ({detail}) [{secs:.1}s]"),
            Err(why) => {
                println!("criterion {id:>2} FAIL  {title}: {why} [{secs:.1}s]");
                failed.push(id);
            }
        }
    }
    if failed != EXPECTED_FAILURES {
        println!("unexpected outcome: failing criteria {failed:?}, expected {EXPECTED_FAILURES:?}");
        std::process::exit(1);
    }
    println!("acceptance: {} of 12 pass; criterion 11 fails as documented", 12 - failed.len());
}
