//! Named batteries of instances, each asserting one structural property.
//!
//! A check enumerates or samples instances deterministically from its
//! parameters. Every instance has a stable index, so a failure is replayed by
//! rerunning the check with `instance` set to that index.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{input, Error, Result};
use crate::ffla::{FieldMatrix, PrimeField, Subspace};
use crate::frob::{
    alpha_power, bracket_one, check_theta, fr_external, fr_internal, fr_minus, fr_plus, fr_plus_iterated, fr_plus_mor,
    triv_dim_on_route, triv_module_on_route, BracketValue, Shortcut, ShortExact, SymRealization,
};
use crate::io::module_to_json;
use crate::permgrp::{double_coset_reps, left_coset_reps, Perm, PermGroup, SubgroupEmbedding};
use crate::repmod::{
    augmentation, direct_sum, dual, h_0, h0, hom_dim, induce, invariants, iso_test, restrict_to, tensor,
    triv_dim, GModMorphism, GModule, IsoResult, SubquotientPresentation,
};
use crate::rng::SplitMix64;
use crate::superrep::super_space;
use crate::sympow::{check_branching, gamma_lambda_dim, hook_length_dim, partitions, specht, Partition, DEFAULT_MAX_ENTRIES};
use crate::verlinde::{fr_plus_ver, semisimplify, ver_gamma_power, ver_sym_power, VerObject};

/// Every check, in report order.
pub const CHECK_NAMES: [&str; 19] = [
    "addfrob",
    "coolthm_exactness",
    "corindex",
    "dirsumm",
    "examtwist2",
    "gammaver",
    "klein_four_example",
    "lemexex",
    "lemj",
    "lempfff",
    "lempowers",
    "lemrepg",
    "lemspecht",
    "mackey",
    "propgreen",
    "remmon2",
    "theta_sigma",
    "thm1p_alpha",
    "thmsto_rect",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckParams {
    /// Restricts the check to one prime; `None` uses the check's own list.
    pub p: Option<u32>,
    /// Number of sampled instances for randomized checks.
    pub trials: Option<usize>,
    pub seed: u64,
    pub profile: Profile,
    pub max_entries: usize,
    /// Overrides the per-check twist depth where one is used.
    pub max_j: Option<u32>,
    /// Runs only the instance with this index.
    pub instance: Option<usize>,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams { p: None, trials: None, seed: 0, profile: Profile::Quick, max_entries: DEFAULT_MAX_ENTRIES, max_j: None, instance: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: usize,
    /// `mismatch`, or the error kind that aborted the instance.
    pub kind: String,
    pub reason: String,
    /// Modules and parameters of the instance.
    pub descriptor: Value,
    /// Parameters that rerun exactly this instance.
    pub replay: CheckParams,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    /// What the check asserts.
    pub anchor: String,
    pub instances_run: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    pub bounds: Value,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Outcome = std::result::Result<(), String>;

struct Runner<'a> {
    params: &'a CheckParams,
    report: CheckReport,
    next: usize,
}

impl<'a> Runner<'a> {
    fn new(name: &str, anchor: &str, params: &'a CheckParams) -> Self {
        let report = CheckReport {
            check_name: name.into(),
            anchor: anchor.into(),
            instances_run: 0,
            passes: 0,
            failures: vec![],
            bounds: Value::Null,
        };
        Runner { params, report, next: 0 }
    }

    /// Runs one instance unless a single other instance was requested.
    fn case(&mut self, descriptor: impl FnOnce() -> Value, body: impl FnOnce() -> Result<Outcome>) {
        let idx = self.next;
        self.next += 1;
        if self.params.instance.is_some_and(|i| i != idx) {
            return;
        }
        self.report.instances_run += 1;
        let (kind, reason) = match body() {
            Ok(Ok(())) => {
                self.report.passes += 1;
                return;
            }
            Ok(Err(reason)) => ("mismatch".to_string(), reason),
            Err(e) => (e.kind().to_string(), e.to_string()),
        };
        let replay = CheckParams { instance: Some(idx), ..self.params.clone() };
        self.report.failures.push(Failure { instance: idx, kind, reason, descriptor: descriptor(), replay });
    }

    fn finish(mut self, bounds: Value) -> CheckReport {
        self.report.bounds = bounds;
        self.report
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn primes(params: &CheckParams, default: &[u32]) -> Result<Vec<u32>> {
    match params.p {
        Some(p) => {
            PrimeField::new(p)?;
            Ok(vec![p])
        }
        None => Ok(default.to_vec()),
    }
}

fn full(params: &CheckParams) -> bool {
    params.profile == Profile::Full
}

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).expect("primes are validated before use")
}

/// Runs the named check.
pub fn run_check(name: &str, params: &CheckParams) -> Result<CheckReport> {
    match name {
        "mackey" => mackey(params),
        "lempfff" => lempfff(params),
        "corindex" => corindex(params),
        "dirsumm" => dirsumm(params),
        "propgreen" => propgreen(params),
        "addfrob" => addfrob(params),
        "lempowers" => lempowers(params),
        "lemj" => lemj(params),
        "remmon2" => remmon2(params),
        "coolthm_exactness" => coolthm_exactness(params),
        "thm1p_alpha" => thm1p_alpha(params),
        "theta_sigma" => theta_sigma(params),
        "lemrepg" => lemrepg(params),
        "gammaver" => gammaver(params),
        "examtwist2" => examtwist2(params),
        "lemspecht" => lemspecht(params),
        "thmsto_rect" => thmsto_rect(params),
        "lemexex" => lemexex(params),
        "klein_four_example" => klein_four_example(params),
        _ => input(format!("unknown check {name:?}; known checks: {}", CHECK_NAMES.join(", "))),
    }
}

/// Runs every check with default parameters for the profile; reports are in name order.
pub fn run_suite(profile: Profile, seed: u64) -> Result<Vec<CheckReport>> {
    let params = CheckParams { profile, seed, ..CheckParams::default() };
    std::thread::scope(|s| {
        let handles: Vec<_> = CHECK_NAMES.iter().map(|name| s.spawn(|| run_check(name, &params))).collect();
        handles.into_iter().map(|h| h.join().map_err(|_| Error::Internal("check thread panicked".into()))?).collect()
    })
}

// ---------------------------------------------------------------- instances

/// Partitions of `d` into parts of size at most `p`: the Jordan types over `C_p`.
pub fn cp_types(p: u32, d: usize) -> Vec<Vec<usize>> {
    partitions(d).into_iter().map(|l| l.parts().to_vec()).filter(|l| l.iter().all(|&k| k <= p as usize)).collect()
}

fn cp_types_up_to(p: u32, max_dim: usize) -> Vec<Vec<usize>> {
    (1..=max_dim).flat_map(|d| cp_types(p, d)).collect()
}

fn random_cp(rng: &mut SplitMix64, p: u32, max_dim: usize) -> GModule {
    let mut left = 1 + rng.index(max_dim);
    let mut sizes = Vec::new();
    while left > 0 {
        let k = 1 + rng.index(left.min(p as usize));
        sizes.push(k);
        left -= k;
    }
    GModule::cp_module(p, &sizes).expect("sizes are at most p")
}

fn small_groups() -> Vec<PermGroup> {
    let c = |n: usize, pts: &[usize]| Perm::cycle(n, pts).expect("valid cycle");
    vec![
        PermGroup::symmetric(3).with_name("S3"),
        PermGroup::symmetric(4).with_name("S4"),
        PermGroup::cyclic(4).with_name("C4"),
        PermGroup::new(4, vec![Perm::transposition(4, 0, 1), Perm::transposition(4, 2, 3)], "V4").unwrap(),
        PermGroup::cyclic(6).with_name("C6"),
        PermGroup::new(4, vec![c(4, &[0, 1, 2, 3]), Perm::transposition(4, 0, 2)], "D4").unwrap(),
        PermGroup::new(4, vec![c(4, &[0, 1, 2]), c(4, &[1, 2, 3])], "A4").unwrap(),
    ]
}

/// All subgroups of a small group, each generated by at most two elements.
///
/// Every subgroup of a group of order at most 24 in this list is 2-generated.
fn all_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let elts = g.elements(10_000)?.elements.clone();
    let mut seen: HashSet<Vec<Vec<u32>>> = HashSet::new();
    let mut out = Vec::new();
    for a in 0..elts.len() {
        for b in a..elts.len() {
            let h = PermGroup::generated_by(g.degree(), &[elts[a].clone(), elts[b].clone()], "");
            let mut key: Vec<Vec<u32>> = h.elements(10_000)?.elements.iter().map(|e| e.images().to_vec()).collect();
            key.sort();
            if seen.insert(key) {
                let name = format!("{}<{}>", g.name(), out.len());
                out.push(h.with_name(name));
            }
        }
    }
    out.sort_by_key(|h| h.order());
    Ok(out)
}

/// One subgroup per conjugacy class.
fn subgroup_classes(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let elts = g.elements(10_000)?.elements.clone();
    let mut seen: HashSet<Vec<Vec<u32>>> = HashSet::new();
    let mut out = Vec::new();
    for h in all_subgroups(g)? {
        let key = |k: &PermGroup| -> Result<Vec<Vec<u32>>> {
            let mut v: Vec<Vec<u32>> = k.elements(10_000)?.elements.iter().map(|e| e.images().to_vec()).collect();
            v.sort();
            Ok(v)
        };
        if seen.contains(&key(&h)?) {
            continue;
        }
        for s in &elts {
            seen.insert(key(&h.conjugate(s))?);
        }
        out.push(h);
    }
    Ok(out)
}

/// Modules over a subgroup `h` of `g` restricted from simple constructions on `g`.
fn restricted_pool(g: &PermGroup, h: &PermGroup, f: PrimeField) -> Result<Vec<GModule>> {
    Ok(vec![
        GModule::trivial(h.clone(), f, 1),
        restrict_to(&GModule::sign(g.clone(), f), h)?,
        restrict_to(&GModule::permutation(g.clone(), f), h)?,
    ])
}

fn random_sum(rng: &mut SplitMix64, pool: &[GModule]) -> Result<GModule> {
    let a = &pool[rng.index(pool.len())];
    if rng.below(2) == 0 {
        return Ok(a.clone());
    }
    direct_sum(a, &pool[rng.index(pool.len())])
}

struct Triple {
    g: PermGroup,
    emb: SubgroupEmbedding,
    x: GModule,
    p: u32,
}

fn random_triples(params: &CheckParams, default_trials: usize, ps: &[u32]) -> Result<Vec<Triple>> {
    let mut rng = SplitMix64::new(params.seed);
    let groups = small_groups();
    let mut subgroups = Vec::new();
    for g in &groups {
        subgroups.push(all_subgroups(g)?);
    }
    let mut out = Vec::new();
    for _ in 0..params.trials.unwrap_or(default_trials) {
        let gi = rng.index(groups.len());
        let g = &groups[gi];
        let h = &subgroups[gi][rng.index(subgroups[gi].len())];
        let p = ps[rng.index(ps.len())];
        let pool = restricted_pool(g, h, field(p))?;
        let x = random_sum(&mut rng, &pool)?;
        out.push(Triple { g: g.clone(), emb: SubgroupEmbedding::new(h.clone(), g.clone())?, x, p });
    }
    Ok(out)
}

fn triple_descriptor(t: &Triple) -> Value {
    json!({
        "p": t.p,
        "group": crate::io::GroupJson::from_group(&t.g),
        "subgroup": crate::io::GroupJson::from_group(&t.emb.sub),
        "module": module_to_json(&t.x),
    })
}

/// Submodule spanned by the orbit of `v`.
fn cyclic_submodule(x: &GModule, v: &[u32]) -> Subspace {
    let f = x.field();
    let mut vecs = vec![v.to_vec()];
    let mut span = Subspace::from_vectors(f, x.dim(), &vecs);
    let mut head = 0;
    while head < vecs.len() {
        let w = vecs[head].clone();
        head += 1;
        for g in x.generator_matrices() {
            let gw = g.apply(&w);
            if !span.contains(&gw).expect("same ambient") {
                vecs.push(gw);
                span = Subspace::from_vectors(f, x.dim(), &vecs);
            }
        }
    }
    span
}

/// Nonzero vectors with leading coefficient 1.
fn projective_points(f: PrimeField, d: usize) -> Vec<Vec<u32>> {
    let p = f.p();
    let total = (p as usize).pow(d as u32);
    (1..total)
        .map(|mut k| {
            let mut v = vec![0u32; d];
            for c in v.iter_mut().rev() {
                *c = (k % p as usize) as u32;
                k /= p as usize;
            }
            v
        })
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect()
}

/// Proper nonzero submodules of `x` generated by at most `depth` elements.
///
/// Every submodule is a sum of cyclic ones, so `depth >= dim x` gives all of them.
fn submodules(x: &GModule, depth: usize) -> Vec<Subspace> {
    let f = x.field();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut cyclic = Vec::new();
    for v in projective_points(f, x.dim()) {
        let s = cyclic_submodule(x, &v);
        if seen.insert(s.basis().data().to_vec()) {
            cyclic.push(s);
        }
    }
    let mut out = cyclic.clone();
    let mut frontier = cyclic.clone();
    for _ in 1..depth.min(x.dim()) {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                let t = s.sum(c).expect("same ambient");
                if t.dim() > s.dim() && seen.insert(t.basis().data().to_vec()) {
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.retain(|s| s.dim() > 0 && s.dim() < x.dim());
    out
}

/// `0 -> U -> V -> V/U -> 0` with the echelon bases of `U` and of the quotient.
pub fn short_exact_from_sub(v: &GModule, u: &Subspace) -> Result<ShortExact> {
    let f = v.field();
    let d = v.dim();
    let sub = SubquotientPresentation::new(v, u.clone(), Subspace::zero(f, d))?;
    let quo = SubquotientPresentation::new(v, Subspace::full(f, d), u.clone())?;
    let inc = FieldMatrix::from_row_vectors(f, d, &sub.lifts).transpose();
    let mut proj = FieldMatrix::zeros(f, quo.dim(), d);
    for k in 0..d {
        let mut e = vec![0u32; d];
        e[k] = 1;
        let c = quo.coordinates(&e).expect("every vector lies in the full space");
        for (r, x) in c.into_iter().enumerate() {
            proj.set(r, k, x);
        }
    }
    ShortExact::new(GModMorphism::new(sub.module, v.clone(), inc)?, GModMorphism::new(v.clone(), quo.module, proj)?)
}

/// Short exact sequences of `C_p`-modules with middle term of dimension at most `max_dim`.
///
/// Sub-objects are all submodules when `dim V <= all_up_to`, else those generated by two elements.
pub fn cp_short_exact_sequences(p: u32, max_dim: usize, all_up_to: usize) -> Result<Vec<(Vec<usize>, ShortExact)>> {
    let mut out = Vec::new();
    for sizes in cp_types_up_to(p, max_dim) {
        let v = GModule::cp_module(p, &sizes)?;
        for u in submodules(&v, if v.dim() <= all_up_to { usize::MAX } else { 2 }) {
            out.push((sizes.clone(), short_exact_from_sub(&v, &u)?));
        }
    }
    Ok(out)
}

fn ses_descriptor(s: &ShortExact) -> Value {
    json!({
        "sub": module_to_json(&s.inclusion.source),
        "middle": module_to_json(&s.inclusion.target),
        "inclusion": s.inclusion.matrix.to_rows(),
        "projection": s.projection.matrix.to_rows(),
    })
}

// ---------------------------------------------------------------- checks

fn fixed_point_profile(x: &GModule, group: &PermGroup) -> Result<Vec<usize>> {
    let elts = group.elements(10_000)?;
    let mats = x.element_matrices(10_000)?;
    let id = FieldMatrix::identity(x.field(), x.dim());
    let mut prof: Vec<usize> = mats.iter().map(|m| m.try_sub(&id).map(|d| d.kernel().dim())).collect::<Result<_>>()?;
    debug_assert_eq!(prof.len(), elts.len());
    prof.push(h_0(x)?.dim());
    Ok(prof)
}

fn mackey(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("mackey", "Res_L Ind_H^G X decomposes over the double cosets L s H", params);
    let ps = primes(params, &[2, 3])?;
    for &p in &ps {
        let f = field(p);
        for g in [PermGroup::symmetric(3).with_name("S3"), PermGroup::symmetric(4).with_name("S4")] {
            let subs = if g.degree() == 3 || full(params) { all_subgroups(&g)? } else { subgroup_classes(&g)? };
            for h in &subs {
                let x = if g.degree() == 3 {
                    restrict_to(&GModule::permutation(g.clone(), f), h)?
                } else {
                    direct_sum(&GModule::trivial(h.clone(), f, 1), &restrict_to(&GModule::sign(g.clone(), f), h)?)?
                };
                for l in &subs {
                    r.case(
                        || json!({"p": p, "group": g.name(), "L": crate::io::GroupJson::from_group(l), "H": crate::io::GroupJson::from_group(h), "module": module_to_json(&x)}),
                        || {
                            let emb = SubgroupEmbedding::new(h.clone(), g.clone())?;
                            let lhs = restrict_to(&induce(&emb, &x)?, l)?;
                            let mut rhs: Option<GModule> = None;
                            for dc in double_coset_reps(l, h, &g)? {
                                let conj = h.conjugate(&dc.rep);
                                let xs = crate::repmod::conjugate_module(&x, &dc.rep, &conj)?;
                                let piece = induce(&dc.intersection, &restrict_to(&xs, &dc.intersection.sub)?)?;
                                rhs = Some(match rhs {
                                    None => piece,
                                    Some(acc) => direct_sum(&acc, &piece)?,
                                });
                            }
                            let rhs = rhs.expect("at least one double coset");
                            if lhs.dim() != rhs.dim() {
                                return Ok(Err(format!("dimensions {} and {}", lhs.dim(), rhs.dim())));
                            }
                            let (a, b) = (fixed_point_profile(&lhs, l)?, fixed_point_profile(&rhs, l)?);
                            if a != b {
                                return Ok(Err(format!("fixed-point profiles differ: {a:?} vs {b:?}")));
                            }
                            if lhs.dim() <= 16 {
                                match iso_test(&lhs, &rhs)? {
                                    IsoResult::Isomorphic(_) => {}
                                    other => return Ok(Err(format!("no isomorphism certificate: {other:?}"))),
                                }
                            }
                            Ok(Ok(()))
                        },
                    );
                }
            }
        }
    }
    Ok(r.finish(json!({"primes": ps, "groups": ["S3", "S4"], "s4_subgroups": if full(params) { "all" } else { "one per conjugacy class" }, "iso_test_max_dim": 16})))
}

fn lempfff(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("lempfff", "H^0 and H_0 commute with induction; Ind is adjoint to Res", params);
    let ps = primes(params, &[2, 3])?;
    for t in random_triples(params, 20, &ps)? {
        r.case(
            || triple_descriptor(&t),
            || {
                let ind = induce(&t.emb, &t.x)?;
                let y = GModule::permutation(t.g.clone(), field(t.p));
                let got = (h0(&ind)?.dim(), h_0(&ind)?.dim(), hom_dim(&ind, &y)?);
                let want = (h0(&t.x)?.dim(), h_0(&t.x)?.dim(), hom_dim(&t.x, &restrict_to(&y, &t.emb.sub)?)?);
                Ok(expect_eq("(H^0, H_0, Hom into the permutation module)", got, want))
            },
        );
    }
    Ok(r.finish(json!({"primes": ps, "trials": params.trials.unwrap_or(20), "groups": "order <= 24"})))
}

fn corindex(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("corindex", "Triv_G Ind_H^G X is 0 if p divides |G:H| and Triv_H X otherwise", params);
    let ps = primes(params, &[2, 3])?;
    for t in random_triples(params, 20, &ps)? {
        r.case(
            || triple_descriptor(&t),
            || {
                let got = triv_dim(&induce(&t.emb, &t.x)?);
                let want = if t.emb.index() % t.p as usize == 0 { 0 } else { triv_dim(&t.x) };
                Ok(expect_eq(&format!("dim Triv of the induced module, index {}", t.emb.index()), got, want))
            },
        );
    }
    Ok(r.finish(json!({"primes": ps, "trials": params.trials.unwrap_or(20)})))
}

/// `Triv` of `res` as `H^0 / (H^0 ∩ augmentation)`, so that lifts are invariants; `ambient` carries the action.
fn triv_on_invariants(ambient: &GModule, res: &GModule) -> Result<SubquotientPresentation> {
    let sub = invariants(res);
    let killed = sub.intersect(&augmentation(res))?;
    SubquotientPresentation::new(ambient, sub, killed)
}

/// Inclusion `Triv_G X -> Triv_H X` followed by the normalized transfer back is the identity.
fn dirsumm_instance(x: &GModule, emb: &SubgroupEmbedding) -> Result<Outcome> {
    let f = x.field();
    let idx = emb.index();
    if idx % f.p() as usize == 0 {
        return input("the index must be prime to p");
    }
    let tg = triv_on_invariants(x, x)?;
    let res = restrict_to(x, &emb.sub)?;
    let th = triv_on_invariants(&res, &res)?;
    if tg.dim() > th.dim() {
        return Ok(Err(format!("dim Triv_G = {} exceeds dim Triv_H = {}", tg.dim(), th.dim())));
    }
    let reps: Vec<FieldMatrix> = left_coset_reps(emb).iter().map(|g| x.element_matrix(g)).collect::<Result<_>>()?;
    let scale = f.inv((idx % f.p() as usize) as u32);
    let transfer = |v: &[u32]| -> Vec<u32> {
        let mut acc = vec![0u32; v.len()];
        for m in &reps {
            for (a, b) in acc.iter_mut().zip(m.apply(v)) {
                *a = f.add(*a, b);
            }
        }
        acc.into_iter().map(|c| f.mul(c, scale)).collect()
    };
    for (k, lift) in tg.lifts.iter().enumerate() {
        let Some(in_h) = th.coordinates(lift) else {
            return Ok(Err("an invariant of G is not an invariant of H".into()));
        };
        // back along the transfer, from the H-side representative
        let rep: Vec<u32> = {
            let mut v = vec![0u32; x.dim()];
            for (c, l) in in_h.iter().zip(&th.lifts) {
                for (a, b) in v.iter_mut().zip(l) {
                    *a = f.add(*a, f.mul(*c, *b));
                }
            }
            v
        };
        // `rep` differs from `lift` by an element of the H-side killed part
        let t = transfer(&rep);
        let Some(back) = tg.coordinates(&t) else {
            return Ok(Err("transfer leaves the G-invariants".into()));
        };
        let mut want = vec![0u32; tg.dim()];
        want[k] = 1;
        if back != want {
            return Ok(Err(format!("retraction composite sends basis vector {k} to {back:?}")));
        }
    }
    for kv in th.killed.basis_vectors() {
        let t = transfer(&kv);
        if tg.coordinates(&t).is_some_and(|c| c.iter().any(|&x| x != 0)) {
            return Ok(Err("transfer does not vanish on the killed part".into()));
        }
    }
    Ok(Ok(()))
}

fn dirsumm(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("dirsumm", "if p does not divide |G:H| then Triv_G X is a direct summand of Triv_H X", params);
    let ps = primes(params, &[2, 3])?;
    let mut rng = SplitMix64::new(params.seed);
    let groups = small_groups();
    let trials = params.trials.unwrap_or(20);
    for _ in 0..trials {
        let g = &groups[rng.index(groups.len())];
        let p = ps[rng.index(ps.len())];
        let f = field(p);
        let subs = all_subgroups(g)?;
        let coprime: Vec<&PermGroup> = subs.iter().filter(|h| (g.order() / h.order()) % p as u128 != 0).collect();
        let proper: Vec<&PermGroup> = coprime.iter().copied().filter(|h| h.order() < g.order()).collect();
        let choice = if proper.is_empty() { &coprime } else { &proper };
        let h = choice[rng.index(choice.len())].clone();
        let k = &subs[rng.index(subs.len())];
        let pool = vec![
            GModule::trivial(g.clone(), f, 1),
            GModule::sign(g.clone(), f),
            GModule::permutation(g.clone(), f),
            induce(&SubgroupEmbedding::new(k.clone(), g.clone())?, &GModule::trivial(k.clone(), f, 1))?,
        ];
        let x = random_sum(&mut rng, &pool)?;
        let emb = SubgroupEmbedding::new(h, g.clone())?;
        let t = Triple { g: g.clone(), emb, x, p };
        r.case(|| triple_descriptor(&t), || dirsumm_instance(&t.x, &t.emb));
    }
    Ok(r.finish(json!({"primes": ps, "trials": trials})))
}

fn propgreen(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("propgreen", "Triv over S_{p^j} agrees with Triv over the wreath tower Q_j", params);
    let ps = primes(params, &[2, 3])?;
    let big = full(params);
    for &p in &ps {
        let mut cases: Vec<(GModule, u32)> = Vec::new();
        let dim1 = if p == 2 { 3 } else if big { 3 } else { 2 };
        for sizes in cp_types_up_to(p, dim1) {
            cases.push((GModule::cp_module(p, &sizes)?, 1));
        }
        let dim2 = match (p, big) {
            (2, _) => 3,
            (3, false) => 0,
            (3, true) => 2,
            _ => 0,
        };
        for sizes in cp_types_up_to(p, dim2) {
            cases.push((GModule::cp_module(p, &sizes)?, 2));
        }
        if p == 3 {
            cases.push((GModule::cp_module(3, &[1, 1])?, 2));
        }
        for (x, j) in cases {
            r.case(
                || json!({"p": p, "j": j, "module": module_to_json(&x)}),
                || {
                    let a = triv_dim_on_route(&x, j, Shortcut::Symmetric, params.max_entries)?;
                    let b = triv_dim_on_route(&x, j, Shortcut::Wreath, params.max_entries)?;
                    if a != b {
                        return Ok(Err(format!("dims {a} over S_{{p^j}} and {b} over Q_j")));
                    }
                    let ma = triv_module_on_route(&x, j, Shortcut::Symmetric, params.max_entries)?;
                    let mb = triv_module_on_route(&x, j, Shortcut::Wreath, params.max_entries)?;
                    if !iso_test(&ma, &mb)?.is_isomorphic() {
                        return Ok(Err("no isomorphism certificate between the two Triv modules".into()));
                    }
                    Ok(Ok(()))
                },
            );
        }
    }
    Ok(r.finish(json!({"primes": ps, "j": [1, 2]})))
}

fn addfrob(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("addfrob", "the Frobenius twists are additive", params);
    let ps = primes(params, &[2, 3])?;
    let trials = params.trials.unwrap_or(20);
    let cap = params.max_entries;
    for &p in &ps {
        let mut rng = SplitMix64::new(params.seed ^ ((p as u64) << 32));
        let max_dim = if p <= 3 { 3 } else { 2 };
        for _ in 0..trials {
            let x = random_cp(&mut rng, p, max_dim);
            let y = random_cp(&mut rng, p, max_dim);
            r.case(
                || json!({"p": p, "x": module_to_json(&x), "y": module_to_json(&y)}),
                || {
                    let s = direct_sum(&x, &y)?;
                    let d = |m: &GModule| -> Result<Vec<usize>> {
                        let mut v = vec![fr_plus(m, 1, cap)?.object.dim(), fr_internal(m, cap)?.object.dim()];
                        if p > 2 {
                            v.push(fr_minus(m, 1, cap)?.object.dim());
                        }
                        if p == 2 {
                            v.push(fr_plus(m, 2, cap)?.object.dim());
                        }
                        v.extend(fr_external(m, cap)?.dims());
                        Ok(v)
                    };
                    let (a, b, c) = (d(&x)?, d(&y)?, d(&s)?);
                    let sum: Vec<usize> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
                    Ok(expect_eq("twist dims of X ⊕ Y", c, sum))
                },
            );
        }
    }
    Ok(r.finish(json!({"primes": ps, "trials_per_prime": trials, "twists": "Fr+ (j=1, and j=2 at p=2), Fr_in, Fr- (p>2), Fr by component"})))
}

fn lempowers(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("lempowers", "Fr+^(j) X is a subquotient of the j-fold composite of Fr+", params);
    let ps = primes(params, &[2, 3])?;
    let cap = params.max_entries;
    for &p in &ps {
        let max_dim = match (p, full(params)) {
            (2, _) => 3,
            (3, false) => 2,
            (3, true) => 3,
            _ => 1,
        };
        let mut cases: Vec<GModule> = cp_types_up_to(p, max_dim).iter().map(|s| GModule::cp_module(p, s)).collect::<Result<_>>()?;
        if p > 2 {
            for (e, o) in [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] {
                cases.push(super_space(field(p), e, o)?);
            }
        }
        for x in cases {
            r.case(
                || json!({"p": p, "j": 2, "module": module_to_json(&x)}),
                || {
                    let a = fr_plus(&x, 2, cap)?.object.super_dim();
                    let b = fr_plus_iterated(&x, 2, cap)?.super_dim();
                    if a.0 > b.0 || a.1 > b.1 {
                        return Ok(Err(format!("Fr+^(2) has graded dim {a:?}, the composite {b:?}")));
                    }
                    Ok(Ok(()))
                },
            );
        }
    }
    Ok(r.finish(json!({"primes": ps, "j": 2})))
}

fn pair_pool(p: u32, profile_full: bool) -> Result<Vec<GModule>> {
    let d = if profile_full { 3 } else { 2 };
    let mut pool: Vec<GModule> = cp_types_up_to(p, d).iter().map(|s| GModule::cp_module(p, s)).collect::<Result<_>>()?;
    if p > 2 {
        for (e, o) in [(1, 0), (0, 1), (1, 1)] {
            pool.push(super_space(field(p), e, o)?);
        }
    }
    Ok(pool)
}

fn lemj(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("lemj", "Fr+ X ⊗ Fr+ Y is a subquotient of Fr+(X ⊗ Y)", params);
    let ps = primes(params, &[2, 3])?;
    let cap = params.max_entries;
    let limit = if full(params) { 6 } else { 4 };
    for &p in &ps {
        let pool = pair_pool(p, full(params))?;
        for (a, x) in pool.iter().enumerate() {
            for y in &pool[a..] {
                if x.dim() * y.dim() > limit || x.group() != y.group() {
                    continue;
                }
                r.case(
                    || json!({"p": p, "x": module_to_json(x), "y": module_to_json(y)}),
                    || {
                        let lhs = fr_plus(x, 1, cap)?.object.dim() * fr_plus(y, 1, cap)?.object.dim();
                        let rhs = fr_plus(&tensor(x, y)?, 1, cap)?.object.dim();
                        if lhs > rhs {
                            return Ok(Err(format!("dim Fr+X ⊗ Fr+Y = {lhs} > dim Fr+(X⊗Y) = {rhs}")));
                        }
                        Ok(Ok(()))
                    },
                );
            }
        }
    }
    Ok(r.finish(json!({"primes": ps, "max_tensor_dim": limit})))
}

fn remmon2(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("remmon2", "in Rep G, Fr+ X ⊗ Fr+ Y is isomorphic to Fr+(X ⊗ Y)", params);
    let ps = primes(params, &[2, 3])?;
    let cap = params.max_entries;
    for &p in &ps {
        let f = field(p);
        let mut pool: Vec<GModule> = cp_types_up_to(p, 4).iter().map(|s| GModule::cp_module(p, s)).collect::<Result<_>>()?;
        let s3 = PermGroup::symmetric(3).with_name("S3");
        pool.extend([GModule::trivial(s3.clone(), f, 1), GModule::sign(s3.clone(), f), GModule::permutation(s3, f)]);
        for (a, x) in pool.iter().enumerate() {
            for y in &pool[a..] {
                if x.dim() * y.dim() > 4 || x.group() != y.group() {
                    continue;
                }
                r.case(
                    || json!({"p": p, "x": module_to_json(x), "y": module_to_json(y)}),
                    || {
                        let lhs = tensor(&fr_plus(x, 1, cap)?.object, &fr_plus(y, 1, cap)?.object)?;
                        let rhs = fr_plus(&tensor(x, y)?, 1, cap)?.object;
                        Ok(match iso_test(&lhs, &rhs)? {
                            IsoResult::Isomorphic(_) => Ok(()),
                            IsoResult::NotIsomorphic(why) => Err(format!("not isomorphic: {why}")),
                            IsoResult::NotFound { candidates_tried } => {
                                Err(format!("certificate not found after {candidates_tried} candidates"))
                            }
                        })
                    },
                );
            }
        }
    }
    Ok(r.finish(json!({"primes": ps, "max_tensor_dim": 4, "groups": ["C_p", "S3"]})))
}

/// `Fr₊` of a module and its realization, computed once.
struct Twisted {
    real: SymRealization,
    object: GModule,
}

impl Twisted {
    fn new(x: &GModule, cap: usize) -> Result<Self> {
        let real = SymRealization::new(x, 1, cap)?;
        let object = real.module(x)?;
        Ok(Twisted { real, object })
    }
}

fn exactness_instance(s: &ShortExact, fv: &Twisted, cap: usize, via_public: bool) -> Result<Outcome> {
    let (u, w) = (&s.inclusion.source, &s.projection.target);
    let (fu, fw) = (Twisted::new(u, cap)?, Twisted::new(w, cap)?);
    let i = fu.real.map_to(&s.inclusion.matrix, &fv.real)?;
    let q = fv.real.map_to(&s.projection.matrix, &fw.real)?;
    if via_public {
        let (pi, pq) = (fr_plus_mor(&s.inclusion, 1, cap)?, fr_plus_mor(&s.projection, 1, cap)?);
        if pi.matrix != i || pq.matrix != q {
            return Ok(Err("fr_plus_mor disagrees with the cached realization".into()));
        }
    }
    GModMorphism::new(fu.object.clone(), fv.object.clone(), i.clone())?;
    GModMorphism::new(fv.object.clone(), fw.object.clone(), q.clone())?;
    let (a, b, c) = (fu.object.dim(), fv.object.dim(), fw.object.dim());
    let ri = i.rank();
    let rq = q.rank();
    let composite_zero = q.try_mul(&i)?.is_zero();
    if ri != a || rq != c || !composite_zero || a + c != b {
        return Ok(Err(format!(
            "dims ({a}, {b}, {c}), rank Fr(i) = {ri}, rank Fr(q) = {rq}, Fr(q)Fr(i) zero: {composite_zero}"
        )));
    }
    Ok(Ok(()))
}

fn coolthm_exactness(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("coolthm_exactness", "Fr+ is exact on Rep C_p", params);
    let ps = primes(params, &[2, 3])?;
    let cap = params.max_entries;
    let (max_dim, all_up_to) = if full(params) { (6, 6) } else { (6, 4) };
    for &p in &ps {
        let mut last: Option<(Vec<usize>, Twisted)> = None;
        let mut per_middle = 0;
        for (sizes, s) in cp_short_exact_sequences(p, max_dim, all_up_to)? {
            if last.as_ref().is_none_or(|(t, _)| *t != sizes) {
                last = Some((sizes.clone(), Twisted::new(&s.inclusion.target, cap)?));
                per_middle = 0;
            }
            let fv = &last.as_ref().expect("set above").1;
            let via_public = per_middle < 2;
            per_middle += 1;
            r.case(|| json!({"p": p, "sequence": ses_descriptor(&s)}), || exactness_instance(&s, fv, cap, via_public));
        }
    }
    Ok(r.finish(json!({"primes": ps, "max_middle_dim": max_dim, "submodules": format!("all when dim V <= {all_up_to}, else generated by two elements")})))
}

fn thm1p_alpha(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("thm1p_alpha", "α^p is nonzero for every monomorphism α from the unit in Rep C_p", params);
    let ps = primes(params, &[2, 3])?;
    let cap = params.max_entries;
    for &p in &ps {
        let f = field(p);
        for sizes in cp_types_up_to(p, 4) {
            let x = GModule::cp_module(p, &sizes)?;
            let inv = invariants(&x);
            let unit = GModule::trivial(x.group().clone(), f, 1);
            for c in projective_points(f, inv.dim()) {
                let mut v = vec![0u32; x.dim()];
                for (k, b) in c.iter().zip(inv.basis_vectors()) {
                    for (a, e) in v.iter_mut().zip(b) {
                        *a = f.add(*a, f.mul(*k, e));
                    }
                }
                r.case(
                    || json!({"p": p, "module": module_to_json(&x), "vector": v}),
                    || {
                        let alpha = GModMorphism::new(unit.clone(), x.clone(), FieldMatrix::column_vector(f, &v))?;
                        let ap = alpha_power(&alpha, p as usize, cap)?;
                        Ok(if ap.nonzero { Ok(()) } else { Err("α^p vanishes in Sym^p X".into()) })
                    },
                );
            }
        }
    }
    Ok(r.finish(json!({"primes": ps, "max_dim": 4, "monomorphisms": "every invariant line"})))
}

fn theta_sigma(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("theta_sigma", "θ_Σ identifies Sym^n(U ⊕ W) with the associated graded of Sym^n V", params);
    let ps = primes(params, &[2, 3])?;
    let cap = params.max_entries;
    for &p in &ps {
        for (_, s) in cp_short_exact_sequences(p, 4, 4)? {
            r.case(
                || json!({"p": p, "sequence": ses_descriptor(&s)}),
                || {
                    for n in 1..=p as usize + 1 {
                        let t = check_theta(&s, n, cap)?;
                        if !t.holds {
                            return Ok(Err(format!("n = {n}: graded {:?} vs split {:?}", t.graded_v, t.graded_split)));
                        }
                    }
                    Ok(Ok(()))
                },
            );
        }
    }
    Ok(r.finish(json!({"primes": ps, "max_middle_dim": 4, "submodules": "all", "n": "1..=p+1"})))
}

fn lemrepg(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("lemrepg", "dim Triv(M_i^* ⊗ M_j) = δ_ij n_{M_i}; distinct non-projective blocks stay distinct", params);
    let ps = primes(params, &[2, 3, 5, 7])?;
    for &p in &ps {
        for i in 1..=p as usize {
            for j in 1..=p as usize {
                r.case(
                    || json!({"p": p, "i": i, "j": j}),
                    || {
                        let (mi, mj) = (GModule::jordan_block(p, i)?, GModule::jordan_block(p, j)?);
                        let got = triv_dim(&tensor(&dual(&mi), &mj)?);
                        let want = usize::from(i == j && i % p as usize != 0);
                        if got != want {
                            return Ok(Err(format!("dim Triv(M_{i}^* ⊗ M_{j}) = {got}, expected {want}")));
                        }
                        let (si, sj) = (semisimplify(&mi)?, semisimplify(&mj)?);
                        let projective = |k: usize| k == p as usize;
                        let ok = match (projective(i), projective(j)) {
                            (true, _) => si.is_zero(),
                            (_, true) => sj.is_zero(),
                            _ => (si == sj) == (i == j) && si == VerObject::simple(p, i)?,
                        };
                        Ok(if ok { Ok(()) } else { Err(format!("images {si:?} and {sj:?}")) })
                    },
                );
            }
        }
    }
    Ok(r.finish(json!({"primes": ps})))
}

fn gammaver(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("gammaver", "Sym^{p-j+1} and Γ^{p-j+1} of M̄_j vanish in ver_p for 1 < j < p", params);
    let ps = primes(params, &[3, 5, 7])?;
    for &p in &ps {
        for j in 2..p as usize {
            let n = p as usize - j + 1;
            r.case(
                || json!({"p": p, "j": j, "n": n}),
                || {
                    let s = ver_sym_power(j, n, p)?;
                    let g = ver_gamma_power(j, n, p)?;
                    Ok(if s.is_zero() && g.is_zero() { Ok(()) } else { Err(format!("Sym = {s:?}, Γ = {g:?}")) })
                },
            );
        }
    }
    Ok(r.finish(json!({"primes": ps})))
}

fn examtwist2(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("examtwist2", "in ver_p, Fr+ X is [X:1] copies of the unit", params);
    let ps = primes(params, &[3, 5])?;
    for &p in &ps {
        for sizes in cp_types_up_to(p, 5) {
            let x = GModule::cp_module(p, &sizes)?;
            r.case(
                || json!({"p": p, "module": module_to_json(&x)}),
                || {
                    let got = fr_plus_ver(&x)?;
                    let want = VerObject::simple(p, 1)?.scale(semisimplify(&x)?.multiplicity(1));
                    Ok(expect_eq(&format!("Fr+ of {sizes:?}"), got, want))
                },
            );
        }
    }
    Ok(r.finish(json!({"primes": ps, "max_dim": 5})))
}

fn lemspecht(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("lemspecht", "S_μ ⊠ k embeds in the restriction of S_λ, μ = λ without its last row", params);
    let ps = primes(params, &[2, 3, 5])?;
    let n_max = if full(params) { 7 } else { 5 };
    for &p in &ps {
        let f = field(p);
        for n in 1..=n_max {
            for lambda in partitions(n) {
                r.case(
                    || json!({"p": p, "partition": lambda.parts()}),
                    || {
                        let dim = specht(f, &lambda)?.module.dim() as u128;
                        if dim != hook_length_dim(&lambda) {
                            return Ok(Err(format!("dim S^λ = {dim}, hook formula {}", hook_length_dim(&lambda))));
                        }
                        Ok(if check_branching(f, &lambda)? { Ok(()) } else { Err("no embedding found".into()) })
                    },
                );
            }
        }
    }
    Ok(r.finish(json!({"primes": ps, "max_size": n_max})))
}

fn thmsto_rect(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("thmsto_rect", "Γ_λ k^{m|n} vanishes for the rectangle ((n+1)^(m+1))", params);
    let ps = primes(params, if full(params) { &[3, 5] } else { &[3] })?;
    for &p in &ps {
        for (m, n) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let lambda = Partition::rectangle(n + 1, m + 1);
            r.case(
                || json!({"p": p, "m": m, "n": n, "partition": lambda.parts()}),
                || {
                    let x = super_space(field(p), m, n)?;
                    let d = if x.dim() == 0 { 0 } else { gamma_lambda_dim(&lambda, &x, params.max_entries)? };
                    Ok(expect_eq(&format!("dim Γ_{lambda} k^{{{m}|{n}}}"), d, 0))
                },
            );
        }
    }
    Ok(r.finish(json!({"primes": ps, "m_n_max": 1})))
}

fn lemexex(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("lemexex", "[X ⊕ Y]_1 = [X]_1 + [Y]_1", params);
    let ps = primes(params, &[2, 3])?;
    let trials = params.trials.unwrap_or(20);
    let cap = params.max_entries;
    for &p in &ps {
        let max_j = params.max_j.unwrap_or(match (p, full(params)) {
            (2, _) => 2,
            (_, true) => crate::frob::default_max_j(p),
            _ => 1,
        });
        let max_dim = if p == 2 { 3 } else { 2 };
        let mut rng = SplitMix64::new(params.seed ^ ((p as u64) << 40));
        for t in 0..trials {
            let (x, y) = if p > 2 && t % 4 == 3 {
                let mut side = || -> Result<GModule> {
                    let e = rng.index(2);
                    let o = rng.index(3 - e).max(usize::from(e == 0));
                    super_space(field(p), e, o)
                };
                (side()?, side()?)
            } else {
                (random_cp(&mut rng, p, max_dim), random_cp(&mut rng, p, max_dim))
            };
            r.case(
                || json!({"p": p, "max_j": max_j, "x": module_to_json(&x), "y": module_to_json(&y)}),
                || {
                    let b = |m: &GModule| -> Result<BracketValue> { Ok(bracket_one(m, max_j, None, cap)?.value) };
                    let (bx, by, bs) = (b(&x)?, b(&y)?, b(&direct_sum(&x, &y)?)?);
                    let (Some(u), Some(v)) = (bx.finite(), by.finite()) else {
                        return Ok(Err("a summand bracket exceeds the bound".into()));
                    };
                    Ok(expect_eq("[X ⊕ Y]_1", bs, BracketValue::Finite(u + v)))
                },
            );
        }
    }
    Ok(r.finish(json!({"primes": ps, "trials_per_prime": trials})))
}

/// The 3-dimensional module over `S_2 × S_2` with `Triv_G = 0` but a nonzero iterated `Triv`.
pub fn klein_four_module() -> GModule {
    let g = PermGroup::new(4, vec![Perm::transposition(4, 0, 1), Perm::transposition(4, 2, 3)], "S2xS2").expect("valid group");
    let f = field(2);
    let a = FieldMatrix::from_rows(f, &[vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]).expect("3x3");
    let b = FieldMatrix::from_rows(f, &[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]]).expect("3x3");
    GModule::new(g, f, vec![a, b], None).expect("a and b commute")
}

/// `(dim Triv_G X, dim Triv_{G/H} Triv_H X)` for a normal subgroup `H`.
pub fn iterated_triv_dims(x: &GModule, h: &PermGroup) -> Result<(usize, usize)> {
    let inner = triv_on_invariants(x, &restrict_to(x, h)?)?;
    Ok((triv_dim(x), triv_dim(&inner.module)))
}

fn klein_four_example(params: &CheckParams) -> Result<CheckReport> {
    let mut r = Runner::new("klein_four_example", "Triv_G X = 0 while Triv_{G/H} Triv_H X is one-dimensional", params);
    let x = klein_four_module();
    let h = PermGroup::new(4, vec![Perm::transposition(4, 0, 1)], "<a>")?;
    r.case(|| json!({"p": 2, "module": module_to_json(&x)}), || Ok(expect_eq("dims", iterated_triv_dims(&x, &h)?, (0, 1))));
    Ok(r.finish(json!({"p": 2})))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_check_is_an_input_error() {
        assert_eq!(run_check("nope", &CheckParams::default()).unwrap_err().kind(), "input");
    }

    #[test]
    fn subgroups_of_small_groups() {
        assert_eq!(all_subgroups(&PermGroup::symmetric(3)).unwrap().len(), 6);
        assert_eq!(all_subgroups(&PermGroup::symmetric(4)).unwrap().len(), 30);
        assert_eq!(subgroup_classes(&PermGroup::symmetric(4)).unwrap().len(), 11);
    }

    #[test]
    fn submodule_enumeration() {
        // M_3 over C_3 is uniserial: submodules of dims 1 and 2
        let x = GModule::cp_module(3, &[3]).unwrap();
        let subs = submodules(&x, usize::MAX);
        let mut dims: Vec<usize> = subs.iter().map(|s| s.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        // k^2 over C_2: the three lines
        assert_eq!(submodules(&GModule::cp_module(2, &[1, 1]).unwrap(), usize::MAX).len(), 3);
        // k^3 over C_3: 13 lines and 13 planes
        assert_eq!(submodules(&GModule::cp_module(3, &[1, 1, 1]).unwrap(), usize::MAX).len(), 26);
    }

    #[test]
    fn gammaver_and_klein_examples() {
        let p5 = CheckParams { p: Some(5), ..CheckParams::default() };
        let rep = run_check("gammaver", &p5).unwrap();
        assert_eq!((rep.instances_run, rep.passes), (3, 3));
        let k = run_check("klein_four_example", &CheckParams::default()).unwrap();
        assert!(k.passed());
    }

    #[test]
    fn replay_reruns_a_single_instance() {
        let params = CheckParams { p: Some(3), ..CheckParams::default() };
        let all = run_check("thmsto_rect", &params).unwrap();
        assert_eq!(all.instances_run, 4);
        let f = &all.failures[0];
        assert_eq!(f.instance, 3);
        let again = run_check("thmsto_rect", &f.replay).unwrap();
        assert_eq!(again.instances_run, 1);
        assert_eq!(again.failures, all.failures);
    }
}
