//! `twistlab`: batch front end emitting exactly one JSON document on stdout.
//!
//! Exit codes: 0 success, 1 failed check or internal inconsistency, 2 invalid
//! input, 3 resource limit.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twistlab::error::{Error, Result};
use twistlab::ffla::{FieldMatrix, PrimeField, Subspace};
use twistlab::frob::{self, TwistResult};
use twistlab::io::{module_from_str, module_to_json, Config, GroupJson};
use twistlab::permgrp::{PermGroup, SubgroupEmbedding};
use twistlab::repmod::{self, GModMorphism, GModule, SubquotientPresentation};
use twistlab::sympow::{self, Partition};
use twistlab::theorems::{self, CheckParams, Failure, Profile};
use twistlab::verlinde;

#[derive(Parser)]
#[command(name = "twistlab", version, about = "Frobenius twists and tensor powers of modular representations")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Cap on the number of entries of any materialized tensor power.
    #[arg(long, global = true)]
    max_entries: Option<usize>,
    /// Twist depth for brackets and verdicts; defaults per prime.
    #[arg(long, global = true)]
    max_j: Option<u32>,
    /// Groups up to this order are validated on the full multiplication table.
    #[arg(long, global = true)]
    group_cap: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON document to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate module files.
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
    /// Representation-theoretic operations on a module.
    Op(OpArgs),
    /// Frobenius twists.
    Frob(FrobArgs),
    /// Bracket certificates.
    Bracket(BracketArgs),
    /// Criteria and witnesses.
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// The Verlinde category.
    Verlinde {
        #[command(subcommand)]
        cmd: VerlindeCmd,
    },
    /// Runs every check of the battery.
    Suite {
        profile: ProfileArg,
    },
    /// Dimension evidence on open questions; never a proof.
    Explore(ExploreArgs),
}

#[derive(Subcommand)]
enum ModuleCmd {
    Validate { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    H0,
    #[value(name = "h_0")]
    HLower0,
    Triv,
    Ind,
    Res,
    Tensor,
    Dual,
    Sym,
    Gamma,
    Lambda,
    Specht,
    GammaLambda,
}

#[derive(Args)]
struct OpArgs {
    op: OpKind,
    #[arg(long)]
    module: Option<PathBuf>,
    /// Second module for `tensor`.
    #[arg(long)]
    other: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated parts, e.g. `3,1`.
    #[arg(long)]
    partition: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    /// Group JSON: the parent group for `ind`.
    #[arg(long)]
    group: Option<PathBuf>,
    /// Group JSON: the subgroup for `res`.
    #[arg(long)]
    subgroup: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FrobKind {
    Plus,
    Minus,
    Internal,
    External,
}

#[derive(Args)]
struct FrobArgs {
    kind: FrobKind,
    #[arg(long)]
    module: PathBuf,
    #[arg(long, default_value_t = 1)]
    j: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum BracketKindArg {
    One,
    Bar,
}

#[derive(Args)]
struct BracketArgs {
    kind: BracketKindArg,
    #[arg(long)]
    module: PathBuf,
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Subcommand)]
enum CheckCmd {
    LocallyFree {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        max_n: Option<usize>,
    },
    LocallySuperFree {
        #[arg(long)]
        module: PathBuf,
    },
    /// θ_Σ for `0 -> U -> V -> V/U -> 0`.
    Theta {
        #[arg(long)]
        module: PathBuf,
        /// JSON list of vectors spanning the submodule `U`.
        #[arg(long)]
        sub_basis: String,
        #[arg(long)]
        n: usize,
    },
    /// α^n for the inclusion of the unit spanned by an invariant vector.
    AlphaPower {
        #[arg(long)]
        module: PathBuf,
        /// JSON list of coordinates.
        #[arg(long)]
        vector: String,
        #[arg(long)]
        n: usize,
    },
    /// One named check of the battery.
    Run {
        name: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value = "quick")]
        profile: ProfileArg,
        #[arg(long)]
        instance: Option<usize>,
        /// A failure payload or parameter set to rerun.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerlindeCmd {
    Fusion {
        #[arg(long)]
        p: u32,
    },
    Semisimplify {
        #[arg(long)]
        module: PathBuf,
    },
    /// `Sym^n M̄_i`.
    Sym {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        n: usize,
    },
    /// `Γ^n M̄_i`.
    Gamma {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        n: usize,
    },
    /// `Fr₊` computed after semisimplification.
    FrPlus {
        #[arg(long)]
        module: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::Quick => Profile::Quick,
            ProfileArg::Full => Profile::Full,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExploreKind {
    FrinDecomp,
    FrplusFrminusComposite,
}

#[derive(Args)]
struct ExploreArgs {
    kind: ExploreKind,
    #[arg(long)]
    module: PathBuf,
    /// Second module, for comparing `Fr_in(X ⊗ Y)` with `Fr_in X ⊗ Fr_in Y`.
    #[arg(long)]
    other: Option<PathBuf>,
}

/// What a command produced, and whether it counts as a failed check.
struct Outcome {
    result: Value,
    failed: bool,
}

impl From<Value> for Outcome {
    fn from(result: Value) -> Self {
        Outcome { result, failed: false }
    }
}

struct Ctx {
    config: Config,
}

impl Ctx {
    fn cap(&self) -> usize {
        self.config.max_tensor_entries
    }

    fn read(&self, path: &Path) -> Result<String> {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
    }

    fn module(&self, path: &Path) -> Result<GModule> {
        module_from_str(&self.read(path)?, self.config.seed, self.config.group_enumeration_cap)
    }

    fn group(&self, path: &Path) -> Result<PermGroup> {
        let g: GroupJson = serde_json::from_str(&self.read(path)?).map_err(|e| Error::Input(format!("group JSON: {e}")))?;
        g.to_group()
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Input(format!("missing --{flag}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(s: &str, what: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Input(format!("{what}: {e}")))
}

fn parse_partition(s: &str) -> Result<Partition> {
    let parts = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad partition part {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Partition::new(parts)
}

fn residues(field: PrimeField, v: &[i64]) -> Vec<u32> {
    v.iter().map(|&c| field.from_i64(c)).collect()
}

fn subquotient_json(s: &SubquotientPresentation) -> Value {
    json!({
        "dim": s.dim(),
        "ambient_dim": s.ambient.dim(),
        "lifts": s.lifts,
        "module": module_to_json(&s.module),
    })
}

fn twist_json(t: &TwistResult) -> Value {
    json!({
        "dim": t.object.dim(),
        "super_dim": t.object.super_dim(),
        "object": module_to_json(&t.object),
        "shortcut_used": t.shortcut_used,
        "cross_checked": t.cross_checked,
        "n": t.n,
        "realization": t.realization.as_ref().map(|r| json!({
            "ambient": "Sym^n X",
            "ambient_dim": r.ambient.dim(),
            "basis": r.lifts,
        })),
    })
}

fn module_result(x: &GModule) -> Value {
    json!({ "dim": x.dim(), "super_dim": x.super_dim(), "module": module_to_json(x) })
}

fn run_op(ctx: &Ctx, a: &OpArgs) -> Result<Value> {
    let cap = ctx.cap();
    let x = || ctx.module(need(a.module.as_deref(), "module")?);
    let n = || need(a.n, "n");
    Ok(match a.op {
        OpKind::H0 => subquotient_json(&repmod::h0(&x()?)?),
        OpKind::HLower0 => subquotient_json(&repmod::h_0(&x()?)?),
        OpKind::Triv => subquotient_json(&repmod::triv(&x()?)?),
        OpKind::Ind => {
            let x = x()?;
            let parent = ctx.group(need(a.group.as_deref(), "group")?)?;
            let e = SubgroupEmbedding::with_cap(x.group().clone(), parent, ctx.config.group_enumeration_cap)?;
            module_result(&repmod::induce(&e, &x)?)
        }
        OpKind::Res => {
            let x = x()?;
            let sub = ctx.group(need(a.subgroup.as_deref(), "subgroup")?)?;
            let e = SubgroupEmbedding::with_cap(sub, x.group().clone(), ctx.config.group_enumeration_cap)?;
            module_result(&repmod::restrict(&e, &x)?)
        }
        OpKind::Tensor => {
            let y = ctx.module(need(a.other.as_deref(), "other")?)?;
            let t = repmod::tensor(&x()?, &y)?;
            repmod::check_cap(t.dim() * t.dim(), cap, "tensor product")?;
            module_result(&t)
        }
        OpKind::Dual => module_result(&repmod::dual(&x()?)),
        OpKind::Sym => module_result(&sympow::sym_power(&x()?, n()?, cap)?),
        OpKind::Gamma => module_result(&sympow::gamma_power(&x()?, n()?, cap)?),
        OpKind::Lambda => module_result(&sympow::lambda_power(&x()?, n()?, cap)?),
        OpKind::Specht => {
            let field = PrimeField::new(need(a.p, "p")?)?;
            let lambda = parse_partition(need(a.partition.as_deref(), "partition")?)?;
            let sp = sympow::specht(field, &lambda)?;
            json!({
                "partition": lambda.parts(),
                "dim": sp.module.dim(),
                "standard_tableaux": sp.standard_tableaux,
                "module": module_to_json(&sp.module),
            })
        }
        OpKind::GammaLambda => {
            let lambda = parse_partition(need(a.partition.as_deref(), "partition")?)?;
            let mut r = module_result(&sympow::gamma_lambda(&lambda, &x()?, cap)?);
            r["partition"] = json!(lambda.parts());
            r
        }
    })
}

fn run_frob(ctx: &Ctx, a: &FrobArgs) -> Result<Value> {
    let x = ctx.module(&a.module)?;
    let cap = ctx.cap();
    Ok(match a.kind {
        FrobKind::Plus => twist_json(&frob::fr_plus(&x, a.j, cap)?),
        FrobKind::Minus => twist_json(&frob::fr_minus(&x, a.j, cap)?),
        FrobKind::Internal => twist_json(&frob::fr_internal(&x, cap)?),
        FrobKind::External => {
            let b = frob::fr_external(&x, cap)?;
            let comps: Vec<Value> = b
                .components
                .iter()
                .enumerate()
                .map(|(k, c)| json!({ "simple": k + 1, "dim": c.dim(), "coefficient": module_to_json(c) }))
                .collect();
            json!({ "p": b.p, "dims": b.dims(), "components": comps })
        }
    })
}

fn run_bracket(ctx: &Ctx, a: &BracketArgs) -> Result<Value> {
    let x = ctx.module(&a.module)?;
    let max_j = ctx.config.max_j_for(x.p());
    let cert = match a.kind {
        BracketKindArg::One => frob::bracket_one(&x, max_j, a.max_n, ctx.cap())?,
        BracketKindArg::Bar => frob::bracket_bar(&x, max_j, a.max_n, ctx.cap())?,
    };
    Ok(serde_json::to_value(cert).expect("certificate serializes"))
}

fn run_named_check(
    ctx: &Ctx,
    name: &str,
    p: Option<u32>,
    trials: Option<usize>,
    profile: ProfileArg,
    instance: Option<usize>,
    replay: Option<&Path>,
) -> Result<Outcome> {
    let params = match replay {
        Some(path) => {
            let v: Value = parse_json(&ctx.read(path)?, "replay file")?;
            // a failure payload carries its parameters under `replay`
            let params = if v.get("replay").is_some() {
                parse_json::<Failure>(&v.to_string(), "failure payload")?.replay
            } else {
                parse_json::<CheckParams>(&v.to_string(), "check parameters")?
            };
            params
        }
        None => CheckParams {
            p,
            trials,
            seed: ctx.config.seed,
            profile: profile.into(),
            max_entries: ctx.cap(),
            max_j: ctx.config.max_j,
            instance,
        },
    };
    let report = theorems::run_check(name, &params)?;
    Ok(Outcome { failed: !report.passed(), result: serde_json::to_value(report).expect("report serializes") })
}

fn run_check_cmd(ctx: &Ctx, c: &CheckCmd) -> Result<Outcome> {
    let cap = ctx.cap();
    Ok(match c {
        CheckCmd::LocallyFree { module, max_n } => {
            let x = ctx.module(module)?;
            let v = frob::check_locally_free(&x, ctx.config.max_j_for(x.p()), *max_n, cap)?;
            serde_json::to_value(v).expect("verdict serializes").into()
        }
        CheckCmd::LocallySuperFree { module } => {
            let x = ctx.module(module)?;
            let v = frob::check_locally_super_free(&x, ctx.config.max_j_for(x.p()), cap)?;
            serde_json::to_value(v).expect("verdict serializes").into()
        }
        CheckCmd::Theta { module, sub_basis, n } => {
            let v = ctx.module(module)?;
            let f = v.field();
            let vecs: Vec<Vec<i64>> = parse_json(sub_basis, "--sub-basis")?;
            if vecs.iter().any(|w| w.len() != v.dim()) {
                return Err(Error::Input(format!("sub-basis vectors must have length {}", v.dim())));
            }
            let u = Subspace::from_vectors(f, v.dim(), &vecs.iter().map(|w| residues(f, w)).collect::<Vec<_>>());
            let sigma = theorems::short_exact_from_sub(&v, &u)?;
            let r = frob::check_theta(&sigma, *n, cap)?;
            Outcome { failed: !r.holds, result: serde_json::to_value(r).expect("report serializes") }
        }
        CheckCmd::AlphaPower { module, vector, n } => {
            let x = ctx.module(module)?;
            let f = x.field();
            let v: Vec<i64> = parse_json(vector, "--vector")?;
            if v.len() != x.dim() {
                return Err(Error::Input(format!("vector must have length {}", x.dim())));
            }
            let col = FieldMatrix::column_vector(f, &residues(f, &v));
            let unit = GModule::trivial(x.group().clone(), f, 1);
            let unit = if x.is_super() { unit.with_parity(Some(vec![0]))? } else { unit };
            let alpha = GModMorphism::new(unit, x, col)?;
            let a = frob::alpha_power(&alpha, *n, cap)?;
            json!({ "n": n, "nonzero": a.nonzero, "class": a.class }).into()
        }
        CheckCmd::Run { name, p, trials, profile, instance, replay } => {
            return run_named_check(ctx, name, *p, *trials, *profile, *instance, replay.as_deref())
        }
    })
}

fn run_verlinde(ctx: &Ctx, c: &VerlindeCmd) -> Result<Value> {
    let ser = |o: verlinde::VerObject| serde_json::to_value(o).expect("object serializes");
    Ok(match c {
        VerlindeCmd::Fusion { p } => {
            let table = verlinde::fusion_table(*p)?;
            json!({ "p": p, "table": table })
        }
        VerlindeCmd::Semisimplify { module } => ser(verlinde::semisimplify(&ctx.module(module)?)?),
        VerlindeCmd::Sym { p, i, n } => ser(verlinde::ver_sym_power(*i, *n, *p)?),
        VerlindeCmd::Gamma { p, i, n } => ser(verlinde::ver_gamma_power(*i, *n, *p)?),
        VerlindeCmd::FrPlus { module } => ser(verlinde::fr_plus_ver(&ctx.module(module)?)?),
    })
}

fn run_suite(ctx: &Ctx, profile: ProfileArg) -> Result<Outcome> {
    let reports = theorems::run_suite(profile.into(), ctx.config.seed)?;
    let failed = reports.iter().any(|r| !r.passed());
    Ok(Outcome { failed, result: serde_json::to_value(reports).expect("reports serialize") })
}

fn run_explore(ctx: &Ctx, a: &ExploreArgs) -> Result<Value> {
    let x = ctx.module(&a.module)?;
    let cap = ctx.cap();
    let mut evidence = match a.kind {
        ExploreKind::FrinDecomp => {
            let fin = frob::fr_internal(&x, cap)?.object;
            let plus = frob::fr_plus(&x, 1, cap)?.object;
            let minus = frob::fr_minus(&x, 1, cap)?.object;
            let sum = repmod::direct_sum(&plus, &minus)?;
            let iso = if fin.dim() == sum.dim() && fin.dim() <= frob::ISO_CHECK_DIM {
                json!(repmod::iso_test(&fin, &sum)?.is_isomorphic())
            } else {
                Value::Null
            };
            json!({
                "question": "Fr_in X = Fr_+ X + Fr_- X",
                "dim_fr_in": fin.dim(),
                "dim_fr_plus": plus.dim(),
                "dim_fr_minus": minus.dim(),
                "dims_agree": fin.dim() == sum.dim(),
                "isomorphic": iso,
            })
        }
        ExploreKind::FrplusFrminusComposite => {
            let pm = frob::fr_minus(&frob::fr_plus(&x, 1, cap)?.object, 1, cap)?.object;
            let mp = frob::fr_plus(&frob::fr_minus(&x, 1, cap)?.object, 1, cap)?.object;
            json!({
                "question": "Fr_+ Fr_- X = 0 = Fr_- Fr_+ X",
                "dim_fr_minus_fr_plus": pm.dim(),
                "dim_fr_plus_fr_minus": mp.dim(),
                "both_vanish": pm.dim() == 0 && mp.dim() == 0,
            })
        }
    };
    if let Some(other) = &a.other {
        let y = ctx.module(other)?;
        let xy = repmod::tensor(&x, &y)?;
        let lhs = frob::fr_internal(&xy, cap)?.object.dim();
        let rhs = frob::fr_internal(&x, cap)?.object.dim() * frob::fr_internal(&y, cap)?.object.dim();
        evidence["monoidal"] = json!({
            "question": "Fr_in(X (x) Y) = Fr_in X (x) Fr_in Y",
            "dim_fr_in_tensor": lhs,
            "dim_tensor_fr_in": rhs,
            "dims_agree": lhs == rhs,
        });
    }
    Ok(json!({ "label": "EVIDENCE", "evidence": evidence }))
}

fn validate_report(ctx: &Ctx, file: &Path) -> Result<Value> {
    let x = ctx.module(file)?;
    Ok(json!({
        "valid": true,
        "validation_state": x.validation_state(),
        "p": x.p(),
        "dim": x.dim(),
        "super_dim": x.super_dim(),
        "group": x.group().name(),
        "group_order": x.group().order().to_string(),
    }))
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<Outcome> {
    Ok(match cmd {
        Command::Module { cmd: ModuleCmd::Validate { file } } => validate_report(ctx, file)?.into(),
        Command::Op(a) => run_op(ctx, a)?.into(),
        Command::Frob(a) => run_frob(ctx, a)?.into(),
        Command::Bracket(a) => run_bracket(ctx, a)?.into(),
        Command::Check { cmd } => run_check_cmd(ctx, cmd)?,
        Command::Verlinde { cmd } => run_verlinde(ctx, cmd)?.into(),
        Command::Suite { profile } => run_suite(ctx, *profile)?,
        Command::Explore(a) => run_explore(ctx, a)?.into(),
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) => 2,
        Error::Resource(_) => 3,
        Error::Internal(_) => 1,
    }
}

fn build_config(g: &GlobalArgs) -> Result<Config> {
    let mut c = Config::default().with_env()?;
    if let Some(m) = g.max_entries {
        c.max_tensor_entries = m;
    }
    c.max_j = g.max_j.or(c.max_j);
    if let Some(cap) = g.group_cap {
        c.group_enumeration_cap = cap;
    }
    c.seed = g.seed;
    c.output = g.output.as_ref().map(|p| p.display().to_string());
    c.validate()?;
    Ok(c)
}

fn emit(doc: &Value, output: Option<&Path>) -> std::result::Result<(), String> {
    let text = serde_json::to_string_pretty(doc).expect("document serializes");
    let mut out = std::io::stdout().lock();
    // a closed pipe downstream is not our failure
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            return Err(format!("stdout: {e}"));
        }
    }
    if let Some(path) = output {
        std::fs::write(path, format!("{text}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (doc, code) = match build_config(&cli.global) {
        Err(e) => {
            eprintln!("twistlab: {e}");
            (json!({ "error": { "kind": e.kind(), "message": e.to_string() } }), exit_code(&e))
        }
        Ok(config) => {
            let ctx = Ctx { config };
            let cfg = serde_json::to_value(&ctx.config).expect("config serializes");
            match dispatch(&ctx, &cli.command) {
                Ok(out) => {
                    let code = if out.failed { 1 } else { 0 };
                    (json!({ "config": cfg, "ok": !out.failed, "result": out.result }), code)
                }
                Err(e) => {
                    eprintln!("twistlab: {e}");
                    (json!({ "config": cfg, "ok": false, "error": { "kind": e.kind(), "message": e.to_string() } }), exit_code(&e))
                }
            }
        }
    };
    if let Err(msg) = emit(&doc, cli.global.output.as_deref()) {
        eprintln!("twistlab: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
