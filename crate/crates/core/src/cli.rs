//! Command-line front end: `qloop <group> <command> [flags]`.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on invalid input.

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::cluster::{
    classify_finite_type, enumerate_exchange_graph, f_polynomial_and_gvector, gamma_seed, variable_by_denominator,
    DEFAULT_CAP,
};
use crate::engine::{self, format_root, CheckEntry, Factor, KrCalculator, KRLabel, LevelOne};
use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::preproj::{dimension, fundamental_qchar, standard_qchar, GradedW};
use crate::quiverrep::{grassmannian_euler, indecomposable_rep, positive_roots, height, Quiver};
use crate::sl2::{canonical_segments, kr_qchar_sl2, simple_qchar_sl2, verify_yang_baxter};
use crate::ymono::{
    bigint_json, monomial_from_json, monomial_to_json, poly_to_json, poly_to_latex, poly_to_text, v_poly_to_text,
    CartanData, TextMonomial, YPolynomial,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Parser)]
#[command(name = "qloop", version, about = "Exact q-characters of quantum loop algebras, cross-checked against cluster algebras")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Maximum number of seeds visited when enumerating an exchange graph.
    #[arg(long, default_value_t = DEFAULT_CAP, global = true)]
    pub seed_cap: usize,
    #[command(subcommand)]
    pub group: Group,
}

#[derive(Debug, Subcommand)]
pub enum Group {
    /// The rank-one case.
    #[command(subcommand)]
    Sl2(Sl2Cmd),
    /// Representations of the sink-source quiver.
    #[command(subcommand)]
    Rep(RepCmd),
    /// q-characters.
    #[command(subcommand)]
    Qchar(QcharCmd),
    /// Cluster algebras of the level-ℓ quivers.
    #[command(subcommand)]
    Cluster(ClusterCmd),
    /// Cross-checks; exit code 1 when a case fails.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Args)]
pub struct TypeArg {
    /// Dynkin type such as A3, D4 or E6.
    #[arg(long = "type")]
    pub ty: String,
}

#[derive(Debug, Subcommand)]
pub enum Sl2Cmd {
    /// q-character of a KR module.
    Kr {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
    },
    /// Segment decomposition and q-character of a simple module.
    Factor {
        /// Monomial as JSON triples `[[1,s,e],...]`.
        #[arg(long)]
        monomial: String,
    },
    /// Yang–Baxter equation at rational parameters.
    Ybe {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum RepCmd {
    /// Positive roots, sorted by height.
    Roots {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// Euler characteristic of a quiver Grassmannian of `M[β]`.
    Euler {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        nu: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum QcharCmd {
    /// Fundamental module `L(Y_{i,s})`.
    Fundamental {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        node: usize,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Standard module with the given graded `W`, as JSON triples `[[i,r,dim],...]`.
    Standard {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        w: String,
    },
    /// Kirillov–Reshetikhin module through the T-system.
    Kr {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        node: usize,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Truncated q-character of a level-one simple module.
    Trunc {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        monomial: String,
    },
    /// Prime factorization of a level-one simple module.
    Factor {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        monomial: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ClusterCmd {
    /// Every cluster variable and cluster of the level-ℓ seed.
    Enumerate {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        level: u32,
        /// Overrides `--seed-cap`.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// F-polynomial and g-vector of the variable with a given denominator.
    Fpoly {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Finite type of the level-ℓ cluster algebra.
    Classify {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        level: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// F-polynomials against quiver Grassmannians for every positive root.
    L1 {
        #[command(flatten)]
        ty: TypeArg,
    },
    /// The T-system for every node, `1 ≤ k ≤ k-max` and `s ∈ {ξ_i, ξ_i+1}`.
    Tsystem {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long, default_value_t = 3)]
        k_max: u32,
    },
    /// Experimental: single mutations of the level-ℓ seed on KR classes.
    Iota {
        #[command(flatten)]
        ty: TypeArg,
        #[arg(long)]
        level: u32,
    },
}

/// Result of one command in all three renderings.
struct Output {
    json: Value,
    text: String,
    latex: Option<String>,
    ok: bool,
}

impl Output {
    fn poly(p: &YPolynomial) -> Self {
        Output { json: poly_to_json(p), text: format!("{}\n({})", poly_to_text(p), summary(p)), latex: Some(poly_to_latex(p)), ok: true }
    }
}

fn parse_csv(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad integer list: {s}"))))
        .collect()
}

fn parse_json(s: &str) -> Result<Value> {
    serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::InvalidInput(format!("bad rational: {s}")))
}

fn cartan(t: &TypeArg) -> Result<CartanData> {
    CartanData::parse(&t.ty)
}

fn v_poly_json(f: &Laurent<usize>) -> Value {
    let terms: Vec<Value> = f
        .iter()
        .map(|(m, c)| {
            let v: Vec<Value> = m.iter().map(|(&i, e)| json!([i, e])).collect();
            json!({"v": v, "c": bigint_json(c)})
        })
        .collect();
    json!({ "terms": terms })
}

fn entry_json(e: &CheckEntry) -> Value {
    json!({"case": e.case, "pass": e.pass, "lhs": poly_to_json(&e.lhs), "rhs": poly_to_json(&e.rhs)})
}

fn report(entries: &[CheckEntry], extra: Option<(&str, Value, String)>) -> Output {
    let ok = entries.iter().all(|e| e.pass);
    let mut text: Vec<String> = entries
        .iter()
        .map(|e| format!("{} {}", if e.pass { "PASS" } else { "FAIL" }, e.case))
        .collect();
    let mut json = json!({
        "entries": entries.iter().map(entry_json).collect::<Vec<_>>(),
        "all_pass": ok,
    });
    if let Some((key, value, line)) = extra {
        json[key] = value;
        text.push(line);
    }
    let passed = entries.iter().filter(|e| e.pass).count();
    text.push(format!("{passed}/{} cases pass", entries.len()));
    Output { json, text: text.join("\n"), latex: None, ok }
}

fn factor_json(ctx: &LevelOne, f: &Factor) -> Result<Value> {
    let m = ctx.factor_monomial(f)?;
    Ok(match f {
        Factor::Frozen(i) => json!({"kind": "frozen", "node": i, "monomial": monomial_to_json(&m)}),
        Factor::Variable(b) => json!({"kind": "variable", "root": b, "monomial": monomial_to_json(&m)}),
    })
}

fn run_sl2(cmd: &Sl2Cmd) -> Result<Output> {
    match cmd {
        Sl2Cmd::Kr { k, s } => Ok(Output::poly(&kr_qchar_sl2(*k, *s))),
        Sl2Cmd::Factor { monomial } => {
            let m = monomial_from_json(&parse_json(monomial)?)?;
            let segs = canonical_segments(&m)?;
            let p = simple_qchar_sl2(&m)?;
            let seg_json: Vec<Value> =
                segs.iter().map(|s| json!({"origin": s.origin, "length": s.length})).collect();
            let seg_text: Vec<String> = segs.iter().map(|s| format!("[{}, {}]", s.origin, s.end())).collect();
            Ok(Output {
                json: json!({"segments": seg_json, "qchar": poly_to_json(&p)}),
                text: format!("segments: {}\n{}", seg_text.join(" "), poly_to_text(&p)),
                latex: Some(poly_to_latex(&p)),
                ok: true,
            })
        }
        Sl2Cmd::Ybe { u, v, q } => {
            let holds = verify_yang_baxter(&parse_rational(u)?, &parse_rational(v)?, &parse_rational(q)?)?;
            Ok(Output {
                json: json!({"holds": holds}),
                text: format!("Yang-Baxter {}", if holds { "holds" } else { "FAILS" }),
                latex: None,
                ok: holds,
            })
        }
    }
}

fn run_rep(cmd: &RepCmd) -> Result<Output> {
    match cmd {
        RepCmd::Roots { ty } => {
            let c = cartan(ty)?;
            let roots = positive_roots(&c);
            let text: Vec<String> = roots.iter().map(|r| format!("{}  height {}", format_root(r), height(r))).collect();
            Ok(Output { json: json!(roots), text: text.join("\n"), latex: None, ok: true })
        }
        RepCmd::Euler { ty, beta, nu } => {
            let c = cartan(ty)?;
            let (beta, nu) = (parse_csv(beta)?, parse_csv(nu)?);
            if beta.len() != c.rank() || nu.len() != c.rank() {
                return Err(Error::InvalidInput("β and ν need one entry per node".into()));
            }
            let rep = indecomposable_rep(&Quiver::sink_source(&c), &beta)?;
            let e = grassmannian_euler(&rep, &nu)?;
            let counts: Vec<Value> = e.counts.iter().map(bigint_json).collect();
            let coeffs: Vec<Value> = e.coefficients.iter().map(bigint_json).collect();
            Ok(Output {
                json: json!({
                    "euler": bigint_json(&e.euler),
                    "degree_bound": e.degree_bound,
                    "primes": e.primes,
                    "counts": counts,
                    "coefficients": coeffs,
                }),
                text: format!("χ(Gr_{}(M{})) = {}", format_root(&nu), format_root(&beta), e.euler),
                latex: None,
                ok: true,
            })
        }
    }
}

fn run_qchar(cmd: &QcharCmd) -> Result<Output> {
    match cmd {
        QcharCmd::Fundamental { ty, node, shift } => {
            let c = cartan(ty)?;
            c.check_node(*node)?;
            if !c.in_lattice(*node, *shift) {
                return Err(Error::InvalidInput(format!("shift {shift} has the wrong parity for node {node}")));
            }
            Ok(Output::poly(&fundamental_qchar(&c, *node, *shift)?))
        }
        QcharCmd::Standard { ty, w } => {
            let c = cartan(ty)?;
            let m = monomial_from_json(&parse_json(w)?)?;
            let mut pairs = Vec::new();
            for (&key, e) in m.iter() {
                let e = u64::try_from(e).map_err(|_| Error::InvalidInput("W must have nonnegative dimensions".into()))?;
                pairs.push((key, e));
            }
            Ok(Output::poly(&standard_qchar(&c, &GradedW::from_pairs(pairs))?))
        }
        QcharCmd::Kr { ty, node, k, shift } => {
            let c = cartan(ty)?;
            let p = KrCalculator::new(&c)?.kr(KRLabel { node: *node, k: *k, s: *shift })?;
            Ok(Output::poly(&p))
        }
        QcharCmd::Trunc { ty, monomial } => {
            let c = cartan(ty)?;
            let m = monomial_from_json(&parse_json(monomial)?)?;
            let ctx = LevelOne::new(&c, DEFAULT_CAP)?;
            Ok(Output::poly(&ctx.trunc_qchar(&m)?))
        }
        QcharCmd::Factor { ty, monomial } => {
            let c = cartan(ty)?;
            let m = monomial_from_json(&parse_json(monomial)?)?;
            let ctx = LevelOne::new(&c, DEFAULT_CAP)?;
            let factors = ctx.factor(&m)?;
            let json = factors.iter().map(|f| factor_json(&ctx, f)).collect::<Result<Vec<_>>>()?;
            let mut text = Vec::new();
            for f in &factors {
                let mono = ctx.factor_monomial(f)?;
                text.push(match f {
                    Factor::Frozen(i) => format!("frozen {i}: L({})", TextMonomial(&mono)),
                    Factor::Variable(b) => format!("z{}: L({})", format_root(b), TextMonomial(&mono)),
                });
            }
            Ok(Output { json: json!(json), text: text.join("\n"), latex: None, ok: true })
        }
    }
}

fn run_cluster(cmd: &ClusterCmd, seed_cap: usize) -> Result<Output> {
    match cmd {
        ClusterCmd::Enumerate { ty, level, cap } => {
            let c = cartan(ty)?;
            let seed = gamma_seed(&c, *level);
            let graph = enumerate_exchange_graph(&seed, cap.unwrap_or(seed_cap))?;
            let mut table = serde_json::Map::new();
            let mut text = vec![format!(
                "{} at level {}: {} cluster variables, {} clusters",
                c.label(),
                level,
                graph.variables.len(),
                graph.clusters.len()
            )];
            for var in &graph.variables {
                let (f, g) = f_polynomial_and_gvector(&seed, var)?;
                table.insert(
                    var.id.to_string(),
                    json!({"denominator": var.denominator, "F": v_poly_json(&f), "g": g}),
                );
                text.push(format!(
                    "x{}  d = {}  g = {}  F = {}",
                    var.id,
                    format_root(&var.denominator),
                    format_root(&g),
                    v_poly_to_text(&f)
                ));
            }
            Ok(Output {
                json: json!({"type": c.label(), "level": level, "clusters": graph.clusters, "variables": table}),
                text: text.join("\n"),
                latex: None,
                ok: true,
            })
        }
        ClusterCmd::Fpoly { ty, level, beta } => {
            let c = cartan(ty)?;
            let beta = parse_csv(beta)?;
            let (f, g) = if *level == 1 {
                let ctx = LevelOne::new(&c, seed_cap)?;
                let id = ctx
                    .variable_for_root(&beta)
                    .ok_or_else(|| Error::InvalidInput(format!("{beta:?} is not an almost positive root")))?;
                (ctx.f_polys[id].clone(), ctx.g_vectors[id].clone())
            } else {
                let seed = gamma_seed(&c, *level);
                let graph = enumerate_exchange_graph(&seed, seed_cap)?;
                let var = variable_by_denominator(&graph, &beta)
                    .map_err(|_| Error::InvalidInput(format!("no variable has denominator {beta:?}")))?;
                f_polynomial_and_gvector(&seed, var)?
            };
            Ok(Output {
                json: json!({"F": v_poly_json(&f), "g": g}),
                text: format!("F = {}\ng = {}", v_poly_to_text(&f), format_root(&g)),
                latex: None,
                ok: true,
            })
        }
        ClusterCmd::Classify { ty, level } => {
            let c = cartan(ty)?;
            let class = classify_finite_type(&c, *level, seed_cap)?;
            Ok(Output { json: json!(class.to_string()), text: class.to_string(), latex: None, ok: true })
        }
    }
}

fn run_verify(cmd: &VerifyCmd, seed_cap: usize) -> Result<Output> {
    match cmd {
        VerifyCmd::L1 { ty } => {
            let c = cartan(ty)?;
            let r = engine::verify_l1_with(&LevelOne::new(&c, seed_cap)?)?;
            Ok(report(&r.entries, None))
        }
        VerifyCmd::Tsystem { ty, k_max } => {
            let c = cartan(ty)?;
            let mut kr = KrCalculator::new(&c)?;
            let mut entries = Vec::new();
            for i in c.nodes() {
                for k in 1..=*k_max {
                    for s in [c.xi(i), c.xi(i) + 1] {
                        let (lhs, rhs, sane) = kr.tsystem_sides(i, k, s)?;
                        entries.push(CheckEntry {
                            case: format!("i={i} k={k} s={s}"),
                            pass: sane && lhs == rhs,
                            lhs,
                            rhs,
                        });
                    }
                }
            }
            Ok(report(&entries, None))
        }
        VerifyCmd::Iota { ty, level } => {
            let c = cartan(ty)?;
            let entries: Vec<CheckEntry> = engine::iota_check(&c, *level)?
                .into_iter()
                .map(|e| CheckEntry {
                    case: format!(
                        "mutation at ({},{}) with image W^({})_{{{},{}}}",
                        e.vertex.0, e.vertex.1, e.image.node, e.image.k, e.image.s
                    ),
                    pass: e.pass,
                    lhs: e.exchange,
                    rhs: e.product,
                })
                .collect();
            let class = classify_finite_type(&c, *level, seed_cap)?;
            Ok(report(&entries, Some(("classification", json!(class.to_string()), format!("cluster type: {class}")))))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Singularity(_) => 2,
        Error::WindowTooSmall { .. } | Error::Consistency(_) | Error::CapExceeded(_) => 1,
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let result = match &cli.group {
        Group::Sl2(c) => run_sl2(c),
        Group::Rep(c) => run_rep(c),
        Group::Qchar(c) => run_qchar(c),
        Group::Cluster(c) => run_cluster(c, cli.seed_cap),
        Group::Verify(c) => run_verify(c, cli.seed_cap),
    };
    match result {
        Ok(o) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&o.json).expect("JSON values serialize"),
                Format::Text => o.text,
                Format::Latex => o.latex.unwrap_or(o.text),
            };
            let _ = writeln!(out, "{body}");
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point used by the binary.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn summary(p: &YPolynomial) -> String {
    format!("{} monomials, dimension {}", p.len(), dimension(p))
}
