//! The `gt` command line: build, verify, tabulate and export representations.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gtbasis::branching::{
    branch_a, children_bcd, schur_poly, weyl_dim, weyl_dim_child, weyl_dim_positive,
};
use gtbasis::exact::{is_zero_vec, rank_of, OpPoly, Rat, Vector};
use gtbasis::export::{export_bcd, export_gl, export_orth, Export};
use gtbasis::gln::{build_irrep, GlnIrrep};
use gtbasis::liealg_bcd::{
    build_bcd_irrep_capped, build_orth_irrep, is_orthogonal_positive, BcdIrrep,
};
use gtbasis::patterns::{
    check_dominant_s4, enumerate, flip_convention, fmt_doubled, parse_doubled, Family, GtPattern,
};
use gtbasis::yangian::{
    brute_force_irreducible, build_tensor_module, irreducible_y2, irreducible_yminus,
    irreducible_yplus, HWString, Twist,
};
use gtbasis::{Error, Series};

#[derive(Parser, Debug)]
#[command(
    name = "gt",
    version,
    about = "Exact Gelfand-Tsetlin bases for gl_n, o_N and sp_2n"
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Construct a representation and summarize it
    Build(Target),
    /// Run the invariant suite and report each check
    Verify(Target),
    /// Print the dimension
    Dims(Target),
    /// Tabulate the branching to the next algebra in the chain
    Branch(Target),
    /// List the basis patterns in canonical order
    Patterns(Target),
    /// Build a Yangian tensor module L(α_1,β_1)⊗...⊗L(α_k,β_k) and check it
    YangianDemo(Demo),
    /// Write generator matrices as JSON
    Export(Target),
}

#[derive(Args, Debug)]
struct Target {
    /// ALGEBRA WEIGHT, e.g. `gl 2,1,0`, `sp4 0,-1`, `so5 -1/2,-1/2`; or WEIGHT alone with --series
    #[arg(required = true, num_args = 1..=2)]
    args: Vec<String>,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Demo {
    /// Strings as comma-separated α:β pairs, e.g. `1:0,3:2` or `1/2:-1/2`
    #[arg(default_value = "1:0,3:2")]
    factors: String,
    /// Twisted Yangian to restrict to: `minus`, or `plus:δ`
    #[arg(long)]
    twist: Option<String>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Opts {
    /// Also write machine-readable output to this path
    #[arg(long)]
    json: Option<PathBuf>,
    /// Refuse representations above this dimension
    #[arg(long, default_value_t = 600)]
    max_dim: usize,
    #[arg(long, value_enum)]
    series: Option<SeriesFlag>,
    /// Weight convention for so/sp: s3 is non-positive, s4 is the usual dominant one
    #[arg(long, value_enum, default_value_t = Convention::S3)]
    convention: Convention,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesFlag {
    Gl,
    So,
    Sp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Convention {
    S3,
    S4,
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A resolved representation request.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Rep {
    Gl(Vec<i64>),
    /// Non-positive convention, `o_{2n+1}`, `sp_{2n}` or `o_{2n}` chains.
    S3(Series, Vec<i64>),
    /// Dominant convention, orthogonal chain.
    S4(Series, Vec<i64>),
}

impl Rep {
    fn name(&self) -> String {
        let (s, n) = match self {
            Rep::Gl(l) => return format!("gl{}", l.len()),
            Rep::S3(s, l) | Rep::S4(s, l) => (*s, l.len()),
        };
        match s {
            Series::B => format!("so{}", 2 * n + 1),
            Series::C => format!("sp{}", 2 * n),
            _ => format!("so{}", 2 * n),
        }
    }

    fn weight(&self) -> &[i64] {
        match self {
            Rep::Gl(l) | Rep::S3(_, l) | Rep::S4(_, l) => l,
        }
    }

    fn header(&self) -> String {
        let conv = match self {
            Rep::Gl(_) => "",
            Rep::S3(..) => " [s3]",
            Rep::S4(..) => " [s4]",
        };
        format!("{} λ = {}{}", self.name(), fmt_doubled(self.weight()), conv)
    }

    fn dim(&self) -> gtbasis::Result<u64> {
        match self {
            Rep::Gl(l) => weyl_dim(Series::A, l),
            Rep::S3(s, l) => weyl_dim(*s, l),
            Rep::S4(s, l) => weyl_dim_positive(*s, l),
        }
    }

    fn capped(&self, max_dim: usize) -> gtbasis::Result<u64> {
        let d = self.dim()?;
        if d > max_dim as u64 {
            return Err(Error::TooLarge(format!(
                "dimension {d} exceeds --max-dim {max_dim}"
            )));
        }
        Ok(d)
    }
}

fn parse_algebra(tok: &str, lambda: &[i64]) -> gtbasis::Result<Series> {
    let t = tok.trim().to_ascii_lowercase();
    let n = lambda.len();
    let (head, size) = match t.find(|c: char| c.is_ascii_digit()) {
        Some(k) => {
            let size: usize = t[k..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad algebra {tok:?}")))?;
            (&t[..k], Some(size))
        }
        None => (t.as_str(), None),
    };
    let series = match (head, size) {
        ("gl" | "a", _) => Series::A,
        ("sp" | "c", _) => Series::C,
        ("b", _) => Series::B,
        ("d", _) => Series::D,
        ("so", Some(s)) if s % 2 == 1 => Series::B,
        ("so", Some(_)) => Series::D,
        ("so", None) if lambda.iter().any(|x| x % 2 != 0) => Series::B,
        ("so", None) => {
            return Err(Error::Parse(
                "`so` needs its size to tell o_2n+1 from o_2n, e.g. so5 or so4".into(),
            ))
        }
        _ => {
            return Err(Error::Parse(format!(
                "unknown algebra {tok:?}; expected gl, sp, so or A-D"
            )))
        }
    };
    if let Some(s) = size {
        let want = match series {
            Series::A => n,
            Series::B => 2 * n + 1,
            _ => 2 * n,
        };
        if head != "gl" && head != "sp" && head != "so" {
            if s != n {
                return Err(Error::Shape(format!(
                    "{tok} has rank {s} but λ has {n} entries"
                )));
            }
        } else if s != want {
            return Err(Error::Shape(format!(
                "{tok} does not match a weight with {n} entries"
            )));
        }
    }
    Ok(series)
}

fn resolve(t: &Target) -> gtbasis::Result<Rep> {
    let (alg, weight) = match (t.args.as_slice(), t.opts.series) {
        ([a, w], _) => (a.clone(), w.clone()),
        ([w], Some(s)) => (format!("{s:?}").to_ascii_lowercase(), w.clone()),
        ([_], None) => {
            return Err(Error::Parse(
                "give ALGEBRA WEIGHT, or WEIGHT with --series".into(),
            ))
        }
        _ => return Err(Error::Parse("expected ALGEBRA WEIGHT".into())),
    };
    let lambda = parse_doubled(&weight)?;
    if lambda.is_empty() {
        return Err(Error::Parse("empty weight".into()));
    }
    let series = parse_algebra(&alg, &lambda)?;
    Ok(match (series, t.opts.convention) {
        (Series::A, _) => Rep::Gl(lambda),
        (Series::C, Convention::S4) => Rep::S3(Series::C, flip_convention(&lambda)),
        (s, Convention::S3) => Rep::S3(s, lambda),
        (s, Convention::S4) => Rep::S4(s, lambda),
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Shape(_) | Error::NotDominant(_) | Error::Malformed(_) => 2,
        Error::TooLarge(_) | Error::Hypothesis(_) | Error::Domain(_) | Error::Singular(_) => 3,
        Error::Contract(_) => 1,
    }
}

const USAGE: &str = "usage: gt <build|verify|dims|branch|patterns|yangian-demo|export> ALGEBRA WEIGHT [--json PATH] [--max-dim N] [--series gl|so|sp] [--convention s3|s4]";

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    // negative weights would otherwise read as flags
    let argv = argv.into_iter().map(|a| {
        let a: std::ffi::OsString = a.into();
        match a.to_str() {
            Some(t)
                if t.len() > 1
                    && t.starts_with('-')
                    && t[1..].starts_with(|c: char| c.is_ascii_digit() || c == '(') =>
            {
                format!(" {t}").into()
            }
            _ => a,
        }
    });
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut out = Outcome::default();
    match dispatch(&cli.cmd, &mut out) {
        Ok(code) => out.code = code,
        Err(e) => {
            out.code = exit_code(&e);
            let _ = writeln!(out.stderr, "error: {e}");
            if out.code == 2 {
                let _ = writeln!(out.stderr, "{USAGE}");
            }
        }
    }
    out
}

fn write_json(path: &Option<PathBuf>, v: &serde_json::Value) -> gtbasis::Result<()> {
    if let Some(p) = path {
        let s = serde_json::to_string_pretty(v).expect("json value");
        std::fs::write(p, s + "\n")
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn dispatch(cmd: &Cmd, out: &mut Outcome) -> gtbasis::Result<i32> {
    let o = &mut out.stdout;
    match cmd {
        Cmd::Dims(t) => {
            let rep = resolve(t)?;
            let d = rep.dim()?;
            let _ = writeln!(o, "{d}");
            write_json(
                &t.opts.json,
                &json!({"algebra": rep.name(), "lambda": rep.weight(), "dim": d}),
            )?;
            Ok(0)
        }
        Cmd::Patterns(t) => {
            let rep = resolve(t)?;
            rep.capped(t.opts.max_dim)?;
            let family = match &rep {
                Rep::Gl(_) => Family::A,
                Rep::S3(Series::B, _) => Family::B3,
                Rep::S3(Series::C, _) => Family::C3,
                Rep::S3(..) => Family::D3,
                Rep::S4(Series::B, _) => Family::B4,
                Rep::S4(..) => Family::D4,
            };
            let ps = enumerate(family, rep.weight())?;
            let _ = writeln!(o, "# {} : {} patterns", rep.header(), ps.len());
            for p in &ps {
                let _ = writeln!(o, "{}", fmt_doubled(&p.key()));
            }
            write_json(
                &t.opts.json,
                &json!({"algebra": rep.name(), "lambda": rep.weight(), "patterns": ps}),
            )?;
            Ok(0)
        }
        Cmd::Branch(t) => {
            let rep = resolve(t)?;
            let rows = branch_rows(&rep)?;
            let total: u64 = rows.iter().map(|r| r.1 as u64 * r.2).sum();
            let _ = writeln!(o, "# {}", rep.header());
            let _ = writeln!(o, "{:<24} {:>6} {:>8}", "mu", "mult", "dim");
            for (mu, c, d) in &rows {
                let _ = writeln!(o, "{:<24} {:>6} {:>8}", fmt_doubled(mu), c, d);
            }
            let _ = writeln!(o, "sum = {total}, dim = {}", rep.dim()?);
            let table: Vec<_> = rows
                .iter()
                .map(|(mu, c, d)| json!({"mu": mu, "mult": c, "dim": d}))
                .collect();
            write_json(
                &t.opts.json,
                &json!({"algebra": rep.name(), "lambda": rep.weight(), "branching": table}),
            )?;
            Ok(0)
        }
        Cmd::Build(t) => {
            let rep = resolve(t)?;
            rep.capped(t.opts.max_dim)?;
            let e = export(&rep, t.opts.max_dim)?;
            let nnz: usize = e.generators.values().map(Vec::len).sum();
            let _ = writeln!(o, "{}", rep.header());
            let _ = writeln!(o, "dim = {}", e.dim);
            let _ = writeln!(o, "generators = {}", e.generators.len());
            let _ = writeln!(o, "nonzero entries = {nnz}");
            let _ = writeln!(o, "orthogonal basis = {}", e.normsq.is_some());
            write_json(&t.opts.json, &serde_json::to_value(&e).expect("export"))?;
            Ok(0)
        }
        Cmd::Export(t) => {
            let rep = resolve(t)?;
            rep.capped(t.opts.max_dim)?;
            let e = export(&rep, t.opts.max_dim)?;
            match &t.opts.json {
                Some(_) => write_json(&t.opts.json, &serde_json::to_value(&e).expect("export"))?,
                None => {
                    let _ = writeln!(o, "{}", e.to_json());
                }
            }
            Ok(0)
        }
        Cmd::Verify(t) => {
            let rep = resolve(t)?;
            rep.capped(t.opts.max_dim)?;
            let checks = verify(&rep, t.opts.max_dim)?;
            let _ = writeln!(o, "# {}", rep.header());
            report(o, &checks);
            let failed = checks.iter().filter(|c| c.1 == Status::Fail).count();
            let list: Vec<_> = checks
                .iter()
                .map(|(n, s)| json!({"check": n, "status": s.word()}))
                .collect();
            write_json(
                &t.opts.json,
                &json!({"algebra": rep.name(), "lambda": rep.weight(), "checks": list}),
            )?;
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Cmd::YangianDemo(d) => yangian_demo(d, o),
    }
}

fn branch_rows(rep: &Rep) -> gtbasis::Result<Vec<(Vec<i64>, usize, u64)>> {
    match rep {
        Rep::Gl(l) => {
            if l.len() < 2 {
                return Err(Error::Domain("gl_1 has no subalgebra in the chain".into()));
            }
            branch_a(l)?
                .into_iter()
                .map(|mu| Ok((mu.clone(), 1, weyl_dim(Series::A, &mu)?)))
                .collect()
        }
        Rep::S3(s, l) => children_bcd(*s, l)?
            .into_iter()
            .map(|sp| {
                Ok((
                    sp.mu.clone(),
                    sp.multiplicity(),
                    weyl_dim_child(*s, &sp.mu)?,
                ))
            })
            .collect(),
        Rep::S4(s, l) => {
            check_dominant_s4(s.letter(), l)?;
            children_bcd(*s, &flip_convention(l))?
                .into_iter()
                .map(|sp| {
                    Ok((
                        flip_convention(&sp.mu),
                        sp.multiplicity(),
                        weyl_dim_child(*s, &sp.mu)?,
                    ))
                })
                .collect()
        }
    }
}

fn bcd(s: Series, l: &[i64], max_dim: usize) -> gtbasis::Result<BcdIrrep> {
    build_bcd_irrep_capped(s, l, max_dim)
}

fn export(rep: &Rep, max_dim: usize) -> gtbasis::Result<Export> {
    match rep {
        Rep::Gl(l) => Ok(export_gl(&build_irrep(l.len(), l)?)),
        Rep::S3(s, l) => export_bcd(&bcd(*s, l, max_dim)?),
        Rep::S4(s, l) => export_orth(&build_orth_irrep(*s, l)?),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn word(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

type Checks = Vec<(String, Status)>;

fn push(c: &mut Checks, name: impl Into<String>, r: gtbasis::Result<bool>) {
    let st = match r {
        Ok(true) => Status::Pass,
        Ok(false) => Status::Fail,
        Err(Error::Singular(_)) | Err(Error::Domain(_)) => Status::Skip,
        Err(_) => Status::Fail,
    };
    c.push((name.into(), st));
}

fn report(o: &mut String, checks: &Checks) {
    for (name, st) in checks {
        let _ = writeln!(o, "{:<4} {name}", st.word().to_ascii_uppercase());
    }
    let count = |s| checks.iter().filter(|c| c.1 == s).count();
    let _ = writeln!(
        o,
        "{} passed, {} failed, {} skipped",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skip)
    );
}

fn verify(rep: &Rep, max_dim: usize) -> gtbasis::Result<Checks> {
    let mut c = Checks::new();
    match rep {
        Rep::Gl(l) => verify_gl(&build_irrep(l.len(), l)?, &mut c),
        Rep::S3(s, l) => verify_s3(&bcd(*s, l, max_dim)?, &mut c),
        Rep::S4(s, l) => verify_s4(*s, l, &mut c)?,
    }
    Ok(c)
}

fn verify_gl(m: &GlnIrrep, c: &mut Checks) {
    let n = m.n;
    let d = m.dim();
    push(
        c,
        "dimension = Weyl formula",
        weyl_dim(Series::A, &m.lambda).map(|w| w == d as u64),
    );
    push(c, "commutation relations", Ok(m.commutator_failures() == 0));
    let xi = m.highest();
    let hw = (1..=n).all(|i| {
        (i + 1..=n).all(|j| is_zero_vec(&m.gen(i, j).apply(&xi)))
            && m.gen(i, i).apply(&xi)
                == xi
                    .iter()
                    .map(|x| x * &Rat::half(m.lambda[i - 1]))
                    .collect::<Vector>()
    });
    push(c, "highest vector", Ok(hw));
    push(
        c,
        "adjointness with the norms",
        Ok(m.adjointness_failures() == 0),
    );
    push(
        c,
        "lowering-operator basis",
        Ok(m.lowering_basis_mismatches() == 0),
    );
    push(
        c,
        "Capelli determinant eigenvalue",
        m.capelli_det(n)
            .map(|p| p == OpPoly::scalar_poly(d, &m.capelli_eigen_poly())),
    );
    for i in 1..n {
        push(
            c,
            format!("Capelli interpolation at h_{i}"),
            m.capelli_interpolation_check(i),
        );
        push(
            c,
            format!("quantum-minor form of z_{n}{i}, z_{i}{n}"),
            m.tau_equals_z_check(i),
        );
    }
    push(c, "Drinfeld generator actions", m.drinfeld_check());
    push(c, "κ proportional to ξ", m.kappa_constants().map(|_| true));
    push(
        c,
        "Gelfand-Tsetlin subalgebra eigenvalues",
        m.gt_subalgebra_check(),
    );
    push(
        c,
        "characteristic identity",
        Ok(m.characteristic_identity_check()),
    );
    push(c, "character = Schur polynomial", Ok(character_check(m)));
}

fn character_check(m: &GlnIrrep) -> bool {
    let n = m.n;
    let shift = m.lambda[n - 1];
    let shape: Vec<usize> = m
        .lambda
        .iter()
        .map(|x| ((x - shift) / 2) as usize)
        .collect();
    let mut counts = std::collections::BTreeMap::new();
    for p in &m.basis {
        let w: Vec<usize> = p
            .weight()
            .iter()
            .map(|x| ((x - shift) / 2) as usize)
            .collect();
        *counts.entry(w).or_insert(0usize) += 1;
    }
    counts == schur_poly(&shape, n)
}

fn verify_s3(m: &BcdIrrep, c: &mut Checks) {
    let s = m.series();
    let l = m.lambda.clone();
    push(
        c,
        "dimension = Weyl formula",
        weyl_dim(s, &l).map(|w| w == m.dim() as u64),
    );
    push(c, "highest vector", Ok(m.highest_check()));
    push(c, "commutation relations", Ok(m.commutator_failures() == 0));
    push(c, "contravariant form", Ok(m.contravariance_check()));
    let basis = m.gt_basis_bcd();
    push(
        c,
        "GT basis: full rank, one vector per pattern",
        basis
            .as_ref()
            .map(|b| {
                b.len() == m.dim()
                    && rank_of(&b.iter().map(|x| x.1.clone()).collect::<Vec<_>>()) == m.dim()
            })
            .map_err(Clone::clone),
    );
    push(
        c,
        "GT basis: pattern weights",
        basis
            .as_ref()
            .map(|b| b.iter().all(|(p, v)| m.weight_of(v) == Some(p.weight())))
            .map_err(Clone::clone),
    );
    let children = match children_bcd(s, &l) {
        Ok(ch) => ch,
        Err(e) => {
            push(c, "branching rule", Err(e));
            return;
        }
    };
    let sum: gtbasis::Result<u64> = children
        .iter()
        .map(|sp| weyl_dim_child(s, &sp.mu).map(|d| d * sp.multiplicity() as u64))
        .sum();
    push(c, "branching sum = dim", sum.map(|x| x == m.dim() as u64));
    if m.n() < 2 && s != Series::C {
        return;
    }
    for sp in &children {
        let mu = &sp.mu;
        let tag = fmt_doubled(mu);
        push(
            c,
            format!("multiplicity basis μ = {tag}"),
            m.multiplicity_basis(mu).and_then(|a| {
                let b = m.multiplicity_basis_strings(mu)?;
                let vs: Vec<Vector> = a.iter().map(|x| x.1.clone()).collect();
                Ok(a.len() == sp.multiplicity() && rank_of(&vs) == a.len() && a == b)
            }),
        );
        if s == Series::C {
            push(
                c,
                format!("F_nn and F_n,-n actions μ = {tag}"),
                m.fnn_action_check(mu),
            );
        }
        if m.n() >= 2 {
            push(
                c,
                format!("Z_ab(u) twisted Yangian μ = {tag}"),
                m.zab_yangian_check(mu).map(|r| r.ok()),
            );
        }
    }
}

fn verify_s4(s: Series, l: &[i64], c: &mut Checks) -> gtbasis::Result<()> {
    let m = build_orth_irrep(s, l)?;
    let family = if s == Series::B {
        Family::B4
    } else {
        Family::D4
    };
    let count = enumerate(family, l)?.len();
    push(
        c,
        "dimension = Weyl formula",
        weyl_dim_positive(s, l).map(|w| w == m.dim() as u64),
    );
    push(c, "highest vector", Ok(m.highest_check()));
    push(c, "commutation relations", Ok(m.commutator_failures() == 0));
    let basis = m.orth_gt_basis();
    push(
        c,
        "basis size = pattern count",
        basis
            .as_ref()
            .map(|b| b.len() == count)
            .map_err(Clone::clone),
    );
    let vs: gtbasis::Result<Vec<Vector>> = basis
        .as_ref()
        .map(|b| b.iter().map(|x| x.1.clone()).collect())
        .map_err(Clone::clone);
    push(
        c,
        "basis spans V(λ)",
        vs.as_ref()
            .map(|v| rank_of(v) == m.dim())
            .map_err(Clone::clone),
    );
    push(
        c,
        "Gram matrix diagonal and positive",
        vs.as_ref()
            .map(|v| is_orthogonal_positive(&m.gram_of(v)))
            .map_err(Clone::clone),
    );
    push(
        c,
        "o_2 charges",
        basis
            .as_ref()
            .map(|b| b.iter().all(|(p, v)| m.o2_charge(v) == Some(p.weight()[0])))
            .map_err(Clone::clone),
    );
    Ok(())
}

fn parse_factors(s: &str) -> gtbasis::Result<Vec<HWString>> {
    s.split(',')
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected α:β, got {pair:?}")))?;
            HWString::new(a.parse()?, b.parse()?).map_err(|e| Error::Parse(e.to_string()))
        })
        .collect()
}

fn parse_twist(s: &str) -> gtbasis::Result<Twist> {
    match s.trim() {
        "minus" | "-" => Ok(Twist::Minus),
        t => match t.strip_prefix("plus:") {
            Some(d) => Ok(Twist::Plus(d.parse()?)),
            None => Err(Error::Parse(format!(
                "twist must be `minus` or `plus:δ`, got {t:?}"
            ))),
        },
    }
}

fn yangian_demo(d: &Demo, o: &mut String) -> gtbasis::Result<i32> {
    let factors = parse_factors(&d.factors)?;
    let twist = d.twist.as_deref().map(parse_twist).transpose()?;
    let m = build_tensor_module(&factors)?;
    let dim = m.eta().len();
    let names: Vec<String> = factors
        .iter()
        .map(|f| format!("L({},{})", f.alpha, f.beta))
        .collect();
    let _ = writeln!(o, "# {}", names.join(" ⊗ "));
    let _ = writeln!(o, "dim = {dim}");
    let qdet: Vec<String> = m.qdet_scalar().iter().map(Rat::to_string).collect();
    let _ = writeln!(
        o,
        "quantum determinant coefficients = [{}]",
        qdet.join(", ")
    );
    let _ = writeln!(
        o,
        "Y(2) irreducible (criterion) = {}",
        irreducible_y2(&factors)
    );
    let mut c = Checks::new();
    let pts: Vec<(Rat, Rat)> = [(1, 3), (2, 7), (-5, 2), (3, -4), (7, 11)]
        .iter()
        .map(|&(a, b)| (Rat::new(a, 5), Rat::new(b, 3)))
        .collect();
    push(&mut c, "RTT relation at 5 points", Ok(m.rtt_check(&pts)));
    push(&mut c, "quantum determinant scalar", Ok(m.qdet_check()));
    push(&mut c, "highest vector", Ok(m.highest_check()));
    push(&mut c, "η-basis action formulas", m.eta_action_check());
    if dim <= 8 {
        let brute = brute_force_irreducible(&m.generator_matrices(None), dim);
        push(
            &mut c,
            "Y(2) criterion agrees with brute force",
            Ok(brute == irreducible_y2(&factors)),
        );
    }
    let mut tw_json = serde_json::Value::Null;
    if let Some(tw) = &twist {
        let crit = match tw {
            Twist::Minus => irreducible_yminus(&factors),
            Twist::Plus(delta) => irreducible_yplus(&factors, delta),
        };
        let _ = writeln!(o, "twisted irreducible (criterion) = {crit}");
        push(
            &mut c,
            "twisted symmetry relation",
            Ok(m.twisted_symmetry_check(tw)),
        );
        push(&mut c, "S_n,-n(u) commute", Ok(m.s_commute_check(tw, &pts)));
        push(
            &mut c,
            "S_n,-n(u) formula = coproduct",
            m.snn_matches_coproduct(tw),
        );
        push(
            &mut c,
            "twisted action formulas",
            m.twisted_action_check(tw),
        );
        if dim <= 8 {
            let brute = brute_force_irreducible(&m.generator_matrices(Some(tw)), dim);
            push(
                &mut c,
                "twisted criterion agrees with brute force",
                Ok(brute == crit),
            );
        }
        tw_json = json!({"twist": format!("{tw:?}"), "irreducible": crit});
    }
    report(o, &c);
    let list: Vec<_> = c
        .iter()
        .map(|(n, s)| json!({"check": n, "status": s.word()}))
        .collect();
    write_json(
        &d.json,
        &json!({"factors": factors, "dim": dim, "qdet": qdet, "twisted": tw_json, "checks": list}),
    )?;
    Ok(if c.iter().any(|x| x.1 == Status::Fail) {
        1
    } else {
        0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gt(args: &str) -> Outcome {
        run(std::iter::once("gt").chain(args.split_whitespace()))
    }

    #[test]
    fn dims_examples() {
        assert_eq!(gt("dims gl 2,1,0").stdout, "8\n");
        assert_eq!(gt("dims gl 0,0,0").stdout, "1\n");
        assert_eq!(gt("dims sp4 0,-1").stdout, "4\n");
        assert_eq!(gt("dims so5 -1/2,-1/2").stdout, "4\n");
        assert_eq!(gt("dims --series sp -1,-1").stdout, "5\n");
        assert_eq!(gt("dims so5 1,0 --convention s4").stdout, "5\n");
    }

    #[test]
    fn algebra_names() {
        assert_eq!(parse_algebra("so4", &[0, 0]).unwrap(), Series::D);
        assert_eq!(parse_algebra("B", &[0, 0]).unwrap(), Series::B);
        assert_eq!(parse_algebra("so", &[-1, -1]).unwrap(), Series::B);
        assert!(matches!(parse_algebra("so", &[0, 0]), Err(Error::Parse(_))));
        assert!(matches!(
            parse_algebra("sp6", &[0, 0]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(gt("dims gl 0,1").code, 2);
        assert_eq!(gt("dims gl x").code, 2);
        assert_eq!(gt("frobnicate").code, 2);
        assert_eq!(gt("build gl 6,0,0 --max-dim 10").code, 3);
        assert_eq!(gt("yangian-demo 0:1").code, 2);
        assert!(gt("dims gl 0,1").stderr.contains("usage"));
    }

    #[test]
    fn verify_passes() {
        let r = gt("verify gl 2,1,0");
        assert_eq!(r.code, 0, "{}", r.stdout);
        assert!(r.stdout.contains("0 failed"));
        assert_eq!(gt("verify sp4 -1,-1").code, 0);
        assert_eq!(gt("verify so5 1,0 --convention s4").code, 0);
    }

    #[test]
    fn output_is_deterministic() {
        for cmd in [
            "patterns sp4 0,-1",
            "branch so5 -1/2,-1/2",
            "export gl 1,0",
            "yangian-demo 1:0,3:2 --twist minus",
        ] {
            assert_eq!(gt(cmd), gt(cmd));
        }
    }

    #[test]
    fn export_round_trip() {
        let r = gt("export sp4 0,-1");
        let e = Export::from_json(&r.stdout).unwrap();
        assert_eq!(e.dim, 4);
        let m = bcd(Series::C, &[0, -2], 600).unwrap();
        assert_eq!(
            export_bcd(&m).unwrap().matrices().unwrap(),
            e.matrices().unwrap()
        );
    }

    #[test]
    fn branch_table_sums_to_dim() {
        let r = gt("branch gl 2,1,0");
        assert!(r.stdout.contains("sum = 8, dim = 8"), "{}", r.stdout);
        let r = gt("branch sp4 -1,-1");
        assert!(r.stdout.contains("sum = 5, dim = 5"), "{}", r.stdout);
    }
}
