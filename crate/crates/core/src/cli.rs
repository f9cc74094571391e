//! Command-line front end.
//!
//! Exit codes: 0 success, 1 configuration error, 2 a zeta factor evaluated
//! where a real zero cannot be excluded, 3 a failed check.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::affine::AffineForm;
use crate::characters::{self, LineName, Parabolic, TorusCharacter};
use crate::dual_side::{self, LFactorization, Source};
use crate::eisenstein::{self, ConstantTerm, PoleReport};
use crate::error::Error;
use crate::local_integrals::{self, ShellFunction};
use crate::rational::{fmt_q, parse_q, Q};
use crate::root_datum::{FieldLabel, Preset, RootSystem};
use crate::zeta::ZetaExpr;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_ZERO_REGION: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "eisencalc",
    version,
    about = "Constant terms, pole orders and residue constants of degenerate Eisenstein series"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Md,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// D4, 2D4, 3D4, G2 or A1.
    #[arg(long, default_value = "2D4")]
    pub group: String,
    /// JSON document `{cartan, labels}` describing a custom system.
    #[arg(long)]
    pub system_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// borel, P or Q. Defaults to the parabolic of `--line`.
    #[arg(long)]
    pub parabolic: Option<String>,
    /// chiQ, chiP, muP, muQ or kappa. Defaults to the degenerate line of
    /// the parabolic.
    #[arg(long)]
    pub line: Option<String>,
    /// Evaluation point `p/q`.
    #[arg(long)]
    pub point: String,
    /// Treat completed zeta values strictly between 0 and 1 as nonzero.
    #[arg(long)]
    pub assume_no_real_zeros: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// One row per coset representative: word, J-factor, order, exponent.
    Table(SeriesArgs),
    /// Pole order with exponent grouping and square-integrability.
    Poles(SeriesArgs),
    /// Siegel-Weil constants and the residue of the long intertwiner.
    Sw(GroupArgs),
    /// W-invariance, hyperplane cancellation and entireness of the
    /// normalized series.
    SharpCheck(GroupArgs),
    /// Change of variables between the two planes of characters.
    Iota(GroupArgs),
    /// Factorization of the standard L-function of G2.
    Lfactor {
        /// Vtau or Vchi.
        #[arg(long)]
        source: String,
        /// trivial or nontrivial.
        #[arg(long, default_value = "nontrivial")]
        chi: String,
        /// Report the pole order at this point.
        #[arg(long)]
        order_at: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Unramified Tate integral as a rational function of X = q^{-z}.
    Tate {
        /// lattice or shell.
        #[arg(long, default_value = "lattice")]
        kind: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value = "2s+3")]
        z: String,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn failed_check(stdout: String, stderr: String) -> Self {
        Outcome {
            code: EXIT_CHECK,
            stdout,
            stderr,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_)
        | Error::InvalidInput(_)
        | Error::UnsupportedGroup(_)
        | Error::NotFiniteType(_)
        | Error::LabelInconsistency(_)
        | Error::UnknownRoot(_) => EXIT_CONFIG,
        Error::IndeterminateZeroRegion(_) => EXIT_ZERO_REGION,
        _ => EXIT_CHECK,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cmd: &Command) -> crate::Result<Outcome> {
    match cmd {
        Command::Table(a) => cmd_table(a),
        Command::Poles(a) => cmd_poles(a),
        Command::Sw(g) => cmd_sw(g),
        Command::SharpCheck(g) => cmd_sharp_check(g),
        Command::Iota(g) => cmd_iota(g),
        Command::Lfactor {
            source,
            chi,
            order_at,
            format,
        } => cmd_lfactor(source, chi, order_at.as_deref(), *format),
        Command::Tate { kind, k, z, format } => cmd_tate(kind, *k, z, *format),
    }
}

fn load_system(g: &GroupArgs) -> crate::Result<RootSystem> {
    match &g.system_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            RootSystem::from_json(&text)
        }
        None => Ok(RootSystem::preset(Preset::parse(&g.group)?)),
    }
}

struct Series {
    sys: RootSystem,
    parabolic: Parabolic,
    line_name: String,
    ct: ConstantTerm,
    point: Q,
}

fn build_series(a: &SeriesArgs) -> crate::Result<Series> {
    let sys = load_system(&a.group)?;
    let point = parse_q(&a.point)?;
    let named = a.line.as_deref().map(LineName::parse).transpose()?;
    let parabolic = match (&a.parabolic, named) {
        (Some(p), _) => Parabolic::parse(p)?,
        (None, Some(l)) => l.parabolic(),
        (None, None) => {
            return Err(Error::InvalidInput(
                "give --parabolic, --line or both".into(),
            ))
        }
    };
    let levi = parabolic.levi(&sys)?;
    let (line, line_name) = match named {
        Some(l) => (l.build(&sys, "s")?, l.to_string()),
        None => (
            characters::degenerate_line(&sys, &levi, "s")?,
            format!("degenerate({parabolic})"),
        ),
    };
    let ct = eisenstein::constant_term(&sys, &levi, &line)?;
    Ok(Series {
        sys,
        parabolic,
        line_name,
        ct,
        point,
    })
}

fn md_cell(text: &str) -> String {
    text.replace('|', "\\|")
}

fn header_json(command: &str, s: &Series) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "group": s.sys.name(),
        "parabolic": s.parabolic.to_string(),
        "line": s.line_name,
        "line_coords": s.ct.line.to_json(),
        "point": fmt_q(&s.point),
    })
}

fn character_json(sys: &RootSystem, c: &TorusCharacter) -> Value {
    json!({
        "coords": c.to_json(),
        "text": c.to_string(),
        "rendered": c.render_fraction(sys),
    })
}

fn table_rows(s: &Series, assume: bool) -> crate::Result<Vec<Value>> {
    let at = eisenstein::terms_at(&s.ct, &s.point, assume)?;
    Ok(s.ct
        .terms
        .iter()
        .zip(&at)
        .map(|(t, p)| {
            json!({
                "word": t.word.to_string(),
                "j_factor": t.j_factor.to_string(),
                "j_factor_terms": t.j_factor.to_json(),
                "pole_order": -p.laurent.order,
                "leading": p.laurent.leading.to_string(),
                "exponent": character_json(&s.sys, &t.exponent),
                "exponent_at_point": character_json(&s.sys, &p.exponent),
            })
        })
        .collect())
}

fn cmd_table(a: &SeriesArgs) -> crate::Result<Outcome> {
    let s = build_series(a)?;
    let at = eisenstein::terms_at(&s.ct, &s.point, a.assume_no_real_zeros)?;
    let out = match a.group.format {
        Format::Json => {
            let mut v = header_json("table", &s);
            v["rows"] = Value::Array(table_rows(&s, a.assume_no_real_zeros)?);
            pretty(&v)
        }
        Format::Md => {
            let p = fmt_q(&s.point);
            let mut out = format!(
                "group {} | parabolic {} | line {} = {} | point {}\n\n",
                s.sys.name(),
                s.parabolic,
                s.line_name,
                s.ct.line,
                p
            );
            out.push_str(&format!(
                "| w | J(w,s) | order of pole at {p} | exponent | exponent at {p} |\n"
            ));
            out.push_str("|---|---|---|---|---|\n");
            for (t, pt) in s.ct.terms.iter().zip(&at) {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    t.word,
                    t.j_factor,
                    -pt.laurent.order,
                    md_cell(&t.exponent.render(&s.sys)),
                    md_cell(&pt.exponent.render_fraction(&s.sys)),
                ));
            }
            out
        }
    };
    Ok(Outcome::ok(out))
}

fn pole_json(s: &Series, r: &PoleReport) -> Value {
    let groups: Vec<Value> = r
        .groups
        .iter()
        .map(|g| {
            json!({
                "exponent": character_json(&s.sys, &g.exponent),
                "members": g.members.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "pole_order": g.pole_order(),
                "leading": g.leading.to_string(),
                "log_term": g.log_term.as_ref().map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
            })
        })
        .collect();
    let mut v = header_json("poles", s);
    v["order"] = json!(r.order);
    v["square_integrable"] = json!(r.square_integrable);
    v["surviving_exponents"] = Value::Array(
        r.surviving_exponents
            .iter()
            .map(|e| character_json(&s.sys, e))
            .collect(),
    );
    v["groups"] = Value::Array(groups);
    v
}

fn cmd_poles(a: &SeriesArgs) -> crate::Result<Outcome> {
    let s = build_series(a)?;
    let r = eisenstein::pole_report(&s.ct, &s.point, a.assume_no_real_zeros)?;
    let out = match a.group.format {
        Format::Json => pretty(&pole_json(&s, &r)),
        Format::Md => {
            let mut out = format!(
                "group {} | parabolic {} | line {} = {}\n\n",
                s.sys.name(),
                s.parabolic,
                s.line_name,
                s.ct.line
            );
            out.push_str(&format!("pole order at {}: {}\n", fmt_q(&s.point), r.order));
            out.push_str(&format!("square integrable: {}\n", r.square_integrable));
            let surv: Vec<String> = r
                .surviving_exponents
                .iter()
                .map(|e| e.render_fraction(&s.sys))
                .collect();
            out.push_str(&format!("surviving exponents: {}\n\n", surv.join(", ")));
            out.push_str("| exponent | members | pole order | leading | log term |\n");
            out.push_str("|---|---|---|---|---|\n");
            for g in &r.groups {
                let members: Vec<String> = g.members.iter().map(|w| w.to_string()).collect();
                let log = g
                    .log_term
                    .as_ref()
                    .map(|v| {
                        let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                        format!("({})", parts.join(", "))
                    })
                    .unwrap_or_default();
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    md_cell(&g.exponent.render_fraction(&s.sys)),
                    members.join(", "),
                    g.pole_order(),
                    g.leading,
                    log
                ));
            }
            out
        }
    };
    Ok(Outcome::ok(out))
}

/// Residue symbols other than `R_F` in an expression.
fn foreign_residues(e: &ZetaExpr) -> Vec<String> {
    e.residues()
        .keys()
        .filter(|l| **l != FieldLabel::F())
        .map(|l| format!("R_{}", l.symbol))
        .collect()
}

fn cmd_sw(g: &GroupArgs) -> crate::Result<Outcome> {
    let sys = load_system(g)?;
    let sw = eisenstein::siegel_weil_constant(&sys)?;
    let rows: Vec<(&str, String)> = vec![
        ("sharp_limit_P", sw.sharp_p.leading.to_string()),
        (
            "sharp_limit_P_in_s",
            sw.sharp_p.leading_in_param.to_string(),
        ),
        ("sharp_limit_Q", sw.sharp_q.leading.to_string()),
        ("ratio", sw.ratio.to_string()),
        ("ratio_P_in_s", sw.ratio_in_param.to_string()),
        ("residue", sw.residue.leading.to_string()),
        ("section_constant", sw.section_constant.to_string()),
        (
            "section_constant_P_in_s",
            sw.section_constant_in_param.to_string(),
        ),
    ];
    let mut foreign: Vec<String> = [
        &sw.sharp_p.leading,
        &sw.sharp_q.leading,
        &sw.ratio,
        &sw.residue.leading,
        &sw.section_constant,
    ]
    .iter()
    .flat_map(|e| foreign_residues(e))
    .collect();
    foreign.sort();
    foreign.dedup();
    let out = match g.format {
        Format::Json => {
            let mut v = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "sw",
                "group": sys.name(),
                "sharp_limit_P_order": sw.sharp_p.order,
                "sharp_limit_Q_order": sw.sharp_q.order,
                "residue_word": sw.residue_word.to_string(),
                "residue_order": sw.residue.order,
                "residue_symbols": {"R": "R_F"},
                "other_residue_symbols": foreign,
            });
            for (k, val) in &rows {
                v[*k] = json!(val);
            }
            pretty(&v)
        }
        Format::Md => {
            let mut out = format!("group {}\n\n", sys.name());
            out.push_str(&format!(
                "sharp limit muP at 3/10 (order {}, coordinate 5s-3/2): {}\n",
                sw.sharp_p.order, sw.sharp_p.leading
            ));
            out.push_str(&format!(
                "sharp limit muP at 3/10 (order {}, coordinate s): {}\n",
                sw.sharp_p.order, sw.sharp_p.leading_in_param
            ));
            out.push_str(&format!(
                "sharp limit muQ at 1/6 (order {}): {}\n",
                sw.sharp_q.order, sw.sharp_q.leading
            ));
            out.push_str(&format!("ratio: {}\n", sw.ratio));
            out.push_str(&format!("ratio (P side in s): {}\n", sw.ratio_in_param));
            out.push_str(&format!(
                "residue of {} on chiP at 3/10: {}\n",
                sw.residue_word, sw.residue.leading
            ));
            out.push_str(&format!("section constant: {}\n", sw.section_constant));
            out.push_str(&format!(
                "section constant (P side in s): {}\n",
                sw.section_constant_in_param
            ));
            out.push_str("R denotes R_F, the residue of xi_F at 1\n");
            if !foreign.is_empty() {
                out.push_str(&format!("other residues present: {}\n", foreign.join(", ")));
            }
            out
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_sharp_check(g: &GroupArgs) -> crate::Result<Outcome> {
    let sys = load_system(g)?;
    let mut ok = true;
    let mut invariance = Vec::new();
    for i in 0..sys.rank() {
        let r = eisenstein::sharp_invariance_check(&sys, i)?;
        ok &= r.passed();
        invariance.push((
            i + 1,
            r.checked,
            r.passed(),
            r.mismatches
                .first()
                .map(|m| format!("{}: {} != {}", m.word, m.lhs, m.rhs)),
        ));
    }
    let h0 = eisenstein::h0_exhaustive(&sys)?;
    ok &= h0.passed();
    let entire = eisenstein::entireness_check(&sys)?;
    ok &= entire.entire();
    let out = match g.format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "sharp-check",
            "group": sys.name(),
            "passed": ok,
            "invariance": invariance.iter().map(|(i, n, p, m)| json!({
                "simple_index": i, "terms": n, "passed": p, "mismatch": m,
            })).collect::<Vec<_>>(),
            "h0": {
                "checked": h0.checked,
                "failures": h0.failures.iter().map(|(i, w)| format!("{} {}", i + 1, w)).collect::<Vec<_>>(),
            },
            "entireness": {
                "hyperplanes": entire.hyperplanes,
                "surviving": entire.surviving,
            },
        })),
        Format::Md => {
            let mut out = format!("group {}\n\n", sys.name());
            for (i, n, p, m) in &invariance {
                out.push_str(&format!(
                    "W-invariance under w{i}: {} ({n} terms){}\n",
                    pass(*p),
                    m.as_ref()
                        .map(|m| format!(" first mismatch {m}"))
                        .unwrap_or_default()
                ));
            }
            out.push_str(&format!(
                "H^0 cancellation: {} ({} pairs, {} failures)\n",
                pass(h0.passed()),
                h0.checked,
                h0.failures.len()
            ));
            out.push_str(&format!(
                "entireness: {} ({} hyperplanes, {} surviving poles)\n",
                pass(entire.entire()),
                entire.hyperplanes,
                entire.surviving.len()
            ));
            for s in &entire.surviving {
                out.push_str(&format!("  {} shift {}: {}\n", s.root, s.shift, s.detail));
            }
            out
        }
    };
    Ok(if ok {
        Outcome::ok(out)
    } else {
        Outcome::failed_check(out, "error: sharp-check failed\n".into())
    })
}

fn pass(p: bool) -> &'static str {
    if p {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_iota(g: &GroupArgs) -> crate::Result<Outcome> {
    let sys = load_system(g)?;
    let r = characters::iota_check(&sys)?;
    let out = match g.format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "iota",
            "group": sys.name(),
            "holds": r.holds(),
            "iota_PQ": r.iota_pq.to_string(),
            "iota_QP": r.iota_qp.to_string(),
            "iota_QP_substituted": r.iota_qp_substituted.to_string(),
            "iota_PQ_special": r.special_pq.to_string(),
            "iota_QP_special": r.special_qp.to_string(),
            "w1_iota_PQ": r.reflected.to_string(),
        })),
        Format::Md => format!(
            "group {}\n\niota_PQ(s1,s2) = {}\niota_QP(u1,u2) = {}\niota_QP((5s2-s1)/4,(s1+5s2)/6) = {}\niota_PQ(-1/2,3/10) = {}\niota_QP(1/2,1/6) = {}\nw1.iota_PQ(1/2,3/10) = {}\nidentity holds: {}\n",
            sys.name(),
            r.iota_pq,
            r.iota_qp,
            r.iota_qp_substituted,
            r.special_pq,
            r.special_qp,
            r.reflected,
            r.holds()
        ),
    };
    Ok(Outcome::ok(out))
}

fn cmd_lfactor(
    source: &str,
    chi: &str,
    order_at: Option<&str>,
    format: Format,
) -> crate::Result<Outcome> {
    let source = Source::parse(source)?;
    let chi_trivial = match chi {
        "trivial" => true,
        "nontrivial" => false,
        other => {
            return Err(Error::Parse(format!(
                "--chi must be trivial or nontrivial, got {other:?}"
            )))
        }
    };
    let f: LFactorization = dual_side::lfactor_standard(source)?;
    let shown = if chi_trivial {
        f.with_trivial_chi()
    } else {
        f.clone()
    };
    let order = order_at
        .map(|p| -> crate::Result<(Q, i64)> {
            let p = parse_q(p)?;
            let o = f.order_at(&p, chi_trivial)?;
            Ok((p, o))
        })
        .transpose()?;
    let out = match format {
        Format::Json => {
            let mut v = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "lfactor",
                "source": format!("{source:?}"),
                "chi_trivial": chi_trivial,
                "factorization": f.to_string(),
                "degree": f.degree(),
                "factors": f.factors().iter().map(|x| json!({
                    "shift": fmt_q(&x.shift), "label": x.label, "multiplicity": x.multiplicity,
                })).collect::<Vec<_>>(),
            });
            if let Some((p, o)) = &order {
                v["point"] = json!(fmt_q(p));
                v["pole_order"] = json!(o);
            }
            pretty(&v)
        }
        Format::Md => match &order {
            Some((_, o)) => format!("{shown}\n{o}\n"),
            None => format!("{shown}\n"),
        },
    };
    Ok(Outcome::ok(out))
}

fn cmd_tate(kind: &str, k: i64, z: &str, format: Format) -> crate::Result<Outcome> {
    let f = match kind {
        "lattice" => ShellFunction::Lattice(k),
        "shell" => ShellFunction::Shell(k),
        other => {
            return Err(Error::Parse(format!(
                "--kind must be lattice or shell, got {other:?}"
            )))
        }
    };
    let z = AffineForm::parse(z)?;
    let t = local_integrals::tate_integral(f, &z);
    let out = match format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "tate",
            "function": f,
            "z": z.to_string(),
            "x": format!("q^-({z})"),
            "value": t.value.to_string(),
            "is_local_zeta": t.is_local_zeta(),
            "convergence": t.convergence,
        })),
        Format::Md => {
            let mut out = format!("{kind}({k}), X = q^-({z}): {}\n", t.value);
            if t.is_local_zeta() {
                out.push_str(&format!("= zeta_nu({z})\n"));
            }
            out.push_str(&format!("converges for {}\n", t.convergence));
            out
        }
    };
    Ok(Outcome::ok(out))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
