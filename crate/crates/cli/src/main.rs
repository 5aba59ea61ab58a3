use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use avg_core::decide::{implies_with, Verdict};
use avg_core::findim::analysis::{
    ad_eigen, derived_series, describe, domain_check, kernel_equals_brackets, lower_central_series,
    nilpotency_check, nilpotent_radical_domain, Nilpotency, Series,
};
use avg_core::findim::lie::{induced_bracket, induced_by_averaging, InduceResult};
use avg_core::findim::operator::{is_averaging, is_reynolds, is_unitary, LawCheck};
use avg_core::findim::quotient::{parse_univariate, primary_from_poly};
use avg_core::findim::StructureAlgebra;
use avg_core::freeavg::chain::chain_witness;
use avg_core::freeavg::{eval_generic, Mode};
use avg_core::io::{AlgebraDoc, BracketDoc, OperatorDoc, SCALAR_DEFAULT_ENV};
use avg_core::linalg::{Matrix, Subspace};
use avg_core::par::Execution;
use avg_core::scalar::{format_rational, Ring, Scalar};
use avg_core::terms::{parse_claims, parse_equation, parse_term, Equation, IdentitySet};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "avg", version, about = "Exact computation with averaging operators")]
struct Cli {
    /// Print a JSON document instead of the text report.
    #[arg(long, global = true)]
    json: bool,

    /// Scalar ring for algebra files that do not declare one ("Q" or "Zmod:<n>").
    #[arg(long, global = true, env = SCALAR_DEFAULT_ENV, default_value = "Q")]
    scalar: Ring,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an identity set implies the given equations.
    Decide {
        #[arg(long, value_parser = ["averaging", "unitary", "reynolds"])]
        hypothesis: String,
        #[arg(long)]
        claim: Vec<String>,
        #[arg(long)]
        claims_file: Option<PathBuf>,
        /// Decide claims one after another instead of in parallel.
        #[arg(long)]
        sequential: bool,
    },
    /// Evaluate a term at v_i -> x_i in a free averaging algebra.
    Eval {
        #[arg(long, default_value = "plain")]
        mode: Mode,
        term: String,
    },
    /// Check the algebra axioms and the averaging, unitary and Reynolds laws.
    Verify { algebra: PathBuf, operator: PathBuf },
    /// Decide whether a Lie bracket is induced by an averaging operator.
    LieInduce { algebra: PathBuf, bracket: PathBuf },
    /// Analyze the Lie algebra induced by an averaging operator.
    LieAnalyze {
        algebra: PathBuf,
        operator: PathBuf,
        /// Coordinates of an element whose ad eigenstructure should be reported.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        element: Option<Vec<String>>,
    },
    /// Print a strictly ascending chain of averaging ideals in F_X.
    Chain { x_count: u32, n: usize },
    /// Build Q[t]/(p) with F = multiplication by the class of t.
    Primary { poly: String },
}

/// A rendered result: text report, JSON document, exit code.
struct Report {
    text: String,
    json: Value,
    code: u8,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_algebra(path: &Path, default: Ring) -> Result<StructureAlgebra> {
    let doc: AlgebraDoc = serde_json::from_str(&read(path)?).with_context(|| format!("{}", path.display()))?;
    doc.build(default).with_context(|| format!("{}", path.display()))
}

fn load_operator(path: &Path, a: &StructureAlgebra) -> Result<Matrix> {
    let doc: OperatorDoc = serde_json::from_str(&read(path)?).with_context(|| format!("{}", path.display()))?;
    doc.build(a).with_context(|| format!("{}", path.display()))
}

fn vec_text(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn vec_json(v: &[Scalar]) -> Value {
    Value::from(v.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn subspace_json(s: &Subspace) -> Value {
    Value::from(s.basis().iter().map(|v| vec_json(v)).collect::<Vec<_>>())
}

fn law_json(c: LawCheck) -> Value {
    match c {
        LawCheck::Holds => json!({"holds": true}),
        LawCheck::FailsAt(i, j) => json!({"holds": false, "witness": [i, j]}),
    }
}

fn law_text(c: LawCheck) -> String {
    match c {
        LawCheck::Holds => "yes".into(),
        LawCheck::FailsAt(i, j) => format!("no (basis pair ({i}, {j}))"),
    }
}

fn matrix_text(m: &Matrix) -> String {
    m.to_rows().iter().map(|r| format!("  {}\n", vec_text(r))).collect()
}

fn decide(hypothesis: &str, claims: &[String], file: Option<&Path>, sequential: bool) -> Result<Report> {
    let h: IdentitySet = hypothesis.parse().map_err(|e: String| anyhow!(e))?;
    let mut equations: Vec<Equation> = Vec::new();
    for (k, c) in claims.iter().enumerate() {
        equations.push(parse_equation(c).with_context(|| format!("claim {}", k + 1))?);
    }
    if let Some(path) = file {
        equations.extend(parse_claims(&read(path)?).with_context(|| format!("{}", path.display()))?);
    }
    if equations.is_empty() {
        bail!("no claims given (use --claim or --claims-file)");
    }
    let exec = if sequential { Execution::Sequential } else { Execution::default() };
    let verdicts = implies_with(exec, h, &equations);
    let mut text = String::new();
    let mut results = Vec::new();
    for (eq, v) in equations.iter().zip(&verdicts) {
        match v {
            Verdict::Holds => writeln!(text, "HOLDS  {eq}")?,
            Verdict::Fails(w) => writeln!(text, "FAILS  {eq}\n  witness: {w}")?,
        }
        results.push(json!({
            "claim": eq.to_string(),
            "verdict": if v.holds() { "holds" } else { "fails" },
            "witness": v.witness().map(ToString::to_string),
        }));
    }
    let all = verdicts.iter().all(Verdict::holds);
    Ok(Report {
        text,
        json: json!({"command": "decide", "hypothesis": h.name(), "results": results, "all_hold": all}),
        code: if all { 0 } else { 1 },
    })
}

fn eval(mode: Mode, term: &str) -> Result<Report> {
    let t = parse_term(term).context("term")?;
    let p = eval_generic(&t, mode);
    Ok(Report {
        text: format!("{p}\n"),
        json: json!({"command": "eval", "mode": mode.name(), "term": t.to_string(), "value": p.to_string(), "is_zero": p.is_zero()}),
        code: 0,
    })
}

fn verify(algebra: &Path, operator: &Path, default: Ring) -> Result<Report> {
    let doc: AlgebraDoc = serde_json::from_str(&read(algebra)?).with_context(|| format!("{}", algebra.display()))?;
    let a = doc.build_unverified(default).with_context(|| format!("{}", algebra.display()))?;
    let report = a.verify();
    let mut text = format!("algebra: dimension {} over {}\n", a.dim(), a.ring());
    let yes_no = |ok: bool| if ok { "yes" } else { "no" };
    writeln!(text, "commutative: {}", report.commutativity_failure.map_or("yes".into(), |(i, j)| format!("no (at ({i}, {j}))")))?;
    writeln!(text, "associative: {}", report.associativity_failure.map_or("yes".into(), |(i, j, k)| format!("no (at ({i}, {j}, {k}))")))?;
    writeln!(text, "unital: {}", report.unit_failure.map_or("yes".into(), |i| format!("no (at e{i})")))?;
    let mut out = json!({
        "command": "verify",
        "dim": a.dim(),
        "scalar": a.ring().to_string(),
        "algebra": {
            "commutative": report.commutative(),
            "associative": report.associative(),
            "unital": report.unital(),
        },
    });
    if !report.ok() {
        out["operator"] = Value::Null;
        return Ok(Report { text, json: out, code: 1 });
    }
    let f = load_operator(operator, &a)?;
    let avg = is_averaging(&a, &f)?;
    let unitary = is_unitary(&a, &f)?;
    let reynolds = is_reynolds(&a, &f)?;
    writeln!(text, "averaging: {}", law_text(avg))?;
    writeln!(text, "unitary: {}", yes_no(unitary))?;
    writeln!(text, "reynolds: {}", law_text(reynolds))?;
    out["operator"] = json!({"averaging": law_json(avg), "unitary": unitary, "reynolds": law_json(reynolds)});
    Ok(Report { text, json: out, code: if avg.holds() { 0 } else { 1 } })
}

fn lie_induce(algebra: &Path, bracket: &Path, default: Ring) -> Result<Report> {
    let a = load_algebra(algebra, default)?;
    let doc: BracketDoc = serde_json::from_str(&read(bracket)?).with_context(|| format!("{}", bracket.display()))?;
    let l = doc.build(&a).with_context(|| format!("{}", bracket.display()))?;
    let (text, json, code) = match induced_by_averaging(&a, &l)? {
        InduceResult::NotEndoInduced { i, j } => (
            format!("NOT INDUCED: [x,y] = x[1,y] + y[x,1] fails at basis pair ({i}, {j})\n"),
            json!({"outcome": "not_induced", "reason": "endomorphism_criterion", "witness": [i, j]}),
            1,
        ),
        InduceResult::NoSolution => (
            "NOT INDUCED: the linear system for t has no solution\n".to_string(),
            json!({"outcome": "not_induced", "reason": "no_solution"}),
            1,
        ),
        InduceResult::Induced { t, operator } => (
            format!("INDUCED\nt = {}\noperator:\n{}", vec_text(&t), matrix_text(&operator)),
            json!({"outcome": "induced", "t": vec_json(&t), "operator": OperatorDoc::from_matrix(&operator)}),
            0,
        ),
        InduceResult::VerificationFailed { t, operator, detail } => (
            format!("VERIFICATION FAILED: {detail}\nt = {}\noperator:\n{}", vec_text(&t), matrix_text(&operator)),
            json!({"outcome": "verification_failed", "detail": detail, "t": vec_json(&t), "operator": OperatorDoc::from_matrix(&operator)}),
            2,
        ),
    };
    let mut json = json;
    json["command"] = "lie-induce".into();
    Ok(Report { text, json, code })
}

fn series_text(s: &Series) -> String {
    let dims: Vec<String> = s.stages.iter().map(|x| x.dim().to_string()).collect();
    match s.zero_at() {
        Some(k) => format!("dims {} (zero at {k})", dims.join(", ")),
        None => format!("dims {} (stable at {})", dims.join(", "), s.last()),
    }
}

fn series_json(s: &Series) -> Value {
    json!({
        "first_index": s.first_index,
        "dims": s.stages.iter().map(Subspace::dim).collect::<Vec<_>>(),
        "zero_at": s.zero_at(),
    })
}

fn lie_analyze(algebra: &Path, operator: &Path, element: Option<&[String]>, default: Ring) -> Result<Report> {
    let a = load_algebra(algebra, default)?;
    let f = load_operator(operator, &a)?;
    if let LawCheck::FailsAt(i, j) = is_averaging(&a, &f)? {
        return Ok(Report {
            text: format!("NOT AVERAGING: fails at basis pair ({i}, {j})\n"),
            json: json!({"command": "lie-analyze", "averaging": false, "witness": [i, j]}),
            code: 1,
        });
    }
    let l = induced_bracket(&a, &f)?;
    let derived = derived_series(&a, &l);
    let lower = lower_central_series(&a, &l);
    let mut text = String::new();
    writeln!(text, "derived series: {}", series_text(&derived))?;
    writeln!(text, "lower central series: {}", series_text(&lower))?;
    let mut out = json!({
        "command": "lie-analyze",
        "averaging": true,
        "bracket": BracketDoc::from_table(&l),
        "derived_series": series_json(&derived),
        "lower_central_series": series_json(&lower),
    });

    let nil = nilpotency_check(&a, &f)?;
    match &nil.verdict {
        Nilpotency::Nilpotent { k } => {
            writeln!(text, "nilpotency: f(A)^{k} annihilates [A,A]")?;
            out["nilpotency"] = json!({"nilpotent": true, "k": k});
        }
        Nilpotency::NotNilpotent { stable } => {
            writeln!(text, "nilpotency: powers of f(A) stabilize at {stable} outside the annihilator")?;
            out["nilpotency"] = json!({"nilpotent": false, "stable": subspace_json(stable)});
        }
    }

    let kb = kernel_equals_brackets(&a, &f)?;
    writeln!(text, "kernel: {}", kb.kernel)?;
    writeln!(text, "bracket span: {}", kb.brackets)?;
    writeln!(text, "kernel = bracket span: {}", if kb.equal { "yes" } else { "no" })?;
    out["kernel"] = subspace_json(&kb.kernel);
    out["bracket_span"] = subspace_json(&kb.brackets);
    out["kernel_equals_brackets"] = kb.equal.into();

    let domain = a.ring().is_field() && domain_check(&a)?;
    out["domain"] = domain.into();
    if domain {
        let radical = nilpotent_radical_domain(&a, &f)?;
        writeln!(text, "nilpotent radical: {radical}")?;
        out["nilpotent_radical"] = subspace_json(&radical);
    } else {
        writeln!(text, "nilpotent radical: not computed (not a domain over a field)")?;
        out["nilpotent_radical"] = Value::Null;
    }

    if let Some(coords) = element {
        if coords.len() != a.dim() {
            bail!("--element has {} coordinates but the algebra has dimension {}", coords.len(), a.dim());
        }
        let elem = coords
            .iter()
            .map(|c| a.ring().parse_scalar(c.trim()))
            .collect::<Result<Vec<_>, _>>()
            .context("--element")?;
        let es = ad_eigen(&a, &f, &elem)?;
        writeln!(text, "ad eigenstructure of {}: {}", vec_text(&elem), describe(&es))?;
        out["ad_eigen"] = es
            .iter()
            .map(|(r, s)| json!({"eigenvalue": format_rational(r), "eigenspace": subspace_json(s)}))
            .collect::<Vec<_>>()
            .into();
    }
    Ok(Report { text, json: out, code: 0 })
}

fn chain(x_count: u32, n: usize) -> Result<Report> {
    let c = chain_witness(x_count, n)?;
    let mut text = String::new();
    for (k, ideal) in c.iter().enumerate() {
        writeln!(text, "I_{} = {ideal}", k + 1)?;
    }
    writeln!(text, "strict inclusions verified: {}", c.len().saturating_sub(1))?;
    let ideals: Vec<Vec<String>> = c.iter().map(|i| i.generators().iter().map(ToString::to_string).collect()).collect();
    Ok(Report { text, json: json!({"command": "chain", "x_count": x_count, "ideals": ideals}), code: 0 })
}

fn primary(poly: &str) -> Result<Report> {
    let p = parse_univariate(poly)?;
    let (a, f) = primary_from_poly(&p)?;
    let avg = is_averaging(&a, &f)?;
    let mut text = format!("algebra: Q[t]/({poly}), dimension {}\n", a.dim());
    for i in 0..a.dim() {
        for j in i..a.dim() {
            writeln!(text, "  e{i}*e{j} = {}", vec_text(a.basis_product(i, j)))?;
        }
    }
    write!(text, "operator (multiplication by t):\n{}", matrix_text(&f))?;
    writeln!(text, "averaging: {}", law_text(avg))?;
    Ok(Report {
        text,
        json: json!({
            "command": "primary",
            "algebra": AlgebraDoc::from_algebra(&a),
            "operator": OperatorDoc::from_matrix(&f),
            "averaging": avg.holds(),
        }),
        code: if avg.holds() { 0 } else { 2 },
    })
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Decide { hypothesis, claim, claims_file, sequential } => {
            decide(hypothesis, claim, claims_file.as_deref(), *sequential)
        }
        Command::Eval { mode, term } => eval(*mode, term),
        Command::Verify { algebra, operator } => verify(algebra, operator, cli.scalar),
        Command::LieInduce { algebra, bracket } => lie_induce(algebra, bracket, cli.scalar),
        Command::LieAnalyze { algebra, operator, element } => {
            lie_analyze(algebra, operator, element.as_deref(), cli.scalar)
        }
        Command::Chain { x_count, n } => chain(*x_count, *n),
        Command::Primary { poly } => primary(poly),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"error": format!("{e:#}")}));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
