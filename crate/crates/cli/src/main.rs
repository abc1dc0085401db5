//! `qclass`: compute and verify equivariant quasisymmetric invariants of
//! double posets and digraphs from JSON instance files.
//!
//! Exit status: 0 on success or a passing verification, 1 on a failing
//! verification (or a golden mismatch), 2 when a theorem's precondition or a
//! resource bound is not met, 64 on usage and schema errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qclass::digraph::DigraphInstance;
use qclass::dposet::DoublePosetInstance;
use qclass::qcf::ClassValue;
use qclass::random::{self, SuiteSummary, DEFAULT_SEED};
use qclass::{
    verify, Basis, CharacterTable, Error, PermGroup, PolyClassFunction, QSymExpr,
    QsymClassFunction, VerdictReport,
};
use serde_json::{json, Value};

const EXIT_FAIL: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "qclass", version, about)]
struct Cli {
    /// Emit tab-separated tables instead of JSON.
    #[arg(long, global = true)]
    tsv: bool,

    /// Compare the output against this golden file instead of printing it.
    #[arg(long, global = true, value_name = "FILE")]
    expect: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Character table of the instance's group.
    Chartable { file: PathBuf },
    /// The D-partition enumerator of a double poset.
    Omega {
        file: PathBuf,
        #[arg(long, value_enum, ignore_case = true, default_value_t = BasisArg::M)]
        basis: BasisArg,
        /// Average over the group (orbit counting).
        #[arg(long, conflicts_with = "coeven")]
        orbital: bool,
        /// Sign-twisted average (orbits with even stabilizers).
        #[arg(long)]
        coeven: bool,
    },
    /// The chromatic class function of a digraph.
    Chromatic {
        file: PathBuf,
        #[arg(long, value_enum, ignore_case = true, default_value_t = BasisArg::M)]
        basis: BasisArg,
        /// Only the coefficient of `t^k`.
        #[arg(long, value_name = "K")]
        t_degree: Option<usize>,
    },
    /// Order polynomial class function (double posets) or chromatic
    /// polynomial class function (digraphs).
    Orderpoly {
        file: PathBuf,
        /// Evaluate at `n` instead of printing the f-vector.
        #[arg(long, value_name = "N", allow_negative_numbers = true)]
        at: Option<i64>,
    },
    /// Check a theorem on an instance.
    Verify { theorem: Theorem, file: PathBuf },
    /// Run the seeded random-instance suites.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisArg {
    #[value(name = "M")]
    M,
    #[value(name = "F")]
    F,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::M => Basis::M,
            BasisArg::F => Basis::F,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Reciprocity,
    FEffective,
    MIncreasing,
    Flawless,
    HEffective,
    OrbitalReciprocity,
    OrientationDecomposition,
}

enum Instance {
    DoublePoset(DoublePosetInstance),
    Digraph(DigraphInstance),
}

impl Instance {
    fn group(&self) -> &std::sync::Arc<PermGroup> {
        match self {
            Instance::DoublePoset(i) => &i.group,
            Instance::Digraph(i) => &i.group,
        }
    }
}

/// Why a command stopped without producing output.
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult<T> = Result<T, Failure>;

/// A command's rendered output and whether it counts as a pass.
struct Output {
    text: String,
    pass: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, pass: true }
    }
}

fn load(path: &Path) -> CmdResult<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: not JSON: {e}", path.display())))?;
    let kind = match value.get("kind").and_then(Value::as_str) {
        Some(k) => k.to_string(),
        None if value.get("vertices").is_some() => "digraph".into(),
        None => "double-poset".into(),
    };
    let schema = |e: Error| match e {
        Error::InvalidInput(m) => Failure::Usage(format!("{}: {m}", path.display())),
        other => Failure::Lib(other),
    };
    match kind.as_str() {
        "double-poset" => Ok(Instance::DoublePoset(
            qclass::dposet::parse_instance(&text).map_err(schema)?,
        )),
        "digraph" => Ok(Instance::Digraph(
            qclass::digraph::parse_instance(&text).map_err(schema)?,
        )),
        other => Err(Failure::Usage(format!(
            "{}: unknown kind {other:?} (expected \"double-poset\" or \"digraph\")",
            path.display()
        ))),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn tsv_rows(rows: &[Vec<String>]) -> String {
    rows.iter().fold(String::new(), |mut out, r| {
        let _ = writeln!(out, "{}", r.join("\t"));
        out
    })
}

fn class_labels(g: &PermGroup) -> Vec<String> {
    (0..g.num_classes()).map(|k| g.class_label(k)).collect()
}

/// One row per class representative, one column per composition.
fn qcf_tsv<R: ClassValue>(q: &QsymClassFunction<R>) -> String {
    let support = q.support();
    let mut header = vec!["class".to_string()];
    header.extend(support.iter().map(|a| format!("{}_{a}", q.basis())));
    let mut rows = vec![header];
    for (k, label) in class_labels(q.group()).into_iter().enumerate() {
        let mut row = vec![label];
        row.extend(support.iter().map(|a| q.value(k).coeff(a).to_string()));
        rows.push(row);
    }
    tsv_rows(&rows)
}

fn expr_tsv<R: qclass::Ring>(q: &QSymExpr<R>) -> String {
    let mut rows = vec![vec!["composition".to_string(), "coefficient".to_string()]];
    rows.extend(
        q.terms()
            .map(|(a, c)| vec![format!("{}_{a}", q.basis()), c.to_string()]),
    );
    tsv_rows(&rows)
}

fn pcf_tsv(p: &PolyClassFunction) -> String {
    let g = p.group();
    let mut header = vec!["class".to_string()];
    header.extend((0..p.f_vector().len()).map(|i| format!("f_{i}")));
    let mut rows = vec![header];
    for (k, label) in class_labels(g).into_iter().enumerate() {
        let mut row = vec![label];
        row.extend(p.f_vector().iter().map(|c| c.value(k).to_string()));
        rows.push(row);
    }
    tsv_rows(&rows)
}

fn chartable_tsv(t: &CharacterTable) -> String {
    let g = t.group();
    let mut header = vec!["character".to_string()];
    header.extend(class_labels(g));
    let mut rows = vec![header];
    for i in 0..t.len() {
        let mut row = vec![format!("chi_{}", i + 1)];
        row.extend((0..g.num_classes()).map(|k| t.value(i, k).to_string()));
        rows.push(row);
    }
    tsv_rows(&rows)
}

fn reports_output(reports: &[VerdictReport], decisive: usize, tsv: bool) -> Output {
    let pass = reports[..decisive].iter().all(|r| r.pass);
    let text = if tsv {
        let mut rows = vec![vec![
            "theorem".to_string(),
            "instance".into(),
            "verdict".into(),
            "detail".into(),
        ]];
        for r in reports {
            let detail = r.to_string();
            let verdict = if r.pass { "PASS" } else { "FAIL" };
            rows.push(vec![
                r.theorem.clone(),
                r.instance.clone(),
                verdict.into(),
                detail,
            ]);
        }
        tsv_rows(&rows)
    } else if reports.len() == 1 {
        pretty(&reports[0].to_json())
    } else {
        pretty(&Value::Array(
            reports.iter().map(VerdictReport::to_json).collect(),
        ))
    };
    Output { text, pass }
}

fn qcf_output<R: ClassValue>(q: &QsymClassFunction<R>, tsv: bool) -> Output {
    Output::ok(if tsv {
        qcf_tsv(q)
    } else {
        pretty(&q.to_json())
    })
}

fn average_output<R: ClassValue>(
    q: &QsymClassFunction<R>,
    basis: Basis,
    orbital: bool,
    coeven: bool,
    tsv: bool,
) -> CmdResult<Output> {
    let (name, expr) = match (orbital, coeven) {
        (true, _) => ("orbital", q.orbital()?),
        (_, true) => ("coeven", q.coeven()?),
        _ => return Ok(qcf_output(&q.to_basis(basis), tsv)),
    };
    let expr = expr.to_basis(basis);
    Ok(Output::ok(if tsv {
        expr_tsv(&expr)
    } else {
        pretty(&json!({ name: expr.to_json() }))
    }))
}

fn require_double_poset(inst: &Instance, what: &str) -> CmdResult<()> {
    match inst {
        Instance::DoublePoset(_) => Ok(()),
        Instance::Digraph(_) => Err(Failure::Usage(format!(
            "{what} needs a double-poset instance"
        ))),
    }
}

fn verify_instance(theorem: Theorem, inst: &Instance, tsv: bool) -> CmdResult<Output> {
    let mut decisive = None;
    let reports: Vec<VerdictReport> = match inst {
        Instance::DoublePoset(i) => {
            let (d, g) = (&i.poset, &i.group);
            let name = d.describe(g);
            match theorem {
                Theorem::Reciprocity => vec![verify::check_reciprocity_dposet(d, g, true)?],
                Theorem::FEffective => vec![verify::check_f_effective(&d.omega_qcf(g)?, &name)?],
                Theorem::MIncreasing => vec![verify::check_m_increasing(&d.omega_qcf(g)?, &name)?],
                Theorem::Flawless => {
                    // Only the f-vector inequalities decide the verdict; the
                    // h-vector report is informational.
                    let p = d.order_poly_cf(g)?;
                    decisive = Some(1);
                    vec![
                        verify::check_flawless(&p, &name)?,
                        verify::check_h_flawless(&p, &name)?,
                    ]
                }
                Theorem::HEffective => {
                    vec![verify::check_h_effective(&d.order_poly_cf(g)?, &name)?]
                }
                Theorem::OrbitalReciprocity => {
                    vec![verify::check_orbital_reciprocity_dposet(d, g)?]
                }
                Theorem::OrientationDecomposition => {
                    return Err(Failure::Usage(
                        "orientation-decomposition needs a digraph instance".into(),
                    ))
                }
            }
        }
        Instance::Digraph(i) => {
            let (gr, g) = (&i.graph, &i.group);
            let name = gr.describe(g);
            let per_t = |f: &dyn Fn(
                &QsymClassFunction<qclass::Rational>,
                &str,
            ) -> qclass::Result<VerdictReport>|
             -> CmdResult<Vec<VerdictReport>> {
                let chi = gr.chromatic_qcf(g)?;
                (0..=chi.t_degree())
                    .map(|k| {
                        Ok(f(&chi.t_coefficient(k), &name)?
                            .with_note(format!("coefficient of t^{k}")))
                    })
                    .collect()
            };
            match theorem {
                Theorem::Reciprocity => vec![verify::check_reciprocity_digraph(gr, g)?],
                Theorem::FEffective => {
                    vec![verify::check_f_effective_by_t_degree(
                        &gr.chromatic_qcf(g)?,
                        &name,
                    )?]
                }
                Theorem::MIncreasing => per_t(&|q, n| verify::check_m_increasing(q, n))?,
                Theorem::Flawless => {
                    let f =
                        per_t(&|q, n| verify::check_flawless(&q.principal_specialization(), n))?;
                    let h =
                        per_t(&|q, n| verify::check_h_flawless(&q.principal_specialization(), n))?;
                    decisive = Some(f.len());
                    f.into_iter().chain(h).collect()
                }
                Theorem::HEffective => {
                    per_t(&|q, n| verify::check_h_effective(&q.principal_specialization(), n))?
                }
                Theorem::OrbitalReciprocity => {
                    vec![verify::check_orbital_reciprocity_digraph(gr, g)?]
                }
                Theorem::OrientationDecomposition => vec![gr.verify_orientation_decomposition(g)?],
            }
        }
    };
    Ok(reports_output(
        &reports,
        decisive.unwrap_or(reports.len()),
        tsv,
    ))
}

fn selftest_output(summaries: &[SuiteSummary], tsv: bool) -> Output {
    let pass = summaries.iter().all(SuiteSummary::pass);
    let text = if tsv {
        let mut rows = vec![vec![
            "suite".to_string(),
            "instances".into(),
            "checks".into(),
            "failures".into(),
            "notes".into(),
        ]];
        for s in summaries {
            rows.push(vec![
                s.suite.clone(),
                s.instances.to_string(),
                s.checks.to_string(),
                s.failures.len().to_string(),
                s.notes.join("; "),
            ]);
        }
        tsv_rows(&rows)
    } else {
        pretty(&serde_json::to_value(summaries).expect("summaries serialize"))
    };
    Output { text, pass }
}

fn execute(cli: &Cli) -> CmdResult<Output> {
    let tsv = cli.tsv;
    match &cli.command {
        Command::Chartable { file } => {
            let inst = load(file)?;
            let table = inst.group().character_table()?;
            Ok(Output::ok(if tsv {
                chartable_tsv(&table)
            } else {
                pretty(&table.to_json())
            }))
        }
        Command::Omega {
            file,
            basis,
            orbital,
            coeven,
        } => {
            let inst = load(file)?;
            require_double_poset(&inst, "omega")?;
            let Instance::DoublePoset(i) = inst else {
                unreachable!()
            };
            let q = i.poset.omega_qcf(&i.group)?;
            average_output(&q, (*basis).into(), *orbital, *coeven, tsv)
        }
        Command::Chromatic {
            file,
            basis,
            t_degree,
        } => {
            let Instance::Digraph(i) = load(file)? else {
                return Err(Failure::Usage("chromatic needs a digraph instance".into()));
            };
            let chi = i.graph.chromatic_qcf(&i.group)?.to_basis((*basis).into());
            Ok(match t_degree {
                Some(k) => qcf_output(&chi.t_coefficient(*k), tsv),
                None => qcf_output(&chi, tsv),
            })
        }
        Command::Orderpoly { file, at } => {
            let p = match load(file)? {
                Instance::DoublePoset(i) => i.poset.order_poly_cf(&i.group)?,
                Instance::Digraph(i) => i.graph.chromatic_poly_cf(&i.group)?,
            };
            Ok(Output::ok(match (at, tsv) {
                (Some(n), true) => {
                    let values = p.eval(*n);
                    let mut rows = vec![vec!["class".to_string(), format!("p({n})")]];
                    for (k, label) in class_labels(p.group()).into_iter().enumerate() {
                        rows.push(vec![label, values.value(k).to_string()]);
                    }
                    tsv_rows(&rows)
                }
                (Some(n), false) => pretty(&json!({ "at": n, "values": p.eval(*n).to_json() })),
                (None, true) => pcf_tsv(&p),
                (None, false) => pretty(&p.to_json()),
            }))
        }
        Command::Verify { theorem, file } => verify_instance(*theorem, &load(file)?, tsv),
        Command::Selftest { seed, count } => {
            let summaries = random::selftest(*seed, *count)?;
            Ok(selftest_output(&summaries, tsv))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let output = match execute(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::InvalidInput(_) => EXIT_USAGE,
                Error::Precondition(_) | Error::Resource(_) => EXIT_PRECONDITION,
                Error::Integrity(_) => EXIT_FAIL,
            });
        }
    };
    if let Some(golden) = &cli.expect {
        let want = match std::fs::read_to_string(golden) {
            Ok(w) => w,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", golden.display());
                return ExitCode::from(EXIT_USAGE);
            }
        };
        if want != output.text {
            eprintln!("output differs from {}", golden.display());
            print!("{}", output.text);
            return ExitCode::from(EXIT_FAIL);
        }
        eprintln!("output matches {}", golden.display());
    } else {
        print!("{}", output.text);
    }
    if output.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
