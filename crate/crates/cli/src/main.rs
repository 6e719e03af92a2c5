use std::io::Write;
use std::process::ExitCode;

use automorphic::basis::weight_exponents;
use automorphic::groups::{group_with_window, DEFAULT_WINDOW, REGISTERED};
use automorphic::numeric::{eval_qseries, parse_tau};
use automorphic::report::{run, Suite, VerifyOptions};
use automorphic::{build_basis, dim_ak, registry_get, Error, EvalConfig, GroupData};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "automorphic",
    version,
    about = "Bases of automorphic forms for genus-0 groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Holomorphy,
    Automorphy,
    Ledger,
    Oracle,
    Span,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Holomorphy => Suite::Holomorphy,
            SuiteArg::Automorphy => Suite::Automorphy,
            SuiteArg::Ledger => Suite::Ledger,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Span => Suite::Span,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the space of weight-k forms.
    Dim {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: i64,
    },
    /// Construct the basis h_0, ..., h_{d-1}.
    Basis {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: i64,
        #[arg(long, default_value_t = 50)]
        terms: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Restrict to one group (repeatable).
        #[arg(long)]
        group: Vec<String>,
        #[arg(long, default_value_t = 4)]
        k_min: i64,
        #[arg(long, default_value_t = 24)]
        k_max: i64,
        /// Terms summed in numeric checks.
        #[arg(long, default_value_t = 80)]
        terms: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate h_j at a point of the upper half-plane.
    Eval {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: i64,
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Point written as a+bi with b > 0.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, default_value_t = 80)]
        terms: i64,
        #[arg(long, default_value_t = 0.8)]
        min_imag: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Registered group data.
    Groups {
        #[command(subcommand)]
        action: GroupsAction,
    },
}

#[derive(Subcommand)]
enum GroupsAction {
    List,
    Show { name: String },
}

enum Failure {
    Usage(String),
    Compute(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownGroup(_)
            | Error::OddWeight(_)
            | Error::WeightTooSmall(_)
            | Error::InvalidOrder(_)
            | Error::IndexOutOfRange { .. }
            | Error::NotInUpperHalfPlane(_)
            | Error::BelowAdmissibleImag { .. }
            | Error::InvalidConfig(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

fn group_for_window(name: &str, window: i64) -> Result<GroupData, Error> {
    // basis construction needs the Hauptmodul a few terms past the window
    let needed = window + 8;
    if needed > DEFAULT_WINDOW {
        group_with_window(name, needed)
    } else {
        registry_get(name).cloned()
    }
}

fn execute(cmd: Command, out: &mut String) -> Result<(), Failure> {
    match cmd {
        Command::Dim { group, weight } => {
            let g = registry_get(&group)?;
            let d = dim_ak(g.genus, &g.orders(), weight)?;
            out.push_str(&format!("{}\n", d.max(0)));
        }
        Command::Basis {
            group,
            weight,
            terms,
            format,
        } => {
            if terms < 1 {
                return Err(Failure::Usage(format!(
                    "--terms must be positive, got {terms}"
                )));
            }
            let g = group_for_window(&group, terms)?;
            weight_exponents(&g, weight)?;
            let b = build_basis(&g, weight, terms)?;
            match format {
                Format::Json => {
                    out.push_str(&serde_json::to_string(&b.to_json()?).expect("json"));
                    out.push('\n');
                }
                Format::Text => {
                    out.push_str(&format!(
                        "group {}  k = {}  d = {}  exponents {:?}\n",
                        g.name,
                        weight,
                        b.weight.d.max(0),
                        b.weight.exponents
                    ));
                    if let Some(msg) = b.diagnostic() {
                        out.push_str(&format!("{msg}\n"));
                    }
                    for (j, f) in b.forms.iter().enumerate() {
                        out.push_str(&format!("h_{j} = {f}\n"));
                    }
                }
            }
        }
        Command::Verify {
            suite,
            group,
            k_min,
            k_max,
            terms,
            format,
        } => {
            if k_min > k_max {
                return Err(Failure::Usage(format!(
                    "empty weight range [{k_min}, {k_max}]"
                )));
            }
            let groups = if group.is_empty() {
                REGISTERED.iter().map(|s| s.to_string()).collect()
            } else {
                for g in &group {
                    registry_get(g)?;
                }
                group
            };
            let eval = EvalConfig::new(terms, 0.8, 1e-8)?;
            let opts = VerifyOptions {
                groups,
                k_min,
                k_max,
                eval,
                ..VerifyOptions::default()
            };
            let report = run(suite.into(), &opts)?;
            match format {
                Format::Json => {
                    out.push_str(&serde_json::to_string(&report.to_json()).expect("json"));
                    out.push('\n');
                }
                Format::Text => out.push_str(&report.to_text()),
            }
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
        Command::Eval {
            group,
            weight,
            index,
            tau,
            terms,
            min_imag,
            format,
        } => {
            let tau = parse_tau(&tau)?;
            let cfg = EvalConfig::new(terms, min_imag, 1e-8)?;
            let g = group_for_window(&group, terms)?;
            let w = weight_exponents(&g, weight)?;
            if index as i64 >= w.d.max(0) {
                return Err(Error::IndexOutOfRange {
                    j: index as i64,
                    d: w.d.max(0),
                }
                .into());
            }
            let b = build_basis(&g, weight, terms)?;
            let v = eval_qseries(&b.forms[index], tau, &cfg)?;
            match format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "group": g.name,
                        "k": weight,
                        "j": index,
                        "tau": [tau.re, tau.im],
                        "terms": terms,
                        "value": [v.re, v.im],
                    });
                    out.push_str(&serde_json::to_string(&doc).expect("json"));
                    out.push('\n');
                }
                Format::Text => out.push_str(&format!("{:.15e} {:+.15e}i\n", v.re, v.im)),
            }
        }
        Command::Groups { action } => match action {
            GroupsAction::List => {
                for name in REGISTERED {
                    let g = registry_get(name)?;
                    let sig: Vec<String> = g.orders().iter().map(ToString::to_string).collect();
                    out.push_str(&format!(
                        "{name}  ({}; {})  h = {}\n",
                        g.genus,
                        sig.join(", "),
                        g.cusp_width
                    ));
                }
            }
            GroupsAction::Show { name } => {
                let g = registry_get(&name)?;
                out.push_str(&serde_json::to_string(&g.to_json()).expect("json"));
                out.push('\n');
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = execute(cli.command, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
