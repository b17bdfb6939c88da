//! metromodel — describe a metro network as layered transport, lint it
//! against reference-configuration rules, capture every powered element into
//! an operator segment, attribute measured energy, and rank sites for edge
//! compute.
//!
//! Exit codes: 0 success/clean; 1 findings with at least one error;
//! 2 warnings only under `--strict`; 3 usage, IO, parse, or operation
//! failure. Analysis output goes to standard output, diagnostics and usage
//! to the error stream, and identical inputs produce byte-identical output.

mod render;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use metromodel_core::energy::{attribute_energy, load_profiles_csv, SplitPolicy};
use metromodel_core::mec::{rank_sites, MecDemand};
use metromodel_core::model::{build_model, Model, SpaceClass};
use metromodel_core::recompose::{detect_hidden_consumers, expand_path, serial_recomposition};
use metromodel_core::validate::{validate_reference_configuration, Severity};
use metromodel_core::{catalog, schema};

#[derive(Parser)]
#[command(
    name = "metromodel",
    version,
    about = "Layered metro-network models: validation, energy attribution, edge-site candidacy"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SplitArg {
    Declared,
    Equal,
    Deny,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model against the reference-configuration rules
    Validate {
        model: PathBuf,
        /// Fail (exit 2) when only warnings are found
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Ready-made architecture templates
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Capture every powered element into a bounded segment
    Recompose {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Expand a path at one layer down through its server trails
    Expand {
        model: PathBuf,
        /// Layer the path is named at
        #[arg(long)]
        layer: String,
        /// Comma-separated element ids along the path
        #[arg(long, value_delimiter = ',', required = true)]
        path: Vec<String>,
        /// Print only the powered elements this layer cannot see
        #[arg(long)]
        hidden_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Attribute measured energy to segments and operators
    Attribute {
        model: PathBuf,
        /// Power-profile CSV (element_id,start_utc,end_utc,avg_power_w)
        #[arg(long)]
        power: PathBuf,
        /// Interval start (RFC 3339)
        #[arg(long)]
        from: String,
        /// Interval end (RFC 3339)
        #[arg(long)]
        to: String,
        /// How to divide a straddling element between its two sides
        #[arg(long, value_enum, default_value_t = SplitArg::Equal)]
        split: SplitArg,
        /// Straddler fractions by functional-group token, e.g. ONU=0.7,RG=0.3
        #[arg(long, value_delimiter = ',')]
        fractions: Vec<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Rank every site for hosting edge compute
    Mec {
        model: PathBuf,
        /// Power the deployment draws, in watts
        #[arg(long = "power-w")]
        power_w: f64,
        /// Minimum space class (pedestal, cabinet, vault, street-node,
        /// service-room, headend, central-office; customer-premises and
        /// other match only themselves)
        #[arg(long)]
        space: Option<String>,
        /// Waive the Ethernet-uplink requirement
        #[arg(long)]
        no_ethernet: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List template ids with a short description
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Instantiate a template as a model document
    New {
        /// Template id (see `catalog list`)
        template: String,
        /// Fold the routing gateway into the network termination device
        #[arg(long)]
        integrated_cpe: bool,
        /// Operator id for network-side elements
        #[arg(long, default_value = "op-metro")]
        operator: String,
        /// Prefix for generated site and element ids
        #[arg(long, default_value = "demo")]
        site_prefix: String,
        /// Write to a file instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(io::stdout(), "{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(3)
                }
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("{message}");
            ExitCode::from(3)
        }
    }
}

/// Write to standard output. A reader that hangs up early (`metromodel … |
/// head`) ends the program quietly instead of failing; any other write error
/// is an operation failure.
fn emit(text: &str) -> Result<(), String> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(format!("cannot write to standard output: {e}")),
    }
}

/// Read, parse, and build a model; any failure is an operation failure.
fn load_model(path: &Path) -> Result<Model, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let document = schema::parse_model(&text).map_err(|errors| {
        errors
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    })?;
    build_model(document.parts).map_err(|violations| {
        violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    })
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Validate { model, strict, format } => {
            let text = fs::read_to_string(&model)
                .map_err(|e| format!("cannot read {}: {e}", model.display()))?;
            let document = schema::parse_model(&text).map_err(|errors| {
                errors
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            // Structural violations are themselves error findings.
            let built = match build_model(document.parts) {
                Ok(built) => built,
                Err(violations) => {
                    match format {
                        Format::Text => emit(&render::violations_text(&violations))?,
                        Format::Json => emit(&render::to_json(&violations))?,
                    }
                    return Ok(ExitCode::from(1));
                }
            };
            let diagnostics = validate_reference_configuration(&built);
            match format {
                Format::Text => emit(&render::diagnostics_text(&diagnostics))?,
                Format::Json => emit(&render::to_json(&diagnostics))?,
            }
            let errors = diagnostics.iter().any(|d| d.severity == Severity::Error);
            let warnings = diagnostics.iter().any(|d| d.severity == Severity::Warning);
            Ok(if errors {
                ExitCode::from(1)
            } else if warnings && strict {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }

        Command::Catalog(CatalogCommand::List { format }) => {
            let templates = catalog::list_templates();
            match format {
                Format::Text => {
                    let mut text = String::new();
                    for (id, description) in &templates {
                        text.push_str(&format!("{}  {}\n", id.as_str(), description));
                    }
                    emit(&text)?;
                }
                Format::Json => {
                    let rows: Vec<serde_json::Value> = templates
                        .iter()
                        .map(|(id, description)| {
                            serde_json::json!({
                                "id": id.as_str(),
                                "description": description,
                            })
                        })
                        .collect();
                    emit(&render::to_json(&rows))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Catalog(CatalogCommand::New {
            template,
            integrated_cpe,
            operator,
            site_prefix,
            output,
        }) => {
            let params = catalog::TemplateParams {
                operator,
                site_prefix,
                integrated_cpe,
            };
            let parts = catalog::instantiate_template(&template, &params)
                .map_err(|e| e.to_string())?;
            let built = build_model(parts).map_err(|violations| {
                violations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            let document = schema::serialize_model(&built);
            match output {
                Some(path) => fs::write(&path, document)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => emit(&document)?,
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Recompose { model, format } => {
            let built = load_model(&model)?;
            let coverage = serial_recomposition(&built);
            match format {
                Format::Text => emit(&render::coverage_text(&coverage))?,
                Format::Json => emit(&render::to_json(&coverage))?,
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Expand {
            model,
            layer,
            path,
            hidden_only,
            format,
        } => {
            let built = load_model(&model)?;
            let hidden =
                detect_hidden_consumers(&built, &layer, &path).map_err(|e| e.to_string())?;
            if hidden_only {
                match format {
                    Format::Text => {
                        let mut text = String::new();
                        for id in &hidden {
                            text.push_str(id);
                            text.push('\n');
                        }
                        emit(&text)?;
                    }
                    Format::Json => emit(&render::to_json(&hidden))?,
                }
            } else {
                let trace = expand_path(&built, &layer, &path).map_err(|e| e.to_string())?;
                match format {
                    Format::Text => emit(&render::trace_text(&trace, &hidden))?,
                    Format::Json => emit(&render::to_json(&trace))?,
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Attribute {
            model,
            power,
            from,
            to,
            split,
            fractions,
            format,
        } => {
            let policy = match split {
                SplitArg::Declared => {
                    if fractions.is_empty() {
                        return Err("--split declared requires --fractions".to_string());
                    }
                    SplitPolicy::Declared(parse_fractions(&fractions)?)
                }
                other => {
                    if !fractions.is_empty() {
                        return Err("--fractions only applies to --split declared".to_string());
                    }
                    match other {
                        SplitArg::Equal => SplitPolicy::Equal,
                        _ => SplitPolicy::Deny,
                    }
                }
            };
            let built = load_model(&model)?;
            let file = fs::File::open(&power)
                .map_err(|e| format!("cannot read {}: {e}", power.display()))?;
            let profiles = load_profiles_csv(file).map_err(|e| e.to_string())?;
            let coverage = serial_recomposition(&built);
            let report = attribute_energy(&built, &coverage, &profiles, &from, &to, &policy)
                .map_err(|e| e.to_string())?;
            match format {
                ReportFormat::Text => emit(&render::energy_text(&report))?,
                ReportFormat::Json => emit(&render::to_json(&report))?,
                ReportFormat::Csv => emit(&render::energy_csv(&report))?,
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Mec {
            model,
            power_w,
            space,
            no_ethernet,
            format,
        } => {
            if !power_w.is_finite() || power_w < 0.0 {
                return Err(format!("--power-w must be a non-negative number, got {power_w}"));
            }
            let required_space_class = match &space {
                Some(token) => Some(SpaceClass::from_token(token).ok_or_else(|| {
                    format!("unknown space class `{token}`")
                })?),
                None => None,
            };
            let built = load_model(&model)?;
            let demand = MecDemand {
                required_power_w: power_w,
                required_space_class,
                requires_ethernet: !no_ethernet,
            };
            let reports = rank_sites(&built, &demand);
            match format {
                Format::Text => emit(&render::mec_text(&reports))?,
                Format::Json => emit(&render::to_json(&reports))?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Parse `GROUP=FRACTION` pairs.
fn parse_fractions(items: &[String]) -> Result<BTreeMap<String, f64>, String> {
    let mut fractions = BTreeMap::new();
    for item in items {
        let (group, value) = item
            .split_once('=')
            .ok_or_else(|| format!("bad fraction `{item}`; expected GROUP=FRACTION"))?;
        let value: f64 = value
            .parse()
            .map_err(|_| format!("bad fraction value in `{item}`"))?;
        if fractions.insert(group.to_string(), value).is_some() {
            return Err(format!("fraction for `{group}` given twice"));
        }
    }
    Ok(fractions)
}
