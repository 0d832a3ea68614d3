//! `decisive` command-line tool.

mod report;

use std::io::{Read as _, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use decisive::bounds::{self, CountConfig};
use decisive::emit::{cnf, ilp};
use decisive::io::{self, PatternFormat};
use decisive::pipeline::Strategy;
use decisive::{nrc, oracle, reduce, CoveragePattern, DecideOptions, Error, Hypergraph, NrcConfig};

use report::{Outcome, Report, ReportFormat};

#[derive(Parser, Debug)]
#[command(name = "decisive", version, about = "Decide phylogenetic decisiveness of taxon coverage patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Input file, or `-` for standard input.
    #[arg(long, short, global = true, default_value = "-")]
    input: PathBuf,
    /// Input format; guessed from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<InputFormat>,
    /// Where to write the primary output (report, model file or directory).
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Json)]
    report: ReportFormat,
    #[arg(long, global = true, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
    /// Largest node count the exhaustive oracle accepts.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_NODE_CAP,
          value_parser = positive::<usize>)]
    oracle_cap: usize,
    /// Largest node count the 3- and 4-color searches accept.
    #[arg(long, global = true, default_value_t = nrc::DEFAULT_SEARCH_CAP,
          value_parser = positive::<usize>)]
    search_cap: usize,
    /// Work limit for counting covered quadruples by enumeration.
    #[arg(long, global = true, default_value_t = bounds::DEFAULT_ENUMERATION_WORK_CAP,
          value_parser = positive::<u128>)]
    work_cap: u128,
    /// Split the searches across threads (verdicts unchanged, witnesses may differ).
    #[arg(long, global = true)]
    parallel: bool,
}

fn positive<T: std::str::FromStr + PartialOrd + From<u8>>(s: &str) -> Result<T, String> {
    match s.parse::<T>() {
        Ok(v) if v >= T::from(1) => Ok(v),
        _ => Err(format!("expected a positive integer, got '{s}'")),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether the pattern is decisive.
    Check,
    /// Search for a no-rainbow coloring with a given number of colors.
    Nrc {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=4))]
        r: u8,
    },
    /// Report the reduced instance built from distinct incidence rows.
    Reduce,
    /// Report the counting bounds and triple coverage.
    Bound,
    /// Write the feasibility ILP in LP format.
    EmitIlp,
    /// Write the 4-coloring CNF in DIMACS format.
    EmitCnf {
        #[arg(long, value_enum, default_value_t = CnfMode::Aux)]
        mode: CnfMode,
    },
    /// Greedily drop least-covered taxa until the pattern is decisive.
    Subset,
    /// Exhaustive search for a no-rainbow coloring.
    Oracle {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=16))]
        r: u8,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum InputFormat {
    MatrixCsv,
    LocusList,
    EdgeList,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Auto,
    Direct,
    Fpt,
    Oracle,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CnfMode {
    Aux,
    Enumerate,
}

impl Common {
    fn decide_options(&self) -> DecideOptions {
        DecideOptions {
            strategy: match self.strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Direct => Strategy::Direct,
                StrategyArg::Fpt => Strategy::Fpt,
                StrategyArg::Oracle => Strategy::Oracle,
            },
            nrc: self.nrc_config(),
            oracle_cap: self.oracle_cap,
            count: CountConfig { enumeration_work_cap: self.work_cap, ..CountConfig::default() },
        }
    }

    fn nrc_config(&self) -> NrcConfig {
        NrcConfig { search_cap: self.search_cap, parallel: self.parallel }
    }

    fn input_format(&self) -> InputFormat {
        self.format.unwrap_or_else(|| match self.input.extension().and_then(|e| e.to_str()) {
            Some("hg") | Some("edges") => InputFormat::EdgeList,
            _ => match PatternFormat::from_path(&self.input) {
                PatternFormat::MatrixCsv => InputFormat::MatrixCsv,
                PatternFormat::LocusList => InputFormat::LocusList,
            },
        })
    }

    fn read_input(&self) -> Result<String, Error> {
        if self.input == Path::new("-") {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        } else {
            std::fs::read_to_string(&self.input)
                .map_err(|e| Error::Io(format!("{}: {e}", self.input.display())))
        }
    }

    fn pattern(&self) -> Result<CoveragePattern, Error> {
        let text = self.read_input()?;
        match self.input_format() {
            InputFormat::MatrixCsv => io::parse_pattern_str(&text, PatternFormat::MatrixCsv),
            InputFormat::LocusList => io::parse_pattern_str(&text, PatternFormat::LocusList),
            InputFormat::EdgeList => {
                let h = io::parse_hypergraph_str(&text)?;
                CoveragePattern::from_sets(h.node_count(), h.edges())
            }
        }
    }

    fn hypergraph(&self) -> Result<(Hypergraph, Vec<String>), Error> {
        if let InputFormat::EdgeList = self.input_format() {
            let h = io::parse_hypergraph_str(&self.read_input()?)?;
            let names = (1..=h.node_count()).map(|i| format!("t{i}")).collect();
            return Ok((h, names));
        }
        let p = self.pattern()?;
        Ok((p.hypergraph(), p.taxa().to_vec()))
    }

    fn write_out(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn run(command: &Command, common: &Common) -> Result<Outcome, Error> {
    match command {
        Command::Check => {
            let p = common.pattern()?;
            let v = decisive::decide(&p, &common.decide_options())?;
            Ok(report::check(&p, &v))
        }
        Command::Nrc { r } => {
            let (h, names) = common.hypergraph()?;
            let out = nrc::nrc(&h, *r, &common.nrc_config())?;
            Ok(report::coloring("nrc", &names, *r, out.witness.as_ref(), Some(out.rule.as_str()), out.explored))
        }
        Command::Oracle { r } => {
            let (h, names) = common.hypergraph()?;
            let w = oracle::brute_force_nrc(&h, *r, common.oracle_cap)?;
            Ok(report::coloring("oracle", &names, *r, w.as_ref(), None, 0))
        }
        Command::Reduce => Ok(report::reduce(&reduce::summarize(&common.pattern()?))),
        Command::Bound => {
            let cfg = common.decide_options().count;
            Ok(report::bound(&bounds::bound_report(&common.pattern()?, &cfg)?))
        }
        Command::EmitIlp => {
            let p = common.pattern()?;
            let model = ilp::emit_ilp(&p)?;
            common.write_out(&model.to_lp())?;
            Ok(report::ilp(&model, common.out.as_deref()))
        }
        Command::EmitCnf { mode } => {
            let (h, _) = common.hypergraph()?;
            match mode {
                CnfMode::Aux => {
                    let f = cnf::emit_cnf_aux(&h)?;
                    common.write_out(&f.to_dimacs())?;
                    Ok(report::cnf(&[f], common.out.as_deref()))
                }
                CnfMode::Enumerate => {
                    let dir = common.out.as_ref().ok_or_else(|| {
                        Error::Domain("enumerate mode writes one file per formula; pass --out <dir>".into())
                    })?;
                    let formulas = cnf::emit_cnf_enumerate(&h)?;
                    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
                    for f in &formulas {
                        let [_, u, w, x] = f.pinned.expect("enumerate mode pins nodes");
                        let path = dir.join(format!("pin-{u}-{w}-{x}.cnf"));
                        std::fs::write(&path, f.to_dimacs())
                            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    }
                    Ok(report::cnf(&formulas, Some(dir)))
                }
            }
        }
        Command::Subset => {
            let p = common.pattern()?;
            match decisive::decisive_subset(&p, &common.decide_options()) {
                Ok(trace) => Ok(report::subset(&p, &trace)),
                Err(failure) => Ok(report::subset_failure(&p, &failure)),
            }
        }
    }
}

/// Model-emitting commands put the model on stdout unless `--out` is given,
/// so their report goes to stderr in that case.
fn report_to_stderr(command: &Command, common: &Common) -> bool {
    matches!(command, Command::EmitIlp | Command::EmitCnf { mode: CnfMode::Aux }) && common.out.is_none()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("DECISIVE_LOG", "warn")).init();
    let outcome = run(&cli.command, &cli.common).unwrap_or_else(|e| report::error(&e));
    let text = match cli.common.report {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&Report::new(&cli.command, &outcome))
                .expect("reports serialize");
            s.push('\n');
            s
        }
        ReportFormat::Text => outcome.text.clone(),
    };
    let failed = outcome.exit_code >= 2;
    if failed && matches!(cli.common.report, ReportFormat::Json) {
        print!("{text}");
    } else if failed || report_to_stderr(&cli.command, &cli.common) {
        eprint!("{text}");
    } else if let Err(e) = emit_report(&cli.command, &cli.common, &text) {
        eprintln!("decisive: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit_code)
}

fn emit_report(command: &Command, common: &Common, text: &str) -> Result<(), Error> {
    // --out names the model file for emitters; other commands write the report there
    match command {
        Command::EmitIlp | Command::EmitCnf { .. } => {
            print!("{text}");
            Ok(())
        }
        _ => common.write_out(text),
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Nrc { .. } => "nrc",
            Command::Reduce => "reduce",
            Command::Bound => "bound",
            Command::EmitIlp => "emit-ilp",
            Command::EmitCnf { .. } => "emit-cnf",
            Command::Subset => "subset",
            Command::Oracle { .. } => "oracle",
        }
    }
}
