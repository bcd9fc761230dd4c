//! `cubepair`: construct, verify, tabulate, and play Breaker pairing
//! strategies for subcube Maker-Breaker games on the boolean hypercube.
//!
//! Exit codes: 0 success, 1 a requested property check failed, 2 input or
//! usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cubepair_core::constructions::{
    best_strategy, bin_ps, bin_ps_rotating, lift_plus1, q3_family, q4_family, rotating_q9_4_scheme,
    schedule_bound, truncate,
};
use cubepair_core::format::{parse_file, parse_single, render_file, render_json, StrategySection};
use cubepair_core::game::{play, play_random_batch, MakerPolicy, Player};
use cubepair_core::strategy::{PairingStrategy, StrategyFamily};
use cubepair_core::verify::{
    check_coverage_budgeted, check_strategy, is_edge_partition, polychromatic_proper_check,
    timed_coverage_check, timed_matching_check, CheckResult, PartitionViolation, PolyViolation,
    Report,
};
use cubepair_core::{base, Vertex};

#[derive(Parser)]
#[command(
    name = "cubepair",
    version,
    about = "Pairing strategies for subcube Maker-Breaker games on the hypercube"
)]
struct Cli {
    /// Worker threads for verification sweeps (default: $CUBEPAIR_JOBS, then all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a strategy or family and emit it as a strategy file
    Construct(ConstructArgs),
    /// Run property checks against a strategy file
    Verify(VerifyArgs),
    /// Print the blocked dimension achieved for each board dimension
    Table(TableArgs),
    /// Simulate games with Breaker driven by a strategy file
    Play(PlayArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    what: ConstructCmd,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output path (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// One of the hand-listed strategies
    Base {
        /// ps42, ps42j0..ps42j3, ps32j0..ps32j3, bv3, q63
        #[arg(long)]
        name: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Four-bin product over a bin strategy
    Binps {
        /// Builtin strategy name or strategy file path
        #[arg(long)]
        bv: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The rotating Q(9,4) strategy
    Rotate {
        /// Rotation shift applied to the v-bin index sum
        #[arg(long, default_value_t = 0)]
        shift: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The 4^(d+1) disjoint strategies for Q(4^(d+1), 4^d+1)
    Q4 {
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The 4^(d+1) disjoint strategies for Q(3^(d+1), 3^d+1)
    Q3 {
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lift a strategy (n,k) -> (n+times, k+times)
    Lift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Truncate a strategy for Q(N,k) down to Q(n,k)
    Truncate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The scheduled best strategy for a board dimension
    Best {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Strategy file to check
    file: PathBuf,

    /// Comma-separated checks to run
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [CheckKind::Matching, CheckKind::Coverage])]
    checks: Vec<CheckKind>,

    /// Subcube dimension for coverage/polychromatic checks (default: the
    /// header k of each section)
    #[arg(long)]
    k: Option<u32>,

    /// Also write the report as JSON to this path
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Matching,
    Coverage,
    Partition,
    Polychromatic,
}

#[derive(Args)]
struct TableArgs {
    /// Largest board dimension to tabulate
    #[arg(long, default_value_t = 63)]
    max_n: u32,
}

#[derive(Args)]
struct PlayArgs {
    /// Board dimension
    #[arg(long)]
    n: u32,

    /// Winning subcube dimension
    #[arg(long)]
    k: u32,

    /// Strategy file driving Breaker
    #[arg(long)]
    strategy: PathBuf,

    /// Maker policy
    #[arg(long, value_enum, default_value_t = MakerKind::Random)]
    maker: MakerKind,

    /// Number of games (random Maker)
    #[arg(long, default_value_t = 1)]
    games: u64,

    /// Base seed; game i uses seed + i
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Move list for the scripted Maker, one vertex bitstring per line
    #[arg(long)]
    script: Option<PathBuf>,

    /// Write the transcript of the base-seed game here
    #[arg(long)]
    transcript: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MakerKind {
    Random,
    Greedy,
    Scripted,
}

/// Input/usage failure (exit 2), as opposed to a failed check (exit 1).
struct InputError(String);

impl<E: std::error::Error> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.or_else(|| {
        std::env::var("CUBEPAIR_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(jobs) = jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: cannot size thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
        Command::Play(args) => cmd_play(args),
    };
    match outcome {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn builtin_strategy(name: &str) -> Option<PairingStrategy> {
    match name {
        "ps42" => Some(base::ps_4_2()),
        "ps42j0" => Some(base::ps_j_4_2(0)),
        "ps42j1" => Some(base::ps_j_4_2(1)),
        "ps42j2" => Some(base::ps_j_4_2(2)),
        "ps42j3" => Some(base::ps_j_4_2(3)),
        "ps32j0" => Some(base::ps_j_3_2(0)),
        "ps32j1" => Some(base::ps_j_3_2(1)),
        "ps32j2" => Some(base::ps_j_3_2(2)),
        "ps32j3" => Some(base::ps_j_3_2(3)),
        "bv3" => Some(base::bv_3()),
        "q63" => Some(base::q6_3()),
        _ => None,
    }
}

fn load_strategy_arg(arg: &str) -> Result<PairingStrategy, InputError> {
    if let Some(ps) = builtin_strategy(arg) {
        return Ok(ps);
    }
    let text = fs::read_to_string(arg).map_err(|e| {
        InputError(format!(
            "'{arg}' is neither a builtin name nor a readable file: {e}"
        ))
    })?;
    Ok(parse_single(&text)?.to_strategy()?)
}

fn load_strategy_file(path: &PathBuf) -> Result<PairingStrategy, InputError> {
    let text = fs::read_to_string(path)?;
    Ok(parse_single(&text)?.to_strategy()?)
}

fn emit(sections: &[StrategySection], output: &OutputArgs) -> Result<(), InputError> {
    let rendered = match output.format {
        OutputFormat::Text => render_file(sections),
        OutputFormat::Json => render_json(sections),
    };
    match &output.out {
        Some(path) => fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode, InputError> {
    let (sections, output) = match args.what {
        ConstructCmd::Base { name, output } => {
            let ps = builtin_strategy(&name)
                .ok_or_else(|| InputError(format!("unknown base strategy '{name}'")))?;
            (vec![StrategySection::from_strategy(&ps)], output)
        }
        ConstructCmd::Binps { bv, output } => {
            let inner = load_strategy_arg(&bv)?;
            let ps = bin_ps(&inner)?;
            (vec![StrategySection::from_strategy(&ps)], output)
        }
        ConstructCmd::Rotate { shift, output } => {
            let scheme = rotating_q9_4_scheme(shift)?;
            let ps = bin_ps_rotating(&scheme, &base::bv_3())?;
            let ps = if shift == 0 {
                ps.with_name("rotating Q(9,4)")
            } else {
                ps.with_name(format!("rotating Q(9,4) shift={shift}"))
            };
            (vec![StrategySection::from_strategy(&ps)], output)
        }
        ConstructCmd::Q4 { d, output } => (family_sections(q4_family(d)?), output),
        ConstructCmd::Q3 { d, output } => (family_sections(q3_family(d)?), output),
        ConstructCmd::Lift {
            input,
            times,
            output,
        } => {
            let mut ps = load_strategy_file(&input)?;
            for _ in 0..times {
                ps = lift_plus1(&ps)?;
            }
            (vec![StrategySection::from_strategy(&ps)], output)
        }
        ConstructCmd::Truncate { input, n, output } => {
            let ps = truncate(&load_strategy_file(&input)?, n)?;
            check_strategy(&ps)?;
            (vec![StrategySection::from_strategy(&ps)], output)
        }
        ConstructCmd::Best { n, output } => {
            let best = best_strategy(n)?;
            let ps = best.build().map_err(|e| {
                InputError(format!(
                    "route '{}' reaches k={} but cannot be materialized: {e}",
                    best.route, best.k
                ))
            })?;
            (vec![StrategySection::from_strategy(&ps)], output)
        }
    };
    emit(&sections, &output)?;
    Ok(ExitCode::SUCCESS)
}

fn family_sections(fam: StrategyFamily) -> Vec<StrategySection> {
    fam.members()
        .iter()
        .map(StrategySection::from_strategy)
        .collect()
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, InputError> {
    let text = fs::read_to_string(&args.file)?;
    let sections = parse_file(&text)?;
    let n = sections[0].n;
    if sections.iter().any(|s| s.n != n) {
        return Err(InputError(
            "sections disagree on the board dimension".into(),
        ));
    }
    let mut report = Report::new(args.file.display().to_string(), n);

    for check in &args.checks {
        match check {
            CheckKind::Matching => {
                for section in &sections {
                    let mut result = timed_matching_check(&section.edges);
                    result.check = format!("matching[{}]", section.name);
                    report.push(result);
                }
            }
            CheckKind::Coverage => {
                for section in &sections {
                    let k = args.k.unwrap_or(section.k);
                    if k > n {
                        return Err(InputError(format!(
                            "coverage dimension k={k} exceeds board dimension n={n}"
                        )));
                    }
                    let mut result = timed_coverage_check(n, k, &section.edges);
                    result.check = format!("coverage[{}](k={k})", section.name);
                    report.push(result);
                }
            }
            CheckKind::Partition => {
                report.push(partition_check(&sections)?);
            }
            CheckKind::Polychromatic => {
                let k = args
                    .k
                    .or_else(|| sections.first().map(|s| s.k))
                    .expect("nonempty sections");
                report.push(polychromatic_check(&sections, k)?);
            }
        }
    }

    print!("{}", report.render_text());
    if let Some(path) = &args.json {
        fs::write(path, report.to_json())?;
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn sections_to_family(sections: &[StrategySection]) -> Result<StrategyFamily, String> {
    let mut members = Vec::with_capacity(sections.len());
    for section in sections {
        members.push(
            section
                .to_strategy()
                .map_err(|e| format!("section '{}': {e}", section.name))?,
        );
    }
    StrategyFamily::new(members, "file sections").map_err(|e| e.to_string())
}

fn partition_check(sections: &[StrategySection]) -> Result<CheckResult, InputError> {
    let start = std::time::Instant::now();
    let total: u64 = sections.iter().map(|s| s.edges.len() as u64).sum();
    let outcome = match sections_to_family(sections) {
        Ok(fam) => match is_edge_partition(&fam) {
            Ok(()) => (true, None),
            Err(PartitionViolation::Duplicate {
                edge,
                first_member,
                second_member,
            }) => (
                false,
                Some(format!(
                    "edge {edge} appears in sections {first_member} and {second_member}"
                )),
            ),
            Err(PartitionViolation::Missing { edge }) => {
                (false, Some(format!("edge {edge} is not covered")))
            }
        },
        Err(reason) => (false, Some(reason)),
    };
    Ok(CheckResult {
        check: "partition".into(),
        passed: outcome.0,
        counterexample: outcome.1,
        items: total,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn polychromatic_check(sections: &[StrategySection], d: u32) -> Result<CheckResult, InputError> {
    let start = std::time::Instant::now();
    let outcome = match sections_to_family(sections) {
        Ok(fam) => match polychromatic_proper_check(&fam, d) {
            Ok(()) => (true, None),
            Err(PolyViolation::Partition(v)) => (false, Some(format!("not a partition: {v:?}"))),
            Err(PolyViolation::NotProper { member, violation }) => (
                false,
                Some(format!(
                    "color {member} is not a matching: {} and {} share {}",
                    violation.first, violation.second, violation.shared
                )),
            ),
            Err(PolyViolation::MissingColor { member, subcube }) => (
                false,
                Some(format!(
                    "subcube {subcube} contains no edge of color {member}"
                )),
            ),
        },
        Err(reason) => (false, Some(reason)),
    };
    Ok(CheckResult {
        check: format!("polychromatic(d={d})"),
        passed: outcome.0,
        counterexample: outcome.1,
        items: sections.len() as u64,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, InputError> {
    if args.max_n > 63 {
        return Err(InputError("table is limited to n <= 63".into()));
    }
    println!("#n\tk\tbound\troute");
    for n in 3..=args.max_n {
        let best = best_strategy(n)?;
        println!("{n}\t{}\t{}\t{}", best.k, schedule_bound(n), best.route);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_play(args: PlayArgs) -> Result<ExitCode, InputError> {
    let ps = load_strategy_file(&args.strategy)?;
    if ps.dimension() != args.n {
        return Err(InputError(format!(
            "strategy is for Q_{}, the board is Q_{}",
            ps.dimension(),
            args.n
        )));
    }
    let verified = match check_coverage_budgeted(args.n, args.k, ps.edges()) {
        Ok(mode) => {
            println!("verified=true k={} mode={mode:?}", args.k);
            true
        }
        Err(cubepair_core::Error::CoverageFailed { witness, .. }) => {
            println!("verified=false uncovered={witness}");
            false
        }
        Err(e) => return Err(e.into()),
    };

    match args.maker {
        MakerKind::Random => {
            let summary = play_random_batch(args.n, args.k, &ps, args.games, args.seed)?;
            println!(
                "games={} breaker_wins={} maker_wins={} seed={}",
                summary.games, summary.breaker_wins, summary.maker_wins, args.seed
            );
            if let Some(path) = &args.transcript {
                let (outcome, transcript) = play(
                    args.n,
                    args.k,
                    &ps,
                    &MakerPolicy::Random { seed: args.seed },
                )?;
                fs::write(path, transcript.render(&outcome))?;
            }
            if verified && summary.maker_wins > 0 {
                eprintln!("error: Maker won against a verified strategy");
                return Ok(ExitCode::from(1));
            }
        }
        MakerKind::Greedy | MakerKind::Scripted => {
            let policy = match args.maker {
                MakerKind::Greedy => MakerPolicy::Greedy,
                MakerKind::Scripted => {
                    let path = args.script.as_ref().ok_or_else(|| {
                        InputError("--maker scripted requires --script FILE".into())
                    })?;
                    let moves: Result<Vec<Vertex>, _> = fs::read_to_string(path)?
                        .lines()
                        .filter(|l| !l.trim().is_empty())
                        .map(|l| l.trim().parse())
                        .collect();
                    MakerPolicy::Scripted(moves?)
                }
                MakerKind::Random => unreachable!(),
            };
            let (outcome, transcript) = play(args.n, args.k, &ps, &policy)?;
            let winner = match outcome.winner {
                Player::Maker => "Maker",
                Player::Breaker => "Breaker",
            };
            match &outcome.witness {
                Some(w) => println!("winner={winner} witness={w} moves={}", outcome.moves),
                None => println!("winner={winner} moves={}", outcome.moves),
            }
            if let Some(path) = &args.transcript {
                fs::write(path, transcript.render(&outcome))?;
            }
            if verified && outcome.winner == Player::Maker {
                eprintln!("error: Maker won against a verified strategy");
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
