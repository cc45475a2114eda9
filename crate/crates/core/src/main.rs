use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use bloic::bounds::BoundId;
use bloic::cli::{self, FigureId, Grid, RunConfig, Suite, Table};
use bloic::pulses::PulseFamily;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bloic", version, about = "Capacity bounds for bandlimited optical intensity channels")]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// First grid point in dB.
    #[arg(long, global = true, allow_hyphen_values = true)]
    snr_start_db: Option<f64>,
    /// Last grid point in dB (inclusive).
    #[arg(long, global = true, allow_hyphen_values = true)]
    snr_stop_db: Option<f64>,
    /// Grid step in dB.
    #[arg(long, global = true)]
    snr_step_db: Option<f64>,
    /// Peak-to-average power ratio for the PAPR bounds.
    #[arg(long, global = true, default_value_t = 2.5)]
    r: f64,
    /// Peak amplitude above the noise level, in dB, for the APPP curve.
    #[arg(long, global = true, default_value_t = 10.0, allow_hyphen_values = true)]
    a0_db: f64,
    /// Pulse family: sinc, s2, sc or pl.
    #[arg(long, global = true, default_value = "s2")]
    pulse: PulseFamily,
    /// Roll-off for the pl pulse.
    #[arg(long, global = true)]
    beta: Option<f64>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gain and excursion metrics of the selected pulse.
    Pulse,
    /// One bound at one SNR.
    Bound {
        name: BoundId,
        #[arg(long, allow_hyphen_values = true)]
        snr_db: f64,
    },
    /// Named bounds over the SNR grid.
    Curve {
        #[arg(required = true)]
        names: Vec<BoundId>,
    },
    /// Data behind one figure (fig2 .. fig9).
    Figure { id: FigureId },
    /// Run invariant suites; exits nonzero on any failure.
    Validate {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
    /// Gap between UB1 and ExpS2 at the top of the grid (60 dB by default).
    Gap,
    /// PAPR efficiency eta over r for s2 and sc.
    Eta,
}

fn grid(args: &Args) -> Result<Option<Grid>, bloic::Error> {
    if args.snr_start_db.is_none() && args.snr_stop_db.is_none() && args.snr_step_db.is_none() {
        return Ok(None);
    }
    let d = Grid::DEFAULT;
    Grid::new(
        args.snr_start_db.unwrap_or(d.start),
        args.snr_stop_db.unwrap_or(d.stop),
        args.snr_step_db.unwrap_or(d.step),
    )
    .map(Some)
}

fn output(args: &Args) -> io::Result<Box<dyn Write>> {
    Ok(match &args.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(args: &Args, table: &Table) -> Result<(), bloic::Error> {
    let Format::Csv = args.format;
    let mut out = output(args)?;
    table.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

fn run(args: &Args) -> Result<ExitCode, bloic::Error> {
    let cfg = RunConfig {
        grid: grid(args)?,
        r: args.r,
        a0_db: args.a0_db,
        pulse: args.pulse,
        beta: args.beta,
        seed: args.seed,
    };
    match &args.command {
        Command::Pulse => {
            let (pulse, rows) = cli::cmd_pulse(&cfg)?;
            let mut out = output(args)?;
            writeln!(out, "# pulse: {pulse}")?;
            writeln!(out, "quantity,value")?;
            for (k, v) in rows {
                writeln!(out, "{k},{}", cli::format_sig(v))?;
            }
            out.flush()?;
        }
        Command::Bound { name, snr_db } => {
            let v = cli::cmd_bound(*name, *snr_db, &cfg)?;
            let mut out = output(args)?;
            writeln!(out, "bound,snr_dB,value")?;
            writeln!(out, "{name},{},{}", cli::format_sig(*snr_db), cli::format_sig(v))?;
            out.flush()?;
        }
        Command::Curve { names } => emit(args, &cli::cmd_curve(names, &cfg)?)?,
        Command::Figure { id } => emit(args, &cli::cmd_figure(*id, &cfg)?)?,
        Command::Validate { suite } => {
            let rep = cli::cmd_validate(*suite, cfg.seed)?;
            let mut out = output(args)?;
            for c in &rep.checks {
                writeln!(out, "{c}")?;
            }
            out.flush()?;
            if !rep.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Gap => emit(args, &cli::cmd_gap(args.snr_stop_db.unwrap_or(60.0)))?,
        Command::Eta => emit(args, &cli::cmd_eta(&cfg)?)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
