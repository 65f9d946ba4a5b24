use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fibdense_cli::{parse_spec, run_command, Command, Overrides};

#[derive(Parser)]
#[command(name = "fibdense", version, about = "Exact computations on elliptic fibrations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output directory; defaults to the spec's `output.dir`, then `.`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the parallel sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true)]
    height_bound: Option<u64>,
    #[arg(long, global = true)]
    k_max: Option<u32>,
    #[arg(long, global = true)]
    torsion_bound: Option<u32>,
    #[arg(long, global = true)]
    m_max: Option<u32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Singular fibers and multisection ramification.
    Analyze { spec: PathBuf },
    /// Certify and translate points to fill many fibers.
    Densify { spec: PathBuf },
    /// Estimate the order of differences within multisection fibers.
    Probe { spec: PathBuf },
    /// Restrict a quartic to the cone and locate singular points.
    EnriquesRestrict { spec: PathBuf },
    /// Search for bitangent sections at the given base points.
    EnriquesBitangents { spec: PathBuf },
    /// Weierstrass model of the double cover and section multisections.
    EnriquesModel { spec: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, path) = match cli.command {
        Cmd::Analyze { spec } => (Command::Analyze, spec),
        Cmd::Densify { spec } => (Command::Densify, spec),
        Cmd::Probe { spec } => (Command::Probe, spec),
        Cmd::EnriquesRestrict { spec } => (Command::EnriquesRestrict, spec),
        Cmd::EnriquesBitangents { spec } => (Command::EnriquesBitangents, spec),
        Cmd::EnriquesModel { spec } => (Command::EnriquesModel, spec),
    };
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let overrides = Overrides {
        height_bound: cli.height_bound,
        k_max: cli.k_max,
        torsion_bound: cli.torsion_bound,
        m_max: cli.m_max,
    };
    let run = std::panic::catch_unwind(|| {
        parse_spec(&text).and_then(|spec| {
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cli.threads {
            pool = pool.num_threads(n);
        }
        let pool = pool.build().expect("thread pool");
        let artifacts = pool.install(|| run_command(cmd, &spec, &overrides))?;
        let dir = cli.out.or(spec.out_dir).unwrap_or_else(|| PathBuf::from("."));
        artifacts.write_to(&dir)?;
        Ok(artifacts)
        })
    });
    let Ok(result) = run else {
        eprintln!("error: internal failure during computation");
        return ExitCode::from(3);
    };
    match result {
        Ok(a) => {
            print!("{}", a.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
