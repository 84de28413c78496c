use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

mod commands;
mod settings;

use settings::Settings;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Entropy,
    QuotientEntropy,
    AdditionCheck,
    Zerodiv,
    Tile,
    FolnerRatios,
    ValidateCocycle,
}

/// Exact algebraic entropy experiments over group algebras and crossed
/// products.
///
/// Exit status: 0 success, 1 a check ran and failed, 2 invalid input,
/// 3 approximation budget exhausted (partial output still written).
#[derive(Debug, Parser)]
#[command(name = "entrolen", version)]
struct Cli {
    /// May also come from `command=` in the config file.
    #[arg(value_enum)]
    command: Option<Command>,
    /// `key=value` file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Z, Z^d, ZxZ2 or Heisenberg.
    #[arg(long)]
    group: Option<String>,
    /// gfN for N = p or p^2, or Q.
    #[arg(long)]
    field: Option<String>,
    /// boxes, box-times-z2 or word-balls; defaults to the group's standard scheme.
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    rank: Option<String>,
    /// Generators separated by `;`, terms by `+`, each term `coeff*(g)|coord`.
    #[arg(long = "gen")]
    generators: Option<String>,
    #[arg(long)]
    sub_gen: Option<String>,
    #[arg(long)]
    presentation: Option<String>,
    #[arg(long)]
    sub_presentation: Option<String>,
    /// Group-ring element, e.g. "1*(0,0) + 1*(0,1)".
    #[arg(long)]
    elem: Option<String>,
    #[arg(long)]
    nmax: Option<String>,
    #[arg(long)]
    n: Option<String>,
    /// Comma-separated Følner indices.
    #[arg(long)]
    tiles: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    radius: Option<String>,
    #[arg(long)]
    stability_window: Option<String>,
    #[arg(long)]
    max_steps: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    /// trivial or frobenius.
    #[arg(long)]
    sigma: Option<String>,
    /// Only `trivial`; twisted ρ comes from presentation files.
    #[arg(long)]
    rho: Option<String>,
    #[arg(long)]
    budget: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    c_index: Option<String>,
    #[arg(long)]
    n_from: Option<String>,
    #[arg(long)]
    n_check: Option<String>,
}

impl Cli {
    fn settings(self) -> anyhow::Result<(Option<Command>, Settings)> {
        let mut s = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| anyhow::anyhow!("reading {}: {e}", path.display()))?;
                Settings::parse_file(&text)?
            }
            None => Settings::default(),
        };
        for (key, value) in [
            ("group", self.group),
            ("field", self.field),
            ("scheme", self.scheme),
            ("rank", self.rank),
            ("gen", self.generators),
            ("sub-gen", self.sub_gen),
            ("presentation", self.presentation),
            ("sub-presentation", self.sub_presentation),
            ("elem", self.elem),
            ("nmax", self.nmax),
            ("n", self.n),
            ("tiles", self.tiles),
            ("eps", self.eps),
            ("radius", self.radius),
            ("stability-window", self.stability_window),
            ("max-steps", self.max_steps),
            ("tol", self.tol),
            ("sigma", self.sigma),
            ("rho", self.rho),
            ("budget", self.budget),
            ("seed", self.seed),
            ("output", self.output),
            ("c-index", self.c_index),
            ("n-from", self.n_from),
            ("n-check", self.n_check),
        ] {
            s.set(key, value);
        }
        Ok((self.command, s))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = cli.settings().and_then(|(cmd, s)| {
        let cmd = match (cmd, s.get("command")) {
            (Some(c), _) => c,
            (None, Some(name)) => Command::from_str(name, true)
                .map_err(|e| anyhow::anyhow!("command {name:?}: {e}"))?,
            (None, None) => anyhow::bail!("no command given"),
        };
        commands::run(cmd, &s)
    });
    match result {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
