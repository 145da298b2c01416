use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use elliptic_genus::app::{self, Format, ObstructArgs, Outcome, QORDER_ENV};
use elliptic_genus::Error;

#[derive(Parser)]
#[command(name = "ellgen", version, about = "Exact elliptic genera, twisted indices and fixed-point checks")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Coefficients are computed through q^QORDER.
    #[arg(long, global = true, env = QORDER_ENV, default_value_t = 6)]
    qorder: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Genus value, generic in Q[delta,epsilon] or specialized.
    Genus {
        /// builtin:NAME, NAME, or a model file
        #[arg(long)]
        manifold: String,
        /// generic | signature | ahat | custom
        #[arg(long, default_value = "generic")]
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<String>,
    },
    /// q-expansion at a cusp.
    Expand {
        #[arg(long)]
        manifold: String,
        /// ahat | signature
        #[arg(long, default_value = "ahat")]
        cusp: String,
        /// Divide by the epsilon power to weight zero.
        #[arg(long)]
        normalized: bool,
    },
    /// Run the verification matrix.
    Verify {
        /// all, or a comma list of check numbers
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Equivariant localization sums across sample points.
    Rigidity {
        /// builtin:CPn_linear(..) | builtin:HPn_diagonal(..) | action file
        #[arg(long)]
        action: String,
        /// comma list of p/q, i or a+bi
        #[arg(long, default_value = "2,3,5", allow_hyphen_values = true)]
        lambda: String,
    },
    /// m_o, vanishing predictions, lattice normal forms and code audits.
    Obstruct {
        /// JSON weight vector, or list of vectors (one per component)
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(long, default_value_t = 2)]
        order: i64,
        /// Manifold for cross-checking --weights against its Phi0
        #[arg(long)]
        manifold: Option<String>,
        /// Action whose fixed data is cross-checked against its ambient
        #[arg(long)]
        action: Option<String>,
        /// JSON integer matrix or file
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 2)]
        prime: i64,
        /// Audit the mod-2 code of --matrix with this r
        #[arg(long)]
        code_r: Option<usize>,
        /// JSON table [[dimX, [component dims]], ..]
        #[arg(long)]
        rfpd: Option<String>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::Genus { manifold, spec, delta, epsilon } => {
            app::cmd_genus(manifold, spec, delta.as_deref(), epsilon.as_deref())
        }
        Cmd::Expand { manifold, cusp, normalized } => app::cmd_expand(manifold, cusp, cli.qorder, *normalized),
        Cmd::Verify { suite } => app::cmd_verify(suite, cli.qorder),
        Cmd::Rigidity { action, lambda } => app::cmd_rigidity(action, lambda, cli.qorder),
        Cmd::Obstruct { weights, order, manifold, action, matrix, prime, code_r, rfpd } => {
            app::cmd_obstruct(&ObstructArgs {
                weights: weights.as_deref(),
                order: *order,
                matrix: matrix.as_deref(),
                prime: *prime,
                code_r: *code_r,
                manifold: manifold.as_deref(),
                action: action.as_deref(),
                rfpd: rfpd.as_deref(),
                qorder: cli.qorder,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("ellgen: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = app::render(&out, cli.format);
    let written = match &cli.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("ellgen: {e}");
        return ExitCode::from(2);
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}
