//! `pcover`: rings of functions on finite p-groups, from the command line.

mod commands;
mod config;
mod target;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Format, Method, RunConfig};

#[derive(Parser)]
#[command(name = "pcover", version, about = "Function rings of finite p-groups over abelian covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print basic facts about a group.
    Group {
        /// Group spec: C<n>, E<q>, Q8, D8, Heis<p>, products joined by x, or a .cay file.
        spec: String,
        /// Also list subgroups of order p, maximal cyclic and elementary p^2 subgroups.
        #[arg(long)]
        describe: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List (*) covers, irredundant ones first.
    Covers {
        /// Group spec, as for `group`.
        spec: String,
        /// Only (*) covers are enumerated; the flag is accepted for clarity.
        #[arg(long)]
        star: bool,
        /// Stop after this many covers.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build R_C(G) and check the ring axioms.
    Ring {
        /// Group spec, as for `group`.
        spec: String,
        /// A .cov file, or `auto` for the first enumerated (*) cover.
        cover: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write every element as JSON to this path.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Decompose R_C(G) into block rings and certify the isomorphism.
    Decompose {
        /// Group spec, as for `group`.
        spec: String,
        /// A .cov file, or `auto` for the first enumerated (*) cover.
        cover: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide simplicity of `M2:p=<p>`, `Zn:n=<n>`, `N:m=<m>,n=<n>,att=<i,..>,p=<p>`,
    /// or of R_C(G) for a group spec and cover.
    Simple {
        target: String,
        /// Cover for a group target; defaults to `auto`.
        cover: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rerun the worked examples and report any disagreement.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let cfg = RunConfig::from_env()?;
    let out = match cli.command {
        Command::Group { spec, describe, format } => commands::group(&spec, describe)?.emit(format)?,
        Command::Covers {
            spec,
            star: _,
            limit,
            format,
        } => commands::covers(&spec, limit.unwrap_or(cfg.cover_budget), &cfg)?.emit(format)?,
        Command::Ring {
            spec,
            cover,
            method,
            format,
            dump,
        } => commands::ring(&spec, &cover, method, dump.as_deref(), &cfg)?.emit(format)?,
        Command::Decompose { spec, cover, format } => commands::decompose_cmd(&spec, &cover, &cfg)?.emit(format)?,
        Command::Simple { target, cover, format } => {
            commands::simple(&target, cover.as_deref().unwrap_or("auto"), &cfg)?.emit(format)?
        }
        Command::VerifyPaper { format } => commands::verify_paper().emit(format)?,
    };
    Ok(out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
