use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use coxeter_core::Caps;

#[derive(Debug, Parser)]
#[command(name = "coxtool", version, about = "Intrinsic reflections and generating-set rewrites for Coxeter diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub caps: CapArgs,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CapArgs {
    /// Largest group any enumeration may build.
    #[arg(long, global = true, env = "COXTOOL_MAX_ENUM", default_value_t = 200_000)]
    pub max_enum: usize,
    /// Largest power tried when computing the order of a product.
    #[arg(long, global = true, env = "COXTOOL_ORDER_CAP", default_value_t = 1000)]
    pub order_cap: u32,
}

impl CapArgs {
    pub fn caps(&self) -> Caps {
        Caps { max_enum: self.max_enum, order_cap: self.order_cap }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a right-angled generator is an intrinsic reflection.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        generator: String,
    },
    /// Blow down a proper blowing-down generator.
    Blowdown {
        file: PathBuf,
        #[arg(long)]
        generator: String,
        #[arg(long)]
        candidate: String,
        /// Check the result by enumeration when the group is finite.
        #[arg(long)]
        verify: bool,
    },
    /// Apply the diagram twist that makes a blowing-down generator proper.
    Twist {
        file: PathBuf,
        #[arg(long)]
        generator: String,
        #[arg(long)]
        candidate: String,
    },
    /// Run the invariant suites on the spherical parts of a diagram.
    Verify { file: PathBuf },
    /// List spherical residues fixed by each generator near the base chamber.
    Complex {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Blowdown { .. } => "blowdown",
            Command::Twist { .. } => "twist",
            Command::Verify { .. } => "verify",
            Command::Complex { .. } => "complex",
        }
    }
}
