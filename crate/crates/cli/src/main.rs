//! `catmod`: batch reports over the catmod library. Reports go to standard
//! output as JSON, a short summary to standard error.

mod bundle;
mod commands;
mod input;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{ab, cat, homotopic, logic, modcat, structs, ultra};
use crate::input::Context;
use crate::output::{finish, Format};

#[derive(Parser)]
#[command(name = "catmod", version, about = "Finite model theory of categories")]
struct Cli {
    /// Report format on standard output.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Formulas: parsing, evaluation and sentence enumeration.
    #[command(subcommand)]
    Logic(logic::Cmd),
    /// Finite structures and their homomorphisms.
    #[command(subcommand, name = "struct")]
    Struct(structs::Cmd),
    /// Finite categories.
    #[command(subcommand)]
    Cat(cat::Cmd),
    /// Model categories and their colimits.
    #[command(subcommand, name = "mod")]
    Mod(modcat::Cmd),
    /// Filters, reduced products and ultrapowers.
    #[command(subcommand)]
    Ultra(ultra::Cmd),
    /// Iso-graphs and the equality-free homotopic logic.
    #[command(subcommand)]
    Homotopic(homotopic::Cmd),
    /// Group arrows and the AB axioms.
    #[command(subcommand)]
    Ab(ab::Cmd),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Context::load().and_then(|ctx| match cli.command {
        Command::Logic(c) => logic::run(c, &ctx),
        Command::Struct(c) => structs::run(c, &ctx),
        Command::Cat(c) => cat::run(c, &ctx),
        Command::Mod(c) => modcat::run(c, &ctx),
        Command::Ultra(c) => ultra::run(c, &ctx),
        Command::Homotopic(c) => homotopic::run(c, &ctx),
        Command::Ab(c) => ab::run(c, &ctx),
    });
    finish(result, cli.format)
}
