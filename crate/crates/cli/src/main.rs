mod args;
mod commands;
mod error;
mod meta;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Test(a) => commands::test(a),
        Command::Sensitivity(a) => commands::sensitivity(a),
        Command::Cloud(a) => commands::cloud(a),
        Command::Bench(a) => commands::bench(a),
        Command::WmEncrypt(a) => commands::wm_encrypt(a),
        Command::WmEmbed(a) => commands::wm_embed(a),
        Command::WmExtract(a) => commands::wm_extract(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
