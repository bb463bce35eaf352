use std::process::ExitCode;

fn main() -> ExitCode {
    classex::cli::main_entry()
}
