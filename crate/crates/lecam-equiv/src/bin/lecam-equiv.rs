use std::process::ExitCode;

fn main() -> ExitCode {
    lecam_equiv::cli::main()
}
