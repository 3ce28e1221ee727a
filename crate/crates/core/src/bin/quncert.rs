use std::io;

use quncert::cli;
use quncert::FunctionRegistry;

fn main() {
    let registry = FunctionRegistry::default();
    let code = cli::run(
        std::env::args_os(),
        &registry,
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code);
}
