use std::io;

fn main() {
    let code = delsarte::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
