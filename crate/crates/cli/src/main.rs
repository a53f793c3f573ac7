use std::io::Write;

fn main() {
    let exec = gea_cli::run_command(std::env::args_os());
    print!("{}", exec.stdout);
    eprint!("{}", exec.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(exec.code);
}
