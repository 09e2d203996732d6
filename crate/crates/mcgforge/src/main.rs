use std::io::Write;

fn main() {
    let env = std::env::var(mcgforge::cli::PRECISION_ENV).ok();
    let out = mcgforge::cli::run(std::env::args_os(), env.as_deref());
    std::io::stdout().write_all(out.stdout.as_bytes()).expect("stdout");
    std::io::stderr().write_all(out.stderr.as_bytes()).expect("stderr");
    std::process::exit(out.code);
}
