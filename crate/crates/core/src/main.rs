fn main() {
    let out = tspaces::cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
