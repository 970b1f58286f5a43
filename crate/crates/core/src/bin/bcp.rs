fn main() {
    std::process::exit(bcp_drc::cli::main_with_args(std::env::args_os()));
}
