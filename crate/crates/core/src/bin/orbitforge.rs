fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("ORBITFORGE_LOG")).init();
    std::process::exit(orbitforge::cli::main_with_args(std::env::args_os()));
}
