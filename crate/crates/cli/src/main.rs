fn main() {
    // Placeholder, wired up in later commits.
    eprintln!("zeta4: not yet implemented");
    std::process::exit(4);
}
