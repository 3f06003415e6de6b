fn main() {
    // die quietly when the consumer closes the pipe, like any unix filter
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(dihedral::cli::run());
}
