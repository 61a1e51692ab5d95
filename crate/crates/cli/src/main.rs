use std::io::{stderr, stdout};

fn main() {
    let seed = std::env::var("SOS_CERT_SEED").ok();
    let code = sos_cert_cli::run(std::env::args_os(), seed.as_deref(), &mut stdout(), &mut stderr());
    std::process::exit(code);
}
