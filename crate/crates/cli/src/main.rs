// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    let code = mueller_sl4_cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
