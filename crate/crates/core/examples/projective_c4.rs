//! A C4 complex whose cells carry only fiber data.

use parcohom::cli::{run, Command};

fn main() {
    let text = include_str!("../fixtures/c4_projective.doc");
    for cmd in [Command::Validate, Command::Cohom { coeff: None }, Command::Cohom { coeff: Some("Z/4".into()) }] {
        let (code, out) = run(&cmd, text, false);
        print!("{cmd:?} (exit {code})\n{out}");
    }
}
