//! Driving the command-line front end from a problem file in memory.

use hoau::cli::run_with_input;

fn main() {
    let text = "sig: const k : i -> i -> i [C]; const a : i; const b : i
left: k(a, k(a, b))
right: k(k(b, a), b)
";
    for cmd in ["lgg", "optimal", "complete"] {
        let out = run_with_input(["hoau", cmd, "-", "--json", "--show-witnesses"], text);
        println!("$ hoau {cmd} - --json --show-witnesses  (exit {})", out.code);
        print!("{}", out.stdout);
    }
    let bad = run_with_input(["hoau", "lgg", "-"], "sig: const f : i\nleft: f(\nright: f");
    println!("malformed input exits {}: {}", bad.code, bad.stderr.trim());
}
