//! The command-line front end on generated problem files.

mod common;

use common::{mixed_signature, random_pair};
use hoau::cli::run_with_input;
use hoau::syntax::{parse_problem, print_problem};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn problem(seed: u64, size: usize) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sig = mixed_signature();
    let (l, r) = random_pair(&mut rng, &mut sig, size);
    print_problem(&sig, &l, &r)
}

fn run(args: &[&str], input: &str) -> hoau::cli::Outcome {
    run_with_input(std::iter::once("hoau").chain(args.iter().copied()), input)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn problem_files_round_trip(seed in any::<u64>()) {
        let text = problem(seed, 30);
        let (sig, l, r) = parse_problem(&text).unwrap();
        prop_assert_eq!(print_problem(&sig, &l, &r), text);
    }

    #[test]
    fn every_command_verifies_its_output(seed in any::<u64>()) {
        let text = problem(seed, 20);
        for cmd in ["lgg", "optimal"] {
            let o = run(&[cmd, "-", "--verify", "--json"], &text);
            prop_assert_eq!(o.code, 0, "{} failed: {}", cmd, o.stderr);
            let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
            prop_assert!(v["generalizations"].as_array().is_some_and(|g| !g.is_empty()));
        }
        let o = run(&["complete", "-", "--verify", "--json", "--max-branches", "100"], &text);
        prop_assert!(o.code == 0 || o.code == 2, "complete failed: {}", o.stderr);
    }

    #[test]
    fn json_output_is_stable(seed in any::<u64>()) {
        let text = problem(seed, 20);
        let args = ["optimal", "-", "--json", "--k", "2"];
        prop_assert_eq!(run(&args, &text).stdout, run(&args, &text).stdout);
    }
}

#[test]
fn malformed_input_exits_with_one() {
    assert_eq!(run(&["lgg", "-"], "left: f(").code, 1);
    assert_eq!(run(&["det", "1", "a,b"], "").code, 1);
}
