//! Command-line front end: problem files in, generalizations out.
//!
//! Exit codes: 0 on success, 1 for malformed arguments, parse or type
//! errors, 2 when a search budget was exhausted, 3 when `--verify` finds a
//! witness that does not reproduce an input.

use std::collections::BTreeMap;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::equational::{complete_set_with, minimize, Bounds};
use crate::error::Error;
use crate::fragments::{
    det, is_k_determined, is_k_determined_strict, is_kl_distinct, is_total_k_determined,
    is_total_k_determined_strict, is_total_kl_distinct, sdet,
};
use crate::optimal::{optimal_generalize_with, Strategy};
use crate::signature::Signature;
use crate::subst::Substitution;
use crate::syntactic::{syntactic_lgg_with, GeneralizationResult, Options, Stats};
use crate::syntax::{parse_problem, print_term};
use crate::term::Term;

#[derive(Parser, Debug)]
#[command(name = "hoau", version, about = "Higher-order pattern anti-unification modulo A, C and AC")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print the substitutions mapping the generalization to each input.
    #[arg(long, global = true)]
    pub show_witnesses: bool,
    /// Re-apply the witnesses and fail unless they reproduce the inputs.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Print terms as computed, without sorting commutative arguments.
    #[arg(long, global = true)]
    pub raw: bool,
    /// Report whether the inputs are higher-order patterns.
    #[arg(long, global = true)]
    pub check_pattern: bool,
    /// Accepted for harness compatibility; every algorithm is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Search states after which `complete` stops branching (exit code 2).
    #[arg(long, global = true)]
    pub max_branches: Option<usize>,
    /// Determinacy bound for the fragment checks and rigidity functions.
    #[arg(long, global = true, default_value_t = 1)]
    pub k: usize,
    /// Bound on the number of shared heads for the AC fragment.
    #[arg(long, global = true, default_value_t = 1)]
    pub l: usize,
    /// Rigidity function used for associative symbols by `optimal`.
    #[arg(long, global = true, value_enum, default_value_t = RigidityArg::A)]
    pub rigidity: RigidityArg,
    /// Flavour of determinate set printed by `det`.
    #[arg(long, global = true, value_enum, default_value_t = DetMode::Det)]
    pub mode: DetMode,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Syntactic least general pattern generalization.
    Lgg { file: String },
    /// Minimal complete set of generalizations modulo the axioms.
    Complete { file: String },
    /// One optimal generalization for the detected fragment.
    Optimal { file: String },
    /// Fragment membership verdicts for the two input terms.
    Fragment { file: String },
    /// Determinate set of two comma-separated symbol sequences.
    Det {
        bound: usize,
        left: String,
        right: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RigidityArg {
    A,
    AFull,
    C,
    Ac,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DetMode {
    Det,
    Sdet,
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(code: i32, message: impl std::fmt::Display) -> Outcome {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_) => 2,
        _ => 1,
    }
}

#[derive(Serialize)]
struct GeneralizationJson {
    term: String,
    theta_left: BTreeMap<String, String>,
    theta_right: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct StatsJson {
    states_explored: usize,
    branches: usize,
}

#[derive(Serialize)]
struct Report {
    generalizations: Vec<GeneralizationJson>,
    stats: StatsJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncated: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    patterns: Option<BTreeMap<String, bool>>,
}

struct Problem<'a> {
    cli: &'a Cli,
    sig: Signature,
    left: Term,
    right: Term,
}

impl Problem<'_> {
    fn show(&self, t: &Term) -> String {
        print_term(t, (!self.cli.raw).then_some(&self.sig))
    }

    fn show_subst(&self, theta: &Substitution) -> BTreeMap<String, String> {
        theta
            .iter()
            .map(|(v, t)| (v.name.to_string(), self.show(t)))
            .collect()
    }

    fn patterns(&self) -> Option<BTreeMap<String, bool>> {
        self.cli.check_pattern.then(|| {
            BTreeMap::from([
                ("left".to_string(), self.left.is_pattern()),
                ("right".to_string(), self.right.is_pattern()),
            ])
        })
    }

    fn pattern_lines(&self) -> String {
        let mut out = String::new();
        if let Some(p) = self.patterns() {
            for (side, ok) in p {
                let verdict = if ok { "a pattern" } else { "not a pattern" };
                out.push_str(&format!("{side} input is {verdict}\n"));
            }
        }
        out
    }

    fn report(&self, results: &[GeneralizationResult], stats: Stats, truncated: Option<bool>) -> Outcome {
        if self.cli.verify {
            if let Some(bad) = results
                .iter()
                .find(|r| !r.verify(&self.left, &self.right, &self.sig))
            {
                return Outcome::failure(3, format!("witnesses of {} do not verify", self.show(&bad.term)));
            }
        }
        let stdout = if self.cli.json {
            let report = Report {
                generalizations: results
                    .iter()
                    .map(|r| GeneralizationJson {
                        term: self.show(&r.term),
                        theta_left: self.show_subst(&r.theta_left),
                        theta_right: self.show_subst(&r.theta_right),
                    })
                    .collect(),
                stats: StatsJson {
                    states_explored: stats.states_explored,
                    branches: stats.branches,
                },
                truncated,
                patterns: self.patterns(),
            };
            let mut s = serde_json::to_string_pretty(&report).expect("plain data serializes");
            s.push('\n');
            s
        } else {
            let mut s = self.pattern_lines();
            for r in results {
                s.push_str(&self.show(&r.term));
                s.push('\n');
                if self.cli.show_witnesses {
                    let fmt = |m: BTreeMap<String, String>| {
                        let items: Vec<String> = m.into_iter().map(|(v, t)| format!("{v} ↦ {t}")).collect();
                        format!("{{{}}}", items.join(", "))
                    };
                    s.push_str(&format!("  left:  {}\n", fmt(self.show_subst(&r.theta_left))));
                    s.push_str(&format!("  right: {}\n", fmt(self.show_subst(&r.theta_right))));
                }
            }
            s
        };
        if truncated == Some(true) {
            return Outcome {
                code: 2,
                stdout,
                stderr: "error: budget exceeded: branch bound reached, the set may be incomplete\n".into(),
            };
        }
        Outcome::ok(stdout)
    }
}

fn strategy(cli: &Cli) -> Strategy {
    Strategy {
        k: cli.k,
        l: cli.l,
        full_a: cli.rigidity == RigidityArg::AFull,
    }
}

fn symbols(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn run_det(cli: &Cli, bound: usize, left: &str, right: &str) -> Outcome {
    if bound == 0 {
        return Outcome::failure(1, "the bound must be at least 1");
    }
    let (w1, w2) = (symbols(left), symbols(right));
    let set = match cli.mode {
        DetMode::Det => det(bound, &w1, &w2),
        DetMode::Sdet => sdet(bound, &w1, &w2),
    }
    .to_string();
    if cli.json {
        let doc = BTreeMap::from([("set", set)]);
        Outcome::ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("plain data serializes")))
    } else {
        Outcome::ok(format!("{set}\n"))
    }
}

fn run_fragment(p: &Problem) -> Outcome {
    let (t, s, sig, k, l) = (&p.left, &p.right, &p.sig, p.cli.k, p.cli.l);
    let (t, s) = (&t.body(), &s.body());
    let verdicts = BTreeMap::from([
        ("k_determined", is_k_determined(t, s, sig, k)),
        ("total_k_determined", is_total_k_determined(t, s, sig, k)),
        ("strict_k_determined", is_k_determined_strict(t, s, sig, k)),
        ("total_strict_k_determined", is_total_k_determined_strict(t, s, sig, k)),
        ("kl_distinct", is_kl_distinct(t, s, sig, k, l)),
        ("total_kl_distinct", is_total_kl_distinct(t, s, sig, k, l)),
    ]);
    if p.cli.json {
        let mut doc = serde_json::Map::new();
        doc.insert("k".into(), k.into());
        doc.insert("l".into(), l.into());
        doc.insert("fragment".into(), serde_json::to_value(&verdicts).expect("plain data serializes"));
        if let Some(pats) = p.patterns() {
            doc.insert("patterns".into(), serde_json::to_value(pats).expect("plain data serializes"));
        }
        let text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
        return Outcome::ok(format!("{text}\n"));
    }
    let mut out = p.pattern_lines();
    for (name, v) in verdicts {
        out.push_str(&format!("{name} (k={k}, l={l}): {v}\n"));
    }
    Outcome::ok(out)
}

fn execute(cli: &Cli, read: &dyn Fn(&str) -> std::io::Result<String>) -> Outcome {
    let file = match &cli.command {
        Command::Det { bound, left, right } => return run_det(cli, *bound, left, right),
        Command::Lgg { file }
        | Command::Complete { file }
        | Command::Optimal { file }
        | Command::Fragment { file } => file,
    };
    let text = match read(file) {
        Ok(t) => t,
        Err(e) => return Outcome::failure(1, format!("cannot read {file}: {e}")),
    };
    let (sig, left, right) = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => return Outcome::failure(exit_code(&e), e),
    };
    let p = Problem {
        cli,
        sig,
        left,
        right,
    };
    let options = Options::default();
    let result = match &cli.command {
        Command::Lgg { .. } => syntactic_lgg_with(&p.left, &p.right, &p.sig, options)
            .map(|(r, stats)| p.report(&[r], stats, None)),
        Command::Optimal { .. } => optimal_generalize_with(&p.left, &p.right, &p.sig, &strategy(cli), options)
            .map(|(r, stats)| p.report(&[r], stats, None)),
        Command::Complete { .. } => {
            let bounds = Bounds {
                max_branches: cli.max_branches,
            };
            complete_set_with(&p.left, &p.right, &p.sig, bounds, options).map(|set| {
                let min = minimize(&set.generalizations, &p.sig);
                p.report(&min, set.stats, Some(set.truncated))
            })
        }
        Command::Fragment { .. } => Ok(run_fragment(&p)),
        Command::Det { .. } => unreachable!("handled above"),
    };
    result.unwrap_or_else(|e| Outcome::failure(exit_code(&e), e))
}

fn parse_args<I, T>(args: I) -> Result<Cli, Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(args).map_err(|e| {
        let text = e.render().to_string();
        if e.use_stderr() {
            Outcome {
                code: 1,
                stdout: String::new(),
                stderr: text,
            }
        } else {
            Outcome::ok(text)
        }
    })
}

/// Runs the command line `args` (program name first). Problem files are
/// read from disk; `-` reads standard input.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(args) {
        Ok(cli) => execute(&cli, &|path| {
            if path == "-" {
                std::io::read_to_string(std::io::stdin())
            } else {
                std::fs::read_to_string(path)
            }
        }),
        Err(o) => o,
    }
}

/// Like [`run`], with `input` standing in for the problem file.
pub fn run_with_input<I, T>(args: I, input: &str) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(args) {
        Ok(cli) => execute(&cli, &|_| Ok(input.to_string())),
        Err(o) => o,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const INTRO: &str = "sig: const f : i -> i -> i; const g : i -> i -> i -> i; const h : i -> i -> i -> i
left: \\x:i, y:i. f(h(x,x,y), h(x,y,y))
right: \\x:i, y:i. f(g(x,x,y), g(x,y,y))
";

    fn run_on(args: &[&str], input: &str) -> Outcome {
        run_with_input(std::iter::once("hoau").chain(args.iter().copied()), input)
    }

    #[test]
    fn lgg_of_the_introductory_pair() {
        let o = run_on(&["lgg", "-", "--verify"], INTRO);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout, "λx,y.f(Y0(x,y),Y1(x,y))\n");
    }

    #[test]
    fn det_command() {
        let o = run_on(&["det", "1", "a,b", "a,b"], "");
        assert_eq!(o.stdout, "{(a[1,1],(b[2,2],∅))}\n");
        let o = run_on(&["det", "1", "a,b", "b,a", "--mode", "sdet"], "");
        assert_eq!(o.stdout, "{(a[1,2],∅),(b[2,1],∅)}\n");
        assert_eq!(run_on(&["det", "0", "a", "a"], "").code, 1);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_on(&["lgg", "-"], "").code, 1);
        assert_eq!(run_on(&["lgg", "-"], "sig: const a : i\nleft: a\nright: \\x:i. x\n").code, 1);
        assert_eq!(run_on(&["frobnicate"], "").code, 1);
        let ac = "sig: const p : i -> i -> i [AC]; const a : i; const b : i; const c : i; const d : i
left: p(a,b,c,d)
right: p(d,c,b,a,a)
";
        assert_eq!(run_on(&["complete", "-", "--max-branches", "5"], ac).code, 2);
        assert_eq!(run_on(&["--help"], "").code, 0);
    }

    #[test]
    fn commutative_pair_through_complete() {
        let c = "sig: const k : i -> i -> i [C]; const a : i; const b : i\nleft: k(a,b)\nright: k(b,a)\n";
        let o = run_on(&["complete", "-", "--json", "--verify"], c);
        assert_eq!(o.code, 0);
        let doc: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        let gens = doc["generalizations"].as_array().unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0]["term"], "k(a,b)");
        assert_eq!(gens[0]["theta_left"], serde_json::json!({}));
        assert!(doc["stats"]["states_explored"].as_u64().unwrap() >= 1);
    }

    #[test]
    fn pattern_check_and_fragment_report() {
        let np = "sig: const f : i -> i -> i; var Z : i -> i -> i -> i
left: \\x:i, y:i. f(Z(x,x,y), Z(x,y,y))
right: \\x:i, y:i. f(Z(x,y,y), Z(x,x,y))
";
        let o = run_on(&["lgg", "-", "--check-pattern"], np);
        assert!(o.stdout.starts_with("left input is not a pattern\n"), "{}", o.stdout);
        let o = run_on(&["fragment", "-", "--json"], INTRO);
        let doc: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(doc["fragment"]["total_k_determined"], true);
    }

    #[test]
    fn json_is_stable_across_runs() {
        let a = "sig: const f : i -> i -> i [A]; const a : i; const b : i; const c : i
left: f(a,b,c,a)
right: f(c,b,a,b)
";
        for cmd in ["lgg", "complete", "optimal"] {
            let first = run_on(&[cmd, "-", "--json"], a);
            for _ in 0..2 {
                assert_eq!(run_on(&[cmd, "-", "--json"], a), first);
            }
        }
    }
}
