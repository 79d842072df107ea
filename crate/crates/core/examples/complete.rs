//! Enumerating every generalization modulo associativity and reducing the
//! result to a minimal complete set.

use hoau::equational::{complete_set, minimize};
use hoau::syntax::parse_problem;

fn main() -> hoau::Result<()> {
    let text = "sig: const f : i -> i -> i [A]; const a : i; const b : i; const c : i
left: f(a, b, c)
right: f(c, b, a)";
    let (sig, left, right) = parse_problem(text)?;
    let set = complete_set(&left, &right, &sig)?;
    println!("{} generalizations:", set.generalizations.len());
    for g in &set.generalizations {
        println!("  {}", g.term);
    }
    println!("minimal complete set:");
    for g in minimize(&set.generalizations, &sig) {
        println!("  {}", g.term);
    }
    Ok(())
}
