//! A single rigidity-guided derivation over a mixed signature.

use hoau::optimal::{optimal_generalize, Strategy};
use hoau::syntax::parse_problem;

fn main() -> hoau::Result<()> {
    let text = "sig: const f : i -> i -> i [A]; const k : i -> i -> i [C]; const p : i -> i -> i [AC]
  const g : i -> i; const a : i; const b : i; const c : i
left: \\x:i. f(c, k(x, g(a)), p(a, b, x), c)
right: \\x:i. f(b, k(g(a), x), p(x, a, a), b)";
    let (sig, left, right) = parse_problem(text)?;
    for (k, l) in [(1, 1), (1, 2), (2, 3)] {
        let strategy = Strategy { k, l, ..Strategy::default() };
        let r = optimal_generalize(&left, &right, &sig, &strategy)?;
        println!("k = {k}, l = {l}: {}", r.term);
        assert!(r.verify(&left, &right, &sig));
    }
    Ok(())
}
