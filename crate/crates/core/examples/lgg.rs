//! Syntactic least general generalization of two lambda terms.

use hoau::syntax::parse_problem;
use hoau::syntactic_lgg;

fn main() -> hoau::Result<()> {
    let text = "sig: const f : i -> i -> i; const g : i -> i -> i -> i; const h : i -> i -> i -> i
left: \\x:i, y:i. f(h(x, x, y), h(x, y, y))
right: \\x:i, y:i. f(g(x, x, y), g(x, y, y))";
    let (sig, left, right) = parse_problem(text)?;
    let lgg = syntactic_lgg(&left, &right, &sig)?;
    println!("lgg:   {}", lgg.term);
    println!("left:  {}", lgg.theta_left);
    println!("right: {}", lgg.theta_right);
    assert!(lgg.verify(&left, &right, &sig));
    Ok(())
}
