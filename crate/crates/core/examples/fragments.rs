//! Classifying problems into the k-determined and (k,l)-distinct fragments.

use hoau::fragments::{is_k_determined, is_kl_distinct, is_total_k_determined, pahs};
use hoau::syntax::parse_problem;

fn main() -> hoau::Result<()> {
    let problems = [
        "sig: const f : i -> i -> i [A]; const a : i; const b : i
left: f(a, b)
right: f(a, b, b)",
        "sig: const f : i -> i -> i [A]; const a : i; const b : i
left: f(a, b, a)
right: f(b, a, b)",
        "sig: const p : i -> i -> i [AC]; const g : i -> i; const a : i; const b : i
left: p(g(a), a, b)
right: p(b, g(b), a)",
    ];
    for text in problems {
        let (sig, l, r) = parse_problem(text)?;
        let (h1, h2) = pahs(&l, &r)?;
        println!("{l} ≜ {r}");
        println!("  argument heads: {h1:?} / {h2:?}");
        for k in 1..=2 {
            println!(
                "  k = {k}: determined {}, total {}, (k,1)-distinct {}",
                is_k_determined(&l, &r, &sig, k),
                is_total_k_determined(&l, &r, &sig, k),
                is_kl_distinct(&l, &r, &sig, k, 1),
            );
        }
    }
    Ok(())
}
