//! Determinate sets of argument head sequences.

use hoau::fragments::{det, sdet};

fn main() {
    let cases: [(usize, &str, &str); 4] = [
        (1, "ab", "ab"),
        (1, "abc", "cba"),
        (2, "aab", "aba"),
        (1, "ab", "ba"),
    ];
    for (k, w1, w2) in cases {
        let w1: Vec<char> = w1.chars().collect();
        let w2: Vec<char> = w2.chars().collect();
        println!("det({k}, {w1:?}, {w2:?})  = {}", det(k, &w1, &w2));
        println!("sdet({k}, {w1:?}, {w2:?}) = {}", sdet(k, &w1, &w2));
    }
}
