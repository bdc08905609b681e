use brauer_core::functor::{equivariant_hom, power_word};
use brauer_core::space::Group;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let sol = equivariant_hom(&Group::Orthogonal(3), &power_word(3), &power_word(3), 10_000_000)
        .unwrap();
    println!("O(3) End(V^3) oracle dim = {} in {:?}", sol.len(), t0.elapsed());
    let t0 = Instant::now();
    let sol = equivariant_hom(&Group::Orthogonal(3), &power_word(2), &power_word(2), 10_000_000)
        .unwrap();
    println!("O(3) End(V^2) oracle dim = {} in {:?}", sol.len(), t0.elapsed());
}
