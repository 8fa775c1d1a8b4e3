//! The homology basis monomials l^w indexed by signed permutations, and the
//! rewriting of arbitrary chain monomials into that basis.
//!
//!     cargo run --example homology_basis

use weyltoric::fan::SignedSubset;
use weyltoric::homology::{
    basis_monomial, betti_numbers, multiply_divisor_classes, partition_and_d, reduce_to_basis,
    Combination,
};
use weyltoric::rootsys::{weyl_elements, Family};

fn main() {
    let n = 2;
    println!("basis monomials for rank {n}:");
    for w in weyl_elements(Family::B, n).unwrap() {
        let m = basis_monomial(&w);
        let (_, d) = partition_and_d(&m, n);
        println!("  w = {w}  ->  {m}   (d = {d})");
        assert_eq!(d, 0);
    }
    println!();

    println!("Betti numbers:");
    for n in 1..=4usize {
        println!("  B{n}: {:?}", betti_numbers(Family::B, n).unwrap());
    }
    println!();

    // a product of divisor classes that is not itself a basis monomial
    let b1 = SignedSubset::new(vec![2]).unwrap();
    let b2 = SignedSubset::new(vec![-1, 2]).unwrap();
    let product = multiply_divisor_classes(&[b1.clone(), b2.clone()], 2);
    println!("l{b1} * l{b2} = {product}");

    let mut x = Combination::new();
    x.insert(basis_monomial(&weyl_elements(Family::B, 2).unwrap()[3]), 5);
    let reduced = reduce_to_basis(&x, 2);
    println!("a basis monomial reduces to itself: {reduced}");
}
