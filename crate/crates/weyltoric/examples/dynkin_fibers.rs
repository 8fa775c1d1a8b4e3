//! Fibers over torus fixed points rendered in the shape of Dynkin diagrams:
//! one vertex per component-with-section, a double edge at the central
//! component for B and C, a fork for D.
//!
//!     cargo run --example dynkin_fibers

use weyltoric::moduli::dynkin_fiber;
use weyltoric::rootsys::Family;

fn main() {
    for (family, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
        let d = dynkin_fiber(family, n).unwrap();
        println!("{family}{}:", n + 1);
        println!("{}", d.render());
        println!(
            "  {} vertices, {} edges",
            d.vertices.len(),
            d.edges.len()
        );
        println!();
    }
}
