//! Brute-force point counts of universal-curve fibers over small finite
//! fields, checked against the chain length predicted by the classifier.
//!
//!     cargo run --example fiber_oracle

use weyltoric::fan::weyl_chamber_fan;
use weyltoric::moduli::{
    enumerate_fiber_points, expected_chain_points, predicted_chain_length,
    universal_curve_equations, RnData,
};
use weyltoric::rootsys::{Family, LatticePoint};

fn main() {
    let sys = universal_curve_equations(Family::B, 1).unwrap();
    println!("X(B2) over X(B1) is cut out by:");
    for r in &sys.relations {
        println!("  {r}");
    }
    println!();

    for q in [3i64, 5, 7] {
        let fan = weyl_chamber_fan(Family::B, 2).unwrap();
        for r in &fan.rays {
            let d = RnData::from_orbit_point(Family::B, 2, r).unwrap();
            let l = predicted_chain_length(&d).unwrap();
            let e = enumerate_fiber_points(&d, q).unwrap();
            assert_eq!(e.count, expected_chain_points(l, q));
            println!(
                "B2 ray {r}, q = {q}: {} points = chain of {l} lines",
                e.count
            );
        }
        println!();
    }

    // the D2 fixed-point fiber is a surface, so its count grows quadratically
    let d = RnData::from_orbit_point(Family::D, 2, &LatticePoint::new(vec![2, 0])).unwrap();
    for q in [3i64, 5, 7, 11] {
        let e = enumerate_fiber_points(&d, q).unwrap();
        println!("D2 two-dimensional fiber, q = {q:2}: {} points", e.count);
    }
}
