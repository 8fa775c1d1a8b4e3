//! Flatness diagnostics for the projections X(R_{n+1}) -> X(R_n): the B and
//! C towers project cone-to-cone, while for D some rays land in the interior
//! of a 2-dimensional cone, so the morphism cannot be flat.
//!
//!     cargo run --example flatness

use weyltoric::fan::check_fiber_flatness;
use weyltoric::rootsys::Family;

fn main() {
    for family in [Family::B, Family::C] {
        for n in 1..=3usize {
            let r = check_fiber_flatness(family, n).unwrap();
            println!(
                "X({family}{}) -> X({family}{n}): flat-compatible {}",
                n + 1,
                r.flat_compatible
            );
        }
    }
    println!();

    for n in 2..=3usize {
        let r = check_fiber_flatness(Family::D, n).unwrap();
        println!(
            "X(D{}) -> X(D{n}): flat-compatible {} ({} witness cones)",
            n + 1,
            r.flat_compatible,
            r.witnesses.len()
        );
    }
    println!();

    // the smallest witness: v_1 in Sigma(D_3) projects into the interior of
    // the cone spanned by (v_1+v_2)/2 and (v_1-v_2)/2 downstairs
    let r = check_fiber_flatness(Family::D, 2).unwrap();
    let w = r
        .witnesses
        .iter()
        .min_by_key(|w| (w.projected.len(), w.projected.clone()))
        .unwrap();
    println!("witness: projection {:?}", w.projected.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    println!(
        "lands inside the {}-dimensional cone {:?} but only spans rank {}",
        w.cone_dim,
        w.smallest_cone.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        w.image_rank
    );
}
