//! The universal C_n-curve lives over a fan obtained from Sigma(C_{n+1}) by
//! removing the integer rays supported away from the last coordinate and
//! merging the chambers across each removed wall.
//!
//!     cargo run --example contracted_fan

use weyltoric::fan::{contracted_c_fan, fan_census};
use weyltoric::moduli::universal_curve_equations;
use weyltoric::rootsys::Family;

fn main() {
    for n in 1..=3usize {
        let full = fan_census(Family::C, n + 1).unwrap();
        let contracted = contracted_c_fan(n).unwrap();
        println!(
            "Sigma(C{}): {} rays -> contracted fan: {} rays ({} removed), {} maximal cones, complete {}",
            n + 1,
            full.ray_count,
            contracted.rays.len(),
            contracted.removed_rays.len(),
            contracted.maximal_cones.len(),
            contracted.is_complete()
        );
    }
    println!();

    // algebraically the contraction drops the central coordinate pair and
    // the relations through it
    let sys = universal_curve_equations(Family::C, 2).unwrap();
    let sub = sys.contracted_subsystem();
    println!(
        "C2: {} relations on {} coordinate pairs; contracted curve: {} relations on {}",
        sys.relations.len(),
        sys.coordinates.len(),
        sub.relations.len(),
        sub.coordinates.len()
    );
    for r in &sub.relations {
        println!("  {r}");
    }
}
