//! Ray and chamber counts of the Weyl chamber fans, with smoothness and
//! completeness checks and the index-2 lattice comparison between B and C.
//!
//!     cargo run --example fan_census

use weyltoric::fan::{fan_census, weyl_chamber_fan};
use weyltoric::rootsys::{lattice_index, Family, LatticeTag};

fn main() {
    for family in [Family::B, Family::C, Family::D] {
        let lo = if family == Family::D { 2 } else { 1 };
        for n in lo..=5usize {
            let c = fan_census(family, n).unwrap();
            println!(
                "Sigma({family}{n}): {} rays, {} maximal cones",
                c.ray_count, c.maximal_cone_count
            );
        }
    }
    println!();

    for family in [Family::B, Family::C, Family::D] {
        let lo = if family == Family::D { 2 } else { 1 };
        for n in lo..=4usize {
            let fan = weyl_chamber_fan(family, n).unwrap();
            println!(
                "Sigma({family}{n}) in {}: f-vector {:?}, smooth {}, complete {}",
                fan.lattice,
                fan.f_vector(),
                fan.is_smooth(),
                fan.is_complete()
            );
        }
    }
    println!();

    // N(B_n) sits inside N(C_n) with index 2, and the half-sum rays of
    // Sigma(C_2) are not even lattice points of N(B_2)
    let idx = lattice_index(LatticeTag::n(Family::B, 2), LatticeTag::n(Family::C, 2)).unwrap();
    println!("[N(C2) : N(B2)] = {idx}");
    let c2 = weyl_chamber_fan(Family::C, 2).unwrap();
    println!(
        "Sigma(C2) measured in N(B2): smooth {}",
        c2.is_smooth_in(LatticeTag::n(Family::B, 2))
    );
}
