//! Classifying projective data on root pairs into combinatorial types of
//! pointed chains of projective lines, and reading the same types off torus
//! orbits of the Weyl chamber fan.
//!
//!     cargo run --example classify_curves

use weyltoric::fan::{weyl_chamber_fan, Cone};
use weyltoric::moduli::{
    classify_bn_data, format_type, orbit_type, validate_data, ProjectivePair, RnData,
};
use weyltoric::rootsys::{Family, RootVector};

fn main() {
    // a single pair of opposite roots: the three strata of X(B_1)
    for (x, y) in [(1, 1), (0, 1), (1, 0)] {
        let mut d = RnData::generic(Family::B, 1).unwrap();
        d.set(&RootVector::u(1, 1), ProjectivePair::rational(x, y).unwrap());
        let t = classify_bn_data(&d).unwrap();
        println!("(t_u1 : t_-u1) = ({x}:{y})  ->  {}", format_type(&t));
    }
    println!();

    // invalid data is caught by the A2 triple relations
    let mut d = RnData::generic(Family::B, 2).unwrap();
    d.set(&RootVector::beta(1, 2, 2), ProjectivePair::rational(2, 1).unwrap());
    let v = validate_data(&d).unwrap();
    println!("perturbed B2 data valid: {}", v.valid);
    for (b, g, s) in &v.violations {
        println!("  violated triple: ({b}, {g}, {s})");
    }
    println!();

    // every ray of Sigma(B_2) and its fiber type
    let fan = weyl_chamber_fan(Family::B, 2).unwrap();
    for r in &fan.rays {
        let cone = Cone::new(vec![r.clone()], fan.lattice).unwrap();
        let t = orbit_type(Family::B, 2, &cone).unwrap();
        let d = RnData::from_orbit_point(Family::B, 2, r).unwrap();
        assert_eq!(classify_bn_data(&d).unwrap(), t);
        println!("ray {r}  ->  {}", format_type(&t));
    }
    println!();

    // D over the distinguished 2-dimensional cone: a 2-dimensional fiber
    let nd = weyl_chamber_fan(Family::D, 2).unwrap().lattice;
    let z = Cone::new(
        vec![
            weyltoric::rootsys::LatticePoint::new(vec![1, 1]),
            weyltoric::rootsys::LatticePoint::new(vec![1, -1]),
        ],
        nd,
    )
    .unwrap();
    println!("D2 Z-cone: {}", format_type(&orbit_type(Family::D, 2, &z).unwrap()));
}
