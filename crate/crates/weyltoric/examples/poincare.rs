//! Poincare polynomials of X(B_n) by three independent routes: fan face
//! counts, the closed-form cone numbers d_m, and the exponential generating
//! function, plus the signed-permutation descent statistic.
//!
//!     cargo run --example poincare

use weyltoric::fan::weyl_chamber_fan;
use weyltoric::homology::{
    d_m_closed_form, poincare_from_descents, poincare_from_fan, poincare_series, IntPolynomial,
};
use weyltoric::rootsys::Family;

fn t_minus_1_pow(k: usize) -> IntPolynomial {
    let mut p = IntPolynomial::new(vec![1]);
    for _ in 0..k {
        p = p.mul(&IntPolynomial::new(vec![-1, 1]));
    }
    p
}

fn main() {
    let series = poincare_series(6);
    for (n, p) in series.iter().enumerate().skip(1) {
        println!("p(B{n}) = {p}   chi = {}", p.eval(1));
    }
    println!();

    for n in 1..=4usize {
        let fan = weyl_chamber_fan(Family::B, n).unwrap();
        let from_fan = poincare_from_fan(&fan);
        let from_dm = (0..=n).fold(IntPolynomial::zero(), |acc, m| {
            acc.add(&t_minus_1_pow(n - m).scale(d_m_closed_form(n, m)))
        });
        let from_desc = poincare_from_descents(n).unwrap();
        assert_eq!(from_fan, series[n]);
        assert_eq!(from_dm, series[n]);
        assert_eq!(from_desc, series[n]);
        println!("n = {n}: fan, d_m and descent routes all give {from_fan}");
    }
}
