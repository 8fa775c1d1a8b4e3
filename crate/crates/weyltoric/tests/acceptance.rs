//! One test per release criterion; each prints a single pass line once its
//! checks hold.  Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weyltoric::fan::{check_fiber_flatness, fan_census, weyl_chamber_fan, Cone, WeylFan};
use weyltoric::homology::{
    all_chain_monomials, basis_monomial, betti_numbers, d_m_closed_form, multiply_divisor_classes,
    partition_and_d, poincare_from_descents, poincare_from_fan, poincare_series, reduce_to_basis,
    relation_generators, IntPolynomial, Reducer,
};
use weyltoric::moduli::{
    apply_j, classify_bn_data, enumerate_fiber_points, expected_chain_points, format_type,
    orbit_type, predicted_chain_length, validate_data, ProjectivePair, RnData,
};
use weyltoric::rootsys::{Family, LatticePoint, LatticeTag};

/// Interior points of every cone of the fan, one per cone, the zero cone
/// giving the origin.
fn cone_interior_points(fan: &WeylFan) -> Vec<LatticePoint> {
    let mut seen: BTreeSet<Vec<LatticePoint>> = BTreeSet::new();
    let mut out = Vec::new();
    for ch in &fan.chambers {
        let k = ch.rays.len();
        for mask in 0u32..1 << k {
            let mut rays: Vec<LatticePoint> = (0..k)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| ch.rays[i].clone())
                .collect();
            rays.sort();
            if seen.insert(rays.clone()) {
                let mut p = LatticePoint::zero(fan.rank);
                for r in &rays {
                    p = p.add(r);
                }
                out.push(p);
            }
        }
    }
    out
}

#[test]
fn criterion_1_poincare_polynomials() {
    let start = Instant::now();
    let listed: [&[i64]; 6] = [
        &[1, 1],
        &[1, 6, 1],
        &[1, 23, 23, 1],
        &[1, 76, 230, 76, 1],
        &[1, 237, 1682, 1682, 237, 1],
        &[1, 722, 10543, 23548, 10543, 722, 1],
    ];
    let series = poincare_series(6);
    for (n, coeffs) in listed.iter().enumerate() {
        assert_eq!(series[n + 1], IntPolynomial::new(coeffs.to_vec()), "B{}", n + 1);
    }
    assert!(start.elapsed().as_secs() < 10, "took {:?}", start.elapsed());
    println!("criterion 1: PASS");
}

#[test]
fn criterion_2_three_route_agreement() {
    let series = poincare_series(6);
    let t_minus_1 = IntPolynomial::new(vec![-1, 1]);
    for n in 1..=6usize {
        // closed-form route
        let mut closed = IntPolynomial::zero();
        let mut pow = IntPolynomial::new(vec![1]);
        let mut pows = vec![pow.clone()];
        for _ in 0..n {
            pow = pow.mul(&t_minus_1);
            pows.push(pow.clone());
        }
        for m in 0..=n {
            closed = closed.add(&pows[n - m].scale(d_m_closed_form(n, m)));
        }
        assert_eq!(closed, series[n], "closed form, n={n}");

        // fan f-vector route
        let fan = weyl_chamber_fan(Family::B, n).unwrap();
        assert_eq!(poincare_from_fan(&fan), series[n], "fan route, n={n}");

        // descent-statistic route
        if n <= 5 {
            assert_eq!(poincare_from_descents(n).unwrap(), series[n], "descents, n={n}");
        }
    }
    println!("criterion 2: PASS");
}

#[test]
fn criterion_3_cone_census() {
    for n in 1..=7usize {
        for family in [Family::B, Family::C] {
            let c = fan_census(family, n).unwrap();
            assert_eq!(c.ray_count, 3u64.pow(n as u32) - 1, "{family}{n} rays");
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(c.maximal_cone_count, (1u64 << n) * fact, "{family}{n} chambers");
        }
    }
    for n in 2..=7usize {
        let c = fan_census(Family::D, n).unwrap();
        let expected = 3u64.pow(n as u32) - (n as u64) * (1u64 << (n - 1)) - 1;
        assert_eq!(c.ray_count, expected, "D{n} rays");
        let fact: u64 = (1..=n as u64).product();
        assert_eq!(c.maximal_cone_count, (1u64 << (n - 1)) * fact, "D{n} chambers");
    }
    let series = poincare_series(6);
    for n in 1..=6usize {
        let c = fan_census(Family::B, n).unwrap();
        assert_eq!(series[n].eval(1) as u64, c.maximal_cone_count, "chi, n={n}");
    }
    println!("criterion 3: PASS");
}

#[test]
fn criterion_4_smooth_and_complete() {
    for family in [Family::B, Family::C, Family::D] {
        let lo = if family == Family::D { 2 } else { 1 };
        for n in lo..=5usize {
            let fan = weyl_chamber_fan(family, n).unwrap();
            assert!(fan.is_smooth(), "{family}{n} smooth");
            assert!(fan.is_complete(), "{family}{n} complete");
        }
    }
    // index-2 control: the same rays measured in the finer lattice
    let c2 = weyl_chamber_fan(Family::C, 2).unwrap();
    assert!(!c2.is_smooth_in(LatticeTag::n(Family::B, 2)));
    println!("criterion 4: PASS");
}

#[test]
fn criterion_5_homology_basis() {
    for n in 1..=4usize {
        let elements = weyltoric::rootsys::weyl_elements(Family::B, n).unwrap();
        let monomials: Vec<_> = elements.iter().map(basis_monomial).collect();
        let distinct: BTreeSet<_> = monomials.iter().collect();
        assert_eq!(distinct.len(), monomials.len(), "distinct, n={n}");

        let betti = betti_numbers(Family::B, n).unwrap();
        for m in 0..=n {
            let count = monomials.iter().filter(|y| y.chain().len() == m).count() as i64;
            assert_eq!(count, betti[2 * (n - m)], "degree {m}, n={n}");
        }
    }

    // exhaustive reduction to the basis for small ranks
    for n in 1..=3usize {
        let basis: BTreeSet<_> = weyltoric::rootsys::weyl_elements(Family::B, n)
            .unwrap()
            .iter()
            .map(basis_monomial)
            .collect();
        let mut red = Reducer::new(n);
        for y in all_chain_monomials(n) {
            let out = red.reduce_monomial(&y);
            for term in out.keys() {
                assert_eq!(partition_and_d(term, n).1, 0, "d=0 for {term}");
                assert!(basis.contains(term), "basis term for {y}");
            }
            let again = red.reduce(&out);
            assert_eq!(again.terms, out, "idempotent on {y}");
        }
    }

    // sampled reduction at rank 4
    let monomials = all_chain_monomials(4);
    let mut red = Reducer::new(4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let y = &monomials[rng.gen_range(0..monomials.len())];
        let out = red.reduce_monomial(y);
        for term in out.keys() {
            assert_eq!(partition_and_d(term, 4).1, 0);
        }
        assert_eq!(red.reduce(&out).terms, out);
    }

    // every relation generator reduces to zero
    for n in 1..=3usize {
        let gens = relation_generators(n);
        for r in gens.linear.iter().chain(&gens.module_rij).chain(&gens.module_ri) {
            assert!(reduce_to_basis(r, n).is_zero(), "relation survives, n={n}");
        }
        for (a, b) in &gens.quadratic_pairs {
            assert!(multiply_divisor_classes(&[a.clone(), b.clone()], n).is_zero());
        }
    }

    let series = poincare_series(6);
    for n in 1..=6usize {
        assert_eq!(series[n].coeff(n - 1), 3i64.pow(n as u32) - n as i64 - 1, "beta_2, n={n}");
    }
    println!("criterion 5: PASS");
}

fn random_valid_data(n: usize, q: i64, rng: &mut ChaCha8Rng) -> RnData {
    let powmod = |mut b: i64, mut e: i64, q: i64| {
        b = b.rem_euclid(q);
        let mut r = 1i64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % q;
            }
            b = b * b % q;
            e >>= 1;
        }
        r
    };
    let fan = weyl_chamber_fan(Family::B, n).unwrap();
    let ch = &fan.chambers[rng.gen_range(0..fan.chambers.len())];
    let mut p = LatticePoint::zero(n);
    for r in &ch.rays {
        if rng.gen_bool(0.5) {
            p = p.add(r);
        }
    }
    let x: Vec<i64> = (0..n).map(|_| rng.gen_range(1..q)).collect();
    let mut d = RnData::generic(Family::B, n).unwrap();
    for root in d.positive_roots() {
        let s = root.pair2(&p);
        let pair = if s > 0 {
            ProjectivePair::modular(0, 1, q)
        } else if s < 0 {
            ProjectivePair::modular(1, 0, q)
        } else {
            // value of the monomial x^root on a point of the orbit's torus
            let mut v = 1i64;
            for (i, &c) in root.coords().iter().enumerate() {
                let e = if c >= 0 { c } else { -c * (q - 2) }; // negative powers via inversion
                v = v * powmod(x[i], e, q) % q;
            }
            ProjectivePair::modular(v, 1, q)
        };
        d.set(&root, pair.unwrap());
    }
    d
}

#[test]
fn criterion_6_classification_vs_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in 1..=2usize {
        let fan = weyl_chamber_fan(Family::B, n).unwrap();
        let orbit_points = cone_interior_points(&fan);
        for q in [3i64, 5, 7] {
            for p in &orbit_points {
                let d = RnData::from_orbit_point(Family::B, n, p).unwrap();
                let l = predicted_chain_length(&d).unwrap();
                let count = enumerate_fiber_points(&d, q).unwrap().count;
                assert_eq!(count, expected_chain_points(l, q), "orbit {p}, q={q}");
            }
            for _ in 0..20 {
                let d = random_valid_data(n, q, &mut rng);
                assert!(validate_data(&d).unwrap().valid);
                let l = predicted_chain_length(&d).unwrap();
                let count = enumerate_fiber_points(&d, q).unwrap().count;
                assert_eq!(count, expected_chain_points(l, q), "random data, n={n}, q={q}");
            }
        }
    }
    assert!(start.elapsed().as_secs() < 60, "took {:?}", start.elapsed());
    println!("criterion 6: PASS");
}

#[test]
fn criterion_7_orbit_type_tables() {
    let text = std::fs::read_to_string(format!(
        "{}/tests/fixtures/orbit_types_rank3.txt",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();
    let mut per_family = [0usize; 3];
    for line in text.lines() {
        let mut it = line.splitn(3, ';');
        let family = match it.next().unwrap() {
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            f => panic!("family {f}"),
        };
        let coords: Vec<i64> =
            it.next().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
        let expected = it.next().unwrap();
        let ray = LatticePoint::new(coords);
        let cone = Cone::new(vec![ray.clone()], LatticeTag::n(family, 3)).unwrap();
        let t = orbit_type(family, 3, &cone).unwrap();
        assert_eq!(format_type(&t), expected, "{family} ray {ray}");
        per_family[match family {
            Family::B => 0,
            Family::C => 1,
            _ => 2,
        }] += 1;
    }
    // every ray of each rank-3 fan is covered
    assert_eq!(per_family, [26, 26, 14]);
    println!("criterion 7: PASS");
}

#[test]
fn criterion_8_nonflatness() {
    for family in [Family::B, Family::C] {
        for n in 1..=4usize {
            let r = check_fiber_flatness(family, n).unwrap();
            assert!(r.flat_compatible, "{family}, n={n}");
            assert!(r.witnesses.is_empty());
        }
    }
    for n in 2..=3usize {
        let r = check_fiber_flatness(Family::D, n).unwrap();
        assert!(!r.flat_compatible, "D, n={n}");
        assert!(!r.witnesses.is_empty());
    }

    // smallest witness: v_1 upstairs lands in the interior of the cone over
    // (v_1+v_2)/2 and (v_1-v_2)/2
    let r = check_fiber_flatness(Family::D, 2).unwrap();
    let v1 = LatticePoint::new(vec![2, 0]);
    let w = r
        .witnesses
        .iter()
        .find(|w| w.projected == vec![v1.clone()])
        .expect("witness with projection v1");
    let mut cone = w.smallest_cone.clone();
    cone.sort();
    assert_eq!(
        cone,
        vec![LatticePoint::new(vec![1, -1]), LatticePoint::new(vec![1, 1])]
    );
    assert_eq!(w.image_rank, 1);
    assert_eq!(w.cone_dim, 2);

    // quadratic point growth over the orbit whose fiber is 2-dimensional
    let d = RnData::from_orbit_point(Family::D, 2, &LatticePoint::new(vec![2, 0])).unwrap();
    let counts: Vec<i64> = [3i64, 5, 7]
        .iter()
        .map(|&q| enumerate_fiber_points(&d, q).unwrap().count as i64)
        .collect();
    let d1 = counts[1] - counts[0];
    let d2 = counts[2] - counts[1];
    assert_eq!(d1 % 2, 0);
    assert_eq!(d2 % 2, 0);
    assert_eq!((d2 - d1) % 8, 0);
    let a = (d2 - d1) / 8;
    assert!(a >= 1, "leading coefficient {a} from counts {counts:?}");
    println!("criterion 8: PASS");
}

#[test]
fn criterion_9_involution() {
    for n in 1..=3usize {
        let fan = weyl_chamber_fan(Family::B, n).unwrap();
        for p in cone_interior_points(&fan) {
            let d = RnData::from_orbit_point(Family::B, n, &p).unwrap();
            let jd = apply_j(&d).unwrap();
            assert_eq!(apply_j(&jd).unwrap(), d, "J^2, orbit {p}");
            assert_eq!(
                classify_bn_data(&jd).unwrap(),
                classify_bn_data(&d).unwrap(),
                "classification under J, orbit {p}"
            );
        }
        // and on a few non-orbit data points
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [3i64, 5, 7] {
            for _ in 0..5 {
                let d = random_valid_data(n, q, &mut rng);
                let jd = apply_j(&d).unwrap();
                assert_eq!(apply_j(&jd).unwrap(), d);
                assert_eq!(classify_bn_data(&jd).unwrap(), classify_bn_data(&d).unwrap());
            }
        }
    }
    println!("criterion 9: PASS");
}
