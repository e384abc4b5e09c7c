use num_complex::Complex64;
use proptest::prelude::*;
use semitree::kernels::{self, endpoints};
use semitree::spectra::{
    boundary_curve, gamma_of_z, gamma_relation_residual, is_connected, lp_range_of_spherical, membership,
    mu2_region, p_crit, sigma_p, sigma_p_from, spectral_radius, split_exponent, Exponent, LpRange, Verdict,
    ZeroStatus,
};
use semitree::{Parity, TreeParams};

fn t(qp: u32, qm: u32) -> TreeParams {
    TreeParams::new(qp, qm).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ex(p: f64) -> Exponent {
    Exponent::new(p).unwrap()
}

const PS: [f64; 7] = [1.0, 1.2, 1.5, 2.0, 3.0, 6.0, f64::INFINITY];

fn pair() -> impl Strategy<Value = TreeParams> {
    (2u32..8, 2u32..8).prop_map(|(a, b)| t(a, b))
}

fn exponent() -> impl Strategy<Value = Exponent> {
    // uniform in 1/p, including the endpoints 1 and ∞
    prop_oneof![Just(Exponent::ONE), Just(Exponent::INF), (0.001f64..0.999).prop_map(|s| ex(1.0 / s))]
}

fn rank(v: Verdict) -> u8 {
    match v {
        Verdict::Outside => 0,
        Verdict::Boundary => 1,
        Verdict::Inside => 2,
    }
}

#[test]
fn exponent_validation() {
    assert!(Exponent::new(0.5).is_err());
    assert!(Exponent::new(f64::NAN).is_err());
    assert_eq!(Exponent::ONE.conjugate(), Exponent::INF);
    assert_eq!(Exponent::INF.conjugate(), Exponent::ONE);
    assert_eq!(ex(3.0).conjugate(), ex(1.5));
    assert_eq!(Exponent::INF.to_string(), "inf");
}

#[test]
fn mu2_region_examples() {
    for (qp, qm) in [(5, 2), (3, 5), (2, 2)] {
        let p = t(qp, qm);
        let two = mu2_region(&p, Exponent::TWO, Parity::Plus);
        assert!(two.semi_axis_imag.abs() < 1e-15);
        let one = mu2_region(&p, Exponent::ONE, Parity::Plus);
        let (qpf, qmf) = (qp as f64, qm as f64);
        let half = (1.0 + qpf * qmf) / ((qpf + 1.0) * qmf);
        assert!((one.semi_axis_real - half).abs() < 1e-14);
        // Γ₊ = 1 is the right vertex at p = 1
        assert!((one.center.re + one.semi_axis_real - 1.0).abs() < 1e-14);
    }
}

#[test]
fn sigma_p_examples() {
    for (qp, qm) in [(5, 2), (3, 5), (2, 7), (3, 3)] {
        let p = t(qp, qm);
        let e = endpoints(&p);
        let s2 = sigma_p(&p, Exponent::TWO);
        assert!(s2.semi_axis_imag.abs() < 1e-15);
        assert!((s2.center.re - s2.semi_axis_real - e.a * e.a).abs() < 1e-14);
        assert!((s2.center.re + s2.semi_axis_real - e.b * e.b).abs() < 1e-14);
        let d = ((qp as f64 - qm as f64) / p.d()).powi(2);
        for pv in PS {
            for side in [Parity::Plus, Parity::Minus] {
                let s = sigma_p_from(&p, ex(pv), side);
                assert!((s.foci.0.re - e.a * e.a).abs() < 1e-12 && (s.foci.1.re - e.b * e.b).abs() < 1e-12);
                let eta = s.center.re;
                let resid = eta * eta + s.semi_axis_imag.powi(2) - s.semi_axis_real.powi(2);
                assert!((resid - d).abs() < 1e-12, "({qp},{qm}) p={pv}");
            }
        }
    }
}

#[test]
fn gamma_of_z_examples() {
    for (qp, qm) in [(5, 2), (3, 5)] {
        let p = t(qp, qm);
        assert!((gamma_of_z(&p, c(0.0, 0.0), Parity::Plus) - 1.0).norm() < 1e-14);
        let lp = (p.q_product() as f64).ln();
        let z = c((qm as f64).ln() / lp, std::f64::consts::PI / lp);
        assert!((gamma_of_z(&p, z, Parity::Plus) + 1.0 / qm as f64).norm() < 1e-13);
        for z in [c(0.2, 0.1), c(1.3, -0.7), c(-0.5, 2.0)] {
            for side in [Parity::Plus, Parity::Minus] {
                let g = gamma_of_z(&p, z, side);
                assert!(gamma_relation_residual(&p, z, side) < 1e-12 * g.norm().max(1.0));
            }
        }
    }
}

#[test]
fn membership_examples() {
    let p = t(5, 2);
    assert_eq!(membership(&p, Exponent::TWO, c(0.5, 0.0)).verdict, Verdict::Inside);
    assert_eq!(membership(&p, Exponent::TWO, c(0.1, 0.0)).verdict, Verdict::Outside);
    for pv in PS {
        for (qp, qm) in [(5, 2), (3, 5), (2, 2)] {
            let q = t(qp, qm);
            let rho = spectral_radius(&q, ex(pv));
            assert_eq!(membership(&q, ex(pv), c(rho, 0.0)).verdict, Verdict::Boundary, "({qp},{qm}) p={pv}");
        }
    }
}

#[test]
fn isolated_zero() {
    let zero = c(0.0, 0.0);
    // q₊ < q₋: zero is in every spectrum
    for pv in PS {
        let m = membership(&t(2, 5), ex(pv), zero);
        assert_eq!(m.verdict, Verdict::Inside, "p={pv}");
    }
    // q₊ > q₋: settled only for p = 2
    let m2 = membership(&t(5, 2), Exponent::TWO, zero);
    assert!(m2.includes_isolated_zero && m2.zero_status == ZeroStatus::Isolated);
    let m3 = membership(&t(5, 2), ex(3.0), zero);
    assert_eq!(m3.zero_status, ZeroStatus::UndeterminedByPaper);
    assert_eq!(m3.verdict, Verdict::Outside);
    // zero inside the region needs no isolated point
    let h = membership(&t(3, 3), Exponent::TWO, zero);
    assert_eq!(h.zero_status, ZeroStatus::NotApplicable);
    assert_eq!(h.verdict, Verdict::Inside);
}

#[test]
fn boundary_curve_lies_on_boundary() {
    for (qp, qm) in [(5, 2), (3, 5), (2, 7)] {
        let p = t(qp, qm);
        for pv in [1.0, 1.5, 3.0, 6.0, f64::INFINITY] {
            let e = ex(pv);
            let curve = boundary_curve(&p, e, 100).unwrap();
            let mut max_abs = 0.0f64;
            for pt in &curve {
                max_abs = max_abs.max(pt.sheet1.norm());
                for g in [pt.sheet1, pt.sheet2] {
                    assert_eq!(membership(&p, e, g).verdict, Verdict::Boundary, "({qp},{qm}) p={pv} θ={}", pt.theta);
                    if kernels::on_cut(&p, g) {
                        continue;
                    }
                    let (b, bt) = kernels::b_of_gamma(&p, g).unwrap();
                    let target = p.qq().powf(e.distortion());
                    assert!((bt.norm() - target).abs() <= 1e-9 * target);
                    assert!((b.norm() - 1.0 / target).abs() <= 1e-9);
                }
            }
            assert!((max_abs - spectral_radius(&p, e)).abs() < 1e-10);
            // sheets continue smoothly along θ
            for w in curve.windows(2) {
                assert!((w[1].sheet1 - w[0].sheet1).norm() < (w[1].sheet1 + w[0].sheet1).norm());
            }
        }
    }
    assert!(boundary_curve(&t(2, 3), Exponent::TWO, 4).is_err());
}

#[test]
fn spectral_radius_examples() {
    for (qp, qm) in [(5, 2), (3, 5), (2, 2)] {
        let p = t(qp, qm);
        assert!((spectral_radius(&p, Exponent::ONE) - 1.0).abs() < 1e-14);
        assert!((spectral_radius(&p, Exponent::INF) - 1.0).abs() < 1e-14);
        assert!((spectral_radius(&p, Exponent::TWO) - endpoints(&p).b).abs() < 1e-14);
        let mut prev = 0.0;
        for k in 0..=50 {
            let pv = 2.0 + k as f64 * 0.5;
            let r = spectral_radius(&p, ex(pv));
            assert!(r > prev && r < 1.0);
            prev = r;
        }
        assert!(1.0 - spectral_radius(&p, ex(1e6)) < 1e-5);
    }
}

#[test]
fn critical_exponents() {
    assert_eq!(p_crit(&t(4, 4)), 2.0);
    assert!((p_crit(&t(5, 2)) - (1.0 + 5f64.ln() / 2f64.ln())).abs() < 1e-12);
    assert!((p_crit(&t(2, 5)) - (1.0 + 2f64.ln() / 5f64.ln())).abs() < 1e-12);
    assert_eq!(split_exponent(&t(3, 3)), 2.0);
    assert!((split_exponent(&t(5, 2)) - 10f64.ln() / 5f64.ln()).abs() < 1e-12);
    assert_eq!(split_exponent(&t(5, 2)), split_exponent(&t(2, 5)));
}

#[test]
fn connectivity_transition() {
    let p = t(5, 2);
    let s = split_exponent(&p);
    let g = c(0.0, 0.02);
    assert!(is_connected(&p, ex(s - 0.05)) && !is_connected(&p, ex(s + 0.05)));
    assert_ne!(membership(&p, ex(s - 0.05), g).verdict, Verdict::Outside);
    assert_eq!(membership(&p, ex(s + 0.05), g).verdict, Verdict::Outside);
    assert!(is_connected(&p, Exponent::ONE) && is_connected(&p, Exponent::INF));
    assert!(!is_connected(&p, Exponent::TWO));
    assert!(is_connected(&t(3, 3), Exponent::TWO));
}

#[test]
fn lp_range_examples() {
    let zero = c(0.0, 0.0);
    let r = lp_range_of_spherical(&t(2, 5), zero).unwrap();
    assert_eq!(r, LpRange::Above(p_crit(&t(2, 5))));
    assert!(r.contains(Exponent::TWO));
    assert!(!lp_range_of_spherical(&t(5, 2), zero).unwrap().contains(Exponent::TWO));
    for (qp, qm) in [(5, 2), (3, 5)] {
        let p = t(qp, qm);
        let e = endpoints(&p);
        assert_eq!(lp_range_of_spherical(&p, c(e.b, 0.0)).unwrap(), LpRange::Above(2.0));
        assert_eq!(lp_range_of_spherical(&p, c(-e.a, 0.0)).unwrap(), LpRange::Above(2.0));
        // on the cuts |B| = 1: every p > 2
        let mid = lp_range_of_spherical(&p, c((e.a + e.b) / 2.0, 0.0)).unwrap();
        assert!((mid.threshold().unwrap() - 2.0).abs() < 1e-12, "{mid:?}");
        // φ ≡ 1 at γ = 1, where |B| = 1/𝔮
        assert_eq!(lp_range_of_spherical(&p, c(1.0, 0.0)).unwrap(), LpRange::BoundedOnly);
        // the boundary of S₃ has |B| = 𝔮^{−1/3}, i.e. threshold 3
        for pt in boundary_curve(&p, ex(3.0), 16).unwrap() {
            if kernels::on_cut(&p, pt.sheet1) {
                continue;
            }
            let th = lp_range_of_spherical(&p, pt.sheet1).unwrap().threshold().unwrap();
            assert!((th - 3.0).abs() < 1e-9, "({qp},{qm}) θ={} threshold {th}", pt.theta);
        }
    }
    assert_eq!(lp_range_of_spherical(&t(3, 5), c(1.2, 0.0)).unwrap(), LpRange::Empty);
    assert!(LpRange::BoundedOnly.contains(Exponent::INF));
    assert!(!LpRange::BoundedOnly.contains(ex(1e9)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn duality(p in pair(), e in exponent(), re in -1.5f64..1.5, im in -1.0f64..1.0) {
        let g = Complex64::new(re, im);
        prop_assert_eq!(membership(&p, e, g).verdict, membership(&p, e.conjugate(), g).verdict);
    }

    #[test]
    fn negation(p in pair(), e in exponent(), re in -1.5f64..1.5, im in -1.0f64..1.0) {
        let g = Complex64::new(re, im);
        prop_assert_eq!(membership(&p, e, g).verdict, membership(&p, e, -g).verdict);
        prop_assert_eq!(membership(&p, e, g).verdict, membership(&p, e, g.conj()).verdict);
    }

    #[test]
    fn swap_invariance(p in pair(), e in exponent(), re in -1.5f64..1.5, im in -1.0f64..1.0) {
        let g = Complex64::new(re, im);
        prop_assert_eq!(membership(&p, e, g).verdict, membership(&p.swapped(), e, g).verdict);
        let (s, w) = (sigma_p(&p, e), sigma_p(&p.swapped(), e));
        prop_assert!((s.center - w.center).norm() < 1e-14);
        prop_assert!((s.semi_axis_real - w.semi_axis_real).abs() < 1e-14);
        prop_assert!((s.semi_axis_imag - w.semi_axis_imag).abs() < 1e-14);
        prop_assert!((spectral_radius(&p, e) - spectral_radius(&p.swapped(), e)).abs() < 1e-14);
    }

    #[test]
    fn nested_in_p(p in pair(), s1 in 0.0f64..0.5, s2 in 0.0f64..0.5, re in -1.2f64..1.2, im in -0.8f64..0.8) {
        // 1/p ∈ [0, ½] covers p ∈ [2, ∞]; smaller 1/p means larger p
        let (lo, hi) = if s1 <= s2 { (s2, s1) } else { (s1, s2) };
        let pick = |s: f64| if s == 0.0 { Exponent::INF } else { ex(1.0 / s) };
        let g = Complex64::new(re, im);
        prop_assume!(g.norm() > 0.0);
        let small = membership(&p, pick(lo), g).verdict;
        let large = membership(&p, pick(hi), g).verdict;
        prop_assert!(rank(small) <= rank(large) || small == Verdict::Boundary);
    }

    #[test]
    fn spectrum_as_region_of_b(p in pair(), e in exponent(), re in -1.5f64..1.5, im in 0.01f64..1.0) {
        // off the real axis: γ ∈ S_p iff 𝔮^{−|1−2/p|} ≤ |B(γ)|
        let g = Complex64::new(re, im);
        let m = membership(&p, e, g).verdict;
        prop_assume!(m != Verdict::Boundary);
        let b = kernels::b_of_gamma(&p, g).unwrap().0.norm();
        let thr = p.qq().powf(-e.distortion());
        prop_assume!((b - thr).abs() > 1e-9);
        prop_assert_eq!(m == Verdict::Inside, b > thr);
    }
}
