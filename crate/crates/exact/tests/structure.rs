use hexatile_exact::{ortho_basis, ExactKernel, FloatKernel, LaurentSeries, OrthoBasis, SplitH};
use hexatile_lattice::{Alpha, Face, HexagonSpec, LozengeType};
use proptest::prelude::*;
use rug::Rational;

fn alpha_strategy() -> impl Strategy<Value = Alpha> {
    (1i64..=12, 1i64..=12).prop_filter_map("α in (0,1]", |(p, q)| if p <= q { Alpha::ratio(p, q).ok() } else { None })
}

#[test]
fn probabilities_sum_to_one() {
    for n in 1..=6 {
        let k = ExactKernel::new(n, &Alpha::ratio(1, 5).unwrap()).unwrap();
        for face in HexagonSpec::interior_faces(n) {
            let p = k.face_probabilities(face).unwrap().p;
            assert_eq!(Rational::from(&p[0] + &p[1]) + &p[2], 1, "N={n} {face:?}");
            assert!(p.iter().all(|v| *v >= 0));
        }
    }
}

#[test]
fn diagonal_sums_to_n() {
    for n in 1..=6usize {
        let k = ExactKernel::new(n, &Alpha::ratio(2, 7).unwrap()).unwrap();
        for x in 1..2 * n as i64 {
            assert_eq!(k.expected_height(x, 2 * n as i64).unwrap(), n as i64);
        }
    }
}

#[test]
fn moment_matrices_are_invertible() {
    let alpha = Alpha::ratio(1, 16).unwrap();
    for n in 1..=8 {
        let basis = OrthoBasis::with_degree(n, &alpha, 2 * n).unwrap();
        // det W_n > 0 for n ≤ 2N; det M_n carries the column-reversal sign.
        let lgv = basis.lgv_dets();
        assert!(lgv[..2 * n].iter().all(|d| *d > 0), "N={n}");
        for (i, d) in basis.hankel_dets()[..2 * n].iter().enumerate() {
            let k = i + 1;
            let sign = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(d.cmp0(), (sign * 1i32).cmp(&0));
        }
        assert!(basis.kappas()[..2 * n].iter().all(|k| *k != 0));
    }
}

#[test]
fn reproducing_property() {
    let alpha = Alpha::ratio(1, 3).unwrap();
    for n in 1..=6 {
        let basis = ortho_basis(n, &alpha).unwrap();
        for d in 0..n {
            let coeffs = basis.reproduce_monomial(d);
            let expected: Vec<Rational> = (0..n).map(|j| Rational::from(u8::from(j == d))).collect();
            assert_eq!(coeffs, expected);
        }
    }
}

#[test]
fn cd_kernel_inversion_symmetry() {
    for (p, q) in [(1, 16), (1, 9), (1, 4), (1, 1)] {
        for n in 1..=6 {
            assert!(ortho_basis(n, &Alpha::ratio(p, q).unwrap()).unwrap().cd_inversion_symmetric());
        }
    }
}

#[test]
fn quadrature_matches_exact() {
    let alpha = Alpha::ratio(3, 10).unwrap();
    for n in 1..=4usize {
        let ex = ExactKernel::new(n, &alpha).unwrap();
        let fl = FloatKernel::new(n, &alpha, 64).unwrap();
        let cols = 1..2 * n as i64;
        for x1 in cols.clone() {
            for x2 in cols.clone() {
                for y1 in 0..2 * n as i64 {
                    for y2 in 0..2 * n as i64 {
                        let e = ex.kernel(x1, y1, x2, y2).unwrap().to_f64();
                        let f = fl.kernel(x1, y1, x2, y2).unwrap();
                        assert!((e - f).abs() < 1e-10, "({x1},{y1},{x2},{y2}) {e} {f}");
                    }
                }
            }
        }
        for face in HexagonSpec::interior_faces(n) {
            let e = ex.face_probabilities(face).unwrap().p;
            let f = fl.face_probabilities(face).unwrap();
            for t in 0..3 {
                assert!((e[t].to_f64() - f[t]).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn quadrature_is_stable_at_moderate_n() {
    let alpha = Alpha::ratio(1, 2).unwrap();
    let n = 14;
    let ex = ExactKernel::new(n, &alpha).unwrap();
    let fl = FloatKernel::with_defaults(n, &alpha).unwrap();
    for face in [Face::new(14, 14), Face::new(9, 4), Face::new(20, 22), Face::new(1, 0)] {
        let e = ex.face_probabilities(face).unwrap().p;
        let (f, check) = fl.face_probabilities_checked(face).unwrap();
        assert!(check.converged);
        for t in 0..3 {
            assert!((e[t].to_f64() - f[t]).abs() < 1e-12, "{face:?}");
        }
    }
}

#[test]
fn node_count_is_validated() {
    let alpha = Alpha::one();
    assert!(FloatKernel::new(2, &alpha, 48).is_err());
    assert!(FloatKernel::new(2, &alpha, 100).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integral_symmetries(alpha in alpha_strategy(), n in 1usize..=4) {
        let k = ExactKernel::new(n, &alpha).unwrap();
        let a = alpha.exact();
        let n = n as i64;
        let (mut reflections, mut inversions) = (0, 0);
        for face in HexagonSpec::interior_faces(n as usize) {
            let (x, y) = (face.x, face.y);
            for t in LozengeType::ALL {
                for even in [true, false] {
                    let h = SplitH::lozenge(t, even, a);
                    let odd = x % 2 == 1;
                    let hat = if odd { h.swapped().odd_factor() } else { h.swapped() };
                    if let (Ok(lhs), Ok(rhs)) = (k.integral(2 * n - x, 2 * n - y, &h), k.integral(x, y, &hat)) {
                        prop_assert_eq!(lhs, rhs, "reflection at ({}, {})", x, y);
                        reflections += 1;
                    }
                    let inv = h.inverted(a);
                    let tilde = if odd { inv.odd_factor() } else { inv };
                    if let (Ok(lhs), Ok(rhs)) = (k.integral(x, n + x - y, &h), k.integral(x, y, &tilde)) {
                        prop_assert_eq!(lhs, rhs, "inversion at ({}, {})", x, y);
                        inversions += 1;
                    }
                }
            }
        }
        prop_assert!(reflections > 0 && inversions > 0);
    }

    #[test]
    fn laurent_product_evaluates(alpha in alpha_strategy(), a in 0u32..5, b in 0u32..5, s in -4i64..4) {
        let f = LaurentSeries::weight_factor(alpha.exact(), a, b, s);
        let z = Rational::from((3, 7));
        let direct = f.eval(&z);
        let one = Rational::from(&z + 1);
        let za = Rational::from(&z + alpha.exact());
        let mut expected = Rational::from(1);
        for _ in 0..a { expected *= &one; }
        for _ in 0..b { expected *= &za; }
        let zs = hexatile_exact::LaurentSeries::monomial(s, Rational::from(1)).eval(&z);
        prop_assert_eq!(direct, expected * zs);
    }
}
