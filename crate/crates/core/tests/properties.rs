use chi_lie::chi_construct::{compute_chi, default_max_class};
use chi_lie::exact_linalg::{format_rational, parse_rational, ratio, Matrix, Subspace, Vector};
use chi_lie::free_lie::{BracketExpr, FreeNilpotentAlgebra};
use chi_lie::homology::{boundary2, boundary3, h2_ce, schur_via_exterior};
use chi_lie::LieAlgebra;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = chi_lie::Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(small_rational(), r * c).prop_map(move |entries| {
            let rows: Vec<Vector> = entries.chunks(c).map(|ch| ch.to_vec()).collect();
            Matrix::from_rows(c, &rows)
        })
    })
}

fn vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec(small_rational(), n), 0..=max)
}

/// Two-step nilpotent algebras: `[e_i, e_j]` lands in the last `k` basis
/// vectors, which are central. Jacobi holds automatically.
fn two_step(max_gens: usize) -> impl Strategy<Value = LieAlgebra> {
    (2..=max_gens, 1..=2usize).prop_flat_map(|(m, k)| {
        let pairs = m * (m - 1) / 2;
        prop::collection::vec(prop::collection::vec(-2i64..=2, k), pairs).prop_map(move |coeffs| {
            let n = m + k;
            let mut brackets = Vec::new();
            let mut p = 0;
            for i in 0..m {
                for j in i + 1..m {
                    let terms: Vec<_> = coeffs[p]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(t, &c)| (m + t, ratio(c, 1)))
                        .collect();
                    brackets.push(((i, j), terms));
                    p += 1;
                }
            }
            let labels = (0..n).map(|i| format!("e{i}")).collect();
            LieAlgebra::new("two_step", labels, brackets).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in matrix(5, 6)) {
        let (r, piv) = m.rref();
        let (r2, piv2) = r.rref();
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(piv, piv2);
    }

    #[test]
    fn kernel_is_exact(m in matrix(5, 6)) {
        let k = m.kernel();
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn sum_and_intersection_dimensions(a in vectors(5, 4), b in vectors(5, 4)) {
        let (sa, sb) = (Subspace::span(5, &a), Subspace::span(5, &b));
        let sum = sa.sum(&sb).unwrap();
        let meet = sa.intersect(&sb).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), sa.dim() + sb.dim());
        prop_assert!(sa.contains_subspace(&meet) && sb.contains_subspace(&meet));
        prop_assert!(sum.contains_subspace(&sa) && sum.contains_subspace(&sb));
    }

    #[test]
    fn rational_strings_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = ratio(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn rational_arithmetic_is_exact(n in -50i64..50, d in 1i64..50) {
        let r = ratio(n, d);
        let third = ratio(1, 3);
        prop_assert_eq!((&r + &third) - &third, r.clone());
        prop_assert_eq!(&r * &ratio(d, 1), ratio(n, 1));
    }

    #[test]
    fn normal_form_is_antisymmetric(a in 0usize..8, b in 0usize..8) {
        let f = FreeNilpotentAlgebra::build(3, 3).unwrap();
        let (u, v) = (f.algebra().basis_vector(a), f.algebra().basis_vector(b));
        let uv = f.normal_form(&u, &v).unwrap();
        let vu = f.normal_form(&v, &u).unwrap();
        prop_assert!(uv.iter().zip(&vu).all(|(x, y)| x == &-y.clone()));
    }

    #[test]
    fn bracket_expr_json_round_trips(i in 0usize..3, j in 0usize..3, c in small_rational()) {
        let e = BracketExpr::sum(vec![
            BracketExpr::br(BracketExpr::gen(i), BracketExpr::gen(j)),
            BracketExpr::scale(c, BracketExpr::gen(j)),
        ]);
        let s = serde_json::to_string(&e).unwrap();
        prop_assert_eq!(serde_json::from_str::<BracketExpr>(&s).unwrap(), e);
    }

    #[test]
    fn chain_complex_and_exterior_agree(g in two_step(4)) {
        let prod = boundary2(&g).mul(&boundary3(&g)).unwrap();
        prop_assert!(prod.row_vectors().iter().flatten().all(num_traits::Zero::is_zero));
        prop_assert_eq!(h2_ce(&g).dim, schur_via_exterior(&g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn w_over_r_matches_h2_on_two_step_algebras(g in two_step(3)) {
        let c = compute_chi(&g, default_max_class(&g).unwrap()).unwrap();
        prop_assert_eq!(c.w.dim() - c.r.dim(), h2_ce(&g).dim);
        prop_assert!(c.w.contains_subspace(&c.r));
    }
}
