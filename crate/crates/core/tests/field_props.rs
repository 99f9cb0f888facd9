mod common;

use common::*;
use evolaut_core::field::{cube_roots_of_unity, FieldCtx, Scalar};
use evolaut_core::matrix::{det, Matrix};
use proptest::prelude::*;

fn fields() -> Vec<FieldCtx> {
    vec![
        FieldCtx::Rational,
        FieldCtx::Cyclotomic,
        FieldCtx::prime(2).unwrap(),
        FieldCtx::prime(7).unwrap(),
        FieldCtx::prime(13).unwrap(),
        FieldCtx::prime(2_147_483_647).unwrap(),
    ]
}

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop::sample::select(fields())
        .prop_flat_map(|c| (scalar_strategy(c), scalar_strategy(c), scalar_strategy(c)))
}

proptest! {
    #[test]
    fn field_axioms((a, b, c) in triple()) {
        let ctx = a.ctx();
        let zero = Scalar::zero(ctx);
        let one = Scalar::one(ctx);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(b.checked_div(&a).unwrap().checked_mul(&a).unwrap(), b.clone());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn render_then_parse_is_identity((a, _, _) in triple()) {
        prop_assert_eq!(Scalar::parse(&a.to_string(), a.ctx()).unwrap(), a);
    }

    #[test]
    fn pow_matches_repeated_multiplication((a, _, _) in triple(), e in 0u64..9) {
        let mut acc = Scalar::one(a.ctx());
        for _ in 0..e {
            acc = &acc * &a;
        }
        prop_assert_eq!(a.pow(e), acc);
    }

    #[test]
    fn determinant_matches_cofactor_expansion_over_f5(
        n in 1usize..=4,
        entries in prop::collection::vec(0u64..5, 16),
    ) {
        let ctx = FieldCtx::prime(5).unwrap();
        let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| entries[i * 4 + j] as i64).collect()).collect();
        fn cofactor(m: &[Vec<i64>]) -> i64 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * cofactor(&minor)
                })
                .sum()
        }
        let rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.iter().map(|&x| Scalar::from_int(ctx, x)).collect()).collect();
        prop_assert_eq!(det(&rows).unwrap(), Scalar::from_int(ctx, cofactor(&m).rem_euclid(5)));
        let rank_full = Matrix::from_rows(ctx, rows).unwrap().rank() == n;
        prop_assert_eq!(rank_full, cofactor(&m).rem_euclid(5) != 0);
    }

    #[test]
    fn rational_determinant_matches_cofactor(entries in prop::collection::vec(-6i64..6, 9)) {
        let m: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let expected = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        for ctx in [FieldCtx::Rational, FieldCtx::Cyclotomic] {
            let rows: Vec<Vec<Scalar>> = m.iter().map(|r| r.iter().map(|&x| Scalar::from_int(ctx, x)).collect()).collect();
            prop_assert_eq!(det(&rows).unwrap(), Scalar::from_int(ctx, expected));
        }
    }
}

#[test]
fn cube_roots_satisfy_their_relations() {
    for p in [2u64, 3, 5, 7, 11, 13, 19, 31, 37, 43, 2_147_483_647] {
        let ctx = FieldCtx::prime(p).unwrap();
        let roots = cube_roots_of_unity(ctx);
        let expected = if p % 3 == 1 { 3 } else { 1 };
        assert_eq!(roots.len(), expected, "p = {p}");
        check_roots(&roots);
    }
    check_roots(&cube_roots_of_unity(FieldCtx::Cyclotomic));
    assert_eq!(cube_roots_of_unity(FieldCtx::Rational).len(), 1);
    let f7: Vec<String> = cube_roots_of_unity(FieldCtx::prime(7).unwrap())
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(f7, ["1", "2", "4"]);
    assert_eq!(
        cube_roots_of_unity(FieldCtx::Cyclotomic),
        vec![cyc_int(1), w(), w2()]
    );
}

fn check_roots(roots: &[Scalar]) {
    for r in roots {
        assert!(r.pow(3).is_one());
    }
    if let [one, a, b] = roots {
        assert!(one.is_one());
        assert!(!a.is_one() && !b.is_one() && a != b);
        assert_eq!(&a.square(), b);
        assert!((a * b).is_one());
        assert!((&(one + a) + b).is_zero());
    }
}

#[test]
fn rendering_examples() {
    assert_eq!(w().to_string(), "0+1*w");
    assert_eq!(w2().to_string(), "-1-1*w");
    assert_eq!(
        Scalar::parse("-3/6", FieldCtx::Rational)
            .unwrap()
            .to_string(),
        "-1/2"
    );
    assert_eq!(
        Scalar::parse("2*w^2", FieldCtx::Cyclotomic)
            .unwrap()
            .to_string(),
        "-2-2*w"
    );
    assert!(Scalar::parse("7", FieldCtx::prime(7).unwrap()).is_err());
    assert!(Scalar::parse("1/0", FieldCtx::Rational).is_err());
    assert!(Scalar::parse("", FieldCtx::Cyclotomic).is_err());
}

#[test]
fn mixed_fields_are_rejected() {
    let a = Scalar::one(FieldCtx::Rational);
    let b = Scalar::one(FieldCtx::Cyclotomic);
    assert!(a.checked_add(&b).is_err());
    assert!(a
        .checked_mul(&Scalar::one(FieldCtx::prime(5).unwrap()))
        .is_err());
}

#[test]
fn field_specs_round_trip() {
    for s in ["q", "qw", "fp:7", "fp:2147483647"] {
        assert_eq!(s.parse::<FieldCtx>().unwrap().to_string(), s);
    }
    for bad in ["fp:1", "fp:9", "fp:4294967311", "r", "fp:"] {
        assert!(bad.parse::<FieldCtx>().is_err(), "{bad}");
    }
}
