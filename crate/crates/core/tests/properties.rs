//! Property tests for the algebraic invariants of the scalar field, matrices,
//! the superoperator representation and the nilpotency criteria.

use elemop::elemop::{
    eq1_identity_residual, fong_sourour_check, thm21_criterion, thm22_check, thm23_check,
    ElementaryOperator, Term,
};
use elemop::lab::{Generator, GeneratorConfig};
use elemop::linalg::{char_poly, is_nilpotent, GaussianRational, Matrix, Polynomial};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(n, d, m, e)| GaussianRational::from_parts(n, d, m, e))
}

/// Entries kept small so that products of several matrices stay cheap.
fn entry() -> impl Strategy<Value = GaussianRational> {
    prop_oneof![
        3 => (-3i64..=3).prop_map(GaussianRational::from),
        1 => (-2i64..=2, 1i64..=2, -1i64..=1).prop_map(|(n, d, m)| GaussianRational::from_parts(n, d, m, 1)),
    ]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(entry(), rows * cols)
        .prop_map(move |e| Matrix::new(rows, cols, e).unwrap())
}

fn square(n: usize) -> impl Strategy<Value = Matrix> {
    matrix(n, n)
}

/// `S·U·S⁻¹` with `U` strictly upper triangular and `S = I + c·E_ij`, whose
/// inverse is `I − c·E_ij`.
fn nilpotent(n: usize) -> impl Strategy<Value = Matrix> {
    (
        proptest::collection::vec(-3i64..=3, n * n),
        0..n,
        0..n,
        -2i64..=2,
    )
        .prop_map(move |(raw, i, j, c)| {
            let u: Vec<Vec<GaussianRational>> = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|s| if s > r { raw[r * n + s].into() } else { GaussianRational::zero() })
                        .collect()
                })
                .collect();
            let u = Matrix::from_rows(u).unwrap();
            if i == j {
                return u;
            }
            let e = Matrix::unit(n, i, j).scale(&c.into());
            let s = Matrix::identity(n).checked_add(&e).unwrap();
            let s_inv = Matrix::identity(n).checked_sub(&e).unwrap();
            s.checked_mul(&u).unwrap().checked_mul(&s_inv).unwrap()
        })
}

fn operator(n: usize, max_len: usize) -> impl Strategy<Value = ElementaryOperator> {
    proptest::collection::vec((square(n), square(n)), 1..=max_len).prop_map(move |pairs| {
        let terms = pairs.into_iter().map(|(a, b)| Term::new(a, b)).collect();
        ElementaryOperator::new(n, terms).unwrap()
    })
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.checked_mul(b).unwrap()
}

fn naive_pow(m: &Matrix, k: u32) -> Matrix {
    (0..k).fold(Matrix::identity(m.rows()), |acc, _| mul(&acc, m))
}

proptest! {
    #[test]
    fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * GaussianRational::one(), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * a.inv().unwrap()).is_one());
            prop_assert_eq!((&b / &a) * &a, b.clone());
        } else {
            prop_assert!(a.inv().is_err());
        }
        prop_assert_eq!(&a * a.conj(), GaussianRational::real(a.norm_sqr()));
    }

    #[test]
    fn scalar_representation_is_canonical(n in -20i64..=20, d in 1i64..=9, m in -20i64..=20, e in 1i64..=9, k in 1i64..=7) {
        let x = GaussianRational::from_parts(n, d, m, e);
        let y = GaussianRational::from_parts(n * k, d * k, -m * k, e * k).conj();
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(x.to_string(), y.to_string());
        let parsed: GaussianRational = x.to_string().parse().unwrap();
        prop_assert_eq!(&parsed, &x);
        prop_assert_eq!(parsed.to_string(), x.to_string());
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<GaussianRational>(&json).unwrap(), x);
    }

    #[test]
    fn kron_mixed_product(
        (a, c) in (1usize..=2, 1usize..=2, 1usize..=2).prop_flat_map(|(p, q, r)| (matrix(p, q), matrix(q, r))),
        (b, d) in (1usize..=2, 1usize..=2, 1usize..=2).prop_flat_map(|(p, q, r)| (matrix(p, q), matrix(q, r))),
    ) {
        let lhs = mul(&a.kron(&b), &c.kron(&d));
        let rhs = mul(&a, &c).kron(&mul(&b, &d));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vectorization_identity(
        (a, x, b) in (1usize..=3, 1usize..=3, 1usize..=3, 1usize..=3)
            .prop_flat_map(|(p, q, r, s)| (matrix(p, q), matrix(q, r), matrix(r, s))),
    ) {
        let axb = mul(&mul(&a, &x), &b);
        prop_assert_eq!(mul(&b.transpose().kron(&a), &x.vec()), axb.vec());
        prop_assert_eq!(Matrix::unvec(&x.vec(), x.rows(), x.cols()).unwrap(), x);
    }

    #[test]
    fn nilpotency_report_consistency(m in (1usize..=4).prop_flat_map(|n| prop_oneof![square(n), nilpotent(n)])) {
        let n = m.rows();
        let report = is_nilpotent(&m).unwrap();
        if report.nilpotent {
            let k = report.index.unwrap();
            prop_assert!(k >= 1 && k as usize <= n);
            prop_assert!(naive_pow(&m, k).is_zero());
            if k == 1 {
                prop_assert!(m.is_zero() && report.witness.is_none());
            } else {
                let before = naive_pow(&m, k - 1);
                let w = report.witness.unwrap();
                let (r, c, v) = before.first_nonzero().unwrap();
                prop_assert_eq!((w.row, w.col, &w.value), (r, c, v));
            }
            prop_assert!(m.trace().unwrap().is_zero());
            prop_assert_eq!(char_poly(&m).unwrap(), Polynomial::monomial(n));
        } else {
            prop_assert!(report.index.is_none() && report.witness.is_none());
            prop_assert!(!naive_pow(&m, n as u32).is_zero());
            prop_assert_ne!(char_poly(&m).unwrap(), Polynomial::monomial(n));
        }
    }

    #[test]
    fn generated_nilpotents_are_nilpotent(m in (1usize..=4).prop_flat_map(nilpotent)) {
        prop_assert!(is_nilpotent(&m).unwrap().nilpotent);
    }

    #[test]
    fn char_poly_annihilates(m in (1usize..=3).prop_flat_map(square)) {
        let p = char_poly(&m).unwrap();
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), Some(m.rows()));
        prop_assert!(p.eval_matrix(&m).unwrap().is_zero());
        let n = m.rows();
        let sub = &p.coeffs()[n - 1];
        prop_assert_eq!(sub, &-m.trace().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn superoperator_is_faithful(
        (op, x) in (1usize..=3).prop_flat_map(|n| (operator(n, 3), square(n))),
    ) {
        let n = op.dim();
        let s = op.superoperator();
        prop_assert_eq!(s.shape(), (n * n, n * n));
        let direct = op.apply(&x).unwrap();
        let via_super = Matrix::unvec(&mul(&s, &x.vec()), n, n).unwrap();
        prop_assert_eq!(&direct, &via_super);
        let by_terms = op.terms().iter().fold(Matrix::zeros(n, n), |acc, t| {
            acc.checked_add(&mul(&mul(&t.a, &x), &t.b)).unwrap()
        });
        prop_assert_eq!(direct, by_terms);
    }

    #[test]
    fn superoperator_is_a_homomorphism(
        (p, q, x) in (1usize..=3).prop_flat_map(|n| (operator(n, 3), operator(n, 2), square(n))),
        c in scalar(),
    ) {
        let (sp, sq) = (p.superoperator(), q.superoperator());
        prop_assert_eq!(p.add(&q).unwrap().superoperator(), sp.checked_add(&sq).unwrap());
        prop_assert_eq!(p.sub(&q).unwrap().superoperator(), sp.checked_sub(&sq).unwrap());
        let pq = p.compose(&q).unwrap();
        prop_assert_eq!(pq.len(), p.len() * q.len());
        prop_assert_eq!(pq.superoperator(), mul(&sp, &sq));
        prop_assert_eq!(pq.apply(&x).unwrap(), p.apply(&q.apply(&x).unwrap()).unwrap());
        prop_assert_eq!(p.scale(&c).superoperator(), sp.scale(&c));
        prop_assert_eq!(p.power(2).superoperator(), mul(&sp, &sp));
        prop_assert_eq!(p.power(0).superoperator(), Matrix::identity(p.dim() * p.dim()));
        prop_assert!(p.sub(&p).unwrap().is_zero_map());
        prop_assert!(p.add(&q).unwrap().equals(&q.add(&p).unwrap()).unwrap());
    }

    #[test]
    fn operator_nilpotency_index_bounded(
        (a, b) in (1usize..=3).prop_flat_map(|n| (nilpotent(n), square(n))),
        swap in any::<bool>(),
    ) {
        let n = a.rows();
        let op = if swap {
            ElementaryOperator::multiplication(&b, &a).unwrap()
        } else {
            ElementaryOperator::multiplication(&a, &b).unwrap()
        };
        let report = op.is_nilpotent().unwrap();
        prop_assert!(report.nilpotent);
        let k = report.index.unwrap();
        prop_assert!(k as usize <= n * n);
        prop_assert!(op.power(k).is_zero_map());
    }

    #[test]
    fn shift_identity_residual_vanishes(
        (a, b) in (1usize..=3).prop_flat_map(|n| (square(n), square(n))),
        lambda in scalar(),
        mu in scalar(),
    ) {
        prop_assert!(eq1_identity_residual(&a, &b, &lambda, &mu).unwrap().is_zero_map());
    }

    #[test]
    fn multiplication_criterion_is_biconditional(
        (a, b) in (1usize..=3).prop_flat_map(|n| {
            let m = prop_oneof![square(n), nilpotent(n)];
            (m.clone(), m)
        }),
    ) {
        let r = thm21_criterion(&a, &b).unwrap();
        prop_assert!(r.consistent);
        let either = is_nilpotent(&a).unwrap().nilpotent || is_nilpotent(&b).unwrap().nilpotent;
        prop_assert_eq!(r.hypotheses_hold, either);
        prop_assert_eq!(r.conclusion_nilpotent.nilpotent, either);
        prop_assert_eq!(
            ElementaryOperator::multiplication(&a, &b).unwrap().is_nilpotent().unwrap().nilpotent,
            either
        );
    }

    #[test]
    fn commuting_families_imply_nilpotency(
        dim in 1usize..=3,
        seed in any::<u64>(),
        flags_a in proptest::collection::vec(any::<bool>(), 1..=3),
        flags_b in proptest::collection::vec(any::<bool>(), 3),
    ) {
        let len = flags_a.len();
        let mut g = Generator::new(GeneratorConfig::new(dim, seed)).unwrap();
        let (seed_a, seed_b) = (g.gen_nilpotent(), g.gen_nilpotent());
        // Per index, at least one of A_i, B_i is flagged nilpotent.
        let flags_b: Vec<bool> = (0..len).map(|i| flags_b[i] || !flags_a[i]).collect();
        let a = g.gen_commuting_tuple(&seed_a, &flags_a).unwrap();
        let b = g.gen_commuting_tuple(&seed_b, &flags_b[..len]).unwrap();
        for i in 0..len {
            for j in 0..len {
                prop_assert!(a[i].commutes_with(&a[j]).unwrap());
                prop_assert!(b[i].commutes_with(&b[j]).unwrap());
            }
        }
        let r = thm22_check(&a, &b).unwrap();
        prop_assert!(r.hypotheses_hold, "{:?}", r.hypothesis_failures);
        prop_assert!(r.conclusion_nilpotent.nilpotent);
        prop_assert!(r.consistent);
    }

    #[test]
    fn scalar_shifts_recover_and_imply_nilpotency(
        (n1, x, y) in (1usize..=3).prop_flat_map(|n| (nilpotent(n), square(n), square(n))),
        lambda in scalar(),
        mu in scalar(),
    ) {
        let d = n1.rows();
        // Polynomials in a common nilpotent commute and stay nilpotent.
        let n2 = mul(&n1, &n1).checked_add(&n1.scale(&GaussianRational::from(2))).unwrap();
        let a = Matrix::scalar(d, lambda.clone()).checked_add(&n1).unwrap();
        let b = Matrix::scalar(d, mu.clone()).checked_add(&n2).unwrap();
        let out = thm23_check(&a, &b).unwrap();
        prop_assert!(out.result.hypotheses_hold);
        prop_assert!(out.result.conclusion_nilpotent.nilpotent);
        prop_assert!(out.result.consistent);
        prop_assert_eq!(out.lambda, Some(lambda));
        prop_assert_eq!(out.mu, Some(mu));
        // Without hypotheses nothing is asserted beyond the implication.
        let free = thm23_check(&x, &y).unwrap();
        prop_assert!(free.result.consistent);
    }

    #[test]
    fn common_shift_criterion(
        (n1, n2, s, t) in (1usize..=3).prop_flat_map(|n| (nilpotent(n), nilpotent(n), square(n), square(n))),
        lambda in scalar(),
        delta in scalar(),
    ) {
        let d = n1.rows();
        let shifted = |c: &GaussianRational, n: &Matrix| Matrix::scalar(d, c.clone()).checked_add(n).unwrap();
        let same = fong_sourour_check(&shifted(&lambda, &n1), &shifted(&lambda, &n2)).unwrap();
        prop_assert!(same.result.hypotheses_hold && same.result.conclusion_nilpotent.nilpotent);
        prop_assert_eq!(same.lambda, Some(lambda.clone()));
        let other = &lambda + &delta;
        let apart = fong_sourour_check(&shifted(&lambda, &n1), &shifted(&other, &n2)).unwrap();
        prop_assert_eq!(apart.result.conclusion_nilpotent.nilpotent, delta.is_zero());
        let free = fong_sourour_check(&s, &t).unwrap();
        prop_assert_eq!(free.result.hypotheses_hold, free.result.conclusion_nilpotent.nilpotent);
    }

    #[test]
    fn json_round_trips(op in (1usize..=3).prop_flat_map(|n| operator(n, 3))) {
        let text = serde_json::to_string(&op).unwrap();
        let back: ElementaryOperator = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert!(back.equals(&op).unwrap());
        let m = &op.terms()[0].a;
        let mtext = serde_json::to_string(m).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Matrix>(&mtext).unwrap(), m);
        let report = op.is_nilpotent().unwrap();
        let rtext = serde_json::to_string(&report).unwrap();
        prop_assert_eq!(
            serde_json::to_string(&serde_json::from_str::<elemop::NilpotencyReport>(&rtext).unwrap()).unwrap(),
            rtext
        );
    }
}
