use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use coxtop_core::complexes::{davis_chamber, metric_flag_check, relative_cohomology_in, FaceSet};
use coxtop_core::coxeter::{
    cosine_gram_definite, enumerate_ball, enumerate_group, is_spherical, spherical_poset, CoxeterMatrix, GenSet, Order,
};
use coxtop_core::hc::thin_multiplicity_series;
use coxtop_core::linalg::{direct_complement, quotient_structure, smith_normal_form};
use coxtop_core::{GradedAbelianGroup, IntMatrix, SubmoduleBasis};

const ORDERS: [Order; 6] =
    [Order::Finite(2), Order::Finite(3), Order::Finite(4), Order::Finite(5), Order::Finite(6), Order::Infinite];

fn coxeter_matrix(max_rank: usize) -> impl Strategy<Value = CoxeterMatrix> {
    (1..=max_rank).prop_flat_map(|rank| {
        let pairs = rank * (rank - 1) / 2;
        proptest::collection::vec(0..ORDERS.len(), pairs).prop_map(move |codes| {
            let labels = (0..rank).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let mut m = CoxeterMatrix::commuting(labels).unwrap();
            let mut k = 0;
            for i in 0..rank {
                for j in i + 1..rank {
                    m.set(i, j, ORDERS[codes[k]]).unwrap();
                    k += 1;
                }
            }
            m
        })
    })
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-5i64..=5, rows * cols)
        .prop_map(move |v| IntMatrix::from_rows(&v.chunks(cols).map(<[i64]>::to_vec).collect::<Vec<_>>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_agrees_with_gram(m in coxeter_matrix(5)) {
        for t in m.all().subsets() {
            prop_assert_eq!(is_spherical(&m, t), cosine_gram_definite(&m, t).unwrap(), "{}", m.format_subset(t));
        }
        prop_assert!(metric_flag_check(&m).unwrap());
    }

    #[test]
    fn poset_is_downward_closed(m in coxeter_matrix(5)) {
        let p = spherical_poset(&m);
        prop_assert!(p.contains(GenSet::EMPTY));
        for &t in p.members() {
            for u in t.subsets() {
                prop_assert!(p.contains(u));
            }
        }
    }

    #[test]
    fn descent_classes_partition_the_group(m in coxeter_matrix(4)) {
        for &t in spherical_poset(&m).members() {
            let table = enumerate_group(&m, t).unwrap();
            let total: usize = t.subsets().into_iter().map(|u| table.descent_class_size(u)).sum();
            prop_assert_eq!(total, table.len());
        }
    }

    #[test]
    fn lengths_are_subadditive(m in coxeter_matrix(3)) {
        let p = spherical_poset(&m);
        let t = *p.members().last().unwrap();
        let table = enumerate_group(&m, t).unwrap();
        let n = table.len().min(40);
        for u in 0..n {
            for v in 0..n {
                let uv = table.mul(u, v);
                prop_assert!(table.element(uv).length <= table.element(u).length + table.element(v).length);
            }
            prop_assert_eq!(table.mul(u, table.inverse(u)), table.identity());
        }
    }

    #[test]
    fn ball_descents_are_spherical_and_series_sum(m in coxeter_matrix(4)) {
        let radius = 5;
        let ball = enumerate_ball(&m, radius).unwrap();
        let p = spherical_poset(&m);
        for e in ball.elements() {
            prop_assert!(p.contains(e.descent));
        }
        let mut sum = vec![0; radius + 1];
        for &t in p.members() {
            let s = thin_multiplicity_series(&m, t, radius).unwrap();
            for (acc, x) in sum.iter_mut().zip(s.coefficients) {
                *acc += x;
            }
        }
        prop_assert_eq!(sum, ball.counts_per_length());
    }

    #[test]
    fn davis_chamber_is_acyclic(m in coxeter_matrix(4)) {
        let k = davis_chamber(&m);
        let h = relative_cohomology_in(k.complex(), &FaceSet::none(k.complex())).unwrap();
        prop_assert_eq!(h, GradedAbelianGroup::from_free_ranks(&[1]));
    }

    #[test]
    fn mirror_unions_are_monotone(m in coxeter_matrix(4)) {
        let k = davis_chamber(&m);
        for t in m.all().subsets() {
            for u in m.all().subsets().into_iter().filter(|u| t.is_subset(*u)) {
                prop_assert!(k.mirror_union(t).is_subset(&k.mirror_union(u)));
                prop_assert!(k.mirror_intersection(u).is_subset(&k.mirror_intersection(t)));
            }
        }
    }

    #[test]
    fn smith_normal_form_witnesses(a in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| int_matrix(r, c))) {
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
        prop_assert!(snf.u.determinant().abs().is_one());
        prop_assert!(snf.v.determinant().abs().is_one());
        prop_assert_eq!(snf.u.mul(&snf.u_inv), IntMatrix::identity(a.rows()));
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn complements_are_unimodular(a in (1usize..=4, 0usize..=3).prop_flat_map(|(n, k)| int_matrix(k, n))) {
        let n = a.cols();
        let gens: Vec<Vec<BigInt>> = a.to_rows();
        let q = quotient_structure(n, &gens);
        let rational_rank = smith_normal_form(&a).rank();
        prop_assert_eq!(q.rank(), Some(n - rational_rank));
        if let Ok(c) = direct_complement(n, &gens) {
            let b = SubmoduleBasis::span(n, &gens);
            let square = b.matrix().hcat(&c.matrix());
            prop_assert_eq!(square.rows(), square.cols());
            prop_assert!(square.determinant().abs().is_one());
        } else {
            prop_assert!(!q.is_free());
        }
    }
}
