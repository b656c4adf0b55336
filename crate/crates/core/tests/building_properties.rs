use proptest::prelude::*;

use coxtop_core::chamber::{
    digon_building, product_building, projective_plane_building, thin_building, verify_building, w_distance,
};
use coxtop_core::complexes::{classical_chamber, davis_chamber};
use coxtop_core::coxeter::{enumerate_group, spherical_poset, CoxeterMatrix, GenSet};
use coxtop_core::decomposition::{coefficient_cohomology, EmptyFace};
use coxtop_core::hc::{duality_check, hc_standard_realization, vcd};
use coxtop_core::realization::{formula_cross_check, formula_side, realize};
use coxtop_core::{ChamberSystem, GroupEntry, ModuleFamily, Rank, Thickness};

/// The same chamber system with generators renamed.
fn relabel(phi: &ChamberSystem, labels: &[&str]) -> ChamberSystem {
    let old = phi.matrix();
    let mut m = CoxeterMatrix::commuting(labels.iter().map(|s| s.to_string()).collect()).unwrap();
    for i in 0..old.rank() {
        for j in i + 1..old.rank() {
            m.set(i, j, old.m(i, j)).unwrap();
        }
    }
    let n = phi.num_chambers();
    let ids = (0..phi.rank()).map(|s| (0..n).map(|c| phi.panel_of(s, c)).collect()).collect();
    ChamberSystem::from_panel_ids(m, n, ids)
}

fn thin(text: &str) -> ChamberSystem {
    let m = CoxeterMatrix::parse(text).unwrap();
    thin_building(&m, m.all()).unwrap()
}

/// Rank-one and rank-two pieces to multiply together.
fn piece() -> impl Strategy<Value = ChamberSystem> {
    prop_oneof![
        (2usize..=4, 2usize..=4).prop_map(|(p, q)| digon_building(p, q).unwrap()),
        Just(projective_plane_building(2).unwrap()),
        Just(thin("gens s t\ns t 3")),
        Just(thin("gens s t\ns t 4")),
        Just(thin("gens s t\ns t 5")),
    ]
}

fn single_panel(size: usize) -> ChamberSystem {
    let m = CoxeterMatrix::parse("gens u").unwrap();
    ChamberSystem::from_partitions(m, size, &[vec![(0..size).collect()]]).unwrap()
}

/// A rank-two piece, optionally times one thick or thin panel.
fn building() -> impl Strategy<Value = ChamberSystem> {
    (piece(), prop::option::of(2usize..=3)).prop_map(|(a, extra)| match extra {
        None => a,
        Some(k) => product_building(&relabel(&a, &["a", "b"]), &single_panel(k)).unwrap(),
    })
}

fn rank_two_triple() -> impl Strategy<Value = ChamberSystem> {
    (piece(), 2usize..=3).prop_map(|(a, k)| product_building(&single_panel(k), &relabel(&a, &["a", "b"])).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructors_give_buildings(phi in building()) {
        let r = verify_building(&phi);
        prop_assert!(r.pass, "{r:?}");
        for s in 0..phi.rank() {
            let sizes = phi.panel_sizes(s);
            prop_assert!(sizes.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn residues_refine(phi in building()) {
        let all = phi.matrix().all();
        for t in all.subsets() {
            let small = phi.residue_ids(t);
            for u in all.subsets().into_iter().filter(|u| t.is_subset(*u)) {
                let big = phi.residue_ids(u);
                for a in 0..small.len() {
                    for b in a + 1..small.len() {
                        if small[a] == small[b] {
                            prop_assert_eq!(big[a], big[b]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn distances_invert(phi in building()) {
        let m = phi.matrix();
        let table = enumerate_group(m, m.all()).unwrap();
        let n = phi.num_chambers().min(12);
        for a in 0..n {
            for b in 0..n {
                let ab = w_distance(&phi, &table, a, b).unwrap();
                let ba = w_distance(&phi, &table, b, a).unwrap();
                prop_assert_eq!(table.inverse(ab), ba);
            }
        }
    }

    #[test]
    fn decomposition_splits(phi in building()) {
        let mut fam = ModuleFamily::new(&phi);
        let members = fam.poset().members().to_vec();
        for &t in &members {
            let w = fam.verify_decomposition(t).unwrap();
            prop_assert!(w.pass, "determinant {} at {}", w.determinant, w.base);
            prop_assert!(fam.d_quotient(t).is_free());
        }
        let total: usize = fam.d_ranks().unwrap().values().sum();
        prop_assert_eq!(total, phi.num_chambers());
        // A^U ⊆ A^T for T ⊆ U
        for &t in &members {
            for &u in members.iter().filter(|u| t.is_subset(**u)) {
                let small = fam.residue_module(u).basis.clone();
                prop_assert!(fam.residue_module(t).basis.contains_module(&small));
            }
        }
    }

    #[test]
    fn simplex_cohomology_is_top_and_free(phi in building()) {
        let x = classical_chamber(phi.matrix());
        let h = coefficient_cohomology(&phi, &x, &x.mirror_union(GenSet::EMPTY), EmptyFace::Counted).unwrap();
        let top = x.complex().dim();
        prop_assert!(h.is_concentrated_in(top), "{}", h);
        prop_assert_eq!(h.get(top), ModuleFamily::new(&phi).d_quotient(GenSet::EMPTY));
    }

    #[test]
    fn realizations_match_the_formula(phi in building()) {
        for x in [classical_chamber(phi.matrix()), davis_chamber(phi.matrix())] {
            let r = formula_cross_check(&phi, &x).unwrap();
            prop_assert!(r.pass, "realized {} formula {}", r.realized, r.formula);
            prop_assert!(r.euler_agrees);
            let realized = realize(&phi, &x).unwrap();
            let mut expected = vec![0; x.complex().dim() as usize + 1];
            for i in 0..x.complex().len() {
                expected[x.complex().face_dim(i)] += phi.num_residues(x.label(i));
            }
            prop_assert_eq!(realized.complex.f_vector(), expected);
        }
    }

    #[test]
    fn hc_report_matches_formula(phi in rank_two_triple()) {
        let report = hc_standard_realization(phi.matrix(), &Thickness::Building(phi.clone())).unwrap();
        let (formula, _) = formula_side(&phi, &davis_chamber(phi.matrix())).unwrap();
        prop_assert_eq!(report.totals(), formula);
    }
}

const INFINITE: &[&str] = &[
    "gens s t\ns t inf",
    "gens s t u\ns t inf\nt u inf\ns u inf",
    "gens a b c\na b 3\nb c 3\na c 3",
    "gens a b c\na b 4\nb c 4",
    "gens a b c\na b 2\nb c 2\na c inf",
    "gens a b c d\na b 2\nb c 2\nc d 2\nd a 2\na c inf\nb d inf",
    "gens a b c d\na b 3\nb c 3\na c 3\na d inf\nb d inf\nc d inf",
    "gens a b c\na b 3\nb c 7\na c 2",
    "gens a b c\na b 5\nb c 3\na c inf",
];

#[test]
fn vcd_is_the_top_compact_degree() {
    for text in INFINITE {
        let m = CoxeterMatrix::parse(text).unwrap();
        let hc = hc_standard_realization(&m, &Thickness::Thin).unwrap();
        let v = vcd(&m);
        assert!(!v.group_finite);
        assert_eq!(hc.totals().top_degree(), Some(v.vcd), "{text}");
    }
}

#[test]
fn duality_means_one_free_degree() {
    for text in INFINITE {
        let m = CoxeterMatrix::parse(text).unwrap();
        let d = duality_check(&m);
        if !d.is_duality {
            continue;
        }
        let n = d.dimension.unwrap();
        let totals = hc_standard_realization(&m, &Thickness::Thin).unwrap().totals();
        assert!(totals.is_concentrated_in(n), "{text}");
        let top = totals.get(n);
        assert!(top.torsion.is_empty() && top.torsion_omega.is_empty(), "{text}");
    }
}

#[test]
fn regular_thickness_on_infinite_types_is_omega() {
    let m = CoxeterMatrix::parse("gens a b c\na b 3\nb c 3\na c 3").unwrap();
    let r = hc_standard_realization(&m, &Thickness::Regular(vec![3, 3, 3])).unwrap();
    let top = r.totals().get(2);
    assert_eq!(top, GroupEntry { free_rank: Rank::Omega, ..GroupEntry::zero() });
    assert!(spherical_poset(&m).members().len() == 7);
}
