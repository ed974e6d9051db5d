//! Exhaustive oracles for Witt-class reduction, equality, and isometry on
//! small groups.
//!
//! The library reduces forms by repeatedly quotienting single isotropic
//! pivots and decides isometry by a pruned backtracking search. This suite
//! recomputes both answers a completely different way: isometry by brute
//! force over every generator-image assignment, and the anisotropic
//! representative by enumerating *all* subgroups, keeping the maximal
//! isotropic ones, and quotienting in one step. The two routes must agree,
//! and the representative must not depend on which maximal subgroup is used.

use std::collections::BTreeSet;
use wittforge_core::abelian::{FiniteAbelianGroup, GroupElement, Subgroup};
use wittforge_core::charge::additive_charge;
use wittforge_core::qform::PreMetricGroup;
use wittforge_core::rational::QmodZ;
use wittforge_core::witt::{reduce_anisotropic, WittClass};

fn cyclic_form(n: u64, num: i64, den: i64) -> PreMetricGroup {
    let group = FiniteAbelianGroup::new(&[n]).expect("valid order");
    PreMetricGroup::from_gram(group, &[QmodZ::new(num, den).unwrap()], &[])
        .expect("valid cyclic presentation")
}

fn two_two_form(d0: i64, d1: i64) -> PreMetricGroup {
    let group = FiniteAbelianGroup::new(&[2, 2]).expect("valid orders");
    let diag = [QmodZ::new(d0, 2).unwrap(), QmodZ::new(d1, 2).unwrap()];
    PreMetricGroup::from_gram(group, &diag, &[(0, 1, QmodZ::new(1, 2).unwrap())])
        .expect("valid rank-two presentation")
}

/// Forms of order at most 25 covering anisotropic, metabolic, odd, and
/// 2-adic behaviour.
fn catalogue() -> Vec<PreMetricGroup> {
    vec![
        cyclic_form(5, 1, 5),
        cyclic_form(5, 2, 5),
        cyclic_form(3, 1, 3),
        cyclic_form(3, 2, 3),
        cyclic_form(2, 1, 4),
        cyclic_form(2, 3, 4),
        cyclic_form(4, 1, 8),
        cyclic_form(4, 3, 8),
        cyclic_form(4, 5, 8),
        cyclic_form(9, 1, 9),
        two_two_form(0, 0),
        two_two_form(1, 1),
        cyclic_form(3, 1, 3).direct_sum(&cyclic_form(3, 1, 3)),
        cyclic_form(3, 1, 3).direct_sum(&cyclic_form(3, 2, 3)),
        cyclic_form(5, 1, 5).direct_sum(&cyclic_form(5, 4, 5)),
        cyclic_form(2, 1, 4).direct_sum(&cyclic_form(2, 3, 4)),
    ]
}

/// Isometry by brute force: try every assignment of generator images with
/// compatible orders, and accept when some assignment is a bijection
/// matching the two value tables.
fn brute_isometric(a: &PreMetricGroup, b: &PreMetricGroup) -> bool {
    let ga = a.group();
    let gb = b.group();
    if !ga.is_isomorphic(gb) {
        return false;
    }
    let r = ga.rank();
    let candidates: Vec<Vec<GroupElement>> = ga
        .orders()
        .iter()
        .map(|&n| {
            gb.elements()
                .filter(|y| gb.scale(n as i64, y) == gb.zero())
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; r];
    'assignments: loop {
        let images: Vec<&GroupElement> =
            idx.iter().zip(&candidates).map(|(&k, c)| &c[k]).collect();
        let phi = |x: &GroupElement| -> GroupElement {
            let mut acc = gb.zero();
            for (&xi, im) in x.coords().iter().zip(&images) {
                acc = gb.add(&acc, &gb.scale(xi as i64, im));
            }
            acc
        };
        let mut seen = BTreeSet::new();
        if ga.elements().all(|x| seen.insert(phi(&x)))
            && ga.elements().all(|x| a.q(&x) == b.q(&phi(&x)))
        {
            return true;
        }
        for pos in 0..r {
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                continue 'assignments;
            }
            idx[pos] = 0;
        }
        return false;
    }
}

/// Every subgroup, found by saturating the lattice: repeatedly adjoin one
/// element to a known subgroup and close.
fn all_subgroups(group: &FiniteAbelianGroup) -> Vec<BTreeSet<GroupElement>> {
    let elements: Vec<GroupElement> = group.elements().collect();
    let trivial: BTreeSet<GroupElement> = [group.zero()].into_iter().collect();
    let mut seen: BTreeSet<BTreeSet<GroupElement>> = BTreeSet::new();
    seen.insert(trivial.clone());
    let mut queue = vec![trivial];
    while let Some(current) = queue.pop() {
        for x in &elements {
            if current.contains(x) {
                continue;
            }
            let mut gens: Vec<GroupElement> = current.iter().cloned().collect();
            gens.push(x.clone());
            let closed: BTreeSet<GroupElement> = Subgroup::from_generators(group, &gens)
                .iter()
                .cloned()
                .collect();
            if seen.insert(closed.clone()) {
                queue.push(closed);
            }
        }
    }
    seen.into_iter().collect()
}

/// One anisotropic representative per maximal isotropic subgroup.
fn oracle_representatives(pm: &PreMetricGroup) -> Vec<PreMetricGroup> {
    let isotropic: Vec<BTreeSet<GroupElement>> = all_subgroups(pm.group())
        .into_iter()
        .filter(|s| pm.is_isotropic_subgroup(&Subgroup::from_elements(s.clone())))
        .collect();
    let maximal: Vec<&BTreeSet<GroupElement>> = isotropic
        .iter()
        .filter(|s| !isotropic.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
        .collect();
    maximal
        .into_iter()
        .map(|s| {
            pm.m_subquotient(&Subgroup::from_elements(s.clone()))
                .expect("maximal isotropic subgroups are isotropic")
        })
        .collect()
}

#[test]
fn exhaustive_reduction_is_well_defined() {
    for (i, pm) in catalogue().iter().enumerate() {
        let reps = oracle_representatives(pm);
        assert!(!reps.is_empty(), "form {i} has a maximal isotropic subgroup");
        let charge = additive_charge(pm).expect("catalogue forms are non-degenerate");
        for rep in &reps {
            assert!(rep.is_anisotropic(), "form {i}: subquotient is anisotropic");
            assert!(
                brute_isometric(rep, &reps[0]),
                "form {i}: representative independent of the maximal subgroup"
            );
            assert_eq!(
                additive_charge(rep).unwrap(),
                charge,
                "form {i}: reduction preserves the charge"
            );
        }
        let lib = reduce_anisotropic(pm);
        assert!(
            brute_isometric(&lib, &reps[0]),
            "form {i}: pivot reduction matches the one-step quotient"
        );
    }
}

#[test]
fn witt_equality_matches_exhaustive_oracle() {
    let forms = catalogue();
    let reps: Vec<PreMetricGroup> = forms
        .iter()
        .map(|pm| oracle_representatives(pm).swap_remove(0))
        .collect();
    let classes: Vec<WittClass> = forms
        .iter()
        .map(|pm| WittClass::from_metric(pm).expect("non-degenerate"))
        .collect();
    for i in 0..forms.len() {
        for j in i..forms.len() {
            let oracle = brute_isometric(&reps[i], &reps[j]);
            let lib = classes[i].equals(&classes[j]).unwrap();
            assert_eq!(lib, oracle, "forms {i} and {j} disagree on equality");
            if oracle {
                assert_eq!(
                    classes[i].charge().unwrap(),
                    classes[j].charge().unwrap(),
                    "equal classes must share a charge"
                );
            }
        }
    }
}

#[test]
fn isometry_search_agrees_with_brute_force() {
    let forms = catalogue();
    for i in 0..forms.len() {
        for j in i..forms.len() {
            let brute = brute_isometric(&forms[i], &forms[j]);
            let lib = forms[i].isometric(&forms[j]).unwrap();
            assert_eq!(lib, brute, "forms {i} and {j} disagree on isometry");
        }
    }
}

#[test]
fn known_metabolic_forms_vanish() {
    // The unit form on Z/9 is killed by the isotropic subgroup {0, 3, 6}.
    assert!(WittClass::from_metric(&cyclic_form(9, 1, 9)).unwrap().is_zero());
    // The hyperbolic plane on (Z/2)^2.
    assert!(WittClass::from_metric(&two_two_form(0, 0)).unwrap().is_zero());
    // x^2/5 + 4y^2/5 has the isotropic diagonal x = y.
    let split = cyclic_form(5, 1, 5).direct_sum(&cyclic_form(5, 4, 5));
    assert!(WittClass::from_metric(&split).unwrap().is_zero());
    // The anisotropic plane on (Z/2)^2 is 2-torsion but not zero.
    let aniso = WittClass::from_metric(&two_two_form(1, 1)).unwrap();
    assert!(!aniso.is_zero());
    assert_eq!(aniso.order().unwrap(), 2);
}
