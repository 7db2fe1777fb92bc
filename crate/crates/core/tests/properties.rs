//! Algebraic invariants on randomly chosen inputs.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use charind::catalog::build;
use charind::charops::{induce, inner_product, integer_inner_product, restrict, subgroup_irreducibles};
use charind::chartab::{compute_character_table, CharacterTable, Cyclotomic};
use charind::structure::{center, quotient, QuotientGroup};
use charind::{PermGroup, Permutation, SubgroupHandle};

fn cyclotomic(n: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0..n as u64, -4i64..=4), 0..5).prop_map(move |t| Cyclotomic::from_int_terms(n, t))
}

fn cyclotomic_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop_oneof![Just(5u32), Just(7), Just(8), Just(12), Just(15)]
        .prop_flat_map(|n| (cyclotomic(n), cyclotomic(n), cyclotomic(n)))
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn group(name: &str) -> Arc<PermGroup> {
    build(name).unwrap().group.clone()
}

fn central_quotient() -> &'static QuotientGroup {
    static Q: OnceLock<QuotientGroup> = OnceLock::new();
    Q.get_or_init(|| {
        let g = group("SL25");
        let z = center(&g).unwrap();
        quotient(&g, &z).unwrap()
    })
}

fn tables() -> &'static [(Arc<PermGroup>, Arc<CharacterTable>)] {
    static T: OnceLock<Vec<(Arc<PermGroup>, Arc<CharacterTable>)>> = OnceLock::new();
    T.get_or_init(|| {
        ["Sym4", "Alt5", "PSL27", "SL23"]
            .iter()
            .map(|n| {
                let g = group(n);
                let t = compute_character_table(&g).unwrap();
                (g, t)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms((a, b, c) in cyclotomic_triple()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&Cyclotomic::one()), a.clone());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        prop_assert_eq!(a.add(&b).galois(13), a.galois(13).add(&b.galois(13)));
        prop_assert_eq!(a.mul(&b).galois(11), a.galois(11).mul(&b.galois(11)));
        let norm = a.mul(&a.conj());
        prop_assert_eq!(norm.conj(), norm);
    }

    #[test]
    fn permutations_act_on_the_right(a in permutation(9), b in permutation(9), c in permutation(9)) {
        let ab = a.mul(&b);
        for x in 0..9 {
            prop_assert_eq!(ab.image(x), b.image(a.image(x)));
        }
        prop_assert_eq!(ab.mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(ab.inverse(), b.inverse().mul(&a.inverse()));
        prop_assert_eq!(ab.sign(), a.sign() * b.sign());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(ab.conjugate_by(&c), a.conjugate_by(&c).mul(&b.conjugate_by(&c)));
        prop_assert_eq!(a.conjugate_by(&c), c.inverse().mul(&a).mul(&c));
        let round = Permutation::parse_cycles(9, &a.to_cycle_string()).unwrap();
        prop_assert_eq!(round, a);
    }

    #[test]
    fn projection_is_a_homomorphism(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let q = central_quotient();
        let t = q.source().elements().unwrap();
        let x = t.get(i.index(t.len()));
        let y = t.get(j.index(t.len()));
        let pxy = q.project(&x.mul(y)).unwrap();
        prop_assert_eq!(pxy, q.project(x).unwrap().mul(&q.project(y).unwrap()));
        let s = q.section(&q.project(x).unwrap()).unwrap();
        prop_assert!(q.kernel().contains(&s.inverse().mul(x)));
    }

    #[test]
    fn frobenius_reciprocity(
        which in 0usize..4,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3),
        gi in any::<prop::sample::Index>(),
        ci in any::<prop::sample::Index>(),
    ) {
        let (g, t) = &tables()[which];
        let el = g.elements().unwrap();
        let gens: Vec<Permutation> = picks.iter().map(|p| el.get(p.index(el.len())).clone()).collect();
        let h = SubgroupHandle::new(g.clone(), gens).unwrap();
        let hirr = subgroup_irreducibles(&h).unwrap();
        let gamma = hirr.irr(gi.index(hirr.len()));
        let chi = t.irr(ci.index(t.len()));
        let up = induce(gamma, &h).unwrap();
        let down = restrict(chi, &h).unwrap();
        prop_assert_eq!(integer_inner_product(&up, chi).unwrap(), integer_inner_product(gamma, &down).unwrap());
        prop_assert_eq!(up.degree_u64(), gamma.degree_u64() * (g.order() / h.order()));
    }

    #[test]
    fn orthogonality(which in 0usize..4, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (_, t) = &tables()[which];
        let (i, j) = (a.index(t.len()), b.index(t.len()));
        let ip = inner_product(t.irr(i), t.irr(j)).unwrap();
        prop_assert_eq!(ip, Cyclotomic::from_int(i64::from(i == j)));
        let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
        prop_assert_eq!(sum, t.group_order());
    }
}
