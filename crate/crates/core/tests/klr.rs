use cpspecht::combinat::{garnir_data, garnir_nodes};
use cpspecht::klr::*;
use cpspecht::*;
use itertools::Itertools;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn rd(e: u32, charge: &[i64]) -> ResidueData {
    ResidueData::new(e, charge.to_vec()).unwrap()
}

fn all_perms(n: usize) -> Vec<Perm> {
    (1..=n).permutations(n).map(|p| Perm::from_images(p).unwrap()).collect()
}

#[test]
fn cartan_entries() {
    let r = rd(3, &[0]);
    assert_eq!(cartan(0, 0, &r), 2);
    assert_eq!(cartan(0, 1, &r), -1);
    assert_eq!(cartan(2, 0, &r), -1);
    let r = rd(2, &[0]);
    assert_eq!(cartan(0, 1, &r), -2);
    assert_eq!(cartan(1, 1, &r), 2);
    let r = rd(0, &[0]);
    assert_eq!(cartan(4, 5, &r), -1);
    assert_eq!(cartan(4, 6, &r), 0);
    let r = rd(5, &[0]);
    assert_eq!(cartan(1, 3, &r), 0);
    assert_eq!(cartan(4, 0, &r), -1);
}

#[test]
fn cartan_is_symmetric() {
    for e in 2..=7u32 {
        let r = rd(e, &[0]);
        for i in 0..e as i64 {
            for j in 0..e as i64 {
                assert_eq!(cartan(i, j, &r), cartan(j, i, &r));
                let expect = if i == j {
                    2
                } else if e == 2 {
                    -2
                } else if (i - j).rem_euclid(e as i64) == 1 || (j - i).rem_euclid(e as i64) == 1 {
                    -1
                } else {
                    0
                };
                assert_eq!(cartan(i, j, &r), expect, "e={e} i={i} j={j}");
            }
        }
    }
    let r = rd(0, &[0]);
    for i in -10..10 {
        for j in -10..10 {
            assert_eq!(cartan(i, j, &r), cartan(j, i, &r));
        }
    }
}

#[test]
fn cyclotomic_exponents() {
    let r = rd(3, &[0, 2, 0, 1]);
    assert_eq!(cyclotomic_exponent(0, &r), 2);
    assert_eq!(cyclotomic_exponent(1, &r), 1);
    assert_eq!(cyclotomic_exponent(2, &r), 1);
    assert_eq!(cyclotomic_exponent(5, &r), 1);
    let r = rd(0, &[0, 4, 0, 0, 4]);
    assert_eq!(cyclotomic_exponent(0, &r), 3);
    assert_eq!(cyclotomic_exponent(4, &r), 2);
    assert_eq!(cyclotomic_exponent(1, &r), 0);
}

#[test]
fn reduced_words_round_trip() {
    for n in 0..=6 {
        for w in all_perms(n) {
            let word = canonical_reduced_word(&w);
            assert_eq!(word.len(), w.length());
            assert_eq!(Perm::from_word(n, &word), w);
        }
    }
}

#[test]
fn canonical_words_are_prefix_closed() {
    for w in all_perms(5) {
        let word = w.reduced_word();
        if let Some((&last, prefix)) = word.split_last() {
            let shorter = w.then_simple(last);
            assert_eq!(shorter.reduced_word(), prefix);
        }
    }
}

#[test]
fn segments() {
    assert_eq!(Perm::segment(6, 2, 5).reduced_word(), vec![2, 3, 4]);
    assert!(Perm::segment(4, 3, 3).is_identity());
    let w = Perm::segment(11, 5, 11).compose(&Perm::segment(11, 4, 9));
    assert_eq!(w.length(), 11);
}

/// Products of all subwords of a reduced word: the Bruhat interval below it.
fn bruhat_interval(w: &Perm) -> BTreeSet<Perm> {
    let word = w.reduced_word();
    let n = w.size();
    (0..1u32 << word.len())
        .map(|mask| {
            let sub: Vec<usize> = word.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &r)| r).collect();
            Perm::from_word(n, &sub)
        })
        .collect()
}

#[test]
fn bruhat_order_matches_subwords() {
    for n in 1..=5 {
        let perms = all_perms(n);
        for w in &perms {
            let below = bruhat_interval(w);
            for u in &perms {
                assert_eq!(u.bruhat_le(w), below.contains(u), "{u} ≤ {w}");
            }
        }
    }
}

#[test]
fn composition_and_inverse() {
    for w in all_perms(4) {
        assert!(w.compose(&w.inverse()).is_identity());
        assert_eq!(w.inverse().length(), w.length());
    }
    let s1 = Perm::simple(3, 1);
    let s2 = Perm::simple(3, 2);
    assert_eq!(s1.compose(&s2), Perm::from_word(3, &[1, 2]));
    assert!(Perm::from_images(vec![1, 1]).is_err());
}

#[test]
fn degrees_of_words() {
    let r = rd(3, &[0]);
    let bi = [0, 1, 2, 0];
    assert_eq!(word_degree(&GeneratorWord::psi_word(&[1]), &bi, &r).unwrap(), 1);
    assert_eq!(word_degree(&GeneratorWord::psi_word(&[3]), &[0, 1, 2, 2], &r).unwrap(), -2);
    assert_eq!(word_degree(&GeneratorWord::new(vec![Gen::Y(2), Gen::Y(2)]), &bi, &r).unwrap(), 4);
    assert_eq!(word_degree(&GeneratorWord::new(vec![Gen::Idem(bi.to_vec())]), &bi, &r).unwrap(), 0);
    assert!(word_degree(&GeneratorWord::psi_word(&[4]), &bi, &r).is_err());
    assert!(word_degree(&GeneratorWord::new(vec![Gen::Y(5)]), &bi, &r).is_err());
}

fn arb_word(n: usize) -> impl Strategy<Value = GeneratorWord> {
    proptest::collection::vec(
        prop_oneof![(1..n).prop_map(Gen::Psi), (1..=n).prop_map(Gen::Y)],
        0..8,
    )
    .prop_map(GeneratorWord::new)
}

proptest! {
    #[test]
    fn word_degree_is_additive(
        e in prop_oneof![Just(0u32), 2u32..6],
        bi in proptest::collection::vec(0i64..6, 5),
        a in arb_word(5),
        b in arb_word(5),
    ) {
        let r = ResidueData::new(e, vec![0]).unwrap();
        let mut mid = bi.clone();
        for g in &a.letters {
            if let Gen::Psi(k) = g {
                mid.swap(k - 1, *k);
            }
        }
        let whole = word_degree(&a.concat(&b), &bi, &r).unwrap();
        prop_assert_eq!(whole, word_degree(&a, &bi, &r).unwrap() + word_degree(&b, &mid, &r).unwrap());
    }

    #[test]
    fn generator_words_serialize(a in arb_word(6)) {
        let j = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<GeneratorWord>(&j).unwrap(), a);
    }
}

#[test]
fn tau_elements_expand_binomially() {
    let r = rd(2, &[0, 0, 0]);
    let gd = garnir_data(&Multipartition::parse("3,1|7,5|2,1").unwrap(), Node::new(2, 1, 3), &r).unwrap();
    for d in &gd.coset_reps {
        let tau = tau_element(&gd, d).unwrap();
        assert_eq!(tau.len(), 1 << d.length(), "d = {d}");
        assert!(tau.terms.values().all(|&c| c == 1));
        for w in tau.terms.keys() {
            assert_eq!(w.letters[0], Gen::Idem(gd.residues.clone()));
        }
    }
    let id = tau_element(&gd, &gd.coset_reps[0]).unwrap();
    assert_eq!(id.len(), 1);
    let s2 = tau_element(&gd, &gd.coset_reps[1]).unwrap();
    let brick = GeneratorWord::psi_word(&gd.bricks[1].reduced_word());
    let idem = GeneratorWord::new(vec![Gen::Idem(gd.residues.clone())]);
    assert!(s2.terms.contains_key(&idem) && s2.terms.contains_key(&idem.concat(&brick)));
    assert!(tau_element(&gd, &Perm::from_word(3, &[1])).is_err());
}

#[test]
fn tau_elements_on_every_garnir_node() {
    for (e, s) in [(2u32, "4,4"), (3, "3,3|2"), (2, "3,2,2|2,1")] {
        let shape = Multipartition::parse(s).unwrap();
        let r = ResidueData::new(e, vec![0; shape.level()]).unwrap();
        for a in garnir_nodes(&shape) {
            let gd = garnir_data(&shape, a, &r).unwrap();
            for d in &gd.coset_reps {
                // subwords of d may coincide, so count with multiplicity
                let tau = tau_element(&gd, d).unwrap();
                assert_eq!(tau.terms.values().sum::<i64>(), 1 << d.length());
            }
        }
    }
}
