use cpspecht::combinat::{dominates_tableaux, garnir_data, garnir_nodes, standard_tableaux, tableau_degree};
use cpspecht::klr::{tau_element_with, word_degree, Gen, GeneratorWord, Perm};
use cpspecht::specht::support::{self, RowComparison};
use cpspecht::specht::{alt_reduced_word, graded_restriction_sum, restriction_layers, ModuleElement, Op};
use cpspecht::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

fn mp(s: &str) -> Multipartition {
    Multipartition::parse(s).unwrap()
}

fn rd(e: u32, charge: &[i64]) -> ResidueData {
    ResidueData::new(e, charge.to_vec()).unwrap()
}

fn module(s: &str, e: u32, charge: &[i64]) -> SpechtModule {
    SpechtModule::new(&mp(s), &rd(e, charge)).unwrap()
}

fn single(id: u32) -> Vector {
    vec![(id, Int::one())]
}

#[test]
fn basis_sizes() {
    assert_eq!(module("2|1|3|∅|∅", 0, &[0, 4, 0, 0, 4]).dim(), 60);
    assert_eq!(module("5", 3, &[0]).dim(), 1);
    let empty = module("∅", 2, &[0]);
    assert_eq!(empty.dim(), 1);
    assert_eq!(empty.degree(0), 0);
}

#[test]
fn initial_vector_is_id_zero() {
    let m = module("3,2|1", 3, &[0, 1]);
    assert_eq!(m.tableau(0), Tableau::initial(m.shape()));
    assert_eq!(m.index_of(&Tableau::initial(m.shape())).unwrap(), 0);
}

#[test]
fn graded_dimensions() {
    let q = |pairs: &[(i64, u64)]| pairs.iter().copied().collect::<BTreeMap<i64, u64>>();
    assert_eq!(module("∅", 3, &[0]).graded_dimension(), q(&[(0, 1)]));
    assert_eq!(module("2", 2, &[0]).graded_dimension(), q(&[(1, 1)]));
    assert_eq!(module("1,1", 2, &[0]).graded_dimension(), q(&[(0, 1)]));
    for n in 1..=6 {
        assert_eq!(SpechtModule::new(&Multipartition::new(vec![vec![n]]).unwrap(), &rd(0, &[0])).unwrap().graded_dimension(), q(&[(0, 1)]));
    }
}

#[test]
fn degrees_agree_with_tableau_degrees() {
    let r = rd(3, &[0, 2]);
    for shape in Multipartition::all(5, 2) {
        let m = SpechtModule::new(&shape, &r).unwrap();
        for id in 0..m.dim() as u32 {
            assert_eq!(m.degree(id), tableau_degree(&m.tableau(id), &r).unwrap());
        }
    }
}

#[test]
fn dots_kill_the_initial_vector() {
    let m = module("3,2|2", 3, &[0, 1]);
    for s in 1..=m.n() {
        assert!(m.act(&single(0), &GeneratorWord::new(vec![Gen::Y(s)])).unwrap().is_empty());
    }
}

#[test]
fn dot_on_worked_diagram() {
    let m = module("5,4", 2, &[0]);
    let t0 = Tableau::initial(m.shape());
    let t = t0.act(&Perm::from_word(9, &[5, 6, 7, 8]));
    let s = t0.act(&Perm::from_word(9, &[5, 6, 7]));
    let x = single(m.index_of(&t).unwrap());
    let out = m.act(&x, &GeneratorWord::new(vec![Gen::Y(9)])).unwrap();
    assert_eq!(out, single(m.index_of(&s).unwrap()));
}

#[test]
fn two_row_dot_formula() {
    for e in [0u32, 2, 3, 4] {
        let r = rd(e, &[0]);
        for n in 2..=8 {
            for k in (n + 1) / 2..n {
                let shape = Multipartition::new(vec![vec![k, n - k]]).unwrap();
                let m = SpechtModule::new(&shape, &r).unwrap();
                let t0 = Tableau::initial(&shape);
                let mut letters: Vec<Gen> = (k..n).map(Gen::Psi).collect();
                letters.push(Gen::Y(n));
                let out = m.act(&single(0), &GeneratorWord::new(letters)).unwrap();
                let res = t0.residue_sequence(&r);
                if res[k - 1] == res[n - 1] {
                    let s = t0.act(&Perm::from_word(n, &(k..n - 1).collect::<Vec<_>>()));
                    assert_eq!(out, single(m.index_of(&s).unwrap()), "e={e} ({k},{})", n - k);
                } else {
                    assert!(out.is_empty(), "e={e} ({k},{})", n - k);
                }
            }
        }
    }
}

#[test]
fn relations_hold_on_small_modules() {
    for (e, ch, shapes) in [
        (2u32, vec![0i64], vec!["2", "1,1", "3,1", "2,2", "3,2", "2,2,1"]),
        (3, vec![0], vec!["3,1", "2,1,1", "3,2,1"]),
        (0, vec![0, 1], vec!["2|1", "1|1,1", "2,1|1"]),
        (3, vec![0, 0, 1], vec!["1|1|1", "2|1|1", "1,1|1|1"]),
        (2, vec![0, 2, 0], vec!["1|1|1", "2|∅|1"]),
    ] {
        let r = ResidueData::new(e, ch).unwrap();
        for s in shapes {
            let m = SpechtModule::new(&mp(s), &r).unwrap();
            let rep = m.verify_relations().unwrap();
            assert!(rep.ok(), "e={e} {s}: {:?}", rep.violations.first());
            assert!(rep.checked > 0 || m.n() == 0);
        }
    }
}

#[test]
fn small_garnir_shapes_pass() {
    // rows shorter than e leave an empty belt
    for (e, s) in [(3u32, "2,2"), (4, "3,3"), (5, "2,2,1"), (4, "2,2|2,1")] {
        let shape = mp(s);
        let r = ResidueData::new(e, vec![0; shape.level()]).unwrap();
        let m = SpechtModule::new(&shape, &r).unwrap();
        assert!(m.verify_relations().unwrap().ok(), "{s}");
        for a in garnir_nodes(&shape) {
            let gd = garnir_data(&shape, a, &r).unwrap();
            assert_eq!(gd.b, 0);
            assert!(m.garnir_sum(&single(0), &gd, false).unwrap().is_empty());
        }
    }
}

#[test]
fn idempotent_and_square_relations() {
    let m = module("2,1|1", 2, &[0, 1]);
    let r = m.residue_data().clone();
    // e(i) summed over realized sequences is the identity
    let seqs: BTreeSet<Vec<i64>> = (0..m.dim() as u32).map(|id| m.residue_sequence(id)).collect();
    for id in 0..m.dim() as u32 {
        let mut total: Vector = Vec::new();
        for bi in &seqs {
            let part = m.act(&single(id), &GeneratorWord::new(vec![Gen::Idem(bi.clone())])).unwrap();
            total = cpspecht::specht::vec_add(&total, &part, &Int::one());
        }
        assert_eq!(total, single(id));
    }
    // ψ_r² vanishes on equal adjacent residues
    for id in 0..m.dim() as u32 {
        let bi = m.residue_sequence(id);
        for k in 1..m.n() {
            if bi[k - 1] == bi[k] {
                let out = m.act_ops(&single(id), &[Op::Psi(k), Op::Psi(k)]).unwrap();
                assert!(out.is_empty(), "{} r={k}", m.tableau(id));
            }
        }
    }
    let _ = r;
}

#[test]
fn braid_defect_is_plus_or_minus_one() {
    let m = module("3,2,1", 3, &[0]);
    let r = m.residue_data().clone();
    for id in 0..m.dim() as u32 {
        let bi = m.residue_sequence(id);
        for a in 1..m.n() - 1 {
            let lhs = m.act_ops(&single(id), &[Op::Psi(a), Op::Psi(a + 1), Op::Psi(a)]).unwrap();
            let rhs = m.act_ops(&single(id), &[Op::Psi(a + 1), Op::Psi(a), Op::Psi(a + 1)]).unwrap();
            let diff = cpspecht::specht::vec_add(&lhs, &rhs, &Int::from(-1));
            let (i, j, k) = (bi[a - 1], bi[a], bi[a + 1]);
            if i == k && r.arrow(i, j) {
                assert_eq!(diff, single(id));
            } else if i == k && r.arrow(j, i) {
                assert_eq!(diff, cpspecht::specht::vec_scale(&single(id), &Int::from(-1)));
            } else {
                assert!(diff.is_empty());
            }
        }
    }
}

#[test]
fn generator_matrices() {
    let m = module("3,1|2", 3, &[0, 2]);
    let i0 = m.residue_sequence(0);
    let e = m.generator_matrix(&Gen::Idem(i0.clone())).unwrap();
    for (col, v) in e.cols.iter().enumerate() {
        if m.residue_sequence(col as u32) == i0 {
            assert_eq!(v, &single(col as u32));
        } else {
            assert!(v.is_empty());
        }
    }
    for s in 1..=m.n() {
        let y = m.generator_matrix(&Gen::Y(s)).unwrap();
        for (i, j, _) in y.triples() {
            let (ts, tt) = (m.tableau(i as u32), m.tableau(j as u32));
            assert!(ts != tt && dominates_tableaux(&ts, &tt).unwrap(), "y_{s}: {ts} from {tt}");
        }
    }
    assert_eq!(m.generator_matrix(&Gen::Psi(1)).unwrap().ncols(), m.dim());
    let lazy = SpechtModule::lazy(m.shape(), m.residue_data()).unwrap();
    assert!(lazy.generator_matrix(&Gen::Y(1)).is_err());
}

#[test]
fn corrupted_memo_is_detected() {
    let m = module("2,1", 2, &[0]);
    m.corrupt_memo(0, Op::Psi(2), vec![(0, Int::from(5))]);
    let rep = m.verify_relations().unwrap();
    assert!(!rep.ok());
    assert!(!rep.violations[0].relation.is_empty());
}

#[test]
fn module_elements_serialize() {
    let m = module("2,1", 3, &[0]);
    let x = vec![(0, Int::from(2)), (1, Int::from(-3))];
    let el = m.element(&x);
    let j = serde_json::to_string(&el).unwrap();
    let back: ModuleElement = serde_json::from_str(&j).unwrap();
    assert_eq!(back.shape, *m.shape());
    assert_eq!(back.terms.len(), 2);
    assert_eq!(back.terms[1].coeff, "-3");
    assert_eq!(back.terms[0].tableau, m.tableau(0));
}

#[test]
fn restriction_layer_examples() {
    let r = rd(0, &[0]);
    let layers = restriction_layers(&mp("1"), 1, &r).unwrap();
    assert_eq!(layers.len(), 1);
    assert_eq!(layers[0].shape.size(), 0);
    assert_eq!(layers[0].shift, 0);

    let layers = restriction_layers(&mp("2,1"), 1, &r).unwrap();
    assert_eq!(layers.iter().map(|l| l.removed).collect::<Vec<_>>(), vec![Node::new(1, 1, 2), Node::new(1, 2, 1)]);
    assert!(layers.iter().all(|l| l.shift == 0));
    let total: u64 = graded_restriction_sum(&mp("2,1"), &r).unwrap().values().sum();
    assert_eq!(total, 2);

    let r = rd(3, &[0, 2, 0, 1]);
    let nu = mp("4,3,1|2|4,3|2,1");
    let zero_rows: Vec<RowIndex> = restriction_layers(&nu, 1, &r)
        .unwrap()
        .iter()
        .filter(|l| r.res(l.removed.l, l.removed.r, l.removed.c) == 0)
        .map(|l| l.removed.row())
        .collect();
    assert_eq!(zero_rows, vec![RowIndex { l: 1, r: 1 }, RowIndex { l: 2, r: 1 }, RowIndex { l: 3, r: 1 }, RowIndex { l: 4, r: 2 }]);
    assert!(restriction_layers(&nu, 0, &r).is_err());
    assert!(restriction_layers(&nu, 30, &r).is_err());
}

#[test]
fn graded_restriction_identity() {
    for (e, ch) in [(2u32, vec![0i64]), (3, vec![0, 1]), (0, vec![0, 0, 1])] {
        let r = ResidueData::new(e, ch.clone()).unwrap();
        for n in 1..=5 {
            for nu in Multipartition::all(n, ch.len()) {
                let m = SpechtModule::new(&nu, &r).unwrap();
                assert_eq!(m.graded_dimension(), graded_restriction_sum(&nu, &r).unwrap(), "{nu}");
            }
        }
    }
}

/// `v ψ_{t_A} τ^A_d` for a given choice of reduced words.
fn tau_image(m: &SpechtModule, gd: &cpspecht::combinat::GarnirData, d: &Perm, alt: bool) -> Vector {
    let word_of = |p: &Perm| if alt { alt_reduced_word(p) } else { p.reduced_word() };
    let n = m.n();
    let head: Vec<Op> = word_of(&gd.garnir_tableau.perm()).iter().map(|&r| Op::Psi(r)).collect();
    let x = m.act_ops(&single(0), &head).unwrap();
    let tau = tau_element_with(gd, &word_of(d), |w| word_of(&w.extended(n))).unwrap();
    let mut acc: Vector = Vec::new();
    for (w, c) in &tau.terms {
        let y = m.act(&x, w).unwrap();
        acc = cpspecht::specht::vec_add(&acc, &y, &Int::from(*c));
    }
    acc
}

#[test]
fn tau_does_not_depend_on_reduced_words() {
    for (e, ch, s) in [(2u32, vec![0i64], "4,2"), (2, vec![0], "3,3"), (3, vec![0], "4,3"), (2, vec![0, 1], "2,2|2")] {
        let r = ResidueData::new(e, ch).unwrap();
        let shape = mp(s);
        let m = SpechtModule::new(&shape, &r).unwrap();
        for a in garnir_nodes(&shape) {
            let gd = garnir_data(&shape, a, &r).unwrap();
            for d in &gd.coset_reps {
                assert_eq!(tau_image(&m, &gd, d, false), tau_image(&m, &gd, d, true), "{s} A={a} d={d}");
            }
            assert!(m.garnir_sum(&single(0), &gd, true).unwrap().is_empty());
        }
    }
}

#[test]
fn support_suites_on_small_shapes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (e, ch, s) in [(2u32, vec![0i64], "3,2"), (3, vec![0, 1], "2,1|2"), (0, vec![0], "3,1,1")] {
        let r = ResidueData::new(e, ch).unwrap();
        let m = SpechtModule::lazy(&mp(s), &r).unwrap();
        for rep in [
            support::dom_tableaux(&m, &mut rng, 200).unwrap(),
            support::y_down(&m, &mut rng, 200).unwrap(),
            support::filtration(&m, &mut rng, 200, RowComparison::Iterated).unwrap(),
            support::pushing(&m, &mut rng, 200).unwrap(),
        ] {
            assert!(rep.ok(), "{}: {:?}", rep.name, rep.failures.first());
            assert_eq!(rep.instances, 200);
        }
    }
}

#[test]
fn componentwise_row_filtration_has_a_counterexample() {
    // e=3, ν=(4,2), γ=3: ψ_2 moves 4 from the second row to the first
    let m = module("4,2", 3, &[0]);
    let t = Tableau::from_rows(&[vec![vec![1, 3, 5, 6], vec![2, 4]]]).unwrap();
    let out = m.act_ops(&single(m.index_of(&t).unwrap()), &[Op::Psi(2)]).unwrap();
    assert_eq!(out.len(), 1);
    assert_eq!(m.tableau(out[0].0), Tableau::initial(m.shape()));
    assert_eq!(out[0].1.abs(), Int::one());
}

#[test]
fn lazy_and_enumerated_modules_agree() {
    let r = rd(3, &[0, 1]);
    let shape = mp("3,1|2");
    let full = SpechtModule::new(&shape, &r).unwrap();
    let lazy = SpechtModule::lazy(&shape, &r).unwrap();
    for t in standard_tableaux(&shape) {
        let (a, b) = (full.index_of(&t).unwrap(), lazy.index_of(&t).unwrap());
        for op in [Op::Y(3), Op::Psi(2), Op::Psi(4)] {
            let x = full.act_vec(&single(a), op).unwrap();
            let y = lazy.act_vec(&single(b), op).unwrap();
            let xs: BTreeMap<Tableau, Int> = x.into_iter().map(|(i, c)| (full.tableau(i), c)).collect();
            let ys: BTreeMap<Tableau, Int> = y.into_iter().map(|(i, c)| (lazy.tableau(i), c)).collect();
            assert_eq!(xs, ys);
        }
    }
}

#[test]
fn step_cap_is_enforced() {
    let m = SpechtModule::new(&mp("3,3"), &rd(2, &[0])).unwrap().with_cap_steps(1);
    let last = m.dim() as u32 - 1;
    assert!(matches!(m.act_vec(&single(last), Op::Y(1)), Err(Error::ResourceCap(_))));
}

fn arb_case() -> impl Strategy<Value = (u32, Vec<i64>, Multipartition)> {
    (prop_oneof![Just(0u32), Just(2), Just(3), Just(4)], 1usize..=2, 1usize..=5).prop_flat_map(|(e, level, n)| {
        (
            Just(e),
            proptest::collection::vec(0i64..3, level),
            proptest::sample::select(Multipartition::all(n, level)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_is_homogeneous((e, ch, shape) in arb_case(), seed in any::<u64>(), word in proptest::collection::vec((any::<bool>(), 1usize..6), 1..6)) {
        let r = ResidueData::new(e, ch).unwrap();
        let m = SpechtModule::new(&shape, &r).unwrap();
        let n = m.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (t, _) = support::random_walk(&shape, &mut rng);
        let letters: Vec<Gen> = word
            .into_iter()
            .map(|(psi, k)| if psi && n >= 2 { Gen::Psi(1 + (k - 1) % (n - 1)) } else { Gen::Y(1 + (k - 1) % n) })
            .collect();
        let w = GeneratorWord::new(letters);
        let id = m.index_of(&t).unwrap();
        let out = m.act(&single(id), &w).unwrap();
        let shift = word_degree(&w, &t.residue_sequence(&r), &r).unwrap();
        for (j, _) in out {
            prop_assert_eq!(m.degree(j), m.degree(id) + shift);
        }
    }

    #[test]
    fn dimension_is_the_tableau_count((e, ch, shape) in arb_case()) {
        let r = ResidueData::new(e, ch).unwrap();
        let m = SpechtModule::new(&shape, &r).unwrap();
        prop_assert_eq!(m.dim() as u128, shape.count_standard());
        prop_assert_eq!(m.graded_dimension().values().sum::<u64>() as usize, m.dim());
    }
}
