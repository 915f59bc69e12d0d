use cpspecht::combinat::*;
use cpspecht::klr::Perm;
use proptest::prelude::*;

fn mp(s: &str) -> Multipartition {
    Multipartition::parse(s).unwrap()
}

fn rd(e: u32, charge: &[i64]) -> ResidueData {
    ResidueData::new(e, charge.to_vec()).unwrap()
}

#[test]
fn residues_of_nodes() {
    assert_eq!(rd(3, &[0, 0, 1]).res(3, 1, 1), 1);
    assert_eq!(rd(0, &[0, 4, 0, 0, 4]).res(2, 1, 1), 4);
    assert_eq!(rd(0, &[0, 4, 0, 0, 4]).residue(Node::new(2, 2, 1)).unwrap(), 3);
    assert!(rd(3, &[0]).residue(Node::new(2, 1, 1)).is_err());
}

#[test]
fn boundary_of_small_shapes() {
    let (add, rem) = boundary_nodes(&Multipartition::empty(3));
    assert_eq!(add, vec![Node::new(1, 1, 1), Node::new(2, 1, 1), Node::new(3, 1, 1)]);
    assert!(rem.is_empty());

    let (add, rem) = boundary_nodes(&mp("2,1"));
    assert_eq!(rem, vec![Node::new(1, 1, 2), Node::new(1, 2, 1)]);
    assert_eq!(add, vec![Node::new(1, 1, 3), Node::new(1, 2, 2), Node::new(1, 3, 1)]);
}

#[test]
fn removable_zero_nodes_of_one_node_example() {
    let r = rd(3, &[0, 2, 0, 1]);
    let nu = mp("4,3,1|2|4,3|2,1");
    let rows: Vec<RowIndex> = nu
        .removable()
        .into_iter()
        .filter(|a| r.res(a.l, a.r, a.c) == 0)
        .map(|a| a.row())
        .collect();
    assert_eq!(rows, vec![RowIndex { l: 1, r: 1 }, RowIndex { l: 2, r: 1 }, RowIndex { l: 3, r: 1 }, RowIndex { l: 4, r: 2 }]);
}

#[test]
fn dominance_examples() {
    assert!(dominates(&mp("2"), &mp("1,1")));
    assert!(!dominates(&mp("1,1"), &mp("2")));
    assert!(dominates(&mp("5,3,2,1|2|3"), &mp("3,3,2,1|2|3,2")));
    assert!(strictly_dominates(&mp("5,3,2,1|2|3"), &mp("3,3,2,1|2|3,2")));
    assert!(dominates(&mp("1|1"), &mp("1|1")));
    // a node moved into an earlier component dominates
    assert!(dominates(&mp("1|∅"), &mp("∅|1")));
}

/// Prefix-sum dominance written out independently.
fn dominates_oracle(a: &Multipartition, b: &Multipartition) -> bool {
    let level = a.level();
    let mut before_a = 0usize;
    let mut before_b = 0usize;
    for m in 0..level {
        let (ca, cb) = (&a.components()[m], &b.components()[m]);
        let rows = ca.len().max(cb.len());
        let (mut pa, mut pb) = (before_a, before_b);
        for s in 0..rows {
            pa += ca.get(s).copied().unwrap_or(0);
            pb += cb.get(s).copied().unwrap_or(0);
            if pa < pb {
                return false;
            }
        }
        if rows == 0 && pa < pb {
            return false;
        }
        before_a += ca.iter().sum::<usize>();
        before_b += cb.iter().sum::<usize>();
    }
    true
}

#[test]
fn dominance_is_a_partial_order() {
    for level in 1..=3 {
        for n in 0..=6 {
            let all = Multipartition::all(n, level);
            let rel: Vec<Vec<bool>> = all.iter().map(|a| all.iter().map(|b| dominates(a, b)).collect()).collect();
            for i in 0..all.len() {
                assert!(rel[i][i]);
                for j in 0..all.len() {
                    assert_eq!(rel[i][j], dominates_oracle(&all[i], &all[j]), "{} {}", all[i], all[j]);
                    if i != j && rel[i][j] {
                        assert!(!rel[j][i], "antisymmetry fails for {} {}", all[i], all[j]);
                    }
                    if !rel[i][j] {
                        continue;
                    }
                    for k in 0..all.len() {
                        if rel[j][k] {
                            assert!(rel[i][k], "transitivity fails for {} {} {}", all[i], all[j], all[k]);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn initial_tableaux() {
    let t = initial_tableau(&mp("3,1|1,1,1|4,2"));
    assert_eq!(t.to_string(), "(1,2,3/4 | 5/6/7 | 8,9,10,11/12,13)");
    assert!(t.is_standard());
    assert_eq!(t.perm(), Perm::identity(13));

    let empty = initial_tableau(&Multipartition::empty(2));
    assert_eq!(empty.n(), 0);
    assert!(empty.is_standard());

    let lam = mp("3,3,2,1|2|3,2");
    let t0 = Tableau::from_rows(&[
        vec![vec![1, 2, 3, 17, 18], vec![4, 5, 6], vec![7, 8], vec![9]],
        vec![vec![10, 11]],
        vec![vec![12, 13, 14], vec![15, 16]],
    ])
    .unwrap();
    assert_eq!(t0.restrict(16).unwrap(), initial_tableau(&lam));
}

#[test]
fn initial_tableau_dominates_its_shape() {
    for s in ["3,2", "2,2,1", "2|1,1", "1|2|1", "3|2"] {
        let shape = mp(s);
        let t0 = initial_tableau(&shape);
        for t in standard_tableaux(&shape) {
            assert!(dominates_tableaux(&t0, &t).unwrap());
            assert!(dominates_tableaux(&t, &t).unwrap());
        }
    }
}

#[test]
fn degrees() {
    let r = rd(2, &[0]);
    assert_eq!(tableau_degree(&initial_tableau(&Multipartition::empty(1)), &r).unwrap(), 0);
    assert_eq!(tableau_degree(&initial_tableau(&mp("2")), &r).unwrap(), 1);
    assert_eq!(tableau_degree(&initial_tableau(&mp("1,1")), &r).unwrap(), 0);
    let bad = Tableau::from_rows(&[vec![vec![2, 1]]]).unwrap();
    assert!(tableau_degree(&bad, &r).is_err());
}

/// `d_A` counted from scratch: nodes of residue `res A` in later rows.
fn node_degree_oracle(shape: &Multipartition, a: Node, r: &ResidueData) -> i64 {
    let i = r.res(a.l, a.r, a.c);
    let later = |x: &Node| (x.l, x.r) > (a.l, a.r) && r.res(x.l, x.r, x.c) == i;
    let mut add = 0;
    let mut rem = 0;
    for l in 1..=shape.level() {
        let comp = &shape.components()[l - 1];
        for row in 1..=comp.len() + 1 {
            let len = comp.get(row - 1).copied().unwrap_or(0);
            let above = if row == 1 { usize::MAX } else { comp[row - 2] };
            let below = comp.get(row).copied().unwrap_or(0);
            if len < above && later(&Node::new(l, row, len + 1)) {
                add += 1;
            }
            if len > 0 && len > below && later(&Node::new(l, row, len)) {
                rem += 1;
            }
        }
    }
    add - rem
}

#[test]
fn degree_is_the_sum_over_insertions() {
    for (e, ch) in [(2u32, vec![0i64]), (3, vec![0, 1]), (0, vec![0, 0]), (3, vec![0, 0, 1])] {
        let r = ResidueData::new(e, ch.clone()).unwrap();
        for n in 1..=5 {
            for shape in Multipartition::all(n, ch.len()) {
                for t in standard_tableaux(&shape) {
                    let mut deg = 0;
                    for k in 1..=n {
                        let sub = t.restricted_shape(k);
                        deg += node_degree_oracle(&sub, t.node_of(k).unwrap(), &r);
                    }
                    assert_eq!(tableau_degree(&t, &r).unwrap(), deg, "{t}");
                }
            }
        }
    }
}

#[test]
fn residue_sequences() {
    let r = rd(3, &[0, 0, 1]);
    assert_eq!(initial_tableau(&mp("1|1|1")).residue_sequence(&r), vec![0, 0, 1]);
    let r = rd(4, &[1]);
    let t = initial_tableau(&mp("3,2"));
    assert_eq!(t.residue_sequence(&r), vec![1, 2, 3, 0, 1]);
    let s = t.swap_entries(3);
    let mut expect = t.residue_sequence(&r);
    expect.swap(2, 3);
    assert_eq!(s.residue_sequence(&r), expect);
}

#[test]
fn rows_of_initial_tableaux_step_by_one() {
    let r = rd(3, &[0, 2]);
    for shape in Multipartition::all(6, 2) {
        let t = initial_tableau(&shape);
        let res = t.residue_sequence(&r);
        for k in 1..6 {
            if t.row_of_entry(k) == t.row_of_entry(k + 1) {
                assert_eq!(r.reduce(res[k - 1] + 1), res[k]);
            }
        }
    }
}

#[test]
fn strips_of_worked_example() {
    let r = rd(3, &[0, 0, 1]);
    let nu = mp("5,3,2,1|2|3,2");
    let rows: Vec<RowIndex> = removable_strips(&nu, 0, 2, &r).iter().map(|s| s.row).collect();
    assert_eq!(
        rows,
        vec![
            RowIndex { l: 1, r: 1 },
            RowIndex { l: 1, r: 4 },
            RowIndex { l: 2, r: 1 },
            RowIndex { l: 3, r: 1 },
            RowIndex { l: 3, r: 2 }
        ]
    );
    for s in removable_strips(&nu, 0, 2, &r) {
        assert!(s.len() <= 2 && !s.is_empty());
        let first = s.nodes[0];
        assert_eq!(r.res(first.l, first.r, first.c), 0);
    }
}

#[test]
fn strips_of_small_shapes() {
    let r = rd(0, &[0]);
    let s = removable_strips(&mp("1"), 0, 1, &r);
    assert_eq!(s.len(), 1);
    assert_eq!(s[0].nodes, vec![Node::new(1, 1, 1)]);
    for j in -3..=3 {
        let strips = removable_strips(&mp("2,2"), j, 1, &r);
        assert!(strips.iter().all(|s| s.row.r != 1), "j = {j}");
    }
}

#[test]
fn permutation_of_a_tableau() {
    let shape = mp("5,4");
    let t0 = initial_tableau(&shape);
    assert!(t0.perm().is_identity());
    let t = t0.act(&Perm::from_word(9, &[5, 6, 7, 8]));
    assert!(t.is_standard());
    assert_eq!(t.perm().reduced_word(), vec![5, 6, 7, 8]);
    assert_eq!(t0.act(&t.perm()), t);
}

#[test]
fn tableau_dominance_matches_bruhat_order() {
    for (n, level) in [(4, 1), (5, 1), (6, 1), (4, 2), (5, 2), (4, 3)] {
        for shape in Multipartition::all(n, level) {
            let tabs = standard_tableaux(&shape);
            for s in &tabs {
                for t in &tabs {
                    assert_eq!(
                        dominates_tableaux(s, t).unwrap(),
                        s.perm().bruhat_le(&t.perm()),
                        "{s} vs {t}"
                    );
                }
            }
        }
    }
}

#[test]
fn garnir_worked_example() {
    let r = rd(2, &[0, 0, 0]);
    let gd = garnir_data(&mp("3,1|7,5|2,1"), Node::new(2, 1, 3), &r).unwrap();
    assert_eq!((gd.b, gd.a, gd.c), (3, 2, 1));
    assert_eq!(gd.garnir_tableau.to_string(), "(1,2,3/4 | 5,6,8,9,10,11,14/7,12,13,15,16 | 17,18/19)");
    let reps: Vec<Vec<usize>> = gd.coset_reps.iter().map(|d| d.reduced_word()).collect();
    assert_eq!(reps, vec![vec![], vec![2], vec![2, 1]]);
    assert_eq!(gd.k_a, 8);
    // brick r swaps k_A+e(r-1) .. k_A+er-1 with the next brick
    assert_eq!(gd.bricks.len(), 2);
    assert_eq!(gd.bricks[0].images()[7..11], [10, 11, 8, 9]);
    assert_eq!(gd.bricks[1].images()[9..13], [12, 13, 10, 11]);
}

#[test]
fn garnir_degenerate_cases() {
    let r = rd(0, &[0]);
    let shape = mp("3,2");
    for a in garnir_nodes(&shape) {
        let gd = garnir_data(&shape, a, &r).unwrap();
        assert!(gd.belt.is_empty());
        assert_eq!((gd.b, gd.a, gd.c), (0, 0, 0));
        assert_eq!(gd.coset_reps.len(), 1);
    }
    // a short row leaves no brick in it
    let r = rd(3, &[0]);
    let gd = garnir_data(&mp("2,2"), Node::new(1, 1, 1), &r).unwrap();
    assert_eq!(gd.a, 0);
    assert!(garnir_data(&mp("2,1"), Node::new(1, 1, 2), &r).is_err());
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn coset_representatives_are_minimal() {
    for b in 0..=5 {
        for a in 0..=b {
            let reps = shuffle_coset_reps(b, a);
            assert_eq!(reps.len(), binomial(b, a));
            for d in &reps {
                let inv = d.inverse();
                let im = inv.images();
                assert!(im[..a].windows(2).all(|w| w[0] < w[1]));
                assert!(im[a..].windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
}

#[test]
fn standard_tableaux_counts() {
    assert_eq!(standard_tableaux(&mp("2|1|3|∅|∅")).len(), 60);
    assert_eq!(mp("2|1|3|∅|∅").count_standard(), 60);
    assert_eq!(standard_tableaux(&mp("3,2")).len(), 5);
    assert_eq!(standard_tableaux(&Multipartition::empty(2)).len(), 1);
}

#[test]
fn parse_rejects_bad_input() {
    assert!(Multipartition::parse("1,2").is_err());
    assert!(Multipartition::parse("a|1").is_err());
    assert_eq!(mp("∅|2,1").components(), &[vec![], vec![2, 1]]);
    assert_eq!(mp("-|0|"), Multipartition::empty(3));
}

fn arb_multipartition() -> impl Strategy<Value = Multipartition> {
    (1usize..=3, 0usize..=7).prop_flat_map(|(level, n)| {
        (Just(level), proptest::sample::select(Multipartition::all(n, level)))
            .prop_map(|(_, m)| m)
    })
}

proptest! {
    #[test]
    fn display_round_trips(m in arb_multipartition()) {
        let s = m.to_string();
        prop_assert_eq!(Multipartition::parse(&s).unwrap(), m.clone());
        let j = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(serde_json::from_str::<Multipartition>(&j).unwrap(), m);
    }

    #[test]
    fn add_and_remove_nodes(m in arb_multipartition()) {
        let (add, rem) = boundary_nodes(&m);
        prop_assert!(add.iter().all(|a| !rem.contains(a)));
        prop_assert_eq!(add.len(), rem.len() + m.level());
        for a in &rem {
            let smaller = m.without_node(*a).unwrap();
            prop_assert_eq!(smaller.with_node(*a).unwrap(), m.clone());
        }
        for a in &add {
            let bigger = m.with_node(*a).unwrap();
            prop_assert_eq!(bigger.without_node(*a).unwrap(), m.clone());
        }
    }

    #[test]
    fn first_node_residue_is_the_charge(e in prop_oneof![Just(0u32), 2u32..7], charge in proptest::collection::vec(-5i64..5, 1..4)) {
        let r = ResidueData::new(e, charge.clone()).unwrap();
        for (l, k) in charge.iter().enumerate() {
            prop_assert_eq!(r.res(l + 1, 1, 1), r.reduce(*k));
        }
    }

    #[test]
    fn counting_matches_enumeration(m in arb_multipartition()) {
        let tabs = standard_tableaux(&m);
        prop_assert_eq!(tabs.len() as u128, m.count_standard());
        prop_assert!(tabs.iter().all(|t| t.is_standard()));
        prop_assert_eq!(&tabs[0], &initial_tableau(&m));
    }
}
