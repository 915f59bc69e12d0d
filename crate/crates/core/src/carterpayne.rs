//! Cyclotomic Carter-Payne pairs and the homomorphisms they induce.
//!
//! For a pair `(λ, μ)` with `ν = λ ∪ μ`, a dotted element `L = y_{n+g_0} ⋯ y_{n+g_z} e^λ_μ`
//! acting on `S^ν` maps a subquotient isomorphic to `S^λ` into one isomorphic to `S^μ`.
//! Everything here is combinatorial except [`induce`], which runs the straightening engine
//! on a lazily built `S^ν`.

use crate::combinat::{
    dominates, initial_tableau, removable_strips, strictly_dominates, tableau_degree, Multipartition, Node,
    ResidueData, RowIndex, Strip, Tableau,
};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::klr::Perm;
use crate::specht::{vec_scale, Op, SparseMatrix, SpechtModule, Vector, DEFAULT_CAP_STEPS};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub const DEFAULT_CAP_STD: u128 = 1_000_000;

/// Why a pair of multipartitions is not a Carter-Payne pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    GammaZero,
    ResidueSetMismatch,
    ResidueCountMismatch,
    TooManyResidues,
    RowCondition,
    StripMembership,
}

impl Rejection {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rejection::GammaZero => "gamma_zero",
            Rejection::ResidueSetMismatch => "residue_set_mismatch",
            Rejection::ResidueCountMismatch => "residue_count_mismatch",
            Rejection::TooManyResidues => "too_many_residues",
            Rejection::RowCondition => "row_condition",
            Rejection::StripMembership => "strip_membership",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RejectionInfo {
    pub reason: Rejection,
    pub detail: String,
}

impl From<RejectionInfo> for Error {
    fn from(r: RejectionInfo) -> Self {
        Error::Rejected(format!("{}: {}", r.reason.as_str(), r.detail))
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum PairCheck {
    Pair(Box<CPCertificate>),
    Rejected(RejectionInfo),
}

impl PairCheck {
    pub fn certificate(self) -> Result<CPCertificate> {
        match self {
            PairCheck::Pair(c) => Ok(*c),
            PairCheck::Rejected(r) => Err(r.into()),
        }
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, PairCheck::Pair(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaComponents {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub delta: i64,
}

/// A consecutive block `j, j+1, …` of `J` starting at `j ∈ J*`.
#[derive(Clone, Debug, Serialize)]
pub struct Run {
    pub start: i64,
    pub residues: Vec<i64>,
}

/// One step `t_k → t_{k+1}` of the tableau recursion.
#[derive(Clone, Debug, Serialize)]
pub struct TkStep {
    pub k: usize,
    pub strip: Strip,
    pub row: RowIndex,
    pub j: i64,
    pub f: usize,
    pub g: usize,
    /// `η_h` for `f ≤ h ≤ g`
    pub eta: Vec<usize>,
    pub l: Vec<usize>,
    pub m: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CPCertificate {
    pub lambda: Multipartition,
    pub mu: Multipartition,
    pub nu: Multipartition,
    pub rd: ResidueData,
    pub n: usize,
    pub gamma: usize,
    pub j_set: Vec<i64>,
    pub j_star: Vec<i64>,
    pub runs: Vec<Run>,
    pub gamma_j: BTreeMap<i64, usize>,
    pub alpha_lambda: BTreeMap<i64, Node>,
    pub alpha_mu: BTreeMap<i64, Node>,
    /// `i_h = res(n+h)` in the anchored tableau
    pub tail: Vec<i64>,
    pub anchored_lambda: Tableau,
    pub anchored_mu: Tableau,
    /// strips `C_0 … C_z` where a step happens
    pub step_strips: Vec<Strip>,
    /// strips in the rows `row α_μ(j)` that only receive entries
    pub end_strips: Vec<Strip>,
    pub steps: Vec<TkStep>,
    /// `t_0 … t_{z+1}`
    pub tableaux: Vec<Tableau>,
    pub sigmas: Vec<Multipartition>,
    /// `w_0 … w_{z+1}` together with the reduced words fixed by the recursion
    pub w: Vec<Perm>,
    pub w_words: Vec<Vec<usize>>,
    pub components: DeltaComponents,
    /// `δ` recomputed from tableau degrees and `deg L`
    pub delta_bookkeeping: i64,
    pub mu_dominates_lambda: bool,
    /// strips of different runs share a row
    pub interleaved: bool,
    /// `w_words` come from the stepwise `s(l, m)` factorisation rather than canonical words
    pub stepwise_words: bool,
}

impl CPCertificate {
    pub fn z(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn delta(&self) -> i64 {
        self.components.delta
    }

    /// `g_0, …, g_z`.
    pub fn g_list(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.g).collect()
    }

    /// Exponent of `y_{n+g}` for `g = 1..=γ` in the product form of `θ`.
    pub fn theta_exponents(&self) -> Vec<usize> {
        let mut out = vec![0; self.gamma];
        for g in self.g_list() {
            out[g - 1] += 1;
        }
        out
    }

    /// Exponents in the collected form: `c_g` counts the step strips of the run of `i_g`
    /// whose rightmost node has residue `i_g`.
    pub fn theta_exponents_collected(&self) -> Vec<usize> {
        self.tail
            .iter()
            .map(|&ig| {
                self.step_strips
                    .iter()
                    .filter(|c| {
                        let run = self.runs.iter().find(|r| r.start == c.j).expect("run");
                        run.residues.contains(&ig) && c.last_residue(&self.rd) == ig
                    })
                    .count()
            })
            .collect()
    }

    /// `θ` as a list of dots `y_{n+g}` (product form, in step order).
    pub fn theta_ops(&self) -> Vec<Op> {
        self.g_list().into_iter().map(|g| Op::Y(self.n + g)).collect()
    }

    pub fn theta_collected_ops(&self) -> Vec<Op> {
        let mut out = Vec::new();
        for (g, &c) in self.theta_exponents_collected().iter().enumerate() {
            out.extend(std::iter::repeat(Op::Y(self.n + g + 1)).take(c));
        }
        out
    }

    /// `t_{z+1}↓n`, the tableau carrying the leading coefficient of `Θ(v_{t^λ})`.
    pub fn leading_target(&self) -> Result<Tableau> {
        self.tableaux.last().expect("t_0").restrict(self.n)
    }
}

fn le_j(j: i64, i: i64, jset: &BTreeSet<i64>, rd: &ResidueData) -> bool {
    let mut x = j;
    for _ in 0..=jset.len() {
        if !jset.contains(&x) {
            return false;
        }
        if x == i {
            return true;
        }
        x = rd.shift(x, 1);
    }
    false
}

fn rejected<T>(reason: Rejection, detail: String) -> Result<std::result::Result<T, RejectionInfo>> {
    Ok(Err(RejectionInfo { reason, detail }))
}

/// Fills `t^σ` and puts `n+h` on `place[h-1]`.
fn extend_initial(sigma: &Multipartition, nu: &Multipartition, place: &[Node]) -> Result<Tableau> {
    let n = sigma.size();
    let ts = initial_tableau(sigma);
    let mut map: HashMap<Node, usize> = sigma.nodes().into_iter().zip(ts.entries().iter().copied()).collect();
    for (h, node) in place.iter().enumerate() {
        map.insert(*node, n + h + 1);
    }
    let entries: Vec<usize> = nu
        .nodes()
        .iter()
        .map(|node| map.get(node).copied().ok_or_else(|| Error::internal(format!("node {node} left empty"))))
        .collect::<Result<_>>()?;
    Tableau::new(nu.clone(), entries)
}

/// `t^ν_σ`: `t^σ` with `n+h` on the node of `ν \ σ` of residue `tail[h-1]`.
pub fn anchored_tableau(sigma: &Multipartition, nu: &Multipartition, tail: &[i64], rd: &ResidueData) -> Result<Tableau> {
    let diff = nu.difference(sigma);
    let mut place = Vec::new();
    for &i in tail {
        let hits: Vec<Node> = diff.iter().copied().filter(|a| rd.res(a.l, a.r, a.c) == i).collect();
        if hits.len() != 1 {
            return Err(Error::internal(format!("{} nodes of residue {i} in ν\\σ", hits.len())));
        }
        place.push(hits[0]);
    }
    extend_initial(sigma, nu, &place)
}

/// `w` with `t = s·w`, i.e. `w(t(x)) = s(x)` for every node `x`.
fn perm_between(s: &Tableau, t: &Tableau) -> Result<Perm> {
    let mut img = vec![0; t.n()];
    for (a, b) in t.entries().iter().zip(s.entries()) {
        img[a - 1] = *b;
    }
    Perm::from_images(img)
}

fn apply_word(t: &Tableau, word: &[usize]) -> Tableau {
    word.iter().fold(t.clone(), |t, &r| t.swap_entries(r))
}

pub fn cp_pair_check(lambda: &Multipartition, mu: &Multipartition, rd: &ResidueData) -> Result<PairCheck> {
    cp_pair_check_with_tail(lambda, mu, rd, None)
}

/// The part of a pair that the pair condition alone fixes.
struct PairData {
    n: usize,
    nu: Multipartition,
    gamma: usize,
    jset: BTreeSet<i64>,
    alpha_lambda: BTreeMap<i64, Node>,
    alpha_mu: BTreeMap<i64, Node>,
    j_star: Vec<i64>,
    runs: Vec<Run>,
    gamma_j: BTreeMap<i64, usize>,
    components: DeltaComponents,
}

fn pair_data(
    lambda: &Multipartition,
    mu: &Multipartition,
    rd: &ResidueData,
) -> Result<std::result::Result<PairData, RejectionInfo>> {
    if lambda.level() != rd.level() || mu.level() != rd.level() {
        return Err(Error::input(format!(
            "levels of {lambda} and {mu} must equal the charge length {}",
            rd.level()
        )));
    }
    if lambda.size() != mu.size() {
        return Err(Error::input(format!("|{lambda}| ≠ |{mu}|")));
    }
    let n = lambda.size();
    let nu = lambda.union(mu);
    let diff_l = nu.difference(lambda);
    let diff_m = nu.difference(mu);
    let gamma = diff_l.len();
    if gamma == 0 {
        return rejected(Rejection::GammaZero, "λ = μ".into());
    }
    let res = |a: &Node| rd.res(a.l, a.r, a.c);
    let jset: BTreeSet<i64> = diff_l.iter().map(res).collect();
    let jset_m: BTreeSet<i64> = diff_m.iter().map(res).collect();
    if jset != jset_m {
        return rejected(Rejection::ResidueSetMismatch, format!("res(ν\\λ) = {jset:?}, res(ν\\μ) = {jset_m:?}"));
    }
    if jset.len() != gamma {
        return rejected(Rejection::ResidueCountMismatch, format!("|J| = {} but |ν\\λ| = {gamma}", jset.len()));
    }
    if rd.e > 0 && jset.len() >= rd.e as usize {
        return rejected(Rejection::TooManyResidues, format!("|J| = {} ≥ e = {}", jset.len(), rd.e));
    }
    let alpha_lambda: BTreeMap<i64, Node> = diff_l.iter().map(|a| (res(a), *a)).collect();
    let alpha_mu: BTreeMap<i64, Node> = diff_m.iter().map(|a| (res(a), *a)).collect();
    for &j in &jset {
        for &i in &jset {
            if !le_j(j, i, &jset, rd) {
                continue;
            }
            let (lj, li) = (alpha_lambda[&j].row(), alpha_lambda[&i].row());
            let (mj, mi) = (alpha_mu[&j].row(), alpha_mu[&i].row());
            if !(lj <= li && mj == mi && li <= mi) {
                return rejected(Rejection::RowCondition, format!("j = {j}, i = {i}"));
            }
            let a = alpha_lambda[&i];
            let below = nu.row_len(a.l, a.r + 1);
            let in_strip = (1..=a.c).any(|c| rd.res(a.l, a.r, c) == j && below < c);
            if !in_strip {
                return rejected(Rejection::StripMembership, format!("α_λ({i}) = {a} is in no removable {j}-strip"));
            }
        }
    }
    if rd.e == 2 && gamma != 1 {
        return Err(Error::internal(format!("e = 2 pair with γ = {gamma}")));
    }
    let j_star: Vec<i64> = jset.iter().copied().filter(|&j| !jset.contains(&rd.shift(j, -1))).collect();
    let runs: Vec<Run> = j_star
        .iter()
        .map(|&j| {
            let mut residues = vec![j];
            let mut x = rd.shift(j, 1);
            while jset.contains(&x) && residues.len() < jset.len() {
                residues.push(x);
                x = rd.shift(x, 1);
            }
            Run { start: j, residues }
        })
        .collect();
    let gamma_j: BTreeMap<i64, usize> = runs.iter().map(|r| (r.start, r.residues.len())).collect();

    // δ = a - b + 2c - d
    let in_range = |i: i64, row: RowIndex| alpha_lambda[&i].row() < row && row <= alpha_mu[&i].row();
    let a = nu.addable().iter().filter(|x| jset.contains(&res(x)) && in_range(res(x), x.row())).count() as i64;
    let b = nu.removable().iter().filter(|x| jset.contains(&res(x)) && in_range(res(x), x.row())).count() as i64;
    let c = runs
        .iter()
        .map(|r| {
            removable_strips(&nu, r.start, gamma_j[&r.start], rd)
                .iter()
                .filter(|s| in_range(r.start, s.row))
                .count() as i64
        })
        .sum::<i64>();
    let rows_l: BTreeSet<RowIndex> = alpha_lambda.values().map(|a| a.row()).collect();
    let rows_m: BTreeSet<RowIndex> = alpha_mu.values().map(|a| a.row()).collect();
    let d = rows_l.len() as i64 - rows_m.len() as i64;
    let components = DeltaComponents { a, b, c, d, delta: a - b + 2 * c - d };
    Ok(Ok(PairData { n, nu, gamma, jset, alpha_lambda, alpha_mu, j_star, runs, gamma_j, components }))
}

/// `(a, b, c, d, δ)` for a pair, computed from the pair condition without building the `t_k`.
/// `None` when `(λ, μ)` is not a pair.
pub fn pair_delta(lambda: &Multipartition, mu: &Multipartition, rd: &ResidueData) -> Result<Option<DeltaComponents>> {
    Ok(pair_data(lambda, mu, rd)?.ok().map(|d| d.components))
}

/// As [`cp_pair_check`], optionally forcing the residue order `i_1, …, i_γ` of the entries
/// `n+1, …, n+γ` (used when the anchored tableau comes from another pair).
pub fn cp_pair_check_with_tail(
    lambda: &Multipartition,
    mu: &Multipartition,
    rd: &ResidueData,
    tail: Option<&[i64]>,
) -> Result<PairCheck> {
    let PairData { n, nu, gamma, jset, alpha_lambda, alpha_mu, j_star, runs, gamma_j, components } =
        match pair_data(lambda, mu, rd)? {
            Ok(d) => d,
            Err(info) => return Ok(PairCheck::Rejected(info)),
        };
    let res = |a: &Node| rd.res(a.l, a.r, a.c);

    // residue order of n+1, …, n+γ
    let tail: Vec<i64> = match tail {
        Some(t) => {
            let set: BTreeSet<i64> = t.iter().copied().collect();
            if set != jset || t.len() != gamma {
                return Err(Error::input(format!("tail {t:?} is not an ordering of J = {jset:?}")));
            }
            t.to_vec()
        }
        None => {
            let mut order: Vec<&Run> = runs.iter().collect();
            order.sort_by_key(|r| (alpha_lambda[&r.start].row(), r.start));
            order.iter().flat_map(|r| r.residues.iter().copied()).collect()
        }
    };
    for r in &runs {
        let p = tail.iter().position(|&x| x == r.start).expect("run start in tail");
        if tail.get(p..p + r.residues.len()) != Some(&r.residues[..]) {
            return Err(Error::input(format!("tail {tail:?} splits the run starting at {}", r.start)));
        }
    }
    let place_l: Vec<Node> = tail.iter().map(|i| alpha_lambda[i]).collect();
    let place_m: Vec<Node> = tail.iter().map(|i| alpha_mu[i]).collect();
    let anchored_lambda = extend_initial(lambda, &nu, &place_l)?;
    let anchored_mu = extend_initial(mu, &nu, &place_m)?;
    if !anchored_lambda.is_standard() || !anchored_mu.is_standard() {
        return Err(Error::internal(format!("anchored tableaux for ({lambda}, {mu}) are not standard")));
    }

    // strips: steps in the half-open ranges, receivers in the rows of ν\μ
    let run_pos = |j: i64| tail.iter().position(|&x| x == j).unwrap_or(0);
    let mut step_strips = Vec::new();
    let mut end_strips = Vec::new();
    for r in &runs {
        let lo = alpha_lambda[&r.start].row();
        let hi = alpha_mu[&r.start].row();
        for s in removable_strips(&nu, r.start, gamma_j[&r.start], rd) {
            if lo <= s.row && s.row < hi {
                step_strips.push(s);
            } else if s.row == hi {
                end_strips.push(s);
            }
        }
    }
    step_strips.sort_by_key(|s| (s.row, run_pos(s.j)));
    let mut all_strips: Vec<(bool, Strip)> = step_strips
        .iter()
        .map(|s| (true, s.clone()))
        .chain(end_strips.iter().map(|s| (false, s.clone())))
        .collect();
    all_strips.sort_by_key(|(_, s)| (s.row, run_pos(s.j)));
    let interleaved = step_strips.windows(2).any(|w| w[0].row == w[1].row && w[0].j != w[1].j);

    // t_0, …, t_{z+1}
    let mut tableaux = vec![anchored_lambda.clone()];
    let mut steps = Vec::new();
    let tnu = initial_tableau(&nu);
    for (k, strip) in step_strips.iter().enumerate() {
        let t = tableaux.last().expect("t_k").clone();
        let f = run_pos(strip.j) + 1;
        let len = gamma_j[&strip.j];
        if t.row_of_entry(n + f) != Some(strip.row) {
            return Err(Error::internal(format!("step {k}: n+{f} is not in row {}", strip.row)));
        }
        let g = (f..f + len).filter(|&h| t.row_of_entry(n + h) == Some(strip.row)).max().expect("f");
        let pos_in_list = all_strips.iter().position(|(st, s)| *st && s == strip).expect("step strip");
        let later: Vec<Node> = all_strips[pos_in_list + 1..].iter().flat_map(|(_, s)| s.nodes.clone()).collect();
        let mut eta = Vec::new();
        for h in f..=g {
            let ih = tail[h - 1];
            let e = later
                .iter()
                .filter(|x| res(x) == ih)
                .filter_map(|x| t.entry(*x))
                .min()
                .ok_or_else(|| Error::internal(format!("step {k}: no η for h = {h}")))?;
            eta.push(e);
        }
        let mut next_entries = t.entries().to_vec();
        for (idx, h) in (f..=g).enumerate() {
            let (x, y) = (eta[idx], n + h);
            for v in next_entries.iter_mut() {
                if *v == x {
                    *v = y;
                } else if *v == y {
                    *v = x;
                }
            }
        }
        let next = Tableau::new(nu.clone(), next_entries)?;
        if !next.is_standard() {
            return Err(Error::internal(format!(
                "t_{} is not standard (k = {k}, h = {f}..{g}, strip in row {} of length {len})",
                k + 1,
                strip.row
            )));
        }
        steps.push(TkStep { k, strip: strip.clone(), row: strip.row, j: strip.j, f, g, eta, l: Vec::new(), m: Vec::new() });
        tableaux.push(next);
    }
    let sigmas: Vec<Multipartition> = tableaux.iter().map(|t| t.restricted_shape(n)).collect();
    if sigmas.last() != Some(mu) {
        return Err(Error::internal(format!("t_{{z+1}} restricts to {} instead of {mu}", sigmas.last().expect("σ"))));
    }
    let anchored: Vec<Tableau> =
        sigmas.iter().map(|s| anchored_tableau(s, &nu, &tail, rd)).collect::<Result<_>>()?;
    let mut w = Vec::new();
    for (t, s) in tableaux.iter().zip(&anchored) {
        let p = perm_between(s, t)?;
        if (n + 1..=n + gamma).any(|x| p.apply(x) != x) {
            return Err(Error::internal("w_k moves an entry above n"));
        }
        w.push(Perm::from_images(p.images()[..n].to_vec())?);
    }
    // the words s(l_g, m_g) ⋯ s(l_f, m_f) w_k; with several runs these need not exist
    let mut w_words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut failure = None;
    for k in 0..steps.len() {
        let t = &tableaux[k];
        let st = &mut steps[k];
        st.l = (st.f..=st.g).map(|h| tnu.entry(t.node_of(n + h).expect("entry")).expect("node")).collect();
        st.m = st.eta.iter().map(|&x| anchored[k].entry(t.node_of(x).expect("entry")).expect("node")).collect();
        if failure.is_some() {
            continue;
        }
        if let Some((l, m)) = st.l.iter().zip(&st.m).find(|(l, m)| l > m) {
            failure = Some(format!("step {k}: l = {l} > m = {m}"));
            continue;
        }
        let mut word = Vec::new();
        for (l, m) in st.l.iter().zip(&st.m).rev() {
            word.extend(*l..*m);
        }
        word.extend(&w_words[k]);
        let added: usize = st.l.iter().zip(&st.m).map(|(l, m)| m - l).sum();
        if apply_word(&anchored[k + 1], &word) != tableaux[k + 1] {
            failure = Some(format!("the word fixed for w_{} does not produce t_{}", k + 1, k + 1));
        } else if word.len() != w[k + 1].length() || w[k + 1].length() != w[k].length() + added {
            failure = Some(format!("the word fixed for w_{} is not reduced", k + 1));
        } else {
            w_words.push(word);
        }
    }
    let stepwise_words = failure.is_none();
    if let Some(f) = failure {
        if runs.len() == 1 {
            return Err(Error::internal(f));
        }
        w_words = w.iter().map(|p| p.reduced_word()).collect();
    }
    let deg = |t: &Tableau| tableau_degree(t, rd);
    let delta_bookkeeping = (deg(&anchored_lambda)? - deg(&initial_tableau(lambda))?)
        - (deg(&anchored_mu)? - deg(&initial_tableau(mu))?)
        + 2 * steps.len() as i64;
    Ok(PairCheck::Pair(Box::new(CPCertificate {
        lambda: lambda.clone(),
        mu: mu.clone(),
        nu,
        rd: rd.clone(),
        n,
        gamma,
        j_set: jset.into_iter().collect(),
        j_star,
        runs,
        gamma_j,
        alpha_lambda,
        alpha_mu,
        tail,
        anchored_lambda,
        anchored_mu,
        step_strips,
        end_strips,
        steps,
        tableaux,
        sigmas,
        w,
        w_words,
        components,
        delta_bookkeeping,
        mu_dominates_lambda: strictly_dominates(mu, lambda),
        interleaved,
        stepwise_words,
    })))
}

pub fn delta_components(cert: &CPCertificate) -> DeltaComponents {
    cert.components
}

/// `a + b` for a pair `λ, μ →_i ν` differing in one node.
pub fn one_node_delta(lambda: &Multipartition, mu: &Multipartition, rd: &ResidueData) -> Result<i64> {
    let nu = lambda.union(mu);
    let dl = nu.difference(lambda);
    let dm = nu.difference(mu);
    if dl.len() != 1 || dm.len() != 1 || lambda.size() != mu.size() {
        return Err(Error::input(format!("({lambda}, {mu}) is not a one-node pair")));
    }
    let (al, am) = (dl[0], dm[0]);
    let i = rd.res(al.l, al.r, al.c);
    if rd.res(am.l, am.r, am.c) != i || !strictly_dominates(mu, lambda) {
        return Err(Error::input(format!("({lambda}, {mu}) is not a one-node pair")));
    }
    let count = |nodes: Vec<Node>| {
        nodes
            .iter()
            .filter(|x| rd.res(x.l, x.r, x.c) == i && al.row() < x.row() && x.row() <= am.row())
            .count() as i64
    };
    Ok(count(nu.addable()) + count(nu.removable()))
}

/// A degree-`δ` homomorphism `S^λ⟨δ⟩ → S^μ` as a matrix in the standard bases.
#[derive(Clone, Debug)]
pub struct HomMap {
    pub source: Multipartition,
    pub target: Multipartition,
    pub degree: i64,
    /// column `t` is the image of the `t`-th standard `λ`-tableau
    pub matrix: SparseMatrix,
}

impl HomMap {
    pub fn is_zero(&self) -> bool {
        self.matrix.cols.iter().all(|c| c.is_empty())
    }

    /// Coefficient of the `row`-th basis vector in the image of the `col`-th one.
    pub fn entry(&self, row: usize, col: usize) -> Int {
        self.matrix.cols[col]
            .iter()
            .find(|(i, _)| *i as usize == row)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Int::zero)
    }
}

impl Serialize for HomMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            source: &'a Multipartition,
            target: &'a Multipartition,
            degree: i64,
            rows: usize,
            cols: usize,
            basis_order: &'static str,
            entries: Vec<(usize, usize, String)>,
        }
        Repr {
            source: &self.source,
            target: &self.target,
            degree: self.degree,
            rows: self.matrix.rows,
            cols: self.matrix.ncols(),
            basis_order: "standard tableaux sorted by reading-order entry vector",
            entries: self.matrix.triples().into_iter().map(|(i, j, c)| (i, j, c.to_string())).collect(),
        }
        .serialize(s)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_std: u128,
    pub max_steps: u64,
    pub parallel: bool,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_std: DEFAULT_CAP_STD, max_steps: DEFAULT_CAP_STEPS, parallel: true }
    }
}

/// Data needed to induce a map from a dotted element acting on `S^ν`.
#[derive(Clone, Debug)]
pub struct InduceInput {
    pub lambda: Multipartition,
    pub mu: Multipartition,
    pub nu: Multipartition,
    pub rd: ResidueData,
    pub anchored_lambda: Tableau,
    pub anchored_mu: Tableau,
    /// the dots of `L`; the idempotent part is given by `tail`
    pub theta: Vec<Op>,
    pub tail: Vec<i64>,
}

impl InduceInput {
    pub fn from_certificate(cert: &CPCertificate) -> Self {
        InduceInput {
            lambda: cert.lambda.clone(),
            mu: cert.mu.clone(),
            nu: cert.nu.clone(),
            rd: cert.rd.clone(),
            anchored_lambda: cert.anchored_lambda.clone(),
            anchored_mu: cert.anchored_mu.clone(),
            theta: cert.theta_ops(),
            tail: cert.tail.clone(),
        }
    }

    /// `(deg t^ν_λ − deg t^λ) − (deg t^ν_μ − deg t^μ) + deg L`.
    pub fn degree(&self) -> Result<i64> {
        let deg = |t: &Tableau| tableau_degree(t, &self.rd);
        Ok((deg(&self.anchored_lambda)? - deg(&initial_tableau(&self.lambda))?)
            - (deg(&self.anchored_mu)? - deg(&initial_tableau(&self.mu))?)
            + 2 * self.theta.len() as i64)
    }
}

struct Projector<'a> {
    m: &'a SpechtModule,
    input: &'a InduceInput,
    mu_index: HashMap<Tableau, usize>,
    anchor_mu: u32,
    tail_nodes: Vec<Node>,
    cache: HashMap<u32, Vector>,
}

impl<'a> Projector<'a> {
    fn n(&self) -> usize {
        self.input.lambda.size()
    }

    fn drop_hat(&self, x: &[(u32, Int)]) -> Vector {
        let n = self.n();
        x.iter()
            .filter(|(id, _)| dominates(&self.input.mu, &self.m.tableau(*id).restricted_shape(n)))
            .cloned()
            .collect()
    }

    fn tail_ok(&self, id: u32) -> bool {
        let t = self.m.tableau(id);
        let n = self.n();
        self.tail_nodes.iter().enumerate().all(|(h, node)| t.entry(*node) == Some(n + h + 1))
    }

    /// `v_{t^ν_μ} ψ_{d(u↓n)}` with the hat terms removed.
    fn lifted(&mut self, u: u32) -> Result<Vector> {
        if let Some(v) = self.cache.get(&u) {
            return Ok(v.clone());
        }
        let r = self.m.tableau(u).restrict(self.n())?;
        let ops: Vec<Op> = r.perm().reduced_word().into_iter().map(Op::Psi).collect();
        let x = self.m.act_ops(&self.m.basis_vector(self.anchor_mu), &ops)?;
        let v = self.drop_hat(&x);
        self.cache.insert(u, v.clone());
        Ok(v)
    }

    /// Coordinates in `S^μ` of the class of `x` modulo the hat submodule.
    fn project(&mut self, x: &[(u32, Int)]) -> Result<Vector> {
        let mut rest: BTreeMap<u32, Int> = self.drop_hat(x).into_iter().collect();
        let mut out: BTreeMap<u32, Int> = BTreeMap::new();
        while !rest.is_empty() {
            let (&u, c) = rest
                .iter()
                .max_by_key(|(id, _)| (self.m.length(**id), std::cmp::Reverse(**id)))
                .expect("nonempty");
            let c = c.clone();
            if !self.tail_ok(u) {
                return Err(Error::internal(format!(
                    "image escapes the filtration at {}",
                    self.m.tableau(u)
                )));
            }
            let lu = self.lifted(u)?;
            let lead_ok = lu.iter().any(|(id, k)| *id == u && k.is_one())
                && lu.iter().all(|(id, _)| *id == u || self.m.length(*id) < self.m.length(u));
            if !lead_ok {
                return Err(Error::internal(format!("lift of {} is not unitriangular", self.m.tableau(u))));
            }
            for (id, k) in vec_scale(&lu, &c) {
                let e = rest.entry(id).or_insert_with(Int::zero);
                *e = &*e - &k;
                if e.is_zero() {
                    rest.remove(&id);
                }
            }
            let r = self.m.tableau(u).restrict(self.n())?;
            let idx = self.mu_index[&r] as u32;
            *out.entry(idx).or_insert_with(Int::zero) += &c;
        }
        Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

fn induce_columns(input: &InduceInput, cols: &[Tableau], mu_basis: &[Tableau], caps: &Caps) -> Result<Vec<Vector>> {
    let m = SpechtModule::lazy(&input.nu, &input.rd)?.with_cap_steps(caps.max_steps);
    let a_l = m.index_of(&input.anchored_lambda)?;
    let a_m = m.index_of(&input.anchored_mu)?;
    let n = input.lambda.size();
    let tail_nodes: Vec<Node> =
        (1..=input.tail.len()).map(|h| input.anchored_mu.node_of(n + h).expect("tail entry")).collect();
    let mut proj = Projector {
        m: &m,
        input,
        mu_index: mu_basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect(),
        anchor_mu: a_m,
        tail_nodes,
        cache: HashMap::new(),
    };
    let mut full_tail = vec![None; n];
    full_tail.extend(input.tail.iter().map(|&i| Some(i)));
    let mut out = Vec::with_capacity(cols.len());
    for s in cols {
        let ops: Vec<Op> = s.perm().reduced_word().into_iter().map(Op::Psi).collect();
        let x = m.act_ops(&m.basis_vector(a_l), &ops)?;
        let x = m.act_ops(&x, &input.theta)?;
        let x: Vector = x
            .into_iter()
            .filter(|(id, _)| {
                m.residue_sequence(*id).iter().zip(&full_tail).all(|(r, t)| t.map_or(true, |t| *r == t))
            })
            .collect();
        out.push(proj.project(&x)?);
    }
    Ok(out)
}

/// The homomorphism induced by right multiplication with `L` on `S^ν`.
pub fn induce(input: &InduceInput, caps: &Caps) -> Result<HomMap> {
    let count = input.nu.count_standard();
    if count > caps.max_std {
        return Err(Error::ResourceCap(format!("#Std({}) = {count} exceeds {}", input.nu, caps.max_std)));
    }
    let src = crate::combinat::standard_tableaux(&input.lambda);
    let tgt = crate::combinat::standard_tableaux(&input.mu);
    let cols: Vec<Vector> = if caps.parallel && src.len() > 32 {
        let chunk = src.len().div_ceil(rayon::current_num_threads().max(1)).max(16);
        let parts: Vec<Result<Vec<Vector>>> =
            src.par_chunks(chunk).map(|c| induce_columns(input, c, &tgt, caps)).collect();
        let mut cols = Vec::with_capacity(src.len());
        for p in parts {
            cols.extend(p?);
        }
        cols
    } else {
        induce_columns(input, &src, &tgt, caps)?
    };
    Ok(HomMap {
        source: input.lambda.clone(),
        target: input.mu.clone(),
        degree: input.degree()?,
        matrix: SparseMatrix { rows: tgt.len(), cols },
    })
}

pub fn induced_hom(cert: &CPCertificate, caps: &Caps) -> Result<HomMap> {
    let h = induce(&InduceInput::from_certificate(cert), caps)?;
    if h.degree != cert.delta() {
        return Err(Error::internal(format!(
            "δ from degrees is {} but a-b+2c-d = {}",
            h.degree,
            cert.delta()
        )));
    }
    Ok(h)
}

/// Coefficient of `v_{t_{z+1}↓n}` in `Θ(v_{t^λ})`.
pub fn leading_coefficient(cert: &CPCertificate, h: &HomMap) -> Result<Int> {
    let target = cert.leading_target()?;
    let basis = crate::combinat::standard_tableaux(&cert.mu);
    let row = basis
        .iter()
        .position(|t| *t == target)
        .ok_or_else(|| Error::internal(format!("{target} is not a standard μ-tableau")))?;
    Ok(h.entry(row, 0))
}

/// One term `v_{start} ψ_word` of a closed-form expansion.
#[derive(Clone, Debug, Serialize)]
pub struct PushTerm {
    pub chain: Vec<Multipartition>,
    pub start: Tableau,
    pub target: Tableau,
    pub word: Vec<usize>,
}

/// `t^ν_σ` for a one-node removal `σ →_i ν`.
pub fn one_node_tableau(sigma: &Multipartition, nu: &Multipartition) -> Result<Tableau> {
    let diff = nu.difference(sigma);
    if diff.len() != 1 || !sigma.is_subset(nu) {
        return Err(Error::input(format!("{sigma} is not ν minus one node for ν = {nu}")));
    }
    extend_initial(sigma, nu, &diff)
}

/// The chain expansion of `v_{t^ν_σ} y_{n+1}^k`.
pub fn multipush_expand(
    sigma: &Multipartition,
    nu: &Multipartition,
    i: i64,
    k: usize,
    rd: &ResidueData,
) -> Result<Vec<PushTerm>> {
    let diff = nu.difference(sigma);
    if diff.len() != 1 || !sigma.is_subset(nu) || nu.size() != sigma.size() + 1 {
        return Err(Error::input(format!("{sigma} is not obtained from {nu} by removing a node")));
    }
    let a = diff[0];
    let i = rd.reduce(i);
    if rd.res(a.l, a.r, a.c) != i {
        return Err(Error::input(format!("ν \\ σ = {a} does not have residue {i}")));
    }
    let shapes: Vec<Multipartition> = nu
        .removable()
        .into_iter()
        .filter(|x| rd.res(x.l, x.r, x.c) == i)
        .map(|x| nu.without_node(x))
        .collect::<Result<_>>()?;
    let tab: HashMap<Multipartition, Tableau> =
        shapes.iter().map(|s| one_node_tableau(s, nu).map(|t| (s.clone(), t))).collect::<Result<_>>()?;
    let node_of = |s: &Multipartition| nu.difference(s)[0];
    // single cycle (m, m-1, …, l) as a map on entries
    let cycle = |tau: &Multipartition, sg: &Multipartition| -> (usize, usize) {
        let m = tab[sg].entry(node_of(tau)).expect("entry");
        let l = tab[tau].entry(node_of(sg)).expect("entry");
        (l, m)
    };
    let mut chains: Vec<Vec<Multipartition>> = vec![vec![sigma.clone()]];
    for _ in 0..k {
        let mut next = Vec::new();
        for ch in &chains {
            let last = ch.last().expect("chain");
            for s in &shapes {
                if strictly_dominates(s, last) {
                    let mut c = ch.clone();
                    c.push(s.clone());
                    next.push(c);
                }
            }
        }
        chains = next;
    }
    let mut out = Vec::new();
    for ch in chains {
        let top = ch.last().expect("chain").clone();
        let start = tab[&top].clone();
        let mut entries = start.entries().to_vec();
        for pair in ch.windows(2) {
            let (l, m) = cycle(&pair[1], &pair[0]);
            for v in entries.iter_mut() {
                if *v == l {
                    *v = m;
                } else if *v > l && *v <= m {
                    *v -= 1;
                }
            }
        }
        let target = Tableau::new(nu.clone(), entries)?;
        let word = perm_between(&start, &target)?.reduced_word();
        out.push(PushTerm { chain: ch, start, target, word });
    }
    Ok(out)
}

/// Evaluates a push expansion in `S^ν`.
pub fn eval_push_terms(m: &SpechtModule, terms: &[PushTerm]) -> Result<Vector> {
    let mut acc: BTreeMap<u32, Int> = BTreeMap::new();
    for t in terms {
        let id = m.index_of(&t.start)?;
        let ops: Vec<Op> = t.word.iter().map(|&r| Op::Psi(r)).collect();
        for (j, c) in m.act_ops(&m.basis_vector(id), &ops)? {
            *acc.entry(j).or_insert_with(Int::zero) += &c;
        }
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositionReport {
    pub delta_lambda_rho: i64,
    pub delta_rho_mu: i64,
    pub delta_lambda_mu: i64,
    pub exponents_lambda_rho: Vec<usize>,
    pub exponents_rho_mu: Vec<usize>,
    pub exponents_lambda_mu: Vec<usize>,
    pub operators_compose: bool,
    pub matrices_compose: bool,
    pub composite: HomMap,
}

/// Certificates for `(λ, ρ)`, `(ρ, μ)` and `(λ, μ)` sharing the anchoring of `(λ, ρ)`.
pub fn composition_certificates(
    lambda: &Multipartition,
    rho: &Multipartition,
    mu: &Multipartition,
    rd: &ResidueData,
) -> Result<(CPCertificate, CPCertificate, CPCertificate)> {
    let mut a = lambda.difference(rho);
    let mut b = mu.difference(rho);
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::input(format!("λ \\ ρ ≠ μ \\ ρ for ({lambda}, {rho}, {mu})")));
    }
    let c1 = cp_pair_check(lambda, rho, rd)?.certificate()?;
    let c2 = cp_pair_check_with_tail(rho, mu, rd, Some(&c1.tail))?.certificate()?;
    let c3 = cp_pair_check_with_tail(lambda, mu, rd, Some(&c1.tail))?.certificate()?;
    Ok((c1, c2, c3))
}

pub fn compose_homs(
    lambda: &Multipartition,
    rho: &Multipartition,
    mu: &Multipartition,
    rd: &ResidueData,
    caps: &Caps,
) -> Result<CompositionReport> {
    let (c1, c2, c3) = composition_certificates(lambda, rho, mu, rd)?;
    let h1 = induced_hom(&c1, caps)?;
    let h2 = induced_hom(&c2, caps)?;
    let h3 = induced_hom(&c3, caps)?;
    let product = crate::homoracle::matmul(&h2.matrix, &h1.matrix);
    let (e1, e2, e3) = (c1.theta_exponents_collected(), c2.theta_exponents_collected(), c3.theta_exponents_collected());
    let operators_compose = e1.iter().zip(&e2).map(|(x, y)| x + y).eq(e3.iter().copied());
    Ok(CompositionReport {
        delta_lambda_rho: c1.delta(),
        delta_rho_mu: c2.delta(),
        delta_lambda_mu: c3.delta(),
        exponents_lambda_rho: e1,
        exponents_rho_mu: e2,
        exponents_lambda_mu: e3,
        operators_compose,
        matrices_compose: product == h3.matrix,
        composite: HomMap { source: lambda.clone(), target: mu.clone(), degree: h1.degree + h2.degree, matrix: product },
    })
}

/// Where the rows of one slice come from: `(component, first row)` per slice component,
/// with an optional last row for the final component.
#[derive(Clone, Debug, Serialize)]
pub struct SliceWindow {
    pub comps: Vec<(usize, usize)>,
    pub last_row: Option<usize>,
}

impl SliceWindow {
    pub fn extract(&self, mp: &Multipartition) -> Result<Multipartition> {
        let k = self.comps.len();
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(idx, &(l, start))| {
                let rows = &mp.components()[l - 1];
                let end = if idx + 1 == k { self.last_row.unwrap_or(usize::MAX) } else { usize::MAX };
                rows.iter()
                    .enumerate()
                    .filter(|(r, _)| r + 1 >= start && r + 1 <= end)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        Multipartition::new(comps)
    }

    /// Charge making residues of the slice agree with those in the ambient multipartition.
    pub fn residue_data(&self, rd: &ResidueData) -> Result<ResidueData> {
        ResidueData::new(rd.e, self.comps.iter().map(|&(l, start)| rd.charge[l - 1] - (start as i64 - 1)).collect())
    }

    pub fn ambient_node(&self, a: Node) -> Node {
        let (l, start) = self.comps[a.l - 1];
        Node::new(l, start + a.r - 1, a.c)
    }
}

/// Windows for cutting after each of the given rows.
pub fn slice_windows(level: usize, cuts: &[RowIndex]) -> Result<Vec<SliceWindow>> {
    if cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("cut rows must be strictly increasing"));
    }
    let mut out = Vec::new();
    let (mut cl, mut cr) = (1usize, 1usize);
    for cut in cuts {
        if cut.l < cl || cut.l > level || (cut.l == cl && cut.r < cr) {
            return Err(Error::input(format!("cut {cut} out of range")));
        }
        let mut comps = vec![(cl, cr)];
        comps.extend((cl + 1..=cut.l).map(|l| (l, 1)));
        out.push(SliceWindow { comps, last_row: Some(cut.r) });
        cl = cut.l;
        cr = cut.r + 1;
    }
    let mut comps = vec![(cl, cr)];
    comps.extend((cl + 1..=level).map(|l| (l, 1)));
    out.push(SliceWindow { comps, last_row: None });
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceCertificate {
    pub lambda: Multipartition,
    pub mu: Multipartition,
    pub nu: Multipartition,
    pub windows: Vec<SliceWindow>,
    pub slices: Vec<CPCertificate>,
    pub anchored_lambda: Tableau,
    pub anchored_mu: Tableau,
    pub tail: Vec<i64>,
    /// indices `g` of the dots `y_{n+g}` of `θ^{[1]} ⋯ θ^{[s]}`
    pub theta_indices: Vec<usize>,
    pub delta: i64,
}

impl SliceCertificate {
    pub fn induce_input(&self, rd: &ResidueData) -> InduceInput {
        let n = self.lambda.size();
        InduceInput {
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            nu: self.nu.clone(),
            rd: rd.clone(),
            anchored_lambda: self.anchored_lambda.clone(),
            anchored_mu: self.anchored_mu.clone(),
            theta: self.theta_indices.iter().map(|&g| Op::Y(n + g)).collect(),
            tail: self.tail.clone(),
        }
    }
}

pub fn slice_certificate(
    lambda: &Multipartition,
    mu: &Multipartition,
    cuts: &[RowIndex],
    rd: &ResidueData,
) -> Result<SliceCertificate> {
    if lambda.level() != rd.level() || mu.level() != rd.level() || lambda.size() != mu.size() {
        return Err(Error::input("λ and μ must have the charge's level and equal size"));
    }
    let windows = slice_windows(rd.level(), cuts)?;
    let nu = lambda.union(mu);
    let n = lambda.size();
    let mut slices = Vec::new();
    let mut place_l = Vec::new();
    let mut place_m = Vec::new();
    let mut tail = Vec::new();
    let mut theta_indices = Vec::new();
    let mut delta = 0;
    for (b, w) in windows.iter().enumerate() {
        let (lb, mb) = (w.extract(lambda)?, w.extract(mu)?);
        if lb.size() != mb.size() {
            return Err(Error::Rejected(format!("slice {}: |λ| ≠ |μ|", b + 1)));
        }
        let srd = w.residue_data(rd)?;
        let cert = match cp_pair_check(&lb, &mb, &srd)? {
            PairCheck::Pair(c) => *c,
            PairCheck::Rejected(r) => {
                return Err(Error::Rejected(format!("slice {}: {}: {}", b + 1, r.reason.as_str(), r.detail)))
            }
        };
        let offset = tail.len();
        for &i in &cert.tail {
            place_l.push(w.ambient_node(cert.alpha_lambda[&i]));
            place_m.push(w.ambient_node(cert.alpha_mu[&i]));
            tail.push(i);
        }
        theta_indices.extend(cert.g_list().into_iter().map(|g| g + offset));
        delta += cert.delta();
        slices.push(cert);
    }
    let anchored_lambda = extend_initial(lambda, &nu, &place_l)?;
    let anchored_mu = extend_initial(mu, &nu, &place_m)?;
    if !anchored_lambda.is_standard() || !anchored_mu.is_standard() {
        return Err(Error::internal("sliced anchored tableaux are not standard"));
    }
    if anchored_lambda.n() != n + tail.len() {
        return Err(Error::internal("slices do not cover ν \\ λ"));
    }
    Ok(SliceCertificate {
        lambda: lambda.clone(),
        mu: mu.clone(),
        nu,
        windows,
        slices,
        anchored_lambda,
        anchored_mu,
        tail,
        theta_indices,
        delta,
    })
}

pub fn slice_hom(
    lambda: &Multipartition,
    mu: &Multipartition,
    cuts: &[RowIndex],
    rd: &ResidueData,
    caps: &Caps,
) -> Result<HomMap> {
    let sc = slice_certificate(lambda, mu, cuts, rd)?;
    let h = induce(&sc.induce_input(rd), caps)?;
    if h.degree != sc.delta {
        return Err(Error::internal(format!("slice degree {} differs from Σ δ = {}", h.degree, sc.delta)));
    }
    Ok(h)
}
