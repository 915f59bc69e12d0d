//! Graded Specht modules realized on the standard tableau basis.
//!
//! Basis vectors are `v_t = v_{t^μ} ψ_{r_1} … ψ_{r_k}` where `r_1 … r_k` is the canonical
//! reduced word of `d(t)`. That word is prefix closed: dropping its last letter `c` gives the
//! canonical word of `t s_c`, which is what the recursion below relies on. The action of a
//! single generator on a basis vector is memoized per `(basis index, generator)`.

use crate::combinat::{
    dominates, garnir_data, node_degree, standard_entry_vectors, GarnirData, Multipartition, Node,
    ResidueData, ShapeInfo, Tableau,
};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::klr::{cyclotomic_exponent, Gen, GeneratorWord, Perm};
use serde::{Deserialize, Serialize};
use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

/// Sparse vector: `(basis index, coefficient)` sorted by index, no zero coefficients.
pub type Vector = Vec<(u32, Int)>;

pub const DEFAULT_CAP_STEPS: u64 = 10_000_000;

/// A single generator as the engine sees it (1-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Psi(usize),
    Y(usize),
}

#[derive(Default)]
struct Acc(HashMap<u32, Int>);

impl Acc {
    fn add(&mut self, id: u32, c: &Int) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&id) {
            Some(x) => *x += c,
            None => {
                self.0.insert(id, c.clone());
            }
        }
    }

    fn add_vec(&mut self, v: &[(u32, Int)], scale: &Int) {
        for (id, c) in v {
            if scale.is_one() {
                self.add(*id, c);
            } else {
                self.add(*id, &(c * scale));
            }
        }
    }

    fn finish(self) -> Vector {
        let mut v: Vector = self.0.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_unstable_by_key(|(id, _)| *id);
        v
    }
}

pub fn vec_add(a: &[(u32, Int)], b: &[(u32, Int)], scale_b: &Int) -> Vector {
    let mut acc = Acc::default();
    acc.add_vec(a, &Int::one());
    acc.add_vec(b, scale_b);
    acc.finish()
}

pub fn vec_scale(a: &[(u32, Int)], s: &Int) -> Vector {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, c)| (*i, c * s)).collect()
}

fn swapped(pos: &[u8], r: usize) -> Vec<u8> {
    let mut p = pos.to_vec();
    p.swap(r - 1, r);
    p
}

/// Smallest `r` with `r+1` before `r` in reading order.
fn first_descent(pos: &[u8]) -> Option<usize> {
    (1..pos.len()).find(|&r| pos[r - 1] > pos[r])
}

fn reduced_word_of_pos(pos: &[u8]) -> Vec<usize> {
    let mut p = pos.to_vec();
    let mut out = Vec::new();
    while let Some(r) = first_descent(&p) {
        out.push(r);
        p.swap(r - 1, r);
    }
    out.reverse();
    out
}

/// A Specht module together with its straightening memo.
pub struct SpechtModule {
    shape: Multipartition,
    rd: ResidueData,
    info: ShapeInfo,
    tabs: RefCell<Vec<Rc<[u8]>>>,
    index: RefCell<HashMap<Rc<[u8]>, u32>>,
    basis_len: Option<usize>,
    memo: RefCell<HashMap<(u32, Op), Rc<Vector>>>,
    active: RefCell<HashSet<(u32, Op)>>,
    garnir: RefCell<HashMap<usize, Rc<Vector>>>,
    garnir_active: RefCell<HashSet<usize>>,
    degrees: RefCell<HashMap<u32, i64>>,
    steps: Cell<u64>,
    cap_steps: u64,
}

impl SpechtModule {
    /// Builds `S^μ` with its full basis enumerated in canonical order.
    pub fn new(shape: &Multipartition, rd: &ResidueData) -> Result<Self> {
        let m = Self::lazy(shape, rd)?;
        let all = standard_entry_vectors(shape);
        {
            let mut tabs = m.tabs.borrow_mut();
            let mut index = m.index.borrow_mut();
            tabs.clear();
            index.clear();
            for entries in all {
                let mut pos = vec![0u8; entries.len()];
                for (i, &k) in entries.iter().enumerate() {
                    pos[k - 1] = i as u8;
                }
                let key: Rc<[u8]> = pos.into();
                index.insert(key.clone(), tabs.len() as u32);
                tabs.push(key);
            }
        }
        let len = m.tabs.borrow().len();
        Ok(SpechtModule { basis_len: Some(len), ..m })
    }

    /// Builds `S^μ` without enumerating its basis; basis vectors get indices as they appear.
    pub fn lazy(shape: &Multipartition, rd: &ResidueData) -> Result<Self> {
        let info = ShapeInfo::new(shape, rd)?;
        if info.n() > 255 {
            return Err(Error::ResourceCap(format!("|shape| = {} exceeds 255", info.n())));
        }
        let initial: Rc<[u8]> = (0..info.n() as u8).collect::<Vec<_>>().into();
        let mut index = HashMap::new();
        index.insert(initial.clone(), 0u32);
        Ok(SpechtModule {
            shape: shape.clone(),
            rd: rd.clone(),
            info,
            tabs: RefCell::new(vec![initial]),
            index: RefCell::new(index),
            basis_len: None,
            memo: RefCell::new(HashMap::new()),
            active: RefCell::new(HashSet::new()),
            garnir: RefCell::new(HashMap::new()),
            garnir_active: RefCell::new(HashSet::new()),
            degrees: RefCell::new(HashMap::new()),
            steps: Cell::new(0),
            cap_steps: DEFAULT_CAP_STEPS,
        })
    }

    pub fn with_cap_steps(mut self, cap: u64) -> Self {
        self.cap_steps = cap;
        self
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn residue_data(&self) -> &ResidueData {
        &self.rd
    }

    pub fn n(&self) -> usize {
        self.info.n()
    }

    pub fn info(&self) -> &ShapeInfo {
        &self.info
    }

    /// Dimension; for lazily built modules this is the hook length count.
    pub fn dim(&self) -> usize {
        self.basis_len.unwrap_or_else(|| self.shape.count_standard() as usize)
    }

    pub fn is_enumerated(&self) -> bool {
        self.basis_len.is_some()
    }

    /// Number of tableaux interned so far.
    pub fn interned(&self) -> usize {
        self.tabs.borrow().len()
    }

    pub fn steps(&self) -> u64 {
        self.steps.get()
    }

    fn pos(&self, id: u32) -> Rc<[u8]> {
        self.tabs.borrow()[id as usize].clone()
    }

    fn intern(&self, pos: &[u8]) -> u32 {
        if let Some(&id) = self.index.borrow().get(pos) {
            return id;
        }
        let key: Rc<[u8]> = pos.into();
        let mut tabs = self.tabs.borrow_mut();
        let id = tabs.len() as u32;
        tabs.push(key.clone());
        self.index.borrow_mut().insert(key, id);
        id
    }

    pub fn tableau(&self, id: u32) -> Tableau {
        let pos = self.pos(id);
        let mut entries = vec![0; pos.len()];
        for (k, &p) in pos.iter().enumerate() {
            entries[p as usize] = k + 1;
        }
        Tableau::new(self.shape.clone(), entries).expect("interned tableau")
    }

    /// Index of a standard tableau (interning it if the module is lazy).
    pub fn index_of(&self, t: &Tableau) -> Result<u32> {
        if t.shape() != &self.shape || !t.is_standard() {
            return Err(Error::input(format!("{t} is not a standard tableau of shape {}", self.shape)));
        }
        let pos: Vec<u8> = t.positions().iter().map(|&p| p as u8).collect();
        Ok(self.intern(&pos))
    }

    pub fn basis(&self) -> Vec<Tableau> {
        (0..self.interned() as u32).map(|i| self.tableau(i)).collect()
    }

    pub fn residue_sequence(&self, id: u32) -> Vec<i64> {
        self.pos(id).iter().map(|&p| self.info.res[p as usize]).collect()
    }

    /// `ℓ(d(t))`.
    pub fn length(&self, id: u32) -> usize {
        let pos = self.pos(id);
        let mut c = 0;
        for i in 0..pos.len() {
            for j in i + 1..pos.len() {
                if pos[i] > pos[j] {
                    c += 1;
                }
            }
        }
        c
    }

    pub fn reduced_word(&self, id: u32) -> Vec<usize> {
        reduced_word_of_pos(&self.pos(id))
    }

    pub fn degree(&self, id: u32) -> i64 {
        if let Some(&d) = self.degrees.borrow().get(&id) {
            return d;
        }
        let pos = self.pos(id);
        let mut shape = Multipartition::empty(self.shape.level());
        let mut deg = 0;
        for &p in pos.iter() {
            let a = self.info.nodes[p as usize];
            shape = shape.with_node(a).expect("standard tableau");
            deg += node_degree(&shape, a, &self.rd);
        }
        self.degrees.borrow_mut().insert(id, deg);
        deg
    }

    /// `Σ_t q^{deg t}` as a map from degree to multiplicity.
    pub fn graded_dimension(&self) -> BTreeMap<i64, u64> {
        let mut out = BTreeMap::new();
        let n = if self.is_enumerated() { self.dim() } else { self.enumerate_all() };
        for id in 0..n as u32 {
            *out.entry(self.degree(id)).or_insert(0) += 1;
        }
        out
    }

    /// Interns every standard tableau; returns the count. Only needed for lazy modules.
    fn enumerate_all(&self) -> usize {
        for entries in standard_entry_vectors(&self.shape) {
            let mut pos = vec![0u8; entries.len()];
            for (i, &k) in entries.iter().enumerate() {
                pos[k - 1] = i as u8;
            }
            self.intern(&pos);
        }
        self.interned()
    }

    pub fn basis_vector(&self, id: u32) -> Vector {
        vec![(id, Int::one())]
    }

    fn res_of_entry(&self, pos: &[u8], k: usize) -> i64 {
        self.info.res[pos[k - 1] as usize]
    }

    fn tick(&self) -> Result<()> {
        let s = self.steps.get() + 1;
        self.steps.set(s);
        if s > self.cap_steps {
            return Err(Error::ResourceCap(format!(
                "straightening exceeded {} steps on shape {}",
                self.cap_steps, self.shape
            )));
        }
        Ok(())
    }

    /// `v_t · g` for a basis vector and a single generator.
    pub fn act_basis(&self, id: u32, op: Op) -> Result<Rc<Vector>> {
        if let Some(v) = self.memo.borrow().get(&(id, op)) {
            return Ok(v.clone());
        }
        match op {
            Op::Psi(r) if r == 0 || r >= self.n() => {
                return Err(Error::input(format!("ψ_{r} out of range for n = {}", self.n())))
            }
            Op::Y(s) if s == 0 || s > self.n() => {
                return Err(Error::input(format!("y_{s} out of range for n = {}", self.n())))
            }
            _ => {}
        }
        if !self.active.borrow_mut().insert((id, op)) {
            return Err(Error::internal(format!(
                "straightening cycle at {} acting by {op:?}",
                self.tableau(id)
            )));
        }
        self.tick()?;
        let result = stacker::maybe_grow(256 * 1024, 64 * 1024 * 1024, || self.compute(id, op));
        self.active.borrow_mut().remove(&(id, op));
        let v = Rc::new(result?);
        self.memo.borrow_mut().insert((id, op), v.clone());
        Ok(v)
    }

    pub fn act_vec(&self, x: &[(u32, Int)], op: Op) -> Result<Vector> {
        let mut acc = Acc::default();
        for (id, c) in x {
            let v = self.act_basis(*id, op)?;
            acc.add_vec(&v, c);
        }
        Ok(acc.finish())
    }

    pub fn act_ops(&self, x: &[(u32, Int)], ops: &[Op]) -> Result<Vector> {
        let mut v = x.to_vec();
        for &op in ops {
            if v.is_empty() {
                break;
            }
            v = self.act_vec(&v, op)?;
        }
        Ok(v)
    }

    /// `x · w` for an arbitrary generator word.
    pub fn act(&self, x: &[(u32, Int)], w: &GeneratorWord) -> Result<Vector> {
        w.validate(self.n())?;
        let mut v = x.to_vec();
        for g in &w.letters {
            v = match g {
                Gen::Psi(r) => self.act_vec(&v, Op::Psi(*r))?,
                Gen::Y(s) => self.act_vec(&v, Op::Y(*s))?,
                Gen::Idem(i) => self.idempotent(&v, i),
            };
        }
        Ok(v)
    }

    /// `x · e(bi)`.
    pub fn idempotent(&self, x: &[(u32, Int)], bi: &[i64]) -> Vector {
        let target: Vec<i64> = bi.iter().map(|&i| self.rd.reduce(i)).collect();
        x.iter().filter(|(id, _)| self.residue_sequence(*id) == target).cloned().collect()
    }

    /// `v_{t^μ}` followed by a word in `ψ`s and `y`s.
    pub fn eval_ops(&self, ops: &[Op]) -> Result<Vector> {
        self.act_ops(&self.basis_vector(0), ops)
    }

    fn compute(&self, id: u32, op: Op) -> Result<Vector> {
        match op {
            Op::Y(s) => self.compute_y(id, s),
            Op::Psi(r) => self.compute_psi(id, r),
        }
    }

    fn compute_y(&self, id: u32, s: usize) -> Result<Vector> {
        let pos = self.pos(id);
        let Some(c) = first_descent(&pos) else {
            return Ok(Vec::new());
        };
        let u = self.intern(&swapped(&pos, c));
        let delta = self.res_of_entry(&pos, c) == self.res_of_entry(&pos, c + 1);
        let s2 = if s == c {
            c + 1
        } else if s == c + 1 {
            c
        } else {
            s
        };
        let x = self.act_basis(u, Op::Y(s2))?;
        let mut acc = Acc::default();
        acc.add_vec(&self.act_vec(&x, Op::Psi(c))?, &Int::one());
        if delta {
            if s == c + 1 {
                acc.add(u, &Int::one());
            } else if s == c {
                acc.add(u, &Int::from(-1));
            }
        }
        Ok(acc.finish())
    }

    /// `v_u ψ_r² e(res u)` as a polynomial in the dots.
    fn quadratic(&self, u: u32, r: usize) -> Result<Vector> {
        let pos = self.pos(u);
        let a = self.res_of_entry(&pos, r);
        let b = self.res_of_entry(&pos, r + 1);
        let v = self.basis_vector(u);
        if a == b {
            Ok(Vec::new())
        } else if self.rd.e == 2 {
            let rr = self.act_ops(&v, &[Op::Y(r), Op::Y(r)])?;
            let rs = self.act_ops(&v, &[Op::Y(r), Op::Y(r + 1)])?;
            let ss = self.act_ops(&v, &[Op::Y(r + 1), Op::Y(r + 1)])?;
            let mut acc = Acc::default();
            acc.add_vec(&rr, &Int::from(-1));
            acc.add_vec(&rs, &Int::from(2));
            acc.add_vec(&ss, &Int::from(-1));
            Ok(acc.finish())
        } else if self.rd.arrow(a, b) {
            let y1 = self.act_basis(u, Op::Y(r + 1))?;
            let y0 = self.act_basis(u, Op::Y(r))?;
            Ok(vec_add(&y1, &y0, &Int::from(-1)))
        } else if self.rd.arrow(b, a) {
            let y1 = self.act_basis(u, Op::Y(r + 1))?;
            let y0 = self.act_basis(u, Op::Y(r))?;
            Ok(vec_add(&y0, &y1, &Int::from(-1)))
        } else {
            Ok(v)
        }
    }

    /// Correction `K` in `ψ_aψ_{a+1}ψ_a e(i) = (ψ_{a+1}ψ_aψ_{a+1} + K) e(i)`.
    pub fn braid_correction(&self, a: usize, i: (i64, i64, i64)) -> Vec<(i64, Vec<Op>)> {
        let (x, y, z) = i;
        if x != z || x == y {
            return Vec::new();
        }
        if self.rd.e == 2 {
            vec![(1, vec![Op::Y(a)]), (-2, vec![Op::Y(a + 1)]), (1, vec![Op::Y(a + 2)])]
        } else if self.rd.arrow(x, y) {
            vec![(1, Vec::new())]
        } else if self.rd.arrow(y, x) {
            vec![(-1, Vec::new())]
        } else {
            Vec::new()
        }
    }

    fn apply_poly(&self, x: &[(u32, Int)], poly: &[(i64, Vec<Op>)], sign: i64) -> Result<Vector> {
        let mut acc = Acc::default();
        for (c, ops) in poly {
            let v = self.act_ops(x, ops)?;
            acc.add_vec(&v, &Int::from(c * sign));
        }
        Ok(acc.finish())
    }

    /// `act(v_u, ψ_c) - v_t` when `t = u s_c` is standard and longer; zero when `c` is the
    /// canonical last letter of `t`.
    fn prefix_error(&self, u: u32, c: usize, t: u32) -> Result<Vector> {
        let x = self.act_basis(u, Op::Psi(c))?;
        Ok(vec_add(&x, &self.basis_vector(t), &Int::from(-1)))
    }

    fn compute_psi(&self, id: u32, r: usize) -> Result<Vector> {
        let pos = self.pos(id);
        let p = pos[r - 1] as usize;
        let q = pos[r] as usize;
        if q < p {
            // length goes down: v_t = v_u ψ_r (+ error), then use the quadratic relation
            let u = self.intern(&swapped(&pos, r));
            let e1 = if first_descent(&pos) == Some(r) { Vec::new() } else { self.prefix_error(u, r, id)? };
            let main = self.quadratic(u, r)?;
            let corr = self.act_vec(&e1, Op::Psi(r))?;
            return Ok(vec_add(&main, &corr, &Int::from(-1)));
        }
        let row_adjacent = self.info.right[p] == Some(q);
        let col_adjacent = self.info.below[p] == Some(q);
        if !row_adjacent && !col_adjacent {
            let tpos = swapped(&pos, r);
            let c = first_descent(&tpos).expect("nontrivial tableau");
            if c == r {
                return Ok(self.basis_vector(self.intern(&tpos)));
            }
            if c.abs_diff(r) > 1 {
                let rid = self.intern(&swapped(&pos, c));
                let e1 = self.prefix_error(rid, c, id)?;
                let x = self.act_basis(rid, Op::Psi(r))?;
                let main = self.act_vec(&x, Op::Psi(c))?;
                let corr = self.act_vec(&e1, Op::Psi(r))?;
                return Ok(vec_add(&main, &corr, &Int::from(-1)));
            }
            // c = r ± 1: T = R s_c s_r s_c = R s_r s_c s_r with t = R s_r s_c
            let rpos = swapped(&swapped(&pos, c), r);
            let rid = self.intern(&rpos);
            let x = self.act_basis(rid, Op::Psi(r))?;
            let x = self.act_vec(&x, Op::Psi(c))?;
            let e1 = vec_add(&x, &self.basis_vector(id), &Int::from(-1));
            let m = self.act_basis(rid, Op::Psi(c))?;
            let m = self.act_vec(&m, Op::Psi(r))?;
            let main = self.act_vec(&m, Op::Psi(c))?;
            let a = r.min(c);
            let i = (
                self.res_of_entry(&tpos, a),
                self.res_of_entry(&tpos, a + 1),
                self.res_of_entry(&tpos, a + 2),
            );
            let k = self.braid_correction(a, i);
            let sign = if r == a { 1 } else { -1 };
            let beta = self.apply_poly(&self.basis_vector(rid), &k, sign)?;
            let corr = self.act_vec(&e1, Op::Psi(r))?;
            let mut acc = Acc::default();
            acc.add_vec(&main, &Int::one());
            acc.add_vec(&beta, &Int::one());
            acc.add_vec(&corr, &Int::from(-1));
            return Ok(acc.finish());
        }
        // t s_r is not standard
        if first_descent(&pos).is_none() && row_adjacent {
            return Ok(Vec::new());
        }
        if let Some(c) = (1..self.n()).find(|&c| pos[c - 1] > pos[c] && c.abs_diff(r) > 1) {
            let u = self.intern(&swapped(&pos, c));
            let e1 = if first_descent(&pos) == Some(c) { Vec::new() } else { self.prefix_error(u, c, id)? };
            let x = self.act_basis(u, Op::Psi(r))?;
            let main = self.act_vec(&x, Op::Psi(c))?;
            let corr = self.act_vec(&e1, Op::Psi(r))?;
            return Ok(vec_add(&main, &corr, &Int::from(-1)));
        }
        let mut word = reduced_word_of_pos(&pos);
        word.push(r);
        if row_adjacent {
            self.reduce_row_violation(word, p + 1)
        } else {
            self.reduce_garnir_violation(word, p)
        }
    }

    /// Residues of `t^μ · word`.
    fn residues_after(&self, word: &[usize]) -> Vec<i64> {
        let mut pos: Vec<u8> = (0..self.n() as u8).collect();
        for &x in word {
            pos.swap(x - 1, x);
        }
        pos.iter().map(|&p| self.info.res[p as usize]).collect()
    }

    /// Rewrites `buf[s..]` (a reduced word admitting `x` as a first letter) so that it starts
    /// with `x`, recording the braid correction words in `errors`.
    fn move_to_front(
        &self,
        buf: &mut Vec<usize>,
        s: usize,
        x: usize,
        errors: &mut Vec<(i64, Vec<Op>)>,
    ) -> Result<()> {
        self.tick()?;
        if s >= buf.len() {
            return Err(Error::internal("letter cannot be moved to the front of a reduced word"));
        }
        let a = buf[s];
        if a == x {
            return Ok(());
        }
        if a.abs_diff(x) > 1 {
            self.move_to_front(buf, s + 1, x, errors)?;
            buf.swap(s, s + 1);
            return Ok(());
        }
        self.move_to_front(buf, s + 1, x, errors)?;
        self.move_to_front(buf, s + 2, a, errors)?;
        let m = a.min(x);
        let res = self.residues_after(&buf[..s + 3]);
        let k = self.braid_correction(m, (res[m - 1], res[m], res[m + 1]));
        let sign = if a < x { 1 } else { -1 };
        for (c, ops) in k {
            let mut w: Vec<Op> = buf[..s].iter().map(|&r| Op::Psi(r)).collect();
            w.extend(ops);
            w.extend(buf[s + 3..].iter().map(|&r| Op::Psi(r)));
            errors.push((c * sign, w));
        }
        buf[s] = x;
        buf[s + 1] = a;
        buf[s + 2] = x;
        Ok(())
    }

    fn eval_errors(&self, errors: &[(i64, Vec<Op>)]) -> Result<Vector> {
        let mut acc = Acc::default();
        for (c, w) in errors {
            let v = self.eval_ops(w)?;
            acc.add_vec(&v, &Int::from(*c));
        }
        Ok(acc.finish())
    }

    /// `v_{t^μ} ψ_word` where the word's tableau has `a`, `a+1` swapped inside a row.
    fn reduce_row_violation(&self, word: Vec<usize>, a: usize) -> Result<Vector> {
        let mut buf = word;
        let mut errors = Vec::new();
        self.move_to_front(&mut buf, 0, a, &mut errors)?;
        self.eval_errors(&errors)
    }

    /// `v_{t^μ} ψ_word` where the word's tableau is row standard with a column descent at
    /// the Garnir node with reading index `node_idx`.
    fn reduce_garnir_violation(&self, word: Vec<usize>, node_idx: usize) -> Result<Vector> {
        let node = self.info.nodes[node_idx];
        let gd = garnir_data(&self.shape, node, &self.rd)?;
        let top = gd.garnir_top();
        let g: Vec<usize> = top.entries().to_vec();
        let n = self.n();
        let mut buf = word;
        let mut errors = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        let valid = |cur: &[u8], x: usize| {
            let (px, py) = (cur[x - 1] as usize, cur[x] as usize);
            px < py && g[px] > g[py]
        };
        let mut k = 0;
        loop {
            let done = cur.iter().enumerate().all(|(v, &p)| g[p as usize] == v + 1);
            if done {
                break;
            }
            if k >= buf.len() {
                return Err(Error::internal(format!("Garnir prefix extraction failed at {node}")));
            }
            if !valid(&cur, buf[k]) {
                let x = (1..n)
                    .find(|&x| valid(&cur, x))
                    .ok_or_else(|| Error::internal("no Garnir letter available"))?;
                self.move_to_front(&mut buf, k, x, &mut errors)?;
            }
            cur.swap(buf[k] - 1, buf[k]);
            k += 1;
        }
        let ga = self.garnir_value(node_idx, &gd)?;
        let rest: Vec<Op> = buf[k..].iter().map(|&r| Op::Psi(r)).collect();
        let main = self.act_ops(&ga, &rest)?;
        let errs = self.eval_errors(&errors)?;
        Ok(vec_add(&main, &errs, &Int::one()))
    }

    /// `v_{t^μ} ψ_{g^A}` expressed through the other terms of the Garnir relation at `A`.
    fn garnir_value(&self, node_idx: usize, gd: &GarnirData) -> Result<Rc<Vector>> {
        if let Some(v) = self.garnir.borrow().get(&node_idx) {
            return Ok(v.clone());
        }
        if gd.coset_reps.len() <= 1 {
            let v = Rc::new(Vec::new());
            self.garnir.borrow_mut().insert(node_idx, v.clone());
            return Ok(v);
        }
        if !self.garnir_active.borrow_mut().insert(node_idx) {
            return Err(Error::internal(format!("Garnir recursion at {}", gd.node)));
        }
        let result = self.garnir_value_uncached(gd);
        self.garnir_active.borrow_mut().remove(&node_idx);
        let v = Rc::new(result?);
        self.garnir.borrow_mut().insert(node_idx, v.clone());
        Ok(v)
    }

    fn garnir_value_uncached(&self, gd: &GarnirData) -> Result<Vector> {
        let n = self.n();
        let ta = self.index_of(&gd.garnir_tableau)?;
        let dmax = gd.longest_rep().clone();
        let brick_words: Vec<Vec<usize>> = gd.bricks.iter().map(|w| w.reduced_word()).collect();
        let mut lead: Vec<usize> = self.reduced_word(ta);
        for r in dmax.reduced_word() {
            lead.extend(&brick_words[r - 1]);
        }
        let top = gd.garnir_top();
        if Perm::from_word(n, &lead) != top.perm() || lead.len() != top.perm().length() {
            return Err(Error::internal(format!("Garnir leading word at {} is not reduced for g^A", gd.node)));
        }
        let mut acc = Acc::default();
        for d in &gd.coset_reps {
            let dw = d.reduced_word();
            for mask in 0u64..(1u64 << dw.len()) {
                if *d == dmax && mask == (1u64 << dw.len()) - 1 {
                    continue;
                }
                let mut ops = Vec::new();
                for (j, &r) in dw.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        ops.extend(brick_words[r - 1].iter().map(|&x| Op::Psi(x)));
                    }
                }
                let v = self.act_ops(&self.basis_vector(ta), &ops)?;
                acc.add_vec(&v, &Int::from(-1));
            }
        }
        Ok(acc.finish())
    }

    /// Column `t` of the matrix of a generator, for every basis vector.
    pub fn generator_matrix(&self, g: &Gen) -> Result<SparseMatrix> {
        let dim = self.require_enumerated()?;
        let mut cols = Vec::with_capacity(dim);
        for id in 0..dim as u32 {
            let x = self.basis_vector(id);
            cols.push(self.act(&x, &GeneratorWord::new(vec![g.clone()]))?);
        }
        Ok(SparseMatrix { rows: dim, cols })
    }

    fn require_enumerated(&self) -> Result<usize> {
        self.basis_len
            .ok_or_else(|| Error::input("operation needs a module with an enumerated basis"))
    }

    /// Test hook: overwrite a memo entry with an arbitrary value.
    pub fn corrupt_memo(&self, id: u32, op: Op, value: Vector) {
        self.memo.borrow_mut().insert((id, op), Rc::new(value));
    }

    pub fn element(&self, x: &[(u32, Int)]) -> ModuleElement {
        ModuleElement {
            shape: self.shape.clone(),
            terms: x.iter().map(|(id, c)| Term { tableau: self.tableau(*id), coeff: c.to_string() }).collect(),
        }
    }

    /// Checks every defining relation of the algebra and of the Specht module on every basis
    /// vector. Relations are compared as exact matrix identities.
    pub fn verify_relations(&self) -> Result<RelationReport> {
        let dim = self.require_enumerated()?;
        let n = self.n();
        let mut report = RelationReport::default();
        let neg = Int::from(-1);
        for id in 0..dim as u32 {
            let v = self.basis_vector(id);
            let res = self.residue_sequence(id);
            let check = |name: &str, detail: String, lhs: Vector, rhs: Vector, report: &mut RelationReport| {
                report.checked += 1;
                if lhs != rhs {
                    report.violations.push(Violation {
                        relation: name.to_string(),
                        detail,
                        witness: self.tableau(id),
                    });
                }
            };
            if n >= 1 {
                let m = cyclotomic_exponent(res[0], &self.rd);
                let ops = vec![Op::Y(1); m];
                check("cyclotomic", format!("y_1^{m}"), self.act_ops(&v, &ops)?, Vec::new(), &mut report);
            }
            for r in 1..=n {
                let x = self.act_basis(id, Op::Y(r))?;
                let wrong = x.iter().any(|(s, _)| self.residue_sequence(*s) != res);
                report.checked += 1;
                if wrong {
                    report.violations.push(Violation {
                        relation: "idempotent_y".into(),
                        detail: format!("y_{r}"),
                        witness: self.tableau(id),
                    });
                }
                for s in r + 1..=n {
                    check(
                        "y_commute",
                        format!("y_{r} y_{s}"),
                        self.act_ops(&v, &[Op::Y(r), Op::Y(s)])?,
                        self.act_ops(&v, &[Op::Y(s), Op::Y(r)])?,
                        &mut report,
                    );
                }
            }
            for r in 1..n {
                let x = self.act_basis(id, Op::Psi(r))?;
                let mut sres = res.clone();
                sres.swap(r - 1, r);
                report.checked += 1;
                if x.iter().any(|(s, _)| self.residue_sequence(*s) != sres) {
                    report.violations.push(Violation {
                        relation: "idempotent_psi".into(),
                        detail: format!("ψ_{r}"),
                        witness: self.tableau(id),
                    });
                }
                let delta = res[r - 1] == res[r];
                let dv = if delta { v.clone() } else { Vec::new() };
                let lhs = self.act_ops(&v, &[Op::Psi(r), Op::Y(r + 1)])?;
                let rhs = vec_add(&self.act_ops(&v, &[Op::Y(r), Op::Psi(r)])?, &dv, &Int::one());
                check("psi_y", format!("ψ_{r} y_{}", r + 1), lhs, rhs, &mut report);
                let lhs = self.act_ops(&v, &[Op::Y(r + 1), Op::Psi(r)])?;
                let rhs = vec_add(&self.act_ops(&v, &[Op::Psi(r), Op::Y(r)])?, &dv, &Int::one());
                check("y_psi", format!("y_{} ψ_{r}", r + 1), lhs, rhs, &mut report);
                for s in 1..=n {
                    if s != r && s != r + 1 {
                        check(
                            "psi_y_commute",
                            format!("ψ_{r} y_{s}"),
                            self.act_ops(&v, &[Op::Psi(r), Op::Y(s)])?,
                            self.act_ops(&v, &[Op::Y(s), Op::Psi(r)])?,
                            &mut report,
                        );
                    }
                }
                for s in r + 2..n {
                    check(
                        "psi_commute",
                        format!("ψ_{r} ψ_{s}"),
                        self.act_ops(&v, &[Op::Psi(r), Op::Psi(s)])?,
                        self.act_ops(&v, &[Op::Psi(s), Op::Psi(r)])?,
                        &mut report,
                    );
                }
                let lhs = self.act_ops(&v, &[Op::Psi(r), Op::Psi(r)])?;
                let rhs = self.quadratic_on(&v, r, res[r - 1], res[r])?;
                check("quadratic", format!("ψ_{r}^2"), lhs, rhs, &mut report);
                if r + 1 < n {
                    let lhs = self.act_ops(&v, &[Op::Psi(r), Op::Psi(r + 1), Op::Psi(r)])?;
                    let base = self.act_ops(&v, &[Op::Psi(r + 1), Op::Psi(r), Op::Psi(r + 1)])?;
                    // residues at the right of the triple are those of t reversed on r..r+2
                    let i = (res[r + 1], res[r], res[r - 1]);
                    let k = self.braid_correction(r, i);
                    let corr = self.apply_poly(&v, &k, 1)?;
                    check("braid", format!("ψ_{r} ψ_{} ψ_{r}", r + 1), lhs, vec_add(&base, &corr, &Int::one()), &mut report);
                }
            }
            let _ = &neg;
        }
        // Specht relations on the generator
        let res0 = self.residue_sequence(0);
        let initial = Tableau::initial(&self.shape);
        report.checked += 1;
        if res0 != initial.residue_sequence(&self.rd) {
            report.violations.push(Violation {
                relation: "specht_idempotent".into(),
                detail: "res(t^μ)".into(),
                witness: initial.clone(),
            });
        }
        let v0 = self.basis_vector(0);
        for s in 1..=n {
            let x = self.act_basis(0, Op::Y(s))?;
            report.checked += 1;
            if !x.is_empty() {
                report.violations.push(Violation {
                    relation: "specht_dots".into(),
                    detail: format!("y_{s}"),
                    witness: initial.clone(),
                });
            }
        }
        for r in 1..n {
            if self.info.right[r - 1] == Some(r) {
                report.checked += 1;
                if !self.act_basis(0, Op::Psi(r))?.is_empty() {
                    report.violations.push(Violation {
                        relation: "specht_row".into(),
                        detail: format!("ψ_{r}"),
                        witness: initial.clone(),
                    });
                }
            }
        }
        for node in crate::combinat::garnir_nodes(&self.shape) {
            let gd = garnir_data(&self.shape, node, &self.rd)?;
            for (label, alt) in [("garnir", false), ("garnir_tau_independence", true)] {
                if alt && gd.coset_reps.len() <= 1 {
                    continue;
                }
                let sum = self.garnir_sum(&v0, &gd, alt)?;
                report.checked += 1;
                if !sum.is_empty() {
                    report.violations.push(Violation {
                        relation: label.into(),
                        detail: format!("node {node}"),
                        witness: gd.garnir_tableau.clone(),
                    });
                }
            }
        }
        Ok(report)
    }

    fn quadratic_on(&self, v: &[(u32, Int)], r: usize, a: i64, b: i64) -> Result<Vector> {
        if a == b {
            Ok(Vec::new())
        } else if self.rd.e == 2 {
            let poly = vec![
                (-1, vec![Op::Y(r), Op::Y(r)]),
                (2, vec![Op::Y(r), Op::Y(r + 1)]),
                (-1, vec![Op::Y(r + 1), Op::Y(r + 1)]),
            ];
            self.apply_poly(v, &poly, 1)
        } else if self.rd.arrow(a, b) {
            self.apply_poly(v, &[(1, vec![Op::Y(r + 1)]), (-1, vec![Op::Y(r)])], 1)
        } else if self.rd.arrow(b, a) {
            self.apply_poly(v, &[(1, vec![Op::Y(r)]), (-1, vec![Op::Y(r + 1)])], 1)
        } else {
            Ok(v.to_vec())
        }
    }

    /// `Σ_{d∈D_A} v_{t^μ} ψ_{t_A} τ^A_d`, optionally with alternative reduced words.
    pub fn garnir_sum(&self, v0: &[(u32, Int)], gd: &GarnirData, alternative: bool) -> Result<Vector> {
        let n = self.n();
        let word_of = |p: &Perm| if alternative { alt_reduced_word(p) } else { p.reduced_word() };
        let ta_word = word_of(&gd.garnir_tableau.perm());
        let base: Vec<Op> = ta_word.iter().map(|&r| Op::Psi(r)).collect();
        let start = self.act_ops(v0, &base)?;
        let start = self.idempotent(&start, &gd.residues);
        let mut acc = Acc::default();
        for d in &gd.coset_reps {
            let mut expr: Vec<Vector> = vec![start.clone()];
            for r in word_of(d) {
                let w = gd.bricks[r - 1].extended(n);
                let ops: Vec<Op> = word_of(&w).iter().map(|&x| Op::Psi(x)).collect();
                let mut next = Vec::new();
                for x in &expr {
                    next.push(x.clone());
                    next.push(self.act_ops(x, &ops)?);
                }
                expr = next;
            }
            for x in expr {
                acc.add_vec(&x, &Int::one());
            }
        }
        Ok(acc.finish())
    }
}

/// Reduced word built by stripping the largest right descent first.
pub fn alt_reduced_word(p: &Perm) -> Vec<usize> {
    let mut w = p.images().to_vec();
    let mut out = Vec::new();
    while let Some(r) = (1..w.len()).rev().find(|&r| w[r - 1] > w[r]) {
        out.push(r);
        w.swap(r - 1, r);
    }
    out.reverse();
    out
}

/// Column-major sparse matrix; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vector>,
}

impl SparseMatrix {
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Coordinate triples `(row, col, value)`.
    pub fn triples(&self) -> Vec<(usize, usize, Int)> {
        let mut out = Vec::new();
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                out.push((*i as usize, j, c.clone()));
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Term {
    pub tableau: Tableau,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleElement {
    pub shape: Multipartition,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub relation: String,
    pub detail: String,
    pub witness: Tableau,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl RelationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One layer of the restriction filtration of `S^ν` to `n - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationLayer {
    pub removed: Node,
    pub shape: Multipartition,
    pub shift: i64,
}

impl FiltrationLayer {
    /// Membership in the `k`-th filtration submodule: `Shape(t↓(n-1)) ⊵ ν \ {A_{k+1}}`.
    pub fn contains(&self, t: &Tableau) -> bool {
        dominates(&t.restricted_shape(t.n().saturating_sub(1)), &self.shape)
    }
}

/// The layers of the one-step restriction filtration, removable nodes in row order.
/// With `steps > 1` the layers of each layer are appended recursively (depth first).
pub fn restriction_layers(nu: &Multipartition, steps: usize, rd: &ResidueData) -> Result<Vec<FiltrationLayer>> {
    if steps == 0 || steps > nu.size() {
        return Err(Error::input(format!("γ = {steps} out of range for |ν| = {}", nu.size())));
    }
    let mut out = Vec::new();
    for a in nu.removable() {
        let shape = nu.without_node(a)?;
        out.push(FiltrationLayer { removed: a, shift: node_degree(nu, a, rd), shape: shape.clone() });
        if steps > 1 {
            out.extend(restriction_layers(&shape, steps - 1, rd)?);
        }
    }
    Ok(out)
}

/// `Σ_A q^{d_A(ν)} dim_q S^{ν\A}` computed combinatorially.
pub fn graded_restriction_sum(nu: &Multipartition, rd: &ResidueData) -> Result<BTreeMap<i64, u64>> {
    let mut out = BTreeMap::new();
    for layer in restriction_layers(nu, 1, rd)? {
        let m = SpechtModule::new(&layer.shape, rd)?;
        for (d, k) in m.graded_dimension() {
            *out.entry(d + layer.shift).or_insert(0) += k;
        }
    }
    Ok(out)
}

/// Randomized checks of the support properties of the action.
pub mod support {
    use super::{Op, SpechtModule, Vector};
    use crate::combinat::{dominates_tableaux, Multipartition, Node, RowIndex, Tableau};
    use crate::error::Result;
    use itertools::Itertools;
    use rand::Rng;
    use serde::Serialize;

    #[derive(Clone, Debug, Default, Serialize)]
    pub struct SuiteReport {
        pub name: String,
        pub instances: usize,
        pub violations: usize,
        pub failures: Vec<String>,
    }

    impl SuiteReport {
        fn new(name: &str) -> Self {
            SuiteReport { name: name.into(), ..Default::default() }
        }

        pub fn ok(&self) -> bool {
            self.failures.is_empty()
        }

        fn fail(&mut self, msg: String) {
            self.violations += 1;
            if self.failures.len() < 20 {
                self.failures.push(msg);
            }
        }
    }

    /// A random standard tableau `t^μ w`, reached by length-increasing steps, and the word `w`.
    pub fn random_walk<R: Rng>(shape: &Multipartition, rng: &mut R) -> (Tableau, Vec<usize>) {
        let mut t = Tableau::initial(shape);
        let n = t.n();
        let steps = rng.gen_range(0..=n * n.saturating_sub(1) / 2);
        let mut word = Vec::new();
        for _ in 0..steps {
            let len = t.perm().length();
            let cands: Vec<usize> = (1..n)
                .filter(|&r| {
                    let s = t.swap_entries(r);
                    s.is_standard() && s.perm().length() == len + 1
                })
                .collect();
            if cands.is_empty() {
                break;
            }
            let r = cands[rng.gen_range(0..cands.len())];
            t = t.swap_entries(r);
            word.push(r);
        }
        (t, word)
    }

    fn support<'a>(m: &'a SpechtModule, x: &'a Vector) -> impl Iterator<Item = Tableau> + 'a {
        x.iter().map(move |(id, _)| m.tableau(*id))
    }

    /// `v_{t^μ} ψ_w` lies in the span of `v_s` with `s ⊵ t^μ w` and `res(s) = res(t^μ w)`.
    pub fn dom_tableaux<R: Rng>(m: &SpechtModule, rng: &mut R, count: usize) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("dom_tableaux");
        let rd = m.residue_data();
        for _ in 0..count {
            let (t, word) = random_walk(m.shape(), rng);
            let ops: Vec<Op> = word.iter().map(|&r| Op::Psi(r)).collect();
            let x = m.eval_ops(&ops)?;
            rep.instances += 1;
            for s in support(m, &x) {
                if !dominates_tableaux(&s, &t)? || s.residue_sequence(rd) != t.residue_sequence(rd) {
                    rep.fail(format!("{}: word {word:?} reaches {s} outside the cone of {t}", m.shape()));
                }
            }
        }
        Ok(rep)
    }

    /// `v_t y_r` lies in the span of `v_s` with `s ▷ t` and `res(s) = res(t)`.
    pub fn y_down<R: Rng>(m: &SpechtModule, rng: &mut R, count: usize) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("y_down");
        let rd = m.residue_data();
        let n = m.n();
        if n == 0 {
            return Ok(rep);
        }
        for _ in 0..count {
            let (t, _) = random_walk(m.shape(), rng);
            let r = rng.gen_range(1..=n);
            let id = m.index_of(&t)?;
            let x = m.act_vec(&m.basis_vector(id), Op::Y(r))?;
            rep.instances += 1;
            for s in support(m, &x) {
                if s == t || !dominates_tableaux(&s, &t)? || s.residue_sequence(rd) != t.residue_sequence(rd) {
                    rep.fail(format!("{}: v_t y_{r} with t = {t} meets {s}", m.shape()));
                }
            }
        }
        Ok(rep)
    }

    fn rows_tail(t: &Tableau, n: usize, gamma: usize) -> Vec<RowIndex> {
        (1..=gamma).map(|h| t.row_of_entry(n + h).expect("entry")).collect()
    }

    /// How the rows of `n+1, …, n+γ` are compared in [`filtration`].
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
    pub enum RowComparison {
        /// `row_s(n+g) ≥ row_t(n+g)` for every `g`
        Componentwise,
        /// `(row(n+γ), …, row(n+1))` weakly increases lexicographically, which is what
        /// iterating the one-step restriction filtration gives
        Iterated,
    }

    /// Rows of the top `γ` entries under words in the generators of the first `N − γ` strands.
    pub fn filtration<R: Rng>(
        m: &SpechtModule,
        rng: &mut R,
        count: usize,
        cmp: RowComparison,
    ) -> Result<SuiteReport> {
        let name = match cmp {
            RowComparison::Componentwise => "filtration",
            RowComparison::Iterated => "filtration_iterated",
        };
        let mut rep = SuiteReport::new(name);
        let total = m.n();
        if total < 2 {
            return Ok(rep);
        }
        for _ in 0..count {
            let gamma = rng.gen_range(1..=(total - 1).min(3));
            let n = total - gamma;
            let (t, _) = random_walk(m.shape(), rng);
            let len = rng.gen_range(1..=6);
            let ops: Vec<Op> = (0..len)
                .map(|_| {
                    if n >= 2 && rng.gen_bool(0.6) {
                        Op::Psi(rng.gen_range(1..n))
                    } else {
                        Op::Y(rng.gen_range(1..=n))
                    }
                })
                .collect();
            let id = m.index_of(&t)?;
            let x = m.act_ops(&m.basis_vector(id), &ops)?;
            rep.instances += 1;
            let base = rows_tail(&t, n, gamma);
            for s in support(m, &x) {
                let rows = rows_tail(&s, n, gamma);
                let bad = match cmp {
                    RowComparison::Componentwise => rows.iter().zip(&base).any(|(a, b)| a < b),
                    RowComparison::Iterated => rows.iter().rev().lt(base.iter().rev()),
                };
                if bad {
                    rep.fail(format!("{}: {ops:?} on {t} reaches {s} (γ = {gamma})", m.shape()));
                }
            }
        }
        Ok(rep)
    }

    /// Standard `ν`-tableaux restricting to an initial tableau, with distinct residues on
    /// `n+1, …, n+γ` and the top entries of each row forming an interval.
    pub fn initial_tail_tableaux(m: &SpechtModule, gamma: usize) -> Vec<Tableau> {
        let nu = m.shape();
        let rd = m.residue_data();
        let n = nu.size() - gamma;
        let mut out = Vec::new();
        let mut shapes = vec![nu.clone()];
        for _ in 0..gamma {
            shapes = shapes
                .iter()
                .flat_map(|s| s.removable().into_iter().map(move |a| s.without_node(a).expect("removable")))
                .unique()
                .collect();
        }
        for sigma in shapes {
            let diff: Vec<Node> = nu.difference(&sigma);
            let init = Tableau::initial(&sigma);
            for order in diff.iter().permutations(gamma) {
                let entries: Vec<usize> = nu
                    .nodes()
                    .iter()
                    .map(|x| match order.iter().position(|y| *y == x) {
                        Some(h) => n + h + 1,
                        None => init.entry(*x).expect("node of σ"),
                    })
                    .collect();
                let Ok(t) = Tableau::new(nu.clone(), entries) else { continue };
                if !t.is_standard() {
                    continue;
                }
                let res = t.residue_sequence(rd);
                if res[n..].iter().unique().count() != gamma {
                    continue;
                }
                let rows = rows_tail(&t, n, gamma);
                let interval = (0..gamma)
                    .tuple_combinations()
                    .all(|(f, g)| rows[f] != rows[g] || (f..=g).all(|h| rows[h] == rows[f]));
                if interval {
                    out.push(t);
                }
            }
        }
        out
    }

    /// `v_t y_{n+g}` for `t` as in [`initial_tail_tableaux`] pushes the strings `n+f, …, n+g`
    /// of the row of `n+g` strictly down and no top string up.
    pub fn pushing<R: Rng>(m: &SpechtModule, rng: &mut R, count: usize) -> Result<SuiteReport> {
        let mut rep = SuiteReport::new("pushing");
        let rd = m.residue_data();
        let total = m.n();
        if total < 2 {
            return Ok(rep);
        }
        let pools: Vec<(usize, Vec<Tableau>)> =
            (1..=(total - 1).min(3)).map(|g| (g, initial_tail_tableaux(m, g))).filter(|(_, v)| !v.is_empty()).collect();
        if pools.is_empty() {
            return Ok(rep);
        }
        for _ in 0..count {
            let (gamma, pool) = &pools[rng.gen_range(0..pools.len())];
            let gamma = *gamma;
            let n = total - gamma;
            let t = &pool[rng.gen_range(0..pool.len())];
            let g = rng.gen_range(1..=gamma);
            let rows = rows_tail(t, n, gamma);
            let f = (1..=g).find(|&f| rows[f - 1] == rows[g - 1]).expect("g itself");
            let id = m.index_of(t)?;
            let x = m.act_vec(&m.basis_vector(id), Op::Y(n + g))?;
            rep.instances += 1;
            for s in support(m, &x) {
                let srows = rows_tail(&s, n, gamma);
                let bad = s.residue_sequence(rd) != t.residue_sequence(rd)
                    || (1..=gamma).any(|h| {
                        let (a, b) = (srows[h - 1], rows[h - 1]);
                        a < b || (f <= h && h <= g && a == b)
                    });
                if bad {
                    rep.fail(format!("{}: v_t y_{} with t = {t} meets {s}", m.shape(), n + g));
                }
            }
        }
        Ok(rep)
    }
}
