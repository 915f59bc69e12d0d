//! Multipartitions, nodes, residues and tableaux.

use crate::error::{Error, Result};
use crate::klr::Perm;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Quantum characteristic `e` together with the multicharge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueData {
    pub e: u32,
    pub charge: Vec<i64>,
}

impl ResidueData {
    pub fn new(e: u32, charge: Vec<i64>) -> Result<Self> {
        if e == 1 {
            return Err(Error::input("e = 1 is not allowed (use e = 0 or e >= 2)"));
        }
        if charge.is_empty() {
            return Err(Error::input("charge must have at least one entry"));
        }
        Ok(ResidueData { e, charge })
    }

    pub fn level(&self) -> usize {
        self.charge.len()
    }

    pub fn reduce(&self, x: i64) -> i64 {
        if self.e == 0 {
            x
        } else {
            x.rem_euclid(self.e as i64)
        }
    }

    /// Residue of node `(l, r, c)` without bounds checking (1-based indices).
    pub fn res(&self, l: usize, r: usize, c: usize) -> i64 {
        self.reduce(self.charge[l - 1] - r as i64 + c as i64)
    }

    pub fn residue(&self, node: Node) -> Result<i64> {
        if node.l == 0 || node.l > self.level() || node.r == 0 || node.c == 0 {
            return Err(Error::input(format!("node {node} out of range for level {}", self.level())));
        }
        Ok(self.res(node.l, node.r, node.c))
    }

    /// `i -> j` in the quiver, i.e. `j = i - 1`.
    pub fn arrow(&self, i: i64, j: i64) -> bool {
        self.reduce(i - 1) == j
    }

    pub fn shift(&self, i: i64, k: i64) -> i64 {
        self.reduce(i + k)
    }

    /// `|I|`, or `None` for `e = 0`.
    pub fn num_residues(&self) -> Option<usize> {
        if self.e == 0 {
            None
        } else {
            Some(self.e as usize)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub l: usize,
    pub r: usize,
    pub c: usize,
}

impl Node {
    pub fn new(l: usize, r: usize, c: usize) -> Self {
        Node { l, r, c }
    }

    pub fn row(&self) -> RowIndex {
        RowIndex { l: self.l, r: self.r }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.r, self.c)
    }
}

impl Serialize for Node {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.l, self.r, self.c].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [l, r, c] = <[usize; 3]>::deserialize(d)?;
        Ok(Node { l, r, c })
    }
}

/// Row of a multipartition; the derived order is the lexicographic row order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowIndex {
    pub l: usize,
    pub r: usize,
}

impl fmt::Display for RowIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.l, self.r)
    }
}

impl Serialize for RowIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.l, self.r].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RowIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [l, r] = <[usize; 2]>::deserialize(d)?;
        Ok(RowIndex { l, r })
    }
}

/// An `ℓ`-tuple of partitions. Empty components are kept so the level is part of the value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition {
    comps: Vec<Vec<usize>>,
}

impl Serialize for Multipartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.comps.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multipartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let comps = Vec::<Vec<usize>>::deserialize(d)?;
        Multipartition::new(comps).map_err(serde::de::Error::custom)
    }
}

impl Multipartition {
    pub fn new(mut comps: Vec<Vec<usize>>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::input("a multipartition needs at least one component"));
        }
        for comp in comps.iter_mut() {
            while comp.last() == Some(&0) {
                comp.pop();
            }
            if comp.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::input(format!("component {comp:?} is not weakly decreasing")));
            }
            if comp.contains(&0) {
                return Err(Error::input(format!("component {comp:?} has an interior zero")));
            }
        }
        Ok(Multipartition { comps })
    }

    pub fn empty(level: usize) -> Self {
        Multipartition { comps: vec![Vec::new(); level.max(1)] }
    }

    /// Parses compact bracket syntax such as `3,3,2,1|2|3,2`; empty components may be
    /// written as nothing, `-`, `0` or `∅`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut comps = Vec::new();
        for part in s.split('|') {
            let part = part.trim();
            if part.is_empty() || part == "-" || part == "∅" || part == "0" {
                comps.push(Vec::new());
                continue;
            }
            let mut comp = Vec::new();
            for x in part.split(',') {
                let v: usize = x
                    .trim()
                    .parse()
                    .map_err(|_| Error::input(format!("bad part '{x}' in '{s}'")))?;
                comp.push(v);
            }
            comps.push(comp);
        }
        Multipartition::new(comps)
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.comps
    }

    pub fn level(&self) -> usize {
        self.comps.len()
    }

    pub fn size(&self) -> usize {
        self.comps.iter().flatten().sum()
    }

    /// Length of row `(l, r)`, zero if the row is absent.
    pub fn row_len(&self, l: usize, r: usize) -> usize {
        if l == 0 || r == 0 || l > self.comps.len() {
            return 0;
        }
        self.comps[l - 1].get(r - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, node: Node) -> bool {
        node.c >= 1 && node.c <= self.row_len(node.l, node.r)
    }

    /// Nodes in reading order: components left to right, rows top to bottom.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::with_capacity(self.size());
        for (li, comp) in self.comps.iter().enumerate() {
            for (ri, &len) in comp.iter().enumerate() {
                for c in 1..=len {
                    out.push(Node::new(li + 1, ri + 1, c));
                }
            }
        }
        out
    }

    pub fn rows(&self) -> Vec<RowIndex> {
        let mut out = Vec::new();
        for (li, comp) in self.comps.iter().enumerate() {
            for ri in 0..comp.len() {
                out.push(RowIndex { l: li + 1, r: ri + 1 });
            }
        }
        out
    }

    pub fn addable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (li, comp) in self.comps.iter().enumerate() {
            for r in 1..=comp.len() + 1 {
                let len = self.row_len(li + 1, r);
                if r == 1 || self.row_len(li + 1, r - 1) > len {
                    out.push(Node::new(li + 1, r, len + 1));
                }
            }
        }
        out
    }

    pub fn removable(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (li, comp) in self.comps.iter().enumerate() {
            for (ri, &len) in comp.iter().enumerate() {
                if self.row_len(li + 1, ri + 2) < len {
                    out.push(Node::new(li + 1, ri + 1, len));
                }
            }
        }
        out
    }

    pub fn with_node(&self, node: Node) -> Result<Self> {
        let mut comps = self.comps.clone();
        let comp = comps
            .get_mut(node.l - 1)
            .ok_or_else(|| Error::input("component out of range"))?;
        if node.r == comp.len() + 1 && node.c == 1 {
            comp.push(1);
        } else if node.r <= comp.len() && comp[node.r - 1] + 1 == node.c {
            comp[node.r - 1] += 1;
        } else {
            return Err(Error::input(format!("node {node} is not addable")));
        }
        Multipartition::new(comps)
    }

    pub fn without_node(&self, node: Node) -> Result<Self> {
        if !self.removable().contains(&node) {
            return Err(Error::input(format!("node {node} is not removable")));
        }
        let mut comps = self.comps.clone();
        comps[node.l - 1][node.r - 1] -= 1;
        Multipartition::new(comps)
    }

    /// Componentwise row maximum.
    pub fn union(&self, other: &Self) -> Self {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| {
                (0..a.len().max(b.len()))
                    .map(|i| a.get(i).copied().unwrap_or(0).max(b.get(i).copied().unwrap_or(0)))
                    .collect()
            })
            .collect();
        Multipartition { comps }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.level() == other.level()
            && self
                .comps
                .iter()
                .enumerate()
                .all(|(l, comp)| comp.iter().enumerate().all(|(r, &len)| len <= other.row_len(l + 1, r + 1)))
    }

    /// Nodes of `self` not in `other`, in reading order.
    pub fn difference(&self, other: &Self) -> Vec<Node> {
        self.nodes().into_iter().filter(|n| !other.contains(*n)).collect()
    }

    /// All multipartitions of `n` with `level` components, in a fixed order.
    pub fn all(n: usize, level: usize) -> Vec<Multipartition> {
        fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if n == 0 {
                out.push(cur.clone());
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                partitions(n - p, p, cur, out);
                cur.pop();
            }
        }
        let parts: Vec<Vec<Vec<usize>>> = (0..=n)
            .map(|k| {
                let mut out = Vec::new();
                partitions(k, k, &mut Vec::new(), &mut out);
                out
            })
            .collect();
        let mut result = Vec::new();
        fn rec(
            rem: usize,
            left: usize,
            parts: &[Vec<Vec<usize>>],
            cur: &mut Vec<Vec<usize>>,
            out: &mut Vec<Multipartition>,
        ) {
            if left == 1 {
                for p in &parts[rem] {
                    cur.push(p.clone());
                    out.push(Multipartition { comps: cur.clone() });
                    cur.pop();
                }
                return;
            }
            for k in (0..=rem).rev() {
                for p in &parts[k] {
                    cur.push(p.clone());
                    rec(rem - k, left - 1, parts, cur, out);
                    cur.pop();
                }
            }
        }
        rec(n, level.max(1), &parts, &mut Vec::new(), &mut result);
        result
    }

    /// Number of standard tableaux: multinomial coefficient times hook length formula.
    pub fn count_standard(&self) -> u128 {
        fn fact(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        let mut total = fact(self.size());
        for comp in &self.comps {
            let mut hooks: u128 = 1;
            for (r, &len) in comp.iter().enumerate() {
                for c in 0..len {
                    let arm = len - c - 1;
                    let leg = comp[r + 1..].iter().filter(|&&x| x > c).count();
                    hooks *= (arm + leg + 1) as u128;
                }
            }
            // f^λ = m!/hooks and the multinomial contributes 1/m!
            total /= hooks;
        }
        total
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// Dominance `a ⊵ b` via the prefix-sum definition.
pub fn dominates(a: &Multipartition, b: &Multipartition) -> bool {
    let level = a.level().max(b.level());
    let mut before_a = 0usize;
    let mut before_b = 0usize;
    for l in 1..=level {
        let rows = a
            .components()
            .get(l - 1)
            .map_or(0, |c| c.len())
            .max(b.components().get(l - 1).map_or(0, |c| c.len()));
        let (mut sa, mut sb) = (before_a, before_b);
        if sa < sb {
            return false;
        }
        for r in 1..=rows {
            sa += a.row_len(l, r);
            sb += b.row_len(l, r);
            if sa < sb {
                return false;
            }
        }
        before_a = sa;
        before_b = sb;
    }
    true
}

/// Strict dominance.
pub fn strictly_dominates(a: &Multipartition, b: &Multipartition) -> bool {
    a != b && dominates(a, b)
}

/// Precomputed per-node data for a fixed shape.
#[derive(Clone, Debug)]
pub struct ShapeInfo {
    pub shape: Multipartition,
    pub nodes: Vec<Node>,
    pub res: Vec<i64>,
    pub right: Vec<Option<usize>>,
    pub below: Vec<Option<usize>>,
    pub row_of: Vec<usize>,
    pub rows: Vec<RowIndex>,
    index: HashMap<Node, usize>,
}

impl ShapeInfo {
    pub fn new(shape: &Multipartition, rd: &ResidueData) -> Result<Self> {
        if shape.level() != rd.level() {
            return Err(Error::input(format!(
                "shape {shape} has level {} but the charge has level {}",
                shape.level(),
                rd.level()
            )));
        }
        let nodes = shape.nodes();
        let index: HashMap<Node, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let res = nodes.iter().map(|n| rd.res(n.l, n.r, n.c)).collect();
        let right = nodes
            .iter()
            .map(|n| index.get(&Node::new(n.l, n.r, n.c + 1)).copied())
            .collect();
        let below = nodes
            .iter()
            .map(|n| index.get(&Node::new(n.l, n.r + 1, n.c)).copied())
            .collect();
        let rows = shape.rows();
        let row_pos: HashMap<RowIndex, usize> = rows.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let row_of = nodes.iter().map(|n| row_pos[&n.row()]).collect();
        Ok(ShapeInfo { shape: shape.clone(), nodes, res, right, below, row_of, rows, index })
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn index_of(&self, node: Node) -> Option<usize> {
        self.index.get(&node).copied()
    }
}

/// A filling of a multipartition by `1..=n`, stored in reading order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Multipartition,
    entries: Vec<usize>,
}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tableau {
    /// Canonical order: lexicographic on the row-reading word.
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries.cmp(&other.entries).then_with(|| self.shape.cmp(&other.shape))
    }
}

impl Tableau {
    pub fn new(shape: Multipartition, entries: Vec<usize>) -> Result<Self> {
        let n = shape.size();
        if entries.len() != n {
            return Err(Error::input("tableau has the wrong number of entries"));
        }
        let mut seen = vec![false; n + 1];
        for &x in &entries {
            if x == 0 || x > n || seen[x] {
                return Err(Error::input(format!("tableau entries {entries:?} are not a bijection onto 1..={n}")));
            }
            seen[x] = true;
        }
        Ok(Tableau { shape, entries })
    }

    pub(crate) fn from_parts_unchecked(shape: Multipartition, entries: Vec<usize>) -> Self {
        Tableau { shape, entries }
    }

    /// Builds a tableau from rows grouped by component.
    pub fn from_rows(rows: &[Vec<Vec<usize>>]) -> Result<Self> {
        let comps = rows.iter().map(|c| c.iter().map(|r| r.len()).collect()).collect();
        let shape = Multipartition::new(comps)?;
        let entries = rows.iter().flatten().flatten().copied().collect();
        Tableau::new(shape, entries)
    }

    pub fn initial(shape: &Multipartition) -> Self {
        Tableau { shape: shape.clone(), entries: (1..=shape.size()).collect() }
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Entries in reading order.
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Vec<usize>>> {
        let mut it = self.entries.iter();
        self.shape
            .components()
            .iter()
            .map(|comp| comp.iter().map(|&len| it.by_ref().take(len).copied().collect()).collect())
            .collect()
    }

    pub fn entry(&self, node: Node) -> Option<usize> {
        let idx = self.shape.nodes().iter().position(|n| *n == node)?;
        Some(self.entries[idx])
    }

    /// `pos[k-1]` is the reading-order index of the node holding `k`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.entries.len()];
        for (i, &k) in self.entries.iter().enumerate() {
            pos[k - 1] = i;
        }
        pos
    }

    pub fn node_of(&self, k: usize) -> Option<Node> {
        let i = self.entries.iter().position(|&x| x == k)?;
        Some(self.shape.nodes()[i])
    }

    pub fn is_row_standard(&self) -> bool {
        let nodes = self.shape.nodes();
        (1..nodes.len()).all(|i| nodes[i].row() != nodes[i - 1].row() || self.entries[i - 1] < self.entries[i])
    }

    pub fn is_standard(&self) -> bool {
        if !self.is_row_standard() {
            return false;
        }
        let nodes = self.shape.nodes();
        let index: HashMap<Node, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        nodes.iter().enumerate().all(|(i, n)| match index.get(&Node::new(n.l, n.r + 1, n.c)) {
            Some(&j) => self.entries[i] < self.entries[j],
            None => true,
        })
    }

    /// Shape of the subtableau containing `1..=k`.
    pub fn restricted_shape(&self, k: usize) -> Multipartition {
        let nodes = self.shape.nodes();
        let mut comps: Vec<Vec<usize>> = self.shape.components().iter().map(|c| vec![0; c.len()]).collect();
        for (i, n) in nodes.iter().enumerate() {
            if self.entries[i] <= k {
                comps[n.l - 1][n.r - 1] += 1;
            }
        }
        for comp in comps.iter_mut() {
            while comp.last() == Some(&0) {
                comp.pop();
            }
        }
        Multipartition { comps }
    }

    /// `t↓k`: the subtableau on `1..=k` (requires the result to be a multipartition).
    pub fn restrict(&self, k: usize) -> Result<Tableau> {
        let shape = self.restricted_shape(k);
        let nodes = self.shape.nodes();
        let entries: Vec<usize> = nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| self.entries[*i] <= k)
            .map(|(i, _)| self.entries[i])
            .collect();
        let t = Tableau::new(shape, entries)?;
        let sub_nodes = t.shape.nodes();
        let ok = nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| self.entries[*i] <= k)
            .map(|(_, n)| *n)
            .eq(sub_nodes.iter().copied());
        if !ok {
            return Err(Error::input("restriction is not a tableau of a multipartition"));
        }
        Ok(t)
    }

    pub fn residue_sequence(&self, rd: &ResidueData) -> Vec<i64> {
        let nodes = self.shape.nodes();
        let mut out = vec![0; self.n()];
        for (i, n) in nodes.iter().enumerate() {
            out[self.entries[i] - 1] = rd.res(n.l, n.r, n.c);
        }
        out
    }

    /// `d(t)` with `t = t^μ d(t)`; as a function `d(k)` is the reading position of `k`.
    pub fn perm(&self) -> Perm {
        Perm::from_images(self.positions().iter().map(|p| p + 1).collect()).expect("bijection")
    }

    /// Right action of a simple transposition: swap the entries `r` and `r+1`.
    pub fn swap_entries(&self, r: usize) -> Tableau {
        let entries = self
            .entries
            .iter()
            .map(|&x| if x == r { r + 1 } else if x == r + 1 { r } else { x })
            .collect();
        Tableau { shape: self.shape.clone(), entries }
    }

    /// Right action `t·w`, where `(t·w)(x) = w^{-1}(t(x))`.
    pub fn act(&self, w: &Perm) -> Tableau {
        let inv = w.inverse();
        let entries = self.entries.iter().map(|&x| if x <= inv.size() { inv.apply(x) } else { x }).collect();
        Tableau { shape: self.shape.clone(), entries }
    }

    /// The row index containing `k`.
    pub fn row_of_entry(&self, k: usize) -> Option<RowIndex> {
        self.node_of(k).map(|n| n.row())
    }
}

impl Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Tableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Vec<usize>>>::deserialize(d)?;
        Tableau::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .rows()
            .iter()
            .map(|c| c.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join("/"))
            .collect();
        write!(f, "({})", comps.join(" | "))
    }
}

pub fn boundary_nodes(mp: &Multipartition) -> (Vec<Node>, Vec<Node>) {
    (mp.addable(), mp.removable())
}

pub fn initial_tableau(mp: &Multipartition) -> Tableau {
    Tableau::initial(mp)
}

/// `d_A(μ)`: addable minus removable nodes of residue `res(A)` strictly below `A`.
pub fn node_degree(mp: &Multipartition, a: Node, rd: &ResidueData) -> i64 {
    let i = rd.res(a.l, a.r, a.c);
    let below = |n: &Node| n.row() > a.row() && rd.res(n.l, n.r, n.c) == i;
    let add = mp.addable().iter().filter(|n| below(n)).count() as i64;
    let rem = mp.removable().iter().filter(|n| below(n)).count() as i64;
    add - rem
}

/// Recursive degree of a standard tableau.
pub fn tableau_degree(t: &Tableau, rd: &ResidueData) -> Result<i64> {
    if !t.is_standard() {
        return Err(Error::input(format!("tableau {t} is not standard")));
    }
    let nodes = t.shape().nodes();
    let mut shape = Multipartition::empty(t.shape().level());
    let mut deg = 0;
    let pos = t.positions();
    for k in 1..=t.n() {
        let a = nodes[pos[k - 1]];
        shape = shape.with_node(a)?;
        deg += node_degree(&shape, a, rd);
    }
    Ok(deg)
}

/// Dominance of tableaux: every prefix shape dominates.
pub fn dominates_tableaux(s: &Tableau, t: &Tableau) -> Result<bool> {
    if s.shape() != t.shape() {
        return Err(Error::input("tableau shapes differ"));
    }
    Ok((1..=s.n()).all(|k| dominates(&s.restricted_shape(k), &t.restricted_shape(k))))
}

/// Standard tableaux of `mp` as reading-order entry vectors, in canonical order.
pub fn standard_entry_vectors(mp: &Multipartition) -> Vec<Vec<usize>> {
    let nodes = mp.nodes();
    let n = nodes.len();
    let index: HashMap<Node, usize> = nodes.iter().enumerate().map(|(i, nd)| (*nd, i)).collect();
    let mut out = Vec::new();
    let mut entries = vec![0usize; n];
    let mut filled = vec![false; n];
    fn rec(
        k: usize,
        n: usize,
        nodes: &[Node],
        index: &HashMap<Node, usize>,
        entries: &mut Vec<usize>,
        filled: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k > n {
            out.push(entries.clone());
            return;
        }
        for i in 0..n {
            if filled[i] {
                continue;
            }
            let nd = nodes[i];
            let left_ok = nd.c == 1 || filled[index[&Node::new(nd.l, nd.r, nd.c - 1)]];
            let up_ok = nd.r == 1 || filled[index[&Node::new(nd.l, nd.r - 1, nd.c)]];
            if left_ok && up_ok {
                filled[i] = true;
                entries[i] = k;
                rec(k + 1, n, nodes, index, entries, filled, out);
                filled[i] = false;
            }
        }
    }
    rec(1, n, &nodes, &index, &mut entries, &mut filled, &mut out);
    out.sort();
    out
}

pub fn standard_tableaux(mp: &Multipartition) -> Vec<Tableau> {
    standard_entry_vectors(mp)
        .into_iter()
        .map(|e| Tableau::from_parts_unchecked(mp.clone(), e))
        .collect()
}

/// A horizontal run of nodes ending a row whose removal leaves a multipartition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strip {
    pub nodes: Vec<Node>,
    pub j: i64,
    pub row: RowIndex,
}

impl Strip {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, node: Node) -> bool {
        self.nodes.contains(&node)
    }

    /// Residue of the rightmost node.
    pub fn last_residue(&self, rd: &ResidueData) -> i64 {
        rd.shift(self.j, self.nodes.len() as i64 - 1)
    }
}

/// Removable `j`-strips of length at most `maxlen`, in row order.
pub fn removable_strips(mp: &Multipartition, j: i64, maxlen: usize, rd: &ResidueData) -> Vec<Strip> {
    let mut out = Vec::new();
    for row in mp.rows() {
        let len = mp.row_len(row.l, row.r);
        let below = mp.row_len(row.l, row.r + 1);
        let lo = len.saturating_sub(maxlen) + 1;
        for c in (lo..=len).rev() {
            if c >= 1 && c > below && rd.res(row.l, row.r, c) == j {
                out.push(Strip {
                    nodes: (c..=len).map(|x| Node::new(row.l, row.r, x)).collect(),
                    j,
                    row,
                });
            }
        }
    }
    out
}

/// All data attached to a Garnir node.
#[derive(Clone, Debug, Serialize)]
pub struct GarnirData {
    pub node: Node,
    pub belt: Vec<Node>,
    pub b: usize,
    pub a: usize,
    pub c: usize,
    pub coset_reps: Vec<Perm>,
    pub garnir_tableau: Tableau,
    pub k_a: usize,
    pub bricks: Vec<Perm>,
    pub residues: Vec<i64>,
}

impl GarnirData {
    /// The element of `D_A` of maximal length.
    pub fn longest_rep(&self) -> &Perm {
        self.coset_reps.iter().max_by_key(|d| d.length()).expect("nonempty")
    }

    /// `t_A · d_max`: the classical Garnir tableau.
    pub fn garnir_top(&self) -> Tableau {
        let mut t = self.garnir_tableau.clone();
        for r in self.longest_rep().reduced_word() {
            t = t.act(&self.bricks[r - 1]);
        }
        t
    }
}

pub fn garnir_data(mp: &Multipartition, a: Node, rd: &ResidueData) -> Result<GarnirData> {
    let (l, r, c) = (a.l, a.r, a.c);
    if !mp.contains(a) || !mp.contains(Node::new(l, r + 1, c)) {
        return Err(Error::input(format!("{a} is not a Garnir node of {mp}")));
    }
    let e = rd.e as usize;
    let top_len = mp.row_len(l, r);
    let ceil = |x: usize| (x + e - 1) / e;
    let (top_belt, bottom_belt): (Vec<usize>, Vec<usize>) = if e == 0 {
        (Vec::new(), Vec::new())
    } else {
        let top = (c..=top_len).filter(|&g| e * ceil(g - c + 1) <= top_len - c + 1).collect();
        let bottom = (1..=c).filter(|&g| e * ceil(c - g + 1) <= c).collect();
        (top, bottom)
    };
    let mut belt: Vec<Node> = top_belt.iter().map(|&g| Node::new(l, r, g)).collect();
    belt.extend(bottom_belt.iter().map(|&g| Node::new(l, r + 1, g)));
    let (a_cnt, c_cnt) = if e == 0 { (0, 0) } else { (top_belt.len() / e, bottom_belt.len() / e) };
    let b = a_cnt + c_cnt;

    let nodes = mp.nodes();
    let index: HashMap<Node, usize> = nodes.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let lo = index[&a] + 1;
    let hi = index[&Node::new(l, r + 1, c)] + 1;
    let mut entries: Vec<usize> = (1..=nodes.len()).collect();
    let mut next = lo;
    let mut place = |node: Node, entries: &mut Vec<usize>| {
        entries[index[&node]] = next;
        next += 1;
    };
    for g in 1..=c {
        if !bottom_belt.contains(&g) {
            place(Node::new(l, r + 1, g), &mut entries);
        }
    }
    for &g in &top_belt {
        place(Node::new(l, r, g), &mut entries);
    }
    for &g in &bottom_belt {
        place(Node::new(l, r + 1, g), &mut entries);
    }
    for g in c..=top_len {
        if !top_belt.contains(&g) {
            place(Node::new(l, r, g), &mut entries);
        }
    }
    if next != hi + 1 {
        return Err(Error::internal(format!("Garnir filling at {a} placed {} entries", next - lo)));
    }
    let t_a = Tableau::new(mp.clone(), entries)?;
    // the belt occupies a consecutive block of numbers starting at k_A
    let k_a = if b > 0 {
        lo + (1..=c).filter(|g| !bottom_belt.contains(g)).count()
    } else {
        t_a.entry(a).unwrap_or(lo)
    };
    let n = mp.size();
    let bricks = (1..b)
        .map(|br| {
            let mut img: Vec<usize> = (1..=n).collect();
            for x in (k_a + e * (br - 1))..(k_a + br * e) {
                img.swap(x - 1, x + e - 1);
            }
            Perm::from_images(img).expect("brick swap")
        })
        .collect();
    let coset_reps = if b == 0 { vec![Perm::identity(0)] } else { shuffle_coset_reps(b, a_cnt) };
    let residues = t_a.residue_sequence(rd);
    Ok(GarnirData {
        node: a,
        belt,
        b,
        a: a_cnt,
        c: c_cnt,
        coset_reps,
        garnir_tableau: t_a,
        k_a,
        bricks,
        residues,
    })
}

/// Minimal length right coset representatives of `S_a × S_{b-a}` in `S_b`: the `d` whose
/// inverse is increasing on `1..=a` and on `a+1..=b`. Sorted by length, then images.
pub fn shuffle_coset_reps(b: usize, a: usize) -> Vec<Perm> {
    use itertools::Itertools;
    let mut out: Vec<Perm> = (1..=b)
        .combinations(a)
        .map(|first| {
            let rest: Vec<usize> = (1..=b).filter(|x| !first.contains(x)).collect();
            let inv: Vec<usize> = first.into_iter().chain(rest).collect();
            Perm::from_images(inv).expect("perm").inverse()
        })
        .collect();
    out.sort_by(|x, y| x.length().cmp(&y.length()).then_with(|| x.images().cmp(y.images())));
    out
}

/// All Garnir nodes of `mp` in reading order.
pub fn garnir_nodes(mp: &Multipartition) -> Vec<Node> {
    mp.nodes()
        .into_iter()
        .filter(|n| mp.contains(Node::new(n.l, n.r + 1, n.c)))
        .collect()
}
