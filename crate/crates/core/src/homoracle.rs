//! Brute-force graded homomorphism spaces between Specht modules.
//!
//! A degree `d` homomorphism `S^λ⟨d⟩ → S^μ` is a matrix `F` with `ρ_μ(g) F = F ρ_λ(g)` for
//! every generator. Unknowns are restricted to pairs `(s, t)` with `res s = res t` (the
//! idempotent equations) and `deg s = deg t + d`, so each degree is an independent system.

use crate::carterpayne::HomMap;
use crate::combinat::{Multipartition, ResidueData};
use crate::error::Result;
use crate::field::{Echelon, Field, Row};
use crate::int::Int;
use crate::specht::{Op, SparseMatrix, SpechtModule, Vector};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Generator matrices and per-basis data of a module, detached from its memo.
#[derive(Clone, Debug)]
pub struct ModuleData {
    pub shape: Multipartition,
    pub dim: usize,
    pub degrees: Vec<i64>,
    pub residues: Vec<Vec<i64>>,
    pub psi: Vec<SparseMatrix>,
    pub y: Vec<SparseMatrix>,
}

impl ModuleData {
    pub fn from_module(m: &SpechtModule) -> Result<Self> {
        let dim = m.dim();
        let n = m.n();
        let column = |op: Op| -> Result<SparseMatrix> {
            let cols = (0..dim as u32).map(|id| m.act_basis(id, op).map(|v| (*v).clone())).collect::<Result<_>>()?;
            Ok(SparseMatrix { rows: dim, cols })
        };
        let psi = (1..n).map(|r| column(Op::Psi(r))).collect::<Result<_>>()?;
        let y = (1..=n).map(|s| column(Op::Y(s))).collect::<Result<_>>()?;
        Ok(ModuleData {
            shape: m.shape().clone(),
            dim,
            degrees: (0..dim as u32).map(|i| m.degree(i)).collect(),
            residues: (0..dim as u32).map(|i| m.residue_sequence(i)).collect(),
            psi,
            y,
        })
    }

    pub fn generators(&self) -> impl Iterator<Item = (String, &SparseMatrix)> {
        let p = self.psi.iter().enumerate().map(|(i, m)| (format!("psi_{}", i + 1), m));
        let y = self.y.iter().enumerate().map(|(i, m)| (format!("y_{}", i + 1), m));
        p.chain(y)
    }
}

/// `A · B` for column-major sparse matrices.
pub fn matmul(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let cols = b
        .cols
        .iter()
        .map(|col| {
            let mut acc: BTreeMap<u32, Int> = BTreeMap::new();
            for (k, c) in col {
                for (i, x) in &a.cols[*k as usize] {
                    let e = acc.entry(*i).or_insert_with(Int::zero);
                    *e += &(x * c);
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect::<Vector>()
        })
        .collect();
    SparseMatrix { rows: a.rows, cols }
}

/// Solution space of one degree block.
pub struct HomBlock<'f, F: Field> {
    pub degree: i64,
    pub vars: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), usize>,
    echelon: Echelon<'f, F>,
}

impl<'f, F: Field> HomBlock<'f, F> {
    pub fn dim(&self) -> usize {
        self.echelon.nullity()
    }

    /// Basis maps as `(target row, source column, value)` triples.
    pub fn basis(&self) -> Vec<Vec<(usize, usize, F::Elem)>> {
        let f = self.field();
        self.echelon
            .nullspace()
            .into_iter()
            .map(|x| {
                x.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !f.is_zero(v))
                    .map(|(k, v)| (self.vars[k].0 as usize, self.vars[k].1 as usize, v))
                    .collect()
            })
            .collect()
    }

    fn field(&self) -> &'f F {
        self.echelon.field()
    }

    /// Whether an integer matrix is a solution of this block's system.
    pub fn contains(&self, m: &SparseMatrix) -> bool {
        let f = self.field();
        let mut x = vec![f.zero(); self.vars.len()];
        for (j, col) in m.cols.iter().enumerate() {
            for (i, c) in col {
                match self.index.get(&(*i, j as u32)) {
                    Some(&k) => x[k] = f.from_int(c),
                    None => return false,
                }
            }
        }
        self.echelon.satisfies(&x)
    }
}

/// Solves the degree-`d` intertwiner equations.
pub fn hom_block<'f, F: Field>(src: &ModuleData, tgt: &ModuleData, d: i64, field: &'f F) -> HomBlock<'f, F> {
    let mut vars = Vec::new();
    for s in 0..tgt.dim {
        for t in 0..src.dim {
            if tgt.degrees[s] == src.degrees[t] + d && tgt.residues[s] == src.residues[t] {
                vars.push((s as u32, t as u32));
            }
        }
    }
    let index: HashMap<(u32, u32), usize> = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut echelon = Echelon::new(field, vars.len());
    // rows of the source matrices, for F·ρ_λ(g)
    let transpose = |m: &SparseMatrix| {
        let mut rows: Vec<Vec<(u32, Int)>> = vec![Vec::new(); m.rows];
        for (j, col) in m.cols.iter().enumerate() {
            for (i, c) in col {
                rows[*i as usize].push((j as u32, c.clone()));
            }
        }
        rows
    };
    let gens: Vec<(&SparseMatrix, &SparseMatrix)> =
        src.psi.iter().zip(&tgt.psi).chain(src.y.iter().zip(&tgt.y)).collect();
    for (gl, gm) in gens {
        let gl_rows = transpose(gl);
        let mut eqs: BTreeMap<(u32, u32), BTreeMap<usize, Int>> = BTreeMap::new();
        for (k, &(s1, t1)) in vars.iter().enumerate() {
            // (ρ_μ F)[s, t1] gets ρ_μ[s, s1] F[s1, t1]
            for (s, c) in &gm.cols[s1 as usize] {
                *eqs.entry((*s, t1)).or_default().entry(k).or_insert_with(Int::zero) += c;
            }
            // (F ρ_λ)[s1, t] gets F[s1, t1] ρ_λ[t1, t]
            for (t, c) in &gl_rows[t1 as usize] {
                *eqs.entry((s1, *t)).or_default().entry(k).or_insert_with(Int::zero) += &(-c);
            }
        }
        for (_, eq) in eqs {
            let row: Row<F::Elem> = eq
                .into_iter()
                .map(|(k, c)| (k, field.from_int(&c)))
                .filter(|(_, v)| !field.is_zero(v))
                .collect();
            if !row.is_empty() {
                echelon.push(row);
            }
        }
    }
    HomBlock { degree: d, vars, index, echelon }
}

/// All degrees in which a nonzero homomorphism could live.
pub fn candidate_degrees(src: &ModuleData, tgt: &ModuleData) -> Vec<i64> {
    let mut out = BTreeSet::new();
    for s in 0..tgt.dim {
        for t in 0..src.dim {
            if tgt.residues[s] == src.residues[t] {
                out.insert(tgt.degrees[s] - src.degrees[t]);
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerSpace {
    pub source: Multipartition,
    pub target: Multipartition,
    pub degree_dims: BTreeMap<i64, usize>,
    /// Basis maps per degree as `(row, col, value)` triples with rendered values.
    pub bases: BTreeMap<i64, Vec<Vec<(usize, usize, String)>>>,
}

impl IntertwinerSpace {
    pub fn total_dim(&self) -> usize {
        self.degree_dims.values().sum()
    }

    pub fn dim_in(&self, d: i64) -> usize {
        self.degree_dims.get(&d).copied().unwrap_or(0)
    }
}

/// Graded `Hom(S^λ, S^μ)`, degree block by degree block.
pub fn intertwiner_space<F: Field>(
    lambda: &Multipartition,
    mu: &Multipartition,
    rd: &ResidueData,
    degrees: Option<&[i64]>,
    field: &F,
) -> Result<IntertwinerSpace> {
    let src = ModuleData::from_module(&SpechtModule::new(lambda, rd)?)?;
    let tgt = ModuleData::from_module(&SpechtModule::new(mu, rd)?)?;
    Ok(intertwiner_space_of(&src, &tgt, degrees, field))
}

pub fn intertwiner_space_of<F: Field>(
    src: &ModuleData,
    tgt: &ModuleData,
    degrees: Option<&[i64]>,
    field: &F,
) -> IntertwinerSpace {
    let ds: Vec<i64> = match degrees {
        Some(d) => d.to_vec(),
        None => candidate_degrees(src, tgt),
    };
    let blocks: Vec<(i64, usize, Vec<Vec<(usize, usize, String)>>)> = ds
        .par_iter()
        .map(|&d| {
            let b = hom_block(src, tgt, d, field);
            let basis = b
                .basis()
                .into_iter()
                .map(|m| m.into_iter().map(|(i, j, v)| (i, j, field.render(&v))).collect())
                .collect();
            (d, b.dim(), basis)
        })
        .collect();
    let mut degree_dims = BTreeMap::new();
    let mut bases = BTreeMap::new();
    for (d, dim, basis) in blocks {
        degree_dims.insert(d, dim);
        bases.insert(d, basis);
    }
    IntertwinerSpace { source: src.shape.clone(), target: tgt.shape.clone(), degree_dims, bases }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomCheck {
    pub ok: bool,
    pub reason: Option<String>,
}

/// Direct check over `Z` that `h` is a nonzero homogeneous intertwiner.
pub fn verify_is_hom(h: &HomMap, src: &ModuleData, tgt: &ModuleData) -> HomCheck {
    let fail = |r: String| HomCheck { ok: false, reason: Some(r) };
    let m = &h.matrix;
    if m.ncols() != src.dim || m.rows != tgt.dim {
        return fail(format!("matrix is {}x{}, expected {}x{}", m.rows, m.ncols(), tgt.dim, src.dim));
    }
    if m.cols.iter().all(|c| c.is_empty()) {
        return fail("zero matrix".into());
    }
    for (j, col) in m.cols.iter().enumerate() {
        for (i, _) in col {
            let (i, j) = (*i as usize, j);
            if tgt.degrees[i] != src.degrees[j] + h.degree {
                return fail(format!("entry ({i},{j}) is not of degree {}", h.degree));
            }
            if tgt.residues[i] != src.residues[j] {
                return fail(format!("entry ({i},{j}) mixes residue sequences"));
            }
        }
    }
    for ((name, gl), (_, gm)) in src.generators().zip(tgt.generators()) {
        if matmul(gm, m) != matmul(m, gl) {
            return fail(format!("does not commute with {name}"));
        }
    }
    HomCheck { ok: true, reason: None }
}
