//! Radical of the L-class modules and a trace-form oracle for the radical of
//! the whole monoid algebra.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::enumeration::MonoidTable;
use crate::error::{Error, Result};
use crate::green::GreenStructure;
use crate::linalg::{IntegerEchelon, RationalMatrix};

/// Default bound on `|M|` for [`trace_form_radical`].
pub const TRACE_FORM_BOUND: usize = 512;

/// The left module spanned by an L-class: `m` sends `x` to `m·x` when that
/// stays in the class and to 0 otherwise.
#[derive(Debug, Clone)]
pub struct LClassModule {
    pub l_class: usize,
    /// Element indices, ascending.
    pub basis: Vec<usize>,
    /// Idempotent of the class used to cut out the radical.
    pub idempotent: usize,
    /// `actions[g][k]`: basis position of `generator_g · basis[k]`.
    pub actions: Vec<Vec<Option<usize>>>,
    position: Vec<Option<usize>>,
}

impl LClassModule {
    /// Module of the L-class `l`, with its least idempotent.
    pub fn new(table: &MonoidTable, structure: &GreenStructure, l: usize) -> Result<LClassModule> {
        let lc = &structure.l_classes[l];
        let idempotent = lc
            .elements
            .iter()
            .copied()
            .find(|&x| table.element(x).is_idempotent())
            .ok_or(Error::NotRegular(lc.j_class))?;
        Ok(LClassModule::with_idempotent(table, structure, idempotent))
    }

    /// Module of the L-class of the idempotent `e`.
    pub fn with_idempotent(table: &MonoidTable, structure: &GreenStructure, e: usize) -> LClassModule {
        let l = structure.l_of[e];
        let lc = &structure.l_classes[l];
        let idempotent = e;
        let basis = lc.elements.clone();
        let mut position = vec![None; table.order()];
        for (k, &x) in basis.iter().enumerate() {
            position[x] = Some(k);
        }
        let actions = (0..table.generators().len())
            .map(|g| {
                basis
                    .iter()
                    .map(|&x| position[table.left_cayley(x, g)])
                    .collect()
            })
            .collect();
        LClassModule {
            l_class: l,
            basis,
            idempotent,
            actions,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis position of an element, if it lies in the class.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.position[x]
    }

    /// Basis position of `m · basis[k]`, or `None` when it falls out.
    pub fn act(&self, table: &MonoidTable, m: usize, k: usize) -> Option<usize> {
        self.position[table.multiply(m, self.basis[k])]
    }

    /// Linear equations cutting out `N_e(kL)`: for each `r` in the R-class of
    /// `e` and each `h` in the H-class of `e`, the coefficients of the basis
    /// elements `x` with `r·x = h` sum to zero. Rows are 0/1, sorted by
    /// `(r, h)`, with duplicates dropped.
    pub fn equations(&self, table: &MonoidTable, structure: &GreenStructure) -> Vec<Vec<usize>> {
        let e = self.idempotent;
        let h_e = structure.h_of[e];
        let h_members = &structure.h_classes[h_e].elements;
        let mut seen = HashSet::new();
        let mut rows = Vec::new();
        for &r in &structure.r_classes[structure.r_of[e]].elements {
            let mut by_target: Vec<Vec<usize>> = vec![Vec::new(); h_members.len()];
            for (k, &x) in self.basis.iter().enumerate() {
                let y = table.multiply(r, x);
                if structure.h_of[y] == h_e {
                    let slot = h_members.binary_search(&y).expect("member of H");
                    by_target[slot].push(k);
                }
            }
            for support in by_target {
                if !support.is_empty() && seen.insert(support.clone()) {
                    rows.push(support);
                }
            }
        }
        rows
    }
}

/// Basis of `N_e(kL)`, reduced so that vector `k` is 1 at basis position
/// `free[k]` and 0 at the other free positions.
#[derive(Debug, Clone)]
pub struct RadicalBasis {
    pub module: LClassModule,
    pub vectors: RationalMatrix,
    pub free: Vec<usize>,
}

impl RadicalBasis {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Trace of a linear map of the module that sends basis element `k` to
    /// basis element `map(k)` or to 0, restricted to the radical.
    pub fn trace_of_monomial(&self, map: impl Fn(usize) -> Option<usize>) -> num_rational::BigRational {
        let mut free_slot = vec![None; self.module.dim()];
        for (i, &f) in self.free.iter().enumerate() {
            free_slot[f] = Some(i);
        }
        let mut total = num_rational::BigRational::zero();
        for k in 0..self.module.dim() {
            let Some(target) = map(k) else { continue };
            let Some(i) = free_slot[target] else { continue };
            let coefficient = self.vectors.get(i, k);
            if !coefficient.is_zero() {
                total += coefficient;
            }
        }
        total
    }
}

/// Solves the defining system of `N_e(kL)` for the L-class `l`.
pub fn lclass_radical(table: &MonoidTable, structure: &GreenStructure, l: usize) -> Result<RadicalBasis> {
    Ok(solve(table, structure, LClassModule::new(table, structure, l)?))
}

fn solve(table: &MonoidTable, structure: &GreenStructure, module: LClassModule) -> RadicalBasis {
    let n = module.dim();
    let rows: Vec<Vec<BigInt>> = module
        .equations(table, structure)
        .into_iter()
        .map(|support| {
            let mut row = vec![BigInt::zero(); n];
            for k in support {
                row[k] = 1.into();
            }
            row
        })
        .collect();
    let (vectors, free) = IntegerEchelon::reduce(rows, n).nullspace();
    RadicalBasis { module, vectors, free }
}

/// Radical of the L-class of each given idempotent, in parallel.
pub fn radicals_of_idempotents(
    table: &MonoidTable,
    structure: &GreenStructure,
    idempotents: &[Option<usize>],
) -> Vec<Option<RadicalBasis>> {
    idempotents
        .par_iter()
        .map(|e| e.map(|e| solve(table, structure, LClassModule::with_idempotent(table, structure, e))))
        .collect()
}

/// `dim N_e(kL)` for every L-class of a regular J-class, `None` otherwise.
pub fn lclass_radical_dimensions(table: &MonoidTable, structure: &GreenStructure) -> Vec<Option<usize>> {
    (0..structure.l_classes.len())
        .into_par_iter()
        .map(|l| {
            let j = structure.l_classes[l].j_class;
            structure.j_classes[j]
                .regular
                .then(|| lclass_radical(table, structure, l).map(|b| b.dim()).ok())
                .flatten()
        })
        .collect()
}

/// Dimension of the radical of `kM`, as the kernel of the trace form
/// `(a, b) ↦ tr(x ↦ a·b·x)` of the regular representation.
pub fn trace_form_radical(table: &MonoidTable, bound: usize) -> Result<usize> {
    let order = table.order();
    if order > bound {
        return Err(Error::TooLarge { order, bound });
    }
    // trace of left multiplication by m on kM = #{x : m·x = x}
    let fixed: Vec<i64> = (0..order)
        .into_par_iter()
        .map(|m| (0..order).filter(|&x| table.multiply(m, x) == x).count() as i64)
        .collect();
    let form: Vec<Vec<i64>> = (0..order)
        .into_par_iter()
        .map(|a| (0..order).map(|b| fixed[table.multiply(a, b)]).collect())
        .collect();
    // repeated rows or columns do not change the rank
    let mut distinct_rows: Vec<Vec<i64>> = Vec::new();
    let mut seen = HashSet::new();
    for row in form {
        if seen.insert(row.clone()) {
            distinct_rows.push(row);
        }
    }
    let mut seen_cols = HashSet::new();
    let keep: Vec<usize> = (0..order)
        .filter(|&c| seen_cols.insert(distinct_rows.iter().map(|r| r[c]).collect::<Vec<_>>()))
        .collect();
    let rows: Vec<Vec<BigInt>> = distinct_rows
        .iter()
        .map(|r| keep.iter().map(|&c| BigInt::from(r[c])).collect())
        .collect();
    let rank = IntegerEchelon::reduce(rows, keep.len()).rank();
    Ok(order - rank)
}
