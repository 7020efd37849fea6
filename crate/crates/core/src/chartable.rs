//! The character table of the monoid and its Cartan matrix.
//!
//! The simple module attached to a regular J-class with idempotent `e` and an
//! irreducible `ρ` of the maximal subgroup `G_e` is the quotient of
//! `kL_e ⊗ ρ` by `N_e(kL_e) ⊗ ρ`. Its character at `m` is read off from the
//! traces of `x ↦ m·x·g` on `kL_e` (a fixed-point count) and on the radical,
//! averaged against `ρ` over `G_e`.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::bichar::{BicharacterMatrix, TestElements};
use crate::cyclotomic::Cyclotomic;
use crate::enumeration::MonoidTable;
use crate::error::{Error, Result};
use crate::green::GreenStructure;
use crate::radical::RadicalBasis;
use crate::schutz::{GroupData, SchutzData};
use crate::xform::Transformation;

/// Label of a simple module: its J-class and the index of the irreducible
/// character of the J-class's maximal subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Irreducible {
    pub j_class: usize,
    pub character: usize,
}

#[derive(Debug, Clone)]
pub struct MonoidCharTable {
    pub irreducibles: Vec<Irreducible>,
    /// Column labels.
    pub c_m: TestElements,
    /// `values[i][s]`: character `i` at the `s`-th element of `C_M`.
    pub values: Vec<Vec<Cyclotomic>>,
    /// Column of the identity.
    pub identity_column: usize,
}

impl MonoidCharTable {
    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }
}

/// Element `γ∘e` of the maximal subgroup, for `γ` a permutation of `im e`
/// given on positions of the group's domain.
fn group_element(table: &MonoidTable, data: &GroupData, group_index: usize) -> usize {
    let e = table.element(data.idempotent);
    let domain = data.group.domain();
    let perm = data.group.element(group_index);
    let mut position = vec![u32::MAX; e.degree()];
    for (k, &p) in domain.iter().enumerate() {
        position[p as usize] = k as u32;
    }
    let images = e
        .images()
        .iter()
        .map(|&p| domain[perm.apply(position[p as usize]) as usize])
        .collect();
    table
        .index_of(&Transformation::from_vec_unchecked(images))
        .expect("maximal subgroup lies in the monoid")
}

/// `Σ_{g ∈ G} (|kL fixed points of (m, g⁻¹)| − tr_N(m, g⁻¹)) · χ(g)`, grouped
/// by conjugacy class, returned per class.
fn class_traces(table: &MonoidTable, data: &GroupData, radical: &RadicalBasis, m: usize) -> Vec<BigRational> {
    let module = &radical.module;
    let classes = &data.table.classes;
    (0..classes.len())
        .map(|c| {
            let g_inv = group_element(table, data, data.group.inverse(classes.reps[c]));
            let map = |k: usize| module.position(table.multiply(table.multiply(m, module.basis[k]), g_inv));
            let fixed = (0..module.dim()).filter(|&k| map(k) == Some(k)).count();
            BigRational::from_integer(fixed.into()) - radical.trace_of_monomial(map)
        })
        .collect()
}

/// Evaluates every simple character on `C_M`.
///
/// `radicals[j]` must be the radical of the L-class of the idempotent chosen
/// in `schutz` for J-class `j`.
pub fn character_table(
    table: &MonoidTable,
    structure: &GreenStructure,
    schutz: &SchutzData,
    cm: &TestElements,
    radicals: &[Option<RadicalBasis>],
) -> Result<MonoidCharTable> {
    let identity_column = cm
        .representatives
        .iter()
        .position(|&r| table.element(r).is_identity())
        .ok_or(Error::NotAnElement)?;
    let mut irreducibles = Vec::new();
    let mut values = Vec::new();
    for j in 0..structure.j_classes.len() {
        if !structure.j_classes[j].regular {
            continue;
        }
        let data = schutz.group_data(j)?;
        let radical = radicals
            .get(j)
            .and_then(Option::as_ref)
            .ok_or(Error::NotRegularJClassData(j))?;
        debug_assert_eq!(radical.module.idempotent, data.idempotent);
        let group_order = BigRational::from_integer(data.group.order().into());
        let traces: Vec<Vec<BigRational>> = cm
            .representatives
            .iter()
            .map(|&m| class_traces(table, data, radical, m))
            .collect();
        let gt = &data.table;
        for (i, row) in gt.values.iter().enumerate() {
            let chars = traces
                .iter()
                .map(|per_class| {
                    let mut acc = Cyclotomic::zero();
                    for (c, q) in per_class.iter().enumerate() {
                        if q.is_zero() {
                            continue;
                        }
                        let weight = q * BigRational::from_integer(gt.classes.sizes[c].into()) / &group_order;
                        acc = acc + row[c].scale(&weight);
                    }
                    acc
                })
                .collect();
            irreducibles.push(Irreducible { j_class: j, character: i });
            values.push(chars);
        }
    }
    if values.len() != cm.len() {
        return Err(Error::CharacterTable(format!(
            "{} simple characters for {} test elements",
            values.len(),
            cm.len()
        )));
    }
    Ok(MonoidCharTable {
        irreducibles,
        c_m: cm.clone(),
        values,
        identity_column,
    })
}

/// Dimensions of the simple modules: the identity column.
pub fn simple_dimensions(x: &MonoidCharTable) -> Result<Vec<u64>> {
    x.values
        .iter()
        .enumerate()
        .map(|(index, row)| {
            let v = &row[x.identity_column];
            v.to_i64()
                .filter(|&d| d > 0)
                .map(|d| d as u64)
                .ok_or_else(|| Error::NonIntegralDimension {
                    index,
                    value: v.to_string(),
                })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    pub entries: Vec<Vec<u64>>,
}

impl CartanMatrix {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Inverse of a square cyclotomic matrix by Gauss-Jordan elimination.
pub fn invert(matrix: &[Vec<Cyclotomic>]) -> Result<Vec<Vec<Cyclotomic>>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Cyclotomic>> = matrix.to_vec();
    let mut inv: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|i| (0..n).map(|j| Cyclotomic::from_integer((i == j) as i64)).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::Singular)?;
        a.swap(c, p);
        inv.swap(c, p);
        let pivot_inv = a[c][c].inverse().ok_or(Error::Singular)?;
        for v in a[c].iter_mut().chain(inv[c].iter_mut()) {
            *v = v.mul_ref(&pivot_inv);
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..n {
                if !a[c][k].is_zero() {
                    a[r][k] = &a[r][k] - &f.mul_ref(&a[c][k]);
                }
                if !inv[c][k].is_zero() {
                    inv[r][k] = &inv[r][k] - &f.mul_ref(&inv[c][k]);
                }
            }
        }
    }
    Ok(inv)
}

fn product(a: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !row[k].is_zero() && !b[k][j].is_zero())
                        .fold(Cyclotomic::zero(), |acc, k| acc + row[k].mul_ref(&b[k][j]))
                })
                .collect()
        })
        .collect()
}

fn transpose(a: &[Vec<Cyclotomic>]) -> Vec<Vec<Cyclotomic>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Solves `B = Xᵗ · C · X` for `C`, where `B(s, t)` counts the fixed points
/// of `x ↦ s·x·t` and `X` is the character table.
pub fn cartan_matrix(x: &MonoidCharTable, b: &BicharacterMatrix) -> Result<CartanMatrix> {
    if b.representatives != x.c_m.representatives {
        return Err(Error::CharacterTable("bicharacter and character table columns differ".into()));
    }
    let x_inv = invert(&x.values)?;
    let b: Vec<Vec<Cyclotomic>> = b
        .entries
        .iter()
        .map(|row| row.iter().map(|&v| Cyclotomic::from_integer(v as i64)).collect())
        .collect();
    let c = product(&product(&transpose(&x_inv), &b), &x_inv);
    let entries = c
        .iter()
        .enumerate()
        .map(|(row, values)| {
            values
                .iter()
                .enumerate()
                .map(|(col, v)| {
                    let n = v.to_i64().ok_or_else(|| Error::NonIntegralResult {
                        row,
                        col,
                        value: v.to_string(),
                    })?;
                    u64::try_from(n).map_err(|_| Error::NegativeEntry { row, col, value: n })
                })
                .collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CartanMatrix { entries })
}

/// `Xᵗ · C · X`, which must give back the bicharacter.
pub fn reconstruct_bicharacter(x: &MonoidCharTable, c: &CartanMatrix) -> Vec<Vec<Cyclotomic>> {
    let c: Vec<Vec<Cyclotomic>> = c
        .entries
        .iter()
        .map(|row| row.iter().map(|&v| Cyclotomic::from_integer(v as i64)).collect())
        .collect();
    product(&product(&transpose(&x.values), &c), &x.values)
}
