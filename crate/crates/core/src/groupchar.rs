//! Conjugacy classes and exact character tables of small permutation groups.
//!
//! Characters are computed with Dixon's method: the class-multiplication
//! matrices are diagonalized simultaneously over a prime field `F_p` with
//! `p ≡ 1 (mod exponent)`, and each value is lifted to `Q(ζ_exponent)` from
//! the eigenvalue multiplicities of the element it is evaluated at.

use std::cmp::Ordering;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::perm::PermGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    /// Least element index of each class; classes are sorted by it.
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Class of each group element.
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Elements of class `c` in ascending index order.
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.class_of.len()).filter(|&x| self.class_of[x] == c).collect()
    }

    /// Order of the centralizer of any element of class `c`.
    pub fn centralizer_order(&self, c: usize) -> usize {
        self.class_of.len() / self.sizes[c]
    }
}

pub fn conjugacy_classes(group: &PermGroup) -> ConjugacyClasses {
    let n = group.order();
    let inverses: Vec<usize> = (0..n).map(|g| group.inverse(g)).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        let mut size = 0;
        for (g, &g_inv) in inverses.iter().enumerate() {
            let y = group.multiply(group.multiply(g_inv, x), g);
            if class_of[y] == usize::MAX {
                class_of[y] = c;
                size += 1;
            }
        }
        reps.push(x);
        sizes.push(size);
    }
    ConjugacyClasses { reps, sizes, class_of }
}

/// Irreducible characters of a group. Rows are characters, columns classes;
/// the identity class comes first.
#[derive(Debug, Clone)]
pub struct GroupCharTable {
    pub order: usize,
    pub classes: ConjugacyClasses,
    pub values: Vec<Vec<Cyclotomic>>,
}

impl GroupCharTable {
    pub fn degrees(&self) -> Vec<usize> {
        self.values
            .iter()
            .map(|row| row[0].to_i64().expect("degree is an integer") as usize)
            .collect()
    }

    /// `χ_i` at group element `g`.
    pub fn value(&self, i: usize, g: usize) -> &Cyclotomic {
        &self.values[i][self.classes.class_of[g]]
    }
}

mod modp {
    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        a * b % p
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a, p);
            }
            a = mul(a, a, p);
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(p));
        pow(a, p - 2, p)
    }

    pub fn is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    /// Right nullspace of a `rows × cols` matrix over `F_p`.
    pub fn nullspace(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
        let rows = m.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(i) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, i);
            let inv_p = inv(m[r][c], p);
            for x in m[r].iter_mut() {
                *x = mul(*x, inv_p, p);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + p - mul(f, pv, p)) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m[i][f]) % p;
                }
                v
            })
            .collect()
    }
}

fn choose_prime(exponent: u64, order: u64) -> u64 {
    let mut p = (2 * order + 2) / exponent * exponent + 1;
    while !modp::is_prime(p) {
        p += exponent;
    }
    p
}

fn primitive_root_of_order(e: u64, p: u64) -> u64 {
    let prime_factors: Vec<u64> = (2..=e).filter(|&q| e.is_multiple_of(q) && modp::is_prime(q)).collect();
    (2..p)
        .map(|a| modp::pow(a, (p - 1) / e, p))
        .find(|&z| prime_factors.iter().all(|&q| modp::pow(z, e / q, p) != 1))
        .expect("F_p contains primitive roots of every order dividing p - 1")
}

/// Sort key of a row: rational values first, larger values first.
fn row_cmp(a: &[Cyclotomic], b: &[Cyclotomic]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = y
            .conductor()
            .cmp(&x.conductor())
            .then_with(|| x.coefficients().cmp(y.coefficients()));
        if ord != Ordering::Equal {
            return ord.reverse();
        }
    }
    Ordering::Equal
}

/// Complete table of irreducible characters over `Q(ζ_exponent)`, rows
/// ordered by degree, then rational-first and descending values.
pub fn group_character_table(group: &PermGroup) -> Result<GroupCharTable> {
    let classes = conjugacy_classes(group);
    let k = classes.len();
    let order = group.order();
    let exponent = group.exponent() as u64;
    let p = choose_prime(exponent, order as u64);

    let members: Vec<Vec<usize>> = (0..k).map(|c| classes.members(c)).collect();
    let inverse_class: Vec<usize> = classes.reps.iter().map(|&r| classes.class_of[group.inverse(r)]).collect();

    // a[j][c][l] = #{(x, y) ∈ C_j × C_c : x·y = g_l}
    let mut coeffs = vec![vec![vec![0u64; k]; k]; k];
    for (l, &g) in classes.reps.iter().enumerate() {
        for (j, class) in members.iter().enumerate() {
            for &x in class {
                let y = group.multiply(group.inverse(x), g);
                coeffs[j][classes.class_of[y]][l] += 1;
            }
        }
    }

    // split F_p^k into common eigenspaces of all class matrices
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect()];
    for matrix in coeffs.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let image: Vec<Vec<u64>> = basis
                .iter()
                .map(|v| {
                    (0..k)
                        .map(|r| (0..k).fold(0, |acc, c| (acc + matrix[r][c] % p * v[c]) % p))
                        .collect()
                })
                .collect();
            let mut found = 0;
            for lambda in 0..p {
                // (M - λ) B c = 0 with B the basis columns
                let system: Vec<Vec<u64>> = (0..k)
                    .map(|r| {
                        (0..basis.len())
                            .map(|c| (image[c][r] + p - modp::mul(lambda, basis[c][r], p)) % p)
                            .collect()
                    })
                    .collect();
                let ns = modp::nullspace(system, basis.len(), p);
                if ns.is_empty() {
                    continue;
                }
                found += ns.len();
                let sub: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|r| c.iter().zip(&basis).fold(0, |acc, (&ci, b)| (acc + modp::mul(ci, b[r], p)) % p))
                            .collect()
                    })
                    .collect();
                next.push(sub);
                if found == basis.len() {
                    break;
                }
            }
            if found != basis.len() {
                return Err(Error::CharacterTable("class matrix is not diagonalizable mod p".into()));
            }
        }
        spaces = next;
    }
    if spaces.len() != k {
        return Err(Error::CharacterTable(format!(
            "found {} common eigenspaces for {k} classes",
            spaces.len()
        )));
    }

    let zeta = primitive_root_of_order(exponent, p);
    let e_inv = modp::inv(exponent % p, p);
    let power_class: Vec<Vec<usize>> = classes
        .reps
        .iter()
        .map(|&g| {
            let mut acc = 0usize;
            (0..exponent)
                .map(|_| {
                    let c = classes.class_of[acc];
                    acc = group.multiply(acc, g);
                    c
                })
                .collect()
        })
        .collect();

    let mut rows = Vec::with_capacity(k);
    for space in spaces {
        let w0 = &space[0];
        let scale = modp::inv(w0[0], p);
        let w: Vec<u64> = w0.iter().map(|&x| modp::mul(x, scale, p)).collect();
        // Σ_l w_l w_{l*} / |C_l| = |G| / d²
        let s = (0..k).fold(0, |acc, l| {
            let t = modp::mul(modp::mul(w[l], w[inverse_class[l]], p), modp::inv(classes.sizes[l] as u64 % p, p), p);
            (acc + t) % p
        });
        let d_sq = modp::mul(order as u64 % p, modp::inv(s, p), p);
        let degree = (1..=order as u64)
            .take_while(|d| d * d <= order as u64)
            .find(|d| d * d % p == d_sq)
            .ok_or_else(|| Error::CharacterTable("no integral degree".into()))?;
        let chi_mod: Vec<u64> = (0..k)
            .map(|l| modp::mul(modp::mul(degree, w[l], p), modp::inv(classes.sizes[l] as u64 % p, p), p))
            .collect();
        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            let mut mult = vec![0i64; exponent as usize];
            for (t, slot) in mult.iter_mut().enumerate() {
                let mut acc = 0;
                for j in 0..exponent {
                    let root = modp::pow(zeta, (exponent - j * t as u64 % exponent) % exponent, p);
                    acc = (acc + modp::mul(chi_mod[power_class[l][j as usize]], root, p)) % p;
                }
                let m = modp::mul(acc, e_inv, p);
                if m > degree {
                    return Err(Error::CharacterTable("eigenvalue multiplicity out of range".into()));
                }
                *slot = m as i64;
            }
            row.push(Cyclotomic::from_root_multiplicities(exponent as u32, &mult));
        }
        rows.push(row);
    }

    rows.sort_by(|a, b| {
        let da = a[0].to_i64().unwrap_or(0);
        let db = b[0].to_i64().unwrap_or(0);
        da.cmp(&db).then_with(|| row_cmp(a, b))
    });
    let degree_sq: i64 = rows.iter().map(|r| r[0].to_i64().unwrap_or(0).pow(2)).sum();
    if degree_sq != order as i64 {
        return Err(Error::CharacterTable(format!("squared degrees sum to {degree_sq}, not {order}")));
    }
    Ok(GroupCharTable {
        order,
        classes,
        values: rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn cyclic(n: u32) -> PermGroup {
        let gen: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
        PermGroup::from_generators((0..n).collect(), &[Perm::new(gen)])
    }

    fn symmetric(n: u32) -> PermGroup {
        let mut cycle: Vec<u32> = (1..n).collect();
        cycle.push(0);
        let mut swap: Vec<u32> = (0..n).collect();
        swap.swap(0, 1);
        PermGroup::from_generators((0..n).collect(), &[Perm::new(swap), Perm::new(cycle)])
    }

    /// Row and column orthogonality, degrees and integrality checks.
    pub(crate) fn check_table(table: &GroupCharTable) {
        let k = table.classes.len();
        assert_eq!(table.values.len(), k);
        let order = Cyclotomic::from_integer(table.order as i64);
        for i in 0..k {
            for j in 0..k {
                let mut acc = Cyclotomic::zero();
                for c in 0..k {
                    let term = &table.values[i][c] * &table.values[j][c].conj();
                    acc = &acc + &(&term * &Cyclotomic::from_integer(table.classes.sizes[c] as i64));
                }
                let expected = if i == j { order.clone() } else { Cyclotomic::zero() };
                assert_eq!(acc, expected, "rows {i}, {j}");
            }
        }
        for c in 0..k {
            for d in 0..k {
                let mut acc = Cyclotomic::zero();
                for i in 0..k {
                    acc = &acc + &(&table.values[i][c] * &table.values[i][d].conj());
                }
                let expected = if c == d {
                    Cyclotomic::from_integer(table.classes.centralizer_order(c) as i64)
                } else {
                    Cyclotomic::zero()
                };
                assert_eq!(acc, expected, "columns {c}, {d}");
            }
        }
        let degrees = table.degrees();
        assert_eq!(degrees.iter().map(|d| d * d).sum::<usize>(), table.order);
        let exponent = table.order as u32;
        for row in &table.values {
            for v in row {
                assert_eq!(exponent % v.conductor(), 0);
            }
        }
    }

    #[test]
    fn class_examples() {
        let trivial = PermGroup::from_generators(vec![0], &[]);
        let cc = conjugacy_classes(&trivial);
        assert_eq!(cc.sizes, vec![1]);
        assert_eq!(conjugacy_classes(&cyclic(3)).sizes, vec![1, 1, 1]);
        let mut sizes = conjugacy_classes(&symmetric(3)).sizes;
        assert_eq!(sizes.iter().sum::<usize>(), 6);
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn small_tables() {
        let t = group_character_table(&PermGroup::from_generators(vec![0], &[])).unwrap();
        assert_eq!(t.values, vec![vec![Cyclotomic::one()]]);

        let t = group_character_table(&cyclic(2)).unwrap();
        let one = Cyclotomic::one();
        let minus = Cyclotomic::from_integer(-1);
        assert_eq!(t.values, vec![vec![one.clone(), one.clone()], vec![one.clone(), minus.clone()]]);
    }

    #[test]
    fn symmetric_group_s3() {
        let g = symmetric(3);
        let t = group_character_table(&g).unwrap();
        check_table(&t);
        // columns: identity, then classes by least element; find the transposition
        // class (size 3) and the 3-cycle class (size 2)
        let tr = t.classes.sizes.iter().position(|&s| s == 3).unwrap();
        let cy = t.classes.sizes.iter().position(|&s| s == 2).unwrap();
        let pick = |row: &Vec<Cyclotomic>| (row[0].to_i64().unwrap(), row[tr].to_i64().unwrap(), row[cy].to_i64().unwrap());
        let rows: Vec<_> = t.values.iter().map(pick).collect();
        assert_eq!(rows, vec![(1, 1, 1), (1, -1, 1), (2, 0, -1)]);
    }

    #[test]
    fn cyclic_groups_have_root_of_unity_tables() {
        for n in [3u32, 4, 5, 6] {
            let t = group_character_table(&cyclic(n)).unwrap();
            check_table(&t);
            assert!(t.degrees().iter().all(|&d| d == 1));
            assert!(t.values[0].iter().all(Cyclotomic::is_one));
        }
    }

    #[test]
    fn larger_groups() {
        for g in [symmetric(4), symmetric(5)] {
            let t = group_character_table(&g).unwrap();
            check_table(&t);
            assert!(t.values.iter().flatten().all(|v| v.conductor() == 1));
        }
        // dihedral group of order 8 and quaternion-free check via D4 on 4 points
        let d4 = PermGroup::from_generators(
            (0..4).collect(),
            &[Perm::new(vec![1, 2, 3, 0]), Perm::new(vec![3, 2, 1, 0])],
        );
        let t = group_character_table(&d4).unwrap();
        check_table(&t);
        assert_eq!(t.degrees(), vec![1, 1, 1, 1, 2]);
        // C3 x C3 x ... : a group with conductor-3 values
        let c3c3 = PermGroup::from_generators(
            (0..6).collect(),
            &[Perm::new(vec![1, 2, 0, 3, 4, 5]), Perm::new(vec![0, 1, 2, 4, 5, 3])],
        );
        let t = group_character_table(&c3c3).unwrap();
        check_table(&t);
        // A4: needs ζ_3
        let a4 = PermGroup::from_generators(
            (0..4).collect(),
            &[Perm::new(vec![1, 2, 0, 3]), Perm::new(vec![1, 0, 3, 2])],
        );
        let t = group_character_table(&a4).unwrap();
        check_table(&t);
        assert_eq!(t.degrees(), vec![1, 1, 1, 3]);
    }
}
