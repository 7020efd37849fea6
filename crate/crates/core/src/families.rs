//! Generating sets of some standard transformation monoids.

use crate::xform::Transformation;

fn xf(images: Vec<u32>) -> Transformation {
    Transformation::from_zero_based(images).expect("valid images")
}

/// Generators of the full transformation monoid on `n` points: a transposition,
/// an `n`-cycle and a rank `n - 1` idempotent. For `n = 1` the trivial monoid.
pub fn full_transformation_monoid(n: usize) -> Vec<Transformation> {
    assert!(n >= 1);
    let n32 = n as u32;
    if n == 1 {
        return vec![Transformation::identity(1)];
    }
    let mut swap: Vec<u32> = (0..n32).collect();
    swap.swap(0, 1);
    let cycle = (0..n32).map(|i| (i + 1) % n32).collect();
    let mut collapse: Vec<u32> = (0..n32).collect();
    collapse[1] = 0;
    vec![xf(swap), xf(cycle), xf(collapse)]
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic_group(n: usize) -> Vec<Transformation> {
    assert!(n >= 1);
    let n32 = n as u32;
    vec![xf((0..n32).map(|i| (i + 1) % n32).collect())]
}

/// Symmetric group on `n` points.
pub fn symmetric_group(n: usize) -> Vec<Transformation> {
    assert!(n >= 1);
    let n32 = n as u32;
    if n == 1 {
        return vec![Transformation::identity(1)];
    }
    let mut swap: Vec<u32> = (0..n32).collect();
    swap.swap(0, 1);
    vec![xf(swap), xf((0..n32).map(|i| (i + 1) % n32).collect())]
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral_group(n: usize) -> Vec<Transformation> {
    assert!(n >= 3);
    let n32 = n as u32;
    vec![
        xf((0..n32).map(|i| (i + 1) % n32).collect()),
        xf((0..n32).map(|i| (n32 - i) % n32).collect()),
    ]
}

/// Monoid of all order-preserving, extensive maps on `n` points (`x <= f(x)`).
pub fn catalan_monoid(n: usize) -> Vec<Transformation> {
    assert!(n >= 1);
    let n32 = n as u32;
    let mut gens: Vec<Transformation> = (0..n32.saturating_sub(1))
        .map(|i| xf((0..n32).map(|x| if x == i { i + 1 } else { x }).collect()))
        .collect();
    if gens.is_empty() {
        gens.push(Transformation::identity(1));
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::MonoidTable;

    #[test]
    fn orders() {
        let order = |g: Vec<Transformation>| MonoidTable::enumerate(&g).unwrap().order();
        assert_eq!(order(full_transformation_monoid(1)), 1);
        assert_eq!(order(full_transformation_monoid(2)), 4);
        assert_eq!(order(full_transformation_monoid(3)), 27);
        assert_eq!(order(full_transformation_monoid(4)), 256);
        assert_eq!(order(cyclic_group(5)), 5);
        assert_eq!(order(symmetric_group(4)), 24);
        assert_eq!(order(dihedral_group(4)), 8);
        // Catalan numbers
        assert_eq!(order(catalan_monoid(3)), 5);
        assert_eq!(order(catalan_monoid(4)), 14);
    }
}
