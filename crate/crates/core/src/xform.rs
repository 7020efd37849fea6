//! Transformations of `{1..n}`, the element type of every monoid in this crate.
//!
//! Points are stored zero-based. Everything that crosses an external interface
//! (parsing, `Display`, JSON) is one-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A total map on `n` points, stored as its image tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Vec<u32>,
}

/// Image, kernel and rank of a transformation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    /// Sorted image points (zero-based).
    pub image: Vec<u32>,
    /// Kernel blocks, each ascending, blocks ordered by their least member.
    pub kernel: Vec<Vec<u32>>,
    pub rank: usize,
}

impl Transformation {
    /// Builds a transformation from one-based images.
    pub fn from_one_based(images: &[u32]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyTransformation);
        }
        let mut zero = Vec::with_capacity(n);
        for &p in images {
            if p == 0 || p as usize > n {
                return Err(Error::PointOutOfRange { point: p, degree: n });
            }
            zero.push(p - 1);
        }
        Ok(Transformation { images: zero })
    }

    /// Builds a transformation from zero-based images.
    pub fn from_zero_based(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyTransformation);
        }
        if let Some(&p) = images.iter().find(|&&p| p as usize >= n) {
            return Err(Error::PointOutOfRange { point: p + 1, degree: n });
        }
        Ok(Transformation { images })
    }

    pub(crate) fn from_vec_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(images.iter().all(|&p| (p as usize) < images.len()));
        Transformation { images }
    }

    pub fn identity(degree: usize) -> Self {
        Transformation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the zero-based point `i`.
    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    /// Zero-based image tuple.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn to_one_based(&self) -> Vec<u32> {
        self.images.iter().map(|&p| p + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    /// `a · b`: apply `self`, then `other`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Transformation) -> Transformation {
        Transformation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut rank = 0;
        for &p in &self.images {
            if !seen[p as usize] {
                seen[p as usize] = true;
                rank += 1;
            }
        }
        rank
    }

    /// Sorted zero-based image set.
    pub fn image_set(&self) -> Vec<u32> {
        let mut seen = vec![false; self.degree()];
        for &p in &self.images {
            seen[p as usize] = true;
        }
        (0..self.degree() as u32).filter(|&p| seen[p as usize]).collect()
    }

    /// Kernel as a labelling: `labels[i]` is the index of the block of `i`,
    /// blocks numbered in order of their least member.
    pub fn kernel_labels(&self) -> Vec<u32> {
        let n = self.degree();
        let mut block_of_value = vec![u32::MAX; n];
        let mut next = 0;
        self.images
            .iter()
            .map(|&p| {
                let slot = &mut block_of_value[p as usize];
                if *slot == u32::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect()
    }

    pub fn profile(&self) -> Profile {
        let labels = self.kernel_labels();
        let rank = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
        let mut kernel = vec![Vec::new(); rank];
        for (i, &l) in labels.iter().enumerate() {
            kernel[l as usize].push(i as u32);
        }
        Profile {
            image: self.image_set(),
            kernel,
            rank,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.images.iter().all(|&p| self.images[p as usize] == p)
    }

    /// The idempotent power `a^ω`.
    pub fn idempotent_power(&self) -> Transformation {
        // a^k is idempotent for some k <= n (index + period); iterate until it is.
        let mut power = self.clone();
        loop {
            if power.is_idempotent() {
                return power;
            }
            power = power.compose_unchecked(self);
        }
    }

    /// `a^(ω+1)`, the element of the maximal subgroup at `a^ω` associated to `a`.
    pub fn group_part(&self) -> Transformation {
        self.idempotent_power().compose_unchecked(self)
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_one_based())
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", p + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Transformation {
    type Err = Error;

    /// Parses one-based images separated by spaces or commas, optionally
    /// bracketed: `"2 1 3"`, `"[2,1,3]"`.
    fn from_str(s: &str) -> Result<Self> {
        let images = parse_images(s).map_err(|message| Error::Parse { line: 1, message })?;
        Transformation::from_one_based(&images)
    }
}

pub(crate) fn parse_images(s: &str) -> std::result::Result<Vec<u32>, String> {
    let s = s.trim();
    let s = s.strip_prefix('[').map_or(s, |rest| rest.strip_suffix(']').unwrap_or(rest));
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|tok| !tok.is_empty())
        .map(|tok| tok.parse::<u32>().map_err(|_| format!("not a point: {tok:?}")))
        .collect()
}

#[cfg(test)]
pub(crate) fn t(images: &[u32]) -> Transformation {
    Transformation::from_one_based(images).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_formats() {
        for text in ["2 1 3", "[2,1,3]", "[2, 1, 3]", " 2,1 3 "] {
            assert_eq!(text.parse::<Transformation>().unwrap(), t(&[2, 1, 3]));
        }
        assert!("[2,x,3]".parse::<Transformation>().is_err());
        assert!("2 0 1".parse::<Transformation>().is_err());
    }

    #[test]
    fn compose_examples() {
        assert_eq!(t(&[2, 1]).compose(&t(&[1, 1])).unwrap(), t(&[1, 1]));
        let a = t(&[3, 1, 2]);
        assert_eq!(a.compose(&Transformation::identity(3)).unwrap(), a);
        assert_eq!(t(&[2, 3, 1]).compose(&t(&[2, 3, 1])).unwrap(), t(&[3, 1, 2]));
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = t(&[1, 2]).compose(&t(&[1, 2, 3])).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn profile_examples() {
        let p = t(&[1, 1, 2]).profile();
        assert_eq!(p.image, vec![0, 1]);
        assert_eq!(p.kernel, vec![vec![0, 1], vec![2]]);
        assert_eq!(p.rank, 2);

        let p = Transformation::identity(3).profile();
        assert_eq!(p.image, vec![0, 1, 2]);
        assert_eq!(p.kernel, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(p.rank, 3);

        let p = t(&[2, 2, 2]).profile();
        assert_eq!(p.image, vec![1]);
        assert_eq!(p.kernel, vec![vec![0, 1, 2]]);
        assert_eq!(p.rank, 1);
    }

    #[test]
    fn idempotent_power_examples() {
        let e = t(&[1, 1, 3]);
        assert_eq!(e.idempotent_power(), e);
        assert_eq!(t(&[2, 3, 1]).idempotent_power(), Transformation::identity(3));
        assert_eq!(t(&[2, 3, 3]).idempotent_power(), t(&[3, 3, 3]));
    }

    #[test]
    fn parse_and_display() {
        let a: Transformation = "2 3 1".parse().unwrap();
        assert_eq!(a, t(&[2, 3, 1]));
        assert_eq!(a.to_string(), "2 3 1");
        assert!("2 4 1".parse::<Transformation>().is_err());
        assert!("0 1".parse::<Transformation>().is_err());
        assert!("".parse::<Transformation>().is_err());
    }

    fn arb_transformation(n: usize) -> impl Strategy<Value = Transformation> {
        proptest::collection::vec(0..n as u32, n).prop_map(Transformation::from_vec_unchecked)
    }

    proptest! {
        #[test]
        fn compose_is_associative(
            (a, b, c) in (1usize..7).prop_flat_map(|n| (arb_transformation(n), arb_transformation(n), arb_transformation(n)))
        ) {
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn rank_of_product_is_bounded(
            (a, b) in (1usize..7).prop_flat_map(|n| (arb_transformation(n), arb_transformation(n)))
        ) {
            let ab = a.compose(&b).unwrap();
            prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        }

        #[test]
        fn idempotent_power_is_idempotent(a in (1usize..8).prop_flat_map(arb_transformation)) {
            let e = a.idempotent_power();
            prop_assert_eq!(e.compose(&e).unwrap(), e);
        }
    }
}
