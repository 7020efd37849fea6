//! Breadth-first enumeration of the monoid generated by a set of
//! transformations, with both Cayley graphs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::xform::Transformation;

/// The enumerated monoid. Element 0 is always the identity.
#[derive(Debug, Clone)]
pub struct MonoidTable {
    degree: usize,
    generators: Vec<Transformation>,
    elements: Vec<Transformation>,
    index: HashMap<Transformation, usize>,
    // row-major, element x generator
    right: Vec<usize>,
    left: Vec<usize>,
    words: Vec<Vec<usize>>,
}

fn check_degrees(generators: &[Transformation]) -> Result<usize> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let degree = first.degree();
    for g in generators {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    Ok(degree)
}

impl MonoidTable {
    /// Enumerates the closure of `{identity} ∪ generators`.
    ///
    /// Elements are numbered breadth-first: by word length, then by the index
    /// of the last generator applied, then by discovery order.
    pub fn enumerate(generators: &[Transformation]) -> Result<MonoidTable> {
        let degree = check_degrees(generators)?;
        let ngens = generators.len();
        let identity = Transformation::identity(degree);

        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0);
        let mut words = vec![Vec::new()];
        let mut right = Vec::new();

        let mut cursor = 0;
        while cursor < elements.len() {
            for (g, gen) in generators.iter().enumerate() {
                let product = elements[cursor].compose_unchecked(gen);
                let next = elements.len();
                let target = *index.entry(product.clone()).or_insert(next);
                if target == next {
                    let mut word = words[cursor].clone();
                    word.push(g);
                    elements.push(product);
                    words.push(word);
                }
                right.push(target);
            }
            cursor += 1;
        }

        let left = elements
            .iter()
            .flat_map(|x| generators.iter().map(|gen| index[&gen.compose_unchecked(x)]))
            .collect::<Vec<_>>();
        debug_assert_eq!(left.len(), elements.len() * ngens);

        Ok(MonoidTable {
            degree,
            generators: generators.to_vec(),
            elements,
            index,
            right,
            left,
            words,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Transformation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Transformation {
        &self.elements[i]
    }

    /// Index of `element(x) · generator(g)`.
    pub fn right_cayley(&self, x: usize, g: usize) -> usize {
        self.right[x * self.generators.len() + g]
    }

    /// Index of `generator(g) · element(x)`.
    pub fn left_cayley(&self, x: usize, g: usize) -> usize {
        self.left[x * self.generators.len() + g]
    }

    /// Generator word (indices into `generators()`) reaching element `x` from the identity.
    pub fn word(&self, x: usize) -> &[usize] {
        &self.words[x]
    }

    pub fn index_of(&self, t: &Transformation) -> Result<usize> {
        self.index.get(t).copied().ok_or(Error::NotAnElement)
    }

    pub fn try_index_of(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &Transformation) -> Result<bool> {
        if t.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: t.degree(),
            });
        }
        Ok(self.index.contains_key(t))
    }

    /// Index of `element(x) · element(y)`.
    pub fn multiply(&self, x: usize, y: usize) -> usize {
        self.index[&self.elements[x].compose_unchecked(&self.elements[y])]
    }
}

/// Membership test for the monoid generated by `generators`.
pub fn contains(generators: &[Transformation], t: &Transformation) -> Result<bool> {
    let degree = check_degrees(generators)?;
    if t.degree() != degree {
        return Err(Error::DegreeMismatch {
            left: degree,
            right: t.degree(),
        });
    }
    if t.is_identity() {
        return Ok(true);
    }
    MonoidTable::enumerate(generators)?.contains(t)
}

/// Parses a generator file: one transformation per line as one-based images,
/// blank lines and `#` comments ignored.
pub fn parse_generators(text: &str) -> Result<Vec<Transformation>> {
    let mut generators: Vec<Transformation> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: lineno + 1,
            message,
        };
        let images = crate::xform::parse_images(line).map_err(parse_err)?;
        let t = Transformation::from_one_based(&images).map_err(|e| parse_err(e.to_string()))?;
        if let Some(first) = generators.first() {
            if first.degree() != t.degree() {
                return Err(parse_err(format!(
                    "degree {} differs from earlier lines ({})",
                    t.degree(),
                    first.degree()
                )));
            }
        }
        generators.push(t);
    }
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    Ok(generators)
}
