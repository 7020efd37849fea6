//! Small permutation groups, fully materialized.

use std::collections::HashMap;
use std::fmt;

/// A permutation of `0..k`, stored as its image tuple. Products read left to
/// right: `p.then(q)` applies `p` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(k: usize) -> Perm {
        Perm((0..k as u32).collect())
    }

    /// Panics unless `images` is a permutation of `0..images.len()`.
    pub fn new(images: Vec<u32>) -> Perm {
        let mut seen = vec![false; images.len()];
        for &p in &images {
            assert!(!std::mem::replace(&mut seen[p as usize], true), "not a permutation");
        }
        Perm(images)
    }

    pub(crate) fn from_vec_unchecked(images: Vec<u32>) -> Perm {
        Perm(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&p| other.0[p as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut order = 1;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    // transversal[p] maps base to p
    transversal: Vec<Option<Perm>>,
}

/// A permutation group on an ordered point set, with every element listed.
///
/// Elements keep the order they were supplied in; the identity is first.
#[derive(Debug, Clone)]
pub struct PermGroup {
    domain: Vec<u32>,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    chain: Vec<Level>,
}

impl PermGroup {
    /// Builds the group from a complete element list. The list must be closed
    /// under products and start with the identity.
    pub fn from_elements(domain: Vec<u32>, elements: Vec<Perm>) -> PermGroup {
        assert!(!elements.is_empty() && elements[0].is_identity(), "identity must come first");
        let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        assert_eq!(index.len(), elements.len(), "duplicate group elements");
        let chain = build_chain(domain.len(), &elements);
        let mut group = PermGroup {
            domain,
            generators: Vec::new(),
            elements,
            index,
            chain,
        };
        group.generators = group.greedy_generators();
        group
    }

    /// Closure of `generators` by breadth-first search from the identity.
    pub fn from_generators(domain: Vec<u32>, generators: &[Perm]) -> PermGroup {
        let k = domain.len();
        let mut elements = vec![Perm::identity(k)];
        let mut seen: HashMap<Perm, usize> = HashMap::from([(Perm::identity(k), 0)]);
        let mut cursor = 0;
        while cursor < elements.len() {
            for g in generators {
                let p = elements[cursor].then(g);
                if !seen.contains_key(&p) {
                    seen.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            cursor += 1;
        }
        let mut group = PermGroup::from_elements(domain, elements);
        group.generators = generators.to_vec();
        group
    }

    /// A generating set: walk the elements, keeping those outside the
    /// subgroup generated so far.
    fn greedy_generators(&self) -> Vec<Perm> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        for x in 0..self.order() {
            if inside[x] {
                continue;
            }
            gens.push(self.elements[x].clone());
            let mut queue: Vec<usize> = (0..self.order()).filter(|&y| inside[y]).collect();
            let mut cursor = 0;
            while cursor < queue.len() {
                let y = queue[cursor];
                cursor += 1;
                for g in &gens {
                    let z = self.index[&self.elements[y].then(g)];
                    if !inside[z] {
                        inside[z] = true;
                        queue.push(z);
                    }
                }
            }
        }
        gens
    }

    pub fn domain(&self) -> &[u32] {
        &self.domain
    }

    pub fn degree(&self) -> usize {
        self.domain.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `element(a).then(element(b))`.
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].then(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Membership by sifting through the stabilizer chain, O(degree²).
    pub fn contains(&self, p: &Perm) -> bool {
        if p.len() != self.degree() {
            return false;
        }
        let mut current = p.clone();
        for level in &self.chain {
            let image = current.apply(level.base);
            match &level.transversal[image as usize] {
                Some(u) => current = current.then(&u.inverse()),
                None => return false,
            }
        }
        current.is_identity()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.elements.iter().fold(1, |acc, p| num_integer::lcm(acc, p.order()))
    }
}

fn build_chain(k: usize, elements: &[Perm]) -> Vec<Level> {
    let mut chain = Vec::new();
    let mut current: Vec<&Perm> = elements.iter().collect();
    loop {
        let Some(base) = (0..k as u32).find(|&b| current.iter().any(|p| p.apply(b) != b)) else {
            return chain;
        };
        let mut transversal = vec![None; k];
        for p in &current {
            let slot = &mut transversal[p.apply(base) as usize];
            if slot.is_none() {
                *slot = Some((*p).clone());
            }
        }
        current.retain(|p| p.apply(base) == base);
        chain.push(Level { base, transversal });
    }
}
