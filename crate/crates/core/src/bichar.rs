//! Test elements `C_M` and the combinatorial bicharacter
//! `B(s, t) = #{x ∈ M : s·x·t = x}`.
//!
//! Two elements are character-equivalent when their group parts `m^(ω+1)`
//! lie in one J-class and are conjugate once carried into the maximal
//! subgroup chosen for that J-class. `C_M` holds one element per class.
//!
//! The fast counter walks the eggbox: `s·x·t = x` forces `s·x` and `x·t` back
//! into the H-class of `x`, so only cells whose R-class is stabilized by `s`
//! and whose L-class is stabilized by `t` contribute, and inside such a cell
//! the count is a centralizer order in the Schützenberger group.

use rayon::prelude::*;

use crate::enumeration::MonoidTable;
use crate::green::{GreenStructure, Side};
use crate::perm::Perm;
use crate::schutz::{left_translator, Frame, SchutzData};
use crate::xform::Transformation;

/// Character class of every element, as `(J-class, conjugacy class of the
/// J-class's group)`.
#[derive(Debug, Clone)]
pub struct CharacterClasses {
    pub class_of: Vec<(usize, usize)>,
}

impl CharacterClasses {
    pub fn compute(table: &MonoidTable, structure: &GreenStructure, schutz: &SchutzData) -> CharacterClasses {
        let class_of = (0..table.order())
            .into_par_iter()
            .map(|m| character_class(table, structure, schutz, m))
            .collect();
        CharacterClasses { class_of }
    }

    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }
}

/// `(J-class, conjugacy class)` of `m^(ω+1)` after transport into the chosen
/// maximal subgroup of its J-class.
pub fn character_class(table: &MonoidTable, structure: &GreenStructure, schutz: &SchutzData, m: usize) -> (usize, usize) {
    let mt = table.element(m);
    let f = mt.idempotent_power();
    let g = f.compose_unchecked(mt);
    let fi = table.index_of(&f).expect("powers stay in the monoid");
    let j = structure.j_of[fi];
    let data = schutz.group_data(j).expect("J-class of an idempotent is regular");
    let e = table.element(data.idempotent);

    // a in R(f) ∩ L(e): kernel of f, image of e; a restricted to im f is a
    // bijection β onto im e
    let jc = &structure.j_classes[j];
    let row = jc.r_classes.binary_search(&structure.r_of[fi]).unwrap();
    let col = jc.l_classes.binary_search(&structure.l_of[data.idempotent]).unwrap();
    let a = table.element(structure.h_classes[jc.grid[row][col]].elements[0]);

    let n = mt.degree();
    let mut beta_inv = vec![u32::MAX; n];
    for p in f.image_set() {
        beta_inv[a.apply(p) as usize] = p;
    }
    let domain = data.group.domain();
    let mut position = vec![u32::MAX; n];
    for (k, &p) in domain.iter().enumerate() {
        position[p as usize] = k as u32;
    }
    debug_assert_eq!(domain, &e.image_set()[..]);
    let images = domain
        .iter()
        .map(|&p| position[a.apply(g.apply(beta_inv[p as usize])) as usize])
        .collect();
    let perm = Perm::from_vec_unchecked(images);
    let idx = data.group.index_of(&perm).expect("transported element lies in the group");
    (j, data.table.classes.class_of[idx])
}

/// The representative set `C_M`, ordered by J-class and then by conjugacy
/// class; the identity comes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestElements {
    pub representatives: Vec<usize>,
    pub j_class: Vec<usize>,
    pub group_class: Vec<usize>,
}

impl TestElements {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// One representative per character class: the member with the
/// lexicographically smallest image tuple.
pub fn compute_c_m(table: &MonoidTable, schutz: &SchutzData, classes: &CharacterClasses) -> TestElements {
    let mut keys: Vec<(usize, usize)> = schutz
        .regular
        .iter()
        .flatten()
        .flat_map(|d| (0..d.table.classes.len()).map(move |c| (d.j_class, c)))
        .collect();
    keys.sort_unstable();
    let mut best: Vec<Option<usize>> = vec![None; keys.len()];
    for (m, key) in classes.class_of.iter().enumerate() {
        let slot = &mut best[keys.binary_search(key).expect("class key is listed")];
        let better = match slot {
            None => true,
            Some(cur) => table.element(m) < table.element(*cur),
        };
        if better {
            *slot = Some(m);
        }
    }
    TestElements {
        representatives: best.into_iter().map(|b| b.expect("every class has a member")).collect(),
        j_class: keys.iter().map(|k| k.0).collect(),
        group_class: keys.iter().map(|k| k.1).collect(),
    }
}

/// `#{x ∈ M : s·x·t = x}` by looping over the whole monoid.
pub fn fixed_points_exhaustive(table: &MonoidTable, s: usize, t: usize) -> u64 {
    let (s, t) = (table.element(s), table.element(t));
    table
        .elements()
        .iter()
        .filter(|x| &s.compose_unchecked(x).compose_unchecked(t) == *x)
        .count() as u64
}

/// Fixed-point counts through the Green decomposition.
pub struct FixedPointCounter<'a> {
    table: &'a MonoidTable,
    structure: &'a GreenStructure,
    schutz: &'a SchutzData,
    frames: Vec<Frame>,
}

impl<'a> FixedPointCounter<'a> {
    pub fn new(table: &'a MonoidTable, structure: &'a GreenStructure, schutz: &'a SchutzData) -> Self {
        let frames = structure
            .l_classes
            .iter()
            .map(|l| Frame::of(table.element(l.elements[0]), Side::Left))
            .collect();
        FixedPointCounter {
            table,
            structure,
            schutz,
            frames,
        }
    }

    fn stays_in(&self, product: &Transformation, h: usize) -> bool {
        self.table
            .try_index_of(product)
            .is_some_and(|p| self.structure.h_of[p] == h)
    }

    /// Fixed points of `x ↦ s·x·t` inside J-class `j`.
    pub fn count_in_j_class(&self, s: usize, t: usize, j: usize) -> u64 {
        let (st, tt) = (self.table.element(s), self.table.element(t));
        let jc = &self.structure.j_classes[j];
        let h_classes = &self.structure.h_classes;
        // R-classes fixed by s (kernel side) and L-classes fixed by t (image side)
        let rows: Vec<usize> = (0..jc.r_classes.len())
            .filter(|&r| {
                let h = jc.grid[r][0];
                self.stays_in(&st.compose_unchecked(self.table.element(h_classes[h].elements[0])), h)
            })
            .collect();
        if rows.is_empty() {
            return 0;
        }
        let mut total = 0;
        for (c, &l) in jc.l_classes.iter().enumerate() {
            let h0 = jc.grid[rows[0]][c];
            let a0 = self.table.element(h_classes[h0].elements[0]);
            if !self.stays_in(&a0.compose_unchecked(tt), h0) {
                continue;
            }
            let frame = &self.frames[l];
            let group = &self.schutz.l_groups[l];
            let classes = &self.schutz.l_classes[l];
            let t_perm = Perm::from_vec_unchecked(
                frame.domain.iter().map(|&p| frame.position[tt.apply(p) as usize]).collect(),
            );
            let t_class = classes.class_of[group.index_of(&t_perm).expect("t acts through the group")];
            for &r in &rows {
                let h = jc.grid[r][c];
                let a = self.table.element(h_classes[h].elements[0]);
                let b = st.compose_unchecked(a);
                let lambda = left_translator(frame, a, &b);
                let target = group.index_of(&lambda.inverse()).expect("s acts through the group");
                if classes.class_of[target] == t_class {
                    total += classes.centralizer_order(t_class) as u64;
                }
            }
        }
        total
    }

    /// Per-J-class fixed-point counts; they sum to [`Self::count`].
    pub fn count_by_j_class(&self, s: usize, t: usize) -> Vec<u64> {
        (0..self.structure.j_classes.len())
            .map(|j| self.count_in_j_class(s, t, j))
            .collect()
    }

    pub fn count(&self, s: usize, t: usize) -> u64 {
        (0..self.structure.j_classes.len())
            .map(|j| self.count_in_j_class(s, t, j))
            .sum()
    }
}

/// `B(s, t)` over `C_M × C_M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicharacterMatrix {
    pub representatives: Vec<usize>,
    pub entries: Vec<Vec<u64>>,
}

pub fn bicharacter_matrix(counter: &FixedPointCounter<'_>, cm: &TestElements) -> BicharacterMatrix {
    let reps = &cm.representatives;
    let entries = reps
        .par_iter()
        .map(|&s| reps.iter().map(|&t| counter.count(s, t)).collect())
        .collect();
    BicharacterMatrix {
        representatives: reps.clone(),
        entries,
    }
}
