//! Schützenberger groups of H-classes, realized as permutation groups.
//!
//! The image-side group (`Side::Left`) of an H-class `H` is the set of
//! permutations `λ` of the common image with `λ∘a ∈ H` for `a ∈ H`; it depends
//! only on the L-class of `H`. The kernel-side group (`Side::Right`) permutes
//! the common kernel blocks and depends only on the R-class.

use rayon::prelude::*;

use crate::enumeration::MonoidTable;
use crate::error::{Error, Result};
use crate::groupchar::{conjugacy_classes, group_character_table, ConjugacyClasses, GroupCharTable};
use crate::green::{GreenStructure, Side};
use crate::perm::{Perm, PermGroup};
use crate::xform::Transformation;

/// Coordinates used to read an element of an H-class as a permutation.
#[derive(Debug, Clone)]
pub(crate) struct Frame {
    // Left: sorted image points. Right: least point of each kernel block.
    pub(crate) domain: Vec<u32>,
    // position of an image point in the domain (Left)
    pub(crate) position: Vec<u32>,
    // kernel block label of each point (Right)
    pub(crate) labels: Vec<u32>,
}

impl Frame {
    pub(crate) fn of(a: &Transformation, side: Side) -> Frame {
        let n = a.degree();
        let labels = a.kernel_labels();
        match side {
            Side::Left => {
                let domain = a.image_set();
                let mut position = vec![u32::MAX; n];
                for (k, &p) in domain.iter().enumerate() {
                    position[p as usize] = k as u32;
                }
                Frame { domain, position, labels }
            }
            Side::Right => {
                let rank = a.rank();
                let mut domain = vec![u32::MAX; rank];
                for (i, &l) in labels.iter().enumerate().rev() {
                    domain[l as usize] = i as u32;
                }
                Frame {
                    domain,
                    position: Vec::new(),
                    labels,
                }
            }
        }
    }
}

/// Image-side translator: `λ` with `λ∘base = b`. Both must share their kernel.
pub(crate) fn left_translator(frame: &Frame, base: &Transformation, b: &Transformation) -> Perm {
    let mut images = vec![0; frame.domain.len()];
    for i in 0..base.degree() as u32 {
        images[frame.position[base.apply(i) as usize] as usize] = frame.position[b.apply(i) as usize];
    }
    Perm::from_vec_unchecked(images)
}

/// Kernel-side translator: `ρ` on blocks with `b = base∘ρ`. Both must share
/// their image.
fn right_translator(frame: &Frame, base: &Transformation, b: &Transformation) -> Perm {
    let mut preimage = vec![u32::MAX; base.degree()];
    for i in 0..base.degree() as u32 {
        preimage[base.apply(i) as usize] = i;
    }
    let images = frame
        .domain
        .iter()
        .map(|&rep| frame.labels[preimage[b.apply(rep) as usize] as usize])
        .collect();
    Perm::from_vec_unchecked(images)
}

fn base_element(structure: &GreenStructure, h: usize) -> usize {
    structure.h_classes[h].elements[0]
}

/// The Schützenberger group of H-class `h` on the given side. Element `k` of
/// the group is the translator from the base element (least index in `h`) to
/// the `k`-th element of `h`; the identity comes first.
pub fn schutzenberger(table: &MonoidTable, structure: &GreenStructure, h: usize, side: Side) -> PermGroup {
    let a = table.element(base_element(structure, h));
    let frame = Frame::of(a, side);
    let elements = structure.h_classes[h]
        .elements
        .iter()
        .map(|&x| {
            let b = table.element(x);
            match side {
                Side::Left => left_translator(&frame, a, b),
                Side::Right => right_translator(&frame, a, b),
            }
        })
        .collect();
    PermGroup::from_elements(frame.domain, elements)
}

/// Permutation induced on H-class `h` by multiplying with element `m`:
/// `x ↦ x · m` on the image side, `x ↦ m · x` on the kernel side.
pub fn induced_permutation(
    table: &MonoidTable,
    structure: &GreenStructure,
    m: usize,
    h: usize,
    side: Side,
) -> Result<Perm> {
    let a_idx = base_element(structure, h);
    let a = table.element(a_idx);
    let mt = table.element(m);
    let frame = Frame::of(a, side);
    let product = match side {
        Side::Left => a.compose_unchecked(mt),
        Side::Right => mt.compose_unchecked(a),
    };
    let stays = table
        .try_index_of(&product)
        .is_some_and(|p| structure.h_of[p] == h);
    if !stays {
        return Err(Error::NotAStabilizer { element: m, h_class: h });
    }
    Ok(match side {
        Side::Left => left_translator(&frame, a, &product),
        Side::Right => right_translator(&frame, a, &product),
    })
}

/// `τ_a(g)`: the kernel-side permutation `δ` with `g∘a = a∘δ`, computed in O(n)
/// from the single product `g∘a`. `g` is given in the image-side frame of the
/// H-class of `a`.
pub fn tau(table: &MonoidTable, structure: &GreenStructure, a: usize, g: &Perm) -> Result<Perm> {
    let at = table.element(a);
    let left = Frame::of(at, Side::Left);
    if g.len() != left.domain.len() {
        return Err(Error::NotInGroup);
    }
    let moved: Vec<u32> = at
        .images()
        .iter()
        .map(|&p| left.domain[g.apply(left.position[p as usize]) as usize])
        .collect();
    let b = Transformation::from_vec_unchecked(moved);
    let in_h = table
        .try_index_of(&b)
        .is_some_and(|bi| structure.h_of[bi] == structure.h_of[a]);
    if !in_h {
        return Err(Error::NotInGroup);
    }
    Ok(right_translator(&Frame::of(at, Side::Right), at, &b))
}

/// Image-side Schützenberger group of each L-class (shared by all its H-classes).
pub fn lclass_groups(table: &MonoidTable, structure: &GreenStructure) -> Vec<PermGroup> {
    structure
        .l_classes
        .par_iter()
        .map(|l| schutzenberger(table, structure, structure.h_of[l.elements[0]], Side::Left))
        .collect()
}

/// The maximal subgroup of a regular J-class: its chosen H-class, the
/// idempotent there, the image-side Schützenberger group and its characters.
#[derive(Debug, Clone)]
pub struct GroupData {
    pub j_class: usize,
    pub h_class: usize,
    pub idempotent: usize,
    pub group: PermGroup,
    pub table: GroupCharTable,
}

/// Every Schützenberger group the downstream stages need.
#[derive(Debug, Clone)]
pub struct SchutzData {
    /// Image-side group of each L-class.
    pub l_groups: Vec<PermGroup>,
    /// Conjugacy classes of each `l_groups` entry.
    pub l_classes: Vec<ConjugacyClasses>,
    /// Group data of each J-class, `None` for non-regular ones.
    pub regular: Vec<Option<GroupData>>,
}

impl SchutzData {
    pub fn compute(table: &MonoidTable, structure: &GreenStructure) -> Result<SchutzData> {
        let l_groups = lclass_groups(table, structure);
        let l_classes = l_groups.par_iter().map(conjugacy_classes).collect();
        let regular = (0..structure.j_classes.len())
            .into_par_iter()
            .map(|j| {
                let Some(h) = structure.regular_hclass(j) else {
                    return Ok(None);
                };
                let group = schutzenberger(table, structure, h, Side::Left);
                let table = group_character_table(&group)?;
                Ok(Some(GroupData {
                    j_class: j,
                    h_class: h,
                    idempotent: structure.h_classes[h].idempotent.expect("regular H-class"),
                    group,
                    table,
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SchutzData {
            l_groups,
            l_classes,
            regular,
        })
    }

    pub fn group_data(&self, j: usize) -> Result<&GroupData> {
        self.regular[j].as_ref().ok_or(Error::NotRegularJClassData(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xform::t;

    fn t3() -> (MonoidTable, GreenStructure) {
        let table = MonoidTable::enumerate(&[t(&[2, 1, 3]), t(&[2, 3, 1]), t(&[1, 1, 3])]).unwrap();
        let g = GreenStructure::compute(&table);
        (table, g)
    }

    fn h_of(table: &MonoidTable, g: &GreenStructure, x: &[u32]) -> usize {
        g.h_of[table.index_of(&t(x)).unwrap()]
    }

    #[test]
    fn unit_group_of_t3() {
        let (table, g) = t3();
        for side in [Side::Left, Side::Right] {
            let grp = schutzenberger(&table, &g, 0, side);
            assert_eq!(grp.order(), 6);
            assert_eq!(grp.degree(), 3);
        }
    }

    #[test]
    fn rank_two_h_class() {
        let (table, g) = t3();
        let h = h_of(&table, &g, &[1, 1, 3]);
        assert_eq!(h, h_of(&table, &g, &[3, 3, 1]));
        let grp = schutzenberger(&table, &g, h, Side::Left);
        assert_eq!(grp.order(), 2);
        assert_eq!(grp.domain(), &[0, 2]);
        let rank_one = h_of(&table, &g, &[1, 1, 1]);
        assert_eq!(schutzenberger(&table, &g, rank_one, Side::Left).order(), 1);
    }

    #[test]
    fn induced_permutation_examples() {
        let (table, g) = t3();
        let h = h_of(&table, &g, &[1, 1, 3]);
        let id = induced_permutation(&table, &g, 0, h, Side::Left).unwrap();
        assert!(id.is_identity());
        let m = table.index_of(&t(&[3, 2, 1])).unwrap();
        let swap = induced_permutation(&table, &g, m, h, Side::Left).unwrap();
        assert_eq!(swap, Perm::new(vec![1, 0]));
        let c = table.index_of(&t(&[1, 1, 1])).unwrap();
        assert_eq!(
            induced_permutation(&table, &g, c, h, Side::Left).unwrap_err(),
            Error::NotAStabilizer { element: c, h_class: h }
        );
    }

    #[test]
    fn tau_examples() {
        let (table, g) = t3();
        let a = table.index_of(&t(&[1, 1, 3])).unwrap();
        assert!(tau(&table, &g, a, &Perm::identity(2)).unwrap().is_identity());
        // (1 3) sends [1,1,3] to [3,3,1], i.e. swaps the blocks {1,2} and {3}
        let d = tau(&table, &g, a, &Perm::new(vec![1, 0])).unwrap();
        assert_eq!(d, Perm::new(vec![1, 0]));
        assert_eq!(tau(&table, &g, a, &Perm::identity(3)).unwrap_err(), Error::NotInGroup);
    }

    /// Exhaustive checks over every H-class: free transitive action and τ
    /// being an isomorphism.
    fn check_monoid(gens: &[Transformation]) {
        let table = MonoidTable::enumerate(gens).unwrap();
        let g = GreenStructure::compute(&table);
        for (h, hc) in g.h_classes.iter().enumerate() {
            let left = schutzenberger(&table, &g, h, Side::Left);
            let right = schutzenberger(&table, &g, h, Side::Right);
            assert_eq!(left.order(), hc.elements.len());
            assert_eq!(right.order(), hc.elements.len());
            let frame = Frame::of(table.element(hc.elements[0]), Side::Left);
            for &x in &hc.elements {
                for &y in &hc.elements {
                    let (bx, by) = (table.element(x), table.element(y));
                    let count = left
                        .elements()
                        .iter()
                        .filter(|p| {
                            let moved: Vec<u32> = bx
                                .images()
                                .iter()
                                .map(|&q| frame.domain[p.apply(frame.position[q as usize]) as usize])
                                .collect();
                            moved == by.images()
                        })
                        .count();
                    assert_eq!(count, 1);
                }
            }
            for &a in &hc.elements {
                let images: Vec<Perm> = left.elements().iter().map(|p| tau(&table, &g, a, p).unwrap()).collect();
                let mut sorted = images.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), right.order());
                assert!(images.iter().all(|d| right.contains(d)));
                for i in 0..left.order() {
                    for j in 0..left.order() {
                        let prod = left.element(i).then(left.element(j));
                        assert_eq!(tau(&table, &g, a, &prod).unwrap(), images[i].then(&images[j]));
                    }
                }
            }
        }
    }

    #[test]
    fn free_action_and_tau_on_t3() {
        check_monoid(&[t(&[2, 1, 3]), t(&[2, 3, 1]), t(&[1, 1, 3])]);
    }

    #[test]
    fn free_action_and_tau_on_other_monoids() {
        check_monoid(&[t(&[2, 1]), t(&[1, 1])]);
        check_monoid(&[t(&[2, 3, 1, 4]), t(&[1, 1, 3, 4]), t(&[4, 3, 2, 1])]);
        check_monoid(&[t(&[1, 1, 2])]);
    }

    #[test]
    fn groups_in_one_j_class_are_isomorphic() {
        let (table, g) = t3();
        for j in &g.j_classes {
            let orders: Vec<usize> = j
                .grid
                .iter()
                .flatten()
                .map(|&h| schutzenberger(&table, &g, h, Side::Left).order())
                .collect();
            assert!(orders.windows(2).all(|w| w[0] == w[1]));
        }
    }
}
