//! Bitset algebra over subsets of a group's elements.
//!
//! `ElemSet` is a fixed-width bit vector bound to one `FiniteGroup` by its
//! uid; mixing sets from different groups is a caller bug and panics. On top
//! of it sit the product-set operations and the derived tests: product-free,
//! locally maximal, filling, and the addable-element frontier used by the
//! searches.

use crate::error::PfsError;
use crate::group::FiniteGroup;

/// Subset of the elements of one specific group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    gid: u64,
    n: usize,
    words: Vec<u64>,
}

impl ElemSet {
    pub fn empty(g: &FiniteGroup) -> ElemSet {
        let n = g.order();
        ElemSet { gid: g.uid(), n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(g: &FiniteGroup) -> ElemSet {
        let mut s = ElemSet::empty(g);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.mask_tail();
        s
    }

    fn mask_tail(&mut self) {
        let used = self.n % 64;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    pub fn group_uid(&self) -> u64 {
        self.gid
    }

    /// Size of the underlying group, not of the set.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, e: usize) -> bool {
        debug_assert!(e < self.n);
        self.words[e / 64] >> (e % 64) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < self.n, "element {e} out of range for group of order {}", self.n);
        self.words[e / 64] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: usize) {
        debug_assert!(e < self.n);
        self.words[e / 64] &= !(1 << (e % 64));
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn check_mate(&self, other: &ElemSet) {
        assert_eq!(self.gid, other.gid, "sets belong to different groups");
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        self.check_mate(other);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        self.check_mate(other);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn subtract(&mut self, other: &ElemSet) {
        self.check_mate(other);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    pub fn complement(&self) -> ElemSet {
        let mut s = self.clone();
        for w in s.words.iter_mut() {
            *w = !*w;
        }
        s.mask_tail();
        s
    }

    pub fn is_subset_of(&self, other: &ElemSet) -> bool {
        self.check_mate(other);
        self.words.iter().zip(&other.words).all(|(w, o)| w & !o == 0)
    }

    pub fn is_disjoint_from(&self, other: &ElemSet) -> bool {
        self.check_mate(other);
        self.words.iter().zip(&other.words).all(|(w, o)| w & o == 0)
    }

    /// Drop every member ≤ `e`.
    pub fn retain_greater_than(&mut self, e: usize) {
        let cut = e + 1;
        for (i, w) in self.words.iter_mut().enumerate() {
            if (i + 1) * 64 <= cut {
                *w = 0;
            } else if i * 64 < cut {
                *w &= !((1u64 << (cut - i * 64)) - 1);
            }
        }
    }
}

impl std::fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Order on sets of the same group: the set containing the smallest
/// differing element is the smaller set. On sorted member lists this is
/// plain lexicographic order.
/// Lexicographic order on the sorted member lists, so a proper prefix sorts
/// first and otherwise the set whose first differing member is smaller wins.
impl Ord for ElemSet {
    fn cmp(&self, other: &ElemSet) -> std::cmp::Ordering {
        self.check_mate(other);
        for i in 0..self.words.len() {
            let diff = self.words[i] ^ other.words[i];
            if diff == 0 {
                continue;
            }
            let low = diff.trailing_zeros();
            let self_contains = (self.words[i] >> low) & 1 == 1;
            let rest = if self_contains { &other } else { &self };
            let rest_has_more = (rest.words[i] >> low) >> 1 != 0
                || rest.words[i + 1..].iter().any(|&w| w != 0);
            // The container's next member is the first difference; it wins
            // unless the other set is exhausted (a proper prefix).
            return match (self_contains, rest_has_more) {
                (true, true) | (false, false) => std::cmp::Ordering::Less,
                (true, false) | (false, true) => std::cmp::Ordering::Greater,
            };
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &ElemSet) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl FiniteGroup {
    fn check_owns(&self, s: &ElemSet) {
        assert_eq!(s.gid, self.uid(), "set belongs to a different group");
    }

    pub fn empty_set(&self) -> ElemSet {
        ElemSet::empty(self)
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self)
    }

    pub fn singleton_set(&self, e: usize) -> ElemSet {
        let mut s = ElemSet::empty(self);
        s.insert(e);
        s
    }

    pub fn set_from_indices<I: IntoIterator<Item = usize>>(&self, it: I) -> ElemSet {
        let mut s = ElemSet::empty(self);
        for e in it {
            s.insert(e);
        }
        s
    }

    /// {ab : a ∈ A, b ∈ B}.
    pub fn product_set(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        self.check_owns(a);
        self.check_owns(b);
        let mut out = ElemSet::empty(self);
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// {a⁻¹ : a ∈ S}.
    pub fn inverse_set(&self, s: &ElemSet) -> ElemSet {
        self.check_owns(s);
        let mut out = ElemSet::empty(self);
        for x in s.iter() {
            out.insert(self.inv(x));
        }
        out
    }

    /// {x : x² ∈ S}.
    pub fn sqrt_set(&self, s: &ElemSet) -> ElemSet {
        self.check_owns(s);
        let mut out = ElemSet::empty(self);
        for x in 0..self.order() {
            if s.contains(self.mul(x, x)) {
                out.insert(x);
            }
        }
        out
    }

    /// S ∪ SS ∪ SS⁻¹ ∪ S⁻¹S.
    pub fn t_closure(&self, s: &ElemSet) -> ElemSet {
        self.check_owns(s);
        let s_inv = self.inverse_set(s);
        let mut out = s.clone();
        out.union_with(&self.product_set(s, s));
        out.union_with(&self.product_set(s, &s_inv));
        out.union_with(&self.product_set(&s_inv, s));
        out
    }

    /// S ∩ SS = ∅.
    pub fn is_product_free(&self, s: &ElemSet) -> bool {
        self.check_owns(s);
        for a in s.iter() {
            for b in s.iter() {
                if s.contains(self.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Every non-identity element lies in S ∪ SS.
    pub fn fills(&self, s: &ElemSet) -> bool {
        self.check_owns(s);
        let mut cover = s.clone();
        cover.union_with(&self.product_set(s, s));
        cover.insert(0);
        cover == self.full_set()
    }

    /// A product-free set is locally maximal (no proper product-free
    /// superset) exactly when T(S) ∪ √S covers the group.
    pub fn is_locally_maximal(&self, s: &ElemSet) -> Result<bool, PfsError> {
        self.check_owns(s);
        if !self.is_product_free(s) {
            return Err(PfsError::PreconditionViolated("set is not product-free"));
        }
        let mut cover = self.t_closure(s);
        cover.union_with(&self.sqrt_set(s));
        Ok(cover == self.full_set())
    }

    /// G \ ({1} ∪ T(S) ∪ √S): exactly the elements x ∉ S with S ∪ {x} still
    /// product-free. Empty iff S is locally maximal.
    pub fn addable_set(&self, s: &ElemSet) -> Result<ElemSet, PfsError> {
        self.check_owns(s);
        if !self.is_product_free(s) {
            return Err(PfsError::PreconditionViolated("set is not product-free"));
        }
        let mut blocked = self.t_closure(s);
        blocked.union_with(&self.sqrt_set(s));
        blocked.insert(0);
        Ok(blocked.complement())
    }

    /// Split S into (rotation part, reflection part) of a dihedral group.
    pub fn dihedral_split(&self, s: &ElemSet) -> Result<(ElemSet, ElemSet), PfsError> {
        self.check_owns(s);
        let rotations = self.dihedral_rotations().ok_or(PfsError::NotDihedral)?;
        let a = s.intersection(&rotations);
        let b = s.difference(&rotations);
        Ok((a, b))
    }

    /// For every a ∈ S whose inverse is outside S, the inverse lies in
    /// SS ∪ √S. Holds for all locally maximal product-free sets.
    pub fn inverse_cover_property(&self, s: &ElemSet) -> bool {
        self.check_owns(s);
        let ss = self.product_set(s, s);
        let sqrt = self.sqrt_set(s);
        s.iter().all(|a| {
            let ai = self.inv(a);
            s.contains(ai) || ss.contains(ai) || sqrt.contains(ai)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use crate::group::spec::GroupSpec;

    fn make(spec: &str) -> FiniteGroup {
        build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap().into_group()
    }

    fn by_labels(g: &FiniteGroup, labels: &[&str]) -> ElemSet {
        g.set_from_indices(labels.iter().map(|l| g.index_of_label(l).unwrap()))
    }

    #[test]
    fn set_basics() {
        let g = make("C(7)");
        let mut s = g.empty_set();
        assert!(s.is_empty());
        s.insert(3);
        s.insert(5);
        assert_eq!(s.len(), 2);
        assert!(s.contains(3) && s.contains(5) && !s.contains(4));
        assert_eq!(s.to_indices(), vec![3, 5]);
        assert_eq!(s.first(), Some(3));
        s.remove(3);
        assert_eq!(s.to_indices(), vec![5]);
        assert_eq!(g.full_set().len(), 7);
        assert_eq!(s.complement().len(), 6);
    }

    #[test]
    fn set_ops_and_order() {
        let g = make("C(70)");
        let a = g.set_from_indices([0, 5, 64]);
        let b = g.set_from_indices([5, 64, 69]);
        assert_eq!(a.union(&b).to_indices(), vec![0, 5, 64, 69]);
        assert_eq!(a.intersection(&b).to_indices(), vec![5, 64]);
        assert_eq!(a.difference(&b).to_indices(), vec![0]);
        assert!(a.is_disjoint_from(&g.set_from_indices([1, 2])));
        assert!(g.set_from_indices([5, 64]).is_subset_of(&b));
        // Smallest differing element decides the order.
        assert!(g.set_from_indices([0, 5]) < g.set_from_indices([1, 2]));
        assert!(g.set_from_indices([0, 5]) < g.set_from_indices([0, 7]));
        assert!(g.set_from_indices([0, 5]) < g.set_from_indices([0, 5, 64]));
        assert_eq!(a.cmp(&a.clone()), std::cmp::Ordering::Equal);
        let mut c = a.clone();
        c.retain_greater_than(5);
        assert_eq!(c.to_indices(), vec![64]);
        let mut d = b.clone();
        d.retain_greater_than(64);
        assert_eq!(d.to_indices(), vec![69]);
    }

    #[test]
    fn products_match_arithmetic() {
        let g = make("C(5)");
        let s = by_labels(&g, &["x", "x^4"]);
        let ss = g.product_set(&s, &s);
        assert_eq!(ss, by_labels(&g, &["1", "x^2", "x^3"]));
        assert!(g.product_set(&g.empty_set(), &s).is_empty());
        let d6 = make("D(6)");
        let refl = by_labels(&d6, &["y", "x*y", "x^2*y"]);
        let rot = by_labels(&d6, &["1", "x", "x^2"]);
        assert_eq!(d6.product_set(&refl, &refl), rot);
    }

    #[test]
    fn sqrt_examples() {
        let c4 = make("C(4)");
        assert_eq!(c4.sqrt_set(&by_labels(&c4, &["x^2"])), by_labels(&c4, &["x", "x^3"]));
        let ea8 = make("EA(8)");
        assert_eq!(ea8.sqrt_set(&ea8.singleton_set(0)), ea8.full_set());
        let d8 = make("D(8)");
        assert_eq!(d8.sqrt_set(&by_labels(&d8, &["x^2"])), by_labels(&d8, &["x", "x^3"]));
    }

    #[test]
    fn t_closure_examples() {
        let c5 = make("C(5)");
        assert_eq!(c5.t_closure(&by_labels(&c5, &["x"])), by_labels(&c5, &["1", "x", "x^2"]));
        let d6 = make("D(6)");
        let refl = by_labels(&d6, &["y", "x*y", "x^2*y"]);
        assert_eq!(d6.t_closure(&refl), d6.full_set());
        let d8 = make("D(8)");
        let z = by_labels(&d8, &["x^2"]);
        assert_eq!(d8.t_closure(&z), by_labels(&d8, &["1", "x^2"]));
    }

    #[test]
    fn product_freeness() {
        let c5 = make("C(5)");
        assert!(!c5.is_product_free(&by_labels(&c5, &["x", "x^2"])));
        assert!(c5.is_product_free(&by_labels(&c5, &["x", "x^4"])));
        let d6 = make("D(6)");
        assert!(d6.is_product_free(&by_labels(&d6, &["y", "x*y", "x^2*y"])));
        assert!(c5.is_product_free(&c5.empty_set()));
    }

    #[test]
    fn local_maximality_and_addable() {
        let c4 = make("C(4)");
        let z = by_labels(&c4, &["x^2"]);
        assert_eq!(c4.is_locally_maximal(&z), Ok(true));
        assert!(c4.addable_set(&z).unwrap().is_empty());

        let c5 = make("C(5)");
        let x = by_labels(&c5, &["x"]);
        assert_eq!(c5.is_locally_maximal(&x), Ok(false));
        assert_eq!(c5.addable_set(&x).unwrap(), by_labels(&c5, &["x^4"]));
        assert_eq!(c5.is_locally_maximal(&by_labels(&c5, &["x", "x^4"])), Ok(true));

        assert_eq!(c5.addable_set(&c5.empty_set()).unwrap(), c5.full_set().difference(&c5.singleton_set(0)));
        assert!(c5.is_locally_maximal(&by_labels(&c5, &["x", "x^2"])).is_err());
    }

    #[test]
    fn filling() {
        let d6 = make("D(6)");
        assert!(d6.fills(&by_labels(&d6, &["y", "x*y", "x^2*y"])));
        let c4 = make("C(4)");
        assert!(!c4.fills(&by_labels(&c4, &["x^2"])));
    }

    #[test]
    fn addable_matches_elementwise_recheck() {
        let d8 = make("D(8)");
        let s = by_labels(&d8, &["x", "y"]);
        assert!(d8.is_product_free(&s));
        let addable = d8.addable_set(&s).unwrap();
        for x in 0..d8.order() {
            let mut bigger = s.clone();
            bigger.insert(x);
            let expect = !s.contains(x) && d8.is_product_free(&bigger);
            assert_eq!(addable.contains(x), expect, "element {x}");
        }
    }

    #[test]
    fn dihedral_split_examples() {
        let d6 = make("D(6)");
        let refl = by_labels(&d6, &["y", "x*y", "x^2*y"]);
        let (a, b) = d6.dihedral_split(&refl).unwrap();
        assert!(a.is_empty());
        assert_eq!(b, refl);
        let d8 = make("D(8)");
        let s = by_labels(&d8, &["x"]);
        let (a, b) = d8.dihedral_split(&s).unwrap();
        assert_eq!(a, s);
        assert!(b.is_empty());
        let c4 = make("C(4)");
        assert!(c4.dihedral_split(&c4.empty_set()).is_err());
    }

    #[test]
    fn inverse_double_application() {
        let d8 = make("D(8)");
        let s = by_labels(&d8, &["x", "x^3", "y"]);
        assert_eq!(d8.inverse_set(&d8.inverse_set(&s)), s);
    }

    #[test]
    #[should_panic(expected = "different group")]
    fn cross_group_sets_panic() {
        let a = make("C(4)");
        let b = make("C(4)");
        let _ = a.product_set(&a.singleton_set(1), &b.singleton_set(1));
    }
}
