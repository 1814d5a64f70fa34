//! Structure read off the multiplication table: center, conjugacy classes,
//! normal subgroups, quotients, and the shape predicates the classifier
//! dispatches on.

use std::collections::HashSet;

use crate::error::GroupError;
use crate::group::table::FiniteGroup;
use crate::pfs::ElemSet;

impl FiniteGroup {
    /// Elements commuting with everything.
    pub fn center(&self) -> ElemSet {
        let n = self.order();
        let mut out = self.empty_set();
        for g in 0..n {
            if (0..n).all(|h| self.mul(g, h) == self.mul(h, g)) {
                out.insert(g);
            }
        }
        out
    }

    /// Conjugacy classes, sorted by smallest member; the identity class
    /// comes first.
    pub fn conjugacy_classes(&self) -> Vec<ElemSet> {
        let n = self.order();
        let mut seen = self.empty_set();
        let mut classes = Vec::new();
        for g in 0..n {
            if seen.contains(g) {
                continue;
            }
            let mut class = self.empty_set();
            for h in 0..n {
                class.insert(self.mul(self.mul(h, g), self.inv(h)));
            }
            seen.union_with(&class);
            classes.push(class);
        }
        classes
    }

    /// Smallest subgroup containing `seed` (multiplicative closure).
    pub fn subgroup_closure(&self, seed: &ElemSet) -> ElemSet {
        let mut out = self.singleton_set(0);
        out.union_with(seed);
        let mut frontier: Vec<usize> = out.to_indices();
        while let Some(x) = frontier.pop() {
            for h in out.to_indices() {
                for p in [self.mul(x, h), self.mul(h, x)] {
                    if !out.contains(p) {
                        out.insert(p);
                        frontier.push(p);
                    }
                }
            }
        }
        out
    }

    /// Nonempty, contains the identity, closed under product and inverse.
    pub fn is_subgroup(&self, s: &ElemSet) -> bool {
        if !s.contains(0) {
            return false;
        }
        for a in s.iter() {
            if !s.contains(self.inv(a)) {
                return false;
            }
            for b in s.iter() {
                if !s.contains(self.mul(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_normal_subgroup(&self, s: &ElemSet) -> bool {
        if !self.is_subgroup(s) {
            return false;
        }
        for a in s.iter() {
            for g in 0..self.order() {
                if !s.contains(self.mul(self.mul(g, a), self.inv(g))) {
                    return false;
                }
            }
        }
        true
    }

    /// All normal subgroups, {1} and G included, sorted by size and then by
    /// the set order. A subgroup is normal exactly when it is a union of
    /// conjugacy classes, and every such subgroup is a join of the closures
    /// of the single classes it contains, so the join-closure of those
    /// closures enumerates all of them.
    pub fn normal_subgroups(&self) -> Vec<ElemSet> {
        let mut found: HashSet<ElemSet> = HashSet::new();
        found.insert(self.singleton_set(0));
        let units: Vec<ElemSet> = self
            .conjugacy_classes()
            .into_iter()
            .map(|c| self.subgroup_closure(&c))
            .collect();
        let mut worklist: Vec<ElemSet> = Vec::new();
        for u in units.iter() {
            if found.insert(u.clone()) {
                worklist.push(u.clone());
            }
        }
        while let Some(x) = worklist.pop() {
            for u in units.iter() {
                if u.is_subset_of(&x) {
                    continue;
                }
                let joined = self.subgroup_closure(&x.union(u));
                if found.insert(joined.clone()) {
                    worklist.push(joined);
                }
            }
        }
        let mut out: Vec<ElemSet> = found.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Coset group G/N. Labels are the labels of each coset's smallest
    /// member, so quotienting by {1} reproduces the original table.
    pub fn quotient(&self, n_sub: &ElemSet) -> Result<FiniteGroup, GroupError> {
        Ok(self.quotient_with_map(n_sub)?.0)
    }

    /// Coset group plus the projection map from element index to coset index.
    pub fn quotient_with_map(
        &self,
        n_sub: &ElemSet,
    ) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(n_sub) {
            return Err(GroupError::NotSubgroup(format!(
                "{:?} is not a subgroup",
                n_sub.to_indices()
            )));
        }
        if !self.is_normal_subgroup(n_sub) {
            return Err(GroupError::NotNormal);
        }
        let n = self.order();
        let members = n_sub.to_indices();
        // Smallest member of each left coset gN, then cosets sorted by it.
        let coset_min: Vec<usize> = (0..n)
            .map(|g| members.iter().map(|&h| self.mul(g, h)).min().unwrap())
            .collect();
        let mut reps: Vec<usize> = coset_min.iter().copied().collect::<HashSet<_>>().into_iter().collect();
        reps.sort_unstable();
        let coset_index = |g: usize| reps.binary_search(&coset_min[g]).unwrap();
        let q = reps.len();
        let mut table = vec![0u16; q * q];
        for (i, &ri) in reps.iter().enumerate() {
            for (j, &rj) in reps.iter().enumerate() {
                table[i * q + j] = coset_index(self.mul(ri, rj)) as u16;
            }
        }
        // Well-definedness of the coset product, checked over every pair.
        for a in 0..n {
            for b in 0..n {
                if table[coset_index(a) * q + coset_index(b)] != coset_index(self.mul(a, b)) as u16
                {
                    return Err(GroupError::NotNormal);
                }
            }
        }
        let labels = reps.iter().map(|&r| self.label(r).to_string()).collect();
        let spec = format!("{}/N{}", self.spec_string(), members.len());
        let group = FiniteGroup::from_table(table, labels, spec)?;
        let map = (0..n).map(coset_index).collect();
        Ok((group, map))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|g| self.elem_order(g) == n)
    }

    /// Every non-identity element an involution (order ≥ 2).
    pub fn is_elementary_abelian_2(&self) -> bool {
        self.order() >= 2 && (1..self.order()).all(|g| self.elem_order(g) == 2)
    }

    /// Number of elements of order exactly 2.
    pub fn involution_count(&self) -> usize {
        (1..self.order()).filter(|&g| self.elem_order(g) == 2).count()
    }

    /// The rotation subgroup ⟨x⟩ of a dihedral group: a cyclic subgroup of
    /// index 2 inverted by some involution outside it. None when the group
    /// is not dihedral (order < 6, odd order, or no such pair).
    pub fn dihedral_rotations(&self) -> Option<ElemSet> {
        let n = self.order();
        if n < 6 || !n.is_multiple_of(2) {
            return None;
        }
        for x in 0..n {
            if self.elem_order(x) != n / 2 {
                continue;
            }
            let rotations = self.subgroup_closure(&self.singleton_set(x));
            let xi = self.inv(x);
            for y in 0..n {
                if !rotations.contains(y)
                    && self.elem_order(y) == 2
                    && self.mul(self.mul(y, x), y) == xi
                {
                    return Some(rotations);
                }
            }
            return None;
        }
        None
    }

    pub fn is_dihedral(&self) -> bool {
        self.dihedral_rotations().is_some()
    }

    /// Order 4m (m ≥ 2) with a unique involution, a cyclic subgroup ⟨x⟩ of
    /// index 2, and y outside it with y² = x^m and yxy⁻¹ = x⁻¹.
    pub fn is_generalized_quaternion(&self) -> bool {
        let n = self.order();
        if n < 8 || !n.is_multiple_of(4) || self.involution_count() != 1 {
            return false;
        }
        for x in 0..n {
            if self.elem_order(x) != n / 2 {
                continue;
            }
            let cyc = self.subgroup_closure(&self.singleton_set(x));
            let half = self.pow(x, n / 4);
            let xi = self.inv(x);
            return (0..n).any(|y| {
                !cyc.contains(y)
                    && self.mul(y, y) == half
                    && self.mul(self.mul(y, x), self.inv(y)) == xi
            });
        }
        false
    }

    /// 2-group of order 2^(2m+1) whose center has order 2 and whose squares
    /// all land in the center (equivalently G/Z is elementary abelian).
    pub fn is_extraspecial(&self) -> bool {
        let n = self.order();
        if n < 8 || !n.is_power_of_two() || n.trailing_zeros().is_multiple_of(2) {
            return false;
        }
        let center = self.center();
        if center.len() != 2 {
            return false;
        }
        (0..n).all(|g| center.contains(self.mul(g, g)))
    }

    /// For groups of exponent exactly 4 in which every element of order 4
    /// has the same square: that common square, when it is central.
    pub fn common_square_involution(&self) -> Option<usize> {
        if self.exponent() != 4 {
            return None;
        }
        let n = self.order();
        let mut z = None;
        for g in 0..n {
            if self.elem_order(g) == 4 {
                let sq = self.mul(g, g);
                match z {
                    None => z = Some(sq),
                    Some(prev) if prev != sq => return None,
                    _ => {}
                }
            }
        }
        let z = z?;
        (0..n).all(|h| self.mul(z, h) == self.mul(h, z)).then_some(z)
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

    #[test]
    fn centers() {
        let d8 = make("D(8)");
        let z = d8.center();
        assert_eq!(z.to_indices(), vec![0, d8.index_of_label("x^2").unwrap()]);
        assert_eq!(make("EA(16)").center().len(), 16);
        assert_eq!(make("Q(8)").center().len(), 2);
        assert_eq!(make("D(12)").center().len(), 2);
        assert_eq!(make("D(6)").center().len(), 1);
    }

    #[test]
    fn classes_partition() {
        for spec in ["C(7)", "D(6)", "Q(8)", "D(12)"] {
            let g = make(spec);
            let classes = g.conjugacy_classes();
            let total: usize = classes.iter().map(|c| c.len()).sum();
            assert_eq!(total, g.order(), "{spec}");
            assert_eq!(classes[0].to_indices(), vec![0], "{spec}");
            let mut union = g.empty_set();
            for c in &classes {
                assert!(union.is_disjoint_from(c), "{spec}");
                union.union_with(c);
            }
        }
        assert_eq!(make("C(7)").conjugacy_classes().len(), 7);
    }

    #[test]
    fn closures_and_subgroups() {
        let d8 = make("D(8)");
        let x = d8.index_of_label("x").unwrap();
        let rot = d8.subgroup_closure(&d8.singleton_set(x));
        assert_eq!(rot.len(), 4);
        assert!(d8.is_subgroup(&rot));
        assert!(d8.is_normal_subgroup(&rot));
        let y = d8.index_of_label("y").unwrap();
        let refl = d8.singleton_set(y);
        assert!(!d8.is_subgroup(&refl));
        let klein = d8.subgroup_closure(&refl);
        assert_eq!(klein.len(), 2);
        assert!(!d8.is_normal_subgroup(&klein));
    }

    #[test]
    fn normal_subgroup_lists() {
        assert_eq!(make("C(7)").normal_subgroups().len(), 2);
        assert_eq!(make("C(5)").normal_subgroups().len(), 2);
        let d6 = make("D(6)");
        // {1}, ⟨x⟩, D(6)
        assert_eq!(d6.normal_subgroups().len(), 3);
        for n_sub in d6.normal_subgroups() {
            assert!(d6.is_normal_subgroup(&n_sub));
        }
        let sizes: Vec<usize> = make("C(12)").normal_subgroups().iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn quotients() {
        let d8 = make("D(8)");
        let q = d8.quotient(&d8.center()).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_elementary_abelian_2());

        let triv = d8.quotient(&d8.singleton_set(0)).unwrap();
        assert_eq!(triv.order(), 8);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(triv.mul(a, b), d8.mul(a, b));
            }
        }

        let d12 = make("D(12)");
        let x3 = d12.index_of_label("x^3").unwrap();
        let n_sub = d12.subgroup_closure(&d12.singleton_set(x3));
        let q = d12.quotient(&n_sub).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());

        let y = d12.index_of_label("y").unwrap();
        let not_normal = d12.subgroup_closure(&d12.singleton_set(y));
        assert!(matches!(d12.quotient(&not_normal), Err(GroupError::NotNormal)));
        let not_subgroup = d12.singleton_set(y);
        assert!(matches!(d12.quotient(&not_subgroup), Err(GroupError::NotSubgroup(_))));
    }

    #[test]
    fn quotient_order_multiplies() {
        for spec in ["D(8)", "Q(8)", "D(12)", "C(12)"] {
            let g = make(spec);
            for n_sub in g.normal_subgroups() {
                let q = g.quotient(&n_sub).unwrap();
                assert_eq!(q.order() * n_sub.len(), g.order(), "{spec}");
            }
        }
    }

    #[test]
    fn shape_predicates() {
        let d22 = make("D(22)");
        assert!(d22.is_dihedral() && !d22.is_abelian());
        assert!(!d22.is_generalized_quaternion());

        let q8 = make("Q(8)");
        assert!(q8.is_generalized_quaternion() && !q8.is_dihedral());
        assert!(make("Q(20)").is_generalized_quaternion());

        assert!(make("C(8)").is_cyclic());
        assert!(!make("C(8)").is_dihedral());
        assert!(make("EA(8)").is_elementary_abelian_2());
        assert!(!make("C(4)").is_elementary_abelian_2());
        assert!(make("EA(4)").is_abelian());
        assert!(!make("D(8)xC(2)").is_dihedral());
    }

    #[test]
    fn involution_counts() {
        assert_eq!(make("EA(8)").involution_count(), 7);
        assert_eq!(make("Q(8)").involution_count(), 1);
        assert_eq!(make("D(10)").involution_count(), 5);
        assert_eq!(make("C(12)").involution_count(), 1);
    }

    #[test]
    fn common_square() {
        let q8 = make("Q(8)");
        let z = q8.common_square_involution().unwrap();
        assert_eq!(q8.elem_order(z), 2);
        assert!(make("C(8)").common_square_involution().is_none());
        assert!(make("EA(8)").common_square_involution().is_none());
        assert!(make("D(8)").common_square_involution().is_some());
        // Exponent 4 but squares disagree: C(4) x C(4) has x² and y² distinct.
        assert!(make("C(4)xC(4)").common_square_involution().is_none());
    }
}
