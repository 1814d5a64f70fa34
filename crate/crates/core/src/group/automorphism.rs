//! Automorphism enumeration by backtracking over the images of a greedily
//! chosen generating set. Candidate images are filtered by element order and
//! conjugacy-class size; each tentative assignment is closed into a partial
//! homomorphism immediately, so contradictions prune early.

use crate::group::table::FiniteGroup;

/// Default cap on the number of stored automorphisms.
pub const DEFAULT_AUT_CAP: usize = 1_000_000;

const UNSET: u16 = u16::MAX;

/// The automorphisms of one group as index permutations.
///
/// When `complete` is false the enumeration hit its cap and `perms` holds
/// only the identity; callers then degrade to no orbit reduction.
#[derive(Debug, Clone)]
pub struct Automorphisms {
    pub perms: Vec<Vec<u16>>,
    pub complete: bool,
}

impl Automorphisms {
    pub fn identity_only(g: &FiniteGroup, complete: bool) -> Automorphisms {
        Automorphisms { perms: vec![(0..g.order() as u16).collect()], complete }
    }
}

/// Enumerate all automorphisms, or bail out with the identity alone when
/// there would be more than `cap` of them.
pub fn automorphism_group(g: &FiniteGroup, cap: usize) -> Automorphisms {
    let n = g.order();
    if n == 1 {
        return Automorphisms::identity_only(g, true);
    }
    // An elementary abelian 2-group of rank k has |GL(k, 2)| automorphisms,
    // which dwarfs any reasonable cap long before backtracking would notice.
    if g.is_elementary_abelian_2() {
        let k = n.trailing_zeros();
        let mut count: u128 = 1;
        for i in 0..k {
            count = count.saturating_mul((1u128 << k) - (1u128 << i));
        }
        if count > cap as u128 {
            return Automorphisms::identity_only(g, false);
        }
    }

    let gens = greedy_generators(g);
    let class_size = {
        let mut size = vec![0usize; n];
        for class in g.conjugacy_classes() {
            let len = class.len();
            for e in class.iter() {
                size[e] = len;
            }
        }
        size
    };
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&gen| {
            (0..n)
                .filter(|&h| {
                    g.elem_order(h) == g.elem_order(gen) && class_size[h] == class_size[gen]
                })
                .collect()
        })
        .collect();

    let mut search = Search {
        g,
        map: vec![UNSET; n],
        taken: vec![false; n],
        defined: Vec::with_capacity(n),
        found: Vec::new(),
        cap,
        overflow: false,
    };
    let mark = search.assign(0, 0).expect("identity maps to identity");
    debug_assert_eq!(mark, 0);
    search.recurse(&gens, &candidates, 0);
    if search.overflow {
        return Automorphisms::identity_only(g, false);
    }
    Automorphisms { perms: search.found, complete: true }
}

/// Generators picked largest-order-first until they span the group.
fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let mut gens = Vec::new();
    let mut span = g.singleton_set(0);
    while span.len() < n {
        let next = (0..n)
            .filter(|&e| !span.contains(e))
            .max_by_key(|&e| (g.elem_order(e), std::cmp::Reverse(e)))
            .unwrap();
        gens.push(next);
        let mut seed = span.clone();
        seed.insert(next);
        span = g.subgroup_closure(&seed);
    }
    gens
}

struct Search<'a> {
    g: &'a FiniteGroup,
    map: Vec<u16>,
    taken: Vec<bool>,
    defined: Vec<usize>,
    found: Vec<Vec<u16>>,
    cap: usize,
    overflow: bool,
}

impl Search<'_> {
    /// Record `a ↦ b` and close under products with everything already
    /// defined. Returns the rollback mark, or Err on any contradiction
    /// (conflicting image or injectivity failure), already rolled back.
    fn assign(&mut self, a: usize, b: usize) -> Result<usize, ()> {
        let mark = self.defined.len();
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let cur = self.map[a];
            if cur != UNSET {
                if cur as usize == b {
                    continue;
                }
                self.rollback(mark);
                return Err(());
            }
            if self.taken[b] {
                self.rollback(mark);
                return Err(());
            }
            self.map[a] = b as u16;
            self.taken[b] = true;
            self.defined.push(a);
            for i in 0..self.defined.len() {
                let d = self.defined[i];
                let e = self.map[d] as usize;
                queue.push((self.g.mul(a, d), self.g.mul(b, e)));
                queue.push((self.g.mul(d, a), self.g.mul(e, b)));
            }
        }
        Ok(mark)
    }

    fn rollback(&mut self, mark: usize) {
        while self.defined.len() > mark {
            let d = self.defined.pop().unwrap();
            self.taken[self.map[d] as usize] = false;
            self.map[d] = UNSET;
        }
    }

    fn recurse(&mut self, gens: &[usize], candidates: &[Vec<usize>], i: usize) {
        if self.overflow {
            return;
        }
        if i == gens.len() {
            debug_assert_eq!(self.defined.len(), self.g.order());
            if self.found.len() == self.cap {
                self.overflow = true;
                return;
            }
            self.found.push(self.map.clone());
            return;
        }
        for &b in &candidates[i] {
            if self.taken[b] {
                continue;
            }
            if let Ok(mark) = self.assign(gens[i], b) {
                self.recurse(gens, candidates, i + 1);
                self.rollback(mark);
                if self.overflow {
                    return;
                }
            }
        }
    }
}
