//! Brute-force oracles shared by the integration suites.
//!
//! Everything here recomputes set predicates from the multiplication table
//! alone, over raw `u64` bit masks, so it shares no code with the library's
//! `ElemSet` algebra. Slow on purpose; used only on small groups.

#![allow(dead_code)]

use filled_groups::{build_group, ElemSet, FiniteGroup, GroupSpec};

pub fn build(spec: &str) -> FiniteGroup {
    build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap().into_group()
}

pub fn mask_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | 1 << i)
}

pub fn to_elem_set(g: &FiniteGroup, mask: u64) -> ElemSet {
    g.set_from_indices(mask_members(mask))
}

pub fn from_elem_set(s: &ElemSet) -> u64 {
    assert!(s.universe() <= 64);
    mask_of(&s.to_indices())
}

pub fn product_mask(g: &FiniteGroup, a: u64, b: u64) -> u64 {
    let mut out = 0u64;
    for x in mask_members(a) {
        for y in mask_members(b) {
            out |= 1 << g.mul(x, y);
        }
    }
    out
}

pub fn inverse_mask(g: &FiniteGroup, a: u64) -> u64 {
    mask_members(a).iter().fold(0u64, |m, &x| m | 1 << g.inv(x))
}

pub fn sqrt_mask(g: &FiniteGroup, a: u64) -> u64 {
    let mut out = 0u64;
    for y in 0..g.order() {
        if a >> g.mul(y, y) & 1 == 1 {
            out |= 1 << y;
        }
    }
    out
}

pub fn t_closure_mask(g: &FiniteGroup, s: u64) -> u64 {
    let si = inverse_mask(g, s);
    s | product_mask(g, s, s) | product_mask(g, s, si) | product_mask(g, si, s)
}

pub fn is_product_free_mask(g: &FiniteGroup, s: u64) -> bool {
    product_mask(g, s, s) & s == 0
}

pub fn fills_mask(g: &FiniteGroup, s: u64) -> bool {
    let covered = s | product_mask(g, s, s) | 1;
    covered.count_ones() as usize == g.order()
}

/// Local maximality straight from the definition: product-free, and no
/// single outside element can be added while staying product-free.
pub fn is_locally_maximal_mask(g: &FiniteGroup, s: u64) -> bool {
    if !is_product_free_mask(g, s) {
        return false;
    }
    for x in 0..g.order() {
        if s >> x & 1 == 0 && is_product_free_mask(g, s | 1 << x) {
            return false;
        }
    }
    true
}

/// Elements that can join `s` product-freely, checked one candidate at a
/// time by re-testing the enlarged set.
pub fn addable_mask(g: &FiniteGroup, s: u64) -> u64 {
    assert!(is_product_free_mask(g, s));
    let mut out = 0u64;
    for x in 0..g.order() {
        if s >> x & 1 == 0 && is_product_free_mask(g, s | 1 << x) {
            out |= 1 << x;
        }
    }
    out
}

/// Every locally maximal product-free set, by scanning all 2^n subsets.
pub fn naive_lmpfs_masks(g: &FiniteGroup) -> Vec<u64> {
    let n = g.order();
    assert!(n <= 16, "full subset scan is for tiny groups");
    let mut out = Vec::new();
    for mask in 1u64..1 << n {
        if mask & 1 == 0 && is_locally_maximal_mask(g, mask) {
            out.push(mask);
        }
    }
    out
}

/// All automorphisms of `g` by filtering raw permutations, identity fixed.
pub fn brute_automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    assert!(n <= 8, "permutation scan is for tiny groups");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    permute_rest(g, &mut perm, 1, &mut out);
    out.sort();
    out
}

fn permute_rest(g: &FiniteGroup, perm: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
    let n = perm.len();
    if at == n {
        if is_homomorphism(g, perm) {
            out.push(perm.clone());
        }
        return;
    }
    for i in at..n {
        perm.swap(at, i);
        permute_rest(g, perm, at + 1, out);
        perm.swap(at, i);
    }
}

fn is_homomorphism(g: &FiniteGroup, perm: &[usize]) -> bool {
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            if perm[g.mul(a, b)] != g.mul(perm[a], perm[b]) {
                return false;
            }
        }
    }
    true
}

/// Tiny deterministic RNG so the oracle side owes nothing to the library's
/// choice of generator.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// A random product-free set: visit the non-identity elements in a shuffled
/// order and keep those that preserve product-freeness, stopping once a
/// random target size is reached. May return the empty set.
pub fn random_product_free_mask(g: &FiniteGroup, seed: u64) -> u64 {
    let n = g.order();
    assert!(n <= 64);
    let mut rng = SplitMix64(seed);
    let mut order: Vec<usize> = (1..n).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.below(i + 1));
    }
    let target = 1 + rng.below(n.max(2) - 1);
    let mut s = 0u64;
    for &x in &order {
        if s.count_ones() as usize >= target {
            break;
        }
        if is_product_free_mask(g, s | 1 << x) {
            s |= 1 << x;
        }
    }
    s
}
