//! Concrete finite groups as validated multiplication tables.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::GroupError;

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

/// Largest order for which associativity is checked over every triple;
/// bigger tables are checked on a deterministic random sample.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 512;
const SAMPLED_ASSOC_TRIPLES: usize = 100_000;

/// A finite group given by its full multiplication table.
///
/// Elements are indices `0..order`, the identity is index `0`, and
/// `table[a * order + b]` is the product `a·b`. Every constructor funnels
/// through [`FiniteGroup::from_table`], which checks the group axioms.
pub struct FiniteGroup {
    uid: u64,
    order: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    elem_order: Vec<u16>,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    spec_string: String,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("spec", &self.spec_string)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Validate a multiplication table and wrap it as a group.
    ///
    /// Checks: square shape, entries in range, index 0 acting as two-sided
    /// identity, rows and columns being permutations, two-sided inverses,
    /// associativity (exhaustive up to order 512, sampled above), unique
    /// labels, and element orders dividing the group order.
    pub fn from_table(
        table: Vec<u16>,
        labels: Vec<String>,
        spec_string: String,
    ) -> Result<FiniteGroup, GroupError> {
        let n = labels.len();
        if n == 0 {
            return Err(GroupError::BadTable("empty element list".to_string()));
        }
        if n > u16::MAX as usize {
            return Err(GroupError::BadTable(format!("order {n} exceeds u16 range")));
        }
        if table.len() != n * n {
            return Err(GroupError::BadTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if table.iter().any(|&e| e as usize >= n) {
            return Err(GroupError::BadTable("table entry out of range".to_string()));
        }
        for j in 0..n {
            if table[j] as usize != j || table[j * n] as usize != j {
                return Err(GroupError::BadTable(
                    "index 0 is not a two-sided identity".to_string(),
                ));
            }
        }
        // Rows and columns must be permutations (cancellation).
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let e = table[a * n + b] as usize;
                if seen[e] {
                    return Err(GroupError::BadTable(format!("row {a} repeats entry {e}")));
                }
                seen[e] = true;
            }
        }
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                let e = table[a * n + b] as usize;
                if seen[e] {
                    return Err(GroupError::BadTable(format!(
                        "column {b} repeats entry {e}"
                    )));
                }
                seen[e] = true;
            }
        }
        check_associativity(&table, n)?;
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let mut found = None;
            for b in 0..n {
                if table[a * n + b] == 0 {
                    found = Some(b);
                    break;
                }
            }
            let b = found
                .ok_or_else(|| GroupError::BadTable(format!("element {a} has no inverse")))?;
            if table[b * n + a] != 0 {
                return Err(GroupError::BadTable(format!(
                    "element {a} has no two-sided inverse"
                )));
            }
            inv[a] = b as u16;
        }
        let mut elem_order = vec![0u16; n];
        for a in 0..n {
            let mut p = a;
            let mut k = 1usize;
            while p != 0 {
                p = table[p * n + a] as usize;
                k += 1;
                if k > n {
                    return Err(GroupError::BadTable(format!(
                        "element {a} has unbounded order"
                    )));
                }
            }
            if !n.is_multiple_of(k) {
                return Err(GroupError::BadTable(format!(
                    "element {a} has order {k}, which does not divide {n}"
                )));
            }
            elem_order[a] = k as u16;
        }
        let mut label_index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(GroupError::BadTable(format!("duplicate label `{l}`")));
            }
        }
        Ok(FiniteGroup {
            uid: NEXT_UID.fetch_add(1, Ordering::Relaxed),
            order: n,
            table,
            inv,
            elem_order,
            labels,
            label_index,
            spec_string,
        })
    }

    /// Identifier tying element sets to the group instance they were made from.
    pub fn uid(&self) -> u64 {
        self.uid
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Product of two elements.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    /// Inverse of an element.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Order of an element.
    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.elem_order[a] as usize
    }

    /// `a` raised to a non-negative power.
    pub fn pow(&self, a: usize, mut e: usize) -> usize {
        e %= self.elem_order(a);
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Human-readable word for an element.
    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// All labels, indexed by element.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Look an element up by its label.
    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    /// The canonical recipe text this group was built from.
    pub fn spec_string(&self) -> &str {
        &self.spec_string
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        let mut e = 1usize;
        for a in 0..self.order {
            let k = self.elem_order(a);
            e = e / gcd(e, k) * k;
        }
        e
    }

    pub(crate) fn replace_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.order);
        let mut label_index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            let prev = label_index.insert(l.clone(), i);
            assert!(prev.is_none(), "duplicate label `{l}`");
        }
        self.labels = labels;
        self.label_index = label_index;
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_associativity(table: &[u16], n: usize) -> Result<(), GroupError> {
    let at = |a: usize, b: usize| table[a * n + b] as usize;
    let check = |a: usize, b: usize, c: usize| -> Result<(), GroupError> {
        if at(at(a, b), c) != at(a, at(b, c)) {
            return Err(GroupError::BadTable(format!(
                "associativity fails on ({a}, {b}, {c})"
            )));
        }
        Ok(())
    };
    if n <= EXHAUSTIVE_ASSOC_LIMIT {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        // Deterministic splitmix-style sample.
        let mut state = 0x9e3779b97f4a7c15u64 ^ (n as u64);
        let mut next = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            (z ^ (z >> 31)) as usize
        };
        for _ in 0..SAMPLED_ASSOC_TRIPLES {
            check(next() % n, next() % n, next() % n)?;
        }
    }
    Ok(())
}
