//! Filledness decision procedure: a structural lookup for orders up to 32,
//! closed-form shortcuts for larger orders, a normal-subgroup loop (index tests
//! plus recursion on quotients), and finally search escalation: randomized
//! first, exhaustive last. Outcomes the budget cannot settle are reported as
//! `Undecided`, never guessed.

use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::time::Instant;

use crate::error::ClassifierError;
use crate::group::{FiniteGroup, GroupSpec};
use crate::search::{
    exhaustive_filled_check, random_nonfilling_lmpfs, FilledStatus, SearchConfig, SearchStats,
    Verdict,
};

/// The filled groups of order at most 32, as construction recipes.
const KNOWN_FILLED: [&str; 15] = [
    "EA(2)", "EA(4)", "EA(8)", "EA(16)", "EA(32)", "C(3)", "C(5)", "D(6)", "D(8)", "D(10)",
    "D(12)", "D(14)", "D(8)xC(2)", "D(22)", "ESM(32)",
];

pub fn known_filled_table() -> Vec<GroupSpec> {
    KNOWN_FILLED.iter().map(|s| s.parse().expect("table entries parse")).collect()
}

/// Table entries of one order.
pub fn known_filled_members(order: usize) -> Result<Vec<GroupSpec>, ClassifierError> {
    if order > 32 {
        return Err(ClassifierError::OrderOutOfRange(order));
    }
    Ok(known_filled_table().into_iter().filter(|s| s.order() == order).collect())
}

/// Structural membership in the order-≤32 table, so isomorphic constructions
/// classify identically regardless of their recipe string.
pub fn is_known_filled(g: &FiniteGroup) -> bool {
    match g.order() {
        2 | 3 | 5 => true,
        4 => g.is_elementary_abelian_2(),
        8 => g.is_elementary_abelian_2() || g.is_dihedral(),
        6 | 10 | 12 | 14 | 22 => g.is_dihedral(),
        16 => g.is_elementary_abelian_2() || is_d8_times_c2(g),
        // The non-abelian entry of order 32 is the minus-type extraspecial
        // group, the one with 11 involutions (plus type has 19).
        32 => g.is_elementary_abelian_2() || (g.is_extraspecial() && g.involution_count() == 11),
        _ => false,
    }
}

/// Among the fourteen groups of order 16, a non-abelian one with a Klein
/// four-group center is D(8)xC(2) or Q(8)xC(2); 11 involutions picks the
/// former (the latter has 3).
fn is_d8_times_c2(g: &FiniteGroup) -> bool {
    if g.order() != 16 || g.is_abelian() {
        return false;
    }
    let center = g.center();
    center.len() == 4
        && center.iter().all(|e| g.elem_order(e) <= 2)
        && g.involution_count() == 11
}

#[derive(Debug, Clone)]
pub struct ClassifierFlags {
    /// Decide order 2^k·p (p an odd prime) negatively without search.
    pub use_2kp_shortcut: bool,
    /// Test mode: skip the table, the closed-form shortcuts, and the
    /// normal-subgroup loop, going straight to search.
    pub bypass_table: bool,
    pub budgets: SearchConfig,
}

impl Default for ClassifierFlags {
    fn default() -> ClassifierFlags {
        ClassifierFlags {
            use_2kp_shortcut: true,
            bypass_table: false,
            budgets: SearchConfig::default(),
        }
    }
}

/// Isomorphism-invariant bucket key for the verdict memo; entries within a
/// bucket are reused only on an exact table hash match.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Fingerprint {
    order: usize,
    exponent: usize,
    center: usize,
    class_sizes: Vec<usize>,
    order_histogram: Vec<(usize, usize)>,
}

fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut class_sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
    class_sizes.sort_unstable();
    let mut histogram: HashMap<usize, usize> = HashMap::new();
    for e in 0..g.order() {
        *histogram.entry(g.elem_order(e)).or_default() += 1;
    }
    let mut order_histogram: Vec<(usize, usize)> = histogram.into_iter().collect();
    order_histogram.sort_unstable();
    Fingerprint {
        order: g.order(),
        exponent: g.exponent(),
        center: g.center().len(),
        class_sizes,
        order_histogram,
    }
}

fn table_hash(g: &FiniteGroup) -> u64 {
    let mut h = DefaultHasher::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            (g.mul(a, b) as u16).hash(&mut h);
        }
    }
    h.finish()
}

type Memo = HashMap<Fingerprint, Vec<(u64, FilledStatus)>>;

fn is_2k_times_odd_prime(n: usize) -> bool {
    let tz = n.trailing_zeros();
    if tz == 0 {
        return false;
    }
    let m = n >> tz;
    m > 2 && (3..).step_by(2).take_while(|d| d * d <= m).all(|d| !m.is_multiple_of(d))
}

fn structural_tag(g: &FiniteGroup) -> Option<&'static str> {
    if g.is_generalized_quaternion() {
        Some("generalized-quaternion")
    } else if g.is_dihedral() {
        Some("dihedral")
    } else if g.is_extraspecial() {
        Some("extraspecial")
    } else if g.is_abelian() {
        Some("abelian")
    } else {
        None
    }
}

/// Decide whether every locally maximal product-free set of G fills G.
pub fn classify_filled(g: &FiniteGroup, flags: &ClassifierFlags) -> Verdict {
    let mut memo = Memo::new();
    classify_inner(g, flags, &mut memo)
}

fn classify_inner(g: &FiniteGroup, flags: &ClassifierFlags, memo: &mut Memo) -> Verdict {
    let key = fingerprint(g);
    let hash = table_hash(g);
    if let Some(entries) = memo.get(&key) {
        if let Some(&(_, status)) = entries.iter().find(|(h, _)| *h == hash) {
            return Verdict {
                filled: status,
                witness: None,
                rule_chain: vec!["memo-hit".to_string()],
                stats: SearchStats::default(),
            };
        }
    }
    let verdict = decide(g, flags, memo);
    memo.entry(key).or_default().push((hash, verdict.filled));
    verdict
}

fn decide(g: &FiniteGroup, flags: &ClassifierFlags, memo: &mut Memo) -> Verdict {
    let start = Instant::now();
    let mut chain: Vec<String> = Vec::new();
    let mut stats = SearchStats::default();
    let n = g.order();

    let done = |filled: FilledStatus,
                witness: Option<crate::pfs::ElemSet>,
                chain: Vec<String>,
                mut stats: SearchStats| {
        stats.elapsed = start.elapsed();
        Verdict { filled, witness, rule_chain: chain, stats }
    };

    if n == 1 {
        chain.push("trivial".to_string());
        return done(FilledStatus::Filled, None, chain, stats);
    }

    if flags.bypass_table {
        chain.push("table-bypassed".to_string());
    } else {
        if n <= 32 {
            chain.push("table".to_string());
            if is_known_filled(g) {
                return done(FilledStatus::Filled, None, chain, stats);
            }
            if let Some(tag) = structural_tag(g) {
                chain.push(tag.to_string());
            }
            return done(FilledStatus::NotFilled, None, chain, stats);
        }
        if n % 2 == 1 {
            chain.push("odd-order".to_string());
            return done(FilledStatus::NotFilled, None, chain, stats);
        }
        if g.is_elementary_abelian_2() {
            chain.push("elementary-abelian".to_string());
            return done(FilledStatus::Filled, None, chain, stats);
        }
        if n.is_power_of_two() && n.trailing_zeros() > 7 {
            chain.push("large-2-group".to_string());
            return done(FilledStatus::NotFilled, None, chain, stats);
        }
        if flags.use_2kp_shortcut && is_2k_times_odd_prime(n) {
            chain.push("order-2kp".to_string());
            return done(FilledStatus::NotFilled, None, chain, stats);
        }
        if g.is_abelian() {
            chain.push("abelian".to_string());
            return done(FilledStatus::NotFilled, None, chain, stats);
        }
        if g.is_dihedral() {
            chain.push("dihedral".to_string());
            return done(FilledStatus::NotFilled, None, chain, stats);
        }
        if g.is_generalized_quaternion() {
            chain.push("generalized-quaternion".to_string());
            return done(FilledStatus::NotFilled, None, chain, stats);
        }
        for n_sub in g.normal_subgroups() {
            let size = n_sub.len();
            if size == 1 || size == n {
                continue;
            }
            let index = n / size;
            if index == 3 {
                chain.push("index-3-subgroup".to_string());
                return done(FilledStatus::NotFilled, None, chain, stats);
            }
            if index == 5 && (0..n).any(|e| g.elem_order(e) == 5 && !n_sub.contains(e)) {
                chain.push("index-5-subgroup".to_string());
                return done(FilledStatus::NotFilled, None, chain, stats);
            }
            let quotient = g.quotient(&n_sub).expect("normal subgroup enumeration is sound");
            let sub_verdict = classify_inner(&quotient, flags, memo);
            if sub_verdict.filled == FilledStatus::NotFilled {
                chain.push(format!("quotient-not-filled(order={})", quotient.order()));
                return done(FilledStatus::NotFilled, None, chain, stats);
            }
            // An undecided quotient settles nothing; keep looking.
        }
    }

    chain.push("random-search".to_string());
    let nfs = random_nonfilling_lmpfs(g, &flags.budgets);
    stats.restarts = nfs.stats.restarts;
    if nfs.witness.is_some() {
        return done(FilledStatus::NotFilled, nfs.witness, chain, stats);
    }

    match exhaustive_filled_check(g, &flags.budgets) {
        Ok(verdict) => {
            chain.extend(verdict.rule_chain);
            stats.orbits_examined = verdict.stats.orbits_examined;
            stats.sets_extended = verdict.stats.sets_extended;
            done(verdict.filled, verdict.witness, chain, stats)
        }
        Err(_) => {
            chain.push("undecided-at-budget".to_string());
            done(FilledStatus::Undecided, None, chain, stats)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn make(spec: &str) -> FiniteGroup {
        build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap().into_group()
    }

    fn classify(spec: &str) -> Verdict {
        classify_filled(&make(spec), &ClassifierFlags::default())
    }

    #[test]
    fn table_decides_small_orders() {
        let v = classify("C(3)");
        assert_eq!(v.filled, FilledStatus::Filled);
        assert_eq!(v.rule_chain, vec!["table"]);

        let v = classify("Q(8)");
        assert_eq!(v.filled, FilledStatus::NotFilled);
        assert_eq!(v.rule_chain, vec!["table", "generalized-quaternion"]);

        let v = classify("Q(16)");
        assert_eq!(v.filled, FilledStatus::NotFilled);
        assert_eq!(v.rule_chain.last().map(String::as_str), Some("generalized-quaternion"));

        assert_eq!(classify("D(22)").filled, FilledStatus::Filled);
        assert_eq!(classify("D(16)").filled, FilledStatus::NotFilled);
        assert_eq!(classify("C(4)").rule_chain, vec!["table", "abelian"]);
    }

    #[test]
    fn structural_membership_sees_through_recipes() {
        // Isomorphic constructions of table entries classify as members.
        for spec in ["D(8)*Q(8)", "Q(8)*D(8)", "ESM(32)", "EA(4)xEA(8)", "C(2)xD(8)"] {
            assert_eq!(classify(spec).filled, FilledStatus::Filled, "{spec}");
        }
        // Plus-type extraspecial of order 32 is not in the table.
        assert_eq!(classify("ESP(32)").filled, FilledStatus::NotFilled);
        assert_eq!(classify("D(8)*D(8)").filled, FilledStatus::NotFilled);
        assert_eq!(classify("Q(8)xC(2)").filled, FilledStatus::NotFilled);
    }

    #[test]
    fn shortcut_rules_fire_in_order() {
        let v = classify("C(35)");
        assert_eq!(v.filled, FilledStatus::NotFilled);
        assert_eq!(v.rule_chain, vec!["odd-order"]);

        let v = classify("EA(64)");
        assert_eq!(v.filled, FilledStatus::Filled);
        assert_eq!(v.rule_chain, vec!["elementary-abelian"]);

        let v = classify("D(256)xC(2)");
        assert_eq!(v.rule_chain, vec!["large-2-group"]);
        assert_eq!(v.filled, FilledStatus::NotFilled);

        let v = classify("D(48)");
        assert_eq!(v.rule_chain, vec!["order-2kp"]);

        let v = classify("C(36)");
        assert_eq!(v.rule_chain, vec!["abelian"]);

        assert_eq!(classify("D(36)").rule_chain, vec!["dihedral"]);
        assert_eq!(classify("Q(36)").rule_chain, vec!["generalized-quaternion"]);
    }

    #[test]
    fn two_kp_shortcut_can_be_disabled() {
        let flags =
            ClassifierFlags { use_2kp_shortcut: false, ..ClassifierFlags::default() };
        let v = classify_filled(&make("D(48)"), &flags);
        assert_eq!(v.filled, FilledStatus::NotFilled);
        assert_ne!(v.rule_chain.first().map(String::as_str), Some("order-2kp"));
    }

    #[test]
    fn quotient_recursion_decides() {
        // Order 72 dodges every shortcut, so the normal-subgroup loop must
        // decide; either an index-3 subgroup or an unfilled quotient works.
        let v = classify("D(8)xC(9)");
        assert_eq!(v.filled, FilledStatus::NotFilled);
        assert!(
            v.rule_chain.iter().any(|t| t.starts_with("index-3") || t.starts_with("quotient")),
            "chain: {:?}",
            v.rule_chain
        );
    }

    #[test]
    fn known_members_by_order() {
        let members = known_filled_members(16).unwrap();
        let names: Vec<String> = members.iter().map(|s| s.to_string()).collect();
        assert_eq!(names, vec!["EA(16)", "D(8)xC(2)"]);

        let names: Vec<String> = known_filled_members(32)
            .unwrap()
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(names, vec!["EA(32)", "ESM(32)"]);

        assert!(known_filled_members(7).unwrap().is_empty());
        assert!(known_filled_members(33).is_err());
        assert_eq!(known_filled_table().len(), 15);
    }

    #[test]
    fn bypass_table_reaches_search() {
        let flags = ClassifierFlags {
            bypass_table: true,
            budgets: SearchConfig { max_restarts: 5, ..SearchConfig::default() },
            ..ClassifierFlags::default()
        };
        let v = classify_filled(&make("C(5)"), &flags);
        assert_eq!(v.filled, FilledStatus::Filled);
        assert_eq!(v.rule_chain.first().map(String::as_str), Some("table-bypassed"));
        assert!(v.rule_chain.iter().any(|t| t == "exhaustive"));

        let v = classify_filled(&make("C(7)"), &flags);
        assert_eq!(v.filled, FilledStatus::NotFilled);
        assert!(v.witness.is_some());
    }

    #[test]
    fn undecided_when_exhaustive_gated() {
        let flags = ClassifierFlags {
            budgets: SearchConfig { max_restarts: 3, ..SearchConfig::default() },
            ..ClassifierFlags::default()
        };
        let v = classify_filled(&make("(D(8)*Q(8))xC(2)"), &flags);
        assert_eq!(v.filled, FilledStatus::Undecided);
        assert_eq!(v.rule_chain.last().map(String::as_str), Some("undecided-at-budget"));
    }
}
