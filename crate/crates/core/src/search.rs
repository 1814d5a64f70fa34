//! The two search strategies for locally maximal product-free sets: a
//! seeded randomized greedy with restarts that hunts for a non-filling set,
//! and an exhaustive enumeration that settles filledness outright.
//!
//! The exhaustive search covers sizes 1 and 2 directly, then grows every
//! product-free triple by adding strictly larger addable elements, so each
//! candidate set is visited exactly once from its three smallest members.
//! With a complete automorphism list only lexicographically minimal orbit
//! representative triples are used as roots: for any set, some automorphic
//! image has a lex-minimal bottom triple, and that triple is necessarily a
//! representative, so every orbit of locally maximal sets is still reached.
//!
//! On groups of exponent 4 whose order-4 elements all square to one central
//! involution, any non-filling locally maximal product-free set consists of
//! involutions, so the triple phase may restrict itself to involutions
//! without affecting the verdict; sizes 1 and 2 stay unrestricted.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{PfsError, SearchError};
use crate::group::{automorphism_group, Automorphisms, FiniteGroup, DEFAULT_AUT_CAP};
use crate::pfs::ElemSet;

pub const DEFAULT_MAX_RESTARTS: u64 = 10_000;
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(60);
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 128;
/// Orders at or above this need the explicit opt-in for exhaustive search.
pub const EXHAUSTIVE_OPT_IN_THRESHOLD: usize = 64;

/// Whether the randomized search seeds its set with a central involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InvolutionSeed {
    /// Seed with z when the group has exponent 4 and a common square z.
    #[default]
    Auto,
    On,
    Off,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub rng_seed: u64,
    pub max_restarts: u64,
    pub time_budget: Duration,
    pub involution_seed: InvolutionSeed,
    pub parallel_width: usize,
    pub orbit_reduction: bool,
    pub exhaustive_cap: usize,
    pub exhaustive_opt_in: bool,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            rng_seed: 0,
            max_restarts: DEFAULT_MAX_RESTARTS,
            time_budget: DEFAULT_TIME_BUDGET,
            involution_seed: InvolutionSeed::Auto,
            parallel_width: 1,
            orbit_reduction: true,
            exhaustive_cap: DEFAULT_EXHAUSTIVE_CAP,
            exhaustive_opt_in: false,
        }
    }
}

impl SearchConfig {
    fn validate(&self) {
        assert!(self.max_restarts >= 1, "max_restarts must be at least 1");
        assert!(self.time_budget > Duration::ZERO, "time_budget must be positive");
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilledStatus {
    Filled,
    NotFilled,
    Undecided,
}

#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    pub restarts: u64,
    pub orbits_examined: u64,
    pub sets_extended: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub filled: FilledStatus,
    pub witness: Option<ElemSet>,
    pub rule_chain: Vec<String>,
    pub stats: SearchStats,
}

/// Three booleans a claimed witness must pass. `locally_maximal` and `fills`
/// are reported only when the set is product-free at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessReport {
    pub product_free: bool,
    pub locally_maximal: Option<bool>,
    pub fills: Option<bool>,
}

impl WitnessReport {
    /// Product-free, locally maximal, and non-filling.
    pub fn is_nonfilling_lmpfs(&self) -> bool {
        self.product_free && self.locally_maximal == Some(true) && self.fills == Some(false)
    }
}

pub fn verify_witness(g: &FiniteGroup, s: &ElemSet) -> Result<WitnessReport, PfsError> {
    if s.group_uid() != g.uid() {
        return Err(PfsError::GroupMismatch);
    }
    if !g.is_product_free(s) {
        return Ok(WitnessReport { product_free: false, locally_maximal: None, fills: None });
    }
    Ok(WitnessReport {
        product_free: true,
        locally_maximal: Some(g.is_locally_maximal(s).expect("just checked product-free")),
        fills: Some(g.fills(s)),
    })
}

fn assert_nonfilling_lmpfs(g: &FiniteGroup, s: &ElemSet) {
    let report = verify_witness(g, s).expect("witness bound to this group");
    assert!(report.is_nonfilling_lmpfs(), "search produced an invalid witness {s:?}");
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Stream seed for one restart: same (seed, restart) always yields the same
/// random choices.
fn restart_seed(seed: u64, restart: u64) -> u64 {
    splitmix64(seed ^ splitmix64(restart))
}

/// Grow `seed_set` by uniformly random addable elements until none remain.
/// The result is locally maximal by construction.
pub fn greedy_maximal_extension(g: &FiniteGroup, seed_set: &ElemSet, rng_seed: u64) -> ElemSet {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut s = seed_set.clone();
    let mut frontier = g.addable_set(&s).expect("seed set must be product-free");
    loop {
        let count = frontier.len();
        if count == 0 {
            return s;
        }
        let pick = rng.random_range(0..count);
        let x = frontier.iter().nth(pick).unwrap();
        s.insert(x);
        frontier = g.addable_set(&s).expect("addable elements keep the set product-free");
    }
}

fn resolve_involution_seed(g: &FiniteGroup, mode: InvolutionSeed) -> ElemSet {
    let z = match mode {
        InvolutionSeed::Off => None,
        InvolutionSeed::Auto => g.common_square_involution(),
        InvolutionSeed::On => g.common_square_involution().or_else(|| {
            let central_involutions: Vec<usize> =
                g.center().iter().filter(|&e| g.elem_order(e) == 2).collect();
            match central_involutions[..] {
                [z] => Some(z),
                _ => None,
            }
        }),
    };
    match z {
        Some(z) => g.singleton_set(z),
        None => g.empty_set(),
    }
}

#[derive(Debug)]
pub struct NfsOutcome {
    pub witness: Option<ElemSet>,
    pub stats: SearchStats,
}

/// Randomized restart search for a non-filling locally maximal product-free
/// set. Coming back empty-handed is not evidence that the group is filled.
pub fn random_nonfilling_lmpfs(g: &FiniteGroup, cfg: &SearchConfig) -> NfsOutcome {
    assert!(g.order() >= 2, "search needs a non-trivial group");
    cfg.validate();
    let start = Instant::now();
    let seed_set = resolve_involution_seed(g, cfg.involution_seed);
    let mut stats = SearchStats::default();
    for restart in 0..cfg.max_restarts {
        if restart > 0 && start.elapsed() > cfg.time_budget {
            break;
        }
        stats.restarts = restart + 1;
        let s = greedy_maximal_extension(g, &seed_set, restart_seed(cfg.rng_seed, restart));
        if !g.fills(&s) {
            assert_nonfilling_lmpfs(g, &s);
            stats.elapsed = start.elapsed();
            return NfsOutcome { witness: Some(s), stats };
        }
    }
    stats.elapsed = start.elapsed();
    NfsOutcome { witness: None, stats }
}

/// All product-free 3-element sets, reduced to lexicographically minimal
/// orbit representatives when the automorphism list is complete.
pub fn orbit_representatives_triples(g: &FiniteGroup, auts: &Automorphisms) -> Vec<ElemSet> {
    let universe = g.full_set().difference(&g.singleton_set(0));
    product_free_triples(g, auts, &universe)
}

fn product_free_triples(
    g: &FiniteGroup,
    auts: &Automorphisms,
    universe: &ElemSet,
) -> Vec<ElemSet> {
    let members = universe.to_indices();
    let reduce = auts.complete && auts.perms.len() > 1;
    let mut out = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate().skip(i + 1) {
            for &c in members.iter().skip(j + 1) {
                if !triple_product_free(g, a, b, c) {
                    continue;
                }
                if reduce && !is_orbit_rep(g, auts, [a, b, c]) {
                    continue;
                }
                out.push(g.set_from_indices([a, b, c]));
            }
        }
    }
    out
}

fn triple_product_free(g: &FiniteGroup, a: usize, b: usize, c: usize) -> bool {
    let t = [a, b, c];
    t.iter().all(|&x| t.iter().all(|&y| !t.contains(&g.mul(x, y))))
}

fn is_orbit_rep(g: &FiniteGroup, auts: &Automorphisms, t: [usize; 3]) -> bool {
    debug_assert!(t[0] < t[1] && t[1] < t[2]);
    let _ = g;
    for p in &auts.perms {
        let mut image = [p[t[0]] as usize, p[t[1]] as usize, p[t[2]] as usize];
        image.sort_unstable();
        if image < t {
            return false;
        }
    }
    true
}

/// What the recursive extension reports back at each locally maximal leaf.
enum LeafFlow {
    Continue,
    Stop,
}

/// For each element e, the set {y : y*y = e}, so adding e to a set knocks
/// its square roots out of the frontier in O(1).
fn sqrt_preimages(g: &FiniteGroup) -> Vec<ElemSet> {
    let mut pre = vec![g.empty_set(); g.order()];
    for y in 0..g.order() {
        pre[g.mul(y, y)].insert(y);
    }
    pre
}

/// Depth-first extension of `s` by elements of `frontier` in increasing
/// order; `on_lmpfs` is invoked for every locally maximal extension.
///
/// Invariant: `frontier` is a subset of addable(s). Instead of recomputing
/// the addable set per node, adding x removes exactly the elements x newly
/// blocks: x itself, the cross products and quotients of x with members, and
/// the square roots of x.
fn extend_all(
    g: &FiniteGroup,
    sqrt_pre: &[ElemSet],
    s: &mut ElemSet,
    frontier: &ElemSet,
    sets_extended: &mut u64,
    on_lmpfs: &mut impl FnMut(&ElemSet) -> LeafFlow,
) -> LeafFlow {
    *sets_extended += 1;
    if frontier.is_empty() {
        if g.addable_set(s).expect("extensions stay product-free").is_empty() {
            return on_lmpfs(s);
        }
        return LeafFlow::Continue;
    }
    for x in frontier.to_indices() {
        s.insert(x);
        let mut next = frontier.clone();
        next.retain_greater_than(x);
        if !next.is_empty() {
            let xi = g.inv(x);
            for m in s.iter() {
                let mi = g.inv(m);
                next.remove(g.mul(x, m));
                next.remove(g.mul(m, x));
                next.remove(g.mul(x, mi));
                next.remove(g.mul(m, xi));
                next.remove(g.mul(xi, m));
                next.remove(g.mul(mi, x));
            }
            next.subtract(&sqrt_pre[x]);
        }
        if let LeafFlow::Stop = extend_all(g, sqrt_pre, s, &next, sets_extended, on_lmpfs) {
            s.remove(x);
            return LeafFlow::Stop;
        }
        s.remove(x);
    }
    LeafFlow::Continue
}

/// Locally maximal product-free sets of size 1 or 2, which the triple phase
/// cannot reach.
fn small_lmpfs(g: &FiniteGroup) -> Vec<ElemSet> {
    let n = g.order();
    let mut out = Vec::new();
    let push_if_lm = |s: ElemSet, out: &mut Vec<ElemSet>| {
        if g.is_product_free(&s) && g.addable_set(&s).unwrap().is_empty() {
            out.push(s);
        }
    };
    for a in 1..n {
        push_if_lm(g.singleton_set(a), &mut out);
    }
    for a in 1..n {
        for b in a + 1..n {
            push_if_lm(g.set_from_indices([a, b]), &mut out);
        }
    }
    out
}

fn involution_universe(g: &FiniteGroup) -> Option<ElemSet> {
    g.common_square_involution()?;
    let mut u = g.empty_set();
    for e in 1..g.order() {
        if g.elem_order(e) == 2 {
            u.insert(e);
        }
    }
    Some(u)
}

fn check_exhaustive_bounds(g: &FiniteGroup, cfg: &SearchConfig) -> Result<(), SearchError> {
    let order = g.order();
    if order > cfg.exhaustive_cap {
        return Err(SearchError::ExhaustiveCapExceeded {
            order,
            cap: cfg.exhaustive_cap,
            needs_opt_in: false,
        });
    }
    if order >= EXHAUSTIVE_OPT_IN_THRESHOLD && !cfg.exhaustive_opt_in {
        return Err(SearchError::ExhaustiveCapExceeded {
            order,
            cap: cfg.exhaustive_cap,
            needs_opt_in: true,
        });
    }
    Ok(())
}

/// Decide filledness by complete enumeration of locally maximal product-free
/// sets, returning the first non-filling one found as witness.
pub fn exhaustive_filled_check(
    g: &FiniteGroup,
    cfg: &SearchConfig,
) -> Result<Verdict, SearchError> {
    check_exhaustive_bounds(g, cfg)?;
    let start = Instant::now();
    let mut rule_chain = Vec::new();
    let mut stats = SearchStats::default();

    let mut witness = None;
    for s in small_lmpfs(g) {
        stats.sets_extended += 1;
        if !g.fills(&s) {
            witness = Some(s);
            break;
        }
    }

    if witness.is_none() {
        let universe = match involution_universe(g) {
            Some(u) => {
                rule_chain.push("involution-restriction".to_string());
                u
            }
            None => g.full_set().difference(&g.singleton_set(0)),
        };
        let auts = if cfg.orbit_reduction {
            automorphism_group(g, DEFAULT_AUT_CAP)
        } else {
            Automorphisms::identity_only(g, false)
        };
        if auts.complete && auts.perms.len() > 1 {
            rule_chain.push("orbit-reduction".to_string());
        }
        let roots = product_free_triples(g, &auts, &universe);
        stats.orbits_examined = roots.len() as u64;

        witness = if cfg.parallel_width > 1 && roots.len() > 1 {
            rule_chain.push(format!("parallel({})", cfg.parallel_width));
            scan_roots_parallel(g, &universe, &roots, cfg.parallel_width, &mut stats.sets_extended)
        } else {
            scan_roots(g, &universe, &roots, &mut stats.sets_extended)
        };
    }

    rule_chain.push("exhaustive".to_string());
    if let Some(w) = &witness {
        assert_nonfilling_lmpfs(g, w);
    }
    stats.elapsed = start.elapsed();
    Ok(Verdict {
        filled: if witness.is_some() { FilledStatus::NotFilled } else { FilledStatus::Filled },
        witness,
        rule_chain,
        stats,
    })
}

/// Extensions stay inside `universe`: when the triple universe is restricted
/// (to involutions), any sought witness lies entirely within it, so the
/// frontier never needs to leave it. Leaves are still checked for local
/// maximality against the whole group.
fn root_frontier(g: &FiniteGroup, root: &ElemSet, universe: &ElemSet) -> ElemSet {
    let mut f = g.addable_set(root).expect("roots are product-free");
    f.intersect_with(universe);
    f.retain_greater_than(root.to_indices()[2]);
    f
}

fn scan_roots(
    g: &FiniteGroup,
    universe: &ElemSet,
    roots: &[ElemSet],
    sets_extended: &mut u64,
) -> Option<ElemSet> {
    let sqrt_pre = sqrt_preimages(g);
    let mut witness = None;
    for root in roots {
        let mut s = root.clone();
        let frontier = root_frontier(g, root, universe);
        let flow = extend_all(g, &sqrt_pre, &mut s, &frontier, sets_extended, &mut |s| {
            if g.fills(s) {
                LeafFlow::Continue
            } else {
                witness = Some(s.clone());
                LeafFlow::Stop
            }
        });
        if let LeafFlow::Stop = flow {
            break;
        }
    }
    witness
}

/// Workers take fixed contiguous chunks of the roots and each report their
/// own first find; the smallest of those is the overall witness, so the
/// result does not depend on scheduling.
fn scan_roots_parallel(
    g: &FiniteGroup,
    universe: &ElemSet,
    roots: &[ElemSet],
    width: usize,
    sets_extended: &mut u64,
) -> Option<ElemSet> {
    let chunk_len = roots.len().div_ceil(width);
    let results: Vec<(Option<ElemSet>, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = roots
            .chunks(chunk_len)
            .map(|chunk| {
                scope.spawn(move || {
                    let mut counter = 0;
                    let w = scan_roots(g, universe, chunk, &mut counter);
                    (w, counter)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });
    let mut witness: Option<ElemSet> = None;
    for (w, counter) in results {
        *sets_extended += counter;
        if let Some(w) = w {
            witness = match witness {
                Some(best) if best <= w => Some(best),
                _ => Some(w),
            };
        }
    }
    witness
}

/// Every locally maximal product-free set of the group, filling or not,
/// found without orbit reduction or involution restriction. Intended for
/// small groups and for cross-checking against brute-force oracles.
pub fn enumerate_lmpfs(g: &FiniteGroup) -> Vec<ElemSet> {
    let mut out = small_lmpfs(g);
    let auts = Automorphisms::identity_only(g, false);
    let universe = g.full_set().difference(&g.singleton_set(0));
    let roots = product_free_triples(g, &auts, &universe);
    let sqrt_pre = sqrt_preimages(g);
    let mut sets_extended = 0;
    for root in &roots {
        let mut s = root.clone();
        let frontier = root_frontier(g, root, &universe);
        extend_all(g, &sqrt_pre, &mut s, &frontier, &mut sets_extended, &mut |s| {
            out.push(s.clone());
            LeafFlow::Continue
        });
    }
    out.sort();
    out
}
