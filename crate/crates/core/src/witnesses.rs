//! Closed-form non-filling locally maximal product-free sets: five dihedral
//! families covering every odd n >= 13, a literal seven-element set in D(44),
//! a generator-word construction for extraspecial groups of order >= 512, and
//! seeded greedy witnesses for central products with C(4). Every constructor
//! re-verifies its output against the set algebra before returning it.

use crate::error::WitnessError;
use crate::group::{ExtraspecialFrame, FiniteGroup, GroupSpec, KKind};
use crate::pfs::ElemSet;
use crate::search::{greedy_maximal_extension, verify_witness};

/// Which of the five arithmetic families an odd n >= 13 falls in, written as
/// n in terms of an odd parameter k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessFamily {
    FiveKMinus6,
    FiveKMinus4,
    FiveKMinus2,
    FiveK,
    FiveKPlus2,
}

impl WitnessFamily {
    pub fn describe(self) -> &'static str {
        match self {
            WitnessFamily::FiveKMinus6 => "5k-6",
            WitnessFamily::FiveKMinus4 => "5k-4",
            WitnessFamily::FiveKMinus2 => "5k-2",
            WitnessFamily::FiveK => "5k",
            WitnessFamily::FiveKPlus2 => "5k+2",
        }
    }

    /// Family and odd k with n = family(k). Defined exactly for odd n >= 13.
    fn select(n: usize) -> (WitnessFamily, usize) {
        match n % 10 {
            1 => (WitnessFamily::FiveKMinus4, n.div_ceil(5)),
            3 => (WitnessFamily::FiveKMinus2, (n + 2) / 5),
            5 => (WitnessFamily::FiveK, n / 5),
            7 => (WitnessFamily::FiveKPlus2, (n - 2) / 5),
            9 => (WitnessFamily::FiveKMinus6, (n + 6) / 5),
            _ => unreachable!("n must be odd"),
        }
    }
}

/// The arithmetic data behind a dihedral witness: which rotations x^e and
/// reflections x^j y make up the set, and which rotation is provably outside
/// S u SS (certifying that the set does not fill).
#[derive(Debug, Clone)]
pub struct DihedralWitnessPlan {
    pub n: usize,
    pub k: usize,
    pub family: WitnessFamily,
    pub rotation_exponents: Vec<usize>,
    pub reflection_exponents: Vec<usize>,
    pub excluded_exponent: usize,
}

#[derive(Debug)]
pub struct DihedralWitness {
    pub group: FiniteGroup,
    pub set: ElemSet,
    pub plan: DihedralWitnessPlan,
    /// Element index of x^{excluded_exponent}.
    pub excluded: usize,
}

/// A non-filling locally maximal product-free set in D(2n), for odd n >= 13.
pub fn dihedral_witness(n: usize) -> Result<DihedralWitness, WitnessError> {
    if n.is_multiple_of(2) {
        return Err(WitnessError::Domain(format!("n = {n} must be odd")));
    }
    if n < 13 {
        return Err(WitnessError::Domain(format!("n = {n} must be at least 13")));
    }
    let (family, k) = WitnessFamily::select(n);
    debug_assert!(k % 2 == 1);

    // Every set is a run of odd rotation exponents plus an initial block of
    // reflections; the run endpoints vary by family because the modulus does.
    // Two boundary facts shape the cases. For 5k+2 at k = 3 the trimmed run
    // {x, x^3, x^5, x^7; y} is not locally maximal (x^2 y extends it
    // product-freely), so k = 3 widens to {x^3, ..., x^9; y, xy, x^2 y}. For
    // 5k-6 the wide run of 5k-2 is not even product-free (x^{3k-2} x^{3k-4}
    // wraps to x^k), so that family shifts the run down and drops its top.
    let (rotation_exponents, reflection_exponents): (Vec<usize>, Vec<usize>) = match family {
        WitnessFamily::FiveKMinus2 | WitnessFamily::FiveK => {
            ((k..=3 * k - 2).step_by(2).collect(), (0..=k - 1).collect())
        }
        WitnessFamily::FiveKPlus2 if k == 3 => {
            ((k..=3 * k).step_by(2).collect(), (0..=k - 1).collect())
        }
        WitnessFamily::FiveKPlus2 => {
            ((k - 2..=3 * k - 2).step_by(2).collect(), (0..=k - 3).collect())
        }
        WitnessFamily::FiveKMinus4 => {
            ((k - 2..=3 * k - 4).step_by(2).collect(), (0..=k - 3).collect())
        }
        WitnessFamily::FiveKMinus6 => {
            ((k - 2..=3 * k - 6).step_by(2).collect(), (0..=k - 3).collect())
        }
    };
    let excluded_exponent = match family {
        WitnessFamily::FiveKPlus2 if k == 3 => 3 * k + 2,
        WitnessFamily::FiveKMinus6 => 3 * k - 4,
        _ => 3 * k,
    };

    let group = crate::group::build_group(&GroupSpec::Dihedral(2 * n))
        .expect("dihedral groups build for any n")
        .into_group();
    let mut set = group.empty_set();
    for &e in &rotation_exponents {
        set.insert(e);
    }
    for &j in &reflection_exponents {
        set.insert(n + j);
    }
    let excluded = excluded_exponent;

    let report = verify_witness(&group, &set).expect("set built over the same group");
    assert!(report.is_nonfilling_lmpfs(), "family {} at n = {n}: {report:?}", family.describe());
    let covered = set.union(&group.product_set(&set, &set));
    assert!(!covered.contains(excluded), "x^{excluded_exponent} must stay outside S u SS");

    let plan = DihedralWitnessPlan {
        n,
        k,
        family,
        rotation_exponents,
        reflection_exponents,
        excluded_exponent,
    };
    Ok(DihedralWitness { group, set, plan, excluded })
}

#[derive(Debug)]
pub struct D44Witness {
    pub group: FiniteGroup,
    pub set: ElemSet,
    /// Smallest non-identity element missing from S u SS.
    pub excluded: usize,
}

/// The literal seven-element witness in D(44); the dihedral families skip
/// even n, and this set settles n = 22.
pub fn d44_witness() -> D44Witness {
    let group = crate::group::build_group(&GroupSpec::Dihedral(44))
        .expect("D(44) builds")
        .into_group();
    let n = 22;
    let mut set = group.empty_set();
    for e in [2usize, 5, 8, 18, 21] {
        set.insert(e);
    }
    for j in [5usize, 16] {
        set.insert(n + j);
    }

    let report = verify_witness(&group, &set).expect("set built over the same group");
    assert!(report.is_nonfilling_lmpfs(), "literal D(44) set: {report:?}");
    let covered = set.union(&group.product_set(&set, &set));
    let excluded = covered
        .complement()
        .iter()
        .find(|&e| e != 0)
        .expect("a non-filling set misses some non-identity element");
    D44Witness { group, set, excluded }
}

#[derive(Debug)]
pub struct ExtraspecialWitness {
    pub set: ElemSet,
    /// The outer quaternion generator a, provably outside S u SS.
    pub excluded: usize,
}

/// The generator-word witness for an extraspecial group of order >= 512,
/// built from the frame recorded by the constructor. Writing the group as
/// E * Q with Q the last quaternion factor and E everything else, take the
/// order-4 elements of E whose base-K coordinate is 1 or alpha (one of each
/// inverse pair), push them into the Q-coset by a and by b, and anchor with
/// central elements of K.
pub fn extraspecial_witness(frame: &ExtraspecialFrame) -> Result<ExtraspecialWitness, WitnessError> {
    if frame.c4_gen.is_some() {
        return Err(WitnessError::Domain(
            "frame is a central product with C(4); use central_c4_witness".to_string(),
        ));
    }
    let g = &frame.group;
    if g.order() <= 128 {
        return Err(WitnessError::FrameTooSmall(g.order()));
    }
    let words = frame
        .words()
        .ok_or_else(|| WitnessError::Domain("frame lacks normal-form words".to_string()))?;
    let (a, b) = frame.q_gens.expect("order >= 32 frames have an outer factor");
    let (alpha, beta) = frame.k_gens;
    let z = frame.z;

    let mut e_part = g.empty_set();
    for (i, w) in words.iter().enumerate() {
        if w.q == 0 {
            e_part.insert(i);
        }
    }
    let mut u = g.empty_set();
    for i in e_part.iter() {
        if g.elem_order(i) == 4 && words[i].d_alpha < 2 {
            u.insert(i);
        }
    }

    // U picks exactly one of {g, g^-1} from each order-4 pair in E.
    let u_inv = g.inverse_set(&u);
    assert!(u.is_disjoint_from(&u_inv));
    let mut order4_of_e = g.empty_set();
    for i in e_part.iter() {
        if g.elem_order(i) == 4 {
            order4_of_e.insert(i);
        }
    }
    assert_eq!(u.union(&u_inv), order4_of_e);

    let mut set = g.empty_set();
    set.insert(z);
    if frame.k_kind == KKind::D8 {
        set.insert(g.mul(z, beta));
        set.insert(g.mul(z, g.mul(alpha, beta)));
    }
    let x_size = set.len();
    for i in u.iter() {
        set.insert(g.mul(i, a));
        set.insert(g.mul(i, b));
    }
    assert_eq!(set.len(), x_size + 2 * u.len());

    // UUz covers everything in E outside the base K; that coverage is what
    // makes the set locally maximal despite touching only two Q-cosets.
    let uu = g.product_set(&u, &u);
    let mut uuz = g.empty_set();
    for i in uu.iter() {
        uuz.insert(g.mul(i, z));
    }
    let mut k_set = g.empty_set();
    for i in frame.k_elements() {
        k_set.insert(i);
    }
    assert!(e_part.difference(&k_set).is_subset_of(&uuz));

    let report = verify_witness(g, &set).expect("set built over the same group");
    assert!(report.is_nonfilling_lmpfs(), "extraspecial witness: {report:?}");
    let covered = set.union(&g.product_set(&set, &set));
    assert!(!covered.contains(a), "a must stay outside S u SS");

    Ok(ExtraspecialWitness { set, excluded: a })
}

#[derive(Debug)]
pub struct CentralC4Witness {
    pub set: ElemSet,
    /// The order-4 central generator x, provably outside S u SS.
    pub excluded: usize,
    pub seed: u64,
}

/// A seeded greedy witness for a central product E * C(4): every maximal
/// product-free extension of {x^2} consists of involutions and misses x, so
/// a randomized extension is a legitimate witness. The seed is recorded for
/// replay.
pub fn central_c4_witness(
    frame: &ExtraspecialFrame,
    seed: u64,
) -> Result<CentralC4Witness, WitnessError> {
    let x = frame.c4_gen.ok_or(WitnessError::NotCentralProductC4)?;
    let g = &frame.group;
    let z = frame.z;
    debug_assert_eq!(g.mul(x, x), z);

    let set = greedy_maximal_extension(g, &g.singleton_set(z), seed);

    assert!(set.contains(z));
    for i in set.iter() {
        assert_eq!(g.elem_order(i), 2, "witness elements must be involutions");
    }
    let report = verify_witness(g, &set).expect("set built over the same group");
    assert!(report.is_nonfilling_lmpfs(), "central product witness: {report:?}");
    let covered = set.union(&g.product_set(&set, &set));
    assert!(!covered.contains(x), "x must stay outside S u SS");

    Ok(CentralC4Witness { set, excluded: x, seed })
}
