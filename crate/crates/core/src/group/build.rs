//! Building concrete groups from recipes.
//!
//! Cyclic, dihedral, quaternion, and elementary abelian atoms are written
//! down directly. Central products are realized as a quotient of the direct
//! product by the diagonal of the two designated central involutions.
//! Extraspecial groups are assembled as an iterated central product
//! `K ∗ H_1 ∗ … ∗ H_n ∗ Q` where every `H_i` and `Q` is a quaternion group of
//! order 8 and `K` is dihedral or quaternion of order 8; the choice of `K`
//! fixes plus or minus type. Each element of such a group has a unique
//! normal form `d · h_1 ⋯ h_n · q` with `d ∈ K`, `h_i ∈ {1, a_i, b_i, a_i b_i}`,
//! `q ∈ {1, a, b, a b}`, which supplies both the element labels and the frame
//! data used by the witness constructions.

use crate::error::GroupError;
use crate::group::spec::GroupSpec;
use crate::group::table::FiniteGroup;

/// Default cap on built group orders.
pub const DEFAULT_ORDER_CAP: usize = 4096;

/// Whether the order-8 base of an extraspecial frame is dihedral or quaternion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KKind {
    D8,
    Q8,
}

/// Normal-form decomposition of one element of an extraspecial-frame group:
/// `alpha^d_alpha * beta^d_beta * (h-parts) * (q-part)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameWord {
    /// Exponent of `alpha` in the `K` part, `0..4`.
    pub d_alpha: u8,
    /// Whether `beta` occurs in the `K` part.
    pub d_beta: bool,
    /// One code per `H_i` factor: 0 = 1, 1 = `a_i`, 2 = `b_i`, 3 = `a_i*b_i`.
    pub h: Vec<u8>,
    /// Code for the `Q` factor: 0 = 1, 1 = `a`, 2 = `b`, 3 = `a*b`.
    pub q: u8,
}

/// A group built by an extraspecial-family constructor, together with the
/// generators of its structured decomposition.
#[derive(Debug)]
pub struct ExtraspecialFrame {
    pub group: FiniteGroup,
    /// The shared central involution (`alpha^2`).
    pub z: usize,
    /// Generators `(alpha, beta)` of the order-8 base `K`.
    pub k_gens: (usize, usize),
    /// Generators `(a_i, b_i)` of the inner quaternion factors.
    pub h_gens: Vec<(usize, usize)>,
    /// Generators `(a, b)` of the outer quaternion factor, absent for order 8.
    pub q_gens: Option<(usize, usize)>,
    pub k_kind: KKind,
    /// Generator of the cyclic order-4 factor for `ESC4` groups.
    pub c4_gen: Option<usize>,
    /// Normal form of every element, indexed by element; absent for `ESC4`
    /// groups (their extraspecial part of interest is `z` and `c4_gen`).
    words: Option<Vec<FrameWord>>,
}

impl ExtraspecialFrame {
    /// Normal-form table for the group's elements, if recorded.
    pub fn words(&self) -> Option<&[FrameWord]> {
        self.words.as_deref()
    }

    /// The elements of the order-8 base `K`.
    pub fn k_elements(&self) -> Vec<usize> {
        let g = &self.group;
        let (alpha, beta) = self.k_gens;
        let mut out = Vec::with_capacity(8);
        for da in 0..4 {
            for db in 0..2 {
                let mut e = g.pow(alpha, da);
                if db == 1 {
                    e = g.mul(e, beta);
                }
                out.push(e);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Result of building a recipe: a plain group, or a group with frame data
/// when the root constructor is an extraspecial one.
#[derive(Debug)]
pub enum Built {
    Plain(FiniteGroup),
    Framed(ExtraspecialFrame),
}

impl Built {
    pub fn group(&self) -> &FiniteGroup {
        match self {
            Built::Plain(g) => g,
            Built::Framed(f) => &f.group,
        }
    }

    pub fn into_group(self) -> FiniteGroup {
        match self {
            Built::Plain(g) => g,
            Built::Framed(f) => f.group,
        }
    }

    pub fn frame(&self) -> Option<&ExtraspecialFrame> {
        match self {
            Built::Plain(_) => None,
            Built::Framed(f) => Some(f),
        }
    }
}

/// Build a group from a recipe under the default order cap.
pub fn build_group(spec: &GroupSpec) -> Result<Built, GroupError> {
    build_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

/// Build a group from a recipe, rejecting orders above `cap`.
pub fn build_group_with_cap(spec: &GroupSpec, cap: usize) -> Result<Built, GroupError> {
    spec.validate()?;
    let order = spec.order();
    if order > cap {
        return Err(GroupError::OrderCapExceeded { order, cap });
    }
    let node = build_node(spec)?;
    let group = set_spec_string(node.group, spec.to_string());
    match node.frame {
        Some(info) => Ok(Built::Framed(ExtraspecialFrame {
            group,
            z: info.z,
            k_gens: info.k_gens,
            h_gens: info.h_gens,
            q_gens: info.q_gens,
            k_kind: info.k_kind,
            c4_gen: info.c4_gen,
            words: info.words,
        })),
        None => Ok(Built::Plain(group)),
    }
}

fn set_spec_string(g: FiniteGroup, spec_string: String) -> FiniteGroup {
    let order = g.order();
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            table.push(g.mul(a, b) as u16);
        }
    }
    FiniteGroup::from_table(table, g.labels().to_vec(), spec_string)
        .expect("revalidating an already-valid table")
}

struct FrameInfo {
    z: usize,
    k_gens: (usize, usize),
    h_gens: Vec<(usize, usize)>,
    q_gens: Option<(usize, usize)>,
    k_kind: KKind,
    c4_gen: Option<usize>,
    words: Option<Vec<FrameWord>>,
}

struct Node {
    group: FiniteGroup,
    /// Central involution identified by enclosing central products.
    designated: Option<usize>,
    frame: Option<FrameInfo>,
}

fn build_node(spec: &GroupSpec) -> Result<Node, GroupError> {
    match spec {
        GroupSpec::Cyclic(n) => Ok(cyclic_node(*n)),
        GroupSpec::Dihedral(n) => Ok(dihedral_node(*n / 2)),
        GroupSpec::Quaternion(n) => Ok(quaternion_node(*n)),
        GroupSpec::ElementaryAbelian(n) => Ok(elementary_abelian_node(*n)),
        GroupSpec::ExtraspecialPlus(n) => extraspecial_node(*n, false),
        GroupSpec::ExtraspecialMinus(n) => extraspecial_node(*n, true),
        GroupSpec::ExtraspecialC4(n) => extraspecial_c4_node(*n),
        GroupSpec::Direct(a, b) => {
            let left = build_node(a)?;
            let right = build_node(b)?;
            let nb = right.group.order();
            let group = direct_product(&left.group, &right.group)?;
            // An enclosing central product uses the left factor's designated
            // involution when it has one, otherwise the right factor's.
            let designated = left
                .designated
                .map(|z| z * nb)
                .or(right.designated);
            Ok(Node { group, designated, frame: None })
        }
        GroupSpec::Central(a, b) => {
            let left = build_node(a)?;
            let right = build_node(b)?;
            let za = left.designated.ok_or_else(|| {
                GroupError::SpecDomain(format!(
                    "{a} has no designated central involution for a central product"
                ))
            })?;
            let zb = right.designated.ok_or_else(|| {
                GroupError::SpecDomain(format!(
                    "{b} has no designated central involution for a central product"
                ))
            })?;
            let (group, map) = central_product(&left.group, &right.group, za, zb)?;
            let nb = right.group.order();
            let designated = Some(map[za * nb]);
            Ok(Node { group, designated, frame: None })
        }
    }
}

fn cyclic_node(n: usize) -> Node {
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u16;
        }
    }
    let labels = (0..n).map(|i| power_label("x", i)).collect();
    let group = FiniteGroup::from_table(table, labels, format!("C({n})")).unwrap();
    let designated = (n.is_multiple_of(2) && n > 1).then_some(n / 2);
    Node { group, designated, frame: None }
}

/// Dihedral group with `n` rotations: indices `0..n` are `x^a`, indices
/// `n..2n` are the reflections `x^a*y`.
fn dihedral_node(n: usize) -> Node {
    let m = 2 * n;
    let mut table = vec![0u16; m * m];
    let idx = |a: usize, r: bool| if r { n + a } else { a };
    for a1 in 0..n {
        for r1 in [false, true] {
            for a2 in 0..n {
                for r2 in [false, true] {
                    let e = if r1 { (a1 + n - a2) % n } else { (a1 + a2) % n };
                    table[idx(a1, r1) * m + idx(a2, r2)] = idx(e, r1 ^ r2) as u16;
                }
            }
        }
    }
    let mut labels: Vec<String> = (0..n).map(|i| power_label("x", i)).collect();
    labels.extend((0..n).map(reflection_label));
    let group = FiniteGroup::from_table(table, labels, format!("D({m})")).unwrap();
    let designated = n.is_multiple_of(2).then_some(n / 2);
    Node { group, designated, frame: None }
}

/// Generalized quaternion group of order `m = 4k`: `x` of order `2k`,
/// `y^2 = x^k`, `y x y^{-1} = x^{-1}`. Indices `0..2k` are `x^a`, indices
/// `2k..4k` are `x^a*y`.
fn quaternion_node(m: usize) -> Node {
    let nn = m / 2;
    let half = m / 4;
    let mut table = vec![0u16; m * m];
    let idx = |a: usize, r: bool| if r { nn + a } else { a };
    for a1 in 0..nn {
        for r1 in [false, true] {
            for a2 in 0..nn {
                for r2 in [false, true] {
                    let mut e = if r1 { (a1 + nn - a2) % nn } else { (a1 + a2) % nn };
                    if r1 && r2 {
                        e = (e + half) % nn;
                    }
                    table[idx(a1, r1) * m + idx(a2, r2)] = idx(e, r1 ^ r2) as u16;
                }
            }
        }
    }
    let mut labels: Vec<String> = (0..nn).map(|i| power_label("x", i)).collect();
    labels.extend((0..nn).map(reflection_label));
    let group = FiniteGroup::from_table(table, labels, format!("Q({m})")).unwrap();
    Node { group, designated: Some(half), frame: None }
}

const EA_GENERATOR_NAMES: [&str; 12] = [
    "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l",
];

fn elementary_abelian_node(n: usize) -> Node {
    let k = n.trailing_zeros() as usize;
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = (a ^ b) as u16;
        }
    }
    let labels = (0..n)
        .map(|mask: usize| {
            if mask == 0 {
                "1".to_string()
            } else {
                (0..k)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| EA_GENERATOR_NAMES[i])
                    .collect::<Vec<_>>()
                    .join("*")
            }
        })
        .collect();
    let group = FiniteGroup::from_table(table, labels, format!("EA({n})")).unwrap();
    Node { group, designated: Some(1), frame: None }
}

fn power_label(gen: &str, e: usize) -> String {
    match e {
        0 => "1".to_string(),
        1 => gen.to_string(),
        _ => format!("{gen}^{e}"),
    }
}

fn reflection_label(e: usize) -> String {
    match e {
        0 => "y".to_string(),
        1 => "x*y".to_string(),
        _ => format!("x^{e}*y"),
    }
}

/// Direct product with tuple labels.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![0u16; n * n];
    for a1 in 0..na {
        for b1 in 0..nb {
            let i1 = a1 * nb + b1;
            for a2 in 0..na {
                let pa = a.mul(a1, a2) * nb;
                for b2 in 0..nb {
                    table[i1 * n + (a2 * nb + b2)] = (pa + b.mul(b1, b2)) as u16;
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(n);
    for a1 in 0..na {
        for b1 in 0..nb {
            labels.push(format!("({},{})", a.label(a1), b.label(b1)));
        }
    }
    FiniteGroup::from_table(table, labels, format!("{}x{}", a.spec_string(), b.spec_string()))
}

/// Central product: quotient of `a × b` by `{(1,1), (za, zb)}`. Returns the
/// quotient and the map from direct-product indices to quotient indices.
pub fn central_product(
    a: &FiniteGroup,
    b: &FiniteGroup,
    za: usize,
    zb: usize,
) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
    for (g, z, side) in [(a, za, "left"), (b, zb, "right")] {
        if z == 0 || g.elem_order(z) != 2 {
            return Err(GroupError::SpecDomain(format!(
                "{side} operand's designated element is not an involution"
            )));
        }
        if (0..g.order()).any(|h| g.mul(z, h) != g.mul(h, z)) {
            return Err(GroupError::SpecDomain(format!(
                "{side} operand's designated involution is not central"
            )));
        }
    }
    let prod = direct_product(a, b)?;
    let mut n_set = crate::pfs::ElemSet::empty(&prod);
    n_set.insert(0);
    n_set.insert(za * b.order() + zb);
    prod.quotient_with_map(&n_set)
}

/// Count of order-8 factors in the extraspecial normal form for a given order.
fn es_factor_count(order: usize) -> usize {
    // order = 2^(2m+1) with m factors.
    (order.trailing_zeros() as usize - 1) / 2
}

fn extraspecial_node(order: usize, minus: bool) -> Result<Node, GroupError> {
    let m = es_factor_count(order);
    // The number of quaternion factors in `K ∗ H_1 ∗ … ∗ H_(m-2) ∗ Q` is
    // `m - 1` plus one if `K` is quaternion; minus type needs it odd.
    let k_kind = match (m % 2 == 1, minus) {
        (true, false) | (false, true) => KKind::D8,
        (true, true) | (false, false) => KKind::Q8,
    };
    let base = match k_kind {
        KKind::D8 => dihedral_node(4).group,
        KKind::Q8 => quaternion_node(8).group,
    };
    // In both order-8 atoms index 1 is `x` (alpha) and index `nn` is `y`
    // (beta); their common central involution is `x^2` at index 2.
    let mut group = base;
    let mut gens: Vec<usize> = vec![1, group.order() / 2];
    let mut z = 2usize;
    for _ in 1..m {
        let q8 = quaternion_node(8).group;
        let (next, map) = central_product(&group, &q8, z, 2)?;
        let nb = q8.order();
        for g in gens.iter_mut() {
            *g = map[*g * nb];
        }
        gens.push(map[1]); // (1, x)
        gens.push(map[4]); // (1, y)
        z = map[z * nb];
        group = next;
    }
    let k_gens = (gens[0], gens[1]);
    let mut pair_gens: Vec<(usize, usize)> = gens[2..]
        .chunks(2)
        .map(|c| (c[0], c[1]))
        .collect();
    let q_gens = pair_gens.pop();
    let h_gens = pair_gens;
    let words = relabel_extraspecial(&mut group, z, k_gens, &h_gens, q_gens, k_kind)?;
    validate_frame(&group, z, k_gens, &h_gens, q_gens, k_kind);
    Ok(Node {
        group,
        designated: Some(z),
        frame: Some(FrameInfo {
            z,
            k_gens,
            h_gens,
            q_gens,
            k_kind,
            c4_gen: None,
            words: Some(words),
        }),
    })
}

/// Enumerate all normal forms `d · h_1 ⋯ h_n · q`, check they hit every
/// element exactly once, and install the corresponding labels.
fn relabel_extraspecial(
    group: &mut FiniteGroup,
    z: usize,
    k_gens: (usize, usize),
    h_gens: &[(usize, usize)],
    q_gens: Option<(usize, usize)>,
    _k_kind: KKind,
) -> Result<Vec<FrameWord>, GroupError> {
    let n = group.order();
    let (alpha, beta) = k_gens;
    let mut words: Vec<Option<FrameWord>> = vec![None; n];
    let mut labels = vec![String::new(); n];
    let hn = h_gens.len();
    let mut h_codes = vec![0u8; hn];
    loop {
        for q_code in 0..if q_gens.is_some() { 4u8 } else { 1u8 } {
            for da in 0..4u8 {
                for db in [false, true] {
                    let mut e = group.pow(alpha, da as usize);
                    if db {
                        e = group.mul(e, beta);
                    }
                    for (i, &(ai, bi)) in h_gens.iter().enumerate() {
                        e = group.mul(e, pair_power(group, ai, bi, h_codes[i]));
                    }
                    if let Some((a, b)) = q_gens {
                        e = group.mul(e, pair_power(group, a, b, q_code));
                    }
                    if words[e].is_some() {
                        return Err(GroupError::BadTable(
                            "normal forms collide in extraspecial construction".to_string(),
                        ));
                    }
                    let word = FrameWord { d_alpha: da, d_beta: db, h: h_codes.clone(), q: q_code };
                    labels[e] = frame_word_label(&word);
                    words[e] = Some(word);
                }
            }
        }
        // Advance the mixed-radix h-codes.
        let mut i = 0;
        loop {
            if i == hn {
                let words: Vec<FrameWord> = words
                    .into_iter()
                    .collect::<Option<_>>()
                    .ok_or_else(|| {
                        GroupError::BadTable(
                            "normal forms miss elements in extraspecial construction".to_string(),
                        )
                    })?;
                debug_assert_eq!(labels[0], "1");
                debug_assert_eq!(group.mul(alpha, alpha), z);
                group.replace_labels(labels);
                return Ok(words);
            }
            h_codes[i] += 1;
            if h_codes[i] < 4 {
                break;
            }
            h_codes[i] = 0;
            i += 1;
        }
    }
}

fn pair_power(g: &FiniteGroup, a: usize, b: usize, code: u8) -> usize {
    match code {
        0 => 0,
        1 => a,
        2 => b,
        _ => g.mul(a, b),
    }
}

fn frame_word_label(w: &FrameWord) -> String {
    let mut parts: Vec<String> = Vec::new();
    match (w.d_alpha, w.d_beta) {
        (0, false) => {}
        (1, false) => parts.push("alpha".into()),
        (2, false) => parts.push("z".into()),
        (_, false) => {
            parts.push("z".into());
            parts.push("alpha".into());
        }
        (0, true) => parts.push("beta".into()),
        (1, true) => {
            parts.push("alpha".into());
            parts.push("beta".into());
        }
        (2, true) => {
            parts.push("z".into());
            parts.push("beta".into());
        }
        (_, true) => {
            parts.push("z".into());
            parts.push("alpha".into());
            parts.push("beta".into());
        }
    }
    for (i, &code) in w.h.iter().enumerate() {
        let (a, b) = (format!("a{}", i + 1), format!("b{}", i + 1));
        match code {
            0 => {}
            1 => parts.push(a),
            2 => parts.push(b),
            _ => {
                parts.push(a);
                parts.push(b);
            }
        }
    }
    match w.q {
        0 => {}
        1 => parts.push("a".into()),
        2 => parts.push("b".into()),
        _ => {
            parts.push("a".into());
            parts.push("b".into());
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn validate_frame(
    g: &FiniteGroup,
    z: usize,
    k_gens: (usize, usize),
    h_gens: &[(usize, usize)],
    q_gens: Option<(usize, usize)>,
    k_kind: KKind,
) {
    let (alpha, beta) = k_gens;
    assert_eq!(g.elem_order(alpha), 4);
    assert_eq!(g.mul(alpha, alpha), z);
    assert_eq!(g.elem_order(z), 2);
    // beta alpha = alpha^{-1} beta
    assert_eq!(g.mul(beta, alpha), g.mul(g.inv(alpha), beta));
    match k_kind {
        KKind::D8 => assert_eq!(g.elem_order(beta), 2),
        KKind::Q8 => assert_eq!(g.mul(beta, beta), z),
    }
    let mut quaternion_pairs: Vec<(usize, usize)> = h_gens.to_vec();
    quaternion_pairs.extend(q_gens);
    for (a, b) in quaternion_pairs {
        assert_eq!(g.mul(a, a), z);
        assert_eq!(g.mul(b, b), z);
        assert_eq!(g.mul(b, a), g.mul(g.inv(a), b));
    }
    // Distinct factors commute generator-wise.
    let mut families: Vec<Vec<usize>> = vec![vec![alpha, beta]];
    families.extend(h_gens.iter().map(|&(a, b)| vec![a, b]));
    families.extend(q_gens.map(|(a, b)| vec![a, b]));
    for i in 0..families.len() {
        for j in i + 1..families.len() {
            for &u in &families[i] {
                for &v in &families[j] {
                    assert_eq!(g.mul(u, v), g.mul(v, u));
                }
            }
        }
    }
}

fn extraspecial_c4_node(order: usize) -> Result<Node, GroupError> {
    let es = extraspecial_node(order / 2, false)?;
    let frame = es.frame.expect("extraspecial node carries a frame");
    let e_group = es.group;
    let z_e = frame.z;
    let c4 = cyclic_node(4);
    let x_sq = 2;
    let (mut group, map) = central_product(&e_group, &c4.group, z_e, x_sq)?;
    let nb = 4;
    let remap = |g: usize| map[g * nb];
    let z = remap(z_e);
    let k_gens = (remap(frame.k_gens.0), remap(frame.k_gens.1));
    let h_gens: Vec<(usize, usize)> = frame
        .h_gens
        .iter()
        .map(|&(a, b)| (remap(a), remap(b)))
        .collect();
    let q_gens = frame.q_gens.map(|(a, b)| (remap(a), remap(b)));
    let x = map[1]; // (1, x)
    // Each coset of the identified center contains exactly one pair (e, x^j)
    // with j in {0, 1}; label it by the extraspecial part's word.
    let n = group.order();
    let mut labels: Vec<Option<String>> = vec![None; n];
    for e in 0..e_group.order() {
        for j in 0..2usize {
            let idx = map[e * nb + j];
            let mut label = e_group.label(e).to_string();
            if j == 1 {
                label = if label == "1" { "x".to_string() } else { format!("{label}*x") };
            }
            if labels[idx].is_some() {
                return Err(GroupError::BadTable(
                    "normal forms collide in central product with C(4)".to_string(),
                ));
            }
            labels[idx] = Some(label);
        }
    }
    let labels: Vec<String> = labels
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| GroupError::BadTable("central product with C(4) misses cosets".into()))?;
    group.replace_labels(labels);
    assert_eq!(group.mul(x, x), z);
    validate_frame(&group, z, k_gens, &h_gens, q_gens, frame.k_kind);
    Ok(Node {
        group,
        designated: Some(z),
        frame: Some(FrameInfo {
            z,
            k_gens,
            h_gens,
            q_gens,
            k_kind: frame.k_kind,
            c4_gen: Some(x),
            words: None,
        }),
    })
}
