//! Executable forms of the classification of groups whose intersection graph
//! is disconnected, not 2-connected, or not 3-connected, and an audit that
//! compares them with the computed connectivity.
//!
//! Every predicate returns the first matching case in the classification's
//! own order. Structural conditions are checked directly on the lattice;
//! named exceptions are recognized by explicit isomorphism tests.

use std::fmt;

use serde::Serialize;

use crate::arith::{factorize, is_prime, pow_mod};
use crate::catalog::{by_label, exceptional_p4, exceptional_p4_type_ii, lambda_group};
use crate::error::{Error, Result};
use crate::graph::GroupAnalysis;
use crate::group::{are_isomorphic_with_budget, FiniteGroup};
use crate::lattice::{center, is_nilpotent, is_solvable, is_supersolvable, normalizer, Subgroup, SubgroupLattice};
use crate::limits::Limits;

/// Shapes of groups with a disconnected intersection graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseA {
    /// `ℤ_p × ℤ_p` or `ℤ_p × ℤ_q`.
    #[serde(rename = "1")]
    One,
    /// `N ⋊ A` with `N` minimal normal elementary abelian, `|A| = q` prime,
    /// `q ∤ |N|` and `N_G(A) = A`.
    #[serde(rename = "2")]
    Two,
}

/// Shapes of solvable groups with `κ < 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseB {
    /// `|G| = p^α`, `α ≤ 2`.
    #[serde(rename = "1")]
    One,
    /// `|G| = p³`, neither `Q₈` nor elementary abelian.
    #[serde(rename = "2")]
    Two,
    /// `|G| = pq` for distinct primes.
    #[serde(rename = "pq")]
    Pq,
    /// `|G| = p²q` with cyclic Sylow `p`-subgroup.
    #[serde(rename = "3a")]
    ThreeA,
    /// `|G| = p²q` with normal Sylow `P ≅ ℤ_p × ℤ_p` and a non-normal subgroup of order `p`.
    #[serde(rename = "3b")]
    ThreeB,
    /// `|G| = p^α q`, `α ≥ 3`, `P` normal elementary abelian, `Q` irreducible on `P`, `|N_G(Q)| ≤ pq`.
    #[serde(rename = "4a")]
    FourA,
    /// `|G| = p^α q`, `α ≥ 3`, `N = Φ(P)` elementary abelian, `Q` irreducible on `N` and `P/N`,
    /// and `N_G(Q) = Q` or `N_G(Q) = NQ ≅ ℤ_p × ℤ_q`.
    #[serde(rename = "4b")]
    FourB,
}

/// Shapes of nilpotent groups with `κ < 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseC {
    /// `|G| = p^α`, `α ≤ 3`, neither `Q₈` nor `ℤ_p³` elementary abelian.
    #[serde(rename = "1")]
    One,
    /// `|G| = pq` for distinct primes.
    #[serde(rename = "pq")]
    Pq,
    /// `|G| = p⁴`, cyclic.
    #[serde(rename = "2a")]
    TwoA,
    /// `|G| = p⁴`, `Φ(G) ≅ ℤ_{p²}`, not `Q₁₆`.
    #[serde(rename = "2b")]
    TwoB,
    /// `|G| = p⁴`, `Φ(G) ≅ ℤ_p × ℤ_p`, `Z(G) < Φ(G)`, not one of the two exceptional presentations.
    #[serde(rename = "2c")]
    TwoC,
    /// `ℤ_{p³q}`, `ℤ_{p²q}`, `(ℤ_p × ℤ_p) × ℤ_q` or `ℤ_{pqr}`.
    #[serde(rename = "3")]
    Three,
}

macro_rules! tag_display {
    ($ty:ty) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let v = serde_json::to_value(self).map_err(|_| fmt::Error)?;
                f.write_str(v.as_str().ok_or(fmt::Error)?)
            }
        }
    };
}

tag_display!(CaseA);
tag_display!(CaseB);
tag_display!(CaseC);

fn subgroup_is_abelian(g: &FiniteGroup, s: &Subgroup) -> bool {
    let gens = s.generators();
    gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

fn is_elementary_abelian(g: &FiniteGroup, s: &Subgroup) -> bool {
    let f = factorize(s.order());
    if f.len() != 1 {
        return false;
    }
    let p = f[0].0;
    subgroup_is_abelian(g, s) && s.members().iter().all(|x| g.element_order(x) <= p)
}

fn is_cyclic_subgroup(g: &FiniteGroup, s: &Subgroup) -> bool {
    s.members().iter().any(|x| g.element_order(x) == s.order())
}

fn isomorphic(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    Ok(are_isomorphic_with_budget(g, h, limits.iso_budget)?.is_some())
}

fn isomorphic_to_label(g: &FiniteGroup, label: &str, limits: &Limits) -> Result<bool> {
    isomorphic(g, &by_label(label, limits)?, limits)
}

/// Whether some subgroup strictly between `lower` and `upper` (lattice
/// indices) is normalized by `x`.
fn invariant_between(g: &FiniteGroup, l: &SubgroupLattice, lower: usize, upper: usize, x: usize) -> bool {
    l.strict_subgroups(upper)
        .iter()
        .any(|&j| j != lower && l.is_contained(lower, j) && l.get(j).is_normalized_by(g, x))
}

/// Intersection of the maximal subgroups of `P` (lattice index `p_idx`),
/// a `p`-group.
fn frattini_of(g: &FiniteGroup, l: &SubgroupLattice, p_idx: usize, p: usize) -> Subgroup {
    let target = l.get(p_idx).order() / p;
    let mut members = l.get(p_idx).members().clone();
    for &j in l.strict_subgroups(p_idx) {
        if l.get(j).order() == target {
            members.intersect_with(l.get(j).members());
        }
    }
    Subgroup::from_members(g, members).expect("intersection of subgroups is a subgroup")
}

/// True when `G` has a proper non-trivial normal subgroup.
pub fn has_proper_normal(g: &FiniteGroup, l: &SubgroupLattice) -> bool {
    l.normal_indices(g).into_iter().any(|i| l.is_proper_nontrivial(i))
}

/// Case of a non-simple group of non-prime order whose intersection graph is
/// disconnected, or `None` when it is connected according to the classification.
pub fn disconnected_case(g: &FiniteGroup, l: &SubgroupLattice) -> Result<Option<CaseA>> {
    let n = g.order();
    if n == 1 || is_prime(n) || !has_proper_normal(g, l) {
        return Err(Error::Precondition("expected a non-simple group of composite order".into()));
    }
    let f = factorize(n);
    let square_of_prime = f.len() == 1 && f[0].1 == 2 && !g.is_cyclic();
    let two_primes = f.len() == 2 && f.iter().all(|&(_, e)| e == 1) && g.is_abelian();
    if square_of_prime || two_primes {
        return Ok(Some(CaseA::One));
    }
    let normals = l.normal_indices(g);
    for &i in &normals {
        if !l.is_proper_nontrivial(i) {
            continue;
        }
        let nsub = l.get(i);
        let q = n / nsub.order();
        if !is_prime(q) || nsub.order().is_multiple_of(q) || !is_elementary_abelian(g, nsub) {
            continue;
        }
        let minimal = !normals
            .iter()
            .any(|&j| j != i && l.is_proper_nontrivial(j) && l.is_contained(j, i));
        if !minimal {
            continue;
        }
        // complements of order q are Sylow, hence conjugate: one suffices
        let a = (0..l.len()).find(|&j| l.get(j).order() == q).expect("Cauchy");
        if normalizer(g, l.get(a))?.order() == q {
            return Ok(Some(CaseA::Two));
        }
    }
    Ok(None)
}

fn is_q8(g: &FiniteGroup, limits: &Limits) -> Result<bool> {
    if g.order() != 8 || g.is_abelian() {
        return Ok(false);
    }
    isomorphic_to_label(g, "Q8", limits)
}

fn whole_is_elementary(g: &FiniteGroup) -> bool {
    g.is_abelian() && {
        let f = factorize(g.order());
        f.len() == 1 && g.elements().all(|x| g.element_order(x) <= f[0].0)
    }
}

/// Case of a solvable group with `κ < 2`, or `None`.
pub fn below_two_case(g: &FiniteGroup, l: &SubgroupLattice, limits: &Limits) -> Result<Option<CaseB>> {
    if !is_solvable(g, limits) {
        return Err(Error::Precondition("expected a solvable group".into()));
    }
    let n = g.order();
    let f = factorize(n);
    match f.as_slice() {
        [] => return Ok(Some(CaseB::One)),
        [(_, a)] if *a <= 2 => return Ok(Some(CaseB::One)),
        [(_, 3)] => {
            let exc = is_q8(g, limits)? || whole_is_elementary(g);
            return Ok((!exc).then_some(CaseB::Two));
        }
        [(_, 1), (_, 1)] => return Ok(Some(CaseB::Pq)),
        [_, _] => {}
        _ => return Ok(None),
    }
    let (p, alpha, q) = match f.as_slice() {
        [(p, a), (q, 1)] | [(q, 1), (p, a)] => (*p, *a, *q),
        _ => return Ok(None),
    };
    let p_order = p.pow(alpha);
    let sylows: Vec<usize> = (0..l.len()).filter(|&i| l.get(i).order() == p_order).collect();
    let p_idx = sylows[0];
    let p_normal = sylows.len() == 1;
    let psub = l.get(p_idx);

    if alpha == 2 {
        if is_cyclic_subgroup(g, psub) {
            return Ok(Some(CaseB::ThreeA));
        }
        if p_normal {
            let normals = l.normal_indices(g);
            let non_normal_p = (0..l.len()).any(|i| l.get(i).order() == p && !normals.contains(&i));
            if non_normal_p {
                return Ok(Some(CaseB::ThreeB));
            }
        }
        return Ok(None);
    }

    if !p_normal {
        return Ok(None);
    }
    let q_idx = (0..l.len()).find(|&i| l.get(i).order() == q).expect("Cauchy");
    let qsub = l.get(q_idx);
    let y = qsub.generators()[0];
    let trivial = l.trivial_index();
    let ng = normalizer(g, qsub)?;

    if is_elementary_abelian(g, psub) && !invariant_between(g, l, trivial, p_idx, y) && ng.order() <= p * q {
        return Ok(Some(CaseB::FourA));
    }

    let nsub = frattini_of(g, l, p_idx, p);
    if nsub.order() == 1 || !is_elementary_abelian(g, &nsub) {
        return Ok(None);
    }
    let n_idx = l.index_of(nsub.members()).expect("lattice holds every subgroup");
    let irreducible_n = !invariant_between(g, l, trivial, n_idx, y);
    let irreducible_quotient = !invariant_between(g, l, n_idx, p_idx, y);
    if !irreducible_n || !irreducible_quotient {
        return Ok(None);
    }
    let self_normalizing = ng.order() == q;
    let nq_cyclic = nsub.order() == p
        && ng.order() == p * q
        && nsub.is_subgroup_of(&ng)
        && subgroup_is_abelian(g, &ng);
    if self_normalizing || nq_cyclic {
        if nsub.order() > p {
            log::warn!(
                "order {n}: case 4(b) holds with |Φ(P)| = {} > p = {p}",
                nsub.order()
            );
        }
        return Ok(Some(CaseB::FourB));
    }
    Ok(None)
}

/// Case of a nilpotent group with `κ < 3`, or `None`.
pub fn below_three_case(g: &FiniteGroup, l: &SubgroupLattice, limits: &Limits) -> Result<Option<CaseC>> {
    if !is_nilpotent(g) {
        return Err(Error::Precondition("expected a nilpotent group".into()));
    }
    let f = factorize(g.order());
    match f.as_slice() {
        [] => Ok(Some(CaseC::One)),
        [(_, a)] if *a <= 2 => Ok(Some(CaseC::One)),
        [(_, 3)] => {
            let exc = is_q8(g, limits)? || whole_is_elementary(g);
            Ok((!exc).then_some(CaseC::One))
        }
        [(p, 4)] => {
            let p = *p;
            if g.is_cyclic() {
                return Ok(Some(CaseC::TwoA));
            }
            let phi = l.frattini(g);
            if phi.order() != p * p {
                return Ok(None);
            }
            if is_cyclic_subgroup(g, &phi) {
                let q16 = p == 2 && isomorphic_to_label(g, "Q16", limits)?;
                return Ok((!q16).then_some(CaseC::TwoB));
            }
            let z = center(g);
            if !(z.is_subgroup_of(&phi) && z.order() < phi.order()) {
                return Ok(None);
            }
            let exceptional = match p {
                3 => isomorphic(g, &exceptional_p4(3, 1, 0, -1, limits)?, limits)?,
                p if p > 3 => isomorphic(g, &exceptional_p4_type_ii(p, limits)?, limits)?,
                _ => false,
            };
            Ok((!exceptional).then_some(CaseC::TwoC))
        }
        [(_, 1), (_, 1)] => Ok(Some(CaseC::Pq)),
        // nilpotent of order p²q is P × Q with P abelian: ℤ_{p²q} or (ℤ_p × ℤ_p) × ℤ_q
        [(_, 2), (_, 1)] | [(_, 1), (_, 2)] => Ok(Some(CaseC::Three)),
        [(_, 3), (_, 1)] | [(_, 1), (_, 3)] => Ok(g.is_cyclic().then_some(CaseC::Three)),
        // nilpotent of square-free order is cyclic
        [(_, 1), (_, 1), (_, 1)] => Ok(Some(CaseC::Three)),
        _ => Ok(None),
    }
}

/// For abelian `G`: whether `G` is `ℤ_{p³}`, `ℤ_{p²} × ℤ_p` or `ℤ_{p²} × ℤ_q`,
/// the abelian groups whose intersection graph has a cut vertex.
pub fn abelian_cut_vertex_case(g: &FiniteGroup, limits: &Limits) -> Result<bool> {
    if !g.is_abelian() {
        return Err(Error::Precondition("expected an abelian group".into()));
    }
    let cyc = FiniteGroup::cyclic;
    let candidates = match factorize(g.order()).as_slice() {
        [(p, 3)] => vec![cyc(p * p * p), FiniteGroup::direct_product(&cyc(p * p), &cyc(*p), limits)?],
        [(p, 2), (q, 1)] | [(q, 1), (p, 2)] => vec![cyc(p * p * q)],
        _ => Vec::new(),
    };
    for h in &candidates {
        if isomorphic(g, h, limits)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// For `|G| = p²q`: whether `G ≅ (ℤ_p × ℤ_p) ⋊ ℤ_q` with scalar action by some
/// `λ > 1`, `λ^q ≡ 1 (mod p)`, the only 3-connected shape of that order.
pub fn p2q_3connected_case(g: &FiniteGroup, limits: &Limits) -> Result<bool> {
    let (p, q) = match factorize(g.order()).as_slice() {
        [(p, 2), (q, 1)] | [(q, 1), (p, 2)] => (*p, *q),
        _ => return Err(Error::Precondition(format!("order {} is not of the form p²q", g.order()))),
    };
    for lambda in 2..p {
        if pow_mod(lambda as u64, q as u64, p as u64) == 1 && isomorphic(g, &lambda_group(p, q, lambda, limits)?, limits)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Connectivity predicted by the classification, each part present only when
/// its hypothesis applies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KappaBand {
    pub connected: Option<bool>,
    pub two_connected: Option<bool>,
    pub three_connected: Option<bool>,
}

pub fn predicted_kappa_band(g: &FiniteGroup, l: &SubgroupLattice, limits: &Limits) -> Result<KappaBand> {
    let n = g.order();
    let primes = factorize(n).len();
    let mut band = KappaBand::default();
    if n > 1 && !is_prime(n) && has_proper_normal(g, l) {
        band.connected = Some(disconnected_case(g, l)?.is_none());
    }
    if is_solvable(g, limits) {
        band.two_connected = Some(primes >= 3 || below_two_case(g, l, limits)?.is_none());
        if primes >= 4 {
            band.three_connected = Some(true);
        }
    }
    if band.three_connected.is_none() && is_nilpotent(g) {
        band.three_connected = Some(below_three_case(g, l, limits)?.is_none());
    }
    Ok(band)
}

/// Computed connectivity next to the classification's prediction.
///
/// `agree_*` is `None` when the corresponding hypothesis (non-simple of
/// composite order, solvable, nilpotent) does not hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub label: String,
    pub order: usize,
    pub solvable: bool,
    pub nilpotent: bool,
    pub supersolvable: bool,
    pub has_proper_normal: bool,
    pub kappa: i64,
    pub vertices: usize,
    pub components: usize,
    pub case_a: Option<CaseA>,
    pub case_b: Option<CaseB>,
    pub case_c: Option<CaseC>,
    pub agree_a: Option<bool>,
    pub agree_b: Option<bool>,
    pub agree_c: Option<bool>,
    pub band: KappaBand,
}

/// Header of the CSV report; the first line of every CSV file is [`CSV_VERSION`].
pub const CSV_HEADER: [&str; 11] = [
    "label", "order", "solvable", "nilpotent", "kappa", "caseA", "caseB", "caseC", "agreeA", "agreeB", "agreeC",
];

pub const CSV_VERSION: &str = "#v1";

impl ClassificationReport {
    /// False when some applicable prediction contradicts the computation.
    pub fn agrees(&self) -> bool {
        self.disagreements().is_empty()
    }

    /// Names of the statements ("A", "B", "C") that disagree.
    pub fn disagreements(&self) -> Vec<&'static str> {
        [("A", self.agree_a), ("B", self.agree_b), ("C", self.agree_c)]
            .into_iter()
            .filter(|(_, a)| *a == Some(false))
            .map(|(n, _)| n)
            .collect()
    }

    /// One CSV row in [`CSV_HEADER`] order. Inapplicable columns read `n/a`,
    /// applicable ones without a matching case read `none`.
    pub fn csv_record(&self) -> Vec<String> {
        fn case<T: fmt::Display>(c: &Option<T>, agree: Option<bool>) -> String {
            match (c, agree) {
                (_, None) => "n/a".into(),
                (Some(c), _) => c.to_string(),
                (None, _) => "none".into(),
            }
        }
        fn flag(a: Option<bool>) -> String {
            a.map_or_else(|| "n/a".into(), |b| b.to_string())
        }
        vec![
            self.label.clone(),
            self.order.to_string(),
            self.solvable.to_string(),
            self.nilpotent.to_string(),
            self.kappa.to_string(),
            case(&self.case_a, self.agree_a),
            case(&self.case_b, self.agree_b),
            case(&self.case_c, self.agree_c),
            flag(self.agree_a),
            flag(self.agree_b),
            flag(self.agree_c),
        ]
    }
}

/// Builds the lattice and graph of `g`, computes `κ`, and compares it with
/// every applicable prediction.
pub fn audit(g: FiniteGroup, limits: &Limits) -> Result<ClassificationReport> {
    audit_analysis(&GroupAnalysis::new(g, limits)?, limits)
}

pub fn audit_analysis(a: &GroupAnalysis, limits: &Limits) -> Result<ClassificationReport> {
    let g = &a.group;
    let l = &a.lattice;
    let n = g.order();
    let solvable = is_solvable(g, limits);
    let nilpotent = is_nilpotent(g);
    let proper_normal = has_proper_normal(g, l);
    let kappa = a.kappa.0;
    let components = a.graph.connected_components().len();

    let (case_a, agree_a) = if n > 1 && !is_prime(n) && proper_normal {
        let c = disconnected_case(g, l)?;
        (c, Some((components > 1) == c.is_some()))
    } else {
        (None, None)
    };
    let (case_b, agree_b) = if solvable {
        let c = below_two_case(g, l, limits)?;
        (c, Some((kappa < 2) == c.is_some()))
    } else {
        (None, None)
    };
    let (case_c, agree_c) = if nilpotent {
        let c = below_three_case(g, l, limits)?;
        (c, Some((kappa < 3) == c.is_some()))
    } else {
        (None, None)
    };

    Ok(ClassificationReport {
        label: g.label().unwrap_or("").to_string(),
        order: n,
        solvable,
        nilpotent,
        supersolvable: is_supersolvable(g, limits),
        has_proper_normal: proper_normal,
        kappa,
        vertices: a.graph.vertex_count(),
        components,
        case_a,
        case_b,
        case_c,
        agree_a,
        agree_b,
        agree_c,
        band: predicted_kappa_band(g, l, limits)?,
    })
}
