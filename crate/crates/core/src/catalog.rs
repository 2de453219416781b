//! Named group families and external table ingestion.
//!
//! Every entry has a label, a constructor with integer parameters, and an
//! expected order that is checked when the group is built. The manifest format
//! is one entry per line: `label kind param...`, e.g. `F20 metacyclic 5 4 2`.

use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::group::{cyclic_action, extend_homomorphism, Element, FiniteGroup, Permutation};
use crate::limits::Limits;
use crate::presentation::{todd_coxeter, todd_coxeter_with_generators, Presentation};

/// How a catalog group is constructed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    Cyclic(usize),
    /// Direct product of cyclic groups of the given orders.
    Abelian(Vec<usize>),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
    /// Generalized quaternion group of the given order (a power of two ≥ 8).
    Quaternion(usize),
    /// Upper unitriangular `3×3` matrices over `F_p`, `p` odd.
    Heisenberg(usize),
    /// `ℤ_n ⋊ ℤ_m` with the generator of `ℤ_m` acting as `x ↦ r·x`.
    Metacyclic { n: usize, m: usize, r: usize },
    Symmetric(usize),
    Alternating(usize),
    /// `F_p^d ⋊ ℤ_q` where `ℤ_q` is generated by the companion matrix of the
    /// monic polynomial `x^d + c_{d-1}x^{d-1} + … + c_0`; `q` is its order.
    Frobenius { p: usize, coeffs: Vec<usize> },
    /// `(ℤ_p × ℤ_p) ⋊ ℤ_q` with scalar action by `λ`.
    Lambda { p: usize, q: usize, lambda: usize },
    /// The order-`p⁴` presentation with parameters `(k, m, n)`.
    ExceptionalP4 { p: usize, k: i64, m: i64, n: i64 },
    /// The second order-`p⁴` presentation, `p > 3`.
    ExceptionalP4TypeII(usize),
    /// `Q₈ ⋊ ℤ₃` with the automorphism cycling `i → j → k`.
    QuaternionByThree,
    /// `ℤ₃ ≀ ℤ₃` as a permutation group on nine points.
    Wreath33,
    /// Direct product of two other catalog entries, by label.
    Product(String, String),
}

impl Family {
    fn kind(&self) -> &'static str {
        match self {
            Family::Cyclic(_) => "cyclic",
            Family::Abelian(_) => "abelian",
            Family::Dihedral(_) => "dihedral",
            Family::Quaternion(_) => "quaternion",
            Family::Heisenberg(_) => "heisenberg",
            Family::Metacyclic { .. } => "metacyclic",
            Family::Symmetric(_) => "symmetric",
            Family::Alternating(_) => "alternating",
            Family::Frobenius { .. } => "frobenius",
            Family::Lambda { .. } => "lambda",
            Family::ExceptionalP4 { .. } => "p4",
            Family::ExceptionalP4TypeII(_) => "p4ii",
            Family::QuaternionByThree => "q8z3",
            Family::Wreath33 => "wreath33",
            Family::Product(..) => "product",
        }
    }

    fn params(&self) -> Vec<String> {
        let nums = |v: &[i64]| v.iter().map(i64::to_string).collect();
        match self {
            Family::Cyclic(n)
            | Family::Dihedral(n)
            | Family::Quaternion(n)
            | Family::Heisenberg(n)
            | Family::Symmetric(n)
            | Family::Alternating(n)
            | Family::ExceptionalP4TypeII(n) => vec![n.to_string()],
            Family::Abelian(f) => f.iter().map(usize::to_string).collect(),
            Family::Metacyclic { n, m, r } => nums(&[*n as i64, *m as i64, *r as i64]),
            Family::Frobenius { p, coeffs } => std::iter::once(p).chain(coeffs).map(usize::to_string).collect(),
            Family::Lambda { p, q, lambda } => nums(&[*p as i64, *q as i64, *lambda as i64]),
            Family::ExceptionalP4 { p, k, m, n } => nums(&[*p as i64, *k, *m, *n]),
            Family::QuaternionByThree | Family::Wreath33 => Vec::new(),
            Family::Product(a, b) => vec![a.clone(), b.clone()],
        }
    }

    fn parse(kind: &str, params: &[&str]) -> std::result::Result<Family, String> {
        let ints: Vec<i64> = if kind == "product" {
            Vec::new()
        } else {
            params
                .iter()
                .map(|p| p.parse::<i64>().map_err(|_| format!("bad parameter {p:?}")))
                .collect::<std::result::Result<_, _>>()?
        };
        let nonneg = |x: i64| usize::try_from(x).map_err(|_| format!("parameter {x} must be non-negative"));
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(format!("{kind} takes {k} parameter(s), got {}", params.len()))
            }
        };
        let one = || -> std::result::Result<usize, String> {
            arity(1)?;
            nonneg(ints[0])
        };
        Ok(match kind {
            "cyclic" => Family::Cyclic(one()?),
            "dihedral" => Family::Dihedral(one()?),
            "quaternion" => Family::Quaternion(one()?),
            "heisenberg" => Family::Heisenberg(one()?),
            "symmetric" => Family::Symmetric(one()?),
            "alternating" => Family::Alternating(one()?),
            "p4ii" => Family::ExceptionalP4TypeII(one()?),
            "abelian" => Family::Abelian(ints.into_iter().map(nonneg).collect::<std::result::Result<_, _>>()?),
            "metacyclic" => {
                arity(3)?;
                Family::Metacyclic { n: nonneg(ints[0])?, m: nonneg(ints[1])?, r: nonneg(ints[2])? }
            }
            "frobenius" => {
                if ints.len() < 2 {
                    return Err("frobenius takes a prime and at least one coefficient".into());
                }
                let all: Vec<usize> = ints.into_iter().map(nonneg).collect::<std::result::Result<_, _>>()?;
                Family::Frobenius { p: all[0], coeffs: all[1..].to_vec() }
            }
            "lambda" => {
                arity(3)?;
                Family::Lambda { p: nonneg(ints[0])?, q: nonneg(ints[1])?, lambda: nonneg(ints[2])? }
            }
            "p4" => {
                arity(4)?;
                Family::ExceptionalP4 { p: nonneg(ints[0])?, k: ints[1], m: ints[2], n: ints[3] }
            }
            "q8z3" => {
                arity(0)?;
                Family::QuaternionByThree
            }
            "wreath33" => {
                arity(0)?;
                Family::Wreath33
            }
            "product" => {
                arity(2)?;
                Family::Product(params[0].to_string(), params[1].to_string())
            }
            other => return Err(format!("unknown family {other:?}")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// Stated in the literature the catalog is checked against.
    Published,
    /// Computed by an independent oracle.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub order: usize,
    pub nilpotent: Option<bool>,
    pub kappa: Option<(i64, Provenance)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub label: String,
    pub family: Family,
    pub expected: Expected,
    /// Excluded from the default sweep because its lattice is large.
    pub opt_in: bool,
}

impl CatalogEntry {
    fn new(label: impl Into<String>, family: Family, order: usize) -> Self {
        CatalogEntry {
            label: label.into(),
            family,
            expected: Expected { order, nilpotent: None, kappa: None },
            opt_in: false,
        }
    }

    fn nilpotent(mut self, yes: bool) -> Self {
        self.expected.nilpotent = Some(yes);
        self
    }

    fn kappa(mut self, k: i64, provenance: Provenance) -> Self {
        self.expected.kappa = Some((k, provenance));
        self
    }

    fn opt_in(mut self) -> Self {
        self.opt_in = true;
        self
    }

    /// `label kind param...`
    pub fn manifest_line(&self) -> String {
        let mut parts = vec![self.label.clone(), self.family.kind().to_string()];
        parts.extend(self.family.params());
        parts.join(" ")
    }

    /// Builds the group and checks its order against the declared one.
    pub fn build(&self, limits: &Limits) -> Result<FiniteGroup> {
        let g = build_family(&self.family, limits)?;
        if g.order() != self.expected.order {
            return Err(Error::Precondition(format!(
                "catalog entry {} has order {}, expected {}",
                self.label,
                g.order(),
                self.expected.order
            )));
        }
        Ok(g.with_label(self.label.clone()))
    }
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.manifest_line())
    }
}

fn abelian_label(factors: &[usize]) -> String {
    factors.iter().map(|n| format!("Z{n}")).collect::<Vec<_>>().join("x")
}

/// Partitions of `n` into at most `max_parts` parts, largest part first.
fn partitions(n: usize, max_part: usize, max_parts: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if max_parts == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first, max_parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The standard catalog, in a fixed order. Entries marked `opt_in` are left
/// out of default sweeps.
pub fn standard_families() -> Vec<CatalogEntry> {
    use Provenance::{Derived, Published};
    let mut out = Vec::new();

    for n in 1..=64 {
        let mut e = CatalogEntry::new(format!("Z{n}"), Family::Cyclic(n), n).nilpotent(true);
        e = match n {
            1 => e.kappa(-2, Published),
            n if is_prime(n) => e.kappa(-1, Published),
            4 | 9 | 25 | 49 => e.kappa(0, Published),
            6 => e.kappa(0, Published),
            8 => e.kappa(1, Derived),
            _ => e,
        };
        out.push(e);
    }
    out.push(CatalogEntry::new("Z81", Family::Cyclic(81), 81).nilpotent(true));
    out.push(CatalogEntry::new("Z210", Family::Cyclic(210), 210).nilpotent(true));

    // Non-cyclic abelian p-groups; rank at most 4 for p = 2 and 3 for p = 3.
    for (p, max_exp, max_rank) in [(2usize, 6u32, 4usize), (3, 4, 3)] {
        for e in 2..=max_exp {
            for part in partitions(e as usize, e as usize, max_rank) {
                if part.len() < 2 {
                    continue;
                }
                let factors: Vec<usize> = part.iter().map(|&k| p.pow(k as u32)).collect();
                let mut entry =
                    CatalogEntry::new(abelian_label(&factors), Family::Abelian(factors), p.pow(e)).nilpotent(true);
                if entry.label == "Z4xZ2" {
                    entry = entry.kappa(1, Derived);
                }
                if entry.label == "Z2xZ2" || entry.label == "Z3xZ3" {
                    entry = entry.kappa(0, Published);
                }
                out.push(entry);
            }
        }
    }
    for factors in [vec![2, 6], vec![3, 6], vec![2, 10], vec![5, 5], vec![2, 2, 6], vec![2, 12], vec![6, 6]] {
        let order = factors.iter().product();
        out.push(CatalogEntry::new(abelian_label(&factors), Family::Abelian(factors), order).nilpotent(true));
    }

    for n in 3..=16 {
        let e = CatalogEntry::new(format!("D{n}"), Family::Dihedral(n), 2 * n).nilpotent(n.is_power_of_two());
        out.push(e);
    }
    out.push(CatalogEntry::new("Q8", Family::Quaternion(8), 8).nilpotent(true).kappa(3, Published));
    out.push(CatalogEntry::new("Q16", Family::Quaternion(16), 16).nilpotent(true).kappa(8, Derived));
    out.push(CatalogEntry::new("Q32", Family::Quaternion(32), 32).nilpotent(true));

    // Non-abelian groups of order p³ (p = 2: D4 and Q8 above).
    for p in [3usize, 5] {
        out.push(CatalogEntry::new(format!("Heis{}", p * p * p), Family::Heisenberg(p), p * p * p).nilpotent(true));
        out.push(
            CatalogEntry::new(format!("Z{}:Z{p}", p * p), Family::Metacyclic { n: p * p, m: p, r: 1 + p }, p * p * p)
                .nilpotent(true),
        );
    }

    out.push(CatalogEntry::new("S3", Family::Symmetric(3), 6).nilpotent(false).kappa(0, Derived));
    out.push(CatalogEntry::new("A4", Family::Alternating(4), 12).nilpotent(false).kappa(0, Derived));
    out.push(CatalogEntry::new("S4", Family::Symmetric(4), 24).nilpotent(false));
    out.push(CatalogEntry::new("A5", Family::Alternating(5), 60).nilpotent(false));

    for (label, n, m, r) in [("F20", 5, 4, 2), ("Z7:Z3", 7, 3, 2), ("Z3:Z4", 3, 4, 2), ("Z5:Z4", 5, 4, 4), ("Z9:Z2", 9, 2, 8)] {
        out.push(CatalogEntry::new(label, Family::Metacyclic { n, m, r }, n * m).nilpotent(false));
    }
    out.push(CatalogEntry::new("Z2^3:Z7", Family::Frobenius { p: 2, coeffs: vec![1, 1, 0] }, 56).nilpotent(false));
    out.push(CatalogEntry::new("Z5^2:Z3", Family::Frobenius { p: 5, coeffs: vec![1, 1] }, 75).nilpotent(false));
    out.push(CatalogEntry::new("Z3^2:Z4", Family::Frobenius { p: 3, coeffs: vec![1, 0] }, 36).nilpotent(false));
    out.push(CatalogEntry::new("SL(2,3)", Family::QuaternionByThree, 24).nilpotent(false));
    out.push(CatalogEntry::new("Z3wrZ3", Family::Wreath33, 81).nilpotent(true));

    for (p, q, lambda) in [(7usize, 3usize, 2usize), (7, 3, 4), (5, 2, 4)] {
        out.push(
            CatalogEntry::new(format!("Z{p}^2:Z{q}:lam{lambda}"), Family::Lambda { p, q, lambda }, p * p * q)
                .nilpotent(false),
        );
    }

    for (k, m, n) in exceptional_p4_triples() {
        out.push(CatalogEntry::new(format!("G81:k{k}m{m}n{n}"), Family::ExceptionalP4 { p: 3, k, m, n }, 81).nilpotent(true));
    }
    for p in [5usize, 7] {
        out.push(
            CatalogEntry::new(format!("G{}:typeII", p.pow(4)), Family::ExceptionalP4TypeII(p), p.pow(4))
                .nilpotent(true)
                .opt_in(),
        );
    }

    for (a, b, order, nil) in [
        ("Z3", "S3", 18, false),
        ("Z2", "A4", 24, false),
        ("Q8", "Z3", 24, true),
        ("Z2", "Q8", 16, true),
        ("Z2", "D4", 16, true),
        ("Z5", "S3", 30, false),
        ("Z2", "Z7:Z3", 42, false),
    ] {
        out.push(CatalogEntry::new(format!("{a}x{b}"), Family::Product(a.into(), b.into()), order).nilpotent(nil));
    }
    out
}

/// The six parameter triples `(k, m, n)` for `p = 3`: `k = ±1`, `n = -k`,
/// `m ∈ {-1, 0, 1}`.
pub fn exceptional_p4_triples() -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for k in [1i64, -1] {
        for m in [0i64, -1, 1] {
            out.push((k, m, -k));
        }
    }
    out
}

pub fn find_entry(label: &str) -> Option<CatalogEntry> {
    standard_families().into_iter().find(|e| e.label == label)
}

/// Builds a catalog group by label.
pub fn by_label(label: &str, limits: &Limits) -> Result<FiniteGroup> {
    find_entry(label)
        .ok_or_else(|| Error::Precondition(format!("no catalog entry named {label:?}")))?
        .build(limits)
}

/// Builds every entry, aborting on the first failure.
pub fn build_all(entries: &[CatalogEntry], limits: &Limits) -> Result<Vec<FiniteGroup>> {
    entries.iter().map(|e| e.build(limits)).collect()
}

pub fn parse_manifest(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: i + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 2 {
            return Err(err("expected `label kind param...`".into()));
        }
        let family = Family::parse(fields[1], &fields[2..]).map_err(err)?;
        let order = family_order(&family).map_err(err)?;
        out.push(CatalogEntry::new(fields[0], family, order));
    }
    Ok(out)
}

pub fn manifest(entries: &[CatalogEntry]) -> String {
    entries.iter().map(|e| e.manifest_line() + "\n").collect()
}

/// The order a family should produce, computed from its parameters alone.
fn family_order(f: &Family) -> std::result::Result<usize, String> {
    Ok(match f {
        Family::Cyclic(n) => *n,
        Family::Abelian(fs) => fs.iter().product(),
        Family::Dihedral(n) => 2 * n,
        Family::Quaternion(n) => *n,
        Family::Heisenberg(p) => p.pow(3),
        Family::ExceptionalP4TypeII(p) => p.pow(4),
        Family::Metacyclic { n, m, .. } => n * m,
        Family::Symmetric(n) => (1..=*n).product(),
        Family::Alternating(n) => ((1..=*n).product::<usize>() / 2).max(1),
        Family::Frobenius { p, coeffs } => {
            let (_, q) = companion_action(*p, coeffs)?;
            p.pow(coeffs.len() as u32) * q
        }
        Family::Lambda { p, q, .. } => p * p * q,
        Family::ExceptionalP4 { p, .. } => p.pow(4),
        Family::QuaternionByThree => 24,
        Family::Wreath33 => 81,
        Family::Product(a, b) => {
            let size = |l: &str| {
                find_entry(l).map(|e| e.expected.order).ok_or_else(|| format!("unknown catalog label {l:?}"))
            };
            size(a)? * size(b)?
        }
    })
}

/// `ℤ_p^d` as an iterated direct product; element index is the base-`p`
/// number with the first coordinate most significant.
fn elementary_abelian(p: usize, d: usize, limits: &Limits) -> Result<FiniteGroup> {
    let zp = FiniteGroup::cyclic(p);
    let mut g = FiniteGroup::cyclic(1);
    for _ in 0..d {
        g = FiniteGroup::direct_product(&g, &zp, limits)?;
    }
    Ok(g)
}

fn apply_matrix(p: usize, m: &[Vec<usize>], index: usize) -> usize {
    let d = m.len();
    let mut v = vec![0; d];
    let mut x = index;
    for i in (0..d).rev() {
        v[i] = x % p;
        x /= p;
    }
    let mut out = 0;
    for row in m {
        let c: usize = row.iter().zip(&v).map(|(a, b)| a * b).sum::<usize>() % p;
        out = out * p + c;
    }
    out
}

fn matrix_permutation(p: usize, m: &[Vec<usize>]) -> Vec<Element> {
    (0..p.pow(m.len() as u32)).map(|x| apply_matrix(p, m, x)).collect()
}

/// The companion matrix permutation on `F_p^d` and its order.
fn companion_action(p: usize, coeffs: &[usize]) -> std::result::Result<(Vec<Element>, usize), String> {
    if !is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    let d = coeffs.len();
    let mut m = vec![vec![0; d]; d];
    for i in 1..d {
        m[i][i - 1] = 1;
    }
    for (i, &c) in coeffs.iter().enumerate() {
        m[i][d - 1] = (p - c % p) % p;
    }
    let perm = matrix_permutation(p, &m);
    if coeffs[0].is_multiple_of(p) {
        return Err("constant coefficient must be a unit".into());
    }
    let mut q = 1;
    let mut cur = perm.clone();
    while cur.iter().enumerate().any(|(i, &x)| i != x) {
        cur = cur.iter().map(|&x| perm[x]).collect();
        q += 1;
    }
    Ok((perm, q))
}

fn presentation(gens: usize, rels: &[String], limits: &Limits) -> Result<FiniteGroup> {
    let refs: Vec<&str> = rels.iter().map(String::as_str).collect();
    todd_coxeter(&Presentation::from_strs(gens, &refs)?, limits.max_cosets, limits)
}

fn perm_group(degree: usize, gens: &[&[&[usize]]], limits: &Limits) -> Result<FiniteGroup> {
    let perms = gens
        .iter()
        .map(|c| Permutation::from_cycles(degree, c))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_permutation_generators(degree, &perms, limits)
}

fn build_family(f: &Family, limits: &Limits) -> Result<FiniteGroup> {
    match f {
        Family::Cyclic(n) => {
            if *n == 0 {
                return Err(Error::Precondition("cyclic group of order 0".into()));
            }
            if *n > limits.max_order {
                return Err(Error::CapExceeded { what: "group order", limit: limits.max_order });
            }
            Ok(FiniteGroup::cyclic(*n))
        }
        Family::Abelian(fs) => {
            let mut g = FiniteGroup::cyclic(1);
            for &n in fs {
                g = FiniteGroup::direct_product(&g, &build_family(&Family::Cyclic(n), limits)?, limits)?;
            }
            Ok(g)
        }
        Family::Dihedral(n) => build_family(&Family::Metacyclic { n: *n, m: 2, r: n - 1 }, limits),
        Family::Quaternion(n) => {
            if *n < 8 || !n.is_power_of_two() {
                return Err(Error::Precondition(format!("no generalized quaternion group of order {n}")));
            }
            let h = n / 2;
            presentation(2, &[format!("a{h}"), format!("a{} = b2", h / 2), "baBa".into()], limits)
        }
        Family::Heisenberg(p) => {
            if !is_prime(*p) || *p == 2 {
                return Err(Error::Precondition("Heisenberg group needs an odd prime".into()));
            }
            let n = elementary_abelian(*p, 2, limits)?;
            let auto = matrix_permutation(*p, &[vec![1, 1], vec![0, 1]]);
            FiniteGroup::semidirect_product(&n, &FiniteGroup::cyclic(*p), &cyclic_action(&auto, *p), limits)
        }
        Family::Metacyclic { n, m, r } => {
            let auto: Vec<Element> = (0..*n).map(|x| x * r % n).collect();
            let base = build_family(&Family::Cyclic(*n), limits)?;
            FiniteGroup::semidirect_product(&base, &FiniteGroup::cyclic(*m), &cyclic_action(&auto, *m), limits)
        }
        Family::Symmetric(n) => match n {
            0 | 1 => Ok(FiniteGroup::cyclic(1)),
            2 => Ok(FiniteGroup::cyclic(2)),
            _ => {
                let cycle: Vec<usize> = (0..*n).collect();
                perm_group(*n, &[&[&cycle], &[&[0, 1]]], limits)
            }
        },
        Family::Alternating(n) => match n {
            0..=2 => Ok(FiniteGroup::cyclic(1)),
            3 => Ok(FiniteGroup::cyclic(3)),
            _ => {
                let long: Vec<usize> = if n % 2 == 1 { (0..*n).collect() } else { (1..*n).collect() };
                perm_group(*n, &[&[&[0, 1, 2]], &[&long]], limits)
            }
        },
        Family::Frobenius { p, coeffs } => {
            let (auto, q) = companion_action(*p, coeffs).map_err(Error::Precondition)?;
            let n = elementary_abelian(*p, coeffs.len(), limits)?;
            FiniteGroup::semidirect_product(&n, &FiniteGroup::cyclic(q), &cyclic_action(&auto, q), limits)
        }
        Family::Lambda { p, q, lambda } => lambda_group(*p, *q, *lambda, limits),
        Family::ExceptionalP4 { p, k, m, n } => exceptional_p4(*p, *k, *m, *n, limits),
        Family::ExceptionalP4TypeII(p) => exceptional_p4_type_ii(*p, limits),
        Family::QuaternionByThree => {
            let q8p = Presentation::from_strs(2, &["a4", "a2 = b2", "baBa"])?;
            let (q8, gens) = todd_coxeter_with_generators(&q8p, limits.max_cosets, limits)?;
            let (a, b) = (gens[0], gens[1]);
            let auto: Vec<Element> = extend_homomorphism(&q8, &q8, &[a, b], &[b, q8.mul(a, b)], true)
                .expect("i → j, j → k extends to an automorphism of Q8")
                .into_iter()
                .map(|x| x.expect("a and b generate Q8"))
                .collect();
            FiniteGroup::semidirect_product(&q8, &FiniteGroup::cyclic(3), &cyclic_action(&auto, 3), limits)
        }
        Family::Wreath33 => perm_group(9, &[&[&[0, 1, 2]], &[&[0, 3, 6], &[1, 4, 7], &[2, 5, 8]]], limits),
        Family::Product(a, b) => {
            let ga = by_label(a, limits)?;
            let gb = by_label(b, limits)?;
            FiniteGroup::direct_product(&ga, &gb, limits)
        }
    }
}

/// `(ℤ_p × ℤ_p) ⋊ ℤ_q` where the generator of `ℤ_q` scales by `λ`. Requires
/// `λ > 1` and `λ^q ≡ 1 (mod p)`.
pub fn lambda_group(p: usize, q: usize, lambda: usize, limits: &Limits) -> Result<FiniteGroup> {
    if !is_prime(p) || !is_prime(q) || lambda <= 1 || crate::arith::pow_mod(lambda as u64, q as u64, p as u64) != 1 {
        return Err(Error::Precondition(format!("invalid parameters p={p}, q={q}, λ={lambda}")));
    }
    let n = elementary_abelian(p, 2, limits)?;
    let auto = matrix_permutation(p, &[vec![lambda % p, 0], vec![0, lambda % p]]);
    FiniteGroup::semidirect_product(&n, &FiniteGroup::cyclic(q), &cyclic_action(&auto, q), limits)
}

/// `⟨a,b,c | a^{p²} = b^p = 1, ab = ba, a^p = c^{kp}, bcb⁻¹ = c^{1+p},
/// aca⁻¹ = c^{1+mp} b^n⟩`, defined for `p = 3`, `k = ±1` and `m, n ∈ {-1, 0, 1}`
/// with `n = -k`.
pub fn exceptional_p4(p: usize, k: i64, m: i64, n: i64, limits: &Limits) -> Result<FiniteGroup> {
    if p != 3 {
        return Err(Error::Precondition(format!("the (k, m, n) family is only defined for p = 3, got {p}")));
    }
    if !exceptional_p4_triples().contains(&(k, m, n)) {
        return Err(Error::Precondition(format!("({k}, {m}, {n}) is not an admissible triple")));
    }
    let p = p as i64;
    let rels = [
        format!("a{}", p * p),
        format!("b{p}"),
        "abAB".to_string(),
        format!("a{p} = c{}", k * p),
        format!("bcB = c{}", 1 + p),
        format!("acA = c{} b{n}", 1 + m * p),
    ];
    let g = presentation(3, &rels, limits)?;
    if g.order() != 81 {
        return Err(Error::Precondition(format!("enumeration closed at order {}, expected 81", g.order())));
    }
    Ok(g)
}

/// `⟨a,b,c | a^{p²} = b^p = c^p = 1, bc = cb, bab⁻¹ = a^{p+1}, cac⁻¹ = ab⟩`, `p > 3`.
pub fn exceptional_p4_type_ii(p: usize, limits: &Limits) -> Result<FiniteGroup> {
    if !is_prime(p) || p <= 3 {
        return Err(Error::Precondition(format!("the second order-p⁴ family needs a prime p > 3, got {p}")));
    }
    let rels = [
        format!("a{}", p * p),
        format!("b{p}"),
        format!("c{p}"),
        "bcBC".to_string(),
        format!("baB = a{}", p + 1),
        "caC = ab".to_string(),
    ];
    let cosets = limits.max_cosets.max(8 * p.pow(4));
    let g = todd_coxeter(&Presentation::from_strs(3, &rels.iter().map(String::as_str).collect::<Vec<_>>())?, cosets, limits)?;
    if g.order() != p.pow(4) {
        return Err(Error::Precondition(format!("enumeration closed at order {}, expected {}", g.order(), p.pow(4))));
    }
    Ok(g)
}

/// Reads a group file (one object, an array, or a stream of objects) and
/// validates every table. Any invalid table rejects the whole file.
pub fn ingest_tables(path: &Path, limits: &Limits) -> Result<Vec<FiniteGroup>> {
    let text = std::fs::read_to_string(path)?;
    FiniteGroup::parse_group_file(&text, limits)
}

/// Distinct primes dividing `n`.
pub fn prime_divisors(n: usize) -> Vec<usize> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}
