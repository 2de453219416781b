//! Subgroups, the full subgroup lattice, and the structural invariants
//! computed from it (normality, Sylow and Frattini subgroups, series).

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{factorize, is_prime, p_part};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup};
use crate::limits::Limits;

/// A subgroup of a specific parent group, identified by its member set.
///
/// The generator list is auxiliary (it speeds up normality and conjugation
/// tests) and does not take part in equality or hashing.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: BitSet,
    order: usize,
    generators: Vec<Element>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Subgroup {
        Subgroup {
            members: BitSet::from_indices(g.order(), [g.identity()]),
            order: 1,
            generators: Vec::new(),
        }
    }

    pub fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup {
            members: BitSet::full(g.order()),
            order: g.order(),
            generators: g.generating_set(),
        }
    }

    pub fn generated_by(g: &FiniteGroup, gens: &[Element]) -> Subgroup {
        let mut inside = vec![false; g.order()];
        inside[g.identity()] = true;
        let mut members = vec![g.identity()];
        g.close_in_place(gens, &mut inside, &mut members);
        let generators = gens.iter().copied().filter(|&x| x != g.identity()).collect();
        Subgroup {
            order: members.len(),
            members: BitSet::from_indices(g.order(), members),
            generators,
        }
    }

    /// Validates that `members` is closed and contains the identity.
    pub fn from_members(g: &FiniteGroup, members: BitSet) -> Result<Subgroup> {
        if members.capacity() != g.order() {
            return Err(Error::NotSubgroup("member set has the wrong capacity".into()));
        }
        if !members.contains(g.identity()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let list = members.to_vec();
        for &a in &list {
            for &b in &list {
                if !members.contains(g.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("not closed: {a}·{b}")));
                }
            }
        }
        Ok(Self::from_closed_set(g, members))
    }

    /// Trusted variant of [`Subgroup::from_members`] for sets known closed.
    pub(crate) fn from_closed_set(g: &FiniteGroup, members: BitSet) -> Subgroup {
        let order = members.len();
        let mut gens = Vec::new();
        let mut inside = vec![false; g.order()];
        inside[g.identity()] = true;
        let mut span = vec![g.identity()];
        for x in members.iter() {
            if !inside[x] {
                gens.push(x);
                g.close_in_place(&gens, &mut inside, &mut span);
            }
            if span.len() == order {
                break;
            }
        }
        Subgroup { members, order, generators: gens }
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> Vec<Element> {
        self.members.to_vec()
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        Subgroup::from_closed_set(g, self.members.intersection(&other.members))
    }

    /// `⟨self, x⟩`, built coset by coset (Dimino).
    pub fn join_element(&self, g: &FiniteGroup, x: Element) -> Subgroup {
        if self.contains(x) {
            return self.clone();
        }
        let base = self.members.to_vec();
        let mut members = self.members.clone();
        let mut gens = self.generators.clone();
        gens.push(x);
        let mut reps = vec![g.identity()];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &s in &gens {
                let y = g.mul(r, s);
                if !members.contains(y) {
                    for &h in &base {
                        members.insert(g.mul(h, y));
                    }
                    reps.push(y);
                }
            }
            i += 1;
        }
        Subgroup { order: members.len(), members, generators: gens }
    }

    /// `g H g⁻¹`.
    pub fn conjugate_by(&self, g: &FiniteGroup, x: Element) -> Subgroup {
        let members = BitSet::from_indices(g.order(), self.members.iter().map(|h| g.conjugate(x, h)));
        Subgroup {
            members,
            order: self.order,
            generators: self.generators.iter().map(|&h| g.conjugate(x, h)).collect(),
        }
    }

    /// True when conjugation by `x` maps the subgroup into itself.
    pub fn is_normalized_by(&self, g: &FiniteGroup, x: Element) -> bool {
        self.generators.iter().all(|&h| self.contains(g.conjugate(x, h)))
    }
}

fn check_parent(g: &FiniteGroup, h: &Subgroup) -> Result<()> {
    if h.members.capacity() != g.order() {
        Err(Error::NotSubgroup("subgroup belongs to a group of different order".into()))
    } else {
        Ok(())
    }
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    check_parent(g, h)?;
    Ok(g.generating_set().iter().all(|&x| h.is_normalized_by(g, x)))
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    check_parent(g, h)?;
    let members = BitSet::from_indices(g.order(), g.elements().filter(|&x| h.is_normalized_by(g, x)));
    Ok(Subgroup::from_closed_set(g, members))
}

pub fn centralizer(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    check_parent(g, h)?;
    let members = BitSet::from_indices(
        g.order(),
        g.elements()
            .filter(|&x| h.generators.iter().all(|&y| g.mul(x, y) == g.mul(y, x))),
    );
    Ok(Subgroup::from_closed_set(g, members))
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    centralizer(g, &Subgroup::whole(g)).expect("whole group belongs to g")
}

/// Smallest normal subgroup containing `x`.
pub fn normal_closure(g: &FiniteGroup, gens: &[Element]) -> Subgroup {
    let mut conj: Vec<Element> = Vec::new();
    let mut seen = BitSet::new(g.order());
    for &x in gens {
        for y in g.elements() {
            let c = g.conjugate(y, x);
            if seen.insert(c) {
                conj.push(c);
            }
        }
    }
    Subgroup::generated_by(g, &conj)
}

pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    let gens = g.generating_set();
    let mut comms = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let c = g.commutator(a, b);
            if c != g.identity() {
                comms.push(c);
            }
        }
    }
    // The normal closure of generator commutators is [G, G].
    normal_closure(g, &comms)
}

/// All Sylow `p`-subgroups, in ascending member order. When `p ∤ |G|` the
/// trivial subgroup is the unique Sylow `p`-subgroup.
pub fn sylow_subgroups(g: &FiniteGroup, p: usize) -> Vec<Subgroup> {
    let target = p_part(g.order(), p);
    let mut sylow = Subgroup::trivial(g);
    while sylow.order < target {
        let norm = normalizer(g, &sylow).expect("same parent");
        let mut grown = false;
        for x in norm.members.iter() {
            let k = g.element_order(x);
            let y = g.pow(x, (k / p_part(k, p)) as i64);
            if !sylow.contains(y) {
                sylow = sylow.join_element(g, y);
                grown = true;
                break;
            }
        }
        // Sylow's theorem guarantees growth while |P| < p^a.
        assert!(grown, "p-subgroup of non-maximal order is self-normalizing modulo p");
    }
    let mut seen: HashMap<BitSet, ()> = HashMap::new();
    let mut out = Vec::new();
    for x in g.elements() {
        let c = sylow.conjugate_by(g, x);
        if seen.insert(c.members.clone(), ()).is_none() {
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    out
}

/// `O_p(G)`: the intersection of all Sylow `p`-subgroups.
pub fn p_core(g: &FiniteGroup, p: usize) -> Subgroup {
    let sylows = sylow_subgroups(g, p);
    let mut members = sylows[0].members.clone();
    for s in &sylows[1..] {
        members.intersect_with(&s.members);
    }
    Subgroup::from_closed_set(g, members)
}

pub fn is_solvable(g: &FiniteGroup, limits: &Limits) -> bool {
    let mut cur = g.clone();
    loop {
        if cur.order() == 1 {
            return true;
        }
        let d = derived_subgroup(&cur);
        if d.order == cur.order() {
            return false;
        }
        cur = subgroup_as_group(&cur, &d, limits);
    }
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    factorize(g.order())
        .into_iter()
        .all(|(p, _)| sylow_subgroups(g, p).len() == 1)
}

/// The first minimal normal subgroup: smallest order among normal closures of
/// single elements, ties broken by member order.
pub fn minimal_normal_subgroup(g: &FiniteGroup) -> Option<Subgroup> {
    let mut best: Option<Subgroup> = None;
    let mut covered = BitSet::new(g.order());
    for x in g.elements() {
        if x == g.identity() || covered.contains(x) {
            continue;
        }
        let n = normal_closure(g, &[x]);
        // conjugates of x share the same closure
        for y in g.elements() {
            covered.insert(g.conjugate(y, x));
        }
        let better = match &best {
            None => true,
            Some(b) => (n.order, &n.members) < (b.order, &b.members),
        };
        if better {
            best = Some(n);
        }
    }
    best
}

/// Orders of the factors of a chief series, bottom up, obtained by repeatedly
/// extracting a minimal normal subgroup and passing to the quotient.
pub fn chief_factor_orders(g: &FiniteGroup, limits: &Limits) -> Vec<usize> {
    let mut out = Vec::new();
    let mut cur = g.clone();
    while cur.order() > 1 {
        let m = minimal_normal_subgroup(&cur).expect("non-trivial group has a minimal normal subgroup");
        out.push(m.order);
        if m.order == cur.order() {
            break;
        }
        cur = cur.quotient_group(&m, limits).expect("minimal normal subgroup is normal").0;
    }
    out
}

pub fn is_supersolvable(g: &FiniteGroup, limits: &Limits) -> bool {
    chief_factor_orders(g, limits).into_iter().all(is_prime)
}

/// `ℓ(G)`: the number of prime factors of `|G|` counted with multiplicity.
pub fn order_length(g: &FiniteGroup) -> usize {
    factorize(g.order()).iter().map(|&(_, e)| e as usize).sum()
}

/// A subgroup re-indexed as a standalone group (members in ascending order).
pub fn subgroup_as_group(g: &FiniteGroup, h: &Subgroup, limits: &Limits) -> FiniteGroup {
    let elems = h.elements();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &x) in elems.iter().enumerate() {
        pos[x] = i;
    }
    let k = elems.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &elems {
        for &b in &elems {
            table.push(pos[g.mul(a, b)] as u32);
        }
    }
    FiniteGroup::from_flat_trusted(k, table, None, limits).expect("subgroup table is a group")
}

/// Every subgroup of a group with inclusion data.
///
/// Subgroups are sorted by (order, member set), so index 0 is the trivial
/// subgroup and the last index is the whole group.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group_order: usize,
    subgroups: Vec<Subgroup>,
    /// Indices of strict supergroups (including the whole group).
    supers: Vec<Vec<usize>>,
    /// Indices of strict subgroups (including the trivial subgroup).
    subs: Vec<Vec<usize>>,
    index: HashMap<BitSet, usize>,
}

/// Enumerates all subgroups: cyclic subgroups first, then joins `⟨H, x⟩`
/// layer by layer until no new subgroup appears.
pub fn all_subgroups(g: &FiniteGroup, limits: &Limits) -> Result<SubgroupLattice> {
    if g.order() > limits.max_order {
        return Err(Error::CapExceeded { what: "group order", limit: limits.max_order });
    }
    let mut found: Vec<Subgroup> = Vec::new();
    let mut index: HashMap<BitSet, usize> = HashMap::new();
    let mut push = |s: Subgroup, found: &mut Vec<Subgroup>| -> Result<bool> {
        if index.contains_key(&s.members) {
            return Ok(false);
        }
        if found.len() >= limits.max_lattice {
            return Err(Error::CapExceeded { what: "subgroup lattice size", limit: limits.max_lattice });
        }
        index.insert(s.members.clone(), found.len());
        found.push(s);
        Ok(true)
    };

    push(Subgroup::trivial(g), &mut found)?;
    let mut cyclic_gens = Vec::new();
    let mut covered = BitSet::new(g.order());
    covered.insert(g.identity());
    for x in g.elements() {
        if covered.contains(x) {
            continue;
        }
        let c = Subgroup::generated_by(g, &[x]);
        let k = c.order;
        // every generator of ⟨x⟩ yields the same cyclic subgroup
        for e in 1..k {
            if crate::arith::gcd(e, k) == 1 {
                covered.insert(g.pow(x, e as i64));
            }
        }
        cyclic_gens.push(x);
        push(c, &mut found)?;
    }

    let mut frontier: Vec<usize> = (1..found.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &i in &frontier {
            for &x in &cyclic_gens {
                if found[i].contains(x) {
                    continue;
                }
                let j = found[i].join_element(g, x);
                let new_index = found.len();
                if push(j, &mut found)? {
                    next.push(new_index);
                }
            }
        }
        frontier = next;
    }
    Ok(SubgroupLattice::from_subgroups(g.order(), found))
}

impl SubgroupLattice {
    fn from_subgroups(group_order: usize, mut subgroups: Vec<Subgroup>) -> Self {
        subgroups.sort_by(|a, b| (a.order, &a.members).cmp(&(b.order, &b.members)));
        let n = subgroups.len();
        let mut supers = vec![Vec::new(); n];
        let mut subs = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&subgroups[i], &subgroups[j]);
                if b.order > a.order && b.order % a.order == 0 && a.members.is_subset(&b.members) {
                    supers[i].push(j);
                    subs[j].push(i);
                }
            }
        }
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members.clone(), i))
            .collect();
        SubgroupLattice { group_order, subgroups, supers, subs, index }
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn trivial_index(&self) -> usize {
        0
    }

    pub fn full_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn index_of(&self, members: &BitSet) -> Option<usize> {
        self.index.get(members).copied()
    }

    /// `i ≤ j` in the lattice.
    pub fn is_contained(&self, i: usize, j: usize) -> bool {
        i == j || self.supers[i].binary_search(&j).is_ok()
    }

    pub fn strict_supergroups(&self, i: usize) -> &[usize] {
        &self.supers[i]
    }

    pub fn strict_subgroups(&self, i: usize) -> &[usize] {
        &self.subs[i]
    }

    pub fn is_proper_nontrivial(&self, i: usize) -> bool {
        i != self.trivial_index() && i != self.full_index()
    }

    pub fn proper_nontrivial(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_proper_nontrivial(i)).collect()
    }

    /// Proper non-trivial subgroups with no proper non-trivial subgroup below.
    pub fn minimal_indices(&self) -> Vec<usize> {
        self.proper_nontrivial()
            .into_iter()
            .filter(|&i| self.subs[i].iter().all(|&j| j == self.trivial_index()))
            .collect()
    }

    pub fn maximal_indices(&self) -> Vec<usize> {
        self.proper_nontrivial()
            .into_iter()
            .filter(|&i| self.supers[i].iter().all(|&j| j == self.full_index()))
            .collect()
    }

    pub fn minimal_subgroups(&self) -> Vec<&Subgroup> {
        self.minimal_indices().into_iter().map(|i| &self.subgroups[i]).collect()
    }

    /// Number of proper subgroups strictly containing subgroup `i`.
    pub fn container_count(&self, i: usize) -> usize {
        self.supers[i].iter().filter(|&&j| j != self.full_index()).count()
    }

    /// Every minimal subgroup lies strictly inside at least `k` proper subgroups.
    pub fn satisfies_k_valency(&self, k: usize) -> bool {
        self.minimal_indices().into_iter().all(|i| self.container_count(i) >= k)
    }

    /// `Φ(G)`, the intersection of all maximal subgroups (the whole group
    /// only when `G` is trivial).
    pub fn frattini(&self, g: &FiniteGroup) -> Subgroup {
        let full = self.full_index();
        let maximal: Vec<usize> = (0..full)
            .filter(|&i| self.supers[i].iter().all(|&j| j == full))
            .collect();
        let mut members = self.subgroups[full].members.clone();
        for i in maximal {
            members.intersect_with(&self.subgroups[i].members);
        }
        Subgroup::from_closed_set(g, members)
    }

    pub fn normal_indices(&self, g: &FiniteGroup) -> Vec<usize> {
        let gens = g.generating_set();
        (0..self.len())
            .filter(|&i| gens.iter().all(|&x| self.subgroups[i].is_normalized_by(g, x)))
            .collect()
    }

    /// Inclusion pairs `(i, j)` with `i < j` as subgroups.
    pub fn inclusion_pairs(&self) -> Vec<(usize, usize)> {
        self.supers
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |&j| (i, j)))
            .collect()
    }

    pub fn export(&self) -> LatticeExport {
        LatticeExport {
            group_order: self.group_order,
            subgroups: self.subgroups.iter().map(|s| s.elements()).collect(),
            inclusions: self.inclusion_pairs(),
        }
    }
}

/// JSON shape of the `lattice` export.
#[derive(Debug, Clone, Serialize)]
pub struct LatticeExport {
    pub group_order: usize,
    pub subgroups: Vec<Vec<usize>>,
    pub inclusions: Vec<(usize, usize)>,
}

pub fn frattini(g: &FiniteGroup, limits: &Limits) -> Result<Subgroup> {
    Ok(all_subgroups(g, limits)?.frattini(g))
}
