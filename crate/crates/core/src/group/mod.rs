//! Concrete finite groups stored as full multiplication tables.

mod construct;
mod io;
mod iso;

pub use construct::{cyclic_action, Permutation};
pub use io::{parse_cycle_notation, parse_permutation_file, GroupRecord};
pub use iso::{are_isomorphic, are_isomorphic_with_budget, extend_homomorphism, Isomorphism};

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Index of an element within its parent [`FiniteGroup`].
pub type Element = usize;

/// A finite group given by its Cayley table.
///
/// Element `0..order` indices are local to this value; two groups built by
/// different constructors can be isomorphic while disagreeing on every index.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: Element,
    inverses: Vec<u32>,
    label: Option<String>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates `rows` as a group table: square, Latin, with a two-sided
    /// identity. Associativity is checked exhaustively up to
    /// `limits.associativity_bound` and with Light's generator test above it.
    pub fn from_table(rows: Vec<Vec<usize>>, label: Option<String>, limits: &Limits) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > limits.max_order {
            return Err(Error::CapExceeded { what: "group order", limit: limits.max_order });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!("row {i} has out-of-range entry {x}")));
                }
                table.push(x as u32);
            }
        }
        let g = Self::assemble(n, table, label)?;
        if n <= limits.associativity_bound {
            g.check_associative_exhaustive()?;
        } else {
            g.check_associative_light()?;
        }
        Ok(g)
    }

    /// Builds from a flat table produced by a constructor that is associative
    /// by construction. Latin/identity checks always run; the cubic
    /// associativity check runs only up to the configured bound.
    pub(crate) fn from_flat_trusted(
        n: usize,
        table: Vec<u32>,
        label: Option<String>,
        limits: &Limits,
    ) -> Result<Self> {
        let g = Self::assemble(n, table, label)?;
        if n <= limits.associativity_bound {
            g.check_associative_exhaustive()?;
        }
        Ok(g)
    }

    fn assemble(n: usize, table: Vec<u32>, label: Option<String>) -> Result<Self> {
        debug_assert_eq!(table.len(), n * n);
        let mut seen = vec![0u32; n];
        for i in 0..n {
            let stamp = i as u32 + 1;
            for j in 0..n {
                let x = table[i * n + j] as usize;
                if seen[x] == stamp {
                    return Err(Error::InvalidTable(format!("row {i} repeats element {x}")));
                }
                seen[x] = stamp;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for j in 0..n {
            let stamp = j as u32 + 1;
            for i in 0..n {
                let x = table[i * n + j] as usize;
                if seen[x] == stamp {
                    return Err(Error::InvalidTable(format!("column {j} repeats element {x}")));
                }
                seen[x] = stamp;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e * n + j] as usize == j && table[j * n + e] as usize == j))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        let mut inverses = vec![0u32; n];
        for (i, inv) in inverses.iter_mut().enumerate() {
            // Latin rows guarantee exactly one right inverse.
            let j = (0..n).find(|&j| table[i * n + j] as usize == identity).unwrap();
            if table[j * n + i] as usize != identity {
                return Err(Error::InvalidTable(format!("element {i} has no two-sided inverse")));
            }
            *inv = j as u32;
        }
        Ok(FiniteGroup { order: n, table, identity, inverses, label })
    }

    fn check_associative_exhaustive(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                let row_ab = &self.table[ab * n..ab * n + n];
                for c in 0..n {
                    if row_ab[c] as usize != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Light's test: the elements `g` with `(xg)y = x(gy)` for all `x, y`
    /// form a subloop, so checking a generating set suffices.
    fn check_associative_light(&self) -> Result<()> {
        let n = self.order;
        for g in self.loop_generators() {
            for x in 0..n {
                let xg = self.mul(x, g);
                for y in 0..n {
                    if self.mul(xg, y) != self.mul(x, self.mul(g, y)) {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({x}, {g}, {y})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    // Generators of the table viewed as a loop: closure under products only,
    // no associativity assumed.
    fn loop_generators(&self) -> Vec<Element> {
        let n = self.order;
        let mut inside = vec![false; n];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        let mut gens = Vec::new();
        for x in 0..n {
            if inside[x] {
                continue;
            }
            gens.push(x);
            inside[x] = true;
            members.push(x);
            let mut i = 0;
            while i < members.len() {
                let len = members.len();
                for j in 0..len {
                    for (a, b) in [(members[i], members[j]), (members[j], members[i])] {
                        let c = self.mul(a, b);
                        if !inside[c] {
                            inside[c] = true;
                            members.push(c);
                        }
                    }
                }
                i += 1;
            }
        }
        gens
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Element {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inverses[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: Element, x: Element) -> Element {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutator(&self, a: Element, b: Element) -> Element {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, x: Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    /// Table rows as nested vectors, the layout of the group file format.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// Least `k >= 1` with `x^k = 1`.
    pub fn element_order(&self, x: Element) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|x| self.element_order(x)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements().any(|x| self.element_order(x) == self.order)
    }

    /// Conjugacy class index of every element, classes numbered by first
    /// appearance.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Element>> {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = Vec::new();
            for g in 0..n {
                let y = self.conjugate(g, x);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    class.push(y);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Greedy generating set: repeatedly adds the element of largest order
    /// outside the subgroup generated so far.
    pub fn generating_set(&self) -> Vec<Element> {
        let orders = self.element_orders();
        let mut candidates: Vec<Element> = self.elements().filter(|&x| x != self.identity).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(orders[x]), x));
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut members = vec![self.identity];
        for x in candidates {
            if inside[x] {
                continue;
            }
            gens.push(x);
            self.close_in_place(&gens, &mut inside, &mut members);
            if members.len() == self.order {
                break;
            }
        }
        gens
    }

    /// Extends `members` (a subgroup, flagged in `inside`) to the subgroup
    /// generated by it together with `gens`.
    pub(crate) fn close_in_place(&self, gens: &[Element], inside: &mut [bool], members: &mut Vec<Element>) {
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }
}
