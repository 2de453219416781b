use std::collections::HashMap;

use super::{Element, FiniteGroup};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::Subgroup;
use crate::limits::Limits;

/// A permutation of `0..degree` stored as its image list.
///
/// Products compose left to right: `(a * b)(x) = b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation(pub Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &x in &self.0 {
            if x >= seen.len() || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    /// Builds a permutation from disjoint cycles over `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(Error::NotBijection { index: 0, degree });
                }
                touched[x] = true;
                img[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation(img))
    }
}

/// The action of `ℤ_q` on `n` sending generator power `i` to `auto^i`,
/// ready for [`FiniteGroup::semidirect_product`] with `H = cyclic(q)`.
pub fn cyclic_action(auto: &[Element], q: usize) -> Vec<Vec<Element>> {
    let mut out = Vec::with_capacity(q);
    let mut cur: Vec<Element> = (0..auto.len()).collect();
    for _ in 0..q {
        out.push(cur.clone());
        cur = cur.iter().map(|&x| auto[x]).collect();
    }
    out
}

impl FiniteGroup {
    /// `ℤ_n` with `i · j = (i + j) mod n`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1, "cyclic group needs n >= 1");
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(((i + j) % n) as u32);
            }
        }
        let inverses = (0..n).map(|i| ((n - i) % n) as u32).collect();
        FiniteGroup {
            order: n,
            table,
            identity: 0,
            inverses,
            label: Some(format!("Z{n}")),
        }
    }

    /// `G × H` with `(g, h)` stored at index `g·|H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
        let trivial: Vec<Vec<Element>> = vec![(0..g.order).collect(); h.order];
        let mut out = Self::semidirect_unchecked(g, h, &trivial, limits)?;
        out.label = match (g.label(), h.label()) {
            (Some(a), Some(b)) => Some(format!("{a}x{b}")),
            _ => None,
        };
        Ok(out)
    }

    /// `N ⋊ H` where `action[h]` is the automorphism of `N` (as an image list)
    /// attached to `h`. Multiplication is `(n₁,h₁)(n₂,h₂) = (n₁·φ_{h₁}(n₂), h₁h₂)`.
    pub fn semidirect_product(
        n: &FiniteGroup,
        h: &FiniteGroup,
        action: &[Vec<Element>],
        limits: &Limits,
    ) -> Result<FiniteGroup> {
        if action.len() != h.order {
            return Err(Error::NotHomomorphism(format!(
                "action has {} entries for a group of order {}",
                action.len(),
                h.order
            )));
        }
        for (x, phi) in action.iter().enumerate() {
            check_automorphism(n, phi).map_err(|e| match e {
                Error::NotAutomorphism(m) => Error::NotAutomorphism(format!("image of {x}: {m}")),
                other => other,
            })?;
        }
        if action[h.identity].iter().enumerate().any(|(i, &y)| i != y) {
            return Err(Error::NotHomomorphism("identity does not act trivially".into()));
        }
        for a in 0..h.order {
            for b in 0..h.order {
                let ab = h.mul(a, b);
                let composed_ok = (0..n.order).all(|x| action[ab][x] == action[a][action[b][x]]);
                if !composed_ok {
                    return Err(Error::NotHomomorphism(format!(
                        "φ({a}·{b}) differs from φ({a})∘φ({b})"
                    )));
                }
            }
        }
        Self::semidirect_unchecked(n, h, action, limits)
    }

    fn semidirect_unchecked(
        n: &FiniteGroup,
        h: &FiniteGroup,
        action: &[Vec<Element>],
        limits: &Limits,
    ) -> Result<FiniteGroup> {
        let order = n.order.saturating_mul(h.order);
        if order > limits.max_order {
            return Err(Error::CapExceeded { what: "product order", limit: limits.max_order });
        }
        let hn = h.order;
        let mut table = vec![0u32; order * order];
        for n1 in 0..n.order {
            for h1 in 0..hn {
                let row = (n1 * hn + h1) * order;
                let phi = &action[h1];
                for n2 in 0..n.order {
                    let nn = n.mul(n1, phi[n2]);
                    for h2 in 0..hn {
                        table[row + n2 * hn + h2] = (nn * hn + h.mul(h1, h2)) as u32;
                    }
                }
            }
        }
        FiniteGroup::from_flat_trusted(order, table, None, limits)
    }

    /// Closure of permutation generators on `0..degree`.
    ///
    /// Elements are numbered breadth-first from the identity, applying the
    /// generators in the given order on the right.
    pub fn from_permutation_generators(
        degree: usize,
        generators: &[Permutation],
        limits: &Limits,
    ) -> Result<FiniteGroup> {
        for (index, g) in generators.iter().enumerate() {
            if g.degree() != degree || !g.is_bijection() {
                return Err(Error::NotBijection { index, degree });
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        // right[k][i] = index of elements[i] * generators[k]
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
        let mut i = 0;
        while i < elements.len() {
            for (k, g) in generators.iter().enumerate() {
                let y = elements[i].then(g);
                let j = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        if elements.len() >= limits.max_order {
                            return Err(Error::CapExceeded { what: "permutation group order", limit: limits.max_order });
                        }
                        let j = elements.len();
                        index.insert(y.clone(), j);
                        elements.push(y);
                        j
                    }
                };
                right[k].push(j as u32);
            }
            i += 1;
        }
        Self::from_right_action(&right, elements.len(), limits)
    }

    /// Builds the table of a group whose elements `0..order` were discovered
    /// breadth-first from `0` by right multiplication with generators, where
    /// `right[k][x]` is `x · g_k`. Every element other than `0` has a BFS
    /// parent, so `x · y` follows `y`'s word from `x`.
    pub(crate) fn from_right_action(right: &[Vec<u32>], order: usize, limits: &Limits) -> Result<FiniteGroup> {
        // parent[y] = (p, k) with y = p · g_k
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; order];
        let mut seen = vec![false; order];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        let mut bfs = Vec::with_capacity(order);
        while let Some(x) = queue.pop_front() {
            bfs.push(x);
            for (k, r) in right.iter().enumerate() {
                let y = r[x] as usize;
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, k));
                    queue.push_back(y);
                }
            }
        }
        if bfs.len() != order {
            return Err(Error::InvalidTable("generators do not reach every element".into()));
        }
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            table[x * order] = x as u32;
        }
        for &y in bfs.iter().skip(1) {
            let (p, k) = parent[y].unwrap();
            for x in 0..order {
                let xp = table[x * order + p] as usize;
                table[x * order + y] = right[k][xp];
            }
        }
        FiniteGroup::from_flat_trusted(order, table, None, limits)
    }

    /// `G/N` together with the projection `G → G/N`. Cosets are numbered by
    /// their smallest element, so the identity coset comes first when the
    /// identity is element 0.
    pub fn quotient_group(&self, normal: &Subgroup, limits: &Limits) -> Result<(FiniteGroup, Vec<Element>)> {
        if normal.members().capacity() != self.order {
            return Err(Error::NotSubgroup("subgroup belongs to a group of different order".into()));
        }
        if !crate::lattice::is_normal(self, normal)? {
            return Err(Error::NotNormal);
        }
        let members: Vec<Element> = normal.members().to_vec();
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &m in &members {
                coset_of[self.mul(g, m)] = c;
            }
        }
        let k = reps.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b)] as u32);
            }
        }
        let quotient = FiniteGroup::from_flat_trusted(k, table, None, limits)?;
        Ok((quotient, coset_of))
    }
}

/// Verifies that `phi` (an image list) is a bijective endomorphism of `g`.
pub(crate) fn check_automorphism(g: &FiniteGroup, phi: &[Element]) -> Result<()> {
    if phi.len() != g.order {
        return Err(Error::NotAutomorphism(format!("expected {} images, got {}", g.order, phi.len())));
    }
    let mut hit = BitSet::new(g.order);
    for &y in phi {
        if y >= g.order || !hit.insert(y) {
            return Err(Error::NotAutomorphism("not a bijection".into()));
        }
    }
    for a in 0..g.order {
        for b in 0..g.order {
            if phi[g.mul(a, b)] != g.mul(phi[a], phi[b]) {
                return Err(Error::NotAutomorphism(format!("not multiplicative at ({a}, {b})")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn cycle(degree: usize, c: &[usize]) -> Permutation {
        Permutation::from_cycles(degree, &[c]).unwrap()
    }

    #[test]
    fn symmetric_group_on_three_points() {
        let g = FiniteGroup::from_permutation_generators(3, &[cycle(3, &[0, 1, 2]), cycle(3, &[0, 1])], &lim()).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert!(!g.is_abelian());
    }

    #[test]
    fn five_cycle_and_three_cycle_give_order_sixty() {
        let g = FiniteGroup::from_permutation_generators(
            5,
            &[cycle(5, &[0, 1, 2, 3, 4]), cycle(5, &[0, 1, 2])],
            &lim(),
        )
        .unwrap();
        assert_eq!(g.order(), 60);
    }

    #[test]
    fn identity_generator_gives_trivial_group() {
        let g = FiniteGroup::from_permutation_generators(4, &[Permutation::identity(4)], &lim()).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn permutation_errors() {
        let bad = Permutation(vec![0, 0, 1]);
        assert!(matches!(
            FiniteGroup::from_permutation_generators(3, &[bad], &lim()),
            Err(Error::NotBijection { index: 0, .. })
        ));
        let small = Limits { max_order: 5, ..lim() };
        assert!(matches!(
            FiniteGroup::from_permutation_generators(3, &[cycle(3, &[0, 1, 2]), cycle(3, &[0, 1])], &small),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn klein_four_and_exponents() {
        let z2 = FiniteGroup::cyclic(2);
        let v = FiniteGroup::direct_product(&z2, &z2, &lim()).unwrap();
        assert_eq!(v.element_orders().iter().filter(|&&k| k == 2).count(), 3);
        let z4z2 = FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &z2, &lim()).unwrap();
        assert_eq!(z4z2.order(), 8);
        assert_eq!(*z4z2.element_orders().iter().max().unwrap(), 4);
        let z2z3 = FiniteGroup::direct_product(&z2, &FiniteGroup::cyclic(3), &lim()).unwrap();
        assert!(z2z3.is_cyclic());
    }

    #[test]
    fn semidirect_inversion_is_s3() {
        let z3 = FiniteGroup::cyclic(3);
        let z2 = FiniteGroup::cyclic(2);
        let action = cyclic_action(&[0, 2, 1], 2);
        let g = FiniteGroup::semidirect_product(&z3, &z2, &action, &lim()).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn trivial_action_matches_direct_product_table() {
        let a = FiniteGroup::cyclic(4);
        let b = FiniteGroup::cyclic(3);
        let action = vec![(0..4).collect::<Vec<_>>(); 3];
        let s = FiniteGroup::semidirect_product(&a, &b, &action, &lim()).unwrap();
        let d = FiniteGroup::direct_product(&a, &b, &lim()).unwrap();
        assert_eq!(s.rows(), d.rows());
    }

    #[test]
    fn semidirect_rejects_bad_actions() {
        let z3 = FiniteGroup::cyclic(3);
        let z2 = FiniteGroup::cyclic(2);
        // not an automorphism
        let not_auto = vec![vec![0, 1, 2], vec![0, 0, 1]];
        assert!(matches!(
            FiniteGroup::semidirect_product(&z3, &z2, &not_auto, &lim()),
            Err(Error::NotAutomorphism(_))
        ));
        // inversion attached to the identity
        let wrong_identity = vec![vec![0, 2, 1], vec![0, 1, 2]];
        assert!(matches!(
            FiniteGroup::semidirect_product(&z3, &z2, &wrong_identity, &lim()),
            Err(Error::NotHomomorphism(_))
        ));
        // Z3 acting on Z5 by doubling is not a homomorphism (2^3 != 1 mod 5)
        let z5 = FiniteGroup::cyclic(5);
        let dbl: Vec<usize> = (0..5).map(|x| 2 * x % 5).collect();
        let action = cyclic_action(&dbl, 3);
        assert!(matches!(
            FiniteGroup::semidirect_product(&z5, &z3, &action, &lim()),
            Err(Error::NotHomomorphism(_))
        ));
    }
}
