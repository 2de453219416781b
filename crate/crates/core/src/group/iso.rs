use std::collections::HashMap;

use super::{Element, FiniteGroup};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Witness for `G ≅ H`: `map[g]` is the image of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub map: Vec<Element>,
}

/// Extends generator images to a homomorphism on `⟨gens⟩`.
///
/// Walks the Cayley graph of `⟨gens⟩` breadth-first; returns the image list
/// (with `None` outside the subgroup) or `None` when some edge disagrees,
/// i.e. the assignment does not extend. When `injective` is set, also fails
/// as soon as two elements share an image.
pub fn extend_homomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Element],
    images: &[Element],
    injective: bool,
) -> Option<Vec<Option<Element>>> {
    debug_assert_eq!(gens.len(), images.len());
    let mut map: Vec<Option<Element>> = vec![None; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity()] = Some(h.identity());
    used[h.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        let fx = map[x].unwrap();
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(fx, t);
            match map[y] {
                Some(prev) if prev != fy => return None,
                Some(_) => {}
                None => {
                    if injective && used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    map[y] = Some(fy);
                    queue.push(y);
                }
            }
        }
        i += 1;
    }
    Some(map)
}

pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Isomorphism>> {
    are_isomorphic_with_budget(g, h, Limits::default().iso_budget)
}

/// Backtracking isomorphism test.
///
/// Generators of `G` are assigned images in `H` one at a time; candidates
/// must match the generator's (element order, class size) signature, and
/// after each assignment the partial map is extended over the subgroup
/// generated so far and rejected on the first inconsistency.
pub fn are_isomorphic_with_budget(g: &FiniteGroup, h: &FiniteGroup, budget: u64) -> Result<Option<Isomorphism>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    let sig_g = signatures(g);
    let sig_h = signatures(h);
    let mut hist_g: HashMap<(usize, usize), usize> = HashMap::new();
    let mut hist_h: HashMap<(usize, usize), usize> = HashMap::new();
    sig_g.iter().for_each(|s| *hist_g.entry(*s).or_default() += 1);
    sig_h.iter().for_each(|s| *hist_h.entry(*s).or_default() += 1);
    if hist_g != hist_h {
        return Ok(None);
    }
    if g.is_abelian() != h.is_abelian() {
        return Ok(None);
    }

    let gens = g.generating_set();
    if gens.is_empty() {
        return Ok(Some(Isomorphism { map: vec![h.identity()] }));
    }
    let candidates: Vec<Vec<Element>> = gens
        .iter()
        .map(|&x| h.elements().filter(|&y| sig_h[y] == sig_g[x]).collect())
        .collect();

    let mut search = Search {
        g,
        h,
        gens: &gens,
        candidates: &candidates,
        images: Vec::with_capacity(gens.len()),
        nodes: 0,
        budget,
    };
    match search.extend()? {
        Some(map) => {
            let map: Vec<Element> = map.into_iter().map(|x| x.expect("generators span G")).collect();
            debug_assert!(verify(g, h, &map));
            Ok(Some(Isomorphism { map }))
        }
        None => Ok(None),
    }
}

struct Search<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    gens: &'a [Element],
    candidates: &'a [Vec<Element>],
    images: Vec<Element>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self) -> Result<Option<Vec<Option<Element>>>> {
        let depth = self.images.len();
        for &y in &self.candidates[depth] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudget { budget: self.budget });
            }
            self.images.push(y);
            let partial = extend_homomorphism(self.g, self.h, &self.gens[..=depth], &self.images, true);
            if let Some(map) = partial {
                if depth + 1 == self.gens.len() {
                    return Ok(Some(map));
                }
                if let Some(found) = self.extend()? {
                    return Ok(Some(found));
                }
            }
            self.images.pop();
        }
        Ok(None)
    }
}

fn signatures(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut sig = vec![(0, 0); g.order()];
    for class in g.conjugacy_classes() {
        for &x in &class {
            sig[x] = (g.element_order(x), class.len());
        }
    }
    sig
}

fn verify(g: &FiniteGroup, h: &FiniteGroup, map: &[Element]) -> bool {
    let mut hit = vec![false; h.order()];
    for &y in map {
        if hit[y] {
            return false;
        }
        hit[y] = true;
    }
    g.elements()
        .all(|a| g.elements().all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])))
}
