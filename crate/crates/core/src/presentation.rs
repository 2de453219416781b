//! Finite presentations and Todd-Coxeter coset enumeration over the trivial
//! subgroup, which realizes a presented group by its regular representation.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup};
use crate::limits::Limits;

/// A generator (`+(i+1)`) or inverse generator (`-(i+1)`).
pub type Letter = i32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn new(generator_count: usize, relators: Vec<Vec<Letter>>) -> Result<Self> {
        if generator_count == 0 {
            return Err(Error::MalformedRelator("a presentation needs at least one generator".into()));
        }
        for (i, r) in relators.iter().enumerate() {
            for &l in r {
                if l == 0 || l.unsigned_abs() as usize > generator_count {
                    return Err(Error::MalformedRelator(format!(
                        "relator {i} uses letter {l} outside 1..={generator_count}"
                    )));
                }
            }
        }
        let relators = relators.into_iter().map(free_reduce).filter(|r| !r.is_empty()).collect();
        Ok(Presentation { generator_count, relators })
    }

    /// Builds from relator strings in the text grammar (see [`parse_word`]).
    pub fn from_strs(generator_count: usize, relators: &[&str]) -> Result<Self> {
        let words = relators
            .iter()
            .map(|s| parse_relation(s, generator_count))
            .collect::<Result<Vec<_>>>()?;
        Self::new(generator_count, words)
    }

    /// Parses the presentation text format:
    ///
    /// ```text
    /// gens 2
    /// a3
    /// b2
    /// (ab)2
    /// ```
    ///
    /// The first non-comment line is `gens k`; each following line is one
    /// relator or one relation `u = v` (read as the relator `u v⁻¹`).
    /// Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(Error::Parse { line: 1, message: "empty presentation".into() })?;
        let k = header
            .strip_prefix("gens")
            .and_then(|r| r.trim().parse::<usize>().ok())
            .filter(|&k| (1..=26).contains(&k))
            .ok_or(Error::Parse { line, message: format!("expected `gens k` with 1 <= k <= 26, got {header:?}") })?;
        let mut relators = Vec::new();
        for (line, l) in lines {
            let w = parse_relation(l, k).map_err(|e| Error::Parse { line, message: e.to_string() })?;
            relators.push(w);
        }
        Self::new(k, relators)
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }
}

fn free_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|&l| -l).collect()
}

/// Parses `u` or `u = v` into a relator.
pub fn parse_relation(s: &str, generator_count: usize) -> Result<Vec<Letter>> {
    match s.split_once('=') {
        Some((lhs, rhs)) => {
            let mut w = parse_word(lhs, generator_count)?;
            w.extend(invert(&parse_word(rhs, generator_count)?));
            Ok(w)
        }
        None => parse_word(s, generator_count),
    }
}

/// Word grammar: letters `a..z` are generators, `A..Z` their inverses;
/// parentheses group; a term may be followed by an integer power, written
/// `x3`, `x^3`, `x-2` or `x^-2`. Whitespace is ignored.
pub fn parse_word(s: &str, generator_count: usize) -> Result<Vec<Letter>> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let w = parse_seq(&chars, &mut pos, generator_count)?;
    if pos != chars.len() {
        return Err(Error::MalformedRelator(format!("unexpected {:?} in {s:?}", chars[pos])));
    }
    Ok(w)
}

fn parse_seq(chars: &[char], pos: &mut usize, k: usize) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    while *pos < chars.len() && chars[*pos] != ')' {
        let c = chars[*pos];
        let atom: Vec<Letter> = if c == '(' {
            *pos += 1;
            let inner = parse_seq(chars, pos, k)?;
            if chars.get(*pos) != Some(&')') {
                return Err(Error::MalformedRelator("unbalanced parenthesis".into()));
            }
            *pos += 1;
            inner
        } else if c.is_ascii_lowercase() || c.is_ascii_uppercase() {
            let idx = (c.to_ascii_lowercase() as u8 - b'a') as usize;
            if idx >= k {
                return Err(Error::MalformedRelator(format!("letter {c:?} exceeds {k} generators")));
            }
            *pos += 1;
            let l = idx as Letter + 1;
            vec![if c.is_ascii_uppercase() { -l } else { l }]
        } else {
            return Err(Error::MalformedRelator(format!("unexpected character {c:?}")));
        };
        let power = parse_power(chars, pos)?;
        let base = if power < 0 { invert(&atom) } else { atom };
        for _ in 0..power.unsigned_abs() {
            out.extend_from_slice(&base);
        }
    }
    Ok(out)
}

fn parse_power(chars: &[char], pos: &mut usize) -> Result<i64> {
    let start = *pos;
    if chars.get(*pos) == Some(&'^') {
        *pos += 1;
    }
    let negative = chars.get(*pos) == Some(&'-');
    if negative {
        *pos += 1;
    }
    let digits_start = *pos;
    while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
        *pos += 1;
    }
    if digits_start == *pos {
        if *pos != start {
            return Err(Error::MalformedRelator("exponent marker without digits".into()));
        }
        return Ok(1);
    }
    let n: i64 = chars[digits_start..*pos]
        .iter()
        .collect::<String>()
        .parse()
        .map_err(|_| Error::MalformedRelator("exponent too large".into()))?;
    Ok(if negative { -n } else { n })
}

const NONE: u32 = u32::MAX;

/// HLT coset table with immediate coincidence processing.
struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    relators: Vec<Vec<usize>>,
    queue: VecDeque<usize>,
    limit: usize,
}

#[inline]
fn col_of(l: Letter) -> usize {
    let g = (l.unsigned_abs() - 1) as usize;
    if l > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

#[inline]
fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl CosetTable {
    fn new(p: &Presentation, limit: usize) -> Self {
        let cols = 2 * p.generator_count;
        CosetTable {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            relators: p.relators.iter().map(|r| r.iter().map(|&l| col_of(l)).collect()).collect(),
            queue: VecDeque::new(),
            limit,
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> Option<usize> {
        let v = self.table[c * self.cols + x];
        (v != NONE).then_some(v as usize)
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: Option<usize>) {
        self.table[c * self.cols + x] = v.map_or(NONE, |v| v as u32);
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) {
        let n = self.len();
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.parent.push(n as u32);
        self.set(c, x, Some(n));
        self.set(n, inv_col(x), Some(c));
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut c = c;
        while self.parent[c] as usize != r {
            let next = self.parent[c] as usize;
            self.parent[c] = r as u32;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo as u32;
        self.queue.push_back(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(dead) = self.queue.pop_front() {
            for x in 0..self.cols {
                let Some(d) = self.get(dead, x) else { continue };
                self.set(d, inv_col(x), None);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                if let Some(t) = self.get(mu, x) {
                    let t = self.rep(t);
                    self.merge(nu, t);
                } else if let Some(t) = self.get(nu, inv_col(x)) {
                    let t = self.rep(t);
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, Some(nu));
                    self.set(nu, inv_col(x), Some(mu));
                }
            }
        }
    }

    /// Scans relator `r` at coset `alpha`, filling gaps with new cosets when
    /// `fill` is set and otherwise only recording deductions/coincidences.
    fn scan(&mut self, alpha: usize, r: usize, fill: bool) {
        let word_len = self.relators[r].len();
        let mut f = alpha;
        let mut i = 0usize;
        let mut b = alpha;
        let mut j = word_len as isize - 1;
        loop {
            while (i as isize) <= j {
                match self.get(f, self.relators[r][i]) {
                    Some(t) => {
                        f = t;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i as isize > j {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return;
            }
            while j >= i as isize {
                match self.get(b, inv_col(self.relators[r][j as usize])) {
                    Some(t) => {
                        b = t;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            }
            if j == i as isize {
                let x = self.relators[r][i];
                self.set(f, x, Some(b));
                self.set(b, inv_col(x), Some(f));
                return;
            }
            if !fill {
                return;
            }
            self.define(f, self.relators[r][i]);
        }
    }

    /// Drops dead cosets, renumbering live ones in increasing order. Returns
    /// the new index of `keep`'s representative.
    fn compact(&mut self, keep: usize) -> usize {
        let keep = self.rep(keep);
        let n = self.len();
        let mut new_index = vec![NONE; n];
        let mut next = 0u32;
        for (c, slot) in new_index.iter_mut().enumerate() {
            if self.parent[c] as usize == c {
                *slot = next;
                next += 1;
            }
        }
        let live = next as usize;
        let mut table = vec![NONE; live * self.cols];
        for c in 0..n {
            if new_index[c] == NONE {
                continue;
            }
            let nc = new_index[c] as usize;
            for x in 0..self.cols {
                if let Some(t) = self.get(c, x) {
                    table[nc * self.cols + x] = new_index[t];
                }
            }
        }
        self.table = table;
        self.parent = (0..live as u32).collect();
        new_index[keep] as usize
    }

    fn live_count(&self) -> usize {
        (0..self.len()).filter(|&c| self.is_live(c)).count()
    }

    /// Makes room for `needed` new cosets, first by dropping dead cosets and
    /// then by a lookahead pass that applies every relator without defining.
    fn ensure_room(&mut self, needed: usize, alpha: usize) -> Result<usize> {
        if self.len() + needed <= self.limit {
            return Ok(alpha);
        }
        let mut alpha = self.compact(alpha);
        if self.len() + needed <= self.limit {
            return Ok(alpha);
        }
        for c in 0..self.len() {
            for r in 0..self.relators.len() {
                if self.is_live(c) {
                    self.scan(c, r, false);
                }
            }
        }
        alpha = self.compact(alpha);
        if self.len() + needed <= self.limit {
            Ok(alpha)
        } else {
            Err(Error::CosetOverflow { limit: self.limit })
        }
    }

    fn run(&mut self) -> Result<()> {
        let max_rel = self.relators.iter().map(Vec::len).max().unwrap_or(0);
        let mut alpha = 0;
        while alpha < self.len() {
            if self.is_live(alpha) {
                for r in 0..self.relators.len() {
                    alpha = self.ensure_room(max_rel, alpha)?;
                    self.scan(alpha, r, true);
                    if !self.is_live(alpha) {
                        break;
                    }
                }
                if self.is_live(alpha) {
                    alpha = self.ensure_room(self.cols, alpha)?;
                    for x in 0..self.cols {
                        if self.get(alpha, x).is_none() {
                            self.define(alpha, x);
                        }
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    }
}

/// Enumerates the cosets of the trivial subgroup and returns the presented
/// group in its regular representation.
///
/// Elements are numbered breadth-first from the identity by right
/// multiplication with the generators `a, b, c, …` in order, so the result is
/// deterministic for a given presentation.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize, limits: &Limits) -> Result<FiniteGroup> {
    Ok(todd_coxeter_with_generators(p, max_cosets, limits)?.0)
}

/// As [`todd_coxeter`], also returning the element representing each
/// generator.
pub fn todd_coxeter_with_generators(
    p: &Presentation,
    max_cosets: usize,
    limits: &Limits,
) -> Result<(FiniteGroup, Vec<Element>)> {
    let mut ct = CosetTable::new(p, max_cosets.max(1));
    ct.run()?;
    ct.compact(0);
    let n = ct.len();
    debug_assert_eq!(n, ct.live_count());
    if n > limits.max_order {
        return Err(Error::CapExceeded { what: "group order", limit: limits.max_order });
    }
    let gens = p.generator_count;

    // Renumber cosets breadth-first along generator columns.
    let mut order = vec![NONE; n];
    order[0] = 0;
    let mut bfs = vec![0usize];
    let mut i = 0;
    while i < bfs.len() {
        let c = bfs[i];
        for g in 0..gens {
            let t = ct.get(c, 2 * g).expect("complete coset table");
            if order[t] == NONE {
                order[t] = bfs.len() as u32;
                bfs.push(t);
            }
        }
        i += 1;
    }
    let right: Vec<Vec<u32>> = (0..gens)
        .map(|g| bfs.iter().map(|&c| order[ct.get(c, 2 * g).unwrap()]).collect())
        .collect();

    for (ri, rel) in p.relators.iter().enumerate() {
        for start in 0..n {
            let mut c = start;
            for &l in rel {
                let g = (l.unsigned_abs() - 1) as usize;
                c = if l > 0 {
                    right[g][c] as usize
                } else {
                    right[g].iter().position(|&t| t as usize == c).expect("permutation")
                };
            }
            if c != start {
                return Err(Error::MalformedRelator(format!("relator {ri} does not hold after enumeration")));
            }
        }
    }
    let gens = right.iter().map(|r| r[0] as Element).collect();
    Ok((FiniteGroup::from_right_action(&right, n, limits)?, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tc(gens: usize, rels: &[&str]) -> Result<FiniteGroup> {
        todd_coxeter(&Presentation::from_strs(gens, rels).unwrap(), 20_000, &Limits::default())
    }

    #[test]
    fn parses_powers_groups_and_relations() {
        assert_eq!(parse_word("a3", 1).unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_word("bcB c-4", 3).unwrap(), vec![2, 3, -2, -3, -3, -3, -3]);
        assert_eq!(parse_word("(ab)^2", 2).unwrap(), vec![1, 2, 1, 2]);
        assert_eq!(parse_word("(ab)^-1", 2).unwrap(), vec![-2, -1]);
        assert_eq!(parse_relation("a3 = c3", 3).unwrap(), vec![1, 1, 1, -3, -3, -3]);
        assert!(parse_word("d", 3).is_err());
        assert!(parse_word("(ab", 2).is_err());
        assert!(parse_word("a^", 1).is_err());
    }

    #[test]
    fn text_format() {
        let p = Presentation::parse("# S3\ngens 2\na3\nb2\n(ab)2\n").unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(p.relators().len(), 3);
        assert!(matches!(Presentation::parse("gens x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Presentation::parse("gens 1\na2\nb\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn small_groups() {
        assert_eq!(tc(1, &["a5"]).unwrap().order(), 5);
        let s3 = tc(2, &["a3", "b2", "(ab)2"]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(tc(2, &["a2", "b2", "(ab)2"]).unwrap().order(), 4);
        assert_eq!(tc(2, &["a", "b"]).unwrap().order(), 1);
    }

    #[test]
    fn overflow_is_reported() {
        // ⟨a, b | a², b²⟩ is infinite dihedral.
        let err = tc(2, &["a2", "b2"]).unwrap_err();
        assert!(matches!(err, Error::CosetOverflow { .. }));
    }

    #[test]
    fn deterministic() {
        let a = tc(3, &["a9", "b3", "abAB", "a3 = c3", "bcB = c4", "acA = cB"]).unwrap();
        let b = tc(3, &["a9", "b3", "abAB", "a3 = c3", "bcB = c4", "acA = cB"]).unwrap();
        assert_eq!(a.order(), 81);
        assert_eq!(a.rows(), b.rows());
    }
}
