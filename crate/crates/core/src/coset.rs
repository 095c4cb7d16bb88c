//! Todd–Coxeter coset enumeration (HLT strategy) and the queries built on
//! the resulting regular representation.
//!
//! Generator `g` with index `i` owns table columns `2i` (for `g`) and
//! `2i + 1` (for `g⁻¹`). Cosets are numbered from 0 internally; coset 0
//! is the subgroup itself. The JSON export numbers them from 1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::presentation::Presentation;
use crate::word::{GenId, Word};

const NONE: u32 = u32::MAX;

/// Resource limits for one enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationLimits {
    /// Upper bound on simultaneously live cosets.
    pub max_cosets: usize,
    /// Upper bound on the total number of coset definitions.
    pub max_steps: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_cosets: 200_000,
            max_steps: 20_000_000,
        }
    }
}

impl EnumerationLimits {
    pub fn with_max_cosets(max_cosets: usize) -> Self {
        EnumerationLimits {
            max_cosets,
            ..Default::default()
        }
    }
}

/// Outcome of a finiteness-sensitive computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    Finite(u64),
    /// Enumeration hit its limits. Says nothing about finiteness.
    Unknown,
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Unknown => None,
        }
    }
}

/// A yes/no answer that may be unavailable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decision {
    True,
    False,
    Unknown,
}

impl From<bool> for Decision {
    fn from(b: bool) -> Self {
        if b {
            Decision::True
        } else {
            Decision::False
        }
    }
}

/// A complete coset table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generators: Vec<GenId>,
    /// Row-major, `2 · generators.len()` columns.
    entries: Vec<u32>,
}

impl CosetTable {
    pub fn generators(&self) -> &[GenId] {
        &self.generators
    }

    pub fn num_cosets(&self) -> usize {
        if self.generators.is_empty() {
            1
        } else {
            self.entries.len() / (2 * self.generators.len())
        }
    }

    fn cols(&self) -> usize {
        2 * self.generators.len()
    }

    /// The coset reached from `coset` by the column `col`.
    pub fn action(&self, coset: usize, col: usize) -> u32 {
        self.entries[coset * self.cols() + col]
    }

    fn col_of(&self, g: &GenId, exp_sign: i64) -> Result<usize> {
        let i = self
            .generators
            .iter()
            .position(|h| h == g)
            .ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
        Ok(2 * i + usize::from(exp_sign < 0))
    }

    /// The coset `coset · w`.
    pub fn trace(&self, coset: usize, w: &Word) -> Result<usize> {
        let mut c = coset;
        for s in w.syllables() {
            let col = self.col_of(&s.gen, s.exp)?;
            for _ in 0..s.exp.unsigned_abs() {
                c = self.action(c, col) as usize;
            }
        }
        Ok(c)
    }

    /// Right action of generator `g` as a permutation of cosets.
    pub fn permutation(&self, g: &GenId) -> Result<Perm> {
        let col = self.col_of(g, 1)?;
        let images = (0..self.num_cosets()).map(|c| self.action(c, col)).collect();
        Perm::from_images(images).ok_or(Error::IncompleteTable)
    }

    /// Checks that every relator traces to the identity from every coset
    /// and that inverse columns really invert.
    pub fn is_consistent(&self, pres: &Presentation) -> bool {
        let n = self.num_cosets();
        for c in 0..n {
            for col in 0..self.cols() {
                let d = self.action(c, col);
                if d as usize >= n || self.action(d as usize, col ^ 1) as usize != c {
                    return false;
                }
            }
            for r in pres.relators() {
                if self.trace(c, r).ok() != Some(c) {
                    return false;
                }
            }
        }
        true
    }

    /// `{"generators": [...], "table": [[g1, g1⁻¹, g2, …], …]}` with cosets
    /// numbered from 1.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<u32>> = (0..self.num_cosets())
            .map(|c| (0..self.cols()).map(|col| self.action(c, col) + 1).collect())
            .collect();
        serde_json::json!({
            "generators": self.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "table": rows,
        })
    }
}

/// Result of [`todd_coxeter`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Complete(CosetTable),
    Overflow,
}

struct Overflowed;

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    defined: u64,
    queue: Vec<u32>,
    limits: EnumerationLimits,
}

impl Enumerator {
    fn new(cols: usize, limits: EnumerationLimits) -> Self {
        Enumerator {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            live: 1,
            defined: 0,
            queue: Vec::new(),
            limits,
        }
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.cols + col] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> std::result::Result<(), Overflowed> {
        if self.live >= self.limits.max_cosets || self.defined >= self.limits.max_steps {
            return Err(Overflowed);
        }
        let d = self.allocated() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        self.defined += 1;
        self.set(c, col, d);
        self.set(d, col ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let g = self.queue[qi];
            qi += 1;
            for col in 0..self.cols {
                let d = self.get(g, col);
                if d == NONE {
                    continue;
                }
                self.set(d, col ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, col ^ 1);
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, col ^ 1, mu);
                    }
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, a: u32, w: &[usize]) -> std::result::Result<(), Overflowed> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = a;
        let mut b = a;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let next = self.get(f, w[i]);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if (i as isize) > j {
                if f != a {
                    self.coincidence(f, a);
                }
                return Ok(());
            }
            while j >= i as isize {
                let prev = self.get(b, w[j as usize] ^ 1);
                if prev == NONE {
                    break;
                }
                b = prev;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Renumbers live cosets in increasing order, dropping dead rows.
    /// Returns the new number of the first live coset at or after `at`.
    fn compact(&mut self, at: u32) -> u32 {
        let n = self.allocated();
        let mut new_index = vec![NONE; n];
        let mut next = 0u32;
        for c in 0..n as u32 {
            if self.is_live(c) {
                new_index[c as usize] = next;
                next += 1;
            }
        }
        let mut resume = next;
        for c in (at as usize..n).rev() {
            if new_index[c] != NONE {
                resume = new_index[c];
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..n as u32 {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.cols {
                let d = self.get(c, col);
                table.push(if d == NONE {
                    NONE
                } else {
                    let r = self.rep(d);
                    new_index[r as usize]
                });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        resume
    }
}

fn letters(w: &Word, pres: &Presentation) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(w.len() as usize);
    for (g, sign) in w.letters() {
        let i = pres
            .generator_index(g)
            .ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
        out.push(2 * i + usize::from(sign < 0));
    }
    Ok(out)
}

/// Enumerates the right cosets of `⟨subgroup_gens⟩` in the group `pres`.
///
/// The run is deterministic. Errors only if a word uses a letter outside
/// the presentation's alphabet.
pub fn todd_coxeter(
    pres: &Presentation,
    subgroup_gens: &[Word],
    limits: EnumerationLimits,
) -> Result<Enumeration> {
    let cols = 2 * pres.generators().len();
    let mut rels: Vec<Vec<usize>> = pres
        .relators()
        .iter()
        .map(|r| letters(&r.cyclically_reduced(), pres))
        .collect::<Result<_>>()?;
    rels.sort_by_key(Vec::len);
    let subs: Vec<Vec<usize>> = subgroup_gens
        .iter()
        .map(|w| letters(w, pres))
        .collect::<Result<_>>()?;
    if cols == 0 {
        return Ok(Enumeration::Complete(CosetTable {
            generators: Vec::new(),
            entries: Vec::new(),
        }));
    }
    if limits.max_cosets == 0 {
        return Ok(Enumeration::Overflow);
    }

    let mut e = Enumerator::new(cols, limits);
    let run = |e: &mut Enumerator| -> std::result::Result<(), Overflowed> {
        for h in &subs {
            e.scan_and_fill(0, h)?;
        }
        let mut a: u32 = 0;
        while (a as usize) < e.allocated() {
            if e.is_live(a) {
                for r in &rels {
                    e.scan_and_fill(a, r)?;
                    if !e.is_live(a) {
                        break;
                    }
                }
                if e.is_live(a) {
                    for col in 0..cols {
                        if e.get(a, col) == NONE {
                            e.define(a, col)?;
                        }
                    }
                }
            }
            a += 1;
            // Reclaim dead rows once they dominate the table.
            if e.allocated() > 1024 && e.allocated() > 2 * e.live {
                a = e.compact(a);
            }
        }
        Ok(())
    };
    if run(&mut e).is_err() {
        return Ok(Enumeration::Overflow);
    }
    e.compact(0);
    Ok(Enumeration::Complete(CosetTable {
        generators: pres.generators().to_vec(),
        entries: e.table,
    }))
}

/// The order of the group, when enumeration over the trivial subgroup
/// completes.
pub fn group_order(pres: &Presentation, limits: EnumerationLimits) -> Order {
    match todd_coxeter(pres, &[], limits).expect("relators lie in the alphabet") {
        Enumeration::Complete(t) => Order::Finite(t.num_cosets() as u64),
        Enumeration::Overflow => Order::Unknown,
    }
}

/// The order of the quotient by the normal closure of `words`.
pub fn normal_closure_index(
    pres: &Presentation,
    words: &[Word],
    limits: EnumerationLimits,
) -> Result<Order> {
    let q = pres.with_relators(words.iter().cloned())?;
    Ok(group_order(&q, limits))
}

/// Right-multiplication permutations of each generator on the cosets of
/// the trivial subgroup.
pub fn regular_rep(table: &CosetTable) -> Result<BTreeMap<GenId, Perm>> {
    table
        .generators()
        .iter()
        .map(|g| Ok((g.clone(), table.permutation(g)?)))
        .collect()
}

/// A finite group held as its regular permutation representation.
#[derive(Clone, Debug)]
pub struct RegularRep {
    table: CosetTable,
    perms: BTreeMap<GenId, Perm>,
}

impl RegularRep {
    /// Enumerates `pres` over the trivial subgroup. `None` on overflow.
    pub fn build(pres: &Presentation, limits: EnumerationLimits) -> Option<RegularRep> {
        match todd_coxeter(pres, &[], limits).expect("relators lie in the alphabet") {
            Enumeration::Complete(table) => {
                let perms = regular_rep(&table).expect("complete table");
                Some(RegularRep { table, perms })
            }
            Enumeration::Overflow => None,
        }
    }

    pub fn order(&self) -> u64 {
        self.table.num_cosets() as u64
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn generator(&self, g: &GenId) -> Result<&Perm> {
        self.perms
            .get(g)
            .ok_or_else(|| Error::UnknownGenerator(g.to_string()))
    }

    pub fn generators(&self) -> Vec<Perm> {
        self.table
            .generators()
            .iter()
            .map(|g| self.perms[g].clone())
            .collect()
    }

    /// The permutation of a word.
    pub fn eval(&self, w: &Word) -> Result<Perm> {
        let mut p = Perm::identity(self.table.num_cosets());
        for s in w.syllables() {
            p = p.then(&self.generator(&s.gen)?.pow(s.exp));
        }
        Ok(p)
    }

    /// Whether `w` is the identity. The representation is regular, so it
    /// suffices to trace from the subgroup coset.
    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        Ok(self.table.trace(0, w)? == 0)
    }

    pub fn element_order(&self, w: &Word) -> Result<u64> {
        Ok(self.eval(w)?.order())
    }

    pub fn is_central(&self, w: &Word) -> Result<bool> {
        let p = self.eval(w)?;
        Ok(self.perms.values().all(|g| p.commutes_with(g)))
    }
}

/// Order of the element `w`.
pub fn element_order(pres: &Presentation, w: &Word, limits: EnumerationLimits) -> Result<Order> {
    match RegularRep::build(pres, limits) {
        Some(rep) => Ok(Order::Finite(rep.element_order(w)?)),
        None => Ok(Order::Unknown),
    }
}

/// Whether `w` commutes with every generator.
pub fn is_central(pres: &Presentation, w: &Word, limits: EnumerationLimits) -> Result<Decision> {
    match RegularRep::build(pres, limits) {
        Some(rep) => Ok(rep.is_central(w)?.into()),
        None => Ok(Decision::Unknown),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{j_group, triangle_plus};
    use crate::TriangleParams;

    fn cyclic(k: i64) -> Presentation {
        let a = GenId::new("a");
        Presentation::from_relators(vec![a.clone()], vec![Word::power(&a, k)]).unwrap()
    }

    #[test]
    fn cyclic_orders() {
        let lim = EnumerationLimits::default();
        assert_eq!(group_order(&cyclic(5), lim), Order::Finite(5));
        assert_eq!(group_order(&cyclic(1), lim), Order::Finite(1));
        let a2 = Word::power(&GenId::new("a"), 2);
        assert_eq!(
            normal_closure_index(&cyclic(6), &[a2.clone()], lim).unwrap(),
            Order::Finite(2)
        );
        assert_eq!(
            element_order(&cyclic(4), &a2, lim).unwrap(),
            Order::Finite(2)
        );
    }

    #[test]
    fn free_group_overflows() {
        let a = GenId::new("a");
        let free = Presentation::new(vec![a]).unwrap();
        let lim = EnumerationLimits::with_max_cosets(100);
        assert_eq!(group_order(&free, lim), Order::Unknown);
    }

    #[test]
    fn triangle_orders() {
        let lim = EnumerationLimits::default();
        for (k, n, m, order) in [(2, 2, 2, 4), (2, 3, 3, 12), (2, 3, 4, 24), (2, 3, 5, 60)] {
            let t = triangle_plus(&TriangleParams::new(k, n, m).unwrap());
            assert_eq!(group_order(&t, lim), Order::Finite(order), "({k},{n},{m})");
        }
    }

    #[test]
    fn tables_are_consistent() {
        let p = j_group(3, 2, 3);
        match todd_coxeter(&p, &[], EnumerationLimits::default()).unwrap() {
            Enumeration::Complete(t) => {
                assert_eq!(t.num_cosets(), 144);
                assert!(t.is_consistent(&p));
            }
            Enumeration::Overflow => panic!("overflow"),
        }
    }

    #[test]
    fn subgroup_index() {
        let p = j_group(3, 2, 3);
        let subs: Vec<Word> = ["s", "t^2", "u^3"]
            .iter()
            .map(|w| p.parse_word(w).unwrap())
            .collect();
        // t² and u³ are trivial here, so the subgroup is ⟨s⟩ of order 3.
        match todd_coxeter(&p, &subs, EnumerationLimits::default()).unwrap() {
            Enumeration::Complete(t) => assert_eq!(t.num_cosets(), 48),
            Enumeration::Overflow => panic!("overflow"),
        }
        // Its normal closure has index nm = 6.
        assert_eq!(
            normal_closure_index(&p, &subs, EnumerationLimits::default()).unwrap(),
            Order::Finite(6)
        );
    }

    #[test]
    fn centre_of_parent() {
        let p = j_group(3, 2, 3);
        let rep = RegularRep::build(&p, EnumerationLimits::default()).unwrap();
        let stu = p.parse_word("stu").unwrap();
        assert!(rep.is_central(&stu).unwrap());
        assert!(!rep.is_central(&p.parse_word("s").unwrap()).unwrap());
        assert_eq!(rep.element_order(&stu).unwrap(), 12);
        for r in p.relators() {
            assert!(rep.eval(r).unwrap().is_identity());
        }
    }

    #[test]
    fn json_is_one_based() {
        let t = match todd_coxeter(&cyclic(3), &[], EnumerationLimits::default()).unwrap() {
            Enumeration::Complete(t) => t,
            Enumeration::Overflow => panic!(),
        };
        let v = t.to_json();
        assert_eq!(v["table"][0], serde_json::json!([2, 3]));
    }
}
