//! A small deterministic Tietze simplifier.
//!
//! Moves, repeated until nothing changes or the budget runs out:
//! cyclic reduction of relators, removal of empty relators, removal of
//! relators equal to another up to rotation and inversion, and elimination
//! of a generator that occurs exactly once, with exponent ±1, in some
//! relator.
//!
//! When several eliminations are possible the shortest relator wins, then
//! the generator declared last, then the earliest relator. Eliminating
//! late generators first keeps the low-numbered letters of a rewritten
//! presentation, which is the form the worked examples use.

use std::collections::{BTreeMap, HashSet};

use crate::presentation::Presentation;
use crate::word::{GenId, Word};

/// Limits for [`tietze_simplify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TietzeBudget {
    /// Maximum number of generator eliminations.
    pub max_rounds: usize,
    /// An elimination is skipped if it would push the total relator
    /// length above this bound.
    pub max_total_length: u64,
}

impl Default for TietzeBudget {
    fn default() -> Self {
        TietzeBudget {
            max_rounds: 10_000,
            max_total_length: 1_000_000,
        }
    }
}

/// Result of [`tietze_simplify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: Presentation,
    /// Eliminated generator ↦ its value in the surviving generators.
    pub eliminated: BTreeMap<GenId, Word>,
    /// True when the budget stopped the simplification early.
    pub exhausted: bool,
}

/// Canonical representative of the cyclic word of `w` up to rotation and
/// inversion, as a letter sequence.
fn cyclic_key(w: &Word, index: &BTreeMap<&GenId, usize>) -> Vec<i64> {
    let encode = |w: &Word| -> Vec<i64> {
        w.letters()
            .map(|(g, sign)| (index[g] as i64 + 1) * sign)
            .collect()
    };
    let fwd = encode(w);
    let bwd = encode(&w.inverse());
    let n = fwd.len();
    let mut best: Option<Vec<i64>> = None;
    for seq in [&fwd, &bwd] {
        for r in 0..n {
            let rot: Vec<i64> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Cyclically reduces, drops empty relators and removes duplicates up to
/// rotation and inversion, keeping first occurrences.
fn tidy(gens: &[GenId], rels: Vec<Word>) -> Vec<Word> {
    let index: BTreeMap<&GenId, usize> = gens.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in rels {
        let r = r.cyclically_reduced();
        if r.is_empty() {
            continue;
        }
        if seen.insert(cyclic_key(&r, &index)) {
            out.push(r);
        }
    }
    out
}

/// If `g` occurs exactly once in `r`, with exponent ±1, returns the word
/// `g` equals by virtue of `r = 1`.
fn solve_for(r: &Word, g: &GenId) -> Option<Word> {
    let syl = r.syllables();
    let mut pos = None;
    for (i, s) in syl.iter().enumerate() {
        if &s.gen == g {
            if pos.is_some() || s.exp.abs() != 1 {
                return None;
            }
            pos = Some(i);
        }
    }
    let i = pos?;
    let eps = syl[i].exp;
    // r is conjugate to g^eps · rest, so g = rest^(-eps).
    let rest = Word::from_pairs(
        syl[i + 1..]
            .iter()
            .chain(&syl[..i])
            .map(|s| (s.gen.clone(), s.exp)),
    );
    Some(rest.pow(-eps))
}

/// Applies Tietze moves to fixpoint or until the budget is spent.
pub fn tietze_simplify(pres: &Presentation, budget: TietzeBudget) -> Simplified {
    let mut gens: Vec<GenId> = pres.generators().to_vec();
    let mut rels = tidy(&gens, pres.relators().to_vec());
    let mut eliminated: BTreeMap<GenId, Word> = BTreeMap::new();
    let mut exhausted = false;
    let mut rounds = 0;

    loop {
        // Candidates ordered by (relator length, later generator first,
        // relator index).
        let mut candidates: Vec<(u64, usize, usize)> = Vec::new();
        for (ri, r) in rels.iter().enumerate() {
            for g in r.generators() {
                if solve_for(r, g).is_some() {
                    let gi = gens.iter().position(|h| h == g).expect("in alphabet");
                    candidates.push((r.len(), usize::MAX - gi, ri));
                }
            }
        }
        candidates.sort_unstable();
        let current: u64 = rels.iter().map(Word::len).sum();
        let mut applied = false;
        for &(_, inv_gi, ri) in &candidates {
            if rounds >= budget.max_rounds {
                exhausted = true;
                break;
            }
            let g = gens[usize::MAX - inv_gi].clone();
            let value = solve_for(&rels[ri], &g).expect("candidate");
            let images: BTreeMap<GenId, Word> = gens
                .iter()
                .map(|h| {
                    let w = if *h == g { value.clone() } else { Word::gen(h) };
                    (h.clone(), w)
                })
                .collect();
            let new_rels: Vec<Word> = rels
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != ri)
                .map(|(_, r)| r.substitute(&images).expect("total map"))
                .collect();
            let new_len: u64 = new_rels.iter().map(Word::len).sum();
            if new_len > budget.max_total_length && new_len > current {
                exhausted = true;
                continue;
            }
            for w in eliminated.values_mut() {
                *w = w.substitute(&images).expect("total map");
            }
            eliminated.insert(g.clone(), value);
            gens.retain(|h| *h != g);
            rels = tidy(&gens, new_rels);
            rounds += 1;
            applied = true;
            break;
        }
        if !applied {
            break;
        }
    }

    let presentation =
        Presentation::from_relators(gens, rels).expect("relators stay in the alphabet");
    Simplified {
        presentation,
        eliminated,
        exhausted,
    }
}
