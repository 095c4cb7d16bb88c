//! Reidemeister–Schreier rewriting for normal subgroups with cyclic
//! quotient.
//!
//! Given `G = ⟨S | R⟩`, a distinguished `s ∈ S` and a modulus `k`, the
//! subgroup `H` is the normal closure of `S ∖ {s}` together with `s^k`.
//! When `G/H ≅ Z/k` the powers `1, s, …, s^{k−1}` form a Schreier
//! transversal and `H` is generated by the letters `t_j = s^j t s^{−j}`
//! (`t ≠ s`) together with `s_j`, where `s_j = 1` for `j < k − 1` and
//! `s_{k−1} = s^k`.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::coset::{group_order, Decision, EnumerationLimits, Order};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{GenId, Word};

/// A presentation with a distinguished generator and a modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsSetup {
    pub pres: Presentation,
    pub distinguished: GenId,
    pub modulus: u32,
}

impl RsSetup {
    pub fn new(pres: Presentation, distinguished: GenId, modulus: u32) -> Result<Self> {
        if pres.generator_index(&distinguished).is_none() {
            return Err(Error::UnknownGenerator(distinguished.to_string()));
        }
        if modulus == 0 {
            return Err(Error::Constraint("modulus must be positive".into()));
        }
        Ok(RsSetup {
            pres,
            distinguished,
            modulus,
        })
    }

    /// The letter `t_j`, with `j` taken modulo the modulus.
    pub fn letter(&self, t: &GenId, j: i64) -> GenId {
        t.residue_letter(j.rem_euclid(self.modulus.into()) as u32)
    }

    /// All indexed letters: `t_0 … t_{k−1}` for each generator in order.
    pub fn indexed_alphabet(&self) -> Vec<GenId> {
        let mut out = Vec::new();
        for t in self.pres.generators() {
            for j in 0..self.modulus {
                out.push(t.residue_letter(j));
            }
        }
        out
    }

    /// The parent-group word each indexed letter stands for.
    pub fn dictionary(&self) -> BTreeMap<GenId, Word> {
        let s = &self.distinguished;
        let k = self.modulus;
        let mut dict = BTreeMap::new();
        for t in self.pres.generators() {
            for j in 0..k {
                let w = if t == s {
                    if j + 1 < k {
                        Word::empty()
                    } else {
                        Word::power(s, k.into())
                    }
                } else {
                    let sj = Word::power(s, j.into());
                    &(&sj * &Word::gen(t)) * &sj.inverse()
                };
                dict.insert(t.residue_letter(j), w);
            }
        }
        dict
    }

    /// Rewrites `w` read from coset `start`, returning the indexed word
    /// and the coset reached.
    fn rewrite_from(&self, w: &Word, start: i64) -> (Word, i64) {
        let k = i64::from(self.modulus);
        let s = &self.distinguished;
        let mut j = start.rem_euclid(k);
        let mut out = Word::empty();
        for (g, sign) in w.letters() {
            let is_s = g == s;
            if sign > 0 {
                out.push(&self.letter(g, j), 1);
                if is_s {
                    j = (j + 1).rem_euclid(k);
                }
            } else {
                if is_s {
                    j = (j - 1).rem_euclid(k);
                }
                out.push(&self.letter(g, j), -1);
            }
        }
        (out, j)
    }
}

/// Adds `S ∖ {s}` and `s^k` as relators and asks whether the quotient
/// has order exactly `k`.
pub fn cyclic_quotient_check(setup: &RsSetup, limits: EnumerationLimits) -> Decision {
    let s = &setup.distinguished;
    let extra: Vec<Word> = setup
        .pres
        .generators()
        .iter()
        .filter(|g| *g != s)
        .map(Word::gen)
        .chain(std::iter::once(Word::power(s, setup.modulus.into())))
        .collect();
    let q = setup
        .pres
        .with_relators(extra)
        .expect("words over the alphabet");
    match group_order(&q, limits) {
        Order::Finite(n) => (n == u64::from(setup.modulus)).into(),
        Order::Unknown => Decision::Unknown,
    }
}

/// The rewriting of `s^p · relator · s^{−p}` over the indexed alphabet.
pub fn tau_rewrite(relator: &Word, setup: &RsSetup, shift: i64) -> Word {
    let sp = Word::power(&setup.distinguished, shift);
    let conj = Word::from_pairs(
        sp.syllables()
            .iter()
            .chain(relator.syllables())
            .chain(sp.inverse().syllables())
            .map(|s| (s.gen.clone(), s.exp)),
    );
    setup.rewrite_from(&conj, 0).0
}

/// Rewrites the relation `lhs = rhs` read from coset `shift`, without the
/// transversal prefix. Both sides must be positive words with the same
/// number of occurrences of the distinguished generator.
pub fn balanced_rewrite(
    lhs: &Word,
    rhs: &Word,
    setup: &RsSetup,
    shift: i64,
) -> Result<(Word, Word)> {
    if !lhs.is_positive() || !rhs.is_positive() {
        return Err(Error::Constraint("balanced rewriting needs positive words".into()));
    }
    let s = &setup.distinguished;
    if lhs.exponent_sum(s) != rhs.exponent_sum(s) {
        return Err(Error::Constraint(format!(
            "sides contain {} and {} occurrences of {s}",
            lhs.exponent_sum(s),
            rhs.exponent_sum(s)
        )));
    }
    Ok((
        setup.rewrite_from(lhs, shift).0,
        setup.rewrite_from(rhs, shift).0,
    ))
}

/// A subgroup presentation together with the meaning of its letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsResult {
    pub presentation: Presentation,
    /// Indexed letter ↦ word in the parent generators.
    pub dictionary: BTreeMap<GenId, Word>,
}

#[derive(Serialize)]
struct RsResultJson {
    presentation: serde_json::Value,
    dictionary: BTreeMap<String, Word>,
}

impl RsResult {
    pub fn to_json(&self) -> String {
        let v = RsResultJson {
            presentation: serde_json::from_str(&self.presentation.to_json())
                .expect("valid json"),
            dictionary: self
                .dictionary
                .iter()
                .map(|(g, w)| (g.to_string(), w.clone()))
                .collect(),
        };
        serde_json::to_string(&v).expect("serializable")
    }
}

/// The Reidemeister–Schreier presentation of the subgroup, before
/// simplification.
///
/// Relators are `s_i` for `i ≤ k − 2` followed by `τ(s^j r s^{−j})` for
/// each relator `r` and `j = 0 … k−1`, with exact duplicates removed.
pub fn subgroup_presentation(setup: &RsSetup, limits: EnumerationLimits) -> Result<RsResult> {
    match cyclic_quotient_check(setup, limits) {
        Decision::True => {}
        Decision::False => {
            return Err(Error::Precondition(format!(
                "quotient by ⟨⟨S ∖ {{{0}}}, {0}^{1}⟩⟩ is not cyclic of order {1}",
                setup.distinguished, setup.modulus
            )))
        }
        Decision::Unknown => {
            return Err(Error::Precondition(
                "enumeration of the quotient overflowed".into(),
            ))
        }
    }
    let mut pres = Presentation::new(setup.indexed_alphabet())?;
    let mut seen = HashSet::new();
    let mut push = |pres: &mut Presentation, w: Word| -> Result<()> {
        if !w.is_empty() && seen.insert(w.clone()) {
            pres.add_relator(w)?;
        }
        Ok(())
    };
    for i in 0..setup.modulus.saturating_sub(1) {
        push(&mut pres, Word::gen(&setup.distinguished.residue_letter(i)))?;
    }
    for r in setup.pres.relators() {
        for j in 0..setup.modulus {
            push(&mut pres, tau_rewrite(r, setup, j.into()))?;
        }
    }
    Ok(RsResult {
        presentation: pres,
        dictionary: setup.dictionary(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commuting_pair(n: u32) -> RsSetup {
        let (a, b) = (GenId::new("a"), GenId::new("b"));
        let mut p = Presentation::new(vec![a.clone(), b.clone()]).unwrap();
        p.add_equality_chain(vec![Word::product([&a, &b]), Word::product([&b, &a])])
            .unwrap();
        RsSetup::new(p, a, n).unwrap()
    }

    fn w(setup_alpha: &[GenId], text: &str) -> Word {
        Word::parse(text, setup_alpha).unwrap()
    }

    #[test]
    fn power_of_distinguished_unfolds() {
        let a = GenId::new("a");
        let p = Presentation::from_relators(vec![a.clone()], vec![Word::power(&a, 4)]).unwrap();
        let setup = RsSetup::new(p, a, 4).unwrap();
        let alpha = setup.indexed_alphabet();
        assert_eq!(
            tau_rewrite(&setup.pres.relators()[0], &setup, 0),
            w(&alpha, "a0a1a2a3")
        );
    }

    #[test]
    fn inverse_letters_track_cosets() {
        let (s, t) = (GenId::new("s"), GenId::new("t"));
        let p = Presentation::new(vec![s.clone(), t.clone()]).unwrap();
        let setup = RsSetup::new(p, s, 2).unwrap();
        let alpha = setup.indexed_alphabet();
        let r = w(&[GenId::new("s"), GenId::new("t")], "tst^-1s^-1");
        assert_eq!(tau_rewrite(&r, &setup, 0), w(&alpha, "t0s0t1^-1s0^-1"));
    }

    #[test]
    fn commutator_rewrites_to_shifted_relation() {
        let n = 5;
        let setup = commuting_pair(n);
        let alpha = setup.indexed_alphabet();
        let r = &setup.pres.relators()[0];
        for i in 0..n as i64 {
            let prefix = Word::product(
                (0..i).map(|j| setup.letter(&GenId::new("a"), j)).collect::<Vec<_>>().iter(),
            );
            let core = w(
                &alpha,
                &format!("a{i}b{}a{i}^-1b{i}^-1", (i + 1) % i64::from(n)),
            );
            let expected = &(&prefix * &core) * &prefix.inverse();
            assert_eq!(tau_rewrite(r, &setup, i), expected);
            let (lhs, rhs) = balanced_rewrite(
                &w(setup.pres.generators(), "ab"),
                &w(setup.pres.generators(), "ba"),
                &setup,
                i,
            )
            .unwrap();
            assert_eq!(lhs, w(&alpha, &format!("a{i}b{}", (i + 1) % i64::from(n))));
            assert_eq!(rhs, w(&alpha, &format!("b{i}a{i}")));
        }
    }

    #[test]
    fn balanced_rejects_unbalanced() {
        let setup = commuting_pair(3);
        let g = setup.pres.generators().to_vec();
        assert!(balanced_rewrite(&w(&g, "ab"), &w(&g, "b"), &setup, 0).is_err());
        assert!(balanced_rewrite(&w(&g, "a^-1b"), &w(&g, "ba^-1"), &setup, 0).is_err());
    }

    #[test]
    fn quotient_check_verdicts() {
        let lim = EnumerationLimits::default();
        assert_eq!(cyclic_quotient_check(&commuting_pair(4), lim), Decision::True);
        let a = GenId::new("a");
        let p = Presentation::from_relators(vec![a.clone()], vec![Word::power(&a, 2)]).unwrap();
        let setup = RsSetup::new(p, a, 3).unwrap();
        assert_eq!(cyclic_quotient_check(&setup, lim), Decision::False);
        assert!(matches!(
            subgroup_presentation(&setup, lim),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn index_two_in_cyclic_four() {
        let a = GenId::new("a");
        let p = Presentation::from_relators(vec![a.clone()], vec![Word::power(&a, 4)]).unwrap();
        let setup = RsSetup::new(p, a, 2).unwrap();
        let res = subgroup_presentation(&setup, EnumerationLimits::default()).unwrap();
        let alpha = setup.indexed_alphabet();
        assert_eq!(res.presentation.generators(), &alpha[..]);
        assert_eq!(
            res.presentation.relators(),
            &[w(&alpha, "a0"), w(&alpha, "a0a1a0a1")]
        );
        assert_eq!(res.dictionary[&alpha[1]], w(&[GenId::new("a")], "a^2"));
        assert!(res.dictionary[&alpha[0]].is_empty());
    }

    #[test]
    fn dictionary_conjugates() {
        let setup = commuting_pair(3);
        let d = setup.dictionary();
        let g = setup.pres.generators().to_vec();
        assert_eq!(d[&GenId::indexed("b", 2)], w(&g, "a^2ba^-2"));
        assert_eq!(d[&GenId::indexed("a", 2)], w(&g, "a^3"));
    }
}
