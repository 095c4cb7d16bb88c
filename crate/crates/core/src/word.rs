//! Free-group words over symbolic generator alphabets.
//!
//! A [`Word`] is always stored in freely reduced form: adjacent syllables
//! carry distinct generators and no exponent is zero. Equality of words is
//! therefore equality in the free group.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator symbol: a base name with an optional decimal index.
///
/// `x1` has base `x` and index `1`; `s` has no index. Indexed letters
/// produced by rewriting an already indexed generator get a base ending in
/// `_` (`x1` rewritten at residue 3 becomes `x1_3`), so the textual form
/// always parses back to the same value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenId {
    base: String,
    index: Option<u32>,
}

fn valid_base(base: &str) -> bool {
    !base.is_empty()
        && !base.ends_with(|c: char| c.is_ascii_digit())
        && base.chars().all(|c| c.is_alphanumeric() || c == '_')
        && !base.starts_with(|c: char| c.is_ascii_digit())
}

impl GenId {
    /// A plain generator such as `s` or `y`.
    ///
    /// Panics if `base` is not a valid base name; use [`GenId::parse`] for
    /// untrusted input.
    pub fn new(base: &str) -> Self {
        assert!(valid_base(base), "invalid generator base {base:?}");
        GenId {
            base: base.to_string(),
            index: None,
        }
    }

    /// An indexed generator such as `x3`.
    pub fn indexed(base: &str, index: u32) -> Self {
        assert!(valid_base(base), "invalid generator base {base:?}");
        GenId {
            base: base.to_string(),
            index: Some(index),
        }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn index(&self) -> Option<u32> {
        self.index
    }

    /// Parses `name` per the generator grammar: a base of letters, digits
    /// and underscores that does not end in a digit, optionally followed
    /// by a decimal index without leading zeros.
    pub fn parse(name: &str) -> Result<Self> {
        let split = name
            .char_indices()
            .rev()
            .take_while(|(_, c)| c.is_ascii_digit())
            .last()
            .map(|(i, _)| i)
            .unwrap_or(name.len());
        let (base, digits) = name.split_at(split);
        if !valid_base(base) {
            return Err(Error::Parse(format!("invalid generator name {name:?}")));
        }
        if digits.is_empty() {
            return Ok(GenId::new(base));
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(Error::Parse(format!(
                "generator index with leading zero in {name:?}"
            )));
        }
        let index = digits
            .parse()
            .map_err(|_| Error::Parse(format!("generator index out of range in {name:?}")))?;
        Ok(GenId::indexed(base, index))
    }

    /// The letter standing for `self` at residue `j` of a cyclic rewriting.
    pub fn residue_letter(&self, j: u32) -> GenId {
        match self.index {
            None => GenId::indexed(&self.base, j),
            Some(i) => GenId::indexed(&format!("{}{}_", self.base, i), j),
        }
    }
}

impl fmt::Display for GenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}{}", self.base, i),
            None => f.write_str(&self.base),
        }
    }
}

impl FromStr for GenId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GenId::parse(s)
    }
}

impl Serialize for GenId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GenId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        GenId::parse(&name).map_err(D::Error::custom)
    }
}

/// One maximal block `gen^exp` of a word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Syllable {
    pub gen: GenId,
    pub exp: i64,
}

/// A freely reduced word in the free group on [`GenId`]s.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn gen(g: &GenId) -> Self {
        Word::power(g, 1)
    }

    pub fn power(g: &GenId, exp: i64) -> Self {
        let mut w = Word::empty();
        w.push(g, exp);
        w
    }

    /// Builds a word from arbitrary `(generator, exponent)` pairs, reducing
    /// as it goes.
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (GenId, i64)>,
    {
        let mut w = Word::empty();
        for (g, e) in pairs {
            w.push(&g, e);
        }
        w
    }

    /// Product of the given generators, each to the first power.
    pub fn product<'a, I>(gens: I) -> Self
    where
        I: IntoIterator<Item = &'a GenId>,
    {
        let mut w = Word::empty();
        for g in gens {
            w.push(g, 1);
        }
        w
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Length as a sequence of letters, the sum of `|exp|`.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    /// Appends `g^exp`, merging with or cancelling against the last syllable.
    pub fn push(&mut self, g: &GenId, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.syllables.last_mut() {
            if &last.gen == g {
                last.exp += exp;
                if last.exp == 0 {
                    self.syllables.pop();
                }
                return;
            }
        }
        self.syllables.push(Syllable {
            gen: g.clone(),
            exp,
        });
    }

    /// Appends `other` in place, reducing at the seam.
    pub fn append(&mut self, other: &Word) {
        for s in &other.syllables {
            self.push(&s.gen, s.exp);
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    gen: s.gen.clone(),
                    exp: -s.exp,
                })
                .collect(),
        }
    }

    /// `self^e` for any integer `e`.
    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..e.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// Sum of the exponents of `g`.
    pub fn exponent_sum(&self, g: &GenId) -> i64 {
        self.syllables
            .iter()
            .filter(|s| &s.gen == g)
            .map(|s| s.exp)
            .sum()
    }

    /// Every generator occurring in the word, in order of first appearance.
    pub fn generators(&self) -> Vec<&GenId> {
        let mut seen: Vec<&GenId> = Vec::new();
        for s in &self.syllables {
            if !seen.contains(&&s.gen) {
                seen.push(&s.gen);
            }
        }
        seen
    }

    /// The word letter by letter, as `(generator, ±1)`.
    pub fn letters(&self) -> impl Iterator<Item = (&GenId, i64)> + '_ {
        self.syllables.iter().flat_map(|s| {
            let sign = s.exp.signum();
            std::iter::repeat_n((&s.gen, sign), s.exp.unsigned_abs() as usize)
        })
    }

    pub fn is_positive(&self) -> bool {
        self.syllables.iter().all(|s| s.exp > 0)
    }

    /// Removes matching prefix/suffix pairs `g^a ... g^b` so that the first
    /// and last syllables carry different generators. The result is a
    /// conjugate of `self`.
    pub fn cyclically_reduced(&self) -> Word {
        let mut syl = self.syllables.clone();
        loop {
            if syl.len() < 2 {
                return Word { syllables: syl };
            }
            let last = syl.len() - 1;
            if syl[0].gen != syl[last].gen {
                return Word { syllables: syl };
            }
            let e = syl[0].exp + syl[last].exp;
            syl.pop();
            if e == 0 {
                syl.remove(0);
            } else {
                syl[0].exp = e;
            }
        }
    }

    /// Replaces every generator by its image and reduces.
    pub fn substitute(&self, images: &BTreeMap<GenId, Word>) -> Result<Word> {
        let mut out = Word::empty();
        for s in &self.syllables {
            let image = images
                .get(&s.gen)
                .ok_or_else(|| Error::MissingImage(s.gen.to_string()))?;
            out.append(&image.pow(s.exp));
        }
        Ok(out)
    }

    /// Parses a word against a known alphabet. Accepts `1` for the empty
    /// word, optional `*` or whitespace separators, exponents written
    /// `g^e`, and parenthesised groups `(…)^e`. Generator names are matched
    /// longest first, so `x1x2` reads as `x1 x2`.
    pub fn parse(text: &str, alphabet: &[GenId]) -> Result<Word> {
        let mut names: Vec<(String, &GenId)> =
            alphabet.iter().map(|g| (g.to_string(), g)).collect();
        names.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let w = parse_seq(&chars, &mut pos, &names)?;
        skip_ws(&chars, &mut pos);
        if pos != chars.len() {
            return Err(Error::Parse(format!(
                "unexpected {:?} at offset {pos} in word {text:?}",
                chars[pos]
            )));
        }
        Ok(w)
    }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && (chars[*pos].is_whitespace() || chars[*pos] == '*') {
        *pos += 1;
    }
}

fn parse_exp(chars: &[char], pos: &mut usize) -> Result<i64> {
    if *pos < chars.len() && chars[*pos] == '^' {
        *pos += 1;
        let start = *pos;
        if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
            *pos += 1;
        }
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        let s: String = chars[start..*pos].iter().collect();
        s.parse()
            .map_err(|_| Error::Parse(format!("bad exponent {s:?}")))
    } else {
        Ok(1)
    }
}

fn parse_seq(chars: &[char], pos: &mut usize, names: &[(String, &GenId)]) -> Result<Word> {
    let mut w = Word::empty();
    loop {
        skip_ws(chars, pos);
        if *pos >= chars.len() || chars[*pos] == ')' {
            return Ok(w);
        }
        if chars[*pos] == '(' {
            *pos += 1;
            let inner = parse_seq(chars, pos, names)?;
            if *pos >= chars.len() || chars[*pos] != ')' {
                return Err(Error::Parse("unbalanced parenthesis".into()));
            }
            *pos += 1;
            let e = parse_exp(chars, pos)?;
            w.append(&inner.pow(e));
            continue;
        }
        if chars[*pos] == '1' {
            *pos += 1;
            continue;
        }
        let rest: String = chars[*pos..].iter().collect();
        let (name, g) = names
            .iter()
            .find(|(n, _)| rest.starts_with(n.as_str()))
            .ok_or_else(|| Error::Parse(format!("unknown generator at {rest:?}")))?;
        *pos += name.chars().count();
        let e = parse_exp(chars, pos)?;
        w.push(g, e);
    }
}

impl fmt::Display for Word {
    /// Concatenated syllables, `x1x2^-1y^3`; the empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for s in &self.syllables {
            if s.exp == 1 {
                write!(f, "{}", s.gen)?;
            } else {
                write!(f, "{}^{}", s.gen, s.exp)?;
            }
        }
        Ok(())
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        reduce_concat(self, rhs)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.syllables.len()))?;
        for syl in &self.syllables {
            seq.serialize_element(&(&syl.gen, syl.exp))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(GenId, i64)> = Vec::deserialize(d)?;
        Ok(Word::from_pairs(pairs))
    }
}

/// The freely reduced product `w1 · w2`.
pub fn reduce_concat(w1: &Word, w2: &Word) -> Word {
    let mut out = w1.clone();
    out.append(w2);
    out
}

pub fn invert(w: &Word) -> Word {
    w.inverse()
}

/// Syllable-wise substitution followed by free reduction.
pub fn substitute(w: &Word, images: &BTreeMap<GenId, Word>) -> Result<Word> {
    w.substitute(images)
}

/// The alternating word `g0 g1 g0 …` with `k` letters.
pub fn pi_word(k: usize, g0: &GenId, g1: &GenId) -> Result<Word> {
    if g0 == g1 {
        return Err(Error::Constraint(
            "alternating word needs two distinct generators".into(),
        ));
    }
    let mut w = Word::empty();
    for i in 0..k {
        w.push(if i % 2 == 0 { g0 } else { g1 }, 1);
    }
    Ok(w)
}
