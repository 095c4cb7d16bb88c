//! Finite presentations with display annotations, and their text, GAP and
//! JSON renderings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{GenId, Word};

/// Groups relators that were written as one multi-sided equality.
///
/// With `sides == None` every listed relator is displayed as equal to 1
/// (`s^2 = t^3 = u^3 = 1`). With `Some(sides)` the chain reads
/// `sides[0] = sides[1] = …` and relator `relators[i]` is
/// `sides[i] · sides[i+1]⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub relators: Vec<usize>,
    pub sides: Option<Vec<Word>>,
}

/// Output formats understood by [`Presentation::render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Gap,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "gap" => Ok(Format::Gap),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// A finite presentation `⟨ generators | relators ⟩`.
///
/// Relators are reduced, nonempty and written over `generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<GenId>,
    relators: Vec<Word>,
    chains: Vec<Chain>,
}

impl Presentation {
    /// A presentation with no relators. Fails on repeated generators.
    pub fn new(generators: Vec<GenId>) -> Result<Self> {
        let distinct: BTreeSet<&GenId> = generators.iter().collect();
        if distinct.len() != generators.len() {
            return Err(Error::Constraint("repeated generator".into()));
        }
        Ok(Presentation {
            generators,
            relators: Vec::new(),
            chains: Vec::new(),
        })
    }

    /// Builds a presentation from bare relators, dropping empty ones.
    pub fn from_relators(generators: Vec<GenId>, relators: Vec<Word>) -> Result<Self> {
        let mut p = Presentation::new(generators)?;
        for r in relators {
            p.add_relator(r)?;
        }
        Ok(p)
    }

    pub fn generators(&self) -> &[GenId] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn generator_index(&self, g: &GenId) -> Option<usize> {
        self.generators.iter().position(|h| h == g)
    }

    fn check_alphabet(&self, w: &Word) -> Result<()> {
        for g in w.generators() {
            if self.generator_index(g).is_none() {
                return Err(Error::UnknownGenerator(g.to_string()));
            }
        }
        Ok(())
    }

    /// Appends a relator. Returns its index, or `None` if it is empty.
    pub fn add_relator(&mut self, r: Word) -> Result<Option<usize>> {
        self.check_alphabet(&r)?;
        if r.is_empty() {
            return Ok(None);
        }
        self.relators.push(r);
        Ok(Some(self.relators.len() - 1))
    }

    /// Adds `w = 1` for each word, displayed as one chain
    /// `w₁ = w₂ = … = 1`. Trivial words are skipped.
    pub fn add_torsion_chain(&mut self, words: Vec<Word>) -> Result<()> {
        let mut idx = Vec::new();
        for w in words {
            if let Some(i) = self.add_relator(w)? {
                idx.push(i);
            }
        }
        if !idx.is_empty() {
            self.chains.push(Chain {
                relators: idx,
                sides: None,
            });
        }
        Ok(())
    }

    /// Adds the equalities `sides[0] = sides[1] = …`.
    ///
    /// A link whose two sides are freely equal contributes no relator, and
    /// the displayed chain is split there.
    pub fn add_equality_chain(&mut self, sides: Vec<Word>) -> Result<()> {
        for s in &sides {
            self.check_alphabet(s)?;
        }
        let mut run: Vec<Word> = Vec::new();
        let mut idx: Vec<usize> = Vec::new();
        for side in sides {
            if let Some(prev) = run.last() {
                let rel = prev * &side.inverse();
                if rel.is_empty() {
                    self.close_chain(&mut run, &mut idx);
                } else {
                    self.relators.push(rel);
                    idx.push(self.relators.len() - 1);
                }
            }
            run.push(side);
        }
        self.close_chain(&mut run, &mut idx);
        Ok(())
    }

    fn close_chain(&mut self, run: &mut Vec<Word>, idx: &mut Vec<usize>) {
        if !idx.is_empty() {
            self.chains.push(Chain {
                relators: std::mem::take(idx),
                sides: Some(run.clone()),
            });
        }
        run.clear();
    }

    /// Same generators and relators, without display annotations.
    pub fn without_chains(&self) -> Presentation {
        Presentation {
            generators: self.generators.clone(),
            relators: self.relators.clone(),
            chains: Vec::new(),
        }
    }

    /// Same generators, with `extra` appended to the relators.
    pub fn with_relators<I: IntoIterator<Item = Word>>(&self, extra: I) -> Result<Presentation> {
        let mut p = self.clone();
        for w in extra {
            p.add_relator(w)?;
        }
        Ok(p)
    }

    /// Renames generators; names missing from `map` are kept.
    pub fn rename(&self, map: &BTreeMap<GenId, GenId>) -> Result<Presentation> {
        let new_name = |g: &GenId| map.get(g).unwrap_or(g).clone();
        let images: BTreeMap<GenId, Word> = self
            .generators
            .iter()
            .map(|g| (g.clone(), Word::gen(&new_name(g))))
            .collect();
        let mut p = Presentation::new(self.generators.iter().map(new_name).collect())?;
        for r in &self.relators {
            p.relators.push(r.substitute(&images)?);
        }
        for c in &self.chains {
            let sides = match &c.sides {
                Some(s) => Some(
                    s.iter()
                        .map(|w| w.substitute(&images))
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => None,
            };
            p.chains.push(Chain {
                relators: c.relators.clone(),
                sides,
            });
        }
        Ok(p)
    }

    /// Sum of relator lengths.
    pub fn total_length(&self) -> u64 {
        self.relators.iter().map(Word::len).sum()
    }

    /// Parses a word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.generators)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Gap => self.to_gap(),
            Format::Json => self.to_json(),
        }
    }

    /// Paper-style display: `⟨ s, t, u | s^2 = t^3 = u^3 = 1, stu = tus = ust ⟩`.
    pub fn to_text(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        let mut owner = vec![None; self.relators.len()];
        for (ci, c) in self.chains.iter().enumerate() {
            for &r in &c.relators {
                owner[r].get_or_insert(ci);
            }
        }
        let mut items = Vec::new();
        let mut printed = vec![false; self.chains.len()];
        for (ri, r) in self.relators.iter().enumerate() {
            match owner[ri] {
                Some(ci) if !printed[ci] => {
                    printed[ci] = true;
                    let c = &self.chains[ci];
                    let parts: Vec<String> = match &c.sides {
                        Some(sides) => sides.iter().map(ToString::to_string).collect(),
                        None => c
                            .relators
                            .iter()
                            .map(|&i| self.relators[i].to_string())
                            .chain(std::iter::once("1".to_string()))
                            .collect(),
                    };
                    items.push(parts.join(" = "));
                }
                Some(_) => {}
                None => items.push(format!("{r} = 1")),
            }
        }
        if items.is_empty() {
            format!("⟨ {} ⟩", gens.join(", "))
        } else {
            format!("⟨ {} | {} ⟩", gens.join(", "), items.join(", "))
        }
    }

    /// A GAP session fragment defining the free group `F` and `G = F / R`.
    pub fn to_gap(&self) -> String {
        let mut out = String::new();
        let names: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("\"{g}\""))
            .collect();
        let _ = writeln!(out, "F := FreeGroup({});;", names.join(","));
        let assigns: Vec<String> = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| format!("{g} := F.{};;", i + 1))
            .collect();
        if !assigns.is_empty() {
            let _ = writeln!(out, "{}", assigns.join(" "));
        }
        let rels: Vec<String> = self.relators.iter().map(gap_word).collect();
        if rels.is_empty() {
            let _ = writeln!(out, "G := F / [ ];");
        } else {
            let _ = writeln!(out, "G := F / [ {} ];", rels.join(", "));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PresentationJson::from(self)).expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<Presentation> {
        let raw: PresentationJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

fn gap_word(w: &Word) -> String {
    if w.is_empty() {
        return "One(F)".into();
    }
    let parts: Vec<String> = w
        .syllables()
        .iter()
        .map(|s| {
            if s.exp == 1 {
                s.gen.to_string()
            } else {
                format!("{}^{}", s.gen, s.exp)
            }
        })
        .collect();
    parts.join("*")
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    generators: Vec<GenId>,
    relators: Vec<Word>,
    #[serde(default)]
    chains: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chain_sides: Option<Vec<Option<Vec<Word>>>>,
}

impl From<&Presentation> for PresentationJson {
    fn from(p: &Presentation) -> Self {
        PresentationJson {
            generators: p.generators.clone(),
            relators: p.relators.clone(),
            chains: p.chains.iter().map(|c| c.relators.clone()).collect(),
            chain_sides: if p.chains.is_empty() {
                None
            } else {
                Some(p.chains.iter().map(|c| c.sides.clone()).collect())
            },
        }
    }
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = Error;

    fn try_from(raw: PresentationJson) -> Result<Presentation> {
        let mut p = Presentation::new(raw.generators)?;
        for r in &raw.relators {
            p.check_alphabet(r)?;
            if r.is_empty() {
                return Err(Error::Parse("empty relator".into()));
            }
        }
        p.relators = raw.relators;
        let sides = raw.chain_sides.unwrap_or_default();
        if !sides.is_empty() && sides.len() != raw.chains.len() {
            return Err(Error::Parse("chain_sides length differs from chains".into()));
        }
        for (ci, relators) in raw.chains.into_iter().enumerate() {
            if relators.iter().any(|&i| i >= p.relators.len()) {
                return Err(Error::Parse("chain refers to a missing relator".into()));
            }
            let sides = sides.get(ci).cloned().flatten();
            if let Some(s) = &sides {
                if s.len() != relators.len() + 1 {
                    return Err(Error::Parse("chain sides do not match its relators".into()));
                }
                for w in s {
                    p.check_alphabet(w)?;
                }
            }
            p.chains.push(Chain { relators, sides });
        }
        Ok(p)
    }
}
