//! Homomorphisms between presentations: verification, the canonical maps
//! between parent, virtual and triangle groups, the explicit column-swap
//! isomorphisms, central-extension checks and counts of homomorphisms to
//! symmetric groups.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::abelian::is_trivial_in_abelianization;
use crate::coset::{Decision, EnumerationLimits, RegularRep};
use crate::error::{Error, Result};
use crate::families::{center_word, j_group, triangle_plus, vcrg_presentation};
use crate::perm::conjugacy_class;
use crate::presentation::Presentation;
use crate::word::{GenId, Word};
use crate::{TriangleParams, VcrgParams};

/// A map on generators, to be checked for extending to a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenMap {
    pub source: Presentation,
    pub target: Presentation,
    pub images: BTreeMap<GenId, Word>,
}

impl GenMap {
    /// Checks that every source generator has an image over the target
    /// alphabet.
    pub fn new(
        source: Presentation,
        target: Presentation,
        images: BTreeMap<GenId, Word>,
    ) -> Result<Self> {
        for g in source.generators() {
            let w = images
                .get(g)
                .ok_or_else(|| Error::MissingImage(g.to_string()))?;
            for h in w.generators() {
                if target.generator_index(h).is_none() {
                    return Err(Error::UnknownGenerator(h.to_string()));
                }
            }
        }
        Ok(GenMap {
            source,
            target,
            images,
        })
    }

    /// Image of a source word.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        w.substitute(&self.images)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GenMap) -> Result<GenMap> {
        let images = self
            .images
            .iter()
            .map(|(g, w)| Ok((g.clone(), other.apply(w)?)))
            .collect::<Result<_>>()?;
        GenMap::new(self.source.clone(), other.target.clone(), images)
    }
}

/// Verdict of [`check_hom`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum HomVerdict {
    Verified,
    /// The image of this source relator is not trivial.
    Failed(Word),
    Unknown,
}

/// Whether every source relator maps to the identity of the target.
///
/// Decided in the target's regular representation when it enumerates;
/// otherwise only a nontrivial image in the target's abelianization is
/// conclusive.
pub fn check_hom(map: &GenMap, limits: EnumerationLimits) -> Result<HomVerdict> {
    match RegularRep::build(&map.target, limits) {
        Some(rep) => check_hom_in(map, &rep),
        None => {
            for r in map.source.relators() {
                if !is_trivial_in_abelianization(&map.target, &map.apply(r)?) {
                    return Ok(HomVerdict::Failed(r.clone()));
                }
            }
            Ok(HomVerdict::Unknown)
        }
    }
}

/// [`check_hom`] against an already enumerated target.
pub fn check_hom_in(map: &GenMap, target: &RegularRep) -> Result<HomVerdict> {
    for r in map.source.relators() {
        if !target.is_trivial(&map.apply(r)?)? {
            return Ok(HomVerdict::Failed(r.clone()));
        }
    }
    Ok(HomVerdict::Verified)
}

fn g(name: &str) -> GenId {
    GenId::new(name)
}

fn word(pairs: &[(&str, i64)]) -> Word {
    Word::from_pairs(pairs.iter().map(|&(n, e)| (g(n), e)))
}

/// `s ↦ a, t ↦ b⁻¹, u ↦ ba⁻¹` from `J(k, n, m)` onto `W⁺_{k,n,m}`.
pub fn canonical_phi(k: u32, n: u32, m: u32) -> Result<GenMap> {
    let target = triangle_plus(&TriangleParams::new(k, n, m)?);
    let images = [
        (g("s"), word(&[("a", 1)])),
        (g("t"), word(&[("b", -1)])),
        (g("u"), word(&[("b", 1), ("a", -1)])),
    ]
    .into_iter()
    .collect();
    GenMap::new(j_group(k, n, m), target, images)
}

/// The abelian quotient `J(k, n, m) → Z/n × Z/m`, `t ↦ (1, 0)`,
/// `u ↦ (0, 1)`, `s ↦ (0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonicalPi {
    pub n: u32,
    pub m: u32,
}

impl CanonicalPi {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 || m == 0 || n.gcd(&m) != 1 {
            return Err(Error::Constraint(format!(
                "gcd(n, m) = 1 fails (n = {n}, m = {m})"
            )));
        }
        Ok(CanonicalPi { n, m })
    }

    pub fn generator_images(&self) -> BTreeMap<GenId, (u32, u32)> {
        [(g("s"), (0, 0)), (g("t"), (1 % self.n, 0)), (g("u"), (0, 1 % self.m))]
            .into_iter()
            .collect()
    }

    /// Image of a word, from its exponent sums in `t` and `u`.
    pub fn image(&self, w: &Word) -> (u32, u32) {
        let t = w.exponent_sum(&g("t")).rem_euclid(self.n.into()) as u32;
        let u = w.exponent_sum(&g("u")).rem_euclid(self.m.into()) as u32;
        (t, u)
    }

    /// Order of an element of `Z/n × Z/m`.
    pub fn order_of(&self, (a, b): (u32, u32)) -> u32 {
        let oa = self.n / a.gcd(&self.n);
        let ob = self.m / b.gcd(&self.m);
        oa.lcm(&ob)
    }
}

pub fn canonical_pi(n: u32, m: u32) -> Result<CanonicalPi> {
    CanonicalPi::new(n, m)
}

/// `x_i ↦ t^{i−1} s t^{1−i}`, `y ↦ t^n`, `z ↦ u^m` into `J(k, bn, cm)`.
pub fn embedding_map(p: &VcrgParams) -> Result<GenMap> {
    let source = vcrg_presentation(p)?;
    let target = j_group(p.k, p.bn(), p.cm());
    let (s, t, u) = (g("s"), g("t"), g("u"));
    let mut images = BTreeMap::new();
    for i in 1..=p.n {
        let ti = Word::power(&t, i64::from(i) - 1);
        images.insert(VcrgParams::x(i), &(&ti * &Word::gen(&s)) * &ti.inverse());
    }
    if p.b > 1 {
        images.insert(VcrgParams::y(), Word::power(&t, p.n.into()));
    }
    if p.c > 1 {
        images.insert(VcrgParams::z(), Word::power(&u, p.m.into()));
    }
    GenMap::new(source, target, images)
}

/// `s ↦ s⁻¹, t ↦ u⁻¹, u ↦ t⁻¹` from `J(k, m, n)` to `J(k, n, m)`.
pub fn column_swap_map(k: u32, n: u32, m: u32) -> Result<GenMap> {
    let images = [
        (g("s"), word(&[("s", -1)])),
        (g("t"), word(&[("u", -1)])),
        (g("u"), word(&[("t", -1)])),
    ]
    .into_iter()
    .collect();
    GenMap::new(j_group(k, m, n), j_group(k, n, m), images)
}

/// Parameters of `W_c^b(k, cm, bn)`, the target of [`nm_swap_images`].
pub fn swapped_params(p: &VcrgParams) -> Result<VcrgParams> {
    VcrgParams::new(p.k, p.c, p.m, p.b, p.n)
}

/// `W_c^b(k, cm, bn)` with generators renamed `a1…am, p, q`.
pub fn swapped_presentation(p: &VcrgParams) -> Result<Presentation> {
    let sp = swapped_params(p)?;
    let mut names = BTreeMap::new();
    for i in 1..=sp.n {
        names.insert(VcrgParams::x(i), GenId::indexed("a", i));
    }
    names.insert(VcrgParams::y(), g("p"));
    names.insert(VcrgParams::z(), g("q"));
    vcrg_presentation(&sp)?.rename(&names)
}

/// `(a1⋯am p)^g a1⋯ah · a_{h+1}⁻¹ · ((a1⋯am p)^g a1⋯ah)⁻¹` with
/// `N = g·m + h`. The letter `p` is left out when `with_p` is false.
pub fn conjugation_word(big_n: u32, m: u32, with_p: bool) -> Result<Word> {
    if m == 0 {
        return Err(Error::Constraint("m must be positive".into()));
    }
    let (gq, h) = (big_n / m, big_n % m);
    let mut block = Word::from_pairs((1..=m).map(|i| (GenId::indexed("a", i), 1)));
    if with_p {
        block.push(&g("p"), 1);
    }
    let mut conj = block.pow(gq.into());
    for i in 1..=h {
        conj.push(&GenId::indexed("a", i), 1);
    }
    let core = Word::power(&GenId::indexed("a", h + 1), -1);
    Ok(&(&conj * &core) * &conj.inverse())
}

/// The restriction to `W_b^c(k, bn, cm)` of the column swap, written on
/// the generators `a1…am, p, q` of `W_c^b(k, cm, bn)`:
/// `x_i ↦ C_i a_{h+1}⁻¹ C_i⁻¹`, `y ↦ q⁻¹`, `z ↦ p⁻¹`.
///
/// Letters the target does not have (`p` when `c = 1`, `q` when `b = 1`)
/// are removed from the images.
pub fn nm_swap_images(p: &VcrgParams) -> Result<GenMap> {
    let source = vcrg_presentation(p)?;
    let target = swapped_presentation(p)?;
    let mut images = BTreeMap::new();
    for i in 1..=p.n {
        images.insert(VcrgParams::x(i), conjugation_word(i - 1, p.m, p.c > 1)?);
    }
    if p.b > 1 {
        images.insert(VcrgParams::y(), word(&[("q", -1)]));
    }
    if p.c > 1 {
        images.insert(VcrgParams::z(), word(&[("p", -1)]));
    }
    GenMap::new(source, target, images)
}

/// Findings of [`verify_central_extension`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralExtensionReport {
    pub delta_central: Decision,
    pub phi_kills_delta: Decision,
    pub order_product_ok: Decision,
    pub order_w: Option<u64>,
    pub order_delta: Option<u64>,
    pub order_w_plus: Option<u64>,
}

impl CentralExtensionReport {
    pub fn all_pass(&self) -> bool {
        [self.delta_central, self.phi_kills_delta, self.order_product_ok]
            .iter()
            .all(|d| *d == Decision::True)
    }
}

/// Checks on a finite instance that `Δ` is central, that the composite
/// `W → J → W⁺` kills it, and that `|Δ| · |W⁺| = |W|`.
pub fn verify_central_extension(
    p: &VcrgParams,
    limits: EnumerationLimits,
) -> Result<CentralExtensionReport> {
    let delta = center_word(p);
    let w = RegularRep::build(&vcrg_presentation(p)?, limits);
    let phi = canonical_phi(p.k, p.bn(), p.cm())?;
    let w_plus = RegularRep::build(&phi.target, limits);
    let image = phi.apply(&embedding_map(p)?.apply(&delta)?)?;

    let delta_central = match &w {
        Some(rep) => rep.is_central(&delta)?.into(),
        None => Decision::Unknown,
    };
    let phi_kills_delta = match &w_plus {
        Some(rep) => rep.is_trivial(&image)?.into(),
        None => {
            if is_trivial_in_abelianization(&phi.target, &image) {
                Decision::Unknown
            } else {
                Decision::False
            }
        }
    };
    let order_w = w.as_ref().map(RegularRep::order);
    let order_delta = match &w {
        Some(rep) => Some(rep.element_order(&delta)?),
        None => None,
    };
    let order_w_plus = w_plus.as_ref().map(RegularRep::order);
    let order_product_ok = match (order_w, order_delta, order_w_plus) {
        (Some(a), Some(d), Some(b)) => (d * b == a).into(),
        _ => Decision::Unknown,
    };
    Ok(CentralExtensionReport {
        delta_central,
        phi_kills_delta,
        order_product_ok,
        order_w,
        order_delta,
        order_w_plus,
    })
}

/// Whether all `x_i` are conjugate, checked in the regular representation.
pub fn verify_conjugacy(p: &VcrgParams, limits: EnumerationLimits) -> Result<Decision> {
    if p.n == 1 {
        return Ok(Decision::True);
    }
    let Some(rep) = RegularRep::build(&vcrg_presentation(p)?, limits) else {
        return Ok(Decision::Unknown);
    };
    let gens = rep.generators();
    let class = conjugacy_class(rep.generator(&VcrgParams::x(1))?, &gens);
    for i in 2..=p.n {
        if !class.contains(rep.generator(&VcrgParams::x(i))?) {
            return Ok(Decision::False);
        }
    }
    Ok(Decision::True)
}

/// Largest `(d!)^g` that [`hom_count`] agrees to search.
pub const HOM_COUNT_LIMIT: f64 = 5e9;

fn all_perms(d: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(d), &mut vec![false; d], &mut out);
    out
}

struct HomSearch<'a> {
    d: usize,
    perms: &'a [Vec<u8>],
    inverses: &'a [Vec<u8>],
    /// Relators as (generator index, inverse?) letters, grouped by the
    /// last generator they need.
    checks: Vec<Vec<Vec<(usize, bool)>>>,
}

impl HomSearch<'_> {
    fn holds(&self, choice: &[usize], rel: &[(usize, bool)]) -> bool {
        (0..self.d).all(|start| {
            let mut x = start;
            for &(gi, inv) in rel {
                let p = if inv {
                    &self.inverses[choice[gi]]
                } else {
                    &self.perms[choice[gi]]
                };
                x = p[x] as usize;
            }
            x == start
        })
    }

    fn count(&self, choice: &mut Vec<usize>) -> u64 {
        let level = choice.len();
        if level == self.checks.len() {
            return 1;
        }
        let mut total = 0;
        for pi in 0..self.perms.len() {
            choice.push(pi);
            if self.checks[level].iter().all(|r| self.holds(choice, r)) {
                total += self.count(choice);
            }
            choice.pop();
        }
        total
    }
}

/// Number of homomorphisms from the presented group to the symmetric group
/// of degree `d`.
pub fn hom_count(pres: &Presentation, d: usize) -> Result<u64> {
    let g = pres.generators().len();
    let size = (1..=d).map(|i| i as f64).product::<f64>().powi(g as i32);
    if d > 8 || size > HOM_COUNT_LIMIT {
        return Err(Error::Infeasible(format!(
            "(d!)^g = ({d}!)^{g} exceeds the search limit"
        )));
    }
    let perms = all_perms(d);
    if g == 0 {
        return Ok(1);
    }
    let inverses: Vec<Vec<u8>> = perms
        .iter()
        .map(|p| {
            let mut inv = vec![0u8; d];
            for (i, &j) in p.iter().enumerate() {
                inv[j as usize] = i as u8;
            }
            inv
        })
        .collect();
    let mut checks = vec![Vec::new(); g];
    for r in pres.relators() {
        let letters: Vec<(usize, bool)> = r
            .letters()
            .map(|(h, sign)| (pres.generator_index(h).expect("in alphabet"), sign < 0))
            .collect();
        let last = letters.iter().map(|l| l.0).max().expect("nonempty relator");
        checks[last].push(letters);
    }
    let search = HomSearch {
        d,
        perms: &perms,
        inverses: &inverses,
        checks,
    };
    let total = (0..perms.len())
        .into_par_iter()
        .map(|first| {
            let mut choice = vec![first];
            if search.checks[0].iter().all(|r| search.holds(&choice, r)) {
                search.count(&mut choice)
            } else {
                0
            }
        })
        .sum();
    Ok(total)
}
