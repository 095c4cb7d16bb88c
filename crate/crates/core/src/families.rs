//! The presentation families: parent J-groups, the virtual groups
//! `W_b^c(k, bn, cm)`, the intermediate group on `s, t, z`, and the
//! alternating triangle groups.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{GenId, Word};

/// Parameters `(k, b, n, c, m)` of the virtual group `W_b^c(k, bn, cm)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VcrgParams {
    pub k: u32,
    pub b: u32,
    pub n: u32,
    pub c: u32,
    pub m: u32,
}

impl VcrgParams {
    /// Validates `k ≥ 2`, `bn ≥ 2`, `cm ≥ 2` and `gcd(n, m) = 1`.
    pub fn new(k: u32, b: u32, n: u32, c: u32, m: u32) -> Result<Self> {
        let p = VcrgParams { k, b, n, c, m };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let VcrgParams { k, b, n, c, m } = *self;
        if b == 0 || n == 0 || c == 0 || m == 0 {
            return Err(Error::Constraint("all parameters must be positive".into()));
        }
        if k < 2 {
            return Err(Error::Constraint(format!("k ≥ 2 fails (k = {k})")));
        }
        if u64::from(b) * u64::from(n) < 2 {
            return Err(Error::Constraint(format!("b·n ≥ 2 fails (b = {b}, n = {n})")));
        }
        if u64::from(c) * u64::from(m) < 2 {
            return Err(Error::Constraint(format!("c·m ≥ 2 fails (c = {c}, m = {m})")));
        }
        if n.gcd(&m) != 1 {
            return Err(Error::Constraint(format!(
                "gcd(n, m) = 1 fails (n = {n}, m = {m})"
            )));
        }
        Ok(())
    }

    /// `(q, r)` with `m = q·n + r` and `0 ≤ r < n`.
    pub fn euclid(&self) -> (u32, u32) {
        (self.m / self.n, self.m % self.n)
    }

    pub fn bn(&self) -> u32 {
        self.b * self.n
    }

    pub fn cm(&self) -> u32 {
        self.c * self.m
    }

    /// Conventional name, e.g. `W_2^3(4,6,12)`, `W_2(3,4,5)`, `W(3,2,3)`.
    pub fn name(&self) -> String {
        let sub = if self.b > 1 { format!("_{}", self.b) } else { String::new() };
        let sup = if self.c > 1 { format!("^{}", self.c) } else { String::new() };
        format!("W{sub}{sup}({},{},{})", self.k, self.bn(), self.cm())
    }

    pub fn x(i: u32) -> GenId {
        GenId::indexed("x", i)
    }

    pub fn y() -> GenId {
        GenId::new("y")
    }

    pub fn z() -> GenId {
        GenId::new("z")
    }

    /// Generators `x1…xn`, then `y` if `b > 1`, then `z` if `c > 1`.
    pub fn generators(&self) -> Vec<GenId> {
        let mut g: Vec<GenId> = (1..=self.n).map(VcrgParams::x).collect();
        if self.b > 1 {
            g.push(VcrgParams::y());
        }
        if self.c > 1 {
            g.push(VcrgParams::z());
        }
        g
    }
}

impl fmt::Display for VcrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.k, self.b, self.n, self.c, self.m)
    }
}

impl FromStr for VcrgParams {
    type Err = Error;

    /// Parses `k,b,n,c,m`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<u32> = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("bad parameter tuple {s:?}: {e}")))?;
        match parts[..] {
            [k, b, n, c, m] => VcrgParams::new(k, b, n, c, m),
            _ => Err(Error::Parse(format!(
                "expected five comma-separated integers k,b,n,c,m, got {s:?}"
            ))),
        }
    }
}

/// Parameters of the alternating triangle group `W⁺_{k,n,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleParams {
    pub k: u32,
    pub n: u32,
    pub m: u32,
}

impl TriangleParams {
    pub fn new(k: u32, n: u32, m: u32) -> Result<Self> {
        if k < 2 || n < 2 || m < 2 {
            return Err(Error::Constraint(format!(
                "triangle parameters must be at least 2, got ({k},{n},{m})"
            )));
        }
        Ok(TriangleParams { k, n, m })
    }
}

fn g(name: &str) -> GenId {
    GenId::new(name)
}

/// `⟨ s, t, u | s^k = t^n = u^m = 1, stu = tus = ust ⟩`.
pub fn j_group(k: u32, n: u32, m: u32) -> Presentation {
    let (s, t, u) = (g("s"), g("t"), g("u"));
    let mut p = Presentation::new(vec![s.clone(), t.clone(), u.clone()]).expect("distinct");
    p.add_torsion_chain(vec![
        Word::power(&s, k.into()),
        Word::power(&t, n.into()),
        Word::power(&u, m.into()),
    ])
    .expect("alphabet");
    p.add_equality_chain(vec![
        Word::product([&s, &t, &u]),
        Word::product([&t, &u, &s]),
        Word::product([&u, &s, &t]),
    ])
    .expect("alphabet");
    p
}

/// `x_a ⋯ x_b`, empty when `a > b`.
fn x_range(a: u32, b: u32) -> Word {
    let mut w = Word::empty();
    for i in a..=b {
        w.push(&VcrgParams::x(i), 1);
    }
    w
}

/// `δ = x1⋯xn y`, with `y` omitted when `b = 1`.
pub fn delta_word(p: &VcrgParams) -> Word {
    let mut w = x_range(1, p.n);
    if p.b > 1 {
        w.push(&VcrgParams::y(), 1);
    }
    w
}

/// `Δ = δ^m z^n`, with `z^n` omitted when `c = 1`.
pub fn center_word(p: &VcrgParams) -> Word {
    let mut w = delta_word(p).pow(p.m.into());
    if p.c > 1 {
        w.push(&VcrgParams::z(), p.n.into());
    }
    w
}

/// The presentation of `W_b^c(k, bn, cm)` on `x1…xn, y, z`.
///
/// Relators are ordered as: torsion (`x_i^k`, `y^b`, `z^c`), the
/// commutation of `δz` with `zδ`, then the chain for `1 ≤ i ≤ n − r` and
/// the chain for `n − r < i ≤ n`, where `m = qn + r`.
pub fn vcrg_presentation(p: &VcrgParams) -> Result<Presentation> {
    p.validate()?;
    let mut pres = Presentation::new(p.generators())?;
    let (y, z) = (VcrgParams::y(), VcrgParams::z());
    let yz = {
        let mut w = Word::empty();
        if p.b > 1 {
            w.push(&y, 1);
        }
        if p.c > 1 {
            w.push(&z, 1);
        }
        w
    };

    let mut torsion: Vec<Word> = (1..=p.n)
        .map(|i| Word::power(&VcrgParams::x(i), p.k.into()))
        .collect();
    if p.b > 1 {
        torsion.push(Word::power(&y, p.b.into()));
    }
    if p.c > 1 {
        torsion.push(Word::power(&z, p.c.into()));
    }
    pres.add_torsion_chain(torsion)?;

    let delta = delta_word(p);
    if p.c > 1 {
        let zw = Word::gen(&z);
        pres.add_equality_chain(vec![&delta * &zw, &zw * &delta])?;
    }

    let (q, r) = p.euclid();
    let n = p.n;
    // Side for index i: x_i⋯x_n (y)(z) δ^e x_1⋯x_j.
    let side = |i: u32, e: i64, j: u32| -> Word {
        let mut w = x_range(i, n);
        w.append(&yz);
        w.append(&delta.pow(e));
        w.append(&x_range(1, j));
        w
    };

    let q = i64::from(q);
    if n > r {
        let mut sides = vec![side(1, q - 1, r)];
        for i in 1..=n - r {
            sides.push(side(i + 1, q - 1, i + r));
        }
        pres.add_equality_chain(sides)?;
    }
    if r > 0 {
        let first = n - r + 1;
        let mut sides = vec![side(first, q, first + r - n - 1)];
        for i in first..=n {
            sides.push(side(i + 1, q, i + r - n));
        }
        pres.add_equality_chain(sides)?;
    }
    Ok(pres)
}

/// `⟨ s, t, z | s^k = t^{bn} = z^c = 1, stz = zst, tz(st)^{m−1}s = z(st)^m ⟩`.
pub fn intermediate_presentation(k: u32, bn: u32, c: u32, m: u32) -> Result<Presentation> {
    if k < 2 || bn < 2 || u64::from(c) * u64::from(m) < 2 || c == 0 || m == 0 {
        return Err(Error::Constraint(format!(
            "need k, bn, cm ≥ 2, got ({k},{bn},{c},{m})"
        )));
    }
    let (s, t, z) = (g("s"), g("t"), g("z"));
    let mut p = Presentation::new(vec![s.clone(), t.clone(), z.clone()])?;
    p.add_torsion_chain(vec![
        Word::power(&s, k.into()),
        Word::power(&t, bn.into()),
        Word::power(&z, c.into()),
    ])?;
    p.add_equality_chain(vec![Word::product([&s, &t, &z]), Word::product([&z, &s, &t])])?;
    let st = Word::product([&s, &t]);
    let mut lhs = Word::product([&t, &z]);
    lhs.append(&st.pow(i64::from(m) - 1));
    lhs.push(&s, 1);
    let mut rhs = Word::gen(&z);
    rhs.append(&st.pow(m.into()));
    p.add_equality_chain(vec![lhs, rhs])?;
    Ok(p)
}

/// `⟨ a, b | a^k = b^n = (ba⁻¹)^m = 1 ⟩`.
pub fn triangle_plus(t: &TriangleParams) -> Presentation {
    let (a, b) = (g("a"), g("b"));
    let mut p = Presentation::new(vec![a.clone(), b.clone()]).expect("distinct");
    let ba = Word::from_pairs([(b.clone(), 1), (a.clone(), -1)]);
    p.add_torsion_chain(vec![
        Word::power(&a, t.k.into()),
        Word::power(&b, t.n.into()),
        ba.pow(t.m.into()),
    ])
    .expect("alphabet");
    p
}
