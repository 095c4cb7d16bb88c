//! Independent oracles for the integration tests. Nothing here calls into
//! the library except to build and enumerate the hand-entered
//! presentations.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use vcrg_core::{GenId, Presentation, Word};

// ---------------------------------------------------------------------------
// G(de, e, 2) as an explicit group of 2×2 monomial matrices.

/// `diag(ζ^a, ζ^b) · P^swap` with `ζ` a primitive `N`-th root of unity and
/// `P` the coordinate swap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Mono {
    swap: bool,
    a: u32,
    b: u32,
}

fn mono_mul(x: Mono, y: Mono, n: u32) -> Mono {
    // P D P⁻¹ swaps the diagonal entries of D.
    let (ya, yb) = if x.swap { (y.b, y.a) } else { (y.a, y.b) };
    Mono {
        swap: x.swap ^ y.swap,
        a: (x.a + ya) % n,
        b: (x.b + yb) % n,
    }
}

/// Elements of `G(de, e, 2)`, found by closing the generators
/// `P`, `diag(ζ⁻¹, ζ)·P` and `diag(ζ^e, 1)` under multiplication.
pub fn monomial_closure(de: u32, e: u32) -> usize {
    assert!(de % e == 0);
    let n = de;
    let mut gens = vec![
        Mono { swap: true, a: 0, b: 0 },
        Mono { swap: true, a: n - 1, b: 1 % n },
    ];
    if e < de {
        gens.push(Mono { swap: false, a: e % n, b: 0 });
    }
    let id = Mono { swap: false, a: 0, b: 0 };
    let mut seen = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for &g in &gens {
            let y = mono_mul(x, g, n);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    // Every element must satisfy the defining condition: the product of
    // the nonzero entries is a d-th root of unity.
    assert!(seen.iter().all(|m| (m.a + m.b) % e == 0));
    seen.len()
}

// ---------------------------------------------------------------------------
// Hand-entered presentations of exceptional rank two reflection groups.

fn gens(names: &[&str]) -> Vec<GenId> {
    names.iter().map(|n| GenId::new(n)).collect()
}

fn braid(a: &GenId, b: &GenId, len: usize) -> Word {
    let pair = [a, b];
    Word::product((0..len).map(|i| pair[i % 2]))
}

/// `⟨ s, t | s^p = t^q = 1, (st…)_l = (ts…)_l ⟩`.
fn two_gen(p: i64, q: i64, l: usize) -> Presentation {
    let g = gens(&["s", "t"]);
    let rels = vec![
        Word::power(&g[0], p),
        Word::power(&g[1], q),
        &braid(&g[0], &g[1], l) * &braid(&g[1], &g[0], l).inverse(),
    ];
    Presentation::from_relators(g, rels).unwrap()
}

/// `⟨ s, t, u | s^p = t^q = u^r = 1, stu = tus = ust ⟩`.
fn three_gen_cyclic(p: i64, q: i64, r: i64) -> Presentation {
    let g = gens(&["s", "t", "u"]);
    let w = |t: &str| Word::parse(t, &g).unwrap();
    let rels = vec![
        Word::power(&g[0], p),
        Word::power(&g[1], q),
        Word::power(&g[2], r),
        &w("stu") * &w("tus").inverse(),
        &w("tus") * &w("ust").inverse(),
    ];
    Presentation::from_relators(g, rels).unwrap()
}

/// Three involutions with the given equalities of positive words.
fn involutions(equalities: &[(&str, &str)]) -> Presentation {
    let g = gens(&["s", "t", "u"]);
    let w = |t: &str| Word::parse(t, &g).unwrap();
    let mut rels: Vec<Word> = g.iter().map(|x| Word::power(x, 2)).collect();
    for (l, r) in equalities {
        rels.push(&w(l) * &w(r).inverse());
    }
    Presentation::from_relators(g, rels).unwrap()
}

/// BMR-style presentations together with the Shephard–Todd group orders.
pub fn exceptional_groups() -> BTreeMap<&'static str, (Presentation, u64)> {
    let mut out = BTreeMap::new();
    out.insert("G4", (two_gen(3, 3, 3), 24));
    out.insert("G5", (two_gen(3, 3, 4), 72));
    out.insert("G6", (two_gen(2, 3, 6), 48));
    out.insert("G7", (three_gen_cyclic(2, 3, 3), 144));
    out.insert("G8", (two_gen(4, 4, 3), 96));
    out.insert("G9", (two_gen(2, 4, 6), 192));
    out.insert("G10", (two_gen(3, 4, 4), 288));
    out.insert("G11", (three_gen_cyclic(2, 3, 4), 576));
    out.insert("G12", (involutions(&[("stus", "tust"), ("tust", "ustu")]), 48));
    out.insert("G13", (involutions(&[("ustu", "tust"), ("stust", "ustus")]), 96));
    out.insert("G14", (two_gen(2, 3, 8), 144));
    out.insert("G16", (two_gen(5, 5, 3), 600));
    out.insert("G17", (two_gen(2, 5, 6), 1200));
    out.insert("G18", (two_gen(3, 5, 4), 1800));
    out.insert("G19", (three_gen_cyclic(2, 3, 5), 3600));
    out.insert("G20", (two_gen(3, 3, 5), 360));
    out.insert("G21", (two_gen(2, 3, 10), 720));
    out.insert("G22", (involutions(&[("stust", "tustu"), ("tustu", "ustus")]), 240));
    out
}

/// Shephard–Todd orders of the exceptional groups, including those
/// without a hand-entered presentation above.
pub fn shephard_todd_order(name: &str) -> Option<u64> {
    let table = [
        ("G4", 24),
        ("G5", 72),
        ("G6", 48),
        ("G7", 144),
        ("G8", 96),
        ("G9", 192),
        ("G10", 288),
        ("G11", 576),
        ("G12", 48),
        ("G13", 96),
        ("G14", 144),
        ("G15", 288),
        ("G16", 600),
        ("G17", 1200),
        ("G18", 1800),
        ("G19", 3600),
        ("G20", 360),
        ("G21", 720),
        ("G22", 240),
    ];
    table.iter().find(|(n, _)| *n == name).map(|(_, o)| *o)
}

// ---------------------------------------------------------------------------
// Smith normal form through determinantal divisors.

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors `d_i = D_i / D_{i−1}`, where `D_i` is the gcd of the
/// `i×i` minors, padded with zeros to `min(rows, cols)` entries.
pub fn determinantal_factors(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev: i128 = 1;
    for i in 1..=rows.min(cols) {
        let mut d: i128 = 0;
        for rs in subsets(rows, i) {
            for cs in subsets(cols, i) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| i128::from(m[r][c])).collect())
                    .collect();
                d = gcd(d, det(&minor));
            }
        }
        if d == 0 {
            out.resize(rows.min(cols), 0);
            return out;
        }
        out.push((d / prev) as i64);
        prev = d;
    }
    out
}

/// Invariant factors of `Z/a ⊕ Z/b ⊕ …` without units, by collecting
/// prime powers.
pub fn cyclic_sum_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &o in orders {
        let mut x = o;
        let mut p = 2;
        while x > 1 {
            if x % p == 0 {
                let mut q = 1;
                while x % p == 0 {
                    x /= p;
                    q *= p;
                }
                by_prime.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let width = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; width];
    for powers in by_prime.values_mut() {
        powers.sort_unstable();
        // Largest powers go to the last factor.
        for (slot, q) in factors.iter_mut().rev().zip(powers.iter().rev()) {
            *slot *= q;
        }
    }
    factors
}

// ---------------------------------------------------------------------------
// Reidemeister–Schreier with an explicit Schreier transversal.

/// Presentation of the stabiliser of point 0 under a transitive action,
/// `action[g][p]` being the image of `p` under generator `g`.
///
/// The transversal is a BFS spanning tree; every non-tree edge `(p, g)`
/// becomes a generator `e{index}`, and each relator traced from each point
/// becomes a relator.
pub fn explicit_rs(pres: &Presentation, action: &[Vec<usize>]) -> Presentation {
    let k = action[0].len();
    let gens = pres.generators();
    // (point, generator) pairs used by the BFS spanning tree.
    let mut tree_edges: HashSet<(usize, usize)> = HashSet::new();
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(p) = queue.pop_front() {
        for (gi, perm) in action.iter().enumerate() {
            let q = perm[p];
            if !seen[q] {
                seen[q] = true;
                tree_edges.insert((p, gi));
                queue.push_back(q);
            }
        }
    }
    assert!(seen.iter().all(|&s| s), "action is not transitive");
    let mut edge_name = BTreeMap::new();
    for p in 0..k {
        for gi in 0..gens.len() {
            if !tree_edges.contains(&(p, gi)) {
                let id = edge_name.len() as u32;
                edge_name.insert((p, gi), GenId::indexed("e", id));
            }
        }
    }
    let inverse: Vec<Vec<usize>> = action
        .iter()
        .map(|perm| {
            let mut inv = vec![0; k];
            for (p, &q) in perm.iter().enumerate() {
                inv[q] = p;
            }
            inv
        })
        .collect();
    let mut rels = Vec::new();
    for r in pres.relators() {
        for start in 0..k {
            let mut p = start;
            let mut out = Word::empty();
            for (g, sign) in r.letters() {
                let gi = gens.iter().position(|h| h == g).unwrap();
                if sign > 0 {
                    if let Some(e) = edge_name.get(&(p, gi)) {
                        out.push(e, 1);
                    }
                    p = action[gi][p];
                } else {
                    let q = inverse[gi][p];
                    if let Some(e) = edge_name.get(&(q, gi)) {
                        out.push(e, -1);
                    }
                    p = q;
                }
            }
            assert_eq!(p, start, "relator does not act trivially");
            if !out.is_empty() {
                rels.push(out);
            }
        }
    }
    Presentation::from_relators(edge_name.into_values().collect(), rels).unwrap()
}

/// Action on `Z/k` of the quotient map sending `s` to 1 and the other
/// generators to 0.
pub fn cyclic_action(pres: &Presentation, s: &GenId, k: usize) -> Vec<Vec<usize>> {
    pres.generators()
        .iter()
        .map(|g| {
            (0..k)
                .map(|p| if g == s { (p + 1) % k } else { p })
                .collect()
        })
        .collect()
}
