//! Reflection-isomorphism invariants of virtual groups and the
//! identification of the finite ones with rank two complex reflection
//! groups.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::VcrgParams;

/// The three columns `(top, bottom)` of `J(k bn cm / 1 n m)`, sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColumnMultiset([(u32, u32); 3]);

impl ColumnMultiset {
    pub fn new(mut cols: [(u32, u32); 3]) -> Self {
        cols.sort_unstable();
        ColumnMultiset(cols)
    }

    pub fn columns(&self) -> &[(u32, u32); 3] {
        &self.0
    }
}

impl fmt::Display for ColumnMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(t, b)| format!("({t},{b})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for ColumnMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// `{(k, 1), (bn, n), (cm, m)}`.
pub fn column_multiset(p: &VcrgParams) -> ColumnMultiset {
    ColumnMultiset::new([(p.k, 1), (p.bn(), p.n), (p.cm(), p.m)])
}

/// Reflection isomorphism is decided by equality of column multisets.
pub fn reflection_isomorphic(p1: &VcrgParams, p2: &VcrgParams) -> bool {
    column_multiset(p1) == column_multiset(p2)
}

/// Number of conjugacy classes of reflecting hyperplanes,
/// `3 − [b = 1] − [c = 1]`.
pub fn hyperplane_classes(p: &VcrgParams) -> u32 {
    3 - u32::from(p.b == 1) - u32::from(p.c == 1)
}

fn divisors(l: u32) -> Vec<u32> {
    (1..=l).filter(|d| l % d == 0).collect()
}

/// `d(k) ⊔ d(b) ⊔ d(c)`, leaving out `d(b)` when `b = 1` and `d(c)` when
/// `c = 1`. Sorted.
pub fn orders_multiset(p: &VcrgParams) -> Vec<u32> {
    let mut out = divisors(p.k);
    if p.b > 1 {
        out.extend(divisors(p.b));
    }
    if p.c > 1 {
        out.extend(divisors(p.c));
    }
    out.sort_unstable();
    out
}

/// Whether `1/k + 1/(bn) + 1/(cm) > 1`.
pub fn is_finite(p: &VcrgParams) -> bool {
    let (k, x, y) = (u64::from(p.k), u64::from(p.bn()), u64::from(p.cm()));
    x * y + k * y + k * x > k * x * y
}

/// Order of `G(de, e, 2)`, namely `2(de)²/e`.
pub fn imprimitive_order(de: u64, e: u64) -> u64 {
    2 * de * de / e
}

/// One instance of a classification table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Case {
    /// The row's virtual-group pattern, e.g. `W_2^c(2,2,cd)`.
    pub row: &'static str,
    /// The complex reflection group, e.g. `G15` or `G(6,6,2)`.
    pub name: String,
    pub params: VcrgParams,
    pub order: u64,
    /// For imprimitive groups `G(de, e, 2)`, the pair `(de, e)`.
    pub imprimitive: Option<(u32, u32)>,
}

fn exceptional(row: &'static str, name: &str, t: (u32, u32, u32, u32, u32), order: u64) -> Table1Case {
    Table1Case {
        row,
        name: name.to_string(),
        params: VcrgParams::new(t.0, t.1, t.2, t.3, t.4).expect("valid row"),
        order,
        imprimitive: None,
    }
}

fn imprimitive(row: &'static str, t: (u32, u32, u32, u32, u32), de: u32, e: u32) -> Table1Case {
    Table1Case {
        row,
        name: format!("G({de},{e},2)"),
        params: VcrgParams::new(t.0, t.1, t.2, t.3, t.4).expect("valid row"),
        order: imprimitive_order(de.into(), e.into()),
        imprimitive: Some((de, e)),
    }
}

/// Instances of the classification table rows with order at most `max_order`.
///
/// The free parameters of the infinite families are additionally capped
/// at `family_cap` (`l ≤ cap`, `d ≤ cap`, `c ≤ cap`), since the order
/// bound alone would admit hundreds of cases.
pub fn table1_cases(max_order: u64, family_cap: u32) -> Vec<Table1Case> {
    let mut out = Vec::new();
    for (k, name, order) in [(2, "", 6), (3, "G4", 24), (4, "G8", 96), (5, "G16", 600)] {
        if k == 2 {
            out.push(imprimitive("W(k,2,3)", (2, 1, 2, 1, 3), 3, 3));
        } else {
            out.push(exceptional("W(k,2,3)", name, (k, 1, 2, 1, 3), order));
        }
    }
    out.push(exceptional("W(3,2,5)", "G20", (3, 1, 2, 1, 5), 360));
    for l in 1..=family_cap {
        let m = 2 * l + 1;
        out.push(imprimitive("W(2,2,2l+1)", (2, 1, 2, 1, m), m, m));
    }
    out.push(exceptional("W(2,3,4)", "G12", (2, 1, 3, 1, 4), 48));
    out.push(exceptional("W(2,3,5)", "G22", (2, 1, 3, 1, 5), 240));
    for (k, name, order) in [(3, "G5", 72), (4, "G10", 288), (5, "G18", 1800)] {
        out.push(exceptional("W_3(k,3,2)", name, (k, 3, 1, 1, 2), order));
    }
    for d in 2..=family_cap {
        for l in 0..=family_cap {
            let m = 2 * l + 1;
            out.push(imprimitive("W_d(2,d(2l+1),2)", (2, d, m, 1, 2), d * m, m));
        }
    }
    for (k, name, order) in [(3, "G6", 48), (4, "G9", 192), (5, "G17", 1200)] {
        out.push(exceptional("W_2(k,2,3)", name, (k, 2, 1, 1, 3), order));
    }
    out.push(exceptional("W_2(2,4,3)", "G13", (2, 2, 2, 1, 3), 96));
    out.push(exceptional("W_3(2,3,4)", "G14", (2, 3, 1, 1, 4), 144));
    out.push(exceptional("W_3(2,3,5)", "G21", (2, 3, 1, 1, 5), 720));
    for d in 2..=family_cap {
        out.push(imprimitive("W_2(2,2,d)", (2, 2, 1, 1, d), 2 * d, 2 * d));
    }
    for (k, name, order) in [(3, "G7", 144), (4, "G11", 576), (5, "G19", 3600)] {
        out.push(exceptional("W_2^3(k,2,3)", name, (k, 2, 1, 3, 1), order));
    }
    out.push(exceptional("W_2^3(2,4,3)", "G15", (2, 2, 2, 3, 1), 288));
    for c in 2..=family_cap {
        for d in 1..=family_cap {
            // Presents G(2cd, 2d, 2): its order is 4c²d, and c = 1 gives the
            // G(2d, 2d, 2) row above.
            out.push(imprimitive("W_2^c(2,2,cd)", (2, 2, 1, c, d), 2 * c * d, 2 * d));
        }
    }
    out.retain(|c| c.order <= max_order);
    out
}

/// Shephard–Todd name of the reflection group that `p` is reflection
/// isomorphic to, if `p` matches one of the row patterns.
pub fn shephard_todd_name(p: &VcrgParams) -> Option<String> {
    if !is_finite(p) {
        return None;
    }
    let target = column_multiset(p);
    // Every column entry is at most the largest top, which bounds the free
    // parameters of each family.
    let cap = target.columns().iter().map(|c| c.0).max().unwrap_or(2);
    table1_cases(u64::MAX, cap)
        .into_iter()
        .find(|c| column_multiset(&c.params) == target)
        .map(|c| c.name)
}
