//! Permutations of `{0, …, d−1}` acting on the right.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;

/// A permutation stored as its image list; `p.apply(i)` is `i^p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Wraps an image list, checking it is a bijection.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.degree());
        let mut sq = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                out = out.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Cycle lengths in ascending order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut lens = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.then(other) == other.then(self)
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }
}

/// The conjugacy class of `x` in the group generated by `gens`.
pub fn conjugacy_class(x: &Perm, gens: &[Perm]) -> HashSet<Perm> {
    let inverses: Vec<Perm> = gens.iter().map(Perm::inverse).collect();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(x.clone());
    queue.push_back(x.clone());
    while let Some(y) = queue.pop_front() {
        for (g, gi) in gens.iter().zip(&inverses) {
            let z = gi.then(&y).then(g);
            if seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    seen
}
