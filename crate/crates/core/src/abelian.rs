//! Smith normal form over the integers and abelianization of
//! presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::presentation::Presentation;
use crate::word::Word;

/// A dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix<T = BigInt> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        IntMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }
}

impl<T> IntMatrix<T>
where
    T: Clone + Integer + Signed,
{
    /// `row[dst] -= q · row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, q: &T) {
        for c in 0..self.cols {
            let v = self.get(src, c).clone() * q.clone();
            let d = self.get(dst, c).clone() - v;
            self.set(dst, c, d);
        }
    }

    /// `col[dst] -= q · col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, q: &T) {
        for r in 0..self.rows {
            let v = self.get(r, src).clone() * q.clone();
            let d = self.get(r, dst).clone() - v;
            self.set(r, dst, d);
        }
    }
}

/// Invariant factors `d₁ | d₂ | … | d_r` of `m` followed by zeros, one
/// entry per diagonal position (`min(rows, cols)` entries).
///
/// Pivots are chosen as the entry of smallest absolute value in the
/// remaining block, ties going to the first in row-major order.
pub fn smith_normal_form<T>(m: &IntMatrix<T>) -> Vec<T>
where
    T: Clone + Integer + Signed,
{
    let mut a = m.clone();
    let diag = a.rows.min(a.cols);
    for t in 0..diag {
        loop {
            // Smallest nonzero entry of the remaining block.
            let mut pivot: Option<(usize, usize)> = None;
            for r in t..a.rows {
                for c in t..a.cols {
                    let v = a.get(r, c);
                    if v.is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pr, pc)| v.abs() < a.get(pr, pc).abs()) {
                        pivot = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = pivot else {
                // Remaining block is zero.
                return (0..diag)
                    .map(|i| if i < t { a.get(i, i).abs() } else { T::zero() })
                    .collect();
            };
            a.swap_rows(t, pr);
            a.swap_cols(t, pc);
            let p = a.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..a.rows {
                let q = a.get(r, t).div_floor(&p);
                if !q.is_zero() {
                    a.row_axpy(r, t, &q);
                }
                if !a.get(r, t).is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..a.cols {
                let q = a.get(t, c).div_floor(&p);
                if !q.is_zero() {
                    a.col_axpy(c, t, &q);
                }
                if !a.get(t, c).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let bad = (t + 1..a.rows)
                .find(|&r| (t + 1..a.cols).any(|c| !a.get(r, c).is_multiple_of(&p)));
            match bad {
                Some(r) => {
                    let minus_one = T::zero() - T::one();
                    a.row_axpy(t, r, &minus_one);
                }
                None => break,
            }
        }
    }
    (0..diag).map(|i| a.get(i, i).abs()).collect()
}

/// The relator-by-generator exponent-sum matrix.
pub fn exponent_matrix(pres: &Presentation) -> IntMatrix<BigInt> {
    let rows = pres
        .relators()
        .iter()
        .map(|r| exponent_row(pres, r))
        .collect();
    IntMatrix::from_rows(pres.generators().len(), rows)
}

fn exponent_row(pres: &Presentation, w: &Word) -> Vec<BigInt> {
    pres.generators()
        .iter()
        .map(|g| BigInt::from(w.exponent_sum(g)))
        .collect()
}

/// Invariant factors of the abelianization: the non-unit invariant
/// factors, then one `0` per free rank.
pub fn abelianize(pres: &Presentation) -> Vec<BigInt> {
    let m = exponent_matrix(pres);
    factors_from_snf(&smith_normal_form(&m), m.cols())
}

fn factors_from_snf(diag: &[BigInt], cols: usize) -> Vec<BigInt> {
    let nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
    let free = cols - nonzero.len();
    nonzero
        .into_iter()
        .filter(|d| *d != BigInt::from(1))
        .chain(std::iter::repeat_n(BigInt::zero(), free))
        .collect()
}

/// Whether `w` maps to the identity of the abelianization.
///
/// Adding `w` as a relator gives a quotient of the abelianization; that
/// quotient is isomorphic to it exactly when the image of `w` is trivial,
/// because finitely generated abelian groups are Hopfian.
pub fn is_trivial_in_abelianization(pres: &Presentation, w: &Word) -> bool {
    let before = abelianize(pres);
    let mut m = exponent_matrix(pres);
    let extra = exponent_row(pres, w);
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).clone()).collect())
        .collect();
    rows.push(extra);
    m = IntMatrix::from_rows(pres.generators().len(), rows);
    factors_from_snf(&smith_normal_form(&m), m.cols()) == before
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::j_group;
    use crate::word::GenId;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix<BigInt> {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(cols, rows.iter().map(|r| big(r)).collect())
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&mat(&[&[1, 0], &[0, 1]])), big(&[1, 1]));
        assert_eq!(smith_normal_form(&mat(&[&[2, 0], &[0, 3]])), big(&[1, 6]));
        assert_eq!(smith_normal_form(&mat(&[&[0]])), big(&[0]));
        assert_eq!(smith_normal_form(&mat(&[&[4, 6], &[6, 4]])), big(&[2, 10]));
    }

    #[test]
    fn snf_is_generic() {
        let m: IntMatrix<i64> = IntMatrix::from_rows(2, vec![vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m), vec![2, 4]);
    }

    #[test]
    fn abelianize_examples() {
        let free = Presentation::new(vec![GenId::new("a"), GenId::new("b")]).unwrap();
        assert_eq!(abelianize(&free), big(&[0, 0]));
        assert_eq!(abelianize(&j_group(2, 3, 5)), big(&[30]));
        let a = GenId::new("a");
        let cyc = Presentation::from_relators(vec![a.clone()], vec![Word::power(&a, 7)]).unwrap();
        assert_eq!(abelianize(&cyc), big(&[7]));
        assert!(is_trivial_in_abelianization(&cyc, &Word::power(&a, 14)));
        assert!(!is_trivial_in_abelianization(&cyc, &Word::power(&a, 3)));
        assert!(!is_trivial_in_abelianization(&free, &Word::gen(&a)));
    }
}
