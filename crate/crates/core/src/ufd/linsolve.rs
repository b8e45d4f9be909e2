//! Exact sparse Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::function::Scalar;

/// One equation `Σ coeffs[j] x_j = rhs`.
#[derive(Clone, Debug, Default)]
pub(crate) struct Row {
    pub coeffs: BTreeMap<usize, Scalar>,
    pub rhs: Scalar,
}

/// Echelon form built incrementally; pivots have leading coefficient one.
#[derive(Debug, Default)]
pub(crate) struct Echelon {
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    /// Reduces `row` against the current pivots and stores it. Returns false
    /// when the row reduces to `0 = c` with `c != 0`.
    pub fn push(&mut self, mut row: Row) -> bool {
        row.coeffs.retain(|_, v| !v.is_zero());
        loop {
            let (lead, lead_coef) = match row.coeffs.iter().next() {
                Some((&j, c)) => (j, c.clone()),
                None => return row.rhs.is_zero(),
            };
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let factor = lead_coef.clone();
                    for (&j, v) in &pivot.coeffs {
                        let e = row.coeffs.entry(j).or_insert_with(Scalar::zero);
                        *e -= &factor * v;
                        if e.is_zero() {
                            row.coeffs.remove(&j);
                        }
                    }
                    row.rhs -= &factor * &pivot.rhs;
                }
                None => {
                    let inv = Scalar::one() / &lead_coef;
                    for v in row.coeffs.values_mut() {
                        *v *= &inv;
                    }
                    row.rhs *= &inv;
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Particular solution with every free variable set to zero.
    pub fn solve(&self, unknowns: usize) -> Vec<Scalar> {
        let mut x = vec![Scalar::zero(); unknowns];
        for (&c, row) in self.pivots.iter().rev() {
            let mut v = row.rhs.clone();
            for (&j, a) in row.coeffs.range(c + 1..) {
                v -= a * &x[j];
            }
            x[c] = v;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n.into(), d.into())
    }

    fn row(c: &[(usize, i64)], rhs: i64) -> Row {
        Row { coeffs: c.iter().map(|&(j, v)| (j, q(v, 1))).collect(), rhs: q(rhs, 1) }
    }

    #[test]
    fn solves_square_system() {
        // x + y = 3, x - y = 1
        let mut e = Echelon::default();
        assert!(e.push(row(&[(0, 1), (1, 1)], 3)));
        assert!(e.push(row(&[(0, 1), (1, -1)], 1)));
        assert_eq!(e.solve(2), vec![q(2, 1), q(1, 1)]);
    }

    #[test]
    fn detects_inconsistency_and_free_vars() {
        let mut e = Echelon::default();
        assert!(e.push(row(&[(0, 2), (2, 2)], 4)));
        assert!(e.push(row(&[(0, 1), (2, 1)], 2)));
        assert!(!e.push(row(&[(0, 1), (2, 1)], 3)));
        let mut e = Echelon::default();
        e.push(row(&[(0, 2), (2, 2)], 4));
        assert_eq!(e.solve(3), vec![q(2, 1), q(0, 1), q(0, 1)]);
    }
}
