//! Exact linear solving over the rationals via fraction-free elimination.
//!
//! The solver reports a particular solution (free variables pinned to zero),
//! consistency, the rank, and the kernel dimension. Pivoting is
//! deterministic — first nonzero entry in fixed column order — so identical
//! inputs always produce identical outputs.

use num::{BigInt, Integer, One, Zero};

use crate::rational::Rational;

/// Result of an exact solve of `A·x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOutcome {
    /// Particular solution with every free variable set to 0. When the system
    /// is inconsistent this is the best-effort solution of the pivot rows
    /// only — useful for computing an exact residual.
    pub solution: Vec<Rational>,
    /// True when `A·solution = b` holds exactly.
    pub consistent: bool,
    /// Rank of the coefficient matrix.
    pub rank: usize,
    /// `ncols - rank`: dimension of the solution space when consistent.
    pub kernel_dim: usize,
}

/// Solves `A·x = b` exactly. `rows` are the rows of `A`; all must have equal
/// length, and `rhs` supplies one entry per row.
///
/// Internally each row of the augmented matrix is scaled to integers, then
/// one-step fraction-free (Bareiss) elimination runs with row swaps; every
/// intermediate entry is a minor of the scaled matrix, so the divisions are
/// exact and intermediate growth stays polynomial.
pub fn solve_exact(rows: &[Vec<Rational>], rhs: &[Rational]) -> SolveOutcome {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    let ncols = rows.first().map_or(0, Vec::len);
    for row in rows {
        assert_eq!(row.len(), ncols, "ragged matrix");
    }
    let nrows = rows.len();

    // Scale each augmented row to integers.
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(nrows);
    for (row, b) in rows.iter().zip(rhs) {
        let mut lcm = BigInt::one();
        for c in row.iter().chain(std::iter::once(b)) {
            lcm = lcm.lcm(c.denom());
        }
        let mut scaled: Vec<BigInt> = Vec::with_capacity(ncols + 1);
        for c in row.iter().chain(std::iter::once(b)) {
            scaled.push(c.numer() * (&lcm / c.denom()));
        }
        m.push(scaled);
    }

    // Forward elimination.
    let mut prev = BigInt::one();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        for i in rank + 1..nrows {
            for j in col + 1..=ncols {
                let num = &m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                m[i][j] = num / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        pivot_cols.push(col);
        rank += 1;
    }

    // Rows below the rank are all-zero in the coefficient part; any nonzero
    // right-hand side there certifies inconsistency.
    let consistent = m[rank..].iter().all(|row| row[ncols].is_zero());

    // Back-substitution over the rationals, free variables pinned to zero.
    let mut solution = vec![Rational::zero(); ncols];
    for i in (0..rank).rev() {
        let col = pivot_cols[i];
        let mut acc = Rational::from_integer(m[i][ncols].clone());
        for j in col + 1..ncols {
            if !m[i][j].is_zero() && !solution[j].is_zero() {
                acc -= Rational::from_integer(m[i][j].clone()) * &solution[j];
            }
        }
        solution[col] = acc / Rational::from_integer(m[i][col].clone());
    }

    SolveOutcome {
        solution,
        consistent,
        rank,
        kernel_dim: ncols - rank,
    }
}

/// Checks `A·x = b` exactly — the re-verification half of the contract.
pub fn check_solution(rows: &[Vec<Rational>], rhs: &[Rational], x: &[Rational]) -> bool {
    rows.iter().zip(rhs).all(|(row, b)| {
        let mut acc = Rational::zero();
        for (a, xi) in row.iter().zip(x) {
            if !a.is_zero() && !xi.is_zero() {
                acc += a * xi;
            }
        }
        acc == *b
    })
}
