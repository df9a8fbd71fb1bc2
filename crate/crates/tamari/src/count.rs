//! Exact interval counting by three independent routes: a dynamic program
//! over focused-derivation counts, a truncated bivariate series solving the
//! functional equations, and the closed formula `2(4n+1)!/((n+1)!(3n+2)!)`.
//!
//! `r[n][k]` counts focused derivations whose goal has size `n` and whose
//! context is irreducible of length `k`; `l[n][k]` is the same without the
//! irreducibility restriction. The recurrences mirror the two focused
//! rules: a length-`k` context either starts with an atom (an `R` split
//! contributes `r[a][i] * l[b][j]` with `a+b+1 = n`, `i+j = k`, plus the
//! atomic identity at `n = 0`, `k = 1`) or starts with a product that the
//! `L` rule unfolds, giving `l[n][k] = l[n][k+1] + r[n][k]`. The interval
//! count of the size-`n` lattice is `l[n][1]`.
//!
//! The series route solves the same equations as formal power series in
//! `z` (goal size) and `x` (context length) by fixed-point iteration,
//! starting from `R = x` and repeatedly setting `L` to
//! `x*(R(z,x) - R(z,1))/(x-1)` — an exact telescoped difference quotient,
//! never a division — and `R` to `z*R*L + x`. The two transcriptions share
//! no code, so they check each other.

use std::fmt::Write as _;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Tables of focused-derivation counts `r[n][k]` and `l[n][k]` for
/// `0 <= n <= max_size` and `1 <= k <= n+1` (index 0 is always zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    r: Vec<Vec<BigUint>>,
    l: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn max_size(&self) -> usize {
        self.r.len() - 1
    }

    /// `r[n][k]`, zero outside the stored range.
    pub fn r(&self, n: usize, k: usize) -> BigUint {
        self.r
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// `l[n][k]`, zero outside the stored range.
    pub fn l(&self, n: usize, k: usize) -> BigUint {
        self.l
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// Interval count of the size-`n` lattice: `l[n][1]`.
    pub fn intervals(&self, n: usize) -> BigUint {
        self.l(n, 1)
    }
}

/// Fills the tables up to goal size `max_size`.
pub fn dp_tables(max_size: usize) -> CountTable {
    let mut r: Vec<Vec<BigUint>> = Vec::with_capacity(max_size + 1);
    let mut l: Vec<Vec<BigUint>> = Vec::with_capacity(max_size + 1);
    for n in 0..=max_size {
        let mut r_row = vec![BigUint::zero(); n + 2];
        if n == 0 {
            r_row[1] = BigUint::one();
        }
        for (a, left_row) in r.iter().enumerate().take(n) {
            let b = n - 1 - a;
            for (i, left) in left_row.iter().enumerate().skip(1) {
                if left.is_zero() {
                    continue;
                }
                for j in 1..=b + 1 {
                    r_row[i + j] += left * &l[b][j];
                }
            }
        }
        let mut l_row = vec![BigUint::zero(); n + 2];
        l_row[n + 1] = r_row[n + 1].clone();
        for k in (1..=n).rev() {
            l_row[k] = &l_row[k + 1] + &r_row[k];
        }
        r.push(r_row);
        l.push(l_row);
    }
    CountTable { r, l }
}

/// Number of intervals in the size-`n` lattice, by the dynamic program.
pub fn intervals(n: usize) -> BigUint {
    dp_tables(n).intervals(n)
}

/// A bivariate polynomial truncated at `z`-degree `order`: row `n` holds
/// the coefficients of `z^n` as a dense vector indexed by the power of
/// `x`, with trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    order: usize,
    rows: Vec<Vec<BigUint>>,
}

impl Series {
    fn zero(order: usize) -> Series {
        Series {
            order,
            rows: vec![Vec::new(); order + 1],
        }
    }

    /// The series `x`.
    fn x(order: usize) -> Series {
        let mut s = Series::zero(order);
        s.rows[0] = vec![BigUint::zero(), BigUint::one()];
        s
    }

    /// The series `1`.
    fn one(order: usize) -> Series {
        let mut s = Series::zero(order);
        s.rows[0] = vec![BigUint::one()];
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `z^n x^k`, zero outside the stored range.
    pub fn coeff(&self, n: usize, k: usize) -> BigUint {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// Row of `z^n` coefficients, lowest `x`-power first.
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    fn trim(mut row: Vec<BigUint>) -> Vec<BigUint> {
        while row.last().is_some_and(Zero::is_zero) {
            row.pop();
        }
        row
    }

    fn add(&self, other: &Series) -> Series {
        debug_assert_eq!(self.order, other.order);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut out = vec![BigUint::zero(); a.len().max(b.len())];
                for (i, c) in a.iter().enumerate() {
                    out[i] += c;
                }
                for (i, c) in b.iter().enumerate() {
                    out[i] += c;
                }
                Series::trim(out)
            })
            .collect();
        Series {
            order: self.order,
            rows,
        }
    }

    fn mul(&self, other: &Series) -> Series {
        let mut out = Series::zero(self.order);
        for (n1, row1) in self.rows.iter().enumerate() {
            if row1.is_empty() {
                continue;
            }
            for (n2, row2) in other.rows.iter().enumerate() {
                if n1 + n2 > self.order || row2.is_empty() {
                    continue;
                }
                let target = &mut out.rows[n1 + n2];
                if target.len() < row1.len() + row2.len() - 1 {
                    target.resize(row1.len() + row2.len() - 1, BigUint::zero());
                }
                for (i, c1) in row1.iter().enumerate() {
                    if c1.is_zero() {
                        continue;
                    }
                    for (j, c2) in row2.iter().enumerate() {
                        target[i + j] += c1 * c2;
                    }
                }
            }
        }
        out.rows = out.rows.into_iter().map(Series::trim).collect();
        out
    }

    /// Multiplies by `z`: shifts rows up, dropping what falls past the
    /// truncation order.
    fn shift_z(&self) -> Series {
        let mut s = Series::zero(self.order);
        for n in 1..=self.order {
            s.rows[n] = self.rows[n - 1].clone();
        }
        s
    }

    /// Multiplies by `x^amount`.
    fn shift_x_up(&self, amount: usize) -> Series {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                if row.is_empty() {
                    Vec::new()
                } else {
                    let mut out = vec![BigUint::zero(); amount];
                    out.extend(row.iter().cloned());
                    out
                }
            })
            .collect();
        Series {
            order: self.order,
            rows,
        }
    }

    /// Divides by `x`, which must divide exactly.
    fn shift_x_down(&self) -> Series {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                if let Some(first) = row.first() {
                    assert!(first.is_zero(), "series not divisible by x");
                }
                if row.is_empty() {
                    Vec::new()
                } else {
                    row[1..].to_vec()
                }
            })
            .collect();
        Series {
            order: self.order,
            rows,
        }
    }

    /// The exact difference quotient `(P(x) - P(1)) / (x - 1)`, computed
    /// row-wise by telescoping: the output coefficient of `x^k` is the sum
    /// of the input coefficients above `x^k`. No division is performed.
    fn difference_quotient(&self) -> Series {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = vec![BigUint::zero(); row.len().saturating_sub(1)];
                let mut suffix = BigUint::zero();
                for k in (0..row.len().saturating_sub(1)).rev() {
                    suffix += &row[k + 1];
                    out[k] = suffix.clone();
                }
                Series::trim(out)
            })
            .collect();
        Series {
            order: self.order,
            rows,
        }
    }

    /// Row sums: the coefficient of `z^n` after substituting `x = 1`.
    pub fn at_x1(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }
}

/// Solves the functional equations by fixed-point iteration, returning the
/// truncated series `(R, L)`. Iteration `k` fixes the coefficients of
/// `z^k`, so `order + 1` rounds stabilize everything up to the truncation.
pub fn series_solve(order: usize) -> (Series, Series) {
    let x = Series::x(order);
    let mut r = x.clone();
    for _ in 0..=order {
        let l = r.difference_quotient().shift_x_up(1);
        r = r.mul(&l).shift_z().add(&x);
    }
    let l = r.difference_quotient().shift_x_up(1);
    (r, l)
}

/// Closed-form interval count `2 * (4n+1)! / ((n+1)! * (3n+2)!)`.
pub fn tutte_formula(n: usize) -> BigUint {
    let numerator = BigUint::from(2u32) * factorial(4 * n + 1);
    let denominator = factorial(n + 1) * factorial(3 * n + 2);
    let quotient = &numerator / &denominator;
    assert!(
        (&quotient * &denominator) == numerator,
        "closed formula must divide exactly"
    );
    quotient
}

/// Factorials memoized across calls, extended incrementally.
fn factorial(n: usize) -> BigUint {
    static TABLE: OnceLock<Mutex<Vec<BigUint>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![BigUint::one()]));
    let mut guard = table.lock().expect("factorial cache poisoned");
    while guard.len() <= n {
        let next = guard.last().expect("table is seeded") * BigUint::from(guard.len());
        guard.push(next);
    }
    guard[n].clone()
}

/// A coefficient where the functional-equation check failed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("mismatch at z^{n} x^{k}: {lhs} vs {rhs}")]
pub struct ChapotonMismatch {
    pub n: usize,
    pub k: usize,
    pub lhs: BigUint,
    pub rhs: BigUint,
}

/// Verifies, coefficient by coefficient up to `z^order`, that `F = R - x`
/// satisfies `F = x^2 z (1 + F/x) (1 + (F - F(1))/(x - 1))`, with both
/// sides computed by the series engine.
pub fn chapoton_check(order: usize) -> Result<(), ChapotonMismatch> {
    let (r, _) = series_solve(order);
    verify_chapoton(&r)
}

fn verify_chapoton(r: &Series) -> Result<(), ChapotonMismatch> {
    let order = r.order();
    let mut phi = r.clone();
    // Subtract x: the only z^0 term of R is x itself.
    if phi.rows[0].len() >= 2 {
        phi.rows[0][1] -= 1u32;
        phi.rows[0] = Series::trim(std::mem::take(&mut phi.rows[0]));
    }
    let one = Series::one(order);
    let factor1 = one.add(&phi.shift_x_down());
    let factor2 = one.add(&phi.difference_quotient());
    let rhs = factor1.mul(&factor2).shift_z().shift_x_up(2);
    for n in 0..=order {
        let width = phi.rows[n].len().max(rhs.rows[n].len());
        for k in 0..width {
            let lhs = phi.coeff(n, k);
            let right = rhs.coeff(n, k);
            if lhs != right {
                return Err(ChapotonMismatch {
                    n,
                    k,
                    lhs,
                    rhs: right,
                });
            }
        }
    }
    Ok(())
}

/// Formats a coefficient row as a polynomial in `x`, e.g. `x^2 + 2*x^3`.
pub fn format_x_polynomial(row: &[BigUint]) -> String {
    let mut out = String::new();
    for (k, c) in row.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        if k == 0 {
            write!(out, "{c}").unwrap();
            continue;
        }
        if !c.is_one() {
            write!(out, "{c}*").unwrap();
        }
        if k == 1 {
            out.push('x');
        } else {
            write!(out, "x^{k}").unwrap();
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn dp_small_coefficients() {
        let t = dp_tables(4);
        assert_eq!(t.r(0, 1), big(1));
        assert_eq!(t.l(0, 1), big(1));
        assert_eq!(t.r(1, 2), big(1));
        assert_eq!(t.r(2, 2), big(1));
        assert_eq!(t.r(2, 3), big(2));
        assert_eq!(t.r(3, 2), big(3));
        assert_eq!(t.r(3, 3), big(5));
        assert_eq!(t.r(3, 4), big(5));
        assert_eq!(
            (2..=5).map(|k| t.r(4, k)).collect::<Vec<_>>(),
            vec![big(13), big(20), big(21), big(14)]
        );
        // An irreducible singleton context forces an atom.
        for n in 0..=4 {
            assert_eq!(t.r(n, 1), big(u64::from(n == 0)));
        }
    }

    #[test]
    fn interval_sequence() {
        let expected = [1u64, 1, 3, 13, 68, 399, 2530, 16965];
        let t = dp_tables(7);
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(t.intervals(n), big(want));
            assert_eq!(intervals(n), big(want));
        }
    }

    #[test]
    fn l_is_the_suffix_sum_of_r() {
        let t = dp_tables(8);
        for n in 0..=8 {
            for k in 1..=n + 1 {
                let suffix: BigUint = (k..=n + 1).map(|j| t.r(n, j)).sum();
                assert_eq!(t.l(n, k), suffix);
            }
            assert_eq!(t.l(n, 1), (1..=n + 1).map(|j| t.r(n, j)).sum::<BigUint>());
        }
    }

    #[test]
    fn series_matches_dp_tables() {
        let order = 12;
        let (r, l) = series_solve(order);
        let t = dp_tables(order);
        for n in 0..=order {
            for k in 0..=n + 2 {
                assert_eq!(r.coeff(n, k), t.r(n, k), "r at n={n} k={k}");
                assert_eq!(l.coeff(n, k), t.l(n, k), "l at n={n} k={k}");
            }
            assert_eq!(r.at_x1(n), t.intervals(n));
        }
    }

    #[test]
    fn series_golden_rows() {
        let (r, _) = series_solve(4);
        assert_eq!(r.row(0), &[big(0), big(1)]);
        assert_eq!(r.row(1), &[big(0), big(0), big(1)]);
        assert_eq!(r.row(2), &[big(0), big(0), big(1), big(2)]);
        assert_eq!(r.row(3), &[big(0), big(0), big(3), big(5), big(5)]);
        assert_eq!(
            r.row(4),
            &[big(0), big(0), big(13), big(20), big(21), big(14)]
        );
    }

    #[test]
    fn telescoped_quotient_of_a_monomial() {
        // (x^3 - 1)/(x - 1) = x^2 + x + 1.
        let mut s = Series::zero(0);
        s.rows[0] = vec![big(0), big(0), big(0), big(1)];
        assert_eq!(s.difference_quotient().row(0), &[big(1), big(1), big(1)]);
    }

    #[test]
    fn tutte_formula_examples() {
        assert_eq!(tutte_formula(0), big(1));
        assert_eq!(tutte_formula(3), big(13));
        assert_eq!(tutte_formula(4), big(68));
        assert_eq!(tutte_formula(7), big(16965));
    }

    #[test]
    fn chapoton_check_passes() {
        assert_eq!(chapoton_check(10), Ok(()));
        assert_eq!(chapoton_check(0), Ok(()));
    }

    #[test]
    fn chapoton_check_catches_a_corrupted_coefficient() {
        let (mut r, _) = series_solve(6);
        r.rows[4][3] += 1u32;
        let err = verify_chapoton(&r).unwrap_err();
        assert_eq!((err.n, err.k), (4, 3));
    }

    #[test]
    fn polynomial_formatting() {
        assert_eq!(format_x_polynomial(&[]), "0");
        assert_eq!(format_x_polynomial(&[big(0), big(1)]), "x");
        assert_eq!(
            format_x_polynomial(&[big(0), big(0), big(1), big(2)]),
            "x^2 + 2*x^3"
        );
        assert_eq!(format_x_polynomial(&[big(5)]), "5");
    }
}
