//! Exhaustive enumeration over prime fields, guarded by an explicit budget.

use super::field::PrimeField;
use super::matrix::Matrix;
use super::subspace::Subspace;
use crate::error::{GeomError, Result};

/// Default enumeration budget (number of objects).
pub const DEFAULT_BUDGET: u64 = 20_000;

/// Budget from `GEOM_BUDGET` if set and valid, else [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("GEOM_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

pub fn check_budget(needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        return Err(GeomError::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Gaussian binomial coefficient `[n choose d]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(q: u64, n: usize, d: usize) -> u128 {
    if d > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        let a = q.checked_pow((n - i) as u32).map(|x| x - 1);
        let b = q.checked_pow((i + 1) as u32).map(|x| x - 1);
        match (a, b, num.checked_mul(a.unwrap_or(0))) {
            (Some(_), Some(b), Some(m)) => {
                num = m;
                den = den.saturating_mul(b);
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
            _ => return u128::MAX,
        }
    }
    num / den
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of vectors `p^d`, saturating.
pub fn power_count(p: u64, d: usize) -> u128 {
    (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX)
}

/// All `d`-dimensional subspaces of `F_p^n`, sorted lexicographically by
/// canonical basis.
pub fn enumerate_subspaces(field: &PrimeField, n: usize, d: usize, budget: u64) -> Result<Vec<Subspace<PrimeField>>> {
    if d > n {
        return Err(GeomError::Shape(format!("dimension {d} exceeds ambient {n}")));
    }
    check_budget(gaussian_binomial(field.order(), n, d), budget)?;
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(d);
    pivot_sets(n, d, 0, &mut pivots, &mut |piv| {
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| ((piv[i] + 1)..n).filter(|j| !piv.contains(j)).map(move |j| (i, j)))
            .collect();
        for values in all_vectors(field, free.len()) {
            let mut m = Matrix::zeros(field, d, n);
            for (i, &pc) in piv.iter().enumerate() {
                m.set(i, pc, 1);
            }
            for (&(i, j), v) in free.iter().zip(values) {
                m.set(i, j, v);
            }
            out.push(Subspace::row_space(&m));
        }
    });
    out.sort();
    Ok(out)
}

/// All subspaces of `F_p^n` of every dimension, by dimension then basis.
pub fn enumerate_all_subspaces(field: &PrimeField, n: usize, budget: u64) -> Result<Vec<Subspace<PrimeField>>> {
    let total: u128 = (0..=n).map(|d| gaussian_binomial(field.order(), n, d)).sum();
    check_budget(total, budget)?;
    let mut out = Vec::new();
    for d in 0..=n {
        out.extend(enumerate_subspaces(field, n, d, budget)?);
    }
    Ok(out)
}

fn pivot_sets(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if cur.len() == d {
        visit(cur);
        return;
    }
    for c in start..n {
        cur.push(c);
        pivot_sets(n, d, c + 1, cur, visit);
        cur.pop();
    }
}

/// Every vector of `F_p^len`, in lexicographic order.
pub fn all_vectors(field: &PrimeField, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let p = field.p();
    let total = (p as u64).pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u32; len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        v
    })
}

/// Every element of a subspace of `F_p^n`.
pub fn subspace_elements(s: &Subspace<PrimeField>, budget: u64) -> Result<Vec<Vec<u32>>> {
    check_budget(power_count(s.field().order(), s.dim()), budget)?;
    Ok(all_vectors(s.field(), s.dim()).map(|c| s.combine(&c)).collect())
}

/// Every matrix of the given shape over `F_p`.
pub fn all_matrices(field: &PrimeField, rows: usize, cols: usize, budget: u64) -> Result<Vec<Matrix<PrimeField>>> {
    check_budget(power_count(field.order(), rows * cols), budget)?;
    Ok(all_vectors(field, rows * cols).map(|v| Matrix::from_vec(field, rows, cols, v).expect("shape")).collect())
}
