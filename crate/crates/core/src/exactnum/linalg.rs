use num_traits::Zero;

use super::rational::Rational;

/// Solves `A x = b` exactly by Gaussian elimination with exact pivoting.
/// Returns `None` when the system is singular or inconsistent.
pub fn solve_linear(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = if rows == 0 { return None } else { a[0].len() };
    assert_eq!(rows, b.len());
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_row = 0usize;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(sel) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, sel);
        let inv = m[pivot_row][col].recip();
        for v in m[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    let t = &m[pivot_row][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    if pivots.len() < cols {
        return None; // underdetermined
    }
    // inconsistent rows?
    for r in pivots.len()..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][cols].clone();
    }
    Some(x)
}

/// Returns a nontrivial vector in the nullspace of `A`, if one exists.
/// The last free column is set to 1.
pub fn nullspace_vector(a: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = if rows == 0 { return None } else { a[0].len() };
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(sel) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, sel);
        let inv = m[pivot_row][col].recip();
        for v in m[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let t = &m[pivot_row][c] * &f;
                    m[r][c] -= t;
                }
            }
        }
        pivot_of_col[col] = Some(pivot_row);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    let free = (0..cols).rev().find(|&c| pivot_of_col[c].is_none())?;
    let mut x = vec![Rational::zero(); cols];
    x[free] = Rational::from_integer(1.into());
    for col in 0..cols {
        if let Some(pr) = pivot_of_col[col] {
            x[col] = -m[pr][free].clone();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{rat, rat_i};

    #[test]
    fn solves_small_system() {
        let a = vec![
            vec![rat_i(2), rat_i(1)],
            vec![rat_i(1), rat_i(-1)],
        ];
        let b = vec![rat_i(5), rat_i(1)];
        let x = solve_linear(&a, &b).unwrap();
        assert_eq!(x, vec![rat_i(2), rat_i(1)]);
    }

    #[test]
    fn detects_singular() {
        let a = vec![
            vec![rat_i(1), rat_i(2)],
            vec![rat_i(2), rat_i(4)],
        ];
        assert!(solve_linear(&a, &[rat_i(1), rat_i(3)]).is_none());
    }

    #[test]
    fn nullspace_of_rank_deficient() {
        let a = vec![vec![rat_i(1), rat_i(2), rat_i(3)], vec![rat_i(0), rat_i(1), rat_i(1)]];
        let v = nullspace_vector(&a).unwrap();
        // check A v = 0
        for row in &a {
            let dot: Rational = row.iter().zip(&v).map(|(a, b)| a * b).sum();
            assert_eq!(dot, rat(0, 1));
        }
        assert!(v.iter().any(|c| !num_traits::Zero::is_zero(c)));
    }
}
