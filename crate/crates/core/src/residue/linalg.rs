//! Dense linear algebra over a prime field `F_p`, used for the
//! Artin–Schreier solves (the map `u ↦ u^p − u` is `F_p`-linear).

use crate::ring::inv_mod_p;

/// Solves `M x = b` over `F_p`. `columns[j]` is the j-th column of `M`.
/// Free variables are set to zero, so the returned solution is canonical
/// for a given column order.
pub fn solve_mod_p(p: u32, columns: &[Vec<u32>], rhs: &[u32]) -> Option<Vec<u32>> {
    let rows = rhs.len();
    let cols = columns.len();
    for c in columns {
        debug_assert_eq!(c.len(), rows);
    }
    // augmented row-major matrix
    let mut m: Vec<Vec<u32>> = (0..rows)
        .map(|i| {
            let mut row: Vec<u32> = columns.iter().map(|c| c[i] % p).collect();
            row.push(rhs[i] % p);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod_p(m[r][c] as i64, p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..=cols {
                    m[i][j] = (m[i][j] + p * p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0u32; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        // x + y = 1, y = 2 over F_3
        let cols = vec![vec![1, 0], vec![1, 1]];
        assert_eq!(solve_mod_p(3, &cols, &[1, 2]), Some(vec![2, 2]));
    }

    #[test]
    fn detects_inconsistency() {
        let cols = vec![vec![1, 1]];
        assert_eq!(solve_mod_p(2, &cols, &[0, 1]), None);
    }
}
