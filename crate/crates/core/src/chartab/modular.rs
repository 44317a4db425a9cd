//! Dense linear algebra over a prime field `F_q` (`q < 2^32`).

use crate::exactnum::arith::{inv_mod, mul_mod};

pub type Row = Vec<u64>;

/// Row-reduces in place; returns pivot columns.
pub fn rref(rows: &mut Vec<Row>, q: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = inv_mod(rows[rank][col], q).expect("nonzero pivot");
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, q);
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + q - mul_mod(f, y, q)) % q;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

/// Basis of `{x : M x = 0}` for a square matrix given by rows.
pub fn nullspace(m: &[Row], q: u64) -> Vec<Row> {
    let n = m.first().map_or(0, |r| r.len());
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows, q);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (q - rows[r][f]) % q;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI − M)` (constant term first) via
/// reduction to upper Hessenberg form.
pub fn charpoly(m: &[Row], q: u64) -> Vec<u64> {
    let n = m.len();
    let mut h: Vec<Row> = m.to_vec();
    // Similarity transforms to Hessenberg form.
    for col in 0..n.saturating_sub(2) {
        let Some(piv) = (col + 1..n).find(|&r| h[r][col] != 0) else {
            continue;
        };
        if piv != col + 1 {
            h.swap(piv, col + 1);
            for row in h.iter_mut() {
                row.swap(piv, col + 1);
            }
        }
        let inv = inv_mod(h[col + 1][col], q).expect("nonzero");
        for r in col + 2..n {
            if h[r][col] == 0 {
                continue;
            }
            let f = mul_mod(h[r][col], inv, q);
            // row_r -= f * row_{col+1}
            for c in 0..n {
                let sub = mul_mod(f, h[col + 1][c], q);
                h[r][c] = (h[r][c] + q - sub) % q;
            }
            // column_{col+1} += f * column_r
            for row in h.iter_mut() {
                let add = mul_mod(f, row[r], q);
                row[col + 1] = (row[col + 1] + add) % q;
            }
        }
    }
    // p_k(x) = charpoly of the leading k×k block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        // p_k = (x - h[k-1][k-1]) p_{k-1} - Σ_{i<k-1} h[i][k-1] (Π_{j=i+1}^{k-1} h[j][j-1]) p_i
        let prev = &polys[k - 1];
        let mut next = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % q;
            next[d] = (next[d] + q - mul_mod(h[k - 1][k - 1], c, q)) % q;
        }
        let mut prod = 1u64;
        for i in (0..k - 1).rev() {
            prod = mul_mod(prod, h[i + 1][i], q);
            if prod == 0 {
                break;
            }
            let coef = mul_mod(h[i][k - 1], prod, q);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = (next[d] + q - mul_mod(coef, c, q)) % q;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn poly_eval(poly: &[u64], x: u64, q: u64) -> u64 {
    poly.iter()
        .rev()
        .fold(0, |acc, &c| (mul_mod(acc, x, q) + c) % q)
}

/// Distinct roots of `poly` in `F_q` together with the total multiplicity found.
pub fn roots(poly: &[u64], q: u64) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    let mut p = poly.to_vec();
    for x in 0..q {
        let mut mult = 0;
        loop {
            if p.len() <= 1 {
                break;
            }
            if poly_eval(&p, x, q) != 0 {
                break;
            }
            // synthetic division by (t - x)
            let n = p.len() - 1;
            let mut quot = vec![0u64; n];
            let mut carry = 0u64;
            for d in (0..n).rev() {
                carry = (p[d + 1] + mul_mod(carry, x, q)) % q;
                quot[d] = carry;
            }
            p = quot;
            mult += 1;
        }
        if mult > 0 {
            out.push((x, mult));
        }
        if p.len() <= 1 {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_small() {
        // [[2,1],[1,2]] over F_7: x^2 - 4x + 3 = (x-1)(x-3)
        let m = vec![vec![2, 1], vec![1, 2]];
        assert_eq!(charpoly(&m, 7), vec![3, 3, 1]);
        let r = roots(&charpoly(&m, 7), 7);
        assert_eq!(r, vec![(1, 1), (3, 1)]);
    }

    #[test]
    fn charpoly_matches_expansion() {
        let q = 101;
        let m = vec![
            vec![3, 0, 5, 1],
            vec![7, 2, 0, 9],
            vec![1, 1, 1, 0],
            vec![0, 4, 8, 6],
        ];
        let cp = charpoly(&m, q);
        // det(x I - M) at x = 0 is det(-M) = det(M) for even n.
        let det = |a: &Vec<Row>| -> u64 {
            let mut rows = a.clone();
            let mut d = 1u64;
            let n = rows.len();
            for c in 0..n {
                let Some(p) = (c..n).find(|&r| rows[r][c] != 0) else {
                    return 0;
                };
                if p != c {
                    rows.swap(p, c);
                    d = (q - d) % q;
                }
                d = mul_mod(d, rows[c][c], q);
                let inv = inv_mod(rows[c][c], q).unwrap();
                for r in c + 1..n {
                    let f = mul_mod(rows[r][c], inv, q);
                    for k in 0..n {
                        rows[r][k] = (rows[r][k] + q - mul_mod(f, rows[c][k], q)) % q;
                    }
                }
            }
            d
        };
        for x in [0u64, 1, 5, 17] {
            let shifted: Vec<Row> = (0..4)
                .map(|i| {
                    (0..4)
                        .map(|j| ((if i == j { x } else { 0 }) + q - m[i][j]) % q)
                        .collect()
                })
                .collect();
            assert_eq!(poly_eval(&cp, x, q), det(&shifted));
        }
    }

    #[test]
    fn nullspace_dimension() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        let ns = nullspace(&m, 11);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let s: u64 = row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % 11;
                assert_eq!(s, 0);
            }
        }
    }
}
