//! Standard permutation groups.

use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::exactnum::arith::is_prime;

fn cycle(n: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    Permutation::from_cycles(n, &[points.into_iter().collect()]).expect("valid cycle")
}

pub fn cyclic(n: usize) -> PermGroup {
    PermGroup::new(n, vec![cycle(n, 0..n)]).expect("cyclic group")
}

/// Dihedral group of order `2n` acting on an `n`-gon (`n ≥ 3`); `n = 2` gives the Klein group on 4 points.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    match n {
        0 | 1 => Err(Error::Domain(format!(
            "dihedral group needs n ≥ 2, got {n}"
        ))),
        2 => PermGroup::new(
            4,
            vec![
                Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
                Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
            ],
        ),
        _ => {
            let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            PermGroup::new(
                n,
                vec![cycle(n, 0..n), Permutation::from_images(reflection)?],
            )
        }
    }
}

pub fn symmetric(n: usize) -> PermGroup {
    let gens = if n < 2 {
        Vec::new()
    } else {
        vec![cycle(n, 0..n), cycle(n, [0, 1])]
    };
    PermGroup::new(n.max(1), gens).expect("symmetric group")
}

pub fn alternating(n: usize) -> PermGroup {
    let gens = (2..n).map(|k| cycle(n, [0, 1, k])).collect();
    PermGroup::new(n.max(1), gens).expect("alternating group")
}

/// Dicyclic group `⟨a, x | a^{2n}, x² = aⁿ, aˣ = a⁻¹⟩` of order `4n`, in its
/// regular representation. `n = 2` is the quaternion group.
pub fn dicyclic(n: usize) -> Result<PermGroup> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "dicyclic group needs n ≥ 2, got {n}"
        )));
    }
    let m = 2 * n;
    // a^k x^j ↦ index j·m + k
    let idx = |k: usize, j: usize| j * m + k % m;
    let mut right_a = vec![0; 2 * m];
    let mut right_x = vec![0; 2 * m];
    for j in 0..2 {
        for k in 0..m {
            right_a[idx(k, j)] = if j == 0 {
                idx(k + 1, 0)
            } else {
                idx(k + m - 1, 1)
            };
            right_x[idx(k, j)] = if j == 0 { idx(k, 1) } else { idx(k + n, 0) };
        }
    }
    PermGroup::new(
        2 * m,
        vec![
            Permutation::from_images(right_a)?,
            Permutation::from_images(right_x)?,
        ],
    )
}

pub fn quaternion() -> PermGroup {
    dicyclic(2).expect("quaternion group")
}

/// `G × H` acting on the disjoint union of the two domains.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> PermGroup {
    let (a, b) = (g.degree(), h.degree());
    let mut gens = Vec::new();
    for x in g.generators() {
        let mut images: Vec<usize> = (0..a + b).collect();
        for i in 0..a {
            images[i] = x.image(i);
        }
        gens.push(Permutation::from_images(images).expect("bijection"));
    }
    for y in h.generators() {
        let mut images: Vec<usize> = (0..a + b).collect();
        for i in 0..b {
            images[a + i] = a + y.image(i);
        }
        gens.push(Permutation::from_images(images).expect("bijection"));
    }
    PermGroup::new(a + b, gens).expect("direct product")
}

/// Square matrices over `F_p`, row-major.
pub type Matrix = Vec<Vec<u64>>;

fn vector_index(v: &[u64], p: u64) -> usize {
    v.iter()
        .rev()
        .fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

fn index_vector(mut i: usize, d: usize, p: u64) -> Vec<u64> {
    (0..d)
        .map(|_| {
            let x = (i % p as usize) as u64;
            i /= p as usize;
            x
        })
        .collect()
}

fn row_times_matrix(v: &[u64], m: &Matrix, p: u64) -> Vec<u64> {
    let d = v.len();
    (0..d)
        .map(|j| (0..d).map(|i| v[i] * m[i][j]).sum::<u64>() % p)
        .collect()
}

fn check_matrices(p: u64, d: usize, matrices: &[Matrix]) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not a prime")));
    }
    for m in matrices {
        if m.len() != d
            || m.iter()
                .any(|row| row.len() != d || row.iter().any(|&x| x >= p))
        {
            return Err(Error::MalformedInput(format!(
                "expected a {d}×{d} matrix over F_{p}"
            )));
        }
    }
    Ok(())
}

/// Permutation of `F_p^d` (vector `v` ↔ point `Σ v_i p^i`) given by `v ↦ v·M`.
pub fn matrix_permutation(p: u64, m: &Matrix) -> Result<Permutation> {
    let d = m.len();
    let n = (p as usize).pow(d as u32);
    let images = (0..n)
        .map(|i| vector_index(&row_times_matrix(&index_vector(i, d, p), m, p), p))
        .collect();
    Permutation::from_images(images)
        .map_err(|_| Error::MalformedInput("matrix is not invertible".into()))
}

/// The linear group generated by `matrices`, acting on the nonzero vectors of `F_p^d`.
pub fn linear_group(p: u64, matrices: &[Matrix]) -> Result<PermGroup> {
    let d = matrices.first().map(|m| m.len()).unwrap_or(1);
    check_matrices(p, d, matrices)?;
    let n = (p as usize).pow(d as u32);
    let gens = matrices
        .iter()
        .map(|m| {
            let full = matrix_permutation(p, m)?;
            Permutation::from_images((1..n).map(|i| full.image(i) - 1).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(n - 1, gens)
}

/// `V ⋊ H` acting on `V = F_p^d` by `v ↦ v·h + w`: translations by all basis
/// vectors together with the given matrices.
pub fn affine_group(p: u64, d: usize, matrices: &[Matrix]) -> Result<PermGroup> {
    check_matrices(p, d, matrices)?;
    let n = (p as usize).pow(d as u32);
    let mut gens = Vec::new();
    for k in 0..d {
        let images = (0..n)
            .map(|i| {
                let mut v = index_vector(i, d, p);
                v[k] = (v[k] + 1) % p;
                vector_index(&v, p)
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    for m in matrices {
        gens.push(matrix_permutation(p, m)?);
    }
    PermGroup::new(n, gens)
}

/// `x ↦ x + 1` and `x ↦ a·x` on `F_q` (`q` prime, `a` of order `k`), order `q·k`.
pub fn frobenius(q: u64, a: u64) -> Result<PermGroup> {
    if !is_prime(q) || a % q == 0 {
        return Err(Error::Domain(format!(
            "need a prime q and a unit a, got q={q}, a={a}"
        )));
    }
    let n = q as usize;
    let shift = (0..n).map(|x| (x + 1) % n).collect();
    let scale = (0..n).map(|x| (x * a as usize) % n).collect();
    PermGroup::new(
        n,
        vec![
            Permutation::from_images(shift)?,
            Permutation::from_images(scale)?,
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(6).order(), 6);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(dihedral(2).unwrap().order(), 4);
        assert_eq!(dihedral(5).unwrap().order(), 10);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(dicyclic(3).unwrap().order(), 12);
        assert_eq!(direct_product(&cyclic(3), &symmetric(3)).order(), 18);
        assert_eq!(frobenius(5, 2).unwrap().order(), 20);
        assert_eq!(frobenius(7, 2).unwrap().order(), 21);
        let gl23 = linear_group(
            3,
            &[
                vec![vec![1, 1], vec![0, 1]],
                vec![vec![0, 1], vec![2, 0]],
                vec![vec![2, 0], vec![0, 1]],
            ],
        )
        .unwrap();
        assert_eq!(gl23.order(), 48);
        let agl13 = affine_group(3, 1, &[vec![vec![2]]]).unwrap();
        assert_eq!(agl13.order(), 6);
    }
}
