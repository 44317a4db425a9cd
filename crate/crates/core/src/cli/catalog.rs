//! Named groups used by the CLI, the acceptance suite and the Python bindings.

use crate::error::{Error, Result};
use crate::permgroup::builders::{
    affine_group, alternating, cyclic, dicyclic, dihedral, direct_product, frobenius, linear_group,
    matrix_permutation, quaternion, symmetric, Matrix,
};
use crate::permgroup::PermGroup;

pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub order: u64,
    pub default_primes: &'static [u64],
    build: fn() -> Result<PermGroup>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<PermGroup> {
        let g = (self.build)()?;
        if g.order() != self.order {
            return Err(Error::InternalConsistency(format!(
                "catalog group {} has order {}, expected {}",
                self.name,
                g.order(),
                self.order
            )));
        }
        Ok(g)
    }
}

fn sl23() -> Result<PermGroup> {
    linear_group(
        3,
        &[vec![vec![1, 1], vec![0, 1]], vec![vec![0, 1], vec![2, 0]]],
    )
}

fn gl23() -> Result<PermGroup> {
    linear_group(
        3,
        &[
            vec![vec![1, 1], vec![0, 1]],
            vec![vec![0, 1], vec![2, 0]],
            vec![vec![2, 0], vec![0, 1]],
        ],
    )
}

/// Generators of `H = A4 × C4` on `F_3^6`, from `scripts/derive_remark14_module.py`:
/// `a ⊗ I2`, `b ⊗ I2` (a 3-dimensional irreducible of A4) and `I3 ⊗ c` (the
/// 2-dimensional irreducible of C4).
pub fn remark14_matrices() -> Vec<Matrix> {
    vec![
        vec![
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 1],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
            vec![2, 0, 1, 0, 2, 0],
            vec![0, 2, 0, 1, 0, 2],
        ],
        vec![
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, 1],
            vec![1, 0, 2, 0, 1, 0],
            vec![0, 1, 0, 2, 0, 1],
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
        ],
        vec![
            vec![0, 1, 0, 0, 0, 0],
            vec![2, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
            vec![0, 0, 2, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1],
            vec![0, 0, 0, 0, 2, 0],
        ],
    ]
}

fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut rows: Vec<Vec<u64>> = rows.to_vec();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = crate::exactnum::arith::inv_mod(rows[rank][col], p).expect("unit");
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the submodule of `F_p^d` spun up from `v` under right multiplication.
pub fn spin_dimension(v: &[u64], matrices: &[Matrix], p: u64) -> usize {
    let d = v.len();
    let mut basis: Vec<Vec<u64>> = vec![v.to_vec()];
    let mut k = 0;
    while k < basis.len() {
        for m in matrices {
            let w: Vec<u64> = (0..d)
                .map(|j| (0..d).map(|i| basis[k][i] * m[i][j]).sum::<u64>() % p)
                .collect();
            let mut trial = basis.clone();
            trial.push(w);
            if rank_mod_p(&trial, p) > basis.len() {
                basis = trial;
            }
        }
        k += 1;
    }
    basis.len()
}

/// Order of the matrix group and whether every nonzero vector spins to the whole space.
pub fn verify_module(p: u64, matrices: &[Matrix]) -> Result<(u64, bool)> {
    let h = linear_group(p, matrices)?;
    let d = matrices[0].len();
    let n = (p as usize).pow(d as u32);
    let irreducible = (1..n).all(|i| {
        let v: Vec<u64> = (0..d)
            .map(|k| (i / (p as usize).pow(k as u32) % p as usize) as u64)
            .collect();
        spin_dimension(&v, matrices, p) == d
    });
    Ok((h.order(), irreducible))
}

/// `V ⋊ (A4 × C4)` on the 729 vectors of `F_3^6`.
pub fn remark14() -> Result<PermGroup> {
    let matrices = remark14_matrices();
    let (h_order, irreducible) = verify_module(3, &matrices)?;
    if h_order != 48 || !irreducible {
        return Err(Error::InternalConsistency(format!(
            "remark14 module check failed: |H| = {h_order}, irreducible = {irreducible}"
        )));
    }
    // One translation suffices: its conjugates span V by irreducibility.
    let full = affine_group(3, 6, &matrices)?;
    let translation = full.generators()[0].clone();
    let mut gens = vec![translation];
    for m in &matrices {
        gens.push(matrix_permutation(3, m)?);
    }
    PermGroup::new(729, gens)
}

fn product(a: PermGroup, b: PermGroup) -> Result<PermGroup> {
    Ok(direct_product(&a, &b))
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "c2",
        description: "cyclic group of order 2",
        order: 2,
        default_primes: &[2],
        build: || Ok(cyclic(2)),
    },
    CatalogEntry {
        name: "c3",
        description: "cyclic group of order 3",
        order: 3,
        default_primes: &[3],
        build: || Ok(cyclic(3)),
    },
    CatalogEntry {
        name: "c6",
        description: "cyclic group of order 6",
        order: 6,
        default_primes: &[2, 3],
        build: || Ok(cyclic(6)),
    },
    CatalogEntry {
        name: "c2xc2",
        description: "Klein four-group",
        order: 4,
        default_primes: &[2],
        build: || dihedral(2),
    },
    CatalogEntry {
        name: "d8",
        description: "dihedral group of order 8",
        order: 8,
        default_primes: &[2],
        build: || dihedral(4),
    },
    CatalogEntry {
        name: "q8",
        description: "quaternion group",
        order: 8,
        default_primes: &[2],
        build: || Ok(quaternion()),
    },
    CatalogEntry {
        name: "s3",
        description: "symmetric group on 3 points",
        order: 6,
        default_primes: &[2, 3],
        build: || Ok(symmetric(3)),
    },
    CatalogEntry {
        name: "a4",
        description: "alternating group on 4 points",
        order: 12,
        default_primes: &[2, 3],
        build: || Ok(alternating(4)),
    },
    CatalogEntry {
        name: "s4",
        description: "symmetric group on 4 points",
        order: 24,
        default_primes: &[2, 3],
        build: || Ok(symmetric(4)),
    },
    CatalogEntry {
        name: "a5",
        description: "alternating group on 5 points",
        order: 60,
        default_primes: &[2, 3, 5],
        build: || Ok(alternating(5)),
    },
    CatalogEntry {
        name: "d10",
        description: "dihedral group of order 10",
        order: 10,
        default_primes: &[2, 5],
        build: || dihedral(5),
    },
    CatalogEntry {
        name: "dicyclic12",
        description: "dicyclic group C3 ⋊ C4",
        order: 12,
        default_primes: &[2, 3],
        build: || dicyclic(3),
    },
    CatalogEntry {
        name: "c3xs3",
        description: "C3 × S3",
        order: 18,
        default_primes: &[2, 3],
        build: || product(cyclic(3), symmetric(3)),
    },
    CatalogEntry {
        name: "s3xs3",
        description: "S3 × S3",
        order: 36,
        default_primes: &[2, 3],
        build: || product(symmetric(3), symmetric(3)),
    },
    CatalogEntry {
        name: "sl23",
        description: "SL(2,3) on the nonzero vectors of F_3^2",
        order: 24,
        default_primes: &[2, 3],
        build: sl23,
    },
    CatalogEntry {
        name: "gl23",
        description: "GL(2,3) on the nonzero vectors of F_3^2",
        order: 48,
        default_primes: &[2, 3],
        build: gl23,
    },
    CatalogEntry {
        name: "frobenius20",
        description: "AGL(1,5)",
        order: 20,
        default_primes: &[2, 5],
        build: || frobenius(5, 2),
    },
    CatalogEntry {
        name: "frobenius21",
        description: "C7 ⋊ C3",
        order: 21,
        default_primes: &[3, 7],
        build: || frobenius(7, 2),
    },
    CatalogEntry {
        name: "s5",
        description: "symmetric group on 5 points",
        order: 120,
        default_primes: &[2, 3, 5],
        build: || Ok(symmetric(5)),
    },
    CatalogEntry {
        name: "remark14",
        description: "F_3^6 ⋊ (A4 × C4), a faithful irreducible 6-dimensional module",
        order: 34992,
        default_primes: &[3],
        build: remark14,
    },
];

pub fn lookup(name: &str) -> Result<&'static CatalogEntry> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

pub fn build_catalog_entry(name: &str) -> Result<PermGroup> {
    lookup(name)?.build()
}
