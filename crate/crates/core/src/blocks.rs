//! p-blocks of `Irr(G)` from reduced central characters, with defects,
//! heights and defect groups.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::exactnum::arith::valuation;
use crate::exactnum::{build_reduction_map, Cyclotomic, FFElement, Rational, ReductionMap};
use crate::permgroup::group::check_prime;
use crate::permgroup::PermGroup;

pub(crate) fn nu(n: u64, p: u64) -> u32 {
    valuation(n as i128, p).expect("nonzero")
}

#[derive(Clone, Debug)]
pub struct Block {
    pub prime: u64,
    /// Table rows, increasing.
    pub members: Vec<usize>,
    /// Reduced central character on the class sums.
    pub lambda: Vec<FFElement>,
    pub defect: u32,
    /// Height of each member, aligned with `members`.
    pub heights: Vec<u32>,
    pub is_principal: bool,
    /// A representative of the conjugacy class of defect groups.
    pub defect_group: PermGroup,
}

impl Block {
    pub fn contains(&self, row: usize) -> bool {
        self.members.binary_search(&row).is_ok()
    }

    /// Members of height zero.
    pub fn height_zero_chars(&self) -> Vec<usize> {
        self.members
            .iter()
            .zip(&self.heights)
            .filter(|(_, &h)| h == 0)
            .map(|(&m, _)| m)
            .collect()
    }
}

pub fn height_zero_chars(block: &Block) -> Vec<usize> {
    block.height_zero_chars()
}

/// `ω_χ(Ĉ) = |C| χ(x_C) / χ(1)` for every class.
pub fn central_character(table: &CharacterTable, row: usize) -> Vec<Cyclotomic> {
    let deg = Rational::new(1, table.degree(row) as i128);
    table
        .classes()
        .classes()
        .iter()
        .zip(table.row(row))
        .map(|(c, v)| v.scale(&Rational::new(c.size as i128, 1)).scale(&deg))
        .collect()
}

/// Blocks under the default reduction map of the table's exponent.
pub fn block_partition(table: &CharacterTable, p: u64) -> Result<Vec<Block>> {
    check_prime(p)?;
    block_partition_with(table, &build_reduction_map(table.exponent(), p))
}

/// Blocks under a reduction map whose conductor is a multiple of the table's
/// exponent. The principal block comes first, the
/// rest follow their least member.
pub fn block_partition_with(
    table: &CharacterTable,
    reduction: &ReductionMap,
) -> Result<Vec<Block>> {
    let p = reduction.prime();
    if reduction.conductor() % table.exponent() != 0 {
        return Err(Error::Domain(format!(
            "reduction map has conductor {}, table needs a multiple of {}",
            reduction.conductor(),
            table.exponent()
        )));
    }
    let lambdas: Vec<Vec<FFElement>> = (0..table.len())
        .into_par_iter()
        .map(|row| {
            central_character(table, row)
                .iter()
                .map(|w| reduction.reduce(w))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut groups: Vec<(Vec<FFElement>, Vec<usize>)> = Vec::new();
    for (row, lambda) in lambdas.into_iter().enumerate() {
        match groups.iter_mut().find(|(l, _)| *l == lambda) {
            Some((_, members)) => members.push(row),
            None => groups.push((lambda, vec![row])),
        }
    }
    let order_val = nu(table.group().order(), p);
    groups
        .into_iter()
        .map(|(lambda, members)| {
            let vals: Vec<u32> = members.iter().map(|&m| nu(table.degree(m), p)).collect();
            let min = *vals.iter().min().expect("nonempty block");
            let defect = order_val - min;
            let heights = vals.iter().map(|v| v - min).collect();
            let defect_group = defect_group_from(table, p, &lambda, defect)?;
            Ok(Block {
                prime: p,
                is_principal: members[0] == 0,
                members,
                lambda,
                defect,
                heights,
                defect_group,
            })
        })
        .collect()
}

/// Sylow p-subgroup of `C_G(x)` for the first defect class `x` of the block.
fn defect_group_from(
    table: &CharacterTable,
    p: u64,
    lambda: &[FFElement],
    defect: u32,
) -> Result<PermGroup> {
    let g = table.group();
    let classes = table.classes();
    let k = (0..classes.len())
        .find(|&k| !lambda[k].is_zero() && nu(classes.class(k).centralizer_order, p) == defect)
        .ok_or_else(|| Error::InternalConsistency("block without a defect class".into()))?;
    let centralizer = g.centralizer(&classes.class(k).representative)?;
    let d = centralizer.sylow_subgroup(p)?;
    if d.order() != p.pow(defect) {
        return Err(Error::InternalConsistency(format!(
            "defect group of order {} for defect {defect}",
            d.order()
        )));
    }
    Ok(d)
}

pub fn defect_group(block: &Block) -> &PermGroup {
    &block.defect_group
}

/// Blocks of `N ⊴ G` covered by `block`, and whether there is exactly one.
/// `normal_blocks` is the partition of `normal_table` at the same prime.
pub fn blocks_of_normal_subgroup(
    table: &CharacterTable,
    block: &Block,
    normal_table: &CharacterTable,
    normal_blocks: &[Block],
) -> Result<(Vec<usize>, bool)> {
    let mut covered = BTreeSet::new();
    for &row in &block.members {
        let mults = table.restrict_to_normal(row, normal_table)?;
        for (j, m) in mults.iter().enumerate() {
            if *m > 0 {
                let b = normal_blocks
                    .iter()
                    .position(|nb| nb.contains(j))
                    .ok_or_else(|| Error::InternalConsistency("row outside every block".into()))?;
                covered.insert(b);
            }
        }
    }
    let covered: Vec<usize> = covered.into_iter().collect();
    // Covered blocks form one G-orbit, so a singleton is G-stable.
    let single = covered.len() == 1;
    Ok((covered, single))
}

/// Report fragment: degrees, defect, defect-group order and generators, heights.
pub fn describe_block(table: &CharacterTable, block: &Block) -> serde_json::Value {
    serde_json::json!({
        "principal": block.is_principal,
        "member_degrees": block.members.iter().map(|&m| table.degree(m)).collect::<Vec<_>>(),
        "defect": block.defect,
        "defect_group_order": block.defect_group.order(),
        "defect_group_generators": block
            .defect_group
            .generators()
            .iter()
            .map(|g| g.to_cycle_string())
            .collect::<Vec<_>>(),
        "defect_group_up_to_conjugacy": true,
        "heights": block.heights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::permgroup::builders::{alternating, dicyclic, symmetric};

    fn degrees(t: &CharacterTable, b: &Block) -> Vec<u64> {
        b.members.iter().map(|&m| t.degree(m)).collect()
    }

    #[test]
    fn s3_blocks() {
        let t = character_table(&symmetric(3)).unwrap();
        let f = t.field().clone();
        let omega: Vec<_> = central_character(&t, 2);
        // classes: identity, 3-cycles (size 2), transpositions (size 3)
        assert_eq!(
            omega,
            vec![
                Cyclotomic::one(&f),
                Cyclotomic::from_int(&f, -1),
                Cyclotomic::zero(&f)
            ]
        );
        let b2 = block_partition(&t, 2).unwrap();
        assert_eq!(b2.len(), 2);
        assert_eq!((degrees(&t, &b2[0]), b2[0].defect), (vec![1, 1], 1));
        assert_eq!((degrees(&t, &b2[1]), b2[1].defect), (vec![2], 0));
        assert!(b2[1].defect_group.is_trivial());
        let b3 = block_partition(&t, 3).unwrap();
        assert_eq!(b3.len(), 1);
        assert_eq!(b3[0].defect_group.order(), 3);
    }

    #[test]
    fn a5_principal_height_zero() {
        let t = character_table(&alternating(5)).unwrap();
        let b = block_partition(&t, 2).unwrap();
        let mut d: Vec<u64> = b[0]
            .height_zero_chars()
            .iter()
            .map(|&m| t.degree(m))
            .collect();
        d.sort_unstable();
        assert_eq!(d, vec![1, 3, 3, 5]);
        assert_eq!(b[0].defect_group.order(), 4);
    }

    #[test]
    fn dicyclic_nonprincipal_defect_group() {
        let t = character_table(&dicyclic(3).unwrap()).unwrap();
        let blocks = block_partition(&t, 3).unwrap();
        let np: Vec<_> = blocks.iter().filter(|b| !b.is_principal).collect();
        assert!(!np.is_empty());
        for b in np {
            assert_eq!(b.defect_group.order(), 3);
        }
    }

    #[test]
    fn covering_s3_over_a3() {
        let g = symmetric(3);
        let t = character_table(&g).unwrap();
        let n = g.derived_subgroup();
        let tn = character_table(&n).unwrap();
        let b = block_partition(&t, 3).unwrap();
        let bn = block_partition(&tn, 3).unwrap();
        assert_eq!(bn.len(), 1);
        assert_eq!(
            blocks_of_normal_subgroup(&t, &b[0], &tn, &bn).unwrap(),
            (vec![0], true)
        );
    }
}
