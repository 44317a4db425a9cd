//! Verdict records: the three computable conditions of the equivalence
//! theorem for one block, the 34992-order example, and the character-level
//! surrogate of the hyperfocal conjecture.

use serde::Serialize;

use crate::blocks::{block_partition, blocks_of_normal_subgroup, nu, Block};
use crate::chartab::{character_table, CharacterTable};
use crate::cli::catalog::build_catalog_entry;
use crate::error::{Error, Result};
use crate::exactnum::arith::{factorization_string, p_part};
use crate::fusion::{
    block_fusion_system, focal_subgroup, group_fusion_system, hyperfocal_subgroup,
    is_nilpotent_fusion, principal_oracles, FusionSystem,
};
use crate::permgroup::{PermGroup, DEFAULT_SUBGROUP_CAP};

/// Condition (ii) needs a source idempotent, which is never constructed.
pub const CONDITION_II_NOTE: &str =
    "condition (ii) excluded: evaluating a character at a source idempotent is out of scope";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FocalMethod {
    /// Generators `[Aut_F(Q), Q]` over enumerated subgroup classes.
    FusionEnumeration,
    /// `P ∩ G′` for a principal block whose fusion system was truncated.
    SylowDerivedOracle,
    /// Fusion was unavailable for a nonprincipal block.
    Unavailable,
}

/// Where the focal subgroup of a block came from, with the nilpotency flag.
#[derive(Clone, Debug)]
pub struct FocalData {
    pub foc: Option<PermGroup>,
    pub hyp: Option<PermGroup>,
    pub nilpotent: Option<bool>,
    pub method: FocalMethod,
    pub fusion: Option<FusionSystem>,
}

/// Focal subgroup and nilpotency for a block: group fusion for the principal
/// block, Brauer pairs otherwise, the Sylow oracles when enumeration is capped.
pub fn focal_data(table: &CharacterTable, block: &Block, cap: usize) -> Result<FocalData> {
    let g = table.group();
    let p = block.prime;
    let p_group = &block.defect_group;
    let fusion = if block.is_principal {
        Some(group_fusion_system(g, p, p_group, cap)?)
    } else {
        match block_fusion_system(table, block, cap) {
            Ok(f) => Some(f),
            Err(Error::Capacity { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    match fusion {
        Some(f) if f.complete => Ok(FocalData {
            foc: Some(focal_subgroup(&f)?),
            hyp: Some(hyperfocal_subgroup(&f)?),
            nilpotent: Some(is_nilpotent_fusion(&f)?),
            method: FocalMethod::FusionEnumeration,
            fusion: Some(f),
        }),
        f if block.is_principal => {
            let (foc, hyp) = principal_oracles(g, p, p_group)?;
            Ok(FocalData {
                foc: Some(foc),
                nilpotent: Some(hyp.is_trivial()),
                hyp: Some(hyp),
                method: FocalMethod::SylowDerivedOracle,
                fusion: f,
            })
        }
        f => Ok(FocalData {
            foc: None,
            hyp: None,
            nilpotent: None,
            method: FocalMethod::Unavailable,
            fusion: f,
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub group: String,
    pub prime: u64,
    pub block: usize,
    pub principal: bool,
    pub defect: u32,
    /// `Σ χ(1)²` over the height-zero characters.
    pub m: u64,
    pub nu_m: u32,
    /// `|S:P|²` for a Sylow subgroup `S ⊇ P`.
    pub sylow_index_sq: u64,
    pub focal_index: Option<u64>,
    pub rhs: Option<u64>,
    pub irr0_count: usize,
    pub cond_i: Option<bool>,
    pub cond_iii: Option<bool>,
    pub cond_iv: Option<bool>,
    /// `rhs` divides the p-part of `m`.
    pub divides: Option<bool>,
    pub consistent: bool,
    pub focal_method: FocalMethod,
    pub condition_ii: &'static str,
}

impl Verdict {
    /// All three conditions were evaluated.
    pub fn is_complete(&self) -> bool {
        self.cond_i.is_some() && self.cond_iii.is_some() && self.cond_iv.is_some()
    }
}

pub fn verdict_from(
    name: &str,
    table: &CharacterTable,
    block_index: usize,
    block: &Block,
    focal: &FocalData,
) -> Verdict {
    let p = block.prime;
    let irr0 = block.height_zero_chars();
    let m: u64 = irr0.iter().map(|&r| table.degree(r).pow(2)).sum();
    let nu_m = nu(m, p);
    let sylow_index = p_part(table.group().order(), p) / block.defect_group.order();
    let sylow_index_sq = sylow_index * sylow_index;
    let focal_index = focal
        .foc
        .as_ref()
        .map(|f| block.defect_group.order() / f.order());
    let rhs = focal_index.map(|f| sylow_index_sq * f);
    let cond_i = rhs.map(|r| p.pow(nu_m) == r);
    let cond_iii = focal_index.map(|f| irr0.len() as u64 == f);
    let cond_iv = focal.nilpotent;
    let known: Vec<bool> = [cond_i, cond_iii, cond_iv].into_iter().flatten().collect();
    let consistent = known.windows(2).all(|w| w[0] == w[1]);
    Verdict {
        group: name.to_string(),
        prime: p,
        block: block_index,
        principal: block.is_principal,
        defect: block.defect,
        m,
        nu_m,
        sylow_index_sq,
        focal_index,
        rhs,
        irr0_count: irr0.len(),
        cond_i,
        cond_iii,
        cond_iv,
        divides: rhs.map(|r| p.pow(nu_m) % r == 0),
        consistent,
        focal_method: focal.method,
        condition_ii: CONDITION_II_NOTE,
    }
}

pub fn block_verdict(
    name: &str,
    table: &CharacterTable,
    block_index: usize,
    block: &Block,
    cap: usize,
) -> Result<Verdict> {
    let focal = focal_data(table, block, cap)?;
    Ok(verdict_from(name, table, block_index, block, &focal))
}

#[derive(Clone, Debug, Serialize)]
pub struct Remark14Report {
    pub order: u64,
    pub block_count: usize,
    pub pprime_degree_square_sum: u64,
    pub factorization: String,
    pub sylow_abelianization_index: u64,
    pub abelianization_index_divides_sum: bool,
    pub nilpotent: bool,
    pub verdict: Verdict,
    pub passed: bool,
}

/// `F_3^6 ⋊ (A4 × C4)` at `p = 3`: one block, `Σ_{3 ∤ χ(1)} χ(1)² = 1548`,
/// `|P:P′| = 27`, and 27 does not divide 1548.
pub fn remark14_reproduction() -> Result<Remark14Report> {
    let g = build_catalog_entry("remark14")?;
    let table = character_table(&g)?;
    let blocks = block_partition(&table, 3)?;
    let sum: u64 = table
        .degrees()
        .iter()
        .filter(|d| *d % 3 != 0)
        .map(|d| d * d)
        .sum();
    let sylow = &blocks[0].defect_group;
    let ab_index = sylow.order() / sylow.derived_subgroup().order();
    let verdict = block_verdict("remark14", &table, 0, &blocks[0], DEFAULT_SUBGROUP_CAP)?;
    let nilpotent = verdict.cond_iv.unwrap_or(true);
    let divides = sum % ab_index == 0;
    Ok(Remark14Report {
        order: g.order(),
        block_count: blocks.len(),
        pprime_degree_square_sum: sum,
        factorization: factorization_string(sum),
        sylow_abelianization_index: ab_index,
        abelianization_index_divides_sum: divides,
        nilpotent,
        passed: g.order() == 34992
            && blocks.len() == 1
            && sum == 1548
            && ab_index == 27
            && !divides
            && !nilpotent,
        verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SurrogateReport {
    pub prime: u64,
    pub normal_order: u64,
    pub defect_order: u64,
    pub defect_abelian: bool,
    pub covered_blocks: Vec<usize>,
    pub single_block: bool,
    pub covered_degrees: Vec<u64>,
    pub all_pprime_degree: bool,
    pub holds: bool,
}

/// With `N = O^p(G)` and `C` the block of `N` covered by the principal block:
/// every character of `C` has p′-degree iff `P ∩ N` is abelian.
pub fn hyperfocal_surrogate_with(
    table: &CharacterTable,
    principal: &Block,
) -> Result<SurrogateReport> {
    let g = table.group();
    let p = principal.prime;
    let n = g.o_upper_p(p)?;
    let n_table = character_table(&n)?;
    let n_blocks = block_partition(&n_table, p)?;
    let (covered, single) = blocks_of_normal_subgroup(table, principal, &n_table, &n_blocks)?;
    let q = principal.defect_group.intersection(&n);
    let degrees: Vec<u64> = covered
        .iter()
        .flat_map(|&b| n_blocks[b].members.iter().map(|&r| n_table.degree(r)))
        .collect();
    let all_pprime = degrees.iter().all(|d| d % p != 0);
    let abelian = q.is_abelian();
    Ok(SurrogateReport {
        prime: p,
        normal_order: n.order(),
        defect_order: q.order(),
        defect_abelian: abelian,
        covered_blocks: covered,
        single_block: single,
        covered_degrees: degrees,
        all_pprime_degree: all_pprime,
        holds: all_pprime == abelian,
    })
}

pub fn hyperfocal_surrogate(g: &PermGroup, p: u64) -> Result<SurrogateReport> {
    let table = character_table(g)?;
    let blocks = block_partition(&table, p)?;
    hyperfocal_surrogate_with(&table, &blocks[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::builders::{alternating, dihedral, symmetric};

    fn principal_verdict(g: &PermGroup, p: u64) -> Verdict {
        let t = character_table(g).unwrap();
        let b = block_partition(&t, p).unwrap();
        block_verdict("g", &t, 0, &b[0], DEFAULT_SUBGROUP_CAP).unwrap()
    }

    #[test]
    fn a5_at_two() {
        let v = principal_verdict(&alternating(5), 2);
        assert_eq!((v.m, v.nu_m, v.rhs), (44, 2, Some(1)));
        assert_eq!(
            (v.cond_i, v.cond_iii, v.cond_iv),
            (Some(false), Some(false), Some(false))
        );
        assert!(v.consistent);
    }

    #[test]
    fn s3_at_two() {
        let v = principal_verdict(&symmetric(3), 2);
        assert_eq!((v.m, v.rhs), (2, Some(2)));
        assert_eq!(
            (v.cond_i, v.cond_iii, v.cond_iv),
            (Some(true), Some(true), Some(true))
        );
    }

    #[test]
    fn p_group_verdict() {
        let g = dihedral(4).unwrap();
        let v = principal_verdict(&g, 2);
        // |D8 : D8′| = 4 linear characters.
        assert_eq!((v.m, v.rhs, v.irr0_count), (4, Some(4), 4));
        assert!(v.cond_i.unwrap() && v.consistent);
    }

    #[test]
    fn surrogate_examples() {
        let r = hyperfocal_surrogate(&symmetric(4), 2).unwrap();
        assert_eq!(r.normal_order, 12);
        assert!(r.defect_abelian && r.all_pprime_degree && r.holds && r.single_block);
        let r = hyperfocal_surrogate(&symmetric(4), 3).unwrap();
        assert_eq!(r.normal_order, 24);
        assert!(r.holds);
    }
}
