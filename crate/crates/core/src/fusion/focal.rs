//! Focal and hyperfocal subgroups, nilpotency, and the direct-factor property
//! of `hyp/[hyp, P]` in `P/[hyp, P]`.

use super::system::{AutData, FusionSystem};
use crate::error::{Error, Result};
use crate::permgroup::{PermGroup, Permutation};

/// `φ(u)u⁻¹` for every generator `φ` of `auts` and every `u ∈ Q`.
fn commutators(a: &AutData, auts: &[Permutation], out: &mut Vec<Permutation>) {
    for phi in auts {
        for (i, u) in a.elements.iter().enumerate() {
            let c = a.apply(phi, i).mul(&u.inv());
            if !c.is_identity() && !out.contains(&c) {
                out.push(c);
            }
        }
    }
}

/// Generated by `[Aut_F(Q), Q]` over all `Q ≤ P`.
pub fn focal_subgroup(f: &FusionSystem) -> Result<PermGroup> {
    f.require_complete()?;
    let mut gens = Vec::new();
    for a in &f.subgroups {
        commutators(a, a.action.generators(), &mut gens);
    }
    // Class representatives suffice up to P-conjugation.
    Ok(f.p_group.normal_closure(&gens))
}

/// Generated by `[Q, O^p(Aut_F(Q))]` over all `Q ≤ P`.
pub fn hyperfocal_subgroup(f: &FusionSystem) -> Result<PermGroup> {
    f.require_complete()?;
    let mut gens = Vec::new();
    for a in &f.subgroups {
        if a.action.is_p_group(f.prime) {
            continue;
        }
        let op = a.action.o_upper_p(f.prime)?;
        commutators(a, op.generators(), &mut gens);
    }
    Ok(f.p_group.normal_closure(&gens))
}

/// Every `Aut_F(Q)` is a p-group.
pub fn is_nilpotent_fusion(f: &FusionSystem) -> Result<bool> {
    f.require_complete()?;
    Ok(f.subgroups.iter().all(|a| a.action.is_p_group(f.prime)))
}

/// Whether some `T ≤ P` satisfies `T ∩ U = [U, P]` and `TU = P`, for
/// `U = hyp(F)`. Candidates come from the subgroup classes already stored in
/// `f`; complements are permuted by conjugation since `U` and `[U, P]` are normal.
pub fn direct_factor_check(f: &FusionSystem) -> Result<bool> {
    let u = hyperfocal_subgroup(f)?;
    let s = &f.p_group;
    if u.is_trivial() {
        return Ok(true);
    }
    let mut comms = Vec::new();
    for x in u.generators() {
        for y in s.generators() {
            let c = Permutation::commutator(x, y);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    let k = s.normal_closure(&comms);
    let target = s.order() * k.order() / u.order();
    Ok(f.subgroups.iter().any(|a| {
        let t = &a.subgroup;
        t.order() == target && k.is_subgroup_of(t) && t.intersection(&u).order() == k.order()
    }))
}

/// `(P ∩ G′, P ∩ O^p(G))`: the focal and hyperfocal subgroups of `F_P(G)`
/// for `P` Sylow, by the focal and hyperfocal subgroup theorems.
pub fn principal_oracles(
    g: &PermGroup,
    p: u64,
    sylow: &PermGroup,
) -> Result<(PermGroup, PermGroup)> {
    if sylow.order() != crate::exactnum::arith::p_part(g.order(), p) {
        return Err(Error::Domain("expected a Sylow subgroup".into()));
    }
    let foc = sylow.intersection(&g.derived_subgroup());
    let hyp = sylow.intersection(&g.o_upper_p(p)?);
    Ok((foc, hyp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::group_fusion_system;
    use crate::permgroup::builders::{alternating, dihedral, symmetric};
    use crate::permgroup::DEFAULT_SUBGROUP_CAP;

    fn system(g: &PermGroup, p: u64) -> FusionSystem {
        let s = g.sylow_subgroup(p).unwrap();
        group_fusion_system(g, p, &s, DEFAULT_SUBGROUP_CAP).unwrap()
    }

    #[test]
    fn s4_at_two() {
        let g = symmetric(4);
        let f = system(&g, 2);
        let foc = focal_subgroup(&f).unwrap();
        let hyp = hyperfocal_subgroup(&f).unwrap();
        assert_eq!((foc.order(), hyp.order()), (4, 4));
        let (ofoc, ohyp) = principal_oracles(&g, 2, &f.p_group).unwrap();
        assert!(foc.same_subgroup(&ofoc) && hyp.same_subgroup(&ohyp));
        assert!(!is_nilpotent_fusion(&f).unwrap());
        assert!(direct_factor_check(&f).unwrap());
    }

    #[test]
    fn p_group_systems_are_nilpotent() {
        let g = dihedral(4).unwrap();
        let f = system(&g, 2);
        assert!(is_nilpotent_fusion(&f).unwrap());
        assert!(hyperfocal_subgroup(&f).unwrap().is_trivial());
        assert!(focal_subgroup(&f)
            .unwrap()
            .same_subgroup(&g.derived_subgroup()));
    }

    #[test]
    fn a4_at_three_has_trivial_focal() {
        let f = system(&alternating(4), 3);
        assert!(focal_subgroup(&f).unwrap().is_trivial());
    }

    #[test]
    fn incomplete_systems_refuse() {
        let g = symmetric(4);
        let s = g.sylow_subgroup(2).unwrap();
        let f = group_fusion_system(&g, 2, &s, 2).unwrap();
        assert!(!f.complete);
        assert!(matches!(focal_subgroup(&f), Err(Error::Incomplete(_))));
        assert!(matches!(direct_factor_check(&f), Err(Error::Incomplete(_))));
    }
}
