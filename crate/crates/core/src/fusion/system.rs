//! Fusion systems on a p-subgroup: plain conjugation for `F_P(G)`, Brauer
//! pairs for block fusion.

use std::collections::HashMap;

use rayon::prelude::*;

use super::algebra::{
    block_idempotent, block_idempotents_with, brauer_homomorphism, centralizer_of_subgroup,
    GroupAlgebraElement, IDEMPOTENT_BOUND,
};
use crate::blocks::Block;
use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::exactnum::{build_reduction_map, ReductionMap};
use crate::permgroup::{subgroup_class_data, PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FusionKind {
    Group,
    Block,
}

/// `Aut_F(Q)` for one class representative `Q`, acting on `Q \ {1}`.
#[derive(Clone, Debug)]
pub struct AutData {
    pub subgroup: PermGroup,
    /// Number of `P`-conjugates of `subgroup`.
    pub class_length: usize,
    /// Nonidentity elements of `Q`, sorted; the action permutes their indices.
    pub elements: Vec<Permutation>,
    /// `witnesses[i]` induces `action.generators()[i]` by `u ↦ g⁻¹ug`.
    pub witnesses: Vec<Permutation>,
    pub action: PermGroup,
}

impl AutData {
    fn new(q: &PermGroup, class_length: usize, candidates: &[Permutation]) -> Result<Self> {
        let mut elements = q.elements();
        elements.retain(|x| !x.is_identity());
        elements.sort();
        let index: HashMap<&Permutation, usize> =
            elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let degree = elements.len().max(1);
        let mut witnesses = Vec::new();
        let mut perms = Vec::new();
        for g in candidates {
            let mut images: Vec<usize> = (0..degree).collect();
            for (i, u) in elements.iter().enumerate() {
                images[i] = *index.get(&u.conj(g)).ok_or_else(|| {
                    Error::InternalConsistency("witness does not normalize Q".into())
                })?;
            }
            let perm = Permutation::from_images(images)?;
            if !perm.is_identity() {
                perms.push(perm);
                witnesses.push(g.clone());
            }
        }
        Ok(AutData {
            subgroup: q.clone(),
            class_length,
            elements,
            witnesses,
            action: PermGroup::new(degree, perms)?,
        })
    }

    /// `φ(u)` for an automorphism given as a permutation of element indices.
    pub fn apply(&self, phi: &Permutation, u_index: usize) -> &Permutation {
        &self.elements[phi.image(u_index)]
    }

    /// Order of `Aut_F(Q)`.
    pub fn aut_order(&self) -> u64 {
        self.action.order()
    }
}

#[derive(Clone, Debug)]
pub struct FusionSystem {
    pub prime: u64,
    pub kind: FusionKind,
    pub p_group: PermGroup,
    /// One entry per `P`-class of subgroups; empty when incomplete.
    pub subgroups: Vec<AutData>,
    /// False when subgroup enumeration hit the cap.
    pub complete: bool,
}

impl FusionSystem {
    fn incomplete(prime: u64, kind: FusionKind, p_group: &PermGroup) -> Self {
        FusionSystem {
            prime,
            kind,
            p_group: p_group.clone(),
            subgroups: Vec::new(),
            complete: false,
        }
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::Incomplete(format!(
                "subgroup classes of a group of order {} exceed the cap",
                self.p_group.order()
            )))
        }
    }

    /// Re-checks every witness: it lies in `g`, maps `Q` onto `Q ≤ P`, and
    /// induces the stored permutation.
    pub fn validate(&self, g: &PermGroup) -> bool {
        self.subgroups.iter().all(|a| {
            a.subgroup.is_subgroup_of(&self.p_group)
                && a.witnesses
                    .iter()
                    .zip(a.action.generators())
                    .all(|(w, phi)| {
                        g.contains(w)
                            && a.elements
                                .iter()
                                .enumerate()
                                .all(|(i, u)| u.conj(w) == *a.apply(phi, i))
                    })
        })
    }

    /// Same underlying group and the same `Aut_F(Q)` on every class.
    pub fn same_as(&self, other: &FusionSystem) -> bool {
        self.complete == other.complete
            && self.p_group.same_subgroup(&other.p_group)
            && self.subgroups.len() == other.subgroups.len()
            && self.subgroups.iter().zip(&other.subgroups).all(|(a, b)| {
                a.subgroup.same_subgroup(&b.subgroup)
                    && a.elements == b.elements
                    && a.action.same_subgroup(&b.action)
            })
    }
}

fn class_data(p_group: &PermGroup, cap: usize) -> Result<Option<Vec<(PermGroup, usize)>>> {
    match subgroup_class_data(p_group, cap) {
        Ok(d) => Ok(Some(d)),
        Err(Error::Capacity { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `F_P(G)`: `Aut_F(Q)` is the image of `N_G(Q)`.
pub fn group_fusion_system(
    g: &PermGroup,
    p: u64,
    p_group: &PermGroup,
    cap: usize,
) -> Result<FusionSystem> {
    if !p_group.is_p_group(p) || !p_group.is_subgroup_of(g) {
        return Err(Error::Domain("expected a p-subgroup of the group".into()));
    }
    let Some(data) = class_data(p_group, cap)? else {
        return Ok(FusionSystem::incomplete(p, FusionKind::Group, p_group));
    };
    let subgroups = data
        .par_iter()
        .map(|(q, len)| {
            let n = g.normalizer(q)?;
            AutData::new(q, *len, n.generators())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FusionSystem {
        prime: p,
        kind: FusionKind::Group,
        p_group: p_group.clone(),
        subgroups,
        complete: true,
    })
}

struct PairContext<'a> {
    g: &'a PermGroup,
    reduction: ReductionMap,
}

impl PairContext<'_> {
    fn idempotents(&self, q: &PermGroup) -> Result<(PermGroup, Vec<GroupAlgebraElement>)> {
        let c = centralizer_of_subgroup(self.g, q)?;
        let idems = block_idempotents_with(&c, &self.reduction)?
            .into_iter()
            .map(|(e, _)| e)
            .collect();
        Ok((c, idems))
    }

    /// The unique `e_Q` with `(Q, e_Q) ⊴ (R, e_R)`, for `Q ⊴ R`.
    fn descend(
        &self,
        q: &PermGroup,
        r: &PermGroup,
        e_r: &GroupAlgebraElement,
    ) -> Result<GroupAlgebraElement> {
        let (_, idems) = self.idempotents(q)?;
        let mut found: Vec<GroupAlgebraElement> = Vec::new();
        for e in idems {
            if !e.is_invariant_under(r) {
                continue;
            }
            if brauer_homomorphism(&e, r)?.mul(e_r) == *e_r {
                found.push(e);
            }
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            n => Err(Error::InternalConsistency(format!(
                "{n} Brauer pairs below a given pair on a subgroup of order {}",
                q.order()
            ))),
        }
    }

    /// `e_Q` with `(Q, e_Q) ≤ (P, e_P)` along `Q ⊴ N_P(Q) ⊴ …  ⊴ P`.
    fn pair_below(
        &self,
        q: &PermGroup,
        p_group: &PermGroup,
        e_p: &GroupAlgebraElement,
    ) -> Result<GroupAlgebraElement> {
        let mut chain = vec![q.clone()];
        while chain.last().unwrap().order() < p_group.order() {
            let next = p_group.normalizer(chain.last().unwrap())?;
            chain.push(next);
        }
        let mut e = e_p.clone();
        for w in chain.windows(2).rev() {
            e = self.descend(&w[0], &w[1], &e)?;
        }
        Ok(e)
    }
}

/// `F_{(P,e_P)}(G, B)` with `P` the block's defect group and `e_P` the least
/// block idempotent of `kC_G(P)` with `Br_P(b) e_P = e_P`.
pub fn block_fusion_system(
    table: &CharacterTable,
    block: &Block,
    cap: usize,
) -> Result<FusionSystem> {
    let g = table.group();
    let p = block.prime;
    if g.order() > IDEMPOTENT_BOUND {
        return Err(Error::capacity(
            "group order for Brauer pairs",
            IDEMPOTENT_BOUND,
        ));
    }
    let p_group = &block.defect_group;
    let Some(data) = class_data(p_group, cap)? else {
        return Ok(FusionSystem::incomplete(p, FusionKind::Block, p_group));
    };
    let ctx = PairContext {
        g,
        reduction: build_reduction_map(table.exponent(), p),
    };
    let b = block_idempotent(table, block, &ctx.reduction)?;
    let br = brauer_homomorphism(&b, p_group)?;
    let (_, idems) = ctx.idempotents(p_group)?;
    let e_p = idems
        .into_iter()
        .filter(|e| br.mul(e) == *e)
        .min()
        .ok_or_else(|| Error::InternalConsistency("no maximal Brauer pair".into()))?;
    let subgroups = data
        .par_iter()
        .map(|(q, len)| {
            let e_q = ctx.pair_below(q, p_group, &e_p)?;
            let n = g.normalizer(q)?;
            let mut stab = q.clone();
            n.for_each_element(|x| {
                if !stab.contains(x) && e_q.conj(x) == e_q {
                    stab = stab.closure(std::slice::from_ref(x));
                }
                true
            });
            AutData::new(q, *len, stab.generators())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FusionSystem {
        prime: p,
        kind: FusionKind::Block,
        p_group: p_group.clone(),
        subgroups,
        complete: true,
    })
}
