//! The invariant suite run by `verify-paper`: the 34992-order example plus
//! consistency checks over every catalog target.

use serde::Serialize;

use super::analyze::{analyze, catalog_targets, Analysis, AnalyzeOptions, StarOutcome};
use crate::error::Result;
use crate::fusion::{
    block_fusion_system, direct_factor_check, principal_oracles, FusionKind, IDEMPOTENT_BOUND,
};
use crate::permgroup::Permutation;
use crate::verdicts::{
    hyperfocal_surrogate_with, remark14_reproduction, FocalMethod, Remark14Report,
};

/// Largest group order for which block and group fusion are compared.
pub const THIRD_MAIN_THEOREM_BOUND: u64 = 2000;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Number of instances examined.
    pub instances: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn new(id: u8, name: &'static str) -> Self {
        Check {
            id,
            name,
            passed: true,
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.passed = false;
            self.failures.push(what());
        }
    }

    fn finish(mut self, min_instances: usize) -> Self {
        if self.instances < min_instances {
            self.passed = false;
            self.failures.push(format!(
                "only {} instances, need {min_instances}",
                self.instances
            ));
        }
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub version: &'static str,
    pub remark14: Remark14Report,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.remark14.passed && self.checks.iter().all(|c| c.passed)
    }
}

fn label(a: &Analysis, block: usize) -> String {
    format!("{}/p={}/block {}", a.target.name, a.target.prime, block)
}

pub fn run_suite(options: &AnalyzeOptions) -> Result<SuiteReport> {
    use rayon::prelude::*;
    let remark14 = remark14_reproduction()?;
    let targets = catalog_targets()?;
    let analyses = targets
        .par_iter()
        .map(|t| analyze(t, options))
        .collect::<Result<Vec<_>>>()?;
    let mut checks = vec![Check::new(1, "remark14 reproduction")];
    checks[0].record(remark14.passed, || "remark14 values differ".into());
    checks.push(tri_equivalence(&analyses));
    checks.push(divisibility(&analyses));
    checks.push(focal_oracles(&analyses)?);
    checks.push(frobenius(&analyses)?);
    checks.push(third_main_theorem(&analyses, options.fusion_cap)?);
    checks.push(direct_factors(&analyses)?);
    checks.push(star_freeness(&analyses));
    checks.push(table_validity(&analyses)?);
    checks.push(surrogate(&analyses)?);
    Ok(SuiteReport {
        version: super::analyze::VERSION,
        remark14,
        checks,
    })
}

fn tri_equivalence(analyses: &[Analysis]) -> Check {
    let mut c = Check::new(2, "conditions (i), (iii), (iv) agree");
    for a in analyses {
        for v in a.verdicts.iter().filter(|v| v.is_complete()) {
            c.record(v.consistent, || label(a, v.block));
        }
    }
    c.finish(20)
}

fn divisibility(analyses: &[Analysis]) -> Check {
    let mut c = Check::new(3, "|S:P|^2 |P:foc| divides the p-part of m");
    for a in analyses {
        for v in &a.verdicts {
            if let (Some(d), Some(f)) = (v.divides, v.focal_index) {
                c.record(d && v.irr0_count as u64 % f == 0, || label(a, v.block));
            }
        }
    }
    c.finish(1)
}

fn focal_oracles(analyses: &[Analysis]) -> Result<Check> {
    let mut c = Check::new(4, "focal and hyperfocal subgroups match the Sylow oracles");
    for a in analyses {
        let (b, f) = (&a.blocks[0], &a.focal[0]);
        if f.method != FocalMethod::FusionEnumeration {
            continue;
        }
        let (foc, hyp) = (f.foc.as_ref().unwrap(), f.hyp.as_ref().unwrap());
        let (ofoc, ohyp) = principal_oracles(&a.target.group, b.prime, &b.defect_group)?;
        let mut gens: Vec<Permutation> = hyp.generators().to_vec();
        gens.extend(
            b.defect_group
                .derived_subgroup()
                .generators()
                .iter()
                .cloned(),
        );
        let product = b.defect_group.subgroup(gens);
        let ok =
            foc.same_subgroup(&ofoc) && hyp.same_subgroup(&ohyp) && foc.same_subgroup(&product);
        c.record(ok, || label(a, 0));
    }
    Ok(c.finish(1))
}

fn frobenius(analyses: &[Analysis]) -> Result<Check> {
    let mut c = Check::new(5, "nilpotent fusion iff p-nilpotent");
    for a in analyses {
        let Some(n) = a.focal[0].nilpotent else {
            continue;
        };
        let ok = n == a.target.group.is_p_nilpotent(a.target.prime)?;
        c.record(ok, || label(a, 0));
    }
    Ok(c.finish(1))
}

fn third_main_theorem(analyses: &[Analysis], cap: usize) -> Result<Check> {
    let mut c = Check::new(6, "principal block fusion equals group fusion");
    for a in analyses {
        let order = a.target.group.order();
        if order > THIRD_MAIN_THEOREM_BOUND || order > IDEMPOTENT_BOUND {
            continue;
        }
        let Some(group) = a.focal[0]
            .fusion
            .as_ref()
            .filter(|f| f.complete && f.kind == FusionKind::Group)
        else {
            continue;
        };
        let block = block_fusion_system(&a.table, &a.blocks[0], cap)?;
        c.record(block.complete && block.same_as(group), || label(a, 0));
    }
    Ok(c.finish(1))
}

fn direct_factors(analyses: &[Analysis]) -> Result<Check> {
    let mut c = Check::new(7, "hyp/[hyp,P] is a direct factor of P/[hyp,P]");
    for a in analyses {
        for (i, f) in a.focal.iter().enumerate() {
            if let Some(sys) = f.fusion.as_ref().filter(|s| s.complete) {
                let ok = direct_factor_check(sys)?;
                c.record(ok, || label(a, i));
            }
        }
    }
    Ok(c.finish(1))
}

fn star_freeness(analyses: &[Analysis]) -> Check {
    let mut c = Check::new(8, "star action is free on height-zero characters");
    for a in analyses {
        let classes = a.table.classes();
        let p_regular: Vec<usize> = (0..classes.len())
            .filter(|&k| classes.class(k).representative.order() % a.target.prime != 0)
            .collect();
        for (i, s) in a.star.iter().enumerate() {
            let v = &a.verdicts[i];
            match s {
                StarOutcome::Orbits(orbits) => {
                    let f = v.focal_index.unwrap_or(0) as usize;
                    let ok = orbits.iter().all(|o| {
                        o.len() == f
                            && o.iter().all(|&r| {
                                a.table.degree(r) == a.table.degree(o[0])
                                    && p_regular
                                        .iter()
                                        .all(|&k| a.table.value(r, k) == a.table.value(o[0], k))
                            })
                    });
                    c.record(ok, || label(a, i));
                }
                // Ambiguity is only expected where block fusion is finer than G-fusion.
                StarOutcome::Ambiguous(m) if v.principal => {
                    c.record(false, || format!("{}: {m}", label(a, i)))
                }
                StarOutcome::Failed(m) => c.record(false, || format!("{}: {m}", label(a, i))),
                _ => {}
            }
        }
    }
    c.finish(1)
}

fn table_validity(analyses: &[Analysis]) -> Result<Check> {
    let mut c = Check::new(
        9,
        "character tables are orthogonal with correct centralizer orders",
    );
    let mut seen = std::collections::BTreeSet::new();
    for a in analyses {
        if !seen.insert(a.target.name.clone()) {
            continue;
        }
        let centralizers = a
            .table
            .classes()
            .classes()
            .iter()
            .map(|cl| Ok(a.target.group.centralizer(&cl.representative)?.order()))
            .collect::<Result<Vec<u64>>>()?;
        c.record(a.table.check_orthogonality(&centralizers), || {
            a.target.name.clone()
        });
    }
    Ok(c.finish(1))
}

fn surrogate(analyses: &[Analysis]) -> Result<Check> {
    let mut c = Check::new(10, "p'-degrees of the covered block iff P ∩ O^p(G) abelian");
    for a in analyses {
        if !a.target.group.is_p_solvable(a.target.prime)? {
            continue;
        }
        let r = hyperfocal_surrogate_with(&a.table, &a.blocks[0])?;
        c.record(r.holds && r.single_block, || label(a, 0));
    }
    Ok(c.finish(1))
}
