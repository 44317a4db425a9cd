//! The per-target pipeline (table, blocks, fusion, star orbits, verdicts) and
//! batch orchestration over many targets.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{lookup, CATALOG};
use crate::blocks::{block_partition_with, describe_block, Block};
use crate::chartab::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::exactnum::{build_reduction_map, ReductionMap};
use crate::fusion::{direct_factor_check, FusionKind};
use crate::permgroup::group::check_prime;
use crate::permgroup::{GroupFile, PermGroup, DEFAULT_SUBGROUP_CAP};
use crate::star::{linear_characters_mod_focal, star_orbits};
use crate::verdicts::{focal_data, verdict_from, FocalData, FocalMethod, Verdict};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Largest number of subgroups of a defect group to enumerate.
    pub fusion_cap: usize,
    /// Abort the batch on the first per-target error.
    pub strict: bool,
    /// Record stage timings (the only nondeterministic report content).
    pub timing: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            fusion_cap: DEFAULT_SUBGROUP_CAP,
            strict: false,
            timing: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Target {
    pub name: String,
    pub group: Arc<PermGroup>,
    pub prime: u64,
}

impl Target {
    pub fn new(name: &str, group: PermGroup, prime: u64) -> Self {
        Target {
            name: name.to_string(),
            group: Arc::new(group),
            prime,
        }
    }

    pub fn catalog(name: &str, prime: u64) -> Result<Self> {
        Ok(Target::new(name, lookup(name)?.build()?, prime))
    }

    pub fn from_file(file: &GroupFile, prime: u64) -> Result<Self> {
        Ok(Target::new(&file.name, file.build()?, prime))
    }
}

/// Every catalog entry at each of its default primes, in catalog order.
pub fn catalog_targets() -> Result<Vec<Target>> {
    let mut out = Vec::new();
    for entry in CATALOG {
        let g = Arc::new(entry.build()?);
        for &p in entry.default_primes {
            out.push(Target {
                name: entry.name.to_string(),
                group: Arc::clone(&g),
                prime: p,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub enum StarOutcome {
    Orbits(Vec<Vec<usize>>),
    /// A linear character was not single-valued on fused p-parts.
    Ambiguous(String),
    Failed(String),
    /// No focal subgroup was available.
    Unavailable,
}

/// All intermediate results for one target, kept for invariant checks.
pub struct Analysis {
    pub target: Target,
    pub table: CharacterTable,
    pub reduction: ReductionMap,
    pub blocks: Vec<Block>,
    pub focal: Vec<FocalData>,
    pub star: Vec<StarOutcome>,
    pub verdicts: Vec<Verdict>,
    /// Microseconds per stage.
    pub timing: BTreeMap<&'static str, u64>,
}

fn orbits_for(table: &CharacterTable, block: &Block, focal: &FocalData) -> StarOutcome {
    let Some(foc) = &focal.foc else {
        return StarOutcome::Unavailable;
    };
    let run = || -> Result<Vec<Vec<usize>>> {
        let lambdas = linear_characters_mod_focal(&block.defect_group, foc)?;
        star_orbits(table, block, &lambdas)
    };
    match run() {
        Ok(o) => StarOutcome::Orbits(o),
        Err(Error::WellDefinedness(m)) => StarOutcome::Ambiguous(m),
        Err(e) => StarOutcome::Failed(e.to_string()),
    }
}

pub fn analyze(target: &Target, options: &AnalyzeOptions) -> Result<Analysis> {
    check_prime(target.prime)?;
    let mut timing = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |stage: &'static str, timing: &mut BTreeMap<&'static str, u64>| {
        timing.insert(stage, clock.elapsed().as_micros() as u64);
        clock = Instant::now();
    };
    let table = character_table(&target.group)?;
    lap("character_table", &mut timing);
    let reduction = build_reduction_map(table.exponent(), target.prime);
    let blocks = block_partition_with(&table, &reduction)?;
    lap("blocks", &mut timing);
    let focal = blocks
        .iter()
        .map(|b| focal_data(&table, b, options.fusion_cap))
        .collect::<Result<Vec<_>>>()?;
    lap("fusion", &mut timing);
    let star = blocks
        .iter()
        .zip(&focal)
        .map(|(b, f)| orbits_for(&table, b, f))
        .collect();
    lap("star", &mut timing);
    let verdicts = blocks
        .iter()
        .zip(&focal)
        .enumerate()
        .map(|(i, (b, f))| verdict_from(&target.name, &table, i, b, f))
        .collect();
    Ok(Analysis {
        target: target.clone(),
        table,
        reduction,
        blocks,
        focal,
        star,
        verdicts,
        timing,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub name: String,
    pub degree: usize,
    pub order: u64,
    pub prime: u64,
    pub class_count: usize,
    pub exponent: u64,
    pub reduction_map: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupClassEntry {
    pub order: u64,
    pub class_length: usize,
    pub aut_order: u64,
    pub p_group: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionSummary {
    pub block: usize,
    pub kind: Option<FusionKind>,
    pub complete: bool,
    pub method: FocalMethod,
    pub subgroup_classes: Vec<SubgroupClassEntry>,
    pub focal_index: Option<u64>,
    pub hyperfocal_index: Option<u64>,
    pub nilpotent: Option<bool>,
    pub direct_factor: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitEntry {
    pub representative: usize,
    pub degree: u64,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSummary {
    pub block: usize,
    pub focal_index: Option<u64>,
    pub status: &'static str,
    pub orbit_count: Option<usize>,
    pub orbits: Vec<OrbitEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetReport {
    pub header: Header,
    pub blocks: Vec<serde_json::Value>,
    pub fusion: Vec<FusionSummary>,
    pub star: Vec<OrbitSummary>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<BTreeMap<&'static str, u64>>,
}

impl Analysis {
    pub fn report(&self, options: &AnalyzeOptions) -> Result<TargetReport> {
        let g = &self.target.group;
        let header = Header {
            name: self.target.name.clone(),
            degree: g.degree(),
            order: g.order(),
            prime: self.target.prime,
            class_count: self.table.len(),
            exponent: self.table.exponent(),
            reduction_map: self.reduction.describe(),
        };
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut v = describe_block(&self.table, b);
                v["index"] = i.into();
                v
            })
            .collect();
        let mut fusion = Vec::new();
        for (i, (b, f)) in self.blocks.iter().zip(&self.focal).enumerate() {
            let index =
                |h: &Option<PermGroup>| h.as_ref().map(|h| b.defect_group.order() / h.order());
            let system = f.fusion.as_ref();
            let direct_factor = match system {
                Some(s) if s.complete => Some(direct_factor_check(s)?),
                _ => None,
            };
            fusion.push(FusionSummary {
                block: i,
                kind: system.map(|s| s.kind),
                complete: system.is_some_and(|s| s.complete),
                method: f.method,
                subgroup_classes: system
                    .map(|s| {
                        s.subgroups
                            .iter()
                            .map(|a| SubgroupClassEntry {
                                order: a.subgroup.order(),
                                class_length: a.class_length,
                                aut_order: a.aut_order(),
                                p_group: a.action.is_p_group(b.prime),
                            })
                            .collect()
                    })
                    .unwrap_or_default(),
                focal_index: index(&f.foc),
                hyperfocal_index: index(&f.hyp),
                nilpotent: f.nilpotent,
                direct_factor,
            });
        }
        let star = self
            .star
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let focal_index = self.verdicts[i].focal_index;
                let (status, orbits, message) = match s {
                    StarOutcome::Orbits(o) => ("ok", Some(o), None),
                    StarOutcome::Ambiguous(m) => ("ambiguous", None, Some(m.clone())),
                    StarOutcome::Failed(m) => ("failed", None, Some(m.clone())),
                    StarOutcome::Unavailable => ("unavailable", None, None),
                };
                OrbitSummary {
                    block: i,
                    focal_index,
                    status,
                    orbit_count: orbits.map(|o| o.len()),
                    orbits: orbits
                        .map(|o| {
                            o.iter()
                                .map(|orbit| OrbitEntry {
                                    representative: orbit[0],
                                    degree: self.table.degree(orbit[0]),
                                    size: orbit.len(),
                                })
                                .collect()
                        })
                        .unwrap_or_default(),
                    message,
                }
            })
            .collect();
        Ok(TargetReport {
            header,
            blocks,
            fusion,
            star,
            verdicts: self.verdicts.clone(),
            timing_us: options.timing.then(|| self.timing.clone()),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum TargetOutcome {
    Ok {
        report: Box<TargetReport>,
    },
    Error {
        name: String,
        prime: u64,
        error: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct BatchReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub targets: Vec<TargetOutcome>,
}

impl BatchReport {
    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.targets.iter().flat_map(|t| match t {
            TargetOutcome::Ok { report } => report.verdicts.iter(),
            TargetOutcome::Error { .. } => [].iter(),
        })
    }

    pub fn all_consistent(&self) -> bool {
        self.verdicts().all(|v| v.consistent)
    }

    pub fn error_count(&self) -> usize {
        self.targets
            .iter()
            .filter(|t| matches!(t, TargetOutcome::Error { .. }))
            .count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per verdict; errors become comment lines.
    pub fn to_tsv(&self) -> String {
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        let flag = |x: Option<bool>| x.map_or("-".to_string(), |v| v.to_string());
        let mut out = format!("# {} {}\n", self.tool, self.version);
        out.push_str(
            "group\tprime\tblock\tprincipal\tdefect\tm\tnu_m\tsylow_index_sq\tfocal_index\trhs\tirr0_count\
             \tcond_i\tcond_iii\tcond_iv\tconsistent\tfocal_method\treduction_map\n",
        );
        for t in &self.targets {
            match t {
                TargetOutcome::Ok { report } => {
                    for v in &report.verdicts {
                        let method = serde_json::to_value(v.focal_method).expect("enum serializes");
                        out.push_str(&format!(
                            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                            v.group,
                            v.prime,
                            v.block,
                            v.principal,
                            v.defect,
                            v.m,
                            v.nu_m,
                            v.sylow_index_sq,
                            opt(v.focal_index),
                            opt(v.rhs),
                            v.irr0_count,
                            flag(v.cond_i),
                            flag(v.cond_iii),
                            flag(v.cond_iv),
                            v.consistent,
                            method.as_str().unwrap_or_default(),
                            report.header.reduction_map,
                        ));
                    }
                }
                TargetOutcome::Error { name, prime, error } => {
                    out.push_str(&format!("# error\t{name}\t{prime}\t{error}\n"));
                }
            }
        }
        out
    }
}

/// Analyze every target in parallel; outcomes keep the input order.
/// Per-target errors are recorded unless `strict` is set.
pub fn run_batch(targets: &[Target], options: &AnalyzeOptions) -> Result<BatchReport> {
    let outcomes: Vec<Result<TargetReport>> = targets
        .par_iter()
        .map(|t| analyze(t, options)?.report(options))
        .collect();
    let mut out = Vec::with_capacity(outcomes.len());
    for (t, r) in targets.iter().zip(outcomes) {
        match r {
            Ok(report) => out.push(TargetOutcome::Ok {
                report: Box::new(report),
            }),
            Err(e) if options.strict => return Err(e),
            Err(e) => out.push(TargetOutcome::Error {
                name: t.name.clone(),
                prime: t.prime,
                error: e.to_string(),
            }),
        }
    }
    Ok(BatchReport {
        tool: "nilblock",
        version: VERSION,
        targets: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_single_target() {
        let t = Target::catalog("a5", 2).unwrap();
        let r = run_batch(&[t], &AnalyzeOptions::default()).unwrap();
        let v: Vec<&Verdict> = r.verdicts().collect();
        assert_eq!(v[0].m, 44);
        assert!(r.all_consistent());
        assert!(r
            .to_tsv()
            .lines()
            .nth(2)
            .unwrap()
            .starts_with("a5\t2\t0\ttrue"));
    }

    #[test]
    fn errors_are_recorded_unless_strict() {
        let targets = [
            Target::catalog("s3", 2).unwrap(),
            Target::catalog("s3", 4).unwrap(),
        ];
        let r = run_batch(&targets, &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.error_count(), 1);
        let strict = AnalyzeOptions {
            strict: true,
            ..Default::default()
        };
        assert!(run_batch(&targets, &strict).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let targets: Vec<Target> = ["s4", "dicyclic12", "frobenius21"]
            .iter()
            .flat_map(|n| {
                lookup(n)
                    .unwrap()
                    .default_primes
                    .iter()
                    .map(move |&p| Target::catalog(n, p).unwrap())
            })
            .collect();
        let a = run_batch(&targets, &AnalyzeOptions::default())
            .unwrap()
            .to_json();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| {
            run_batch(&targets, &AnalyzeOptions::default())
                .unwrap()
                .to_json()
        });
        assert_eq!(a, b);
    }
}
