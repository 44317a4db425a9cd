//! Subgroups of p-groups, layer by layer through cyclic extensions.

use std::collections::HashMap;

use super::enumerate::ElementIndex;
use super::group::{check_prime, PermGroup};
use crate::error::{Error, Result};
use crate::exactnum::arith::prime_divisors;

pub const DEFAULT_SUBGROUP_CAP: usize = 20_000;

type Bits = Vec<u64>;

fn bits_contains(bits: &Bits, i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

fn bits_insert(bits: &mut Bits, i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn bits_members(bits: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in bits.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            let t = x.trailing_zeros() as usize;
            out.push(w * 64 + t);
            x &= x - 1;
        }
    }
    out
}

/// A subgroup of the enumerated p-group, as a membership bitset plus generators.
#[derive(Clone)]
struct Sub {
    bits: Bits,
    members: Vec<usize>,
    gens: Vec<usize>,
}

/// Number of subspaces of `F_p^r`.
fn subspace_count(r: u32, p: u64) -> u128 {
    // Gaussian binomials via the recurrence [r,k] = [r-1,k-1] + p^k [r-1,k].
    let mut row = vec![1u128];
    for n in 1..=r as usize {
        let mut next = vec![1u128; n + 1];
        for k in 1..n {
            next[k] = row[k - 1]
                .saturating_add((p as u128).saturating_pow(k as u32).saturating_mul(row[k]));
        }
        row = next;
    }
    row.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// Rank of a greedily built elementary abelian subgroup (central elements first).
fn elementary_abelian_rank(idx: &ElementIndex, p: u64) -> u32 {
    let n = idx.len();
    let order_p: Vec<usize> = (1..n).filter(|&a| idx.order_of(a) == p).collect();
    let commutes = |a: usize, b: usize| idx.mul(a, b) == idx.mul(b, a);
    let central: Vec<usize> = order_p
        .iter()
        .copied()
        .filter(|&a| (0..n).all(|b| commutes(a, b)))
        .collect();
    let mut members = vec![0usize];
    let mut gens: Vec<usize> = Vec::new();
    let mut rank = 0;
    for &x in central.iter().chain(order_p.iter()) {
        if members.contains(&x) || !gens.iter().all(|&g| commutes(g, x)) {
            continue;
        }
        gens.push(x);
        rank += 1;
        let mut next = Vec::with_capacity(members.len() * p as usize);
        let mut power = 0usize;
        for _ in 0..p {
            for &m in &members {
                next.push(idx.mul(m, power));
            }
            power = idx.mul(power, x);
        }
        members = next;
    }
    rank
}

/// All subgroups of `P` (grouped by order), or a capacity error beyond `cap`.
fn all_subgroups(idx: &ElementIndex, p: u64, cap: usize) -> Result<Vec<Sub>> {
    let n = idx.len();
    let words = n.div_ceil(64);
    let rank = elementary_abelian_rank(idx, p);
    if subspace_count(rank, p) > cap as u128 {
        return Err(Error::capacity(
            format!(
                "subgroup enumeration (at least {} subgroups)",
                subspace_count(rank, p)
            ),
            cap as u64,
        ));
    }
    let mut trivial_bits = vec![0u64; words];
    bits_insert(&mut trivial_bits, 0);
    let mut all = vec![Sub {
        bits: trivial_bits,
        members: vec![0],
        gens: Vec::new(),
    }];
    let mut layer_start = 0;
    while all[layer_start].members.len() < n {
        let layer_end = all.len();
        let mut seen: HashMap<Bits, ()> = HashMap::new();
        for m_idx in layer_start..layer_end {
            let m = all[m_idx].clone();
            let mut covered = m.bits.clone();
            for g in 0..n {
                if bits_contains(&covered, g) {
                    continue;
                }
                let g_inv = idx.inv(g);
                let normalizes = m
                    .gens
                    .iter()
                    .all(|&x| bits_contains(&m.bits, idx.mul(idx.mul(g_inv, x), g)));
                if !normalizes {
                    continue;
                }
                let mut gp = 0;
                for _ in 0..p {
                    gp = idx.mul(gp, g);
                }
                if !bits_contains(&m.bits, gp) {
                    continue;
                }
                let mut bits = vec![0u64; words];
                let mut power = 0usize;
                for _ in 0..p {
                    for &x in &m.members {
                        bits_insert(&mut bits, idx.mul(x, power));
                    }
                    power = idx.mul(power, g);
                }
                for (c, b) in covered.iter_mut().zip(&bits) {
                    *c |= b;
                }
                if seen.insert(bits.clone(), ()).is_none() {
                    let mut gens = m.gens.clone();
                    gens.push(g);
                    all.push(Sub {
                        members: bits_members(&bits),
                        bits,
                        gens,
                    });
                    if all.len() > cap {
                        return Err(Error::capacity("subgroup enumeration", cap as u64));
                    }
                }
            }
        }
        layer_start = layer_end;
    }
    Ok(all)
}

/// Representatives of the `P`-conjugacy classes of subgroups, ordered by size.
pub fn subgroup_classes(p_group: &PermGroup, cap: usize) -> Result<Vec<PermGroup>> {
    Ok(subgroup_class_data(p_group, cap)?
        .into_iter()
        .map(|(h, _)| h)
        .collect())
}

/// Class representatives with the length of their `P`-conjugacy class.
pub fn subgroup_class_data(p_group: &PermGroup, cap: usize) -> Result<Vec<(PermGroup, usize)>> {
    let order = p_group.order();
    if order == 1 {
        return Ok(vec![(p_group.clone(), 1)]);
    }
    let primes = prime_divisors(order);
    if primes.len() != 1 {
        return Err(Error::Domain(format!(
            "group of order {order} is not a p-group"
        )));
    }
    let p = primes[0];
    check_prime(p)?;
    let idx = ElementIndex::new(p_group)?;
    let subs = all_subgroups(&idx, p, cap)?;
    let by_bits: HashMap<&Bits, usize> =
        subs.iter().enumerate().map(|(i, s)| (&s.bits, i)).collect();
    let conj_gens: Vec<usize> = p_group
        .generators()
        .iter()
        .map(|g| idx.index_of_member(g))
        .collect();
    let mut assigned = vec![false; subs.len()];
    let mut out = Vec::new();
    for i in 0..subs.len() {
        if assigned[i] {
            continue;
        }
        assigned[i] = true;
        let mut orbit = vec![i];
        let mut k = 0;
        while k < orbit.len() {
            let s = &subs[orbit[k]];
            for &g in &conj_gens {
                let mut bits = vec![0u64; s.bits.len()];
                for &x in &s.members {
                    bits_insert(&mut bits, idx.conj(x, g));
                }
                let j = by_bits[&bits];
                if !assigned[j] {
                    assigned[j] = true;
                    orbit.push(j);
                }
            }
            k += 1;
        }
        let gens = subs[i]
            .gens
            .iter()
            .map(|&g| idx.element(g).clone())
            .collect();
        out.push((p_group.subgroup(gens), orbit.len()));
    }
    Ok(out)
}
