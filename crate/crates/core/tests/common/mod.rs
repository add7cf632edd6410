//! Reference computations written independently of the library code.
#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::PI;

use pitchopt_core::{Instance, PitchCatalog};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(a_k, b_k)` for `k = 1..=harmonics` of a profile built from integer pitch
/// lengths, raised on `[start, start + (1 - q) l)` of every pitch, by direct
/// integration of `(2/T) f(x) cos` and `(2/T) f(x) sin` per raised interval.
pub fn spectrum(lengths: &[u64], h: f64, q: f64, harmonics: usize) -> Vec<(f64, f64)> {
    let t: f64 = lengths.iter().sum::<u64>() as f64;
    (1..=harmonics)
        .map(|k| {
            let w = 2.0 * PI * k as f64 / t;
            let mut start = 0.0;
            let (mut a, mut b) = (0.0, 0.0);
            for &l in lengths {
                let end = start + (1.0 - q) * l as f64;
                a += (2.0 / t) * h * ((w * end).sin() - (w * start).sin()) / w;
                b += (2.0 / t) * h * ((w * start).cos() - (w * end).cos()) / w;
                start += l as f64;
            }
            (a, b)
        })
        .collect()
}

/// Midpoint-rule integration of the same coefficients.
pub fn quadrature(lengths: &[u64], h: f64, q: f64, k: usize, steps_per_unit: usize) -> (f64, f64) {
    let mut profile = Vec::new();
    for &l in lengths {
        for s in 0..l as usize * steps_per_unit {
            let x = (s as f64 + 0.5) / steps_per_unit as f64;
            profile.push(if x < (1.0 - q) * l as f64 { h } else { 0.0 });
        }
    }
    let n = profile.len() as f64;
    let (mut a, mut b) = (0.0, 0.0);
    for (i, f) in profile.iter().enumerate() {
        let theta = 2.0 * PI * k as f64 * (i as f64 + 0.5) / n;
        a += f * theta.cos();
        b += f * theta.sin();
    }
    (2.0 * a / n, 2.0 * b / n)
}

pub fn exact(lengths: &[u64], h: f64, q: f64, harmonics: usize) -> f64 {
    spectrum(lengths, h, q, harmonics)
        .iter()
        .map(|(a, b)| (a * a + b * b).sqrt())
        .fold(0.0, f64::max)
}

pub fn approx(lengths: &[u64], h: f64, q: f64, harmonics: usize) -> f64 {
    spectrum(lengths, h, q, harmonics)
        .iter()
        .map(|(a, b)| a.abs().max(b.abs()))
        .fold(0.0, f64::max)
}

/// Noise of a type vector under the instance's catalog and precision.
pub fn noise_of(inst: &Instance, types: &[usize], exact_objective: bool) -> f64 {
    let cat = inst.catalog();
    let lengths: Vec<u64> = types.iter().map(|&p| cat.length(p)).collect();
    if exact_objective {
        exact(&lengths, cat.height(), cat.groove(), inst.harmonics())
    } else {
        approx(&lengths, cat.height(), cat.groove(), inst.harmonics())
    }
}

pub fn smallest_rotation(types: &[usize]) -> Vec<usize> {
    let mut best = types.to_vec();
    for s in 1..types.len() {
        let mut r = types.to_vec();
        r.rotate_left(s);
        best = best.min(r);
    }
    best
}

/// Constraint check written from the definitions.
pub fn feasible(inst: &Instance, types: &[usize]) -> bool {
    let r = inst.catalog().types();
    let n = types.len();
    for p in 0..r {
        let c = types.iter().filter(|&&t| t == p).count();
        if c < inst.min_occ()[p] || c > inst.max_occ()[p] {
            return false;
        }
    }
    let wrap = inst.cyclic();
    let steps = if wrap { n } else { n - 1 };
    for i in 0..steps {
        if inst
            .incompatible()
            .contains(&(types[i], types[(i + 1) % n]))
        {
            return false;
        }
    }
    for (p, limit) in inst.max_seq().iter().enumerate() {
        let Some(limit) = *limit else { continue };
        if types.iter().all(|&t| t == p) {
            if n > limit {
                return false;
            }
            continue;
        }
        let span = if wrap { 2 * n } else { n };
        let mut run = 0;
        for i in 0..span {
            if types[i % n] == p {
                run += 1;
                if run > limit {
                    return false;
                }
            } else {
                run = 0;
            }
        }
    }
    true
}

/// Minimum noise over all `r^N` type tuples; ties go to the smallest
/// rotation (exact objective, rotation-invariant constraints) or the
/// smallest tuple.
pub fn brute_force(inst: &Instance, exact_objective: bool) -> Option<(f64, Vec<usize>)> {
    let r = inst.catalog().types();
    let n = inst.pitches();
    let rotate = exact_objective
        && (inst.cyclic()
            || (inst.incompatible().is_empty() && inst.max_seq().iter().all(Option::is_none)));
    let mut types = vec![0; n];
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        if feasible(inst, &types) {
            let v = noise_of(inst, &types, exact_objective);
            let key = if rotate {
                smallest_rotation(&types)
            } else {
                types.clone()
            };
            let better = match &best {
                None => true,
                Some((bv, bk)) => v < bv - 1e-9 || ((v - bv).abs() <= 1e-9 && key < *bk),
            };
            if better {
                best = Some((v, key));
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            types[i] += 1;
            if types[i] < r {
                break;
            }
            types[i] = 0;
        }
    }
}

/// Ordered ways to write `total` as `parts` summands drawn from `lengths`.
pub fn compositions(total: u64, parts: usize, lengths: &[u64]) -> u128 {
    fn go(
        total: u64,
        parts: usize,
        lengths: &[u64],
        memo: &mut HashMap<(u64, usize), u128>,
    ) -> u128 {
        if parts == 0 {
            return u128::from(total == 0);
        }
        if let Some(&v) = memo.get(&(total, parts)) {
            return v;
        }
        let v = lengths
            .iter()
            .filter(|&&l| l <= total)
            .map(|&l| go(total - l, parts - 1, lengths, memo))
            .sum();
        memo.insert((total, parts), v);
        v
    }
    go(total, parts, lengths, &mut HashMap::new())
}

pub fn reference() -> PitchCatalog {
    PitchCatalog::reference()
}

/// Uniform random type vector.
pub fn random_types(rng: &mut impl Rng, len: usize, r: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..r)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
