//! Pitch catalogs, problem instances and pitch sequences.
//!
//! Pitch types are numbered from 1 in everything a user sees (sequence
//! strings, instance files, model variable names) and from 0 internally.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Exact rational used for length ratios.
pub type Rational = Ratio<i128>;

/// Denominator bound applied when a ratio has to be approximated.
pub const MAX_DENOMINATOR: i128 = 1_000_000;

/// Upper cap on the number of harmonics used by default.
pub const MAX_DEFAULT_HARMONICS: usize = 200;

/// Parses a ratio written as an integer, a decimal (`1.25`) or a fraction
/// (`5/4`). Decimals with more than six fractional digits are rounded to the
/// closest rational with denominator at most 10^6.
pub fn parse_ratio(text: &str) -> Result<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: i128 = num
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("bad ratio numerator in {text:?}")))?;
        let den: i128 = den
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("bad ratio denominator in {text:?}")))?;
        if den == 0 {
            return invalid(format!("zero denominator in {text:?}"));
        }
        return Ok(Rational::new(num, den));
    }
    let (int_part, frac_part) = text.split_once('.').unwrap_or((text, ""));
    let digits_ok = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    let sign_stripped = int_part.strip_prefix('-').unwrap_or(int_part);
    if !text.is_empty()
        && digits_ok(sign_stripped)
        && digits_ok(frac_part)
        && frac_part.len() <= 6
        && !(sign_stripped.is_empty() && frac_part.is_empty())
    {
        let den = 10_i128.pow(frac_part.len() as u32);
        let whole: i128 = if sign_stripped.is_empty() {
            0
        } else {
            sign_stripped.parse().unwrap()
        };
        let frac: i128 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().unwrap()
        };
        let magnitude = Rational::new(whole * den + frac, den);
        return Ok(if int_part.starts_with('-') {
            -magnitude
        } else {
            magnitude
        });
    }
    let value: f64 = text
        .parse()
        .map_err(|_| Error::Validation(format!("cannot parse ratio {text:?}")))?;
    ratio_from_f64(value, MAX_DENOMINATOR)
}

/// Best rational approximation of `value` with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn ratio_from_f64(value: f64, max_den: i128) -> Result<Rational> {
    if !value.is_finite() {
        return invalid(format!("non-finite ratio {value}"));
    }
    let negative = value < 0.0;
    let mut x = value.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0_i128, 1_i128, 1_i128, 0_i128);
    for _ in 0..64 {
        let a = x.floor();
        if a > 1e18 {
            break;
        }
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a as f64;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    if q1 == 0 {
        return invalid(format!("ratio {value} too large"));
    }
    let r = Rational::new(p1, q1);
    Ok(if negative { -r } else { r })
}

/// Reduces relative pitch lengths to integer lengths over the largest common
/// unit. Returns the unit (in the same scale as `ratios`) and the lengths.
pub fn derive_unit(ratios: &[Rational]) -> Result<(Rational, Vec<u64>)> {
    let Some(&longest) = ratios.last() else {
        return invalid("at least one pitch ratio is required");
    };
    if ratios.iter().any(|r| *r <= Rational::from_integer(0)) {
        return invalid("pitch ratios must be positive");
    }
    if ratios.windows(2).any(|w| w[0] >= w[1]) {
        return invalid("pitch ratios must be strictly increasing");
    }
    // r_i / r_max = p_i / q_i in lowest terms; u = r_max / lcm(q_i).
    let lcm = ratios
        .iter()
        .map(|r| *(*r / longest).denom())
        .fold(1_i128, |acc, q| acc.lcm(&q));
    let unit = longest / Rational::from_integer(lcm);
    let lengths = ratios
        .iter()
        .map(|r| {
            let l = *r / unit;
            debug_assert!(l.is_integer());
            u64::try_from(l.to_integer()).map_err(|_| Error::Range("pitch length overflow".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((unit, lengths))
}

/// The pitch types available for a tire track.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PitchCatalog {
    #[serde(serialize_with = "ser_ratios")]
    ratios: Vec<Rational>,
    lengths: Vec<u64>,
    #[serde(serialize_with = "ser_ratio")]
    unit: Rational,
    height: f64,
    groove: f64,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_ratios<S: serde::Serializer>(rs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(|r| r.to_string()))
}

impl PitchCatalog {
    pub fn new(ratios: Vec<Rational>, height: f64, groove: f64) -> Result<Self> {
        if !(height > 0.0 && height.is_finite()) {
            return invalid(format!("pitch height must be positive, got {height}"));
        }
        if !(groove > 0.0 && groove < 1.0) {
            return invalid(format!("groove fraction must lie in (0, 1), got {groove}"));
        }
        let (unit, lengths) = derive_unit(&ratios)?;
        Ok(Self {
            ratios,
            lengths,
            unit,
            height,
            groove,
        })
    }

    /// Catalog built directly from integer lengths.
    pub fn from_lengths(lengths: &[u64], height: f64, groove: f64) -> Result<Self> {
        let ratios = lengths
            .iter()
            .map(|&l| Rational::from_integer(l as i128))
            .collect();
        Self::new(ratios, height, groove)
    }

    /// Ratios 1 : 1.25 : 1.5 with h = 100 and q = 0.1, reduced to lengths 4, 5, 6.
    pub fn reference() -> Self {
        let ratios = vec![
            Rational::new(1, 1),
            Rational::new(5, 4),
            Rational::new(3, 2),
        ];
        Self::new(ratios, 100.0, 0.1).expect("reference catalog is valid")
    }

    pub fn ratios(&self) -> &[Rational] {
        &self.ratios
    }

    pub fn lengths(&self) -> &[u64] {
        &self.lengths
    }

    pub fn length(&self, pitch_type: usize) -> u64 {
        self.lengths[pitch_type]
    }

    pub fn unit(&self) -> Rational {
        self.unit
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn groove(&self) -> f64 {
        self.groove
    }

    /// Number of pitch types.
    pub fn types(&self) -> usize {
        self.lengths.len()
    }

    pub fn shortest(&self) -> u64 {
        self.lengths[0]
    }

    pub fn longest(&self) -> u64 {
        *self.lengths.last().unwrap()
    }
}

/// Default Fourier truncation for `n` pitches: floor(1.5 n), capped at 200.
pub fn default_harmonics(n: usize) -> usize {
    (3 * n / 2).clamp(1, MAX_DEFAULT_HARMONICS)
}

/// A TNOP instance: catalog, pitch count and industrial constraints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    catalog: PitchCatalog,
    pitches: usize,
    min_occ: Vec<usize>,
    max_occ: Vec<usize>,
    max_seq: Vec<Option<usize>>,
    incompatible: BTreeSet<(usize, usize)>,
    harmonics: usize,
    cyclic: bool,
}

impl Instance {
    /// Instance with no occurrence, run-length or adjacency restrictions.
    pub fn new(catalog: PitchCatalog, pitches: usize) -> Result<Self> {
        if pitches == 0 {
            return invalid("the number of pitches must be positive");
        }
        let r = catalog.types();
        Ok(Self {
            catalog,
            pitches,
            min_occ: vec![0; r],
            max_occ: vec![pitches; r],
            max_seq: vec![None; r],
            incompatible: BTreeSet::new(),
            harmonics: default_harmonics(pitches),
            cyclic: true,
        })
    }

    /// The `(N, minOcc, maxOcc)` triple over the reference catalog, with the
    /// same occurrence window for every type.
    pub fn triple(pitches: usize, min_occ: usize, max_occ: usize) -> Result<Self> {
        let catalog = PitchCatalog::reference();
        let r = catalog.types();
        Self::new(catalog, pitches)?.with_occurrences(vec![min_occ; r], vec![max_occ; r])
    }

    pub fn with_occurrences(mut self, min_occ: Vec<usize>, max_occ: Vec<usize>) -> Result<Self> {
        let r = self.catalog.types();
        if min_occ.len() != r || max_occ.len() != r {
            return invalid(format!("occurrence bounds need {r} entries"));
        }
        if let Some(p) = (0..r).find(|&p| min_occ[p] > max_occ[p]) {
            return invalid(format!("minOcc > maxOcc for type {}", p + 1));
        }
        let lo: usize = min_occ.iter().sum();
        let hi: usize = max_occ.iter().sum();
        if lo > self.pitches || hi < self.pitches {
            return Err(Error::Infeasible(format!(
                "occurrence window [{lo}, {hi}] does not admit N = {}",
                self.pitches
            )));
        }
        self.min_occ = min_occ;
        self.max_occ = max_occ;
        Ok(self)
    }

    pub fn with_max_seq(mut self, max_seq: Vec<Option<usize>>) -> Result<Self> {
        if max_seq.len() != self.catalog.types() {
            return invalid(format!("maxSeq needs {} entries", self.catalog.types()));
        }
        if max_seq.contains(&Some(0)) {
            return invalid("maxSeq entries must be positive");
        }
        self.max_seq = max_seq;
        Ok(self)
    }

    /// Ordered pairs `(a, b)` (0-based): type `b` may not directly follow type `a`.
    pub fn with_incompatible(
        mut self,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let r = self.catalog.types();
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if pairs.iter().any(|&(a, b)| a >= r || b >= r) {
            return invalid("incompatible pair refers to an unknown pitch type");
        }
        self.incompatible = pairs;
        Ok(self)
    }

    pub fn with_harmonics(mut self, harmonics: usize) -> Result<Self> {
        if harmonics == 0 {
            return invalid("the Fourier precision K must be at least 1");
        }
        self.harmonics = harmonics;
        Ok(self)
    }

    /// Whether adjacency and run-length constraints wrap around the tire.
    pub fn with_cyclic(mut self, cyclic: bool) -> Self {
        self.cyclic = cyclic;
        self
    }

    pub fn catalog(&self) -> &PitchCatalog {
        &self.catalog
    }

    pub fn pitches(&self) -> usize {
        self.pitches
    }

    pub fn min_occ(&self) -> &[usize] {
        &self.min_occ
    }

    pub fn max_occ(&self) -> &[usize] {
        &self.max_occ
    }

    pub fn max_seq(&self) -> &[Option<usize>] {
        &self.max_seq
    }

    pub fn incompatible(&self) -> &BTreeSet<(usize, usize)> {
        &self.incompatible
    }

    pub fn harmonics(&self) -> usize {
        self.harmonics
    }

    pub fn cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn min_length(&self) -> u64 {
        self.pitches as u64 * self.catalog.shortest()
    }

    pub fn max_length(&self) -> u64 {
        self.pitches as u64 * self.catalog.longest()
    }

    /// Largest number of trailing empty units, i.e. `L = 0..=max_trailing()`.
    pub fn max_trailing(&self) -> u64 {
        self.max_length() - self.min_length()
    }

    /// Tire length `T_j = l_max - j`.
    pub fn tire_length(&self, trailing: u64) -> Result<u64> {
        if trailing > self.max_trailing() {
            return Err(Error::Range(format!(
                "j = {trailing} outside 0..={}",
                self.max_trailing()
            )));
        }
        Ok(self.max_length() - trailing)
    }

    /// All occurrence-count vectors admitted by the instance, in
    /// lexicographic order.
    pub fn count_vectors(&self) -> Vec<Vec<usize>> {
        fn rec(
            inst: &Instance,
            p: usize,
            left: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let r = inst.catalog.types();
            if p + 1 == r {
                if left >= inst.min_occ[p] && left <= inst.max_occ[p] {
                    cur.push(left);
                    out.push(cur.clone());
                    cur.pop();
                }
                return;
            }
            let rest_min: usize = inst.min_occ[p + 1..].iter().sum();
            let rest_max: usize = inst.max_occ[p + 1..].iter().sum();
            for c in inst.min_occ[p]..=inst.max_occ[p].min(left) {
                let rem = left - c;
                if rem < rest_min || rem > rest_max {
                    continue;
                }
                cur.push(c);
                rec(inst, p + 1, rem, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, 0, self.pitches, &mut Vec::new(), &mut out);
        out
    }

    /// Whether every rotation of a valid sequence is valid: true unless
    /// adjacency or run-length limits are read without wrap-around.
    pub fn rotation_invariant(&self) -> bool {
        self.cyclic || (self.incompatible.is_empty() && self.max_seq.iter().all(Option::is_none))
    }

    /// Number of forbidden successions plus over-long runs, honoring `cyclic`.
    pub fn arrangement_violations(&self, types: &[usize]) -> usize {
        let n = types.len();
        let pairs = if self.cyclic { n } else { n.saturating_sub(1) };
        let mut bad = (0..pairs)
            .filter(|&i| self.incompatible.contains(&(types[i], types[(i + 1) % n])))
            .count();
        if self.max_seq.iter().any(Option::is_some) {
            let runs = if self.cyclic {
                cyclic_runs(types)
            } else {
                linear_runs(types)
            };
            bad += runs
                .iter()
                .filter(|&&(p, len)| self.max_seq[p].is_some_and(|m| len > m))
                .count();
        }
        bad
    }

    /// Adjacency and run-length check of a type vector, honoring `cyclic`.
    pub fn admits_arrangement(&self, types: &[usize]) -> bool {
        let n = types.len();
        let pairs = if self.cyclic { n } else { n.saturating_sub(1) };
        if !self.incompatible.is_empty()
            && (0..pairs).any(|i| self.incompatible.contains(&(types[i], types[(i + 1) % n])))
        {
            return false;
        }
        if self.max_seq.iter().any(Option::is_some) {
            let runs = if self.cyclic {
                cyclic_runs(types)
            } else {
                linear_runs(types)
            };
            if runs
                .iter()
                .any(|&(p, len)| self.max_seq[p].is_some_and(|m| len > m))
            {
                return false;
            }
        }
        true
    }
}

/// An ordered pitch sequence around the tire.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PitchSequence {
    types: Vec<usize>,
    starts: Vec<u64>,
    total_length: u64,
}

impl PitchSequence {
    /// Builds a sequence from 0-based type indices.
    pub fn new(types: Vec<usize>, catalog: &PitchCatalog) -> Result<Self> {
        if types.is_empty() {
            return invalid("a pitch sequence needs at least one pitch");
        }
        if let Some(&t) = types.iter().find(|&&t| t >= catalog.types()) {
            return invalid(format!(
                "pitch type {} not in catalog of {} types",
                t + 1,
                catalog.types()
            ));
        }
        let mut starts = Vec::with_capacity(types.len());
        let mut pos = 1;
        for &t in &types {
            starts.push(pos);
            pos += catalog.length(t);
        }
        Ok(Self {
            types,
            starts,
            total_length: pos - 1,
        })
    }

    /// Parses a digit string such as `"1311323331"` (1-based types). Types
    /// above 9 can be written comma-separated (`"1,12,3"`).
    pub fn parse(text: &str, catalog: &PitchCatalog) -> Result<Self> {
        let text = text.trim();
        let tokens: Vec<&str> = if text.contains(',') {
            text.split(',').map(str::trim).collect()
        } else {
            text.split("").filter(|s| !s.is_empty()).collect()
        };
        let types = tokens
            .iter()
            .map(|tok| match tok.parse::<usize>() {
                Ok(d) if d >= 1 => Ok(d - 1),
                _ => invalid(format!("malformed pitch sequence {text:?}")),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(types, catalog)
    }

    /// 0-based type indices.
    pub fn types(&self) -> &[usize] {
        &self.types
    }

    /// 1-based start unit of every pitch.
    pub fn starts(&self) -> &[u64] {
        &self.starts
    }

    pub fn total_length(&self) -> u64 {
        self.total_length
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn counts(&self, types: usize) -> Vec<usize> {
        let mut c = vec![0; types];
        for &t in &self.types {
            c[t] += 1;
        }
        c
    }

    /// Lexicographically smallest rotation or reflected rotation.
    pub fn canonical_form(&self, catalog: &PitchCatalog) -> Self {
        Self::new(canonical_types(&self.types), catalog).expect("same types as a valid sequence")
    }

    /// Lexicographically smallest rotation.
    pub fn min_rotation(&self, catalog: &PitchCatalog) -> Self {
        Self::new(min_rotation(&self.types), catalog).expect("same types as a valid sequence")
    }

    pub fn rotated(&self, shift: usize, catalog: &PitchCatalog) -> Self {
        let mut t = self.types.clone();
        let n = t.len();
        t.rotate_left(shift % n);
        Self::new(t, catalog).expect("rotation of a valid sequence")
    }

    pub fn reversed(&self, catalog: &PitchCatalog) -> Self {
        let mut t = self.types.clone();
        t.reverse();
        Self::new(t, catalog).expect("reversal of a valid sequence")
    }
}

impl fmt::Display for PitchSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_types(&self.types))
    }
}

/// 1-based digit string for a type vector; comma-separated when a type exceeds 9.
pub fn format_types(types: &[usize]) -> String {
    if types.iter().all(|&t| t < 9) {
        types.iter().map(|&t| char::from(b'1' + t as u8)).collect()
    } else {
        types
            .iter()
            .map(|t| (t + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Lexicographically minimal representative over all rotations of the
/// sequence and of its reversal.
pub fn canonical_types(types: &[usize]) -> Vec<usize> {
    let n = types.len();
    let mut best: Option<Vec<usize>> = None;
    let reversed: Vec<usize> = types.iter().rev().copied().collect();
    for base in [types, reversed.as_slice()] {
        for shift in 0..n {
            let cand = base[shift..].iter().chain(&base[..shift]);
            let better = match &best {
                None => true,
                Some(b) => cand.clone().cmp(b.iter()) == std::cmp::Ordering::Less,
            };
            if better {
                best = Some(cand.copied().collect());
            }
        }
    }
    best.unwrap_or_default()
}

/// Lexicographically minimal rotation (necklace representative). Exact noise
/// is invariant under rotation but, with the groove at the trailing end of
/// each pitch, not under reversal.
pub fn min_rotation(types: &[usize]) -> Vec<usize> {
    let n = types.len();
    (0..n)
        .map(|shift| types[shift..].iter().chain(&types[..shift]))
        .min_by(|x, y| x.clone().cmp(y.clone()))
        .map(|best| best.copied().collect())
        .unwrap_or_default()
}

/// Maximal runs `(type, length)` read left to right without wrapping.
fn linear_runs(types: &[usize]) -> Vec<(usize, usize)> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &t in types {
        match runs.last_mut() {
            Some((p, len)) if *p == t => *len += 1,
            _ => runs.push((t, 1)),
        }
    }
    runs
}

/// Maximal runs on the circle; a constant sequence is one run of length N.
fn cyclic_runs(types: &[usize]) -> Vec<(usize, usize)> {
    let mut runs = linear_runs(types);
    if runs.len() > 1 && runs[0].0 == runs.last().unwrap().0 {
        let (_, tail) = runs.pop().unwrap();
        runs[0].1 += tail;
    }
    runs
}

/// Per-constraint outcome of [`validate_sequence`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub pitch_count_ok: bool,
    pub counts: Vec<usize>,
    pub occurrences_ok: bool,
    /// ctIncompatibility with the last pitch adjacent to the first.
    pub incompatibility_ok: bool,
    /// ctIncompatibility on the open sequence only.
    pub incompatibility_linear_ok: bool,
    /// ctMaxSeq with runs wrapping around the tire.
    pub max_seq_ok: bool,
    pub max_seq_linear_ok: bool,
    pub violations: Vec<String>,
}

impl ValidityReport {
    /// All constraints pass in their cyclic reading.
    pub fn is_valid(&self) -> bool {
        self.pitch_count_ok && self.occurrences_ok && self.incompatibility_ok && self.max_seq_ok
    }

    /// All constraints pass in their positional (non-wrapping) reading.
    pub fn is_valid_linear(&self) -> bool {
        self.pitch_count_ok
            && self.occurrences_ok
            && self.incompatibility_linear_ok
            && self.max_seq_linear_ok
    }

    pub fn passes(&self, cyclic: bool) -> bool {
        if cyclic {
            self.is_valid()
        } else {
            self.is_valid_linear()
        }
    }
}

/// Checks a sequence against every constraint of the instance.
pub fn validate_sequence(seq: &PitchSequence, inst: &Instance) -> ValidityReport {
    let r = inst.catalog.types();
    let types = seq.types();
    let n = types.len();
    let mut violations = Vec::new();

    let pitch_count_ok = n == inst.pitches;
    if !pitch_count_ok {
        violations.push(format!(
            "sequence has {n} pitches, instance requires {}",
            inst.pitches
        ));
    }

    let counts = seq.counts(r);
    let mut occurrences_ok = true;
    for p in 0..r {
        if counts[p] < inst.min_occ[p] || counts[p] > inst.max_occ[p] {
            occurrences_ok = false;
            violations.push(format!(
                "ctMinMaxOcc: type {} occurs {} times, allowed [{}, {}]",
                p + 1,
                counts[p],
                inst.min_occ[p],
                inst.max_occ[p]
            ));
        }
    }

    let mut incompatibility_ok = true;
    let mut incompatibility_linear_ok = true;
    for i in 0..n {
        let pair = (types[i], types[(i + 1) % n]);
        if inst.incompatible.contains(&pair) {
            let wraps = i + 1 == n;
            incompatibility_ok = false;
            if !wraps {
                incompatibility_linear_ok = false;
            }
            violations.push(format!(
                "ctIncompatibility: type {} followed by type {} at position {}{}",
                pair.0 + 1,
                pair.1 + 1,
                i + 1,
                if wraps { " (wrap-around)" } else { "" }
            ));
        }
    }

    let check_runs = |runs: Vec<(usize, usize)>, tag: &str, out: &mut Vec<String>| {
        let mut ok = true;
        for (p, len) in runs {
            if let Some(m) = inst.max_seq[p] {
                if len > m {
                    ok = false;
                    out.push(format!(
                        "ctMaxSeq{tag}: run of {len} type-{} pitches exceeds {m}",
                        p + 1
                    ));
                }
            }
        }
        ok
    };
    let max_seq_linear_ok = check_runs(linear_runs(types), " (linear)", &mut violations);
    let max_seq_ok = check_runs(cyclic_runs(types), "", &mut violations);

    ValidityReport {
        pitch_count_ok,
        counts,
        occurrences_ok,
        incompatibility_ok,
        incompatibility_linear_ok,
        max_seq_ok,
        max_seq_linear_ok,
        violations,
    }
}
