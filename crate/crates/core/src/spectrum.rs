//! Fourier spectra of tire profiles.
//!
//! A tire track is a `T`-periodic step function: every pitch of length `l`
//! is raised to height `h` over `(1 - q) l` units and sits in a groove over the
//! remaining `q l` units. Its coefficients have closed forms, so nothing here
//! samples the profile.
//!
//! Coefficient vectors are indexed by harmonic: entry `k` holds `a_k`, `b_k`
//! or `sqrt(a_k^2 + b_k^2) = 2|c_k|`. Index 0 carries `a_0 = 2 * mean`, with
//! `b_0 = 0` and `modulus[0] = |a_0|`; noise maxima only look at `k >= 1`.

use std::f64::consts::{PI, TAU};
use std::io::Write;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::pitch::{Instance, PitchCatalog, PitchSequence};

/// Where the groove sits inside each pitch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GroovePlacement {
    /// Raised part first, groove over the last `q l` units.
    #[default]
    Trailing,
    /// Groove first; the mirror image of a trailing-groove profile read backwards.
    Leading,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    tire_length: u64,
    coeff_a: Vec<f64>,
    coeff_b: Vec<f64>,
    modulus: Vec<f64>,
}

/// Which noise measure a search minimizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// `sqrt(a^2 + b^2)`
    Exact,
    /// `max(|a|, |b|)`
    Approx,
}

impl Objective {
    #[inline]
    pub fn amplitude(self, a: f64, b: f64) -> f64 {
        match self {
            Objective::Exact => a.hypot(b),
            Objective::Approx => a.abs().max(b.abs()),
        }
    }

    pub fn of(self, spec: &Spectrum) -> NoisePeak {
        match self {
            Objective::Exact => exact_noise(spec),
            Objective::Approx => approx_noise(spec),
        }
    }
}

/// Largest harmonic amplitude and where it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoisePeak {
    pub value: f64,
    pub harmonic: usize,
}

impl Spectrum {
    fn from_coefficients(tire_length: u64, coeff_a: Vec<f64>, coeff_b: Vec<f64>) -> Self {
        let modulus = coeff_a
            .iter()
            .zip(&coeff_b)
            .map(|(a, b)| a.hypot(*b))
            .collect();
        Self {
            tire_length,
            coeff_a,
            coeff_b,
            modulus,
        }
    }

    pub fn tire_length(&self) -> u64 {
        self.tire_length
    }

    /// Highest harmonic `K`.
    pub fn harmonics(&self) -> usize {
        self.coeff_a.len() - 1
    }

    pub fn a(&self) -> &[f64] {
        &self.coeff_a
    }

    pub fn b(&self) -> &[f64] {
        &self.coeff_b
    }

    pub fn modulus(&self) -> &[f64] {
        &self.modulus
    }

    /// Mean height of the profile, `a_0 / 2`.
    pub fn mean(&self) -> f64 {
        self.coeff_a[0] / 2.0
    }

    /// CSV with columns `k,a_k,b_k,modulus`, one row per harmonic `1..=K`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "k,a_k,b_k,modulus")?;
        for k in 1..=self.harmonics() {
            writeln!(
                out,
                "{k},{},{},{}",
                self.coeff_a[k], self.coeff_b[k], self.modulus[k]
            )?;
        }
        Ok(())
    }
}

/// Exact noise: `max_{k>=1} sqrt(a_k^2 + b_k^2)`.
pub fn exact_noise(spec: &Spectrum) -> NoisePeak {
    peak(spec, |k| spec.modulus[k])
}

/// Approximated noise: `max_{k>=1} max(|a_k|, |b_k|)`.
pub fn approx_noise(spec: &Spectrum) -> NoisePeak {
    peak(spec, |k| spec.coeff_a[k].abs().max(spec.coeff_b[k].abs()))
}

fn peak(spec: &Spectrum, value: impl Fn(usize) -> f64) -> NoisePeak {
    let mut best = NoisePeak {
        value: 0.0,
        harmonic: 1,
    };
    for k in 1..=spec.harmonics() {
        let v = value(k);
        if v > best.value {
            best = NoisePeak {
                value: v,
                harmonic: k,
            };
        }
    }
    best
}

/// Fraction of a turn of `2 pi k (start + offset) / period`, reduced to [0, 1).
/// The integer part is reduced exactly before the fractional offset is added.
fn turns(k: u64, start: u64, offset: f64, period: u64) -> f64 {
    let whole = ((k as u128 * start as u128) % period as u128) as f64 / period as f64;
    let extra = (k as f64 * offset / period as f64).fract();
    (whole + extra).fract()
}

/// Spectrum of a sequence under the reference profile (groove trailing).
pub fn profile_spectrum(
    seq: &PitchSequence,
    catalog: &PitchCatalog,
    harmonics: usize,
) -> Result<Spectrum> {
    profile_spectrum_with(seq, catalog, harmonics, GroovePlacement::Trailing)
}

pub fn profile_spectrum_with(
    seq: &PitchSequence,
    catalog: &PitchCatalog,
    harmonics: usize,
    placement: GroovePlacement,
) -> Result<Spectrum> {
    let lengths: Vec<u64> = seq.types().iter().map(|&t| catalog.length(t)).collect();
    spectrum_of_lengths(
        &lengths,
        catalog.height(),
        catalog.groove(),
        harmonics,
        placement,
    )
}

/// Closed-form spectrum of consecutive pitches with the given integer lengths.
pub fn spectrum_of_lengths(
    lengths: &[u64],
    height: f64,
    groove: f64,
    harmonics: usize,
    placement: GroovePlacement,
) -> Result<Spectrum> {
    if lengths.is_empty() {
        return invalid("cannot compute the spectrum of an empty sequence");
    }
    if harmonics < 1 {
        return invalid("the Fourier precision K must be at least 1");
    }
    let period: u64 = lengths.iter().sum();
    let mut coeff_a = vec![0.0; harmonics + 1];
    let mut coeff_b = vec![0.0; harmonics + 1];
    coeff_a[0] = 2.0 * height * (1.0 - groove);
    for k in 1..=harmonics {
        let (mut sa, mut sb) = (0.0, 0.0);
        let mut start = 0;
        for &l in lengths {
            // raised part of this pitch spans [start + lo, start + hi)
            let (lo, hi) = match placement {
                GroovePlacement::Trailing => (0.0, (1.0 - groove) * l as f64),
                GroovePlacement::Leading => (groove * l as f64, l as f64),
            };
            let m = TAU * turns(k as u64, start, hi, period);
            let n = TAU * turns(k as u64, start, lo, period);
            sa += m.sin() - n.sin();
            sb -= m.cos() - n.cos();
            start += l;
        }
        let scale = height / (k as f64 * PI);
        coeff_a[k] = scale * sa;
        coeff_b[k] = scale * sb;
    }
    Ok(Spectrum::from_coefficients(period, coeff_a, coeff_b))
}

/// Spectrum of unit impulses at integer positions on a circle of length `period`.
pub fn dirac_spectrum(positions: &[u64], period: u64, harmonics: usize) -> Result<Spectrum> {
    if period == 0 {
        return invalid("period must be positive");
    }
    if harmonics < 1 {
        return invalid("the Fourier precision K must be at least 1");
    }
    if let Some(&p) = positions.iter().find(|&&p| p >= period) {
        return invalid(format!("impulse position {p} outside [0, {period})"));
    }
    let scale = 2.0 / period as f64;
    let mut coeff_a = vec![0.0; harmonics + 1];
    let mut coeff_b = vec![0.0; harmonics + 1];
    coeff_a[0] = scale * positions.len() as f64;
    for k in 1..=harmonics {
        let (mut c, mut s) = (0.0, 0.0);
        for &t in positions {
            let (sin, cos) = (TAU * turns(k as u64, t, 0.0, period)).sin_cos();
            c += cos;
            s += sin;
        }
        coeff_a[k] = scale * c;
        coeff_b[k] = scale * s;
    }
    Ok(Spectrum::from_coefficients(period, coeff_a, coeff_b))
}

/// Precomputed per-pitch contributions for one tire length.
///
/// The contribution of a pitch of type `p` starting `s` units into the tire is
/// `a + ib = w^{ks} * D_{k,p}` where `w = e^{2 pi i / T}` and
/// `D_{k,p} = -i h / (k pi) * (e^{2 pi i k (1-q) l_p / T} - 1)`. Summing these
/// is the hot loop of every solver.
#[derive(Debug, Clone)]
pub struct SpectrumKernel {
    period: u64,
    harmonics: usize,
    types: usize,
    roots: Vec<(f64, f64)>,
    // indexed [k * types + p], k from 1
    factors: Vec<(f64, f64)>,
    // |D_{k,p}|
    radius: Vec<f64>,
}

impl SpectrumKernel {
    pub fn new(catalog: &PitchCatalog, period: u64, harmonics: usize) -> Self {
        assert!(period > 0 && harmonics > 0);
        let types = catalog.types();
        let roots = (0..period)
            .map(|m| {
                let (s, c) = (TAU * m as f64 / period as f64).sin_cos();
                (c, s)
            })
            .collect();
        let mut factors = vec![(0.0, 0.0); (harmonics + 1) * types];
        let mut radius = vec![0.0; (harmonics + 1) * types];
        for k in 1..=harmonics {
            let scale = catalog.height() / (k as f64 * PI);
            for p in 0..types {
                let raised = (1.0 - catalog.groove()) * catalog.length(p) as f64;
                let (s, c) = (TAU * turns(k as u64, 0, raised, period)).sin_cos();
                // -i * (c - 1 + i s) = s - i (c - 1)
                let d = (scale * s, -scale * (c - 1.0));
                factors[k * types + p] = d;
                radius[k * types + p] = d.0.hypot(d.1);
            }
        }
        Self {
            period,
            harmonics,
            types,
            roots,
            factors,
            radius,
        }
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn harmonics(&self) -> usize {
        self.harmonics
    }

    /// `(a, b)` contribution of one pitch at 0-based offset `start`.
    #[inline]
    pub fn contribution(&self, k: usize, pitch_type: usize, start: u64) -> (f64, f64) {
        let (rc, rs) = self.roots[((k as u64 * start) % self.period) as usize];
        let (dc, ds) = self.factors[k * self.types + pitch_type];
        (rc * dc - rs * ds, rc * ds + rs * dc)
    }

    /// Largest `|contribution|` any pitch of this type can make at harmonic `k`.
    #[inline]
    pub fn radius(&self, k: usize, pitch_type: usize) -> f64 {
        self.radius[k * self.types + pitch_type]
    }

    /// Adds `(a_k, b_k)` for `k = 1..=K` of the whole sequence into `a`, `b`
    /// (index `k - 1`).
    pub fn accumulate(&self, types: &[usize], lengths: &[u64], a: &mut [f64], b: &mut [f64]) {
        let mut start = 0;
        for &t in types {
            for k in 1..=self.harmonics {
                let (da, db) = self.contribution(k, t, start);
                a[k - 1] += da;
                b[k - 1] += db;
            }
            start += lengths[t];
        }
    }

    pub fn exact_noise(&self, types: &[usize], lengths: &[u64]) -> f64 {
        let mut a = vec![0.0; self.harmonics];
        let mut b = vec![0.0; self.harmonics];
        self.accumulate(types, lengths, &mut a, &mut b);
        a.iter()
            .zip(&b)
            .map(|(x, y)| x * x + y * y)
            .fold(0.0, f64::max)
            .sqrt()
    }

    pub fn approx_noise(&self, types: &[usize], lengths: &[u64]) -> f64 {
        let mut a = vec![0.0; self.harmonics];
        let mut b = vec![0.0; self.harmonics];
        self.accumulate(types, lengths, &mut a, &mut b);
        a.iter()
            .zip(&b)
            .map(|(x, y)| x.abs().max(y.abs()))
            .fold(0.0, f64::max)
    }
}

/// Contributions `A_{k,j,i,p}` and `B_{k,j,i,p}` for a single number `j` of
/// trailing empty units (tire length `T_j = l_max - j`).
///
/// Start positions `i` are 1-based and every `i` in `1..=T_j` is tabulated;
/// the model only uses `i <= T_j - l_p + 1`.
#[derive(Debug, Clone)]
pub struct LengthContributions {
    trailing: u64,
    period: u64,
    harmonics: usize,
    types: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl LengthContributions {
    pub fn new(inst: &Instance, trailing: u64) -> Result<Self> {
        let period = inst.tire_length(trailing)?;
        let mut table = Self::for_period(inst.catalog(), period, inst.harmonics());
        table.trailing = trailing;
        Ok(table)
    }

    /// Table for an arbitrary tire length; `trailing()` is reported as 0.
    pub fn for_period(catalog: &PitchCatalog, period: u64, harmonics: usize) -> Self {
        let types = catalog.types();
        let (h, q) = (catalog.height(), catalog.groove());
        let len = (harmonics + 1) * period as usize * types;
        let mut a = vec![0.0; len];
        let mut b = vec![0.0; len];
        for i in 1..=period {
            for p in 0..types {
                let lp = catalog.length(p) as f64;
                a[Self::offset(types, period, 0, i, p)] = (1.0 - q) * h * lp / period as f64;
                for k in 1..=harmonics {
                    let m = TAU * turns(k as u64, i - 1, (1.0 - q) * lp, period);
                    let n = TAU * turns(k as u64, i - 1, 0.0, period);
                    let scale = h / (k as f64 * PI);
                    let idx = Self::offset(types, period, k, i, p);
                    a[idx] = scale * (m.sin() - n.sin());
                    b[idx] = -scale * (m.cos() - n.cos());
                }
            }
        }
        Self {
            trailing: 0,
            period,
            harmonics,
            types,
            a,
            b,
        }
    }

    fn offset(types: usize, period: u64, k: usize, i: u64, p: usize) -> usize {
        (k * period as usize + (i as usize - 1)) * types + p
    }

    pub fn trailing(&self) -> u64 {
        self.trailing
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn harmonics(&self) -> usize {
        self.harmonics
    }

    /// `A_{k,j,i,p}` with 1-based `i` and 0-based `p`.
    pub fn a(&self, k: usize, i: u64, p: usize) -> f64 {
        self.a[Self::offset(self.types, self.period, k, i, p)]
    }

    /// `B_{k,j,i,p}`; zero for `k = 0`.
    pub fn b(&self, k: usize, i: u64, p: usize) -> f64 {
        self.b[Self::offset(self.types, self.period, k, i, p)]
    }
}

/// Contribution tables for every tire length `j in L`.
#[derive(Debug, Clone)]
pub struct ContributionTables {
    lengths: Vec<LengthContributions>,
}

impl ContributionTables {
    pub fn new(inst: &Instance) -> Self {
        let lengths = (0..=inst.max_trailing())
            .map(|j| LengthContributions::new(inst, j).expect("j in range"))
            .collect();
        Self { lengths }
    }

    pub fn at(&self, trailing: u64) -> Option<&LengthContributions> {
        self.lengths.get(trailing as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LengthContributions> {
        self.lengths.iter()
    }
}

/// Builds the contribution tables of an instance.
pub fn contribution_tables(inst: &Instance) -> ContributionTables {
    ContributionTables::new(inst)
}
