//! Instance files.
//!
//! A UTF-8 text file of `key = value` lines. `#` starts a comment, blank lines
//! are ignored and keys are case-sensitive. Lists are comma-separated.
//!
//! ```text
//! ratios = 1, 5/4, 3/2     # required; integers, decimals or fractions
//! height = 100             # groove depth h, default 100
//! groove = 0.1             # groove fraction q, default 0.1
//! N = 10                   # required
//! minOcc = 1               # one value for every type, or one per type
//! maxOcc = 8
//! maxSeq = -, 3, inf       # '-' or 'inf' means unbounded
//! incompatible = 1:3, 3:1  # type b may not directly follow type a
//! K = 15                   # harmonics, default floor(1.5 N)
//! cyclic = true            # constraints wrap around the tire
//!
//! [ga]
//! population = 1500
//! crossover = 0.3
//! mutation = 0.15
//! selection = ranking      # or roulette
//! pressure = 0.4
//! generations = 500
//! stagnation = 100
//! elitism = 1
//! seed = 42
//! ```
//!
//! Pitch types in `maxSeq` and `incompatible` are numbered from 1.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ga::GaConfig;
use crate::pitch::{parse_ratio, Instance, PitchCatalog};

const INSTANCE_KEYS: &[&str] = &[
    "ratios",
    "height",
    "groove",
    "N",
    "minOcc",
    "maxOcc",
    "maxSeq",
    "incompatible",
    "K",
    "cyclic",
];
const GA_KEYS: &[&str] = &[
    "population",
    "crossover",
    "mutation",
    "selection",
    "pressure",
    "generations",
    "stagnation",
    "elitism",
    "seed",
];

#[derive(Debug, Clone)]
pub struct InstanceFile {
    pub instance: Instance,
    pub ga: GaConfig,
}

pub fn load_instance_file(path: &Path) -> Result<InstanceFile> {
    parse_instance_file(&std::fs::read_to_string(path)?)
}

struct Entry {
    line: usize,
    value: String,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_instance_file(text: &str) -> Result<InstanceFile> {
    let mut sections: BTreeMap<&str, BTreeMap<String, Entry>> = BTreeMap::new();
    let mut current = "";
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = match name.trim() {
                "ga" => "ga",
                other => return Err(err(line_no, format!("unknown section [{other}]"))),
            };
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(err(
                line_no,
                format!("expected `key = value`, got `{line}`"),
            ));
        };
        let key = key.trim();
        let allowed = if current == "ga" {
            GA_KEYS
        } else {
            INSTANCE_KEYS
        };
        if !allowed.contains(&key) {
            return Err(err(line_no, format!("unknown key `{key}`")));
        }
        let entries = sections.entry(current).or_default();
        if entries.contains_key(key) {
            return Err(err(line_no, format!("duplicate key `{key}`")));
        }
        entries.insert(
            key.to_string(),
            Entry {
                line: line_no,
                value: value.trim().to_string(),
            },
        );
    }

    let empty = BTreeMap::new();
    let main = sections.get("").unwrap_or(&empty);
    let required = |key: &str| {
        main.get(key)
            .ok_or_else(|| err(0, format!("missing key `{key}`")))
    };

    let ratios_entry = required("ratios")?;
    let ratios = list(&ratios_entry.value)
        .map(|t| parse_ratio(t).map_err(|e| err(ratios_entry.line, e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let height = scalar(main.get("height"), 100.0)?;
    let groove = scalar(main.get("groove"), 0.1)?;
    let catalog = PitchCatalog::new(ratios, height, groove)
        .map_err(|e| err(ratios_entry.line, e.to_string()))?;
    let r = catalog.types();

    let n_entry = required("N")?;
    let pitches: usize = parse(n_entry)?;
    let at = |e: &Entry, res: Result<Instance>| res.map_err(|x| err(e.line, x.to_string()));
    let mut inst = at(n_entry, Instance::new(catalog, pitches))?;

    let occ = |key: &str, default: usize| -> Result<Vec<usize>> {
        match main.get(key) {
            None => Ok(vec![default; r]),
            Some(e) => broadcast(e, r, |t| t.parse::<usize>().ok()),
        }
    };
    let (min_occ, max_occ) = (occ("minOcc", 0)?, occ("maxOcc", pitches)?);
    let occ_line = main
        .get("minOcc")
        .or(main.get("maxOcc"))
        .map_or(0, |e| e.line);
    inst = inst
        .with_occurrences(min_occ, max_occ)
        .map_err(|x| err(occ_line, x.to_string()))?;

    if let Some(e) = main.get("maxSeq") {
        let limits = broadcast(e, r, |t| match t {
            "-" | "inf" => Some(None),
            _ => t.parse::<usize>().ok().map(Some),
        })?;
        inst = at(e, inst.with_max_seq(limits))?;
    }
    if let Some(e) = main.get("incompatible") {
        let pairs = list(&e.value)
            .map(|t| {
                let (a, b) = t
                    .split_once(':')
                    .ok_or_else(|| err(e.line, format!("pair `{t}` is not `a:b`")))?;
                let num = |s: &str| match s.trim().parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(err(e.line, format!("bad pitch type `{s}`"))),
                };
                Ok((num(a)?, num(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        inst = at(e, inst.with_incompatible(pairs))?;
    }
    if let Some(e) = main.get("K") {
        inst = at(e, inst.with_harmonics(parse(e)?))?;
    }
    if let Some(e) = main.get("cyclic") {
        inst = inst.with_cyclic(parse(e)?);
    }

    let mut ga = GaConfig::default();
    if let Some(sec) = sections.get("ga") {
        for (key, e) in sec {
            match key.as_str() {
                "population" => ga.population_size = parse(e)?,
                "crossover" => ga.crossover_prob = parse(e)?,
                "mutation" => ga.mutation_prob = parse(e)?,
                "selection" => ga.selection = parse(e)?,
                "pressure" => ga.selection_pressure = parse(e)?,
                "generations" => ga.max_generations = parse(e)?,
                "stagnation" => ga.stagnation_limit = parse(e)?,
                "elitism" => ga.elitism = parse(e)?,
                "seed" => ga.seed = parse(e)?,
                _ => unreachable!("keys checked while reading"),
            }
        }
        let line = sec.values().map(|e| e.line).min().unwrap_or(0);
        ga.validate().map_err(|x| err(line, x.to_string()))?;
    }
    Ok(InstanceFile { instance: inst, ga })
}

fn list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn parse<T: FromStr>(e: &Entry) -> Result<T> {
    e.value
        .parse()
        .map_err(|_| err(e.line, format!("cannot read `{}`", e.value)))
}

fn scalar(e: Option<&Entry>, default: f64) -> Result<f64> {
    e.map_or(Ok(default), parse)
}

/// A single value repeated for every type, or exactly one value per type.
fn broadcast<T: Clone>(
    e: &Entry,
    types: usize,
    read: impl Fn(&str) -> Option<T>,
) -> Result<Vec<T>> {
    let values = list(&e.value)
        .map(|t| read(t).ok_or_else(|| err(e.line, format!("cannot read `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    match values.len() {
        1 => Ok(vec![values[0].clone(); types]),
        n if n == types => Ok(values),
        n => Err(err(
            e.line,
            format!("expected 1 or {types} values, got {n}"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga::Selection;

    const SAMPLE: &str = "\
# reference catalog
ratios = 1, 5/4, 3/2
height = 100
groove = 0.1
N = 10
minOcc = 1
maxOcc = 8
maxSeq = -, 3, inf
incompatible = 1:3, 3:1
K = 15

[ga]
population = 300
selection = roulette
seed = 9
";

    #[test]
    fn reads_everything() {
        let f = parse_instance_file(SAMPLE).unwrap();
        let inst = &f.instance;
        assert_eq!(inst.catalog().lengths(), &[4, 5, 6]);
        assert_eq!(inst.pitches(), 10);
        assert_eq!(inst.min_occ(), &[1, 1, 1]);
        assert_eq!(inst.max_occ(), &[8, 8, 8]);
        assert_eq!(inst.max_seq(), &[None, Some(3), None]);
        assert!(inst.incompatible().contains(&(0, 2)) && inst.incompatible().contains(&(2, 0)));
        assert_eq!(inst.harmonics(), 15);
        assert_eq!(f.ga.population_size, 300);
        assert_eq!(f.ga.selection, Selection::Roulette);
        assert_eq!(f.ga.seed, 9);
        assert_eq!(f.ga.crossover_prob, 0.3);
    }

    #[test]
    fn triple_equivalent() {
        let f =
            parse_instance_file("ratios = 1, 1.25, 1.5\nN = 10\nminOcc = 2\nmaxOcc = 6\n").unwrap();
        assert_eq!(f.instance, Instance::triple(10, 2, 6).unwrap());
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            ("ratios = 1, 2\nN = 3\nfoo = 1\n", 3),
            ("ratios = 1, 2\nN = 3\nN = 4\n", 3),
            ("ratios = 1, 2\nN = three\n", 2),
            ("ratios = 1, 2\nN = 3\nminOcc = 1, 2, 3\n", 3),
            ("ratios = 1, 2\nN = 3\nincompatible = 1-2\n", 3),
            ("ratios = 1, 2\nN = 3\n[solver]\n", 3),
            ("ratios = 1, 2\nN = 3\nminOcc = 2\n", 3),
        ];
        for (text, line) in cases {
            match parse_instance_file(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(matches!(
            parse_instance_file("N = 3\n"),
            Err(Error::Parse { .. })
        ));
    }
}
