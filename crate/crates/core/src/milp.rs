//! MILP model for one tire length, and its text export.
//!
//! Row names start with a numeric family tag: `c1_k3` is family 1 at
//! harmonic 3, `c8_fill` the filling equality, and so on. The families are
//!
//! | tag | rows |
//! |-----|------|
//! | 1-4 | `±za_k <= z`, `±zb_k <= z` |
//! | 5-6 | `za_k`, `zb_k` as sums of the contribution tables |
//! | 7   | at most one start per position |
//! | 8   | filled length equals `T_j` |
//! | 9   | continuity for `i >= 2`, plus the anchor `sum_p x_p1 = 1` |
//! | 10  | exactly `N` pitches |
//! | 13-14 | occurrence bounds |
//! | 15  | no more than `max_p` consecutive pitches of type `p` |
//! | 16-17 | forbidden successions `(a, b)` with `a < b` and `a > b` |
//! | 20  | objective cut `z <= z_ub` |
//! | 21  | no-good cut on one assignment |
//! | 22  | first pitch has type 1 |
//!
//! Run-length and adjacency rows only see the linear order of the starts;
//! the wrap-around from the last pitch to the first is not modeled.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use crate::error::{invalid, Error, Result};
use crate::pitch::{Instance, PitchSequence};
use crate::spectrum::LengthContributions;

/// Absolute slack used when checking rows.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }

    fn holds(self, lhs: f64, rhs: f64) -> bool {
        let tol = FEASIBILITY_TOLERANCE * (1.0 + rhs.abs());
        match self {
            Sense::Le => lhs <= rhs + tol,
            Sense::Ge => lhs >= rhs - tol,
            Sense::Eq => (lhs - rhs).abs() <= tol,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    /// Continuous, unbounded in both directions.
    Free,
    /// Continuous, `>= 0`.
    NonNegative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub name: String,
    /// Constraint family (see the module table).
    pub tag: u8,
    pub terms: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

/// Which optional blocks to generate. Blocks whose instance data is empty
/// (no run-length limits, no forbidden pairs) produce no rows either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MilpOptions {
    pub min_max_occ: bool,
    pub max_seq: bool,
    pub incompatibility: bool,
    pub symmetry_fix: bool,
}

impl Default for MilpOptions {
    fn default() -> Self {
        Self {
            min_max_occ: true,
            max_seq: true,
            incompatibility: true,
            symmetry_fix: false,
        }
    }
}

impl MilpOptions {
    /// Basic model: rows 1-10 only.
    pub fn basic() -> Self {
        Self {
            min_max_occ: false,
            max_seq: false,
            incompatibility: false,
            symmetry_fix: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MilpModel {
    trailing: u64,
    period: u64,
    pitches: usize,
    lengths: Vec<u64>,
    variables: Vec<Variable>,
    rows: Vec<Row>,
    /// `x[p][i - 1]` is the variable index of `x_p{p+1}_i{i}`.
    x: Vec<Vec<usize>>,
    za: Vec<usize>,
    zb: Vec<usize>,
    z: usize,
    no_goods: usize,
}

/// Result of checking a 0/1 assignment against every row.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentCheck {
    pub feasible: bool,
    pub violated: Vec<String>,
    /// `max_k max(|za_k|, |zb_k|)` with `za`, `zb` taken from rows 5-6.
    pub objective: f64,
}

/// Builds (P) for `j = trailing` empty units.
pub fn build_milp(inst: &Instance, trailing: u64, options: MilpOptions) -> Result<MilpModel> {
    let period = inst.tire_length(trailing)?;
    if options.symmetry_fix && inst.min_occ()[0] == 0 {
        return invalid("fixing the first pitch to type 1 needs minOcc_1 >= 1");
    }
    let table = LengthContributions::new(inst, trailing)?;
    let catalog = inst.catalog();
    let r = catalog.types();
    let big_k = inst.harmonics();
    let mut m = MilpModel {
        trailing,
        period,
        pitches: inst.pitches(),
        lengths: catalog.lengths().to_vec(),
        variables: Vec::new(),
        rows: Vec::new(),
        x: vec![Vec::new(); r],
        za: Vec::new(),
        zb: Vec::new(),
        z: 0,
        no_goods: 0,
    };

    for p in 0..r {
        for i in 1..=m.last_start(p) {
            let id = m.add_var(format!("x_p{}_i{i}", p + 1), VarKind::Binary);
            m.x[p].push(id);
        }
    }
    for k in 1..=big_k {
        let id = m.add_var(format!("za_k{k}"), VarKind::Free);
        m.za.push(id);
    }
    for k in 1..=big_k {
        let id = m.add_var(format!("zb_k{k}"), VarKind::Free);
        m.zb.push(id);
    }
    m.z = m.add_var("z".into(), VarKind::NonNegative);

    let z = m.z;
    let (za, zb) = (m.za.clone(), m.zb.clone());
    for (tag, coeff, family) in [(1, 1.0, &za), (2, -1.0, &za), (3, 1.0, &zb), (4, -1.0, &zb)] {
        for (k, &v) in family.iter().enumerate() {
            m.rows.push(Row {
                name: format!("c{tag}_k{}", k + 1),
                tag,
                terms: vec![(v, coeff), (z, -1.0)],
                sense: Sense::Le,
                rhs: 0.0,
            });
        }
    }
    for k in 1..=big_k {
        for (tag, target) in [(5, m.za[k - 1]), (6, m.zb[k - 1])] {
            let mut terms = vec![(target, 1.0)];
            for p in 0..r {
                for i in 1..=m.last_start(p) {
                    let c = if tag == 5 {
                        table.a(k, i, p)
                    } else {
                        table.b(k, i, p)
                    };
                    terms.push((m.x[p][i as usize - 1], -c));
                }
            }
            m.rows.push(Row {
                name: format!("c{tag}_k{k}"),
                tag,
                terms,
                sense: Sense::Eq,
                rhs: 0.0,
            });
        }
    }
    for i in 1..=period {
        let terms: Vec<_> = (0..r)
            .filter_map(|p| m.var_at(p, i))
            .map(|v| (v, 1.0))
            .collect();
        // positions past the last possible start carry no variable at all
        if !terms.is_empty() {
            m.rows.push(Row {
                name: format!("c7_i{i}"),
                tag: 7,
                terms,
                sense: Sense::Le,
                rhs: 1.0,
            });
        }
    }
    let fill = m
        .all_x()
        .map(|(p, _, v)| (v, m.lengths[p] as f64))
        .collect();
    m.rows.push(Row {
        name: "c8_fill".into(),
        tag: 8,
        terms: fill,
        sense: Sense::Eq,
        rhs: period as f64,
    });
    for i in 2..=period {
        let mut terms = Vec::new();
        for p in 0..r {
            if i > m.lengths[p] {
                if let Some(v) = m.var_at(p, i - m.lengths[p]) {
                    terms.push((v, 1.0));
                }
            }
        }
        for p in 0..r {
            if let Some(v) = m.var_at(p, i) {
                terms.push((v, -1.0));
            }
        }
        if !terms.is_empty() {
            m.rows.push(Row {
                name: format!("c9_i{i}"),
                tag: 9,
                terms,
                sense: Sense::Eq,
                rhs: 0.0,
            });
        }
    }
    let anchor = (0..r)
        .filter_map(|p| m.var_at(p, 1))
        .map(|v| (v, 1.0))
        .collect();
    m.rows.push(Row {
        name: "c9_anchor".into(),
        tag: 9,
        terms: anchor,
        sense: Sense::Eq,
        rhs: 1.0,
    });
    let count = m.all_x().map(|(_, _, v)| (v, 1.0)).collect();
    m.rows.push(Row {
        name: "c10_count".into(),
        tag: 10,
        terms: count,
        sense: Sense::Eq,
        rhs: m.pitches as f64,
    });

    if options.min_max_occ {
        for (tag, bounds, sense) in [
            (13, inst.min_occ(), Sense::Ge),
            (14, inst.max_occ(), Sense::Le),
        ] {
            for p in 0..r {
                let terms = m.x[p].iter().map(|&v| (v, 1.0)).collect();
                m.rows.push(Row {
                    name: format!("c{tag}_p{}", p + 1),
                    tag,
                    terms,
                    sense,
                    rhs: bounds[p] as f64,
                });
            }
        }
    }
    if options.max_seq {
        for p in 0..r {
            let Some(limit) = inst.max_seq()[p] else {
                continue;
            };
            let l = m.lengths[p];
            for i in 1..=m.last_start(p) {
                let window: Vec<_> = (0..=limit as u64)
                    .map_while(|s| m.var_at(p, i + s * l))
                    .collect();
                if window.len() == limit + 1 {
                    m.rows.push(Row {
                        name: format!("c15_p{}_i{i}", p + 1),
                        tag: 15,
                        terms: window.into_iter().map(|v| (v, 1.0)).collect(),
                        sense: Sense::Le,
                        rhs: limit as f64,
                    });
                }
            }
        }
    }
    if options.incompatibility {
        for &(a, b) in inst.incompatible() {
            let tag = if a <= b { 16 } else { 17 };
            for i in 1..=m.last_start(a) {
                let (Some(u), Some(w)) = (m.var_at(a, i), m.var_at(b, i + m.lengths[a])) else {
                    continue;
                };
                m.rows.push(Row {
                    name: format!("c{tag}_p{}_p{}_i{i}", a + 1, b + 1),
                    tag,
                    terms: vec![(u, 1.0), (w, 1.0)],
                    sense: Sense::Le,
                    rhs: 1.0,
                });
            }
        }
    }
    if options.symmetry_fix {
        let v = m.var_at(0, 1).expect("type 1 fits at position 1");
        m.rows.push(Row {
            name: "c22_fix".into(),
            tag: 22,
            terms: vec![(v, 1.0)],
            sense: Sense::Eq,
            rhs: 1.0,
        });
    }
    Ok(m)
}

impl MilpModel {
    fn add_var(&mut self, name: String, kind: VarKind) -> usize {
        self.variables.push(Variable { name, kind });
        self.variables.len() - 1
    }

    fn last_start(&self, p: usize) -> u64 {
        (self.period + 1).saturating_sub(self.lengths[p])
    }

    fn var_at(&self, p: usize, i: u64) -> Option<usize> {
        if i == 0 {
            return None;
        }
        self.x[p].get(i as usize - 1).copied()
    }

    fn all_x(&self) -> impl Iterator<Item = (usize, u64, usize)> + '_ {
        self.x.iter().enumerate().flat_map(|(p, xs)| {
            xs.iter()
                .enumerate()
                .map(move |(i, &v)| (p, i as u64 + 1, v))
        })
    }

    pub fn trailing(&self) -> u64 {
        self.trailing
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn rows_tagged(&self, tag: u8) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(move |r| r.tag == tag)
    }

    pub fn row(&self, name: &str) -> Option<&Row> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn binary_count(&self) -> usize {
        self.x.iter().map(Vec::len).sum()
    }

    pub fn continuous_count(&self) -> usize {
        self.variables.len() - self.binary_count()
    }

    /// Binary variable indices in model order (type-major, then position).
    pub fn binaries(&self) -> Vec<usize> {
        self.all_x().map(|(_, _, v)| v).collect()
    }

    /// Variable index of `x_p^i` (0-based type, 1-based position).
    pub fn x_var(&self, pitch_type: usize, position: u64) -> Option<usize> {
        self.x
            .get(pitch_type)
            .and_then(|_| self.var_at(pitch_type, position))
    }

    /// Adds the cut `z <= bound`.
    pub fn add_objective_cut(&mut self, bound: f64) {
        self.rows.retain(|r| r.tag != 20);
        self.rows.push(Row {
            name: "c20_cut".into(),
            tag: 20,
            terms: vec![(self.z, 1.0)],
            sense: Sense::Le,
            rhs: bound,
        });
    }

    /// Adds a no-good row excluding exactly this assignment.
    pub fn add_no_good(&mut self, assignment: &[bool]) -> Result<()> {
        let binaries = self.binaries();
        if assignment.len() != binaries.len() {
            return invalid(format!(
                "assignment has {} values for {} binaries",
                assignment.len(),
                binaries.len()
            ));
        }
        let terms: Vec<_> = binaries
            .iter()
            .zip(assignment)
            .filter(|(_, &on)| on)
            .map(|(&v, _)| (v, 1.0))
            .collect();
        let ones = terms.len();
        self.no_goods += 1;
        self.rows.push(Row {
            name: format!("c21_nogood{}", self.no_goods),
            tag: 21,
            terms,
            sense: Sense::Le,
            rhs: ones as f64 - 1.0,
        });
        Ok(())
    }

    /// No-good rows for a sequence and each of its distinct rotations.
    pub fn add_rotation_no_goods(&mut self, seq: &PitchSequence) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for shift in 0..seq.len() {
            let mut types = seq.types().to_vec();
            types.rotate_left(shift);
            if seen.insert(types.clone()) {
                let assignment = self.encode_types(&types)?;
                self.add_no_good(&assignment)?;
            }
        }
        Ok(())
    }

    /// The 0/1 assignment (in `binaries()` order) of a sequence filling `T_j`.
    pub fn encode(&self, seq: &PitchSequence) -> Result<Vec<bool>> {
        self.encode_types(seq.types())
    }

    fn encode_types(&self, types: &[usize]) -> Result<Vec<bool>> {
        let total: u64 = types
            .iter()
            .map(|&p| self.lengths.get(p).copied().unwrap_or(0))
            .sum();
        if types.iter().any(|&p| p >= self.lengths.len()) {
            return invalid("sequence uses a pitch type outside the model");
        }
        if total != self.period {
            return Err(Error::Range(format!(
                "sequence length {total} does not fill T_j = {}",
                self.period
            )));
        }
        let mut on = vec![false; self.variables.len()];
        let mut pos = 1;
        for &p in types {
            on[self.var_at(p, pos).expect("start inside the tire")] = true;
            pos += self.lengths[p];
        }
        Ok(self.binaries().into_iter().map(|v| on[v]).collect())
    }

    /// Reads the sequence back from an assignment satisfying rows 7-10.
    pub fn decode(
        &self,
        assignment: &[bool],
        catalog: &crate::pitch::PitchCatalog,
    ) -> Result<PitchSequence> {
        let binaries = self.binaries();
        if assignment.len() != binaries.len() {
            return invalid(format!(
                "assignment has {} values for {} binaries",
                assignment.len(),
                binaries.len()
            ));
        }
        let mut starts: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for ((p, i, _), &on) in self.all_x().zip(assignment) {
            if on {
                starts.entry(i).or_default().push(p);
            }
        }
        let mut types = Vec::new();
        let mut pos = 1;
        while pos <= self.period {
            match starts.remove(&pos).as_deref() {
                Some(&[p]) => {
                    types.push(p);
                    pos += self.lengths[p];
                }
                _ => return invalid(format!("no single pitch starts at position {pos}")),
            }
        }
        if !starts.is_empty() || pos != self.period + 1 {
            return invalid("pitches overlap or leave gaps");
        }
        PitchSequence::new(types, catalog)
    }

    /// Text export in CPLEX LP format.
    pub fn to_lp_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "\\ pitch sequence model, T_j = {}, j = {}, N = {}",
            self.period, self.trailing, self.pitches
        );
        let _ = writeln!(out, "Minimize\n obj: z\nSubject To");
        for row in &self.rows {
            let mut line = format!(" {}:", row.name);
            for (n, &(v, c)) in row.terms.iter().enumerate() {
                if n > 0 && n % 8 == 0 {
                    out.push_str(&line);
                    out.push('\n');
                    line = "   ".into();
                }
                let sign = if c < 0.0 { '-' } else { '+' };
                let _ = write!(
                    line,
                    " {sign} {} {}",
                    format_number(c.abs()),
                    self.variables[v].name
                );
            }
            let _ = writeln!(
                out,
                "{line} {} {}",
                row.sense.symbol(),
                format_number(row.rhs)
            );
        }
        out.push_str("Bounds\n");
        for var in self.variables.iter().filter(|v| v.kind == VarKind::Free) {
            let _ = writeln!(out, " {} free", var.name);
        }
        out.push_str("Binaries\n");
        for v in self.binaries() {
            let _ = writeln!(out, " {}", self.variables[v].name);
        }
        out.push_str("End\n");
        out
    }

    pub fn write_lp<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        out.write_all(self.to_lp_string().as_bytes())
    }

    pub fn export_model(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_lp_string())?;
        Ok(())
    }
}

/// Shortest decimal text that reads back to the same `f64`.
fn format_number(v: f64) -> String {
    if v == 0.0 || (1e-4..1e15).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Checks every row of `m`. `assignment` lists the binaries in
/// `m.binaries()` order; `za`, `zb` and `z` are filled in from rows 5-6 and
/// the objective.
pub fn evaluate_assignment(m: &MilpModel, assignment: &[bool]) -> Result<AssignmentCheck> {
    let binaries = m.binaries();
    if assignment.len() != binaries.len() {
        return invalid(format!(
            "assignment has {} values for {} binaries",
            assignment.len(),
            binaries.len()
        ));
    }
    let mut value = vec![0.0; m.variables.len()];
    for (&v, &on) in binaries.iter().zip(assignment) {
        value[v] = if on { 1.0 } else { 0.0 };
    }
    let defined = |row: &Row, value: &[f64]| -> f64 {
        // rows 5-6 read `target - sum(...) = 0`
        -row.terms[1..]
            .iter()
            .map(|&(v, c)| c * value[v])
            .sum::<f64>()
    };
    for row in m.rows.iter().filter(|r| r.tag == 5 || r.tag == 6) {
        value[row.terms[0].0] = defined(row, &value);
    }
    let objective =
        m.za.iter()
            .chain(&m.zb)
            .map(|&v| value[v].abs())
            .fold(0.0, f64::max);
    value[m.z] = objective;
    let violated: Vec<String> = m
        .rows
        .iter()
        .filter(|row| {
            let lhs: f64 = row.terms.iter().map(|&(v, c)| c * value[v]).sum();
            !row.sense.holds(lhs, row.rhs)
        })
        .map(|row| row.name.clone())
        .collect();
    Ok(AssignmentCheck {
        feasible: violated.is_empty(),
        violated,
        objective,
    })
}

/// A model read back from LP text.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LpFile {
    pub minimize: bool,
    pub objective: Vec<(String, f64)>,
    pub rows: Vec<LpRow>,
    pub free: Vec<String>,
    pub binaries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub name: String,
    pub terms: Vec<(String, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

impl LpFile {
    /// Distinct variable names mentioned anywhere.
    pub fn variable_count(&self) -> usize {
        let mut names: std::collections::BTreeSet<&str> = std::collections::BTreeSet::new();
        names.extend(self.objective.iter().map(|(n, _)| n.as_str()));
        for row in &self.rows {
            names.extend(row.terms.iter().map(|(n, _)| n.as_str()));
        }
        names.extend(self.free.iter().map(String::as_str));
        names.extend(self.binaries.iter().map(String::as_str));
        names.len()
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().map(|r| r.terms.len()).sum()
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Preamble,
    Objective,
    Constraints,
    Bounds,
    Binaries,
    Done,
}

/// Parses the LP subset written by [`MilpModel::to_lp_string`]: one
/// objective, named rows (continuation lines allowed), `free` bounds and a
/// binaries section.
pub fn parse_lp(text: &str) -> Result<LpFile> {
    let mut lp = LpFile::default();
    let mut section = Section::Preamble;
    let mut pending: Vec<(usize, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('\\').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let header = line.to_ascii_lowercase();
        let next = match header.as_str() {
            "minimize" | "minimum" | "min" => Some(Section::Objective),
            "maximize" | "maximum" | "max" => Some(Section::Objective),
            "subject to" | "such that" | "st" | "s.t." => Some(Section::Constraints),
            "bounds" => Some(Section::Bounds),
            "binaries" | "binary" | "bin" => Some(Section::Binaries),
            "end" => Some(Section::Done),
            _ => None,
        };
        if let Some(next) = next {
            if section == Section::Objective && next != Section::Objective {
                lp.objective = parse_objective(&pending)?;
                pending.clear();
            }
            if next == Section::Objective {
                lp.minimize = header.starts_with("min");
            }
            section = next;
            continue;
        }
        match section {
            Section::Preamble | Section::Done => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unexpected text `{line}`"),
                });
            }
            Section::Objective => pending.push((line_no, line.to_string())),
            Section::Constraints => {
                pending.push((line_no, line.to_string()));
                if let Some(row) = parse_row(&pending)? {
                    lp.rows.push(row);
                    pending.clear();
                }
            }
            Section::Bounds => {
                let words: Vec<&str> = line.split_whitespace().collect();
                match words.as_slice() {
                    [name, free] if free.eq_ignore_ascii_case("free") => {
                        lp.free.push(name.to_string())
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: line_no,
                            msg: format!("unsupported bound `{line}`"),
                        });
                    }
                }
            }
            Section::Binaries => lp
                .binaries
                .extend(line.split_whitespace().map(String::from)),
        }
    }
    if let Some((line, _)) = pending.first() {
        return Err(Error::Parse {
            line: *line,
            msg: "unterminated row".into(),
        });
    }
    if section != Section::Done {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: "missing End".into(),
        });
    }
    Ok(lp)
}

fn tokens(lines: &[(usize, String)]) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    for (n, line) in lines {
        let spaced = line.replace(':', ": ");
        out.extend(spaced.split_whitespace().map(|t| (*n, t.to_string())));
    }
    out
}

fn parse_terms(toks: &[(usize, String)]) -> Result<Vec<(String, f64)>> {
    let mut terms = Vec::new();
    let mut sign = 1.0;
    let mut coeff: Option<f64> = None;
    for (line, t) in toks {
        match t.as_str() {
            "+" => sign = 1.0,
            "-" => sign = -1.0,
            _ => {
                if let Ok(c) = t.parse::<f64>() {
                    if coeff.is_some() {
                        return Err(Error::Parse {
                            line: *line,
                            msg: "two coefficients in a row".into(),
                        });
                    }
                    coeff = Some(c);
                } else {
                    terms.push((t.clone(), sign * coeff.take().unwrap_or(1.0)));
                    sign = 1.0;
                }
            }
        }
    }
    Ok(terms)
}

fn parse_objective(lines: &[(usize, String)]) -> Result<Vec<(String, f64)>> {
    let toks = tokens(lines);
    let body = match toks.first() {
        Some((_, t)) if t.ends_with(':') => &toks[1..],
        _ => &toks[..],
    };
    parse_terms(body)
}

fn parse_row(lines: &[(usize, String)]) -> Result<Option<LpRow>> {
    let toks = tokens(lines);
    let Some(at) = toks
        .iter()
        .position(|(_, t)| matches!(t.as_str(), "<=" | ">=" | "=" | "=<" | "=>" | "<" | ">"))
    else {
        return Ok(None);
    };
    let (line, _) = toks[at];
    let rhs_tokens = &toks[at + 1..];
    if rhs_tokens.is_empty() {
        return Ok(None);
    }
    let rhs_text: String = rhs_tokens.iter().map(|(_, t)| t.as_str()).collect();
    let rhs = rhs_text.parse::<f64>().map_err(|_| Error::Parse {
        line,
        msg: format!("bad right-hand side `{rhs_text}`"),
    })?;
    let (name, body) = match toks.first() {
        Some((_, t)) if t.ends_with(':') => (t.trim_end_matches(':').to_string(), &toks[1..at]),
        _ => {
            return Err(Error::Parse {
                line,
                msg: "row without a name".into(),
            })
        }
    };
    let sense = match toks[at].1.as_str() {
        "<=" | "=<" | "<" => Sense::Le,
        ">=" | "=>" | ">" => Sense::Ge,
        _ => Sense::Eq,
    };
    Ok(Some(LpRow {
        name,
        terms: parse_terms(body)?,
        sense,
        rhs,
    }))
}
