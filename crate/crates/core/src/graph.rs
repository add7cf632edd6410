//! Layered start-position graph.
//!
//! Node `v_p^i` means "a pitch of type `p` starts at unit `i`" (1-based). An
//! arc leaves `v_p^i` for every `v_{p'}^{i + l_p}` inside the tire, the source
//! feeds every type at position 1, and `v_p^i` reaches the sink when the
//! pitch ends exactly on the last unit (`i = T - l_p + 1`). Every `s-t` path
//! with `N` pitch nodes is a pitch sequence of total length `T`.

use std::io::Write;

use crate::error::{Error, Result};
use crate::pitch::{min_rotation, PitchCatalog, PitchSequence};
use crate::spectrum::{LengthContributions, Objective};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Source,
    Pitch { position: u64, pitch_type: usize },
    Sink,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: Node,
    pub to: Node,
}

#[derive(Debug, Clone)]
pub struct PitchGraph {
    catalog: PitchCatalog,
    period: u64,
    arcs: Vec<Arc>,
    weights: LengthContributions,
}

/// Builds the graph for a tire of `period` units with arc weights for
/// harmonics `1..=harmonics`.
pub fn build_graph(catalog: &PitchCatalog, period: u64, harmonics: usize) -> PitchGraph {
    let r = catalog.types();
    let mut arcs = Vec::new();
    for p in 0..r {
        arcs.push(Arc {
            from: Node::Source,
            to: Node::Pitch {
                position: 1,
                pitch_type: p,
            },
        });
    }
    for i in 1..=period {
        for p in 0..r {
            let next = i + catalog.length(p);
            if next > period {
                continue;
            }
            for q in 0..r {
                arcs.push(Arc {
                    from: Node::Pitch {
                        position: i,
                        pitch_type: p,
                    },
                    to: Node::Pitch {
                        position: next,
                        pitch_type: q,
                    },
                });
            }
        }
    }
    for p in 0..r {
        let l = catalog.length(p);
        if l <= period {
            arcs.push(Arc {
                from: Node::Pitch {
                    position: period - l + 1,
                    pitch_type: p,
                },
                to: Node::Sink,
            });
        }
    }
    let weights = LengthContributions::for_period(catalog, period.max(1), harmonics.max(1));
    PitchGraph {
        catalog: catalog.clone(),
        period,
        arcs,
        weights,
    }
}

impl PitchGraph {
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn catalog(&self) -> &PitchCatalog {
        &self.catalog
    }

    /// `r * T` pitch nodes plus source and sink.
    pub fn node_count(&self) -> usize {
        self.catalog.types() * self.period as usize + 2
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn harmonics(&self) -> usize {
        self.weights.harmonics()
    }

    /// `(w_a^k, w_b^k)` of an arc; arcs leaving the source carry no weight.
    pub fn weight(&self, arc: &Arc, k: usize) -> (f64, f64) {
        match arc.from {
            Node::Pitch {
                position,
                pitch_type,
            } => (
                self.weights.a(k, position, pitch_type),
                self.weights.b(k, position, pitch_type),
            ),
            _ => (0.0, 0.0),
        }
    }

    /// `reach[m][i]`: a pitch may start at unit `i` and the tire can be
    /// completed with exactly `m` more pitches starting there.
    fn reachability(&self, pitches: usize) -> Vec<Vec<bool>> {
        let t = self.period as usize;
        let mut reach = vec![vec![false; t + 2]; pitches + 1];
        // zero pitches left: we must be exactly past the end
        reach[0][t + 1] = true;
        for m in 1..=pitches {
            for i in 1..=t {
                reach[m][i] = self
                    .catalog
                    .lengths()
                    .iter()
                    .any(|&l| i + l as usize <= t + 1 && reach[m - 1][i + l as usize]);
            }
        }
        reach
    }

    /// Number of `s-t` paths through exactly `pitches` pitch nodes.
    pub fn count_paths(&self, pitches: usize) -> u128 {
        let t = self.period as usize;
        let mut ways = vec![vec![0_u128; t + 2]; pitches + 1];
        ways[0][t + 1] = 1;
        for m in 1..=pitches {
            for i in 1..=t {
                ways[m][i] = self
                    .catalog
                    .lengths()
                    .iter()
                    .filter(|&&l| i + l as usize <= t + 1)
                    .map(|&l| ways[m - 1][i + l as usize])
                    .sum();
            }
        }
        if t == 0 {
            0
        } else {
            ways[pitches][1]
        }
    }

    /// Walks every `s-t` path with `pitches` pitch nodes in lexicographic
    /// type order, calling `visit` with the type vector.
    fn walk(&self, pitches: usize, mut visit: impl FnMut(&[usize])) {
        if pitches == 0 || self.period == 0 {
            return;
        }
        let reach = self.reachability(pitches);
        let mut types = Vec::with_capacity(pitches);
        self.walk_from(1, pitches, &reach, &mut types, &mut visit);
    }

    fn walk_from(
        &self,
        position: usize,
        left: usize,
        reach: &[Vec<bool>],
        types: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if left == 0 {
            visit(types);
            return;
        }
        for (p, &l) in self.catalog.lengths().iter().enumerate() {
            let next = position + l as usize;
            if next < reach[left - 1].len() && reach[left - 1][next] {
                types.push(p);
                self.walk_from(next, left - 1, reach, types, visit);
                types.pop();
            }
        }
    }

    /// All `s-t` paths with exactly `pitches` pitches, as sequences.
    pub fn enumerate_paths(&self, pitches: usize) -> Vec<PitchSequence> {
        let mut out = Vec::new();
        self.walk(pitches, |types| {
            out.push(PitchSequence::new(types.to_vec(), &self.catalog).expect("catalog types"));
        });
        out
    }

    /// Noise of the summed arc weights along the path given by `types`.
    pub fn path_noise(&self, types: &[usize], objective: Objective) -> f64 {
        let k_max = self.harmonics();
        let mut best: f64 = 0.0;
        for k in 1..=k_max {
            let (mut a, mut b) = (0.0, 0.0);
            let mut pos = 1;
            for &t in types {
                a += self.weights.a(k, pos, t);
                b += self.weights.b(k, pos, t);
                pos += self.catalog.length(t);
            }
            best = best.max(objective.amplitude(a, b));
        }
        best
    }

    /// The `pitches`-pitch path of least noise. Ties go to the smallest
    /// rotation, which is also what is returned (rotations of a path are
    /// paths of the same tire length with the same exact noise).
    pub fn min_noise_path(
        &self,
        pitches: usize,
        objective: Objective,
    ) -> Result<(PitchSequence, f64)> {
        let mut best: Option<(f64, Vec<usize>)> = None;
        self.walk(pitches, |types| {
            let value = self.path_noise(types, objective);
            let better = match &best {
                None => true,
                Some((v, c)) => {
                    value < v - 1e-9 || ((value - v).abs() <= 1e-9 && min_rotation(types) < *c)
                }
            };
            if better {
                best = Some((value, min_rotation(types)));
            }
        });
        let (value, types) = best.ok_or_else(|| {
            Error::Infeasible(format!(
                "no {pitches}-pitch path fills a tire of length {}",
                self.period
            ))
        })?;
        Ok((PitchSequence::new(types, &self.catalog)?, value))
    }

    /// Plain edge list: a header comment, then `from to` per arc. Nodes are
    /// written `s`, `t` and `v{type}_{position}` (both 1-based).
    pub fn write_edge_list<W: Write>(&self, mut out: W, with_weights: bool) -> std::io::Result<()> {
        writeln!(
            out,
            "# T={} types={} nodes={} arcs={}",
            self.period,
            self.catalog.types(),
            self.node_count(),
            self.arc_count()
        )?;
        for arc in &self.arcs {
            write!(out, "{} {}", node_name(arc.from), node_name(arc.to))?;
            if with_weights {
                let (wa, wb): (Vec<_>, Vec<_>) =
                    (1..=self.harmonics()).map(|k| self.weight(arc, k)).unzip();
                write!(out, " a={wa:?} b={wb:?}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

fn node_name(node: Node) -> String {
    match node {
        Node::Source => "s".into(),
        Node::Sink => "t".into(),
        Node::Pitch {
            position,
            pitch_type,
        } => format!("v{}_{}", pitch_type + 1, position),
    }
}
