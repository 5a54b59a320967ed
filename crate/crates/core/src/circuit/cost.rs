//! Gate counting under the high-level and elementary cost models.

use std::collections::HashMap;

use num_complex::Complex64;

use super::decompose::{
    canonical_layout, expand_elementary, lowering, Elementary, ElementarySink, Lowering,
};
use super::{Circuit, Gate, GateSink};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CostModel {
    /// One unit per IR gate.
    HighLevel,
    /// Single-qubit gates and CNOTs after lowering every gate.
    #[default]
    Elementary,
}

impl CostModel {
    pub fn name(self) -> &'static str {
        match self {
            CostModel::HighLevel => "high",
            CostModel::Elementary => "elementary",
        }
    }
}

impl std::str::FromStr for CostModel {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "high" | "high-level" | "high_level" => Ok(CostModel::HighLevel),
            "elementary" => Ok(CostModel::Elementary),
            _ => Err(crate::Error::invalid(format!("unknown cost model {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HighLevelCounts {
    pub x: u64,
    pub cnot: u64,
    pub toffoli: u64,
    pub mcx: u64,
    pub spl: u64,
    pub cspl: u64,
}

impl HighLevelCounts {
    pub fn total(&self) -> u64 {
        self.x + self.cnot + self.toffoli + self.mcx + self.spl + self.cspl
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCounts {
    pub total: u64,
    pub cnot: u64,
    pub single_qubit: u64,
    pub high_level: HighLevelCounts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct ElementaryCounts {
    cnot: u64,
    single: u64,
}

impl ElementarySink for ElementaryCounts {
    fn push(&mut self, gate: Elementary) {
        match gate {
            Elementary::Cnot { .. } => self.cnot += 1,
            Elementary::Single { .. } => self.single += 1,
        }
    }
}

/// A [`GateSink`] that tallies both cost models without storing gates.
///
/// Elementary costs of multi-controlled gates are obtained by lowering a
/// representative gate once per `(kind, controls, lowering)` and caching it.
#[derive(Debug, Clone)]
pub struct GateCounter {
    width: usize,
    high: HighLevelCounts,
    elementary: ElementaryCounts,
    cache: HashMap<(bool, usize, Lowering), ElementaryCounts>,
}

impl GateCounter {
    pub fn new(width: usize) -> Self {
        GateCounter {
            width,
            high: HighLevelCounts::default(),
            elementary: ElementaryCounts::default(),
            cache: HashMap::new(),
        }
    }

    pub fn counts(&self, model: CostModel) -> GateCounts {
        match model {
            CostModel::HighLevel => GateCounts {
                total: self.high.total(),
                cnot: self.high.cnot,
                single_qubit: self.high.x + self.high.spl,
                high_level: self.high,
            },
            CostModel::Elementary => GateCounts {
                total: self.elementary.cnot + self.elementary.single,
                cnot: self.elementary.cnot,
                single_qubit: self.elementary.single,
                high_level: self.high,
            },
        }
    }

    fn multi_controlled(&mut self, is_spl: bool, controls: usize) -> ElementaryCounts {
        let free = self.width - controls - 1;
        let lower = lowering(controls, free);
        *self
            .cache
            .entry((is_spl, controls, lower))
            .or_insert_with(|| {
                let (ctrl, target, width) = canonical_layout(controls, lower);
                let gate = if is_spl {
                    Gate::cspl(&ctrl, Complex64::new(0.5, 0.0), 1.0, target)
                        .expect("valid split gate")
                } else {
                    Gate::mcx(&ctrl, target)
                };
                let mut counts = ElementaryCounts::default();
                expand_elementary(&gate, width, &mut counts)
                    .expect("canonical layout has the work it needs");
                counts
            })
    }

    fn add(&mut self, c: ElementaryCounts) {
        self.elementary.cnot += c.cnot;
        self.elementary.single += c.single;
    }
}

impl GateSink for GateCounter {
    fn push(&mut self, gate: Gate) {
        match &gate {
            Gate::X(_) => {
                self.high.x += 1;
                self.elementary.single += 1;
            }
            Gate::Cnot { .. } => {
                self.high.cnot += 1;
                self.elementary.cnot += 1;
            }
            Gate::Toffoli { .. } => {
                self.high.toffoli += 1;
                let c = self.multi_controlled(false, 2);
                self.add(c);
            }
            Gate::Mcx { controls, .. } => {
                self.high.mcx += 1;
                let c = self.multi_controlled(false, controls.len());
                self.add(c);
            }
            Gate::Spl { .. } => {
                self.high.spl += 1;
                self.elementary.single += 1;
            }
            Gate::Cspl { controls, .. } => {
                self.high.cspl += 1;
                let c = self.multi_controlled(true, controls.len());
                self.add(c);
            }
        }
    }
}

/// Counts of `circuit` under `model`.
pub fn count_gates(circuit: &Circuit, model: CostModel) -> GateCounts {
    let mut counter = GateCounter::new(circuit.width());
    for g in circuit.gates() {
        counter.push(g.clone());
    }
    counter.counts(model)
}
