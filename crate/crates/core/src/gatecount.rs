//! Gate counts by symbolic execution.
//!
//! The Karatsuba recursion and the fast reducers run on [`Circuit`], which
//! records each 2-input XOR and AND as a node of a DAG over symbolic input
//! bits. Constants are folded as nodes are built (`x + 0 = x`, `x + x = 0`,
//! `x * 1 = x`, `x * 0 = 0`) and folded gates are not counted. No other
//! common subexpressions are merged: sharing is exactly what the algorithms
//! spell out.
//!
//! Depths are tracked per node: `depth_x` counts XOR gates and `depth_a`
//! AND gates on the longest path from an input, matching delays written as
//! `T_A + k T_X`.

use rayon::prelude::*;

use crate::algebra::{BitOps, Phase};
use crate::family::PentaShape;
use crate::gf2x::{karatsuba_bits, karatsuba_scratch_len};
use crate::reduce::{reduce_bits, reduction_xor_formula, FastKind, Scratch};

/// Handle to a node of a [`Circuit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Input(usize),
    Const0,
    Const1,
    Xor(NodeId, NodeId),
    And(NodeId, NodeId),
}

/// A node together with its XOR and AND depths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolicBit {
    pub node: Node,
    pub depth_x: u32,
    pub depth_a: u32,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GateStats {
    pub xor_count: u64,
    pub and_count: u64,
    pub depth_x: u32,
    pub depth_a: u32,
}

#[derive(Debug, Clone)]
pub struct Circuit {
    nodes: Vec<SymbolicBit>,
    inputs: usize,
    phase: Phase,
    xor_by_phase: [u64; 4],
    and_count: u64,
}

impl Default for Circuit {
    fn default() -> Self {
        Self::new()
    }
}

impl Circuit {
    pub const ZERO: NodeId = NodeId(0);
    pub const ONE: NodeId = NodeId(1);

    pub fn new() -> Self {
        let leaf = |node| SymbolicBit {
            node,
            depth_x: 0,
            depth_a: 0,
        };
        Self {
            nodes: vec![leaf(Node::Const0), leaf(Node::Const1)],
            inputs: 0,
            phase: Phase::Other,
            xor_by_phase: [0; 4],
            and_count: 0,
        }
    }

    /// Appends `n` fresh input bits, numbered consecutively.
    pub fn inputs(&mut self, n: usize) -> Vec<NodeId> {
        (0..n)
            .map(|_| {
                let index = self.inputs;
                self.inputs += 1;
                self.push(SymbolicBit {
                    node: Node::Input(index),
                    depth_x: 0,
                    depth_a: 0,
                })
            })
            .collect()
    }

    pub fn input_count(&self) -> usize {
        self.inputs
    }

    pub fn node(&self, id: NodeId) -> &SymbolicBit {
        &self.nodes[id.0 as usize]
    }

    fn push(&mut self, bit: SymbolicBit) -> NodeId {
        let id = NodeId(u32::try_from(self.nodes.len()).expect("circuit too large"));
        self.nodes.push(bit);
        id
    }

    pub fn xor_count(&self) -> u64 {
        self.xor_by_phase.iter().sum()
    }

    pub fn xor_count_in(&self, phase: Phase) -> u64 {
        self.xor_by_phase[phase_index(phase)]
    }

    pub fn and_count(&self) -> u64 {
        self.and_count
    }

    /// Counts over the whole circuit, depths as the maximum over `outputs`.
    pub fn stats(&self, outputs: &[NodeId]) -> GateStats {
        GateStats {
            xor_count: self.xor_count(),
            and_count: self.and_count,
            depth_x: outputs
                .iter()
                .map(|&o| self.node(o).depth_x)
                .max()
                .unwrap_or(0),
            depth_a: outputs
                .iter()
                .map(|&o| self.node(o).depth_a)
                .max()
                .unwrap_or(0),
        }
    }

    /// Evaluates `outputs` for concrete input values.
    pub fn evaluate(&self, inputs: &[bool], outputs: &[NodeId]) -> Vec<bool> {
        assert_eq!(inputs.len(), self.inputs);
        let mut values = Vec::with_capacity(self.nodes.len());
        for bit in &self.nodes {
            let v = match bit.node {
                Node::Input(i) => inputs[i],
                Node::Const0 => false,
                Node::Const1 => true,
                Node::Xor(a, b) => values[a.0 as usize] ^ values[b.0 as usize],
                Node::And(a, b) => values[a.0 as usize] & values[b.0 as usize],
            };
            values.push(v);
        }
        outputs.iter().map(|o| values[o.0 as usize]).collect()
    }
}

fn phase_index(phase: Phase) -> usize {
    match phase {
        Phase::Operand => 0,
        Phase::Middle => 1,
        Phase::Recombine => 2,
        Phase::Other => 3,
    }
}

impl BitOps for Circuit {
    type Bit = NodeId;

    fn zero(&mut self) -> NodeId {
        Self::ZERO
    }

    fn xor(&mut self, a: NodeId, b: NodeId) -> NodeId {
        if a == Self::ZERO {
            return b;
        }
        if b == Self::ZERO {
            return a;
        }
        if a == b {
            return Self::ZERO;
        }
        let (na, nb) = (*self.node(a), *self.node(b));
        self.xor_by_phase[phase_index(self.phase)] += 1;
        self.push(SymbolicBit {
            node: Node::Xor(a, b),
            depth_x: 1 + na.depth_x.max(nb.depth_x),
            depth_a: na.depth_a.max(nb.depth_a),
        })
    }

    fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        if a == Self::ZERO || b == Self::ZERO {
            return Self::ZERO;
        }
        if a == Self::ONE {
            return b;
        }
        if b == Self::ONE {
            return a;
        }
        let (na, nb) = (*self.node(a), *self.node(b));
        self.and_count += 1;
        self.push(SymbolicBit {
            node: Node::And(a, b),
            depth_x: na.depth_x.max(nb.depth_x),
            depth_a: 1 + na.depth_a.max(nb.depth_a),
        })
    }

    /// Combines the two shallowest terms first, which gives the minimum
    /// XOR depth for the sum.
    fn xor_all(&mut self, terms: &[NodeId]) -> NodeId {
        let mut pool: Vec<NodeId> = terms.to_vec();
        while pool.len() > 1 {
            pool.sort_by_key(|&t| std::cmp::Reverse(self.node(t).depth_x));
            let a = pool.pop().expect("len > 1");
            let b = pool.pop().expect("len > 1");
            let s = self.xor(a, b);
            pool.push(s);
        }
        pool.pop().unwrap_or(Self::ZERO)
    }

    fn enter_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }
}

/// The dispatched fast reducer for `shape` on `2m - 1` symbolic inputs.
pub fn trace_reduction(shape: &PentaShape) -> GateStats {
    trace_reduction_kind(shape, FastKind::for_shape(shape))
        .expect("dispatched kind always accepts its shape")
        .0
}

/// A specific reducer network, with the circuit and its output nodes.
pub fn trace_reduction_kind(
    shape: &PentaShape,
    kind: FastKind,
) -> crate::Result<(GateStats, Circuit, Vec<NodeId>)> {
    let mut circuit = Circuit::new();
    let d = circuit.inputs(2 * shape.m() - 1);
    let mut scratch = Scratch::new();
    let outputs = reduce_bits(&mut circuit, kind, shape, &d, &mut scratch)?.to_vec();
    Ok((circuit.stats(&outputs), circuit, outputs))
}

/// Gate counts of the Karatsuba multiplier for two operands of degree
/// `degree` (`degree + 1` coefficients each).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KaratsubaStats {
    pub degree: usize,
    /// Every constructed gate, depths of the product bits.
    pub circuit: GateStats,
    /// XORs forming `lo + hi` of the operands.
    pub operand_xor: u64,
    /// XORs forming `d1 + d0 + d2`.
    pub middle_xor: u64,
    /// XORs adding the shifted middle term into `d2 x^(2s) + d0`.
    pub recombine_xor: u64,
}

impl KaratsubaStats {
    /// Operand and middle-term XORs, the multiplier XOR figure used for
    /// costs and the Karatsuba constant. Recombination XORs are excluded.
    pub fn tabulated_xor(&self) -> u64 {
        self.operand_xor + self.middle_xor
    }

    pub fn and_count(&self) -> u64 {
        self.circuit.and_count
    }
}

/// Builds the Karatsuba gate graph for two degree-`degree` operands.
pub fn karatsuba_circuit(degree: usize) -> (Circuit, Vec<NodeId>, Vec<NodeId>, Vec<NodeId>) {
    let n = degree + 1;
    let mut circuit = Circuit::new();
    let a = circuit.inputs(n);
    let b = circuit.inputs(n);
    let mut out = vec![Circuit::ZERO; 2 * n - 1];
    let mut scratch = vec![Circuit::ZERO; karatsuba_scratch_len(n)];
    karatsuba_bits(&mut circuit, &a, &b, &mut out, &mut scratch);
    (circuit, a, b, out)
}

pub fn trace_karatsuba(degree: usize) -> KaratsubaStats {
    let (circuit, _, _, out) = karatsuba_circuit(degree);
    KaratsubaStats {
        degree,
        circuit: circuit.stats(&out),
        operand_xor: circuit.xor_count_in(Phase::Operand),
        middle_xor: circuit.xor_count_in(Phase::Middle),
        recombine_xor: circuit.xor_count_in(Phase::Recombine),
    }
}

/// `m^(log2 3)`.
pub fn karatsuba_scale(m: usize) -> f64 {
    (m as f64).powf(3f64.log2())
}

/// `(m, C(m))` for `2 <= m <= max_m`, with `C(m)` the tabulated XOR count of
/// [`trace_karatsuba`] over `m^(log2 3)`. Ascending in `m`.
pub fn karatsuba_constant_series(max_m: usize) -> Vec<(usize, f64)> {
    (2..=max_m)
        .into_par_iter()
        .map(|m| {
            (
                m,
                trace_karatsuba(m).tabulated_xor() as f64 / karatsuba_scale(m),
            )
        })
        .collect()
}

/// Multiplication plus reduction cost for one shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostReport {
    pub m: usize,
    pub shape: Option<PentaShape>,
    pub mul_xor: u64,
    pub mul_and: u64,
    /// All multiplier XOR gates, recombination included.
    pub mul_xor_circuit: u64,
    pub red_xor: u64,
    pub total_xor: u64,
    pub karatsuba_constant: f64,
    pub mul_depth_x: u32,
    pub mul_depth_a: u32,
    pub red_depth_x: u32,
}

impl CostReport {
    /// XOR delay of the multiplier followed by the reducer.
    pub fn depth_x(&self) -> u32 {
        self.mul_depth_x + self.red_depth_x
    }
}

pub fn cost_report(shape: &PentaShape) -> CostReport {
    let m = shape.m();
    let mul = trace_karatsuba(m);
    let red = trace_reduction(shape);
    assert_eq!(red.xor_count as usize, reduction_xor_formula(shape));
    let report = CostReport {
        m,
        shape: Some(*shape),
        mul_xor: mul.tabulated_xor(),
        mul_and: mul.and_count(),
        mul_xor_circuit: mul.circuit.xor_count,
        red_xor: red.xor_count,
        total_xor: mul.tabulated_xor() + red.xor_count,
        karatsuba_constant: mul.tabulated_xor() as f64 / karatsuba_scale(m),
        mul_depth_x: mul.circuit.depth_x,
        mul_depth_a: mul.circuit.depth_a,
        red_depth_x: red.depth_x,
    };
    debug_assert!((report.total_xor as f64) < 6.0 * karatsuba_scale(m) + report.red_xor as f64);
    report
}

pub const CONSTANT_SERIES_HEADER: &str = "m,C";
pub const COST_REPORT_HEADER: &str = "m,b,c,mul_xor,mul_and,red_xor,total_xor,depth";

impl CostReport {
    pub fn csv_row(&self) -> String {
        let (b, c) = self.shape.map_or((String::new(), String::new()), |s| {
            (s.b().to_string(), s.c().to_string())
        });
        format!(
            "{},{},{},{},{},{},{},{}",
            self.m,
            b,
            c,
            self.mul_xor,
            self.mul_and,
            self.red_xor,
            self.total_xor,
            self.depth_x()
        )
    }
}
