//! Reduction of polynomials of degree `<= 2m - 2` modulo a family member.
//!
//! [`reduce_generic`] runs the step-by-step substitution `x^m = x^a + x^b +
//! x^c + 1` over runs of coefficients and records every step. The three fast
//! reducers are fixed XOR networks whose shape depends only on `(b, c)`:
//!
//! | reducer            | shapes          | XOR gates     |
//! |--------------------|-----------------|---------------|
//! | [`reduce_c1`]      | `c = 1`         | `6b + 1`      |
//! | [`reduce_general`] | `c > 1`         | `6b + 3c - 2` |
//! | [`reduce_b2c`]     | `b = 2c, c > 1` | `12c - 1`     |
//!
//! Each output column is formed by at most three XOR levels once the
//! shared runs are in place.

use crate::algebra::{BitOps, Counting, Plain};
use crate::error::{Error, Result};
use crate::family::{PentaShape, Subfamily};
use crate::gf2x::BitPoly;

/// `sum_{i = lo}^{hi} d_{i + offset} x^i`: one summation term of the
/// step-by-step reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub lo: usize,
    pub hi: usize,
    pub offset: usize,
}

impl Run {
    fn eval(&self, d: &BitPoly, into: &mut BitPoly) {
        for i in self.lo..=self.hi {
            if d.bit(i + self.offset) {
                into.flip_bit(i);
            }
        }
    }
}

/// One reduction step: `A_r` still has terms at or above `x^m`, `B_r` is
/// already reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub a: BitPoly,
    pub b: BitPoly,
    pub a_runs: Vec<Run>,
    pub b_runs: Vec<Run>,
}

impl ReductionStep {
    /// Number of summation terms in `A_r` (before any cancellation).
    pub fn a_terms(&self) -> usize {
        self.a_runs.len()
    }

    pub fn b_terms(&self) -> usize {
        self.b_runs.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    /// Steps `r = 0, 1, ..., total_steps`; the last one has `A = 0`.
    pub steps: Vec<ReductionStep>,
    /// Number of substitution passes performed.
    pub total_steps: usize,
}

fn check_input(d: &BitPoly, shape: &PentaShape) -> Result<()> {
    let max = shape.max_input_degree();
    match d.degree().finite() {
        Some(degree) if degree > max => Err(Error::InputTooLong { degree, max }),
        _ => Ok(()),
    }
}

/// Step-by-step reduction. `D_0` splits into `A_0` (exponents `>= m`) and
/// `B_0`; each run of `A_r` is substituted through `x^m = x^a + x^b + x^c +
/// 1`, giving four shifted runs whose parts below `x^m` go to `B_(r+1)` and
/// parts at or above to `A_(r+1)`. The result is the sum of all `B_r`.
pub fn reduce_generic(d: &BitPoly, shape: &PentaShape) -> Result<(BitPoly, ReductionTrace)> {
    check_input(d, shape)?;
    let m = shape.m();
    let tail = [shape.a(), shape.b(), shape.c(), 0];

    let mut a_runs = vec![Run {
        lo: m,
        hi: 2 * m - 2,
        offset: 0,
    }];
    let mut b_runs = vec![Run {
        lo: 0,
        hi: m - 1,
        offset: 0,
    }];
    let mut steps = Vec::new();
    let mut result = BitPoly::zero();
    loop {
        let mut a = BitPoly::zero();
        let mut b = BitPoly::zero();
        a_runs.iter().for_each(|r| r.eval(d, &mut a));
        b_runs.iter().for_each(|r| r.eval(d, &mut b));
        result ^= &b;
        let done = a_runs.is_empty();
        let next_a_source = std::mem::take(&mut a_runs);
        steps.push(ReductionStep {
            a,
            b,
            a_runs: next_a_source.clone(),
            b_runs: std::mem::take(&mut b_runs),
        });
        if done {
            break;
        }
        for run in &next_a_source {
            for &e in &tail {
                // x^i with i >= m becomes x^(i - m + e)
                let lo = run.lo - m + e;
                let hi = run.hi - m + e;
                let offset = run.offset + m - e;
                b_runs.push(Run {
                    lo,
                    hi: hi.min(m - 1),
                    offset,
                });
                if hi >= m {
                    a_runs.push(Run {
                        lo: lo.max(m),
                        hi,
                        offset,
                    });
                }
            }
        }
    }
    let total_steps = steps.len() - 1;
    Ok((result, ReductionTrace { steps, total_steps }))
}

/// Which fast XOR network to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FastKind {
    COne,
    General,
    BTwiceC,
}

impl FastKind {
    /// The dispatch rule: `c = 1` first, then `b = 2c`, else general.
    pub fn for_shape(shape: &PentaShape) -> Self {
        match shape.subfamily() {
            Subfamily::CEqualsOne => FastKind::COne,
            Subfamily::AlmostEquallySpaced => FastKind::BTwiceC,
            Subfamily::General => FastKind::General,
        }
    }

    fn check(self, shape: &PentaShape) -> Result<()> {
        let ok = match self {
            FastKind::COne => shape.c() == 1,
            FastKind::General => shape.c() > 1,
            FastKind::BTwiceC => shape.c() > 1 && shape.is_b_twice_c(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::WrongSubfamily {
                expected: self.requirement(),
                actual: shape.subfamily(),
            })
        }
    }

    fn requirement(self) -> &'static str {
        match self {
            FastKind::COne => "c = 1",
            FastKind::General => "c > 1",
            FastKind::BTwiceC => "b = 2c, c > 1",
        }
    }

    /// XOR gates of the network for `shape`.
    pub fn xor_count(self, shape: &PentaShape) -> usize {
        let (b, c) = (shape.b(), shape.c());
        match self {
            FastKind::COne => 6 * b + 1,
            FastKind::General => 6 * b + 3 * c - 2,
            FastKind::BTwiceC => 12 * c - 1,
        }
    }
}

/// Closed-form XOR count of the dispatched fast reducer.
pub fn reduction_xor_formula(shape: &PentaShape) -> usize {
    FastKind::for_shape(shape).xor_count(shape)
}

/// Temporaries and output of a fast reducer; reusable across calls.
#[derive(Debug, Clone, Default)]
pub struct Scratch<B> {
    first: Vec<B>,
    second: Vec<B>,
    out: Vec<B>,
}

impl<B: Copy> Scratch<B> {
    pub fn new() -> Self {
        Self {
            first: Vec::new(),
            second: Vec::new(),
            out: Vec::new(),
        }
    }
}

/// Runs the `kind` network on the full `2m - 1` coefficient vector `d`.
/// The reduced coefficients `0..m` are returned from `scratch`.
pub fn reduce_bits<'s, O: BitOps>(
    ops: &mut O,
    kind: FastKind,
    shape: &PentaShape,
    d: &[O::Bit],
    scratch: &'s mut Scratch<O::Bit>,
) -> Result<&'s [O::Bit]> {
    kind.check(shape)?;
    assert_eq!(
        d.len(),
        2 * shape.m() - 1,
        "input must hold 2m - 1 coefficients"
    );
    let zero = ops.zero();
    scratch.out.clear();
    scratch.out.resize(shape.m(), zero);
    scratch.first.clear();
    scratch.second.clear();
    match kind {
        FastKind::COne => c_one(ops, shape.b(), d, scratch),
        FastKind::General => general(ops, shape.b(), shape.c(), d, scratch),
        FastKind::BTwiceC => b_twice_c(ops, shape.c(), d, scratch),
    }
    Ok(&scratch.out)
}

/// `f = x^(2b+1) + x^(b+1) + x^b + x + 1`, input `d[0..=4b]`.
fn c_one<O: BitOps>(ops: &mut O, b: usize, d: &[O::Bit], s: &mut Scratch<O::Bit>) {
    let Scratch {
        first: t1,
        second: t4,
        out,
    } = s;
    for i in 0..b - 1 {
        t1.push(ops.xor(d[i + 2 * b + 1], d[i + 3 * b + 2]));
    }
    for i in 0..b {
        t4.push(ops.xor(d[i + 2 * b + 1], d[i + 3 * b + 1]));
    }
    out[0] = ops.xor_all(&[d[0], t1[0], d[3 * b + 1]]);
    for i in 1..b - 1 {
        out[i] = ops.xor_all(&[d[i], t1[i], t4[i - 1]]);
    }
    out[b - 1] = ops.xor_all(&[d[b - 1], d[3 * b], t4[b - 2]]);
    out[b] = ops.xor_all(&[d[b], t1[0], t4[b - 1]]);
    for i in b + 1..2 * b - 1 {
        out[i] = ops.xor_all(&[d[i], t1[i - b], t1[i - b - 1]]);
    }
    out[2 * b - 1] = ops.xor_all(&[d[2 * b - 1], d[3 * b], t1[b - 2]]);
    out[2 * b] = ops.xor_all(&[d[2 * b], d[3 * b + 1], d[3 * b]]);
}

/// `f = x^(2b+c) + x^(b+c) + x^b + x^c + 1` with `c > 1`, input
/// `d[0..=4b+2c-2]`. One shared run `t1[i] = d[i+2b+c] + d[i+3b+2c]`; the
/// single bit `d[3b+c-1]` feeds four columns directly.
fn general<O: BitOps>(ops: &mut O, b: usize, c: usize, d: &[O::Bit], s: &mut Scratch<O::Bit>) {
    let Scratch { first: t1, out, .. } = s;
    let t2 = d[3 * b + c - 1];
    for i in 0..b - 1 {
        t1.push(ops.xor(d[i + 2 * b + c], d[i + 3 * b + 2 * c]));
    }
    // the fourth row of the column sums: d[i+3b+c] for i < c, d[i+3b] up to b+2c-2
    let fourth = |i: usize| -> Option<usize> {
        if i < c {
            Some(i + 3 * b + c)
        } else if i <= b + 2 * c - 2 {
            Some(i + 3 * b)
        } else {
            None
        }
    };
    let mut column = |ops: &mut O, i: usize, terms: &[O::Bit]| {
        out[i] = match fourth(i) {
            Some(j) => {
                let mut all = [terms[0], terms[0], terms[0], terms[0]];
                all[..terms.len()].copy_from_slice(terms);
                all[terms.len()] = d[j];
                ops.xor_all(&all[..=terms.len()])
            }
            None => ops.xor_all(terms),
        };
    };
    for i in 0..c {
        column(ops, i, &[d[i], t1[i]]);
    }
    for i in c..b - 1 {
        column(ops, i, &[d[i], t1[i], d[i + 2 * b]]);
    }
    column(ops, b - 1, &[d[b - 1], t2, d[3 * b - 1]]);
    for i in b..b + c - 1 {
        column(ops, i, &[d[i], t1[i - b], d[i + 2 * b]]);
    }
    column(ops, b + c - 1, &[d[b + c - 1], t2, t1[c - 1]]);
    for i in b + c..2 * b - 1 {
        column(ops, i, &[d[i], t1[i - b], t1[i - b - c]]);
    }
    column(ops, 2 * b - 1, &[d[2 * b - 1], t2, t1[b - c - 1]]);
    for i in 2 * b..2 * b + c - 1 {
        column(ops, i, &[d[i], t1[i - b - c], d[i + b + c]]);
    }
    column(
        ops,
        2 * b + c - 1,
        &[d[2 * b + c - 1], t2, d[3 * b + 2 * c - 1]],
    );
}

/// `f = x^(5c) + x^(3c) + x^(2c) + x^c + 1` with `c > 1`, input
/// `d[0..=10c-2]`. Shared runs `t1[i] = d[i+5c] + d[i+6c]` (`c` bits) and
/// `t2[i] = d[i+7c] + d[i+9c]` (`c - 1` bits).
fn b_twice_c<O: BitOps>(ops: &mut O, c: usize, d: &[O::Bit], s: &mut Scratch<O::Bit>) {
    let Scratch {
        first: t1,
        second: t2,
        out,
    } = s;
    for i in 0..c {
        t1.push(ops.xor(d[i + 5 * c], d[i + 6 * c]));
    }
    for i in 0..c - 1 {
        t2.push(ops.xor(d[i + 7 * c], d[i + 9 * c]));
    }
    for i in 0..c {
        out[i] = ops.xor_all(&[d[i], d[i + 5 * c], d[i + 7 * c], d[i + 8 * c]]);
    }
    for i in c..2 * c - 1 {
        out[i] = ops.xor_all(&[d[i], t1[i - c], t2[i - c]]);
    }
    out[2 * c - 1] = ops.xor_all(&[d[2 * c - 1], t1[c - 1], d[8 * c - 1]]);
    for i in 2 * c..3 * c {
        out[i] = ops.xor(d[i], t1[i - 2 * c]);
    }
    for i in 3 * c..4 * c {
        out[i] = ops.xor_all(&[d[i], t1[i - 3 * c], d[i + 5 * c]]);
    }
    for i in 4 * c..5 * c - 1 {
        out[i] = ops.xor_all(&[d[i], d[i + 2 * c], t2[i - 4 * c]]);
    }
    out[5 * c - 1] = ops.xor_all(&[d[5 * c - 1], d[7 * c - 1], d[8 * c - 1]]);
}

/// Concrete fast reducer bound to one shape, holding its buffers.
#[derive(Debug, Clone)]
pub struct Reducer {
    shape: PentaShape,
    kind: FastKind,
    input: Vec<bool>,
    scratch: Scratch<bool>,
}

impl Reducer {
    /// The dispatched reducer for `shape`.
    pub fn new(shape: PentaShape) -> Self {
        Self {
            shape,
            kind: FastKind::for_shape(&shape),
            input: vec![false; 2 * shape.m() - 1],
            scratch: Scratch::new(),
        }
    }

    pub fn with_kind(shape: PentaShape, kind: FastKind) -> Result<Self> {
        kind.check(&shape)?;
        Ok(Self {
            kind,
            ..Self::new(shape)
        })
    }

    pub fn shape(&self) -> &PentaShape {
        &self.shape
    }

    pub fn kind(&self) -> FastKind {
        self.kind
    }

    pub fn reduce(&mut self, d: &BitPoly) -> Result<BitPoly> {
        self.run(&mut Plain, d)
    }

    /// Reduces and reports how many XOR operations were executed.
    pub fn reduce_counting(&mut self, d: &BitPoly) -> Result<(BitPoly, u64)> {
        let mut ops = Counting::default();
        let r = self.run(&mut ops, d)?;
        Ok((r, ops.xors))
    }

    fn run<O: BitOps<Bit = bool>>(&mut self, ops: &mut O, d: &BitPoly) -> Result<BitPoly> {
        check_input(d, &self.shape)?;
        d.write_bits(&mut self.input);
        let out = reduce_bits(ops, self.kind, &self.shape, &self.input, &mut self.scratch)?;
        Ok(BitPoly::from_bits(out))
    }
}

/// Dispatching fast reduction: `c = 1`, then `b = 2c`, else the general
/// network.
pub fn reduce(d: &BitPoly, shape: &PentaShape) -> Result<BitPoly> {
    Reducer::new(*shape).reduce(d)
}

pub fn reduce_c1(d: &BitPoly, shape: &PentaShape) -> Result<BitPoly> {
    Reducer::with_kind(*shape, FastKind::COne)?.reduce(d)
}

/// Also valid for `b = 2c` shapes, at the general cost.
pub fn reduce_general(d: &BitPoly, shape: &PentaShape) -> Result<BitPoly> {
    Reducer::with_kind(*shape, FastKind::General)?.reduce(d)
}

pub fn reduce_b2c(d: &BitPoly, shape: &PentaShape) -> Result<BitPoly> {
    Reducer::with_kind(*shape, FastKind::BTwiceC)?.reduce(d)
}
