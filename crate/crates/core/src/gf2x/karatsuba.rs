use crate::algebra::{BitOps, Phase};

/// Scratch length [`karatsuba_bits`] needs for operands of `n` coefficients.
pub fn karatsuba_scratch_len(n: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    let s = n.div_ceil(2);
    6 * s - 2 + karatsuba_scratch_len(s)
}

/// Recursive Karatsuba product of two coefficient vectors of equal length
/// `n = m + 1` (degree `m`), written to `out[..2n - 1]`.
///
/// Degree `m = 0` is a single AND. Otherwise the split point is
/// `m2 = floor(m / 2)`: the low halves hold coefficients `0..=m2` and the
/// high halves the remaining `m - m2`, so with `s = m2 + 1`
///
/// ```text
/// d0 = lo_a * lo_b,  d1 = (lo_a + hi_a) * (lo_b + hi_b),  d2 = hi_a * hi_b
/// c  = d2 x^(2s) + (d1 + d0 + d2) x^s + d0
/// ```
///
/// `d0` and `d2` are written straight into `out` (they do not overlap), the
/// middle term is built in scratch and then added at offset `s`. It is
/// associated as `d1 + (d0 + d2)`, so `d0 + d2` is formed alongside the
/// recursive `d1` and each level adds three XORs to the depth. The same
/// body drives concrete evaluation and gate tracing, so the gate graph is
/// exactly this recursion.
pub fn karatsuba_bits<O: BitOps>(
    ops: &mut O,
    a: &[O::Bit],
    b: &[O::Bit],
    out: &mut [O::Bit],
    scratch: &mut [O::Bit],
) {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    debug_assert!(n >= 1 && out.len() >= 2 * n - 1);
    if n == 1 {
        out[0] = ops.and(a[0], b[0]);
        return;
    }
    let s = (n - 1) / 2 + 1;
    let h = n - s;
    let (a_lo, a_hi) = a.split_at(s);
    let (b_lo, b_hi) = b.split_at(s);

    {
        let (low_out, high_out) = out.split_at_mut(2 * s);
        karatsuba_bits(ops, a_lo, b_lo, &mut low_out[..2 * s - 1], scratch);
        low_out[2 * s - 1] = ops.zero();
        karatsuba_bits(ops, a_hi, b_hi, &mut high_out[..2 * h - 1], scratch);
    }

    let (sum_a, rest) = scratch.split_at_mut(s);
    let (sum_b, rest) = rest.split_at_mut(s);
    let (d1, rest) = rest.split_at_mut(2 * s - 1);
    let (outer, rest) = rest.split_at_mut(2 * s - 1);

    ops.enter_phase(Phase::Operand);
    for j in 0..s {
        (sum_a[j], sum_b[j]) = if j < h {
            (ops.xor(a_lo[j], a_hi[j]), ops.xor(b_lo[j], b_hi[j]))
        } else {
            (a_lo[j], b_lo[j])
        };
    }
    karatsuba_bits(ops, sum_a, sum_b, d1, rest);

    ops.enter_phase(Phase::Middle);
    for j in 0..2 * s - 1 {
        outer[j] = if j < 2 * h - 1 {
            ops.xor(out[j], out[2 * s + j])
        } else {
            out[j]
        };
    }
    for j in 0..2 * s - 1 {
        d1[j] = ops.xor(d1[j], outer[j]);
    }

    ops.enter_phase(Phase::Recombine);
    for j in 0..2 * s - 1 {
        out[s + j] = ops.xor(out[s + j], d1[j]);
    }
}
