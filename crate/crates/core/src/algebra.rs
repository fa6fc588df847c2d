//! Single-bit GF(2) operations behind a trait.
//!
//! The Karatsuba recursion and the reducers are written against [`BitOps`].
//! [`Plain`] evaluates on `bool`, [`Counting`] additionally counts every
//! executed gate, and the gate-graph builder in
//! [`gatecount`](crate::gatecount) records nodes.

/// Which part of an algorithm is currently emitting gates. Only the
/// Karatsuba multiplier reports phases; the gate tracer uses them to split
/// XOR counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Sums `low + high` of the two operands.
    Operand,
    /// The middle term `d1 + d0 + d2`.
    Middle,
    /// Shift-and-add of `d0`, the middle term and `d2` into the product.
    Recombine,
    Other,
}

pub trait BitOps {
    type Bit: Copy;

    fn zero(&mut self) -> Self::Bit;
    fn xor(&mut self, a: Self::Bit, b: Self::Bit) -> Self::Bit;
    fn and(&mut self, a: Self::Bit, b: Self::Bit) -> Self::Bit;

    /// XOR of every term; `terms.len() - 1` gates. Implementations may pick
    /// the association order (the gate builder minimises depth).
    fn xor_all(&mut self, terms: &[Self::Bit]) -> Self::Bit {
        match terms.split_first() {
            None => self.zero(),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &t| self.xor(acc, t)),
        }
    }

    fn enter_phase(&mut self, _phase: Phase) {}
}

/// Concrete evaluation on `bool`.
#[derive(Debug, Default, Clone, Copy)]
pub struct Plain;

impl BitOps for Plain {
    type Bit = bool;

    #[inline]
    fn zero(&mut self) -> bool {
        false
    }

    #[inline]
    fn xor(&mut self, a: bool, b: bool) -> bool {
        a ^ b
    }

    #[inline]
    fn and(&mut self, a: bool, b: bool) -> bool {
        a & b
    }
}

/// Concrete evaluation that counts executed XOR and AND operations.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Counting {
    pub xors: u64,
    pub ands: u64,
}

impl BitOps for Counting {
    type Bit = bool;

    #[inline]
    fn zero(&mut self) -> bool {
        false
    }

    #[inline]
    fn xor(&mut self, a: bool, b: bool) -> bool {
        self.xors += 1;
        a ^ b
    }

    #[inline]
    fn and(&mut self, a: bool, b: bool) -> bool {
        self.ands += 1;
        a & b
    }
}
