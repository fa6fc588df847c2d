use super::{shr_words, top_bit, xor_shifted_into, BitPoly, Degree, WORD_BITS};
use crate::error::{Error, Result};

/// A fixed modulus `f` reduced against by folding: the part of a polynomial
/// at or above `x^m` is multiplied by `f - x^m` and added back, word-wise,
/// until the degree drops below `m`. Cheap when `f` has few terms and a
/// large gap below its leading term, which is the case for every family
/// pentanomial.
#[derive(Debug, Clone)]
pub struct SparseModulus {
    poly: BitPoly,
    degree: usize,
    /// Exponents of `f` below the leading one.
    tail: Vec<usize>,
}

impl SparseModulus {
    pub fn new(poly: BitPoly) -> Result<Self> {
        let degree = match poly.degree() {
            Degree::NegInfinity => return Err(Error::DivisionByZero),
            Degree::Finite(d) => d,
        };
        let mut tail = poly.exponents();
        tail.pop();
        Ok(Self { poly, degree, tail })
    }

    pub fn poly(&self) -> &BitPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn reduce(&self, p: &BitPoly) -> BitPoly {
        let m = self.degree;
        if m == 0 {
            return BitPoly::zero();
        }
        let mut words = p.words.clone();
        let low_mask = (1u64 << (m % WORD_BITS)).wrapping_sub(1);
        let max_tail = self.tail.last().copied().unwrap_or(0);
        while top_bit(&words).is_some_and(|t| t >= m) {
            let mut high = shr_words(&words, m);
            while high.last() == Some(&0) {
                high.pop();
            }
            let keep = m / WORD_BITS;
            if m.is_multiple_of(WORD_BITS) {
                words.truncate(keep);
            } else {
                words.truncate(keep + 1);
                words[keep] &= low_mask;
            }
            let need = high.len() + max_tail / WORD_BITS + 1;
            if words.len() < need {
                words.resize(need, 0);
            }
            for &e in &self.tail {
                xor_shifted_into(&mut words, &high, e);
            }
        }
        BitPoly::from_words(words)
    }

    /// `a * b mod f` through the schoolbook product.
    pub fn mul(&self, a: &BitPoly, b: &BitPoly) -> BitPoly {
        self.reduce(&a.mul_schoolbook(b))
    }

    pub fn square(&self, a: &BitPoly) -> BitPoly {
        self.reduce(&a.square())
    }

    /// `x^(2^e) mod f`; agrees with [`BitPoly::powmod_x`].
    pub fn powmod_x(&self, e: usize) -> BitPoly {
        let mut acc = self.reduce(&BitPoly::x());
        for _ in 0..e {
            acc = self.square(&acc);
        }
        acc
    }
}
