//! GF(2^m) = GF(2)[x]/(f) for an irreducible family member `f`.
//!
//! Multiplication is the two-step product: a full Karatsuba product of
//! degree `<= 2m - 2`, then the shape's fast reducer.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::family::PentaShape;
use crate::gf2x::BitPoly;
use crate::reduce::Reducer;

#[derive(Debug)]
pub struct FieldCtx {
    shape: PentaShape,
    modulus: BitPoly,
}

impl FieldCtx {
    /// Fails with [`Error::ReducibleModulus`] unless the shape's polynomial
    /// is irreducible.
    pub fn new(shape: PentaShape) -> Result<Arc<Self>> {
        if !shape.is_irreducible() {
            return Err(Error::ReducibleModulus { m: shape.m() });
        }
        Ok(Arc::new(Self {
            shape,
            modulus: shape.to_poly(),
        }))
    }

    pub fn shape(&self) -> &PentaShape {
        &self.shape
    }

    pub fn modulus(&self) -> &BitPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.shape.m()
    }

    /// The residue of `value` modulo `f`.
    pub fn element(self: &Arc<Self>, value: &BitPoly) -> FieldElement {
        let value = if value.degree().finite().is_some_and(|d| d >= self.degree()) {
            value.rem(&self.modulus).expect("modulus is nonzero")
        } else {
            value.clone()
        };
        FieldElement {
            value,
            ctx: Arc::clone(self),
        }
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        self.element(&BitPoly::zero())
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.element(&BitPoly::one())
    }

    /// Uniform element drawn from `rng`.
    pub fn random<R: Rng + ?Sized>(self: &Arc<Self>, rng: &mut R) -> FieldElement {
        let m = self.degree();
        let mut words: Vec<u64> = (0..m.div_ceil(64)).map(|_| rng.next_u64()).collect();
        if !m.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (m % 64)) - 1;
            }
        }
        self.element(&BitPoly::from_words(words))
    }

    fn reduce(&self, product: &BitPoly) -> BitPoly {
        Reducer::new(self.shape)
            .reduce(product)
            .expect("products of reduced elements have degree <= 2m - 2")
    }
}

/// An element of a [`FieldCtx`], always held as its residue of degree
/// `< m`.
#[derive(Clone)]
pub struct FieldElement {
    value: BitPoly,
    ctx: Arc<FieldCtx>,
}

impl FieldElement {
    pub fn value(&self) -> &BitPoly {
        &self.value
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }

    fn same_field(&self, other: &FieldElement) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.shape == other.ctx.shape {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with_value(&self, value: BitPoly) -> FieldElement {
        debug_assert!(value
            .degree()
            .finite()
            .is_none_or(|d| d < self.ctx.degree()));
        FieldElement {
            value,
            ctx: Arc::clone(&self.ctx),
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        Ok(self.with_value(&self.value ^ &other.value))
    }

    /// Karatsuba product followed by the fast reducer.
    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same_field(other)?;
        let product = self.value.mul_karatsuba(&other.value);
        Ok(self.with_value(self.ctx.reduce(&product)))
    }

    /// Spreads the coefficients to even positions and reduces.
    pub fn square(&self) -> FieldElement {
        self.with_value(self.ctx.reduce(&self.value.square()))
    }

    /// `self^(2^k)`, `k` squarings.
    pub fn frobenius(&self, k: usize) -> FieldElement {
        (0..k).fold(self.clone(), |acc, _| acc.square())
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, e: u128) -> FieldElement {
        self.pow_words(&[e as u64, (e >> 64) as u64])
    }

    /// Exponent given as little-endian 64-bit words.
    pub fn pow_words(&self, e: &[u64]) -> FieldElement {
        let mut acc = self.ctx.one();
        let bits = BitPoly::from_words(e.to_vec());
        let Some(top) = bits.degree().finite() else {
            return acc;
        };
        for i in (0..=top).rev() {
            acc = acc.square();
            if bits.bit(i) {
                acc = acc.mul(self).expect("same context");
            }
        }
        acc
    }

    /// Extended Euclid on `(f, self)`.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let (mut r0, mut r1) = (self.ctx.modulus.clone(), self.value.clone());
        let (mut s0, mut s1) = (BitPoly::zero(), BitPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 ^ &q.mul_schoolbook(&s1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        debug_assert!(r0.is_one(), "f is irreducible so gcd(f, x) = 1");
        Ok(self.with_value(s0.rem(&self.ctx.modulus)?))
    }

    pub fn to_hex(&self) -> String {
        self.value.to_hex()
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.shape == other.ctx.shape && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({}; 0x{:X})", self.ctx.shape, self.value)
    }
}
