//! Dense polynomials over GF(2).
//!
//! Coefficients are packed little-endian into `u64` words: bit `i` of the
//! logical bit string is the coefficient of `x^i`. The word vector is kept
//! trimmed (no trailing zero words), so structural equality is polynomial
//! equality.

mod karatsuba;
mod modulus;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

pub use karatsuba::{karatsuba_bits, karatsuba_scratch_len};
pub use modulus::SparseModulus;

const WORD_BITS: usize = 64;

/// Degree of a polynomial. The zero polynomial has degree
/// [`Degree::NegInfinity`], which sorts below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitPoly {
    words: Vec<u64>,
}

impl BitPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut p = Self::with_capacity(k + 1);
        p.words.resize(k / WORD_BITS + 1, 0);
        p.words[k / WORD_BITS] = 1 << (k % WORD_BITS);
        p
    }

    fn with_capacity(nbits: usize) -> Self {
        Self {
            words: Vec::with_capacity(nbits.div_ceil(WORD_BITS)),
        }
    }

    /// Sum of `x^e` over `exponents`; repeated exponents cancel.
    pub fn from_exponents(exponents: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exponents {
            p.flip_bit(e);
        }
        p
    }

    /// Little-endian words, bit `i` of word `w` is the coefficient of
    /// `x^(64w + i)`.
    pub fn from_words(words: Vec<u64>) -> Self {
        let mut p = Self { words };
        p.trim();
        p
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(WORD_BITS)];
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
        }
        Self::from_words(words)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Coefficients `0..len`; higher coefficients are dropped, missing ones
    /// are zero.
    pub fn to_bits(&self, len: usize) -> Vec<bool> {
        let mut out = vec![false; len];
        self.write_bits(&mut out);
        out
    }

    /// Writes coefficients `0..out.len()` into `out`.
    pub fn write_bits(&self, out: &mut [bool]) {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.bit(i);
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Degree {
        match self.words.last() {
            None => Degree::NegInfinity,
            Some(&top) => Degree::Finite(
                (self.words.len() - 1) * WORD_BITS + (WORD_BITS - 1 - top.leading_zeros() as usize),
            ),
        }
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
    }

    pub fn set_bit(&mut self, i: usize, value: bool) {
        if self.bit(i) != value {
            self.flip_bit(i);
        }
    }

    pub fn flip_bit(&mut self, i: usize) {
        let w = i / WORD_BITS;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (i % WORD_BITS);
        self.trim();
    }

    /// Exponents of the nonzero coefficients, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                out.push(wi * WORD_BITS + rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
        out
    }

    /// `self * x^k`.
    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut words = vec![0u64; self.words.len() + k.div_ceil(WORD_BITS) + 1];
        xor_shifted_into(&mut words, &self.words, k);
        Self::from_words(words)
    }

    /// `floor(self / x^k)`.
    pub fn shr(&self, k: usize) -> Self {
        Self::from_words(shr_words(&self.words, k))
    }

    /// `self mod x^k`, the coefficients below `k`.
    pub fn low(&self, k: usize) -> Self {
        let mut words: Vec<u64> = self
            .words
            .iter()
            .take(k.div_ceil(WORD_BITS))
            .copied()
            .collect();
        if !k.is_multiple_of(WORD_BITS) {
            if let Some(last) = words.get_mut(k / WORD_BITS) {
                *last &= (1u64 << (k % WORD_BITS)) - 1;
            }
        }
        Self::from_words(words)
    }

    /// `self += other * x^shift`.
    pub fn add_shifted(&mut self, other: &BitPoly, shift: usize) {
        if other.is_zero() {
            return;
        }
        let need = other.words.len() + shift.div_ceil(WORD_BITS) + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        xor_shifted_into(&mut self.words, &other.words, shift);
        self.trim();
    }

    /// Carry-less product by shift-and-XOR over the set bits of `other`.
    /// This is the reference the faster products are checked against.
    pub fn mul_schoolbook(&self, other: &BitPoly) -> BitPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut words = vec![0u64; self.words.len() + other.words.len() + 1];
        for e in other.exponents() {
            xor_shifted_into(&mut words, &self.words, e);
        }
        Self::from_words(words)
    }

    /// Carry-less product by the bit-level recursive Karatsuba algorithm.
    ///
    /// Both operands are viewed as polynomials of degree
    /// `max(deg self, deg other)` and the recursion splits down to single
    /// coefficients; see [`karatsuba_bits`] for the split convention.
    pub fn mul_karatsuba(&self, other: &BitPoly) -> BitPoly {
        let (Some(da), Some(db)) = (self.degree().finite(), other.degree().finite()) else {
            return Self::zero();
        };
        let n = da.max(db) + 1;
        let a = self.to_bits(n);
        let b = other.to_bits(n);
        let mut out = vec![false; 2 * n - 1];
        let mut scratch = vec![false; karatsuba_scratch_len(n)];
        karatsuba_bits(&mut crate::algebra::Plain, &a, &b, &mut out, &mut scratch);
        Self::from_bits(&out)
    }

    /// `self^2`: coefficient `i` moves to `2i`.
    pub fn square(&self) -> BitPoly {
        let mut words = Vec::with_capacity(2 * self.words.len());
        for &w in &self.words {
            words.push(spread_bits(w as u32));
            words.push(spread_bits((w >> 32) as u32));
        }
        Self::from_words(words)
    }

    /// Long division, most significant bit first. Returns
    /// `(quotient, remainder)` with `deg remainder < deg divisor`.
    pub fn divrem(&self, divisor: &BitPoly) -> Result<(BitPoly, BitPoly)> {
        let Degree::Finite(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let mut rem = self.words.clone();
        let mut quot = match self.degree() {
            Degree::Finite(dn) if dn >= dd => vec![0u64; (dn - dd) / WORD_BITS + 1],
            _ => return Ok((Self::zero(), self.clone())),
        };
        let top = self.degree().finite().unwrap_or(0);
        for i in (dd..=top).rev() {
            if (rem[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1 {
                let shift = i - dd;
                xor_shifted_into(&mut rem, &divisor.words, shift);
                quot[shift / WORD_BITS] |= 1 << (shift % WORD_BITS);
            }
        }
        Ok((Self::from_words(quot), Self::from_words(rem)))
    }

    pub fn rem(&self, divisor: &BitPoly) -> Result<BitPoly> {
        self.divrem(divisor).map(|(_, r)| r)
    }

    /// Euclidean gcd. Every nonzero polynomial over GF(2) is monic, so the
    /// result needs no normalisation.
    pub fn gcd(&self, other: &BitPoly) -> Result<BitPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Formal derivative: odd-degree terms drop one degree, even ones vanish.
    pub fn derivative(&self) -> BitPoly {
        const ODD: u64 = 0xAAAA_AAAA_AAAA_AAAA;
        let odd: Vec<u64> = self.words.iter().map(|w| w & ODD).collect();
        Self::from_words(odd).shr(1)
    }

    /// `x^(2^e) mod modulus`, by `e` squarings each reduced with
    /// [`divrem`](Self::divrem).
    pub fn powmod_x(e: usize, modulus: &BitPoly) -> Result<BitPoly> {
        let mut acc = Self::x().rem(modulus)?;
        for _ in 0..e {
            acc = acc.square().rem(modulus)?;
        }
        Ok(acc)
    }

    /// Uppercase hex, most significant digit first, no leading zeros;
    /// the zero polynomial is `"0"`.
    pub fn to_hex(&self) -> String {
        format!("{self:X}")
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        s.parse()
    }
}

/// Words of `floor(src / x^k)`.
fn shr_words(src: &[u64], k: usize) -> Vec<u64> {
    let skip = k / WORD_BITS;
    if skip >= src.len() {
        return Vec::new();
    }
    let sh = k % WORD_BITS;
    let src = &src[skip..];
    (0..src.len())
        .map(|i| {
            let lo = src[i] >> sh;
            let hi = if sh == 0 {
                0
            } else {
                src.get(i + 1).map_or(0, |&w| w << (WORD_BITS - sh))
            };
            lo | hi
        })
        .collect()
}

/// Index of the highest set bit, ignoring trailing zero words.
fn top_bit(words: &[u64]) -> Option<usize> {
    let (i, w) = words.iter().enumerate().rev().find(|(_, &w)| w != 0)?;
    Some(i * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize))
}

/// `dst ^= src * x^shift` on raw word slices; `dst` must be long enough.
fn xor_shifted_into(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    if bs == 0 {
        for (d, s) in dst[ws..].iter_mut().zip(src) {
            *d ^= s;
        }
        return;
    }
    for (i, &s) in src.iter().enumerate() {
        dst[ws + i] ^= s << bs;
        let carry = s >> (WORD_BITS - bs);
        if carry != 0 {
            dst[ws + i + 1] ^= carry;
        }
    }
}

/// Interleaves zeros: bit `i` of `v` lands at bit `2i`.
fn spread_bits(v: u32) -> u64 {
    let mut x = v as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

impl BitXorAssign<&BitPoly> for BitPoly {
    fn bitxor_assign(&mut self, rhs: &BitPoly) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (d, s) in self.words.iter_mut().zip(&rhs.words) {
            *d ^= s;
        }
        self.trim();
    }
}

impl BitXor<&BitPoly> for &BitPoly {
    type Output = BitPoly;

    fn bitxor(self, rhs: &BitPoly) -> BitPoly {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitXor for BitPoly {
    type Output = BitPoly;

    fn bitxor(mut self, rhs: BitPoly) -> BitPoly {
        self ^= &rhs;
        self
    }
}

impl PartialOrd for BitPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by the integer the coefficient string encodes.
impl Ord for BitPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::UpperHex for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some((top, rest)) = self.words.split_last() else {
            return f.write_str("0");
        };
        write!(f, "{top:X}")?;
        for w in rest.iter().rev() {
            write!(f, "{w:016X}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoly(0x{self:X})")
    }
}

/// Sum-of-monomials form, e.g. `x^5 + x^3 + 1`.
impl fmt::Display for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl FromStr for BitPoly {
    type Err = Error;

    /// Accepts upper- or lowercase hex digits, an optional `0x` prefix and
    /// leading zeros.
    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .unwrap_or(s);
        if digits.is_empty() {
            return Err(Error::ParseHex(s.to_string()));
        }
        let mut words = vec![0u64; digits.len().div_ceil(16)];
        for (i, ch) in digits.bytes().rev().enumerate() {
            let v = (ch as char)
                .to_digit(16)
                .ok_or_else(|| Error::ParseHex(s.to_string()))? as u64;
            words[i / 16] |= v << (4 * (i % 16));
        }
        Ok(Self::from_words(words))
    }
}
