//! The pentanomial family `x^(2b+c) + x^(b+c) + x^b + x^c + 1`, `b > c > 0`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2x::{BitPoly, SparseModulus};

/// Which fast reducer handles a shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subfamily {
    /// `c = 1`: two reduction steps.
    CEqualsOne,
    /// `c > 1`, `b != 2c`: three reduction steps.
    General,
    /// `b = 2c`, `c > 1`: `x^(5c) + x^(3c) + x^(2c) + x^c + 1`.
    AlmostEquallySpaced,
}

impl Subfamily {
    pub fn name(self) -> &'static str {
        match self {
            Subfamily::CEqualsOne => "c_equals_1",
            Subfamily::General => "general",
            Subfamily::AlmostEquallySpaced => "almost_equally_spaced",
        }
    }
}

impl fmt::Display for Subfamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated pair `(b, c)` with `b > c > 0`.
///
/// `m = 2b + c` is the degree and `a = b + c` the second exponent. A shape
/// with `b = 2c` and `c = 1` (degree 5) is classed as
/// [`Subfamily::CEqualsOne`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PentaShape {
    b: usize,
    c: usize,
}

impl PentaShape {
    pub fn new(b: i64, c: i64) -> Result<Self> {
        let invalid = |constraint| Error::InvalidShape { b, c, constraint };
        if c <= 0 {
            return Err(invalid("c > 0 violated"));
        }
        if b <= c {
            return Err(invalid("b > c violated"));
        }
        Ok(Self {
            b: b as usize,
            c: c as usize,
        })
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn m(&self) -> usize {
        2 * self.b + self.c
    }

    pub fn a(&self) -> usize {
        self.b + self.c
    }

    pub fn subfamily(&self) -> Subfamily {
        if self.c == 1 {
            Subfamily::CEqualsOne
        } else if self.b == 2 * self.c {
            Subfamily::AlmostEquallySpaced
        } else {
            Subfamily::General
        }
    }

    /// `b == 2c`, regardless of how the shape is dispatched.
    pub fn is_b_twice_c(&self) -> bool {
        self.b == 2 * self.c
    }

    /// Exponents of the five terms, ascending: `0, c, b, b + c, 2b + c`.
    pub fn exponents(&self) -> [usize; 5] {
        [0, self.c, self.b, self.a(), self.m()]
    }

    pub fn to_poly(&self) -> BitPoly {
        BitPoly::from_exponents(&self.exponents())
    }

    /// Largest degree the reducers accept: `2m - 2`.
    pub fn max_input_degree(&self) -> usize {
        2 * self.m() - 2
    }

    pub fn reduction_steps(&self) -> StepCounts {
        StepCounts::for_shape(self)
    }

    pub fn is_irreducible(&self) -> bool {
        is_irreducible(self)
    }

    /// Every valid shape of degree `m`, ascending in `b`.
    pub fn all_of_degree(m: usize) -> impl Iterator<Item = PentaShape> {
        // b > c = m - 2b  <=>  3b > m;  c >= 1  <=>  2b <= m - 1
        let lo = m / 3 + 1;
        let hi = m.saturating_sub(1) / 2;
        (lo..=hi).map(move |b| PentaShape { b, c: m - 2 * b })
    }
}

impl fmt::Display for PentaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.b, self.c)
    }
}

impl FromStr for PentaShape {
    type Err = Error;

    /// `"b,c"` in decimal.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseShape(s.to_string());
        let (b, c) = s.split_once(',').ok_or_else(bad)?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        let c: i64 = c.trim().parse().map_err(|_| bad())?;
        PentaShape::new(b, c)
    }
}

/// Maximum number of reduction steps attributable to the exponents
/// `b + c`, `b` and `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepCounts {
    pub k_a: usize,
    pub k_b: usize,
    pub k_c: usize,
}

/// `floor((m - 2) / (m - e)) + 1`: how many substitution passes the term
/// `x^e` of a degree-`m` pentanomial can force on a degree `2m - 2` input.
pub fn steps_for_exponent(m: usize, e: usize) -> usize {
    assert!(e < m && m >= 2);
    (m - 2) / (m - e) + 1
}

impl StepCounts {
    pub fn for_shape(shape: &PentaShape) -> Self {
        let m = shape.m();
        let counts = Self {
            k_a: steps_for_exponent(m, shape.a()),
            k_b: steps_for_exponent(m, shape.b()),
            k_c: steps_for_exponent(m, shape.c()),
        };
        debug_assert_eq!(counts, Self::by_cases(shape));
        counts
    }

    /// The closed case table: `k_a` is 2 or 3, `k_b` is 2, `k_c` is 1 or 2,
    /// depending only on whether `c = 1`.
    pub fn by_cases(shape: &PentaShape) -> Self {
        if shape.c() == 1 {
            Self {
                k_a: 2,
                k_b: 2,
                k_c: 1,
            }
        } else {
            Self {
                k_a: 3,
                k_b: 2,
                k_c: 2,
            }
        }
    }
}

/// Rabin's criterion for the family member `shape`: with `f` of degree
/// `m`, `f` is irreducible iff `x^(2^m) = x mod f` and
/// `gcd(x^(2^(m/p)) - x, f) = 1` for every prime `p | m`.
pub fn is_irreducible(shape: &PentaShape) -> bool {
    let modulus = SparseModulus::new(shape.to_poly()).expect("family polynomials are nonzero");
    let m = shape.m();
    if sieve::has_small_factor(shape) {
        return false;
    }
    rabin(&modulus, m)
}

/// Rabin's criterion for an arbitrary polynomial of degree >= 1.
pub fn is_irreducible_poly(f: &BitPoly) -> bool {
    let Some(m) = f.degree().finite().filter(|&m| m >= 1) else {
        return false;
    };
    let modulus = SparseModulus::new(f.clone()).expect("nonzero");
    rabin(&modulus, m)
}

fn rabin(modulus: &SparseModulus, m: usize) -> bool {
    let f = modulus.poly();
    let x = BitPoly::x();
    let mut checkpoints: Vec<usize> = prime_factors(m).into_iter().map(|p| m / p).collect();
    checkpoints.sort_unstable();
    let mut next = checkpoints.iter().peekable();
    let mut acc = modulus.reduce(&x);
    for i in 1..=m {
        acc = modulus.square(&acc);
        while next.peek() == Some(&&i) {
            next.next();
            let g = (&acc ^ &x).gcd(f).expect("f is nonzero");
            if !g.is_one() {
                return false;
            }
        }
    }
    acc == modulus.reduce(&x)
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility by trial division with every polynomial of degree
/// `1..=m/2`. Exponential in `m`; a reference for small degrees only.
pub fn is_irreducible_by_trial_division(f: &BitPoly) -> bool {
    let Some(m) = f.degree().finite().filter(|&m| m >= 1) else {
        return false;
    };
    for d in 1..=m / 2 {
        for low in 0u64..(1u64 << d) {
            let mut words = vec![low];
            words[0] |= 1 << d;
            let g = BitPoly::from_words(words);
            if f.rem(&g).expect("g is nonzero").is_zero() {
                return false;
            }
        }
    }
    true
}

/// All irreducible family members with `5 <= m <= max_m`, ordered by
/// `(m, b)`. Candidates are tested in parallel; the order is fixed.
pub fn enumerate(max_m: usize) -> Vec<PentaShape> {
    let candidates: Vec<PentaShape> = (5..=max_m).flat_map(PentaShape::all_of_degree).collect();
    candidates.into_par_iter().filter(is_irreducible).collect()
}

/// Quick rejection by the irreducible factors of degree `<= 10`.
///
/// For an irreducible `g` the powers of `x` modulo `g` are periodic, so
/// `f mod g` for a five-term `f` is the XOR of five table lookups.
mod sieve {
    use std::sync::OnceLock;

    use super::PentaShape;

    const MAX_DEGREE: u32 = 10;

    struct SmallFactor {
        degree: usize,
        /// `x^k mod g` for `k` in `0..order`.
        powers: Vec<u16>,
    }

    fn mulmod_x(v: u16, g: u16, degree: u32) -> u16 {
        let shifted = (v as u32) << 1;
        if shifted >> degree & 1 == 1 {
            (shifted ^ g as u32) as u16
        } else {
            shifted as u16
        }
    }

    fn small_irreducible(g: u16, degree: u32) -> bool {
        // trial division by every polynomial of degree 1..=degree/2
        (1..=degree / 2).all(|d| {
            ((1u16 << d)..(1u16 << (d + 1))).all(|h| {
                let mut r = g as u32;
                for shift in (0..=degree - d).rev() {
                    if r >> (shift + d) & 1 == 1 {
                        r ^= (h as u32) << shift;
                    }
                }
                r != 0
            })
        })
    }

    fn table() -> &'static [SmallFactor] {
        static TABLE: OnceLock<Vec<SmallFactor>> = OnceLock::new();
        TABLE.get_or_init(|| {
            let mut out = Vec::new();
            for degree in 1..=MAX_DEGREE {
                for g in (1u16 << degree)..(1u16 << (degree + 1)) {
                    if g & 1 == 0 || !small_irreducible(g, degree) {
                        continue;
                    }
                    let mut powers = vec![1u16];
                    let mut v = mulmod_x(1, g, degree);
                    while v != 1 {
                        powers.push(v);
                        v = mulmod_x(v, g, degree);
                    }
                    out.push(SmallFactor {
                        degree: degree as usize,
                        powers,
                    });
                }
            }
            out
        })
    }

    /// True when some irreducible `g` with `deg g < m`, `deg g <= 10`
    /// divides the shape's polynomial.
    pub(super) fn has_small_factor(shape: &PentaShape) -> bool {
        let exps = shape.exponents();
        table().iter().filter(|g| g.degree < shape.m()).any(|g| {
            let ord = g.powers.len();
            exps.iter().fold(0u16, |acc, &e| acc ^ g.powers[e % ord]) == 0
        })
    }

}
