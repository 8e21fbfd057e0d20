//! Quadratic fields and orders: fundamental discriminants, fundamental units
//! via continued fractions, the invariants ε(d), μ(d), η(d), the unit index
//! m, and Picard groups of the non-maximal orders ℤ[√d].

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::classgrp;
use crate::{Error, Result};

/// Reject d that is not a square-free integer outside {0, 1}.
pub(crate) fn validate_d(d: i64) -> Result<()> {
    if d == 0 || d == 1 || !arith::is_squarefree(d)? {
        return Err(Error::InvalidD(d));
    }
    Ok(())
}

/// The discriminant of the maximal order of ℚ(√d): d itself when
/// d ≡ 1 (mod 4), else 4d.
pub fn fundamental_discriminant(d: i64) -> Result<i64> {
    validate_d(d)?;
    if d.rem_euclid(4) == 1 {
        Ok(d)
    } else {
        d.checked_mul(4).ok_or(Error::Overflow)
    }
}

/// A quadratic order inside ℚ(√d), described by its discriminant data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadOrderInfo {
    pub d: i64,
    pub fund_disc: i64,
    pub order_disc: i64,
    /// 1 for the maximal order; 2 for ℤ[√d] when d ≡ 1 (mod 4).
    pub conductor: u8,
}

impl QuadOrderInfo {
    /// The maximal order of ℚ(√d).
    pub fn maximal(d: i64) -> Result<Self> {
        let fund = fundamental_discriminant(d)?;
        Ok(QuadOrderInfo {
            d,
            fund_disc: fund,
            order_disc: fund,
            conductor: 1,
        })
    }

    /// The order ℤ[√d], of discriminant 4d; proper iff d ≡ 1 (mod 4).
    pub fn sqrt_order(d: i64) -> Result<Self> {
        let fund = fundamental_discriminant(d)?;
        Ok(QuadOrderInfo {
            d,
            fund_disc: fund,
            order_disc: d.checked_mul(4).ok_or(Error::Overflow)?,
            conductor: if d.rem_euclid(4) == 1 { 2 } else { 1 },
        })
    }
}

/// The fundamental unit `ε = x + yω` of the maximal order of a real
/// quadratic field, in the basis {1, ω} of the norm form, together with its
/// norm and the index m of ℤ[√d]'s unit group inside that of the maximal
/// order (up to roots of unity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitData {
    pub d: i64,
    pub x: BigInt,
    pub y: BigInt,
    pub norm: i8,
    pub unit_index_m: u8,
}

/// State of the continued fraction of the surd `(p + √d) / q`.
struct SurdCf {
    d: i64,
    sqrt_d: i64,
    p: i64,
    q: i64,
}

impl SurdCf {
    fn new(d: i64, p: i64, q: i64) -> Result<Self> {
        let sqrt_d = arith::isqrt(d)?;
        debug_assert!((d as i128 - (p as i128) * (p as i128)) % q as i128 == 0);
        Ok(SurdCf { d, sqrt_d, p, q })
    }

    /// ⌊(p + √d)/q⌋, exact for irrational √d of either sign of q.
    fn floor(&self) -> i64 {
        let num = self.p + self.sqrt_d;
        if self.q > 0 {
            num.div_euclid(self.q)
        } else {
            -(num.div_euclid(-self.q) + 1)
        }
    }

    /// Emit the next partial quotient and advance the state.
    fn next_quotient(&mut self) -> Result<i64> {
        let a = self.floor();
        let p2 = (a as i128) * (self.q as i128) - self.p as i128;
        let q2 = (self.d as i128 - p2 * p2) / self.q as i128;
        if q2 == 0 {
            return Err(Error::Internal("surd expansion terminated: square input"));
        }
        self.p = i64::try_from(p2).map_err(|_| Error::Overflow)?;
        self.q = i64::try_from(q2).map_err(|_| Error::Overflow)?;
        Ok(a)
    }
}

const UNIT_STEP_CAP: usize = 1_000_000;

/// The fundamental unit of the maximal order of ℚ(√d), d > 1 square-free.
///
/// Expands ω = (1+√d)/2 (d ≡ 1 mod 4) or √d by continued fractions and
/// returns at the first convergent whose norm form value is ±1; that
/// convergent is the smallest unit exceeding 1.
pub fn fundamental_unit(d: i64) -> Result<UnitData> {
    validate_d(d)?;
    if d < 2 {
        return Err(Error::InvalidD(d));
    }
    let one_mod4 = d.rem_euclid(4) == 1;
    let mut cf = if one_mod4 {
        SurdCf::new(d, 1, 2)?
    } else {
        SurdCf::new(d, 0, 1)?
    };
    // N(p − qω̄) as a function of the convergent (p, q).
    let c_quarter = BigInt::from(if one_mod4 { (d - 1) / 4 } else { 0 });
    let big_d = BigInt::from(d);
    let norm_of = |p: &BigInt, q: &BigInt| -> BigInt {
        if one_mod4 {
            p * p - p * q - q * q * &c_quarter
        } else {
            p * p - q * q * &big_d
        }
    };

    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_cur, mut q_cur) = (BigInt::from(cf.next_quotient()?), BigInt::one());
    for _ in 0..UNIT_STEP_CAP {
        let f = norm_of(&p_cur, &q_cur);
        if f.magnitude().is_one() {
            let norm = if f.is_negative() { -1i8 } else { 1 };
            let (x, y) = if one_mod4 {
                (&p_cur - &q_cur, q_cur.clone())
            } else {
                (p_cur.clone(), q_cur.clone())
            };
            let unit_index_m = if !one_mod4 || y.is_even() { 1 } else { 3 };
            debug_assert!(unit_index_m == 1 || d.rem_euclid(8) == 5);
            return Ok(UnitData {
                d,
                x,
                y,
                norm,
                unit_index_m,
            });
        }
        let a = BigInt::from(cf.next_quotient()?);
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        (p_prev, q_prev) = (p_cur, q_cur);
        (p_cur, q_cur) = (p_next, q_next);
    }
    Err(Error::Internal("fundamental unit search exceeded step cap"))
}

/// ε(d) = 1 if d < 0, or if d > 0 and the unit norms are all +1; else 0.
pub fn epsilon_invariant(d: i64) -> Result<u8> {
    validate_d(d)?;
    if d < 0 {
        return Ok(1);
    }
    Ok(if fundamental_unit(d)?.norm == 1 { 1 } else { 0 })
}

/// μ(d) = 1 for d < 0, 0 for d > 0.
pub fn mu_invariant(d: i64) -> Result<u8> {
    validate_d(d)?;
    Ok(if d < 0 { 1 } else { 0 })
}

/// η(d) for d ≡ 3 (mod 4): equals 1 iff d ≡ 3 (mod 8) and either d > 3, or
/// d < 0 and the fundamental unit of ℚ(√−d) already lies in ℤ[√−d].
pub fn eta_invariant(d: i64) -> Result<u8> {
    validate_d(d)?;
    if d.rem_euclid(4) != 3 {
        return Err(Error::WrongResidue(d));
    }
    if d.rem_euclid(8) != 3 {
        return Ok(0);
    }
    if d > 3 {
        return Ok(1);
    }
    if d == 3 {
        return Ok(0);
    }
    // d < 0: membership of the unit is exactly unit_index_m = 1.
    Ok(if fundamental_unit(-d)?.unit_index_m == 1 {
        1
    } else {
        0
    })
}

/// The wide and narrow class numbers (h, h⁺) of ℚ(√d).
pub fn narrow_class_number(d: i64) -> Result<(u64, u64)> {
    validate_d(d)?;
    let disc = fundamental_discriminant(d)?;
    let h_plus = classgrp::class_group(disc, true)?.h();
    let h = if d < 0 {
        h_plus
    } else {
        classgrp::class_group(disc, false)?.h()
    };
    if h_plus != h && h_plus != 2 * h {
        return Err(Error::Internal("narrow class number is neither h nor 2h"));
    }
    Ok((h, h_plus))
}

/// |Pic ℤ[√d]| for d ≡ 1 (mod 4), both by enumerating classes of
/// discriminant 4d and by the closed form 3^{η(−d)}·h_d; the two must agree.
pub fn picard_nonmaximal(d: i64) -> Result<(u64, u64)> {
    validate_d(d)?;
    if d.rem_euclid(4) != 1 {
        return Err(Error::InvalidD(d));
    }
    let order_disc = d.checked_mul(4).ok_or(Error::Overflow)?;
    let order = classgrp::class_group(order_disc, false)?.h();
    let eta = eta_invariant(-d)?;
    let (h, _) = narrow_class_number(d)?;
    let via_formula = 3u64.pow(eta as u32) * h;
    if order != via_formula {
        return Err(Error::FormulaMismatch {
            context: "order Picard group",
            expected: via_formula,
            actual: order,
        });
    }
    Ok((order, via_formula))
}

/// The distinct primes dividing the fundamental discriminant of ℚ(√d).
pub fn ramified_primes(d: i64) -> Result<Vec<u64>> {
    let disc = fundamental_discriminant(d)?;
    Ok(arith::factorize(disc)?.primes().collect())
}
