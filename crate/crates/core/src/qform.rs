//! Binary integral quadratic forms `(a, b, c)` ↔ `ax² + bxy + cy²`:
//! construction of norm forms, Gauss reduction (definite and indefinite),
//! reduction cycles, proper equivalence, opposites and negation.

use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::{Error, Result};

/// A binary integral quadratic form `ax² + bxy + cy²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Definiteness of a nondegenerate form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    PosDef,
    NegDef,
    Indefinite,
}

impl Form {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Form { a, b, c }
    }

    /// The discriminant `b² − 4ac`, exact in 128 bits for coefficients
    /// within [`Form::COEFF_LIMIT`]; every fallible operation enforces that
    /// bound up front.
    pub fn disc(&self) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        b * b - 4 * a * c
    }

    /// Coefficient bound (2⁶²) under which `disc` and `eval` at small
    /// arguments cannot overflow their 128-bit intermediates.
    pub const COEFF_LIMIT: i64 = 1 << 62;

    pub(crate) fn check_width(&self) -> Result<()> {
        let limit = Self::COEFF_LIMIT as u64;
        if self.a.unsigned_abs() >= limit
            || self.b.unsigned_abs() >= limit
            || self.c.unsigned_abs() >= limit
        {
            return Err(Error::Overflow);
        }
        Ok(())
    }

    /// gcd of the coefficients.
    pub fn content(&self) -> i64 {
        arith::gcd3(self.a, self.b, self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// The opposite form `(a, −b, c)`; its class is the composition inverse.
    pub fn opposite(&self) -> Form {
        Form::new(self.a, -self.b, self.c)
    }

    /// `(−a, −b, −c)`; swaps positive and negative definite.
    pub fn negate(&self) -> Form {
        Form::new(-self.a, -self.b, -self.c)
    }

    /// Evaluate the form at `(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> i128 {
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (x, y) = (x as i128, y as i128);
        a * x * x + b * x * y + c * y * y
    }

    /// Definiteness; errors on degenerate (square or zero) discriminants.
    pub fn kind(&self) -> Result<FormKind> {
        self.check_width()?;
        let d = self.disc();
        if d < 0 {
            Ok(if self.a > 0 {
                FormKind::PosDef
            } else {
                FormKind::NegDef
            })
        } else if arith::is_perfect_square(d) {
            Err(Error::SquareDiscriminant)
        } else {
            Ok(FormKind::Indefinite)
        }
    }

    /// Change of variables: the form `q ∘ A`, i.e. `AᵗB_q A` on Gram matrices.
    pub fn transform(&self, m: &Mat2) -> Result<Form> {
        self.check_width()?;
        m.check_width()?;
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let [[p, q], [r, s]] = m.entries;
        let (p, q, r, s) = (p as i128, q as i128, r as i128, s as i128);
        let a2 = a * p * p + b * p * r + c * r * r;
        let b2 = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
        let c2 = a * q * q + b * q * s + c * s * s;
        form_from_i128(a2, b2, c2)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (coeff, mon) in [(self.a, "x^2"), (self.b, "xy"), (self.c, "y^2")] {
            if coeff == 0 {
                continue;
            }
            if wrote {
                write!(f, "{}", if coeff < 0 { "-" } else { "+" })?;
                write!(f, "{}{}", coeff.unsigned_abs(), mon)?;
            } else {
                write!(f, "{}{}", coeff, mon)?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

fn form_from_i128(a: i128, b: i128, c: i128) -> Result<Form> {
    Ok(Form::new(narrow(a)?, narrow(b)?, narrow(c)?))
}

/// A 2×2 integer matrix acting on forms by substitution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mat2 {
    pub entries: [[i64; 2]; 2],
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 {
        entries: [[1, 0], [0, 1]],
    };

    pub const fn new(p: i64, q: i64, r: i64, s: i64) -> Self {
        Mat2 {
            entries: [[p, q], [r, s]],
        }
    }

    pub fn det(&self) -> i128 {
        let [[p, q], [r, s]] = self.entries;
        p as i128 * s as i128 - q as i128 * r as i128
    }

    /// Entry bound (2³¹) keeping `transform` intermediates inside 128 bits.
    pub(crate) fn check_width(&self) -> Result<()> {
        let limit = 1u64 << 31;
        if self
            .entries
            .iter()
            .flatten()
            .any(|e| e.unsigned_abs() >= limit)
        {
            return Err(Error::Overflow);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Mat2) -> Result<Mat2> {
        let [[a, b], [c, d]] = self.entries;
        let [[e, f], [g, h]] = other.entries;
        let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
        let (e, f, g, h) = (e as i128, f as i128, g as i128, h as i128);
        Ok(Mat2::new(
            narrow(a * e + b * g)?,
            narrow(a * f + b * h)?,
            narrow(c * e + d * g)?,
            narrow(c * f + d * h)?,
        ))
    }
}

/// The norm form of the maximal order of `ℚ(√d)`:
/// `(1, 1, (1−d)/4)` when `d ≡ 1 (mod 4)`, else `(1, 0, −d)`.
pub fn norm_form(d: i64) -> Result<Form> {
    crate::orders::validate_d(d)?;
    if d.rem_euclid(4) == 1 {
        Ok(Form::new(1, 1, (1 - d) / 4))
    } else {
        Ok(Form::new(1, 0, -d))
    }
}

/// Ordering key used to pick canonical cycle members and sort class lists.
pub(crate) fn form_key(f: &Form) -> (i64, i64, i64) {
    (f.a.abs(), f.a, f.b)
}

// ---------------------------------------------------------------------------
// Definite reduction
// ---------------------------------------------------------------------------

/// True iff a definite form is reduced: for positive definite,
/// `−a < b ≤ a ≤ c` with `b ≥ 0` when `a = c`; negative definite mirrors it.
pub fn is_reduced_definite(f: &Form) -> Result<bool> {
    if f.disc() >= 0 {
        return Err(Error::NotDefinite);
    }
    let g = if f.a < 0 { f.negate() } else { *f };
    Ok(-g.a < g.b && g.b <= g.a && g.a <= g.c && (g.a != g.c || g.b >= 0))
}

/// Gauss reduction of a definite form to its unique reduced representative.
pub fn reduce_definite(f: &Form) -> Result<Form> {
    reduce_definite_with_witness(f).map(|(g, _)| g)
}

/// Reduction together with the unimodular witness `A` with `f ∘ A = reduced`.
pub fn reduce_definite_with_witness(f: &Form) -> Result<(Form, Mat2)> {
    f.check_width()?;
    if f.disc() >= 0 {
        return Err(Error::NotDefinite);
    }
    if f.a < 0 {
        // Negative definite: reduce the negation with the same witness,
        // since (−q) ∘ A = −(q ∘ A).
        let (g, w) = reduce_posdef(&f.negate())?;
        return Ok((g.negate(), w));
    }
    reduce_posdef(f)
}

fn reduce_posdef(f: &Form) -> Result<(Form, Mat2)> {
    debug_assert!(f.a > 0 && f.disc() < 0);
    let d = f.disc();
    let (mut a, mut b, mut c) = (f.a as i128, f.b as i128, f.c as i128);
    let mut w = Mat2::IDENTITY;
    loop {
        // Translate b into (−a, a].
        let r = (a - b).rem_euclid(2 * a);
        let b2 = a - r;
        if b2 != b {
            let k = narrow((b2 - b) / (2 * a))?;
            w = w.mul(&Mat2::new(1, k, 0, 1))?;
            b = b2;
            c = (b * b - d) / (4 * a);
        }
        if a > c || (a == c && b < 0) {
            // Swap outer coefficients: (a, b, c) → (c, −b, a).
            w = w.mul(&Mat2::new(0, -1, 1, 0))?;
            (a, c) = (c, a);
            b = -b;
        } else {
            break;
        }
    }
    let g = form_from_i128(a, b, c)?;
    debug_assert_eq!(f.transform(&w).ok(), Some(g));
    Ok((g, w))
}

// ---------------------------------------------------------------------------
// Indefinite reduction
// ---------------------------------------------------------------------------

fn indefinite_disc(f: &Form) -> Result<(i128, i128)> {
    f.check_width()?;
    let d = f.disc();
    if d < 0 {
        return Err(Error::NotIndefinite);
    }
    if arith::is_perfect_square(d) {
        return Err(Error::SquareDiscriminant);
    }
    Ok((d, arith::isqrt_i128(d)?))
}

/// True iff an indefinite form is reduced: `0 < b < √D` and
/// `√D − b < 2|a| < √D + b`, tested exactly in integers.
pub fn is_reduced_indefinite(f: &Form) -> Result<bool> {
    let (d, _) = indefinite_disc(f)?;
    Ok(indef_reduced(f.a as i128, f.b as i128, d))
}

fn indef_reduced(a: i128, b: i128, d: i128) -> bool {
    if b <= 0 || b * b >= d {
        return false;
    }
    let t = 2 * a.abs();
    // √D − b < 2|a|  ⟺  (2|a| + b)² > D, and 2|a| < √D + b  ⟺  2|a| − b < √D.
    (t + b) * (t + b) > d && (t - b <= 0 || (t - b) * (t - b) < d)
}

/// One step of the standard ρ reduction operator for indefinite forms.
fn rho(b: i128, c: i128, d: i128, sqrt_d: i128) -> (i128, i128, i128) {
    // (a, b, c) → (c, b', c') with b' ≡ −b (mod 2|c|) in the reduction window.
    let (a2, b2) = (c, -b);
    let t = 2 * a2.abs();
    let lo = if a2.abs() <= sqrt_d {
        sqrt_d - t
    } else {
        -a2.abs()
    };
    let b3 = lo + 1 + (b2 - lo - 1).rem_euclid(t);
    let c3 = (b3 * b3 - d) / (4 * a2);
    (a2, b3, c3)
}

/// The full cycle of reduced forms properly equivalent to `f`, returned in
/// ρ-traversal order starting from the lexicographically least member under
/// the `(|a|, a, b)` ordering.
pub fn reduce_indefinite_cycle(f: &Form) -> Result<Vec<Form>> {
    let (d, sqrt_d) = indefinite_disc(f)?;
    let (mut a, mut b, mut c) = (f.a as i128, f.b as i128, f.c as i128);
    while !indef_reduced(a, b, d) {
        (a, b, c) = rho(b, c, d, sqrt_d);
    }
    let start = (a, b, c);
    let mut cycle = Vec::new();
    loop {
        cycle.push(form_from_i128(a, b, c)?);
        (a, b, c) = rho(b, c, d, sqrt_d);
        if (a, b, c) == start {
            break;
        }
    }
    let least = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, g)| form_key(g))
        .map(|(i, _)| i)
        .unwrap_or(0);
    cycle.rotate_left(least);
    Ok(cycle)
}

/// The canonical representative of the proper class of `f`: the unique
/// reduced form (definite) or the least member of the reduction cycle.
pub fn canonical_form(f: &Form) -> Result<Form> {
    match f.kind()? {
        FormKind::PosDef | FormKind::NegDef => reduce_definite(f),
        FormKind::Indefinite => Ok(reduce_indefinite_cycle(f)?[0]),
    }
}

/// Decide proper (determinant +1) equivalence over ℤ.
pub fn equivalent_proper(f: &Form, g: &Form) -> Result<bool> {
    f.check_width()?;
    g.check_width()?;
    if f.disc() != g.disc() {
        return Err(Error::DiscMismatch);
    }
    Ok(canonical_form(f)? == canonical_form(g)?)
}

// ---------------------------------------------------------------------------
// Form classes
// ---------------------------------------------------------------------------

/// A proper equivalence class, canonicalized by its reduced representative
/// (definite) or by the least member of its reduction cycle (indefinite).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormClass {
    disc: i64,
    kind: FormKind,
    canonical: Form,
    cycle: Vec<Form>,
}

impl FormClass {
    /// Build the class of `f`; the discriminant must be nonzero, nonsquare
    /// and representable in 64 bits.
    pub fn of(f: Form) -> Result<FormClass> {
        let kind = f.kind()?;
        let disc = narrow(f.disc())?;
        match kind {
            FormKind::PosDef | FormKind::NegDef => Ok(FormClass {
                disc,
                kind,
                canonical: reduce_definite(&f)?,
                cycle: Vec::new(),
            }),
            FormKind::Indefinite => {
                let cycle = reduce_indefinite_cycle(&f)?;
                Ok(FormClass {
                    disc,
                    kind,
                    canonical: cycle[0],
                    cycle,
                })
            }
        }
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn canonical(&self) -> Form {
        self.canonical
    }

    /// The reduction cycle; empty for definite classes.
    pub fn cycle(&self) -> &[Form] {
        &self.cycle
    }

    pub fn is_primitive(&self) -> bool {
        self.canonical.is_primitive()
    }

    pub fn opposite(&self) -> Result<FormClass> {
        FormClass::of(self.canonical.opposite())
    }

    pub fn negate(&self) -> Result<FormClass> {
        FormClass::of(self.canonical.negate())
    }

    /// Sort key `(|a|, a, b)` of the canonical representative.
    pub fn sort_key(&self) -> (i64, i64, i64) {
        form_key(&self.canonical)
    }

    /// A cycle member with positive leading coefficient, suitable as a
    /// composition representative. Reduced indefinite cycles alternate the
    /// sign of `a`, so one always exists; definite classes must be positive.
    pub(crate) fn composition_rep(&self) -> Result<Form> {
        match self.kind {
            FormKind::PosDef => Ok(self.canonical),
            FormKind::NegDef => Err(Error::NegativeDefiniteClass),
            FormKind::Indefinite => {
                self.cycle
                    .iter()
                    .copied()
                    .find(|g| g.a > 0)
                    .ok_or(Error::Internal(
                        "indefinite cycle with no positive leading coefficient",
                    ))
            }
        }
    }
}
