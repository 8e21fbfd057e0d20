//! Form class groups: Gauss composition of classes, narrow and wide groups,
//! genus characters, the principal genus and the duplication theorem.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::qform::{canonical_form, reduce_indefinite_cycle, Form, FormClass, FormKind};
use crate::{Error, Result};

/// Reject integers that are not usable discriminants.
pub(crate) fn validate_disc(disc: i64) -> Result<()> {
    if !is_valid_discriminant(disc) {
        return Err(Error::InvalidDiscriminant(disc));
    }
    Ok(())
}

/// True iff `disc` is ≡ 0 or 1 (mod 4), nonzero and not a perfect square.
pub fn is_valid_discriminant(disc: i64) -> bool {
    disc != 0 && matches!(disc.rem_euclid(4), 0 | 1) && !arith::is_perfect_square(disc as i128)
}

/// The principal form of a discriminant: `(1, 0, −D/4)` for D ≡ 0 (mod 4),
/// `(1, 1, (1−D)/4)` for D ≡ 1 (mod 4).
pub fn principal_form(disc: i64) -> Result<Form> {
    validate_disc(disc)?;
    if disc.rem_euclid(4) == 0 {
        Ok(Form::new(1, 0, -(disc / 4)))
    } else {
        Ok(Form::new(1, 1, (1 - disc) / 4))
    }
}

/// Dirichlet composition of two primitive forms of the same discriminant,
/// returned as the canonical representative of the composite class.
pub fn compose_forms(f: &Form, g: &Form) -> Result<Form> {
    f.check_width()?;
    g.check_width()?;
    let d = f.disc();
    if d != g.disc() {
        return Err(Error::DiscMismatch);
    }
    if !f.is_primitive() || !g.is_primitive() {
        return Err(Error::ImprimitiveForm);
    }
    let (a1, b1, c1) = (f.a as i128, f.b as i128, f.c as i128);
    let (a2, b2, c2) = (g.a as i128, g.b as i128, g.c as i128);
    debug_assert!(a1 > 0 && a2 > 0);
    let _ = c1;
    let s = (b1 + b2) / 2;
    let n = (b1 - b2) / 2;
    let (e, _, v, w) = arith::ext_gcd3(a1, a2, s);
    let a3 = (a1 / e) * (a2 / e);
    let b3 = b2 + 2 * (a2 / e) * (v * n - w * c2);
    // Normalize the middle coefficient into (−a3, a3] before reducing.
    let b3 = {
        let r = b3.rem_euclid(2 * a3);
        if r > a3 {
            r - 2 * a3
        } else {
            r
        }
    };
    let c3 = (b3 * b3 - d) / (4 * a3);
    let raw = Form::new(
        i64::try_from(a3).map_err(|_| Error::Overflow)?,
        i64::try_from(b3).map_err(|_| Error::Overflow)?,
        i64::try_from(c3).map_err(|_| Error::Overflow)?,
    );
    debug_assert_eq!(raw.disc(), d);
    canonical_form(&raw)
}

/// Gauss composition at the class level. Negative definite classes are not
/// group elements and are rejected.
pub fn compose(f: &FormClass, g: &FormClass) -> Result<FormClass> {
    if f.disc() != g.disc() {
        return Err(Error::DiscMismatch);
    }
    let rf = f.composition_rep()?;
    let rg = g.composition_rep()?;
    FormClass::of(compose_forms(&rf, &rg)?)
}

// ---------------------------------------------------------------------------
// Enumeration of reduced primitive forms
// ---------------------------------------------------------------------------

fn divisors(n: i64) -> Result<Vec<i64>> {
    let f = arith::factorize(n)?;
    let mut out = vec![1i64];
    for (p, e) in f.factors {
        let len = out.len();
        let mut pk = 1i64;
        for _ in 0..e {
            pk = pk.checked_mul(p as i64).ok_or(Error::Overflow)?;
            for i in 0..len {
                out.push(out[i].checked_mul(pk).ok_or(Error::Overflow)?);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// All reduced positive definite primitive forms of a discriminant D < 0.
fn enumerate_posdef_reduced(disc: i64) -> Result<Vec<Form>> {
    debug_assert!(disc < 0);
    let mut out = Vec::new();
    let mut b = disc.rem_euclid(2);
    while 3 * b * b <= -disc {
        let m = (b * b - disc) / 4;
        let mut a = b.max(1);
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                if arith::gcd3(a, b, c) == 1 {
                    out.push(Form::new(a, b, c));
                    if b > 0 && b < a && a < c {
                        out.push(Form::new(a, -b, c));
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort();
    Ok(out)
}

/// All reduced (indefinite) primitive forms of a discriminant D > 0.
fn enumerate_indef_reduced(disc: i64) -> Result<Vec<Form>> {
    debug_assert!(disc > 0);
    let sqrt_d = arith::isqrt(disc)?;
    let d128 = disc as i128;
    let mut out = Vec::new();
    let mut b = 2 - disc.rem_euclid(2);
    while b <= sqrt_d {
        let m = (disc - b * b) / 4;
        for a_abs in divisors(m)? {
            // Reduction window: √D − b < 2|a| < √D + b, tested exactly.
            let t = 2 * a_abs as i128;
            let b128 = b as i128;
            if (t + b128) * (t + b128) > d128 && (t - b128 <= 0 || (t - b128) * (t - b128) < d128) {
                let c_abs = m / a_abs;
                if arith::gcd3(a_abs, b, c_abs) == 1 {
                    out.push(Form::new(a_abs, b, -c_abs));
                    out.push(Form::new(-a_abs, b, c_abs));
                }
            }
        }
        b += 2;
    }
    out.sort();
    Ok(out)
}

// ---------------------------------------------------------------------------
// Class group data
// ---------------------------------------------------------------------------

/// The form class group of a discriminant: explicit classes, the full
/// composition table, the identity index and the abelian invariant factors.
#[derive(Debug, Clone)]
pub struct ClassGroupData {
    pub disc: i64,
    pub narrow: bool,
    pub classes: Vec<FormClass>,
    pub compose_table: Vec<Vec<usize>>,
    pub principal: usize,
    /// Invariant factors d₁ | d₂ | …, whose product is the class number.
    pub structure: Vec<u64>,
}

impl ClassGroupData {
    pub fn h(&self) -> u64 {
        self.classes.len() as u64
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.compose_table[i][j]
    }

    pub fn pow(&self, i: usize, e: u64) -> usize {
        let mut acc = self.principal;
        let mut base = i;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, i: usize) -> usize {
        (0..self.classes.len())
            .find(|&j| self.mul(i, j) == self.principal)
            .expect("every class has an inverse")
    }

    pub fn order_of(&self, i: usize) -> u64 {
        let mut cur = i;
        let mut n = 1u64;
        while cur != self.principal {
            cur = self.mul(cur, i);
            n += 1;
        }
        n
    }

    /// Index of the class containing `f`, if its discriminant matches.
    pub fn index_of(&self, f: &Form) -> Option<usize> {
        let canon = canonical_form(f).ok()?;
        self.classes.iter().position(|c| c.canonical() == canon)
    }

    /// Sorted, deduplicated list of the square classes.
    pub fn squares(&self) -> Vec<usize> {
        let mut sq: Vec<usize> = (0..self.classes.len()).map(|i| self.mul(i, i)).collect();
        sq.sort_unstable();
        sq.dedup();
        sq
    }

    /// Number of pairs {g, g⁻¹} with g ≠ g⁻¹; the inverse of a class is its
    /// opposite, so these are exactly the opposite pairs inside the group.
    pub fn opposite_pairs(&self) -> u64 {
        let two_torsion = (0..self.classes.len())
            .filter(|&i| self.mul(i, i) == self.principal)
            .count() as u64;
        (self.h() - two_torsion) / 2
    }
}

/// Build the class group of a discriminant.
///
/// For D < 0 the classes are the reduced positive definite primitive forms
/// (the `narrow` flag is recorded but makes no difference). For D > 0,
/// `narrow = true` yields the proper classes (reduction cycles); `narrow =
/// false` quotients by the class of the negated principal form, which is
/// trivial exactly when the order has a unit of norm −1.
pub fn class_group(disc: i64, narrow: bool) -> Result<ClassGroupData> {
    validate_disc(disc)?;
    let classes: Vec<FormClass> = if disc < 0 {
        enumerate_posdef_reduced(disc)?
            .into_iter()
            .map(FormClass::of)
            .collect::<Result<Vec<_>>>()?
    } else {
        let mut reduced = enumerate_indef_reduced(disc)?;
        let mut cycles = Vec::new();
        while let Some(&f) = reduced.first() {
            let cycle = reduce_indefinite_cycle(&f)?;
            for g in &cycle {
                match reduced.binary_search(g) {
                    Ok(i) => {
                        reduced.remove(i);
                    }
                    Err(_) => {
                        return Err(Error::Internal(
                            "reduction cycle left the enumerated reduced forms",
                        ))
                    }
                }
            }
            cycles.push(FormClass::of(f)?);
        }
        cycles
    };
    let mut classes = classes;
    classes.sort_by_key(|c| c.sort_key());
    classes.dedup();

    let index: BTreeMap<Form, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.canonical(), i))
        .collect();
    let lookup = |f: &Form| -> Result<usize> {
        index
            .get(f)
            .copied()
            .ok_or(Error::Internal("composite class missing from enumeration"))
    };

    let n = classes.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in i..n {
            let h = compose(&classes[i], &classes[j])?;
            let k = lookup(&h.canonical())?;
            table[i][j] = k;
            table[j][i] = k;
        }
    }
    let principal = lookup(&canonical_form(&principal_form(disc)?)?)?;

    let mut group = ClassGroupData {
        disc,
        narrow,
        classes,
        compose_table: table,
        principal,
        structure: Vec::new(),
    };
    if disc > 0 && !narrow {
        group = quotient_by_negated_principal(group)?;
    }
    group.structure = invariant_factors(&group)?;
    Ok(group)
}

/// Quotient the narrow group by the class of the negated principal form.
fn quotient_by_negated_principal(g: ClassGroupData) -> Result<ClassGroupData> {
    let neg = canonical_form(&principal_form(g.disc)?.negate())?;
    let s = g
        .classes
        .iter()
        .position(|c| c.canonical() == neg)
        .ok_or(Error::Internal("negated principal class missing"))?;
    if s == g.principal {
        return Ok(ClassGroupData { narrow: false, ..g });
    }
    if g.mul(s, s) != g.principal {
        return Err(Error::Internal("negated principal class is not 2-torsion"));
    }
    let n = g.classes.len();
    // Orbits {i, i·s}; keep the member with the smaller sort key.
    let mut orbit_rep = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if orbit_rep[i] != usize::MAX {
            continue;
        }
        let j = g.mul(i, s);
        let rep = if g.classes[i].sort_key() <= g.classes[j].sort_key() {
            i
        } else {
            j
        };
        orbit_rep[i] = rep;
        orbit_rep[j] = rep;
        reps.push(rep);
    }
    reps.sort_by_key(|&i| g.classes[i].sort_key());
    let new_index: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let m = reps.len();
    let mut table = vec![vec![0usize; m]; m];
    for a in 0..m {
        for b in 0..m {
            table[a][b] = new_index[&orbit_rep[g.mul(reps[a], reps[b])]];
        }
    }
    let principal = new_index[&orbit_rep[g.principal]];
    Ok(ClassGroupData {
        disc: g.disc,
        narrow: false,
        classes: reps.iter().map(|&i| g.classes[i].clone()).collect(),
        compose_table: table,
        principal,
        structure: Vec::new(),
    })
}

/// Invariant factors of a finite abelian group given by its multiplication
/// table, via counting p-power torsion.
fn invariant_factors(g: &ClassGroupData) -> Result<Vec<u64>> {
    let n = g.classes.len() as u64;
    if n == 1 {
        return Ok(Vec::new());
    }
    let mut per_prime: Vec<Vec<u32>> = Vec::new();
    for (p, _) in arith::factorize(n as i64)?.factors {
        // count[k] = #{x : x^(p^k) = e}; each is queried up to the Sylow size.
        let mut exponents_ge: Vec<u32> = Vec::new();
        let mut prev_log = 0u32;
        let mut k = 1u32;
        loop {
            let pk = p.checked_pow(k).ok_or(Error::Overflow)?;
            let cnt = (0..g.classes.len())
                .filter(|&i| g.pow(i, pk) == g.principal)
                .count() as u64;
            let log = cnt.ilog(p);
            if p.checked_pow(log).map(|v| v != cnt).unwrap_or(true) {
                return Err(Error::Internal("p-torsion count is not a power of p"));
            }
            if log == prev_log {
                break;
            }
            exponents_ge.push(log - prev_log);
            prev_log = log;
            k += 1;
        }
        // exponents_ge[k−1] = number of cyclic p-factors of exponent ≥ k.
        let factors = exponents_ge.first().copied().unwrap_or(0);
        let mut lambda = vec![0u32; factors as usize];
        for (k, &cnt) in exponents_ge.iter().enumerate() {
            for item in lambda.iter_mut().take(cnt as usize) {
                *item = (k + 1) as u32;
            }
        }
        per_prime.push(
            core::iter::repeat(p)
                .zip(lambda)
                .map(|(p, e)| p.pow(e) as u32)
                .collect::<Vec<u32>>(),
        );
    }
    let width = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut inv = vec![1u64; width];
    for list in &per_prime {
        // Largest prime-power contributions align with the largest factor.
        for (slot, &q) in inv.iter_mut().zip(list.iter()) {
            *slot *= q as u64;
        }
    }
    inv.reverse(); // ascending, each dividing the next
    debug_assert_eq!(inv.iter().product::<u64>(), n);
    Ok(inv)
}

// ---------------------------------------------------------------------------
// Genus theory
// ---------------------------------------------------------------------------

/// An assigned character of a discriminant: a Kronecker symbol at an odd
/// ramified prime, or one of the three characters at 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenusChar {
    /// (−1)^((m−1)/2), defined mod 4.
    MinusFour,
    /// (−1)^((m²−1)/8), defined mod 8.
    Eight,
    /// The product of the previous two, defined mod 8.
    MinusEight,
    /// The Legendre symbol (m|p) at an odd prime p.
    OddPrime(u64),
}

impl GenusChar {
    /// Evaluate at a positive integer coprime to the relevant modulus.
    pub fn eval(&self, m: i64) -> Result<i8> {
        debug_assert!(m > 0);
        match self {
            GenusChar::MinusFour => match m.rem_euclid(4) {
                1 => Ok(1),
                3 => Ok(-1),
                _ => Err(Error::Internal("character evaluated at even value")),
            },
            GenusChar::Eight => match m.rem_euclid(8) {
                1 | 7 => Ok(1),
                3 | 5 => Ok(-1),
                _ => Err(Error::Internal("character evaluated at even value")),
            },
            GenusChar::MinusEight => match m.rem_euclid(8) {
                1 | 3 => Ok(1),
                5 | 7 => Ok(-1),
                _ => Err(Error::Internal("character evaluated at even value")),
            },
            GenusChar::OddPrime(p) => {
                let v = arith::kronecker(m, *p as i64)?;
                if v == 0 {
                    Err(Error::Internal("character evaluated at ramified value"))
                } else {
                    Ok(v as i8)
                }
            }
        }
    }

    pub fn name(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        match self {
            GenusChar::MinusFour => s.push_str("chi_-4"),
            GenusChar::Eight => s.push_str("chi_8"),
            GenusChar::MinusEight => s.push_str("chi_-8"),
            GenusChar::OddPrime(p) => {
                let _ = write!(s, "chi_{p}");
            }
        }
        s
    }
}

impl fmt::Display for GenusChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The assigned genus characters of a discriminant: one Kronecker symbol per
/// odd ramified prime, plus the classical subset of {χ₋₄, χ₈, χ₋₄χ₈} keyed
/// on D mod 32.
pub fn genus_characters(disc: i64) -> Result<Vec<GenusChar>> {
    validate_disc(disc)?;
    let mut chars = Vec::new();
    if disc.rem_euclid(4) == 0 {
        let n = disc / 4;
        match n.rem_euclid(8) {
            3 | 7 => chars.push(GenusChar::MinusFour),
            4 => chars.push(GenusChar::MinusFour),
            2 => chars.push(GenusChar::Eight),
            6 => chars.push(GenusChar::MinusEight),
            0 => {
                chars.push(GenusChar::MinusFour);
                chars.push(GenusChar::Eight);
            }
            _ => {} // n ≡ 1 (mod 4): no character at 2
        }
    }
    for p in arith::factorize(disc)?.primes().filter(|&p| p != 2) {
        chars.push(GenusChar::OddPrime(p));
    }
    Ok(chars)
}

/// The genus label of a class: the vector of assigned character values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusLabel {
    pub characters: Vec<GenusChar>,
    pub values: Vec<i8>,
}

impl GenusLabel {
    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }
}

/// A positive represented value coprime to `2·disc`. The search widens by
/// doubling from |x|,|y| ≤ 50 up to 800 before reporting a bug.
fn coprime_represented_value(f: &Form, disc: i64) -> Result<i64> {
    let modulus = 2i128 * disc.unsigned_abs() as i128;
    let mut bound = 50i64;
    while bound <= 800 {
        for x in -bound..=bound {
            for y in -bound..=bound {
                let v = f.eval(x, y);
                if v > 0 && arith::gcd((v % modulus) as i64, modulus as i64) == 1 {
                    return i64::try_from(v).map_err(|_| Error::Overflow);
                }
            }
        }
        bound *= 2;
    }
    Err(Error::NoCoprimeValueFound)
}

/// Evaluate the assigned characters of the class's discriminant at a
/// represented value. Negative definite classes are labelled through their
/// positive counterpart, so opposite and negated classes share labels.
pub fn genus_of(cl: &FormClass) -> Result<GenusLabel> {
    if !cl.is_primitive() {
        return Err(Error::ImprimitiveForm);
    }
    let f = match cl.kind() {
        FormKind::NegDef => cl.canonical().negate(),
        _ => cl.canonical(),
    };
    let characters = genus_characters(cl.disc())?;
    let m = coprime_represented_value(&f, cl.disc())?;
    let values = characters
        .iter()
        .map(|ch| ch.eval(m))
        .collect::<Result<Vec<i8>>>()?;
    Ok(GenusLabel { characters, values })
}

/// Partition the classes of a group into genera by their labels; returned
/// as sorted index lists, the principal genus first.
pub fn genera_partition(group: &ClassGroupData) -> Result<Vec<Vec<usize>>> {
    let mut buckets: BTreeMap<Vec<i8>, Vec<usize>> = BTreeMap::new();
    for (i, cl) in group.classes.iter().enumerate() {
        buckets.entry(genus_of(cl)?.values).or_default().push(i);
    }
    let mut out: Vec<(Vec<i8>, Vec<usize>)> = buckets.into_iter().collect();
    out.sort_by_key(|(label, _)| !label.iter().all(|&v| v == 1));
    Ok(out.into_iter().map(|(_, v)| v).collect())
}

/// The principal genus of a discriminant: the classes whose label is
/// all-ones. By the duplication theorem this must coincide with the set of
/// squares, and that is asserted here.
pub fn principal_genus(disc: i64) -> Result<Vec<FormClass>> {
    let group = class_group(disc, true)?;
    let mut all_ones: Vec<usize> = (0..group.classes.len())
        .map(|i| Ok((i, genus_of(&group.classes[i])?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, label)| label.is_principal())
        .map(|(i, _)| i)
        .collect();
    all_ones.sort_unstable();
    let squares = group.squares();
    if all_ones != squares {
        return Err(Error::FormulaMismatch {
            context: "principal genus vs squares",
            expected: squares.len() as u64,
            actual: all_ones.len() as u64,
        });
    }
    Ok(all_ones
        .into_iter()
        .map(|i| group.classes[i].clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(a: i64, b: i64, c: i64) -> FormClass {
        FormClass::of(Form::new(a, b, c)).unwrap()
    }

    #[test]
    fn principal_form_examples() {
        assert_eq!(principal_form(-20).unwrap(), Form::new(1, 0, 5));
        assert_eq!(principal_form(-11).unwrap(), Form::new(1, 1, 3));
        assert_eq!(principal_form(44).unwrap(), Form::new(1, 0, -11));
        assert_eq!(principal_form(45).unwrap(), Form::new(1, 1, -11));
        assert_eq!(principal_form(7), Err(Error::InvalidDiscriminant(7)));
        assert_eq!(principal_form(16), Err(Error::InvalidDiscriminant(16)));
        assert_eq!(principal_form(0), Err(Error::InvalidDiscriminant(0)));
    }

    #[test]
    fn compose_identity_law_disc_minus44() {
        let e = cl(1, 0, 11);
        for g in [cl(1, 0, 11), cl(3, 2, 4), cl(3, -2, 4)] {
            assert_eq!(compose(&e, &g).unwrap(), g);
            assert_eq!(compose(&g, &e).unwrap(), g);
        }
    }

    #[test]
    fn compose_examples() {
        // Non-principal class of disc −20 squares to the principal class.
        let g = cl(2, 2, 3);
        assert_eq!(compose(&g, &g).unwrap(), cl(1, 0, 5));
        // A class composed with its opposite is principal.
        let f = cl(3, 2, 4);
        assert_eq!(compose(&f, &f.opposite().unwrap()).unwrap(), cl(1, 0, 11));
        // In the ℤ/3 group of disc −44 the square is the inverse.
        assert_eq!(compose(&f, &f).unwrap(), cl(3, -2, 4));
    }

    #[test]
    fn compose_rejects_bad_input() {
        assert_eq!(
            compose(&cl(1, 0, 5), &cl(1, 0, 11)),
            Err(Error::DiscMismatch)
        );
        assert_eq!(
            compose_forms(&Form::new(2, 2, 8), &Form::new(1, 2, 16)),
            Err(Error::ImprimitiveForm)
        );
        let neg = cl(-1, 0, -11);
        assert_eq!(compose(&neg, &neg), Err(Error::NegativeDefiniteClass));
    }

    #[test]
    fn class_group_disc_minus44() {
        let g = class_group(-44, true).unwrap();
        assert_eq!(g.h(), 3);
        let forms: Vec<Form> = g.classes.iter().map(|c| c.canonical()).collect();
        assert_eq!(
            forms,
            [Form::new(1, 0, 11), Form::new(3, -2, 4), Form::new(3, 2, 4)]
        );
        assert_eq!(g.structure, [3]);
    }

    #[test]
    fn class_group_disc_44() {
        let g = class_group(44, true).unwrap();
        assert_eq!(g.h(), 2);
        assert_eq!(g.structure, [2]);
        // Wide group collapses to a single class: no norm −1 unit for d = 11.
        let w = class_group(44, false).unwrap();
        assert_eq!(w.h(), 1);
    }

    #[test]
    fn class_group_disc_minus20() {
        let g = class_group(-20, true).unwrap();
        assert_eq!(g.h(), 2);
        assert_eq!(g.structure, [2]);
    }

    #[test]
    fn class_group_disc_45() {
        // Non-fundamental (45 = 9·5) but a valid order discriminant.
        let g = class_group(45, true).unwrap();
        assert_eq!(g.h(), 2);
        let w = class_group(45, false).unwrap();
        assert_eq!(w.h(), 1);
    }

    #[test]
    fn wide_equals_narrow_when_norm_minus_one_exists() {
        // disc 8: ε = 1 + √2 has norm −1.
        assert_eq!(class_group(8, true).unwrap().h(), 1);
        assert_eq!(class_group(8, false).unwrap().h(), 1);
        // disc 40 (d = 10): norm −1 unit 3 + √10.
        assert_eq!(
            class_group(40, true).unwrap().h(),
            class_group(40, false).unwrap().h()
        );
    }

    #[test]
    fn group_axioms_sample() {
        for disc in [-23i64, -44, -47, -71, -84, 44, 40, 60, 145, 229] {
            let g = class_group(disc, true).unwrap();
            let n = g.classes.len();
            for i in 0..n {
                assert_eq!(g.mul(g.principal, i), i);
                let inv = g.inv(i);
                assert_eq!(g.mul(i, inv), g.principal);
                // The inverse class is the opposite class.
                let opp = g.classes[i].opposite().unwrap();
                assert_eq!(g.index_of(&opp.canonical()), Some(inv));
                for j in 0..n {
                    assert_eq!(g.mul(i, j), g.mul(j, i));
                    for k in 0..n {
                        assert_eq!(g.mul(g.mul(i, j), k), g.mul(i, g.mul(j, k)));
                    }
                }
            }
        }
    }

    #[test]
    fn compose_respects_reduction_of_inputs() {
        // Composites of twisted representatives land in the same class.
        let f = Form::new(12, 10, 3); // reduces to a disc −44 form
        let g = Form::new(3, 2, 4);
        let via_raw = compose_forms(&f, &g).unwrap();
        let via_reduced = compose_forms(&canonical_form(&f).unwrap(), &g).unwrap();
        assert_eq!(via_raw, via_reduced);
    }

    #[test]
    fn compose_invariant_under_unimodular_twists() {
        use crate::qform::Mat2;
        let twists = [
            Mat2::new(1, 2, 0, 1),
            Mat2::new(1, 0, -1, 1),
            Mat2::new(2, 1, 1, 1),
            Mat2::new(3, -1, 1, 0),
        ];
        for disc in [-44i64, -20, -84, 44, 60, 145] {
            let group = class_group(disc, true).unwrap();
            for f in group.classes.iter().map(|c| c.canonical()) {
                for g in group.classes.iter().map(|c| c.canonical()) {
                    if f.a <= 0 || g.a <= 0 {
                        continue;
                    }
                    let base = compose_forms(&f, &g).unwrap();
                    for t in &twists {
                        let tf = f.transform(t).unwrap();
                        let tg = g.transform(t).unwrap();
                        if tf.a > 0 && tg.a > 0 {
                            assert_eq!(compose_forms(&tf, &tg).unwrap(), base);
                            assert_eq!(compose_forms(&tf, &g).unwrap(), base);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn structure_of_larger_groups() {
        for (disc, h, structure) in [
            (-63i64, 4, &[4u64][..]),
            (-47, 5, &[5]),
            (-84, 4, &[2, 2]),
            (-104, 6, &[6]),
            (-420, 8, &[2, 2, 2]),
            (-4027, 9, &[3, 3]),
        ] {
            let g = class_group(disc, true).unwrap();
            assert_eq!(g.h(), h, "disc {disc}");
            assert_eq!(g.structure, structure, "disc {disc}");
        }
    }

    #[test]
    fn genus_characters_examples() {
        // −44 = 4·(−11) with −11 ≡ 1 (mod 4): only the odd character.
        assert_eq!(genus_characters(-44).unwrap(), [GenusChar::OddPrime(11)]);
        assert_eq!(
            genus_characters(-20).unwrap(),
            [GenusChar::MinusFour, GenusChar::OddPrime(5)]
        );
        assert_eq!(
            genus_characters(44).unwrap(),
            [GenusChar::MinusFour, GenusChar::OddPrime(11)]
        );
        assert_eq!(
            genus_characters(-32).unwrap(),
            [GenusChar::MinusFour, GenusChar::Eight]
        );
        assert_eq!(genus_characters(-40).unwrap()[0], GenusChar::MinusEight);
        assert_eq!(genus_characters(8).unwrap(), [GenusChar::Eight]);
        assert_eq!(genus_characters(-23).unwrap(), [GenusChar::OddPrime(23)]);
    }

    #[test]
    fn genus_labels_disc_minus20() {
        let principal = genus_of(&cl(1, 0, 5)).unwrap();
        assert!(principal.is_principal());
        let other = genus_of(&cl(2, 2, 3)).unwrap();
        assert_eq!(other.values, [-1, -1]);
        // Opposite classes carry equal labels.
        assert_eq!(
            genus_of(&cl(3, 2, 4)).unwrap().values,
            genus_of(&cl(3, -2, 4)).unwrap().values
        );
    }

    #[test]
    fn genus_label_constant_across_classes_disc_minus44() {
        // All three classes of disc −44 are squares, hence a single genus.
        let gp = genera_partition(&class_group(-44, true).unwrap()).unwrap();
        assert_eq!(gp.len(), 1);
        assert_eq!(gp[0].len(), 3);
    }

    #[test]
    fn principal_genus_examples() {
        let pg = principal_genus(-44).unwrap();
        assert_eq!(pg.len(), 3);
        let pg = principal_genus(-20).unwrap();
        assert_eq!(pg.len(), 1);
        assert_eq!(pg[0].canonical(), Form::new(1, 0, 5));
        let pg = principal_genus(44).unwrap();
        assert_eq!(pg.len(), 1);
        assert_eq!(
            pg[0].canonical(),
            canonical_form(&Form::new(1, 0, -11)).unwrap()
        );
    }

    #[test]
    fn genera_counts_match_two_power() {
        // |genera| = 2^(t−1) and all genera have equal size, on a sample of
        // fundamental and non-fundamental discriminants of both signs.
        for disc in [
            -20i64, -23, -44, -32, -40, -56, -60, -84, -120, -420, -660, 8, 40, 44, 45, 60, 145,
            156, 316, 229,
        ] {
            let g = class_group(disc, true).unwrap();
            let gp = genera_partition(&g).unwrap();
            let t = genus_characters(disc).unwrap().len() as u32;
            assert_eq!(gp.len() as u64, 1u64 << (t - 1), "disc {disc}");
            for genus in &gp {
                assert_eq!(genus.len(), gp[0].len(), "disc {disc}");
            }
            assert_eq!(g.squares().len(), gp[0].len(), "disc {disc}");
        }
    }
}
