//! The classification sets attached to a square-free d ∉ {0, 1}: the proper
//! class sets `H¹(N_d)` and `H¹(N'_{-d})` as explicit lists of form classes,
//! the opposite-pair collapse, the disjoint-union description of `H¹(O_d)`,
//! the closed-form cardinality, the principal genus and the genus count.
//!
//! Every report cross-validates the closed-form cardinality against the
//! explicit enumeration; a disagreement is a fatal [`Error::FormulaMismatch`].

use alloc::vec::Vec;

use crate::classgrp::{self, ClassGroupData};
use crate::orders;
use crate::qform::FormClass;
use crate::{Error, Result};

/// Which classification set an [`H1Set`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H1Label {
    /// Proper classes locally isomorphic to the norm form of disc Δ_k.
    Nd,
    /// Proper classes locally isomorphic to `(1, 0, d)`, of disc −4d.
    NprimeMinusD,
    /// The total classification set of the orthogonal group.
    Od,
}

/// An explicit classification set: form classes with a ±1 component that
/// distinguishes negative definite mirrors when the forms are definite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Set {
    pub label: H1Label,
    pub d: i64,
    pub classes: Vec<(FormClass, i8)>,
    /// Whether the opposite relation has been applied.
    pub collapsed: bool,
}

impl H1Set {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// List the group's classes with sign +1, followed by their negative
/// definite mirrors with sign −1 when the discriminant is negative.
fn signed_classes(group: &ClassGroupData) -> Result<Vec<(FormClass, i8)>> {
    let mut out: Vec<(FormClass, i8)> = group.classes.iter().map(|c| (c.clone(), 1i8)).collect();
    if group.disc < 0 {
        for c in &group.classes {
            out.push((c.negate()?, -1));
        }
    }
    Ok(out)
}

/// `H¹(N_d)`: for d > 0 the narrow classes of disc Δ_k; for d < 0 the
/// positive definite classes of disc Δ_k together with their negated
/// mirrors. Cardinality `2^{μ(d)}·h⁺_d`.
pub fn h1_n(d: i64) -> Result<H1Set> {
    orders::validate_d(d)?;
    let disc = orders::fundamental_discriminant(d)?;
    let group = classgrp::class_group(disc, true)?;
    Ok(H1Set {
        label: H1Label::Nd,
        d,
        classes: signed_classes(&group)?,
        collapsed: false,
    })
}

/// `H¹(N'_{-d})` for d ≡ 2, 3 (mod 4): the proper classes of discriminant
/// −4d, i.e. of forms locally isomorphic to `(1, 0, d)`, with signed
/// duplication when that discriminant is negative.
///
/// For d ≡ 2 the set is identical to `h1_n(−d)` (the orders coincide). For
/// d ≡ 3 these are the classes of the order ℤ[√−d], and the cardinality is
/// checked against `3^{η(d)}·|H¹(N_{−d})|`.
pub fn h1_nprime(d: i64) -> Result<H1Set> {
    orders::validate_d(d)?;
    match d.rem_euclid(4) {
        2 => {
            let mut set = h1_n(-d)?;
            set.label = H1Label::NprimeMinusD;
            set.d = d;
            Ok(set)
        }
        3 => {
            if d == -1 {
                // disc −4d = 4 is a square; the twisted form x² − y² is
                // degenerate and out of scope.
                return Err(Error::SquareDiscriminant);
            }
            let disc = (-4i64).checked_mul(d).ok_or(Error::Overflow)?;
            let group = classgrp::class_group(disc, true)?;
            let classes = signed_classes(&group)?;
            let expected = 3u64.pow(orders::eta_invariant(d)? as u32) * h1_n(-d)?.len() as u64;
            if classes.len() as u64 != expected {
                return Err(Error::FormulaMismatch {
                    context: "h1_Nprime cardinality vs 3^eta * |h1_N(-d)|",
                    expected,
                    actual: classes.len() as u64,
                });
            }
            Ok(H1Set {
                label: H1Label::NprimeMinusD,
                d,
                classes,
                collapsed: false,
            })
        }
        _ => Err(Error::WrongResidue(d)),
    }
}

/// Apply the opposite relation `[(a,b,c)] ∼ [(a,−b,c)]`, keeping one
/// representative per pair. Returns the collapsed set and the number of
/// genuine two-element orbits.
pub fn collapse_opposites(s: H1Set) -> Result<(H1Set, u64)> {
    if s.collapsed {
        return Err(Error::AlreadyCollapsed);
    }
    let mut kept = Vec::new();
    let mut pairs = 0u64;
    for (cl, sign) in &s.classes {
        let opp = cl.opposite()?;
        if opp == *cl {
            kept.push((cl.clone(), *sign));
            continue;
        }
        if !s
            .classes
            .iter()
            .any(|(other, osign)| other == &opp && osign == sign)
        {
            return Err(Error::Internal("set is not closed under opposites"));
        }
        // Keep the canonical-least member of the pair; count it once.
        if (cl.sort_key(), cl.disc()) < (opp.sort_key(), opp.disc()) {
            kept.push((cl.clone(), *sign));
            pairs += 1;
        }
    }
    Ok((
        H1Set {
            label: s.label,
            d: s.d,
            classes: kept,
            collapsed: true,
        },
        pairs,
    ))
}

/// `H¹(O_d)`: equal to `H¹(N_d)` when d ≡ 1 (mod 4), and to the disjoint
/// union of the collapsed `H¹(N_d)` and `H¹(N'_{-d})` otherwise.
pub fn h1_o(d: i64) -> Result<H1Set> {
    orders::validate_d(d)?;
    if d.rem_euclid(4) == 1 {
        let mut set = h1_n(d)?;
        set.label = H1Label::Od;
        return Ok(set);
    }
    let (n_part, _) = collapse_opposites(h1_n(d)?)?;
    let (np_part, _) = collapse_opposites(h1_nprime(d)?)?;
    let mut classes = n_part.classes;
    classes.extend(np_part.classes);
    Ok(H1Set {
        label: H1Label::Od,
        d,
        classes,
        collapsed: true,
    })
}

/// The closed-form cardinality of `H¹(O_d)`:
///
/// * d ≡ 1 (mod 4): `2^{μ(d)}·h⁺_d`,
/// * d ≡ 2 (mod 4): `2^{μ(d)}·h⁺_d + 2^{μ(−d)}·h⁺_{−d} − m_d − l_d`,
/// * d ≡ 3 (mod 4): `2^{μ(d)}·h⁺_d + 2^{μ(−d)}·3^{η(d)}·h⁺_{−d} − m_d − l_d`,
///
/// with `m_d`, `l_d` the opposite-pair counts of the full signed sets
/// `H¹(N_d)` and `H¹(N'_{-d})`.
pub fn h1_o_cardinality_formula(d: i64) -> Result<u64> {
    orders::validate_d(d)?;
    let mu_d = orders::mu_invariant(d)? as u32;
    let h_plus_d = orders::narrow_class_number(d)?.1;
    let first = (1u64 << mu_d) * h_plus_d;
    match d.rem_euclid(4) {
        1 => Ok(first),
        residue @ (2 | 3) => {
            let mu_md = orders::mu_invariant(-d)? as u32;
            let h_plus_md = orders::narrow_class_number(-d)?.1;
            let three_eta = if residue == 3 {
                3u64.pow(orders::eta_invariant(d)? as u32)
            } else {
                1
            };
            let (_, m_d) = collapse_opposites(h1_n(d)?)?;
            let (_, l_d) = collapse_opposites(h1_nprime(d)?)?;
            Ok(first + (1u64 << mu_md) * three_eta * h_plus_md - m_d - l_d)
        }
        _ => Err(Error::InvalidD(d)),
    }
}

/// The class set realized as the principal genus of the narrow class group
/// of Δ_k (asserted equal to the set of squares).
pub fn class_set_principal_genus(d: i64) -> Result<Vec<FormClass>> {
    orders::validate_d(d)?;
    classgrp::principal_genus(orders::fundamental_discriminant(d)?)
}

/// Does every narrow class, squared, lie in the principal genus?
pub fn duplication_check(d: i64) -> Result<bool> {
    orders::validate_d(d)?;
    let disc = orders::fundamental_discriminant(d)?;
    let group = classgrp::class_group(disc, true)?;
    for i in 0..group.classes.len() {
        let sq = group.mul(i, i);
        if !classgrp::genus_of(&group.classes[sq])?.is_principal() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The number of proper genera of the narrow class group: `2^{|S_r|−1}`
/// where S_r is the set of primes dividing Δ_k, cross-checked against the
/// character-based partition.
pub fn genera_count(d: i64) -> Result<u64> {
    orders::validate_d(d)?;
    let disc = orders::fundamental_discriminant(d)?;
    let sr = orders::ramified_primes(d)?.len() as u32;
    let expected = 1u64 << (sr - 1);
    let partition = classgrp::genera_partition(&classgrp::class_group(disc, true)?)?;
    if partition.len() as u64 != expected {
        return Err(Error::FormulaMismatch {
            context: "genus count vs 2^(|S_r|-1)",
            expected,
            actual: partition.len() as u64,
        });
    }
    Ok(expected)
}

/// The genus count of the full signed set `H¹(N_d)`: negative definite
/// mirrors double the genera when d < 0.
pub fn genera_count_signed(d: i64) -> Result<u64> {
    Ok(genera_count(d)? << (orders::mu_invariant(d)? as u32))
}

/// Residue of d modulo 4 (0 is impossible for square-free d).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueCase {
    OneMod4,
    TwoMod4,
    ThreeMod4,
}

impl ResidueCase {
    pub fn of(d: i64) -> Result<ResidueCase> {
        match d.rem_euclid(4) {
            1 => Ok(ResidueCase::OneMod4),
            2 => Ok(ResidueCase::TwoMod4),
            3 => Ok(ResidueCase::ThreeMod4),
            _ => Err(Error::InvalidD(d)),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ResidueCase::OneMod4 => "1mod4",
            ResidueCase::TwoMod4 => "2mod4",
            ResidueCase::ThreeMod4 => "3mod4",
        }
    }
}

/// Every invariant of one d in a single record. The formula/enumeration
/// agreement is a hard assertion: a report is never produced without it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub d: i64,
    pub fund_disc: i64,
    pub residue_case: ResidueCase,
    pub h: u64,
    pub h_plus: u64,
    pub mu: u8,
    pub epsilon: u8,
    /// Defined only for d ≡ 3 (mod 4).
    pub eta: Option<u8>,
    /// Opposite pairs of the full signed set H¹(N_d).
    pub m_d: u64,
    /// Opposite pairs of the full signed set H¹(N'_{-d}).
    pub l_d: u64,
    /// Opposite pairs counted inside Pic⁺(O_k) alone (the narrower reading).
    pub m_d_literal: u64,
    /// Opposite pairs counted inside Pic ℤ[√−d] alone.
    pub l_d_literal: Option<u64>,
    pub card_n: u64,
    pub card_nprime: Option<u64>,
    pub card_o_formula: u64,
    pub card_o_enumeration: u64,
    /// Character-based genus count of the narrow class group, = 2^{|S_r|−1}.
    pub genera_count: u64,
    /// Genus count of the signed set (mirrors counted separately for d < 0).
    pub genera_count_signed: u64,
    pub sr_size: u32,
    pub duplication_ok: bool,
}

/// Compute the full report for one d.
pub fn cohomology_report(d: i64) -> Result<CohomologyReport> {
    orders::validate_d(d)?;
    let residue_case = ResidueCase::of(d)?;
    let fund_disc = orders::fundamental_discriminant(d)?;
    let (h, h_plus) = orders::narrow_class_number(d)?;
    let mu = orders::mu_invariant(d)?;
    let epsilon = orders::epsilon_invariant(d)?;
    let eta = if residue_case == ResidueCase::ThreeMod4 {
        Some(orders::eta_invariant(d)?)
    } else {
        None
    };

    let n_set = h1_n(d)?;
    let card_n = n_set.len() as u64;
    let mu_quadratic = (1u64 << mu as u32) * h_plus;
    if card_n != mu_quadratic {
        return Err(Error::FormulaMismatch {
            context: "|h1_N| vs 2^mu * h_plus",
            expected: mu_quadratic,
            actual: card_n,
        });
    }

    let m_d_literal = classgrp::class_group(fund_disc, true)?.opposite_pairs();
    let (m_d, l_d, l_d_literal, card_nprime) = if residue_case == ResidueCase::OneMod4 {
        (0, 0, None, None)
    } else {
        let np_set = h1_nprime(d)?;
        let order_disc = (-4i64).checked_mul(d).ok_or(Error::Overflow)?;
        let literal = classgrp::class_group(order_disc, false)?.opposite_pairs();
        let (_, m) = collapse_opposites(n_set.clone())?;
        let (_, l) = collapse_opposites(np_set.clone())?;
        (m, l, Some(literal), Some(np_set.len() as u64))
    };

    let card_o_enumeration = h1_o(d)?.len() as u64;
    let card_o_formula = h1_o_cardinality_formula(d)?;
    if card_o_formula != card_o_enumeration {
        return Err(Error::FormulaMismatch {
            context: "|h1_O| formula vs enumeration",
            expected: card_o_formula,
            actual: card_o_enumeration,
        });
    }

    Ok(CohomologyReport {
        d,
        fund_disc,
        residue_case,
        h,
        h_plus,
        mu,
        epsilon,
        eta,
        m_d,
        l_d,
        m_d_literal,
        l_d_literal,
        card_n,
        card_nprime,
        card_o_formula,
        card_o_enumeration,
        genera_count: genera_count(d)?,
        genera_count_signed: genera_count_signed(d)?,
        sr_size: orders::ramified_primes(d)?.len() as u32,
        duplication_ok: duplication_check(d)?,
    })
}
