//! Analytic prediction of the sub-add cycle spectrum modulo an odd prime.
//!
//! For an odd prime `p`, let `t` be the order of `-4` in `GF(p)*`. The
//! sub-add matrix has order `k = 4t`, its eigenvalues are `1 + i` and
//! `1 - i` with `i^2 = -1`, and the only possible cycle lengths are `1`,
//! `s = ord(1 - i)` and `k = ord(1 + i)` (roles normalised so the larger
//! order is `k`). Cycle counts follow from a counting argument, so the
//! whole spectrum is determined without building the graph — and the
//! enumerator can then cross-examine every claim.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{sqrt_minus_one, Gf2Element};
use crate::graph::{MoveGraph, SizeBudget};
use crate::modular::{canonical, is_prime, mult_order, pow_mod, Modulus};
use crate::subadd::subadd_matrix;

/// Which branch of the secondary-cycle classification applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    /// `t` even: no secondary cycles.
    #[serde(rename = "t_even")]
    TEven,
    /// `t = 1 (mod 4)` and `(1+i)^t = i`: secondary length `t`.
    #[serde(rename = "t1_i")]
    T1I,
    /// `t = 3 (mod 4)` and `(1+i)^t = i`: secondary length `2t`.
    #[serde(rename = "t3_i")]
    T3I,
    /// `t = 1 (mod 4)` and `(1+i)^t = -i`: secondary length `2t`.
    #[serde(rename = "t1_negi")]
    T1NegI,
    /// `t = 3 (mod 4)` and `(1+i)^t = -i`: secondary length `t`.
    #[serde(rename = "t3_negi")]
    T3NegI,
    /// `p = 3 (mod 4)`: conjugate eigenvalues, `s = k`, no secondaries.
    #[serde(rename = "p3mod4")]
    P3Mod4,
}

impl CaseLabel {
    /// The stable token used in serialised records.
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::TEven => "t_even",
            CaseLabel::T1I => "t1_i",
            CaseLabel::T3I => "t3_i",
            CaseLabel::T1NegI => "t1_negi",
            CaseLabel::T3NegI => "t3_negi",
            CaseLabel::P3Mod4 => "p3mod4",
        }
    }
}

/// The complete predicted cycle data for the sub-add graph mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePrediction {
    pub p: u64,
    /// Order of `-4` in `GF(p)*`.
    pub t: u64,
    /// `4t`, the `Z_p`-order of the sub-add matrix.
    pub k: u64,
    /// The smaller square root of `-1` mod `p`, when `p = 1 (mod 4)`.
    pub i_root: Option<u64>,
    /// Order of `1 - i` (the smaller eigenvalue order).
    pub s: u64,
    pub case_label: CaseLabel,
    pub secondary_exists: bool,
    pub secondary_length: Option<u64>,
    pub secondary_count: Option<u64>,
    pub primary_count: u64,
    pub fixed_points: u64,
}

impl PrimePrediction {
    /// The spectrum this prediction implies: `{1: 1}` plus the secondary
    /// and primary classes, with coincident lengths merged by summing.
    pub fn predicted_spectrum(&self) -> BTreeMap<u64, u64> {
        let mut spectrum = BTreeMap::new();
        spectrum.insert(1u64, self.fixed_points);
        if let (Some(len), Some(count)) = (self.secondary_length, self.secondary_count) {
            *spectrum.entry(len).or_insert(0) += count;
        }
        *spectrum.entry(self.k).or_insert(0) += self.primary_count;
        spectrum
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("prediction serialises")
    }
}

fn check(condition: bool, message: impl FnOnce() -> String) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::Internal(message()))
    }
}

/// Predict the cycle spectrum of the sub-add graph mod an odd prime.
pub fn predict(p: u64) -> Result<PrimePrediction> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    let modulus = Modulus::new(p)?;
    let t = mult_order(canonical(-4, p), modulus)?;
    let k = 4 * t;

    let (i_root, s, case_label) = if p % 4 == 3 {
        // Conjugate eigenvalues in GF(p^2) share the order k.
        let one_minus = Gf2Element::new(1, -1, p)?;
        let one_plus = Gf2Element::new(1, 1, p)?;
        let s = one_minus.order()?;
        check(s == k && one_plus.order()? == k, || {
            format!("conjugate eigenvalue orders differ from k = {k} at p = {p}")
        })?;
        (None, s, CaseLabel::P3Mod4)
    } else {
        let root = sqrt_minus_one(p)?.ok_or_else(|| {
            Error::Internal(format!("p = {p} = 1 (mod 4) must admit a root of -1"))
        })?;
        // Both eigenvalue orders, computed along the single GF(p^2)
        // arithmetic path with the concrete root substituted (b = 0).
        let ord_plus = Gf2Element::from_base((1 + root) as i64, p)?.order()?;
        let ord_minus = Gf2Element::from_base(1 - root as i64, p)?.order()?;
        let s = ord_plus.min(ord_minus);
        let big = ord_plus.max(ord_minus);
        check(big == k, || {
            format!("max eigenvalue order {big} differs from k = {k} at p = {p}")
        })?;

        if t % 2 == 0 {
            check(s == k, || {
                format!("t even but s = {s} != k = {k} at p = {p}")
            })?;
            (Some(root), s, CaseLabel::TEven)
        } else {
            // Normalise the root choice: call `i` the root whose `1 + i`
            // has the full order k (swapping roots swaps the eigenvalues).
            let i = if ord_plus == k { root } else { p - root };
            let phase = pow_mod((1 + i) % p, t, p);
            let label = match (t % 4, phase) {
                (1, x) if x == i => CaseLabel::T1I,
                (3, x) if x == i => CaseLabel::T3I,
                (1, x) if x == p - i => CaseLabel::T1NegI,
                (3, x) if x == p - i => CaseLabel::T3NegI,
                _ => {
                    return Err(Error::Internal(format!(
                        "(1+i)^t = {phase} is neither root of -1 at p = {p}"
                    )))
                }
            };
            let expected_s = match label {
                CaseLabel::T1I | CaseLabel::T3NegI => t,
                CaseLabel::T3I | CaseLabel::T1NegI => 2 * t,
                _ => unreachable!(),
            };
            check(expected_s == s, || {
                format!("classified secondary length {expected_s} differs from s = {s} at p = {p}")
            })?;
            (Some(root), s, label)
        }
    };

    let secondary_exists = s != k;
    check(secondary_exists == (k % 8 != 0), || {
        format!("secondary existence disagrees with 8 | k at p = {p}")
    })?;
    check([t, 2 * t, 4 * t].contains(&s) && k % s == 0, || {
        format!("s = {s} outside {{t, 2t, 4t}} at p = {p}")
    })?;

    let prediction = if secondary_exists {
        PrimePrediction {
            p,
            t,
            k,
            i_root,
            s,
            case_label,
            secondary_exists,
            secondary_length: Some(s),
            secondary_count: Some((p - 1) / s),
            primary_count: (p * p - p) / k,
            fixed_points: 1,
        }
    } else {
        PrimePrediction {
            p,
            t,
            k,
            i_root,
            s,
            case_label,
            secondary_exists,
            secondary_length: None,
            secondary_count: None,
            primary_count: (p * p - 1) / k,
            fixed_points: 1,
        }
    };

    // Vertex conservation: the implied spectrum must cover Z_p^2 exactly.
    let total: u64 = prediction
        .predicted_spectrum()
        .iter()
        .map(|(len, count)| len * count)
        .sum();
    check(total == p * p, || {
        format!("spectrum totals {total} != p^2 at p = {p}")
    })?;

    Ok(prediction)
}

/// Compare the predicted spectrum with the enumerated one, exactly.
pub fn verify_prediction(p: u64, budget: SizeBudget) -> Result<bool> {
    let prediction = predict(p)?;
    let graph = MoveGraph::build_with_budget(&subadd_matrix(Modulus::new(p)?), budget)?;
    let enumerated = graph.decompose();
    Ok(&prediction.predicted_spectrum() == enumerated.spectrum()
        && enumerated.is_all_cycles())
}

/// What the residue of `p` mod 8 guarantees about secondary cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mod8Criterion {
    /// `p = 3, 7 (mod 8)`: secondary cycles cannot exist.
    NoneGuaranteed,
    /// `p = 5 (mod 8)`: secondary cycles must exist.
    ExistsGuaranteed,
    /// `p = 1 (mod 8)`: the criterion is silent; both outcomes occur.
    Undetermined,
}

pub fn mod8_criterion(p: u64) -> Result<Mod8Criterion> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    Ok(match p % 8 {
        3 | 7 => Mod8Criterion::NoneGuaranteed,
        5 => Mod8Criterion::ExistsGuaranteed,
        1 => Mod8Criterion::Undetermined,
        _ => unreachable!("odd prime"),
    })
}

/// One survey row: the prediction plus the mod-8 verdict, which for
/// `p = 1 (mod 8)` marks the row as undetermined-by-criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub prediction: PrimePrediction,
    pub criterion: Mod8Criterion,
}

/// Predictions for every odd prime up to `p_max`, ascending. A bound
/// below 3 yields no rows.
pub fn survey(p_max: u64) -> Result<Vec<SurveyRow>> {
    let mut rows = Vec::new();
    for p in 3..=p_max.max(2) {
        if p % 2 == 1 && is_prime(p) {
            rows.push(SurveyRow {
                prediction: predict(p)?,
                criterion: mod8_criterion(p)?,
            });
        }
    }
    Ok(rows)
}

/// Render survey rows as CSV with the fixed header
/// `p,p_mod_8,t,k,s,secondary_exists,secondary_length,secondary_count,primary_count`.
/// Absent values are empty fields; no field needs RFC-4180 quoting.
pub fn survey_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from(
        "p,p_mod_8,t,k,s,secondary_exists,secondary_length,secondary_count,primary_count\n",
    );
    for row in rows {
        let p = &row.prediction;
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            p.p,
            p.p % 8,
            p.t,
            p.k,
            p.s,
            p.secondary_exists,
            opt(p.secondary_length),
            opt(p.secondary_count),
            p.primary_count
        ));
    }
    out
}

/// Render survey rows as a JSON array.
pub fn survey_json(rows: &[SurveyRow]) -> String {
    serde_json::to_string(rows).expect("rows serialise")
}

/// Weak-component counts of the sub-add graph for `n = 1..=n_max`, by
/// brute-force enumeration. `n = 1` contributes 1 by convention (a
/// single vertex with a self-loop).
pub fn oeis_terms(n_max: u64, budget: SizeBudget) -> Result<Vec<u64>> {
    let mut terms = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        if n == 1 {
            terms.push(1);
            continue;
        }
        let graph = MoveGraph::build_with_budget(&subadd_matrix(Modulus::new(n)?), budget)?;
        terms.push(graph.weak_components().count);
    }
    Ok(terms)
}
