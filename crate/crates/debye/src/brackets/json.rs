//! Documented JSON schema for bracket series and candidates.
//!
//! Rationals serialize as strings ("1", "-1/2"); affine forms as
//! `{"coeffs": {"n3": "1"}, "constant": {"n": "1", "offset": "2"}}` where the
//! constant means n*N + offset. The schema round-trips: parsing the emitted
//! JSON reproduces the in-memory value exactly.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::types::{
    AffineConstant, AffineIndexForm, BracketSeries, CoefficientFactor, IndexId, PowerBase,
    Prefactor, SeriesCandidate, Validity,
};
use super::BracketsError;

fn rat_to_string(r: Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat_from_string(s: &str) -> Result<Rational64, BracketsError> {
    let parse = |t: &str| {
        t.parse::<i64>()
            .map_err(|e| BracketsError::Structure(format!("bad rational '{s}': {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => Ok(Rational64::new(parse(n)?, parse(d)?)),
        None => Ok(Rational64::from_integer(parse(s)?)),
    }
}

fn index_to_string(id: IndexId) -> String {
    id.to_string()
}

fn index_from_string(s: &str) -> Result<IndexId, BracketsError> {
    s.strip_prefix('n')
        .and_then(|t| t.parse::<usize>().ok())
        .filter(|&k| k >= 1)
        .map(|k| IndexId(k - 1))
        .ok_or_else(|| BracketsError::Structure(format!("bad index id '{s}'")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineConstantDto {
    pub n: String,
    pub offset: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineFormDto {
    pub coeffs: BTreeMap<String, String>,
    pub constant: AffineConstantDto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorDto {
    GammaNum { arg: AffineFormDto },
    GammaDen { arg: AffineFormDto },
    Power { base: String, arg: AffineFormDto },
    Sign { arg: AffineFormDto },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrefactorDto {
    pub dimension_exponent: u32,
    pub x_exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketSeriesDto {
    pub indices: Vec<String>,
    pub prefactor: PrefactorDto,
    pub factors: Vec<FactorDto>,
    pub brackets: Vec<AffineFormDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityDto {
    pub valid: bool,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateDto {
    pub bound_indices: BTreeMap<String, AffineFormDto>,
    pub free_indices: Vec<String>,
    pub abs_det: String,
    pub validity: ValidityDto,
}

fn constant_to_dto(c: &AffineConstant) -> AffineConstantDto {
    AffineConstantDto { n: rat_to_string(c.n_coeff), offset: rat_to_string(c.offset) }
}

fn form_to_dto(f: &AffineIndexForm) -> AffineFormDto {
    AffineFormDto {
        coeffs: f
            .coeffs
            .iter()
            .map(|(id, c)| (index_to_string(*id), rat_to_string(*c)))
            .collect(),
        constant: constant_to_dto(&f.constant),
    }
}

fn form_from_dto(d: &AffineFormDto) -> Result<AffineIndexForm, BracketsError> {
    let mut coeffs = BTreeMap::new();
    for (k, v) in &d.coeffs {
        coeffs.insert(index_from_string(k)?, rat_from_string(v)?);
    }
    Ok(AffineIndexForm {
        coeffs,
        constant: AffineConstant {
            n_coeff: rat_from_string(&d.constant.n)?,
            offset: rat_from_string(&d.constant.offset)?,
        },
    })
}

fn base_to_string(b: &PowerBase) -> String {
    match b {
        PowerBase::Alpha => "alpha".into(),
        PowerBase::UpperLimit => "X".into(),
        PowerBase::Dimension => "N".into(),
        PowerBase::Index(id) => index_to_string(*id),
        PowerBase::OnePlusIndex(id) => format!("1+{}", index_to_string(*id)),
    }
}

fn base_from_string(s: &str) -> Result<PowerBase, BracketsError> {
    match s {
        "alpha" => Ok(PowerBase::Alpha),
        "X" => Ok(PowerBase::UpperLimit),
        "N" => Ok(PowerBase::Dimension),
        _ => {
            if let Some(rest) = s.strip_prefix("1+") {
                Ok(PowerBase::OnePlusIndex(index_from_string(rest)?))
            } else {
                Ok(PowerBase::Index(index_from_string(s)?))
            }
        }
    }
}

pub fn bracket_series_to_dto(s: &BracketSeries) -> BracketSeriesDto {
    BracketSeriesDto {
        indices: s.indices.iter().map(|id| index_to_string(*id)).collect(),
        prefactor: PrefactorDto {
            dimension_exponent: s.prefactor.dimension_exponent,
            x_exponent: s.prefactor.x_exponent,
        },
        factors: s
            .factors
            .iter()
            .map(|f| match f {
                CoefficientFactor::GammaNum { arg } => {
                    FactorDto::GammaNum { arg: form_to_dto(arg) }
                }
                CoefficientFactor::GammaDen { arg } => {
                    FactorDto::GammaDen { arg: form_to_dto(arg) }
                }
                CoefficientFactor::Power { base, arg } => FactorDto::Power {
                    base: base_to_string(base),
                    arg: form_to_dto(arg),
                },
                CoefficientFactor::Sign { arg } => FactorDto::Sign { arg: form_to_dto(arg) },
            })
            .collect(),
        brackets: s.brackets.iter().map(form_to_dto).collect(),
    }
}

pub fn bracket_series_from_dto(d: &BracketSeriesDto) -> Result<BracketSeries, BracketsError> {
    let mut indices = Vec::new();
    for s in &d.indices {
        indices.push(index_from_string(s)?);
    }
    let mut factors = Vec::new();
    for f in &d.factors {
        factors.push(match f {
            FactorDto::GammaNum { arg } => {
                CoefficientFactor::GammaNum { arg: form_from_dto(arg)? }
            }
            FactorDto::GammaDen { arg } => {
                CoefficientFactor::GammaDen { arg: form_from_dto(arg)? }
            }
            FactorDto::Power { base, arg } => CoefficientFactor::Power {
                base: base_from_string(base)?,
                arg: form_from_dto(arg)?,
            },
            FactorDto::Sign { arg } => CoefficientFactor::Sign { arg: form_from_dto(arg)? },
        });
    }
    let mut brackets = Vec::new();
    for b in &d.brackets {
        brackets.push(form_from_dto(b)?);
    }
    Ok(BracketSeries {
        indices,
        prefactor: Prefactor {
            dimension_exponent: d.prefactor.dimension_exponent,
            x_exponent: d.prefactor.x_exponent,
        },
        factors,
        brackets,
    })
}

pub fn candidate_to_dto(c: &SeriesCandidate) -> CandidateDto {
    CandidateDto {
        bound_indices: c
            .bound_indices
            .iter()
            .map(|(id, f)| (index_to_string(*id), form_to_dto(f)))
            .collect(),
        free_indices: c.free_indices.iter().map(|id| index_to_string(*id)).collect(),
        abs_det: rat_to_string(c.abs_det),
        validity: match &c.validity {
            Validity::Valid => ValidityDto { valid: true, reason: String::new() },
            Validity::Singular => ValidityDto {
                valid: false,
                reason: "singular: the chosen index subsystem is not invertible".into(),
            },
            Validity::Divergent { reason } => ValidityDto {
                valid: false,
                reason: format!("divergent: {reason}"),
            },
        },
    }
}

/// Serializes a bracket series to the documented JSON schema.
pub fn bracket_series_to_json(s: &BracketSeries) -> String {
    serde_json::to_string_pretty(&bracket_series_to_dto(s)).expect("schema serializes")
}

/// Serializes a candidate to the documented JSON schema.
pub fn candidate_to_json(c: &SeriesCandidate) -> String {
    serde_json::to_string_pretty(&candidate_to_dto(c)).expect("schema serializes")
}
