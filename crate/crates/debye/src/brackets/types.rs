//! Data model of a bracket series.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// Summation index, displayed as n1, n2, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexId(pub usize);

impl fmt::Display for IndexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0 + 1)
    }
}

/// Rational constant affine in the dimension symbol: `n_coeff * N + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineConstant {
    pub n_coeff: Rational64,
    pub offset: Rational64,
}

impl AffineConstant {
    pub fn zero() -> Self {
        AffineConstant { n_coeff: Rational64::zero(), offset: Rational64::zero() }
    }

    pub fn integer(v: i64) -> Self {
        AffineConstant { n_coeff: Rational64::zero(), offset: Rational64::from_integer(v) }
    }

    /// `p*N + q`
    pub fn in_n(p: i64, q: i64) -> Self {
        AffineConstant {
            n_coeff: Rational64::from_integer(p),
            offset: Rational64::from_integer(q),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.n_coeff.is_zero() && self.offset.is_zero()
    }

    pub fn eval(&self, n_dim: i64) -> Rational64 {
        self.n_coeff * Rational64::from_integer(n_dim) + self.offset
    }

    pub fn add(&self, o: &AffineConstant) -> AffineConstant {
        AffineConstant { n_coeff: self.n_coeff + o.n_coeff, offset: self.offset + o.offset }
    }

    pub fn scale(&self, c: Rational64) -> AffineConstant {
        AffineConstant { n_coeff: self.n_coeff * c, offset: self.offset * c }
    }
}

impl fmt::Display for AffineConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_coeff.is_zero() {
            return write!(f, "{}", self.offset);
        }
        if self.n_coeff == Rational64::from_integer(1) {
            write!(f, "N")?;
        } else if self.n_coeff == Rational64::from_integer(-1) {
            write!(f, "-N")?;
        } else {
            write!(f, "{}N", self.n_coeff)?;
        }
        if self.offset.is_positive() {
            write!(f, "+{}", self.offset)?;
        } else if self.offset.is_negative() {
            write!(f, "{}", self.offset)?;
        }
        Ok(())
    }
}

/// Rational linear form over summation indices plus an [`AffineConstant`]:
/// the argument shape of every bracket, gamma factor and power exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineIndexForm {
    pub coeffs: BTreeMap<IndexId, Rational64>,
    pub constant: AffineConstant,
}

impl AffineIndexForm {
    pub fn constant(c: AffineConstant) -> Self {
        AffineIndexForm { coeffs: BTreeMap::new(), constant: c }
    }

    pub fn from_terms(terms: &[(IndexId, i64)], constant: AffineConstant) -> Self {
        let mut coeffs = BTreeMap::new();
        for &(id, c) in terms {
            if c != 0 {
                coeffs.insert(id, Rational64::from_integer(c));
            }
        }
        AffineIndexForm { coeffs, constant }
    }

    pub fn single(id: IndexId) -> Self {
        Self::from_terms(&[(id, 1)], AffineConstant::zero())
    }

    pub fn coeff(&self, id: IndexId) -> Rational64 {
        self.coeffs.get(&id).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    /// Exact value at an integer assignment of every index that appears.
    pub fn eval(&self, assignment: &BTreeMap<IndexId, Rational64>, n_dim: i64) -> Rational64 {
        let mut acc = self.constant.eval(n_dim);
        for (id, c) in &self.coeffs {
            let v = assignment
                .get(id)
                .copied()
                .unwrap_or_else(Rational64::zero);
            acc += *c * v;
        }
        acc
    }

    /// Replaces bound indices by their affine solutions, producing a form
    /// over the free indices only.
    pub fn substitute(&self, bound: &BTreeMap<IndexId, AffineIndexForm>) -> AffineIndexForm {
        let mut coeffs: BTreeMap<IndexId, Rational64> = BTreeMap::new();
        let mut constant = self.constant;
        for (id, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            if let Some(repl) = bound.get(id) {
                for (rid, rc) in &repl.coeffs {
                    *coeffs.entry(*rid).or_insert_with(Rational64::zero) += *c * *rc;
                }
                constant = constant.add(&repl.constant.scale(*c));
            } else {
                *coeffs.entry(*id).or_insert_with(Rational64::zero) += *c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        AffineIndexForm { coeffs, constant }
    }

    pub fn is_identically_zero(&self) -> bool {
        self.is_constant() && self.constant.is_zero()
    }

    fn scaled_add(&mut self, c: Rational64, o: &AffineIndexForm) {
        for (id, oc) in &o.coeffs {
            *self.coeffs.entry(*id).or_insert_with(Rational64::zero) += c * *oc;
        }
        self.constant = self.constant.add(&o.constant.scale(c));
        self.coeffs.retain(|_, v| !v.is_zero());
    }

    pub fn add_scaled(mut self, c: Rational64, o: &AffineIndexForm) -> AffineIndexForm {
        self.scaled_add(c, o);
        self
    }

    pub fn scale(&self, c: Rational64) -> AffineIndexForm {
        let mut coeffs = BTreeMap::new();
        for (id, v) in &self.coeffs {
            let s = *v * c;
            if !s.is_zero() {
                coeffs.insert(*id, s);
            }
        }
        AffineIndexForm { coeffs, constant: self.constant.scale(c) }
    }

    pub fn negate(&self) -> AffineIndexForm {
        self.scale(-Rational64::one())
    }
}

impl fmt::Display for AffineIndexForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (id, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            if first {
                if *c == Rational64::from_integer(1) {
                    write!(f, "{id}")?;
                } else if *c == Rational64::from_integer(-1) {
                    write!(f, "-{id}")?;
                } else {
                    write!(f, "{c}*{id}")?;
                }
                first = false;
            } else if *c == Rational64::from_integer(1) {
                write!(f, " + {id}")?;
            } else if *c == Rational64::from_integer(-1) {
                write!(f, " - {id}")?;
            } else if c.is_positive() {
                write!(f, " + {c}*{id}")?;
            } else {
                write!(f, " - {}*{id}", -c)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Base of a power factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerBase {
    /// The denominator-shift parameter alpha.
    Alpha,
    /// The upper integration limit X.
    UpperLimit,
    /// A summation index value used as a base (e.g. n1^{n3}).
    Index(IndexId),
    /// 1 + index, the shifted base that appears after resummation.
    OnePlusIndex(IndexId),
    /// The dimension symbol N.
    Dimension,
}

impl fmt::Display for PowerBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerBase::Alpha => write!(f, "alpha"),
            PowerBase::UpperLimit => write!(f, "X"),
            PowerBase::Index(id) => write!(f, "{id}"),
            PowerBase::OnePlusIndex(id) => write!(f, "(1+{id})"),
            PowerBase::Dimension => write!(f, "N"),
        }
    }
}

/// One multiplicative factor of the series coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientFactor {
    /// Gamma(arg) in the numerator.
    GammaNum { arg: AffineIndexForm },
    /// 1 / Gamma(arg); a pole here annihilates the term.
    GammaDen { arg: AffineIndexForm },
    /// base^arg.
    Power { base: PowerBase, arg: AffineIndexForm },
    /// (-1)^arg; arg must evaluate to an integer.
    Sign { arg: AffineIndexForm },
}

impl fmt::Display for CoefficientFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientFactor::GammaNum { arg } => write!(f, "Gamma({arg})"),
            CoefficientFactor::GammaDen { arg } => write!(f, "1/Gamma({arg})"),
            CoefficientFactor::Power { base, arg } => write!(f, "{base}^({arg})"),
            CoefficientFactor::Sign { arg } => write!(f, "(-1)^({arg})"),
        }
    }
}

/// Fixed prefactor N^a X^b of the whole series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prefactor {
    pub dimension_exponent: u32,
    pub x_exponent: u32,
}

/// A multi-index bracket series: indices (each with an implicit phi weight),
/// a prefactor, coefficient factors, and the list of brackets.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketSeries {
    pub indices: Vec<IndexId>,
    pub prefactor: Prefactor,
    pub factors: Vec<CoefficientFactor>,
    pub brackets: Vec<AffineIndexForm>,
}

impl BracketSeries {
    /// Every index referenced anywhere must be declared, and there can be at
    /// most as many brackets as indices.
    pub fn validate(&self) -> Result<(), super::BracketsError> {
        if self.brackets.len() > self.indices.len() {
            return Err(super::BracketsError::Structure(format!(
                "{} brackets exceed {} indices",
                self.brackets.len(),
                self.indices.len()
            )));
        }
        let declared: std::collections::BTreeSet<_> = self.indices.iter().collect();
        let check = |form: &AffineIndexForm| -> Result<(), super::BracketsError> {
            for id in form.coeffs.keys() {
                if !declared.contains(id) {
                    return Err(super::BracketsError::Structure(format!(
                        "index {id} used but not declared"
                    )));
                }
            }
            Ok(())
        };
        for b in &self.brackets {
            check(b)?;
        }
        for f in &self.factors {
            match f {
                CoefficientFactor::GammaNum { arg }
                | CoefficientFactor::GammaDen { arg }
                | CoefficientFactor::Sign { arg } => check(arg)?,
                CoefficientFactor::Power { base, arg } => {
                    check(arg)?;
                    if let PowerBase::Index(id) | PowerBase::OnePlusIndex(id) = base {
                        if !declared.contains(id) {
                            return Err(super::BracketsError::Structure(format!(
                                "power base index {id} not declared"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// How a candidate left the enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// The chosen square subsystem is singular.
    Singular,
    /// The corner term (all free indices zero) diverges with no free-index
    /// escape; the reason names the offending factor.
    Divergent { reason: String },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// One solution of the bracket constraints: bound indices as affine forms of
/// the free ones, |det A| of the square subsystem, and the validity verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCandidate {
    pub bound_indices: BTreeMap<IndexId, AffineIndexForm>,
    pub free_indices: Vec<IndexId>,
    pub abs_det: Rational64,
    pub validity: Validity,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_display() {
        let f = AffineIndexForm::from_terms(
            &[(IndexId(2), 1), (IndexId(3), 1), (IndexId(4), 1)],
            AffineConstant::in_n(1, 2),
        );
        assert_eq!(f.to_string(), "N+2 + n3 + n4 + n5");
        let g = AffineIndexForm::from_terms(&[(IndexId(0), 1), (IndexId(1), -1)], AffineConstant::zero());
        assert_eq!(g.to_string(), "n1 - n2");
    }

    #[test]
    fn substitution_closes_brackets() {
        // bracket n1 + n2 + 1 with n1 bound to -1 - n2 vanishes identically.
        let bracket = AffineIndexForm::from_terms(
            &[(IndexId(0), 1), (IndexId(1), 1)],
            AffineConstant::integer(1),
        );
        let mut bound = BTreeMap::new();
        bound.insert(
            IndexId(0),
            AffineIndexForm::from_terms(&[(IndexId(1), -1)], AffineConstant::integer(-1)),
        );
        assert!(bracket.substitute(&bound).is_identically_zero());
    }

    #[test]
    fn eval_with_dimension() {
        let f = AffineIndexForm::from_terms(&[(IndexId(2), 1)], AffineConstant::in_n(1, 2));
        let mut a = BTreeMap::new();
        a.insert(IndexId(2), Rational64::from_integer(4));
        assert_eq!(f.eval(&a, 3), Rational64::from_integer(9));
    }

    #[test]
    fn validation_catches_undeclared_index() {
        let s = BracketSeries {
            indices: vec![IndexId(0)],
            prefactor: Prefactor { dimension_exponent: 0, x_exponent: 0 },
            factors: vec![],
            brackets: vec![AffineIndexForm::single(IndexId(1))],
        };
        assert!(s.validate().is_err());
    }
}
