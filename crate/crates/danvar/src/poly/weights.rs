//! Weight degree functions.
//!
//! A weight vector assigns positive integer weights to `x1..xn` and `y`; the
//! weight of `z` is derived from the hypersurface data once bound. Weighted
//! degrees drive the filtration machinery: principal components, admissible
//! weights and the associated graded ring.

use num_rational::BigRational;

use super::{Degree, Poly, Var};
use crate::error::{Error, Result};

/// Positive integer weights on `x1..xn` and `y`, with the `z` weight derived
/// when bound to a hypersurface (`d_z = r*d_y - sum m_k*d_{x,k}`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weights {
    pub d_x: Vec<i64>,
    pub d_y: i64,
    pub d_z: Option<i64>,
    /// Support degree up to which support-genericity has been validated.
    pub genericity_degree: Option<i64>,
}

impl Weights {
    pub fn new(d_x: Vec<i64>, d_y: i64) -> Result<Self> {
        if d_x.iter().any(|&d| d <= 0) || d_y <= 0 {
            return Err(Error::DegenerateWeights("weights must be positive".into()));
        }
        Ok(Weights {
            d_x,
            d_y,
            d_z: None,
            genericity_degree: None,
        })
    }

    pub fn n(&self) -> usize {
        self.d_x.len()
    }

    /// Binds the derived z weight for the relation `x^[m] z = y^r`.
    pub fn bind_z(&self, m: &[i64], r: i64) -> Result<Weights> {
        let mut sum: i64 = 0;
        for (mk, dk) in m.iter().zip(&self.d_x) {
            sum = sum
                .checked_add(mk.checked_mul(*dk).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
        }
        let d_z = r
            .checked_mul(self.d_y)
            .and_then(|a| a.checked_sub(sum))
            .ok_or_else(overflow)?;
        Ok(Weights {
            d_z: Some(d_z),
            ..self.clone()
        })
    }

    fn weight_of_var(&self, v: Var) -> Result<i64> {
        match v {
            Var::X(i) => self
                .d_x
                .get(i)
                .copied()
                .ok_or(Error::UncoveredVariable { var: v.name() }),
            Var::Y => Ok(self.d_y),
            Var::Z => self.d_z.ok_or(Error::UncoveredVariable { var: v.name() }),
            other => Err(Error::UncoveredVariable { var: other.name() }),
        }
    }

    /// Weighted exponent sum of a single monomial.
    pub fn monomial_weight(&self, ctx: super::Context, mono: &super::Monomial) -> Result<i64> {
        let mut acc: i64 = 0;
        for (slot, &e) in mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let w = self.weight_of_var(ctx.var_at(slot))?;
            acc = acc
                .checked_add(e.checked_mul(w).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
        }
        Ok(acc)
    }
}

fn overflow() -> Error {
    Error::Internal("weight arithmetic overflow".into())
}

/// Weighted degree of a polynomial: `-∞` for zero, otherwise the maximum
/// weighted exponent sum over its monomials.
pub fn weight_degree(p: &Poly, w: &Weights) -> Result<Degree> {
    let mut best: Option<i64> = None;
    for (mono, _) in p.terms() {
        let d = w.monomial_weight(p.ctx(), mono)?;
        best = Some(best.map_or(d, |b: i64| b.max(d)));
    }
    Ok(best.map_or(Degree::NegInf, Degree::Finite))
}

/// Principal weighted-homogeneous component: the sum of the terms realizing
/// the weighted degree. Rejects the zero polynomial.
pub fn principal_component(p: &Poly, w: &Weights) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::ZeroInput("principal component of 0 is undefined"));
    }
    let top = match weight_degree(p, w)? {
        Degree::Finite(d) => d,
        Degree::NegInf => unreachable!(),
    };
    let terms: Vec<(super::Monomial, BigRational)> = p
        .terms()
        .filter(|(m, _)| {
            w.monomial_weight(p.ctx(), m)
                .map(|d| d == top)
                .unwrap_or(false)
        })
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    Poly::from_terms(p.ctx(), terms)
}

/// True when every monomial of `p` has the same weighted degree.
pub fn is_homogeneous(p: &Poly, w: &Weights) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    Ok(principal_component(p, w)? == *p)
}
