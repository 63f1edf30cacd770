//! Exact sparse multivariate (Laurent) polynomial arithmetic over the
//! rationals.
//!
//! A [`Context`] fixes the ambient variable set: a block of `n` variables
//! `x1..xn` (optionally Laurent) followed by optional named slots `y`, `z`,
//! `u`, `t`, `s`. Exponent vectors always carry `n + 5` machine integers;
//! disabled slots must stay zero. Terms are kept in graded-lexicographic
//! order with `x1 > ... > xn > y > z > u > t > s`, which fixes canonical
//! printing, hashing and equality.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so polynomials can be shared freely across threads.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

mod fmt;
mod parse;
mod weights;

pub use parse::parse;
pub use weights::{is_homogeneous, principal_component, weight_degree, Weights};

/// Number of named non-x slots (`y`, `z`, `u`, `t`, `s`).
pub const EXTRA_COUNT: usize = 5;

const EXTRA_NAMES: [&str; EXTRA_COUNT] = ["y", "z", "u", "t", "s"];

/// A variable of the ambient ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Var {
    /// `x{i+1}` (zero-based index).
    X(usize),
    Y,
    Z,
    U,
    T,
    S,
}

impl Var {
    fn extra_index(self) -> Option<usize> {
        match self {
            Var::X(_) => None,
            Var::Y => Some(0),
            Var::Z => Some(1),
            Var::U => Some(2),
            Var::T => Some(3),
            Var::S => Some(4),
        }
    }

    pub fn name(self) -> String {
        match self {
            Var::X(i) => format!("x{}", i + 1),
            other => EXTRA_NAMES[other.extra_index().unwrap()].to_string(),
        }
    }
}

/// Variable set and Laurent discipline shared by the terms of a polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Context {
    n: usize,
    laurent: bool,
    extras: [bool; EXTRA_COUNT],
}

impl Context {
    /// `Q[x1..xn]`.
    pub fn x_poly(n: usize) -> Self {
        Context {
            n,
            laurent: false,
            extras: [false; EXTRA_COUNT],
        }
    }

    /// `Q[x1,x1^-1,..,xn,xn^-1]`.
    pub fn x_laurent(n: usize) -> Self {
        Context {
            n,
            laurent: true,
            extras: [false; EXTRA_COUNT],
        }
    }

    /// `Q[x1..xn, y]`.
    pub fn xy(n: usize) -> Self {
        Context::x_poly(n).with(Var::Y)
    }

    /// `Q[x1,x1^-1,..,y]` — the Laurent ring the coordinate ring embeds into.
    pub fn xy_laurent(n: usize) -> Self {
        Context::x_laurent(n).with(Var::Y)
    }

    /// `Q[x1..xn, y, z]` — ambient ring of a hypersurface.
    pub fn ambient(n: usize) -> Self {
        Context::x_poly(n).with(Var::Y).with(Var::Z)
    }

    pub fn with(mut self, v: Var) -> Self {
        match v.extra_index() {
            Some(k) => self.extras[k] = true,
            None => panic!("with() takes a named slot, not an x variable"),
        }
        self
    }

    pub fn without(mut self, v: Var) -> Self {
        match v.extra_index() {
            Some(k) => self.extras[k] = false,
            None => panic!("without() takes a named slot, not an x variable"),
        }
        self
    }

    pub fn with_laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn width(&self) -> usize {
        self.n + EXTRA_COUNT
    }

    pub fn has(&self, v: Var) -> bool {
        match v {
            Var::X(i) => i < self.n,
            other => self.extras[other.extra_index().unwrap()],
        }
    }

    /// Exponent slot of a variable: the x block first, then y, z, u, t, s.
    pub fn slot(&self, v: Var) -> usize {
        match v {
            Var::X(i) => {
                assert!(i < self.n, "x index out of range");
                i
            }
            other => self.n + other.extra_index().unwrap(),
        }
    }

    pub(crate) fn var_at(&self, slot: usize) -> Var {
        if slot < self.n {
            Var::X(slot)
        } else {
            match slot - self.n {
                0 => Var::Y,
                1 => Var::Z,
                2 => Var::U,
                3 => Var::T,
                4 => Var::S,
                _ => panic!("slot out of range"),
            }
        }
    }

    /// All enabled variables in canonical order.
    pub fn vars(&self) -> Vec<Var> {
        let mut out: Vec<Var> = (0..self.n).map(Var::X).collect();
        for (k, &on) in self.extras.iter().enumerate() {
            if on {
                out.push(self.var_at(self.n + k));
            }
        }
        out
    }

    fn check_exponent(&self, slot: usize, e: i64) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        let v = self.var_at(slot);
        if !self.has(v) {
            return Err(Error::UnknownVariable { var: v.name() });
        }
        if e < 0 && (slot >= self.n || !self.laurent) {
            return Err(Error::NegativeExponent { var: v.name() });
        }
        Ok(())
    }
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("exponent overflow")
}

/// Exponent vector of a term, one slot per ambient variable.
///
/// Ordered graded-lexicographically: first by total exponent sum, ties by
/// the leftmost differing slot (so `x1` dominates).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub(crate) Vec<i64>);

impl Monomial {
    pub fn unit(width: usize) -> Self {
        Monomial(vec![0; width])
    }

    pub fn exponent(&self, slot: usize) -> i64 {
        self.0[slot]
    }

    pub fn total(&self) -> i64 {
        self.0.iter().copied().fold(0, checked_add)
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| checked_add(a, b))
                .collect(),
        )
    }

    /// Componentwise quotient; `None` when not divisible in the polynomial
    /// sense (some exponent of `self` below the divisor's).
    fn try_div(&self, d: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (&a, &b) in self.0.iter().zip(&d.0) {
            out.push(a.checked_sub(b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Extended degree value: `-∞` for the zero polynomial, an integer otherwise.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Degree {
    NegInf,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == Degree::NegInf
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: no zero coefficient is stored, and every exponent vector is
/// legal for the context (disabled slots zero, negative exponents only on
/// Laurent x slots).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    ctx: Context,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(ctx: Context) -> Self {
        Poly {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: Context) -> Self {
        Poly::constant(ctx, BigRational::one())
    }

    pub fn constant(ctx: Context, c: BigRational) -> Self {
        let mut p = Poly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(ctx.width()), c);
        }
        p
    }

    pub fn int(ctx: Context, c: i64) -> Self {
        Poly::constant(ctx, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(ctx: Context, v: Var) -> Self {
        Poly::monomial(ctx, &[(v, 1)], BigRational::one()).expect("variable not in context")
    }

    /// Builds `c * prod v^e`; the exponents must be legal for `ctx`.
    pub fn monomial(ctx: Context, exps: &[(Var, i64)], c: BigRational) -> Result<Self> {
        let mut mono = Monomial::unit(ctx.width());
        for &(v, e) in exps {
            if let Var::X(i) = v {
                if i >= ctx.n {
                    return Err(Error::UnknownVariable { var: v.name() });
                }
            }
            let s = ctx.slot(v);
            mono.0[s] = checked_add(mono.0[s], e);
        }
        for (slot, &e) in mono.0.iter().enumerate() {
            ctx.check_exponent(slot, e)?;
        }
        let mut p = Poly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        Ok(p)
    }

    pub fn from_terms<I>(ctx: Context, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Poly::zero(ctx);
        for (mono, c) in terms {
            if mono.0.len() != ctx.width() {
                return Err(Error::ContextMismatch("exponent vector width".into()));
            }
            for (slot, &e) in mono.0.iter().enumerate() {
                ctx.check_exponent(slot, e)?;
            }
            p.add_term(mono, c);
        }
        Ok(p)
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Greatest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, mono: &Monomial) -> BigRational {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_unit())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.total())
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    pub fn degree_in(&self, v: Var) -> Degree {
        let slot = self.ctx.slot(v);
        self.terms
            .keys()
            .map(|m| m.exponent(slot))
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_ctx(&self, other: &Poly) {
        assert_eq!(self.ctx, other.ctx, "ring context mismatch");
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ctx);
        }
        let mut out = Poly::zero(self.ctx);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.ctx);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Multiplies by the (Laurent) monomial `x^delta`; the result must be
    /// legal for the context.
    pub fn shift_x(&self, delta: &[i64]) -> Result<Poly> {
        assert_eq!(delta.len(), self.ctx.n);
        let mut out = Poly::zero(self.ctx);
        for (m, c) in &self.terms {
            let mut e = m.clone();
            for (i, &d) in delta.iter().enumerate() {
                e.0[i] = checked_add(e.0[i], d);
                self.ctx.check_exponent(i, e.0[i])?;
            }
            out.terms.insert(e, c.clone());
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in `target`, validating every exponent.
    pub fn into_context(&self, target: Context) -> Result<Poly> {
        if target.n != self.ctx.n {
            return Err(Error::ContextMismatch(format!(
                "x block size {} vs {}",
                self.ctx.n, target.n
            )));
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            for (slot, &e) in m.0.iter().enumerate() {
                target.check_exponent(slot, e)?;
            }
            out.terms.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Groups terms by the exponent of `v`, stripping that slot.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i64, Poly> {
        let slot = self.ctx.slot(v);
        let mut out: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(slot);
            let mut stripped = m.clone();
            stripped.0[slot] = 0;
            out.entry(e)
                .or_insert_with(|| Poly::zero(self.ctx))
                .add_term(stripped, c.clone());
        }
        out
    }

    /// Substitutes `rep` for `v`; all exponents of `v` must be nonnegative.
    pub fn subst(&self, v: Var, rep: &Poly) -> Result<Poly> {
        if rep.ctx != self.ctx {
            return Err(Error::ContextMismatch("substitution operand".into()));
        }
        let slot = self.ctx.slot(v);
        let max_e = self
            .terms
            .keys()
            .map(|m| m.exponent(slot))
            .max()
            .unwrap_or(0);
        if self.terms.keys().any(|m| m.exponent(slot) < 0) {
            return Err(Error::NegativeExponent { var: v.name() });
        }
        // Precompute the powers of the replacement once.
        let mut powers = Vec::with_capacity(max_e as usize + 1);
        powers.push(Poly::one(self.ctx));
        for k in 1..=max_e {
            powers.push(&powers[(k - 1) as usize] * rep);
        }
        let mut out = Poly::zero(self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponent(slot) as usize;
            let mut stripped = m.clone();
            stripped.0[slot] = 0;
            let mut base = Poly::zero(self.ctx);
            base.terms.insert(stripped, c.clone());
            out = &out + &(&base * &powers[e]);
        }
        Ok(out)
    }

    /// Sets `v := 0`. Terms with positive exponent vanish; a negative
    /// exponent is a pole and is rejected.
    pub fn eval_var_zero(&self, v: Var) -> Result<Poly> {
        let slot = self.ctx.slot(v);
        let mut out = Poly::zero(self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponent(slot);
            if e < 0 {
                return Err(Error::NegativeExponent { var: v.name() });
            }
            if e == 0 {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let slot = self.ctx.slot(v);
        let mut out = Poly::zero(self.ctx);
        for (m, c) in &self.terms {
            let e = m.exponent(slot);
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[slot] = e - 1;
            out.add_term(d, c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// True when some term has a negative exponent on some x slot.
    pub fn has_pole(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.0[..self.ctx.n].iter().any(|&e| e < 0))
    }

    /// Componentwise minimum of the x exponents over the support.
    pub fn min_x_exponents(&self) -> Option<Vec<i64>> {
        if self.is_zero() {
            return None;
        }
        let n = self.ctx.n;
        let mut mins = vec![i64::MAX; n];
        for m in self.terms.keys() {
            for (slot, &e) in m.0.iter().take(n).enumerate() {
                mins[slot] = mins[slot].min(e);
            }
        }
        Some(mins)
    }

    /// Exact single-divisor division: `Some(q)` iff `self == q * d`.
    pub fn try_div_exact(&self, d: &Poly) -> Option<Poly> {
        self.assert_same_ctx(d);
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let mut rem = self.clone();
        let mut q = Poly::zero(self.ctx);
        while let Some((lm, lc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = lm.try_div(&dm)?;
            for (slot, &e) in qm.0.iter().enumerate() {
                if self.ctx.check_exponent(slot, e).is_err() {
                    return None;
                }
            }
            let qc = &lc / &dc;
            let mut qt = Poly::zero(self.ctx);
            qt.terms.insert(qm, qc);
            rem = &rem - &(&qt * d);
            q = &q + &qt;
        }
        Some(q)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_ctx(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_ctx(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut out = Poly::zero(self.ctx);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_ctx(rhs);
        let mut out = Poly::zero(self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Division by a polynomial monic in `y`: `f = q * div + rem` with
/// `deg_y(rem) < deg_y(div)`. The quotient/remainder pair is unique; the
/// dividend may be Laurent in the x block.
pub fn y_division(f: &Poly, div: &Poly) -> Result<(Poly, Poly)> {
    let ctx = f.ctx();
    let div = div.into_context(ctx)?;
    let r = match monic_y_degree(&div) {
        Some(r) => r,
        None => return Err(Error::NonMonicDivisor),
    };
    let y_slot = ctx.slot(Var::Y);
    let mut rem = f.clone();
    let mut q = Poly::zero(ctx);
    loop {
        let d = match rem.degree_in(Var::Y) {
            Degree::Finite(d) if d >= r => d,
            _ => break,
        };
        // Peel the top y-layer; monicity makes the step exact.
        let mut qt = Poly::zero(ctx);
        for (m, c) in rem.terms() {
            if m.exponent(y_slot) == d {
                let mut e = m.clone();
                e.0[y_slot] = d - r;
                qt.terms.insert(e, c.clone());
            }
        }
        rem = &rem - &(&qt * &div);
        q = &q + &qt;
    }
    Ok((q, rem))
}

/// Degree of `p` as a monic-in-y polynomial, if it is one of degree >= 1:
/// the top y-layer must be the bare monomial `y^r` with coefficient 1.
pub fn monic_y_degree(p: &Poly) -> Option<i64> {
    let ctx = p.ctx();
    if !ctx.has(Var::Y) {
        return None;
    }
    let y_slot = ctx.slot(Var::Y);
    let r = p.degree_in(Var::Y).finite()?;
    if r < 1 {
        return None;
    }
    let top: Vec<_> = p.terms().filter(|(m, _)| m.exponent(y_slot) == r).collect();
    if top.len() != 1 {
        return None;
    }
    let (m, c) = top[0];
    if m.0.iter().enumerate().all(|(s, &e)| s == y_slot || e == 0) && c.is_one() {
        Some(r)
    } else {
        None
    }
}

/// Convenience constructor for rationals.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for integers as rationals.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ctx: Context, s: &str) -> Poly {
        parse(s, ctx).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let ctx = Context::ambient(1);
        let x2z = p(ctx, "x1^2*z");
        let y2 = p(ctx, "y^2");
        let (mx, _) = x2z.leading_term().unwrap();
        let (my, _) = y2.leading_term().unwrap();
        assert!(mx > my); // degree 3 beats degree 2
        let x = p(ctx, "x1");
        let y = p(ctx, "y");
        assert!(x.leading_term().unwrap().0 > y.leading_term().unwrap().0);
    }

    #[test]
    fn laurent_exponent_addition() {
        let ctx = Context::x_laurent(1);
        let a = p(ctx, "x1^-2");
        let b = p(ctx, "x1^3");
        assert_eq!(&a * &b, p(ctx, "x1"));
        assert_eq!(p(ctx, "x1^-2 * x1^3"), p(ctx, "x1"));
    }

    #[test]
    fn negative_exponent_rejected_outside_laurent() {
        let ctx = Context::ambient(1);
        assert!(parse("x1^-1", ctx).is_err());
        assert!(parse("y^-1", Context::xy_laurent(1)).is_err());
    }

    #[test]
    fn y_division_examples() {
        let ctx = Context::xy(1);
        let q = p(ctx, "y^2 - 1");
        // y^3 = y*(y^2-1) + y
        let (quo, rem) = y_division(&p(ctx, "y^3"), &q).unwrap();
        assert_eq!(quo, p(ctx, "y"));
        assert_eq!(rem, p(ctx, "y"));
        // exact division
        let (quo, rem) = y_division(&q, &q).unwrap();
        assert_eq!(quo, Poly::one(ctx));
        assert!(rem.is_zero());
        // Laurent coefficients divide through
        let lctx = Context::xy_laurent(1);
        let f = p(lctx, "x1^-1*y^2");
        let (quo, rem) = y_division(&f, &q).unwrap();
        assert_eq!(quo, p(lctx, "x1^-1"));
        assert_eq!(rem, p(lctx, "x1^-1"));
    }

    #[test]
    fn y_division_rejects_non_monic() {
        let ctx = Context::xy(1);
        assert!(y_division(&p(ctx, "y^3"), &p(ctx, "2*y^2 - 1")).is_err());
        assert!(y_division(&p(ctx, "y^3"), &p(ctx, "x1*y^2 + 1")).is_err());
    }

    #[test]
    fn exact_division() {
        let ctx = Context::ambient(1);
        let f = p(ctx, "x1*z - y^2 + 1");
        let g = p(ctx, "x1^2*y - z");
        let prod = &f * &g;
        assert_eq!(prod.try_div_exact(&f).unwrap(), g);
        assert!(p(ctx, "x1").try_div_exact(&f).is_none());
    }

    #[test]
    fn substitution() {
        let lctx = Context::ambient(1).with_laurent();
        let f = p(lctx, "x1*z - y^2 + 1");
        let rep = p(lctx, "x1^-1*y^2 - x1^-1");
        let image = f.subst(Var::Z, &rep).unwrap();
        assert!(image.is_zero());
    }

    #[test]
    fn coefficients_in_y() {
        let ctx = Context::xy(2);
        let f = p(ctx, "x1*y^2 + x2*y^2 + y - 3");
        let by = f.coefficients_in(Var::Y);
        assert_eq!(by[&2], p(ctx, "x1 + x2"));
        assert_eq!(by[&1], Poly::one(ctx));
        assert_eq!(by[&0], p(ctx, "-3"));
    }
}
