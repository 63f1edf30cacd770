//! Coordinate rings of the hypersurfaces `x^[m] z = Q(x, y)`.
//!
//! Elements are kept in a canonical normal form: no monomial divisible by
//! `x^[m] z`. The single rewrite rule `x^[m] z -> Q` is confluent because
//! `Q` is z-free, so normal forms are unique and equality is decidable.
//! The Laurent embedding `z -> x^[-m] Q` realizes the ring inside
//! `Q[x, x^-1, y]`; membership of a Laurent polynomial is decided by Q-adic
//! expansion.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, monic_y_degree, parse, y_division, Context, Degree, Poly, Var};

/// Family of `r` sheet polynomials `sigma_i(x)` with pairwise distinct
/// constant terms and all non-constant monomials divisible by `x1...xn`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SigmaFamily {
    polys: Vec<Poly>,
}

impl SigmaFamily {
    pub fn new(polys: Vec<Poly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::SigmaInvariant {
                condition: 1,
                detail: "a sigma family needs at least one sheet".into(),
            });
        }
        let n = polys[0].ctx().n();
        let ctx = Context::x_poly(n);
        let polys: Vec<Poly> = polys
            .iter()
            .map(|p| p.into_context(ctx))
            .collect::<Result<_>>()?;
        let mut constants = Vec::new();
        for (idx, p) in polys.iter().enumerate() {
            let mut c = p.clone();
            for i in 0..n {
                c = c.eval_var_zero(Var::X(i))?;
            }
            let c = c.as_constant().unwrap();
            if constants.contains(&c) {
                return Err(Error::SigmaInvariant {
                    condition: 1,
                    detail: format!("sigma_{} repeats the constant term {}", idx + 1, c),
                });
            }
            constants.push(c.clone());
            // Condition (2): sigma_i - sigma_i(0) lies in x1...xn * Q[x].
            let tail = p - &Poly::constant(ctx, c);
            for (mono, _) in tail.terms() {
                if (0..n).any(|i| mono.exponent(i) == 0) {
                    return Err(Error::SigmaInvariant {
                        condition: 2,
                        detail: format!(
                            "sigma_{} has the non-constant monomial {} not divisible by x1..x{}",
                            idx + 1,
                            Poly::from_terms(ctx, [(mono.clone(), int(1))]).unwrap(),
                            n
                        ),
                    });
                }
            }
        }
        Ok(SigmaFamily { polys })
    }

    pub fn parse_family(texts: &[String], n: usize) -> Result<Self> {
        let ctx = Context::x_poly(n);
        let polys = texts
            .iter()
            .map(|t| parse(t, ctx))
            .collect::<Result<Vec<_>>>()?;
        SigmaFamily::new(polys)
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn sheet(&self, i: usize) -> &Poly {
        &self.polys[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Poly> {
        self.polys.iter()
    }
}

/// The hypersurface `x^[m] z - Q(x, y) = 0` with `Q` monic in `y` of degree
/// `r >= 2` and all `m_k >= 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypersurface {
    n: usize,
    m: Vec<i64>,
    q: Poly,
    r: i64,
    sigma: Option<SigmaFamily>,
}

impl Hypersurface {
    pub fn new(n: usize, m: Vec<i64>, q: Poly) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidHypersurface("n must be at least 1".into()));
        }
        if m.len() != n {
            return Err(Error::InvalidHypersurface(format!(
                "multi-index has {} entries for n = {n}",
                m.len()
            )));
        }
        if m.iter().any(|&mk| mk < 1) {
            return Err(Error::InvalidHypersurface(
                "every exponent m_k must be at least 1".into(),
            ));
        }
        let q = q.into_context(Context::xy(n))?;
        let r = match monic_y_degree(&q) {
            Some(r) if r >= 2 => r,
            Some(r) => {
                return Err(Error::InvalidHypersurface(format!(
                    "Q must have degree r >= 2 in y, got {r}"
                )))
            }
            None => return Err(Error::InvalidHypersurface("Q must be monic in y".into())),
        };
        Ok(Hypersurface {
            n,
            m,
            q,
            r,
            sigma: None,
        })
    }

    /// Builds the hypersurface with `Q = prod (y - sigma_i)`.
    pub fn from_sigma(m: Vec<i64>, sigma: SigmaFamily) -> Result<Arc<Self>> {
        let n = sigma.sheet(0).ctx().n();
        let ctx = Context::xy(n);
        let y = Poly::var(ctx, Var::Y);
        let mut q = Poly::one(ctx);
        for s in sigma.iter() {
            q = &q * &(&y - &s.into_context(ctx)?);
        }
        let mut h = Hypersurface::new(n, m, q)?;
        h.sigma = Some(sigma);
        Ok(Arc::new(h))
    }

    pub fn with_sigma(mut self, sigma: SigmaFamily) -> Result<Arc<Self>> {
        if sigma.len() as i64 != self.r {
            return Err(Error::InvalidHypersurface(format!(
                "sigma family has {} sheets but deg_y Q = {}",
                sigma.len(),
                self.r
            )));
        }
        // The attached family must actually split Q.
        let ctx = Context::xy(self.n);
        let y = Poly::var(ctx, Var::Y);
        let mut q = Poly::one(ctx);
        for s in sigma.iter() {
            q = &q * &(&y - &s.into_context(ctx)?);
        }
        if q != self.q {
            return Err(Error::InvalidHypersurface(
                "sigma family does not multiply out to Q".into(),
            ));
        }
        self.sigma = Some(sigma);
        Ok(Arc::new(self))
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn q(&self) -> &Poly {
        &self.q
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn sigma(&self) -> Option<&SigmaFamily> {
        self.sigma.as_ref()
    }

    pub fn ambient_ctx(&self) -> Context {
        Context::ambient(self.n)
    }

    pub fn laurent_ctx(&self) -> Context {
        Context::xy_laurent(self.n)
    }

    /// The defining polynomial `x^[m] z - Q`.
    pub fn defining_poly(&self) -> Poly {
        let ctx = self.ambient_ctx();
        let mut exps: Vec<(Var, i64)> = self
            .m
            .iter()
            .enumerate()
            .map(|(i, &mk)| (Var::X(i), mk))
            .collect();
        exps.push((Var::Z, 1));
        let lead = Poly::monomial(ctx, &exps, int(1)).unwrap();
        &lead - &self.q.into_context(ctx).unwrap()
    }

    fn divisible_by_xm_z(&self, mono: &crate::poly::Monomial, ctx: Context) -> bool {
        let z_slot = ctx.slot(Var::Z);
        if mono.exponent(z_slot) < 1 {
            return false;
        }
        (0..self.n).all(|i| mono.exponent(i) >= self.m[i])
    }

    /// Exhaustively rewrites `x^[m] z -> Q`. Terminates because each step
    /// strictly reduces the z-degree of the rewritten term.
    pub fn normal_form(self: &Arc<Self>, p: &Poly) -> RingElement {
        let ctx = p.ctx();
        assert!(
            ctx.n() == self.n && ctx.has(Var::Y) && ctx.has(Var::Z) && !ctx.is_laurent(),
            "normal_form expects a polynomial of the ambient ring"
        );
        let q = self.q.into_context(ctx).unwrap();
        let z_slot = ctx.slot(Var::Z);
        let mut cur = p.clone();
        loop {
            let reducible: Vec<_> = cur
                .terms()
                .filter(|(m, _)| self.divisible_by_xm_z(m, ctx))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            if reducible.is_empty() {
                break;
            }
            for (mono, coeff) in reducible {
                let mut stripped = mono.clone();
                for i in 0..self.n {
                    stripped.0[i] -= self.m[i];
                }
                stripped.0[z_slot] -= 1;
                let factor = Poly::from_terms(ctx, [(stripped, coeff.clone())]).unwrap();
                let replacement = &factor * &q;
                let original = Poly::from_terms(ctx, [(mono, coeff)]).unwrap();
                cur = &(&cur - &original) + &replacement;
            }
        }
        RingElement {
            owner: Arc::clone(self),
            nf: cur,
        }
    }

    pub fn element(self: &Arc<Self>, text: &str) -> Result<RingElement> {
        let p = parse(text, self.ambient_ctx())?;
        Ok(self.normal_form(&p))
    }

    pub fn zero_element(self: &Arc<Self>) -> RingElement {
        RingElement {
            owner: Arc::clone(self),
            nf: Poly::zero(self.ambient_ctx()),
        }
    }

    /// Chart coordinate `t_i = x^[-m] (y - sigma_i)` as a Laurent element.
    /// Cross-checks the alternative expression `t_i * prod_{j != i} (y -
    /// sigma_j) = z` in the ring.
    pub fn chart_coordinate(self: &Arc<Self>, i: usize) -> Result<Poly> {
        let sigma = self.sigma.as_ref().ok_or(Error::NoSigmaFamily)?;
        if i >= sigma.len() {
            return Err(Error::InvalidHypersurface(format!(
                "sheet index {} out of range (r = {})",
                i + 1,
                sigma.len()
            )));
        }
        let lctx = self.laurent_ctx();
        let y = Poly::var(lctx, Var::Y);
        let neg_m: Vec<i64> = self.m.iter().map(|&mk| -mk).collect();
        let t_i = (&y - &sigma.sheet(i).into_context(lctx)?).shift_x(&neg_m)?;
        // t_i * prod_{j != i} (y - sigma_j) must be z in B.
        let mut prod = t_i.clone();
        for (j, s) in sigma.iter().enumerate() {
            if j != i {
                prod = &prod * &(&y - &s.into_context(lctx)?);
            }
        }
        match self.laurent_membership(&prod)? {
            Membership::Member(e) => {
                let z = self.normal_form(&Poly::var(self.ambient_ctx(), Var::Z));
                if e != z {
                    return Err(Error::Internal(
                        "chart coordinate does not multiply back to z".into(),
                    ));
                }
            }
            Membership::NonMember { .. } => {
                return Err(Error::Internal(
                    "chart coordinate product left the coordinate ring".into(),
                ));
            }
        }
        Ok(t_i)
    }

    /// Q-adic expansion of a Laurent polynomial `f`: the unique
    /// `f = sum_k c_k (x^[-m] Q)^k` with `deg_y c_k < r`. `f` lies in the
    /// coordinate ring iff every `c_k` is pole-free, in which case the
    /// element with normal form `sum c_k z^k` is returned.
    pub fn laurent_membership(self: &Arc<Self>, f: &Poly) -> Result<Membership> {
        let lctx = f.ctx();
        assert!(
            lctx.n() == self.n && lctx.is_laurent() && lctx.has(Var::Y) && !lctx.has(Var::Z),
            "membership expects a Laurent polynomial without z"
        );
        let q = self.q.into_context(lctx)?;
        let mut layers: Vec<Poly> = Vec::new();
        let mut rest = f.clone();
        loop {
            let (quo, rem) = y_division(&rest, &q)?;
            layers.push(rem);
            if quo.is_zero() {
                break;
            }
            rest = quo;
        }
        // c_k = b_k * x^{k m}; all must be pole-free for membership.
        let ctx = self.ambient_ctx();
        let mut acc = Poly::zero(ctx.with(Var::U).with(Var::T).with(Var::S));
        let wide = acc.ctx();
        for (k, b_k) in layers.iter().enumerate() {
            let shift: Vec<i64> = self.m.iter().map(|&mk| mk * k as i64).collect();
            let c_k = b_k.shift_x(&shift)?;
            if c_k.has_pole() {
                return Ok(Membership::NonMember {
                    layer: k,
                    witness: c_k,
                });
            }
            let z_pow = Poly::monomial(wide, &[(Var::Z, k as i64)], int(1)).unwrap();
            let c_k_wide = c_k.into_context(wide)?;
            acc = &acc + &(&c_k_wide * &z_pow);
        }
        let narrowed = narrow_extras(&acc, f.ctx(), ctx)?;
        Ok(Membership::Member(self.normal_form(&narrowed)))
    }

    /// True when the monomial is in normal form (not divisible by `x^[m] z`).
    pub fn is_reduced(&self, mono: &crate::poly::Monomial, ctx: Context) -> bool {
        !self.divisible_by_xm_z(mono, ctx)
    }

    /// All reduced monomials of the ambient ring with total degree at most
    /// `max_total`, in increasing graded-lex order.
    pub fn reduced_monomials(&self, max_total: i64) -> Vec<Poly> {
        let ctx = self.ambient_ctx();
        let mut out = Vec::new();
        let mut exps = vec![0i64; self.n + 2];
        collect_bounded(&mut exps, 0, max_total, &mut |e| {
            let mut pairs: Vec<(Var, i64)> = (0..self.n).map(|i| (Var::X(i), e[i])).collect();
            pairs.push((Var::Y, e[self.n]));
            pairs.push((Var::Z, e[self.n + 1]));
            let mono = Poly::monomial(ctx, &pairs, int(1)).unwrap();
            let (m, _) = mono.leading_term().unwrap();
            if self.is_reduced(m, ctx) {
                out.push(mono.clone());
            }
        });
        out.sort_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0));
        out
    }

    /// Decomposition of the special fiber: squarefree factors of
    /// `P(y) = Q(0, y)` with multiplicities, split further at rational
    /// roots. The component count is the degree of the squarefree part.
    pub fn special_fiber(&self) -> Result<SpecialFiber> {
        let mut p = self.q.clone();
        for i in 0..self.n {
            p = p.eval_var_zero(Var::X(i))?;
        }
        let factors = squarefree_split(&p)?;
        let reduced_degree: i64 = factors
            .iter()
            .map(|(f, _)| f.degree_in(Var::Y).finite().unwrap_or(0))
            .sum();
        Ok(SpecialFiber {
            p,
            factors,
            reduced_degree,
        })
    }
}

fn collect_bounded(exps: &mut Vec<i64>, at: usize, budget: i64, f: &mut impl FnMut(&[i64])) {
    if at == exps.len() {
        f(exps);
        return;
    }
    for e in 0..=budget {
        exps[at] = e;
        collect_bounded(exps, at + 1, budget - e, f);
    }
    exps[at] = 0;
}

/// Carries extra slots (u, t, s) from `src` over to `base`, enabling only
/// the ones actually used.
fn narrow_extras(p: &Poly, src: Context, base: Context) -> Result<Poly> {
    let mut target = base;
    for v in [Var::U, Var::T, Var::S] {
        if src.has(v) {
            let slot = p.ctx().slot(v);
            if p.terms().any(|(m, _)| m.exponent(slot) != 0) {
                target = target.with(v);
            }
        }
    }
    p.into_context(target)
}

/// Outcome of the membership test: the element, or the first offending
/// Q-adic layer with a pole.
#[derive(Clone, Debug)]
pub enum Membership {
    Member(RingElement),
    NonMember { layer: usize, witness: Poly },
}

impl Membership {
    pub fn member(self) -> Option<RingElement> {
        match self {
            Membership::Member(e) => Some(e),
            Membership::NonMember { .. } => None,
        }
    }
}

/// An element of the coordinate ring, stored by its unique normal form.
#[derive(Clone, Debug)]
pub struct RingElement {
    owner: Arc<Hypersurface>,
    nf: Poly,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        *self.owner == *other.owner && self.nf == other.nf
    }
}

impl Eq for RingElement {}

impl RingElement {
    pub fn owner(&self) -> &Arc<Hypersurface> {
        &self.owner
    }

    pub fn nf(&self) -> &Poly {
        &self.nf
    }

    pub fn is_zero(&self) -> bool {
        self.nf.is_zero()
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        RingElement {
            owner: self.owner.clone(),
            nf: &self.nf + &other.nf,
        }
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        RingElement {
            owner: self.owner.clone(),
            nf: &self.nf - &other.nf,
        }
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        self.owner.normal_form(&(&self.nf * &other.nf))
    }

    pub fn scale(&self, c: &BigRational) -> RingElement {
        RingElement {
            owner: self.owner.clone(),
            nf: self.nf.scale(c),
        }
    }

    pub fn total_degree(&self) -> Degree {
        self.nf.total_degree()
    }

    /// Substitutes `z := x^[-m] Q`, landing in the Laurent ring. The map is
    /// an injective ring homomorphism.
    pub fn laurent_embed(&self) -> Poly {
        laurent_embed_poly(&self.owner, &self.nf)
    }
}

impl std::fmt::Display for RingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.nf)
    }
}

/// Laurent image of an arbitrary ambient polynomial (not necessarily in
/// normal form): substitute `z := x^[-m] Q` directly.
pub fn laurent_embed_poly(h: &Hypersurface, p: &Poly) -> Poly {
    let mut wide = p.ctx().with_laurent();
    let p_wide = p.into_context(wide).unwrap();
    let neg_m: Vec<i64> = h.m().iter().map(|&mk| -mk).collect();
    let z_image = h.q().into_context(wide).unwrap().shift_x(&neg_m).unwrap();
    let image = p_wide.subst(Var::Z, &z_image).unwrap();
    wide = wide.without(Var::Z);
    image.into_context(wide).unwrap()
}

/// Squarefree decomposition (Yun) of a univariate polynomial in `y`,
/// refined by splitting off rational roots. Factors are pairwise coprime
/// and squarefree; the product with multiplicities reproduces the input.
fn squarefree_split(p: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    for (f, mult) in yun_squarefree(p)? {
        for piece in split_rational_roots(&f) {
            out.push((piece, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        a.degree_in(Var::Y)
            .cmp(&b.degree_in(Var::Y))
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    Ok(out)
}

fn yun_squarefree(p: &Poly) -> Result<Vec<(Poly, u32)>> {
    let ctx = p.ctx();
    if p.degree_in(Var::Y).finite().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let dp = p.derivative(Var::Y);
    let g = gcd_in_y(p, &dp);
    let mut w = p.try_div_exact(&g).expect("gcd divides");
    let mut s = dp.try_div_exact(&g).expect("gcd divides");
    let mut out = Vec::new();
    let mut mult = 1u32;
    loop {
        let z = &s - &w.derivative(Var::Y);
        if z.is_zero() {
            if w.degree_in(Var::Y).finite().unwrap_or(0) > 0 {
                out.push((make_monic_y(&w), mult));
            }
            break;
        }
        let f = gcd_in_y(&w, &z);
        if f.degree_in(Var::Y).finite().unwrap_or(0) > 0 {
            out.push((make_monic_y(&f), mult));
        }
        w = w.try_div_exact(&f).expect("factor divides");
        s = z.try_div_exact(&f).expect("factor divides");
        mult += 1;
        let _ = ctx;
    }
    Ok(out)
}

/// Monic gcd of two univariate polynomials in `y` over the rationals.
fn gcd_in_y(a: &Poly, b: &Poly) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = rem_in_y(&a, &b);
        a = b;
        b = r;
    }
    if a.is_zero() {
        a
    } else {
        make_monic_y(&a)
    }
}

fn rem_in_y(a: &Poly, b: &Poly) -> Poly {
    let ctx = a.ctx();
    let db = b.degree_in(Var::Y).finite().expect("nonzero divisor");
    let lead_b = b.coefficients_in(Var::Y)[&db]
        .as_constant()
        .expect("univariate");
    let mut rem = a.clone();
    loop {
        let da = match rem.degree_in(Var::Y) {
            Degree::Finite(d) if d >= db => d,
            _ => return rem,
        };
        let lead_a = rem.coefficients_in(Var::Y)[&da]
            .as_constant()
            .expect("univariate");
        let qt = Poly::monomial(ctx, &[(Var::Y, da - db)], &lead_a / &lead_b).unwrap();
        rem = &rem - &(&qt * b);
    }
}

fn make_monic_y(p: &Poly) -> Poly {
    let d = p.degree_in(Var::Y).finite().expect("nonzero");
    let lead = p.coefficients_in(Var::Y)[&d]
        .as_constant()
        .expect("univariate");
    p.scale(&lead.recip())
}

/// Splits off linear factors `y - root` at rational roots. The divisor
/// search is skipped when the constant data is too large to enumerate.
fn split_rational_roots(p: &Poly) -> Vec<Poly> {
    const ENUM_BOUND: i64 = 1_000_000;
    let ctx = p.ctx();
    let mut rest = p.clone();
    let mut out = Vec::new();
    loop {
        let deg = rest.degree_in(Var::Y).finite().unwrap_or(0);
        if deg <= 1 {
            break;
        }
        let coeffs = rest.coefficients_in(Var::Y);
        // Root zero first.
        if !coeffs.contains_key(&0) {
            out.push(Poly::var(ctx, Var::Y));
            rest = rest
                .try_div_exact(&Poly::var(ctx, Var::Y))
                .expect("y divides");
            continue;
        }
        // Rational root theorem on the integer-cleared polynomial.
        let denom_lcm = coeffs
            .values()
            .flat_map(|c| c.as_constant())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: std::collections::BTreeMap<i64, BigInt> = coeffs
            .iter()
            .map(|(&e, c)| {
                let v = c.as_constant().unwrap() * BigRational::from_integer(denom_lcm.clone());
                (e, v.to_integer())
            })
            .collect();
        let a0 = scaled[&0].clone();
        let alead = scaled[&deg].clone();
        if a0.magnitude() > &BigInt::from(ENUM_BOUND).magnitude().clone()
            || alead.magnitude() > &BigInt::from(ENUM_BOUND).magnitude().clone()
        {
            break;
        }
        let mut found = None;
        'search: for p_div in divisors(&a0) {
            for q_div in divisors(&alead) {
                for sign in [1i64, -1] {
                    let cand = BigRational::new(p_div.clone() * BigInt::from(sign), q_div.clone());
                    if eval_univar(&rest, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(root) => {
                let lin = &Poly::var(ctx, Var::Y) - &Poly::constant(ctx, root);
                rest = rest.try_div_exact(&lin).expect("root divides");
                out.push(lin);
            }
            None => break,
        }
    }
    if rest.degree_in(Var::Y).finite().unwrap_or(0) > 0 || out.is_empty() {
        out.push(rest);
    }
    out
}

fn divisors(v: &BigInt) -> Vec<BigInt> {
    let a = v.abs();
    if a.is_zero() {
        return vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= a {
        if (&a % &d).is_zero() {
            out.push(d.clone());
            out.push(&a / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

fn eval_univar(p: &Poly, at: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for (e, c) in p.coefficients_in(Var::Y) {
        let c = c.as_constant().expect("univariate");
        let mut pw = BigRational::one();
        for _ in 0..e {
            pw *= at;
        }
        acc += c * pw;
    }
    acc
}

/// Special fiber data: `P(y) = Q(0, y)`, its squarefree factors with
/// multiplicities, and the number of reduced components.
#[derive(Clone, Debug)]
pub struct SpecialFiber {
    pub p: Poly,
    pub factors: Vec<(Poly, u32)>,
    pub reduced_degree: i64,
}
