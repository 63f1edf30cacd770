//! Constructive cylinder isomorphisms: trivializing cochains for pulled
//! back cocycles are found by iterative-deepening exact linear solves, and
//! the chartwise maps they induce between `X x C` and `X' x C` are emitted
//! as self-contained certificates whose every identity is re-checkable
//! without the solver.
//!
//! For a cochain `H` trivializing the target cocycle over the source
//! charts, the defining identity is
//! `H_i(x, t + g_ij) - H_j(x, t) = g'_ij` for all pairs, an exact identity
//! in the Laurent-coefficient polynomial ring in the chart fiber
//! coordinate `t`. The chartwise map and its inverse are then
//! `t'_i = u + H_i(x, t_i)`, `u' = t_i - H'_i(x, t'_i)` and the symmetric
//! formulas back; the two-sided inverse law holds symbolically for any
//! valid cochain pair and is verified, not assumed.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cocycle::{affineness, sigma_cocycle, BaseScheme, Cocycle};
use crate::error::{Error, Result};
use crate::json::HypersurfaceRecord;
use crate::linalg::{solve, QMatrix};
use crate::poly::{parse, Context, Monomial, Poly, Var};
use crate::ring::{Hypersurface, Membership, RingElement};

/// Degree caps for the trivializing-cochain ansatz.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Caps {
    pub t_cap: i64,
    pub x_cap: i64,
}

impl Caps {
    pub fn doubled(self) -> Caps {
        Caps {
            t_cap: self.t_cap * 2,
            x_cap: self.x_cap * 2,
        }
    }
}

/// Default caps: t-degree up to `r * max(|m|, |m'|)` (sum norm), x-degree
/// up to four times the largest component of `m + m'`.
pub fn default_caps(x: &Hypersurface, xp: &Hypersurface) -> Caps {
    let sum_m: i64 = x.m().iter().sum();
    let sum_mp: i64 = xp.m().iter().sum();
    let t_cap = x.r() * sum_m.max(sum_mp);
    let x_cap = 4 * x
        .m()
        .iter()
        .zip(xp.m())
        .map(|(a, b)| a + b)
        .max()
        .unwrap_or(1);
    Caps { t_cap, x_cap }
}

/// Per-sheet polynomials `H_i(x, t)` trivializing `target` over the charts
/// glued by `shifts`.
#[derive(Clone, Debug)]
pub struct TrivializingCochain {
    pub h: Vec<Poly>,
    pub shifts: Cocycle,
    pub target: Cocycle,
}

impl TrivializingCochain {
    /// Re-substitutes the cochain into the defining identity on every
    /// pair; the solver's linear algebra is never trusted alone.
    pub fn verify(&self) -> Result<()> {
        let base = self.shifts.base();
        for i in 0..base.r {
            for j in 0..base.r {
                if i == j {
                    continue;
                }
                let lhs = &shift_substitute(&self.h[i], &self.shifts.get(i, j))?
                    - &widen_chart(&self.h[j], base.n)?;
                let rhs = self
                    .target
                    .get(i, j)
                    .into_context(Context::x_laurent(base.n).with(Var::T))?;
                if lhs != rhs {
                    return Err(Error::Internal(format!(
                        "cochain identity fails on pair ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `H(x, t + g)` in the Laurent ring with the chart fiber slot.
fn shift_substitute(h: &Poly, g: &Poly) -> Result<Poly> {
    let n = g.ctx().n();
    let ctx = Context::x_laurent(n).with(Var::T);
    let h_wide = h.into_context(ctx)?;
    let replacement = &Poly::var(ctx, Var::T) + &g.into_context(ctx)?;
    h_wide.subst(Var::T, &replacement)
}

fn widen_chart(h: &Poly, n: usize) -> Result<Poly> {
    h.into_context(Context::x_laurent(n).with(Var::T))
}

/// Outcome of the cochain solve.
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solved(TrivializingCochain),
    /// Caps exhausted; carries the final system's dimensions and rank.
    Inconclusive {
        caps: Caps,
        detail: String,
    },
}

impl SolveOutcome {
    pub fn solved(self) -> Option<TrivializingCochain> {
        match self {
            SolveOutcome::Solved(c) => Some(c),
            SolveOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Finds per-sheet polynomials `H_i` with
/// `H_i(x, t + g_ij) - H_j(x, t) = g'_ij` by iterative deepening on the
/// t-degree. When both cocycles consist of a single monomial per entry
/// with uniform pole vectors (constant sigma families), the ansatz is
/// restricted to the one weight class `alpha - k m = -m'` that can carry a
/// solution; otherwise a dense ansatz is used, bounded by `x_cap` per
/// variable and an unknown-count ceiling.
pub fn coboundary_solve(g: &Cocycle, gprime: &Cocycle, caps: Caps) -> Result<SolveOutcome> {
    if g.base() != gprime.base() {
        return Err(Error::BaseMismatch);
    }
    if !affineness(g).is_affine() {
        return Err(Error::NotAffine);
    }
    const UNKNOWN_CEILING: usize = 900;
    let uniform = uniform_monomial_pole(g).zip(uniform_monomial_pole(gprime));
    let mut last_detail = String::from("no solvable system within caps");
    for t_deg in 1..=caps.t_cap {
        // One t-slice: the single admissible weight class for uniform
        // monomial cocycles, a deepening x-degree schedule otherwise (a
        // solution found at some x-degree also exists at every larger
        // one, so the schedule may skip ahead and still end at the cap).
        let supports: Vec<Vec<(usize, i64, Vec<i64>)>> = match &uniform {
            Some((m, mp)) => vec![restricted_support(g.base(), m, mp, t_deg, caps.x_cap)],
            None => x_degree_schedule(caps.x_cap)
                .into_iter()
                .map(|x_deg| dense_support(g.base(), t_deg, x_deg))
                .collect(),
        };
        for unknowns in supports {
            if unknowns.is_empty() {
                continue;
            }
            if unknowns.len() > UNKNOWN_CEILING {
                last_detail = format!(
                    "ansatz with {} unknowns exceeds the ceiling {UNKNOWN_CEILING} at t-degree {t_deg}",
                    unknowns.len()
                );
                break;
            }
            match try_solve(g, gprime, &unknowns)? {
                Some(cochain) => {
                    cochain.verify()?;
                    return Ok(SolveOutcome::Solved(cochain));
                }
                None => {
                    last_detail = format!(
                        "system with {} unknowns at t-degree {t_deg} is inconsistent",
                        unknowns.len()
                    );
                }
            }
        }
    }
    Ok(SolveOutcome::Inconclusive {
        caps,
        detail: last_detail,
    })
}

/// The common pole vector when every entry is a single monomial with one
/// exponent vector across all pairs.
fn uniform_monomial_pole(c: &Cocycle) -> Option<Vec<i64>> {
    let mut pole: Option<Vec<i64>> = None;
    for (_, g) in c.pairs() {
        if g.num_terms() != 1 {
            return None;
        }
        let (mono, _) = g.leading_term().unwrap();
        let exps: Vec<i64> = (0..c.base().n).map(|k| mono.exponent(k)).collect();
        match &pole {
            Some(p) if *p != exps => return None,
            Some(_) => {}
            None => pole = Some(exps),
        }
    }
    pole
}

/// Unknown monomials `x^alpha t^k` with `alpha = k m - m'` (the only
/// weight class interacting with the right-hand side when the shifts are
/// single monomials of class `m`).
fn restricted_support(
    base: BaseScheme,
    m_neg: &[i64],
    mp_neg: &[i64],
    t_deg: i64,
    x_cap: i64,
) -> Vec<(usize, i64, Vec<i64>)> {
    let mut out = Vec::new();
    for sheet in 0..base.r {
        for k in 1..=t_deg {
            // m_neg/mp_neg are exponent vectors of the monomials, i.e. -m.
            let alpha: Vec<i64> = m_neg
                .iter()
                .zip(mp_neg)
                .map(|(&mn, &mpn)| k * (-mn) + mpn)
                .collect();
            if alpha.iter().all(|&a| a >= 0 && a <= x_cap) {
                out.push((sheet, k, alpha));
            }
        }
    }
    out
}

/// Small x-degrees first, then doubling up to the cap (always included).
fn x_degree_schedule(x_cap: i64) -> Vec<i64> {
    let mut out: Vec<i64> = (0..=4.min(x_cap)).collect();
    let mut step = 6;
    while step < x_cap {
        out.push(step);
        step *= 2;
    }
    if !out.contains(&x_cap) {
        out.push(x_cap);
    }
    out
}

fn dense_support(base: BaseScheme, t_deg: i64, x_deg: i64) -> Vec<(usize, i64, Vec<i64>)> {
    let mut out = Vec::new();
    let mut alpha = vec![0i64; base.n];
    loop {
        for sheet in 0..base.r {
            for k in 0..=t_deg {
                out.push((sheet, k, alpha.clone()));
            }
        }
        // Odometer over the x exponents.
        let mut pos = 0;
        loop {
            if pos == base.n {
                return out;
            }
            alpha[pos] += 1;
            if alpha[pos] <= x_deg {
                break;
            }
            alpha[pos] = 0;
            pos += 1;
        }
    }
}

/// Assembles and solves the exact linear system for the pairs `(1, j)`;
/// the remaining pair identities follow from the cocycle relations and are
/// re-verified by the caller.
fn try_solve(
    g: &Cocycle,
    gprime: &Cocycle,
    unknowns: &[(usize, i64, Vec<i64>)],
) -> Result<Option<TrivializingCochain>> {
    let base = g.base();
    let ctx = Context::x_laurent(base.n).with(Var::T);
    let t_var = Poly::var(ctx, Var::T);
    // Precompute (t + g_1j)^k per pair.
    let max_k = unknowns.iter().map(|(_, k, _)| *k).max().unwrap_or(0);
    let mut shift_powers: BTreeMap<usize, Vec<Poly>> = BTreeMap::new();
    for j in 1..base.r {
        let shifted = &t_var + &g.get(0, j).into_context(ctx)?;
        let mut powers = vec![Poly::one(ctx)];
        for _ in 0..max_k {
            powers.push(&powers[powers.len() - 1] * &shifted);
        }
        shift_powers.insert(j, powers);
    }
    let mut t_powers = vec![Poly::one(ctx)];
    for _ in 0..max_k {
        t_powers.push(&t_powers[t_powers.len() - 1] * &t_var);
    }

    // Per unknown and pair, the contribution polynomial.
    let mut rows: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<((usize, Monomial), BigRational)>> = Vec::new();
    for &(sheet, k, ref alpha) in unknowns {
        let mut column = Vec::new();
        for j in 1..base.r {
            let contribution = if sheet == 0 {
                monomial_times(&shift_powers[&j][k as usize], alpha)?
            } else if sheet == j {
                -&monomial_times(&t_powers[k as usize], alpha)?
            } else {
                continue;
            };
            for (mono, coeff) in contribution.terms() {
                let key = (j, mono.clone());
                let next = rows.len();
                rows.entry(key.clone()).or_insert(next);
                column.push((key, coeff.clone()));
            }
        }
        columns.push(column);
    }
    let mut rhs_entries: Vec<((usize, Monomial), BigRational)> = Vec::new();
    for j in 1..base.r {
        let target = gprime.get(0, j).into_context(ctx)?;
        for (mono, coeff) in target.terms() {
            let key = (j, mono.clone());
            let next = rows.len();
            rows.entry(key.clone()).or_insert(next);
            rhs_entries.push((key, coeff.clone()));
        }
    }
    let mut matrix = QMatrix::zeros(rows.len().max(1), unknowns.len());
    for (col, entries) in columns.iter().enumerate() {
        for (key, coeff) in entries {
            matrix.set(rows[key], col, coeff.clone());
        }
    }
    let mut rhs = vec![BigRational::zero(); rows.len().max(1)];
    for (key, coeff) in rhs_entries {
        rhs[rows[&key]] = coeff;
    }
    let Some((solution, _rank)) = solve(&matrix, &rhs) else {
        return Ok(None);
    };
    let chart_ctx = Context::x_poly(base.n).with(Var::T);
    let mut h = vec![Poly::zero(chart_ctx); base.r];
    for (&(sheet, k, ref alpha), coeff) in unknowns.iter().zip(solution) {
        if coeff.is_zero() {
            continue;
        }
        let mut exps: Vec<(Var, i64)> = alpha
            .iter()
            .enumerate()
            .map(|(i, &a)| (Var::X(i), a))
            .collect();
        exps.push((Var::T, k));
        let mono = Poly::monomial(chart_ctx, &exps, coeff)?;
        h[sheet] = &h[sheet] + &mono;
    }
    Ok(Some(TrivializingCochain {
        h,
        shifts: g.clone(),
        target: gprime.clone(),
    }))
}

fn monomial_times(p: &Poly, alpha: &[i64]) -> Result<Poly> {
    p.shift_x(alpha)
}

/// One verified identity of a certificate transcript.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TranscriptEntry {
    pub identity: String,
    pub status: String,
}

/// Chartwise forward and inverse formulas, printed in the chart variables
/// `(x, t, u)` of the respective side.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ChartMap {
    pub sheet: usize,
    pub forward_tprime: String,
    pub forward_uprime: String,
    pub inverse_t: String,
    pub inverse_u: String,
}

/// Ambient expressions of the forward map as elements of `B[u]`, written
/// in the variables `(x, y, z, u)` of the source cylinder.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AmbientForms {
    pub yprime: String,
    pub zprime: String,
    pub uprime: String,
    pub relation: String,
}

/// Convention block carried by every certificate for reproducibility.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Conventions {
    pub transition: String,
    pub coboundary: String,
    pub chart_coordinate: String,
    pub caps: Caps,
}

pub fn standard_conventions(caps: Caps) -> Conventions {
    Conventions {
        transition: "t_i = t_j + g_ij(x)".into(),
        coboundary: "(delta h)_ij = h_i - h_j".into(),
        chart_coordinate: "t_i = (y - sigma_i(x)) / x^[m]; certificates use [m], not [r]".into(),
        caps,
    }
}

/// Self-contained certificate of the cylinder isomorphism
/// `X x C ~ X' x C`: the trivializing cochains both ways, the chartwise
/// maps, optional ambient forms and the verification transcript. Every
/// identity can be re-run from this data alone.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IsoCertificate {
    pub source: HypersurfaceRecord,
    pub target: HypersurfaceRecord,
    #[serde(rename = "H")]
    pub h: Vec<String>,
    #[serde(rename = "Hprime")]
    pub hprime: Vec<String>,
    pub charts: Vec<ChartMap>,
    pub ambient: Option<AmbientForms>,
    pub transcript: Vec<TranscriptEntry>,
    pub conventions: Conventions,
}

/// Outcome of the certificate construction.
#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Certificate(Box<IsoCertificate>),
    Inconclusive { caps: Caps, detail: String },
}

impl IsoOutcome {
    pub fn certificate(self) -> Option<IsoCertificate> {
        match self {
            IsoOutcome::Certificate(c) => Some(*c),
            IsoOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Builds and fully verifies the cylinder isomorphism between two sigma
/// hypersurfaces over the same base scheme.
pub fn build_iso(
    x: &Arc<Hypersurface>,
    xp: &Arc<Hypersurface>,
    caps: Option<Caps>,
) -> Result<IsoOutcome> {
    let sigma_x = x.sigma().ok_or(Error::NoSigmaFamily)?;
    let sigma_xp = xp.sigma().ok_or(Error::NoSigmaFamily)?;
    if x.n() != xp.n() || x.r() != xp.r() {
        return Err(Error::BaseMismatch);
    }
    let caps = caps.unwrap_or_else(|| default_caps(x, xp));
    let base = BaseScheme::new(x.n(), x.r() as usize)?;
    let g = sigma_cocycle(base, sigma_x, x.m())?;
    let gp = sigma_cocycle(base, sigma_xp, xp.m())?;

    let h = match coboundary_solve(&g, &gp, caps)? {
        SolveOutcome::Solved(c) => c,
        SolveOutcome::Inconclusive { caps, detail } => {
            return Ok(IsoOutcome::Inconclusive {
                caps,
                detail: format!("forward cochain: {detail}"),
            })
        }
    };
    let hp = match coboundary_solve(&gp, &g, caps)? {
        SolveOutcome::Solved(c) => c,
        SolveOutcome::Inconclusive { caps, detail } => {
            return Ok(IsoOutcome::Inconclusive {
                caps,
                detail: format!("backward cochain: {detail}"),
            })
        }
    };
    let cert = assemble_certificate(x, xp, &g, &gp, &h.h, &hp.h, caps)?;
    Ok(IsoOutcome::Certificate(Box::new(cert)))
}

/// Shared by construction and recheck: verifies everything and assembles
/// the certificate from the hypersurfaces and the two cochains.
fn assemble_certificate(
    x: &Arc<Hypersurface>,
    xp: &Arc<Hypersurface>,
    g: &Cocycle,
    gp: &Cocycle,
    h: &[Poly],
    hp: &[Poly],
    caps: Caps,
) -> Result<IsoCertificate> {
    let base = g.base();
    let n = base.n;
    let r = base.r;
    let mut transcript = Vec::new();

    // (a) Cochain identities, all ordered pairs, both directions.
    let forward = TrivializingCochain {
        h: h.to_vec(),
        shifts: g.clone(),
        target: gp.clone(),
    };
    forward.verify()?;
    let backward = TrivializingCochain {
        h: hp.to_vec(),
        shifts: gp.clone(),
        target: g.clone(),
    };
    backward.verify()?;
    for i in 0..r {
        for j in 0..r {
            if i != j {
                transcript.push(verified(format!(
                    "H_{}(x, t + g_{}{}) - H_{}(x, t) = g'_{}{}",
                    i + 1,
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    transcript.push(verified(
        "H'_i(x, t' + g'_ij) - H'_j(x, t') = g_ij for all pairs".into(),
    ));

    // (a2) Chart compatibility of t' and globality of u' on every overlap,
    // computed in the chart-j frame with Laurent x, fiber t and cylinder u.
    let lctx = Context::x_laurent(n).with(Var::T).with(Var::U);
    let t = Poly::var(lctx, Var::T);
    let u = Poly::var(lctx, Var::U);
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let t_i = &t + &g.get(i, j).into_context(lctx)?;
            let tp_i = &u + &subst_chart(&h[i], &t_i, lctx)?;
            let tp_j = &u + &subst_chart(&h[j], &t, lctx)?;
            let diff = &tp_i - &tp_j;
            if diff != gp.get(i, j).into_context(lctx)? {
                return Err(Error::Internal(format!(
                    "chart compatibility fails on pair ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            let up_i = &t_i - &subst_chart(&hp[i], &tp_i, lctx)?;
            let up_j = &t - &subst_chart(&hp[j], &tp_j, lctx)?;
            if up_i != up_j {
                return Err(Error::Internal(format!(
                    "u' is not global across pair ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    transcript.push(verified("t'_i = t'_j + g'_ij on every overlap".into()));
    transcript.push(verified("u' agrees across all charts".into()));

    // (b) Two-sided inverse, chartwise, as polynomial identities.
    let pctx = Context::x_poly(n).with(Var::T).with(Var::U);
    let tp_var = Poly::var(pctx, Var::T);
    let up_var = Poly::var(pctx, Var::U);
    let mut charts = Vec::new();
    for i in 0..r {
        // forward then inverse on (t, u)
        let tprime = &up_var + &subst_chart(&h[i], &tp_var, pctx)?;
        let uprime = &tp_var - &subst_chart(&hp[i], &tprime, pctx)?;
        let t_back = &uprime + &subst_chart(&hp[i], &tprime, pctx)?;
        let u_back = &tprime - &subst_chart(&h[i], &t_back, pctx)?;
        if t_back != tp_var || u_back != up_var {
            return Err(Error::Internal(format!(
                "inverse(forward) is not the identity on chart {}",
                i + 1
            )));
        }
        // inverse then forward on (t', u')
        let t_inv = &up_var + &subst_chart(&hp[i], &tp_var, pctx)?;
        let u_inv = &tp_var - &subst_chart(&h[i], &t_inv, pctx)?;
        let tp_back = &u_inv + &subst_chart(&h[i], &t_inv, pctx)?;
        let up_back = &t_inv - &subst_chart(&hp[i], &tp_back, pctx)?;
        if tp_back != tp_var || up_back != up_var {
            return Err(Error::Internal(format!(
                "forward(inverse) is not the identity on chart {}",
                i + 1
            )));
        }
        charts.push(ChartMap {
            sheet: i + 1,
            forward_tprime: format!("u + {}", h[i]),
            forward_uprime: format!("t - H'_{}(x, t')", i + 1),
            inverse_t: format!("u' + {}", hp[i]),
            inverse_u: format!("t' - H_{}(x, t)", i + 1),
        });
    }
    transcript.push(verified(
        "inverse o forward = id and forward o inverse = id on every chart".into(),
    ));

    // (c) Ambient forms through the membership test, checked in every
    // chart for consistency.
    let ambient = ambient_forms(x, xp, g, h, hp, &mut transcript)?;

    Ok(IsoCertificate {
        source: HypersurfaceRecord::from_hypersurface(x),
        target: HypersurfaceRecord::from_hypersurface(xp),
        h: h.iter().map(|p| p.to_string()).collect(),
        hprime: hp.iter().map(|p| p.to_string()).collect(),
        charts,
        ambient,
        transcript,
        conventions: standard_conventions(caps),
    })
}

fn verified(identity: String) -> TranscriptEntry {
    TranscriptEntry {
        identity,
        status: "verified".into(),
    }
}

/// `H(x, replacement)` for a chart polynomial `H(x, t)`.
fn subst_chart(h: &Poly, replacement: &Poly, ctx: Context) -> Result<Poly> {
    h.into_context(ctx)?.subst(Var::T, replacement)
}

/// Hard ceiling on the Laurent support size beyond which the ambient form
/// is omitted and the certificate flagged chartwise-only.
const AMBIENT_TERM_CEILING: usize = 4096;

fn ambient_forms(
    x: &Arc<Hypersurface>,
    xp: &Arc<Hypersurface>,
    g: &Cocycle,
    h: &[Poly],
    hp: &[Poly],
    transcript: &mut Vec<TranscriptEntry>,
) -> Result<Option<AmbientForms>> {
    let n = x.n();
    let r = g.base().r;
    let lctx = Context::xy_laurent(n).with(Var::U);
    let u = Poly::var(lctx, Var::U);
    let sigma_x = x.sigma().expect("checked by the caller");
    let sigma_xp = xp.sigma().expect("checked by the caller");
    let y = Poly::var(lctx, Var::Y);
    let neg_m: Vec<i64> = x.m().iter().map(|&mk| -mk).collect();

    // Build y', z', u' in each chart; they must agree as Laurent data.
    let tctx = lctx.with(Var::T);
    let mut forms: Option<(Poly, Poly, Poly)> = None;
    for i in 0..r {
        let t_i = (&y - &sigma_x.sheet(i).into_context(lctx)?).shift_x(&neg_m)?;
        let tp_i = &u + &subst_chart(&h[i], &t_i.into_context(tctx)?, tctx)?.into_context(lctx)?;
        let yp = &tp_i.shift_x(xp.m())? + &sigma_xp.sheet(i).into_context(lctx)?;
        let mut zp = tp_i.clone();
        for (j, s) in sigma_xp.iter().enumerate() {
            if j != i {
                zp = &zp * &(&yp - &s.into_context(lctx)?);
            }
        }
        let up =
            &t_i - &subst_chart(&hp[i], &tp_i.into_context(tctx)?, tctx)?.into_context(lctx)?;
        match &forms {
            Some((y0, z0, u0)) => {
                if y0 != &yp || z0 != &zp || u0 != &up {
                    return Err(Error::Internal(format!(
                        "ambient expressions disagree between chart 1 and chart {}",
                        i + 1
                    )));
                }
            }
            None => forms = Some((yp, zp, up)),
        }
    }
    let (yp, zp, up) = forms.expect("r >= 1");
    transcript.push(verified(
        "ambient y', z', u' agree across all charts".into(),
    ));

    if yp.num_terms() + zp.num_terms() + up.num_terms() > AMBIENT_TERM_CEILING {
        transcript.push(TranscriptEntry {
            identity: "ambient forms omitted: Laurent support beyond ceiling".into(),
            status: "chartwise-only certificate".into(),
        });
        return Ok(None);
    }

    let member = |f: &Poly, name: &str| -> Result<RingElement> {
        match x.laurent_membership(f)? {
            Membership::Member(e) => Ok(e),
            Membership::NonMember { layer, .. } => Err(Error::Internal(format!(
                "{name} fell outside the coordinate ring (layer {layer})"
            ))),
        }
    };
    let yp_elem = member(&yp, "y'")?;
    let zp_elem = member(&zp, "z'")?;
    let up_elem = member(&up, "u'")?;
    transcript.push(verified(
        "y', z', u' are regular on X x C (membership)".into(),
    ));

    // x^[m'] z' - prod (y' - sigma'_j) must vanish in B[u].
    let ambient_u = x.ambient_ctx().with(Var::U);
    let mut relation = zp_elem.nf().into_context(ambient_u)?.shift_x(xp.m())?;
    let mut prod = Poly::one(ambient_u);
    for s in sigma_xp.iter() {
        prod = &prod * &(&yp_elem.nf().into_context(ambient_u)? - &s.into_context(ambient_u)?);
    }
    relation = &relation - &prod;
    if !x.normal_form(&relation).is_zero() {
        return Err(Error::Internal(
            "the image does not satisfy the target relation".into(),
        ));
    }
    transcript.push(verified(
        "x^[m'] z' - prod_j (y' - sigma'_j) normal-forms to 0 in B[u]".into(),
    ));

    Ok(Some(AmbientForms {
        yprime: yp_elem.nf().to_string(),
        zprime: zp_elem.nf().to_string(),
        uprime: up_elem.nf().to_string(),
        relation: "0".into(),
    }))
}

/// Report of an independent certificate recheck.
#[derive(Clone, Debug)]
pub struct RecheckReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Re-runs every transcript identity from the serialized certificate
/// alone: cochain identities, chart compatibility, two-sided inverses and
/// the ambient forms (which must also match the stored strings).
pub fn recheck(cert: &IsoCertificate) -> Result<RecheckReport> {
    let mut failures = Vec::new();
    let x = cert
        .source
        .to_hypersurface()
        .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    let xp = cert
        .target
        .to_hypersurface()
        .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    if x.n() != xp.n() || x.r() != xp.r() {
        return Err(Error::MalformedCertificate(
            "source and target live over different bases".into(),
        ));
    }
    let sigma_x = x
        .sigma()
        .ok_or_else(|| Error::MalformedCertificate("source has no sigma family".into()))?;
    let sigma_xp = xp
        .sigma()
        .ok_or_else(|| Error::MalformedCertificate("target has no sigma family".into()))?;
    let base = BaseScheme::new(x.n(), x.r() as usize)?;
    let g = sigma_cocycle(base, sigma_x, x.m())?;
    let gp = sigma_cocycle(base, sigma_xp, xp.m())?;
    let chart_ctx = Context::x_poly(x.n()).with(Var::T);
    let parse_all = |texts: &[String]| -> Result<Vec<Poly>> {
        texts.iter().map(|t| parse(t, chart_ctx)).collect()
    };
    let h = parse_all(&cert.h).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    let hp = parse_all(&cert.hprime).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    if h.len() != base.r || hp.len() != base.r {
        return Err(Error::MalformedCertificate(
            "cochain length does not match the sheet count".into(),
        ));
    }
    match assemble_certificate(&x, &xp, &g, &gp, &h, &hp, cert.conventions.caps) {
        Ok(recomputed) => {
            if recomputed.ambient != cert.ambient {
                failures.push("stored ambient forms differ from the recomputed ones".into());
            }
            for entry in &cert.transcript {
                if entry.status != "verified" && entry.status != "chartwise-only certificate" {
                    failures.push(format!(
                        "transcript entry '{}' carries status '{}'",
                        entry.identity, entry.status
                    ));
                }
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    Ok(RecheckReport {
        ok: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::SigmaFamily;

    fn sigma1() -> SigmaFamily {
        SigmaFamily::parse_family(&["1".into(), "-1".into()], 1).unwrap()
    }

    fn s(m: i64) -> Arc<Hypersurface> {
        Hypersurface::from_sigma(vec![m], sigma1()).unwrap()
    }

    fn cocycle_of(h: &Arc<Hypersurface>) -> Cocycle {
        let base = BaseScheme::new(h.n(), h.r() as usize).unwrap();
        sigma_cocycle(base, h.sigma().unwrap(), h.m()).unwrap()
    }

    #[test]
    fn identity_trivialization() {
        let s1 = s(1);
        let g = cocycle_of(&s1);
        let out = coboundary_solve(&g, &g, Caps { t_cap: 3, x_cap: 4 }).unwrap();
        let cochain = out.solved().unwrap();
        let ctx = Context::x_poly(1).with(Var::T);
        for hi in &cochain.h {
            assert_eq!(hi, &Poly::var(ctx, Var::T));
        }
    }

    #[test]
    fn danielewski_pair_cochain() {
        let (s1, s2) = (s(1), s(2));
        let g = cocycle_of(&s1);
        let gp = cocycle_of(&s2);
        let caps = default_caps(&s1, &s2);
        let cochain = coboundary_solve(&g, &gp, caps).unwrap().solved().unwrap();
        cochain.verify().unwrap();
        // The classical solution appears at t-degree 3:
        // H_1 = -3/2 t^2 - 1/2 x t^3, H_2 = 3/2 t^2 - 1/2 x t^3.
        let ctx = Context::x_poly(1).with(Var::T);
        assert_eq!(cochain.h[0], parse("-1/2*x1*t^3 - 3/2*t^2", ctx).unwrap());
        assert_eq!(cochain.h[1], parse("-1/2*x1*t^3 + 3/2*t^2", ctx).unwrap());
    }

    #[test]
    fn full_certificate_for_the_danielewski_pair() {
        let (s1, s2) = (s(1), s(2));
        let cert = build_iso(&s1, &s2, None).unwrap().certificate().unwrap();
        assert!(cert.ambient.is_some());
        assert!(cert.transcript.iter().all(|e| e.status == "verified"));
        let report = recheck(&cert).unwrap();
        assert!(report.ok, "recheck failures: {:?}", report.failures);
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let (s1, s2) = (s(1), s(2));
        let mut cert = build_iso(&s1, &s2, None).unwrap().certificate().unwrap();
        cert.h[0] = cert.h[0].replace("3/2", "5/2");
        let report = recheck(&cert).unwrap();
        assert!(!report.ok);
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn certificate_json_round_trip() {
        let (s1, s2) = (s(1), s(2));
        let cert = build_iso(&s1, &s2, None).unwrap().certificate().unwrap();
        let text = serde_json::to_string_pretty(&cert).unwrap();
        let parsed: IsoCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, cert);
        assert!(recheck(&parsed).unwrap().ok);
    }

    #[test]
    fn incomparable_pole_orders_are_solvable() {
        let sigma = SigmaFamily::parse_family(&["1".into(), "-1".into()], 2).unwrap();
        let a = Hypersurface::from_sigma(vec![2, 3], sigma.clone()).unwrap();
        let b = Hypersurface::from_sigma(vec![3, 2], sigma).unwrap();
        let cert = build_iso(&a, &b, None).unwrap().certificate().unwrap();
        assert!(recheck(&cert).unwrap().ok);
    }

    #[test]
    fn full_counterexample_pipeline_for_orbit_distinct_pair() {
        // m = (2) vs m' = (3): the pole signatures already separate the
        // restricted orbits, yet the cylinders are isomorphic with a
        // verified certificate.
        let a = s(2);
        let b = s(3);
        let ga = cocycle_of(&a);
        let gb = cocycle_of(&b);
        match crate::cocycle::restricted_orbit_test(&ga, &gb).unwrap() {
            crate::cocycle::OrbitOutcome::NotInOrbit {
                signature_distinct, ..
            } => assert!(signature_distinct),
            other => panic!("expected orbit-distinct cocycles, got {other:?}"),
        }
        let cert = build_iso(&a, &b, None).unwrap().certificate().unwrap();
        assert!(recheck(&cert).unwrap().ok);
    }

    #[test]
    fn dense_ansatz_handles_nonconstant_sigma() {
        // Non-constant sheets make the cocycle entries multi-monomial, so
        // the solver falls back to the dense ansatz.
        let sigma = SigmaFamily::parse_family(&["0".into(), "1 + x1".into()], 1).unwrap();
        let a = Hypersurface::from_sigma(vec![1], sigma.clone()).unwrap();
        let b = Hypersurface::from_sigma(vec![2], sigma).unwrap();
        let base = BaseScheme::new(1, 2).unwrap();
        let g = sigma_cocycle(base, a.sigma().unwrap(), a.m()).unwrap();
        let gp = sigma_cocycle(base, b.sigma().unwrap(), b.m()).unwrap();
        let cochain = coboundary_solve(&g, &gp, Caps { t_cap: 6, x_cap: 8 })
            .unwrap()
            .solved()
            .expect("dense solve succeeds");
        cochain.verify().unwrap();
        let cert = build_iso(&a, &b, None).unwrap().certificate().unwrap();
        assert!(cert.ambient.is_some());
        assert!(recheck(&cert).unwrap().ok);
    }

    #[test]
    fn caps_exhaustion_is_inconclusive_not_wrong() {
        let (s1, s2) = (s(1), s(2));
        let g = cocycle_of(&s1);
        let gp = cocycle_of(&s2);
        // The minimal solution needs t-degree 3.
        let out = coboundary_solve(&g, &gp, Caps { t_cap: 2, x_cap: 4 }).unwrap();
        assert!(matches!(out, SolveOutcome::Inconclusive { .. }));
    }

    #[test]
    fn monotonicity_of_caps() {
        let (s1, s2) = (s(1), s(2));
        let g = cocycle_of(&s1);
        let gp = cocycle_of(&s2);
        for t_cap in 3..6 {
            let out = coboundary_solve(&g, &gp, Caps { t_cap, x_cap: 6 }).unwrap();
            assert!(out.solved().is_some(), "t_cap {t_cap} should succeed");
        }
    }
}
