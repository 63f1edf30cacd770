//! Čech cocycle bookkeeping over the affine n-space with an r-fold system
//! of coordinate hyperplanes, and the decision procedures built on it:
//! the separated/affine criterion, coboundary tests, pole signatures and a
//! restricted automorphism-orbit search.
//!
//! Conventions, fixed once and stated in every report: transitions are
//! `t_i = t_j + g_ij(x)`, coboundaries are `(delta h)_ij = h_i - h_j`, and
//! for sigma families `g_ij = x^[-m] (sigma_j - sigma_i)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lnd::Derivation;
use crate::poly::{int, Context, Monomial, Poly, Var};
use crate::ring::{Hypersurface, SigmaFamily};

/// The base scheme `Z_{n,r}`: affine n-space with r glued sheets.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BaseScheme {
    pub n: usize,
    pub r: usize,
}

impl BaseScheme {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n < 1 || r < 1 {
            return Err(Error::InvalidCocycle("need n >= 1 and r >= 1".into()));
        }
        Ok(BaseScheme { n, r })
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.r).flat_map(move |i| ((i + 1)..self.r).map(move |j| (i, j)))
    }
}

/// Antisymmetric family `g_ij` of Laurent polynomials indexed by sheet
/// pairs, satisfying the cocycle identity `g_ik = g_ij + g_jk` (verified on
/// construction and preserved by every provided transformation).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cocycle {
    base: BaseScheme,
    entries: BTreeMap<(usize, usize), Poly>,
}

impl Cocycle {
    /// Builds a cocycle from entries for pairs `i < j` (zero-based).
    /// Missing pairs default to zero; the cocycle identity is checked on
    /// every triple.
    pub fn new(base: BaseScheme, given: Vec<((usize, usize), Poly)>) -> Result<Self> {
        let ctx = Context::x_laurent(base.n);
        let mut entries: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
        for ((i, j), value) in given {
            if i >= base.r || j >= base.r || i == j {
                return Err(Error::InvalidCocycle(format!(
                    "pair ({}, {}) out of range for r = {}",
                    i + 1,
                    j + 1,
                    base.r
                )));
            }
            let (key, value) = if i < j {
                ((i, j), value.into_context(ctx)?)
            } else {
                ((j, i), -&value.into_context(ctx)?)
            };
            if entries.insert(key, value).is_some() {
                return Err(Error::InvalidCocycle(format!(
                    "duplicate entry for pair ({}, {})",
                    key.0 + 1,
                    key.1 + 1
                )));
            }
        }
        for (i, j) in base.pairs() {
            entries.entry((i, j)).or_insert_with(|| Poly::zero(ctx));
        }
        let c = Cocycle { base, entries };
        c.verify_identity()?;
        Ok(c)
    }

    pub fn base(&self) -> BaseScheme {
        self.base
    }

    pub fn ctx(&self) -> Context {
        Context::x_laurent(self.base.n)
    }

    /// `g_ij` for arbitrary index order, using antisymmetry.
    pub fn get(&self, i: usize, j: usize) -> Poly {
        if i == j {
            return Poly::zero(self.ctx());
        }
        if i < j {
            self.entries[&(i, j)].clone()
        } else {
            -&self.entries[&(j, i)]
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), &Poly)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    fn verify_identity(&self) -> Result<()> {
        for i in 0..self.base.r {
            for j in (i + 1)..self.base.r {
                for k in (j + 1)..self.base.r {
                    let lhs = self.get(i, k);
                    let rhs = &self.get(i, j) + &self.get(j, k);
                    if lhs != rhs {
                        return Err(Error::CocycleIdentity {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Adds the coboundary of a polynomial 0-cochain: `g_ij + h_i - h_j`.
    pub fn add_coboundary(&self, h: &[Poly]) -> Result<Cocycle> {
        if h.len() != self.base.r {
            return Err(Error::InvalidCocycle("cochain length must be r".into()));
        }
        let ctx = self.ctx();
        let h: Vec<Poly> = h
            .iter()
            .map(|p| p.into_context(ctx))
            .collect::<Result<_>>()?;
        let entries = self
            .entries
            .iter()
            .map(|(&(i, j), g)| ((i, j), &(g + &h[i]) - &h[j]))
            .collect();
        Cocycle::new(self.base, entries)
    }
}

/// `g_ij = x^[-m] (sigma_j - sigma_i)` for a valid sigma family. The
/// cocycle identity holds by construction and is re-verified.
pub fn sigma_cocycle(base: BaseScheme, sigma: &SigmaFamily, m: &[i64]) -> Result<Cocycle> {
    if sigma.len() != base.r {
        return Err(Error::InvalidCocycle(format!(
            "sigma family has {} sheets, base has r = {}",
            sigma.len(),
            base.r
        )));
    }
    if m.len() != base.n || m.iter().any(|&mk| mk < 1) {
        return Err(Error::InvalidCocycle(
            "multi-index must have n entries, all >= 1".into(),
        ));
    }
    let ctx = Context::x_laurent(base.n);
    let neg_m: Vec<i64> = m.iter().map(|&mk| -mk).collect();
    let mut entries = Vec::new();
    for (i, j) in base.pairs() {
        let diff = &sigma.sheet(j).into_context(ctx)? - &sigma.sheet(i).into_context(ctx)?;
        entries.push(((i, j), diff.shift_x(&neg_m)?));
    }
    Cocycle::new(base, entries)
}

/// Pole decomposition of the entries: `g_ij = x^[-m_ij] a_ij` with no `x_k`
/// dividing `a_ij`. Unique; recomposition reproduces the entry.
#[derive(Clone, Debug)]
pub struct PoleData {
    pub pairs: BTreeMap<(usize, usize), (Vec<i64>, Poly)>,
}

pub fn pole_decompose(c: &Cocycle) -> Result<PoleData> {
    let mut pairs = BTreeMap::new();
    for ((i, j), g) in c.pairs() {
        if g.is_zero() {
            return Err(Error::InvalidCocycle(format!(
                "entry ({}, {}) is zero and has no pole decomposition",
                i + 1,
                j + 1
            )));
        }
        let mins = g.min_x_exponents().unwrap();
        let pole: Vec<i64> = mins.iter().map(|&e| -e).collect();
        let a = g
            .shift_x(&pole)?
            .into_context(Context::x_poly(c.base().n))?;
        pairs.insert((i, j), (pole, a));
    }
    Ok(PoleData { pairs })
}

/// Verdict of the separatedness/affineness decision.
#[derive(Clone, Debug)]
pub enum Affineness {
    Affine(AffineData),
    NotSeparated(SeparationWitness),
}

impl Affineness {
    pub fn is_affine(&self) -> bool {
        matches!(self, Affineness::Affine(_))
    }
}

/// Data recorded with an affine verdict: the pole decomposition and the
/// chain of first-row pole multi-indices, verified totally ordered under
/// the componentwise order.
#[derive(Clone, Debug)]
pub struct AffineData {
    pub poles: BTreeMap<(usize, usize), (Vec<i64>, Poly)>,
    /// `(sheet, m_{1,sheet})` sorted increasingly; empty when r < 2.
    pub chain: Vec<(usize, Vec<i64>)>,
}

/// Witness for a non-separated (hence non-affine) total space.
#[derive(Clone, Debug)]
pub enum SeparationWitness {
    /// `g_ij` vanishes identically, so it is regular along the hyperplanes.
    ZeroEntry { pair: (usize, usize) },
    /// Some pole order is not strictly positive.
    NonPositivePole {
        pair: (usize, usize),
        component: usize,
        order: i64,
    },
    /// `a_ij` restricted to `x_k = 0` fails to be a nonzero constant.
    UnitIdealFailure {
        pair: (usize, usize),
        component: usize,
        residue: Poly,
    },
}

impl std::fmt::Display for SeparationWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeparationWitness::ZeroEntry { pair } => {
                write!(
                    f,
                    "g_{}{} = 0 is regular along the hyperplanes",
                    pair.0 + 1,
                    pair.1 + 1
                )
            }
            SeparationWitness::NonPositivePole {
                pair,
                component,
                order,
            } => write!(
                f,
                "pole order of g_{}{} in x{} is {} (needs >= 1)",
                pair.0 + 1,
                pair.1 + 1,
                component + 1,
                order
            ),
            SeparationWitness::UnitIdealFailure {
                pair,
                component,
                residue,
            } => write!(
                f,
                "a_{}{} restricted to x{} = 0 is {} (needs a nonzero constant)",
                pair.0 + 1,
                pair.1 + 1,
                component + 1,
                residue
            ),
        }
    }
}

/// Decides whether the total space of the bundle is affine.
///
/// The unit-ideal condition `a_ij Q[x] + x^(1,..,1) Q[x] = Q[x]` is decided
/// by substitution: for every `k`, `a_ij` at `x_k = 0` must be a nonzero
/// constant (a zero-free polynomial on affine space is a nonzero constant).
/// On an affine verdict the first-row pole multi-indices are verified to be
/// totally ordered under the componentwise order.
pub fn affineness(c: &Cocycle) -> Affineness {
    let base = c.base();
    if base.r < 2 {
        return Affineness::Affine(AffineData {
            poles: BTreeMap::new(),
            chain: Vec::new(),
        });
    }
    let mut poles = BTreeMap::new();
    for ((i, j), g) in c.pairs() {
        if g.is_zero() {
            return Affineness::NotSeparated(SeparationWitness::ZeroEntry { pair: (i, j) });
        }
        let mins = g.min_x_exponents().unwrap();
        let pole: Vec<i64> = mins.iter().map(|&e| -e).collect();
        if let Some(k) = pole.iter().position(|&p| p <= 0) {
            return Affineness::NotSeparated(SeparationWitness::NonPositivePole {
                pair: (i, j),
                component: k,
                order: pole[k],
            });
        }
        let a = g
            .shift_x(&pole)
            .and_then(|p| p.into_context(Context::x_poly(base.n)))
            .expect("pole shift clears denominators");
        for k in 0..base.n {
            let residue = a.eval_var_zero(Var::X(k)).expect("polynomial");
            let ok = residue.as_constant().map(|c| !c.is_zero()).unwrap_or(false);
            if !ok {
                return Affineness::NotSeparated(SeparationWitness::UnitIdealFailure {
                    pair: (i, j),
                    component: k,
                    residue,
                });
            }
        }
        poles.insert((i, j), (pole, a));
    }
    // Consequence of the criterion: the first-row multi-indices are totally
    // ordered under the product order.
    let mut chain: Vec<(usize, Vec<i64>)> =
        (1..base.r).map(|i| (i, poles[&(0, i)].0.clone())).collect();
    chain.sort_by_key(|(_, m)| (m.iter().sum::<i64>(), m.clone()));
    for w in chain.windows(2) {
        let (a, b) = (&w[0].1, &w[1].1);
        assert!(
            a.iter().zip(b).all(|(x, y)| x <= y),
            "total-ordering consequence violated for {a:?} vs {b:?}; this is a bug"
        );
    }
    Affineness::Affine(AffineData { poles, chain })
}

/// Outcome of the coboundary test between two cocycles over the same base.
#[derive(Clone, Debug)]
pub enum CoboundaryOutcome {
    /// `c1 = c2 + delta h` with the returned polynomial cochain (h_1 = 0).
    Cohomologous(Vec<Poly>),
    /// The candidate chart function for `sheet` has a pole.
    NotCohomologous { sheet: usize, witness: Poly },
}

/// Tests whether `c1 - c2` is the coboundary of a polynomial 0-cochain.
///
/// With the convention `(delta h)_ij = h_i - h_j` the candidate is pinned
/// by `h_1 = 0`, `h_j = (c2 - c1)_{1j}`; the difference is a coboundary iff
/// every `h_j` is pole-free. The identity `delta h = c1 - c2` is re-checked
/// on all pairs rather than trusted.
pub fn coboundary_test(c1: &Cocycle, c2: &Cocycle) -> Result<CoboundaryOutcome> {
    if c1.base() != c2.base() {
        return Err(Error::BaseMismatch);
    }
    let base = c1.base();
    let ctx = c1.ctx();
    let mut h = vec![Poly::zero(ctx)];
    for j in 1..base.r {
        let hj = &c2.get(0, j) - &c1.get(0, j);
        if hj.has_pole() {
            return Ok(CoboundaryOutcome::NotCohomologous {
                sheet: j,
                witness: hj,
            });
        }
        h.push(hj);
    }
    for (i, j) in base.pairs() {
        let delta = &h[i] - &h[j];
        let diff = &c1.get(i, j) - &c2.get(i, j);
        if delta != diff {
            return Err(Error::Internal(format!(
                "cochain fails delta-h identity on pair ({}, {})",
                i + 1,
                j + 1
            )));
        }
    }
    let polys = h
        .iter()
        .map(|p| p.into_context(Context::x_poly(base.n)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoboundaryOutcome::Cohomologous(polys))
}

/// Canonical isomorphism invariant: the multiset of pole multi-indices,
/// canonicalized under one simultaneous permutation of the coordinate
/// slots. Unchanged by coboundaries, sheet and coordinate permutations,
/// and coordinate or cocycle scalings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PoleSignature(pub Vec<Vec<i64>>);

impl std::fmt::Display for PoleSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|v| {
                let inner: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                format!("({})", inner.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn pole_signature(c: &Cocycle) -> Result<PoleSignature> {
    let data = match affineness(c) {
        Affineness::Affine(d) => d,
        Affineness::NotSeparated(_) => return Err(Error::NotAffine),
    };
    let n = c.base().n;
    let vectors: Vec<Vec<i64>> = data.poles.values().map(|(m, _)| m.clone()).collect();
    let mut best: Option<Vec<Vec<i64>>> = None;
    for perm in permutations(n) {
        let mut candidate: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| {
                let mut w = vec![0; n];
                for (k, &image) in perm.iter().enumerate() {
                    w[image] = v[k];
                }
                w
            })
            .collect();
        candidate.sort();
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    Ok(PoleSignature(best.unwrap_or_default()))
}

/// Witness that two cocycles lie in the same restricted orbit:
/// `c2 = scale(c1 after permutations) + delta h` with the recorded data.
#[derive(Clone, Debug)]
pub struct OrbitWitness {
    pub sheet_perm: Vec<usize>,
    pub coord_perm: Vec<usize>,
    pub coord_scale: Vec<BigRational>,
    pub cocycle_scale: BigRational,
    pub cochain: Vec<Poly>,
}

/// Outcome of the restricted orbit search. The decided group is the
/// restricted model of the base automorphisms: sheet permutations,
/// coordinate permutations, diagonal rational coordinate scalings, global
/// rational cocycle scaling, and coboundaries. A negative verdict refers to
/// this subgroup only.
#[derive(Clone, Debug)]
pub enum OrbitOutcome {
    InOrbit(Box<OrbitWitness>),
    NotInOrbit {
        /// The pole signatures already separate the two classes.
        signature_distinct: bool,
        /// Number of search branches abandoned because the only scaling
        /// witnesses would need irrational (or complex) parameters.
        branches_outside_q: usize,
    },
}

/// Decides the restricted-orbit relation between two affine cocycles.
pub fn restricted_orbit_test(c1: &Cocycle, c2: &Cocycle) -> Result<OrbitOutcome> {
    if c1.base() != c2.base() {
        return Err(Error::BaseMismatch);
    }
    let base = c1.base();
    if !affineness(c1).is_affine() || !affineness(c2).is_affine() {
        return Err(Error::NotAffine);
    }
    if pole_signature(c1)? != pole_signature(c2)? {
        return Ok(OrbitOutcome::NotInOrbit {
            signature_distinct: true,
            branches_outside_q: 0,
        });
    }
    let mut outside_q = 0usize;
    for sheet_perm in permutations(base.r) {
        let sheeted = permute_sheets(c1, &sheet_perm)?;
        for coord_perm in permutations(base.n) {
            let permuted = permute_coords(&sheeted, &coord_perm)?;
            // Polar parts are untouched by coboundaries, so they must match
            // after scaling: lambda * mu^alpha * a = b per polar monomial.
            let Some(equations) = polar_matching_equations(&permuted, c2) else {
                continue;
            };
            let solve = solve_monomial_system(&equations, base.n + 1);
            if solve.outside_q {
                outside_q += 1;
            }
            for sol in solve.solutions {
                let lambda = sol[0].clone();
                let mu = sol[1..].to_vec();
                let transformed = scale_cocycle(&scale_coords(&permuted, &mu)?, &lambda)?;
                if let CoboundaryOutcome::Cohomologous(h) = coboundary_test(&transformed, c2)? {
                    return Ok(OrbitOutcome::InOrbit(Box::new(OrbitWitness {
                        sheet_perm,
                        coord_perm,
                        coord_scale: mu,
                        cocycle_scale: lambda,
                        cochain: h,
                    })));
                }
            }
        }
    }
    Ok(OrbitOutcome::NotInOrbit {
        signature_distinct: false,
        branches_outside_q: outside_q,
    })
}

/// Relabels the sheets: new `g_ij = g_{perm(i) perm(j)}`.
pub fn permute_sheets(c: &Cocycle, perm: &[usize]) -> Result<Cocycle> {
    let base = c.base();
    let entries = base
        .pairs()
        .map(|(i, j)| ((i, j), c.get(perm[i], perm[j])))
        .collect();
    Cocycle::new(base, entries)
}

/// Applies the coordinate permutation `x_k -> x_{perm(k)}` to every entry.
pub fn permute_coords(c: &Cocycle, perm: &[usize]) -> Result<Cocycle> {
    let entries = c
        .pairs()
        .map(|((i, j), g)| ((i, j), permute_x(g, perm)))
        .collect();
    Cocycle::new(c.base(), entries)
}

fn permute_x(p: &Poly, perm: &[usize]) -> Poly {
    let ctx = p.ctx();
    let n = ctx.n();
    let terms: Vec<(Monomial, BigRational)> = p
        .terms()
        .map(|(m, c)| {
            let mut e = m.clone();
            for (k, &image) in perm.iter().enumerate().take(n) {
                e.0[image] = m.exponent(k);
            }
            (e, c.clone())
        })
        .collect();
    Poly::from_terms(ctx, terms).expect("permutation preserves validity")
}

/// Applies the diagonal scaling `x_k -> mu_k x_k` (so `x^alpha` picks up
/// the factor `mu^alpha`).
pub fn scale_coords(c: &Cocycle, mu: &[BigRational]) -> Result<Cocycle> {
    if mu.iter().any(|m| m.is_zero()) {
        return Err(Error::InvalidCocycle(
            "coordinate scaling must be nonzero".into(),
        ));
    }
    let entries = c
        .pairs()
        .map(|((i, j), g)| {
            let terms: Vec<(Monomial, BigRational)> = g
                .terms()
                .map(|(m, coeff)| {
                    let mut factor = BigRational::one();
                    for (k, mu_k) in mu.iter().enumerate() {
                        factor *= pow_rat(mu_k, m.exponent(k));
                    }
                    (m.clone(), coeff * factor)
                })
                .collect();
            (
                (i, j),
                Poly::from_terms(g.ctx(), terms).expect("scaling preserves validity"),
            )
        })
        .collect();
    Cocycle::new(c.base(), entries)
}

pub fn scale_cocycle(c: &Cocycle, lambda: &BigRational) -> Result<Cocycle> {
    if lambda.is_zero() {
        return Err(Error::InvalidCocycle(
            "cocycle scaling must be nonzero".into(),
        ));
    }
    let entries = c
        .pairs()
        .map(|((i, j), g)| ((i, j), g.scale(lambda)))
        .collect();
    Cocycle::new(c.base(), entries)
}

/// Alternative bundle description available when some `m_k = 1`: the
/// projection dropping `x_k` and `y` also fibers the variety.
#[derive(Clone, Debug)]
pub struct SecondFibration {
    /// Zero-based index of the unit exponent used.
    pub dropped: usize,
    /// Human-readable base coordinates of the projection.
    pub base_coords: Vec<String>,
    /// The derivation generating the second additive action, available
    /// when `Q` does not involve `x_k`.
    pub derivation: Option<Derivation>,
}

/// Detects the second fibration of a sigma hypersurface. Returns `None`
/// when every exponent is at least 2.
pub fn second_fibration(h: &std::sync::Arc<Hypersurface>) -> Result<Option<SecondFibration>> {
    if h.sigma().is_none() {
        return Err(Error::NoSigmaFamily);
    }
    let Some(k) = h.m().iter().position(|&mk| mk == 1) else {
        return Ok(None);
    };
    let mut base_coords: Vec<String> = (0..h.n())
        .filter(|&i| i != k)
        .map(|i| Var::X(i).name())
        .collect();
    base_coords.push("z".to_string());
    let ctx = h.ambient_ctx();
    let q_free_of_xk = h
        .q()
        .into_context(ctx)?
        .terms()
        .all(|(m, _)| m.exponent(k) == 0);
    let derivation = if q_free_of_xk {
        let dq_dy = h.q().into_context(ctx)?.derivative(Var::Y);
        let mut exps: Vec<(Var, i64)> = h
            .m()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(i, &mi)| (Var::X(i), mi))
            .collect();
        exps.push((Var::Z, 1));
        let dy = Poly::monomial(ctx, &exps, int(1))?;
        let mut dx = vec![Poly::zero(ctx); h.n()];
        dx[k] = dq_dy;
        Some(Derivation::new(h.clone(), dx, dy, Poly::zero(ctx))?)
    } else {
        None
    };
    Ok(Some(SecondFibration {
        dropped: k,
        base_coords,
        derivation,
    }))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out.sort();
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

pub(crate) fn pow_rat(q: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let base = if e < 0 { q.recip() } else { q.clone() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// One multiplicative equation `prod v_i^{exps[i]} = rhs`.
struct MonoEq {
    exps: Vec<i64>,
    rhs: BigRational,
}

struct MonoSolve {
    solutions: Vec<Vec<BigRational>>,
    outside_q: bool,
}

/// Collects `lambda * mu^alpha * a = b` over the polar monomials of all
/// pairs; `None` when the polar supports differ (no scaling can work).
fn polar_matching_equations(t: &Cocycle, c2: &Cocycle) -> Option<Vec<MonoEq>> {
    let n = t.base().n;
    let mut eqs = Vec::new();
    for ((i, j), g) in t.pairs() {
        let target = c2.get(i, j);
        let polar_a = polar_part(g);
        let polar_b = polar_part(&target);
        let keys_a: Vec<&Monomial> = polar_a.keys().collect();
        let keys_b: Vec<&Monomial> = polar_b.keys().collect();
        if keys_a != keys_b {
            return None;
        }
        for (mono, ca) in &polar_a {
            let cb = &polar_b[mono];
            let mut exps = vec![1i64];
            exps.extend((0..n).map(|k| mono.exponent(k)));
            eqs.push(MonoEq { exps, rhs: cb / ca });
        }
    }
    Some(eqs)
}

fn polar_part(p: &Poly) -> BTreeMap<Monomial, BigRational> {
    let n = p.ctx().n();
    p.terms()
        .filter(|(m, _)| (0..n).any(|k| m.exponent(k) < 0))
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

/// Solves a multiplicative system over the nonzero rationals by integer
/// row elimination followed by exact root extraction. Every rational
/// solution branch is enumerated; branches that would need irrational
/// parameters are counted, not guessed.
fn solve_monomial_system(eqs: &[MonoEq], nvars: usize) -> MonoSolve {
    let mut rows: Vec<(Vec<i64>, BigRational)> = eqs
        .iter()
        .map(|e| {
            let mut exps = e.exps.clone();
            exps.resize(nvars, 0);
            (exps, e.rhs.clone())
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (column, row)
    let mut used = vec![false; rows.len()];
    for col in 0..nvars {
        loop {
            let mut live: Vec<usize> = (0..rows.len())
                .filter(|&r| !used[r] && rows[r].0[col] != 0)
                .collect();
            if live.is_empty() {
                break;
            }
            if live.len() == 1 {
                used[live[0]] = true;
                pivots.push((col, live[0]));
                break;
            }
            // Euclid step on the two smallest exponents in this column.
            live.sort_by_key(|&r| rows[r].0[col].unsigned_abs());
            let (a, b) = (live[0], live[1]);
            let k = rows[b].0[col].div_euclid(rows[a].0[col]);
            let new_exps: Vec<i64> = rows[b]
                .0
                .iter()
                .zip(&rows[a].0)
                .map(|(&eb, &ea)| eb - k * ea)
                .collect();
            let new_rhs = &rows[b].1 / pow_rat(&rows[a].1, k);
            rows[b] = (new_exps, new_rhs);
        }
    }
    // Rows never promoted to pivots must be trivial for consistency.
    for (r, row) in rows.iter().enumerate() {
        if !used[r] && row.0.iter().all(|&e| e == 0) && !row.1.is_one() {
            return MonoSolve {
                solutions: Vec::new(),
                outside_q: false,
            };
        }
    }
    // Back-substitute in reverse pivot order, branching on even roots.
    // Free columns hit inside a pivot row are pinned to 1 and the row is
    // reprocessed; the final full-system verification keeps this honest.
    let mut partials: Vec<Vec<Option<BigRational>>> = vec![vec![None; nvars]];
    let mut outside_q = false;
    for &(col, row) in pivots.iter().rev() {
        let (exps, rhs) = (&rows[row].0, &rows[row].1);
        let mut next = Vec::new();
        let mut work = std::mem::take(&mut partials);
        while let Some(partial) = work.pop() {
            let mut value = rhs.clone();
            let mut pinned = false;
            for c in 0..nvars {
                if c == col || exps[c] == 0 {
                    continue;
                }
                match &partial[c] {
                    Some(v) => value /= pow_rat(v, exps[c]),
                    None => {
                        let mut p = partial.clone();
                        p[c] = Some(BigRational::one());
                        work.push(p);
                        pinned = true;
                        break;
                    }
                }
            }
            if pinned {
                continue;
            }
            let d = exps[col];
            let target = if d < 0 { value.recip() } else { value };
            let roots = rational_roots(&target, d.unsigned_abs() as u32);
            if roots.is_empty() {
                outside_q = true;
            }
            for root in roots {
                let mut p = partial.clone();
                p[col] = Some(root);
                next.push(p);
            }
            if next.len() > 64 {
                break;
            }
        }
        partials = next;
    }
    let mut solutions = Vec::new();
    'candidate: for partial in partials {
        let full: Vec<BigRational> = partial
            .into_iter()
            .map(|v| v.unwrap_or_else(BigRational::one))
            .collect();
        if full.iter().any(|v| v.is_zero()) {
            continue;
        }
        for eq in eqs {
            let mut lhs = BigRational::one();
            for (c, &e) in eq.exps.iter().enumerate() {
                lhs *= pow_rat(&full[c], e);
            }
            if lhs != eq.rhs {
                continue 'candidate;
            }
        }
        solutions.push(full);
    }
    solutions.dedup();
    MonoSolve {
        solutions,
        outside_q,
    }
}

/// Exact rational d-th roots of `q` (0, 1 or 2 of them).
fn rational_roots(q: &BigRational, d: u32) -> Vec<BigRational> {
    if d == 0 {
        return if q.is_one() {
            vec![BigRational::one()]
        } else {
            Vec::new()
        };
    }
    if d == 1 {
        return vec![q.clone()];
    }
    if q.is_negative() && d.is_multiple_of(2) {
        return Vec::new();
    }
    let num = q.numer().abs();
    let den = q.denom().abs();
    let rn: BigInt = num.nth_root(d);
    let rd: BigInt = den.nth_root(d);
    if pow_int(&rn, d) != num || pow_int(&rd, d) != den {
        return Vec::new();
    }
    let root = BigRational::new(rn, rd);
    if d % 2 == 1 {
        if q.is_negative() {
            vec![-root]
        } else {
            vec![root]
        }
    } else {
        vec![root.clone(), -root]
    }
}

fn pow_int(b: &BigInt, d: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..d {
        acc *= b;
    }
    acc
}
