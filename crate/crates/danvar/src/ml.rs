//! Weight filtrations and the associated graded machinery: admissible
//! weights, the homogenized ring `x^[m] z = y^r`, graded derivations, the
//! degree-comparison inequality, a bounded homogeneous derivation search
//! and truncated upper bounds for the ring of functions invariant under
//! all additive actions.
//!
//! Weights are positive integers. Genuine linear independence of weights
//! over the integers is unattainable with rational data, so it is replaced
//! by support-genericity: on the finite monomial support of a computation,
//! two distinct reduced monomials never share a weight (differences along
//! the relation direction `x^[m] z y^{-r}` are the only permitted
//! collisions, and those never involve two reduced monomials). On failure
//! the y-weight is rescaled by the smallest prime exceeding the current
//! weight spread and the validation retried.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::lnd::{certify_nilpotent, deg, kernel_of_powers, random_element, Derivation, SplitMix};
use crate::poly::{
    int, principal_component, weight_degree, Context, Degree, Monomial, Poly, Var, Weights,
};
use crate::ring::{Hypersurface, RingElement};

/// Iteration cap for the weight rescaling loop.
const RESCALE_CAP: usize = 32;

/// Validates (and if necessary rescales) a weight seed for the given
/// hypersurface: the principal component of `Q` must be `y^r`, the derived
/// z-weight is bound, and support-genericity must hold for all reduced
/// monomials of total degree at most `support_degree`.
pub fn admissible_weight(h: &Hypersurface, seed: &Weights, support_degree: i64) -> Result<Weights> {
    let mut w = admissible_weight_core(h, seed, &|h, w| {
        genericity_violation(h, w, &h.reduced_monomials(support_degree))
    })?;
    w.genericity_degree = Some(support_degree);
    Ok(w)
}

/// Variant validating support-genericity only on a declared monomial
/// support (the monomials actually arising in one computation), instead of
/// every reduced monomial below a degree bound.
pub fn admissible_weight_declared(
    h: &Hypersurface,
    seed: &Weights,
    declared: &[Poly],
) -> Result<Weights> {
    let support: Vec<Poly> = declared.to_vec();
    admissible_weight_core(h, seed, &move |h, w| genericity_violation(h, w, &support))
}

type CollisionCheck<'a> =
    dyn Fn(&Hypersurface, &Weights) -> Result<Option<(Monomial, Monomial)>> + 'a;

fn admissible_weight_core(
    h: &Hypersurface,
    seed: &Weights,
    violation: &CollisionCheck,
) -> Result<Weights> {
    if seed.n() != h.n() {
        return Err(Error::DegenerateWeights(format!(
            "seed has {} x-weights for n = {}",
            seed.n(),
            h.n()
        )));
    }
    let mut w = Weights::new(seed.d_x.clone(), seed.d_y)?;
    for _ in 0..RESCALE_CAP {
        w = w.bind_z(h.m(), h.r())?;
        if !principal_is_y_power(h, &w)? {
            let spread = weight_spread(h, &w)?;
            w = Weights::new(w.d_x.clone(), w.d_y * smallest_prime_above(spread))?;
            continue;
        }
        match violation(h, &w)? {
            None => return Ok(w),
            Some((m1, m2)) => {
                if collision_is_structural(h, &w, &m1, &m2) {
                    return Err(Error::DegenerateWeights(format!(
                        "x-weights {:?} make {:?} and {:?} collide for every y-weight",
                        w.d_x, m1.0, m2.0
                    )));
                }
                let spread = weight_spread(h, &w)?;
                w = Weights::new(w.d_x.clone(), w.d_y * smallest_prime_above(spread))?;
            }
        }
    }
    Err(Error::DegenerateWeights(
        "weight rescaling did not stabilize".into(),
    ))
}

fn principal_is_y_power(h: &Hypersurface, w: &Weights) -> Result<bool> {
    let q = h.q();
    let principal = principal_component(q, w)?;
    let y_r = Poly::monomial(q.ctx(), &[(Var::Y, h.r())], int(1)).unwrap();
    Ok(principal == y_r)
}

/// First pair of distinct equal-weight monomials in the support, if any.
/// Differences along the relation direction never pair two reduced
/// monomials, so any collision among the support is a genuine violation.
fn genericity_violation(
    h: &Hypersurface,
    w: &Weights,
    support: &[Poly],
) -> Result<Option<(Monomial, Monomial)>> {
    let ctx = h.ambient_ctx();
    let mut seen: BTreeMap<i64, Monomial> = BTreeMap::new();
    for poly in support {
        let wide = poly.into_context(ctx).map_err(|_| {
            Error::ContextMismatch("support polynomial outside the ambient ring".into())
        })?;
        for (m, _) in wide.terms() {
            let weight = w.monomial_weight(ctx, m)?;
            if let Some(other) = seen.get(&weight) {
                if other != m {
                    return Ok(Some((other.clone(), m.clone())));
                }
            } else {
                seen.insert(weight, m.clone());
            }
        }
    }
    Ok(None)
}

/// A collision whose weight difference is independent of the y-weight can
/// never be repaired by rescaling `d_y`.
fn collision_is_structural(h: &Hypersurface, w: &Weights, m1: &Monomial, m2: &Monomial) -> bool {
    let n = h.n();
    let y_slot = n;
    let z_slot = n + 1;
    let dy_coeff = (m1.exponent(y_slot) - m2.exponent(y_slot))
        + h.r() * (m1.exponent(z_slot) - m2.exponent(z_slot));
    if dy_coeff != 0 {
        return false;
    }
    let mut fixed = 0i64;
    for k in 0..n {
        let dx = (m1.exponent(k) - m2.exponent(k))
            - (m1.exponent(z_slot) - m2.exponent(z_slot)) * h.m()[k];
        fixed += w.d_x[k] * dx;
    }
    fixed == 0
}

fn weight_spread(h: &Hypersurface, w: &Weights) -> Result<i64> {
    let mut spread = 1i64;
    for mono in h.reduced_monomials(h.r().max(2)) {
        let (m, _) = mono.leading_term().unwrap();
        spread = spread.max(w.monomial_weight(mono.ctx(), m)?.abs());
    }
    for (m, _) in h.q().terms() {
        spread = spread.max(w.monomial_weight(h.q().ctx(), m)?.abs());
    }
    Ok(spread)
}

fn smallest_prime_above(k: i64) -> i64 {
    let mut candidate = k.max(1) + 1;
    loop {
        if is_prime(candidate) {
            return candidate;
        }
        candidate += 1;
    }
}

fn is_prime(k: i64) -> bool {
    if k < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= k {
        if k % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The homogenized ring `Q[x, y, z] / (x^[m] z - y^r)` with its grading.
#[derive(Clone, Debug)]
pub struct HomogenizedRing {
    hyp: Arc<Hypersurface>,
    weights: Weights,
}

impl HomogenizedRing {
    /// Builds the homogenized ring of a hypersurface with validated
    /// weights (the seed is rescaled if necessary).
    pub fn new(source: &Hypersurface, seed: &Weights, support_degree: i64) -> Result<Self> {
        let weights = admissible_weight(source, seed, support_degree)?;
        let ctx = Context::xy(source.n());
        let q = Poly::monomial(ctx, &[(Var::Y, source.r())], int(1)).unwrap();
        let hyp = Hypersurface::new(source.n(), source.m().to_vec(), q)?.into_arc();
        Ok(HomogenizedRing { hyp, weights })
    }

    pub fn hyp(&self) -> &Arc<Hypersurface> {
        &self.hyp
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    /// Number of reduced monomials of the given weight within the
    /// validated support: the dimension of the homogeneous slice.
    pub fn slice_dimension(&self, weight: i64) -> usize {
        let cap = self.weights.genericity_degree.unwrap_or(0);
        self.hyp
            .reduced_monomials(cap)
            .iter()
            .filter(|mono| {
                let (m, _) = mono.leading_term().unwrap();
                self.weights
                    .monomial_weight(mono.ctx(), m)
                    .map(|w| w == weight)
                    .unwrap_or(false)
            })
            .count()
    }

    /// Wraps precomputed weights without re-validating them.
    pub fn from_weights(source: &Hypersurface, weights: Weights) -> Result<Self> {
        let ctx = Context::xy(source.n());
        let q = Poly::monomial(ctx, &[(Var::Y, source.r())], int(1)).unwrap();
        let hyp = Hypersurface::new(source.n(), source.m().to_vec(), q)?.into_arc();
        Ok(HomogenizedRing { hyp, weights })
    }
}

/// The homogeneous derivation associated with a derivation and an
/// admissible weight vector: on each generator it keeps the principal
/// component of the image when the weight jump is maximal, and zero
/// otherwise.
#[derive(Clone, Debug)]
pub struct GradedDerivation {
    hr: HomogenizedRing,
    inner: Derivation,
    t0: i64,
}

impl GradedDerivation {
    pub fn t0(&self) -> i64 {
        self.t0
    }

    pub fn hr(&self) -> &HomogenizedRing {
        &self.hr
    }

    pub fn derivation(&self) -> &Derivation {
        &self.inner
    }

    /// The principal component of a ring element, viewed in the
    /// homogenized ring.
    pub fn gr(&self, b: &RingElement) -> Result<RingElement> {
        if b.is_zero() {
            return Ok(self.hr.hyp.zero_element());
        }
        let principal = principal_component(b.nf(), &self.hr.weights)?;
        Ok(self.hr.hyp.normal_form(&principal))
    }
}

/// Builds the associated graded derivation. Per generator, the weight jump
/// is `t(g) = d(∂g) - d(g)`; the maximum over generators is `t0`, and the
/// graded image is the principal component exactly on the generators that
/// realize it. Weights are validated (and rescaled if needed) against the
/// declared support of this computation: `Q`, the generators and their
/// images. The construction fails if the homogenized relation is not
/// preserved, which indicates inadmissible weights.
pub fn graded_derivation(d: &Derivation, seed: &Weights) -> Result<GradedDerivation> {
    if d.is_zero() {
        return Err(Error::TrivialDerivation);
    }
    let ctx0 = d.owner().ambient_ctx();
    let mut declared: Vec<Poly> = vec![d.owner().q().into_context(ctx0)?];
    for (_, gen) in d.generators() {
        declared.push(gen.nf().clone());
        declared.push(d.apply(&gen).nf().clone());
    }
    let w = admissible_weight_declared(d.owner(), seed, &declared)?;
    let hr = HomogenizedRing::from_weights(d.owner(), w)?;
    let w = hr.weights().clone();
    let mut jumps: Vec<(Var, Option<i64>, Poly)> = Vec::new();
    for (var, gen) in d.generators() {
        let img = d.apply(&gen);
        if img.is_zero() {
            jumps.push((var, None, Poly::zero(d.owner().ambient_ctx())));
            continue;
        }
        let d_img = match weight_degree(img.nf(), &w)? {
            Degree::Finite(v) => v,
            Degree::NegInf => unreachable!(),
        };
        let d_gen = match weight_degree(gen.nf(), &w)? {
            Degree::Finite(v) => v,
            Degree::NegInf => unreachable!(),
        };
        jumps.push((var, Some(d_img - d_gen), img.nf().clone()));
    }
    let t0 = jumps
        .iter()
        .filter_map(|(_, t, _)| *t)
        .max()
        .ok_or(Error::TrivialDerivation)?;
    let ctx = hr.hyp().ambient_ctx();
    let mut images: BTreeMap<Var, Poly> = BTreeMap::new();
    for (var, t, img) in &jumps {
        let image = if *t == Some(t0) {
            principal_component(img, &w)?.into_context(ctx)?
        } else {
            Poly::zero(ctx)
        };
        images.insert(*var, image);
    }
    let dx = (0..hr.hyp().n())
        .map(|i| images[&Var::X(i)].clone())
        .collect();
    let inner = Derivation::new(
        hr.hyp().clone(),
        dx,
        images[&Var::Y].clone(),
        images[&Var::Z].clone(),
    )
    .map_err(|e| Error::RelationNotPreserved(e.to_string()))?;
    // Homogeneity audit: every nonzero image is homogeneous of weight
    // w(gen) + t0.
    for (var, gen) in inner.generators() {
        let img = inner.apply(&gen);
        if img.is_zero() {
            continue;
        }
        let expected = match weight_degree(gen.nf(), &w)? {
            Degree::Finite(v) => v + t0,
            Degree::NegInf => unreachable!(),
        };
        let principal = principal_component(img.nf(), &w)?;
        if &principal != img.nf() || weight_degree(img.nf(), &w)? != Degree::Finite(expected) {
            return Err(Error::Internal(format!(
                "graded image of {} is not homogeneous of the expected weight",
                var.name()
            )));
        }
    }
    Ok(GradedDerivation { hr, inner, t0 })
}

/// Report of the exact degree-comparison checks `deg_∂(b) >= deg_gr∂(gr b)`.
#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub checked: usize,
    pub lines: Vec<String>,
}

pub fn degree_inequality_check(
    d: &Derivation,
    gd: &GradedDerivation,
    samples: usize,
    max_degree: i64,
    seed: u64,
    cap: u32,
) -> Result<InequalityReport> {
    if certify_nilpotent(d, cap).certificate().is_none() {
        return Err(Error::IterationCap {
            cap,
            what: "source derivation".into(),
        });
    }
    if certify_nilpotent(gd.derivation(), cap)
        .certificate()
        .is_none()
    {
        return Err(Error::IterationCap {
            cap,
            what: "graded derivation".into(),
        });
    }
    let h = d.owner();
    let mut elements: Vec<RingElement> = d.generators().into_iter().map(|(_, g)| g).collect();
    let monos = h.reduced_monomials(max_degree);
    let mut rng = SplitMix::new(seed);
    while elements.len() < samples {
        let e = random_element(h, &monos, &mut rng);
        if !e.is_zero() {
            elements.push(e);
        }
    }
    let mut lines = Vec::new();
    let mut checked = 0;
    for b in &elements {
        if b.is_zero() {
            continue;
        }
        let lhs = deg(d, b, cap)?;
        let rhs = deg(gd.derivation(), &gd.gr(b)?, cap)?;
        if lhs < rhs {
            return Err(Error::AxiomFailure(format!(
                "degree inequality fails on {}: deg {} < graded deg {}",
                b.nf(),
                lhs,
                rhs
            )));
        }
        checked += 1;
        if lines.len() < 5 {
            lines.push(format!("deg({}) = {} >= {} = graded deg", b.nf(), lhs, rhs));
        }
    }
    Ok(InequalityReport { checked, lines })
}

/// Report of the single-monomial normal form audit in the homogenized
/// ring.
#[derive(Clone, Debug)]
pub struct UniquenessReport {
    pub slices_checked: usize,
    pub lifts_checked: usize,
}

/// Verifies, on the validated support, that homogeneous elements of the
/// homogenized ring reduce to single monomials: no two reduced monomials
/// share a weight, and random homogeneous lifts along the relation
/// direction always normal-form to one monomial.
pub fn homogeneous_normal_form_uniqueness(
    hr: &HomogenizedRing,
    samples: usize,
    seed: u64,
) -> Result<UniquenessReport> {
    let cap = hr.weights().genericity_degree.ok_or_else(|| {
        Error::DegenerateWeights("weights carry no genericity certificate".into())
    })?;
    let h = hr.hyp();
    let w = hr.weights();
    // Slice dimensions: every occupied weight is hit by exactly one
    // reduced monomial.
    let mut seen: BTreeMap<i64, Monomial> = BTreeMap::new();
    let monos = h.reduced_monomials(cap);
    for mono in &monos {
        let (m, _) = mono.leading_term().unwrap();
        let weight = w.monomial_weight(mono.ctx(), m)?;
        if let Some(prev) = seen.insert(weight, m.clone()) {
            if &prev != m {
                return Err(Error::Internal(format!(
                    "two reduced monomials share weight {weight}"
                )));
            }
        }
    }
    // Random homogeneous lifts along the relation direction reduce to a
    // single monomial.
    let n = h.n();
    let (y_slot, z_slot) = (n, n + 1);
    let mut rng = SplitMix::new(seed);
    let mut lifts_checked = 0;
    for _ in 0..samples {
        let mono = &monos[rng.below(monos.len() as u64) as usize];
        let (m, _) = mono.leading_term().unwrap();
        let mut p = mono.clone();
        // Shift along +v = ([m], -r, +1) while the y exponent permits.
        let mut shifted = m.clone();
        for _ in 0..rng.below(3) {
            if shifted.exponent(y_slot) < h.r() {
                break;
            }
            let mut e = shifted.clone();
            for k in 0..n {
                e.0[k] += h.m()[k];
            }
            e.0[y_slot] -= h.r();
            e.0[z_slot] += 1;
            shifted = e.clone();
            let coeff = 1 + rng.below(4) as i64;
            p = &p + &Poly::from_terms(p.ctx(), [(e, int(coeff))]).unwrap();
        }
        let nf = h.normal_form(&p);
        if !nf.nf().is_monomial() {
            return Err(Error::Internal(format!(
                "homogeneous lift {} reduced to the non-monomial {}",
                p,
                nf.nf()
            )));
        }
        lifts_checked += 1;
    }
    Ok(UniquenessReport {
        slices_checked: seen.len(),
        lifts_checked,
    })
}

/// One certified homogeneous locally nilpotent derivation found by the
/// bounded search.
#[derive(Clone, Debug)]
pub struct SearchHit {
    pub derivation: Derivation,
    pub t0: i64,
    /// All coordinate functions x_i lie in the kernel.
    pub x_in_kernel: bool,
    /// `deg` of the z generator under the derivation.
    pub z_chain_degree: Degree,
}

/// Exhaustive bounded search for homogeneous locally nilpotent derivations
/// of the homogenized ring. Generator images of a homogeneous derivation
/// are homogeneous, hence single reduced monomials; candidates of total
/// degree at most `degree_cap` are grouped by a common weight jump, the
/// scalars are solved exactly from the relation-preservation constraint,
/// and survivors are certified up to `nilpotency_cap`.
pub fn homogeneous_lnd_search(
    hr: &HomogenizedRing,
    degree_cap: i64,
    nilpotency_cap: u32,
    space_bound: u128,
) -> Result<Vec<SearchHit>> {
    let h = hr.hyp();
    let w = hr.weights();
    if w.genericity_degree.unwrap_or(0) < degree_cap {
        return Err(Error::DegenerateWeights(format!(
            "genericity validated only up to degree {:?}, search needs {degree_cap}",
            w.genericity_degree
        )));
    }
    let ctx = h.ambient_ctx();
    let monos = h.reduced_monomials(degree_cap);
    let gens: Vec<(Var, i64)> = {
        let mut v: Vec<(Var, i64)> = (0..h.n()).map(|i| (Var::X(i), w.d_x[i])).collect();
        v.push((Var::Y, w.d_y));
        v.push((Var::Z, w.d_z.expect("weights are bound")));
        v
    };
    // Bucket candidate images by the weight jump they would realize.
    let mut by_jump: BTreeMap<i64, BTreeMap<Var, Vec<Poly>>> = BTreeMap::new();
    for mono in &monos {
        let (m, _) = mono.leading_term().unwrap();
        let weight = w.monomial_weight(mono.ctx(), m)?;
        for &(var, gw) in &gens {
            let jump = weight - gw;
            by_jump
                .entry(jump)
                .or_default()
                .entry(var)
                .or_default()
                .push(mono.clone());
        }
    }
    let mut total: u128 = 0;
    for options in by_jump.values() {
        let mut combos: u128 = 1;
        for list in options.values() {
            combos = combos.saturating_mul(list.len() as u128 + 1);
        }
        total = total.saturating_add(combos.saturating_sub(1));
    }
    if total > space_bound {
        return Err(Error::SearchSpaceOverflow {
            size: total,
            bound: space_bound,
        });
    }

    let f = h.defining_poly();
    let partials: BTreeMap<Var, Poly> = gens
        .iter()
        .map(|&(var, _)| (var, f.derivative(var)))
        .collect();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut hits = Vec::new();
    for (&jump, options) in &by_jump {
        let vars: Vec<Var> = gens.iter().map(|&(v, _)| v).collect();
        let mut choice: Vec<Option<&Poly>> = vec![None; vars.len()];
        enumerate_combos(&vars, options, 0, &mut choice, &mut |choice| {
            let picked: Vec<(Var, &Poly)> = vars
                .iter()
                .zip(choice.iter())
                .filter_map(|(&v, c)| c.map(|p| (v, p)))
                .collect();
            if picked.is_empty() {
                return;
            }
            // Relation preservation is linear in the scalars.
            let contributions: Vec<Poly> = picked
                .iter()
                .map(|(var, mono)| h.normal_form(&(&partials[var] * *mono)).nf().clone())
                .collect();
            let mut rows: BTreeSet<Monomial> = BTreeSet::new();
            for c in &contributions {
                for (m, _) in c.terms() {
                    rows.insert(m.clone());
                }
            }
            let row_index: BTreeMap<Monomial, usize> =
                rows.into_iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut matrix = QMatrix::zeros(row_index.len().max(1), picked.len());
            for (col, c) in contributions.iter().enumerate() {
                for (m, coeff) in c.terms() {
                    matrix.set(row_index[m], col, coeff.clone());
                }
            }
            for vector in matrix.nullspace() {
                let mut images: BTreeMap<Var, Poly> =
                    gens.iter().map(|&(v, _)| (v, Poly::zero(ctx))).collect();
                for ((var, mono), coeff) in picked.iter().zip(vector.iter()) {
                    if !coeff.is_zero() {
                        images.insert(*var, mono.scale(coeff));
                    }
                }
                if images.values().all(Poly::is_zero) {
                    continue;
                }
                let key = gens
                    .iter()
                    .map(|&(v, _)| images[&v].to_string())
                    .collect::<Vec<_>>()
                    .join(" | ");
                if !seen.insert(key) {
                    continue;
                }
                let dx: Vec<Poly> = (0..h.n()).map(|i| images[&Var::X(i)].clone()).collect();
                let Ok(candidate) = Derivation::new(
                    h.clone(),
                    dx,
                    images[&Var::Y].clone(),
                    images[&Var::Z].clone(),
                ) else {
                    continue;
                };
                if certify_nilpotent(&candidate, nilpotency_cap)
                    .certificate()
                    .is_none()
                {
                    continue;
                }
                let x_in_kernel = (0..h.n()).all(|i| candidate.image_x(i).is_zero());
                let z = h.normal_form(&Poly::var(ctx, Var::Z));
                let z_chain_degree =
                    deg(&candidate, &z, nilpotency_cap + 2).unwrap_or(Degree::NegInf);
                hits.push(SearchHit {
                    derivation: candidate,
                    t0: jump,
                    x_in_kernel,
                    z_chain_degree,
                });
            }
        });
    }
    Ok(hits)
}

fn enumerate_combos<'a>(
    vars: &[Var],
    options: &'a BTreeMap<Var, Vec<Poly>>,
    at: usize,
    choice: &mut Vec<Option<&'a Poly>>,
    f: &mut impl FnMut(&Vec<Option<&'a Poly>>),
) {
    if at == vars.len() {
        f(choice);
        return;
    }
    choice[at] = None;
    enumerate_combos(vars, options, at + 1, choice, f);
    if let Some(list) = options.get(&vars[at]) {
        for p in list {
            choice[at] = Some(p);
            enumerate_combos(vars, options, at + 1, choice, f);
        }
    }
    choice[at] = None;
}

/// Intersection of the bounded kernels of a derivation catalog: a
/// truncated upper bound for the subring of functions invariant under all
/// additive actions. Outputs are bounds, never the invariant itself.
pub fn ml_upper_bound(
    h: &Arc<Hypersurface>,
    catalog: &[Derivation],
    degree_cap: i64,
) -> Result<Vec<RingElement>> {
    if catalog.is_empty() {
        return Err(Error::EmptyCatalog);
    }
    for d in catalog {
        if d.owner().as_ref() != h.as_ref() {
            return Err(Error::ContextMismatch(
                "catalog derivation lives on a different hypersurface".into(),
            ));
        }
    }
    let items: Vec<(&Derivation, u32)> = catalog.iter().map(|d| (d, 1)).collect();
    Ok(kernel_of_powers(h, &items, degree_cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::second_fibration;
    use crate::lnd::{canonical_derivation, DEFAULT_CAP};
    use crate::poly::parse;
    use crate::ring::SigmaFamily;

    fn x2(m: i64) -> Arc<Hypersurface> {
        let sigma = SigmaFamily::parse_family(&["1".into(), "-1".into()], 1).unwrap();
        Hypersurface::from_sigma(vec![m], sigma).unwrap()
    }

    fn seed35() -> Weights {
        Weights::new(vec![3], 5).unwrap()
    }

    #[test]
    fn admissible_weights_accept_and_bind() {
        let h = x2(2);
        // Declared support of the graded computation: Q, generators and the
        // canonical images. No collisions, so (3, 5) stays and d_z = 4.
        let ctx = h.ambient_ctx();
        let declared = vec![
            h.q().into_context(ctx).unwrap(),
            parse("x1 + y + z", ctx).unwrap(),
            parse("x1^2", ctx).unwrap(),
            parse("2*y", ctx).unwrap(),
        ];
        let w = admissible_weight_declared(&h, &seed35(), &declared).unwrap();
        assert_eq!(w.d_y, 5);
        assert_eq!(w.d_z, Some(4));
        // Full-support genericity at degree 2 must rescale: x1*y and z^2
        // both weigh 8 under (3, 5).
        let w = admissible_weight(&h, &seed35(), 2).unwrap();
        assert!(w.d_y > 5);
        assert_eq!(w.d_z, Some(2 * w.d_y - 6));
    }

    #[test]
    fn admissible_weights_rescale_when_q_dominates() {
        // Q = y^2 + x^5 y: with d_x = 3, d_y = 5 the tail weighs 20 > 10.
        let q = parse("y^2 + x1^5*y", Context::xy(1)).unwrap();
        let h = Hypersurface::new(1, vec![2], q).unwrap();
        let w = admissible_weight(&h, &seed35(), 1).unwrap();
        assert!(w.d_y > 5); // got rescaled
        assert!(2 * w.d_y > 15 + w.d_y); // principal component is y^2 now
    }

    #[test]
    fn exact_y_power_accepts_any_seed() {
        let q = parse("y^2", Context::xy(1)).unwrap();
        let h = Hypersurface::new(1, vec![2], q).unwrap();
        let w = admissible_weight(&h, &seed35(), 1).unwrap();
        assert_eq!((w.d_x[0], w.d_y), (3, 5));
    }

    #[test]
    fn graded_derivation_on_the_square_example() {
        // X_{(2), y^2-1} with weights (3, 5): t0 = 1, gr d: y -> x^2,
        // z -> 2y, and the homogenized relation is preserved.
        let h = x2(2);
        let d = canonical_derivation(&h);
        let gd = graded_derivation(&d, &seed35()).unwrap();
        assert_eq!(gd.t0(), 1);
        let ctx = gd.hr().hyp().ambient_ctx();
        assert_eq!(gd.derivation().image_y(), &parse("x1^2", ctx).unwrap());
        assert_eq!(gd.derivation().image_z(), &parse("2*y", ctx).unwrap());
        assert!(gd.derivation().image_x(0).is_zero());
        let rel = gd.hr().hyp().defining_poly();
        assert!(gd
            .hr()
            .hyp()
            .normal_form(&gd.derivation().apply_poly(&rel))
            .is_zero());
    }

    #[test]
    fn graded_derivation_with_unit_exponent() {
        let h = x2(1);
        let d = canonical_derivation(&h);
        let gd = graded_derivation(&d, &seed35()).unwrap();
        let ctx = gd.hr().hyp().ambient_ctx();
        assert_eq!(gd.derivation().image_y(), &parse("x1", ctx).unwrap());
        assert_eq!(gd.derivation().image_z(), &parse("2*y", ctx).unwrap());
    }

    #[test]
    fn zero_derivation_rejected() {
        let h = x2(2);
        let ctx = h.ambient_ctx();
        let zero = Derivation::new(
            h.clone(),
            vec![Poly::zero(ctx)],
            Poly::zero(ctx),
            Poly::zero(ctx),
        )
        .unwrap();
        assert!(matches!(
            graded_derivation(&zero, &seed35()),
            Err(Error::TrivialDerivation)
        ));
    }

    #[test]
    fn degree_inequality_on_z() {
        let h = x2(2);
        let d = canonical_derivation(&h);
        let gd = graded_derivation(&d, &seed35()).unwrap();
        let z = h.element("z").unwrap();
        let lhs = deg(&d, &z, DEFAULT_CAP).unwrap();
        let rhs = deg(gd.derivation(), &gd.gr(&z).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(lhs, Degree::Finite(2));
        assert_eq!(rhs, Degree::Finite(2));
        let report = degree_inequality_check(&d, &gd, 50, 4, 11, DEFAULT_CAP).unwrap();
        assert!(report.checked >= 40);
    }

    #[test]
    fn graded_derivation_is_homogeneous_on_random_elements() {
        let h = x2(2);
        let d = canonical_derivation(&h);
        let gd = graded_derivation(&d, &seed35()).unwrap();
        let w = gd.hr().weights().clone();
        // Homogeneous elements of the graded ring are single reduced
        // monomials; their images gain exactly t0 in weight.
        for mono in gd.hr().hyp().reduced_monomials(3) {
            let e = gd.hr().hyp().normal_form(&mono);
            let img = gd.derivation().apply(&e);
            if img.is_zero() {
                continue;
            }
            let before = weight_degree(e.nf(), &w).unwrap().finite().unwrap();
            let after = weight_degree(img.nf(), &w).unwrap().finite().unwrap();
            assert_eq!(after, before + gd.t0());
            assert_eq!(
                crate::poly::principal_component(img.nf(), &w).unwrap(),
                img.nf().clone()
            );
        }
    }

    #[test]
    fn uniqueness_audit_works() {
        let h = x2(2);
        let hr = HomogenizedRing::new(&h, &seed35(), 4).unwrap();
        let report = homogeneous_normal_form_uniqueness(&hr, 100, 23).unwrap();
        assert!(report.slices_checked > 0);
        assert_eq!(report.lifts_checked, 100);
        // x^2 z and y^2 are the same class, reduced to y^2.
        let e = hr.hyp().element("x1^2*z").unwrap();
        assert_eq!(e, hr.hyp().element("y^2").unwrap());
    }

    #[test]
    fn search_finds_only_x_kernel_lnds_for_m_two() {
        let h = x2(2);
        let hr = HomogenizedRing::new(&h, &seed35(), 3).unwrap();
        let hits = homogeneous_lnd_search(&hr, 3, 12, 1 << 20).unwrap();
        assert!(!hits.is_empty());
        for hit in &hits {
            assert!(hit.x_in_kernel);
            assert!(hit.z_chain_degree >= Degree::Finite(2));
        }
    }

    #[test]
    fn search_finds_second_action_for_m_one() {
        let h = x2(1);
        let hr = HomogenizedRing::new(&h, &seed35(), 3).unwrap();
        let hits = homogeneous_lnd_search(&hr, 3, 12, 1 << 20).unwrap();
        assert!(hits.iter().any(|hit| !hit.x_in_kernel));
    }

    #[test]
    fn ml_bound_matches_x_polynomials() {
        let h = x2(2);
        let d = canonical_derivation(&h);
        let conj = crate::lnd::conjugate(&d, &d, &crate::poly::rat(1, 1), DEFAULT_CAP).unwrap();
        let basis = ml_upper_bound(&h, &[d, conj], 3).unwrap();
        let strings: Vec<String> = basis.iter().map(|e| e.to_string()).collect();
        assert_eq!(strings, vec!["1", "x1", "x1^2", "x1^3"]);
    }

    #[test]
    fn ml_bound_with_second_fibration_is_constants() {
        let h = x2(1);
        let d = canonical_derivation(&h);
        let second = second_fibration(&h).unwrap().unwrap().derivation.unwrap();
        let basis = ml_upper_bound(&h, &[d, second], 3).unwrap();
        let strings: Vec<String> = basis.iter().map(|e| e.to_string()).collect();
        assert_eq!(strings, vec!["1"]);
    }

    #[test]
    fn single_derivation_catalog_is_its_kernel() {
        let h = x2(2);
        let d = canonical_derivation(&h);
        let via_catalog = ml_upper_bound(&h, std::slice::from_ref(&d), 2).unwrap();
        let direct = crate::lnd::kernel_bounded(&d, 2);
        assert_eq!(via_catalog, direct);
        assert!(ml_upper_bound(&h, &[], 2).is_err());
    }
}
