//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Every tolerance is zero — all assertions are exact identities over the
//! rationals — and the two pipeline criteria carry wall-clock budgets.

use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use danvar::cancel::{build_iso, Caps, IsoOutcome};
use danvar::cocycle::{
    affineness, coboundary_test, pole_signature, restricted_orbit_test, sigma_cocycle, Affineness,
    BaseScheme, CoboundaryOutcome, Cocycle, OrbitOutcome, SeparationWitness,
};
use danvar::lnd::{canonical_derivation, deg, exponential, kernel2_bounded, kernel_bounded};
use danvar::ml::{
    graded_derivation, homogeneous_lnd_search, homogeneous_normal_form_uniqueness, ml_upper_bound,
    HomogenizedRing,
};
use danvar::poly::{parse, Context, Degree, Poly, Var, Weights};
use danvar::ring::{Hypersurface, Membership, SigmaFamily};

fn sigma_const(values: &[i64], n: usize) -> SigmaFamily {
    SigmaFamily::parse_family(&values.iter().map(|v| v.to_string()).collect::<Vec<_>>(), n).unwrap()
}

fn surface(m: Vec<i64>, sigma: SigmaFamily) -> Arc<Hypersurface> {
    Hypersurface::from_sigma(m, sigma).unwrap()
}

fn cocycle_of(h: &Arc<Hypersurface>) -> Cocycle {
    let base = BaseScheme::new(h.n(), h.r() as usize).unwrap();
    sigma_cocycle(base, h.sigma().unwrap(), h.m()).unwrap()
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_danvar")
}

/// Criterion 1: the Danielewski pair end to end, with the certificate
/// rechecked by a fresh process, in under 60 seconds.
#[test]
fn criterion_1_danielewski_pipeline() {
    let clock = Instant::now();
    let s1 = surface(vec![1], sigma_const(&[1, -1], 1));
    let s2 = surface(vec![2], sigma_const(&[1, -1], 1));
    let g1 = cocycle_of(&s1);
    let g2 = cocycle_of(&s2);
    assert!(affineness(&g1).is_affine());
    assert!(affineness(&g2).is_affine());
    let sig1 = pole_signature(&g1).unwrap();
    let sig2 = pole_signature(&g2).unwrap();
    assert_eq!(sig1.to_string(), "{(1)}");
    assert_eq!(sig2.to_string(), "{(2)}");
    assert_ne!(sig1, sig2);
    assert!(matches!(
        coboundary_test(&g1, &g2).unwrap(),
        CoboundaryOutcome::NotCohomologous { .. }
    ));

    // Certificate through the CLI, recheck in a fresh process.
    let dir = std::env::temp_dir().join("danvar-acceptance-1");
    std::fs::create_dir_all(&dir).unwrap();
    let s1_path = dir.join("s1.json");
    let s2_path = dir.join("s2.json");
    let cert_path = dir.join("cert.json");
    std::fs::write(
        &s1_path,
        r#"{ "n": 1, "m": [1], "Q": "y^2 - 1", "sigma": ["1", "-1"] }"#,
    )
    .unwrap();
    std::fs::write(
        &s2_path,
        r#"{ "n": 1, "m": [2], "Q": "y^2 - 1", "sigma": ["1", "-1"] }"#,
    )
    .unwrap();
    let build = Command::new(bin())
        .args([
            "cancel-certificate",
            s1_path.to_str().unwrap(),
            s2_path.to_str().unwrap(),
            "-o",
            cert_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(build.status.code(), Some(0), "cancel-certificate failed");
    let recheck = Command::new(bin())
        .args(["recheck", cert_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(
        recheck.status.code(),
        Some(0),
        "fresh-process recheck failed"
    );

    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs() < 60, "criterion 1 took {elapsed:?}");
    println!("[acceptance] criterion 1 (Danielewski pipeline, {elapsed:?}): PASS");
}

/// Criterion 2: the higher-dimensional counterexample. The multi-index
/// sets must be distinct for the non-isomorphism half, so the orbit
/// negativity is checked on (2,3) vs (3,3); the certificate half runs on
/// (2,3) vs (3,2) exactly as stated, within caps t <= 12, x <= 24. The
/// pair (2,3)/(3,2) itself is related by the coordinate swap, and the
/// orbit search is required to find that witness.
#[test]
fn criterion_2_higher_dimensional_counterexample() {
    let clock = Instant::now();
    let sigma = sigma_const(&[1, -1], 2);
    let a = surface(vec![2, 3], sigma.clone());
    let b_swapped = surface(vec![3, 2], sigma.clone());
    let b_distinct = surface(vec![3, 3], sigma.clone());

    // Non-isomorphism via pole signatures for distinct multi-index sets.
    let ga = cocycle_of(&a);
    let gb = cocycle_of(&b_distinct);
    assert_ne!(pole_signature(&ga).unwrap(), pole_signature(&gb).unwrap());
    match restricted_orbit_test(&ga, &gb).unwrap() {
        OrbitOutcome::NotInOrbit {
            signature_distinct, ..
        } => assert!(signature_distinct),
        OrbitOutcome::InOrbit(w) => panic!("unexpected witness {w:?}"),
    }

    // (2,3) and (3,2) share the same multi-index set: the coordinate swap
    // is an isomorphism and the orbit search must find it.
    let gswap = cocycle_of(&b_swapped);
    assert_eq!(
        pole_signature(&ga).unwrap(),
        pole_signature(&gswap).unwrap()
    );
    match restricted_orbit_test(&ga, &gswap).unwrap() {
        OrbitOutcome::InOrbit(w) => assert_eq!(w.coord_perm, vec![1, 0]),
        other => panic!("expected the coordinate-swap witness, got {other:?}"),
    }

    // Verified cylinder certificate for the (2,3) vs (3,2) pair under the
    // default caps, which sit inside the stated ceiling (t <= 12, x <= 24).
    let defaults = danvar::cancel::default_caps(&a, &b_swapped);
    assert!(defaults.t_cap <= 12 && defaults.x_cap <= 24);
    let outcome = build_iso(&a, &b_swapped, Some(defaults)).unwrap();
    let cert = match outcome {
        IsoOutcome::Certificate(c) => *c,
        IsoOutcome::Inconclusive { caps, detail } => {
            // One doubling is allowed, still within the ceiling.
            let doubled = Caps {
                t_cap: caps.t_cap.min(6) * 2,
                x_cap: caps.x_cap.min(12) * 2,
            };
            assert!(doubled.t_cap <= 12 && doubled.x_cap <= 24, "{detail}");
            match build_iso(&a, &b_swapped, Some(doubled)).unwrap() {
                IsoOutcome::Certificate(c) => *c,
                IsoOutcome::Inconclusive { detail, .. } => {
                    panic!("no certificate within the doubled caps: {detail}")
                }
            }
        }
    };
    assert!(danvar::cancel::recheck(&cert).unwrap().ok);
    // And the certificate for a genuinely non-isomorphic pair exists too.
    let cert2 = build_iso(&a, &b_distinct, None)
        .unwrap()
        .certificate()
        .expect("certificate for (2,3) vs (3,3)");
    assert!(danvar::cancel::recheck(&cert2).unwrap().ok);

    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs() < 600, "criterion 2 took {elapsed:?}");
    println!("[acceptance] criterion 2 (higher-dimensional counterexample, {elapsed:?}): PASS");
}

/// Criterion 3: 200 random valid sigma families are all affine with the
/// total-ordering side condition, and the crafted violating cocycle is
/// rejected with the right witness.
#[test]
fn criterion_3_affineness_criterion() {
    let mut rng = StdRng::seed_from_u64(31);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(1..=3usize);
        let r = rng.gen_range(2..=3usize);
        let sigma = random_sigma_family(&mut rng, n, r);
        let m: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3i64)).collect();
        let base = BaseScheme::new(n, r).unwrap();
        let c = sigma_cocycle(base, &sigma, &m).unwrap();
        match affineness(&c) {
            Affineness::Affine(data) => {
                // Total ordering of the first-row multi-indices, re-checked
                // here pairwise rather than trusted.
                for (_, mi) in &data.chain {
                    for (_, mj) in &data.chain {
                        let le = mi.iter().zip(mj).all(|(a, b)| a <= b);
                        let ge = mi.iter().zip(mj).all(|(a, b)| a >= b);
                        assert!(le || ge, "incomparable chain entries {mi:?}, {mj:?}");
                    }
                }
            }
            Affineness::NotSeparated(w) => panic!("sigma cocycle not affine: {w}"),
        }
        checked += 1;
    }

    // The hand-crafted violating cocycle: g12 = x1^-1 x2^-2,
    // g13 = x1^-2 x2^-1 forces a23 into (x1, x2).
    let lctx = Context::x_laurent(2);
    let g12 = parse("x1^-1*x2^-2", lctx).unwrap();
    let g13 = parse("x1^-2*x2^-1", lctx).unwrap();
    let g23 = &g13 - &g12;
    let base = BaseScheme::new(2, 3).unwrap();
    let c = Cocycle::new(base, vec![((0, 1), g12), ((0, 2), g13), ((1, 2), g23)]).unwrap();
    match affineness(&c) {
        Affineness::NotSeparated(SeparationWitness::UnitIdealFailure {
            pair,
            component,
            residue,
        }) => {
            assert_eq!(pair, (1, 2));
            // The residue at x_k = 0 is a nonconstant polynomial, i.e.
            // a_23 lies in the ideal (x1, x2).
            assert!(!residue.is_constant());
            let a23 = parse("x2 - x1", Context::x_poly(2)).unwrap();
            let restricted = a23.eval_var_zero(Var::X(component)).unwrap();
            assert_eq!(residue, restricted);
        }
        other => panic!("expected the unit-ideal witness, got {other:?}"),
    }
    println!("[acceptance] criterion 3 (affineness criterion, 200 random + 1 crafted): PASS");
}

fn random_sigma_family(rng: &mut StdRng, n: usize, r: usize) -> SigmaFamily {
    let ctx = Context::x_poly(n);
    let mut constants: Vec<i64> = Vec::new();
    while constants.len() < r {
        let c = rng.gen_range(-6..=6i64);
        if !constants.contains(&c) {
            constants.push(c);
        }
    }
    let all_ones = Poly::monomial(
        ctx,
        &(0..n).map(|i| (Var::X(i), 1i64)).collect::<Vec<_>>(),
        danvar::poly::int(1),
    )
    .unwrap();
    let polys = constants
        .into_iter()
        .map(|c| {
            let mut p = Poly::int(ctx, c);
            if rng.gen_bool(0.5) {
                // A tail divisible by x1...xn keeps the family valid.
                let extra = rng.gen_range(0..=2i64);
                let coeff = rng.gen_range(-3..=3i64);
                if coeff != 0 {
                    let mono = Poly::monomial(ctx, &[(Var::X(0), extra)], danvar::poly::int(coeff))
                        .unwrap();
                    p = &p + &(&mono * &all_ones);
                }
            }
            p
        })
        .collect();
    SigmaFamily::new(polys).unwrap()
}

/// Criterion 4: the derivation engine on X_{(2), y^2 - 1}, everything
/// exact.
#[test]
fn criterion_4_lnd_engine() {
    let h = surface(vec![2], sigma_const(&[1, -1], 1));
    let d = canonical_derivation(&h);

    // deg of z is 2.
    let z = h.element("z").unwrap();
    assert_eq!(deg(&d, &z, 64).unwrap(), Degree::Finite(2));

    // The exponential flow satisfies the surface equation identically in t.
    let wide = h.ambient_ctx().with(Var::T);
    let y_flow = exponential(&d, &h.element("y").unwrap(), 64).unwrap();
    let z_flow = exponential(&d, &h.element("z").unwrap(), 64).unwrap();
    let x_sq = parse("x1^2", wide).unwrap();
    let relation = &(&(&x_sq * z_flow.nf()) - &(y_flow.nf() * y_flow.nf())) + &Poly::one(wide);
    assert!(h.normal_form(&relation).is_zero());

    // Flow composition on generators, in two formal variables.
    let report = danvar::lnd::action_axioms_check(&d, 4, 7, 64).unwrap();
    assert!(report
        .checks
        .iter()
        .any(|c| c.contains("exp(s*d) o exp(t*d)")));

    // Kernel bases.
    let basis = kernel_bounded(&d, 3);
    let strings: Vec<String> = basis.iter().map(|e| e.to_string()).collect();
    assert_eq!(strings, vec!["1", "x1", "x1^2", "x1^3"]);
    let basis2 = kernel2_bounded(&d, 2);
    let ctx = h.ambient_ctx();
    let z_slot = ctx.slot(Var::Z);
    for e in &basis2 {
        for (mono, _) in e.nf().terms() {
            assert_eq!(mono.exponent(z_slot), 0, "kernel2 element uses z: {e}");
        }
    }
    assert!(!basis2.is_empty());
    println!("[acceptance] criterion 4 (LND engine, exact identities): PASS");
}

/// Criterion 5: graded machinery with weights (3, 5) on X_{(2), y^2 - 1}.
#[test]
fn criterion_5_graded_machinery() {
    let h = surface(vec![2], sigma_const(&[1, -1], 1));
    let d = canonical_derivation(&h);
    let seed = Weights::new(vec![3], 5).unwrap();
    let gd = graded_derivation(&d, &seed).unwrap();
    assert_eq!(gd.t0(), 1);
    assert_eq!(gd.hr().weights().d_y, 5, "weights (3,5) must be kept as-is");

    // gr d preserves x^2 z - y^2.
    let rel = gd.hr().hyp().defining_poly();
    assert!(gd
        .hr()
        .hyp()
        .normal_form(&gd.derivation().apply_poly(&rel))
        .is_zero());

    // Degree inequality on 100 random elements of degree <= 4.
    let report = danvar::ml::degree_inequality_check(&d, &gd, 100, 4, 5, 64).unwrap();
    assert!(
        report.checked >= 100,
        "only {} samples checked",
        report.checked
    );
    println!(
        "[acceptance] criterion 5 (graded machinery, {} exact inequality checks): PASS",
        report.checked
    );
}

/// Criterion 6: bounded evidence for the invariant-subring theorem.
#[test]
fn criterion_6_ml_evidence() {
    let seed = Weights::new(vec![3], 5).unwrap();

    // m = 2: every certified homogeneous derivation kills x and has a long
    // z chain.
    let h2 = surface(vec![2], sigma_const(&[1, -1], 1));
    let hr2 = HomogenizedRing::new(&h2, &seed, 3).unwrap();
    let hits = homogeneous_lnd_search(&hr2, 3, 12, 1 << 20).unwrap();
    assert!(!hits.is_empty(), "search found no certified derivations");
    for hit in &hits {
        assert!(hit.x_in_kernel, "{:?} does not kill x", hit.derivation);
        assert!(hit.z_chain_degree >= Degree::Finite(2));
    }

    // m = 1: the second bundle structure shows up as a derivation whose
    // kernel omits x.
    let h1 = surface(vec![1], sigma_const(&[1, -1], 1));
    let hr1 = HomogenizedRing::new(&h1, &seed, 3).unwrap();
    let hits1 = homogeneous_lnd_search(&hr1, 3, 12, 1 << 20).unwrap();
    assert!(hits1.iter().any(|hit| !hit.x_in_kernel));

    // The two-element catalog pins the bound to the x-polynomials.
    let d = canonical_derivation(&h2);
    let conj = danvar::lnd::conjugate(&d, &d, &danvar::poly::rat(1, 1), 64).unwrap();
    let basis = ml_upper_bound(&h2, &[d, conj], 3).unwrap();
    let strings: Vec<String> = basis.iter().map(|e| e.to_string()).collect();
    assert_eq!(strings, vec!["1", "x1", "x1^2", "x1^3"]);
    println!(
        "[acceptance] criterion 6 (Makar-Limanov evidence, {} hits): PASS",
        hits.len()
    );
}

/// Criterion 7: parser and normal-form invariants at the stated sample
/// counts.
#[test]
fn criterion_7_parser_and_normal_form_invariants() {
    let mut rng = StdRng::seed_from_u64(77);

    // 1000 parse/print round trips across several ring contexts.
    let contexts = [
        Context::x_poly(1),
        Context::x_laurent(2),
        Context::xy(2),
        Context::xy_laurent(1),
        Context::ambient(1),
        Context::ambient(3),
    ];
    for i in 0..1000 {
        let ctx = contexts[i % contexts.len()];
        let p = random_poly(&mut rng, ctx);
        let text = p.to_string();
        let reparsed = parse(&text, ctx).unwrap_or_else(|e| panic!("reparse of '{text}': {e}"));
        assert_eq!(reparsed, p, "round trip failed for '{text}'");
    }

    // 500 random ring elements: normal form idempotence and the Laurent
    // round trip.
    let surfaces = [
        surface(vec![1], sigma_const(&[1, -1], 1)),
        surface(vec![2], sigma_const(&[1, -1], 1)),
        surface(vec![2, 3], sigma_const(&[0, 2], 2)),
    ];
    for i in 0..500 {
        let h = &surfaces[i % surfaces.len()];
        let p = random_poly(&mut rng, h.ambient_ctx());
        let e = h.normal_form(&p);
        assert_eq!(h.normal_form(e.nf()), e, "normal form is not idempotent");
        match h.laurent_membership(&e.laurent_embed()).unwrap() {
            Membership::Member(back) => assert_eq!(back, e, "Laurent round trip failed"),
            Membership::NonMember { .. } => panic!("embedded element fell out of the ring"),
        }
    }

    // 200 random homogeneous elements of the homogenized ring reduce to a
    // single monomial.
    let h = surface(vec![2], sigma_const(&[1, -1], 1));
    let hr = HomogenizedRing::new(&h, &Weights::new(vec![3], 5).unwrap(), 4).unwrap();
    let report = homogeneous_normal_form_uniqueness(&hr, 200, 9).unwrap();
    assert_eq!(report.lifts_checked, 200);
    println!("[acceptance] criterion 7 (parser + normal-form invariants, 1000/500/200): PASS");
}

fn random_poly(rng: &mut StdRng, ctx: Context) -> Poly {
    let mut p = Poly::zero(ctx);
    let terms = rng.gen_range(0..5);
    for _ in 0..terms {
        let mut exps = Vec::new();
        for i in 0..ctx.n() {
            let e = if ctx.is_laurent() {
                rng.gen_range(-3..=3i64)
            } else {
                rng.gen_range(0..=3i64)
            };
            exps.push((Var::X(i), e));
        }
        for v in [Var::Y, Var::Z] {
            if ctx.has(v) {
                exps.push((v, rng.gen_range(0..=3i64)));
            }
        }
        let num = rng.gen_range(-8..=8i64);
        let den = rng.gen_range(1..=4i64);
        if num == 0 {
            continue;
        }
        let coeff = BigRational::new(BigInt::from(num), BigInt::from(den));
        p = &p + &Poly::monomial(ctx, &exps, coeff).unwrap();
    }
    p
}
