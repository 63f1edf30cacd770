//! The separated/affine decision procedure on Čech cocycles: pole
//! decomposition, the unit-ideal substitution test, the total ordering of
//! first-row pole multi-indices, and a hand-crafted cocycle that fails.
//!
//! Run with: `cargo run --example affineness_criterion`

use danvar::cocycle::{affineness, sigma_cocycle, Affineness, BaseScheme, Cocycle};
use danvar::poly::{parse, Context};
use danvar::ring::SigmaFamily;

fn main() -> danvar::Result<()> {
    // A three-sheet family over the plane with non-constant sheets.
    let sigma = SigmaFamily::parse_family(&["0".into(), "1 + x1*x2".into(), "3".into()], 2)?;
    let base = BaseScheme::new(2, 3)?;
    let c = sigma_cocycle(base, &sigma, &[2, 3])?;
    match affineness(&c) {
        Affineness::Affine(data) => {
            println!("sigma cocycle is affine; pole data per pair:");
            for ((i, j), (pole, a)) in &data.poles {
                println!("  g_{}{} = x^-{:?} * ({})", i + 1, j + 1, pole, a);
            }
            println!("first-row chain (totally ordered):");
            for (sheet, m) in &data.chain {
                println!("  m_1{} = {:?}", sheet + 1, m);
            }
        }
        Affineness::NotSeparated(w) => unreachable!("sigma families are affine: {w}"),
    }

    // The crafted counterexample: incomparable pole vectors force the
    // third overlap function outside the unit-ideal condition.
    let lctx = Context::x_laurent(2);
    let g12 = parse("x1^-1*x2^-2", lctx)?;
    let g13 = parse("x1^-2*x2^-1", lctx)?;
    let g23 = &g13 - &g12;
    println!("\ncrafted cocycle: g12 = {g12}, g13 = {g13}, g23 = {g23}");
    let crafted = Cocycle::new(
        BaseScheme::new(2, 3)?,
        vec![((0, 1), g12), ((0, 2), g13), ((1, 2), g23)],
    )?;
    match affineness(&crafted) {
        Affineness::NotSeparated(witness) => println!("verdict: not separated — {witness}"),
        Affineness::Affine(_) => unreachable!(),
    }

    // A regular overlap function also fails immediately.
    let regular = Cocycle::new(
        BaseScheme::new(1, 2)?,
        vec![((0, 1), parse("5", Context::x_laurent(1))?)],
    )?;
    match affineness(&regular) {
        Affineness::NotSeparated(witness) => println!("regular entry: {witness}"),
        Affineness::Affine(_) => unreachable!(),
    }
    Ok(())
}
