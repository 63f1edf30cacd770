//! The classical pair: `x z = y^2 - 1` and `x^2 z = y^2 - 1` are both
//! affine bundles over the line with a doubled origin, their cocycles are
//! not cohomologous, and the pole signature separates them.
//!
//! Run with: `cargo run --example danielewski_pair`

use danvar::cocycle::{
    affineness, coboundary_test, pole_signature, sigma_cocycle, BaseScheme, CoboundaryOutcome,
};
use danvar::ring::{Hypersurface, SigmaFamily};

fn main() -> danvar::Result<()> {
    let sigma = SigmaFamily::parse_family(&["1".into(), "-1".into()], 1)?;
    let s1 = Hypersurface::from_sigma(vec![1], sigma.clone())?;
    let s2 = Hypersurface::from_sigma(vec![2], sigma)?;
    println!("S1: {} = 0", s1.defining_poly());
    println!("S2: {} = 0", s2.defining_poly());

    let base = BaseScheme::new(1, 2)?;
    let g1 = sigma_cocycle(base, s1.sigma().unwrap(), s1.m())?;
    let g2 = sigma_cocycle(base, s2.sigma().unwrap(), s2.m())?;
    println!("cocycle of S1: g_12 = {}", g1.get(0, 1));
    println!("cocycle of S2: g_12 = {}", g2.get(0, 1));

    println!("S1 affine: {}", affineness(&g1).is_affine());
    println!("S2 affine: {}", affineness(&g2).is_affine());

    println!("pole signature of S1: {}", pole_signature(&g1)?);
    println!("pole signature of S2: {}", pole_signature(&g2)?);

    match coboundary_test(&g1, &g2)? {
        CoboundaryOutcome::NotCohomologous { sheet, witness } => println!(
            "not cohomologous: candidate chart function h_{} = {} has a pole",
            sheet + 1,
            witness
        ),
        CoboundaryOutcome::Cohomologous(_) => unreachable!("distinct pole orders"),
    }

    // Chart coordinates and their difference reproduce the cocycle.
    let t1 = s1.chart_coordinate(0)?;
    let t2 = s1.chart_coordinate(1)?;
    println!(
        "charts of S1: t1 = {t1}, t2 = {t2}, t1 - t2 = {}",
        &t1 - &t2
    );

    // The special fibers split into two affine lines each.
    let fiber = s1.special_fiber()?;
    println!(
        "special fiber of S1: {} components, factors {:?}",
        fiber.reduced_degree,
        fiber
            .factors
            .iter()
            .map(|(f, m)| format!("({f})^{m}"))
            .collect::<Vec<_>>()
    );
    Ok(())
}
