//! Weight filtrations and the associated graded derivation: admissible
//! weights, the homogenized ring, the weight jump t0 and the exact degree
//! inequality.
//!
//! Run with: `cargo run --example graded_machinery`

use danvar::lnd::{canonical_derivation, deg};
use danvar::ml::{degree_inequality_check, graded_derivation};
use danvar::poly::Weights;
use danvar::ring::{Hypersurface, SigmaFamily};

fn main() -> danvar::Result<()> {
    let sigma = SigmaFamily::parse_family(&["1".into(), "-1".into()], 1)?;
    let h = Hypersurface::from_sigma(vec![2], sigma)?;
    let d = canonical_derivation(&h);
    let seed = Weights::new(vec![3], 5)?;
    let gd = graded_derivation(&d, &seed)?;
    let w = gd.hr().weights();
    println!(
        "weights: d_x = {:?}, d_y = {}, derived d_z = {:?}",
        w.d_x, w.d_y, w.d_z
    );
    println!(
        "homogenized relation: {} = 0",
        gd.hr().hyp().defining_poly()
    );
    println!("weight jump t0 = {}", gd.t0());
    println!(
        "gr d:  y -> {}, z -> {}",
        gd.derivation().image_y(),
        gd.derivation().image_z()
    );

    // deg_d(b) >= deg_{gr d}(gr b), exactly, here on z and then in bulk.
    let z = h.element("z")?;
    let lhs = deg(&d, &z, 64)?;
    let rhs = deg(gd.derivation(), &gd.gr(&z)?, 64)?;
    println!("deg_d(z) = {lhs} >= {rhs} = deg_gr(gr z)");
    let report = degree_inequality_check(&d, &gd, 100, 4, 1, 64)?;
    println!("degree inequality verified on {} samples:", report.checked);
    for line in &report.lines {
        println!("  {line}");
    }
    Ok(())
}
