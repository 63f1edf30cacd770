//! Additive group actions through locally nilpotent derivations: the
//! canonical derivation, its exponential flow, degree functions and
//! bounded kernels.
//!
//! Run with: `cargo run --example additive_actions`

use danvar::lnd::{
    action_axioms_check, canonical_derivation, certify_nilpotent, deg, exponential,
    kernel2_bounded, kernel_bounded, CertOutcome,
};
use danvar::ring::{Hypersurface, SigmaFamily};

fn main() -> danvar::Result<()> {
    let sigma = SigmaFamily::parse_family(&["1".into(), "-1".into()], 1)?;
    let h = Hypersurface::from_sigma(vec![2], sigma)?;
    let d = canonical_derivation(&h);
    println!(
        "canonical derivation on {} = 0:  d(x1) = {}, d(y) = {}, d(z) = {}",
        h.defining_poly(),
        d.image_x(0),
        d.image_y(),
        d.image_z()
    );

    match certify_nilpotent(&d, 64) {
        CertOutcome::Certified(cert) => {
            println!("locally nilpotent; generator chain lengths:");
            for (var, k) in &cert.per_generator {
                println!("  d^{k}({}) = 0", var.name());
            }
        }
        CertOutcome::Inconclusive { var, cap } => {
            println!("inconclusive at cap {cap} on {}", var.name())
        }
    }

    let z = h.element("z")?;
    println!("deg_d(z) = {}", deg(&d, &z, 64)?);

    let flow = exponential(&d, &z, 64)?;
    println!("exp(t d)(z) = {}", flow.nf());
    let y_flow = exponential(&d, &h.element("y")?, 64)?;
    println!("exp(t d)(y) = {}", y_flow.nf());

    let report = action_axioms_check(&d, 8, 42, 64)?;
    println!("action axioms:");
    for line in &report.checks {
        println!("  {line}");
    }

    let basis = kernel_bounded(&d, 3);
    println!(
        "Ker(d) up to degree 3: {:?}",
        basis.iter().map(|e| e.to_string()).collect::<Vec<_>>()
    );
    let basis2 = kernel2_bounded(&d, 2);
    println!(
        "Ker(d^2) up to degree 2: {:?}",
        basis2.iter().map(|e| e.to_string()).collect::<Vec<_>>()
    );
    Ok(())
}
