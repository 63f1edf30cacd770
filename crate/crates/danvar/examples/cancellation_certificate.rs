//! Machine-checked cancellation counterexamples: two non-isomorphic
//! varieties whose cylinders are isomorphic, with the isomorphism emitted
//! as a self-contained certificate and independently rechecked.
//!
//! Run with: `cargo run --example cancellation_certificate`

use danvar::cancel::{build_iso, recheck, IsoOutcome};
use danvar::cocycle::{
    pole_signature, restricted_orbit_test, sigma_cocycle, BaseScheme, OrbitOutcome,
};
use danvar::ring::{Hypersurface, SigmaFamily};

fn main() -> danvar::Result<()> {
    // The higher-dimensional family: multi-index sets {2,3} vs {3,3} are
    // distinct, so the varieties are not isomorphic, yet their cylinders
    // are.
    let sigma = SigmaFamily::parse_family(&["1".into(), "-1".into()], 2)?;
    let x = Hypersurface::from_sigma(vec![2, 3], sigma.clone())?;
    let xp = Hypersurface::from_sigma(vec![3, 3], sigma.clone())?;
    println!("X : {} = 0", x.defining_poly());
    println!("X': {} = 0", xp.defining_poly());

    let base = BaseScheme::new(2, 2)?;
    let g = sigma_cocycle(base, x.sigma().unwrap(), x.m())?;
    let gp = sigma_cocycle(base, xp.sigma().unwrap(), xp.m())?;
    println!(
        "pole signatures: {} vs {}",
        pole_signature(&g)?,
        pole_signature(&gp)?
    );
    match restricted_orbit_test(&g, &gp)? {
        OrbitOutcome::NotInOrbit {
            signature_distinct, ..
        } => {
            println!("restricted orbit test: negative (signatures distinct: {signature_distinct})")
        }
        OrbitOutcome::InOrbit(_) => unreachable!("signatures differ"),
    }

    match build_iso(&x, &xp, None)? {
        IsoOutcome::Certificate(cert) => {
            println!("cylinder isomorphism certificate built:");
            println!("  H  = {:?}", cert.h);
            println!("  H' = {:?}", cert.hprime);
            if let Some(ambient) = &cert.ambient {
                println!("  ambient y' = {}", ambient.yprime);
                println!("  ambient u' = {}", ambient.uprime);
            }
            println!("  {} identities verified", cert.transcript.len());
            let report = recheck(&cert)?;
            println!(
                "independent recheck: {}",
                if report.ok { "ok" } else { "FAILED" }
            );
        }
        IsoOutcome::Inconclusive { caps, detail } => {
            println!("inconclusive under caps {caps:?}: {detail}")
        }
    }
    Ok(())
}
