//! Bounded evidence for the invariant subring: the homogeneous derivation
//! search and truncated kernel intersections. With all exponents at least
//! two, every certified homogeneous derivation kills the base coordinates;
//! with a unit exponent, a second action appears and the bound collapses
//! to the constants.
//!
//! Run with: `cargo run --example ml_invariant`

use danvar::cocycle::second_fibration;
use danvar::json::DerivationRecord;
use danvar::lnd::canonical_derivation;
use danvar::ml::{homogeneous_lnd_search, ml_upper_bound, HomogenizedRing};
use danvar::poly::Weights;
use danvar::ring::{Hypersurface, SigmaFamily};

fn main() -> danvar::Result<()> {
    let sigma = SigmaFamily::parse_family(&["1".into(), "-1".into()], 1)?;
    let seed = Weights::new(vec![3], 5)?;

    for m in [2i64, 1] {
        let h = Hypersurface::from_sigma(vec![m], sigma.clone())?;
        println!("== {} = 0 ==", h.defining_poly());
        let hr = HomogenizedRing::new(&h, &seed, 3)?;
        let hits = homogeneous_lnd_search(&hr, 3, 12, 1 << 20)?;
        println!(
            "homogeneous search (degree <= 3, nilpotency <= 12): {} hits",
            hits.len()
        );
        for hit in &hits {
            let rec = DerivationRecord::from_derivation(&hit.derivation);
            println!(
                "  dx = {:?}, dy = {}, dz = {} | x in kernel: {}, deg(z-chain) = {}",
                rec.dx, rec.dy, rec.dz, hit.x_in_kernel, hit.z_chain_degree
            );
        }

        let canonical = canonical_derivation(&h);
        let mut catalog = vec![canonical];
        if let Some(fib) = second_fibration(&h)? {
            println!(
                "second fibration via x{} onto ({})",
                fib.dropped + 1,
                fib.base_coords.join(", ")
            );
            if let Some(extra) = fib.derivation {
                catalog.push(extra);
            }
        } else {
            println!("no unit exponent: the bundle structure is essentially unique");
        }
        let bound = ml_upper_bound(&h, &catalog, 3)?;
        println!(
            "invariant-subring upper bound (degree <= 3, {} derivations): {:?}\n",
            catalog.len(),
            bound.iter().map(|e| e.to_string()).collect::<Vec<_>>()
        );
    }
    Ok(())
}
