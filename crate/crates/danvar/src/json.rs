//! JSON records for the external interfaces: hypersurfaces, cocycles and
//! derivations, with conversions to and from the core types. Sheet indices
//! are 1-based on the wire.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cocycle::{BaseScheme, Cocycle};
use crate::error::{Error, Result};
use crate::lnd::Derivation;
use crate::poly::{parse, Context, Poly};
use crate::ring::{Hypersurface, SigmaFamily};

/// `{ "n": int, "m": [int...], "Q": "poly", "sigma": ["poly"...]? }`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct HypersurfaceRecord {
    pub n: usize,
    pub m: Vec<i64>,
    #[serde(rename = "Q")]
    pub q: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<String>>,
}

impl HypersurfaceRecord {
    pub fn to_hypersurface(&self) -> Result<Arc<Hypersurface>> {
        let q = parse(&self.q, Context::xy(self.n))?;
        let h = Hypersurface::new(self.n, self.m.clone(), q)?;
        match &self.sigma {
            Some(texts) => {
                let sigma = SigmaFamily::parse_family(texts, self.n)?;
                h.with_sigma(sigma)
            }
            None => Ok(h.into_arc()),
        }
    }

    pub fn from_hypersurface(h: &Hypersurface) -> Self {
        HypersurfaceRecord {
            n: h.n(),
            m: h.m().to_vec(),
            q: h.q().to_string(),
            sigma: h.sigma().map(|s| s.iter().map(|p| p.to_string()).collect()),
        }
    }
}

/// One cocycle entry `{ "i": int, "j": int, "value": "laurent poly" }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CocycleEntryRecord {
    pub i: usize,
    pub j: usize,
    pub value: String,
}

/// `{ "n": int, "r": int, "g": [entry...] }`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CocycleRecord {
    pub n: usize,
    pub r: usize,
    pub g: Vec<CocycleEntryRecord>,
}

impl CocycleRecord {
    pub fn to_cocycle(&self) -> Result<Cocycle> {
        let base = BaseScheme::new(self.n, self.r)?;
        let ctx = Context::x_laurent(self.n);
        let mut entries = Vec::new();
        for e in &self.g {
            if e.i < 1 || e.j < 1 {
                return Err(Error::InvalidCocycle(
                    "sheet indices are 1-based and must be positive".into(),
                ));
            }
            entries.push(((e.i - 1, e.j - 1), parse(&e.value, ctx)?));
        }
        Cocycle::new(base, entries)
    }

    pub fn from_cocycle(c: &Cocycle) -> Self {
        CocycleRecord {
            n: c.base().n,
            r: c.base().r,
            g: c.pairs()
                .map(|((i, j), value)| CocycleEntryRecord {
                    i: i + 1,
                    j: j + 1,
                    value: value.to_string(),
                })
                .collect(),
        }
    }
}

/// `{ "dx": ["poly"...], "dy": "poly", "dz": "poly" }`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DerivationRecord {
    pub dx: Vec<String>,
    pub dy: String,
    pub dz: String,
}

impl DerivationRecord {
    pub fn to_derivation(&self, h: &Arc<Hypersurface>) -> Result<Derivation> {
        let ctx = h.ambient_ctx();
        let dx = self
            .dx
            .iter()
            .map(|t| parse(t, ctx))
            .collect::<Result<Vec<Poly>>>()?;
        let dy = parse(&self.dy, ctx)?;
        let dz = parse(&self.dz, ctx)?;
        Derivation::new(h.clone(), dx, dy, dz)
    }

    pub fn from_derivation(d: &Derivation) -> Self {
        DerivationRecord {
            dx: (0..d.owner().n())
                .map(|i| d.image_x(i).to_string())
                .collect(),
            dy: d.image_y().to_string(),
            dz: d.image_z().to_string(),
        }
    }
}
