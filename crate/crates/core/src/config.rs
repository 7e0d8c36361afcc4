//! Flat `key = value` parameter files.
//!
//! ```text
//! # pump
//! pump.w = 100
//! pump.ell_c = inf
//! pump.R = inf
//! pump.k_p = 10
//! crystal.L = 1000
//! crystal.z0 = 1000
//! crystal.alpha = 0.455
//! crystal.beta = 1
//! ```
//!
//! `pump.w`, `pump.k_p` and `crystal.L` are required. The rest default to a
//! coherent flat-phase pump and a degenerate crystal with z0 = L and
//! α = 0.455. The crystal shares the pump wave number.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::params::{CrystalParams, Extent, PumpParams, DEFAULT_ALPHA};

pub const KEYS: [&str; 8] = [
    "pump.w",
    "pump.ell_c",
    "pump.R",
    "pump.k_p",
    "crystal.L",
    "crystal.z0",
    "crystal.alpha",
    "crystal.beta",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub pump: PumpParams,
    pub crystal: CrystalParams,
}

impl Config {
    pub fn new(pump: PumpParams, crystal: CrystalParams) -> Result<Self> {
        Ok(Config {
            pump: pump.validate()?,
            crystal: crystal.validate()?,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut slots: [Option<(Extent, usize)>; 8] = [None; 8];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                message: format!("expected `key = value`, found `{content}`"),
            })?;
            let key = key.trim();
            let slot = KEYS.iter().position(|k| *k == key).ok_or_else(|| Error::Parse {
                line,
                message: format!("unknown key `{key}`"),
            })?;
            if slots[slot].is_some() {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate key `{key}`"),
                });
            }
            let v: Extent = value
                .trim()
                .parse()
                .map_err(|message| Error::Parse { line, message })?;
            slots[slot] = Some((v, line));
        }

        let finite = |i: usize| -> Result<Option<f64>> {
            match slots[i] {
                None => Ok(None),
                Some((Extent::Finite(x), _)) => Ok(Some(x)),
                Some((Extent::Infinite, line)) => Err(Error::Parse {
                    line,
                    message: format!("`{}` cannot be infinite", KEYS[i]),
                }),
            }
        };
        let required = |i: usize| -> Result<f64> {
            finite(i)?.ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("missing required key `{}`", KEYS[i]),
            })
        };

        let w = required(0)?;
        let k_p = required(3)?;
        let length = required(4)?;
        let pump = PumpParams {
            w,
            ell_c: slots[1].map_or(Extent::Infinite, |s| s.0),
            radius: slots[2].map_or(Extent::Infinite, |s| s.0),
            k_p,
        };
        let crystal = CrystalParams {
            length,
            z0: finite(5)?.unwrap_or(length),
            alpha: finite(6)?.unwrap_or(DEFAULT_ALPHA),
            beta: finite(7)?.unwrap_or(1.0),
            k_p,
        };
        // Report validation failures against the offending line when known.
        let locate = |e: Error| -> Error {
            let key = match &e {
                Error::NonPositiveParameter(k)
                | Error::NonFiniteParameter(k)
                | Error::ZeroParameter(k) => *k,
                _ => return e,
            };
            let full = KEYS.iter().position(|k| {
                k.rsplit('.').next() == Some(key) && (key != "k_p" || k.starts_with("pump"))
            });
            match full.and_then(|i| slots[i]) {
                Some((_, line)) => Error::Parse {
                    line,
                    message: e.to_string(),
                },
                None => e,
            }
        };
        Config::new(pump, crystal).map_err(locate)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Canonical text form; `parse(serialize(c)) == c`.
    pub fn serialize(&self) -> String {
        let p = &self.pump;
        let c = &self.crystal;
        let mut out = String::new();
        let values = [
            Extent::Finite(p.w),
            p.ell_c,
            p.radius,
            Extent::Finite(p.k_p),
            Extent::Finite(c.length),
            Extent::Finite(c.z0),
            Extent::Finite(c.alpha),
            Extent::Finite(c.beta),
        ];
        for (k, v) in KEYS.iter().zip(values) {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn defaults_and_inf_sentinel() {
        let c = Config::parse("pump.w = 100\npump.k_p = 10\ncrystal.L = 1000\npump.ell_c = inf\n")
            .unwrap();
        assert!(c.pump.ell_c.is_infinite());
        assert!(c.pump.radius.is_infinite());
        assert_eq!(c.crystal.z0, 1000.0);
        assert_eq!(c.crystal.alpha, 0.455);
        assert_eq!(c.crystal.k_p, 10.0);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = Config::parse("pump.w = 100\n\npump.k_p = ten\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = Config::parse("pump.w = 1\npump.k_p = 1\ncrystal.L = 1\nfoo = 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = Config::parse("pump.k_p = 1\ncrystal.L = 1\n").unwrap_err();
        assert!(e.to_string().contains("pump.w"));
        let e = Config::parse("pump.w = 0 # bad\npump.k_p = 1\ncrystal.L = 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
        let e = Config::parse("pump.w = 1\npump.k_p = 1\ncrystal.L = inf\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
    }

    proptest! {
        #[test]
        fn parse_serialize_parse_is_identity(
            w in 1e-3f64..1e4,
            ell in prop_oneof![Just(f64::INFINITY), 1e-3f64..1e4],
            r in prop_oneof![Just(f64::INFINITY), 1e-2f64..1e8, -1e8f64..-1e-2],
            k_p in 1e-2f64..1e2,
            l in 1e-1f64..1e5,
            z0 in -1e5f64..1e5,
            alpha in 1e-2f64..2.0,
            beta in 0.2f64..5.0,
        ) {
            let cfg = Config::new(
                PumpParams::new(w, ell, r, k_p),
                CrystalParams { length: l, z0, alpha, beta, k_p },
            ).unwrap();
            let once = Config::parse(&cfg.serialize()).unwrap();
            prop_assert_eq!(once, cfg);
            prop_assert_eq!(Config::parse(&once.serialize()).unwrap(), once);
        }
    }
}
