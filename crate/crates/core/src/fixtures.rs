//! Reference data transcribed once from published tables, embedded at compile
//! time and guarded by SHA-256 checksums. Nothing here is generated by the
//! code the fixtures are used to check.

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::linear_form::LinearForm;
use crate::{Error, Result};

pub const POWER_SUMS: &str = include_str!("../fixtures/power_sums.txt");
pub const HDET_FACTORS: &str = include_str!("../fixtures/hdet_factors.txt");
pub const WEDGE4_Q: &str = include_str!("../fixtures/wedge4_q.txt");
pub const WEDGE4_T: &str = include_str!("../fixtures/wedge4_t.txt");

const POWER_SUMS_SHA256: &str = "a05735465c25d2b0d63a15cbdcafb713b1473d63fd3c6f6b93e62ed61e9ed329";
const HDET_FACTORS_SHA256: &str =
    "73412b2499f2ff6c45313e0c8d386e07ae2e0335792758f88a8a34e66b585de3";
const WEDGE4_Q_SHA256: &str = "a73e5b5bcc584792e75697f0d6e240f8364e30ea1a2c6e9c363b98a288d45f50";
const WEDGE4_T_SHA256: &str = "6455834ff7405df549d2d4948c2f39f7a420726bc635068edc173fdeed8c274e";

fn check(name: &'static str, text: &str, expected: &str) -> Result<()> {
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    if digest != expected {
        return Err(Error::Fixture {
            name,
            reason: format!("checksum {digest} does not match {expected}"),
        });
    }
    Ok(())
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_forms(name: &'static str, text: &str, sha: &str) -> Result<Vec<LinearForm>> {
    check(name, text, sha)?;
    data_lines(text)
        .map(|(n, l)| {
            l.parse().map_err(|_| Error::Fixture {
                name,
                reason: format!("line {n}: cannot parse {l:?}"),
            })
        })
        .collect()
}

/// The 120 printed linear factors of the hyperdeterminant on the Cartan, in
/// printed order.
pub fn hdet_factors() -> Result<Vec<LinearForm>> {
    parse_forms("hdet_factors", HDET_FACTORS, HDET_FACTORS_SHA256)
}

/// The 63 printed factors of `Q`.
pub fn wedge4_q() -> Result<Vec<LinearForm>> {
    parse_forms("wedge4_q", WEDGE4_Q, WEDGE4_Q_SHA256)
}

/// The 28 printed factors of `T`.
pub fn wedge4_t() -> Result<Vec<LinearForm>> {
    parse_forms("wedge4_t", WEDGE4_T, WEDGE4_T_SHA256)
}

/// One row of a printed power-sum table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub degree: u32,
    /// Exponents in descending order, without trailing zeros.
    pub exponents: Vec<u32>,
    pub coeff: BigInt,
}

pub fn power_sum_entries() -> Result<Vec<TableEntry>> {
    const NAME: &str = "power_sums";
    check(NAME, POWER_SUMS, POWER_SUMS_SHA256)?;
    data_lines(POWER_SUMS)
        .map(|(n, l)| {
            let bad = |what: &str| Error::Fixture {
                name: NAME,
                reason: format!("line {n}: {what}"),
            };
            let mut cols = l.split_whitespace();
            let degree: u32 = cols
                .next()
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| bad("degree"))?;
            let exponents = cols
                .next()
                .ok_or_else(|| bad("exponents"))?
                .split(',')
                .map(|e| e.parse::<u32>().map_err(|_| bad("exponent")))
                .collect::<Result<Vec<_>>>()?;
            let coeff: BigInt = cols
                .next()
                .and_then(|c| c.parse().ok())
                .ok_or_else(|| bad("coefficient"))?;
            if cols.next().is_some() {
                return Err(bad("trailing columns"));
            }
            Ok(TableEntry {
                degree,
                exponents,
                coeff,
            })
        })
        .collect()
}
