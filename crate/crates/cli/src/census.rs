//! Sweeps over every field of sets on `{1..=n}`, one per labelled partition.

use std::path::Path;

use measfield::boolalg::certify;
use measfield::injectivity::classify_self_injectivity;
use measfield::socle::{mod_socle, QuotientKind};
use measfield::stone::{spectrum, stone_representation};
use measfield::{FieldOfSets, MRing, OrderIdeal};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{CliError, Result};

pub const DEFAULT_BOUND: u64 = 5;

/// Random samples per randomized census check.
const CENSUS_SAMPLES: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub instance: String,
    pub universe_size: usize,
    pub blocks: String,
    pub atom_count: usize,
    pub complete: bool,
    pub sigma_field: bool,
    pub c_plus_additive: bool,
    pub reduced: bool,
    pub spec_points: usize,
    pub order_ideals: usize,
    pub baer: bool,
    pub regular: bool,
    pub self_injective: bool,
    pub aleph0_self_injective: bool,
    pub socle_quotient: String,
    pub checks_passed: usize,
    pub checks_total: usize,
    /// Re-run with `check <instance> --suite census --seed <seed>`.
    pub check_id: String,
    pub seed: u64,
}

/// Every partition of `{1..=n}` in restricted-growth order.
pub fn partitions(n: u64) -> Vec<Vec<Vec<u64>>> {
    fn grow(n: u64, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<u64>>>) {
        let next = rgs.iter().max().map_or(0, |m| m + 1);
        if rgs.len() as u64 == n {
            let mut blocks = vec![Vec::new(); next];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i as u64 + 1);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=next {
            rgs.push(b);
            grow(n, rgs, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        grow(n, &mut Vec::new(), &mut out);
    }
    out
}

/// The census instances for universe sizes `1..=max_n`, labelled `n<size>-p<index>`.
pub fn instances(max_n: u64) -> Result<Vec<FieldOfSets>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for (i, blocks) in partitions(n).into_iter().enumerate() {
            out.push(FieldOfSets::finite(format!("n{n}-p{i:03}"), 1..=n, blocks)?);
        }
    }
    Ok(out)
}

fn render_blocks(field: &FieldOfSets) -> String {
    field
        .partition()
        .map(|p| {
            p.blocks()
                .iter()
                .map(|b| format!("{{{}}}", b.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
                .collect()
        })
        .unwrap_or_default()
}

/// One census record; every flag comes from a check that this function re-runs.
pub fn record_for(field: &FieldOfSets, seed: u64) -> Result<CensusRecord> {
    let p = field
        .partition()
        .ok_or_else(|| measfield::Error::Unsupported("census records describe finite fields".into()))?;
    let ring = MRing::new(field.clone());
    let k = p.len();
    let cert = certify(field);
    let spec_points = spectrum(field)?.len();
    let order_ideals = OrderIdeal::all(field)?.len();
    let baer = ring.is_baer()?.holds;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut regular = true;
    for _ in 0..CENSUS_SAMPLES {
        let f = ring.random_fn(&mut rng);
        regular &= ring.mul(&ring.square(&f)?, &ring.star(&f)?)? == f;
    }
    let classifier = classify_self_injectivity(field, CENSUS_SAMPLES, seed)?;
    let quotient = mod_socle(&ring, &[])?;
    let laws = stone_representation(field)?.laws;

    let checks = [
        cert.is_consistent(),
        regular,
        classifier.consistent,
        baer == cert.complete.holds,
        quotient.quotient_kind == QuotientKind::Zero,
        spec_points == k,
        order_ideals == 1 << k,
    ];
    let checks_passed = checks.iter().filter(|c| **c).count() + laws.iter().filter(|l| l.passed).count();
    Ok(CensusRecord {
        instance: field.label().into(),
        universe_size: p.universe().len(),
        blocks: render_blocks(field),
        atom_count: k,
        complete: cert.complete.holds,
        sigma_field: cert.sigma_field.holds,
        c_plus_additive: cert.c_plus_additive.holds,
        reduced: cert.reduced,
        spec_points,
        order_ideals,
        baer,
        regular,
        self_injective: classifier.self_injective,
        aleph0_self_injective: classifier.aleph0_self_injective,
        socle_quotient: serde_json::to_value(quotient.quotient_kind)?.as_str().unwrap_or_default().into(),
        checks_passed,
        checks_total: checks.len() + laws.len(),
        check_id: "census".into(),
        seed,
    })
}

/// Records for every partition of every universe size up to `max_n`, in
/// instance order. Instance `i` uses seed `seed + i`.
pub fn census(max_n: u64, bound: u64, seed: u64) -> Result<Vec<CensusRecord>> {
    if max_n > bound {
        return Err(CliError::BoundExceeded { requested: max_n, max: bound });
    }
    instances(max_n)?.par_iter().enumerate().map(|(i, field)| record_for(field, seed.wrapping_add(i as u64))).collect()
}

pub fn to_json(records: &[CensusRecord]) -> Result<String> {
    Ok(serde_json::to_string_pretty(records)? + "\n")
}

pub fn to_csv(records: &[CensusRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io { path: "csv buffer".into(), source: e.into_error() })?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Writes JSON or CSV according to the file extension.
pub fn write(records: &[CensusRecord], path: &Path) -> Result<()> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => to_json(records)?,
        Some("csv") => to_csv(records)?,
        _ => return Err(CliError::OutputFormat(path.display().to_string())),
    };
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
        assert!(partitions(0).is_empty());
    }

    #[test]
    fn small_census() {
        let records = census(3, DEFAULT_BOUND, 7).unwrap();
        assert_eq!(records.len(), 8);
        assert_eq!(records[0].atom_count, 1);
        assert!(records.iter().all(|r| r.checks_passed == r.checks_total));
        assert!(matches!(census(6, DEFAULT_BOUND, 0), Err(CliError::BoundExceeded { .. })));
        let csv = to_csv(&records).unwrap();
        assert_eq!(csv.lines().count(), 9);
    }
}
