//! Timing of the full and pruned engines on `a = (k, ..., k)`.

use std::io::Write;
use std::time::Instant;

use dyson_core::laurent::{build_product, dyson_factors, extract_pruned_counted};
use num_bigint::BigInt;

use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engines {
    Pruned,
    Full,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub a: Vec<u32>,
    pub engine: &'static str,
    /// Final term count for the full engine, peak live terms for the pruned one.
    pub terms: usize,
    pub micros: u64,
}

/// Constant terms of `F_n(x; k, ..., k)` for `k = 0..=amax`. Fails if the
/// two engines ever disagree.
pub fn bench_rows(n: usize, amax: u32, engines: Engines, cap: usize) -> Result<Vec<BenchRow>, HarnessError> {
    let mut rows = Vec::new();
    let zero = vec![0; n];
    for k in 0..=amax {
        let a = vec![k; n];
        let mut full_value = None;
        if engines != Engines::Pruned {
            let t = Instant::now();
            let f = build_product::<BigInt>(&a, cap)?;
            let micros = t.elapsed().as_micros() as u64;
            full_value = Some(f.coeff(&zero)?);
            rows.push(BenchRow {
                n,
                a: a.clone(),
                engine: "full",
                terms: f.len(),
                micros,
            });
        }
        if engines != Engines::Full {
            let t = Instant::now();
            let (value, peak) = extract_pruned_counted(n, &dyson_factors::<BigInt>(&a), &zero, cap)?;
            let micros = t.elapsed().as_micros() as u64;
            if let Some(full) = full_value {
                if full != value {
                    return Err(HarnessError::EngineMismatch(format!(
                        "a = {a:?}: full engine gives {full}, pruned engine gives {value}"
                    )));
                }
            }
            rows.push(BenchRow {
                n,
                a,
                engine: "pruned",
                terms: peak,
                micros,
            });
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "a", "engine", "terms", "micros"])?;
    for r in rows {
        let a = r.a.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        w.write_record([r.n.to_string(), a, r.engine.to_string(), r.terms.to_string(), r.micros.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
