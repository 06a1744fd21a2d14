//! Convergence and timing ladders: one CSV row per (N, method).

use std::io::Write;

use serde::Serialize;

use lattice_telescope::enumeration::{DETN_ORACLE_MAX, UNIMODULAR_ORACLE_MAX};
use lattice_telescope::limits;
use lattice_telescope::series::{
    mt_scalar, theorem1_boundary, theorem1_direct, theorem1_oracle, theorem2, theorem3,
    tropical_sums, MTIndex,
};
use lattice_telescope::{EvalOptions, Method, SumResult};

use crate::series::RunError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    #[serde(rename = "N")]
    pub n: u32,
    pub method: String,
    pub value: f64,
    pub abs_error: f64,
    pub terms: u64,
    pub time_ms: f64,
}

pub const SERIES: [&str; 6] = [
    "theorem1",
    "theorem2",
    "tropical1",
    "tropical2",
    "mt",
    "theorem3",
];

fn row(n: u32, r: &SumResult, scale: f64, limit: f64) -> BenchRow {
    BenchRow {
        n,
        method: r.method.to_string(),
        value: scale * r.value,
        abs_error: (scale * r.value - limit).abs(),
        terms: r.terms,
        time_ms: r.elapsed.as_secs_f64() * 1e3,
    }
}

/// Rows for every rung of `ladder`; the quadruple-loop oracle is included
/// only while it is within its size limit. `det_n` is used by theorem3.
pub fn ladder(
    series: &str,
    ladder: &[u32],
    det_n: u64,
    opts: &EvalOptions,
) -> Result<Vec<BenchRow>, RunError> {
    let mut rows = Vec::new();
    for &n in ladder {
        if n == 0 {
            return Err(RunError::Usage("ladder entries must be >= 1".into()));
        }
        match series {
            "theorem1" => {
                let limit = 4.0 * limits::theorem1();
                rows.push(row(n, &theorem1_direct(n, opts)?, 4.0, limit));
                rows.push(row(n, &theorem1_boundary(n, opts)?, 4.0, limit));
                if n <= UNIMODULAR_ORACLE_MAX {
                    rows.push(row(n, &theorem1_oracle(n, opts)?, 4.0, limit));
                }
            }
            "theorem2" => {
                for method in [Method::Direct, Method::Boundary] {
                    rows.push(row(n, &theorem2(n, method, opts)?, 1.0, limits::theorem2()));
                }
            }
            "tropical1" => rows.push(row(
                n,
                &tropical_sums(n, opts)?.0,
                1.0,
                limits::tropical_defect(),
            )),
            "tropical2" => rows.push(row(
                n,
                &tropical_sums(n, opts)?.1,
                1.0,
                limits::tropical_defect_sq(),
            )),
            "mt" => {
                let r = mt_scalar(MTIndex::new(2, 2, 2)?, n, true, opts)?;
                rows.push(row(n, &r, 1.0, limits::mt_222_coprime()));
            }
            "theorem3" => {
                let limit = limits::theorem3(det_n)?;
                rows.push(row(
                    n,
                    &theorem3(det_n, n, Method::Direct, opts)?.weighted,
                    1.0,
                    limit,
                ));
                if n <= DETN_ORACLE_MAX {
                    rows.push(row(
                        n,
                        &theorem3(det_n, n, Method::Oracle, opts)?.weighted,
                        1.0,
                        limit,
                    ));
                }
            }
            other => {
                return Err(RunError::Usage(format!(
                    "bench supports {} (got '{other}')",
                    SERIES.join(", ")
                )));
            }
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
