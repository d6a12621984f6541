//! Parameter sweeps emitted as report tables.

use std::fmt;

use spinorlab::{clifford, hypercube, projections, PExponent, C64};

use crate::config::RunConfig;
use crate::mapspec::parse_complex;
use crate::report::CheckResult;
use crate::suites::asym_row;

pub const TABLE_KINDS: [&str; 4] = ["theorem7_grid", "tau_cb", "rad1_sweep", "witness_rect_sweep"];

#[derive(Debug, Clone, PartialEq)]
pub enum TableError {
    UnknownKind(String),
    BadRange { name: String, text: String },
    RangeTooLarge { name: String, size: usize, cap: usize },
    Compute(String),
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownKind(k) => write!(f, "unknown table kind `{k}` (expected one of {})", TABLE_KINDS.join(", ")),
            Self::BadRange { name, text } => write!(f, "cannot parse --{name} `{text}`"),
            Self::RangeTooLarge { name, size, cap } => {
                write!(f, "range for --{name} needs size {size}, above the dimension cap {cap}")
            }
            Self::Compute(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for TableError {}

/// Raw range arguments; `None` selects the per-kind default.
#[derive(Debug, Clone, Default)]
pub struct TableRanges {
    pub n: Option<String>,
    pub p: Option<String>,
    pub t: Option<String>,
    pub theta: Option<String>,
    pub alpha: Option<String>,
}

/// Parses `a..b` (inclusive), a comma list, or a single integer.
pub fn parse_usize_range(name: &str, text: &str) -> Result<Vec<usize>, TableError> {
    let bad = || TableError::BadRange {
        name: name.into(),
        text: text.into(),
    };
    let t = text.trim();
    let out: Vec<usize> = if let Some((a, b)) = t.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        t.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// Parses a comma list of reals; `inf` is accepted.
pub fn parse_f64_list(name: &str, text: &str) -> Result<Vec<f64>, TableError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| !x.is_nan())
                .ok_or_else(|| TableError::BadRange {
                    name: name.into(),
                    text: text.into(),
                })
        })
        .collect()
}

fn parse_complex_list(name: &str, text: &str) -> Result<Vec<C64>, TableError> {
    text.split(',')
        .map(|s| {
            parse_complex(s.trim()).ok_or_else(|| TableError::BadRange {
                name: name.into(),
                text: text.into(),
            })
        })
        .collect()
}

fn exponent(p: f64) -> Result<PExponent, TableError> {
    PExponent::new(p).map_err(|e| TableError::Compute(e.to_string()))
}

/// Rejects `n` whose enumeration size `2^{2n}` exceeds the dimension cap.
fn check_cube(ns: &[usize], cfg: &RunConfig) -> Result<(), TableError> {
    for &n in ns {
        let size = 1usize.checked_shl(2 * n as u32).filter(|_| 2 * n < usize::BITS as usize).unwrap_or(usize::MAX);
        if n == 0 || size > cfg.dimension_cap {
            return Err(TableError::RangeTooLarge {
                name: "n".into(),
                size,
                cap: cfg.dimension_cap,
            });
        }
    }
    Ok(())
}

fn check_rows(rows: usize, cfg: &RunConfig) -> Result<(), TableError> {
    if rows > cfg.dimension_cap {
        return Err(TableError::RangeTooLarge {
            name: "grid".into(),
            size: rows,
            cap: cfg.dimension_cap,
        });
    }
    Ok(())
}

pub fn run_table(kind: &str, ranges: &TableRanges, cfg: &RunConfig) -> Result<Vec<CheckResult>, TableError> {
    let get = |v: &Option<String>, default: &str| v.clone().unwrap_or_else(|| default.to_string());
    match kind {
        "tau_cb" => {
            let ns = parse_usize_range("n", &get(&ranges.n, "1..4"))?;
            check_cube(&ns, cfg)?;
            ns.iter()
                .map(|&n| {
                    let b = clifford::tau_cb_bound(n).map_err(|e| TableError::Compute(e.to_string()))?;
                    Ok(CheckResult::eq(format!("tau_cb.n{n}"), b.ratio(), (n + 1) as f64 / n as f64, 1e-12)
                        .param("n", n)
                        .param("plus_norm", b.plus_norm)
                        .param("minus_norm", b.minus_norm))
                })
                .collect()
        }
        "theorem7_grid" => {
            let ns = parse_usize_range("n", &get(&ranges.n, "1..3"))?;
            let ps = parse_f64_list("p", &get(&ranges.p, "2,3,4,6"))?;
            let default_t = hypercube::ASYM_GRID.map(|t| t.to_string()).join(",");
            let ts = parse_f64_list("t", &get(&ranges.t, &default_t))?;
            check_cube(&ns, cfg)?;
            check_rows(ns.len() * ps.len(), cfg)?;
            let mut out = Vec::new();
            for &n in &ns {
                for &p in &ps {
                    exponent(p)?;
                    let mut best = (0.0f64, ts[0]);
                    let mut err = None;
                    for &t in &ts {
                        match hypercube::asym_probe(n, p, t) {
                            Ok(v) if v.abs() > best.0 => best = (v.abs(), t),
                            Ok(_) => {}
                            Err(e) => err = Some(e),
                        }
                    }
                    let value = match err {
                        Some(e) => Err(e),
                        None => Ok(best.0),
                    };
                    out.push(
                        asym_row(format!("theorem7_grid.n{n}.p{p}"), n, p, value, cfg)
                            .param("argmax_t", best.1)
                            .param("t_grid", ts.clone()),
                    );
                }
            }
            Ok(out)
        }
        "rad1_sweep" => {
            let ns = parse_usize_range("n", &get(&ranges.n, "1"))?;
            let ps = parse_f64_list("p", &get(&ranges.p, "4"))?;
            let ts = parse_f64_list("t", &get(&ranges.t, "0,0.25,0.5,0.75,1"))?;
            check_cube(&ns, cfg)?;
            check_rows(ns.len() * ps.len() * ts.len(), cfg)?;
            let mut out = Vec::new();
            for &n in &ns {
                let alpha = match &ranges.alpha {
                    Some(text) => parse_complex_list("alpha", text)?,
                    None => vec![C64::new(1.0, 0.0); 2 * n + 2],
                };
                if alpha.len() != 2 * n + 2 {
                    return Err(TableError::BadRange {
                        name: "alpha".into(),
                        text: format!("{} coefficients given, {} needed for n = {n}", alpha.len(), 2 * n + 2),
                    });
                }
                for &p in &ps {
                    let pe = exponent(p)?;
                    for &t in &ts {
                        let mut a = alpha.clone();
                        a[2 * n + 1] *= t;
                        let id = format!("rad1_sweep.n{n}.p{p}.t{t}");
                        let row = match hypercube::rad1_ratio(n, &a, pe) {
                            Ok(v) => CheckResult::lower_bound(id, v),
                            Err(e) => CheckResult::lower_bound(id, f64::NAN).note(e.to_string()),
                        };
                        out.push(row.param("n", n).param("p", p).param("t", t));
                    }
                }
            }
            Ok(out)
        }
        "witness_rect_sweep" => {
            let ps = parse_f64_list("p", &get(&ranges.p, "1,1.5,3,4"))?;
            let ts = parse_f64_list("t", &get(&ranges.t, "0.5"))?;
            let thetas = parse_f64_list("theta", &get(&ranges.theta, "0.05,0.1,0.3"))?;
            check_rows(ps.len() * ts.len() * thetas.len(), cfg)?;
            let mut out = Vec::new();
            for &p in &ps {
                for &t in &ts {
                    for &theta in &thetas {
                        let v = projections::witness_rect(p, t, theta).map_err(|e| TableError::Compute(e.to_string()))?;
                        out.push(
                            CheckResult::lower_bound(format!("witness_rect_sweep.p{p}.t{t}.theta{theta}"), v)
                                .param("p", p)
                                .param("t", t)
                                .param("theta", theta),
                        );
                    }
                }
            }
            Ok(out)
        }
        other => Err(TableError::UnknownKind(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_usize_range("n", "1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_usize_range("n", " 2, 5 ").unwrap(), vec![2, 5]);
        assert_eq!(parse_usize_range("n", "3").unwrap(), vec![3]);
        for bad in ["4..1", "a", "1,,2", "", "1..x"] {
            assert!(parse_usize_range("n", bad).is_err(), "{bad}");
        }
        assert_eq!(parse_f64_list("p", "1.5,inf").unwrap(), vec![1.5, f64::INFINITY]);
        assert!(parse_f64_list("p", "nan").is_err());
    }

    #[test]
    fn range_too_large() {
        let cfg = RunConfig::default();
        let r = TableRanges {
            n: Some("1..7".into()),
            ..Default::default()
        };
        assert!(matches!(run_table("tau_cb", &r, &cfg), Err(TableError::RangeTooLarge { .. })));
        assert!(matches!(run_table("nope", &r, &cfg), Err(TableError::UnknownKind(_))));
    }

    #[test]
    fn tau_cb_values() {
        let rows = run_table("tau_cb", &TableRanges::default(), &RunConfig::default()).unwrap();
        let got: Vec<f64> = rows.iter().map(|r| r.computed).collect();
        let want = [2.0, 1.5, 4.0 / 3.0, 1.25];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() <= 1e-12);
        }
        assert!(rows.iter().all(|r| r.passed()));
    }

    #[test]
    fn rad1_column_at_one() {
        let rows = run_table("rad1_sweep", &TableRanges::default(), &RunConfig::default()).unwrap();
        let last = rows.iter().find(|r| r.id == "rad1_sweep.n1.p4.t1").unwrap();
        assert!((last.computed - 2f64.sqrt()).abs() <= 1e-12);
        let first = rows.iter().find(|r| r.id == "rad1_sweep.n1.p4.t0").unwrap();
        assert!((first.computed - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn theorem7_pattern() {
        let rows = run_table("theorem7_grid", &TableRanges::default(), &RunConfig::default()).unwrap();
        assert_eq!(rows.len(), 12);
        assert!(rows.iter().all(|r| r.passed()), "{:?}", rows.iter().filter(|r| !r.passed()).map(|r| &r.id).collect::<Vec<_>>());
    }
}
