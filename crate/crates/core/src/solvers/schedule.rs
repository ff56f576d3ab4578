use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Relaxation sequences `{a_n}`, `{b_n}` of the two-step scheme.
#[derive(Debug, Clone, PartialEq)]
pub enum Schedule {
    Constant {
        a: f64,
        b: f64,
    },
    /// `a_n = b_n = 1` for `n < warmup`, then `1 / sqrt(n - warmup + 1)`.
    Harmonic {
        warmup: usize,
    },
    /// Cycled table of `(a_n, b_n)`.
    UserTable(Vec<(f64, f64)>),
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule::Constant { a: 1.0, b: 1.0 }
    }
}

impl Schedule {
    pub fn validate(&self) -> Result<()> {
        let in_unit = |x: f64| (0.0..=1.0).contains(&x);
        match self {
            Schedule::Constant { a, b } => {
                if !in_unit(*a) || !in_unit(*b) {
                    return Err(Error::InvalidSchedule(format!(
                        "coefficients must lie in [0, 1], got a={a}, b={b}"
                    )));
                }
                if a * b == 0.0 {
                    return Err(Error::InvalidSchedule(
                        "a_n * b_n is identically zero; the scheme cannot move".into(),
                    ));
                }
            }
            Schedule::Harmonic { .. } => {}
            Schedule::UserTable(rows) => {
                if rows.is_empty() {
                    return Err(Error::InvalidSchedule("table is empty".into()));
                }
                if let Some(i) = rows.iter().position(|&(a, b)| !in_unit(a) || !in_unit(b)) {
                    return Err(Error::InvalidSchedule(format!(
                        "table row {i} has a coefficient outside [0, 1]"
                    )));
                }
                if rows.iter().all(|&(a, b)| a * b == 0.0) {
                    return Err(Error::InvalidSchedule(
                        "a_n * b_n is identically zero; the scheme cannot move".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn coefficients(&self, n: usize) -> (f64, f64) {
        match self {
            Schedule::Constant { a, b } => (*a, *b),
            Schedule::Harmonic { warmup } => {
                if n < *warmup {
                    (1.0, 1.0)
                } else {
                    let c = 1.0 / ((n - warmup + 1) as f64).sqrt();
                    (c, c)
                }
            }
            Schedule::UserTable(rows) => rows[n % rows.len()],
        }
    }

    /// True when divergence of `sum a_n b_n` is not established by
    /// construction (user tables).
    pub fn divergence_warning(&self) -> bool {
        matches!(self, Schedule::UserTable(_))
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Constant { a, b } => write!(f, "const:{a},{b}"),
            Schedule::Harmonic { warmup } => write!(f, "harmonic:{warmup}"),
            Schedule::UserTable(rows) => {
                write!(f, "table:")?;
                for (i, (a, b)) in rows.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{a},{b}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses `const:A,B`, `harmonic:N0` or `table:A0,B0;A1,B1;...` and validates.
impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidSchedule(format!("{msg} in {s:?}"));
        let (kind, body) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let pair = |text: &str| -> Result<(f64, f64)> {
            let (a, b) = text
                .split_once(',')
                .ok_or_else(|| bad("expected a pair A,B"))?;
            let a = a.trim().parse::<f64>().map_err(|_| bad("bad number"))?;
            let b = b.trim().parse::<f64>().map_err(|_| bad("bad number"))?;
            Ok((a, b))
        };
        let schedule = match kind.trim() {
            "const" => {
                let (a, b) = pair(body)?;
                Schedule::Constant { a, b }
            }
            "harmonic" => Schedule::Harmonic {
                warmup: body.trim().parse().map_err(|_| bad("bad warmup count"))?,
            },
            "table" => Schedule::UserTable(body.split(';').map(pair).collect::<Result<_>>()?),
            _ => return Err(bad("unknown schedule kind")),
        };
        schedule.validate()?;
        Ok(schedule)
    }
}
