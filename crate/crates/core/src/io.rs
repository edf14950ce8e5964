//! CSV formats shared with the command-line frontend.
//!
//! All floats are serialized with 17 significant digits so that re-parsing
//! reproduces the original `f64` bit patterns; lines end with LF.

use std::io::{BufRead, Write};

use nalgebra::DVector;

use crate::sim::{HybridTracePoint, HybridTrajectory, JumpEvent, TracePoint};
use crate::space::FiniteSequence;
use crate::{Error, Result};

/// 17-significant-digit serialization; round-trips every finite `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str, line: usize) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::Csv {
        line,
        message: format!("`{s}` is not a number"),
    })
}

fn parse_i64(s: &str, line: usize) -> Result<i64> {
    s.trim().parse::<i64>().map_err(|_| Error::Csv {
        line,
        message: format!("`{s}` is not an integer"),
    })
}

/// Read a sequence file: header `n,value`, one row per stored index.
///
/// Indices may start anywhere and appear in any order; missing indices are
/// zero. Duplicate indices are rejected.
pub fn read_sequence_csv<R: BufRead>(reader: R) -> Result<FiniteSequence> {
    let mut pairs: Vec<(i64, f64)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if i == 0 {
            if trimmed != "n,value" {
                return Err(Error::Csv {
                    line: line_no,
                    message: format!("expected header `n,value`, found `{trimmed}`"),
                });
            }
            continue;
        }
        let mut parts = trimmed.splitn(2, ',');
        let n = parse_i64(parts.next().unwrap_or(""), line_no)?;
        let v = parse_f64(
            parts.next().ok_or_else(|| Error::Csv {
                line: line_no,
                message: "missing value column".into(),
            })?,
            line_no,
        )?;
        if !seen.insert(n) {
            return Err(Error::Csv {
                line: line_no,
                message: format!("duplicate index {n}"),
            });
        }
        pairs.push((n, v));
    }
    if pairs.is_empty() {
        return Err(Error::EmptySequence);
    }
    FiniteSequence::from_pairs(&pairs)
}

/// Write a sequence in the `n,value` format.
pub fn write_sequence_csv<W: Write>(mut w: W, seq: &FiniteSequence) -> Result<()> {
    w.write_all(b"n,value\n")?;
    for (n, v) in seq.iter() {
        writeln!(w, "{n},{}", fmt_f64(v))?;
    }
    Ok(())
}

/// Write a discrete trajectory:
/// header `k,x1,...,xn,euclid,ramanujan,clamped`, one row per step.
pub fn write_discrete_trajectory_csv<W: Write>(
    mut w: W,
    states: &[DVector<f64>],
    trace: &[TracePoint],
) -> Result<()> {
    let dim = states.first().map_or(0, |x| x.len());
    let mut header = String::from("k");
    for i in 1..=dim {
        header.push_str(&format!(",x{i}"));
    }
    header.push_str(",euclid,ramanujan,clamped\n");
    w.write_all(header.as_bytes())?;
    for (k, x) in states.iter().enumerate() {
        let mut row = k.to_string();
        for v in x.iter() {
            row.push(',');
            row.push_str(&fmt_f64(*v));
        }
        row.push(',');
        row.push_str(&fmt_f64(x.norm()));
        row.push(',');
        row.push_str(&fmt_f64(trace[k].value));
        row.push(',');
        row.push_str(if trace[k].clamped { "true" } else { "false" });
        row.push('\n');
        w.write_all(row.as_bytes())?;
    }
    Ok(())
}

/// A parsed discrete-trajectory file.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteTrajectoryFile {
    pub states: Vec<DVector<f64>>,
    pub euclid: Vec<f64>,
    pub ramanujan: Vec<f64>,
    pub clamped: Vec<bool>,
}

/// Read back a discrete trajectory written by
/// [`write_discrete_trajectory_csv`].
pub fn read_discrete_trajectory_csv<R: BufRead>(reader: R) -> Result<DiscreteTrajectoryFile> {
    let mut out = DiscreteTrajectoryFile {
        states: Vec::new(),
        euclid: Vec::new(),
        ramanujan: Vec::new(),
        clamped: Vec::new(),
    };
    let mut dim = 0usize;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if i == 0 {
            if fields.first() != Some(&"k") || fields.len() < 4 {
                return Err(Error::Csv {
                    line: line_no,
                    message: format!("unexpected trajectory header `{trimmed}`"),
                });
            }
            dim = fields.len() - 4;
            continue;
        }
        if fields.len() != dim + 4 {
            return Err(Error::Csv {
                line: line_no,
                message: format!("expected {} columns, found {}", dim + 4, fields.len()),
            });
        }
        let mut x = DVector::zeros(dim);
        for d in 0..dim {
            x[d] = parse_f64(fields[1 + d], line_no)?;
        }
        out.states.push(x);
        out.euclid.push(parse_f64(fields[dim + 1], line_no)?);
        out.ramanujan.push(parse_f64(fields[dim + 2], line_no)?);
        out.clamped.push(match fields[dim + 3].trim() {
            "true" => true,
            "false" => false,
            other => {
                return Err(Error::Csv {
                    line: line_no,
                    message: format!("`{other}` is not a boolean"),
                })
            }
        });
    }
    Ok(out)
}

/// Write a hybrid trajectory:
/// header `t,j,x1,x2,euclid,ramanujan,clamped`, one row per sample.
pub fn write_hybrid_trajectory_csv<W: Write>(
    mut w: W,
    traj: &HybridTrajectory,
    trace: &[HybridTracePoint],
) -> Result<()> {
    w.write_all(b"t,j,x1,x2,euclid,ramanujan,clamped\n")?;
    for (s, p) in traj.samples().iter().zip(trace) {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            fmt_f64(s.t),
            s.jumps,
            fmt_f64(s.state[0]),
            fmt_f64(s.state[1]),
            fmt_f64(s.state.norm()),
            fmt_f64(p.value),
            if p.clamped { "true" } else { "false" }
        )?;
    }
    Ok(())
}

/// Write jump events:
/// header `t,x1_pre,x2_pre,x1_post,x2_post,dV`.
pub fn write_jump_events_csv<W: Write>(mut w: W, events: &[JumpEvent]) -> Result<()> {
    w.write_all(b"t,x1_pre,x2_pre,x1_post,x2_post,dV\n")?;
    for e in events {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fmt_f64(e.t),
            fmt_f64(e.before[0]),
            fmt_f64(e.before[1]),
            fmt_f64(e.after[0]),
            fmt_f64(e.after[1]),
            fmt_f64(e.delta_energy())
        )?;
    }
    Ok(())
}
