//! CSV and manifest formats for trajectories and sweep grids.
//!
//! Floats are written as the shortest decimal that round-trips, independent of
//! locale, with LF line endings.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dynamics::Trajectory;
use crate::entanglement::EntanglementValue;
use crate::error::{Error, Result};
use crate::experiments::SweepResult;
use crate::xstate::XState;

pub const TRAJECTORY_HEADER: [&str; 11] = [
    "tau",
    "rho_G",
    "rho_A",
    "rho_S",
    "rho_E",
    "re_GE",
    "im_GE",
    "re_AS",
    "im_AS",
    "concurrence",
    "negativity",
];

pub const MAP_HEADER: [&str; 5] = ["axis1", "axis2", "concurrence", "negativity", "method"];

/// Shortest round-trip decimal form of `x`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn parse_f64(field: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a number: {field:?}")))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub tau: f64,
    pub state: XState,
    pub concurrence: f64,
    pub negativity: f64,
}

pub fn write_trajectory_csv<W: Write>(out: W, trajectory: &Trajectory) -> Result<()> {
    let mut w = writer(out);
    w.write_record(TRAJECTORY_HEADER)?;
    for s in &trajectory.samples {
        let m = EntanglementValue::of(&s.state)?;
        let mut rec = vec![fmt_f64(s.tau)];
        rec.extend(s.state.to_array().iter().map(|&x| fmt_f64(x)));
        rec.push(fmt_f64(m.concurrence));
        rec.push(fmt_f64(m.negativity));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trajectory_csv<R: Read>(input: R) -> Result<Vec<TrajectoryRow>> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().ne(TRAJECTORY_HEADER) {
        return Err(Error::Parse("unexpected trajectory header".into()));
    }
    r.records()
        .map(|rec| {
            let rec = rec?;
            let v = rec.iter().map(parse_f64).collect::<Result<Vec<_>>>()?;
            if v.len() != TRAJECTORY_HEADER.len() {
                return Err(Error::Parse(format!("expected 11 fields, got {}", v.len())));
            }
            Ok(TrajectoryRow {
                tau: v[0],
                state: XState::from_array(v[1..9].try_into().expect("8 fields")),
                concurrence: v[9],
                negativity: v[10],
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapRow {
    pub axis1: f64,
    pub axis2: f64,
    pub concurrence: Option<f64>,
    pub negativity: Option<f64>,
    pub method: String,
}

pub fn write_map_csv<W: Write>(out: W, result: &SweepResult) -> Result<()> {
    let mut w = writer(out);
    w.write_record(MAP_HEADER)?;
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    for c in &result.cells {
        w.write_record([
            fmt_f64(c.axis1),
            fmt_f64(c.axis2),
            opt(c.concurrence),
            opt(c.negativity),
            c.method.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_map_csv<R: Read>(input: R) -> Result<Vec<MapRow>> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().ne(MAP_HEADER) {
        return Err(Error::Parse("unexpected map header".into()));
    }
    let opt = |f: &str| {
        if f.is_empty() {
            Ok(None)
        } else {
            parse_f64(f).map(Some)
        }
    };
    r.records()
        .map(|rec| {
            let rec = rec?;
            if rec.len() != MAP_HEADER.len() {
                return Err(Error::Parse(format!(
                    "expected 5 fields, got {}",
                    rec.len()
                )));
            }
            Ok(MapRow {
                axis1: parse_f64(&rec[0])?,
                axis2: parse_f64(&rec[1])?,
                concurrence: opt(&rec[2])?,
                negativity: opt(&rec[3])?,
                method: rec[4].to_string(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEntry {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub params: serde_json::Value,
    pub version: String,
    pub timestamp: String,
    pub outputs: Vec<OutputEntry>,
}

/// RFC 3339 timestamp, taken from `SOURCE_DATE_EPOCH` when set.
pub fn timestamp() -> String {
    let now = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|secs| chrono::DateTime::from_timestamp(secs, 0))
        .unwrap_or_else(chrono::Utc::now);
    now.to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Manifest path for a data file: `<file>.manifest.json`.
pub fn manifest_path(data: &Path) -> PathBuf {
    let mut name = data.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes `bytes` to `path` and a manifest describing it next to it.
pub fn write_with_manifest<P: Serialize>(
    path: &Path,
    bytes: &[u8],
    command: &str,
    params: &P,
) -> Result<Manifest> {
    fs::write(path, bytes)?;
    let manifest = Manifest {
        command: command.to_string(),
        params: serde_json::to_value(params)?,
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: timestamp(),
        outputs: vec![OutputEntry {
            path: path.display().to_string(),
            sha256: sha256_hex(bytes),
        }],
    };
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    fs::write(manifest_path(path), json)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::Evolver;
    use crate::field_bath::FieldBathConfig;

    #[test]
    fn trajectory_round_trip() {
        let ev = Evolver::new(
            &FieldBathConfig::dimensionless(0.3, 0.7, Some(0.2))
                .unwrap()
                .coefficients(),
        )
        .unwrap();
        let taus: Vec<f64> = (0..20).map(|i| i as f64 * 0.37).collect();
        let traj = ev.trajectory(&XState::bell_ge(), &taus).unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &traj).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(
            "tau,rho_G,rho_A,rho_S,rho_E,re_GE,im_GE,re_AS,im_AS,concurrence,negativity\n"
        ));
        assert!(!text.contains('\r'));
        let rows = read_trajectory_csv(buf.as_slice()).unwrap();
        for (row, s) in rows.iter().zip(&traj.samples) {
            assert_eq!(row.tau, s.tau);
            assert_eq!(row.state, s.state);
        }
    }

    #[test]
    fn formatting_is_shortest_round_trip() {
        assert_eq!(fmt_f64(0.25), "0.25");
        assert_eq!(fmt_f64(1e-5), "1e-5");
        assert_eq!(fmt_f64(0.1 + 0.2).parse::<f64>().unwrap(), 0.1 + 0.2);
    }

    #[test]
    fn source_date_epoch_fixes_timestamp() {
        std::env::set_var("SOURCE_DATE_EPOCH", "0");
        assert_eq!(timestamp(), "1970-01-01T00:00:00Z");
        std::env::remove_var("SOURCE_DATE_EPOCH");
    }
}
