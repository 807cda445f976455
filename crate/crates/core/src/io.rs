//! Output formats.
//!
//! CSV files start with one `# <name> v1: ...` schema line followed by a
//! header row. Snapshots are one ASCII header line
//!
//! ```text
//! smithpml-snapshot nx=<nx> ny=<ny> dx=<dx> dy=<dy> field=<name> step=<step> dtype=f64 order=little-endian layout=i-major
//! ```
//!
//! terminated by `\n`, followed by `nx·ny` little-endian `f64` values with
//! the y index running fastest.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::solver::{Field2, RunOutput};

pub const PROBE_SCHEMA: &str = "# probes v1: one row per probe and step; x,y in grid coordinates";
pub const PROBE_HEADER: &str = "step,t,probe,x,y,p,u,v,vorticity";

/// CSV with a schema line and a header row.
pub fn csv_table(schema: &str, header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = format!("{schema}\n{header}\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

pub fn probe_csv(out: &RunOutput) -> String {
    let mut s = format!("{PROBE_SCHEMA}\n{PROBE_HEADER}\n");
    let n = out.probes.first().map_or(0, |p| p.samples.len());
    for k in 0..n {
        for (idx, series) in out.probes.iter().enumerate() {
            let x = &series.samples[k];
            let _ = writeln!(
                s,
                "{},{:e},{},{},{},{:e},{:e},{:e},{:e}",
                x.step, x.t, idx, series.location.0, series.location.1, x.p, x.u, x.v, x.vorticity
            );
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub field: String,
    pub step: usize,
    pub dx: f64,
    pub dy: f64,
    pub data: Field2,
}

pub fn write_snapshot(w: &mut impl Write, snap: &Snapshot) -> Result<()> {
    writeln!(
        w,
        "smithpml-snapshot nx={} ny={} dx={} dy={} field={} step={} dtype=f64 order=little-endian layout=i-major",
        snap.data.nx, snap.data.ny, snap.dx, snap.dy, snap.field, snap.step
    )?;
    let mut bytes = Vec::with_capacity(8 * snap.data.data.len());
    for x in &snap.data.data {
        bytes.extend_from_slice(&x.to_le_bytes());
    }
    w.write_all(&bytes)?;
    Ok(())
}

pub fn read_snapshot(r: impl Read) -> Result<Snapshot> {
    let mut r = BufReader::new(r);
    let mut line = String::new();
    r.read_line(&mut line)?;
    let mut words = line.split_whitespace();
    if words.next() != Some("smithpml-snapshot") {
        return Err(Error::Config("not a snapshot file".into()));
    }
    let mut get = std::collections::HashMap::new();
    for w in words {
        if let Some((k, v)) = w.split_once('=') {
            get.insert(k.to_string(), v.to_string());
        }
    }
    let field = |k: &str| get.get(k).cloned().ok_or_else(|| Error::Config(format!("snapshot header lacks {k}")));
    let num = |k: &str| -> Result<f64> {
        field(k)?.parse().map_err(|_| Error::Config(format!("bad {k} in snapshot header")))
    };
    if field("dtype")? != "f64" || field("order")? != "little-endian" {
        return Err(Error::Config("unsupported snapshot encoding".into()));
    }
    let (nx, ny) = (num("nx")? as usize, num("ny")? as usize);
    let mut bytes = vec![0u8; 8 * nx * ny];
    r.read_exact(&mut bytes)?;
    let data = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    Ok(Snapshot {
        field: field("field")?,
        step: num("step")? as usize,
        dx: num("dx")?,
        dy: num("dy")?,
        data: Field2 { nx, ny, data },
    })
}

/// Writes `p`, `u`, `v` and `vorticity` of every frame as
/// `<dir>/<field>_<step>.snap` and returns the paths.
pub fn write_frames(dir: &Path, out: &RunOutput) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let (dx, dy) = (out.grid.dx(), out.grid.dy());
    let mut paths = Vec::new();
    for f in &out.frames {
        for (name, data) in [("p", &f.p), ("u", &f.u), ("v", &f.v), ("vorticity", &f.vorticity)] {
            let path = dir.join(format!("{name}_{:06}.snap", f.step));
            let mut file = std::io::BufWriter::new(fs::File::create(&path)?);
            write_snapshot(
                &mut file,
                &Snapshot {
                    field: name.to_string(),
                    step: f.step,
                    dx,
                    dy,
                    data: data.clone(),
                },
            )?;
            file.flush()?;
            paths.push(path);
        }
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapshot_roundtrip() {
        let snap = Snapshot {
            field: "p".into(),
            step: 40,
            dx: 0.024,
            dy: 0.024,
            data: Field2::from_fn(3, 5, |i, j| i as f64 - 0.1 * j as f64),
        };
        let mut buf = Vec::new();
        write_snapshot(&mut buf, &snap).unwrap();
        assert!(buf.starts_with(b"smithpml-snapshot nx=3 ny=5 dx=0.024"));
        assert_eq!(read_snapshot(buf.as_slice()).unwrap(), snap);
    }

    #[test]
    fn rejects_foreign_files() {
        assert!(read_snapshot(&b"P6 3 5\n"[..]).is_err());
    }
}
