//! OBJ meshes and CSV height traces.
use std::io::{BufRead, Write};

use scherk_core::mesh::SurfaceMesh;

use crate::{CliError, Result};

/// Writes vertices with shortest round-trip floats and 1-based faces.
pub fn write_obj<W: Write>(mesh: &SurfaceMesh, mut out: W) -> Result<()> {
    let md = &mesh.metadata;
    writeln!(out, "# scherk surface mesh")?;
    writeln!(out, "# m {:?} s {:?} t {:?} p {:?}", md.m, md.s, md.t, md.p)?;
    writeln!(
        out,
        "# h_max {:?} clamped_above {} clamped_below {}",
        md.h_max, md.clamped_above, md.clamped_below
    )?;
    for v in &mesh.vertices {
        writeln!(out, "v {:?} {:?} {:?}", v[0], v[1], v[2])?;
    }
    for f in &mesh.faces {
        writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    Ok(())
}

/// Vertices and 0-based triangles of an OBJ file. Comments and other
/// record types are skipped.
pub fn read_obj<R: BufRead>(input: R) -> Result<(Vec<[f64; 3]>, Vec<[usize; 3]>)> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    let bad = |line: &str| CliError::Input(format!("malformed OBJ line: {line}"));
    for line in input.lines() {
        let line = line?;
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("v") => {
                let xyz: Vec<f64> = fields.map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad(&line))?;
                let v: [f64; 3] = xyz.try_into().map_err(|_| bad(&line))?;
                vertices.push(v);
            }
            Some("f") => {
                let idx: Vec<usize> = fields
                    .map(|f| f.split('/').next().unwrap_or("").parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad(&line))?;
                let f: [usize; 3] = idx.try_into().map_err(|_| bad(&line))?;
                if f.iter().any(|&i| i == 0 || i > vertices.len()) {
                    return Err(bad(&line));
                }
                faces.push(f.map(|i| i - 1));
            }
            _ => {}
        }
    }
    Ok((vertices, faces))
}

/// `pole,r,log_1_minus_r,height` rows.
pub fn write_trace_csv<W: Write>(rows: &[(usize, Vec<(f64, f64)>)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["pole", "r", "log_1_minus_r", "height"])?;
    for (pole, trace) in rows {
        for &(r, t) in trace {
            w.write_record([
                pole.to_string(),
                format!("{r:?}"),
                format!("{:?}", (1.0 - r).ln()),
                format!("{t:?}"),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use scherk_core::{mesh, ScherkSurface};

    #[test]
    fn obj_round_trip() {
        let sf = ScherkSurface::from_params(0.3, 1.0, 0.3).unwrap();
        let m = mesh::sample_disk(&sf, 3, 8, 0.9, mesh::DEFAULT_H_MAX).unwrap();
        let mut buf = Vec::new();
        write_obj(&m, &mut buf).unwrap();
        let (v, f) = read_obj(&buf[..]).unwrap();
        assert_eq!(v, m.vertices);
        assert_eq!(f, m.faces);
    }

    #[test]
    fn rejects_bad_faces() {
        assert!(read_obj(&b"v 0 0 0\nf 1 2 3\n"[..]).is_err());
        assert!(read_obj(&b"v 0 0\n"[..]).is_err());
    }

    #[test]
    fn csv_header() {
        let mut buf = Vec::new();
        write_trace_csv(&[(2, vec![(0.5, -1.0)])], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("pole,r,log_1_minus_r,height\n2,0.5,"));
    }
}
