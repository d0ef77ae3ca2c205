//! CSV export of field snapshots.
//!
//! Numbers are written in Rust's shortest round-trip form, so parsing a file
//! back yields bit-identical values.

use std::io::{self, BufRead, Write};

use num_complex::Complex64;

use super::{AcousticState, FieldState, Mesh1D};
use crate::error::{Error, Result};

pub const VIBRATIONAL_HEADER: &str = "t,x,psi_u_re,psi_u_im,psi_d_re,psi_d_im,q_re,q_im";
pub const ACOUSTIC_HEADER: &str = "t,x,psi_re,psi_im,q1_re,q1_im,q2_re,q2_im";

fn write_rows<W: Write>(
    w: &mut W,
    header: &str,
    mesh: &Mesh1D,
    frames: impl Iterator<Item = (f64, [Vec<Complex64>; 3])>,
) -> io::Result<()> {
    writeln!(w, "{header}")?;
    for (t, [a, b, c]) in frames {
        for j in 0..mesh.nx {
            writeln!(
                w,
                "{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?}",
                t,
                mesh.x(j),
                a[j].re,
                a[j].im,
                b[j].re,
                b[j].im,
                c[j].re,
                c[j].im
            )?;
        }
    }
    Ok(())
}

pub fn write_vibrational<W: Write>(w: &mut W, mesh: &Mesh1D, snapshots: &[FieldState]) -> io::Result<()> {
    write_rows(
        w,
        VIBRATIONAL_HEADER,
        mesh,
        snapshots
            .iter()
            .map(|s| (s.t, [s.psi_u.to_vec(), s.psi_d.to_vec(), s.q.to_vec()])),
    )
}

pub fn write_acoustic<W: Write>(w: &mut W, mesh: &Mesh1D, snapshots: &[AcousticState]) -> io::Result<()> {
    write_rows(
        w,
        ACOUSTIC_HEADER,
        mesh,
        snapshots
            .iter()
            .map(|s| (s.t, [s.psi.to_vec(), s.q1.to_vec(), s.q2.to_vec()])),
    )
}

/// One parsed CSV row: `t`, `x` and three complex fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub t: f64,
    pub x: f64,
    pub fields: [Complex64; 3],
}

/// Parses a snapshot CSV written by this module, checking the header.
pub fn read_rows<R: BufRead>(r: R, header: &str) -> Result<Vec<Row>> {
    let mut lines = r.lines();
    let first = lines.next().transpose()?.unwrap_or_default();
    if first.trim_end() != header {
        return Err(Error::Config(format!("unexpected CSV header {first:?}")));
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let v: Vec<f64> = line
            .split(',')
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Config(format!("line {}: {e}", i + 2)))?;
        if v.len() != 8 {
            return Err(Error::Config(format!("line {}: expected 8 columns", i + 2)));
        }
        rows.push(Row {
            t: v[0],
            x: v[1],
            fields: [
                Complex64::new(v[2], v[3]),
                Complex64::new(v[4], v[5]),
                Complex64::new(v[6], v[7]),
            ],
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array1;

    #[test]
    fn round_trip_is_exact() {
        let mesh = Mesh1D::new(3, 0.1, 0.01, 1).unwrap();
        let s = FieldState {
            psi_u: Array1::from(vec![Complex64::new(0.1, 1e-300), Complex64::new(1.0 / 3.0, -0.0), Complex64::new(5e17, 2.5)]),
            psi_d: Array1::from(vec![Complex64::new(-7.0, 0.3); 3]),
            q: Array1::from(vec![Complex64::new(f64::MIN_POSITIVE, 1e-5); 3]),
            t: 0.07,
        };
        let mut buf = Vec::new();
        write_vibrational(&mut buf, &mesh, std::slice::from_ref(&s)).unwrap();
        let rows = read_rows(&buf[..], VIBRATIONAL_HEADER).unwrap();
        assert_eq!(rows.len(), 3);
        for (j, row) in rows.iter().enumerate() {
            assert_eq!(row.t.to_bits(), s.t.to_bits());
            assert_eq!(row.x.to_bits(), mesh.x(j).to_bits());
            assert_eq!(row.fields[0], s.psi_u[j]);
            assert_eq!(row.fields[1], s.psi_d[j]);
            assert_eq!(row.fields[2], s.q[j]);
        }
        assert!(read_rows(&buf[..], ACOUSTIC_HEADER).is_err());
    }
}
