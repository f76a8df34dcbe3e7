//! Boundary traces `t -> h(e^{it})` in chart coordinates, with CSV output.

use std::f64::consts::TAU;
use std::io::{self, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::mobius_chart;
use crate::inner::GammaInner;

pub const CSV_HEADER: &str = "t,s_re,s_im,p_re,p_im,x,theta,edge_gap,b_residual";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRow {
    pub t: f64,
    pub s_re: f64,
    pub s_im: f64,
    pub p_re: f64,
    pub p_im: f64,
    pub x: f64,
    pub theta: f64,
    pub edge_gap: f64,
    pub b_residual: f64,
}

impl TraceRow {
    fn fields(&self) -> [f64; 9] {
        [
            self.t,
            self.s_re,
            self.s_im,
            self.p_re,
            self.p_im,
            self.x,
            self.theta,
            self.edge_gap,
            self.b_residual,
        ]
    }
}

/// `samples` equally spaced rows over `[0, 2 pi)`, with `theta` unwound
/// continuously from the first row.
pub fn trace_boundary(h: &GammaInner, samples: usize) -> Result<Vec<TraceRow>> {
    if samples < 16 {
        return Err(Error::BadParameter(format!(
            "at least 16 samples are needed, got {samples}"
        )));
    }
    let mut rows = Vec::with_capacity(samples);
    let mut branch = 0.0;
    for j in 0..samples {
        let t = TAU * j as f64 / samples as f64;
        let (s, p) = h.eval(Complex64::from_polar(1.0, t))?;
        let chart = mobius_chart(s, p, branch, h.tol())?;
        branch = chart.theta;
        rows.push(TraceRow {
            t,
            s_re: s.re,
            s_im: s.im,
            p_re: p.re,
            p_im: p.im,
            x: chart.x,
            theta: chart.theta,
            edge_gap: 2.0 - s.norm(),
            b_residual: (s - s.conj() * p).norm(),
        });
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[TraceRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        let line: Vec<String> = row.fields().iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn to_csv(rows: &[TraceRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Parse CSV produced by [`write_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<TraceRow>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::BadParameter("missing or wrong CSV header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, l)| {
            let v: Vec<f64> = l
                .split(',')
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::BadParameter(format!("row {}: {e}", i + 1)))?;
            if v.len() != 9 {
                return Err(Error::BadParameter(format!(
                    "row {} has {} fields",
                    i + 1,
                    v.len()
                )));
            }
            Ok(TraceRow {
                t: v[0],
                s_re: v[1],
                s_im: v[2],
                p_re: v[3],
                p_im: v[4],
                x: v[5],
                theta: v[6],
                edge_gap: v[7],
                b_residual: v[8],
            })
        })
        .collect()
}
