//! Plot-ready CSV output. Floats carry 10 significant digits.

use std::io::{self, Write};

use crate::evolve::SearchTrace;
use crate::tune::{ReturnAmplitudeScan, ScanResult, ScanSample};

/// Formats a float with 10 significant digits in scientific notation.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.9e}")
}

/// `t2,prob,norm_err`, one row per query.
pub fn write_trace_csv<W: Write>(mut w: W, trace: &SearchTrace) -> io::Result<()> {
    writeln!(w, "t2,prob,norm_err")?;
    for r in &trace.records {
        writeln!(
            w,
            "{},{},{}",
            r.t2,
            fmt_float(r.prob),
            fmt_float(r.norm_err)
        )?;
    }
    Ok(())
}

/// Like [`write_trace_csv`] with one extra `prob_<k>` column per marked
/// vertex.
pub fn write_trace_csv_per_vertex<W: Write>(mut w: W, trace: &SearchTrace) -> io::Result<()> {
    let m = trace.records.first().map_or(0, |r| r.per_vertex.len());
    write!(w, "t2,prob,norm_err")?;
    for k in 0..m {
        write!(w, ",prob_{k}")?;
    }
    writeln!(w)?;
    for r in &trace.records {
        write!(
            w,
            "{},{},{}",
            r.t2,
            fmt_float(r.prob),
            fmt_float(r.norm_err)
        )?;
        for p in &r.per_vertex {
            write!(w, ",{}", fmt_float(*p))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// `s,P,t2,theta` per evaluated grid point; `P` and `t2` are left empty
/// where no peak was found.
pub fn write_scan_csv<W: Write>(w: W, scan: &ScanResult, t1: usize) -> io::Result<()> {
    write_scan_samples_csv(w, &scan.samples, t1)
}

pub fn write_scan_samples_csv<W: Write>(
    mut w: W,
    samples: &[ScanSample],
    t1: usize,
) -> io::Result<()> {
    writeln!(w, "s,P,t2,theta")?;
    for x in samples {
        let theta = fmt_float(crate::tune::theta(x.s, t1));
        if x.peak.valid {
            writeln!(
                w,
                "{},{},{},{theta}",
                fmt_float(x.s),
                fmt_float(x.peak.p),
                x.peak.t2
            )?;
        } else {
            writeln!(w, "{},,,{theta}", fmt_float(x.s))?;
        }
    }
    Ok(())
}

/// `s,A,theta` per evaluated grid point.
pub fn write_return_amplitude_csv<W: Write>(
    mut w: W,
    scan: &ReturnAmplitudeScan,
    t1: usize,
) -> io::Result<()> {
    writeln!(w, "s,A,theta")?;
    for &(s, a) in &scan.samples {
        writeln!(
            w,
            "{},{},{}",
            fmt_float(s),
            fmt_float(a),
            fmt_float(crate::tune::theta(s, t1))
        )?;
    }
    Ok(())
}
