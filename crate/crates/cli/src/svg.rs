//! Standalone SVG figures. Coordinates are printed with fixed precision so
//! output is byte-stable.

use std::fmt::Write;

use num_complex::Complex64;
use spherepack_core::harmonic::CapSeries;

const W: f64 = 640.0;
const H: f64 = 400.0;
const PAD: f64 = 40.0;

fn header(w: f64, h: f64, title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <title>{title}</title>\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    )
}

/// Partial sums against the step function, with the axis box.
pub fn gibbs(series: &CapSeries, grid: &[(f64, f64)], half_width: f64) -> String {
    let (y_lo, y_hi) = (-0.3, 1.3);
    let x = |phi: f64| PAD + (phi + half_width) / (2.0 * half_width) * (W - 2.0 * PAD);
    let y = |v: f64| H - PAD - (v - y_lo) / (y_hi - y_lo) * (H - 2.0 * PAD);
    let mut s = header(W, H, &format!("Cap partial sums, {} terms", series.coeffs.len() - 1));
    let _ = writeln!(
        s,
        "<rect x=\"{PAD}\" y=\"{PAD}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#888\"/>",
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    for level in [0.0, 1.0] {
        let _ = writeln!(
            s,
            "<line x1=\"{PAD}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#ccc\"/>",
            y(level),
            W - PAD,
            y(level)
        );
    }
    let step: Vec<String> = grid.iter().map(|&(p, _)| format!("{:.2},{:.2}", x(p), y(series.step(p)))).collect();
    let _ = writeln!(s, "<polyline fill=\"none\" stroke=\"#999\" stroke-dasharray=\"4 3\" points=\"{}\"/>", step.join(" "));
    let sum: Vec<String> = grid.iter().map(|&(p, v)| format!("{:.2},{:.2}", x(p), y(v))).collect();
    let _ = writeln!(s, "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"{}\"/>", sum.join(" "));
    s.push_str("</svg>\n");
    s
}

/// Projected roots as small circles, scaled to the largest modulus.
pub fn coxeter(points: &[Complex64]) -> String {
    let side = 480.0;
    let c = side / 2.0;
    let rmax = points.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-12);
    let k = (c - 20.0) / rmax;
    let mut s = header(side, side, "Roots of E8 in the Coxeter plane");
    for z in points {
        let _ = writeln!(s, "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"3\" fill=\"#b03a2e\"/>", c + k * z.re, c - k * z.im);
    }
    s.push_str("</svg>\n");
    s
}

/// Bar chart of `(label, density)`.
pub fn density_table(bars: &[(String, f64)]) -> String {
    let n = bars.len().max(1) as f64;
    let slot = (W - 2.0 * PAD) / n;
    let top = bars.iter().map(|b| b.1).fold(0.0, f64::max).max(1e-12);
    let mut s = header(W, H, "Packing densities of classical lattices");
    let _ = writeln!(
        s,
        "<line x1=\"{PAD}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
        H - PAD,
        W - PAD,
        H - PAD
    );
    for (i, (label, d)) in bars.iter().enumerate() {
        let h = d / top * (H - 3.0 * PAD);
        let x0 = PAD + slot * i as f64 + slot * 0.15;
        let _ = writeln!(
            s,
            "<rect x=\"{x0:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{h:.2}\" fill=\"#4a7f3b\"/>",
            H - PAD - h,
            slot * 0.7
        );
        let cx = x0 + slot * 0.35;
        let _ = writeln!(
            s,
            "<text x=\"{cx:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{label}</text>",
            H - PAD + 16.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{cx:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{d:.4}</text>",
            H - PAD - h - 4.0
        );
    }
    s.push_str("</svg>\n");
    s
}
