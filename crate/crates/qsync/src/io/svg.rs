//! Minimal self-contained SVG renderers: a heatmap with color bar for grid
//! data and a line plot for time series and trajectories. Not a plotting
//! framework; axes, ticks, color bar, and title only.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::phase::QSurface;
use crate::sweep::SweepResult;

/// Monotone perceptual ramp (dark blue through green to yellow), sampled at
/// equally spaced anchors and linearly interpolated.
const RAMP: [(u8, u8, u8); 9] = [
    (68, 1, 84),
    (71, 44, 122),
    (59, 81, 139),
    (44, 113, 142),
    (33, 144, 141),
    (39, 173, 129),
    (92, 200, 99),
    (170, 220, 50),
    (253, 231, 37),
];

fn ramp_color(frac: f64) -> (u8, u8, u8) {
    let clamped = frac.clamp(0.0, 1.0);
    let scaled = clamped * (RAMP.len() - 1) as f64;
    let lo = scaled.floor() as usize;
    let hi = (lo + 1).min(RAMP.len() - 1);
    let t = scaled - lo as f64;
    let mix = |a: u8, b: u8| (a as f64 + t * (b as f64 - a as f64)).round() as u8;
    (
        mix(RAMP[lo].0, RAMP[hi].0),
        mix(RAMP[lo].1, RAMP[hi].1),
        mix(RAMP[lo].2, RAMP[hi].2),
    )
}

fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

fn fmt_label(x: f64) -> String {
    if x != 0.0 && (x.abs() >= 1e4 || x.abs() < 1e-3) {
        format!("{x:.3e}")
    } else {
        format!("{x:.4}")
    }
}

/// Rendering options for heatmaps.
#[derive(Debug, Clone)]
pub struct HeatmapOptions {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Override the color-scale bounds; data min/max by default.
    pub color_range: Option<(f64, f64)>,
}

impl HeatmapOptions {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        HeatmapOptions {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            color_range: None,
        }
    }
}

struct Frame {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
}

fn svg_open(s: &mut String, width: u32, height: u32) {
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\">"
    );
    let _ = writeln!(
        s,
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>"
    );
}

fn draw_axes(
    s: &mut String,
    frame: &Frame,
    x_range: (f64, f64),
    y_range: (f64, f64),
    x_label: &str,
    y_label: &str,
    title: &str,
) {
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>",
        fmt(frame.left),
        fmt(frame.top),
        fmt(frame.width),
        fmt(frame.height)
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>",
        fmt(frame.left + frame.width / 2.0),
        title
    );
    let ticks = 5;
    for k in 0..ticks {
        let f = k as f64 / (ticks - 1) as f64;
        let xv = x_range.0 + f * (x_range.1 - x_range.0);
        let xp = frame.left + f * frame.width;
        let _ = writeln!(
            s,
            "<line x1=\"{x}\" y1=\"{y0}\" x2=\"{x}\" y2=\"{y1}\" stroke=\"black\"/>",
            x = fmt(xp),
            y0 = fmt(frame.top + frame.height),
            y1 = fmt(frame.top + frame.height + 5.0)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"11\">{}</text>",
            fmt(xp),
            fmt(frame.top + frame.height + 18.0),
            fmt_label(xv)
        );
        let yv = y_range.0 + f * (y_range.1 - y_range.0);
        let yp = frame.top + frame.height - f * frame.height;
        let _ = writeln!(
            s,
            "<line x1=\"{x0}\" y1=\"{y}\" x2=\"{x1}\" y2=\"{y}\" stroke=\"black\"/>",
            x0 = fmt(frame.left - 5.0),
            x1 = fmt(frame.left),
            y = fmt(yp)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{}</text>",
            fmt(frame.left - 8.0),
            fmt(yp + 4.0),
            fmt_label(yv)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{}</text>",
        fmt(frame.left + frame.width / 2.0),
        fmt(frame.top + frame.height + 36.0),
        x_label
    );
    let _ = writeln!(
        s,
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\" \
         transform=\"rotate(-90 16 {})\">{}</text>",
        fmt(frame.top + frame.height / 2.0),
        fmt(frame.top + frame.height / 2.0),
        y_label
    );
}

fn render_heatmap(
    rows: usize,
    cols: usize,
    values: &[f64],
    x_range: (f64, f64),
    y_range: (f64, f64),
    options: &HeatmapOptions,
) -> Result<String> {
    if values.len() != rows * cols || values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Config("heatmap requires a finite rows*cols matrix".into()));
    }
    let (mut lo, mut hi) = options.color_range.unwrap_or_else(|| {
        values.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
    });
    // Degenerate (constant) matrices keep their value as both bounds but
    // render mid-ramp.
    let degenerate = hi <= lo;
    if degenerate {
        hi = lo;
        lo -= 0.5;
    }
    let frame = Frame {
        left: 70.0,
        top: 40.0,
        width: 480.0,
        height: 360.0,
    };
    let width = 700u32;
    let height = 450u32;
    let mut s = String::new();
    svg_open(&mut s, width, height);
    let cell_w = frame.width / cols as f64;
    let cell_h = frame.height / rows as f64;
    for j in 0..rows {
        // Row 0 is the lowest y coordinate; SVG's y axis points down.
        let ypos = frame.top + frame.height - (j + 1) as f64 * cell_h;
        for i in 0..cols {
            let v = values[j * cols + i];
            let f = if degenerate { 0.5 } else { (v - lo) / (hi - lo) };
            let (r, g, b) = ramp_color(f);
            let _ = writeln!(
                s,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"rgb({r},{g},{b})\"/>",
                fmt(frame.left + i as f64 * cell_w),
                fmt(ypos),
                fmt(cell_w + 0.5),
                fmt(cell_h + 0.5)
            );
        }
    }
    draw_axes(
        &mut s,
        &frame,
        x_range,
        y_range,
        &options.x_label,
        &options.y_label,
        &options.title,
    );
    // Color bar.
    let bar_x = frame.left + frame.width + 30.0;
    let bar_segments = 64usize;
    let seg_h = frame.height / bar_segments as f64;
    for k in 0..bar_segments {
        let f = k as f64 / (bar_segments - 1) as f64;
        let (r, g, b) = ramp_color(f);
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"18\" height=\"{}\" fill=\"rgb({r},{g},{b})\"/>",
            fmt(bar_x),
            fmt(frame.top + frame.height - (k + 1) as f64 * seg_h),
            fmt(seg_h + 0.5)
        );
    }
    let bar_hi = hi;
    let bar_lo = if degenerate { hi } else { lo };
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>",
        fmt(bar_x + 22.0),
        fmt(frame.top + 10.0),
        fmt_label(bar_hi)
    );
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>",
        fmt(bar_x + 22.0),
        fmt(frame.top + frame.height),
        fmt_label(bar_lo)
    );
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

/// Sweep grid as an SVG heatmap.
pub fn emit_sweep_svg(result: &SweepResult, options: &HeatmapOptions, path: &Path) -> Result<()> {
    let y_axis = result
        .y_axis
        .as_ref()
        .ok_or_else(|| Error::Config("heatmap requires a two-dimensional sweep".into()))?;
    let text = render_heatmap(
        result.rows(),
        result.cols(),
        &result.values,
        (result.x_axis.min, result.x_axis.max),
        (y_axis.min, y_axis.max),
        options,
    )?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Husimi surface as an SVG heatmap over (phi, theta).
pub fn emit_qsurface_svg(qs: &QSurface, options: &HeatmapOptions, path: &Path) -> Result<()> {
    let n_phi = qs.grid.phis().len();
    let n_theta = qs.grid.thetas().len();
    // Theta rows are stored top-of-sphere first; flip so theta increases
    // upward on the plot.
    let mut flipped = Vec::with_capacity(qs.values.len());
    for i in (0..n_theta).rev() {
        flipped.extend_from_slice(&qs.values[i * n_phi..(i + 1) * n_phi]);
    }
    let text = render_heatmap(
        n_theta,
        n_phi,
        &flipped,
        (
            qs.grid.phis()[0],
            qs.grid.phis()[n_phi - 1],
        ),
        (std::f64::consts::PI, 0.0),
        options,
    )?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Polyline plot of one or more named series over a shared x grid.
pub fn emit_line_svg(
    x: &[f64],
    series: &[(&str, &[f64])],
    title: &str,
    x_label: &str,
    y_label: &str,
    path: &Path,
) -> Result<()> {
    if x.is_empty() || series.is_empty() {
        return Err(Error::Config("line plot requires data".into()));
    }
    let (mut ylo, mut yhi) = (f64::MAX, f64::MIN);
    for (_, ys) in series {
        if ys.len() != x.len() || ys.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("line series must be finite and match x".into()));
        }
        for &v in *ys {
            ylo = ylo.min(v);
            yhi = yhi.max(v);
        }
    }
    if yhi <= ylo {
        yhi = ylo + 1.0;
    }
    let frame = Frame {
        left: 70.0,
        top: 40.0,
        width: 540.0,
        height: 360.0,
    };
    let (xlo, xhi) = (x[0], x[x.len() - 1]);
    let mut s = String::new();
    svg_open(&mut s, 700, 450);
    const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
    for (idx, (name, ys)) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let mut points = String::new();
        for (xv, yv) in x.iter().zip(*ys) {
            let xp = frame.left + (xv - xlo) / (xhi - xlo) * frame.width;
            let yp = frame.top + frame.height - (yv - ylo) / (yhi - ylo) * frame.height;
            let _ = write!(points, "{},{} ", fmt(xp), fmt(yp));
        }
        let _ = writeln!(
            s,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.2\"/>",
            points.trim_end()
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{color}\">{}</text>",
            fmt(frame.left + frame.width - 80.0),
            fmt(frame.top + 14.0 * (idx as f64 + 1.0)),
            name
        );
    }
    draw_axes(&mut s, &frame, (xlo, xhi), (ylo, yhi), x_label, y_label, title);
    let _ = writeln!(s, "</svg>");
    std::fs::write(path, s).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_matrix_renders_degenerate_bar() {
        let text = render_heatmap(
            2,
            2,
            &[0.3; 4],
            (0.0, 1.0),
            (0.0, 1.0),
            &HeatmapOptions::new("t", "x", "y"),
        )
        .unwrap();
        // Both color bar labels carry the constant value.
        assert_eq!(text.matches("0.3000").count(), 2);
    }

    #[test]
    fn heatmap_is_deterministic() {
        let opts = HeatmapOptions::new("t", "x", "y");
        let vals = [0.0, 0.25, 0.5, 1.0];
        let a = render_heatmap(2, 2, &vals, (0.0, 1.0), (0.0, 1.0), &opts).unwrap();
        let b = render_heatmap(2, 2, &vals, (0.0, 1.0), (0.0, 1.0), &opts).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ramp_endpoints() {
        assert_eq!(ramp_color(0.0), RAMP[0]);
        assert_eq!(ramp_color(1.0), RAMP[8]);
        assert_eq!(ramp_color(-5.0), RAMP[0]);
    }
}
