use std::f64::consts::PI;
use std::fmt::Write;

use super::{format_value, ChartError, ChartKind, ChartSpec};

pub const WIDTH: f64 = 640.0;
pub const HEIGHT: f64 = 400.0;
pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

const LEFT: f64 = 90.0;
const RIGHT: f64 = 620.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 320.0;

fn colour(column: usize) -> &'static str {
    PALETTE[column % PALETTE.len()]
}

/// Two decimals, never `-0.00`.
fn c(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0 + 0.0;
    format!("{r:.2}")
}

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(ch),
        }
    }
    out
}

/// Value range: [0,1] widened to cover the data.
fn value_range(spec: &ChartSpec) -> (f64, f64) {
    spec.present_values()
        .filter(|v| v.is_finite())
        .fold((0.0, 1.0), |(lo, hi): (f64, f64), v| (lo.min(v), hi.max(v)))
}

struct Canvas {
    out: String,
    lo: f64,
    hi: f64,
}

impl Canvas {
    fn frac(&self, v: f64) -> f64 {
        let v = if v.is_finite() { v } else { self.lo };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn line(&mut self, class: &str, x1: f64, y1: f64, x2: f64, y2: f64) {
        let _ = writeln!(
            self.out,
            r##"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#333333"/>"##,
            c(x1),
            c(y1),
            c(x2),
            c(y2)
        );
    }

    fn text(&mut self, class: &str, x: f64, y: f64, anchor: &str, s: &str) {
        let _ = writeln!(
            self.out,
            r#"<text class="{class}" x="{}" y="{}" text-anchor="{anchor}" font-size="11">{}</text>"#,
            c(x),
            c(y),
            esc(s)
        );
    }

    fn marker(&mut self, x: f64, y: f64, column: usize, v: f64) {
        let _ = writeln!(
            self.out,
            r#"<circle class="point" cx="{}" cy="{}" r="3" fill="{}" data-value="{}"/>"#,
            c(x),
            c(y),
            colour(column),
            format_value(v)
        );
    }
}

fn row_label(spec: &ChartSpec, r: usize) -> &str {
    let iri = spec.rows[r].as_str();
    let local = spec.rows[r].local_name();
    if local.is_empty() {
        iri
    } else {
        local
    }
}

fn ticks(cv: &mut Canvas, horizontal: bool) {
    for i in 0..=4 {
        let v = cv.lo + (cv.hi - cv.lo) * i as f64 / 4.0;
        let f = i as f64 / 4.0;
        let label = format_value((v * 1000.0).round() / 1000.0);
        if horizontal {
            let x = LEFT + f * (RIGHT - LEFT);
            cv.line("tick", x, BOTTOM, x, BOTTOM + 4.0);
            cv.text("tick-label", x, BOTTOM + 16.0, "middle", &label);
        } else {
            let y = BOTTOM - f * (BOTTOM - TOP);
            cv.line("tick", LEFT - 4.0, y, LEFT, y);
            cv.text("tick-label", LEFT - 6.0, y + 4.0, "end", &label);
        }
    }
}

fn bars(cv: &mut Canvas, spec: &ChartSpec, horizontal: bool) {
    let rows = spec.rows.len().max(1) as f64;
    let cols = spec.columns.len().max(1) as f64;
    let (band_axis_len, value_axis_len) = if horizontal {
        (BOTTOM - TOP, RIGHT - LEFT)
    } else {
        (RIGHT - LEFT, BOTTOM - TOP)
    };
    let band = band_axis_len / rows;
    let thickness = band * 0.8 / cols;
    let zero = cv.frac(0.0) * value_axis_len;
    cv.line("axis", LEFT, TOP, LEFT, BOTTOM);
    cv.line("axis", LEFT, BOTTOM, RIGHT, BOTTOM);
    ticks(cv, horizontal);
    for (r, values) in spec.values.iter().enumerate() {
        let band_start = band * r as f64;
        let label_pos = band_start + band / 2.0;
        if horizontal {
            cv.text("row-label", LEFT - 6.0, TOP + label_pos + 4.0, "end", row_label(spec, r));
        } else {
            cv.text("row-label", LEFT + label_pos, BOTTOM + 30.0, "middle", row_label(spec, r));
        }
        for (col, v) in values.iter().enumerate() {
            let missing = if v.is_some() { "" } else { " missing" };
            let _ = writeln!(cv.out, r#"<g class="cell{missing}" data-row="{r}" data-column="{col}">"#);
            if let Some(v) = v {
                let end = cv.frac(*v) * value_axis_len;
                let (a, len) = (zero.min(end), (end - zero).abs());
                let offset = band_start + band * 0.1 + thickness * col as f64;
                let (x, y, w, h) = if horizontal {
                    (LEFT + a, TOP + offset, len, thickness)
                } else {
                    (LEFT + offset, BOTTOM - a - len, thickness, len)
                };
                let _ = writeln!(
                    cv.out,
                    r#"<rect class="bar" x="{}" y="{}" width="{}" height="{}" fill="{}" data-value="{}"/>"#,
                    c(x),
                    c(y),
                    c(w),
                    c(h),
                    colour(col),
                    format_value(*v)
                );
            }
            cv.out.push_str("</g>\n");
        }
    }
}

fn lines(cv: &mut Canvas, spec: &ChartSpec) {
    let rows = spec.rows.len().max(1) as f64;
    let step = (RIGHT - LEFT) / rows;
    let x_of = |r: usize| LEFT + step * (r as f64 + 0.5);
    cv.line("axis", LEFT, TOP, LEFT, BOTTOM);
    cv.line("axis", LEFT, BOTTOM, RIGHT, BOTTOM);
    ticks(cv, false);
    for r in 0..spec.rows.len() {
        cv.text("row-label", x_of(r), BOTTOM + 16.0, "middle", row_label(spec, r));
    }
    for col in 0..spec.columns.len() {
        let pts: Vec<(f64, f64, f64)> = spec
            .values
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row[col].map(|v| (x_of(r), BOTTOM - cv.frac(v) * (BOTTOM - TOP), v)))
            .collect();
        let points: Vec<String> = pts.iter().map(|(x, y, _)| format!("{},{}", c(*x), c(*y))).collect();
        let _ = writeln!(
            cv.out,
            r#"<polyline class="series" data-column="{col}" points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            points.join(" "),
            colour(col)
        );
        for (x, y, v) in pts {
            cv.marker(x, y, col, v);
        }
    }
}

fn radar(cv: &mut Canvas, spec: &ChartSpec) -> Result<(), ChartError> {
    let n = spec.columns.len();
    if n < 3 {
        return Err(ChartError::RadarNeedsThreeMetrics(n));
    }
    let (cx, cy, radius) = (WIDTH / 2.0, (TOP + BOTTOM) / 2.0 + 10.0, 130.0);
    let angle = |j: usize| -PI / 2.0 + 2.0 * PI * j as f64 / n as f64;
    let at = |j: usize, f: f64| (cx + radius * f * angle(j).cos(), cy + radius * f * angle(j).sin());
    let mut grid = String::new();
    for ring in 1..=4 {
        let f = ring as f64 / 4.0;
        for j in 0..=n {
            let (x, y) = at(j % n, f);
            let _ = write!(grid, "{}{} {} ", if j == 0 { "M" } else { "L" }, c(x), c(y));
        }
    }
    for j in 0..n {
        let (x, y) = at(j, 1.0);
        let _ = write!(grid, "M{} {} L{} {} ", c(cx), c(cy), c(x), c(y));
    }
    let _ = writeln!(cv.out, r##"<path class="grid" d="{}" fill="none" stroke="#cccccc"/>"##, grid.trim_end());
    for (j, label) in spec.column_labels.iter().enumerate() {
        let (x, y) = at(j, 1.12);
        cv.text("axis-label", x, y + 4.0, "middle", label);
    }
    for (r, row) in spec.values.iter().enumerate() {
        let pts: Vec<(f64, f64, f64)> = row
            .iter()
            .enumerate()
            .filter_map(|(j, v)| v.map(|v| (at(j, cv.frac(v)), v)))
            .map(|((x, y), v)| (x, y, v))
            .collect();
        let points: Vec<String> = pts.iter().map(|(x, y, _)| format!("{},{}", c(*x), c(*y))).collect();
        let _ = writeln!(
            cv.out,
            r#"<polygon class="series" data-row="{r}" points="{}" fill="{}" fill-opacity="0.2" stroke="{}"/>"#,
            points.join(" "),
            colour(r),
            colour(r)
        );
        for (x, y, v) in pts {
            cv.marker(x, y, r, v);
        }
    }
    Ok(())
}

fn legend(cv: &mut Canvas, labels: &[String]) {
    let mut x = LEFT;
    let y = HEIGHT - 24.0;
    for (i, label) in labels.iter().enumerate() {
        let _ = writeln!(
            cv.out,
            r#"<path class="swatch" d="M{} {} h10 v10 h-10 z" fill="{}"/>"#,
            c(x),
            c(y - 9.0),
            colour(i)
        );
        cv.text("legend", x + 14.0, y, "start", label);
        x += 20.0 + 6.5 * label.chars().count() as f64;
    }
}

/// Renders the chart as a standalone SVG document.
pub fn render_svg(spec: &ChartSpec) -> Result<Vec<u8>, ChartError> {
    spec.check()?;
    let (lo, hi) = value_range(spec);
    let mut cv = Canvas {
        out: String::new(),
        lo,
        hi,
    };
    let _ = writeln!(
        cv.out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" data-kind="{}">"#,
        spec.kind
    );
    let _ = writeln!(cv.out, "<title>{}</title>", esc(&spec.title));
    cv.text("title", WIDTH / 2.0, 22.0, "middle", &spec.title.clone());
    match spec.kind {
        ChartKind::HorizontalBar => bars(&mut cv, spec, true),
        ChartKind::VerticalBar => bars(&mut cv, spec, false),
        ChartKind::Lines => lines(&mut cv, spec),
        ChartKind::Radar => radar(&mut cv, spec)?,
    }
    if spec.kind != ChartKind::Radar {
        let (x_label, y_label) = if spec.kind == ChartKind::HorizontalBar {
            (&spec.y_label, &spec.x_label)
        } else {
            (&spec.x_label, &spec.y_label)
        };
        cv.text("x-label", (LEFT + RIGHT) / 2.0, BOTTOM + 46.0, "middle", &x_label.clone());
        let _ = writeln!(
            cv.out,
            r#"<text class="y-label" x="16" y="{}" text-anchor="middle" font-size="11" transform="rotate(-90 16 {})">{}</text>"#,
            c((TOP + BOTTOM) / 2.0),
            c((TOP + BOTTOM) / 2.0),
            esc(y_label)
        );
    }
    let legend_labels = if spec.kind == ChartKind::Radar {
        (0..spec.rows.len()).map(|r| row_label(spec, r).to_owned()).collect()
    } else {
        spec.column_labels.clone()
    };
    legend(&mut cv, &legend_labels);
    cv.out.push_str("</svg>\n");
    Ok(cv.out.into_bytes())
}
