//! Static SVG renderers for barcodes and persistence diagrams.
//!
//! Output is plain SVG 1.1 with no scripting. Styling is fixed by the
//! constants below so that identical inputs always produce byte-identical
//! files:
//!
//! * canvas 640 x 480, margins 64 left, 24 right, 24 top, 48 bottom;
//! * one color per homology dimension, cycling through [`DIM_COLORS`];
//! * diagram points have radius 4; multiplicities greater than one are
//!   written as a numeral beside the point;
//! * infinite deaths are drawn on a dashed cap line (diagram) or run to the
//!   right edge of the plot with an arrowhead (barcode).

use crate::numfmt::fmt_tick;
use crate::persistence::{Barcode, PersistenceDiagram};

pub const WIDTH: f64 = 640.0;
pub const HEIGHT: f64 = 480.0;
pub const MARGIN_LEFT: f64 = 64.0;
pub const MARGIN_RIGHT: f64 = 24.0;
pub const MARGIN_TOP: f64 = 24.0;
pub const MARGIN_BOTTOM: f64 = 48.0;
pub const POINT_RADIUS: f64 = 4.0;

/// Fill/stroke colors by dimension, cycled for dimensions above 5.
pub const DIM_COLORS: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

const TICK_COUNT: usize = 4;
/// Headroom multiplier that keeps the largest value inside the frame.
const RANGE_PAD: f64 = 1.05;

fn color(dim: usize) -> &'static str {
    DIM_COLORS[dim % DIM_COLORS.len()]
}

fn px(v: f64) -> String {
    format!("{:.2}", v)
}

struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    max_value: f64,
}

impl Frame {
    fn new(max_value: f64) -> Frame {
        Frame {
            x0: MARGIN_LEFT,
            y0: MARGIN_TOP,
            w: WIDTH - MARGIN_LEFT - MARGIN_RIGHT,
            h: HEIGHT - MARGIN_TOP - MARGIN_BOTTOM,
            max_value,
        }
    }

    fn x(&self, value: f64) -> f64 {
        self.x0 + value / self.max_value * self.w
    }

    fn y(&self, value: f64) -> f64 {
        self.y0 + self.h - value / self.max_value * self.h
    }

    fn right(&self) -> f64 {
        self.x0 + self.w
    }

    fn bottom(&self) -> f64 {
        self.y0 + self.h
    }
}

fn svg_open(out: &mut String) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n",
        w = WIDTH,
        h = HEIGHT
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
}

fn x_axis(out: &mut String, frame: &Frame, label: &str) {
    out.push_str(&format!(
        "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        px(frame.x0),
        px(frame.bottom()),
        px(frame.right()),
        px(frame.bottom())
    ));
    for t in 0..=TICK_COUNT {
        let value = frame.max_value * t as f64 / TICK_COUNT as f64;
        let x = frame.x(value);
        out.push_str(&format!(
            "<line class=\"tick\" x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\"/>\n",
            px(frame.bottom()),
            px(frame.bottom() + 5.0),
            x = px(x),
        ));
        out.push_str(&format!(
            "<text class=\"tick-label\" x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            px(x),
            px(frame.bottom() + 18.0),
            fmt_tick(value)
        ));
    }
    out.push_str(&format!(
        "<text class=\"axis-label\" x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">{label}</text>\n",
        px(frame.x0 + frame.w / 2.0),
        px(frame.bottom() + 36.0)
    ));
}

fn y_axis(out: &mut String, frame: &Frame, label: &str) {
    out.push_str(&format!(
        "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        px(frame.x0),
        px(frame.y0),
        px(frame.x0),
        px(frame.bottom())
    ));
    for t in 0..=TICK_COUNT {
        let value = frame.max_value * t as f64 / TICK_COUNT as f64;
        let y = frame.y(value);
        out.push_str(&format!(
            "<line class=\"tick\" x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"black\"/>\n",
            px(frame.x0 - 5.0),
            px(frame.x0),
            y = px(y),
        ));
        out.push_str(&format!(
            "<text class=\"tick-label\" x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
            px(frame.x0 - 8.0),
            px(y + 4.0),
            fmt_tick(value)
        ));
    }
    out.push_str(&format!(
        "<text class=\"axis-label\" x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 {} {})\">{label}</text>\n",
        px(frame.x0 - 44.0),
        px(frame.y0 + frame.h / 2.0),
        px(frame.x0 - 44.0),
        px(frame.y0 + frame.h / 2.0)
    ));
}

/// Renders a persistence diagram as an SVG scatter: one mark per aggregated
/// point, the `x = y` diagonal, and a dashed cap line carrying the points
/// with infinite death.
pub fn render_diagram(diagram: &PersistenceDiagram) -> String {
    let finite_max = diagram
        .points()
        .iter()
        .flat_map(|p| {
            [
                p.birth,
                if p.death.is_finite() {
                    p.death
                } else {
                    p.birth
                },
            ]
        })
        .fold(0.0f64, f64::max);
    let cap_line = diagram.infinity_cap().unwrap_or(if finite_max > 0.0 {
        finite_max * RANGE_PAD
    } else {
        1.0
    });
    let has_infinite = diagram.points().iter().any(|p| p.death.is_infinite());
    let frame = Frame::new(cap_line * RANGE_PAD);

    let mut out = String::new();
    svg_open(&mut out);
    x_axis(&mut out, &frame, "birth");
    y_axis(&mut out, &frame, "death");

    // the diagonal x = y
    out.push_str(&format!(
        "<line class=\"diagonal\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999999\"/>\n",
        px(frame.x(0.0)),
        px(frame.y(0.0)),
        px(frame.x(frame.max_value)),
        px(frame.y(frame.max_value))
    ));

    if has_infinite {
        let y = frame.y(cap_line);
        out.push_str(&format!(
            "<line class=\"cap-line\" x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n",
            px(frame.x0),
            px(frame.right()),
            y = px(y),
        ));
        out.push_str(&format!(
            "<text class=\"cap-label\" x=\"{}\" y=\"{}\" font-size=\"13\">&#8734;</text>\n",
            px(frame.x0 - 18.0),
            px(y + 4.0)
        ));
    }

    for point in diagram.points() {
        let death = if point.death.is_finite() {
            point.death
        } else {
            cap_line
        };
        let (cx, cy) = (frame.x(point.birth), frame.y(death));
        out.push_str(&format!(
            "<circle class=\"pt dim{}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
            point.dim,
            px(cx),
            px(cy),
            POINT_RADIUS,
            color(point.dim)
        ));
        if point.death.is_infinite() {
            // upward arrow above the mark
            out.push_str(&format!(
                "<polygon class=\"arrow\" points=\"{},{} {},{} {},{}\" fill=\"{}\"/>\n",
                px(cx - 4.0),
                px(cy - 6.0),
                px(cx + 4.0),
                px(cy - 6.0),
                px(cx),
                px(cy - 13.0),
                color(point.dim)
            ));
        }
        if point.multiplicity > 1 {
            out.push_str(&format!(
                "<text class=\"mult\" x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n",
                px(cx + 7.0),
                px(cy - 7.0),
                point.multiplicity
            ));
        }
    }

    out.push_str("</svg>\n");
    out
}

/// Renders a barcode as an SVG: one horizontal bar per pair, rows grouped by
/// dimension, infinite bars running to the right edge with an arrowhead.
pub fn render_barcode(barcode: &Barcode) -> String {
    let finite_max = barcode
        .bars()
        .iter()
        .flat_map(|b| {
            [
                b.birth,
                if b.death.is_finite() {
                    b.death
                } else {
                    b.birth
                },
            ]
        })
        .fold(0.0f64, f64::max);
    let frame = Frame::new(if finite_max > 0.0 {
        finite_max * RANGE_PAD
    } else {
        1.0
    });

    let mut out = String::new();
    svg_open(&mut out);
    x_axis(&mut out, &frame, "scale");

    let bars = barcode.bars();
    if !bars.is_empty() {
        let row_height = frame.h / bars.len() as f64;
        let stroke = (row_height * 0.6).clamp(1.0, 6.0);
        let mut previous_dim: Option<usize> = None;
        for (row, bar) in bars.iter().enumerate() {
            let y = frame.y0 + row_height * (row as f64 + 0.5);
            if previous_dim != Some(bar.dim) {
                previous_dim = Some(bar.dim);
                out.push_str(&format!(
                    "<text class=\"group-label\" x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"end\" fill=\"{}\">H{}</text>\n",
                    px(frame.x0 - 10.0),
                    px(y + 4.0),
                    color(bar.dim),
                    bar.dim
                ));
            }
            let x1 = frame.x(bar.birth);
            let x2 = if bar.death.is_finite() {
                frame.x(bar.death)
            } else {
                frame.right()
            };
            out.push_str(&format!(
                "<line class=\"bar dim{}\" x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"{}\" stroke-width=\"{:.2}\"/>\n",
                bar.dim,
                px(x1),
                px(x2),
                color(bar.dim),
                stroke,
                y = px(y),
            ));
            if bar.death.is_infinite() {
                out.push_str(&format!(
                    "<polygon class=\"arrow\" points=\"{},{} {},{} {},{}\" fill=\"{}\"/>\n",
                    px(x2),
                    px(y - 5.0),
                    px(x2),
                    px(y + 5.0),
                    px(x2 + 8.0),
                    px(y),
                    color(bar.dim)
                ));
            }
        }
    }

    out.push_str("</svg>\n");
    out
}
