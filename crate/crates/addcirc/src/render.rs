//! SVG rendering of additive circuits.
//!
//! One horizontal wire per dimension, left to right: phases draw as labeled
//! circles, rotations as boxes over two adjacent rows, swaps as wire
//! crossings. When a rotation's wires are not adjacent, the renderer
//! permutes rows with an extra crossing column first — a drawing device
//! only, the circuit is untouched.
//!
//! Given an input basis state, wire segments are styled from the state
//! trace: stroke opacity is the amplitude magnitude and the stroke color
//! encodes the phase on a cyclic wheel anchored at black for phase zero.
//! Segments carry `data-dim` and `data-seg` attributes (`seg` counts gates
//! applied so far) so styles can be read back programmatically.

use std::f64::consts::{PI, TAU};

use crate::ir::BasisIndex;
use crate::semantics::trace_state_basis;
use crate::{AdditiveCircuit, StateTrace};
use crate::ir::AdditiveGate;

const ROW_H: f64 = 30.0;
const COL_W: f64 = 46.0;
const GAP_W: f64 = 28.0;
const X0: f64 = 34.0;
const Y0: f64 = 26.0;

/// Visual style of a wire segment carrying an amplitude: opacity is the
/// magnitude (0 transparent, 1 opaque), hue the phase as a fraction of a
/// cyclic color wheel anchored at black.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WireStyle {
    pub opacity: f64,
    pub hue: f64,
}

impl WireStyle {
    pub fn from_amplitude(amplitude: num_complex::Complex<f64>) -> Self {
        WireStyle {
            opacity: amplitude.norm(),
            hue: amplitude.arg().rem_euclid(TAU) / TAU,
        }
    }

    pub fn opaque() -> Self {
        WireStyle { opacity: 1.0, hue: 0.0 }
    }

    /// The hue on a dark wheel running black → purple → black.
    pub fn color(&self) -> String {
        let s = (PI * self.hue).sin();
        let r = (160.0 * s * s).round() as u8;
        let b = (200.0 * s).round() as u8;
        format!("#{r:02x}00{b:02x}")
    }
}

fn fmt_theta(theta: crate::Angle) -> String {
    let mut s = format!("{:.4}", theta.radians());
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    s
}

struct Canvas {
    elements: Vec<String>,
    trace: Option<StateTrace>,
}

impl Canvas {
    fn style(&self, dim: usize, seg: usize) -> WireStyle {
        match &self.trace {
            Some(trace) => WireStyle::from_amplitude(trace.snapshots()[seg].amplitude(dim)),
            None => WireStyle::opaque(),
        }
    }

    fn wire(&mut self, dim: usize, seg: usize, x1: f64, y1: f64, x2: f64, y2: f64) {
        let style = self.style(dim, seg);
        let (opacity, color) = (style.opacity, style.color());
        self.elements.push(format!(
            r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="{color}" stroke-width="2" stroke-opacity="{opacity:.12}" data-dim="{dim}" data-seg="{seg}"/>"#
        ));
    }

    fn text(&mut self, x: f64, y: f64, size: u32, label: &str) {
        self.elements.push(format!(
            r#"<text x="{x:.1}" y="{y:.1}" font-size="{size}" font-family="monospace" text-anchor="middle">{label}</text>"#
        ));
    }
}

fn row_y(row: usize) -> f64 {
    Y0 + row as f64 * ROW_H
}

/// Renders the circuit as a standalone SVG document. With an input basis
/// state, wires are styled by amplitude and phase.
pub fn render_svg(circuit: &AdditiveCircuit, input: Option<BasisIndex>) -> String {
    let n = circuit.dim();
    let trace = input.map(|b| {
        trace_state_basis(circuit, b).expect("basis index validated against circuit dim")
    });
    let mut canvas = Canvas { elements: Vec::new(), trace };

    // order[row] = dimension drawn on that row.
    let mut order: Vec<usize> = (0..n).collect();
    let pos = |order: &[usize], dim: usize| {
        order.iter().position(|&d| d == dim).expect("every dim has a row")
    };

    for (row, &dim) in order.iter().enumerate() {
        canvas.text(X0 - 18.0, row_y(row) + 4.0, 12, &dim.to_string());
    }

    let mut x = X0;
    for (t, gate) in circuit.gates().iter().enumerate() {
        // Lead-in segment showing the state before this gate.
        for (row, &dim) in order.iter().enumerate() {
            canvas.wire(dim, t, x, row_y(row), x + GAP_W, row_y(row));
        }
        x += GAP_W;

        match *gate {
            AdditiveGate::RzPlus { k, theta } => {
                for (row, &dim) in order.iter().enumerate() {
                    canvas.wire(dim, t + 1, x, row_y(row), x + COL_W, row_y(row));
                }
                let (cx, cy) = (x + COL_W / 2.0, row_y(pos(&order, k)));
                canvas
                    .elements
                    .push(format!(r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="8" fill="white" stroke="black" stroke-width="1.5"/>"#));
                canvas.text(cx, cy - 13.0, 10, &fmt_theta(theta));
            }
            AdditiveGate::RyPlus { i, j, theta } => {
                if pos(&order, j) != pos(&order, i) + 1 {
                    // Crossing column: pull j's wire next to i's.
                    let before = order.clone();
                    let rj = pos(&order, j);
                    order.remove(rj);
                    let ri = pos(&order, i);
                    order.insert(ri + 1, j);
                    for (row, &dim) in before.iter().enumerate() {
                        let new_row = pos(&order, dim);
                        canvas.wire(dim, t, x, row_y(row), x + COL_W, row_y(new_row));
                    }
                    x += COL_W;
                }
                let top = pos(&order, i);
                for (row, &dim) in order.iter().enumerate() {
                    if row != top && row != top + 1 {
                        canvas.wire(dim, t + 1, x, row_y(row), x + COL_W, row_y(row));
                    }
                }
                let (bx, by) = (x + 4.0, row_y(top) - 11.0);
                let (bw, bh) = (COL_W - 8.0, ROW_H + 22.0);
                canvas.elements.push(format!(
                    r#"<rect x="{bx:.1}" y="{by:.1}" width="{bw:.1}" height="{bh:.1}" fill="white" stroke="black" stroke-width="1.5"/>"#
                ));
                canvas.text(x + COL_W / 2.0, row_y(top) + ROW_H / 2.0 + 4.0, 10, &fmt_theta(theta));
            }
            AdditiveGate::XPlus { i, j } => {
                let (ri, rj) = (pos(&order, i), pos(&order, j));
                for (row, &dim) in order.iter().enumerate() {
                    if row != ri && row != rj {
                        canvas.wire(dim, t + 1, x, row_y(row), x + COL_W, row_y(row));
                    }
                }
                // Amplitudes travel along the crossing lines.
                canvas.wire(i, t, x, row_y(ri), x + COL_W, row_y(rj));
                canvas.wire(j, t, x, row_y(rj), x + COL_W, row_y(ri));
            }
        }
        x += COL_W;
    }

    let last_seg = circuit.gates().len();
    for (row, &dim) in order.iter().enumerate() {
        canvas.wire(dim, last_seg, x, row_y(row), x + GAP_W, row_y(row));
    }
    x += GAP_W;
    for (row, &dim) in order.iter().enumerate() {
        canvas.text(x + 12.0, row_y(row) + 4.0, 12, &dim.to_string());
    }

    let width = x + 26.0;
    let height = Y0 + n as f64 * ROW_H;
    let mut svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    svg.push('\n');
    svg.push_str(r#"<rect width="100%" height="100%" fill="white"/>"#);
    svg.push('\n');
    for element in &canvas.elements {
        svg.push_str(element);
        svg.push('\n');
    }
    svg.push_str("</svg>\n");
    svg
}
