//! CSV and SVG renderings of Lorenz curves.

use majorlab::rational::{format_rational, to_decimal_string, to_f64};
use majorlab::relmaj::LorenzCurve;
use majorlab::Rational;

/// Side of the square viewport in pixels.
pub const VIEWPORT: i64 = 512;

pub fn csv(curve: &LorenzCurve) -> String {
    let mut out = String::from("a_exact,b_exact,a_float,b_float\n");
    for (a, b) in curve.vertices() {
        out += &format!(
            "{},{},{},{}\n",
            format_rational(a),
            format_rational(b),
            to_f64(a),
            to_f64(b)
        );
    }
    out
}

fn px(r: &Rational) -> String {
    to_decimal_string(&(r * Rational::from_integer(VIEWPORT.into())), 4)
}

/// Screen coordinates with the origin at the bottom left.
fn points<'a>(vs: impl Iterator<Item = (Rational, Rational)> + 'a) -> String {
    let h = Rational::from_integer(VIEWPORT.into());
    vs.map(|(a, b)| format!("{},{}", px(&a), to_decimal_string(&(&h - &b * &h), 4)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Unit square, the lower boundary, and the upper boundary obtained from it
/// by the rotation `(a, b) ↦ (1 - a, 1 - b)`.
pub fn svg(curve: &LorenzCurve) -> String {
    let one = Rational::from_integer(1.into());
    let lower = points(curve.vertices().iter().cloned());
    let upper = points(curve.vertices().iter().map(|(a, b)| (&one - a, &one - b)));
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{v}\" height=\"{v}\" viewBox=\"0 0 {v} {v}\">\n",
            "  <rect x=\"0\" y=\"0\" width=\"{v}\" height=\"{v}\" fill=\"none\" stroke=\"black\"/>\n",
            "  <line x1=\"0\" y1=\"{v}\" x2=\"{v}\" y2=\"0\" stroke=\"grey\" stroke-dasharray=\"4 4\"/>\n",
            "  <polyline class=\"lower\" points=\"{lower}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n",
            "  <polyline class=\"upper\" points=\"{upper}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n",
            "</svg>\n"
        ),
        v = VIEWPORT,
        lower = lower,
        upper = upper,
    )
}
