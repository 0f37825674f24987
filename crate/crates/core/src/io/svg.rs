//! Line chart of the population's mean virtues and the scaled death rate.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::experiment::TelemetryRow;
use crate::scalar::Scalar;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 50.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 40.0;

/// (legend label, stroke colour) per series, in drawing order.
pub const SERIES: [(&str, &str); 4] = [
    ("mean_courage", "#1f77b4"),
    ("mean_generosity", "#2ca02c"),
    ("mean_honesty", "#9467bd"),
    ("death_rate_plot", "#d62728"),
];

fn series_value<T: Scalar>(row: &TelemetryRow<T>, index: usize) -> f64 {
    match index {
        0 => row.mean_courage,
        1 => row.mean_generosity,
        2 => row.mean_honesty,
        _ => row.death_rate_plot,
    }
    .as_f64()
}

/// Screen coordinates of `(iteration, value)`. Values are clipped to the
/// fixed `[-1, 1]` axis.
pub fn project(iteration: f64, value: f64, first: f64, last: f64) -> (f64, f64) {
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x = LEFT + (iteration - first) / (last - first) * plot_w;
    let y = TOP + (1.0 - value.clamp(-1.0, 1.0)) / 2.0 * plot_h;
    (x, y)
}

pub fn render_svg<T: Scalar>(rows: &[TelemetryRow<T>]) -> Result<String> {
    if rows.len() < 2 {
        return Err(Error::InvalidInput("a chart needs at least two telemetry rows".into()));
    }
    let first = rows[0].iteration as f64;
    let last = rows[rows.len() - 1].iteration as f64;
    if last <= first {
        return Err(Error::InvalidInput("telemetry iterations must increase".into()));
    }

    let mut s = String::new();
    let w = |s: &mut String, args: std::fmt::Arguments<'_>| s.write_fmt(args).expect("writing to a String cannot fail");
    w(&mut s, format_args!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    w(&mut s, format_args!("<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"));

    // Axes and gridlines at -1, -0.5, 0, 0.5, 1.
    let x_end = WIDTH - RIGHT;
    for tick in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let (_, y) = project(first, tick, first, last);
        let stroke = if tick == 0.0 { "#888888" } else { "#dddddd" };
        w(
            &mut s,
            format_args!(
                "<line x1=\"{LEFT:.2}\" y1=\"{y:.2}\" x2=\"{x_end:.2}\" y2=\"{y:.2}\" stroke=\"{stroke}\"/>\n"
            ),
        );
        w(
            &mut s,
            format_args!("<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{tick:.1}</text>\n", LEFT - 6.0, y + 4.0),
        );
    }
    let (_, y_bottom) = project(first, -1.0, first, last);
    w(&mut s, format_args!(
        "<text x=\"{LEFT:.2}\" y=\"{:.2}\">{first}</text>\n<text x=\"{x_end:.2}\" y=\"{:.2}\" text-anchor=\"end\">{last}</text>\n",
        y_bottom + 18.0,
        y_bottom + 18.0
    ));
    w(
        &mut s,
        format_args!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">iteration</text>\n",
            (LEFT + x_end) / 2.0,
            y_bottom + 30.0
        ),
    );

    for (index, (label, colour)) in SERIES.iter().enumerate() {
        w(
            &mut s,
            format_args!("<polyline id=\"{label}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.5\" points=\""),
        );
        for (k, row) in rows.iter().enumerate() {
            let (x, y) = project(row.iteration as f64, series_value(row, index), first, last);
            if k > 0 {
                s.push(' ');
            }
            w(&mut s, format_args!("{x:.2},{y:.2}"));
        }
        s.push_str("\"/>\n");

        let ly = TOP + 10.0 + 20.0 * index as f64;
        let lx = x_end + 15.0;
        w(&mut s, format_args!(
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{colour}\" stroke-width=\"3\"/>\n",
            lx + 20.0
        ));
        w(&mut s, format_args!("<text x=\"{:.2}\" y=\"{:.2}\">{label}</text>\n", lx + 26.0, ly + 4.0));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn write_svg<T: Scalar>(path: &Path, rows: &[TelemetryRow<T>]) -> Result<()> {
    let text = render_svg(rows)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
