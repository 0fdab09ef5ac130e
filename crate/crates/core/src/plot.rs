// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Static SVG figures: fitness curves and matrix heatmaps.

use std::fmt::Write as _;

use crate::graph::AdjacencyMatrix;
use crate::io::format_sig;
use crate::optimizer::TraceRecord;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 420.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;
/// Candidate fitnesses are binned into at most this many columns.
const MAX_BINS: usize = 1000;

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Candidate fitness (gray range per iteration bin) and best fitness (step
/// line) against iteration.
pub fn fitness_curve_svg(records: &[TraceRecord], title: &str) -> String {
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="18" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    )
    .unwrap();

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let last_iter = records.iter().map(|r| r.iter).max().unwrap_or(0);
    let (mut lo, mut hi) = records.iter().fold((f64::MAX, f64::MIN), |(lo, hi), r| {
        (
            lo.min(r.candidate_fitness).min(r.best_fitness),
            hi.max(r.candidate_fitness).max(r.best_fitness),
        )
    });
    if records.is_empty() {
        (lo, hi) = (0.0, 1.0);
    }
    if hi - lo < 1e-9 {
        lo -= 0.01;
        hi += 0.01;
    }
    let pad = 0.05 * (hi - lo);
    let (lo, hi) = (lo - pad, hi + pad);
    let x_of = |iter: f64| MARGIN_LEFT + plot_w * iter / (last_iter.max(1) as f64);
    let y_of = |f: f64| MARGIN_TOP + plot_h * (hi - f) / (hi - lo);

    // Axes and ticks.
    let x0 = MARGIN_LEFT;
    let y0 = MARGIN_TOP + plot_h;
    writeln!(
        svg,
        r#"<path d="M{x0},{MARGIN_TOP} V{y0} H{}" fill="none" stroke="black"/>"#,
        x0 + plot_w
    )
    .unwrap();
    for i in 0..=4 {
        let f = lo + (hi - lo) * i as f64 / 4.0;
        let y = y_of(f);
        writeln!(
            svg,
            r#"<line x1="{}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 4.0,
            x0 - 6.0,
            y + 4.0,
            format_sig(f, 4)
        )
        .unwrap();
        let it = last_iter.max(1) as f64 * i as f64 / 4.0;
        let x = x_of(it);
        writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{}" stroke="black"/><text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#,
            y0 + 4.0,
            y0 + 18.0,
            it.round() as u64
        )
        .unwrap();
    }
    writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">iteration</text>"#,
        x0 + plot_w / 2.0,
        HEIGHT - 10.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">fitness</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    )
    .unwrap();

    if !records.is_empty() {
        let bins = (last_iter + 1).min(MAX_BINS);
        let mut ranges = vec![(f64::MAX, f64::MIN); bins];
        for r in records {
            let bin = r.iter * bins / (last_iter + 1);
            let slot = &mut ranges[bin];
            *slot = (
                slot.0.min(r.candidate_fitness),
                slot.1.max(r.candidate_fitness),
            );
        }
        let mut path = String::new();
        for (bin, &(a, b)) in ranges.iter().enumerate() {
            if a > b {
                continue;
            }
            let x = x_of((bin as f64 + 0.5) * (last_iter + 1) as f64 / bins as f64);
            write!(path, "M{x:.2},{:.2}V{:.2}", y_of(a) + 0.5, y_of(b) - 0.5).unwrap();
        }
        writeln!(
            svg,
            r##"<path d="{path}" stroke="#9a9a9a" stroke-width="1" fill="none"/>"##
        )
        .unwrap();

        let mut best = format!("M{:.2},{:.2}", x_of(0.0), y_of(records[0].best_fitness));
        let mut prev = records[0].best_fitness;
        for r in records {
            if r.best_fitness == prev {
                continue;
            }
            write!(
                best,
                "H{:.2}V{:.2}",
                x_of(r.iter as f64),
                y_of(r.best_fitness)
            )
            .unwrap();
            prev = r.best_fitness;
        }
        write!(best, "H{:.2}", x_of(last_iter as f64)).unwrap();
        writeln!(
            svg,
            r##"<path d="{best}" stroke="#1f4e9c" stroke-width="2" fill="none"/>"##
        )
        .unwrap();
        writeln!(
            svg,
            r##"<text x="{}" y="{}" text-anchor="end" fill="#1f4e9c">best</text><text x="{}" y="{}" text-anchor="end" fill="#9a9a9a">candidate</text>"##,
            WIDTH - MARGIN_RIGHT,
            MARGIN_TOP + 12.0,
            WIDTH - MARGIN_RIGHT,
            MARGIN_TOP + 26.0
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

/// Grayscale heatmap, row 0 at the top: zero is white, the largest entry black.
pub fn heatmap_svg(matrix: &AdjacencyMatrix, title: &str) -> String {
    let n = matrix.size();
    let cell = (512 / n).max(2) as f64;
    let side = cell * n as f64;
    let top = 30.0;
    let (w, h) = (side + 20.0, side + top + 10.0);
    let max = matrix.entries().iter().cloned().fold(0.0, f64::max);
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="14" shape-rendering="crispEdges">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="20" text-anchor="middle">{}</text>"#,
        w / 2.0,
        escape(title)
    )
    .unwrap();
    for r in 0..n {
        for c in 0..n {
            let v = matrix.get(r, c);
            if v == 0.0 || max == 0.0 {
                continue;
            }
            let level = (255.0 * (1.0 - v / max)).round() as u8;
            writeln!(
                svg,
                r#"<rect x="{}" y="{}" width="{cell}" height="{cell}" fill="rgb({level},{level},{level})"/>"#,
                10.0 + c as f64 * cell,
                top + r as f64 * cell
            )
            .unwrap();
        }
    }
    writeln!(
        svg,
        r#"<rect x="10" y="{top}" width="{side}" height="{side}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    svg.push_str("</svg>\n");
    svg
}
