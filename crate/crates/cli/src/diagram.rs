//! Bruhat pictures: the permutation matrices of `x` and `w` on one grid,
//! with cells shaded by the difference function `d_{x,w}`.
//!
//! Row `p` is position `p`, counted downward; column `q` is value `q`,
//! counted rightward.

use std::fmt::Write;

use schubsing::bruhat::DiffTable;
use schubsing::Permutation;

const CELL: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mark {
    Empty,
    W,
    X,
    Both,
}

fn mark(x: &Permutation, w: &Permutation, p: usize, q: usize) -> Mark {
    match (w.get(p) == q, x.get(p) == q) {
        (true, true) => Mark::Both,
        (true, false) => Mark::W,
        (false, true) => Mark::X,
        (false, false) => Mark::Empty,
    }
}

/// Text picture: `∘` for `w`, `●` for `x`, `⊙` where both have a point;
/// other cells show `d_{x,w}(p, q)` as a digit, or `.` when it is zero.
pub fn ascii(table: &DiffTable, annotate: bool) -> String {
    let (x, w, n) = (table.x(), table.w(), table.n());
    let width = (n + 1).to_string().len();
    let mut out = String::new();
    for p in 1..=n {
        let cells: Vec<String> = (1..=n)
            .map(|q| {
                let s = match mark(x, w, p, q) {
                    Mark::Both => "⊙".to_string(),
                    Mark::W => "∘".to_string(),
                    Mark::X => "●".to_string(),
                    Mark::Empty => match table.get(p, q) {
                        0 => ".".to_string(),
                        d => d.to_string(),
                    },
                };
                format!("{s:>width$}")
            })
            .collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    if annotate {
        writeln!(out).unwrap();
        writeln!(out, "d(p,q), p = 1..{n} down, q = 1..{n} across:").unwrap();
        for p in 1..=n {
            let row: Vec<String> = (1..=n).map(|q| format!("{:>width$}", table.get(p, q))).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
    }
    out
}

/// SVG picture with a fixed 24-unit cell. Light grey marks `d >= 1`, dark
/// grey `d >= 2`.
pub fn svg(table: &DiffTable, annotate: bool) -> String {
    let (x, w, n) = (table.x(), table.w(), table.n());
    let size = n * CELL;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>"#
    )
    .unwrap();
    for p in 1..=n {
        for q in 1..=n {
            let fill = match table.get(p, q) {
                d if d >= 2 => "#8c8c8c",
                1 => "#d4d4d4",
                _ => continue,
            };
            let (cx, cy) = ((q - 1) * CELL, (p - 1) * CELL);
            writeln!(
                out,
                r#"<rect x="{cx}" y="{cy}" width="{CELL}" height="{CELL}" fill="{fill}"/>"#
            )
            .unwrap();
        }
    }
    for i in 0..=n {
        let c = i * CELL;
        writeln!(
            out,
            r##"<line x1="{c}" y1="0" x2="{c}" y2="{size}" stroke="#bbbbbb" stroke-width="0.5"/>"##
        )
        .unwrap();
        writeln!(
            out,
            r##"<line x1="0" y1="{c}" x2="{size}" y2="{c}" stroke="#bbbbbb" stroke-width="0.5"/>"##
        )
        .unwrap();
    }
    let half = CELL / 2;
    for p in 1..=n {
        for q in 1..=n {
            let (cx, cy) = ((q - 1) * CELL + half, (p - 1) * CELL + half);
            match mark(x, w, p, q) {
                Mark::W => {
                    writeln!(
                        out,
                        r#"<circle cx="{cx}" cy="{cy}" r="7" fill="white" stroke="black" stroke-width="1.5"/>"#
                    )
                    .unwrap();
                }
                Mark::X => {
                    writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="6" fill="black"/>"#).unwrap();
                }
                Mark::Both => {
                    writeln!(
                        out,
                        r#"<circle cx="{cx}" cy="{cy}" r="7" fill="white" stroke="black" stroke-width="1.5"/>"#
                    )
                    .unwrap();
                    writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>"#).unwrap();
                }
                Mark::Empty => {
                    if annotate {
                        writeln!(
                            out,
                            r#"<text x="{cx}" y="{}" font-size="10" text-anchor="middle" font-family="monospace">{}</text>"#,
                            cy + 4,
                            table.get(p, q)
                        )
                        .unwrap();
                    }
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
