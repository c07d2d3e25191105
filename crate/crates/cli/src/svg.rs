//! Minimal static SVG charts: bars over `[0, 1)`, line plots, heat maps.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

fn header(title: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    s
}

fn axes(s: &mut String, x_range: (f64, f64), y_range: (f64, f64)) {
    let (x0, y0, x1, y1) = (MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN, MARGIN);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#);
    let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#);
    let label = |v: f64| crate::csvfmt::real((v * 1e4).round() / 1e4);
    let _ = writeln!(
        s,
        r#"<text x="{x0}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
        y0 + 16.0,
        label(x_range.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{x1}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
        y0 + 16.0,
        label(x_range.1)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{y0}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
        x0 - 4.0,
        label(y_range.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
        x0 - 4.0,
        y1 + 4.0,
        label(y_range.1)
    );
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn span(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, lo + 0.5)
    }
}

/// Uniform bars over `[0, 1)`.
pub fn bar_chart(title: &str, heights: &[f64]) -> String {
    let mut s = header(title);
    let top = heights.iter().cloned().fold(0.0, f64::max);
    let top = if top > 0.0 { top } else { 1.0 };
    axes(&mut s, (0.0, 1.0), (0.0, top));
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let bw = plot_w / heights.len().max(1) as f64;
    for (k, &h) in heights.iter().enumerate() {
        let bh = h / top * plot_h;
        let _ = writeln!(
            s,
            r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#4477aa"/>"##,
            MARGIN + k as f64 * bw,
            HEIGHT - MARGIN - bh,
            bw,
            bh
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Polyline through `points`, with optional labelled vertical markers.
pub fn line_chart(title: &str, points: &[(f64, f64)], markers: &[(f64, String)]) -> String {
    let mut s = header(title);
    let (xmin, xmax) = span(
        points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min),
        points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max),
    );
    let (ymin, ymax) = span(
        points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min),
        points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max),
    );
    axes(&mut s, (xmin, xmax), (ymin, ymax));
    let sx = |x: f64| MARGIN + (x - xmin) / (xmax - xmin) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - ymin) / (ymax - ymin) * (HEIGHT - 2.0 * MARGIN);
    for (x, label) in markers {
        let _ = writeln!(
            s,
            r##"<line x1="{0:.2}" y1="{1}" x2="{0:.2}" y2="{2}" stroke="#cc6677" stroke-dasharray="4 3"/>"##,
            sx(*x),
            HEIGHT - MARGIN,
            MARGIN
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.2}" y="{}" font-family="sans-serif" font-size="10" fill="#cc6677" text-anchor="middle">{}</text>"##,
            sx(*x),
            MARGIN - 4.0,
            escape(label)
        );
    }
    let path: Vec<String> = points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
    let _ = writeln!(s, r##"<polyline fill="none" stroke="#4477aa" stroke-width="1" points="{}"/>"##, path.join(" "));
    s.push_str("</svg>\n");
    s
}

/// Square heat map of `counts[x * bins + y]`, x to the right and y upward.
pub fn heat_map(title: &str, bins: usize, counts: &[u64]) -> String {
    let mut s = header(title);
    axes(&mut s, (0.0, 1.0), (0.0, 1.0));
    let top = counts.iter().copied().max().unwrap_or(0).max(1) as f64;
    let cw = (WIDTH - 2.0 * MARGIN) / bins as f64;
    let ch = (HEIGHT - 2.0 * MARGIN) / bins as f64;
    for x in 0..bins {
        for y in 0..bins {
            let c = counts[x * bins + y];
            if c == 0 {
                continue;
            }
            let shade = 255 - (c as f64 / top * 255.0).round() as u8;
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb({shade},{shade},255)"/>"#,
                MARGIN + x as f64 * cw,
                HEIGHT - MARGIN - (y + 1) as f64 * ch,
                cw,
                ch
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documents_are_closed() {
        for doc in [
            bar_chart("h", &[1.0, 2.0]),
            line_chart("l <x>", &[(0.0, 1.0), (1.0, 0.0)], &[(0.5, "m".into())]),
            heat_map("m", 2, &[0, 1, 2, 3]),
        ] {
            assert!(doc.starts_with("<svg"));
            assert!(doc.ends_with("</svg>\n"));
        }
        assert!(line_chart("l <x>", &[], &[]).contains("l &lt;x&gt;"));
    }

    #[test]
    fn bar_count() {
        let doc = bar_chart("h", &[1.0, 0.0, 3.0]);
        assert_eq!(doc.matches("fill=\"#4477aa\"").count(), 3);
    }
}
