use std::fmt::Write as _;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

#[derive(Clone, Debug)]
pub struct ScatterPoint {
    pub x: f64,
    pub y: f64,
    pub label: String,
    pub group: String,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// A labelled scatter plot with one marker per point, colored by group.
pub fn scatter_svg(title: &str, x_label: &str, y_label: &str, points: &[ScatterPoint]) -> String {
    let (w, h, m) = (720.0, 560.0, 60.0);
    let legend_w = 110.0;
    let plot_w = w - 2.0 * m - legend_w;
    let plot_h = h - 2.0 * m;
    let span = |v: Vec<f64>| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !lo.is_finite() || hi - lo < 1e-12 {
            (lo.min(0.0) - 1.0, hi.max(0.0) + 1.0)
        } else {
            let pad = 0.05 * (hi - lo);
            (lo - pad, hi + pad)
        }
    };
    let (x0, x1) = span(points.iter().map(|p| p.x).collect());
    let (y0, y1) = span(points.iter().map(|p| p.y).collect());
    let sx = |x: f64| m + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| m + plot_h - (y - y0) / (y1 - y0) * plot_h;

    let mut groups: Vec<&str> = points.iter().map(|p| p.group.as_str()).collect();
    groups.sort();
    groups.dedup();
    let color = |g: &str| PALETTE[groups.iter().position(|x| *x == g).unwrap_or(0) % PALETTE.len()];

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="30" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        m + plot_w / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{m}" y="{m}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    if x0 < 0.0 && x1 > 0.0 {
        let _ = writeln!(
            s,
            r##"<line x1="{0:.2}" y1="{m}" x2="{0:.2}" y2="{1}" stroke="#cccccc"/>"##,
            sx(0.0),
            m + plot_h
        );
    }
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            r##"<line x1="{m}" y1="{0:.2}" x2="{1}" y2="{0:.2}" stroke="#cccccc"/>"##,
            sy(0.0),
            m + plot_w
        );
    }
    for (v, x) in [(x0, m), (x1, m + plot_w)] {
        let _ = writeln!(
            s,
            r#"<text x="{x:.2}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="10">{v:.2}</text>"#,
            m + plot_h + 14.0
        );
    }
    for (v, y) in [(y0, m + plot_h), (y1, m)] {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{y:.2}" text-anchor="end" font-family="sans-serif" font-size="10">{v:.2}</text>"#,
            m - 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">{}</text>"#,
        m + plot_w / 2.0,
        h - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{0}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 15 {0})">{1}</text>"#,
        m + plot_h / 2.0,
        escape(y_label)
    );
    let _ = writeln!(s, r#"<g class="markers">"#);
    for p in points {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{}" fill-opacity="0.8"><title>{}</title></circle>"#,
            sx(p.x),
            sy(p.y),
            color(&p.group),
            escape(&format!("{} ({})", p.label, p.group))
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="9">{}</text>"#,
            sx(p.x) + 5.0,
            sy(p.y) - 3.0,
            escape(&p.label)
        );
    }
    let _ = writeln!(s, "</g>");
    let lx = m + plot_w + 20.0;
    let _ = writeln!(s, r#"<g class="legend">"#);
    for (i, g) in groups.iter().enumerate() {
        let y = m + 10.0 + 18.0 * i as f64;
        let _ = writeln!(s, r#"<circle cx="{lx}" cy="{y}" r="5" fill="{}"/>"#, color(g));
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="12">{}</text>"#,
            lx + 10.0,
            y + 4.0,
            escape(g)
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_marker_per_point() {
        let pts: Vec<ScatterPoint> = (0..5)
            .map(|i| ScatterPoint {
                x: i as f64,
                y: -(i as f64),
                label: format!("w{i}"),
                group: if i % 2 == 0 { "R=".into() } else { "F<".into() },
            })
            .collect();
        let svg = scatter_svg("t", "x", "y", &pts);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<title>").count(), 5);
        assert!(svg.contains("F&lt;"));
    }
}
