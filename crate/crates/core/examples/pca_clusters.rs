//! Project hidden representations of the corpus 2-words onto two principal
//! components and write a scatter plot.
//!
//! `cargo run --release --example pca_clusters -- [out.svg]`

use tracx2::corpus::builtin;
use tracx2::encoding::Encoding;
use tracx2::experiments::{scatter_svg, study1_clusters, ScatterPoint};
use tracx2::nets::{Hyperparams, ModelKind};

fn main() -> tracx2::Result<()> {
    let r = study1_clusters(&builtin::set1(), ModelKind::Tracx2, Encoding::Ordinal, Hyperparams::default(), 30, 1)?;
    println!(
        "explained {:.1}% + {:.1}%, contour silhouette {:.3}, within {:.3} vs between {:.3}",
        100.0 * r.explained[0],
        100.0 * r.explained[1],
        r.silhouette,
        r.within_mean,
        r.between_mean
    );
    for (contour, ladder, r2) in &r.ladders {
        let ws: Vec<String> = ladder.iter().map(|w| w.labels()).collect();
        println!("  {contour}: {} (ordering R² {r2:.3})", ws.join(" "));
    }
    let points: Vec<ScatterPoint> = r
        .points
        .iter()
        .map(|p| ScatterPoint {
            x: p.pc1,
            y: p.pc2,
            label: p.word.labels(),
            group: p.contour.clone(),
        })
        .collect();
    let out = std::env::args().nth(1).unwrap_or_else(|| "pca_tracx2.svg".into());
    std::fs::write(&out, scatter_svg("TRACX2 2-word representations", "PC1", "PC2", &points))?;
    println!("wrote {out}");
    Ok(())
}
