use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Principal components of a set of row vectors.
#[derive(Clone, Debug)]
pub struct Pca {
    pub mean: Vec<f64>,
    /// Unit loadings, one per component, by decreasing variance. Each is
    /// signed so that its largest-magnitude entry is positive.
    pub components: Vec<Vec<f64>>,
    /// Variance along each component (sample covariance eigenvalues).
    pub variances: Vec<f64>,
    /// Row-wise scores on each component.
    pub scores: Vec<Vec<f64>>,
}

impl Pca {
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::Degenerate("PCA needs at least two rows".into()));
        }
        let d = rows[0].len();
        if d == 0 {
            return Err(Error::Degenerate("PCA rows are empty".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != d) {
            return Err(Error::LengthMismatch(d, r.len()));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("PCA input"));
        }
        let mut mean = vec![0.0; d];
        for r in rows {
            for (m, x) in mean.iter_mut().zip(r) {
                *m += x / n as f64;
            }
        }
        let centered = DMatrix::from_fn(n, d, |i, j| rows[i][j] - mean[j]);
        let cov = centered.transpose() * &centered / (n as f64 - 1.0);
        if cov.iter().all(|&c| c.abs() < 1e-300) {
            return Err(Error::Degenerate("all rows are identical".into()));
        }
        let eig = SymmetricEigen::new(cov);
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let mut components = Vec::with_capacity(d);
        let mut variances = Vec::with_capacity(d);
        for &k in &order {
            let mut v: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
            let lead = v.iter().copied().fold(0.0f64, |a, x| if x.abs() > a.abs() { x } else { a });
            if lead < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            components.push(v);
            variances.push(eig.eigenvalues[k].max(0.0));
        }
        let scores = rows
            .iter()
            .map(|r| {
                components
                    .iter()
                    .map(|c| c.iter().zip(r).zip(&mean).map(|((w, x), m)| w * (x - m)).sum())
                    .collect()
            })
            .collect();
        Ok(Pca {
            mean,
            components,
            variances,
            scores,
        })
    }

    /// Share of total variance carried by each component.
    pub fn explained_ratio(&self) -> Vec<f64> {
        let total: f64 = self.variances.iter().sum();
        self.variances.iter().map(|v| v / total).collect()
    }

    /// Rebuild a row from its scores on the first `k` components.
    pub fn reconstruct(&self, scores: &[f64], k: usize) -> Vec<f64> {
        let mut out = self.mean.clone();
        for (c, s) in self.components.iter().zip(scores).take(k) {
            for (o, w) in out.iter_mut().zip(c) {
                *o += s * w;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_a_line() {
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, -2.0 * i as f64]).collect();
        let p = Pca::fit(&rows).unwrap();
        let c = &p.components[0];
        let norm = 5f64.sqrt();
        assert!((c[0] + 1.0 / norm).abs() < 1e-12 || (c[0] - 1.0 / norm).abs() < 1e-12);
        assert!(c[1] > 0.0);
        assert!((p.explained_ratio()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_reconstruction() {
        let rows: Vec<Vec<f64>> = (0..12)
            .map(|i| {
                let t = i as f64;
                vec![t.sin(), (2.0 * t).cos(), t * 0.1, (t * t) % 3.0]
            })
            .collect();
        let p = Pca::fit(&rows).unwrap();
        for (r, s) in rows.iter().zip(&p.scores) {
            let back = p.reconstruct(s, 4);
            for (a, b) in r.iter().zip(&back) {
                assert!((a - b).abs() < 1e-8);
            }
        }
        assert!(p.variances.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(Pca::fit(&[vec![1.0, 2.0]]).is_err());
        assert!(matches!(
            Pca::fit(&[vec![1.0, 2.0], vec![1.0, 2.0]]),
            Err(Error::Degenerate(_))
        ));
        assert!(Pca::fit(&[vec![1.0], vec![1.0, 2.0]]).is_err());
    }
}
