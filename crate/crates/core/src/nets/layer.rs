use rand::Rng;

/// Fully connected weights, row-major, with the bias as the last column.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub(crate) rows: usize,
    pub(crate) cols: usize,
    pub(crate) weights: Vec<f64>,
}

impl Dense {
    /// `outputs x (inputs + 1)` weights, uniform in `[-range, range)`.
    pub fn random<R: Rng + ?Sized>(outputs: usize, inputs: usize, range: f64, rng: &mut R) -> Self {
        let cols = inputs + 1;
        let weights = (0..outputs * cols)
            .map(|_| rng.random_range(-range..range))
            .collect();
        Dense {
            rows: outputs,
            cols,
            weights,
        }
    }

    pub fn zeros(outputs: usize, inputs: usize) -> Self {
        Dense {
            rows: outputs,
            cols: inputs + 1,
            weights: vec![0.0; outputs * (inputs + 1)],
        }
    }

    pub fn from_weights(rows: usize, cols: usize, weights: Vec<f64>) -> Option<Self> {
        (weights.len() == rows * cols && cols >= 1).then_some(Dense { rows, cols, weights })
    }

    pub fn outputs(&self) -> usize {
        self.rows
    }

    pub fn inputs(&self) -> usize {
        self.cols - 1
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weights_mut(&mut self) -> &mut [f64] {
        &mut self.weights
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.weights[r * self.cols..(r + 1) * self.cols]
    }

    /// Net input `W [x, 1]`.
    pub fn forward(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.inputs());
        for (r, o) in out.iter_mut().enumerate().take(self.rows) {
            let row = self.row(r);
            let (w, bias) = row.split_at(self.cols - 1);
            *o = w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + bias[0];
        }
    }

    /// `W^T delta` restricted to the non-bias inputs.
    pub fn backward(&self, delta: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for (r, d) in delta.iter().enumerate() {
            let row = &self.row(r)[..self.cols - 1];
            for (o, w) in out.iter_mut().zip(row) {
                *o += w * d;
            }
        }
    }

    /// `W += rate * delta [x, 1]^T`.
    pub fn update(&mut self, rate: f64, delta: &[f64], x: &[f64]) {
        let cols = self.cols;
        for (r, d) in delta.iter().enumerate() {
            let step = rate * d;
            let row = &mut self.weights[r * cols..(r + 1) * cols];
            for (w, xi) in row.iter_mut().zip(x) {
                *w += step * xi;
            }
            row[cols - 1] += step;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.weights.iter().all(|w| w.is_finite())
    }
}
