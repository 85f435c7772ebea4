//! Plain-text model snapshots. Numbers use the shortest decimal form that
//! reads back to the same `f64`, so a round trip is lossless.

use std::fmt::Write as _;
use std::path::Path;

use crate::encoding::Encoding;
use crate::error::{Error, Result};

use super::{Dense, Hyperparams, Mode, Model, ModelKind, SrnNet, Tracx2Net};

pub const SNAPSHOT_HEADER: &str = "tracx2-snapshot v1";

pub fn snapshot_to_string(model: &Model) -> String {
    let mut s = String::new();
    let h = model.hyper();
    let _ = writeln!(s, "{SNAPSHOT_HEADER}");
    let _ = writeln!(s, "kind {}", model.kind());
    let _ = writeln!(s, "encoding {}", model.encoding());
    let _ = writeln!(s, "learning_rate {}", h.learning_rate);
    let _ = writeln!(s, "fahlman_offset {}", h.fahlman_offset);
    let _ = writeln!(s, "temperature {}", h.temperature);
    let _ = writeln!(s, "weight_init {}", h.weight_init);
    let _ = writeln!(s, "epochs {}", h.epochs);
    let (a, b) = match model {
        Model::Autoencoder { net, .. } => net.layers(),
        Model::Srn(net) => net.layers(),
    };
    for (name, layer) in [("input_hidden", a), ("hidden_output", b)] {
        let _ = writeln!(s, "layer {name} {} {}", layer.rows, layer.cols);
        for r in 0..layer.rows {
            let row: Vec<String> = layer.row(r).iter().map(|w| w.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
    }
    s
}

struct Lines<'a> {
    iter: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Snapshot {
            line: self.line,
            message: message.into(),
        }
    }

    fn next(&mut self) -> Result<&'a str> {
        match self.iter.next() {
            Some((i, l)) => {
                self.line = i + 1;
                Ok(l.trim_end())
            }
            None => Err(self.err("unexpected end of snapshot")),
        }
    }

    fn field(&mut self, key: &str) -> Result<&'a str> {
        let l = self.next()?;
        match l.split_once(' ') {
            Some((k, v)) if k == key => Ok(v.trim()),
            _ => Err(self.err(format!("expected `{key} <value>`"))),
        }
    }

    fn number<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let v = self.field(key)?;
        v.parse().map_err(|_| self.err(format!("bad {key} value {v:?}")))
    }

    fn layer(&mut self, name: &str) -> Result<Dense> {
        let v = self.field("layer")?;
        let parts: Vec<&str> = v.split_whitespace().collect();
        let (rows, cols) = match parts.as_slice() {
            [n, r, c] if *n == name => (
                r.parse::<usize>().map_err(|_| self.err("bad row count"))?,
                c.parse::<usize>().map_err(|_| self.err("bad column count"))?,
            ),
            _ => return Err(self.err(format!("expected `layer {name} <rows> <cols>`"))),
        };
        let mut weights = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let row = self.next()?;
            let before = weights.len();
            for tok in row.split_whitespace() {
                let w: f64 = tok.parse().map_err(|_| self.err(format!("bad weight {tok:?}")))?;
                if !w.is_finite() {
                    return Err(self.err("non-finite weight"));
                }
                weights.push(w);
            }
            if weights.len() - before != cols {
                return Err(self.err(format!("expected {cols} weights")));
            }
        }
        Dense::from_weights(rows, cols, weights).ok_or_else(|| self.err("empty layer"))
    }
}

pub fn snapshot_from_str(text: &str) -> Result<Model> {
    let mut lines = Lines {
        iter: text.lines().enumerate(),
        line: 0,
    };
    if lines.next()? != SNAPSHOT_HEADER {
        return Err(lines.err(format!("expected header {SNAPSHOT_HEADER:?}")));
    }
    let kind: ModelKind = lines.field("kind")?.parse().map_err(|e: Error| lines.err(e.to_string()))?;
    let encoding: Encoding = lines
        .field("encoding")?
        .parse()
        .map_err(|e: Error| lines.err(e.to_string()))?;
    let hyper = Hyperparams {
        learning_rate: lines.number("learning_rate")?,
        fahlman_offset: lines.number("fahlman_offset")?,
        temperature: lines.number("temperature")?,
        weight_init: lines.number("weight_init")?,
        epochs: lines.number("epochs")?,
    };
    let a = lines.layer("input_hidden")?;
    let b = lines.layer("hidden_output")?;
    let shape = |e: Error| lines.err(e.to_string());
    let model = match kind {
        ModelKind::Tracx2 | ModelKind::Rae => Model::Autoencoder {
            net: Tracx2Net::from_layers(encoding, hyper, a, b).map_err(shape)?,
            mode: if kind == ModelKind::Rae { Mode::Rae } else { Mode::Tracx2 },
        },
        ModelKind::Srn => Model::Srn(SrnNet::from_layers(encoding, hyper, a, b).map_err(shape)?),
    };
    Ok(model)
}

pub fn write_snapshot(model: &Model, path: &Path) -> Result<()> {
    crate::experiments::write_atomic(path, snapshot_to_string(model).as_bytes()).map_err(|e| e.in_file(path))
}

pub fn read_snapshot(path: &Path) -> Result<Model> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
    snapshot_from_str(&text).map_err(|e| e.in_file(path))
}
