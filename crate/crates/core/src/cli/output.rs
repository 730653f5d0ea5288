use std::fmt::Write as _;
use std::path::Path;

use crate::error::Result;
use crate::solver::FieldGrid;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// In-memory CSV table with `#` metadata lines ahead of the header.
#[derive(Debug, Default)]
pub struct Table {
    meta: Vec<(String, String)>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// Binary P5 graymap of `|u|`, top row at the largest `y`. Masked cells are
/// black; values map linearly from 0 to `clip` (or the field maximum) onto
/// 1..=255.
pub fn render_pgm(field: &FieldGrid, clip: Option<f64>) -> Vec<u8> {
    let (nx, ny) = (field.spec.nx, field.spec.ny);
    let top = clip.unwrap_or_else(|| field.max_abs()).max(f64::MIN_POSITIVE);
    let mut out = format!("P5\n{nx} {ny}\n255\n").into_bytes();
    for j in (0..ny).rev() {
        for i in 0..nx {
            out.push(match field.get(i, j) {
                None => 0,
                Some(u) => 1 + ((u.norm().min(top) / top) * 254.0).round() as u8,
            });
        }
    }
    out
}
