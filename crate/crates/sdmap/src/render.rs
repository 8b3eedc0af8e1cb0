//! Binary PPM (P6) rendering of label grids.

use std::collections::BTreeMap;

use sdmap_core::basin::{BasinGrid, Label};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("palette has no color for label {0}")]
    PaletteMissingLabel(i64),
    #[error("label grid has {found} cells, expected {rows}x{cols}")]
    Shape {
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("bad palette entry '{0}'")]
    BadPalette(String),
}

pub const DIVERGENT_COLOR: [u8; 3] = [0, 0, 0];
pub const UNDECIDED_COLOR: [u8; 3] = [128, 128, 128];

const ATTRACTOR_COLORS: [[u8; 3]; 10] = [
    [230, 25, 75],
    [60, 180, 75],
    [0, 130, 200],
    [255, 225, 25],
    [245, 130, 48],
    [145, 30, 180],
    [70, 240, 240],
    [240, 50, 230],
    [210, 245, 60],
    [250, 190, 190],
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Palette {
    colors: BTreeMap<Label, [u8; 3]>,
}

impl Palette {
    pub fn new() -> Self {
        Palette::default()
    }

    pub fn with(mut self, label: Label, rgb: [u8; 3]) -> Self {
        self.colors.insert(label, rgb);
        self
    }

    pub fn get(&self, label: Label) -> Option<[u8; 3]> {
        self.colors.get(&label).copied()
    }

    /// A color for every label in `labels`: a fixed table for attractor ids
    /// (cycled), black for divergent, gray for undecided.
    pub fn covering(labels: &[Label]) -> Self {
        let mut p = Palette::new()
            .with(Label::Divergent, DIVERGENT_COLOR)
            .with(Label::Undecided, UNDECIDED_COLOR);
        for l in labels {
            if let Label::Attractor(id) = l {
                p.colors
                    .entry(*l)
                    .or_insert(ATTRACTOR_COLORS[id % ATTRACTOR_COLORS.len()]);
            }
        }
        p
    }

    /// Parses `label=rrggbb` entries separated by commas, where `label` is an
    /// attractor id, `divergent` or `undecided`.
    pub fn parse(spec: &str) -> Result<Self, RenderError> {
        let mut p = Palette::new();
        for entry in spec.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let bad = || RenderError::BadPalette(entry.to_string());
            let (name, hex) = entry.split_once('=').ok_or_else(bad)?;
            let label = match name.trim() {
                "divergent" => Label::Divergent,
                "undecided" => Label::Undecided,
                id => Label::Attractor(id.parse().map_err(|_| bad())?),
            };
            let hex = hex.trim().trim_start_matches('#');
            if hex.len() != 6 {
                return Err(bad());
            }
            let byte = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| bad());
            p.colors.insert(label, [byte(0)?, byte(2)?, byte(4)?]);
        }
        Ok(p)
    }
}

/// P6 image with one pixel per label, rows top to bottom.
pub fn render_labels(
    rows: usize,
    cols: usize,
    labels: &[Label],
    palette: &Palette,
) -> Result<Vec<u8>, RenderError> {
    if labels.len() != rows * cols {
        return Err(RenderError::Shape {
            rows,
            cols,
            found: labels.len(),
        });
    }
    let header = format!("P6\n{cols} {rows}\n255\n");
    let mut out = Vec::with_capacity(header.len() + 3 * labels.len());
    out.extend_from_slice(header.as_bytes());
    for l in labels {
        let rgb = palette
            .get(*l)
            .ok_or(RenderError::PaletteMissingLabel(l.code()))?;
        out.extend_from_slice(&rgb);
    }
    Ok(out)
}

pub fn render_grid(grid: &BasinGrid, palette: &Palette) -> Result<Vec<u8>, RenderError> {
    render_labels(grid.spec.rows(), grid.spec.cols(), &grid.labels, palette)
}
