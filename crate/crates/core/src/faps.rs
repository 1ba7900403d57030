//! Feature-aware pixel segmentation.
//!
//! Pixels are split into high-edge and low-edge classes using a Sobel edge map
//! and an Otsu threshold, then rewritten as the high-edge values sorted
//! descending followed by the low-edge values sorted ascending. The resulting
//! position -> source-index map is kept so the rearrangement can be undone.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Number of histogram bins used for thresholding the edge map.
pub const OTSU_BINS: usize = 256;

const SOBEL_X: [[f64; 3]; 3] = [[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]];
const SOBEL_Y: [[f64; 3]; 3] = [[1.0, 2.0, 1.0], [0.0, 0.0, 0.0], [-1.0, -2.0, -1.0]];

/// Horizontal and vertical Sobel responses, row-major, same size as the source.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientPair {
    pub width: usize,
    pub height: usize,
    pub gx: Vec<f64>,
    pub gy: Vec<f64>,
}

/// Edge magnitudes normalized into `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeMap {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl EdgeMap {
    /// Returns `None` if the buffer size is wrong or any value lies outside `[0, 1]`.
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Option<Self> {
        let sized = width > 0 && height > 0 && values.len() == width * height;
        let in_range = values.iter().all(|v| (0.0..=1.0).contains(v));
        (sized && in_range).then_some(Self {
            width,
            height,
            values,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    High,
    Low,
}

/// What decryption needs to undo the segmentation.
#[derive(Debug, Clone, PartialEq)]
pub struct FapsRecord {
    /// `index_map[p]` is the original linear index of the value placed at position `p`.
    pub index_map: Vec<u32>,
    pub threshold: f64,
}

/// Correlates the image with both Sobel kernels using replicate borders.
pub fn sobel_gradients(img: &GrayImage) -> GradientPair {
    let (w, h) = (img.width(), img.height());
    let px = img.pixels();
    let mut gx = vec![0.0; w * h];
    let mut gy = vec![0.0; w * h];
    for row in 0..h {
        let rows = [row.saturating_sub(1), row, (row + 1).min(h - 1)];
        for col in 0..w {
            let cols = [col.saturating_sub(1), col, (col + 1).min(w - 1)];
            let (mut sx, mut sy) = (0.0, 0.0);
            for (ki, &r) in rows.iter().enumerate() {
                let line = &px[r * w..(r + 1) * w];
                for (kj, &c) in cols.iter().enumerate() {
                    let v = f64::from(line[c]);
                    sx += SOBEL_X[ki][kj] * v;
                    sy += SOBEL_Y[ki][kj] * v;
                }
            }
            gx[row * w + col] = sx;
            gy[row * w + col] = sy;
        }
    }
    GradientPair {
        width: w,
        height: h,
        gx,
        gy,
    }
}

/// Gradient magnitude divided by its maximum (all zeros for a flat gradient).
pub fn edge_map(g: &GradientPair) -> EdgeMap {
    let magnitude: Vec<f64> =
        g.gx.iter()
            .zip(&g.gy)
            .map(|(&x, &y)| (x * x + y * y).sqrt())
            .collect();
    let max = magnitude.iter().copied().fold(0.0, f64::max);
    let values = if max > 0.0 {
        magnitude.into_iter().map(|m| m / max).collect()
    } else {
        magnitude
    };
    EdgeMap {
        width: g.width,
        height: g.height,
        values,
    }
}

/// Histogram bin of a normalized edge value.
#[inline]
pub fn edge_bin(value: f64) -> usize {
    ((value * OTSU_BINS as f64) as usize).min(OTSU_BINS - 1)
}

/// Otsu threshold over a 256-bin histogram of the edge map.
///
/// Returns the upper edge `(t + 1) / 256` of the bin `t` that maximizes the
/// between-class variance, preferring the smallest such bin. A map that
/// populates only one bin yields 0.
pub fn otsu_threshold(e: &EdgeMap) -> f64 {
    let mut hist = [0u64; OTSU_BINS];
    for &v in &e.values {
        hist[edge_bin(v)] += 1;
    }
    if hist.iter().filter(|&&c| c > 0).count() <= 1 {
        return 0.0;
    }

    let total = e.values.len() as f64;
    let sum_total: f64 = hist
        .iter()
        .enumerate()
        .map(|(i, &c)| i as f64 * c as f64)
        .sum();

    let (mut w_low, mut sum_low) = (0.0, 0.0);
    let mut best = (f64::NEG_INFINITY, 0usize);
    for (t, &count) in hist.iter().enumerate() {
        w_low += count as f64;
        sum_low += t as f64 * count as f64;
        let w_high = total - w_low;
        let between = if w_low == 0.0 || w_high == 0.0 {
            0.0
        } else {
            let diff = sum_low / w_low - (sum_total - sum_low) / w_high;
            w_low * w_high * diff * diff
        };
        if between > best.0 {
            best = (between, t);
        }
    }
    (best.1 + 1) as f64 / OTSU_BINS as f64
}

/// High-edge iff `e > t`.
pub fn classify_pixels(e: &EdgeMap, t: f64) -> Vec<EdgeClass> {
    e.values
        .iter()
        .map(|&v| {
            if v > t {
                EdgeClass::High
            } else {
                EdgeClass::Low
            }
        })
        .collect()
}

/// Groups pixels by class: high-edge values descending, then low-edge values
/// ascending, equal values in ascending index order. Returns the rearranged
/// image and its index map.
pub fn arrange(img: &GrayImage, classes: &[EdgeClass]) -> Result<(GrayImage, Vec<u32>)> {
    let px = img.pixels();
    if classes.len() != px.len() {
        return Err(Error::PixelCount {
            width: img.width(),
            height: img.height(),
            actual: classes.len(),
        });
    }
    if u32::try_from(px.len()).is_err() {
        return Err(Error::InvalidDimensions {
            width: img.width(),
            height: img.height(),
        });
    }

    // Counting sort per class keeps ties in index order without comparisons.
    let mut high = [0usize; 256];
    let mut low = [0usize; 256];
    for (&v, &class) in px.iter().zip(classes) {
        match class {
            EdgeClass::High => high[v as usize] += 1,
            EdgeClass::Low => low[v as usize] += 1,
        }
    }
    let mut start_high = [0usize; 256];
    let mut start_low = [0usize; 256];
    let mut cursor = 0;
    for v in (0..256).rev() {
        start_high[v] = cursor;
        cursor += high[v];
    }
    for v in 0..256 {
        start_low[v] = cursor;
        cursor += low[v];
    }

    let mut index_map = vec![0u32; px.len()];
    let mut out = vec![0u8; px.len()];
    for (i, (&v, &class)) in px.iter().zip(classes).enumerate() {
        let slot = match class {
            EdgeClass::High => &mut start_high[v as usize],
            EdgeClass::Low => &mut start_low[v as usize],
        };
        index_map[*slot] = i as u32;
        out[*slot] = v;
        *slot += 1;
    }
    Ok((GrayImage::new(img.width(), img.height(), out)?, index_map))
}

/// Full segmentation stage.
pub fn segment(img: &GrayImage) -> Result<(GrayImage, FapsRecord)> {
    let edges = edge_map(&sobel_gradients(img));
    let threshold = otsu_threshold(&edges);
    let classes = classify_pixels(&edges, threshold);
    let (out, index_map) = arrange(img, &classes)?;
    Ok((
        out,
        FapsRecord {
            index_map,
            threshold,
        },
    ))
}

/// True when `map` contains every value in `0..map.len()` exactly once.
pub fn is_bijection(map: &[u32]) -> bool {
    let mut seen = vec![false; map.len()];
    for &i in map {
        match seen.get_mut(i as usize) {
            Some(slot) if !*slot => *slot = true,
            _ => return false,
        }
    }
    true
}

/// Scatters each segmented value back to its original position.
pub fn unsegment(seg: &GrayImage, rec: &FapsRecord) -> Result<GrayImage> {
    if rec.index_map.len() != seg.len() || !is_bijection(&rec.index_map) {
        return Err(Error::InvalidFapsRecord);
    }
    let mut out = vec![0u8; seg.len()];
    for (&v, &i) in seg.pixels().iter().zip(&rec.index_map) {
        out[i as usize] = v;
    }
    GrayImage::new(seg.width(), seg.height(), out)
}
