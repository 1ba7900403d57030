//! Statistical evaluation of plain and cipher images.

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::pipeline::encrypt;

pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut counts = [0u64; 256];
    for &p in img.pixels() {
        counts[p as usize] += 1;
    }
    counts
}

/// Shannon entropy in bits of the intensity histogram, in `[0, 8]`.
pub fn shannon_entropy(img: &GrayImage) -> f64 {
    let n = img.len() as f64;
    let h: f64 = histogram(img)
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum();
    h.clamp(0.0, 8.0)
}

/// Pearson chi-square statistic against a uniform intensity distribution.
pub fn chi_square_uniformity(img: &GrayImage) -> f64 {
    let expected = img.len() as f64 / 256.0;
    histogram(img)
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Self::Horizontal, Self::Vertical, Self::Diagonal];

    fn offset(self) -> (usize, usize) {
        match self {
            Self::Horizontal => (0, 1),
            Self::Vertical => (1, 0),
            Self::Diagonal => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Horizontal => "horizontal",
            Self::Vertical => "vertical",
            Self::Diagonal => "diagonal",
        }
    }
}

/// Correlation coefficient over every adjacent pair in `direction`.
///
/// Returns 0 when either side of the pairing has zero variance.
pub fn adjacent_correlation(img: &GrayImage, direction: Direction) -> Result<f64> {
    let (dr, dc) = direction.offset();
    let (w, h) = (img.width(), img.height());
    if w <= dc || h <= dr {
        return Err(Error::DegenerateSize(direction.name()));
    }
    let pairs = || {
        (0..h - dr).flat_map(move |r| {
            (0..w - dc).map(move |c| (f64::from(img.get(r, c)), f64::from(img.get(r + dr, c + dc))))
        })
    };
    let n = ((h - dr) * (w - dc)) as f64;
    let (sx, sy) = pairs().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (mut cov, mut vx, mut vy) = (0.0, 0.0, 0.0);
    for (x, y) in pairs() {
        let (dx, dy) = (x - mx, y - my);
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if vx == 0.0 || vy == 0.0 {
        return Ok(0.0);
    }
    Ok((cov / (vx.sqrt() * vy.sqrt())).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub horizontal: f64,
    pub vertical: f64,
    pub diagonal: f64,
    /// Mean of the three absolute coefficients.
    pub mean_abs: f64,
}

pub fn correlation_report(img: &GrayImage) -> Result<CorrelationReport> {
    let horizontal = adjacent_correlation(img, Direction::Horizontal)?;
    let vertical = adjacent_correlation(img, Direction::Vertical)?;
    let diagonal = adjacent_correlation(img, Direction::Diagonal)?;
    Ok(CorrelationReport {
        horizontal,
        vertical,
        diagonal,
        mean_abs: (horizontal.abs() + vertical.abs() + diagonal.abs()) / 3.0,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialReport {
    pub npcr_percent: f64,
    pub uaci_percent: f64,
    pub diff_image: GrayImage,
}

/// NPCR/UACI and absolute difference image between two equally sized images.
pub fn compare_ciphers(a: &GrayImage, b: &GrayImage) -> Result<DifferentialReport> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch(
            a.width(),
            a.height(),
            b.width(),
            b.height(),
        ));
    }
    let diff: Vec<u8> = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| x.abs_diff(y))
        .collect();
    let n = diff.len() as f64;
    let changed = diff.iter().filter(|&&d| d != 0).count() as f64;
    let total: u64 = diff.iter().map(|&d| u64::from(d)).sum();
    Ok(DifferentialReport {
        npcr_percent: 100.0 * changed / n,
        uaci_percent: 100.0 * (total as f64 / n) / 255.0,
        diff_image: GrayImage::new(a.width(), a.height(), diff)?,
    })
}

/// Encrypts `img` and a copy with one bit of pixel `(row, col)` toggled, then
/// compares the two cipher images.
pub fn differential_test(
    img: &GrayImage,
    key: &[u8],
    row: usize,
    col: usize,
    bit: u8,
) -> Result<DifferentialReport> {
    if row >= img.height() || col >= img.width() || bit > 7 {
        return Err(Error::OutOfBounds {
            row,
            col,
            width: img.width(),
            height: img.height(),
        });
    }
    let mut flipped = img.clone();
    flipped.set(row, col, img.get(row, col) ^ (1 << bit));
    let c1 = encrypt(img, key)?.cipher_image()?;
    let c2 = encrypt(&flipped, key)?.cipher_image()?;
    compare_ciphers(&c1, &c2)
}

/// Every metric reported for one image.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageMetrics {
    pub width: usize,
    pub height: usize,
    pub entropy: f64,
    /// `None` for images too small to pair in every direction.
    pub correlation: Option<CorrelationReport>,
    pub chi_square: f64,
}

pub fn image_metrics(img: &GrayImage) -> ImageMetrics {
    ImageMetrics {
        width: img.width(),
        height: img.height(),
        entropy: shannon_entropy(img),
        correlation: correlation_report(img).ok(),
        chi_square: chi_square_uniformity(img),
    }
}

impl ImageMetrics {
    /// `(metric name, value)` pairs in report order.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        let mut out = vec![
            ("width", self.width as f64),
            ("height", self.height as f64),
            ("entropy", self.entropy),
        ];
        if let Some(c) = self.correlation {
            out.extend([
                ("corr_horizontal", c.horizontal),
                ("corr_vertical", c.vertical),
                ("corr_diagonal", c.diagonal),
                ("corr_mean_abs", c.mean_abs),
            ]);
        }
        out.push(("chi_square", self.chi_square));
        out
    }

    /// `name=value` lines.
    pub fn to_kv(&self) -> String {
        self.entries()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}\n"))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("size          {}x{}\n", self.width, self.height);
        s += &format!("entropy       {:.6}\n", self.entropy);
        match self.correlation {
            Some(c) => {
                s += &format!("horizontal    {:+.6}\n", c.horizontal);
                s += &format!("vertical      {:+.6}\n", c.vertical);
                s += &format!("diagonal      {:+.6}\n", c.diagonal);
                s += &format!("mean |r|      {:.6}\n", c.mean_abs);
            }
            None => s += "correlation   n/a (image too small)\n",
        }
        s += &format!("chi-square    {:.3}\n", self.chi_square);
        s
    }
}
