//! Grayscale raster type and the alignment padding applied before encryption.

use crate::error::{Error, Result};

/// Block alignment required by the permutation stage (and therefore by confusion).
pub const ALIGNMENT: usize = 32;

/// An 8-bit grayscale image stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDimensions { width, height });
        }
        let expected = width
            .checked_mul(height)
            .ok_or(Error::InvalidDimensions { width, height })?;
        if pixels.len() != expected {
            return Err(Error::PixelCount {
                width,
                height,
                actual: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Image with every sample set to `value`.
    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width.saturating_mul(height)])
    }

    /// Builds an image by evaluating `f(row, col)` at every position.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width.saturating_mul(height));
        for row in 0..height {
            for col in 0..width {
                pixels.push(f(row, col));
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    /// Always false; a valid image holds at least one pixel.
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        self.pixels[row * self.width + col] = value;
    }

    /// Top-left `width` x `height` region.
    pub fn crop(&self, width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 || width > self.width || height > self.height {
            return Err(Error::InvalidDimensions { width, height });
        }
        let mut pixels = Vec::with_capacity(width * height);
        for row in self.pixels.chunks_exact(self.width).take(height) {
            pixels.extend_from_slice(&row[..width]);
        }
        Self::new(width, height, pixels)
    }
}

impl std::fmt::Debug for GrayImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GrayImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .finish_non_exhaustive()
    }
}

/// Smallest multiple of [`ALIGNMENT`] that is `>= n`.
pub fn aligned_dim(n: usize) -> usize {
    n.div_ceil(ALIGNMENT) * ALIGNMENT
}

/// Pads right and bottom with zeros up to the next multiple of 32 in each dimension.
pub fn pad_image(img: &GrayImage) -> GrayImage {
    let width = aligned_dim(img.width);
    let height = aligned_dim(img.height);
    if width == img.width && height == img.height {
        return img.clone();
    }
    let mut pixels = vec![0u8; width * height];
    for (dst, src) in pixels
        .chunks_exact_mut(width)
        .zip(img.pixels.chunks_exact(img.width))
    {
        dst[..img.width].copy_from_slice(src);
    }
    GrayImage {
        width,
        height,
        pixels,
    }
}
