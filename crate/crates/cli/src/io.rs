//! File I/O: grayscale PGM/PNG images and `.face` containers.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use facecrypt::{container, CipherContainer, GrayImage};
use image::codecs::png::PngEncoder;
use image::{DynamicImage, ExtendedColorType, ImageEncoder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ImageFormat {
    Pgm,
    Png,
}

impl ImageFormat {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Pgm => "pgm",
            Self::Png => "png",
        }
    }

    /// Explicit choice wins, then the output extension, then PGM.
    pub fn resolve(explicit: Option<Self>, path: &Path) -> Self {
        explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("png") => Self::Png,
            _ => Self::Pgm,
        })
    }
}

/// Contents of an input file, sniffed by magic bytes.
pub enum Input {
    Image(GrayImage),
    Container(CipherContainer),
}

pub fn read_input(path: &Path) -> Result<Input> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    if bytes.starts_with(&container::MAGIC) {
        let c = CipherContainer::deserialize(&bytes)
            .with_context(|| format!("{}: invalid container", path.display()))?;
        return Ok(Input::Container(c));
    }
    decode_image(&bytes)
        .map(Input::Image)
        .with_context(|| path.display().to_string())
}

fn decode_image(bytes: &[u8]) -> Result<GrayImage> {
    let decoded =
        image::load_from_memory(bytes).map_err(|e| anyhow!("unsupported image format: {e}"))?;
    let DynamicImage::ImageLuma8(gray) = decoded else {
        bail!(
            "unsupported image format: expected 8-bit grayscale, found {:?}",
            decoded.color()
        );
    };
    let (w, h) = gray.dimensions();
    Ok(GrayImage::new(w as usize, h as usize, gray.into_raw())?)
}

pub fn read_image(path: &Path) -> Result<GrayImage> {
    match read_input(path)? {
        Input::Image(img) => Ok(img),
        Input::Container(_) => bail!("{}: expected an image, found a container", path.display()),
    }
}

pub fn read_container(path: &Path) -> Result<CipherContainer> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    CipherContainer::deserialize(&bytes)
        .with_context(|| format!("{}: invalid container", path.display()))
}

pub fn encode_image(img: &GrayImage, format: ImageFormat) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let (w, h) = (img.width() as u32, img.height() as u32);
    match format {
        // Conventional netpbm layout; the image crate's encoder puts the
        // maxval on the dimensions line.
        ImageFormat::Pgm => {
            out.extend_from_slice(format!("P5\n{w} {h}\n255\n").as_bytes());
            out.extend_from_slice(img.pixels());
        }
        ImageFormat::Png => {
            PngEncoder::new(&mut out).write_image(img.pixels(), w, h, ExtendedColorType::L8)?
        }
    }
    Ok(out)
}

/// Writes `bytes` to `path`, refusing to replace an existing file unless `force`.
pub fn write_output(path: &Path, bytes: &[u8], force: bool) -> Result<()> {
    let mut file = if force {
        fs::File::create(path)
    } else {
        fs::OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(path)
    }
    .map_err(|e| match e.kind() {
        std::io::ErrorKind::AlreadyExists => {
            anyhow!(
                "{} already exists (use --force to overwrite)",
                path.display()
            )
        }
        _ => anyhow!("cannot write {}: {e}", path.display()),
    })?;
    file.write_all(bytes)
        .with_context(|| format!("cannot write {}", path.display()))
}
