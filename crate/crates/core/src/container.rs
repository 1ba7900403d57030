//! Ciphertext container wire format.
//!
//! ```text
//! offset  size            field
//! 0       4               magic "FACE"
//! 4       1               version (1)
//! 5       4               orig_width    (u32 LE)
//! 9       4               orig_height   (u32 LE)
//! 13      4               padded_width  (u32 LE)
//! 17      4               padded_height (u32 LE)
//! 21      4*pw*ph         masked FAPS index map
//! ..      pw*ph           cipher pixels, row-major
//! ```

use crate::error::{Error, Result};
use crate::image::{GrayImage, ALIGNMENT};

pub const MAGIC: [u8; 4] = *b"FACE";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 21;

#[derive(Clone, PartialEq, Eq)]
pub struct CipherContainer {
    pub orig_width: u32,
    pub orig_height: u32,
    pub padded_width: u32,
    pub padded_height: u32,
    /// Index map as u32 LE entries, XOR-masked with a key-derived keystream.
    pub masked_faps: Vec<u8>,
    pub cipher_pixels: Vec<u8>,
}

impl std::fmt::Debug for CipherContainer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CipherContainer")
            .field("orig", &(self.orig_width, self.orig_height))
            .field("padded", &(self.padded_width, self.padded_height))
            .field("masked_faps_len", &self.masked_faps.len())
            .field("cipher_len", &self.cipher_pixels.len())
            .finish()
    }
}

/// Total serialized size for the given padded dimensions, if it fits in memory.
fn body_len(padded_width: u32, padded_height: u32) -> Option<usize> {
    let n = u64::from(padded_width).checked_mul(u64::from(padded_height))?;
    let total = n.checked_mul(5)?.checked_add(HEADER_LEN as u64)?;
    usize::try_from(total).ok()
}

impl CipherContainer {
    pub fn pixel_count(&self) -> usize {
        self.padded_width as usize * self.padded_height as usize
    }

    pub fn validate(&self) -> Result<()> {
        check_dims(
            self.orig_width,
            self.orig_height,
            self.padded_width,
            self.padded_height,
        )?;
        let n = self.pixel_count();
        if self.masked_faps.len() != 4 * n {
            return Err(Error::InvalidContainer("masked index map length"));
        }
        if self.cipher_pixels.len() != n {
            return Err(Error::InvalidContainer("cipher pixel length"));
        }
        Ok(())
    }

    /// The cipher pixels as a padded-size image.
    pub fn cipher_image(&self) -> Result<GrayImage> {
        GrayImage::new(
            self.padded_width as usize,
            self.padded_height as usize,
            self.cipher_pixels.clone(),
        )
    }

    pub fn serialize(&self) -> Result<Vec<u8>> {
        self.validate()?;
        let total = body_len(self.padded_width, self.padded_height)
            .ok_or(Error::InvalidContainer("size overflow"))?;
        let mut out = Vec::with_capacity(total);
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        for dim in [
            self.orig_width,
            self.orig_height,
            self.padded_width,
            self.padded_height,
        ] {
            out.extend_from_slice(&dim.to_le_bytes());
        }
        out.extend_from_slice(&self.masked_faps);
        out.extend_from_slice(&self.cipher_pixels);
        debug_assert_eq!(out.len(), total);
        Ok(out)
    }

    pub fn deserialize(bytes: &[u8]) -> Result<Self> {
        let truncated = |expected| Error::Truncated {
            expected,
            actual: bytes.len(),
        };
        if bytes.len() < MAGIC.len() {
            return Err(truncated(HEADER_LEN));
        }
        if bytes[..4] != MAGIC {
            return Err(Error::BadMagic);
        }
        if bytes.len() < 5 {
            return Err(truncated(HEADER_LEN));
        }
        if bytes[4] != VERSION {
            return Err(Error::UnsupportedVersion(bytes[4]));
        }
        if bytes.len() < HEADER_LEN {
            return Err(truncated(HEADER_LEN));
        }
        let word = |off: usize| u32::from_le_bytes(bytes[off..off + 4].try_into().unwrap());
        let (orig_width, orig_height) = (word(5), word(9));
        let (padded_width, padded_height) = (word(13), word(17));
        check_dims(orig_width, orig_height, padded_width, padded_height)?;

        let total = body_len(padded_width, padded_height)
            .ok_or(Error::InvalidContainer("size overflow"))?;
        if bytes.len() < total {
            return Err(truncated(total));
        }
        if bytes.len() > total {
            return Err(Error::TrailingBytes {
                expected: total,
                actual: bytes.len(),
            });
        }
        let n = padded_width as usize * padded_height as usize;
        let faps_end = HEADER_LEN + 4 * n;
        Ok(Self {
            orig_width,
            orig_height,
            padded_width,
            padded_height,
            masked_faps: bytes[HEADER_LEN..faps_end].to_vec(),
            cipher_pixels: bytes[faps_end..].to_vec(),
        })
    }
}

fn check_dims(ow: u32, oh: u32, pw: u32, ph: u32) -> Result<()> {
    let align = ALIGNMENT as u32;
    if ow == 0 || oh == 0 {
        return Err(Error::InvalidContainer("zero original dimension"));
    }
    if !pw.is_multiple_of(align) || !ph.is_multiple_of(align) {
        return Err(Error::InvalidContainer(
            "padded dimensions not a multiple of 32",
        ));
    }
    if pw < ow || ph < oh {
        return Err(Error::InvalidContainer(
            "padded dimensions smaller than original",
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CipherContainer {
        CipherContainer {
            orig_width: 30,
            orig_height: 33,
            padded_width: 32,
            padded_height: 64,
            masked_faps: (0..4 * 32 * 64).map(|i| (i * 7) as u8).collect(),
            cipher_pixels: (0..32 * 64).map(|i| (i * 13) as u8).collect(),
        }
    }

    #[test]
    fn header_layout() {
        let bytes = sample().serialize().unwrap();
        assert_eq!(&bytes[..4], b"FACE");
        assert_eq!(bytes[4], 1);
        assert_eq!(&bytes[5..9], &30u32.to_le_bytes());
        assert_eq!(&bytes[9..13], &33u32.to_le_bytes());
        assert_eq!(&bytes[13..17], &32u32.to_le_bytes());
        assert_eq!(&bytes[17..21], &64u32.to_le_bytes());
        assert_eq!(bytes.len(), 21 + 5 * 32 * 64);
        assert_eq!(bytes[21], 0);
        assert_eq!(bytes[21 + 4 * 32 * 64 + 1], 13);
    }

    #[test]
    fn round_trip() {
        let c = sample();
        let back = CipherContainer::deserialize(&c.serialize().unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn distinct_errors() {
        let mut bytes = sample().serialize().unwrap();
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert_eq!(CipherContainer::deserialize(&bad), Err(Error::BadMagic));

        bytes[4] = 0xFF;
        assert_eq!(
            CipherContainer::deserialize(&bytes),
            Err(Error::UnsupportedVersion(0xFF))
        );
        bytes[4] = 1;

        assert!(matches!(
            CipherContainer::deserialize(&bytes[..bytes.len() - 1]),
            Err(Error::Truncated { .. })
        ));
        assert!(matches!(
            CipherContainer::deserialize(&bytes[..10]),
            Err(Error::Truncated { .. })
        ));
        assert!(matches!(
            CipherContainer::deserialize(b"FA"),
            Err(Error::Truncated { .. })
        ));
        bytes.push(0);
        assert!(matches!(
            CipherContainer::deserialize(&bytes),
            Err(Error::TrailingBytes { .. })
        ));
    }

    #[test]
    fn invariants_enforced() {
        let mut c = sample();
        c.padded_width = 48;
        assert!(c.serialize().is_err());
        let mut c = sample();
        c.orig_height = 65;
        assert!(c.serialize().is_err());
        let mut c = sample();
        c.masked_faps.pop();
        assert!(c.serialize().is_err());

        let mut bytes = sample().serialize().unwrap();
        bytes[13..17].copy_from_slice(&33u32.to_le_bytes());
        assert!(matches!(
            CipherContainer::deserialize(&bytes),
            Err(Error::InvalidContainer(_))
        ));
    }
}
