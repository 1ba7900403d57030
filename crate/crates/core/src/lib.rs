//! Feature-aware chaotic image encryption.
//!
//! Encryption runs three stages over a zero-padded grayscale image:
//!
//! 1. [`faps`]: Sobel/Otsu edge classification and a sorted regrouping of
//!    high-edge and low-edge pixels.
//! 2. [`permute`]: per-block logistic-map permutations over 32x32 blocks, each
//!    block re-keyed from the SHA-256 of the previous permuted block.
//! 3. [`confuse`]: XOR with logistic-map seed matrices over 16x16 blocks,
//!    chained the same way.
//!
//! The result is packaged in a [`CipherContainer`] together with the
//! key-masked segmentation map needed for decryption. [`analysis`] provides
//! entropy, correlation, histogram and differential metrics.

pub mod analysis;
pub mod chaos;
pub mod confuse;
pub mod container;
pub mod error;
pub mod faps;
pub mod image;
pub mod key;
pub mod permute;
pub mod pipeline;

pub use chaos::{ChaoticParams, Digest};
pub use container::CipherContainer;
pub use error::{Error, Result};
pub use faps::FapsRecord;
pub use image::{pad_image, GrayImage};
pub use key::{derive_key_material, KeyMaterial};
pub use pipeline::{decrypt, encrypt};
