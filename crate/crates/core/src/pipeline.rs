//! End-to-end encryption: pad, segment, permute, confuse, package.

use crate::chaos::{keystream, ChaoticParams};
use crate::confuse::{confuse_image, deconfuse_image};
use crate::container::CipherContainer;
use crate::error::{Error, Result};
use crate::faps::{is_bijection, segment, unsegment, FapsRecord};
use crate::image::{pad_image, GrayImage};
use crate::key::derive_key_material;
use crate::permute::{inverse_permute, permute_image};

fn mask_index_map(index_map: &[u32], mask: ChaoticParams) -> Vec<u8> {
    let stream = keystream(mask, 4 * index_map.len());
    index_map
        .iter()
        .flat_map(|i| i.to_le_bytes())
        .zip(stream)
        .map(|(b, k)| b ^ k)
        .collect()
}

fn unmask_index_map(masked: &[u8], mask: ChaoticParams) -> Vec<u32> {
    let stream = keystream(mask, masked.len());
    masked
        .chunks_exact(4)
        .zip(stream.chunks_exact(4))
        .map(|(m, k)| u32::from_le_bytes([m[0] ^ k[0], m[1] ^ k[1], m[2] ^ k[2], m[3] ^ k[3]]))
        .collect()
}

fn dim_u32(n: usize) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::InvalidContainer("dimension exceeds u32"))
}

pub fn encrypt(img: &GrayImage, key_bytes: &[u8]) -> Result<CipherContainer> {
    let km = derive_key_material(key_bytes)?;
    let padded = pad_image(img);
    let (seg, rec) = segment(&padded)?;
    let perm = permute_image(&seg, km.perm_init)?;
    let conf = confuse_image(&perm, km.conf_init)?;
    Ok(CipherContainer {
        orig_width: dim_u32(img.width())?,
        orig_height: dim_u32(img.height())?,
        padded_width: dim_u32(padded.width())?,
        padded_height: dim_u32(padded.height())?,
        masked_faps: mask_index_map(&rec.index_map, km.mask_init),
        cipher_pixels: conf.into_pixels(),
    })
}

pub fn decrypt(c: &CipherContainer, key_bytes: &[u8]) -> Result<GrayImage> {
    let km = derive_key_material(key_bytes)?;
    c.validate()?;
    let cipher = c.cipher_image()?;
    let perm = deconfuse_image(&cipher, km.conf_init)?;
    let seg = inverse_permute(&perm, km.perm_init)?;
    let index_map = unmask_index_map(&c.masked_faps, km.mask_init);
    if !is_bijection(&index_map) {
        return Err(Error::WrongKey);
    }
    let rec = FapsRecord {
        index_map,
        // Not stored; only the map is needed to invert.
        threshold: 0.0,
    };
    let plain = unsegment(&seg, &rec)?;
    plain.crop(c.orig_width as usize, c.orig_height as usize)
}
