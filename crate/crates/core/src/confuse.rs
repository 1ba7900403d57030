//! Hash-chained XOR confusion over 16x16 blocks.

use crate::chaos::{hash_to_params, seed_matrix, ChaoticParams, Digest, SEED_DIM};
use crate::error::Result;
use crate::image::GrayImage;
use crate::permute::{merge_blocks, split_blocks};

pub const CONF_BLOCK: usize = SEED_DIM;

fn xor_in_place(block: &mut [u8], seed: &[u8]) {
    for (b, s) in block.iter_mut().zip(seed) {
        *b ^= s;
    }
}

/// Confuses every block and returns the parameters that generated each seed matrix.
pub fn confuse_image_traced(
    img: &GrayImage,
    init: ChaoticParams,
) -> Result<(GrayImage, Vec<ChaoticParams>)> {
    let mut grid = split_blocks(img, CONF_BLOCK)?;
    let mut chain = Vec::with_capacity(grid.block_count());
    let mut params = init;
    for block in grid.blocks_mut() {
        chain.push(params);
        xor_in_place(block, &seed_matrix(params));
        params = hash_to_params(&Digest::of(block));
    }
    Ok((merge_blocks(&grid)?, chain))
}

pub fn confuse_image(img: &GrayImage, init: ChaoticParams) -> Result<GrayImage> {
    confuse_image_traced(img, init).map(|(out, _)| out)
}

/// Seed-matrix parameters rebuilt from confused blocks only.
pub fn confusion_chain(cipher: &GrayImage, init: ChaoticParams) -> Result<Vec<ChaoticParams>> {
    let grid = split_blocks(cipher, CONF_BLOCK)?;
    let mut params = init;
    Ok(grid
        .blocks()
        .map(|block| std::mem::replace(&mut params, hash_to_params(&Digest::of(block))))
        .collect())
}

pub fn deconfuse_image(img: &GrayImage, init: ChaoticParams) -> Result<GrayImage> {
    let mut grid = split_blocks(img, CONF_BLOCK)?;
    let mut params = init;
    for block in grid.blocks_mut() {
        let next = hash_to_params(&Digest::of(block));
        xor_in_place(block, &seed_matrix(params));
        params = next;
    }
    merge_blocks(&grid)
}
