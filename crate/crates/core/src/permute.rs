//! Hash-chained block permutation over 32x32 blocks.
//!
//! Block `i` is shuffled with the argsort permutation drawn from its own
//! logistic parameters; the SHA-256 of the shuffled block seeds block `i + 1`.
//! Because each hash is taken over output bytes, the inverse can rebuild the
//! whole parameter chain from the ciphertext alone.

use crate::chaos::{hash_to_params, permutation_sequence, ChaoticParams, Digest};
use crate::error::{Error, Result};
use crate::image::GrayImage;

pub const PERM_BLOCK: usize = 32;

/// An image cut into square blocks, stored block after block in row-major
/// block order, each block itself row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockGrid {
    block_size: usize,
    grid_cols: usize,
    grid_rows: usize,
    data: Vec<u8>,
}

impl BlockGrid {
    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn grid_cols(&self) -> usize {
        self.grid_cols
    }

    pub fn grid_rows(&self) -> usize {
        self.grid_rows
    }

    pub fn block_count(&self) -> usize {
        self.grid_cols * self.grid_rows
    }

    fn block_len(&self) -> usize {
        self.block_size * self.block_size
    }

    pub fn block(&self, i: usize) -> &[u8] {
        let len = self.block_len();
        &self.data[i * len..(i + 1) * len]
    }

    pub fn block_mut(&mut self, i: usize) -> &mut [u8] {
        let len = self.block_len();
        &mut self.data[i * len..(i + 1) * len]
    }

    pub fn blocks(&self) -> std::slice::ChunksExact<'_, u8> {
        self.data.chunks_exact(self.block_len())
    }

    pub fn blocks_mut(&mut self) -> std::slice::ChunksExactMut<'_, u8> {
        let len = self.block_len();
        self.data.chunks_exact_mut(len)
    }
}

pub(crate) fn check_aligned(img: &GrayImage, b: usize) -> Result<()> {
    if b == 0 || !img.width().is_multiple_of(b) || !img.height().is_multiple_of(b) {
        return Err(Error::UnalignedImage {
            width: img.width(),
            height: img.height(),
            block: b,
        });
    }
    Ok(())
}

pub fn split_blocks(img: &GrayImage, b: usize) -> Result<BlockGrid> {
    check_aligned(img, b)?;
    let (w, px) = (img.width(), img.pixels());
    let grid_cols = w / b;
    let grid_rows = img.height() / b;
    let mut data = Vec::with_capacity(px.len());
    for by in 0..grid_rows {
        for bx in 0..grid_cols {
            for row in by * b..(by + 1) * b {
                let start = row * w + bx * b;
                data.extend_from_slice(&px[start..start + b]);
            }
        }
    }
    Ok(BlockGrid {
        block_size: b,
        grid_cols,
        grid_rows,
        data,
    })
}

pub fn merge_blocks(g: &BlockGrid) -> Result<GrayImage> {
    let b = g.block_size;
    let w = g.grid_cols * b;
    let h = g.grid_rows * b;
    let mut px = vec![0u8; w * h];
    for (i, block) in g.blocks().enumerate() {
        let (by, bx) = (i / g.grid_cols, i % g.grid_cols);
        for (r, line) in block.chunks_exact(b).enumerate() {
            let start = (by * b + r) * w + bx * b;
            px[start..start + b].copy_from_slice(line);
        }
    }
    GrayImage::new(w, h, px)
}

/// Permutes every 32x32 block and returns the parameters used for each block.
pub fn permute_image_traced(
    img: &GrayImage,
    init: ChaoticParams,
) -> Result<(GrayImage, Vec<ChaoticParams>)> {
    let mut grid = split_blocks(img, PERM_BLOCK)?;
    let mut chain = Vec::with_capacity(grid.block_count());
    let mut params = init;
    let mut scratch = [0u8; PERM_BLOCK * PERM_BLOCK];
    for block in grid.blocks_mut() {
        chain.push(params);
        let order = permutation_sequence(params, block.len());
        for (dst, &src) in scratch.iter_mut().zip(&order) {
            *dst = block[src];
        }
        block.copy_from_slice(&scratch);
        params = hash_to_params(&Digest::of(block));
    }
    Ok((merge_blocks(&grid)?, chain))
}

pub fn permute_image(img: &GrayImage, init: ChaoticParams) -> Result<GrayImage> {
    permute_image_traced(img, init).map(|(out, _)| out)
}

/// Per-block parameters reconstructed from a permuted image alone.
pub fn permutation_chain(cipher: &GrayImage, init: ChaoticParams) -> Result<Vec<ChaoticParams>> {
    let grid = split_blocks(cipher, PERM_BLOCK)?;
    let mut params = init;
    Ok(grid
        .blocks()
        .map(|block| {
            let current = params;
            params = hash_to_params(&Digest::of(block));
            current
        })
        .collect())
}

pub fn inverse_permute(img: &GrayImage, init: ChaoticParams) -> Result<GrayImage> {
    let mut grid = split_blocks(img, PERM_BLOCK)?;
    let mut params = init;
    let mut scratch = [0u8; PERM_BLOCK * PERM_BLOCK];
    for block in grid.blocks_mut() {
        // Next link comes from the block as received, before undoing it.
        let next = hash_to_params(&Digest::of(block));
        let order = permutation_sequence(params, block.len());
        for (&value, &src) in block.iter().zip(&order) {
            scratch[src] = value;
        }
        block.copy_from_slice(&scratch);
        params = next;
    }
    merge_blocks(&grid)
}
