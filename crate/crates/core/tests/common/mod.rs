//! Deterministic synthetic test scenes shared by the integration suites.
//!
//! No photographic assets ship with the repository, so the "natural" images are
//! procedural: smooth illumination, occluding shapes with hard edges, and
//! multi-octave value noise for texture.

#![allow(dead_code)]

pub mod oracle;

use facecrypt::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smooth value noise in [0, 1] from a lattice of random values, bilinearly interpolated.
fn value_noise(w: usize, h: usize, cell: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let gw = w / cell + 2;
    let gh = h / cell + 2;
    let lattice: Vec<f64> = (0..gw * gh).map(|_| rng.gen::<f64>()).collect();
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        let fy = y as f64 / cell as f64;
        let (y0, ty) = (fy.floor() as usize, fy.fract());
        let sy = ty * ty * (3.0 - 2.0 * ty);
        for x in 0..w {
            let fx = x as f64 / cell as f64;
            let (x0, tx) = (fx.floor() as usize, fx.fract());
            let sx = tx * tx * (3.0 - 2.0 * tx);
            let l = |gx: usize, gy: usize| lattice[gy * gw + gx];
            let top = l(x0, y0) * (1.0 - sx) + l(x0 + 1, y0) * sx;
            let bot = l(x0, y0 + 1) * (1.0 - sx) + l(x0 + 1, y0 + 1) * sx;
            out[y * w + x] = top * (1.0 - sy) + bot * sy;
        }
    }
    out
}

fn fractal_noise(w: usize, h: usize, cells: &[usize], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut acc = vec![0.0; w * h];
    let mut amp = 1.0;
    let mut norm = 0.0;
    for &cell in cells {
        for (a, n) in acc.iter_mut().zip(value_noise(w, h, cell, rng)) {
            *a += amp * n;
        }
        norm += amp;
        amp *= 0.5;
    }
    acc.iter().map(|a| a / norm).collect()
}

fn to_image(w: usize, h: usize, v: &[f64]) -> GrayImage {
    GrayImage::new(
        w,
        h,
        v.iter()
            .map(|&x| x.round().clamp(0.0, 255.0) as u8)
            .collect(),
    )
    .unwrap()
}

/// Photographer-style scene: bright sky gradient, dark standing figure with a
/// tripod, textured ground.
pub fn portrait(w: usize, h: usize, seed: u64) -> GrayImage {
    let mut r = rng(seed);
    let tex = fractal_noise(w, h, &[32, 8, 2], &mut r);
    let (wf, hf) = (w as f64, h as f64);
    let mut v = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let (xf, yf) = (x as f64 / wf, y as f64 / hf);
            let mut p = if yf < 0.62 {
                150.0 + 60.0 * yf + 10.0 * tex[y * w + x]
            } else {
                90.0 + 70.0 * tex[y * w + x]
            };
            // Head and torso.
            let head = ((xf - 0.42) / 0.07).powi(2) + ((yf - 0.22) / 0.08).powi(2);
            let torso = ((xf - 0.42) / 0.14).powi(2) + ((yf - 0.52) / 0.24).powi(2);
            if head < 1.0 || torso < 1.0 {
                p = 20.0 + 30.0 * tex[y * w + x];
            }
            // Tripod legs.
            for (x0, slope) in [(0.66, -0.25), (0.66, 0.0), (0.66, 0.25)] {
                if yf > 0.45 && (xf - (x0 + slope * (yf - 0.45))).abs() < 0.008 {
                    p = 35.0;
                }
            }
            v[y * w + x] = p;
        }
    }
    to_image(w, h, &v)
}

/// High-frequency fur-like texture over a mid-tone face shape.
pub fn texture(w: usize, h: usize, seed: u64) -> GrayImage {
    let mut r = rng(seed);
    let fur = fractal_noise(w, h, &[16, 4, 2], &mut r);
    let (wf, hf) = (w as f64, h as f64);
    let mut v = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let (xf, yf) = (x as f64 / wf - 0.5, y as f64 / hf - 0.5);
            let face = (-(xf * xf + yf * yf) * 6.0).exp();
            let stripes = (xf * 40.0 + 8.0 * fur[y * w + x]).sin();
            v[y * w + x] = 60.0 + 110.0 * face + 55.0 * fur[y * w + x] + 20.0 * stripes;
        }
    }
    to_image(w, h, &v)
}

/// Block buildings with windows and roofs under a sky gradient.
pub fn houses(w: usize, h: usize, seed: u64) -> GrayImage {
    let mut r = rng(seed);
    let grain = fractal_noise(w, h, &[8, 2], &mut r);
    let buildings: Vec<(f64, f64, f64, f64)> = (0..6)
        .map(|i| {
            let x0 = i as f64 / 6.0 + r.gen_range(0.0..0.03);
            let width = r.gen_range(0.11..0.16);
            let top = r.gen_range(0.35..0.6);
            let tone = r.gen_range(70.0..200.0);
            (x0, width, top, tone)
        })
        .collect();
    let (wf, hf) = (w as f64, h as f64);
    let mut v = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let (xf, yf) = (x as f64 / wf, y as f64 / hf);
            let mut p = 200.0 - 50.0 * yf;
            for &(x0, bw, top, tone) in &buildings {
                let inside = xf >= x0 && xf < x0 + bw;
                let roof = top - 0.08 * (1.0 - ((xf - x0 - bw / 2.0).abs() / (bw / 2.0)));
                if inside && yf >= roof {
                    p = if yf < top { tone * 0.6 } else { tone };
                    let (wx, wy) = (((xf - x0) * 40.0).fract(), ((yf - top) * 30.0).fract());
                    if yf > top + 0.03 && wx > 0.3 && wx < 0.7 && wy > 0.3 && wy < 0.8 {
                        p = 30.0;
                    }
                }
            }
            if yf > 0.9 {
                p = 100.0;
            }
            v[y * w + x] = p + 18.0 * (grain[y * w + x] - 0.5);
        }
    }
    to_image(w, h, &v)
}

pub fn natural_scenes() -> Vec<(&'static str, GrayImage)> {
    vec![
        ("portrait", portrait(256, 256, 1)),
        ("texture", texture(256, 256, 2)),
        ("houses", houses(256, 256, 3)),
    ]
}

pub fn random_image(w: usize, h: usize, rng: &mut ChaCha8Rng) -> GrayImage {
    GrayImage::new(w, h, (0..w * h).map(|_| rng.gen()).collect()).unwrap()
}

pub fn gradient_image(w: usize, h: usize, phase: usize) -> GrayImage {
    GrayImage::from_fn(w, h, |r, c| ((r * 3 + c * 5 + phase) % 256) as u8).unwrap()
}
