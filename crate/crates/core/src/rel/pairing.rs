//! Diagonal Cantor pairing `<x, y> = (x + y)(x + y + 1) / 2 + y` and its projections.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cantor_pair({x}, {y}) does not fit in 64 bits")]
pub struct PairOverflow {
    pub x: u64,
    pub y: u64,
}

/// Encodes `(x, y)` as a single natural number.
pub fn cantor_pair(x: u64, y: u64) -> Result<u64, PairOverflow> {
    let w = x as u128 + y as u128;
    w.checked_mul(w + 1)
        .map(|t| t / 2 + y as u128)
        .and_then(|z| u64::try_from(z).ok())
        .ok_or(PairOverflow { x, y })
}

/// Inverse of [`cantor_pair`]; total on `u64`.
pub fn cantor_proj(z: u64) -> (u64, u64) {
    let w = diagonal_of(z);
    let t = w * (w + 1) / 2;
    let y = z as u128 - t;
    let x = w - y;
    (x as u64, y as u64)
}

pub fn proj0(z: u64) -> u64 {
    cantor_proj(z).0
}

pub fn proj1(z: u64) -> u64 {
    cantor_proj(z).1
}

// Largest w with w(w+1)/2 <= z.
fn diagonal_of(z: u64) -> u128 {
    let z = z as u128;
    let mut w = ((8 * z + 1).isqrt() - 1) / 2;
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    w
}
