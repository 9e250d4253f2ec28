//! Exact Euclidean distance transform (Felzenszwalb–Huttenlocher lower
//! envelope of parabolas, one axis at a time).

use crate::mask::BinaryMask;

const INF: f64 = 1e20;

fn transform_1d(f: &[f64], d: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let mut k = 0usize;
    v[0] = 0;
    z[0] = -INF;
    z[1] = INF;
    for q in 1..n {
        let mut s;
        loop {
            let p = v[k];
            s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64))
                / (2.0 * q as f64 - 2.0 * p as f64);
            // z[0] is -INF, so this never underflows
            if s <= z[k] {
                k -= 1;
            } else {
                break;
            }
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = INF;
    }
    k = 0;
    for (q, out) in d.iter_mut().enumerate().take(n) {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let p = v[k];
        let diff = q as f64 - p as f64;
        *out = diff * diff + f[p];
    }
}

/// Squared Euclidean distance from every pixel to the nearest background
/// pixel center, with everything outside the image counted as background.
/// Background pixels get zero.
pub fn squared_edt(mask: &BinaryMask) -> Vec<f64> {
    let (w, h) = mask.dims();
    // one pixel of background padding on every side
    let (pw, ph) = (w + 2, h + 2);
    let mut grid = vec![0.0; pw * ph];
    for y in 0..h {
        for x in 0..w {
            if mask.get(x, y) {
                grid[(y + 1) * pw + x + 1] = INF;
            }
        }
    }
    let n = pw.max(ph);
    let mut f = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut v = vec![0usize; n];
    let mut z = vec![0.0; n + 1];
    for x in 0..pw {
        for y in 0..ph {
            f[y] = grid[y * pw + x];
        }
        transform_1d(&f[..ph], &mut d[..ph], &mut v, &mut z);
        for y in 0..ph {
            grid[y * pw + x] = d[y];
        }
    }
    for y in 0..ph {
        f[..pw].copy_from_slice(&grid[y * pw..(y + 1) * pw]);
        transform_1d(&f[..pw], &mut d[..pw], &mut v, &mut z);
        grid[y * pw..(y + 1) * pw].copy_from_slice(&d[..pw]);
    }
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            out[y * w + x] = grid[(y + 1) * pw + x + 1];
        }
    }
    out
}

/// Euclidean distance to the nearest background pixel center.
pub fn edt(mask: &BinaryMask) -> Vec<f64> {
    squared_edt(mask).into_iter().map(f64::sqrt).collect()
}
