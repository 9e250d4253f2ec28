//! Binary erosion and dilation with a square all-ones structuring element.
//! Pixels outside the image count as background.

use super::BinaryMask;

/// Separable square filter: a pixel is set when the count of set pixels in
/// its `k`-wide window satisfies `pred(count, k)`. Windows are clipped at
/// the border and clipped cells count as unset.
fn square_filter(mask: &BinaryMask, k: usize, pred: fn(usize, usize) -> bool) -> BinaryMask {
    let (w, h) = mask.dims();
    let r = k / 2;
    let mut horizontal = vec![false; w * h];
    let mut prefix = vec![0usize; w.max(h) + 1];
    for y in 0..h {
        let row = &mask.data()[y * w..(y + 1) * w];
        for x in 0..w {
            prefix[x + 1] = prefix[x] + row[x] as usize;
        }
        for x in 0..w {
            let lo = x.saturating_sub(r);
            let hi = (x + r + 1).min(w);
            horizontal[y * w + x] = pred(prefix[hi] - prefix[lo], k);
        }
    }
    let mut out = vec![false; w * h];
    for x in 0..w {
        for y in 0..h {
            prefix[y + 1] = prefix[y] + horizontal[y * w + x] as usize;
        }
        for y in 0..h {
            let lo = y.saturating_sub(r);
            let hi = (y + r + 1).min(h);
            out[y * w + x] = pred(prefix[hi] - prefix[lo], k);
        }
    }
    BinaryMask::from_vec(w, h, out).expect("same dimensions")
}

pub fn erode(mask: &BinaryMask, kernel_size: usize) -> BinaryMask {
    square_filter(mask, kernel_size, |count, k| count == k)
}

pub fn dilate(mask: &BinaryMask, kernel_size: usize) -> BinaryMask {
    square_filter(mask, kernel_size, |count, _| count > 0)
}

pub fn open(mask: &BinaryMask, kernel_size: usize) -> BinaryMask {
    dilate(&erode(mask, kernel_size), kernel_size)
}

pub fn close(mask: &BinaryMask, kernel_size: usize) -> BinaryMask {
    erode(&dilate(mask, kernel_size), kernel_size)
}

/// Opening followed by closing.
pub fn open_close(mask: &BinaryMask, kernel_size: usize) -> BinaryMask {
    close(&open(mask, kernel_size), kernel_size)
}
