//! Diagnostic RGB overlays: skeleton, chords, grasp picks and small labels.

use std::path::Path;

use image::{ImageFormat, Rgb, RgbImage};

use crate::error::Result;
use crate::geom::Point2;
use crate::grasp::GraspCandidate;
use crate::mask::BinaryMask;
use crate::measure::MeasurementReport;
use crate::segments::StationSegment;
use crate::skeleton::Skeleton;

pub const OBJECT: Rgb<u8> = Rgb([70, 70, 70]);
pub const SKELETON: Rgb<u8> = Rgb([40, 220, 40]);
pub const SEGMENT: Rgb<u8> = Rgb([220, 50, 50]);
pub const GRASP: Rgb<u8> = Rgb([255, 200, 0]);
pub const LABEL: Rgb<u8> = Rgb([255, 255, 255]);

// 3x5 glyphs, one row per u8, high three bits used
const GLYPH_W: u32 = 3;

fn glyph(c: char) -> Option<[u8; 5]> {
    Some(match c {
        '0' => [0b111, 0b101, 0b101, 0b101, 0b111],
        '1' => [0b010, 0b110, 0b010, 0b010, 0b111],
        '2' => [0b111, 0b001, 0b111, 0b100, 0b111],
        '3' => [0b111, 0b001, 0b111, 0b001, 0b111],
        '4' => [0b101, 0b101, 0b111, 0b001, 0b001],
        '5' => [0b111, 0b100, 0b111, 0b001, 0b111],
        '6' => [0b111, 0b100, 0b111, 0b101, 0b111],
        '7' => [0b111, 0b001, 0b010, 0b010, 0b010],
        '8' => [0b111, 0b101, 0b111, 0b101, 0b111],
        '9' => [0b111, 0b101, 0b111, 0b001, 0b111],
        '.' => [0b000, 0b000, 0b000, 0b000, 0b010],
        '#' => [0b101, 0b111, 0b101, 0b111, 0b101],
        ':' => [0b000, 0b010, 0b000, 0b010, 0b000],
        ' ' => [0; 5],
        _ => return None,
    })
}

pub struct Overlay {
    img: RgbImage,
}

impl Overlay {
    pub fn new(mask: &BinaryMask) -> Self {
        let (w, h) = mask.dims();
        let img = RgbImage::from_fn(w as u32, h as u32, |x, y| {
            if mask.get(x as usize, y as usize) {
                OBJECT
            } else {
                Rgb([0, 0, 0])
            }
        });
        Self { img }
    }

    pub fn image(&self) -> &RgbImage {
        &self.img
    }

    pub fn into_image(self) -> RgbImage {
        self.img
    }

    fn put(&mut self, x: i64, y: i64, color: Rgb<u8>) {
        if x >= 0 && y >= 0 && (x as u32) < self.img.width() && (y as u32) < self.img.height() {
            self.img.put_pixel(x as u32, y as u32, color);
        }
    }

    pub fn draw_line(&mut self, a: Point2, b: Point2, color: Rgb<u8>) {
        let steps = (b - a).abs().max().ceil().max(1.0) as usize;
        for i in 0..=steps {
            let p = a + (b - a) * (i as f64 / steps as f64);
            self.put(p.x.round() as i64, p.y.round() as i64, color);
        }
    }

    pub fn draw_skeleton(&mut self, skel: &Skeleton) {
        for p in &skel.points {
            self.put(p.x.round() as i64, p.y.round() as i64, SKELETON);
        }
    }

    pub fn draw_segment(&mut self, seg: &StationSegment, color: Rgb<u8>) {
        self.draw_line(seg.p1, seg.p2, color);
    }

    /// Draws `text` with its top-left corner at `at`, scaled by `scale`.
    /// Characters without a glyph are skipped.
    pub fn draw_label(&mut self, at: Point2, text: &str, scale: u32, color: Rgb<u8>) {
        let scale = scale.max(1);
        let (x0, y0) = (at.x.round() as i64, at.y.round() as i64);
        for (i, c) in text.chars().enumerate() {
            let Some(rows) = glyph(c) else { continue };
            let cx = x0 + (i as u32 * (GLYPH_W + 1) * scale) as i64;
            for (r, bits) in rows.iter().enumerate() {
                for col in 0..GLYPH_W {
                    if bits & (1 << (GLYPH_W - 1 - col)) == 0 {
                        continue;
                    }
                    for dy in 0..scale {
                        for dx in 0..scale {
                            self.put(
                                cx + (col * scale + dx) as i64,
                                y0 + (r as u32 * scale + dy) as i64,
                                color,
                            );
                        }
                    }
                }
            }
        }
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.img.save_with_format(path, ImageFormat::Png)?;
        Ok(())
    }
}

fn label_anchor(seg: &StationSegment) -> Point2 {
    let right = if seg.p1.x >= seg.p2.x { seg.p1 } else { seg.p2 };
    right + nalgebra::Vector2::new(3.0, -2.0)
}

/// Skeleton, every chord, and every fifth measured diameter in millimeters.
pub fn measurement_overlay(
    mask: &BinaryMask,
    skel: &Skeleton,
    segments: &[StationSegment],
    report: &MeasurementReport,
) -> Overlay {
    let mut o = Overlay::new(mask);
    for s in segments {
        o.draw_segment(s, SEGMENT);
    }
    o.draw_skeleton(skel);
    for (i, (&k, &d)) in report
        .station_indices
        .iter()
        .zip(&report.diameters)
        .enumerate()
    {
        if i % 5 != 0 {
            continue;
        }
        if let Some(seg) = segments.iter().find(|s| s.station_index == k) {
            o.draw_label(label_anchor(seg), &format!("{:.1}", d * 1000.0), 1, LABEL);
        }
    }
    o
}

/// Skeleton, faint chords, and the given candidates labeled by rank and
/// score.
pub fn grasp_overlay(
    mask: &BinaryMask,
    skel: &Skeleton,
    segments: &[StationSegment],
    candidates: &[GraspCandidate],
) -> Overlay {
    let mut o = Overlay::new(mask);
    for s in segments {
        o.draw_segment(s, Rgb([110, 40, 40]));
    }
    o.draw_skeleton(skel);
    for (rank, c) in candidates.iter().enumerate() {
        if let Some(seg) = segments.iter().find(|s| s.station_index == c.station_index) {
            o.draw_segment(seg, GRASP);
            o.draw_label(
                label_anchor(seg),
                &format!("#{} {:.2}", rank + 1, c.score),
                1,
                LABEL,
            );
        }
    }
    o
}
