//! File formats.
//!
//! * Masks: 8-bit grayscale PNG, any nonzero value is object.
//! * Depth: 16-bit grayscale PNG in millimeters (0 = missing), or a raw
//!   grid of little-endian `f32` meters preceded by `u32` width and height.
//!   Files ending in `.png` are read as PNG, anything else as raw.
//! * Intrinsics, reports, ground truth: JSON.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use image::{GrayImage, ImageBuffer, ImageFormat, Luma};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::depth::{is_valid, DepthMap};
use crate::error::{Error, Result};
use crate::mask::BinaryMask;
use crate::measure::MeasurementReport;
use crate::segments::StationSegment;
use crate::skeleton::Skeleton;

fn is_png(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("png"))
}

pub fn read_mask(path: impl AsRef<Path>) -> Result<BinaryMask> {
    let img = image::open(path.as_ref())?.to_luma8();
    let (w, h) = img.dimensions();
    BinaryMask::from_vec(
        w as usize,
        h as usize,
        img.into_raw().into_iter().map(|v| v != 0).collect(),
    )
}

pub fn write_mask(path: impl AsRef<Path>, mask: &BinaryMask) -> Result<()> {
    let (w, h) = mask.dims();
    let img = GrayImage::from_raw(
        w as u32,
        h as u32,
        mask.data()
            .iter()
            .map(|&b| if b { 255 } else { 0 })
            .collect(),
    )
    .expect("buffer matches dimensions");
    img.save_with_format(path, ImageFormat::Png)?;
    Ok(())
}

pub fn read_depth(path: impl AsRef<Path>) -> Result<DepthMap> {
    let path = path.as_ref();
    if is_png(path) {
        let img = image::open(path)?.into_luma16();
        let (w, h) = img.dimensions();
        let data = img
            .into_raw()
            .into_iter()
            .map(|mm| f64::from(mm) / 1000.0)
            .collect();
        DepthMap::from_vec(w as usize, h as usize, data)
    } else {
        read_depth_raw(File::open(path)?)
    }
}

pub fn read_depth_raw(reader: impl Read) -> Result<DepthMap> {
    let mut r = BufReader::new(reader);
    let mut word = [0u8; 4];
    r.read_exact(&mut word)?;
    let w = u32::from_le_bytes(word) as usize;
    r.read_exact(&mut word)?;
    let h = u32::from_le_bytes(word) as usize;
    if w == 0 || h == 0 {
        return Err(Error::InvalidInput("raw depth has zero size".into()));
    }
    let mut bytes = vec![0u8; w * h * 4];
    r.read_exact(&mut bytes)?;
    let data = bytes
        .chunks_exact(4)
        .map(|c| f64::from(f32::from_le_bytes([c[0], c[1], c[2], c[3]])))
        .collect();
    DepthMap::from_vec(w, h, data)
}

/// Writes by extension: `.png` as millimeters, anything else as raw `f32`.
pub fn write_depth(path: impl AsRef<Path>, depth: &DepthMap) -> Result<()> {
    let path = path.as_ref();
    if is_png(path) {
        write_depth_png(path, depth)
    } else {
        write_depth_raw(BufWriter::new(File::create(path)?), depth)
    }
}

pub fn write_depth_png(path: impl AsRef<Path>, depth: &DepthMap) -> Result<()> {
    let (w, h) = depth.dims();
    let data: Vec<u16> = depth
        .data()
        .iter()
        .map(|&d| {
            if is_valid(d) {
                (d * 1000.0).round().clamp(1.0, f64::from(u16::MAX)) as u16
            } else {
                0
            }
        })
        .collect();
    let img: ImageBuffer<Luma<u16>, Vec<u16>> =
        ImageBuffer::from_raw(w as u32, h as u32, data).expect("buffer matches dimensions");
    img.save_with_format(path, ImageFormat::Png)?;
    Ok(())
}

pub fn write_depth_raw(mut writer: impl Write, depth: &DepthMap) -> Result<()> {
    let (w, h) = depth.dims();
    writer.write_all(&(w as u32).to_le_bytes())?;
    writer.write_all(&(h as u32).to_le_bytes())?;
    for &d in depth.data() {
        let v = if is_valid(d) { d as f32 } else { 0.0 };
        writer.write_all(&v.to_le_bytes())?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}

pub fn write_json<T: Serialize + ?Sized>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |d| d.to_string())
}

/// One row per measured station.
pub fn report_csv(report: &MeasurementReport) -> String {
    let mut s = String::from("station,diameter_m,mid_x,mid_y,mid_z,x1,y1,z1,x2,y2,z2\n");
    for i in 0..report.len() {
        let m = report.midpoints3d[i];
        let [a, b] = report.endpoints3d[i];
        s += &format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            report.station_indices[i],
            report.diameters[i],
            m.x,
            m.y,
            m.z,
            a.x,
            a.y,
            a.z,
            b.x,
            b.y,
            b.z
        );
    }
    s
}

/// One row per chord; missing depths are empty fields.
pub fn segments_csv(segments: &[StationSegment]) -> String {
    let mut s = String::from("station,x1,y1,d1,x2,y2,d2,theta\n");
    for g in segments {
        s += &format!(
            "{},{},{},{},{},{},{},{}\n",
            g.station_index,
            g.p1.x,
            g.p1.y,
            opt(g.d1),
            g.p2.x,
            g.p2.y,
            opt(g.d2),
            g.theta
        );
    }
    s
}

pub fn skeleton_csv(skel: &Skeleton) -> String {
    let mut s = String::from("index,x,y,radius\n");
    for (i, p) in skel.points.iter().enumerate() {
        let r = skel.radius.as_ref().map(|r| r[i]);
        s += &format!("{},{},{},{}\n", i, p.x, p.y, opt(r));
    }
    s
}
