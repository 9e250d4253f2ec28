//! 3D diameters, length and frustum-sum volume from station chords.

use serde::{Deserialize, Serialize};

use crate::camera::CameraIntrinsics;
use crate::error::{Error, Result};
use crate::geom::Point3;
use crate::segments::StationSegment;

/// A chord deprojected to 3D.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Station3d {
    pub station_index: usize,
    pub endpoints: [Point3; 2],
    pub midpoint: Point3,
    pub diameter: f64,
}

/// Deprojects both endpoints of a chord, and the station it was cast from
/// at the mean endpoint depth. A missing endpoint depth is replaced by the
/// other one; `None` if both are missing.
///
/// The station rather than the chord's pixel midpoint anchors the 3D
/// midpoint. They coincide on a centered axis, but at the two end stations
/// the chord runs along the end face and its midpoint can land anywhere on
/// it.
pub fn deproject_segment(
    seg: &StationSegment,
    intr: &CameraIntrinsics,
) -> Result<Option<Station3d>> {
    let (d1, d2) = match (seg.d1, seg.d2) {
        (Some(a), Some(b)) => (a, b),
        (Some(a), None) => (a, a),
        (None, Some(b)) => (b, b),
        (None, None) => return Ok(None),
    };
    let x1 = intr.deproject(&seg.p1, d1)?;
    let x2 = intr.deproject(&seg.p2, d2)?;
    let midpoint = intr.deproject(&seg.station, 0.5 * (d1 + d2))?;
    Ok(Some(Station3d {
        station_index: seg.station_index,
        endpoints: [x1, x2],
        midpoint,
        diameter: (x1 - x2).norm(),
    }))
}

/// Diameter of each chord that has depth at one end at least. Returns the
/// deprojected stations and the indices of the dropped ones.
pub fn diameters(
    segments: &[StationSegment],
    intr: &CameraIntrinsics,
) -> Result<(Vec<Station3d>, Vec<usize>)> {
    let mut kept = Vec::with_capacity(segments.len());
    let mut dropped = Vec::new();
    for seg in segments {
        match deproject_segment(seg, intr)? {
            Some(s) => kept.push(s),
            None => dropped.push(seg.station_index),
        }
    }
    if kept.is_empty() {
        return Err(Error::NoValidSegments);
    }
    Ok((kept, dropped))
}

/// Polyline length through consecutive midpoints.
pub fn length(midpoints: &[Point3]) -> Result<f64> {
    if midpoints.len() < 2 {
        return Err(Error::TooFewStations {
            needed: 2,
            have: midpoints.len(),
        });
    }
    Ok(midpoints.windows(2).map(|w| (w[1] - w[0]).norm()).sum())
}

/// Volume of a conical frustum with end diameters `d1`, `d2` and height `l`.
pub fn frustum_volume(d1: f64, d2: f64, l: f64) -> f64 {
    let (r1, r2) = (0.5 * d1, 0.5 * d2);
    std::f64::consts::PI / 3.0 * l * (r1 * r1 + r1 * r2 + r2 * r2)
}

/// Sum of frusta between consecutive stations. Terms touching a
/// zero diameter are skipped.
pub fn volume(diameters: &[f64], midpoints: &[Point3]) -> Result<f64> {
    if diameters.len() != midpoints.len() {
        return Err(Error::InvalidInput(format!(
            "{} diameters but {} midpoints",
            diameters.len(),
            midpoints.len()
        )));
    }
    if diameters.len() < 2 {
        return Err(Error::TooFewStations {
            needed: 2,
            have: diameters.len(),
        });
    }
    Ok((0..diameters.len() - 1)
        .filter(|&k| diameters[k] > 0.0 && diameters[k + 1] > 0.0)
        .map(|k| {
            frustum_volume(
                diameters[k],
                diameters[k + 1],
                (midpoints[k + 1] - midpoints[k]).norm(),
            )
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementReport {
    pub station_indices: Vec<usize>,
    /// Meters, one per surviving station.
    pub diameters: Vec<f64>,
    /// Meters.
    pub length: f64,
    /// Cubic meters.
    pub volume: f64,
    pub volume_ml: f64,
    pub endpoints3d: Vec<[Point3; 2]>,
    pub midpoints3d: Vec<Point3>,
    /// Stations left out: no depth at either end, or zero diameter.
    pub dropped_stations: Vec<usize>,
}

impl MeasurementReport {
    pub fn len(&self) -> usize {
        self.diameters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diameters.is_empty()
    }
}

/// Full measurement from chords: deproject, drop degenerate stations, then
/// length and volume over what is left.
pub fn measure(segments: &[StationSegment], intr: &CameraIntrinsics) -> Result<MeasurementReport> {
    let (stations, mut dropped) = diameters(segments, intr)?;
    let (kept, degenerate): (Vec<_>, Vec<_>) = stations.into_iter().partition(|s| s.diameter > 0.0);
    dropped.extend(degenerate.iter().map(|s| s.station_index));
    dropped.sort_unstable();
    if kept.is_empty() {
        return Err(Error::NoValidSegments);
    }
    let diameters: Vec<f64> = kept.iter().map(|s| s.diameter).collect();
    let midpoints: Vec<Point3> = kept.iter().map(|s| s.midpoint).collect();
    let length = length(&midpoints)?;
    let volume = volume(&diameters, &midpoints)?;
    Ok(MeasurementReport {
        station_indices: kept.iter().map(|s| s.station_index).collect(),
        diameters,
        length,
        volume,
        volume_ml: volume * 1e6,
        endpoints3d: kept.iter().map(|s| s.endpoints).collect(),
        midpoints3d: midpoints,
        dropped_stations: dropped,
    })
}
