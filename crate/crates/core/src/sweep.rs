//! Parameter-grid evaluation: measure surfaces over (n̄, gt), sudden-death
//! intervals of the concurrence, and the robust revival time near gt = 3π.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::thermal::{measures_at, Measures, ModelParams, TruncationSpec};

/// Concurrence values below this count as zero for sudden-death detection.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-12;

/// Bisection target for sudden-death interval endpoints (in gt).
pub const ENDPOINT_RESOLUTION: f64 = 1e-4;

/// Evenly spaced points `start + i * step` for `i = 0..len`, with `len =
/// floor((stop - start) / step) + 1`.  A `stop` that sits on the lattice up to
/// rounding is included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid1D {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err(Error::InvalidGrid("non-finite bound".into()));
        }
        if step <= 0.0 {
            return Err(Error::InvalidGrid(format!("step {step} must be > 0")));
        }
        if stop < start {
            return Err(Error::InvalidGrid(format!(
                "empty grid: stop {stop} < start {start}"
            )));
        }
        Ok(Grid1D { start, stop, step })
    }

    pub fn single(x: f64) -> Self {
        Grid1D {
            start: x,
            stop: x,
            step: 1.0,
        }
    }

    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}

/// Worker pool for grid evaluations.  Results are always gathered in grid
/// order, so the thread count never changes the output.
#[derive(Default)]
pub struct SweepEngine {
    pool: Option<rayon::ThreadPool>,
}

impl SweepEngine {
    /// `None` uses the global rayon pool.
    pub fn new(threads: Option<usize>) -> Result<Self> {
        let pool = match threads {
            None => None,
            Some(0) => return Err(Error::InvalidParams("thread count must be >= 1".into())),
            Some(n) => Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| Error::InvalidParams(e.to_string()))?,
            ),
        };
        Ok(SweepEngine { pool })
    }

    /// Runs `f` inside this engine's pool.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }
}

/// Couplings and truncation shared by all points of a sweep.  Times are
/// expressed as `gt = g1 t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelDefaults {
    /// `g2 / g1`.
    pub g_ratio: f64,
    pub truncation: TruncationSpec,
}

impl Default for ModelDefaults {
    fn default() -> Self {
        ModelDefaults {
            g_ratio: 1.0,
            truncation: TruncationSpec::default(),
        }
    }
}

impl ModelDefaults {
    pub fn params(&self, nbar1: f64, nbar2: f64) -> Result<ModelParams> {
        ModelParams::new(nbar1, nbar2, 1.0, self.g_ratio)
    }

    pub fn measures(&self, nbar1: f64, nbar2: f64, gt: f64) -> Result<Measures> {
        measures_at(&self.params(nbar1, nbar2)?, gt, &self.truncation)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub nbar1: f64,
    pub nbar2: f64,
    pub gt: f64,
    pub d1: f64,
    pub concurrence: f64,
}

/// Measures on the grid `nbar1 x nbar2 x gt` (or `nbar x gt` along the
/// diagonal `nbar1 = nbar2`), ordered with the photon numbers outer and time
/// inner.
pub fn sweep_time_mpn(
    engine: &SweepEngine,
    time: &Grid1D,
    nbar: &Grid1D,
    diagonal: bool,
    defaults: &ModelDefaults,
) -> Result<Vec<SweepRecord>> {
    let nbars = nbar.points();
    let pairs: Vec<(f64, f64)> = if diagonal {
        nbars.iter().map(|&n| (n, n)).collect()
    } else {
        nbars
            .iter()
            .flat_map(|&n1| nbars.iter().map(move |&n2| (n1, n2)))
            .collect()
    };
    let times = time.points();
    let jobs: Vec<(f64, f64, f64)> = pairs
        .iter()
        .flat_map(|&(n1, n2)| times.iter().map(move |&gt| (n1, n2, gt)))
        .collect();
    engine.install(|| {
        jobs.par_iter()
            .map(|&(nbar1, nbar2, gt)| {
                let m = defaults.measures(nbar1, nbar2, gt)?;
                Ok(SweepRecord {
                    nbar1,
                    nbar2,
                    gt,
                    d1: m.d1,
                    concurrence: m.concurrence,
                })
            })
            .collect()
    })
}

/// Maximal runs (at least two consecutive grid points) where `f < threshold`,
/// with interior endpoints located by bisection against the neighbouring
/// above-threshold grid point.
pub fn zero_intervals<F>(f: F, time: &Grid1D, threshold: f64) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> Result<f64>,
{
    let points = time.points();
    let below: Vec<bool> = points
        .iter()
        .map(|&x| f(x).map(|v| v < threshold))
        .collect::<Result<_>>()?;

    // boundary between an above-threshold point and a below-threshold point
    let refine = |mut above: f64, mut zero: f64| -> Result<f64> {
        while (above - zero).abs() > ENDPOINT_RESOLUTION {
            let mid = 0.5 * (above + zero);
            if f(mid)? < threshold {
                zero = mid;
            } else {
                above = mid;
            }
        }
        Ok(0.5 * (above + zero))
    };

    let mut intervals = Vec::new();
    let mut i = 0;
    while i < points.len() {
        if !below[i] {
            i += 1;
            continue;
        }
        let first = i;
        while i + 1 < points.len() && below[i + 1] {
            i += 1;
        }
        let last = i;
        i += 1;
        if last == first {
            continue;
        }
        let start = if first == 0 {
            points[0]
        } else {
            refine(points[first - 1], points[first])?
        };
        let end = if last + 1 == points.len() {
            points[last]
        } else {
            refine(points[last + 1], points[last])?
        };
        intervals.push((start, end));
    }
    Ok(intervals)
}

/// Intervals of entanglement sudden death: gt ranges where the concurrence
/// stays below `threshold`.
pub fn esd_intervals(
    p: &ModelParams,
    time: &Grid1D,
    threshold: f64,
    tr: &TruncationSpec,
) -> Result<Vec<(f64, f64)>> {
    if threshold.is_nan() || threshold <= 0.0 {
        return Err(Error::InvalidParams(format!(
            "zero threshold {threshold} must be > 0"
        )));
    }
    // gt is measured in units of 1/g1
    let g1 = p.g1;
    zero_intervals(
        |gt| measures_at(p, gt / g1, tr).map(|m| m.concurrence),
        time,
        threshold,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Measure {
    Discord,
    Concurrence,
}

impl Measure {
    pub fn as_str(&self) -> &'static str {
        match self {
            Measure::Discord => "discord",
            Measure::Concurrence => "concurrence",
        }
    }

    pub fn pick(&self, m: &Measures) -> f64 {
        match self {
            Measure::Discord => m.d1,
            Measure::Concurrence => m.concurrence,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "discord" | "d1" => Ok(Measure::Discord),
            "concurrence" | "c" => Ok(Measure::Concurrence),
            other => Err(Error::InvalidParams(format!("unknown measure '{other}'"))),
        }
    }
}

/// Search window for the robust revival time, in units of π.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RobustWindow {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    /// Peaks below this value mean the revival has disappeared.
    pub presence: f64,
}

impl Default for RobustWindow {
    fn default() -> Self {
        RobustWindow {
            start: 2.5,
            stop: 3.5,
            step: 0.025,
            presence: 1e-3,
        }
    }
}

impl RobustWindow {
    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.start, self.stop, self.step)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RobustTimeRecord {
    pub nbar1: f64,
    pub nbar2: f64,
    pub measure: Measure,
    pub gtau_over_pi: f64,
    pub peak_value: f64,
    pub present: bool,
}

/// Grid argmax of the chosen measure over the window (ties go to the later
/// time).
pub fn robust_time(
    p: &ModelParams,
    measure: Measure,
    window: &RobustWindow,
    tr: &TruncationSpec,
) -> Result<RobustTimeRecord> {
    let grid = window.grid()?;
    let mut best = (grid.point(0), f64::NEG_INFINITY);
    for x in grid.points() {
        let v = measure.pick(&measures_at(p, x * PI / p.g1, tr)?);
        if v >= best.1 {
            best = (x, v);
        }
    }
    Ok(RobustTimeRecord {
        nbar1: p.nbar1,
        nbar2: p.nbar2,
        measure,
        gtau_over_pi: best.0,
        peak_value: best.1,
        present: best.1 >= window.presence,
    })
}

/// [`robust_time`] over `nbar1 x nbar2`, `nbar1` outer.
pub fn robust_time_map(
    engine: &SweepEngine,
    nbar1: &Grid1D,
    nbar2: &Grid1D,
    measure: Measure,
    window: &RobustWindow,
    defaults: &ModelDefaults,
) -> Result<Vec<RobustTimeRecord>> {
    let jobs: Vec<(f64, f64)> = nbar1
        .points()
        .into_iter()
        .flat_map(|a| nbar2.points().into_iter().map(move |b| (a, b)))
        .collect();
    engine.install(|| {
        jobs.par_iter()
            .map(|&(a, b)| {
                robust_time(
                    &defaults.params(a, b)?,
                    measure,
                    window,
                    &defaults.truncation,
                )
            })
            .collect()
    })
}
