//! Reduced two-atom state for two atoms, each resonantly coupled to its own
//! thermal cavity, starting from `(|ee> + |gg>)/sqrt(2)`.
//!
//! The coefficients are thermal averages over the photon numbers `m`, `n` of
//! the two cavities.  Every summand factorizes into a cavity-1 factor times a
//! cavity-2 factor, so each double series is evaluated as a product of single
//! series:
//!
//! ```text
//! a = 1/2 [ C1 C2 + S1 S2 ]              C = sum P(m) cos^2(sqrt(m+1) g t)
//! b = 1/2 [ C1 C2' + S1 S2' ]            S = sum P(m) sin^2(sqrt(m) g t)
//! c = 1/2 [ C1' C2 + S1' S2 ]            K = sum P(m) cos(sqrt(m+1) g t) cos(sqrt(m) g t)
//! d = 1/2 [ C1' C2' + S1' S2' ]          X' = W - X,  W = sum P(m)
//! w = 1/2 K1 K2,  z = 0
//! ```

use crate::error::{Error, Result};
use crate::xstate::{concurrence_xstate, discord_1norm_xstate, Tolerances, XState};

/// Default neglected thermal weight per cavity.
pub const DEFAULT_EPSILON: f64 = 1e-14;

/// Default hard cap on the number of retained photon numbers per cavity.
pub const DEFAULT_MAX_ORDER: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub nbar1: f64,
    pub nbar2: f64,
    pub g1: f64,
    pub g2: f64,
}

impl ModelParams {
    pub fn new(nbar1: f64, nbar2: f64, g1: f64, g2: f64) -> Result<Self> {
        for (name, v) in [("nbar1", nbar1), ("nbar2", nbar2)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParams(format!("{name} = {v} must be >= 0")));
            }
        }
        for (name, v) in [("g1", g1), ("g2", g2)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParams(format!("{name} = {v} must be > 0")));
            }
        }
        Ok(ModelParams {
            nbar1,
            nbar2,
            g1,
            g2,
        })
    }

    /// Equal couplings `g1 = g2 = 1`, so that `t` is the dimensionless `g t`.
    pub fn symmetric(nbar1: f64, nbar2: f64) -> Result<Self> {
        Self::new(nbar1, nbar2, 1.0, 1.0)
    }

    /// Cavity labels exchanged.
    pub fn swapped(&self) -> Self {
        ModelParams {
            nbar1: self.nbar2,
            nbar2: self.nbar1,
            g1: self.g2,
            g2: self.g1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cutoff {
    /// Keep enough terms that the neglected thermal weight of each cavity is
    /// at most this value.
    Epsilon(f64),
    /// Keep photon numbers `0..=m1` and `0..=m2`.
    Orders { m1: usize, m2: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationSpec {
    pub cutoff: Cutoff,
    pub max_order: usize,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        TruncationSpec {
            cutoff: Cutoff::Epsilon(DEFAULT_EPSILON),
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

impl TruncationSpec {
    pub fn epsilon(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParams(format!(
                "epsilon = {epsilon} must lie in (0, 1)"
            )));
        }
        Ok(TruncationSpec {
            cutoff: Cutoff::Epsilon(epsilon),
            ..Default::default()
        })
    }

    pub fn orders(m1: usize, m2: usize) -> Self {
        TruncationSpec {
            cutoff: Cutoff::Orders { m1, m2 },
            ..Default::default()
        }
    }

    /// Highest retained photon number for each cavity.
    pub fn resolve(&self, p: &ModelParams) -> Result<(usize, usize)> {
        let (m1, m2) = match self.cutoff {
            Cutoff::Epsilon(eps) => (
                truncation_order(p.nbar1, eps),
                truncation_order(p.nbar2, eps),
            ),
            Cutoff::Orders { m1, m2 } => (m1, m2),
        };
        for (order, nbar) in [(m1, p.nbar1), (m2, p.nbar2)] {
            if order > self.max_order {
                return Err(Error::TruncationCap {
                    order,
                    cap: self.max_order,
                    nbar,
                });
            }
        }
        Ok((m1, m2))
    }
}

/// `nbar^n / (1 + nbar)^(n + 1)`, with `0^0 = 1`.
pub fn thermal_weight(nbar: f64, n: usize) -> f64 {
    if nbar == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let ratio = nbar / (1.0 + nbar);
    ratio.powi(n as i32) / (1.0 + nbar)
}

/// Thermal weight beyond photon number `m`: `(nbar / (1 + nbar))^(m + 1)`.
pub fn thermal_tail(nbar: f64, m: usize) -> f64 {
    if nbar == 0.0 {
        return 0.0;
    }
    (nbar / (1.0 + nbar)).powi(m as i32 + 1)
}

/// Smallest `m` with `thermal_tail(nbar, m) <= epsilon`.
pub fn truncation_order(nbar: f64, epsilon: f64) -> usize {
    if nbar == 0.0 {
        return 0;
    }
    let ratio = nbar / (1.0 + nbar);
    let guess = (epsilon.ln() / ratio.ln()).ceil() - 1.0;
    let mut m = if guess.is_finite() && guess > 0.0 {
        guess as usize
    } else {
        0
    };
    // the logarithmic guess can be off by one in either direction
    while m > 0 && thermal_tail(nbar, m - 1) <= epsilon {
        m -= 1;
    }
    while thermal_tail(nbar, m) > epsilon {
        m += 1;
    }
    m
}

/// Single-cavity thermal averages feeding the coefficient products.
#[derive(Clone, Copy, Debug)]
struct ModeSums {
    /// Retained thermal weight.
    total: f64,
    /// `sum P cos^2(sqrt(m+1) x)`
    cos_up: f64,
    /// `sum P sin^2(sqrt(m) x)`
    sin_down: f64,
    /// `sum P cos(sqrt(m+1) x) cos(sqrt(m) x)`
    coherence: f64,
}

impl ModeSums {
    fn new(nbar: f64, gt: f64, order: usize) -> Self {
        let mut sums = ModeSums {
            total: 0.0,
            cos_up: 0.0,
            sin_down: 0.0,
            coherence: 0.0,
        };
        let mut lower = (0.0f64, 1.0f64); // sin, cos of sqrt(m) x at m = 0
        for m in 0..=order {
            let p = thermal_weight(nbar, m);
            if p == 0.0 {
                break;
            }
            let upper = (((m + 1) as f64).sqrt() * gt).sin_cos();
            sums.total += p;
            sums.cos_up += p * upper.1 * upper.1;
            sums.sin_down += p * lower.0 * lower.0;
            sums.coherence += p * upper.1 * lower.1;
            lower = upper;
        }
        sums
    }
}

/// The atomic X state at time `t` together with the truncation it used.
#[derive(Clone, Copy, Debug)]
pub struct AtomicState {
    pub state: XState,
    pub orders: (usize, usize),
    /// Neglected thermal weight of each cavity.
    pub tails: (f64, f64),
}

impl AtomicState {
    /// Upper bound on the error of every coefficient due to truncation.
    pub fn error_bound(&self) -> f64 {
        self.tails.0 + self.tails.1
    }

    /// Thermal weight missing from the truncated double series; the trace
    /// deficit equals exactly this value.
    pub fn missing_weight(&self) -> f64 {
        self.tails.0 + self.tails.1 - self.tails.0 * self.tails.1
    }
}

pub fn atomic_state(p: &ModelParams, t: f64, tr: &TruncationSpec) -> Result<AtomicState> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParams(format!("t = {t} must be >= 0")));
    }
    let (m1, m2) = tr.resolve(p)?;
    let one = ModeSums::new(p.nbar1, p.g1 * t, m1);
    let two = ModeSums::new(p.nbar2, p.g2 * t, m2);

    let (c1, s1) = (one.cos_up, one.sin_down);
    let (c2, s2) = (two.cos_up, two.sin_down);
    let (c1b, s1b) = (one.total - c1, one.total - s1);
    let (c2b, s2b) = (two.total - c2, two.total - s2);

    let a = 0.5 * (c1 * c2 + s1 * s2);
    let b = 0.5 * (c1 * c2b + s1 * s2b);
    let c = 0.5 * (c1b * c2 + s1b * s2);
    let d = 0.5 * (c1b * c2b + s1b * s2b);
    let w = 0.5 * one.coherence * two.coherence;

    let tails = (thermal_tail(p.nbar1, m1), thermal_tail(p.nbar2, m2));
    let missing = tails.0 + tails.1 - tails.0 * tails.1;
    let tol = Tolerances::DEFAULT.with_trace(Tolerances::DEFAULT.trace + missing);
    let state = XState::with_tolerances(a, b, c, d, w.into(), 0.0.into(), &tol)?;
    Ok(AtomicState {
        state,
        orders: (m1, m2),
        tails,
    })
}

/// The reduced two-atom state at time `t`.
pub fn atomic_xstate(p: &ModelParams, t: f64, tr: &TruncationSpec) -> Result<XState> {
    atomic_state(p, t, tr).map(|s| s.state)
}

/// Doubled discord and concurrence at one time point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measures {
    pub d1: f64,
    pub concurrence: f64,
}

/// Model shortcut: `d1 = 2|w|`, `C = 2 max(0, |w| - sqrt(bc))`.
pub fn measures_from_coherence(s: &XState) -> Measures {
    let w = s.w().norm();
    Measures {
        d1: 2.0 * w,
        concurrence: 2.0 * (w - (s.b() * s.c()).max(0.0).sqrt()).max(0.0),
    }
}

/// Both measures through the general X-state formulas.
pub fn measures_from_xstate(s: &XState) -> Result<Measures> {
    Ok(Measures {
        d1: discord_1norm_xstate(s)?,
        concurrence: concurrence_xstate(s),
    })
}

pub fn measures_at(p: &ModelParams, t: f64, tr: &TruncationSpec) -> Result<Measures> {
    let s = atomic_xstate(p, t, tr)?;
    measures_from_xstate(&s)
}
