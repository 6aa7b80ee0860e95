//! Two-qubit states and the two correlation measures.
//!
//! Basis ordering everywhere is `|ee>, |eg>, |ge>, |gg>` with `|e>` mapped to
//! the `+1` eigenvector of `sigma_z`.  The reported discord uses the doubled
//! convention: the trace-norm distance to the closest classical-quantum state
//! is multiplied by 2 so that a Bell state scores 1.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Numerical tolerances used when validating states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub trace: f64,
    pub herm: f64,
    pub psd: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        trace: 1e-12,
        herm: 1e-12,
        psd: 1e-10,
    };

    pub fn with_trace(self, trace: f64) -> Self {
        Tolerances { trace, ..self }
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Threshold on the closed-form discord denominator below which the analytic
/// limit is used.
pub const DISCORD_DEGENERACY: f64 = 1e-12;

/// X-shaped two-qubit density matrix
///
/// ```text
/// | a   0   0   w |
/// | 0   b   z   0 |
/// | 0   z*  c   0 |
/// | w*  0   0   d |
/// ```
///
/// Always valid once constructed: populations are (numerically) non-negative,
/// the trace is one and both coherence blocks are positive semidefinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XState {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    w: C64,
    z: C64,
}

impl XState {
    pub fn new(a: f64, b: f64, c: f64, d: f64, w: C64, z: C64) -> Result<Self> {
        Self::with_tolerances(a, b, c, d, w, z, &Tolerances::DEFAULT)
    }

    /// X state with real coherences, the form produced by the cavity model.
    pub fn real(a: f64, b: f64, c: f64, d: f64, w: f64, z: f64) -> Result<Self> {
        Self::new(a, b, c, d, C64::new(w, 0.0), C64::new(z, 0.0))
    }

    pub fn with_tolerances(
        a: f64,
        b: f64,
        c: f64,
        d: f64,
        w: C64,
        z: C64,
        tol: &Tolerances,
    ) -> Result<Self> {
        let values = [a, b, c, d, w.re, w.im, z.re, z.im];
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        for (name, p) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if p < -tol.psd {
                return Err(Error::InvalidState(format!(
                    "population {name} = {p:e} < 0"
                )));
            }
        }
        let trace = a + b + c + d;
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::InvalidState(format!("trace {trace} != 1")));
        }
        if w.norm_sqr() > a.max(0.0) * d.max(0.0) + tol.psd {
            return Err(Error::InvalidState(format!(
                "|w|^2 = {:e} exceeds a*d = {:e}",
                w.norm_sqr(),
                a * d
            )));
        }
        if z.norm_sqr() > b.max(0.0) * c.max(0.0) + tol.psd {
            return Err(Error::InvalidState(format!(
                "|z|^2 = {:e} exceeds b*c = {:e}",
                z.norm_sqr(),
                b * c
            )));
        }
        Ok(XState { a, b, c, d, w, z })
    }

    /// The Bell state `(|ee> + |gg>)/sqrt(2)`.
    pub fn bell() -> Self {
        XState {
            a: 0.5,
            b: 0.0,
            c: 0.0,
            d: 0.5,
            w: C64::new(0.5, 0.0),
            z: C64::new(0.0, 0.0),
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn w(&self) -> C64 {
        self.w
    }
    pub fn z(&self) -> C64 {
        self.z
    }

    /// The full 4x4 matrix in the standard basis.
    pub fn to_matrix(&self) -> Matrix4<C64> {
        let r = |x: f64| C64::new(x, 0.0);
        let o = C64::new(0.0, 0.0);
        #[rustfmt::skip]
        let m = Matrix4::new(
            r(self.a),      o,              o,         self.w,
            o,              r(self.b),      self.z,    o,
            o,              self.z.conj(),  r(self.c), o,
            self.w.conj(),  o,              o,         r(self.d),
        );
        m
    }

    pub fn to_density(&self) -> DensityMatrix4 {
        DensityMatrix4 {
            m: self.to_matrix(),
        }
    }
}

/// Local Bloch vectors and correlation matrix of a two-qubit state,
/// `rho = 1/4 [I + x.sigma (x) I + I (x) y.sigma + sum t_jk sigma_j (x) sigma_k]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochForm {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl BlochForm {
    pub fn x3(&self) -> f64 {
        self.x[2]
    }
    pub fn y3(&self) -> f64 {
        self.y[2]
    }
    pub fn t11(&self) -> f64 {
        self.t[0][0]
    }
    pub fn t22(&self) -> f64 {
        self.t[1][1]
    }
    pub fn t33(&self) -> f64 {
        self.t[2][2]
    }

    /// Rebuilds the density matrix from the Pauli expansion.
    pub fn to_matrix(&self) -> Matrix4<C64> {
        let id = pauli(0);
        let mut m = id.kronecker(&id);
        for j in 0..3 {
            m += pauli(j + 1).kronecker(&id) * C64::new(self.x[j], 0.0);
            m += id.kronecker(&pauli(j + 1)) * C64::new(self.y[j], 0.0);
            for k in 0..3 {
                m += pauli(j + 1).kronecker(&pauli(k + 1)) * C64::new(self.t[j][k], 0.0);
            }
        }
        m * C64::new(0.25, 0.0)
    }
}

/// Pauli matrices with `pauli(0)` the identity, then x, y, z.
pub fn pauli(j: usize) -> Matrix2<C64> {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match j {
        0 => Matrix2::new(l, o, o, l),
        1 => Matrix2::new(o, l, l, o),
        2 => Matrix2::new(o, -i, i, o),
        3 => Matrix2::new(l, o, o, -l),
        _ => panic!("pauli index {j} out of range"),
    }
}

pub fn bloch_decompose(s: &XState) -> BlochForm {
    let (a, b, c, d, w, z) = (s.a, s.b, s.c, s.d, s.w, s.z);
    let t = [
        [2.0 * (w + z).re, 2.0 * (z - w).im, 0.0],
        [-2.0 * (w + z).im, 2.0 * (z - w).re, 0.0],
        [0.0, 0.0, a - b - c + d],
    ];
    BlochForm {
        x: [0.0, 0.0, a + b - c - d],
        y: [0.0, 0.0, a - b + c - d],
        t,
    }
}

/// Singular values of the transverse (xy) block of the correlation matrix,
/// largest first.
fn transverse_singular_values(t: &[[f64; 3]; 3]) -> (f64, f64) {
    let (p, q, r, s) = (t[0][0], t[0][1], t[1][0], t[1][1]);
    let (g1, g2) = if q == 0.0 && r == 0.0 {
        (p.abs(), s.abs())
    } else {
        let sum_sq = p * p + q * q + r * r + s * s;
        let det = p * s - q * r;
        let disc = (sum_sq * sum_sq - 4.0 * det * det).max(0.0).sqrt();
        (
            (0.5 * (sum_sq + disc)).max(0.0).sqrt(),
            (0.5 * (sum_sq - disc)).max(0.0).sqrt(),
        )
    };
    if g1 >= g2 {
        (g1, g2)
    } else {
        (g2, g1)
    }
}

/// Trace-norm geometric discord of an X state (doubled convention).
///
/// Closed form for X states in terms of the transverse correlations
/// `g1 >= g2`, the longitudinal correlation `t33` and the local `x3`:
///
/// ```text
/// f1 = max(t33^2, g2^2 + x3^2),  f2 = min(t33^2, g1^2)
/// D  = 1/2 sqrt((g1^2 f1 - g2^2 f2) / (f1 - f2 + g1^2 - g2^2))
/// ```
///
/// When `g1 == g2` the ratio is identically `g1^2`, so `D = g1/2`.
pub fn discord_1norm_xstate(s: &XState) -> Result<f64> {
    let bf = bloch_decompose(s);
    let (g1, g2) = transverse_singular_values(&bf.t);
    let (g1s, g2s) = (g1 * g1, g2 * g2);
    let half = if g1s - g2s <= DISCORD_DEGENERACY * g1s.max(f64::MIN_POSITIVE) {
        0.5 * g1
    } else {
        let t33s = bf.t33() * bf.t33();
        let f1 = t33s.max(g2s + bf.x3() * bf.x3());
        let f2 = t33s.min(g1s);
        let den = f1 - f2 + g1s - g2s;
        if den.abs() < DISCORD_DEGENERACY {
            0.5 * g1
        } else {
            let rad = (g1s * f1 - g2s * f2) / den;
            if rad < -DISCORD_DEGENERACY {
                return Err(Error::NegativeRadicand(rad));
            }
            0.5 * rad.max(0.0).sqrt()
        }
    };
    Ok(2.0 * half)
}

pub fn concurrence_xstate(s: &XState) -> f64 {
    let ad = (s.a * s.d).max(0.0).sqrt();
    let bc = (s.b * s.c).max(0.0).sqrt();
    2.0 * (s.z.norm() - ad).max(s.w.norm() - bc).max(0.0)
}

/// General (possibly non-X) two-qubit density matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix4 {
    m: Matrix4<C64>,
}

impl DensityMatrix4 {
    pub fn new(m: Matrix4<C64>) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(m: Matrix4<C64>, tol: &Tolerances) -> Result<Self> {
        if m.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let herm = (m - m.adjoint())
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        if herm > tol.herm {
            return Err(Error::InvalidState(format!("not Hermitian ({herm:e})")));
        }
        let trace = m.trace();
        if (trace.re - 1.0).abs() > tol.trace || trace.im.abs() > tol.trace {
            return Err(Error::InvalidState(format!("trace {trace} != 1")));
        }
        let hm = (m + m.adjoint()) * C64::new(0.5, 0.0);
        let min_eig = SymmetricEigen::new(hm).eigenvalues.min();
        if min_eig < -tol.psd {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(DensityMatrix4 { m: hm })
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.m
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix4 {
            m: Matrix4::identity() * C64::new(0.25, 0.0),
        }
    }

    /// Largest magnitude among the eight entries that vanish for an X state.
    pub fn x_form_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let on_pattern = i == j || i + j == 3;
                if !on_pattern {
                    worst = worst.max(self.m[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// Reads off the X-pattern entries, ignoring everything else.
    pub fn x_entries(&self) -> (f64, f64, f64, f64, C64, C64) {
        let m = &self.m;
        (
            m[(0, 0)].re,
            m[(1, 1)].re,
            m[(2, 2)].re,
            m[(3, 3)].re,
            m[(0, 3)],
            m[(1, 2)],
        )
    }

    /// `tr(rho P)` for a Hermitian observable `P`.
    pub fn expectation(&self, obs: &Matrix4<C64>) -> f64 {
        (self.m * obs).trace().re
    }
}

/// Wootters concurrence of an arbitrary two-qubit state.
///
/// With `rho = W W^dagger` from the eigendecomposition, the square roots of the
/// eigenvalues of `rho (sy sy) rho* (sy sy)` are the singular values of the
/// symmetric matrix `W^T (sy sy) W`.  Eigenvalues below `tol.psd` in magnitude
/// are treated as exact zeros.
pub fn concurrence_general(rho: &DensityMatrix4) -> Result<f64> {
    let psd = Tolerances::DEFAULT.psd;
    let eig = SymmetricEigen::new(rho.m);
    let mut w = eig.eigenvectors;
    for (k, &p) in eig.eigenvalues.iter().enumerate() {
        if p < -psd {
            return Err(Error::InvalidState(format!("negative eigenvalue {p:e}")));
        }
        let amp = if p.abs() <= psd { 0.0 } else { p.sqrt() };
        let mut col = w.column_mut(k);
        col *= C64::new(amp, 0.0);
    }
    let yy = pauli(2).kronecker(&pauli(2));
    let tau = w.transpose() * yy * w;
    let mut sv: Vec<f64> = tau.singular_values().iter().copied().collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok((sv[0] - sv[1] - sv[2] - sv[3]).max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    fn vacuum_quarter() -> XState {
        XState::real(0.125, 0.125, 0.125, 0.625, 0.25, 0.0).unwrap()
    }

    #[test]
    fn bloch_of_bell_state() {
        let bf = bloch_decompose(&XState::bell());
        assert_eq!(bf.x3(), 0.0);
        assert_eq!(bf.y3(), 0.0);
        assert_eq!(bf.t11(), 1.0);
        assert_eq!(bf.t22(), -1.0);
        assert_eq!(bf.t33(), 1.0);
    }

    #[test]
    fn bloch_of_product_state() {
        let s = XState::real(1.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let bf = bloch_decompose(&s);
        assert_eq!((bf.x3(), bf.y3(), bf.t33()), (1.0, 1.0, 1.0));
        assert_eq!((bf.t11(), bf.t22()), (0.0, 0.0));
    }

    #[test]
    fn bloch_matches_pauli_traces() {
        let s = XState::new(
            0.2,
            0.3,
            0.1,
            0.4,
            C64::new(0.1, -0.15),
            C64::new(-0.05, 0.12),
        )
        .unwrap();
        let rho = s.to_density();
        let bf = bloch_decompose(&s);
        let id = pauli(0);
        for j in 0..3 {
            let xj = rho.expectation(&pauli(j + 1).kronecker(&id));
            let yj = rho.expectation(&id.kronecker(&pauli(j + 1)));
            assert!(close(xj, bf.x[j], 1e-15), "x{j}");
            assert!(close(yj, bf.y[j], 1e-15), "y{j}");
            for k in 0..3 {
                let tjk = rho.expectation(&pauli(j + 1).kronecker(&pauli(k + 1)));
                assert!(close(tjk, bf.t[j][k], 1e-15), "t{j}{k}");
            }
        }
    }

    #[test]
    fn bloch_of_vacuum_quarter_period() {
        let bf = bloch_decompose(&vacuum_quarter());
        assert!(close(bf.x3(), -0.5, 1e-15));
        assert!(close(bf.y3(), -0.5, 1e-15));
        assert!(close(bf.t11(), 0.5, 1e-15));
        assert!(close(bf.t22(), -0.5, 1e-15));
        assert!(close(bf.t33(), 0.5, 1e-15));
    }

    #[test]
    fn discord_examples() {
        assert_eq!(discord_1norm_xstate(&XState::bell()).unwrap(), 1.0);
        assert!(close(
            discord_1norm_xstate(&vacuum_quarter()).unwrap(),
            0.5,
            1e-15
        ));
        let product = XState::real(1.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(discord_1norm_xstate(&product).unwrap(), 0.0);
    }

    #[test]
    fn discord_uses_ordered_transverse_correlations() {
        // Bell-diagonal state with |t| = (0.3, 0.6, 0): the discord is set by the
        // intermediate correlation, 0.3 (doubled).  Both labelings must agree.
        let from_t = |t11: f64, t22: f64| {
            let w = (t11 - t22) / 4.0;
            let z = (t11 + t22) / 4.0;
            XState::real(0.25, 0.25, 0.25, 0.25, w, z).unwrap()
        };
        let d1 = discord_1norm_xstate(&from_t(0.3, 0.6)).unwrap();
        let d2 = discord_1norm_xstate(&from_t(0.6, 0.3)).unwrap();
        assert!(close(d1, 0.3, 1e-15));
        assert!(close(d2, 0.3, 1e-15));
    }

    #[test]
    fn concurrence_examples() {
        assert_eq!(concurrence_xstate(&XState::bell()), 1.0);
        assert!(close(concurrence_xstate(&vacuum_quarter()), 0.25, 1e-15));
        let mixed = XState::real(0.25, 0.25, 0.25, 0.25, 0.0, 0.0).unwrap();
        assert_eq!(concurrence_xstate(&mixed), 0.0);
    }

    #[test]
    fn general_concurrence_examples() {
        let bell = concurrence_general(&XState::bell().to_density()).unwrap();
        assert!(close(bell, 1.0, 1e-14));
        let mixed = concurrence_general(&DensityMatrix4::maximally_mixed()).unwrap();
        assert!(close(mixed, 0.0, 1e-15));
        let q = concurrence_general(&vacuum_quarter().to_density()).unwrap();
        assert!(close(q, 0.25, 1e-14));
    }

    #[test]
    fn rejects_bad_states() {
        assert!(XState::real(0.5, 0.0, 0.0, 0.4, 0.0, 0.0).is_err());
        assert!(XState::real(0.6, 0.0, 0.0, 0.6, 0.0, 0.0).is_err());
        assert!(XState::real(0.5, 0.0, 0.0, 0.5, 0.6, 0.0).is_err());
        assert!(XState::real(-0.1, 0.6, 0.0, 0.5, 0.0, 0.0).is_err());
        assert!(XState::real(0.5, 0.25, 0.25, 0.0, 0.0, 0.3).is_err());
        assert!(XState::real(f64::NAN, 0.0, 0.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn rejects_bad_density_matrices() {
        let mut m = Matrix4::<C64>::identity() * C64::new(0.25, 0.0);
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(DensityMatrix4::new(m).is_err());
        let neg = Matrix4::from_diagonal(&nalgebra::Vector4::new(
            C64::new(0.6, 0.0),
            C64::new(0.5, 0.0),
            C64::new(0.0, 0.0),
            C64::new(-0.1, 0.0),
        ));
        assert!(DensityMatrix4::new(neg).is_err());
    }

    #[test]
    fn x_form_residual_detects_off_pattern() {
        assert_eq!(XState::bell().to_density().x_form_residual(), 0.0);
        let mut m = DensityMatrix4::maximally_mixed().matrix().clone_owned();
        m[(0, 1)] = C64::new(0.01, 0.0);
        m[(1, 0)] = C64::new(0.01, 0.0);
        let rho = DensityMatrix4::new(m).unwrap();
        assert!(close(rho.x_form_residual(), 0.01, 1e-18));
    }
}
