//! Brute-force reference for the reduced atomic state.
//!
//! Builds the truncated Hilbert space of two atoms and two cavity modes, the
//! interaction Hamiltonian `sum_j g_j (sigma_j^+ a_j + h.c.)` as explicit matrix
//! elements, and evolves the thermal (x) thermal (x) Bell initial state by the
//! spectral decomposition of that matrix.  Nothing here uses the closed-form
//! Rabi solution of the model; the only structure exploited is that the
//! Hamiltonian splits into disconnected blocks, which are discovered from its
//! nonzero pattern.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector, Matrix4, SymmetricEigen};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::thermal::{
    atomic_xstate, thermal_weight, truncation_order, ModelParams, TruncationSpec,
};
use crate::xstate::{DensityMatrix4, Tolerances};

/// Neglected thermal weight tolerated by [`initial_state`].
pub const MAX_LEAKAGE: f64 = 1e-6;

/// Off-pattern magnitude above which a reduced state is not accepted as X form.
pub const X_FORM_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Excited = 0,
    Ground = 1,
}

impl Atom {
    fn from_bit(bit: usize) -> Self {
        if bit == 0 {
            Atom::Excited
        } else {
            Atom::Ground
        }
    }
}

/// Product basis `|s1, s2> (x) |m, n>` with `m < ncut1`, `n < ncut2`.
///
/// The flat index is `((s1 * 2 + s2) * ncut1 + m) * ncut2 + n`, so the atomic
/// part runs over `ee, eg, ge, gg` in the standard order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockBasis {
    pub ncut1: usize,
    pub ncut2: usize,
}

impl FockBasis {
    pub fn new(ncut1: usize, ncut2: usize) -> Result<Self> {
        if ncut1 == 0 || ncut2 == 0 {
            return Err(Error::InvalidParams("Fock cutoffs must be >= 1".into()));
        }
        Ok(FockBasis { ncut1, ncut2 })
    }

    /// Cutoff `truncation_order(nbar, 1e-12) + 2` per mode; the extra levels
    /// hold the photon emitted by an initially excited atom.
    pub fn for_params(p: &ModelParams) -> Self {
        FockBasis {
            ncut1: truncation_order(p.nbar1, 1e-12) + 2,
            ncut2: truncation_order(p.nbar2, 1e-12) + 2,
        }
    }

    pub fn dim(&self) -> usize {
        4 * self.ncut1 * self.ncut2
    }

    pub fn index(&self, s1: Atom, s2: Atom, m: usize, n: usize) -> usize {
        debug_assert!(m < self.ncut1 && n < self.ncut2);
        (((s1 as usize) * 2 + s2 as usize) * self.ncut1 + m) * self.ncut2 + n
    }

    pub fn label(&self, idx: usize) -> (Atom, Atom, usize, usize) {
        let n = idx % self.ncut2;
        let rest = idx / self.ncut2;
        let m = rest % self.ncut1;
        let atoms = rest / self.ncut1;
        (Atom::from_bit(atoms / 2), Atom::from_bit(atoms % 2), m, n)
    }

    /// Index of the atomic pair (0..4) and of the photon pair.
    fn split(&self, idx: usize) -> (usize, usize) {
        let photons = self.ncut1 * self.ncut2;
        (idx / photons, idx % photons)
    }

    /// Total excitation number: excited atoms plus photons.
    pub fn excitation(&self, idx: usize) -> usize {
        let (s1, s2, m, n) = self.label(idx);
        (s1 == Atom::Excited) as usize + (s2 == Atom::Excited) as usize + m + n
    }

    /// Thermal weight retained by the cutoffs.
    pub fn captured_weight(&self, p: &ModelParams) -> f64 {
        let one: f64 = (0..self.ncut1).map(|m| thermal_weight(p.nbar1, m)).sum();
        let two: f64 = (0..self.ncut2).map(|n| thermal_weight(p.nbar2, n)).sum();
        one * two
    }
}

/// Real symmetric operator stored as its nonzero entries (both triangles).
#[derive(Clone, Debug)]
pub struct Hamiltonian {
    basis: FockBasis,
    entries: Vec<(usize, usize, f64)>,
}

impl Hamiltonian {
    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    pub fn element(&self, i: usize, j: usize) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.0 == i && e.1 == j)
            .map(|e| e.2)
            .sum()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let dim = self.basis.dim();
        let mut h = DMatrix::zeros(dim, dim);
        for &(i, j, v) in &self.entries {
            h[(i, j)] += v;
        }
        h
    }

    /// `max |[H, N]_ij|` for the total excitation number `N`, which is
    /// diagonal, so `[H, N]_ij = H_ij (N_j - N_i)`.
    pub fn excitation_commutator_max(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(i, j, v)| {
                let ni = self.basis.excitation(i) as f64;
                let nj = self.basis.excitation(j) as f64;
                (v * (nj - ni)).abs()
            })
            .fold(0.0, f64::max)
    }
}

pub fn build_hamiltonian(p: &ModelParams, basis: &FockBasis) -> Hamiltonian {
    let mut entries = Vec::new();
    for idx in 0..basis.dim() {
        let (s1, s2, m, n) = basis.label(idx);
        // sigma_1^+ a_1 : |g, m> -> sqrt(m) |e, m - 1>
        if s1 == Atom::Ground && m >= 1 {
            let to = basis.index(Atom::Excited, s2, m - 1, n);
            let v = p.g1 * (m as f64).sqrt();
            entries.push((to, idx, v));
            entries.push((idx, to, v));
        }
        if s2 == Atom::Ground && n >= 1 {
            let to = basis.index(s1, Atom::Excited, m, n - 1);
            let v = p.g2 * (n as f64).sqrt();
            entries.push((to, idx, v));
            entries.push((idx, to, v));
        }
    }
    entries.sort_by_key(|e| (e.0, e.1));
    Hamiltonian {
        basis: *basis,
        entries,
    }
}

/// One weighted pure state of a mixture, stored sparsely.
#[derive(Clone, Debug)]
pub struct Component {
    pub weight: f64,
    pub amplitudes: Vec<(usize, C64)>,
}

impl Component {
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|(_, a)| a.norm_sqr()).sum()
    }
}

/// Mixed state over a [`FockBasis`] as an ensemble of pure components.
#[derive(Clone, Debug)]
pub struct DensityOp {
    basis: FockBasis,
    components: Vec<Component>,
    leakage: f64,
}

impl DensityOp {
    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Thermal weight that did not fit inside the cutoffs.
    pub fn leakage(&self) -> f64 {
        self.leakage
    }

    pub fn trace(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.weight * c.norm_sqr())
            .sum()
    }

    pub fn excitation_expectation(&self) -> f64 {
        self.components
            .iter()
            .map(|c| {
                c.weight
                    * c.amplitudes
                        .iter()
                        .map(|&(i, a)| a.norm_sqr() * self.basis.excitation(i) as f64)
                        .sum::<f64>()
            })
            .sum()
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let dim = self.basis.dim();
        let mut rho = DMatrix::zeros(dim, dim);
        for comp in &self.components {
            for &(i, ai) in &comp.amplitudes {
                for &(j, aj) in &comp.amplitudes {
                    rho[(i, j)] += ai * aj.conj() * comp.weight;
                }
            }
        }
        rho
    }

    /// Trace over both cavity modes.
    pub fn reduce_to_atoms(&self) -> Matrix4<C64> {
        let mut out = Matrix4::<C64>::zeros();
        for comp in &self.components {
            let mut by_photons: BTreeMap<usize, [C64; 4]> = BTreeMap::new();
            for &(idx, amp) in &comp.amplitudes {
                let (atoms, photons) = self.basis.split(idx);
                by_photons.entry(photons).or_insert([C64::new(0.0, 0.0); 4])[atoms] += amp;
            }
            for amps in by_photons.values() {
                for s in 0..4 {
                    for r in 0..4 {
                        out[(s, r)] += amps[s] * amps[r].conj() * comp.weight;
                    }
                }
            }
        }
        out
    }
}

/// Thermal (x) thermal (x) Bell state, refusing cutoffs that drop more than
/// [`MAX_LEAKAGE`] of the thermal weight.
pub fn initial_state(p: &ModelParams, basis: &FockBasis) -> Result<DensityOp> {
    initial_state_with_limit(p, basis, MAX_LEAKAGE)
}

pub fn initial_state_with_limit(
    p: &ModelParams,
    basis: &FockBasis,
    max_leakage: f64,
) -> Result<DensityOp> {
    let captured = basis.captured_weight(p);
    let leakage = 1.0 - captured;
    if leakage > max_leakage {
        return Err(Error::Leakage {
            captured,
            leakage,
            limit: max_leakage,
        });
    }
    let amp = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut components = Vec::new();
    for m in 0..basis.ncut1 {
        for n in 0..basis.ncut2 {
            let weight = thermal_weight(p.nbar1, m) * thermal_weight(p.nbar2, n);
            if weight == 0.0 {
                continue;
            }
            components.push(Component {
                weight,
                amplitudes: vec![
                    (basis.index(Atom::Excited, Atom::Excited, m, n), amp),
                    (basis.index(Atom::Ground, Atom::Ground, m, n), amp),
                ],
            });
        }
    }
    Ok(DensityOp {
        basis: *basis,
        components,
        leakage,
    })
}

/// Eigen-decomposition of one connected block of the Hamiltonian.
struct Block {
    indices: Vec<usize>,
    energies: DVector<f64>,
    vectors: DMatrix<f64>,
}

/// Time-evolution operator `exp(-i H t)` assembled from the spectral
/// decompositions of the disconnected blocks of `H`.
pub struct Evolver {
    basis: FockBasis,
    blocks: Vec<Block>,
    /// `(block, position inside block)` for every basis index.
    location: Vec<(usize, usize)>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Evolver {
    pub fn new(h: &Hamiltonian) -> Self {
        let dim = h.basis.dim();
        let mut parent: Vec<usize> = (0..dim).collect();
        for &(i, j, _) in &h.entries {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for idx in 0..dim {
            let root = find(&mut parent, idx);
            groups.entry(root).or_default().push(idx);
        }
        let mut location = vec![(0, 0); dim];
        let mut members: Vec<Vec<usize>> = Vec::with_capacity(groups.len());
        for (b, indices) in groups.into_values().enumerate() {
            for (k, &idx) in indices.iter().enumerate() {
                location[idx] = (b, k);
            }
            members.push(indices);
        }
        let mut dense: Vec<DMatrix<f64>> = members
            .iter()
            .map(|ix| DMatrix::zeros(ix.len(), ix.len()))
            .collect();
        for &(i, j, v) in &h.entries {
            let (b, ki) = location[i];
            let (_, kj) = location[j];
            dense[b][(ki, kj)] += v;
        }
        let blocks = members
            .into_par_iter()
            .zip(dense.into_par_iter())
            .map(|(indices, m)| {
                let eig = SymmetricEigen::new(m);
                Block {
                    indices,
                    energies: eig.eigenvalues,
                    vectors: eig.eigenvectors,
                }
            })
            .collect();
        Evolver {
            basis: h.basis,
            blocks,
            location,
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    fn evolve_component(&self, comp: &Component, t: f64) -> Component {
        let mut per_block: BTreeMap<usize, DVector<C64>> = BTreeMap::new();
        for &(idx, amp) in &comp.amplitudes {
            let (b, k) = self.location[idx];
            let len = self.blocks[b].indices.len();
            per_block.entry(b).or_insert_with(|| DVector::zeros(len))[k] += amp;
        }
        let mut amplitudes = Vec::new();
        for (b, psi) in per_block {
            let block = &self.blocks[b];
            let v = &block.vectors;
            let len = block.indices.len();
            // coefficients in the eigenbasis, then phase and transform back
            let mut coeff = DVector::<C64>::zeros(len);
            for k in 0..len {
                let mut acc = C64::new(0.0, 0.0);
                for i in 0..len {
                    acc += psi[i] * v[(i, k)];
                }
                let phase = C64::from_polar(1.0, -block.energies[k] * t);
                coeff[k] = acc * phase;
            }
            for i in 0..len {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..len {
                    acc += coeff[k] * v[(i, k)];
                }
                amplitudes.push((block.indices[i], acc));
            }
        }
        Component {
            weight: comp.weight,
            amplitudes,
        }
    }

    /// `exp(-i H t) rho exp(i H t)`.
    pub fn evolve(&self, rho: &DensityOp, t: f64) -> DensityOp {
        assert_eq!(rho.basis, self.basis, "state and Hamiltonian bases differ");
        let components = rho
            .components
            .iter()
            .map(|c| self.evolve_component(c, t))
            .collect();
        DensityOp {
            basis: self.basis,
            components,
            leakage: rho.leakage,
        }
    }
}

fn validate_reduced(m: Matrix4<C64>, leakage: f64) -> Result<DensityMatrix4> {
    let tol = Tolerances::DEFAULT.with_trace(Tolerances::DEFAULT.trace + leakage);
    let rho = DensityMatrix4::with_tolerances(m, &tol)?;
    let residual = rho.x_form_residual();
    if residual > X_FORM_TOLERANCE {
        return Err(Error::NotXForm(residual));
    }
    Ok(rho)
}

/// Reduced atomic state at time `t` from full evolution in `basis`.
pub fn evolve_and_reduce(p: &ModelParams, t: f64, basis: &FockBasis) -> Result<DensityMatrix4> {
    let rho0 = initial_state(p, basis)?;
    let evolver = Evolver::new(&build_hamiltonian(p, basis));
    let rho = evolver.evolve(&rho0, t);
    validate_reduced(rho.reduce_to_atoms(), rho.leakage)
}

pub const COEFFICIENT_NAMES: [&str; 6] = ["a", "b", "c", "d", "w", "z"];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoefficientDeviation {
    pub name: &'static str,
    pub max_abs: f64,
    pub at_time: f64,
}

/// Analytic coefficients against the brute-force reference over a time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviationReport {
    pub coefficients: Vec<CoefficientDeviation>,
    /// Largest off-X-pattern entry of any reduced oracle state.
    pub x_form_residual: f64,
    /// Thermal weight dropped by the Fock cutoffs.
    pub oracle_leakage: f64,
    /// Truncation error bound of the analytic series.
    pub analytic_bound: f64,
    pub basis: FockBasis,
    pub points: usize,
}

impl DeviationReport {
    pub fn max_deviation(&self) -> f64 {
        self.coefficients
            .iter()
            .map(|c| c.max_abs)
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for DeviationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "oracle basis: ncut1={} ncut2={} (dim {}), {} time points",
            self.basis.ncut1,
            self.basis.ncut2,
            self.basis.dim(),
            self.points
        )?;
        writeln!(f, "oracle leakage bound: {:.3e}", self.oracle_leakage)?;
        writeln!(f, "analytic truncation bound: {:.3e}", self.analytic_bound)?;
        for c in &self.coefficients {
            writeln!(
                f,
                "  {}: max |analytic - oracle| = {:.3e} at t = {:.6}",
                c.name, c.max_abs, c.at_time
            )?;
        }
        writeln!(f, "X-form residual: {:.3e}", self.x_form_residual)?;
        write!(f, "max deviation: {:.3e}", self.max_deviation())
    }
}

/// Sweeps `times`, comparing the analytic X-state coefficients with the
/// partial trace of the brute-force evolution in `basis`.
pub fn compare_with_analytic(
    p: &ModelParams,
    times: &[f64],
    tr: &TruncationSpec,
    basis: &FockBasis,
) -> Result<DeviationReport> {
    let rho0 = initial_state(p, basis)?;
    let evolver = Evolver::new(&build_hamiltonian(p, basis));
    let analytic_bound = {
        let (m1, m2) = tr.resolve(p)?;
        crate::thermal::thermal_tail(p.nbar1, m1) + crate::thermal::thermal_tail(p.nbar2, m2)
    };

    let rows: Vec<([f64; 6], f64)> = times
        .par_iter()
        .map(|&t| -> Result<([f64; 6], f64)> {
            let rho = evolver.evolve(&rho0, t);
            let reduced = DensityMatrix4::with_tolerances(
                rho.reduce_to_atoms(),
                &Tolerances::DEFAULT.with_trace(Tolerances::DEFAULT.trace + rho.leakage),
            )?;
            let (a, b, c, d, w, z) = reduced.x_entries();
            let s = atomic_xstate(p, t, tr)?;
            Ok((
                [
                    (s.a() - a).abs(),
                    (s.b() - b).abs(),
                    (s.c() - c).abs(),
                    (s.d() - d).abs(),
                    (s.w() - w).norm(),
                    (s.z() - z).norm(),
                ],
                reduced.x_form_residual(),
            ))
        })
        .collect::<Result<_>>()?;

    let mut coefficients: Vec<CoefficientDeviation> = COEFFICIENT_NAMES
        .iter()
        .map(|&name| CoefficientDeviation {
            name,
            max_abs: 0.0,
            at_time: times.first().copied().unwrap_or(0.0),
        })
        .collect();
    let mut x_form_residual = 0.0f64;
    for (&t, (devs, residual)) in times.iter().zip(&rows) {
        for (slot, &dev) in coefficients.iter_mut().zip(devs) {
            if dev > slot.max_abs {
                slot.max_abs = dev;
                slot.at_time = t;
            }
        }
        x_form_residual = x_form_residual.max(*residual);
    }
    Ok(DeviationReport {
        coefficients,
        x_form_residual,
        oracle_leakage: rho0.leakage,
        analytic_bound,
        basis: *basis,
        points: times.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_map_is_bijective() {
        let basis = FockBasis::new(3, 5).unwrap();
        assert_eq!(basis.dim(), 60);
        for idx in 0..basis.dim() {
            let (s1, s2, m, n) = basis.label(idx);
            assert_eq!(basis.index(s1, s2, m, n), idx);
        }
        assert_eq!(basis.index(Atom::Excited, Atom::Excited, 0, 0), 0);
        assert_eq!(basis.index(Atom::Ground, Atom::Ground, 2, 4), 59);
    }

    #[test]
    fn zero_cutoff_rejected() {
        assert!(FockBasis::new(0, 3).is_err());
    }

    #[test]
    fn single_photon_coupling() {
        let p = ModelParams::new(0.0, 0.0, 0.7, 1.3).unwrap();
        let basis = FockBasis::new(2, 2).unwrap();
        let h = build_hamiltonian(&p, &basis);
        let e0 = basis.index(Atom::Excited, Atom::Ground, 0, 0);
        let g1 = basis.index(Atom::Ground, Atom::Ground, 1, 0);
        assert_eq!(h.element(e0, g1), 0.7);
        assert_eq!(h.element(g1, e0), 0.7);
        let e2 = basis.index(Atom::Ground, Atom::Excited, 0, 0);
        let g2 = basis.index(Atom::Ground, Atom::Ground, 0, 1);
        assert_eq!(h.element(e2, g2), 1.3);
        // no photon-number-changing term without an atomic flip
        let other = basis.index(Atom::Ground, Atom::Ground, 0, 0);
        assert_eq!(h.element(other, g1), 0.0);
    }

    #[test]
    fn ladder_matrix_elements() {
        let p = ModelParams::new(0.0, 0.0, 0.9, 1.0).unwrap();
        let basis = FockBasis::new(6, 3).unwrap();
        let h = build_hamiltonian(&p, &basis);
        for m in 0..basis.ncut1 - 1 {
            for n in 0..basis.ncut2 {
                let e = basis.index(Atom::Excited, Atom::Ground, m, n);
                let g = basis.index(Atom::Ground, Atom::Ground, m + 1, n);
                assert!((h.element(e, g) - 0.9 * ((m + 1) as f64).sqrt()).abs() < 1e-15);
            }
        }
        let dense = h.to_dense();
        assert_eq!(dense, dense.transpose());
    }

    #[test]
    fn excitation_number_is_conserved() {
        let p = ModelParams::new(0.5, 1.0, 1.0, 0.8).unwrap();
        let basis = FockBasis::new(6, 7).unwrap();
        let h = build_hamiltonian(&p, &basis);
        assert!(h.excitation_commutator_max() < 1e-13);
        // dense cross-check of the commutator
        let hd = h.to_dense();
        let nd = DMatrix::from_diagonal(&DVector::from_iterator(
            basis.dim(),
            (0..basis.dim()).map(|i| basis.excitation(i) as f64),
        ));
        let comm = &hd * &nd - &nd * &hd;
        assert!(comm.amax() < 1e-13);
    }

    #[test]
    fn vacuum_initial_state_is_bell_projector() {
        let p = ModelParams::symmetric(0.0, 0.0).unwrap();
        let basis = FockBasis::new(2, 2).unwrap();
        let rho = initial_state(&p, &basis).unwrap();
        let dense = rho.to_dense();
        let ee = basis.index(Atom::Excited, Atom::Excited, 0, 0);
        let gg = basis.index(Atom::Ground, Atom::Ground, 0, 0);
        for i in 0..basis.dim() {
            for j in 0..basis.dim() {
                let want = if [ee, gg].contains(&i) && [ee, gg].contains(&j) {
                    0.5
                } else {
                    0.0
                };
                assert!((dense[(i, j)].re - want).abs() < 1e-15);
                assert_eq!(dense[(i, j)].im, 0.0);
            }
        }
        assert_eq!(rho.leakage(), 0.0);
    }

    #[test]
    fn initial_trace_is_truncated_geometric_product() {
        let p = ModelParams::symmetric(0.7, 1.2).unwrap();
        let basis = FockBasis::new(60, 80).unwrap();
        let rho = initial_state(&p, &basis).unwrap();
        let r1: f64 = 0.7 / 1.7;
        let r2: f64 = 1.2 / 2.2;
        let want = (1.0 - r1.powi(60)) * (1.0 - r2.powi(80));
        assert!((rho.trace() - want).abs() < 1e-14);
    }

    #[test]
    fn leakage_is_reported() {
        let p = ModelParams::symmetric(1.0, 1.0).unwrap();
        let rho = initial_state(&p, &FockBasis::new(40, 40).unwrap()).unwrap();
        assert!(rho.trace() >= 1.0 - 1e-11);
        assert!(rho.leakage() > 0.0 && rho.leakage() < 2e-12);
        let err = initial_state(&p, &FockBasis::new(2, 2).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Leakage { .. }));
    }

    #[test]
    fn blocks_follow_excitation_number() {
        let p = ModelParams::symmetric(0.0, 0.0).unwrap();
        let basis = FockBasis::new(4, 4).unwrap();
        let ev = Evolver::new(&build_hamiltonian(&p, &basis));
        for block in &ev.blocks {
            let n0 = basis.excitation(block.indices[0]);
            assert!(block.indices.iter().all(|&i| basis.excitation(i) == n0));
        }
    }

    #[test]
    fn t_zero_is_bell() {
        let p = ModelParams::symmetric(0.3, 0.6).unwrap();
        let rho = evolve_and_reduce(&p, 0.0, &FockBasis::for_params(&p)).unwrap();
        let bell = crate::xstate::XState::bell().to_matrix();
        assert!((rho.matrix() - bell).camax() < 1e-11);
    }
}
