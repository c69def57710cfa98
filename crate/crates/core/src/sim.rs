//! Exact Lindblad evolution of small systems.
//!
//! The density matrix is dense (2^N x 2^N) and the right-hand side is applied
//! term by term through Pauli words: a word is a bit-flip mask plus a phase
//! per basis state, so each Hamiltonian or dissipator term costs O(4^N)
//! regardless of how many sites it touches. The 4^N x 4^N superoperator is
//! never materialized in the evolution path; it exists only in the
//! matrix-exponential oracle used to cross-check the integrator on up to four
//! qubits.
//!
//! Basis convention: qubit 1 is the leftmost bit of a bitstring and the most
//! significant bit of a basis index; bit value 0 is the +1 eigenstate of Z.

use crate::error::{CoreError, Result};
use crate::model::{all_pairs, LiouvillianModel};
use crate::pauli::{identity, kron, sigma, state_density, PauliAxis, PauliState, AXES, IM};
use ndarray::Array2;
use num_complex::Complex64 as C64;
use rand::distr::weighted::WeightedIndex;
use rand::prelude::*;

/// Measurement times t_s = s * dt for s = 1..=n_t (t = 0 is not on the grid).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub dt: f64,
    pub n_t: usize,
}

impl TimeGrid {
    pub fn new(dt: f64, n_t: usize) -> Result<Self> {
        if !(dt > 0.0) || n_t == 0 {
            return Err(CoreError::Validation(format!(
                "time grid needs dt > 0 and n_t >= 1, got dt = {dt}, n_t = {n_t}"
            )));
        }
        Ok(TimeGrid { dt, n_t })
    }

    pub fn from_t_final(t_f: f64, n_t: usize) -> Result<Self> {
        if !(t_f > 0.0) {
            return Err(CoreError::Validation(format!("t_f must be positive, got {t_f}")));
        }
        TimeGrid::new(t_f / n_t as f64, n_t)
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.n_t).map(move |s| s as f64 * self.dt)
    }
}

/// A Pauli word on N qubits as permutation + phase: W |k> = phase[k] |k ^ flip>.
#[derive(Debug, Clone)]
pub struct PauliWord {
    n_qubits: usize,
    sites: Vec<(usize, PauliAxis)>,
    flip: usize,
    phase: Vec<C64>,
}

impl PauliWord {
    /// Build a word from (qubit, axis) factors. Sites must be distinct.
    pub fn new(n_qubits: usize, sites: &[(usize, PauliAxis)]) -> Self {
        let mut sorted: Vec<(usize, PauliAxis)> = sites.to_vec();
        sorted.sort_by_key(|(q, _)| *q);
        for w in sorted.windows(2) {
            assert_ne!(w[0].0, w[1].0, "duplicate site in Pauli word");
        }
        let dim = 1usize << n_qubits;
        let bit = |q: usize| 1usize << (n_qubits - 1 - q);
        let mut flip = 0usize;
        let mut sign_mask = 0usize;
        let mut n_y = 0u32;
        for &(q, axis) in &sorted {
            assert!(q < n_qubits);
            match axis {
                PauliAxis::X => flip |= bit(q),
                PauliAxis::Y => {
                    flip |= bit(q);
                    sign_mask |= bit(q);
                    n_y += 1;
                }
                PauliAxis::Z => sign_mask |= bit(q),
            }
        }
        let i_pow = [C64::new(1.0, 0.0), IM, C64::new(-1.0, 0.0), -IM][(n_y % 4) as usize];
        let mut phase = Vec::with_capacity(dim);
        for k in 0..dim {
            let neg = (k & sign_mask).count_ones() % 2 == 1;
            phase.push(if neg { -i_pow } else { i_pow });
        }
        PauliWord { n_qubits, sites: sorted, flip, phase }
    }

    pub fn single(n_qubits: usize, qubit: usize, axis: PauliAxis) -> Self {
        PauliWord::new(n_qubits, &[(qubit, axis)])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Dense 2^N x 2^N matrix of the word (test and oracle use only).
    pub fn dense(&self) -> Array2<C64> {
        let dim = 1usize << self.n_qubits;
        let mut m = Array2::zeros((dim, dim));
        for k in 0..dim {
            m[[k ^ self.flip, k]] = self.phase[k];
        }
        m
    }

    /// Matrix product self * other as (scalar, word).
    pub fn times(&self, other: &PauliWord) -> (C64, PauliWord) {
        assert_eq!(self.n_qubits, other.n_qubits);
        let mut scalar = C64::new(1.0, 0.0);
        let mut sites: Vec<(usize, PauliAxis)> = Vec::new();
        let mut rhs: std::collections::BTreeMap<usize, PauliAxis> =
            other.sites.iter().copied().collect();
        for &(q, a) in &self.sites {
            match rhs.remove(&q) {
                None => sites.push((q, a)),
                Some(b) => {
                    if a == b {
                        // sigma_a^2 = 1: site drops out.
                    } else {
                        let (ph, c) = pauli_product(a, b);
                        scalar *= ph;
                        sites.push((q, c));
                    }
                }
            }
        }
        sites.extend(rhs);
        (scalar, PauliWord::new(self.n_qubits, &sites))
    }
}

/// sigma_a sigma_b for a != b: returns (i eps_{abc}, sigma_c).
fn pauli_product(a: PauliAxis, b: PauliAxis) -> (C64, PauliAxis) {
    use PauliAxis::*;
    match (a, b) {
        (X, Y) => (IM, Z),
        (Y, X) => (-IM, Z),
        (Y, Z) => (IM, X),
        (Z, Y) => (-IM, X),
        (Z, X) => (IM, Y),
        (X, Z) => (-IM, Y),
        _ => unreachable!("equal axes handled by the caller"),
    }
}

struct DissTerm {
    p: PauliWord,
    q: PauliWord,
    weight: C64,
    /// q p = anti_scalar * anti_word; the anticommutator part of the term.
    anti_word: PauliWord,
    anti_scalar: C64,
}

/// A Liouvillian compiled to per-term Pauli actions for the integrator.
pub struct LindbladTerms {
    n_qubits: usize,
    ham: Vec<(PauliWord, f64)>,
    diss: Vec<DissTerm>,
}

impl LindbladTerms {
    pub fn new(model: &LiouvillianModel) -> Self {
        let n = model.n_qubits();
        let mut ham = Vec::new();
        for i in 0..n {
            for a in AXES {
                let h = model.h_single(i, a);
                if h != 0.0 {
                    ham.push((PauliWord::single(n, i, a), h));
                }
            }
        }
        for (i, j) in all_pairs(n) {
            for a in AXES {
                for b in AXES {
                    let h = model.h_pair(i, a, j, b);
                    if h != 0.0 {
                        ham.push((PauliWord::new(n, &[(i, a), (j, b)]), h));
                    }
                }
            }
        }
        let mut diss = Vec::new();
        let d = model.dissipator_matrix();
        for p_ix in 0..3 * n {
            for q_ix in 0..3 * n {
                let weight = d[[p_ix, q_ix]];
                if weight == C64::new(0.0, 0.0) {
                    continue;
                }
                let p = PauliWord::single(n, p_ix / 3, AXES[p_ix % 3]);
                let q = PauliWord::single(n, q_ix / 3, AXES[q_ix % 3]);
                let (anti_scalar, anti_word) = q.times(&p);
                diss.push(DissTerm { p, q, weight, anti_word, anti_scalar });
            }
        }
        LindbladTerms { n_qubits: n, ham, diss }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// out = -i[H, rho] + dissipator(rho), written from scratch.
    pub fn rhs(&self, rho: &[C64], out: &mut [C64]) {
        let dim = 1usize << self.n_qubits;
        debug_assert_eq!(rho.len(), dim * dim);
        debug_assert_eq!(out.len(), dim * dim);
        out.fill(C64::new(0.0, 0.0));
        for (w, h) in &self.ham {
            // out += -i h (W rho - rho W)
            let c = C64::new(0.0, -h);
            add_left(out, rho, w, c, dim);
            add_right(out, rho, w, -c, dim);
        }
        for term in &self.diss {
            // out += weight * p rho q - (weight * anti_scalar / 2) {anti_word rho + rho anti_word}
            add_sandwich(out, rho, &term.p, &term.q, term.weight, dim);
            let c = term.weight * term.anti_scalar * -0.5;
            add_left(out, rho, &term.anti_word, c, dim);
            add_right(out, rho, &term.anti_word, c, dim);
        }
    }
}

/// out += c * (W rho)
fn add_left(out: &mut [C64], rho: &[C64], w: &PauliWord, c: C64, dim: usize) {
    for r in 0..dim {
        let fr = r ^ w.flip;
        let scale = c * w.phase[fr];
        let dst = &mut out[r * dim..(r + 1) * dim];
        let src = &rho[fr * dim..(fr + 1) * dim];
        for (d, s) in dst.iter_mut().zip(src) {
            *d += scale * s;
        }
    }
}

/// out += c * (rho W)
fn add_right(out: &mut [C64], rho: &[C64], w: &PauliWord, c: C64, dim: usize) {
    for r in 0..dim {
        let dst = &mut out[r * dim..(r + 1) * dim];
        let src = &rho[r * dim..(r + 1) * dim];
        for col in 0..dim {
            dst[col] += c * w.phase[col] * src[col ^ w.flip];
        }
    }
}

/// out += c * (P rho Q)
fn add_sandwich(out: &mut [C64], rho: &[C64], p: &PauliWord, q: &PauliWord, c: C64, dim: usize) {
    for r in 0..dim {
        let fr = r ^ p.flip;
        let scale = c * p.phase[fr];
        let dst = &mut out[r * dim..(r + 1) * dim];
        let src = &rho[fr * dim..(fr + 1) * dim];
        for col in 0..dim {
            dst[col] += scale * q.phase[col] * src[col ^ q.flip];
        }
    }
}

fn axpy(y: &mut [C64], a: f64, x: &[C64]) {
    let a = C64::new(a, 0.0);
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Force Hermiticity and unit trace; returns the trace found.
fn hermitize_normalize(rho: &mut Array2<C64>) -> Result<f64> {
    let dim = rho.dim().0;
    for r in 0..dim {
        let diag = rho[[r, r]];
        rho[[r, r]] = C64::new(diag.re, 0.0);
        for c in (r + 1)..dim {
            let avg = (rho[[r, c]] + rho[[c, r]].conj()) * 0.5;
            rho[[r, c]] = avg;
            rho[[c, r]] = avg.conj();
        }
    }
    let tr: f64 = (0..dim).map(|r| rho[[r, r]].re).sum();
    if !(tr.is_finite() && tr > 0.5 && tr < 2.0) {
        return Err(CoreError::Numerical(format!(
            "state trace drifted to {tr}; the integration step is too coarse"
        )));
    }
    let inv = C64::new(1.0 / tr, 0.0);
    rho.mapv_inplace(|v| v * inv);
    Ok(tr)
}

fn validate_state(rho: &Array2<C64>, n_qubits: usize) -> Result<()> {
    let dim = 1usize << n_qubits;
    if rho.dim() != (dim, dim) {
        return Err(CoreError::DimensionMismatch(format!(
            "state must be {dim}x{dim} for {n_qubits} qubits, got {:?}",
            rho.dim()
        )));
    }
    let tr: C64 = (0..dim).map(|r| rho[[r, r]]).sum();
    if (tr - C64::new(1.0, 0.0)).norm() > 1e-9 {
        return Err(CoreError::Validation(format!("initial state trace is {tr}, expected 1")));
    }
    Ok(())
}

/// Integrate d rho/dt with classical RK4 at fixed step dt / substeps and call
/// `observe(s, rho)` at every grid time t_s, after re-Hermitizing and
/// renormalizing the state. The observer sees s = 1..=n_t.
pub fn evolve<F: FnMut(usize, &Array2<C64>)>(
    terms: &LindbladTerms,
    rho0: &Array2<C64>,
    grid: &TimeGrid,
    substeps: usize,
    mut observe: F,
) -> Result<()> {
    if substeps == 0 {
        return Err(CoreError::Validation("substeps must be at least 1".into()));
    }
    validate_state(rho0, terms.n_qubits)?;
    let dim = 1usize << terms.n_qubits;
    let h = grid.dt / substeps as f64;

    let mut rho = rho0.clone();
    let mut k = vec![C64::new(0.0, 0.0); dim * dim];
    let mut sum = k.clone();
    let mut tmp = k.clone();

    for s in 1..=grid.n_t {
        for _ in 0..substeps {
            let state = rho.as_slice().expect("standard layout");
            terms.rhs(state, &mut k); // k1
            sum.copy_from_slice(&k);
            tmp.copy_from_slice(state);
            axpy(&mut tmp, 0.5 * h, &k);
            terms.rhs(&tmp.clone(), &mut k); // k2
            axpy(&mut sum, 2.0, &k);
            tmp.copy_from_slice(state);
            axpy(&mut tmp, 0.5 * h, &k);
            terms.rhs(&tmp.clone(), &mut k); // k3
            axpy(&mut sum, 2.0, &k);
            tmp.copy_from_slice(state);
            axpy(&mut tmp, h, &k);
            terms.rhs(&tmp.clone(), &mut k); // k4
            axpy(&mut sum, 1.0, &k);
            let state = rho.as_slice_mut().expect("standard layout");
            axpy(state, h / 6.0, &sum);
        }
        hermitize_normalize(&mut rho)?;
        observe(s, &rho);
    }
    Ok(())
}

/// Tensor product of single-qubit preparation states; `preps[q]` is the
/// preparation-alphabet index of qubit q (qubit 0 ends up leftmost).
pub fn product_state_density(preps: &[u8]) -> Array2<C64> {
    let mut rho = Array2::from_elem((1, 1), C64::new(1.0, 0.0));
    for &p in preps {
        rho = kron(&rho, &state_density(PauliState::from_index(p as usize)));
    }
    rho
}

/// tr(rho W) for a Pauli word; real for Hermitian states.
pub fn exact_expectation(rho: &Array2<C64>, w: &PauliWord) -> f64 {
    let dim = 1usize << w.n_qubits;
    debug_assert_eq!(rho.dim(), (dim, dim));
    let flat = rho.as_slice().expect("standard layout");
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..dim {
        acc += flat[r * dim + (r ^ w.flip)] * w.phase[r];
    }
    acc.re
}

// ---------------------------------------------------------------------------
// Measurement-basis rotation and sampling
// ---------------------------------------------------------------------------

/// The 2x2 rotation bringing a measurement axis onto Z: returns V with
/// V sigma_axis V^dag = sigma_z, so sampling diag(V rho V^dag) in the
/// computational basis measures the axis.
fn meas_rotation(axis: PauliAxis) -> Option<[[C64; 2]; 2]> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match axis {
        // Hadamard
        PauliAxis::X => Some([
            [C64::new(s, 0.0), C64::new(s, 0.0)],
            [C64::new(s, 0.0), C64::new(-s, 0.0)],
        ]),
        // H S^dag
        PauliAxis::Y => Some([
            [C64::new(s, 0.0), C64::new(0.0, -s)],
            [C64::new(s, 0.0), C64::new(0.0, s)],
        ]),
        PauliAxis::Z => None,
    }
}

/// rho -> V rho V^dag for the per-qubit measurement axes (x, y or z each).
pub fn rotate_to_measurement_basis(rho: &Array2<C64>, meas_axes: &[u8]) -> Array2<C64> {
    let n = meas_axes.len();
    let dim = 1usize << n;
    assert_eq!(rho.dim(), (dim, dim));
    let mut m = rho.clone();
    for (q, &axis_ix) in meas_axes.iter().enumerate() {
        let Some(v) = meas_rotation(PauliAxis::from_index(axis_ix as usize)) else {
            continue;
        };
        let bit = 1usize << (n - 1 - q);
        let flat = m.as_slice_mut().expect("standard layout");
        // Left multiply rows by V.
        for r0 in 0..dim {
            if r0 & bit != 0 {
                continue;
            }
            let r1 = r0 | bit;
            for c in 0..dim {
                let x0 = flat[r0 * dim + c];
                let x1 = flat[r1 * dim + c];
                flat[r0 * dim + c] = v[0][0] * x0 + v[0][1] * x1;
                flat[r1 * dim + c] = v[1][0] * x0 + v[1][1] * x1;
            }
        }
        // Right multiply columns by V^dag.
        for c0 in 0..dim {
            if c0 & bit != 0 {
                continue;
            }
            let c1 = c0 | bit;
            for r in 0..dim {
                let x0 = flat[r * dim + c0];
                let x1 = flat[r * dim + c1];
                flat[r * dim + c0] = x0 * v[0][0].conj() + x1 * v[0][1].conj();
                flat[r * dim + c1] = x0 * v[1][0].conj() + x1 * v[1][1].conj();
            }
        }
    }
    m
}

/// Computational-basis outcome probabilities after rotating each qubit's
/// measurement axis onto Z.
pub fn outcome_probabilities(rho: &Array2<C64>, meas_axes: &[u8]) -> Result<Vec<f64>> {
    let rotated = rotate_to_measurement_basis(rho, meas_axes);
    let dim = rotated.dim().0;
    let mut probs = Vec::with_capacity(dim);
    let mut total = 0.0;
    for k in 0..dim {
        let p = rotated[[k, k]].re;
        if p < -1e-8 {
            return Err(CoreError::Numerical(format!(
                "outcome probability {p:.3e} is significantly negative"
            )));
        }
        let p = p.max(0.0);
        probs.push(p);
        total += p;
    }
    if !(total.is_finite() && total > 0.0) {
        return Err(CoreError::Numerical("outcome probabilities sum to zero".into()));
    }
    for p in &mut probs {
        *p /= total;
    }
    Ok(probs)
}

/// Draw `n_shots` measurement outcomes. Each outcome is the basis index,
/// which doubles as the bit mask of the bitstring (qubit 1 = most significant
/// bit, bit 0 = +1 outcome of Z).
pub fn sample_bitstrings<R: Rng>(
    rho: &Array2<C64>,
    meas_axes: &[u8],
    n_shots: usize,
    rng: &mut R,
) -> Result<Vec<u32>> {
    let probs = outcome_probabilities(rho, meas_axes)?;
    let dist = WeightedIndex::new(&probs)
        .map_err(|e| CoreError::Numerical(format!("cannot sample outcomes: {e}")))?;
    Ok((0..n_shots).map(|_| dist.sample(rng) as u32).collect())
}

// ---------------------------------------------------------------------------
// Superoperator matrix-exponential oracle (N <= 4)
// ---------------------------------------------------------------------------

/// The dense 4^N x 4^N generator in the row-major vectorization
/// vec(rho)[r * 2^N + c] = rho[r][c], so vec(A rho B) = (A ox B^T) vec(rho).
pub fn liouvillian_superoperator(model: &LiouvillianModel) -> Result<Array2<C64>> {
    let n = model.n_qubits();
    if n > 4 {
        return Err(CoreError::Validation(format!(
            "superoperator oracle supports up to 4 qubits, got {n}"
        )));
    }
    let dim = 1usize << n;
    let eye = identity(dim);

    // Dense H from its Pauli words.
    let mut h = Array2::<C64>::zeros((dim, dim));
    for i in 0..n {
        for a in AXES {
            let v = model.h_single(i, a);
            if v != 0.0 {
                h.scaled_add(C64::new(v, 0.0), &PauliWord::single(n, i, a).dense());
            }
        }
    }
    for (i, j) in all_pairs(n) {
        for a in AXES {
            for b in AXES {
                let v = model.h_pair(i, a, j, b);
                if v != 0.0 {
                    h.scaled_add(C64::new(v, 0.0), &PauliWord::new(n, &[(i, a), (j, b)]).dense());
                }
            }
        }
    }

    let mut s = kron(&h, &eye);
    s.scaled_add(C64::new(-1.0, 0.0), &kron(&eye, &h.t().to_owned()));
    s.mapv_inplace(|v| v * -IM);

    let d = model.dissipator_matrix();
    for p_ix in 0..3 * n {
        for q_ix in 0..3 * n {
            let w = d[[p_ix, q_ix]];
            if w == C64::new(0.0, 0.0) {
                continue;
            }
            let p = PauliWord::single(n, p_ix / 3, AXES[p_ix % 3]).dense();
            let q = PauliWord::single(n, q_ix / 3, AXES[q_ix % 3]).dense();
            let qp = crate::pauli::matmul(&q, &p);
            let mut term = kron(&p, &q.t().to_owned());
            term.scaled_add(C64::new(-0.5, 0.0), &kron(&qp, &eye));
            term.scaled_add(C64::new(-0.5, 0.0), &kron(&eye, &qp.t().to_owned()));
            s.scaled_add(w, &term);
        }
    }
    Ok(s)
}

/// Matrix exponential by scaling and squaring with a Taylor expansion of the
/// scaled matrix. Accurate to machine precision for the modest norms that
/// arise from generator * time-step products.
pub fn expm(m: &Array2<C64>) -> Array2<C64> {
    let dim = m.dim().0;
    assert_eq!(m.dim().0, m.dim().1);
    // Infinity norm for the scaling decision.
    let norm = (0..dim)
        .map(|r| (0..dim).map(|c| m[[r, c]].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let scaled = m.mapv(|v| v * scale);

    let mut result = identity(dim);
    let mut term = identity(dim);
    for order in 1..64 {
        term = crate::pauli::matmul(&term, &scaled);
        term.mapv_inplace(|v| v / order as f64);
        result += &term;
        if crate::pauli::max_abs(&term) < 1e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        result = crate::pauli::matmul(&result, &result);
    }
    result
}

/// Exact states on the grid via the superoperator exponential (N <= 4):
/// rho(t_s) = unvec(E^s vec(rho0)) with E = expm(S dt).
pub fn propagate_exact(
    model: &LiouvillianModel,
    rho0: &Array2<C64>,
    grid: &TimeGrid,
) -> Result<Vec<Array2<C64>>> {
    let n = model.n_qubits();
    validate_state(rho0, n)?;
    let dim = 1usize << n;
    let s = liouvillian_superoperator(model)?;
    let step = expm(&s.mapv(|v| v * grid.dt));
    let mut vec_state: Vec<C64> = rho0.as_slice().expect("standard layout").to_vec();
    let mut out = Vec::with_capacity(grid.n_t);
    for _ in 0..grid.n_t {
        let mut next = vec![C64::new(0.0, 0.0); dim * dim];
        for r in 0..dim * dim {
            let mut acc = C64::new(0.0, 0.0);
            for c in 0..dim * dim {
                acc += step[[r, c]] * vec_state[c];
            }
            next[r] = acc;
        }
        vec_state = next;
        out.push(Array2::from_shape_vec((dim, dim), vec_state.clone()).expect("square"));
    }
    Ok(out)
}

/// Trace distance ||a - b||_1 / 2 between Hermitian matrices.
pub fn trace_distance(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    let dim = a.dim().0;
    assert_eq!(a.dim(), b.dim());
    let diff = nalgebra::DMatrix::from_fn(dim, dim, |r, c| a[[r, c]] - b[[r, c]]);
    // Symmetrize against roundoff so the Hermitian eigensolver is valid.
    let herm = (diff.clone() + diff.adjoint()) * C64::new(0.5, 0.0);
    let eig = nalgebra::SymmetricEigen::new(herm);
    eig.eigenvalues.iter().map(|l| l.abs()).sum::<f64>() / 2.0
}
