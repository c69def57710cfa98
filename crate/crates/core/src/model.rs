//! Liouvillian models: a Pauli-basis Hamiltonian (single-site fields plus
//! two-site couplings) and a Hermitian dissipator matrix over the 3N
//! single-site Pauli operators. The generator acts as
//!
//!   d rho/dt = -i[H, rho] + sum_{p,q} d_{p,q} A(sigma_p, sigma_q, rho)
//!
//! with p, q ranging over (qubit, axis) and A the dissipator bilinear from
//! [`crate::pauli`]. Positive semidefiniteness of `d` makes the evolution
//! completely positive; it is diagnosed but never silently enforced.

use crate::configurations::{PairParameter, N_PARAMETERS};
use crate::error::{CoreError, Result};
use crate::pauli::{hermiticity_deviation, PairSite, PauliAxis, AXES};
use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Index of the (i, j) pair (i < j) in lexicographic pair order.
pub fn pair_rank(i: usize, j: usize, n: usize) -> usize {
    assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All qubit pairs (i, j), i < j, in lexicographic order.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((i, j));
        }
    }
    out
}

/// A full N-qubit Liouvillian. Qubits are 0-based internally; file formats
/// use 1-based indices.
#[derive(Debug, Clone, PartialEq)]
pub struct LiouvillianModel {
    n_qubits: usize,
    /// h_single[i][a]: field on qubit i along axis a.
    h_single: Vec<[f64; 3]>,
    /// h_pair[pair_rank(i,j)][3a+b]: coupling h_{i,a,j,b}, i < j.
    h_pair: Vec<[f64; 9]>,
    /// Hermitian 3N x 3N dissipator matrix, index 3 i + a.
    d: Array2<C64>,
}

impl LiouvillianModel {
    pub fn new(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1);
        LiouvillianModel {
            n_qubits,
            h_single: vec![[0.0; 3]; n_qubits],
            h_pair: vec![[0.0; 9]; n_qubits * (n_qubits - 1) / 2],
            d: Array2::zeros((3 * n_qubits, 3 * n_qubits)),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn h_single(&self, qubit: usize, axis: PauliAxis) -> f64 {
        self.h_single[qubit][axis.index()]
    }

    pub fn set_h_single(&mut self, qubit: usize, axis: PauliAxis, value: f64) {
        self.h_single[qubit][axis.index()] = value;
    }

    /// Two-body coupling h_{i,a,j,b}; the (i, a) and (j, b) labels commute,
    /// so the canonical storage is i < j.
    pub fn h_pair(&self, i: usize, a: PauliAxis, j: usize, b: PauliAxis) -> f64 {
        if i < j {
            self.h_pair[pair_rank(i, j, self.n_qubits)][3 * a.index() + b.index()]
        } else {
            self.h_pair[pair_rank(j, i, self.n_qubits)][3 * b.index() + a.index()]
        }
    }

    pub fn set_h_pair(&mut self, i: usize, a: PauliAxis, j: usize, b: PauliAxis, value: f64) {
        assert_ne!(i, j, "two-body couplings need distinct qubits");
        if i < j {
            self.h_pair[pair_rank(i, j, self.n_qubits)][3 * a.index() + b.index()] = value;
        } else {
            self.h_pair[pair_rank(j, i, self.n_qubits)][3 * b.index() + a.index()] = value;
        }
    }

    pub fn d_entry(&self, i: usize, a: PauliAxis, j: usize, b: PauliAxis) -> C64 {
        self.d[[3 * i + a.index(), 3 * j + b.index()]]
    }

    /// Set d_{(i,a),(j,b)} and its Hermitian mirror.
    pub fn set_d_entry(&mut self, i: usize, a: PauliAxis, j: usize, b: PauliAxis, value: C64) {
        let p = 3 * i + a.index();
        let q = 3 * j + b.index();
        self.d[[p, q]] = value;
        self.d[[q, p]] = value.conj();
    }

    pub fn dissipator_matrix(&self) -> &Array2<C64> {
        &self.d
    }

    /// Replace the whole dissipator matrix; rejected unless Hermitian.
    pub fn set_dissipator_matrix(&mut self, d: Array2<C64>) -> Result<()> {
        if d.dim() != (3 * self.n_qubits, 3 * self.n_qubits) {
            return Err(CoreError::DimensionMismatch(format!(
                "dissipator must be {0}x{0}",
                3 * self.n_qubits
            )));
        }
        let dev = hermiticity_deviation(&d);
        if dev > 1e-12 {
            return Err(CoreError::NonHermitian(dev));
        }
        self.d = d;
        Ok(())
    }

    /// Number of independent real coefficients: 3N + 9 N(N-1)/2 Hamiltonian
    /// plus (3N)^2 dissipator degrees of freedom.
    pub fn coefficient_count(&self) -> usize {
        let n = self.n_qubits;
        3 * n + 9 * n * (n - 1) / 2 + (3 * n) * (3 * n)
    }

    /// The 51 pair-restricted parameters (i, j) in canonical column order.
    pub fn restrict_to_pair(&self, i: usize, j: usize) -> Result<Vec<f64>> {
        if i >= self.n_qubits || j >= self.n_qubits || i == j {
            return Err(CoreError::Validation(format!(
                "pair ({i}, {j}) out of range for {} qubits",
                self.n_qubits
            )));
        }
        if i > j {
            return Err(CoreError::Validation(
                "pair restriction expects i < j".into(),
            ));
        }
        let mut x = vec![0.0; N_PARAMETERS];
        for param in (0..N_PARAMETERS).map(PairParameter::from_index) {
            let site = |s: PairSite| match s {
                PairSite::I => i,
                PairSite::J => j,
            };
            x[param.index()] = match param {
                PairParameter::HamI(a) => self.h_single(i, a),
                PairParameter::HamJ(a) => self.h_single(j, a),
                PairParameter::HamPair(a, b) => self.h_pair(i, a, j, b),
                PairParameter::DissDiag { site: s, axis } => {
                    self.d_entry(site(s), axis, site(s), axis).re
                }
                PairParameter::DissSiteRe { site: s, a, b } => {
                    self.d_entry(site(s), a, site(s), b).re
                }
                PairParameter::DissSiteIm { site: s, a, b } => {
                    self.d_entry(site(s), a, site(s), b).im
                }
                PairParameter::DissCrossRe(a, b) => self.d_entry(i, a, j, b).re,
                PairParameter::DissCrossIm(a, b) => self.d_entry(i, a, j, b).im,
            };
        }
        Ok(x)
    }
}

/// Decode a 51-vector into a standalone two-qubit model (qubits 0 and 1).
pub fn model_from_pair_vector(x: &[f64]) -> Result<LiouvillianModel> {
    if x.len() != N_PARAMETERS {
        return Err(CoreError::DimensionMismatch(format!(
            "pair vector must have {N_PARAMETERS} entries, got {}",
            x.len()
        )));
    }
    let mut model = LiouvillianModel::new(2);
    for param in (0..N_PARAMETERS).map(PairParameter::from_index) {
        let v = x[param.index()];
        let site = |s: PairSite| match s {
            PairSite::I => 0,
            PairSite::J => 1,
        };
        match param {
            PairParameter::HamI(a) => model.set_h_single(0, a, v),
            PairParameter::HamJ(a) => model.set_h_single(1, a, v),
            PairParameter::HamPair(a, b) => model.set_h_pair(0, a, 1, b, v),
            PairParameter::DissDiag { site: s, axis } => {
                model.set_d_entry(site(s), axis, site(s), axis, C64::new(v, 0.0))
            }
            PairParameter::DissSiteRe { site: s, a, b } => {
                let old = model.d_entry(site(s), a, site(s), b);
                model.set_d_entry(site(s), a, site(s), b, C64::new(v, old.im));
            }
            PairParameter::DissSiteIm { site: s, a, b } => {
                let old = model.d_entry(site(s), a, site(s), b);
                model.set_d_entry(site(s), a, site(s), b, C64::new(old.re, v));
            }
            PairParameter::DissCrossRe(a, b) => {
                let old = model.d_entry(0, a, 1, b);
                model.set_d_entry(0, a, 1, b, C64::new(v, old.im));
            }
            PairParameter::DissCrossIm(a, b) => {
                let old = model.d_entry(0, a, 1, b);
                model.set_d_entry(0, a, 1, b, C64::new(old.re, v));
            }
        }
    }
    Ok(model)
}

/// The jump (diagonal) form of a dissipator matrix: d = sum_nu rate_nu
/// v_nu v_nu^dag with strictly positive rates. `vectors[nu]` holds the
/// coefficients of jump operator L_nu over the (qubit, axis) Pauli basis.
#[derive(Debug, Clone)]
pub struct JumpDecomposition {
    pub rates: Vec<f64>,
    pub vectors: Vec<Vec<C64>>,
}

impl JumpDecomposition {
    /// Rebuild sum_nu rate_nu v v^dag (for verification).
    pub fn reconstruct(&self, dim: usize) -> Array2<C64> {
        let mut d = Array2::zeros((dim, dim));
        for (rate, v) in self.rates.iter().zip(&self.vectors) {
            for p in 0..dim {
                for q in 0..dim {
                    d[[p, q]] += C64::new(*rate, 0.0) * v[p] * v[q].conj();
                }
            }
        }
        d
    }
}

/// Diagonalize a Hermitian dissipator matrix into jump rates and operators.
///
/// Eigenvalues in [-1e-10, 0) are treated as numerically zero and dropped;
/// anything below -1e-10 means the matrix is not a valid dissipator.
pub fn diagonalize_dissipator(d: &Array2<C64>) -> Result<JumpDecomposition> {
    let dev = hermiticity_deviation(d);
    if dev > 1e-12 {
        return Err(CoreError::NonHermitian(dev));
    }
    let dim = d.dim().0;
    let na = nalgebra::DMatrix::from_fn(dim, dim, |r, c| d[[r, c]]);
    let eig = nalgebra::SymmetricEigen::new(na);
    let mut rates = Vec::new();
    let mut vectors = Vec::new();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda < -1e-10 {
            return Err(CoreError::NegativeRate(lambda));
        }
        if lambda <= 0.0 {
            continue; // clipped to zero
        }
        rates.push(lambda);
        vectors.push(eig.eigenvectors.column(k).iter().copied().collect());
    }
    Ok(JumpDecomposition { rates, vectors })
}

/// Smallest eigenvalue of the dissipator matrix (diagnostic; negative values
/// flag a non-completely-positive estimate).
pub fn min_dissipator_eigenvalue(d: &Array2<C64>) -> f64 {
    let dim = d.dim().0;
    let na = nalgebra::DMatrix::from_fn(dim, dim, |r, c| d[[r, c]]);
    let eig = nalgebra::SymmetricEigen::new(na);
    eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

/// Power-law XY benchmark: XX+YY couplings J / (2 |i-j|^alpha), uniform Z
/// field B, and uniform Z dephasing gamma on every qubit.
pub fn build_xy_model(
    n_qubits: usize,
    coupling_j: f64,
    field_b: f64,
    alpha: f64,
    gamma: f64,
) -> LiouvillianModel {
    let mut model = LiouvillianModel::new(n_qubits);
    for i in 0..n_qubits {
        model.set_h_single(i, PauliAxis::Z, field_b);
        if gamma != 0.0 {
            model.set_d_entry(i, PauliAxis::Z, i, PauliAxis::Z, C64::new(gamma, 0.0));
        }
    }
    for i in 0..n_qubits {
        for j in (i + 1)..n_qubits {
            let strength = coupling_j / (2.0 * ((j - i) as f64).powf(alpha));
            model.set_h_pair(i, PauliAxis::X, j, PauliAxis::X, strength);
            model.set_h_pair(i, PauliAxis::Y, j, PauliAxis::Y, strength);
        }
    }
    model
}

// ---------------------------------------------------------------------------
// JSON document
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairBlockDoc {
    /// 1-based qubit indices, i < j.
    i: usize,
    j: usize,
    /// matrix[a][b] = h_{i,a,j,b}, axes in x, y, z order.
    matrix: [[f64; 3]; 3],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DissEntryDoc {
    /// 1-based qubit indices.
    i: usize,
    a: PauliAxis,
    j: usize,
    b: PauliAxis,
    re: f64,
    im: f64,
}

/// On-disk model document. Only nonzero pair blocks and dissipator entries
/// are stored; the dissipator lists the upper triangle (row index <= column
/// index in the flattened (qubit, axis) ordering), the mirror is implied.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub n_qubits: usize,
    /// h_single[i][a], full N x 3 table.
    pub h_single: Vec<[f64; 3]>,
    pub h_pair: Vec<PairBlockDoc>,
    pub d_entries: Vec<DissEntryDoc>,
}

impl LiouvillianModel {
    pub fn to_document(&self) -> ModelDocument {
        let n = self.n_qubits;
        let mut h_pair = Vec::new();
        for (i, j) in all_pairs(n) {
            let block = self.h_pair[pair_rank(i, j, n)];
            if block.iter().any(|v| *v != 0.0) {
                let mut matrix = [[0.0; 3]; 3];
                for a in 0..3 {
                    for b in 0..3 {
                        matrix[a][b] = block[3 * a + b];
                    }
                }
                h_pair.push(PairBlockDoc { i: i + 1, j: j + 1, matrix });
            }
        }
        let mut d_entries = Vec::new();
        for p in 0..3 * n {
            for q in p..3 * n {
                let v = self.d[[p, q]];
                if v != C64::new(0.0, 0.0) {
                    d_entries.push(DissEntryDoc {
                        i: p / 3 + 1,
                        a: AXES[p % 3],
                        j: q / 3 + 1,
                        b: AXES[q % 3],
                        re: v.re,
                        im: v.im,
                    });
                }
            }
        }
        ModelDocument { n_qubits: n, h_single: self.h_single.clone(), h_pair, d_entries }
    }

    pub fn from_document(doc: &ModelDocument) -> Result<Self> {
        if doc.n_qubits == 0 {
            return Err(CoreError::Validation("n_qubits must be at least 1".into()));
        }
        if doc.h_single.len() != doc.n_qubits {
            return Err(CoreError::Validation(format!(
                "h_single must list all {} qubits, got {}",
                doc.n_qubits,
                doc.h_single.len()
            )));
        }
        let mut model = LiouvillianModel::new(doc.n_qubits);
        model.h_single = doc.h_single.clone();
        for block in &doc.h_pair {
            if block.i < 1 || block.j < 1 || block.i > doc.n_qubits || block.j > doc.n_qubits {
                return Err(CoreError::Validation(format!(
                    "pair block ({}, {}) out of range",
                    block.i, block.j
                )));
            }
            if block.i >= block.j {
                return Err(CoreError::Validation(format!(
                    "pair block ({}, {}) must have i < j",
                    block.i, block.j
                )));
            }
            for a in 0..3 {
                for b in 0..3 {
                    model.set_h_pair(
                        block.i - 1,
                        AXES[a],
                        block.j - 1,
                        AXES[b],
                        block.matrix[a][b],
                    );
                }
            }
        }
        for e in &doc.d_entries {
            if e.i < 1 || e.j < 1 || e.i > doc.n_qubits || e.j > doc.n_qubits {
                return Err(CoreError::Validation(format!(
                    "dissipator entry ({}, {}) out of range",
                    e.i, e.j
                )));
            }
            if e.i == e.j && e.a == e.b && e.im.abs() > 1e-12 {
                return Err(CoreError::Validation(
                    "diagonal dissipator entries must be real".into(),
                ));
            }
            model.set_d_entry(e.i - 1, e.a, e.j - 1, e.b, C64::new(e.re, e.im));
        }
        Ok(model)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelDocument = serde_json::from_str(text)?;
        LiouvillianModel::from_document(&doc)
    }
}

// ---------------------------------------------------------------------------
// Synthetic models for tests and benchmarks
// ---------------------------------------------------------------------------

/// Random dense model: Gaussian Hamiltonian coefficients and a random PSD
/// dissipator d = (s/dim) B B^dag with Gaussian B. Deterministic in the seed.
pub fn random_model(n_qubits: usize, ham_scale: f64, diss_scale: f64, seed: u64) -> LiouvillianModel {
    use rand::Rng;
    use rand_distr::StandardNormal;

    let mut rng = crate::rng::stream_rng(seed, crate::rng::StreamKind::Synthetic, n_qubits as u64, 0);
    let mut model = LiouvillianModel::new(n_qubits);
    for i in 0..n_qubits {
        for a in AXES {
            let g: f64 = rng.sample(StandardNormal);
            model.set_h_single(i, a, ham_scale * g);
        }
    }
    for (i, j) in all_pairs(n_qubits) {
        for a in AXES {
            for b in AXES {
                let g: f64 = rng.sample(StandardNormal);
                model.set_h_pair(i, a, j, b, ham_scale * g);
            }
        }
    }
    let dim = 3 * n_qubits;
    let mut b = Array2::<C64>::zeros((dim, dim));
    for p in 0..dim {
        for q in 0..dim {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            b[[p, q]] = C64::new(re, im);
        }
    }
    // d = (scale/2) B B^dag: Hermitian PSD by construction. Compute the upper
    // triangle and mirror it so the matrix is exactly Hermitian.
    let mut d = Array2::<C64>::zeros((dim, dim));
    let scale = 0.5 * diss_scale / dim as f64;
    for p in 0..dim {
        for q in p..dim {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..dim {
                acc += b[[p, k]] * b[[q, k]].conj();
            }
            acc *= scale;
            if p == q {
                acc = C64::new(acc.re, 0.0);
            }
            d[[p, q]] = acc;
            d[[q, p]] = acc.conj();
        }
    }
    model.set_dissipator_matrix(d).expect("constructed Hermitian");
    model
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use crate::pauli::max_abs;

    #[test]
    fn pair_rank_is_lexicographic() {
        let n = 5;
        let mut expect = 0;
        for (i, j) in all_pairs(n) {
            assert_eq!(pair_rank(i, j, n), expect);
            expect += 1;
        }
        assert_eq!(expect, 10);
    }

    #[test]
    fn coefficient_count_matches_closed_form() {
        assert_eq!(LiouvillianModel::new(10).coefficient_count(), 30 + 405 + 900);
        assert_eq!(LiouvillianModel::new(2).coefficient_count(), 6 + 9 + 36);
    }

    #[test]
    fn xy_model_pair_vector_has_six_nonzeros() {
        let model = build_xy_model(2, 4.0, 1.0, 1.5, 0.5);
        let x = model.restrict_to_pair(0, 1).unwrap();
        let nonzero: Vec<(usize, f64)> =
            x.iter().enumerate().filter(|(_, v)| **v != 0.0).map(|(i, v)| (i, *v)).collect();
        assert_eq!(nonzero.len(), 6);
        let get = |p: PairParameter| x[p.index()];
        assert_relative_eq!(get(PairParameter::HamI(PauliAxis::Z)), 1.0);
        assert_relative_eq!(get(PairParameter::HamJ(PauliAxis::Z)), 1.0);
        assert_relative_eq!(get(PairParameter::HamPair(PauliAxis::X, PauliAxis::X)), 2.0);
        assert_relative_eq!(get(PairParameter::HamPair(PauliAxis::Y, PauliAxis::Y)), 2.0);
        assert_relative_eq!(
            get(PairParameter::DissDiag { site: PairSite::I, axis: PauliAxis::Z }),
            0.5
        );
        assert_relative_eq!(
            get(PairParameter::DissDiag { site: PairSite::J, axis: PauliAxis::Z }),
            0.5
        );
    }

    #[test]
    fn xy_coupling_decays_with_distance() {
        let model = build_xy_model(5, 4.0, 1.0, 1.5, 0.0);
        let d1 = model.h_pair(0, PauliAxis::X, 1, PauliAxis::X);
        let d2 = model.h_pair(0, PauliAxis::X, 2, PauliAxis::X);
        let d4 = model.h_pair(0, PauliAxis::X, 4, PauliAxis::X);
        assert_relative_eq!(d1, 2.0);
        assert_relative_eq!(d2, 2.0 / 2.0_f64.powf(1.5), epsilon = 1e-14);
        assert_relative_eq!(d4, 2.0 / 4.0_f64.powf(1.5), epsilon = 1e-14);
    }

    #[test]
    fn pair_vector_round_trips_through_decode() {
        let model = random_model(2, 0.8, 0.6, 42);
        let x = model.restrict_to_pair(0, 1).unwrap();
        let decoded = model_from_pair_vector(&x).unwrap();
        let x2 = decoded.restrict_to_pair(0, 1).unwrap();
        for (a, b) in x.iter().zip(&x2) {
            assert_relative_eq!(a, b, epsilon = 1e-14);
        }
        // The decoded two-qubit model agrees entry-by-entry with the source.
        assert_eq!(decoded, model);
    }

    #[test]
    fn restriction_of_larger_model_picks_the_right_blocks() {
        let model = random_model(4, 0.5, 0.4, 7);
        let x = model.restrict_to_pair(1, 3).unwrap();
        assert_relative_eq!(
            x[PairParameter::HamI(PauliAxis::Y).index()],
            model.h_single(1, PauliAxis::Y)
        );
        assert_relative_eq!(
            x[PairParameter::HamPair(PauliAxis::Z, PauliAxis::X).index()],
            model.h_pair(1, PauliAxis::Z, 3, PauliAxis::X)
        );
        assert_relative_eq!(
            x[PairParameter::DissCrossIm(PauliAxis::X, PauliAxis::Z).index()],
            model.d_entry(1, PauliAxis::X, 3, PauliAxis::Z).im
        );
    }

    #[test]
    fn jump_decomposition_reconstructs_the_dissipator() {
        let model = random_model(3, 0.5, 0.7, 11);
        let d = model.dissipator_matrix();
        let jumps = diagonalize_dissipator(d).unwrap();
        assert!(jumps.rates.iter().all(|r| *r > 0.0));
        let rec = jumps.reconstruct(9);
        assert!(max_abs(&(&rec - d)) < 1e-10);
    }

    #[test]
    fn pure_dephasing_has_a_single_jump() {
        let model = build_xy_model(1, 0.0, 0.0, 1.0, 0.25);
        let jumps = diagonalize_dissipator(model.dissipator_matrix()).unwrap();
        assert_eq!(jumps.rates.len(), 1);
        assert_relative_eq!(jumps.rates[0], 0.25, epsilon = 1e-12);
        // The jump vector is the z Pauli on the only qubit.
        let v = &jumps.vectors[0];
        assert_relative_eq!(v[2].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn negative_eigenvalue_is_rejected_and_tiny_ones_clipped() {
        let mut d = Array2::<C64>::zeros((3, 3));
        d[[0, 0]] = C64::new(-1e-3, 0.0);
        assert!(matches!(diagonalize_dissipator(&d), Err(CoreError::NegativeRate(_))));
        let mut d = Array2::<C64>::zeros((3, 3));
        d[[0, 0]] = C64::new(-5e-11, 0.0);
        let jumps = diagonalize_dissipator(&d).unwrap();
        assert!(jumps.rates.is_empty());
    }

    #[test]
    fn json_round_trip_preserves_the_model() {
        let model = random_model(3, 0.5, 0.5, 19);
        let text = model.to_json().unwrap();
        let back = LiouvillianModel::from_json(&text).unwrap();
        assert_relative_eq!(
            back.h_pair(0, PauliAxis::X, 2, PauliAxis::Y),
            model.h_pair(0, PauliAxis::X, 2, PauliAxis::Y),
            epsilon = 1e-12
        );
        assert!(max_abs(&(back.dissipator_matrix() - model.dissipator_matrix())) < 1e-12);
        assert_eq!(back.h_single, model.h_single);
    }

    #[test]
    fn document_rejects_unknown_and_inconsistent_input() {
        let bad = r#"{"n_qubits": 2, "h_single": [[0,0,0],[0,0,0]], "h_pair": [], "d_entries": [], "extra": 1}"#;
        assert!(LiouvillianModel::from_json(bad).is_err());
        let bad_len = r#"{"n_qubits": 3, "h_single": [[0,0,0]], "h_pair": [], "d_entries": []}"#;
        assert!(LiouvillianModel::from_json(bad_len).is_err());
        let bad_diag = r#"{"n_qubits": 1, "h_single": [[0,0,0]], "h_pair": [],
            "d_entries": [{"i":1,"a":"z","j":1,"b":"z","re":0.1,"im":0.2}]}"#;
        assert!(LiouvillianModel::from_json(bad_diag).is_err());
    }

    #[test]
    fn xy_model_serializes_sparsely() {
        let model = build_xy_model(3, 4.0, 1.0, 1.5, 0.5);
        let doc = model.to_document();
        assert_eq!(doc.h_pair.len(), 3);
        assert_eq!(doc.d_entries.len(), 3);
        assert!(doc.d_entries.iter().all(|e| e.i == e.j && e.a == PauliAxis::Z));
    }
}
