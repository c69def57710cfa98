//! State-preparation/observable configurations for one qubit pair, the
//! 51-parameter encoding of a pair-restricted Liouvillian, and the full
//! 360 x 51 coefficient matrix linking the two.
//!
//! Row order is frozen: all single-body configurations on qubit i, then on
//! qubit j, then all two-body configurations; within each block preparations
//! vary slowest and observables fastest, axes in X < Y < Z order with + before
//! - signs. Column order is frozen by [`PairParameter::index`]. Tests and data
//! files all rely on these orders.

use crate::error::{CoreError, Result};
use crate::pauli::{
    dissipator_trace_coeff, hamiltonian_trace_coeff, identity, kron, pair_word, sigma,
    sigma_on_pair, state_density, PairSite, PauliAxis, PauliState, AXES, PREP_STATES,
};
use ndarray::Array2;
use num_complex::Complex64 as C64;
use std::io::Write;

/// Number of configurations per pair: 18 + 18 + 324.
pub const N_CONFIGURATIONS: usize = 360;
/// Number of real parameters of a pair-restricted Liouvillian.
pub const N_PARAMETERS: usize = 51;

/// One state-preparation/observable combination on a qubit pair.
///
/// Single-body configurations prepare one qubit of the pair in a Pauli
/// eigenstate (the rest of the system is maximally mixed on average) and
/// observe a single-qubit Pauli; two-body configurations fix both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Configuration {
    SingleI { prep: PauliState, obs: PauliAxis },
    SingleJ { prep: PauliState, obs: PauliAxis },
    Pair { prep_i: PauliState, prep_j: PauliState, obs_i: PauliAxis, obs_j: PauliAxis },
}

impl Configuration {
    /// Canonical row index in 0..360.
    pub fn index(&self) -> usize {
        match *self {
            Configuration::SingleI { prep, obs } => prep.index() * 3 + obs.index(),
            Configuration::SingleJ { prep, obs } => 18 + prep.index() * 3 + obs.index(),
            Configuration::Pair { prep_i, prep_j, obs_i, obs_j } => {
                36 + ((prep_i.index() * 6 + prep_j.index()) * 3 + obs_i.index()) * 3
                    + obs_j.index()
            }
        }
    }

    pub fn from_index(ix: usize) -> Self {
        assert!(ix < N_CONFIGURATIONS);
        if ix < 18 {
            Configuration::SingleI {
                prep: PauliState::from_index(ix / 3),
                obs: PauliAxis::from_index(ix % 3),
            }
        } else if ix < 36 {
            let k = ix - 18;
            Configuration::SingleJ {
                prep: PauliState::from_index(k / 3),
                obs: PauliAxis::from_index(k % 3),
            }
        } else {
            let k = ix - 36;
            Configuration::Pair {
                prep_i: PauliState::from_index(k / 54),
                prep_j: PauliState::from_index((k / 9) % 6),
                obs_i: PauliAxis::from_index((k / 3) % 3),
                obs_j: PauliAxis::from_index(k % 3),
            }
        }
    }

    /// Comma-free label used in CSV exports, e.g. `si(+x;x)` or `pp(+x -z;x y)`.
    pub fn label(&self) -> String {
        match *self {
            Configuration::SingleI { prep, obs } => {
                format!("si({};{})", prep.label(), obs.letter())
            }
            Configuration::SingleJ { prep, obs } => {
                format!("sj({};{})", prep.label(), obs.letter())
            }
            Configuration::Pair { prep_i, prep_j, obs_i, obs_j } => format!(
                "pp({} {};{} {})",
                prep_i.label(),
                prep_j.label(),
                obs_i.letter(),
                obs_j.letter()
            ),
        }
    }

    /// Initial state of the configuration on the pair space, with the
    /// unprepared qubit of the pair maximally mixed (4x4, unit trace).
    pub fn pair_state(&self) -> Array2<C64> {
        let half = {
            let mut m = identity(2);
            m.mapv_inplace(|v| v * 0.5);
            m
        };
        match *self {
            Configuration::SingleI { prep, .. } => kron(&state_density(prep), &half),
            Configuration::SingleJ { prep, .. } => kron(&half, &state_density(prep)),
            Configuration::Pair { prep_i, prep_j, .. } => {
                kron(&state_density(prep_i), &state_density(prep_j))
            }
        }
    }

    /// Observable of the configuration on the pair space (4x4).
    pub fn pair_observable(&self) -> Array2<C64> {
        match *self {
            Configuration::SingleI { obs, .. } => sigma_on_pair(PairSite::I, obs),
            Configuration::SingleJ { obs, .. } => sigma_on_pair(PairSite::J, obs),
            Configuration::Pair { obs_i, obs_j, .. } => pair_word(obs_i, obs_j),
        }
    }
}

/// Canonical list of all 360 configurations of a pair.
pub fn enumerate_configurations() -> Vec<Configuration> {
    let mut out = Vec::with_capacity(N_CONFIGURATIONS);
    for prep in PREP_STATES {
        for obs in AXES {
            out.push(Configuration::SingleI { prep, obs });
        }
    }
    for prep in PREP_STATES {
        for obs in AXES {
            out.push(Configuration::SingleJ { prep, obs });
        }
    }
    for prep_i in PREP_STATES {
        for prep_j in PREP_STATES {
            for obs_i in AXES {
                for obs_j in AXES {
                    out.push(Configuration::Pair { prep_i, prep_j, obs_i, obs_j });
                }
            }
        }
    }
    out
}

/// One real parameter of a pair-restricted Liouvillian.
///
/// Hermitian dissipator blocks are parametrized by their diagonal, the real
/// parts above the diagonal and the imaginary parts above the diagonal; the
/// cross block (i rows, j columns) by 9 real and 9 imaginary parts. The
/// conjugate (j, i) block is implied and not a separate parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairParameter {
    /// Hamiltonian field on qubit i.
    HamI(PauliAxis),
    /// Hamiltonian field on qubit j.
    HamJ(PauliAxis),
    /// Two-body Hamiltonian coupling h_{i,a,j,b}.
    HamPair(PauliAxis, PauliAxis),
    /// Diagonal dissipator entry d_{k,a,k,a} on one site of the pair.
    DissDiag { site: PairSite, axis: PauliAxis },
    /// Re d_{k,a,k,b} for a < b on one site.
    DissSiteRe { site: PairSite, a: PauliAxis, b: PauliAxis },
    /// Im d_{k,a,k,b} for a < b on one site.
    DissSiteIm { site: PairSite, a: PauliAxis, b: PauliAxis },
    /// Re d_{i,a,j,b}.
    DissCrossRe(PauliAxis, PauliAxis),
    /// Im d_{i,a,j,b}.
    DissCrossIm(PauliAxis, PauliAxis),
}

/// The three upper-triangle axis pairs in canonical order.
const UPPER: [(PauliAxis, PauliAxis); 3] = [
    (PauliAxis::X, PauliAxis::Y),
    (PauliAxis::X, PauliAxis::Z),
    (PauliAxis::Y, PauliAxis::Z),
];

impl PairParameter {
    /// Canonical column index in 0..51.
    pub fn index(&self) -> usize {
        match *self {
            PairParameter::HamI(a) => a.index(),
            PairParameter::HamJ(a) => 3 + a.index(),
            PairParameter::HamPair(a, b) => 6 + a.index() * 3 + b.index(),
            PairParameter::DissDiag { site, axis } => site_base(site) + axis.index(),
            PairParameter::DissSiteRe { site, a, b } => site_base(site) + 3 + upper_pos(a, b),
            PairParameter::DissSiteIm { site, a, b } => site_base(site) + 6 + upper_pos(a, b),
            PairParameter::DissCrossRe(a, b) => 33 + a.index() * 3 + b.index(),
            PairParameter::DissCrossIm(a, b) => 42 + a.index() * 3 + b.index(),
        }
    }

    pub fn from_index(ix: usize) -> Self {
        assert!(ix < N_PARAMETERS);
        match ix {
            0..=2 => PairParameter::HamI(PauliAxis::from_index(ix)),
            3..=5 => PairParameter::HamJ(PauliAxis::from_index(ix - 3)),
            6..=14 => {
                let k = ix - 6;
                PairParameter::HamPair(PauliAxis::from_index(k / 3), PauliAxis::from_index(k % 3))
            }
            15..=23 | 24..=32 => {
                let site = if ix < 24 { PairSite::I } else { PairSite::J };
                let k = (ix - 15) % 9;
                match k {
                    0..=2 => PairParameter::DissDiag { site, axis: PauliAxis::from_index(k) },
                    3..=5 => {
                        let (a, b) = UPPER[k - 3];
                        PairParameter::DissSiteRe { site, a, b }
                    }
                    _ => {
                        let (a, b) = UPPER[k - 6];
                        PairParameter::DissSiteIm { site, a, b }
                    }
                }
            }
            33..=41 => {
                let k = ix - 33;
                PairParameter::DissCrossRe(PauliAxis::from_index(k / 3), PauliAxis::from_index(k % 3))
            }
            _ => {
                let k = ix - 42;
                PairParameter::DissCrossIm(PauliAxis::from_index(k / 3), PauliAxis::from_index(k % 3))
            }
        }
    }

    /// Comma-free label used in CSV exports, e.g. `h_i_x` or `d_ij_xy_im`.
    pub fn label(&self) -> String {
        let site = |s: PairSite| match s {
            PairSite::I => "i",
            PairSite::J => "j",
        };
        match *self {
            PairParameter::HamI(a) => format!("h_i_{}", a.letter()),
            PairParameter::HamJ(a) => format!("h_j_{}", a.letter()),
            PairParameter::HamPair(a, b) => format!("h_ij_{}{}", a.letter(), b.letter()),
            PairParameter::DissDiag { site: s, axis } => {
                format!("d_{0}{0}_{1}{1}", site(s), axis.letter())
            }
            PairParameter::DissSiteRe { site: s, a, b } => {
                format!("d_{0}{0}_{1}{2}_re", site(s), a.letter(), b.letter())
            }
            PairParameter::DissSiteIm { site: s, a, b } => {
                format!("d_{0}{0}_{1}{2}_im", site(s), a.letter(), b.letter())
            }
            PairParameter::DissCrossRe(a, b) => format!("d_ij_{}{}_re", a.letter(), b.letter()),
            PairParameter::DissCrossIm(a, b) => format!("d_ij_{}{}_im", a.letter(), b.letter()),
        }
    }
}

fn site_base(site: PairSite) -> usize {
    match site {
        PairSite::I => 15,
        PairSite::J => 24,
    }
}

fn upper_pos(a: PauliAxis, b: PauliAxis) -> usize {
    UPPER
        .iter()
        .position(|&(x, y)| (x, y) == (a, b))
        .expect("off-diagonal parameters require a < b")
}

pub fn enumerate_parameters() -> Vec<PairParameter> {
    (0..N_PARAMETERS).map(PairParameter::from_index).collect()
}

/// The dense-operator pair (p, q) whose dissipator columns a parameter owns,
/// or `None` for Hamiltonian parameters.
fn cross_operators(param: PairParameter) -> Option<(Array2<C64>, Array2<C64>, bool)> {
    // bool: true when the parameter is an imaginary part
    match param {
        PairParameter::DissDiag { site, axis } => {
            let p = sigma_on_pair(site, axis);
            Some((p.clone(), p, false))
        }
        PairParameter::DissSiteRe { site, a, b } => {
            Some((sigma_on_pair(site, a), sigma_on_pair(site, b), false))
        }
        PairParameter::DissSiteIm { site, a, b } => {
            Some((sigma_on_pair(site, a), sigma_on_pair(site, b), true))
        }
        PairParameter::DissCrossRe(a, b) => {
            Some((sigma_on_pair(PairSite::I, a), sigma_on_pair(PairSite::J, b), false))
        }
        PairParameter::DissCrossIm(a, b) => {
            Some((sigma_on_pair(PairSite::I, a), sigma_on_pair(PairSite::J, b), true))
        }
        _ => None,
    }
}

/// The full coefficient matrix: row c, column l holds the rate at which
/// parameter l moves the observable of configuration c at t = 0, i.e. the
/// entries of d<O_c>/dt = sum_l M[c, l] x_l.
#[derive(Debug, Clone)]
pub struct CoefficientMatrixMax {
    matrix: Array2<f64>,
}

impl CoefficientMatrixMax {
    pub fn matrix(&self) -> &Array2<f64> {
        &self.matrix
    }

    pub fn row(&self, config_index: usize) -> ndarray::ArrayView1<'_, f64> {
        self.matrix.row(config_index)
    }

    /// Write as `row_label,column_label,value` CSV (18360 data rows).
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "configuration,parameter,value")?;
        let configs = enumerate_configurations();
        let params = enumerate_parameters();
        for (ci, config) in configs.iter().enumerate() {
            for (pi, param) in params.iter().enumerate() {
                writeln!(w, "{},{},{}", config.label(), param.label(), self.matrix[[ci, pi]])?;
            }
        }
        Ok(())
    }
}

/// Build the 360 x 51 coefficient matrix from the trace identities.
///
/// Hamiltonian columns hold tr(-i[P_l, rho_c] O_c). A diagonal dissipator
/// column holds tr(A(p, p, rho_c) O_c). An off-diagonal pair (p, q) appears
/// in the Liouvillian as d A(p,q,.) + conj(d) A(q,p,.), so the column of
/// Re d is T(p,q) + T(q,p) and the column of Im d is i (T(p,q) - T(q,p)),
/// with T the dissipator trace coefficient. All entries are real.
pub fn build_m_max() -> Result<CoefficientMatrixMax> {
    let configs = enumerate_configurations();
    let params = enumerate_parameters();
    let mut matrix = Array2::zeros((N_CONFIGURATIONS, N_PARAMETERS));

    // Precompute parameter operators once; rows only change rho and O.
    let ham_ops: Vec<(usize, Array2<C64>)> = params
        .iter()
        .filter_map(|p| match *p {
            PairParameter::HamI(a) => Some((p.index(), sigma_on_pair(PairSite::I, a))),
            PairParameter::HamJ(a) => Some((p.index(), sigma_on_pair(PairSite::J, a))),
            PairParameter::HamPair(a, b) => Some((p.index(), pair_word(a, b))),
            _ => None,
        })
        .collect();
    let diss_ops: Vec<(usize, Array2<C64>, Array2<C64>, bool, bool)> = params
        .iter()
        .filter_map(|p| {
            cross_operators(*p).map(|(op_p, op_q, is_im)| {
                let diagonal = matches!(p, PairParameter::DissDiag { .. });
                (p.index(), op_p, op_q, is_im, diagonal)
            })
        })
        .collect();

    for (ci, config) in configs.iter().enumerate() {
        let rho = config.pair_state();
        let obs = config.pair_observable();
        for (col, op) in &ham_ops {
            matrix[[ci, *col]] = hamiltonian_trace_coeff(op, &rho, &obs)?;
        }
        for (col, op_p, op_q, is_im, diagonal) in &diss_ops {
            let t_pq = dissipator_trace_coeff(op_p, op_q, &rho, &obs)?;
            let value = if *diagonal {
                t_pq
            } else {
                let t_qp = dissipator_trace_coeff(op_q, op_p, &rho, &obs)?;
                if *is_im {
                    C64::new(0.0, 1.0) * (t_pq - t_qp)
                } else {
                    t_pq + t_qp
                }
            };
            if value.im.abs() > 1e-12 {
                return Err(CoreError::NonRealCoefficient { imag: value.im });
            }
            matrix[[ci, *col]] = value.re;
        }
    }

    Ok(CoefficientMatrixMax { matrix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn enumeration_has_frozen_order_and_round_trips() {
        let configs = enumerate_configurations();
        assert_eq!(configs.len(), N_CONFIGURATIONS);
        for (ix, c) in configs.iter().enumerate() {
            assert_eq!(c.index(), ix);
            assert_eq!(Configuration::from_index(ix), *c);
        }
        // Frozen endpoints of each block.
        assert_eq!(
            configs[0],
            Configuration::SingleI {
                prep: PauliState { axis: PauliAxis::X, plus: true },
                obs: PauliAxis::X
            }
        );
        assert_eq!(
            configs[18],
            Configuration::SingleJ {
                prep: PauliState { axis: PauliAxis::X, plus: true },
                obs: PauliAxis::X
            }
        );
        assert_eq!(
            configs[36],
            Configuration::Pair {
                prep_i: PauliState { axis: PauliAxis::X, plus: true },
                prep_j: PauliState { axis: PauliAxis::X, plus: true },
                obs_i: PauliAxis::X,
                obs_j: PauliAxis::X
            }
        );
        assert_eq!(
            configs[359],
            Configuration::Pair {
                prep_i: PauliState { axis: PauliAxis::Z, plus: false },
                prep_j: PauliState { axis: PauliAxis::Z, plus: false },
                obs_i: PauliAxis::Z,
                obs_j: PauliAxis::Z
            }
        );
    }

    #[test]
    fn parameters_round_trip_and_cover_all_blocks() {
        let params = enumerate_parameters();
        assert_eq!(params.len(), N_PARAMETERS);
        for (ix, p) in params.iter().enumerate() {
            assert_eq!(p.index(), ix);
        }
        assert_eq!(params[0].label(), "h_i_x");
        assert_eq!(params[6].label(), "h_ij_xx");
        assert_eq!(params[15].label(), "d_ii_xx");
        assert_eq!(params[18].label(), "d_ii_xy_re");
        assert_eq!(params[24].label(), "d_jj_xx");
        assert_eq!(params[33].label(), "d_ij_xx_re");
        assert_eq!(params[42].label(), "d_ij_xx_im");
        assert_eq!(params[50].label(), "d_ij_zz_im");
    }

    #[test]
    fn first_single_row_matches_hand_computation() {
        // Row si(+x;x): prep (1+sx)/2, observe sx. Every Hamiltonian column
        // vanishes ([-i[P,rho] is orthogonal to sx for all fields); <sx> decays
        // under y and z noise (both -2) and rotates under the yz coherence
        // (imaginary part, -4). Everything else is zero.
        let m = build_m_max().unwrap();
        let expected: Vec<(usize, f64)> = vec![
            (PairParameter::DissDiag { site: PairSite::I, axis: PauliAxis::Y }.index(), -2.0),
            (PairParameter::DissDiag { site: PairSite::I, axis: PauliAxis::Z }.index(), -2.0),
            (
                PairParameter::DissSiteIm { site: PairSite::I, a: PauliAxis::Y, b: PauliAxis::Z }
                    .index(),
                -4.0,
            ),
        ];
        for (col, v) in m.row(0).iter().enumerate() {
            let want = expected
                .iter()
                .find(|(c, _)| *c == col)
                .map(|(_, v)| *v)
                .unwrap_or(0.0);
            assert_relative_eq!(*v, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn single_rows_touch_only_own_site_columns() {
        let m = build_m_max().unwrap();
        let params = enumerate_parameters();
        for ci in 0..36 {
            let is_i_block = ci < 18;
            for (col, p) in params.iter().enumerate() {
                let allowed = match p {
                    PairParameter::HamI(_) => is_i_block,
                    PairParameter::HamJ(_) => !is_i_block,
                    PairParameter::DissDiag { site, .. }
                    | PairParameter::DissSiteRe { site, .. }
                    | PairParameter::DissSiteIm { site, .. } => {
                        (*site == PairSite::I) == is_i_block
                    }
                    _ => false,
                };
                if !allowed {
                    assert_eq!(
                        m.matrix()[[ci, col]],
                        0.0,
                        "row {ci} must not couple to {}",
                        p.label()
                    );
                }
            }
        }
    }

    #[test]
    fn known_entries_match_hand_values() {
        let m = build_m_max().unwrap();
        // si(+z;y) responds to h_i_x: tr(-i[sx,(1+sz)/2] sy) = -2.
        let row = Configuration::SingleI {
            prep: PauliState { axis: PauliAxis::Z, plus: true },
            obs: PauliAxis::Y,
        }
        .index();
        let col = PairParameter::HamI(PauliAxis::X).index();
        assert_relative_eq!(m.matrix()[[row, col]], -2.0);
        // si(+z;z) responds to d_ii_xx: tr(A(sx,sx,(1+sz)/2) sz) = -2.
        let row = Configuration::SingleI {
            prep: PauliState { axis: PauliAxis::Z, plus: true },
            obs: PauliAxis::Z,
        }
        .index();
        let col = PairParameter::DissDiag { site: PairSite::I, axis: PauliAxis::X }.index();
        assert_relative_eq!(m.matrix()[[row, col]], -2.0);
    }

    #[test]
    fn entries_are_integers() {
        let m = build_m_max().unwrap();
        for v in m.matrix().iter() {
            assert_relative_eq!(*v, v.round(), epsilon = 1e-12);
        }
    }

    #[test]
    fn every_pair_row_is_nonzero_and_matrix_has_full_column_rank() {
        let m = build_m_max().unwrap();
        for ci in 36..N_CONFIGURATIONS {
            let nonzero = m.row(ci).iter().any(|v| *v != 0.0);
            assert!(nonzero, "pair row {ci} is all zero");
        }
        // Full column rank via SVD.
        let (rows, cols) = m.matrix().dim();
        let dm = nalgebra::DMatrix::from_fn(rows, cols, |r, c| m.matrix()[[r, c]]);
        let svd = dm.svd(false, false);
        let smax = svd.singular_values.max();
        let rank = svd.singular_values.iter().filter(|s| **s > 1e-10 * smax).count();
        assert_eq!(rank, N_PARAMETERS);
    }

    #[test]
    fn csv_export_has_header_and_all_rows() {
        let m = build_m_max().unwrap();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + N_CONFIGURATIONS * N_PARAMETERS);
        assert_eq!(lines[0], "configuration,parameter,value");
        assert!(lines[1].starts_with("si(+x;x),h_i_x,"));
        // Labels never contain commas beyond the two separators.
        for line in &lines[1..] {
            assert_eq!(line.matches(',').count(), 2);
        }
    }
}
