//! Dense Pauli algebra on one and two sites.
//!
//! Everything here works with explicit 2x2 / 4x4 complex matrices; it is the
//! small, easily auditable layer the coefficient matrix and its tests are
//! built on. The convention for a dissipator cross term is
//!
//!   A(p, q, rho) = p rho q - (q p rho + rho q p) / 2,
//!
//! so `A(l, l^dag, rho)` is the usual Lindblad term for jump operator `l`.

use crate::error::{CoreError, Result};
use ndarray::Array2;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

pub const IM: C64 = C64::new(0.0, 1.0);

/// One of the three Pauli axes, ordered X < Y < Z everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

pub const AXES: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

impl PauliAxis {
    pub fn index(self) -> usize {
        match self {
            PauliAxis::X => 0,
            PauliAxis::Y => 1,
            PauliAxis::Z => 2,
        }
    }

    pub fn from_index(ix: usize) -> Self {
        AXES[ix]
    }

    pub fn letter(self) -> char {
        match self {
            PauliAxis::X => 'x',
            PauliAxis::Y => 'y',
            PauliAxis::Z => 'z',
        }
    }
}

/// A single-qubit Pauli eigenstate tau = (1 + sign * sigma_axis) / 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliState {
    pub axis: PauliAxis,
    pub plus: bool,
}

/// The six preparation states in protocol order:
/// +x, -x, +y, -y, +z, -z. The position in this list is also the
/// preparation-alphabet index used in settings tables and data files.
pub const PREP_STATES: [PauliState; 6] = [
    PauliState { axis: PauliAxis::X, plus: true },
    PauliState { axis: PauliAxis::X, plus: false },
    PauliState { axis: PauliAxis::Y, plus: true },
    PauliState { axis: PauliAxis::Y, plus: false },
    PauliState { axis: PauliAxis::Z, plus: true },
    PauliState { axis: PauliAxis::Z, plus: false },
];

impl PauliState {
    pub fn index(self) -> usize {
        self.axis.index() * 2 + usize::from(!self.plus)
    }

    pub fn from_index(ix: usize) -> Self {
        PREP_STATES[ix]
    }

    pub fn sign(self) -> f64 {
        if self.plus {
            1.0
        } else {
            -1.0
        }
    }

    pub fn label(self) -> String {
        format!("{}{}", if self.plus { '+' } else { '-' }, self.axis.letter())
    }
}

pub fn identity(dim: usize) -> Array2<C64> {
    Array2::from_diag_elem(dim, C64::new(1.0, 0.0))
}

/// The 2x2 Pauli matrix for an axis.
pub fn sigma(axis: PauliAxis) -> Array2<C64> {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    match axis {
        PauliAxis::X => Array2::from_shape_vec((2, 2), vec![zero, one, one, zero]).unwrap(),
        PauliAxis::Y => Array2::from_shape_vec((2, 2), vec![zero, -IM, IM, zero]).unwrap(),
        PauliAxis::Z => Array2::from_shape_vec((2, 2), vec![one, zero, zero, -one]).unwrap(),
    }
}

/// Density matrix (1 + sign * sigma_axis) / 2 of a preparation state.
pub fn state_density(state: PauliState) -> Array2<C64> {
    let mut rho = identity(2);
    rho.scaled_add(C64::new(state.sign(), 0.0), &sigma(state.axis));
    rho.mapv_inplace(|v| v * 0.5);
    rho
}

/// Kronecker product, row-major index convention: (a ox b)[(r1,r2),(c1,c2)] = a[r1,c1] b[r2,c2].
pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for r1 in 0..ar {
        for c1 in 0..ac {
            let v = a[[r1, c1]];
            for r2 in 0..br {
                for c2 in 0..bc {
                    out[[r1 * br + r2, c1 * bc + c2]] = v * b[[r2, c2]];
                }
            }
        }
    }
    out
}

/// Which of the two sites of a qubit pair an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairSite {
    I,
    J,
}

/// sigma_axis acting on one site of the pair space (4x4).
pub fn sigma_on_pair(site: PairSite, axis: PauliAxis) -> Array2<C64> {
    match site {
        PairSite::I => kron(&sigma(axis), &identity(2)),
        PairSite::J => kron(&identity(2), &sigma(axis)),
    }
}

/// Two-site word sigma_i^a sigma_j^b on the pair space (4x4).
pub fn pair_word(a: PauliAxis, b: PauliAxis) -> Array2<C64> {
    kron(&sigma(a), &sigma(b))
}

pub fn matmul(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    assert_eq!(ac, br);
    let mut out = Array2::zeros((ar, bc));
    for r in 0..ar {
        for m in 0..ac {
            let v = a[[r, m]];
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..bc {
                out[[r, c]] += v * b[[m, c]];
            }
        }
    }
    out
}

/// tr(a b) without forming the product.
pub fn trace_product(a: &Array2<C64>, b: &Array2<C64>) -> C64 {
    let (ar, ac) = a.dim();
    assert_eq!((ac, ar), b.dim());
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..ar {
        for c in 0..ac {
            acc += a[[r, c]] * b[[c, r]];
        }
    }
    acc
}

fn check_same_square(mats: &[&Array2<C64>]) -> Result<usize> {
    let dim = mats[0].dim().0;
    for m in mats {
        if m.dim() != (dim, dim) {
            return Err(CoreError::DimensionMismatch(format!(
                "expected all operands {dim}x{dim}, got {:?}",
                m.dim()
            )));
        }
    }
    if dim != 2 && dim != 4 {
        return Err(CoreError::DimensionMismatch(format!(
            "operands must be one- or two-site (2x2 or 4x4), got {dim}x{dim}"
        )));
    }
    Ok(dim)
}

fn real_part_checked(v: C64) -> Result<f64> {
    if v.im.abs() > 1e-12 {
        return Err(CoreError::NonRealCoefficient { imag: v.im });
    }
    Ok(v.re)
}

/// tr(-i [p, rho] o): the rate at which a Hamiltonian term `p` moves the
/// expectation of `o` when the state is `rho`. Real for Hermitian inputs.
pub fn hamiltonian_trace_coeff(p: &Array2<C64>, rho: &Array2<C64>, o: &Array2<C64>) -> Result<f64> {
    check_same_square(&[p, rho, o])?;
    let comm = &matmul(p, rho) - &matmul(rho, p);
    real_part_checked(-IM * trace_product(&comm, o))
}

/// A(p, q, rho) = p rho q - (q p rho + rho q p) / 2.
pub fn dissipator_action(p: &Array2<C64>, q: &Array2<C64>, rho: &Array2<C64>) -> Result<Array2<C64>> {
    check_same_square(&[p, q, rho])?;
    let qp = matmul(q, p);
    let mut out = matmul(&matmul(p, rho), q);
    let anti = &matmul(&qp, rho) + &matmul(rho, &qp);
    out.scaled_add(C64::new(-0.5, 0.0), &anti);
    Ok(out)
}

/// tr(A(p, q, rho) o); complex in general, real when p = q.
pub fn dissipator_trace_coeff(
    p: &Array2<C64>,
    q: &Array2<C64>,
    rho: &Array2<C64>,
    o: &Array2<C64>,
) -> Result<C64> {
    check_same_square(&[p, q, rho, o])?;
    Ok(trace_product(&dissipator_action(p, q, rho)?, o))
}

pub fn max_abs(m: &Array2<C64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_deviation(m: &Array2<C64>) -> f64 {
    let (r, c) = m.dim();
    assert_eq!(r, c);
    let mut dev: f64 = 0.0;
    for a in 0..r {
        for b in 0..c {
            dev = dev.max((m[[a, b]] - m[[b, a]].conj()).norm());
        }
    }
    dev
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pauli_matrices_square_to_identity() {
        for axis in AXES {
            let s = sigma(axis);
            let sq = matmul(&s, &s);
            assert_relative_eq!(max_abs(&(&sq - &identity(2))), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn prep_states_are_pure_with_unit_trace() {
        for state in PREP_STATES {
            let rho = state_density(state);
            let tr = rho[[0, 0]] + rho[[1, 1]];
            assert_relative_eq!(tr.re, 1.0, epsilon = 1e-15);
            // purity: rho^2 = rho
            let sq = matmul(&rho, &rho);
            assert_relative_eq!(max_abs(&(&sq - &rho)), 0.0, epsilon = 1e-14);
            // sigma_axis expectation is the sign
            let exp = trace_product(&rho, &sigma(state.axis));
            assert_relative_eq!(exp.re, state.sign(), epsilon = 1e-15);
        }
    }

    #[test]
    fn prep_index_round_trip_matches_protocol_order() {
        for (ix, state) in PREP_STATES.iter().enumerate() {
            assert_eq!(state.index(), ix);
            assert_eq!(PauliState::from_index(ix), *state);
        }
        assert_eq!(PREP_STATES[0].label(), "+x");
        assert_eq!(PREP_STATES[3].label(), "-y");
    }

    // Hand-checked value: -i[sx, (1+sz)/2] = -sy, and tr(-sy sy) = -2.
    #[test]
    fn hamiltonian_coeff_x_rotates_z_into_y() {
        let rho = state_density(PauliState { axis: PauliAxis::Z, plus: true });
        let v = hamiltonian_trace_coeff(&sigma(PauliAxis::X), &rho, &sigma(PauliAxis::Y)).unwrap();
        assert_relative_eq!(v, -2.0, epsilon = 1e-14);
    }

    #[test]
    fn hamiltonian_coeff_vanishes_when_term_commutes_with_state() {
        let rho = state_density(PauliState { axis: PauliAxis::Z, plus: true });
        for obs in AXES {
            let v = hamiltonian_trace_coeff(&sigma(PauliAxis::Z), &rho, &sigma(obs)).unwrap();
            assert_relative_eq!(v, 0.0, epsilon = 1e-14);
        }
    }

    // sx (1+sz)/2 sx - (1+sz)/2 = -sz, so against o = sz the value is -2.
    #[test]
    fn dissipator_coeff_bit_flip_damps_z() {
        let rho = state_density(PauliState { axis: PauliAxis::Z, plus: true });
        let sx = sigma(PauliAxis::X);
        let v = dissipator_trace_coeff(&sx, &sx, &rho, &sigma(PauliAxis::Z)).unwrap();
        assert_relative_eq!(v.re, -2.0, epsilon = 1e-14);
        assert_relative_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn dissipator_action_is_trace_free() {
        // tr A(p, q, rho) = tr(p rho q) - tr(q p rho) = 0 by cyclicity.
        let rho = state_density(PauliState { axis: PauliAxis::Y, plus: false });
        for a in AXES {
            for b in AXES {
                let act = dissipator_action(&sigma(a), &sigma(b), &rho).unwrap();
                let tr = act[[0, 0]] + act[[1, 1]];
                assert!(tr.norm() < 1e-14);
            }
        }
    }

    #[test]
    fn cross_coeffs_are_conjugate_pairs() {
        let rho = state_density(PauliState { axis: PauliAxis::X, plus: true });
        let o = sigma(PauliAxis::Y);
        let p = sigma(PauliAxis::X);
        let q = sigma(PauliAxis::Z);
        let t1 = dissipator_trace_coeff(&p, &q, &rho, &o).unwrap();
        let t2 = dissipator_trace_coeff(&q, &p, &rho, &o).unwrap();
        assert_relative_eq!(t1.re, t2.re, epsilon = 1e-14);
        assert_relative_eq!(t1.im, -t2.im, epsilon = 1e-14);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let rho = state_density(PauliState { axis: PauliAxis::Z, plus: true });
        let big = identity(4);
        assert!(matches!(
            hamiltonian_trace_coeff(&big, &rho, &sigma(PauliAxis::X)),
            Err(CoreError::DimensionMismatch(_))
        ));
        let odd = identity(3);
        assert!(matches!(
            hamiltonian_trace_coeff(&odd, &odd, &odd),
            Err(CoreError::DimensionMismatch(_))
        ));
    }
}
