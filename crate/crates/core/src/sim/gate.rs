//! Gate set and dense application kernel.
//!
//! Rotation convention: `R_P(θ) = exp(−iθP/2)` for `P ∈ {X, Y, Z}`,
//! `ZZ(θ) = exp(−iθ Z⊗Z/2)`, and `SU2(θ₁,θ₂,θ₃) = R_X(θ₁)·R_Z(θ₂)·R_X(θ₃)`
//! (rightmost factor acts first). Controlled gates carry a polarity per
//! control: `true` conditions on `|1⟩`, `false` on `|0⟩`.
//!
//! The enum is generic over its angle type so the same gate shapes serve
//! both concrete circuits (`Gate<f64>`) and parameterized circuits whose
//! angles reference shared slots.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A gate acting on up to three qubits of an `N`-qubit register.
///
/// Qubit indices are 1-based with qubit 1 the most significant bit of the
/// basis index, matching the register convention of [`super::StateVector`].
#[derive(Clone, Debug, PartialEq)]
pub enum Gate<A = f64> {
    H { qubit: usize },
    Rx { qubit: usize, angle: A },
    Ry { qubit: usize, angle: A },
    Rz { qubit: usize, angle: A },
    Su2 { qubit: usize, angles: [A; 3] },
    Cz { a: usize, b: usize },
    Zz { a: usize, b: usize, angle: A },
    Ccx { controls: [usize; 2], polarities: [bool; 2], target: usize },
    CSu2 { controls: Vec<usize>, polarities: Vec<bool>, target: usize, angles: [A; 3] },
    Su4 { a: usize, b: usize, angles: [A; 15] },
}

impl<A> Gate<A> {
    /// Qubits the gate acts on, controls first, in gate-matrix bit order
    /// (first listed qubit is the most significant bit of the gate matrix).
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H { qubit }
            | Gate::Rx { qubit, .. }
            | Gate::Ry { qubit, .. }
            | Gate::Rz { qubit, .. }
            | Gate::Su2 { qubit, .. } => vec![*qubit],
            Gate::Cz { a, b } | Gate::Zz { a, b, .. } | Gate::Su4 { a, b, .. } => vec![*a, *b],
            Gate::Ccx { controls, target, .. } => vec![controls[0], controls[1], *target],
            Gate::CSu2 { controls, target, .. } => {
                let mut q = controls.clone();
                q.push(*target);
                q
            }
        }
    }

    /// Check indices against a register of `n_qubits`, rejecting repeats.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qubits = self.qubits();
        for &q in &qubits {
            if q == 0 || q > n_qubits {
                return Err(Error::QubitOutOfRange { index: q, n_qubits });
            }
        }
        for (i, &q) in qubits.iter().enumerate() {
            if qubits[i + 1..].contains(&q) {
                return Err(Error::DuplicateQubit(q));
            }
        }
        if let Gate::CSu2 { controls, polarities, .. } = self {
            if controls.is_empty() || controls.len() > 2 || polarities.len() != controls.len() {
                return Err(Error::InvalidParameter(format!(
                    "controlled-SU2 takes one or two controls with matching polarities, got {} controls and {} polarities",
                    controls.len(),
                    polarities.len()
                )));
            }
        }
        Ok(())
    }
}

impl Gate<f64> {
    /// Dense unitary as `(k, row-major 2^k × 2^k matrix)` over [`Self::qubits`].
    pub fn matrix(&self) -> (usize, Vec<Complex64>) {
        match self {
            Gate::H { .. } => (1, h_mat()),
            Gate::Rx { angle, .. } => (1, rx_mat(*angle)),
            Gate::Ry { angle, .. } => (1, ry_mat(*angle)),
            Gate::Rz { angle, .. } => (1, rz_mat(*angle)),
            Gate::Su2 { angles, .. } => (1, su2_mat(angles)),
            Gate::Cz { .. } => (2, cz_mat()),
            Gate::Zz { angle, .. } => (2, zz_mat(*angle)),
            Gate::Ccx { polarities, .. } => (3, controlled_mat(polarities, &x_mat())),
            Gate::CSu2 { polarities, angles, .. } => {
                (polarities.len() + 1, controlled_mat(polarities, &su2_mat(angles)))
            }
            Gate::Su4 { angles, .. } => (2, su4_mat(angles)),
        }
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn x_mat() -> Vec<Complex64> {
    vec![ZERO, ONE, ONE, ZERO]
}

fn h_mat() -> Vec<Complex64> {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    vec![s, s, s, -s]
}

fn rx_mat(theta: f64) -> Vec<Complex64> {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let c = Complex64::new(c, 0.0);
    let ms = Complex64::new(0.0, -s);
    vec![c, ms, ms, c]
}

fn ry_mat(theta: f64) -> Vec<Complex64> {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let (c, s) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
    vec![c, -s, s, c]
}

fn rz_mat(theta: f64) -> Vec<Complex64> {
    vec![
        Complex64::from_polar(1.0, -theta / 2.0),
        ZERO,
        ZERO,
        Complex64::from_polar(1.0, theta / 2.0),
    ]
}

fn su2_mat(angles: &[f64; 3]) -> Vec<Complex64> {
    mat_mul(1, &rx_mat(angles[0]), &mat_mul(1, &rz_mat(angles[1]), &rx_mat(angles[2])))
}

fn cz_mat() -> Vec<Complex64> {
    let mut m = identity(2);
    m[15] = -ONE;
    m
}

fn zz_mat(theta: f64) -> Vec<Complex64> {
    let aligned = Complex64::from_polar(1.0, -theta / 2.0);
    let anti = Complex64::from_polar(1.0, theta / 2.0);
    let mut m = vec![ZERO; 16];
    m[0] = aligned;
    m[5] = anti;
    m[10] = anti;
    m[15] = aligned;
    m
}

/// `exp(−iθ/2 · P⊗P) = cos(θ/2)·I − i sin(θ/2)·P⊗P` for commuting two-qubit Paulis.
fn two_qubit_rot(pp: &[Complex64], theta: f64) -> Vec<Complex64> {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let ms = Complex64::new(0.0, -(theta / 2.0).sin());
    let mut m = vec![ZERO; 16];
    for r in 0..4 {
        m[r * 4 + r] = c;
        for col in 0..4 {
            m[r * 4 + col] += ms * pp[r * 4 + col];
        }
    }
    m
}

fn xx_pauli() -> Vec<Complex64> {
    let mut m = vec![ZERO; 16];
    for r in 0..4 {
        m[r * 4 + (3 - r)] = ONE;
    }
    m
}

fn yy_pauli() -> Vec<Complex64> {
    let mut m = vec![ZERO; 16];
    m[3] = -ONE;
    m[6] = ONE;
    m[9] = ONE;
    m[12] = -ONE;
    m
}

fn zz_pauli() -> Vec<Complex64> {
    let mut m = vec![ZERO; 16];
    m[0] = ONE;
    m[5] = -ONE;
    m[10] = -ONE;
    m[15] = ONE;
    m
}

/// Two-qubit unitary from 15 angles: local SU(2) pairs around a commuting
/// XX/YY/ZZ core, `(A₁⊗A₂)·exp(−i/2(αXX+βYY+γZZ))·(A₃⊗A₄)`. All angles
/// zero gives the identity.
fn su4_mat(angles: &[f64; 15]) -> Vec<Complex64> {
    let a1 = su2_mat(&[angles[0], angles[1], angles[2]]);
    let a2 = su2_mat(&[angles[3], angles[4], angles[5]]);
    let a3 = su2_mat(&[angles[6], angles[7], angles[8]]);
    let a4 = su2_mat(&[angles[9], angles[10], angles[11]]);
    let core = mat_mul(
        2,
        &two_qubit_rot(&xx_pauli(), angles[12]),
        &mat_mul(2, &two_qubit_rot(&yy_pauli(), angles[13]), &two_qubit_rot(&zz_pauli(), angles[14])),
    );
    mat_mul(2, &kron2(&a1, &a2), &mat_mul(2, &core, &kron2(&a3, &a4)))
}

/// Controlled single-qubit block. Controls occupy the high gate bits in
/// listed order, the target the low bit; rows whose control bits match the
/// polarity pattern get the block, all others stay identity.
fn controlled_mat(polarities: &[bool], block: &[Complex64]) -> Vec<Complex64> {
    let k = polarities.len() + 1;
    let dim = 1usize << k;
    let mut m = identity(k);
    for pattern in 0..(dim >> 1) {
        let active = polarities
            .iter()
            .enumerate()
            .all(|(l, &p)| ((pattern >> (polarities.len() - 1 - l)) & 1 == 1) == p);
        if active {
            let base = pattern << 1;
            m[base * dim + base] = block[0];
            m[base * dim + base + 1] = block[1];
            m[(base + 1) * dim + base] = block[2];
            m[(base + 1) * dim + base + 1] = block[3];
        }
    }
    m
}

pub(crate) fn identity(k: usize) -> Vec<Complex64> {
    let dim = 1usize << k;
    let mut m = vec![ZERO; dim * dim];
    for r in 0..dim {
        m[r * dim + r] = ONE;
    }
    m
}

pub(crate) fn mat_mul(k: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let dim = 1usize << k;
    let mut out = vec![ZERO; dim * dim];
    for r in 0..dim {
        for inner in 0..dim {
            let av = a[r * dim + inner];
            if av == ZERO {
                continue;
            }
            for c in 0..dim {
                out[r * dim + c] += av * b[inner * dim + c];
            }
        }
    }
    out
}

fn kron2(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; 16];
    for ar in 0..2 {
        for ac in 0..2 {
            for br in 0..2 {
                for bc in 0..2 {
                    out[(ar * 2 + br) * 4 + (ac * 2 + bc)] = a[ar * 2 + ac] * b[br * 2 + bc];
                }
            }
        }
    }
    out
}

/// Apply a dense `2^k × 2^k` unitary to the listed qubits of an `n`-qubit
/// amplitude vector. `qubits` are 1-based and assumed validated.
pub(crate) fn apply_dense(
    amps: &mut [Complex64],
    n: usize,
    qubits: &[usize],
    k: usize,
    u: &[Complex64],
) {
    debug_assert_eq!(qubits.len(), k);
    debug_assert!(k <= 3);
    let dim = 1usize << n;
    let sub = 1usize << k;
    let mut positions = [0usize; 3];
    let mut full_mask = 0usize;
    for (l, &q) in qubits.iter().enumerate() {
        positions[l] = n - q;
        full_mask |= 1 << positions[l];
    }
    let mut gathered = [ZERO; 8];
    let mut idx = [0usize; 8];
    for base in 0..dim {
        if base & full_mask != 0 {
            continue;
        }
        for m in 0..sub {
            let mut j = base;
            for (l, &p) in positions[..k].iter().enumerate() {
                if (m >> (k - 1 - l)) & 1 == 1 {
                    j |= 1 << p;
                }
            }
            idx[m] = j;
            gathered[m] = amps[j];
        }
        for r in 0..sub {
            let mut acc = ZERO;
            for c in 0..sub {
                acc += u[r * sub + c] * gathered[c];
            }
            amps[idx[r]] = acc;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_dev_from_unitary(k: usize, m: &[Complex64]) -> f64 {
        // ‖U†U − I‖_max
        let dim = 1usize << k;
        let mut worst: f64 = 0.0;
        for r in 0..dim {
            for c in 0..dim {
                let mut acc = ZERO;
                for i in 0..dim {
                    acc += m[i * dim + r].conj() * m[i * dim + c];
                }
                let expect = if r == c { ONE } else { ZERO };
                worst = worst.max((acc - expect).norm());
            }
        }
        worst
    }

    #[test]
    fn named_gates_are_unitary() {
        let gates: Vec<Gate> = vec![
            Gate::H { qubit: 1 },
            Gate::Rx { qubit: 1, angle: 0.7 },
            Gate::Ry { qubit: 1, angle: -1.3 },
            Gate::Rz { qubit: 1, angle: 2.9 },
            Gate::Su2 { qubit: 1, angles: [0.3, -0.8, 1.9] },
            Gate::Cz { a: 1, b: 2 },
            Gate::Zz { a: 1, b: 2, angle: 1.1 },
            Gate::Ccx { controls: [1, 2], polarities: [true, false], target: 3 },
            Gate::CSu2 {
                controls: vec![2],
                polarities: vec![false],
                target: 1,
                angles: [0.2, 0.4, -0.6],
            },
            Gate::Su4 {
                a: 1,
                b: 2,
                angles: [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5],
            },
        ];
        for g in gates {
            let (k, m) = g.matrix();
            assert!(
                max_dev_from_unitary(k, &m) <= 1e-12,
                "gate {:?} not unitary",
                g
            );
        }
    }

    #[test]
    fn su2_follows_rx_rz_rx_order() {
        // SU2(θ,0,0) = RX(θ); SU2(0,θ,0) = RZ(θ); SU2(0,0,θ) = RX(θ)
        let theta = 0.83;
        assert_eq!(su2_mat(&[theta, 0.0, 0.0]), rx_mat(theta));
        assert_eq!(su2_mat(&[0.0, theta, 0.0]), rz_mat(theta));
        // Order check: SU2(a,b,0) = RX(a)·RZ(b)
        let lhs = su2_mat(&[0.4, 0.9, 0.0]);
        let rhs = mat_mul(1, &rx_mat(0.4), &rz_mat(0.9));
        for (l, r) in lhs.iter().zip(&rhs) {
            assert!((l - r).norm() < 1e-15);
        }
    }

    #[test]
    fn zero_angle_su4_is_identity() {
        let m = su4_mat(&[0.0; 15]);
        assert_eq!(m, identity(2));
    }

    #[test]
    fn polarity_flipped_toffoli_targets_the_right_block() {
        // Controls (1, 0): block lives where control bits are 10.
        let m = controlled_mat(&[true, false], &x_mat());
        let dim = 8;
        // Rows 100 (4) and 101 (5) swap.
        assert_eq!(m[4 * dim + 5], ONE);
        assert_eq!(m[5 * dim + 4], ONE);
        assert_eq!(m[4 * dim + 4], ZERO);
        // Rows 110/111 untouched.
        assert_eq!(m[6 * dim + 6], ONE);
        assert_eq!(m[7 * dim + 7], ONE);
    }

    #[test]
    fn duplicate_qubits_rejected() {
        let g: Gate = Gate::Ccx { controls: [1, 2], polarities: [true, true], target: 2 };
        assert_eq!(g.validate(3), Err(Error::DuplicateQubit(2)));
        let g: Gate = Gate::Cz { a: 4, b: 1 };
        assert!(matches!(g.validate(3), Err(Error::QubitOutOfRange { index: 4, .. })));
    }
}
