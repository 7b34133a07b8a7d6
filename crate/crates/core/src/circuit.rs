//! Ordered gate lists with shared parameter slots and stage markers.
//!
//! Translationally invariant layers reuse one slot across many gates: an
//! angle is either fixed or `scale · params[slot]`, which also covers
//! inverse gates (negated, reversed slots). Binding a full parameter vector
//! yields a concrete circuit; an empty slot set is an ordinary fixed
//! circuit.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::{Gate, StateVector};

/// Where a gate angle comes from.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum AngleSource {
    Fixed(f64),
    /// `scale · params[slot]`; the scale handles sign conventions and
    /// inverse layers without extra slots.
    Slot { slot: usize, scale: f64 },
}

impl AngleSource {
    pub fn slot(slot: usize) -> Self {
        AngleSource::Slot { slot, scale: 1.0 }
    }

    fn resolve(&self, params: &[f64]) -> f64 {
        match *self {
            AngleSource::Fixed(v) => v,
            AngleSource::Slot { slot, scale } => scale * params[slot],
        }
    }

    fn max_slot(&self) -> Option<usize> {
        match *self {
            AngleSource::Fixed(_) => None,
            AngleSource::Slot { slot, .. } => Some(slot),
        }
    }
}

impl From<f64> for AngleSource {
    fn from(v: f64) -> Self {
        AngleSource::Fixed(v)
    }
}

/// Readout points of the fixed 9-3-1 network: input (A), after the first
/// basis change (B), after pooling and re-preparation on the kept triple
/// (C), after the full reduction (D).
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate<AngleSource>>,
    n_slots: usize,
    markers: Vec<(Stage, usize)>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new(), n_slots: 0, markers: vec![(Stage::A, 0)] }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn gates(&self) -> &[Gate<AngleSource>] {
        &self.gates
    }

    /// Number of independent parameters the circuit expects.
    pub fn slot_count(&self) -> usize {
        self.n_slots
    }

    /// Append a gate, validating its qubit indices eagerly.
    pub fn push(&mut self, gate: Gate<AngleSource>) -> Result<()> {
        gate.validate(self.n_qubits)?;
        for src in gate_sources(&gate) {
            if let Some(slot) = src.max_slot() {
                self.n_slots = self.n_slots.max(slot + 1);
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Record that the current gate count is the given stage's readout point.
    pub fn mark_stage(&mut self, stage: Stage) {
        self.markers.push((stage, self.gates.len()));
    }

    /// Gate-count prefix for a stage marker, if recorded.
    pub fn stage_prefix(&self, stage: Stage) -> Option<usize> {
        self.markers.iter().find(|(s, _)| *s == stage).map(|(_, g)| *g)
    }

    fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.n_slots {
            return Err(Error::ParamCount { expected: self.n_slots, got: params.len() });
        }
        Ok(())
    }

    /// Apply the bound circuit to a state in place.
    pub fn apply(&self, state: &mut StateVector, params: &[f64]) -> Result<()> {
        self.apply_prefix(state, params, self.gates.len())
    }

    /// Apply only the first `n_gates` gates (stage readouts).
    pub fn apply_prefix(&self, state: &mut StateVector, params: &[f64], n_gates: usize) -> Result<()> {
        self.check_params(params)?;
        if state.n_qubits() != self.n_qubits {
            return Err(Error::RegisterMismatch { circuit: self.n_qubits, state: state.n_qubits() });
        }
        for gate in &self.gates[..n_gates] {
            state.apply(&bind_gate(gate, params))?;
        }
        Ok(())
    }

    /// Replace every slot reference by its bound value.
    pub fn bound(&self, params: &[f64]) -> Result<Circuit> {
        self.check_params(params)?;
        Ok(Circuit {
            n_qubits: self.n_qubits,
            gates: self
                .gates
                .iter()
                .map(|g| map_sources(g, &mut |s| AngleSource::Fixed(s.resolve(params))))
                .collect(),
            n_slots: 0,
            markers: self.markers.clone(),
        })
    }

    /// Full circuit unitary as a dense matrix (columns are images of basis
    /// states). Limited to 10 qubits.
    pub fn unitary(&self, params: &[f64]) -> Result<DMatrix<Complex64>> {
        self.check_params(params)?;
        if self.n_qubits > 10 {
            return Err(Error::DenseTooLarge(self.n_qubits));
        }
        let dim = 1usize << self.n_qubits;
        let mut u = DMatrix::<Complex64>::zeros(dim, dim);
        for j in 0..dim {
            let mut amps = vec![Complex64::new(0.0, 0.0); dim];
            amps[j] = Complex64::new(1.0, 0.0);
            let mut state = StateVector::from_amplitudes(amps)?;
            self.apply(&mut state, params)?;
            for (r, a) in state.amplitudes().iter().enumerate() {
                u[(r, j)] = *a;
            }
        }
        Ok(u)
    }
}

/// Human-readable listing, one gate per line; debugging aid, not a stable
/// interchange format.
impl core::fmt::Display for Circuit {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "circuit on {} qubits, {} slots", self.n_qubits, self.n_slots)?;
        for (i, gate) in self.gates.iter().enumerate() {
            for (stage, at) in &self.markers {
                if *at == i {
                    writeln!(f, "-- stage {:?} --", stage)?;
                }
            }
            writeln!(f, "{:>4}: {}", i, describe(gate))?;
        }
        for (stage, at) in &self.markers {
            if *at == self.gates.len() {
                writeln!(f, "-- stage {:?} --", stage)?;
            }
        }
        Ok(())
    }
}

fn fmt_src(s: &AngleSource) -> String {
    match s {
        AngleSource::Fixed(v) => format!("{v:.6}"),
        AngleSource::Slot { slot, scale } if *scale == 1.0 => format!("θ[{slot}]"),
        AngleSource::Slot { slot, scale } => format!("{scale}·θ[{slot}]"),
    }
}

fn describe(gate: &Gate<AngleSource>) -> String {
    match gate {
        Gate::H { qubit } => format!("H q{qubit}"),
        Gate::Rx { qubit, angle } => format!("RX({}) q{qubit}", fmt_src(angle)),
        Gate::Ry { qubit, angle } => format!("RY({}) q{qubit}", fmt_src(angle)),
        Gate::Rz { qubit, angle } => format!("RZ({}) q{qubit}", fmt_src(angle)),
        Gate::Su2 { qubit, angles } => format!(
            "SU2({},{},{}) q{qubit}",
            fmt_src(&angles[0]),
            fmt_src(&angles[1]),
            fmt_src(&angles[2])
        ),
        Gate::Cz { a, b } => format!("CZ q{a},q{b}"),
        Gate::Zz { a, b, angle } => format!("ZZ({}) q{a},q{b}", fmt_src(angle)),
        Gate::Ccx { controls, polarities, target } => format!(
            "CCX ctrl q{}={},q{}={} -> q{target}",
            controls[0], polarities[0] as u8, controls[1], polarities[1] as u8
        ),
        Gate::CSu2 { controls, polarities, target, angles } => {
            let ctrls: Vec<String> = controls
                .iter()
                .zip(polarities)
                .map(|(c, p)| format!("q{c}={}", *p as u8))
                .collect();
            format!(
                "C-SU2({},{},{}) ctrl {} -> q{target}",
                fmt_src(&angles[0]),
                fmt_src(&angles[1]),
                fmt_src(&angles[2]),
                ctrls.join(",")
            )
        }
        Gate::Su4 { a, b, .. } => format!("SU4(15 angles) q{a},q{b}"),
    }
}

fn gate_sources(gate: &Gate<AngleSource>) -> Vec<AngleSource> {
    match gate {
        Gate::H { .. } | Gate::Cz { .. } | Gate::Ccx { .. } => vec![],
        Gate::Rx { angle, .. } | Gate::Ry { angle, .. } | Gate::Rz { angle, .. } | Gate::Zz { angle, .. } => {
            vec![*angle]
        }
        Gate::Su2 { angles, .. } | Gate::CSu2 { angles, .. } => angles.to_vec(),
        Gate::Su4 { angles, .. } => angles.to_vec(),
    }
}

fn map_sources(
    gate: &Gate<AngleSource>,
    f: &mut impl FnMut(&AngleSource) -> AngleSource,
) -> Gate<AngleSource> {
    match gate {
        Gate::H { qubit } => Gate::H { qubit: *qubit },
        Gate::Rx { qubit, angle } => Gate::Rx { qubit: *qubit, angle: f(angle) },
        Gate::Ry { qubit, angle } => Gate::Ry { qubit: *qubit, angle: f(angle) },
        Gate::Rz { qubit, angle } => Gate::Rz { qubit: *qubit, angle: f(angle) },
        Gate::Su2 { qubit, angles } => {
            Gate::Su2 { qubit: *qubit, angles: [f(&angles[0]), f(&angles[1]), f(&angles[2])] }
        }
        Gate::Cz { a, b } => Gate::Cz { a: *a, b: *b },
        Gate::Zz { a, b, angle } => Gate::Zz { a: *a, b: *b, angle: f(angle) },
        Gate::Ccx { controls, polarities, target } => {
            Gate::Ccx { controls: *controls, polarities: *polarities, target: *target }
        }
        Gate::CSu2 { controls, polarities, target, angles } => Gate::CSu2 {
            controls: controls.clone(),
            polarities: polarities.clone(),
            target: *target,
            angles: [f(&angles[0]), f(&angles[1]), f(&angles[2])],
        },
        Gate::Su4 { a, b, angles } => {
            let mut out = [AngleSource::Fixed(0.0); 15];
            for (o, s) in out.iter_mut().zip(angles.iter()) {
                *o = f(s);
            }
            Gate::Su4 { a: *a, b: *b, angles: out }
        }
    }
}

pub(crate) fn bind_gate(gate: &Gate<AngleSource>, params: &[f64]) -> Gate<f64> {
    match gate {
        Gate::H { qubit } => Gate::H { qubit: *qubit },
        Gate::Rx { qubit, angle } => Gate::Rx { qubit: *qubit, angle: angle.resolve(params) },
        Gate::Ry { qubit, angle } => Gate::Ry { qubit: *qubit, angle: angle.resolve(params) },
        Gate::Rz { qubit, angle } => Gate::Rz { qubit: *qubit, angle: angle.resolve(params) },
        Gate::Su2 { qubit, angles } => Gate::Su2 {
            qubit: *qubit,
            angles: [
                angles[0].resolve(params),
                angles[1].resolve(params),
                angles[2].resolve(params),
            ],
        },
        Gate::Cz { a, b } => Gate::Cz { a: *a, b: *b },
        Gate::Zz { a, b, angle } => Gate::Zz { a: *a, b: *b, angle: angle.resolve(params) },
        Gate::Ccx { controls, polarities, target } => {
            Gate::Ccx { controls: *controls, polarities: *polarities, target: *target }
        }
        Gate::CSu2 { controls, polarities, target, angles } => Gate::CSu2 {
            controls: controls.clone(),
            polarities: polarities.clone(),
            target: *target,
            angles: [
                angles[0].resolve(params),
                angles[1].resolve(params),
                angles[2].resolve(params),
            ],
        },
        Gate::Su4 { a, b, angles } => {
            let mut out = [0.0; 15];
            for (o, s) in out.iter_mut().zip(angles.iter()) {
                *o = s.resolve(params);
            }
            Gate::Su4 { a: *a, b: *b, angles: out }
        }
    }
}

/// `U† Ô U` as a dense Hermitian matrix, for a fully bound circuit.
pub fn conjugate_operator(
    circuit: &Circuit,
    obs: &crate::sim::PauliStringObservable,
) -> Result<crate::sim::HermitianOperator> {
    if circuit.slot_count() != 0 {
        return Err(Error::ParamCount { expected: circuit.slot_count(), got: 0 });
    }
    if obs.n_qubits() != circuit.n_qubits() {
        return Err(Error::ObservableLength {
            obs: obs.n_qubits(),
            n_qubits: circuit.n_qubits(),
        });
    }
    let u = circuit.unitary(&[])?;
    let o = crate::sim::HermitianOperator::from_pauli_string(obs);
    let dressed = u.adjoint() * o.matrix() * &u;
    crate::sim::HermitianOperator::new(dressed)
}
