"""The two-wire scattering circuit and its execution.

The register has exactly two named wires: ``probe`` (the ancilla, always the
left Kronecker factor) and ``system``.  A circuit is an ordered list of gates
drawn from three kinds: a Hadamard on one wire, a free evolution
exp(-i*phase*h) on one wire, and a controlled unitary between the wires.
Running a circuit conjugates the input density matrix by the ordered product
of the embedded 4x4 gate unitaries.

The probe readout of the interferometer built by ``build_scattering_circuit``
returns Re Tr[rho_sys O(t_m) O(t_k)]: a Hadamard splits the probe, the two
controlled copies of the observable interleaved with free evolutions apply
the two-time operator product to one interferometer arm only, and the closing
Hadamard maps the accumulated relative phase onto <sigma_z> of the probe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    HERMITIAN_TOL,
    IDENTITY_2,
    SIGMA_Y,
    SIGMA_Z,
    expm_hermitian,
    is_hermitian,
    kron,
    operator,
    unitary,
)

PROBE = "probe"
SYSTEM = "system"
WIRES = (PROBE, SYSTEM)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)

_P0 = np.array([[1, 0], [0, 0]], dtype=complex)
_P1 = np.array([[0, 0], [0, 1]], dtype=complex)


def _check_wire(wire: str) -> None:
    if wire not in WIRES:
        raise ValueError(f"unknown wire {wire!r}; expected one of {WIRES}")


@dataclass(frozen=True)
class Hadamard:
    wire: str

    def __post_init__(self):
        _check_wire(self.wire)


@dataclass(frozen=True)
class Evolve:
    """Free evolution exp(-i * phase * hamiltonian) on one wire."""

    wire: str
    hamiltonian: np.ndarray
    phase: float

    def __post_init__(self):
        _check_wire(self.wire)
        h = operator(self.hamiltonian)
        if h.shape[0] != 2 or not is_hermitian(h):
            raise ValueError("Evolve needs a 2x2 Hermitian generator")


@dataclass(frozen=True)
class ControlledU:
    control: str
    target: str
    u: np.ndarray

    def __post_init__(self):
        _check_wire(self.control)
        _check_wire(self.target)
        if self.control == self.target:
            raise ValueError("control and target must be distinct wires")
        unitary(self.u)


Gate = Hadamard | Evolve | ControlledU


@dataclass(frozen=True)
class Circuit:
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))


def embed(gate: Gate) -> np.ndarray:
    """The 4x4 unitary a gate applies to the full register.

    Single-wire gates are tensored with the identity on the other wire; a
    controlled gate becomes |0><0|_c (x) I + |1><1|_c (x) U with the factor
    order fixed by probe = left.
    """
    if isinstance(gate, Hadamard):
        one_wire = HADAMARD
        wire = gate.wire
    elif isinstance(gate, Evolve):
        one_wire = expm_hermitian(gate.hamiltonian, gate.phase)
        wire = gate.wire
    elif isinstance(gate, ControlledU):
        u = np.asarray(gate.u, dtype=complex)
        if gate.control == PROBE:
            return kron(_P0, IDENTITY_2) + kron(_P1, u)
        return kron(IDENTITY_2, _P0) + kron(u, _P1)
    else:
        raise TypeError(f"unknown gate kind: {gate!r}")
    if wire == PROBE:
        return kron(one_wire, IDENTITY_2)
    return kron(IDENTITY_2, one_wire)


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Ordered product of the embedded gates (first gate acts first)."""
    if not circuit.gates:
        raise ValueError("cannot execute an empty circuit")
    v = np.eye(4, dtype=complex)
    for gate in circuit.gates:
        v = embed(gate) @ v
    return v


def run(circuit: Circuit, rho_in: np.ndarray) -> np.ndarray:
    """Conjugate a 4x4 input state by the circuit unitary.

    Trace and positivity of the input carry over exactly, up to round-off in
    the products.
    """
    rho_in = operator(rho_in)
    if rho_in.shape[0] != 4:
        raise ValueError("run expects a 4x4 register state")
    v = circuit_unitary(circuit)
    return v @ rho_in @ v.conj().T


def build_scattering_circuit(
    h: np.ndarray, obs: np.ndarray, theta_k: float, theta_m: float
) -> Circuit:
    """Interferometer measuring the two-time correlator of ``obs``.

    ``theta_k`` and ``theta_m`` are the accumulated evolution phases (omega*t
    for a drive of angular frequency omega) of the earlier and later
    measurement instants.  The controlled two-time operator product is
    decomposed into free evolutions interleaved with two controlled copies of
    the dichotomic observable; the trailing uncontrolled evolution that would
    complete the Heisenberg conjugation acts after the last controlled gate
    and cannot affect the probe readout, so it is dropped.
    """
    h = operator(h)
    if h.shape[0] != 2 or not is_hermitian(h):
        raise ValueError("scattering circuit needs a 2x2 Hermitian Hamiltonian")
    obs = operator(obs)
    if obs.shape[0] != 2 or not is_hermitian(obs):
        raise ValueError("observable must be 2x2 Hermitian")
    if np.max(np.abs(obs @ obs - IDENTITY_2)) > HERMITIAN_TOL:
        raise ValueError("observable must be dichotomic (O^2 = I)")
    if not 0.0 <= theta_k <= theta_m:
        raise ValueError(
            f"need theta_m >= theta_k >= 0, got ({theta_k}, {theta_m})"
        )
    return Circuit(
        (
            Hadamard(PROBE),
            Evolve(SYSTEM, h, theta_k),
            ControlledU(PROBE, SYSTEM, obs),
            Evolve(SYSTEM, h, theta_m - theta_k),
            ControlledU(PROBE, SYSTEM, obs),
            Hadamard(PROBE),
        )
    )


def expect_probe_z(rho: np.ndarray) -> float:
    """<sigma_z> of the probe wire; the real part of the scattering signal."""
    rho = operator(rho)
    if rho.shape[0] != 4:
        raise ValueError("probe readout expects a 4x4 register state")
    value = np.trace(rho @ kron(SIGMA_Z, IDENTITY_2))
    return float(value.real)


def expect_probe_y(rho: np.ndarray) -> float:
    """<sigma_y> of the probe wire; carries the imaginary part of the signal."""
    rho = operator(rho)
    if rho.shape[0] != 4:
        raise ValueError("probe readout expects a 4x4 register state")
    value = np.trace(rho @ kron(SIGMA_Y, IDENTITY_2))
    return float(value.real)
