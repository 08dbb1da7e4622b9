"""Constructors for the states used in the experiment.

Covers pure states and their projectors, classical diagonal mixtures, the
maximally mixed state (both directly and through a simulated gradient-crusher
preparation), the pseudo-pure probe states that model low spin polarization,
and the traceless deviation matrices that tomography actually reports.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Z,
    TRACE_TOL,
    density,
    expm_hermitian,
    operator,
)


def pure_state(amplitudes) -> np.ndarray:
    """Validate a single-qubit state vector (two amplitudes, unit norm)."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if psi.shape != (2,):
        raise ValueError(f"pure state needs exactly 2 amplitudes, got {psi.shape}")
    if not np.all(np.isfinite(psi.real)) or not np.all(np.isfinite(psi.imag)):
        raise ValueError("state amplitudes must be finite")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > TRACE_TOL:
        raise ValueError(f"state vector must be normalized, got norm {norm:.12g}")
    return psi


KET0 = pure_state([1.0, 0.0])
KET1 = pure_state([0.0, 1.0])


def pure_density(psi) -> np.ndarray:
    """Projector |psi><psi| of a normalized single-qubit state."""
    psi = pure_state(psi)
    return density(np.outer(psi, psi.conj()))


def maximally_mixed() -> np.ndarray:
    """The single-qubit infinite-temperature state I/2."""
    return density(IDENTITY_2 / 2.0)


def classical_mixture(p0: float, p1: float) -> np.ndarray:
    """Diagonal mixture p0 |0><0| + p1 |1><1|."""
    if p0 < 0.0 or p1 < 0.0:
        raise ValueError(f"populations must be non-negative, got ({p0}, {p1})")
    if abs(p0 + p1 - 1.0) > TRACE_TOL:
        raise ValueError(f"populations must sum to 1, got {p0 + p1!r}")
    return density(np.diag([p0, p1]).astype(complex))


def pseudo_pure(epsilon: float, psi) -> np.ndarray:
    """Pseudo-pure state (1 - eps) I/2 + eps |psi><psi|.

    ``epsilon`` models the net polarization of the probe ensemble and must
    lie in (0, 1]: at 0 the probe carries no signal and every downstream
    normalization would divide by zero.
    """
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"epsilon must be in (0, 1], got {epsilon}")
    psi = pure_state(psi)
    rho = (1.0 - epsilon) * IDENTITY_2 / 2.0 + epsilon * np.outer(psi, psi.conj())
    return density(rho)


def deviation(rho) -> np.ndarray:
    """Traceless part rho - I/dim of a unit-trace state.

    This is the quantity an NMR tomography experiment reports; the identity
    background is unobservable.
    """
    rho = operator(rho)
    dim = rho.shape[0]
    return rho - np.eye(dim, dtype=complex) / dim


def gradient_dephase_prepare(n_phases: int) -> np.ndarray:
    """Prepare I/2 from |0><0| the way a gradient crusher does.

    A pi/2 rotation about x takes the Bloch vector of |0> to the equator;
    the field gradient is modeled as an equal-weight ensemble of ``n_phases``
    z-rotations at angles 2*pi*j/n_phases.  For any n_phases >= 2 the uniform
    average of exp(+-i*phi) over that grid vanishes exactly, so the returned
    ensemble state is I/2 to machine precision.  Skipping the averaging (a
    single phase) would leave a pure equator state instead.
    """
    if int(n_phases) != n_phases or n_phases < 2:
        raise ValueError(f"n_phases must be an integer >= 2, got {n_phases}")
    pulse = expm_hermitian(SIGMA_X / 2.0, math.pi / 2.0)
    rho = pulse @ np.outer(KET0, KET0.conj()) @ pulse.conj().T
    acc = np.zeros((2, 2), dtype=complex)
    for j in range(n_phases):
        phi = 2.0 * math.pi * j / n_phases
        rot = expm_hermitian(SIGMA_Z / 2.0, phi)
        acc += rot @ rho @ rot.conj().T
    return density(acc / n_phases)
