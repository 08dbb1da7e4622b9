"""Two-time correlators and the Leggett-Garg quantity K.

Correlators are available through two independent routes: the scattering
circuit (the simulated experiment, including the pseudo-pure probe and its
reference normalization) and a direct Heisenberg-picture trace that serves as
the oracle the circuit is validated against.  ``k_value`` assembles
K = C12 + C23 - C13 from circuit correlators for an equally spaced
three-measurement schedule; ``analytic_k`` evaluates the closed-form
prediction 2 cos(theta) - cos(2 theta), where theta is the dimensionless
phase (energy gap) x (spacing) accumulated between consecutive measurements.

hbar = 1 throughout: times, frequencies and energies enter only through
phases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import build_scattering_circuit, expect_probe_z, run
from .linalg import (
    HERMITIAN_TOL,
    IDENTITY_2,
    SIGMA_X,
    expm_hermitian,
    is_hermitian,
    kron,
    operator,
)
from .states import KET0, pseudo_pure, pure_state

# Guard band for strict threshold comparisons, so the exact K = 1 boundary at
# theta = 0 is never flagged as a violation.
_VIOLATION_GUARD = 1e-12
_BISECT_TOL = 1e-9
_REFERENCE_FLOOR = 1e-15


def dichotomic_observable(entries) -> np.ndarray:
    """Validate a 2x2 Hermitian observable with O^2 = I (eigenvalues +-1)."""
    obs = operator(entries)
    if obs.shape[0] != 2 or not is_hermitian(obs):
        raise ValueError("observable must be 2x2 Hermitian")
    if np.max(np.abs(obs @ obs - IDENTITY_2)) > HERMITIAN_TOL:
        raise ValueError("observable must square to the identity")
    return obs


def observable_from_state(psi0) -> np.ndarray:
    """The projector-valued observable 2 |psi0><psi0| - I.

    A +1 outcome means the system is still in ``psi0``, a -1 outcome that it
    has left it.  For |0> this is sigma_z, for |1> it is -sigma_z.
    """
    psi0 = pure_state(psi0)
    return dichotomic_observable(2.0 * np.outer(psi0, psi0.conj()) - IDENTITY_2)


@dataclass(frozen=True)
class Evolution:
    """Fixed transverse drive H = omega * sigma_x (hbar = 1).

    The eigenvalues are +-omega, so the energy gap between them is 2*omega.
    """

    omega: float

    def __post_init__(self):
        if self.omega < 0.0:
            raise ValueError(f"omega must be >= 0, got {self.omega}")

    @property
    def hamiltonian(self) -> np.ndarray:
        return self.omega * SIGMA_X

    @property
    def energy_gap(self) -> float:
        return 2.0 * self.omega


@dataclass(frozen=True)
class Schedule:
    """Three measurement times with equal spacing t2 - t1 = t3 - t2."""

    t1: float
    t2: float
    t3: float

    def __post_init__(self):
        if not self.t1 <= self.t2 <= self.t3:
            raise ValueError(
                f"need t1 <= t2 <= t3, got ({self.t1}, {self.t2}, {self.t3})"
            )
        if abs((self.t2 - self.t1) - (self.t3 - self.t2)) > 1e-12:
            raise ValueError("schedule spacing must be equal: t2-t1 != t3-t2")

    @property
    def dt(self) -> float:
        return self.t2 - self.t1


@dataclass(frozen=True)
class LGResult:
    """One sweep point: theta = gap * spacing, the three correlators, and K."""

    theta: float
    c12: float
    c23: float
    c13: float
    k: float

    def __post_init__(self):
        for name in ("c12", "c23", "c13"):
            if abs(getattr(self, name)) > 1.0 + 1e-10:
                raise ValueError(f"|{name}| exceeds 1: {getattr(self, name)!r}")
        if abs(self.k - (self.c12 + self.c23 - self.c13)) > 1e-12:
            raise ValueError("k is inconsistent with c12 + c23 - c13")


def heisenberg_observable(obs, evo: Evolution, t: float) -> np.ndarray:
    """O(t) = exp(+iHt) O exp(-iHt); stays Hermitian and dichotomic.

    Convention: for O = sigma_z under H = omega*sigma_x this gives
    cos(2*omega*t)*sigma_z + sin(2*omega*t)*sigma_y.  The sign of the sigma_y
    term is convention-dependent and drops out of every reported quantity.
    """
    obs = dichotomic_observable(obs)
    forward = expm_hermitian(evo.hamiltonian, t)
    backward = expm_hermitian(evo.hamiltonian, -t)
    return backward @ obs @ forward


def correlation_oracle(
    rho_sys, obs, evo: Evolution, t_k: float, t_m: float
) -> float:
    """Re Tr[rho_sys O(t_m) O(t_k)] computed directly in the Heisenberg picture.

    This is the brute-force route the circuit is checked against; it never
    touches the probe or the circuit machinery.
    """
    rho_sys = operator(rho_sys)
    product = heisenberg_observable(obs, evo, t_m) @ heisenberg_observable(
        obs, evo, t_k
    )
    return float(np.trace(rho_sys @ product).real)


def correlation_circuit(
    rho_sys,
    obs,
    evo: Evolution,
    t_k: float,
    t_m: float,
    probe_eps: float = 1.0,
) -> tuple[float, float]:
    """Two-time correlator measured through the scattering circuit.

    The probe enters as the pseudo-pure state (1-eps) I/2 + eps |0><0|, so
    the raw probe signal is scaled by eps.  As in the experiment, the raw
    value is normalized to a reference: the signal of the zero-time circuit,
    whose correlator is exactly 1 because O^2 = I.  Returns ``(raw,
    normalized)``; the normalized value matches ``correlation_oracle``.
    """
    rho_sys = operator(rho_sys)
    if rho_sys.shape[0] != 2:
        raise ValueError("system state must be a single qubit")
    probe = pseudo_pure(probe_eps, KET0)
    rho_in = kron(probe, rho_sys)
    h = evo.hamiltonian

    raw = expect_probe_z(
        run(build_scattering_circuit(h, obs, evo.omega * t_k, evo.omega * t_m), rho_in)
    )
    reference = expect_probe_z(
        run(build_scattering_circuit(h, obs, 0.0, 0.0), rho_in)
    )
    if abs(reference) < _REFERENCE_FLOOR:
        raise ValueError("reference signal vanished; cannot normalize")
    return raw, raw / reference


def analytic_k(theta: float) -> float:
    """Closed-form prediction K(theta) = 2 cos(theta) - cos(2 theta)."""
    return 2.0 * math.cos(theta) - math.cos(2.0 * theta)


def k_value(
    rho_sys,
    obs,
    evo: Evolution,
    schedule: Schedule,
    probe_eps: float = 1.0,
) -> LGResult:
    """K = C12 + C23 - C13 from normalized circuit correlators."""
    pairs = (
        (schedule.t1, schedule.t2),
        (schedule.t2, schedule.t3),
        (schedule.t1, schedule.t3),
    )
    c12, c23, c13 = (
        correlation_circuit(rho_sys, obs, evo, t_k, t_m, probe_eps)[1]
        for t_k, t_m in pairs
    )
    theta = evo.energy_gap * schedule.dt
    return LGResult(theta=theta, c12=c12, c23=c23, c13=c13, k=c12 + c23 - c13)


def sweep(
    evo: Evolution,
    rho_sys,
    probe_eps: float,
    theta_min: float,
    theta_max: float,
    steps: int,
    obs=None,
) -> list[LGResult]:
    """Evaluate K on a uniform theta grid, endpoints included.

    theta is the canonical parameter; the measurement spacing is recovered as
    theta / energy_gap, with measurements taken at times (0, dt, 2*dt).
    ``obs`` defaults to the observable built from |0>, i.e. sigma_z.  Every
    grid point is an independent pure computation, so results are
    deterministic regardless of evaluation order.
    """
    if steps < 2:
        raise ValueError(f"steps must be >= 2, got {steps}")
    if not theta_min < theta_max:
        raise ValueError(f"need theta_min < theta_max, got ({theta_min}, {theta_max})")
    if theta_min < 0.0:
        raise ValueError(f"theta_min must be >= 0, got {theta_min}")
    if evo.omega <= 0.0:
        raise ValueError("sweep needs omega > 0 to map theta onto a time spacing")
    obs = observable_from_state(KET0) if obs is None else dichotomic_observable(obs)
    results = []
    for theta in np.linspace(theta_min, theta_max, steps):
        dt = float(theta) / evo.energy_gap
        results.append(
            k_value(rho_sys, obs, evo, Schedule(0.0, dt, 2.0 * dt), probe_eps)
        )
    return results


def find_violations(
    results: list[LGResult],
    threshold: float = 1.0,
    k_fn=analytic_k,
) -> list[tuple[float, float]]:
    """Maximal theta intervals where K exceeds the classical bound.

    Grid membership uses K > threshold + 1e-12, so the exact K = threshold
    boundary is never flagged.  Interval endpoints falling between grid
    points are refined by bisecting ``k_fn`` (the continuation of the swept
    curve) down to 1e-9.
    """
    if not results:
        raise ValueError("find_violations needs at least one sweep point")
    thetas = [r.theta for r in results]
    if any(b <= a for a, b in zip(thetas, thetas[1:])):
        raise ValueError("results must be sorted by strictly increasing theta")

    above = [r.k > threshold + _VIOLATION_GUARD for r in results]
    intervals: list[tuple[float, float]] = []
    i = 0
    n = len(results)
    while i < n:
        if not above[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and above[j + 1]:
            j += 1
        lo = thetas[i]
        if i > 0:
            lo = _bisect_crossing(k_fn, threshold, thetas[i - 1], thetas[i])
        hi = thetas[j]
        if j + 1 < n:
            hi = _bisect_crossing(k_fn, threshold, thetas[j + 1], thetas[j])
        intervals.append((lo, hi))
        i = j + 1
    return intervals


def _bisect_crossing(k_fn, threshold: float, outside: float, inside: float) -> float:
    """Locate K = threshold between a non-violating and a violating point."""
    a, b = outside, inside
    while abs(b - a) > _BISECT_TOL:
        mid = 0.5 * (a + b)
        if k_fn(mid) > threshold:
            b = mid
        else:
            a = mid
    return 0.5 * (a + b)
