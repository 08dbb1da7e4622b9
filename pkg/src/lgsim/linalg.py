"""Dense complex linear algebra for one- and two-qubit operators.

Everything in this package is a plain ``numpy`` array of ``complex`` entries;
states, gates and observables are 2x2 or 4x4 matrices.  The constructors
``operator``, ``unitary`` and ``density`` validate the respective invariants
once, on entry into the library; the algebraic operations below then assume
valid inputs and stay pure.  All values are immutable by convention, so the
whole module is safe for concurrent use.
"""

from __future__ import annotations

import math

import numpy as np

# Entrywise tolerance for Hermiticity / unitarity checks.
HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-12
TRACE_TOL = 1e-12
# Smallest admissible eigenvalue of a density matrix (round-off slack
# accumulated by 4x4 products).
POSITIVITY_TOL = 1e-10

# Off-diagonal Frobenius norm at which the Jacobi eigensolver stops, and the
# sweep cap after which it gives up.
_JACOBI_TOL = 1e-14
_JACOBI_MAX_SWEEPS = 100

IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def operator(entries) -> np.ndarray:
    """Coerce ``entries`` to a square complex matrix of dimension 2 or 4.

    Rejects non-square shapes, dimensions other than 2 and 4 (the register
    here is never larger than one probe plus one system qubit) and non-finite
    entries.
    """
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"operator must be a square matrix, got shape {m.shape}")
    if m.shape[0] not in (2, 4):
        raise ValueError(f"operator dimension must be 2 or 4, got {m.shape[0]}")
    if not np.isfinite(m).all():
        raise ValueError("operator entries must be finite")
    return m


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def unitary(entries) -> np.ndarray:
    """Validate that ``entries`` is unitary (U U+ = I entrywise to 1e-12)."""
    u = operator(entries)
    residual = np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0])))
    if residual > UNITARY_TOL:
        raise ValueError(f"matrix is not unitary (|UU+ - I| = {residual:.3e})")
    return u


def density(entries) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, positive.

    Positivity is checked with slack ``-1e-10`` on the smallest eigenvalue to
    absorb round-off from repeated 4x4 products.
    """
    rho = operator(entries)
    if not is_hermitian(rho):
        raise ValueError("density matrix must be Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"density matrix must have unit trace, got {tr:.12g}")
    evals, _ = eig_hermitian(rho)
    if evals[0] < -POSITIVITY_TOL:
        raise ValueError(f"density matrix has negative eigenvalue {evals[0]:.3e}")
    return rho


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of two equal-dimension operators."""
    a, b = operator(a), operator(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    return a @ b


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with ``a`` as the left (probe-side) factor.

    The register is capped at two qubits, so the result may not exceed
    dimension 4.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    n = a.shape[0] * b.shape[0]
    if n > 4:
        raise ValueError(
            f"kron result dimension {n} exceeds the two-qubit register"
        )
    # einsum beats np.kron by a wide margin at these fixed small sizes
    return np.einsum("ij,kl->ikjl", a, b).reshape(n, n)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(a, dtype=complex).conj().T


def trace(a: np.ndarray) -> complex:
    """Sum of diagonal entries."""
    return complex(np.trace(np.asarray(a, dtype=complex)))


def partial_trace(rho: np.ndarray, keep: str) -> np.ndarray:
    """Reduced state of one wire of a two-qubit register.

    ``keep`` selects the wire whose state is returned: ``"probe"`` is the
    left Kronecker factor, ``"system"`` the right.
    """
    rho = operator(rho)
    if rho.shape[0] != 4:
        raise ValueError("partial_trace expects a 4x4 register state")
    r = rho.reshape(2, 2, 2, 2)
    if keep == "probe":
        return np.einsum("isjs->ij", r)
    if keep == "system":
        return np.einsum("sisj->ij", r)
    raise ValueError(f"keep must be 'probe' or 'system', got {keep!r}")


def expm_hermitian(h: np.ndarray, angle: float) -> np.ndarray:
    """exp(-i * angle * h) for a 2x2 Hermitian generator, in closed form.

    Writing h = a0*I + a.sigma, the exponential is
    exp(-i*angle*a0) * (cos(angle*|a|) I - i sin(angle*|a|) (a/|a|).sigma),
    which is exact for a single qubit; no series or scaling-and-squaring is
    involved.
    """
    h = operator(h)
    if h.shape[0] != 2:
        raise ValueError("expm_hermitian is defined for 2x2 generators only")
    if not is_hermitian(h):
        raise ValueError("expm_hermitian requires a Hermitian generator")
    a0 = (h[0, 0].real + h[1, 1].real) / 2.0
    ax = h[0, 1].real
    ay = -h[0, 1].imag
    az = (h[0, 0].real - h[1, 1].real) / 2.0
    norm = math.sqrt(ax * ax + ay * ay + az * az)
    phase = complex(math.cos(angle * a0), -math.sin(angle * a0))
    if norm == 0.0:
        return unitary(phase * IDENTITY_2)
    axis = (ax * SIGMA_X + ay * SIGMA_Y + az * SIGMA_Z) / norm
    u = math.cos(angle * norm) * IDENTITY_2 - 1j * math.sin(angle * norm) * axis
    return unitary(phase * u)


def eig_hermitian(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian 2x2 or 4x4 matrix.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues in
    ascending order and the matching eigenvectors as columns of a unitary
    matrix.  Uses cyclic Jacobi rotations: at dimension <= 4 a handful of
    sweeps drives the off-diagonal norm below 1e-14.
    """
    h = operator(h)
    if not is_hermitian(h):
        raise ValueError("eig_hermitian requires a Hermitian matrix")
    n = h.shape[0]
    a = h.astype(complex).copy()
    v = np.eye(n, dtype=complex)
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = math.sqrt(float(np.sum(np.abs(a[off_mask]) ** 2)))
        if off <= _JACOBI_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                r = abs(z)
                if r == 0.0:
                    continue
                delta = (a[p, p].real - a[q, q].real) / 2.0
                mag = math.hypot(delta, r)
                # m - delta computed without cancellation for delta > 0
                md = (r * r) / (mag + delta) if delta >= 0.0 else mag - delta
                nrm = math.hypot(r, md)
                j = np.eye(n, dtype=complex)
                j[p, p] = -md / nrm
                j[q, p] = z.conjugate() / nrm
                j[p, q] = z / nrm
                j[q, q] = md / nrm
                a = j.conj().T @ a @ j
                a[p, q] = 0.0
                a[q, p] = 0.0
                v = v @ j
    else:
        raise ArithmeticError(
            f"Jacobi eigensolver did not converge in {_JACOBI_MAX_SWEEPS} sweeps"
        )
    evals = np.diag(a).real.copy()
    order = np.argsort(evals, kind="stable")
    return evals[order], v[:, order]


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Half the sum of |eigenvalues| of (a - b); in [0, 1] for states."""
    a, b = operator(a), operator(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    evals, _ = eig_hermitian(a - b)
    return 0.5 * float(np.sum(np.abs(evals)))


def overlap_fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """Normalized Hilbert-Schmidt overlap Tr(ab) / sqrt(Tr(a^2) Tr(b^2)).

    Defined for any pair of nonzero Hermitian matrices, in particular for
    traceless deviation matrices where state fidelities do not apply.  The
    value lies in [-1, 1].
    """
    a, b = operator(a), operator(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")
    if not is_hermitian(a) or not is_hermitian(b):
        raise ValueError("overlap_fidelity requires Hermitian inputs")
    na = np.trace(a @ a).real
    nb = np.trace(b @ b).real
    if na <= 0.0 or nb <= 0.0:
        raise ValueError("overlap_fidelity is undefined for a zero matrix")
    return float(np.trace(a @ b).real / math.sqrt(na * nb))
