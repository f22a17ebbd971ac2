"""Congruence canonical forms: Takagi, antisymmetric Youla, and two-sided SVD.

Every local orbit meets the slice of sorted nonnegative diagonal (boson,
distinguishable) or standard-symplectic-block (fermion) representatives in
exactly one point; these routines produce that representative together with
unitary witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, SymmetryViolation
from .states import ParticleCase, QuantumState

CLUSTER_TOL = 1e-8
SNAP_TOL = 1e-12
SYMMETRY_PRE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Slice representative, SU(N) witnesses, and the reconstruction residual.

    The original coefficients satisfy C = global_phase * (witness reconstruction)
    up to ``residual`` in Frobenius norm.
    """

    case: ParticleCase
    n_levels: int
    lambdas: np.ndarray
    witness_u: np.ndarray
    witness_v: np.ndarray | None
    global_phase: complex
    residual: float


def _cluster_slices(s: np.ndarray, cluster_tol: float) -> list[slice]:
    """Split a descending nonnegative vector at relative gaps above cluster_tol."""
    bounds = [0]
    for i in range(len(s) - 1):
        if s[i] - s[i + 1] > cluster_tol * s[0]:
            bounds.append(i + 1)
    bounds.append(len(s))
    return [slice(a, b) for a, b in zip(bounds[:-1], bounds[1:])]


def _takagi_once(c, v, s, w, cluster_tol):
    n = c.shape[0]
    u = np.zeros((n, n), dtype=complex)
    for blk in _cluster_slices(s, cluster_tol):
        if s[blk][0] <= cluster_tol * s[0]:
            u[:, blk] = v[:, blk]
            continue
        z = w[:, blk].conj().T @ v[:, blk].conj()
        z = (z + z.T) / 2.0
        u[:, blk] = v[:, blk] @ scipy.linalg.sqrtm(z)
    return u


def takagi(c, cluster_tol: float = CLUSTER_TOL):
    """Factor a complex symmetric matrix as c = U diag(lam) U^t.

    Returns (U, lam) with U unitary and lam the singular values of c in
    descending order.  The square root of the unitary coupling V^dag W-bar is
    taken blockwise on singular-value clusters; on residual failure the
    clustering is coarsened before giving up.
    """
    c = np.asarray(c, dtype=complex)
    if np.linalg.norm(c - c.T) > SYMMETRY_PRE_TOL:
        raise SymmetryViolation("matrix is not symmetric within 1e-10")
    c = (c + c.T) / 2.0
    v, s, wh = np.linalg.svd(c)
    if s[0] == 0.0:
        return np.eye(c.shape[0], dtype=complex), s
    w = wh.conj().T
    accept = 1e-10 * max(1.0, s[0])
    best = None
    for ctol in (cluster_tol, cluster_tol * 1e3, 1e-4, 1e-2):
        u = _takagi_once(c, v, s, w, ctol)
        residual = np.linalg.norm(c - (u * s) @ u.T)
        if best is None or residual < best[0]:
            best = (residual, u)
        if residual <= accept:
            return u, s
    raise ConvergenceFailure(f"takagi residual {best[0]:.3e} above tolerance {accept:.3e}")


def youla_antisymmetric(c):
    """Factor a complex antisymmetric matrix as c = U (sum lam_j J_2 + 0) U^t.

    Returns (U, lam) with lam of length floor(N/2) sorted descending; each
    lam_j is a doubled singular value of c.  Pairs are extracted greedily from
    the top singular subspace and deflated, which keeps clustered values exact.
    """
    c = np.asarray(c, dtype=complex)
    if np.linalg.norm(c + c.T) > SYMMETRY_PRE_TOL:
        raise SymmetryViolation("matrix is not antisymmetric within 1e-10")
    c = (c - c.T) / 2.0
    n = c.shape[0]
    scale = np.linalg.norm(c)
    pairs = n // 2
    cols: list[np.ndarray] = []
    lams: list[float] = []
    residue = c.copy()
    while len(lams) < pairs:
        v, s, wh = np.linalg.svd(residue)
        if scale == 0.0 or s[0] <= 1e-13 * scale:
            break
        a = v[:, 0]
        b = wh[0, :]  # conj of the top right-singular vector
        # a^t c a = 0 forces <a, b> = 0; re-orthogonalize against earlier pairs
        # to stop float drift from accumulating across deflation steps.
        for col in cols:
            a = a - col * np.vdot(col, a)
            b = b - col * np.vdot(col, b)
        a = a / np.linalg.norm(a)
        b = b - a * np.vdot(a, b)
        b = b / np.linalg.norm(b)
        lams.append(float(s[0]))
        cols.extend([a, b])
        residue = residue - s[0] * (np.outer(a, b) - np.outer(b, a))
    # float noise can leave clustered extractions a few ulps out of order;
    # sort the pairs so lam is descending and the columns track it
    order = sorted(range(len(lams)), key=lambda j: -lams[j])
    lams = [lams[j] for j in order]
    cols = [cols[2 * j + off] for j in order for off in (0, 1)]
    lam = np.zeros(pairs)
    lam[: len(lams)] = lams
    if cols:
        partial = np.column_stack(cols)
        if partial.shape[1] < n:
            comp = scipy.linalg.null_space(partial.conj().T)
            u = np.column_stack([partial, comp])
        else:
            u = partial
    else:
        u = np.eye(n, dtype=complex)
    residual = np.linalg.norm(c - u @ fermion_pair_matrix(lam, n) @ u.T)
    if residual > 1e-10 * max(1.0, scale):
        raise ConvergenceFailure(f"youla residual {residual:.3e} above tolerance")
    return u, lam


def svd_congruence(c):
    """Two-sided diagonalization c = U diag(lam) V^t with lam descending."""
    c = np.asarray(c, dtype=complex)
    u, s, vh = np.linalg.svd(c)
    return u, s, vh.T


def fermion_pair_matrix(lam, n: int) -> np.ndarray:
    """Block matrix sum_j lam_j J_2 padded with a zero row/column for odd n."""
    out = np.zeros((n, n), dtype=complex)
    for j, val in enumerate(lam):
        out[2 * j, 2 * j + 1] = val
        out[2 * j + 1, 2 * j] = -val
    return out


def _into_special_unitary(u: np.ndarray):
    """Rescale a unitary into SU(N); returns (u * z, z) with det(u * z) = 1."""
    det = np.linalg.det(u)
    z = det ** (-1.0 / u.shape[0])
    return u * z, z


def canonical_matrix(cf: CanonicalForm) -> np.ndarray:
    """The slice representative matrix Lambda (or its fermionic block form)."""
    if cf.case is ParticleCase.FERMION:
        return fermion_pair_matrix(cf.lambdas, cf.n_levels)
    return np.diag(cf.lambdas.astype(complex))


def reconstruct(cf: CanonicalForm) -> np.ndarray:
    """global_phase * U Lambda U^t (or U Lambda V^t), which approximates C."""
    core = canonical_matrix(cf)
    right = cf.witness_u if cf.witness_v is None else cf.witness_v
    return cf.global_phase * (cf.witness_u @ core @ right.T)


def canonicalize(state: QuantumState) -> CanonicalForm:
    """Reduce a state to its unique slice representative with SU(N) witnesses."""
    c = state.coeffs
    n = state.n_levels
    if state.case is ParticleCase.BOSON:
        u, lam = takagi(c)
        v = None
    elif state.case is ParticleCase.FERMION:
        u, lam = youla_antisymmetric(c)
        v = None
    else:
        u, lam, v = svd_congruence(c)
    lam = lam.copy()
    if lam[0] > 0.0:
        lam[lam < SNAP_TOL * lam[0]] = 0.0
    u, zu = _into_special_unitary(u)
    phase = zu ** -2
    if v is not None:
        v, zv = _into_special_unitary(v)
        phase = 1.0 / (zu * zv)
        v.setflags(write=False)
    u.setflags(write=False)
    lam.setflags(write=False)
    cf = CanonicalForm(state.case, n, lam, u, v, complex(phase), 0.0)
    residual = float(np.linalg.norm(c - reconstruct(cf)))
    if residual > 1e-9:
        raise ConvergenceFailure(f"canonical reconstruction residual {residual:.3e}")
    return CanonicalForm(state.case, n, lam, u, v, complex(phase), residual)


def canonical_to_dict(cf: CanonicalForm) -> dict:
    from .states import complex_matrix_to_json

    return {
        "lambdas": [float(x) for x in cf.lambdas],
        "residual": cf.residual,
        "global_phase": [cf.global_phase.real, cf.global_phase.imag],
        "witness_u": complex_matrix_to_json(cf.witness_u),
        "witness_v": None if cf.witness_v is None else complex_matrix_to_json(cf.witness_v),
    }
