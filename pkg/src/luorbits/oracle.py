"""Numerical verification of orbit dimensions and symplectic rank.

Everything here is computed by plain linear algebra on fundamental vector
fields: the real rank of the projected tangent collection gives the orbit
dimension, and the rank of the symplectic Gram form gives the rank of the
projective-space two-form restricted to the orbit.  No closed-form dimension
formula enters, so these routines serve as an independent check of the
stratum classification.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .canonical import canonicalize
from .errors import RankAmbiguityWarning, ValidationError
from .states import ParticleCase, QuantumState, apply_algebra_action
from .strata import orbit_invariants

DEFAULT_RANK_TOL = 1e-9


@dataclass(frozen=True)
class OracleReport:
    """Numeric orbit/symplectic data next to the formula predictions."""

    orbit_dim_numeric: int
    symplectic_rank_numeric: int
    degeneracy_numeric: int
    formula_orbit_dim: int
    formula_degeneracy: int
    agree: bool
    rank_tolerance_used: float
    warnings: tuple[str, ...] = field(default=())


def su_basis(n: int) -> list[np.ndarray]:
    """Real basis of su(N): traceless i-diagonals plus off-diagonal pairs."""
    basis = []
    for k in range(n - 1):
        d = np.zeros((n, n), dtype=complex)
        d[k, k] = 1j
        d[k + 1, k + 1] = -1j
        basis.append(d)
    for k in range(n):
        for l in range(k + 1, n):
            re = np.zeros((n, n), dtype=complex)
            re[k, l] = 1.0
            re[l, k] = -1.0
            basis.append(re)
            im = np.zeros((n, n), dtype=complex)
            im[k, l] = 1j
            im[l, k] = 1j
            basis.append(im)
    return basis


def algebra_basis(case: ParticleCase, n: int) -> list:
    """Basis of the local algebra: su(N), or two copies for distinguishable."""
    if n < 2:
        raise ValidationError("n must be at least 2")
    single = su_basis(n)
    if case is not ParticleCase.DISTINGUISHABLE:
        return single
    zero = np.zeros((n, n), dtype=complex)
    return [(xi, zero) for xi in single] + [(zero, xi) for xi in single]


def _acted_vectors(state: QuantumState) -> np.ndarray:
    """Stack of rho(xi_a) C over the algebra basis, flattened, one row each."""
    basis = algebra_basis(state.case, state.n_levels)
    return np.array([apply_algebra_action(state, xi).ravel() for xi in basis])


def _thresholded_rank(svals: np.ndarray, rank_tol: float, scale_floor: float = 0.0):
    """Count singular values above rank_tol * scale.

    ``scale_floor`` guards the all-zero case: a form that vanishes on the
    whole orbit leaves only noise-level singular values, which must not be
    measured against their own maximum.
    """
    smax = max(svals[0] if len(svals) else 0.0, scale_floor)
    if smax == 0.0:
        return 0, False
    threshold = rank_tol * smax
    rank = int(np.count_nonzero(svals > threshold))
    ambiguous = bool(np.any((svals >= threshold / 10) & (svals <= threshold * 10)))
    return rank, ambiguous


def _warn_ambiguous(what: str) -> None:
    warnings.warn(f"{what}: singular value within a factor of 10 of the rank threshold",
                  RankAmbiguityWarning, stacklevel=3)


def orbit_dimension_numeric(state: QuantumState, rank_tol: float = DEFAULT_RANK_TOL) -> int:
    """Real rank of the projected fundamental vector fields at the state."""
    c = state.coeffs.ravel()
    acted = _acted_vectors(state)
    tangents = acted - np.outer(acted @ c.conj(), c)
    real_rows = np.hstack([tangents.real, tangents.imag])
    svals = np.linalg.svd(real_rows, compute_uv=False)
    rank, ambiguous = _thresholded_rank(svals, rank_tol)
    if ambiguous:
        _warn_ambiguous("orbit dimension")
    return rank


def symplectic_rank_numeric(state: QuantumState, rank_tol: float = DEFAULT_RANK_TOL) -> int:
    """Rank of the projective two-form on the orbit through the state.

    For anti-Hermitian representations <v, [xi, eta] v> = <xi v, eta v> - conj,
    so the form over the algebra basis is the imaginary part of the Gram
    matrix of the acted vectors; isotropy and phase directions land in its
    kernel automatically.
    """
    acted = _acted_vectors(state)
    gram = acted.conj() @ acted.T
    omega = -gram.imag
    svals = np.linalg.svd(omega, compute_uv=False)
    rank, ambiguous = _thresholded_rank(svals, rank_tol, scale_floor=gram.real.diagonal().max())
    if ambiguous:
        _warn_ambiguous("symplectic rank")
    return rank


def oracle_check(
    state: QuantumState,
    rank_tol: float = DEFAULT_RANK_TOL,
    cluster_tol: float = 1e-8,
) -> OracleReport:
    """Compare numeric orbit dimension and degeneracy with the formula values."""
    notes: list[str] = []
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RankAmbiguityWarning)
        orbit_dim = orbit_dimension_numeric(state, rank_tol)
        rank = symplectic_rank_numeric(state, rank_tol)
    for item in caught:
        if issubclass(item.category, RankAmbiguityWarning):
            notes.append(str(item.message))
    degeneracy = orbit_dim - rank
    inv = orbit_invariants(canonicalize(state), cluster_tol)
    agree = (
        not notes
        and orbit_dim == inv.orbit_dim
        and degeneracy == inv.degeneracy_D
    )
    return OracleReport(
        orbit_dim_numeric=orbit_dim,
        symplectic_rank_numeric=rank,
        degeneracy_numeric=degeneracy,
        formula_orbit_dim=inv.orbit_dim,
        formula_degeneracy=inv.degeneracy_D,
        agree=agree,
        rank_tolerance_used=rank_tol,
        warnings=tuple(notes),
    )


def oracle_to_dict(report: OracleReport) -> dict:
    return {
        "orbit_dim_numeric": report.orbit_dim_numeric,
        "symplectic_rank_numeric": report.symplectic_rank_numeric,
        "degeneracy_numeric": report.degeneracy_numeric,
        "formula_orbit_dim": report.formula_orbit_dim,
        "formula_degeneracy": report.formula_degeneracy,
        "agree": report.agree,
        "rank_tolerance_used": report.rank_tolerance_used,
        "warnings": list(report.warnings),
    }


# ---------------------------------------------------------------------------
# Three-qubit counterexample: equal moment images, provably distinct orbits.
# ---------------------------------------------------------------------------


def three_tangle(tensor) -> float:
    """Three-qubit tangle: four times the modulus of the 2x2x2 hyperdeterminant."""
    t = np.asarray(tensor, dtype=complex)
    if t.shape != (2, 2, 2):
        raise ValidationError("three_tangle needs a 2x2x2 coefficient tensor")
    norm2 = np.real(np.vdot(t, t))
    if norm2 == 0.0:
        raise ValidationError("zero tensor")
    det = (
        t[0, 0, 0] ** 2 * t[1, 1, 1] ** 2
        + t[0, 0, 1] ** 2 * t[1, 1, 0] ** 2
        + t[0, 1, 0] ** 2 * t[1, 0, 1] ** 2
        + t[1, 0, 0] ** 2 * t[0, 1, 1] ** 2
        - 2 * t[0, 0, 0] * t[0, 0, 1] * t[1, 1, 0] * t[1, 1, 1]
        - 2 * t[0, 0, 0] * t[0, 1, 0] * t[1, 0, 1] * t[1, 1, 1]
        - 2 * t[0, 0, 0] * t[0, 1, 1] * t[1, 0, 0] * t[1, 1, 1]
        - 2 * t[0, 0, 1] * t[0, 1, 0] * t[1, 0, 1] * t[1, 1, 0]
        - 2 * t[0, 0, 1] * t[0, 1, 1] * t[1, 1, 0] * t[1, 0, 0]
        - 2 * t[0, 1, 0] * t[0, 1, 1] * t[1, 0, 1] * t[1, 0, 0]
        + 4 * t[0, 0, 0] * t[0, 1, 1] * t[1, 0, 1] * t[1, 1, 0]
        + 4 * t[0, 0, 1] * t[0, 1, 0] * t[1, 0, 0] * t[1, 1, 1]
    )
    return float(4.0 * abs(det) / norm2**2)


def single_site_spectra(tensor) -> np.ndarray:
    """Sorted spectra of the three one-qubit reduced matrices, one row per site."""
    t = np.asarray(tensor, dtype=complex)
    rows = []
    for site in range(3):
        m = np.moveaxis(t, site, 0).reshape(2, 4)
        rows.append(np.sort(np.linalg.eigvalsh(m @ m.conj().T))[::-1])
    return np.array(rows)


def counterexample_demo() -> dict:
    """Two three-qubit states with equal single-site spectra but distinct orbits.

    The GHZ-type state carries tangle 8/9 while the W-type state has tangle 0,
    so the bipartite spectral test must not be extended to three parties.
    """
    x1 = np.zeros((2, 2, 2), dtype=complex)
    x1[0, 0, 0] = np.sqrt(2.0 / 3.0)
    x1[1, 1, 1] = np.sqrt(1.0 / 3.0)
    x2 = np.zeros((2, 2, 2), dtype=complex)
    x2[1, 0, 0] = x2[0, 1, 0] = x2[0, 0, 1] = 1.0 / np.sqrt(3.0)
    spectra1 = single_site_spectra(x1)
    spectra2 = single_site_spectra(x2)
    spectral_diff = float(np.max(np.abs(spectra1 - spectra2)))
    tangle1 = three_tangle(x1)
    tangle2 = three_tangle(x2)
    return {
        "spectra_x1": spectra1.tolist(),
        "spectra_x2": spectra2.tolist(),
        "max_spectral_difference": spectral_diff,
        "moment_images_equal": spectral_diff <= 1e-12,
        "tangle_x1": tangle1,
        "tangle_x2": tangle2,
        "tangle_gap": tangle1 - tangle2,
        "distinct_orbits": abs(tangle1 - tangle2) > 1e-6,
        "conclusion": (
            "equal moment images, provably distinct local-unitary orbits: "
            "spectra decide equivalence for two particles only"
        ),
    }
