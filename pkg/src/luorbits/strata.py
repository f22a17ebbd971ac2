"""Multiplicity vectors, flag and fiber dimensions, and stratum enumeration.

The discrete type of a local orbit is the block pattern d = (d_1, ..., d_k)
of equal entries in the sorted moment spectrum together with a degeneracy
flag (rank-deficient coefficient matrix).  The moment image of the orbit is
a flag manifold of real dimension N^2 - sum d_i^2 (doubled for
distinguishable particles); the fiber over it is a torus times symmetric
spaces, and its dimension is the symplectic degeneracy D of the orbit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .canonical import CanonicalForm, canonicalize, fermion_pair_matrix
from .errors import InvalidStratum, UnsortedInput, ValidationError
from .states import ParticleCase, QuantumState, apply_group_action, random_local_unitary, validate

DEFAULT_CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class MultiplicityVector:
    """Block sizes of the sorted moment spectrum; degenerate = zero last block."""

    d: tuple[int, ...]
    degenerate: bool

    @property
    def k(self) -> int:
        return len(self.d)

    @property
    def n_levels(self) -> int:
        return sum(self.d)


@dataclass(frozen=True)
class FiberFactor:
    """One factor of the moment fiber: a torus, symmetric space, or group manifold."""

    kind: str  # "torus" | "sym_so" | "sym_usp" | "group_su"
    m: int
    dim: int


def torus_factor(t: int) -> FiberFactor:
    return FiberFactor("torus", t, t)


def sym_so_factor(m: int) -> FiberFactor:
    """SU_m / SO_m, real dimension (m - 1)(m + 2) / 2."""
    return FiberFactor("sym_so", m, (m - 1) * (m + 2) // 2)


def sym_usp_factor(m: int) -> FiberFactor:
    """SU_m / USp_m (m even), real dimension (m - 2)(m + 1) / 2."""
    if m % 2 != 0:
        raise InvalidStratum(f"USp factor needs an even block, got {m}")
    return FiberFactor("sym_usp", m, (m - 2) * (m + 1) // 2)


def group_su_factor(m: int) -> FiberFactor:
    """Group manifold (SU_m x SU_m) / SU_m = SU_m, real dimension m^2 - 1."""
    return FiberFactor("group_su", m, m * m - 1)


@dataclass(frozen=True)
class OrbitInvariants:
    """Dimension data of one orbit type.

    orbit_dim = flag_dim_real + fiber_dim and degeneracy_D = fiber_dim;
    boundary_gap is the relative spectral distance to the nearest coarser
    stratum (None for abstractly enumerated strata).
    """

    d: MultiplicityVector
    flag_dim_real: int
    fiber_factors: tuple[FiberFactor, ...]
    fiber_dim: int
    orbit_dim: int
    degeneracy_D: int
    boundary_gap: float | None = None


def _cluster(values: np.ndarray, cluster_tol: float):
    """Sizes of equal-value blocks plus whether the trailing block is zero."""
    vmax = values[0]
    sizes = []
    start = 0
    for i in range(len(values) - 1):
        if values[i] - values[i + 1] > cluster_tol * vmax:
            sizes.append(i + 1 - start)
            start = i + 1
    sizes.append(len(values) - start)
    zero_last = bool(values[-1] <= cluster_tol * vmax)
    gaps = []
    pos = 0
    for size in sizes[:-1]:
        pos += size
        gaps.append(float(values[pos - 1] - values[pos]) / vmax)
    # distance to the nearest coarser stratum: merge two blocks, or drop the
    # smallest block to zero when the state is full rank
    candidates = list(gaps)
    if not zero_last:
        lo = len(values) - sizes[-1]
        candidates.append(float(values[lo]) / vmax)
    return sizes, zero_last, min(candidates) if candidates else float(values[0]) / vmax


def multiplicity_vector(
    values,
    case: ParticleCase,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
    n_levels: int | None = None,
) -> MultiplicityVector:
    """Cluster a sorted spectrum into the multiplicity vector d.

    ``values`` holds probabilities for bosons/distinguishable (length N) and
    the lambda vector for fermions (length floor(N/2), multiplicities doubled,
    with the forced zero of odd N merged into the final block).  Fermions
    require ``n_levels`` to fix the parity of N.
    """
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or len(values) == 0:
        raise UnsortedInput("expected a non-empty vector")
    slack = 1e-12 * abs(values[0])
    if np.any(np.diff(values) > slack) or values[-1] < -slack:
        raise UnsortedInput("input must be sorted descending and nonnegative")
    values = np.maximum(values, 0.0)
    if values[0] <= 0.0:
        raise InvalidStratum("all-zero spectrum describes the zero state")
    if case is not ParticleCase.FERMION:
        sizes, zero_last, _ = _cluster(values, cluster_tol)
        return MultiplicityVector(tuple(sizes), zero_last)
    if n_levels is None:
        raise ValidationError("fermion multiplicity needs n_levels")
    if len(values) != n_levels // 2:
        raise ValidationError(f"expected {n_levels // 2} lambdas for N={n_levels}")
    sizes, zero_last, _ = _cluster(values, cluster_tol)
    d = [2 * size for size in sizes]
    if n_levels % 2 == 1:
        if zero_last:
            d[-1] += 1
        else:
            d.append(1)
        return MultiplicityVector(tuple(d), True)
    return MultiplicityVector(tuple(d), zero_last)


def flag_dimension(mv: MultiplicityVector, case: ParticleCase) -> int:
    """Real dimension of the flag manifold F(d_1, ..., d_k) in the moment image."""
    n = mv.n_levels
    base = n * n - sum(di * di for di in mv.d)
    return 2 * base if case is ParticleCase.DISTINGUISHABLE else base


def fiber_structure(mv: MultiplicityVector, case: ParticleCase) -> list[FiberFactor]:
    """Factors of the moment fiber for an orbit of type (d, degenerate).

    The zero block of a degenerate stratum is absorbed into the isotropy and
    contributes no factor; the torus rank drops by one accordingly.
    """
    if mv.degenerate and mv.k == 1:
        raise InvalidStratum("single all-zero block is the zero state")
    blocks = mv.d[:-1] if mv.degenerate else mv.d
    torus_dim = mv.k - 2 if mv.degenerate else mv.k - 1
    if case is ParticleCase.BOSON:
        factor = sym_so_factor
    elif case is ParticleCase.FERMION:
        factor = sym_usp_factor
    else:
        factor = group_su_factor
    return [torus_factor(torus_dim)] + [factor(m) for m in blocks]


def invariants_for(
    mv: MultiplicityVector, case: ParticleCase, boundary_gap: float | None = None
) -> OrbitInvariants:
    """Assemble all dimension data for an orbit type."""
    factors = tuple(fiber_structure(mv, case))
    fiber_dim = sum(f.dim for f in factors)
    flag = flag_dimension(mv, case)
    return OrbitInvariants(mv, flag, factors, fiber_dim, flag + fiber_dim, fiber_dim, boundary_gap)


def orbit_invariants(cf: CanonicalForm, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> OrbitInvariants:
    """Classify a canonical form into its stratum and compute its dimensions."""
    if cf.case is ParticleCase.FERMION:
        values = cf.lambdas
    else:
        p = cf.lambdas**2
        values = p / p.sum()
    mv = multiplicity_vector(values, cf.case, cluster_tol, n_levels=cf.n_levels)
    _, _, gap = _cluster(np.asarray(values, dtype=float), cluster_tol)
    return invariants_for(mv, cf.case, boundary_gap=gap)


def _compositions(total: int):
    """Ordered compositions of a nonnegative integer."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def _multiplicity_candidates(case: ParticleCase, n: int):
    if case is not ParticleCase.FERMION:
        for comp in _compositions(n):
            yield MultiplicityVector(comp, False)
            if len(comp) >= 2:
                yield MultiplicityVector(comp, True)
        return
    if n % 2 == 0:
        for comp in _compositions(n // 2):
            d = tuple(2 * c for c in comp)
            yield MultiplicityVector(d, False)
            if len(d) >= 2:
                yield MultiplicityVector(d, True)
        return
    for tail in range(1, n + 1, 2):
        for comp in _compositions((n - tail) // 2):
            d = tuple(2 * c for c in comp) + (tail,)
            if len(d) >= 2:
                yield MultiplicityVector(d, True)


def enumerate_strata(case: ParticleCase, n: int) -> list[OrbitInvariants]:
    """All orbit types for the given case and N, sorted by orbit dimension."""
    if n < 2:
        raise ValidationError("n must be at least 2")
    strata = [invariants_for(mv, case) for mv in _multiplicity_candidates(case, n)]
    strata.sort(key=lambda inv: (-inv.orbit_dim, -inv.degeneracy_D, inv.d.d))
    return strata


def representative_state(
    mv: MultiplicityVector, case: ParticleCase, seed: int | None = None
) -> QuantumState:
    """A state realizing the given orbit type, with spectrum gaps >= 0.05.

    The representative sits on the canonical slice; pass a seed to rotate it
    off the slice by a deterministic random local unitary.
    """
    if mv.degenerate and mv.k == 1:
        raise InvalidStratum("single all-zero block is the zero state")
    if case is ParticleCase.FERMION:
        if any(d % 2 for d in mv.d[:-1]) or mv.n_levels % 2 != mv.d[-1] % 2:
            raise InvalidStratum("fermion blocks must be even (odd N: odd zero tail)")
        if mv.n_levels % 2 == 1 and not mv.degenerate:
            raise InvalidStratum("odd-N fermion strata are always degenerate")
    k = mv.k
    # strictly decreasing block values with a uniform gap; a half-step floor
    # keeps the nondegenerate spectrum bounded away from zero
    weights = [(k - j) if mv.degenerate else (k - j + 0.5) for j in range(1, k + 1)]
    scale = sum(d * w for d, w in zip(mv.d, weights))
    if case is ParticleCase.FERMION:
        lam = np.concatenate([np.full(d // 2, np.sqrt(w / scale)) for d, w in zip(mv.d, weights)])
        coeffs = fermion_pair_matrix(lam, mv.n_levels)
    else:
        p = np.concatenate([np.full(d, w / scale) for d, w in zip(mv.d, weights)])
        coeffs = np.diag(np.sqrt(p).astype(complex))
    state = validate(coeffs, case, tol=1e-12)
    if seed is not None:
        state = apply_group_action(state, random_local_unitary(case, mv.n_levels, seed))
    return state


def stratum_to_dict(inv: OrbitInvariants) -> dict:
    return {
        "d": list(inv.d.d),
        "degenerate": inv.d.degenerate,
        "flag_dim": inv.flag_dim_real,
        "fiber": [{"kind": f.kind, "m": f.m, "dim": f.dim} for f in inv.fiber_factors],
        "fiber_dim": inv.fiber_dim,
        "orbit_dim": inv.orbit_dim,
        "degeneracy": inv.degeneracy_D,
    }
