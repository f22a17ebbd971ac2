"""Tests for multiplicity vectors, fiber structure, and stratum enumeration."""

import numpy as np
import pytest

from luorbits import (
    InvalidStratum,
    MultiplicityVector,
    ParticleCase,
    UnsortedInput,
    canonicalize,
    enumerate_strata,
    fiber_structure,
    flag_dimension,
    multiplicity_vector,
    orbit_invariants,
    reduced_matrix,
    representative_state,
    validate,
)
from luorbits.strata import group_su_factor, sym_so_factor, sym_usp_factor, torus_factor
from conftest import ALL_CASES

BOSON = ParticleCase.BOSON
FERMION = ParticleCase.FERMION
DIST = ParticleCase.DISTINGUISHABLE


class TestMultiplicityVector:
    def test_all_distinct(self):
        mv = multiplicity_vector([0.5, 0.3, 0.2], BOSON)
        assert mv == MultiplicityVector((1, 1, 1), False)

    def test_zero_block(self):
        mv = multiplicity_vector([0.5, 0.5, 0.0], BOSON)
        assert mv == MultiplicityVector((2, 1), True)

    def test_fermion_doubling_with_forced_zero(self):
        mv = multiplicity_vector(np.sqrt([0.3, 0.2]), FERMION, n_levels=5)
        assert mv == MultiplicityVector((2, 2, 1), True)

    def test_fermion_even(self):
        mv = multiplicity_vector([0.6, 0.6, 0.2], FERMION, n_levels=6)
        assert mv == MultiplicityVector((4, 2), False)

    def test_fermion_odd_zero_lambda_merges(self):
        mv = multiplicity_vector([0.9, 0.0], FERMION, n_levels=5)
        assert mv == MultiplicityVector((2, 3), True)

    def test_unsorted_rejected(self):
        with pytest.raises(UnsortedInput):
            multiplicity_vector([0.2, 0.5], BOSON)

    def test_negative_rejected(self):
        with pytest.raises(UnsortedInput):
            multiplicity_vector([0.5, -0.1], BOSON)

    def test_cluster_tolerance(self):
        assert multiplicity_vector([0.5, 0.5 - 1e-10, 0.3], BOSON).d == (2, 1)
        assert multiplicity_vector([0.5, 0.4, 0.3], BOSON).d == (1, 1, 1)


class TestDimensionFormulas:
    def test_factor_dimensions(self):
        assert torus_factor(3).dim == 3
        assert sym_so_factor(1).dim == 0
        assert sym_so_factor(2).dim == 2
        assert sym_so_factor(3).dim == 5
        assert sym_usp_factor(2).dim == 0
        assert sym_usp_factor(4).dim == 5
        assert group_su_factor(1).dim == 0
        assert group_su_factor(2).dim == 3

    def test_flag_point(self):
        assert flag_dimension(MultiplicityVector((4,), False), BOSON) == 0

    def test_flag_full(self):
        assert flag_dimension(MultiplicityVector((1, 1), False), BOSON) == 2

    def test_flag_doubled_for_distinguishable(self):
        assert flag_dimension(MultiplicityVector((1, 1), False), DIST) == 4


class TestFiberStructure:
    def test_boson_maximally_mixed(self):
        factors = fiber_structure(MultiplicityVector((2,), False), BOSON)
        assert [(f.kind, f.m, f.dim) for f in factors] == [("torus", 0, 0), ("sym_so", 2, 2)]

    def test_fermion_generic(self):
        for n_pairs in (1, 2, 3):
            mv = MultiplicityVector((2,) * n_pairs, False)
            factors = fiber_structure(mv, FERMION)
            assert sum(f.dim for f in factors) == n_pairs - 1

    def test_bell(self):
        factors = fiber_structure(MultiplicityVector((2,), False), DIST)
        assert [(f.kind, f.dim) for f in factors] == [("torus", 0), ("group_su", 3)]

    def test_degenerate_drops_zero_block(self):
        factors = fiber_structure(MultiplicityVector((1, 3), True), BOSON)
        assert [(f.kind, f.dim) for f in factors] == [("torus", 0), ("sym_so", 0)]

    def test_zero_state_rejected(self):
        with pytest.raises(InvalidStratum):
            fiber_structure(MultiplicityVector((4,), True), BOSON)

    def test_odd_usp_block_rejected(self):
        with pytest.raises(InvalidStratum):
            fiber_structure(MultiplicityVector((3, 1), False), FERMION)


class TestOrbitInvariants:
    def test_boson_highest_weight(self):
        for n in range(2, 7):
            c = np.zeros((n, n))
            c[0, 0] = 1.0
            inv = orbit_invariants(canonicalize(validate(c, BOSON)))
            assert inv.d == MultiplicityVector((1, n - 1), True)
            assert inv.degeneracy_D == 0
            assert inv.orbit_dim == 2 * (n - 1)

    def test_fermion_plucker_orbit(self):
        from luorbits import fermion_pair_matrix
        s = validate(fermion_pair_matrix([1.0, 0.0], 4), FERMION)
        inv = orbit_invariants(canonicalize(s))
        assert inv.d == MultiplicityVector((2, 2), True)
        assert inv.degeneracy_D == 0
        assert inv.orbit_dim == 8  # real dimension of Gr(2, 4)

    def test_boson_generic_torus_fiber(self):
        for n in range(2, 7):
            p = np.linspace(2 * n, n + 1, n)
            p = p / p.sum()
            inv = orbit_invariants(canonicalize(validate(np.diag(np.sqrt(p)), BOSON)))
            assert inv.d == MultiplicityVector((1,) * n, False)
            assert inv.degeneracy_D == n - 1

    def test_boundary_gap_reported(self):
        s = validate(np.diag([np.sqrt(0.7), np.sqrt(0.3)]), BOSON)
        inv = orbit_invariants(canonicalize(s))
        assert inv.boundary_gap == pytest.approx(0.3 / 0.7, rel=1e-6)


class TestEnumerateStrata:
    def test_boson_two_levels(self):
        strata = enumerate_strata(BOSON, 2)
        table = {(s.d.d, s.d.degenerate): s.degeneracy_D for s in strata}
        assert table == {((2,), False): 2, ((1, 1), False): 1, ((1, 1), True): 0}

    def test_fermion_two_levels_single_point(self):
        strata = enumerate_strata(FERMION, 2)
        assert len(strata) == 1
        assert strata[0].d == MultiplicityVector((2,), False)
        assert strata[0].orbit_dim == 0

    def test_distinguishable_two_levels(self):
        table = {(s.d.d, s.d.degenerate): s.degeneracy_D for s in enumerate_strata(DIST, 2)}
        assert table == {((2,), False): 3, ((1, 1), False): 1, ((1, 1), True): 0}

    def test_sorted_by_orbit_dimension(self):
        for case in ALL_CASES:
            dims = [s.orbit_dim for s in enumerate_strata(case, 5)]
            assert dims == sorted(dims, reverse=True)

    @pytest.mark.parametrize("case", ALL_CASES)
    @pytest.mark.parametrize("n", range(2, 7))
    def test_rank_identity_and_unique_symplectic_stratum(self, case, n):
        strata = enumerate_strata(case, n)
        for s in strata:
            assert 0 <= s.degeneracy_D <= s.orbit_dim
            assert s.orbit_dim - s.degeneracy_D == s.flag_dim_real
        zero_d = [(s.d.d, s.d.degenerate) for s in strata if s.degeneracy_D == 0]
        if case is FERMION:
            expected = ((2,), False) if n == 2 else ((2, n - 2), True)
        else:
            expected = ((1, n - 1), True)
        assert zero_d == [expected]

    @pytest.mark.parametrize("case", ALL_CASES)
    @pytest.mark.parametrize("n", range(2, 7))
    def test_generic_stratum_has_maximal_dimension(self, case, n):
        strata = enumerate_strata(case, n)
        if case is FERMION:
            generic = (2,) * (n // 2) + ((1,) if n % 2 else ())
        else:
            generic = (1,) * n
        top = strata[0]
        assert top.d.d == generic
        assert all(s.orbit_dim <= top.orbit_dim for s in strata)

    def test_fermion_block_parity(self):
        for n in range(2, 7):
            for s in enumerate_strata(FERMION, n):
                assert all(d % 2 == 0 for d in s.d.d[:-1])
                assert s.d.d[-1] % 2 == n % 2
                if n % 2 == 1:
                    assert s.d.degenerate


class TestRepresentativeState:
    @pytest.mark.parametrize("case", ALL_CASES)
    @pytest.mark.parametrize("n", range(2, 7))
    def test_representatives_hit_their_stratum(self, case, n):
        for index, inv in enumerate(enumerate_strata(case, n)):
            rep = representative_state(inv.d, case, seed=index)
            got = orbit_invariants(canonicalize(rep))
            assert got.d == inv.d
            assert got.orbit_dim == inv.orbit_dim

    @pytest.mark.parametrize("case", ALL_CASES)
    def test_spectrum_gaps_at_least_five_percent(self, case):
        for n in range(2, 7):
            for inv in enumerate_strata(case, n):
                rep = representative_state(inv.d, case)
                p = reduced_matrix(rep).probabilities
                distinct = [p[0]]
                for value in p[1:]:
                    if distinct[-1] - value > 1e-9:
                        distinct.append(value)
                gaps = [a - b for a, b in zip(distinct[:-1], distinct[1:])]
                if gaps:
                    assert min(gaps) >= 0.05 - 1e-9

    def test_invalid_fermion_parity_rejected(self):
        with pytest.raises(InvalidStratum):
            representative_state(MultiplicityVector((3, 1), False), FERMION)
