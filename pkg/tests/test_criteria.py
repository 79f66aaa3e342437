"""
Tests for the criteria that bound or exclude elements of G_N.

This module contains tests for divisor bounds, cyclotomic and orbit
classification, window sets and the translation exclusion criterion, each
cross-checked against enumeration of G_N.
"""

import pytest
import sys
import os

# Add the src directory to the path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.goldbach.criteria import (
    converse_cyclotomic_check,
    coverage_identity_check,
    cyclotomic_structure_check,
    exclusion_criterion,
    goldbach_pair_check,
    is_cyclotomic,
    orbit_classification,
    power_of_two_translation_check,
    prop81_bound,
    prop814_check,
    prop815_check,
    prop816_check,
    prop823_check,
    prop83_safe_prime,
    prop89_translation_bound,
    subgroup_coverage_check,
    valid_parameters,
    window_set,
)
from src.goldbach.symmetry import symmetry_group_for


class TestDivisorBound:
    """Tests for the bound on |G_2p|."""

    def test_thirteen(self):
        """Test alpha = 8, beta = 4 for p = 13."""
        # Act
        bound = prop81_bound(13)

        # Assert
        assert (bound.alpha, bound.beta, bound.gcd) == (8, 4, 4)
        assert bound.allowed == (1, 2, 4)
        assert bound.even_allowed == (2, 4)
        assert bound.group_order == 2
        assert bound.divides

    def test_five(self):
        """Test that gcd(alpha, beta) = 2 for p = 5."""
        # Act
        bound = prop81_bound(5)

        # Assert
        assert bound.gcd == 2
        assert bound.divides

    @pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97])
    def test_divides(self, p):
        """Test that |G_2p| divides gcd(alpha, beta) for 3 < p < 100."""
        assert prop81_bound(p).divides

    @pytest.mark.parametrize("p", [1, 2, 9])
    def test_rejects_non_odd_primes(self, p):
        """Test that the bound needs an odd prime."""
        with pytest.raises(ValueError):
            prop81_bound(p)


class TestSafePrime:
    """Tests for safe primes p = 2q + 1."""

    @pytest.mark.parametrize("p, expected", [(5, "Z2"), (7, "Z2"), (11, "Z2"), (23, "Z2"), (47, "Z2"), (13, None), (3, None)])
    def test_prediction(self, p, expected):
        """Test which primes are predicted to give Z2."""
        assert prop83_safe_prime(p) == expected

    @pytest.mark.parametrize("p", [5, 7, 11, 23, 47])
    def test_prediction_matches_enumeration(self, p):
        """Test G_2p = Z2 by enumeration."""
        assert symmetry_group_for(2 * p).descriptor.name == "Z2"

    def test_non_prime(self):
        """Test that a composite is rejected."""
        with pytest.raises(ValueError):
            prop83_safe_prime(15)


class TestCyclotomic:
    """Tests for cyclotomic numbers."""

    def test_cyclotomic_numbers(self):
        """Test the full list of cyclotomic even numbers below 200."""
        assert [N for N in range(2, 200, 2) if is_cyclotomic(N)] == [2, 4, 6, 8, 12, 18, 24, 30]

    def test_eighteen_structure(self):
        """Test G_18 = <T_6> x| U(Z_18)."""
        # Act
        report = cyclotomic_structure_check(18)

        # Assert
        assert report.complement_is_units
        assert report.unit_part_is_units
        assert report.translation_generator == 6
        assert report.group_order == 18

    def test_thirty_structure(self):
        """Test G_30 = U(Z_30) with trivial translations."""
        # Act
        report = cyclotomic_structure_check(30)

        # Assert
        assert report.translation_generator is None
        assert report.group_order == 8

    def test_six_complement_is_not_units(self):
        """Test that 3 keeps the complement of 6 larger than U(Z_6)."""
        assert not cyclotomic_structure_check(6).complement_is_units

    def test_not_cyclotomic(self):
        """Test that a non-cyclotomic N is rejected."""
        with pytest.raises(ValueError):
            cyclotomic_structure_check(16)

    def test_converse(self):
        """Test H = U(Z_N) forces a cyclotomic N."""
        # Act
        eighteen = converse_cyclotomic_check(18)
        ten = converse_cyclotomic_check(10)
        big = converse_cyclotomic_check(128)

        # Assert
        assert eighteen.holds and eighteen.applicable
        assert ten.holds and not ten.applicable
        assert big.holds and not big.applicable

    def test_converse_small_N(self):
        """Test that N <= 6 is rejected."""
        with pytest.raises(ValueError):
            converse_cyclotomic_check(6)


class TestOrbitClassification:
    """Tests for mono-orbital and quasi-mono-orbital numbers."""

    @pytest.mark.parametrize("N", [90, 120])
    def test_mono_orbital(self, N):
        """Test known mono-orbital numbers."""
        # Act
        result = orbit_classification(N)

        # Assert
        assert result.mono_orbital
        assert result.qmo
        assert not result.cyclotomic
        assert result.goldbach_consistent

    def test_twelve(self):
        """Test that 12 is q.m.o but not mono-orbital."""
        # Act
        result = orbit_classification(12)

        # Assert
        assert result.cyclotomic
        assert result.qmo
        assert not result.mono_orbital

    def test_many_orbits(self):
        """Test that 128 has four orbits."""
        assert not orbit_classification(128).qmo


class TestTranslationBound:
    """Tests for the bound on G_N^(1)."""

    def test_twelve(self):
        """Test that the bound admits T_6 for N = 12."""
        # Act
        bound = prop89_translation_bound(12)

        # Assert
        assert (bound.alpha, bound.beta, bound.gcd) == (2, 4, 2)
        assert bound.bound_generator == 6
        assert bound.contained and bound.divides

    @pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
    def test_twice_prime(self, p):
        """Test that gcd(alpha, beta) = 1 for N = 2p."""
        # Act
        bound = prop89_translation_bound(2 * p)

        # Assert
        assert bound.gcd == 1
        assert bound.translation_order == 1

    @pytest.mark.parametrize("N", range(6, 201, 2))
    def test_sweep(self, N):
        """Test containment and divisibility on a range."""
        bound = prop89_translation_bound(N)
        assert bound.contained and bound.divides


class TestWindowSet:
    """Tests for window sets."""

    def test_sixty_four(self):
        """Test the prime pairs of 64."""
        assert window_set(64, 128).members == (3, 5, 11, 17, 23, 41, 47, 53, 59, 61)

    def test_two(self):
        """Test that width 2 keeps only 1."""
        assert window_set(2, 12).members == (1,)

    def test_four(self):
        """Test that width 4 keeps 1 and 3."""
        assert window_set(4, 100).members == (1, 3)

    @pytest.mark.parametrize("m, N", [(3, 12), (0, 12), (12, 12), (14, 12)])
    def test_invalid(self, m, N):
        """Test that odd or out-of-range widths are rejected."""
        with pytest.raises(ValueError):
            window_set(m, N)


class TestExclusionCriterion:
    """Tests for the translation exclusion criterion."""

    def test_one_twenty_eight(self):
        """Test that T_64 is excluded from G_128 by asymmetry of {61}."""
        # Act
        verdict = exclusion_criterion(128, 32, 1)

        # Assert
        assert verdict.translation == 64
        assert verdict.intersection == (61,)
        assert not verdict.symmetric
        assert verdict.verdict == "excluded-by-2"
        assert not coverage_identity_check(128, 32, 1)

    def test_twelve(self):
        """Test that T_6 survives for N = 12."""
        # Act
        verdict = exclusion_criterion(12, 3, 1)

        # Assert
        assert verdict.verdict == "not-excluded"
        assert verdict.intersection == (1, 5)
        assert coverage_identity_check(12, 3, 1)
        assert subgroup_coverage_check(12, 3, 1)

    def test_ten(self):
        """Test that T_2 is excluded for N = 10 by an empty intersection."""
        assert exclusion_criterion(10, 1, 1).verdict == "excluded-by-1"
        assert not coverage_identity_check(10, 1, 1)

    @pytest.mark.parametrize("N, d, alpha", [(12, 5, 1), (12, 1, 2), (12, 6, 1), (11, 1, 1)])
    def test_invalid_parameters(self, N, d, alpha):
        """Test that invalid (N, d, alpha) are rejected."""
        with pytest.raises(ValueError):
            exclusion_criterion(N, d, alpha)

    def test_valid_parameters(self):
        """Test all parameter pairs for N = 12."""
        assert valid_parameters(12) == [(1, 1), (1, 5), (2, 1), (3, 1)]

    @pytest.mark.parametrize("N", range(6, 121, 2))
    def test_soundness(self, N):
        """Test that the criterion and the coverage identity agree with enumeration."""
        # Arrange
        group = symmetry_group_for(N)

        # Act / Assert
        for d, alpha in valid_parameters(N):
            member = group.has_translation(2 * d * alpha)
            assert (exclusion_criterion(N, d, alpha).verdict == "not-excluded") == member
            assert coverage_identity_check(N, d, alpha) == member
            assert subgroup_coverage_check(N, d, alpha) == member
            assert prop816_check(N, d, alpha).holds


class TestStructuralLaws:
    """Tests for the laws relating translations and units."""

    @pytest.mark.parametrize("N", range(4, 201, 2))
    def test_translation_forces_units(self, N):
        """Test T_D in G forces f_(1+Dt) in H."""
        assert prop814_check(symmetry_group_for(N)).holds

    def test_minimal_unit_part(self):
        """Test that H = {1, N-1} pins G_90 to <f_-1>."""
        # Act
        result = prop815_check(symmetry_group_for(90))

        # Assert
        assert result.applicable
        assert result.holds

    def test_minimal_unit_part_not_applicable(self):
        """Test that a larger H is out of scope."""
        assert not prop815_check(symmetry_group_for(12)).applicable

    def test_window_law_not_applicable(self):
        """Test that the window law is vacuous when the translation is absent."""
        assert not prop816_check(128, 32, 1).applicable

    @pytest.mark.parametrize("N, holds, applicable", [(10, True, True), (100, True, True), (8, True, False)])
    def test_shift_by_two(self, N, holds, applicable):
        """Test that T_2 leaves G_N from N = 10 on."""
        # Act
        result = prop823_check(N)

        # Assert
        assert (result.holds, result.applicable) == (holds, applicable)

    def test_power_of_two(self):
        """Test T_(N/2) outside G_128 leaves G_128^(1) trivial."""
        # Act
        big, small, other = (
            power_of_two_translation_check(128),
            power_of_two_translation_check(16),
            power_of_two_translation_check(12),
        )

        # Assert
        assert big.holds and big.applicable
        assert not small.applicable
        assert not other.applicable

    def test_goldbach_pair(self):
        """Test that 4 has only the pair (1, 3) while 6 has (3, 3)."""
        assert not goldbach_pair_check(4)
        assert goldbach_pair_check(6)
        assert goldbach_pair_check(100)
