"""
Tests for the symmetry groups G_N of the Goldbach sieve.
"""

import pytest
import sys
import os

# Add the src directory to the path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.goldbach.affine import AffineMap, is_closed
from src.goldbach.errors import CapacityError
from src.goldbach.modarith import units
from src.goldbach.sieve import build_sieve
from src.goldbach.symmetry import (
    compute_symmetry_group,
    decompose,
    half_shift_uniqueness_check,
    mixed_element_closure_check,
    multi_invariance_witnesses,
    symmetry_group_for,
    translation_part,
)


class TestComputeSymmetryGroup:
    """Tests for enumeration of G_N."""

    @pytest.mark.parametrize("N, order, name", [
        (12, 8, "Z2^3"),
        (30, 8, "Z2xZ4"),
        (90, 2, "Z2"),
        (120, 4, "V"),
    ])
    def test_named_groups(self, N, order, name):
        """Test orders and isomorphism types of known groups."""
        # Act
        group = symmetry_group_for(N)

        # Assert
        assert group.order == order
        assert group.descriptor.name == name

    def test_eighteen(self):
        """Test G_18: nonabelian of order 18 with H = U(Z_18) and G^(1) = <T_6>."""
        # Act
        group = symmetry_group_for(18)

        # Assert
        assert group.order == 18
        assert not group.descriptor.is_abelian
        assert group.unit_part == units(18).elements
        assert group.g1_generator == 6

    def test_twenty_four(self):
        """Test |G_24| = 32."""
        assert symmetry_group_for(24).order == 32

    @pytest.mark.parametrize("N, order", [(2, 1), (4, 4), (6, 6), (8, 16), (16, 16)])
    def test_small_orders(self, N, order):
        """Test the groups of the smallest even numbers."""
        assert symmetry_group_for(N).order == order

    def test_sixteen_details(self):
        """Test G_16: T_8 and H = {1, 7, 9, 15} plus eight mixed elements."""
        # Act
        group = symmetry_group_for(16)

        # Assert
        assert group.order == 16
        assert group.g1_generator == 8
        assert group.unit_part == (1, 7, 9, 15)
        assert group.central_element_present is True
        assert group.contains(3, 4)

    def test_elements_sorted(self):
        """Test that elements are listed by ascending (a, b)."""
        keys = [f.key for f in symmetry_group_for(30).elements]
        assert keys == sorted(keys)

    @pytest.mark.parametrize("N", range(4, 201, 2))
    def test_group_invariants(self, N):
        """Test closure, sieve fixing, f_-1 membership and divisibility of the G^(1) generator."""
        # Arrange
        group = symmetry_group_for(N)
        complement = set(build_sieve(N).complement)

        # Assert
        assert is_closed(group.elements)
        assert all({f(x) for x in complement} == complement for f in group.elements)
        assert group.has_unit(N - 1)
        assert group.g1_generator is None or N % group.g1_generator == 0
        assert all(group.has_unit(u * v) for u in group.unit_part for v in group.unit_part)

    def test_capacity(self):
        """Test that N above the symmetry limit raises CapacityError."""
        with pytest.raises(CapacityError):
            compute_symmetry_group(build_sieve(2 ** 16 + 2))


class TestTranslationPart:
    """Tests for G_N^(1)."""

    @pytest.mark.parametrize("N, generator", [(12, 6), (128, None), (10, None), (14, None), (22, None)])
    def test_generators(self, N, generator):
        """Test the translation generator, trivial for 2p and 128."""
        assert translation_part(symmetry_group_for(N)) == generator

    def test_translation_order(self):
        """Test |G_12^(1)| = 2."""
        assert symmetry_group_for(12).translation_order == 2


class TestDecompose:
    """Tests for the structural regimes."""

    def test_regime_a(self):
        """Test that G_120 has the central element and |G| = 2|G1||H|."""
        # Act
        report = decompose(symmetry_group_for(120))

        # Assert
        assert report.regime == "a"
        assert report.central_element_present
        assert not report.half_translation_present
        assert not report.half_unit_present
        assert report.note == ""

    def test_regime_b_twice_odd(self):
        """Test that G_30 = H splits without mixed elements."""
        # Act
        report = decompose(symmetry_group_for(30))

        # Assert
        assert report.regime == "b"
        assert report.two_adic_valuation == 1
        assert report.mixed_elements == 0

    def test_regime_b_twelve(self):
        """Test that every element of G_12 splits."""
        assert decompose(symmetry_group_for(12)).regime == "b"

    @pytest.mark.parametrize("N", [N for N in range(6, 301, 2) if N != 16])
    def test_no_violations(self, N):
        """Test that every N other than 16 lands in a regime."""
        assert decompose(symmetry_group_for(N)).regime in ("a", "b")

    def test_sixteen_violates_both_regimes(self):
        """Test that G_16 has T_8 and f_9 yet eight mixed elements."""
        # Act
        report = decompose(symmetry_group_for(16))

        # Assert
        assert report.half_translation_present
        assert report.half_unit_present
        assert report.mixed_elements == 8
        assert report.regime == "violated"
        assert report.note == "8 mixed elements"


class TestMixedElements:
    """Tests for the mixed-element laws."""

    @pytest.mark.parametrize("N", [16, 120, 240, 360])
    def test_closure(self, N):
        """Test that mixed elements bring T_2d and f_v^2 along."""
        assert mixed_element_closure_check(symmetry_group_for(N))

    def test_half_shift_not_applicable_without_mixed(self):
        """Test that G_12 has no mixed elements to check."""
        # Act
        result = half_shift_uniqueness_check(symmetry_group_for(12))

        # Assert
        assert result.holds
        assert not result.applicable

    @pytest.mark.parametrize("N", [16, 120])
    def test_half_shift(self, N):
        """Test the half-shift law on G_16 and G_120."""
        assert half_shift_uniqueness_check(symmetry_group_for(N)).holds


class TestMultiInvariance:
    """Tests for equivariance against the dihedral groups of the sieve."""

    def test_identity(self):
        """Test that the identity is equivariant for every group."""
        # Act
        witnesses = multi_invariance_witnesses(AffineMap.identity(50), build_sieve(50))

        # Assert
        assert [(w.kind, w.prime) for w in witnesses] == [("p", 2), ("p", 5), ("q", 3), ("q", 7)]
        assert all(w.holds for w in witnesses)
        assert all(w.nu == 1 and w.k == 0 for w in witnesses)

    def test_negation(self):
        """Test that x -> N - x is equivariant for every divisor group."""
        # Act
        witnesses = multi_invariance_witnesses(AffineMap.unit(-1, 12), build_sieve(12))

        # Assert
        assert all(w.holds for w in witnesses if w.kind == "p")

    def test_odd_translation(self):
        """Test that T_1 works for the p = 2 group of Z_12 with witness T^1 but not for p = 3."""
        # Act
        witnesses = multi_invariance_witnesses(AffineMap.translation(1, 12), build_sieve(12))

        # Assert
        assert witnesses[0].prime == 2
        assert witnesses[0].holds
        assert witnesses[0].k == 1
        assert witnesses[1].prime == 3
        assert not witnesses[1].holds

    def test_modulus_mismatch(self):
        """Test that the map and the sieve must share N."""
        with pytest.raises(ValueError):
            multi_invariance_witnesses(AffineMap.identity(10), build_sieve(12))
