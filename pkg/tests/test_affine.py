"""
Tests for the affine group Aff(Z_N).

This module contains tests for affine maps, closure, centers, generated
subgroups and isomorphism-type recognition.
"""

import pytest
import sys
import os

from hypothesis import given, strategies as st
from pydantic import ValidationError

# Add the src directory to the path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.goldbach.affine import (
    AffineMap,
    affine_compose,
    affine_inverse,
    center,
    element_order,
    full_affine_group,
    generated_subgroup,
    is_closed,
    recognize,
    sorted_maps,
)
from src.goldbach.errors import CapacityError, ModulusMismatchError, NotClosedError
from src.goldbach.modarith import euler_phi, units


def affine_maps(N):
    return st.builds(
        AffineMap.of,
        st.sampled_from(units(N).elements),
        st.integers(0, N - 1),
        st.just(N),
    )


class TestAffineMap:
    """Tests for single affine maps."""

    def test_non_unit_multiplier_rejected(self):
        """Test that a must be a unit."""
        with pytest.raises(ValidationError):
            AffineMap(a=2, b=0, modulus=12)

    @pytest.mark.parametrize("a, b, label", [(1, 0, "I"), (1, 3, "T_3"), (5, 0, "f_5"), (5, 3, "T_3 f_5")])
    def test_labels(self, a, b, label):
        """Test the display labels."""
        assert AffineMap.of(a, b, 12).label == label

    def test_compose_example(self):
        """Test (T_2 f_3)(T_4) = T_4 f_3 over Z_10."""
        assert affine_compose(AffineMap.of(3, 2, 10), AffineMap.of(1, 4, 10)).label == "T_4 f_3"

    def test_compose_mismatched_moduli(self):
        """Test that maps over different moduli cannot be composed."""
        with pytest.raises(ModulusMismatchError):
            affine_compose(AffineMap.identity(10), AffineMap.identity(12))

    @given(affine_maps(30), affine_maps(30), st.integers(0, 29))
    def test_compose_is_function_composition(self, f, g, x):
        """Test (f o g)(x) = f(g(x))."""
        assert affine_compose(f, g)(x) == f(g(x))

    @given(affine_maps(36))
    def test_inverse(self, f):
        """Test f o f^-1 = I."""
        assert affine_compose(f, affine_inverse(f)) == AffineMap.identity(36)

    @given(affine_maps(24))
    def test_element_order_returns_to_identity(self, f):
        """Test that f^order(f) = I and no smaller power is."""
        # Arrange
        power = AffineMap.identity(24)
        order = element_order(f)

        # Act
        for _ in range(order - 1):
            power = affine_compose(f, power)
            assert power != AffineMap.identity(24)
        power = affine_compose(f, power)

        # Assert
        assert power == AffineMap.identity(24)

    def test_translation_order(self):
        """Test that T_2 has order 6 over Z_12."""
        assert element_order(AffineMap.translation(2, 12)) == 6


class TestFullAffineGroup:
    """Tests for Aff(Z_N) as a whole."""

    @pytest.mark.parametrize("N", [1, 2, 6, 12, 30, 100])
    def test_order(self, N):
        """Test |Aff(Z_N)| = N * phi(N)."""
        assert len(full_affine_group(N)) == N * euler_phi(N)

    def test_capacity(self):
        """Test that oversized groups raise CapacityError."""
        with pytest.raises(CapacityError):
            full_affine_group(1000)

    def test_is_closed(self):
        """Test closure of Aff(Z_12) and non-closure of {I, T_1} over Z_4."""
        assert is_closed(full_affine_group(12))
        assert not is_closed([AffineMap.identity(4), AffineMap.translation(1, 4)])

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_center(self, n):
        """Test that the center of Aff(Z_2n) is {I, T_n} for odd n."""
        # Act
        found = center(full_affine_group(2 * n))

        # Assert
        assert found == {AffineMap.identity(2 * n), AffineMap.translation(n, 2 * n)}

    def test_center_requires_closure(self):
        """Test that a non-closed set raises NotClosedError."""
        with pytest.raises(NotClosedError):
            center([AffineMap.identity(4), AffineMap.translation(1, 4)])

    def test_sorted_maps(self):
        """Test ascending (a, b) order."""
        maps = sorted_maps(full_affine_group(4))
        assert [f.key for f in maps] == [(1, 0), (1, 1), (1, 2), (1, 3), (3, 0), (3, 1), (3, 2), (3, 3)]


class TestGeneratedSubgroup:
    """Tests for subgroup closure."""

    def test_two_involutions(self):
        """Test that T_6 and f_7 generate a Klein four-group over Z_12."""
        # Act
        group = generated_subgroup([AffineMap.translation(6, 12), AffineMap.unit(7, 12)])

        # Assert
        assert len(group) == 4
        assert recognize(group).name == "V"

    def test_three_involutions(self):
        """Test that T_6, f_5 and f_7 generate Z2^3 over Z_12."""
        # Act
        group = generated_subgroup([AffineMap.translation(6, 12), AffineMap.unit(5, 12), AffineMap.unit(7, 12)])

        # Assert
        assert len(group) == 8
        assert recognize(group).name == "Z2^3"

    def test_empty_generators(self):
        """Test that no generators give the trivial group, given a modulus."""
        assert generated_subgroup([], modulus=5) == {AffineMap.identity(5)}
        with pytest.raises(ValueError):
            generated_subgroup([])

    def test_modulus_mismatch(self):
        """Test that an explicit modulus must match the generators."""
        with pytest.raises(ModulusMismatchError):
            generated_subgroup([AffineMap.translation(1, 6)], modulus=12)

    def test_closure_is_closed(self):
        """Test that a generated subgroup passes is_closed."""
        assert is_closed(generated_subgroup([AffineMap.of(5, 3, 14), AffineMap.unit(3, 14)]))


class TestRecognize:
    """Tests for isomorphism-type recognition."""

    def test_trivial(self):
        """Test the trivial group."""
        assert recognize([AffineMap.identity(8)]).name == "1"

    def test_cyclic(self):
        """Test <T_1> over Z_6 is Z6."""
        # Act
        descriptor = recognize(generated_subgroup([AffineMap.translation(1, 6)]))

        # Assert
        assert descriptor.name == "Z6"
        assert descriptor.invariant_factors == (6,)
        assert descriptor.exponent == 6

    def test_mixed_abelian(self):
        """Test that T_2 and f_5 generate Z2 x Z4 over Z_8."""
        # Arrange
        group = generated_subgroup([AffineMap.translation(2, 8), AffineMap.unit(5, 8)])

        # Act
        descriptor = recognize(group)

        # Assert
        assert descriptor.order == 8
        assert descriptor.is_abelian
        assert descriptor.name == "Z2xZ4"

    def test_nonabelian(self):
        """Test that Aff(Z_6) gets an order/exponent/center descriptor."""
        # Act
        descriptor = recognize(full_affine_group(6))

        # Assert
        assert not descriptor.is_abelian
        assert descriptor.center_order == 2
        assert descriptor.name == "nonabelian(12,6,2)"
