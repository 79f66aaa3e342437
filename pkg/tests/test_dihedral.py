"""
Tests for the dihedral group, its automorphisms and its action on Z_2n.
"""

import pytest
import sys
import os

from hypothesis import given, strategies as st
from pydantic import ValidationError

# Add the src directory to the path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.goldbach.dihedral import (
    DihedralAut,
    DihedralElement,
    act,
    as_group_automorphism,
    aut_apply,
    aut_compose,
    aut_inverse,
    automorphism_group,
    dihedral_action,
    dihedral_group,
    dihedral_inverse,
    dihedral_mul,
    elements,
    stabilizers_and_normalizers,
)
from src.goldbach.errors import ModulusMismatchError
from src.goldbach.group_core import automorphisms, normalizer, stabilizer
from src.goldbach.modarith import ZModElement, euler_phi


def dihedral_elements(n):
    return st.builds(DihedralElement.of, st.integers(0, 1), st.integers(0, 10 * n), st.just(n))


def dihedral_auts(n):
    return st.sampled_from(automorphism_group(n))


class TestDihedralElement:
    """Tests for the normal form s^h r^k."""

    @pytest.mark.parametrize("reflect, rot, text", [(0, 0, "1"), (0, 1, "r"), (0, 3, "r^3"), (1, 0, "s"), (1, 1, "sr"), (1, 4, "sr^4")])
    def test_str(self, reflect, rot, text):
        """Test the display form."""
        assert str(DihedralElement.of(reflect, rot, 5)) == text

    def test_rotation_must_be_reduced(self):
        """Test that an unreduced rotation is rejected."""
        with pytest.raises(ValidationError):
            DihedralElement(reflect=0, rot=5, n=5)

    def test_reflection_relation(self):
        """Test r^2 * s r = s r^4 in D_5."""
        # Act
        product = dihedral_mul(DihedralElement.of(0, 2, 5), DihedralElement.of(1, 1, 5))

        # Assert
        assert product == DihedralElement.of(1, 4, 5)

    def test_mismatched_n(self):
        """Test that elements of different dihedral groups cannot be multiplied."""
        with pytest.raises(ModulusMismatchError):
            dihedral_mul(DihedralElement.identity(3), DihedralElement.identity(4))

    @given(dihedral_elements(7), dihedral_elements(7), dihedral_elements(7))
    def test_associativity(self, a, b, c):
        """Test (ab)c = a(bc)."""
        assert dihedral_mul(dihedral_mul(a, b), c) == dihedral_mul(a, dihedral_mul(b, c))

    @given(dihedral_elements(6))
    def test_inverse(self, a):
        """Test a * a^-1 = 1."""
        assert dihedral_mul(a, dihedral_inverse(a)) == DihedralElement.identity(6)

    def test_index_order(self):
        """Test that index h*n + k enumerates the elements."""
        assert [g.index for g in elements(4)] == list(range(8))


class TestAction:
    """Tests for the action on Z_2n."""

    def test_act_values(self):
        """Test s r^2 . 1 = -(1 + 4) in Z_10."""
        # Act
        image = act(DihedralElement.of(1, 2, 5), ZModElement(value=1, modulus=10))

        # Assert
        assert image.value == 5

    def test_act_wrong_modulus(self):
        """Test that D_n only acts on Z_2n."""
        with pytest.raises(ModulusMismatchError):
            act(DihedralElement.identity(5), ZModElement(value=1, modulus=12))

    @given(dihedral_elements(8), dihedral_elements(8), st.integers(0, 15))
    def test_action_law(self, g, h, x):
        """Test g.(h.x) = (gh).x."""
        # Arrange
        point = ZModElement(value=x, modulus=16)

        # Assert
        assert act(g, act(h, point)) == act(dihedral_mul(g, h), point)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_dihedral_action_validates(self, n):
        """Test that the tabulated action passes the action-law check."""
        assert dihedral_action(n).set_size == 2 * n


class TestAutomorphisms:
    """Tests for T^k phi_v."""

    def test_non_unit_rejected(self):
        """Test that phi_v needs a unit v."""
        with pytest.raises(ValidationError):
            DihedralAut(k=0, nu=2, n=4)

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 8])
    def test_group_order(self, n):
        """Test |Aut(D_n)| = n * phi(n)."""
        assert len(automorphism_group(n)) == n * euler_phi(n)

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_matches_enumerated_automorphisms(self, n):
        """Test the closed form against brute-force enumeration on the Cayley table."""
        # Act
        closed_form = {as_group_automorphism(a) for a in automorphism_group(n)}

        # Assert
        assert closed_form == set(automorphisms(dihedral_group(n)))

    @given(dihedral_auts(9), dihedral_auts(9), dihedral_elements(9))
    def test_compose_is_function_composition(self, a, b, g):
        """Test that aut_compose(a, b) applies b first."""
        assert aut_apply(aut_compose(a, b), g) == aut_apply(a, aut_apply(b, g))

    @given(dihedral_auts(10))
    def test_inverse(self, a):
        """Test a * a^-1 = identity."""
        assert aut_compose(a, aut_inverse(a)) == DihedralAut.identity(10)

    @given(dihedral_auts(7), dihedral_elements(7), dihedral_elements(7))
    def test_homomorphism(self, a, g, h):
        """Test a(gh) = a(g) a(h)."""
        assert aut_apply(a, dihedral_mul(g, h)) == dihedral_mul(aut_apply(a, g), aut_apply(a, h))


class TestStabilizers:
    """Tests for the closed-form stabilizers and normalizers."""

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
    def test_closed_forms_match_enumeration(self, n):
        """Test the closed forms against stabilizer and normalizer computed from the action."""
        # Arrange
        action = dihedral_action(n)
        record = stabilizers_and_normalizers(n)

        # Act
        stab_zero, stab_one = stabilizer(action, 0), stabilizer(action, 1)

        # Assert
        assert stab_zero.members == tuple(g.index for g in record.stab_zero)
        assert stab_one.members == tuple(g.index for g in record.stab_one)
        assert normalizer(action.group, stab_zero).members == tuple(g.index for g in record.normalizer_zero)
        assert normalizer(action.group, stab_one).members == tuple(g.index for g in record.normalizer_one)

    def test_odd_normalizer_is_stabilizer(self):
        """Test that for odd n the stabilizers are self-normalizing."""
        record = stabilizers_and_normalizers(5)
        assert record.normalizer_zero == record.stab_zero

    def test_small_n_rejected(self):
        """Test that n < 3 is rejected."""
        with pytest.raises(ValueError):
            stabilizers_and_normalizers(2)
