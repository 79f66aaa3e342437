"""
Tests for the modular arithmetic primitives.

This module contains tests for residues, units, primality and the totient.
"""

import pytest
import sys
import os

from hypothesis import given, strategies as st
from pydantic import ValidationError
from sympy import isprime, totient

# Add the src directory to the path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.goldbach.errors import ModulusMismatchError, NotInvertibleError
from src.goldbach.modarith import (
    ZModElement,
    divisors,
    euler_phi,
    inverse_mod,
    is_prime,
    is_prime_or_one,
    mod_inverse,
    prime_or_one_mask,
    primes_upto,
    two_adic_split,
    units,
)


class TestZModElement:
    """Tests for residues modulo N."""

    def test_value_is_canonicalized(self):
        """Test that values are reduced into [0, N)."""
        # Act
        x = ZModElement(value=17, modulus=12)

        # Assert
        assert x.value == 5

    def test_negative_value_rejected(self):
        """Test that a negative residue is a validation error."""
        with pytest.raises(ValidationError):
            ZModElement(value=-1, modulus=12)

    def test_neg_gives_additive_inverse(self):
        """Test that neg() returns N - x."""
        # Arrange
        x = ZModElement(value=5, modulus=12)

        # Act
        result = x.neg()

        # Assert
        assert result.value == 7
        assert (x + result).value == 0

    def test_mismatched_moduli_raise(self):
        """Test that mixing moduli raises ModulusMismatchError."""
        with pytest.raises(ModulusMismatchError):
            ZModElement(value=1, modulus=12) + ZModElement(value=1, modulus=10)

    @given(st.integers(1, 500), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
    def test_ring_operations_agree_with_integers(self, modulus, a, b):
        """Test that +, -, * match integer arithmetic reduced modulo N."""
        # Arrange
        x = ZModElement(value=a, modulus=modulus)
        y = ZModElement(value=b, modulus=modulus)

        # Assert
        assert (x + y).value == (a + b) % modulus
        assert (x - y).value == (a - b) % modulus
        assert (x * y).value == (a * b) % modulus


class TestPrimes:
    """Tests for the prime sieve helpers."""

    def test_primes_upto_small(self):
        """Test the primes up to 10."""
        assert primes_upto(10) == [2, 3, 5, 7]

    def test_primes_upto_below_two(self):
        """Test that bounds below 2 give no primes."""
        assert primes_upto(0) == []
        assert primes_upto(1) == []

    def test_primes_upto_negative_bound(self):
        """Test that a negative bound is rejected."""
        with pytest.raises(ValueError):
            primes_upto(-1)

    def test_primes_upto_matches_sympy(self):
        """Test the sieve against sympy up to 3000."""
        assert primes_upto(3000) == [p for p in range(3001) if isprime(p)]

    def test_prime_or_one_mask_is_read_only(self):
        """Test that the shared mask cannot be mutated."""
        # Arrange
        mask = prime_or_one_mask(20)

        # Assert
        assert mask[1] and mask[2] and not mask[4] and not mask[0]
        with pytest.raises(ValueError):
            mask[4] = True

    @given(st.integers(0, 5000))
    def test_is_prime_matches_sympy(self, x):
        """Test trial division against sympy."""
        assert is_prime(x) == isprime(x)

    def test_is_prime_or_one(self):
        """Test that 1 counts and 0 does not."""
        assert is_prime_or_one(1)
        assert is_prime_or_one(13)
        assert not is_prime_or_one(0)
        assert not is_prime_or_one(9)

    def test_is_prime_or_one_negative(self):
        """Test that negative input is rejected."""
        with pytest.raises(ValueError):
            is_prime_or_one(-3)


class TestUnits:
    """Tests for unit groups, the totient and inverses."""

    def test_units_of_twelve(self):
        """Test U(Z_12)."""
        # Act
        group = units(12)

        # Assert
        assert group.elements == (1, 5, 7, 11)
        assert len(group) == 4
        assert 13 in group
        assert 6 not in group

    @given(st.integers(1, 3000))
    def test_euler_phi_matches_sympy(self, N):
        """Test the totient against sympy and the unit count."""
        assert euler_phi(N) == int(totient(N))
        assert len(units(N)) == euler_phi(N)

    def test_mod_inverse(self):
        """Test the inverse of 5 modulo 12."""
        assert mod_inverse(ZModElement(value=5, modulus=12)).value == 5
        assert inverse_mod(7, 10) == 3

    def test_mod_inverse_non_unit(self):
        """Test that a non-unit raises NotInvertibleError."""
        with pytest.raises(NotInvertibleError):
            mod_inverse(ZModElement(value=4, modulus=12))

    @given(st.integers(2, 2000).flatmap(lambda n: st.tuples(st.just(n), st.sampled_from(units(n).elements))))
    def test_inverse_of_every_unit(self, pair):
        """Test u * u^-1 = 1 for units."""
        # Arrange
        N, u = pair

        # Act
        v = inverse_mod(u, N)

        # Assert
        assert (u * v) % N == 1


class TestFactorHelpers:
    """Tests for the 2-adic split and divisors."""

    @pytest.mark.parametrize("N, expected", [(1, (0, 1)), (12, (2, 3)), (128, (7, 1)), (90, (1, 45))])
    def test_two_adic_split(self, N, expected):
        """Test N = 2^k * odd."""
        assert two_adic_split(N) == expected

    def test_divisors(self):
        """Test the divisors of 36."""
        assert divisors(36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]
