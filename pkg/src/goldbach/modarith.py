"""
Modular arithmetic module for the Goldbach sieve toolkit.

This module provides exact arithmetic over Z and Z_N: the sieve of Eratosthenes,
prime-or-one tests, residues, unit groups, Euler's totient and modular inverses.
"""

import logging
import math
from functools import lru_cache
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .config import MODULUS_CAP
from .errors import ModulusMismatchError, NotInvertibleError

# Configure logging
logger = logging.getLogger(__name__)


class ZModElement(BaseModel):
    """
    A canonical residue modulo N.

    Attributes:
        value (int): The residue, always in [0, modulus)
        modulus (int): The modulus N
    """
    model_config = ConfigDict(frozen=True)

    value: int = Field(..., ge=0, description="Canonical residue in [0, modulus)")
    modulus: int = Field(..., ge=1, le=MODULUS_CAP, description="The modulus N")

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data):
        if isinstance(data, dict) and "value" in data and "modulus" in data:
            value, modulus = data["value"], data["modulus"]
            if isinstance(value, int) and isinstance(modulus, int) and modulus >= 1:
                if value < 0:
                    raise ValueError(f"negative residue {value} rejected; use neg()")
                data = {**data, "value": value % modulus}
        return data

    def _check(self, other: "ZModElement") -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatchError(f"moduli differ: {self.modulus} != {other.modulus}")

    def __add__(self, other: "ZModElement") -> "ZModElement":
        self._check(other)
        return ZModElement(value=(self.value + other.value) % self.modulus, modulus=self.modulus)

    def __sub__(self, other: "ZModElement") -> "ZModElement":
        self._check(other)
        return ZModElement(value=(self.value - other.value) % self.modulus, modulus=self.modulus)

    def __mul__(self, other: "ZModElement") -> "ZModElement":
        self._check(other)
        return ZModElement(value=(self.value * other.value) % self.modulus, modulus=self.modulus)

    def neg(self) -> "ZModElement":
        """Return the additive inverse -x."""
        return ZModElement(value=(-self.value) % self.modulus, modulus=self.modulus)

    def __neg__(self) -> "ZModElement":
        return self.neg()

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


class UnitGroup(BaseModel):
    """
    The multiplicative units U(Z_N).

    Attributes:
        modulus (int): The modulus N
        elements (List[int]): Sorted residues coprime to N
    """
    model_config = ConfigDict(frozen=True)

    modulus: int = Field(..., ge=1, description="The modulus N")
    elements: tuple[int, ...] = Field(..., description="Sorted residues coprime to N")

    @field_validator("elements")
    @classmethod
    def _sorted_unique(cls, elements):
        if list(elements) != sorted(set(elements)):
            raise ValueError("unit list must be sorted and duplicate-free")
        return elements

    @model_validator(mode="after")
    def _coprime(self):
        for u in self.elements:
            if math.gcd(u, self.modulus) != 1:
                raise ValueError(f"{u} is not a unit modulo {self.modulus}")
        return self

    def __contains__(self, value: int) -> bool:
        return math.gcd(value % self.modulus, self.modulus) == 1

    def __len__(self) -> int:
        return len(self.elements)


def _sieve_mask(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p: limit + 1: p] = False
    return is_prime


def primes_upto(bound: int) -> List[int]:
    """
    Return the primes p <= bound in ascending order.

    Args:
        bound (int): Upper bound, inclusive

    Returns:
        List[int]: The primes up to bound

    Example:
        >>> primes_upto(10)
        [2, 3, 5, 7]
    """
    if bound < 0:
        raise ValueError(f"bound must be nonnegative, got {bound}")
    if bound < 2:
        return []
    return np.flatnonzero(_sieve_mask(bound)).tolist()


@lru_cache(maxsize=64)
def prime_or_one_mask(bound: int) -> np.ndarray:
    """
    Boolean table t with t[x] true iff x = 1 or x is prime, for 0 <= x <= bound.

    The returned array is read-only and shared between callers.
    """
    mask = _sieve_mask(max(bound, 1))[: bound + 1].copy()
    if bound >= 1:
        mask[1] = True
    mask.flags.writeable = False
    return mask


def is_prime(x: int) -> bool:
    """Deterministic primality by trial division."""
    if x < 2:
        return False
    if x % 2 == 0:
        return x == 2
    for d in range(3, math.isqrt(x) + 1, 2):
        if x % d == 0:
            return False
    return True


def is_prime_or_one(x: int) -> bool:
    """
    Check whether x is 1 or a prime.

    Args:
        x (int): A nonnegative integer

    Returns:
        bool: True iff x == 1 or x is prime
    """
    if x < 0:
        raise ValueError(f"expected a nonnegative integer, got {x}")
    return x == 1 or is_prime(x)


def units(N: int) -> UnitGroup:
    """
    Compute U(Z_N), the residues coprime to N.

    Args:
        N (int): The modulus

    Returns:
        UnitGroup: The sorted units modulo N
    """
    if N < 1:
        raise ValueError(f"modulus must be positive, got {N}")
    residues = np.arange(N, dtype=np.int64)
    elements = np.flatnonzero(np.gcd(residues, N) == 1).tolist()
    return UnitGroup(modulus=N, elements=tuple(elements))


def euler_phi(N: int) -> int:
    """Euler's totient, computed from the prime factorization of N."""
    if N < 1:
        raise ValueError(f"modulus must be positive, got {N}")
    result, n = N, N
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def mod_inverse(u: ZModElement) -> ZModElement:
    """
    Compute the multiplicative inverse of a unit.

    Args:
        u (ZModElement): A residue coprime to its modulus

    Returns:
        ZModElement: The residue v with u*v = 1 mod N

    Raises:
        NotInvertibleError: If u is not a unit
    """
    try:
        inverse = pow(u.value, -1, u.modulus)
    except ValueError as e:
        raise NotInvertibleError(f"{u.value} is not invertible modulo {u.modulus}") from e
    return ZModElement(value=inverse, modulus=u.modulus)


def inverse_mod(value: int, modulus: int) -> int:
    """Integer shortcut for mod_inverse used by the hot paths."""
    return mod_inverse(ZModElement(value=value % modulus, modulus=modulus)).value


def two_adic_split(N: int) -> tuple[int, int]:
    """Write N = 2^k * odd and return (k, odd)."""
    if N < 1:
        raise ValueError(f"expected a positive integer, got {N}")
    k = 0
    while N % 2 == 0:
        N //= 2
        k += 1
    return k, N


def divisors(n: int) -> List[int]:
    """Sorted positive divisors of n (n >= 1)."""
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))
