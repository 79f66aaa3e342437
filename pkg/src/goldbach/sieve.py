"""
Sieve module for the Goldbach sieve toolkit.

This module builds the dihedral sieve of an even number N: the primes split into
divisors p and non-divisors q of N, the covering set A_N made of the multiples of
each p and the orbits Q_k of 2q, and the complement that holds the Goldbach pairs.
"""

import logging
import math
from functools import lru_cache
from typing import Dict, FrozenSet, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .config import MODULUS_CAP
from .dihedral import DihedralElement, dihedral_mul
from .errors import CapacityError, ModulusMismatchError
from .modarith import prime_or_one_mask, primes_upto

# Configure logging
logger = logging.getLogger(__name__)


class PrimeSplit(BaseModel):
    """
    Primes up to floor(sqrt(N)) split by whether they divide N.

    Attributes:
        N (int): The even number
        p_list (tuple): 2 and the odd primes dividing N
        q_list (tuple): The odd primes not dividing N
    """
    model_config = ConfigDict(frozen=True)

    N: int = Field(..., ge=2, description="The even number")
    p_list: Tuple[int, ...] = Field(..., description="2 and the odd primes <= sqrt(N) dividing N")
    q_list: Tuple[int, ...] = Field(..., description="Odd primes <= sqrt(N) not dividing N")


class QOrbit(BaseModel):
    """
    The orbit Q_k of the base point 2q, split into C_k = {sq} and C_-k = {N - sq}.

    Attributes:
        q (int): The non-dividing prime
        base_point (int): 2q
        positive (tuple): sq mod N for s = 2..floor(N/q)
        negative (tuple): N - sq for the same s
    """
    model_config = ConfigDict(frozen=True)

    q: int = Field(..., description="The non-dividing prime")
    base_point: int = Field(..., description="The base point 2q")
    positive: Tuple[int, ...] = Field(..., description="The part C_k")
    negative: Tuple[int, ...] = Field(..., description="The part C_-k")

    @property
    def members(self) -> FrozenSet[int]:
        return frozenset(self.positive) | frozenset(self.negative)


class GoldbachSieve(BaseModel):
    """
    The partition of Z_N into the covering A_N and its complement.

    Attributes:
        N (int): The even number
        split (PrimeSplit): The prime split of N
        covering (np.ndarray): Read-only membership mask of A_N
        complement (tuple): Sorted residues outside A_N
        complement_mask (np.ndarray): Read-only membership mask of the complement
        q_orbits (tuple): One QOrbit per q in the split
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    N: int = Field(..., description="The even number")
    split: PrimeSplit = Field(..., description="The prime split")
    covering: np.ndarray = Field(..., description="Membership mask of A_N")
    complement: Tuple[int, ...] = Field(..., description="Sorted complement residues")
    complement_mask: np.ndarray = Field(..., description="Membership mask of the complement")
    q_orbits: Tuple[QOrbit, ...] = Field(..., description="The orbits Q_k")


def _require_modulus(N: int) -> None:
    if N < 2 or N % 2:
        raise ValueError(f"expected an even number >= 2, got {N}")
    if N > MODULUS_CAP:
        raise CapacityError(f"N={N} exceeds the modulus limit {MODULUS_CAP}")


def prime_split(N: int) -> PrimeSplit:
    """
    Split the primes up to floor(sqrt(N)) into divisors and non-divisors of N.

    2 is always a divisor, including N = 2 where it exceeds the square root.

    Args:
        N (int): An even number >= 2

    Returns:
        PrimeSplit: The split

    Example:
        >>> prime_split(128).q_list
        (3, 5, 7, 11)
    """
    _require_modulus(N)
    odd = [p for p in primes_upto(math.isqrt(N)) if p > 2]
    return PrimeSplit(
        N=N,
        p_list=(2,) + tuple(p for p in odd if N % p == 0),
        q_list=tuple(q for q in odd if N % q),
    )


def q_orbit(N: int, q: int) -> QOrbit:
    """
    The orbit of 2q: the residues +-(2+m)q for 0 <= m <= floor(N/q) - 2.

    Raises:
        ValueError: If q is not one of the non-dividing primes of N
    """
    split = prime_split(N)
    if q not in split.q_list:
        raise ValueError(f"{q} is not an odd prime <= sqrt({N}) coprime to {N}")
    multiples = [s * q for s in range(2, N // q + 1)]
    return QOrbit(
        q=q,
        base_point=2 * q,
        positive=tuple(x % N for x in multiples),
        negative=tuple((N - x) % N for x in multiples),
    )


@lru_cache(maxsize=1024)
def _transport(N: int, q: int) -> Tuple[QOrbit, Dict[int, DihedralElement]]:
    orbit = q_orbit(N, q)
    m = len(orbit.positive)
    inverse = {x: DihedralElement.of(0, k, m) for k, x in enumerate(orbit.positive)}
    inverse.update({x: DihedralElement.of(1, k, m) for k, x in enumerate(orbit.negative)})
    return orbit, inverse


def act_q(N: int, q: int, g: DihedralElement, x: int) -> int:
    """
    The action of D_m, m = floor(N/q) - 1, transported onto Q_k.

    Inside Q_k the element g acts by left multiplication through the bijection
    s^h r^k -> (-1)^h (2+k) q; outside Q_k it acts as x -> (-1)^h x.

    Args:
        N (int): The even number
        q (int): A non-dividing prime of N
        g (DihedralElement): An element of D_m
        x (int): A residue modulo N

    Returns:
        int: The residue g.x
    """
    orbit, inverse = _transport(N, q)
    m = len(orbit.positive)
    if g.n != m:
        raise ModulusMismatchError(f"Q-orbit of {q} in Z_{N} is acted on by D_{m}, not D_{g.n}")
    x %= N
    if x not in inverse:
        return (N - x) % N if g.reflect else x
    product = dihedral_mul(g, inverse[x])
    value = (2 + product.rot) * q
    return (N - value) % N if product.reflect else value % N


def q_action_table(N: int, q: int, g: DihedralElement) -> np.ndarray:
    """The images act_q(N, q, g, x) for every residue x, as an array."""
    orbit, inverse = _transport(N, q)
    if g.n != len(orbit.positive):
        raise ModulusMismatchError(f"Q-orbit of {q} in Z_{N} is acted on by D_{len(orbit.positive)}, not D_{g.n}")
    x = np.arange(N, dtype=np.int64)
    table = (N - x) % N if g.reflect else x.copy()
    for point, element in inverse.items():
        product = dihedral_mul(g, element)
        value = (2 + product.rot) * q
        table[point] = (N - value) % N if product.reflect else value
    return table


@lru_cache(maxsize=256)
def build_sieve(N: int) -> GoldbachSieve:
    """
    Build the Goldbach dihedral sieve of N.

    The covering is the union of the multiples of every p in the split (the orbit
    of 0 under D_(N/p)) and every orbit Q_k; the complement is everything else.

    Args:
        N (int): An even number >= 2

    Returns:
        GoldbachSieve: The sieve, shared between callers

    Raises:
        ValueError: If N is odd or below 2
        CapacityError: If N exceeds the modulus limit
    """
    _require_modulus(N)
    split = prime_split(N)
    covering = np.zeros(N, dtype=bool)
    for p in split.p_list:
        covering[::p] = True
    orbits = tuple(q_orbit(N, q) for q in split.q_list)
    for orbit in orbits:
        covering[list(orbit.members)] = True
    complement_mask = ~covering
    covering.flags.writeable = False
    complement_mask.flags.writeable = False
    complement = tuple(int(x) for x in np.flatnonzero(complement_mask))
    logger.debug(f"Built sieve for N={N}: |complement|={len(complement)}")
    return GoldbachSieve(
        N=N,
        split=split,
        covering=covering,
        complement=complement,
        complement_mask=complement_mask,
        q_orbits=orbits,
    )


def goldbach_oracle(N: int) -> List[int]:
    """
    Residues x in [1, N-1] with x and N-x both 1 or prime, by direct sieving.

    Example:
        >>> goldbach_oracle(16)
        [3, 5, 11, 13]
    """
    _require_modulus(N)
    mask = prime_or_one_mask(N)
    x = np.arange(1, N)
    return (np.flatnonzero(mask[x] & mask[N - x]) + 1).tolist()


def format_sieve(sieve: GoldbachSieve) -> str:
    """Three-line dump: N, complement, and the prime split."""
    p_list = ",".join(str(p) for p in sieve.split.p_list)
    q_list = ",".join(str(q) for q in sieve.split.q_list)
    return "\n".join([
        f"N={sieve.N}",
        f"complement={','.join(str(x) for x in sieve.complement)}",
        f"p=[{p_list}] q=[{q_list}]",
    ])
