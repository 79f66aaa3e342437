"""
Affine module for the Goldbach sieve toolkit.

This module implements the affine group Aff(Z_N) of maps x -> a*x + b with a a
unit, together with centers, generated subgroups and recognition of the
isomorphism type of small subgroups.
"""

import logging
import math
from collections import Counter, deque
from typing import Iterable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import AFFINE_GROUP_CAP, MODULUS_CAP
from .errors import CapacityError, ModulusMismatchError, NotClosedError
from .modarith import euler_phi, inverse_mod, units

# Configure logging
logger = logging.getLogger(__name__)

_CHUNK = 512


class AffineMap(BaseModel):
    """
    The map x -> a*x + b over Z_N, written T_b f_a.

    Attributes:
        a (int): Unit multiplier
        b (int): Offset
        modulus (int): The modulus N
    """
    model_config = ConfigDict(frozen=True)

    a: int = Field(..., ge=0, description="Unit multiplier")
    b: int = Field(..., ge=0, description="Offset")
    modulus: int = Field(..., ge=1, le=MODULUS_CAP, description="The modulus N")

    @model_validator(mode="after")
    def _valid(self):
        if self.a >= self.modulus or self.b >= self.modulus:
            raise ValueError(f"({self.a}, {self.b}) not reduced modulo {self.modulus}")
        if math.gcd(self.a, self.modulus) != 1:
            raise ValueError(f"multiplier {self.a} is not a unit modulo {self.modulus}")
        return self

    @classmethod
    def of(cls, a: int, b: int, modulus: int) -> "AffineMap":
        return cls(a=a % modulus, b=b % modulus, modulus=modulus)

    @classmethod
    def identity(cls, modulus: int) -> "AffineMap":
        return cls.of(1, 0, modulus)

    @classmethod
    def translation(cls, d: int, modulus: int) -> "AffineMap":
        """T_d: x -> x + d."""
        return cls.of(1, d, modulus)

    @classmethod
    def unit(cls, nu: int, modulus: int) -> "AffineMap":
        """f_v: x -> v*x."""
        return cls.of(nu, 0, modulus)

    def __call__(self, x: int) -> int:
        return (self.a * x + self.b) % self.modulus

    @property
    def key(self) -> Tuple[int, int]:
        return self.a, self.b

    @property
    def label(self) -> str:
        unit_one = self.a == 1 % self.modulus
        if unit_one and self.b == 0:
            return "I"
        if unit_one:
            return f"T_{self.b}"
        if self.b == 0:
            return f"f_{self.a}"
        return f"T_{self.b} f_{self.a}"

    def __str__(self) -> str:
        return self.label

    def as_permutation(self) -> Tuple[int, ...]:
        return tuple((self.a * x + self.b) % self.modulus for x in range(self.modulus))


class GroupDescriptor(BaseModel):
    """
    Isomorphism-type summary of a finite group of affine maps.

    Attributes:
        order (int): Group order
        is_abelian (bool): Whether the group is abelian
        invariant_factors (tuple): d_1 | d_2 | ... with product order (abelian only)
        exponent (int): Least common multiple of the element orders
        center_order (int): Order of the center
        name (str): "1", "Z2", "V", "Z2^3", "Z2xZ4", or a descriptor string
    """
    order: int = Field(..., description="Group order")
    is_abelian: bool = Field(..., description="Whether the group is abelian")
    invariant_factors: Tuple[int, ...] = Field(default=(), description="Invariant factors when abelian")
    exponent: int = Field(..., description="Least common multiple of element orders")
    center_order: int = Field(..., description="Order of the center")
    name: str = Field(..., description="Human-readable isomorphism type")


def _check_same(*maps: AffineMap) -> int:
    moduli = {f.modulus for f in maps}
    if len(moduli) != 1:
        raise ModulusMismatchError(f"affine maps over different moduli: {sorted(moduli)}")
    return moduli.pop()


def affine_compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """
    Return f after g: a = f.a*g.a, b = f.a*g.b + f.b.

    Example:
        >>> affine_compose(AffineMap.of(3, 2, 10), AffineMap.of(1, 4, 10)).label
        'T_4 f_3'
    """
    N = _check_same(f, g)
    return AffineMap.of(f.a * g.a, f.a * g.b + f.b, N)


def affine_inverse(f: AffineMap) -> AffineMap:
    """(T_b f_a)^-1 = T_(-a^-1 b) f_(a^-1)."""
    if f.modulus == 1:
        return f
    a_inv = inverse_mod(f.a, f.modulus)
    return AffineMap.of(a_inv, -a_inv * f.b, f.modulus)


def _order_of(a: int, b: int, N: int) -> int:
    k, x, y = 1, a, b
    while not (x == 1 % N and y == 0):
        x, y = (a * x) % N, (a * y + b) % N
        k += 1
    return k


def element_order(f: AffineMap) -> int:
    """Smallest k >= 1 with f^k = I."""
    return _order_of(f.a, f.b, f.modulus)


def sorted_maps(maps: Iterable[AffineMap]) -> List[AffineMap]:
    """Maps in ascending (a, b) order."""
    return sorted(maps, key=lambda f: f.key)


def full_affine_group(N: int) -> frozenset:
    """
    Materialize Aff(Z_N), all N*phi(N) maps.

    Args:
        N (int): The modulus

    Returns:
        frozenset: Every AffineMap over Z_N

    Raises:
        CapacityError: If N*phi(N) exceeds AFFINE_GROUP_CAP
    """
    if N < 1:
        raise ValueError(f"modulus must be positive, got {N}")
    size = N * euler_phi(N)
    if size > AFFINE_GROUP_CAP:
        raise CapacityError(f"|Aff(Z_{N})| = {size} exceeds the limit {AFFINE_GROUP_CAP}")
    return frozenset(AffineMap(a=a, b=b, modulus=N) for a in units(N).elements for b in range(N))


def _arrays(maps: Iterable[AffineMap]) -> Tuple[np.ndarray, np.ndarray, int]:
    maps = list(maps)
    if not maps:
        raise ValueError("empty set of affine maps")
    N = _check_same(*maps)
    a = np.fromiter((f.a for f in maps), dtype=np.int64, count=len(maps))
    b = np.fromiter((f.b for f in maps), dtype=np.int64, count=len(maps))
    return a, b, N


def is_closed(maps: Iterable[AffineMap]) -> bool:
    """Whether a nonempty set of maps over one modulus is closed under composition."""
    a, b, N = _arrays(maps)
    keys = np.unique(a * N + b)
    for start in range(0, len(a), _CHUNK):
        rows = slice(start, start + _CHUNK)
        ca = (a[rows, None] * a[None, :]) % N
        cb = (a[rows, None] * b[None, :] + b[rows, None]) % N
        if not np.isin(ca * N + cb, keys).all():
            return False
    return True


def center(subgroup: Iterable[AffineMap]) -> frozenset:
    """
    Elements commuting with every element of a closed set of maps.

    Raises:
        NotClosedError: If the input is not closed under composition
    """
    maps = list(subgroup)
    if not is_closed(maps):
        raise NotClosedError("center requires a set closed under composition")
    a, b, N = _arrays(maps)
    # multipliers commute, so fg = gf reduces to the offsets
    commuting = np.ones(len(a), dtype=bool)
    for start in range(0, len(a), _CHUNK):
        rows = slice(start, start + _CHUNK)
        lhs = (a[rows, None] * b[None, :] + b[rows, None]) % N
        rhs = (a[None, :] * b[rows, None] + b[None, :]) % N
        commuting[rows] = (lhs == rhs).all(axis=1)
    return frozenset(f for f, keep in zip(maps, commuting) if keep)


def generated_subgroup(gens: Iterable[AffineMap], modulus: Optional[int] = None) -> frozenset:
    """
    Smallest subgroup containing gens, by breadth-first closure.

    Args:
        gens: Generating maps, all over the same modulus
        modulus (int, optional): Needed when gens is empty

    Returns:
        frozenset: The generated subgroup

    Raises:
        CapacityError: If the closure grows beyond AFFINE_GROUP_CAP
    """
    gens = list(gens)
    if gens:
        N = _check_same(*gens)
        if modulus is not None and modulus != N:
            raise ModulusMismatchError(f"generators live modulo {N}, not {modulus}")
    elif modulus is None:
        raise ValueError("modulus is required for an empty generating set")
    else:
        N = modulus

    identity = AffineMap.identity(N)
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = affine_compose(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > AFFINE_GROUP_CAP:
                    raise CapacityError(f"generated subgroup exceeds {AFFINE_GROUP_CAP} maps")
                queue.append(y)
    return frozenset(seen)


def _invariant_factors(order: int, element_orders: List[int]) -> Tuple[int, ...]:
    primes = [p for p in range(2, order + 1) if order % p == 0 and all(p % q for q in range(2, math.isqrt(p) + 1))]
    # per prime: exponents of the cyclic p-factors, largest first
    parts = {}
    for p in primes:
        counts = [1]
        power = 1
        while counts[-1] < _p_part(order, p):
            power *= p
            counts.append(sum(1 for o in element_orders if power % o == 0))
        ranks = [round(math.log(counts[k] // counts[k - 1], p)) for k in range(1, len(counts))]
        exponents = []
        for k, rank in enumerate(ranks, start=1):
            following = ranks[k] if k < len(ranks) else 0
            exponents.extend([k] * (rank - following))
        parts[p] = sorted(exponents, reverse=True)

    length = max((len(e) for e in parts.values()), default=0)
    factors = []
    for i in range(length):
        factor = 1
        for p, exponents in parts.items():
            if i < len(exponents):
                factor *= p ** exponents[i]
        factors.append(factor)
    return tuple(sorted(factors))


def _p_part(n: int, p: int) -> int:
    result = 1
    while n % p == 0:
        n //= p
        result *= p
    return result


def _abelian_name(factors: Tuple[int, ...]) -> str:
    if not factors:
        return "1"
    if factors == (2, 2):
        return "V"
    parts = []
    for factor, count in sorted(Counter(factors).items()):
        parts.append(f"Z{factor}" + (f"^{count}" if count > 1 else ""))
    return "x".join(parts)


def recognize(subgroup: Iterable[AffineMap]) -> GroupDescriptor:
    """
    Identify a closed set of affine maps up to isomorphism.

    Abelian groups are named by their invariant factors, read off from the
    number of elements killed by each prime power. Nonabelian groups, and any
    group of order above 64, get a descriptor of order, exponent and center.

    Args:
        subgroup: A closed set of maps

    Returns:
        GroupDescriptor: The isomorphism-type summary
    """
    maps = list(subgroup)
    if len(maps) > AFFINE_GROUP_CAP:
        raise CapacityError(f"cannot recognize a group of {len(maps)} maps")
    order = len(maps)
    element_orders = [element_order(f) for f in maps]
    exponent = math.lcm(*element_orders) if element_orders else 1
    center_order = len(center(maps))
    is_abelian = center_order == order

    factors: Tuple[int, ...] = ()
    if is_abelian:
        factors = _invariant_factors(order, element_orders)
    if is_abelian and order <= 64:
        name = _abelian_name(factors)
    else:
        kind = "abelian" if is_abelian else "nonabelian"
        name = f"{kind}({order},{exponent},{center_order})"
    logger.debug(f"Recognized group of order {order} as {name}")
    return GroupDescriptor(
        order=order,
        is_abelian=is_abelian,
        invariant_factors=factors,
        exponent=exponent,
        center_order=center_order,
        name=name,
    )
