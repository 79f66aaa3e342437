"""
Dihedral module for the Goldbach sieve toolkit.

This module implements the dihedral group D_n in the normal form s^h r^k, its
automorphisms T^k phi_v and its action on Z_2n by x -> x + 2k, x -> -x.
"""

import logging
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import ModulusMismatchError
from .group_core import FiniteAction, FiniteGroup, GroupAutomorphism
from .modarith import ZModElement, inverse_mod, units

# Configure logging
logger = logging.getLogger(__name__)


class DihedralElement(BaseModel):
    """
    The element s^reflect r^rot of D_n.

    Attributes:
        reflect (int): 0 or 1
        rot (int): Rotation exponent modulo n
        n (int): Order of the rotation subgroup
    """
    model_config = ConfigDict(frozen=True)

    reflect: int = Field(..., ge=0, le=1, description="Exponent of the reflection s")
    rot: int = Field(..., ge=0, description="Exponent of the rotation r, reduced modulo n")
    n: int = Field(..., ge=1, description="Order of the rotation r")

    @model_validator(mode="after")
    def _reduced(self):
        if self.rot >= self.n:
            raise ValueError(f"rotation {self.rot} not reduced modulo {self.n}")
        return self

    @classmethod
    def of(cls, reflect: int, rot: int, n: int) -> "DihedralElement":
        return cls(reflect=reflect, rot=rot % n, n=n)

    @classmethod
    def identity(cls, n: int) -> "DihedralElement":
        return cls(reflect=0, rot=0, n=n)

    @property
    def index(self) -> int:
        """Position h*n + k in the Cayley table of dihedral_group(n)."""
        return self.reflect * self.n + self.rot

    def __str__(self) -> str:
        rotation = "" if self.rot == 0 else ("r" if self.rot == 1 else f"r^{self.rot}")
        if self.reflect:
            return "s" + rotation
        return rotation or "1"


class DihedralAut(BaseModel):
    """
    The automorphism T^k phi_v of D_n: s -> r^k s, r -> r^v.

    Attributes:
        k (int): Translation exponent modulo n
        nu (int): Unit multiplier modulo n
        n (int): Order of the rotation subgroup
    """
    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=0, description="Exponent of T")
    nu: int = Field(..., ge=0, description="Unit v of phi_v")
    n: int = Field(..., ge=1, description="Order of the rotation r")

    @model_validator(mode="after")
    def _valid(self):
        if self.k >= self.n or self.nu >= self.n:
            raise ValueError(f"automorphism parameters ({self.k}, {self.nu}) not reduced modulo {self.n}")
        if self.nu not in units(self.n):
            raise ValueError(f"{self.nu} is not a unit modulo {self.n}")
        return self

    @classmethod
    def of(cls, k: int, nu: int, n: int) -> "DihedralAut":
        return cls(k=k % n, nu=nu % n, n=n)

    @classmethod
    def identity(cls, n: int) -> "DihedralAut":
        return cls(k=0, nu=1 % n, n=n)


class StabilizerRecord(BaseModel):
    """Closed-form stabilizers of 0 and 1 in Z_2n and their normalizers."""
    n: int = Field(..., description="Order of the rotation r")
    stab_zero: Tuple[DihedralElement, ...] = Field(..., description="Stab(0) = <s>")
    stab_one: Tuple[DihedralElement, ...] = Field(..., description="Stab(1) = <rs>")
    normalizer_zero: Tuple[DihedralElement, ...] = Field(..., description="N(Stab(0))")
    normalizer_one: Tuple[DihedralElement, ...] = Field(..., description="N(Stab(1))")


def _same_n(*ns: int) -> None:
    if len(set(ns)) != 1:
        raise ModulusMismatchError(f"dihedral operands over different n: {sorted(set(ns))}")


def dihedral_mul(a: DihedralElement, b: DihedralElement) -> DihedralElement:
    """
    Multiply in normal form using r^k s = s r^-k.

    Args:
        a (DihedralElement): Left factor
        b (DihedralElement): Right factor

    Returns:
        DihedralElement: The product ab

    Example:
        >>> str(dihedral_mul(DihedralElement.of(0, 2, 5), DihedralElement.of(1, 1, 5)))
        'sr^4'
    """
    _same_n(a.n, b.n)
    sign = -1 if b.reflect else 1
    return DihedralElement.of(a.reflect ^ b.reflect, sign * a.rot + b.rot, a.n)


def dihedral_inverse(a: DihedralElement) -> DihedralElement:
    if a.reflect:
        return a
    return DihedralElement.of(0, -a.rot, a.n)


def act_step(g: DihedralElement, x: int, step: int, modulus: int) -> int:
    """(-1)^h (x + step*k) mod modulus; act is the case step = 2, modulus = 2n."""
    value = x + step * g.rot
    return (-value if g.reflect else value) % modulus


def act(g: DihedralElement, x: ZModElement) -> ZModElement:
    """
    Apply s^h r^k to x in Z_2n: the result is (-1)^h (x + 2k).

    Raises:
        ModulusMismatchError: If x does not live in Z_2n
    """
    if x.modulus != 2 * g.n:
        raise ModulusMismatchError(f"D_{g.n} acts on Z_{2 * g.n}, not Z_{x.modulus}")
    return ZModElement(value=act_step(g, x.value, 2, x.modulus), modulus=x.modulus)


def aut_compose(a: DihedralAut, b: DihedralAut) -> DihedralAut:
    """(T^k phi_v)(T^l phi_u) = T^(k + v l) phi_(v u)."""
    _same_n(a.n, b.n)
    return DihedralAut.of(a.k + a.nu * b.k, a.nu * b.nu, a.n)


def aut_inverse(a: DihedralAut) -> DihedralAut:
    nu_inv = inverse_mod(a.nu, a.n) if a.n > 1 else 0
    return DihedralAut.of(-nu_inv * a.k, nu_inv, a.n)


def aut_apply(a: DihedralAut, g: DihedralElement) -> DihedralElement:
    """
    Image of s^h r^m under T^k phi_v, which is s^h r^(v m - h k).

    Args:
        a (DihedralAut): The automorphism
        g (DihedralElement): The element

    Returns:
        DihedralElement: The image of g
    """
    _same_n(a.n, g.n)
    return DihedralElement.of(g.reflect, a.nu * g.rot - g.reflect * a.k, g.n)


def elements(n: int) -> Tuple[DihedralElement, ...]:
    """All 2n elements in index order."""
    return tuple(DihedralElement(reflect=h, rot=k, n=n) for h in (0, 1) for k in range(n))


def dihedral_group(n: int) -> FiniteGroup:
    """
    The Cayley table of D_n, element s^h r^k at index h*n + k.

    Args:
        n (int): Order of the rotation subgroup

    Returns:
        FiniteGroup: D_n of order 2n
    """
    if n < 1:
        raise ValueError(f"D_n needs n >= 1, got {n}")
    members = elements(n)
    table = [[dihedral_mul(a, b).index for b in members] for a in members]
    return FiniteGroup(table, labels=[str(g) for g in members])


def dihedral_action(n: int) -> FiniteAction:
    """D_n acting on Z_2n through act."""
    members = elements(n)
    return FiniteAction(dihedral_group(n), 2 * n, lambda g, x: act_step(members[g], x, 2, 2 * n))


def automorphism_group(n: int) -> Tuple[DihedralAut, ...]:
    """All n*phi(n) automorphisms T^k phi_v, ordered by (k, v)."""
    return tuple(DihedralAut(k=k, nu=nu, n=n) for k in range(n) for nu in units(n).elements)


def as_group_automorphism(a: DihedralAut) -> GroupAutomorphism:
    """The index permutation of dihedral_group(n) induced by a."""
    return GroupAutomorphism(images=tuple(aut_apply(a, g).index for g in elements(a.n)))


def stabilizers_and_normalizers(n: int) -> StabilizerRecord:
    """
    Stabilizers of 0 and 1 under the action on Z_2n, with their normalizers.

    For odd n each normalizer is the stabilizer itself; for even n it gains the
    central rotation r^(n/2).

    Args:
        n (int): Order of the rotation subgroup, at least 3

    Returns:
        StabilizerRecord: The four subgroups as sorted element tuples
    """
    if n < 3:
        raise ValueError(f"closed forms need n >= 3, got {n}")
    one = DihedralElement.identity(n)
    sigma = DihedralElement.of(1, 0, n)
    rho_sigma = DihedralElement.of(1, -1, n)
    stab_zero = (one, sigma)
    stab_one = (one, rho_sigma)
    if n % 2:
        normalizer_zero, normalizer_one = stab_zero, stab_one
    else:
        half = DihedralElement.of(0, n // 2, n)
        normalizer_zero = stab_zero + (half, dihedral_mul(sigma, half))
        normalizer_one = stab_one + (half, dihedral_mul(rho_sigma, half))

    def ordered(group):
        return tuple(sorted(group, key=lambda g: g.index))

    return StabilizerRecord(
        n=n,
        stab_zero=ordered(stab_zero),
        stab_one=ordered(stab_one),
        normalizer_zero=ordered(normalizer_zero),
        normalizer_one=ordered(normalizer_one),
    )
