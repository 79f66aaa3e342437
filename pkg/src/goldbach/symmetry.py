"""
Symmetry module for the Goldbach sieve toolkit.

This module computes G_N, the affine maps of Z_N that fix the Goldbach sieve of N,
splits it into its translation part G_N^(1) and unit part H, and checks the
structural laws that relate the two.
"""

import logging
from functools import lru_cache
from typing import FrozenSet, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .affine import AffineMap, GroupDescriptor, affine_compose, affine_inverse, full_affine_group, is_closed, recognize
from .config import SYMMETRY_MODULUS_CAP
from .dihedral import DihedralElement
from .errors import CapacityError, NotClosedError
from .modarith import two_adic_split, units
from .sieve import GoldbachSieve, build_sieve, q_action_table

# Configure logging
logger = logging.getLogger(__name__)


class SymmetryGroup(BaseModel):
    """
    The group G_N of affine maps fixing the sieve of N.

    Attributes:
        N (int): The even number
        elements (tuple): The maps, ascending by (a, b)
        g1_generator (int, optional): Smallest d > 0 with T_d in G_N
        unit_part (tuple): H, the units v with f_v in G_N
        central_element_present (bool, optional): Whether T_(N/2) f_(1+N/2) is in G_N, when 4 | N
        descriptor (GroupDescriptor): Isomorphism type of G_N
    """
    model_config = ConfigDict(frozen=True)

    N: int = Field(..., description="The even number")
    elements: Tuple[AffineMap, ...] = Field(..., description="Sorted elements of G_N")
    g1_generator: Optional[int] = Field(None, description="Generator of the translation part")
    unit_part: Tuple[int, ...] = Field(..., description="Units v with f_v in G_N")
    central_element_present: Optional[bool] = Field(None, description="T_(N/2) f_(1+N/2) in G_N, when 4 | N")
    descriptor: GroupDescriptor = Field(..., description="Isomorphism type")
    keys: FrozenSet[Tuple[int, int]] = Field(..., exclude=True, description="(a, b) pairs of the elements")

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def translation_order(self) -> int:
        """|G_N^(1)|."""
        return self.N // self.g1_generator if self.g1_generator else 1

    def contains(self, a: int, b: int) -> bool:
        return (a % self.N, b % self.N) in self.keys

    def has_translation(self, d: int) -> bool:
        return self.contains(1, d)

    def has_unit(self, nu: int) -> bool:
        return self.contains(nu, 0)


class StructureReport(BaseModel):
    """Which structural regime G_N falls in and whether its order identity holds."""
    N: int = Field(..., description="The even number")
    two_adic_valuation: int = Field(..., description="k with N = 2^k * odd")
    half_translation_present: bool = Field(..., description="T_(N/2) in G_N")
    half_unit_present: bool = Field(..., description="f_(1+N/2) in G_N")
    central_element_present: bool = Field(..., description="T_(N/2) f_(1+N/2) in G_N")
    mixed_elements: int = Field(..., description="Elements whose translation and unit parts lie outside G_N")
    regime: str = Field(..., description="a, b or violated")
    note: str = Field("", description="Why the regime was rejected, if it was")


class CheckResult(BaseModel):
    """Outcome of a structural check that may not apply to every N."""
    holds: bool = Field(..., description="Whether the property held")
    applicable: bool = Field(True, description="Whether the hypotheses were met")
    note: str = Field("", description="Extra detail")


class InvarianceWitness(BaseModel):
    """Equivariance of an affine map against one dihedral group of the sieve."""
    kind: str = Field(..., description="p for a divisor group, q for an orbit group")
    prime: int = Field(..., description="The prime p or q")
    n: int = Field(..., description="Order of the rotation of the dihedral group")
    holds: bool = Field(..., description="Whether some automorphism (k, v) works")
    k: Optional[int] = Field(None, description="Witness exponent of T")
    nu: Optional[int] = Field(None, description="Witness unit of phi_v")


def compute_symmetry_group(sieve: GoldbachSieve) -> SymmetryGroup:
    """
    Enumerate the affine maps that map the complement onto itself.

    For each unit a the offsets are restricted to those sending the first
    complement residue into the complement, then filtered residue by residue.

    Args:
        sieve (GoldbachSieve): The sieve of N

    Returns:
        SymmetryGroup: G_N with its derived fields

    Raises:
        CapacityError: If N exceeds SYMMETRY_MODULUS_CAP
    """
    N = sieve.N
    if N > SYMMETRY_MODULUS_CAP:
        raise CapacityError(f"N={N} exceeds the symmetry limit {SYMMETRY_MODULUS_CAP}")

    complement = np.asarray(sieve.complement, dtype=np.int64)
    mask = sieve.complement_mask
    if complement.size == 0:
        maps = sorted(full_affine_group(N), key=lambda f: f.key)
    else:
        maps = []
        for a in units(N).elements:
            images = (a * complement) % N
            offsets = np.unique((complement - images[0]) % N)
            for image in images[1:]:
                offsets = offsets[mask[(image + offsets) % N]]
                if offsets.size == 0:
                    break
            maps.extend(AffineMap(a=a, b=int(b), modulus=N) for b in offsets)

    if not is_closed(maps):
        raise NotClosedError(f"sieve-fixing maps for N={N} are not closed")

    keys = frozenset(f.key for f in maps)
    translations = [b for a, b in keys if a == 1 % N and b > 0]
    central = None
    if N % 4 == 0:
        central = ((1 + N // 2) % N, N // 2) in keys
    group = SymmetryGroup(
        N=N,
        elements=tuple(maps),
        g1_generator=min(translations) if translations else None,
        unit_part=tuple(sorted(a for a, b in keys if b == 0)),
        central_element_present=central,
        descriptor=recognize(maps),
        keys=keys,
    )
    logger.info(f"Computed G_{N}: order {group.order}, {group.descriptor.name}")
    return group


@lru_cache(maxsize=512)
def symmetry_group_for(N: int) -> SymmetryGroup:
    """Build the sieve of N and compute its symmetry group, cached per N."""
    return compute_symmetry_group(build_sieve(N))


def translation_part(group: SymmetryGroup) -> Optional[int]:
    """The d with G_N^(1) = <T_d>, or None when G_N^(1) is trivial."""
    return group.g1_generator


def _mixed(group: SymmetryGroup) -> List[AffineMap]:
    return [f for f in group.elements if not group.has_translation(f.b) and not group.has_unit(f.a)]


def decompose(group: SymmetryGroup) -> StructureReport:
    """
    Decide which structural regime G_N satisfies.

    Regime a: 4 | N with T_(N/2) and f_(1+N/2) both outside G_N; then the central
    element T_(N/2) f_(1+N/2) lies in G_N and |G_N| = 2 |G_N^(1)| |H|.
    Regime b: N = 2 * odd, or both T_(N/2) and f_(1+N/2) in G_N; then G_N has no
    mixed elements and |G_N| = |G_N^(1)| |H|.

    Args:
        group (SymmetryGroup): The computed G_N

    Returns:
        StructureReport: The regime, or "violated" with a note
    """
    N = group.N
    k, _ = two_adic_split(N)
    half = N // 2
    half_translation = group.has_translation(half)
    half_unit = group.has_unit(1 + half) if (1 + half) % N in units(N) else False
    central = group.contains(1 + half, half) if (1 + half) % N in units(N) else False
    mixed = _mixed(group)
    base = group.translation_order * len(group.unit_part)

    note = ""
    if k > 1 and not half_translation and not half_unit:
        regime = "a"
        if not central:
            note = "central element missing"
        elif group.order != 2 * base:
            note = f"|G|={group.order} but 2|G1||H|={2 * base}"
    elif k == 1 or (half_translation and half_unit):
        regime = "b"
        if mixed:
            note = f"{len(mixed)} mixed elements"
        elif group.order != base:
            note = f"|G|={group.order} but |G1||H|={base}"
    else:
        regime = "violated"
        note = "exactly one of T_(N/2), f_(1+N/2) lies in G"
    if note:
        regime = "violated"
        logger.warning(f"Structure regime violated for N={N}: {note}")

    return StructureReport(
        N=N,
        two_adic_valuation=k,
        half_translation_present=half_translation,
        half_unit_present=half_unit,
        central_element_present=central,
        mixed_elements=len(mixed),
        regime=regime,
        note=note,
    )


def mixed_element_closure_check(group: SymmetryGroup) -> bool:
    """Every mixed T_d f_v must bring T_2d and f_(v^2) into G_N."""
    return all(
        group.has_translation(2 * f.b) and group.has_unit(f.a * f.a)
        for f in _mixed(group)
    )


def half_shift_uniqueness_check(group: SymmetryGroup) -> CheckResult:
    """
    With G_N^(1) = <T_m> nontrivial, the mixed elements form one coset of
    <T_m> x| H containing some T_(m/2) f_v.
    """
    mixed = _mixed(group)
    m = group.g1_generator
    if m is None or not mixed:
        return CheckResult(holds=True, applicable=False, note="not applicable")

    kernel = {(a, t) for a in group.unit_part for t in range(0, group.N, m)}
    first_inverse = affine_inverse(mixed[0])
    single = all(affine_compose(first_inverse, f).key in kernel for f in mixed)
    half_shift = m % 2 == 0 and any(f.b == m // 2 for f in mixed)
    return CheckResult(
        holds=single and half_shift,
        note="" if single else "mixed elements span several cosets",
    )


def _first_unit(candidates, check) -> Optional[int]:
    for value in candidates:
        if check(value):
            return value
    return None


def multi_invariance_witnesses(f: AffineMap, sieve: GoldbachSieve) -> List[InvarianceWitness]:
    """
    Test f against every dihedral group of the sieve.

    For D_n with its action, f must satisfy f(r.x) = r^v.f(x) and
    f(s.x) = (s r^-k).f(x) for some automorphism T^k phi_v and every x.

    Args:
        f (AffineMap): A map over Z_N
        sieve (GoldbachSieve): The sieve of N

    Returns:
        List[InvarianceWitness]: One record per p group then per q group
    """
    N = sieve.N
    if f.modulus != N:
        raise ValueError(f"map lives modulo {f.modulus}, sieve modulo {N}")
    x = np.arange(N, dtype=np.int64)
    image = (f.a * x + f.b) % N
    witnesses = []

    for p in sieve.split.p_list:
        n = N // p
        rho, sigma = (x + p) % N, (-x) % N
        nu = _first_unit(units(n).elements, lambda v: np.array_equal(image[rho], (image + v * p) % N))
        k = _first_unit(range(n), lambda t: np.array_equal(image[sigma], (t * p - image) % N))
        witnesses.append(InvarianceWitness(
            kind="p", prime=p, n=n, holds=nu is not None and k is not None,
            k=k, nu=nu,
        ))

    for orbit in sieve.q_orbits:
        q, n = orbit.q, len(orbit.positive)
        rho = q_action_table(N, q, DihedralElement.of(0, 1, n))
        sigma = q_action_table(N, q, DihedralElement.of(1, 0, n))

        def rotate(v):
            return q_action_table(N, q, DihedralElement.of(0, v, n))

        def reflect(t):
            return q_action_table(N, q, DihedralElement.of(1, -t, n))

        nu = _first_unit(units(n).elements, lambda v: np.array_equal(image[rho], rotate(v)[image]))
        k = _first_unit(range(n), lambda t: np.array_equal(image[sigma], reflect(t)[image]))
        witnesses.append(InvarianceWitness(
            kind="q", prime=q, n=n, holds=nu is not None and k is not None,
            k=k, nu=nu,
        ))
    return witnesses
