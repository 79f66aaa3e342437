"""
Group core module for the Goldbach sieve toolkit.

This module implements finite groups given by Cayley tables, their actions on small
sets, automorphism enumeration and the construction of automorphism-invariant
bijections. Everything here is exhaustive and meant for desk-scale instances.
"""

import logging
import math
from collections import defaultdict, deque
from itertools import permutations, product
from pathlib import Path
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .config import AUTOMORPHISM_CANDIDATE_CAP, GROUP_ORDER_CAP, INVARIANT_SET_CAP
from .errors import (
    CapacityError,
    InvariantConstructionError,
    NoInvariantError,
    NotClosedError,
)

# Configure logging
logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]


class FiniteGroup:
    """
    A finite group given by its multiplication table.

    Index 0 must be the identity. The table is validated on construction:
    identity row and column, Latin square, associativity.

    Attributes:
        order (int): Number of elements
        table (tuple): table[a][b] is the index of the product ab
        inv (tuple): inv[a] is the index of the inverse of a
        labels (tuple): Display names of the elements
    """

    identity = 0

    def __init__(self, table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None):
        matrix = np.asarray(table, dtype=np.int64)
        if matrix.ndim != 2 or matrix.shape[0] == 0 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("Cayley table must be a nonempty square matrix")
        n = matrix.shape[0]
        if n > GROUP_ORDER_CAP:
            raise CapacityError(f"group order {n} exceeds the limit {GROUP_ORDER_CAP}")
        if matrix.min() < 0 or matrix.max() >= n:
            raise ValueError("Cayley table entries must be element indices")
        indices = np.arange(n)
        if not (np.array_equal(matrix[0], indices) and np.array_equal(matrix[:, 0], indices)):
            raise ValueError("index 0 is not the identity of the table")
        if not (np.all(np.sort(matrix, axis=1) == indices) and np.all(np.sort(matrix, axis=0) == indices[:, None])):
            raise ValueError("Cayley table is not a Latin square")
        left = matrix[matrix]
        right = matrix[indices[:, None, None], matrix[None, :, :]]
        if not np.array_equal(left, right):
            raise ValueError("Cayley table is not associative")

        self.order = n
        self.table = tuple(tuple(int(v) for v in row) for row in matrix)
        self.inv = tuple(int(v) for v in np.argmax(matrix == 0, axis=1))
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise ValueError("one label per element is required")

    def __repr__(self) -> str:
        return f"<FiniteGroup(order={self.order})>"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(a))

    def generated(self, gens: Iterable[int]) -> FrozenSet[int]:
        """Closure of the given elements under multiplication."""
        gens = list(gens)
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def conjugate(self, g: int, members: Iterable[int]) -> FrozenSet[int]:
        """The set g S g^-1."""
        g_inv = self.inv[g]
        return frozenset(self.table[self.table[g][s]][g_inv] for s in members)


class FiniteAction:
    """
    A left action of a FiniteGroup on the points 0..set_size-1.

    Attributes:
        group (FiniteGroup): The acting group
        set_size (int): Number of points
        table (tuple): table[g][x] is the point g.x
    """

    def __init__(self, group: FiniteGroup, set_size: int, act: Callable[[int, int], int]):
        if set_size < 1:
            raise ValueError("an action needs at least one point")
        self.group = group
        self.set_size = set_size
        self.table = tuple(tuple(act(g, x) for x in range(set_size)) for g in range(group.order))

        matrix = np.asarray(self.table, dtype=np.int64)
        if matrix.min() < 0 or matrix.max() >= set_size:
            raise ValueError("action maps a point outside the set")
        if not np.array_equal(matrix[0], np.arange(set_size)):
            raise ValueError("identity does not act trivially")
        cayley = np.asarray(group.table, dtype=np.int64)
        g_idx = np.arange(group.order)
        composed = matrix[g_idx[:, None, None], matrix[None, :, :]]
        direct = matrix[cayley[:, :, None], np.arange(set_size)[None, None, :]]
        if not np.array_equal(composed, direct):
            raise ValueError("act(g, act(h, x)) != act(gh, x)")

    def __repr__(self) -> str:
        return f"<FiniteAction(order={self.group.order}, set_size={self.set_size})>"

    def act(self, g: int, x: int) -> int:
        return self.table[g][x]


class Subgroup(BaseModel):
    """
    A subgroup of a FiniteGroup, stored as sorted member indices.

    Attributes:
        parent (FiniteGroup): The ambient group
        members (tuple): Sorted member indices
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    parent: FiniteGroup = Field(..., description="The ambient group")
    members: Tuple[int, ...] = Field(..., description="Sorted member indices")

    @model_validator(mode="after")
    def _closed(self):
        members = set(self.members)
        if list(self.members) != sorted(members):
            raise ValueError("subgroup members must be sorted and unique")
        if 0 not in members:
            raise ValueError("subgroup must contain the identity")
        for a in members:
            if self.parent.inv[a] not in members:
                raise ValueError("subgroup is not closed under inverses")
            for b in members:
                if self.parent.table[a][b] not in members:
                    raise ValueError("subgroup is not closed under multiplication")
        return self

    @classmethod
    def of(cls, parent: FiniteGroup, members: Iterable[int]) -> "Subgroup":
        return cls(parent=parent, members=tuple(sorted(set(members))))

    @property
    def order(self) -> int:
        return len(self.members)

    def as_set(self) -> FrozenSet[int]:
        return frozenset(self.members)


class GroupAutomorphism(BaseModel):
    """
    An automorphism stored as the permutation of element indices it induces.

    Attributes:
        images (tuple): images[g] is the index of the image of g
    """
    model_config = ConfigDict(frozen=True)

    images: Tuple[int, ...] = Field(..., description="Image index of each element")

    @classmethod
    def identity(cls, order: int) -> "GroupAutomorphism":
        return cls(images=tuple(range(order)))

    def __call__(self, g: int) -> int:
        return self.images[g]

    def compose(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        """Return self after other."""
        return GroupAutomorphism(images=tuple(self.images[g] for g in other.images))

    def inverse(self) -> "GroupAutomorphism":
        inverse = [0] * len(self.images)
        for g, image in enumerate(self.images):
            inverse[image] = g
        return GroupAutomorphism(images=tuple(inverse))

    def preserves(self, group: FiniteGroup) -> bool:
        images = self.images
        if sorted(images) != list(range(group.order)):
            return False
        return all(
            images[group.table[a][b]] == group.table[images[a]][images[b]]
            for a in range(group.order)
            for b in range(group.order)
        )


class InvariantFunction(BaseModel):
    """
    A bijection f of X with f(g.x) = phi(g).f(x) for all g and x.

    Attributes:
        mapping (tuple): mapping[x] is f(x)
        automorphism (GroupAutomorphism): The automorphism phi
        coset_choices (tuple): Per orbit i, the pair (j, g_ij) used to build f
        induced (tuple): The induced permutation of orbit indices
    """
    model_config = ConfigDict(frozen=True)

    mapping: Permutation = Field(..., description="Images of the points")
    automorphism: GroupAutomorphism = Field(..., description="The automorphism phi")
    coset_choices: Tuple[Tuple[int, int], ...] = Field(..., description="(target orbit, g_ij) per orbit")
    induced: Permutation = Field(..., description="Induced permutation of orbit indices")

    def __call__(self, x: int) -> int:
        return self.mapping[x]


class DecompositionReport(BaseModel):
    """
    Cardinalities and assumption checks for the group of invariant bijections.
    """
    hat_order: int = Field(..., description="Number of invariant bijections")
    normalizer_quotient_product: int = Field(..., description="Product of |N_i / S_i| over orbits")
    identity_induced_permutations: int = Field(..., description="Orbit permutations induced by identity-invariant maps")
    induced_permutations: int = Field(..., description="Orbit permutations induced by all invariant maps")
    s_invariant_automorphisms: int = Field(..., description="Automorphisms sending stabilizers to stabilizers")
    quasi_identical_automorphisms: int = Field(..., description="Automorphisms with g^-1 phi(g) in every S_i")
    inner_automorphisms: int = Field(..., description="Number of inner automorphisms")
    orbit_fixing_automorphisms: int = Field(..., description="Automorphisms admitting an orbit-fixing invariant")
    kernel_automorphisms: int = Field(..., description="Automorphisms inducing only identity-induced permutations")
    assumption_one: bool = Field(..., description="Induced permutations can be chosen homomorphically")
    assumption_one_mode: str = Field(..., description="canonical, search or unsatisfied")
    assumption_two: bool = Field(..., description="The orbit-fixing identity-invariant subgroup has a complement")
    assumption_two_mode: str = Field(..., description="canonical, search or unsatisfied")
    product_identity_holds: bool = Field(..., description="hat order equals the product of the three factors")


def _compose(p: Permutation, q: Permutation) -> Permutation:
    """p after q."""
    return tuple(p[i] for i in q)


def _invert(p: Permutation) -> Permutation:
    inverse = [0] * len(p)
    for i, image in enumerate(p):
        inverse[image] = i
    return tuple(inverse)


def load_cayley_table(path) -> FiniteGroup:
    """
    Load a Cayley table fixture: first line n, then n rows of n indices.

    Args:
        path: Path to the fixture file

    Returns:
        FiniteGroup: The validated group
    """
    path = Path(path)
    rows = [line.split() for line in path.read_text().splitlines() if line.strip()]
    if not rows:
        raise ValueError(f"empty Cayley table fixture: {path}")
    n = int(rows[0][0])
    table = [[int(v) for v in row] for row in rows[1:]]
    if len(table) != n or any(len(row) != n for row in table):
        raise ValueError(f"malformed Cayley table fixture: {path}")
    logger.debug(f"Loaded Cayley table of order {n} from {path}")
    return FiniteGroup(table)


def regular_action(group: FiniteGroup) -> FiniteAction:
    """Left multiplication of a group on itself."""
    return FiniteAction(group, group.order, group.mul)


def trivial_action(group: FiniteGroup, set_size: int) -> FiniteAction:
    """Every element fixes every point."""
    return FiniteAction(group, set_size, lambda g, x: x)


def orbits(action: FiniteAction) -> List[Tuple[int, ...]]:
    """
    Partition the set into orbits, each sorted, listed by smallest point.

    The representative x_0^i of orbit i is its first (smallest) point.
    """
    seen = [False] * action.set_size
    result = []
    for x in range(action.set_size):
        if seen[x]:
            continue
        orbit = sorted({action.table[g][x] for g in range(action.group.order)})
        for y in orbit:
            seen[y] = True
        result.append(tuple(orbit))
    return result


def stabilizer(action: FiniteAction, x: int) -> Subgroup:
    """Stab(x) = {g : g.x = x}."""
    if not 0 <= x < action.set_size:
        raise ValueError(f"point {x} is outside the set")
    return Subgroup.of(action.group, (g for g in range(action.group.order) if action.table[g][x] == x))


def normalizer(group: FiniteGroup, subgroup: Subgroup) -> Subgroup:
    """N(S) = {g : g S g^-1 = S}."""
    members = subgroup.as_set()
    return Subgroup.of(group, (g for g in range(group.order) if group.conjugate(g, members) == members))


def _conjugators(group: FiniteGroup, source: FrozenSet[int], target: FrozenSet[int]) -> List[int]:
    if len(source) != len(target):
        return []
    return [g for g in range(group.order) if group.conjugate(g, source) == target]


def conjugating_element(group: FiniteGroup, first: Subgroup, second: Subgroup) -> Optional[int]:
    """
    Smallest-index g with g S1 g^-1 = S2, or None if the subgroups are not conjugate.

    Args:
        group (FiniteGroup): The ambient group
        first (Subgroup): S1
        second (Subgroup): S2

    Returns:
        Optional[int]: The conjugating element index
    """
    if first.parent is not second.parent:
        raise ValueError("subgroups belong to different groups")
    source, target = first.as_set(), second.as_set()
    if len(source) != len(target):
        return None
    for g in range(group.order):
        if group.conjugate(g, source) == target:
            return g
    return None


def generating_sequence(group: FiniteGroup) -> List[int]:
    """First irredundant generating sequence in index order."""
    gens: List[int] = []
    span = frozenset({0})
    for g in range(1, group.order):
        if g not in span:
            gens.append(g)
            span = group.generated(gens)
    return gens


def _extend_homomorphism(group: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> Optional[List[int]]:
    mapping = [-1] * group.order
    mapping[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, image in zip(gens, images):
            y = group.table[x][g]
            fy = group.table[mapping[x]][image]
            if mapping[y] == -1:
                mapping[y] = fy
                queue.append(y)
            elif mapping[y] != fy:
                return None
    return mapping


def automorphisms(group: FiniteGroup) -> List[GroupAutomorphism]:
    """
    Enumerate Aut(G) by trying order-preserving images of a generating sequence.

    Args:
        group (FiniteGroup): The group

    Returns:
        List[GroupAutomorphism]: All automorphisms, sorted by image tuple (identity first)

    Raises:
        CapacityError: If the candidate count exceeds the limit
    """
    gens = generating_sequence(group)
    orders = [group.element_order(g) for g in range(group.order)]
    candidates = [[h for h in range(group.order) if orders[h] == orders[g]] for g in gens]
    total = math.prod(len(c) for c in candidates)
    if total > AUTOMORPHISM_CANDIDATE_CAP:
        raise CapacityError(f"{total} automorphism candidates exceed the limit {AUTOMORPHISM_CANDIDATE_CAP}")

    found = []
    for images in product(*candidates):
        mapping = _extend_homomorphism(group, gens, images)
        if mapping is not None and len(set(mapping)) == group.order:
            found.append(GroupAutomorphism(images=tuple(mapping)))
    found.sort(key=lambda a: a.images)
    logger.debug(f"Found {len(found)} automorphisms from {total} candidates")
    return found


def inner_automorphisms(group: FiniteGroup) -> List[GroupAutomorphism]:
    """The automorphisms h -> g h g^-1."""
    inner = {
        GroupAutomorphism(images=tuple(group.table[group.table[g][h]][group.inv[g]] for h in range(group.order)))
        for g in range(group.order)
    }
    return sorted(inner, key=lambda a: a.images)


class _OrbitData:
    def __init__(self, action: FiniteAction):
        self.orbits = orbits(action)
        self.reps = [orbit[0] for orbit in self.orbits]
        self.stabilizers = [stabilizer(action, x).as_set() for x in self.reps]
        self.orbit_of = [0] * action.set_size
        for i, orbit in enumerate(self.orbits):
            for x in orbit:
                self.orbit_of[x] = i
        self.all_stabilizers = {stabilizer(action, x).as_set() for x in range(action.set_size)}

    def image_stabilizers(self, phi: GroupAutomorphism) -> List[FrozenSet[int]]:
        return [frozenset(phi.images[s] for s in stab) for stab in self.stabilizers]


def is_equivariant(action: FiniteAction, mapping: Sequence[int], phi: GroupAutomorphism) -> bool:
    """Check f(g.x) = phi(g).f(x) for every g and x."""
    table = action.table
    return all(
        mapping[table[g][x]] == table[phi.images[g]][mapping[x]]
        for g in range(action.group.order)
        for x in range(action.set_size)
    )


def s_invariant_automorphisms(action: FiniteAction) -> List[GroupAutomorphism]:
    """
    Automorphisms sending the stabilizer of every orbit representative onto a
    conjugate of some representative's stabilizer.

    Args:
        action (FiniteAction): The action

    Returns:
        List[GroupAutomorphism]: The subgroup Aut(G)^S, sorted by image tuple
    """
    data = _OrbitData(action)
    result = [
        phi for phi in automorphisms(action.group)
        if all(image in data.all_stabilizers for image in data.image_stabilizers(phi))
    ]
    members = set(result)
    for phi in result:
        for psi in result:
            if phi.compose(psi) not in members:
                raise NotClosedError("stabilizer-preserving automorphisms are not closed")
    return result


def _admissible_targets(action: FiniteAction, data: _OrbitData, phi: GroupAutomorphism) -> List[List[int]]:
    images = data.image_stabilizers(phi)
    group = action.group
    return [
        [j for j, stab in enumerate(data.stabilizers) if _conjugators(group, stab, image)]
        for image in images
    ]


def _target_permutations(admissible: List[List[int]]) -> Iterable[Permutation]:
    t = len(admissible)
    allowed = [set(a) for a in admissible]
    for perm in permutations(range(t)):
        if all(perm[i] in allowed[i] for i in range(t)):
            yield perm


def canonical_coset_choices(action: FiniteAction, phi: GroupAutomorphism,
                            targets: Optional[Sequence[int]] = None) -> Tuple[Tuple[int, int], ...]:
    """
    Canonical (j, g_ij) per orbit: the first admissible target permutation in
    lexicographic order (identity when admissible) and the smallest conjugator.

    Raises:
        NoInvariantError: If phi admits no invariant bijection
    """
    data = _OrbitData(action)
    images = data.image_stabilizers(phi)
    if targets is None:
        targets = next(iter(_target_permutations(_admissible_targets(action, data, phi))), None)
        if targets is None:
            raise NoInvariantError("automorphism does not permute the stabilizer classes of the orbits")
    choices = []
    for i, j in enumerate(targets):
        conjugators = _conjugators(action.group, data.stabilizers[j], images[i])
        if not conjugators:
            raise NoInvariantError(f"phi(S_{i}) is not conjugate to S_{j}")
        choices.append((j, conjugators[0]))
    return tuple(choices)


def _build_mapping(action: FiniteAction, data: _OrbitData, phi: GroupAutomorphism,
                   choices: Sequence[Tuple[int, int]]) -> Optional[List[int]]:
    group, table = action.group, action.table
    mapping = [-1] * action.set_size
    for i, (j, g_ij) in enumerate(choices):
        x0, y0 = data.reps[i], data.reps[j]
        for h in range(group.order):
            x = table[h][x0]
            y = table[group.table[phi.images[h]][g_ij]][y0]
            if mapping[x] == -1:
                mapping[x] = y
            elif mapping[x] != y:
                return None
    if sorted(mapping) != list(range(action.set_size)):
        return None
    return mapping


def build_phi_invariant(action: FiniteAction, phi: GroupAutomorphism,
                        coset_choices: Optional[Sequence[Tuple[int, int]]] = None) -> InvariantFunction:
    """
    Build the phi-invariant bijection f(g.x_i) = phi(g) g_ij . x_j.

    Args:
        action (FiniteAction): The action
        phi (GroupAutomorphism): The automorphism
        coset_choices: Per orbit i the pair (j, g_ij); canonical choices when omitted

    Returns:
        InvariantFunction: The verified invariant bijection

    Raises:
        NoInvariantError: If phi sends some stabilizer outside the stabilizer classes
        InvariantConstructionError: If the choices do not define an invariant bijection
    """
    data = _OrbitData(action)
    images = data.image_stabilizers(phi)
    if not all(image in data.all_stabilizers for image in images):
        raise NoInvariantError("automorphism sends a stabilizer outside the stabilizer classes")
    if coset_choices is None:
        coset_choices = canonical_coset_choices(action, phi)
    coset_choices = tuple((int(j), int(g)) for j, g in coset_choices)

    t = len(data.orbits)
    if len(coset_choices) != t:
        raise InvariantConstructionError(f"expected {t} coset choices, got {len(coset_choices)}")
    targets = [j for j, _ in coset_choices]
    if sorted(targets) != list(range(t)):
        raise InvariantConstructionError(f"targets {targets} are not a permutation of the orbits")
    for i, (j, g_ij) in enumerate(coset_choices):
        if not 0 <= g_ij < action.group.order:
            raise InvariantConstructionError(f"g_{i}{j}={g_ij} is not a group element")
        if action.group.conjugate(g_ij, data.stabilizers[j]) != images[i]:
            raise InvariantConstructionError(f"g_{i}{j}={g_ij} does not conjugate S_{j} onto phi(S_{i})")

    mapping = _build_mapping(action, data, phi, coset_choices)
    if mapping is None or not is_equivariant(action, mapping, phi):
        raise InvariantConstructionError("coset choices do not yield an invariant bijection")
    return InvariantFunction(
        mapping=tuple(mapping),
        automorphism=phi,
        coset_choices=coset_choices,
        induced=tuple(targets),
    )


def induced_permutation(f: InvariantFunction) -> Permutation:
    """The permutation gamma of orbit indices with f(Orb_i) = Orb_gamma(i)."""
    return f.induced


def _induced_of(data: _OrbitData, mapping: Sequence[int]) -> Permutation:
    return tuple(data.orbit_of[mapping[x]] for x in data.reps)


def invariant_witnesses(action: FiniteAction) -> Dict[Permutation, FrozenSet[GroupAutomorphism]]:
    """
    Every invariant bijection of X with the automorphisms it is invariant for.

    Raises:
        CapacityError: If the set has more than the allowed number of points
    """
    if action.set_size > INVARIANT_SET_CAP:
        raise CapacityError(f"|X| = {action.set_size} exceeds the limit {INVARIANT_SET_CAP}")
    data = _OrbitData(action)
    group = action.group
    witnesses: Dict[Permutation, set] = defaultdict(set)

    for phi in automorphisms(group):
        images = data.image_stabilizers(phi)
        if not all(image in data.all_stabilizers for image in images):
            continue
        # distinct g_ij up to the point g_ij . x_j they move x_j to
        choices_for: Dict[Tuple[int, int], List[int]] = {}
        for i, image in enumerate(images):
            for j, stab in enumerate(data.stabilizers):
                distinct = {}
                for g in _conjugators(group, stab, image):
                    distinct.setdefault(action.table[g][data.reps[j]], g)
                choices_for[(i, j)] = sorted(distinct.values())
        admissible = [[j for j in range(len(data.orbits)) if choices_for[(i, j)]] for i in range(len(images))]
        for targets in _target_permutations(admissible):
            pools = [choices_for[(i, j)] for i, j in enumerate(targets)]
            for selection in product(*pools):
                mapping = _build_mapping(action, data, phi, list(zip(targets, selection)))
                if mapping is not None:
                    witnesses[tuple(mapping)].add(phi)

    return {f: frozenset(ws) for f, ws in witnesses.items()}


def _check_closed(elements: FrozenSet[Permutation]) -> None:
    for f in elements:
        if _invert(f) not in elements:
            raise NotClosedError("invariant bijections are not closed under inversion")
        for h in elements:
            if _compose(f, h) not in elements:
                raise NotClosedError("invariant bijections are not closed under composition")


def enumerate_invariant_group(action: FiniteAction) -> FrozenSet[Permutation]:
    """
    All bijections f of X invariant for some automorphism, verified to form a group.

    Args:
        action (FiniteAction): An action on at most INVARIANT_SET_CAP points

    Returns:
        FrozenSet[Permutation]: The group of invariant bijections
    """
    hat = frozenset(invariant_witnesses(action))
    _check_closed(hat)
    logger.info(f"Enumerated {len(hat)} invariant bijections for {action!r}")
    return hat


def quasi_identical_automorphisms(action: FiniteAction,
                                  candidates: Optional[Sequence[GroupAutomorphism]] = None) -> List[GroupAutomorphism]:
    """Automorphisms phi with g^-1 phi(g) in every representative stabilizer."""
    data = _OrbitData(action)
    group = action.group
    if candidates is None:
        candidates = s_invariant_automorphisms(action)
    return [
        phi for phi in candidates
        if all(
            group.table[group.inv[g]][phi.images[g]] in stab
            for stab in data.stabilizers
            for g in range(group.order)
        )
    ]


def orbit_fixing_automorphisms(action: FiniteAction) -> List[GroupAutomorphism]:
    """Automorphisms sending each representative stabilizer to a conjugate of itself."""
    data = _OrbitData(action)
    return [
        phi for phi in automorphisms(action.group)
        if all(
            _conjugators(action.group, stab, image)
            for stab, image in zip(data.stabilizers, data.image_stabilizers(phi))
        )
    ]


def _permutations_by_automorphism(data: _OrbitData,
                                  witnesses: Dict[Permutation, FrozenSet[GroupAutomorphism]]
                                  ) -> Dict[GroupAutomorphism, FrozenSet[Permutation]]:
    result: Dict[GroupAutomorphism, set] = defaultdict(set)
    for f, ws in witnesses.items():
        gamma = _induced_of(data, f)
        for phi in ws:
            result[phi].add(gamma)
    return {phi: frozenset(perms) for phi, perms in result.items()}


def induced_permutation_sets(action: FiniteAction) -> Tuple[FrozenSet[Permutation], FrozenSet[Permutation]]:
    """
    Orbit permutations induced by identity-invariant bijections and by all
    invariant bijections, in that order.
    """
    data = _OrbitData(action)
    witnesses = invariant_witnesses(action)
    identity = GroupAutomorphism.identity(action.group.order)
    by_identity = frozenset(_induced_of(data, f) for f, ws in witnesses.items() if identity in ws)
    every = frozenset(_induced_of(data, f) for f in witnesses)
    return by_identity, every


def kernel_automorphisms(action: FiniteAction) -> List[GroupAutomorphism]:
    """Stabilizer-preserving automorphisms whose induced permutations are all identity-induced."""
    data = _OrbitData(action)
    witnesses = invariant_witnesses(action)
    by_identity, _ = induced_permutation_sets(action)
    perms = _permutations_by_automorphism(data, witnesses)
    return [
        phi for phi in s_invariant_automorphisms(action)
        if phi in perms and perms[phi] <= by_identity
    ]


def _automorphism_generators(elements: Sequence[GroupAutomorphism]) -> List[GroupAutomorphism]:
    gens: List[GroupAutomorphism] = []
    span = {GroupAutomorphism.identity(len(elements[0].images))}
    for phi in elements:
        if phi in span:
            continue
        gens.append(phi)
        queue = deque(span)
        while queue:
            x = queue.popleft()
            for g in gens:
                y = x.compose(g)
                if y not in span:
                    span.add(y)
                    queue.append(y)
    return gens


def _assumption_one(automorphism_group: Sequence[GroupAutomorphism],
                    perms: Dict[GroupAutomorphism, FrozenSet[Permutation]],
                    quasi: Sequence[GroupAutomorphism], orbit_count: int) -> str:
    identity_perm = tuple(range(orbit_count))
    if not automorphism_group or any(phi not in perms for phi in automorphism_group):
        return "unsatisfied"

    def valid(selection: Dict[GroupAutomorphism, Permutation]) -> bool:
        if any(selection[phi] != identity_perm for phi in quasi):
            return False
        if any(selection[phi] not in perms[phi] for phi in automorphism_group):
            return False
        return all(
            selection[phi.compose(psi)] == _compose(selection[phi], selection[psi])
            for phi in automorphism_group
            for psi in automorphism_group
        )

    canonical = {phi: min(perms[phi]) for phi in automorphism_group}
    if valid(canonical):
        return "canonical"

    gens = _automorphism_generators(automorphism_group)
    pools = [sorted(perms[g]) for g in gens]
    if math.prod(len(p) for p in pools) > AUTOMORPHISM_CANDIDATE_CAP:
        logger.warning("Assumption I search space exceeds the candidate limit")
        return "unsatisfied"
    identity = GroupAutomorphism.identity(len(automorphism_group[0].images))
    for images in product(*pools):
        selection = {identity: identity_perm}
        queue = deque([identity])
        consistent = True
        while queue and consistent:
            x = queue.popleft()
            for g, image in zip(gens, images):
                y = x.compose(g)
                value = _compose(selection[x], image)
                if y not in selection:
                    selection[y] = value
                    queue.append(y)
                elif selection[y] != value:
                    consistent = False
                    break
        if consistent and len(selection) == len(automorphism_group) and valid(selection):
            return "search"
    return "unsatisfied"


def _closure(elements: Iterable[Permutation], size: int) -> FrozenSet[Permutation]:
    gens = list(elements)
    seen = {tuple(range(size))}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _compose(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _is_complement(candidate: FrozenSet[Permutation], normal: FrozenSet[Permutation],
                   hat: FrozenSet[Permutation], identity: Permutation) -> bool:
    if len(candidate) * len(normal) != len(hat) or candidate & normal != {identity}:
        return False
    return all(_compose(f, h) in candidate for f in candidate for h in candidate)


def _assumption_two(action: FiniteAction, data: _OrbitData, hat: FrozenSet[Permutation],
                    normal: FrozenSet[Permutation],
                    perms: Dict[GroupAutomorphism, FrozenSet[Permutation]],
                    automorphism_group: Sequence[GroupAutomorphism]) -> str:
    size = action.set_size
    identity = tuple(range(size))

    canonical = set()
    for phi in automorphism_group:
        for gamma in perms.get(phi, ()):
            choices = canonical_coset_choices(action, phi, targets=gamma)
            mapping = _build_mapping(action, data, phi, choices)
            if mapping is not None:
                canonical.add(tuple(mapping))
    if _is_complement(frozenset(canonical), normal, hat, identity):
        return "canonical"

    def coset(f: Permutation) -> FrozenSet[Permutation]:
        return frozenset(_compose(f, m) for m in normal)

    lifts: List[List[Permutation]] = []
    span = normal
    for f in sorted(hat):
        if f in span:
            continue
        lifts.append(sorted(coset(f)))
        span = _closure([pool[0] for pool in lifts] + list(normal), size)
    if math.prod(len(pool) for pool in lifts) > AUTOMORPHISM_CANDIDATE_CAP:
        logger.warning("Assumption II search space exceeds the candidate limit")
        return "unsatisfied"
    for selection in product(*lifts):
        if _is_complement(_closure(selection, size), normal, hat, identity):
            return "search"
    return "unsatisfied"


def decomposition_report(action: FiniteAction) -> DecompositionReport:
    """
    Compare the order of the invariant-bijection group with the product of its
    normalizer, orbit-permutation and automorphism factors.

    Args:
        action (FiniteAction): An action small enough for enumerate_invariant_group

    Returns:
        DecompositionReport: The factor sizes and assumption checks
    """
    group = action.group
    data = _OrbitData(action)
    witnesses = invariant_witnesses(action)
    hat = frozenset(witnesses)
    _check_closed(hat)

    automorphism_group = s_invariant_automorphisms(action)
    quasi = quasi_identical_automorphisms(action, automorphism_group)
    perms = _permutations_by_automorphism(data, witnesses)
    identity_aut = GroupAutomorphism.identity(group.order)
    orbit_count = len(data.orbits)
    identity_perm = tuple(range(orbit_count))

    by_identity = frozenset(_induced_of(data, f) for f, ws in witnesses.items() if identity_aut in ws)
    every = frozenset(_induced_of(data, f) for f in witnesses)
    normal = frozenset(
        f for f, ws in witnesses.items()
        if identity_aut in ws and _induced_of(data, f) == identity_perm
    )

    quotient_product = 1
    for rep, stab in zip(data.reps, data.stabilizers):
        quotient_product *= normalizer(group, stabilizer(action, rep)).order // len(stab)

    kernel = [phi for phi in automorphism_group if phi in perms and perms[phi] <= by_identity]
    outer_factor = len(automorphism_group) // len(quasi) if quasi else 0
    identity_holds = (
        bool(quasi)
        and len(automorphism_group) % len(quasi) == 0
        and len(hat) == quotient_product * len(by_identity) * outer_factor
    )

    mode_one = _assumption_one(automorphism_group, perms, quasi, orbit_count)
    mode_two = _assumption_two(action, data, hat, normal, perms, automorphism_group)

    report = DecompositionReport(
        hat_order=len(hat),
        normalizer_quotient_product=quotient_product,
        identity_induced_permutations=len(by_identity),
        induced_permutations=len(every),
        s_invariant_automorphisms=len(automorphism_group),
        quasi_identical_automorphisms=len(quasi),
        inner_automorphisms=len(inner_automorphisms(group)),
        orbit_fixing_automorphisms=len(orbit_fixing_automorphisms(action)),
        kernel_automorphisms=len(kernel),
        assumption_one=mode_one != "unsatisfied",
        assumption_one_mode=mode_one,
        assumption_two=mode_two != "unsatisfied",
        assumption_two_mode=mode_two,
        product_identity_holds=identity_holds,
    )
    logger.info(f"Decomposition report for {action!r}: {report.model_dump()}")
    return report
