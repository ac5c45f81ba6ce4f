"""Exact arithmetic for finite abelian groups presented as products of cyclic groups.

Groups are products Z_{m_0} x ... x Z_{m_{k-1}}; elements are residue vectors.
Subgroups are materialized as explicit, lexicographically ordered element sets,
which keeps every operation exact at desk scale (ambient order up to ~10^6).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .errors import AmbientMismatchError, MalformedElementError, NotASubgroupError

__all__ = [
    "ProductGroup",
    "GroupElement",
    "Subgroup",
    "QuotientView",
    "concat_groups",
    "close",
    "quotient",
    "invariant_factors",
    "project",
    "cross_section",
    "subgroup_sum",
    "contains",
]


@dataclass(frozen=True)
class ProductGroup:
    """A finite abelian group given as an ordered product of cyclic groups.

    A modulus of 1 encodes a trivial coordinate; it is kept (not deleted) so
    that index arithmetic stays uniform across callers.
    """

    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        for m in self.moduli:
            if not isinstance(m, int) or m < 1:
                raise MalformedElementError(f"modulus {m!r} must be an integer >= 1")

    @cached_property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank(self) -> int:
        """Number of coordinates (including trivial ones)."""
        return len(self.moduli)

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * len(self.moduli))

    def element(self, residues: Sequence[int]) -> GroupElement:
        """Build an element, validating length and residue ranges."""
        res = tuple(int(r) for r in residues)
        if len(res) != len(self.moduli):
            raise MalformedElementError(
                f"residue vector has length {len(res)}, expected {len(self.moduli)}"
            )
        for r, m in zip(res, self.moduli):
            if not 0 <= r < m:
                raise MalformedElementError(f"residue {r} out of range for modulus {m}")
        return GroupElement(self, res)

    def elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic order."""
        for res in itertools.product(*(range(m) for m in self.moduli)):
            yield GroupElement(self, res)

    def restrict(self, coords: Sequence[int]) -> ProductGroup:
        """The product of the selected coordinates, in the given order."""
        for i in coords:
            if not 0 <= i < len(self.moduli):
                raise MalformedElementError(f"coordinate index {i} out of range")
        return ProductGroup(tuple(self.moduli[i] for i in coords))


def concat_groups(groups: Iterable[ProductGroup]) -> ProductGroup:
    """The direct product of the given groups, coordinates concatenated in order."""
    moduli: list[int] = []
    for g in groups:
        moduli.extend(g.moduli)
    return ProductGroup(tuple(moduli))


@dataclass(frozen=True, eq=False, slots=True)
class GroupElement:
    """An element of a ProductGroup: a residue vector, coordinatewise mod m_i."""

    group: ProductGroup
    residues: tuple[int, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.residues == other.residues and self.group.moduli == other.group.moduli

    def __hash__(self) -> int:
        return hash(self.residues)

    def __add__(self, other: GroupElement) -> GroupElement:
        if self.group.moduli != other.group.moduli:
            raise AmbientMismatchError("cannot add elements of different groups")
        return GroupElement(
            self.group,
            tuple((a + b) % m for a, b, m in zip(self.residues, other.residues, self.group.moduli)),
        )

    def __neg__(self) -> GroupElement:
        return GroupElement(
            self.group, tuple((-a) % m for a, m in zip(self.residues, self.group.moduli))
        )

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def scale(self, k: int) -> GroupElement:
        """The k-fold sum of this element (k may be any integer)."""
        return GroupElement(
            self.group, tuple((k * a) % m for a, m in zip(self.residues, self.group.moduli))
        )

    @property
    def is_zero(self) -> bool:
        return all(r == 0 for r in self.residues)

    def __repr__(self) -> str:
        return f"({','.join(str(r) for r in self.residues)})"


@dataclass(frozen=True)
class Subgroup:
    """An explicitly materialized subgroup, elements in canonical (lexicographic) order.

    Construction via the module operations guarantees closure; `from_elements`
    sorts and deduplicates but does not re-verify closure.
    """

    ambient: ProductGroup
    elements: tuple[GroupElement, ...]

    @classmethod
    def from_elements(cls, ambient: ProductGroup, elems: Iterable[GroupElement]) -> Subgroup:
        unique = {e.residues: e for e in elems}
        ordered = tuple(unique[r] for r in sorted(unique))
        return cls(ambient, ordered)

    @classmethod
    def trivial(cls, ambient: ProductGroup) -> Subgroup:
        return cls(ambient, (ambient.zero(),))

    @classmethod
    def full(cls, ambient: ProductGroup) -> Subgroup:
        return cls(ambient, tuple(ambient.elements()))

    @cached_property
    def member_set(self) -> frozenset[GroupElement]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def __contains__(self, elem: GroupElement) -> bool:
        return elem in self.member_set

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class QuotientView:
    """A subgroup partitioned into cosets of a normal subgroup.

    Cosets are ordered by their representatives; each representative is the
    lexicographically minimal element of its coset, so the zero coset comes
    first and its representative is zero.
    """

    group: Subgroup
    normal_sub: Subgroup
    cosets: tuple[tuple[GroupElement, ...], ...]
    representatives: tuple[GroupElement, ...]

    @property
    def order(self) -> int:
        return len(self.cosets)

    @property
    def is_trivial(self) -> bool:
        return len(self.cosets) == 1

    @cached_property
    def _index_of(self) -> dict[GroupElement, int]:
        table: dict[GroupElement, int] = {}
        for i, coset in enumerate(self.cosets):
            for e in coset:
                table[e] = i
        return table

    def coset_index(self, elem: GroupElement) -> int:
        """Index of the coset containing `elem` (raises KeyError if not in the group)."""
        return self._index_of[elem]

    def representative_of(self, elem: GroupElement) -> GroupElement:
        return self.representatives[self.coset_index(elem)]

    def add_indices(self, i: int, j: int) -> int:
        """Coset addition on indices."""
        return self.coset_index(self.representatives[i] + self.representatives[j])

    def invariant_factors(self) -> list[int]:
        """Invariant factors of the quotient group."""
        normal = self.normal_sub.member_set

        def annihilated(m: int) -> int:
            return sum(1 for rep in self.representatives if rep.scale(m) in normal)

        return _invariant_factors_from_census(len(self.cosets), annihilated)


def close(ambient: ProductGroup, generators: Iterable[GroupElement]) -> Subgroup:
    """Smallest subgroup of `ambient` containing the generators.

    Breadth-first saturation from zero; in a finite group, closure under
    addition alone yields inverses as well.
    """
    gens: list[GroupElement] = []
    seen_gens: set[GroupElement] = set()
    for g in generators:
        if g.group.moduli != ambient.moduli:
            raise MalformedElementError("generator does not belong to the ambient group")
        ambient.element(g.residues)
        if g not in seen_gens and not g.is_zero:
            seen_gens.add(g)
            gens.append(g)
    zero = ambient.zero()
    found: set[GroupElement] = {zero}
    frontier: list[GroupElement] = [zero]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x + g
            if y not in found:
                found.add(y)
                frontier.append(y)
    return Subgroup.from_elements(ambient, found)


def quotient(group: Subgroup, normal_sub: Subgroup) -> QuotientView:
    """The full coset partition of `group` by `normal_sub`."""
    if group.ambient.moduli != normal_sub.ambient.moduli:
        raise AmbientMismatchError("quotient requires a common ambient group")
    if not normal_sub.member_set <= group.member_set:
        raise NotASubgroupError("normal_sub is not a subgroup of group")
    assigned: set[GroupElement] = set()
    cosets: list[tuple[GroupElement, ...]] = []
    reps: list[GroupElement] = []
    for x in group.elements:  # lexicographic order: first unassigned is its coset's minimum
        if x in assigned:
            continue
        coset = sorted((x + h for h in normal_sub.elements), key=lambda e: e.residues)
        assigned.update(coset)
        cosets.append(tuple(coset))
        reps.append(coset[0])
    return QuotientView(group, normal_sub, tuple(cosets), tuple(reps))


def invariant_factors(g: Subgroup) -> list[int]:
    """Invariant-factor decomposition d_1 | d_2 | ... with product |g|.

    Computed by an element-order census: counting elements annihilated by each
    prime power determines the p-primary partitions exactly.
    """

    def annihilated(m: int) -> int:
        return sum(1 for x in g.elements if x.scale(m).is_zero)

    return _invariant_factors_from_census(g.order, annihilated)


def _invariant_factors_from_census(order: int, annihilated: Callable[[int], int]) -> list[int]:
    if order == 1:
        return []
    partitions: dict[int, list[int]] = {}
    for p in _prime_factors(order):
        # a_k = #{x : p^k x = 0} = p^(sum_i min(lambda_i, k)); successive ratios
        # give the conjugate partition, which we conjugate back.
        exponents: list[int] = []
        prev = 1
        k = 1
        while True:
            cur = annihilated(p**k)
            step = 0
            ratio = cur // prev
            while ratio > 1:
                ratio //= p
                step += 1
            if step == 0:
                break
            exponents.append(step)
            prev = cur
            k += 1
        if exponents:
            lam = [sum(1 for e in exponents if e >= i) for i in range(1, exponents[0] + 1)]
            partitions[p] = lam  # descending
    width = max(len(lam) for lam in partitions.values())
    descending: list[int] = []
    for i in range(width):
        d = 1
        for p, lam in partitions.items():
            if i < len(lam):
                d *= p ** lam[i]
        descending.append(d)
    return list(reversed(descending))


def _prime_factors(n: int) -> list[int]:
    primes: list[int] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    return primes


def project(g: Subgroup, coords: Sequence[int]) -> Subgroup:
    """Image of `g` under selection of the given coordinates, in the given order."""
    restricted = g.ambient.restrict(coords)
    images = {tuple(x.residues[i] for i in coords) for x in g.elements}
    return Subgroup.from_elements(restricted, (GroupElement(restricted, r) for r in images))


def cross_section(g: Subgroup, coords: Sequence[int]) -> Subgroup:
    """Projection onto `coords` of the elements of `g` that vanish off `coords`."""
    restricted = g.ambient.restrict(coords)
    keep = set(coords)
    others = [i for i in range(g.ambient.rank) if i not in keep]
    images = {
        tuple(x.residues[i] for i in coords)
        for x in g.elements
        if all(x.residues[i] == 0 for i in others)
    }
    return Subgroup.from_elements(restricted, (GroupElement(restricted, r) for r in images))


def subgroup_sum(h1: Subgroup, h2: Subgroup) -> Subgroup:
    """The subgroup {x + y : x in h1, y in h2} of the common ambient group."""
    if h1.ambient.moduli != h2.ambient.moduli:
        raise AmbientMismatchError("subgroup_sum requires a common ambient group")
    if h1.is_trivial:
        return h2
    if h2.is_trivial:
        return h1
    if h1.order > h2.order:
        h1, h2 = h2, h1
    acc: set[GroupElement] = set(h2.member_set)
    for x in h1.elements:
        if x in acc:
            continue
        # acc is a subgroup here, so acc + <x> is the union of cosets k*x + acc
        multiples: list[GroupElement] = []
        y = x
        while y not in acc:
            multiples.append(y)
            y = y + x
        fresh: set[GroupElement] = set()
        for m in multiples:
            fresh.update(m + a for a in acc)
        acc |= fresh
    return Subgroup.from_elements(h1.ambient, acc)


def contains(g: Subgroup, h: Subgroup) -> bool:
    """True iff h is a subset (hence subgroup) of g."""
    if g.ambient.moduli != h.ambient.moduli:
        raise AmbientMismatchError("contains requires a common ambient group")
    return h.member_set <= g.member_set
