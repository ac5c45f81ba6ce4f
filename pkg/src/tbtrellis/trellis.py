"""Tail-biting trellis realizations and exact computation of their behaviors.

A length-n realization is a cyclic arrangement of symbol alphabets A_j, state
alphabets S_j, and constraint codes C_j <= S_j x A_j x S_{j+1} (indices mod n).
State alphabets are materialized subgroups of a coordinate product, so that a
reduced realization can carry a proper subgroup (e.g. {0,2} inside Z4) without
relabeling states.

Trajectory coordinate layout (fixed, relied on by serialization): all symbol
blocks for j = 0..n-1 first, then all state blocks for j = 0..n-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .abelian import (
    GroupElement,
    ProductGroup,
    Subgroup,
    concat_groups,
    project,
)
from .errors import AmbientMismatchError, InternalInvariantError

__all__ = [
    "Realization",
    "BehaviorBundle",
    "universe_order",
    "compute_behavior",
    "is_state_trim",
    "is_branch_trim",
    "is_reduced",
    "reduce_realization",
]


@dataclass(frozen=True)
class Realization:
    """A tail-biting trellis realization of length n >= 1.

    `constraint_codes[j]` lives in the product of the ambients of
    state_alphabets[j], symbol_alphabets[j], state_alphabets[(j+1) % n].
    """

    symbol_alphabets: tuple[ProductGroup, ...]
    state_alphabets: tuple[Subgroup, ...]
    constraint_codes: tuple[Subgroup, ...]

    def __post_init__(self) -> None:
        n = len(self.symbol_alphabets)
        if n < 1:
            raise ValueError("a realization needs length >= 1")
        if len(self.state_alphabets) != n or len(self.constraint_codes) != n:
            raise ValueError("symbol, state, and constraint lists must share one length")
        for j, code in enumerate(self.constraint_codes):
            expected = (
                self.state_alphabets[j].ambient.moduli
                + self.symbol_alphabets[j].moduli
                + self.state_alphabets[(j + 1) % n].ambient.moduli
            )
            if code.ambient.moduli != expected:
                raise AmbientMismatchError(
                    f"constraint code {j} has ambient {code.ambient.moduli}, "
                    f"expected {expected}"
                )
        for j, code in enumerate(self.constraint_codes):
            w_from = self.state_alphabets[j].ambient.rank
            w_sym = self.symbol_alphabets[j].rank
            from_states = self.state_alphabets[j].member_set
            to_states = self.state_alphabets[(j + 1) % n].member_set
            from_grp = self.state_alphabets[j].ambient
            to_grp = self.state_alphabets[(j + 1) % n].ambient
            for branch in code.elements:
                s = GroupElement(from_grp, branch.residues[:w_from])
                s2 = GroupElement(to_grp, branch.residues[w_from + w_sym :])
                if s not in from_states or s2 not in to_states:
                    raise ValueError(
                        f"constraint code {j} uses a state outside the declared alphabets"
                    )

    @classmethod
    def build(
        cls,
        symbol_alphabets: Sequence[ProductGroup],
        state_alphabets: Sequence[ProductGroup | Subgroup],
        constraint_codes: Sequence[Subgroup],
    ) -> Realization:
        """Convenience constructor: bare product groups become full subgroups."""
        states = tuple(
            s if isinstance(s, Subgroup) else Subgroup.full(s) for s in state_alphabets
        )
        return cls(tuple(symbol_alphabets), states, tuple(constraint_codes))

    @property
    def n(self) -> int:
        return len(self.symbol_alphabets)

    @cached_property
    def trajectory_group(self) -> ProductGroup:
        """Ambient group of trajectories: all symbol blocks, then all state ambients."""
        return concat_groups(
            list(self.symbol_alphabets) + [s.ambient for s in self.state_alphabets]
        )

    @cached_property
    def _symbol_offsets(self) -> tuple[int, ...]:
        offs = [0]
        for a in self.symbol_alphabets:
            offs.append(offs[-1] + a.rank)
        return tuple(offs)

    @cached_property
    def _state_offsets(self) -> tuple[int, ...]:
        offs = [self._symbol_offsets[-1]]
        for s in self.state_alphabets:
            offs.append(offs[-1] + s.ambient.rank)
        return tuple(offs)

    def symbol_coords(self, j: int) -> range:
        """Trajectory coordinates of symbol block j."""
        return range(self._symbol_offsets[j], self._symbol_offsets[j + 1])

    def state_coords(self, j: int) -> range:
        """Trajectory coordinates of state block j."""
        return range(self._state_offsets[j], self._state_offsets[j + 1])

    def window_coords(self, j: int) -> tuple[int, ...]:
        """Trajectory coordinates of the branch window S_j x A_j x S_{j+1}, in that order."""
        return (
            tuple(self.state_coords(j))
            + tuple(self.symbol_coords(j))
            + tuple(self.state_coords((j + 1) % self.n))
        )

    @cached_property
    def state_product_order(self) -> int:
        """|S| = product of the declared state alphabet orders."""
        out = 1
        for s in self.state_alphabets:
            out *= s.order
        return out


def universe_order(r: Realization) -> int:
    """|U| = product of the constraint code orders."""
    out = 1
    for c in r.constraint_codes:
        out *= c.order
    return out


@dataclass(frozen=True)
class BehaviorBundle:
    """The computed behavior of a realization, in all three presentations."""

    realization: Realization
    universe_order: int
    extended: Subgroup  # subgroup of S x A x S, elements (s, a, s)
    behavior: Subgroup  # subgroup of A x S
    code: Subgroup  # subgroup of A

    @property
    def n(self) -> int:
        return self.realization.n


def compute_behavior(r: Realization) -> BehaviorBundle:
    """Compute the behavior by composing constraint relations around the cycle.

    Partial paths (s_0, a_0, s_1, ..., a_{k-1}, s_k) are extended one constraint
    at a time, so the full configuration universe is never materialized; the
    cycle closes by matching s_n = s_0.
    """
    n = r.n
    state_widths = [s.ambient.rank for s in r.state_alphabets]
    symbol_widths = [a.rank for a in r.symbol_alphabets]

    paths: list[tuple[int, ...]] = [b.residues for b in r.constraint_codes[0].elements]
    for j in range(1, n):
        w = state_widths[j]
        by_from: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        for b in r.constraint_codes[j].elements:
            by_from.setdefault(b.residues[:w], []).append(b.residues[w:])
        extended: list[tuple[int, ...]] = []
        for p in paths:
            tail = p[len(p) - w :]
            for rest in by_from.get(tail, ()):
                extended.append(p + rest)
        paths = extended

    w0 = state_widths[0]
    trajectories: list[tuple[int, ...]] = []
    for p in paths:
        if p[:w0] != p[len(p) - w0 :]:
            continue
        # split path into per-stage blocks and reassemble as (a_0..a_{n-1}, s_0..s_{n-1})
        symbols: list[int] = []
        states: list[int] = []
        pos = 0
        for j in range(n):
            states.extend(p[pos : pos + state_widths[j]])
            pos += state_widths[j]
            symbols.extend(p[pos : pos + symbol_widths[j]])
            pos += symbol_widths[j]
        trajectories.append(tuple(symbols) + tuple(states))

    tg = r.trajectory_group
    behavior = Subgroup.from_elements(tg, (GroupElement(tg, t) for t in trajectories))

    state_rank = sum(state_widths)
    symbol_rank = sum(symbol_widths)
    config_group = concat_groups(
        [s.ambient for s in r.state_alphabets]
        + list(r.symbol_alphabets)
        + [s.ambient for s in r.state_alphabets]
    )
    extended_elems = (
        GroupElement(config_group, t[symbol_rank:] + t[:symbol_rank] + t[symbol_rank:])
        for t in trajectories
    )
    extended_sub = Subgroup.from_elements(config_group, extended_elems)
    if extended_sub.order != behavior.order:
        raise InternalInvariantError("extended behavior and behavior differ in size")

    code = project(behavior, range(symbol_rank))
    return BehaviorBundle(r, universe_order(r), extended_sub, behavior, code)


def is_state_trim(r: Realization, bundle: BehaviorBundle) -> list[bool]:
    """Per-j: does the behavior reach every declared state of S_j?"""
    return [
        project(bundle.behavior, r.state_coords(j)).order == r.state_alphabets[j].order
        for j in range(r.n)
    ]


def is_branch_trim(r: Realization, bundle: BehaviorBundle) -> list[bool]:
    """Per-j: does the behavior use every branch of C_j?"""
    return [
        project(bundle.behavior, r.window_coords(j)).member_set
        == r.constraint_codes[j].member_set
        for j in range(r.n)
    ]


def is_reduced(r: Realization, bundle: BehaviorBundle) -> bool:
    return all(is_state_trim(r, bundle)) and all(is_branch_trim(r, bundle))


def reduce_realization(r: Realization, bundle: BehaviorBundle | None = None) -> Realization:
    """Trim state alphabets and constraint codes to what the behavior uses.

    The trajectory set is preserved exactly (states keep their residues);
    the operation is idempotent.
    """
    if bundle is None:
        bundle = compute_behavior(r)
    states = tuple(project(bundle.behavior, r.state_coords(j)) for j in range(r.n))
    codes = tuple(project(bundle.behavior, r.window_coords(j)) for j in range(r.n))
    return Realization(r.symbol_alphabets, states, codes)
