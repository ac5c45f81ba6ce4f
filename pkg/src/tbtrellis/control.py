"""Controllability analysis: syndrome image, test, subrealization, components.

A realization is controllable when its constraint codes and the cyclic state
equality constraints are independent, which happens exactly when the image of
the syndrome former (s, a, s') -> s - s' is the whole state product.
"""

from __future__ import annotations

from dataclasses import dataclass

from .abelian import (
    GroupElement,
    QuotientView,
    Subgroup,
    concat_groups,
    project,
    quotient,
    subgroup_sum,
)
from .errors import InternalInvariantError, RequiresReducedError
from .granules import GranuleTable
from .trellis import BehaviorBundle, Realization, is_reduced

__all__ = [
    "ControlReport",
    "LemmaQuotientCheck",
    "syndrome_image",
    "controllability_test",
    "controllable_subrealization",
    "lemma_quotients",
    "component_count",
    "control_report",
]


@dataclass(frozen=True)
class ControlReport:
    """Controllability facts about one realization.

    `ratio` is (|U| / |extended behavior|, |S|); the first entry never exceeds
    the second, with equality exactly in the controllable case.  Fields that
    need the granule table are None when only the bare test was run.
    """

    syndrome_image: Subgroup
    controllable: bool
    ratio: tuple[int, int]
    controllable_sub: Subgroup | None = None
    top_granule: QuotientView | None = None
    component_count: int | None = None


@dataclass(frozen=True)
class LemmaQuotientCheck:
    """Per-time comparison of state/branch quotients against the top granule."""

    j: int
    state_index: int
    code_index: int
    top_order: int
    state_factors: tuple[int, ...]
    code_factors: tuple[int, ...]
    top_factors: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return (
            self.state_index == self.top_order == self.code_index
            and self.state_factors == self.top_factors == self.code_factors
        )


def syndrome_image(r: Realization) -> Subgroup:
    """The image S^c of the syndrome former, generated branch by branch.

    Each branch (s, a, s') of C_j contributes +s on state block j and -s' on
    state block j+1; the image is the sum of the per-constraint images, so the
    configuration universe is never enumerated.
    """
    n = r.n
    ambient = concat_groups([s.ambient for s in r.state_alphabets])
    offsets = [0]
    for s in r.state_alphabets:
        offsets.append(offsets[-1] + s.ambient.rank)
    total = ambient.rank
    image = Subgroup.trivial(ambient)
    for j in range(n):
        w_from = r.state_alphabets[j].ambient.rank
        w_sym = r.symbol_alphabets[j].rank
        k = (j + 1) % n
        moduli = ambient.moduli
        contributions: set[tuple[int, ...]] = set()
        for branch in r.constraint_codes[j].elements:
            res = [0] * total
            for i, v in enumerate(branch.residues[:w_from]):
                pos = offsets[j] + i
                res[pos] = (res[pos] + v) % moduli[pos]
            for i, v in enumerate(branch.residues[w_from + w_sym :]):
                pos = offsets[k] + i
                res[pos] = (res[pos] - v) % moduli[pos]
            contributions.add(tuple(res))
        # the syndrome map is a homomorphism on C_j, so this set is already a subgroup
        per_code = Subgroup.from_elements(
            ambient, (GroupElement(ambient, t) for t in contributions)
        )
        image = subgroup_sum(image, per_code)
    return image


def controllability_test(r: Realization, bundle: BehaviorBundle) -> ControlReport:
    """The size test |U|/|extended| <= |S|, cross-checked against the syndrome image."""
    image = syndrome_image(r)
    index, rem = divmod(bundle.universe_order, bundle.extended.order)
    if rem != 0:
        raise InternalInvariantError("extended behavior order does not divide |U|")
    if index != image.order:
        raise InternalInvariantError(
            f"|U|/|extended| = {index} but syndrome image has order {image.order}"
        )
    state_order = r.state_product_order
    if index > state_order:
        raise InternalInvariantError("constraint index exceeds the state product order")
    verdict = index == state_order
    if verdict != (image.order == state_order):
        raise InternalInvariantError("size test and syndrome image test disagree")
    return ControlReport(image, verdict, (index, state_order))


def controllable_subrealization(
    r: Realization, bundle: BehaviorBundle, table: GranuleTable
) -> Realization:
    """The realization R^c carved out of R by the controllable subbehavior."""
    bc = table.controllable_sub
    states = tuple(project(bc, r.state_coords(j)) for j in range(r.n))
    codes = tuple(project(bc, r.window_coords(j)) for j in range(r.n))
    return Realization(r.symbol_alphabets, states, codes)


def lemma_quotients(
    r: Realization, bundle: BehaviorBundle, table: GranuleTable
) -> tuple[LemmaQuotientCheck, ...]:
    """Per-j state and branch quotients by the controllable subrealization.

    For a reduced realization both quotients are isomorphic to the top granule.
    """
    if not is_reduced(r, bundle):
        raise RequiresReducedError("lemma_quotients requires a reduced realization")
    bc = table.controllable_sub
    top = table.top.granule
    top_factors = tuple(top.invariant_factors())
    checks: list[LemmaQuotientCheck] = []
    for j in range(r.n):
        state_c = project(bc, r.state_coords(j))
        code_c = project(bc, r.window_coords(j))
        state_q = quotient(r.state_alphabets[j], state_c)
        code_q = quotient(r.constraint_codes[j], code_c)
        checks.append(
            LemmaQuotientCheck(
                j=j,
                state_index=state_q.order,
                code_index=code_q.order,
                top_order=top.order,
                state_factors=tuple(state_q.invariant_factors()),
                code_factors=tuple(code_q.invariant_factors()),
                top_factors=top_factors,
            )
        )
    return tuple(checks)


def component_count(r: Realization, bundle: BehaviorBundle) -> int:
    """Connected components of the trellis diagram (states as vertices, branches as edges)."""
    if not is_reduced(r, bundle):
        raise RequiresReducedError("component_count requires a reduced realization")
    parent: dict[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]]] = {}

    def find(v):
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for j in range(r.n):
        for s in r.state_alphabets[j].elements:
            parent[(j, s.residues)] = (j, s.residues)
    for j in range(r.n):
        w_from = r.state_alphabets[j].ambient.rank
        w_sym = r.symbol_alphabets[j].rank
        k = (j + 1) % r.n
        for branch in r.constraint_codes[j].elements:
            union((j, branch.residues[:w_from]), (k, branch.residues[w_from + w_sym :]))
    return len({find(v) for v in parent})


def control_report(
    r: Realization, bundle: BehaviorBundle, table: GranuleTable
) -> ControlReport:
    """The full controllability report for a reduced realization."""
    partial = controllability_test(r, bundle)
    return ControlReport(
        syndrome_image=partial.syndrome_image,
        controllable=partial.controllable,
        ratio=partial.ratio,
        controllable_sub=table.controllable_sub,
        top_granule=table.top.granule,
        component_count=component_count(r, bundle),
    )
