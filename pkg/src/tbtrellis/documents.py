"""JSON realization documents and machine-readable analysis reports.

A document declares moduli lists for each symbol and state alphabet plus
generator triples (flat residue vectors over S_j x A_j x S_{j+1}) for each
constraint code.  Reports are plain dicts with a fixed key order so identical
inputs serialize byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .abelian import (
    ProductGroup,
    Subgroup,
    close,
    concat_groups,
    invariant_factors,
)
from .control import control_report, lemma_quotients
from .errors import MalformedElementError
from .factorize import (
    canonical_can_be_homomorphic,
    controller_canonical,
    first_state_chain,
    granule_products,
    is_homomorphic,
    size_formulas,
    technical_lemma_check,
)
from .granules import GranuleTable, nondynamical_alphabet
from .trellis import BehaviorBundle, Realization, is_branch_trim, is_state_trim

__all__ = ["DocumentError", "RealizationDocument", "load_document", "build_analysis_report"]


class DocumentError(ValueError):
    """The input document is malformed or violates the realization invariants."""


@dataclass(frozen=True)
class RealizationDocument:
    """Parsed form of an input document."""

    length: int
    symbol_moduli: tuple[tuple[int, ...], ...]
    state_moduli: tuple[tuple[int, ...], ...]
    constraint_generators: tuple[tuple[tuple[int, ...], ...], ...]

    def to_realization(self) -> Realization:
        symbols = tuple(ProductGroup(m) for m in self.symbol_moduli)
        states = tuple(ProductGroup(m) for m in self.state_moduli)
        n = self.length
        codes = []
        for j in range(n):
            ambient = concat_groups([states[j], symbols[j], states[(j + 1) % n]])
            try:
                gens = [ambient.element(vec) for vec in self.constraint_generators[j]]
            except MalformedElementError as exc:
                raise DocumentError(f"constraint generator at index {j}: {exc}") from exc
            codes.append(close(ambient, gens))
        try:
            return Realization.build(symbols, states, codes)
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc


def _moduli_list(raw: Any, what: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or not all(isinstance(m, int) and m >= 1 for m in raw):
        raise DocumentError(f"{what} must be a list of integers >= 1, got {raw!r}")
    return tuple(raw)


def parse_document(data: Any) -> RealizationDocument:
    if not isinstance(data, dict):
        raise DocumentError("document root must be a JSON object")
    try:
        n = data["length"]
        symbols = data["symbol_alphabets"]
        states = data["state_alphabets"]
        gens = data["constraint_generators"]
    except KeyError as exc:
        raise DocumentError(f"missing document field {exc.args[0]!r}") from exc
    if not isinstance(n, int) or n < 1:
        raise DocumentError(f"length must be an integer >= 1, got {n!r}")
    for name, block in (("symbol_alphabets", symbols), ("state_alphabets", states),
                        ("constraint_generators", gens)):
        if not isinstance(block, list) or len(block) != n:
            raise DocumentError(f"{name} must be a list of length {n}")
    symbol_moduli = tuple(_moduli_list(m, f"symbol_alphabets[{j}]") for j, m in enumerate(symbols))
    state_moduli = tuple(_moduli_list(m, f"state_alphabets[{j}]") for j, m in enumerate(states))
    generators = []
    for j, block in enumerate(gens):
        if not isinstance(block, list):
            raise DocumentError(f"constraint_generators[{j}] must be a list of residue vectors")
        vectors = []
        for vec in block:
            if not isinstance(vec, list) or not all(isinstance(v, int) for v in vec):
                raise DocumentError(
                    f"constraint_generators[{j}] entries must be integer vectors"
                )
            vectors.append(tuple(vec))
        generators.append(tuple(vectors))
    return RealizationDocument(n, symbol_moduli, state_moduli, tuple(generators))


def load_document(path: str | Path) -> RealizationDocument:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON in {path}: {exc}") from exc
    return parse_document(data)


def _factors(sub: Subgroup) -> list[int]:
    return invariant_factors(sub)


def build_analysis_report(
    r: Realization,
    bundle: BehaviorBundle,
    table: GranuleTable,
    reduced_applied: bool,
) -> dict[str, Any]:
    """Assemble the full analysis of a reduced realization as a JSON-ready dict."""
    n = r.n
    report = control_report(r, bundle, table)
    fact = granule_products(table)
    canonical = controller_canonical(table)

    granule_rows = []
    for f in table.fragments:
        rec = table.records[f]
        granule_rows.append(
            {
                "fragment": f.label,
                "level": f.level,
                "subbehavior_order": rec.sub.order,
                "order": rec.granule.order,
                "invariant_factors": rec.granule.invariant_factors(),
            }
        )

    chains = []
    if n >= 2:
        for j in range(n):
            chain = first_state_chain(bundle, table, j)
            chains.append(
                {
                    "j": j,
                    "state_orders": list(chain.state_orders),
                    "window_orders": list(chain.window_orders),
                    "granule_orders": list(chain.granule_orders),
                    "ok": chain.ok,
                }
            )

    return {
        "length": n,
        "reduced_applied": reduced_applied,
        "orders": {
            "universe": bundle.universe_order,
            "extended_behavior": bundle.extended.order,
            "behavior": bundle.behavior.order,
            "code": bundle.code.order,
            "state_product": r.state_product_order,
            "state_alphabets": [s.order for s in r.state_alphabets],
            "constraint_codes": [c.order for c in r.constraint_codes],
            "nondynamical_alphabets": [nondynamical_alphabet(r, j).order for j in range(n)],
        },
        "behavior_invariant_factors": _factors(bundle.behavior),
        "trim": {
            "state": is_state_trim(r, bundle),
            "branch": is_branch_trim(r, bundle),
        },
        "controllability": {
            "controllable": report.controllable,
            "constraint_index": report.ratio[0],
            "state_product": report.ratio[1],
            "syndrome_image_order": report.syndrome_image.order,
            "top_granule_order": report.top_granule.order,
            "top_granule_invariant_factors": report.top_granule.invariant_factors(),
            "controllable_behavior_order": report.controllable_sub.order,
            "component_count": report.component_count,
        },
        "granules": granule_rows,
        "chain": {
            "orders": [sub.order for sub in table.chain],
            "factor_orders": [q.order for q in table.factors],
        },
        "factorization": {
            "p_c": fact.p_c,
            "p": fact.p,
            "controllable_order": fact.controllable_order,
            "behavior_order": fact.behavior_order,
            "holds_c": fact.holds_c,
            "holds": fact.holds,
        },
        "size_formulas": [
            {
                "j": c.j,
                "state_order": c.state_order,
                "state_product": c.state_product,
                "code_order": c.code_order,
                "code_product": c.code_product,
                "ok": c.ok,
            }
            for c in size_formulas(table)
        ],
        "lemma_quotients": [
            {
                "j": c.j,
                "state_index": c.state_index,
                "code_index": c.code_index,
                "top_order": c.top_order,
                "state_factors": list(c.state_factors),
                "code_factors": list(c.code_factors),
                "top_factors": list(c.top_factors),
                "ok": c.ok,
            }
            for c in lemma_quotients(r, bundle, table)
        ],
        "technical_lemma": list(technical_lemma_check(bundle, table)),
        "first_state_chains": chains,
        "canonical": {
            "atoms": [
                {
                    "fragment": rec.fragment.label,
                    "level": rec.fragment.level,
                    "order": rec.granule.order,
                    "invariant_factors": rec.granule.invariant_factors(),
                }
                for rec in canonical.atoms
            ],
            "state_sizes": list(canonical.state_sizes),
            "trajectories_match": canonical.trajectory_set == bundle.behavior.member_set,
            "is_homomorphic": is_homomorphic(canonical),
            "homomorphic_possible": canonical_can_be_homomorphic(table),
        },
    }
