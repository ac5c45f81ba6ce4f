"""DOT renderings of trellis diagrams and canonical realizations."""

from __future__ import annotations

import itertools

from .factorize import SetTrellis
from .trellis import Realization

__all__ = ["trellis_dot", "canonical_dot"]


def _res_label(residues: tuple[int, ...]) -> str:
    return "".join(str(v) for v in residues) if residues else "-"


def trellis_dot(r: Realization) -> str:
    """The trellis diagram of a realization, one column per time index.

    Column n repeats column 0 so the tail-biting wrap reads left to right.
    """
    n = r.n
    lines = [
        "digraph trellis {",
        "  rankdir=LR;",
        '  node [shape=circle, fontname="monospace"];',
    ]
    for col in range(n + 1):
        j = col % n
        names = " ".join(
            f'"t{col}_{_res_label(s.residues)}" [label="{_res_label(s.residues)}"];'
            for s in r.state_alphabets[j].elements
        )
        lines.append(f"  {{ rank=same; {names} }}")
    for j in range(n):
        w_from = r.state_alphabets[j].ambient.rank
        w_sym = r.symbol_alphabets[j].rank
        for branch in r.constraint_codes[j].elements:
            s = _res_label(branch.residues[:w_from])
            a = _res_label(branch.residues[w_from : w_from + w_sym])
            s2 = _res_label(branch.residues[w_from + w_sym :])
            lines.append(f'  "t{j}_{s}" -> "t{j + 1}_{s2}" [label="{a}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _atom_cluster(ct: SetTrellis, idx: int) -> list[str]:
    atom = ct.atoms[idx]
    f = atom.fragment
    n = ct.n
    active = set(f.edge_set)
    vertices = set(f.vertex_set)
    symbol_offsets = [0]
    for g in ct.symbol_alphabets:
        symbol_offsets.append(symbol_offsets[-1] + g.rank)
    lines = [
        f"  subgraph cluster_atom{idx} {{",
        f'    label="atom {f.label} (order {atom.granule.order})";',
    ]
    for col in range(n + 1):
        j = col % n
        size = atom.granule.order if j in active else 1
        names = " ".join(f'"a{idx}_t{col}_{c}" [label="{c}"];' for c in range(size))
        lines.append(f"    {{ rank=same; {names} }}")
    edges: list[str] = []
    for j in range(n):
        for c in range(atom.granule.order):
            frm = c if j in active else 0
            dst = c if (j + 1) % n in active else 0
            rep = atom.granule.representatives[c]
            if j in vertices:
                sym = _res_label(rep.residues[symbol_offsets[j] : symbol_offsets[j + 1]])
            else:
                sym = _res_label((0,) * ct.symbol_alphabets[j].rank)
            edge = f'    "a{idx}_t{j}_{frm}" -> "a{idx}_t{j + 1}_{dst}" [label="{sym}"];'
            if edge not in edges:
                edges.append(edge)
    lines.extend(edges)
    lines.append("  }")
    return lines


def canonical_dot(ct: SetTrellis) -> str:
    """One cluster per atomic trellis plus a cluster for the aggregate."""
    n = ct.n
    lines = [
        "digraph canonical {",
        "  rankdir=LR;",
        '  node [shape=circle, fontname="monospace"];',
    ]
    for idx in range(len(ct.atoms)):
        lines.extend(_atom_cluster(ct, idx))

    def state_name(col: int, state: tuple[int, ...]) -> str:
        tag = "_".join(str(c) for c in state) if state else "o"
        return f"g_t{col}_{tag}"

    lines.append("  subgraph cluster_aggregate {")
    lines.append('    label="aggregate";')
    for col in range(n + 1):
        j = col % n
        sizes = [ct.atoms[i].granule.order for i in ct.edge_atoms[j]]
        states = [tuple(t) for t in itertools.product(*(range(s) for s in sizes))]
        names = " ".join(
            f'"{state_name(col, st)}" [label="{"".join(map(str, st)) if st else "0"}"];'
            for st in states
        )
        lines.append(f"    {{ rank=same; {names} }}")
    for j in range(n):
        for frm, sym, dst in sorted(ct.branch_sets[j]):
            lines.append(
                f'    "{state_name(j, frm)}" -> "{state_name(j + 1, dst)}" '
                f'[label="{_res_label(sym)}"];'
            )
    lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
