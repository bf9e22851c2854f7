"""Graphviz DOT output for Hasse diagrams and weighted double skeletons."""
from __future__ import annotations

from .lattice import FiniteLattice, Poset
from .wds import WeightedDoubleSkeleton


def _levels(p: Poset) -> dict[int, list[int]]:
    h = p.depth
    levels: dict[int, list[int]] = {}
    for x in range(p.n):
        levels.setdefault(h[x], []).append(x)
    return levels


def _hasse(p: Poset, name: str, edge_label=None, node_label=None) -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=circle];"]
    for x in range(p.n):
        label = node_label(x) if node_label else str(x)
        lines.append(f'  {x} [label="{label}"];')
    for h, xs in sorted(_levels(p).items()):
        lines.append("  { rank=same; " + " ".join(f"{x};" for x in xs) + " }")
    for a, b in p.covers:
        attr = f' [label="{edge_label(a, b)}"]' if edge_label else ""
        lines.append(f"  {a} -> {b}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_dot(L: FiniteLattice, name: str | None = None) -> str:
    return _hasse(L.poset, name or L.name or "L")


def wds_dot(s: WeightedDoubleSkeleton, name: str = "P") -> str:
    """The carrier poset with weighted cover edges; endpoints of each block noted on the nodes."""
    roles: dict[int, list[str]] = {}
    for a in range(s.K.n):
        roles.setdefault(s.eta0[a], []).append(f"0_{a}")
        roles.setdefault(s.eta1[a], []).append(f"1_{a}")

    def node_label(x: int) -> str:
        return f"{x}\\n" + " ".join(roles[x]) if x in roles else str(x)

    return _hasse(s.P, name, edge_label=lambda a, b: s.w[(a, b)], node_label=node_label)
