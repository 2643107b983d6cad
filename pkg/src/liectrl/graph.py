"""Coupling graphs and the connectivity notions for tensor-product structures.

Connectivity is decided on the closure basis, not on the generators: the
algebra may contain straddling elements that no generator shows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .closure import AlgebraBasis, RationalEchelon
from .pauli import PauliExpr, encode_letters, support_of
from .system import ControlSystem, TensorStructure

PARTITION_CAP = 2**12


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class CouplingGraph:
    vertices: tuple[int, ...]
    # (a, b) with a < b -> Pauli labels of the drift terms on that pair
    edges: dict = field(default_factory=dict)

    def multiplicity(self, a: int, b: int) -> int:
        return len(self.edges.get((min(a, b), max(a, b)), ()))

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for (a, b), terms in self.edges.items():
            for t in terms:
                g.add_edge(a, b, term=t)
        return g

    def to_dot(self, name: str = "coupling") -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  {v} [label="{v + 1}"];' for v in self.vertices]
        for (a, b), terms in sorted(self.edges.items()):
            lines.append(f'  {a} -- {b} [label="{" + ".join(terms)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ConnectivityResult:
    value: bool
    partial: bool = False
    # blocks on one side of the first cut that no algebra element crosses
    failing_cut: tuple | None = None

    def __bool__(self) -> bool:
        return self.value


def _block_of(structure: TensorStructure, n: int) -> list[int]:
    owner = [0] * n
    for j, qs in enumerate(structure.qubit_blocks()):
        for q in qs:
            owner[q] = j
    return owner


def _blocks_touched(code: int, n: int, owner: Sequence[int]) -> frozenset[int]:
    return frozenset(owner[q] for q in support_of(code, n))


def block_order(e: PauliExpr, structure: TensorStructure) -> int:
    """Largest number of tensor factors any term acts on."""
    owner = _block_of(structure, e.n)
    return max((len(_blocks_touched(c, e.n, owner)) for c in e.terms if c), default=0)


def coupling_graph(system: ControlSystem) -> CouplingGraph:
    st = system.structure
    owner = _block_of(st, system.n)
    for c in system.controls:
        if block_order(c, st) > 1:
            raise GraphError(f"control {c.to_text()} is not local; no coupling graph")
    if block_order(system.drift, st) > 2:
        raise GraphError(f"drift has order {block_order(system.drift, st)} > 2; no coupling graph")
    edges: dict[tuple[int, int], list[str]] = {}
    for code in system.drift.terms:
        touched = sorted(_blocks_touched(code, system.n, owner))
        if len(touched) == 2:
            edges.setdefault(tuple(touched), []).append(encode_letters(code, system.n))
    return CouplingGraph(tuple(range(len(st))), {k: tuple(v) for k, v in edges.items()})


def is_connected_graph(g: CouplingGraph) -> bool:
    if not g.vertices:
        return True
    return nx.is_connected(g.to_networkx())


def _straddling_masks(elements: Iterable[PauliExpr], n: int, owner: Sequence[int]) -> set[frozenset]:
    """Distinct block sets touched by any term of any element."""
    seen = set()
    for e in elements:
        for code in e.terms:
            if code:
                seen.add(_blocks_touched(code, n, owner))
    return {s for s in seen if len(s) >= 2}


def _elements(basis: AlgebraBasis) -> list[PauliExpr]:
    if basis.dense:
        raise GraphError("connectivity needs an exact (Pauli) closure basis")
    return list(basis.elements)


def weak_connectivity(
    system: ControlSystem, basis: AlgebraBasis, structure: TensorStructure | None = None
) -> ConnectivityResult:
    """Every 2-block partition of the factors is crossed by some algebra element."""
    st = structure or system.structure
    m = len(st)
    if m < 2:
        return ConnectivityResult(True)
    owner = _block_of(st, system.n)
    touched = _straddling_masks(_elements(basis), system.n, owner)

    def crossed(side: frozenset) -> bool:
        return any(s & side and s - side for s in touched)

    if 2 ** (m - 1) - 1 <= PARTITION_CAP:
        # fix block 0 on the left to list each unordered partition once
        for r in range(0, m - 1):
            for rest in combinations(range(1, m), r):
                side = frozenset((0, *rest))
                if not crossed(side):
                    return ConnectivityResult(False, failing_cut=tuple(sorted(side)))
        return ConnectivityResult(True)
    for j in range(1, m):
        side = frozenset(range(j))
        if not crossed(side):
            return ConnectivityResult(False, partial=True, failing_cut=tuple(sorted(side)))
    return ConnectivityResult(True, partial=True)


def is_weakly_connected(system: ControlSystem, basis: AlgebraBasis, structure=None) -> bool:
    return weak_connectivity(system, basis, structure).value


def general_connectivity(system: ControlSystem, basis: AlgebraBasis) -> ConnectivityResult:
    """Weak connectivity on the prime refinement of the declared structure."""
    return weak_connectivity(system, basis, system.structure.prime_refinement())


def is_connected_general(system: ControlSystem, basis: AlgebraBasis) -> bool:
    return general_connectivity(system, basis).value


def _restricted_rows(elements: Sequence[PauliExpr], n: int, inside: set[int]) -> list[dict[int, object]]:
    """Exact basis of ``span(elements) ∩ span{P : supp P within inside}``.

    Outside coordinates get small keys and inside coordinates are shifted
    past them, so in reduced echelon form the rows with an inside pivot have
    no outside entries at all.
    """
    shift = 4**n
    ech = RationalEchelon()
    for e in elements:
        v = {}
        for code, c in e.terms.items():
            v[code + shift if support_of(code, n) <= inside else code] = c
        ech.add(v)
    out = []
    for p, row in ech.rows.items():
        if p >= shift:
            out.append({k - shift: x for k, x in row.items()})
    return out


def direct_connectivity(system: ControlSystem, basis: AlgebraBasis) -> ConnectivityResult:
    st = system.structure
    blocks = st.qubit_blocks()
    elements = _elements(basis)
    n = system.n
    owner = _block_of(st, n)
    for a, b in combinations(range(len(blocks)), 2):
        inside = set(blocks[a]) | set(blocks[b])
        rows = _restricted_rows(elements, n, inside)
        ok = any(
            len(_blocks_touched(code, n, owner)) == 2 for row in rows for code in row
        )
        if not ok:
            return ConnectivityResult(False, failing_cut=(a, b))
    return ConnectivityResult(True)


def is_directly_connected(system: ControlSystem, basis: AlgebraBasis) -> bool:
    return direct_connectivity(system, basis).value
