"""Circulant embeddings of Tonnetz graphs and n_3 configuration checks.

The interleaving map sends D_i to 2i and M_i to 2i+1 in Z_{2n}. Under it an
offset k becomes the odd jump 2k+1, so every functional Tonnetz is a
bipartite circulant: even vertex 2i is joined to 2i + j for each jump j.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterable, Optional, Union

import networkx as nx

from src.errors import DomainError, UnsupportedSizeError
from src.graphlab import (
    PermutationGroup,
    are_isomorphic,
    automorphism_group,
    bipartition,
    element_order,
    girth,
    is_automorphism,
)
from src.harmony import HarmonicSystem, Mode, Vertex
from src.tonnetz import PlrOffsets

CENSUS_MODULUS = 10


@dataclass(frozen=True)
class CirculantDescriptor:
    """Ci_N(jumps); ``bipartite`` selects the Haar form 2i ~ 2i + j."""
    n_vertices: int
    jumps: tuple[int, ...]
    bipartite: bool = False

    def __post_init__(self):
        if self.n_vertices < 2:
            raise DomainError(f"circulant needs at least 2 vertices, got {self.n_vertices}")
        jumps = tuple(sorted(set(self.jumps)))
        for j in jumps:
            if not 1 <= j <= self.n_vertices - 1:
                raise DomainError(f"jump {j} outside 1..{self.n_vertices - 1}")
        if self.bipartite and (self.n_vertices % 2 or any(j % 2 == 0 for j in jumps)):
            raise DomainError("bipartite circulants need an even order and odd jumps")
        object.__setattr__(self, "jumps", jumps)

    @property
    def residue_classes(self) -> frozenset[frozenset[int]]:
        n = self.n_vertices
        return frozenset(frozenset({j, (n - j) % n}) for j in self.jumps)

    @property
    def canonical_representatives(self) -> tuple[int, ...]:
        n = self.n_vertices
        return tuple(sorted({min(j, n - j) for j in self.jumps}))

    @property
    def implied_degree(self) -> int:
        if self.bipartite:
            return len(self.jumps)
        n = self.n_vertices
        return len({j % n for j in self.jumps} | {(-j) % n for j in self.jumps})

    @property
    def name(self) -> str:
        return f"Ci{self.n_vertices}({','.join(map(str, self.jumps))})"

    def to_dict(self) -> dict:
        return {"n_vertices": self.n_vertices, "jumps": list(self.jumps), "bipartite": self.bipartite}


def interleave_map(system: HarmonicSystem) -> dict[Vertex, int]:
    n = system.n
    phi = {}
    for r in range(n):
        phi[Vertex(Mode.MAJOR, r)] = 2 * r
        phi[Vertex(Mode.MINOR, r)] = 2 * r + 1
    return phi


def jump_set_from_offsets(offsets: Union[PlrOffsets, Iterable[int]], n: Optional[int] = None) -> CirculantDescriptor:
    if isinstance(offsets, PlrOffsets):
        n = offsets.n if n is None else n
        offsets = offsets.as_set()
    if n is None:
        raise DomainError("modulus n is required for a bare offset list")
    size = 2 * n
    return CirculantDescriptor(
        n_vertices=size,
        jumps=tuple(sorted({(2 * k + 1) % size for k in offsets})),
        bipartite=True,
    )


def circulant_graph(descriptor: CirculantDescriptor) -> nx.Graph:
    size = descriptor.n_vertices
    if not descriptor.bipartite:
        graph = nx.circulant_graph(size, descriptor.jumps)
    else:
        graph = nx.empty_graph(size)
        for i, j in product(range(0, size, 2), descriptor.jumps):
            graph.add_edge(i, (i + j) % size)
    graph.graph.update(kind="circulant", name=descriptor.name)
    return nx.freeze(graph)


def build_circulant(n_vertices: int, jumps: Iterable[int], bipartite: bool = False) -> nx.Graph:
    return circulant_graph(CirculantDescriptor(n_vertices, tuple(jumps), bipartite))


def verify_circulant_embedding(
    g: nx.Graph,
    phi: dict,
    jumps: Union[CirculantDescriptor, Iterable[int]],
) -> bool:
    """True iff phi carries g's edges exactly onto a circulant with these jumps.

    A bare jump list is accepted when either the standard or the bipartite
    circulant on those jumps matches.
    """
    size = g.number_of_nodes()
    if set(phi) != set(g) or sorted(phi.values()) != list(range(size)):
        return False

    if isinstance(jumps, CirculantDescriptor):
        descriptors = [jumps]
    else:
        jump_tuple = tuple(jumps)
        descriptors = [CirculantDescriptor(size, jump_tuple)]
        if size % 2 == 0 and all(j % 2 for j in jump_tuple):
            descriptors.append(CirculantDescriptor(size, jump_tuple, bipartite=True))

    allowed = {j % size for d in descriptors for j in d.jumps} | {(-j) % size for d in descriptors for j in d.jumps}
    mapped = {frozenset((phi[u], phi[v])) for u, v in g.edges()}
    for edge in mapped:
        a, b = tuple(edge)
        if (a - b) % size not in allowed:
            return False

    for descriptor in descriptors:
        if descriptor.n_vertices != size:
            continue
        target = {frozenset(e) for e in circulant_graph(descriptor).edges()}
        if target == mapped:
            return True
    return False


# =============================================================================
# configurations
# =============================================================================

@dataclass(frozen=True)
class ConfigurationVerdict:
    is_n3: bool
    reasons: tuple[str, ...]
    self_dual: bool
    cyclic: bool
    side_size: Optional[int]
    girth: Optional[int]
    desargues: bool = False

    def to_dict(self) -> dict:
        return {
            "is_n3": self.is_n3,
            "reasons": list(self.reasons),
            "self_dual": self.self_dual,
            "cyclic": self.cyclic,
            "side_size": self.side_size,
            "girth": self.girth,
            "desargues": self.desargues,
        }


def _rotation_candidate(g: nx.Graph, side_size: int) -> Optional[dict]:
    """(mode, r) -> (mode, r+1) when the vertices carry mode/root attributes."""
    lookup = {}
    for v, data in g.nodes(data=True):
        if "mode" not in data or "root" not in data:
            return None
        lookup[(data["mode"], data["root"])] = v
    mapping = {}
    for (mode, root), v in lookup.items():
        image = lookup.get((mode, (root + 1) % side_size))
        if image is None:
            return None
        mapping[v] = image
    return mapping if is_automorphism(g, mapping) else None


def _cycles_each_side(mapping: dict, sides: tuple[frozenset, frozenset]) -> bool:
    """The map is one full cycle on each side."""
    for side in sides:
        start = min(side)
        current, steps = mapping[start], 1
        while current != start:
            if current not in side:
                return False
            current, steps = mapping[current], steps + 1
        if steps != len(side):
            return False
    return True


def self_duality_witness(g: nx.Graph, group: Optional[PermutationGroup] = None) -> Optional[dict]:
    """An automorphism exchanging the two sides, or None."""
    sides = bipartition(g)
    if sides is None or len(sides[0]) != len(sides[1]) or not nx.is_connected(g):
        return None
    side_a, side_b = sides
    if group is None:
        group = automorphism_group(g)
    for perm in group.elements():
        mapping = group.as_mapping(perm)
        if all(mapping[v] in side_b for v in side_a):
            return mapping
    return None


def _is_cyclic(g: nx.Graph, sides: tuple[frozenset, frozenset], group: Optional[PermutationGroup]) -> bool:
    side_size = len(sides[0])
    rotation = _rotation_candidate(g, side_size)
    if rotation is not None and _cycles_each_side(rotation, sides):
        return True
    if group is None:
        return False
    for perm in group.elements():
        if element_order(perm) != side_size:
            continue
        mapping = group.as_mapping(perm)
        if _cycles_each_side(mapping, sides):
            return True
    return False


def check_n3_configuration(g: nx.Graph, group: Optional[PermutationGroup] = None) -> ConfigurationVerdict:
    """Decide whether g is the Levi graph of an n_3 configuration."""
    reasons = []
    sides = bipartition(g)
    g_girth = girth(g)
    finite_girth = None if g_girth == float("inf") else int(g_girth)

    if g.number_of_nodes() == 0:
        reasons.append("empty")
    if sides is None:
        reasons.append("not-bipartite")
    elif len(sides[0]) != len(sides[1]):
        reasons.append("unequal-sides")
    if any(d != 3 for _, d in g.degree()):
        reasons.append("not-3-regular")
    if finite_girth is not None and finite_girth < 6:
        reasons.append(f"girth-{finite_girth}")

    balanced = (
        sides is not None
        and len(sides[0]) == len(sides[1])
        and g.number_of_nodes() > 0
        and nx.is_connected(g)
    )
    if balanced and group is None:
        try:
            group = automorphism_group(g)
        except UnsupportedSizeError:
            group = None
    self_dual = group is not None and self_duality_witness(g, group) is not None
    cyclic = balanced and _is_cyclic(g, sides, group)

    verdict = ConfigurationVerdict(
        is_n3=not reasons,
        reasons=tuple(reasons),
        self_dual=self_dual,
        cyclic=cyclic,
        side_size=len(sides[0]) if sides else None,
        girth=finite_girth,
        desargues=not reasons and is_desargues_levi_graph(g),
    )
    if verdict.is_n3 and not (g_girth >= 6 and all(d == 3 for _, d in g.degree())):
        raise AssertionError("n_3 verdict contradicts girth or regularity")
    return verdict


def is_desargues_levi_graph(g: nx.Graph) -> bool:
    """True when g is the Levi graph of the Desargues configuration (Aut order 240)."""
    if g.number_of_nodes() != 20:
        return False
    return are_isomorphic(g, nx.desargues_graph()) is not None


def interleave_cycle_is_hamiltonian(g: nx.Graph) -> bool:
    """Vertices read in interleave order 0, 1, ..., 2n-1 form a closed cycle."""
    n = g.graph["n"]
    order = [Vertex(Mode.MAJOR if i % 2 == 0 else Mode.MINOR, i // 2) for i in range(2 * n)]
    return all(g.has_edge(order[i], order[(i + 1) % len(order)]) for i in range(len(order)))


# =============================================================================
# cyclic 10_3 census
# =============================================================================

def canonical_difference_triple(triple: Iterable[int], modulus: int = CENSUS_MODULUS) -> tuple[int, int, int]:
    """Least sorted form of {0, a, b} under shifts, negation and unit multipliers."""
    points = tuple(x % modulus for x in triple)
    if len(set(points)) != 3:
        raise DomainError(f"difference triple needs three distinct residues, got {points}")
    units = [u for u in range(1, modulus) if gcd(u, modulus) == 1]
    best = None
    for unit in units:
        scaled = [(unit * x) % modulus for x in points]
        for base in scaled:
            candidate = tuple(sorted((x - base) % modulus for x in scaled))
            if best is None or candidate < best:
                best = candidate
    return best


def levi_graph_from_triple(a: int, b: int, modulus: int = CENSUS_MODULUS) -> nx.Graph:
    """Lines L_i = {i, i+a, i+b} as D_i, points as M_j."""
    graph = nx.Graph(n=modulus, kind="levi", triple=(0, a % modulus, b % modulus))
    for mode in Mode:
        for r in range(modulus):
            graph.add_node(Vertex(mode, r), mode=mode, root=r, name=Vertex(mode, r).name)
    for i in range(modulus):
        for k in (0, a, b):
            graph.add_edge(Vertex(Mode.MAJOR, i), Vertex(Mode.MINOR, (i + k) % modulus))
    return nx.freeze(graph)


@dataclass(frozen=True)
class CensusResult:
    members: tuple[tuple[int, int, int], ...]
    classes: tuple[tuple[tuple[int, int, int], ...], ...]
    rejected: tuple[tuple[int, int, int], ...]
    desargues_classes: tuple[int, ...] = ()

    def canonical_forms(self) -> list[tuple[int, int, int]]:
        return sorted({canonical_difference_triple(t) for t in self.members})


def enumerate_cyclic_103(modulus: int = CENSUS_MODULUS) -> CensusResult:
    """All {0, a, b} whose cyclic incidence structure is a configuration.

    Survivors are grouped into isomorphism classes of their Levi graphs.
    """
    members = []
    rejected = []
    graphs = {}
    for a in range(1, modulus):
        for b in range(a + 1, modulus):
            triple = (0, a, b)
            levi = levi_graph_from_triple(a, b, modulus)
            if girth(levi) >= 6:
                members.append(triple)
                graphs[triple] = levi
            else:
                rejected.append(triple)

    classes: list[list[tuple[int, int, int]]] = []
    for triple in members:
        for cls in classes:
            if are_isomorphic(graphs[cls[0]], graphs[triple]) is not None:
                cls.append(triple)
                break
        else:
            classes.append([triple])

    return CensusResult(
        members=tuple(members),
        classes=tuple(tuple(cls) for cls in classes),
        rejected=tuple(rejected),
        desargues_classes=tuple(
            i for i, cls in enumerate(classes) if is_desargues_levi_graph(graphs[cls[0]])
        ),
    )


def witness_squared_is_automorphism(g: nx.Graph, witness: dict) -> bool:
    squared = {v: witness[witness[v]] for v in witness}
    return is_automorphism(g, squared)

