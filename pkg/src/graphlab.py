"""Undirected-graph analytics at desk scale.

Components, bipartition, girth, cycle enumeration and orbit classification,
Hamiltonian search, automorphism groups and isomorphism. Vertices only need
to be sortable; every search visits vertices in sorted order so witnesses
are reproducible.
"""

from __future__ import annotations

import math
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

import networkx as nx
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup as SympyPermutationGroup

from src.errors import DomainError, UnsupportedSizeError

MAX_SEARCH_VERTICES = 32

Perm = tuple[int, ...]


def _check_size(*graphs: nx.Graph) -> None:
    for g in graphs:
        if g.number_of_nodes() > MAX_SEARCH_VERTICES:
            raise UnsupportedSizeError(
                f"graph has {g.number_of_nodes()} vertices; exhaustive search is limited to {MAX_SEARCH_VERTICES}"
            )


# =============================================================================
# structure
# =============================================================================

def components(g: nx.Graph) -> list[frozenset]:
    """Connected components ordered by their smallest vertex."""
    parts = [frozenset(c) for c in nx.connected_components(g)]
    return sorted(parts, key=min)


def bipartition(g: nx.Graph) -> Optional[tuple[frozenset, frozenset]]:
    """Sides (A, B) with each component's smallest vertex in A, or None."""
    if not nx.is_bipartite(g):
        return None
    colouring = nx.bipartite.color(g)
    side_a, side_b = set(), set()
    for part in components(g):
        anchor = colouring[min(part)]
        for v in part:
            (side_a if colouring[v] == anchor else side_b).add(v)
    return frozenset(side_a), frozenset(side_b)


def girth(g: nx.Graph) -> float:
    """Shortest cycle length by BFS from every vertex; ``math.inf`` for forests."""
    best = math.inf
    for source in sorted(g):
        dist = {source: 0}
        parent = {source: None}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for v in sorted(g[u]):
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


# =============================================================================
# cycles
# =============================================================================

def canonical_cycle(cycle: Sequence, oriented: bool = False) -> tuple:
    """Least rotation of the sequence (and of its reversal unless ``oriented``)."""
    seq = tuple(cycle)
    candidates = [seq] if oriented else [seq, tuple(reversed(seq))]
    return min(c[i:] + c[:i] for c in candidates for i in range(len(c)))


def enumerate_cycles(g: nx.Graph, length: int) -> list[tuple]:
    """Every simple cycle of exactly ``length`` vertices, one canonical tuple each."""
    if length < 3:
        raise DomainError(f"cycles have length >= 3, got {length}")
    found = {
        canonical_cycle(cycle)
        for cycle in nx.simple_cycles(g, length_bound=length)
        if len(cycle) == length
    }
    return sorted(found)


def is_cycle(g: nx.Graph, cycle: Sequence) -> bool:
    seq = list(cycle)
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    return all(g.has_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))


def classify_cycles(
    cycles: Iterable[Sequence],
    generators: Sequence[dict],
    oriented: bool = True,
) -> list[list[tuple]]:
    """Orbits of cycles under the group generated by vertex maps.

    With ``oriented`` each undirected cycle contributes both traversal
    directions, and two sequences are equal only up to rotation.
    """
    items: set[tuple] = set()
    for cycle in cycles:
        seq = tuple(cycle)
        items.add(canonical_cycle(seq, oriented))
        if oriented:
            items.add(canonical_cycle(tuple(reversed(seq)), oriented=True))

    orbits = []
    unseen = set(items)
    for seed in sorted(items):
        if seed not in unseen:
            continue
        orbit = {seed}
        queue = deque([seed])
        while queue:
            current = queue.popleft()
            for mapping in generators:
                image = canonical_cycle(tuple(mapping[v] for v in current), oriented)
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        unseen -= orbit
        orbits.append(sorted(orbit))
    return orbits


def chiral_orbits(orbits: Sequence[Sequence[tuple]]) -> list[int]:
    """Indices of oriented orbits that do not hold the reversals of their cycles."""
    chiral = []
    for index, orbit in enumerate(orbits):
        members = set(orbit)
        reverse = canonical_cycle(tuple(reversed(orbit[0])), oriented=True)
        if reverse not in members:
            chiral.append(index)
    return chiral


# =============================================================================
# hamiltonicity
# =============================================================================

def is_hamiltonian_cycle(g: nx.Graph, cycle: Optional[Sequence]) -> bool:
    return cycle is not None and len(cycle) == g.number_of_nodes() and is_cycle(g, cycle)


def hamiltonian_cycle(g: nx.Graph) -> Optional[list]:
    """Backtracking search from the smallest vertex, neighbours in sorted order."""
    order = g.number_of_nodes()
    if order < 3 or not nx.is_connected(g):
        return None
    if min(d for _, d in g.degree()) < 2:
        return None

    adjacency = {v: sorted(g[v]) for v in g}
    start = min(g)
    path = [start]
    visited = {start}

    def feasible() -> bool:
        last = path[-1]
        if len(path) < order and all(w in visited for w in adjacency[start]):
            return False
        for w in adjacency:
            if w in visited:
                continue
            exits = sum(1 for x in adjacency[w] if x not in visited or x == last or x == start)
            if exits < 2:
                return False
        return True

    def extend() -> bool:
        last = path[-1]
        if len(path) == order:
            return start in g[last]
        for v in adjacency[last]:
            if v in visited:
                continue
            path.append(v)
            visited.add(v)
            if feasible() and extend():
                return True
            path.pop()
            visited.discard(v)
        return False

    return list(path) if extend() else None


# =============================================================================
# permutation groups
# =============================================================================

def compose(a: Perm, b: Perm) -> Perm:
    """a after b."""
    return tuple(a[i] for i in b)


def inverse(a: Perm) -> Perm:
    result = [0] * len(a)
    for i, image in enumerate(a):
        result[image] = i
    return tuple(result)


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def element_order(a: Perm) -> int:
    order, current, ident = 1, a, identity(len(a))
    while current != ident:
        current = compose(a, current)
        order += 1
    return order


def _closure(degree: int, generators: Sequence[Perm]) -> frozenset[Perm]:
    seen = {identity(degree)}
    queue = deque(seen)
    while queue:
        current = queue.popleft()
        for gen in generators:
            product = compose(gen, current)
            if product not in seen:
                seen.add(product)
                queue.append(product)
    return frozenset(seen)


@dataclass(frozen=True)
class PermutationGroup:
    """Group generated by permutations of 0..degree-1.

    ``points`` names the underlying vertices when the group acts on a graph.
    """
    degree: int
    generators: tuple[Perm, ...]
    points: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        for gen in self.generators:
            if sorted(gen) != list(range(self.degree)):
                raise DomainError(f"not a permutation of {self.degree} points: {gen}")

    @cached_property
    def _elements(self) -> frozenset[Perm]:
        return _closure(self.degree, self.generators)

    def elements(self) -> list[Perm]:
        return sorted(self._elements)

    @property
    def order(self) -> int:
        return len(self._elements)

    def __contains__(self, perm: Perm) -> bool:
        return tuple(perm) in self._elements

    def element_order(self, perm: Perm) -> int:
        return element_order(tuple(perm))

    def schreier_sims_order(self) -> int:
        """Order recomputed by sympy's Schreier-Sims implementation."""
        if not self.generators:
            return 1
        group = SympyPermutationGroup([SympyPermutation(list(gen)) for gen in self.generators])
        return int(group.order())

    def as_mapping(self, perm: Perm) -> dict:
        points = self.points or tuple(range(self.degree))
        return {points[i]: points[j] for i, j in enumerate(perm)}

    def mappings(self) -> list[dict]:
        return [self.as_mapping(gen) for gen in self.generators]


def is_dihedral(group: PermutationGroup, m: int) -> bool:
    """True iff the group is <rho, tau> with rho of order m and tau rho tau = rho^-1."""
    if m < 1 or group.order != 2 * m:
        return False
    elements = group.elements()
    rhos = [e for e in elements if element_order(e) == m]
    involutions = [e for e in elements if element_order(e) == 2]
    for rho in rhos:
        rho_inverse = inverse(rho)
        for tau in involutions:
            if compose(tau, compose(rho, tau)) != rho_inverse:
                continue
            if len(_closure(group.degree, (rho, tau))) == 2 * m:
                return True
    return False


# =============================================================================
# automorphisms and isomorphism
# =============================================================================

class _IndexedGraph:
    """Integer relabelling of a graph in sorted vertex order."""

    def __init__(self, g: nx.Graph):
        self.vertices = tuple(sorted(g))
        index = {v: i for i, v in enumerate(self.vertices)}
        self.adjacency = [frozenset(index[w] for w in g[v]) for v in self.vertices]
        self.edges = frozenset(
            frozenset((index[u], index[v])) for u, v in g.edges()
        )
        self.size = len(self.vertices)

    def initial_colours(self) -> list[int]:
        """Degree plus sorted distance profile, ranked."""
        profiles = []
        for i in range(self.size):
            distances = {i: 0}
            queue = deque([i])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if w not in distances:
                        distances[w] = distances[u] + 1
                        queue.append(w)
            profile = tuple(sorted(Counter(distances.values()).items()))
            profiles.append((len(self.adjacency[i]), profile, len(distances)))
        return _rank(profiles)

    def preserves(self, perm: Perm, other: "_IndexedGraph") -> bool:
        return all(frozenset(perm[i] for i in edge) in other.edges for edge in self.edges)


def _rank(signatures: Sequence) -> list[int]:
    ranking = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
    return [ranking[s] for s in signatures]


def _refine(colours: list[int], adjacency: Sequence[frozenset[int]]) -> list[int]:
    """Equitable refinement by (colour, multiset of neighbour colours)."""
    cells = len(set(colours))
    while True:
        signatures = [
            (colours[v], tuple(sorted(colours[w] for w in adjacency[v]))) for v in range(len(colours))
        ]
        colours = _rank(signatures)
        refined = len(set(colours))
        if refined == cells:
            return colours
        cells = refined


def _individualise(colours: list[int], v: int) -> list[int]:
    result = [2 * c for c in colours]
    result[v] += 1
    return result


def _search(
    left: _IndexedGraph,
    right: _IndexedGraph,
    left_colours: list[int],
    right_colours: list[int],
    on_leaf: Callable[[Perm], bool],
) -> bool:
    """Backtrack over colour-preserving bijections; stop when on_leaf returns True."""
    if sorted(Counter(left_colours).items()) != sorted(Counter(right_colours).items()):
        return False

    counts = Counter(left_colours)
    open_cells = [c for c, size in counts.items() if size > 1]
    if not open_cells:
        position = {c: j for j, c in enumerate(right_colours)}
        perm = tuple(position[c] for c in left_colours)
        if left.preserves(perm, right):
            return on_leaf(perm)
        return False

    cell = min(open_cells)
    v = min(i for i, c in enumerate(left_colours) if c == cell)
    next_left = _refine(_individualise(left_colours, v), left.adjacency)
    for w in (j for j, c in enumerate(right_colours) if c == cell):
        next_right = _refine(_individualise(right_colours, w), right.adjacency)
        if _search(left, right, next_left, next_right, on_leaf):
            return True
    return False


def automorphisms(g: nx.Graph) -> tuple[tuple, list[Perm]]:
    """All automorphisms as index permutations over the sorted vertex list."""
    _check_size(g)
    indexed = _IndexedGraph(g)
    colours = _refine(indexed.initial_colours(), indexed.adjacency)
    found: list[Perm] = []

    def collect(perm: Perm) -> bool:
        found.append(perm)
        return False

    _search(indexed, indexed, colours, colours, collect)
    return indexed.vertices, sorted(found)


def automorphism_group(g: nx.Graph) -> PermutationGroup:
    """Exact automorphism group with a small generating set."""
    points, elements = automorphisms(g)
    degree = len(points)
    generators: list[Perm] = []
    generated = {identity(degree)}
    for perm in elements:
        if perm not in generated:
            generators.append(perm)
            generated = set(_closure(degree, generators))
    group = PermutationGroup(degree=degree, generators=tuple(generators), points=points)
    if group.order != len(elements):
        raise AssertionError(f"generators produce {group.order} elements, search found {len(elements)}")
    return group


def is_automorphism(g: nx.Graph, mapping: dict) -> bool:
    if set(mapping) != set(g) or set(mapping.values()) != set(g):
        return False
    return all(g.has_edge(mapping[u], mapping[v]) for u, v in g.edges())


def are_isomorphic(g1: nx.Graph, g2: nx.Graph) -> Optional[dict]:
    """Adjacency-preserving bijection g1 -> g2, or None."""
    _check_size(g1, g2)
    if g1.number_of_nodes() != g2.number_of_nodes() or g1.number_of_edges() != g2.number_of_edges():
        return None
    if sorted(d for _, d in g1.degree()) != sorted(d for _, d in g2.degree()):
        return None

    mapping = nx.vf2pp_isomorphism(g1, g2)
    if mapping is None:
        return None
    if not all(g2.has_edge(mapping[u], mapping[v]) for u, v in g1.edges()):
        raise AssertionError("isomorphism search returned a map that breaks adjacency")
    return dict(mapping)


def relabel_randomly(g: nx.Graph, seed: int) -> nx.Graph:
    """Copy of ``g`` on vertices 0..n-1 in a seeded random order."""
    vertices = sorted(g)
    shuffled = list(range(len(vertices)))
    random.Random(seed).shuffle(shuffled)
    return nx.relabel_nodes(nx.Graph(g), dict(zip(vertices, shuffled)))


# =============================================================================
# report
# =============================================================================

@dataclass(frozen=True)
class InvariantReport:
    order: int
    degree_sequence: tuple[int, ...]
    is_regular: bool
    regular_degree: Optional[int]
    is_bipartite: bool
    partition: Optional[tuple[tuple, tuple]]
    component_count: int
    girth: float
    hamiltonian: bool
    hamiltonian_witness: Optional[tuple]
    aut_order: Optional[int]
    aut_generators: tuple[dict, ...]

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "degree_sequence": list(self.degree_sequence),
            "is_regular": self.is_regular,
            "regular_degree": self.regular_degree,
            "is_bipartite": self.is_bipartite,
            "component_count": self.component_count,
            "girth": None if math.isinf(self.girth) else int(self.girth),
            "hamiltonian": self.hamiltonian,
            "aut_order": self.aut_order,
        }


def invariant_report(
    g: nx.Graph,
    with_automorphisms: bool = True,
    group: Optional[PermutationGroup] = None,
) -> InvariantReport:
    degrees = tuple(sorted((d for _, d in g.degree()), reverse=True))
    regular = len(set(degrees)) == 1
    sides = bipartition(g)
    witness = hamiltonian_cycle(g)
    if witness is not None and not is_hamiltonian_cycle(g, witness):
        raise AssertionError("Hamiltonian witness is not a cycle through every vertex")

    aut_order, aut_generators = None, ()
    if with_automorphisms:
        if group is None:
            group = automorphism_group(g)
        aut_generators = tuple(group.mappings())
        for mapping in aut_generators:
            if not is_automorphism(g, mapping):
                raise AssertionError("automorphism generator breaks adjacency")
        aut_order = group.order

    return InvariantReport(
        order=g.number_of_nodes(),
        degree_sequence=degrees,
        is_regular=regular and bool(degrees),
        regular_degree=degrees[0] if regular and degrees else None,
        is_bipartite=sides is not None,
        partition=(tuple(sorted(sides[0])), tuple(sorted(sides[1]))) if sides else None,
        component_count=len(components(g)),
        girth=girth(g),
        hamiltonian=witness is not None,
        hamiltonian_witness=tuple(witness) if witness else None,
        aut_order=aut_order,
        aut_generators=aut_generators,
    )
