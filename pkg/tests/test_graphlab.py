#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Test graph analytics: girth, cycles, Hamiltonian search and automorphisms
Usage: python tests/test_graphlab.py
       python tests/test_graphlab.py --verbose
"""

import sys
import os
import argparse
import math

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

# Setup project root
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, PROJECT_ROOT)

from src.errors import DomainError, UnsupportedSizeError
from src.graphlab import (
    PermutationGroup,
    are_isomorphic,
    automorphism_group,
    bipartition,
    canonical_cycle,
    chiral_orbits,
    classify_cycles,
    components,
    enumerate_cycles,
    girth,
    hamiltonian_cycle,
    invariant_report,
    is_automorphism,
    is_cycle,
    is_dihedral,
    is_hamiltonian_cycle,
    relabel_randomly,
)
from src.harmony import HarmonicSystem, Mode, Vertex
from src.tonnetz import (
    build_functional_tonnetz,
    build_set_level_tonnetz,
    reflection_automorphism,
    rotation_automorphism,
)
from tests.suite import run_suite

ACOUSTIC = build_functional_tonnetz(HarmonicSystem(10, 7, 4, 3))
TRITONE = build_functional_tonnetz(HarmonicSystem(10, 7, 5, 2))
WIDE = build_functional_tonnetz(HarmonicSystem(10, 7, 6, 1))
CLASSICAL = build_functional_tonnetz(HarmonicSystem(12, 7, 4, 3))


def D(r):
    return Vertex(Mode.MAJOR, r)


def M(r):
    return Vertex(Mode.MINOR, r)


def _min_cycle_length(g, longest=8):
    for length in range(3, longest + 1):
        if enumerate_cycles(g, length):
            return length
    return math.inf


def test_components_and_bipartition():
    two_triangles = nx.Graph([(0, 1), (1, 2), (2, 0), (5, 6), (6, 7), (7, 5)])
    assert components(two_triangles) == [frozenset({0, 1, 2}), frozenset({5, 6, 7})]
    assert bipartition(two_triangles) is None

    side_a, side_b = bipartition(WIDE)
    assert D(0) in side_a
    assert side_a == frozenset(v for v in WIDE if v.mode is Mode.MAJOR)
    assert len(side_b) == 10


def test_girth_values():
    assert girth(ACOUSTIC) == 4
    assert girth(TRITONE) == 4
    assert girth(WIDE) == 6
    assert girth(CLASSICAL) == 6
    assert girth(nx.cycle_graph(5)) == 5
    assert girth(nx.path_graph(6)) == math.inf


def test_girth_matches_cycle_enumeration():
    graphs = [ACOUSTIC, TRITONE, WIDE, CLASSICAL, nx.petersen_graph(), nx.complete_graph(4)]
    for g in graphs:
        assert girth(g) == _min_cycle_length(g)
    for g in (ACOUSTIC, WIDE, TRITONE):
        assert girth(g) % 2 == 0


def test_acoustic_four_cycles():
    cycles = enumerate_cycles(ACOUSTIC, 4)
    assert len(cycles) == 10
    assert canonical_cycle((M(0), D(0), M(7), D(3))) in cycles
    assert all(is_cycle(ACOUSTIC, c) for c in cycles)
    assert enumerate_cycles(WIDE, 4) == []
    assert canonical_cycle((D(0), M(0), D(5), M(5))) in enumerate_cycles(TRITONE, 4)
    try:
        enumerate_cycles(ACOUSTIC, 2)
    except DomainError:
        pass
    else:
        raise AssertionError("length 2 should be rejected")


def test_canonical_cycle():
    assert canonical_cycle((3, 1, 2)) == (1, 2, 3)
    assert canonical_cycle((3, 2, 1)) == (1, 2, 3)
    assert canonical_cycle((3, 2, 1), oriented=True) == (1, 3, 2)
    assert not is_cycle(nx.path_graph(3), (0, 1, 2))


def test_chiral_four_cycle_orbits():
    cycles = enumerate_cycles(ACOUSTIC, 4)
    rotation = rotation_automorphism(ACOUSTIC)
    oriented = classify_cycles(cycles, [rotation], oriented=True)
    assert len(oriented) == 2
    assert sorted(len(orbit) for orbit in oriented) == [10, 10]
    assert len(classify_cycles(cycles, [rotation], oriented=False)) == 1

    reflection = reflection_automorphism(HarmonicSystem(10, 7, 4, 3))
    assert len(classify_cycles(cycles, [rotation, reflection], oriented=True)) == 2

    swap = {v: Vertex(Mode(1 - v.mode), (-v.root) % 10) for v in ACOUSTIC}
    assert is_automorphism(ACOUSTIC, swap)
    assert len(classify_cycles(cycles, [rotation, swap], oriented=True)) == 1
    full = classify_cycles(cycles, automorphism_group(ACOUSTIC).mappings(), oriented=True)
    assert len(full) == 1
    assert chiral_orbits(full) == []
    assert chiral_orbits(oriented) == [0, 1]


def test_wide_hexagon_orbits():
    cycles = enumerate_cycles(WIDE, 6)
    assert len(cycles) == 20
    hexagon = (D(0), M(9), D(3), M(3), D(4), M(0))
    assert is_cycle(WIDE, hexagon)
    assert canonical_cycle(hexagon) in cycles

    rotation = rotation_automorphism(WIDE)
    by_rotation = classify_cycles(cycles, [rotation], oriented=True)
    assert sorted(len(orbit) for orbit in by_rotation) == [10, 10, 10, 10]
    assert len(classify_cycles(cycles, [rotation], oriented=False)) == 2

    full = classify_cycles(cycles, automorphism_group(WIDE).mappings(), oriented=True)
    assert len(full) == 3
    chiral = chiral_orbits(full)
    assert len(chiral) == 2
    orbit_of = {c: i for i, orbit in enumerate(full) for c in orbit}

    forward = canonical_cycle(hexagon, oriented=True)
    backward = canonical_cycle(tuple(reversed(hexagon)), oriented=True)
    assert orbit_of[forward] != orbit_of[backward]
    assert {orbit_of[forward], orbit_of[backward]} == set(chiral)

    # P L R L R L from D0 is its own mirror image
    achiral = (D(0), M(0), D(4), M(3), D(7), M(6))
    assert is_cycle(WIDE, achiral)
    assert orbit_of[canonical_cycle(achiral, oriented=True)] == orbit_of[canonical_cycle(tuple(reversed(achiral)), oriented=True)]


def test_hamiltonian_witnesses():
    for g in (ACOUSTIC, TRITONE, WIDE, CLASSICAL):
        witness = hamiltonian_cycle(g)
        assert is_hamiltonian_cycle(g, witness)
        assert witness[0] == min(g)
        assert len(set(witness)) == g.number_of_nodes()
    assert hamiltonian_cycle(build_set_level_tonnetz(HarmonicSystem(10, 7, 4, 3))) is None
    assert is_hamiltonian_cycle(nx.complete_graph(4), hamiltonian_cycle(nx.complete_graph(4)))
    assert hamiltonian_cycle(nx.star_graph(4)) is None
    assert hamiltonian_cycle(nx.petersen_graph()) is None


def test_automorphism_orders():
    assert automorphism_group(ACOUSTIC).order == 40
    assert automorphism_group(TRITONE).order == 320
    assert automorphism_group(WIDE).order == 20
    assert automorphism_group(nx.cycle_graph(5)).order == 10
    assert automorphism_group(nx.petersen_graph()).order == 120


def test_sympy_agrees_on_group_orders():
    for g in (ACOUSTIC, TRITONE, WIDE, nx.cycle_graph(5)):
        group = automorphism_group(g)
        assert group.schreier_sims_order() == group.order


def test_generators_preserve_edges():
    for g in (ACOUSTIC, TRITONE, WIDE):
        group = automorphism_group(g)
        assert group.generators
        assert all(is_automorphism(g, mapping) for mapping in group.mappings())
        assert math.factorial(g.number_of_nodes()) % group.order == 0


def test_dihedral_structure():
    assert is_dihedral(automorphism_group(WIDE), 10)
    assert is_dihedral(automorphism_group(nx.cycle_graph(5)), 5)
    assert not is_dihedral(automorphism_group(nx.cycle_graph(5)), 10)
    cyclic = PermutationGroup(degree=4, generators=((1, 2, 3, 0),))
    assert cyclic.order == 4
    assert not is_dihedral(cyclic, 2)
    assert cyclic.element_order((1, 2, 3, 0)) == 4
    assert (2, 3, 0, 1) in cyclic
    try:
        PermutationGroup(degree=3, generators=((0, 0, 1),))
    except DomainError:
        pass
    else:
        raise AssertionError("non-permutation generator should be rejected")


def test_group_order_is_label_invariant():
    for seed in (1, 7):
        assert automorphism_group(relabel_randomly(ACOUSTIC, seed)).order == 40
        assert automorphism_group(relabel_randomly(WIDE, seed)).order == 20


def test_group_order_matches_networkx_matcher():
    for g, expected in ((ACOUSTIC, 40), (WIDE, 20)):
        plain = nx.Graph(g.edges())
        count = sum(1 for _ in GraphMatcher(plain, plain).isomorphisms_iter())
        assert count == expected


def test_isomorphism():
    mapping = are_isomorphic(WIDE, relabel_randomly(WIDE, 3))
    assert mapping is not None
    assert are_isomorphic(ACOUSTIC, TRITONE) is None
    assert are_isomorphic(ACOUSTIC, WIDE) is None
    assert are_isomorphic(nx.cycle_graph(4), nx.path_graph(4)) is None


def test_search_size_limit():
    big = nx.cycle_graph(40)
    for call in (lambda: automorphism_group(big), lambda: are_isomorphic(big, big)):
        try:
            call()
        except UnsupportedSizeError:
            continue
        raise AssertionError("40 vertices should exceed the search limit")


def test_invariant_report():
    report = invariant_report(WIDE)
    assert report.order == 20
    assert report.is_regular and report.regular_degree == 3
    assert report.is_bipartite and report.component_count == 1
    assert report.girth == 6 and report.hamiltonian
    assert report.aut_order == 20
    data = report.to_dict()
    assert data["girth"] == 6
    assert invariant_report(nx.path_graph(4), with_automorphisms=False).to_dict()["girth"] is None


ALL_TESTS = [
    test_components_and_bipartition,
    test_girth_values,
    test_girth_matches_cycle_enumeration,
    test_acoustic_four_cycles,
    test_canonical_cycle,
    test_chiral_four_cycle_orbits,
    test_wide_hexagon_orbits,
    test_hamiltonian_witnesses,
    test_automorphism_orders,
    test_sympy_agrees_on_group_orders,
    test_generators_preserve_edges,
    test_dihedral_structure,
    test_group_order_is_label_invariant,
    test_group_order_matches_networkx_matcher,
    test_isomorphism,
    test_search_size_limit,
    test_invariant_report,
]

SLOW_TESTS = [test_group_order_matches_networkx_matcher]


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Test graphlab module")
    parser.add_argument("--verbose", "-v", action="store_true", help="Print tracebacks")
    args = parser.parse_args()

    success = run_suite("GRAPHLAB", ALL_TESTS, verbose=args.verbose)
    sys.exit(0 if success else 1)
