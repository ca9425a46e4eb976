#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Test P/L/R offsets, transformations and Tonnetz construction
Usage: python tests/test_tonnetz.py
       python tests/test_tonnetz.py --verbose
"""

import sys
import os
import argparse

# Setup project root
PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, PROJECT_ROOT)

from src.errors import DegenerateChordError, DomainError
from src.graphlab import components, is_automorphism
from src.harmony import HarmonicSystem, Mode, Vertex, major_chord, minor_chord
from src.tonnetz import (
    Transform,
    apply_transform,
    build_functional_tonnetz,
    build_set_level_tonnetz,
    common_tones,
    connection_table,
    derive_plr_offsets,
    double_step_shifts,
    has_four_cycle,
    parity_universes,
    parse_word,
    reflection_automorphism,
    role_match,
    rotation_automorphism,
    word_cycle,
)
from tests.suite import run_suite

ACOUSTIC = HarmonicSystem(10, 7, 4, 3)
TRITONE = HarmonicSystem(10, 7, 5, 2)
WIDE = HarmonicSystem(10, 7, 6, 1)
CLASSICAL = HarmonicSystem(12, 7, 4, 3)
ALL_SYSTEMS = (ACOUSTIC, TRITONE, WIDE, CLASSICAL)

TRITONE_TOUR = "L·R·(P·R)⁴·L·R·(P·R)⁴"


def D(r):
    return Vertex(Mode.MAJOR, r)


def M(r):
    return Vertex(Mode.MINOR, r)


def test_common_tones():
    d0 = major_chord(CLASSICAL, 0)
    assert common_tones(d0, minor_chord(CLASSICAL, 0)) == {0, 7}
    assert common_tones(d0, minor_chord(CLASSICAL, 9)) == {0, 4}
    assert common_tones(d0, d0) == d0.pitches
    try:
        common_tones(d0, major_chord(WIDE, 0))
    except DomainError:
        pass
    else:
        raise AssertionError("chords from different moduli should be rejected")


def test_offsets_by_system():
    wide = derive_plr_offsets(WIDE)
    assert (wide.p_offset, wide.l_offset, wide.r_offset) == (0, 6, 9)
    tritone = derive_plr_offsets(TRITONE)
    assert (tritone.p_offset, tritone.l_offset, tritone.r_offset) == (0, 5, 8)
    classical = derive_plr_offsets(CLASSICAL)
    assert (classical.p_offset, classical.l_offset, classical.r_offset) == (0, 4, 9)


def test_acoustic_offsets_flag_identity():
    offsets = derive_plr_offsets(ACOUSTIC)
    assert offsets.sorted_offsets() == [0, 4, 7]
    assert (offsets.p_offset, offsets.l_offset, offsets.r_offset) == (0, 4, 7)
    assert offsets.identity_transforms == (Transform.R,)
    assert offsets.r_common == 3 and offsets.p_common == 2


def test_tritone_offsets_follow_tone_roles():
    d0 = major_chord(TRITONE, 0)
    # M3 = (3, 5, 0) keeps {0, 5} but sends the root to its fifth
    assert common_tones(d0, minor_chord(TRITONE, 3)) == {0, 5}
    assert role_match(d0, minor_chord(TRITONE, 3)) is None
    assert role_match(d0, minor_chord(TRITONE, 8)) is Transform.R
    assert role_match(d0, minor_chord(TRITONE, 5)) is Transform.L
    assert role_match(d0, minor_chord(TRITONE, 0)) is Transform.P
    offsets = derive_plr_offsets(TRITONE)
    assert offsets.sorted_offsets() == [0, 5, 8]
    assert offsets.identity_transforms == ()


def test_offsets_of_diminished_and_collapsed_systems():
    diminished = derive_plr_offsets(HarmonicSystem(12, 6, 3, 3))
    assert (diminished.p_offset, diminished.l_offset, diminished.r_offset) == (0, 3, 9)
    assert diminished.identity_transforms == (Transform.P,)
    for system in (HarmonicSystem(10, 7, 0, 7), HarmonicSystem(12, 0, 5, 7)):
        try:
            derive_plr_offsets(system)
        except DegenerateChordError:
            continue
        raise AssertionError(f"{system.label} collapses and should be rejected")


def test_transform_examples():
    d0 = major_chord(ACOUSTIC, 0)
    assert apply_transform(ACOUSTIC, d0, "P").vertex == M(0)
    assert apply_transform(ACOUSTIC, d0, Transform.L).vertex == M(4)
    assert apply_transform(ACOUSTIC, minor_chord(ACOUSTIC, 4), "L").vertex == D(0)
    assert apply_transform(TRITONE, major_chord(TRITONE, 0), "L").vertex == M(5)


def test_involution_and_mode_alternation():
    for system in ALL_SYSTEMS:
        offsets = derive_plr_offsets(system)
        for mode in Mode:
            for r in range(system.n):
                chord = minor_chord(system, r) if mode is Mode.MINOR else major_chord(system, r)
                for op in Transform:
                    image = apply_transform(system, chord, op, offsets)
                    assert image.mode is not chord.mode
                    assert apply_transform(system, image, op, offsets) == chord


def test_functional_graph_shapes():
    acoustic = build_functional_tonnetz(ACOUSTIC)
    assert acoustic.number_of_nodes() == 20
    assert acoustic.number_of_edges() == 30
    assert all(d == 3 for _, d in acoustic.degree())
    assert set(build_functional_tonnetz(WIDE)[D(0)]) == {M(0), M(6), M(9)}

    classical = build_functional_tonnetz(CLASSICAL)
    assert classical.number_of_nodes() == 24
    assert all(d == 3 for _, d in classical.degree())
    assert len(components(classical)) == 1
    assert set(classical[D(0)]) == {M(0), M(4), M(9)}


def test_edge_attributes():
    acoustic = build_functional_tonnetz(ACOUSTIC)
    assert acoustic.edges[D(0), M(7)]["label"] == "R"
    assert acoustic.edges[D(0), M(7)]["common_tones"] == 3
    assert acoustic.edges[D(0), M(4)]["label"] == "L"
    assert acoustic.nodes[D(0)]["pitches"] == (0, 4, 7)


def _keeps_roles(major, minor):
    (r0, r1, r2), (m0, m1, m2) = major.tones, minor.tones
    return (r0 == m0 and r2 == m2) or (r1 == m0 and r2 == m1) or (r0 == m1 and r1 == m2)


def test_offset_edges_match_exhaustive_common_tones():
    for system in ALL_SYSTEMS:
        graph = build_functional_tonnetz(system)
        role_pairs, shared_pairs = set(), set()
        for r in range(system.n):
            for j in range(system.n):
                major, minor = major_chord(system, r), minor_chord(system, j)
                if _keeps_roles(major, minor):
                    role_pairs.add(frozenset((D(r), M(j))))
                if len(common_tones(major, minor)) >= 2:
                    shared_pairs.add(frozenset((D(r), M(j))))
        edges = {frozenset(e) for e in graph.edges()}
        assert edges == role_pairs, system.label
        if system == TRITONE:
            assert shared_pairs - edges == {frozenset((D(r), M((r + 3) % 10))) for r in range(10)}
        else:
            assert edges == shared_pairs, system.label


def test_set_level_acoustic_splits_by_parity():
    graph = build_set_level_tonnetz(ACOUSTIC)
    assert all(d == 2 for _, d in graph.degree())
    parts = components(graph)
    assert len(parts) == 2
    for part in parts:
        assert len(part) == 10
        assert len({v.root % 2 for v in part}) == 1
        assert all(graph.subgraph(part).degree(v) == 2 for v in part)
    universes = parity_universes(graph)
    assert set(universes.values()) == set(parts)


def test_set_level_equals_functional_without_identity_moves():
    for system in (WIDE, TRITONE):
        set_level = {frozenset(e) for e in build_set_level_tonnetz(system).edges()}
        functional = {frozenset(e) for e in build_functional_tonnetz(system).edges()}
        assert set_level == functional, system.label


def test_hamiltonian_words_in_acoustic_graph():
    start = major_chord(ACOUSTIC, 0)
    walk = word_cycle(ACOUSTIC, start, ["P", "R"] * 10)
    assert walk.hamiltonian
    assert [c.name for c in walk.path[:4]] == ["D0", "M0", "D3", "M3"]
    assert word_cycle(ACOUSTIC, start, "(RL)^10").hamiltonian


def test_tritone_tour():
    walk = word_cycle(TRITONE, minor_chord(TRITONE, 8), TRITONE_TOUR)
    assert len(walk.word) == 20
    assert walk.closes and walk.hamiltonian


def test_tritone_short_cycle():
    walk = word_cycle(TRITONE, major_chord(TRITONE, 0), "PLPL")
    assert walk.closes
    assert not walk.hamiltonian
    assert walk.first_return == 4
    assert [c.name for c in walk.path] == ["D0", "M0", "D5", "M5", "D0"]


def test_parse_word():
    assert len(parse_word("(PR)^10")) == 20
    assert parse_word("L R (P R)^2") == tuple(Transform(c) for c in "LRPRPR")
    assert parse_word(TRITONE_TOUR) == parse_word("LR(PR)^4LR(PR)^4")
    for bad in ("PX", "(PR", "PR)", "(PR)^"):
        try:
            parse_word(bad)
        except DomainError:
            continue
        raise AssertionError(f"{bad!r} should be rejected")


def test_double_steps():
    wide = double_step_shifts(WIDE)
    assert sorted(d.shift for d in wide) == [1, 3, 4, 6, 7, 9]
    assert not has_four_cycle(wide, 10)
    assert has_four_cycle(double_step_shifts(TRITONE), 10)
    assert has_four_cycle(double_step_shifts(ACOUSTIC), 10)
    assert not has_four_cycle(double_step_shifts(CLASSICAL), 12)


def test_connection_table():
    rows = connection_table(CLASSICAL)
    assert len(rows) == 24
    first = rows[0].to_dict()
    assert first == {"chord": "D0", "neighbors": {"P": "M0", "L": "M4", "R": "M9"}}


def test_rotation_is_an_automorphism_everywhere():
    for system in ALL_SYSTEMS:
        graph = build_functional_tonnetz(system)
        for k in (1, 3):
            assert is_automorphism(graph, rotation_automorphism(graph, k)), system.label


def test_reflection():
    mapping = reflection_automorphism(ACOUSTIC)
    assert mapping is not None
    assert mapping[D(3)] == D(7)
    assert is_automorphism(build_functional_tonnetz(ACOUSTIC), mapping)
    for system in (TRITONE, WIDE, CLASSICAL):
        reflection = reflection_automorphism(system)
        if reflection is not None:
            assert is_automorphism(build_functional_tonnetz(system), reflection)


ALL_TESTS = [
    test_common_tones,
    test_offsets_by_system,
    test_acoustic_offsets_flag_identity,
    test_tritone_offsets_follow_tone_roles,
    test_offsets_of_diminished_and_collapsed_systems,
    test_transform_examples,
    test_involution_and_mode_alternation,
    test_functional_graph_shapes,
    test_edge_attributes,
    test_offset_edges_match_exhaustive_common_tones,
    test_set_level_acoustic_splits_by_parity,
    test_set_level_equals_functional_without_identity_moves,
    test_hamiltonian_words_in_acoustic_graph,
    test_tritone_tour,
    test_tritone_short_cycle,
    test_parse_word,
    test_double_steps,
    test_connection_table,
    test_rotation_is_an_automorphism_everywhere,
    test_reflection,
]


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Test tonnetz module")
    parser.add_argument("--verbose", "-v", action="store_true", help="Print tracebacks")
    args = parser.parse_args()

    success = run_suite("TONNETZ", ALL_TESTS, verbose=args.verbose)
    sys.exit(0 if success else 1)
