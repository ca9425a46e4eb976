"""P/L/R offsets and the Tonnetz graphs built from them.

Vertices are ``Vertex(mode, root)`` tuples. Both builders return frozen
``networkx.Graph`` objects with these attributes:

- node: ``mode``, ``root``, ``name``, ``pitches``
- edge: ``label`` (``"P"``, ``"L"`` or ``"R"``), ``common_tones``
- graph: ``n``, ``kind``, ``system``, ``offsets``
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, Union

import networkx as nx

from src.errors import DegenerateSystemError, DomainError
from src.harmony import Chord, HarmonicSystem, Mode, Vertex, chord_at, major_chord, minor_chord


class Transform(str, Enum):
    P = "P"
    L = "L"
    R = "R"


# (major position, minor position) pairs each transform keeps;
# positions in Chord.tones: 0 root, 1 third, 2 fifth
ROLE_MAPS = {
    Transform.P: ((0, 0), (2, 2)),
    Transform.L: ((1, 0), (2, 1)),
    Transform.R: ((0, 1), (1, 2)),
}

_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")


@dataclass(frozen=True)
class PlrOffsets:
    """Root shifts k with D_r adjacent to M_{r+k}, one per transform."""
    n: int
    p_offset: int
    l_offset: int
    r_offset: int
    p_common: int = 2
    l_common: int = 2
    r_common: int = 2

    def offset(self, op: Transform) -> int:
        return {Transform.P: self.p_offset, Transform.L: self.l_offset, Transform.R: self.r_offset}[op]

    def common_tone_count(self, op: Transform) -> int:
        return {Transform.P: self.p_common, Transform.L: self.l_common, Transform.R: self.r_common}[op]

    def items(self) -> list[tuple[Transform, int]]:
        return [(op, self.offset(op)) for op in Transform]

    def as_set(self) -> frozenset[int]:
        return frozenset(k for _, k in self.items())

    def sorted_offsets(self) -> list[int]:
        return sorted(self.as_set())

    @property
    def identity_transforms(self) -> tuple[Transform, ...]:
        """Transforms whose endpoints share all three tones."""
        return tuple(op for op in Transform if self.common_tone_count(op) == 3)

    def to_dict(self) -> dict:
        return {
            "P": self.p_offset,
            "L": self.l_offset,
            "R": self.r_offset,
            "identity_at_set_level": [op.value for op in self.identity_transforms],
        }


def common_tones(a: Chord, b: Chord) -> frozenset[int]:
    if a.n != b.n:
        raise DomainError(f"chords come from different moduli: {a.n} and {b.n}")
    return a.pitches & b.pitches


def role_match(major: Chord, minor: Chord) -> Optional[Transform]:
    """The transform whose tone roles carry ``major`` onto ``minor``, if any.

    P keeps root and fifth in place, L moves the major third and fifth to the
    minor root and third, R moves the major root and third to the minor third
    and fifth. Sharing two pitches in other roles does not count.
    """
    if major.n != minor.n:
        raise DomainError(f"chords come from different moduli: {major.n} and {minor.n}")
    for op, pairs in ROLE_MAPS.items():
        if all(major.tones[a] == minor.tones[b] for a, b in pairs):
            return op
    return None


def derive_plr_offsets(system: HarmonicSystem) -> PlrOffsets:
    """Find the minor root offset of D_0's P, L and R neighbours by tone role.

    An offset whose chords share all three tones (modal identity) keeps its
    role label and is reported through ``identity_transforms``.
    """
    d0 = major_chord(system, 0)

    labels: dict[Transform, int] = {}
    for k in range(system.n):
        op = role_match(d0, minor_chord(system, k))
        if op is not None and op not in labels:
            labels[op] = k

    missing = [op.value for op in Transform if op not in labels]
    if missing:
        raise DegenerateSystemError(f"{system.label} has no {'/'.join(missing)} neighbour")
    if len(set(labels.values())) < 3:
        raise DegenerateSystemError(
            f"{system.label} has coinciding offsets {sorted(labels.values())}"
        )

    counts = {op: len(common_tones(d0, minor_chord(system, k))) for op, k in labels.items()}
    return PlrOffsets(
        n=system.n,
        p_offset=labels[Transform.P],
        l_offset=labels[Transform.L],
        r_offset=labels[Transform.R],
        p_common=counts[Transform.P],
        l_common=counts[Transform.L],
        r_common=counts[Transform.R],
    )


def neighbor(vertex: Vertex, op: Transform, offsets: PlrOffsets) -> Vertex:
    k = offsets.offset(op)
    if vertex.mode is Mode.MAJOR:
        return Vertex(Mode.MINOR, (vertex.root + k) % offsets.n)
    return Vertex(Mode.MAJOR, (vertex.root - k) % offsets.n)


def apply_transform(
    system: HarmonicSystem,
    chord: Chord,
    op: Union[Transform, str],
    offsets: Optional[PlrOffsets] = None,
) -> Chord:
    if chord.n != system.n:
        raise DomainError(f"chord {chord.name} is from Z_{chord.n}, system is {system.label}")
    offsets = offsets or derive_plr_offsets(system)
    return chord_at(system, neighbor(chord.vertex, Transform(op), offsets))


def _empty_tonnetz(system: HarmonicSystem, kind: str, offsets: dict) -> nx.Graph:
    graph = nx.Graph(n=system.n, kind=kind, system=system.to_dict(), offsets=offsets)
    for mode in Mode:
        for r in range(system.n):
            chord = chord_at(system, Vertex(mode, r))
            graph.add_node(
                chord.vertex,
                mode=mode,
                root=r,
                name=chord.name,
                pitches=tuple(sorted(chord.pitches)),
            )
    return graph


def _add_edges(graph: nx.Graph, n: int, labelled: Iterable[tuple[str, int, int]]) -> None:
    for label, k, count in labelled:
        for r in range(n):
            major, minor = Vertex(Mode.MAJOR, r), Vertex(Mode.MINOR, (r + k) % n)
            if graph.has_edge(major, minor):
                raise DegenerateSystemError(f"parallel edges between {major.name} and {minor.name}")
            graph.add_edge(major, minor, label=label, common_tones=count)


def build_functional_tonnetz(system: HarmonicSystem) -> nx.Graph:
    """Cubic bipartite Tonnetz: D_r joined to M_{r+k} for each P/L/R offset."""
    offsets = derive_plr_offsets(system)
    graph = _empty_tonnetz(system, "functional", {op.value: k for op, k in offsets.items()})
    _add_edges(
        graph,
        system.n,
        ((op.value, k, offsets.common_tone_count(op)) for op, k in offsets.items()),
    )
    return nx.freeze(graph)


def build_set_level_tonnetz(system: HarmonicSystem) -> nx.Graph:
    """Tonnetz restricted to P/L/R offsets that share exactly two tones."""
    offsets = derive_plr_offsets(system)
    labelled = [
        (op.value, k, 2) for op, k in offsets.items() if offsets.common_tone_count(op) == 2
    ]
    graph = _empty_tonnetz(system, "set-level", {label: k for label, k, _ in labelled})
    _add_edges(graph, system.n, labelled)
    return nx.freeze(graph)


def parse_word(text: str) -> tuple[Transform, ...]:
    """Expand words such as ``L R (P R)^4`` or ``L·R·(P·R)⁴`` into letters."""
    cleaned = re.sub(r"[\s·.,*]", "", text.upper())
    cleaned = re.sub(r"([⁰¹²³⁴⁵⁶⁷⁸⁹]+)", lambda m: "^" + m.group(1).translate(_SUPERSCRIPTS), cleaned)

    def parse_sequence(i: int) -> tuple[list[Transform], int]:
        letters: list[Transform] = []
        while i < len(cleaned) and cleaned[i] != ")":
            char = cleaned[i]
            if char in "PLR":
                item, i = [Transform(char)], i + 1
            elif char == "(":
                item, i = parse_sequence(i + 1)
                if i >= len(cleaned) or cleaned[i] != ")":
                    raise DomainError(f"unbalanced parentheses in word {text!r}")
                i += 1
            else:
                raise DomainError(f"unexpected {char!r} in word {text!r}")
            if i < len(cleaned) and cleaned[i] == "^":
                match = re.match(r"\^(\d+)", cleaned[i:])
                if not match:
                    raise DomainError(f"missing exponent in word {text!r}")
                item = item * int(match.group(1))
                i += match.end()
            letters.extend(item)
        return letters, i

    letters, end = parse_sequence(0)
    if end != len(cleaned):
        raise DomainError(f"unbalanced parentheses in word {text!r}")
    return tuple(letters)


@dataclass(frozen=True)
class WordWalk:
    start: Chord
    word: tuple[Transform, ...]
    path: tuple[Chord, ...]
    closes: bool
    hamiltonian: bool
    first_return: Optional[int]

    def to_dict(self) -> dict:
        return {
            "start": self.start.name,
            "word": "".join(op.value for op in self.word),
            "path": [chord.name for chord in self.path],
            "closes": self.closes,
            "hamiltonian": self.hamiltonian,
            "first_return": self.first_return,
        }


def word_cycle(
    system: HarmonicSystem,
    start: Chord,
    word: Union[str, Sequence[Union[Transform, str]]],
) -> WordWalk:
    """Walk ``word`` from ``start``, letters applied left to right."""
    letters = parse_word(word) if isinstance(word, str) else tuple(Transform(op) for op in word)
    offsets = derive_plr_offsets(system)

    path = [start]
    first_return = None
    for step, op in enumerate(letters, start=1):
        path.append(apply_transform(system, path[-1], op, offsets))
        if first_return is None and path[-1].vertex == start.vertex:
            first_return = step

    closes = len(letters) > 0 and path[-1].vertex == start.vertex
    visited = {chord.vertex for chord in path[:-1]}
    hamiltonian = closes and len(letters) == 2 * system.n and len(visited) == 2 * system.n
    return WordWalk(
        start=start,
        word=letters,
        path=tuple(path),
        closes=closes,
        hamiltonian=hamiltonian,
        first_return=first_return,
    )


@dataclass(frozen=True)
class DoubleStep:
    """D_r -first-> M -second-> D_{r+shift}."""
    first: Transform
    second: Transform
    shift: int


def double_step_shifts(system: HarmonicSystem) -> list[DoubleStep]:
    offsets = derive_plr_offsets(system)
    steps = [
        DoubleStep(first=a, second=b, shift=(offsets.offset(a) - offsets.offset(b)) % system.n)
        for a in Transform
        for b in Transform
        if a is not b
    ]
    return sorted(steps, key=lambda d: (d.shift, d.first.value, d.second.value))


def has_four_cycle(steps: Sequence[DoubleStep], n: int) -> bool:
    """True when two double-steps return to the start without backtracking.

    The same double-step may be taken twice.
    """
    for a in steps:
        for b in steps:
            if (a.shift + b.shift) % n == 0 and a.second is not b.first and b.second is not a.first:
                return True
    return False


@dataclass(frozen=True)
class ConnectionRow:
    chord: Chord
    neighbors: tuple[tuple[Transform, Chord], ...]

    def to_dict(self) -> dict:
        return {
            "chord": self.chord.name,
            "neighbors": {op.value: other.name for op, other in self.neighbors},
        }


def connection_table(system: HarmonicSystem) -> list[ConnectionRow]:
    offsets = derive_plr_offsets(system)
    rows = []
    for mode in Mode:
        for r in range(system.n):
            chord = chord_at(system, Vertex(mode, r))
            rows.append(
                ConnectionRow(
                    chord=chord,
                    neighbors=tuple((op, apply_transform(system, chord, op, offsets)) for op in Transform),
                )
            )
    return rows


def parity_universes(graph: nx.Graph) -> dict[int, frozenset[Vertex]]:
    """Vertices split by root parity (0 even, 1 odd)."""
    universes: dict[int, set] = {0: set(), 1: set()}
    for vertex in graph:
        universes[graph.nodes[vertex]["root"] % 2].add(vertex)
    return {parity: frozenset(members) for parity, members in universes.items()}


def rotation_automorphism(graph: nx.Graph, k: int = 1) -> dict[Vertex, Vertex]:
    """(mode, r) -> (mode, r + k)."""
    n = graph.graph["n"]
    return {v: Vertex(v.mode, (v.root + k) % n) for v in graph}


def reflection_automorphism(system: HarmonicSystem) -> Optional[dict[Vertex, Vertex]]:
    """D_r -> D_{-r}, M_r -> M_{c-r} for the first c mapping the offsets onto themselves."""
    n = system.n
    offsets = derive_plr_offsets(system).as_set()
    for c in range(n):
        if frozenset((c - k) % n for k in offsets) == offsets:
            mapping = {}
            for r in range(n):
                mapping[Vertex(Mode.MAJOR, r)] = Vertex(Mode.MAJOR, (-r) % n)
                mapping[Vertex(Mode.MINOR, r)] = Vertex(Mode.MINOR, (c - r) % n)
            return mapping
    return None
