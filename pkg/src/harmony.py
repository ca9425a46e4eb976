"""Major/minor chord systems in n-TET.

A harmonic system fixes the fifth q, the major third t and the minor third s
in Z_n with t + s = q. Chords are root-position triples; every value is a
residue mod n.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple, Optional

from src.errors import DegenerateChordError, DomainError

NOTE_NAMES_12 = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")


class Mode(IntEnum):
    MAJOR = 0
    MINOR = 1

    @property
    def symbol(self) -> str:
        return "D" if self is Mode.MAJOR else "M"

    @property
    def opposite(self) -> "Mode":
        return Mode.MINOR if self is Mode.MAJOR else Mode.MAJOR


class Vertex(NamedTuple):
    """Graph key of a chord; sorts D_0 < ... < D_{n-1} < M_0 < ... < M_{n-1}."""
    mode: Mode
    root: int

    @property
    def name(self) -> str:
        return f"{self.mode.symbol}{self.root}"

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        text = text.strip()
        symbols = {"D": Mode.MAJOR, "M": Mode.MINOR}
        if len(text) < 2 or text[0] not in symbols or not text[1:].isdigit():
            raise DomainError(f"chord name must look like D3 or M7, got {text!r}")
        return cls(symbols[text[0]], int(text[1:]))


@dataclass(frozen=True)
class HarmonicSystem:
    """The tuple (n, q, t, s, delta) with t + s = q and t - s = delta (mod n)."""
    n: int
    q: int
    t: int
    s: int
    delta: Optional[int] = None

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"modulus must be >= 2, got {self.n}")
        n = self.n
        for name in ("q", "t", "s"):
            object.__setattr__(self, name, getattr(self, name) % n)
        if (self.t + self.s) % n != self.q:
            raise DomainError(f"t + s must equal q mod {n}: {self.t} + {self.s} != {self.q}")
        delta = (self.t - self.s) % n
        if self.delta is not None and self.delta % n != delta:
            raise DomainError(f"delta {self.delta} disagrees with t - s = {delta} (mod {n})")
        object.__setattr__(self, "delta", delta)

    @classmethod
    def from_thirds(cls, n: int, q: int, t: int, s: int) -> "HarmonicSystem":
        return cls(n=n, q=q, t=t, s=s)

    @property
    def is_trivial(self) -> bool:
        return 0 in (self.q, self.t, self.s)

    @property
    def label(self) -> str:
        return f"({self.n},{self.q},{self.t},{self.s})"

    def to_dict(self) -> dict:
        return {"n": self.n, "q": self.q, "t": self.t, "s": self.s, "delta": self.delta}


@dataclass(frozen=True, order=True)
class Chord:
    """Root-position triad; ``tones`` is the ordered triple (root, third, fifth)."""
    mode: Mode
    root: int
    tones: tuple[int, int, int]
    n: int

    @property
    def pitches(self) -> frozenset[int]:
        return frozenset(self.tones)

    @property
    def vertex(self) -> Vertex:
        return Vertex(self.mode, self.root)

    @property
    def name(self) -> str:
        return self.vertex.name

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode.name.lower(),
            "root": self.root,
            "pitches": sorted(self.pitches),
        }


def _chord(system: HarmonicSystem, mode: Mode, r: int) -> Chord:
    n = system.n
    root = r % n
    third = system.t if mode is Mode.MAJOR else system.s
    tones = (root, (root + third) % n, (root + system.q) % n)
    if len(set(tones)) < 3:
        raise DegenerateChordError(
            f"{mode.symbol}{root} collapses to {sorted(set(tones))} in system {system.label}"
        )
    return Chord(mode=mode, root=root, tones=tones, n=n)


def major_chord(system: HarmonicSystem, r: int) -> Chord:
    return _chord(system, Mode.MAJOR, r)


def minor_chord(system: HarmonicSystem, r: int) -> Chord:
    return _chord(system, Mode.MINOR, r)


def chord_at(system: HarmonicSystem, vertex: Vertex) -> Chord:
    return _chord(system, vertex.mode, vertex.root)


def chord_table(system: HarmonicSystem) -> list[Chord]:
    """Every major chord, then every minor chord, in root order."""
    return [major_chord(system, r) for r in range(system.n)] + [
        minor_chord(system, r) for r in range(system.n)
    ]


def solve_thirds(n: int, q: int, delta: int) -> frozenset[tuple[int, int]]:
    """All (t, s) in Z_n^2 with t + s = q and t - s = delta.

    Trivial pairs (t = 0 or s = 0) are included; ``is_trivial_pair`` flags them.
    """
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    q, delta = q % n, delta % n
    solutions = set()
    for t in range(n):
        s = (q - t) % n
        if (t - s) % n == delta:
            solutions.add((t, s))
    return frozenset(solutions)


def is_trivial_pair(n: int, t: int, s: int) -> bool:
    return t % n == 0 or s % n == 0


def enumerate_systems(n: int, q: int) -> dict[int, frozenset[tuple[int, int]]]:
    """Solution sets of the thirds congruences for every delta in Z_n."""
    return {delta: solve_thirds(n, q, delta) for delta in range(n)}


def interval_vector(chord: Chord) -> tuple[int, int, int]:
    """Step gaps root -> third -> fifth -> root an octave up."""
    root, third, fifth = chord.tones
    n = chord.n
    return ((third - root) % n, (fifth - third) % n, (root - fifth) % n)


def is_cyclic_rotation(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return len(a) == len(b) and any(a[i:] + a[:i] == b for i in range(len(a)))


def detect_modal_degeneracy(system: HarmonicSystem) -> Optional[int]:
    """Smallest shift sigma with pitches(D_r) == pitches(M_{r+sigma}) for every root.

    Returns None when no such shift exists or when the system's chords collapse.
    """
    try:
        majors = [major_chord(system, r) for r in range(system.n)]
        minors = [minor_chord(system, r) for r in range(system.n)]
    except DegenerateChordError:
        return None

    n = system.n
    for sigma in range(n):
        if all(majors[r].pitches == minors[(r + sigma) % n].pitches for r in range(n)):
            return sigma
    return None


def fifth_generators(n: int, q: int, max_p: int = 20) -> list[int]:
    """Values p < max_p whose harmonic generator sits at label q of the n-step scale."""
    from src.tuning import build_scale

    return [p for p in range(2, max_p) if build_scale(p, n).generator_label == q % n]


def pitch_name(pitch: int, n: int = 12) -> str:
    if n != 12:
        return str(pitch % n)
    return NOTE_NAMES_12[pitch % 12]


@dataclass(frozen=True)
class SolutionBranch:
    """One (t, s) solution of the thirds congruences for a given delta."""
    delta: int
    t: int
    s: int
    trivial: bool
    named: Optional[str] = None

    def to_dict(self) -> dict:
        return {"delta": self.delta, "t": self.t, "s": self.s,
                "trivial": self.trivial, "named": self.named}


def system_family(n: int, q: int, names: Optional[dict[tuple[int, int], str]] = None) -> list[SolutionBranch]:
    """Every solution branch for (n, q), ordered by delta then t.

    ``names`` maps (t, s) to a catalog name; matching branches carry it.
    """
    names = names or {}
    branches = []
    for delta, solutions in enumerate_systems(n, q).items():
        for t, s in sorted(solutions):
            branches.append(
                SolutionBranch(
                    delta=delta,
                    t=t,
                    s=s,
                    trivial=is_trivial_pair(n, t, s),
                    named=names.get((t, s)),
                )
            )
    return branches
