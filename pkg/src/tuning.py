"""Pythagorean n-TET scales built from harmonic generators.

Intervals are exact ``Fraction`` values. Real-valued quantities (commas,
tempered indices) are ``Decimal`` values evaluated with ``DECIMAL_DIGITS``
significant digits so that rankings of nearly equal commas stay stable.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, replace
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

from tqdm import tqdm

from src.errors import DegenerateScaleError, DomainError

Rational = Fraction

DECIMAL_DIGITS = 60
RELATIVE_TOLERANCE = Decimal("1e-20")


def reduce_to_octave(x: Fraction | int) -> tuple[Fraction, int]:
    """Return ``(x * 2**m, m)`` with the reduced value in ``[1, 2)``."""
    x = Fraction(x)
    if x <= 0:
        raise DomainError(f"cannot reduce non-positive ratio {x} to the octave")

    m = x.denominator.bit_length() - x.numerator.bit_length()
    reduced = x * Fraction(2) ** m
    while reduced < 1:
        reduced *= 2
        m += 1
    while reduced >= 2:
        reduced /= 2
        m -= 1
    return reduced, m


def harmonic_generator(p: int) -> Fraction:
    """The generator (2p-1)/2^l of harmonic type, strictly inside (1, 2)."""
    if p < 2:
        raise DomainError(f"harmonic generator needs p >= 2, got {p}")
    generator, _ = reduce_to_octave(2 * p - 1)
    return generator


def default_lowest_power(n: int) -> int:
    """Lowest exponent of the centred window of n consecutive generator powers."""
    return -((n + 1) // 2 - 1)


def decimal_of(x: Fraction) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        return Decimal(x.numerator) / Decimal(x.denominator)


def decimal_to_string(value: Decimal) -> str:
    return str(value)


@dataclass(frozen=True)
class TuningSystem:
    """An n-step Pythagorean scale with labelled intervals."""
    p: Optional[int]
    n: int
    generator: Fraction
    intervals: tuple[Fraction, ...]
    powers: tuple[int, ...]
    generator_label: Optional[int]
    u: Optional[int] = None
    comma: Optional[Decimal] = None

    def label_of(self, ratio: Fraction) -> Optional[int]:
        reduced, _ = reduce_to_octave(ratio)
        try:
            return self.intervals.index(reduced)
        except ValueError:
            return None

    def with_octaves(self, u: int) -> "TuningSystem":
        """Attach the octave count u and the resulting comma."""
        return replace(self, u=u, comma=comma(self.generator, u, self.n))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "u": self.u,
            "generator": str(self.generator),
            "generator_label": self.generator_label,
            "intervals": [str(r) for r in self.intervals],
            "powers": list(self.powers),
            "comma": decimal_to_string(self.comma) if self.comma is not None else None,
        }


def scale_from_generator(
    generator: Fraction,
    n: int,
    lowest_power: Optional[int] = None,
    p: Optional[int] = None,
) -> TuningSystem:
    """Reduce n consecutive powers of ``generator`` and label them by pitch.

    The default window is centred on g^0 (g^-4 .. g^5 for n=10,
    g^-5 .. g^6 for n=12), which is the window the classical tables use.
    """
    generator = Fraction(generator)
    if n < 1:
        raise DomainError(f"a scale needs n >= 1 steps, got {n}")
    if generator <= 0:
        raise DomainError(f"generator must be positive, got {generator}")
    if lowest_power is None:
        lowest_power = default_lowest_power(n)

    by_interval: dict[Fraction, int] = {}
    for k in range(lowest_power, lowest_power + n):
        reduced, _ = reduce_to_octave(generator ** k)
        if reduced in by_interval:
            raise DegenerateScaleError(
                f"g^{by_interval[reduced]} and g^{k} both reduce to {reduced} (g={generator}, n={n})"
            )
        by_interval[reduced] = k

    intervals = tuple(sorted(by_interval))
    reduced_generator, _ = reduce_to_octave(generator)
    generator_label = intervals.index(reduced_generator) if reduced_generator in by_interval else None

    return TuningSystem(
        p=p,
        n=n,
        generator=reduced_generator,
        intervals=intervals,
        powers=tuple(by_interval[r] for r in intervals),
        generator_label=generator_label,
    )


def build_scale(p: int, n: int, lowest_power: Optional[int] = None) -> TuningSystem:
    return scale_from_generator(harmonic_generator(p), n, lowest_power=lowest_power, p=p)


def comma(g: Fraction, u: int, n: int) -> Decimal:
    """|g / 2^(u/n) - 1| to DECIMAL_DIGITS significant digits."""
    if n < 1 or u < 1:
        raise DomainError(f"comma needs n >= 1 and u >= 1, got u={u}, n={n}")
    g = Fraction(g)
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        step = Decimal(2) ** (Decimal(u) / Decimal(n))
        return abs(Decimal(g.numerator) / Decimal(g.denominator) / step - 1)


def classical_comma_bound() -> Decimal:
    """Comma of the 12-step, 7-octave system built on 3/2."""
    return comma(Fraction(3, 2), 7, 12)


def tempered_index(system: TuningSystem) -> Decimal:
    """Mean relative deviation of label k from the tempered step 2^(k/n)."""
    n = system.n
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        total = Decimal(0)
        for k, interval in enumerate(system.intervals):
            tempered = Decimal(2) ** (Decimal(k) / Decimal(n))
            total += abs(decimal_of(interval) / tempered - 1)
        return total / n


def within_bound(value: Decimal, bound: Decimal) -> bool:
    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        return value <= bound * (1 + RELATIVE_TOLERANCE)


@dataclass(frozen=True)
class ScanEntry:
    p: int
    u: int
    n: int
    generator: Fraction
    comma: Decimal
    tempered_index: Decimal

    def sort_key(self) -> tuple:
        return (self.comma, self.p, self.n, self.u)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "u": self.u,
            "n": self.n,
            "generator": str(self.generator),
            "comma": decimal_to_string(self.comma),
            "tempered_index": decimal_to_string(self.tempered_index),
        }


def best_octaves(g: Fraction, n: int, max_u: int) -> tuple[int, Decimal]:
    """The u in 1..max_u minimising the comma; smaller u wins ties."""
    best_u, best_delta = 1, comma(g, 1, n)
    for u in range(2, max_u + 1):
        delta = comma(g, u, n)
        if delta < best_delta:
            best_u, best_delta = u, delta
    return best_u, best_delta


def scan_systems(max_p: int, max_n: int, max_u: int, progress: bool = False) -> list[ScanEntry]:
    """Admissible (p, u, n) triples with 2 <= p < max_p, n <= max_n, u <= max_u.

    A triple is admissible when its comma does not exceed the classical
    12-step comma. Results are sorted by comma, then p, n, u.
    """
    if min(max_p, max_n, max_u) < 1:
        raise DomainError(f"scan bounds must be >= 1, got p<{max_p}, n<={max_n}, u<={max_u}")

    bound = classical_comma_bound()
    entries: list[ScanEntry] = []
    for p in tqdm(range(2, max_p), desc="scan", unit="p", disable=not progress, file=sys.stderr):
        g = harmonic_generator(p)
        for n in range(1, max_n + 1):
            u, delta = best_octaves(g, n, max_u)
            if not within_bound(delta, bound):
                continue
            entries.append(
                ScanEntry(
                    p=p,
                    u=u,
                    n=n,
                    generator=g,
                    comma=delta,
                    tempered_index=tempered_index(build_scale(p, n)),
                )
            )
    return sorted(entries, key=ScanEntry.sort_key)


def format_interval_table(system: TuningSystem) -> str:
    """Two-row label/interval table, generator label marked with '*'."""
    labels = []
    values = []
    for label, interval in enumerate(system.intervals):
        mark = "*" if label == system.generator_label else ""
        text = str(interval)
        width = max(len(text), len(str(label)) + len(mark))
        labels.append(f"{label}{mark}".rjust(width))
        values.append(text.rjust(width))
    return "Label    | " + " | ".join(labels) + "\nInterval | " + " | ".join(values)
