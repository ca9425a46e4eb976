"""Pydantic schemas for CLI reports."""

from __future__ import annotations

import json

from pydantic import BaseModel, Field


class SystemSection(BaseModel):
    n: int = Field(ge=2)
    q: int
    t: int
    s: int
    delta: int


class ScanRow(BaseModel):
    p: int
    u: int
    n: int
    generator: str
    comma: str
    tempered_index: str


class ScanReport(BaseModel):
    max_p: int
    max_n: int
    max_u: int
    bound: str
    rows: list[ScanRow]


class ScaleReport(BaseModel):
    p: int
    n: int
    lowest_power: int
    generator: str
    generator_label: int | None = None
    intervals: list[str]
    powers: list[int]


class BranchRow(BaseModel):
    delta: int
    t: int
    s: int
    trivial: bool
    named: str | None = None


class SolveReport(BaseModel):
    n: int
    q: int
    delta: int | None = None
    q_generators: list[int] = Field(default_factory=list)
    by_delta: dict[int, list[list[int]]] = Field(default_factory=dict)
    solutions: list[BranchRow]


class ChordRow(BaseModel):
    name: str
    mode: str
    root: int
    pitches: list[int]
    interval_vector: list[int]


class ChordsReport(BaseModel):
    system: SystemSection
    chords: list[ChordRow]


class EdgeRow(BaseModel):
    source: str
    target: str
    label: str
    common_tones: int


class BuildReport(BaseModel):
    system: SystemSection
    kind: str
    offsets: dict[str, int]
    vertices: list[str]
    edge_count: int
    edges: list[EdgeRow]


class DegeneracySection(BaseModel):
    degenerate: bool
    sigma: int | None = None


class SetLevelSection(BaseModel):
    components: int
    component_sizes: list[int]
    degrees: list[int]


class FunctionalSection(BaseModel):
    order: int
    edge_count: int
    regular_degree: int | None = None
    bipartite: bool
    girth: int | None = None
    hamiltonian: bool
    hamiltonian_witness: list[str] | None = None
    four_cycle_classes: int
    shortest_cycle_count: int = 0
    shortest_cycle_classes: int = 0
    chiral_cycle_classes: int = 0
    aut_order: int
    dihedral: bool | None = None


class CirculantSection(BaseModel):
    jumps: list[int]
    verified: bool
    isomorphic: bool


class ConfigurationSection(BaseModel):
    is_n3: bool
    self_dual: bool
    cyclic: bool
    desargues: bool = False
    reasons: list[str] = Field(default_factory=list)


class AnalysisReport(BaseModel):
    system: SystemSection
    degeneracy: DegeneracySection
    offsets: list[int]
    offset_labels: dict[str, int]
    set_level: SetLevelSection
    functional: FunctionalSection
    circulant: CirculantSection
    configuration: ConfigurationSection


class ConfigVerdictReport(BaseModel):
    system: SystemSection
    is_n3: bool
    self_dual: bool
    cyclic: bool
    reasons: list[str]
    girth: int | None = None
    circulant_jumps: list[int]
    desargues: bool = False


class CensusReport(BaseModel):
    modulus: int
    members: list[list[int]]
    rejected: list[list[int]]
    classes: list[list[list[int]]]
    canonical_forms: list[list[int]]
    wide_member: list[int] | None = None
    wide_class: int | None = None
    desargues_classes: list[int] = Field(default_factory=list)


def dump_report(report: BaseModel) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"
