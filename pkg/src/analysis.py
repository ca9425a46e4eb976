"""Report builders: run the library pipeline and fill the CLI schemas."""

from __future__ import annotations

import math
from typing import Optional

import networkx as nx

from src.circulant_config import (
    CENSUS_MODULUS,
    check_n3_configuration,
    circulant_graph,
    enumerate_cyclic_103,
    interleave_map,
    jump_set_from_offsets,
    levi_graph_from_triple,
    verify_circulant_embedding,
)
from src.graphlab import (
    PermutationGroup,
    are_isomorphic,
    automorphism_group,
    chiral_orbits,
    classify_cycles,
    components,
    enumerate_cycles,
    girth,
    invariant_report,
    is_dihedral,
)
from src.harmony import (
    HarmonicSystem,
    chord_table,
    detect_modal_degeneracy,
    enumerate_systems,
    fifth_generators,
    interval_vector,
    solve_thirds,
    system_family,
)
from src.schemas import (
    AnalysisReport,
    BranchRow,
    BuildReport,
    CensusReport,
    ChordRow,
    ChordsReport,
    CirculantSection,
    ConfigurationSection,
    ConfigVerdictReport,
    DegeneracySection,
    EdgeRow,
    FunctionalSection,
    ScaleReport,
    ScanReport,
    ScanRow,
    SetLevelSection,
    SolveReport,
    SystemSection,
)
from src.system_catalog import SystemCatalog
from src.tonnetz import (
    build_functional_tonnetz,
    build_set_level_tonnetz,
    derive_plr_offsets,
    rotation_automorphism,
)
from src.tuning import (
    build_scale,
    classical_comma_bound,
    decimal_to_string,
    default_lowest_power,
    scan_systems,
)


def system_section(system: HarmonicSystem) -> SystemSection:
    return SystemSection(**system.to_dict())


def scan_report(max_p: int, max_n: int, max_u: int, progress: bool = False) -> ScanReport:
    entries = scan_systems(max_p, max_n, max_u, progress=progress)
    return ScanReport(
        max_p=max_p,
        max_n=max_n,
        max_u=max_u,
        bound=decimal_to_string(classical_comma_bound()),
        rows=[ScanRow(**entry.to_dict()) for entry in entries],
    )


def scale_report(p: int, n: int, lowest_power: Optional[int] = None) -> ScaleReport:
    system = build_scale(p, n, lowest_power=lowest_power)
    return ScaleReport(
        p=p,
        n=n,
        lowest_power=default_lowest_power(n) if lowest_power is None else lowest_power,
        generator=str(system.generator),
        generator_label=system.generator_label,
        intervals=[str(r) for r in system.intervals],
        powers=list(system.powers),
    )


def _catalog_names(catalog: SystemCatalog, n: int, q: int) -> dict[tuple[int, int], str]:
    names = {}
    for name in catalog.names():
        system = catalog.get(name)
        if system.n == n and system.q == q % n:
            names[(system.t, system.s)] = name
    return names


def solve_report(n: int, q: int, delta: Optional[int], catalog: Optional[SystemCatalog] = None) -> SolveReport:
    """Solutions for one delta, or every branch of the family when delta is None."""
    catalog = catalog or SystemCatalog()
    names = _catalog_names(catalog, n, q)
    branches = system_family(n, q, names)
    if delta is None:
        by_delta = enumerate_systems(n, q)
    else:
        by_delta = {delta % n: solve_thirds(n, q, delta)}
        branches = [b for b in branches if (b.t, b.s) in by_delta[delta % n]]
    return SolveReport(
        n=n,
        q=q % n,
        delta=None if delta is None else delta % n,
        q_generators=fifth_generators(n, q),
        by_delta={d: [list(pair) for pair in sorted(pairs)] for d, pairs in by_delta.items()},
        solutions=[BranchRow(**b.to_dict()) for b in branches],
    )


def chords_report(system: HarmonicSystem) -> ChordsReport:
    return ChordsReport(
        system=system_section(system),
        chords=[
            ChordRow(**chord.to_dict(), interval_vector=list(interval_vector(chord)))
            for chord in chord_table(system)
        ],
    )


def build_report(system: HarmonicSystem, graph: nx.Graph) -> BuildReport:
    pairs = sorted(
        (tuple(sorted((u, v))) + (data,) for u, v, data in graph.edges(data=True)),
        key=lambda edge: edge[:2],
    )
    edges = [
        EdgeRow(source=a.name, target=b.name, label=data["label"], common_tones=data["common_tones"])
        for a, b, data in pairs
    ]
    return BuildReport(
        system=system_section(system),
        kind=graph.graph["kind"],
        offsets=dict(sorted(graph.graph["offsets"].items())),
        vertices=[v.name for v in sorted(graph)],
        edge_count=graph.number_of_edges(),
        edges=edges,
    )


def four_cycle_class_count(graph: nx.Graph) -> int:
    """Oriented 4-cycle orbits under the rotation r -> r + 1."""
    cycles = enumerate_cycles(graph, 4)
    if not cycles:
        return 0
    return len(classify_cycles(cycles, [rotation_automorphism(graph, 1)], oriented=True))


def shortest_cycle_orbits(graph: nx.Graph, group: PermutationGroup) -> tuple[int, list[list[tuple]]]:
    """Girth-length cycles and their oriented orbits under the full automorphism group."""
    length = girth(graph)
    if math.isinf(length):
        return 0, []
    cycles = enumerate_cycles(graph, int(length))
    return len(cycles), classify_cycles(cycles, group.mappings(), oriented=True)


def analyze_system(system: HarmonicSystem) -> AnalysisReport:
    offsets = derive_plr_offsets(system)
    sigma = detect_modal_degeneracy(system)

    set_level = build_set_level_tonnetz(system)
    parts = components(set_level)

    functional = build_functional_tonnetz(system)
    group = automorphism_group(functional)
    invariants = invariant_report(functional, group=group)
    cycle_count, cycle_orbits = shortest_cycle_orbits(functional, group)
    dihedral = is_dihedral(group, system.n) if group.order == 2 * system.n else None

    descriptor = jump_set_from_offsets(offsets)
    verified = verify_circulant_embedding(functional, interleave_map(system), descriptor)
    isomorphic = are_isomorphic(functional, circulant_graph(descriptor)) is not None

    verdict = check_n3_configuration(functional, group=group)
    finite_girth = invariants.to_dict()["girth"]

    return AnalysisReport(
        system=system_section(system),
        degeneracy=DegeneracySection(degenerate=sigma is not None, sigma=sigma),
        offsets=offsets.sorted_offsets(),
        offset_labels={op.value: k for op, k in offsets.items()},
        set_level=SetLevelSection(
            components=len(parts),
            component_sizes=sorted(len(p) for p in parts),
            degrees=sorted(d for _, d in set_level.degree()),
        ),
        functional=FunctionalSection(
            order=invariants.order,
            edge_count=functional.number_of_edges(),
            regular_degree=invariants.regular_degree,
            bipartite=invariants.is_bipartite,
            girth=finite_girth,
            hamiltonian=invariants.hamiltonian,
            hamiltonian_witness=[v.name for v in invariants.hamiltonian_witness] if invariants.hamiltonian_witness else None,
            four_cycle_classes=four_cycle_class_count(functional),
            shortest_cycle_count=cycle_count,
            shortest_cycle_classes=len(cycle_orbits),
            chiral_cycle_classes=len(chiral_orbits(cycle_orbits)),
            aut_order=group.order,
            dihedral=dihedral,
        ),
        circulant=CirculantSection(jumps=list(descriptor.jumps), verified=verified, isomorphic=isomorphic),
        configuration=ConfigurationSection(
            is_n3=verdict.is_n3,
            self_dual=verdict.self_dual,
            cyclic=verdict.cyclic,
            desargues=verdict.desargues,
            reasons=list(verdict.reasons),
        ),
    )


def config_report(system: HarmonicSystem) -> ConfigVerdictReport:
    functional = build_functional_tonnetz(system)
    verdict = check_n3_configuration(functional)
    return ConfigVerdictReport(
        system=system_section(system),
        is_n3=verdict.is_n3,
        self_dual=verdict.self_dual,
        cyclic=verdict.cyclic,
        reasons=list(verdict.reasons),
        girth=verdict.girth,
        desargues=verdict.desargues,
        circulant_jumps=list(jump_set_from_offsets(derive_plr_offsets(system)).jumps),
    )


def census_report(catalog: Optional[SystemCatalog] = None) -> CensusReport:
    """Cyclic 10_3 census, with the Wide system located among the survivors."""
    catalog = catalog or SystemCatalog()
    census = enumerate_cyclic_103()

    wide_member, wide_class = None, None
    if "wide" in catalog.names():
        wide = catalog.get("wide")
        triple = tuple(derive_plr_offsets(wide).sorted_offsets())
        if wide.n == CENSUS_MODULUS and triple in census.members:
            wide_member = list(triple)
            wide_levi = levi_graph_from_triple(triple[1], triple[2])
            for index, cls in enumerate(census.classes):
                representative = levi_graph_from_triple(cls[0][1], cls[0][2])
                if are_isomorphic(wide_levi, representative) is not None:
                    wide_class = index
                    break

    return CensusReport(
        modulus=CENSUS_MODULUS,
        members=[list(t) for t in census.members],
        rejected=[list(t) for t in census.rejected],
        classes=[[list(t) for t in cls] for cls in census.classes],
        canonical_forms=[list(t) for t in census.canonical_forms()],
        wide_member=wide_member,
        wide_class=wide_class,
        desargues_classes=list(census.desargues_classes),
    )
