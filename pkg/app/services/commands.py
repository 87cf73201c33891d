"""
Command pipelines
Each command takes descriptor text and returns (exit code, document text).
Documents are compact JSON or DOT, newline-terminated and byte-stable.
"""

import json
import logging
from typing import Optional, Tuple

from app.services import constructions
from app.services.descriptors import Descriptor, build_group, parse_descriptor, parse_generators
from app.services.errors import InputError, PreconditionError
from app.services.groups import Group, Subgroup, subgroup_generated
from app.services.spectra import (
    PrimeGraph,
    components,
    edge_difference,
    graphs_equal,
    mu,
    prime_graph_of,
    spectrum,
)
from app.services.structure import (
    FrobeniusWitness,
    VerificationReport,
    classify,
    find_2frobenius_series,
    find_frobenius_structure,
    verify_2frobenius,
    verify_coprime_extension,
    verify_frobenius,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1

CommandResult = Tuple[int, str]

VERIFY_KINDS = ("frobenius", "2frobenius", "theorem", "extension")
GRAPH_FORMATS = ("json", "dot")


def to_json(document) -> str:
    return json.dumps(document, separators=(",", ":"), ensure_ascii=False) + "\n"


def _load(text: str) -> Tuple[Descriptor, Group]:
    descriptor = parse_descriptor(text)
    return descriptor, build_group(descriptor)


def _graph_document(graph: PrimeGraph) -> dict:
    return {"vertices": list(graph.vertices), "edges": [list(e) for e in graph.edges]}


def render_dot(graph: PrimeGraph) -> str:
    statements = [f"  {v};" for v in graph.vertices] + [f"  {p} -- {q};" for p, q in graph.edges]
    if not statements:
        return "graph G { }\n"
    return "graph G {\n" + "\n".join(statements) + "\n}\n"


# =============================================================================
# Spectrum and graphs
# =============================================================================

def cmd_spectrum(text: str) -> CommandResult:
    _, group = _load(text)
    s = spectrum(group)
    return EXIT_OK, to_json({
        "order": group.order,
        "element_orders": list(s.orders),
        "mu": list(mu(s).maxima),
    })


def cmd_graph(text: str, fmt: str = "json") -> CommandResult:
    if fmt not in GRAPH_FORMATS:
        raise InputError(f"unknown graph format {fmt!r}, expected one of {', '.join(GRAPH_FORMATS)}")
    _, group = _load(text)
    graph = prime_graph_of(group)
    if fmt == "dot":
        return EXIT_OK, render_dot(graph)
    return EXIT_OK, to_json(_graph_document(graph))


def cmd_compare(left: str, right: str) -> CommandResult:
    _, g1 = _load(left)
    _, g2 = _load(right)
    a, b = prime_graph_of(g1), prime_graph_of(g2)
    equal = graphs_equal(a, b)
    document = {
        "equal": equal,
        "left": {"descriptor": g1.descriptor, **_graph_document(a)},
        "right": {"descriptor": g2.descriptor, **_graph_document(b)},
        "difference": [list(e) for e in edge_difference(a, b)],
    }
    logger.info(f"[Commands] compare {g1.descriptor} vs {g2.descriptor}: equal={equal}")
    return (EXIT_OK if equal else EXIT_NEGATIVE), to_json(document)


def cmd_components(text: str) -> CommandResult:
    _, group = _load(text)
    comps = components(prime_graph_of(group))
    return EXIT_OK, to_json({"components": [list(c) for c in comps], "t": len(comps)})


# =============================================================================
# Verification
# =============================================================================

def _witness_generators(descriptor: Descriptor, group: Group, text: str, label: str) -> Subgroup:
    degree = descriptor.degree
    if degree is None:
        raise InputError(f"--{label} generators are only accepted for permutation groups, not {descriptor.render()}")
    return subgroup_generated(group, parse_generators(text, degree), descriptor=f"<{text}>")


def _default_frobenius_witness(descriptor: Descriptor, group: Group) -> Optional[FrobeniusWitness]:
    if descriptor.name in ("paper.g1", "paper.g2", "frobfield"):
        return FrobeniusWitness(group.kernel_subgroup(), group.complement_subgroup())
    try:
        return find_frobenius_structure(group)
    except PreconditionError as e:
        logger.info(f"[Commands] {e.message}")
        return None


def _no_witness(group: Group, kind: str, reason: str) -> VerificationReport:
    report = VerificationReport(subject=group.descriptor, kind=kind)
    report.add("witness found", False, detail=reason)
    return report


def _verify_frobenius(descriptor: Descriptor, group: Group, kernel: Optional[str], complement: Optional[str]) -> VerificationReport:
    if (kernel is None) != (complement is None):
        raise InputError("--kernel and --complement must be given together")
    if kernel is not None:
        witness = FrobeniusWitness(
            _witness_generators(descriptor, group, kernel, "kernel"),
            _witness_generators(descriptor, group, complement, "complement"),
        )
    else:
        witness = _default_frobenius_witness(descriptor, group)
    if witness is None:
        return _no_witness(group, "frobenius", "no Frobenius kernel and complement found")
    return verify_frobenius(group, witness)


def _verify_2frobenius(descriptor: Descriptor, group: Group, series: Optional[str]) -> VerificationReport:
    if series is not None:
        parts = series.split(";")
        if len(parts) != 2:
            raise InputError(f"--series needs 'H generators;K generators', got {series!r}")
        h = _witness_generators(descriptor, group, parts[0], "series")
        k = _witness_generators(descriptor, group, parts[1], "series")
    elif descriptor.name == "paper.g3":
        h, k = constructions.paper_g3_series(group)
    else:
        found = find_2frobenius_series(group)
        if found is None:
            return _no_witness(group, "2frobenius", "no normal series 1 < H < K < G verifies")
        h, k = found
    return verify_2frobenius(group, h, k)


def cmd_verify(
    kind: str,
    text: str,
    kernel: Optional[str] = None,
    complement: Optional[str] = None,
    series: Optional[str] = None,
) -> CommandResult:
    if kind not in VERIFY_KINDS:
        raise InputError(f"unknown verification kind {kind!r}, expected one of {', '.join(VERIFY_KINDS)}")
    descriptor, group = _load(text)
    if kind == "frobenius":
        report = _verify_frobenius(descriptor, group, kernel, complement)
    elif kind == "2frobenius":
        report = _verify_2frobenius(descriptor, group, series)
    elif kind == "theorem":
        report = classify(group)
    else:
        report = verify_coprime_extension(group)
    logger.info(f"[Commands] verify {kind} {group.descriptor}: overall={report.overall}")
    return (EXIT_OK if report.overall else EXIT_NEGATIVE), to_json(report.model_dump(mode="json"))
