"""
Frobenius structure
Witness-based verification of Frobenius and 2-Frobenius groups, the
structure search and classification against the prime graph of PGL(2,9)
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field, computed_field

from app.config import settings
from app.services.constructions import pgl2
from app.services.errors import InputError, PreconditionError
from app.services.groups import (
    Group,
    GroupElement,
    QuotientGroup,
    SemidirectProduct,
    Subgroup,
    bounded_subgroup,
    conjugacy_classes,
    find_fixed_point,
    is_abelian,
    is_cyclic,
    is_nilpotent,
    is_normal,
    normal_closure,
    sort_key,
    subgroup_generated,
    sylow_subgroup,
)
from app.services.spectra import (
    PrimeGraph,
    components,
    graphs_equal,
    mu,
    prime_divisors,
    prime_graph_of,
    spectrum,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Models
# =============================================================================

class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


class Check(BaseModel):
    name: str
    status: CheckStatus
    detail: str = ""
    witnesses: List[str] = Field(default_factory=list)


class VerificationReport(BaseModel):
    """Independently reported checks; overall passes when none failed"""

    subject: str
    kind: str
    checks: List[Check] = Field(default_factory=list)
    case: Optional[str] = None
    notes: List[str] = Field(default_factory=list)

    @computed_field
    @property
    def overall(self) -> bool:
        return all(c.status != CheckStatus.FAIL for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "", witnesses: Sequence[object] = ()) -> bool:
        self.checks.append(Check(
            name=name,
            status=CheckStatus.PASS if passed else CheckStatus.FAIL,
            detail=detail,
            witnesses=[str(w) for w in witnesses],
        ))
        return passed

    def skip(self, name: str, detail: str = "") -> None:
        self.checks.append(Check(name=name, status=CheckStatus.SKIP, detail=detail))

    def absorb(self, other: "VerificationReport", prefix: str) -> bool:
        for c in other.checks:
            self.checks.append(c.model_copy(update={"name": f"{prefix}{c.name}"}))
        return other.overall


@dataclass(frozen=True)
class FrobeniusWitness:
    kernel: Group
    complement: Group


class TheoremCase(str, Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"
    NO_MATCH = "NoMatch"


def _primes(n: int) -> str:
    return "{" + ",".join(str(p) for p in prime_divisors(n)) + "}"


# =============================================================================
# Frobenius verification
# =============================================================================

def _require_inside(group: Group, sub: Group, label: str) -> None:
    for s in sub.generators:
        if not group.contains(s):
            raise InputError(f"{label} generator {s} is not an element of {group.descriptor}")


def _normality_witness(group: Group, sub: Group) -> Optional[Tuple[GroupElement, GroupElement]]:
    for g in group.generators:
        for h in sub.generators:
            if not sub.contains(group.conjugate(g, h)):
                return g, h
    return None


def _complement_sylows(complement: Group) -> Tuple[bool, str]:
    """Odd Sylow subgroups cyclic; the Sylow 2-subgroup cyclic or with one involution"""
    ok = True
    parts = []
    for p in prime_divisors(complement.order):
        sylow = sylow_subgroup(complement, p)
        cyclic = is_cyclic(sylow)
        if p == 2 and not cyclic:
            involutions = sum(1 for o in sylow.order_map().values() if o == 2)
            good = involutions == 1
            parts.append(f"Sylow 2: order {sylow.order}, {involutions} involutions")
        else:
            good = cyclic
            parts.append(f"Sylow {p}: order {sylow.order}, {'cyclic' if cyclic else 'not cyclic'}")
        ok = ok and good
    return ok, "; ".join(parts) or "trivial complement"


def verify_frobenius(group: Group, witness: FrobeniusWitness) -> VerificationReport:
    """
    Check that G is Frobenius with the given kernel and complement

    Every check runs and is reported on its own, so a failing witness shows
    exactly which property breaks.
    """
    kernel, complement = witness.kernel, witness.complement
    _require_inside(group, kernel, "kernel")
    _require_inside(group, complement, "complement")
    report = VerificationReport(subject=group.descriptor, kind="frobenius")
    k_order, c_order, g_order = kernel.order, complement.order, group.order

    bad = _normality_witness(group, kernel)
    report.add("kernel normal", bad is None, witnesses=bad or ())

    report.add(
        "1 < K < G, C nontrivial",
        1 < k_order < g_order and c_order > 1,
        detail=f"|K|={k_order}, |C|={c_order}, |G|={g_order}",
    )

    small, large = (kernel, complement) if k_order <= c_order else (complement, kernel)
    identity = group.identity()
    shared = [x for x in small.elements() if x != identity and large.contains(x)]
    report.add(
        "kernel ∩ complement trivial, |K|·|C| = |G|",
        not shared and k_order * c_order == g_order,
        detail=f"|K|={k_order}, |C|={c_order}, |G|={g_order}",
        witnesses=sorted(shared, key=sort_key)[:1],
    )

    fixed = find_fixed_point(kernel, complement, group.conjugate)
    report.add(
        "fixed-point-free conjugation",
        fixed is None,
        detail="" if fixed is None else "c·k·c⁻¹ = k",
        witnesses=fixed or (),
    )

    report.add("kernel nilpotent", is_nilpotent(kernel))

    congruent = k_order % c_order == 1 % c_order
    report.add(
        "kernel ≡ 1 mod complement",
        congruent,
        detail=f"{k_order} {'≡' if congruent else '≢'} 1 (mod {c_order})",
    )

    ok, detail = _complement_sylows(complement)
    report.add("complement Sylow subgroups", ok, detail=detail)

    report.skip("non-solvable complement clause", "not evaluated")
    logger.info(f"[Structure] verify_frobenius {group.descriptor}: overall={report.overall}")
    return report


# =============================================================================
# Complement search
# =============================================================================

def _meets_trivially(sub: Group, normal: Group) -> bool:
    identity = sub.identity()
    return not any(x != identity and normal.contains(x) for x in sub.elements())


def _cyclic_complement(group: Group, normal: Group) -> Optional[Subgroup]:
    """Least x of order |G|/|N| whose cyclic group meets N trivially"""
    target = group.order // normal.order
    if target == 1:
        return Subgroup(group, [], descriptor="1")
    orders = group.order_map()
    for x in sorted((g for g, o in orders.items() if o == target), key=sort_key):
        if normal.contains(x):
            continue
        cyclic = Subgroup(group, [x])
        if _meets_trivially(cyclic, normal):
            return cyclic
    return None


def _complement(group: Group, normal: Group) -> Optional[Subgroup]:
    """Cyclic complement first, then subgroups on pairs of elements"""
    found = _cyclic_complement(group, normal)
    if found is not None:
        return found
    target = group.order // normal.order
    orders = group.order_map()
    candidates = sorted(
        (g for g, o in orders.items() if o > 1 and target % o == 0 and not normal.contains(g)),
        key=sort_key,
    )
    tried = 0
    for x, y in combinations(candidates, 2):
        tried += 1
        if tried > settings.complement_search_limit:
            logger.debug(f"[Structure] complement search in {group.descriptor} stopped after {tried - 1} pairs")
            return None
        sub = bounded_subgroup(group, [x, y], target)
        if sub is not None and sub.order == target and _meets_trivially(sub, normal):
            return sub
    return None


def find_frobenius_structure(group: Group) -> Optional[FrobeniusWitness]:
    """
    Kernel and complement found from the prime graph components

    For each component the elements with all order primes inside it are
    tested as a candidate kernel. Only witnesses that verify are returned;
    None makes no claim.
    """
    comps = components(prime_graph_of(group))
    if len(comps) < 2:
        raise PreconditionError(f"prime graph of {group.descriptor} is connected")
    orders = group.order_map()
    for comp in comps:
        allowed = set(comp)
        members = [g for g, o in orders.items() if set(prime_divisors(o)) <= allowed]
        if group.order % len(members):
            continue
        kernel = Subgroup(group, members, descriptor=f"{comp}-elements of {group.descriptor}")
        if kernel.order != len(members):
            logger.debug(f"[Structure] {group.descriptor}: {comp}-elements are not closed")
            continue
        if not is_normal(group, kernel):
            continue
        complement = _complement(group, kernel)
        if complement is None:
            continue
        witness = FrobeniusWitness(kernel, complement)
        if verify_frobenius(group, witness).overall:
            logger.info(
                f"[Structure] {group.descriptor}: Frobenius kernel order {kernel.order}, "
                f"complement order {complement.order}"
            )
            return witness
    return None


# =============================================================================
# 2-Frobenius verification
# =============================================================================

def verify_2frobenius(group: Group, h: Group, k: Group) -> VerificationReport:
    """Check 1 < H < K < G with K Frobenius over H and G/H Frobenius over K/H"""
    _require_inside(group, h, "H")
    _require_inside(group, k, "K")
    report = VerificationReport(subject=group.descriptor, kind="2frobenius")
    shaped = all([
        report.add("H nontrivial", h.order > 1, detail=f"|H|={h.order}"),
        report.add("H normal in G", is_normal(group, h)),
        report.add("K normal in G", is_normal(group, k)),
        report.add("H ⊆ K", all(k.contains(x) for x in h.generators)),
        report.add(
            "H < K < G",
            h.order < k.order < group.order,
            detail=f"|H|={h.order}, |K|={k.order}, |G|={group.order}",
        ),
    ])
    if not shaped:
        return report

    inner = _cyclic_complement(k, h)
    if inner is None:
        report.add("K Frobenius with kernel H", False, detail="no cyclic complement of H in K")
    else:
        report.absorb(verify_frobenius(k, FrobeniusWitness(h, inner)), "K: ")

    quotient = QuotientGroup(group, h)
    k_image = quotient.image(k)
    outer = _cyclic_complement(quotient, k_image)
    if outer is None:
        report.add("G/H Frobenius with kernel K/H", False, detail="no cyclic complement of K/H in G/H")
    else:
        report.absorb(verify_frobenius(quotient, FrobeniusWitness(k_image, outer)), "G/H: ")

    upper = group.order // k.order
    middle = k.order // h.order
    expected = {
        prime_divisors(middle),
        tuple(sorted(set(prime_divisors(h.order)) | set(prime_divisors(upper)))),
    }
    comps = components(prime_graph_of(group))
    report.add(
        "components are π(K/H) and π(H) ∪ π(G/K)",
        set(comps) == expected,
        detail=f"π(H)={_primes(h.order)}, π(K/H)={_primes(middle)}, π(G/K)={_primes(upper)}, components={list(map(list, comps))}",
    )
    report.notes.append(f"|H|={h.order}, |K/H|={middle}, |G/K|={upper}")
    logger.info(f"[Structure] verify_2frobenius {group.descriptor}: overall={report.overall}")
    return report


def find_2frobenius_series(group: Group) -> Optional[Tuple[Subgroup, Subgroup]]:
    """First (H, K) among normal closures of classes and their joins that verifies"""
    identity = group.identity()
    found: Dict[frozenset, Subgroup] = {}
    for cls in conjugacy_classes(group):
        if cls == [identity]:
            continue
        closure = normal_closure(group, cls)
        if 1 < closure.order < group.order:
            found.setdefault(closure.element_set(), closure)
    basic = list(found.values())
    for a, b in combinations(basic, 2):
        join = subgroup_generated(group, list(a.generators) + list(b.generators))
        if join.order < group.order:
            found.setdefault(join.element_set(), join)
    candidates = sorted(found.values(), key=lambda s: s.order)
    logger.debug(f"[Structure] {group.descriptor}: {len(candidates)} proper normal subgroups")
    for h in candidates:
        for k in candidates:
            if k.order <= h.order or k.order % h.order:
                continue
            if not all(k.contains(x) for x in h.generators):
                continue
            if verify_2frobenius(group, h, k).overall:
                return h, k
    return None


# =============================================================================
# Classification
# =============================================================================

@lru_cache(maxsize=1)
def reference_prime_graph() -> PrimeGraph:
    return prime_graph_of(pgl2(9))


def _frobenius_case(group: Group, report: VerificationReport) -> Optional[TheoremCase]:
    try:
        witness = find_frobenius_structure(group)
    except PreconditionError:
        return None
    if witness is None:
        return None
    kernel, complement = witness.kernel, witness.complement
    pi_k = prime_divisors(kernel.order)
    if pi_k == (3,) and is_abelian(kernel):
        report.add("Frobenius witness verified", True, detail=f"|K|={kernel.order}, |C|={complement.order}")
        report.add("K is an abelian 3-group", True, detail=f"π(K)={_primes(kernel.order)}")
        return TheoremCase.CASE1
    if pi_k == (2, 5) and prime_divisors(complement.order) == (3,) and is_cyclic(complement):
        report.add("Frobenius witness verified", True, detail=f"|K|={kernel.order}, |C|={complement.order}")
        report.add("π(K) = {2,5}", True)
        report.add("C is a cyclic 3-group", True, detail=f"|C|={complement.order}")
        return TheoremCase.CASE2
    return None


def _two_frobenius_case(group: Group, report: VerificationReport) -> Optional[TheoremCase]:
    series = find_2frobenius_series(group)
    if series is None:
        return None
    h, k = series
    middle, upper = k.order // h.order, group.order // k.order
    if prime_divisors(middle) != (3,) or prime_divisors(upper) != (2,):
        return None
    if not set(prime_divisors(h.order)) <= {2, 5}:
        return None
    report.add("2-Frobenius series verified", True, detail=f"|H|={h.order}, |K/H|={middle}, |G/K|={upper}")
    report.add("π(K/H) = {3}, π(G/K) = {2}", True)
    report.add("π(H) ⊆ {2,5}", True, detail=f"π(H)={_primes(h.order)}")
    return TheoremCase.CASE3


def classify(group: Group) -> VerificationReport:
    """Theorem report: prime graph comparison and the matching structural case"""
    report = VerificationReport(subject=group.descriptor, kind="theorem")
    graph = prime_graph_of(group)
    reference = reference_prime_graph()
    same = graphs_equal(graph, reference)
    report.add(
        "prime graph equals Γ(PGL(2,9))",
        same,
        detail=f"vertices {list(graph.vertices)}, edges {[list(e) for e in graph.edges]}",
    )
    if not same:
        report.case = TheoremCase.NO_MATCH.value
        return report

    case = _frobenius_case(group, report) or _two_frobenius_case(group, report)
    if case is None:
        maxima = mu(spectrum(group)).maxima
        if group.order == 720 and maxima == (3, 8, 10):
            report.add(
                "spectral identification with PGL(2,9)",
                True,
                detail="|G| = 720, μ = {3,8,10}",
            )
            case = TheoremCase.CASE4
    if case is None:
        report.add("matches one of the four structures", False)
        case = TheoremCase.NO_MATCH
    report.case = case.value
    logger.info(f"[Structure] {group.descriptor} classified as {case.value}")
    return report


def theorem_case(group: Group) -> TheoremCase:
    return TheoremCase(classify(group).case)


# =============================================================================
# Coprime extensions of Frobenius groups
# =============================================================================

def verify_coprime_extension(group: Group) -> VerificationReport:
    """
    N x| Q with Q Frobenius over F with cyclic complement C

    When |F| is prime to |N| and F acts non-trivially on N, some prime r
    dividing |N| gives an element of order r·|C|.
    """
    if not isinstance(group, SemidirectProduct):
        raise InputError(f"{group.descriptor} is not a semidirect product")
    report = VerificationReport(subject=group.descriptor, kind="extension")
    normal, top = group.kernel, group.complement
    try:
        witness = find_frobenius_structure(top)
    except PreconditionError:
        witness = None
    if not report.add("top group Frobenius", witness is not None, detail=top.descriptor):
        return report
    f, c = witness.kernel, witness.complement
    report.add("complement cyclic", is_cyclic(c), detail=f"|C|={c.order}")
    report.add("gcd(|F|, |N|) = 1", gcd(f.order, normal.order) == 1, detail=f"|F|={f.order}, |N|={normal.order}")
    acting = [x for x in f.generators if any(group.action.apply(x, n) != n for n in normal.generators)]
    report.add("F acts non-trivially on N", bool(acting), witnesses=acting[:1])

    orders = group.order_map()
    targets = [r * c.order for r in prime_divisors(normal.order)]
    present = spectrum(group)
    hits = [n for n in targets if n in present]
    element = []
    if hits:
        element = sorted((g for g, o in orders.items() if o == hits[0]), key=sort_key)[:1]
    report.add(
        "r·|C| ∈ π_e(G) for some prime r | |N|",
        bool(hits),
        detail=f"candidates {targets}, present {hits}",
        witnesses=element,
    )
    return report
