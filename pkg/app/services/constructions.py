"""
Group constructions
Projective linear groups, alternating and symmetric groups, the field-based
Frobenius family and the three solvable groups sharing the prime graph of
PGL(2,9)
"""

import logging
from typing import Sequence, Tuple

from sympy import factorint

from app.config import settings
from app.services.errors import CapacityError, InputError
from app.services.ffield import Field, FieldElement, field_new, frobenius_map, units_of_order
from app.services.groups import (
    ActionTable,
    DirectPair,
    FieldAdditiveGroup,
    FieldUnitGroup,
    Group,
    Permutation,
    PermutationGroup,
    ProjectiveLinearGroup,
    SemidirectPair,
    SemidirectProduct,
    Subgroup,
    subgroup_generated,
)

logger = logging.getLogger(__name__)


def prime_power(q: int) -> Tuple[int, int]:
    """(p, k) with q = p^k"""
    factors = factorint(q) if q > 1 else {}
    if len(factors) != 1:
        raise InputError(f"{q} is not a prime power")
    (p, k), = factors.items()
    return p, k


# =============================================================================
# Almost simple groups
# =============================================================================

def pgl2(q: int) -> ProjectiveLinearGroup:
    p, k = prime_power(q)
    if p == 2:
        logger.warning(f"[Constructions] pgl2({q}): even q, PGL(2,q) = PSL(2,q)")
    return ProjectiveLinearGroup(field_new(p, k))


def psl2(q: int) -> ProjectiveLinearGroup:
    p, k = prime_power(q)
    if p == 2:
        logger.warning(f"[Constructions] psl2({q}): even q, PSL(2,q) = PGL(2,q)")
    return ProjectiveLinearGroup(field_new(p, k), special=True)


def _check_degree(n: int, divisor: int, name: str) -> None:
    """Reject n when n!/divisor exceeds the enumeration cap, without computing n! in full"""
    if n < 1:
        raise InputError(f"{name}({n}): degree must be >= 1")
    cap = settings.enumeration_cap
    size = 1
    for i in range(2, n + 1):
        size *= i
        if size > cap * divisor:
            raise CapacityError(f"{name}({n}) has more than {cap} elements", cap, 0)


def symmetric(n: int) -> PermutationGroup:
    """S_n = <(1 2), (1 2 ... n)>"""
    _check_degree(n, 1, "sym")
    gens = []
    if n >= 2:
        gens = [
            Permutation.from_cycles(n, [(1, 2)]),
            Permutation.from_cycles(n, [tuple(range(1, n + 1))]),
        ]
    return PermutationGroup(n, gens, descriptor=f"sym({n})")


def alternating(n: int) -> PermutationGroup:
    """A_n = <(1 2 k) : 3 <= k <= n>"""
    _check_degree(n, 2, "alt")
    gens = [Permutation.from_cycles(n, [(1, 2, k)]) for k in range(3, n + 1)]
    return PermutationGroup(n, gens, descriptor=f"alt({n})")


def permutation_group(degree: int, generators: Sequence[Sequence[Sequence[int]]]) -> PermutationGroup:
    """Group generated by permutations given as lists of disjoint cycles"""
    if degree > settings.enumeration_cap:
        raise CapacityError(f"permutation degree {degree} is over the cap", settings.enumeration_cap, 0)
    perms = [Permutation.from_cycles(degree, cycles) for cycles in generators]
    return PermutationGroup(degree, perms)


# =============================================================================
# Field-based semidirect products
# =============================================================================

def unit_subgroup(fields: Sequence[Field], generator: Sequence[FieldElement], descriptor: str) -> FieldUnitGroup:
    return FieldUnitGroup(fields, [DirectPair(tuple(generator))], descriptor=descriptor)


def multiplication_action(kernel: FieldAdditiveGroup, complement: Group) -> ActionTable:
    """Coordinate-wise field multiplication of unit tuples on vectors"""

    def rule(c: DirectPair, k: DirectPair) -> DirectPair:
        return DirectPair(tuple(
            FieldElement(x.field, x.field.mul_codes(x.code, y.code))
            for x, y in zip(c.entries, k.entries)
        ))

    return ActionTable(kernel, complement, rule, "multiplication")


def frobenius_field(p: int, k: int, m: int, descriptor: str = "") -> SemidirectProduct:
    """
    GF(p^k)+ x| C_m with C_m the order-m subgroup of the unit group

    Frobenius for every m > 1; m = 1 degenerates to the additive group.
    """
    field = field_new(p, k)
    if m < 1 or (field.size - 1) % m:
        raise InputError(f"frobfield({p},{k},{m}): {m} does not divide {field.size - 1}")
    if m == 1:
        logger.warning(f"[Constructions] frobfield({p},{k},1) has a trivial complement")
    kernel = FieldAdditiveGroup([field])
    complement = unit_subgroup([field], [units_of_order(field, m)], f"C{m} in GF({field.size})*")
    group = SemidirectProduct(
        kernel, complement, multiplication_action(kernel, complement),
        descriptor=descriptor or f"frobfield({p},{k},{m})",
    )
    logger.info(f"[Constructions] Built {group.descriptor} of order {group.order}")
    return group


def paper_g1() -> SemidirectProduct:
    """GF(81)+ x| GF(81)*: Frobenius with abelian 3-kernel and complement of order 80"""
    return frobenius_field(3, 4, 80, descriptor="paper.g1")


def paper_g2() -> SemidirectProduct:
    """
    (GF(4)+ x GF(25)+) x| <(w, b)> with w, b of order 3 acting coordinate-wise

    The complement is the diagonal C3 rather than the full product of unit
    groups: an element (h, 1) of that product fixes every vector (0, g'), so
    only a diagonal cyclic 3-group acts without fixed points.
    """
    f4 = field_new(2, 2)
    f25 = field_new(5, 2)
    kernel = FieldAdditiveGroup([f4, f25])
    omega = units_of_order(f4, 3)
    beta = units_of_order(f25, 3)
    complement = unit_subgroup([f4, f25], [omega, beta], "<(w,b)>")
    group = SemidirectProduct(kernel, complement, multiplication_action(kernel, complement), descriptor="paper.g2")
    logger.info(f"[Constructions] Built paper.g2 of order {group.order}")
    return group


def _twisted_pair(f25: Field) -> SemidirectProduct:
    """T = <b> x| <g> with g acting on <b> by the p-power map"""
    beta = units_of_order(f25, 3)
    b_group = unit_subgroup([f25], [beta], "<b>")
    swap = Permutation((2, 1))
    g_group = PermutationGroup(2, [swap], descriptor="<g>")

    def rule(s: Permutation, b: DirectPair) -> DirectPair:
        if s == swap:
            return DirectPair((frobenius_map(b.entries[0]),))
        return b

    return SemidirectProduct(b_group, g_group, ActionTable(b_group, g_group, rule, "p-power"), descriptor="T")


def paper_g3() -> SemidirectProduct:
    """
    GF(25)+ x| T with T = <b> x| <g> of order 6

    b acts by multiplication and g by x -> x^5. Since g b g^-1 = b^5 = b^-1
    the assignment T -> Aut(V) is a homomorphism; the normal series is
    V < V<b> < G with factors of orders 25, 3, 2.
    """
    f25 = field_new(5, 2)
    kernel = FieldAdditiveGroup([f25])
    t_group = _twisted_pair(f25)
    swap = Permutation((2, 1))

    def rule(c: SemidirectPair, v: DirectPair) -> DirectPair:
        x = v.entries[0]
        if c.complement_part == swap:
            x = frobenius_map(x)
        b = c.kernel_part.entries[0]
        return DirectPair((FieldElement(f25, f25.mul_codes(b.code, x.code)),))

    group = SemidirectProduct(kernel, t_group, ActionTable(kernel, t_group, rule, "b-multiply, g-frobenius"), descriptor="paper.g3")
    logger.info(f"[Constructions] Built paper.g3 of order {group.order}")
    return group


def paper_g3_series(group: SemidirectProduct) -> Tuple[Subgroup, Subgroup]:
    """(H, K) = (V, V<b>) inside paper.g3"""
    h = group.kernel_subgroup()
    t_group = group.complement
    b_gens = [SemidirectPair(b, t_group.complement.identity()) for b in t_group.kernel.generators]
    k = subgroup_generated(
        group,
        list(h.generators) + [group.embed_complement(b) for b in b_gens],
        descriptor="V<b> in paper.g3",
    )
    return h, k


def permutation_module(p: int, n: int, generators: Sequence[Sequence[Sequence[int]]]) -> SemidirectProduct:
    """GF(p)^n x| Q with Q permuting coordinates: (s.v)[s(i)] = v[i]"""
    top = permutation_group(n, generators)
    field = field_new(p, 1)
    kernel = FieldAdditiveGroup([field] * n, descriptor=f"GF({p})^{n}")

    def rule(s: Permutation, v: DirectPair) -> DirectPair:
        out = list(v.entries)
        for i, x in enumerate(v.entries, start=1):
            out[s(i) - 1] = x
        return DirectPair(tuple(out))

    shown = ", ".join(str(g) for g in top.generators)
    return SemidirectProduct(
        kernel, top, ActionTable(kernel, top, rule, "coordinate permutation"),
        descriptor=f"permmod({p}, {n}; {shown})",
    )
