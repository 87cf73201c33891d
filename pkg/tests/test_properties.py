"""Structural properties checked across a fleet of small groups"""

from functools import lru_cache
from math import gcd

import pytest
from sympy import divisors, factorint

from app.services import constructions
from app.services.groups import is_nilpotent, is_normal, sylow_subgroup
from app.services.spectra import components, mu, prime_divisors, prime_graph, spectrum
from app.services.structure import FrobeniusWitness, verify_frobenius

FLEET = [
    "alt(4)",
    "sym(4)",
    "alt(5)",
    "sym(5)",
    "pgl2(5)",
    "pgl2(7)",
    "psl2(9)",
    "pgl2(9)",
    "dihedral(8)",
    "cyclic(12)",
    "frobfield(2,2,3)",
    "frobfield(5,2,3)",
    "frobfield(3,2,8)",
    "paper.g2",
    "paper.g3",
]

_BUILDERS = {
    "alt(4)": lambda: constructions.alternating(4),
    "sym(4)": lambda: constructions.symmetric(4),
    "alt(5)": lambda: constructions.alternating(5),
    "sym(5)": lambda: constructions.symmetric(5),
    "pgl2(5)": lambda: constructions.pgl2(5),
    "pgl2(7)": lambda: constructions.pgl2(7),
    "psl2(9)": lambda: constructions.psl2(9),
    "pgl2(9)": lambda: constructions.pgl2(9),
    "dihedral(8)": lambda: constructions.permutation_group(4, [[(1, 2, 3, 4)], [(1, 3)]]),
    "cyclic(12)": lambda: constructions.permutation_group(7, [[(1, 2, 3, 4), (5, 6, 7)]]),
    "frobfield(2,2,3)": lambda: constructions.frobenius_field(2, 2, 3),
    "frobfield(5,2,3)": lambda: constructions.frobenius_field(5, 2, 3),
    "frobfield(3,2,8)": lambda: constructions.frobenius_field(3, 2, 8),
    "paper.g2": constructions.paper_g2,
    "paper.g3": constructions.paper_g3,
}


@lru_cache(maxsize=None)
def build(name):
    return _BUILDERS[name]()


@pytest.mark.parametrize("name", FLEET)
class TestSpectrumProperties:
    def test_divisor_closed_and_divides_order(self, name):
        group = build(name)
        orders = spectrum(group).orders
        assert orders[0] == 1
        for n in orders:
            assert group.order % n == 0
            assert all(d in orders for d in divisors(n))

    def test_mu_is_antichain_covering_spectrum(self, name):
        orders = spectrum(build(name)).orders
        maxima = mu(spectrum(build(name))).maxima
        for a in maxima:
            assert all(a == b or b % a for b in maxima)
        for n in orders:
            assert any(m % n == 0 for m in maxima)

    def test_edges_are_products_in_spectrum(self, name):
        s = spectrum(build(name))
        graph = prime_graph(s)
        assert graph.vertices == prime_divisors(build(name).order)
        for i, p in enumerate(graph.vertices):
            for q in graph.vertices[i + 1:]:
                assert graph.adjacent(p, q) == (p * q in s)

    def test_components_partition_vertices(self, name):
        graph = prime_graph(spectrum(build(name)))
        comps = components(graph)
        flat = [p for comp in comps for p in comp]
        assert sorted(flat) == list(graph.vertices)
        assert list(comps) == sorted(comps, key=lambda c: c[0])
        for a in comps:
            for b in comps:
                if a != b:
                    assert not any(graph.adjacent(p, q) for p in a for q in b)


@pytest.mark.parametrize("name", FLEET)
def test_nilpotency_matches_normal_sylow_subgroups(name):
    group = build(name)
    normal_sylows = all(
        is_normal(group, sylow_subgroup(group, p))
        for p in factorint(group.order)
    )
    assert is_nilpotent(group) == normal_sylows


def _frobenius_grid(limit):
    for p in (2, 3, 5, 7):
        k = 1
        while p ** k <= limit:
            for m in divisors(p ** k - 1):
                if m > 1:
                    yield p, k, m
            k += 1


def _check_frobenius_family(p, k, m):
    group = constructions.frobenius_field(p, k, m)
    kernel, complement = group.kernel_subgroup(), group.complement_subgroup()
    report = verify_frobenius(group, FrobeniusWitness(kernel, complement))
    assert report.overall, [c.name for c in report.checks if c.status == "fail"]
    assert kernel.order % complement.order == 1
    assert gcd(kernel.order, complement.order) == 1


@pytest.mark.parametrize("p,k,m", list(_frobenius_grid(81)))
def test_frobenius_family(p, k, m):
    _check_frobenius_family(p, k, m)


@pytest.mark.slow
@pytest.mark.parametrize("p,k,m", [t for t in _frobenius_grid(2401) if t[0] ** t[1] > 81])
def test_frobenius_family_large(p, k, m):
    _check_frobenius_family(p, k, m)


@pytest.mark.slow
def test_mu_of_pgl2_81():
    assert mu(spectrum(constructions.pgl2(81))).maxima == (3, 80, 82)
