import pytest
from hypothesis import given, settings, strategies as st

from app.services.descriptors import (
    Descriptor,
    build_group,
    parse_descriptor,
    parse_generators,
)
from app.services.errors import DescriptorSyntaxError, InputError, PgxError
from app.services.groups import Permutation


class TestParsing:
    @pytest.mark.parametrize("text,name,params", [
        ("pgl2(9)", "pgl2", (9,)),
        ("  psl2( 9 ) ", "psl2", (9,)),
        ("alt(5)", "alt", (5,)),
        ("sym(4)", "sym", (4,)),
        ("frobfield(3,4,80)", "frobfield", (3, 4, 80)),
        ("paper.g2", "paper.g2", ()),
    ])
    def test_families(self, text, name, params):
        d = parse_descriptor(text)
        assert (d.name, d.params, d.generators) == (name, params, ())

    def test_permutation_generators(self):
        d = parse_descriptor("perm(5; (1 2)(3 4), (1 3)(2 4))")
        assert d.params == (5,)
        assert d.generators == (((1, 2), (3, 4)), ((1, 3), (2, 4)))
        assert d.degree == 5

    def test_permutation_module(self):
        d = parse_descriptor("permmod(5,4; (1 2)(3 4),(1 3)(2 4),(1 2 3))")
        assert d.params == (5, 4)
        assert len(d.generators) == 3
        assert d.degree is None

    def test_no_generators(self):
        d = parse_descriptor("perm(3;)")
        assert d.generators == ()
        assert build_group(d).order == 1

    @pytest.mark.parametrize("text,position", [
        ("", 0),
        ("pgl3(9)", 0),
        ("pgl2(9", 6),
        ("pgl2(9))", 7),
        ("frobfield(3,4)", 13),
        ("perm(3; (1 4))", 11),
        ("perm(3; (1 2 1))", 13),
        ("perm(3; ())", 9),
        ("perm(3; (1 2),)", 14),
        ("pgl2(x)", 5),
    ])
    def test_errors_carry_positions(self, text, position):
        with pytest.raises(DescriptorSyntaxError) as e:
            parse_descriptor(text)
        assert e.value.position == position
        assert e.value.exit_code == 2

    def test_unknown_name_is_input_error(self):
        with pytest.raises(InputError):
            parse_descriptor("mystery(3)")


class TestRendering:
    @pytest.mark.parametrize("text,rendered", [
        ("paper.g1", "paper.g1"),
        ("pgl2( 9 )", "pgl2(9)"),
        ("frobfield(3, 4, 80)", "frobfield(3,4,80)"),
        ("perm(5;(1 2)(3 4),(1 3)(2 4))", "perm(5; (1 2)(3 4), (1 3)(2 4))"),
        ("perm(1;)", "perm(1;)"),
        ("permmod(5,4;(1 2 3))", "permmod(5, 4; (1 2 3))"),
    ])
    def test_canonical_text(self, text, rendered):
        assert parse_descriptor(text).render() == rendered

    def test_built_group_uses_canonical_text(self):
        group = build_group(parse_descriptor("sym( 3 )"))
        assert group.descriptor == "sym(3)"


class TestGenerators:
    def test_parse(self):
        gens = parse_generators("(1 2)(3 4), (1 2 3)", 5)
        assert gens == [
            Permutation.from_cycles(5, [(1, 2), (3, 4)]),
            Permutation.from_cycles(5, [(1, 2, 3)]),
        ]

    def test_empty(self):
        with pytest.raises(InputError):
            parse_generators("  ", 4)

    def test_out_of_range(self):
        with pytest.raises(DescriptorSyntaxError):
            parse_generators("(1 5)", 4)


class TestBuilding:
    @pytest.mark.parametrize("text,order", [
        ("pgl2(5)", 120),
        ("psl2(7)", 168),
        ("alt(4)", 12),
        ("sym(4)", 24),
        ("frobfield(2,2,3)", 12),
        ("perm(4; (1 2 3 4))", 4),
        ("paper.g3", 150),
    ])
    def test_orders(self, text, order):
        assert build_group(parse_descriptor(text)).order == order

    @pytest.mark.parametrize("text", ["pgl2(6)", "frobfield(5,2,5)", "alt(0)"])
    def test_semantic_errors(self, text):
        with pytest.raises(InputError):
            build_group(parse_descriptor(text))


@st.composite
def permutation_descriptors(draw):
    gens = []
    for _ in range(draw(st.integers(min_value=0, max_value=3))):
        sizes = draw(st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=3))
        used, cycles, start = draw(st.permutations(range(1, 7))), [], 0
        for size in sizes:
            if start + size > len(used):
                break
            cycles.append(tuple(used[start:start + size]))
            start += size
        gens.append(tuple(cycles))
    return Descriptor(name="perm", params=(6,), generators=tuple(gens))


@settings(max_examples=200)
@given(permutation_descriptors())
def test_render_then_parse_is_identity(descriptor):
    assert parse_descriptor(descriptor.render()) == descriptor


@settings(max_examples=300)
@given(st.text(alphabet="pgl2sym()perm;,. 0123456789abcfo", max_size=30))
def test_arbitrary_text_fails_cleanly(text):
    try:
        build_group(parse_descriptor(text))
    except PgxError:
        pass
