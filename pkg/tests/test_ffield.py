import pytest
from hypothesis import given, settings, strategies as st

from app.services.errors import CapacityError, DomainError, InputError
from app.services.ffield import (
    field_new,
    frobenius_map,
    inv,
    is_irreducible,
    multiplicative_generator,
    power,
    unit_order,
    units_of_order,
)

SMALL_FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2), (7, 1)]


class TestFieldConstruction:
    def test_prime_field_has_linear_modulus(self):
        f = field_new(3, 1)
        assert f.size == 3
        assert f.modulus == (0, 1)
        assert f.element(2) * f.element(2) == f.element(1)

    def test_least_irreducible_moduli(self):
        assert field_new(2, 2).modulus == (1, 1, 1)
        assert field_new(3, 2).modulus == (1, 0, 1)
        assert field_new(5, 2).modulus == (1, 1, 1)

    @pytest.mark.parametrize("p,k", [(3, 4), (5, 2), (2, 4), (7, 2)])
    def test_modulus_is_irreducible(self, p, k):
        f = field_new(p, k)
        assert len(f.modulus) == k + 1
        assert f.modulus[-1] == 1
        assert is_irreducible(f.modulus, p)

    def test_construction_is_deterministic(self):
        assert field_new(3, 4) is field_new(3, 4)
        assert field_new(3, 4).modulus == field_new(3, 4).modulus

    def test_sizes(self):
        assert field_new(3, 4).size == 81
        assert len(field_new(5, 2).elements()) == 25

    def test_rejects_composite_characteristic(self):
        with pytest.raises(InputError):
            field_new(4, 1)

    def test_rejects_zero_degree(self):
        with pytest.raises(InputError):
            field_new(3, 0)

    def test_size_cap(self):
        with pytest.raises(CapacityError):
            field_new(2, 21)

    def test_element_from_coefficients(self):
        f = field_new(5, 2)
        x = f.element([3, 4])
        assert x.coeffs == (3, 4)
        assert x.code == 3 + 4 * 5

    def test_element_wrong_length(self):
        with pytest.raises(InputError):
            field_new(5, 2).element([1, 2, 3])


class TestArithmetic:
    def test_inverse_of_zero(self):
        f = field_new(5, 2)
        with pytest.raises(DomainError):
            inv(f.zero)

    def test_unit_order_of_zero(self):
        with pytest.raises(DomainError):
            unit_order(field_new(3, 2).zero)

    def test_mixed_fields(self):
        with pytest.raises(InputError):
            field_new(3, 2).one + field_new(5, 1).one

    def test_power_zero_is_one(self):
        f = field_new(3, 4)
        assert all(power(x, 0) == f.one for x in f.elements())

    def test_every_unit_of_gf81_has_exponent_80(self):
        f = field_new(3, 4)
        assert all(power(x, 80) == f.one for x in f.elements()[1:])

    def test_gf25_generator_and_beta(self):
        f = field_new(5, 2)
        alpha = multiplicative_generator(f)
        assert unit_order(alpha) == 24
        assert power(alpha, 24) == f.one
        assert unit_order(power(alpha, 8)) == 3
        assert units_of_order(f, 3) == power(alpha, 8)

    def test_gf4_units_have_order_three(self):
        f = field_new(2, 2)
        assert [unit_order(x) for x in f.elements()[2:]] == [3, 3]

    def test_gf2_generator(self):
        assert multiplicative_generator(field_new(2, 1)).code == 1

    def test_generator_is_least_primitive(self):
        f = field_new(3, 4)
        g = multiplicative_generator(f)
        assert unit_order(g) == 80
        assert all(unit_order(x) < 80 for x in f.elements()[1:g.code])

    @pytest.mark.parametrize("p,k", SMALL_FIELDS + [(3, 4)])
    def test_generator_powers_cover_units(self, p, k):
        f = field_new(p, k)
        g = multiplicative_generator(f)
        assert {power(g, i).code for i in range(f.size - 1)} == set(range(1, f.size))

    @pytest.mark.parametrize("p,k", SMALL_FIELDS + [(3, 4)])
    def test_unit_orders_divide_group_order(self, p, k):
        f = field_new(p, k)
        assert all((f.size - 1) % unit_order(x) == 0 for x in f.elements()[1:])

    def test_negative_power_inverts(self):
        f = field_new(7, 2)
        x = f.element([3, 5])
        assert power(x, -1) == inv(x)
        assert power(x, -3) * power(x, 3) == f.one

    def test_units_of_order_rejects_non_divisor(self):
        with pytest.raises(InputError):
            units_of_order(field_new(5, 2), 5)

    def test_polynomial_fallback_matches_tables(self, monkeypatch):
        from app.config import settings as app_settings
        from app.services.ffield import Field, least_irreducible

        tabled = field_new(3, 3)
        monkeypatch.setattr(app_settings, "field_table_limit", 1)
        monkeypatch.setattr(app_settings, "add_table_limit", 1)
        plain = Field(3, 3, least_irreducible(3, 3))
        for x in range(27):
            for y in range(27):
                assert plain.mul_codes(x, y) == tabled.mul_codes(x, y)
                assert plain.add_codes(x, y) == tabled.add_codes(x, y)


class TestFrobeniusMap:
    def test_fixes_prime_subfield(self):
        f = field_new(5, 2)
        for c in range(5):
            assert frobenius_map(f.element(c)) == f.element(c)

    def test_involution_on_gf25(self):
        f = field_new(5, 2)
        assert all(frobenius_map(frobenius_map(x)) == x for x in f.elements())

    def test_inverts_beta(self):
        f = field_new(5, 2)
        beta = units_of_order(f, 3)
        assert frobenius_map(beta) == inv(beta)
        assert frobenius_map(beta) == power(beta, 2)

    @pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (5, 2)])
    def test_is_a_ring_automorphism(self, p, k):
        f = field_new(p, k)
        elements = f.elements()
        for x in elements:
            for y in elements:
                assert frobenius_map(x + y) == frobenius_map(x) + frobenius_map(y)
                assert frobenius_map(x * y) == frobenius_map(x) * frobenius_map(y)

    def test_order_is_degree(self):
        f = field_new(2, 3)
        moved = [x for x in f.elements() if frobenius_map(x) != x]
        assert moved
        for x in f.elements():
            assert frobenius_map(frobenius_map(frobenius_map(x))) == x


@st.composite
def field_triples(draw):
    p, k = draw(st.sampled_from(SMALL_FIELDS + [(3, 4), (5, 3)]))
    f = field_new(p, k)
    codes = st.integers(min_value=0, max_value=f.size - 1)
    return f, f.element(draw(codes)), f.element(draw(codes)), f.element(draw(codes))


@settings(max_examples=300)
@given(field_triples())
def test_field_axioms(triple):
    f, x, y, z = triple
    assert x + (-x) == f.zero
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if not x.is_zero():
        assert x * inv(x) == f.one
