"""
Finite field arithmetic
Exact arithmetic in GF(p^k) on a polynomial basis

Polynomials over GF(p) are coefficient tuples, constant term first. A field
element is encoded as the base-p integer sum(c_i * p^i); that integer is also
the deterministic element order used for tie-breaking.
"""

import functools
import logging
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import isprime, primefactors

from app.config import settings
from app.services.errors import DomainError, InputError, CapacityError

logger = logging.getLogger(__name__)


# =============================================================================
# Polynomial helpers (coefficient tuples, constant term first)
# =============================================================================

def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Remainder of a modulo the monic polynomial b"""
    rem = list(a)
    db = len(b) - 1
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] % p
        if c:
            shift = i - db
            for j in range(db + 1):
                rem[shift + j] = (rem[shift + j] - c * b[j]) % p
    return [c % p for c in rem[:db]]


def _monic_polynomials(p: int, degree: int) -> Iterator[Tuple[int, ...]]:
    """All monic polynomials of one degree, tails in ascending base-p order"""
    for tail in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(tail % p)
            tail //= p
        yield tuple(coeffs) + (1,)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= k/2"""
    k = len(modulus) - 1
    for degree in range(1, k // 2 + 1):
        for divisor in _monic_polynomials(p, degree):
            if not any(_poly_rem(modulus, divisor, p)):
                return False
    return True


def least_irreducible(p: int, k: int) -> Tuple[int, ...]:
    """
    Lexicographically least monic irreducible polynomial of degree k

    Candidates are compared on their coefficient lists read constant term first,
    so c0 is the most significant position.
    """
    for index in range(p ** k):
        coeffs = [(index // p ** (k - 1 - i)) % p for i in range(k)]
        candidate = tuple(coeffs) + (1,)
        if is_irreducible(candidate, p):
            return candidate
    raise DomainError(f"no irreducible polynomial of degree {k} over GF({p})")


# =============================================================================
# Field
# =============================================================================

class Field:
    """GF(p^k) with a fixed modulus; immutable after construction"""

    __slots__ = (
        "p", "k", "modulus", "size", "_weights", "_hash",
        "_exp", "_log", "_add_table", "_neg_table", "_generator",
    )

    def __init__(self, p: int, k: int, modulus: Tuple[int, ...]):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.size = p ** k
        self._weights = tuple(p ** i for i in range(k))
        self._hash = hash((p, k, modulus))
        self._exp: Optional[List[int]] = None
        self._log: Optional[List[int]] = None
        self._add_table: Optional[List[int]] = None
        self._neg_table: Optional[List[int]] = None
        self._generator = self._find_generator()
        self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return self._hash

    # ------------------------------------------------------------------
    # Encoding
    # ------------------------------------------------------------------

    def digits(self, code: int) -> Tuple[int, ...]:
        """Coefficient tuple of an encoded element"""
        out = []
        for _ in range(self.k):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def encode(self, coeffs: Sequence[int]) -> int:
        return sum((c % self.p) * w for c, w in zip(coeffs, self._weights))

    def element(self, value) -> "FieldElement":
        """Element from an integer code or a coefficient list"""
        if isinstance(value, int):
            if not 0 <= value < self.size:
                raise InputError(f"code {value} outside {self!r}")
            return FieldElement(self, value)
        coeffs = list(value)
        if len(coeffs) != self.k:
            raise InputError(f"{self!r} elements need {self.k} coefficients, got {len(coeffs)}")
        return FieldElement(self, self.encode(coeffs))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> List["FieldElement"]:
        """All elements in ascending code order"""
        return [FieldElement(self, code) for code in range(self.size)]

    # ------------------------------------------------------------------
    # Code-level arithmetic (used by the group engine's hot loops)
    # ------------------------------------------------------------------

    def add_codes(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if self._add_table is not None:
            return self._add_table[x * self.size + y]
        p = self.p
        total = 0
        for w in self._weights:
            total += ((x % p + y % p) % p) * w
            x //= p
            y //= p
        return total

    def neg_codes(self, x: int) -> int:
        if self.p == 2:
            return x
        if self._neg_table is not None:
            return self._neg_table[x]
        return self.encode([(-c) % self.p for c in self.digits(x)])

    def sub_codes(self, x: int, y: int) -> int:
        return self.add_codes(x, self.neg_codes(y))

    def mul_codes(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[x] + self._log[y]]
        return self._poly_mul(x, y)

    def inv_codes(self, x: int) -> int:
        if x == 0:
            raise DomainError(f"zero has no inverse in {self!r}")
        if self._exp is not None:
            return self._exp[self.size - 1 - self._log[x]]
        return self.pow_codes(x, self.size - 2)

    def pow_codes(self, x: int, n: int) -> int:
        if n == 0:
            return 1
        if x == 0:
            if n < 0:
                raise DomainError(f"zero has no inverse in {self!r}")
            return 0
        if n < 0:
            x, n = self.inv_codes(x), -n
        if self._exp is not None:
            return self._exp[(self._log[x] * n) % (self.size - 1)]
        result = 1
        base = x
        while n:
            if n & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            n >>= 1
        return result

    def is_square_code(self, x: int) -> bool:
        """Whether a nonzero element is a square"""
        if x == 0:
            return False
        if self.p == 2:
            return True
        if self._log is not None:
            return self._log[x] % 2 == 0
        return self.pow_codes(x, (self.size - 1) // 2) == 1

    def unit_order_code(self, x: int) -> int:
        if x == 0:
            raise DomainError(f"zero is not a unit of {self!r}")
        n = self.size - 1
        if self._log is not None:
            return n // gcd(self._log[x], n)
        for r in primefactors(n) if n > 1 else []:
            while n % r == 0 and self.pow_codes(x, n // r) == 1:
                n //= r
        return n

    # ------------------------------------------------------------------
    # Construction internals
    # ------------------------------------------------------------------

    def _poly_mul(self, x: int, y: int) -> int:
        a = self.digits(x)
        b = self.digits(y)
        prod = [0] * (2 * self.k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        return self.encode(_poly_rem(prod, self.modulus, self.p))

    def _find_generator(self) -> int:
        n = self.size - 1
        if n == 1:
            return 1
        factors = primefactors(n)
        for code in range(1, self.size):
            if all(self.pow_codes(code, n // r) != 1 for r in factors):
                return code
        raise DomainError(f"{self!r} has no multiplicative generator")

    def _build_tables(self) -> None:
        q = self.size
        if q <= settings.field_table_limit:
            exp = [1] * (2 * (q - 1))
            log = [-1] * q
            current = 1
            for i in range(q - 1):
                exp[i] = current
                log[current] = i
                current = self._poly_mul(current, self._generator)
            for i in range(q - 1, 2 * (q - 1)):
                exp[i] = exp[i - (q - 1)]
            self._exp = exp
            self._log = log
            if self.p != 2:
                self._neg_table = [self.encode([(-c) % self.p for c in self.digits(x)]) for x in range(q)]
        if self.p != 2 and q <= settings.add_table_limit:
            digits = [self.digits(x) for x in range(q)]
            self._add_table = [
                self.encode([(a + b) % self.p for a, b in zip(dx, dy)])
                for dx in digits
                for dy in digits
            ]


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, k: int) -> Field:
    modulus = least_irreducible(p, k)
    field = Field(p, k, modulus)
    logger.info(f"[Field] Built {field!r} with modulus {list(modulus)}")
    return field


def field_new(p: int, k: int) -> Field:
    """
    Deterministic GF(p^k)

    The modulus is the lexicographically least monic irreducible polynomial of
    degree k, so two constructions always agree on element encodings.
    """
    if not isinstance(p, int) or not isprime(p):
        raise InputError(f"field characteristic must be prime, got {p}")
    if not isinstance(k, int) or k < 1:
        raise InputError(f"extension degree must be >= 1, got {k}")
    if k > settings.field_size_cap.bit_length() or p ** k > settings.field_size_cap:
        raise CapacityError(f"GF({p}^{k}) exceeds the field size cap", settings.field_size_cap)
    return _cached_field(p, k)


# =============================================================================
# Field elements
# =============================================================================

class FieldElement:
    """Element of GF(p^k)"""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.field.digits(self.code)

    def is_zero(self) -> bool:
        return self.code == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.code == other.code and self.field == other.field

    def __hash__(self) -> int:
        return hash((self.field, self.code))

    def __lt__(self, other: "FieldElement") -> bool:
        return self.code < other.code

    def __repr__(self) -> str:
        return f"FieldElement({self.field!r}, {list(self.coeffs)})"

    def __str__(self) -> str:
        if self.field.k == 1:
            return str(self.code)
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return add(self, neg(other))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, other)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, inv(other))

    def __neg__(self) -> "FieldElement":
        return neg(self)

    def __pow__(self, n: int) -> "FieldElement":
        return power(self, n)


def _same_field(x: FieldElement, y: FieldElement) -> Field:
    if x.field != y.field:
        raise InputError(f"operands from different fields: {x.field!r} and {y.field!r}")
    return x.field


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    f = _same_field(x, y)
    return FieldElement(f, f.add_codes(x.code, y.code))


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    f = _same_field(x, y)
    return FieldElement(f, f.mul_codes(x.code, y.code))


def neg(x: FieldElement) -> FieldElement:
    return FieldElement(x.field, x.field.neg_codes(x.code))


def inv(x: FieldElement) -> FieldElement:
    return FieldElement(x.field, x.field.inv_codes(x.code))


def power(x: FieldElement, n: int) -> FieldElement:
    """x^n by square-and-multiply (table lookups when the field has them); x^0 = 1"""
    return FieldElement(x.field, x.field.pow_codes(x.code, n))


def unit_order(x: FieldElement) -> int:
    """Least n >= 1 with x^n = 1"""
    return x.field.unit_order_code(x.code)


def multiplicative_generator(f: Field) -> FieldElement:
    """Generator of the unit group that is least in code order"""
    return FieldElement(f, f._generator)


def frobenius_map(x: FieldElement) -> FieldElement:
    """The p-power automorphism x -> x^p"""
    return power(x, x.field.p)


def units_of_order(f: Field, m: int) -> FieldElement:
    """Generator of the unique subgroup of order m in the unit group"""
    if m < 1 or (f.size - 1) % m:
        raise InputError(f"{m} does not divide |{f!r}^x| = {f.size - 1}")
    return power(multiplicative_generator(f), (f.size - 1) // m)
