"""
Finite group engine
Uniform group abstraction over four element representations with full
enumeration, element orders and the basic structural predicates
"""

import itertools
import logging
import threading
from collections import deque
from dataclasses import dataclass
from math import gcd, lcm
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import factorint, isprime

from app.config import settings
from app.services.errors import CapacityError, ConstructionError, DomainError, InputError
from app.services.ffield import Field, FieldElement

logger = logging.getLogger(__name__)


# =============================================================================
# Elements
# =============================================================================

@dataclass(frozen=True, slots=True)
class Permutation:
    """Bijection of {1..n}; images[i - 1] is the image of i"""

    images: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    @classmethod
    def identity_of(cls, degree: int) -> "Permutation":
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        """Build from disjoint cycles; (1 2 3) maps 1 -> 2 -> 3 -> 1"""
        images = list(range(1, degree + 1))
        touched = set()
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= degree:
                    raise InputError(f"point {point} outside 1..{degree}")
                if point in touched:
                    raise InputError(f"cycles are not disjoint at point {point}")
                touched.add(point)
            for i, point in enumerate(cycle):
                images[point - 1] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    def cycles(self) -> List[Tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            point = self(start)
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self(point)
            out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles)


@dataclass(frozen=True, slots=True)
class ProjMat:
    """Canonical representative of a PGL(2,q) coset: first nonzero of a,b,c,d is 1"""

    field: Field
    entries: Tuple[int, int, int, int]

    @property
    def a(self) -> FieldElement:
        return FieldElement(self.field, self.entries[0])

    @property
    def b(self) -> FieldElement:
        return FieldElement(self.field, self.entries[1])

    @property
    def c(self) -> FieldElement:
        return FieldElement(self.field, self.entries[2])

    @property
    def d(self) -> FieldElement:
        return FieldElement(self.field, self.entries[3])

    def determinant_code(self) -> int:
        f = self.field
        a, b, c, d = self.entries
        return f.sub_codes(f.mul_codes(a, d), f.mul_codes(b, c))

    @classmethod
    def canonical(cls, field: Field, a, b, c, d) -> "ProjMat":
        """Canonical form of an invertible matrix given as FieldElements or codes"""
        codes = [x.code if isinstance(x, FieldElement) else int(x) for x in (a, b, c, d)]
        f = field
        det = f.sub_codes(f.mul_codes(codes[0], codes[3]), f.mul_codes(codes[1], codes[2]))
        if det == 0:
            raise InputError("singular matrix has no projective class")
        return _canonical(field, *codes)

    def __str__(self) -> str:
        a, b, c, d = (str(x) for x in (self.a, self.b, self.c, self.d))
        return f"[[{a},{b}],[{c},{d}]]"


def _canonical(f: Field, a: int, b: int, c: int, d: int) -> ProjMat:
    lead = a if a else b
    if lead != 1:
        s = f.inv_codes(lead)
        m = f.mul_codes
        a, b, c, d = m(a, s), m(b, s), m(c, s), m(d, s)
    return ProjMat(f, (a, b, c, d))


@dataclass(frozen=True, slots=True)
class DirectPair:
    """One field element per factor of a product of field groups"""

    entries: Tuple[FieldElement, ...]

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.entries) + ")"


@dataclass(frozen=True, slots=True)
class SemidirectPair:
    kernel_part: "GroupElement"
    complement_part: "GroupElement"

    def __str__(self) -> str:
        return f"({self.kernel_part}; {self.complement_part})"


GroupElement = Union[Permutation, ProjMat, DirectPair, SemidirectPair]


def sort_key(g: GroupElement) -> tuple:
    """Deterministic total order on elements of one representation"""
    if isinstance(g, Permutation):
        return (0, g.images)
    if isinstance(g, ProjMat):
        return (1, g.entries)
    if isinstance(g, DirectPair):
        return (2, tuple(x.code for x in g.entries))
    return (3, sort_key(g.kernel_part), sort_key(g.complement_part))


# =============================================================================
# Group base
# =============================================================================

class Group:
    """
    Descriptor plus enumeration and multiplication engine

    Subclasses provide _mul, _inv, identity, generators and _generate. The
    element list is filled once on first use; the fill is guarded by a lock so
    concurrent callers observe one identical tuple.
    """

    element_type: type = object

    def __init__(self, descriptor: str):
        self.descriptor = descriptor
        self._elements: Optional[Tuple[GroupElement, ...]] = None
        self._element_set: Optional[frozenset] = None
        self._orders: Optional[Dict[GroupElement, int]] = None
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor}>"

    # -- to implement --------------------------------------------------

    def identity(self) -> GroupElement:
        raise NotImplementedError

    @property
    def generators(self) -> Tuple[GroupElement, ...]:
        raise NotImplementedError

    def _mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        raise NotImplementedError

    def _inv(self, g: GroupElement) -> GroupElement:
        raise NotImplementedError

    def _generate(self) -> Iterator[GroupElement]:
        raise NotImplementedError

    def predicted_order(self) -> Optional[int]:
        return None

    def _contains(self, g: GroupElement) -> bool:
        return g in self.element_set()

    # -- public --------------------------------------------------------

    def _check(self, g: GroupElement) -> None:
        if not isinstance(g, self.element_type):
            raise InputError(f"{type(g).__name__} is not an element of {self.descriptor}")

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self._check(g)
        self._check(h)
        return self._mul(g, h)

    def inverse(self, g: GroupElement) -> GroupElement:
        self._check(g)
        return self._inv(g)

    def power(self, g: GroupElement, n: int) -> GroupElement:
        if n < 0:
            g, n = self._inv(g), -n
        result = self.identity()
        base = g
        while n:
            if n & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            n >>= 1
        return result

    def conjugate(self, g: GroupElement, x: GroupElement) -> GroupElement:
        """g x g^-1"""
        return self._mul(self._mul(g, x), self._inv(g))

    def contains(self, g: GroupElement) -> bool:
        return isinstance(g, self.element_type) and self._contains(g)

    def elements(self) -> Tuple[GroupElement, ...]:
        if self._elements is None:
            with self._lock:
                if self._elements is None:
                    self._elements = self._enumerate()
        return self._elements

    def element_set(self) -> frozenset:
        if self._element_set is None:
            with self._lock:
                if self._element_set is None:
                    self._element_set = frozenset(self.elements())
        return self._element_set

    @property
    def order(self) -> int:
        predicted = self.predicted_order()
        if predicted is not None:
            return predicted
        return len(self.elements())

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements())

    def order_map(self) -> Dict[GroupElement, int]:
        """
        Order of every element

        Each new element g is powered up to the identity; every power g^i then
        gets order n / gcd(i, n) without further work.
        """
        if self._orders is None:
            with self._lock:
                if self._orders is None:
                    self._orders = self._compute_orders()
        return self._orders

    def _compute_orders(self) -> Dict[GroupElement, int]:
        identity = self.identity()
        orders: Dict[GroupElement, int] = {}
        mul = self._mul
        for g in self.elements():
            if g in orders:
                continue
            powers = [g]
            x = g
            while x != identity:
                x = mul(x, g)
                powers.append(x)
            n = len(powers)
            for i, y in enumerate(powers, start=1):
                if y not in orders:
                    orders[y] = n // gcd(i, n)
        logger.debug(f"[Groups] Orders computed for {self.descriptor} ({len(orders)} elements)")
        return orders

    def _enumerate(self) -> Tuple[GroupElement, ...]:
        cap = settings.enumeration_cap
        predicted = self.predicted_order()
        if predicted is not None and predicted > cap:
            raise CapacityError(f"{self.descriptor} has {predicted} elements", cap, 0)
        out = []
        for g in self._generate():
            out.append(g)
            if len(out) > cap:
                raise CapacityError(f"enumerating {self.descriptor}", cap, len(out))
        logger.info(f"[Groups] Enumerated {self.descriptor}: {len(out)} elements")
        return tuple(out)


def _closure(group: Group, generators: Sequence[GroupElement], limit: Optional[int] = None) -> Tuple[GroupElement, ...]:
    """Breadth-first closure from the identity under right multiplication by generators"""
    cap = settings.enumeration_cap if limit is None else min(limit, settings.enumeration_cap)
    identity = group.identity()
    seen: Dict[GroupElement, None] = {identity: None}
    queue = deque([identity])
    mul = group._mul
    while queue:
        x = queue.popleft()
        for s in generators:
            y = mul(x, s)
            if y not in seen:
                seen[y] = None
                if len(seen) > cap:
                    raise CapacityError(f"closing generators in {group.descriptor}", cap, len(seen))
                queue.append(y)
    return tuple(seen)


# =============================================================================
# Permutation groups
# =============================================================================

class PermutationGroup(Group):
    """Subgroup of S_n given by generators, enumerated by breadth-first closure"""

    element_type = Permutation

    def __init__(self, degree: int, generators: Sequence[Permutation], descriptor: Optional[str] = None):
        if degree < 1:
            raise InputError(f"permutation degree must be >= 1, got {degree}")
        for g in generators:
            if not isinstance(g, Permutation) or g.degree != degree:
                raise InputError(f"generator {g} is not a permutation of degree {degree}")
            if sorted(g.images) != list(range(1, degree + 1)):
                raise InputError(f"generator {g.images} is not a bijection")
        self.degree = degree
        self._identity = Permutation.identity_of(degree)
        self._generators = tuple(dict.fromkeys(g for g in generators if g != self._identity))
        if descriptor is None:
            shown = ", ".join(str(g) for g in self._generators)
            descriptor = f"perm({degree};" + (f" {shown}" if shown else "") + ")"
        super().__init__(descriptor)

    def identity(self) -> Permutation:
        return self._identity

    @property
    def generators(self) -> Tuple[Permutation, ...]:
        return self._generators

    def _mul(self, g: Permutation, h: Permutation) -> Permutation:
        gi = g.images
        return Permutation(tuple(gi[x - 1] for x in h.images))

    def _inv(self, g: Permutation) -> Permutation:
        out = [0] * len(g.images)
        for i, image in enumerate(g.images, start=1):
            out[image - 1] = i
        return Permutation(tuple(out))

    def _generate(self) -> Iterator[Permutation]:
        return iter(_closure(self, self._generators))

    def _contains(self, g: Permutation) -> bool:
        return g.degree == self.degree and g in self.element_set()


# =============================================================================
# Projective linear groups
# =============================================================================

class ProjectiveLinearGroup(Group):
    """PGL(2,q), or PSL(2,q) when special, on canonical projective matrices"""

    element_type = ProjMat

    def __init__(self, field: Field, special: bool = False):
        self.field = field
        self.special = special
        q = field.size
        name = "psl2" if special else "pgl2"
        super().__init__(f"{name}({q})")
        self._identity = ProjMat(field, (1, 0, 0, 1))
        basis = [field.p ** i for i in range(field.k)]
        unipotent = [_canonical(field, 1, x, 0, 1) for x in basis]
        if special:
            lower = [_canonical(field, 1, 0, x, 1) for x in basis]
            gens = unipotent + lower
        else:
            g = field._generator
            gens = [_canonical(field, g, 0, 0, 1)] + unipotent[:1] + [_canonical(field, 0, 1, 1, 0)]
        self._generators = tuple(dict.fromkeys(x for x in gens if x != self._identity))

    def identity(self) -> ProjMat:
        return self._identity

    @property
    def generators(self) -> Tuple[ProjMat, ...]:
        return self._generators

    def predicted_order(self) -> int:
        q = self.field.size
        full = q ** 3 - q
        return full // gcd(2, q - 1) if self.special else full

    def _mul(self, g: ProjMat, h: ProjMat) -> ProjMat:
        f = self.field
        m = f.mul_codes
        ad = f.add_codes
        a, b, c, d = g.entries
        e, x, y, z = h.entries
        return _canonical(
            f,
            ad(m(a, e), m(b, y)),
            ad(m(a, x), m(b, z)),
            ad(m(c, e), m(d, y)),
            ad(m(c, x), m(d, z)),
        )

    def _inv(self, g: ProjMat) -> ProjMat:
        f = self.field
        a, b, c, d = g.entries
        return _canonical(f, d, f.neg_codes(b), f.neg_codes(c), a)

    def _keep(self, det: int) -> bool:
        if det == 0:
            return False
        return self.field.is_square_code(det) if self.special else True

    def _generate(self) -> Iterator[ProjMat]:
        f = self.field
        q = f.size
        m = f.mul_codes
        # a = 0 forces b = 1 and det = -c
        for c in range(1, q):
            if self._keep(f.neg_codes(c)):
                for d in range(q):
                    yield ProjMat(f, (0, 1, c, d))
        for b in range(q):
            for c in range(q):
                bc = m(b, c)
                for d in range(q):
                    if self._keep(f.sub_codes(d, bc)):
                        yield ProjMat(f, (1, b, c, d))

    def _contains(self, g: ProjMat) -> bool:
        if g.field != self.field:
            return False
        a, b, c, d = g.entries
        if not (a == 1 or (a == 0 and b == 1)):
            return False
        return self._keep(g.determinant_code())


# =============================================================================
# Field groups
# =============================================================================

class FieldAdditiveGroup(Group):
    """Direct product of the additive groups of one or more fields"""

    element_type = DirectPair

    def __init__(self, fields: Sequence[Field], descriptor: Optional[str] = None):
        self.fields = tuple(fields)
        if descriptor is None:
            descriptor = " x ".join(f"GF({f.size})+" for f in self.fields)
        super().__init__(descriptor)
        self._identity = DirectPair(tuple(f.zero for f in self.fields))
        gens = []
        for i, f in enumerate(self.fields):
            for j in range(f.k):
                entries = list(self._identity.entries)
                entries[i] = FieldElement(f, f.p ** j)
                gens.append(DirectPair(tuple(entries)))
        self._generators = tuple(gens)

    def identity(self) -> DirectPair:
        return self._identity

    @property
    def generators(self) -> Tuple[DirectPair, ...]:
        return self._generators

    def predicted_order(self) -> int:
        out = 1
        for f in self.fields:
            out *= f.size
        return out

    def _mul(self, g: DirectPair, h: DirectPair) -> DirectPair:
        return DirectPair(tuple(
            FieldElement(x.field, x.field.add_codes(x.code, y.code))
            for x, y in zip(g.entries, h.entries)
        ))

    def _inv(self, g: DirectPair) -> DirectPair:
        return DirectPair(tuple(FieldElement(x.field, x.field.neg_codes(x.code)) for x in g.entries))

    def _generate(self) -> Iterator[DirectPair]:
        for combo in itertools.product(*(f.elements() for f in self.fields)):
            yield DirectPair(tuple(combo))

    def _contains(self, g: DirectPair) -> bool:
        return len(g.entries) == len(self.fields) and all(
            x.field == f for x, f in zip(g.entries, self.fields)
        )


class FieldUnitGroup(Group):
    """Subgroup of a product of field unit groups generated by the given tuples"""

    element_type = DirectPair

    def __init__(self, fields: Sequence[Field], generators: Sequence[DirectPair], descriptor: Optional[str] = None):
        self.fields = tuple(fields)
        for g in generators:
            if len(g.entries) != len(self.fields) or any(
                x.field != f or x.code == 0 for x, f in zip(g.entries, self.fields)
            ):
                raise InputError(f"{g} is not a unit tuple over {self.fields}")
        self._identity = DirectPair(tuple(f.one for f in self.fields))
        self._generators = tuple(dict.fromkeys(g for g in generators if g != self._identity))
        if descriptor is None:
            descriptor = "<" + ", ".join(str(g) for g in self._generators) + ">"
        super().__init__(descriptor)

    def identity(self) -> DirectPair:
        return self._identity

    @property
    def generators(self) -> Tuple[DirectPair, ...]:
        return self._generators

    def predicted_order(self) -> Optional[int]:
        if len(self._generators) == 0:
            return 1
        if len(self._generators) == 1:
            return lcm(*(x.field.unit_order_code(x.code) for x in self._generators[0].entries))
        return None

    def _mul(self, g: DirectPair, h: DirectPair) -> DirectPair:
        return DirectPair(tuple(
            FieldElement(x.field, x.field.mul_codes(x.code, y.code))
            for x, y in zip(g.entries, h.entries)
        ))

    def _inv(self, g: DirectPair) -> DirectPair:
        return DirectPair(tuple(FieldElement(x.field, x.field.inv_codes(x.code)) for x in g.entries))

    def _generate(self) -> Iterator[DirectPair]:
        return iter(_closure(self, self._generators))


# =============================================================================
# Semidirect products
# =============================================================================

class ActionTable:
    """
    Left action of a complement on a kernel by automorphisms

    Materialized as one mapping per complement element when |C|*|K| is within
    settings.action_table_limit, otherwise the rule is evaluated on demand.
    """

    def __init__(
        self,
        kernel: Group,
        complement: Group,
        rule: Callable[[GroupElement, GroupElement], GroupElement],
        description: str = "",
    ):
        self.kernel = kernel
        self.complement = complement
        self.rule = rule
        self.description = description
        self._table: Optional[Dict[GroupElement, Dict[GroupElement, GroupElement]]] = None
        if kernel.order * complement.order <= settings.action_table_limit:
            kernel_elements = kernel.elements()
            self._table = {
                c: {k: rule(c, k) for k in kernel_elements}
                for c in complement.elements()
            }

    @classmethod
    def trivial(cls, kernel: Group, complement: Group) -> "ActionTable":
        return cls(kernel, complement, lambda c, k: k, "trivial")

    def apply(self, c: GroupElement, k: GroupElement) -> GroupElement:
        if self._table is not None:
            return self._table[c][k]
        return self.rule(c, k)

    def mapping(self, c: GroupElement) -> Dict[GroupElement, GroupElement]:
        if self._table is not None:
            return dict(self._table[c])
        return {k: self.rule(c, k) for k in self.kernel.elements()}

    def validate(self) -> None:
        """
        Raise ConstructionError unless c -> act(c) is a homomorphism into Aut(K)

        Every generator must act as a bijective homomorphism (checked against
        all kernel elements times kernel generators), the identity must act
        trivially and act(c t) = act(c) act(t) must hold for every c and every
        complement generator t. By induction on word length these give the
        identities for all elements.
        """
        K, C = self.kernel, self.complement
        kernel_elements = K.elements()
        for t in C.generators:
            images = [self.apply(t, k) for k in kernel_elements]
            for k, image in zip(kernel_elements, images):
                if not K.contains(image):
                    raise ConstructionError("act(c)(k) lies in the kernel", (t, k, image))
            if len(set(images)) != len(kernel_elements):
                raise ConstructionError("act(c) is bijective", (t,))
            for k in kernel_elements:
                for s in K.generators:
                    lhs = self.apply(t, K._mul(k, s))
                    rhs = K._mul(self.apply(t, k), self.apply(t, s))
                    if lhs != rhs:
                        raise ConstructionError("act(c)(k1 k2) = act(c)(k1) act(c)(k2)", (t, k, s))
        one = C.identity()
        for k in kernel_elements:
            if self.apply(one, k) != k:
                raise ConstructionError("act(1) = id", (k,))
        for c in C.elements():
            for t in C.generators:
                ct = C._mul(c, t)
                for k in kernel_elements:
                    if self.apply(ct, k) != self.apply(c, self.apply(t, k)):
                        raise ConstructionError("act(c1 c2) = act(c1) o act(c2)", (c, t, k))


class SemidirectProduct(Group):
    """K x| C with (k1, c1)(k2, c2) = (k1 act(c1)(k2), c1 c2)"""

    element_type = SemidirectPair

    def __init__(self, kernel: Group, complement: Group, action: ActionTable, descriptor: Optional[str] = None):
        if action.kernel is not kernel or action.complement is not complement:
            raise InputError("action table belongs to different groups")
        action.validate()
        self.kernel = kernel
        self.complement = complement
        self.action = action
        if descriptor is None:
            descriptor = f"({kernel.descriptor}) x| ({complement.descriptor})"
        super().__init__(descriptor)
        self._identity = SemidirectPair(kernel.identity(), complement.identity())
        self._generators = tuple(
            [SemidirectPair(s, complement.identity()) for s in kernel.generators]
            + [SemidirectPair(kernel.identity(), t) for t in complement.generators]
        )

    def identity(self) -> SemidirectPair:
        return self._identity

    @property
    def generators(self) -> Tuple[SemidirectPair, ...]:
        return self._generators

    def predicted_order(self) -> int:
        return self.kernel.order * self.complement.order

    def _mul(self, g: SemidirectPair, h: SemidirectPair) -> SemidirectPair:
        c1 = g.complement_part
        return SemidirectPair(
            self.kernel._mul(g.kernel_part, self.action.apply(c1, h.kernel_part)),
            self.complement._mul(c1, h.complement_part),
        )

    def _inv(self, g: SemidirectPair) -> SemidirectPair:
        c_inv = self.complement._inv(g.complement_part)
        return SemidirectPair(self.action.apply(c_inv, self.kernel._inv(g.kernel_part)), c_inv)

    def _generate(self) -> Iterator[SemidirectPair]:
        complement_elements = self.complement.elements()
        for k in self.kernel.elements():
            for c in complement_elements:
                yield SemidirectPair(k, c)

    def _contains(self, g: SemidirectPair) -> bool:
        return self.kernel.contains(g.kernel_part) and self.complement.contains(g.complement_part)

    def embed_kernel(self, k: GroupElement) -> SemidirectPair:
        return SemidirectPair(k, self.complement.identity())

    def embed_complement(self, c: GroupElement) -> SemidirectPair:
        return SemidirectPair(self.kernel.identity(), c)

    def kernel_subgroup(self) -> "Subgroup":
        elements = tuple(self.embed_kernel(k) for k in self.kernel.elements())
        gens = [self.embed_kernel(s) for s in self.kernel.generators]
        return Subgroup(self, gens, elements=elements, descriptor=f"{self.kernel.descriptor} in {self.descriptor}")

    def complement_subgroup(self) -> "Subgroup":
        elements = tuple(self.embed_complement(c) for c in self.complement.elements())
        gens = [self.embed_complement(t) for t in self.complement.generators]
        return Subgroup(self, gens, elements=elements, descriptor=f"{self.complement.descriptor} in {self.descriptor}")


def semidirect(kernel: Group, complement: Group, action: ActionTable, descriptor: Optional[str] = None) -> SemidirectProduct:
    return SemidirectProduct(kernel, complement, action, descriptor)


def direct_product(kernel: Group, complement: Group, descriptor: Optional[str] = None) -> SemidirectProduct:
    return SemidirectProduct(kernel, complement, ActionTable.trivial(kernel, complement), descriptor)


# =============================================================================
# Subgroups and quotients
# =============================================================================

class Subgroup(Group):
    """Subgroup of a parent group carrying the parent's multiplication"""

    def __init__(
        self,
        parent: Group,
        generators: Sequence[GroupElement],
        elements: Optional[Tuple[GroupElement, ...]] = None,
        descriptor: Optional[str] = None,
    ):
        self.parent = parent
        self.element_type = parent.element_type
        generators = list(generators)
        if descriptor is None:
            shown = ", ".join(str(g) for g in generators[:6])
            descriptor = "<" + shown + (", ..." if len(generators) > 6 else "") + ">"
        super().__init__(descriptor)
        identity = parent.identity()
        if elements is not None:
            self._generators = tuple(dict.fromkeys(g for g in generators if g != identity))
            self._elements = elements
            return
        # keep only generators that enlarge the running closure
        kept: List[GroupElement] = []
        closure: Tuple[GroupElement, ...] = (identity,)
        current = {identity}
        for g in generators:
            if g in current:
                continue
            kept.append(g)
            closure = _closure(parent, kept)
            current = set(closure)
        self._generators = tuple(kept)
        self._elements = closure
        self._element_set = frozenset(current)

    def identity(self) -> GroupElement:
        return self.parent.identity()

    @property
    def generators(self) -> Tuple[GroupElement, ...]:
        return self._generators

    def _mul(self, g, h):
        return self.parent._mul(g, h)

    def _inv(self, g):
        return self.parent._inv(g)

    def _generate(self) -> Iterator[GroupElement]:
        return iter(_closure(self.parent, self._generators))


class QuotientGroup(Group):
    """
    G/N on least coset representatives

    Every element of G is mapped to the least member (sort_key) of its coset,
    so multiplication is a parent product followed by one dictionary lookup.
    """

    def __init__(self, parent: Group, normal: Group):
        if not is_normal(parent, normal):
            raise InputError(f"{normal.descriptor} is not normal in {parent.descriptor}")
        self.parent = parent
        self.normal = normal
        self.element_type = parent.element_type
        super().__init__(f"({parent.descriptor}) / ({normal.descriptor})")
        self._rep: Dict[GroupElement, GroupElement] = {}
        reps = []
        normal_elements = normal.elements()
        for g in parent.elements():
            if g in self._rep:
                continue
            coset = [parent._mul(g, n) for n in normal_elements]
            rep = min(coset, key=sort_key)
            for x in coset:
                self._rep[x] = rep
            reps.append(rep)
        self._elements = tuple(reps)
        self._identity = self._rep[parent.identity()]
        self._generators = tuple(dict.fromkeys(
            self._rep[s] for s in parent.generators if self._rep[s] != self._identity
        ))

    def project(self, g: GroupElement) -> GroupElement:
        return self._rep[g]

    def identity(self) -> GroupElement:
        return self._identity

    @property
    def generators(self) -> Tuple[GroupElement, ...]:
        return self._generators

    def predicted_order(self) -> int:
        return len(self._elements)

    def _mul(self, g, h):
        return self._rep[self.parent._mul(g, h)]

    def _inv(self, g):
        return self._rep[self.parent._inv(g)]

    def _generate(self) -> Iterator[GroupElement]:
        return iter(self._elements)

    def image(self, subgroup: Group) -> "Subgroup":
        """Image of a subgroup of the parent"""
        elements = tuple(dict.fromkeys(self._rep[g] for g in subgroup.elements()))
        gens = [self._rep[s] for s in subgroup.generators]
        return Subgroup(self, gens, elements=elements, descriptor=f"image of {subgroup.descriptor}")


# =============================================================================
# Operations
# =============================================================================

def enumerate_elements(group: Group) -> Tuple[GroupElement, ...]:
    return group.elements()


def element_order(group: Group, g: GroupElement) -> int:
    """Least n >= 1 with g^n = identity, by iterated multiplication"""
    group._check(g)
    identity = group.identity()
    bound = group.order
    x = g
    n = 1
    while x != identity:
        x = group._mul(x, g)
        n += 1
        if n > bound:
            raise DomainError(f"{g} has no finite order within |{group.descriptor}| = {bound}")
    return n


def subgroup_generated(group: Group, gens: Iterable[GroupElement], descriptor: Optional[str] = None) -> Subgroup:
    gens = list(gens)
    for g in gens:
        if not group.contains(g):
            raise InputError(f"{g} is not an element of {group.descriptor}")
    return Subgroup(group, gens, descriptor=descriptor)


def is_abelian(group: Group) -> bool:
    """Generators commute pairwise, which is equivalent to all pairs commuting"""
    gens = group.generators
    mul = group._mul
    return all(mul(x, y) == mul(y, x) for x, y in itertools.combinations(gens, 2))


def is_cyclic(group: Group) -> bool:
    n = group.order
    return any(o == n for o in group.order_map().values())


def is_normal(group: Group, sub: Group) -> bool:
    """g h g^-1 in H for every generator g of G and h of H"""
    return all(
        sub.contains(group.conjugate(g, h))
        for g in group.generators
        for h in sub.generators
    )


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def p_elements(group: Group, p: int) -> List[GroupElement]:
    """Elements whose order is a power of p, identity included"""
    return [g for g, o in group.order_map().items() if _is_power_of(o, p)]


def is_nilpotent(group: Group) -> bool:
    """
    Every p-element set S_p is closed and has the size of a Sylow p-subgroup

    Then each S_p is the unique, hence normal, Sylow p-subgroup.
    """
    for p, e in factorint(group.order).items():
        sylow_size = p ** e
        s_p = p_elements(group, p)
        if len(s_p) != sylow_size:
            return False
        if Subgroup(group, s_p).order != sylow_size:
            return False
    return True


def conjugacy_classes(group: Group) -> List[List[GroupElement]]:
    """Orbits of the conjugation action of the generators, ordered by least member"""
    seen = set()
    classes = []
    gens = group.generators
    for g in group.elements():
        if g in seen:
            continue
        orbit = {g}
        stack = [g]
        while stack:
            x = stack.pop()
            for s in gens:
                y = group.conjugate(s, x)
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        seen |= orbit
        classes.append(sorted(orbit, key=sort_key))
    classes.sort(key=lambda cls: sort_key(cls[0]))
    return classes


def normal_closure(group: Group, gens: Iterable[GroupElement], descriptor: Optional[str] = None) -> Subgroup:
    current = subgroup_generated(group, gens, descriptor)
    while True:
        extra = [
            group.conjugate(g, h)
            for g in group.generators
            for h in current.generators
            if not current.contains(group.conjugate(g, h))
        ]
        if not extra:
            return current
        current = Subgroup(group, list(current.generators) + extra[:1], descriptor=descriptor)


def sylow_subgroup(group: Group, p: int) -> Subgroup:
    """
    Sylow p-subgroup grown from the trivial group

    A p-subgroup P that is not Sylow has p-elements outside P normalizing it,
    and adjoining one of them gives a larger p-subgroup.
    """
    target = p ** factorint(group.order).get(p, 0)
    candidates = sorted(p_elements(group, p), key=sort_key)
    current = Subgroup(group, [], descriptor=f"Sylow {p}-subgroup of {group.descriptor}")
    while current.order < target:
        for x in candidates:
            if current.contains(x):
                continue
            if all(current.contains(group.conjugate(x, s)) for s in current.generators):
                current = Subgroup(
                    group, list(current.generators) + [x],
                    descriptor=f"Sylow {p}-subgroup of {group.descriptor}",
                )
                break
        else:
            raise DomainError(f"no p-element normalizes a {current.order}-subgroup of {group.descriptor}")
    return current


def prime_order_elements(group: Group) -> List[GroupElement]:
    """Elements of prime order in sort order"""
    return sorted(
        (g for g, o in group.order_map().items() if isprime(o)),
        key=sort_key,
    )


def find_fixed_point(
    kernel: Group, complement: Group, act: Callable[[GroupElement, GroupElement], GroupElement]
) -> Optional[Tuple[GroupElement, GroupElement]]:
    """
    Least (c, k) with c != 1, k != 1 and act(c, k) = k, or None

    Only prime-order c are tested: a fixed point of c is fixed by every power
    of c, and some power has prime order.
    """
    k_identity = kernel.identity()
    kernel_elements = sorted((k for k in kernel.elements() if k != k_identity), key=sort_key)
    for c in prime_order_elements(complement):
        for k in kernel_elements:
            if act(c, k) == k:
                return c, k
    return None


def is_fixed_point_free(kernel: Group, complement: Group, action: ActionTable) -> bool:
    return find_fixed_point(kernel, complement, action.apply) is None


def bounded_subgroup(group: Group, gens: Sequence[GroupElement], limit: int) -> Optional[Subgroup]:
    """Subgroup generated by gens, or None once the closure outgrows limit"""
    try:
        elements = _closure(group, list(gens), limit)
    except CapacityError:
        return None
    return Subgroup(group, gens, elements=elements)
