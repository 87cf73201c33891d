"""
Group descriptors
Parsing and rendering of the textual group recipes accepted on the command
line, and building the described group
"""

import logging
import re
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from app.services.errors import DescriptorSyntaxError, InputError
from app.services.groups import Group, Permutation
from app.services import constructions

logger = logging.getLogger(__name__)

Cycle = Tuple[int, ...]
CycleList = Tuple[Cycle, ...]

# name -> number of integer arguments
ARITY: Dict[str, int] = {
    "pgl2": 1,
    "psl2": 1,
    "alt": 1,
    "sym": 1,
    "frobfield": 3,
    "perm": 1,
    "permmod": 2,
}
BUILTINS = ("paper.g1", "paper.g2", "paper.g3")
# families whose integer arguments are followed by ";" and generator cycle lists
WITH_GENERATORS = ("perm", "permmod")

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_.]*")
_INTEGER = re.compile(r"\d+")


class Descriptor(BaseModel):
    """Parsed construction recipe"""

    model_config = ConfigDict(frozen=True)

    name: str
    params: Tuple[int, ...] = ()
    generators: Tuple[CycleList, ...] = ()

    @property
    def degree(self) -> Optional[int]:
        """Permutation degree of the elements, when they are permutations"""
        if self.name in ("alt", "sym", "perm"):
            return self.params[0]
        return None

    def render(self) -> str:
        if self.name in BUILTINS:
            return self.name
        if self.name in WITH_GENERATORS:
            head = ", ".join(str(p) for p in self.params)
            shown = ", ".join(render_cycle_list(c) for c in self.generators)
            return f"{self.name}({head};" + (f" {shown}" if shown else "") + ")"
        return f"{self.name}(" + ",".join(str(p) for p in self.params) + ")"


def render_cycle_list(cycles: CycleList) -> str:
    return "".join("(" + " ".join(str(p) for p in cycle) + ")" for cycle in cycles)


# =============================================================================
# Parser
# =============================================================================

class _Parser:
    """Recursive descent over one descriptor string; positions are 0-based"""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str, position: Optional[int] = None) -> DescriptorSyntaxError:
        return DescriptorSyntaxError(message, self.text, self.pos if position is None else position)

    def skip_space(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_space()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, char: str) -> None:
        if self.peek() != char:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.fail(f"expected {char!r}, found {found}")
        self.pos += 1

    def name(self) -> str:
        self.skip_space()
        match = _NAME.match(self.text, self.pos)
        if not match:
            raise self.fail("expected a group name")
        self.pos = match.end()
        return match.group()

    def integer(self) -> int:
        self.skip_space()
        match = _INTEGER.match(self.text, self.pos)
        if not match:
            raise self.fail("expected an integer")
        self.pos = match.end()
        return int(match.group())

    def cycle_list(self, degree: int) -> CycleList:
        cycles: List[Cycle] = []
        seen = set()
        while self.peek() == "(":
            self.pos += 1
            points = []
            while self.peek() not in (")", ""):
                start = self.pos
                point = self.integer()
                if not 1 <= point <= degree:
                    raise self.fail(f"point {point} outside 1..{degree}", start)
                if point in seen:
                    raise self.fail(f"point {point} repeated in one generator", start)
                seen.add(point)
                points.append(point)
            if not points:
                raise self.fail("empty cycle")
            self.expect(")")
            cycles.append(tuple(points))
        if not cycles:
            raise self.fail("expected a cycle")
        return tuple(cycles)

    def cycle_lists(self, degree: int, terminators: str) -> Tuple[CycleList, ...]:
        """Comma-separated cycle lists, possibly none"""
        out: List[CycleList] = []
        if self.peek() in tuple(terminators) + ("",):
            return ()
        out.append(self.cycle_list(degree))
        while self.peek() == ",":
            self.pos += 1
            out.append(self.cycle_list(degree))
        return tuple(out)

    def descriptor(self) -> Descriptor:
        start = self.pos
        name = self.name()
        if name in BUILTINS:
            return Descriptor(name=name)
        if name not in ARITY:
            raise self.fail(f"unknown group name {name!r}", start)
        self.expect("(")
        params = [self.integer()]
        while self.peek() == ",":
            self.pos += 1
            params.append(self.integer())
        if len(params) != ARITY[name]:
            raise self.fail(f"{name} takes {ARITY[name]} arguments, got {len(params)}")
        generators: Tuple[CycleList, ...] = ()
        if name in WITH_GENERATORS:
            self.expect(";")
            generators = self.cycle_lists(params[-1], ")")
        self.expect(")")
        return Descriptor(name=name, params=tuple(params), generators=generators)

    def finish(self) -> None:
        if self.peek():
            raise self.fail("unexpected trailing input")


def parse_descriptor(text: str) -> Descriptor:
    parser = _Parser(text)
    if not parser.peek():
        raise parser.fail("empty descriptor")
    result = parser.descriptor()
    parser.finish()
    logger.debug(f"[Descriptors] Parsed {text!r} as {result.render()}")
    return result


def parse_generators(text: str, degree: int) -> List[Permutation]:
    """Comma-separated cycle lists as permutations of the given degree"""
    parser = _Parser(text)
    lists = parser.cycle_lists(degree, "")
    parser.finish()
    if not lists:
        raise InputError(f"no generators in {text!r}")
    return [Permutation.from_cycles(degree, cycles) for cycles in lists]


# =============================================================================
# Construction
# =============================================================================

_BUILDERS: Dict[str, Callable[[Descriptor], Group]] = {
    "pgl2": lambda d: constructions.pgl2(d.params[0]),
    "psl2": lambda d: constructions.psl2(d.params[0]),
    "alt": lambda d: constructions.alternating(d.params[0]),
    "sym": lambda d: constructions.symmetric(d.params[0]),
    "frobfield": lambda d: constructions.frobenius_field(*d.params),
    "perm": lambda d: constructions.permutation_group(d.params[0], d.generators),
    "permmod": lambda d: constructions.permutation_module(d.params[0], d.params[1], d.generators),
    "paper.g1": lambda d: constructions.paper_g1(),
    "paper.g2": lambda d: constructions.paper_g2(),
    "paper.g3": lambda d: constructions.paper_g3(),
}


def build_group(descriptor: Descriptor) -> Group:
    group = _BUILDERS[descriptor.name](descriptor)
    group.descriptor = descriptor.render()
    return group
