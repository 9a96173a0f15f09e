"""Exact domain types for periodic subsets of the integers.

A distance set S generates the graph G(S) on the integers, with an edge
between i and j whenever |i - j| is in S.  Periodic subsets of the integers
are described by their gap ("block") structure: the list of differences
between consecutive elements, repeated forever in both directions.  All
densities are exact rationals; no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Union

DEFAULT_EXPANSION_CAP = 10**6


class BlockSyntaxError(ValueError):
    """Raised for malformed block notation; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class ExpansionLimitError(RuntimeError):
    """Raised when expanding a block structure would exceed the block cap."""

    def __init__(self, needed: int, cap: int):
        super().__init__(f"expansion needs {needed} blocks, cap is {cap}")
        self.needed = needed
        self.cap = cap


@dataclass(frozen=True)
class DistanceSet:
    """A finite set of distinct positive integer distances, kept sorted."""

    distances: tuple[int, ...]

    def __init__(self, distances: Iterable[int]):
        ds = tuple(sorted({int(d) for d in distances}))
        if not ds:
            raise ValueError("distance set must be nonempty")
        if ds[0] < 1:
            raise ValueError(f"distances must be positive, got {ds[0]}")
        object.__setattr__(self, "distances", ds)

    @classmethod
    def parse(cls, text: str) -> "DistanceSet":
        """Parse a comma-separated list such as '1,4,7'."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise ValueError("empty distance set")
        try:
            return cls(int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"bad distance set {text!r}: {exc}") from None

    @property
    def max_element(self) -> int:
        return self.distances[-1]

    @property
    def divisor(self) -> int:
        g = 0
        for d in self.distances:
            g = gcd(g, d)
        return g

    def is_all_odd(self) -> bool:
        return all(d % 2 == 1 for d in self.distances)

    def scaled(self, d: int) -> "DistanceSet":
        if d < 1:
            raise ValueError("scale factor must be positive")
        return DistanceSet(x * d for x in self.distances)

    def __contains__(self, value: int) -> bool:
        return value in set(self.distances)

    def __iter__(self):
        return iter(self.distances)

    def __len__(self) -> int:
        return len(self.distances)

    def __str__(self) -> str:
        return "{" + ",".join(str(d) for d in self.distances) + "}"


@dataclass(frozen=True)
class NormalizedSet:
    """A distance set with its gcd factored out (densities are invariant)."""

    reduced: DistanceSet
    divisor: int
    all_odd: bool


def normalize(distances: DistanceSet) -> NormalizedSet:
    """Factor out gcd(S); flag reduced sets with only odd elements.

    The independence ratio satisfies alpha-bar(S) = alpha-bar(S/d), and an
    all-odd reduced set has ratio 1/2 (the even integers are independent).
    """
    d = distances.divisor
    reduced = DistanceSet(x // d for x in distances.distances)
    return NormalizedSet(reduced=reduced, divisor=d, all_odd=reduced.is_all_odd())


def power_distance_set(distances: DistanceSet, r: int) -> DistanceSet:
    """Distance set of the r-th graph power of G(S).

    Two integers are within graph distance r exactly when their difference
    is a sum of t <= r signed generators; only positive values are kept.
    """
    if r < 1:
        raise ValueError("power must be >= 1")
    reach = {0}
    positive: set[int] = set()
    for _ in range(r):
        nxt = set()
        for x in reach:
            for s in distances:
                nxt.add(x + s)
                nxt.add(x - s)
        reach = nxt
        positive.update(v for v in reach if v > 0)
    return DistanceSet(positive)


# ---------------------------------------------------------------------------
# Block notation
#
# Grammar (terms separated by whitespace, exponents bind tightly):
#   structure := term (WS term)*
#   term      := INT | INT '^' INT | '(' structure ')' '^' INT
#   INT       := [1-9][0-9]*
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    size: int


@dataclass(frozen=True)
class Power:
    body: "BlockStructure"
    exponent: int


Node = Union[Literal, Power]


@dataclass(frozen=True)
class BlockStructure:
    """AST for block notation; expansion gives the flat list of block sizes."""

    items: tuple[Node, ...]

    def block_count(self) -> int:
        total = 0
        for item in self.items:
            if isinstance(item, Literal):
                total += 1
            else:
                total += item.body.block_count() * item.exponent
        return total

    def expand(self, cap: int = DEFAULT_EXPANSION_CAP) -> "BlockList":
        needed = self.block_count()
        if needed > cap:
            raise ExpansionLimitError(needed, cap)
        sizes: list[int] = []
        self._emit(sizes)
        return BlockList(tuple(sizes))

    def _emit(self, out: list[int]) -> None:
        for item in self.items:
            if isinstance(item, Literal):
                out.append(item.size)
            else:
                for _ in range(item.exponent):
                    item.body._emit(out)

    def render(self) -> str:
        return " ".join(_render_node(item) for item in self.items)

    def __str__(self) -> str:
        return self.render()


def _render_node(node: Node) -> str:
    if isinstance(node, Literal):
        return str(node.size)
    body = node.body
    if len(body.items) == 1 and isinstance(body.items[0], Literal):
        return f"{body.items[0].size}^{node.exponent}"
    return f"({body.render()})^{node.exponent}"


def structure_from_sizes(sizes: Iterable[int]) -> BlockStructure:
    """Wrap a flat size list as a block structure (no grouping)."""
    items = tuple(Literal(int(s)) for s in sizes)
    bs = BlockStructure(items)
    for item in items:
        if item.size < 1:
            raise ValueError("block sizes must be positive")
    return bs


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "(":
            tokens.append(("LP", None, i))
            i += 1
        elif c == ")":
            tokens.append(("RP", None, i))
            i += 1
        elif c == "^":
            tokens.append(("CARET", None, i))
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            lexeme = text[i:j]
            if lexeme[0] == "0":
                raise BlockSyntaxError("integers must be positive without leading zeros", i)
            tokens.append(("INT", int(lexeme), i))
            i = j
        else:
            raise BlockSyntaxError(f"unexpected character {c!r}", i)
    return tokens


def parse_block_notation(text: str) -> BlockStructure:
    """Parse block notation such as '(2 3)^5 7 (3 4)^2'."""
    tokens = _tokenize(text)
    if not tokens:
        raise BlockSyntaxError("empty block notation", 0)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("EOF", None, len(text))

    def take(kind: str, what: str):
        nonlocal pos
        tok = peek()
        if tok[0] != kind:
            raise BlockSyntaxError(f"expected {what}", tok[2])
        pos += 1
        return tok

    def parse_structure(stop_at_rp: bool) -> BlockStructure:
        items: list[Node] = []
        while True:
            tok = peek()
            if tok[0] == "EOF" or (tok[0] == "RP" and stop_at_rp):
                break
            items.append(parse_term())
        if not items:
            raise BlockSyntaxError("empty group", peek()[2])
        return BlockStructure(tuple(items))

    def parse_term() -> Node:
        nonlocal pos
        tok = peek()
        if tok[0] == "INT":
            pos += 1
            if peek()[0] == "CARET":
                pos += 1
                (_, exp, off) = take("INT", "exponent")
                return Power(BlockStructure((Literal(tok[1]),)), exp)
            return Literal(tok[1])
        if tok[0] == "LP":
            pos += 1
            body = parse_structure(stop_at_rp=True)
            take("RP", "')'")
            take("CARET", "'^' after ')'")
            (_, exp, off) = take("INT", "exponent")
            return Power(body, exp)
        raise BlockSyntaxError("expected block size or '('", tok[2])

    result = parse_structure(stop_at_rp=False)
    tok = peek()
    if tok[0] != "EOF":
        raise BlockSyntaxError("unbalanced ')'", tok[2])
    return result


def expand_blocks(structure: BlockStructure, cap: int = DEFAULT_EXPANSION_CAP) -> "BlockList":
    return structure.expand(cap=cap)


@dataclass(frozen=True)
class BlockList:
    """Flat list of block sizes describing one period of a periodic set."""

    sizes: tuple[int, ...]

    def __init__(self, sizes: Iterable[int]):
        ss = tuple(int(s) for s in sizes)
        if not ss:
            raise ValueError("block list must be nonempty")
        if min(ss) < 1:
            raise ValueError("block sizes must be positive")
        object.__setattr__(self, "sizes", ss)

    @property
    def period(self) -> int:
        return sum(self.sizes)

    @property
    def count(self) -> int:
        return len(self.sizes)

    def density(self) -> Fraction:
        return Fraction(self.count, self.period)

    def positions(self, copies: int = 1) -> list[int]:
        """Element positions of `copies` consecutive periods, anchored at 0."""
        out = []
        x = 0
        for _ in range(copies):
            for s in self.sizes:
                out.append(x)
                x += s
        return out

    def notation(self) -> str:
        """Render the sizes compactly, run-length encoding repeats."""
        parts = []
        i = 0
        ss = self.sizes
        while i < len(ss):
            j = i
            while j < len(ss) and ss[j] == ss[i]:
                j += 1
            run = j - i
            parts.append(f"{ss[i]}^{run}" if run > 1 else str(ss[i]))
            i = j
        return " ".join(parts)

    def __str__(self) -> str:
        return self.notation()


def block_density(blocks: BlockList) -> Fraction:
    """Density of the periodic set described by `blocks`, in lowest terms."""
    return blocks.density()


@dataclass(frozen=True)
class IndependenceVerdict:
    ok: bool
    violation: Optional[tuple[int, int]] = None

    @property
    def distance(self) -> Optional[int]:
        if self.violation is None:
            return None
        return self.violation[1] - self.violation[0]

    def __bool__(self) -> bool:
        return self.ok


def verify_periodic_independent(blocks: BlockList, distances: DistanceSet) -> IndependenceVerdict:
    """Check that the periodic set given by `blocks` is independent in G(S).

    Unrolls ceil(max(S)/period) + 2 periods and scans all element pairs at
    distance <= max(S); any violating pair in the infinite set appears within
    max(S) of some period boundary, so this window is sufficient.
    """
    s = distances.max_element
    period = blocks.period
    copies = -(-s // period) + 2
    pts = blocks.positions(copies)
    in_s = set(distances.distances)
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            d = y - x
            if d > s:
                break
            if d in in_s:
                return IndependenceVerdict(ok=False, violation=(x, y))
    return IndependenceVerdict(ok=True)
