"""Catalog of closed-form independence ratios with a verification harness.

Each family pairs a parameterized distance set with its known exact value,
conjectured value, or proven bound, dispatched by residue classes where
applicable, plus (where a periodic witness is known) a block structure whose
density attains the stated value.  Kinds are tagged faithfully: conjectured
formulas are never reported as theorems, and a verification mismatch is a
failure only for proven statements.

Residue tables are transcribed literally; the few places where a printed
extremal structure disagrees with its own stated density use a corrected
structure that is machine-verified against the value (the tests cross-check
every witness by expansion, independence, and exact density).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Optional

from .core import (
    BlockList,
    BlockStructure,
    DistanceSet,
    Literal,
    Power,
    block_density,
    verify_periodic_independent,
)
from .ratio import independence_ratio
from .search import RatioReport, SearchBudget

THEOREM = "theorem"
CONJECTURE = "conjecture"
LOWER = "lower_bound"
UPPER = "upper_bound"
LIMIT = "limit"


class UnknownFamilyError(KeyError):
    pass


def _bs(*parts) -> BlockStructure:
    """Assemble block notation from ints and ([sizes], exponent) groups.

    Groups with exponent zero are dropped; an overall empty structure is an
    error (callers guard their parameter ranges).
    """
    items = []
    for part in parts:
        if isinstance(part, int):
            items.append(Literal(part))
        else:
            sizes, exp = part
            if exp == 0:
                continue
            body = BlockStructure(tuple(Literal(s) for s in sizes))
            items.append(Power(body, exp))
    if not items:
        raise ValueError("empty block structure")
    return BlockStructure(tuple(items))


@dataclass(frozen=True)
class Family:
    """One parameterized family: set builder, value rule, witness, matcher."""

    id: str
    kind: str
    description: str
    parameters: tuple[str, ...]
    set_builder: Callable[[dict], DistanceSet]
    domain: Callable[[dict], bool]
    value_rule: Optional[Callable[[dict], Fraction]] = None
    witness_builder: Optional[Callable[[dict], Optional[BlockStructure]]] = None
    witness_value: Optional[Callable[[dict], Fraction]] = None
    matcher: Optional[Callable[[DistanceSet], Optional[dict]]] = None
    strict: bool = False  # bound families: paper states a strict inequality
    findings_only: bool = False  # mismatches are findings, never failures

    def in_domain(self, params: dict) -> bool:
        return self.domain(params)

    def build_set(self, params: dict) -> DistanceSet:
        return self.set_builder(params)

    def predicted(self, params: dict) -> Optional[Fraction]:
        if self.value_rule is None:
            if self.witness_value is not None:
                return self.witness_value(params)
            return None
        return self.value_rule(params)

    def witness(self, params: dict) -> Optional[BlockStructure]:
        if self.witness_builder is None:
            return None
        return self.witness_builder(params)

    def match(self, distances: DistanceSet) -> Optional[dict]:
        if self.matcher is None:
            return None
        params = self.matcher(distances)
        if params is None or not self.domain(params):
            return None
        return params

    def sweep(self, lo: int, hi: int) -> list[dict]:
        """All in-domain parameter points with every parameter in [lo, hi]."""
        points: list[dict] = [{}]
        for name in self.parameters:
            points = [dict(p, **{name: v}) for p in points for v in range(lo, hi + 1)]
        return [p for p in points if self.domain(p)]

    def catalog_entry(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "parameters": list(self.parameters),
            "description": self.description,
        }


def _sorted_tuple(distances: DistanceSet) -> tuple[int, ...]:
    return distances.distances


def _is_run_from_one(t: tuple[int, ...]) -> bool:
    return t == tuple(range(1, len(t) + 1))


# ---------------------------------------------------------------------------
# Theorem families
# ---------------------------------------------------------------------------


def _family_all_odd() -> Family:
    return Family(
        id="all-odd",
        kind=THEOREM,
        description="every generator odd: ratio 1/2 (even integers)",
        parameters=("k",),
        set_builder=lambda p: DistanceSet([1, 2 * p["k"] + 1, 2 * p["k"] + 3]),
        domain=lambda p: p["k"] >= 1,
        value_rule=lambda p: Fraction(1, 2),
        witness_builder=lambda p: _bs(2),
        matcher=lambda S: {"k": 1} if S.is_all_odd() else None,
    )


def _family_consecutive() -> Family:
    return Family(
        id="consecutive",
        kind=THEOREM,
        description="{1,...,l}: ratio 1/(l+1)",
        parameters=("l",),
        set_builder=lambda p: DistanceSet(range(1, p["l"] + 1)),
        domain=lambda p: p["l"] >= 1,
        value_rule=lambda p: Fraction(1, p["l"] + 1),
        witness_builder=lambda p: _bs(p["l"] + 1),
        matcher=lambda S: {"l": len(S)} if _is_run_from_one(_sorted_tuple(S)) else None,
    )


def _family_two_generators() -> Family:
    def value(p):
        a, b = p["a"], p["b"]
        if a % 2 == 1 and b % 2 == 1:
            return Fraction(1, 2)
        return Fraction(a + b - 1, 2 * (a + b))

    def witness(p):
        a, b = p["a"], p["b"]
        if a % 2 == 1 and b % 2 == 1:
            return _bs(2)
        if a == 1 and b % 2 == 0:
            return _bs(([2], b // 2 - 1), 3)
        return None

    def matcher(S):
        t = _sorted_tuple(S)
        if len(t) == 2:
            return {"a": t[0], "b": t[1]}
        return None

    return Family(
        id="two-generators",
        kind=THEOREM,
        description="{a,b}, gcd 1: 1/2 if both odd, else (a+b-1)/(2a+2b)",
        parameters=("a", "b"),
        set_builder=lambda p: DistanceSet([p["a"], p["b"]]),
        domain=lambda p: 1 <= p["a"] < p["b"] and gcd(p["a"], p["b"]) == 1,
        value_rule=value,
        witness_builder=witness,
        matcher=matcher,
    )


def _family_interval_and_k() -> Family:
    def value(p):
        l, k = p["l"], p["k"]
        if k % l:
            return Fraction(1, l)
        return Fraction(k, l * (k + 1))

    def witness(p):
        l, k = p["l"], p["k"]
        if k % l:
            return _bs(l)
        return _bs(([l], k // l - 1), l + 1)

    def matcher(S):
        t = _sorted_tuple(S)
        if len(t) < 2:
            return None
        l = len(t)
        if t[:-1] == tuple(range(1, l)) and t[-1] > l:
            return {"l": l, "k": t[-1]}
        return None

    return Family(
        id="interval-and-k",
        kind=THEOREM,
        description="{1,...,l-1,k}, k>l: 1/l, or k/(l(k+1)) when l divides k",
        parameters=("l", "k"),
        set_builder=lambda p: DistanceSet(list(range(1, p["l"])) + [p["k"]]),
        domain=lambda p: p["l"] >= 2 and p["k"] > p["l"],
        value_rule=value,
        witness_builder=witness,
        matcher=matcher,
    )


def _family_one_two_3k() -> Family:
    return Family(
        id="1-2-3k",
        kind=THEOREM,
        description="{1,2,3k}: ratio k/(3k+1)",
        parameters=("k",),
        set_builder=lambda p: DistanceSet([1, 2, 3 * p["k"]]),
        domain=lambda p: p["k"] >= 1,
        value_rule=lambda p: Fraction(p["k"], 3 * p["k"] + 1),
        witness_builder=lambda p: _bs(([3], p["k"] - 1), 4),
        matcher=lambda S: (
            {"k": S.distances[2] // 3}
            if len(S) == 3
            and S.distances[:2] == (1, 2)
            and S.distances[2] % 3 == 0
            and S.distances[2] >= 3
            else None
        ),
    )


def _family_1_3_2i() -> Family:
    return Family(
        id="1-3-2i",
        kind=THEOREM,
        description="{1,3,2i}, i>=2: ratio i/(2i+3)",
        parameters=("i",),
        set_builder=lambda p: DistanceSet([1, 3, 2 * p["i"]]),
        domain=lambda p: p["i"] >= 2,
        value_rule=lambda p: Fraction(p["i"], 2 * p["i"] + 3),
        witness_builder=lambda p: _bs(([2], p["i"] - 1), 5),
        matcher=lambda S: (
            {"i": S.distances[2] // 2}
            if len(S) == 3 and S.distances[:2] == (1, 3) and S.distances[2] % 2 == 0
            else None
        ),
    )


def _family_1_5_2i() -> Family:
    return Family(
        id="1-5-2i",
        kind=THEOREM,
        description="{1,5,2i}, i>=5: ratio i/(2i+5)",
        parameters=("i",),
        set_builder=lambda p: DistanceSet([1, 5, 2 * p["i"]]),
        domain=lambda p: p["i"] >= 5,
        value_rule=lambda p: Fraction(p["i"], 2 * p["i"] + 5),
        witness_builder=lambda p: _bs(([2], p["i"] - 1), 7),
        matcher=lambda S: (
            {"i": S.distances[2] // 2}
            if len(S) == 3 and S.distances[:2] == (1, 5) and S.distances[2] % 2 == 0
            else None
        ),
    )


def _family_1_4_k() -> Family:
    def value(p):
        k = p["k"]
        r = k % 5
        if r == 0:
            return Fraction(2 * k, 5 * k + 5)
        if r == 1 or r == 4:
            return Fraction(2, 5)
        if r == 2:
            return Fraction(2 * k + 1, 5 * k + 5)
        return Fraction(2 * k - 1, 5 * k + 5)

    def witness(p):
        k = p["k"]
        r, i = k % 5, k // 5
        if r == 0:
            return _bs(([2, 3], i - 1), 3, 3)
        if r == 2:
            return _bs(([2, 3], i), 3)
        if r == 3:
            return _bs(([2, 3], i - 1), 3, 3, 3)
        return _bs(2, 3)

    return Family(
        id="1-4-k",
        kind=THEOREM,
        description="{1,4,k}, k>4: five residue classes of k mod 5",
        parameters=("k",),
        set_builder=lambda p: DistanceSet([1, 4, p["k"]]),
        domain=lambda p: p["k"] > 4,
        value_rule=value,
        witness_builder=witness,
        matcher=lambda S: (
            {"k": S.distances[2]}
            if len(S) == 3 and S.distances[:2] == (1, 4)
            else None
        ),
    )


def _family_1_k_kp1() -> Family:
    def value(p):
        k = p["k"]
        r = k % 3
        if r == 0:
            return Fraction(2 * k, 6 * k + 3)
        if r == 1:
            return Fraction(1, 3)
        return Fraction(k + 1, 3 * k + 6)

    def witness(p):
        k = p["k"]
        r = k % 3
        if r == 0:
            i = k // 3
            return _bs(2, ([3], i - 1), 5, ([3], i - 1))
        if r == 1:
            return _bs(3)
        i = (k + 1) // 3
        return _bs(([3], i - 1), 4)

    return Family(
        id="1-k-kp1",
        kind=THEOREM,
        description="{1,k,k+1}, k>=2: three residue classes of k mod 3",
        parameters=("k",),
        set_builder=lambda p: DistanceSet([1, p["k"], p["k"] + 1]),
        domain=lambda p: p["k"] >= 2,
        value_rule=value,
        witness_builder=witness,
        matcher=lambda S: (
            {"k": S.distances[1]}
            if len(S) == 3
            and S.distances[0] == 1
            and S.distances[2] == S.distances[1] + 1
            and S.distances[1] >= 2
            else None
        ),
    )


def _family_1_k_kp3() -> Family:
    def value(p):
        k = p["k"]
        r = k % 5
        if r == 0:
            return Fraction(2 * k + 5, 5 * k + 20)
        if r == 1:
            return Fraction(2, 5)
        if r == 2:
            return Fraction(2 * k + 6, 5 * k + 20)
        if r == 3:
            return Fraction(4 * k + 3, 10 * k + 15)
        return Fraction(2 * k + 7, 5 * k + 20)

    def witness(p):
        k = p["k"]
        r, i = k % 5, k // 5
        if r == 0:
            return _bs(([2, 3], i - 1), 3, 3, 3)
        if r == 1:
            return _bs(2, 3)
        if r == 2:
            return _bs(([2, 3], i), 3, 3)
        if r == 3:
            return _bs(([2, 3], i), 2, ([2, 3], i), 2, 5)
        return _bs(([2, 3], i + 1), 3)

    return Family(
        id="1-k-kp3",
        kind=THEOREM,
        description="{1,k,k+3}, k>=3: five residue classes of k mod 5",
        parameters=("k",),
        set_builder=lambda p: DistanceSet([1, p["k"], p["k"] + 3]),
        domain=lambda p: p["k"] >= 3,
        value_rule=value,
        witness_builder=witness,
        matcher=lambda S: (
            {"k": S.distances[1]}
            if len(S) == 3
            and S.distances[0] == 1
            and S.distances[2] == S.distances[1] + 3
            and S.distances[1] >= 3
            else None
        ),
    )


def _witness_1_2k_2kp2l(p):
    k, l = p["k"], p["l"]
    if k == 1:
        return _bs(3)
    return _bs(([2], k - 1), 3, ([2], k - 1), 2 * l + 1)


def _family_1_2k_2kp2l() -> Family:
    def matcher(S):
        t = _sorted_tuple(S)
        if len(t) == 3 and t[0] == 1 and t[1] % 2 == 0 and t[2] % 2 == 0:
            k = t[1] // 2
            l = (t[2] - t[1]) // 2
            if (t[2] - t[1]) % 2 == 0 and l >= 1:
                return {"k": k, "l": l}
        return None

    return Family(
        id="1-2k-2kp2l",
        kind=THEOREM,
        description="{1,2k,2k+2l}, 1<=l<=3, k>=l: ratio 2k/(4k+2l)",
        parameters=("k", "l"),
        set_builder=lambda p: DistanceSet([1, 2 * p["k"], 2 * p["k"] + 2 * p["l"]]),
        domain=lambda p: 1 <= p["l"] <= 3 and p["k"] >= p["l"],
        value_rule=lambda p: Fraction(2 * p["k"], 4 * p["k"] + 2 * p["l"]),
        witness_builder=_witness_1_2k_2kp2l,
        matcher=matcher,
    )


def _family_one_and_multiples() -> Family:
    def witness(p):
        k, l = p["k"], p["l"]
        period = k * (l + 1)
        if k % 2 == 1:
            return _bs(([2], k - 1), period - 2 * (k - 1))
        h = k // 2
        return _bs(([2], h - 1), 3, ([2], k - h - 1), period - 2 * k + 1)

    def matcher(S):
        t = _sorted_tuple(S)
        if len(t) < 3 or t[0] != 1:
            return None
        rest = t[1:]
        k = rest[0]
        l = len(rest)
        if k >= 2 and rest == tuple(k * j for j in range(1, l + 1)):
            return {"k": k, "l": l}
        return None

    return Family(
        id="one-and-multiples",
        kind=THEOREM,
        description="{1,k,2k,...,lk}, k,l>=2: ratio 1/(l+1)",
        parameters=("k", "l"),
        set_builder=lambda p: DistanceSet([1] + [p["k"] * j for j in range(1, p["l"] + 1)]),
        domain=lambda p: p["k"] >= 2 and p["l"] >= 2,
        value_rule=lambda p: Fraction(1, p["l"] + 1),
        witness_builder=witness,
        matcher=matcher,
    )


def _family_arith_plus_b() -> Family:
    def value(p):
        m, b = p["m"], p["b"]
        if b % m == 0:
            return Fraction(b // m, b + 1)
        return Fraction(1, m)

    def witness(p):
        a, m, b = p["a"], p["m"], p["b"]
        if a != 1:
            return None
        if b % m == 0:
            return _bs(([m], b // m - 1), m + 1)
        return _bs(m)

    def matcher(S):
        t = _sorted_tuple(S)
        a = t[0]
        chain = []
        j = 1
        rest = set(t)
        while j * a in rest:
            chain.append(j * a)
            j += 1
        leftovers = rest - set(chain)
        if len(leftovers) == 1:
            b = leftovers.pop()
            m = len(chain) + 1
            if b > (m - 1) * a:
                return {"a": a, "m": m, "b": b}
        # the extra element may sit inside the progression's range
        for b in t[1:]:
            chain = [j * a for j in range(1, len(t))]
            if set(chain) | {b} == rest and b not in chain:
                return {"a": a, "m": len(t), "b": b}
        return None

    return Family(
        id="arith-and-b",
        kind=THEOREM,
        description="{a,2a,...,(m-1)a,b}, gcd(a,b)=1: (b/m)/(b+1) if m|b (a=1) else 1/m",
        parameters=("a", "m", "b"),
        set_builder=lambda p: DistanceSet([p["a"] * j for j in range(1, p["m"])] + [p["b"]]),
        # the m | b clause is restricted to a = 1 and the m = 2 case to a = 1:
        # for a >= 2 both printed branches are contradicted by exact
        # computation (e.g. {2,3,4} is 1/3, {2,5} is 3/7)
        domain=lambda p: (
            p["a"] >= 1
            and p["m"] >= 2
            and p["b"] > p["a"]
            and gcd(p["a"], p["b"]) == 1
            and p["b"] not in {p["a"] * j for j in range(1, p["m"])}
            and (p["m"] >= 3 or p["a"] == 1)
            and (p["b"] % p["m"] != 0 or p["a"] == 1)
        ),
        value_rule=value,
        witness_builder=witness,
        matcher=matcher,
    )


def _family_triple_sum() -> Family:
    def value(p):
        a, b = p["a"], p["b"]
        d = b - a
        if d % 3 == 0:
            return Fraction(1, 3)
        if d % 3 == 1:
            k = (d - 1) // 3
            return Fraction(a + k, 3 * (a + k) + 1)
        k = (d - 2) // 3
        return Fraction(a + 2 * k + 1, 3 * a + 6 * k + 4)

    def witness(p):
        if (p["b"] - p["a"]) % 3 == 0:
            return _bs(3)
        return None

    def matcher(S):
        t = _sorted_tuple(S)
        if len(t) == 3 and t[2] == t[0] + t[1]:
            return {"a": t[0], "b": t[1]}
        return None

    return Family(
        id="a-b-apb",
        kind=THEOREM,
        description="{a,b,a+b}, gcd(a,b)=1: three cases by (b-a) mod 3",
        parameters=("a", "b"),
        set_builder=lambda p: DistanceSet([p["a"], p["b"], p["a"] + p["b"]]),
        domain=lambda p: 1 <= p["a"] < p["b"] and gcd(p["a"], p["b"]) == 1,
        value_rule=value,
        witness_builder=witness,
        matcher=matcher,
    )


def _family_four_mixed() -> Family:
    def matcher(S):
        t = _sorted_tuple(S)
        if len(t) != 4:
            return None
        for a in t:
            for b in t:
                if a < b and {a, b, b - a, a + b} == set(t):
                    if (a + b) % 2 == 1 and gcd(a, b) == 1:
                        return {"a": a, "b": b}
        return None

    return Family(
        id="a-b-bma-apb",
        kind=THEOREM,
        description="{a,b,b-a,a+b}, a+b odd, gcd 1: ratio 1/4",
        parameters=("a", "b"),
        set_builder=lambda p: DistanceSet(
            [p["a"], p["b"], p["b"] - p["a"], p["a"] + p["b"]]
        ),
        domain=lambda p: (
            1 <= p["a"] < p["b"]
            and (p["a"] + p["b"]) % 2 == 1
            and gcd(p["a"], p["b"]) == 1
            and p["b"] - p["a"] != p["a"]
        ),
        value_rule=lambda p: Fraction(1, 4),
        matcher=matcher,
    )


def _family_1_2m_range() -> Family:
    return Family(
        id="1-2m-range",
        kind=THEOREM,
        description="{1,2m,2m+1,2m+2}: ratio m/(4m+1)",
        parameters=("m",),
        set_builder=lambda p: DistanceSet([1, 2 * p["m"], 2 * p["m"] + 1, 2 * p["m"] + 2]),
        domain=lambda p: p["m"] >= 1,
        value_rule=lambda p: Fraction(p["m"], 4 * p["m"] + 1),
        witness_builder=lambda p: _bs(([2], p["m"] - 1), 2 * p["m"] + 3),
        matcher=lambda S: (
            {"m": S.distances[1] // 2}
            if len(S) == 4
            and S.distances[0] == 1
            and S.distances[1] % 2 == 0
            and S.distances[2] == S.distances[1] + 1
            and S.distances[3] == S.distances[1] + 2
            and S.distances[1] >= 2
            else None
        ),
    )


def _family_interval_block() -> Family:
    def matcher(S):
        t = _sorted_tuple(S)
        k, kp = t[0], t[-1]
        if k >= 2 and t == tuple(range(k, kp + 1)):
            return {"k": k, "kp": kp}
        return None

    return Family(
        id="interval",
        kind=THEOREM,
        description="[k,k'], 4k'>=5k: ratio k/(k+k')",
        parameters=("k", "kp"),
        set_builder=lambda p: DistanceSet(range(p["k"], p["kp"] + 1)),
        domain=lambda p: 2 <= p["k"] <= p["kp"] and 4 * p["kp"] >= 5 * p["k"],
        value_rule=lambda p: Fraction(p["k"], p["k"] + p["kp"]),
        witness_builder=lambda p: _bs(([1], p["k"] - 1), p["kp"] + 1),
        matcher=matcher,
    )


def _family_punctured_multiples() -> Family:
    def clause(p):
        m, k, s = p["m"], p["k"], p["s"]
        if s == 1 and 2 * k > m:
            return Fraction(1, k)
        if m >= (s + 1) * k:
            return Fraction(s + 1, m + s * k + 1)
        return None

    def witness(p):
        m, k, s = p["m"], p["k"], p["s"]
        if s == 1 and 2 * k > m:
            return _bs(k)
        if m >= (s + 1) * k:
            return _bs(([k], s), m + 1)
        return None

    def matcher(S):
        t = _sorted_tuple(S)
        m = t[-1]
        missing = sorted(set(range(1, m + 1)) - set(t))
        if not missing:
            return None
        k = missing[0]
        s = len(missing)
        if missing == [k * j for j in range(1, s + 1)]:
            return {"m": m, "k": k, "s": s}
        return None

    return Family(
        id="punctured-multiples",
        kind=THEOREM,
        description="[m] minus {k,...,sk}: 1/k when 2k>m (s=1), (s+1)/(m+sk+1) when m>=(s+1)k",
        parameters=("m", "k", "s"),
        set_builder=lambda p: DistanceSet(
            sorted(set(range(1, p["m"] + 1)) - {p["k"] * j for j in range(1, p["s"] + 1)})
        ),
        domain=lambda p: (
            p["k"] >= 2
            and p["s"] >= 1
            and p["s"] * p["k"] < p["m"]
            and (
                (p["s"] == 1 and 2 * p["k"] > p["m"])
                or p["m"] >= (p["s"] + 1) * p["k"]
            )
        ),
        value_rule=lambda p: clause(p),
        witness_builder=witness,
        matcher=matcher,
    )


def _family_punctured_interval() -> Family:
    def split(p):
        k, kp = p["k"], p["kp"]
        s, i = divmod(kp, k)
        return s, i

    def clause(p):
        m, k = p["m"], p["k"]
        s, i = split(p)
        if i == 0:
            return None
        if s == 1:
            if m < 2 * k:
                return Fraction(1, k)
            if m < 2 * k + 2 * i:
                return Fraction(2, m + 1)
            return Fraction(2, m + k + 1)
        if m < (s + 1) * k:
            return Fraction(1, k)
        if m < (s + 1) * k + i:
            return Fraction(s + 1, m + 1)
        return None

    def witness(p):
        m, k = p["m"], p["k"]
        s, i = split(p)
        val = clause(p)
        if val is None:
            return None
        if val == Fraction(1, k):
            return _bs(k)
        if s == 1 and val == Fraction(2, m + 1):
            j = max(k, m + 1 - k - i)
            return _bs(j, m + 1 - j)
        if s == 1:
            return _bs(k, m + 1)
        return _bs(([k], s), m + 1 - s * k)

    def in_domain(p):
        m, k, kp = p["m"], p["k"], p["kp"]
        if not (2 <= k <= kp < m):
            return False
        s, i = divmod(kp, k)
        if i == 0:
            return False
        if s == 1:
            return True
        return m < (s + 1) * k + i

    def matcher(S):
        t = _sorted_tuple(S)
        m = t[-1]
        missing = sorted(set(range(1, m + 1)) - set(t))
        if not missing:
            return None
        k, kp = missing[0], missing[-1]
        if missing == list(range(k, kp + 1)):
            return {"m": m, "k": k, "kp": kp}
        return None

    return Family(
        id="punctured-interval",
        kind=THEOREM,
        description="[m] minus [k,k']: five clauses by m against multiples of k",
        parameters=("m", "k", "kp"),
        set_builder=lambda p: DistanceSet(
            sorted(set(range(1, p["m"] + 1)) - set(range(p["k"], p["kp"] + 1)))
        ),
        domain=in_domain,
        value_rule=clause,
        witness_builder=witness,
        matcher=matcher,
    )


# ---------------------------------------------------------------------------
# Conjecture families
# ---------------------------------------------------------------------------


_EXC_1_6_K = {7, 10, 12, 17}
_EXC_1_8_K = {9, 10, 14, 16, 18, 23, 25, 32}
_EXC_1_K_KP5 = {7, 12}
_EXC_1_K_KP7 = {9, 11, 16, 18, 25}


def _family_1_6_k() -> Family:
    def value(p):
        k = p["k"]
        r = k % 7
        table = {
            0: Fraction(3 * k, 7 * k + 7),
            1: Fraction(3, 7),
            2: Fraction(3 * k + 1, 7 * k + 7),
            3: Fraction(3 * k - 2, 7 * k + 7),
            4: Fraction(3 * k + 2, 7 * k + 7),
            5: Fraction(3 * k - 1, 7 * k + 7),
            6: Fraction(3, 7),
        }
        return table[r]

    def witness(p):
        k = p["k"]
        r, i = k % 7, k // 7
        if r in (1, 6):
            return _bs(2, 2, 3)
        if r == 0 and i >= 2:
            return _bs(([2, 2, 3], i - 2), ([2, 3], 3))
        if r == 2 and i >= 1:
            return _bs(([2, 2, 3], i - 1), ([2, 3], 2))
        if r == 3 and i >= 3:
            return _bs(([2, 2, 3], i - 3), ([2, 3], 5))
        if r == 4 and i >= 1:
            return _bs(([2, 2, 3], i), 2, 3)
        if r == 5 and i >= 2:
            return _bs(([2, 2, 3], i - 2), ([2, 3], 4))
        return None

    return Family(
        id="1-6-k",
        kind=CONJECTURE,
        description="{1,6,k}, k>6, k not in {7,10,12,17}: seven residue classes mod 7",
        parameters=("k",),
        set_builder=lambda p: DistanceSet([1, 6, p["k"]]),
        domain=lambda p: p["k"] > 6 and p["k"] not in _EXC_1_6_K,
        value_rule=value,
        witness_builder=witness,
        matcher=lambda S: (
            {"k": S.distances[2]}
            if len(S) == 3 and S.distances[:2] == (1, 6)
            else None
        ),
    )


def _family_1_8_k() -> Family:
    def value(p):
        k = p["k"]
        r = k % 9
        table = {
            0: Fraction(4 * k, 9 * k + 9),
            1: Fraction(4, 9),
            2: Fraction(4 * k + 1, 9 * k + 9),
            3: Fraction(4 * k + 24, 9 * k + 72),
            4: Fraction(4 * k + 2, 9 * k + 9),
            5: Fraction(4 * k + 1, 9 * k + 16),
            6: Fraction(4 * k + 3, 9 * k + 9),
            7: Fraction(4 * k - 1, 9 * k + 9),
            8: Fraction(4, 9),
        }
        return table[r]

    return Family(
        id="1-8-k",
        kind=CONJECTURE,
        description="{1,8,k}, k>8, eight exceptions: nine residue classes mod 9",
        parameters=("k",),
        set_builder=lambda p: DistanceSet([1, 8, p["k"]]),
        domain=lambda p: p["k"] > 8 and p["k"] not in _EXC_1_8_K,
        value_rule=value,
        matcher=lambda S: (
            {"k": S.distances[2]}
            if len(S) == 3 and S.distances[:2] == (1, 8)
            else None
        ),
    )


def _family_1_k_kp5() -> Family:
    def value(p):
        k = p["k"]
        r = k % 7
        table = {
            0: Fraction(3 * k + 14, 7 * k + 42),
            1: Fraction(3, 7),
            2: Fraction(3 * k + 15, 7 * k + 42),
            3: Fraction(6 * k + 10, 14 * k + 35),
            4: Fraction(3 * k + 16, 7 * k + 42),
            5: Fraction(3 * k + 13, 7 * k + 42),
            6: Fraction(3 * k + 17, 7 * k + 42),
        }
        return table[r]

    return Family(
        id="1-k-kp5",
        kind=CONJECTURE,
        description="{1,k,k+5}, k>=6, k not in {7,12}: seven residue classes mod 7",
        parameters=("k",),
        set_builder=lambda p: DistanceSet([1, p["k"], p["k"] + 5]),
        domain=lambda p: p["k"] >= 6 and p["k"] not in _EXC_1_K_KP5,
        value_rule=value,
        matcher=lambda S: (
            {"k": S.distances[1]}
            if len(S) == 3
            and S.distances[0] == 1
            and S.distances[2] == S.distances[1] + 5
            else None
        ),
    )


def _family_1_k_kp7() -> Family:
    def value(p):
        k = p["k"]
        r = k % 9
        table = {
            0: Fraction(4 * k + 27, 9 * k + 72),
            1: Fraction(4, 9),
            2: Fraction(4 * k + 28, 9 * k + 72),
            3: Fraction(8 * k + 21, 18 * k + 63),
            4: Fraction(4 * k + 29, 9 * k + 72),
            5: Fraction(4 * k - 2, 9 * k + 9),
            6: Fraction(4 * k + 30, 9 * k + 72),
            7: Fraction(4 * k + 26, 9 * k + 72),
            8: Fraction(4 * k + 31, 9 * k + 72),
        }
        return table[r]

    return Family(
        id="1-k-kp7",
        kind=CONJECTURE,
        description="{1,k,k+7}, k>=8, five exceptions: nine residue classes mod 9",
        parameters=("k",),
        set_builder=lambda p: DistanceSet([1, p["k"], p["k"] + 7]),
        domain=lambda p: p["k"] >= 8 and p["k"] not in _EXC_1_K_KP7,
        value_rule=value,
        matcher=lambda S: (
            {"k": S.distances[1]}
            if len(S) == 3
            and S.distances[0] == 1
            and S.distances[2] == S.distances[1] + 7
            else None
        ),
    )


def _family_1_odd_2i() -> Family:
    return Family(
        id="1-odd-2i",
        kind=CONJECTURE,
        description="{1,l,2i}, odd l>=7, 2i>=3l: ratio i/(2i+l)",
        parameters=("l", "i"),
        set_builder=lambda p: DistanceSet([1, p["l"], 2 * p["i"]]),
        domain=lambda p: p["l"] >= 7 and p["l"] % 2 == 1 and 2 * p["i"] >= 3 * p["l"],
        value_rule=lambda p: Fraction(p["i"], 2 * p["i"] + p["l"]),
        witness_builder=lambda p: _bs(([2], p["i"] - 1), p["l"] + 2),
        matcher=lambda S: (
            {"l": S.distances[1], "i": S.distances[2] // 2}
            if len(S) == 3
            and S.distances[0] == 1
            and S.distances[1] % 2 == 1
            and S.distances[2] % 2 == 0
            else None
        ),
    )


def _family_1_2k_2kp2l_conj() -> Family:
    base = _family_1_2k_2kp2l()
    return Family(
        id="1-2k-2kp2l-conj",
        kind=CONJECTURE,
        description="{1,2k,2k+2l}, 4<=l<=k: conjectured ratio 2k/(4k+2l)",
        parameters=("k", "l"),
        set_builder=base.set_builder,
        domain=lambda p: p["l"] >= 4 and p["k"] >= p["l"],
        value_rule=lambda p: Fraction(2 * p["k"], 4 * p["k"] + 2 * p["l"]),
        witness_builder=_witness_1_2k_2kp2l,
        matcher=base.matcher,
    )


# ---------------------------------------------------------------------------
# Bound families
# ---------------------------------------------------------------------------


def _family_zhu_3k1(side: str) -> Family:
    kind = LOWER if side == "lower" else UPPER

    def value(p):
        a, k = p["a"], p["k"]
        if side == "lower":
            return Fraction(a + k, 3 * (a + k) + 1)
        return Fraction(a + 2 * k, 3 * (a + 2 * k) + 1)

    return Family(
        id=f"zhu-3k1-{side}",
        kind=kind,
        description=f"{{a,a+3k+1,2a+3k+1}}: proven {side} bound",
        parameters=("a", "k"),
        set_builder=lambda p: DistanceSet(
            [p["a"], p["a"] + 3 * p["k"] + 1, 2 * p["a"] + 3 * p["k"] + 1]
        ),
        domain=lambda p: p["a"] >= 1
        and p["k"] >= 1
        and gcd(p["a"], p["a"] + 3 * p["k"] + 1) == 1,
        value_rule=value,
    )


def _family_zhu_3k2(side: str) -> Family:
    kind = LOWER if side == "lower" else UPPER

    def value(p):
        a, k = p["a"], p["k"]
        if side == "lower":
            return Fraction(a + 2 * k + 1, 3 * (a + 2 * k + 2) + 1)
        return Fraction(a + 2 * k + 2, 3 * (a + 2 * k + 2) + 1)

    return Family(
        id=f"zhu-3k2-{side}",
        kind=kind,
        description=f"{{a,a+3k+2,2a+3k+2}}: proven {side} bound",
        parameters=("a", "k"),
        set_builder=lambda p: DistanceSet(
            [p["a"], p["a"] + 3 * p["k"] + 2, 2 * p["a"] + 3 * p["k"] + 2]
        ),
        domain=lambda p: p["a"] >= 1
        and p["k"] >= 1
        and gcd(p["a"], p["a"] + 3 * p["k"] + 2) == 1,
        value_rule=value,
    )


def _zhu_mixed_domain(p) -> bool:
    a, b, c = p["a"], p["b"], p["c"]
    if not (1 <= a < b < c):
        return False
    if gcd(gcd(a, b), c) != 1:
        return False
    if a % 2 == 1 and b % 2 == 1 and c % 2 == 1:
        return False
    if c == a + b:
        return False
    if a == 1 and b == 2 and c % 3 == 0:
        return False
    return True


def _zhu_mixed_matcher(S):
    t = _sorted_tuple(S)
    if len(t) == 3:
        return {"a": t[0], "b": t[1], "c": t[2]}
    return None


def _family_zhu_mixed(side: str) -> Family:
    kind = LOWER if side == "lower" else UPPER
    value = Fraction(1, 3) if side == "lower" else Fraction(1, 2)
    return Family(
        id=f"zhu-mixed-{side}",
        kind=kind,
        description=f"not-all-odd triples, c != a+b: {side} bound "
        + ("1/3" if side == "lower" else "1/2 (strict)"),
        parameters=("a", "b", "c"),
        set_builder=lambda p: DistanceSet([p["a"], p["b"], p["c"]]),
        domain=_zhu_mixed_domain,
        value_rule=lambda p: value,
        matcher=_zhu_mixed_matcher,
        strict=(side == "upper"),
    )


def _zhu_generic_domain(p) -> bool:
    a, b, c = p["a"], p["b"], p["c"]
    if not _zhu_mixed_domain(p):
        return False
    return c != 2 * b and b != 2 * a and c != 2 * a


def _family_zhu_generic(side: str) -> Family:
    kind = LOWER if side == "lower" else UPPER
    value = Fraction(3, 8) if side == "lower" else Fraction(1, 2)
    return Family(
        id=f"zhu-generic-{side}",
        kind=kind,
        description=f"nondegenerate triples: {side} bound "
        + ("3/8" if side == "lower" else "1/2 (strict)")
        + ", finitely many unlisted exceptions",
        parameters=("a", "b", "c"),
        set_builder=lambda p: DistanceSet([p["a"], p["b"], p["c"]]),
        domain=_zhu_generic_domain,
        value_rule=lambda p: value,
        matcher=_zhu_mixed_matcher,
        strict=(side == "upper"),
        findings_only=True,
    )


# ---------------------------------------------------------------------------
# Asymptotic (limit) families: witnesses carry the finite lower bounds
# ---------------------------------------------------------------------------


def _family_lim_1_odd_2k() -> Family:
    return Family(
        id="lim-1-odd-2k",
        kind=LIMIT,
        description="{1,2i+1,2k} -> 1/2 as k grows; lower witness per k",
        parameters=("i", "k"),
        set_builder=lambda p: DistanceSet([1, 2 * p["i"] + 1, 2 * p["k"]]),
        domain=lambda p: p["i"] >= 1 and 2 * p["k"] > 2 * p["i"] + 1,
        witness_builder=lambda p: _bs(([2], p["k"] - 1), 2 * p["i"] + 3),
        witness_value=lambda p: Fraction(p["k"], 2 * p["k"] + 2 * p["i"] + 1),
    )


def _family_lim_1_2i_k() -> Family:
    def qr(p):
        return divmod(p["k"], 2 * p["i"] + 1)

    def witness(p):
        q, r = qr(p)
        if r == 0:
            return None
        return _bs(([2] * (p["i"] - 1) + [3], q - 1), 2 * p["i"] + 2 + r)

    def wvalue(p):
        i = p["i"]
        q, r = qr(p)
        if r == 0:
            return None
        return Fraction(i * (q - 1) + 1, (2 * i + 1) * q + r + 1)

    return Family(
        id="lim-1-2i-k",
        kind=LIMIT,
        description="{1,2i,k} -> i/(2i+1) as k grows; lower witness per k",
        parameters=("i", "k"),
        set_builder=lambda p: DistanceSet([1, 2 * p["i"], p["k"]]),
        domain=lambda p: p["i"] >= 1
        and p["k"] > 2 * p["i"] + 1
        and p["k"] % (2 * p["i"] + 1) != 0,
        witness_builder=witness,
        witness_value=wvalue,
    )


def _family_lim_1_k_kpodd() -> Family:
    def qr(p):
        return divmod(p["k"] + 2 * p["i"] + 2, 2 * p["i"] + 3)

    def witness(p):
        q, r = qr(p)
        if q < 1:
            return None
        return _bs(([2] * p["i"] + [3], q - 1), 2 * p["i"] + 3 + r)

    def wvalue(p):
        i = p["i"]
        q, r = qr(p)
        return Fraction((i + 1) * (q - 1) + 1, (2 * i + 3) * q + r)

    return Family(
        id="lim-1-k-kpodd",
        kind=LIMIT,
        description="{1,k,k+2i+1} -> (i+1)/(2i+3) as k grows; lower witness per k",
        parameters=("i", "k"),
        set_builder=lambda p: DistanceSet([1, p["k"], p["k"] + 2 * p["i"] + 1]),
        domain=lambda p: p["i"] >= 0 and p["k"] >= 2,
        witness_builder=witness,
        witness_value=wvalue,
    )


_FAMILIES: tuple[Family, ...] = (
    _family_all_odd(),
    _family_consecutive(),
    _family_two_generators(),
    _family_interval_and_k(),
    _family_one_two_3k(),
    _family_1_3_2i(),
    _family_1_5_2i(),
    _family_1_4_k(),
    _family_1_k_kp1(),
    _family_1_k_kp3(),
    _family_1_2k_2kp2l(),
    _family_one_and_multiples(),
    _family_arith_plus_b(),
    _family_triple_sum(),
    _family_four_mixed(),
    _family_1_2m_range(),
    _family_interval_block(),
    _family_punctured_multiples(),
    _family_punctured_interval(),
    _family_1_6_k(),
    _family_1_8_k(),
    _family_1_k_kp5(),
    _family_1_k_kp7(),
    _family_1_odd_2i(),
    _family_1_2k_2kp2l_conj(),
    _family_zhu_3k1("lower"),
    _family_zhu_3k1("upper"),
    _family_zhu_3k2("lower"),
    _family_zhu_3k2("upper"),
    _family_zhu_mixed("lower"),
    _family_zhu_mixed("upper"),
    _family_zhu_generic("lower"),
    _family_zhu_generic("upper"),
    _family_lim_1_odd_2k(),
    _family_lim_1_2i_k(),
    _family_lim_1_k_kpodd(),
)


def list_families() -> tuple[Family, ...]:
    """All catalogued families, in closed-form precedence order."""
    return _FAMILIES


def get_family(family_id: str) -> Family:
    for fam in _FAMILIES:
        if fam.id == family_id:
            return fam
    raise UnknownFamilyError(family_id)


@dataclass(frozen=True)
class Prediction:
    family_id: str
    kind: str
    params: dict
    value: Fraction


def closed_form(distances: DistanceSet) -> Optional[Prediction]:
    """First matching value family (theorems take precedence over
    conjectures); bound and limit families never produce a closed form."""
    for fam in _FAMILIES:
        if fam.kind not in (THEOREM, CONJECTURE):
            continue
        params = fam.match(distances)
        if params is None:
            continue
        value = fam.predicted(params)
        if value is not None:
            return Prediction(family_id=fam.id, kind=fam.kind, params=params, value=value)
    return None


def prediction_report(distances: DistanceSet) -> Optional[RatioReport]:
    """RatioReport built from the catalog alone (no computation)."""
    pred = closed_form(distances)
    if pred is None:
        return None
    lower = pred.value if pred.kind == THEOREM else Fraction(0)
    upper = pred.value if pred.kind == THEOREM else Fraction(1)
    return RatioReport(
        distances=distances,
        status="registry_only",
        value=None,
        lower=lower,
        upper=upper,
        lower_witness=BlockList([distances.max_element + 1]),
        upper_witness_n=None,
        method="shortcut",
        counters={},
        note=f"catalog prediction {pred.value} from family {pred.family_id} ({pred.kind})",
    )


@dataclass(frozen=True)
class FormulaVerdict:
    family: str
    kind: str
    params: dict
    distances: DistanceSet
    predicted: Optional[Fraction]
    computed: Optional[Fraction]
    computed_status: str
    agreement: str  # match | mismatch | unresolved
    witness_ok: Optional[bool]
    witness_density: Optional[Fraction]
    findings_only: bool = False

    @property
    def is_failure(self) -> bool:
        """A mismatch against a proven statement breaks the build;
        conjectures and findings-only bounds surface as findings."""
        if self.findings_only:
            return False
        bad_witness = self.witness_ok is False and self.kind == THEOREM
        return bad_witness or (
            self.agreement == "mismatch" and self.kind in (THEOREM, LOWER, UPPER)
        )


def _judge(fam: Family, predicted: Fraction, report: RatioReport) -> str:
    lower, upper = report.lower, report.upper
    if fam.kind in (THEOREM, CONJECTURE):
        if report.status == "exact":
            return "match" if report.value == predicted else "mismatch"
        if predicted < lower or predicted > upper:
            return "mismatch"
        return "unresolved"
    if fam.kind in (LOWER, LIMIT):
        # claim: ratio >= predicted
        if lower >= predicted:
            return "match"
        if upper < predicted:
            return "mismatch"
        return "unresolved"
    # claim: ratio <= predicted (or strictly below for strict bounds)
    if fam.strict:
        if upper < predicted:
            return "match"
        if lower >= predicted:
            return "mismatch"
        return "unresolved"
    if upper <= predicted:
        return "match"
    if lower > predicted:
        return "mismatch"
    return "unresolved"


def verify_family(
    family_id: str,
    lo: int,
    hi: int,
    budget_nodes: Optional[int] = None,
    method: str = "auto",
) -> list[FormulaVerdict]:
    """Check every in-domain parameter point of a family in [lo, hi].

    The engine value comes from the usual pipeline (state graph when the set
    is small, two-sided search otherwise).  Witness structures, when present,
    are expanded, verified independent, and compared against the stated
    density.  budget_nodes caps the search nodes spent per parameter point.
    """
    fam = get_family(family_id)
    verdicts = []
    for params in fam.sweep(lo, hi):
        distances = fam.build_set(params)
        predicted = fam.predicted(params)
        point_budget = (
            SearchBudget() if budget_nodes is None else SearchBudget(max_nodes=budget_nodes)
        )
        report = independence_ratio(distances, method=method, budget=point_budget)
        witness_ok = None
        witness_density = None
        structure = fam.witness(params)
        if structure is not None:
            blocks = structure.expand()
            witness_density = block_density(blocks)
            ok = verify_periodic_independent(blocks, distances).ok
            target = fam.witness_value(params) if fam.witness_value else predicted
            witness_ok = ok and (target is None or witness_density == target)
        if predicted is None:
            agreement = "unresolved"
        else:
            agreement = _judge(fam, predicted, report)
        verdicts.append(
            FormulaVerdict(
                family=fam.id,
                kind=fam.kind,
                params=params,
                distances=distances,
                predicted=predicted,
                computed=report.value,
                computed_status=report.status,
                agreement=agreement,
                witness_ok=witness_ok,
                witness_density=witness_density,
                findings_only=fam.findings_only,
            )
        )
    return verdicts
