"""Bundled reference values for the sets {1, 1+k, 1+k+i}.

Cell (k, i) holds the ratio of G({1, 1+k, 1+k+i}) as (numerator,
denominator, exact) where exact=False marks entries that are certified
lower bounds only (the computation behind them was abandoned before the
bounds met).  Rows with even k list only odd i: for even k and even i the
generators are all odd and the ratio is 1/2 by parity.

Coverage: the full grid k in 1..10, i in 1..12, plus a handful of
lower-bound-only cells from deeper in the table for exercising the
bound-status path.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .core import DistanceSet

# (k, i) -> (num, den, exact)
TABLE: dict[tuple[int, int], tuple[int, int, bool]] = {
    (1, 1): (1, 4, True), (1, 2): (1, 3, True), (1, 3): (1, 3, True),
    (1, 4): (2, 7, True), (1, 5): (1, 3, True), (1, 6): (1, 3, True),
    (1, 7): (3, 10, True), (1, 8): (1, 3, True), (1, 9): (1, 3, True),
    (1, 10): (4, 13, True), (1, 11): (1, 3, True), (1, 12): (1, 3, True),

    (2, 1): (2, 7, True), (2, 3): (1, 3, True), (2, 5): (4, 11, True),
    (2, 7): (5, 13, True), (2, 9): (2, 5, True), (2, 11): (7, 17, True),

    (3, 1): (1, 3, True), (3, 2): (2, 5, True), (3, 3): (3, 8, True),
    (3, 4): (1, 3, True), (3, 5): (2, 5, True), (3, 6): (4, 11, True),
    (3, 7): (2, 5, True), (3, 8): (5, 13, True), (3, 9): (5, 14, True),
    (3, 10): (2, 5, True), (3, 11): (3, 8, True), (3, 12): (2, 5, True),

    (4, 1): (2, 7, True), (4, 3): (1, 3, True), (4, 5): (1, 3, True),
    (4, 7): (6, 17, True), (4, 9): (7, 19, True), (4, 11): (8, 21, True),

    (5, 1): (4, 13, True), (5, 2): (3, 7, True), (5, 3): (2, 5, True),
    (5, 4): (3, 8, True), (5, 5): (5, 12, True), (5, 6): (1, 3, True),
    (5, 7): (3, 7, True), (5, 8): (2, 5, True), (5, 9): (3, 7, True),
    (5, 10): (7, 17, True), (5, 11): (9, 23, True), (5, 12): (8, 19, True),

    (6, 1): (1, 3, True), (6, 3): (4, 11, True), (6, 5): (3, 8, True),
    (6, 7): (1, 3, True), (6, 9): (6, 17, True), (6, 11): (7, 19, True),

    (7, 1): (3, 10, True), (7, 2): (4, 9, True), (7, 3): (7, 19, True),
    (7, 4): (2, 5, True), (7, 5): (3, 7, True), (7, 6): (4, 11, True),
    (7, 7): (7, 16, True), (7, 8): (1, 3, True), (7, 9): (4, 9, True),
    (7, 10): (5, 13, True), (7, 11): (4, 9, True), (7, 12): (3, 7, True),

    (8, 1): (6, 19, True), (8, 3): (5, 13, True), (8, 5): (2, 5, True),
    (8, 7): (2, 5, True), (8, 9): (1, 3, True), (8, 11): (8, 21, True),

    (9, 1): (1, 3, True), (9, 2): (5, 11, True), (9, 3): (5, 14, True),
    (9, 4): (5, 12, True), (9, 5): (2, 5, True), (9, 6): (5, 13, True),
    (9, 7): (4, 9, True), (9, 8): (4, 11, True), (9, 9): (9, 20, True),
    (9, 10): (1, 3, True), (9, 11): (5, 11, True), (9, 12): (3, 8, True),

    (10, 1): (4, 13, True), (10, 3): (2, 5, True), (10, 5): (7, 17, True),
    (10, 7): (5, 12, True), (10, 9): (12, 31, True), (10, 11): (1, 3, True),

    # deeper rows where the original computation certified a lower bound only
    (5, 39): (19, 46, False),
    (10, 29): (19, 47, False),
    (13, 29): (17, 44, False),
    (16, 19): (14, 37, False),
    (19, 1): (7, 22, False),
}


def table_set(k: int, i: int) -> DistanceSet:
    """The distance set indexed by cell (k, i)."""
    return DistanceSet([1, 1 + k, 1 + k + i])


def table_value(k: int, i: int) -> Optional[tuple[Fraction, bool]]:
    """(ratio, exact) for a bundled cell; None where nothing is bundled."""
    cell = TABLE.get((k, i))
    if cell is None:
        return None
    num, den, exact = cell
    return Fraction(num, den), exact
