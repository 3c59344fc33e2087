"""Independent ground truths used only for testing.

A buffered two-finger stable merge is the reference for the in-place
engine, and exact rational combinatorics validate the closed-form
probability products. Nothing here shares code with the paths it checks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List

from .errors import require
from .merge_engine import Element

# Exact probabilities are plain stdlib rationals (always lowest terms).
ExactRatio = Fraction

_BINOMIAL_CAP = 64


def stable_merge_reference(left: List[Element], right: List[Element]) -> List[Element]:
    """Buffered stable merge; on equal keys the left element wins."""
    for name, part in (("left", left), ("right", right)):
        for prev, cur in zip(part, part[1:]):
            if cur.key < prev.key or (cur.key == prev.key and cur.origin_index <= prev.origin_index):
                require(False, f"{name} input is not sorted with ascending origin_index")
    out = []
    li, ri = 0, 0
    while li < len(left) and ri < len(right):
        if right[ri].key < left[li].key:
            out.append(right[ri])
            ri += 1
        else:
            out.append(left[li])
            li += 1
    out.extend(left[li:])
    out.extend(right[ri:])
    return out


def binomial_exact(a: int, b: int) -> int:
    """C(a, b) by Pascal's recurrence in arbitrary precision, a <= 64."""
    require(0 <= b <= a <= _BINOMIAL_CAP, f"need 0 <= b <= a <= {_BINOMIAL_CAP}, got a={a} b={b}")
    row = [1]
    for _ in range(a):
        row = [1] + [row[t] + row[t + 1] for t in range(len(row) - 1)] + [1]
    return row[b]


def lemma_ratio_exact(kind: str, **params) -> Fraction:
    """Exact value of the Lemma 1 / Lemma 2 probability expressions.

    lemma1(n, m, r) = C(n+m-r-1, n-1) / C(n+m, n)   for n >= m >= r >= 1
    lemma2(m, n, p) = C(m+n-p, n) / C(m+n, n)       for |m-n| <= 1, 1 <= p <= m
    """
    if kind == "lemma1":
        n, m, r = params["n"], params["m"], params["r"]
        require(n >= m >= r >= 1, f"lemma1 needs n >= m >= r >= 1, got n={n} m={m} r={r}")
        return Fraction(binomial_exact(n + m - r - 1, n - 1), binomial_exact(n + m, n))
    if kind == "lemma2":
        m, n, p = params["m"], params["n"], params["p"]
        require(abs(m - n) <= 1, f"lemma2 needs |m-n| <= 1, got m={m} n={n}")
        require(1 <= p <= m, f"lemma2 needs 1 <= p <= m, got p={p} m={m}")
        return Fraction(binomial_exact(m + n - p, n), binomial_exact(m + n, n))
    require(False, f"unknown lemma kind {kind!r}")
