"""Right-going merge of two equal-length sorted lists, fully instrumented.

The two lists live contiguously in one array. After an initial full-array
in-shuffle the loop maintains three segments: the sorted prefix S, the
single-origin intermediate segment P, and the 2-ordered remainder Sh.
Each iteration either advances the boundary of S past P's head, rotates the
last Sh element in front of P, or scans a maximal even-length prefix D of
Sh whose odd-indexed elements are all below P's head, unshuffles D into
O | E, and rotates O in front of P.

Elements carry (key, origin, origin_index) and the order used everywhere is
lexicographic on (key, origin) with left < right, so cross-list comparisons
are tie-free and the merge is stable by construction. Internally elements
are packed into single integers, (key << 33) | (origin << 32) | origin_index,
whose natural order coincides with the element order; origin_index bits can
never decide an engine comparison because the loop only ever compares
elements of opposite origin.

One subtlety, documented here because the plain pseudocode gets it wrong:
after a scan, P's head may be absorbed into S (the "+1" in i := i+r+1) only
when the scan stopped at a blocking element or consumed Sh exactly. When Sh
has odd length and the scan was cut off by the array end, the last Sh
element was never tested and may still be smaller than P's head, so the
head stays in P and the ordinary |Sh| = 1 branch places the straggler on
the next iteration.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import List, NamedTuple

from .errors import ContractViolation, require
from .shuffle import MoveSink, in_shuffle, rotate_right, un_shuffle

LEFT = 0
RIGHT = 1

_INDEX_BITS = 32
_INDEX_MASK = (1 << _INDEX_BITS) - 1


class Element(NamedTuple):
    """A mergeable item: compared by (key, origin); origin_index is a
    provenance tag used only for stability verification."""

    key: int
    origin: int
    origin_index: int


def sort_key(e: Element):
    """The comparison key the algorithm uses (origin_index excluded)."""
    return (e.key, e.origin)


def pack_element(e: Element) -> int:
    require(e.origin in (LEFT, RIGHT), f"origin must be LEFT or RIGHT, got {e.origin}")
    require(0 <= e.origin_index <= _INDEX_MASK, "origin_index out of range")
    return (e.key << (_INDEX_BITS + 1)) | (e.origin << _INDEX_BITS) | e.origin_index


def unpack_element(x: int) -> Element:
    return Element(x >> (_INDEX_BITS + 1), (x >> _INDEX_BITS) & 1, x & _INDEX_MASK)


def tag_halves(left_keys, right_keys) -> List[Element]:
    """Tag two key lists as one contiguous merge input."""
    left = [Element(k, LEFT, t) for t, k in enumerate(left_keys)]
    right = [Element(k, RIGHT, t) for t, k in enumerate(right_keys)]
    return left + right


class RotationRecord(NamedTuple):
    """One Rotate invocation: loop iteration, |P| at rotation time, |D|
    (2r for the scan path, 1 for the |Sh| = 1 path), and the moves the
    iteration's unshuffle + rotation spent."""

    loop_iteration: int
    p_len: int
    d_len: int
    moves: int


@dataclass
class MergeStats:
    """Counters and histograms collected during one merge."""

    moves: int = 0
    comparisons: int = 0
    setup_moves: int = 0
    loop_iterations: int = 0
    p_hist: Counter = field(default_factory=Counter)
    d_hist: Counter = field(default_factory=Counter)
    rotation_trace: List[RotationRecord] = field(default_factory=list)

    @property
    def rotations(self) -> int:
        return len(self.rotation_trace)


@dataclass
class MergeState:
    """Loop state over the packed array: S = a[:i], P = a[i:j], Sh = a[j:].

    Indices are 0-based. p_type is the origin shared by all P elements.
    """

    a: List[int]
    i: int
    j: int
    p_type: int

    def check(self) -> None:
        """Raise ContractViolation if a loop invariant does not hold."""
        a, i, j = self.a, self.i, self.j
        n = len(a)
        require(0 <= i < j <= n, f"need 0 <= i < j <= N, got i={i} j={j} N={n}")
        for t in range(i - 1):
            require(a[t] <= a[t + 1], "S is not sorted")
        if i > 0 and i < n:
            require(a[i - 1] <= min(a[i:]), "an S element exceeds a later element")
        p = a[i:j]
        require(all((x >> _INDEX_BITS) & 1 == self.p_type for x in p),
                "P contains an element of the wrong origin")
        require(all(p[t] <= p[t + 1] for t in range(len(p) - 1)), "P is not sorted")
        sh = a[j:]
        odd, even = sh[0::2], sh[1::2]
        for sub, owner, name in ((odd, 1 - self.p_type, "odd"), (even, self.p_type, "even")):
            require(all((x >> _INDEX_BITS) & 1 == owner for x in sub),
                    f"Sh {name}-offset elements have mixed origin")
            require(all(sub[t] <= sub[t + 1] for t in range(len(sub) - 1)),
                    f"Sh {name}-offset subsequence is not sorted")


def _scan_packed(a, i, j, n, stats, head_tested):
    # maximal r with 2r <= |Sh| and Sh[1], Sh[3], ..., Sh[2r-1] < P[1];
    # each odd-element test costs one comparison, the caller's guard test
    # counts as the first when head_tested is set
    sh_len = n - j
    p_head = a[i]
    r = 1 if head_tested else 0
    while 2 * (r + 1) <= sh_len:
        stats.comparisons += 1
        if a[j + 2 * r] < p_head:
            r += 1
        else:
            break
    stats.d_hist[2 * r] += 1
    return r


def scan(state: MergeState, stats: MergeStats, head_tested: bool = False) -> int:
    """Scan Sh for the maximal even-length prefix D = Sh[1..2r] whose
    odd-indexed elements are all strictly below P's head.

    With head_tested the caller asserts Sh[1] < P[1] was already compared
    (and counted), as the merge loop's branch guard does.
    """
    require(len(state.a) - state.j >= 2, "scan requires |Sh| >= 2")
    return _scan_packed(state.a, state.i, state.j, len(state.a), stats, head_tested)


def merge_packed(a: List[int], check_invariants: bool = False) -> MergeStats:
    """Run the right-going merge on a packed array, in place.

    The fast path used by the experiment harness; right_going_merge wraps it
    for Element lists. check_invariants re-validates the segment invariants
    at the top of every loop iteration (debug mode; counters are unaffected).
    """
    n = len(a)
    require(n % 2 == 0, f"array length must be even, got {n}")
    stats = MergeStats()
    sink = MoveSink()
    in_shuffle(a, sink)
    stats.setup_moves = sink.moves
    if n == 0:
        return stats

    i, j = 0, 1
    p_type = (a[0] >> _INDEX_BITS) & 1
    it = 0
    while j < n:
        it += 1
        if check_invariants:
            MergeState(a, i, j, p_type).check()
        stats.comparisons += 1
        if a[i] < a[j]:
            i += 1
            if i == j:
                j += 1
                p_type = 1 - p_type
        elif n - j == 1:
            before = sink.moves
            rotate_right(a, 1, sink, start=i, length=j - i + 1)
            stats.p_hist[j - i] += 1
            stats.rotation_trace.append(RotationRecord(it, j - i, 1, sink.moves - before))
            i += 1
            j += 1
        else:
            r = _scan_packed(a, i, j, n, stats, head_tested=True)
            before = sink.moves
            un_shuffle(a, sink, start=j, length=2 * r)
            rotate_right(a, r, sink, start=i, length=(j - i) + r)
            stats.p_hist[j - i] += 1
            stats.rotation_trace.append(RotationRecord(it, j - i, 2 * r, sink.moves - before))
            sh_len = n - j
            if 2 * r == sh_len or 2 * (r + 1) <= sh_len:
                i += r + 1
            else:
                # odd-length Sh cut the scan short; its last element is
                # untested, so P keeps its head for the next iteration
                i += r
            j += 2 * r

    stats.moves = sink.moves
    stats.loop_iterations = it
    return stats


def _validate_halves(elements: List[Element]) -> None:
    n = len(elements)
    require(n % 2 == 0, f"input length must be even, got {n}")
    half = n // 2
    for origin, lo in ((LEFT, 0), (RIGHT, half)):
        part = elements[lo:lo + half]
        name = "left" if origin == LEFT else "right"
        for e in part:
            if e.origin != origin:
                raise ContractViolation(f"{name} half contains an element tagged {e.origin}")
        for prev, cur in zip(part, part[1:]):
            if cur.key < prev.key:
                raise ContractViolation(f"{name} half is not sorted by key")
            if cur.key == prev.key and cur.origin_index <= prev.origin_index:
                raise ContractViolation(f"{name} half has non-increasing origin_index on a tie")


def right_going_merge(elements: List[Element], check_invariants: bool = False) -> MergeStats:
    """Sort a tagged two-half array in place, stably, returning MergeStats.

    The first half must be origin LEFT and sorted, the second half origin
    RIGHT and sorted. Afterwards the list is ordered by (key, origin,
    origin_index): sorted by key, stable across the two lists and within
    each list.
    """
    _validate_halves(elements)
    packed = [pack_element(e) for e in elements]
    stats = merge_packed(packed, check_invariants=check_invariants)
    elements[:] = [unpack_element(x) for x in packed]
    return stats


def verify_sorted_stable(elements: List[Element]) -> bool:
    """True iff keys are non-decreasing and every equal-key run has all
    left-origin elements before right-origin ones, with origin_index
    strictly increasing inside each origin group."""
    for prev, cur in zip(elements, elements[1:]):
        if cur.key < prev.key:
            return False
        if cur.key == prev.key:
            if cur.origin < prev.origin:
                return False
            if cur.origin == prev.origin and cur.origin_index <= prev.origin_index:
                return False
    return True
