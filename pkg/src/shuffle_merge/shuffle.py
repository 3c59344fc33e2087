"""In-place perfect shuffle, its inverse, and segment rotation.

These are the three data-movement primitives of the merge engine. All of
them mutate a list in place using O(1) auxiliary space and report every
assignment into an array slot through a MoveSink (holding one element in a
temporary during a cycle or swap is not a move).

The shuffle interleaves two equal halves so that the first and last
positions stay fixed: with 1-indexed halves L and R of size n,
new[2t-1] = L[t] and new[2t] = R[t]. The interior 2n-2 positions then form
the classic cycle permutation q -> 2q mod (2n-1), which is performed by
cycle-leader decomposition: the largest prefix of size 3^k - 1 has cycle
leaders at 1, 3, ..., 3^(k-1); a rotation gathers its elements, the cycles
are walked, and the remainder is processed the same way. Rotation itself is
triple reversal.
"""

from __future__ import annotations

from .errors import require


class MoveSink:
    """Counter of element assignments into the main array."""

    __slots__ = ("moves",)

    def __init__(self) -> None:
        self.moves = 0

    def add(self, n: int = 1) -> None:
        self.moves += n


def _reverse(a, lo, hi, sink):
    # reverses a[lo:hi]; each swap writes two slots
    swaps = (hi - lo) // 2
    hi -= 1
    while lo < hi:
        a[lo], a[hi] = a[hi], a[lo]
        lo += 1
        hi -= 1
    sink.add(2 * swaps)


def rotate_right(a, r, sink, start=0, length=None):
    """Circularly shift a[start:start+length] right by r, in place.

    new[(q + r) mod length] = old[q]. Triple reversal; at most 2*length
    moves. r == 0 and r == length are identities and cost nothing.
    """
    if length is None:
        length = len(a) - start
    require(0 <= r <= length, f"rotation amount {r} outside [0, {length}]")
    if r == 0 or r == length:
        return
    _reverse(a, start, start + length - r, sink)
    _reverse(a, start + length - r, start + length, sink)
    _reverse(a, start, start + length, sink)


def _block_plan(m):
    # decomposition of an interior of size m into 3^k - 1 sized blocks;
    # h is the half-size of the remainder the block is carved from
    plan = []
    off = 0
    while m > 0:
        pow3 = 3
        while pow3 * 3 - 1 <= m:
            pow3 *= 3
        b = pow3 - 1
        plan.append((off, b, m // 2))
        off += b
        m -= b
    return plan


def _cycle_block(a, base, b, sink, inverse):
    # walks the cycles of q -> 2q mod (b+1) on a[base:base+b] (q is 1-indexed);
    # leaders sit at powers of three
    mod = b + 1
    mult = (b + 2) // 2 if inverse else 2
    leader = 1
    while leader <= b // 2:
        q = leader
        hold = a[base + q - 1]
        writes = 0
        while True:
            q = (q * mult) % mod
            hold, a[base + q - 1] = a[base + q - 1], hold
            writes += 1
            if q == leader:
                break
        sink.add(writes)
        leader *= 3


def _interleave_interior(a, base, m, sink, inverse):
    plan = _block_plan(m)
    if inverse:
        for off, b, h in reversed(plan):
            _cycle_block(a, base + off, b, sink, inverse=True)
            rotate_right(a, h - b // 2, sink, start=base + off + b // 2, length=h)
    else:
        for off, b, h in plan:
            rotate_right(a, b // 2, sink, start=base + off + b // 2, length=h)
            _cycle_block(a, base + off, b, sink, inverse=False)


def in_shuffle(a, sink, start=0, length=None):
    """Interleave the two halves of a[start:start+length] in place.

    With halves L and R of size n (1-indexed within the segment), the
    result satisfies new[2t-1] = L[t], new[2t] = R[t]; the first and last
    elements do not move. Constant auxiliary space.
    """
    if length is None:
        length = len(a) - start
    require(length % 2 == 0, f"in_shuffle requires even length, got {length}")
    require(0 <= start and start + length <= len(a), "segment out of bounds")
    if length <= 2:
        return
    _interleave_interior(a, start + 1, length - 2, sink, inverse=False)


def un_shuffle(a, sink, start=0, length=None):
    """Exact inverse of in_shuffle on a[start:start+length].

    The element at 1-indexed position q moves to ceil(q/2) if q is odd and
    to length/2 + q/2 if q is even, splitting an interleaved segment back
    into its two contiguous halves (former odd positions first).
    """
    if length is None:
        length = len(a) - start
    require(length % 2 == 0, f"un_shuffle requires even length, got {length}")
    require(0 <= start and start + length <= len(a), "segment out of bounds")
    if length <= 2:
        return
    _interleave_interior(a, start + 1, length - 2, sink, inverse=True)
