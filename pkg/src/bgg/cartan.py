"""Generalized Cartan matrices, integral weights, and the shifted reflection action.

Weights are stored relative to a base weight: `labels` are the pairings of the
base with the simple coroots, `offset` is a vector of simple-root coordinates
subtracted from the base.  Everything downstream (reflections, characters,
weight-space dimensions) only ever needs these two pieces of data, so the
ambient realization of the Cartan subalgebra is never materialized.

All values are immutable and all arithmetic is over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import GCMError, NotSymmetrizableError

IntMatrix = tuple[tuple[int, ...], ...]


def freeze_matrix(entries) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in entries)


@dataclass(frozen=True)
class GCM:
    """A validated generalized Cartan matrix."""

    entries: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.entries)

    def submatrix(self, indices) -> "GCM":
        """The principal submatrix on a subset of node indices (sorted)."""
        idx = sorted(indices)
        return GCM(tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def to_json(self) -> dict:
        return {"rank": self.rank, "entries": [list(row) for row in self.entries]}


def validate_gcm(entries) -> GCM:
    """Check the Cartan matrix axioms, reporting every violation at once.

    Axioms: a_ii = 2, a_ij <= 0 for i != j, and a_ij = 0 iff a_ji = 0.
    """
    m = freeze_matrix(entries)
    n = len(m)
    problems = []
    if any(len(row) != n for row in m):
        raise GCMError("matrix is not square")
    if n == 0:
        raise GCMError("matrix is empty")
    for i in range(n):
        if m[i][i] != 2:
            problems.append(f"diagonal entry {m[i][i]} != 2 at ({i},{i})")
        for j in range(n):
            if i != j and m[i][j] > 0:
                problems.append(f"positive off-diagonal entry {m[i][j]} at ({i},{j})")
            if i < j and (m[i][j] == 0) != (m[j][i] == 0):
                problems.append(f"zero pattern asymmetric at ({i},{j})")
    if problems:
        raise GCMError("; ".join(problems))
    return GCM(m)


def gcm_from_json(data) -> GCM:
    A = validate_gcm(data["entries"])
    if "rank" in data and int(data["rank"]) != A.rank:
        raise GCMError(f"declared rank {data['rank']} != matrix size {A.rank}")
    return A


def symmetrizer(A: GCM) -> tuple[int, ...]:
    """Minimal positive integers d with d_i a_ij = d_j a_ji, coprime as a tuple.

    Ratios are propagated over a spanning forest of the nonzero off-diagonal
    graph, then every edge is checked; a failed edge means no symmetrizer
    exists at all.
    """
    n = A.rank
    a = A.entries
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        component = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i][j] != 0 and d[j] is None:
                    # d_j = d_i * a_ij / a_ji
                    d[j] = d[i] * Fraction(a[i][j], a[j][i])
                    component.append(j)
                    stack.append(j)
        denom_lcm = 1
        for k in component:
            denom_lcm = denom_lcm * d[k].denominator // gcd(denom_lcm, d[k].denominator)
        nums = []
        for k in component:
            d[k] = d[k] * denom_lcm
            nums.append(int(d[k]))
        g = 0
        for v in nums:
            g = gcd(g, v)
        for k in component:
            d[k] = Fraction(int(d[k]) // g)
    for i in range(n):
        for j in range(n):
            if d[i] * a[i][j] != d[j] * a[j][i]:
                raise NotSymmetrizableError(
                    f"constraint d_{i}*a[{i}][{j}] = d_{j}*a[{j}][{i}] fails"
                )
    return tuple(int(x) for x in d)


def is_symmetrizable(A: GCM) -> bool:
    try:
        symmetrizer(A)
    except NotSymmetrizableError:
        return False
    return True


@dataclass(frozen=True)
class Weight:
    """base - sum(offset[j] * alpha_j), with base given by coroot labels.

    Offsets are nonnegative throughout the pipeline (every weight in play is
    a base weight minus a sum of positive roots); nothing below assumes it.
    """

    labels: tuple[int, ...]
    offset: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.offset):
            raise ValueError("labels/offset rank mismatch")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "offset": list(self.offset)}


def weight(labels, offset=None) -> Weight:
    labels = tuple(int(x) for x in labels)
    if offset is None:
        offset = (0,) * len(labels)
    return Weight(labels, tuple(int(x) for x in offset))


def weight_from_json(data) -> Weight:
    return weight(data["labels"], data.get("offset"))


def rho(A: GCM) -> Weight:
    return weight((1,) * A.rank)


def simple_root_weight(A: GCM, j: int) -> Weight:
    """alpha_j as a weight: its label vector is the j-th column (a_ij)_i."""
    return weight(tuple(A.entries[i][j] for i in range(A.rank)))


def pairing(A: GCM, w: Weight, i: int) -> int:
    """<w, alpha_i^vee>.  Note <alpha_j, alpha_i^vee> = a_ij."""
    return w.labels[i] - sum(w.offset[j] * A.entries[i][j] for j in range(A.rank))


def offset_pairing(A: GCM, beta, i: int) -> int:
    """<sum beta_j alpha_j, alpha_i^vee>."""
    return sum(beta[j] * A.entries[i][j] for j in range(A.rank))


def dot_action_simple(A: GCM, i: int, w: Weight) -> Weight:
    """Shifted reflection s_i . w = w - (<w, alpha_i^vee> + 1) alpha_i.

    Built-in shift by the all-ones weight, so weights with pairing -1 are
    fixed points.
    """
    p = pairing(A, w, i) + 1
    off = list(w.offset)
    off[i] += p
    return Weight(w.labels, tuple(off))


def dot_action_word(A: GCM, word, w: Weight) -> Weight:
    """Shifted action of s_{word[0]} ... s_{word[-1]} (leftmost acts last)."""
    for i in reversed(tuple(word)):
        w = dot_action_simple(A, i, w)
    return w


def is_dominant(A: GCM, w: Weight) -> bool:
    return all(pairing(A, w, i) >= 0 for i in range(A.rank))


def offset_sub(a, b) -> tuple[int, ...] | None:
    """a - b if entrywise nonnegative, else None."""
    out = tuple(x - y for x, y in zip(a, b))
    return out if all(x >= 0 for x in out) else None


def height(beta) -> int:
    return sum(beta)


def offsets_up_to(rank: int, depth: int) -> list[tuple[int, ...]]:
    """All nonnegative integer vectors of coordinate sum <= depth,
    sorted by (height, lexicographic)."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for c in range(remaining + 1):
            rec(prefix + [c], remaining - c, slots - 1)

    rec([], depth, rank)
    out.sort(key=lambda b: (sum(b), b))
    return out
