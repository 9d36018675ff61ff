"""Weyl group combinatorics: enumeration, arrows, squares, signs, cosets.

Elements act on simple-root coordinates by integer matrices and are keyed by
the matrix (reduced words are not unique, matrices are).  The arrow relation
w -> w' means w = t w' for a reflection t with length dropping by one; chains
of arrows give the order underlying the embedding structure of Verma modules
with deeper highest weights into shallower ones.

Every enumeration and tie-break below is deterministic (ascending generator
index, lexicographic words), so sign assignments and reports are reproducible.
All queries on a finished table are pure and safe to run concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cartan import GCM, Weight, dot_action_word
from .errors import EnumerationLimitError, InvariantViolationError, NotWeylMatrixError

IntMatrix = tuple[tuple[int, ...], ...]


def _identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class WeylElement:
    """Group element with its inverse matrix, one reduced word, and length."""

    matrix: IntMatrix
    inverse: IntMatrix
    word: tuple[int, ...]
    length: int

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        name = "".join(f"s{i}" for i in self.word) or "e"
        return f"<{name}>"


class WeylGroup:
    """Simple-reflection matrices for a GCM and word/length machinery."""

    def __init__(self, A: GCM):
        self.A = A
        self.rank = A.rank
        n = A.rank
        self.simple_matrices = []
        for i in range(n):
            # s_i(alpha_j) = alpha_j - a_ij alpha_i: row i of the identity
            # becomes (-a_i0, ..., -a_ij, ...) with -a_ii = -2 + 1 shift.
            rows = [list(row) for row in _identity(n)]
            for j in range(n):
                rows[i][j] -= A.entries[i][j]
            self.simple_matrices.append(tuple(tuple(r) for r in rows))
        self.identity = WeylElement(_identity(n), _identity(n), (), 0)

    def right_mul(self, w: WeylElement, i: int) -> WeylElement:
        m = _mat_mul(w.matrix, self.simple_matrices[i])
        inv = _mat_mul(self.simple_matrices[i], w.inverse)
        return WeylElement(m, inv, w.word + (i,), w.length + 1)

    def from_word(self, word) -> WeylElement:
        w = self.identity
        for i in word:
            w = self.right_mul(w, i)
        length, reduced = self.length_and_word(w.matrix)
        return WeylElement(w.matrix, w.inverse, tuple(reduced), length)

    def right_ascent(self, w: WeylElement, i: int) -> bool:
        """l(w s_i) = l(w) + 1, i.e. w(alpha_i) is a positive root."""
        return all(w.matrix[k][i] >= 0 for k in range(self.rank))

    def left_ascent(self, w: WeylElement, i: int) -> bool:
        """l(s_i w) = l(w) + 1, i.e. w^{-1}(alpha_i) is a positive root."""
        return all(w.inverse[k][i] >= 0 for k in range(self.rank))

    def _integer_inverse(self, matrix: IntMatrix) -> IntMatrix:
        n = self.rank
        aug = [[Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
        m, pivots = linalg.rref(
            [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(aug)],
            2 * n,
        )
        if pivots != list(range(n)):
            raise NotWeylMatrixError("matrix is singular")
        inv = []
        for i in range(n):
            row = []
            for j in range(n):
                x = m[i][n + j]
                if x.denominator != 1:
                    raise NotWeylMatrixError("inverse is not integral")
                row.append(int(x))
            inv.append(tuple(row))
        return tuple(inv)

    def length_and_word(self, matrix) -> tuple[int, tuple[int, ...]]:
        """Greedy descent: repeatedly strip the smallest left descent.

        Deterministic; the iteration bound doubles as the guard against
        matrices that are not Weyl group elements.
        """
        matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        inv = self._integer_inverse(matrix)
        word = []
        bound = 10_000
        while matrix != self.identity.matrix:
            if len(word) > bound:
                raise NotWeylMatrixError("descent iteration bound exceeded")
            for i in range(self.rank):
                col = [inv[k][i] for k in range(self.rank)]
                if all(x <= 0 for x in col):
                    word.append(i)
                    matrix = _mat_mul(self.simple_matrices[i], matrix)
                    inv = _mat_mul(inv, self.simple_matrices[i])
                    break
            else:
                raise NotWeylMatrixError("no descent found; not a Weyl element")
        return len(word), tuple(word)

    def element_from_matrix(self, matrix) -> WeylElement:
        length, word = self.length_and_word(matrix)
        matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        return WeylElement(matrix, self._integer_inverse(matrix), word, length)


def is_reflection(w: WeylElement) -> bool:
    """u is a reflection iff u^2 = e, u != e, and rank(u - 1) = 1 over Q."""
    n = len(w.matrix)
    if w.matrix == _identity(n):
        return False
    if _mat_mul(w.matrix, w.matrix) != _identity(n):
        return False
    diff = [[w.matrix[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    return linalg.rank(diff) == 1


def enumerate_up_to(group: WeylGroup, max_length: int, max_level_size: int = 200_000):
    """All elements of length <= max_length, grouped by length.

    Breadth-first by right multiplication with matrix dedup; processing
    parents in word order with ascending generator indices makes each stored
    word the lexicographically smallest reduced word of its element.
    """
    levels = [[group.identity]]
    seen = {group.identity.matrix: group.identity}
    for _ in range(max_length):
        nxt: list[WeylElement] = []
        for w in levels[-1]:
            for i in range(group.rank):
                if group.right_ascent(w, i):
                    child = group.right_mul(w, i)
                    if child.matrix not in seen:
                        seen[child.matrix] = child
                        nxt.append(child)
                        if len(nxt) > max_level_size:
                            raise EnumerationLimitError(
                                f"level size exceeds {max_level_size}"
                            )
        if not nxt:
            break
        levels.append(nxt)
    return levels


class BruhatTable:
    """Finished enumeration with cover/arrow/square/sign machinery on top."""

    def __init__(self, group: WeylGroup, levels):
        self.group = group
        self.levels = levels
        self.max_length = len(levels) - 1
        self.by_matrix = {w.matrix: w for level in levels for w in level}
        self._covers: dict[IntMatrix, tuple[WeylElement, ...]] = {}
        self._down_closure: dict[IntMatrix, set[IntMatrix]] = {}
        self._squares = None
        self._signs = None

    @classmethod
    def build(cls, A: GCM, max_length: int, max_level_size: int = 200_000):
        group = WeylGroup(A)
        return cls(group, enumerate_up_to(group, max_length, max_level_size))

    def elements(self):
        for level in self.levels:
            yield from level

    def element(self, matrix) -> WeylElement:
        return self.by_matrix[matrix]

    def covers(self, w: WeylElement) -> tuple[WeylElement, ...]:
        """All w' with w -> w', by single-letter deletion from w's reduced word.

        Any cover arises as a one-letter deletion of any fixed reduced word
        (strong exchange), so one stored word suffices; results are checked
        against the reflection oracle in the tests.
        """
        if w.matrix in self._covers:
            return self._covers[w.matrix]
        found = {}
        for j in range(len(w.word)):
            sub = w.word[:j] + w.word[j + 1 :]
            m = self.group.identity.matrix
            for i in sub:
                m = _mat_mul(m, self.group.simple_matrices[i])
            if m in found:
                continue
            elem = self.by_matrix.get(m)
            if elem is None:
                length, _ = self.group.length_and_word(m)
                if length == w.length - 1:
                    raise InvariantViolationError("cover missing from enumeration")
                continue
            if elem.length == w.length - 1:
                found[m] = elem
        out = tuple(sorted(found.values(), key=lambda x: x.word))
        self._covers[w.matrix] = out
        return out

    def arrows(self):
        """All arrows among enumerated elements, deterministically ordered."""
        out = []
        for level in self.levels[1:]:
            for w in level:
                for wp in self.covers(w):
                    out.append((w, wp))
        return out

    def arrow_leq(self, w: WeylElement, wp: WeylElement) -> bool:
        """Is there a chain of arrows w -> ... -> w'?  (True when w = w'.)

        This is the order in which V^{w.mu} embeds into V^{w'.mu}.
        """
        if w.matrix not in self._down_closure:
            closure = {w.matrix}
            frontier = [w]
            while frontier:
                nxt = []
                for u in frontier:
                    for c in self.covers(u):
                        if c.matrix not in closure:
                            closure.add(c.matrix)
                            nxt.append(c)
                frontier = nxt
            self._down_closure[w.matrix] = closure
        return wp.matrix in self._down_closure[w.matrix]

    def squares(self):
        """Quadruples (w1, w2, w3, w4) with w1 -> w2 -> w4, w1 -> w3 -> w4,
        w2 != w3, each midpoint pair emitted once in word order.

        Any down-interval of length two with a midpoint count other than 0
        or 2 is surfaced as an invariant violation rather than silently
        accepted.
        """
        if self._squares is not None:
            return self._squares
        out = []
        for level in self.levels[2:]:
            for w1 in level:
                bottoms = {}
                for w2 in self.covers(w1):
                    for w4 in self.covers(w2):
                        bottoms.setdefault(w4.matrix, []).append(w2)
                for mat, mids in sorted(bottoms.items(), key=lambda kv: self.by_matrix[kv[0]].word):
                    if len(mids) == 1:
                        raise InvariantViolationError(
                            f"length-2 interval [{self.by_matrix[mat]!r}, {w1!r}] "
                            f"has 1 midpoint"
                        )
                    if len(mids) > 2:
                        raise InvariantViolationError(
                            f"length-2 interval [{self.by_matrix[mat]!r}, {w1!r}] "
                            f"has {len(mids)} midpoints"
                        )
                    mids.sort(key=lambda x: x.word)
                    out.append((w1, mids[0], mids[1], self.by_matrix[mat]))
        self._squares = out
        return out

    def sign_assignment(self):
        """Signs on arrows making every square's product -1.

        One GF(2) variable per arrow, one parity constraint per square; free
        variables are fixed to 0 in arrow order, so the output is canonical.
        Unsolvability would contradict a classical existence result and is
        raised as an invariant violation.
        """
        if self._signs is not None:
            return self._signs
        arrows = self.arrows()
        index = {
            (w.matrix, wp.matrix): k for k, (w, wp) in enumerate(arrows)
        }
        constraints = []
        for w1, w2, w3, w4 in self.squares():
            idxs = (
                index[(w1.matrix, w2.matrix)],
                index[(w1.matrix, w3.matrix)],
                index[(w2.matrix, w4.matrix)],
                index[(w3.matrix, w4.matrix)],
            )
            constraints.append((idxs, 1))
        sol = linalg.gf2_solve(len(arrows), constraints)
        if sol is None:
            raise InvariantViolationError("square sign system unsolvable")
        self._signs = {
            (w.matrix, wp.matrix): (-1 if sol[k] else 1)
            for k, (w, wp) in enumerate(arrows)
        }
        return self._signs

    # --- parabolic structure ------------------------------------------------

    def parabolic_decompose(self, w: WeylElement, S) -> tuple[WeylElement, WeylElement]:
        """w = w_S * w^S with w_S in W_S, w^S without left descents in S,
        lengths adding up.  Strips the smallest S-descent repeatedly."""
        S = set(S)
        prefix: list[int] = []
        u = w
        while True:
            for i in sorted(S):
                if not self.group.left_ascent(u, i):
                    prefix.append(i)
                    m = _mat_mul(self.group.simple_matrices[i], u.matrix)
                    u = self.by_matrix[m]
                    break
            else:
                break
        ws = self.group.identity
        for i in reversed(prefix):
            m = _mat_mul(self.group.simple_matrices[i], ws.matrix)
            ws = self.by_matrix[m]
        if ws.length + u.length != w.length:
            raise InvariantViolationError("parabolic decomposition lengths do not add")
        return ws, u

    def minimal_coset_reps(self, S) -> list[WeylElement]:
        """All enumerated w with no left descent in S, i.e. l(vw) >= l(w)
        for every v in the parabolic subgroup."""
        S = tuple(sorted(set(S)))
        return [
            w
            for w in self.elements()
            if all(self.group.left_ascent(w, i) for i in S)
        ]

    def subgroup_elements(self, S) -> list[WeylElement]:
        """Enumerated elements of W_S (their reduced words use only S)."""
        S = set(S)
        return [w for w in self.elements() if set(w.word) <= S]

    def classify_arrow(self, w: WeylElement, wp: WeylElement, S):
        """Classify an arrow w -> w' against the S-decomposition.

        Returns ("drops", None) when l(w^S) > l(w'^S), or
        ("same", (w_S, w'_S)) when the coset parts agree, in which case the
        subgroup parts form an arrow in W_S.  Anything else is a violation.
        """
        ws, wS = self.parabolic_decompose(w, S)
        wps, wpS = self.parabolic_decompose(wp, S)
        if wS.length > wpS.length:
            return ("drops", None)
        if wS.length == wpS.length:
            if wS != wpS:
                raise InvariantViolationError(
                    "equal coset lengths but different coset representatives"
                )
            if wps not in self.covers(ws):
                raise InvariantViolationError(
                    "coset parts equal but subgroup parts do not form an arrow"
                )
            return ("same", (ws, wps))
        raise InvariantViolationError("arrow increases minimal coset length")

    # --- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        signs = self.sign_assignment()
        return {
            "max_length": self.max_length,
            "levels": [
                [{"word": list(w.word), "matrix": [list(r) for r in w.matrix]} for w in level]
                for level in self.levels
            ],
            "arrows": [
                {
                    "source": list(w.word),
                    "target": list(wp.word),
                    "sign": signs[(w.matrix, wp.matrix)],
                }
                for w, wp in self.arrows()
            ],
            "squares": [
                [list(a.word), list(b.word), list(c.word), list(d.word)]
                for a, b, c, d in self.squares()
            ],
        }

    def to_dot(self, S=None) -> str:
        """GraphViz export of the arrow graph with sign labels; when S is
        given, minimal coset representatives are highlighted."""
        signs = self.sign_assignment()
        reps = {w.matrix for w in self.minimal_coset_reps(S)} if S is not None else set()
        lines = ["digraph bruhat {", '  rankdir="BT";']
        for w in self.elements():
            name = "".join(str(i) for i in w.word) or "e"
            style = ' style=filled fillcolor="lightblue"' if w.matrix in reps else ""
            lines.append(f'  "{name}" [label="{name}"{style}];')
        for w, wp in self.arrows():
            a = "".join(str(i) for i in w.word) or "e"
            b = "".join(str(i) for i in wp.word) or "e"
            s = "+" if signs[(w.matrix, wp.matrix)] == 1 else "-"
            lines.append(f'  "{a}" -> "{b}" [label="{s}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def dot_orbit_weight(A: GCM, w: WeylElement, mu: Weight) -> Weight:
    """w . mu via the shifted action, folded over w's reduced word."""
    return dot_action_word(A, w.word, mu)


def enumerate_for_depth(
    A: GCM,
    mu: Weight,
    depth: int,
    max_level_size: int = 200_000,
    max_length: int | None = None,
):
    """Enumerate far enough that every element not enumerated is guaranteed
    to have ht(mu - w.mu) > depth.

    Along any arrow chain upward the offset height strictly grows (mu must be
    dominant), so stopping at the first level whose minimum offset height
    exceeds the depth is sound; the height is at least the length, so this
    terminates by level depth + 1.  A max_length cap below that point raises,
    reporting how much further the enumeration must go.  Returns
    (table, offsets) with offsets[w] = mu - w.mu in simple-root coordinates.
    """
    if any(x for x in mu.offset):
        raise ValueError("base weight must be given by labels alone")
    group = WeylGroup(A)
    levels = [[group.identity]]
    seen = {group.identity.matrix}
    offsets = {group.identity.matrix: (0,) * A.rank}
    while True:
        frontier_heights = []
        nxt = []
        for w in levels[-1]:
            for i in range(group.rank):
                if group.right_ascent(w, i):
                    child = group.right_mul(w, i)
                    if child.matrix not in seen:
                        seen.add(child.matrix)
                        nxt.append(child)
                        if len(nxt) > max_level_size:
                            raise EnumerationLimitError(
                                f"level size exceeds {max_level_size}"
                            )
        if not nxt:
            break
        for child in nxt:
            wmu = dot_action_word(A, child.word, mu)
            offsets[child.matrix] = wmu.offset
            frontier_heights.append(sum(wmu.offset))
        levels.append(nxt)
        if min(frontier_heights) > depth:
            break
        if max_length is not None and len(levels) - 1 >= max_length:
            raise EnumerationLimitError(
                f"length cap {max_length} reached with the depth-{depth} ball "
                f"still open; extend to at least {len(levels)}"
            )
    return BruhatTable(group, levels), offsets
