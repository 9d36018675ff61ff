"""Graded nilpotent Lie algebras presented by Serre relations, degree by degree.

The lower-triangular algebra is realized inside the free associative algebra
on the lowering generators: each multidegree component is the span of
left-normed bracket words modulo the degree component of the two-sided Lie
ideal generated by the Serre elements (ad f_i)^(1-a_ij)(f_j).  Components are
built by exact elimination in ascending height, so dim(component) is the root
multiplicity, with structure constants and a raising-action table read off
from chosen bracket-word representatives.

Once an entire height level is empty every higher component vanishes (the
algebra is generated in degree one), which keeps finite types cheap no matter
how deep the requested cutoff is.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import GCM
from .errors import CutoffExceededError, InvariantViolationError

Offset = tuple[int, ...]
Word = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def _unit(rank: int, i: int) -> Offset:
    return tuple(1 if k == i else 0 for k in range(rank))


def _offset_sub_unit(beta: Offset, i: int) -> Offset | None:
    if beta[i] == 0:
        return None
    return tuple(x - (1 if k == i else 0) for k, x in enumerate(beta))


def _words_of_degree(beta: Offset) -> list[Word]:
    """All letter sequences with the given letter multiset, lex sorted."""
    letters = [i for i, c in enumerate(beta) for _ in range(c)]
    out: list[Word] = []

    def rec(prefix, remaining):
        if not remaining:
            out.append(tuple(prefix))
            return
        last = None
        for k in range(len(remaining)):
            if remaining[k] == last:
                continue
            last = remaining[k]
            rec(prefix + [remaining[k]], remaining[:k] + remaining[k + 1 :])

    rec([], letters)
    return out


class _Reducer:
    """Echelonized span with quotient-class bookkeeping.

    Rows tagged with class 0 span the ideal component; each accepted
    candidate row is tagged with its own quotient coordinate, so reducing an
    arbitrary vector yields its coordinates in the chosen quotient basis.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, tuple[list[Fraction], dict[int, Fraction]]] = {}

    def _eliminate(self, vec, coords):
        for col in range(self.ncols):
            x = vec[col]
            if not x:
                continue
            hit = self.pivot_rows.get(col)
            if hit is None:
                return col
            row, rc = hit
            for c in range(col, self.ncols):
                if row[c]:
                    vec[c] -= x * row[c]
            for k, v in rc.items():
                coords[k] = coords.get(k, ZERO) - x * v
        return None

    def insert(self, vec, coords) -> bool:
        """Returns True when the vector was independent (a new pivot)."""
        vec = list(vec)
        coords = dict(coords)
        col = self._eliminate(vec, coords)
        if col is None:
            return False
        inv = ONE / vec[col]
        vec = [x * inv for x in vec]
        coords = {k: v * inv for k, v in coords.items() if v}
        self.pivot_rows[col] = (vec, coords)
        return True

    def reduce(self, vec) -> dict[int, Fraction]:
        vec = list(vec)
        coords: dict[int, Fraction] = {}
        col = self._eliminate(vec, coords)
        if col is not None:
            raise InvariantViolationError("vector outside the constructed span")
        # elimination accumulates the negatives of the expansion coefficients
        return {k: -v for k, v in coords.items() if v}


@dataclass(frozen=True)
class Generator:
    index: int
    offset: Offset
    local: int
    word: Word  # left-normed bracket word [[..[f_w0, f_w1], ..], f_w-1]


@dataclass(frozen=True)
class ParabolicSplit:
    S: tuple[int, ...]
    levi_roots: tuple[Offset, ...]
    complement_roots: tuple[Offset, ...]


class GradedNilpotent:
    """Serre-presented lowering algebra, complete up to a height cutoff."""

    def __init__(self, A: GCM, depth: int):
        if depth < 0:
            raise ValueError("depth must be >= 0")
        self.A = A
        self.depth = depth
        self.rank = A.rank
        self.gens: list[Generator] = []
        self.basis: dict[Offset, list[Generator]] = {}
        self.gen_by_word: dict[Word, Generator] = {}
        self.terminated_height: int | None = None
        self._ideal_rows: dict[Offset, list[dict[Word, Fraction]]] = {}
        self._reducers: dict[Offset, _Reducer] = {}
        self._word_index: dict[Offset, dict[Word, int]] = {}
        self._expansion_cache: dict[Word, dict[Word, Fraction]] = {}
        self._bracket_cache: dict[tuple[int, int], dict[int, Fraction]] = {}
        self._e_table: dict[tuple[int, int], object] = {}
        self._build()

    # --- free-algebra plumbing ----------------------------------------------

    def _expansion(self, word: Word) -> dict[Word, Fraction]:
        """Associative expansion of a left-normed bracket word."""
        if word in self._expansion_cache:
            return self._expansion_cache[word]
        if len(word) == 1:
            out = {word: ONE}
        else:
            inner = self._expansion(word[:-1])
            j = word[-1]
            out: dict[Word, Fraction] = {}
            for w, c in inner.items():
                a = w + (j,)
                out[a] = out.get(a, ZERO) + c
                b = (j,) + w
                out[b] = out.get(b, ZERO) - c
            out = {w: c for w, c in out.items() if c}
        self._expansion_cache[word] = out
        return out

    def _serre_elements(self, beta: Offset):
        """Serre elements (ad f_i)^(1-a_ij)(f_j) of multidegree beta."""
        out = []
        a = self.A.entries
        for i in range(self.rank):
            for j in range(self.rank):
                if i == j:
                    continue
                n = 1 - a[i][j]
                deg = tuple(
                    (n if k == i else 0) + (1 if k == j else 0) for k in range(self.rank)
                )
                if deg != beta:
                    continue
                vec = {(j,): ONE}
                for _ in range(n):
                    nxt: dict[Word, Fraction] = {}
                    for w, c in vec.items():
                        u = (i,) + w
                        nxt[u] = nxt.get(u, ZERO) + c
                        v = w + (i,)
                        nxt[v] = nxt.get(v, ZERO) - c
                    vec = {w: c for w, c in nxt.items() if c}
                out.append(vec)
        return out

    def _densify(self, beta: Offset, sparse: dict[Word, Fraction]) -> list[Fraction]:
        idx = self._word_index[beta]
        vec = [ZERO] * len(idx)
        for w, c in sparse.items():
            vec[idx[w]] = c
        return vec

    # --- construction ---------------------------------------------------------

    def _build(self):
        from .cartan import offsets_up_to

        all_offsets = offsets_up_to(self.rank, self.depth)
        by_height: dict[int, list[Offset]] = {}
        for beta in all_offsets:
            if sum(beta) >= 1:
                by_height.setdefault(sum(beta), []).append(beta)
        for h in range(1, self.depth + 1):
            if self.terminated_height is not None:
                break
            level_dim = 0
            for beta in by_height.get(h, []):
                level_dim += self._build_degree(beta)
            if level_dim == 0:
                self.terminated_height = h
        self._build_e_table()

    def _build_degree(self, beta: Offset) -> int:
        words = _words_of_degree(beta)
        self._word_index[beta] = {w: k for k, w in enumerate(words)}
        reducer = _Reducer(len(words))
        self._reducers[beta] = reducer
        ideal_sparse: list[dict[Word, Fraction]] = []
        for i in range(self.rank):
            gamma = _offset_sub_unit(beta, i)
            if gamma is None or sum(gamma) == 0:
                continue
            for row in self._ideal_rows.get(gamma, []):
                com: dict[Word, Fraction] = {}
                for w, c in row.items():
                    u = (i,) + w
                    com[u] = com.get(u, ZERO) + c
                    v = w + (i,)
                    com[v] = com.get(v, ZERO) - c
                com = {w: c for w, c in com.items() if c}
                if com:
                    ideal_sparse.append(com)
        ideal_sparse.extend(self._serre_elements(beta))
        kept_rows: list[dict[Word, Fraction]] = []
        for sparse in ideal_sparse:
            if reducer.insert(self._densify(beta, sparse), {}):
                kept_rows.append(sparse)
        self._ideal_rows[beta] = kept_rows
        # candidate bracket words, one per (lower basis element, appended letter)
        candidates: list[Word] = []
        if sum(beta) == 1:
            candidates = [(beta.index(1),)]
        else:
            for j in range(self.rank):
                gamma = _offset_sub_unit(beta, j)
                if gamma is None:
                    continue
                for g in self.basis.get(gamma, []):
                    candidates.append(g.word + (j,))
            candidates.sort()
        accepted: list[Generator] = []
        for word in candidates:
            vec = self._densify(beta, self._expansion(word))
            local = len(accepted)
            if reducer.insert(vec, {local: ONE}):
                gen = Generator(len(self.gens), beta, local, word)
                self.gens.append(gen)
                self.gen_by_word[word] = gen
                accepted.append(gen)
        self.basis[beta] = accepted
        return len(accepted)

    # --- queries ----------------------------------------------------------------

    def multiplicity(self, beta: Offset) -> int:
        h = sum(beta)
        if self.terminated_height is not None and h >= self.terminated_height:
            return 0
        if h > self.depth:
            raise CutoffExceededError(f"height {h} beyond cutoff {self.depth}")
        if h == 0:
            return 0
        return len(self.basis.get(tuple(beta), ()))

    def root_list(self) -> list[tuple[Offset, int]]:
        """Positive roots within the cutoff with their multiplicities."""
        out = [(beta, len(gens)) for beta, gens in sorted(self.basis.items(), key=lambda kv: (sum(kv[0]), kv[0])) if gens]
        return out

    def reduce_to_basis(self, beta: Offset, sparse: dict[Word, Fraction]) -> dict[int, Fraction]:
        """Quotient coordinates (global generator indices) of a word vector."""
        local = self._reducers[beta].reduce(self._densify(beta, sparse))
        gens = self.basis[beta]
        return {gens[k].index: v for k, v in local.items()}

    def bracket(self, a: int, b: int) -> dict[int, Fraction]:
        """[g_a, g_b] in the quotient basis (global indices)."""
        if a == b:
            return {}
        if (a, b) in self._bracket_cache:
            return self._bracket_cache[(a, b)]
        if a > b:
            return {g: -c for g, c in self.bracket(b, a).items()}
        ga, gb = self.gens[a], self.gens[b]
        beta = tuple(x + y for x, y in zip(ga.offset, gb.offset))
        h = sum(beta)
        if self.terminated_height is not None and h >= self.terminated_height:
            out: dict[int, Fraction] = {}
        elif h > self.depth:
            raise CutoffExceededError(f"bracket height {h} beyond cutoff {self.depth}")
        else:
            ea = self._expansion(ga.word)
            eb = self._expansion(gb.word)
            com: dict[Word, Fraction] = {}
            for w1, c1 in ea.items():
                for w2, c2 in eb.items():
                    u = w1 + w2
                    com[u] = com.get(u, ZERO) + c1 * c2
                    v = w2 + w1
                    com[v] = com.get(v, ZERO) - c1 * c2
            com = {w: c for w, c in com.items() if c}
            out = self.reduce_to_basis(beta, com)
        self._bracket_cache[(a, b)] = out
        return out

    def simple_gen(self, i: int) -> Generator:
        return self.gen_by_word[(i,)]

    def e_action(self, i: int, g: int):
        """[e_i, g] as ("h", coeff) when deg(g) = alpha_i, else a dict of
        quotient coordinates at degree deg(g) - alpha_i (empty when zero)."""
        return self._e_table[(i, g)]

    def _build_e_table(self):
        a = self.A.entries
        for g in self.gens:
            if len(g.word) == 1:
                k = g.word[0]
                for i in range(self.rank):
                    self._e_table[(i, g.index)] = ("h", ONE) if i == k else {}
        for g in self.gens:
            if len(g.word) == 1:
                continue
            c_gen = self.gen_by_word[g.word[:-1]]
            j = g.word[-1]
            gamma = c_gen.offset
            for i in range(self.rank):
                total: dict[int, Fraction] = {}
                t1 = self._e_table[(i, c_gen.index)]
                if isinstance(t1, tuple):  # [coef*h_i, f_j] = -coef*a_ij f_j
                    coef = t1[1]
                    fj = self.simple_gen(j).index
                    val = -coef * a[i][j]
                    if val:
                        total[fj] = total.get(fj, ZERO) + val
                else:
                    for gd, cd in t1.items():
                        for gi, ci in self.bracket(gd, self.simple_gen(j).index).items():
                            val = cd * ci
                            if val:
                                total[gi] = total.get(gi, ZERO) + val
                if i == j:
                    # [sigma(c), h_i] = <gamma, alpha_i^vee> sigma(c)
                    pair = sum(gamma[k] * a[i][k] for k in range(self.rank))
                    if pair:
                        total[c_gen.index] = total.get(c_gen.index, ZERO) + pair
                self._e_table[(i, g.index)] = {k: v for k, v in total.items() if v}

    def dims_json(self) -> dict:
        return {
            "depth": self.depth,
            "multiplicities": [
                {"offset": list(beta), "dim": len(gens)}
                for beta, gens in sorted(self.basis.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            ],
        }


def build_nilpotent(A: GCM, depth: int) -> GradedNilpotent:
    return GradedNilpotent(A, depth)


def split_parabolic(algebra: GradedNilpotent, S) -> ParabolicSplit:
    """Partition of the enumerated roots by support: a root lies on the Levi
    side exactly when its support is contained in S."""
    S = set(S)
    levi = []
    comp = []
    for beta, mult in algebra.root_list():
        support = {i for i, c in enumerate(beta) if c}
        (levi if support <= S else comp).append(beta)
    return ParabolicSplit(tuple(sorted(S)), tuple(levi), tuple(comp))
