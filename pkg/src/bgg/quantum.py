"""Quantized lowering algebra and Verma slices over an exact q-field.

No PBW-type basis is assumed: the degree component of the quantized
lowering algebra is the span of plain words in the lowering generators
modulo the degree component of the two-sided ideal generated by the quantum
Serre elements, built by exact elimination with deterministic pivoting
(lex-largest word).  The chosen basis words, their generator actions, and
the raising-operator recursion then mirror the classical engine surface, so
the complex machinery runs unchanged over either scalar field.

Raising operators follow the commutation rule E_i F_j - F_j E_i =
delta_ij (K_i - K_i^{-1})/(q_i - q_i^{-1}), with K_i acting on a weight
vector by q_i to the coroot pairing; on a word this unfolds into quantum
integers of the suffix pairings, cached per (generator, top pairing, word).

The classical slice dimensions are the flatness oracle: every computed
quantum slice must match them, and the tests enforce it.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .cartan import GCM, Weight, offset_pairing, pairing, symmetrizer
from .errors import CutoffExceededError
from .nilpotent import _words_of_degree
from .qfield import NumericQ, SymbolicQ
from .verma import GradedSlice

Offset = tuple[int, ...]
Word = tuple[int, ...]


def _unit(rank: int, i: int) -> Offset:
    return tuple(1 if k == i else 0 for k in range(rank))


def _offset_add(a: Offset, b: Offset) -> Offset:
    return tuple(x + y for x, y in zip(a, b))


def _offset_sub(a: Offset, b: Offset):
    out = tuple(x - y for x, y in zip(a, b))
    return out if all(x >= 0 for x in out) else None


class QuantumEngine:
    """Word-basis engine for quantized Verma slices."""

    def __init__(self, A: GCM, depth: int, ctx=None):
        self.A = A
        self.rank = A.rank
        self.depth = depth
        self.d = symmetrizer(A)
        self.ctx = ctx if ctx is not None else SymbolicQ()
        self.zero = self.ctx.zero
        self.one = self.ctx.one
        self._ideal: dict[Offset, dict[Word, dict[Word, object]]] = {}
        self._basis: dict[Offset, tuple[Word, ...]] = {}
        self._windex: dict[Offset, dict[Word, int]] = {}
        self._fmat: dict[tuple[int, Offset], list] = {}
        self._efree: dict[tuple[int, int, Word], dict[Word, object]] = {}
        self._emat: dict[tuple[int, int, Offset], list] = {}

    # --- the quantum Serre ideal ------------------------------------------------

    def _serre_generators(self, beta: Offset):
        """Quantum Serre elements of multidegree beta:
        sum_k (-1)^k [1-a_ij choose k]_{q_i} F_i^(1-a_ij-k) F_j F_i^k."""
        out = []
        a = self.A.entries
        for i in range(self.rank):
            for j in range(self.rank):
                if i == j:
                    continue
                n = 1 - a[i][j]
                deg = tuple(
                    (n if t == i else 0) + (1 if t == j else 0) for t in range(self.rank)
                )
                if deg != beta:
                    continue
                vec: dict[Word, object] = {}
                for k in range(n + 1):
                    word = (i,) * (n - k) + (j,) + (i,) * k
                    coef = self.ctx.q_binom(n, k, self.d[i])
                    if k % 2:
                        coef = -coef
                    vec[word] = vec.get(word, self.zero) + coef
                out.append({w: c for w, c in vec.items() if c})
        return out

    def ideal_rows(self, beta) -> dict[Word, dict[Word, object]]:
        """Echelonized degree component of the two-sided Serre ideal, keyed by
        pivot word (the lex-largest word of each row, coefficient 1)."""
        beta = tuple(beta)
        if beta in self._ideal:
            return self._ideal[beta]
        if sum(beta) > self.depth:
            raise CutoffExceededError(f"ideal degree {sum(beta)} beyond cutoff")
        pivots: dict[Word, dict[Word, object]] = {}

        def insert(vec):
            vec = {w: c for w, c in vec.items() if c}
            while vec:
                p = max(vec)
                row = pivots.get(p)
                if row is None:
                    c = vec[p]
                    pivots[p] = {w: cc / c for w, cc in vec.items()}
                    return
                c = vec[p]
                for w, cc in row.items():
                    nv = vec.get(w, self.zero) - c * cc
                    if nv:
                        vec[w] = nv
                    else:
                        vec.pop(w, None)

        for i in range(self.rank):
            gamma = _offset_sub(beta, _unit(self.rank, i))
            if gamma is None or sum(gamma) == 0:
                continue
            for row in self.ideal_rows(gamma).values():
                insert({(i,) + w: c for w, c in row.items()})
                insert({w + (i,): c for w, c in row.items()})
        for gen in self._serre_generators(beta):
            insert(gen)
        self._ideal[beta] = pivots
        return pivots

    # --- basis and reduction -----------------------------------------------------

    def words(self, beta) -> tuple[Word, ...]:
        beta = tuple(beta)
        if beta not in self._basis:
            piv = self.ideal_rows(beta)
            basis = tuple(w for w in _words_of_degree(beta) if w not in piv)
            self._basis[beta] = basis
            self._windex[beta] = {w: k for k, w in enumerate(basis)}
        return self._basis[beta]

    def dim(self, beta) -> int:
        return len(self.words(beta))

    def unit_vector(self, beta, word: Word) -> list:
        vec = [self.zero] * self.dim(beta)
        vec[self._windex[tuple(beta)][word]] = self.one
        return vec

    def power_word(self, i: int, p: int) -> Word:
        return (i,) * p

    def gen_degree(self, b: int) -> Offset:
        return _unit(self.rank, b)

    def reduce_vector(self, beta: Offset, sparse: dict) -> list:
        """Residue of a word vector in the chosen basis coordinates."""
        piv = self.ideal_rows(beta)
        vec = {w: c for w, c in sparse.items() if c}
        while True:
            hit = None
            for w in sorted(vec, reverse=True):
                if w in piv:
                    hit = w
                    break
            if hit is None:
                break
            c = vec.pop(hit)
            for w, cc in piv[hit].items():
                if w == hit:
                    continue
                nv = vec.get(w, self.zero) - c * cc
                if nv:
                    vec[w] = nv
                else:
                    vec.pop(w, None)
        out = [self.zero] * self.dim(beta)
        index = self._windex[beta]
        for w, c in vec.items():
            out[index[w]] = c
        return out

    # --- actions --------------------------------------------------------------

    def f_matrix_gen(self, i: int, beta) -> list:
        beta = tuple(beta)
        key = (i, beta)
        if key not in self._fmat:
            target = _offset_add(beta, _unit(self.rank, i))
            cols = [
                self.reduce_vector(target, {(i,) + w: self.one})
                for w in self.words(beta)
            ]
            self._fmat[key] = [
                [col[r] for col in cols] for r in range(self.dim(target))
            ]
        return self._fmat[key]

    def f_matrix_simple(self, i: int, beta) -> list:
        return self.f_matrix_gen(i, beta)

    def _e_free(self, i: int, lam_i: int, word: Word) -> dict[Word, object]:
        """Raising action on a free word; coefficients are quantum integers of
        the pairing of the suffix weight with the coroot."""
        key = (i, lam_i, word)
        hit = self._efree.get(key)
        if hit is not None:
            return hit
        out: dict[Word, object] = {}
        if word:
            j, rest = word[0], word[1:]
            for w, c in self._e_free(i, lam_i, rest).items():
                nw = (j,) + w
                nv = out.get(nw, self.zero) + c
                if nv:
                    out[nw] = nv
                else:
                    out.pop(nw, None)
            if i == j:
                deg = [0] * self.rank
                for t in rest:
                    deg[t] += 1
                pair = lam_i - offset_pairing(self.A, deg, i)
                coef = self.ctx.q_int(pair, self.d[i])
                if coef:
                    nv = out.get(rest, self.zero) + coef
                    if nv:
                        out[rest] = nv
                    else:
                        out.pop(rest, None)
        self._efree[key] = out
        return out

    def e_matrix(self, top: Weight, i: int, beta) -> list:
        beta = tuple(beta)
        lam_i = pairing(self.A, top, i)
        key = (i, lam_i, beta)
        if key in self._emat:
            return self._emat[key]
        target = _offset_sub(beta, _unit(self.rank, i))
        if target is None:
            mat = []
        else:
            cols = [
                self.reduce_vector(target, self._e_free(i, lam_i, w))
                for w in self.words(beta)
            ]
            mat = [[col[r] for col in cols] for r in range(self.dim(target))]
        self._emat[key] = mat
        return mat

    # --- spec surface ------------------------------------------------------------

    def slice(self, top: Weight, beta) -> GradedSlice:
        beta = tuple(beta)
        return GradedSlice(
            top,
            beta,
            self.words(beta),
            tuple(self.e_matrix(top, i, beta) for i in range(self.rank)),
            tuple(self.f_matrix_simple(i, beta) for i in range(self.rank)),
        )

    def singular_basis(self, top: Weight, beta) -> list:
        beta = tuple(beta)
        rows = []
        for i in range(self.rank):
            rows.extend(self.e_matrix(top, i, beta))
        return linalg.nullspace(rows, self.dim(beta), one=self.one)


def quantum_engine(A: GCM, depth: int, q=None) -> QuantumEngine:
    """Symbolic engine by default; numeric at a rational q with |q| not 0, 1."""
    ctx = SymbolicQ() if q is None else NumericQ(Fraction(q))
    return QuantumEngine(A, depth, ctx)


def q_serre_ideal_degree(A: GCM, beta, depth=None, q=None):
    """Reduced basis of the requested degree component of the quantum Serre
    ideal, as word-coefficient maps."""
    depth = sum(beta) if depth is None else depth
    eng = quantum_engine(A, depth, q)
    return list(eng.ideal_rows(beta).values())
