"""Weight-graded Verma module slices over exact rationals.

A slice is one weight space of a highest-weight module: the ordered-monomial
basis (exponent words over the root-vector basis, letters nonincreasing left
to right) together with the lowering and raising action matrices.  Lowering
matrices are independent of the highest weight; raising matrices are affine
in the single pairing <top, alpha_i^vee>, so their symbolic form is cached
once per word and evaluated per module.

Slice bases do not depend on the top weight at all, which is what makes
embeddings cheap: a module map out of a Verma module is determined by the
image of its generator, and every further column is a straightening
computation in the lowering algebra.

All caches hold immutable values and writes are idempotent, so a shared
engine is safe under concurrent lookups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cartan import GCM, Weight, offset_pairing, offsets_up_to, pairing
from .errors import CutoffExceededError, NotComparableError
from .nilpotent import GradedNilpotent

Offset = tuple[int, ...]
Word = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def _offset_add(a: Offset, b: Offset) -> Offset:
    return tuple(x + y for x, y in zip(a, b))


def _offset_sub(a: Offset, b: Offset) -> Offset | None:
    out = tuple(x - y for x, y in zip(a, b))
    return out if all(x >= 0 for x in out) else None


@dataclass(frozen=True)
class GradedSlice:
    """One weight space: basis words plus action matrices.

    e_matrices[i] maps this slice to the slice at beta - alpha_i (an empty
    matrix when that weight space is zero); f_matrices[i] maps it to the
    slice at beta + alpha_i.
    """

    top: Weight
    beta: Offset
    words: tuple[Word, ...]
    e_matrices: tuple
    f_matrices: tuple

    @property
    def dim(self) -> int:
        return len(self.words)


class VermaEngine:
    """Classical engine: slices of every Verma module below a cutoff."""

    zero = ZERO
    one = ONE

    def __init__(self, algebra: GradedNilpotent):
        self.algebra = algebra
        self.A: GCM = algebra.A
        self.rank = algebra.rank
        self.depth = algebra.depth
        self._monomials: dict[Offset, tuple[Word, ...]] = {}
        self._windex: dict[Offset, dict[Word, int]] = {}
        self._prepend: dict[tuple[int, Word], dict[Word, Fraction]] = {}
        self._fmat: dict[tuple[int, Offset], list] = {}
        self._eapp: dict[tuple[int, Word], dict[Word, tuple[Fraction, Fraction]]] = {}
        self._emat: dict[tuple[int, int, Offset], list] = {}

    # --- basis ------------------------------------------------------------

    def _check_depth(self, beta: Offset):
        if sum(beta) > self.depth and self.algebra.terminated_height is None:
            raise CutoffExceededError(f"slice height {sum(beta)} beyond cutoff")

    def words(self, beta) -> tuple[Word, ...]:
        """Ordered monomial basis of the weight space at offset beta."""
        beta = tuple(beta)
        if beta in self._monomials:
            return self._monomials[beta]
        self._check_depth(beta)
        gens = self.algebra.gens
        out: list[Word] = []

        def rec(remaining: Offset, max_gen: int, acc):
            if all(x == 0 for x in remaining):
                out.append(tuple(acc))
                return
            for g in range(max_gen, -1, -1):
                rest = _offset_sub(remaining, gens[g].offset)
                if rest is not None:
                    acc.append(g)
                    rec(rest, g, acc)
                    acc.pop()

        rec(beta, len(gens) - 1, [])
        out.sort()
        words = tuple(out)
        self._monomials[beta] = words
        self._windex[beta] = {w: k for k, w in enumerate(words)}
        return words

    def dim(self, beta) -> int:
        return len(self.words(beta))

    def gen_degree(self, b: int) -> Offset:
        return self.algebra.gens[b].offset

    def word_degree(self, word: Word) -> Offset:
        beta = [0] * self.rank
        for g in word:
            for k, x in enumerate(self.algebra.gens[g].offset):
                beta[k] += x
        return tuple(beta)

    def unit_vector(self, beta, word: Word) -> list:
        vec = [ZERO] * self.dim(beta)
        vec[self._windex[tuple(beta)][word]] = ONE
        return vec

    def power_word(self, i: int, p: int) -> Word:
        return (self.algebra.simple_gen(i).index,) * p

    # --- lowering ----------------------------------------------------------

    def prepend(self, b: int, word: Word) -> dict[Word, Fraction]:
        """f_b times a canonical monomial, straightened back to the basis.

        An out-of-order letter is bubbled right one position at a time; each
        swap emits the bracket term, whose summands start with a strictly
        taller letter and hence are already canonical.
        """
        key = (b, word)
        if key in self._prepend:
            return self._prepend[key]
        if not word or b >= word[0]:
            out = {(b,) + word: ONE}
        else:
            c, rest = word[0], word[1:]
            out = {}
            for w, coef in self.prepend(b, rest).items():
                for w2, coef2 in self.prepend(c, w).items():
                    out[w2] = out.get(w2, ZERO) + coef * coef2
            for d, coef in self.algebra.bracket(b, c).items():
                w2 = (d,) + rest
                out[w2] = out.get(w2, ZERO) + coef
            out = {w: v for w, v in out.items() if v}
        self._prepend[key] = out
        return out

    def f_matrix_gen(self, b: int, beta) -> list:
        """Action of the root vector f_b from slice(beta) to slice(beta + deg b)."""
        beta = tuple(beta)
        key = (b, beta)
        if key in self._fmat:
            return self._fmat[key]
        target = _offset_add(beta, self.gen_degree(b))
        tw = self.words(target)
        tindex = self._windex[target]
        cols = self.words(beta)
        mat = [[ZERO] * len(cols) for _ in tw]
        for col, m in enumerate(cols):
            for w, coef in self.prepend(b, m).items():
                mat[tindex[w]][col] = coef
        self._fmat[key] = mat
        return mat

    def f_matrix_simple(self, i: int, beta) -> list:
        return self.f_matrix_gen(self.algebra.simple_gen(i).index, beta)

    # --- raising -----------------------------------------------------------

    def _e_apply(self, i: int, word: Word) -> dict[Word, tuple[Fraction, Fraction]]:
        """e_i applied to a monomial, as word -> (constant, coefficient of
        <top, alpha_i^vee>): the top weight enters only through that pairing."""
        key = (i, word)
        if key in self._eapp:
            return self._eapp[key]
        out: dict[Word, tuple[Fraction, Fraction]] = {}

        def add(w, c0, c1):
            a0, a1 = out.get(w, (ZERO, ZERO))
            out[w] = (a0 + c0, a1 + c1)

        if word:
            b, rest = word[0], word[1:]
            act = self.algebra.e_action(i, b)
            if isinstance(act, tuple):
                # coroot term: acts on the tail by <top - deg(rest), alpha_i^vee>
                coef = act[1]
                drop = -offset_pairing(self.A, self.word_degree(rest), i)
                add(rest, coef * drop, coef)
            else:
                for d, coef in act.items():
                    for w2, pc in self.prepend(d, rest).items():
                        add(w2, coef * pc, ZERO)
            for w1, (c0, c1) in self._e_apply(i, rest).items():
                for w2, pc in self.prepend(b, w1).items():
                    add(w2, c0 * pc, c1 * pc)
        out = {w: cc for w, cc in out.items() if cc[0] or cc[1]}
        self._eapp[key] = out
        return out

    def e_matrix(self, top: Weight, i: int, beta) -> list:
        """Action of e_i from slice(beta) to slice(beta - alpha_i); an empty
        matrix when the target weight space vanishes."""
        beta = tuple(beta)
        lam_i = pairing(self.A, top, i)
        key = (i, lam_i, beta)
        if key in self._emat:
            return self._emat[key]
        target = _offset_sub(beta, tuple(1 if k == i else 0 for k in range(self.rank)))
        cols = self.words(beta)
        if target is None:
            mat = []
        else:
            tw = self.words(target)
            tindex = self._windex[target]
            mat = [[ZERO] * len(cols) for _ in tw]
            for col, m in enumerate(cols):
                for w, (c0, c1) in self._e_apply(i, m).items():
                    mat[tindex[w]][col] = c0 + c1 * lam_i
        self._emat[key] = mat
        return mat

    # --- spec surface --------------------------------------------------------

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
        """Basis of the joint kernel of the raising operators on slice(beta)."""
        beta = tuple(beta)
        rows = []
        for i in range(self.rank):
            rows.extend(self.e_matrix(top, i, beta))
        return linalg.nullspace(rows, self.dim(beta), one=self.one)


class Descender:
    """Columns m . v for a fixed slice vector v, memoized over suffixes."""

    def __init__(self, engine, gamma0, vec):
        self.engine = engine
        self._cache: dict[Word, tuple[Offset, list]] = {(): (tuple(gamma0), list(vec))}

    def _entry(self, word: Word) -> tuple[Offset, list]:
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        toff, tail = self._entry(word[1:])
        b = word[0]
        mat = self.engine.f_matrix_gen(b, toff)
        zero = self.engine.zero
        out = [
            sum((row[k] * tail[k] for k in range(len(tail)) if tail[k]), zero)
            for row in mat
        ]
        hit = (_offset_add(toff, self.engine.gen_degree(b)), out)
        self._cache[word] = hit
        return hit

    def column(self, word: Word) -> list:
        return self._entry(word)[1]


def normalize_singular(vec: list) -> list:
    """Scale so the first nonzero coordinate is +1 (deterministic choice)."""
    for x in vec:
        if x:
            return [y / x for y in vec]
    raise ValueError("zero vector")


def singular_vectors(engine, lam: Weight, nu: Weight) -> list:
    """Basis of singular vectors of weight nu inside the module topped by lam."""
    if lam.labels != nu.labels:
        raise ValueError("weights must share the same base labels")
    beta = _offset_sub(nu.offset, lam.offset)
    if beta is None:
        return []
    return engine.singular_basis(lam, beta)


def descendant_matrix(engine, gamma0, vec, gamma_src) -> list:
    """Matrix whose columns are m . vec over the source basis at gamma_src."""
    desc = Descender(engine, gamma0, vec)
    cols = [desc.column(m) for m in engine.words(gamma_src)]
    nrows = engine.dim(_offset_add(tuple(gamma0), tuple(gamma_src)))
    return [[col[r] for col in cols] for r in range(nrows)]


def submodule_span_rank(engine, generators, beta) -> int:
    """Rank at slice(beta) of the descendant span of the given vectors.

    generators: list of (offset, vector) pairs relative to the module top.
    """
    beta = tuple(beta)
    cols = []
    for gamma0, vec in generators:
        rest = _offset_sub(beta, tuple(gamma0))
        if rest is None:
            continue
        desc = Descender(engine, gamma0, vec)
        for m in engine.words(rest):
            cols.append(desc.column(m))
    if not cols:
        return 0
    rows = [[col[r] for col in cols] for r in range(engine.dim(beta))]
    return linalg.rank(rows)


def _power_generators(engine, lam: Weight, indices):
    """(offset, unit vector) for each generator f_i^(<lam, alpha_i^vee> + 1).

    Generators whose degree exceeds the cutoff contribute nothing to any
    slice within it and are skipped (exactly, not approximately).
    """
    out = []
    for i in indices:
        p = pairing(engine.A, lam, i) + 1
        if p <= 0:
            raise ValueError("base weight not dominant on the requested indices")
        if p > engine.depth:
            continue
        gamma = tuple(p if k == i else 0 for k in range(engine.rank))
        out.append((gamma, engine.unit_vector(gamma, engine.power_word(i, p))))
    return out


def integrable_quotient(engine, mu: Weight, depth: int) -> dict[Offset, int]:
    """Graded dimensions of the maximal integrable quotient."""
    gens = _power_generators(engine, mu, range(engine.rank))
    return {
        beta: engine.dim(beta) - submodule_span_rank(engine, gens, beta)
        for beta in offsets_up_to(engine.rank, depth)
    }


def generalized_verma_dims(engine, lam: Weight, S, depth: int) -> dict[Offset, int]:
    """Graded dimensions of the parabolic quotient (divide by the descendants
    of f_i^(<lam, alpha_i^vee> + 1) for i in S only)."""
    for i in S:
        if pairing(engine.A, lam, i) < 0:
            raise ValueError(f"label at index {i} must be nonnegative on S")
    gens = _power_generators(engine, lam, sorted(S))
    return {
        beta: engine.dim(beta) - submodule_span_rank(engine, gens, beta)
        for beta in offsets_up_to(engine.rank, depth)
    }


def parabolic_kernel_generators(engine, lam: Weight, S):
    """Generators of the kernel of the projection onto the parabolic quotient."""
    return _power_generators(engine, lam, sorted(S))


class InclusionFamily:
    """Composition-consistent embeddings between the modules topped by the
    shifted orbit of a dominant weight.

    Each module gets one fixed embedding into the top module: its generator
    goes to the chosen singular vector there (first nonzero coordinate
    normalized to +1).  The embedding between two orbit modules is then
    forced: its generator image solves a small exact system at the source's
    top weight, and deeper blocks are straightening computations.  With these
    choices composite embeddings agree exactly, not merely up to scalar.
    """

    def __init__(self, engine, table, mu: Weight, orbit_offsets):
        self.engine = engine
        self.table = table
        self.mu = mu
        self.orbit = orbit_offsets  # element matrix -> offset of w.mu below mu
        self._top_singular: dict = {}
        self._gen_image: dict = {}
        self._descenders: dict = {}

    def top_offset(self, w) -> Offset:
        return self.orbit[w.matrix]

    def top_singular(self, w) -> list:
        """Chosen singular vector of weight w.mu inside the top module."""
        if w.matrix in self._top_singular:
            return self._top_singular[w.matrix]
        beta = self.top_offset(w)
        if sum(beta) == 0:
            vec = [self.engine.one]
        else:
            basis = self.engine.singular_basis(self.mu, beta)
            if len(basis) != 1:
                raise NotComparableError(
                    f"singular space at {beta} has dimension {len(basis)}, expected 1"
                )
            vec = normalize_singular(basis[0])
        self._top_singular[w.matrix] = vec
        return vec

    def generator_image(self, w, wp) -> list:
        """Image of the w-module's generator inside the w'-module, in the
        slice coordinates at offset top(w) - top(wp)."""
        key = (w.matrix, wp.matrix)
        if key in self._gen_image:
            return self._gen_image[key]
        if w == wp:
            vec = [self.engine.one]
        else:
            if not self.table.arrow_leq(w, wp):
                raise NotComparableError(f"{w!r} does not reach {wp!r} by arrows")
            beta_w = self.top_offset(w)
            beta_wp = self.top_offset(wp)
            gamma = _offset_sub(beta_w, beta_wp)
            if gamma is None:
                raise NotComparableError("orbit offsets not comparable")
            a_rows = descendant_matrix(
                self.engine, beta_wp, self.top_singular(wp), gamma
            )
            sol = linalg.solve_columns(
                a_rows,
                [[x] for x in self.top_singular(w)],
                self.engine.dim(gamma),
                1,
            )
            vec = [row[0] for row in sol]
        self._gen_image[key] = vec
        return vec

    def _descender(self, w, wp) -> Descender:
        key = (w.matrix, wp.matrix)
        if key not in self._descenders:
            gamma0 = _offset_sub(self.top_offset(w), self.top_offset(wp))
            self._descenders[key] = Descender(
                self.engine, gamma0, self.generator_image(w, wp)
            )
        return self._descenders[key]

    def block(self, w, wp, nu_offset) -> list:
        """Embedding matrix at the global slice mu - nu_offset, from the
        w-module's slice coordinates to the w'-module's.

        Rows/columns are empty when the respective weight space vanishes.
        """
        nu_offset = tuple(nu_offset)
        gamma_src = _offset_sub(nu_offset, self.top_offset(w))
        gamma_tgt = _offset_sub(nu_offset, self.top_offset(wp))
        if gamma_tgt is None:
            if gamma_src is not None and self.engine.dim(gamma_src):
                raise NotComparableError("source slice exists below target top")
            return []
        nrows = self.engine.dim(gamma_tgt)
        if gamma_src is None:
            return [[] for _ in range(nrows)]
        desc = self._descender(w, wp)
        cols = [desc.column(m) for m in self.engine.words(gamma_src)]
        return [[col[r] for col in cols] for r in range(nrows)]
