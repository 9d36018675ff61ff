"""Signed complexes of Verma modules, their parabolic quotients, and the
kernel filtration, verified slice by slice in exact arithmetic.

A complex is assembled per weight slice: level n holds one block column per
enumerated element of length n whose top weight still meets the slice, the
differential entry for an arrow w -> w' is the chosen embedding block times
the arrow's sign, and everything else is zero.  Verification is rank-based:
squaring to zero is a literal matrix product check, homology dimensions come
from fraction-free ranks, and the degree-zero comparison is the identity
dim C_0 - rank d_1 = dim of the integrable quotient, checked against the
Freudenthal oracle (independent of every action matrix).

Truncation soundness: a slice is trusted only when every group element whose
module could meet it has been enumerated; the enumeration keeps extending
levels until the whole requested ball is trusted, so vanishing can never be
an artifact of cutting off too early.

Per-slice verification tasks are independent and side-effect-free; a worker
pool fans them out when jobs > 1.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .cartan import GCM, Weight, is_dominant, offsets_up_to, pairing, weight
from .characters import convolve, freudenthal, levi_freudenthal, u_character
from .errors import InvariantViolationError
from .nilpotent import GradedNilpotent, build_nilpotent
from .verma import (
    Descender,
    InclusionFamily,
    VermaEngine,
    _offset_sub,
    _power_generators,
)
from .weyl import enumerate_for_depth

Offset = tuple[int, ...]


def _zero_matrix(nrows, ncols, zero):
    return [[zero] * ncols for _ in range(nrows)]


def _run(tasks, jobs: int):
    """Evaluate a list of thunks, optionally on a thread pool."""
    if jobs <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(t) for t in tasks]
        return [f.result() for f in futures]


@dataclass
class HomologyReport:
    """Per-slice homology dimensions and the degree-zero comparison."""

    trusted: list
    findings: list = field(default_factory=list)  # (n, offset, dim > 0)
    degree0_mismatches: list = field(default_factory=list)  # (offset, got, expected)
    table: list = field(default_factory=list)  # (n, offset, dim) incl. zeros

    @property
    def exact(self) -> bool:
        return not self.findings and not self.degree0_mismatches

    def to_json(self) -> dict:
        return {
            "homology": [
                {"n": n, "offset": list(beta), "dim": d} for n, beta, d in self.findings
            ],
            "degree0_match": not self.degree0_mismatches,
            "degree0_mismatches": [
                {"offset": list(beta), "got": g, "expected": e}
                for beta, g, e in self.degree0_mismatches
            ],
        }


class BGGComplex:
    """The signed complex resolving the maximal integrable quotient."""

    def __init__(self, A: GCM, mu: Weight, depth: int, engine, *, max_length=None):
        if not is_dominant(A, mu):
            raise ValueError("base weight must be dominant integral")
        self.A = A
        self.mu = mu
        self.depth = depth
        self.engine = engine
        self.rank = A.rank
        self.table, self.orbit = enumerate_for_depth(A, mu, depth, max_length=max_length)
        self.signs = self.table.sign_assignment()
        self.family = InclusionFamily(engine, self.table, mu, self.orbit)
        self.active = [
            w for w in self.table.elements() if sum(self.orbit[w.matrix]) <= depth
        ]
        self.levels: dict[int, list] = {}
        for w in self.active:
            self.levels.setdefault(w.length, []).append(w)
        self.max_level = max(self.levels) if self.levels else 0
        self.slices = offsets_up_to(self.rank, depth)
        self._d_cache: dict[tuple[int, Offset], list] = {}

    # --- layout ---------------------------------------------------------------

    def components(self, n: int):
        return self.levels.get(n, [])

    def layout(self, n: int, nu: Offset):
        """(element, local dim) for each level-n component meeting slice nu."""
        out = []
        for w in self.components(n):
            gamma = _offset_sub(nu, self.orbit[w.matrix])
            out.append((w, 0 if gamma is None else self.engine.dim(gamma)))
        return out

    def slice_dim(self, n: int, nu: Offset) -> int:
        return sum(d for _, d in self.layout(n, nu))

    def block(self, w, wp, nu: Offset):
        return self.family.block(w, wp, nu)

    def d_matrix(self, n: int, nu: Offset, sign_flips=(), perturbations=()):
        """Differential C_n -> C_{n-1} restricted to the slice at offset nu.

        sign_flips: arrows (pairs of elements) whose sign is negated.
        perturbations: (w, wp, row, col, delta) single-entry block edits.
        Mutated matrices are never cached.
        """
        nu = tuple(nu)
        mutate = bool(sign_flips) or bool(perturbations)
        key = (n, nu)
        if not mutate and key in self._d_cache:
            return self._d_cache[key]
        zero = self.engine.zero
        src = self.layout(n, nu)
        tgt = self.layout(n - 1, nu)
        nrows = sum(d for _, d in tgt)
        ncols = sum(d for _, d in src)
        mat = _zero_matrix(nrows, ncols, zero)
        flips = {(w.matrix, wp.matrix) for (w, wp) in sign_flips}
        edits: dict[tuple, list] = {}
        for (w, wp, r, c, delta) in perturbations:
            edits.setdefault((w.matrix, wp.matrix), []).append((r, c, delta))
        col0 = 0
        for w, dsrc in src:
            if dsrc:
                row0 = 0
                for wp, dtgt in tgt:
                    if dtgt and wp in self.table.covers(w):
                        s = self.signs[(w.matrix, wp.matrix)]
                        if (w.matrix, wp.matrix) in flips:
                            s = -s
                        blk = self.block(w, wp, nu)
                        for r, c, delta in edits.get((w.matrix, wp.matrix), ()):
                            blk = [row[:] for row in blk]
                            blk[r][c] = blk[r][c] + delta
                        for r in range(dtgt):
                            row = blk[r]
                            out = mat[row0 + r]
                            for c in range(dsrc):
                                if row[c]:
                                    out[col0 + c] = s * row[c]
                    row0 += dtgt
            col0 += dsrc
        if not mutate:
            self._d_cache[key] = mat
        return mat

    # --- verification -----------------------------------------------------------

    def verify_d_squared(self, jobs: int = 1, sign_flips=(), perturbations=(), slices=None):
        """Exact check that consecutive differentials compose to zero on every
        trusted slice; returns the list of violations (empty means pass)."""
        slices = self.slices if slices is None else slices
        zero = self.engine.zero

        def check(nu):
            bad = []
            for n in range(2, self.max_level + 1):
                dn = self.d_matrix(n, nu, sign_flips, perturbations)
                dn1 = self.d_matrix(n - 1, nu, sign_flips, perturbations)
                if not dn or not dn1 or not dn[0]:
                    continue
                prod = linalg.mat_mul(dn1, dn, zero)
                if not linalg.mat_is_zero(prod):
                    bad.append((n, nu))
            return bad

        out = []
        for chunk in _run([lambda nu=nu: check(nu) for nu in slices], jobs):
            out.extend(chunk)
        return out

    def degree0_targets(self) -> dict[Offset, int]:
        """Independent dimensions of the integrable quotient per slice."""
        algebra = getattr(self.engine, "algebra", None)
        if not isinstance(algebra, GradedNilpotent):
            algebra = build_nilpotent(self.A, self.depth)
        return freudenthal(self.A, algebra, self.mu, self.depth).coeffs

    def homology(self, jobs: int = 1, sign_flips=(), perturbations=(), slices=None) -> HomologyReport:
        """Rank-based homology on every trusted slice.

        Degree n >= 1: dim ker d_n - rank d_{n+1}.  Degree 0: the identity
        dim C_0 - rank d_1 = dim V(mu) against the Freudenthal oracle.
        """
        slices = self.slices if slices is None else slices
        targets = self.degree0_targets()

        def check(nu):
            ranks = {}
            for n in range(1, self.max_level + 1):
                mat = self.d_matrix(n, nu, sign_flips, perturbations)
                ranks[n] = linalg.rank(mat) if mat and mat[0] else 0
            findings = []
            tbl = []
            for n in range(1, self.max_level + 1):
                dim_n = self.slice_dim(n, nu)
                h = dim_n - ranks[n] - ranks.get(n + 1, 0)
                tbl.append((n, nu, h))
                if h:
                    findings.append((n, nu, h))
            got = self.slice_dim(0, nu) - ranks.get(1, 0)
            expected = targets.get(nu, 0)
            mism = [(nu, got, expected)] if got != expected else []
            return findings, mism, tbl

        report = HomologyReport(trusted=list(slices))
        for findings, mism, tbl in _run([lambda nu=nu: check(nu) for nu in slices], jobs):
            report.findings.extend(findings)
            report.degree0_mismatches.extend(mism)
            report.table.extend(tbl)
        return report

    def minus_part_injective(self, i: int) -> bool:
        """Restriction of each differential to the components with a left
        descent at i has full column rank on every trusted slice."""
        for nu in self.slices:
            for n in range(1, self.max_level + 1):
                src = self.layout(n, nu)
                cols = []
                col0 = 0
                for w, d in src:
                    if d and not self.table.group.left_ascent(w, i):
                        cols.extend(range(col0, col0 + d))
                    col0 += d
                if not cols:
                    continue
                mat = self.d_matrix(n, nu)
                sub = [[row[c] for c in cols] for row in mat]
                if linalg.rank(sub) != len(cols):
                    return False
        return True

    def to_dot(self) -> str:
        """Block structure of the complex as a GraphViz digraph."""
        lines = ["digraph complex {", '  rankdir="LR";']
        for n in sorted(self.levels, reverse=True):
            for w in self.levels[n]:
                name = "".join(map(str, w.word)) or "e"
                beta = self.orbit[w.matrix]
                lines.append(f'  "{name}" [label="{name}\\n{list(beta)}"];')
        for n in range(1, self.max_level + 1):
            for w in self.components(n):
                for wp in self.table.covers(w):
                    if wp in self.active:
                        a = "".join(map(str, w.word)) or "e"
                        b = "".join(map(str, wp.word)) or "e"
                        s = "+" if self.signs[(w.matrix, wp.matrix)] == 1 else "-"
                        lines.append(f'  "{a}" -> "{b}" [label="{s}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


class _KernelSpace:
    """Row-reduced basis of a subspace of one slice, with projection to the
    complementary (non-pivot) coordinates."""

    def __init__(self, span_columns, dim_slice: int, one):
        self.dim_slice = dim_slice
        self.one = one
        self.zero = one - one
        rows = [list(col) for col in span_columns]
        red, pivots = linalg.rref(rows, dim_slice) if rows else ([], [])
        self.rows = [red[k] for k in range(len(pivots))]
        self.pivots = pivots
        self.nonpivots = [c for c in range(dim_slice) if c not in set(pivots)]

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def quotient_dim(self) -> int:
        return self.dim_slice - self.dim

    def coords(self, vec):
        """Coordinates of vec in the reduced basis, or None if outside."""
        v = list(vec)
        out = []
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            out.append(c)
            if c:
                for k in range(self.dim_slice):
                    if row[k]:
                        v[k] = v[k] - c * row[k]
        if any(v):
            return None
        return out

    def project(self, vec):
        """Quotient coordinates: reduce modulo the subspace, read the
        non-pivot entries."""
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for k in range(self.dim_slice):
                    if row[k]:
                        v[k] = v[k] - c * row[k]
        return [v[c] for c in self.nonpivots]

    def lift_column(self, qcol: int):
        vec = [self.zero] * self.dim_slice
        vec[self.nonpivots[qcol]] = self.one
        return vec


@dataclass
class ParabolicReports:
    containment_violations: list
    quotient_d2_violations: list
    quotient_homology: HomologyReport

    @property
    def exact(self) -> bool:
        return (
            not self.containment_violations
            and not self.quotient_d2_violations
            and self.quotient_homology.exact
        )


@dataclass
class FiltrationReport:
    upward_violations: list
    character_mismatches: list
    graded_homology_findings: list

    @property
    def exact(self) -> bool:
        return not (
            self.upward_violations
            or self.character_mismatches
            or self.graded_homology_findings
        )

    def to_json(self) -> dict:
        return {
            "upward_blocks_zero": not self.upward_violations,
            "character_match": not self.character_mismatches,
            "character_mismatches": [
                {"coset": list(rep), "n": n, "offset": list(nu), "got": g, "expected": e}
                for rep, n, nu, g, e in self.character_mismatches
            ],
            "graded_homology": [
                {"coset": list(rep), "n": n, "offset": list(nu), "dim": d}
                for rep, n, nu, d in self.graded_homology_findings
            ],
        }


class ParabolicBGGComplex:
    """Quotient complex over minimal coset representatives, plus the kernel
    complex and its coset-length filtration."""

    def __init__(self, base: BGGComplex, S):
        self.base = base
        self.S = tuple(sorted(set(S)))
        if not all(0 <= i < base.rank for i in self.S):
            raise ValueError("S out of range")
        self.engine = base.engine
        self.A = base.A
        self.mu = base.mu
        self.depth = base.depth
        reps = {w.matrix for w in base.table.minimal_coset_reps(self.S)}
        self.rep_levels: dict[int, list] = {}
        for w in base.active:
            if w.matrix in reps:
                self.rep_levels.setdefault(w.length, []).append(w)
        self.in_reps = reps
        self.max_level = base.max_level
        self._kernels: dict[tuple, _KernelSpace] = {}
        self._decomp: dict = {}

    # --- kernels of the projections ------------------------------------------

    def decompose(self, w):
        if w.matrix not in self._decomp:
            self._decomp[w.matrix] = self.base.table.parabolic_decompose(w, self.S)
        return self._decomp[w.matrix]

    def kernel(self, w, nu: Offset) -> _KernelSpace:
        """Kernel of the projection of the w-component at slice nu: the span
        of the descendants of f_i^(<w.mu, alpha_i^vee>+1) for i in S."""
        nu = tuple(nu)
        key = (w.matrix, nu)
        if key in self._kernels:
            return self._kernels[key]
        engine = self.engine
        gamma = _offset_sub(nu, self.base.orbit[w.matrix])
        if gamma is None:
            ker = _KernelSpace([], 0, engine.one)
        else:
            top = Weight(self.mu.labels, self.base.orbit[w.matrix])
            cols = []
            for g0, vec in _power_generators(engine, top, self.S):
                rest = _offset_sub(gamma, g0)
                if rest is None:
                    continue
                desc = Descender(engine, g0, vec)
                for m in engine.words(rest):
                    cols.append(desc.column(m))
            ker = _KernelSpace(cols, engine.dim(gamma), engine.one)
        self._kernels[key] = ker
        return ker

    # --- quotient complex -------------------------------------------------------

    def quotient_layout(self, n: int, nu: Offset):
        out = []
        for w in self.rep_levels.get(n, []):
            gamma = _offset_sub(nu, self.base.orbit[w.matrix])
            if gamma is None:
                out.append((w, 0))
            else:
                out.append((w, self.kernel(w, nu).quotient_dim))
        return out

    def quotient_dim(self, n: int, nu: Offset) -> int:
        return sum(d for _, d in self.quotient_layout(n, nu))

    def verify_containment(self):
        """Exact check that the differential maps kernels into kernels.

        Covers both kinds of kernel components: whole modules off the coset
        representatives, and the singular-descendant spans on them.
        """
        violations = []
        for nu in self.base.slices:
            for n in range(1, self.base.max_level + 1):
                for w in self.base.components(n):
                    gamma = _offset_sub(nu, self.base.orbit[w.matrix])
                    if gamma is None or not self.engine.dim(gamma):
                        continue
                    if w.matrix in self.in_reps:
                        kw = self.kernel(w, nu)
                        if not kw.dim:
                            continue
                        source_vectors = [list(r) for r in kw.rows]
                    else:
                        source_vectors = None  # whole component
                    for wp in self.base.table.covers(w):
                        if wp not in self.base.active or wp.matrix not in self.in_reps:
                            continue
                        blk = self.base.block(w, wp, nu)
                        if not blk or not blk[0]:
                            continue
                        kwp = self.kernel(wp, nu)
                        if source_vectors is None:
                            images = [
                                [blk[r][c] for r in range(len(blk))]
                                for c in range(len(blk[0]))
                            ]
                        else:
                            images = []
                            for vec in source_vectors:
                                images.append(
                                    [
                                        sum(
                                            (blk[r][c] * vec[c] for c in range(len(vec)) if vec[c]),
                                            self.engine.zero,
                                        )
                                        for r in range(len(blk))
                                    ]
                                )
                        for img in images:
                            if any(img) and kwp.coords(img) is None:
                                violations.append((n, nu, w.word, wp.word))
        return violations

    def quotient_d_matrix(self, n: int, nu: Offset):
        nu = tuple(nu)
        zero = self.engine.zero
        src = self.quotient_layout(n, nu)
        tgt = self.quotient_layout(n - 1, nu)
        nrows = sum(d for _, d in tgt)
        ncols = sum(d for _, d in src)
        mat = _zero_matrix(nrows, ncols, zero)
        col0 = 0
        for w, dsrc in src:
            if dsrc:
                kw = self.kernel(w, nu)
                row0 = 0
                for wp, dtgt in tgt:
                    if dtgt and wp in self.base.table.covers(w):
                        s = self.base.signs[(w.matrix, wp.matrix)]
                        blk = self.base.block(w, wp, nu)
                        kwp = self.kernel(wp, nu)
                        for qc in range(dsrc):
                            lift = kw.lift_column(qc)
                            img = [
                                sum(
                                    (blk[r][c] * lift[c] for c in range(len(lift)) if lift[c]),
                                    zero,
                                )
                                for r in range(len(blk))
                            ]
                            for r, val in enumerate(kwp.project(img)):
                                if val:
                                    mat[row0 + r][col0 + qc] = s * val
                    row0 += dtgt
            col0 += dsrc
        return mat

    def verify_quotient_d_squared(self, jobs: int = 1):
        zero = self.engine.zero
        bad = []

        def check(nu):
            out = []
            for n in range(2, self.base.max_level + 1):
                dn = self.quotient_d_matrix(n, nu)
                dn1 = self.quotient_d_matrix(n - 1, nu)
                if dn and dn1 and dn[0] and not linalg.mat_is_zero(linalg.mat_mul(dn1, dn, zero)):
                    out.append((n, nu))
            return out

        for chunk in _run([lambda nu=nu: check(nu) for nu in self.base.slices], jobs):
            bad.extend(chunk)
        return bad

    def quotient_homology(self, jobs: int = 1) -> HomologyReport:
        targets = self.base.degree0_targets()

        def check(nu):
            ranks = {}
            for n in range(1, self.base.max_level + 1):
                mat = self.quotient_d_matrix(n, nu)
                ranks[n] = linalg.rank(mat) if mat and mat[0] else 0
            findings = []
            tbl = []
            for n in range(1, self.base.max_level + 1):
                h = self.quotient_dim(n, nu) - ranks[n] - ranks.get(n + 1, 0)
                tbl.append((n, nu, h))
                if h:
                    findings.append((n, nu, h))
            got = self.quotient_dim(0, nu) - ranks.get(1, 0)
            expected = targets.get(nu, 0)
            mism = [(nu, got, expected)] if got != expected else []
            return findings, mism, tbl

        report = HomologyReport(trusted=list(self.base.slices))
        for findings, mism, tbl in _run(
            [lambda nu=nu: check(nu) for nu in self.base.slices], jobs
        ):
            report.findings.extend(findings)
            report.degree0_mismatches.extend(mism)
            report.table.extend(tbl)
        return report

    def verify(self, jobs: int = 1) -> ParabolicReports:
        containment = self.verify_containment()
        if containment:
            raise InvariantViolationError(
                f"differential leaves the projection kernel: {containment[:3]}"
            )
        d2 = self.verify_quotient_d_squared(jobs)
        hom = self.quotient_homology(jobs)
        return ParabolicReports(containment, d2, hom)

    # --- kernel complex and filtration -----------------------------------------

    def kernel_layout(self, n: int, nu: Offset):
        """(element, dim of its kernel-complex component) per level-n element."""
        out = []
        for w in self.base.components(n):
            gamma = _offset_sub(nu, self.base.orbit[w.matrix])
            if gamma is None:
                out.append((w, 0))
            elif w.matrix in self.in_reps:
                out.append((w, self.kernel(w, nu).dim))
            else:
                out.append((w, self.engine.dim(gamma)))
        return out

    def kernel_component_basis(self, w, nu: Offset):
        """Columns (in slice coordinates) of the component's chosen basis."""
        gamma = _offset_sub(nu, self.base.orbit[w.matrix])
        if gamma is None:
            return []
        if w.matrix in self.in_reps:
            return [list(r) for r in self.kernel(w, nu).rows]
        dim = self.engine.dim(gamma)
        cols = []
        for k in range(dim):
            v = [self.engine.zero] * dim
            v[k] = self.engine.one
            cols.append(v)
        return cols

    def kernel_block(self, w, wp, nu: Offset):
        """Differential block of the kernel complex in component coordinates,
        or None when the image fails to lie in the target component."""
        blk = self.base.block(w, wp, nu)
        basis = self.kernel_component_basis(w, nu)
        if not blk or not basis:
            return []
        images = []
        for vec in basis:
            images.append(
                [
                    sum((blk[r][c] * vec[c] for c in range(len(vec)) if vec[c]), self.engine.zero)
                    for r in range(len(blk))
                ]
            )
        if wp.matrix in self.in_reps:
            kwp = self.kernel(wp, nu)
            cols = []
            for img in images:
                co = kwp.coords(img)
                if co is None:
                    return None
                cols.append(co)
            nrows = kwp.dim
        else:
            cols = images
            nrows = len(blk)
        return [[cols[c][r] for c in range(len(cols))] for r in range(nrows)]

    def filtration_level(self, w) -> int:
        return self.decompose(w)[1].length

    def filtration_check(self, jobs: int = 1) -> FiltrationReport:
        """Three exact checks on the kernel complex's coset-length filtration:
        no differential block climbs the filtration, each graded piece has the
        product character (complement partitions times a Levi term), and each
        graded piece is exact on trusted slices."""
        upward = []
        for nu in self.base.slices:
            for n in range(1, self.base.max_level + 1):
                for w in self.base.components(n):
                    for wp in self.base.table.covers(w):
                        if wp not in self.base.active:
                            continue
                        if self.filtration_level(wp) > self.filtration_level(w):
                            blk = self.kernel_block(w, wp, nu)
                            if blk is None or not linalg.mat_is_zero(blk):
                                upward.append((n, nu, w.word, wp.word))
        char_mism = self._graded_character_check()
        graded_hom = self._graded_homology(jobs)
        return FiltrationReport(upward, char_mism, graded_hom)

    def _graded_members(self, rep):
        """Elements w = w_S * rep grouped by l(w_S), within the active set."""
        groups: dict[int, list] = {}
        for w in self.base.active:
            ws, wS = self.decompose(w)
            if wS == rep:
                groups.setdefault(ws.length, []).append(w)
        return groups

    def _graded_character_check(self):
        """Graded piece dimensions against ch U(u^-_complement) * Levi term."""
        algebra = getattr(self.engine, "algebra", None)
        if not isinstance(algebra, GradedNilpotent):
            algebra = build_nilpotent(self.A, self.depth)
        comp_roots = [
            b
            for b, _ in algebra.root_list()
            if not {i for i, c in enumerate(b) if c} <= set(self.S)
        ]
        levi_roots = [
            b
            for b, _ in algebra.root_list()
            if {i for i, c in enumerate(b) if c} <= set(self.S)
        ]
        u_co = u_character(algebra, comp_roots, self.mu, self.depth).coeffs
        mism = []
        for k in sorted(self.rep_levels):
            for rep in self.rep_levels[k]:
                groups = self._graded_members(rep)
                beta_rep = self.base.orbit[rep.matrix]
                top_rep = Weight(self.mu.labels, beta_rep)
                local_depth = self.depth - sum(beta_rep)
                levi_verma_co = u_character(algebra, levi_roots, top_rep, local_depth).coeffs
                levi_m_co = levi_freudenthal(self.A, self.S, top_rep, local_depth).coeffs
                for n in range(k, self.base.max_level + 1):
                    j = n - k
                    for nu in self.base.slices:
                        gamma_rep = _offset_sub(nu, beta_rep)
                        if j == 0:
                            got = self.kernel(rep, nu).dim
                            if gamma_rep is None:
                                expected = 0
                            else:
                                bottom = {
                                    b: levi_verma_co.get(b, 0) - levi_m_co.get(b, 0)
                                    for b in levi_verma_co
                                }
                                expected = convolve(
                                    self.A.rank, local_depth, u_co, bottom
                                ).get(gamma_rep, 0)
                        else:
                            got = 0
                            for w in groups.get(j, []):
                                g = _offset_sub(nu, self.base.orbit[w.matrix])
                                if g is not None:
                                    got += self.engine.dim(g)
                            if gamma_rep is None:
                                expected = 0
                            else:
                                expected = 0
                                for w in groups.get(j, []):
                                    beta_ws = _offset_sub(
                                        self.base.orbit[w.matrix], beta_rep
                                    )
                                    if beta_ws is None:
                                        continue
                                    shifted = {
                                        tuple(x + y for x, y in zip(b, beta_ws)): v
                                        for b, v in levi_verma_co.items()
                                    }
                                    expected += convolve(
                                        self.A.rank, local_depth, u_co, shifted
                                    ).get(gamma_rep, 0)
                        if got != expected:
                            mism.append((rep.word, n, nu, got, expected))
        return mism

    def _graded_homology(self, jobs: int = 1):
        """Homology of each graded piece; expected zero everywhere trusted."""
        findings = []
        for k in sorted(self.rep_levels):
            for rep in self.rep_levels[k]:
                groups = self._graded_members(rep)

                def layout(j, nu):
                    if j == 0:
                        return [(rep, self.kernel(rep, nu).dim)]
                    out = []
                    for w in groups.get(j, []):
                        g = _offset_sub(nu, self.base.orbit[w.matrix])
                        out.append((w, 0 if g is None else self.engine.dim(g)))
                    return out

                def graded_d(j, nu):
                    zero = self.engine.zero
                    src = layout(j, nu)
                    tgt = layout(j - 1, nu)
                    nrows = sum(d for _, d in tgt)
                    ncols = sum(d for _, d in src)
                    mat = _zero_matrix(nrows, ncols, zero)
                    col0 = 0
                    for w, dsrc in src:
                        if dsrc:
                            row0 = 0
                            for wp, dtgt in tgt:
                                if dtgt and wp in self.base.table.covers(w):
                                    blk = (
                                        self.kernel_block(w, wp, nu)
                                        if j == 1
                                        else self.base.block(w, wp, nu)
                                    )
                                    if blk is None:
                                        raise InvariantViolationError(
                                            "graded image escapes the bottom kernel"
                                        )
                                    s = self.base.signs[(w.matrix, wp.matrix)]
                                    for r in range(dtgt):
                                        for c in range(dsrc):
                                            if blk[r][c]:
                                                mat[row0 + r][col0 + c] = s * blk[r][c]
                                row0 += dtgt
                        col0 += dsrc
                    return mat

                max_j = max(groups) if groups else 0

                def check(nu, rep=rep, groups=groups, layout=layout, graded_d=graded_d, max_j=max_j):
                    out = []
                    ranks = {}
                    for j in range(1, max_j + 1):
                        mat = graded_d(j, nu)
                        ranks[j] = linalg.rank(mat) if mat and mat[0] else 0
                    for j in range(0, max_j + 1):
                        dim_j = sum(d for _, d in layout(j, nu))
                        if j == 0:
                            h = dim_j - ranks.get(1, 0)
                        else:
                            h = dim_j - ranks[j] - ranks.get(j + 1, 0)
                        if h:
                            out.append((rep.word, j, nu, h))
                    return out

                for chunk in _run(
                    [lambda nu=nu: check(nu) for nu in self.base.slices], jobs
                ):
                    findings.extend(chunk)
        return findings


def build_bgg(A: GCM, mu: Weight, depth: int, engine=None, *, max_length=None) -> BGGComplex:
    """Assemble the signed complex for a dominant base weight at a cutoff."""
    if engine is None:
        engine = VermaEngine(build_nilpotent(A, depth))
    return BGGComplex(A, mu, depth, engine, max_length=max_length)


def build_bggl(A: GCM, mu: Weight, S, depth: int, engine=None, *, max_length=None) -> ParabolicBGGComplex:
    """Assemble the quotient complex over minimal coset representatives."""
    base = build_bgg(A, mu, depth, engine, max_length=max_length)
    return ParabolicBGGComplex(base, S)
