"""Truncated formal characters and independent dimension oracles.

Coefficients are stored against a top weight, indexed by the nonnegative
root-lattice offset below it.  The two oracles here are deliberately
independent of the module-theoretic pipeline: Verma characters come from the
multiset-partition generating function over the root multiplicities, and
integrable-module dimensions come from the Freudenthal recursion with the
symmetrizer-induced bilinear form.  The alternating-sum and denominator
checks then compare pipelines that share nothing but the root multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import (
    GCM,
    Weight,
    is_dominant,
    offsets_up_to,
    pairing,
    symmetrizer,
    weight,
)
from .errors import InvariantViolationError
from .nilpotent import GradedNilpotent
from .weyl import enumerate_for_depth

Offset = tuple[int, ...]


@dataclass(frozen=True)
class TruncatedCharacter:
    top: Weight
    depth: int
    coeffs: dict  # Offset -> int

    def coeff(self, beta: Offset) -> int:
        return self.coeffs.get(tuple(beta), 0)

    def to_json(self) -> dict:
        items = sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        return {
            "top": self.top.to_json(),
            "depth": self.depth,
            "coeffs": [
                {"offset": list(beta), "value": value} for beta, value in items if value
            ],
        }


def _root_degrees(algebra: GradedNilpotent, roots=None) -> list[Offset]:
    """Root offsets repeated with multiplicity, optionally restricted."""
    chosen = None if roots is None else {tuple(b) for b in roots}
    out = []
    for beta, mult in algebra.root_list():
        if chosen is None or beta in chosen:
            out.extend([beta] * mult)
    return out


def partition_coeffs(rank: int, depth: int, degrees) -> dict:
    """Number of multiset partitions of each offset into the given degrees.

    Expands prod 1/(1 - x^d) truncated at the height cutoff by the usual
    ascending dynamic program.
    """
    offsets = offsets_up_to(rank, depth)
    coeffs = {beta: 0 for beta in offsets}
    coeffs[(0,) * rank] = 1
    for d in degrees:
        for beta in offsets:
            prev = tuple(x - y for x, y in zip(beta, d))
            if all(x >= 0 for x in prev):
                coeffs[beta] += coeffs[prev]
    return coeffs


def verma_character(algebra: GradedNilpotent, lam: Weight, depth: int) -> TruncatedCharacter:
    """Graded dimensions of the full lowering-operator module below lam."""
    if depth > algebra.depth and algebra.terminated_height is None:
        raise InvariantViolationError("algebra cutoff below requested character depth")
    co = partition_coeffs(algebra.rank, depth, _root_degrees(algebra))
    return TruncatedCharacter(lam, depth, co)


def u_character(algebra: GradedNilpotent, roots, top: Weight, depth: int) -> TruncatedCharacter:
    """Character of the enveloping algebra over a chosen subset of roots."""
    co = partition_coeffs(algebra.rank, depth, _root_degrees(algebra, roots))
    return TruncatedCharacter(top, depth, co)


def freudenthal(A: GCM, algebra: GradedNilpotent, mu: Weight, depth: int) -> TruncatedCharacter:
    """Weight multiplicities of the maximal integrable module of highest
    weight mu by the Freudenthal recursion.

    Requires a symmetrizer; the induced form is (alpha_i, alpha_j) = d_i a_ij.
    A vanishing denominator forces a vanishing numerator (checked) and marks
    a non-weight.
    """
    if not is_dominant(A, mu):
        raise ValueError("freudenthal requires a dominant base weight")
    d = symmetrizer(A)
    rank = A.rank

    def form_with_root(w: Weight, gamma: Offset) -> int:
        return sum(gamma[j] * d[j] * pairing(A, w, j) for j in range(rank))

    roots = algebra.root_list()
    offsets = offsets_up_to(rank, depth)
    mult: dict[Offset, int] = {}
    for beta in offsets:
        if sum(beta) == 0:
            mult[beta] = 1
            continue
        numer = Fraction(0)
        for gamma, mg in roots:
            k = 1
            while True:
                prev = tuple(x - k * y for x, y in zip(beta, gamma))
                if any(x < 0 for x in prev):
                    break
                m_prev = mult.get(prev, 0)
                if m_prev:
                    nu_k = Weight(mu.labels, prev)
                    numer += 2 * mg * m_prev * form_with_root(nu_k, gamma)
                k += 1
        mu_rho = weight(tuple(x + 1 for x in mu.labels))
        denom = 2 * form_with_root(mu_rho, beta) - sum(
            beta[j] * d[j] * sum(beta[k] * A.entries[j][k] for k in range(rank))
            for j in range(rank)
        )
        if denom == 0:
            if numer != 0:
                raise InvariantViolationError("zero denominator with nonzero numerator")
            mult[beta] = 0
            continue
        value = Fraction(numer, denom)
        if value.denominator != 1 or value < 0:
            raise InvariantViolationError(f"non-integral multiplicity at {beta}")
        mult[beta] = int(value)
    return TruncatedCharacter(mu, depth, mult)


def levi_freudenthal(A: GCM, S, top: Weight, depth: int) -> TruncatedCharacter:
    """Freudenthal multiplicities for the Levi factor on S, embedded back
    into full-rank offsets (supported on S)."""
    S = sorted(set(S))
    sub = A.submatrix(S)
    sub_labels = tuple(pairing(A, top, i) for i in S)
    sub_alg = GradedNilpotent(sub, depth)
    sub_char = freudenthal(sub, sub_alg, weight(sub_labels), depth)
    coeffs: dict[Offset, int] = {}
    for sub_beta, value in sub_char.coeffs.items():
        if not value:
            continue
        beta = [0] * A.rank
        for pos, i in enumerate(S):
            beta[i] = sub_beta[pos]
        coeffs[tuple(beta)] = value
    return TruncatedCharacter(top, depth, coeffs)


def convolve(rank: int, depth: int, a: dict, b: dict) -> dict:
    offsets = offsets_up_to(rank, depth)
    out = {}
    items = [(k, v) for k, v in a.items() if v]
    for beta in offsets:
        total = 0
        for gamma, va in items:
            rest = tuple(x - y for x, y in zip(beta, gamma))
            if all(x >= 0 for x in rest):
                total += va * b.get(rest, 0)
        if total:
            out[beta] = total
    return out


@dataclass(frozen=True)
class EulerReport:
    ok: bool
    mismatches: tuple
    alternating: dict
    target: dict

    def to_json(self) -> dict:
        return {
            "match": self.ok,
            "mismatches": [
                {"offset": list(beta), "alternating": a, "integrable": b}
                for beta, a, b in self.mismatches
            ],
        }


def euler_check(A: GCM, algebra: GradedNilpotent, mu: Weight, S, depth: int) -> EulerReport:
    """Alternating sum of the complex's level characters against the
    Freudenthal dimensions, per offset on the whole trusted ball.

    Levels are Verma characters for empty S and generalized Verma characters
    (complement-partition convolved with Levi multiplicities) otherwise; both
    sides are computed without touching any action matrix.
    """
    S = tuple(sorted(set(S)))
    table, offsets = enumerate_for_depth(A, mu, depth)
    rank = A.rank
    alternating: dict[Offset, int] = {}
    if S:
        reps = table.minimal_coset_reps(S)
        split_roots = [
            beta for beta, _ in algebra.root_list()
            if not {i for i, c in enumerate(beta) if c} <= set(S)
        ]
        u_co = partition_coeffs(rank, depth, _root_degrees(algebra, split_roots))
        members = reps
    else:
        u_co = None
        members = list(table.elements())
    for w in members:
        beta_w = offsets[w.matrix]
        if sum(beta_w) > depth:
            continue
        top = Weight(mu.labels, beta_w)
        local_depth = depth - sum(beta_w)
        if S:
            levi = levi_freudenthal(A, S, top, local_depth)
            ch = convolve(rank, local_depth, u_co, levi.coeffs)
        else:
            ch = partition_coeffs(rank, local_depth, _root_degrees(algebra))
        sign = -1 if w.length % 2 else 1
        for gamma, value in ch.items():
            if not value:
                continue
            beta = tuple(x + y for x, y in zip(beta_w, gamma))
            if sum(beta) <= depth:
                alternating[beta] = alternating.get(beta, 0) + sign * value
    target = freudenthal(A, algebra, mu, depth).coeffs
    mismatches = []
    for beta in offsets_up_to(rank, depth):
        a = alternating.get(beta, 0)
        b = target.get(beta, 0)
        if a != b:
            mismatches.append((beta, a, b))
    return EulerReport(not mismatches, tuple(mismatches), alternating, target)


def denominator_identity_check(A: GCM, algebra: GradedNilpotent, depth: int) -> EulerReport:
    """Alternating orbit sum of the zero weight against the root-multiplicity
    product, coefficient by coefficient up to the cutoff.

    The left side only sees the Weyl group; the right side only sees the
    Serre-presentation multiplicities.  Agreement pins both down at once.
    """
    rank = A.rank
    zero = weight((0,) * rank)
    table, offsets = enumerate_for_depth(A, zero, depth)
    lhs: dict[Offset, int] = {}
    for w in table.elements():
        beta = offsets[w.matrix]
        if sum(beta) <= depth:
            lhs[beta] = lhs.get(beta, 0) + (-1 if w.length % 2 else 1)
    rhs = {(0,) * rank: 1}
    all_offsets = offsets_up_to(rank, depth)
    for d in _root_degrees(algebra):
        nxt = {}
        for beta in all_offsets:
            val = rhs.get(beta, 0)
            prev = tuple(x - y for x, y in zip(beta, d))
            if all(x >= 0 for x in prev):
                val -= rhs.get(prev, 0)
            if val:
                nxt[beta] = val
        rhs = nxt
    mismatches = []
    for beta in all_offsets:
        a = lhs.get(beta, 0)
        b = rhs.get(beta, 0)
        if a != b:
            mismatches.append((beta, a, b))
    return EulerReport(not mismatches, tuple(mismatches), lhs, rhs)
