"""Exact scalars for the quantum engine: Z[q]-fraction arithmetic.

A scalar is a ratio of integer-coefficient polynomials in q, kept in a
canonical form (numerator and denominator coprime, jointly content-reduced,
denominator with positive leading coefficient), so equality and hashing are
structural and zero testing is just emptiness of the numerator.  Negative
powers of q live in the denominator.

The numeric mode replaces all of this with plain Fractions at a fixed
rational q0 with |q0| not 0 or 1; such q0 are never roots of unity, so the
quantum integers appearing in the commutation formulas never vanish
spuriously.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Poly = tuple[int, ...]  # coefficients, constant term first, no trailing zeros

P_ZERO: Poly = ()
P_ONE: Poly = (1,)


def _trim(c: list[int]) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def p_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def p_neg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return P_ZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def p_content(a: Poly) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g or 1


def p_primitive(a: Poly) -> Poly:
    if not a:
        return a
    c = p_content(a)
    if a[-1] < 0:
        c = -c
    return tuple(x // c for x in a)


def _pseudo_rem(u: Poly, v: Poly) -> Poly:
    """Pseudo-remainder of u by v over the integers."""
    r = list(u)
    n = len(v) - 1
    vlc = v[-1]
    while len(r) - 1 >= n and any(r):
        d = len(r) - 1 - n
        lead = r[-1]
        r = [vlc * c for c in r]
        for i, c in enumerate(v):
            r[d + i] -= lead * c
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def p_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd with positive leading coefficient (primitive PRS)."""
    a, b = p_primitive(a), p_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, p_primitive(_pseudo_rem(a, b))
    return a if not a or a[-1] > 0 else p_neg(a)


def p_div_exact(a: Poly, b: Poly) -> Poly:
    """a / b when the division is exact over the integers."""
    if not a:
        return P_ZERO
    r = list(a)
    out = [0] * (len(a) - len(b) + 1)
    blc = b[-1]
    for k in range(len(out) - 1, -1, -1):
        num = r[k + len(b) - 1]
        if num % blc:
            raise ArithmeticError("inexact polynomial division")
        q = num // blc
        out[k] = q
        if q:
            for i, c in enumerate(b):
                r[k + i] -= q * c
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


def p_eval(a: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def p_str(a: Poly) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        if k == 0:
            term = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else str(abs(c)) + "*"
            term = f"{mag}q^{k}" if k > 1 else f"{mag}q"
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append(("- " if c < 0 else "+ ") + term)
    return " ".join(parts)


class QScalar:
    """Canonical fraction of integer polynomials in q."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = P_ONE, _canonical: bool = False):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if _canonical:
            self.num = num
            self.den = den
            return
        if not num:
            self.num = P_ZERO
            self.den = P_ONE
            return
        g = p_gcd(num, den)
        if len(g) > 1 or g[0] != 1:
            num = p_div_exact(num, g)
            den = p_div_exact(den, g)
        c = gcd(p_content(num), p_content(den))
        if den[-1] < 0:
            c = -c
        if c != 1:
            num = tuple(x // c for x in num)
            den = tuple(x // c for x in den)
        self.num = num
        self.den = den

    # --- constructors -------------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "QScalar":
        return QScalar((n,) if n else P_ZERO, P_ONE, _canonical=True)

    @staticmethod
    def q_power(k: int) -> "QScalar":
        if k >= 0:
            return QScalar((0,) * k + (1,), P_ONE, _canonical=True)
        return QScalar(P_ONE, (0,) * (-k) + (1,), _canonical=True)

    # --- arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, QScalar):
            return x
        if isinstance(x, int):
            return QScalar.from_int(x)
        return NotImplemented

    def __add__(self, other):
        other = QScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        return QScalar(
            p_add(p_mul(self.num, other.den), p_mul(other.num, self.den)),
            p_mul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return QScalar(p_neg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        other = QScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = QScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return QScalar.from_int(0)
        # cross-cancel first to keep the final gcd small
        g1 = p_gcd(self.num, other.den)
        g2 = p_gcd(other.num, self.den)
        n1 = p_div_exact(self.num, g1) if g1 != P_ONE else self.num
        d2 = p_div_exact(other.den, g1) if g1 != P_ONE else other.den
        n2 = p_div_exact(other.num, g2) if g2 != P_ONE else other.num
        d1 = p_div_exact(self.den, g2) if g2 != P_ONE else self.den
        return QScalar(p_mul(n1, n2), p_mul(d1, d2))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QScalar._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero scalar")
        return self * QScalar(other.den, other.num)

    def __rtruediv__(self, other):
        other = QScalar._coerce(other)
        return other / self

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QScalar.from_int(other)
        return (
            isinstance(other, QScalar)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, q0: Fraction) -> Fraction:
        return p_eval(self.num, q0) / p_eval(self.den, q0)

    def __str__(self):
        if self.den == P_ONE:
            return p_str(self.num)
        return f"({p_str(self.num)})/({p_str(self.den)})"

    def __repr__(self):
        return f"QScalar({self})"


class SymbolicQ:
    """Scalar context over the rational-function field in q."""

    kind = "symbolic"

    def __init__(self):
        self.zero = QScalar.from_int(0)
        self.one = QScalar.from_int(1)
        self._binom_cache: dict = {}

    def q_power(self, k: int):
        return QScalar.q_power(k)

    def scalar_str(self, x) -> str:
        return str(x)

    def q_int(self, n: int, d: int = 1):
        """Symmetric quantum integer [n] in q^d."""
        if n == 0:
            return self.zero
        if n < 0:
            return -self.q_int(-n, d)
        acc = self.zero
        for k in range(n):
            acc = acc + self.q_power(d * (n - 1 - 2 * k))
        return acc

    def q_binom(self, n: int, k: int, d: int = 1):
        """Symmetric quantum binomial via the Pascal-type recursion."""
        if k < 0 or k > n:
            return self.zero
        if k == 0 or k == n:
            return self.one
        key = (n, k, d)
        hit = self._binom_cache.get(key)
        if hit is None:
            hit = self.q_power(d * k) * self.q_binom(n - 1, k, d) + self.q_power(
                d * (k - n)
            ) * self.q_binom(n - 1, k - 1, d)
            self._binom_cache[key] = hit
        return hit


class NumericQ:
    """Scalar context at a fixed rational q0 with |q0| not 0 or 1.

    Such q0 have infinite multiplicative order, so every quantum integer of a
    nonzero argument is nonzero."""

    kind = "numeric"

    def __init__(self, q0: Fraction):
        q0 = Fraction(q0)
        if q0 == 0 or abs(q0) == 1:
            raise ValueError("|q0| must differ from 0 and 1")
        self.q0 = q0
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self._binom_cache: dict = {}

    def q_power(self, k: int) -> Fraction:
        return self.q0 ** k

    def scalar_str(self, x) -> str:
        return str(x)

    def q_int(self, n: int, d: int = 1) -> Fraction:
        if n == 0:
            return self.zero
        sign = 1 if n > 0 else -1
        n = abs(n)
        acc = Fraction(0)
        for k in range(n):
            acc += self.q_power(d * (n - 1 - 2 * k))
        return sign * acc

    def q_binom(self, n: int, k: int, d: int = 1) -> Fraction:
        if k < 0 or k > n:
            return self.zero
        if k == 0 or k == n:
            return self.one
        key = (n, k, d)
        hit = self._binom_cache.get(key)
        if hit is None:
            hit = self.q_power(d * k) * self.q_binom(n - 1, k, d) + self.q_power(
                d * (k - n)
            ) * self.q_binom(n - 1, k - 1, d)
            self._binom_cache[key] = hit
        return hit
