"""Univariate polynomials over exact scalars, with Sturm root counting.

Coefficients are Scalars, constant term first, trailing zeros trimmed.
Sturm counting requires real coefficients; signs are evaluated exactly
through Scalar.sign().
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Scalar


class UPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [Scalar.coerce(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c) -> "UPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UPoly":
        return cls([0, 1])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = other if isinstance(other, UPoly) else UPoly.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else Scalar.zero()
            b = other.coeffs[i] if i < len(other.coeffs) else Scalar.zero()
            out.append(a + b)
        return UPoly(out)

    def __sub__(self, other):
        other = other if isinstance(other, UPoly) else UPoly.constant(other)
        return self + (-other)

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            other = UPoly.constant(other)
        if self.is_zero() or other.is_zero():
            return UPoly([])
        out = [Scalar.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return UPoly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "UPoly":
        return UPoly([x * c for x in self.coeffs])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Scalar.zero()] * max(len(rem) - len(other.coeffs) + 1, 1)
        inv = other.coeffs[-1].inverse()
        for k in range(len(rem) - len(other.coeffs), -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv
            q[k] = c
            if c:
                for i, d in enumerate(other.coeffs):
                    rem[k + i] = rem[k + i] - c * d
        return UPoly(q), UPoly(rem[:len(other.coeffs) - 1])

    def derivative(self) -> "UPoly":
        return UPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x) -> Scalar:
        result = Scalar.zero()
        for c in reversed(self.coeffs):
            result = result * Scalar.coerce(x) + c
        return result

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        inv = self.coeffs[-1].inverse()
        return self.scale(inv)

    def gcd(self, other) -> "UPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def __repr__(self):
        return f"UPoly({[repr(c) for c in self.coeffs]})"


def sturm_chain(p: UPoly):
    chain = [p, p.derivative()]
    while chain[-1].degree() > 0:
        rem = chain[-2].divmod(chain[-1])[1]
        if rem.is_zero():
            break
        chain.append(-rem)
    return chain


def _sign_changes(signs) -> int:
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def count_real_roots(p: UPoly) -> int:
    """Number of distinct real roots, by a Sturm chain on the squarefree part."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree() == 0:
        return 0
    g = p.gcd(p.derivative())
    if g.degree() > 0:
        p = p.divmod(g)[0]
    chain = sturm_chain(p)
    at_minus = [q.coeffs[-1].sign() * (-1) ** q.degree() for q in chain if not q.is_zero()]
    at_plus = [q.coeffs[-1].sign() for q in chain if not q.is_zero()]
    return _sign_changes(at_minus) - _sign_changes(at_plus)


def rational_roots(p: UPoly) -> list[Fraction]:
    """All rational roots of a polynomial with rational coefficients."""
    if not p.is_rational():
        raise ValueError("polynomial has irrational coefficients")
    if p.is_zero():
        raise ValueError("zero polynomial")
    fracs = [c.to_fraction() for c in p.coeffs]
    den = 1
    for f in fracs:
        den = den * f.denominator // _gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    roots = []
    low = 0
    while ints[low] == 0:
        low += 1
    if low > 0:
        roots.append(Fraction(0))
    a0, alead = abs(ints[low]), abs(ints[-1])
    for num in _divisors_of(a0):
        for d in _divisors_of(alead):
            for cand in (Fraction(num, d), Fraction(-num, d)):
                if cand not in roots and p(Scalar.from_rational(cand)).is_zero():
                    roots.append(cand)
    return sorted(roots)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors_of(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
