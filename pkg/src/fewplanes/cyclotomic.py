"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A Scalar is an element of Q(zeta_N) stored as a polynomial in zeta_N of
degree < phi(N), reduced modulo the N-th cyclotomic polynomial.  The
coefficient vector is kept as a tuple of integer numerators over a single
positive denominator, with the gcd of all numerators and the denominator
normalized to 1.  This representation is unique, so zero-testing and
equality are exact; N = 1 recovers the rationals.

Real elements (the only ones the geometry produces) support exact sign
evaluation: zero is decided structurally, and the sign of a nonzero real
element is certified numerically, first with a guarded float evaluation
and then with mpmath interval arithmetic at increasing precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import FieldOrderError, NotRealError

# Promotions beyond this order are refused (configurable, default 4*64).
DEFAULT_ORDER_CAP = 256
_order_cap = DEFAULT_ORDER_CAP


def set_order_cap(cap: int) -> None:
    global _order_cap
    if cap < 1:
        raise ValueError("order cap must be positive")
    _order_cap = cap


def get_order_cap() -> int:
    return _order_cap


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def _divisors(n: int) -> tuple[int, ...]:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return tuple(divs)


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials with monic-up-to-sign divisor.
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        if c % lead != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // lead
        out[k] = q
        if q:
            for i, d in enumerate(den):
                num[k + i] -= q * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first."""
    if n == 1:
        return (-1, 1)
    poly = [0] * n + [1]
    poly[0] = -1  # x^n - 1
    for d in _divisors(n):
        if d < n:
            poly = _poly_divide_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, ...], int]:
    phi = cyclotomic_polynomial(n)
    return phi, len(phi) - 1


def _reduce_mod_phi(n: int, coeffs: list[int]) -> list[int]:
    """Reduce an integer polynomial in zeta_N modulo Phi_N, in place."""
    phi, deg = _reduction_rows(n)
    for k in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[k]
        if c:
            coeffs[k] = 0
            base = k - deg
            for i in range(deg):
                coeffs[base + i] -= c * phi[i]
    del coeffs[deg:]
    while len(coeffs) < deg:
        coeffs.append(0)
    return coeffs


def _content_normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        den = -den
        nums = [-c for c in nums]
    g = den
    for c in nums:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                break
    if g > 1:
        den //= g
        nums = [c // g for c in nums]
    return tuple(nums), den


class Scalar:
    """An exact element of Q(zeta_N)."""

    __slots__ = ("order", "num", "den", "_canonical")

    def __init__(self, order: int, num: tuple[int, ...], den: int = 1):
        if len(num) != euler_phi(order):
            raise ValueError("coefficient vector has wrong length for the order")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self.order = order
        self.num, self.den = _content_normalize(list(num), den)
        self._canonical = None

    # -- construction ------------------------------------------------------

    @staticmethod
    def _raw(order: int, num: tuple[int, ...], den: int) -> "Scalar":
        return Scalar(order, num, den)

    @classmethod
    def from_rational(cls, value) -> "Scalar":
        f = Fraction(value)
        return cls(1, (f.numerator,), f.denominator)

    @classmethod
    def zero(cls, order: int = 1) -> "Scalar":
        return cls(order, (0,) * euler_phi(order), 1)

    @classmethod
    def one(cls, order: int = 1) -> "Scalar":
        num = [0] * euler_phi(order)
        num[0] = 1
        return cls(order, tuple(num), 1)

    @classmethod
    def root_of_unity(cls, order: int, k: int = 1) -> "Scalar":
        """zeta_order ** k, reduced."""
        if order > _order_cap:
            raise FieldOrderError(f"order {order} exceeds cap {_order_cap}")
        k %= order
        coeffs = [0] * (k + 1)
        coeffs[k] = 1
        coeffs = _reduce_mod_phi(order, coeffs)
        return cls(order, tuple(coeffs), 1)

    def __reduce__(self):
        return (Scalar._raw, (self.order, self.num, self.den))

    # -- coercion and promotion --------------------------------------------

    @staticmethod
    def coerce(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        return Scalar.from_rational(value)

    def promote(self, order: int) -> "Scalar":
        """Map into Q(zeta_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order != 0:
            raise ValueError(f"cannot promote order {self.order} into {order}")
        if order > _order_cap:
            raise FieldOrderError(f"order {order} exceeds cap {_order_cap}")
        step = order // self.order
        coeffs = [0] * ((len(self.num) - 1) * step + 1)
        for j, c in enumerate(self.num):
            if c:
                coeffs[j * step] = c
        coeffs = _reduce_mod_phi(order, coeffs)
        return Scalar(order, tuple(coeffs), self.den)

    @staticmethod
    def common_order(a: "Scalar", b: "Scalar") -> int:
        n = a.order * b.order // math.gcd(a.order, b.order)
        if n > _order_cap:
            raise FieldOrderError(f"order {n} exceeds cap {_order_cap}")
        return n

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("scalar is not rational")
        return Fraction(self.num[0], self.den)

    def conjugate(self) -> "Scalar":
        """Complex conjugate (zeta -> zeta^-1)."""
        n = self.order
        coeffs = [0] * n
        coeffs[0] = self.num[0]
        for j in range(1, len(self.num)):
            c = self.num[j]
            if c:
                coeffs[n - j] += c
        coeffs = _reduce_mod_phi(n, coeffs)
        return Scalar(n, tuple(coeffs), self.den)

    def is_real(self) -> bool:
        return self.conjugate() == self

    # -- arithmetic ----------------------------------------------------------

    def _binary(self, other, sub: bool):
        other = Scalar.coerce(other)
        a, b = self, other
        if a.order != b.order:
            n = Scalar.common_order(a, b)
            a, b = a.promote(n), b.promote(n)
        num = [ca * b.den - cb * a.den if sub else ca * b.den + cb * a.den
               for ca, cb in zip(a.num, b.num)]
        return Scalar(a.order, tuple(num), a.den * b.den)

    def __add__(self, other):
        return self._binary(other, False)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, True)

    def __rsub__(self, other):
        return Scalar.coerce(other)._binary(self, True)

    def __neg__(self):
        return Scalar(self.order, tuple(-c for c in self.num), self.den)

    def __mul__(self, other):
        other = Scalar.coerce(other)
        a, b = self, other
        if a.order != b.order:
            n = Scalar.common_order(a, b)
            a, b = a.promote(n), b.promote(n)
        la, lb = a.num, b.num
        out = [0] * (len(la) + len(lb) - 1)
        for i, ca in enumerate(la):
            if ca:
                for j, cb in enumerate(lb):
                    if cb:
                        out[i + j] += ca * cb
        out = _reduce_mod_phi(a.order, out)
        return Scalar(a.order, tuple(out), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Scalar(self.order,
                          (self.den,) + (0,) * (len(self.num) - 1),
                          self.num[0])
        # Extended Euclid in Q[x] against Phi_N.
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        a = [Fraction(c, self.den) for c in self.num]
        r0, r1 = phi, _trim(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if not r1 or r1[0] == 0:
            raise ZeroDivisionError("element is a zero divisor (non-reduced input?)")
        inv = [c / r1[0] for c in s1]
        den = 1
        for c in inv:
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [int(c * den) for c in inv]
        nums += [0] * (euler_phi(self.order) - len(nums))
        nums = _reduce_mod_phi(self.order, nums)
        return Scalar(self.order, tuple(nums), den)

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- canonical form across orders ---------------------------------------

    def canonical_key(self):
        """(order, numerators, denominator) at the minimal cyclotomic order."""
        if self._canonical is None:
            self._canonical = self._demote_key()
        return self._canonical

    def _demote_key(self):
        if self.is_rational():
            return (1, (self.num[0],), self.den)
        for d in _divisors(self.order)[:-1]:
            if d == 1:
                continue
            solver = _demotion_solver(self.order, d)
            if solver is None:
                continue
            target = [Fraction(c, self.den) for c in self.num]
            sol = solver(target)
            if sol is not None:
                den = 1
                for c in sol:
                    den = den * c.denominator // math.gcd(den, c.denominator)
                return (d, tuple(int(c * den) for c in sol), den)
        return (self.order, self.num, self.den)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, Scalar):
            return NotImplemented
        if self.order == other.order:
            return self.num == other.num and self.den == other.den
        if self.is_rational() or other.is_rational():
            return (self.is_rational() and other.is_rational()
                    and Fraction(self.num[0], self.den) == Fraction(other.num[0], other.den))
        n = Scalar.common_order(self, other)
        a, b = self.promote(n), other.promote(n)
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        key = self.canonical_key()
        if key[0] == 1:
            return hash(Fraction(key[1][0], key[2]))
        return hash(key)

    # -- sign and comparisons -----------------------------------------------

    def sign(self) -> int:
        """Exact sign of a real element: -1, 0 or +1."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.num[0] > 0 else -1
        if not self.is_real():
            raise NotRealError(f"sign of non-real element {self!r}")
        s = self._float_sign()
        if s is not None:
            return s
        return self._interval_sign()

    def _float_sign(self):
        if any(abs(c) > (1 << 50) for c in self.num):
            return None
        cosines = _float_cosines(self.order)
        total = 0.0
        magnitude = 0.0
        for j, c in enumerate(self.num):
            if c:
                t = c * cosines[j]
                total += t
                magnitude += abs(c)
        margin = magnitude * 1e-9 * (len(self.num) + 4)
        if abs(total) > margin:
            return 1 if total > 0 else -1
        return None

    def _interval_sign(self) -> int:
        from mpmath import iv

        prec = 128
        while prec <= 1 << 16:
            old = iv.prec
            try:
                iv.prec = prec
                two_pi = 2 * iv.pi
                total = iv.mpf(0)
                for j, c in enumerate(self.num):
                    if c:
                        total += c * iv.cos(two_pi * j / self.order)
                if total.a > 0:
                    return 1
                if total.b < 0:
                    return -1
            finally:
                iv.prec = old
            prec *= 2
        raise ArithmeticError(f"sign of {self!r} did not resolve; element may be zero")

    def _compare(self, other) -> int:
        return (self - Scalar.coerce(other)).sign()

    def __lt__(self, other):
        return self._compare(other) < 0

    def __le__(self, other):
        return self._compare(other) <= 0

    def __gt__(self, other):
        return self._compare(other) > 0

    def __ge__(self, other):
        return self._compare(other) >= 0

    # -- text form -----------------------------------------------------------

    def __repr__(self):
        if self.is_rational():
            return f"Scalar({Fraction(self.num[0], self.den)})"
        terms = ", ".join(str(Fraction(c, self.den)) for c in self.num)
        return f"Scalar(zeta_{self.order}; [{terms}])"

    def to_json(self):
        key = self.canonical_key()
        if key[0] == 1:
            return _fraction_str(Fraction(key[1][0], key[2]))
        return {"N": key[0],
                "c": [_fraction_str(Fraction(c, key[2])) for c in key[1]]}

    @classmethod
    def from_json(cls, data) -> "Scalar":
        if isinstance(data, str):
            return cls.from_rational(Fraction(data))
        if isinstance(data, int):
            return cls.from_rational(data)
        if isinstance(data, dict):
            n = int(data["N"])
            coeffs = [Fraction(c) for c in data["c"]]
            if len(coeffs) != euler_phi(n):
                raise ValueError(f"expected {euler_phi(n)} coefficients for order {n}")
            den = 1
            for c in coeffs:
                den = den * c.denominator // math.gcd(den, c.denominator)
            return cls(n, tuple(int(c * den) for c in coeffs), den)
        raise ValueError(f"unreadable scalar: {data!r}")


def _fraction_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


# -- helpers for inverse / demotion ------------------------------------------

def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / b[-1]
        q[k] = c
        if c:
            for i, d in enumerate(b):
                a[k + i] -= c * d
    del a[len(b) - 1:]
    return q, _trim(a)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1 if a and b else 0)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim(out)


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


@lru_cache(maxsize=None)
def _float_cosines(n: int) -> tuple[float, ...]:
    return tuple(math.cos(2.0 * math.pi * j / n) for j in range(euler_phi(n)))


@lru_cache(maxsize=None)
def _demotion_solver(big: int, small: int):
    """A solver deciding membership of Q(zeta_big) elements in Q(zeta_small).

    Returns a callable mapping a coefficient vector (Fractions, length
    phi(big)) to its phi(small)-vector in the zeta_small power basis, or
    None when the element does not lie in the subfield.
    """
    if big % small != 0 or euler_phi(small) > euler_phi(big):
        return None
    rows = euler_phi(big)
    cols = euler_phi(small)
    # Column c = promotion of zeta_small^c into Q(zeta_big).
    matrix = []
    step = big // small
    for c in range(cols):
        coeffs = [0] * (c * step + 1)
        coeffs[c * step] = 1
        coeffs = _reduce_mod_phi(big, coeffs)
        matrix.append([Fraction(x) for x in coeffs])
    columns = list(zip(*matrix))  # rows x cols

    # Row-reduce [B | I] once; record the transform.
    aug = [list(columns[r]) + [Fraction(int(i == r)) for i in range(rows)]
           for r in range(rows)]
    pivots = []
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if aug[r][col] != 0), None)
        if pivot is None:
            return None  # promotion matrix must have full column rank
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [x * inv for x in aug[rank]]
        for r in range(rows):
            if r != rank and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    transform = [row[cols:] for row in aug]

    def solve(vec):
        image = [sum(t * v for t, v in zip(row, vec)) for row in transform]
        sol = image[:cols]
        if any(image[cols:]):
            return None
        return sol

    return solve


# -- trigonometric constructors ----------------------------------------------

def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def cos2pi(j: int, m: int) -> Scalar:
    """cos(2*pi*j/m) as an exact element of Q(zeta_lcm(4, m))."""
    n = _lcm(4, m)
    z = Scalar.root_of_unity(n, j * (n // m))
    return (z + z.conjugate()) / 2


def sin2pi(j: int, m: int) -> Scalar:
    """sin(2*pi*j/m) as an exact element of Q(zeta_lcm(4, m))."""
    n = _lcm(4, m)
    z = Scalar.root_of_unity(n, j * (n // m))
    i_unit = Scalar.root_of_unity(n, n // 4)
    return (z - z.conjugate()) / (2 * i_unit)


ZERO = Scalar.zero()
ONE = Scalar.one()
