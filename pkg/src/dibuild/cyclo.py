"""Exact arithmetic in the cyclotomic field Q(zeta), zeta = exp(i*pi/m).

All plane geometry in this package runs over the field F = Q(zeta_{2m}),
with zeta a primitive 2m-th root of unity embedded as exp(i*pi/m).  Field
elements are stored as rational coefficient vectors over the power basis
{1, zeta, ..., zeta^(phi(2m)-1)}; equality and the zero test are exact.

Sign determination for real (conjugation-fixed) elements is two-staged:
the zero case is decided symbolically from the coefficient vector, and a
nonzero sign is certified by interval arithmetic at doubling precision,
which terminates because the value is known to be nonzero.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

Rat = Fraction

_FLOAT_SLACK = 2.0 ** -40


def euler_phi(n: int) -> int:
    result = n
    p = 2
    k = n
    while p * p <= k:
        if k % p == 0:
            result -= result // p
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        result -= result // k
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Monic integer coefficients of Phi_n, constant term first."""
    if n == 1:
        return (-1, 1)
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact long division.
    num = [0] * (n + 1)
    num[0] = -1
    num[n] = 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_div_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        q, r = divmod(c, den[dn])
        assert r == 0
        out[i - dn] = q
        for j, dj in enumerate(den):
            num[i - dn + j] -= q * dj
    assert all(c == 0 for c in num)
    return out


class CycloField:
    """The field Q(zeta_2m) with cached reduction and embedding data."""

    def __init__(self, m: int):
        if m < 2:
            raise ValueError(f"dihedral order parameter must be >= 2, got {m}")
        self.m = m
        self.n = 2 * m
        self.phi = euler_phi(self.n)
        poly = cyclotomic_polynomial(self.n)
        assert len(poly) == self.phi + 1 and poly[-1] == 1
        self._min_poly = poly
        self._powers = self._build_power_table()
        self._conj_rows = tuple(self._powers[(-j) % self.n] for j in range(self.phi))
        self._float_cos = [math.cos(j * math.pi / m) for j in range(self.n)]
        self._float_sin = [math.sin(j * math.pi / m) for j in range(self.n)]
        self._iv_cache: dict[int, list] = {}
        self._sign_cache: dict[tuple[Fraction, ...], int] = {}
        self.zero = CycloElem(self, (Fraction(0),) * self.phi)
        self.one = self.from_rational(1)
        self.zeta = self.zeta_power(1)

    def _build_power_table(self) -> tuple[tuple[Fraction, ...], ...]:
        # zeta^k over the power basis, for all k mod n.
        rows: list[tuple[Fraction, ...]] = []
        for j in range(self.phi):
            rows.append(tuple(Fraction(1 if i == j else 0) for i in range(self.phi)))
        cur = [Fraction(-c) for c in self._min_poly[: self.phi]]
        rows.append(tuple(cur))
        for _ in range(self.phi + 1, self.n):
            nxt = [Fraction(0)] * self.phi
            carry = cur[self.phi - 1]
            for i in range(self.phi - 1):
                nxt[i + 1] = cur[i]
            if carry:
                for i in range(self.phi):
                    nxt[i] -= carry * self._min_poly[i]
            rows.append(tuple(nxt))
            cur = nxt
        return tuple(rows)

    def __repr__(self) -> str:
        return f"CycloField(m={self.m})"

    def elem(self, coeffs) -> CycloElem:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != self.phi:
            raise ValueError(f"expected {self.phi} coefficients, got {len(coeffs)}")
        return CycloElem(self, coeffs)

    def from_rational(self, q) -> CycloElem:
        c = [Fraction(0)] * self.phi
        c[0] = Fraction(q)
        return CycloElem(self, tuple(c))

    def zeta_power(self, k: int) -> CycloElem:
        return CycloElem(self, self._powers[k % self.n])

    # -- ring operations on raw coefficient vectors ---------------------

    def _mul(self, a: tuple, b: tuple) -> tuple:
        phi = self.phi
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
        out = list(conv[:phi])
        for k in range(phi, 2 * phi - 1):
            ck = conv[k]
            if ck:
                row = self._powers[k]
                for i in range(phi):
                    if row[i]:
                        out[i] += ck * row[i]
        return tuple(out)

    def _conj(self, a: tuple) -> tuple:
        out = [Fraction(0)] * self.phi
        for j, aj in enumerate(a):
            if aj:
                row = self._conj_rows[j]
                for i in range(self.phi):
                    if row[i]:
                        out[i] += aj * row[i]
        return tuple(out)

    def _inverse(self, a: tuple) -> tuple:
        # Solve a * x = 1 by Gaussian elimination on the multiplication matrix.
        phi = self.phi
        cols = []
        for j in range(phi):
            unit = tuple(Fraction(1 if i == j else 0) for i in range(phi))
            cols.append(self._mul(a, unit))
        mat = [[cols[j][i] for j in range(phi)] + [Fraction(1 if i == 0 else 0)]
               for i in range(phi)]
        for col in range(phi):
            piv = next((r for r in range(col, phi) if mat[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("division by zero cyclotomic element")
            mat[col], mat[piv] = mat[piv], mat[col]
            inv = 1 / mat[col][col]
            mat[col] = [v * inv for v in mat[col]]
            for r in range(phi):
                if r != col and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [v - f * w for v, w in zip(mat[r], mat[col])]
        return tuple(mat[i][phi] for i in range(phi))

    # -- numeric embedding ----------------------------------------------

    def complex_value(self, a: tuple) -> complex:
        re = 0.0
        im = 0.0
        for j, aj in enumerate(a):
            if aj:
                f = float(aj)
                re += f * self._float_cos[j]
                im += f * self._float_sin[j]
        return complex(re, im)

    def _iv_roots(self, prec: int):
        if prec not in self._iv_cache:
            old = mpmath.iv.prec
            try:
                mpmath.iv.prec = prec
                pi = mpmath.iv.pi
                roots = []
                for j in range(self.n):
                    theta = pi * j / self.m
                    roots.append((mpmath.iv.cos(theta), mpmath.iv.sin(theta)))
                self._iv_cache[prec] = roots
            finally:
                mpmath.iv.prec = old
        return self._iv_cache[prec]

    def real_interval(self, a: tuple, prec: int):
        """Certified enclosure of Re(a); exact for conjugation-fixed a."""
        roots = self._iv_roots(prec)
        old = mpmath.iv.prec
        try:
            mpmath.iv.prec = prec
            acc = mpmath.iv.mpf(0)
            for j, aj in enumerate(a):
                if aj:
                    q = mpmath.iv.mpf(aj.numerator) / aj.denominator
                    acc += q * roots[j][0]
            return acc
        finally:
            mpmath.iv.prec = old

    def sign_of_real(self, x: CycloElem) -> int:
        """Exact sign of a real element: 0 iff the coefficient vector is 0."""
        a = x.coeffs
        if all(c == 0 for c in a):
            return 0
        cached = self._sign_cache.get(a)
        if cached is not None:
            return cached
        # Fast path: float evaluation with a conservative error bound.
        val = 0.0
        mag = 0.0
        overflow = False
        for j, aj in enumerate(a):
            if aj:
                try:
                    f = float(aj)
                except OverflowError:
                    overflow = True
                    break
                t = f * self._float_cos[j]
                val += t
                mag += abs(f) + abs(t)
        bound = (mag + 1.0) * _FLOAT_SLACK * self.phi
        sign = 0
        if overflow:
            val = bound = 0.0
        if not overflow and val > bound:
            sign = 1
        elif not overflow and val < -bound:
            sign = -1
        else:
            prec = 80
            while True:
                enc = self.real_interval(a, prec)
                if enc.a > 0:
                    sign = 1
                    break
                if enc.b < 0:
                    sign = -1
                    break
                prec *= 2
                if prec > 1 << 16:
                    raise ArithmeticError(
                        "interval refinement did not separate a nonzero value"
                    )
        if len(self._sign_cache) < 1 << 18:
            self._sign_cache[a] = sign
        return sign


@lru_cache(maxsize=None)
def get_field(m: int) -> CycloField:
    return CycloField(m)


class CycloElem:
    """An element of Q(zeta_2m) as an exact coefficient vector."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CycloField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    def __repr__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c:
                if j == 0:
                    terms.append(f"{c}")
                elif j == 1:
                    terms.append(f"{c}*z")
                else:
                    terms.append(f"{c}*z^{j}")
        return "Cyclo(" + (" + ".join(terms) if terms else "0") + ")"

    def _coerce(self, other):
        if isinstance(other, CycloElem):
            if other.field is not self.field:
                raise ValueError("elements from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        return o is not None and self.coeffs == o.coeffs

    def __ne__(self, other) -> bool:
        return not self.__eq__(other)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.m, self.coeffs))
        return self._hash

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloElem(self.field, tuple(a * q for a in self.coeffs))
        return CycloElem(self.field, self.field._mul(self.coeffs, o.coeffs))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloElem(self.field, tuple(a / q for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * CycloElem(self.field, self.field._inverse(o.coeffs))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return (self.field.one / self) ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> CycloElem:
        return CycloElem(self.field, self.field._conj(self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.coeffs[0]

    def is_real(self) -> bool:
        return self.field._conj(self.coeffs) == self.coeffs

    def complex_value(self) -> complex:
        return self.field.complex_value(self.coeffs)


# -- real-subfield comparison helpers ------------------------------------

def sign_real(x: CycloElem) -> int:
    """Sign of a conjugation-fixed element; raises on non-real input."""
    if not x.is_real():
        raise ValueError("sign of a non-real element")
    return x.field.sign_of_real(x)


def cmp_real(a: CycloElem, b) -> int:
    d = a - b
    return sign_real(d)


def is_positive(x: CycloElem) -> bool:
    return sign_real(x) > 0


def is_nonnegative(x: CycloElem) -> bool:
    return sign_real(x) >= 0


def real_min(a: CycloElem, b: CycloElem) -> CycloElem:
    return a if cmp_real(a, b) <= 0 else b


def real_max(a: CycloElem, b: CycloElem) -> CycloElem:
    return a if cmp_real(a, b) >= 0 else b


def float_real(x: CycloElem) -> float:
    return x.complex_value().real


def floor_real(x: CycloElem) -> int:
    """Exact floor of a real element, certified by exact comparisons."""
    if not x.is_real():
        raise ValueError("floor of a non-real element")
    n = math.floor(float_real(x))
    while cmp_real(x, n) < 0:
        n -= 1
    while cmp_real(x, n + 1) >= 0:
        n += 1
    return n
