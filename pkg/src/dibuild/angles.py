"""Exact angle values: rational multiples of pi plus arccos terms.

Link distances in this package are sums of whole edges (multiples of
pi/m) and at most a couple of partial arcs, each of the form
arccos(s * sqrt(c)) with c an exact real square in the field.  Sums with
up to two arccos terms are compared exactly by trigonometric reduction
to sign tests of expressions sum_i a_i * sqrt(r_i) over the real
subfield; longer sums fall back to certified rational intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .cyclo import CycloElem, CycloField, sign_real


class AngleUndecidable(ArithmeticError):
    pass


def sign_sqrt_combo(terms) -> int:
    """Exact sign of sum of coef*sqrt(rad), coef/rad real field elements.

    Radicands must be nonnegative; rational terms are passed with rad=1.
    """
    grouped: dict[tuple, object] = {}
    order: list[tuple] = []
    for coef, rad in terms:
        if sign_real(rad) < 0:
            raise ValueError("negative radicand")
        key = rad.coeffs
        if key in grouped:
            grouped[key] = (grouped[key][0] + coef, rad)
        else:
            grouped[key] = (coef, rad)
            order.append(key)
    live = []
    for key in order:
        coef, rad = grouped[key]
        sc = sign_real(coef)
        if sc != 0 and not rad.is_zero():
            live.append((coef, rad, sc))
    if not live:
        return 0
    if len(live) == 1:
        return live[0][2]
    if len(live) == 2:
        (a, x, sa), (b, y, sb) = live
        if sa == sb:
            return sa
        c = sign_real(a * a * x - b * b * y)
        if c == 0:
            return 0
        return sa if c > 0 else sb
    if len(live) <= 4:
        pos = [(c, r) for c, r, s in live if s > 0]
        neg = [(-c, r) for c, r, s in live if s < 0]
        if not neg:
            return 1
        if not pos:
            return -1
        if len(pos) > 2 or len(neg) > 2:
            raise AngleUndecidable("radical expression too long to square")
        # compare (sum pos)^2 vs (sum neg)^2; each side has <= 2 terms, so
        # squaring leaves at most one square root per side
        one = pos[0][1].field.one

        def square(side):
            if len(side) == 1:
                a, x = side[0]
                return [(a * a * x, one)]
            (a, x), (b, y) = side
            return [(a * a * x + b * b * y, one), (2 * a * b, x * y)]

        diff = square(pos) + [(-c, r) for c, r in square(neg)]
        return sign_sqrt_combo(diff)
    raise AngleUndecidable("too many radical terms")


@dataclass(frozen=True)
class AcosTerm:
    """arccos(sign * sqrt(cos_sq)) in [0, pi]; cos_sq in [0, 1]."""

    sign: int
    cos_sq: CycloElem

    def reversed(self) -> AcosTerm:
        return AcosTerm(-self.sign, self.cos_sq)

    def key(self):
        return (self.sign, self.cos_sq.coeffs)

    def interval(self, prec: int) -> tuple[Fraction, Fraction]:
        F = self.cos_sq.field
        lo, hi = _real_bounds(self.cos_sq, prec)
        lo = max(Fraction(0), lo)
        hi = min(Fraction(1), hi)
        with mpmath.workprec(prec + 20):
            s_lo = mpmath.sqrt(mpmath.mpf(lo.numerator) / lo.denominator)
            s_hi = mpmath.sqrt(mpmath.mpf(hi.numerator) / hi.denominator)
            if self.sign >= 0:
                c_lo, c_hi = s_lo, s_hi
            else:
                c_lo, c_hi = -s_hi, -s_lo
            a_lo = mpmath.acos(min(mpmath.mpf(1), c_hi))
            a_hi = mpmath.acos(max(mpmath.mpf(-1), c_lo))
            pad = Fraction(1, 2 ** (prec - 6))
            return _to_fraction(a_lo) - pad, _to_fraction(a_hi) + pad


def _to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    val = Fraction(man) * (Fraction(2) ** exp)
    return -val if sign else val


def _real_bounds(x: CycloElem, prec: int) -> tuple[Fraction, Fraction]:
    enc = x.field.real_interval(x.coeffs, prec)
    return _to_fraction(enc.a), _to_fraction(enc.b)


def acos_of_cosine(num: CycloElem, den_sq: CycloElem) -> AcosTerm | Fraction:
    """Angle with cosine num/sqrt(den_sq); a Fraction result is in pi units.

    Folds the rational angles 0, pi/2, pi; den_sq must be positive.
    """
    s = sign_real(num)
    if s == 0:
        return Fraction(1, 2)
    c2 = (num * num) / den_sq
    d = sign_real(c2 - 1)
    if d > 0:
        raise ValueError("cosine magnitude exceeds 1")
    if d == 0:
        return Fraction(0) if s > 0 else Fraction(1)
    return AcosTerm(s, c2)


def angle_between(a: CycloElem, b: CycloElem) -> "Angle":
    """Unoriented angle in [0, pi] between direction vectors a, b."""
    num = (a * b.conj() + b * a.conj()) / 2
    den = (a * a.conj()) * (b * b.conj())
    t = acos_of_cosine(num, den)
    if isinstance(t, Fraction):
        return Angle(t, ())
    return Angle(Fraction(0), ((1, t),))


@dataclass(frozen=True)
class Angle:
    """pi_mult * pi + sum of coef * arccos-terms (coef = +-1)."""

    pi_mult: Fraction
    terms: tuple  # of (coef, AcosTerm)

    @staticmethod
    def zero() -> Angle:
        return Angle(Fraction(0), ())

    @staticmethod
    def pi(mult=1) -> Angle:
        return Angle(Fraction(mult), ())

    @staticmethod
    def pi_over_m(k: int, m: int) -> Angle:
        return Angle(Fraction(k, m), ())

    def __add__(self, other: Angle) -> Angle:
        return Angle(self.pi_mult + other.pi_mult,
                     _cancel(self.terms + other.terms))

    def __neg__(self) -> Angle:
        return Angle(-self.pi_mult, tuple((-c, t) for c, t in self.terms))

    def __sub__(self, other: Angle) -> Angle:
        return self + (-other)

    def reversed_terms(self) -> Angle:
        """pi - self, folding arccos(-v) = pi - arccos(v) termwise."""
        return Angle.pi() - self

    def sign(self) -> int:
        terms = _cancel(self.terms)
        q = self.pi_mult
        if not terms:
            return (q > 0) - (q < 0)
        try:
            if len(terms) == 1:
                return _sign_one_term(q, *terms[0])
            if len(terms) == 2:
                return _sign_two_terms(q, terms)
        except AngleUndecidable:
            pass
        return _sign_interval(q, terms)

    def cmp(self, other: Angle) -> int:
        return (self - other).sign()

    def is_lt(self, other) -> bool:
        return self.cmp(_as_angle(other)) < 0

    def is_le(self, other) -> bool:
        return self.cmp(_as_angle(other)) <= 0

    def is_ge(self, other) -> bool:
        return self.cmp(_as_angle(other)) >= 0

    def is_eq(self, other) -> bool:
        return self.cmp(_as_angle(other)) == 0

    def float_value(self) -> float:
        import math

        v = float(self.pi_mult) * math.pi
        for c, t in self.terms:
            cv = t.sign * math.sqrt(max(0.0, t.cos_sq.complex_value().real))
            v += c * math.acos(max(-1.0, min(1.0, cv)))
        return v

    def interval(self, prec: int) -> tuple[Fraction, Fraction]:
        with mpmath.workprec(prec + 20):
            pi_lo = _to_fraction(mpmath.pi) - Fraction(1, 2 ** (prec - 4))
            pi_hi = _to_fraction(mpmath.pi) + Fraction(1, 2 ** (prec - 4))
        if self.pi_mult >= 0:
            lo, hi = self.pi_mult * pi_lo, self.pi_mult * pi_hi
        else:
            lo, hi = self.pi_mult * pi_hi, self.pi_mult * pi_lo
        for c, t in self.terms:
            t_lo, t_hi = t.interval(prec)
            if c > 0:
                lo, hi = lo + t_lo, hi + t_hi
            else:
                lo, hi = lo - t_hi, hi - t_lo
        return lo, hi


def _as_angle(x) -> Angle:
    if isinstance(x, Angle):
        return x
    return Angle(Fraction(x), ())


def _cancel(terms):
    out = []
    for c, t in sorted(terms, key=lambda ct: (ct[1].key(), ct[0])):
        if out and out[-1][1].key() == t.key() and out[-1][0] == -c:
            out.pop()
        else:
            out.append((c, t))
    return tuple(out)


def _sign_one_term(q: Fraction, coef: int, t: AcosTerm) -> int:
    # value = q*pi + coef*theta, theta = arccos(v) in (0, pi)
    if coef < 0:
        return -_sign_one_term(-q, 1, t)
    if q >= 0:
        return 1
    if q <= -1:
        return -1
    # theta vs (-q)*pi with -q in (0,1): arccos decreasing
    r = -q
    target = _cos_pi_mult(t.cos_sq.field, r)
    c = _cmp_cos_value(t, target)
    # cos(theta) > cos(r pi)  =>  theta < r pi  =>  value < 0
    return -c


def _cos_pi_mult(field: CycloField, r: Fraction) -> CycloElem:
    """cos(r*pi) exactly; r must be a multiple of 1/m (or 1/2)."""
    m = field.m
    k = r * 2 * m
    if k.denominator != 1:
        raise AngleUndecidable(f"no exact cosine for pi*{r}")
    k = int(k) % (4 * m)
    # cos(k*pi/2m): in the field for even k; zero when k is an odd multiple of m
    if k % 2 == 0:
        j = k // 2
        return (field.zeta_power(j) + field.zeta_power(-j)) / 2
    if k % (2 * m) == m:
        return field.zero
    raise AngleUndecidable(f"no exact cosine for pi*{r}")


def _cmp_cos_value(t: AcosTerm, target: CycloElem) -> int:
    """Compare cos(theta) = s*sqrt(c2) with a field element."""
    one = target.field.one
    return sign_sqrt_combo([(target.field.from_rational(t.sign), t.cos_sq),
                            (-target, one)])


def _sign_two_terms(q: Fraction, terms) -> int:
    (c1, t1), (c2, t2) = terms
    if c1 < 0 and c2 < 0:
        return -_sign_two_terms(-q, ((1, t1), (1, t2)))
    if c1 < 0:
        (c1, t1), (c2, t2) = (c2, t2), (c1, t1)
    F = t1.cos_sq.field
    one = F.one
    if c2 > 0:
        # theta1 + theta2 vs r*pi, r = -q
        r = -q
        if r <= 0:
            return 1
        if r >= 2:
            return -1
        if r > 1:
            # reflect both: (pi - theta1) + (pi - theta2) vs (2 - r) pi
            return -_sign_two_terms(-(2 - r), ((1, t1.reversed()), (1, t2.reversed())))
        # decide theta1 + theta2 vs pi: theta1 vs pi - theta2
        # cos(theta1) vs cos(pi - theta2) = -cos(theta2), reversed
        against_pi = -sign_sqrt_combo([
            (F.from_rational(t1.sign), t1.cos_sq),
            (F.from_rational(t2.sign), t2.cos_sq),
        ])
        if r == 1:
            return against_pi
        # now r < 1
        if against_pi >= 0:
            return 1  # theta1+theta2 >= pi > r*pi
        # both in (0, pi): compare cosines, reversed
        target = _cos_pi_mult(F, r)
        # cos(t1 + t2) = v1 v2 - sqrt((1-v1^2)(1-v2^2))
        s12 = t1.sign * t2.sign
        c = sign_sqrt_combo([
            (F.from_rational(s12), t1.cos_sq * t2.cos_sq),
            (-one, (one - t1.cos_sq) * (one - t2.cos_sq)),
            (-target, one),
        ])
        return -c
    # theta1 - theta2 vs r*pi, r = -q, with theta1 - theta2 in (-pi, pi)
    r = -q
    if r >= 1:
        return -1
    if r <= -1:
        return 1
    if r < 0:
        # sign(q*pi + theta1 - theta2) = -sign(-q*pi + theta2 - theta1)
        return -_sign_two_terms(-q, ((1, t2), (-1, t1)))
    # theta1 vs theta2 + r*pi with r in [0, 1)
    # is theta2 + r*pi < pi?  i.e. theta2 vs (1-r)*pi
    inner = _sign_one_term(-(1 - r), 1, t2)
    if inner >= 0:
        # theta2 + r*pi >= pi > theta1 (arccos values are in the open interval)
        return -1
    F1 = t1.cos_sq.field
    target = _cos_pi_mult(F1, r)
    sin_sq = one - target * target
    # cos(theta2 + r pi) = v2 cos(r pi) - sin(theta2) sin(r pi)
    c = sign_sqrt_combo([
        (F1.from_rational(t1.sign), t1.cos_sq),
        (-target * t2.sign, t2.cos_sq),
        (one, (one - t2.cos_sq) * sin_sq),
    ])
    return -c


def _sign_interval(q: Fraction, terms) -> int:
    ang = Angle(q, terms)
    prec = 120
    while prec <= 1 << 14:
        lo, hi = ang.interval(prec)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        prec *= 2
    raise AngleUndecidable("angle sign not separated; possible exact tie")
