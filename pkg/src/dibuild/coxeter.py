"""The model Coxeter complex (A, W_af = Lambda x| D_m).

The plane A is identified with the complex field Q(zeta_2m) via the
numeric embedding.  Reflection axes depend on the parity of m:

* m odd:  axes at odd multiples of pi/2m, reflections z -> zeta^(2k+1) * conj(z).
  The positive chamber is bisected by the x-axis and the minimal
  W-invariant translation ring is Z[zeta_2m].
* m even: axes at multiples of pi/m, reflections z -> zeta^(2k) * conj(z).
  The minimal W-invariant translation ring is Z[zeta_m] (the even
  subring), which keeps the classical discreteness dichotomy
  m in {1,2,3,4,6} for the default ring.

Either way there are m wall directions and 2m boundary rays, and the two
chamber walls E+/E- span the oblique coordinate system in which all tile
and corridor combinatorics become axis-parallel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import (
    CycloElem,
    CycloField,
    cmp_real,
    float_real,
    floor_real,
    get_field,
    sign_real,
)
from .intlin import hnf_with_transform, is_dyadic, kernel_basis, solve_upper

CRYSTALLOGRAPHIC = {1, 2, 3, 4, 6}


class PlaneModel:
    """Convention tables for (A, D_m): rays, reflections, oblique frame."""

    def __init__(self, m: int):
        self.m = m
        self.field = get_field(m)
        self.even = m % 2 == 0
        F = self.field
        self.zeta = F.zeta
        # reflection multiplier for wall direction k: z -> mu_k * conj(z)
        self._mu = tuple(F.zeta_power(2 * k if self.even else 2 * k + 1)
                         for k in range(m))
        # direction vector of ray r (positive multiple of the unit ray)
        if self.even:
            self._ray = tuple(F.zeta_power(r) for r in range(2 * m))
        else:
            base = F.one + F.zeta
            self._ray = tuple(F.zeta_power(r) * base for r in range(2 * m))
        # chamber walls: E+ along the upper chamber wall, E- the lower
        if self.even:
            self.dir_p, self.dir_q = 1, 0
        else:
            self.dir_p, self.dir_q = 0, m - 1
        self.E_plus = self._ray[self.dir_p if self.even else 0]
        self.E_minus = self._ray[0] if self.even else self._ray[2 * m - 1]
        # oblique solve data: z = p*E+ + q*E-, with p, q real
        ep, em = self.E_plus, self.E_minus
        det = ep * em.conj() - em * ep.conj()
        self._obl_det_inv = F.one / det
        # normal vectors (in-field vectors perpendicular to each wall dir)
        normals = []
        for k in range(m):
            if self.even:
                e = k + m // 2
            else:
                e = (2 * k + 1 + m) // 2
            normals.append(F.zeta_power(e))
        self._normal = tuple(normals)
        self._inv_normal = tuple(F.one / v for v in normals)
        self._cos = tuple((F.zeta_power(k) + F.zeta_power(-k)) / 2
                          for k in range(2 * m + 1))

    def __repr__(self) -> str:
        return f"PlaneModel(m={self.m})"

    # -- rays and directions ---------------------------------------------

    def ray_vector(self, r: int) -> CycloElem:
        return self._ray[r % (2 * self.m)]

    def wall_dir_of_ray(self, r: int) -> int:
        return r % self.m

    def reflection_multiplier(self, k: int) -> CycloElem:
        return self._mu[k % self.m]

    def normal_vector(self, k: int) -> CycloElem:
        return self._normal[k % self.m]

    def cos_k_pi_m(self, k: int) -> CycloElem:
        """cos(k*pi/m) as an exact real element."""
        return self._cos[abs(k)] if abs(k) <= 2 * self.m else self._cos[abs(k) % (2 * self.m)]

    def direction_ray(self, d: CycloElem) -> int | None:
        """Index of the ray parallel (same orientation) to d, or None."""
        for r in range(2 * self.m):
            v = self._ray[r]
            # d parallel v with positive ratio: cross = 0 and dot > 0
            if cross_sign(self, v, d) == 0 and dot_sign(self, v, d) > 0:
                return r
        return None

    def sector_of_direction(self, d: CycloElem) -> tuple[int, int]:
        """(kind, idx): kind 0 = exactly ray idx, kind 1 = open sector idx.

        Sector s is the open cone between ray s and ray s+1.
        """
        r = self.direction_ray(d)
        if r is not None:
            return 0, r
        for s in range(2 * self.m):
            a = self._ray[s]
            b = self._ray[(s + 1) % (2 * self.m)]
            if cross_sign(self, a, d) > 0 and cross_sign(self, d, b) > 0:
                return 1, s
        raise AssertionError("direction not located")

    # -- oblique coordinates ----------------------------------------------

    def to_oblique(self, z: CycloElem) -> tuple[CycloElem, CycloElem]:
        zc = z.conj()
        p = (z * self.E_minus.conj() - zc * self.E_minus) * self._obl_det_inv
        q = (zc * self.E_plus - z * self.E_plus.conj()) * self._obl_det_inv
        return p, q

    def from_oblique(self, p: CycloElem, q: CycloElem) -> CycloElem:
        return p * self.E_plus + q * self.E_minus

    # -- exact metric helpers ---------------------------------------------

    def norm2(self, z: CycloElem) -> CycloElem:
        """Squared euclidean length |z|^2 as a real element."""
        return z * z.conj()

    def dist2(self, a: CycloElem, b: CycloElem) -> CycloElem:
        return self.norm2(a - b)


@lru_cache(maxsize=None)
def get_model(m: int) -> PlaneModel:
    return PlaneModel(m)


def dot_sign(model: PlaneModel, a: CycloElem, b: CycloElem) -> int:
    """Sign of the euclidean dot product <a, b>."""
    return sign_real(a * b.conj() + b * a.conj())


def cross_sign(model: PlaneModel, a: CycloElem, b: CycloElem) -> int:
    """Sign of the z-component of a x b (counterclockwise positive)."""
    w = a.conj() * b
    # w - conj(w) = 2i Im(w); multiplying by another purely imaginary
    # element with positive imaginary part yields a real negative multiple.
    F = model.field
    u = (w - w.conj()) * (F.zeta - F.zeta.conj())
    return -sign_real(u)


# -- affine group elements -------------------------------------------------

@dataclass(frozen=True)
class GroupElem:
    """z -> zeta^rot * (conj(z) if flip else z) + trans."""

    flip: bool
    rot: int
    trans: CycloElem

    def __post_init__(self):
        n = 2 * self.trans.field.m
        object.__setattr__(self, "rot", self.rot % n)

    @property
    def model(self) -> PlaneModel:
        return get_model(self.trans.field.m)

    def linear(self, z: CycloElem) -> CycloElem:
        w = z.conj() if self.flip else z
        return self.trans.field.zeta_power(self.rot) * w

    def apply(self, z: CycloElem) -> CycloElem:
        return self.linear(z) + self.trans

    __call__ = apply

    def compose(self, other: GroupElem) -> GroupElem:
        """self after other: (self.compose(other))(z) = self(other(z))."""
        rot = self.rot + (-other.rot if self.flip else other.rot)
        flip = self.flip != other.flip
        trans = self.linear(other.trans) + self.trans
        return GroupElem(flip, rot, trans)

    def inverse(self) -> GroupElem:
        F = self.trans.field
        if self.flip:
            # inverse of z -> zeta^r conj(z) + t is itself with trans adjusted
            rot = self.rot
            trans = -(F.zeta_power(self.rot) * self.trans.conj())
            return GroupElem(True, rot, trans)
        return GroupElem(False, -self.rot, -(F.zeta_power(-self.rot) * self.trans))

    def is_identity(self) -> bool:
        return not self.flip and self.rot == 0 and self.trans.is_zero()

    def is_translation(self) -> bool:
        return not self.flip and self.rot == 0

    def linear_is_valid(self, model: PlaneModel) -> bool:
        """Linear part lies in D_m under the parity convention."""
        if model.even:
            return self.rot % 2 == 0
        return self.rot % 2 == (1 if self.flip else 0)

    def map_ray(self, model: PlaneModel, r: int) -> int:
        """Index of the image ray of ray r under the linear part."""
        img = self.linear(model.ray_vector(r))
        out = model.direction_ray(img)
        assert out is not None, "linear part does not permute rays"
        return out


def identity_elem(model: PlaneModel) -> GroupElem:
    return GroupElem(False, 0, model.field.zero)


def translation(t: CycloElem) -> GroupElem:
    return GroupElem(False, 0, t)


def w_elements(model: PlaneModel) -> list[GroupElem]:
    """The 2m elements of the linear dihedral group W."""
    F = model.field
    out = [GroupElem(False, 2 * j, F.zero) for j in range(model.m)]
    for k in range(model.m):
        e = 2 * k if model.even else 2 * k + 1
        out.append(GroupElem(True, e, F.zero))
    return out


# -- walls ------------------------------------------------------------------

def wall_offset(model: PlaneModel, z: CycloElem, k: int) -> CycloElem:
    """Translation part of the reflection fixing the k-wall through z."""
    return z - model.reflection_multiplier(k) * z.conj()


@dataclass(frozen=True)
class Wall:
    """The line {z : z - mu_k conj(z) = off}; a wall iff off in Lambda."""

    k: int
    off: CycloElem

    @classmethod
    def through(cls, model: PlaneModel, z: CycloElem, k: int) -> Wall:
        return cls(k % model.m, wall_offset(model, z, k))

    def side_value(self, model: PlaneModel, z: CycloElem) -> CycloElem:
        """Real element whose sign tells the side of z (0 on the wall)."""
        u = wall_offset(model, z, self.k) - self.off
        return u * model._inv_normal[self.k] / 2

    def side(self, model: PlaneModel, z: CycloElem) -> int:
        return sign_real(self.side_value(model, z))

    def contains(self, model: PlaneModel, z: CycloElem) -> bool:
        return wall_offset(model, z, self.k) == self.off

    def reflection(self, model: PlaneModel) -> GroupElem:
        e = 2 * self.k if model.even else 2 * self.k + 1
        return GroupElem(True, e, self.off)

    def direction(self, model: PlaneModel) -> CycloElem:
        return model.ray_vector(self.k)

    def a_point(self, model: PlaneModel) -> CycloElem:
        """Some point on the line (the foot of the origin)."""
        return self.off / 2

    def reflect(self, model: PlaneModel, z: CycloElem) -> CycloElem:
        return self.reflection(model)(z)


# -- translation groups -----------------------------------------------------

class ScalarGroup:
    """A finitely generated subgroup of the real subfield (as scalars)."""

    def __init__(self, gens: tuple[CycloElem, ...]):
        cleaned = []
        for g in gens:
            s = sign_real(g)
            if s < 0:
                g = -g
            if s != 0 and all(g != h for h in cleaned):
                cleaned.append(g)
        self.gens = tuple(cleaned)

    def is_trivial(self) -> bool:
        return not self.gens

    def element_below(self, bound: CycloElem) -> CycloElem | None:
        """Some 0 < g <= bound in the group, via exact Euclidean reduction."""
        if sign_real(bound) <= 0 or not self.gens:
            return None
        work = sorted(self.gens, key=float_real)
        for _ in range(2000):
            small = work[0]
            if cmp_real(small, bound) <= 0:
                return small
            if len(work) == 1:
                return None
            a, b = work[1], work[0]
            r = a - floor_real(a / b) * b
            work = sorted(
                ([r] if sign_real(r) > 0 else []) + [b] + work[2:],
                key=float_real,
            )
            if len(work) == 1 and cmp_real(work[0], bound) > 0:
                return None
        raise ArithmeticError("scalar group reduction did not converge")

    def element_in(self, lo: CycloElem, hi: CycloElem) -> CycloElem | None:
        """Some group element in [lo, hi], assuming 0 <= lo < hi."""
        width = hi - lo
        g = self.element_below(width)
        if g is None:
            return None
        if sign_real(lo) <= 0:
            return g
        k = floor_real(lo / g) + 1
        cand = k * g
        assert cmp_real(cand, lo) >= 0 and cmp_real(cand, hi) <= 0
        return cand


class LambdaSpec:
    """A W-invariant translation group between Z[zeta'] and the plane.

    base ring: Z[zeta'] with zeta' = zeta_2m (m odd) or zeta_m (m even),
    optionally with 1/2 inverted; `extra` lists additional module
    generators (the spec is closed under W on construction).
    """

    def __init__(self, m: int, half: bool = False,
                 extra: tuple[CycloElem, ...] = (), _dense_hint: bool | None = None):
        self.m = m
        self.model = get_model(m)
        self.half = half
        seen: set[tuple] = set()
        orbit: list[CycloElem] = []
        for g in extra:
            for w in w_elements(self.model):
                img = w(g)
                if not img.is_zero() and img.coeffs not in seen:
                    seen.add(img.coeffs)
                    orbit.append(img)
        self.extra = tuple(sorted(orbit, key=lambda e: e.coeffs))
        self._base_rows = self._base_basis()
        rows = [g.coeffs for g in self._base_rows + list(self.extra)]
        den = 1
        for r in rows:
            for c in r:
                den = den * c.denominator // _gcd(den, c.denominator)
        if half:
            # strip 2-parts: halving is free, so only odd denominators matter
            while den % 2 == 0:
                den //= 2
            scaled = []
            for r in rows:
                vals = [c * den for c in r]
                two = 1
                for v in vals:
                    d = v.denominator
                    assert d & (d - 1) == 0
                    two = max(two, d)
                # 2^k * g generates the same Z[1/2]-module
                scaled.append(tuple(int(v * two) for v in vals))
            int_rows = scaled
        else:
            int_rows = [tuple(int(c * den) for c in r) for r in rows]
        self._den = den
        self._hnf, _, self._pivots = hnf_with_transform(int_rows)
        F = self.model.field
        self._basis = tuple(
            F.elem([Fraction(c, den) for c in row]) for row in self._hnf
        )
        self._dense_hint = _dense_hint
        self._line_cache: dict[tuple, ScalarGroup] = {}

    def _base_basis(self) -> list[CycloElem]:
        F = self.model.field
        if self.m % 2 == 1 or self.m == 2:
            idx = range(F.phi)
        else:
            idx = range(0, F.phi, 2)
        rows = []
        for j in idx:
            rows.append(F.zeta_power(j))
        return rows

    def __repr__(self) -> str:
        tag = "Z[zeta][1/2]" if self.half else "Z[zeta]"
        if self.extra:
            tag += f"+{len(self.extra)} gens"
        return f"LambdaSpec(m={self.m}, {tag})"

    def __eq__(self, other) -> bool:
        """Generated equality: the two specs span the same translation group."""
        if not isinstance(other, LambdaSpec):
            return NotImplemented
        if self.m != other.m:
            return False
        return (all(other.contains(g) for g in self.module_generators())
                and all(self.contains(g) for g in other.module_generators()))

    def module_generators(self) -> tuple[CycloElem, ...]:
        """Canonical reduced generating set (HNF basis rows)."""
        return self._basis

    def contains(self, z: CycloElem) -> bool:
        target = [c * self._den for c in z.coeffs]
        if self.half:
            if not all(is_dyadic(t) for t in target):
                return False
        else:
            if not all(t.denominator == 1 for t in target):
                return False
        x = solve_upper(self._hnf, self._pivots, target)
        if x is None:
            return False
        if self.half:
            return all(is_dyadic(v) for v in x)
        return all(v.denominator == 1 for v in x)

    def is_invariant(self) -> bool:
        gens = self.module_generators()
        for g in gens:
            for w in w_elements(self.model):
                if not self.contains(w(g)):
                    return False
        return True

    # -- density ----------------------------------------------------------

    def is_dense(self) -> bool:
        """Density certificate for the plane closure of the group."""
        if self._dense_hint is not None:
            return self._dense_hint
        if self.m not in CRYSTALLOGRAPHIC:
            return True
        if self.m == 2:
            # rank-2 real span needs the full Z[i] plus halving
            return self.half and len(self.extra) > 0
        return self.half

    def require_dense(self):
        if not self.is_dense():
            raise ValueError(
                f"translation group is not dense in the plane for m={self.m}: "
                "Z[zeta] is discrete exactly for m in {1, 2, 3, 4, 6}; "
                "use Z[zeta][1/2]"
            )

    # -- wall/line machinery ------------------------------------------------

    def line_group(self, direction: CycloElem) -> ScalarGroup:
        """Lambda intersected with R*direction, as scalars s (s*direction in Lambda)."""
        key = direction.coeffs
        if key in self._line_cache:
            return self._line_cache[key]
        F = self.model.field
        gens = self.module_generators()
        dc = direction.conj()
        # z in R*direction  <=>  z*conj(d) - conj(z)*d = 0 (linear over Q)
        rows = []
        den = 1
        imgs = []
        for g in gens:
            img = (g * dc - g.conj() * direction).coeffs
            imgs.append(img)
            for c in img:
                den = den * c.denominator // _gcd(den, c.denominator)
        int_rows = [tuple(int(c * den) for c in img) for img in imgs]
        kern = kernel_basis(int_rows)
        scalars = []
        inv_d = F.one / direction
        for coeffs in kern:
            v = F.zero
            for c, g in zip(coeffs, gens):
                if c:
                    v = v + c * g
            if not v.is_zero():
                scalars.append(v * inv_d)
        group = ScalarGroup(tuple(scalars))
        self._line_cache[key] = group
        return group

    def wall_offsets(self, k: int) -> ScalarGroup:
        """Scalars s such that {side_value = s} is a wall of direction k."""
        model = self.model
        nu = model.normal_vector(k)
        # offsets off in Lambda cap R*nu; side_value scale = off/(2*nu)
        grp = self.line_group(nu)
        return ScalarGroup(tuple(g / 2 for g in grp.gens))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def default_lambda(m: int) -> LambdaSpec:
    """The spec's default translation group, dense whenever possible."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if m == 2:
        model = get_model(2)
        return LambdaSpec(2, half=True, extra=(model.field.zeta,))
    if m in CRYSTALLOGRAPHIC:
        return LambdaSpec(m, half=True)
    return LambdaSpec(m, half=False)


# -- point classification ----------------------------------------------------

@dataclass(frozen=True)
class PointInfo:
    kind: str                      # regular | on_walls | vertex | special_vertex
    wall_dirs: tuple[int, ...]
    rotations: tuple[int, ...]     # j with rotation by 2*pi*j/m fixing the point

    @property
    def is_vertex(self) -> bool:
        return len(self.wall_dirs) >= 2

    @property
    def stabilizer_order(self) -> int:
        return len(self.rotations) + len(self.wall_dirs)


def classify_point(model: PlaneModel, lam: LambdaSpec, z: CycloElem) -> PointInfo:
    F = model.field
    dirs = tuple(k for k in range(model.m)
                 if lam.contains(wall_offset(model, z, k)))
    rots = tuple(j for j in range(model.m)
                 if lam.contains(z - F.zeta_power(2 * j) * z))
    if len(dirs) == model.m:
        kind = "special_vertex"
    elif len(dirs) >= 2:
        kind = "vertex"
    elif len(dirs) == 1:
        kind = "on_walls"
    else:
        kind = "regular"
    return PointInfo(kind, dirs, rots)


def walls_through(model: PlaneModel, lam: LambdaSpec, z: CycloElem) -> list[Wall]:
    return [Wall.through(model, z, k) for k in classify_point(model, lam, z).wall_dirs]


def stabilizer(model: PlaneModel, lam: LambdaSpec, z: CycloElem) -> list[GroupElem]:
    """All elements of W_af fixing z (a copy of a Coxeter subgroup of W)."""
    info = classify_point(model, lam, z)
    F = model.field
    out = []
    for j in info.rotations:
        out.append(GroupElem(False, 2 * j, z - F.zeta_power(2 * j) * z))
    for k in info.wall_dirs:
        out.append(Wall.through(model, z, k).reflection(model))
    return out


def is_vertex(model: PlaneModel, lam: LambdaSpec, z: CycloElem) -> bool:
    count = 0
    for k in range(model.m):
        if lam.contains(wall_offset(model, z, k)):
            count += 1
            if count >= 2:
                return True
    return False


def is_special_vertex(model: PlaneModel, lam: LambdaSpec, z: CycloElem) -> bool:
    return all(lam.contains(wall_offset(model, z, k)) for k in range(model.m))


# -- specialization closure ---------------------------------------------------

def vertex_from_walls(model: PlaneModel, k: int, off_k: CycloElem,
                      j: int, off_j: CycloElem) -> CycloElem:
    """Intersection point of the k-wall and j-wall with given offsets."""
    mu_k = model.reflection_multiplier(k)
    mu_j = model.reflection_multiplier(j)
    zc = (off_k - off_j) / (mu_j - mu_k)
    return zc.conj()


def _pair_vertex_generators(model: PlaneModel, lam: LambdaSpec):
    """Generating vertices v(k, a; j, 0) of the vertex translation group."""
    m = model.m
    out = []
    for k in range(m):
        nu = model.normal_vector(k)
        offs = lam.line_group(nu)
        for j in range(m):
            if j == k:
                continue
            for a in offs.gens:
                v = vertex_from_walls(model, k, a * nu, j, model.field.zero)
                if not v.is_zero():
                    out.append(v)
    return out


def is_special_complex(model: PlaneModel, lam: LambdaSpec) -> bool:
    """Every vertex of (A, Lambda x| W) is special.

    The vertex set is the group generated by pairwise wall intersections,
    so it suffices to test specialness on its generators.
    """
    for v in _pair_vertex_generators(model, lam):
        if not is_special_vertex(model, lam, v):
            return False
    return True


def specialize_closure(lam: LambdaSpec, stages: int) -> LambdaSpec:
    """Climb the specialization tower; stops early once special."""
    if stages < 0:
        raise ValueError("stages must be >= 0")
    cur = lam
    for _ in range(stages):
        if is_special_complex(cur.model, cur):
            return cur
        gens = _pair_vertex_generators(cur.model, cur)
        cur = LambdaSpec(cur.m, half=cur.half,
                         extra=cur.extra + tuple(gens),
                         _dense_hint=True if cur.is_dense() else None)
    return cur
