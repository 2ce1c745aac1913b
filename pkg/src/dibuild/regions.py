"""Convex regions of the model plane bounded by walls.

A region is an intersection of constraints `sense * (s_k(z) - c) >= 0`
(or equalities), where s_k is the canonical signed-offset functional of
wall direction k: s_k(z) = (z - mu_k * conj(z)) / (2 * nu_k), a real
field element, zero exactly on the direction-k line through the origin.

Everything the gluing machinery needs reduces to exact sign tests of
these functionals: membership, segment clipping, germ cones at a point,
and transport by elements of W_af.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coxeter import GroupElem, PlaneModel, Wall, wall_offset
from .cyclo import CycloElem, cmp_real, sign_real


def side_functional(model: PlaneModel, k: int, z: CycloElem) -> CycloElem:
    """s_k(z): signed offset of z against the k-line through the origin."""
    u = z - model.reflection_multiplier(k) * z.conj()
    return u * model._inv_normal[k % model.m] / 2


def side_linear(model: PlaneModel, k: int, d: CycloElem) -> CycloElem:
    """Directional derivative of s_k along d (equals s_k(d))."""
    return side_functional(model, k, d)


@dataclass(frozen=True)
class Constraint:
    k: int
    c: CycloElem
    sense: int  # +1 / -1 for inequalities, 0 for equality

    def value(self, model: PlaneModel, z: CycloElem) -> CycloElem:
        return side_functional(model, self.k, z) - self.c

    def holds(self, model: PlaneModel, z: CycloElem) -> bool:
        s = sign_real(self.value(model, z))
        if self.sense == 0:
            return s == 0
        return s * self.sense >= 0

    def is_active(self, model: PlaneModel, z: CycloElem) -> bool:
        return sign_real(self.value(model, z)) == 0


@dataclass(frozen=True)
class Region:
    """Closed convex subset of A cut out by wall constraints."""

    constraints: tuple[Constraint, ...]

    # -- constructors ----------------------------------------------------

    @staticmethod
    def whole_plane() -> Region:
        return Region(())

    @staticmethod
    def half_plane(model: PlaneModel, k: int, c: CycloElem, sense: int) -> Region:
        return Region((Constraint(k, c, sense),))

    @staticmethod
    def wall_line(model: PlaneModel, wall: Wall) -> Region:
        c = (wall.off * model._inv_normal[wall.k]) / 2
        return Region((Constraint(wall.k, c, 0),))

    @staticmethod
    def line_through(model: PlaneModel, z: CycloElem, k: int) -> Region:
        return Region((Constraint(k, side_functional(model, k, z), 0),))

    @staticmethod
    def point(model: PlaneModel, z: CycloElem) -> Region:
        c0 = Constraint(0, side_functional(model, 0, z), 0)
        c1 = Constraint(1, side_functional(model, 1, z), 0)
        return Region((c0, c1))

    @staticmethod
    def segment(model: PlaneModel, a: CycloElem, b: CycloElem) -> Region:
        """Closed segment on a wall-direction line through a and b."""
        d = b - a
        k = None
        for kk in range(model.m):
            if sign_real(side_linear(model, kk, d)) == 0:
                k = kk
                break
        if k is None:
            raise ValueError("segment is not parallel to a wall direction")
        eq = Constraint(k, side_functional(model, k, a), 0)
        # cut along the line by constraints of a transversal direction
        kt = (k + 1) % model.m
        fa = side_functional(model, kt, a)
        fb = side_functional(model, kt, b)
        lo, hi = (fa, fb) if cmp_real(fa, fb) <= 0 else (fb, fa)
        return Region((eq, Constraint(kt, lo, 1), Constraint(kt, hi, -1)))

    @staticmethod
    def ray(model: PlaneModel, a: CycloElem, direction: CycloElem) -> Region:
        """Closed ray from a in a wall direction."""
        k = None
        for kk in range(model.m):
            if sign_real(side_linear(model, kk, direction)) == 0:
                k = kk
                break
        if k is None:
            raise ValueError("ray is not parallel to a wall direction")
        eq = Constraint(k, side_functional(model, k, a), 0)
        kt = (k + 1) % model.m
        sense = sign_real(side_linear(model, kt, direction))
        return Region((eq, Constraint(kt, side_functional(model, kt, a), sense)))

    @staticmethod
    def from_halfplanes(items) -> Region:
        return Region(tuple(Constraint(k, c, sense) for k, c, sense in items))

    # -- queries -----------------------------------------------------------

    def contains(self, model: PlaneModel, z: CycloElem) -> bool:
        return all(c.holds(model, z) for c in self.constraints)

    def dim_at(self, model: PlaneModel, z: CycloElem) -> int:
        """Local dimension of the region at a member point."""
        dirs = {c.k for c in self.constraints
                if c.sense == 0 or c.is_active(model, z)}
        eq_dirs = {c.k for c in self.constraints if c.sense == 0}
        if len(eq_dirs) >= 2:
            return 0
        if len(eq_dirs) == 1:
            # 1-dim unless endpoint constraints pinch to the point
            cone = self.germ_ray_flags(model, z)
            return 1 if any(cone) else 0
        cone = self.germ_ray_flags(model, z)
        # 2-dim iff some open sector survives
        return 2 if self._has_sector(model, z) else (1 if any(cone) else 0)

    def is_line_like(self) -> bool:
        return sum(1 for c in self.constraints if c.sense == 0) == 1

    def is_point_like(self) -> bool:
        return sum(1 for c in self.constraints if c.sense == 0) >= 2

    def germ_ray_flags(self, model: PlaneModel, z: CycloElem) -> list[bool]:
        """For each of the 2m rays: does the germ of the region include it?"""
        m2 = 2 * model.m
        flags = []
        active = [(c, c.is_active(model, z)) for c in self.constraints]
        for r in range(m2):
            d = model.ray_vector(r)
            ok = True
            for c, act in active:
                if c.sense == 0:
                    if sign_real(side_linear(model, c.k, d)) != 0:
                        ok = False
                        break
                elif act:
                    if sign_real(side_linear(model, c.k, d)) * c.sense < 0:
                        ok = False
                        break
            flags.append(ok)
        return flags

    def germ_sector_flags(self, model: PlaneModel, z: CycloElem) -> list[bool]:
        """For each open sector (between ray s and ray s+1): germ inclusion."""
        m2 = 2 * model.m
        flags = []
        active = [(c, c.is_active(model, z)) for c in self.constraints]
        for s in range(m2):
            # interior probe direction of sector s
            d = model.ray_vector(s) + model.ray_vector((s + 1) % m2)
            ok = True
            for c, act in active:
                if c.sense == 0:
                    ok = False
                    break
                if act and sign_real(side_linear(model, c.k, d)) * c.sense < 0:
                    ok = False
                    break
            flags.append(ok)
        return flags

    def _has_sector(self, model: PlaneModel, z: CycloElem) -> bool:
        return any(self.germ_sector_flags(model, z))

    def clip_segment(self, model: PlaneModel, a: CycloElem, b: CycloElem):
        """Parameter range [t0, t1] of {a + t(b-a)} in the region, or None.

        Parameters are exact real field elements in [0, 1].
        """
        F = model.field
        t0, t1 = F.zero, F.one
        d = b - a
        for c in self.constraints:
            v0 = c.value(model, a)
            lin = side_linear(model, c.k, d)
            s_lin = sign_real(lin)
            if s_lin == 0:
                ok = sign_real(v0) == 0 if c.sense == 0 else sign_real(v0) * c.sense >= 0
                if not ok:
                    return None
                continue
            t = -(v0 / lin)
            if c.sense == 0:
                if cmp_real(t, t0) > 0:
                    t0 = t
                if cmp_real(t, t1) < 0:
                    t1 = t
            elif s_lin * c.sense > 0:
                if cmp_real(t, t0) > 0:
                    t0 = t
            else:
                if cmp_real(t, t1) < 0:
                    t1 = t
        if cmp_real(t0, t1) > 0:
            return None
        return t0, t1

    def apply(self, model: PlaneModel, g: GroupElem) -> Region:
        """Image region under an isometry of the model plane."""
        out = []
        for c in self.constraints:
            # the line {s_k = c} maps to a line of direction k'
            p0 = c.c * model.normal_vector(c.k)
            # p0 satisfies s_k(p0) = c; build the image wall through g(p0)
            img_pt = g(p0)
            d_img = g.linear(model.ray_vector(c.k))
            k2 = None
            for kk in range(model.m):
                if sign_real(side_linear(model, kk, d_img)) == 0:
                    k2 = kk
                    break
            assert k2 is not None, "isometry does not preserve wall directions"
            c2 = side_functional(model, k2, img_pt)
            if c.sense == 0:
                out.append(Constraint(k2, c2, 0))
            else:
                # transported sense: evaluate on the image of an interior probe
                probe = p0 + c.sense * model.normal_vector(c.k)
                s2 = sign_real(side_functional(model, k2, g(probe)) - c2)
                assert s2 != 0
                out.append(Constraint(k2, c2, s2))
        return Region(tuple(out))

    def intersect(self, other: Region) -> Region:
        return Region(self.constraints + other.constraints)

    def translate(self, model: PlaneModel, t: CycloElem) -> Region:
        return self.apply(model, GroupElem(False, 0, t))
