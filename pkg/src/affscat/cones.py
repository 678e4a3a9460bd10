"""Rational polyhedral cones in V* with exact double-description conversion.

A Cone is stored by linear constraints: equalities <x, e> = 0 and
inequalities <x, g> <= 0, where e, g are covectors paired with points by the
plain coordinatewise dot product.  Callers working with root-lattice
functionals convert them to covectors first (multiply by the symmetrizers).

Generators (lineality basis + extreme rays) are computed by the standard
double description method with the zero-set adjacency test, which is exact
over the rationals and comfortable at the small ranks used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .linalg import (
    Vec,
    is_zero_vec,
    kernel_basis,
    primitive_vector,
    rank,
    rref,
    solve_linear,
    vdot,
)


@dataclass(frozen=True)
class Cone:
    dim_ambient: int
    eqs: tuple  # covectors e with <x, e> = 0
    ineqs: tuple  # covectors g with <x, g> <= 0

    @staticmethod
    def from_constraints(dim, eqs=(), ineqs=()) -> "Cone":
        return Cone(
            dim,
            tuple(tuple(Fraction(c) for c in e) for e in eqs),
            tuple(tuple(Fraction(c) for c in g) for g in ineqs),
        )

    @staticmethod
    def from_rays(dim, rays, lineality=()) -> "Cone":
        """Cone generated by rays plus a lineality space, via dual description."""
        dual_eqs = [tuple(Fraction(c) for c in v) for v in lineality]
        dual_ineqs = [tuple(Fraction(c) for c in r) for r in rays]
        # Dual cone {g : <l,g> = 0, <r,g> <= 0}; its generators give our constraints.
        lin, drays = _double_description(dim, dual_eqs, dual_ineqs)
        return Cone.from_constraints(dim, eqs=lin, ineqs=drays)

    @staticmethod
    def full_space(dim) -> "Cone":
        return Cone.from_constraints(dim)

    # -- generators ----------------------------------------------------------

    @cached_property
    def generators(self):
        """(lineality basis, extreme rays), rays primitive and reduced mod lineality."""
        lin, rays = _double_description(self.dim_ambient, self.eqs, self.ineqs)
        return _canonicalize_generators(lin, rays)

    @property
    def lineality(self):
        return self.generators[0]

    @property
    def rays(self):
        return self.generators[1]

    @cached_property
    def dim(self) -> int:
        lin, rays = self.generators
        return rank([list(v) for v in lin] + [list(r) for r in rays])

    def is_empty_but_origin(self) -> bool:
        return self.dim == 0

    # -- point queries --------------------------------------------------------

    def contains(self, x: Vec) -> bool:
        return all(vdot(x, e) == 0 for e in self.eqs) and all(
            vdot(x, g) <= 0 for g in self.ineqs
        )

    @cached_property
    def _implicit_ineqs(self):
        """Indices of inequalities that hold with equality on the whole cone."""
        lin, rays = self.generators
        gens = list(lin) + [tuple(-c for c in v) for v in lin] + list(rays)
        out = set()
        for idx, g in enumerate(self.ineqs):
            if all(vdot(v, g) == 0 for v in gens):
                out.add(idx)
        return out

    def relint_contains(self, x: Vec) -> bool:
        if not all(vdot(x, e) == 0 for e in self.eqs):
            return False
        for idx, g in enumerate(self.ineqs):
            val = vdot(x, g)
            if idx in self._implicit_ineqs:
                if val != 0:
                    return False
            elif val >= 0:
                return False
        return True

    def relint_point(self) -> Vec:
        """A rational point in the relative interior (the origin for the zero cone)."""
        lin, rays = self.generators
        if not rays:
            return tuple(Fraction(0) for _ in range(self.dim_ambient))
        acc = [Fraction(0)] * self.dim_ambient
        for r in rays:
            for i, c in enumerate(r):
                acc[i] += c
        return tuple(acc)

    # -- cone relations --------------------------------------------------------

    def contains_cone(self, other: "Cone") -> bool:
        lin, rays = other.generators
        for v in lin:
            if not (self.contains(v) and self.contains(tuple(-c for c in v))):
                return False
        return all(self.contains(r) for r in rays)

    def intersect(self, other: "Cone") -> "Cone":
        return Cone(self.dim_ambient, self.eqs + other.eqs, self.ineqs + other.ineqs)

    def negate(self) -> "Cone":
        return Cone(
            self.dim_ambient,
            self.eqs,
            tuple(tuple(-c for c in g) for g in self.ineqs),
        )

    @cached_property
    def canonical_key(self):
        lin, rays = self.generators
        lin_rows = tuple(tuple(r) for r in rref([list(v) for v in lin]))
        return (lin_rows, tuple(sorted(rays)))

    def same_cone(self, other: "Cone") -> bool:
        return self.canonical_key == other.canonical_key

    def span_covectors(self):
        """Covectors cutting out the linear span (for tangent-space work)."""
        lin, rays = self.generators
        gens = [list(v) for v in lin] + [list(r) for r in rays]
        if not gens:
            gens = [[Fraction(0)] * self.dim_ambient]
        return kernel_basis(gens)


def _canonicalize_generators(lin, rays):
    lin_basis = [tuple(r) for r in rref([list(v) for v in lin])]
    reduced = []
    seen = set()
    for r in rays:
        rr = _reduce_mod_lineality(r, lin_basis)
        if is_zero_vec(rr):
            continue
        rr = primitive_vector(rr)
        if rr not in seen:
            seen.add(rr)
            reduced.append(rr)
    extreme = [r for r in reduced if not _is_nonneg_combo(r, [o for o in reduced if o != r])]
    return tuple(lin_basis), tuple(sorted(extreme))


def _is_nonneg_combo(r, others):
    """Whether r is a nonnegative combination of the other rays (all reduced mod
    lineality already).  Caratheodory: it suffices to try independent subsets."""
    from itertools import combinations

    if not others:
        return False
    dim_span = rank([list(o) for o in others] + [list(r)])
    for size in range(1, min(dim_span, len(others)) + 1):
        for subset in combinations(others, size):
            rows = [list(col) for col in zip(*subset)]  # columns are subset rays
            if rank([list(s) for s in subset]) < size:
                continue
            sol = solve_linear(rows, list(r))
            if sol is not None and all(t >= 0 for t in sol):
                # Confirm exactly (solve_linear gives one solution; system is
                # injective since the subset is independent).
                combo = [sum(subset[i][k] * sol[i] for i in range(size)) for k in range(len(r))]
                if tuple(combo) == tuple(Fraction(c) for c in r):
                    return True
    return False


def _reduce_mod_lineality(v, lin_rref):
    out = [Fraction(c) for c in v]
    for row in lin_rref:
        p = next(i for i, x in enumerate(row) if x != 0)
        coef = out[p] / row[p]
        if coef != 0:
            out = [a - coef * b for a, b in zip(out, row)]
    return tuple(out)


def _double_description(dim, eqs, ineqs):
    """Generators (lineality, rays) of {x : <x,e>=0, <x,g><=0}."""
    lin = [tuple(v) for v in kernel_basis([list(e) for e in eqs])] if eqs else [
        tuple(Fraction(1) if i == j else Fraction(0) for i in range(dim)) for j in range(dim)
    ]
    rays: list = []
    processed: list = []
    for g in ineqs:
        lin, rays = _add_halfspace(lin, rays, g, processed)
        processed.append(g)
    return lin, rays


def _add_halfspace(lin, rays, g, processed):
    pierced = next((l for l in lin if vdot(l, g) != 0), None)
    if pierced is not None:
        # Lineality drops by one; keep the in-hyperplane part and one new ray.
        val0 = vdot(pierced, g)
        witness = tuple(-c for c in pierced) if val0 > 0 else pierced  # <witness, g> < 0
        wval = vdot(witness, g)
        new_lin = []
        for l in lin:
            if l is pierced:
                continue
            coef = Fraction(vdot(l, g), wval)
            new_lin.append(tuple(a - coef * b for a, b in zip(l, witness)))
        new_rays = []
        for r in rays:
            coef = Fraction(vdot(r, g), wval)
            new_rays.append(tuple(a - coef * b for a, b in zip(r, witness)))
        new_rays.append(witness)
        return new_lin, _dedupe_rays(new_rays)

    neg = [r for r in rays if vdot(r, g) < 0]
    zero = [r for r in rays if vdot(r, g) == 0]
    pos = [r for r in rays if vdot(r, g) > 0]
    if not pos:
        return lin, rays
    combos = []
    for rp in pos:
        vp = vdot(rp, g)
        for rn in neg:
            if not _adjacent(rp, rn, rays, processed, lin):
                continue
            vn = vdot(rn, g)
            combo = tuple(vp * a - vn * b for a, b in zip(rn, rp))
            if not is_zero_vec(combo):
                combos.append(primitive_vector(combo))
    return lin, _dedupe_rays(neg + zero + combos)


def _adjacent(r1, r2, rays, processed, lin):
    """Zero-set adjacency: no third ray is tight on every constraint tight at both."""
    tight = [g for g in processed if vdot(r1, g) == 0 and vdot(r2, g) == 0]
    for r3 in rays:
        if r3 is r1 or r3 is r2:
            continue
        if all(vdot(r3, g) == 0 for g in tight):
            return False
    return True


def _dedupe_rays(rays):
    seen = set()
    out = []
    for r in rays:
        if is_zero_vec(r):
            continue
        key = primitive_vector(r)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out
