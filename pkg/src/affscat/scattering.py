"""Cluster scattering diagrams of acyclic affine type.

build_dcscat assembles walls from shards of join-irreducible c- and
c^{-1}-sortable elements plus the imaginary wall; build_easy_scat assembles
the same diagram from the almost-positive roots and the cutting relation.
Consistency is checked by composing wall crossings around codimension-2
faces, ordered angularly in an exact transverse plane.  rank2_complete runs
the order-by-order completion in rank 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cmp_to_key

from .almost_positive import APContext
from .cartan import ExchangeMatrix, NotAcyclic, NotAffine, exchange_to_cartan
from .cones import Cone
from .coxeter import CoxeterContext, coxeter_context
from .linalg import extend_to_basis, kernel_basis, primitive_vector, vdot
from .series import (
    CrossingData,
    MonomialExpr,
    TruncatedSeries,
    f_inf_series,
    path_product,
)
from .shards import ShardContext
from .sortable import SortableContext
from .weyl import CapExceeded, WeylContext


ORIGIN_INITIAL = "initial"
ORIGIN_SORTABLE = "sortable_ji"
ORIGIN_INV_SORTABLE = "inv_sortable_ji"
ORIGIN_IMAGINARY = "imaginary"
ORIGIN_RANK2 = "rank2_completed"


class DegenerateFace(RuntimeError):
    pass


@dataclass(frozen=True)
class Wall:
    normal: tuple  # primitive positive root in Q
    cone: Cone
    ineq_roots: tuple  # root-lattice functionals phi with <x, phi> <= 0 on the cone
    f: TruncatedSeries
    origin: str

    def key(self):
        return (self.normal, self.cone.canonical_key)

    def full_key(self):
        return (self.normal, self.cone.canonical_key, self.f.coeffs)


@dataclass(frozen=True)
class ScatDiagram:
    cartan_n: int
    walls: tuple
    height_cap: int
    truncation: int
    provenance: dict = field(compare=False, default_factory=dict)

    def wall_by_normal(self, beta):
        return [w for w in self.walls if w.normal == tuple(beta)]

    def drop_imaginary(self) -> "ScatDiagram":
        kept = tuple(w for w in self.walls if w.origin != ORIGIN_IMAGINARY)
        return replace(self, walls=kept)

    def same_walls(self, other: "ScatDiagram") -> bool:
        return sorted(w.full_key() for w in self.walls) == sorted(
            w.full_key() for w in other.walls
        )


class _Builder:
    def __init__(self, cox: CoxeterContext, height_cap: int, truncation: int):
        if cox.type_info.kind != "affine":
            raise NotAffine("scattering construction requires affine type")
        self.cox = cox
        self.cartan = cox.cartan
        self.n = cox.n
        self.H = height_cap
        self.k = truncation
        self.weyl = WeylContext(self.cartan)
        self.shards = ShardContext(self.weyl)
        self.ap = APContext(cox)

    def covector(self, phi):
        return self.shards.covector(phi)

    def series_for(self, beta) -> TruncatedSeries:
        ht = sum(beta)
        return TruncatedSeries.one_plus_q(beta, self.k // ht if ht else 0)

    def imaginary_wall(self) -> Wall:
        delta = self.cox.type_info.delta
        aff = self.cox.type_info.aff_index
        # Finite subsystem roots: supported off the affine index.  The finite
        # root system is closed off by a plain orbit closure (it terminates).
        fin_pos = [
            r
            for r in self.cartan.real_roots_up_to_height(self._finite_height_bound())
            if r[aff] == 0
        ]
        ineq_roots = []
        for r in fin_pos:
            val = self.cox.omega(r, delta)
            if val > 0:
                ineq_roots.append(r)
            elif val < 0:
                ineq_roots.append(tuple(-c for c in r))
        cone = Cone.from_constraints(
            self.n,
            eqs=[self.covector(delta)],
            ineqs=[self.covector(g) for g in ineq_roots],
        )
        f = f_inf_series(delta, self.cox.type_info.is_a2k2, self.k)
        return Wall(
            normal=delta,
            cone=cone,
            ineq_roots=tuple(sorted(ineq_roots)),
            f=f,
            origin=ORIGIN_IMAGINARY,
        )

    def _finite_height_bound(self) -> int:
        # Every root of the finite parabolic has height < n * max mark of the
        # highest root; twice the delta height is a comfortable exact bound.
        return 2 * sum(self.cox.type_info.delta) + self.n

    def expected_normals(self):
        return [b for b in self.ap.ap_positive_real(self.H) if sum(b) <= self.H]

    def ji_walls(self, cox: CoxeterContext, origin: str, length_cap: int):
        sc = SortableContext(self.weyl, cox)
        found = sc.ji_sortables(self.H, length_cap)
        walls = []
        for root, j in sorted(found.items()):
            shard = self.shards.shard_from_ji(j)
            cone, ineqs = shard.cone, shard.cut_list
            if origin == ORIGIN_INV_SORTABLE:
                cone = cone.negate()
                ineqs = tuple(tuple(-c for c in g) for g in ineqs)
            tag = ORIGIN_INITIAL if sum(root) == 1 else origin
            walls.append(
                Wall(
                    normal=root,
                    cone=cone,
                    ineq_roots=tuple(sorted(ineqs)),
                    f=self.series_for(root),
                    origin=tag,
                )
            )
        return walls


def build_dcscat(bmat: ExchangeMatrix, height_cap: int, truncation: int) -> ScatDiagram:
    """Walls Sh(j) for c-sortable join-irreducibles, -Sh(j') for c^{-1}-sortable
    ones (cover roots up to the height cap), and the imaginary wall; duplicates
    merged by exact cone equality."""
    if not bmat.is_acyclic():
        raise NotAcyclic("the shard construction needs an acyclic exchange matrix")
    cox = coxeter_context(bmat)
    builder = _Builder(cox, height_cap, truncation)
    expected = builder.expected_normals()
    length_cap = max(2 * height_cap, 4)
    while True:
        c_walls = builder.ji_walls(cox, ORIGIN_SORTABLE, length_cap)
        inv_walls = builder.ji_walls(cox.inverse(), ORIGIN_INV_SORTABLE, length_cap)
        merged: dict = {}
        overlap = 0
        for w in c_walls + inv_walls:
            key = w.key()
            if key in merged:
                overlap += 1
                continue
            merged[key] = w
        covered = {w.normal for w in merged.values()}
        missing = [b for b in expected if b not in covered]
        if not missing:
            break
        # every positive AP_c root is hit by a c- or c^{-1}-sortable
        # join-irreducible; a miss means the length cap was too small
        length_cap *= 2
        if length_cap > 64 * (height_cap + 2):
            raise CapExceeded(f"join-irreducible enumeration missed normals {missing}")
    walls = list(merged.values()) + [builder.imaginary_wall()]
    hyperplanes = [w.normal for w in walls]
    assert len(set(hyperplanes)) == len(hyperplanes), "one wall per hyperplane"
    out = ScatDiagram(
        cartan_n=builder.n,
        walls=tuple(sorted(walls, key=lambda w: (sum(w.normal), w.normal))),
        height_cap=height_cap,
        truncation=truncation,
        provenance={"construction": "dcscat", "overlap_walls": overlap},
    )
    out.provenance["non_integer_series"] = [list(b) for b in integrality_audit(out)]
    return out


def build_easy_scat(bmat: ExchangeMatrix, height_cap: int, truncation: int) -> ScatDiagram:
    """One wall d_beta per positive root of AP_c up to the height cap, plus the
    imaginary wall."""
    if not bmat.is_acyclic():
        raise NotAcyclic("the d_beta construction needs an acyclic exchange matrix")
    cox = coxeter_context(bmat)
    builder = _Builder(cox, height_cap, truncation)
    walls = []
    for beta in builder.expected_normals():
        shard = builder.shards.shard_from_root(beta, cox)
        tag = ORIGIN_INITIAL if sum(beta) == 1 else ORIGIN_SORTABLE
        walls.append(
            Wall(
                normal=beta,
                cone=shard.cone,
                ineq_roots=shard.cut_list,
                f=builder.series_for(beta),
                origin=tag,
            )
        )
    walls.append(builder.imaginary_wall())
    out = ScatDiagram(
        cartan_n=builder.n,
        walls=tuple(sorted(walls, key=lambda w: (sum(w.normal), w.normal))),
        height_cap=height_cap,
        truncation=truncation,
        provenance={"construction": "easy_scat"},
    )
    out.provenance["non_integer_series"] = [list(b) for b in integrality_audit(out)]
    return out


def classify_wall(wall: Wall, cox: CoxeterContext) -> dict:
    """Incoming/outgoing and gregariousness, by exact cone membership."""
    omega_vec = cox.omega_covector(wall.normal)
    neg = tuple(-c for c in omega_vec)
    incoming = wall.cone.contains(omega_vec)
    gregarious = wall.cone.relint_contains(neg)
    return {"incoming": incoming, "outgoing": not incoming, "gregarious": gregarious}


# -- loop machinery -----------------------------------------------------------


def _angle_cmp(d1, d2):
    def half(d):
        a, b = d
        return 0 if (b > 0 or (b == 0 and a > 0)) else 1

    h1, h2 = half(d1), half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


@dataclass
class LoopCrossing:
    wall: Wall
    direction: tuple  # (a, b) coordinates in the transverse plane
    sign: int  # +1 crossing against the normal, -1 with it


def _crossing_data(wall: Wall, cartan, b_rows, k: int) -> CrossingData:
    coroot = cartan.primitive_in_coroot_lattice(wall.normal)
    return CrossingData(f=wall.f, coroot=tuple(int(c) for c in coroot), b_rows=b_rows)


def loop_crossings(walls, base_point, u1, u2, covector):
    """Walls crossed by a small counterclockwise loop around base_point inside
    the plane spanned by u1, u2, in angular order with crossing signs.

    Each wall must contain base_point; its trace near the base point in the
    plane is the tangent cone there, a ray or a full line.
    """
    events = []
    for w in walls:
        # Trace line: plane directions annihilated by every equality of the wall.
        rows = [[vdot(u1, e), vdot(u2, e)] for e in w.cone.eqs]
        ker = kernel_basis(rows)
        assert len(ker) == 1, "wall trace in the transverse plane must be a line"
        line_dir = primitive_vector(ker[0])
        tight = [g for g in w.cone.ineqs if vdot(base_point, g) == 0]
        hits = 0
        for cand in (line_dir, tuple(-c for c in line_dir)):
            vec = tuple(cand[0] * x + cand[1] * y for x, y in zip(u1, u2))
            if all(vdot(vec, g) <= 0 for g in tight):
                events.append(LoopCrossing(wall=w, direction=cand, sign=0))
                hits += 1
        assert hits >= 1, "wall containing the face must cross the loop"
    # Region separators keep every angular gap below pi.
    seps = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)),
            (Fraction(-1), Fraction(0)), (Fraction(0), Fraction(-1))]
    dirs = sorted(
        {primitive_vector(e.direction) for e in events}
        | {primitive_vector(s) for s in seps},
        key=cmp_to_key(_angle_cmp),
    )
    ordered = sorted(events, key=cmp_to_key(lambda e1, e2: _angle_cmp(e1.direction, e2.direction)))

    def arc_dir_before(direction):
        d = primitive_vector(direction)
        idx = dirs.index(d)
        prev = dirs[idx - 1]
        return tuple(a + b for a, b in zip(prev, d))

    out = []
    for e in ordered:
        before = arc_dir_before(e.direction)
        cov = covector(e.wall.normal)
        vec = tuple(before[0] * x + before[1] * y for x, y in zip(u1, u2))
        val = vdot(vec, cov)
        assert val != 0, "arc sample fell on the wall"
        sign = 1 if val > 0 else -1
        out.append(LoopCrossing(wall=e.wall, direction=e.direction, sign=sign))
    return out


def _generators(n, k):
    gens = []
    for i in range(n):
        lam = tuple(1 if j == i else 0 for j in range(n))
        gens.append(MonomialExpr.x_monomial(n, k, lam))
        gens.append(MonomialExpr.yhat_monomial(n, k, lam))
    return gens


def _b_rows_from_cox(cox: CoxeterContext):
    return tuple(
        tuple(cox.omega_entry(i, j) for j in range(cox.n)) for i in range(cox.n)
    )


def check_consistency(diagram: ScatDiagram, truncation: int, cox: CoxeterContext) -> dict:
    """Compose wall crossings around every codimension-2 face of the diagram
    and report which loops fail to be the identity mod m^(truncation+1)."""
    n = diagram.cartan_n
    k = truncation
    walls = [w for w in diagram.walls if sum(w.normal) <= k]
    b_rows = _b_rows_from_cox(cox)
    faces = _codim2_faces(walls, n)
    report = {"faces": len(faces), "failures": [], "checked": 0}
    for face in faces:
        containing = [w for w in walls if w.cone.contains_cone(face)]
        if len(containing) < 2:
            continue
        base = _generic_relint_point(face, [w for w in walls if not w.cone.contains_cone(face)])
        span = list(face.lineality) + list(face.rays)
        try:
            u1, u2 = extend_to_basis(span, n)
        except ValueError as exc:
            raise DegenerateFace(f"no exact transverse plane at {face.rays}") from exc
        crossings = loop_crossings(containing, base, u1, u2, _cone_covector(cox))
        seq = [
            (_crossing_data(e.wall, cox.cartan, b_rows, k), e.sign) for e in crossings
        ]
        ok = True
        for gen in _generators(n, k):
            if path_product(gen, seq, k) != gen:
                ok = False
                break
        report["checked"] += 1
        if not ok:
            report["failures"].append(
                {
                    "face_rays": [list(map(int, r)) for r in face.rays],
                    "walls": [list(w.normal) for w in containing],
                }
            )
    report["consistent"] = not report["failures"]
    return report


def _cone_covector(cox):
    cartan = cox.cartan

    def cov(phi):
        return primitive_vector(tuple(cartan.d[i] * phi[i] for i in range(cartan.n)))

    return cov


def _codim2_faces(walls, n):
    faces = []
    seen = set()
    for w1, w2 in itertools.combinations(walls, 2):
        if w1.normal == w2.normal:
            continue
        meet = w1.cone.intersect(w2.cone)
        if meet.dim != n - 2:
            continue
        key = meet.canonical_key
        if key not in seen:
            seen.add(key)
            faces.append(meet)
    return faces


def _generic_relint_point(face: Cone, other_walls):
    """A relative-interior point of the face avoiding all walls that do not
    contain the face (deterministic perturbation search)."""
    lin, rays = face.generators
    if not rays and not lin:
        return tuple(Fraction(0) for _ in range(face.dim_ambient))
    gens = list(rays) + list(lin)
    for attempt in range(1, 60):
        point = [Fraction(0)] * face.dim_ambient
        for i, r in enumerate(gens):
            scale = Fraction(attempt ** (i + 1) + i + 1, attempt)
            if i >= len(rays) and attempt % 2 == 0:
                scale = -scale  # lineality directions may need both signs
            for j, c in enumerate(r):
                point[j] += scale * c
        p = tuple(point)
        if not face.relint_contains(p):
            continue
        if all(not w.cone.contains(p) for w in other_walls):
            return p
    raise AssertionError("could not find a generic relative-interior point")


# -- rank-2 completion -----------------------------------------------------------


def rank2_complete(bmat: ExchangeMatrix, truncation: int) -> ScatDiagram:
    """Order-by-order consistency completion of the rank-2 diagram, exact
    through total yhat-degree `truncation`."""
    assert bmat.n == 2, "completion is implemented for rank 2 only"
    cartan = exchange_to_cartan(bmat)
    n, k = 2, truncation
    b_rows = bmat.b

    def covector(phi):
        return primitive_vector(tuple(cartan.d[i] * phi[i] for i in range(2)))

    def ray_wall_shape(beta, direction):
        # The ray through `direction` inside beta-perp, cut out by a
        # root-lattice functional negative on the ray.
        j = next(i for i in range(2) if direction[i] != 0)
        sgn = 1 if direction[j] > 0 else -1
        phi = tuple(-sgn if i == j else 0 for i in range(2))
        cone = Cone.from_constraints(2, eqs=[covector(beta)], ineqs=[covector(phi)])
        return cone, (phi,)

    walls: dict = {}
    for i in range(2):
        beta = cartan.simple_root(i)
        walls[("line", beta)] = Wall(
            normal=beta,
            cone=Cone.from_constraints(2, eqs=[covector(beta)]),
            ineq_roots=(),
            f=TruncatedSeries.one_plus_q(beta, k),
            origin=ORIGIN_INITIAL,
        )

    def outgoing_direction(beta):
        return primitive_vector(
            tuple(-sum(b_rows[i][j] * beta[j] for j in range(2)) for i in range(2))
        )

    def loop_seq(current_walls):
        base = (Fraction(0), Fraction(0))
        u1 = (Fraction(1), Fraction(0))
        u2 = (Fraction(0), Fraction(1))
        crossings = loop_crossings(current_walls, base, u1, u2, covector)
        return [
            (_crossing_data(e.wall, cartan, b_rows, k), e.sign) for e in crossings
        ]

    for degree in range(2, k + 1):
        # walls with normal height > degree act trivially mod m^(degree+1)
        active = [w for w in walls.values() if sum(w.normal) <= degree]
        seq = loop_seq(active)
        defects: dict = {}
        for i in range(2):
            lam = tuple(1 if j == i else 0 for j in range(2))
            gen = MonomialExpr.x_monomial(2, degree, lam)
            image = path_product(gen, seq, degree)
            for (lam2, phi), coeff in image.terms:
                if sum(phi) == degree and (lam2, phi) != (lam, (0,) * 2):
                    assert lam2 == lam, "defect must stay on the same x-monomial"
                    defects.setdefault(phi, {})[i] = coeff
        for phi, per_gen in sorted(defects.items()):
            beta = primitive_vector(phi)
            coroot = tuple(int(c) for c in cartan.primitive_in_coroot_lattice(beta))
            direction = outgoing_direction(beta)
            # crossing sign of this outgoing ray in the ccw loop
            cw = (direction[1], -direction[0])
            val = vdot(tuple(cw), covector(beta))
            assert val != 0
            ray_sign = 1 if val > 0 else -1
            m = sum(phi) // sum(beta)
            candidates = []
            for i in range(2):
                if coroot[i] == 0:
                    continue
                g = per_gen.get(i, Fraction(0))
                candidates.append(Fraction(g, ray_sign * coroot[i]))
            assert candidates and all(c == candidates[0] for c in candidates), (
                "defect is not a single wall correction"
            )
            correction = -candidates[0]
            if correction == 0:
                continue
            key = ("ray", tuple(direction))
            if key not in walls:
                qdeg = k // sum(beta)
                cone, ineq_roots = ray_wall_shape(beta, direction)
                walls[key] = Wall(
                    normal=beta,
                    cone=cone,
                    ineq_roots=ineq_roots,
                    f=TruncatedSeries.one(beta, qdeg),
                    origin=ORIGIN_RANK2,
                )
            wall = walls[key]
            assert wall.normal == beta, "parallel outgoing rays must share a normal"
            coeffs = list(wall.f.coeffs)
            coeffs[m] += correction
            walls[key] = replace(wall, f=TruncatedSeries.make(beta, wall.f.k, coeffs))
    # final verification
    seq = loop_seq(list(walls.values()))
    for gen in _generators(2, k):
        assert path_product(gen, seq, k) == gen, "completion failed to close"
    kept = [w for w in walls.values() if w.origin == ORIGIN_INITIAL or not w.f.is_one()]
    out = ScatDiagram(
        cartan_n=2,
        walls=tuple(sorted(kept, key=lambda w: (sum(w.normal), w.normal))),
        height_cap=k,
        truncation=k,
        provenance={"construction": "rank2_complete"},
    )
    out.provenance["non_integer_series"] = [list(b) for b in integrality_audit(out)]
    return out


# -- ramparts and the scattering fan ------------------------------------------------


def integrality_audit(diagram: ScatDiagram) -> list:
    """Walls whose scattering term has a non-integer coefficient.

    Coefficients are carried as exact rationals throughout; a non-integer here
    signals a convention bug upstream, so builders record the audit in the
    diagram provenance.
    """
    bad = []
    for w in diagram.walls:
        if any(Fraction(c).denominator != 1 for c in w.f.coeffs):
            bad.append(w.normal)
    return bad


def rampart_set(diagram: ScatDiagram, point) -> frozenset:
    """Indices of walls containing the point (each rampart is a single wall)."""
    return frozenset(
        i for i, w in enumerate(diagram.walls) if w.cone.contains(tuple(point))
    )


def scat_cone_eq(diagram: ScatDiagram, p, q) -> bool:
    """Whether p and q are D-equivalent, decided along the straight segment by
    exact subdivision at all wall-constraint crossings."""
    p = tuple(Fraction(c) for c in p)
    q = tuple(Fraction(c) for c in q)
    base = rampart_set(diagram, p)
    if rampart_set(diagram, q) != base:
        return False
    ts = {Fraction(0), Fraction(1)}
    direction = tuple(b - a for a, b in zip(p, q))
    for w in diagram.walls:
        for g in list(w.cone.eqs) + list(w.cone.ineqs):
            num = vdot(p, g)
            den = vdot(direction, g)
            if den != 0:
                t = Fraction(-num, den)
                if 0 < t < 1:
                    ts.add(t)
    samples = sorted(ts)
    points = []
    for a, b in zip(samples, samples[1:]):
        points.append(a)
        points.append((a + b) / 2)
    points.append(Fraction(1))
    for t in points:
        x = tuple(a + t * d for a, d in zip(p, direction))
        if rampart_set(diagram, x) != base:
            return False
    return True
