"""Exchange matrices, symmetrizable Cartan matrices, and real root enumeration.

Conventions: roots live in V with coordinates on the simple-root basis
alpha_1..alpha_n; weights live in V* with coordinates on the fundamental
weights rho_1..rho_n, where <rho_i, alpha_j^vee> = delta_ij.  All arithmetic
is exact rational; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .linalg import Vec, det, kernel_basis, primitive_vector, vscale, vsub


class NotSkewSymmetrizable(ValueError):
    pass


class NotAcyclic(ValueError):
    pass


class NotAffine(ValueError):
    pass


class NotRealRoot(ValueError):
    pass


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetrizable integer matrix B = [b_ij]."""

    n: int
    b: tuple

    @staticmethod
    def from_rows(rows) -> "ExchangeMatrix":
        n = len(rows)
        b = tuple(tuple(int(x) for x in row) for row in rows)
        for row in b:
            if len(row) != n:
                raise ValueError("B must be square")
        mat = ExchangeMatrix(n, b)
        mat.symmetrizer()  # raises NotSkewSymmetrizable on bad input
        return mat

    def entry(self, i: int, j: int) -> int:
        return self.b[i][j]

    def transpose(self) -> "ExchangeMatrix":
        return ExchangeMatrix(self.n, tuple(zip(*self.b)))

    def negate(self) -> "ExchangeMatrix":
        return ExchangeMatrix(self.n, tuple(tuple(-x for x in row) for row in self.b))

    def symmetrizer(self) -> tuple:
        """Positive rationals d with d_i b_ij = -d_j b_ji, normalized so that
        every d_i^{-1} is a positive integer and gcd of the d_i^{-1} is 1
        (per connected component of the support graph)."""
        n, b = self.n, self.b
        for i in range(n):
            if b[i][i] != 0:
                raise NotSkewSymmetrizable("nonzero diagonal")
            for j in range(n):
                if (b[i][j] == 0) != (b[j][i] == 0):
                    raise NotSkewSymmetrizable(f"sign pattern broken at ({i},{j})")
                if b[i][j] * b[j][i] > 0:
                    raise NotSkewSymmetrizable(f"entries {i},{j} have equal signs")
        d: list = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            comp = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if b[i][j] == 0:
                        continue
                    val = d[i] * Fraction(-b[i][j], b[j][i])  # d_i b_ij = -d_j b_ji
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                        comp.append(j)
                    elif d[j] != val:
                        raise NotSkewSymmetrizable("inconsistent symmetrizer cycle")
            # Normalize this component: d_i^{-1} integral with gcd 1.
            invs = [1 / d[i] for i in comp]
            denom_lcm = 1
            for x in invs:
                denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
            scaled = [int(x * denom_lcm) for x in invs]
            g = 0
            for x in scaled:
                g = gcd(g, x)
            for i, x in zip(comp, scaled):
                d[i] = Fraction(g, x)
        # Final check.
        for i in range(n):
            for j in range(n):
                if d[i] * b[i][j] != -d[j] * b[j][i]:
                    raise NotSkewSymmetrizable("symmetrizer check failed")
        return tuple(d)

    def is_acyclic(self) -> bool:
        """No directed cycle in the sign digraph (edge i -> j iff b_ij > 0)."""
        n = self.n
        adj = {i: [j for j in range(n) if self.b[i][j] > 0] for i in range(n)}
        state = [0] * n  # 0 unseen, 1 in progress, 2 done

        def visit(i) -> bool:
            state[i] = 1
            for j in adj[i]:
                if state[j] == 1:
                    return False
                if state[j] == 0 and not visit(j):
                    return False
            state[i] = 2
            return True

        return all(state[i] == 2 or visit(i) for i in range(n))

    def coxeter_order(self) -> tuple:
        """Lexicographically smallest linear extension of the sign digraph.

        The returned index sequence (0-based) is the order in which the simple
        reflections multiply to form the Coxeter element attached to B.
        """
        if not self.is_acyclic():
            raise NotAcyclic("B has a directed cycle; no Coxeter element")
        n = self.n
        indeg = [sum(1 for i in range(n) if self.b[i][j] > 0) for j in range(n)]
        order = []
        used = [False] * n
        for _ in range(n):
            i = min(v for v in range(n) if not used[v] and indeg[v] == 0)
            used[i] = True
            order.append(i)
            for j in range(n):
                if self.b[i][j] > 0:
                    indeg[j] -= 1
        return tuple(order)


@dataclass(frozen=True)
class CartanMatrix:
    """Symmetrizable generalized Cartan matrix with fixed symmetrizers d.

    d follows the convention d_i a_ij = d_j a_ji with every d_i^{-1} a positive
    integer and gcd(d_i^{-1}) = 1.
    """

    n: int
    a: tuple
    d: tuple

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_rows(rows, d=None) -> "CartanMatrix":
        n = len(rows)
        a = tuple(tuple(int(x) for x in row) for row in rows)
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError("Cartan diagonal must be 2")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise ValueError("off-diagonal Cartan entries must be <= 0")
                if i != j and (a[i][j] == 0) != (a[j][i] == 0):
                    raise ValueError("zero pattern must be symmetric")
        if d is None:
            d = _solve_symmetrizer(a)
        cm = CartanMatrix(n, a, tuple(Fraction(x) for x in d))
        for i in range(n):
            for j in range(n):
                if cm.d[i] * a[i][j] != cm.d[j] * a[j][i]:
                    raise ValueError("d does not symmetrize A")
        return cm

    # -- basic linear data --------------------------------------------------

    def simple_root(self, i: int) -> Vec:
        return tuple(1 if j == i else 0 for j in range(self.n))

    def height(self, v: Vec):
        return sum(v)

    def a_times(self, v: Vec) -> Vec:
        """(A v)_i = sum_j a_ij v_j, i.e. K(alpha_i^vee, v) coordinatewise."""
        return tuple(sum(self.a[i][j] * v[j] for j in range(self.n)) for i in range(self.n))

    def k_form(self, u: Vec, v: Vec):
        """K(u, v) with K(alpha_i, alpha_j) = d_i a_ij."""
        av = self.a_times(v)
        return sum(u[i] * self.d[i] * av[i] for i in range(self.n))

    def pairing(self, x: Vec, v: Vec):
        """<x, v> for x in V* (rho coordinates) and v in V (alpha coordinates)."""
        return sum(x[i] * self.d[i] * v[i] for i in range(self.n))

    def coroot(self, beta: Vec) -> Vec:
        """beta^vee = 2 beta / K(beta, beta), in alpha coordinates."""
        kk = self.k_form(beta, beta)
        if kk <= 0:
            raise NotRealRoot(f"{beta} is not a real root (K(b,b) = {kk})")
        return vscale(Fraction(2, 1) / kk, beta)

    def coroot_coords(self, v: Vec) -> Vec:
        """Coordinates of v on the simple coroot basis alpha_i^vee = d_i^{-1} alpha_i."""
        return tuple(Fraction(v[i]) * self.d[i] for i in range(self.n))

    def primitive_in_coroot_lattice(self, v: Vec) -> Vec:
        """The primitive vector of Q^vee on the ray through v, in alpha^vee coordinates."""
        return primitive_vector(self.coroot_coords(v))

    def reflect_root(self, i: int, v: Vec) -> Vec:
        """s_i(v) = v - K(alpha_i^vee, v) alpha_i on V."""
        coef = sum(self.a[i][j] * v[j] for j in range(self.n))
        return tuple(v[j] - coef if j == i else v[j] for j in range(self.n))

    def reflect_weight(self, k: int, x: Vec) -> Vec:
        """Dual action on V*: s_k(x)_i = x_i - a_ik x_k on rho coordinates."""
        xk = x[k]
        return tuple(x[i] - self.a[i][k] * xk for i in range(self.n))

    def reflect_by_root(self, beta: Vec, v: Vec) -> Vec:
        """t_beta(v) = v - K(beta^vee, v) beta for a real root beta."""
        bv = self.coroot(beta)
        return vsub(v, vscale(self.k_form(bv, v), beta))

    def act_word_on_root(self, word, v: Vec) -> Vec:
        """Apply s_{word[0]} ... s_{word[-1]} to v (rightmost letter acts first)."""
        for i in reversed(word):
            v = self.reflect_root(i, v)
        return v

    def act_word_on_weight(self, word, x: Vec) -> Vec:
        for i in reversed(word):
            x = self.reflect_weight(i, x)
        return x

    # -- symmetrized form and classification --------------------------------

    def symmetrized(self) -> list:
        return [[self.d[i] * self.a[i][j] for j in range(self.n)] for i in range(self.n)]

    def classify(self) -> "TypeInfo":
        return classify(self)

    # -- real roots ----------------------------------------------------------

    def real_roots_up_to_height(self, height_cap: int) -> list:
        """All positive real roots of coordinate sum <= height_cap.

        Orbit closure of the simple roots under simple reflections, pruned at
        the height cap; complete because every positive nonsimple real root has
        a height-decreasing simple reflection.
        """
        frontier = [
            self.simple_root(i) for i in range(self.n) if height_cap >= 1
        ]
        seen = set(frontier)
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.n):
                    w = self.reflect_root(i, v)
                    if w in seen or any(c < 0 for c in w) or sum(w) > height_cap:
                        continue
                    seen.add(w)
                    nxt.append(w)
            frontier = nxt
        return sorted(seen, key=lambda v: (sum(v), v))


def _solve_symmetrizer(a) -> tuple:
    n = len(a)
    d: list = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        comp = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if a[i][j] == 0 or i == j:
                    continue
                val = d[i] * Fraction(a[i][j], a[j][i])
                if d[j] is None:
                    d[j] = val
                    stack.append(j)
                    comp.append(j)
                elif d[j] != val:
                    raise ValueError("A is not symmetrizable")
        invs = [1 / d[i] for i in comp]
        denom_lcm = 1
        for x in invs:
            denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
        scaled = [int(x * denom_lcm) for x in invs]
        g = 0
        for x in scaled:
            g = gcd(g, x)
        for i, x in zip(comp, scaled):
            d[i] = Fraction(g, x)
    return tuple(d)


def exchange_to_cartan(bmat: ExchangeMatrix) -> CartanMatrix:
    """Cartan companion: a_ii = 2, a_ij = -|b_ij|, with d from the gcd convention."""
    n = bmat.n
    a = tuple(
        tuple(2 if i == j else -abs(bmat.b[i][j]) for j in range(n)) for i in range(n)
    )
    return CartanMatrix.from_rows(a, d=bmat.symmetrizer())


@dataclass(frozen=True)
class TypeInfo:
    """Result of classifying a Cartan matrix: finite, affine, or indefinite."""

    kind: str  # "finite" | "affine" | "indefinite"
    label: str | None = None
    delta: Vec | None = None
    aff_index: int | None = None  # 0-based
    is_a2k2: bool = False


def _principal_submatrix(s, keep):
    return [[s[i][j] for j in keep] for i in keep]


def _is_positive_definite(sym) -> bool:
    n = len(sym)
    for k in range(1, n + 1):
        if det([row[:k] for row in sym[:k]]) <= 0:
            return False
    return True


def classify(cm: CartanMatrix) -> TypeInfo:
    """Finite / Affine / Indefinite trichotomy via exact principal minors.

    Affine means positive semidefinite with all proper principal minors
    positive; delta is then the primitive integer kernel generator.
    """
    sym = cm.symmetrized()
    n = cm.n
    if _is_positive_definite(sym):
        return TypeInfo(kind="finite")
    proper_pd = all(
        _is_positive_definite(_principal_submatrix(sym, [i for i in range(n) if i != k]))
        for k in range(n)
    )
    if not (proper_pd and det(sym) == 0):
        return TypeInfo(kind="indefinite")
    ker = kernel_basis([list(row) for row in cm.a])
    assert len(ker) == 1, "affine Cartan matrix must have 1-dimensional kernel"
    delta = primitive_vector(ker[0])
    if any(c < 0 for c in delta):
        delta = tuple(-c for c in delta)
    assert all(c > 0 for c in delta)
    label, aff_index = _match_affine_label(cm, delta)
    is_a2k2 = label.startswith("A_") and label.endswith("^(2)") and int(label[2:-4]) % 2 == 0
    return TypeInfo(kind="affine", label=label, delta=delta, aff_index=aff_index, is_a2k2=is_a2k2)


# -- builtin affine diagram table --------------------------------------------
#
# Each entry is the standard affine Cartan matrix with Kac's node numbering
# (node 0 = the affine node).  classify() matches the input against these up
# to simultaneous row/column permutation; the permutation also locates the
# affine node in the input's indexing.


def _path(n, edges):
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, aij, aji in edges:
        a[i][j] = aij
        a[j][i] = aji
    return tuple(tuple(row) for row in a)


def _affine_table(n: int) -> list:
    """All standard affine Cartan matrices with n nodes, as (label, matrix)."""
    single = lambda i, j: (i, j, -1, -1)
    out = []
    if n == 2:
        out.append(("A_1^(1)", _path(2, [(0, 1, -2, -2)])))
        # Kac A_2^(2): alpha_0 short, a_01 = -4, a_10 = -1.
        out.append(("A_2^(2)", _path(2, [(0, 1, -4, -1)])))
        return out
    ell = n - 1
    # A_ell^(1): cycle.
    out.append((f"A_{ell}^(1)", _path(n, [single(i, (i + 1) % n) for i in range(n)])))
    if ell >= 3:
        # B_ell^(1): fork 0,1 at 2; chain; double edge toward the short end node ell.
        edges = [single(0, 2), single(1, 2)] + [single(i, i + 1) for i in range(2, ell - 1)]
        edges.append((ell - 1, ell, -1, -2))
        out.append((f"B_{ell}^(1)", _path(n, edges)))
        # A_{2ell-1}^(2): same shape, arrow reversed.
        edges = [single(0, 2), single(1, 2)] + [single(i, i + 1) for i in range(2, ell - 1)]
        edges.append((ell - 1, ell, -2, -1))
        out.append((f"A_{2 * ell - 1}^(2)", _path(n, edges)))
    if ell >= 2:
        # C_ell^(1): path, long roots at both ends pointing inward.
        edges = [(0, 1, -1, -2)] + [single(i, i + 1) for i in range(1, ell - 1)] + [
            (ell - 1, ell, -2, -1)
        ]
        out.append((f"C_{ell}^(1)", _path(n, edges)))
        # D_{ell+1}^(2): path, both arrows outward.
        edges = [(0, 1, -2, -1)] + [single(i, i + 1) for i in range(1, ell - 1)] + [
            (ell - 1, ell, -1, -2)
        ]
        out.append((f"D_{ell + 1}^(2)", _path(n, edges)))
        # A_{2ell}^(2): path with node 0 the short end (mark 2) and node ell the
        # mark-1 long end; three root lengths when ell >= 2.
        edges = [(0, 1, -2, -1)] + [single(i, i + 1) for i in range(1, ell - 1)] + [
            (ell - 1, ell, -2, -1)
        ]
        out.append((f"A_{2 * ell}^(2)", _path(n, edges)))
    if ell >= 4:
        # D_ell^(1): forks at both ends.
        edges = [single(0, 2), single(1, 2)] + [single(i, i + 1) for i in range(2, ell - 2)]
        edges += [single(ell - 2, ell - 1), single(ell - 2, ell)]
        out.append((f"D_{ell}^(1)", _path(n, edges)))
    if n == 3:
        out.append(("G_2^(1)", _path(3, [single(0, 1), (1, 2, -1, -3)])))
        out.append(("D_4^(3)", _path(3, [single(0, 1), (1, 2, -3, -1)])))
    if n == 5:
        out.append(("F_4^(1)", _path(5, [single(0, 1), single(1, 2), (2, 3, -1, -2), single(3, 4)])))
        out.append(("E_6^(2)", _path(5, [single(0, 1), single(1, 2), (2, 3, -2, -1), single(3, 4)])))
    if n == 7:
        # E_6^(1): path 1-2-3-4-5 with branch 3-6-0; node 0 is the affine end.
        e6 = [single(1, 2), single(2, 3), single(3, 4), single(4, 5), single(3, 6), single(6, 0)]
        out.append(("E_6^(1)", _path(7, e6)))
    if n == 8:
        e7 = [single(0, 1)] + [single(i, i + 1) for i in range(1, 6)] + [single(3, 7)]
        out.append(("E_7^(1)", _path(8, e7)))
    if n == 9:
        e8 = [single(i, i + 1) for i in range(0, 7)] + [single(5, 8)]
        out.append(("E_8^(1)", _path(9, e8)))
    return out


def _find_isomorphism(a_in, a_ref) -> list | None:
    """All permutations p with a_in[p(i)][p(j)] == a_ref[i][j]; returns the list
    of images of reference node 0, or None if no isomorphism exists."""
    n = len(a_in)
    ref_rows = [tuple(sorted(a_ref[i][j] for j in range(n) if j != i)) for i in range(n)]
    in_rows = [tuple(sorted(a_in[i][j] for j in range(n) if j != i)) for i in range(n)]
    images = set()

    def backtrack(mapping, used):
        i = len(mapping)
        if i == n:
            images.add(mapping[0])
            return
        for cand in range(n):
            if used[cand] or in_rows[cand] != ref_rows[i]:
                continue
            ok = True
            for prev in range(i):
                q = mapping[prev]
                if a_in[cand][q] != a_ref[i][prev] or a_in[q][cand] != a_ref[prev][i]:
                    ok = False
                    break
            if ok:
                used[cand] = True
                backtrack(mapping + [cand], used)
                used[cand] = False

    backtrack([], [False] * n)
    return sorted(images) if images else None


def _match_affine_label(cm: CartanMatrix, delta: Vec):
    for label, ref in _affine_table(cm.n):
        images = _find_isomorphism(cm.a, ref)
        if images is not None:
            return label, images[0]
    raise AssertionError("affine Cartan matrix matches no standard affine diagram")
