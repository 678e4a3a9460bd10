"""Exact rational linear algebra on tuples of Fractions.

Vectors are plain tuples whose entries are ints or Fractions; all results
are exact.  Nothing here knows about root systems.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple  # tuple of int | Fraction
Mat = tuple  # tuple of row tuples


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def vdot(u: Vec, v: Vec):
    """Plain coordinatewise dot product (no bilinear form)."""
    return sum(a * b for a, b in zip(u, v, strict=True))


def is_zero_vec(u: Vec) -> bool:
    return all(a == 0 for a in u)


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(vdot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(tuple(vdot(row, col) for col in bt) for row in a)


def identity_mat(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def primitive_vector(v: Vec) -> Vec:
    """Scale a nonzero rational vector to a primitive integer vector, preserving direction."""
    fracs = [Fraction(a) for a in v]
    if all(a == 0 for a in fracs):
        raise ValueError("zero vector has no primitive form")
    denom_lcm = 1
    for a in fracs:
        denom_lcm = denom_lcm * a.denominator // gcd(denom_lcm, a.denominator)
    ints = [int(a * denom_lcm) for a in fracs]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(a // g for a in ints)


def rref(rows: list[list]) -> list[list[Fraction]]:
    """Reduced row echelon form; returns only the nonzero rows."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return []
    ncols = len(m[0])
    pivot_row = 0
    for col in range(ncols):
        sel = next((r for r in range(pivot_row, len(m)) if m[r][col] != 0), None)
        if sel is None:
            continue
        m[pivot_row], m[sel] = m[sel], m[pivot_row]
        pv = m[pivot_row][col]
        m[pivot_row] = [x / pv for x in m[pivot_row]]
        for r in range(len(m)):
            if r != pivot_row and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[pivot_row])]
        pivot_row += 1
        if pivot_row == len(m):
            break
    return [row for row in m if any(x != 0 for x in row)]


def rank(rows: list[list]) -> int:
    return len(rref(rows))


def kernel_basis(rows: list[list]) -> list[Vec]:
    """Basis of the right kernel {v : M v = 0}."""
    if not rows:
        return []
    ncols = len(rows[0])
    red = rref(rows)
    pivots = []
    for row in red:
        pivots.append(next(i for i, x in enumerate(row) if x != 0))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[j]
        basis.append(tuple(v))
    return basis


def solve_linear(rows: list[list], rhs: list) -> Vec | None:
    """One solution of M x = b, or None if inconsistent."""
    if not rows:
        return None
    ncols = len(rows[0])
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs, strict=True)]
    red = rref(aug)
    # In rref each pivot column is cleared elsewhere, so free variables = 0
    # and pivot variables read off the last column directly.
    sol = [Fraction(0)] * ncols
    for row in red:
        p = next(i for i, x in enumerate(row) if x != 0)
        if p == ncols:
            return None
        sol[p] = row[ncols]
    return tuple(sol)


def det(m: list[list]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination (exact)."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    result = Fraction(1)
    for col in range(n):
        sel = next((r for r in range(col, n) if a[r][col] != 0), None)
        if sel is None:
            return Fraction(0)
        if sel != col:
            a[col], a[sel] = a[sel], a[col]
            result = -result
        result *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return result


def extend_to_basis(vectors: list[Vec], dim: int) -> list[Vec]:
    """Complete an independent family to a basis using standard unit vectors.

    Returns only the added unit vectors.
    """
    rows = [list(v) for v in vectors]
    current = rank(rows)
    added = []
    for j in range(dim):
        if current == dim:
            break
        unit = [Fraction(1) if i == j else Fraction(0) for i in range(dim)]
        if rank(rows + [unit]) > current:
            rows.append(unit)
            added.append(tuple(unit))
            current += 1
    if current != dim:
        raise ValueError("could not extend to a basis")
    return added
