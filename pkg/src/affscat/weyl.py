r"""Weyl group elements with inversion-set bookkeeping and weak order.

An element is identified by its inversion set inv(w) = {beta > 0 :
w^{-1}(beta) < 0}; reduced words are witnesses, never identities.  With this
convention the inversion sequence of a reduced word a_1...a_k lists inv(w)
incrementally: right multiplication by s appends or removes w(alpha_s), and
for s <= w, inv(sw) = s.(inv(w) \ {alpha_s}).  The weak order is containment
of inversion sets, with covers w <. ws.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .cartan import CartanMatrix
from .linalg import Vec, identity_mat, mat_mul, mat_vec

DEFAULT_ELEMENT_CAP = 10**6


class CapExceeded(RuntimeError):
    pass


def element_cap() -> int:
    env = os.environ.get("AFFSCAT_CAP")
    return int(env) if env else DEFAULT_ELEMENT_CAP


@dataclass(frozen=True)
class GroupElement:
    word: tuple
    inversions: frozenset
    matrix: tuple  # action on V in alpha coordinates, columns are images of simples

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.inversions == other.inversions

    def __hash__(self):
        return hash(self.inversions)

    @property
    def length(self) -> int:
        return len(self.inversions)

    def is_identity(self) -> bool:
        return not self.inversions

    def act(self, v: Vec) -> Vec:
        return mat_vec(self.matrix, v)


class WeylContext:
    """Simple-reflection matrices and element constructors for one Cartan matrix."""

    def __init__(self, cartan: CartanMatrix):
        self.cartan = cartan
        self.n = cartan.n
        n = cartan.n
        self.simple_mats = []
        for i in range(n):
            cols = [cartan.reflect_root(i, cartan.simple_root(j)) for j in range(n)]
            self.simple_mats.append(tuple(tuple(cols[j][r] for j in range(n)) for r in range(n)))

    def identity(self) -> GroupElement:
        return GroupElement((), frozenset(), identity_mat(self.n))

    def simple_root(self, i: int) -> Vec:
        return self.cartan.simple_root(i)

    def from_word(self, word) -> GroupElement:
        w = self.identity()
        for s in word:
            w = self.right_mul(w, s)
        return w

    def right_mul(self, w: GroupElement, s: int) -> GroupElement:
        """w s, maintaining the reduced word and inversion set."""
        root = tuple(w.matrix[r][s] for r in range(self.n))  # w(alpha_s)
        mat = mat_mul(w.matrix, self.simple_mats[s])
        if all(c >= 0 for c in root):
            return GroupElement(w.word + (s,), w.inversions | {root}, mat)
        removed = tuple(-c for c in root)
        inv = w.inversions - {removed}
        assert len(inv) == len(w.inversions) - 1
        return GroupElement(word_from_inversions(self, inv), inv, mat)

    def inverse(self, w: GroupElement) -> GroupElement:
        return self.from_word(tuple(reversed(w.word)))

    def left_descents(self, w: GroupElement):
        """Letters s with s <= w, i.e. alpha_s in inv(w)."""
        return [s for s in range(self.n) if self.simple_root(s) in w.inversions]

    def right_descents(self, w: GroupElement):
        """Letters s with ws <. w, i.e. w(alpha_s) negative."""
        out = []
        for s in range(self.n):
            if any(w.matrix[r][s] < 0 for r in range(self.n)):
                out.append(s)
        return out

    def left_div(self, w: GroupElement, s: int) -> GroupElement:
        """s w for s <= w: inv(sw) = s.(inv(w) \\ {alpha_s})."""
        alpha = self.simple_root(s)
        assert alpha in w.inversions, "left_div requires s <= w"
        inv = frozenset(
            tuple(self.cartan.reflect_root(s, b)) for b in w.inversions if b != alpha
        )
        mat = mat_mul(self.simple_mats[s], w.matrix)
        return GroupElement(word_from_inversions(self, inv), inv, mat)

    def left_mul_up(self, w: GroupElement, s: int) -> GroupElement:
        """s w when s is not <= w (length goes up)."""
        alpha = self.simple_root(s)
        assert alpha not in w.inversions, "left_mul_up requires s not <= w"
        inv = frozenset(
            {tuple(self.cartan.reflect_root(s, b)) for b in w.inversions} | {alpha}
        )
        mat = mat_mul(self.simple_mats[s], w.matrix)
        return GroupElement((s,) + w.word, inv, mat)


def word_from_inversions(ctx: WeylContext, inv: frozenset) -> tuple:
    """Canonical reduced word (greedy smallest left-peel) for the element with
    the given inversion set."""
    word = []
    current = inv
    while current:
        s = min(s for s in range(ctx.n) if ctx.simple_root(s) in current)
        word.append(s)
        alpha = ctx.simple_root(s)
        current = frozenset(
            tuple(ctx.cartan.reflect_root(s, b)) for b in current if b != alpha
        )
    return tuple(word)


def mul_simple(ctx: WeylContext, w: GroupElement, s: int, side: str) -> GroupElement:
    """Multiply by a simple reflection on the chosen side, maintaining the
    reduced word and inversion set (length changes by one either way)."""
    if side == "right":
        return ctx.right_mul(w, s)
    if side == "left":
        if ctx.simple_root(s) in w.inversions:
            return ctx.left_div(w, s)
        return ctx.left_mul_up(w, s)
    raise ValueError("side must be 'left' or 'right'")


def weak_leq(v: GroupElement, w: GroupElement) -> bool:
    return v.inversions <= w.inversions


def covers(ctx: WeylContext, w: GroupElement):
    """Lower covers [(ws, beta_t)] over right descents; beta_t = -w(alpha_s)."""
    out = []
    for s in ctx.right_descents(w):
        root = tuple(-w.matrix[r][s] for r in range(ctx.n))
        out.append((ctx.right_mul(w, s), root))
    return out


def is_join_irreducible(ctx: WeylContext, w: GroupElement):
    """The unique cover root beta_t if w covers exactly one element, else None."""
    cov = covers(ctx, w)
    if len(cov) == 1:
        return cov[0][1]
    return None


def enumerate_up_to_length(ctx: WeylContext, max_len: int, cap: int | None = None):
    """BFS over right multiplication; deduplicated by inversion set."""
    cap = cap if cap is not None else element_cap()
    out = {ctx.identity()}
    frontier = [ctx.identity()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for s in range(ctx.n):
                if s in ctx.right_descents(w):
                    continue
                u = ctx.right_mul(w, s)
                if u not in out:
                    out.add(u)
                    nxt.append(u)
                    if len(out) > cap:
                        raise CapExceeded(f"element cap {cap} exceeded")
        frontier = nxt
    return sorted(out, key=lambda w: (w.length, w.word))


def parabolic_restrict(ctx: WeylContext, w: GroupElement, keep) -> GroupElement:
    """The unique w_I in W_I with inv(w_I) = inv(w) restricted to Phi_I."""
    keep = set(keep)
    drop = [i for i in range(ctx.n) if i not in keep]
    inv = frozenset(b for b in w.inversions if all(b[i] == 0 for i in drop))
    return ctx.from_word(word_from_inversions(ctx, inv))
