"""c-sortable elements, pi-down projection, Cambrian cones, and the
join-irreducible sortable inventory.

All recursions work on (inversion set, index order) pairs; the order is a
linear extension whose first letter is always initial in the current Coxeter
element, and parabolic descent drops letters from the order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cones import Cone
from .coxeter import CoxeterContext
from .linalg import primitive_vector
from .weyl import (
    GroupElement,
    WeylContext,
    enumerate_up_to_length,
    is_join_irreducible,
)


@dataclass(frozen=True)
class SortableWitness:
    element: GroupElement
    sorting_word: tuple


def _rotate(order, s):
    return tuple(i for i in order if i != s) + (s,)


def _drop(order, s):
    return tuple(i for i in order if i != s)


class SortableContext:
    def __init__(self, weyl: WeylContext, cox: CoxeterContext):
        assert weyl.cartan is cox.cartan
        self.weyl = weyl
        self.cox = cox
        self.cartan = weyl.cartan
        self._sort_cache: dict = {}
        self._cone_cache: dict = {}

    # -- sortability ----------------------------------------------------------

    def sorting_word(self, inversions: frozenset, order=None):
        """The c-sorting word if the element is c-sortable, else None."""
        order = self.cox.order if order is None else order
        key = (inversions, order)
        if key in self._sort_cache:
            return self._sort_cache[key]
        result = self._sorting_word(inversions, order)
        self._sort_cache[key] = result
        return result

    def _sorting_word(self, inversions, order):
        if not inversions:
            return ()
        if not order:
            return None  # nonidentity element of the trivial parabolic
        s = order[0]
        alpha = self.cartan.simple_root(s)
        if alpha in inversions:
            reduced = frozenset(
                tuple(self.cartan.reflect_root(s, b)) for b in inversions if b != alpha
            )
            tail = self.sorting_word(reduced, _rotate(order, s))
            return None if tail is None else (s,) + tail
        if any(b[s] != 0 for b in inversions):
            return None  # not in the parabolic W_<s>
        return self.sorting_word(inversions, _drop(order, s))

    def is_sortable(self, w: GroupElement) -> SortableWitness | None:
        word = self.sorting_word(w.inversions)
        if word is None:
            return None
        return SortableWitness(w, word)

    # -- pi-down ----------------------------------------------------------------

    def pi_down(self, w: GroupElement) -> GroupElement:
        inv = self._pi_down(w.inversions, self.cox.order)
        from .weyl import word_from_inversions

        return self.weyl.from_word(word_from_inversions(self.weyl, inv))

    def _pi_down(self, inversions, order) -> frozenset:
        if not inversions or not order:
            return frozenset()
        s = order[0]
        alpha = self.cartan.simple_root(s)
        if alpha in inversions:
            reduced = frozenset(
                tuple(self.cartan.reflect_root(s, b)) for b in inversions if b != alpha
            )
            below = self._pi_down(reduced, _rotate(order, s))
            assert alpha not in below
            return frozenset(
                {tuple(self.cartan.reflect_root(s, b)) for b in below} | {alpha}
            )
        restricted = frozenset(b for b in inversions if b[s] == 0)
        return self._pi_down(restricted, _drop(order, s))

    # -- Cambrian cones -----------------------------------------------------------

    def cone_normals(self, inversions: frozenset, order=None):
        """C_c(v) for sortable v: n roots whose >=0 side cuts out Cone_c(v)."""
        order = self.cox.order if order is None else order
        key = (inversions, order)
        if key in self._cone_cache:
            return self._cone_cache[key]
        if not inversions:
            result = frozenset(self.cartan.simple_root(i) for i in order)
        else:
            s = order[0]
            alpha = self.cartan.simple_root(s)
            if alpha in inversions:
                reduced = frozenset(
                    tuple(self.cartan.reflect_root(s, b)) for b in inversions if b != alpha
                )
                inner = self.cone_normals(reduced, _rotate(order, s))
                result = frozenset(tuple(self.cartan.reflect_root(s, b)) for b in inner)
            else:
                inner = self.cone_normals(inversions, _drop(order, s))
                result = inner | {alpha}
        self._cone_cache[key] = result
        return result

    def cambrian_cone(self, v: GroupElement) -> Cone:
        """Cone_c(v) = {x : <x, beta> >= 0 for beta in C_c(v)} in V*."""
        normals = self.cone_normals(v.inversions)
        covs = [self._covector(tuple(-c for c in b)) for b in normals]
        return Cone.from_constraints(self.cartan.n, ineqs=covs)

    def _covector(self, phi):
        return primitive_vector(tuple(self.cartan.d[i] * phi[i] for i in range(self.cartan.n)))

    # -- enumeration ----------------------------------------------------------------

    def sortables_up_to_length(self, max_len: int, cap=None):
        out = []
        for w in enumerate_up_to_length(self.weyl, max_len, cap=cap):
            wit = self.is_sortable(w)
            if wit is not None:
                out.append(wit)
        return out

    def ji_sortables(self, height_cap: int, length_cap: int, expect_roots=None):
        """Map cover root -> join-irreducible c-sortable element, for cover
        roots of height at most height_cap.

        Uniqueness per root is enforced.  When expect_roots is given, every
        root in it must be hit or CapExceeded is raised (the length cap was
        not enough to certify completeness).
        """
        found: dict = {}
        for wit in self.sortables_up_to_length(length_cap):
            w = wit.element
            if w.is_identity():
                continue
            root = is_join_irreducible(self.weyl, w)
            if root is None or sum(root) > height_cap:
                continue
            if root in found:
                raise AssertionError(
                    f"two join-irreducible sortables share cover root {root}"
                )
            found[root] = w
        if expect_roots is not None:
            missing = [r for r in expect_roots if r not in found]
            if missing:
                raise CapExceeded(
                    f"length cap {length_cap} missed cover roots {missing}"
                )
        return found
