from affscat.almost_positive import APContext
from affscat.cartan import ExchangeMatrix
from affscat.coxeter import coxeter_context


def make(rows):
    return APContext(coxeter_context(ExchangeMatrix.from_rows(rows)))


AP_A11 = make([[0, 2], [-2, 0]])
AP_A2T = make([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]])
AP_A22 = make([[0, 1], [-4, 0]])

ALL = [AP_A11, AP_A2T, AP_A22]


def test_tube_empty_in_rank2():
    for ap in (AP_A11, AP_A22):
        assert ap.tube.xi == ()
        assert ap.tube.apt_real == ()


def test_tube_a2_tilde():
    tube = AP_A2T.tube
    assert len(tube.xi) == 2
    assert len(tube.cycles) == 1
    # the two generators sum to delta and c swaps them
    s = tuple(a + b for a, b in zip(*tube.xi))
    assert s == AP_A2T.delta
    assert sorted(tube.c_action.values()) == [0, 1]
    assert tube.c_action[0] != 0
    # APT^re is the c-orbit of the finite tube roots: here exactly xi
    assert set(tube.apt_real) == set(tube.xi)
    for r in tube.apt_real:
        assert AP_A2T.cox.in_h_c(r)


def test_supp_xi_arcs():
    tube = AP_A2T.tube
    for i, g in enumerate(tube.xi):
        assert AP_A2T.supp_xi(g) == {i}


def test_ap_a11_height3():
    roots = AP_A11.ap_roots(3)
    assert set(roots) == {
        (-1, 0),
        (0, -1),
        (1, 0),
        (0, 1),
        (2, 1),
        (1, 2),
        (1, 1),
    }


def test_delta_always_in_ap():
    for ap in ALL:
        assert ap.in_ap(ap.delta)
        for i in range(ap.n):
            assert ap.in_ap(tuple(-1 if j == i else 0 for j in range(ap.n)))


def test_ap_excludes_nontube_hc_roots():
    # In A_2-tilde, roots in H_c that are not tube roots are excluded.
    ap = AP_A2T
    excluded = [
        r
        for r in ap.cartan.real_roots_up_to_height(6)
        if ap.cox.in_h_c(r) and r not in ap.tube.apt_real
    ]
    assert excluded, "expected some excluded tube-plane roots"
    for r in excluded:
        assert not ap.in_ap(r)


def test_sigma_examples():
    for ap in ALL:
        for s in range(ap.n):
            if not (ap.cox.is_initial(s) or ap.cox.is_final(s)):
                continue
            neg = tuple(-1 if j == s else 0 for j in range(ap.n))
            assert ap.sigma(s, neg) == tuple(-c for c in neg)
            for i in range(ap.n):
                if i != s:
                    other = tuple(-1 if j == i else 0 for j in range(ap.n))
                    assert ap.sigma(s, other) == other


def test_tau_fixes_delta():
    for ap in ALL:
        assert ap.tau(ap.delta) == ap.delta
        assert ap.tau_inverse(ap.delta) == ap.delta


def test_tau_word_independent():
    # A_3^(1) with a source-sink orientation: orders (0,2,1,3) and (2,0,1,3)
    # are reduced words for the same Coxeter element.
    b = ExchangeMatrix.from_rows(
        [[0, 1, 0, 1], [-1, 0, 1, 0], [0, -1, 0, -1], [-1, 0, 1, 0]]
    )
    ap = APContext(coxeter_context(b))
    order = ap.cox.order
    assert order == (0, 1, 3, 2)
    assert ap.cartan.a[1][3] == 0  # the two middle letters commute
    swapped = (0, 3, 1, 2)
    for r in ap.ap_roots(3):
        assert ap.tau(r, order) == ap.tau(r, swapped)
    for ctx in ALL:
        for r in ctx.ap_roots(3):
            assert ctx.tau_inverse(ctx.tau(r)) == r
            assert ctx.tau(ctx.tau_inverse(r)) == r


def test_tau_preserves_ap():
    for ap in ALL:
        for r in ap.ap_roots(4):
            img = ap.tau(r)
            assert ap.in_ap(img), (r, img)


def test_nontube_orbit_reaches_negative_simple():
    for ap in ALL:
        for r in ap.ap_positive_real(4):
            if ap.is_tube_real(r):
                continue
            found = False
            cur = r
            for _ in range(60):
                if ap._negative_simple_index(cur) is not None:
                    found = True
                    break
                cur = ap.tau(cur)
            if not found:
                cur = r
                for _ in range(60):
                    if ap._negative_simple_index(cur) is not None:
                        found = True
                        break
                    cur = ap.tau_inverse(cur)
            assert found, r


def test_compat_base_examples():
    # [[-alpha_1, delta]] = 1 in A_1^(1)
    assert AP_A11.compatibility_degree((-1, 0), AP_A11.delta) == 1
    assert AP_A11.compatibility_degree(AP_A11.delta, (-1, 0)) == 1


def test_self_degree():
    for ap in ALL:
        for r in ap.ap_roots(3):
            if r == ap.delta:
                assert ap.compatibility_degree(r, r) == 0
            else:
                assert ap.compatibility_degree(r, r) == -1


def test_tube_self_degree_minus_one():
    for r in AP_A2T.tube.apt_real:
        assert AP_A2T.compatibility_degree(r, r) == -1


def test_delta_compatible_with_tube():
    for r in AP_A2T.tube.apt_real:
        assert AP_A2T.compatibility_degree(AP_A2T.delta, r) == 0
        assert AP_A2T.compatibility_degree(r, AP_A2T.delta) == 0


def test_compat_tau_invariance():
    for ap in ALL:
        roots = ap.ap_roots(4)
        for a in roots:
            for b in roots:
                d = ap.compatibility_degree(a, b)
                assert d == ap.compatibility_degree(ap.tau(a), ap.tau(b))


def test_compatibility_symmetric():
    for ap in ALL:
        roots = ap.ap_roots(4)
        for a in roots:
            for b in roots:
                lhs = ap.compatibility_degree(a, b) == 0
                rhs = ap.compatibility_degree(b, a) == 0
                assert lhs == rhs, (a, b)


def test_negative_simples_form_real_cluster():
    for ap in ALL:
        real, imaginary, _ = ap.clusters(3)
        negs = tuple(
            sorted(tuple(-1 if j == i else 0 for j in range(ap.n)) for i in range(ap.n))
        )
        assert negs in real


def test_a11_unique_imaginary_cluster():
    real, imaginary, _ = AP_A11.clusters(3)
    assert imaginary == [(AP_A11.delta,)]


def test_a2t_imaginary_clusters():
    real, imaginary, _ = AP_A2T.clusters(4)
    assert len(imaginary) == 2
    for cl in imaginary:
        assert AP_A2T.delta in cl
        assert len(cl) == 2


def test_nested_or_spaced_iff_compatible():
    ap = AP_A2T
    for a in ap.tube.apt_real:
        for b in ap.tube.apt_real:
            if a == b:
                continue
            sa, sb = ap.supp_xi(a), ap.supp_xi(b)
            nested = sa <= sb or sb <= sa
            ca = ap.supp_xi(ap.cartan.act_word_on_root(ap.cox.order, a))
            ca_inv = ap.supp_xi(
                ap.cartan.act_word_on_root(tuple(reversed(ap.cox.order)), a)
            )
            spaced = not ((sa | ca | ca_inv) & sb)
            assert (ap.compatibility_degree(a, b) == 0) == (nested or spaced)


def test_compute_in_tubes():
    # E_c(alpha^vee, beta) = |supp(a) & supp(b)| - #{i in supp(a): c xi_i in supp(b)}
    ap = AP_A2T
    for a in ap.tube.apt_real:
        for b in ap.tube.apt_real:
            sa, sb = ap.supp_xi(a), ap.supp_xi(b)
            shift = sum(1 for i in sa if ap.tube.c_action[i] in sb)
            avee = ap.cartan.coroot(a)
            assert ap.cox.e_form(avee, b) == len(sa & sb) - shift


def test_ap_equals_ap_of_inverse():
    for ap in ALL:
        inv = APContext(ap.cox.inverse())
        assert set(ap.ap_roots(4)) == set(inv.ap_roots(4))


def test_fan_dominant_chamber():
    for ap in ALL:
        negs = [tuple(-1 if j == i else 0 for j in range(ap.n)) for i in range(ap.n)]
        cone = ap.fan_cone(negs)
        # nu_c(-alpha_i) = rho_i: the dominant chamber
        assert set(cone.rays) == {
            tuple(1 if j == i else 0 for j in range(ap.n)) for i in range(ap.n)
        }


def _minimal_face_at(cone, p):
    from affscat.cones import Cone

    tight = [g for g in cone.ineqs if sum(a * b for a, b in zip(p, g)) == 0]
    return Cone.from_constraints(
        cone.dim_ambient, eqs=list(cone.eqs) + tight, ineqs=list(cone.ineqs)
    )


def test_fan_property_pairwise_intersection_in_face():
    for ap, H in ((AP_A11, 3), (AP_A2T, 3)):
        cones = [c for _, c in ap.fan_cones(H)]
        for i, c1 in enumerate(cones):
            for c2 in cones[i + 1 :]:
                meet = c1.intersect(c2)
                if meet.is_empty_but_origin():
                    continue
                p = meet.relint_point()
                for c in (c1, c2):
                    face = _minimal_face_at(c, p)
                    assert face.same_cone(meet), (c1.rays, c2.rays)


def test_real_cluster_cones_are_doubled_cambrian_cones():
    from affscat.sortable import SortableContext
    from affscat.weyl import WeylContext

    for ap, H, max_len in ((AP_A11, 4, 9), (AP_A2T, 4, 9)):
        weyl = WeylContext(ap.cartan)
        sc = SortableContext(weyl, ap.cox)
        sc_inv = SortableContext(weyl, ap.cox.inverse())
        cambrian = {
            sc.cambrian_cone(w.element).canonical_key
            for w in sc.sortables_up_to_length(max_len)
        } | {
            sc_inv.cambrian_cone(w.element).negate().canonical_key
            for w in sc_inv.sortables_up_to_length(max_len)
        }
        real, _, _ = ap.clusters(H)
        for cluster in real:
            cone = ap.fan_cone(cluster)
            assert cone.canonical_key in cambrian, cluster


def test_nu_linear_on_cluster_cones():
    import random

    rng = random.Random(5)
    for ap, H in ((AP_A11, 3), (AP_A2T, 3)):
        real, imaginary, _ = ap.clusters(H)
        for cluster in real + imaginary:
            for _ in range(6):
                coeffs = [rng.randint(0, 4) for _ in cluster]
                combo = tuple(
                    sum(c * r[j] for c, r in zip(coeffs, cluster))
                    for j in range(ap.n)
                )
                expect = tuple(
                    sum(c * v for c, v in zip(coeffs, vals))
                    for vals in zip(*(ap.cox.nu(r) for r in cluster))
                )
                assert ap.cox.nu(combo) == expect, cluster


def test_sigma_precondition():
    import pytest

    # In the A_3^(1) orientation with order (0,1,3,2), letter 1 is neither
    # initial nor final.
    b = ExchangeMatrix.from_rows(
        [[0, 1, 0, 1], [-1, 0, 1, 0], [0, -1, 0, -1], [-1, 0, 1, 0]]
    )
    ap = APContext(coxeter_context(b))
    assert not ap.cox.is_initial(1) and not ap.cox.is_final(1)
    with pytest.raises(ValueError):
        ap.sigma(1, ap.delta)
    assert ap.sigma(0, ap.delta) == ap.delta


def test_resolution_cap_error():
    import pytest

    from affscat.almost_positive import ResolutionCapExceeded

    fresh = make([[0, 2], [-2, 0]])  # bypass the degree memo
    with pytest.raises(ResolutionCapExceeded):
        fresh.compatibility_degree((2, 1), (1, 2), step_cap=0)
