from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acslie import catalog
from acslie.equivalence import (N4_J2_TO_J1, NON_RATIONAL, DegenerateElement, act, c_value, canonicalize,
                                circle_equation_holds, distinguished, family_tags, group_element,
                                intertwiner_check, nonproper_to_j2, orbit_invariant, orbit_membership_check,
                                recognize_affc_j1, sample_elements, separating_fields)
from acslie.linalg import Mat

from conftest import cached_fingerprint, small_rationals

nonzero = small_rationals.filter(lambda x: x != 0)


def inst(name, **p):
    return catalog.instantiate(name, p)


class TestIntertwiner:
    def test_n5_phi(self):
        L, J11 = inst("n5-raw", s=1, t=1)
        _, J01 = inst("n5-raw", s=0, t=1)
        phi = group_element("n5-raw", "phi", {"s": 1, "t": 1})
        assert intertwiner_check(L, J11, L, J01, phi)

    def test_identity(self):
        L, J = inst("n1")
        assert intertwiner_check(L, J, L, J, Mat.identity(6))

    def test_s1_map(self):
        L1, J1 = inst("s1-J1")
        L2, J2 = inst("s1-raw", a=1, b=0)
        assert intertwiner_check(L1, J1, L2, J2, group_element("s1-J1", "phi", {"a": 1, "b": 0}))

    def test_wrong_structure(self):
        L, J1 = inst("affC-J1")
        _, J2 = inst("affC-J2")
        assert not intertwiner_check(L, J1, L, J2, Mat.identity(4))


class TestFingerprint:
    def test_affc_proper_flag(self):
        f1, f2 = cached_fingerprint("affC-J1"), cached_fingerprint("affC-J2")
        assert "proper" in separating_fields(f1, f2)
        assert distinguished(f1, f2) == "distinguished"

    def test_n2_signatures(self):
        f1, f2 = cached_fingerprint("n2-plus"), cached_fingerprint("n2-minus")
        assert f1.bsig == (0, 4) and f2.bsig == (2, 2)
        assert separating_fields(f1, f2) == ["bsig"]

    def test_n3_n4_pencil(self):
        f3 = cached_fingerprint("n3-canonical", {"s": F(0)})
        f4 = cached_fingerprint("n4-J1", {"t": F(1)})
        assert (f3.pencil, f4.pencil) == ("split", "definite")
        assert separating_fields(f3, f4) == ["pencil"]

    def test_n4_families_not_distinguished(self):
        f1 = cached_fingerprint("n4-J1", {"t": F(1)})
        f2 = cached_fingerprint("n4-J2", {"t": F(1)})
        assert f1.kernel_sample == f2.kernel_sample == "unstable"
        assert distinguished(f1, f2) == "not distinguished"
        assert cached_fingerprint("n4-J0").kernel_sample == "stable"

    @given(small_rationals, nonzero)
    def test_n4_families_intertwined(self, s, t):
        L, J1 = inst("n4-raw-1", s=s, t=t)
        _, J2 = inst("n4-raw-2", s=s, t=t)
        assert intertwiner_check(L, J2, L, J1, N4_J2_TO_J1)

    def test_killing_separates_g4_from_affc(self):
        f1, f2 = cached_fingerprint("g4"), cached_fingerprint("affC-J2")
        assert separating_fields(f1, f2) == ["killing"]


class TestGroupElements:
    def test_affc_identity(self):
        g = group_element("affC-J1", "aut", {"a": 1, "b": 0, "c": 0, "d": 0, "eps": 1})
        assert g == Mat.identity(4)

    def test_n3_g_plus(self):
        g = group_element("n3-raw", "G+", {"a": 2, "b": 0, "c": 1, "d": 0})
        assert (g[4, 4], g[5, 5]) == (4, 1)

    def test_n7_cx(self):
        g = group_element("n7-raw", "Cx", {"a": 0, "b": 1})
        assert g[2, 2] == 1

    def test_degenerate(self):
        with pytest.raises(DegenerateElement):
            group_element("n7-raw", "Cx", {"a": 0, "b": 0})

    def test_tags(self):
        assert set(family_tags("n4-raw-1")) >= {"G1+", "G1-", "G2+", "G2-"}
        with pytest.raises(KeyError):
            group_element("n7-raw", "nope", {})

    @given(st.sampled_from(["aut", "phi", "psi", "phi-printed", "psi-printed"]),
           small_rationals, small_rationals, small_rationals, small_rationals)
    def test_affc_elements_are_automorphisms(self, tag, a, b, c, d):
        if a == b == 0:
            return
        group_element("affC-J1", tag, {"a": a, "b": b, "c": c, "d": d})


class TestOrbits:
    def test_c_value(self):
        assert c_value({"s": 1, "t": 1}) == 3

    def test_n7_fixed_points(self):
        assert orbit_invariant("n7-raw", {"s": 0, "t": 1}).value == (1, 2)
        assert orbit_invariant("n7-raw", {"s": 0, "t": -1}).value == (-1, -2)

    def test_n3(self):
        assert orbit_invariant("n3-raw", {"s": F(1, 2), "t": -3}).value == (F(-1, 2),)
        assert canonicalize("n3-raw", {"s": F(1, 2), "t": -3}) == {"s": F(-1, 2), "t": 1}

    def test_n5(self):
        assert canonicalize("n5-raw", {"s": 7, "t": 2}) == {"s": 0, "t": 1}

    def test_n7_canonical(self):
        assert canonicalize("n7-raw", {"s": 0, "t": F(1, 2)}) == {"s": 0, "t": F(1, 2)}

    def test_non_rational_representative(self):
        out = canonicalize("n7-raw", {"s": 1, "t": 1})
        assert out == {"c": 3, "marker": NON_RATIONAL}

    def test_not_an_orbit_entry(self):
        with pytest.raises(KeyError):
            orbit_invariant("n1", {})

    @pytest.mark.parametrize("entry", ["n7-raw", "n4-raw-1", "n4-raw-2"])
    def test_samples_preserve_c(self, entry):
        p = {"s": F(1, 2), "t": F(2)}
        c = c_value(p)
        from acslie.equivalence import _element, _family
        moved = 0
        for tag, gp in sample_elements(entry, 40):
            image = act(entry, _element(_family(entry), tag, gp), p)
            assert image is not None
            assert abs(c_value(image)) == abs(c)
            assert circle_equation_holds(c_value(image), image)
            moved += image != p
        assert moved

    def test_n3_action_preserves_invariant(self):
        from acslie.equivalence import _element
        p = {"s": F(1), "t": F(2)}
        for tag, gp in sample_elements("n3-raw", 30):
            image = act("n3-raw", _element("n3", tag, gp), p)
            assert orbit_invariant("n3-raw", image) == orbit_invariant("n3-raw", p)


class TestMembership:
    def test_n3_connected(self):
        r = orbit_membership_check("n3-raw", {"s": 1, "t": 2}, {"s": 1, "t": 5})
        assert r.connected
        tag, gp = r.element
        g = group_element("n3-raw", tag, gp)
        g = g.inverse() if r.inverse else g
        assert act("n3-raw", g, {"s": 1, "t": 2}) == {"s": 1, "t": 5}

    def test_n3_quoted_element(self):
        # a^2 + b^2 = 5/2 with c = 1, d = 0 rescales t by 2/5; its inverse takes t = 2 to t = 5
        g = group_element("n3-raw", "G+", {"a": F(3, 2), "b": F(1, 2), "c": 1, "d": 0})
        assert act("n3-raw", g.inverse(), {"s": 1, "t": 2}) == {"s": 1, "t": 5}

    def test_n7_fixed_points_apart(self):
        r = orbit_membership_check("n7-raw", {"s": 0, "t": 1}, {"s": 0, "t": -1})
        assert not r.connected and "certificate" in r.verdict

    def test_identity(self):
        r = orbit_membership_check("n4-raw-1", {"s": 1, "t": 2}, {"s": 1, "t": 2})
        assert r.connected and r.element[0] == "identity"

    def test_n5_composite(self):
        assert orbit_membership_check("n5-raw", {"s": 7, "t": 2}, {"s": 0, "t": 1}).connected

    def test_n4_sampled(self):
        r = orbit_membership_check("n4-raw-1", {"s": 1, "t": 2}, {"s": F(-19, 25), "t": F(58, 25)})
        assert r.connected


class TestPipelines:
    @given(small_rationals, small_rationals, small_rationals, small_rationals)
    def test_recognition(self, c, d, x, y):
        if c == d == 0:
            return
        r = recognize_affc_j1(c, d, x, y)
        assert r.bracket_matches and r.structure_matches

    @given(small_rationals, small_rationals, small_rationals, small_rationals)
    def test_nonproper(self, a, b, p, q):
        if a == b == 0:
            return
        r = nonproper_to_j2(a, b, p, q)
        assert r.ok and r.details["matches -J_(a,b)"]

    def test_degenerate(self):
        with pytest.raises(DegenerateElement):
            recognize_affc_j1(0, 0, 1, 1)
