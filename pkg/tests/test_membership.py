import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commcalc.magnus import Cancelled
from commcalc.membership import (
    SearchBounds,
    SearchProved,
    Unknown,
    Verified,
    Witness,
    WitnessFactor,
    check_witness,
    evidence_is_valid,
    exponent_balance,
    membership_evidence,
    replay,
    search_membership,
    trace_to_witness,
    witness_product,
)
from commcalc.words import conjugate, invert, multiply, parse_word

from conftest import XY, XYZ, words

MU1 = "x z x^-1 y x y^-1 z^-1 y x^-1 y^-1"


def w(text, a=XYZ):
    return parse_word(text, a)


class TestWitness:
    def test_relator_itself(self):
        r = w("[x,y]")
        assert check_witness(r, Witness((WitnessFactor(XYZ.identity(), 0, 1),)), [r])

    def test_conjugate(self):
        r = w("[x,y]")
        g = w("x y")
        mu = conjugate(r, g)
        assert check_witness(mu, Witness((WitnessFactor(g, 0, 1),)), [r])
        assert not check_witness(r, Witness((WitnessFactor(g, 0, 1),)), [r])

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            check_witness(w("x"), Witness((WitnessFactor(XYZ.identity(), 3, 1),)), [w("x")])

    def test_balance(self):
        g = w("y")
        one = XYZ.identity()
        assert exponent_balance(Witness((WitnessFactor(one, 0, 1), WitnessFactor(g, 0, -1))), [w("[x,y]")]) == {0: 0}
        assert exponent_balance(Witness((WitnessFactor(one, 0, 1),)), [w("[x,y]")]) == {0: 1}

    def test_dict_round_trip(self):
        wit = Witness((WitnessFactor(w("x y"), 1, -1),))
        assert Witness.from_dict(wit.to_dict(), XYZ) == wit
        with pytest.raises(ValueError):
            Witness.from_dict({"factors": [{"conjugator": "1", "relator": 0, "exponent": 2}]}, XYZ)


class TestSearch:
    def test_relator_in_one_step(self):
        ev = search_membership(w("[x,y]"), [w("[x,y]")])
        assert isinstance(ev, SearchProved) and len(ev.trace) == 1

    def test_example_mu_in_R(self):
        rels = [w("[x,y]")]
        ev = search_membership(w(MU1), rels)
        assert isinstance(ev, SearchProved)
        assert replay(ev, rels)
        wit = trace_to_witness(ev, rels)
        assert check_witness(w(MU1), wit, rels)
        assert set(exponent_balance(wit, rels).values()) == {0}

    def test_example_mu_in_S(self):
        rels = [w("[y,z]"), w("[z,x]")]
        ev = search_membership(w(MU1), rels)
        assert isinstance(ev, SearchProved)
        wit = trace_to_witness(ev, rels)
        assert check_witness(w(MU1), wit, rels)
        assert set(exponent_balance(wit, rels).values()) == {0}

    def test_abelian_obstruction(self):
        ev = search_membership(w("x"), [w("[x,y]")])
        assert isinstance(ev, Unknown) and "abelian" in ev.reason and ev.states == 0

    def test_abelian_lattice_obstruction(self):
        # x^3 is not in the lattice spanned by (2,0,0)
        ev = search_membership(w("x^3"), [w("x^2")])
        assert isinstance(ev, Unknown) and "abelian" in ev.reason

    def test_torsion_relator(self):
        ev = search_membership(w("y x^4 y^-1"), [w("x^2")])
        assert isinstance(ev, SearchProved)

    def test_bounds_exhaust(self):
        # [x,z] passes the abelian check but is nontrivial in (x,y,z : [x,y])
        ev = search_membership(w("[x,z]"), [w("[x,y]")], SearchBounds(max_length=6, max_steps=2000))
        assert isinstance(ev, Unknown)
        assert not ev.proved

    def test_bfs_strategy(self):
        rels = [w("[x,y]")]
        ev = search_membership(w(MU1), rels, SearchBounds(strategy="bfs"))
        assert isinstance(ev, SearchProved) and replay(ev, rels)

    def test_default_length_bound(self):
        mu = w(MU1)
        assert SearchBounds().resolved_length(mu, [w("[x,y]")]) == 2 * 10 + 4

    def test_bad_bounds(self):
        with pytest.raises(ValueError):
            search_membership(w("x"), [w("x")], SearchBounds(max_steps=0))
        with pytest.raises(ValueError):
            search_membership(w("x"), [w("x")], SearchBounds(strategy="dfs"))

    def test_identity_trivially_member(self):
        ev = search_membership(XYZ.identity(), [w("[x,y]")])
        assert isinstance(ev, SearchProved) and ev.trace == ()

    def test_cancellation(self):
        ev = threading.Event()
        ev.set()
        with pytest.raises(Cancelled):
            search_membership(w(MU1), [w("[y,z]"), w("[z,x]")], cancel=ev)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.tuples(words(XY, 3), st.sampled_from([1, -1])), min_size=1, max_size=2))
    def test_soundness_on_built_members(self, factors):
        """Products of conjugates of a relator are found, and every proof replays."""
        rels = [parse_word("[x,y]", XY)]
        mu = XY.identity()
        for g, e in factors:
            mu = multiply(mu, conjugate(rels[0] ** e, g))
        ev = search_membership(mu, rels, SearchBounds(max_steps=50_000))
        assert isinstance(ev, SearchProved)
        assert replay(ev, rels)
        assert check_witness(mu, trace_to_witness(ev, rels), rels)

    @settings(max_examples=30, deadline=None)
    @given(words(XY, 4), words(XY, 4))
    def test_edges_preserve_coset(self, g, h):
        """Each recorded step multiplies by an element of the normal closure (checked by witness)."""
        rels = [parse_word("[x,y^2]", XY)]
        mu = multiply(conjugate(rels[0], g), conjugate(invert(rels[0]), h))
        ev = search_membership(mu, rels, SearchBounds(max_steps=50_000))
        if isinstance(ev, SearchProved):
            wit = trace_to_witness(ev, rels)
            assert witness_product(wit, rels, XY) == mu


class TestEvidence:
    def test_verified(self):
        r = w("[x,y]")
        wit = Witness((WitnessFactor(w("z"), 0, 1),))
        ev = membership_evidence(conjugate(r, w("z")), [r], witness=wit)
        assert isinstance(ev, Verified)
        assert evidence_is_valid(ev, conjugate(r, w("z")), [r])

    def test_bad_witness(self):
        r = w("[x,y]")
        ev = membership_evidence(r, [r], witness=Witness(()))
        assert isinstance(ev, Unknown)

    def test_search_evidence_bound_to_word(self):
        rels = [w("[x,y]")]
        ev = membership_evidence(w("[x,y]"), rels)
        assert evidence_is_valid(ev, w("[x,y]"), rels)
        assert not evidence_is_valid(ev, w("[y,x]"), rels)
