import itertools
import random

import pytest

from metastable import (
    Net,
    binary_space,
    build_rate,
    find_pointed_witness,
    find_witness,
    identity_sampling,
    is_witness,
    make_custom_window,
    make_omega_window,
    random_sampling,
    replay_certificate,
    successor_sampling,
    verify_rate,
    window_cauchy_index,
)
from metastable.families import (
    BRUTE_FORCE_CAP,
    FamilyError,
    FamilySpec,
    closed_form_refutation,
    d_member,
    enumerate_family,
    paracompact_nets,
    rate_B,
    refute_C,
    refute_D_pointed,
)


def members(tag, window, **params):
    return list(enumerate_family(FamilySpec(tag, window, params)))


class TestEnumeration:
    def test_B_on_omega3(self):
        got = [m.values for m in members("B", make_omega_window(3))]
        assert got == [(1, 1, 1), (1, 1, 0), (1, 0, 0), (0, 0, 0)]

    def test_B0_drops_constant_one(self):
        got = [m.values for m in members("B0", make_omega_window(3))]
        assert (1, 1, 1) not in got and len(got) == 3

    def test_C_on_omega2(self):
        got = sorted(m.values for m in members("C", make_omega_window(2)))
        assert got == [(0, 0), (1, 0)]

    def test_C_count_on_chain(self):
        assert len(members("C", make_omega_window(6))) == 2**5

    def test_D_members(self):
        w = make_omega_window(6)
        got = [m.values for m in members("D", w, alphas=[0, 3])]
        assert got == [(0, 1, 1, 1, 1, 1), (0, 1, 0, 1, 1, 1)]
        for m in members("D", w):
            assert m.target == 1

    def test_targets(self):
        for m in members("B", make_omega_window(4)):
            assert m.target == (1 if all(v == 1 for v in m.values) else 0)
        for m in members("C", make_omega_window(4)):
            assert m.target == 0

    def test_nonchain_brute_force_matches_invariants(self):
        # diamond window: enumeration must respect the partial order
        elements = [0, 1, 2, 3]
        pairs = {(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)}
        leq = lambda x, y: x == y or (x, y) in pairs
        join = lambda x, y: x if leq(y, x) else (y if leq(x, y) else 3)
        w = make_custom_window(elements, leq, join)
        b = [m.values for m in members("B", w)]
        # non-increasing: value at 0 >= values at 1, 2 >= value at 3
        assert (1, 1, 1, 1) in b and (1, 1, 0, 0) in b
        assert (0, 1, 0, 0) not in b
        c = [m.values for m in members("C", w)]
        assert all(v[3] == 0 for v in c)

    def test_nonchain_cap(self):
        elements = list(range(BRUTE_FORCE_CAP + 2))
        pairs = set()
        leq = lambda x, y: x == y or (x == 0) or (y == len(elements) - 1)
        # build a genuine (crude) order: 0 bottom, last top, middles incomparable
        top = len(elements) - 1
        join = lambda x, y: x if leq(y, x) else (y if leq(x, y) else top)
        w = make_custom_window(elements, leq, join)
        with pytest.raises(FamilyError):
            members("B", w)


class TestRateB:
    def test_identity_sampling(self):
        w = make_omega_window(6)
        assert rate_B(identity_sampling(w), w) == frozenset({0})

    def test_successor_sampling(self):
        w = make_omega_window(6)
        assert rate_B(successor_sampling(w), w) == frozenset({0, 1})

    def test_uniform_over_family_random_samplings(self):
        rng = random.Random(42)
        w = make_omega_window(8)
        family = members("B", w)
        for _ in range(100):
            eta = random_sampling(w, rng)
            cand = rate_B(eta, w)
            eps = rng.choice((0.25, 0.5, 0.99))
            for m in family:
                assert any(is_witness(m, eps, eta, i) for i in cand)

    def test_via_verify_rate(self):
        w = make_omega_window(6)
        rng = random.Random(9)
        suite = {f"s{i}": random_sampling(w, rng) for i in range(20)}
        rate = build_rate(suite, lambda t, eta: rate_B(eta, w))
        family = members("B", w)
        for sid in suite:
            assert verify_rate(family, rate, 0.5, sid).overall


class TestRefuteC:
    def test_example_on_omega6(self):
        w = make_omega_window(6)
        cert = refute_C({0, 1, 2}, w, 0.5)
        assert cert.sampling.at(0) == frozenset({3, 4})
        assert cert.sampling.at(5) == frozenset({5})
        assert cert.member.values == (0, 0, 0, 1, 0, 0)
        assert replay_certificate(cert)

    def test_member_is_in_family(self):
        w = make_omega_window(8)
        cert = refute_C({2, 4}, w, 0.5)
        assert cert.member.values in {m.values for m in members("C", w)}

    def test_no_room_above(self):
        w = make_omega_window(4)
        with pytest.raises(FamilyError):
            refute_C({3}, w, 0.5)

    def test_eps_bounds(self):
        w = make_omega_window(6)
        with pytest.raises(FamilyError):
            refute_C({0}, w, 1.5)

    def test_randomized_always_replays(self):
        rng = random.Random(314)
        for _ in range(500):
            n = rng.randint(4, 32)
            w = make_omega_window(n)
            s = {rng.randrange(n - 2) for _ in range(rng.randint(1, 5))}
            cert = refute_C(s, w, rng.choice((0.25, 0.5, 0.75)))
            assert replay_certificate(cert)
            # directly: no i in s witnesses the member
            for i in s:
                assert not is_witness(cert.member, cert.eps, cert.sampling, i)


class TestRefuteDPointed:
    def test_example_on_omega6(self):
        w = make_omega_window(6)
        cert = refute_D_pointed({0, 1}, w)
        assert cert.member.values == (0, 1, 0, 1, 1, 1)
        assert cert.pointed_target == 1
        assert replay_certificate(cert)

    def test_window_too_small(self):
        w = make_omega_window(4)
        with pytest.raises(FamilyError):
            refute_D_pointed({2}, w)

    def test_randomized_always_replays(self):
        rng = random.Random(2718)
        for _ in range(500):
            n = rng.randint(5, 32)
            w = make_omega_window(n)
            s = {rng.randrange(n - 3) for _ in range(rng.randint(1, 5))}
            cert = refute_D_pointed(s, w, eps=rng.choice((0.25, 0.5)))
            assert replay_certificate(cert)
            assert cert.member.values in {m.values for m in members("D", w)}

    def test_members_converge_individually(self):
        # pointwise convergence to 1 despite no uniform pointed rate
        w = make_omega_window(10)
        for m in members("D", w, alphas=range(8)):
            assert window_cauchy_index(m, 0.5) is not None


class TestParacompact:
    def test_value_pattern(self):
        nets = paracompact_nets(3, 6)
        assert [n.values for n in nets] == [
            (1.0, 1.0, 1.0, 1.0, 1.0, 1.0),
            (1.0, 0.0, 1.0, 1.0, 1.0, 1.0),
            (1.0, 0.0, 1.0, 1.0, 1.0, 1.0),
        ]
        # at point p the value is 0 exactly at odd steps <= p
        deep = paracompact_nets(4, 6)[3]
        assert deep.values == (1.0, 0.0, 1.0, 0.0, 1.0, 1.0)

    def test_each_net_eventually_one(self):
        for n in paracompact_nets(4, 12):
            assert n.values[-3:] == (1.0, 1.0, 1.0)
            assert n.target == 1.0

    def test_pointwise_convergence(self):
        for n in paracompact_nets(5, 16):
            i = find_pointed_witness(n, 1.0, 0.5, identity_sampling(n.window))
            assert i is not None

    def test_closed_form_refutation(self):
        spec = FamilySpec("paracompact", make_omega_window(12), {"n_points": 6})
        cert = closed_form_refutation(spec, {0, 1, 2}, 0.5, pointed=True)
        assert cert is not None and replay_certificate(cert)
        assert cert.pointed_target == 1.0

    def test_refutation_needs_deep_point(self):
        spec = FamilySpec("paracompact", make_omega_window(12), {"n_points": 2})
        assert closed_form_refutation(spec, {3, 4}, 0.5, pointed=True) is None


class TestClosedFormDispatch:
    def test_C_plain(self):
        spec = FamilySpec("C", make_omega_window(6))
        cert = closed_form_refutation(spec, {0, 1}, 0.5)
        assert cert is not None and replay_certificate(cert)

    def test_B_has_no_refutation(self):
        spec = FamilySpec("B", make_omega_window(6))
        assert closed_form_refutation(spec, {0, 1}, 0.5) is None

    def test_B0_pointed(self):
        spec = FamilySpec("B0", make_omega_window(6))
        cert = closed_form_refutation(spec, {0, 1}, 0.5, pointed=True)
        assert cert is not None and replay_certificate(cert)
        assert cert.member.values in {m.values for m in members("B0", spec.window)}

    def test_failure_returns_none(self):
        # candidate set at the top: construction impossible, not an exception
        spec = FamilySpec("C", make_omega_window(3))
        assert closed_form_refutation(spec, {2}, 0.5) is None


class TestDMember:
    def test_pattern(self):
        w = make_omega_window(7)
        assert d_member(w, 4).values == (0, 1, 0, 1, 0, 1, 1)

    def test_alpha_bounds(self):
        with pytest.raises(FamilyError):
            d_member(make_omega_window(3), 5)

    def test_unknown_tag_rejected(self):
        with pytest.raises(FamilyError):
            FamilySpec("X", make_omega_window(3))
