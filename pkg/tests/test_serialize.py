import json
import random

import pytest

from metastable import (
    Net,
    Rate,
    binary_space,
    build_rate,
    euclidean_space,
    identity_sampling,
    make_custom_window,
    make_omega_window,
    product,
    random_sampling,
    refute_uniform,
    replay_certificate,
    table_space,
    unit_interval_space,
    verify_rate,
)
from metastable.families import FamilySpec, refute_C
from metastable.serialize import (
    SCHEMA_VERSION,
    SchemaError,
    analysis_report_to_dict,
    certificate_from_dict,
    certificate_to_dict,
    dumps,
    family_spec_from_dict,
    family_spec_to_dict,
    net_from_dict,
    net_to_dict,
    rate_from_dict,
    rate_to_dict,
    report_to_dict,
    sampling_from_dict,
    sampling_to_dict,
    space_from_dict,
    space_to_dict,
    ump_verdict_to_dict,
    window_from_dict,
    window_to_dict,
)


def roundtrip_window(w):
    return window_from_dict(json.loads(dumps(window_to_dict(w))))


class TestWindows:
    def test_omega(self):
        w = make_omega_window(7)
        assert roundtrip_window(w) == w

    def test_product(self):
        p = product(make_omega_window(3), make_omega_window(4))
        assert roundtrip_window(p) == p

    def test_custom_with_matrices(self):
        elements = ["bot", "a", "b", "top"]
        pairs = {("bot", "a"), ("bot", "b"), ("bot", "top"), ("a", "top"), ("b", "top")}
        leq = lambda x, y: x == y or (x, y) in pairs
        join = lambda x, y: x if leq(y, x) else (y if leq(x, y) else "top")
        w = make_custom_window(elements, leq, join)
        w2 = roundtrip_window(w)
        assert w2 == w
        assert w2.join("a", "b") == "top"


class TestSamplings:
    def test_roundtrip_random(self):
        rng = random.Random(17)
        for _ in range(20):
            w = make_omega_window(rng.randint(1, 10))
            s = random_sampling(w, rng)
            doc = json.loads(dumps(sampling_to_dict(s)))
            assert sampling_from_dict(doc) == s

    def test_canonical_set_order(self):
        w = make_omega_window(5)
        s = identity_sampling(w)
        doc = sampling_to_dict(s)
        assert doc["assign"] == [[0], [1], [2], [3], [4]]

    def test_wrong_type_rejected(self):
        with pytest.raises(SchemaError):
            sampling_from_dict(window_to_dict(make_omega_window(2)))


class TestSpacesAndNets:
    @pytest.mark.parametrize(
        "space",
        [
            binary_space(),
            unit_interval_space(),
            euclidean_space(3),
            table_space(["x", "y"], [[0, 2], [2, 0]]),
        ],
    )
    def test_space_roundtrip(self, space):
        assert space_from_dict(json.loads(dumps(space_to_dict(space)))) == space

    def test_net_roundtrip(self):
        w = make_omega_window(4)
        a = Net(w, binary_space(), (1, 0, 0, 0), target=0)
        assert net_from_dict(json.loads(dumps(net_to_dict(a)))) == a

    def test_euclidean_net_roundtrip(self):
        w = make_omega_window(2)
        a = Net(w, euclidean_space(2), ((1.0, 0.0), (0.0, 1.0)), target=(0.0, 0.0))
        assert net_from_dict(json.loads(dumps(net_to_dict(a)))) == a

    def test_bad_version_rejected(self):
        doc = net_to_dict(Net(make_omega_window(1), binary_space(), (0,)))
        doc["schema_version"] = SCHEMA_VERSION + 1
        with pytest.raises(SchemaError):
            net_from_dict(doc)


class TestRatesReportsCertificates:
    def test_rate_roundtrip_and_equivalent_lookup(self):
        rng = random.Random(23)
        w = make_omega_window(6)
        suite = {f"s{i}": random_sampling(w, rng) for i in range(3)}
        rate = build_rate(suite, lambda t, eta: {0, 3} if t > 0.25 else {5})
        back = rate_from_dict(json.loads(dumps(rate_to_dict(rate))))
        assert back == rate
        assert back.lookup(0.5, "s1") == rate.lookup(0.5, "s1")

    def test_report_document(self):
        w = make_omega_window(3)
        rate = build_rate({"id": identity_sampling(w)}, lambda t, eta: {0})
        report = verify_rate([Net(w, binary_space(), (0, 0, 0))], rate, 0.5, "id")
        doc = report_to_dict(report)
        assert doc["type"] == "witness-report" and doc["overall"] is True

    def test_certificate_roundtrip_replays(self):
        cert = refute_C({0, 1, 2}, make_omega_window(6), 0.5)
        back = certificate_from_dict(json.loads(dumps(certificate_to_dict(cert))))
        assert back == cert
        assert replay_certificate(back)

    def test_family_spec_roundtrip(self):
        spec = FamilySpec("D", make_omega_window(8), {"alphas": [0, 1, 2]})
        back = family_spec_from_dict(json.loads(dumps(family_spec_to_dict(spec))))
        assert back.tag == spec.tag and back.window == spec.window
        assert list(back.parameters["alphas"]) == [0, 1, 2]


class TestDumps:
    def test_deterministic_text(self):
        w = make_omega_window(4)
        s = identity_sampling(w)
        assert dumps(sampling_to_dict(s)) == dumps(sampling_to_dict(s))

    def test_sorted_keys_and_newline(self):
        text = dumps({"b": 1, "a": 2})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')

    def test_one_way_reports_are_json(self):
        from metastable import (
            build_sampling_suite,
            empirical_rate,
            finite_space_ump_check,
            paracompact_nets,
        )

        nets = paracompact_nets(3, 8)
        suite = build_sampling_suite(nets[0].window, ["identity"])
        report = empirical_rate(nets, [0.5], suite)
        verdict = finite_space_ump_check({"p": nets[0]}, [0.5], suite)
        json.loads(dumps(analysis_report_to_dict(report)))
        json.loads(dumps(ump_verdict_to_dict(verdict)))
