import math
import random

import pytest

from metastable import (
    Net,
    SpaceError,
    binary_space,
    build_sampling_suite,
    cesaro_envelope,
    cesaro_envelope_ok,
    cesaro_rotation_nets,
    empirical_rate,
    euclidean_space,
    finite_space_ump_check,
    identity_sampling,
    ingest_csv,
    is_witness,
    make_omega_window,
    paracompact_nets,
    unit_interval_space,
)
from oracles import brute_witness


class TestCesaroNets:
    def test_quarter_turn_exact_zeros(self):
        net = cesaro_rotation_nets([math.pi / 2], 64)[0]
        for n in range(4, 64, 4):
            assert net.value(n) == (0.0, 0.0)

    def test_index_zero_is_start_vector(self):
        net = cesaro_rotation_nets([0.3], 10)[0]
        assert net.value(0) == (1.0, 0.0)

    def test_zero_angle_constant(self):
        net = cesaro_rotation_nets([0.0], 10)[0]
        assert all(v == (1.0, 0.0) for v in net.values)
        assert net.target == (1.0, 0.0)

    def test_generic_angle_matches_direct_sum(self):
        theta = 0.7
        net = cesaro_rotation_nets([theta], 20)[0]
        for n in (1, 5, 13):
            sx = sum(math.cos(k * theta) for k in range(n)) / n
            sy = sum(math.sin(k * theta) for k in range(n)) / n
            x, y = net.value(n)
            assert math.isclose(x, sx, abs_tol=1e-12)
            assert math.isclose(y, sy, abs_tol=1e-12)

    def test_envelope_value(self):
        assert math.isclose(cesaro_envelope(math.pi, 10), 0.1)

    def test_envelope_ok_on_many_angles(self):
        angles = [0.1, 0.5, 1.0, math.pi / 2, math.pi, 2.5, 3.0]
        for theta, net in zip(angles, cesaro_rotation_nets(angles, 500)):
            assert cesaro_envelope_ok(net, theta)

    def test_envelope_rejects_zero_angle(self):
        with pytest.raises(ValueError):
            cesaro_envelope(0.0, 5)


class TestEmpiricalRate:
    def _family(self):
        w = make_omega_window(8)
        return [
            Net(w, unit_interval_space(), tuple(1.0 / (p + k + 1) for p in range(8)))
            for k in range(3)
        ]

    def test_report_shape_and_covers(self):
        family = self._family()
        w = family[0].window
        suite = build_sampling_suite(w, ["identity", "successor"])
        report = empirical_rate(family, [0.5, 0.25], suite)
        assert report.window_size == 8
        assert report.eps_grid == (0.5, 0.25)
        assert not report.refuted
        for cell in report.cells:
            eta = suite[cell.sampling_id]
            for i in cell.cover_set:
                assert any(is_witness(a, cell.eps, eta, i) for a in family)
            # cover serves every net
            for a in family:
                assert any(is_witness(a, cell.eps, eta, i) for i in cell.cover_set)

    def test_witnesses_match_oracle(self):
        family = self._family()
        w = family[0].window
        suite = build_sampling_suite(w, ["random-k"], seed=3, random_count=4)
        report = empirical_rate(family, [0.3], suite)
        for cell in report.cells:
            eta = suite[cell.sampling_id]
            assert cell.witnesses == tuple(
                brute_witness(a, cell.eps, eta) for a in family
            )

    def test_alternating_net_only_top_witnesses(self):
        # the top's forced singleton block always witnesses, so the flag
        # stays down, but the cover degenerates to the top alone and the
        # Cauchy check still reports no stable tail
        w = make_omega_window(4)
        family = [Net(w, binary_space(), (1, 0, 1, 0))]
        suite = build_sampling_suite(w, ["successor"])
        report = empirical_rate(family, [0.5], suite)
        assert not report.refuted
        assert report.cells[0].cover_set == (3,)
        assert report.cauchy_indices == (((0.5, None),),)

    def test_deterministic(self):
        family = self._family()
        w = family[0].window
        suite = build_sampling_suite(w, ["random-k"], seed=7)
        a = empirical_rate(family, [0.5, 0.25], suite)
        b = empirical_rate(family, [0.5, 0.25], suite)
        assert a == b

    def test_empty_inputs_rejected(self):
        with pytest.raises(ValueError):
            empirical_rate([], [0.5], {"id": identity_sampling(make_omega_window(2))})


class TestFiniteSpaceUmp:
    def test_compact_family_gets_sets(self):
        nets = paracompact_nets(4, 12)
        w = nets[0].window
        suite = build_sampling_suite(w, ["identity", "successor"])
        verdict = finite_space_ump_check(
            {f"x{p}": nets[p] for p in range(4)}, [0.5], suite
        )
        assert verdict.ok and not verdict.non_cauchy_points
        assert len(verdict.sets) == 2
        for (eps, sid), cover in verdict.sets:
            eta = suite[sid]
            for a in nets:
                assert any(is_witness(a, eps, eta, i) for i in cover)

    def test_precondition_failure(self):
        w = make_omega_window(6)
        bad = Net(w, binary_space(), (1, 0, 1, 0, 1, 0))
        good = Net(w, binary_space(), (0,) * 6)
        verdict = finite_space_ump_check(
            {"p": good, "q": bad}, [0.5, 0.25], {"id": identity_sampling(w)}
        )
        assert not verdict.ok
        assert verdict.non_cauchy_points == (("q", 0.25),)
        assert verdict.sets == ()


class TestIngestCsv:
    def test_scalar_columns(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0.1,0.9\n0.2,0.8\n0.3,0.7\n")
        nets = ingest_csv(p, unit_interval_space())
        assert len(nets) == 2
        assert nets[0].values == (0.1, 0.2, 0.3)
        assert nets[1].values == (0.9, 0.8, 0.7)

    def test_euclidean_grouping(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("1,0,0,1\n0,1,1,0\n")
        nets = ingest_csv(p, euclidean_space(2))
        assert len(nets) == 2
        assert nets[0].values == ((1.0, 0.0), (0.0, 1.0))

    def test_euclidean_bad_grouping(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("1,0,0\n0,1,1\n")
        with pytest.raises(SpaceError):
            ingest_csv(p, euclidean_space(2))

    def test_binary_coercion_and_rejection(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("1,0\n0,1\n")
        nets = ingest_csv(p, binary_space())
        assert nets[0].values == (1, 0)
        p.write_text("1,0\n0,2\n")
        with pytest.raises(SpaceError) as e:
            ingest_csv(p, binary_space())
        assert "row 2" in str(e.value)

    def test_ragged_rejected(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("1,2\n3\n")
        with pytest.raises(SpaceError):
            ingest_csv(p, unit_interval_space())

    def test_non_numeric_rejected(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("1,x\n")
        with pytest.raises(SpaceError) as e:
            ingest_csv(p, unit_interval_space())
        assert "row 1" in str(e.value)


class TestSamplingSuite:
    def test_names(self):
        w = make_omega_window(8)
        suite = build_sampling_suite(w, ["identity", "successor", "doubling"])
        assert set(suite) == {"identity", "successor", "doubling"}
        assert suite["successor"].at(3) == frozenset({3, 4})
        assert suite["doubling"].at(3) == frozenset({3, 6})

    def test_random_needs_seed(self):
        w = make_omega_window(4)
        with pytest.raises(ValueError):
            build_sampling_suite(w, ["random-k"])

    def test_random_seeded_reproducible(self):
        w = make_omega_window(12)
        a = build_sampling_suite(w, ["random-k"], seed=5)
        b = build_sampling_suite(w, ["random-k"], seed=5)
        assert a == b
        assert len(a) == 8

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            build_sampling_suite(make_omega_window(2), ["bogus"])
