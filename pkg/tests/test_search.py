import io

import numpy as np
import pytest

from lapcex import bounds
from lapcex.graphs import (Graph6ParseError, from_edges, from_graph6,
                           generate_complete, generate_cycle, to_graph6)
from lapcex.search import (REPORT_HEADER, check_single, evaluate_chunk,
                           exhaustive_check, stream_check, violation_profile)

# 12-vertex subquartic counterexample found by the full built-in scan: it
# violates exactly these 23 bounds and its spectral radius is 6 + sqrt(2)
SQ_STAR_G6 = "Ks`raOgC?I_U"
SQ_STAR_BOUNDS = [2, 3, 15, 28, 29, 31, 32, 36, 43, 49, 52, 53, 54, 55, 57,
                  58, 59, 60, 61, 62, 63, 64, 67]


class TestEvaluateChunk:
    def test_matches_direct_reward(self, connected_by_order):
        specs = bounds.registry()
        for n in (3, 4, 5):
            graphs = connected_by_order[n]
            mu, rhs = evaluate_chunk(n, [g.rows for g in graphs], specs)
            for b, g in enumerate(graphs):
                for s, spec in enumerate(specs):
                    direct = bounds.reward(spec, g)
                    assert mu[b] - rhs[s, b] == pytest.approx(direct, abs=1e-12)


class TestExhaustive:
    def test_small_orders_clean(self):
        res = exhaustive_check(None, 7)
        assert res.scanned == 853
        assert res.reports == []
        assert max(res.max_reward.values()) <= 1e-9

    def test_counts_subsets(self):
        res = exhaustive_check([1, 31], 5, max_degree=3)
        assert res.scanned == len(list(__import__("lapcex").enumerate_connected(5, 3)))
        assert set(res.max_reward) == {1, 31}

    def test_report_csv_streamed(self):
        buf = io.StringIO()
        exhaustive_check([1], 4, report_file=buf)
        lines = buf.getvalue().strip().splitlines()
        assert lines[0] == ",".join(REPORT_HEADER)
        assert len(lines) == 1  # no violations at this order


class TestStream:
    def test_k3_against_bound_1(self):
        res = stream_check([to_graph6(generate_complete(3))], [1])
        assert res.scanned == 1 and res.reports == []
        # mu(K3) = 3 against rhs 4
        assert res.max_reward[1] == pytest.approx(-1.0)

    def test_empty_stream(self):
        res = stream_check([], [1])
        assert res.scanned == 0 and res.skipped == 0 and res.reports == []

    def test_disconnected_skipped(self):
        g6 = to_graph6(from_edges(4, [(0, 1), (2, 3)]))
        res = stream_check([g6, to_graph6(generate_complete(3))], [1])
        assert res.scanned == 1 and res.skipped == 1

    def test_counting_invariant(self):
        lines = [to_graph6(generate_complete(3)), b"",
                 to_graph6(from_edges(4, [(0, 1), (2, 3)])),
                 to_graph6(generate_cycle(4))]
        res = stream_check(lines, [1])
        consumed = len([l for l in lines if l.strip()])
        assert res.scanned + res.skipped == consumed

    def test_strict_parse_error_reports_line(self):
        with pytest.raises(Graph6ParseError, match="line 2"):
            stream_check([to_graph6(generate_complete(3)), b"!!bad!!"], [1])

    def test_lenient_parse_error_skips(self):
        res = stream_check([b"!!bad!!", to_graph6(generate_complete(3))], [1],
                           strict=False)
        assert res.scanned == 1 and res.skipped == 1

    def test_finds_violation(self):
        res = stream_check([SQ_STAR_G6], [2])
        assert len(res.reports) == 1
        r = res.reports[0]
        assert r.bound_id == 2 and r.reward > 0 and r.source == "stream"

    def test_mixed_orders(self):
        lines = [to_graph6(generate_complete(n)) for n in (3, 4, 3, 5)]
        res = stream_check(lines, [1], chunk_size=2)
        assert res.scanned == 4


class TestCheckSingle:
    def test_k2_bound_33(self):
        rows = check_single(to_graph6(generate_complete(2)), [33])
        assert rows[0]["reward"] == pytest.approx(0.0, abs=1e-12)

    def test_c4_bound_1(self):
        rows = check_single(to_graph6(generate_cycle(4)), [1])
        assert rows[0]["mu"] == pytest.approx(4.0)
        assert rows[0]["rhs"] == pytest.approx(4.0)
        assert abs(rows[0]["reward"]) <= 1e-9

    def test_default_covers_all_bounds(self):
        rows = check_single(to_graph6(generate_cycle(5)))
        assert [r["bound_id"] for r in rows] == list(range(1, 69))

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError, match="disconnected"):
            check_single(to_graph6(from_edges(4, [(0, 1), (2, 3)])))

    def test_violation_profile_of_witness(self):
        assert violation_profile(from_graph6(SQ_STAR_G6)) == SQ_STAR_BOUNDS


class TestReportRecompute:
    def test_reward_recomputes_from_g6(self):
        res = stream_check([SQ_STAR_G6], None)
        assert res.reports
        for r in res.reports:
            again = bounds.reward(r.bound_id, from_graph6(r.g6))
            assert again == pytest.approx(r.reward, abs=1e-12)
