from modseq import verify
from modseq.core import ModulusContext
from modseq.structure import predict_period_constant


class TestReports:
    def test_check_records_failures(self):
        rep = verify.ConformanceReport(suite="demo")
        rep.check("claim", {"x": 1}, 2, 2)
        rep.check("claim", {"x": 2}, 2, 3)
        assert rep.instances == 2
        assert not rep.ok
        assert rep.failures[0].inputs == {"x": 2}

    def test_to_dict_roundtrips_counts(self):
        rep = verify.ConformanceReport(suite="demo")
        rep.check("claim", {}, 1, 1)
        d = rep.to_dict()
        assert d["ok"] is True and d["instances"] == 1


class TestSuites:
    def test_lemmas_small(self):
        rep = verify.verify_reduction_lemmas(2, 2, 48)
        assert rep.ok and rep.instances > 50

    def test_lemmas_p3(self):
        rep = verify.verify_reduction_lemmas(3, 2, 100)
        assert rep.ok

    def test_periods(self):
        rep = verify.verify_periods(2, 2, 40)
        assert rep.ok

    def test_structure_seeded_reproducible(self):
        a = verify.verify_structure(samples=60, seed=7)
        b = verify.verify_structure(samples=60, seed=7)
        assert a.ok and b.ok and a.instances == b.instances

    def test_vieru_small(self):
        rep = verify.verify_vieru(k_max=6, d_k_max=8)
        assert rep.ok

    def test_claim_ids_are_registered(self):
        for rep in (verify.verify_reduction_lemmas(2, 2, 40),
                    verify.verify_structure(samples=20)):
            for f in rep.failures:
                assert f.claim in verify.CLAIMS


class TestMeasuredPeriods:
    def test_window_measurement_matches_prediction(self):
        measured = verify.measure_constant_periods(2, 2, 20, (1, 2, 3))
        ctx = ModulusContext.of_prime_power(2, 2)
        for (c, s), tau in measured.items():
            assert tau == predict_period_constant(c, s, ctx)


class TestBenchmark:
    def test_small_range_agrees(self):
        rep = verify.benchmark_reduction(2, 2, 64, 96)
        assert rep.all_equal
        assert rep.speedup > 0


class TestCaseFrequencies:
    def test_every_case_occurs(self):
        freq = verify.case_frequencies(9)
        assert set(freq) == set("ABCDEF")
        assert all(v >= 4 for v in freq.values())
