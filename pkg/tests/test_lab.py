import json

import pytest

from mtlkit.concrete import parse
from mtlkit.evaluators import EvalConfig
from mtlkit.lab import (Binding, Corpus, EquivReport, acceptance_family_check, equiv_check,
                        family_check, grade_check, hcompat_experiment, indist_experiment,
                        lemma_suite, root_degrees)
from mtlkit.lab.lemmas import SUITES
from mtlkit.models import chain
from mtlkit.translators import osgmc_to_mtl, stdlib

C5 = Corpus.enumerate(5, ("a", "q"), unordered=True)


def gmc_side(text):
    return parse(text, "gmc"), Binding("gmc")


class TestEquivCheck:
    def test_until_against_encoding(self):
        lhs = (parse("E (a U q)", "cctl"), Binding("cctl"))
        report = equiv_check(lhs, gmc_side("mu X. q | (a & <1> X)"), C5)
        assert report.status == "pass" and report.models > 1000

    def test_density_against_translation(self):
        f = stdlib("phi_den_gmc")
        out = osgmc_to_mtl(f, "x")
        report = equiv_check((f, Binding("gmc")), (out, Binding.for_translation(out)),
                             Corpus.enumerate(5, ("a",)))
        assert report.ok

    def test_counterexample_reported(self):
        report = equiv_check(gmc_side("a"), gmc_side("q"), C5)
        assert report.status == "fail"
        cex = report.counterexample
        assert {"model", "node", "lhs", "rhs", "model_id"} <= set(cex)
        assert cex["lhs"] != cex["rhs"]

    def test_parallel_matches_serial(self):
        lhs, rhs = gmc_side("mu X. a | <1> X"), gmc_side("mu X. a | <2> X")
        serial = equiv_check(lhs, rhs, C5, jobs=1)
        parallel = equiv_check(lhs, rhs, C5, jobs=2)
        assert serial.status == parallel.status == "fail"
        assert serial.counterexample["index"] == parallel.counterexample["index"]

    def test_jobs_from_environment(self, monkeypatch):
        monkeypatch.setenv("MTLKIT_JOBS", "2")
        assert equiv_check(gmc_side("a"), gmc_side("!!a"), Corpus.chains(3, ("a",))).ok

    def test_cctl_binding_uses_domain(self):
        maximal = Binding("cctl", EvalConfig(cctl_domain="maximal"))
        lhs = (parse("E G !a", "cctl"), Binding("cctl"))
        assert not equiv_check(lhs, (lhs[0], maximal), C5).ok


class TestCorpus:
    def test_sources(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps(chain(2).to_json()))
        assert len(list(Corpus.files([path]).models())) == 1
        assert len(list(Corpus.chains(2, ("a",)).models())) == 2 + 4
        assert len(list(Corpus.from_family("d", [2], 2).models())) == 1

    def test_model_ids_unique(self):
        ids = [mid for mid, _ in C5.models()]
        assert len(ids) == len(set(ids))


class TestReport:
    def test_json(self):
        report = EquivReport("pass", 3, None, 1.5)
        assert json.loads(json.dumps(report.to_json())) == {
            "status": "pass", "models": 3, "counterexample": None, "elapsed_ms": 1.5}

    def test_fail_needs_counterexample(self):
        with pytest.raises(ValueError):
            EquivReport("fail", 1, None, 0.0)


class TestLemmaSuites:
    @pytest.mark.parametrize("name", sorted(SUITES))
    def test_suite_passes(self, name):
        report = lemma_suite(name, Corpus.enumerate(4, ("a",)), samples=200, seed=3)
        assert report.status == "pass", report.counterexample
        assert report.details["samples"] == 200

    def test_fixed_finite_witness_formula(self):
        report = lemma_suite("finite-witness", Corpus.enumerate(5, ("a",)), 50,
                             formula=stdlib("af_a_gmc"))
        assert report.ok

    def test_seeded(self):
        a = lemma_suite("shannon", C5, 30, seed=1)
        b = lemma_suite("shannon", C5, 30, seed=1)
        assert a.models == b.models

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            lemma_suite("nope", C5)


class TestExperiments:
    def test_root_degrees(self):
        assert root_degrees(3) == {"nd": 7, "d": 8, "a": 3, "na": 4}

    def test_structural_checks(self):
        for report in (family_check(), grade_check(), acceptance_family_check()):
            assert report.status == "pass", report.counterexample

    def test_indist_small_formulas_agree(self):
        report = indist_experiment(2, 3, 1)
        assert report.status == "approx-report"
        assert report.details["disagreements"] == []

    def test_indist_finds_grade_separator(self):
        report = indist_experiment(2, 2, 6)
        assert any(r["formula"] == "D{4} tt" for r in report.details["disagreements"])

    def test_hcompat(self):
        report = hcompat_experiment(4, 8, 3, 3, pairs=100)
        assert report.status == "approx-report"
        assert report.details["violations"] == 0 and report.details["pairs"] == 100

    def test_hcompat_bounds(self):
        with pytest.raises(ValueError):
            hcompat_experiment(4, 8, 2, 3)
