# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import os
from io import StringIO

import pytest

from porehound.runners import verify
from ..testutils import eq_, includes_


class TestVerifyOptionParser(object):
    def setup_method(self):
        self.err_dump = StringIO()

    def test_parser_reads_suite(self):
        op = verify.VerifyOptionParser([__file__, "amgm", "--seed", "5"])
        eq_(op.suite, "amgm")
        run = op.overrides()["run"]
        eq_(run["suite"], "amgm")
        eq_(run["seed"], 5)

    def test_suite_option(self):
        for suite in ("all", "lemma", "mpt"):
            op = verify.VerifyOptionParser([__file__, "--suite", suite,
                "--seed", "42"])
            eq_(op.suite, suite)
            eq_(op.overrides()["run"]["suite"], suite)

    def test_suite_option_agrees_with_argument(self):
        op = verify.VerifyOptionParser([__file__, "--suite", "mpt", "mpt"])
        eq_(op.suite, "mpt")
        with pytest.raises(SystemExit):
            verify.VerifyOptionParser([__file__, "--suite", "mpt", "lemma"],
                err=self.err_dump)
        includes_(self.err_dump.getvalue(), "conflicts")

    def test_suite_option_is_checked(self):
        with pytest.raises(SystemExit):
            verify.VerifyOptionParser([__file__, "--suite", "teapot"],
                err=self.err_dump)

    def test_suite_is_optional(self):
        op = verify.VerifyOptionParser([__file__])
        eq_(op.suite, None)

    def test_parser_rejects_unknown_suite(self):
        with pytest.raises(SystemExit):
            verify.VerifyOptionParser([__file__, "teapot"], err=self.err_dump)
        includes_(self.err_dump.getvalue(), "unknown suite")

    def test_parser_rejects_no_samples(self):
        with pytest.raises(SystemExit):
            verify.VerifyOptionParser([__file__, "--samples", "0"],
                err=self.err_dump)

    def test_parser_rejects_no_workers(self):
        with pytest.raises(SystemExit):
            verify.VerifyOptionParser([__file__, "--workers", "0"],
                err=self.err_dump)


class TestVerifyRunner(object):
    def setup_method(self):
        self.out = StringIO()
        self.err = StringIO()

    def run(self, tmp_path, *args):
        runner = verify.VerifyRunner([__file__, "-o", str(tmp_path)] +
            list(args), self.out, self.err)
        return runner.execute()

    def test_sweep_passes(self, tmp_path):
        eq_(self.run(tmp_path, "lemma", "--samples", "20", "--seed", "3"), 0)
        lines = self.out.getvalue().splitlines()
        eq_(lines[0], "suite: lemma")
        eq_(lines[1], "seed: 3")
        eq_(lines[-1], "result: pass")

    def test_writes_report(self, tmp_path):
        self.run(tmp_path, "amgm", "--samples", "20")
        eq_(sorted(os.listdir(tmp_path)), ["report.csv", "summary.txt"])
        with open(os.path.join(tmp_path, "summary.txt")) as f:
            eq_(f.read(), self.out.getvalue())

    def test_same_seed_same_report(self, tmp_path):
        first, second = tmp_path / "first", tmp_path / "second"
        self.run(first, "drag", "--samples", "20", "--seed", "11")
        self.run(second, "drag", "--samples", "20", "--seed", "11")
        with open(first / "report.csv") as f:
            expected = f.read()
        with open(second / "report.csv") as f:
            eq_(f.read(), expected)

    def test_full_suite_is_reproducible(self, tmp_path):
        first, second = tmp_path / "first", tmp_path / "second"
        for directory in (first, second):
            self.run(directory, "--suite", "all", "--seed", "42",
                "--samples", "50")
        for name in ("report.csv", "summary.txt"):
            with open(first / name, "rb") as f:
                expected = f.read()
            with open(second / name, "rb") as f:
                eq_(f.read(), expected)
