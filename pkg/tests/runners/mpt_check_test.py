# coding: utf8
# Part of the porehound package for designing porous-media layouts
#
# Copyright (c) 2026 The porehound developers

import os
from io import StringIO

import pytest

from porehound.runners import mpt_check
from porehound.runners.base import run_main
from ..testutils import eq_, includes_


class TestMptCheckOptionParser(object):
    def setup_method(self):
        self.err_dump = StringIO()

    def test_parser_reads_count(self):
        op = mpt_check.MptCheckOptionParser([__file__, "--perturbations",
            "3"])
        eq_(op.options.count, 3)

    def test_parser_rejects_no_perturbations(self):
        with pytest.raises(SystemExit):
            mpt_check.MptCheckOptionParser([__file__, "--perturbations", "0"],
                err=self.err_dump)

    def test_parser_rejects_negative_permeability(self):
        with pytest.raises(SystemExit):
            mpt_check.MptCheckOptionParser([__file__, "--permeability",
                "0"], err=self.err_dump)


class TestMptCheckRunner(object):
    def setup_method(self):
        self.out = StringIO()
        self.err = StringIO()

    def test_darcy_channel_passes(self, tmp_path):
        runner = mpt_check.MptCheckRunner([__file__, "-o", str(tmp_path),
            "--problem", "channel-1d", "--cells", "16"], self.out, self.err)
        eq_(runner.execute(), 0)
        lines = self.out.getvalue().splitlines()
        eq_(lines[0], "id,perturbation,a1,predicted_a1,a2,psi,passed")
        eq_(len(lines), 6)
        for line in lines[1:]:
            eq_(line.split(",")[-1], "true")
        includes_(os.listdir(tmp_path), "mpt.csv")

    def test_pinned_problem_fails_run(self, tmp_path):
        code = run_main(mpt_check.MptCheckRunner, [__file__, "-o",
            str(tmp_path), "--problem", "annulus-cartesian", "--cells", "16"],
            self.out, self.err)
        eq_(code, 1)
        includes_(self.err.getvalue(), "pinned")
