from __future__ import annotations

import csv
import io
import json
import math
import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rball.records import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    SCHEMA,
    InstanceSpec,
    SuiteRecord,
    SuiteReport,
    dumps,
    judge,
    write_atomic,
)


class TestJudge:
    def test_exact(self):
        assert judge(0.0, 1e-9, False) == PASS
        assert judge(-1e-10, 1e-9, False) == PASS
        assert judge(-2e-9, 1e-9, False) == FAIL
        assert judge(5.0, 1e-9, False) == PASS

    def test_undersampled_is_inconclusive(self):
        assert judge(-10.0, 0.2, True, scale=1.0) == INCONCLUSIVE
        assert judge(10.0, 0.2, True, scale=1.0) == INCONCLUSIVE
        assert judge(-0.1, 0.04, True, scale=1.0) == FAIL
        # the width rule applies to stochastic comparisons only
        assert judge(0.0, 0.2, False, scale=1.0) == PASS

    def test_non_finite(self):
        assert judge(math.nan, 1e-9, False) == INCONCLUSIVE
        assert judge(1.0, math.inf, True, 1.0) == INCONCLUSIVE

    @given(st.floats(-10, 10), st.floats(0, 1), st.booleans(), st.floats(0, 100))
    def test_total(self, margin, tol, stochastic, scale):
        v = judge(margin, tol, stochastic, scale)
        assert v in (PASS, FAIL, INCONCLUSIVE)
        if v == FAIL:
            assert margin < -tol
        if margin >= 0 and v != INCONCLUSIVE:
            assert v == PASS


class TestRecord:
    def test_margin_and_scale(self):
        rec = SuiteRecord({}, 2.0, 3.0, 1e-9)
        assert rec.margin == 1.0 and rec.scale == 3.0 and rec.verdict == PASS

    def test_numpy_values_become_floats(self):
        rec = SuiteRecord({}, np.float64(1.5), np.float32(2.0), np.float64(0.1))
        assert type(rec.lhs) is float and type(rec.rhs) is float and type(rec.tolerance) is float

    def test_verdict_kept_when_given(self):
        assert SuiteRecord({}, 2.0, 1.0, 0.0, verdict=INCONCLUSIVE).verdict == INCONCLUSIVE

    def test_to_dict_fields(self):
        d = SuiteRecord({"trial": 3}, 1.0, 2.0, 0.5, stochastic=True, lhs_stderr=0.1).to_dict()
        assert set(d) == {"instance", "lhs", "lhs_stderr", "rhs", "rhs_stderr", "margin", "tolerance",
                          "stochastic", "verdict", "witnesses", "extra"}
        assert d["margin"] == 1.0 and d["instance"] == {"trial": 3}


class TestInstanceSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            InstanceSpec(2, 3, 1.0, 2.0, 0, kind="odd")
        with pytest.raises(ValueError):
            InstanceSpec(2, 3, 0.0, 2.0, 0)

    def test_dict_drops_missing_l(self):
        assert "l" not in InstanceSpec(2, 3, 1.0, 2.0, 0).to_dict()
        assert InstanceSpec(3, 3, 1.0, 2.0, 0, "simplex-centered", l=2).to_dict()["l"] == 2


def report() -> SuiteReport:
    recs = [SuiteRecord({"trial": 0}, 1.0, 2.0, 1e-9), SuiteRecord({"trial": 1}, 3.0, 2.0, 1e-9),
            SuiteRecord({"trial": 2}, 1.0, 1.0, 0.5, stochastic=True)]
    return SuiteReport("demo", {"dim": 2}, 7, recs, runtime=1.25, wall_clock="now", notes={"a": np.int64(1)})


class TestReport:
    def test_summary(self):
        s = report().summary()
        assert s == {"trials": 3, "pass": 1, "fail": 1, "inconclusive": 1, "min_margin": -1.0}

    def test_json(self):
        data = json.loads(report().to_json())
        assert data["schema"] == SCHEMA and data["seed"] == 7 and data["notes"] == {"a": 1}
        assert data["timing"]["runtime_s"] == 1.25
        assert "timing" not in json.loads(report().to_json(timing=False))

    def test_csv(self):
        rows = list(csv.reader(io.StringIO(report().to_csv())))
        assert rows[0] == ["trial", "lhs", "rhs", "margin", "verdict"]
        assert rows[2] == ["1", "3.0", "2.0", "-1.0", "fail"]
        assert float(rows[1][3]) == 1.0

    def test_empty_min_margin(self):
        assert math.isnan(SuiteReport("x", {}, 0, []).min_margin)

    def test_dumps_numpy(self):
        assert json.loads(dumps({"a": np.arange(3), "b": np.float64(0.5)})) == {"a": [0, 1, 2], "b": 0.5}
        with pytest.raises(TypeError):
            dumps({"a": object()})


class TestAtomicWrite:
    def test_writes_and_replaces(self, tmp_path):
        path = tmp_path / "out.json"
        write_atomic(str(path), "first")
        write_atomic(str(path), "second")
        assert path.read_text() == "second"
        assert os.listdir(tmp_path) == ["out.json"]

    def test_missing_directory(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            write_atomic(str(tmp_path / "nope" / "out.json"), "x")
