import math
import os
import time

import numpy as np
from pytest import raises

from ofip.ordered_interval import OrderedIntervalError
from ofip.utils.data_processing import CacheManager, ReportFormatting, to_jsonable
from ofip.utils.interval_parser import IntervalParseError, evaluate_expression
from ofip.utils.task_handler import TaskHandler


def test_to_jsonable():
    payload = {"z": 1 + 2j, "bad": math.inf, "nan": math.nan, "v": np.array([1.0, -2.0]),
               "n": np.int64(4), 3: (True, None)}
    assert to_jsonable(payload) == {"z": [1.0, 2.0], "bad": None, "nan": None, "v": [1.0, -2.0],
                                    "n": 4, "3": [True, None]}
    with raises(TypeError):
        to_jsonable(object())


def test_json_is_canonical():
    text = ReportFormatting.to_json({"b": 1, "a": [0.1, -math.inf]})
    assert text == '{\n  "a": [\n    0.1,\n    null\n  ],\n  "b": 1\n}\n'


def test_summary_line():
    payload = {"trials": 5, "checks": [{"check_id": "bessel", "trials": 5, "passes": 5},
                                       {"check_id": "norm_bounds", "trials": 5, "passes": 3}]}
    assert ReportFormatting.summary_line(payload) == "FAIL: 1/2 checks passed over 5 trials (failing: norm_bounds)"


def test_atomic_write_replaces(tmp_path):
    path = tmp_path / "nested" / "report.json"
    CacheManager.atomic_write_text(str(path), "first")
    CacheManager.atomic_write_text(str(path), "second")
    assert path.read_text() == "second"
    assert os.listdir(path.parent) == ["report.json"]


def test_backups_rotate(tmp_path):
    source = tmp_path / "report.json"
    source.write_text("{}")
    backups = tmp_path / "backups"
    for _ in range(4):
        CacheManager.rotating_backup_file(str(source), str(backups), max_backups=2)
        time.sleep(0.01)
    assert len(list(backups.iterdir())) == 2
    CacheManager.rotating_backup_file(str(tmp_path / "absent.json"), str(backups))
    assert len(list(backups.iterdir())) == 2


def test_task_handler_keeps_order():
    with TaskHandler(4) as handler:
        assert handler.map_ordered(lambda n: n * n, range(20)) == [n * n for n in range(20)]
    with raises(ValueError):
        TaskHandler(0)


def test_scalar_prefix_and_unary_minus():
    result = evaluate_expression("-2*[1,3] (+) -[1,1]")
    assert (result.lo_label, result.hi_label) == (-3.0, -7.0)


def test_literals_tolerate_spacing():
    result = evaluate_expression("[ - 1.5 , +2e1 ]_o")
    assert (result.lo_label, result.hi_label) == (-1.5, 20.0)


def test_overflowing_literal_is_rejected():
    with raises(OrderedIntervalError):
        evaluate_expression("[1e999,0]")


def test_parser_reports_position():
    with raises(IntervalParseError) as info:
        evaluate_expression("abs [1,2]")
    assert info.value.position == 4


def test_long_failure_lists_are_truncated():
    checks = [{"check_id": f"quasi_linearity_{n}", "trials": 1, "passes": 0} for n in range(3, 13)] * 3
    line = ReportFormatting.summary_line({"trials": 1, "checks": checks})
    assert line.endswith("...)")
    assert ReportFormatting.truncate_text("abcdef", 4) == "a..."
