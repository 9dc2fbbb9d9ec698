"""The eleven acceptance checks, one test each.

Every test calls the corresponding criterion function from
qbloch.acceptance (the same code the CLI selftest runs) and asserts its
verdict, so a failure here prints the measured defects in the assert
message.  Shared heavy artifacts are cached inside the acceptance module,
and the conftest fixtures reuse the same caches.
"""

import pytest

from qbloch import acceptance


def _check(fn):
    ok, detail = fn()
    assert ok, detail


def test_criterion_01_trace_family_solution_set():
    _check(acceptance.criterion_1)


def test_criterion_02_rogers_regulator_value():
    _check(acceptance.criterion_2)


def test_criterion_03_critical_value_set():
    _check(acceptance.criterion_3)


def test_criterion_04_diagram_certificate_battery():
    _check(acceptance.criterion_4)


def test_criterion_05_five_term_suites():
    _check(acceptance.criterion_5)


def test_criterion_06_sequence_oracle_equality():
    _check(acceptance.criterion_6)


def test_criterion_07_growth_rate():
    _check(acceptance.criterion_7)


def test_criterion_08_pade_singularity_probe():
    _check(acceptance.criterion_8)


def test_criterion_09_factorial_asymptotics():
    _check(acceptance.criterion_9)


def test_criterion_10_polynomial_norm_bound():
    _check(acceptance.criterion_10)


def test_criterion_11_property_suite():
    _check(acceptance.criterion_11)


def test_run_all_reports_every_criterion():
    lines = []
    assert acceptance.run_all(out=lines.append)
    assert len(lines) == 11
    assert all(line.startswith("[PASS]") for line in lines)
