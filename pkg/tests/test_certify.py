import json
import math
from fractions import Fraction

import numpy as np
import pytest

from lbounds.bounds import evaluate_terms
from lbounds.certify import (
    Cell,
    Interval,
    ResidualKind,
    ResidualSpec,
    backlund_spec,
    certificate_records,
    certify_residual_negative,
    gamma_glue_spec,
    partial_summation_spec,
    theorem2_glue_spec,
)
from lbounds.types import CertificateStatus


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(2.0, 1.0)
    with pytest.raises(ValueError):
        Interval(-math.inf, 1.0)
    with pytest.raises(ValueError):
        Interval(math.nan, 1.0)


def test_unbounded_interval_samples_a_geometric_ladder():
    samples = Interval(50.0, math.inf).samples()
    assert samples[0] == 50.0
    assert samples[1] == 500.0
    assert samples[-1] >= 1e100
    assert Interval(1.0, 2.0).samples() == [1.0, 2.0]


def test_cell_split_and_tail_flags():
    cell = Cell(Interval(0.0, 4.0), Interval(2.0, math.inf))
    assert cell.is_tail
    low, high = cell.split("t")
    assert (low.t, high.t) == (Interval(0.0, 2.0), Interval(2.0, 4.0))
    assert not Cell(Interval(0.0, 1.0)).is_tail


def test_spec_validation():
    with pytest.raises(ValueError):
        backlund_spec(t_min=3.0)
    with pytest.raises(ValueError):
        partial_summation_spec(q_min=0.5)
    with pytest.raises(ValueError):
        gamma_glue_spec(0.0)
    with pytest.raises(ValueError):
        ResidualSpec(ResidualKind.PARTIAL_SUMMATION, 0.0, m=2.0)


def test_initial_cells_cover_tails():
    assert len(backlund_spec().initial_cells(1e6)) == 2
    assert len(backlund_spec(include_tails=False).initial_cells(1e6)) == 1
    assert len(partial_summation_spec().initial_cells(1e6)) == 4
    with pytest.raises(ValueError):
        backlund_spec().initial_cells(10.0)


def test_backlund_certified_from_fifty():
    certificate = certify_residual_negative(backlund_spec(), 1e6)
    assert certificate.status is CertificateStatus.CERTIFIED
    assert certificate.rounding == "directed"
    assert len(certificate.tails) == 1
    assert certificate.max_upper_bound == pytest.approx(-0.0019625, abs=1e-4)
    assert all(record.upper_bound < 0 for record in certificate.cells)


def test_backlund_fails_below_fifty():
    certificate = certify_residual_negative(backlund_spec(t_min=45.0), 1e6)
    assert certificate.status is CertificateStatus.FAILED
    assert certificate.failure is not None
    assert certificate.failure.upper_bound >= 0
    assert certificate.failure.cell.t.lo == 45.0
    assert certificate.failure.cell.t.width < 1e-6


def test_partial_summation_certified_with_tails():
    certificate = certify_residual_negative(partial_summation_spec(), 1e6)
    assert certificate.status is CertificateStatus.CERTIFIED
    assert len(certificate.tails) == 3
    assert certificate.max_upper_bound == pytest.approx(-0.0048204, abs=1e-4)


def interior_points(interval, count=5):
    return [float(point) for point in np.linspace(interval.lo, interval.hi, count)[1:-1]]


@pytest.mark.parametrize(
    "spec, t_max",
    [(backlund_spec(), 1e6), (partial_summation_spec(), 1e6), (theorem2_glue_spec(), 50.0)],
    ids=["backlund", "partial_summation", "theorem2_glue"],
)
def test_cell_bounds_dominate_residual_inside_each_cell(spec, t_max):
    certificate = certify_residual_negative(spec, t_max)
    terms = spec.terms()
    checked = 0
    for record in certificate.subintervals:
        if record.evidence:
            continue
        cell = record.cell
        q_points = [0.0] if cell.q is None else interior_points(cell.q)
        for q in q_points:
            for t in interior_points(cell.t):
                assert evaluate_terms(terms, q, t) <= record.upper_bound + 1e-9
                checked += 1
    assert checked > 0


def test_partial_summation_fails_for_small_shift():
    spec = partial_summation_spec(b=Fraction(1, 10), q_min=30.0, q_max=100.0)
    certificate = certify_residual_negative(spec, 1e3, subdivision_tolerance=1e-3)
    assert certificate.status is CertificateStatus.FAILED


def test_glue_residuals_certified():
    gamma = certify_residual_negative(gamma_glue_spec(1e-3), 1e6)
    assert gamma.status is CertificateStatus.CERTIFIED
    second = certify_residual_negative(theorem2_glue_spec(), 50.0)
    assert second.status is CertificateStatus.CERTIFIED
    assert len(second.subintervals) > 1
    assert second.max_upper_bound < 0


def test_float_rounding_mode():
    certificate = certify_residual_negative(backlund_spec(), 1e6, rounding="inflate")
    assert certificate.status is CertificateStatus.CERTIFIED
    assert certificate.rounding == "inflate-8eps"


def test_unknown_rounding_and_tolerance_are_rejected():
    with pytest.raises(ValueError):
        certify_residual_negative(backlund_spec(), 1e6, rounding="nearest")
    with pytest.raises(ValueError):
        certify_residual_negative(backlund_spec(), 1e6, subdivision_tolerance=0.0)


def test_cell_budget_exhaustion_fails():
    certificate = certify_residual_negative(theorem2_glue_spec(), 50.0, max_cells=2)
    assert certificate.status is CertificateStatus.FAILED
    assert "budget" in certificate.reason


def test_records_are_json_with_string_numbers():
    certificate = certify_residual_negative(backlund_spec(), 1e6)
    records = list(certificate_records(certificate))
    assert records[0]["record"] == "header"
    assert records[0]["t_min"] == "50"
    assert records[-1]["record"] == "summary"
    assert records[-1]["status"] == "certified"
    tail = [record for record in records if record.get("tail")][0]
    assert tail["t_hi"] == "inf"
    assert "term_points" in tail
    json.dumps(records, allow_nan=False)
