"""Smoke tests for the compiled bindings: exact types cross the boundary as
fractions.Fraction, the main operations run, and errors map to ValueError."""

from fractions import Fraction

import pytest

import prodinfluence as pi


def fair_bits(n):
    return pi.ProductSpace(pi.GroundSpace([Fraction(1, 2), Fraction(1, 2)]), n)


def majority3():
    return pi.Event.from_outcomes(
        fair_bits(3),
        [[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1) if a + b + c >= 2],
    )


def test_fractions_round_trip():
    ground = pi.GroundSpace([Fraction(1, 3), "2/3"])
    assert ground.weight(0) == Fraction(1, 3)
    assert ground.weight(1) == Fraction(2, 3)
    assert sum(ground.weights) == 1


def test_majority_influence():
    event = majority3()
    assert pi.event_measure(event) == Fraction(1, 2)
    assert pi.influence_vector(event) == [Fraction(1, 2)] * 3
    assert pi.h_influence(event, 0, pi.HFunction.quad_x_one_minus_x()) == Fraction(1, 8)


def test_zero_weight_gap():
    ground = pi.GroundSpace(["1/2", "1/2", "0/1"])
    event = pi.Event.from_outcomes(pi.ProductSpace(ground, 1), [[0], [1]])
    assert pi.influence(event, 0) == 0
    assert pi.bkkkl_influence(event, 0) == 1


def test_transport_round_trip():
    event = majority3()
    transport = pi.build_transport(event.space.ground)
    pushed = pi.push_event(transport, event)
    assert pi.box_measure(pushed) == Fraction(1, 2)
    assert pi.box_influence(pushed, 1) == Fraction(1, 2)
    record = pi.verify_transport(
        transport, event, pushed,
        [pi.HFunction.indicator01(), pi.HFunction.quad_x_one_minus_x()])
    assert record.passed


def test_mc_reproducible():
    event = majority3()
    first = pi.mc_influence(event, 0, 2000, 11)
    second = pi.mc_influence(event, 0, 2000, 11)
    assert first.estimate == second.estimate
    assert abs(first.estimate - 0.5) <= 4 * first.std_error + 1e-12


def test_spec_parsing_and_reports():
    space, event = pi.parse_event_spec(
        '{"ground": ["1/2", "1/2"], "n": 4,'
        ' "event": {"family": {"name": "tribes",'
        ' "params": {"width": 2, "tribes": 2}}}}')
    assert pi.event_measure(event) == Fraction(7, 16)
    report = pi.influence_report(event)
    assert report.total_influence == Fraction(3, 2)
    assert report.sum_ratio.value == pytest.approx(21.19, abs=0.01)


def test_input_errors_are_value_errors():
    with pytest.raises(ValueError):
        pi.GroundSpace(["1/2", "1/3"])
    with pytest.raises(ValueError):
        pi.parse_event_spec("{not json")
