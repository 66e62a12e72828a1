"""Tests for control envelopes and their span decomposition."""

import math

import pytest

from qdpulse import Constant, DomainError, Piecewise, PulseSegment, PulseSequence, Sampled, Sech
from qdpulse.envelopes import MODE_CONST, MODE_SECH


def total_coverage(spans, t0, t1):
    assert spans[0].t0 == t0
    assert spans[-1].t1 == t1
    for a, b in zip(spans[:-1], spans[1:]):
        assert a.t1 == b.t0
    return sum(s.t1 - s.t0 for s in spans)


class TestConstant:
    def test_evaluate_and_spans(self):
        env = Constant(2.5)
        assert env.evaluate(0.0) == 2.5
        assert env.evaluate(17.0) == 2.5
        spans = env.spans(0.0, 3.0)
        assert len(spans) == 1
        assert spans[0].mode == MODE_CONST
        assert spans[0].params[0] == 2.5

    def test_negative_amplitude_rejected(self):
        with pytest.raises(DomainError):
            Constant(-1.0)


class TestSech:
    def test_evaluate(self):
        env = Sech(3.0, 0.5, center=1.0)
        assert env.evaluate(1.0) == pytest.approx(3.0)
        assert env.evaluate(2.0) == pytest.approx(3.0 / math.cosh(2.0))
        assert env.evaluate(0.0) == env.evaluate(2.0)  # symmetric about center

    def test_spans(self):
        env = Sech(3.0, 0.5)
        (span,) = env.spans(-10.0, 10.0)
        assert span.mode == MODE_SECH
        assert span.params == (3.0, 0.5, 0.0)

    def test_validation(self):
        with pytest.raises(DomainError):
            Sech(1.0, 0.0)
        with pytest.raises(DomainError):
            Sech(-1.0, 1.0)


class TestPiecewise:
    def test_evaluate_matches_sequence(self):
        seq = PulseSequence([PulseSegment(2.0, 1.0), PulseSegment(0.5, 2.0)])
        env = Piecewise(seq)
        assert env.evaluate(0.5) == 2.0
        assert env.evaluate(1.5) == 0.5
        assert env.evaluate(3.5) == 0.0
        assert env.evaluate(-0.5) == 0.0

    def test_spans_split_at_switches(self):
        seq = PulseSequence([PulseSegment(2.0, 1.0), PulseSegment(0.5, 2.0)])
        env = Piecewise(seq)
        spans = env.spans(0.0, 3.0)
        assert total_coverage(spans, 0.0, 3.0) == pytest.approx(3.0)
        assert [s.params[0] for s in spans] == [2.0, 0.5]

    def test_spans_outside_window_are_off(self):
        seq = PulseSequence([PulseSegment(2.0, 1.0)])
        env = Piecewise(seq)
        spans = env.spans(-1.0, 2.0)
        assert total_coverage(spans, -1.0, 2.0) == pytest.approx(3.0)
        assert [s.params[0] for s in spans] == [0.0, 2.0, 0.0]

    def test_offset_start(self):
        seq = PulseSequence([PulseSegment(2.0, 1.0)])
        env = Piecewise(seq, start=5.0)
        assert env.evaluate(4.9) == 0.0
        assert env.evaluate(5.5) == 2.0
        assert env.evaluate(6.1) == 0.0

    def test_shortest_feature(self):
        seq = PulseSequence([PulseSegment(2.0, 1.0), PulseSegment(0.0, 0.25)])
        assert Piecewise(seq).shortest_feature() == 0.25


class TestSampled:
    def test_zero_order_hold(self):
        env = Sampled([0.0, 1.0, 2.0], [1.0, 3.0, 0.5])
        assert env.evaluate(-0.1) == 0.0
        assert env.evaluate(0.0) == 1.0
        assert env.evaluate(0.99) == 1.0
        assert env.evaluate(1.0) == 3.0
        assert env.evaluate(5.0) == 0.5  # last value holds

    def test_spans(self):
        env = Sampled([0.0, 1.0], [1.0, 2.0])
        spans = env.spans(0.0, 3.0)
        assert total_coverage(spans, 0.0, 3.0) == pytest.approx(3.0)
        assert [s.params[0] for s in spans] == [1.0, 2.0]

    def test_validation(self):
        with pytest.raises(DomainError):
            Sampled([0.0, 0.0], [1.0, 1.0])
        with pytest.raises(DomainError):
            Sampled([0.0], [-1.0])
        with pytest.raises(DomainError):
            Sampled([], [])
