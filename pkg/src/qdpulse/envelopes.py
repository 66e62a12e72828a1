"""Control envelopes for the time-domain integrators.

Every envelope can evaluate itself at a time and decompose a window into
*spans* -- maximal stretches on which it is either constant or an analytic
sech -- so the integrators can align their steps with switching instants
and never straddle a discontinuity.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .model import PulseSequence

#: span modes understood by the kernels
MODE_CONST = 0
MODE_SECH = 1


@dataclass(frozen=True)
class Span:
    """A stretch [t0, t1] with a single analytic envelope description.

    ``params`` is ``(amplitude, 0, 0)`` for a constant span and
    ``(amplitude, width, center)`` for a sech span.
    """

    t0: float
    t1: float
    mode: int
    params: tuple[float, float, float]


class ControlEnvelope:
    """Base class; subclasses implement ``evaluate`` and ``spans``."""

    def evaluate(self, t: float) -> float:
        raise NotImplementedError

    def spans(self, t0: float, t1: float) -> list[Span]:
        raise NotImplementedError

    def shortest_feature(self) -> float:
        """Shortest internal time scale, used for default step selection."""
        return math.inf


class Constant(ControlEnvelope):
    """Drive held at a fixed amplitude over the whole window."""

    def __init__(self, amplitude: float) -> None:
        if amplitude < 0:
            raise DomainError(f"amplitude must be >= 0, got {amplitude}")
        self.amplitude = amplitude

    def evaluate(self, t: float) -> float:
        return self.amplitude

    def spans(self, t0: float, t1: float) -> list[Span]:
        return [Span(t0, t1, MODE_CONST, (self.amplitude, 0.0, 0.0))]


class Sech(ControlEnvelope):
    """``amplitude * sech((t - center) / width)``."""

    def __init__(self, amplitude: float, width: float, center: float = 0.0) -> None:
        if amplitude < 0:
            raise DomainError(f"amplitude must be >= 0, got {amplitude}")
        if width <= 0:
            raise DomainError(f"width must be positive, got {width}")
        self.amplitude = amplitude
        self.width = width
        self.center = center

    def evaluate(self, t: float) -> float:
        return self.amplitude / math.cosh((t - self.center) / self.width)

    def spans(self, t0: float, t1: float) -> list[Span]:
        return [Span(t0, t1, MODE_SECH, (self.amplitude, self.width, self.center))]

    def shortest_feature(self) -> float:
        return self.width


class Piecewise(ControlEnvelope):
    """A :class:`PulseSequence` starting at ``start``; off outside it."""

    def __init__(self, sequence: PulseSequence, start: float = 0.0) -> None:
        self.sequence = sequence
        self.start = start

    def evaluate(self, t: float) -> float:
        return self.sequence.amplitude_at(t - self.start)

    def spans(self, t0: float, t1: float) -> list[Span]:
        edges = [self.start + e for e in self.sequence.switch_times()]
        amps = [seg.amplitude for seg in self.sequence]
        return _zoh_spans(t0, t1, edges, amps, after_last=0.0)

    def shortest_feature(self) -> float:
        durations = [seg.duration for seg in self.sequence if seg.duration > 0]
        return min(durations) if durations else math.inf


class Sampled(ControlEnvelope):
    """Zero-order hold through ``(t, amplitude)`` samples.

    Off before the first sample; the last sample's value holds afterwards.
    """

    def __init__(self, times: Sequence[float], values: Sequence[float]) -> None:
        if len(times) != len(values) or not times:
            raise DomainError("need equally many sample times and values (>= 1)")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise DomainError("sample times must be strictly increasing")
        if any(v < 0 for v in values):
            raise DomainError("sample values must be >= 0")
        self.times = list(map(float, times))
        self.values = list(map(float, values))

    def evaluate(self, t: float) -> float:
        idx = bisect.bisect_right(self.times, t) - 1
        return 0.0 if idx < 0 else self.values[idx]

    def spans(self, t0: float, t1: float) -> list[Span]:
        return _zoh_spans(t0, t1, self.times, self.values[:-1],
                          after_last=self.values[-1])

    def shortest_feature(self) -> float:
        gaps = [b - a for a, b in zip(self.times, self.times[1:])]
        return min(gaps) if gaps else math.inf


def _zoh_spans(
    t0: float,
    t1: float,
    edges: Sequence[float],
    values: Sequence[float],
    after_last: float,
) -> list[Span]:
    """Clip a zero-order-hold description to [t0, t1].

    ``edges`` has one more entry than ``values`` when it closes the last
    interval (piecewise sequences) or equally many when the final value
    holds forever (sampled grids, with ``after_last`` taking over past the
    last edge).  Before the first edge the drive is off.
    """
    cut = sorted({t0, t1, *(e for e in edges if t0 < e < t1)})
    spans = []
    for a, b in zip(cut[:-1], cut[1:]):
        mid = 0.5 * (a + b)
        idx = bisect.bisect_right(edges, mid) - 1
        if idx < 0:
            amp = 0.0
        elif idx >= len(values):
            amp = after_last
        else:
            amp = values[idx]
        spans.append(Span(a, b, MODE_CONST, (amp, 0.0, 0.0)))
    return spans
