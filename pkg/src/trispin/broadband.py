"""Offset-robust program transformations.

refocus_offsets inserts a simultaneous pi pulse on all three spins at the
midpoint of every delay; that preserves both ZZ couplings while inverting
the offset terms, so each delay's offset evolution cancels exactly. The
inserted pulses toggle the frame, so the phases of all subsequent original
pulses (and the signs of z-rotations) are adjusted accordingly, and a
trailing compensating pi pulse is appended when the total insertion count is
odd. Pulse phases cycle through x, -x, -x, x so flip-angle errors of
consecutive refocusing pulses cancel pairwise under rf inhomogeneity.

dante_discretize replaces the geodesic sequence's weak pulse by a train of
small hard pulses at the centers of equal sub-delays, which converges to the
continuous pulse as the segment count grows.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .pulseprog import Delay, HardPulse, PulseProgram, WeakPulse, ZRotation
from .sequences import build_uzzz, build_swap13

TWO_PI = 2.0 * math.pi
_X = 0.0
_Y = math.pi / 2
_MX = math.pi


@dataclass(frozen=True)
class BroadbandScheme:
    """Refocusing phase cycle, DANTE segment count (n = 4m), pi placement.

    sparse_pi selects the experiment-friendly geodesic layout with a single
    refocusing pi group per DANTE segment instead of one per half-delay;
    it halves the pulse load of the train (important with finite-width
    pulses) at the cost of slower offset convergence.
    """

    cycle: tuple = (_X, _MX, _MX, _X)
    n: int | None = None
    sparse_pi: bool = False

    def __post_init__(self):
        if not self.cycle:
            raise ValueError("phase cycle must be nonempty")
        for phi in self.cycle:
            # phases must be colinear (+/-x) so any even number of inserted
            # pi pulses composes to a global phase
            if min(abs(math.fmod(phi, TWO_PI)), abs(abs(math.fmod(phi, TWO_PI)) - math.pi),
                   abs(abs(math.fmod(phi, TWO_PI)) - TWO_PI)) > 1e-12:
                raise ValueError("refocusing phases must be x or -x")
        if self.n is not None and (self.n < 4 or self.n % 4 != 0):
            raise ValueError("DANTE segment count must be a positive multiple of 4")


DEFAULT_SCHEME = BroadbandScheme()


def default_dante_n(kappa: float, j: float) -> int:
    """Smallest multiple of 4 with sub-delay <= 1/(20 J)."""
    tau = math.sqrt(kappa * (4.0 - kappa)) / (2.0 * j)
    return max(4, 4 * math.ceil(20.0 * j * tau / 4.0))


def refocus_offsets(p: PulseProgram, scheme: BroadbandScheme = DEFAULT_SCHEME) -> PulseProgram:
    """Insert offset-refocusing pi pulses into every delay of an ideal program."""
    events = []
    inverted = False  # odd number of pi(1,2,3) insertions so far
    cycle_i = 0

    def next_pi():
        nonlocal cycle_i, inverted
        phase = scheme.cycle[cycle_i % len(scheme.cycle)]
        cycle_i += 1
        inverted = not inverted
        return HardPulse(frozenset({1, 2, 3}), math.pi, phase)

    for ev in p.events:
        if isinstance(ev, WeakPulse):
            raise ValueError(
                "cannot offset-refocus a program with weak pulses; "
                "DANTE-discretize it first"
            )
        if isinstance(ev, Delay):
            events.append(Delay(ev.duration / 2))
            events.append(next_pi())
            events.append(Delay(ev.duration / 2))
        elif isinstance(ev, HardPulse):
            phase = (-ev.phase) % TWO_PI if inverted else ev.phase
            events.append(HardPulse(ev.targets, ev.flip, phase))
        elif isinstance(ev, ZRotation):
            angle = -ev.angle if inverted else ev.angle
            events.append(ZRotation(ev.target, angle))
        else:
            raise TypeError(f"unknown event type {type(ev).__name__}")
    if inverted:
        events.append(next_pi())
    meta = p.meta + (("transform", "refocus-offsets"),)
    return PulseProgram(tuple(events), label=f"{p.label}-bb", kappa=p.kappa, meta=meta)


def dante_discretize(p: PulseProgram, n: int) -> PulseProgram:
    """Replace the geodesic weak pulse by n hard sub-pulses and n sub-delays.

    Each segment is delay/2 - sub-pulse - delay/2, so the train is a midpoint
    discretization of the simultaneous rf + coupling evolution.
    """
    if n < 4 or n % 4 != 0:
        raise ValueError(f"segment count must be a positive multiple of 4, got {n}")
    weak = [ev for ev in p.events if isinstance(ev, WeakPulse)]
    if len(weak) != 1:
        raise ValueError(f"expected exactly one weak pulse, found {len(weak)}")
    wp = weak[0]
    flip_total = TWO_PI * wp.amplitude * wp.duration
    sub_delay = Delay(wp.duration / (2 * n))
    sub_pulse = HardPulse(wp.targets, flip_total / n, wp.phase)
    events = []
    for ev in p.events:
        if ev is wp:
            for _ in range(n):
                events.extend((sub_delay, sub_pulse, sub_delay))
        else:
            events.append(ev)
    meta = p.meta + (("transform", f"dante-n{n}"),)
    return PulseProgram(tuple(events), label=f"{p.label}-dante", kappa=p.kappa, meta=meta)


def broadband_geodesic(kappa: float, j: float,
                       scheme: BroadbandScheme = DEFAULT_SCHEME,
                       n: int | None = None) -> PulseProgram:
    """Broadband version of the time-optimal sequence: DANTE plus refocusing.

    The weak pulse is discretized into n segments with pi pulses inserted
    inside every sub-delay. The default placement splits each half-delay
    around its own pi group (tight offset refocusing); with
    scheme.sparse_pi a single pi group per segment sits immediately before
    the sub-pulse (whose -x phase is invariant under the frame toggles):

        [ delay/2 - pi(1,2,3) - sub-pulse - delay/2 ] x n
    """
    p = build_uzzz("D", kappa, j)
    if not any(isinstance(ev, WeakPulse) for ev in p.events):
        return refocus_offsets(p, scheme)  # kappa = 0: nothing to discretize
    if n is None:
        n = scheme.n if scheme.n is not None else default_dante_n(kappa, j)
    if not scheme.sparse_pi:
        return refocus_offsets(dante_discretize(p, n), scheme)
    if n < 4 or n % 4 != 0:
        raise ValueError(f"segment count must be a positive multiple of 4, got {n}")
    events = []
    cycle_i = 0
    for ev in p.events:
        if not isinstance(ev, WeakPulse):
            # V_D / W rotations sit outside the train, where the toggling
            # frame is even (n is a multiple of 4), so they pass unchanged
            events.append(ev)
            continue
        flip_total = TWO_PI * ev.amplitude * ev.duration
        half = Delay(ev.duration / (2 * n))
        sub = HardPulse(ev.targets, flip_total / n, ev.phase)
        for _ in range(n):
            phase = scheme.cycle[cycle_i % len(scheme.cycle)]
            cycle_i += 1
            events.extend((half, HardPulse(frozenset({1, 2, 3}), math.pi, phase), sub, half))
    meta = p.meta + (("transform", f"broadband-geodesic-n{n}"),)
    return PulseProgram(tuple(events), label=f"{p.label}-bb", kappa=p.kappa, meta=meta)


def _broadband_uzzz(v: str, kappa: float, j: float, scheme: BroadbandScheme,
                    n: int | None) -> PulseProgram:
    if v == "D":
        return broadband_geodesic(kappa, j, scheme, n)
    return refocus_offsets(build_uzzz(v, kappa, j), scheme)


def build_swap13_broadband(v: str, kappa: float, j: float,
                           scheme: BroadbandScheme = DEFAULT_SCHEME,
                           n: int | None = None) -> PulseProgram:
    """SWAP(1,3) composition with each trilinear block offset-refocused."""
    core = lambda: _broadband_uzzz(v, kappa, j, scheme, n).events
    events = (
        ZRotation(2, -math.pi / 2),
        HardPulse(frozenset({1, 3}), -math.pi / 2, _Y),
        *core(),
        HardPulse(frozenset({1, 3}), math.pi / 2, _Y),
        HardPulse(frozenset({1, 3}), math.pi / 2, _X),
        *core(),
        HardPulse(frozenset({1, 3}), -math.pi / 2, _X),
        *core(),
    )
    return PulseProgram(events, label=f"swap13-{v}-bb", kappa=kappa)


def emulate_selective_pulse(target: int, flip_deg: float, phase: float,
                            dnu13: float) -> PulseProgram:
    """Proton-selective 180-degree pulse from hard pulses and delays.

    90(1,3) - delta - 180x(2) - delta - 180x(2) - 90(1,3) with
    delta = 1/(4 dnu13): during 2*delta the off-resonance proton precesses by
    pi while couplings to spin 2 are refocused. The net fragment acts as a
    180 about the requested phase axis on the target proton and as the
    identity on the spectator, whose residual pi z-rotation is cancelled by
    an explicit ZRotation event (to be absorbed later by phase bookkeeping).
    The target-3 variant flips the phase of the final 90 by 180 degrees.
    """
    if target not in (1, 3):
        raise ValueError(f"selective emulation targets spin 1 or 3, got {target}")
    if abs(flip_deg - 180.0) > 1e-9:
        raise ValueError(
            "only the 180-degree selective element is defined by this construction"
        )
    if dnu13 == 0:
        raise ValueError("proton offset difference must be nonzero")
    delta = 1.0 / (4.0 * abs(dnu13))
    last_phase = phase if target == 1 else (phase + math.pi) % TWO_PI
    events = [
        HardPulse(frozenset({1, 3}), math.pi / 2, phase),
        Delay(delta),
        HardPulse(frozenset({2}), math.pi, _X),
        Delay(delta),
        HardPulse(frozenset({2}), math.pi, _X),
        HardPulse(frozenset({1, 3}), math.pi / 2, last_phase),
    ]
    if target == 1:
        events.append(ZRotation(3, -math.pi))  # cancel the spectator precession
    else:
        events.append(ZRotation(3, -math.pi))  # fold the residual phase on spin 3
    return PulseProgram(tuple(events), label=f"sel180-spin{target}")


def eliminate_z_rotations(p: PulseProgram) -> PulseProgram:
    """Absorb ZRotation events into the phases of all later pulses.

    exp{-i phi I_kz} commutes with free evolution and shifts the axis of any
    later rotation on spin k by -phi. A pulse whose targets carry different
    accumulated angles is split into per-angle pulses (its terms commute).
    Leftover angles are reported as per-spin receiver phases in the program
    metadata.
    """
    acc = {1: 0.0, 2: 0.0, 3: 0.0}
    events = []
    for ev in p.events:
        if isinstance(ev, ZRotation):
            acc[ev.target] += ev.angle
        elif isinstance(ev, HardPulse):
            groups: dict[float, set] = {}
            for k in sorted(ev.targets):
                groups.setdefault(acc[k], set()).add(k)
            for phi, spins in sorted(groups.items()):
                events.append(HardPulse(frozenset(spins), ev.flip, (ev.phase - phi) % TWO_PI))
        elif isinstance(ev, WeakPulse):
            groups = {}
            for k in sorted(ev.targets):
                groups.setdefault(acc[k], set()).add(k)
            for phi, spins in sorted(groups.items()):
                events.append(WeakPulse(frozenset(spins), ev.amplitude, ev.duration,
                                        (ev.phase - phi) % TWO_PI))
        else:
            events.append(ev)
    meta = tuple((f"receiver-phase-spin{k}", repr(acc[k])) for k in (1, 2, 3) if acc[k] != 0.0)
    return PulseProgram(tuple(events), label=p.label, kappa=p.kappa, meta=p.meta + meta)


def receiver_phases(p: PulseProgram) -> dict[int, float]:
    """Residual per-spin receiver phases recorded by eliminate_z_rotations."""
    out = {}
    for key, value in p.meta:
        if key.startswith("receiver-phase-spin"):
            out[int(key[len("receiver-phase-spin"):])] = float(value)
    return out
