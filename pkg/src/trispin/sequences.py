"""Ideal pulse sequences A-D for the trilinear propagator, and SWAP(1,3).

Each builder returns a PulseProgram whose ideal propagator under the
on-resonance chain (J12 = J23 = J, J13 = 0) equals U_zzz(kappa) up to a
global phase. Durations follow the closed forms

    A: (2 + kappa) / 2J      B: 1 / J
    C: (1 + kappa) / 2J      D: sqrt(kappa (4 - kappa)) / 2J   (time-optimal)

Coupling-only evolutions are realized as delays; where a single coupling
(or its inverse) is needed, the delay is wrapped in selective spin echoes
(pi pairs) / pi-conjugations, which is exact up to global phase.
"""
from __future__ import annotations

import math

from .pulseprog import Delay, HardPulse, PulseProgram, WeakPulse, ZRotation

VARIANTS = ("A", "B", "C", "D")

_X = 0.0
_Y = math.pi / 2
_MX = math.pi
_MY = 1.5 * math.pi

_D90 = math.pi / 2
_D180 = math.pi


def _check_kappa(kappa: float):
    if not 0.0 <= kappa <= 2.0:
        raise ValueError(f"kappa must be in [0, 2], got {kappa}")


def _check_variant(v: str):
    if v not in VARIANTS:
        raise ValueError(f"unknown sequence variant {v!r}")


def _echo(duration: float, refocus_spin: int) -> list:
    """Coupling evolution with all terms involving refocus_spin cancelled.

    delay/2 - pi_x(k) - delay/2 - pi_x(k): exact up to a global phase.
    """
    half = Delay(duration / 2)
    flip = HardPulse(frozenset({refocus_spin}), _D180, _X)
    return [half, flip, half, flip]


def _inverted(block: list, conj_spin: int) -> list:
    """Sign-flip all I_kz factors of a coupling block via pi_x(k) conjugation."""
    flip = HardPulse(frozenset({conj_spin}), _D180, _X)
    return [flip, *block, flip]


def _uzzz_a(kappa: float, j: float) -> list:
    # V_A^{-1}: -90x(2), exp{+i pi I1z I2z}, -90y(2);  then exp{-i pi k I2zI3z};
    # then V_A: 90y(2), exp{-i pi I1z I2z}, 90x(2). J12 alone needs J23
    # refocused (echo on spin 3); the lone J23 term needs J12 refocused
    # (echo on spin 1).
    zz12 = lambda: _echo(1.0 / (2 * j), refocus_spin=3)
    events = [
        HardPulse(frozenset({2}), -_D90, _X),
        *_inverted(zz12(), conj_spin=1),
        HardPulse(frozenset({2}), -_D90, _Y),
        *_echo(kappa / (2 * j), refocus_spin=1),
        HardPulse(frozenset({2}), _D90, _Y),
        *zz12(),
        HardPulse(frozenset({2}), _D90, _X),
    ]
    return events


def _uzzz_b(kappa: float, j: float) -> list:
    # V_B^{-1}: -90y(2), inverse full-coupling delay; central kappa*90x(2);
    # V_B: full-coupling delay, 90y(2).
    return [
        HardPulse(frozenset({2}), -_D90, _Y),
        *_inverted([Delay(1.0 / (2 * j))], conj_spin=2),
        HardPulse(frozenset({2}), kappa * _D90, _X),
        Delay(1.0 / (2 * j)),
        HardPulse(frozenset({2}), _D90, _Y),
    ]


def _uzzz_c(kappa: float, j: float) -> list:
    # Trailing z-rotation exp{+i pi/2 kappa I2z} first in time, then
    # V_C^{-1}, the I2y-axis coupling evolution (90x(2) conjugation of a
    # plain delay), and V_C. The z-rotation sign is locked by the
    # brute-force identity test.
    return [
        ZRotation(2, -kappa * _D90),
        HardPulse(frozenset({2}), -_D90, _Y),
        *_inverted([Delay(1.0 / (4 * j))], conj_spin=2),
        HardPulse(frozenset({2}), _D90, _Y),
        HardPulse(frozenset({2}), _D90, _X),
        Delay(kappa / (2 * j)),
        HardPulse(frozenset({2}), -_D90, _X),
        HardPulse(frozenset({2}), -_D90, _Y),
        Delay(1.0 / (4 * j)),
        HardPulse(frozenset({2}), _D90, _Y),
    ]


def weak_pulse_amplitude(kappa: float, j: float) -> float:
    """Amplitude (Hz) of the geodesic sequence's weak pulse on spin 2."""
    if kappa == 0.0:
        return 0.0
    return (2.0 - kappa) * j / math.sqrt(kappa * (4.0 - kappa))


def _uzzz_d(kappa: float, j: float) -> list:
    # V_D^{-1}: -90y(2); central simultaneous coupling + weak rf on spin 2
    # (phase -x) for tau*; then W = (2 - kappa/2)*180 x(2); then V_D: 90y(2).
    tau = math.sqrt(kappa * (4.0 - kappa)) / (2 * j)
    events = [HardPulse(frozenset({2}), -_D90, _Y)]
    if tau > 0.0:
        events.append(WeakPulse(frozenset({2}), weak_pulse_amplitude(kappa, j), tau, _MX))
    events.append(HardPulse(frozenset({2}), (2.0 - kappa / 2.0) * _D180, _X))
    events.append(HardPulse(frozenset({2}), _D90, _Y))
    return events


_BUILDERS = {"A": _uzzz_a, "B": _uzzz_b, "C": _uzzz_c, "D": _uzzz_d}


def build_uzzz(v: str, kappa: float, j: float) -> PulseProgram:
    """Ideal pulse program realizing U_zzz(kappa) with sequence variant v."""
    _check_variant(v)
    _check_kappa(kappa)
    if j <= 0:
        raise ValueError(f"coupling J must be positive, got {j}")
    events = _BUILDERS[v](kappa, j)
    return PulseProgram(tuple(events), label=f"uzzz-{v}", kappa=kappa)


def duration_scaling(v: str, kappa: float) -> tuple[float, float]:
    """(tau * J, s) for variant v: duration in units of 1/J and scaling factor.

    Satisfies s * (tau J) = kappa exactly.
    """
    _check_variant(v)
    _check_kappa(kappa)
    if v == "A":
        tau = (2.0 + kappa) / 2.0
    elif v == "B":
        tau = 1.0
    elif v == "C":
        tau = (1.0 + kappa) / 2.0
    else:
        tau = math.sqrt(kappa * (4.0 - kappa)) / 2.0
    s = 0.0 if tau == 0.0 else kappa / tau
    return tau, s


def theoretical_limit(kappa: float) -> tuple[float, float]:
    """(tau* J, s*) - the time-optimal bound, valid for any real kappa.

    kappa is first reduced into [0, 1] using tau*(2n +/- kappa) = tau*(kappa).
    """
    r = math.fmod(abs(kappa), 2.0)
    if r > 1.0:
        r = 2.0 - r
    tau = math.sqrt(r * (4.0 - r)) / 2.0
    s = 0.0 if tau == 0.0 else 2.0 * r / math.sqrt(r * (4.0 - r))
    return tau, s


def build_swap13(v: str, kappa: float, j: float) -> PulseProgram:
    """Indirect SWAP(1,3) program: U_zzz U_yzy U_xzx exp{+i pi/2 I2z}.

    Each trilinear factor is an axis-change conjugation (90-degree rotations
    on spins 1 and 3) around the variant's U_zzz block; at kappa = 1 the
    propagator equals the spin-1<->3 permutation up to global phase.
    """
    core = lambda: build_uzzz(v, kappa, j).events
    events = [
        ZRotation(2, -_D90),  # exp{+i pi/2 I2z}
        # U_xzx = R U_zzz R^-1 with R = 90y(1,3) mapping z->x on spins 1, 3
        HardPulse(frozenset({1, 3}), -_D90, _Y),
        *core(),
        HardPulse(frozenset({1, 3}), _D90, _Y),
        # U_yzy via R' = -90x(1,3) mapping z->y on spins 1, 3
        HardPulse(frozenset({1, 3}), _D90, _X),
        *core(),
        HardPulse(frozenset({1, 3}), -_D90, _X),
        # U_zzz
        *core(),
    ]
    return PulseProgram(tuple(events), label=f"swap13-{v}", kappa=kappa)


def swap_duration_bookkeeping(j: float) -> dict:
    """Durations (s) of direct, conventional-indirect and optimal SWAP(1,3)."""
    if j <= 0:
        raise ValueError(f"coupling J must be positive, got {j}")
    return {
        "direct": 3.0 / (2.0 * j),
        "conventional13": 9.0 / (2.0 * j),
        "optimal13": 3.0 * math.sqrt(3.0) / (2.0 * j),
    }
