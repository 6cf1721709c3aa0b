"""Pulse-program data model and its text format.

A program is an ordered list of timed events. Times are stored in seconds,
angles and phases in radians; the text format accepts us/ms/s, Hz/kHz and
degrees (or the symbolic phases x, y, -x, -y).

Text format, one event per line, '#' starts a comment:

    pulse targets=<list> angle=<deg> phase=<x|y|-x|-y|deg>
    wpulse targets=<list> amp=<Hz> dur=<time> phase=<...>
    delay <time>
    zrot target=<k> angle=<deg>

Time literals: <float><us|ms|s>. The serializer emits this exact shape
deterministically. Program metadata travels through '# label:', '# kappa:'
and '# meta' comment directives, which the parser reads back; other comments
are ignored.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class HardPulse:
    """Instantaneous (in ideal mode) rotation on a set of spins."""

    targets: frozenset
    flip: float  # rad
    phase: float  # rad

    def __post_init__(self):
        if not self.targets:
            raise ValueError("pulse requires at least one target spin")
        if not all(k in (1, 2, 3) for k in self.targets):
            raise ValueError(f"unknown spin index in targets {sorted(self.targets)}")
        if not math.isfinite(self.flip):
            raise ValueError("flip angle must be finite")


@dataclass(frozen=True)
class WeakPulse:
    """Low-amplitude pulse applied while free evolution stays active."""

    targets: frozenset
    amplitude: float  # Hz
    duration: float  # s
    phase: float  # rad

    def __post_init__(self):
        if not self.targets:
            raise ValueError("pulse requires at least one target spin")
        if not all(k in (1, 2, 3) for k in self.targets):
            raise ValueError(f"unknown spin index in targets {sorted(self.targets)}")
        if self.amplitude < 0:
            raise ValueError("weak-pulse amplitude must be >= 0")
        if self.duration < 0:
            raise ValueError("duration must be >= 0")


@dataclass(frozen=True)
class Delay:
    duration: float  # s

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError("duration must be >= 0")


@dataclass(frozen=True)
class ZRotation:
    """Bookkeeping z-rotation exp{-i angle I_kz}; takes no time."""

    target: int
    angle: float  # rad

    def __post_init__(self):
        if self.target not in (1, 2, 3):
            raise ValueError(f"unknown spin index {self.target}")
        if not math.isfinite(self.angle):
            raise ValueError("angle must be finite")


@dataclass(frozen=True)
class PulseProgram:
    events: tuple = ()
    label: str = ""
    kappa: float | None = None
    meta: tuple = ()  # ordered (key, value) pairs, e.g. receiver phases

    @property
    def nominal_duration(self) -> float:
        """Sum of delays and weak-pulse durations (hard pulses are free)."""
        total = 0.0
        for ev in self.events:
            if isinstance(ev, (Delay, WeakPulse)):
                total += ev.duration
        return total

    def __add__(self, other: "PulseProgram") -> "PulseProgram":
        label = self.label if self.label == other.label else f"{self.label}+{other.label}"
        return PulseProgram(self.events + other.events, label=label)

    def relabeled(self, label: str, kappa: float | None = None) -> "PulseProgram":
        return replace(self, label=label, kappa=kappa if kappa is not None else self.kappa)

    def meta_dict(self) -> dict:
        return dict(self.meta)


class ProgramSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


_TIME_RE = re.compile(r"^([-+]?[0-9.eE+-]+?)(us|ms|s)$")
_FREQ_RE = re.compile(r"^([-+]?[0-9.eE+-]+?)(kHz|Hz)?$")

_PHASE_NAMES = {"x": 0.0, "y": math.pi / 2, "-x": math.pi, "-y": 1.5 * math.pi}


def _parse_time(tok: str, line: int) -> float:
    m = _TIME_RE.match(tok)
    if not m:
        raise ProgramSyntaxError(f"bad time literal {tok!r}", line)
    try:
        value = float(m.group(1))
    except ValueError:
        raise ProgramSyntaxError(f"bad time literal {tok!r}", line) from None
    scale = {"us": 1e-6, "ms": 1e-3, "s": 1.0}[m.group(2)]
    t = value * scale
    if t < 0:
        raise ProgramSyntaxError(f"negative duration {tok!r}", line)
    return t


def _parse_freq(tok: str, line: int) -> float:
    m = _FREQ_RE.match(tok)
    if not m:
        raise ProgramSyntaxError(f"bad frequency literal {tok!r}", line)
    try:
        value = float(m.group(1))
    except ValueError:
        raise ProgramSyntaxError(f"bad frequency literal {tok!r}", line) from None
    return value * (1e3 if m.group(2) == "kHz" else 1.0)


def _parse_phase(tok: str, line: int) -> float:
    if tok in _PHASE_NAMES:
        return _PHASE_NAMES[tok]
    try:
        return math.radians(float(tok))
    except ValueError:
        raise ProgramSyntaxError(f"bad phase {tok!r}", line) from None


def _parse_targets(tok: str, line: int) -> frozenset:
    try:
        spins = frozenset(int(s) for s in tok.split(","))
    except ValueError:
        raise ProgramSyntaxError(f"bad target list {tok!r}", line) from None
    if not spins or not all(k in (1, 2, 3) for k in spins):
        raise ProgramSyntaxError(f"unknown spin index in targets {tok!r}", line)
    return spins


def _fields(tokens, allowed, line):
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ProgramSyntaxError(f"expected key=value, got {tok!r}", line)
        key, _, val = tok.partition("=")
        if key not in allowed:
            raise ProgramSyntaxError(f"unknown field {key!r}", line)
        out[key] = val
    missing = set(allowed) - set(out)
    if missing:
        raise ProgramSyntaxError(f"missing field(s) {sorted(missing)}", line)
    return out


def parse_program(text: str, label: str = "") -> PulseProgram:
    events = []
    kappa = None
    meta = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        comment = raw.strip()
        # metadata directives round-trip through comments; other comments
        # are ignored
        if comment.startswith("# label:"):
            label = comment[len("# label:"):].strip()
            continue
        if comment.startswith("# kappa:"):
            try:
                kappa = float(comment[len("# kappa:"):].strip())
            except ValueError:
                raise ProgramSyntaxError("bad kappa value", lineno) from None
            continue
        if comment.startswith("# meta "):
            key, _, value = comment[len("# meta "):].partition("=")
            meta.append((key, value))
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, args = tokens[0], tokens[1:]
        if kind == "pulse":
            f = _fields(args, ("targets", "angle", "phase"), lineno)
            try:
                flip = math.radians(float(f["angle"]))
            except ValueError:
                raise ProgramSyntaxError(f"bad angle {f['angle']!r}", lineno) from None
            events.append(HardPulse(_parse_targets(f["targets"], lineno), flip,
                                    _parse_phase(f["phase"], lineno)))
        elif kind == "wpulse":
            f = _fields(args, ("targets", "amp", "dur", "phase"), lineno)
            events.append(WeakPulse(_parse_targets(f["targets"], lineno),
                                    _parse_freq(f["amp"], lineno),
                                    _parse_time(f["dur"], lineno),
                                    _parse_phase(f["phase"], lineno)))
        elif kind == "delay":
            if len(args) != 1:
                raise ProgramSyntaxError("delay takes exactly one time argument", lineno)
            events.append(Delay(_parse_time(args[0], lineno)))
        elif kind == "zrot":
            f = _fields(args, ("target", "angle"), lineno)
            try:
                target = int(f["target"])
                angle = math.radians(float(f["angle"]))
            except ValueError:
                raise ProgramSyntaxError(f"bad zrot arguments {args!r}", lineno) from None
            if target not in (1, 2, 3):
                raise ProgramSyntaxError(f"unknown spin index {target}", lineno)
            events.append(ZRotation(target, angle))
        else:
            raise ProgramSyntaxError(f"unknown event {kind!r}", lineno)
    return PulseProgram(tuple(events), label=label, kappa=kappa, meta=tuple(meta))


def _fmt_deg(rad: float) -> str:
    return repr(round(math.degrees(rad), 10))


def _fmt_phase(rad: float) -> str:
    for name, value in _PHASE_NAMES.items():
        if abs((rad - value) % TWO_PI) < 1e-12 or abs((rad - value) % TWO_PI - TWO_PI) < 1e-12:
            return name
    return _fmt_deg(rad)


def _fmt_targets(targets) -> str:
    return ",".join(str(k) for k in sorted(targets))


def serialize_program(p: PulseProgram) -> str:
    lines = []
    if p.label:
        lines.append(f"# label: {p.label}")
    if p.kappa is not None:
        lines.append(f"# kappa: {repr(p.kappa)}")
    for key, value in p.meta:
        lines.append(f"# meta {key}={value}")
    for ev in p.events:
        if isinstance(ev, HardPulse):
            lines.append(f"pulse targets={_fmt_targets(ev.targets)} "
                         f"angle={_fmt_deg(ev.flip)} phase={_fmt_phase(ev.phase)}")
        elif isinstance(ev, WeakPulse):
            lines.append(f"wpulse targets={_fmt_targets(ev.targets)} "
                         f"amp={repr(ev.amplitude)}Hz dur={repr(ev.duration)}s "
                         f"phase={_fmt_phase(ev.phase)}")
        elif isinstance(ev, Delay):
            lines.append(f"delay {repr(ev.duration)}s")
        elif isinstance(ev, ZRotation):
            lines.append(f"zrot target={ev.target} angle={_fmt_deg(ev.angle)}")
        else:
            raise TypeError(f"unknown event type {type(ev).__name__}")
    return "\n".join(lines) + "\n"


def total_duration(p: PulseProgram, settings=None, sys=None) -> float:
    """Program duration in seconds.

    Ideal mode (settings None or settings.mode == 'ideal'): delays plus
    weak-pulse durations. Realistic mode: hard pulses additionally take
    |flip| / (2 pi amplitude) per rf channel they touch; needs the spin
    system for the spin -> channel map.
    """
    realistic = settings is not None and getattr(settings, "mode", "ideal") == "realistic"
    total = p.nominal_duration
    if not realistic:
        return total
    if sys is None:
        raise ValueError("realistic-mode duration needs the spin system for channel lookup")
    for ev in p.events:
        if isinstance(ev, HardPulse):
            channels = {sys.channel_of(k) for k in ev.targets}
            widths = []
            for ch in channels:
                amp = settings.amplitude_for(ch)
                if amp <= 0:
                    raise ValueError(f"channel {ch!r} has no positive rf amplitude")
                widths.append(abs(ev.flip) / (TWO_PI * amp))
            # simultaneous multi-channel pulse: stretched to the slowest channel
            total += max(widths)
    return total
