import math

import pytest

from trispin.engine import SimulationSettings
from trispin.pulseprog import (
    Delay,
    HardPulse,
    ProgramSyntaxError,
    PulseProgram,
    WeakPulse,
    ZRotation,
    parse_program,
    serialize_program,
    total_duration,
)
from trispin.sequences import VARIANTS, build_swap13, build_uzzz
from trispin.spinsys import ideal_chain


def test_parse_hand_written_program():
    text = """
    # a comment
    pulse targets=1,3 angle=90 phase=-y
    delay 500us
    wpulse targets=2 amp=50.8Hz dur=9.8ms phase=-x
    zrot target=2 angle=-90
    """
    p = parse_program(text)
    pulse, delay, weak, zrot = p.events
    assert pulse == HardPulse(frozenset({1, 3}), math.pi / 2, 1.5 * math.pi)
    assert delay.duration == pytest.approx(500e-6, rel=1e-15)
    assert weak.targets == frozenset({2})
    assert weak.amplitude == 50.8
    assert weak.duration == pytest.approx(9.8e-3, rel=1e-15)
    assert weak.phase == math.pi
    assert zrot == ZRotation(2, -math.pi / 2)


def test_parse_units():
    assert parse_program("delay 1ms").events[0].duration == pytest.approx(1e-3)
    assert parse_program("delay 1s").events[0].duration == 1.0
    amp = parse_program("wpulse targets=1 amp=2kHz dur=1us phase=x").events[0].amplitude
    assert amp == 2000.0
    flip = parse_program("pulse targets=1 angle=45 phase=30").events[0]
    assert flip.flip == pytest.approx(math.pi / 4)
    assert flip.phase == pytest.approx(math.radians(30))


@pytest.mark.parametrize("bad", [
    "delay -1ms",
    "delay 1m",
    "pulse targets=4 angle=90 phase=x",
    "pulse targets=1 angle=90",
    "pulse targets=1 angle=ninety phase=x",
    "wpulse targets=1 amp=10Hz dur=1ms",
    "zrot target=1",
    "sing targets=1 angle=90 phase=x",
])
def test_parse_rejects_malformed_lines(bad):
    with pytest.raises(ProgramSyntaxError):
        parse_program(bad)


def test_syntax_error_reports_line_number():
    with pytest.raises(ProgramSyntaxError) as err:
        parse_program("delay 1ms\ndelay oops")
    assert err.value.line == 2


def test_event_validation():
    with pytest.raises(ValueError):
        Delay(-1e-3)
    with pytest.raises(ValueError):
        HardPulse(frozenset(), math.pi, 0.0)
    with pytest.raises(ValueError):
        WeakPulse(frozenset({2}), -1.0, 1e-3, 0.0)
    with pytest.raises(ValueError):
        ZRotation(4, 1.0)


@pytest.mark.parametrize("v", VARIANTS)
def test_round_trip_is_a_fixpoint(v):
    for builder in (build_uzzz, build_swap13):
        p = builder(v, 1.3, 88.0)
        text = serialize_program(p)
        assert serialize_program(parse_program(text)) == text


def test_metadata_round_trips():
    p = PulseProgram((Delay(1e-3),), label="demo", kappa=0.75,
                     meta=(("transform", "none"), ("receiver-phase-spin2", "-3.14")))
    q = parse_program(serialize_program(p))
    assert q.label == "demo"
    assert q.kappa == 0.75
    assert q.meta == p.meta


def test_nominal_duration_and_concatenation():
    p = build_uzzz("B", 1.0, 88.0)
    assert p.nominal_duration == pytest.approx(1.0 / 88.0)
    q = build_uzzz("D", 1.0, 88.0)
    assert (p + q).nominal_duration == pytest.approx(
        p.nominal_duration + q.nominal_duration)


def test_total_duration_realistic_adds_pulse_widths():
    sys = ideal_chain(88.0)
    realistic = SimulationSettings.make(mode="realistic")
    p90 = PulseProgram((HardPulse(frozenset({1}), math.pi / 2, 0.0),))
    # 90 degrees at 35.7 kHz: 0.25 / 35700 s
    assert total_duration(p90, realistic, sys) == pytest.approx(7.0028e-6, rel=1e-4)
    assert total_duration(p90) == 0.0
    # multi-channel pulse takes the slowest channel's width
    p_all = PulseProgram((HardPulse(frozenset({1, 2, 3}), math.pi, 0.0),))
    assert total_duration(p_all, realistic, sys) == pytest.approx(0.5 / 5500.0)
    with pytest.raises(ValueError):
        total_duration(p90, realistic, None)
