import math

import pytest

from revival.config import ConfigError, RationalTime, load, number, parse

BASE = """
name = demo
potential.kind = mathieu
potential.q_im = 0.25
initial.kind = indicator
initial.a = 3*pi/8   # comment
initial.b = 5*pi/8
time.p = 1
time.q = 5
"""


def test_defaults_and_values():
    cfg = parse(BASE)
    assert cfg.potential.qcoef == 0.25j
    assert cfg.initial.a == pytest.approx(3 * math.pi / 8)
    assert cfg.time == RationalTime(1, 5)
    assert cfg.modes == 100
    assert cfg.grid == 4096
    assert cfg.adjusted_grid == 4100
    assert cfg.outputs == ("decomposition_csv",)


@pytest.mark.parametrize("text,value", [("1/4", 0.25), ("-pi", -math.pi), ("2**3", 8), ("0.5i", 0.5j), ("1+1j", 1 + 1j)])
def test_number(text, value):
    assert number(text) == pytest.approx(value)


@pytest.mark.parametrize("text", ["__import__('os')", "pi.real", "[1]", "abs(1)"])
def test_number_rejects_code(text):
    with pytest.raises(ConfigError):
        number(text)


@pytest.mark.parametrize(
    "extra",
    [
        "initial.a = 2\ninitial.b = 1",
        "initial.b = 4",
        "bogus = 1",
        "outputs = movie",
        "time.q = 0",
        "modes = 0",
        "potential.kind = banana",
        "name = demo",
        "modes = 2.5",
        "just text",
    ],
)
def test_invalid(extra):
    with pytest.raises(ConfigError):
        parse(BASE + extra)


def test_sweep_expands():
    cfg = parse(BASE + "sweep = 0.25i, 0.5i, 0.75i, 1i")
    runs = cfg.expand_sweep()
    assert [r.potential.qcoef for r in runs] == [0.25j, 0.5j, 0.75j, 1j]
    assert len({r.name for r in runs}) == 4


def test_grid_env(monkeypatch):
    monkeypatch.setenv("REVIVAL_GRID", "512")
    assert parse(BASE).grid == 512


def test_duplicate_key():
    with pytest.raises(ConfigError):
        parse(BASE + "potential.kind = zero\n")


def test_relative_samples_path(tmp_path):
    cfg_path = tmp_path / "a.cfg"
    cfg_path.write_text(BASE.replace("mathieu", "samples") + "potential.samples_file = v.csv\n")
    assert load(cfg_path).potential.samples_file == str(tmp_path / "v.csv")
