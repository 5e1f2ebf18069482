import pytest

from membrane_kit.errors import ConfigError
from membrane_kit.experiment.config import config_hash, default_config, dump_config, load_config, parse_quantity
from membrane_kit import core

FULL = """\
# full document
[membrane]
side_x = 1 mm
side_y = 1.5 mm
thickness = 50 nm
density = 3100 kg/m3
stress = 62.4 MPa
q_intrinsic = 1e6 @ 300 K, 1e7 @ 300 mK
override_k = 30 N/m
override_f0 = 100000 Hz
support_mass_ratio = 1e5
mount_q = 100

[environment]
medium = helium
temperature = 30 mK
he3_fraction = 1e-10

[geometry]
radius = 1 cm
separation = 26 um
conducting_spot_diameter = 3 mm
film_thickness = 100 nm
coefficient = ideal-metal-pfa

[readout]
gap = 0.1 mm
bias_voltage = 1 V

[sweep]
axis = temperature_T
start = 5 mK
stop = 90 mK
points = 12
scale = log

[sim]
seed = 42
drive = sinusoid
drive_force = 1e-12 N
drive_on = 0 s
drive_off = 0.01 s
"""


def test_minimal_document_defaults():
    cfg = load_config("[membrane]\n")
    assert cfg.membrane.thickness == 50e-9
    assert cfg.membrane.stress == 62.4e6
    assert cfg.membrane.q_intrinsic == {300.0: 1e6, 0.3: 1e7}
    assert cfg.environment.medium == "vacuum"
    assert cfg.environment.temperature == 300.0
    assert cfg.geometry is None and cfg.sweep is None
    assert cfg == default_config()


def test_full_document():
    cfg = load_config(FULL)
    assert cfg.membrane.side_y == 1.5e-3
    assert cfg.membrane.thickness == 5e-8  # exact decimal scaling
    assert cfg.environment.temperature == 0.03
    assert cfg.geometry.coefficient == "ideal-metal-pfa"
    assert cfg.sweep.points == 12
    assert cfg.sim.drive == "sinusoid"
    assert cfg.support.mount_q == 100.0


@pytest.mark.parametrize("text", ["[membrane]\n", FULL])
def test_roundtrip_fixed_point(text):
    cfg = load_config(text)
    echo = dump_config(cfg)
    again = load_config(echo)
    assert again == cfg
    assert dump_config(again) == echo
    assert config_hash(again) == config_hash(cfg)


def test_helium_above_limit_cites_limit_and_line():
    text = "[membrane]\n[environment]\nmedium = helium\ntemperature = 0.7 K\n"
    with pytest.raises(ConfigError, match="0.6") as err:
        load_config(text)
    assert err.value.line == 4
    assert err.value.field == "temperature"


@pytest.mark.parametrize(
    "text, line, field",
    [
        ("[membrane]\ncolour = red\n", 2, "colour"),
        ("[membrane]\nthickness = 50 furlongs\n", 2, "thickness"),
        ("[membrane]\nthickness = 50 K\n", 2, "thickness"),
        ("[membrane]\nthickness = 5,0 nm\n", 2, "thickness"),
        ("[membrane]\nthickness = 50 nm\nthickness = 60 nm\n", 3, "thickness"),
        ("[membrane]\n[sweep]\naxis = temperature_T\nstart = 5 K\nstop = 1 K\n", 4, "start"),
        ("[membrane]\n[environment]\nmedium = plasma\n", 3, "medium"),
    ],
)
def test_errors_identify_line_and_field(text, line, field):
    with pytest.raises(ConfigError) as err:
        load_config(text)
    assert err.value.line == line
    assert err.value.field == field


def test_missing_keys_and_sections():
    with pytest.raises(ConfigError, match="membrane"):
        load_config("[environment]\ntemperature = 4 K\n")
    with pytest.raises(ConfigError) as err:
        load_config("[membrane]\n[sweep]\naxis = separation_d\nstart = 1 um\n")
    assert err.value.field == "stop"
    with pytest.raises(ConfigError) as err:
        load_config("[nonsense]\n")
    assert err.value.line == 1


def test_unit_mismatch_message():
    with pytest.raises(ConfigError, match="unit mismatch"):
        parse_quantity("3 mK", core.LENGTH)
    assert parse_quantity("26 um", core.LENGTH) == 26e-6
    assert parse_quantity("0.1", core.DIMENSIONLESS) == 0.1


def test_log_sweep_requires_positive_start():
    with pytest.raises(ConfigError):
        load_config("[membrane]\n[sweep]\naxis = separation_d\nstart = 0 m\nstop = 1 mm\n")


def test_comment_and_blank_lines_ignored():
    cfg = load_config("\n# hello\n[membrane]  # block\nthickness = 100 nm  # thicker\n")
    assert cfg.membrane.thickness == 1e-7
