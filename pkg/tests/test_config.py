from pathlib import Path

import numpy as np
import pytest

from fractalframes import ParseError, SchemaError
from fractalframes.config import load_config, parse_config, parse_number, parse_point_list

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def test_jp_config():
    cfg = load_config(CONFIGS / "jp.cfg")
    assert cfg.ifs.N == 2 and cfg.ifs.R[0, 0] == 4
    assert cfg.spectrum_level == 8 and cfg.level == 8
    np.testing.assert_array_equal(cfg.spectrum.base, [[4.0]])
    assert cfg.similarity.hausdorff_dim == pytest.approx(0.5)


def test_all_shipped_configs_load():
    for path in CONFIGS.glob("*.cfg"):
        assert load_config(path).ifs is not None


def test_rational_numbers():
    assert parse_number("1/3") == 1 / 3
    assert parse_number(" -2 ") == -2.0
    cfg = parse_config("matrix = 3\ndigits = 0, 2\njitter = 1/10\n")
    assert cfg.jitter == 0.1
    with pytest.raises(ValueError):
        parse_number("1/0")


def test_duplicate_and_unknown_keys():
    with pytest.raises(SchemaError) as exc:
        parse_config("matrix = 3\nmatrix = 4\n")
    assert exc.value.key == "matrix"
    with pytest.raises(SchemaError) as exc:
        parse_config("colour = red\n")
    assert exc.value.key == "colour"


def test_parse_error_line_number():
    with pytest.raises(ParseError) as exc:
        parse_config("# header\nmatrix = 3\ndigits 0 2\n")
    assert exc.value.lineno == 3
    with pytest.raises(ParseError) as exc:
        parse_config("matrix = 3\ndigits = 0, x\n")
    assert exc.value.lineno == 2


def test_point_lists():
    np.testing.assert_array_equal(parse_point_list("0, 2", 1), [[0], [2]])
    np.testing.assert_array_equal(parse_point_list("0,0; 1,0; 0,1", 2), [[0, 0], [1, 0], [0, 1]])
    with pytest.raises(ValueError):
        parse_point_list("0,0,1; 1,0", 2)


def test_two_d_config():
    cfg = load_config(CONFIGS / "sierpinski_like.cfg")
    assert cfg.ifs.dim == 2 and cfg.ifs.N == 3
    assert cfg.spectrum.digits.shape == (3, 2)


def test_schema_rules():
    with pytest.raises(SchemaError):
        parse_config("matrix = 3\n")
    with pytest.raises(SchemaError):
        parse_config("spectrum.digits = 0, 1\n")
    with pytest.raises(SchemaError):
        parse_config("matrix = 3\ndigits = 0, 2\nwindow = disc\n")
    cfg = parse_config("spectrum.base = 4\nspectrum.digits = 0, 1\nspectrum.scale = 5\n")
    assert cfg.ifs is None and cfg.spectrum.scale == 5.0


def test_spectrum_points_file(tmp_path):
    (tmp_path / "pts.csv").write_text("x0\n0.0\n1.0\n4.0\n")
    (tmp_path / "run.cfg").write_text("matrix = 4\ndigits = 0, 2\nspectrum.points = pts.csv\n")
    cfg = load_config(tmp_path / "run.cfg")
    assert cfg.spectrum.kind == "explicit"
    with pytest.raises(SchemaError):
        parse_config("spectrum.points = a.csv\nspectrum.digits = 0, 1\n")


def test_echo_sorted():
    cfg = parse_config("matrix = 3\ndigits = 0, 2\n")
    assert cfg.echo() == [("digits", "0, 2"), ("matrix", "3")]
