"""File formats: measure text, signal CSV, PGM images, raw float grids."""
from fractions import Fraction

import numpy as np
import pytest

from deconv import EXACT, FLOAT, FormatError, GridSignal, from_atoms
from deconv import io as dio


def test_measure_text_roundtrip_exact(tmp_path):
    path = tmp_path / "m.txt"
    m = from_atoms({-3: Fraction(1, 3), 0: -2, 5: Fraction(7, 2)})
    dio.write_measure(path, m, header=("made by a test",))
    text = path.read_text()
    assert text.splitlines()[0] == "# made by a test"
    assert "1/3" in text
    assert dio.read_measure(path) == m


def test_measure_text_roundtrip_float(tmp_path):
    path = tmp_path / "m.txt"
    m = from_atoms({0: 0.1, 2: -3.5e-7}, mode=FLOAT)
    dio.write_measure(path, m)
    assert dio.read_measure(path, FLOAT) == m


def test_measure_text_two_dimensional(tmp_path):
    path = tmp_path / "m.txt"
    m = from_atoms({(0, 1): 2, (-1, -4): Fraction(1, 8)})
    dio.write_measure(path, m)
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    assert lines == ["-1 -4 1/8", "0 1 2"]
    assert dio.read_measure(path) == m


def test_measure_parser_details(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("# comment\n1 1/2  # trailing comment\n\n1 1/2\n-2 0.25\n")
    m = dio.read_measure(path)
    assert dict(m.atoms) == {(1,): Fraction(1), (-2,): Fraction(1, 4)}


def test_measure_parser_errors_carry_line_numbers(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("0 1\n1 2 3 4 5\n")
    with pytest.raises(FormatError) as err:
        dio.read_measure(path)
    assert ":2:" in str(err.value)

    path.write_text("0 1\n0 0 1\n")
    with pytest.raises(FormatError, match="mixed"):
        dio.read_measure(path)

    path.write_text("x 1\n")
    with pytest.raises(FormatError, match="coordinate"):
        dio.read_measure(path)

    path.write_text("0 1/0\n")
    with pytest.raises(FormatError):
        dio.read_measure(path)

    path.write_text("# nothing but comments\n")
    assert dio.read_measure(path).is_zero


def test_signal_csv_lattice_roundtrip(tmp_path):
    path = tmp_path / "s.csv"
    f = GridSignal.from_lattice_dict({(-1,): Fraction(2, 3), (3,): -1}, dimension=1)
    dio.write_signal_csv(path, f, header=("config a=1",))
    text = path.read_text().splitlines()
    assert text[0] == "# config a=1"
    assert text[1] == "index,value"
    back = dio.read_signal_csv(path)
    assert back.mode == EXACT
    assert back.lattice_equal(f)


def test_signal_csv_float_grid_roundtrip(tmp_path):
    path = tmp_path / "s.csv"
    f = GridSignal(np.array([0.5, -1.25, 2.0]), 0.05, -3.1)
    dio.write_signal_csv(path, f)
    assert path.read_text().splitlines()[0] == "x,value"
    back = dio.read_signal_csv(path)
    assert back.mode == FLOAT
    # repr round-trips values exactly; spacing is re-inferred from the
    # abscissas, so it only has to land within alignment tolerance
    assert np.array_equal(back.values, f.values)
    assert back.spacing[0] == pytest.approx(f.spacing[0], rel=1e-13)
    assert back.origin[0] == f.origin[0]
    assert (back - f).max_abs() == 0.0


def test_signal_csv_errors(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("value,stuff\n1,2\n")
    with pytest.raises(FormatError, match="header"):
        dio.read_signal_csv(path)
    path.write_text("index,value\n")
    with pytest.raises(FormatError, match="no data"):
        dio.read_signal_csv(path)
    path.write_text("index,value\n1,2,3\n")
    with pytest.raises(FormatError):
        dio.read_signal_csv(path)
    path.write_text("x,value\n0.0,1\n0.1,1\n0.3,1\n")
    with pytest.raises(FormatError, match="uniform"):
        dio.read_signal_csv(path)
    path.write_text("index,value\nbad,1\n")
    with pytest.raises(FormatError) as err:
        dio.read_signal_csv(path)
    assert ":2:" in str(err.value)


def test_signal_csv_fills_lattice_holes(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("index,value\n-1,4\n2,1/2\n")
    back = dio.read_signal_csv(path)
    assert back.shape == (4,)
    assert back.lattice_dict() == {(-1,): Fraction(4), (2,): Fraction(1, 2)}


@pytest.mark.parametrize("binary", [True, False])
@pytest.mark.parametrize("maxval", [255, 65535])
def test_pgm_roundtrip(tmp_path, binary, maxval):
    path = tmp_path / "img.pgm"
    rng = np.random.default_rng(5)
    f = GridSignal(rng.uniform(-1.0, 2.0, size=(7, 11)), (0.5, 0.25), (-1.0, 3.0))
    dio.write_pgm(path, f, maxval=maxval, binary=binary)
    back = dio.read_pgm(path)
    assert back.shape == f.shape
    assert back.spacing == f.spacing
    assert back.origin == f.origin
    # quantization error bounded by half a level of the 3-unit range
    assert back.max_abs_diff(f) <= 3.0 / maxval
    assert path.with_suffix(".pgm.meta").exists() or (str(path) + ".meta")


def test_pgm_without_sidecar_reads_counts(tmp_path):
    path = tmp_path / "img.pgm"
    path.write_bytes(b"P2\n# a comment\n2 2\n255\n0 128\n255 64\n")
    back = dio.read_pgm(path)
    assert back.spacing == (1.0, 1.0)
    assert back.values.tolist() == [[0.0, 128.0], [255.0, 64.0]]


def test_pgm_constant_image(tmp_path):
    path = tmp_path / "img.pgm"
    f = GridSignal(np.full((3, 3), 2.5), (1.0, 1.0), (0.0, 0.0))
    dio.write_pgm(path, f)
    assert dio.read_pgm(path).max_abs_diff(f) == 0.0


def test_pgm_errors(tmp_path):
    path = tmp_path / "img.pgm"
    path.write_bytes(b"P3\n2 2\n255\n")
    with pytest.raises(FormatError, match="magic"):
        dio.read_pgm(path)
    path.write_bytes(b"P5\n2 2\n255\nxx")
    with pytest.raises(FormatError, match="truncated"):
        dio.read_pgm(path)
    path.write_bytes(b"P2\n2 2\n255\n1 2 3\n")
    with pytest.raises(FormatError, match="expected 4 samples"):
        dio.read_pgm(path)
    path.write_bytes(b"P2\n2 2\n10\n1 2 3 11\n")
    with pytest.raises(FormatError, match="maxval"):
        dio.read_pgm(path)


def test_raw_grid_roundtrip(tmp_path):
    path = tmp_path / "g.f64"
    rng = np.random.default_rng(11)
    f = GridSignal(rng.standard_normal((5, 9)), (0.05, 0.1), (-2.0, 1.5))
    dio.write_raw_grid(path, f)
    back = dio.read_raw_grid(path)
    assert back.max_abs_diff(f) == 0.0
    assert back.spacing == f.spacing and back.origin == f.origin


def test_raw_grid_errors(tmp_path):
    path = tmp_path / "g.f64"
    path.write_bytes(b"\x00" * 8)
    with pytest.raises(FormatError, match="descriptor"):
        dio.read_raw_grid(path)
    (tmp_path / "g.f64.desc").write_text(
        "dtype float64-le\nshape 2\nspacing 1.0\norigin 0.0\n")
    with pytest.raises(FormatError, match="bytes"):
        dio.read_raw_grid(path)


def test_dispatch_by_extension(tmp_path):
    f = GridSignal(np.array([1.0, 2.0]), 0.5, 0.0)
    path = tmp_path / "sig.f64"
    dio.save_signal(path, f)
    assert dio.load_signal(path).max_abs_diff(f) == 0.0
    with pytest.raises(FormatError, match="extension"):
        dio.save_signal(tmp_path / "sig.xyz", f)
    with pytest.raises(FormatError, match="extension"):
        dio.load_signal(tmp_path / "sig.xyz")


def test_writers_are_deterministic(tmp_path):
    m = from_atoms({3: Fraction(1, 7), -2: 5, 0: -1})
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    dio.write_measure(a, m, header=("k=v",))
    dio.write_measure(b, m, header=("k=v",))
    assert a.read_bytes() == b.read_bytes()
