import json

import numpy as np
import pytest

from stickknot.catalog import EXAMPLE_41
from stickknot.errors import KnotFileError
from stickknot.knotfile import format_knot, parse_knot, read_knot, write_knot


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_round_trip_bit_exact(tmp_path, rng, fmt):
    pts = rng.normal(size=(9, 3)) * 10.0 ** rng.integers(-8, 8, size=(9, 1))
    path = tmp_path / "k.knot"
    write_knot(path, pts, "random", fmt)
    back = read_knot(path)
    assert np.array_equal(back.points, pts)


def test_text_with_comments_and_commas():
    kf = parse_knot("# header\n1, 2, 3\n\n4 5 6  # trailing\n7\t8\t9\n")
    assert np.array_equal(kf.points, [(1, 2, 3), (4, 5, 6), (7, 8, 9)])


def test_json_name():
    kf = parse_knot(format_knot(EXAMPLE_41, "example", "json"))
    assert kf.name == "example" and kf.closed
    assert np.array_equal(kf.points, EXAMPLE_41)


@pytest.mark.parametrize("text", [
    "",
    "# only a comment\n",
    "1 2\n",
    "1 2 x\n",
    "1 2 nan\n",
    "{not json",
    json.dumps({"points": [[1, 2]]}),
    json.dumps({"points": [[0, 0, 0]], "closed": False}),
    json.dumps([1, 2, 3]),
])
def test_malformed(text):
    with pytest.raises(KnotFileError):
        parse_knot(text)


def test_missing_file(tmp_path):
    with pytest.raises(KnotFileError):
        read_knot(tmp_path / "nope.knot")


def test_bundled_files_parse():
    from pathlib import Path
    root = Path(__file__).resolve().parents[1] / "knots"
    assert np.allclose(read_knot(root / "example41.knot").points, EXAMPLE_41)
    for path in root.glob("*.knot"):
        assert len(read_knot(path).points) >= 4
