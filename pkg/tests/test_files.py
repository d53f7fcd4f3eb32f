import json
import tempfile
from pathlib import Path

import pytest
from hypothesis import given

from acslie import catalog
from acslie.affalg import assoc_algebra
from acslie.files import (FileFormatError, algebra_to_json, assoc_to_json, read_algebra, read_assoc,
                          read_structure, structure_to_json, write_json)
from acslie.lie import JacobiError

from conftest import small_rationals


def dump(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return path


def read_algebra_from(obj):
    with tempfile.TemporaryDirectory() as d:
        path = Path(d) / "a.json"
        path.write_text(json.dumps(obj))
        return read_algebra(path)


@pytest.mark.parametrize("entry", catalog.ids())
def test_round_trip(tmp_path, entry):
    L, J = catalog.instantiate(entry, catalog.parameter_grid(entry, 2)[-1])
    write_json(tmp_path / "a.json", algebra_to_json(L))
    write_json(tmp_path / "j.json", structure_to_json(J))
    assert read_algebra(tmp_path / "a.json") == L
    assert read_structure(tmp_path / "j.json") == J


def test_assoc_round_trip(tmp_path):
    A = assoc_algebra("A2")
    write_json(tmp_path / "a.json", assoc_to_json(A))
    assert read_assoc(tmp_path / "a.json") == A


@given(small_rationals)
def test_rational_strings_exact(q):
    obj = {"dim": 2, "brackets": [{"i": 1, "j": 2, "result": {"2": str(q.numerator) + "/" + str(q.denominator)}}]}
    L = read_algebra_from(obj)
    assert L.basis_bracket(0, 1)[1] == q


class TestRejects:
    @pytest.mark.parametrize("obj", [
        {"dim": 2, "brackets": [{"i": 1, "j": 2, "result": {"2": 1}}]},
        {"dim": 2, "brackets": [{"i": 1, "j": 2, "result": {"2": "0.5"}}]},
        {"dim": 2, "brackets": [{"i": 2, "j": 1, "result": {"2": "1"}}]},
        {"dim": 2, "brackets": [{"i": 1, "j": 3, "result": {"2": "1"}}]},
        {"dim": 2, "brackets": [{"i": 1, "j": 2, "result": {"5": "1"}}]},
        {"dim": 2, "brackets": [{"i": 1, "j": 2, "result": {}}, {"i": 1, "j": 2, "result": {}}]},
        {"dim": "2", "brackets": []},
        {"brackets": []},
        [1, 2],
    ])
    def test_bad_algebra(self, tmp_path, obj):
        with pytest.raises(FileFormatError):
            read_algebra(dump(tmp_path, "a.json", obj))

    def test_not_json(self, tmp_path):
        with pytest.raises(FileFormatError):
            read_algebra(dump(tmp_path, "a.json", "{"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileFormatError):
            read_algebra(tmp_path / "absent.json")

    def test_jacobi_failure(self, tmp_path):
        obj = {"dim": 3, "brackets": [{"i": 1, "j": 2, "result": {"3": "1"}}, {"i": 2, "j": 3, "result": {"1": "1"}},
                                      {"i": 1, "j": 3, "result": {"1": "-1"}}]}
        path = dump(tmp_path, "a.json", obj)
        with pytest.raises(JacobiError):
            read_algebra(path)
        assert read_algebra(path, check=False).dim == 3

    @pytest.mark.parametrize("grid", [
        [["0", "-1"], ["1", "1"]],
        [["0", "-1"], ["1"]],
        [["0", -1], ["1", "0"]],
        [["1", "0"], ["0", "1"]],
    ])
    def test_bad_structure(self, tmp_path, grid):
        with pytest.raises(FileFormatError):
            read_structure(dump(tmp_path, "j.json", {"dim": 2, "J": grid}))

    def test_assoc_order(self, tmp_path):
        obj = {"dim": 2, "products": [{"i": 2, "j": 1, "result": {"1": "1"}}]}
        with pytest.raises(FileFormatError):
            read_assoc(dump(tmp_path, "a.json", obj))
