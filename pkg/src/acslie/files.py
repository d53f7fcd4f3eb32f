"""JSON file formats for algebras, almost complex structures and commutative associative algebras.

Every number is a rational string ("3", "-1/2"); JSON numbers are rejected so
that nothing passes through floating point.

Algebra:  {"dim": n, "brackets": [{"i": 1, "j": 2, "result": {"3": "1"}}, ...]}
          with 1-based i < j; optional "name" and "labels".
Structure: {"dim": n, "J": [[...], ...]}, a dense row-major grid whose column c
          holds the coordinates of J e_c.
Assoc:    {"dim": m, "products": [{"i": 1, "j": 1, "result": {"1": "1"}}, ...]}
          with 1-based i <= j.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Union

from acslie.affalg import CommAssocAlgebra
from acslie.cstruct import AlmostComplexStructure, NotAnAcsError
from acslie.lie import LieAlgebra
from acslie.linalg import Mat, format_rational, parse_rational


class FileFormatError(ValueError):
    pass


PathLike = Union[str, Path]


def _load(path: PathLike) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise FileFormatError(f"{path}: top level must be an object")
    return data


def _rational(value, where: str) -> Fraction:
    if not isinstance(value, str):
        raise FileFormatError(f"{where}: expected a rational string, got {type(value).__name__}")
    try:
        return parse_rational(value)
    except (ValueError, ZeroDivisionError):
        raise FileFormatError(f"{where}: cannot parse {value!r} as a rational") from None


def _dim(data: dict, where: str) -> int:
    n = data.get("dim")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FileFormatError(f"{where}: 'dim' must be a non-negative integer")
    return n


def _index(value, n: int, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= n:
        raise FileFormatError(f"{where}: index {value!r} out of range 1..{n}")
    return value


def _result(res, n: int, where: str) -> tuple:
    if not isinstance(res, dict):
        raise FileFormatError(f"{where}: 'result' must be an object")
    v = [Fraction(0)] * n
    for k, c in res.items():
        try:
            idx = int(k)
        except ValueError:
            raise FileFormatError(f"{where}: basis key {k!r} is not an integer") from None
        v[_index(idx, n, where) - 1] += _rational(c, f"{where}, coefficient of e{k}")
    return tuple(v)


def _pair_list(data: dict, key: str, n: int, path, strict_order: bool) -> dict:
    items = data.get(key, [])
    if not isinstance(items, list):
        raise FileFormatError(f"{path}: '{key}' must be a list")
    out = {}
    for pos, item in enumerate(items):
        where = f"{path}: {key}[{pos}]"
        if not isinstance(item, dict):
            raise FileFormatError(f"{where}: expected an object")
        i = _index(item.get("i"), n, where)
        j = _index(item.get("j"), n, where)
        if (i >= j) if strict_order else (i > j):
            raise FileFormatError(f"{where}: need i {'<' if strict_order else '<='} j, got ({i}, {j})")
        if (i, j) in out:
            raise FileFormatError(f"{where}: duplicate pair ({i}, {j})")
        out[(i, j)] = _result(item.get("result", {}), n, where)
    return out


def read_algebra(path: PathLike, check: bool = True) -> LieAlgebra:
    data = _load(path)
    n = _dim(data, str(path))
    pairs = _pair_list(data, "brackets", n, path, strict_order=True)
    labels = data.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise FileFormatError(f"{path}: 'labels' must be a list of {n} strings")
    brackets = {(i - 1, j - 1): v for (i, j), v in pairs.items()}
    return LieAlgebra(n, brackets, labels=labels, name=data.get("name"), check=check)


def read_structure(path: PathLike) -> AlmostComplexStructure:
    data = _load(path)
    n = _dim(data, str(path))
    grid = data.get("J")
    if not isinstance(grid, list) or len(grid) != n or any(not isinstance(r, list) or len(r) != n for r in grid):
        raise FileFormatError(f"{path}: 'J' must be a {n}x{n} grid")
    M = Mat([[_rational(x, f"{path}: J[{r}][{c}]") for c, x in enumerate(row)] for r, row in enumerate(grid)], n)
    try:
        return AlmostComplexStructure(M)
    except NotAnAcsError as exc:
        raise FileFormatError(f"{path}: {exc}") from None


def read_assoc(path: PathLike) -> CommAssocAlgebra:
    data = _load(path)
    n = _dim(data, str(path))
    pairs = _pair_list(data, "products", n, path, strict_order=False)
    return CommAssocAlgebra(n, {(i - 1, j - 1): v for (i, j), v in pairs.items()}, name=data.get("name"))


def _result_obj(v) -> dict:
    return {str(k + 1): format_rational(c) for k, c in enumerate(v) if c}


def algebra_to_json(L: LieAlgebra) -> dict:
    out = {"dim": L.dim}
    if L.name:
        out["name"] = L.name
    if L.labels:
        out["labels"] = list(L.labels)
    out["brackets"] = [{"i": i + 1, "j": j + 1, "result": _result_obj(v)} for (i, j), v in sorted(L.brackets.items())]
    return out


def structure_to_json(J) -> dict:
    M = J.J if isinstance(J, AlmostComplexStructure) else J
    return {"dim": M.rows, "J": [[format_rational(x) for x in row] for row in M.tolists()]}


def assoc_to_json(A: CommAssocAlgebra) -> dict:
    out = {"dim": A.dim}
    if A.name:
        out["name"] = A.name
    out["products"] = [{"i": i + 1, "j": j + 1, "result": _result_obj(v)} for (i, j), v in sorted(A.mult.items())]
    return out


def dumps(obj: dict) -> str:
    """One top-level key per line; list-valued keys get one item per line."""
    parts = []
    for key, value in obj.items():
        head = json.dumps(key) + ": "
        if isinstance(value, list) and value:
            items = ",\n  ".join(json.dumps(v) for v in value)
            parts.append(head + "[\n  " + items + "\n ]")
        else:
            parts.append(head + json.dumps(value))
    return "{\n " + ",\n ".join(parts) + "\n}\n"


def write_json(path: PathLike, obj: dict) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
