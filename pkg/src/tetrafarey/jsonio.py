"""JSON encoding of Eisenstein integers, points, matrices, windows and reports.

Integers beyond the 53-bit safe range travel as decimal strings; decoding
accepts either form.
"""

from __future__ import annotations

import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from .eisenstein import EInt, ProjPoint, QSigma, UnimodularMatrix
from .paths import AngleSeq, PathRep
from .tilings import TilingTriple, TilingWindow

SCHEMA = 1
SAFE = 2**53 - 1


class DecodeError(ValueError):
    """Malformed input; ``where`` is a JSON-pointer-like location."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where or '/'}: {msg}")
        self.where = where or "/"


def enc_int(n: int) -> int | str:
    return n if -SAFE <= n <= SAFE else str(n)


def dec_int(x: Any, where: str) -> int:
    if isinstance(x, bool):
        raise DecodeError(where, "expected an integer")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    if isinstance(x, float) and x.is_integer() and abs(x) <= SAFE:
        return int(x)
    raise DecodeError(where, f"expected an integer, got {x!r}")


def enc_eint(z: EInt) -> list:
    return [enc_int(z.a), enc_int(z.b)]


def dec_eint(x: Any, where: str = "") -> EInt:
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return EInt(dec_int(x, where))
    if not isinstance(x, list) or len(x) != 2:
        raise DecodeError(where, "expected [a, b]")
    return EInt(dec_int(x[0], f"{where}/0"), dec_int(x[1], f"{where}/1"))


def enc_point(p: ProjPoint) -> dict:
    return {"p": enc_eint(p.p), "q": enc_eint(p.q)}


def dec_point(x: Any, where: str = "") -> ProjPoint:
    if isinstance(x, dict):
        if "p" not in x or "q" not in x:
            raise DecodeError(where, 'point needs "p" and "q"')
        p, q = dec_eint(x["p"], f"{where}/p"), dec_eint(x["q"], f"{where}/q")
    elif x == "inf":
        p, q = EInt(1), EInt(0)
    else:
        # a bare EInt is the point z/1
        p, q = dec_eint(x, where), EInt(1)
    if not p and not q:
        raise DecodeError(where, "0/0 is not a point")
    return ProjPoint(p, q)


def dec_points(x: Any, where: str = "", count: int | None = None) -> list[ProjPoint]:
    if not isinstance(x, list):
        raise DecodeError(where, "expected a list of points")
    if count is not None and len(x) != count:
        raise DecodeError(where, f"expected {count} points, got {len(x)}")
    return [dec_point(v, f"{where}/{i}") for i, v in enumerate(x)]


def enc_matrix(m: UnimodularMatrix) -> list:
    return [enc_eint(e) for e in m.entries()]


def dec_matrix(x: Any, where: str = "") -> UnimodularMatrix:
    if isinstance(x, list) and len(x) == 2 and all(isinstance(r, list) and len(r) == 2 for r in x) and not all(
        isinstance(v, (int, str)) for r in x for v in r
    ):
        x = [x[0][0], x[0][1], x[1][0], x[1][1]]
    if not isinstance(x, list) or len(x) != 4:
        raise DecodeError(where, "matrix is a row-major list of four EInt")
    a, b, c, d = (dec_eint(v, f"{where}/{i}") for i, v in enumerate(x))
    det = a * d - b * c
    if not det.is_unit():
        raise DecodeError(where, "matrix is not unimodular")
    return UnimodularMatrix(a, b, c, d, det == EInt(1))


def enc_angles(s: AngleSeq) -> dict:
    return {"base_index": s.base_index, "values": [enc_eint(a) for a in s.values]}


def dec_angles(x: Any, where: str = "", default_base: int = 1) -> AngleSeq:
    if isinstance(x, list):
        return AngleSeq(tuple(dec_eint(v, f"{where}/{i}") for i, v in enumerate(x)), default_base)
    if isinstance(x, dict) and "values" in x:
        base = dec_int(x.get("base_index", default_base), f"{where}/base_index")
        vals = x["values"]
        if not isinstance(vals, list):
            raise DecodeError(f"{where}/values", "expected a list")
        return AngleSeq(tuple(dec_eint(v, f"{where}/values/{i}") for i, v in enumerate(vals)), base)
    raise DecodeError(where, 'angles are a list of [a, b] or {"base_index", "values"}')


def enc_path(p: PathRep) -> dict:
    return {"base_index": p.base_index, "mode": p.mode.value, "vertices": [enc_point(v) for v in p.vertices]}


def dec_path_vertices(x: Any, where: str = "") -> tuple[list[ProjPoint], int]:
    if isinstance(x, dict) and "vertices" in x:
        base = dec_int(x.get("base_index", 0), f"{where}/base_index")
        return dec_points(x["vertices"], f"{where}/vertices"), base
    return dec_points(x, where), 0


def enc_window(w: TilingWindow) -> dict:
    return {
        "row_offset": w.row_offset,
        "col_offset": w.col_offset,
        "entries": [[enc_eint(e) for e in row] for row in w.entries],
    }


def dec_window(x: Any, where: str = "") -> TilingWindow:
    if not isinstance(x, dict) or "entries" not in x:
        raise DecodeError(where, 'window needs "entries"')
    rows = x["entries"]
    if not isinstance(rows, list) or not rows:
        raise DecodeError(f"{where}/entries", "expected a non-empty list of rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise DecodeError(f"{where}/entries/{i}", "expected a row")
        out.append(tuple(dec_eint(v, f"{where}/entries/{i}/{j}") for j, v in enumerate(row)))
    if any(len(r) != len(out[0]) for r in out):
        raise DecodeError(f"{where}/entries", "ragged window")
    r0 = dec_int(x.get("row_offset", 0), f"{where}/row_offset")
    c0 = dec_int(x.get("col_offset", 0), f"{where}/col_offset")
    return TilingWindow(r0, c0, tuple(out))


def enc_triple(t: TilingTriple) -> dict:
    return {"a": enc_angles(t.a), "b": enc_angles(t.b), "X": enc_matrix(t.X)}


def dec_triple(x: Any, where: str = "") -> TilingTriple:
    if not isinstance(x, dict) or not {"a", "b", "X"} <= set(x):
        raise DecodeError(where, 'triple needs "a", "b" and "X"')
    X = dec_matrix(x["X"], f"{where}/X")
    if X.det() != EInt(1):
        raise DecodeError(f"{where}/X", "det(X) must be 1")
    return TilingTriple(dec_angles(x["a"], f"{where}/a"), dec_angles(x["b"], f"{where}/b"), X)


def enc_fraction(f: Fraction) -> int | str:
    return enc_int(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def enc_qsigma(z: QSigma) -> list:
    return [enc_fraction(z.a), enc_fraction(z.b)]


def to_jsonable(x: Any) -> Any:
    """Recursively convert domain values to JSON-ready data."""
    if isinstance(x, EInt):
        return enc_eint(x)
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return enc_int(x)
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            return str(x)
        return x
    if isinstance(x, Fraction):
        return enc_fraction(x)
    if isinstance(x, QSigma):
        return enc_qsigma(x)
    if isinstance(x, ProjPoint):
        return enc_point(x)
    if isinstance(x, UnimodularMatrix):
        return enc_matrix(x)
    if isinstance(x, AngleSeq):
        return enc_angles(x)
    if isinstance(x, PathRep):
        return enc_path(x)
    if isinstance(x, TilingWindow):
        return enc_window(x)
    if isinstance(x, TilingTriple):
        return enc_triple(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if hasattr(x, "as_dict"):
        return to_jsonable(x.as_dict())
    raise TypeError(f"cannot encode {type(x).__name__}")


def load_arg(text: str) -> Any:
    """Inline JSON, a path to a JSON file, or '-' for standard input."""
    if text == "-":
        src, origin = sys.stdin.read(), "<stdin>"
    else:
        stripped = text.lstrip()
        if stripped[:1] in "[{\"" or stripped[:1].isdigit() or stripped[:1] == "-":
            src, origin = text, "<inline>"
        elif Path(text).is_file():
            src, origin = Path(text).read_text(), text
        else:
            src, origin = text, "<inline>"
    try:
        return json.loads(src)
    except json.JSONDecodeError as e:
        raise DecodeError(f"{origin}:{e.lineno}:{e.colno}", e.msg) from None


def dumps(obj: Any, indent: int | None = None) -> str:
    return json.dumps(to_jsonable(obj), indent=indent, sort_keys=False)
