"""Serialisation of reports to JSON, CSV and plain text."""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
from fractions import Fraction
from typing import Any, Sequence

from .algebra.polynomial import Polynomial
from .algebra.ratfunc import RationalFunction
from .brackets import Bracket
from .setops import PairGraph, QSet

FORMATS = ("json", "csv", "text")


@dataclasses.dataclass
class Table:
    columns: Sequence[str]
    rows: list


def to_plain(obj: Any, witnesses: bool = False) -> Any:
    """Reduce a report to JSON types with a stable field order.

    Rationals become ``"p/q"`` strings; witness lists are replaced by their
    size unless ``witnesses`` is set."""
    rec = lambda v: to_plain(v, witnesses)  # noqa: E731
    if isinstance(obj, enum.Enum):
        return obj.value
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return f"{obj:.6f}"
    if isinstance(obj, (Polynomial, RationalFunction)):
        return str(obj)
    if isinstance(obj, QSet):
        return obj.as_strings()
    if isinstance(obj, Bracket):
        return {"lo": str(obj.lo), "hi": str(obj.hi), "decimal": obj.decimal()}
    if isinstance(obj, PairGraph):
        return [[str(a), str(b)] for a, b in obj.value_pairs()]
    if isinstance(obj, Table):
        return {"columns": list(obj.columns), "rows": [[rec(r.get(c)) for c in obj.columns] for r in obj.rows]}
    if dataclasses.is_dataclass(obj):
        out = {}
        for f in dataclasses.fields(obj):
            v = getattr(obj, f.name)
            if f.name == "witnesses" and isinstance(v, QSet):
                out["witness_count"] = len(v)
                if witnesses:
                    out["witnesses"] = rec(v)
                continue
            out[f.name] = rec(v)
        return out
    if isinstance(obj, dict):
        return {str(rec(k)) if not isinstance(k, str) else k: rec(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return [rec(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [rec(v) for v in obj]
    return str(obj)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def emit(report: Any, fmt: str = "json", witnesses: bool = False, config: dict | None = None) -> str:
    """Render ``report``; ``config`` becomes a leading header (a ``config``
    key in JSON, ``#`` comment lines otherwise)."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    plain = to_plain(report, witnesses)
    conf = to_plain(config) if config is not None else None
    if fmt == "json":
        doc = {"config": conf, "result": plain} if conf is not None else plain
        return json.dumps(doc, indent=2) + "\n"
    head = "".join(f"# {k}: {_cell(v)}\n" for k, v in conf.items()) if conf else ""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if isinstance(report, Table):
            w.writerow(plain["columns"])
            w.writerows([[_cell(c) for c in row] for row in plain["rows"]])
        elif isinstance(plain, dict):
            w.writerow(["field", "value"])
            w.writerows([[k, _cell(v)] for k, v in plain.items()])
        else:
            w.writerow(["value"])
            w.writerow([_cell(plain)])
        return head + buf.getvalue()
    lines = []
    if isinstance(report, Table):
        cols = plain["columns"]
        cells = [[_cell(c) for c in row] for row in plain["rows"]]
        widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(cols)]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
        lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    elif isinstance(plain, dict):
        lines += [f"{k}: {_cell(v)}" for k, v in plain.items()]
    else:
        lines.append(_cell(plain))
    return head + "".join(line + "\n" for line in lines)
