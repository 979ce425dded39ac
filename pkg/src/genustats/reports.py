"""Report objects shared by the CLI and the verification experiments.

A report is one JSON object per computed quantity:
{"quantity", "value", "tail_bound", "convention", "truncation", "verdict"?,
"reference"?, "config", "generated_at"?}.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import math
from importlib import resources
from typing import Iterable, TextIO

from .constants import ConstantReport

_SCHEMA: dict | None = None


def schema() -> dict:
    global _SCHEMA
    if _SCHEMA is None:
        _SCHEMA = json.loads(resources.files("genustats").joinpath("report.schema.json")
                             .read_text())
    return _SCHEMA


def validate(report: dict) -> None:
    import jsonschema

    jsonschema.validate(report, schema())


def _clean(x):
    """JSON-safe copy: tuple keys become strings, non-finite floats become strings."""
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _clean(v)
                for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return _clean(x.item())
    return x


def make_report(quantity: str, value, tail_bound: float = 0.0, convention: str | None = None,
                truncation: dict | None = None, config: dict | None = None,
                verdict: str | None = None, reference: dict | None = None, **extra) -> dict:
    out = {"quantity": quantity, "value": value, "tail_bound": float(tail_bound),
           "convention": convention, "truncation": truncation or {}}
    if verdict is not None:
        out["verdict"] = verdict
    if reference is not None:
        out["reference"] = reference
    out.update(extra)
    out["config"] = config or {}
    return _clean(out)


def from_constant(rep: ConstantReport, config: dict | None = None, **kw) -> dict:
    d = rep.as_dict()
    return make_report(d["quantity"], d["value"], d["tail_bound"], d["convention"],
                       d["truncation"], config, **kw)


def judge(value: float, target: float, tol: float, kind: str = "absolute") -> tuple[str, dict]:
    """Verdict and reference block for |value - target| within tol."""
    if kind == "relative":
        ok = abs(value - target) <= tol * abs(target)
    elif kind == "exact":
        ok = value == target
    else:
        ok = abs(value - target) <= tol
    return ("pass" if ok else "fail"), {"target": target, "tolerance": tol,
                                        "tolerance_kind": kind}


def stamp(reports: list[dict], reproducible: bool) -> list[dict]:
    if reproducible:
        return reports
    now = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return [{**r, "generated_at": now} for r in reports]


def _flat(r: dict) -> dict:
    row = {k: v for k, v in r.items() if k not in ("truncation", "config", "reference")}
    for k, v in r.get("reference", {}).items():
        row[f"reference_{k}"] = v
    for k, v in r.get("truncation", {}).items():
        row[f"truncation_{k}"] = v
    return {k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v)
            for k, v in row.items()}


def render(reports: Iterable[dict], fmt: str, out: TextIO) -> None:
    reports = list(reports)
    if fmt == "json":
        for r in reports:
            out.write(json.dumps(r, sort_keys=True) + "\n")
    elif fmt == "csv":
        rows = [_flat(r) for r in reports]
        cols: list[str] = []
        for row in rows:
            cols.extend(c for c in row if c not in cols)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        out.write(buf.getvalue())
    elif fmt == "text":
        for r in reports:
            tail = f" +- {r['tail_bound']:.3g}" if r.get("tail_bound") else ""
            verdict = f"  [{r['verdict']}]" if "verdict" in r else ""
            conv = f" ({r['convention']})" if r.get("convention") else ""
            out.write(f"{r['quantity']}{conv}: {r['value']}{tail}{verdict}\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")
