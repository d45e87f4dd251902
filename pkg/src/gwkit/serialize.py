"""Output documents: exact scalars and series as canonical strings in json, csv or text."""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field

from .algebra.ratfunc import parse_scalar, scalar_to_str
from .algebra.series import TruncatedSeries

__all__ = ["OutputDocument", "Result", "monomial_key", "parse_monomial_key", "series_entries",
           "serialize", "parse_document", "FORMATS"]

FORMATS = ("json", "csv", "text")


def monomial_key(k: int, mono, names) -> str:
    """``u^-2*s1^1*s2^2``; exponents always written, ``1`` for the constant monomial."""
    parts = [f"u^{k}"] if k else []
    parts += [f"{n}^{e}" for n, e in zip(names, mono) if e]
    return "*".join(parts) or "1"


_FACTOR = re.compile(r"([A-Za-z][A-Za-z0-9]*)\^(-?\d+)")


def parse_monomial_key(key: str, names) -> tuple:
    """Inverse of :func:`monomial_key`."""
    names = tuple(names)
    k = 0
    mono = [0] * len(names)
    if key == "1":
        return 0, tuple(mono)
    for factor in key.split("*"):
        m = _FACTOR.fullmatch(factor)
        if not m:
            raise ValueError(f"bad monomial factor {factor!r}")
        name, e = m.group(1), int(m.group(2))
        if name == "u":
            k = e
        else:
            mono[names.index(name)] = e
    return k, tuple(mono)


def series_entries(series: TruncatedSeries) -> dict:
    """Ordered ``{monomial key: scalar string}`` (u ascending, then the auxiliary exponents)."""
    return {monomial_key(k, m, series.names): scalar_to_str(c) for (k, m), c in series.items()}


@dataclass
class Result:
    label: str
    value: object = None
    series: dict | None = None
    names: tuple = ()
    window: dict | None = None

    @classmethod
    def scalar(cls, label: str, value) -> "Result":
        return cls(label, scalar_to_str(value))

    @classmethod
    def from_series(cls, label: str, s: TruncatedSeries) -> "Result":
        window = {"u_offset": s.u_offset, "u_order": s.u_order}
        if s.names:
            window["cap"] = s.s_cap
        return cls(label, None, series_entries(s), tuple(s.names), window)

    def to_json(self) -> dict:
        out = {"label": self.label}
        if self.series is None:
            out["value"] = self.value
        else:
            out["variables"] = list(self.names)
            out["window"] = self.window
            out["series"] = self.series
        return out

    def exact(self):
        """Exact values: a scalar, or ``{(k, mono): scalar}``."""
        if self.series is None:
            return parse_scalar(self.value)
        return {parse_monomial_key(key, self.names): parse_scalar(v) for key, v in self.series.items()}


@dataclass
class OutputDocument:
    command: list
    surface: str | None = None
    results: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    counterexample: dict | None = None
    notes: list = field(default_factory=list)

    @property
    def all_ok(self) -> bool:
        return all(v["ok"] for v in self.verdicts)

    def add_verdict(self, name: str, ok: bool, detail: str = "", seconds: float | None = None):
        entry = {"name": name, "ok": bool(ok), "detail": detail}
        if seconds is not None:
            entry["seconds"] = round(seconds, 3)
        self.verdicts.append(entry)

    def to_json(self) -> dict:
        out = {"command": self.command}
        if self.surface:
            out["surface"] = self.surface
        out["results"] = [r.to_json() for r in self.results]
        if self.verdicts:
            out["verdicts"] = self.verdicts
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.notes:
            out["notes"] = self.notes
        return out


def _csv_text(doc: OutputDocument) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "variables", "key", "value"])
    for r in doc.results:
        if r.series is None:
            w.writerow([r.label, "", "value", r.value])
        else:
            names = " ".join(r.names)
            if not r.series:
                w.writerow([r.label, names, "", ""])
            for key, v in r.series.items():
                w.writerow([r.label, names, key, v])
    for v in doc.verdicts:
        w.writerow([f"verdict:{v['name']}", "", "ok" if v["ok"] else "FAIL", v["detail"]])
    return buf.getvalue()


def _text(doc: OutputDocument) -> str:
    lines = ["command: " + " ".join(doc.command)]
    if doc.surface:
        lines.append(f"surface: {doc.surface}")
    for r in doc.results:
        if r.series is None:
            lines.append(f"{r.label} = {r.value}")
        else:
            w = r.window or {}
            lines.append(f"{r.label}  [u in [{w.get('u_offset')}, {w.get('u_order')})"
                         + (f", cap {w['cap']}" if "cap" in w else "") + "]")
            if not r.series:
                lines.append("  0")
            for key, v in r.series.items():
                lines.append(f"  {key}: {v}")
    if doc.verdicts:
        width = max(len(v["name"]) for v in doc.verdicts)
        lines.append("verdicts:")
        for v in doc.verdicts:
            mark = "PASS" if v["ok"] else "FAIL"
            extra = f"  {v['detail']}" if v["detail"] else ""
            lines.append(f"  {v['name']:<{width}}  {mark}{extra}")
    if doc.counterexample is not None:
        lines.append("counterexample: " + json.dumps(doc.counterexample, sort_keys=True))
    for n in doc.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


def serialize(doc: OutputDocument, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(doc.to_json(), indent=2) + "\n"
    if fmt == "csv":
        return _csv_text(doc)
    if fmt == "text":
        return _text(doc)
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


def parse_document(text: str, fmt: str = "json") -> dict:
    """Exact values keyed by result label: a scalar or ``{(k, mono): scalar}``."""
    out = {}
    if fmt == "json":
        data = json.loads(text)
        for entry in data["results"]:
            if "series" in entry:
                names = tuple(entry.get("variables", ()))
                out[entry["label"]] = {parse_monomial_key(k, names): parse_scalar(v)
                                       for k, v in entry["series"].items()}
            else:
                out[entry["label"]] = parse_scalar(entry["value"])
        return out
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        for label, names, key, value in rows[1:]:
            if label.startswith("verdict:"):
                continue
            if key == "value":
                out[label] = parse_scalar(value)
            else:
                d = out.setdefault(label, {})
                if key:
                    d[parse_monomial_key(key, tuple(names.split()))] = parse_scalar(value)
        return out
    raise ValueError("only json and csv documents are parsed back")
