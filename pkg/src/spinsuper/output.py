"""CSV / JSONL emission with a fixed float format and a metadata sidecar."""

from __future__ import annotations

import csv
import io
import json
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__


def fmt_value(x) -> str:
    if isinstance(x, Enum):
        return str(x.value)
    if isinstance(x, bool) or x is None:
        return "" if x is None else str(x).lower()
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _plain(x):
    if isinstance(x, Enum):
        return x.value
    return x


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_value(v) for v in row])
    return buf.getvalue()


def render_jsonl(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = [json.dumps({k: _plain(v) for k, v in zip(header, row)}) for row in rows]
    return "".join(line + "\n" for line in lines)


def render(header: Sequence[str], rows: Iterable[Sequence], fmt: str) -> str:
    if fmt == "csv":
        return render_csv(header, rows)
    if fmt == "jsonl":
        return render_jsonl(header, rows)
    raise ValueError(f"unknown output format {fmt!r}")


def metadata(command: str, config: dict, rng: str | None = None) -> dict:
    return {
        "tool": "spinsuper",
        "version": __version__,
        "command": command,
        "config": config,
        "rng": rng,
    }


def write_output(text: str, path: str | Path | None, meta: dict | None = None) -> None:
    """Write ``text`` to ``path`` (stdout when None) plus a ``.meta.json`` sidecar."""
    if path is None or str(path) == "-":
        import sys

        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    if meta is not None:
        sidecar = path.with_name(path.name + ".meta.json")
        sidecar.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
