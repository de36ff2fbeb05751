"""Chain configuration files and JSON documents for matrices and reports.

Scalars are always serialized as canonical strings (``"1/2-3i"``), never as
floats, and keys are emitted in a fixed order so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from .chain import ChainSpec, build_chain_spec
from .matrix import Matrix
from .scalar import ScalarParseError, format_scalar, parse_scalar

__all__ = [
    "ConfigError",
    "ChainConfig",
    "matrix_document",
    "matrix_from_document",
    "write_json",
    "report_document",
]


class ConfigError(ValueError):
    pass


def _rational(text: str, what: str) -> Fraction:
    try:
        x = parse_scalar(str(text))
    except ScalarParseError as exc:
        raise ConfigError(f"{what}: {exc}") from None
    if not x.is_real():
        raise ConfigError(f"{what} must be rational, got {text!r}")
    return x.re


@dataclass
class ChainConfig:
    series: str
    rank: int
    depth: int = 0
    xi: str = "1"
    etas: List[str] = field(default_factory=list)

    @classmethod
    def from_dict(cls, data: dict) -> "ChainConfig":
        unknown = set(data) - {"series", "rank", "depth", "xi", "etas"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        try:
            return cls(
                series=str(data["series"]),
                rank=int(data["rank"]),
                depth=int(data.get("depth", 0)),
                xi=str(data.get("xi", "1")),
                etas=[str(x) for x in data.get("etas", [])],
            )
        except KeyError as exc:
            raise ConfigError(f"missing config key {exc}") from None
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def load(cls, path) -> "ChainConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        etas = self.etas or ["1"] * (self.depth + 1)
        return {
            "series": self.series,
            "rank": self.rank,
            "depth": self.depth,
            "xi": format_scalar(parse_scalar(self.xi)),
            "etas": [format_scalar(parse_scalar(x)) for x in etas],
        }

    def to_spec(self) -> ChainSpec:
        xi = _rational(self.xi, "xi")
        etas = [_rational(x, "eta") for x in (self.etas or ["1"] * (self.depth + 1))]
        return build_chain_spec(self.series, self.rank, self.depth, xi, etas)


def matrix_document(m: Matrix, equation: str, config: Optional[dict] = None, u=None) -> dict:
    entries = [[format_scalar(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]
    meta = {"equation": equation, "config": config}
    if u is not None:
        meta["u"] = format_scalar(parse_scalar(str(u)))
    return {
        "rows": m.rows,
        "cols": m.cols,
        "legs": list(m.legs) if m.legs else [m.rows],
        "entries": entries,
        "meta": meta,
    }


def matrix_from_document(doc: dict) -> Matrix:
    entries = [[parse_scalar(x) for x in row] for row in doc["entries"]]
    m = Matrix(entries, legs=doc.get("legs"))
    if m.shape != (doc["rows"], doc["cols"]):
        raise ConfigError("document shape does not match its entries")
    return m


def report_document(config: dict, verdicts: Sequence) -> dict:
    return {
        "config": config,
        "passed": all(v.passed for v in verdicts),
        "verdicts": [v.to_dict() for v in verdicts],
    }


def write_json(path, doc: dict) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=1) + "\n")
