"""Theory files: fundamentals, optional unit names, derived quantities.

    {"fundamentals": ["L", "T"], "units": ["m", "s"],
     "derived": [{"name": "ell", "exp": [1, 0]}, {"name": "g", "exp": [1, -2]}]}

Law files add an equation over the derived names and point at a theory,
either inline or by a path relative to the law file:

    {"theory": "pendulum.json", "law": "omega = sqrt(g / ell)"}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Union

from .dimension import DimensionSystem
from .errors import DimcalcError
from .pi import DimMatrix
from .quantity import UnitFrame


class TheoryFileError(DimcalcError, ValueError):
    pass


@dataclass(frozen=True)
class Theory:
    matrix: DimMatrix
    frame: UnitFrame

    @property
    def system(self) -> DimensionSystem:
        return self.matrix.system

    def to_dict(self) -> dict[str, Any]:
        return {
            "fundamentals": list(self.system.fundamentals),
            "units": list(self.frame.unit_names),
            "derived": [
                {"name": n, "exp": [row[l] for row in self.matrix.entries]}
                for l, n in enumerate(self.matrix.derived_names)
            ],
        }


@dataclass(frozen=True)
class LawFile:
    theory: Theory
    equation: str


def theory_from_dict(data: dict[str, Any]) -> Theory:
    try:
        system = DimensionSystem(tuple(data["fundamentals"]))
        units = data.get("units")
        frame = UnitFrame(system, tuple(units)) if units else UnitFrame.default(system)
        names, columns = [], []
        for entry in data.get("derived", []):
            names.append(entry["name"])
            exp = list(entry["exp"])
            if len(exp) != system.count:
                raise TheoryFileError(f"derived {entry['name']!r}: {len(exp)} exponents for {system.count} fundamentals")
            if any(isinstance(e, bool) or not isinstance(e, int) for e in exp):
                raise TheoryFileError(f"derived {entry['name']!r}: exponents must be integers")
            columns.append(exp)
        if not names:
            raise TheoryFileError("theory declares no derived quantities")
        rows = tuple(tuple(col[i] for col in columns) for i in range(system.count))
        return Theory(DimMatrix(system, tuple(names), rows), frame)
    except TheoryFileError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise TheoryFileError(f"malformed theory: {exc}") from exc


def load_json(path: Union[str, Path]) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise TheoryFileError(f"{path}: invalid JSON: {exc}") from exc


def load_theory(path: Union[str, Path]) -> Theory:
    return theory_from_dict(load_json(path))


def load_law(path: Union[str, Path]) -> LawFile:
    data = load_json(path)
    if not isinstance(data, dict) or "law" not in data or "theory" not in data:
        raise TheoryFileError(f"{path}: law file needs 'theory' and 'law' keys")
    theory = data["theory"]
    if isinstance(theory, str):
        theory = load_theory(Path(path).parent / theory)
    else:
        theory = theory_from_dict(theory)
    return LawFile(theory, data["law"])
