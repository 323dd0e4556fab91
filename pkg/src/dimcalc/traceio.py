"""Trace files: a CSV of numerals plus a JSON metadata sidecar.

``orbit.csv`` has columns ``t, x_1, y_1, z_1, vx_1, vy_1, vz_1, x_2, ...`` in
the frame's units; ``orbit.meta.json`` records the frame, masses, Gamma,
tolerances, termination reason and the transformations applied so far.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Union

import numpy as np

from .dimension import LTM
from .errors import DimcalcError
from .gravsim import GAMMA_DIM, MASS, BodyState, GravSystem, Termination, Trajectory
from .quantity import Quantity, UnitFrame

PathLike = Union[str, Path]


class TraceFormatError(DimcalcError, ValueError):
    pass


def meta_path(csv_path: PathLike) -> Path:
    p = Path(csv_path)
    return p.with_name(p.stem + ".meta.json")


def header(n_bodies: int) -> list[str]:
    cols = ["t"]
    for i in range(1, n_bodies + 1):
        cols += [f"x_{i}", f"y_{i}", f"z_{i}", f"vx_{i}", f"vy_{i}", f"vz_{i}"]
    return cols


def metadata(traj: Trajectory) -> dict[str, Any]:
    frame = traj.frame
    return {
        "fundamentals": list(frame.system.fundamentals),
        "units": list(frame.unit_names),
        "unit_scales": list(frame.unit_scales),
        "masses": [m.magnitude for m in traj.system.masses],
        "gamma": traj.system.gamma.magnitude,
        "tol": traj.tol,
        "min_distance": traj.min_distance,
        "termination": traj.termination.value,
        "history": list(traj.history),
        "constraint_satisfied": traj.constraint_satisfied,
    }


def write_trace(traj: Trajectory, csv_path: PathLike) -> Path:
    csv_path = Path(csv_path)
    n, N = len(traj), traj.system.n
    table = np.empty((n, 1 + 6 * N))
    table[:, 0] = traj.times
    for i in range(N):
        table[:, 1 + 6 * i: 4 + 6 * i] = traj.positions[:, i]
        table[:, 4 + 6 * i: 7 + 6 * i] = traj.velocities[:, i]
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header(N))
        for row in table:
            w.writerow(["%.17g" % x for x in row])
    with open(meta_path(csv_path), "w", encoding="utf-8") as fh:
        json.dump(metadata(traj), fh, indent=2)
        fh.write("\n")
    return csv_path


def system_from_meta(meta: dict[str, Any]) -> GravSystem:
    if tuple(meta.get("fundamentals", LTM.fundamentals)) != LTM.fundamentals:
        raise TraceFormatError(f"trace fundamentals must be L, T, M, got {meta['fundamentals']}")
    frame = UnitFrame(LTM, tuple(meta["units"]), tuple(meta.get("unit_scales", ())))
    return GravSystem(frame, tuple(Quantity(m, MASS, frame) for m in meta["masses"]),
                      Quantity(meta["gamma"], GAMMA_DIM, frame))


def read_trace(csv_path: PathLike) -> Trajectory:
    csv_path = Path(csv_path)
    try:
        with open(meta_path(csv_path), encoding="utf-8") as fh:
            meta = json.load(fh)
        system = system_from_meta(meta)
        with open(csv_path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise TraceFormatError(f"cannot read trace {csv_path}: {exc}") from exc
    N = system.n
    if not rows or rows[0] != header(N):
        raise TraceFormatError(f"{csv_path}: header does not match {N} bodies")
    try:
        table = np.array([[float(x) for x in r] for r in rows[1:]], dtype=float).reshape(-1, 1 + 6 * N)
    except ValueError as exc:
        raise TraceFormatError(f"{csv_path}: bad numeral: {exc}") from exc
    body = table[:, 1:].reshape(-1, N, 6)
    return Trajectory(
        system,
        table[:, 0],
        body[:, :, :3],
        body[:, :, 3:],
        Termination(meta.get("termination", Termination.REACHED_END.value)),
        float(meta.get("tol", 0.0)),
        float(meta.get("min_distance", 0.0)),
        tuple(meta.get("history", ())),
        bool(meta.get("constraint_satisfied", True)),
    )


class ConfigError(DimcalcError, ValueError):
    pass


def load_sim_config(path: PathLike) -> tuple[GravSystem, list[BodyState], dict[str, Any]]:
    """Read a simulation config.

    ``{"units": ["m","s","kg"], "gamma": "6.6743e-11 m^3 s^-2 kg^-1",
    "bodies": [{"mass": "5e10 kg", "position": [..], "velocity": [..]}, ...],
    "t_span": [0, 2.4], "tol": 1e-10, "samples": 10001}``

    Masses and Gamma are unit-annotated strings and are dimension checked.
    Returns (system, initial states, integration options).
    """
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
        frame = UnitFrame(LTM, tuple(cfg.get("units", ("m", "s", "kg"))))
        masses = tuple(frame.parse_quantity(b["mass"]) for b in cfg["bodies"])
        gamma = frame.parse_quantity(cfg["gamma"])
        system = GravSystem(frame, masses, gamma)
        init = [BodyState.of(b["position"], b["velocity"], frame) for b in cfg["bodies"]]
        t0, t1 = (float(x) for x in cfg["t_span"])
        opts = {"t0": t0, "t1": t1, "tol": float(cfg.get("tol", 1e-10)),
                "samples": int(cfg.get("samples", 2001))}
        if "min_distance" in cfg:
            opts["min_distance"] = float(cfg["min_distance"])
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ConfigError(f"invalid simulation config {path}: {exc}") from exc
    return system, init, opts
