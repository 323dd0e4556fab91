"""Newtonian N-body gravitation with dimension-checked inputs.

Each body obeys  d^2 x_i/dt^2 = Gamma * sum_{j != i} m_j (x_j - x_i) / |x_j - x_i|^3.
Integration runs in scaled units (length Lc = initial size, time
Tc = sqrt(Lc^3 / (Gamma M_total))) so the tolerances are meaningful for any
frame; results are stored as numerals of the caller's frame.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .dimension import LTM, Dimension
from .errors import DimensionMismatchError, DomainError, IndeterminateError, SingularityError
from .quantity import Quantity, UnitFrame, q_convert, q_mul, q_pow, unit_factor
from .vec3q import Vec3Q, norm, scale_q, vsum

LENGTH = LTM.dim(L=1)
VELOCITY = LTM.dim(L=1, T=-1)
ACCELERATION = LTM.dim(L=1, T=-2)
MASS = LTM.dim(M=1)
TIME = LTM.dim(T=1)
GAMMA_DIM = LTM.dim(L=3, T=-2, M=-1)
FORCE = LTM.dim(L=1, T=-2, M=1)

GAMMA_SI = 6.67430e-11

# relative residual (max |a_num - a_model| / max |a_model|) accepted as "satisfies the equations of motion"
RESIDUAL_THRESHOLD = 1e-5


class Termination(enum.Enum):
    REACHED_END = "ReachedEnd"
    COLLISION_AT_START = "CollisionAtStart"
    COLLISION_AT_END = "CollisionAtEnd"
    STEP_UNDERFLOW = "StepUnderflow"


def _require_ltm(frame: UnitFrame) -> None:
    if frame.system.fundamentals != LTM.fundamentals:
        raise DimensionMismatchError(f"gravitation needs fundamentals (L, T, M), frame has {frame.system.fundamentals}")


@dataclass(frozen=True)
class GravSystem:
    frame: UnitFrame
    masses: tuple[Quantity, ...]
    gamma: Quantity

    def __post_init__(self):
        _require_ltm(self.frame)
        object.__setattr__(self, "masses", tuple(self.masses))
        if not self.masses:
            raise ValueError("need at least one body")
        for i, m in enumerate(self.masses):
            if m.dim != MASS:
                raise DimensionMismatchError(f"mass {i + 1} has dimension {m.dim}, expected M")
            if m.frame != self.frame:
                raise DimensionMismatchError(f"mass {i + 1} is expressed in a different frame")
            if not m.magnitude > 0:
                raise DomainError(f"mass {i + 1} must be positive, got {m.magnitude}")
        if self.gamma.dim != GAMMA_DIM:
            raise DimensionMismatchError(f"Gamma has dimension {self.gamma.dim}, expected {GAMMA_DIM}")
        if self.gamma.frame != self.frame:
            raise DimensionMismatchError("Gamma is expressed in a different frame")
        if not self.gamma.magnitude > 0:
            raise DomainError(f"Gamma must be positive, got {self.gamma.magnitude}")

    @classmethod
    def from_numerals(cls, masses: Sequence[float], gamma: float = GAMMA_SI,
                      frame: Optional[UnitFrame] = None) -> GravSystem:
        frame = frame or UnitFrame.default(LTM)
        _require_ltm(frame)
        return cls(frame, tuple(Quantity(m, MASS, frame) for m in masses), Quantity(gamma, GAMMA_DIM, frame))

    @property
    def n(self) -> int:
        return len(self.masses)

    @property
    def mass_array(self) -> np.ndarray:
        return np.array([m.magnitude for m in self.masses])


@dataclass(frozen=True)
class BodyState:
    position: Vec3Q
    velocity: Vec3Q

    def __post_init__(self):
        if self.position.dim != LENGTH:
            raise DimensionMismatchError(f"position has dimension {self.position.dim}, expected L")
        if self.velocity.dim != VELOCITY:
            raise DimensionMismatchError(f"velocity has dimension {self.velocity.dim}, expected L T^-1")

    @classmethod
    def of(cls, position: Sequence[float], velocity: Sequence[float], frame: UnitFrame) -> BodyState:
        return cls(Vec3Q(tuple(position), LENGTH, frame), Vec3Q(tuple(velocity), VELOCITY, frame))


@dataclass(frozen=True)
class DilationLTM:
    lam: float = 1.0
    tau: float = 1.0
    mu: float = 1.0

    def __post_init__(self):
        for name in ("lam", "tau", "mu"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and v > 0 and math.isfinite(v)):
                raise DomainError(f"dilation factor {name} must be positive and finite, got {v!r}")
            object.__setattr__(self, name, float(v))

    @property
    def factors(self) -> tuple[float, float, float]:
        return (self.lam, self.tau, self.mu)

    @property
    def constraint_value(self) -> float:
        """lambda^3 tau^-2 mu^-1, equal to 1 exactly for similarity transformations."""
        return self.lam ** 3 / (self.tau ** 2 * self.mu)

    @property
    def constraint_satisfied(self) -> bool:
        return abs(self.constraint_value - 1.0) < 1e-12


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution: numerals in ``system.frame``; positions/velocities have shape (n, N, 3)."""

    system: GravSystem
    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    termination: Termination = Termination.REACHED_END
    tol: float = 1e-10
    min_distance: float = 0.0
    history: tuple = ()
    constraint_satisfied: bool = True

    def __post_init__(self):
        t = np.array(self.times, dtype=float)
        x = np.array(self.positions, dtype=float)
        v = np.array(self.velocities, dtype=float)
        n, N = len(t), self.system.n
        if x.shape != (n, N, 3) or v.shape != (n, N, 3):
            raise ValueError(f"expected state arrays of shape {(n, N, 3)}, got {x.shape} and {v.shape}")
        if n > 1 and not np.all(np.diff(t) > 0):
            raise ValueError("times must be strictly increasing")
        if N > 1 and n and np.min(pairwise_distances(x)) <= 0:
            raise SingularityError("two bodies share a position at a recorded time")
        for a in (t, x, v):
            a.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "positions", x)
        object.__setattr__(self, "velocities", v)
        object.__setattr__(self, "history", tuple(self.history))

    @property
    def frame(self) -> UnitFrame:
        return self.system.frame

    def __len__(self) -> int:
        return len(self.times)

    def time(self, k: int) -> Quantity:
        return Quantity(self.times[k], TIME, self.frame)

    def states(self, k: int) -> tuple[BodyState, ...]:
        return tuple(BodyState.of(self.positions[k, i], self.velocities[k, i], self.frame)
                     for i in range(self.system.n))


def pairwise_distances(x: np.ndarray) -> np.ndarray:
    """Distances |x_j - x_i| for i < j; ``x`` has shape (..., N, 3)."""
    i, j = np.triu_indices(x.shape[-2], k=1)
    return np.linalg.norm(x[..., j, :] - x[..., i, :], axis=-1)


def _check_distinct(positions: Sequence[Vec3Q]) -> None:
    for i in range(len(positions)):
        for j in range(i + 1, len(positions)):
            if positions[i].components == positions[j].components:
                raise SingularityError(f"bodies {i + 1} and {j + 1} coincide at {positions[i]}")


def pair_forces(system: GravSystem, positions: Sequence[Vec3Q]) -> dict[tuple[int, int], Vec3Q]:
    """Force on body i from body j, keyed (i, j); f[(j, i)] is built as -f[(i, j)]."""
    _check_distinct(positions)
    out = {}
    for i in range(system.n):
        for j in range(i + 1, system.n):
            d = positions[j] - positions[i]
            r = norm(d)
            coeff = q_mul(q_mul(system.gamma, q_mul(system.masses[i], system.masses[j])), q_pow(r, -3))
            f = scale_q(d, coeff)
            assert f.dim == FORCE, f.dim
            out[(i, j)] = f
            out[(j, i)] = -f
    return out


def accel(system: GravSystem, positions: Sequence[Vec3Q]) -> list[Vec3Q]:
    """Accelerations Gamma sum_j m_j (x_j - x_i)/|x_j - x_i|^3, one Vec3Q of dimension L T^-2 per body."""
    if len(positions) != system.n:
        raise ValueError(f"need {system.n} positions, got {len(positions)}")
    for p in positions:
        if p.dim != LENGTH or p.frame != system.frame:
            raise DimensionMismatchError(f"positions must have dimension L in the system frame, got {p.dim}")
    _check_distinct(positions)
    out = []
    for i in range(system.n):
        terms = []
        for j in range(system.n):
            if j == i:
                continue
            d = positions[j] - positions[i]
            coeff = q_mul(q_mul(system.gamma, system.masses[j]), q_pow(norm(d), -3))
            terms.append(scale_q(d, coeff))
        a = vsum(terms, ACCELERATION, system.frame)
        assert a.dim == ACCELERATION
        out.append(a)
    return out


def accel_array(gm: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Vectorized accelerations for positions of shape (..., N, 3) and gm = Gamma * masses."""
    d = x[..., None, :, :] - x[..., :, None, :]  # d[..., i, j] = x_j - x_i
    r = np.linalg.norm(d, axis=-1)
    n = x.shape[-2]
    r[..., np.arange(n), np.arange(n)] = np.inf
    return np.einsum("...ijk,...ij,j->...ik", d, r ** -3, gm)


def integrate(system: GravSystem, init: Sequence[BodyState], t0: float | Quantity, t1: float | Quantity,
              tol: float = 1e-10, min_distance: Optional[float] = None, samples: int = 2001,
              max_step: Optional[float] = None, max_restarts: int = 8) -> Trajectory:
    """Integrate on [t0, t1] (numerals in the frame's time unit, or Quantities of dimension T).

    Stops with COLLISION_AT_END when a pair comes closer than ``min_distance``
    (default 1e-9 of the initial minimum separation). The result is sampled
    on a uniform grid of ``samples`` points.
    """
    t0, t1 = (_time_numeral(system, t) for t in (t0, t1))
    if not t0 < t1:
        raise ValueError(f"need t0 < t1, got {t0} >= {t1}")
    if len(init) != system.n:
        raise ValueError(f"need {system.n} initial states, got {len(init)}")
    if samples < 2:
        raise ValueError("need at least 2 samples")
    for s in init:
        if s.position.frame != system.frame or s.velocity.frame != system.frame:
            raise DimensionMismatchError("initial states must be expressed in the system frame")
    _check_distinct([s.position for s in init])
    x0 = np.array([s.position.components for s in init])
    v0 = np.array([s.velocity.components for s in init])
    sep0 = float(np.min(pairwise_distances(x0))) if system.n > 1 else 0.0
    if min_distance is None:
        min_distance = 1e-9 * sep0
    if system.n > 1 and sep0 <= min_distance:
        raise SingularityError(f"initial separation {sep0} is already below min_distance {min_distance}")

    m = system.mass_array
    G = system.gamma.magnitude
    Lc = sep0 if sep0 > 0 else max(float(np.max(np.abs(x0))), 1.0)
    Tc = math.sqrt(Lc ** 3 / (G * m.sum()))
    gm = m / m.sum()  # Gamma * m / (Lc^3 / Tc^2) in scaled units
    N = system.n
    dmin = min_distance / Lc

    def rhs(_, y):
        x = y[: 3 * N].reshape(N, 3)
        return np.concatenate([y[3 * N:], accel_array(gm, x).ravel()])

    def collision(_, y):
        return float(np.min(pairwise_distances(y[: 3 * N].reshape(N, 3)))) - dmin

    collision.terminal = True
    collision.direction = -1

    s1 = (t1 - t0) / Tc
    grid = np.linspace(0.0, s1, samples)
    y = np.concatenate([(x0 / Lc).ravel(), (v0 * Tc / Lc).ravel()])
    max_step = np.inf if max_step is None else max_step / Tc
    # The solver refuses steps below ~10 eps |t|; near a collision that floor is set by the
    # distance from the time origin, so on underflow we restart from the last good state
    # with the local clock reset to zero.
    times, states, start, termination = [], [], 0.0, Termination.REACHED_END
    for _ in range(max_restarts + 1):
        todo = grid[grid >= start] if not times else grid[grid > start]
        opts = dict(method="RK45", rtol=tol, atol=tol, events=collision if N > 1 else None, max_step=max_step)
        sol = solve_ivp(rhs, (0.0, s1 - start), y, t_eval=np.minimum(todo - start, s1 - start), **opts)
        times.append(todo[: len(sol.t)])
        states.append(np.asarray(sol.y, dtype=float).reshape(6 * N, -1).T)
        if sol.status == 1:
            termination = Termination.COLLISION_AT_END
            break
        if sol.status == 0:
            break
        # rare path: redo the segment keeping every step to recover the last accepted state
        last = solve_ivp(rhs, (0.0, s1 - start), y, **opts)
        termination = Termination.STEP_UNDERFLOW
        if last.status != -1 or not last.t[-1] > 0:
            break
        y = last.y[:, -1]
        start += last.t[-1]
    y = np.concatenate(states)
    n = y.shape[0]
    return Trajectory(
        system,
        t0 + np.concatenate(times) * Tc,
        y[:, : 3 * N].reshape(n, N, 3) * Lc,
        y[:, 3 * N:].reshape(n, N, 3) * (Lc / Tc),
        termination,
        tol,
        float(min_distance),
    )


def _time_numeral(system: GravSystem, t: float | Quantity) -> float:
    if isinstance(t, Quantity):
        if t.dim != TIME or t.frame != system.frame:
            raise DimensionMismatchError(f"time bound must have dimension T in the system frame, got {t.dim}")
        return t.magnitude
    return float(t)


def numerical_acceleration(traj: Trajectory, scheme: str = "velocity") -> np.ndarray:
    """Central-difference accelerations at interior samples, shape (n-2, N, 3).

    ``velocity`` differences the recorded velocities once; ``position`` takes
    the second difference of the recorded positions (noisier: it amplifies
    the interpolation error of the dense output by 1/h^2).
    """
    if len(traj) < 3:
        raise ValueError(f"need at least 3 samples for central differences, got {len(traj)}")
    t = traj.times
    h_minus = (t[1:-1] - t[:-2])[:, None, None]
    h_plus = (t[2:] - t[1:-1])[:, None, None]
    if scheme == "velocity":
        v = traj.velocities
        return (v[2:] - v[:-2]) / (h_plus + h_minus)
    if scheme == "position":
        x = traj.positions
        return 2 * ((x[2:] - x[1:-1]) / h_plus - (x[1:-1] - x[:-2]) / h_minus) / (h_plus + h_minus)
    raise ValueError(f"unknown differencing scheme {scheme!r}")


def model_acceleration(traj: Trajectory, interior: bool = True) -> np.ndarray:
    gm = traj.system.gamma.magnitude * traj.system.mass_array
    x = traj.positions[1:-1] if interior else traj.positions
    return accel_array(gm, x)


@dataclass(frozen=True)
class ResidualSummary:
    max_residual: Quantity
    max_accel: float
    relative: float
    accel_factor: float  # max |model acceleration| / max |numerical acceleration|
    threshold: float

    @property
    def passes(self) -> bool:
        return self.relative <= self.threshold


def residual(traj: Trajectory, scheme: str = "velocity") -> Quantity:
    """max over interior samples and bodies of |numerical acceleration - model acceleration|."""
    return residual_summary(traj, scheme=scheme).max_residual


def residual_summary(traj: Trajectory, threshold: float = RESIDUAL_THRESHOLD,
                     scheme: str = "velocity") -> ResidualSummary:
    a_num = numerical_acceleration(traj, scheme)
    a_mod = model_acceleration(traj)
    res = float(np.max(np.linalg.norm(a_num - a_mod, axis=-1)))
    amax = float(np.max(np.linalg.norm(a_mod, axis=-1)))
    nmax = float(np.max(np.linalg.norm(a_num, axis=-1)))
    if amax == 0:
        rel = 0.0 if res == 0 else math.inf
    else:
        rel = res / amax
    factor = amax / nmax if nmax > 0 else (1.0 if amax == 0 else math.inf)
    return ResidualSummary(Quantity(res, ACCELERATION, traj.frame), amax, rel, factor, threshold)


def residual_check(traj: Trajectory, threshold: float = RESIDUAL_THRESHOLD) -> bool:
    return residual_summary(traj, threshold).passes


@dataclass(frozen=True)
class GammaFit:
    gamma: Quantity
    rms_residual: float  # of the fit l_i = Gamma r_i, in acceleration numerals
    relative_rms: float
    points: int
    r: np.ndarray = field(repr=False)
    ell: np.ndarray = field(repr=False)


def measure_gamma(traj: Trajectory) -> GammaFit:
    """Least-squares slope through the origin of l_i(t) = |numerical a_i| against r_i(t).

    r_i = |sum_j m_j (x_j - x_i)/|x_j - x_i|^3| is the force sum with Gamma
    stripped (dimension M L^-2), so the slope carries Gamma's dimension.
    """
    ell = np.linalg.norm(numerical_acceleration(traj), axis=-1).ravel()
    r = np.linalg.norm(accel_array(traj.system.mass_array, traj.positions[1:-1]), axis=-1).ravel()
    rr = float(np.dot(r, r))
    if rr == 0:
        raise IndeterminateError("no force anywhere on the trajectory (all r_i = 0); Gamma is undetermined")
    slope = float(np.dot(r, ell)) / rr
    fit = ell - slope * r
    rms = float(np.sqrt(np.mean(fit ** 2)))
    scale = float(np.sqrt(np.mean(ell ** 2)))
    return GammaFit(Quantity(slope, GAMMA_DIM, traj.frame), rms, rms / scale if scale else 0.0, len(r), r, ell)


def center_of_mass(system: GravSystem, x: np.ndarray) -> np.ndarray:
    m = system.mass_array
    return np.einsum("i,...ik->...k", m, x) / m.sum()


def similarity_transform(traj: Trajectory, d: DilationLTM, center: Optional[Sequence[float]] = None,
                         t_fixed: Optional[float] = None) -> Trajectory:
    """Active dilation: lengths x lam about ``center``, time differences x tau about ``t_fixed``, masses x mu.

    Gamma is left as is, so the result solves the equations of motion only
    when lam^3 tau^-2 mu^-1 = 1; ``constraint_satisfied`` records that.
    Defaults: the initial centre of mass and the initial time.
    """
    c = center_of_mass(traj.system, traj.positions[0]) if center is None else np.asarray(center, dtype=float)
    t_fixed = traj.times[0] if t_fixed is None else float(t_fixed)
    sys2 = GravSystem(traj.frame, tuple(m * d.mu for m in traj.system.masses), traj.system.gamma)
    return Trajectory(
        sys2,
        t_fixed + d.tau * (traj.times - t_fixed),
        c + d.lam * (traj.positions - c),
        traj.velocities * (d.lam / d.tau),
        traj.termination,
        traj.tol,
        traj.min_distance * d.lam,
        traj.history + ({"op": "similarity", "lambda": d.lam, "tau": d.tau, "mu": d.mu},),
        traj.constraint_satisfied and d.constraint_satisfied,
    )


_REFLECTED = {
    Termination.COLLISION_AT_END: Termination.COLLISION_AT_START,
    Termination.COLLISION_AT_START: Termination.COLLISION_AT_END,
}


def time_reflect(traj: Trajectory) -> Trajectory:
    """t -> t0 + t1 - t with sample order reversed and velocities negated."""
    t = traj.times
    return Trajectory(
        traj.system,
        (t[0] + t[-1]) - t[::-1],
        traj.positions[::-1].copy(),
        -traj.velocities[::-1],
        _REFLECTED.get(traj.termination, traj.termination),
        traj.tol,
        traj.min_distance,
        traj.history + ({"op": "reflect"},),
        traj.constraint_satisfied,
    )


class Mode(enum.Enum):
    LEIBNIZ = "leibniz"
    ACTIVE = "active"
    PASSIVE = "passive"


@dataclass(frozen=True)
class TraceReport:
    """Numerals of a trajectory together with the frame they refer to."""

    mode: Mode
    dilation: DilationLTM
    trajectory: Trajectory

    @property
    def frame(self) -> UnitFrame:
        return self.trajectory.frame

    @property
    def mass_numerals(self) -> tuple[float, ...]:
        return tuple(m.magnitude for m in self.trajectory.system.masses)

    @property
    def gamma_numeral(self) -> float:
        return self.trajectory.system.gamma.magnitude

    @property
    def is_solution_claim(self) -> Optional[bool]:
        """Whether the dilation is a symmetry; None in the Leibniz reading, where it is an isomorphism."""
        return None if self.mode is Mode.LEIBNIZ else self.dilation.constraint_satisfied


def transform_report(traj: Trajectory, d: DilationLTM, mode: Mode | str) -> TraceReport:
    """Apply ``d`` under one of three readings.

    leibniz: quantities and units are dilated together, so every numeral is
    unchanged and only the frame's unit scales move. active: units fixed,
    quantities dilated (see :func:`similarity_transform`). passive: quantities
    fixed, each unit divided by its factor, so numerals grow contravariantly.
    """
    mode = Mode(mode)
    if mode is Mode.ACTIVE:
        return TraceReport(mode, d, similarity_transform(traj, d))
    if mode is Mode.LEIBNIZ:
        frame = traj.frame.rescaled(d.factors)
        s = traj.system
        sys2 = GravSystem(frame, tuple(Quantity(m.magnitude, MASS, frame) for m in s.masses),
                          Quantity(s.gamma.magnitude, GAMMA_DIM, frame))
        out = Trajectory(sys2, traj.times.copy(), traj.positions.copy(), traj.velocities.copy(),
                         traj.termination, traj.tol, traj.min_distance,
                         traj.history + ({"op": "leibniz", "lambda": d.lam, "tau": d.tau, "mu": d.mu},),
                         traj.constraint_satisfied)
        return TraceReport(mode, d, out)
    scale = tuple(1.0 / f for f in d.factors)
    frame = traj.frame.rescaled(scale)

    def numeral_factor(dim: Dimension) -> float:
        return 1.0 / unit_factor(dim, scale)

    sys2 = GravSystem(frame, tuple(q_convert(m, traj.frame, frame) for m in traj.system.masses),
                      q_convert(traj.system.gamma, traj.frame, frame))
    out = Trajectory(sys2, traj.times * numeral_factor(TIME), traj.positions * numeral_factor(LENGTH),
                     traj.velocities * numeral_factor(VELOCITY), traj.termination, traj.tol,
                     traj.min_distance * numeral_factor(LENGTH),
                     traj.history + ({"op": "passive", "lambda": d.lam, "tau": d.tau, "mu": d.mu},),
                     traj.constraint_satisfied)
    return TraceReport(mode, d, out)


def circular_two_body(m1: float, m2: float, separation: float, gamma: float = GAMMA_SI,
                      frame: Optional[UnitFrame] = None) -> tuple[GravSystem, list[BodyState], float]:
    """Circular orbit in the centre-of-mass frame; returns (system, initial states, period)."""
    system = GravSystem.from_numerals((m1, m2), gamma, frame)
    M = m1 + m2
    omega = math.sqrt(gamma * M / separation ** 3)
    r1, r2 = separation * m2 / M, separation * m1 / M
    init = [BodyState.of((-r1, 0.0, 0.0), (0.0, -omega * r1, 0.0), system.frame),
            BodyState.of((r2, 0.0, 0.0), (0.0, omega * r2, 0.0), system.frame)]
    return system, init, 2 * math.pi / omega


def orbital_period(traj: Trajectory, i: int = 0, j: int = 1) -> float:
    """Time for the relative position of bodies i, j to sweep 2 pi, by linear interpolation of the unwrapped angle."""
    rel = traj.positions[:, j, :2] - traj.positions[:, i, :2]
    angle = np.unwrap(np.arctan2(rel[:, 1], rel[:, 0]))
    swept = np.abs(angle - angle[0])
    k = int(np.searchsorted(swept, 2 * math.pi))
    if k == 0 or k >= len(swept):
        raise ValueError("trajectory does not cover a full revolution")
    f = (2 * math.pi - swept[k - 1]) / (swept[k] - swept[k - 1])
    return float(traj.times[k - 1] + f * (traj.times[k] - traj.times[k - 1]) - traj.times[0])


def total_momentum(traj: Trajectory) -> np.ndarray:
    return np.einsum("i,nik->nk", traj.system.mass_array, traj.velocities)


def total_energy(traj: Trajectory) -> np.ndarray:
    m = traj.system.mass_array
    kinetic = 0.5 * np.einsum("i,ni->n", m, np.sum(traj.velocities ** 2, axis=-1))
    i, j = np.triu_indices(traj.system.n, k=1)
    potential = -traj.system.gamma.magnitude * np.sum(m[i] * m[j] / pairwise_distances(traj.positions), axis=-1)
    return kinetic + potential
