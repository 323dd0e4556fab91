"""Buckingham Pi machinery over an exact integer dimension matrix.

Column l of the N x L matrix ``A`` holds the exponents of derived quantity l.
An integer basis of ker A gives the dimensionless monomials Pi_k; positive
dilations of the fundamentals act on derived quantities by
Lambda_l = prod_i lambda_i ** A[i][l] and leave every Pi_k fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .dimension import Dimension, DimensionSystem, render_monomial
from .errors import DimensionMismatchError, DomainError
from .intlinalg import integer_kernel, matvec
from .quantity import Quantity, UnitFrame, q_mul, q_pow


@dataclass(frozen=True)
class DimMatrix:
    system: DimensionSystem
    derived_names: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for row in self.entries:
            for x in row:
                if Fraction(x).denominator != 1:
                    raise DomainError(f"dimension matrix entries must be integers, got {x}")
        names = tuple(self.derived_names)
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "derived_names", names)
        object.__setattr__(self, "entries", rows)
        if len(rows) != self.system.count:
            raise ValueError(f"matrix has {len(rows)} rows, system has {self.system.count} fundamentals")
        if any(len(r) != len(names) for r in rows):
            raise ValueError("every row needs one entry per derived quantity")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate derived names: {names}")

    @classmethod
    def from_dimensions(cls, names: Sequence[str], dims: Sequence[Dimension]) -> DimMatrix:
        if not dims:
            raise ValueError("need at least one derived quantity")
        system = dims[0].system
        for name, d in zip(names, dims):
            if d.system != system:
                raise ValueError("all derived dimensions must share one system")
            if not d.is_integral:
                raise DomainError(f"{name} has non-integer exponents {d}; the Pi engine needs integer dimensions")
        rows = tuple(tuple(int(d.exponents[i]) for d in dims) for i in range(system.count))
        return cls(system, tuple(names), rows)

    @property
    def n_fundamentals(self) -> int:
        return self.system.count

    @property
    def n_derived(self) -> int:
        return len(self.derived_names)

    def column_dim(self, l: int) -> Dimension:
        return Dimension(self.system, tuple(row[l] for row in self.entries))

    def dims(self) -> dict[str, Dimension]:
        return {n: self.column_dim(l) for l, n in enumerate(self.derived_names)}

    def qtuple(self, magnitudes: Sequence[float], frame: UnitFrame | None = None) -> tuple[Quantity, ...]:
        frame = frame or UnitFrame.default(self.system)
        if len(magnitudes) != self.n_derived:
            raise ValueError(f"need {self.n_derived} magnitudes, got {len(magnitudes)}")
        return tuple(Quantity(m, self.column_dim(l), frame) for l, m in enumerate(magnitudes))


@dataclass(frozen=True)
class PiBasis:
    vectors: tuple[tuple[int, ...], ...]
    rank: int
    pivot_columns: tuple[int, ...]
    free_columns: tuple[int, ...]

    @property
    def K(self) -> int:
        return len(self.vectors)

    @property
    def L(self) -> int:
        return self.rank + self.K

    def render(self, names: Sequence[str]) -> list[str]:
        return [
            f"Pi_{k + 1} = " + render_monomial(names, [Fraction(e) for e in p], show_one=True)
            for k, p in enumerate(self.vectors)
        ]


def kernel_basis(A: DimMatrix) -> PiBasis:
    """Canonical integer basis of ker A (one vector per non-pivot column)."""
    vectors, pivots, free = integer_kernel(A.entries, A.n_derived)
    return PiBasis(tuple(vectors), len(pivots), tuple(pivots), tuple(free))


def _check_qtuple(A: DimMatrix, Q: Sequence[Quantity]) -> None:
    if len(Q) != A.n_derived:
        raise ValueError(f"QTuple has {len(Q)} entries, matrix has {A.n_derived} columns")
    for l, q in enumerate(Q):
        expected = A.column_dim(l)
        if q.dim != expected:
            raise DimensionMismatchError(
                f"{A.derived_names[l]} has dimension {q.dim}, matrix column says {expected}"
            )
        if not q.magnitude > 0:
            raise DomainError(f"{A.derived_names[l]} must be positive, got {q.magnitude}")


def pi_values(A: DimMatrix, B: PiBasis, Q: Sequence[Quantity]) -> tuple[float, ...]:
    _check_qtuple(A, Q)
    frame = Q[0].frame
    out = []
    for p in B.vectors:
        prod = Quantity(1.0, A.system.dimensionless(), frame)
        for q, e in zip(Q, p):
            if e:
                prod = q_mul(prod, q_pow(q, e))
        if not prod.dim.is_dimensionless:
            raise DimensionMismatchError(f"Pi monomial {p} is not dimensionless: {prod.dim}")
        out.append(prod.magnitude)
    return tuple(out)


def _monomial(mags: Sequence[float], p: Sequence[int]) -> float:
    prod = 1.0
    for m, e in zip(mags, p):
        if e:
            prod *= m ** e
    return prod


@dataclass(frozen=True)
class Dilation:
    factors: tuple[float, ...]

    def __post_init__(self):
        f = tuple(float(x) for x in self.factors)
        if not all(x > 0 and math.isfinite(x) for x in f):
            raise DomainError(f"dilation factors must be positive: {f}")
        object.__setattr__(self, "factors", f)

    @classmethod
    def from_log(cls, direction: Sequence[int], s: float) -> Dilation:
        """exp(s * x): one point of the one-parameter subgroup along integer direction x."""
        return cls(tuple(math.exp(s * x) for x in direction))


def dilation_action(A: DimMatrix, d: Dilation) -> tuple[float, ...]:
    if len(d.factors) != A.n_fundamentals:
        raise ValueError(f"dilation has {len(d.factors)} factors, system has {A.n_fundamentals}")
    out = []
    for l in range(A.n_derived):
        lam = 1.0
        for i, row in enumerate(A.entries):
            if row[l]:
                lam *= d.factors[i] ** row[l]
        out.append(lam)
    return tuple(out)


def dilate(A: DimMatrix, d: Dilation, Q: Sequence[Quantity]) -> tuple[Quantity, ...]:
    return tuple(q * lam for q, lam in zip(Q, dilation_action(A, d)))


def are_dilation_equivalent(A: DimMatrix, Q: Sequence[Quantity], Q2: Sequence[Quantity],
                            tol: float = 1e-9, basis: PiBasis | None = None) -> bool:
    """True iff log(Q2/Q) lies in im(A^T), i.e. is orthogonal to every kernel vector."""
    _check_qtuple(A, Q)
    _check_qtuple(A, Q2)
    B = basis or kernel_basis(A)
    y = [math.log(b.magnitude / a.magnitude) for a, b in zip(Q, Q2)]
    for p in B.vectors:
        terms = [yl * pl for yl, pl in zip(y, p)]
        if abs(math.fsum(terms)) > tol * max(1.0, math.fsum(abs(t) for t in terms)):
            return False
    return True


Law = Callable[[Sequence[float]], float]


@dataclass
class InvarianceReport:
    samples: int
    dilation_violations: int
    roundtrip_violations: int
    on_law_samples: int
    note: str = ("sampled check: a zero count is evidence of dilational invariance on the "
                 "sampled domain, not a proof")

    @property
    def violation_fraction(self) -> float:
        return self.dilation_violations / self.samples if self.samples else 0.0

    @property
    def ok(self) -> bool:
        return self.dilation_violations == 0 and self.roundtrip_violations == 0


@dataclass
class ReducedLaw:
    """F(Pi_1..Pi_K) := law evaluated at a canonical representative with those Pi values.

    The representative fixes the magnitudes of the pivot columns to 1 and
    solves for the remaining K columns.
    """

    matrix: DimMatrix
    basis: PiBasis
    law: Law
    zero_tol: float = 1e-9
    report: Optional[InvarianceReport] = None
    _solve: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        free = self.basis.free_columns
        P = np.array([[p[j] for j in free] for p in self.basis.vectors], dtype=float).reshape(self.basis.K, len(free))
        if P.shape[0] != P.shape[1]:
            raise ValueError("basis is not a kernel basis of this matrix")
        if self.basis.K:
            self._solve = np.linalg.inv(P)
        else:
            self._solve = np.zeros((0, 0))

    @property
    def section_columns(self) -> tuple[str, ...]:
        return tuple(self.matrix.derived_names[c] for c in self.basis.pivot_columns)

    def representative(self, pis: Sequence[float]) -> tuple[float, ...]:
        if len(pis) != self.basis.K:
            raise ValueError(f"expected {self.basis.K} Pi values, got {len(pis)}")
        if any(not p > 0 for p in pis):
            raise DomainError("Pi values of positive quantities are positive")
        mags = [1.0] * self.matrix.n_derived
        free = self.basis.free_columns
        diag = all(self.basis.vectors[k][free[j]] == 0
                   for k in range(self.basis.K) for j in range(self.basis.K) if j != k)
        if diag:
            for k, c in enumerate(free):
                e = self.basis.vectors[k][c]
                mags[c] = pis[k] if e == 1 else pis[k] ** (1.0 / e)
        else:
            y = self._solve @ np.log(np.asarray(pis, dtype=float))
            for j, c in enumerate(free):
                mags[c] = float(np.exp(y[j]))
        return tuple(mags)

    def __call__(self, *pis: float) -> float:
        return self.law(self.representative(pis))

    def holds(self, pis: Sequence[float]) -> bool:
        return _holds(self.law, self.representative(pis), self.zero_tol)


def _holds(law: Law, mags: Sequence[float], zero_tol: float) -> bool:
    value = law(mags)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    return abs(value) <= zero_tol


def log_uniform(rng: np.random.Generator, lo: float, hi: float, size) -> np.ndarray:
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size))


def reduce_law(A: DimMatrix, B: PiBasis, law: Law, samples: int = 1000, seed: int | None = 0,
               zero_tol: float = 1e-9, sampler: Callable[[np.random.Generator], Sequence[float]] | None = None,
               magnitude_range=(1e-3, 1e3), dilation_range=(1e-2, 1e2)) -> ReducedLaw:
    """Reduce ``law`` (a function of the L magnitudes, zero on the law) to K Pi variables.

    ``law`` must be a pure function; it may return a residual (the law holds
    where its absolute value is at most ``zero_tol``) or a bool. Invariance is
    checked on ``samples`` random tuples, each paired with a random dilation;
    ``sampler`` can supply tuples that lie on the law so the check is not
    vacuous.
    """
    rng = np.random.default_rng(seed)
    reduced = ReducedLaw(A, B, law, zero_tol)
    dil_bad = rt_bad = on_law = 0
    for _ in range(samples):
        if sampler is not None:
            mags = tuple(float(x) for x in sampler(rng))
        else:
            mags = tuple(log_uniform(rng, *magnitude_range, A.n_derived))
        d = Dilation(tuple(log_uniform(rng, *dilation_range, A.n_fundamentals)))
        lam = dilation_action(A, d)
        moved = tuple(m * l for m, l in zip(mags, lam))
        here = _holds(law, mags, zero_tol)
        on_law += here
        if here != _holds(law, moved, zero_tol):
            dil_bad += 1
        pis = tuple(_monomial(mags, p) for p in B.vectors)
        if here != reduced.holds(pis):
            rt_bad += 1
    reduced.report = InvarianceReport(samples, dil_bad, rt_bad, on_law)
    return reduced


def symmetry_subgroup(constraint_rows: Sequence[Sequence[int]], n: int | None = None) -> list[tuple[int, ...]]:
    """Integer basis of log-dilations x with C x = 0.

    Each basis vector x generates the one-parameter subgroup lambda_i = exp(s x_i)
    that leaves every constrained monomial prod_i lambda_i^C[r][i] equal to 1.
    """
    rows = [list(r) for r in constraint_rows]
    if n is None:
        if not rows:
            raise ValueError("number of fundamentals required when there are no constraints")
        n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError(f"constraint rows must have length {n}")
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    basis, _, _ = integer_kernel(rows, n)
    for x in basis:
        assert not any(matvec(rows, x))
    return basis
