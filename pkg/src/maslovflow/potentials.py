"""Matrix potentials for the Schrodinger applications.

Interval potentials are symmetric n x n matrix functions on [0, 1];
line potentials additionally carry asymptotic limits V(-inf), V(+inf)
and are expected to decay to them fast enough that the weighted tail
integral of (1 + |x|) |V(x) - V(+-)| is negligible beyond the truncation
half-width.

Evaluation always returns a symmetric matrix; tabulated input with an
asymmetric part above 1e-10 is symmetrized with a warning.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DimensionMismatch, InvalidPotential

ASYMMETRY_TOL = 1e-10


def _symmetric(M, context):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"{context}: expected a square matrix, got {M.shape}")
    defect = float(np.max(np.abs(M - M.T))) if M.size else 0.0
    if defect > ASYMMETRY_TOL * max(1.0, float(np.max(np.abs(M)))):
        warnings.warn(
            f"{context}: asymmetry {defect:.3e} removed by symmetrization",
            UserWarning,
            stacklevel=3,
        )
    return 0.5 * (M + M.T)


class MatrixPotential:
    """Base class: callable x -> symmetric (n, n) array."""

    n: int

    def __call__(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    def sup_norm(self, a, b, samples=201) -> float:
        """Sampled max operator norm over [a, b]."""
        xs = np.linspace(a, b, samples)
        return max(float(np.linalg.norm(self(x), 2)) for x in xs)


@dataclass(frozen=True)
class ConstantPotential(MatrixPotential):
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _symmetric(self.matrix, "constant potential"))

    @property
    def n(self):
        return self.matrix.shape[0]

    def __call__(self, x):
        return self.matrix

    def to_dict(self):
        return {"type": "constant", "matrix": self.matrix.tolist()}


@dataclass(frozen=True)
class PolynomialPotential(MatrixPotential):
    """V(x) = sum_k C_k x^k with symmetric matrix coefficients."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(
            _symmetric(C, f"polynomial coefficient {k}")
            for k, C in enumerate(self.coefficients)
        )
        if not coeffs:
            raise DimensionMismatch("polynomial potential needs coefficients")
        if any(C.shape != coeffs[0].shape for C in coeffs):
            raise DimensionMismatch("polynomial coefficients differ in shape")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def n(self):
        return self.coefficients[0].shape[0]

    def __call__(self, x):
        out = np.zeros_like(self.coefficients[0])
        for C in reversed(self.coefficients):
            out = out * x + C
        return out

    def to_dict(self):
        return {"type": "poly", "coefficients": [C.tolist() for C in self.coefficients]}


@dataclass(frozen=True)
class TabulatedPotential(MatrixPotential):
    """Cubic-spline interpolation of sampled symmetric matrices."""

    x: np.ndarray
    values: np.ndarray
    _spline: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        xs = np.asarray(self.x, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 3 or vals.shape[0] != xs.shape[0]:
            raise DimensionMismatch(
                f"tabulated potential needs (m, n, n) samples, got {vals.shape}"
            )
        vals = np.stack([_symmetric(v, "tabulated potential sample") for v in vals])
        object.__setattr__(self, "x", xs)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "_spline", CubicSpline(xs, vals, axis=0))

    @property
    def n(self):
        return self.values.shape[1]

    def __call__(self, x):
        x = float(np.clip(x, self.x[0], self.x[-1]))
        V = self._spline(x)
        return 0.5 * (V + V.T)

    def to_dict(self):
        return {"type": "table", "x": self.x.tolist(), "values": self.values.tolist()}


class LinePotential(MatrixPotential):
    """A potential on the whole line with constant asymptotic limits."""

    @property
    def limit_minus(self) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def limit_plus(self) -> np.ndarray:  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantLinePotential(LinePotential):
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", _symmetric(self.matrix, "constant potential"))

    @property
    def n(self):
        return self.matrix.shape[0]

    @property
    def limit_minus(self):
        return self.matrix

    @property
    def limit_plus(self):
        return self.matrix

    def __call__(self, x):
        return self.matrix

    def to_dict(self):
        return {"type": "constant", "matrix": self.matrix.tolist()}


@dataclass(frozen=True)
class PoschlTellerPotential(LinePotential):
    """Scalar well m2 - depth / cosh(x)^2.

    For depth = l(l+1) the operator -d2/dx2 + V has eigenvalues
    m2 - (l - k)^2, k = 0, 1, ..., below the essential spectrum [m2, inf).
    """

    m2: float
    depth: float

    n = 1

    @property
    def limit_minus(self):
        return np.array([[float(self.m2)]])

    limit_plus = limit_minus

    def __call__(self, x):
        return np.array([[self.m2 - self.depth / np.cosh(x) ** 2]])

    def to_dict(self):
        return {"type": "poschl_teller", "m2": float(self.m2), "depth": float(self.depth)}


@dataclass(frozen=True)
class GaussianWellPotential(LinePotential):
    """Scalar well m2 - amplitude * exp(-(x / width)^2)."""

    m2: float
    amplitude: float
    width: float

    n = 1

    @property
    def limit_minus(self):
        return np.array([[float(self.m2)]])

    limit_plus = limit_minus

    def __call__(self, x):
        return np.array([[self.m2 - self.amplitude * np.exp(-((x / self.width) ** 2))]])

    def to_dict(self):
        return {
            "type": "gaussian",
            "m2": float(self.m2),
            "amplitude": float(self.amplitude),
            "width": float(self.width),
        }


@dataclass(frozen=True)
class DiagonalLinePotential(LinePotential):
    """Direct sum of scalar line potentials along the diagonal."""

    entries: tuple

    def __post_init__(self):
        if any(e.n != 1 for e in self.entries):
            raise DimensionMismatch("diagonal entries must be scalar potentials")
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def n(self):
        return len(self.entries)

    @property
    def limit_minus(self):
        return np.diag([float(e.limit_minus[0, 0]) for e in self.entries])

    @property
    def limit_plus(self):
        return np.diag([float(e.limit_plus[0, 0]) for e in self.entries])

    def __call__(self, x):
        return np.diag([float(e(x)[0, 0]) for e in self.entries])

    def to_dict(self):
        return {"type": "diagonal", "entries": [e.to_dict() for e in self.entries]}


@dataclass(frozen=True)
class TabulatedLinePotential(LinePotential):
    """Spline inside the sampled window, asymptotic limits outside."""

    x: np.ndarray
    values: np.ndarray
    v_minus: np.ndarray
    v_plus: np.ndarray
    _spline: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        xs = np.asarray(self.x, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 3 or vals.shape[0] != xs.shape[0]:
            raise DimensionMismatch(
                f"tabulated potential needs (m, n, n) samples, got {vals.shape}"
            )
        vals = np.stack([_symmetric(v, "tabulated potential sample") for v in vals])
        object.__setattr__(self, "x", xs)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "v_minus", _symmetric(self.v_minus, "left limit"))
        object.__setattr__(self, "v_plus", _symmetric(self.v_plus, "right limit"))
        object.__setattr__(self, "_spline", CubicSpline(xs, vals, axis=0))

    @property
    def n(self):
        return self.values.shape[1]

    @property
    def limit_minus(self):
        return self.v_minus

    @property
    def limit_plus(self):
        return self.v_plus

    def __call__(self, x):
        if x <= self.x[0]:
            return self.v_minus
        if x >= self.x[-1]:
            return self.v_plus
        V = self._spline(float(x))
        return 0.5 * (V + V.T)

    def to_dict(self):
        return {
            "type": "table",
            "x": self.x.tolist(),
            "values": self.values.tolist(),
            "v_minus": self.v_minus.tolist(),
            "v_plus": self.v_plus.tolist(),
        }


def interval_potential_from_dict(d) -> MatrixPotential:
    kind = d.get("type")
    if kind == "constant":
        return ConstantPotential(np.asarray(d["matrix"], dtype=float))
    if kind == "poly":
        return PolynomialPotential(tuple(np.asarray(C, dtype=float) for C in d["coefficients"]))
    if kind == "table":
        return TabulatedPotential(d["x"], d["values"])
    raise InvalidPotential(f"unknown interval potential type {kind!r}")


def line_potential_from_dict(d) -> LinePotential:
    kind = d.get("type")
    if kind == "constant":
        return ConstantLinePotential(np.asarray(d["matrix"], dtype=float))
    if kind == "poschl_teller":
        return PoschlTellerPotential(float(d["m2"]), float(d["depth"]))
    if kind == "gaussian":
        return GaussianWellPotential(float(d["m2"]), float(d["amplitude"]), float(d["width"]))
    if kind == "diagonal":
        return DiagonalLinePotential(tuple(line_potential_from_dict(e) for e in d["entries"]))
    if kind == "table":
        xs = np.asarray(d["x"], dtype=float)
        vals = np.asarray(d["values"], dtype=float)
        vm = np.asarray(d.get("v_minus", vals[0]), dtype=float)
        vp = np.asarray(d.get("v_plus", vals[-1]), dtype=float)
        return TabulatedLinePotential(xs, vals, vm, vp)
    raise InvalidPotential(f"unknown line potential type {kind!r}")


def as_interval_potential(V, n=None) -> MatrixPotential:
    """Accept a potential object, a constant array, or a plain callable."""
    if isinstance(V, MatrixPotential):
        return V
    if callable(V):
        probe = _symmetric(V(0.0), "callable potential")
        m = probe.shape[0]

        class _Wrapped(MatrixPotential):
            n = m

            def __call__(self, x):
                return _symmetric(V(x), "callable potential")

        return _Wrapped()
    return ConstantPotential(np.atleast_2d(np.asarray(V, dtype=float)))
