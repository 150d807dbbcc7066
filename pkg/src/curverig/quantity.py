"""Distance polynomials D(x, y) on pairs of ambient points.

Three kinds are supported: the squared Euclidean distance, the squared
pinned triangle area about a fixed apex (d = 2 only), and a free-form
polynomial in the 2d coordinates of (x, y).  Evaluation and gradients are
exact on rational inputs; batch variants operate on float numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionMismatch
from .rational import RationalFunction, as_fraction, is_exact


def _check_dim(q, x, y):
    if len(x) != len(y):
        raise DimensionMismatch(f"point dimensions differ: {len(x)} vs {len(y)}")
    if q.dimension is not None and len(x) != q.dimension:
        raise DimensionMismatch(
            f"expected dimension {q.dimension}, got {len(x)}")


def _exact_pair(x, y) -> bool:
    return all(is_exact(c) for c in x) and all(is_exact(c) for c in y)


@dataclass(frozen=True)
class SquaredEuclidean:
    """D(x, y) = sum_i (x_i - y_i)^2."""

    dimension: Optional[int] = None
    kind: str = field(default="sq_euclidean", init=False)

    def eval(self, x, y):
        _check_dim(self, x, y)
        return sum((a - b) * (a - b) for a, b in zip(x, y))

    def grad(self, x, y):
        _check_dim(self, x, y)
        dx = tuple(2 * (a - b) for a, b in zip(x, y))
        dy = tuple(-g for g in dx)
        return dx, dy

    def eval_batch(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        d = X - Y
        return np.sum(d * d, axis=-1)

    def grad_batch(self, X, Y):
        dx = 2.0 * (X - Y)
        return dx, -dx

    def compose_with_curve(self, coords: Sequence[RationalFunction], point):
        """D(gamma(t), p) as a rational function of t for fixed rational p."""
        acc = RationalFunction.constant(0)
        for ci, pi in zip(coords, point):
            diff = ci - RationalFunction.constant(as_fraction(pi))
            acc = acc + diff * diff
        return acc


@dataclass(frozen=True)
class PinnedAreaSquared:
    """D(x, y) = ((x1-v1)(y2-v2) - (x2-v2)(y1-v1))^2 for a fixed apex v.

    2 D(x,y)^(1/2) is four times the area of the triangle with vertices
    x, y, v; D vanishes iff x - v and y - v are parallel.
    """

    apex: tuple
    dimension: Optional[int] = field(default=2, init=False)
    kind: str = field(default="pinned_area", init=False)

    def __post_init__(self):
        if len(self.apex) != 2:
            raise DimensionMismatch("pinned-area apex must be a 2-vector")
        object.__setattr__(self, "apex", tuple(self.apex))

    def _cross(self, x, y):
        v1, v2 = self.apex
        return (x[0] - v1) * (y[1] - v2) - (x[1] - v2) * (y[0] - v1)

    def eval(self, x, y):
        _check_dim(self, x, y)
        c = self._cross(x, y)
        return c * c

    def grad(self, x, y):
        _check_dim(self, x, y)
        v1, v2 = self.apex
        c = self._cross(x, y)
        dx = (2 * c * (y[1] - v2), -2 * c * (y[0] - v1))
        dy = (-2 * c * (x[1] - v2), 2 * c * (x[0] - v1))
        return dx, dy

    def eval_batch(self, X, Y):
        v1, v2 = float(self.apex[0]), float(self.apex[1])
        c = (X[..., 0] - v1) * (Y[..., 1] - v2) - (X[..., 1] - v2) * (Y[..., 0] - v1)
        return c * c

    def grad_batch(self, X, Y):
        v1, v2 = float(self.apex[0]), float(self.apex[1])
        c = (X[..., 0] - v1) * (Y[..., 1] - v2) - (X[..., 1] - v2) * (Y[..., 0] - v1)
        dx = np.stack([2 * c * (Y[..., 1] - v2), -2 * c * (Y[..., 0] - v1)], axis=-1)
        dy = np.stack([-2 * c * (X[..., 1] - v2), 2 * c * (X[..., 0] - v1)], axis=-1)
        return dx, dy

    def compose_with_curve(self, coords, point):
        v1 = RationalFunction.constant(as_fraction(self.apex[0]))
        v2 = RationalFunction.constant(as_fraction(self.apex[1]))
        p1 = RationalFunction.constant(as_fraction(point[0]))
        p2 = RationalFunction.constant(as_fraction(point[1]))
        c = (coords[0] - v1) * (p2 - v2) - (coords[1] - v2) * (p1 - v1)
        return c * c


@dataclass(frozen=True)
class GeneralPolynomial:
    """Explicit polynomial in the 2d variables (x_1..x_d, y_1..y_d).

    terms: sequence of (exponent vector of length 2d, coefficient).  Terms
    are deduplicated (coefficients summed) and sorted by exponent vector.
    No symmetry is enforced; check_simplicity reports violations instead.
    """

    dimension: int
    terms: tuple = ()
    kind: str = field(default="poly", init=False)

    def __post_init__(self):
        merged: dict = {}
        for expo, coeff in self.terms:
            expo = tuple(int(e) for e in expo)
            if len(expo) != 2 * self.dimension:
                raise DimensionMismatch(
                    f"exponent vector length {len(expo)} != 2*{self.dimension}")
            merged[expo] = merged.get(expo, Fraction(0)) + as_fraction(coeff)
        object.__setattr__(
            self, "terms",
            tuple(sorted((e, c) for e, c in merged.items() if c != 0)))

    def eval(self, x, y):
        _check_dim(self, x, y)
        z = tuple(x) + tuple(y)
        exact = _exact_pair(x, y)
        total = Fraction(0) if exact else 0.0
        for expo, coeff in self.terms:
            term = coeff if exact else float(coeff)
            for zi, ei in zip(z, expo):
                if ei:
                    term *= zi ** ei
            total += term
        return total

    def grad(self, x, y):
        _check_dim(self, x, y)
        d = len(x)
        z = tuple(x) + tuple(y)
        exact = _exact_pair(x, y)
        zero = Fraction(0) if exact else 0.0
        out = [zero] * (2 * d)
        for expo, coeff in self.terms:
            for k in range(2 * d):
                if expo[k] == 0:
                    continue
                term = (coeff if exact else float(coeff)) * expo[k]
                for i, (zi, ei) in enumerate(zip(z, expo)):
                    e = ei - 1 if i == k else ei
                    if e:
                        term *= zi ** e
                out[k] += term
        return tuple(out[:d]), tuple(out[d:])

    def eval_batch(self, X, Y):
        Z = np.concatenate([X, Y], axis=-1)
        total = np.zeros(Z.shape[:-1])
        for expo, coeff in self.terms:
            term = np.full(Z.shape[:-1], float(coeff))
            for i, e in enumerate(expo):
                if e:
                    term = term * Z[..., i] ** e
            total += term
        return total

    def grad_batch(self, X, Y):
        d = X.shape[-1]
        Z = np.concatenate([X, Y], axis=-1)
        out = np.zeros(Z.shape[:-1] + (2 * d,))
        for expo, coeff in self.terms:
            for k in range(2 * d):
                if expo[k] == 0:
                    continue
                term = np.full(Z.shape[:-1], float(coeff) * expo[k])
                for i, e in enumerate(expo):
                    e = e - 1 if i == k else e
                    if e:
                        term = term * Z[..., i] ** e
                out[..., k] += term
        return out[..., :d], out[..., d:]

    def compose_with_curve(self, coords, point):
        d = self.dimension
        acc = RationalFunction.constant(0)
        pvals = [as_fraction(p) for p in point]
        for expo, coeff in self.terms:
            c = coeff
            for pi, ei in zip(pvals, expo[d:]):
                if ei:
                    c *= pi ** ei
            term = RationalFunction.constant(c)
            for ci, ei in zip(coords, expo[:d]):
                for _ in range(ei):
                    term = term * ci
            acc = acc + term
        return acc

    def has_rational_coefficients(self) -> bool:
        return all(isinstance(c, Fraction) for _, c in self.terms)


QuantitySpec = SquaredEuclidean | PinnedAreaSquared | GeneralPolynomial


def eval_quantity(q: QuantitySpec, x, y):
    """Scalar value of D(x, y); exact when both points are rational."""
    return q.eval(x, y)


def grad_quantity(q: QuantitySpec, x, y):
    """(D_X, D_Y) partial-derivative vectors at (x, y)."""
    return q.grad(x, y)


def quantity_degree(q: QuantitySpec) -> int:
    """Total degree of D as a polynomial in the 2d ambient coordinates."""
    if isinstance(q, SquaredEuclidean):
        return 2
    if isinstance(q, PinnedAreaSquared):
        return 4
    return max((sum(e) for e, _ in q.terms), default=0)


def quantity_is_rational(q: QuantitySpec) -> bool:
    """True when D has rational coefficients (exact pipelines available)."""
    if isinstance(q, SquaredEuclidean):
        return True
    if isinstance(q, PinnedAreaSquared):
        return all(is_exact(v) for v in q.apex)
    return q.has_rational_coefficients()


def quantity_from_json(doc: dict) -> QuantitySpec:
    """Parse {"kind": "sq_euclidean" | "pinned_area" | "poly", ...}."""
    kind = doc.get("kind")
    if kind == "sq_euclidean":
        dim = doc.get("dimension")
        return SquaredEuclidean(dimension=int(dim) if dim is not None else None)
    if kind == "pinned_area":
        apex = tuple(as_fraction(v) for v in doc["apex"])
        return PinnedAreaSquared(apex=apex)
    if kind == "poly":
        terms = tuple((tuple(int(e) for e in expo), as_fraction(c))
                      for expo, c in doc["terms"])
        return GeneralPolynomial(dimension=int(doc["dimension"]), terms=terms)
    raise ValueError(f"unknown quantity kind {kind!r}")


def quantity_to_json(q: QuantitySpec) -> dict:
    if isinstance(q, SquaredEuclidean):
        doc = {"kind": "sq_euclidean"}
        if q.dimension is not None:
            doc["dimension"] = q.dimension
        return doc
    if isinstance(q, PinnedAreaSquared):
        return {"kind": "pinned_area", "apex": [str(v) for v in q.apex]}
    return {"kind": "poly", "dimension": q.dimension,
            "terms": [[list(e), str(c)] for e, c in q.terms]}
