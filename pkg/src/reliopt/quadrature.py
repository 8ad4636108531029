"""Adaptive Simpson integration over a delivery window."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NumericalError, ParameterError

__all__ = ["QuadratureConfig", "integrate_window"]


@dataclass(frozen=True)
class QuadratureConfig:
    """``abs_tol`` is in EUR for the whole priced quantity; ``None`` means
    ``1e-6 * Q * (T2 - T1)`` for the contract being priced."""

    abs_tol: float | None = None
    max_subdivisions: int = 1_000_000

    def __post_init__(self):
        if self.abs_tol is not None and not self.abs_tol > 0:
            raise ParameterError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_subdivisions < 0:
            raise ParameterError("max_subdivisions must be non-negative")

    def tolerance_for(self, q: float, t1: float, t2: float) -> float:
        return self.abs_tol if self.abs_tol is not None else 1e-6 * q * (t2 - t1)


def _simpson(h, fa, fm, fb):
    return h / 6.0 * (fa + 4.0 * fm + fb)


def integrate_window(
    integrand: Callable[[np.ndarray], np.ndarray],
    t1: float,
    t2: float,
    quad: QuadratureConfig | None = None,
    *,
    abs_tol: float | None = None,
    breakpoints=None,
) -> float:
    """Integrate a vectorised ``integrand`` over ``[t1, t2]``.

    Globally adaptive Simpson: every interval is halved and accepted once the
    Richardson error estimate ``|S_left + S_right - S_whole| / 15`` falls
    below its share of the tolerance (proportional to its width), or below
    the rounding noise of the interval's own value when the integrand is so
    large that the absolute tolerance is out of reach in double precision.

    ``breakpoints`` (sorted, including ``t1`` and ``t2``) mark points where
    the integrand may jump. Each piece is integrated separately and its end
    values are taken as one-sided limits from inside the piece.
    """
    quad = quad or QuadratureConfig()
    tol = abs_tol if abs_tol is not None else (quad.abs_tol if quad.abs_tol is not None else 1e-6 * (t2 - t1))
    if not t2 > t1:
        raise ParameterError(f"need t1 < t2, got [{t1}, {t2}]")
    if not tol > 0:
        raise ParameterError("tolerance must be positive")
    span = t2 - t1

    if breakpoints is None:
        a = np.array([t1], dtype=float)
        b = np.array([t2], dtype=float)
        fa, fb = integrand(a), integrand(b)
    else:
        edges = np.asarray(breakpoints, dtype=float)
        if edges[0] != t1 or edges[-1] != t2 or np.any(np.diff(edges) <= 0):
            raise ParameterError("breakpoints must increase strictly from t1 to t2")
        a, b = edges[:-1], edges[1:]
        nudge = 1e-6 * (b - a)
        fa, fb = integrand(a + nudge), integrand(b - nudge)
    m = 0.5 * (a + b)
    fm = integrand(m)
    whole = _simpson(b - a, fa, fm, fb)
    local_tol = tol * (b - a) / span

    total = 0.0
    subdivisions = 0
    while a.size:
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = integrand(lm), integrand(rm)
        left = _simpson(m - a, fa, flm, fm)
        right = _simpson(b - m, fm, frm, fb)
        err = left + right - whole
        # second term: the error is already at the rounding noise of the values
        done = (np.abs(err) <= 15.0 * local_tol) | (np.abs(err) <= 64 * np.finfo(float).eps * np.abs(left + right))
        # stop refining once intervals reach floating-point resolution
        done |= (m - a) <= 4 * np.finfo(float).eps * np.maximum(np.abs(m), 1.0)
        if not np.all(np.isfinite(err)):
            raise NumericalError("integrand returned non-finite values", estimate=None)
        total += float(np.sum(left[done] + right[done] + err[done] / 15.0))
        keep = ~done
        if not keep.any():
            break
        subdivisions += int(keep.sum())
        if subdivisions > quad.max_subdivisions:
            estimate = total + float(np.sum(left[keep] + right[keep]))
            raise NumericalError(
                f"quadrature tolerance {tol:g} not reached within {quad.max_subdivisions} subdivisions",
                estimate=estimate,
            )
        a_k, m_k, b_k = a[keep], m[keep], b[keep]
        a = np.concatenate([a_k, m_k])
        b = np.concatenate([m_k, b_k])
        m = np.concatenate([lm[keep], rm[keep]])
        fa = np.concatenate([fa[keep], fm[keep]])
        fb = np.concatenate([fm[keep], fb[keep]])
        fm = np.concatenate([flm[keep], frm[keep]])
        whole = np.concatenate([left[keep], right[keep]])
        local_tol = np.concatenate([local_tol[keep], local_tol[keep]]) / 2.0
    return total
