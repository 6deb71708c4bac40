"""Binomial ratio limits, the limit polynomials of the lifted construction, and root finding.

Strict inequalities at finite n are decided with exact rationals; floats are
used only for limits and roots.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, NamedTuple

from .core import DomainError, PreconditionError, binom

# coefficients of α^0..α^6
F1_COEFFS = (0, 0, 0, 5, -10, 6, -1)
F2_COEFFS = (0, 0, 0, 10, -25, 21, -6)
# α^2 (1 - α): limit of C(n-3, k-2) / C(n, k)
TARGET_COEFFS = (0, 0, 1, -1)


def _check_alpha(alpha: float) -> None:
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")


def ratio_exact(n: int, k: int, t: int, i: int) -> Fraction:
    """C(n-t, k-i) / C(n, k) as an exact fraction."""
    if not (0 <= i <= t <= n and 0 <= k <= n):
        raise DomainError(f"need 0 <= i <= t <= n and 0 <= k <= n; got {(n, k, t, i)}")
    return Fraction(binom(n - t, k - i), binom(n, k))


def ratio_limit(alpha: float, t: int, i: int) -> float:
    if not 0 <= i <= t:
        raise DomainError(f"need 0 <= i <= t, got t={t}, i={i}")
    return alpha**i * (1 - alpha) ** (t - i)


def threshold_limits(alpha: float, t: int) -> tuple[float, float]:
    """Limits of |A| / C(n-1, k-1) and |B| / C(n-1, k-1) for the threshold pair."""
    if t < 2:
        raise DomainError(f"need t >= 2, got {t}")
    limit_a = (1 - alpha) ** t + alpha ** (t - 1) * (1 - alpha)
    limit_b = 1 - (1 - alpha) ** t
    return limit_a, limit_b


def threshold_alpha_boundary(t: int) -> float:
    """α = 1 - (1/2)^(1/t), where the B-limit crosses 1/2."""
    return 1 - 0.5 ** (1 / t)


def poly_eval(coeffs: tuple[int, ...] | list[int], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def f1(alpha: float) -> float:
    return poly_eval(F1_COEFFS, alpha)


def f2(alpha: float) -> float:
    return poly_eval(F2_COEFFS, alpha)


def limit_polynomial(counts: dict[int, int], t: int) -> list[int]:
    """Integer coefficients of Σ_i counts[i] · α^i (1 - α)^(t - i)."""
    coeffs = [0] * (t + 1)
    for i, c in counts.items():
        if not c:
            continue
        if not 0 <= i <= t:
            raise DomainError(f"index {i} outside [0, {t}]")
        for j in range(t - i + 1):
            coeffs[i + j] += c * binom(t - i, j) * (-1) ** j
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def bisect_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """Root of f in [lo, hi] by bisection; requires a sign change."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        raise PreconditionError(f"no sign change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


class Theorem3Roots(NamedTuple):
    f1_root: float
    f2_root: float


def theorem3_roots(tol: float = 1e-12) -> Theorem3Roots:
    """Lower thresholds where f1 and f2 overtake α²(1 - α)."""
    r1 = bisect_root(lambda a: f1(a) - a * a * (1 - a), 0.2, 0.3, tol)
    r2 = bisect_root(lambda a: f2(a) - a * a * (1 - a), 0.1, 0.15, tol)
    return Theorem3Roots(r1, r2)


F1_ROOT_EXACT = 2 - math.sqrt(3)
F2_ROOT_EXACT = (9 - math.sqrt(57)) / 12


class CubicWarmup(NamedTuple):
    bound: int
    half_star: Fraction
    holds: bool


def cubic_warmup_bound(n: int, k: int) -> CubicWarmup:
    """k² C(n-2, k-2) against half the star size."""
    if not n >= k >= 2:
        raise DomainError(f"need n >= k >= 2, got n={n}, k={k}")
    bound = k * k * binom(n - 2, k - 2)
    half = Fraction(binom(n - 1, k - 1), 2)
    return CubicWarmup(bound, half, bound < half)


def vandermonde_holds(n: int, k: int, l: int) -> bool:
    """Σ_{i=1}^{k} C(n-k-l, k-i) C(k+l-2, i-2) == C(n-2, k-2)."""
    if n < k + l:
        raise DomainError(f"need n >= k + l, got n={n}, k={k}, l={l}")
    lhs = sum(binom(n - k - l, k - i) * binom(k + l - 2, i - 2) for i in range(1, k + 1))
    return lhs == binom(n - 2, k - 2)


def base_case_holds(k: int, l: int) -> bool:
    """k C(k+l-2, k-2) + k C(k+l-2, l-2) > C(k+l, k)."""
    return k * binom(k + l - 2, k - 2) + k * binom(k + l - 2, l - 2) > binom(k + l, k)
