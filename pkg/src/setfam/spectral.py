"""Kneser graph spectrum, exact trace moments, and the spectral min-size bound."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .core import DomainError, ResourceError, binom, iter_k_masks

ADJACENCY_LIMIT = 5000


@dataclass(frozen=True)
class SpectrumEntry:
    index_i: int
    eigenvalue: int
    multiplicity: int


@dataclass(frozen=True)
class KneserConstants:
    big_k: Fraction
    big_l: Fraction
    lambda1: int


def _check_kneser(n: int, k: int) -> None:
    if k < 1 or n < 2 * k:
        raise DomainError(f"need n >= 2k >= 2, got n={n}, k={k}")


def kneser_spectrum(n: int, k: int) -> list[SpectrumEntry]:
    """Eigenvalue (-1)^i C(n-k-i, k-i) with multiplicity C(n, i) - C(n, i-1), i = 0..k."""
    _check_kneser(n, k)
    out = []
    for i in range(k + 1):
        lam = (-1) ** i * binom(n - k - i, k - i)
        mult = binom(n, i) - (binom(n, i - 1) if i else 0)
        out.append(SpectrumEntry(i, lam, mult))
    return out


def format_spectrum(entries: list[SpectrumEntry]) -> str:
    return "[" + ", ".join(f"{e.eigenvalue}:{e.multiplicity}" for e in entries) + "]"


def kneser_adjacency(n: int, k: int) -> np.ndarray:
    """0/1 adjacency of KG(n, k) over k-subsets in canonical mask order."""
    _check_kneser(n, k)
    size = binom(n, k)
    if size > ADJACENCY_LIMIT:
        raise ResourceError(f"KG({n},{k}) has {size} vertices, limit {ADJACENCY_LIMIT}")
    masks = np.fromiter(iter_k_masks(n, k), dtype=np.int64, count=size)
    return ((masks[:, None] & masks[None, :]) == 0).astype(np.int64)


def _matpow(a: np.ndarray, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=a.dtype)
    base = a
    while p:
        if p & 1:
            result = result @ base
        p >>= 1
        if p:
            base = base @ base
    return result


def trace_moment(n: int, k: int, p: int) -> int:
    """tr(M^p) in exact integers."""
    if p < 0:
        raise DomainError(f"need p >= 0, got {p}")
    adj = kneser_adjacency(n, k)
    size = adj.shape[0]
    degree = binom(n - k, k)
    # every entry of a power product is at most size * degree^p
    if size * degree**p >= 2**62:
        adj = adj.astype(object)
    half = p // 2
    left = _matpow(adj, half)
    right = _matpow(adj, p - half)
    return int((left * right.T).sum())


def spectrum_moment(n: int, k: int, p: int) -> int:
    """Σ multiplicity · eigenvalue^p from the formula."""
    return sum(e.multiplicity * e.eigenvalue**p for e in kneser_spectrum(n, k))


def kneser_constants(n: int, k: int) -> KneserConstants:
    _check_kneser(n, k)
    a = binom(n - k - 1, k - 1)
    b = binom(n - k - 2, k - 2) if n - k - 2 >= 0 else 0
    return KneserConstants(Fraction(a - b, 2), Fraction(a + b, 2), binom(n - k, k))


def domination_holds(n: int, k: int) -> bool:
    """|λ_i + K| <= L for every non-principal eigenvalue."""
    c = kneser_constants(n, k)
    return all(abs(e.eigenvalue + c.big_k) <= c.big_l for e in kneser_spectrum(n, k)[1:])


class Theorem2Bound(NamedTuple):
    spectral_form: Fraction
    closed_form: Fraction


def theorem2_bound(n: int, k: int) -> Theorem2Bound:
    """Upper bound on min(|A|, |B|) for disjoint cross-intersecting A, B, in both forms."""
    if k < 2 or n < 2 * k:
        raise DomainError(f"need n >= 2k >= 4, got n={n}, k={k}")
    c = kneser_constants(n, k)
    spectral = binom(n, k) * c.big_l / (c.big_k + c.big_l + c.lambda1)
    closed = Fraction(binom(n - 1, k - 1), 2) * Fraction(n - 2, n - k - 1)
    return Theorem2Bound(spectral, closed)
