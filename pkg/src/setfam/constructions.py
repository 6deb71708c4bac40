"""Explicit family constructions with closed-form sizes.

Every builder enumerates its family literally from the membership rule; the
``*_size`` / ``*_diversity`` helpers give the matching closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .core import (
    DomainError,
    Family,
    PreconditionError,
    all_subsets,
    are_cross_intersecting,
    are_disjoint_families,
    binom,
    full_mask,
    is_intersecting,
    iter_k_masks,
    mask_of,
    popcount,
)

G_TRIPLES = (
    (1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 1), (5, 1, 2),
    (1, 3, 6), (2, 4, 6), (2, 5, 6), (3, 5, 6), (1, 4, 6),
)


def _check_nk(n: int, k: int) -> None:
    if n < 1 or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n and n >= 1, got n={n}, k={k}")


def star(n: int, k: int, x: int = 1) -> Family:
    if not 1 <= x <= n or not 1 <= k <= n:
        raise DomainError(f"star needs 1 <= x <= n, 1 <= k <= n; got n={n}, k={k}, x={x}")
    bit = 1 << (x - 1)
    return Family(n, tuple(m for m in iter_k_masks(n, k) if m & bit))


def star_size(n: int, k: int) -> int:
    return binom(n - 1, k - 1)


def star_split(n: int, k: int, x: int = 1) -> tuple[Family, Family]:
    """Split the star at ``x`` into two halves, alternating by canonical rank."""
    s = star(n, k, x)
    return Family(n, s.members[0::2]), Family(n, s.members[1::2])


@dataclass(frozen=True)
class ThresholdPair:
    n: int
    k: int
    t: int
    a_family: Family
    b_family: Family
    a_size: int
    b_size: int


def threshold_sizes(n: int, k: int, t: int) -> tuple[int, int]:
    a = binom(n - t - 1, k - 1) + binom(n - t - 1, k - t)
    b = binom(n - 1, k - 1) - binom(n - t - 1, k - 1)
    return a, b


def threshold_pair(n: int, k: int, t: int) -> ThresholdPair:
    """A: sets whose trace on [t+1] is {1} or {2..t+1}; B: traces holding 1 and something of {2..t+1}."""
    if not (2 <= t <= k <= n and t + 1 <= n):
        raise DomainError(f"need 2 <= t <= k <= n and t + 1 <= n; got n={n}, k={k}, t={t}")
    window = full_mask(t + 1)
    one = 1
    rest = window ^ one
    a, b = [], []
    for m in iter_k_masks(n, k):
        tr = m & window
        if tr == one or tr == rest:
            a.append(m)
        elif tr & one and tr & rest:
            b.append(m)
    a_size, b_size = threshold_sizes(n, k, t)
    return ThresholdPair(n, k, t, Family(n, tuple(a)), Family(n, tuple(b)), a_size, b_size)


def rebalance_pair(a: Family, b: Family, m: int) -> tuple[Family, Family]:
    """Move the m canonically-smallest members of the intersecting donor ``b`` into ``a``."""
    if not 0 <= m <= len(b):
        raise DomainError(f"m must lie in [0, {len(b)}], got {m}")
    if not is_intersecting(b):
        raise PreconditionError("donor family is not intersecting")
    if not are_disjoint_families(a, b) or not are_cross_intersecting(a, b):
        raise PreconditionError("pair must be disjoint and cross-intersecting")
    moved = b.members[:m]
    return Family.from_masks(a.ground_n, a.members + moved), Family(b.ground_n, b.members[m:])


def complement_pairing(k: int) -> tuple[Family, Family]:
    """Assign whole complement pairs of k-subsets of [2k] alternately to A and B."""
    if k < 2:
        raise DomainError(f"complement pairing needs k >= 2, got {k}")
    n = 2 * k
    full = full_mask(n)
    reps = [m for m in iter_k_masks(n, k) if m & 1]
    a, b = [], []
    for rank, s in enumerate(reps):
        (a if rank % 2 == 0 else b).extend((s, full ^ s))
    return Family.from_masks(n, a), Family.from_masks(n, b)


def d_family(n: int, k: int, r: int) -> Family:
    """k-sets meeting [2r+1] in at least r+1 elements."""
    if not (1 <= r <= k - 1 and 2 * r + 1 <= n and k <= n):
        raise DomainError(f"need 1 <= r <= k-1, 2r+1 <= n, k <= n; got n={n}, k={k}, r={r}")
    window = full_mask(2 * r + 1)
    return Family(n, tuple(m for m in iter_k_masks(n, k) if popcount(m & window) >= r + 1))


def d_family_size(n: int, k: int, r: int) -> int:
    w = 2 * r + 1
    return sum(binom(w, j) * binom(n - w, k - j) for j in range(r + 1, k + 1))


def d_family_diversity(n: int, k: int, r: int) -> int:
    w = 2 * r + 1
    inside = sum(binom(w - 1, j - 1) * binom(n - w, k - j) for j in range(r + 1, k + 1))
    outside = 0
    if n > w:
        outside = sum(binom(w, j) * binom(n - w - 1, k - j - 1) for j in range(r + 1, k))
    return d_family_size(n, k, r) - max(inside, outside)


def q_family(k: int) -> Family:
    """All subsets of [2k+1] with at least k+1 elements."""
    if k < 1:
        raise DomainError(f"q_family needs k >= 1, got {k}")
    n = 2 * k + 1
    return Family(n, tuple(m for m in range(1 << n) if popcount(m) >= k + 1))


def q_family_size(k: int) -> int:
    return sum(binom(2 * k + 1, i) for i in range(k + 1, 2 * k + 2))


def q_family_diversity(k: int) -> int:
    return sum(binom(2 * k, i) for i in range(k + 1, 2 * k + 1))


def g_base() -> Family:
    """The ten triples on [6]: pairwise intersecting, every pair covered twice."""
    return Family.from_sets(6, G_TRIPLES)


def upward_closure(base: Family, t: int) -> Family:
    """All subsets of [t] containing some member of ``base``."""
    if t < 0 or any(m >> t for m in base.members):
        raise DomainError(f"members of the base family must lie in [{t}]")
    return Family(t, tuple(s for s in range(1 << t) if any(g & s == g for g in base.members)))


def lift_family(h: Family, t: int, n: int, k: int) -> Family:
    """k-subsets F of [n] with F ∩ [t] in ``h``."""
    if t > n or k > n or k < 0 or any(m >> t for m in h.members):
        raise DomainError(f"lift needs h over [{t}], t <= n, 0 <= k <= n")
    window = full_mask(t)
    traces = set(h.members)
    return Family(n, tuple(m for m in iter_k_masks(n, k) if m & window in traces))


@dataclass(frozen=True)
class LiftProfile:
    """N_i = number of i-sets of H; N_i(x) = number of those avoiding x (x in [t])."""

    window_t: int
    n_counts: dict[int, int]
    n_counts_missing: dict[tuple[int, int], int]


def lift_profile(h: Family, t: int) -> LiftProfile:
    if any(m >> t for m in h.members):
        raise DomainError(f"family does not lie in [{t}]")
    counts = {i: 0 for i in range(t + 1)}
    missing = {(i, x): 0 for i in range(t + 1) for x in range(1, t + 1)}
    for m in h.members:
        i = popcount(m)
        counts[i] += 1
        for x in range(1, t + 1):
            if not m >> (x - 1) & 1:
                missing[i, x] += 1
    return LiftProfile(t, counts, missing)


def lifted_missing_counts(profile: LiftProfile, n: int, k: int) -> tuple[dict[int, int], int | None]:
    """|F \\ F_x| for the lifted family, per x in [t] and for any x outside [t].

    The outside count is None when n == t (no such x exists).
    """
    t = profile.window_t
    if t > n or k < 0 or k > n:
        raise DomainError(f"need t <= n and 0 <= k <= n; got t={t}, n={n}, k={k}")
    inside = {
        x: sum(profile.n_counts_missing[i, x] * binom(n - t, k - i) for i in range(t + 1))
        for x in range(1, t + 1)
    }
    outside = None
    if n > t:
        outside = sum(c * binom(n - t - 1, k - i) for i, c in profile.n_counts.items())
    return inside, outside


class Theorem3Certificate(NamedTuple):
    diversity_lb: int
    target: int
    beats: bool


def g_closure_profile() -> LiftProfile:
    return lift_profile(upward_closure(g_base(), 6), 6)


def theorem3_certificate(n: int, k: int) -> Theorem3Certificate:
    """Exact diversity of the lifted G-closure family against C(n-3, k-2).

    Diversity equals min over x of |F \\ F_x|, so ``diversity_lb`` is the exact value.
    """
    if n < 7 or k < 2 or k > n:
        raise DomainError(f"need n >= 7 and 2 <= k <= n; got n={n}, k={k}")
    inside, outside = lifted_missing_counts(g_closure_profile(), n, k)
    value = min(min(inside.values()), outside)
    target = binom(n - 3, k - 2)
    return Theorem3Certificate(value, target, value > target)
