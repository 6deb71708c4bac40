"""Set families over a ground set [n], stored as sorted tuples of bitmasks.

Element ``e`` of [n] (1-based) corresponds to bit ``e - 1``.  Masks are plain
Python ints; a :class:`Family` carries the ground-set size and keeps its
members strictly increasing by numeric mask value.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator

MAX_GROUND = 64


class DomainError(ValueError):
    """Arguments outside an operation's mathematical domain."""


class PreconditionError(ValueError):
    """Inputs violate a structural precondition (e.g. a donor family that is not intersecting)."""


class ResourceError(RuntimeError):
    """Request exceeds the explicit computation envelope of an operation."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(elements: Iterable[int]) -> int:
    """Bitmask of a collection of 1-based elements."""
    mask = 0
    for e in elements:
        if e < 1:
            raise DomainError(f"elements are 1-based, got {e}")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> list[int]:
    """Sorted 1-based elements of a mask."""
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def full_mask(n: int) -> int:
    return (1 << n) - 1


def _check_ground(n: int) -> None:
    if not 0 <= n <= MAX_GROUND:
        raise DomainError(f"ground set size must be in [0, {MAX_GROUND}], got {n}")


@dataclass(frozen=True)
class Family:
    """A canonical family of subsets of [ground_n]."""

    ground_n: int
    members: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        _check_ground(self.ground_n)
        limit = 1 << self.ground_n
        prev = -1
        for m in self.members:
            if m <= prev:
                raise DomainError("members must be strictly increasing")
            if m < 0 or m >= limit:
                raise DomainError(f"mask {m} has bits outside [{self.ground_n}]")
            prev = m

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "Family":
        return cls(n, tuple(sorted(set(masks))))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "Family":
        masks = []
        for s in sets:
            m = mask_of(s)
            if m >> n:
                raise DomainError(f"set {sorted(s)} not contained in [{n}]")
            masks.append(m)
        return cls.from_masks(n, masks)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        i = bisect_left(self.members, mask)  # type: ignore[arg-type]
        return i < len(self.members) and self.members[i] == mask

    def to_lists(self) -> list[list[int]]:
        """Members as sorted 1-based element lists, in canonical order."""
        return [elements_of(m) for m in self.members]

    def union(self, other: "Family") -> "Family":
        _same_ground(self, other)
        return Family.from_masks(self.ground_n, self.members + other.members)

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.to_lists())
        return f"Family(n={self.ground_n}, [{body}])"


def _same_ground(a: Family, b: Family) -> None:
    if a.ground_n != b.ground_n:
        raise DomainError(f"ground sets differ: {a.ground_n} vs {b.ground_n}")


def binom(n: int, k: int) -> int:
    """C(n, k) for n >= 0, with C(n, k) = 0 outside 0 <= k <= n."""
    if n < 0:
        raise DomainError(f"binom requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def iter_k_masks(n: int, k: int) -> Iterator[int]:
    """k-subsets of [n] as masks in increasing numeric order (Gosper's hack)."""
    if k == 0:
        yield 0
        return
    m = (1 << k) - 1
    limit = 1 << n
    while m < limit:
        yield m
        c = m & -m
        r = m + c
        m = (((r ^ m) >> 2) // c) | r


def enumerate_k_subsets(n: int, k: int) -> Family:
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    _check_ground(n)
    return Family(n, tuple(iter_k_masks(n, k)))


def all_subsets(n: int) -> Family:
    _check_ground(n)
    return Family(n, tuple(range(1 << n)))


def is_intersecting(family: Family) -> bool:
    """True iff every two members meet; a family holding the empty set is never intersecting."""
    members = family.members
    if members and members[0] == 0:
        return False
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if not a & b:
                return False
    return True


def are_cross_intersecting(a: Family, b: Family) -> bool:
    _same_ground(a, b)
    return all(x & y for x in a.members for y in b.members)


def are_disjoint_families(a: Family, b: Family) -> bool:
    _same_ground(a, b)
    return not set(a.members) & set(b.members)


def degree_profile(family: Family) -> dict[int, int]:
    """Map each element x of the ground set to |F_x|, the number of members containing x."""
    degrees = {x: 0 for x in range(1, family.ground_n + 1)}
    for m in family.members:
        for x in elements_of(m):
            degrees[x] += 1
    return degrees


def most_popular_element(family: Family) -> int | None:
    """Smallest element of maximum degree, or None for an empty ground set."""
    degrees = degree_profile(family)
    if not degrees:
        return None
    top = max(degrees.values())
    return min(x for x, d in degrees.items() if d == top)


def diversity(family: Family) -> int:
    """|F| minus the largest degree."""
    degrees = degree_profile(family)
    return len(family) - max(degrees.values(), default=0)
