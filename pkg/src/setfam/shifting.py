"""(i, j)-shifting of families and compression of cross-intersecting pairs."""
from __future__ import annotations

from dataclasses import dataclass

from .core import DomainError, Family, _same_ground, binom, popcount


@dataclass(frozen=True)
class ShiftStep:
    """Replace ``from_elem`` by ``to_elem`` wherever the result is new to the family."""

    from_elem: int
    to_elem: int

    def __post_init__(self) -> None:
        if self.from_elem < 1 or self.to_elem < 1:
            raise DomainError("shift elements are 1-based")
        if self.from_elem == self.to_elem:
            raise DomainError("shift needs two distinct elements")


@dataclass(frozen=True)
class TraceProfile:
    window_t: int
    classes: dict[int, Family]


def shift_family(family: Family, step: ShiftStep) -> Family:
    n = family.ground_n
    if step.from_elem > n or step.to_elem > n:
        raise DomainError(f"shift {step.from_elem}->{step.to_elem} outside [{n}]")
    bi = 1 << (step.from_elem - 1)
    bj = 1 << (step.to_elem - 1)
    present = set(family.members)
    out = []
    for m in family.members:
        if m & bi and not m & bj:
            moved = (m ^ bi) | bj
            if moved not in present:
                out.append(moved)
                continue
        out.append(m)
    return Family.from_masks(n, out)


def shift_pair(a: Family, b: Family, step: ShiftStep) -> tuple[Family, Family]:
    _same_ground(a, b)
    return shift_family(a, step), shift_family(b, step)


def _compression_order(n: int) -> list[ShiftStep]:
    # i descending, j ascending, j < i
    return [ShiftStep(i, j) for i in range(n, 1, -1) for j in range(1, i)]


def compression_trace(a: Family, b: Family) -> tuple[Family, Family, list[ShiftStep]]:
    """Compress (a, b) to stability; also return the steps that changed something."""
    _same_ground(a, b)
    steps = _compression_order(a.ground_n)
    effective: list[ShiftStep] = []
    changed = True
    while changed:
        changed = False
        for step in steps:
            na, nb = shift_pair(a, b, step)
            if na != a or nb != b:
                effective.append(step)
                a, b = na, nb
                changed = True
    return a, b, effective


def compress_pair(a: Family, b: Family) -> tuple[Family, Family]:
    """Apply shifts toward smaller elements until every such shift fixes both families.

    Each effective shift lowers the total element sum, so the loop terminates.
    """
    a, b, _ = compression_trace(a, b)
    return a, b


def is_stable(family: Family) -> bool:
    return all(shift_family(family, s) == family for s in _compression_order(family.ground_n))


def element_sum(family: Family) -> int:
    total = 0
    for m in family.members:
        e = 1
        while m:
            if m & 1:
                total += e
            m >>= 1
            e += 1
    return total


def window_intersection_check(a: Family, b: Family, t: int) -> bool:
    """True iff every a in A, b in B share an element of [t]."""
    if t < 0 or t > a.ground_n:
        raise DomainError(f"window {t} outside [0, {a.ground_n}]")
    _same_ground(a, b)
    window = (1 << t) - 1
    return all(x & y & window for x in a.members for y in b.members)


def trace_profile(family: Family, t: int) -> TraceProfile:
    """Distinct traces F ∩ [t], grouped by cardinality."""
    if not 0 <= t <= family.ground_n:
        raise DomainError(f"window {t} outside [0, {family.ground_n}]")
    window = (1 << t) - 1
    groups: dict[int, set[int]] = {}
    for m in family.members:
        tr = m & window
        groups.setdefault(popcount(tr), set()).add(tr)
    classes = {i: Family.from_masks(t, groups[i]) for i in sorted(groups)}
    return TraceProfile(t, classes)


def trace_size_bound(profile: TraceProfile, n: int, k: int) -> int:
    """Σ_i |K_i| · C(n - t, k - i): an upper bound on |F| for k-uniform F over [n]."""
    t = profile.window_t
    return sum(len(cls) * binom(n - t, k - i) for i, cls in profile.classes.items())
