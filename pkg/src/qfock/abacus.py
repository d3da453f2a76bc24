"""Bead sets (beta-numbers), the n-abacus, runner sections and block data.

A BetaSet models a subset B of Z that is cofinite below and finite above:
it stores the smallest gap (``floor``) plus the finite set of beads at or
above it; every integer below the floor is implicitly a bead.  The charge
is |N0 and B| - |Z<0 minus B| = floor + #explicit beads.

On the n-abacus, position i*n + j sits on row i (increasing downward) and
runner j.  A runner tuple (n_1, ..., n_r) groups the runners into sections;
bead counts per (row, section) form the block signature that indexes the
parabolic blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .partitions import Partition


class SearchDepthExceeded(RuntimeError):
    """A bounded reachability search ran out of budget before deciding."""


class BetaSet:
    """Canonical bead set: smallest-gap floor plus explicit beads above it."""

    __slots__ = ("floor", "beads", "_hash")

    def __init__(self, floor: int, beads: Iterable[int] = ()):
        explicit = {b for b in beads if b >= floor}
        f = floor
        while f in explicit:
            explicit.discard(f)
            f += 1
        object.__setattr__(self, "floor", f)
        object.__setattr__(self, "beads", frozenset(explicit))
        object.__setattr__(self, "_hash", hash((f, self.beads)))

    def __setattr__(self, name, value):
        raise AttributeError("BetaSet is immutable")

    # -- basics -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BetaSet)
            and self.floor == other.floor
            and self.beads == other.beads
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        shown = sorted(self.beads, reverse=True)
        return f"BetaSet(floor={self.floor}, beads={shown})"

    def __contains__(self, x: int) -> bool:
        return x < self.floor or x in self.beads

    @property
    def charge(self) -> int:
        return self.floor + len(self.beads)

    def max_bead(self) -> int:
        return max(self.beads) if self.beads else self.floor - 1

    def sorted_beads_desc(self) -> List[int]:
        return sorted(self.beads, reverse=True)

    # -- dictionary with partitions ------------------------------------------

    @classmethod
    def vacuum(cls, s: int = 0) -> "BetaSet":
        return cls(s)

    def par(self) -> Partition:
        s = self.charge
        parts = []
        for i, b in enumerate(self.sorted_beads_desc(), start=1):
            parts.append(b + i - s)
        return Partition(parts)

    def move_bead(self, frm: int, to: int) -> "BetaSet":
        if frm not in self:
            raise ValueError(f"no bead at {frm}")
        if to in self:
            raise ValueError(f"position {to} is occupied")
        return self.replace(removes=(frm,), adds=(to,))

    def replace(self, removes: Iterable[int] = (), adds: Iterable[int] = ()) -> "BetaSet":
        removes = set(removes)
        adds = set(adds)
        base = min([self.floor] + [x for x in removes | adds]) - 1
        explicit = set(self.beads) | set(range(base, self.floor))
        for x in removes:
            if x not in explicit:
                raise ValueError(f"no bead at {x}")
            explicit.discard(x)
        for x in adds:
            if x in explicit:
                raise ValueError(f"position {x} is occupied")
            explicit.add(x)
        return BetaSet(base, explicit)

    def to_json(self) -> dict:
        return {"floor": self.floor, "beads": sorted(self.beads)}

    @classmethod
    def from_json(cls, data) -> "BetaSet":
        return cls(int(data["floor"]), [int(b) for b in data["beads"]])


def beta_set(la: Partition, s: int) -> BetaSet:
    """The bead set {la_i + s - i : i >= 1}."""
    explicit = {la.part(i) + s - i for i in range(1, len(la.parts) + 1)}
    return BetaSet(s - len(la.parts), explicit)


def par(B: BetaSet) -> Partition:
    return B.par()


def charge(B: BetaSet) -> int:
    return B.charge


# -- runner tuples and sections ------------------------------------------------


@dataclass(frozen=True)
class RunnerTuple:
    """A composition (n_1, ..., n_r) of n grouping the runners into sections."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"runner tuple needs positive entries, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    def sigma(self, j: int) -> int:
        """Prefix sum sigma_j = n_1 + ... + n_j (sigma_0 = 0)."""
        return sum(self.parts[:j])

    def section_of_runner(self, runner: int) -> int:
        """1-based section index containing the given runner 0..n-1."""
        acc = 0
        for j, p in enumerate(self.parts, start=1):
            acc += p
            if runner < acc:
                return j
        raise ValueError(f"runner {runner} out of range for {self}")

    def to_json(self) -> list:
        return list(self.parts)


def row_window(B: BetaSet, n: int) -> Tuple[int, int]:
    """Rows [lo, hi] outside of which the abacus is vacuum (full above lo,
    empty below hi); hi may be lo - 1 for an exact vacuum."""
    lo = B.floor // n
    hi = max(B.beads) // n if B.beads else lo - 1
    return lo, max(hi, lo - 1)


def section_set(B: BetaSet, nt: RunnerTuple, i: int, j: int) -> FrozenSet[int]:
    """Normalized bead positions of section (row i, section j), a subset of
    {0, ..., n_j - 1}."""
    n = nt.n
    base = i * n + nt.sigma(j - 1)
    return frozenset(x - base for x in range(base, base + nt.parts[j - 1]) if x in B)


def section_sets(
    B: BetaSet, nt: RunnerTuple, rows: Optional[Iterable[int]] = None
) -> Dict[Tuple[int, int], FrozenSet[int]]:
    """Section sets over the given rows (default: the non-vacuum window)."""
    if rows is None:
        lo, hi = row_window(B, nt.n)
        rows = range(lo, hi + 1)
    return {
        (i, j): section_set(B, nt, i, j)
        for i in rows
        for j in range(1, nt.r + 1)
    }


class BlockSignature:
    """Bead counts per (row, section), stored as deviations from the vacuum
    (sections full for rows < 0, empty for rows >= 0)."""

    __slots__ = ("runner_tuple", "deviations", "_hash")

    def __init__(self, nt: RunnerTuple, counts: Dict[Tuple[int, int], int]):
        dev = {}
        for (i, j), c in counts.items():
            nj = nt.parts[j - 1]
            if not 0 <= c <= nj:
                raise ValueError(f"count {c} out of range for section {j} of {nt}")
            if c != (nj if i < 0 else 0):
                dev[(i, j)] = c
        items = tuple(sorted(dev.items()))
        object.__setattr__(self, "runner_tuple", nt)
        object.__setattr__(self, "deviations", items)
        object.__setattr__(self, "_hash", hash((nt.parts, items)))

    def __setattr__(self, name, value):
        raise AttributeError("BlockSignature is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BlockSignature)
            and self.runner_tuple == other.runner_tuple
            and self.deviations == other.deviations
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"BlockSignature({self.runner_tuple.parts}, {dict(self.deviations)})"

    def count(self, i: int, j: int) -> int:
        for (di, dj), c in self.deviations:
            if (di, dj) == (i, j):
                return c
        return self.runner_tuple.parts[j - 1] if i < 0 else 0

    @property
    def charge(self) -> int:
        s = 0
        for (i, j), c in self.deviations:
            nj = self.runner_tuple.parts[j - 1]
            s += c if i >= 0 else c - nj
        return s

    def compare(self, other: "BlockSignature") -> Optional[int]:
        """Total order on signatures of equal charge: compare the counts at
        the last (row, then section) position where they differ.  Returns
        None for signatures of different charge (incomparable)."""
        if self.runner_tuple != other.runner_tuple:
            raise ValueError("signatures over different runner tuples")
        if self.charge != other.charge:
            return None
        keys = {k for k, _ in self.deviations} | {k for k, _ in other.deviations}
        diffs = [k for k in keys if self.count(*k) != other.count(*k)]
        if not diffs:
            return 0
        top = max(diffs)
        return 1 if self.count(*top) > other.count(*top) else -1

    def to_json(self) -> dict:
        return {
            "runner_tuple": self.runner_tuple.to_json(),
            "deviations": [[i, j, c] for (i, j), c in self.deviations],
        }


def block_signature(B: BetaSet, nt: RunnerTuple) -> BlockSignature:
    lo, hi = row_window(B, nt.n)
    counts = {
        (i, j): len(section_set(B, nt, i, j))
        for i in range(lo, hi + 1)
        for j in range(1, nt.r + 1)
    }
    sig = BlockSignature(nt, counts)
    assert sig.charge == B.charge
    return sig


def base_beta_set(t: BlockSignature) -> BetaSet:
    """The bead set whose every section is left-packed with t's counts."""
    nt = t.runner_tuple
    n = nt.n
    rows = [i for (i, _), _ in t.deviations]
    lo = min(rows + [0])
    hi = max(rows + [-1])
    beads = set()
    for i in range(lo, hi + 1):
        for j in range(1, nt.r + 1):
            base = i * n + nt.sigma(j - 1)
            beads.update(range(base, base + t.count(i, j)))
    return BetaSet(lo * n, beads)


def base_partition(t: BlockSignature) -> Partition:
    return base_beta_set(t).par()


# -- Jantzen order ---------------------------------------------------------------


def jantzen_successors(B: BetaSet, n: int) -> List[BetaSet]:
    """All single-step moves B -> B';  a bead at a goes up i rows while a
    bead at b goes down i rows, subject to a > b + i*n with all four
    positions distinct and the targets vacant."""
    out = []
    if not B.beads:
        return out
    floor = B.floor
    top = max(B.beads)
    imax = (top - floor) // n
    for i in range(1, imax + 1):
        step = i * n
        ups = [a for a in B.beads if a - step not in B]
        downs = [b for b in (set(B.beads) | set(range(floor - step, floor))) if b in B and b + step not in B]
        for a in ups:
            for b in downs:
                if a > b + step and a - step != b + step and a != b:
                    out.append(B.replace(removes={a, b}, adds={a - step, b + step}))
    return out


def jantzen_geq(B: BetaSet, C: BetaSet, n: int, max_depth: Optional[int] = None) -> bool:
    """Exact reachability B ->_n ... ->_n C.  Raises SearchDepthExceeded if a
    depth budget is given and exhausted before the search decides."""
    if B == C:
        return True
    if B.charge != C.charge or B.par().size != C.par().size:
        return False
    seen = {B}
    frontier = [B]
    depth = 0
    while frontier:
        if max_depth is not None and depth >= max_depth:
            raise SearchDepthExceeded(f"no decision within depth {max_depth}")
        depth += 1
        nxt = []
        for x in frontier:
            for y in jantzen_successors(x, n):
                if y == C:
                    return True
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return False


def jantzen_down_set(B: BetaSet, n: int) -> Set[BetaSet]:
    """All bead sets reachable from B, including B itself."""
    seen = {B}
    frontier = [B]
    while frontier:
        nxt = []
        for x in frontier:
            for y in jantzen_successors(x, n):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def jantzen_geq_partitions(la: Partition, mu: Partition, n: int) -> bool:
    return jantzen_geq(beta_set(la, 0), beta_set(mu, 0), n)


def jantzen_down_partitions(mu: Partition, n: int) -> Set[Partition]:
    return {B.par() for B in jantzen_down_set(beta_set(mu, 0), n)}


# -- runner splitting ----------------------------------------------------------


def split_charges(t: BlockSignature) -> List[int]:
    """Component charges s_j = sum_{i>=0} t(i,j) + sum_{i<0} (t(i,j) - n_j)."""
    nt = t.runner_tuple
    out = []
    for j in range(1, nt.r + 1):
        s = 0
        for (i, dj), c in t.deviations:
            if dj == j:
                s += c if i >= 0 else c - nt.parts[j - 1]
        out.append(s)
    return out


def runner_split(B: BetaSet, nt: RunnerTuple) -> List[Tuple[BetaSet, int]]:
    """Read each runner section as its own n_j-abacus, preserving rows.

    Returns [(B_j, s_j)] with charge(B_j) = s_j and sum of charges equal to
    the charge of B.
    """
    lo, hi = row_window(B, nt.n)
    out = []
    for j in range(1, nt.r + 1):
        nj = nt.parts[j - 1]
        beads = set()
        for i in range(lo, hi + 1):
            for x in section_set(B, nt, i, j):
                beads.add(x + i * nj)
        Bj = BetaSet(lo * nj, beads)
        out.append((Bj, Bj.charge))
    sig = block_signature(B, nt)
    assert [c for _, c in out] == split_charges(sig)
    assert sum(c for _, c in out) == B.charge
    return out


def runner_merge(components: Sequence[BetaSet], nt: RunnerTuple) -> BetaSet:
    """Interleave component abaci back into a single n-abacus."""
    if len(components) != nt.r:
        raise ValueError("component count does not match the runner tuple")
    n = nt.n
    lows, highs = [], []
    for Bj, nj in zip(components, nt.parts):
        lo_j, hi_j = row_window(Bj, nj)
        lows.append(lo_j)
        highs.append(hi_j)
    lo, hi = min(lows), max(highs)
    beads = set()
    for j, (Bj, nj) in enumerate(zip(components, nt.parts), start=1):
        for i in range(lo, hi + 1):
            for x in range(nj):
                if i * nj + x in Bj:
                    beads.add(i * n + nt.sigma(j - 1) + x)
    return BetaSet(lo * n, beads)


# -- core and rendering ---------------------------------------------------------


def core_beta_set(B: BetaSet, n: int) -> BetaSet:
    """Slide all beads up their runners as far as possible."""
    lo, hi = row_window(B, n)
    beads = set()
    for runner in range(n):
        count = sum(1 for i in range(lo, hi + 1) if i * n + runner in B)
        beads.update((lo + k) * n + runner for k in range(count))
    return BetaSet(lo * n, beads)


def render_abacus(
    B: BetaSet,
    n: int,
    runners: Optional[RunnerTuple] = None,
    rows: Optional[Tuple[int, int]] = None,
) -> str:
    """Fixed-width text picture: rows ascend downward, runners 0..n-1."""
    if rows is None:
        lo, hi = row_window(B, n)
        rows = (lo - 1, hi + 1)
    lo, hi = rows
    breaks = {runners.sigma(j) for j in range(1, runners.r)} if runners else set()
    label_w = max(len(str(lo)), len(str(hi)), 2)

    def line(label: str, cells: List[str]) -> str:
        body = ""
        for j, cell in enumerate(cells):
            if j in breaks:
                body += " |"
            body += f" {cell:>2}"
        return f"{label:>{label_w}} " + body

    out = [line("", [str(j) for j in range(n)])]
    for i in range(lo, hi + 1):
        cells = ["O" if i * n + j in B else "." for j in range(n)]
        out.append(line(str(i), cells))
    return "\n".join(out)
