"""Partitions, Young-diagram nodes, residues, and the orders used on them.

Nodes are (row, col) pairs with rows and columns starting at 1; a node
(a, b) is "to the left of" (c, d) iff b < d.  The n-residue of (i, j) is
(j - i) mod n.  All residue shifts by the abacus charge live in the fock
module; everything here is unshifted.
"""

from __future__ import annotations

import re
from functools import total_ordering
from typing import Iterator, List, Sequence, Tuple

Node = Tuple[int, int]


@total_ordering
class Partition:
    """A weakly decreasing tuple of positive integers (trailing zeros dropped).

    Comparison is the lexicographic order on the zero-padded part sequences,
    which for stored tuples coincides with Python's tuple order; partitions
    of different sizes are comparable.
    """

    __slots__ = ("parts", "_hash")

    def __init__(self, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for i, p in enumerate(parts):
            if p <= 0:
                raise ValueError(f"parts must be positive, got {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "_hash", hash(parts))

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __lt__(self, other: "Partition") -> bool:
        return self.parts < other.parts

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Partition({self.parts!r})"

    def __str__(self) -> str:
        return self.to_text()

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """Row length lambda_i with the infinite-tail-of-zeros convention."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def contains(self, node: Node) -> bool:
        row, col = node
        return row >= 1 and 1 <= col <= self.part(row)

    def cells(self) -> Iterator[Node]:
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def add_node(self, node: Node) -> "Partition":
        row, col = node
        if col != self.part(row) + 1:
            raise ValueError(f"{node} is not at the end of row {row} of {self}")
        parts = list(self.parts)
        if row == len(parts) + 1:
            parts.append(1)
        elif row <= len(parts):
            parts[row - 1] += 1
        else:
            raise ValueError(f"{node} is not addable to {self}")
        return Partition(parts)

    def remove_node(self, node: Node) -> "Partition":
        row, col = node
        if col != self.part(row) or col == 0:
            raise ValueError(f"{node} is not at the end of a row of {self}")
        parts = list(self.parts)
        parts[row - 1] -= 1
        return Partition(parts)

    def to_text(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def to_json(self) -> list:
        return list(self.parts)

    @classmethod
    def from_json(cls, data) -> "Partition":
        return cls(data)


EMPTY = Partition()


def parse_partition(text: str) -> Partition:
    """Parse '(3,2,1)', '(3,1^2)', '()' or a bare comma list like '3,2,1'."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    body = body.strip()
    parts: List[int] = []
    if body:
        for token in body.split(","):
            token = token.strip()
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", token)
            if not m:
                raise ValueError(f"bad partition token {token!r} in {text!r}")
            val, mult = int(m.group(1)), int(m.group(2) or 1)
            parts.extend([val] * mult)
    return Partition(parts)


def residue(node: Node, n: int) -> int:
    """The n-residue (col - row) mod n of a node."""
    if n < 1:
        raise ValueError("modulus must be >= 1")
    row, col = node
    return (col - row) % n


def addable_nodes(la: Partition, n: int) -> List[Tuple[Node, int]]:
    """Addable nodes of la with their n-residues, listed left to right."""
    out = []
    rows = len(la.parts)
    for row in range(1, rows + 2):
        if la.part(row - 1) > la.part(row) or row == 1:
            node = (row, la.part(row) + 1)
            out.append((node, residue(node, n)))
    out.sort(key=lambda nr: nr[0][1])
    return out


def removable_nodes(la: Partition, n: int) -> List[Tuple[Node, int]]:
    """Removable nodes of la with their n-residues, listed left to right."""
    out = []
    for row in range(1, len(la.parts) + 1):
        if la.part(row) > la.part(row + 1):
            node = (row, la.part(row))
            out.append((node, residue(node, n)))
    out.sort(key=lambda nr: nr[0][1])
    return out


def normal_nodes(la: Partition, n: int, r: int) -> List[Node]:
    """Removable nodes of residue r passing the right-scan condition.

    A removable node is normal iff it, and every removable or addable node
    of the same residue to its right, sees at least as many removable as
    addable nodes of that residue strictly to its right.
    """
    r %= n
    rems = [nd for nd, res in removable_nodes(la, n) if res == r]
    adds = [nd for nd, res in addable_nodes(la, n) if res == r]

    def balance_ok(col: int) -> bool:
        n_rem = sum(1 for nd in rems if nd[1] > col)
        n_add = sum(1 for nd in adds if nd[1] > col)
        return n_rem >= n_add

    out = []
    for nd in rems:
        witnesses = [nd] + [x for x in rems + adds if x[1] > nd[1]]
        if all(balance_ok(x[1]) for x in witnesses):
            out.append(nd)
    out.sort(key=lambda x: x[1])
    return out


def node_count_bias(la: Partition, n: int, r: int) -> int:
    """Number of addable minus number of removable nodes of n-residue r."""
    r %= n
    n_add = sum(1 for _, res in addable_nodes(la, n) if res == r)
    n_rem = sum(1 for _, res in removable_nodes(la, n) if res == r)
    return n_add - n_rem


def rim_hook_cells(la: Partition, node: Node) -> List[Node]:
    """The rim hook of la with corner at node, as an explicit cell set."""
    a, b = node
    if not la.contains(node):
        raise ValueError(f"{node} is not a cell of {la}")
    cells = []
    for i in range(a, len(la.parts) + 1):
        lo = max(b, la.part(i + 1))
        for j in range(lo, la.part(i) + 1):
            if j >= 1:
                cells.append((i, j))
    return cells


def unwrap_rim_hook(la: Partition, node: Node) -> Tuple[Partition, int, int]:
    """Remove the rim hook cornered at node; return (result, size, leg sign).

    The leg sign is (-1)^(number of rows spanned minus one).
    """
    a, b = node
    if not la.contains(node):
        raise ValueError(f"{node} is not a cell of {la}")
    ell = max(i for i in range(1, len(la.parts) + 1) if la.part(i) >= b)
    size = (la.part(a) - b) + (ell - a) + 1
    parts = list(la.parts)
    new_rows = [la.part(i + 1) - 1 for i in range(a, ell)] + [b - 1]
    parts[a - 1:ell] = new_rows
    return Partition(parts), size, (-1) ** (ell - a)


def wrap_rim_hook(nu: Partition, node: Node, size: int) -> Partition:
    """Inverse of unwrap_rim_hook: wrap a hook of the given size at node."""
    a, b = node
    for ell in range(a, a + size + 1):
        first = b + size - 1 - (ell - a)
        rows = [first] + [nu.part(i - 1) + 1 for i in range(a + 1, ell + 1)]
        parts = list(nu.parts[:a - 1]) + rows + [nu.part(i) for i in range(ell + 1, len(nu.parts) + 2)]
        try:
            cand = Partition(parts)
        except ValueError:
            continue
        if cand.contains(node) and unwrap_rim_hook(cand, node)[:2] == (nu, size):
            return cand
    raise ValueError(f"no hook of size {size} at {node} wraps onto {nu}")


def n_core(la: Partition, n: int) -> Partition:
    """The n-core, computed by sliding abacus beads fully up their runners."""
    from . import abacus

    return abacus.core_beta_set(abacus.beta_set(la, 0), n).par()


def strip_first_rows(la: Partition, k: int) -> Partition:
    """Drop the k largest parts."""
    if not 0 <= k <= len(la.parts):
        raise ValueError(f"cannot strip {k} rows from {la}")
    return Partition(la.parts[k:])


def move_node_variants(mu: Partition, n: int, r: int) -> List[Partition]:
    """All partitions (other than mu itself) reachable by removing one
    removable node of residue r and adding back an addable node of residue r."""
    r %= n
    seen = set()
    for nd, res in removable_nodes(mu, n):
        if res != r:
            continue
        nu = mu.remove_node(nd)
        for nd2, res2 in addable_nodes(nu, n):
            if res2 != r:
                continue
            la = nu.add_node(nd2)
            if la != mu:
                seen.add(la)
    return sorted(seen, reverse=True)


def partitions_of(m: int, max_part: int = None) -> Iterator[Partition]:
    """All partitions of m in decreasing lexicographic order."""
    if m < 0:
        return
    if max_part is None:
        max_part = m

    def gen(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    for parts in gen(m, max_part):
        yield Partition(parts)


def partitions_up_to(m: int) -> Iterator[Partition]:
    """All partitions of every size 0..m, sizes ascending, dec-lex within."""
    for k in range(m + 1):
        yield from partitions_of(k)


def is_regular(la: Partition, n: int) -> bool:
    """True iff no part is repeated n or more times."""
    if n < 2:
        return not la.parts
    parts = la.parts
    run = 1
    for i in range(1, len(parts)):
        run = run + 1 if parts[i] == parts[i - 1] else 1
        if run >= n:
            return False
    return True
