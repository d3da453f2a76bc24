"""The level-one Fock space and its quantum affine operator action.

Vectors are finitely supported Laurent-coefficient combinations of
partitions inside a fixed (n, s) context.  The operator f_i adds a node of
residue (i - s) mod n with exponent counting addable-minus-removable nodes
of that residue strictly to the right of the added node; e_i removes one
with the left-hand count negated; K_i scales by the addable/removable bias.

The same action exists directly on bead sets (beads move x-1 -> x on the
residue-i runner with bead/gap counting exponents); the two formulations
must agree under the beta_s dictionary and the test suite enforces that.

The residue shift by s happens here and only here: the partitions module
never sees s.  Note the K operators also use the shifted residue; with the
unshifted one the defining commutator [e_i, f_i] fails for s not divisible
by n (witness: the empty partition at n = 2, s = 1, i = 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .laurent import (
    ONE,
    ZERO,
    LaurentPoly,
    exact_div,
    quantum_binom,
    quantum_factorial,
)
from .partitions import (
    Partition,
    addable_nodes,
    node_count_bias,
    partitions_of,
    removable_nodes,
)
from .abacus import BetaSet


@dataclass(frozen=True)
class FockContext:
    n: int
    s: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Fock context needs n >= 1")


class FockVector:
    """Finitely supported map Partition -> LaurentPoly in a fixed context."""

    __slots__ = ("context", "terms", "_hash")

    def __init__(self, context: FockContext, terms: Dict[Partition, LaurentPoly] = None):
        clean = {la: c for la, c in (terms or {}).items() if c}
        object.__setattr__(self, "context", context)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("FockVector is immutable")

    @classmethod
    def basis(cls, context: FockContext, la: Partition) -> "FockVector":
        return cls(context, {la: ONE})

    @classmethod
    def vacuum(cls, context: FockContext) -> "FockVector":
        return cls.basis(context, Partition())

    @classmethod
    def zero(cls, context: FockContext) -> "FockVector":
        return cls(context, {})

    def _check(self, other: "FockVector"):
        if self.context != other.context:
            raise ValueError(f"context mismatch: {self.context} vs {other.context}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FockVector)
            and self.context == other.context
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.context, tuple(sorted(self.terms.items(), key=lambda t: t[0].parts))))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        d = dict(self.terms)
        for la, c in other.terms.items():
            d[la] = d.get(la, ZERO) + c
        return FockVector(self.context, d)

    def __sub__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        d = dict(self.terms)
        for la, c in other.terms.items():
            d[la] = d.get(la, ZERO) - c
        return FockVector(self.context, d)

    def __neg__(self) -> "FockVector":
        return self.scale(-1)

    def scale(self, c) -> "FockVector":
        return FockVector(self.context, {la: v * c for la, v in self.terms.items()})

    def coeff(self, la: Partition) -> LaurentPoly:
        return self.terms.get(la, ZERO)

    def support(self) -> List[Partition]:
        return sorted(self.terms, reverse=True)

    def top(self) -> Partition:
        """Largest supported partition in lexicographic order."""
        if not self.terms:
            raise ValueError("zero vector has no top term")
        return max(self.terms)

    def support_sizes(self) -> set:
        return {la.size for la in self.terms}

    def bar_coeffs(self) -> "FockVector":
        """Apply q -> q^-1 to every coefficient (the semilinear half of bar)."""
        return FockVector(self.context, {la: c.bar() for la, c in self.terms.items()})

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*{la}" for la, c in sorted(self.terms.items(), key=lambda t: t[0].parts, reverse=True))
        return f"FockVector[n={self.context.n},s={self.context.s}]({body or '0'})"

    def to_json(self) -> dict:
        return {
            "n": self.context.n,
            "s": self.context.s,
            "terms": [[la.to_json(), c.to_json()] for la, c in sorted(self.terms.items(), key=lambda t: t[0].parts, reverse=True)],
        }


# -- partition-side action -------------------------------------------------------


def _right_bias(la: Partition, n: int, r: int, col: int) -> int:
    """Addable minus removable nodes of residue r strictly right of col."""
    n_add = sum(1 for nd, res in addable_nodes(la, n) if res == r and nd[1] > col)
    n_rem = sum(1 for nd, res in removable_nodes(la, n) if res == r and nd[1] > col)
    return n_add - n_rem


def _left_bias(la: Partition, n: int, r: int, col: int) -> int:
    """Addable minus removable nodes of residue r strictly left of col."""
    n_add = sum(1 for nd, res in addable_nodes(la, n) if res == r and nd[1] < col)
    n_rem = sum(1 for nd, res in removable_nodes(la, n) if res == r and nd[1] < col)
    return n_add - n_rem


def apply_f(i: int, v: FockVector) -> FockVector:
    """Add one node of residue (i - s) mod n to every term."""
    n, s = v.context.n, v.context.s
    r = (i - s) % n
    out: Dict[Partition, LaurentPoly] = {}
    for la, c in v.terms.items():
        for nd, res in addable_nodes(la, n):
            if res != r:
                continue
            mu = la.add_node(nd)
            w = c * LaurentPoly.q_power(_right_bias(la, n, r, nd[1]))
            out[mu] = out.get(mu, ZERO) + w
    return FockVector(v.context, out)


def apply_e(i: int, v: FockVector) -> FockVector:
    """Remove one node of residue (i - s) mod n from every term."""
    n, s = v.context.n, v.context.s
    r = (i - s) % n
    out: Dict[Partition, LaurentPoly] = {}
    for mu, c in v.terms.items():
        for nd, res in removable_nodes(mu, n):
            if res != r:
                continue
            la = mu.remove_node(nd)
            w = c * LaurentPoly.q_power(-_left_bias(la, n, r, nd[1]))
            out[la] = out.get(la, ZERO) + w
    return FockVector(v.context, out)


def apply_k(i: int, v: FockVector, sign: int = 1) -> FockVector:
    """Diagonal scaling by q^(+-bias) at the shifted residue (i - s) mod n."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n, s = v.context.n, v.context.s
    r = (i - s) % n
    out = {
        la: c * LaurentPoly.q_power(sign * node_count_bias(la, n, r))
        for la, c in v.terms.items()
    }
    return FockVector(v.context, out)


def divided_power_f(i: int, a: int, v: FockVector) -> FockVector:
    """f_i^(a) = f_i^a / [a]_q!, with the division checked to be exact."""
    if a < 0:
        raise ValueError("divided power needs a >= 0")
    w = v
    for _ in range(a):
        w = apply_f(i, w)
    fact = quantum_factorial(a)
    return FockVector(v.context, {la: exact_div(c, fact) for la, c in w.terms.items()})


# -- bead-set-side action ----------------------------------------------------------

BetaVector = Dict[BetaSet, LaurentPoly]


def _beads_above(B: BetaSet, x: int, residue: int, n: int) -> int:
    return sum(1 for y in B.beads if y > x and y % n == residue % n)


def _gaps_below(B: BetaSet, x: int, residue: int, n: int) -> int:
    count = 0
    for y in range(B.floor, x):
        if y not in B and y % n == residue % n:
            count += 1
    return count


def apply_f_beta(i: int, terms: BetaVector, n: int) -> BetaVector:
    """Bead formulation: move a bead x-1 -> x with x = i mod n."""
    out: BetaVector = {}
    for B, c in terms.items():
        # x-1 is either an explicit bead or the implicit bead just under the floor
        candidates = {b + 1 for b in B.beads}
        candidates.add(B.floor)
        for x in sorted(candidates):
            if x % n != i % n or x in B or (x - 1) not in B:
                continue
            C = B.move_bead(x - 1, x)
            exp = _beads_above(B, x, x - 1, n) - _beads_above(B, x, x, n)
            w = c * LaurentPoly.q_power(exp)
            out[C] = out.get(C, ZERO) + w
    return {B: c for B, c in out.items() if c}


def apply_e_beta(i: int, terms: BetaVector, n: int) -> BetaVector:
    """Bead formulation: move a bead x -> x-1 with x = i mod n."""
    out: BetaVector = {}
    for C, c in terms.items():
        # a movable bead is explicit: anything under the floor has a bead below it
        for x in sorted(C.beads):
            if x % n != i % n or x not in C or (x - 1) in C:
                continue
            B = C.move_bead(x, x - 1)
            exp = _gaps_below(B, x - 1, x - 1, n) - _gaps_below(B, x - 1, x, n)
            w = c * LaurentPoly.q_power(exp)
            out[B] = out.get(B, ZERO) + w
    return {B: c for B, c in out.items() if c}


def bead_bias(B: BetaSet, i: int, n: int) -> int:
    """Movable-gap minus movable-bead count on the residue-i runner."""
    lo = B.floor - 1
    hi = B.max_bead() + 1
    plus = sum(
        1
        for y in range(lo, hi + 2)
        if y % n == i % n and y not in B and (y - 1) in B
    )
    minus = sum(
        1
        for y in range(lo, hi + 2)
        if y % n == i % n and y in B and (y - 1) not in B
    )
    return plus - minus


def apply_k_beta(i: int, terms: BetaVector, n: int, sign: int = 1) -> BetaVector:
    return {
        B: c * LaurentPoly.q_power(sign * bead_bias(B, i, n))
        for B, c in terms.items()
    }


def to_beta_vector(v: FockVector) -> BetaVector:
    from .abacus import beta_set

    return {beta_set(la, v.context.s): c for la, c in v.terms.items()}


def from_beta_vector(terms: BetaVector, context: FockContext) -> FockVector:
    out: Dict[Partition, LaurentPoly] = {}
    for B, c in terms.items():
        if B.charge != context.s:
            raise ValueError(f"charge {B.charge} does not match context charge {context.s}")
        out[B.par()] = c
    return FockVector(context, out)


# -- defining relations as an executable check ---------------------------------------


def cartan_entry(n: int, i: int, j: int) -> int:
    """Cartan matrix of the affine type A ring with n nodes (n >= 2)."""
    if i == j:
        return 2
    d = (i - j) % n
    adj = (1 if d == 1 else 0) + (1 if d == n - 1 else 0)
    return -adj


def check_relations(context: FockContext, max_size: int, serre_max_size: int = None) -> dict:
    """Verify the commutator, K-conjugation, and q-Serre relations on every
    standard basis vector up to the given size.  Returns a report dict with
    an empty failure list on success."""
    n = context.n
    if n < 2:
        raise ValueError("relation checks need n >= 2")
    if serre_max_size is None:
        serre_max_size = max_size
    failures: List[str] = []
    checked = 0
    qm = LaurentPoly.q_power(1) - LaurentPoly.q_power(-1)

    for m in range(max_size + 1):
        for la in partitions_of(m):
            v = FockVector.basis(context, la)
            for i in range(n):
                for j in range(n):
                    checked += 1
                    lhs = apply_e(i, apply_f(j, v)) - apply_f(j, apply_e(i, v))
                    if i == j:
                        kk = apply_k(i, v, 1) - apply_k(i, v, -1)
                        rhs = FockVector(
                            context,
                            {mu: exact_div(c, qm) for mu, c in kk.terms.items()},
                        )
                    else:
                        rhs = FockVector.zero(context)
                    if lhs != rhs:
                        failures.append(f"commutator failed at la={la}, i={i}, j={j}")
                    # K-conjugation: K_i f_j K_i^- = q^{-a_ij} f_j
                    checked += 1
                    lhs2 = apply_k(i, apply_f(j, apply_k(i, v, -1)), 1)
                    rhs2 = apply_f(j, v).scale(
                        LaurentPoly.q_power(-cartan_entry(n, i, j))
                    )
                    if lhs2 != rhs2:
                        failures.append(f"K-conjugation failed at la={la}, i={i}, j={j}")

    for m in range(serre_max_size + 1):
        for la in partitions_of(m):
            v = FockVector.basis(context, la)
            for i in range(n):
                for j in range(n):
                    if i == j:
                        continue
                    checked += 1
                    mdeg = 1 - cartan_entry(n, i, j)
                    for op in (apply_e, apply_f):
                        acc = FockVector.zero(context)
                        for k in range(mdeg + 1):
                            w = v
                            for _ in range(k):
                                w = op(i, w)
                            w = op(j, w)
                            for _ in range(mdeg - k):
                                w = op(i, w)
                            term = w.scale(quantum_binom(mdeg, k) * ((-1) ** k))
                            acc = acc + term
                        if acc:
                            failures.append(
                                f"Serre ({op.__name__}) failed at la={la}, i={i}, j={j}"
                            )
    return {
        "suite": "relations",
        "parameters": {"n": n, "s": context.s, "max_size": max_size},
        "instances_checked": checked,
        "failures": failures,
    }
