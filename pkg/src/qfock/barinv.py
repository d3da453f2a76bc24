"""The bar involution on the standard basis, solved from its operator axioms.

The involution is pinned down by four facts: it is semilinear (q -> q^-1 on
coefficients), it fixes the vacuum, it commutes with every e_i and f_i, and
bar(mu) - mu is supported on partitions of the same size strictly below mu
(inside the step-order down-set of mu).  Those facts translate, size by
size, into a linear system for the matrix of bar on each size class, which
is solved exactly over Z[q, q^-1] with fraction-free elimination.

Commutation with the e_i alone determines most columns; weight spaces that
outrun the operator-generated subspace (they exist: at n = 2 the size-4
class already does this) additionally need the f_i-commutation rows, which
couple the columns of a weight class.  The solver asserts that the combined
system has exactly one solution and fails loudly otherwise.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .laurent import ONE, ZERO, LaurentPoly, exact_div
from .partitions import Partition, partitions_of, residue
from .abacus import beta_set, jantzen_down_set
from .fock import FockContext, FockVector, apply_e, apply_f

Terms = Dict[Partition, LaurentPoly]


class BarSolveError(RuntimeError):
    """The axiom system failed to determine the involution uniquely."""


def _residue_counts(la: Partition, n: int) -> Tuple[int, ...]:
    counts = [0] * n
    for nd in la.cells():
        counts[residue(nd, n)] += 1
    return tuple(counts)


class _LinearSystem:
    """Fraction-free (Bareiss) elimination over Z[q, q^-1].

    Rows arrive incrementally as (sparse lhs, rhs) pairs; each is reduced
    against the pivot rows found so far with the two-term Bareiss recurrence,
    so all divisions are exact.  Inconsistent rows raise immediately.
    """

    def __init__(self, n_unknowns: int):
        self.n = n_unknowns
        self.pivots: List[Tuple[int, Dict[int, LaurentPoly], LaurentPoly, LaurentPoly, LaurentPoly]] = []
        # each pivot: (column, row, rhs, pivot value, previous pivot value)

    def rank(self) -> int:
        return len(self.pivots)

    def add_row(self, row: Dict[int, LaurentPoly], rhs: LaurentPoly):
        row = {c: v for c, v in row.items() if v}
        prev = ONE
        for col, prow, prhs, pval, _ in self.pivots:
            v = row.get(col, ZERO)
            new_row = {}
            for c in set(row) | set(prow):
                val = pval * row.get(c, ZERO) - v * prow.get(c, ZERO)
                if val:
                    new_row[c] = exact_div(val, prev)
            rhs = exact_div(pval * rhs - v * prhs, prev)
            row = new_row
            prev = pval
        if row:
            col = min(row)  # deterministic pivot choice
            self.pivots.append((col, row, rhs, row[col], prev))
        elif rhs:
            raise BarSolveError("inconsistent linear system (operator axioms violated)")

    def solve(self) -> List[LaurentPoly]:
        if self.rank() < self.n:
            raise BarSolveError(f"underdetermined system: rank {self.rank()} of {self.n}")
        x: List[Optional[LaurentPoly]] = [None] * self.n
        for col, row, rhs, pval, _ in sorted(self.pivots, key=lambda p: -p[0]):
            acc = rhs
            for c, v in row.items():
                if c != col:
                    if x[c] is None:
                        raise BarSolveError("pivot order failure")
                    acc = acc - v * x[c]
            x[col] = exact_div(acc, pval)
        return x  # type: ignore[return-value]


class BarTable:
    """Per-n memo of bar on standard basis vectors, grown size by size."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("bar table needs n >= 2")
        self.n = n
        self._bar: Dict[Partition, Terms] = {Partition(): {Partition(): ONE}}
        self._done = 0
        self._down_cache: Dict[Partition, List[Partition]] = {}

    # -- public surface ------------------------------------------------------

    def bar_of(self, la: Partition) -> Terms:
        self.ensure_size(la.size)
        return self._bar[la]

    def bar_terms(self, terms: Terms) -> Terms:
        """Semilinear extension of bar to a finitely supported vector."""
        out: Terms = {}
        for la, c in terms.items():
            cb = c.bar()
            for mu, r in self.bar_of(la).items():
                v = out.get(mu, ZERO) + cb * r
                if v:
                    out[mu] = v
                elif mu in out:
                    del out[mu]
        return out

    def bar_vector(self, v: FockVector) -> FockVector:
        if v.context.s % self.n:
            raise ValueError("bar table works at charge 0 mod n contexts")
        return FockVector(v.context, self.bar_terms(v.terms))

    def ensure_size(self, m: int):
        while self._done < m:
            self._solve_size(self._done + 1)
            self._done += 1

    # -- internals -------------------------------------------------------------

    def _down_strict(self, mu: Partition) -> List[Partition]:
        if mu not in self._down_cache:
            down = jantzen_down_set(beta_set(mu, 0), self.n)
            self._down_cache[mu] = sorted(
                (B.par() for B in down if B.par() != mu), reverse=True
            )
        return self._down_cache[mu]

    def _solve_size(self, m: int):
        ctx = FockContext(self.n, 0)
        classes: Dict[Tuple[int, ...], List[Partition]] = {}
        for la in partitions_of(m):
            classes.setdefault(_residue_counts(la, self.n), []).append(la)
        for key, mus in classes.items():
            pending = []
            for mu in mus:
                col = self._solve_column_by_e(ctx, mu)
                if col is None:
                    pending.append(mu)
                else:
                    self._bar[mu] = col
            if pending:
                self._solve_class_jointly(ctx, key, mus, m)

    def _e_rows(self, ctx: FockContext, mu: Partition, unknowns: List[Partition]):
        """Rows of the e-commutation system for one column, as
        (dict unknown-index -> coeff, rhs) pairs."""
        n = self.n
        images = [apply_e(i, FockVector.basis(ctx, la)) for la in unknowns for i in ()]
        rows = []
        e_of = {}
        for la in unknowns:
            e_of[la] = [apply_e(i, FockVector.basis(ctx, la)) for i in range(n)]
        vmu = FockVector.basis(ctx, mu)
        for i in range(n):
            e_mu = apply_e(i, vmu)
            rhs_vec = self.bar_terms(e_mu.terms)
            for ka, c in e_mu.terms.items():
                rhs_vec[ka] = rhs_vec.get(ka, ZERO) - c
            targets = set(rhs_vec)
            for la in unknowns:
                targets |= set(e_of[la][i].terms)
            for ka in targets:
                row = {
                    idx: e_of[la][i].coeff(ka)
                    for idx, la in enumerate(unknowns)
                    if e_of[la][i].coeff(ka)
                }
                rows.append((row, rhs_vec.get(ka, ZERO)))
        return rows

    def _solve_column_by_e(self, ctx: FockContext, mu: Partition) -> Optional[Terms]:
        unknowns = self._down_strict(mu)
        if not unknowns:
            return {mu: ONE}
        system = _LinearSystem(len(unknowns))
        for row, rhs in self._e_rows(ctx, mu, unknowns):
            system.add_row(row, rhs)
        try:
            sol = system.solve()
        except BarSolveError as exc:
            if "underdetermined" in str(exc):
                return None
            raise
        col: Terms = {mu: ONE}
        for la, c in zip(unknowns, sol):
            if c:
                col[la] = c
        return col

    def _solve_class_jointly(
        self, ctx: FockContext, key: Tuple[int, ...], mus: List[Partition], m: int
    ):
        index: Dict[Tuple[Partition, Partition], int] = {}
        per_mu: Dict[Partition, List[Partition]] = {}
        for mu in mus:
            per_mu[mu] = self._down_strict(mu)
            for la in per_mu[mu]:
                index[(la, mu)] = len(index)
        system = _LinearSystem(len(index))

        for mu in mus:
            unknowns = per_mu[mu]
            for row, rhs in self._e_rows(ctx, mu, unknowns):
                system.add_row(
                    {index[(unknowns[c], mu)]: v for c, v in row.items()}, rhs
                )

        # f-commutation rows couple the columns of the class
        n = self.n
        for x in partitions_of(m - 1):
            bar_x = self._bar[x]
            for i in range(n):
                fx = apply_f(i, FockVector.basis(ctx, x))
                if not fx.terms:
                    continue
                if _residue_counts(next(iter(fx.terms)), n) != key:
                    continue
                fbar = apply_f(i, FockVector(ctx, bar_x))
                targets = set(fbar.terms) | set(fx.terms)
                for mu, c in fx.terms.items():
                    targets |= set(per_mu[mu])
                for ka in targets:
                    row: Dict[int, LaurentPoly] = {}
                    for mu, c in fx.terms.items():
                        if (ka, mu) in index:
                            row[index[(ka, mu)]] = c.bar()
                    rhs = fbar.coeff(ka) - fx.coeff(ka).bar()
                    system.add_row(row, rhs)

        sol = system.solve()
        for mu in mus:
            col: Terms = {mu: ONE}
            for la in per_mu[mu]:
                c = sol[index[(la, mu)]]
                if c:
                    col[la] = c
            self._bar[mu] = col


_tables: Dict[int, BarTable] = {}


def bar_table(n: int) -> BarTable:
    if n not in _tables:
        _tables[n] = BarTable(n)
    return _tables[n]
