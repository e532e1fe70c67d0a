"""Truncated Ramanujan expansions, coefficient series, and diagnostics.

Two truncation shapes are supported for
f(n_1, ..., n_k) ~ sum a(q_1, ..., q_k) c_{q_1}(n_1) ... c_{q_k}(n_k):

* ``box``: every q_i <= Q_max, cost Theta(Q_max^k) with precomputed tables;
* ``lcm``: all tuples with lcm(q_1, ..., q_k) <= Q_max, evaluated through the
  multiplicative grouped weight T_Q(n) so the cost is near-linear in Q_max.

Absolute convergence makes any exhaustion order valid; both shapes use a
fixed deterministic term order so reports are bit-reproducible.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable

import numpy as np

from .errors import BudgetError, DomainError
from .factor import factorize
from .families import Family, SymbolicValue
from .ramanujan import RamanujanTable, ramanujan_c, unitary_c
from .sieves import omega_table
from .summation import KahanSum, kahan_sum, reduce_range

DEFAULT_BUDGET = 20_000_000


@dataclass(frozen=True)
class TupleIndex:
    """Index tuple (q_1, ..., q_k) with its least common multiple Q."""

    q: tuple[int, ...]

    def __post_init__(self):
        q = tuple(int(v) for v in self.q)
        if not q or any(v < 1 for v in q):
            raise DomainError(f"index tuple entries must be positive, got {self.q}")
        object.__setattr__(self, "q", q)

    @property
    def k(self) -> int:
        return len(self.q)

    @property
    def Q(self) -> int:
        return math.lcm(*self.q)


@lru_cache(maxsize=262144)
def lcm_grouped_weight(kind: str, Q: int, ns: tuple[int, ...]) -> int:
    """T_Q(n) = sum over tuples with lcm(q_1, ..., q_k) = Q of prod c_{q_i}(n_i).

    Multiplicative in Q.  For p^e || Q the local factor sums over exponent
    tuples in [0, e]^k with max = e, computed as a difference of products of
    the one-dimensional prefix sums A_i(t) = sum_{v <= t} c_{p^v}(n_i).
    """
    if Q < 1:
        raise DomainError(f"Q must be positive, got {Q}")
    c = ramanujan_c if kind == "classical" else unitary_c
    if kind not in ("classical", "unitary"):
        raise DomainError(f"kind must be 'classical' or 'unitary', got {kind!r}")
    total = 1
    for p, e in factorize(Q).pairs:
        prefix = [1] * len(ns)  # A_i(0) = c_1(n_i) = 1
        below = 1
        for t in range(1, e + 1):
            if t == e:
                below = math.prod(prefix)  # product of A_i(e - 1)
            pt = p**t
            prefix = [a + c(pt, n) for a, n in zip(prefix, ns)]
        total *= math.prod(prefix) - below
    return total


@dataclass(frozen=True)
class TruncationReport:
    """Result of one truncated expansion evaluation."""

    family: str
    kind: str
    ns: tuple[int, ...]
    mode: str
    q_max: int
    partial: float
    lhs_exact: object
    nonzero_terms: int
    elapsed_s: float
    checkpoints: tuple[tuple[int, float], ...]

    @property
    def lhs(self) -> float:
        return float(self.lhs_exact)

    @property
    def abs_error(self) -> float:
        return abs(self.partial - self.lhs)

    @property
    def doubling_estimate(self) -> float:
        """|S(Q_max) - S(Q_half)| from the stored half-range checkpoint."""
        half = self.q_max // 2
        best = None
        for q, value in self.checkpoints:
            if q <= half and (best is None or q > best[0]):
                best = (q, value)
        if best is None:
            return abs(self.partial)
        return abs(self.partial - best[1])

    def checkpoint_errors(self) -> list[tuple[int, float]]:
        lhs = self.lhs
        return [(q, abs(v - lhs)) for q, v in self.checkpoints]


def _default_checkpoints(q_max: int, extra=()) -> list[int]:
    points = {q_max}
    for div in (8, 4, 2):
        if q_max // div >= 1:
            points.add(q_max // div)
    points.update(c for c in extra if 1 <= c <= q_max)
    return sorted(points)


def evaluate_expansion(
    family: Family,
    ns,
    q_max: int,
    mode: str = "lcm",
    budget: int = DEFAULT_BUDGET,
    checkpoints=(),
    workers: int | None = None,
) -> TruncationReport:
    """Truncated expansion of family.lhs(ns) with checkpointed partial sums.

    ``lcm`` mode sums a(Q) T_Q(n) for Q <= q_max; ``box`` mode sums the full
    index box max(q_i) <= q_max.  Raises BudgetError when the term count
    would exceed ``budget``.
    """
    ns = tuple(int(v) for v in ns)
    if len(ns) != family.k or any(v < 1 for v in ns):
        raise DomainError(f"need a positive {family.k}-tuple of n values, got {ns}")
    if q_max < 1:
        raise DomainError(f"q_max must be >= 1, got {q_max}")
    if mode not in ("lcm", "box"):
        raise DomainError(f"mode must be 'lcm' or 'box', got {mode!r}")

    started = time.perf_counter()
    points = _default_checkpoints(q_max, checkpoints)

    if mode == "lcm":
        if q_max > budget:
            raise BudgetError(f"lcm mode needs {q_max} terms, budget is {budget}")

        def term(Q: int) -> float:
            a = family.coefficient_value(Q)
            if a == 0.0:
                return 0.0
            return a * lcm_grouped_weight(family.kind, Q, ns)

        total, prefix = reduce_range(term, 1, q_max, points, workers)
        nonzero = sum(1 for Q in range(1, q_max + 1) if term(Q) != 0.0)
        marks = tuple((q, prefix[q]) for q in points)
    else:
        if q_max**family.k > budget:
            raise BudgetError(
                f"box mode needs {q_max ** family.k} terms, budget is {budget}"
            )
        tables = [
            RamanujanTable.build(family.kind, n, q_max) for n in ns
        ]

        def box_sum(limit: int) -> tuple[float, int]:
            acc = KahanSum()
            nonzero = 0
            for q_tuple in product(range(1, limit + 1), repeat=family.k):
                a = family.coefficient_value(math.lcm(*q_tuple))
                if a == 0.0:
                    continue
                w = 1
                for table, q in zip(tables, q_tuple):
                    w *= table[q]
                    if w == 0:
                        break
                if w == 0:
                    continue
                acc.add(a * w)
                nonzero += 1
            return acc.total, nonzero

        marks_list = []
        nonzero = 0
        total = 0.0
        for point in points:
            total, count = box_sum(point)
            marks_list.append((point, total))
            if point == q_max:
                nonzero = count
        marks = tuple(marks_list)

    elapsed = time.perf_counter() - started
    return TruncationReport(
        family=family.label,
        kind=family.kind,
        ns=ns,
        mode=mode,
        q_max=q_max,
        partial=total,
        lhs_exact=family.lhs(ns),
        nonzero_terms=nonzero,
        elapsed_s=elapsed,
        checkpoints=marks,
    )


def brute_force_lcm_sum(family: Family, ns, q_max: int) -> float:
    """Direct tuple enumeration over {lcm(q) <= q_max}; oracle for lcm mode."""
    ns = tuple(ns)
    table = {
        n: RamanujanTable.build(family.kind, n, q_max) for n in set(ns)
    }
    terms = []
    for q_tuple in product(range(1, q_max + 1), repeat=family.k):
        Q = math.lcm(*q_tuple)
        if Q > q_max:
            continue
        w = 1
        for n, q in zip(ns, q_tuple):
            w *= table[n][q]
        terms.append(family.coefficient_value(Q) * w)
    return kahan_sum(terms)


@dataclass(frozen=True)
class SeriesPartial:
    """Partial sum of a coefficient series with its error information."""

    value: float
    terms: int
    tail_bound: float | None
    doubling: float

    @property
    def rigorous(self) -> bool:
        return self.tail_bound is not None


def _tail_bound(majorant, k: int, Q: int, M: int) -> float | None:
    """Integral-test bound on |sum_{m>M} h(mQ) / (Q^k m^k)| given |h(n)| <= C n^alpha."""
    if majorant is None:
        return None
    C, alpha = majorant
    if alpha - k >= -1:
        return None
    return C * float(Q) ** (alpha - k) * M ** (alpha - k + 1) / (k - alpha - 1)


def coeff_gcd(
    transform: Callable[[int], object],
    k: int,
    q,
    M: int,
    majorant: tuple[float, float] | None = None,
) -> tuple[SeriesPartial, SeriesPartial]:
    """Coefficient series a and a* for g(gcd) from the transform h = mu * g.

    a    = Q^-k sum_{m <= M} h(mQ) / m^k
    a*   = same restricted to gcd(m, Q) = 1
    where Q = lcm(q).  With a registered majorant |h(n)| <= C n^alpha and
    alpha - k < -1 the tail bound is rigorous; otherwise only the doubling
    estimate is reported.
    """
    index = TupleIndex(tuple(q))
    if len(index.q) != k:
        raise DomainError(f"q must be a {k}-tuple, got {index.q}")
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    Q = index.Q
    scale = float(Q) ** -k
    half = M // 2

    results = []
    for unitary in (False, True):
        acc = KahanSum()
        at_half = 0.0
        count = 0
        for m in range(1, M + 1):
            if not unitary or math.gcd(m, Q) == 1:
                h = transform(m * Q)
                if h:
                    acc.add(float(h) / m**k)
                    count += 1
            if m == half:
                at_half = acc.total
        value = scale * acc.total
        doubling = abs(value - scale * at_half)
        results.append(
            SeriesPartial(
                value=value,
                terms=count,
                tail_bound=_tail_bound(majorant, k, Q, M),
                doubling=doubling,
            )
        )
    return results[0], results[1]


def coeff_series(family: Family, q, M: int) -> SeriesPartial:
    """Vectorized coefficient series for a family (kind picked by the family)."""
    index = TupleIndex(tuple(q))
    if len(index.q) != family.k:
        raise DomainError(f"q must be a {family.k}-tuple, got {index.q}")
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    Q = index.Q
    k = family.k
    h = family.transform_table(Q * M)
    m = np.arange(1, M + 1, dtype=np.int64)
    terms = h[Q * m] / m.astype(np.float64) ** k
    if family.kind == "unitary":
        terms = np.where(np.gcd(m, Q) == 1, terms, 0.0)
    scale = float(Q) ** -k
    value = scale * math.fsum(terms.tolist())
    half_value = scale * math.fsum(terms[: M // 2].tolist())
    return SeriesPartial(
        value=value,
        terms=int(np.count_nonzero(terms)),
        tail_bound=_tail_bound(family.majorant(), k, Q, M),
        doubling=abs(value - half_value),
    )


def coeff_generic(f, q, M: int) -> tuple[SeriesPartial, SeriesPartial]:
    """Generic coefficient partial sums (a, a*) for a k-variable function f.

    a  sums (mu_k * f)(m_1 q_1, ..., m_k q_k) / (m_1 q_1 ... m_k q_k) over the
    box m_i <= M; a* adds the constraints gcd(m_i, q_i) = 1.  Uses the
    function's transform when it exposes one, with the diagonal shortcut for
    gcd-type functions; otherwise falls back to k-dimensional Mobius
    inversion with memoization.
    """
    from .convolve import MultiVariableFunction, mobius_transform_k

    if not isinstance(f, MultiVariableFunction):
        raise DomainError("coeff_generic needs a MultiVariableFunction")
    q = tuple(int(v) for v in q)
    if len(q) != f.k or any(v < 1 for v in q):
        raise DomainError(f"q must be a positive {f.k}-tuple, got {q}")
    if M < 1:
        raise DomainError(f"M must be >= 1, got {M}")
    k = f.k

    if f.diagonal_transform is not None:
        # (mu_k * f) lives on the diagonal: only tuples with all m_i q_i equal
        # contribute, i.e. n = m_i q_i running over multiples of lcm(q).
        h = f.diagonal_transform
        L = math.lcm(*q)
        n_limit = M * min(q)
        half_limit = (M // 2) * min(q)
        results = []
        for unitary in (False, True):
            acc = KahanSum()
            at_half = 0.0
            count = 0
            for n in range(L, n_limit + 1, L):
                ms = [n // qi for qi in q]
                keep = not unitary or all(
                    math.gcd(m, qi) == 1 for m, qi in zip(ms, q)
                )
                if keep:
                    value = h(n)
                    if value:
                        acc.add(float(value) / float(n) ** k)
                        count += 1
                if n <= half_limit:
                    at_half = acc.total
            results.append(
                SeriesPartial(
                    value=acc.total,
                    terms=count,
                    tail_bound=None,
                    doubling=abs(acc.total - at_half),
                )
            )
        return results[0], results[1]

    transform = f.transform
    if transform is None:
        cache: dict[tuple[int, ...], object] = {}

        def transform(ds: tuple[int, ...]):
            value = cache.get(ds)
            if value is None:
                value = mobius_transform_k(f, ds)
                cache[ds] = value
            return value

    half = M // 2
    results = []
    for unitary in (False, True):
        acc = KahanSum()
        half_acc = KahanSum()
        count = 0
        for ms in product(range(1, M + 1), repeat=k):
            if unitary and any(math.gcd(m, qi) != 1 for m, qi in zip(ms, q)):
                continue
            ds = tuple(m * qi for m, qi in zip(ms, q))
            value = transform(ds)
            if value:
                term = float(value) / math.prod(ds)
                acc.add(term)
                count += 1
                if all(m <= half for m in ms):
                    half_acc.add(term)
        results.append(
            SeriesPartial(
                value=acc.total,
                terms=count,
                tail_bound=None,
                doubling=abs(acc.total - half_acc.total),
            )
        )
    return results[0], results[1]


def coeff_closed(family: Family, q) -> SymbolicValue:
    """Closed coefficient form for a family at an index tuple."""
    return family.closed_coefficient(tuple(q))


def mean_value_estimate(family: Family, x: int) -> float:
    """Box average x^-k sum of family.lhs over n tuples with entries <= x.

    Uses g(gcd(n_1, ..., n_k)) = sum over common divisors d of h(d), so the
    k-dimensional sum collapses to sum_{d <= x} h(d) floor(x/d)^k.
    """
    if x < 1:
        raise DomainError(f"x must be >= 1, got {x}")
    x = int(x)
    h = family.transform_table(x)
    d = np.arange(1, x + 1, dtype=np.int64)
    boxes = (x // d).astype(np.float64) ** family.k
    return math.fsum((h[1:] * boxes).tolist()) / float(x) ** family.k


@dataclass(frozen=True)
class ConditionReport:
    """Partial sums of the 2^omega-weighted convergence condition."""

    n_max: int
    partials: tuple[tuple[int, float], ...]  # at N//4, N//2, N
    growing: bool

    @property
    def value(self) -> float:
        return self.partials[-1][1]


def check_condition(source, k: int, n_max: int) -> ConditionReport:
    """Partial sum of sum_n 2^(k omega(n)) |h(n)| / n^k with a growth flag.

    ``source`` is a Family or a callable transform h = mu * g.  The flag
    compares the last two doubling increments: still growing suggests the
    condition sum diverges and the expansion hypothesis fails.  No
    convergence theorem is asserted either way.
    """
    if n_max < 4:
        raise DomainError(f"n_max must be >= 4, got {n_max}")
    if isinstance(source, Family):
        h = source.transform_table(n_max)[: n_max + 1].astype(np.float64)
    else:
        h = np.zeros(n_max + 1)
        for n in range(1, n_max + 1):
            h[n] = float(source(n))
    w = omega_table(n_max).astype(np.float64)
    n = np.arange(n_max + 1, dtype=np.float64)
    n[0] = 1.0
    terms = 2.0 ** (k * w) * np.abs(h) / n**k
    terms[0] = 0.0

    cum = np.cumsum(terms)
    quarter, half = n_max // 4, n_max // 2
    s_quarter, s_half, s_full = cum[quarter], cum[half], cum[n_max]
    growing = (s_full - s_half) > (s_half - s_quarter)
    return ConditionReport(
        n_max=n_max,
        partials=((quarter, float(s_quarter)), (half, float(s_half)), (n_max, float(s_full))),
        growing=bool(growing),
    )
