"""Classical and unitary Ramanujan sums and their exact identity suite.

c_q(n) and c*_q(n) are computed arithmetically from prime-power formulas;
floating exponential sums exist only as oracles on the test side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import mangoldt, mangoldt_star, mobius, mu_star, phi_star, unitary_gcd
from .errors import DomainError
from .factor import factorize, is_prime
from .summation import KahanSum


@lru_cache(maxsize=None)
def ramanujan_c(q: int, n: int) -> int:
    """Classical Ramanujan sum c_q(n), multiplicative in q.

    Local values: c_{p^e}(n) is phi(p^e) when p^e divides n, -p^(e-1) when
    p^(e-1) is the exact power of p in gcd(n, p^e), and 0 otherwise.
    Equals sum_{d | gcd(n, q)} d * mu(q/d).
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    value = 1
    for p, e in factorize(q).pairs:
        nu = factorize(n).nu(p)
        if e <= nu:
            value *= p**e - p ** (e - 1)
        elif e == nu + 1:
            value *= -(p**nu)
        else:
            return 0
    return value


@lru_cache(maxsize=None)
def unitary_c(q: int, n: int) -> int:
    """Unitary Ramanujan sum c*_q(n), multiplicative in q.

    Local values: c*_{p^e}(n) = p^e - 1 when p^e | n, else -1.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    value = 1
    for p, e in factorize(q).pairs:
        q_local = p**e
        value *= q_local - 1 if n % q_local == 0 else -1
    return value


@dataclass(frozen=True)
class RamanujanTable:
    """Values c_q(n) (or c*_q(n)) for fixed n and q = 1..q_max.

    Keyed by fixed n because expansion evaluation varies q in its inner loop.
    ``values[q - 1]`` holds the sum at index q.
    """

    kind: str
    n: int
    values: tuple[int, ...]

    @classmethod
    def build(cls, kind: str, n: int, q_max: int) -> "RamanujanTable":
        fn = _sum_function(kind)
        return cls(kind=kind, n=n, values=tuple(fn(q, n) for q in range(1, q_max + 1)))

    def __getitem__(self, q: int) -> int:
        return self.values[q - 1]


def _sum_function(kind: str):
    if kind == "classical":
        return ramanujan_c
    if kind == "unitary":
        return unitary_c
    raise DomainError(f"kind must be 'classical' or 'unitary', got {kind!r}")


_IDENTITY_NAMES = (
    "unitary-divisor-sum",  # sum_{d||q} c*_d(n) = q [q | n]
    "unitary-abs-identity",  # sum_{d||q} |c*_d(n)| = 2^omega(q/(n,q)*) (n,q)*
    "unitary-abs-inequality",  # sum_{d||q} |c*_d(n)| <= 2^omega(q) n
    "classical-abs-identity",  # sum_{d|q} |c_d(n)| = 2^omega(q/(n,q)) (n,q)
    "classical-abs-inequality",  # sum_{d|q} |c_d(n)| <= 2^omega(q) n
    "special-values",  # c*_q(q) = phi*(q), c*_q(1) = mu*(q), c_q(1) = mu(q)
    "squarefree-agreement",  # c*_q(n) = c_q(n) for squarefree q
)


@dataclass(frozen=True)
class IdentitySuiteReport:
    max_q: int
    max_n: int
    checks: int
    failures: tuple[tuple[str, int, int], ...]

    @property
    def passed(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, int]:
        out = {name: 0 for name in _IDENTITY_NAMES}
        for name, _, _ in self.failures:
            out[name] += 1
        return out


def identity_suite(max_q: int, max_n: int) -> IdentitySuiteReport:
    """Exact verification of the Ramanujan-sum identities for q <= max_q, n <= max_n.

    Checks the unitary divisor-sum identity, both absolute-value identities
    with their 2^omega inequalities, the special values at n = q and n = 1,
    and classical/unitary agreement on squarefree q.  Any failed identity is
    reported as (identity, q, n).
    """
    if max_q < 1 or max_n < 1:
        raise DomainError("bounds must be >= 1")
    failures: list[tuple[str, int, int]] = []
    checks = 0

    for q in range(1, max_q + 1):
        fq = factorize(q)
        udivs = fq.unitary_divisors()
        ddivs = fq.divisors()
        squarefree = fq.is_squarefree

        if unitary_c(q, q) != phi_star(q):
            failures.append(("special-values", q, q))
        if unitary_c(q, 1) != mu_star(q):
            failures.append(("special-values", q, 1))
        if ramanujan_c(q, 1) != mobius(q):
            failures.append(("special-values", q, 1))
        checks += 3

        for n in range(1, max_n + 1):
            u_signed = sum(unitary_c(d, n) for d in udivs)
            u_abs = sum(abs(unitary_c(d, n)) for d in udivs)
            c_abs = sum(abs(ramanujan_c(d, n)) for d in ddivs)
            ug = unitary_gcd(n, q)
            g = math.gcd(n, q)

            expected = q if n % q == 0 else 0
            if u_signed != expected:
                failures.append(("unitary-divisor-sum", q, n))
            if u_abs != (1 << factorize(q // ug).omega) * ug:
                failures.append(("unitary-abs-identity", q, n))
            if u_abs > (1 << fq.omega) * n:
                failures.append(("unitary-abs-inequality", q, n))
            if c_abs != (1 << factorize(q // g).omega) * g:
                failures.append(("classical-abs-identity", q, n))
            if c_abs > (1 << fq.omega) * n:
                failures.append(("classical-abs-inequality", q, n))
            checks += 5
            if squarefree:
                if unitary_c(q, n) != ramanujan_c(q, n):
                    failures.append(("squarefree-agreement", q, n))
                checks += 1

    return IdentitySuiteReport(
        max_q=max_q, max_n=max_n, checks=checks, failures=tuple(failures)
    )


def orthogonality_counterexample(p: int) -> int:
    """sum_{k=1}^{p^2} c*_p(k) c*_{p^2}(k) for prime p; equals p^2 (p - 1).

    Nonzero, so the unitary sums do not inherit the orthogonality of the
    classical Ramanujan sums.
    """
    if not is_prime(p):
        raise DomainError(f"p must be prime, got {p}")
    return sum(unitary_c(p, k) * unitary_c(p * p, k) for k in range(1, p * p + 1))


@dataclass(frozen=True)
class LambdaStarRow:
    n_terms: int
    unitary_partial: float
    unitary_target: float
    classical_partial: float
    classical_target: float


def _lambda_value(pair: tuple[int, int] | None, unitary: bool) -> float:
    if pair is None:
        return 0.0
    p, e = pair
    return e * math.log(p) if unitary else math.log(p)


def lambda_star_partial_sums(q: int, checkpoints: list[int]) -> list[LambdaStarRow]:
    """Partial sums of sum_n c*_q(n)/n against -Lambda*(q), plus the classical
    analogue sum_n c_q(n)/n against -Lambda(q) (Hoelder's evaluation).

    Exploratory only: the series converge slowly and no limit is asserted.
    Accumulation is compensated (Kahan).
    """
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    checkpoints = sorted(set(int(c) for c in checkpoints))
    if not checkpoints or checkpoints[0] < 1:
        raise DomainError("checkpoints must be positive integers")
    u_target = -_lambda_value(mangoldt_star(q), unitary=True)
    c_target = -_lambda_value(mangoldt(q), unitary=False)

    rows = []
    u_acc = KahanSum()
    c_acc = KahanSum()
    upto = 0
    for stop in checkpoints:
        for n in range(upto + 1, stop + 1):
            u_acc.add(unitary_c(q, n) / n)
            c_acc.add(ramanujan_c(q, n) / n)
        upto = stop
        rows.append(
            LambdaStarRow(
                n_terms=stop,
                unitary_partial=u_acc.total,
                unitary_target=u_target,
                classical_partial=c_acc.total,
                classical_target=c_target,
            )
        )
    return rows
