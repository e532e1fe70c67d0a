"""Convolution algebra: Dirichlet, unitary, and k-variable convolutions.

Arithmetic functions are plain callables n -> value.  Multiplicative functions
carry a local rule on prime powers and are evaluated as products over the
factorization; values stay exact (int / Fraction) unless a local rule itself
produces floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Callable

from .arith import mobius
from .errors import DomainError
from .factor import divisors, factorize, unitary_divisors


@dataclass(frozen=True)
class MultiplicativeFunction:
    """One-variable multiplicative function given by its prime-power values.

    ``local(p, e)`` is the value at p^e for e >= 1; the value at 1 is 1 and
    the value at n is the product of local values over the factorization.
    """

    local: Callable[[int, int], object]
    label: str = "f"

    def __call__(self, n: int):
        value = 1
        for p, e in factorize(n).pairs:
            value = value * self.local(p, e)
        return value


def dirichlet_convolve(f: Callable[[int], object], g: Callable[[int], object], n: int):
    """(f * g)(n) = sum over d | n of f(d) g(n/d)."""
    return sum(f(d) * g(n // d) for d in divisors(n))


def unitary_convolve(f: Callable[[int], object], g: Callable[[int], object], n: int):
    """(f x g)(n) = sum over unitary divisors d || n of f(d) g(n/d)."""
    return sum(f(d) * g(n // d) for d in unitary_divisors(n))


@dataclass(frozen=True)
class MultiVariableFunction:
    """Arithmetic function of k variables.

    ``evaluator`` maps a k-tuple of positive integers to a value.  When the
    function is multiplicative, ``local`` may give the value at
    (p^e1, ..., p^ek) for a prime p and exponents not all zero; the evaluator
    must then agree with the product of local values over all primes.

    ``transform`` optionally exposes the k-variable Mobius transform
    (mu_k * f) directly; ``diagonal_transform`` marks the special shape where
    (mu_k * f) vanishes off the diagonal and gives its one-variable values.
    Either speeds up coefficient computations but neither changes semantics.
    """

    k: int
    evaluator: Callable[[tuple[int, ...]], object]
    local: Callable[[int, tuple[int, ...]], object] | None = None
    transform: Callable[[tuple[int, ...]], object] | None = None
    diagonal_transform: Callable[[int], object] | None = None
    label: str = "f"

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"dimension k must be >= 1, got {self.k}")

    def _check(self, ns: tuple[int, ...]) -> tuple[int, ...]:
        ns = tuple(ns)
        if len(ns) != self.k:
            raise DomainError(f"expected a {self.k}-tuple, got {len(ns)} entries")
        if any(n < 1 for n in ns):
            raise DomainError(f"tuple entries must be positive, got {ns}")
        return ns

    def __call__(self, ns: tuple[int, ...]):
        return self.evaluator(self._check(ns))

    def eval_from_local(self, ns: tuple[int, ...]):
        """Evaluate through the prime-product formula; requires ``local``."""
        ns = self._check(ns)
        if self.local is None:
            raise DomainError(f"{self.label} has no local rule")
        primes = sorted({p for n in ns for p, _ in factorize(n).pairs})
        value = 1
        for p in primes:
            exps = tuple(factorize(n).nu(p) for n in ns)
            value = value * self.local(p, exps)
        return value


def gcd_function(
    g: Callable[[int], object],
    k: int,
    transform: Callable[[int], object] | None = None,
    label: str = "g(gcd)",
) -> MultiVariableFunction:
    """Lift a one-variable g to the k-variable function g(gcd(n_1, ..., n_k)).

    Its k-variable Mobius transform is diagonal: (mu_k * f)(n, ..., n) equals
    (mu * g)(n) and every off-diagonal value is 0, so ``transform`` (the
    one-variable mu * g, if known) is stored as the diagonal rule.
    """

    def evaluator(ns: tuple[int, ...]):
        return g(math.gcd(*ns)) if len(ns) > 1 else g(ns[0])

    return MultiVariableFunction(
        k=k, evaluator=evaluator, diagonal_transform=transform, label=label
    )


def mobius_transform_k(f: MultiVariableFunction, ns: tuple[int, ...]):
    """(mu_k * f)(n_1, ..., n_k): k-dimensional Mobius inversion of f.

    Sums mu(n_1/d_1) ... mu(n_k/d_k) f(d_1, ..., d_k) over divisor tuples.
    """
    ns = tuple(ns)
    divisor_lists = [divisors(n) for n in ns]
    total = 0
    for ds in product(*divisor_lists):
        sign = 1
        for n, d in zip(ns, ds):
            sign *= mobius(n // d)
            if sign == 0:
                break
        if sign:
            total += sign * f(ds)
    return total


def local_factors_of_transform(
    g: Callable[[int], object], p: int, e_max: int
) -> list[object]:
    """Values of (mu * g) at p^0, p^1, ..., p^e_max for multiplicative g.

    (mu * g)(1) = 1 and (mu * g)(p^e) = g(p^e) - g(p^(e-1)): these are the
    per-prime series terms of Euler-product coefficient formulas.
    """
    if e_max < 0:
        raise DomainError(f"e_max must be >= 0, got {e_max}")
    out: list[object] = [1]
    prev = 1
    for e in range(1, e_max + 1):
        cur = g(p**e)
        out.append(cur - prev)
        prev = cur
    return out
