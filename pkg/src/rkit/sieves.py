"""Sieved tables of multiplicative functions for n = 1..N.

Dense numpy arrays (index 0 unused) back the vectorized series partial sums
and the mean-value fast path; the exact per-value layer lives in arith.
"""

from __future__ import annotations

import numpy as np


def primes_upto(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.nonzero(flags)[0]


def mobius_table(n: int) -> np.ndarray:
    """mu(1..n) as int8."""
    mu = np.ones(n + 1, dtype=np.int8)
    for p in primes_upto(n):
        mu[p::p] *= -1
        sq = p * p
        if sq <= n:
            mu[sq::sq] = 0
    return mu


def omega_table(n: int) -> np.ndarray:
    """Number of distinct prime divisors of 1..n."""
    w = np.zeros(n + 1, dtype=np.int8)
    for p in primes_upto(n):
        w[p::p] += 1
    return w


def big_omega_table(n: int) -> np.ndarray:
    """Number of prime divisors with multiplicity of 1..n."""
    w = np.zeros(n + 1, dtype=np.int8)
    for p in primes_upto(n):
        pk = p
        while pk <= n:
            w[pk::pk] += 1
            pk *= p
    return w


def liouville_table(n: int) -> np.ndarray:
    """lambda(1..n) = (-1)^Omega."""
    return np.where(big_omega_table(n) % 2 == 0, 1, -1).astype(np.int8)


def divisor_count_table(n: int, m: int = 2) -> np.ndarray:
    """tau_m(1..n): m-fold Dirichlet convolution of the constant 1.

    m = 2 is the ordinary divisor count.
    """
    cur = np.ones(n + 1, dtype=np.int64)
    cur[0] = 0
    for _ in range(m - 1):
        nxt = np.zeros(n + 1, dtype=np.int64)
        for d in range(1, n + 1):
            nxt[d::d] += cur[d]
        cur = nxt
    return cur


def chi4_table(n: int) -> np.ndarray:
    """Nonprincipal character mod 4 on 1..n."""
    t = np.zeros(n + 1, dtype=np.int8)
    t[1::4] = 1
    t[3::4] = -1
    return t
