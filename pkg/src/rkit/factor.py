"""Deterministic factorization of 64-bit integers.

Trial division by a precomputed prime table up to 2^16 handles desk-scale
inputs; anything that survives is split with deterministic Miller-Rabin and
Brent-cycle Pollard rho, so results are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .errors import DomainError

MAX_INPUT = (1 << 63) - 1

# Witnesses proving primality for every n < 3.3 * 10^24 (covers 64-bit range).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _sieve_primes(limit: int) -> tuple[int, ...]:
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
    return tuple(i for i, f in enumerate(flags) if f)


_SMALL_PRIMES = _sieve_primes(1 << 16)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 0 <= n < 2^64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of composite odd n (Brent's cycle variant).

    The polynomial increment c walks 1, 2, 3, ... so the search is
    deterministic; some c always succeeds for composite n.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, r, q = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")


@dataclass(frozen=True)
class Factorization:
    """Canonical prime-power decomposition of a positive integer.

    ``pairs`` lists (prime, exponent) with strictly increasing primes and all
    exponents >= 1; the empty tuple represents n = 1.
    """

    n: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def omega(self) -> int:
        """Number of distinct prime divisors."""
        return len(self.pairs)

    @property
    def big_omega(self) -> int:
        """Number of prime divisors counted with multiplicity."""
        return sum(e for _, e in self.pairs)

    def nu(self, p: int) -> int:
        """Exponent of the prime p in n (0 if p does not divide n)."""
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.pairs)

    def divisors(self) -> list[int]:
        """All positive divisors, ascending."""
        divs = [1]
        for p, e in self.pairs:
            divs = [d * p**j for d in divs for j in range(e + 1)]
        return sorted(divs)

    def unitary_divisors(self) -> list[int]:
        """Divisors d with gcd(d, n/d) = 1, ascending; exactly 2^omega of them."""
        divs = [1]
        for p, e in self.pairs:
            divs += [d * p**e for d in divs]
        return sorted(divs)


@lru_cache(maxsize=None)
def factorize(n: int) -> Factorization:
    """Factor n into prime powers; requires 1 <= n < 2^63."""
    if not 1 <= n <= MAX_INPUT:
        raise DomainError(f"factorize requires 1 <= n < 2^63, got {n}")
    remaining = n
    exponents: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > remaining:
            break
        while remaining % p == 0:
            exponents[p] = exponents.get(p, 0) + 1
            remaining //= p
    if remaining > 1:
        stack = [remaining]
        while stack:
            m = stack.pop()
            if m < _SMALL_PRIMES[-1] ** 2 or is_prime(m):
                exponents[m] = exponents.get(m, 0) + 1
                continue
            d = _brent_rho(m)
            stack.append(d)
            stack.append(m // d)
    # merge any repeated large primes found on the stack
    merged: dict[int, int] = {}
    probe = n
    for p in sorted(exponents):
        e = 0
        while probe % p == 0:
            probe //= p
            e += 1
        merged[p] = e
    return Factorization(n=n, pairs=tuple(sorted(merged.items())))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    return factorize(n).divisors()


def is_unitary_divisor(d: int, n: int) -> bool:
    """True when d | n and gcd(d, n/d) = 1."""
    return n % d == 0 and gcd(d, n // d) == 1


def unitary_divisors(n: int) -> list[int]:
    """Unitary divisors of n (d | n with gcd(d, n/d) = 1), ascending."""
    return factorize(n).unitary_divisors()
