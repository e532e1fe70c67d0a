"""One-variable arithmetic functions, exact over Python integers.

Classical functions (Mobius, totients, divisor sums, Liouville, von Mangoldt)
and their unitary-divisor analogues.  Everything multiplicative is evaluated
from the prime-power factorization; nothing here touches floats.
"""

from __future__ import annotations

from math import comb

from .errors import DomainError
from .factor import factorize


def _require_positive(n: int, name: str = "n") -> None:
    if n < 1:
        raise DomainError(f"{name} must be a positive integer, got {n}")


def mobius(n: int) -> int:
    """mu(n): (-1)^omega on squarefree n, 0 otherwise."""
    f = factorize(n)
    if not f.is_squarefree:
        return 0
    return -1 if f.omega % 2 else 1


def omega(n: int) -> int:
    """Number of distinct prime divisors of n."""
    return factorize(n).omega


def big_omega(n: int) -> int:
    """Number of prime divisors of n counted with multiplicity."""
    return factorize(n).big_omega


def liouville(n: int) -> int:
    """lambda(n) = (-1)^Omega(n)."""
    return -1 if factorize(n).big_omega % 2 else 1


def euler_phi(n: int) -> int:
    """Euler's totient."""
    value = 1
    for p, e in factorize(n).pairs:
        value *= p ** (e - 1) * (p - 1)
    return value


def jordan_phi(s: int, n: int) -> int:
    """Jordan totient phi_s(n) = n^s * prod_{p|n} (1 - p^-s), integer s >= 1."""
    if s < 1:
        raise DomainError(f"jordan_phi requires integer s >= 1, got {s}")
    value = 1
    for p, e in factorize(n).pairs:
        value *= p ** ((e - 1) * s) * (p**s - 1)
    return value


def sigma_s(s: int, n: int) -> int:
    """sigma_s(n) = sum of d^s over divisors d of n, integer s >= 0."""
    if s < 0:
        raise DomainError(f"sigma_s requires integer s >= 0, got {s}")
    value = 1
    for p, e in factorize(n).pairs:
        if s == 0:
            value *= e + 1
        else:
            value *= (p ** (s * (e + 1)) - 1) // (p**s - 1)
    return value


def tau(n: int) -> int:
    """Number of divisors of n."""
    return sigma_s(0, n)


def piltz_tau(m: int, n: int) -> int:
    """Piltz divisor function tau_m(n): ordered factorizations of n into m factors.

    Multiplicative with tau_m(p^e) = C(e + m - 1, m - 1).
    """
    if m < 1:
        raise DomainError(f"piltz_tau requires integer m >= 1, got {m}")
    value = 1
    for _, e in factorize(n).pairs:
        value *= comb(e + m - 1, m - 1)
    return value


def mangoldt(n: int) -> tuple[int, int] | None:
    """Von Mangoldt support: (p, e) when n = p^e, else None.

    Lambda(n) = log p on prime powers; the log is left to the caller so the
    exact layer stays float-free.
    """
    f = factorize(n)
    if f.omega != 1:
        return None
    return f.pairs[0]


def mu_star(n: int) -> int:
    """Unitary Mobius mu*(n) = (-1)^omega(n), inverse of 1 under unitary convolution."""
    return -1 if factorize(n).omega % 2 else 1


def sigma_star(n: int) -> int:
    """Sum of unitary divisors: multiplicative with sigma*(p^e) = p^e + 1."""
    value = 1
    for p, e in factorize(n).pairs:
        value *= p**e + 1
    return value


def tau_star(n: int) -> int:
    """Number of unitary divisors, 2^omega(n)."""
    return 1 << factorize(n).omega


def phi_star(n: int) -> int:
    """Unitary totient: multiplicative with phi*(p^e) = p^e - 1.

    Counts 1 <= k <= n whose unitary gcd with n is 1.
    """
    value = 1
    for p, e in factorize(n).pairs:
        value *= p**e - 1
    return value


def mangoldt_star(n: int) -> tuple[int, int] | None:
    """Unitary von Mangoldt support: (p, e) when n = p^e, else None.

    The function value on prime powers is e * log p, formed by the caller.
    """
    return mangoldt(n)


def unitary_gcd(k: int, n: int) -> int:
    """Largest d with d | k and d a unitary divisor of n.

    Multiplicative over the prime powers p^e || n: the local factor is p^e
    when p^e | k and 1 otherwise.
    """
    _require_positive(k, "k")
    value = 1
    for p, e in factorize(n).pairs:
        q = p**e
        if k % q == 0:
            value *= q
    return value


def chi4(n: int) -> int:
    """Nonprincipal character mod 4: 0 on evens, +1 if n = 1 (4), -1 if n = 3 (4)."""
    r = n % 4
    if r % 2 == 0:
        return 0
    return 1 if r == 1 else -1


def sum_of_two_squares_r(n: int) -> int:
    """Number of (x, y) in Z^2 with x^2 + y^2 = n, via 4 * sum_{d|n} chi4(d)."""
    _require_positive(n)
    return 4 * sum(chi4(d) for d in factorize(n).divisors())


def beta_s(s: int, n: int) -> int:
    """beta_s(n) = sum_{d|n} d^s * lambda(n/d), integer s >= 1.

    Multiplicative; on p^e the value is the alternating geometric sum
    p^(es) - p^((e-1)s) + ... +- 1.
    """
    if s < 1:
        raise DomainError(f"beta_s requires integer s >= 1, got {s}")
    value = 1
    for p, e in factorize(n).pairs:
        local = 0
        for j in range(e + 1):
            local += (-1) ** (e - j) * p ** (j * s)
        value *= local
    return value


def dedekind_psi_s(s: int, n: int) -> int:
    """Generalized Dedekind function psi_s(n) = n^s * prod_{p|n} (1 + p^-s), s >= 1."""
    if s < 1:
        raise DomainError(f"dedekind_psi_s requires integer s >= 1, got {s}")
    value = 1
    for p, e in factorize(n).pairs:
        value *= p ** ((e - 1) * s) * (p**s + 1)
    return value
