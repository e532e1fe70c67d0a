"""Expansion families: gcd-type arithmetic functions with known coefficients.

Each family bundles, for f(n_1, ..., n_k) = g(gcd(n_1, ..., n_k)):

* the exact left-hand side g (int or Fraction for integer s, float otherwise),
* the transform h = mu * g on which all coefficient series run,
* a majorant |h(n)| <= C n^alpha for rigorous tail bounds where one exists,
* the closed coefficient form, kept symbolic as rational * zeta/L atoms and
  evaluated to float only at report boundaries.

Coefficients of these expansions depend on the index tuple only through
Q = lcm(q_1, ..., q_k), which is what the lcm-grouped fast path exploits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import arith
from .errors import DomainError
from .factor import factorize, is_unitary_divisor
from .sieves import chi4_table, divisor_count_table, liouville_table, mobius_table
from .zeta import dirichlet_l_chi4, zeta

KINDS = ("classical", "unitary")
FAMILY_NAMES = ("sigma", "tau", "phi", "piltz", "r", "beta", "psi", "one")


@dataclass(frozen=True)
class SymbolicValue:
    """rational * product of zeta(arg)^exp and L(chi4, arg)^exp atoms."""

    rational: Fraction | float
    atoms: tuple[tuple[str, float, int], ...] = ()

    def value(self) -> float:
        v = float(self.rational)
        for name, arg, exp in self.atoms:
            base = zeta(arg) if name == "zeta" else dirichlet_l_chi4(arg)
            v *= base**exp
        return v

    def __str__(self) -> str:
        if self.rational == 0:
            return "0"
        parts = [str(self.rational)]
        for name, arg, exp in self.atoms:
            atom = f"zeta({arg})" if name == "zeta" else f"L(chi4,{arg})"
            parts.append(atom if exp == 1 else f"{atom}^{exp}")
        return " * ".join(parts)


SYMBOLIC_ZERO = SymbolicValue(Fraction(0))


def _as_arg(u: float) -> float | int:
    return int(u) if float(u).is_integer() else float(u)


def _jordan_float(u: float, n: int) -> float:
    """phi_u(n) / n^u = prod_{p|n} (1 - p^-u) for real u."""
    v = 1.0
    for p, _ in factorize(n).pairs:
        v *= 1.0 - float(p) ** -u
    return v


def _dedekind_float(u: float, n: int) -> float:
    """psi_u(n) / n^u = prod_{p|n} (1 + p^-u) for real u."""
    v = 1.0
    for p, _ in factorize(n).pairs:
        v *= 1.0 + float(p) ** -u
    return v


class Family:
    """A coefficient family (name, kind, dimension k, parameters s or m)."""

    def __init__(
        self,
        name: str,
        kind: str = "classical",
        k: int = 1,
        s: float | None = None,
        m: int | None = None,
    ):
        if name not in FAMILY_NAMES:
            raise DomainError(f"unknown family {name!r}; choose from {FAMILY_NAMES}")
        if kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}, got {kind!r}")
        if not isinstance(k, int) or k < 1:
            raise DomainError(f"dimension k must be an integer >= 1, got {k}")
        self.name = name
        self.kind = kind
        self.k = k
        self.m = None
        self.s = None

        if name in ("sigma", "phi", "beta", "psi"):
            s = 1.0 if s is None else float(s)
            if s + k <= 1:
                raise DomainError(
                    f"family {name} requires s + k > 1, got s={s}, k={k}"
                )
            self.s = s
        elif name == "tau":
            if k < 2:
                raise DomainError(f"family tau requires k >= 2, got k={k}")
        elif name == "piltz":
            m = 3 if m is None else int(m)
            if m < 2:
                raise DomainError(f"family piltz requires m >= 2, got m={m}")
            if k < 2:
                raise DomainError(f"family piltz requires k >= 2, got k={k}")
            self.m = m
        # r and one have no parameters beyond k

        self.exact = self.s is None or float(self.s).is_integer()
        self._si = int(self.s) if self.s is not None and self.exact else None
        self._coeff_cache: dict[int, float] = {}
        self._table: np.ndarray | None = None

    # ----- descriptive -----

    @property
    def label(self) -> str:
        if self.name in ("sigma", "phi", "beta", "psi"):
            s = self._si if self.exact else self.s
            return f"{self.name}(s={s})"
        if self.name == "piltz":
            return f"piltz(m={self.m})"
        return self.name

    @property
    def u(self) -> float:
        """Series exponent s + k for the power-weighted families."""
        return (self.s or 0.0) + self.k

    def __repr__(self) -> str:
        return f"Family({self.label}, kind={self.kind}, k={self.k})"

    # ----- left-hand side -----

    def g_value(self, n: int):
        """The one-variable function g; exact for integral parameters."""
        if n < 1:
            raise DomainError(f"n must be positive, got {n}")
        name = self.name
        if name == "sigma":
            if self.exact and self._si >= 0:
                return Fraction(arith.sigma_s(self._si, n), n**self._si)
            s = float(self.s)
            return math.fsum(d**s for d in factorize(n).divisors()) / n**s
        if name == "tau":
            return arith.tau(n)
        if name == "phi":
            if self.exact and self._si >= 1:
                return Fraction(arith.jordan_phi(self._si, n), n**self._si)
            return _jordan_float(float(self.s), n)
        if name == "piltz":
            return arith.piltz_tau(self.m, n)
        if name == "r":
            return arith.sum_of_two_squares_r(n)
        if name == "beta":
            if self.exact and self._si >= 1:
                return Fraction(arith.beta_s(self._si, n), n**self._si)
            s = float(self.s)
            lam = arith.liouville
            return math.fsum(d**s * lam(n // d) for d in factorize(n).divisors()) / n**s
        if name == "psi":
            if self.exact and self._si >= 1:
                return Fraction(arith.dedekind_psi_s(self._si, n), n**self._si)
            return _dedekind_float(float(self.s), n)
        return 1  # one

    def lhs(self, ns) -> object:
        """f(n_1, ..., n_k) = g(gcd)."""
        ns = self._check_tuple(ns, "n")
        return self.g_value(math.gcd(*ns) if len(ns) > 1 else ns[0])

    # ----- transform h = mu * g -----

    def transform_value(self, n: int):
        if n < 1:
            raise DomainError(f"n must be positive, got {n}")
        name = self.name
        if name in ("sigma", "phi", "beta", "psi"):
            if name == "phi":
                lead = arith.mobius(n)
            elif name == "beta":
                lead = arith.liouville(n)
            elif name == "psi":
                lead = 1 if factorize(n).is_squarefree else 0
            else:
                lead = 1
            if lead == 0:
                return 0
            if self.exact:
                return lead * Fraction(1, n) ** self._si
            return lead * float(n) ** -float(self.s)
        if name == "tau":
            return 1
        if name == "piltz":
            return arith.piltz_tau(self.m - 1, n)
        if name == "r":
            return 4 * arith.chi4(n)
        return 1 if n == 1 else 0  # one

    def transform_table(self, n_max: int) -> np.ndarray:
        """Dense float table h(0..n_max) (index 0 is 0); grown and cached."""
        if self._table is not None and len(self._table) > n_max:
            return self._table
        name = self.name
        idx = np.arange(n_max + 1, dtype=np.float64)
        idx[0] = 1.0  # avoid 0^negative; slot zeroed below
        if name in ("sigma", "phi", "beta", "psi"):
            t = idx ** -float(self.s)
            if name == "phi":
                t *= mobius_table(n_max)
            elif name == "beta":
                t *= liouville_table(n_max)
            elif name == "psi":
                t *= mobius_table(n_max) != 0
        elif name == "tau":
            t = np.ones(n_max + 1)
        elif name == "piltz":
            t = divisor_count_table(n_max, self.m - 1).astype(np.float64)
        elif name == "r":
            t = 4.0 * chi4_table(n_max)
        else:  # one
            t = np.zeros(n_max + 1)
            if n_max >= 1:
                t[1] = 1.0
        t[0] = 0.0
        self._table = t
        return t

    def majorant(self) -> tuple[float, float]:
        """(C, alpha) with |h(n)| <= C n^alpha for all n >= 1."""
        name = self.name
        if name in ("sigma", "phi", "beta", "psi"):
            return 1.0, -float(self.s)
        if name == "tau":
            return 1.0, 0.0
        if name == "piltz":
            # tau_j(n) <= tau(n)^(j-1) <= (2 sqrt n)^(j-1), here j = m - 1
            return 2.0 ** (self.m - 2), (self.m - 2) / 2.0
        if name == "r":
            return 4.0, 0.0
        return 1.0, -2.0  # one: h vanishes beyond n = 1

    # ----- closed coefficient forms -----

    def _check_tuple(self, q, what: str) -> tuple[int, ...]:
        q = tuple(int(v) for v in q)
        if len(q) != self.k:
            raise DomainError(f"expected a {self.k}-tuple of {what}, got {q}")
        if any(v < 1 for v in q):
            raise DomainError(f"{what}-tuple entries must be positive, got {q}")
        return q

    def _phi_u(self, Q: int):
        if self.exact:
            return arith.jordan_phi(int(self.u), Q)
        return _jordan_float(self.u, Q) * float(Q) ** self.u

    def _psi_u(self, Q: int):
        if self.exact:
            return arith.dedekind_psi_s(int(self.u), Q)
        return _dedekind_float(self.u, Q) * float(Q) ** self.u

    def _ratio(self, num, den) -> Fraction | float:
        if self.exact and not isinstance(num, float) and not isinstance(den, float):
            return Fraction(num, den)
        return float(num) / float(den)

    def closed_coefficient(self, q) -> SymbolicValue:
        """Coefficient of c_{q_1}(n_1) ... c_{q_k}(n_k) at the index tuple q.

        Classically the coefficient depends on q only through Q = lcm(q).  In
        the unitary case it additionally vanishes unless every q_i is a
        unitary divisor of Q: the defining series runs over n with q_i || n
        for all i, and when some q_i has a partial prime power the exponent
        constraints nu_p(n) = nu_p(q_i) clash, leaving an empty sum.
        """
        q = self._check_tuple(q, "q")
        Q = math.lcm(*q)
        name, kind, k = self.name, self.kind, self.k
        u_arg = _as_arg(self.u)

        if kind == "unitary" and any(not is_unitary_divisor(v, Q) for v in q):
            return SYMBOLIC_ZERO

        if name in ("sigma", "tau"):
            if self.exact:
                qu = Q ** int(self.u)
            else:
                qu = float(Q) ** self.u
            if kind == "classical":
                rational = self._ratio(1, qu)
            else:
                rational = self._ratio(self._phi_u(Q), qu * qu)
            return SymbolicValue(rational, (("zeta", u_arg, 1),))

        if name == "phi":
            mu_q = arith.mobius(Q)
            if mu_q == 0:
                return SYMBOLIC_ZERO
            return SymbolicValue(
                self._ratio(mu_q, self._phi_u(Q)), (("zeta", u_arg, -1),)
            )

        if name == "piltz":
            if kind == "classical":
                if self.m == 2:
                    return SymbolicValue(Fraction(1, Q**k), (("zeta", k, 1),))
                raise DomainError(
                    f"piltz family with m={self.m} has no classical closed form; "
                    "use the unitary kind or series mode"
                )
            rational = Fraction(
                arith.piltz_tau(self.m - 1, Q) * arith.jordan_phi(k, Q) ** (self.m - 1),
                Q ** (k * self.m),
            )
            return SymbolicValue(rational, (("zeta", k, self.m - 1),))

        if name == "r":
            if Q % 2 == 0:
                return SYMBOLIC_ZERO
            sign = -1 if (Q - 1) // 2 % 2 else 1
            rational = Fraction(4 * sign, Q**k)
            if kind == "unitary":
                for p, _ in factorize(Q).pairs:
                    rational *= 1 - Fraction(arith.chi4(p), p**k)
            return SymbolicValue(rational, (("L", k, 1),))

        if name == "beta":
            lam = arith.liouville(Q)
            atoms = (("zeta", _as_arg(2 * self.u), 1), ("zeta", u_arg, -1))
            if self.exact:
                qu = Q ** int(self.u)
            else:
                qu = float(Q) ** self.u
            if kind == "classical":
                return SymbolicValue(self._ratio(lam, qu), atoms)
            return SymbolicValue(self._ratio(lam * self._psi_u(Q), qu * qu), atoms)

        if name == "psi":
            if not factorize(Q).is_squarefree:
                return SYMBOLIC_ZERO
            atoms = (("zeta", u_arg, 1), ("zeta", _as_arg(2 * self.u), -1))
            return SymbolicValue(self._ratio(1, self._psi_u(Q)), atoms)

        # one
        return SymbolicValue(Fraction(1)) if Q == 1 else SYMBOLIC_ZERO

    def coefficient_value(self, Q: int) -> float:
        """Float value of the closed coefficient for any tuple with lcm Q."""
        v = self._coeff_cache.get(Q)
        if v is None:
            generic = (Q,) + (1,) * (self.k - 1)
            v = self.closed_coefficient(generic).value()
            self._coeff_cache[Q] = v
        return v


def make_family(
    name: str,
    kind: str = "classical",
    k: int = 1,
    s: float | None = None,
    m: int | None = None,
) -> Family:
    """Validated family constructor used by the CLI and tests."""
    return Family(name=name, kind=kind, k=k, s=s, m=m)
