"""Exact multiplicative arithmetic: divisor power sums and their gaps,
Möbius/totient, Ramanujan sums, Dirichlet characters and Gauss-type
character sums.

Everything here is exact integer arithmetic except for character values,
which are tabulated complex roots of unity (tolerance 1e-9 on all
character identities).  Caches are built once and read-only afterwards,
so concurrent readers are safe.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _iproduct

TWO_PI = 2.0 * math.pi

#: Largest modulus for which the full character group is enumerated.
CHARACTER_MODULUS_LIMIT = 200

#: Trial-division workspace guard: inputs above this raise instead of stalling.
FACTORIZATION_LIMIT = 10**14

#: Numeric tolerance for identities between tabulated character values.
CHARACTER_TOL = 1e-9


# ---------------------------------------------------------------------------
# Primes and factorization
# ---------------------------------------------------------------------------

def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, by a bytearray Eratosthenes sieve."""
    if limit < 2:
        return []
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            start = p * p
            sieve[start:limit + 1:p] = b"\x00" * ((limit - start) // p + 1)
    return [i for i, flag in enumerate(sieve) if flag]


def factorize(n: int) -> list[tuple[int, int]]:
    """(prime, exponent) pairs of n >= 1 in increasing prime order."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if n > FACTORIZATION_LIMIT:
        raise ValueError(f"input {n} exceeds factorization workspace limit")
    out = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    # remaining factors are coprime to 6; step the 6k +/- 1 wheel
    d = 5
    while d * d <= m:
        for q in (d, d + 2):
            if m % q == 0:
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                out.append((q, e))
        d += 6
    if m > 1:
        out.append((m, 1))
    return out


def multiplicative_basics(n: int) -> tuple[int, int, int]:
    """(mu(n), phi(n), omega(n)) from the factorization of n."""
    fac = factorize(n)
    omega = len(fac)
    mu = 0 if any(e > 1 for _, e in fac) else (-1) ** omega
    phi = 1
    for p, e in fac:
        phi *= p ** (e - 1) * (p - 1)
    return mu, phi, omega


def mobius(n: int) -> int:
    return multiplicative_basics(n)[0]


def euler_phi(n: int) -> int:
    return multiplicative_basics(n)[1]


def divisors(n: int) -> list[int]:
    """All divisors of n, sorted increasing."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


@lru_cache(maxsize=8)
def mu_phi_tables(limit: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """mu[0..limit] and phi[0..limit] by a linear sieve (bulk workloads)."""
    mu = [0] * (limit + 1)
    phi = [0] * (limit + 1)
    smallest = [0] * (limit + 1)
    primes: list[int] = []
    if limit >= 1:
        mu[1] = 1
        phi[1] = 1
    for i in range(2, limit + 1):
        if smallest[i] == 0:
            smallest[i] = i
            primes.append(i)
            mu[i] = -1
            phi[i] = i - 1
        for p in primes:
            ip = i * p
            if p > smallest[i] or ip > limit:
                break
            smallest[ip] = p
            if i % p == 0:
                mu[ip] = 0
                phi[ip] = phi[i] * p
                break
            mu[ip] = -mu[i]
            phi[ip] = phi[i] * (p - 1)
    return tuple(mu), tuple(phi)


# ---------------------------------------------------------------------------
# Divisor power sums and the gap sequence
# ---------------------------------------------------------------------------

def sigma_r(n: int, r: int) -> int:
    """Sum of the r-th powers of the divisors of n, exactly."""
    if n < 1 or r < 1:
        raise ValueError("sigma_r requires n >= 1 and r >= 1")
    total = 1
    for p, e in factorize(n):
        pr = p**r
        total *= (pr ** (e + 1) - 1) // (pr - 1)
    return total


def sigma_r_table(limit: int, r: int) -> list[int]:
    """sigma_r(1..limit) as exact integers via the divisor-add sieve."""
    table = [0] * (limit + 1)
    for d in range(1, limit + 1):
        dr = d**r
        for m in range(d, limit + 1, d):
            table[m] += dr
    return table


@dataclass(frozen=True)
class GapSequence:
    """sigma_r values on 1..limit+1 and their signed first differences.

    gaps[k-1] = sigma_r(k+1) - sigma_r(k); the sequence changes sign
    (first negative entry for r=2 is at k=10).
    """

    r: int
    limit: int
    sigma: tuple[int, ...]   # sigma[i] = sigma_r(i+1), i = 0..limit
    gaps: tuple[int, ...]    # gaps[i]  = sigma_r(i+2) - sigma_r(i+1), i = 0..limit-1

    @classmethod
    def build(cls, r: int, limit: int) -> "GapSequence":
        return _gap_sequence_cached(r, limit)

    def sigma_at(self, n: int) -> int:
        return self.sigma[n - 1]

    def gap(self, k: int) -> int:
        return self.gaps[k - 1]


@lru_cache(maxsize=32)
def _gap_sequence_cached(r: int, limit: int) -> GapSequence:
    if r < 1 or limit < 1:
        raise ValueError("GapSequence requires r >= 1 and limit >= 1")
    table = sigma_r_table(limit + 1, r)
    sig = tuple(table[1:])
    gaps = tuple(sig[i + 1] - sig[i] for i in range(limit))
    return GapSequence(r=r, limit=limit, sigma=sig, gaps=gaps)


# ---------------------------------------------------------------------------
# Ramanujan sums
# ---------------------------------------------------------------------------

def ramanujan_sum(m: int, n: int) -> int:
    """c_m(n) by the closed form mu(m/g) * phi(m) / phi(m/g), g = gcd(m, n).

    Always an integer; the exponential sum is kept only as an oracle
    (see ramanujan_sum_exponential).
    """
    if m < 1 or n < 1:
        raise ValueError("ramanujan_sum requires m >= 1 and n >= 1")
    g = math.gcd(m, n)
    q = m // g
    mu_q = mobius(q)
    if mu_q == 0:
        return 0
    return mu_q * (euler_phi(m) // euler_phi(q))


def ramanujan_sum_exponential(m: int, n: int) -> complex:
    """c_m(n) as the direct exponential sum over residues coprime to m."""
    return sum(
        (_unit_root(b * n, m) for b in range(m) if math.gcd(b, m) == 1),
        complex(0.0),
    )


def ramanujan_sum_divisor_form(m: int, n: int) -> int:
    """c_m(n) = sum over d | gcd(m, n) of d * mu(m/d)  (von Sterneck form)."""
    g = math.gcd(m, n)
    return sum(d * mobius(m // d) for d in divisors(g))


@lru_cache(maxsize=8)
def _mu_power_prefix(r: int, limit: int) -> tuple[float, ...]:
    """Prefix sums of mu(t) / t^(r+1) for t <= limit."""
    mu, _ = mu_phi_tables(limit)
    out = [0.0] * (limit + 1)
    acc = 0.0
    for t in range(1, limit + 1):
        if mu[t]:
            acc += mu[t] / t ** (r + 1)
        out[t] = acc
    return tuple(out)


def ramanujan_weighted_partial(n: int, m_limit: int, r: int) -> float:
    """Truncated sum over m <= m_limit of c_m(n) / m^(r+1).

    Regrouped exactly through the divisor form of c_m(n):
    sum_{d | n} d^(-r) * sum_{t <= m_limit/d} mu(t)/t^(r+1),
    which is the same finite sum evaluated in O(d(n)) lookups.
    """
    prefix = _mu_power_prefix(r, m_limit)
    return math.fsum(
        prefix[m_limit // d] / d**r for d in divisors(n) if m_limit // d >= 1
    )


def ramanujan_weighted_partial_naive(n: int, m_limit: int, r: int) -> float:
    """Plain per-m loop for the truncated weighted sum (cross-check path)."""
    return math.fsum(ramanujan_sum(m, n) / m ** (r + 1) for m in range(1, m_limit + 1))


# ---------------------------------------------------------------------------
# Dirichlet characters
# ---------------------------------------------------------------------------

def _unit_root(num: int, den: int) -> complex:
    """e(num/den) with the angle reduced before evaluation."""
    return cmath.exp(TWO_PI * 1j * ((num % den) / den))


def _order_mod(g: int, q: int, bound: int) -> int:
    acc = g % q
    for t in range(1, bound + 1):
        if acc == 1:
            return t
        acc = acc * g % q
    return 0


def _component_structure(p: int, e: int) -> tuple[list[int], dict[int, tuple[int, ...]]]:
    """Cyclic-factor orders of (Z/p^e)* and discrete logs of every unit."""
    q = p**e
    if q <= 2:
        return [], {1 % q: ()}
    if p == 2 and e == 2:
        return [2], {1: (0,), 3: (1,)}
    if p == 2:
        # (Z/2^e)* = <-1> x <3> for e >= 3
        orders = [2, 2 ** (e - 2)]
        logs: dict[int, tuple[int, ...]] = {}
        for sgn in (0, 1):
            base = q - 1 if sgn else 1
            acc = base % q
            for t in range(2 ** (e - 2)):
                logs[acc] = (sgn, t)
                acc = acc * 3 % q
        return orders, logs
    phi = q // p * (p - 1)
    g = 0
    for cand in range(2, q):
        if cand % p == 0:
            continue
        if _order_mod(cand, q, phi) == phi:
            g = cand
            break
    logs = {}
    acc = 1
    for t in range(phi):
        logs[acc] = (t,)
        acc = acc * g % q
    return [phi], logs


@dataclass(frozen=True)
class DirichletCharacter:
    """Tabulated Dirichlet character: values[a] = chi(a), zero off units."""

    modulus: int
    values: tuple[complex, ...]
    is_principal: bool
    is_primitive: bool
    conductor: int

    def __call__(self, a: int) -> complex:
        return self.values[a % self.modulus]

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(
            modulus=self.modulus,
            values=tuple(v.conjugate() for v in self.values),
            is_principal=self.is_principal,
            is_primitive=self.is_primitive,
            conductor=self.conductor,
        )


def _conductor_of_values(m: int, values: tuple[complex, ...]) -> int:
    """Smallest f | m with chi trivial on every unit congruent to 1 mod f."""
    for f in divisors(m):
        if all(
            abs(values[a] - 1.0) < CHARACTER_TOL
            for a in range(1, m)
            if a % f == 1 % f and math.gcd(a, m) == 1
        ):
            return f
    return m


@lru_cache(maxsize=512)
def characters_mod(m: int, limit: int = CHARACTER_MODULUS_LIMIT) -> tuple[DirichletCharacter, ...]:
    """All phi(m) Dirichlet characters mod m, principal first.

    Built from the unit-group decomposition into cyclic factors with
    brute-force generator search (fine for the default limit m <= 200).
    """
    if m < 1:
        raise ValueError("characters_mod requires m >= 1")
    if m > limit:
        raise ValueError(f"modulus {m} exceeds character enumeration limit {limit}")
    if m == 1:
        chi = DirichletCharacter(1, (complex(1.0),), True, True, 1)
        return (chi,)

    comps = factorize(m)
    structures = [_component_structure(p, e) for p, e in comps]
    orders: list[int] = []
    for comp_orders, _ in structures:
        orders.extend(comp_orders)

    # discrete-log vector of every unit mod m, via CRT components
    unit_logs: dict[int, tuple[int, ...]] = {}
    for a in range(m):
        if math.gcd(a, m) != 1:
            continue
        vec: list[int] = []
        for (p, e), (comp_orders, logs) in zip(comps, structures):
            vec.extend(logs[a % p**e])
        unit_logs[a] = tuple(vec)

    chars = []
    for ks in _iproduct(*(range(d) for d in orders)):
        values = [complex(0.0)] * m
        for a, vec in unit_logs.items():
            ang = Fraction(0)
            for k, t, d in zip(ks, vec, orders):
                ang += Fraction(k * t, d)
            values[a] = cmath.exp(TWO_PI * 1j * float(ang % 1))
        principal = all(k == 0 for k in ks)
        vals = tuple(values)
        cond = _conductor_of_values(m, vals)
        chars.append(
            DirichletCharacter(m, vals, principal, cond == m, cond)
        )
    return tuple(chars)


def character_sums(chi: DirichletCharacter, n: int) -> tuple[complex, complex, complex]:
    """(c_chi(n), c'_chi(n), tau(chi)).

    c_chi sums chi(b) e(bn/m) over all residues, c'_chi restricts to
    gcd(b, m) = 1, and tau(chi) = c_chi(1).  For tabulated characters the
    first two coincide since chi vanishes off units.
    """
    m = chi.modulus
    c = complex(0.0)
    cp = complex(0.0)
    tau = complex(0.0)
    for b in range(m):
        v = chi.values[b]
        if v == 0:
            continue
        c += v * _unit_root(b * n, m)
        tau += v * _unit_root(b, m)
        if math.gcd(b, m) == 1:
            cp += v * _unit_root(b * n, m)
    return c, cp, tau


def shifted_ramanujan_residual(m: int, n: int) -> float:
    """|c_m(n+1) - [mu(m)/phi(m) c_m(n) + (1/phi(m)) sum over non-principal
    chi of tau(chi) c'_{conj chi}(n)]| in complex arithmetic.

    Contract: < 1e-9 for every valid (m, n).
    """
    if m < 1 or n < 1:
        raise ValueError("shifted_ramanujan_residual requires m, n >= 1")
    lhs = complex(ramanujan_sum(m, n + 1))
    phi = euler_phi(m)
    rhs = mobius(m) / phi * ramanujan_sum(m, n)
    for chi in characters_mod(m):
        if chi.is_principal:
            continue
        tau = character_sums(chi, 1)[2]
        cbar = character_sums(chi.conjugate(), n)[1]
        rhs += tau * cbar / phi
    return abs(lhs - rhs)


def shifted_identity_max_residual(m_max: int, n_max: int) -> float:
    """Max residual of the shifted-sum identity over 1 <= m <= m_max,
    1 <= n <= n_max, with per-modulus precomputation for the sweep."""
    worst = 0.0
    for m in range(1, m_max + 1):
        phi = euler_phi(m)
        mu_m = mobius(m)
        units = [b for b in range(m) if math.gcd(b, m) == 1]
        # G(b) = sum over non-principal chi of tau(chi) * conj(chi(b))
        g_vec = {b: complex(0.0) for b in units}
        for chi in characters_mod(m):
            if chi.is_principal:
                continue
            tau = character_sums(chi, 1)[2]
            for b in units:
                g_vec[b] += tau * chi.values[b].conjugate()
        for n in range(1, n_max + 1):
            lhs = complex(ramanujan_sum(m, n + 1))
            rhs = mu_m / phi * ramanujan_sum(m, n)
            rhs += sum(g_vec[b] * _unit_root(b * n, m) for b in units) / phi
            worst = max(worst, abs(lhs - rhs))
    return worst


def induce_primitive(chi: DirichletCharacter) -> tuple[DirichletCharacter, bool]:
    """The primitive character chi* mod m* inducing non-principal chi.

    The scale check verifies c'_chi((m/m*) t) = (phi(m)/phi(m*)) c'_{chi*}(t)
    on a sample of t.  The textbook display of this relation keeps the same
    frequency argument on both sides, which fails numerically (e.g. modulus 8
    induced from 4 at n = 6); regrouping residues mod m* forces the frequency
    rescaling n = (m/m*) t used here.  Failure beyond 1e-9 raises: it can
    only mean the construction is wrong.
    """
    if chi.is_principal:
        raise ValueError("induce_primitive requires a non-principal character")
    m = chi.modulus
    mstar = chi.conductor
    if mstar == m:
        return chi, True

    values = [complex(0.0)] * mstar
    for a in range(mstar):
        if math.gcd(a, mstar) != 1:
            continue
        b = a
        while math.gcd(b, m) != 1:
            b += mstar
        values[a] = chi.values[b % m]
    star = DirichletCharacter(
        modulus=mstar,
        values=tuple(values),
        is_principal=mstar == 1,
        is_primitive=True,
        conductor=mstar,
    )
    ratio = euler_phi(m) / euler_phi(mstar)
    stretch = m // mstar
    for t in range(1, min(2 * mstar, 24) + 1):
        lhs = character_sums(chi, stretch * t)[1]
        rhs = ratio * character_sums(star, t)[1]
        if abs(lhs - rhs) > CHARACTER_TOL:
            raise RuntimeError(
                f"primitive induction scale identity failed at m={m}, t={t}: "
                f"|{lhs} - {rhs}| = {abs(lhs - rhs):.3e}"
            )
    return star, True
