"""Numeric evaluation layer: Riemann zeta (Euler-Maclaurin), Gamma
(Lanczos), the polylogarithm at negative argument via its Fermi-Dirac
integral, the Dirichlet beta function, and the Euler products / double
Dirichlet series built on Ramanujan sums, together with the derived
growth constants.

All Euler products run over a shared prime sieve (default cutoff 10^6)
and carry a crude but valid truncation bound by integral comparison,
sum_{n > P} n^(-a) <= P^(1-a)/(a-1).  Every value is a plain float;
complex arguments are out of scope.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import arith
from .arith import characters_mod, character_sums, mu_phi_tables

DEFAULT_PRIME_CUTOFF = 10**6

_PRIMES: list[int] = []
_PRIMES_LIMIT = 0


def primes(limit: int = DEFAULT_PRIME_CUTOFF) -> list[int]:
    """Shared, growing prime list (read-only after each extension)."""
    global _PRIMES, _PRIMES_LIMIT
    if limit > _PRIMES_LIMIT:
        _PRIMES = arith.primes_up_to(limit)
        _PRIMES_LIMIT = limit
    if limit == _PRIMES_LIMIT:
        return _PRIMES
    return _PRIMES[: bisect.bisect_right(_PRIMES, limit)]


# ---------------------------------------------------------------------------
# Classical special functions
# ---------------------------------------------------------------------------

# B_{2k}/(2k)! for k = 1..7, exact rationals evaluated once
_EM_COEFF = (
    1.0 / 12,
    -1.0 / 720,
    1.0 / 30240,
    -1.0 / 1209600,
    1.0 / 47900160,
    -691.0 / 1307674368000,
    1.0 / 74724249600,
)


def zeta_real(s: float) -> float:
    """zeta(s) for real s > 1 by Euler-Maclaurin, relative error < 1e-12."""
    if s <= 1.0:
        raise ValueError("zeta_real requires s > 1")
    n0 = 24
    head = math.fsum(n ** -s for n in range(1, n0))
    tail = n0 ** (1.0 - s) / (s - 1.0) + 0.5 * n0 ** -s
    rising = s
    power = n0 ** (-s - 1.0)
    for k, coeff in enumerate(_EM_COEFF, start=1):
        tail += coeff * rising * power
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        power /= n0 * n0
    return head + tail


_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_real(s: float) -> float:
    """Gamma(s) for real s > 0: Lanczos (g = 7), exact factorial at integers."""
    if s <= 0.0:
        raise ValueError("gamma_real requires s > 0")
    if s == int(s) and s <= 171:
        return float(math.factorial(int(s) - 1))
    if s < 0.5:
        return math.pi / (math.sin(math.pi * s) * gamma_real(1.0 - s))
    z = s - 1.0
    x = _LANCZOS[0]
    for i in range(1, 9):
        x += _LANCZOS[i] / (z + i)
    t = z + 7.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * x


def _alternating_sum(term: Callable[[int], float], n: int = 48) -> float:
    """sum_{k>=0} (-1)^k term(k) with Chebyshev-style acceleration;
    converges to ~3.17^-n even for terms decaying only polynomially."""
    d = (3.0 + math.sqrt(8.0)) ** n
    d = (d + 1.0 / d) / 2.0
    b = -1.0
    c = -d
    acc = 0.0
    for k in range(n):
        c = b - c
        acc += c * term(k)
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0))
    return acc / d


def beta_dirichlet(s: float) -> float:
    """Dirichlet beta(s) = sum (-1)^k / (2k+1)^s, accelerated."""
    if s <= 0.0:
        raise ValueError("beta_dirichlet requires s > 0")
    return _alternating_sum(lambda k: (2 * k + 1) ** -s)


def polylog_neg_series(s: float, u: float) -> float:
    """Li_s(-u) for 0 < u <= 1 by the accelerated alternating series."""
    if not 0.0 < u <= 1.0:
        raise ValueError("series form needs 0 < u <= 1")
    return -_alternating_sum(lambda k: u ** (k + 1) / (k + 1) ** s)


def _tanh_sinh(f: Callable[[float], float], a: float, b: float,
               rel_tol: float = 1e-13, max_level: int = 12) -> float:
    """Double-exponential quadrature on (a, b): handles endpoint power
    singularities; node count doubles per level until self-consistent.

    Node positions are carried as distances from the endpoints so the
    exponentially close nodes keep full relative precision (no mid +/-
    offset cancellation).
    """
    half = 0.5 * (b - a)
    kp = math.pi / 2.0

    def layer(h: float, odd_only: bool) -> float:
        acc = 0.0
        k = 1 if odd_only else 0
        step = 2 if odd_only else 1
        quiet = 0
        while True:
            x = k * h
            sh = kp * math.sinh(x)
            if sh > 350.0:  # weight underflows long before this
                break
            w = kp * math.cosh(x) / math.cosh(sh) ** 2
            e2 = math.exp(-2.0 * sh)
            d = half * 2.0 * e2 / (1.0 + e2)  # half * (1 - tanh(sh))
            if k == 0:
                term = w * f(a + half)
            else:
                term = 0.0
                if d > 0.0:
                    term += w * f(a + d)
                    hi = b - d
                    if hi < b:
                        term += w * f(hi)
            acc += term
            if x > 3.0 and abs(term) < 1e-17 * max(abs(acc), 1e-300):
                quiet += 1
                if quiet >= 2:
                    break
            else:
                quiet = 0
            if x > 6.5:
                break
            k += step
        return acc

    h = 1.0
    raw = layer(h, odd_only=False)
    best = h * half * raw
    for _ in range(max_level):
        h /= 2.0
        raw += layer(h, odd_only=True)
        cur = h * half * raw
        if abs(cur - best) <= rel_tol * max(abs(cur), 1e-300):
            return cur
        best = cur
    return best


def polylog_neg(s: float, u: float, rel_tol: float = 1e-12) -> float:
    """Li_s(-u) = -(1/Gamma(s)) * integral of t^(s-1)/(e^t/u + 1) dt over
    (0, inf), for s > 0, u > 0; reaches u > 1 (the series cannot).

    Tanh-sinh quadrature absorbs the t^(s-1) endpoint singularity for
    s < 1; the exponential tail beyond the cutoff is below 1e-20 of the
    value by construction of the cutoff.
    """
    if s <= 0.0 or u <= 0.0:
        raise ValueError("polylog_neg requires s > 0 and u > 0")
    t_hi = 50.0 + 6.0 * s + max(0.0, math.log(u))
    log_u = math.log(u)

    def integrand(t: float) -> float:
        # t^(s-1)/(e^t/u + 1), stable for large t and tiny t
        return math.exp((s - 1.0) * math.log(t)) / (math.exp(t - log_u) + 1.0)

    val = _tanh_sinh(integrand, 0.0, t_hi, rel_tol=rel_tol)
    return -val / gamma_real(s)


def eta_alternating(s: float) -> float:
    """-Li_s(-1) under the standard identity, (1 - 2^(1-s)) zeta(s)."""
    return (1.0 - 2.0 ** (1.0 - s)) * zeta_real(s)


def eta_shifted_zeta(s: float) -> float:
    """-Li_s(-1) under the variant display (1 - 2^(-s)) zeta(s+1).

    Kept alongside the standard identity so consumers can report both
    conventions explicitly instead of silently merging them.
    """
    return (1.0 - 2.0 ** (-s)) * zeta_real(s + 1.0)


# ---------------------------------------------------------------------------
# Euler products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EulerProductValue:
    value: float
    prime_cutoff: int
    tail_estimate: float
    converged: bool


@dataclass(frozen=True)
class SeriesValue:
    value: float
    terms_used: int
    truncation_bound: float
    converged: bool = True


def _euler_product(
    factor: Callable[[int], float],
    tail_const: float,
    tail_alpha: float,
    cutoff: int,
    tol: float,
) -> EulerProductValue:
    if tail_alpha <= 1.0:
        raise ValueError("divergent parameter region (tail exponent <= 1)")
    logs = []
    for p in primes(cutoff):
        f = factor(p)
        if f <= 0.0:
            raise ValueError(f"nonpositive Euler factor at p = {p}")
        logs.append(math.log(f))
    value = math.exp(math.fsum(logs))
    log_tail = tail_const * cutoff ** (1.0 - tail_alpha) / (tail_alpha - 1.0)
    tail = abs(value) * math.expm1(log_tail)
    return EulerProductValue(value, cutoff, tail, tail < tol)


def constant_C(r: int, cutoff: int = DEFAULT_PRIME_CUTOFF, tol: float = 1e-8) -> EulerProductValue:
    """prod over p of (1 + 1/(p^(r+1)(p-1)))  (totient-summatory family;
    r = 1 gives 1.339784..., and zeta(2) times it the Landau constant)."""
    if r < 1:
        raise ValueError("constant_C requires r >= 1")
    return _euler_product(
        lambda p: 1.0 + 1.0 / (p ** (r + 1) * (p - 1)),
        tail_const=2.0, tail_alpha=r + 2.0, cutoff=cutoff, tol=tol,
    )


def euler_K(s: float, r: int, cutoff: int = DEFAULT_PRIME_CUTOFF, tol: float = 1e-8) -> EulerProductValue:
    """prod over p of (1 + [1/(p^(r+1)(p-1))] (1-p^-s)/(1-p^-(s+r+1))).

    Tends to constant_C(r) as s -> +inf and equals 1 at s = 0.
    """
    if s + r + 1 <= 1:
        raise ValueError("euler_K requires s + r + 1 > 1")

    def factor(p: int) -> float:
        h = 1.0 / (p ** (r + 1) * (p - 1))
        return 1.0 + h * (1.0 - p ** -s) / (1.0 - float(p) ** (-(s + r + 1.0)))

    alpha = r + 2.0 - max(0.0, -s)
    const = 4.0 / (1.0 - 2.0 ** (-(s + r + 1.0)))
    return _euler_product(factor, tail_const=const, tail_alpha=alpha, cutoff=cutoff, tol=tol)


def E_r_and_Cprime(
    sigma: float, r: int, cutoff: int = DEFAULT_PRIME_CUTOFF, tol: float = 1e-8
) -> tuple[EulerProductValue, EulerProductValue]:
    """The bound-side Euler product E_r(sigma) from its defining form
        1 + [(1-p^-r)/p^(r+1)] / (2 p^(3 sigma + 2r + 1) (1 - 2^-(sigma+r+1)))
    together with C'(r) = prod (1 + (1-p^-r)/p^(r+1))."""
    if sigma <= -2.0 * r / 3.0:
        raise ValueError("E_r requires sigma > -2r/3")
    denom_const = 1.0 - 2.0 ** (-(sigma + r + 1.0))

    def factor_e(p: int) -> float:
        lead = (1.0 - p ** float(-r)) / p ** (r + 1)
        # negative-exponent form: underflows to 0 instead of overflowing
        decay = math.exp(-(3.0 * sigma + 2 * r + 1.0) * math.log(p))
        return 1.0 + lead * decay / (2.0 * denom_const)

    e_val = _euler_product(
        factor_e,
        tail_const=1.0 / denom_const,
        tail_alpha=3.0 * sigma + 3 * r + 2.0,
        cutoff=cutoff, tol=tol,
    )
    cp_val = _euler_product(
        lambda p: 1.0 + (1.0 - p ** float(-r)) / p ** (r + 1),
        tail_const=1.0, tail_alpha=r + 1.0, cutoff=cutoff, tol=tol,
    )
    return e_val, cp_val


# ---------------------------------------------------------------------------
# The double Dirichlet series and its bound
# ---------------------------------------------------------------------------

def dirichlet_d1(
    s: float,
    r: int,
    mode: str = "closed",
    m_limit: int = 2000,
    n_limit: int = 20000,
    cutoff: int = DEFAULT_PRIME_CUTOFF,
    tol: float = 1e-3,
) -> SeriesValue:
    """The Mobius-weighted double series over Ramanujan sums,
    sum_m mu(m)/(phi(m) m^(r+1)) sum_n c_m(n)/n^s.

    closed: zeta(s) K_r(s) / zeta(s+r+1); direct: the truncated double sum
    (the closed form's independent oracle), evaluated by exact regrouping
    over g = gcd(m, n) so the m_limit/n_limit budget is feasible.
    """
    if mode == "closed":
        if s <= 1.0:
            raise ValueError("closed form needs s > 1")
        k_val = euler_K(s, r, cutoff=cutoff)
        scale = zeta_real(s) / zeta_real(s + r + 1.0)
        return SeriesValue(
            value=scale * k_val.value,
            terms_used=len(primes(cutoff)),
            truncation_bound=abs(scale) * k_val.tail_estimate,
            converged=k_val.converged,
        )
    if mode != "direct":
        raise ValueError("mode must be 'closed' or 'direct'")
    if s <= 1.0:
        raise ValueError("direct form needs s > 1")
    return _d1_direct(s, r, m_limit, n_limit, tol)


def _d1_direct(s: float, r: int, m_limit: int, n_limit: int, tol: float) -> SeriesValue:
    if m_limit > 500_000:
        # the phi(m) >= m/6 step in the tail bound stops holding past here
        raise ValueError("direct mode is documented for m_limit <= 500000")
    mu, phi = mu_phi_tables(m_limit)
    zpre = [0.0] * (n_limit + 1)
    acc = 0.0
    for t in range(1, n_limit + 1):
        acc += t ** -s
        zpre[t] = acc

    def coprime_partial(limit: int, q: int) -> float:
        # sum over t <= limit, gcd(t, q) = 1 of t^-s
        out = 0.0
        for d in arith.divisors(q):
            if mu[d]:
                out += mu[d] * d ** -s * zpre[limit // d]
        return out

    total = 0.0
    inner_tail = 0.0
    for m in range(1, m_limit + 1):
        if mu[m] == 0:
            continue
        weight = mu[m] / (phi[m] * m ** (r + 1))
        s_m = 0.0
        for g in arith.divisors(m):
            q = m // g
            if mu[q] == 0:
                continue
            c_val = mu[q] * (phi[m] // phi[q])
            s_m += c_val * g ** -s * coprime_partial(n_limit // g, q)
        total += weight * s_m
        # |c_m(n)| <= sigma_1(gcd(m,n)) <= sigma_1(m) <= m (1 + log m)
        inner_tail += abs(weight) * m * (1.0 + math.log(m)) * n_limit ** (1.0 - s) / (s - 1.0)
    # outer tail: phi(m) >= m/6 holds through m ~ 5*10^5 (largest primorial
    # below that is 510510 with phi/m ~ 0.171); document, don't push past it
    zs = zeta_real(s)
    outer_tail = zs * 6.0 * ((1.0 + math.log(m_limit)) / r + 1.0 / r**2) * m_limit ** float(-r)
    bound = inner_tail + outer_tail
    return SeriesValue(
        value=total,
        terms_used=m_limit,
        truncation_bound=bound,
        converged=bound < tol,
    )


def d1_direct_naive(s: float, r: int, m_limit: int, n_limit: int) -> float:
    """Literal double loop (validation of the regrouped direct evaluator)."""
    total = 0.0
    for m in range(1, m_limit + 1):
        mu_m = arith.mobius(m)
        if mu_m == 0:
            continue
        w = mu_m / (arith.euler_phi(m) * m ** (r + 1))
        total += w * math.fsum(
            arith.ramanujan_sum(m, n) / n**s for n in range(1, n_limit + 1)
        )
    return total


def d2_bound(sigma: float, r: int, cutoff: int = DEFAULT_PRIME_CUTOFF) -> float:
    """Upper bound for the character-twisted companion series:
    zeta(sigma) zeta(sigma+r) zeta(sigma+r+1) / zeta(2(sigma+r))
    * zeta(r) * E_r(sigma), valid for sigma > 1, r > 1."""
    if sigma <= 1.0:
        raise ValueError("d2_bound requires sigma > 1")
    if r <= 1:
        raise ValueError("d2_bound requires r > 1")
    e_val, _ = E_r_and_Cprime(sigma, r, cutoff=cutoff)
    return (
        zeta_real(sigma) * zeta_real(sigma + r) * zeta_real(sigma + r + 1.0)
        / zeta_real(2.0 * (sigma + r))
        * zeta_real(float(r))
        * e_val.value
    )


def d2_direct_probe(
    s: float, r: int, m_limit: int = 60, n_limit: int = 4000
) -> complex:
    """Truncated direct evaluation of the character-twisted series
    sum_m 1/(phi(m) m^(r+1)) sum_{chi != chi0} tau(chi) sum_n c'_{conj chi}(n)/n^s
    (one-sided consistency probe against d2_bound)."""
    n_arr = np.arange(1, n_limit + 1, dtype=np.float64)
    ns = n_arr ** (-s)
    total = complex(0.0)
    for m in range(1, m_limit + 1):
        chars = characters_mod(m)
        if len(chars) < 2:
            continue
        phi_m = arith.euler_phi(m)
        # W[b] = sum_n e(bn/m)/n^s
        w_res = [
            complex(np.sum(np.exp(2j * math.pi * ((b * n_arr) % m) / m) * ns))
            for b in range(m)
        ]
        inner = complex(0.0)
        for chi in chars:
            if chi.is_principal:
                continue
            tau = character_sums(chi, 1)[2]
            series = sum(
                chi.values[b].conjugate() * w_res[b]
                for b in range(m)
                if chi.values[b] != 0
            )
            inner += tau * series
        total += inner / (phi_m * m ** (r + 1))
    return total


def _b_factor_chi(p: int, s: float, r: int, chi_p: int) -> float:
    """The nested correction series for one prime in the quartic-character
    products: numerator sum_{k>=2} chi^k (p^-(k(s+r)+1) - p^-(k(s+r+1)))
    over the matching signed denominator."""
    num = 0.0
    den_series = 0.0
    k = 2
    while True:
        term = chi_p**k * (p ** -(k * (s + r) + 1.0) - p ** (-k * (s + r + 1.0)))
        num += term
        den_series += term
        if abs(term) < 1e-18 * (abs(num) + 1e-300):
            break
        k += 1
        if k > 200:
            break
    den = 1.0 + chi_p * (p ** (-(s + r + 1.0)) - p ** (-(s + r))) - den_series
    return num / den


def d2_quartic_character(
    s: float, r: int, cutoff: int = DEFAULT_PRIME_CUTOFF, tol: float = 1e-6
) -> SeriesValue:
    """The companion series specialized to the nontrivial character mod 4:
    beta(s) beta(s+r+1) / beta(s+r) times Euler products over p = 1 (mod 4)
    and p = 3 (mod 4)."""
    if s <= 1.0 or r <= 1:
        raise ValueError("d2_quartic_character requires s > 1 and r > 1")
    logs = []
    count = 0
    for p in primes(cutoff):
        if p == 2:
            continue
        chi_p = 1 if p % 4 == 1 else -1
        b = _b_factor_chi(p, s, r, chi_p)
        lead = (1.0 + chi_p * p**-s) / p ** (r + 1)
        inner = 1.0 / (1.0 + chi_p * (p ** (-(s + r + 1.0)) - p ** (-(s + r))))
        factor = 1.0 + lead * inner * (1.0 - b)
        logs.append(math.log(factor))
        count += 1
    prod = math.exp(math.fsum(logs))
    scale = beta_dirichlet(s) * beta_dirichlet(s + r + 1.0) / beta_dirichlet(s + r)
    tail_log = 4.0 * cutoff ** float(-r) / r
    value = scale * prod
    tail = abs(value) * math.expm1(tail_log)
    return SeriesValue(value=value, terms_used=count, truncation_bound=tail, converged=tail < tol)


# ---------------------------------------------------------------------------
# The shifted divisor series
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4)
def _sigma_float_sieve(r: int, limit: int) -> np.ndarray:
    """sigma_r(1..limit) in float64 (exact for values below 2^53)."""
    arr = np.zeros(limit + 1, dtype=np.float64)
    for d in range(1, limit + 1):
        arr[d::d] += float(d) ** r
    return arr


@dataclass(frozen=True)
class ShiftedSeriesCheck:
    direct: float
    d1_part: float
    d2_budget: float
    truncation: float
    residual_bound_ok: bool


def shifted_series_residual(
    s: float, r: int, n_cutoff: int = 10**6, cutoff: int = DEFAULT_PRIME_CUTOFF
) -> ShiftedSeriesCheck:
    """Compare the directly summed shifted series sum_n sigma_r(n+1)/n^s
    against its Mobius-side part zeta(r+1) sum_i C(r,i) D1(s-i, r); the
    difference must sit inside the bound-side budget."""
    if s - r <= 1.0:
        raise ValueError("need s - r > 1 so every shifted argument stays in range")
    sig = _sigma_float_sieve(r, n_cutoff + 1)
    n_arr = np.arange(1, n_cutoff + 1, dtype=np.float64)
    direct = float(np.sum(sig[2 : n_cutoff + 2] * n_arr**(-s)))
    # sigma_r(n+1) <= zeta(r) (n+1)^r <= zeta(r) 2^r n^r
    trunc = zeta_real(float(r)) * 2.0**r * n_cutoff ** (r + 1.0 - s) / (s - r - 1.0)

    zr1 = zeta_real(r + 1.0)
    d1_part = 0.0
    closed_tails = 0.0
    for i in range(r + 1):
        sv = dirichlet_d1(s - i, r, mode="closed", cutoff=cutoff)
        d1_part += math.comb(r, i) * sv.value
        closed_tails += math.comb(r, i) * sv.truncation_bound
    d1_part *= zr1
    budget = zr1 * math.fsum(
        math.comb(r, i) * d2_bound(s - i, r, cutoff=cutoff) for i in range(r + 1)
    )
    slack = trunc + zr1 * closed_tails
    return ShiftedSeriesCheck(
        direct=direct,
        d1_part=d1_part,
        d2_budget=budget,
        truncation=slack,
        residual_bound_ok=abs(direct - d1_part) <= budget + slack,
    )


def dsigma_residual(s: float, r: int, n_cutoff: int = 10**6) -> float:
    """|sum_n sigma_r(n)/n^s - zeta(s) zeta(s-r)| at the same truncation."""
    if s - r <= 1.0:
        raise ValueError("need s - r > 1")
    sig = _sigma_float_sieve(r, n_cutoff + 1)
    n_arr = np.arange(1, n_cutoff + 1, dtype=np.float64)
    direct = float(np.sum(sig[1 : n_cutoff + 1] * n_arr**(-s)))
    return abs(direct - zeta_real(s) * zeta_real(s - r))


# ---------------------------------------------------------------------------
# Derived growth constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthConstants:
    """The aggregate constant driving the leading derivative bounds, and
    the mean/variance prefactors under both -Li_s(-1) conventions."""

    r: int
    N: float
    C_mu: dict[str, float]
    C_sigma: dict[str, float]

    @property
    def conventions(self) -> tuple[str, ...]:
        return tuple(sorted(self.C_mu))


@lru_cache(maxsize=16)
def growth_constants(r: int, cutoff: int = DEFAULT_PRIME_CUTOFF) -> GrowthConstants:
    """N(r) = |zeta(r+1) K_r(1)/zeta(r+2)
               + zeta(r+1)^2 zeta(r+2) zeta(r) E_r(1) / zeta(2(r+1))
               - zeta(r+1)|, plus C_mu(r), C_sigma(r) in both conventions."""
    if r < 2:
        raise ValueError("growth_constants requires r >= 2")
    zr = zeta_real(float(r))
    zr1 = zeta_real(r + 1.0)
    zr2 = zeta_real(r + 2.0)
    k1 = euler_K(1.0, r, cutoff=cutoff).value
    e1 = E_r_and_Cprime(1.0, r, cutoff=cutoff)[0].value
    n_val = abs(zr1 * k1 / zr2 + zr1**2 * zr2 * zr * e1 / zeta_real(2.0 * (r + 1)) - zr1)

    def prefactors(minus_li: Callable[[float], float]) -> tuple[float, float]:
        eta_r = minus_li(float(r))        # -Li_r(-1)
        eta_r1 = minus_li(r + 1.0)        # -Li_{r+1}(-1)
        c_mu = n_val * eta_r1 * gamma_real(r + 1.0)
        c_sig = n_val * (
            eta_r * gamma_real(r + 1.0)
            - eta_r**2 * gamma_real(r + 2.0) ** 2 / (eta_r1 * gamma_real(r + 3.0))
        )
        return c_mu, c_sig

    mu_std, sig_std = prefactors(eta_alternating)
    mu_alt, sig_alt = prefactors(eta_shifted_zeta)
    return GrowthConstants(
        r=r,
        N=n_val,
        C_mu={"standard": mu_std, "shifted-zeta": mu_alt},
        C_sigma={"standard": sig_std, "shifted-zeta": sig_alt},
    )
