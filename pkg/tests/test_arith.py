import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divpart import arith


# ---------------------------------------------------------------------------
# multiplicative basics and divisor sums
# ---------------------------------------------------------------------------

def brute_phi(n):
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def brute_sigma(n, r):
    return sum(d**r for d in range(1, n + 1) if n % d == 0)


def test_multiplicative_basics_examples():
    assert arith.multiplicative_basics(1) == (1, 1, 0)
    assert arith.multiplicative_basics(12) == (0, 4, 2)
    assert arith.multiplicative_basics(30) == (-1, 8, 3)


@given(st.integers(min_value=1, max_value=3000))
def test_phi_matches_brute_force(n):
    assert arith.euler_phi(n) == brute_phi(n)


@given(st.integers(min_value=1, max_value=500), st.integers(min_value=1, max_value=3))
def test_sigma_matches_divisor_enumeration(n, r):
    assert arith.sigma_r(n, r) == brute_sigma(n, r)


def test_sigma_examples():
    assert arith.sigma_r(1, 2) == 1
    assert arith.sigma_r(6, 2) == 50  # 1 + 4 + 9 + 36
    # the sign-changing gap at 10
    assert arith.sigma_r(11, 2) == 122
    assert arith.sigma_r(10, 2) == 130
    assert arith.sigma_r(11, 2) - arith.sigma_r(10, 2) == -8


def test_factorize_guard():
    with pytest.raises(ValueError):
        arith.factorize(0)
    with pytest.raises(ValueError):
        arith.factorize(arith.FACTORIZATION_LIMIT * 10)


def test_mu_phi_tables_match_pointwise():
    mu, phi = arith.mu_phi_tables(2000)
    for n in range(1, 2001):
        m, p, _ = arith.multiplicative_basics(n)
        assert mu[n] == m and phi[n] == p


class TestGapSequence:
    def test_prime_values_and_one(self):
        seq = arith.GapSequence.build(2, 200)
        assert seq.sigma_at(1) == 1
        for p in arith.primes_up_to(200):
            assert seq.sigma_at(p) == 1 + p**2

    def test_multiplicativity_on_coprime_pairs(self):
        seq = arith.GapSequence.build(3, 120)
        for m in range(2, 60):
            for n in range(2, 120 // m + 1):
                if math.gcd(m, n) == 1:
                    assert seq.sigma_at(m * n) == seq.sigma_at(m) * seq.sigma_at(n)

    def test_gap_definition(self):
        seq = arith.GapSequence.build(2, 150)
        for k in range(1, 151):
            assert seq.gap(k) == seq.sigma_at(k + 1) - seq.sigma_at(k)

    @pytest.mark.parametrize("r", [2, 3])
    def test_power_sandwich(self, r):
        # n^r < sigma_r(n) < n^r zeta(r) for n >= 2
        from divpart.dirichlet import zeta_real
        z = zeta_real(float(r))
        seq = arith.GapSequence.build(r, 400)
        for n in range(2, 401):
            assert n**r < seq.sigma_at(n) < n**r * z


# ---------------------------------------------------------------------------
# Ramanujan sums
# ---------------------------------------------------------------------------

def test_ramanujan_examples():
    assert arith.ramanujan_sum(1, 7) == 1
    assert arith.ramanujan_sum(4, 2) == -2   # e(2/4) + e(6/4) = -1 - 1
    assert arith.ramanujan_sum(5, 5) == 4    # phi(5)


def test_ramanujan_closed_matches_exponential_sum():
    worst = 0.0
    for m in range(1, 101):
        for n in range(1, 101):
            diff = abs(arith.ramanujan_sum(m, n) - arith.ramanujan_sum_exponential(m, n))
            worst = max(worst, diff)
    assert worst < 1e-10


def test_ramanujan_is_mobius_on_coprimes_exhaustive():
    for m in range(1, 101):
        mu = arith.mobius(m)
        for n in range(1, 101):
            if math.gcd(m, n) == 1:
                assert arith.ramanujan_sum(m, n) == mu


@given(st.integers(min_value=1, max_value=300), st.integers(min_value=1, max_value=300))
def test_divisor_form_agrees(m, n):
    assert arith.ramanujan_sum(m, n) == arith.ramanujan_sum_divisor_form(m, n)


def test_weighted_partial_regrouping_matches_naive():
    for n in (1, 7, 12, 36, 50):
        fast = arith.ramanujan_weighted_partial(n, 2000, 2)
        slow = arith.ramanujan_weighted_partial_naive(n, 2000, 2)
        assert abs(fast - slow) < 1e-12


# ---------------------------------------------------------------------------
# Dirichlet characters
# ---------------------------------------------------------------------------

class TestCharacters:
    def test_modulus_one(self):
        chars = arith.characters_mod(1)
        assert len(chars) == 1
        chi = chars[0]
        assert chi.is_principal and chi.is_primitive and chi.conductor == 1
        assert chi.values == (complex(1.0),)

    def test_modulus_four(self):
        chars = arith.characters_mod(4)
        assert len(chars) == 2
        principal = [c for c in chars if c.is_principal]
        quartic = [c for c in chars if not c.is_principal]
        assert len(principal) == 1 and len(quartic) == 1
        chi = quartic[0]
        assert abs(chi.values[1] - 1) < 1e-12
        assert abs(chi.values[3] + 1) < 1e-12
        assert chi.values[0] == 0 and chi.values[2] == 0
        assert chi.is_primitive and chi.conductor == 4

    def test_modulus_five(self):
        chars = arith.characters_mod(5)
        assert len(chars) == 4
        real_nonprincipal = [
            c for c in chars
            if not c.is_principal and all(abs(v.imag) < 1e-12 for v in c.values)
        ]
        assert len(real_nonprincipal) == 1

    @pytest.mark.parametrize("m", list(range(1, 51)))
    def test_group_size_and_unit_modulus(self, m):
        chars = arith.characters_mod(m)
        assert len(chars) == arith.euler_phi(m)
        for chi in chars:
            for a in range(m):
                if math.gcd(a, m) == 1:
                    assert abs(abs(chi.values[a]) - 1.0) < 1e-12
                else:
                    assert chi.values[a] == 0

    @pytest.mark.parametrize("m", [3, 4, 5, 8, 9, 12, 15, 16, 24, 35, 40])
    def test_complete_multiplicativity(self, m):
        for chi in arith.characters_mod(m):
            for a in range(m):
                for b in range(m):
                    lhs = chi.values[(a * b) % m]
                    rhs = chi.values[a] * chi.values[b]
                    assert abs(lhs - rhs) < 1e-9

    @pytest.mark.parametrize("m", list(range(1, 51)))
    def test_orthogonality(self, m):
        chars = arith.characters_mod(m)
        phi = arith.euler_phi(m)
        # sum over characters at fixed a
        for a in range(m):
            total = sum(chi.values[a] for chi in chars)
            target = phi if (math.gcd(a, m) == 1 and a % m == 1 % m) else 0.0
            assert abs(total - target) < 1e-9
        # pairwise over residues
        for i, chi in enumerate(chars):
            for chj in chars[i:]:
                inner = sum(
                    chi.values[a] * chj.values[a].conjugate() for a in range(m)
                )
                target = phi if chi is chj else 0.0
                assert abs(inner - target) < 1e-9

    def test_enumeration_limit(self):
        with pytest.raises(ValueError):
            arith.characters_mod(201)


class TestCharacterSums:
    def test_trivial_modulus(self):
        chi = arith.characters_mod(1)[0]
        for n in (1, 5, 9):
            assert arith.character_sums(chi, n) == (1, 1, 1)

    def test_primitive_gauss_magnitude(self):
        for m in range(2, 51):
            for chi in arith.characters_mod(m):
                if chi.is_primitive:
                    tau = arith.character_sums(chi, 1)[2]
                    assert abs(abs(tau) - math.sqrt(m)) < 1e-9

    def test_quadratic_mod_five(self):
        chars = arith.characters_mod(5)
        quad = next(
            c for c in chars
            if not c.is_principal and all(abs(v.imag) < 1e-12 for v in c.values)
        )
        tau = arith.character_sums(quad, 1)[2]
        assert abs(abs(tau) - math.sqrt(5)) < 1e-12

    @pytest.mark.parametrize("m", [2, 6, 9, 12, 30])
    def test_principal_restriction_is_ramanujan(self, m):
        chi0 = next(c for c in arith.characters_mod(m) if c.is_principal)
        for n in range(1, 40):
            cp = arith.character_sums(chi0, n)[1]
            assert abs(cp - arith.ramanujan_sum(m, n)) < 1e-9


class TestShiftedIdentity:
    def test_trivial_modulus_exact(self):
        assert arith.shifted_ramanujan_residual(1, 10) == 0.0

    def test_example(self):
        assert arith.shifted_ramanujan_residual(6, 7) < 1e-9

    def test_small_sweep(self):
        assert arith.shifted_identity_max_residual(15, 60) < 1e-9


class TestInducePrimitive:
    def test_primitive_fixed_point(self):
        chars = arith.characters_mod(5)
        chi = next(c for c in chars if not c.is_principal)
        star, ok = arith.induce_primitive(chi)
        assert ok and star.modulus == 5 and star.values == chi.values

    def test_mod8_induced_from_mod4(self):
        chars = arith.characters_mod(8)
        induced = [c for c in chars if not c.is_principal and c.conductor == 4]
        assert len(induced) == 1
        star, ok = arith.induce_primitive(induced[0])
        assert ok and star.modulus == 4 and star.is_primitive

    def test_principal_rejected(self):
        chi0 = next(c for c in arith.characters_mod(12) if c.is_principal)
        with pytest.raises(ValueError):
            arith.induce_primitive(chi0)

    @pytest.mark.parametrize("m", [8, 9, 12, 15, 16, 18, 20, 21, 24, 36, 45])
    def test_scale_identity_holds_everywhere(self, m):
        # induce_primitive raises internally if the rescaled identity fails
        for chi in arith.characters_mod(m):
            if chi.is_principal:
                continue
            star, ok = arith.induce_primitive(chi)
            assert ok and chi.conductor == star.modulus
