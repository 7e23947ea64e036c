#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "gamma1lab/arith.hpp"
#include "gamma1lab/errors.hpp"

using namespace g1lab;
using arith::cplx;

namespace {

// Trial-division primality, the independent oracle for the sieve.
bool is_prime_naive(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("sieve_primes small cases") {
    CHECK(arith::sieve_primes(10) == std::vector<std::uint32_t>{2, 3, 5, 7});
    CHECK(arith::sieve_primes(1).empty());
    CHECK(arith::sieve_primes(0).empty());
    CHECK(arith::sieve_primes(2) == std::vector<std::uint32_t>{2});
    auto p100 = arith::sieve_primes(100);
    CHECK(p100.size() == 25);
    CHECK(p100.back() == 97);
}

TEST_CASE("sieve_primes matches trial division up to 2000") {
    auto primes = arith::sieve_primes(2000);
    std::size_t idx = 0;
    for (std::uint64_t n = 0; n <= 2000; ++n) {
        if (is_prime_naive(n)) {
            REQUIRE(idx < primes.size());
            CHECK(primes[idx] == n);
            ++idx;
        }
    }
    CHECK(idx == primes.size());
}

TEST_CASE("multiplicative functions") {
    CHECK(arith::euler_phi(1) == 1);
    CHECK(arith::euler_phi(5) == 4);
    CHECK(arith::euler_phi(12) == 4);
    CHECK(arith::euler_phi(101) == 100);

    CHECK(arith::mobius(1) == 1);
    CHECK(arith::mobius(4) == 0);
    CHECK(arith::mobius(6) == 1);
    CHECK(arith::mobius(30) == -1);
    CHECK(arith::mobius(7) == -1);

    CHECK(arith::von_mangoldt(1) == 0.0);
    CHECK(arith::von_mangoldt(8) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(arith::von_mangoldt(7) == doctest::Approx(std::log(7.0)).epsilon(1e-15));
    CHECK(arith::von_mangoldt(12) == 0.0);

    CHECK(arith::divisor_count(1) == 1);
    CHECK(arith::divisor_count(12) == 6);
    CHECK(arith::divisor_count(97) == 2);
}

TEST_CASE("multiplicative functions reject n = 0") {
    CHECK_THROWS_AS(arith::euler_phi(0), OutOfRange);
    CHECK_THROWS_AS(arith::mobius(0), OutOfRange);
    CHECK_THROWS_AS(arith::von_mangoldt(0), OutOfRange);
    CHECK_THROWS_AS(arith::divisor_count(0), OutOfRange);
}

TEST_CASE("euler_phi is multiplicative on coprime pairs") {
    for (std::uint64_t a : {3, 4, 5, 7, 9, 11})
        for (std::uint64_t b : {8, 13, 25, 27}) {
            if (std::gcd(a, b) != 1) continue;
            CHECK(arith::euler_phi(a * b) == arith::euler_phi(a) * arith::euler_phi(b));
        }
}

TEST_CASE("mod_inverse examples and conventions") {
    CHECK(arith::mod_inverse(3, 7) == 5);
    CHECK(arith::mod_inverse(2, 3) == 2);
    CHECK(arith::mod_inverse(1, 2) == 1);
    CHECK(arith::mod_inverse(5, 1) == 0);  // t = 1: the only residue
    CHECK_THROWS_AS(arith::mod_inverse(2, 4), NotInvertible);
    CHECK_THROWS_AS(arith::mod_inverse(0, 9), NotInvertible);
}

TEST_CASE("mod_inverse randomized against the definition") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<std::uint64_t> dt(2, 1000000);
    int done = 0;
    while (done < 10000) {
        std::uint64_t t = dt(rng);
        std::uint64_t a = dt(rng) % t;
        if (a == 0 || std::gcd(a, t) != 1) continue;
        std::uint64_t x = arith::mod_inverse(a, t);
        REQUIRE(x < t);
        REQUIRE((a * x) % t == 1);
        ++done;
    }
}

TEST_CASE("unit_phase exact special angles") {
    CHECK(arith::unit_phase(0, 5) == cplx(1.0, 0.0));
    CHECK(arith::unit_phase(1, 4) == cplx(0.0, 1.0));
    CHECK(arith::unit_phase(1, 2) == cplx(-1.0, 0.0));
    CHECK(arith::unit_phase(3, 4) == cplx(0.0, -1.0));
    // exact rational reduction: equal phases are bit-identical
    CHECK(arith::unit_phase(2, 8) == arith::unit_phase(1, 4));
    CHECK(arith::unit_phase(10, 4) == arith::unit_phase(1, 2));

    cplx third = arith::unit_phase(1, 3);
    CHECK(std::abs(third.real() - (-0.5)) <= 1e-16);
    CHECK(std::abs(third.imag() - 0.86602540378443864676) <= 1e-15);
    // conjugate pair (quadrant folding may differ by one ulp)
    CHECK(std::abs(arith::unit_phase(2, 3) - std::conj(third)) <= 1e-15);
    CHECK_THROWS_AS(arith::unit_phase(1, 0), OutOfRange);
}

TEST_CASE("unit_phase stays on the unit circle") {
    for (std::uint64_t den : {7, 12, 360, 3600}) {
        for (std::uint64_t num = 0; num < den; num += den / 7 + 1) {
            cplx z = arith::unit_phase(num, den);
            CHECK(std::abs(std::abs(z) - 1.0) <= 1e-15);
        }
    }
}

TEST_CASE("character group trivial modulus") {
    arith::CharacterGroup G(1);
    CHECK(G.order() == 1);
    CHECK(G.is_trivial(0));
    CHECK(G.value(0, 0) == cplx(1.0, 0.0));
    CHECK(G.value(0, 5) == cplx(1.0, 0.0));
}

TEST_CASE("character group mod 5 has two odd and two even characters") {
    arith::CharacterGroup G(5);
    REQUIRE(G.order() == 4);
    int odd = 0, even = 0, trivial = 0;
    for (std::uint64_t i = 0; i < G.order(); ++i) {
        (G.parity(i) == -1 ? odd : even)++;
        if (G.is_trivial(i)) ++trivial;
        CHECK(G.value(i, 1) == cplx(1.0, 0.0));
        CHECK(G.value(i, 5) == cplx(0.0, 0.0));  // non-unit
        CHECK(G.value(i, 10) == cplx(0.0, 0.0));
    }
    CHECK(odd == 2);
    CHECK(even == 2);
    CHECK(trivial == 1);
}

TEST_CASE("character row orthogonality mod 8") {
    arith::CharacterGroup G(8);
    REQUIRE(G.order() == 4);
    for (std::uint64_t i = 0; i < 4; ++i)
        for (std::uint64_t j = 0; j < 4; ++j) {
            cplx acc(0.0, 0.0);
            for (std::uint64_t m = 0; m < 8; ++m)
                acc += G.value(i, m) * std::conj(G.value(j, m));
            double expect = (i == j) ? 4.0 : 0.0;
            CHECK(std::abs(acc - expect) <= 1e-15);
        }
}

TEST_CASE("character completeness sum over characters") {
    // sum_chi chi(m) = phi(t) when m = 1 (mod t), else 0
    for (std::uint64_t t = 2; t <= 60; ++t) {
        arith::CharacterGroup G(t);
        for (std::uint64_t m = 0; m < t; ++m) {
            cplx acc(0.0, 0.0);
            for (std::uint64_t i = 0; i < G.order(); ++i) acc += G.value(i, m);
            double expect = (m % t == 1 % t) ? double(G.order()) : 0.0;
            CHECK(std::abs(acc - expect) <= 1e-9);
        }
    }
}

TEST_CASE("characters are multiplicative and unimodular on units") {
    for (std::uint64_t t : {12, 15, 16, 21}) {
        arith::CharacterGroup G(t);
        for (std::uint64_t i = 0; i < G.order(); ++i) {
            for (std::uint64_t a = 1; a < t; ++a) {
                if (std::gcd(a, t) != 1) continue;
                CHECK(std::abs(std::abs(G.value(i, a)) - 1.0) <= 1e-15);
                for (std::uint64_t b = 1; b < t; ++b) {
                    if (std::gcd(b, t) != 1) continue;
                    cplx lhs = G.value(i, (a * b) % t);
                    cplx rhs = G.value(i, a) * G.value(i, b);
                    CHECK(std::abs(lhs - rhs) <= 1e-14);
                }
            }
        }
    }
}

TEST_CASE("character parity matches value at -1 and conjugate index pairs up") {
    for (std::uint64_t t : {5, 7, 9, 12, 16, 40}) {
        arith::CharacterGroup G(t);
        for (std::uint64_t i = 0; i < G.order(); ++i) {
            cplx at_minus1 = G.value(i, t - 1);
            CHECK(std::abs(at_minus1 - cplx(double(G.parity(i)), 0.0)) <= 1e-15);
            std::uint64_t j = G.conjugate_index(i);
            for (std::uint64_t m = 0; m < t; ++m)
                CHECK(std::abs(G.value(j, m) - std::conj(G.value(i, m))) <= 1e-15);
        }
    }
}

TEST_CASE("character table agrees with streaming values") {
    for (std::uint64_t t : {7, 12, 36}) {
        arith::CharacterGroup G(t);
        REQUIRE(G.has_table());
        for (std::uint64_t i = 0; i < G.order(); ++i) {
            const cplx* row = G.table_row(i);
            for (std::uint64_t m = 0; m < t; ++m) CHECK(row[m] == G.value(i, m));
        }
    }
}

TEST_CASE("character phase_of is exact on units") {
    arith::CharacterGroup G(35);
    std::uint64_t num = 0, den = 0;
    for (std::uint64_t i = 0; i < G.order(); ++i) {
        for (std::uint64_t m = 0; m < 35; ++m) {
            bool unit = std::gcd(m, std::uint64_t(35)) == 1;
            CHECK(G.phase_of(i, m, num, den) == unit);
            if (unit) CHECK(arith::unit_phase(num, den) == G.value(i, m));
        }
    }
}

TEST_CASE("character group construction cap") {
    CHECK_THROWS_AS(arith::CharacterGroup(100001), BudgetExceeded);
    CHECK_THROWS_AS(arith::CharacterGroup(50, 10), BudgetExceeded);
    CHECK_THROWS_AS(arith::CharacterGroup(0), OutOfRange);
    CHECK_NOTHROW(arith::CharacterGroup(100, 100));
}

TEST_CASE("odd character average examples") {
    CHECK(std::abs(arith::odd_character_average(5, 1, 1) - 1.0) <= 1e-12);
    CHECK(std::abs(arith::odd_character_average(5, 4, 1) + 1.0) <= 1e-12);  // 4 = -1 mod 5
    CHECK(arith::odd_character_average(5, 5, 1) == 0.0);                    // gcd > 1
    CHECK(std::abs(arith::odd_character_average(7, 3, 5)) <= 1e-12);        // unrelated classes
    CHECK_THROWS_AS(arith::odd_character_average(2, 1, 1), OutOfRange);
}

TEST_CASE("odd character average: table equals closed form") {
    for (std::uint64_t q = 3; q <= 30; ++q) {
        if (arith::euler_phi(q) % 2 != 0) continue;  // q = 1,2 excluded already
        for (std::uint64_t m = 0; m < q; ++m)
            for (std::uint64_t n = 0; n < q; ++n) {
                double tab = arith::odd_character_average_table(q, m, n);
                double cls = arith::odd_character_average_closed(q, m, n);
                CHECK(std::abs(tab - cls) <= 1e-10);
            }
    }
}
