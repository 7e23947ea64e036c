#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gamma1lab/errors.hpp"

namespace g1lab::arith {

using cplx = std::complex<double>;

// ---- elementary multiplicative functions ------------------------------

// All primes <= limit, ascending.  Plain Eratosthenes; limit up to ~10^8.
std::vector<std::uint32_t> sieve_primes(std::uint64_t limit);

std::uint64_t euler_phi(std::uint64_t n);
int mobius(std::uint64_t n);
// log p if n = p^a, else 0 (and 0 for n = 1).
double von_mangoldt(std::uint64_t n);
std::uint64_t divisor_count(std::uint64_t n);

// Inverse of a modulo t.  Convention: t = 1 returns 0 (the only residue).
// Throws NotInvertible when gcd(a, t) > 1.
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t t);

// e(num/den) with the rational phase reduced exactly in integers first, so
// equal phases give bit-identical complex values.
cplx unit_phase(std::uint64_t num, std::uint64_t den);

// ---- Dirichlet characters ---------------------------------------------
//
// The unit group (Z/t)* is decomposed into cyclic factors: <-1> x <5> for
// the 2-part (e >= 3), a primitive root for each odd prime power.  Every
// unit m gets a discrete-log tuple; a character is an exponent tuple, and
// chi(m) = e(sum_j chi_j * dlog_j(m) / d_j).

class CharacterGroup {
  public:
    // Throws BudgetExceeded when t exceeds the construction cap.
    explicit CharacterGroup(std::uint64_t t, std::uint64_t t_cap = 100000);

    std::uint64_t modulus() const { return t_; }
    std::uint64_t order() const { return phi_; }  // number of characters
    const std::vector<std::uint64_t>& factor_orders() const { return orders_; }

    // chi_{index}(m); 0 when gcd(m, t) > 1.  index in [0, order).
    cplx value(std::uint64_t index, std::uint64_t m) const;

    bool is_trivial(std::uint64_t index) const;
    // chi(-1): +1 even, -1 odd.
    int parity(std::uint64_t index) const;

    // Eagerly materialized phi(t) x t value table, row-major by character
    // index; only present when phi(t)*t fits the entry budget (the group is
    // still fully usable without it via value()).
    bool has_table() const { return !table_.empty(); }
    const cplx* table_row(std::uint64_t index) const;

    // Exact integer phase of chi_{index}(m) as num/den with den = lcm of the
    // factor orders; returns false for non-units.  Used by the streaming
    // character-sum kernels to avoid materializing tables.
    bool phase_of(std::uint64_t index, std::uint64_t m,
                  std::uint64_t& num, std::uint64_t& den) const;

    // Index of the complex-conjugate character.
    std::uint64_t conjugate_index(std::uint64_t index) const;

  private:
    std::uint64_t t_;
    std::uint64_t phi_;
    std::uint64_t lcm_order_;
    std::vector<std::uint64_t> orders_;       // cyclic factor orders d_j
    std::vector<std::uint32_t> dlog_;         // t * n_factors, row per residue
    std::vector<std::uint64_t> lcm_weights_;  // lcm_order_ / d_j
    std::vector<cplx> twiddle_;               // e(r / lcm_order_)
    std::vector<cplx> table_;                 // optional phi x t
    std::uint32_t n_factors_;
    std::uint64_t minus_one_;  // residue of -1 mod t

    void decompose(std::uint64_t m, std::uint32_t* out) const;
};

CharacterGroup character_group(std::uint64_t t, std::uint64_t t_cap = 100000);

// (2/phi(q)) sum over odd chi mod q of chi(m) conj(chi(n)):
//   - _table: summed from the character group;
//   - _closed: the closed form +1 if m = n (mod q), -1 if m = -n (mod q),
//     0 otherwise (and 0 when gcd(mn, q) > 1);
//   - plain: both, cross-checked to 1e-10 (InternalError otherwise).
double odd_character_average_table(std::uint64_t q, std::uint64_t m, std::uint64_t n);
double odd_character_average_closed(std::uint64_t q, std::uint64_t m, std::uint64_t n);
double odd_character_average(std::uint64_t q, std::uint64_t m, std::uint64_t n);

}  // namespace g1lab::arith
