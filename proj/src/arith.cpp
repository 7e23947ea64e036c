#include "gamma1lab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace g1lab::arith {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Trial-division factorization into (prime, exponent) pairs; fine for the
// moduli this module sees (t <= 1e5 in groups, small n elsewhere).
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            std::uint32_t e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 acc = 1, base = b % m;
    while (e) {
        if (e & 1) acc = acc * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(acc);
}

// Smallest primitive root mod p^a (p odd prime).  Standard search: find a
// generator mod p, then lift (g works mod p^a unless g^(p-1) = 1 mod p^2,
// in which case g + p does).
std::uint64_t primitive_root(std::uint64_t p, std::uint32_t a) {
    std::uint64_t phi_p = p - 1;
    auto fac = factorize(phi_p);
    std::uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto [r, e] : fac) {
            (void)e;
            if (pow_mod(g, phi_p / r, p) == 1) { ok = false; break; }
        }
        if (ok) break;
    }
    if (a == 1) return g;
    std::uint64_t p2 = p * p;
    if (pow_mod(g, phi_p, p2) == 1) g += p;
    return g;
}

}  // namespace

std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> comp(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            primes.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return primes;
}

std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw OutOfRange("euler_phi: n = 0");
    std::uint64_t r = n;
    for (auto [p, e] : factorize(n)) { (void)e; r -= r / p; }
    return r;
}

int mobius(std::uint64_t n) {
    if (n == 0) throw OutOfRange("mobius: n = 0");
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        (void)p;
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

double von_mangoldt(std::uint64_t n) {
    if (n == 0) throw OutOfRange("von_mangoldt: n = 0");
    if (n == 1) return 0.0;
    auto f = factorize(n);
    if (f.size() != 1) return 0.0;
    return std::log(static_cast<double>(f[0].first));
}

std::uint64_t divisor_count(std::uint64_t n) {
    if (n == 0) throw OutOfRange("divisor_count: n = 0");
    std::uint64_t d = 1;
    for (auto [p, e] : factorize(n)) { (void)p; d *= (e + 1); }
    return d;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t t) {
    if (t == 1) return 0;
    std::int64_t r0 = static_cast<std::int64_t>(t), r1 = static_cast<std::int64_t>(a % t);
    std::int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1; r0 = r1; r1 = r2;
        std::int64_t s2 = s0 - q * s1; s0 = s1; s1 = s2;
    }
    if (r0 != 1)
        throw NotInvertible("mod_inverse: gcd(" + std::to_string(a) + ", " +
                            std::to_string(t) + ") = " + std::to_string(r0));
    std::int64_t inv = s0 % static_cast<std::int64_t>(t);
    if (inv < 0) inv += static_cast<std::int64_t>(t);
    return static_cast<std::uint64_t>(inv);
}

cplx unit_phase(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw OutOfRange("unit_phase: zero denominator");
    num %= den;
    std::uint64_t g = std::gcd(num, den);
    if (g > 1) { num /= g; den /= g; }
    // fold into a quadrant so quarter-turn phases come out exact
    std::uint64_t four = 4 * num;
    std::uint64_t quad = four / den;           // 0..3
    double rem = static_cast<double>(four - quad * den) / static_cast<double>(4 * den);
    double arg = kTwoPi * rem;                 // in [0, pi/2)
    double c = std::cos(arg), s = std::sin(arg);
    switch (quad) {
        case 0: return {c, s};
        case 1: return {-s, c};
        case 2: return {-c, -s};
        default: return {s, -c};
    }
}

CharacterGroup::CharacterGroup(std::uint64_t t, std::uint64_t t_cap) : t_(t) {
    if (t == 0) throw OutOfRange("CharacterGroup: modulus 0");
    if (t > t_cap)
        throw BudgetExceeded("CharacterGroup: t = " + std::to_string(t) +
                             " exceeds cap " + std::to_string(t_cap));

    // Cyclic decomposition.  Each entry: (generator g, order d, prime-power
    // component pe).  For 2^e with e >= 3 both <-1> (order 2) and <5>.
    struct Factor { std::uint64_t g, d, pe; };
    std::vector<Factor> fs;
    std::uint64_t m2 = t;
    std::uint32_t e2 = 0;
    while (m2 % 2 == 0) { m2 /= 2; ++e2; }
    if (e2 == 2) fs.push_back({3, 2, 4});            // (Z/4)* = <-1>
    if (e2 >= 3) {
        std::uint64_t pe = std::uint64_t(1) << e2;
        fs.push_back({pe - 1, 2, pe});               // <-1>
        fs.push_back({5, std::uint64_t(1) << (e2 - 2), pe});
    }
    for (auto [p, e] : factorize(m2)) {
        std::uint64_t pe = 1;
        for (std::uint32_t i = 0; i < e; ++i) pe *= p;
        fs.push_back({primitive_root(p, e), pe - pe / p, pe});
    }

    n_factors_ = static_cast<std::uint32_t>(fs.size());
    phi_ = 1;
    lcm_order_ = 1;
    for (auto& f : fs) {
        orders_.push_back(f.d);
        phi_ *= f.d;
        lcm_order_ = std::lcm(lcm_order_, f.d);
    }
    if (fs.empty()) { phi_ = 1; lcm_order_ = 1; }  // t = 1 or 2

    for (auto& f : fs) lcm_weights_.push_back(lcm_order_ / f.d);

    // Discrete logs per cyclic factor via CRT: walk g^i mod pe, mark the
    // residues lifted to mod t positionally by component.
    dlog_.assign(t_ * std::max<std::uint32_t>(n_factors_, 1), 0);
    std::vector<std::vector<std::uint32_t>> comp_dlog(fs.size());
    for (std::size_t j = 0; j < fs.size(); ++j) {
        comp_dlog[j].assign(fs[j].pe, 0);
        unsigned __int128 x = 1;
        for (std::uint64_t i = 0; i < fs[j].d; ++i) {
            comp_dlog[j][static_cast<std::uint64_t>(x)] = static_cast<std::uint32_t>(i);
            x = x * fs[j].g % fs[j].pe;
        }
        // For 2^e (e>=3) the <-1> walk covers only {1, 2^e - 1}; the <5>
        // walk covers the 1 mod 4 half.  General residues are decomposed in
        // decompose() by first stripping the sign.
    }
    // Precompute per-residue tuples for all units of t.
    for (std::uint64_t m = 0; m < t_; ++m) {
        if (std::gcd(m, t_) != 1) continue;
        std::uint32_t* row = &dlog_[m * n_factors_];
        for (std::size_t j = 0; j < fs.size(); ++j) {
            std::uint64_t r = m % fs[j].pe;
            if (fs[j].pe % 2 == 0 && fs[j].pe >= 8) {
                // 2-part, e >= 3: component j is either the <-1> slot or the
                // <5> slot; handle the pair jointly on the first of the two.
                if (fs[j].g == fs[j].pe - 1) {
                    // sign slot: r = (-1)^a 5^b; a = 0 iff r = 1 mod 4
                    std::uint64_t rr = r;
                    std::uint32_t a = 0;
                    if (rr % 4 == 3) { a = 1; rr = fs[j].pe - rr; }
                    row[j] = a;
                    row[j + 1] = comp_dlog[j + 1][rr];
                }
                // the <5> slot was filled together with the sign slot
                continue;
            }
            row[j] = comp_dlog[j][r];
        }
    }

    minus_one_ = (t_ == 1) ? 0 : t_ - 1;

    twiddle_.resize(lcm_order_);
    for (std::uint64_t r = 0; r < lcm_order_; ++r)
        twiddle_[r] = unit_phase(r, lcm_order_);

    // Optional eager table, bounded by an entry budget rather than by t
    // alone (phi(t)*t complex doubles at t = 1e5 would be tens of GB).
    constexpr std::uint64_t kTableEntryBudget = std::uint64_t(1) << 23;
    if (phi_ * t_ <= kTableEntryBudget) {
        table_.assign(phi_ * t_, cplx(0.0, 0.0));
        for (std::uint64_t idx = 0; idx < phi_; ++idx) {
            cplx* row = &table_[idx * t_];
            for (std::uint64_t m = 0; m < t_; ++m) {
                std::uint64_t num, den;
                if (phase_of(idx, m, num, den)) row[m] = unit_phase(num, den);
            }
        }
        if (t_ == 1) table_[0] = cplx(1.0, 0.0);  // single residue class
    }
}

void CharacterGroup::decompose(std::uint64_t m, std::uint32_t* out) const {
    const std::uint32_t* row = &dlog_[(m % t_) * n_factors_];
    std::copy(row, row + n_factors_, out);
}

bool CharacterGroup::phase_of(std::uint64_t index, std::uint64_t m,
                              std::uint64_t& num, std::uint64_t& den) const {
    m %= t_;
    if (t_ == 1) { num = 0; den = 1; return true; }
    if (std::gcd(m, t_) != 1) return false;
    // index -> exponent tuple (mixed radix over orders_)
    std::uint64_t acc = 0, ix = index;
    const std::uint32_t* dl = &dlog_[m * n_factors_];
    for (std::uint32_t j = 0; j < n_factors_; ++j) {
        std::uint64_t cj = ix % orders_[j];
        ix /= orders_[j];
        acc = (acc + cj * dl[j] % lcm_order_ * lcm_weights_[j]) % lcm_order_;
    }
    num = acc;
    den = lcm_order_;
    return true;
}

cplx CharacterGroup::value(std::uint64_t index, std::uint64_t m) const {
    if (index >= phi_) throw OutOfRange("CharacterGroup::value: bad index");
    if (!table_.empty()) return table_[index * t_ + (m % t_)];
    std::uint64_t num, den;
    if (!phase_of(index, m, num, den)) return {0.0, 0.0};
    return twiddle_[num % lcm_order_];
}

bool CharacterGroup::is_trivial(std::uint64_t index) const {
    std::uint64_t ix = index;
    for (std::uint32_t j = 0; j < n_factors_; ++j) {
        if (ix % orders_[j] != 0) return false;
        ix /= orders_[j];
    }
    return true;
}

int CharacterGroup::parity(std::uint64_t index) const {
    cplx v = value(index, minus_one_);
    return (v.real() > 0.0) ? +1 : -1;
}

const cplx* CharacterGroup::table_row(std::uint64_t index) const {
    if (table_.empty())
        throw BudgetExceeded("CharacterGroup: value table not materialized for t = " +
                             std::to_string(t_));
    if (index >= phi_) throw OutOfRange("CharacterGroup::table_row: bad index");
    return &table_[index * t_];
}

CharacterGroup character_group(std::uint64_t t, std::uint64_t t_cap) {
    return CharacterGroup(t, t_cap);
}

std::uint64_t CharacterGroup::conjugate_index(std::uint64_t index) const {
    if (index >= phi_) throw OutOfRange("CharacterGroup::conjugate_index: bad index");
    std::uint64_t ix = index, out = 0, radix = 1;
    for (std::uint32_t j = 0; j < n_factors_; ++j) {
        std::uint64_t c = ix % orders_[j];
        ix /= orders_[j];
        std::uint64_t cc = c == 0 ? 0 : orders_[j] - c;
        out += cc * radix;
        radix *= orders_[j];
    }
    return out;
}

double odd_character_average_table(std::uint64_t q, std::uint64_t m, std::uint64_t n) {
    if (q < 3) throw OutOfRange("odd_character_average: q must be >= 3");
    CharacterGroup G(q);
    cplx acc(0.0, 0.0);
    for (std::uint64_t idx = 0; idx < G.order(); ++idx) {
        if (G.parity(idx) != -1) continue;
        acc += G.value(idx, m) * std::conj(G.value(idx, n));
    }
    double table_val = 2.0 / static_cast<double>(G.order()) * acc.real();
    double table_imag = 2.0 / static_cast<double>(G.order()) * acc.imag();
    if (std::abs(table_imag) > 1e-10)
        throw InternalError("odd_character_average: non-real table average at q=" +
                            std::to_string(q));
    return table_val;
}

double odd_character_average_closed(std::uint64_t q, std::uint64_t m, std::uint64_t n) {
    if (q < 3) throw OutOfRange("odd_character_average: q must be >= 3");
    if (std::gcd(m % q, q) != 1 || std::gcd(n % q, q) != 1) return 0.0;
    if (m % q == n % q) return 1.0;
    if ((m + n) % q == 0) return -1.0;
    return 0.0;
}

double odd_character_average(std::uint64_t q, std::uint64_t m, std::uint64_t n) {
    double table_val = odd_character_average_table(q, m, n);
    double closed = odd_character_average_closed(q, m, n);
    if (std::abs(table_val - closed) > 1e-10)
        throw InternalError("odd_character_average: table/closed-form mismatch at q=" +
                            std::to_string(q) + " m=" + std::to_string(m) +
                            " n=" + std::to_string(n));
    return table_val;
}

}  // namespace g1lab::arith
