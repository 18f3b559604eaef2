#include "critorb/arith.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <random>

#include "critorb/error.hpp"

namespace critorb {

BigInt parse_bigint(const std::string& text) {
    std::size_t i = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
    if (i == text.size()) throw InvalidInput("malformed integer: '" + text + "'");
    for (std::size_t j = i; j < text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(text[j])))
            throw InvalidInput("malformed integer: '" + text + "'");
    }
    BigInt out;
    out.set_str(text[0] == '+' ? text.substr(1) : text, 10);
    return out;
}

std::string to_string(const BigInt& x) { return x.get_str(10); }

BigInt mod_floor(const BigInt& x, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt pow(const BigInt& base, unsigned long exp) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

// ---------------------------------------------------------------------------
// Residue

Residue::Residue(BigInt p, unsigned t, const BigInt& value) : p_(std::move(p)), t_(t) {
    if (t_ < 1) throw InvalidInput("residue exponent must be >= 1");
    if (!is_prime(p_)) throw InvalidInput("residue modulus base " + to_string(p_) + " is not prime");
    modulus_ = critorb::pow(p_, t_);
    value_ = mod_floor(value, modulus_);
}

Residue::Residue(Unchecked, BigInt p, unsigned t, BigInt modulus, BigInt value)
    : p_(std::move(p)), t_(t), modulus_(std::move(modulus)), value_(std::move(value)) {}

Residue Residue::with_value(const BigInt& v) const {
    return Residue(Unchecked{}, p_, t_, modulus_, mod_floor(v, modulus_));
}

Residue Residue::reduce_to(unsigned s) const {
    if (s < 1 || s > t_) throw InvalidInput("cannot project Z/p^t onto a larger ring");
    BigInt m = critorb::pow(p_, s);
    return Residue(Unchecked{}, p_, s, m, mod_floor(value_, m));
}

unsigned Residue::valuation() const {
    if (value_ == 0) return t_;
    BigInt rest;
    return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), value_.get_mpz_t(), p_.get_mpz_t()));
}

void Residue::require_same_ring(const Residue& other) const {
    if (t_ != other.t_ || p_ != other.p_) throw InvalidInput("residues live in different rings");
}

Residue operator+(const Residue& a, const Residue& b) {
    a.require_same_ring(b);
    return a.with_value(a.value_ + b.value_);
}

Residue operator-(const Residue& a, const Residue& b) {
    a.require_same_ring(b);
    return a.with_value(a.value_ - b.value_);
}

Residue operator*(const Residue& a, const Residue& b) {
    a.require_same_ring(b);
    return a.with_value(a.value_ * b.value_);
}

bool operator==(const Residue& a, const Residue& b) {
    return a.p_ == b.p_ && a.t_ == b.t_ && a.value_ == b.value_;
}

Residue Residue::pow(const BigInt& e) const {
    if (e < 0) throw InvalidInput("negative exponent");
    BigInt out;
    mpz_powm(out.get_mpz_t(), value_.get_mpz_t(), e.get_mpz_t(), modulus_.get_mpz_t());
    return Residue(Unchecked{}, p_, t_, modulus_, out);
}

// ---------------------------------------------------------------------------
// Word-size helpers

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (r != 1) throw InvalidInput("element is not invertible");
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

std::uint64_t to_u64(const BigInt& x, const char* what) {
    if (x < 0 || mpz_sizeinbase(x.get_mpz_t(), 2) > 64)
        throw InvalidInput(std::string(what) + " must fit in an unsigned 64-bit word");
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
    return out;
}

namespace {

BigInt from_u64(std::uint64_t x) {
    BigInt out;
    mpz_import(out.get_mpz_t(), 1, -1, sizeof(x), 0, 0, &x);
    return out;
}

constexpr std::array<std::uint64_t, 12> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin_u64(std::uint64_t n, std::uint64_t a) {
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod_u64(a % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool miller_rabin(const BigInt& n, const BigInt& a) {
    BigInt d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    BigInt x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const BigInt n_minus_1 = n - 1;
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // The first twelve primes are a deterministic witness set below 3.3e24.
    for (std::uint64_t a : kSmallPrimes) {
        if (!miller_rabin_u64(n, a)) return false;
    }
    return true;
}

bool is_prime(const BigInt& x, std::uint64_t seed) {
    if (x < 2) return false;
    if (mpz_sizeinbase(x.get_mpz_t(), 2) <= 64) return is_prime_u64(to_u64(x, "x"));
    for (std::uint64_t p : kSmallPrimes) {
        if (mpz_divisible_ui_p(x.get_mpz_t(), p)) return false;
    }
    for (std::uint64_t a : kSmallPrimes) {
        if (!miller_rabin(x, from_u64(a))) return false;
    }
    // Witnesses are derived from the seed and x itself so the answer is a
    // pure function of (x, seed).
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(mpz_getlimbn(x.get_mpz_t(), 0)),
                      static_cast<std::uint32_t>(mpz_sizeinbase(x.get_mpz_t(), 2))};
    std::mt19937_64 rng(seq);
    const BigInt span = x - 3;
    for (int round = 0; round < 64; ++round) {
        BigInt a;
        // a in [2, x-2]
        std::uint64_t words[4] = {rng(), rng(), rng(), rng()};
        mpz_import(a.get_mpz_t(), 4, -1, sizeof(std::uint64_t), 0, 0, words);
        a = a % span + 2;
        if (!miller_rabin(x, a)) return false;
    }
    return true;
}

BigInt next_prime(const BigInt& x) {
    if (x < 2) return 2;
    BigInt c = x + 1;
    if (c > 2 && mpz_even_p(c.get_mpz_t())) c += 1;
    while (!is_prime(c)) c += 2;
    return c;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    if (limit > 1'000'000'000ULL) throw InvalidInput("prime sieve limit above 10^9");
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
    std::uint64_t limit = 64;
    while (true) {
        auto ps = primes_up_to(limit);
        if (ps.size() >= count) {
            ps.resize(count);
            return ps;
        }
        limit *= 2;
    }
}

int moebius(std::uint64_t n) {
    if (n == 0) throw InvalidInput("moebius needs n >= 1");
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

unsigned val_p(const BigInt& x, const BigInt& p) {
    if (!is_prime(p)) throw InvalidInput("val_p: " + to_string(p) + " is not prime");
    if (x == 0) throw InfiniteValuation();
    BigInt rest;
    return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

BigInt crt(std::span<const std::pair<BigInt, BigInt>> pairs) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].second <= 1) throw InvalidInput("crt: modulus must exceed 1");
        for (std::size_t j = 0; j < i; ++j) {
            BigInt g;
            mpz_gcd(g.get_mpz_t(), pairs[i].second.get_mpz_t(), pairs[j].second.get_mpz_t());
            if (g != 1) throw InvalidInput("crt: moduli are not pairwise coprime");
        }
    }
    BigInt x = 0, m = 1;
    for (const auto& [value, modulus] : pairs) {
        // x + m*k = value (mod modulus)
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), modulus.get_mpz_t());
        BigInt k = mod_floor((value - x) * inv, modulus);
        x += m * k;
        m *= modulus;
    }
    return mod_floor(x, m);
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    std::uint64_t order = p - 1;
    std::uint64_t rest = order;
    for (std::uint64_t q = 2; q * q <= rest; ++q) {
        if (rest % q) continue;
        while (rest % q == 0) rest /= q;
        while (order % q == 0 && powmod_u64(a, order / q, p) == 1) order /= q;
    }
    if (rest > 1) {
        while (order % rest == 0 && powmod_u64(a, order / rest, p) == 1) order /= rest;
    }
    return order;
}

// ---------------------------------------------------------------------------
// Factorization

BigInt Factorization::product() const {
    BigInt out = cofactor;
    for (const auto& [p, e] : factors) out *= critorb::pow(p, e);
    return out;
}

namespace {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0 when the
// iteration budget runs out.
BigInt pollard_brent(const BigInt& n, std::uint64_t& budget, std::mt19937_64& rng) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    while (budget > 0) {
        BigInt y = BigInt(static_cast<unsigned long>(rng() % 1'000'000'007ULL)) % n;
        BigInt c = BigInt(static_cast<unsigned long>(rng() % 1'000'000'007ULL + 1)) % n;
        if (c == 0) c = 1;
        const std::uint64_t batch = 128;
        BigInt g = 1, q = 1, x, ys;
        std::uint64_t r = 1;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            std::uint64_t k = 0;
            do {
                ys = y;
                const std::uint64_t steps = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    BigInt diff = x - y;
                    q = q * abs(diff) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += steps;
                budget = budget > steps ? budget - steps : 0;
            } while (k < r && g == 1 && budget > 0);
            r *= 2;
        } while (g == 1 && budget > 0);
        if (g == n) {
            // Backtrack one step at a time.
            do {
                ys = (ys * ys + c) % n;
                BigInt diff = x - ys;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

}  // namespace

Factorization factorize(const BigInt& x, const FactorBudget& budget) {
    if (x <= 1) throw InvalidInput("factorize needs x > 1");
    std::map<BigInt, unsigned> found;
    BigInt n = x;

    std::uint64_t limit = budget.trial_limit;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // No point sieving past sqrt(n).
        BigInt root;
        mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
        limit = std::min<std::uint64_t>(limit, to_u64(root, "root") + 1);
    }
    for (std::uint64_t p : primes_up_to(limit)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(n.get_mpz_t(), p));
            found[from_u64(p)] += e;
        }
        if (n == 1) break;
    }

    std::mt19937_64 rng(budget.seed);
    std::vector<BigInt> pending;
    if (n > 1) pending.push_back(n);
    BigInt unsplit = 1;
    while (!pending.empty()) {
        BigInt m = pending.back();
        pending.pop_back();
        if (is_prime(m, budget.seed)) {
            found[m] += 1;
            continue;
        }
        BigInt root;
        if (mpz_perfect_power_p(m.get_mpz_t())) {
            for (unsigned long k = mpz_sizeinbase(m.get_mpz_t(), 2); k >= 2; --k) {
                if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k)) {
                    for (unsigned long i = 0; i < k; ++i) pending.push_back(root);
                    break;
                }
            }
            continue;
        }
        std::uint64_t iterations = budget.rho_iterations;
        BigInt g = pollard_brent(m, iterations, rng);
        if (g == 0) {
            unsplit *= m;
            continue;
        }
        pending.push_back(g);
        pending.push_back(m / g);
    }

    Factorization out;
    for (const auto& [p, e] : found) {
        // A prime may also divide the unsplit part; pull those copies out.
        unsigned extra = 0;
        while (unsplit > 1 && mpz_divisible_p(unsplit.get_mpz_t(), p.get_mpz_t())) {
            unsplit /= p;
            ++extra;
        }
        out.factors.emplace_back(p, e + extra);
    }
    out.cofactor = unsplit;
    out.complete = unsplit == 1;
    return out;
}

}  // namespace critorb
