#include "critorb/dynatomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>
#include <tuple>

#include "critorb/error.hpp"
#include "critorb/orbit.hpp"

namespace critorb {

namespace {

// Read-mostly memo for polynomials and discriminants keyed by (kind, d, n).
// Values are computed outside the lock; the first insertion wins.
template <class Value>
class Memo {
public:
    template <class Compute>
    Value get(unsigned d, std::uint64_t n, Compute&& compute) {
        const auto key = std::make_pair(d, n);
        {
            std::shared_lock lock(mutex_);
            auto it = table_.find(key);
            if (it != table_.end()) return it->second;
        }
        Value value = compute();
        std::unique_lock lock(mutex_);
        return table_.try_emplace(key, std::move(value)).first->second;
    }

private:
    std::shared_mutex mutex_;
    std::map<std::pair<unsigned, std::uint64_t>, Value> table_;
};

Memo<IntPoly>& iterate_memo() {
    static Memo<IntPoly> memo;
    return memo;
}
Memo<IntPoly>& gleason_memo() {
    static Memo<IntPoly> memo;
    return memo;
}
Memo<BigInt>& disc_memo() {
    static Memo<BigInt> memo;
    return memo;
}

void check_degree_guard(unsigned d, std::uint64_t n, std::uint64_t max_degree) {
    // d^(n-1) <= max_degree
    double log_deg = static_cast<double>(n - 1) * std::log2(static_cast<double>(d));
    if (log_deg > std::log2(static_cast<double>(max_degree)) + 1e-9)
        throw SizeGuardExceeded("polynomial degree d^(n-1) too large for d=" + std::to_string(d) +
                                    ", n=" + std::to_string(n),
                                log_deg);
}

IntPoly poly_pow(IntPoly base, unsigned e) {
    IntPoly result({1});
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

}  // namespace

void require_word_prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 63) || !is_prime_u64(p))
        throw InvalidInput("p must be a prime below 2^63, got " + std::to_string(p));
}

IntPoly iterate_poly(unsigned d, std::uint64_t n, std::uint64_t max_degree) {
    require_degree(d);
    if (n == 0) throw InvalidInput("iterate index n must be >= 1");
    check_degree_guard(d, n, max_degree);
    return iterate_memo().get(d, n, [&] {
        if (n == 1) return IntPoly::variable();
        return poly_pow(iterate_poly(d, n - 1, max_degree), d) + IntPoly::variable();
    });
}

IntPoly gleason_poly(unsigned d, std::uint64_t n, std::uint64_t max_degree) {
    require_degree(d);
    if (n == 0) throw InvalidInput("iterate index n must be >= 1");
    check_degree_guard(d, n, max_degree);
    return gleason_memo().get(d, n, [&] {
        IntPoly num({1}), den({1});
        for (std::uint64_t t = 1; t <= n; ++t) {
            if (n % t) continue;
            const int mu = moebius(n / t);
            if (mu == 1) num = num * iterate_poly(d, t, max_degree);
            if (mu == -1) den = den * iterate_poly(d, t, max_degree);
        }
        return num.exact_div(den);
    });
}

BigInt gleason_degree(unsigned d, std::uint64_t n) {
    require_degree(d);
    if (n == 0) throw InvalidInput("iterate index n must be >= 1");
    BigInt total = 0;
    for (std::uint64_t m = 1; m <= n; ++m) {
        if (n % m) continue;
        const int mu = moebius(n / m);
        if (mu == 0) continue;
        BigInt term = critorb::pow(BigInt(d), static_cast<unsigned long>(m - 1));
        total += mu > 0 ? term : BigInt(-term);
    }
    return total;
}

namespace {

// log2 of the Euclidean norm, rounded up.
double log2_norm(const IntPoly& f) {
    BigInt sum = 0;
    for (const auto& c : f.coefficients()) sum += c * c;
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, sum.get_mpz_t());
    return 0.5 * (std::log2(mant) + static_cast<double>(exp)) + 1e-6;
}

}  // namespace

BigInt resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) return 0;
    const long m = f.degree(), n = g.degree();
    if (m == 0 && n == 0) return 1;
    // |Res| <= |f|^n |g|^m.
    const double bound_bits = static_cast<double>(n) * log2_norm(f) + static_cast<double>(m) * log2_norm(g) + 2;
    BigInt residue = 0, modulus = 1;
    std::uint64_t q = (std::uint64_t{1} << 62) - 1;
    while (static_cast<double>(mpz_sizeinbase(modulus.get_mpz_t(), 2)) < bound_bits + 2) {
        q -= 2;
        while (!is_prime_u64(q)) q -= 2;
        const BigInt qq(static_cast<unsigned long>(q));
        if (mpz_divisible_p(f.leading().get_mpz_t(), qq.get_mpz_t()) ||
            mpz_divisible_p(g.leading().get_mpz_t(), qq.get_mpz_t()))
            continue;
        const std::uint64_t r = modp::resultant(modp::reduce(f, q), modp::reduce(g, q), q);
        // Garner step: x = residue + modulus * t with x = r mod q.
        const std::uint64_t cur = to_u64(mod_floor(residue, qq), "residue");
        const std::uint64_t inv = invmod_u64(to_u64(mod_floor(modulus, qq), "modulus"), q);
        const std::uint64_t diff = r >= cur ? r - cur : r + q - cur;
        residue += modulus * BigInt(static_cast<unsigned long>(mulmod_u64(diff, inv, q)));
        modulus *= qq;
    }
    // Symmetric representative.
    if (residue > modulus / 2) residue -= modulus;
    return residue;
}

BigInt discriminant(const IntPoly& f) {
    if (f.degree() < 1) throw InvalidInput("discriminant needs a polynomial of degree >= 1");
    const long D = f.degree();
    BigInt res = resultant(f, f.derivative());
    BigInt out;
    mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), f.leading().get_mpz_t());
    if (((D * (D - 1)) / 2) % 2) out = -out;
    return out;
}

BigInt gleason_discriminant(unsigned d, std::uint64_t n) {
    return disc_memo().get(d, n, [&] { return discriminant(gleason_poly(d, n)); });
}

bool p_divides_discriminant(const IntPoly& f, std::uint64_t p) {
    require_word_prime(p);
    if (f.degree() < 1) throw InvalidInput("discriminant needs a polynomial of degree >= 1");
    const BigInt pp(static_cast<unsigned long>(p));
    if (mpz_divisible_p(f.leading().get_mpz_t(), pp.get_mpz_t()))
        return mpz_divisible_p(discriminant(f).get_mpz_t(), pp.get_mpz_t()) != 0;
    const modp::Poly fp = modp::reduce(f, p);
    const modp::Poly dp = modp::derivative(fp, p);
    if (dp.empty()) return true;
    return modp::degree(modp::gcd(fp, dp, p)) >= 1;
}

namespace {

modp::Poly reduce_nonzero(const IntPoly& f, std::uint64_t p) {
    require_word_prime(p);
    modp::Poly fp = modp::reduce(f, p);
    if (fp.empty()) throw InvalidInput("polynomial vanishes identically mod " + std::to_string(p));
    return fp;
}

// gcd(x^p - x, f): the product of the distinct linear factors of f.
modp::Poly linear_part(const modp::Poly& f, std::uint64_t p) {
    const modp::Poly g = modp::monic(f, p);
    modp::Poly xp = modp::powmod({0, 1}, p, g, p);
    xp = modp::sub(xp, {0, 1}, p);
    return modp::gcd(g, xp, p);
}

// Splits a monic squarefree product of distinct linear factors.
void split_linear(const modp::Poly& g, std::uint64_t p, std::mt19937_64& rng, std::vector<std::uint64_t>& out) {
    const long deg = modp::degree(g);
    if (deg <= 0) return;
    if (deg == 1) {
        out.push_back((p - g[0]) % p);
        return;
    }
    std::uniform_int_distribution<std::uint64_t> pick(0, p - 1);
    for (;;) {
        const modp::Poly shift{pick(rng), 1};
        modp::Poly h = modp::powmod(shift, (p - 1) / 2, g, p);
        h = modp::sub(h, {1}, p);
        modp::Poly factor = modp::gcd(g, h, p);
        const long fd = modp::degree(factor);
        if (fd >= 1 && fd < deg) {
            split_linear(factor, p, rng, out);
            split_linear(modp::divmod(g, factor, p).first, p, rng, out);
            return;
        }
    }
}

unsigned multiplicity_at(modp::Poly f, std::uint64_t r, std::uint64_t p) {
    unsigned m = 0;
    const modp::Poly lin{(p - r) % p, 1};
    while (!f.empty() && modp::eval(f, r, p) == 0) {
        f = modp::divmod(f, lin, p).first;
        ++m;
    }
    return m;
}

}  // namespace

bool has_root_mod_p(const IntPoly& f, std::uint64_t p) {
    const modp::Poly fp = reduce_nonzero(f, p);
    if (modp::degree(fp) == 0) return false;
    return modp::degree(linear_part(fp, p)) >= 1;
}

std::vector<RootMultiplicity> roots_mod_p(const IntPoly& f, std::uint64_t p, const RootOptions& options) {
    const modp::Poly fp = reduce_nonzero(f, p);
    std::vector<std::uint64_t> roots;
    if (modp::degree(fp) >= 1) {
        if (p < options.brute_force_limit || p == 2) {
            for (std::uint64_t x = 0; x < p; ++x)
                if (modp::eval(fp, x, p) == 0) roots.push_back(x);
        } else {
            std::mt19937_64 rng(options.seed ^ p);
            split_linear(linear_part(fp, p), p, rng, roots);
            std::sort(roots.begin(), roots.end());
        }
    }
    std::vector<RootMultiplicity> out;
    for (std::uint64_t r : roots) out.push_back({r, multiplicity_at(fp, r, p)});
    return out;
}

bool is_simple_root(const IntPoly& f, std::uint64_t p, const BigInt& c0) {
    require_word_prime(p);
    const BigInt pp(static_cast<unsigned long>(p));
    if (f.eval_mod(c0, pp) != 0) throw InvalidInput("c0 = " + to_string(c0) + " is not a root mod " + std::to_string(p));
    return f.derivative().eval_mod(c0, pp) != 0;
}

}  // namespace critorb
