#include "critorb/bounds.hpp"

#include <cmath>
#include <map>

#include "critorb/error.hpp"

namespace critorb {

namespace {

double log2_abs(const BigInt& x) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

BigInt euler_phi(unsigned d) {
    BigInt phi = d;
    for (const auto& [q, e] : factorize(BigInt(d)).factors) phi = phi / q * (q - 1);
    return phi;
}

}  // namespace

BigInt height(const RationalParam& c) { return std::max(BigInt(abs(c.num())), c.den()); }

RhoBound rho_upper_bound(unsigned d, std::uint64_t n, const RationalParam& c) {
    require_degree(d);
    if (n == 0) throw InvalidInput("iterate index n must be >= 1");
    if (c.is_integer() && classify_integer_param(d, c.num()).kind == OrbitKind::PcfInteger)
        throw InvalidInput("infinite-orbit precondition fails: c = " + c.str() + " is PCF for d = " +
                           std::to_string(d));
    BigInt a = c.num();
    const BigInt& b = c.den();
    const bool even = d % 2 == 0;
    // For odd d, f^n_{d,c}(0) = -f^n_{d,-c}(0).
    if (!even && a < 0) a = -a;

    const double N = std::pow(double(d), double(n - 1));
    const double la = log2_abs(a);
    const double lb = log2_abs(b);
    const double inv = 1.0 / double(d - 1);
    RhoBound out;
    out.general = N * (3 + log2_abs(height(c))) + la;

    auto use = [&](const char* id, double v) {
        out.case_id = id;
        out.value = v;
    };
    if (a < 0) {
        // d even here.
        if (a <= -2 * b) {
            use("c<=-2", N * la);
        } else {
            // c < -2^(1/(d-1))  <=>  a^(d-1) < -2 b^(d-1)
            const BigInt lhs = critorb::pow(a, d - 1);
            const BigInt rhs = -2 * critorb::pow(b, d - 1);
            if (lhs < rhs)
                use("-2<c<-2^(1/(d-1))", N * (3 + lb) - 1);
            else if (lhs == rhs)
                use("general", out.general);
            else
                use("-2^(1/(d-1))<c<0", (N - 1) * lb + la);
        }
    } else if (a < b) {
        use(even ? "0<c<1" : "0<|c|<1,d odd", (N - 1) * (inv + lb) + la);
    } else {
        use(even ? "c>=1" : "|c|>=1,d odd", N * (inv + la) - inv);
    }
    return out;
}

RhoCount count_primitive_primes(unsigned d, const RationalParam& c, std::uint64_t n, const FactorBudget& budget,
                                double max_bits) {
    const auto nums = exact_numerators(d, c, n, max_bits);
    const BigInt& an = nums[n - 1];
    if (an == 0) throw ZeroIterate(n);
    RhoCount out;
    const BigInt mag = abs(an);
    if (mag == 1) return out;
    const Factorization f = factorize(mag, budget);
    out.complete = f.complete;
    for (const auto& [q, e] : f.factors) {
        bool earlier = false;
        for (std::uint64_t i = 0; i + 1 < n && !earlier; ++i)
            earlier = mpz_divisible_p(nums[i].get_mpz_t(), q.get_mpz_t()) != 0;
        if (!earlier) out.primes.push_back(q);
    }
    out.rho = out.primes.size();
    return out;
}

bool MaximalityCertificate::complete() const {
    if (entries.size() != m) return false;
    for (const auto& e : entries)
        if (!e.valid()) return false;
    return true;
}

namespace {

CertificateEntry check_witness(unsigned d, const BigInt& c, std::uint64_t n, const BigInt& p) {
    CertificateEntry e;
    e.n = n;
    e.p = p;
    e.found = true;
    e.p_coprime_to_d = !mpz_divisible_p(BigInt(d).get_mpz_t(), p.get_mpz_t());
    try {
        const Primitivity pr = is_primitive_divisor(d, RationalParam(c), n, p);
        e.primitive = pr.primitive;
        e.v = pr.valuation;
    } catch (const Error&) {
        e.primitive = false;
    }
    e.valuation_coprime = e.primitive && gcd_u64(e.v, d) == 1;
    return e;
}

}  // namespace

MaximalityCertificate maximality_certificate(unsigned d, const BigInt& c, std::uint64_t m,
                                             const CertificateOptions& options) {
    require_degree(d);
    if (m == 0) throw InvalidInput("m must be >= 1");
    MaximalityCertificate cert;
    cert.d = d;
    cert.c = c;
    cert.m = m;
    if (d == 2) {
        const BigInt minus_c = -c;
        cert.minus_c_is_square = minus_c >= 0 && mpz_perfect_square_p(minus_c.get_mpz_t());
    }

    // First index i <= m with f^i(0) = 0 mod p, for the scanned primes.
    std::map<std::uint64_t, std::vector<std::uint64_t>> by_first_zero;
    bool scanned = false;
    auto scan = [&] {
        if (scanned) return;
        scanned = true;
        for (std::uint64_t p : first_primes(options.scan_primes)) {
            if (d % p == 0) continue;
            const std::uint64_t cc = to_u64(mod_floor(c, BigInt(static_cast<unsigned long>(p))), "c mod p");
            std::uint64_t v = 0;
            for (std::uint64_t i = 1; i <= m; ++i) {
                v = powmod_u64(v, d, p) + cc;
                if (v >= p) v -= p;
                if (v == 0) {
                    by_first_zero[i].push_back(p);
                    break;
                }
            }
        }
    };

    const RationalParam param(c);
    for (std::uint64_t n = 1; n <= m; ++n) {
        CertificateEntry entry;
        entry.n = n;
        bool done = false;
        if (estimate_iterate_bits(d, param, n) <= options.factor_bits) {
            const BigInt an = exact_iterate(d, param, n).numerator;
            if (abs(an) > 1) {
                for (const auto& [q, e] : factorize(abs(an), options.budget).factors) {
                    if (mpz_divisible_p(BigInt(d).get_mpz_t(), q.get_mpz_t())) continue;
                    CertificateEntry cand = check_witness(d, c, n, q);
                    if (cand.valid()) {
                        cand.source = "factor";
                        entry = cand;
                        done = true;
                        break;
                    }
                }
            }
        }
        if (!done) {
            scan();
            for (std::uint64_t p : by_first_zero[n]) {
                CertificateEntry cand = check_witness(d, c, n, BigInt(static_cast<unsigned long>(p)));
                if (cand.valid()) {
                    cand.source = "scan";
                    entry = cand;
                    break;
                }
            }
        }
        cert.entries.push_back(std::move(entry));
    }
    if (cert.complete())
        cert.claimed_order = ClaimedOrder{euler_phi(d), BigInt(d), critorb::pow(BigInt(d), m) - 1};
    return cert;
}

std::vector<bool> recheck_certificate(const MaximalityCertificate& cert) {
    std::vector<bool> out;
    for (const auto& e : cert.entries) {
        if (!e.found) {
            out.push_back(!e.valid());
            continue;
        }
        const CertificateEntry again = check_witness(cert.d, cert.c, e.n, e.p);
        out.push_back(again.primitive == e.primitive && again.v == e.v &&
                      again.valuation_coprime == e.valuation_coprime && again.p_coprime_to_d == e.p_coprime_to_d);
    }
    return out;
}

}  // namespace critorb
