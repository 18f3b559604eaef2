#include "critorb/density.hpp"

#include <cmath>
#include <thread>

#include "critorb/dynatomic.hpp"
#include "critorb/error.hpp"
#include "critorb/orbit.hpp"

namespace critorb {

namespace {

BigInt factorial(std::uint64_t n) {
    if (n > kMaxFactorialArgument)
        throw SizeGuardExceeded("factorial of " + std::to_string(n), double(n) * std::log2(double(n)));
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

Rational reciprocal_factorial(std::uint64_t n) {
    Rational q(BigInt(1), factorial(n));
    q.canonicalize();
    return q;
}

std::uint64_t small_degree(unsigned d, std::uint64_t n) {
    const BigInt D = gleason_degree(d, n);
    if (D > static_cast<unsigned long>(kMaxFactorialArgument))
        throw SizeGuardExceeded("D_{d,n} for d=" + std::to_string(d) + ", n=" + std::to_string(n),
                                double(mpz_sizeinbase(D.get_mpz_t(), 2)));
    return D.get_ui();
}

}  // namespace

Rational fpp_symmetric(std::uint64_t D) {
    if (D == 0) throw InvalidInput("D must be >= 1");
    factorial(D);  // size guard
    // sum_{i=1..D} (-1)^(i+1) D!/i!, over D!.
    BigInt num = 0, term = 1;  // term = D!/i!, walking i down from D
    for (std::uint64_t i = D; i >= 1; --i) {
        if (i % 2)
            num += term;
        else
            num -= term;
        term *= static_cast<unsigned long>(i);
    }
    Rational q(num, term);
    q.canonicalize();
    return q;
}

Rational density_lower_bound(unsigned d, std::uint64_t n) { return reciprocal_factorial(small_degree(d, n)); }

LimitErrorBound limit_error_bound(std::uint64_t n) {
    if (n < 2) throw InvalidInput("limit error bound needs n >= 2");
    if (n - 2 >= 63) throw SizeGuardExceeded("2^(n-2) factorial", double(n));
    return {reciprocal_factorial(small_degree(2, n) + 1), reciprocal_factorial(std::uint64_t{1} << (n - 2))};
}

EmpiricalDensity empirical_density(unsigned d, std::uint64_t n, std::uint64_t X, const DensityOptions& options) {
    require_degree(d);
    if (X < 2) throw InvalidInput("X must be >= 2");
    const IntPoly G = gleason_poly(d, n);
    const auto primes = primes_up_to(X);

    // 0 = skipped, 1 = no root, 2 = root; filled per index, merged in order.
    std::vector<unsigned char> status(primes.size(), 0);
    auto run = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const std::uint64_t p = primes[i];
            if (d % p == 0) continue;
            if (G.degree() >= 1 && p_divides_discriminant(G, p)) continue;
            status[i] = has_root_mod_p(G, p) ? 2 : 1;
        }
    };
    const unsigned workers = std::max(1u, options.threads);
    const std::size_t chunk = (primes.size() + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t)
        pool.emplace_back(run, std::min(primes.size(), t * chunk), std::min(primes.size(), (t + 1) * chunk));
    run(0, std::min(primes.size(), chunk));
    for (auto& th : pool) th.join();

    EmpiricalDensity out;
    out.d = d;
    out.n = n;
    out.X = X;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (status[i] == 0) {
            out.skipped.push_back(primes[i]);
            continue;
        }
        ++out.primes_scanned;
        if (status[i] == 2) ++out.hits;
        if (options.collect_rows) out.rows.emplace_back(primes[i], status[i] == 2);
    }
    return out;
}

}  // namespace critorb
