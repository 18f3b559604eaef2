#pragma once

// Dense univariate polynomials over Z (IntPoly) and over F_p for word-size p
// (ModPoly). Coefficient vectors are stored constant term first.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "critorb/arith.hpp"

namespace critorb {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coefficients);
    IntPoly(std::initializer_list<long> coefficients);

    static IntPoly variable();
    static IntPoly constant(BigInt value);

    const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const BigInt& leading() const;
    BigInt coefficient(std::size_t i) const;

    BigInt operator()(const BigInt& x) const;
    /// Value at x reduced into [0, modulus).
    BigInt eval_mod(const BigInt& x, const BigInt& modulus) const;
    IntPoly derivative() const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) = default;

    /// Quotient and remainder over Z; requires every quotient step to be an
    /// exact integer division by the divisor's leading coefficient.
    friend std::pair<IntPoly, IntPoly> divmod(const IntPoly& a, const IntPoly& b);
    /// a / b, throwing InconsistencyError when the remainder is nonzero.
    IntPoly exact_div(const IntPoly& divisor) const;

    /// Human-readable form such as "c^3 + 2*c^2 + c + 1".
    std::string str(char var = 'c') const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/// Schoolbook product, kept separate so it can serve as an oracle for the
/// Kronecker-substitution path used by operator* on large inputs.
IntPoly multiply_schoolbook(const IntPoly& a, const IntPoly& b);
IntPoly multiply_kronecker(const IntPoly& a, const IntPoly& b);

/// Polynomials over F_p, p < 2^63 prime, constant term first, no trailing zeros.
namespace modp {

using Poly = std::vector<std::uint64_t>;

Poly reduce(const IntPoly& f, std::uint64_t p);
void trim(Poly& f);
long degree(const Poly& f);
std::uint64_t eval(const Poly& f, std::uint64_t x, std::uint64_t p);
Poly derivative(const Poly& f, std::uint64_t p);
Poly sub(const Poly& a, const Poly& b, std::uint64_t p);
Poly mul(const Poly& a, const Poly& b, std::uint64_t p);
/// a mod b (b nonzero).
Poly rem(const Poly& a, const Poly& b, std::uint64_t p);
/// a / b and a mod b.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, std::uint64_t p);
Poly monic(const Poly& f, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);
/// base^e mod modulus.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus, std::uint64_t p);
/// Resultant of a and b over F_p; both must keep their degree mod p.
std::uint64_t resultant(Poly a, Poly b, std::uint64_t p);

}  // namespace modp

}  // namespace critorb
