#include "critorb/poly.hpp"

#include <algorithm>
#include <sstream>

#include "critorb/error.hpp"

namespace critorb {

IntPoly::IntPoly(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coefficients) {
    for (long c : coefficients) coeffs_.emplace_back(c);
    trim();
}

IntPoly IntPoly::variable() { return IntPoly({0, 1}); }

IntPoly IntPoly::constant(BigInt value) { return IntPoly(std::vector<BigInt>{std::move(value)}); }

void IntPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const BigInt& IntPoly::leading() const {
    if (coeffs_.empty()) throw InvalidInput("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

BigInt IntPoly::coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

BigInt IntPoly::operator()(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

BigInt IntPoly::eval_mod(const BigInt& x, const BigInt& modulus) const {
    BigInt acc = 0;
    const BigInt xr = mod_floor(x, modulus);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = mod_floor(acc * xr + *it, modulus);
    return acc;
}

IntPoly IntPoly::derivative() const {
    std::vector<BigInt> out;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * static_cast<unsigned long>(i));
    return IntPoly(std::move(out));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coefficient(i) + b.coefficient(i);
    return IntPoly(std::move(out));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coefficient(i) - b.coefficient(i);
    return IntPoly(std::move(out));
}

IntPoly multiply_schoolbook(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto& x = a.coefficients();
    const auto& y = b.coefficients();
    std::vector<BigInt> out(x.size() + y.size() - 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            mpz_addmul(out[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
    }
    return IntPoly(std::move(out));
}

namespace {

std::size_t max_bits(const std::vector<BigInt>& v) {
    std::size_t m = 0;
    for (const auto& x : v) m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
    return m;
}

// Packs the coefficients of sign `sign` (others treated as zero) into one
// integer with `limbs` 64-bit words per slot.
BigInt pack(const std::vector<BigInt>& coeffs, std::size_t limbs, int sign) {
    std::vector<std::uint64_t> words(coeffs.size() * limbs, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (mpz_sgn(coeffs[i].get_mpz_t()) != sign) continue;
        std::size_t count = 0;
        mpz_export(words.data() + i * limbs, &count, -1, sizeof(std::uint64_t), 0, 0, coeffs[i].get_mpz_t());
    }
    BigInt out;
    mpz_import(out.get_mpz_t(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
    return out;
}

}  // namespace

IntPoly multiply_kronecker(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const auto& x = a.coefficients();
    const auto& y = b.coefficients();
    std::size_t len_bits = 1;
    while ((std::size_t{1} << len_bits) < std::min(x.size(), y.size())) ++len_bits;
    // Each product coefficient is below 2^(bits - 2) in absolute value.
    const std::size_t bits = max_bits(x) + max_bits(y) + len_bits + 3;
    const std::size_t limbs = (bits + 63) / 64;
    const BigInt px = pack(x, limbs, 1) - pack(x, limbs, -1);
    const BigInt py = pack(y, limbs, 1) - pack(y, limbs, -1);
    BigInt prod = px * py;
    const bool negative = prod < 0;
    if (negative) prod = -prod;

    const std::size_t out_len = x.size() + y.size() - 1;
    std::vector<std::uint64_t> words(out_len * limbs + 1, 0);
    std::size_t count = 0;
    mpz_export(words.data(), &count, -1, sizeof(std::uint64_t), 0, 0, prod.get_mpz_t());

    const BigInt base = critorb::pow(BigInt(2), static_cast<unsigned long>(limbs * 64));
    const BigInt half = base / 2;
    std::vector<BigInt> out(out_len);
    BigInt carry = 0;
    for (std::size_t i = 0; i < out_len; ++i) {
        BigInt digit;
        mpz_import(digit.get_mpz_t(), limbs, -1, sizeof(std::uint64_t), 0, 0, words.data() + i * limbs);
        digit += carry;
        carry = 0;
        if (digit >= half) {
            digit -= base;
            carry = 1;
        }
        out[i] = negative ? BigInt(-digit) : digit;
    }
    return IntPoly(std::move(out));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (std::min(a.coeffs_.size(), b.coeffs_.size()) < 24) return multiply_schoolbook(a, b);
    return multiply_kronecker(a, b);
}

std::pair<IntPoly, IntPoly> divmod(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw InvalidInput("polynomial division by zero");
    std::vector<BigInt> rem = a.coeffs_;
    if (a.degree() < b.degree()) return {IntPoly(), a};
    const std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<BigInt> quot(rem.size() - db);
    const BigInt& lead = b.leading();
    const bool monic = lead == 1;
    for (std::size_t k = quot.size(); k-- > 0;) {
        BigInt& top = rem[k + db];
        if (top == 0) continue;
        BigInt q;
        if (monic) {
            q = top;
        } else {
            if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
                throw InvalidInput("polynomial division is not exact over Z");
            mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        }
        for (std::size_t j = 0; j <= db; ++j)
            mpz_submul(rem[k + j].get_mpz_t(), q.get_mpz_t(), b.coeffs_[j].get_mpz_t());
        quot[k] = std::move(q);
    }
    return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
}

IntPoly IntPoly::exact_div(const IntPoly& divisor) const {
    std::pair<IntPoly, IntPoly> qr;
    try {
        qr = divmod(*this, divisor);
    } catch (const InvalidInput& e) {
        throw InconsistencyError(std::string("exact polynomial division failed: ") + e.what());
    }
    if (!qr.second.is_zero()) throw InconsistencyError("exact polynomial division left a nonzero remainder");
    return std::move(qr.first);
}

std::string IntPoly::str(char var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const BigInt& c = coeffs_[k];
        if (c == 0) continue;
        BigInt mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (k == 0 || mag != 1) {
            out << to_string(mag);
            if (k > 0) out << "*";
        }
        if (k >= 1) out << var;
        if (k >= 2) out << "^" << k;
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// F_p

namespace modp {

namespace {
std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}
std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }
}  // namespace

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

long degree(const Poly& f) { return static_cast<long>(f.size()) - 1; }

Poly reduce(const IntPoly& f, std::uint64_t p) {
    Poly out;
    out.reserve(f.coefficients().size());
    const BigInt pp(static_cast<unsigned long>(p));
    for (const auto& c : f.coefficients()) out.push_back(to_u64(mod_floor(c, pp), "residue"));
    trim(out);
    return out;
}

std::uint64_t eval(const Poly& f, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = add(mulmod_u64(acc, x, p), *it, p);
    return acc;
}

Poly derivative(const Poly& f, std::uint64_t p) {
    Poly out;
    for (std::size_t i = 1; i < f.size(); ++i) out.push_back(mulmod_u64(f[i], i % p, p));
    trim(out);
    return out;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = subm(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
    trim(out);
    return out;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    // Accumulate in 128 bits and reduce periodically; products are < 2^126.
    Poly out(acc.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] = add(out[i + j], mulmod_u64(a[i], b[j], p), p);
        }
    }
    trim(out);
    return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, std::uint64_t p) {
    if (b.empty()) throw InvalidInput("division by zero polynomial mod p");
    Poly r = a;
    trim(r);
    if (r.size() < b.size()) return {{}, r};
    const std::size_t db = b.size() - 1;
    const std::uint64_t inv = invmod_u64(b.back(), p);
    Poly q(r.size() - db, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        const std::uint64_t coef = mulmod_u64(r[k + db], inv, p);
        q[k] = coef;
        if (coef == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) r[k + j] = subm(r[k + j], mulmod_u64(coef, b[j], p), p);
    }
    trim(q);
    trim(r);
    return {q, r};
}

Poly rem(const Poly& a, const Poly& b, std::uint64_t p) { return divmod(a, b, p).second; }

Poly monic(const Poly& f, std::uint64_t p) {
    if (f.empty()) return f;
    const std::uint64_t inv = invmod_u64(f.back(), p);
    Poly out = f;
    for (auto& c : out) c = mulmod_u64(c, inv, p);
    return out;
}

Poly gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& modulus, std::uint64_t p) {
    Poly result{1 % p};
    trim(result);
    result = rem(result, modulus, p);
    Poly b = rem(base, modulus, p);
    while (e) {
        if (e & 1) result = rem(mul(result, b, p), modulus, p);
        e >>= 1;
        if (e) b = rem(mul(b, b, p), modulus, p);
    }
    return result;
}

std::uint64_t resultant(Poly a, Poly b, std::uint64_t p) {
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    std::uint64_t result = 1;
    long m = degree(a), n = degree(b);
    while (n > 0) {
        Poly r = rem(a, b, p);
        if (r.empty()) return 0;
        const long deg_r = degree(r);
        if ((m & 1) && (n & 1)) result = subm(0, result, p);
        result = mulmod_u64(result, powmod_u64(b.back(), static_cast<std::uint64_t>(m - deg_r), p), p);
        a = std::move(b);
        b = std::move(r);
        m = n;
        n = deg_r;
    }
    return mulmod_u64(result, powmod_u64(b[0], static_cast<std::uint64_t>(m), p), p);
}

}  // namespace modp

}  // namespace critorb
