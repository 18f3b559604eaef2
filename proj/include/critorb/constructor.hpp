#pragma once

// Integer parameters c whose critical iterates carry prescribed primitive
// prime divisors to prescribed exact powers: base roots mod p, Newton lift,
// +p^r adjustment, CRT.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "critorb/arith.hpp"
#include "critorb/error.hpp"

namespace critorb {

struct PrimePowerConstraint {
    std::uint64_t n = 1;
    std::optional<BigInt> p;  // empty: chosen automatically
    unsigned k = 1;
};

struct DivisibilitySpec {
    unsigned d = 2;
    std::vector<PrimePowerConstraint> constraints;
    std::set<BigInt> excluded_primes;
};

struct ConstraintRecord {
    std::uint64_t n = 1;
    BigInt p;
    unsigned k = 1;
    BigInt base_c0;
    BigInt residue;  // c mod p^(k+1)
    BigInt modulus;  // p^(k+1)
    unsigned lift_precision = 0;
    bool pinned = false;
    bool verified = false;
    std::uint64_t observed_valuation = 0;
};

struct ConstructionReport {
    unsigned d = 2;
    BigInt c;
    std::vector<ConstraintRecord> records;

    bool verified() const;
};

struct VerifyRecord {
    std::uint64_t n = 1;
    BigInt p;
    unsigned k = 1;
    bool primitive = false;
    std::uint64_t valuation = 0;
    bool valuation_at_least = false;
    bool ok = false;
    std::string note;
};

/// Pinned prime p divides disc(G_{d,n}).
class DiscObstruction : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Pinned prime has no base parameter of exact period n.
class NotAdmissible : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

struct ConstructorOptions {
    std::uint64_t prime_ceiling = 1'000'000;
    unsigned threads = 1;
};

/// Smallest c0 in [0, p) that is a root of G_{d,n} mod p with 0 of exact
/// period n mod p.
std::optional<BigInt> find_base(unsigned d, std::uint64_t n, const BigInt& p);

struct PrimeChoice {
    BigInt p;
    BigInt c0;
};

/// Smallest prime p <= ceiling outside `excluded`, p not dividing d or
/// disc(G_{d,n}), with a base parameter.
PrimeChoice find_prime_for_iterate(unsigned d, std::uint64_t n, const std::set<BigInt>& excluded,
                                   std::uint64_t ceiling = 1'000'000);

ConstructionReport build_parameter(const DivisibilitySpec& spec, const ConstructorOptions& options = {});

/// Every constraint must name its prime.
std::vector<VerifyRecord> verify_spec(unsigned d, const BigInt& c, const DivisibilitySpec& spec);

/// Throws InvalidInput on repeated or excluded primes, k = 0, n = 0, etc.
void validate_spec(const DivisibilitySpec& spec);

}  // namespace critorb
