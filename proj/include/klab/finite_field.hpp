#ifndef KLAB_FINITE_FIELD_HPP
#define KLAB_FINITE_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "klab/error.hpp"

namespace klab {

// Element code: the coordinate vector over the base field read low-degree-first,
// interpreted as an integer in radix |base|. This is also the canonical element
// ordering used everywhere for deterministic tie-breaking.
using ffe = std::uint64_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// A finite field, either the prime field F_p or an extension of another Field
// by a monic irreducible modulus. Residue fields of places and the residue
// chains of inert towers reuse the same representation.
class Field {
public:
    static FieldPtr prime(int p);
    // modulus: coefficients low-degree-first over `base`, monic, irreducible, deg >= 1.
    static FieldPtr extension(FieldPtr base, std::vector<ffe> modulus, std::string gen_name = "u");
    // F_{p^m} over F_p with the canonical modulus (lexicographically smallest
    // monic irreducible, coefficients compared low-degree-first as integers).
    static FieldPtr make(int p, int m);
    static FieldPtr make(int p, int m, const std::vector<ffe>& modulus);

    int p() const { return p_; }
    int deg() const { return deg_; }           // degree over base()
    int deg_over_prime() const;                // total degree over F_p
    std::uint64_t size() const { return size_; }
    const FieldPtr& base() const { return base_; } // null for the prime field
    const std::vector<ffe>& modulus() const { return modulus_; }
    const std::string& gen_name() const { return gen_name_; }
    bool is_prime_field() const { return base_ == nullptr; }
    bool same(const Field& o) const;

    ffe zero() const { return 0; }
    ffe one() const { return 1; }
    ffe add(ffe a, ffe b) const;
    ffe sub(ffe a, ffe b) const;
    ffe neg(ffe a) const;
    ffe mul(ffe a, ffe b) const;
    ffe inv(ffe a) const;
    ffe pow(ffe a, long long n) const; // n may be negative for nonzero a
    ffe from_int(long long n) const;   // image of an integer in the prime subfield

    std::vector<ffe> digits(ffe a) const;          // length deg(), coords over base
    ffe from_digits(const std::vector<ffe>& d) const;

    std::string to_string(ffe a) const;

private:
    Field() = default;
    int p_ = 0;
    int deg_ = 1;
    std::uint64_t size_ = 0;
    std::uint64_t base_size_ = 0;
    FieldPtr base_;
    std::vector<ffe> modulus_; // empty for prime field
    std::string gen_name_ = "u";
};

// Decides whether nonzero x in this field F (of size S) is a q-th power in the
// extension of degree f, without constructing that extension: when q | S^f - 1,
// x is a q-th power there iff x^N = 1 with N = ((S^f - 1)/q) mod (S - 1);
// when q does not divide S^f - 1 every element is a q-th power.
bool is_qth_power_ext(const Field& F, ffe x, int q, long long f);

// Smallest (canonical element order) x with is_qth_power_ext(x, q, 1) false.
// Requires q | |F| - 1, else throws NoNonresidue.
ffe find_q_nonresidue(const Field& F, int q);

// Parses "p=3,m=1" or "p=2,m=2,mod=u^2+u+1" (coefficients as integers mod p).
FieldPtr parse_field_spec(const std::string& text);
std::string field_spec_string(const Field& F);

} // namespace klab

#endif
