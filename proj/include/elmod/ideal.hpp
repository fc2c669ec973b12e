#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elmod/poly.hpp"

namespace elmod {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

enum class RingKind { Integers, PolyRing };

// The base ring A: either Z or F_q[T].
struct RingSpec {
    RingKind kind = RingKind::Integers;
    int q = 0;  // only for PolyRing; a prime power >= 2

    static RingSpec integers() { return {RingKind::Integers, 0}; }
    static RingSpec poly_ring(int q);

    const FqField& field() const;  // PolyRing only
    bool operator==(const RingSpec& o) const { return kind == o.kind && q == o.q; }
    bool operator!=(const RingSpec& o) const { return !(*this == o); }
    std::string to_string() const;
};

// A nonzero ideal of A, canonically generated: a positive integer for Z, a
// monic polynomial for F_q[T] (degree 0 = unit ideal).
class Ideal {
public:
    Ideal(RingSpec ring, BigInt n);      // Z; n != 0, stored as |n|
    Ideal(RingSpec ring, FqPoly f);      // F_q[T]; f != 0, stored monic
    static Ideal unit(const RingSpec& ring);

    const RingSpec& ring() const { return ring_; }
    bool is_unit() const;
    const BigInt& int_gen() const { return n_; }
    const FqPoly& poly_gen() const { return f_; }

    bool operator==(const Ideal& o) const;
    bool operator!=(const Ideal& o) const { return !(*this == o); }
    // Canonical order: by norm, ties by generator (total order per ring).
    bool operator<(const Ideal& o) const;

    std::string to_string() const;        // "720" or "q=3;[1,0,1]"
    std::string generator_string() const; // without the ring prefix

private:
    RingSpec ring_;
    BigInt n_;   // Z case
    FqPoly f_;   // PolyRing case
};

struct IdealDecomposition {
    Ideal a11, a12, a2;
};

// |A/a|: the generator for Z, q^deg for F_q[T].
BigInt norm(const Ideal& a);

// Unique factorization into primes, sorted canonically.  Throws
// FactorBudgetError if a Z generator exceeds max_bits (default 64).
std::vector<std::pair<Ideal, int>> factor(const Ideal& a, int max_bits = 64);

// a | b^infinity: every prime factor of a divides b.
bool divides_power(const Ideal& a, const Ideal& b);

bool divides(const Ideal& a, const Ideal& b);  // a | b
int valuation(const Ideal& prime, const Ideal& a);

Ideal gcd_ideal(const Ideal& a, const Ideal& b);
Ideal lcm_ideal(const Ideal& a, const Ideal& b);
Ideal mul_ideal(const Ideal& a, const Ideal& b);
// Exact quotient; b must divide a.
Ideal div_ideal(const Ideal& a, const Ideal& b);
Ideal pow_ideal(const Ideal& p, int e);

// Pairwise-coprime prime-power factors whose product is a (unit ideal -> empty).
std::vector<Ideal> crt_split(const Ideal& a);

// The conductor-relative decomposition a = a11 * a12 * a2:
//   a2   the part coprime to m,
//   a11  primes p | m appearing in a with exponent e_p > v_p(m),
//   a12  primes p | m appearing with exponent 1 <= f_p <= v_p(m).
IdealDecomposition decompose(const Ideal& a, const Ideal& m);

// Parse "720" (Z) or "q=3;[1,0,1]" (F_q[T]).  If expected_ring is given the
// string may omit the "q=..." prefix and must match the ring.
Ideal parse_ideal(const std::string& s, const std::optional<RingSpec>& expected_ring = {});

// All ideals with norm <= bound, ascending canonical order.
std::vector<Ideal> ideals_up_to_norm(const RingSpec& ring, const BigInt& bound);

}  // namespace elmod
