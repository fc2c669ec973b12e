#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "elmod/fq.hpp"

namespace elmod {

// Univariate polynomial over F_q.  Coefficients ascending, always trimmed;
// the zero polynomial has an empty coefficient vector and degree -1.
class FqPoly {
public:
    FqPoly() : f_(nullptr) {}
    explicit FqPoly(const FqField& f) : f_(&f) {}
    FqPoly(const FqField& f, std::vector<int> coeffs);

    const FqField& field() const { return *f_; }
    const std::vector<int>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int leading() const { return c_.back(); }
    int coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    static FqPoly zero(const FqField& f) { return FqPoly(f); }
    static FqPoly one(const FqField& f) { return FqPoly(f, {1}); }
    static FqPoly x(const FqField& f) { return FqPoly(f, {0, 1}); }
    static FqPoly constant(const FqField& f, int c) { return FqPoly(f, {c}); }

    friend FqPoly operator+(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator-(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator*(const FqPoly& a, const FqPoly& b);
    friend bool operator==(const FqPoly& a, const FqPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FqPoly& a, const FqPoly& b) { return !(a == b); }

    FqPoly scaled(int c) const;  // c * this
    FqPoly monic() const;        // divide by leading coefficient

    // Comparison for canonical ordering: by degree, then coefficients from
    // the top down.
    friend bool poly_less(const FqPoly& a, const FqPoly& b);

    std::string to_string() const;  // "[c0,c1,...]"; zero is "[]"

private:
    const FqField* f_;
    std::vector<int> c_;
    void trim();
};

// Quotient and remainder; b must be nonzero.
std::pair<FqPoly, FqPoly> poly_divmod(const FqPoly& a, const FqPoly& b);
FqPoly poly_rem(const FqPoly& a, const FqPoly& b);
FqPoly poly_gcd(FqPoly a, FqPoly b);  // monic (or zero)
// g = gcd, and u with u*a == g  (mod b) when needed for inversion.
FqPoly poly_mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m);
FqPoly poly_powmod_u64(FqPoly base, uint64_t n, const FqPoly& m);
// base^(q^d) mod m, computed as d successive q-th powers (no overflow).
FqPoly poly_pow_q_power(const FqPoly& base, int d, const FqPoly& m);
FqPoly poly_derivative(const FqPoly& a);
// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
struct PolyXgcd {
    FqPoly g, u, v;
};
PolyXgcd poly_xgcd(const FqPoly& a, const FqPoly& b);

bool poly_is_irreducible(const FqPoly& f);

// Full factorization of a nonzero polynomial into monic irreducibles with
// exponents, sorted canonically; the leading coefficient is dropped (ideals
// are generated by the monic part).
std::vector<std::pair<FqPoly, int>> poly_factor(const FqPoly& f);

// All monic polynomials of the given degree, in canonical order.
std::vector<FqPoly> monic_polys_of_degree(const FqField& f, int degree);
// All monic irreducibles of degree <= max_degree, canonical order.
std::vector<FqPoly> monic_irreducibles_up_to(const FqField& f, int max_degree);

}  // namespace elmod
