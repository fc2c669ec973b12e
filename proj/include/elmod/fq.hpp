#pragma once

#include <cstdint>
#include <vector>

#include "elmod/errors.hpp"

namespace elmod {

// The finite field F_q, q = p^e.  Elements are labels in [0, q): the label
// encodes the residue vector (c_0, ..., c_{e-1}) over F_p base p, i.e. the
// element c_0 + c_1 x + ... modulo a fixed irreducible polynomial.  The
// irreducible is the lexicographically least monic irreducible of degree e
// over F_p (constant term compared first), so serialized data is stable.
class FqField {
public:
    explicit FqField(int q);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }

    // Modulus coefficients over F_p, ascending degree, length e+1, monic.
    const std::vector<int>& modulus() const { return mod_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int inv(int a) const {
        if (a == 0) throw ValidationError("FqField: inverse of zero");
        return inv_[a];
    }
    int pow(int a, long long n) const;

    // Inverse Frobenius: the unique b with b^p = a.
    int pth_root(int a) const { return proot_[a]; }

    // Shared instances, keyed by q.  Throws ValidationError if q is not a
    // prime power >= 2.
    static const FqField& get(int q);

private:
    int p_, e_, q_;
    std::vector<int> mod_;
    std::vector<int> add_, mul_;
    std::vector<int> neg_, inv_, proot_;
};

}  // namespace elmod
