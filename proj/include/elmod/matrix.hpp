#pragma once

#include <cstdint>
#include <vector>

#include "elmod/residue.hpp"

namespace elmod {

// Square matrix over A/a, entries as residue labels, row-major.
struct Mat {
    int r = 0;
    std::vector<uint64_t> e;

    Mat() = default;
    Mat(int rank, std::vector<uint64_t> entries) : r(rank), e(std::move(entries)) {}
    static Mat identity(const ResidueRing& R, int r);

    uint64_t& at(int i, int j) { return e[static_cast<size_t>(i) * r + j]; }
    uint64_t at(int i, int j) const { return e[static_cast<size_t>(i) * r + j]; }

    bool operator==(const Mat& o) const { return r == o.r && e == o.e; }
    bool operator<(const Mat& o) const { return e < o.e; }
};

Mat mat_mul(const ResidueRing& R, const Mat& a, const Mat& b);
// Cofactor (Leibniz) expansion: sound over any commutative ring.
uint64_t mat_det(const ResidueRing& R, const Mat& a);
bool mat_is_invertible(const ResidueRing& R, const Mat& a);
Mat mat_adjugate(const ResidueRing& R, const Mat& a);
// adjugate * det^{-1}; ValidationError when det is not a unit.
Mat mat_inverse(const ResidueRing& R, const Mat& a);
Mat mat_scalar(const ResidueRing& R, int r, uint64_t lambda);
// Entrywise reduction along to.ideal() | from.ideal().
Mat mat_reduce(const ResidueRing& from, const ResidueRing& to, const Mat& a);
bool mat_is_scalar(const ResidueRing& R, const Mat& a, uint64_t* lambda_out = nullptr);

struct MatHash {
    size_t operator()(const Mat& m) const {
        uint64_t h = 1469598103934665603ULL;
        for (uint64_t v : m.e) {
            h ^= v + 0x9e3779b97f4a7c15ULL;
            h *= 1099511628211ULL;
        }
        return static_cast<size_t>(h);
    }
};

}  // namespace elmod
