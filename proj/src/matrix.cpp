#include "elmod/matrix.hpp"

#include "elmod/errors.hpp"

namespace elmod {

Mat Mat::identity(const ResidueRing& R, int r) {
    Mat m(r, std::vector<uint64_t>(static_cast<size_t>(r) * r, R.zero()));
    for (int i = 0; i < r; ++i) m.at(i, i) = R.one();
    return m;
}

Mat mat_mul(const ResidueRing& R, const Mat& a, const Mat& b) {
    int r = a.r;
    Mat c(r, std::vector<uint64_t>(static_cast<size_t>(r) * r, R.zero()));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            uint64_t aik = a.at(i, k);
            if (aik == R.zero()) continue;
            for (int j = 0; j < r; ++j)
                c.at(i, j) = R.add(c.at(i, j), R.mul(aik, b.at(k, j)));
        }
    return c;
}

namespace {

// Determinant of the minor with the given active rows/columns.
uint64_t det_rec(const ResidueRing& R, const Mat& a, std::vector<int>& cols, int row) {
    if (cols.empty()) return R.one();
    if (cols.size() == 1) return a.at(row, cols[0]);
    uint64_t acc = R.zero();
    bool negate = false;
    for (size_t k = 0; k < cols.size(); ++k) {
        int c = cols[k];
        if (a.at(row, c) != R.zero()) {
            cols.erase(cols.begin() + static_cast<long>(k));
            uint64_t sub = det_rec(R, a, cols, row + 1);
            cols.insert(cols.begin() + static_cast<long>(k), c);
            uint64_t term = R.mul(a.at(row, c), sub);
            acc = R.add(acc, negate ? R.neg(term) : term);
        }
        negate = !negate;
    }
    return acc;
}

}  // namespace

uint64_t mat_det(const ResidueRing& R, const Mat& a) {
    if (a.r == 1) return a.e[0];
    if (a.r == 2)
        return R.sub(R.mul(a.at(0, 0), a.at(1, 1)), R.mul(a.at(0, 1), a.at(1, 0)));
    std::vector<int> cols(a.r);
    for (int i = 0; i < a.r; ++i) cols[i] = i;
    return det_rec(R, a, cols, 0);
}

bool mat_is_invertible(const ResidueRing& R, const Mat& a) {
    return R.is_unit(mat_det(R, a));
}

Mat mat_adjugate(const ResidueRing& R, const Mat& a) {
    int r = a.r;
    if (r == 1) return Mat(1, {R.one()});
    Mat adj(r, std::vector<uint64_t>(static_cast<size_t>(r) * r, R.zero()));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            // Cofactor C_ij goes to adj(j, i).
            Mat minor(r - 1, std::vector<uint64_t>(static_cast<size_t>(r - 1) * (r - 1)));
            int mi = 0;
            for (int x = 0; x < r; ++x) {
                if (x == i) continue;
                int mj = 0;
                for (int y = 0; y < r; ++y) {
                    if (y == j) continue;
                    minor.at(mi, mj) = a.at(x, y);
                    ++mj;
                }
                ++mi;
            }
            uint64_t c = mat_det(R, minor);
            adj.at(j, i) = ((i + j) % 2 == 0) ? c : R.neg(c);
        }
    return adj;
}

Mat mat_inverse(const ResidueRing& R, const Mat& a) {
    uint64_t d = mat_det(R, a);
    if (!R.is_unit(d)) throw ValidationError("mat_inverse: determinant is not a unit");
    uint64_t dinv = R.inv(d);
    Mat adj = mat_adjugate(R, a);
    for (uint64_t& v : adj.e) v = R.mul(v, dinv);
    return adj;
}

Mat mat_scalar(const ResidueRing& R, int r, uint64_t lambda) {
    Mat m(r, std::vector<uint64_t>(static_cast<size_t>(r) * r, R.zero()));
    for (int i = 0; i < r; ++i) m.at(i, i) = lambda;
    return m;
}

Mat mat_reduce(const ResidueRing& from, const ResidueRing& to, const Mat& a) {
    Mat m(a.r, std::vector<uint64_t>(a.e.size()));
    for (size_t i = 0; i < a.e.size(); ++i)
        m.e[i] = ResidueRing::reduce_label(from, to, a.e[i]);
    return m;
}

bool mat_is_scalar(const ResidueRing& R, const Mat& a, uint64_t* lambda_out) {
    uint64_t lambda = a.at(0, 0);
    for (int i = 0; i < a.r; ++i)
        for (int j = 0; j < a.r; ++j)
            if (a.at(i, j) != (i == j ? lambda : R.zero())) return false;
    if (lambda_out) *lambda_out = lambda;
    return true;
}

}  // namespace elmod
