#pragma once

#include <memory>
#include <optional>

#include "elmod/matrix.hpp"

namespace elmod {

constexpr uint64_t kDefaultCap = 10000000;  // enumeration cap (elements)

// A finite subgroup of GL_r(A/a): generators, optional full enumeration in
// canonical (sorted) order, cached order.  Immutable after construction.
struct MatGroup {
    std::shared_ptr<const ResidueRing> ring;
    int r = 0;
    std::vector<Mat> generators;
    std::optional<std::vector<Mat>> elements;  // sorted canonically
    BigInt order = 0;

    bool enumerated() const { return elements.has_value(); }
    bool contains(const Mat& m) const;  // requires enumeration
    static MatGroup trivial(std::shared_ptr<const ResidueRing> ring, int r);
};

// Exact order formulas (arbitrary precision).
BigInt units_order(const Ideal& a);
BigInt gl_order(int r, const Ideal& a);
BigInt pgl_order(int r, const Ideal& a);

// BFS closure of the generated group; CapExceededError past cap.
MatGroup closure(std::shared_ptr<const ResidueRing> ring, int r, std::vector<Mat> generators,
                 uint64_t cap = kDefaultCap);

// The documented generating set of GL_r(A/a): per prime-power component
// (embedded by CRT, identity elsewhere) the transvections I + u E_ij over an
// additive generating set, diag(u, 1, ..., 1) over a greedily computed unit
// generating set, plus the r cyclic permutation matrices.
std::vector<Mat> gl_generators(const std::shared_ptr<const ResidueRing>& ring, int r);

// Full GL_r(A/a) with enumeration, via determinant filter over all matrices.
MatGroup enumerate_gl(std::shared_ptr<const ResidueRing> ring, int r, uint64_t cap = kDefaultCap);

// Entrywise-reduction image of H over A/b, b | a.
MatGroup reduce_group(const MatGroup& H, const Ideal& b);

// Full preimage of H (over A/b) under GL_r(A/a) -> GL_r(A/b), b | a.
MatGroup preimage_group(const MatGroup& H, const Ideal& a, uint64_t cap = kDefaultCap);

// {lambda unit : lambda*I in H}, ascending labels.
std::vector<uint64_t> scalar_subgroup(const MatGroup& H);

struct CrtSplitResult {
    MatGroup image_b, image_c;
    bool direct_product;  // |H| == |image_b| * |image_c|
};
CrtSplitResult crt_split_group(const MatGroup& H, const Ideal& b, const Ideal& c);

}  // namespace elmod
