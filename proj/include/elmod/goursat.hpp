#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "elmod/matgroup.hpp"

namespace elmod {

// A finite group on labels 0..n-1 with a multiplication oracle.  Everything
// in this module is desk-scale and fully enumerated.
struct LabeledGroup {
    int n = 0;
    int identity = 0;
    std::function<int(int, int)> mul;
    std::vector<int> inverse;

    static LabeledGroup from_table(std::vector<std::vector<int>> table, int identity);
    // Checks associativity and inverse existence exhaustively.
    void check_axioms() const;
};

// Label bridge for matrix groups: labels index the sorted element list.
struct LabeledMatGroup {
    LabeledGroup group;
    std::vector<Mat> elements;  // label -> matrix
    int label_of(const Mat& m) const;
};
LabeledMatGroup label_matgroup(const MatGroup& g);

// The unit group (A/a)^x as a labeled group.
LabeledGroup label_unit_group(const ResidueRing& R, std::vector<uint64_t>* labels_out = nullptr);

using PairVec = std::vector<std::pair<int, int>>;  // sorted, unique

// Closure of a subset of G1 x G2 under componentwise multiplication.
PairVec close_pairs(const LabeledGroup& g1, const LabeledGroup& g2, PairVec seed);
// Closure of a subset of one group.
std::vector<int> close_subset(const LabeledGroup& g, std::vector<int> seed);

std::vector<int> project1(const PairVec& pairs);
std::vector<int> project2(const PairVec& pairs);

// Goursat data certifying G = G1 x_psi G2 inside its ambient product.
// Gamma is realized as the right cosets of N2 = {g2 : (e, g2) in G} in G2,
// with minimal-label canonical representatives.
struct FiberedProduct {
    std::vector<int> g1_set, g2_set;  // the subgroups G1, G2 (sorted ambient labels)
    LabeledGroup gamma;
    std::vector<int> psi1, psi2;  // ambient label -> gamma label (-1 off the subgroup)
};

// Requires pi_1(G) = g1_set and pi_2(G) = g2_set (ValidationError naming the
// failing factor otherwise).  The returned data realizes G exactly.
FiberedProduct goursat_decompose(const LabeledGroup& amb1, const LabeledGroup& amb2,
                                 const PairVec& G, const std::vector<int>& g1_set,
                                 const std::vector<int>& g2_set);

// The fibered product realized by the data: {(g1,g2) : psi1 g1 = psi2 g2}.
PairVec realize(const FiberedProduct& fp);

struct FiberedIntersection {
    PairVec group;                 // (H1 x H2) ∩ (G1 x_psi G2)
    std::vector<int> gamma_h;      // psi1(H1) ∩ psi2(H2), sorted gamma labels
    std::vector<int> h1_cut, h2_cut;  // H_i ∩ psi_i^{-1}(Gamma_H)
};

// Goursat-based subgroup intersection; asserts the structured equality against the
// direct pair intersection and the surjectivity of both projections.
FiberedIntersection fibered_intersect(const std::vector<int>& h1, const std::vector<int>& h2,
                                      const FiberedProduct& fp, const LabeledGroup& amb1,
                                      const LabeledGroup& amb2);

}  // namespace elmod
