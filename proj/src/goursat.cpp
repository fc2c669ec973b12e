#include "elmod/goursat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "elmod/errors.hpp"

namespace elmod {

LabeledGroup LabeledGroup::from_table(std::vector<std::vector<int>> table, int identity) {
    LabeledGroup g;
    g.n = static_cast<int>(table.size());
    g.identity = identity;
    auto shared = std::make_shared<std::vector<std::vector<int>>>(std::move(table));
    g.mul = [shared](int a, int b) { return (*shared)[a][b]; };
    g.inverse.assign(g.n, -1);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            if (g.mul(a, b) == identity) g.inverse[a] = b;
    return g;
}

void LabeledGroup::check_axioms() const {
    for (int a = 0; a < n; ++a) {
        if (mul(a, identity) != a || mul(identity, a) != a)
            throw ValidationError("LabeledGroup: identity fails");
        if (inverse[a] < 0 || mul(a, inverse[a]) != identity)
            throw ValidationError("LabeledGroup: inverse fails");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw ValidationError("LabeledGroup: associativity fails");
}

int LabeledMatGroup::label_of(const Mat& m) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), m);
    if (it == elements.end() || !(*it == m)) throw ValidationError("label_of: not a group element");
    return static_cast<int>(it - elements.begin());
}

LabeledMatGroup label_matgroup(const MatGroup& g) {
    if (!g.elements) throw ValidationError("label_matgroup: group not enumerated");
    LabeledMatGroup out;
    out.elements = *g.elements;
    auto ring = g.ring;
    int r = g.r;
    auto elems = std::make_shared<std::vector<Mat>>(out.elements);
    out.group.n = static_cast<int>(out.elements.size());
    Mat id = Mat::identity(*ring, r);
    out.group.identity = static_cast<int>(
        std::lower_bound(elems->begin(), elems->end(), id) - elems->begin());
    out.group.mul = [ring, elems](int a, int b) {
        Mat m = mat_mul(*ring, (*elems)[a], (*elems)[b]);
        auto it = std::lower_bound(elems->begin(), elems->end(), m);
        return static_cast<int>(it - elems->begin());
    };
    out.group.inverse.assign(out.group.n, -1);
    for (int a = 0; a < out.group.n; ++a) {
        Mat inv = mat_inverse(*ring, (*elems)[a]);
        out.group.inverse[a] = static_cast<int>(
            std::lower_bound(elems->begin(), elems->end(), inv) - elems->begin());
    }
    return out;
}

LabeledGroup label_unit_group(const ResidueRing& R, std::vector<uint64_t>* labels_out) {
    std::vector<uint64_t> units = R.units();
    std::unordered_map<uint64_t, int> index;
    for (size_t i = 0; i < units.size(); ++i) index[units[i]] = static_cast<int>(i);
    LabeledGroup g;
    g.n = static_cast<int>(units.size());
    g.identity = index.at(R.one());
    auto shared_units = std::make_shared<std::vector<uint64_t>>(units);
    auto shared_index = std::make_shared<std::unordered_map<uint64_t, int>>(std::move(index));
    const ResidueRing* Rp = &R;
    // The ring must outlive the group; callers in this codebase keep rings
    // in shared_ptrs or on the stack for the group's lifetime.
    g.mul = [Rp, shared_units, shared_index](int a, int b) {
        return shared_index->at(Rp->mul((*shared_units)[a], (*shared_units)[b]));
    };
    g.inverse.assign(g.n, -1);
    for (int a = 0; a < g.n; ++a) g.inverse[a] = shared_index->at(Rp->inv((*shared_units)[a]));
    if (labels_out) *labels_out = units;
    return g;
}

PairVec close_pairs(const LabeledGroup& g1, const LabeledGroup& g2, PairVec seed) {
    std::set<std::pair<int, int>> seen{{g1.identity, g2.identity}};
    for (auto& p : seed) {
        seen.insert(p);
        seen.insert({g1.inverse[p.first], g2.inverse[p.second]});
    }
    std::vector<std::pair<int, int>> frontier(seen.begin(), seen.end());
    std::vector<std::pair<int, int>> all_gens(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<std::pair<int, int>> next;
        for (auto& x : frontier)
            for (auto& g : all_gens) {
                std::pair<int, int> y{g1.mul(x.first, g.first), g2.mul(x.second, g.second)};
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::vector<int> close_subset(const LabeledGroup& g, std::vector<int> seed) {
    std::set<int> seen{g.identity};
    for (int s : seed) {
        seen.insert(s);
        seen.insert(g.inverse[s]);
    }
    std::vector<int> frontier(seen.begin(), seen.end());
    std::vector<int> gens(seen.begin(), seen.end());
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int gg : gens) {
                int y = g.mul(x, gg);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::vector<int> project1(const PairVec& pairs) {
    std::set<int> s;
    for (auto& p : pairs) s.insert(p.first);
    return {s.begin(), s.end()};
}

std::vector<int> project2(const PairVec& pairs) {
    std::set<int> s;
    for (auto& p : pairs) s.insert(p.second);
    return {s.begin(), s.end()};
}

FiberedProduct goursat_decompose(const LabeledGroup& amb1, const LabeledGroup& amb2,
                                 const PairVec& G, const std::vector<int>& g1_set,
                                 const std::vector<int>& g2_set) {
    if (project1(G) != g1_set)
        throw ValidationError("goursat_decompose: projection onto factor 1 is not surjective");
    if (project2(G) != g2_set)
        throw ValidationError("goursat_decompose: projection onto factor 2 is not surjective");

    // N2 = {g2 : (e, g2) in G}, normal in G2 by surjectivity of pi_1.
    std::set<int> n2;
    for (auto& p : G)
        if (p.first == amb1.identity) n2.insert(p.second);

    // Right cosets N2 * g2 with minimal-label canonical representatives.
    std::map<int, int> coset_rep;  // g2 label -> canonical representative
    for (int g2 : g2_set) {
        if (coset_rep.count(g2)) continue;
        std::vector<int> coset;
        for (int n : n2) coset.push_back(amb2.mul(n, g2));
        int rep = *std::min_element(coset.begin(), coset.end());
        for (int c : coset) coset_rep[c] = rep;
    }
    std::vector<int> reps;
    for (auto& [g2, rep] : coset_rep)
        if (g2 == rep) reps.push_back(rep);
    std::sort(reps.begin(), reps.end());
    std::map<int, int> rep_index;
    for (size_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = static_cast<int>(i);

    // Gamma multiplication table through representatives.
    int gn = static_cast<int>(reps.size());
    std::vector<std::vector<int>> table(gn, std::vector<int>(gn));
    for (int i = 0; i < gn; ++i)
        for (int j = 0; j < gn; ++j)
            table[i][j] = rep_index.at(coset_rep.at(amb2.mul(reps[i], reps[j])));
    int gamma_id = rep_index.at(coset_rep.at(amb2.identity));
    LabeledGroup gamma = LabeledGroup::from_table(std::move(table), gamma_id);

    FiberedProduct fp;
    fp.g1_set = g1_set;
    fp.g2_set = g2_set;
    fp.gamma = std::move(gamma);
    fp.psi2.assign(amb2.n, -1);
    for (int g2 : g2_set) fp.psi2[g2] = rep_index.at(coset_rep.at(g2));
    fp.psi1.assign(amb1.n, -1);
    for (auto& p : G) {
        int want = fp.psi2[p.second];
        if (fp.psi1[p.first] == -1)
            fp.psi1[p.first] = want;
        else if (fp.psi1[p.first] != want)
            throw ValidationError("goursat_decompose: psi1 is not well-defined");
    }
    for (int g1 : g1_set)
        if (fp.psi1[g1] == -1) throw ValidationError("goursat_decompose: psi1 incomplete");

    // Certify: realized fibered product equals G element-for-element, and
    // the order law |G| * |Gamma| = |G1| * |G2| holds.
    PairVec realized = realize(fp);
    if (realized != G) throw ValidationError("goursat_decompose: realization mismatch");
    if (static_cast<long long>(G.size()) * fp.gamma.n !=
        static_cast<long long>(g1_set.size()) * static_cast<long long>(g2_set.size()))
        throw ValidationError("goursat_decompose: order law violated");
    return fp;
}

PairVec realize(const FiberedProduct& fp) {
    PairVec out;
    for (int g1 : fp.g1_set)
        for (int g2 : fp.g2_set)
            if (fp.psi1[g1] == fp.psi2[g2]) out.emplace_back(g1, g2);
    std::sort(out.begin(), out.end());
    return out;
}

FiberedIntersection fibered_intersect(const std::vector<int>& h1, const std::vector<int>& h2,
                                      const FiberedProduct& fp, const LabeledGroup& amb1,
                                      const LabeledGroup& amb2) {
    // Subgroup check on the ambient operation.
    auto is_subgroup = [](const std::vector<int>& h, const LabeledGroup& g) {
        std::set<int> s(h.begin(), h.end());
        if (!s.count(g.identity)) return false;
        for (int a : h)
            for (int b : h)
                if (!s.count(g.mul(a, b))) return false;
        return true;
    };
    if (!is_subgroup(h1, amb1)) throw ValidationError("fibered_intersect: H1 is not a subgroup");
    if (!is_subgroup(h2, amb2)) throw ValidationError("fibered_intersect: H2 is not a subgroup");

    std::set<int> im1, im2;
    for (int a : h1)
        if (fp.psi1[a] >= 0) im1.insert(fp.psi1[a]);
    for (int b : h2)
        if (fp.psi2[b] >= 0) im2.insert(fp.psi2[b]);
    std::vector<int> gamma_h;
    std::set_intersection(im1.begin(), im1.end(), im2.begin(), im2.end(),
                          std::back_inserter(gamma_h));
    std::set<int> gamma_h_set(gamma_h.begin(), gamma_h.end());

    std::vector<int> h1_cut, h2_cut;
    for (int a : h1)
        if (fp.psi1[a] >= 0 && gamma_h_set.count(fp.psi1[a])) h1_cut.push_back(a);
    for (int b : h2)
        if (fp.psi2[b] >= 0 && gamma_h_set.count(fp.psi2[b])) h2_cut.push_back(b);

    // Structured side of the equality.
    PairVec structured;
    for (int a : h1_cut)
        for (int b : h2_cut)
            if (fp.psi1[a] == fp.psi2[b]) structured.emplace_back(a, b);
    std::sort(structured.begin(), structured.end());

    // Direct side: (H1 x H2) ∩ (G1 x_psi G2).
    PairVec direct;
    for (int a : h1)
        for (int b : h2)
            if (fp.psi1[a] >= 0 && fp.psi1[a] == fp.psi2[b]) direct.emplace_back(a, b);
    std::sort(direct.begin(), direct.end());
    if (structured != direct)
        throw ValidationError("fibered_intersect: structured equality failed");

    // Surjectivity of the canonical projections onto the cut subgroups.
    if (project1(structured) != h1_cut)
        throw ValidationError("fibered_intersect: projection 1 not surjective");
    if (project2(structured) != h2_cut)
        throw ValidationError("fibered_intersect: projection 2 not surjective");

    return {std::move(structured), std::move(gamma_h), std::move(h1_cut), std::move(h2_cut)};
}

}  // namespace elmod
