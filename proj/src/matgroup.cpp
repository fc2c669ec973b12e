#include "elmod/matgroup.hpp"

#include <algorithm>
#include <unordered_set>

#include "elmod/errors.hpp"

namespace elmod {

bool MatGroup::contains(const Mat& m) const {
    if (!elements) throw ValidationError("MatGroup::contains: group not enumerated");
    return std::binary_search(elements->begin(), elements->end(), m);
}

MatGroup MatGroup::trivial(std::shared_ptr<const ResidueRing> ring, int r) {
    MatGroup g;
    g.r = r;
    Mat id = Mat::identity(*ring, r);
    g.ring = std::move(ring);
    g.elements = std::vector<Mat>{id};
    g.order = 1;
    return g;
}

BigInt units_order(const Ideal& a) {
    // |a| * prod_{p | a} (1 - 1/|p|), evaluated per prime power exactly.
    BigInt result = 1;
    for (auto& [p, e] : factor(a)) {
        BigInt P = norm(p);
        BigInt pe = 1;
        for (int i = 1; i < e; ++i) pe *= P;
        result *= pe * (P - 1);
    }
    return result;
}

BigInt gl_order(int r, const Ideal& a) {
    if (r < 1) throw ValidationError("gl_order: rank must be >= 1");
    // Per prime power p^e with P = |p|:
    //   P^(e r^2) * prod_{i=1..r} (1 - P^-i) = P^(e r^2 - r(r+1)/2) * prod (P^i - 1).
    BigInt result = 1;
    for (auto& [p, e] : factor(a)) {
        BigInt P = norm(p);
        long long exp = static_cast<long long>(e) * r * r - static_cast<long long>(r) * (r + 1) / 2;
        BigInt term = 1;
        for (long long i = 0; i < exp; ++i) term *= P;
        BigInt pi = 1;
        for (int i = 1; i <= r; ++i) {
            pi *= P;
            term *= pi - 1;
        }
        result *= term;
    }
    return result;
}

BigInt pgl_order(int r, const Ideal& a) {
    BigInt g = gl_order(r, a), u = units_order(a);
    if (g % u != 0) throw ValidationError("pgl_order: non-integral quotient");
    return g / u;
}

MatGroup closure(std::shared_ptr<const ResidueRing> ring, int r, std::vector<Mat> generators,
                 uint64_t cap) {
    const ResidueRing& R = *ring;
    for (const Mat& g : generators)
        if (!mat_is_invertible(R, g))
            throw ValidationError("closure: generator is not invertible");
    MatGroup out;
    out.r = r;
    Mat id = Mat::identity(R, r);

    // Fast path: pack whole matrices into uint64 keys when they fit, so the
    // BFS hashes plain integers instead of heap-allocated entry vectors.
    const int rr = r * r;
    bool packable = true;
    {
        BigInt total = 1;
        for (int i = 0; i < rr && packable; ++i) {
            total *= R.size();
            if (total > BigInt(uint64_t(1) << 62)) packable = false;
        }
    }
    if (packable) {
        // e[0] is the most significant digit so that ascending key order
        // coincides with Mat::operator< (lexicographic on e).
        auto pack = [&](const Mat& m) {
            uint64_t key = 0;
            for (int k = 0; k < rr; ++k) key = key * R.size() + m.e[k];
            return key;
        };
        std::unordered_set<uint64_t> seen;
        std::vector<Mat> frontier{id};
        seen.insert(pack(id));
        Mat y(r, std::vector<uint64_t>(rr));
        while (!frontier.empty()) {
            std::vector<Mat> next;
            for (const Mat& x : frontier)
                for (const Mat& g : generators) {
                    for (int i = 0; i < r; ++i)
                        for (int j = 0; j < r; ++j) {
                            uint64_t acc = 0;
                            for (int k = 0; k < r; ++k)
                                acc = R.add(acc, R.mul(x.at(i, k), g.at(k, j)));
                            y.at(i, j) = acc;
                        }
                    if (seen.insert(pack(y)).second) {
                        if (seen.size() > cap)
                            throw CapExceededError("closure: group exceeds cap of " +
                                                   std::to_string(cap) + " elements");
                        next.push_back(y);
                    }
                }
            frontier = std::move(next);
        }
        std::vector<uint64_t> keys(seen.begin(), seen.end());
        std::sort(keys.begin(), keys.end());
        std::vector<Mat> elems;
        elems.reserve(keys.size());
        for (uint64_t key : keys) {
            Mat m(r, std::vector<uint64_t>(rr));
            for (int k = rr - 1; k >= 0; --k) {
                m.e[k] = key % R.size();
                key /= R.size();
            }
            elems.push_back(std::move(m));
        }
        out.ring = std::move(ring);
        out.generators = std::move(generators);
        out.order = elems.size();
        out.elements = std::move(elems);
        return out;
    }

    std::unordered_set<Mat, MatHash> seen;
    std::vector<Mat> frontier;
    seen.insert(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        std::vector<Mat> next;
        for (const Mat& x : frontier)
            for (const Mat& g : generators) {
                Mat y = mat_mul(R, x, g);
                if (seen.insert(y).second) {
                    if (seen.size() > cap)
                        throw CapExceededError("closure: group exceeds cap of " +
                                               std::to_string(cap) + " elements");
                    next.push_back(std::move(y));
                }
            }
        frontier = std::move(next);
    }
    out.ring = std::move(ring);
    out.generators = std::move(generators);
    std::vector<Mat> elems(seen.begin(), seen.end());
    std::sort(elems.begin(), elems.end());
    out.order = elems.size();
    out.elements = std::move(elems);
    return out;
}

namespace {

// Greedy unit generating set of (A/a)^x, deterministic in label order.
std::vector<uint64_t> unit_generators(const ResidueRing& R) {
    std::vector<uint64_t> gens;
    std::unordered_set<uint64_t> span{R.one()};
    for (uint64_t u = 0; u < R.size(); ++u) {
        if (!R.is_unit(u) || span.count(u)) continue;
        gens.push_back(u);
        // Close the span under multiplication by the new generator set.
        std::vector<uint64_t> frontier(span.begin(), span.end());
        while (!frontier.empty()) {
            std::vector<uint64_t> next;
            for (uint64_t x : frontier)
                for (uint64_t g : gens) {
                    uint64_t y = R.mul(x, g);
                    if (span.insert(y).second) next.push_back(y);
                }
            frontier = std::move(next);
        }
    }
    return gens;
}

// Additive generating set of A/a as a group: {1} for Z/n, the monomials
// c T^m (c over an F_p generating set of F_q, m < deg f) for F_q[T]/(f).
std::vector<uint64_t> additive_generators(const ResidueRing& R) {
    if (R.size() == 1) return {};
    if (R.ring_spec().kind == RingKind::Integers) return {R.one()};
    const FqField& F = R.ring_spec().field();
    std::vector<uint64_t> out;
    int deg = R.ideal().poly_gen().degree();
    for (int m = 0; m < deg; ++m)
        for (int k = 0; k < F.e(); ++k) {
            // Monomial (x^k in F_q) * T^m; x^k encodes as p^k.
            int c = 1;
            for (int i = 0; i < k; ++i) c *= F.p();
            std::vector<int> coeffs(m + 1, 0);
            coeffs[m] = c;
            out.push_back(R.encode_poly(FqPoly(F, coeffs)));
        }
    return out;
}

}  // namespace

std::vector<Mat> gl_generators(const std::shared_ptr<const ResidueRing>& ring, int r) {
    const ResidueRing& R = *ring;
    std::vector<Mat> gens;
    if (R.size() == 1) return gens;
    std::vector<Ideal> comps = crt_split(R.ideal());
    std::vector<std::shared_ptr<const ResidueRing>> comp_rings;
    std::vector<const ResidueRing*> comp_ptrs;
    for (const Ideal& c : comps) {
        comp_rings.push_back(std::make_shared<ResidueRing>(c));
        comp_ptrs.push_back(comp_rings.back().get());
    }
    auto embed = [&](size_t which, const Mat& local) {
        // CRT-combine entry by entry, identity at the other components.
        Mat m(r, std::vector<uint64_t>(static_cast<size_t>(r) * r));
        for (size_t k = 0; k < m.e.size(); ++k) {
            std::vector<uint64_t> labels(comps.size());
            for (size_t i = 0; i < comps.size(); ++i) {
                uint64_t diag = (k % (r + 1) == 0) ? comp_ptrs[i]->one() : comp_ptrs[i]->zero();
                labels[i] = (i == which) ? local.e[k] : diag;
            }
            m.e[k] = crt_combine(R, comp_ptrs, labels);
        }
        return m;
    };
    for (size_t i = 0; i < comps.size(); ++i) {
        const ResidueRing& Rc = *comp_ptrs[i];
        // Transvections I + u E_jk.
        for (uint64_t u : additive_generators(Rc))
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k) {
                    if (j == k) continue;
                    Mat t = Mat::identity(Rc, r);
                    t.at(j, k) = u;
                    gens.push_back(embed(i, t));
                }
        // diag(u, 1, ..., 1) over a unit generating set.
        for (uint64_t u : unit_generators(Rc)) {
            Mat d = Mat::identity(Rc, r);
            d.at(0, 0) = u;
            gens.push_back(embed(i, d));
        }
    }
    // Cyclic permutations (with a sign fix not needed: permutations have
    // determinant +-1, a unit).
    if (r >= 2) {
        Mat p(r, std::vector<uint64_t>(static_cast<size_t>(r) * r, R.zero()));
        for (int i = 0; i < r; ++i) p.at(i, (i + 1) % r) = R.one();
        gens.push_back(p);
        Mat s = Mat::identity(R, r);
        s.at(0, 0) = R.zero();
        s.at(0, 1) = R.one();
        s.at(1, 0) = R.one();
        s.at(1, 1) = R.zero();
        gens.push_back(s);
    }
    // Deduplicate (small components can repeat patterns).
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return gens;
}

MatGroup enumerate_gl(std::shared_ptr<const ResidueRing> ring, int r, uint64_t cap) {
    const ResidueRing& R = *ring;
    BigInt expected = gl_order(r, R.ideal());
    if (expected > cap)
        throw CapExceededError("enumerate_gl: |GL| exceeds cap");
    // Candidate count |a|^{r^2} can exceed the cap even when |GL| does not;
    // allow a fixed expansion factor before falling back to closure.
    BigInt candidates = 1;
    for (int i = 0; i < r * r; ++i) candidates *= R.size();
    std::vector<Mat> elems;
    if (candidates <= BigInt(cap) * 16) {
        uint64_t total = candidates.convert_to<uint64_t>();
        Mat m(r, std::vector<uint64_t>(static_cast<size_t>(r) * r, 0));
        for (uint64_t t = 0; t < total; ++t) {
            uint64_t u = t;
            for (auto& v : m.e) {
                v = u % R.size();
                u /= R.size();
            }
            if (mat_is_invertible(R, m)) elems.push_back(m);
        }
        std::sort(elems.begin(), elems.end());
        MatGroup out;
        out.r = r;
        out.generators = gl_generators(ring, r);
        out.ring = std::move(ring);
        out.order = elems.size();
        out.elements = std::move(elems);
        if (out.order != expected)
            throw ValidationError("enumerate_gl: enumeration disagrees with the order formula");
        return out;
    }
    MatGroup out = closure(ring, r, gl_generators(ring, r), cap);
    if (out.order != expected)
        throw ValidationError("enumerate_gl: closure disagrees with the order formula");
    return out;
}

MatGroup reduce_group(const MatGroup& H, const Ideal& b) {
    if (!divides(b, H.ring->ideal())) throw ValidationError("reduce_group: b does not divide a");
    auto target = std::make_shared<ResidueRing>(b);
    MatGroup out;
    out.r = H.r;
    for (const Mat& g : H.generators) out.generators.push_back(mat_reduce(*H.ring, *target, g));
    if (H.elements) {
        std::vector<Mat> elems;
        elems.reserve(H.elements->size());
        for (const Mat& m : *H.elements) elems.push_back(mat_reduce(*H.ring, *target, m));
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        out.order = elems.size();
        out.elements = std::move(elems);
    } else {
        MatGroup closed = closure(target, H.r, out.generators);
        out.order = closed.order;
        out.elements = std::move(closed.elements);
    }
    out.ring = std::move(target);
    return out;
}

namespace {

// Kernel of GL_r(A/a) -> GL_r(A/b), b | a, as an explicit element list:
// matrices X == I (mod b) with unit determinant.
std::vector<Mat> reduction_kernel(const ResidueRing& Ra, const ResidueRing& Rb, int r,
                                  uint64_t cap) {
    const Ideal& a = Ra.ideal();
    const Ideal& b = Rb.ideal();
    Ideal c = div_ideal(a, b);
    auto Rc = ResidueRing(c);
    BigInt count = 1;
    for (int i = 0; i < r * r; ++i) count *= Rc.size();
    if (count > cap) throw CapExceededError("reduction_kernel: kernel candidates exceed cap");
    uint64_t total = count.convert_to<uint64_t>();
    // Entries delta_ij + b*t, t running over canonical representatives of
    // A/(a/b); the products b*t are pairwise distinct mod a.
    std::vector<uint64_t> offsets;  // the |a/b| values b*t mod a
    offsets.reserve(Rc.size());
    if (Ra.ring_spec().kind == RingKind::Integers) {
        uint64_t bn = norm(b).convert_to<uint64_t>();
        for (uint64_t t = 0; t < Rc.size(); ++t)
            offsets.push_back(static_cast<uint64_t>((unsigned __int128)bn * t % Ra.size()));
    } else {
        for (uint64_t t = 0; t < Rc.size(); ++t)
            offsets.push_back(Ra.encode_poly(poly_rem(b.poly_gen() * Rc.decode_poly(t),
                                                      a.poly_gen())));
    }
    Mat id = Mat::identity(Ra, r);
    std::vector<Mat> kernel;
    Mat m = id;
    for (uint64_t t = 0; t < total; ++t) {
        uint64_t u = t;
        for (size_t k = 0; k < m.e.size(); ++k) {
            m.e[k] = Ra.add(id.e[k], offsets[u % Rc.size()]);
            u /= Rc.size();
        }
        if (mat_is_invertible(Ra, m)) kernel.push_back(m);
    }
    return kernel;
}

// A lift of h (over A/b) to an invertible matrix over A/a: entrywise lift at
// the primes of b, identity at the remaining primes of a.
Mat lift_invertible(const ResidueRing& Ra, const ResidueRing& Rb, const Mat& h) {
    const Ideal& a = Ra.ideal();
    const Ideal& b = Rb.ideal();
    if (Rb.size() == 1) return Mat::identity(Ra, h.r);
    // Split a = a_b * a_rest with a_b | b^inf and gcd(a_rest, b) = 1.
    Ideal a_b = Ideal::unit(a.ring());
    Ideal a_rest = Ideal::unit(a.ring());
    for (auto& [p, e] : factor(a)) {
        if (divides(p, b))
            a_b = mul_ideal(a_b, pow_ideal(p, e));
        else
            a_rest = mul_ideal(a_rest, pow_ideal(p, e));
    }
    ResidueRing Rab(a_b), Rrest(a_rest);
    std::vector<const ResidueRing*> parts{&Rab, &Rrest};
    Mat out(h.r, std::vector<uint64_t>(h.e.size()));
    Mat id = Mat::identity(Rrest, h.r);
    for (size_t k = 0; k < h.e.size(); ++k) {
        // Entrywise lift A/b -> A/a_b (canonical representative works since
        // supp(a_b) = supp(b) keeps invertibility intact).
        uint64_t xb;
        if (Ra.ring_spec().kind == RingKind::Integers) {
            // The canonical representative is already < |b| <= |a_b|.
            xb = h.e[k];
        } else {
            xb = Rab.encode_poly(Rb.decode_poly(h.e[k]));
        }
        out.e[k] = crt_combine(Ra, parts, {xb, id.e[k]});
    }
    return out;
}

}  // namespace

MatGroup preimage_group(const MatGroup& H, const Ideal& a, uint64_t cap) {
    const Ideal& b = H.ring->ideal();
    if (!divides(b, a)) throw ValidationError("preimage_group: b does not divide a");
    if (a == b) return H;
    if (!H.elements) throw ValidationError("preimage_group: H must be enumerated");
    auto Ra = std::make_shared<ResidueRing>(a);
    std::vector<Mat> kernel = reduction_kernel(*Ra, *H.ring, H.r, cap);
    BigInt expected = BigInt(kernel.size()) * H.order;
    if (expected > cap) throw CapExceededError("preimage_group: preimage exceeds cap");
    std::vector<Mat> elems;
    elems.reserve((kernel.size()) * H.elements->size());
    for (const Mat& h : *H.elements) {
        Mat lift = lift_invertible(*Ra, *H.ring, h);
        for (const Mat& k : kernel) elems.push_back(mat_mul(*Ra, k, lift));
    }
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    MatGroup out;
    out.r = H.r;
    for (const Mat& g : H.generators) out.generators.push_back(lift_invertible(*Ra, *H.ring, g));
    out.ring = std::move(Ra);
    out.order = elems.size();
    out.elements = std::move(elems);
    return out;
}

std::vector<uint64_t> scalar_subgroup(const MatGroup& H) {
    if (!H.elements) throw ValidationError("scalar_subgroup: H must be enumerated");
    std::vector<uint64_t> out;
    for (const Mat& m : *H.elements) {
        uint64_t lambda;
        if (mat_is_scalar(*H.ring, m, &lambda) && H.ring->is_unit(lambda)) out.push_back(lambda);
    }
    std::sort(out.begin(), out.end());
    return out;
}

CrtSplitResult crt_split_group(const MatGroup& H, const Ideal& b, const Ideal& c) {
    if (!gcd_ideal(b, c).is_unit()) throw ValidationError("crt_split_group: factors not coprime");
    if (mul_ideal(b, c) != H.ring->ideal())
        throw ValidationError("crt_split_group: product mismatch");
    CrtSplitResult out{reduce_group(H, b), reduce_group(H, c), false};
    out.direct_product = (out.image_b.order * out.image_c.order == H.order);
    return out;
}

}  // namespace elmod
