#include "elmod/fq.hpp"

#include <map>
#include <mutex>

namespace elmod {
namespace {

bool is_prime_small(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over F_p as coefficient vectors (ascending), arithmetic mod p.
using PVec = std::vector<int>;

PVec ptrim(PVec v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

PVec pmul(const PVec& a, const PVec& b, int p) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return ptrim(std::move(r));
}

PVec prem(PVec a, const PVec& m, int p) {
    a = ptrim(std::move(a));
    while (a.size() >= m.size()) {
        int c = a.back();  // m is monic
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i)
            a[i + shift] = ((a[i + shift] - c * m[i]) % p + p) % p;
        a = ptrim(std::move(a));
    }
    return a;
}

int encode(const PVec& v, int p) {
    int label = 0;
    for (size_t i = v.size(); i-- > 0;) label = label * p + v[i];
    return label;
}

PVec decode(int label, int p, int e) {
    PVec v(e, 0);
    for (int i = 0; i < e; ++i) {
        v[i] = label % p;
        label /= p;
    }
    return ptrim(std::move(v));
}

// Lexicographically least monic irreducible of degree e over F_p,
// coefficients compared from the constant term up.
PVec least_irreducible(int p, int e) {
    long long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long long tail = 0; tail < count; ++tail) {
        PVec f(e + 1, 0);
        long long t = tail;
        for (int i = 0; i < e; ++i) {
            f[i] = static_cast<int>(t % p);
            t /= p;
        }
        f[e] = 1;
        // Irreducible iff f has no root pattern shared with lower factors;
        // test by trial division over all monic polys of degree <= e/2.
        bool irreducible = true;
        for (int d = 1; irreducible && 2 * d <= e; ++d) {
            long long dn = 1;
            for (int i = 0; i < d; ++i) dn *= p;
            for (long long gt = 0; gt < dn; ++gt) {
                PVec g(d + 1, 0);
                long long u = gt;
                for (int i = 0; i < d; ++i) {
                    g[i] = static_cast<int>(u % p);
                    u /= p;
                }
                g[d] = 1;
                if (prem(f, g, p).empty()) {
                    irreducible = false;
                    break;
                }
            }
        }
        if (irreducible) return f;
    }
    throw ValidationError("FqField: no irreducible found");
}

}  // namespace

FqField::FqField(int q) : q_(q) {
    if (q < 2) throw ValidationError("FqField: q must be >= 2");
    int p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;  // q prime
    if (!is_prime_small(p)) throw ValidationError("FqField: q not a prime power");
    int e = 0;
    int t = q;
    while (t > 1) {
        if (t % p != 0) throw ValidationError("FqField: q not a prime power");
        t /= p;
        ++e;
    }
    p_ = p;
    e_ = e;
    mod_ = least_irreducible(p, e);

    add_.assign(static_cast<size_t>(q) * q, 0);
    mul_.assign(static_cast<size_t>(q) * q, 0);
    neg_.assign(q, 0);
    inv_.assign(q, 0);
    proot_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        PVec va = decode(a, p, e);
        for (int b = 0; b < q; ++b) {
            PVec vb = decode(b, p, e);
            PVec s(std::max(va.size(), vb.size()), 0);
            for (size_t i = 0; i < s.size(); ++i) {
                int x = (i < va.size() ? va[i] : 0) + (i < vb.size() ? vb[i] : 0);
                s[i] = x % p;
            }
            add_[static_cast<size_t>(a) * q + b] = encode(ptrim(s), p);
            mul_[static_cast<size_t>(a) * q + b] = encode(prem(pmul(va, vb, p), mod_, p), p);
        }
    }
    for (int a = 0; a < q; ++a) {
        PVec va = decode(a, p, e);
        PVec n(va.size());
        for (size_t i = 0; i < va.size(); ++i) n[i] = (p - va[i]) % p;
        neg_[a] = encode(ptrim(std::move(n)), p);
    }
    for (int a = 1; a < q; ++a) {
        for (int b = 1; b < q; ++b) {
            if (mul(a, b) == 1) {
                inv_[a] = b;
                break;
            }
        }
        if (inv_[a] == 0) throw ValidationError("FqField: inconsistent tables");
    }
    // b^p = a has a unique solution (Frobenius is an automorphism).
    for (int b = 0; b < q; ++b) {
        int x = b;
        for (int i = 1; i < p; ++i) x = mul(x, b);
        proot_[x] = b;
    }
}

int FqField::pow(int a, long long n) const {
    if (n < 0) {
        a = inv(a);
        n = -n;
    }
    int r = 1;
    while (n > 0) {
        if (n & 1) r = mul(r, a);
        a = mul(a, a);
        n >>= 1;
    }
    return r;
}

const FqField& FqField::get(int q) {
    static std::mutex mu;
    static std::map<int, FqField> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, FqField(q)).first;
    return it->second;
}

}  // namespace elmod
