#include "elmod/poly.hpp"

#include <algorithm>
#include <sstream>

#include "elmod/errors.hpp"

namespace elmod {

FqPoly::FqPoly(const FqField& f, std::vector<int> coeffs) : f_(&f), c_(std::move(coeffs)) {
    for (int c : c_)
        if (c < 0 || c >= f.q()) throw ValidationError("FqPoly: coefficient out of range");
    trim();
}

void FqPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    const FqField& F = a.field();
    std::vector<int> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0);
    return FqPoly(F, std::move(r));
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) {
    const FqField& F = a.field();
    std::vector<int> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(i < a.c_.size() ? a.c_[i] : 0, i < b.c_.size() ? b.c_[i] : 0);
    return FqPoly(F, std::move(r));
}

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    const FqField& F = a.field();
    if (a.is_zero() || b.is_zero()) return FqPoly::zero(F);
    std::vector<int> r(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a.c_[i], b.c_[j]));
    return FqPoly(F, std::move(r));
}

FqPoly FqPoly::scaled(int c) const {
    const FqField& F = field();
    std::vector<int> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = F.mul(c_[i], c);
    return FqPoly(F, std::move(r));
}

FqPoly FqPoly::monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(field().inv(leading()));
}

bool poly_less(const FqPoly& a, const FqPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
}

std::string FqPoly::to_string() const {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ',';
        os << c_[i];
    }
    os << ']';
    return os.str();
}

std::pair<FqPoly, FqPoly> poly_divmod(const FqPoly& a, const FqPoly& b) {
    if (b.is_zero()) throw ValidationError("poly_divmod: division by zero");
    const FqField& F = a.field();
    std::vector<int> rem(a.coeffs());
    int db = b.degree();
    int lead_inv = F.inv(b.leading());
    if (a.degree() < db) return {FqPoly::zero(F), a};
    std::vector<int> quo(a.degree() - db + 1, 0);
    for (int i = a.degree(); i >= db; --i) {
        int c = F.mul(rem[i], lead_inv);
        quo[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j)
            rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b.coeff(j)));
    }
    return {FqPoly(F, std::move(quo)), FqPoly(F, std::move(rem))};
}

FqPoly poly_rem(const FqPoly& a, const FqPoly& b) { return poly_divmod(a, b).second; }

FqPoly poly_gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyXgcd poly_xgcd(const FqPoly& a, const FqPoly& b) {
    const FqField& F = a.field();
    FqPoly r0 = a, r1 = b;
    FqPoly u0 = FqPoly::one(F), u1 = FqPoly::zero(F);
    FqPoly v0 = FqPoly::zero(F), v1 = FqPoly::one(F);
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        FqPoly u2 = u0 - q * u1;
        u0 = std::move(u1);
        u1 = std::move(u2);
        FqPoly v2 = v0 - q * v1;
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (!r0.is_zero() && !r0.is_monic()) {
        int c = F.inv(r0.leading());
        r0 = r0.scaled(c);
        u0 = u0.scaled(c);
        v0 = v0.scaled(c);
    }
    return {r0, u0, v0};
}

FqPoly poly_mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m) {
    return poly_rem(a * b, m);
}

FqPoly poly_powmod_u64(FqPoly base, uint64_t n, const FqPoly& m) {
    const FqField& F = base.field();
    FqPoly r = FqPoly::one(F);
    base = poly_rem(base, m);
    while (n > 0) {
        if (n & 1) r = poly_mulmod(r, base, m);
        base = poly_mulmod(base, base, m);
        n >>= 1;
    }
    return r;
}

FqPoly poly_pow_q_power(const FqPoly& base, int d, const FqPoly& m) {
    FqPoly r = poly_rem(base, m);
    uint64_t q = static_cast<uint64_t>(base.field().q());
    for (int i = 0; i < d; ++i) r = poly_powmod_u64(r, q, m);
    return r;
}

FqPoly poly_derivative(const FqPoly& a) {
    const FqField& F = a.field();
    if (a.degree() < 1) return FqPoly::zero(F);
    std::vector<int> r(a.degree(), 0);
    for (int i = 1; i <= a.degree(); ++i) {
        int c = 0;
        for (int k = 0; k < i % F.p(); ++k) c = F.add(c, a.coeff(i));
        r[i - 1] = c;
    }
    return FqPoly(F, std::move(r));
}

bool poly_is_irreducible(const FqPoly& f) {
    const FqField& F = f.field();
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    FqPoly x = FqPoly::x(F);
    // Rabin test: x^(q^n) == x mod f, and x^(q^(n/t)) - x coprime to f for
    // every prime t | n.
    FqPoly xn = poly_pow_q_power(x, n, f);
    if (xn != poly_rem(x, f)) return false;
    for (int t = 2; t <= n; ++t) {
        if (n % t != 0) continue;
        bool is_prime = true;
        for (int d = 2; d * d <= t; ++d)
            if (t % d == 0) is_prime = false;
        if (!is_prime) continue;
        FqPoly xd = poly_pow_q_power(x, n / t, f);
        if (!poly_gcd(xd - x, f).is_one()) return false;
    }
    return true;
}

namespace {

// Deterministic PRNG seeded from the polynomial's coefficient hash, so
// equal-degree splitting is reproducible.
struct SplitMix64 {
    uint64_t s;
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

uint64_t coeff_hash(const FqPoly& f) {
    uint64_t h = 1469598103934665603ULL ^ static_cast<uint64_t>(f.field().q());
    for (int c : f.coeffs()) {
        h ^= static_cast<uint64_t>(c) + 1;
        h *= 1099511628211ULL;
    }
    return h;
}

FqPoly random_poly_below(const FqField& F, int degree_bound, SplitMix64& rng) {
    std::vector<int> c(degree_bound, 0);
    for (int& ci : c) ci = static_cast<int>(rng.next() % static_cast<uint64_t>(F.q()));
    return FqPoly(F, std::move(c));
}

// Equal-degree splitting (Cantor-Zassenhaus): f monic squarefree, all
// irreducible factors of degree d.
void edf(const FqPoly& f, int d, SplitMix64& rng, std::vector<FqPoly>& out) {
    const FqField& F = f.field();
    int n = f.degree();
    if (n == d) {
        out.push_back(f.monic());
        return;
    }
    FqPoly g = FqPoly::one(F);
    while (g.is_one() || g.degree() == n || g.degree() == 0) {
        FqPoly a = random_poly_below(F, n, rng);
        if (a.degree() < 1) continue;
        if (F.p() == 2) {
            // Trace map over F_2-structure: a + a^2 + a^4 + ... (kd terms
            // where q = 2^k).
            int k = F.e();
            FqPoly t = poly_rem(a, f);
            FqPoly acc = t;
            for (int i = 1; i < k * d; ++i) {
                t = poly_mulmod(t, t, f);
                acc = acc + t;
            }
            g = poly_gcd(acc, f);
        } else {
            uint64_t exp = 1;
            for (int i = 0; i < d; ++i) exp *= static_cast<uint64_t>(F.q());
            exp = (exp - 1) / 2;
            FqPoly b = poly_powmod_u64(a, exp, f);
            g = poly_gcd(b - FqPoly::one(F), f);
        }
        if (g.degree() > 0 && g.degree() < n) break;
        g = FqPoly::one(F);
    }
    edf(g, d, rng, out);
    edf(poly_divmod(f, g).first, d, rng, out);
}

// Distinct-degree factorization of a monic squarefree polynomial.
void ddf(const FqPoly& f, SplitMix64& rng, std::vector<FqPoly>& out) {
    const FqField& F = f.field();
    FqPoly rest = f;
    FqPoly x = FqPoly::x(F);
    FqPoly h = poly_rem(x, rest);
    int d = 0;
    while (rest.degree() > 0) {
        ++d;
        if (2 * d > rest.degree()) {
            out.push_back(rest.monic());
            break;
        }
        h = poly_pow_q_power(d == 1 ? x : h, 1, rest);
        // keep h = x^(q^d) mod rest; recompute from scratch after division
        FqPoly g = poly_gcd(h - x, rest);
        if (g.degree() > 0) {
            edf(g, d, rng, out);
            rest = poly_divmod(rest, g).first;
            h = poly_rem(h, rest);
        }
    }
}

}  // namespace

std::vector<std::pair<FqPoly, int>> poly_factor(const FqPoly& f) {
    const FqField& F = f.field();
    if (f.is_zero()) throw ValidationError("poly_factor: zero polynomial");
    SplitMix64 rng{coeff_hash(f)};
    std::vector<std::pair<FqPoly, int>> result;
    FqPoly work = f.monic();

    // Squarefree decomposition via repeated gcd with the derivative,
    // handling p-th power parts through the inverse Frobenius.
    struct Task {
        FqPoly poly;
        int multiplicity;
    };
    std::vector<Task> tasks{{work, 1}};
    std::vector<std::pair<FqPoly, int>> squarefree_parts;  // (squarefree poly, multiplicity)
    while (!tasks.empty()) {
        Task t = tasks.back();
        tasks.pop_back();
        if (t.poly.degree() <= 0) continue;
        FqPoly der = poly_derivative(t.poly);
        if (der.is_zero()) {
            // t.poly = g(x^p): take the p-th root of the coefficients.
            std::vector<int> c;
            for (int i = 0; i <= t.poly.degree(); i += F.p())
                c.push_back(F.pth_root(t.poly.coeff(i)));
            tasks.push_back({FqPoly(F, std::move(c)), t.multiplicity * F.p()});
            continue;
        }
        FqPoly g = poly_gcd(t.poly, der);
        FqPoly sf = poly_divmod(t.poly, g).first;  // squarefree part (product of distinct factors)
        int m = 1;
        while (sf.degree() > 0) {
            FqPoly next_sf = poly_gcd(sf, g);
            FqPoly exact = poly_divmod(sf, next_sf).first;  // factors of multiplicity exactly m
            if (exact.degree() > 0) squarefree_parts.emplace_back(exact.monic(), m * t.multiplicity);
            if (!next_sf.is_one()) g = poly_divmod(g, next_sf).first;
            sf = next_sf;
            ++m;
        }
        if (g.degree() > 0) tasks.push_back({g.monic(), t.multiplicity});
    }

    for (auto& [sf, mult] : squarefree_parts) {
        std::vector<FqPoly> irr;
        ddf(sf, rng, irr);
        for (auto& p : irr) result.emplace_back(p, mult);
    }
    // Merge duplicates (the same irreducible can surface from different
    // squarefree layers) and sort canonically.
    std::sort(result.begin(), result.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    std::vector<std::pair<FqPoly, int>> merged;
    for (auto& pr : result) {
        if (!merged.empty() && merged.back().first == pr.first)
            merged.back().second += pr.second;
        else
            merged.push_back(pr);
    }
    return merged;
}

std::vector<FqPoly> monic_polys_of_degree(const FqField& f, int degree) {
    std::vector<FqPoly> out;
    long long count = 1;
    for (int i = 0; i < degree; ++i) count *= f.q();
    for (long long t = 0; t < count; ++t) {
        std::vector<int> c(degree + 1, 0);
        long long u = t;
        for (int i = 0; i < degree; ++i) {
            c[i] = static_cast<int>(u % f.q());
            u /= f.q();
        }
        c[degree] = 1;
        out.emplace_back(f, std::move(c));
    }
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

std::vector<FqPoly> monic_irreducibles_up_to(const FqField& f, int max_degree) {
    std::vector<FqPoly> out;
    for (int d = 1; d <= max_degree; ++d)
        for (auto& p : monic_polys_of_degree(f, d))
            if (poly_is_irreducible(p)) out.push_back(p);
    return out;
}

}  // namespace elmod
