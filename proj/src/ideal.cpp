#include "elmod/ideal.hpp"

#include <algorithm>
#include <sstream>

#include "elmod/errors.hpp"
#include "elmod/intfactor.hpp"

namespace elmod {

RingSpec RingSpec::poly_ring(int q) {
    FqField::get(q);  // validates q
    return {RingKind::PolyRing, q};
}

const FqField& RingSpec::field() const {
    if (kind != RingKind::PolyRing) throw ValidationError("RingSpec: not a polynomial ring");
    return FqField::get(q);
}

std::string RingSpec::to_string() const {
    if (kind == RingKind::Integers) return "Z";
    return "F_" + std::to_string(q) + "[T]";
}

Ideal::Ideal(RingSpec ring, BigInt n) : ring_(ring), n_(std::move(n)) {
    if (ring_.kind != RingKind::Integers) throw ValidationError("Ideal: integer generator in polynomial ring");
    if (n_ == 0) throw ValidationError("Ideal: zero generator");
    if (n_ < 0) n_ = -n_;
}

Ideal::Ideal(RingSpec ring, FqPoly f) : ring_(ring), f_(std::move(f)) {
    if (ring_.kind != RingKind::PolyRing) throw ValidationError("Ideal: polynomial generator in Z");
    if (f_.is_zero()) throw ValidationError("Ideal: zero generator");
    if (&f_.field() != &ring_.field()) throw ValidationError("Ideal: field mismatch");
    f_ = f_.monic();
}

Ideal Ideal::unit(const RingSpec& ring) {
    if (ring.kind == RingKind::Integers) return Ideal(ring, BigInt(1));
    return Ideal(ring, FqPoly::one(ring.field()));
}

bool Ideal::is_unit() const {
    return ring_.kind == RingKind::Integers ? n_ == 1 : f_.degree() == 0;
}

bool Ideal::operator==(const Ideal& o) const {
    if (ring_ != o.ring_) return false;
    return ring_.kind == RingKind::Integers ? n_ == o.n_ : f_ == o.f_;
}

bool Ideal::operator<(const Ideal& o) const {
    if (ring_ != o.ring_) throw ValidationError("Ideal: comparing across rings");
    if (ring_.kind == RingKind::Integers) return n_ < o.n_;
    return poly_less(f_, o.f_);
}

std::string Ideal::generator_string() const {
    if (ring_.kind == RingKind::Integers) return n_.str();
    return f_.to_string();
}

std::string Ideal::to_string() const {
    if (ring_.kind == RingKind::Integers) return generator_string();
    return "q=" + std::to_string(ring_.q) + ";" + generator_string();
}

BigInt norm(const Ideal& a) {
    if (a.ring().kind == RingKind::Integers) return a.int_gen();
    BigInt r = 1;
    for (int i = 0; i < a.poly_gen().degree(); ++i) r *= a.ring().q;
    return r;
}

std::vector<std::pair<Ideal, int>> factor(const Ideal& a, int max_bits) {
    std::vector<std::pair<Ideal, int>> out;
    if (a.ring().kind == RingKind::Integers) {
        const BigInt& n = a.int_gen();
        if (msb(n) + 1 > static_cast<unsigned>(max_bits) || n > BigInt(~uint64_t(0)))
            throw FactorBudgetError("factor: generator exceeds the factoring budget (" +
                                    std::to_string(max_bits) + " bits)");
        for (auto [p, e] : factor_u64(n.convert_to<uint64_t>()))
            out.emplace_back(Ideal(a.ring(), BigInt(p)), e);
    } else {
        if (a.poly_gen().degree() == 0) return out;
        for (auto& [p, e] : poly_factor(a.poly_gen()))
            out.emplace_back(Ideal(a.ring(), p), e);
    }
    return out;
}

bool divides(const Ideal& a, const Ideal& b) {
    if (a.ring() != b.ring()) throw ValidationError("divides: ring mismatch");
    if (a.ring().kind == RingKind::Integers) return b.int_gen() % a.int_gen() == 0;
    return poly_rem(b.poly_gen(), a.poly_gen()).is_zero();
}

int valuation(const Ideal& prime, const Ideal& a) {
    Ideal rest = a;
    int v = 0;
    while (divides(prime, rest)) {
        rest = div_ideal(rest, prime);
        ++v;
    }
    return v;
}

bool divides_power(const Ideal& a, const Ideal& b) {
    if (a.ring() != b.ring()) throw ValidationError("divides_power: ring mismatch");
    // Every prime of a divides b  <=>  a | gcd(a, b^k) stabilizes at a,
    // computed without factoring: repeatedly strip gcd(a', b).
    Ideal rest = a;
    while (!rest.is_unit()) {
        Ideal g = gcd_ideal(rest, b);
        if (g.is_unit()) return false;
        while (divides(g, rest)) rest = div_ideal(rest, g);
    }
    return true;
}

Ideal gcd_ideal(const Ideal& a, const Ideal& b) {
    if (a.ring() != b.ring()) throw ValidationError("gcd: ring mismatch");
    if (a.ring().kind == RingKind::Integers)
        return Ideal(a.ring(), boost::multiprecision::gcd(a.int_gen(), b.int_gen()));
    return Ideal(a.ring(), poly_gcd(a.poly_gen(), b.poly_gen()));
}

Ideal mul_ideal(const Ideal& a, const Ideal& b) {
    if (a.ring() != b.ring()) throw ValidationError("mul: ring mismatch");
    if (a.ring().kind == RingKind::Integers) return Ideal(a.ring(), a.int_gen() * b.int_gen());
    return Ideal(a.ring(), a.poly_gen() * b.poly_gen());
}

Ideal div_ideal(const Ideal& a, const Ideal& b) {
    if (a.ring() != b.ring()) throw ValidationError("div: ring mismatch");
    if (a.ring().kind == RingKind::Integers) {
        if (a.int_gen() % b.int_gen() != 0) throw ValidationError("div: not divisible");
        return Ideal(a.ring(), a.int_gen() / b.int_gen());
    }
    auto [q, r] = poly_divmod(a.poly_gen(), b.poly_gen());
    if (!r.is_zero()) throw ValidationError("div: not divisible");
    return Ideal(a.ring(), q);
}

Ideal lcm_ideal(const Ideal& a, const Ideal& b) {
    return div_ideal(mul_ideal(a, b), gcd_ideal(a, b));
}

Ideal pow_ideal(const Ideal& p, int e) {
    Ideal r = Ideal::unit(p.ring());
    for (int i = 0; i < e; ++i) r = mul_ideal(r, p);
    return r;
}

std::vector<Ideal> crt_split(const Ideal& a) {
    std::vector<Ideal> out;
    for (auto& [p, e] : factor(a)) out.push_back(pow_ideal(p, e));
    return out;
}

IdealDecomposition decompose(const Ideal& a, const Ideal& m) {
    if (a.ring() != m.ring()) throw ValidationError("decompose: ring mismatch");
    Ideal a11 = Ideal::unit(a.ring());
    Ideal a12 = Ideal::unit(a.ring());
    Ideal a2 = Ideal::unit(a.ring());
    for (auto& [p, e] : factor(a)) {
        int vm = valuation(p, m);
        if (vm == 0)
            a2 = mul_ideal(a2, pow_ideal(p, e));
        else if (e > vm)
            a11 = mul_ideal(a11, pow_ideal(p, e));
        else
            a12 = mul_ideal(a12, pow_ideal(p, e));
    }
    return {a11, a12, a2};
}

Ideal parse_ideal(const std::string& s, const std::optional<RingSpec>& expected_ring) {
    std::string body = s;
    std::optional<RingSpec> ring = expected_ring;
    if (s.rfind("q=", 0) == 0) {
        auto sep = s.find(';');
        if (sep == std::string::npos) throw ParseError("ideal: expected ';' after q=...");
        int q;
        try {
            q = std::stoi(s.substr(2, sep - 2));
        } catch (const std::exception&) {
            throw ParseError("ideal: bad q value");
        }
        RingSpec rs = RingSpec::poly_ring(q);
        if (ring && *ring != rs) throw ValidationError("ideal: ring mismatch with expected ring");
        ring = rs;
        body = s.substr(sep + 1);
    }
    if (body.empty()) throw ParseError("ideal: empty");
    if (body.front() == '[') {
        if (!ring || ring->kind != RingKind::PolyRing)
            throw ParseError("ideal: polynomial generator needs a q=... prefix or a polynomial ring");
        if (body.back() != ']') throw ParseError("ideal: missing ']'");
        std::vector<int> coeffs;
        std::string inner = body.substr(1, body.size() - 2);
        if (!inner.empty()) {
            std::istringstream is(inner);
            std::string tok;
            while (std::getline(is, tok, ',')) {
                try {
                    coeffs.push_back(std::stoi(tok));
                } catch (const std::exception&) {
                    throw ParseError("ideal: bad coefficient '" + tok + "'");
                }
            }
        }
        const FqField& F = ring->field();
        for (int c : coeffs)
            if (c < 0 || c >= F.q()) throw ParseError("ideal: coefficient out of range for F_q");
        return Ideal(*ring, FqPoly(F, coeffs));
    }
    if (ring && ring->kind == RingKind::PolyRing)
        throw ParseError("ideal: expected a polynomial generator for F_q[T]");
    try {
        return Ideal(RingSpec::integers(), BigInt(body));
    } catch (const std::runtime_error& e) {
        throw ParseError(std::string("ideal: ") + e.what());
    }
}

std::vector<Ideal> ideals_up_to_norm(const RingSpec& ring, const BigInt& bound) {
    std::vector<Ideal> out;
    if (ring.kind == RingKind::Integers) {
        for (BigInt n = 1; n <= bound; ++n) out.emplace_back(ring, n);
    } else {
        const FqField& F = ring.field();
        BigInt norm_d = 1;
        for (int d = 0; norm_d <= bound; ++d, norm_d *= F.q())
            for (auto& f : monic_polys_of_degree(F, d)) out.emplace_back(ring, f);
    }
    return out;
}

}  // namespace elmod
