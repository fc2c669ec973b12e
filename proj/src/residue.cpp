#include "elmod/residue.hpp"

#include <numeric>

#include "elmod/errors.hpp"

namespace elmod {

namespace {
constexpr uint64_t kTableLimit = 512;  // full op tables below this ring size
}

ResidueRing::ResidueRing(Ideal ideal)
    : ideal_(std::move(ideal)) {
    BigInt n = norm(ideal_);
    if (n > BigInt(uint64_t(1) << 62))
        throw CapExceededError("ResidueRing: norm too large for element arithmetic");
    size_ = n.convert_to<uint64_t>();
    if (ideal_.ring().kind == RingKind::Integers) {
        n_ = size_;
    } else {
        modulus_ = ideal_.poly_gen();
    }
    if (size_ <= kTableLimit) {
        tabled_ = true;
        add_table_.assign(size_ * size_, 0);
        mul_table_.assign(size_ * size_, 0);
        for (uint64_t a = 0; a < size_; ++a)
            for (uint64_t b = 0; b < size_; ++b) {
                add_table_[a * size_ + b] = static_cast<uint32_t>(add_slow(a, b));
                mul_table_[a * size_ + b] = static_cast<uint32_t>(mul_slow(a, b));
            }
        unit_table_.assign(size_, 0);
        inv_table_.assign(size_, 0);
        for (uint64_t a = 0; a < size_; ++a)
            for (uint64_t b = 0; b < size_; ++b)
                if (mul_table_[a * size_ + b] == one()) {
                    unit_table_[a] = 1;
                    inv_table_[a] = static_cast<uint32_t>(b);
                    break;
                }
        if (size_ == 1) {
            unit_table_[0] = 1;
            inv_table_[0] = 0;
        }
    }
}

uint64_t ResidueRing::add_slow(uint64_t a, uint64_t b) const {
    if (size_ == 1) return 0;
    if (ideal_.ring().kind == RingKind::Integers) {
        uint64_t s = a + b;
        return s >= n_ ? s - n_ : s;
    }
    return encode_poly(decode_poly(a) + decode_poly(b));
}

uint64_t ResidueRing::mul_slow(uint64_t a, uint64_t b) const {
    if (size_ == 1) return 0;
    if (ideal_.ring().kind == RingKind::Integers)
        return static_cast<uint64_t>((unsigned __int128)a * b % n_);
    return encode_poly(poly_rem(decode_poly(a) * decode_poly(b), modulus_));
}

uint64_t ResidueRing::add(uint64_t a, uint64_t b) const {
    if (tabled_) return add_table_[a * size_ + b];
    return add_slow(a, b);
}

uint64_t ResidueRing::mul(uint64_t a, uint64_t b) const {
    if (tabled_) return mul_table_[a * size_ + b];
    return mul_slow(a, b);
}

uint64_t ResidueRing::neg(uint64_t a) const {
    if (size_ == 1) return 0;
    if (ideal_.ring().kind == RingKind::Integers) return a == 0 ? 0 : n_ - a;
    return encode_poly(FqPoly::zero(modulus_.field()) - decode_poly(a));
}

uint64_t ResidueRing::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

bool ResidueRing::is_unit(uint64_t a) const {
    if (size_ == 1) return true;  // zero ring: 0 = 1
    if (tabled_) return unit_table_[a] != 0;
    if (ideal_.ring().kind == RingKind::Integers) return std::gcd(a, n_) == 1;
    return poly_gcd(decode_poly(a), modulus_).is_one();
}

uint64_t ResidueRing::inv(uint64_t a) const {
    if (size_ == 1) return 0;
    if (tabled_) {
        if (!unit_table_[a]) throw ValidationError("ResidueRing: inverse of a non-unit");
        return inv_table_[a];
    }
    if (ideal_.ring().kind == RingKind::Integers) {
        int64_t t = 0, new_t = 1;
        int64_t r = static_cast<int64_t>(n_), new_r = static_cast<int64_t>(a);
        while (new_r != 0) {
            int64_t qq = r / new_r;
            std::swap(t -= qq * new_t, new_t);
            std::swap(r -= qq * new_r, new_r);
        }
        if (r != 1) throw ValidationError("ResidueRing: inverse of a non-unit");
        return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(n_) : t);
    }
    auto x = poly_xgcd(decode_poly(a), modulus_);
    if (!x.g.is_one()) throw ValidationError("ResidueRing: inverse of a non-unit");
    return encode_poly(poly_rem(x.u, modulus_));
}

std::vector<uint64_t> ResidueRing::units() const {
    std::vector<uint64_t> out;
    for (uint64_t a = 0; a < size_; ++a)
        if (is_unit(a)) out.push_back(a);
    return out;
}

FqPoly ResidueRing::decode_poly(uint64_t label) const {
    const FqField& F = ideal_.ring().field();
    std::vector<int> c;
    uint64_t q = static_cast<uint64_t>(F.q());
    while (label > 0) {
        c.push_back(static_cast<int>(label % q));
        label /= q;
    }
    return FqPoly(F, std::move(c));
}

uint64_t ResidueRing::encode_poly(const FqPoly& p) const {
    FqPoly r = modulus_.degree() >= 0 && !modulus_.is_zero() ? poly_rem(p, modulus_) : p;
    uint64_t q = static_cast<uint64_t>(ideal_.ring().field().q());
    uint64_t label = 0;
    for (int i = r.degree(); i >= 0; --i) label = label * q + static_cast<uint64_t>(r.coeff(i));
    return label;
}

uint64_t ResidueRing::from_int(const BigInt& n) const {
    BigInt r = n % BigInt(n_ == 0 ? 1 : n_);
    if (r < 0) r += n_;
    return size_ == 1 ? 0 : r.convert_to<uint64_t>();
}

std::string ResidueRing::to_string(uint64_t label) const {
    if (ideal_.ring().kind == RingKind::Integers) return std::to_string(label);
    return decode_poly(label).to_string();
}

uint64_t ResidueRing::parse(const std::string& s) const {
    if (ideal_.ring().kind == RingKind::Integers) {
        BigInt v;
        try {
            v = BigInt(s);
        } catch (const std::runtime_error&) {
            throw ParseError("residue: bad integer '" + s + "'");
        }
        return from_int(v);
    }
    // "[c0,c1,...]" with coefficient labels in [0, q); "[]" is zero.
    const FqField& F = ideal_.ring().field();
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("residue: bad polynomial '" + s + "'");
    std::vector<int> coeffs;
    std::string body = s.substr(1, s.size() - 2);
    size_t pos = 0;
    while (pos < body.size()) {
        size_t comma = body.find(',', pos);
        std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
        try {
            size_t used = 0;
            int c = std::stoi(tok, &used);
            if (used != tok.size() || c < 0 || c >= F.q()) throw std::invalid_argument(tok);
            coeffs.push_back(c);
        } catch (const std::exception&) {
            throw ParseError("residue: bad coefficient '" + tok + "' in '" + s + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return encode_poly(FqPoly(F, std::move(coeffs)));
}

uint64_t ResidueRing::reduce_label(const ResidueRing& from, const ResidueRing& to, uint64_t x) {
    if (!divides(to.ideal(), from.ideal()))
        throw ValidationError("reduce_label: target ideal does not divide source ideal");
    if (to.size() == 1) return 0;
    if (from.ideal().ring().kind == RingKind::Integers) return x % to.n_;
    return to.encode_poly(poly_rem(from.decode_poly(x), to.modulus_));
}

uint64_t crt_combine(const ResidueRing& target, const std::vector<const ResidueRing*>& parts,
                     const std::vector<uint64_t>& labels) {
    if (parts.size() != labels.size()) throw ValidationError("crt_combine: size mismatch");
    if (target.size() == 1) return 0;
    if (target.ring_spec().kind == RingKind::Integers) {
        BigInt mod_so_far = 1;
        BigInt acc = 0;
        for (size_t i = 0; i < parts.size(); ++i) {
            BigInt mi = norm(parts[i]->ideal());
            if (mi == 1) continue;
            // Solve acc' == acc (mod mod_so_far), acc' == labels[i] (mod mi).
            BigInt a = mod_so_far, b = mi, u0 = 1, u1 = 0;
            while (b != 0) {
                BigInt qq = a / b;
                BigInt t = a - qq * b; a = b; b = t;
                t = u0 - qq * u1; u0 = u1; u1 = t;
            }
            if (a != 1) throw ValidationError("crt_combine: moduli not coprime");
            BigInt diff = BigInt(labels[i]) - acc;
            BigInt k = (u0 * diff) % mi;
            if (k < 0) k += mi;
            BigInt m_new = mod_so_far * mi;
            acc = (acc + mod_so_far * k) % m_new;
            mod_so_far = m_new;
        }
        if (mod_so_far != norm(target.ideal()))
            throw ValidationError("crt_combine: moduli product mismatch");
        return acc.convert_to<uint64_t>();
    }
    const FqField& F = target.ring_spec().field();
    FqPoly acc = FqPoly::zero(F);
    FqPoly mod_so_far = FqPoly::one(F);
    for (size_t i = 0; i < parts.size(); ++i) {
        const FqPoly& mi = parts[i]->ideal().poly_gen();
        if (mi.degree() == 0) continue;
        auto x = poly_xgcd(mod_so_far, mi);
        if (!x.g.is_one()) throw ValidationError("crt_combine: moduli not coprime");
        FqPoly diff = parts[i]->decode_poly(labels[i]) - acc;
        FqPoly m_new = mod_so_far * mi;
        acc = poly_rem(acc + mod_so_far * poly_rem(x.u * diff, mi), m_new);
        mod_so_far = m_new;
    }
    if (!(mod_so_far.monic() == target.ideal().poly_gen()))
        throw ValidationError("crt_combine: moduli product mismatch");
    return target.encode_poly(acc);
}

}  // namespace elmod
