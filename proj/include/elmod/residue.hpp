#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "elmod/ideal.hpp"

namespace elmod {

// The finite quotient A/a with element arithmetic on canonical labels in
// [0, norm(a)).  For Z/n the label is the residue itself; for F_q[T]/(f) it
// encodes the coefficient vector of the canonical representative base q.
// The unit ideal gives the zero ring: one element, which is a unit.
class ResidueRing {
public:
    explicit ResidueRing(Ideal ideal);

    const Ideal& ideal() const { return ideal_; }
    const RingSpec& ring_spec() const { return ideal_.ring(); }
    uint64_t size() const { return size_; }
    bool is_zero_ring() const { return size_ == 1; }

    uint64_t zero() const { return 0; }
    uint64_t one() const { return size_ == 1 ? 0 : 1; }

    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    bool is_unit(uint64_t a) const;
    uint64_t inv(uint64_t a) const;  // ValidationError on a non-unit

    std::vector<uint64_t> units() const;  // ascending labels

    // Conversions with the base ring.
    FqPoly decode_poly(uint64_t label) const;   // PolyRing only
    uint64_t encode_poly(const FqPoly& p) const;
    uint64_t from_int(const BigInt& n) const;   // Integers only (mod n)

    std::string to_string(uint64_t label) const;           // "5" or "[1,0,2]"
    uint64_t parse(const std::string& s) const;

    // Reduction A/a -> A/b along b | a.
    static uint64_t reduce_label(const ResidueRing& from, const ResidueRing& to, uint64_t x);

private:
    Ideal ideal_;
    uint64_t size_;
    uint64_t n_ = 0;  // Integers case: the modulus (0 for zero ring semantics when size_==1)
    FqPoly modulus_;  // PolyRing case
    // Small-ring lookup tables.
    bool tabled_ = false;
    std::vector<uint32_t> mul_table_, add_table_;
    std::vector<uint32_t> inv_table_;  // 0 where non-unit
    std::vector<uint8_t> unit_table_;

    uint64_t mul_slow(uint64_t a, uint64_t b) const;
    uint64_t add_slow(uint64_t a, uint64_t b) const;
};

// CRT recombination: moduli must be pairwise coprime with product equal to
// target.ideal().  Labels are per-component residues.
uint64_t crt_combine(const ResidueRing& target, const std::vector<const ResidueRing*>& parts,
                     const std::vector<uint64_t>& labels);

}  // namespace elmod
