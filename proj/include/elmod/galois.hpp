#pragma once

#include <map>
#include <string>

#include "elmod/goursat.hpp"

namespace elmod {

// The finite datum encoding the adelic image G = pi^{-1}(G(m)): base ring,
// rank, conductor m and the mod-m image as a matrix group.
struct GaloisImageSpec {
    RingSpec ring;
    int r = 2;
    Ideal m;
    MatGroup gm;  // enumerated on load
    std::string label;
    bool minimal_conductor = false;
};

struct DegreeReport {
    Ideal a;
    BigInt group_order, scalar_order, degree;
    BigRat ratio;  // degree / norm(a)^(r^2 - 1), in (0, 1]
    enum class Method { Fast, Brute } method = Method::Fast;
};

// Cached per-spec data: for every divisor g | m, the reduced image order and
// its scalar count.  Shared by the fast path and the scanners.
class ConductorTable {
public:
    explicit ConductorTable(const GaloisImageSpec& spec);
    struct Entry {
        BigInt order;
        BigInt scalars;
    };
    const Entry& at(const Ideal& g) const;

private:
    std::map<std::string, Entry> entries_;
};

// JSON spec files: {"label", "ring": {"kind": "Z"|"FqT", "q"?}, "r",
// "m": ideal-string, "generators": [[residue strings]], "order"? }.
GaloisImageSpec load_spec(const std::string& json_text, uint64_t cap = kDefaultCap);
GaloisImageSpec load_spec_file(const std::string& path, uint64_t cap = kDefaultCap);
std::string save_spec(const GaloisImageSpec& spec);

// Smallest m' | m with G(m) = pi^{-1}(G(m')) inside GL_r(A/m).
GaloisImageSpec conductor_reduce(const GaloisImageSpec& spec);

// The mod-a image G(a) = pi^{-1}(G(gcd(a, m))), fully enumerated.
MatGroup image_mod(const GaloisImageSpec& spec, const Ideal& a, uint64_t cap = kDefaultCap);

// Structured fast path: order bookkeeping through the conductor only.
DegreeReport j_degree(const GaloisImageSpec& spec, const Ideal& a);
DegreeReport j_degree(const GaloisImageSpec& spec, const Ideal& a, const ConductorTable& table);

// Oracle: enumerate G(a) literally (all matrices mod a with unit determinant
// whose reduction mod gcd(a, m) lies in G(gcd)), scan for scalars, divide.
DegreeReport j_degree_bruteforce(const GaloisImageSpec& spec, const Ideal& a,
                                 uint64_t cap = kDefaultCap);

struct VerifyCheck {
    std::string name;
    bool pass;
    std::string detail;
};
struct VerifyTranscript {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};

// Exact instance checks of the identity chain: conductor decomposition, CRT
// split, Goursat decomposition, scalar intersection, kernel containment,
// the order identities, and the telescoped degree against both paths.
VerifyTranscript goursat_verify(const GaloisImageSpec& spec, const Ideal& a,
                                uint64_t cap = kDefaultCap);

struct ScanResult {
    std::vector<DegreeReport> reports;  // ascending ideal order
    BigRat min_ratio;
    Ideal argmin;
};
ScanResult bound_scan(const GaloisImageSpec& spec, const BigInt& norm_bound);

// Truncated Euler-type product prod_{|p| <= bound} prod_{i=2..r} (1 - |p|^-i).
BigRat pgl_lower_bound_constant(int r, const RingSpec& ring, const BigInt& prime_norm_bound);

// Decimal rendering of an exact rational, truncated to the given digits.
std::string decimal_string(const BigRat& x, int digits);

}  // namespace elmod
