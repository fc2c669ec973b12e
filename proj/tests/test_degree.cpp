#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>

#include "elmod/errors.hpp"
#include "elmod/galois.hpp"

using namespace elmod;

namespace {

Ideal zi(long long n) { return Ideal(RingSpec::integers(), BigInt(n)); }

Ideal fqi(int q, std::vector<int> coeffs) {
    return Ideal(RingSpec::poly_ring(q), FqPoly(FqField::get(q), std::move(coeffs)));
}

GaloisImageSpec load_bundled(const std::string& name) {
    return load_spec_file(std::string(ELMOD_SPEC_DIR) + "/" + name + ".json");
}

// The full-image spec over Z (trivial conductor), built in place.
GaloisImageSpec full_z_spec() {
    GaloisImageSpec s{RingSpec::integers(), 2, zi(1),
                      MatGroup::trivial(std::make_shared<ResidueRing>(zi(1)), 2), "full", false};
    return s;
}

GaloisImageSpec identity_spec(const Ideal& m) {
    return {m.ring(), 2, m, MatGroup::trivial(std::make_shared<ResidueRing>(m), 2), "id", false};
}

// A spec with genuinely coupled prime components: inside GL2(Z/6), keep g
// with sign(g mod 2) = chi(det g mod 3), where sign is +1 on the order-3
// subgroup of GL2(Z/2) (= A3 under GL2(Z/2) = S3) and chi(1) = +1, chi(2) = -1.
// Both maps are surjective homomorphisms onto {+-1}, so the kept set is an
// index-2 subgroup (order 144) whose Goursat quotient at a = 12 is Z/2.
GaloisImageSpec coupled_spec() {
    auto R6 = std::make_shared<ResidueRing>(zi(6));
    ResidueRing R2(zi(2)), R3(zi(3));
    MatGroup gl6 = enumerate_gl(R6, 2);
    std::vector<Mat> kept;
    for (const Mat& g : *gl6.elements) {
        Mat g2 = mat_reduce(*R6, R2, g);
        Mat cube = mat_mul(R2, g2, mat_mul(R2, g2, g2));
        bool even = cube == Mat::identity(R2, 2);
        bool det_one = mat_det(R3, mat_reduce(*R6, R3, g)) == 1;
        if (even == det_one) kept.push_back(g);
    }
    REQUIRE(kept.size() == 144);
    MatGroup gm = closure(R6, 2, std::move(kept));
    REQUIRE(gm.order == 144);
    return {RingSpec::integers(), 2, zi(6), std::move(gm), "coupled", false};
}

}  // namespace

TEST_CASE("bundled specs load and round trip") {
    for (const char* name : {"full_gl2_Z", "level2_identity_Z", "det_square_Z", "full_gl2_F2T",
                             "full_gl2_F3T", "levelT_identity_F2T", "det_square_F3T"}) {
        GaloisImageSpec s = load_bundled(name);
        CHECK(s.r == 2);
        GaloisImageSpec back = load_spec(save_spec(s));
        CHECK(back.m == s.m);
        CHECK(back.gm.order == s.gm.order);
        CHECK(back.ring == s.ring);
    }
    CHECK(load_bundled("det_square_Z").gm.order == 144);
    CHECK(load_bundled("det_square_F3T").gm.order == 24);
}

TEST_CASE("spec validation on load") {
    CHECK_THROWS_AS(load_spec("{not json"), ParseError);
    CHECK_THROWS_AS(load_spec(R"({"ring":{"kind":"Z"},"r":2,"m":"2"})"), ParseError);  // no gens
    CHECK_THROWS_AS(load_spec(R"({"ring":{"kind":"Q"},"r":2,"m":"2","generators":[]})"),
                    ParseError);
    CHECK_THROWS_AS(load_spec(R"({"ring":{"kind":"Z"},"r":1,"m":"2","generators":[]})"),
                    ValidationError);
    // Non-invertible generator.
    CHECK_THROWS_AS(
        load_spec(R"({"ring":{"kind":"Z"},"r":2,"m":"4","generators":[["1","0","0","2"]]})"),
        ValidationError);
    // Declared order mismatch.
    CHECK_THROWS_AS(
        load_spec(R"({"ring":{"kind":"Z"},"r":2,"m":"2","generators":[],"order":"6"})"),
        ValidationError);
    CHECK_THROWS_AS(load_spec_file("/nonexistent/spec.json"), ParseError);
}

TEST_CASE("conductor_reduce") {
    // Preimage of {I mod 2} presented at level 4 reduces to level 2.
    GaloisImageSpec fat = identity_spec(zi(4));
    fat.gm = preimage_group(MatGroup::trivial(std::make_shared<ResidueRing>(zi(2)), 2), zi(4));
    GaloisImageSpec red = conductor_reduce(fat);
    CHECK(red.m == zi(2));
    CHECK(red.gm.order == 1);
    CHECK(red.minimal_conductor);

    // Full image presented at any level reduces to (1).
    GaloisImageSpec full6 = identity_spec(zi(6));
    full6.gm = enumerate_gl(std::make_shared<ResidueRing>(zi(6)), 2);
    CHECK(conductor_reduce(full6).m == zi(1));

    // Already minimal: unchanged.
    GaloisImageSpec lvl2 = identity_spec(zi(2));
    GaloisImageSpec red2 = conductor_reduce(lvl2);
    CHECK(red2.m == zi(2));
    CHECK(red2.gm.order == 1);

    CHECK(conductor_reduce(coupled_spec()).m == zi(6));
}

TEST_CASE("image_mod") {
    GaloisImageSpec full = full_z_spec();
    for (int n : {2, 3, 4, 6, 12}) CHECK(image_mod(full, zi(n)).order == gl_order(2, zi(n)));

    GaloisImageSpec lvl2 = identity_spec(zi(2));
    MatGroup g4 = image_mod(lvl2, zi(4));
    CHECK(g4.order == 16);
    CHECK(image_mod(lvl2, zi(3)).order == 48);
    CHECK(image_mod(lvl2, zi(12)).order == 768);
    CHECK(image_mod(lvl2, zi(1)).order == 1);
    CHECK_THROWS_AS(image_mod(lvl2, zi(12), 100), CapExceededError);
    CHECK_THROWS_AS(image_mod(lvl2, fqi(2, {0, 1})), ValidationError);

    // The group is a genuine group: spot-check closure under multiplication.
    for (const Mat& x : *g4.elements)
        for (const Mat& y : *g4.elements) CHECK(g4.contains(mat_mul(*g4.ring, x, y)));
}

TEST_CASE("j_degree on the full-image spec") {
    GaloisImageSpec full = full_z_spec();
    DegreeReport rep = j_degree(full, zi(12));
    CHECK(rep.degree == 1152);
    CHECK(rep.group_order == 4608);
    CHECK(rep.scalar_order == 4);
    CHECK(rep.ratio == BigRat(2, 3));
    CHECK(rep.method == DegreeReport::Method::Fast);

    CHECK(j_degree(full, zi(1)).degree == 1);
    CHECK(j_degree(full, zi(1)).ratio == 1);
}

TEST_CASE("j_degree on the level-2 identity spec") {
    GaloisImageSpec lvl2 = identity_spec(zi(2));
    DegreeReport rep = j_degree(lvl2, zi(4));
    CHECK(rep.group_order == 16);
    CHECK(rep.scalar_order == 2);  // {1, 3}
    CHECK(rep.degree == 8);
    CHECK(rep.ratio == BigRat(1, 8));

    // At a = 12: group (12/2)^4 * 1 adjusted for the coprime part
    // = 2^4 * GL2(Z/3) = 768; scalars 1 * phi(12)/phi(2) = 4; degree 192.
    rep = j_degree(lvl2, zi(12));
    CHECK(rep.group_order == 768);
    CHECK(rep.scalar_order == 4);
    CHECK(rep.degree == 192);
    CHECK(rep.ratio == BigRat(1, 9));
    DegreeReport brute = j_degree_bruteforce(lvl2, zi(12));
    CHECK(brute.group_order == rep.group_order);
    CHECK(brute.scalar_order == rep.scalar_order);
    CHECK(brute.degree == rep.degree);
    CHECK(brute.method == DegreeReport::Method::Brute);
}

TEST_CASE("brute-force oracle spot values") {
    GaloisImageSpec full = full_z_spec();
    CHECK(j_degree_bruteforce(full, zi(2)).degree == 6);
    CHECK(j_degree_bruteforce(full, zi(3)).degree == 24);
    CHECK(j_degree_bruteforce(full, zi(4)).degree == 48);

    GaloisImageSpec f2 = load_bundled("full_gl2_F2T");
    DegreeReport rep = j_degree_bruteforce(f2, fqi(2, {0, 0, 1}));
    CHECK(rep.degree == 48);
    CHECK(rep.group_order == 96);
    CHECK(rep.ratio == BigRat(3, 4));

    CHECK_THROWS_AS(j_degree_bruteforce(full, zi(1000)), CapExceededError);
}

TEST_CASE("oracle agreement across specs and rings") {
    std::vector<GaloisImageSpec> specs;
    specs.push_back(full_z_spec());
    specs.push_back(identity_spec(zi(2)));
    specs.push_back(load_bundled("det_square_Z"));
    specs.push_back(coupled_spec());
    specs.push_back(load_bundled("full_gl2_F2T"));
    specs.push_back(load_bundled("levelT_identity_F2T"));
    specs.push_back(load_bundled("det_square_F3T"));
    specs.push_back(load_bundled("full_gl2_F3T"));

    for (const GaloisImageSpec& spec : specs) {
        ConductorTable table(spec);
        BigInt bound = spec.ring.kind == RingKind::Integers ? 20 : 16;
        for (const Ideal& a : ideals_up_to_norm(spec.ring, bound)) {
            DegreeReport fast = j_degree(spec, a, table);
            DegreeReport brute = j_degree_bruteforce(spec, a);
            CHECK(fast.group_order == brute.group_order);
            CHECK(fast.scalar_order == brute.scalar_order);
            CHECK(fast.degree == brute.degree);
            CHECK(fast.ratio == brute.ratio);
            CHECK(fast.ratio <= 1);
            CHECK(fast.ratio > 0);
        }
    }
}

TEST_CASE("goursat_verify transcripts") {
    GaloisImageSpec lvl2 = identity_spec(zi(2));
    for (int a : {2, 4, 6, 8, 12, 24}) {
        VerifyTranscript t = goursat_verify(lvl2, zi(a));
        CHECK(t.checks.size() == 8);
        CHECK(t.all_pass());
    }

    GaloisImageSpec det_sq = load_bundled("det_square_Z");
    for (int a : {12, 20, 30}) CHECK(goursat_verify(det_sq, zi(a)).all_pass());

    // Trivial conductor: the chain degenerates but still holds.
    CHECK(goursat_verify(full_z_spec(), zi(6)).all_pass());

    // Coupled spec at a = 12: nontrivial Goursat quotient (|Gamma| = 2).
    VerifyTranscript t = goursat_verify(coupled_spec(), zi(12));
    CHECK(t.all_pass());
    bool saw_gamma_2 = false;
    for (const auto& c : t.checks)
        if (c.name == "goursat_decompose" && c.detail.find("|Gamma|=2") != std::string::npos)
            saw_gamma_2 = true;
    CHECK(saw_gamma_2);

    GaloisImageSpec f2id = load_bundled("levelT_identity_F2T");
    CHECK(goursat_verify(f2id, fqi(2, {0, 0, 0, 1})).all_pass());  // T^3
    CHECK(goursat_verify(f2id, fqi(2, {0, 1, 1})).all_pass());     // T(T+1)
}

TEST_CASE("bound_scan") {
    GaloisImageSpec full = full_z_spec();
    ScanResult res = bound_scan(full, 12);
    CHECK(res.reports.size() == 12);
    CHECK(res.min_ratio == BigRat(2, 3));
    CHECK(res.argmin == zi(6));
    for (const auto& rep : res.reports) {
        CHECK(rep.ratio <= 1);
        CHECK(rep.degree == pgl_order(2, rep.a));
    }

    ScanResult one = bound_scan(full, 1);
    CHECK(one.reports.size() == 1);
    CHECK(one.min_ratio == 1);
    CHECK(one.reports[0].degree == 1);

    // Deterministic ordering: ascending canonical ideals.
    for (size_t i = 1; i < res.reports.size(); ++i)
        CHECK(res.reports[i - 1].a < res.reports[i].a);

    GaloisImageSpec f2 = load_bundled("full_gl2_F2T");
    ScanResult fres = bound_scan(f2, 16);
    for (const auto& rep : fres.reports) CHECK(rep.ratio <= 1);
    CHECK(fres.min_ratio == BigRat(135, 256));
    CHECK(fres.argmin == fqi(2, {0, 1, 0, 0, 1}));  // T(T+1)(T^2+T+1)
}

TEST_CASE("pgl_lower_bound_constant") {
    CHECK(pgl_lower_bound_constant(2, RingSpec::integers(), 3) == BigRat(2, 3));
    // Independent oracle: direct product over a hand-rolled prime list.
    BigRat expect(1);
    for (int p = 2; p <= 200; ++p) {
        bool prime = p >= 2;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (prime) expect *= BigRat(BigInt(p) * p - 1, BigInt(p) * p);
    }
    CHECK(pgl_lower_bound_constant(2, RingSpec::integers(), 200) == expect);

    // Monotone decreasing in the bound.
    CHECK(pgl_lower_bound_constant(2, RingSpec::integers(), 100) >
          pgl_lower_bound_constant(2, RingSpec::integers(), 101));

    // F_2[T], bound 4: primes T, T+1 (norm 2) and T^2+T+1 (norm 4).
    CHECK(pgl_lower_bound_constant(2, RingSpec::poly_ring(2), 4) ==
          BigRat(3, 4) * BigRat(3, 4) * BigRat(15, 16));

    // r = 3 includes the cubic factors.
    CHECK(pgl_lower_bound_constant(3, RingSpec::integers(), 2) == BigRat(3, 4) * BigRat(7, 8));
}

TEST_CASE("decimal_string") {
    CHECK(decimal_string(BigRat(1, 3), 5) == "0.33333");
    CHECK(decimal_string(BigRat(2), 0) == "2");
    CHECK(decimal_string(BigRat(355, 113), 5) == "3.14159");
    CHECK(decimal_string(BigRat(-1, 8), 3) == "-0.125");
    CHECK(decimal_string(BigRat(1, 2), 3) == "0.500");
}

TEST_CASE("conductor table rejects non-divisors") {
    GaloisImageSpec lvl2 = identity_spec(zi(2));
    ConductorTable table(lvl2);
    CHECK_THROWS_AS(table.at(zi(3)), ValidationError);
    CHECK(table.at(zi(2)).order == 1);
    CHECK(table.at(zi(1)).order == 1);
}
