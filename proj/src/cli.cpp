#include "elmod/cli.hpp"

#include <cstdlib>
#include <vector>

#include "elmod/errors.hpp"
#include "json.hpp"

namespace elmod {

namespace {

using nlohmann::json;

struct SplitMix64 {
    uint64_t s;
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return next() % n; }
};

std::string ratio_columns(const BigRat& ratio) {
    return numerator(ratio).str() + "," + denominator(ratio).str();
}

void emit_report_csv(std::ostream& out, const DegreeReport& rep, int digits) {
    out << rep.a.to_string() << "," << norm(rep.a).str() << "," << rep.group_order.str() << ","
        << rep.scalar_order.str() << "," << rep.degree.str() << "," << ratio_columns(rep.ratio)
        << "," << (rep.method == DegreeReport::Method::Fast ? "fast" : "brute");
    if (digits > 0) out << "," << decimal_string(rep.ratio, digits);
    out << "\n";
}

void emit_report_header(std::ostream& out, int digits) {
    out << "a,norm,group_order,scalar_order,degree,ratio_num,ratio_den,method";
    if (digits > 0) out << ",ratio_decimal";
    out << "\n";
}

json report_json(const DegreeReport& rep, int digits) {
    json j{{"a", rep.a.to_string()},
           {"norm", norm(rep.a).str()},
           {"group_order", rep.group_order.str()},
           {"scalar_order", rep.scalar_order.str()},
           {"degree", rep.degree.str()},
           {"ratio_num", numerator(rep.ratio).str()},
           {"ratio_den", denominator(rep.ratio).str()},
           {"method", rep.method == DegreeReport::Method::Fast ? "fast" : "brute"}};
    if (digits > 0) j["ratio_decimal"] = decimal_string(rep.ratio, digits);
    return j;
}

int cmd_factor(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.ideal.empty()) {
        err << "factor: --ideal required\n";
        return kExitConfig;
    }
    Ideal a = parse_ideal(c.ideal);
    auto factors = factor(a);
    std::optional<IdealDecomposition> dec;
    if (!c.spec_path.empty()) {
        GaloisImageSpec spec = load_spec_file(c.spec_path, c.cap);
        if (spec.ring != a.ring()) {
            err << "factor: ideal ring does not match spec ring\n";
            return kExitConfig;
        }
        dec = decompose(a, spec.m);
    }
    if (c.format == "json") {
        json j{{"ideal", a.to_string()}, {"norm", norm(a).str()}};
        json fs = json::array();
        for (auto& [p, e] : factors) fs.push_back({{"prime", p.to_string()}, {"exponent", e}});
        j["factors"] = fs;
        if (dec)
            j["decomposition"] = {{"a11", dec->a11.to_string()},
                                  {"a12", dec->a12.to_string()},
                                  {"a2", dec->a2.to_string()}};
        out << j.dump(2) << "\n";
    } else {
        out << "prime,exponent\n";
        for (auto& [p, e] : factors) out << p.to_string() << "," << e << "\n";
        if (dec)
            out << "# decomposition: a11=" << dec->a11.to_string()
                << " a12=" << dec->a12.to_string() << " a2=" << dec->a2.to_string() << "\n";
    }
    return kExitOk;
}

int cmd_order(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.ideal.empty()) {
        err << "order: --ideal required\n";
        return kExitConfig;
    }
    if (c.r < 1) {
        err << "order: --rank must be >= 1\n";
        return kExitConfig;
    }
    Ideal a = parse_ideal(c.ideal);
    BigInt u = units_order(a), g = gl_order(c.r, a), p = pgl_order(c.r, a);
    if (c.format == "json") {
        out << json{{"a", a.to_string()},
                    {"norm", norm(a).str()},
                    {"r", c.r},
                    {"units_order", u.str()},
                    {"gl_order", g.str()},
                    {"pgl_order", p.str()}}
                   .dump(2)
            << "\n";
    } else {
        out << "a,norm,r,units_order,gl_order,pgl_order\n";
        out << a.to_string() << "," << norm(a).str() << "," << c.r << "," << u.str() << ","
            << g.str() << "," << p.str() << "\n";
    }
    return kExitOk;
}

int cmd_degree(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.spec_path.empty() || c.ideal.empty()) {
        err << "degree: --spec and --ideal required\n";
        return kExitConfig;
    }
    GaloisImageSpec spec = load_spec_file(c.spec_path, c.cap);
    Ideal a = parse_ideal(c.ideal, spec.ring);
    DegreeReport fast = j_degree(spec, a);
    std::optional<DegreeReport> brute;
    try {
        brute = j_degree_bruteforce(spec, a, c.cap);
    } catch (const CapExceededError&) {
        // Oracle out of reach; the fast path stands alone.
    }
    if (brute && (brute->group_order != fast.group_order ||
                  brute->scalar_order != fast.scalar_order || brute->degree != fast.degree)) {
        err << "degree: fast path disagrees with brute-force oracle at a = " << a.to_string()
            << "\n";
        return kExitVerify;
    }
    if (c.format == "json") {
        json j = json::array();
        j.push_back(report_json(fast, c.decimal_digits));
        if (brute) j.push_back(report_json(*brute, c.decimal_digits));
        out << j.dump(2) << "\n";
    } else {
        emit_report_header(out, c.decimal_digits);
        emit_report_csv(out, fast, c.decimal_digits);
        if (brute) emit_report_csv(out, *brute, c.decimal_digits);
    }
    return kExitOk;
}

int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.spec_path.empty() || c.norm_bound.empty()) {
        err << "scan: --spec and --norm-bound required\n";
        return kExitConfig;
    }
    GaloisImageSpec spec = load_spec_file(c.spec_path, c.cap);
    BigInt bound(c.norm_bound);
    if (bound < 1) {
        err << "scan: --norm-bound must be >= 1\n";
        return kExitConfig;
    }
    ScanResult res = bound_scan(spec, bound);
    if (c.format == "json") {
        json j;
        json rows = json::array();
        for (const auto& rep : res.reports) rows.push_back(report_json(rep, c.decimal_digits));
        j["reports"] = rows;
        j["min_ratio_num"] = numerator(res.min_ratio).str();
        j["min_ratio_den"] = denominator(res.min_ratio).str();
        j["argmin"] = res.argmin.to_string();
        if (c.decimal_digits > 0)
            j["min_ratio_decimal"] = decimal_string(res.min_ratio, c.decimal_digits);
        out << j.dump(2) << "\n";
    } else {
        emit_report_header(out, c.decimal_digits);
        for (const auto& rep : res.reports) emit_report_csv(out, rep, c.decimal_digits);
        out << "# min_ratio=" << numerator(res.min_ratio).str() << "/"
            << denominator(res.min_ratio).str() << " at a=" << res.argmin.to_string();
        if (c.decimal_digits > 0)
            out << " (" << decimal_string(res.min_ratio, c.decimal_digits) << ")";
        out << "\n";
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.spec_path.empty() || c.ideal.empty()) {
        err << "verify: --spec and --ideal required\n";
        return kExitConfig;
    }
    GaloisImageSpec spec = load_spec_file(c.spec_path, c.cap);
    Ideal a = parse_ideal(c.ideal, spec.ring);
    VerifyTranscript t = goursat_verify(spec, a, c.cap);
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& ch : t.checks)
            rows.push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
        out << json{{"a", a.to_string()}, {"checks", rows}, {"all_pass", t.all_pass()}}.dump(2)
            << "\n";
    } else {
        for (const auto& ch : t.checks)
            out << (ch.pass ? "PASS" : "FAIL") << " " << ch.name
                << (ch.detail.empty() ? "" : " " + ch.detail) << "\n";
        out << (t.all_pass() ? "# all identities hold" : "# verification failed") << " at a="
            << a.to_string() << "\n";
    }
    return t.all_pass() ? kExitOk : kExitVerify;
}

int cmd_constant(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.norm_bound.empty()) {
        err << "constant: --norm-bound required\n";
        return kExitConfig;
    }
    if (c.r < 2) {
        err << "constant: --rank must be >= 2\n";
        return kExitConfig;
    }
    RingSpec ring = c.q == 0 ? RingSpec::integers() : RingSpec::poly_ring(c.q);
    BigRat v = pgl_lower_bound_constant(c.r, ring, BigInt(c.norm_bound));
    if (c.format == "json") {
        json j{{"r", c.r},
               {"ring", ring.to_string()},
               {"prime_norm_bound", c.norm_bound},
               {"num", numerator(v).str()},
               {"den", denominator(v).str()}};
        if (c.decimal_digits > 0) j["decimal"] = decimal_string(v, c.decimal_digits);
        out << j.dump(2) << "\n";
    } else {
        out << "r,ring,prime_norm_bound,num,den";
        if (c.decimal_digits > 0) out << ",decimal";
        out << "\n";
        out << c.r << "," << ring.to_string() << "," << c.norm_bound << ","
            << numerator(v).str() << "," << denominator(v).str();
        if (c.decimal_digits > 0) out << "," << decimal_string(v, c.decimal_digits);
        out << "\n";
    }
    return kExitOk;
}

}  // namespace

uint64_t default_cap() {
    if (const char* env = std::getenv("PROJDEG_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultCap;
}

int goursat_property_run(uint64_t seed, int trials, std::ostream& out) {
    // Pool of small ambient groups; rings are kept alive alongside the
    // labeled unit groups built over them.
    struct PoolEntry {
        std::string name;
        LabeledGroup group;
        std::shared_ptr<ResidueRing> ring;  // unit groups only
    };
    std::vector<PoolEntry> pool;
    for (int n : {2, 3}) {
        auto ring = std::make_shared<ResidueRing>(Ideal(RingSpec::integers(), n));
        MatGroup gl = enumerate_gl(ring, 2);
        pool.push_back({"GL2(Z/" + std::to_string(n) + ")", label_matgroup(gl).group, nullptr});
    }
    for (int n : {5, 7, 8, 9}) {
        auto ring = std::make_shared<ResidueRing>(Ideal(RingSpec::integers(), n));
        pool.push_back({"(Z/" + std::to_string(n) + ")^x", label_unit_group(*ring), ring});
    }

    SplitMix64 rng{seed};
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        const PoolEntry& p1 = pool[rng.below(pool.size())];
        const PoolEntry& p2 = pool[rng.below(pool.size())];
        PairVec seed_pairs;
        int ngens = 1 + static_cast<int>(rng.below(3));
        for (int k = 0; k < ngens; ++k)
            seed_pairs.emplace_back(static_cast<int>(rng.below(p1.group.n)),
                                    static_cast<int>(rng.below(p2.group.n)));
        PairVec G = close_pairs(p1.group, p2.group, seed_pairs);
        std::vector<int> g1 = project1(G), g2 = project2(G);
        bool ok = true;
        std::string why;
        try {
            FiberedProduct fp = goursat_decompose(p1.group, p2.group, G, g1, g2);
            // goursat_decompose certifies realize(fp) == G and the order law
            // internally; exercise the subgroup intersection three times.
            for (int k = 0; k < 3; ++k) {
                std::vector<int> h1 = close_subset(
                    p1.group, {g1[rng.below(g1.size())], g1[rng.below(g1.size())]});
                std::vector<int> h2 = close_subset(
                    p2.group, {g2[rng.below(g2.size())], g2[rng.below(g2.size())]});
                fibered_intersect(h1, h2, fp, p1.group, p2.group);
            }
        } catch (const ValidationError& e) {
            ok = false;
            why = e.what();
        }
        if (!ok) {
            ++failures;
            out << "FAIL trial=" << t << " ambient=" << p1.name << "x" << p2.name << " |G|="
                << G.size() << " " << why << "\n";
        }
    }
    out << "# goursat-check trials=" << trials << " failures=" << failures << "\n";
    return failures;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.format != "csv" && config.format != "json") {
            err << "unknown format: " << config.format << "\n";
            return kExitConfig;
        }
        if (config.command == "factor") return cmd_factor(config, out, err);
        if (config.command == "order") return cmd_order(config, out, err);
        if (config.command == "degree") return cmd_degree(config, out, err);
        if (config.command == "scan") return cmd_scan(config, out, err);
        if (config.command == "verify") return cmd_verify(config, out, err);
        if (config.command == "constant") return cmd_constant(config, out, err);
        if (config.command == "goursat-check") {
            int failures = goursat_property_run(config.seed, config.trials, out);
            return failures == 0 ? kExitOk : kExitVerify;
        }
        err << "unknown command: " << config.command << "\n";
        return kExitConfig;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        // Spec files that fail to parse are spec errors; bad ideal strings
        // and malformed numbers are config errors.
        return std::string(e.what()).rfind("spec:", 0) == 0 ? kExitSpec : kExitConfig;
    } catch (const CapExceededError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCap;
    } catch (const FactorBudgetError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return std::string(e.what()).rfind("spec:", 0) == 0 ? kExitSpec : kExitVerify;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace elmod
