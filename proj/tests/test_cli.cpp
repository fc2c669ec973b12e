#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "elmod/cli.hpp"
#include "json.hpp"

using namespace elmod;

namespace {

std::string spec_path(const std::string& name) {
    return std::string(ELMOD_SPEC_DIR) + "/" + name + ".json";
}

struct Result {
    int code;
    std::string out, err;
};

Result run_cfg(const RunConfig& cfg) {
    std::ostringstream out, err;
    int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/") + name;
    std::ofstream f(path);
    f << content;
    return path;
}

// Run the installed binary, capture stdout and exit code.
Result run_binary(const std::string& args) {
    std::string out_file = "/tmp/projdeg_test_out.txt";
    std::string cmd = std::string(ELMOD_PROJDEG_BIN) + " " + args + " > " + out_file + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream f(out_file);
    std::ostringstream os;
    os << f.rdbuf();
    return {WEXITSTATUS(status), os.str(), ""};
}

}  // namespace

TEST_CASE("degree command: csv schema and oracle rows") {
    RunConfig cfg;
    cfg.command = "degree";
    cfg.spec_path = spec_path("full_gl2_Z");
    cfg.ideal = "12";
    Result r = run_cfg(cfg);
    CHECK(r.code == kExitOk);
    CHECK(r.out ==
          "a,norm,group_order,scalar_order,degree,ratio_num,ratio_den,method\n"
          "12,12,4608,4,1152,2,3,fast\n"
          "12,12,4608,4,1152,2,3,brute\n");

    // Determinism: byte-identical on repeat.
    CHECK(run_cfg(cfg).out == r.out);

    cfg.decimal_digits = 4;
    CHECK(run_cfg(cfg).out.find("2,3,fast,0.6666") != std::string::npos);

    cfg.decimal_digits = 0;
    cfg.format = "json";
    Result rj = run_cfg(cfg);
    auto j = nlohmann::json::parse(rj.out);
    REQUIRE(j.is_array());
    CHECK(j[0]["degree"] == "1152");
    CHECK(j[1]["method"] == "brute");
}

TEST_CASE("scan command") {
    RunConfig cfg;
    cfg.command = "scan";
    cfg.spec_path = spec_path("full_gl2_Z");
    cfg.norm_bound = "1";
    Result r = run_cfg(cfg);
    CHECK(r.code == kExitOk);
    CHECK(r.out ==
          "a,norm,group_order,scalar_order,degree,ratio_num,ratio_den,method\n"
          "1,1,1,1,1,1,1,fast\n"
          "# min_ratio=1/1 at a=1\n");

    cfg.norm_bound = "12";
    r = run_cfg(cfg);
    CHECK(r.out.find("# min_ratio=2/3 at a=6") != std::string::npos);

    cfg.format = "json";
    auto j = nlohmann::json::parse(run_cfg(cfg).out);
    CHECK(j["argmin"] == "6");
    CHECK(j["reports"].size() == 12);
}

TEST_CASE("verify command") {
    RunConfig cfg;
    cfg.command = "verify";
    cfg.spec_path = spec_path("level2_identity_Z");
    cfg.ideal = "12";
    Result r = run_cfg(cfg);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("PASS degree_telescoping degree=192") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    cfg.format = "json";
    auto j = nlohmann::json::parse(run_cfg(cfg).out);
    CHECK(j["all_pass"] == true);
    CHECK(j["checks"].size() == 8);
}

TEST_CASE("factor and order commands") {
    RunConfig cfg;
    cfg.command = "factor";
    cfg.ideal = "720";
    CHECK(run_cfg(cfg).out == "prime,exponent\n2,4\n3,2\n5,1\n");

    cfg.spec_path = spec_path("det_square_Z");
    CHECK(run_cfg(cfg).out.find("# decomposition: a11=144 a12=1 a2=5") != std::string::npos);

    RunConfig oc;
    oc.command = "order";
    oc.ideal = "q=3;[1,0,1]";
    oc.r = 2;
    Result r = run_cfg(oc);
    CHECK(r.out ==
          "a,norm,r,units_order,gl_order,pgl_order\n"
          "q=3;[1,0,1],9,2,8,5760,720\n");
}

TEST_CASE("constant command") {
    RunConfig cfg;
    cfg.command = "constant";
    cfg.r = 2;
    cfg.norm_bound = "3";
    CHECK(run_cfg(cfg).out == "r,ring,prime_norm_bound,num,den\n2,Z,3,2,3\n");

    cfg.q = 2;
    cfg.norm_bound = "4";
    cfg.decimal_digits = 6;
    CHECK(run_cfg(cfg).out.find("135,256,0.527343") != std::string::npos);
}

TEST_CASE("goursat-check command") {
    RunConfig cfg;
    cfg.command = "goursat-check";
    cfg.seed = 99;
    cfg.trials = 25;
    Result r = run_cfg(cfg);
    CHECK(r.code == kExitOk);
    CHECK(r.out == "# goursat-check trials=25 failures=0\n");
}

TEST_CASE("exit codes") {
    RunConfig cfg;
    cfg.command = "frobnicate";
    CHECK(run_cfg(cfg).code == kExitConfig);

    cfg.command = "degree";  // missing required arguments
    CHECK(run_cfg(cfg).code == kExitConfig);

    cfg.spec_path = spec_path("full_gl2_Z");
    cfg.ideal = "not-an-ideal";
    CHECK(run_cfg(cfg).code == kExitConfig);

    cfg.ideal = "12";
    cfg.format = "yaml";
    CHECK(run_cfg(cfg).code == kExitConfig);
    cfg.format = "csv";

    // Spec validation failure: declared order is wrong.
    std::string bad = write_temp(
        "bad_spec.json",
        R"({"label":"bad","ring":{"kind":"Z"},"r":2,"m":"2","generators":[],"order":"6"})");
    cfg.spec_path = bad;
    CHECK(run_cfg(cfg).code == kExitSpec);

    // Unparseable spec file.
    cfg.spec_path = write_temp("broken_spec.json", "{");
    CHECK(run_cfg(cfg).code == kExitSpec);

    // Cap exceeded during verification enumeration.
    RunConfig vc;
    vc.command = "verify";
    vc.spec_path = spec_path("level2_identity_Z");
    vc.ideal = "12";
    vc.cap = 10;
    CHECK(run_cfg(vc).code == kExitCap);
}

TEST_CASE("default cap honors the environment variable") {
    unsetenv("PROJDEG_CAP");
    CHECK(default_cap() == kDefaultCap);
    setenv("PROJDEG_CAP", "12345", 1);
    CHECK(default_cap() == 12345);
    setenv("PROJDEG_CAP", "bogus", 1);
    CHECK(default_cap() == kDefaultCap);
    unsetenv("PROJDEG_CAP");
}

TEST_CASE("spec file round trip through save_spec") {
    GaloisImageSpec s = load_spec_file(spec_path("det_square_F3T"));
    std::string path = write_temp("roundtrip_spec.json", save_spec(s));
    GaloisImageSpec back = load_spec_file(path);
    CHECK(back.m == s.m);
    CHECK(back.r == s.r);
    CHECK(back.ring == s.ring);
    CHECK(back.gm.order == s.gm.order);
    REQUIRE(back.gm.elements.has_value());
    CHECK(*back.gm.elements == *s.gm.elements);
}

TEST_CASE("binary end to end") {
    Result r = run_binary("degree --spec " + spec_path("full_gl2_Z") + " --ideal 12");
    CHECK(r.code == 0);
    CHECK(r.out.find("12,12,4608,4,1152,2,3,fast") != std::string::npos);

    // Same command twice: byte-identical output.
    Result r2 = run_binary("degree --spec " + spec_path("full_gl2_Z") + " --ideal 12");
    CHECK(r2.out == r.out);

    CHECK(run_binary("verify --spec " + spec_path("det_square_Z") + " --ideal 30").code == 0);
    CHECK(run_binary("degree --ideal 12").code == kExitConfig);  // missing --spec
    CHECK(run_binary("constant --norm-bound 3").out.find("2,3") != std::string::npos);

    // --output writes the artifact to a file.
    Result ro = run_binary("order --ideal 12 -o /tmp/projdeg_order.csv");
    CHECK(ro.code == 0);
    std::ifstream f("/tmp/projdeg_order.csv");
    std::ostringstream os;
    os << f.rdbuf();
    CHECK(os.str() == "a,norm,r,units_order,gl_order,pgl_order\n12,12,2,4,4608,1152\n");
}
