#pragma once

#include <ostream>
#include <string>

#include "elmod/galois.hpp"

namespace elmod {

// Exit codes for run(): 0 ok, 1 malformed config, 2 spec validation failure,
// 3 enumeration cap exceeded, 4 verification failure (an identity failed on
// an instance).
enum ExitCode {
    kExitOk = 0,
    kExitConfig = 1,
    kExitSpec = 2,
    kExitCap = 3,
    kExitVerify = 4,
};

struct RunConfig {
    std::string command;    // factor | order | degree | scan | verify | goursat-check | constant
    std::string spec_path;  // commands taking a spec
    std::string ideal;      // ideal string ("12" or "q=3;[1,0,1]")
    std::string norm_bound; // scan / constant bound (decimal)
    std::string format = "csv";  // csv | json
    int r = 2;                   // order / constant
    int q = 0;                   // constant: 0 = Z, else F_q[T]
    uint64_t cap = kDefaultCap;
    uint64_t seed = 1;     // goursat-check
    int trials = 200;      // goursat-check
    int decimal_digits = 0;  // extra approximate rendering of ratios; 0 = off
};

// Default cap: the PROJDEG_CAP environment variable when set, else kDefaultCap.
uint64_t default_cap();

// Dispatch one command; writes the artifact to out and diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Seeded Goursat property run: random subgroups of pairs of small groups,
// decompose-realize round trip, the order law, and the fibered-intersection
// equality for random (H1, H2).  Returns the number of failed trials.
int goursat_property_run(uint64_t seed, int trials, std::ostream& out);

}  // namespace elmod
