#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "elmod/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact degree computations for scalar-fixed subfields of division fields"};
    app.require_subcommand(1);

    elmod::RunConfig cfg;
    cfg.cap = elmod::default_cap();
    std::string output_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-o,--output", output_path, "Write output to a file instead of stdout");
        sub->add_option("--format", cfg.format, "Output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--cap", cfg.cap, "Enumeration cap (elements)");
        sub->add_option("--decimal-digits", cfg.decimal_digits,
                        "Also render ratios as truncated decimals");
    };

    auto* factor = app.add_subcommand("factor", "Factor an ideal; with --spec, also decompose "
                                                "relative to the conductor");
    factor->add_option("--ideal", cfg.ideal, "Ideal string, e.g. 720 or q=3;[1,0,1]")->required();
    factor->add_option("--spec", cfg.spec_path, "Spec JSON file");
    add_common(factor);

    auto* order = app.add_subcommand("order", "Unit/GL/PGL orders for (r, a)");
    order->add_option("--ideal", cfg.ideal, "Ideal string")->required();
    order->add_option("-r,--rank", cfg.r, "Rank");
    add_common(order);

    auto* degree = app.add_subcommand("degree", "Degree report for one ideal (fast path, plus "
                                                "brute-force oracle when within cap)");
    degree->add_option("--spec", cfg.spec_path, "Spec JSON file")->required();
    degree->add_option("--ideal", cfg.ideal, "Ideal string")->required();
    add_common(degree);

    auto* scan = app.add_subcommand("scan", "Degree table over all ideals up to a norm bound");
    scan->add_option("--spec", cfg.spec_path, "Spec JSON file")->required();
    scan->add_option("--norm-bound", cfg.norm_bound, "Scan all ideals of norm <= bound")
        ->required();
    add_common(scan);

    auto* verify = app.add_subcommand("verify", "Exact identity-chain verification at one ideal");
    verify->add_option("--spec", cfg.spec_path, "Spec JSON file")->required();
    verify->add_option("--ideal", cfg.ideal, "Ideal string")->required();
    add_common(verify);

    auto* gcheck = app.add_subcommand("goursat-check", "Seeded random Goursat property run");
    gcheck->add_option("--seed", cfg.seed, "RNG seed");
    gcheck->add_option("--trials", cfg.trials, "Number of random subgroups");
    add_common(gcheck);

    auto* constant = app.add_subcommand("constant", "Truncated lower-bound Euler product");
    constant->add_option("-r,--rank", cfg.r, "Rank");
    constant->add_option("-q", cfg.q, "Base ring: 0 for Z (default), else F_q[T]");
    constant->add_option("--norm-bound", cfg.norm_bound, "Include primes of norm <= bound")
        ->required();
    add_common(constant);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : elmod::kExitConfig;
    }

    cfg.command = app.get_subcommands().front()->get_name();

    if (!output_path.empty()) {
        std::ofstream out(output_path);
        if (!out) {
            std::cerr << "cannot open output file: " << output_path << "\n";
            return elmod::kExitConfig;
        }
        return elmod::run(cfg, out, std::cerr);
    }
    return elmod::run(cfg, std::cout, std::cerr);
}
