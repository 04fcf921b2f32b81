#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qhom/app.hpp"

namespace {

bool read_file(const std::string &path, std::string &out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qhom: exact homological checks for finite-dimensional quiver algebras and their extensions"};
    app.require_subcommand(1);

    qhom::RunOptions opt;
    std::size_t cap = 0, pmax = 0, hh = 0;
    std::string field, report_path;
    bool machine = false;

    auto common = [&](CLI::App *c) {
        c->add_option("--cap", cap, "resolution length bound");
        c->add_option("--pmax", pmax, "largest tensor power examined for nilpotency");
        c->add_option("--hh-range", hh, "Hochschild homology degrees 0..N");
        c->add_option("--field", field, "q or p:PRIME (overrides the document)");
        c->add_option("--report", report_path, "also write the report to this file");
        c->add_flag("--machine", machine, "key=value rendering");
    };

    std::string file, demo_name;
    auto *check = app.add_subcommand("check-extension", "verify the hypotheses for each 'check extension' block");
    check->add_option("FILE", file, "input document")->required();
    common(check);
    auto *inv = app.add_subcommand("invariants", "gldim, Gorenstein, HH and perpendicular checks");
    inv->add_option("FILE", file, "input document")->required();
    common(inv);
    auto *demo = app.add_subcommand("demo", "built-in regression run");
    demo->add_option("NAME", demo_name, "example-4-5")->required();
    common(demo);
    auto *suite = app.add_subcommand("random-suite", "randomized property battery");
    suite->add_option("--seed", opt.seed, "generator seed");
    suite->add_option("--count", opt.count, "number of instances");
    suite->add_option("--max-dim", opt.max_dim, "dimension bound for random factor algebras");
    common(suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : qhom::exit_input_error;
    }

    for (auto *c : {check, inv, demo, suite}) {
        if (c->count("--cap")) opt.cap = cap;
        if (c->count("--pmax")) opt.pmax = pmax;
        if (c->count("--hh-range")) opt.hh_range = hh;
    }
    if (!field.empty()) {
        opt.field = qhom::parse_field_flag(field);
        if (!opt.field) {
            std::cerr << "error: --field expects q or p:PRIME, got '" << field << "'\n";
            return qhom::exit_input_error;
        }
    }

    qhom::RunResult result;
    if (*check || *inv) {
        std::string text;
        if (!read_file(file, text)) {
            std::cerr << "error: cannot read " << file << "\n";
            return qhom::exit_input_error;
        }
        result = *check ? qhom::run_check_extension(text, opt) : qhom::run_invariants(text, opt);
    } else if (*demo) {
        result = qhom::run_demo(demo_name, opt);
    } else {
        result = qhom::run_random_suite(opt);
    }

    if (!result.diagnostics.empty()) std::cerr << result.diagnostics << "\n";
    const std::string rendered = result.report.render(machine);
    std::cout << rendered;
    if (!report_path.empty()) {
        std::ofstream out(report_path, std::ios::binary);
        if (!out || !(out << rendered)) {
            std::cerr << "error: cannot write " << report_path << "\n";
            return qhom::exit_input_error;
        }
    }
    return result.exit_code;
}
