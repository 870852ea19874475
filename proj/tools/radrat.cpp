// radrat: command-line front end.
//
// Exit codes: 0 success, 1 usage or contract violation, 2 parse/domain error,
// 3 resource cap reached, 4 verification failure or counterexample.

#include "radrat/radrat.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace radrat;

enum Exit { ok = 0, usage = 1, parse = 2, resource = 3, counterexample = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

// Flag value if given, else the environment variable, else the default.
template <class T>
void apply_cap(T& target, const std::optional<std::uint64_t>& flag, const char* env, std::uint64_t minimum,
               const char* what) {
    std::optional<std::uint64_t> value = flag;
    if (!value) {
        if (const char* s = std::getenv(env); s && *s) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(s, &end, 10);
            if (*end != '\0' || s[0] == '-') throw UsageError(std::string(env) + " is not a positive integer");
            value = v;
        }
    }
    if (!value) return;
    if (*value < minimum || *value > std::numeric_limits<T>::max())
        throw UsageError(std::string(what) + " must be in [" + std::to_string(minimum) + ", " +
                         std::to_string(std::numeric_limits<T>::max()) + "]");
    target = static_cast<T>(*value);
}

Box parse_box(const std::string& spec, std::size_t n) {
    std::vector<std::pair<long, long>> bounds;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) throw UsageError("box bound '" + part + "' is not lo:hi");
        try {
            std::size_t used = 0;
            const long lo = std::stol(part.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument("lo");
            const std::string hi_text = part.substr(colon + 1);
            const long hi = std::stol(hi_text, &used);
            if (used != hi_text.size()) throw std::invalid_argument("hi");
            if (lo > hi) throw UsageError("box bound '" + part + "' has lo > hi");
            bounds.emplace_back(lo, hi);
        } catch (const std::logic_error&) {
            throw UsageError("box bound '" + part + "' is not lo:hi");
        }
    }
    if (bounds.size() == 1) bounds.resize(n, bounds.front());
    if (bounds.size() != n)
        throw UsageError("box gives " + std::to_string(bounds.size()) + " bounds for " + std::to_string(n) +
                         " variables");
    return {bounds};
}

std::string point_text(const IntPoint& x) {
    std::string s = "(";
    for (std::size_t j = 0; j < x.size(); ++j) s += (j ? ", " : "") + std::to_string(x[j]);
    return s + ")";
}

std::string outcome_text(const Model& m, const LpOutcome& o) {
    std::ostringstream os;
    auto list = [&](const char* label, const std::vector<RadicalNumber>& xs, bool rows) {
        os << label << ":";
        for (std::size_t k = 0; k < xs.size(); ++k)
            os << (k ? ", " : " ") << (rows ? m.constraints[k].name : m.variables[k].name) << " = " << xs[k];
        os << "\n";
    };
    os << "status: " << status_name(o) << "\n";
    if (const auto* opt = std::get_if<LpOptimal>(&o)) {
        os << "value: " << opt->value << "\n";
        list("point", opt->point, false);
        list("duals", opt->duals, true);
    } else if (const auto* unb = std::get_if<LpUnbounded>(&o)) {
        list("point", unb->point, false);
        list("ray", unb->ray, false);
    } else {
        const auto& inf = std::get<LpInfeasible>(o);
        os << "phase1 value: " << inf.phase1_value << "\n";
        list("farkas", inf.farkas, true);
    }
    os << "certificate: " << (verify_outcome(m, o) ? "verified" : "FAILED") << "\n";
    return os.str();
}

int run(int argc, char** argv) {
    CLI::App app{"Rationalize integer programs with radical coefficients", "radrat"};
    app.require_subcommand(1);
    app.fallthrough();
    std::optional<std::uint64_t> dim_cap, prec_cap, enum_cap;
    app.add_option("--dim-cap", dim_cap, "Largest radical basis dimension (env RR_DIM_CAP)");
    app.add_option("--prec-cap", prec_cap, "Precision cap in bits for sign decisions (env RR_PREC_CAP)");
    app.add_option("--enum-cap", enum_cap, "Largest box volume to enumerate (env RR_ENUM_CAP)");

    std::string expr_text, model_path, out_path, report_path, box_spec, against_path, field = "auto";
    bool relaxation = false;
    unsigned precision = 15;
    std::uint64_t seed = 1;

    auto* canon = app.add_subcommand("canon", "Print the canonical form of a radical expression");
    canon->add_option("expr", expr_text, "Expression, e.g. \"root(6,48)\"")->required();

    auto* rationalize = app.add_subcommand("rationalize", "Write the equivalent rational model");
    rationalize->add_option("model", model_path, "Model file, or - for stdin")->required();
    rationalize->add_option("-o,--output", out_path, "Output model file (default stdout)");
    rationalize->add_option("--report", report_path, "Write the JSON transformation report here");

    auto* solve = app.add_subcommand("solve", "Solve the LP relaxation exactly");
    solve->add_option("model", model_path, "Model file, or - for stdin")->required();
    solve->add_flag("--relaxation", relaxation, "Solve the relaxation of the model as given (no rationalization)");
    solve->add_option("--field", field, "auto, rational or radical")
        ->check(CLI::IsMember({"auto", "rational", "radical"}));
    solve->add_option("--report", report_path, "Write the JSON outcome here");

    auto* verify = app.add_subcommand("verify", "Enumerate a box and check equivalence with the rationalized model");
    verify->add_option("model", model_path, "Model file, or - for stdin")->required();
    verify->add_option("--box", box_spec, "lo:hi for every variable, or lo:hi,lo:hi,... per variable")->required();
    verify->add_option("--against", against_path, "Compare with this model instead of rationalizing");
    verify->add_option("--report", report_path, "Write the JSON result here");

    auto* export_lp_cmd = app.add_subcommand("export-lp", "Write CPLEX LP format");
    export_lp_cmd->add_option("model", model_path, "Model file, or - for stdin")->required();
    export_lp_cmd->add_option("--precision", precision, "Significant digits for inexact coefficients")
        ->check(CLI::Range(1u, 1000u));
    export_lp_cmd->add_option("-o,--output", out_path, "Output file (default stdout)");

    auto* generate = app.add_subcommand("generate", "Print a seeded random radical model");
    generate->add_option("--seed", seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    apply_cap(limits().dimension_cap, dim_cap, "RR_DIM_CAP", 1, "dimension cap");
    apply_cap(limits().precision_cap_bits, prec_cap, "RR_PREC_CAP", limits().sign_start_bits, "precision cap");
    apply_cap(limits().enumeration_cap, enum_cap, "RR_ENUM_CAP", 1, "enumeration cap");

    if (canon->parsed()) {
        std::cout << to_string(canonicalize(parse_expression(expr_text))) << "\n";
        return ok;
    }
    if (generate->parsed()) {
        std::cout << write_model(random_model(seed));
        return ok;
    }

    const Model model = parse_model(read_input(model_path));

    if (rationalize->parsed()) {
        const auto [rm, report] = rationalize_model(model);
        for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
        for (const auto& r : report.infeasible_rows) std::cerr << "warning: row '" << r << "' is infeasible (0 = c)\n";
        write_output(out_path, write_model(rm.model));
        if (!report_path.empty()) write_output(report_path, to_json(report, rm).dump(2) + "\n");
        return ok;
    }
    if (solve->parsed()) {
        Model target = model;
        if (!relaxation) target = rationalize_model(model).first.model;
        const FieldChoice choice = field == "rational" ? FieldChoice::rational
                                   : field == "radical" ? FieldChoice::radical
                                                        : FieldChoice::automatic;
        const LpOutcome o = solve_lpr(target, choice);
        std::cout << outcome_text(target, o);
        if (!report_path.empty()) write_output(report_path, to_json(target, o).dump(2) + "\n");
        return verify_outcome(target, o) ? ok : counterexample;
    }
    if (verify->parsed()) {
        const Box box = parse_box(box_spec, model.variables.size());
        const Model other = against_path.empty() ? rationalize_model(model).first.model
                                                 : parse_model(read_input(against_path));
        const auto points = feasible_points(model, box);
        std::cout << "feasible points: " << points.size() << "\n";
        for (const auto& x : points) std::cout << "  " << point_text(x) << "\n";
        const Equivalence eq = check_equivalence(model, other, box);
        bool zero_check = true;
        for (const auto& x : feasible_points(other, box)) zero_check = zero_check && substitution_zero_check(model, x);
        std::cout << "equivalent: " << (eq.equal ? "yes" : "no") << "\n";
        if (eq.counterexample) std::cout << "counterexample: " << point_text(*eq.counterexample) << "\n";
        std::cout << "substitution zero check: " << (zero_check ? "passed" : "FAILED") << "\n";
        if (!report_path.empty()) {
            nlohmann::ordered_json j;
            j["feasible_points"] = points;
            j["equivalent"] = eq.equal;
            j["counterexample"] = eq.counterexample ? nlohmann::ordered_json(*eq.counterexample) : nullptr;
            j["substitution_zero_check"] = zero_check;
            write_output(report_path, j.dump(2) + "\n");
        }
        return eq.equal && zero_check ? ok : counterexample;
    }
    if (export_lp_cmd->parsed()) {
        write_output(out_path, export_lp(model, precision));
        return ok;
    }
    return usage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "radrat: " << e.what() << "\n";
        return usage;
    } catch (const ContractError& e) {
        std::cerr << "radrat: " << e.what() << "\n";
        return usage;
    } catch (const ParseError& e) {
        std::cerr << "radrat: parse error at " << e.what() << "\n";
        return parse;
    } catch (const DomainError& e) {
        std::cerr << "radrat: " << e.what() << "\n";
        return parse;
    } catch (const DependentExponentsError& e) {
        std::cerr << "radrat: " << e.what() << "\n";
        return parse;
    } catch (const ResourceError& e) {
        std::cerr << "radrat: resource limit: " << e.what() << "\n";
        return resource;
    } catch (const Error& e) {
        std::cerr << "radrat: " << e.what() << "\n";
        return usage;
    }
}
