#include "tropbt.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>

using namespace tropbt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitTheorem = 2;
constexpr int kExitUsage = 64;

const std::set<std::string> kCommands{"curve", "theta", "bitangents", "verify", "family", "render", "selftest"};

const char* kUsage =
    "usage: tropbt <command> [options]\n"
    "\n"
    "commands:\n"
    "  curve FILE                          curve summary\n"
    "  theta FILE                          theta characteristic classes\n"
    "  bitangents FILE                     bitangent classes with witnesses\n"
    "  verify FILE                         check the bitangent count\n"
    "  family FILE --param h --values ...  check multiplicities along a family\n"
    "  render FILE --out file.svg          draw the curve and bitangent representatives\n"
    "  selftest --seed S                   run the property suites\n"
    "\n"
    "options: --out PATH, --seed N, --epsilon p/q, --json\n";

struct Options {
    std::string file;
    std::string out;
    std::string epsilon = "1";
    std::string param;
    std::string values;
    std::uint64_t seed = 1;
    int trials = 50;
    bool json = false;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::MalformedInput, "cannot write " + o.out);
    f << text;
}

void emit(const Options& o, const Json& j) { emit(o, j.dump(2) + "\n"); }

Rational epsilon_of(const Options& o) {
    Rational eps = parse_rational(o.epsilon);
    if (sgn(eps) <= 0) throw Error(ErrorCode::InvalidArgument, "--epsilon must be positive");
    return eps;
}

PlaneCurve load_curve(const Options& o) { return curve_from_polynomial(parse_curve_text(read_file(o.file))); }

int cmd_curve(const Options& o) {
    auto c = load_curve(o);
    auto j = report_header("curve");
    j["curve"] = curve_summary_json(c);
    emit(o, j);
    return kExitOk;
}

int cmd_theta(const Options& o) {
    auto c = load_curve(o);
    CurveClassifier cc(c, epsilon_of(o));
    auto j = report_header("theta");
    j["epsilon"] = to_json(cc.paired().epsilon);
    j["theta"] = theta_table_json(theta_class_table(cc), cc.jacobian_dimension(), betti_number(cc.paired().sigma));
    emit(o, j);
    return kExitOk;
}

int cmd_bitangents(const Options& o) {
    auto c = load_curve(o);
    CurveClassifier cc(c, epsilon_of(o));
    auto j = report_header("bitangents");
    j["bitangents"] = bitangents_json(enumerate_bitangents(cc));
    emit(o, j);
    return kExitOk;
}

int cmd_verify(const Options& o) {
    auto c = load_curve(o);
    CurveClassifier cc(c, epsilon_of(o));
    const auto table = theta_class_table(cc);
    const auto en = enumerate_bitangents(cc, table, critical_arrangement(c));
    const auto rep = verify_main_theorem(cc, table, en);
    auto j = report_header("verify");
    j["curve"] = curve_summary_json(c);
    j["theta"] = theta_table_json(table, cc.jacobian_dimension(), betti_number(cc.paired().sigma));
    j["bitangents"] = bitangents_json(en);
    j["verdict"] = verdict_json(rep);
    emit(o, j);
    return rep.passed ? kExitOk : kExitTheorem;
}

int cmd_family(const Options& o) {
    auto raw = detail::parse_json_text(read_file(o.file));
    if (raw.is_object() && !raw.contains("parameter") && !o.param.empty()) raw["parameter"] = o.param;
    const auto fam = parse_family(raw);
    if (!o.param.empty() && o.param != fam.parameter)
        throw Error(ErrorCode::InvalidArgument, "--param " + o.param + " does not match the file's parameter " + fam.parameter);
    if (o.values.empty()) throw Error(ErrorCode::InvalidArgument, "--values is required");
    const auto rep = family_multiplicities(fam, parse_value_list(o.values), epsilon_of(o));
    auto j = report_header("family");
    j["family"] = family_report_json(rep);
    emit(o, j);
    return rep.passed ? kExitOk : kExitTheorem;
}

int cmd_render(const Options& o) {
    auto c = load_curve(o);
    CurveClassifier cc(c, epsilon_of(o));
    std::vector<BitangentWitness> ws;
    for (const auto& cls : enumerate_bitangents(cc).classes) ws.push_back(cls.representative);
    emit(o, render_svg(c, ws));
    return kExitOk;
}

int cmd_selftest(const Options& o) {
    Rng rng(o.seed);
    const Rational eps = epsilon_of(o);
    auto j = report_header("selftest");
    j["seed"] = o.seed;
    Json suites = Json::array();
    bool ok = true;
    auto record = [&](const std::string& fixture, const SuiteResult& r) {
        ok = ok && r.passed();
        suites.push_back({{"fixture", fixture}, {"suite", r.name}, {"trials", r.trials}, {"passed", r.passed()}, {"failures", r.failures}});
    };
    const std::vector<std::pair<std::string, TropicalPolynomial>> curves{
        {"smooth", fixtures::smooth_quartic()},
        {"one_cycle", fixtures::one_cycle_quartic()},
        {"flat", fixtures::flat_quartic()},
        {"random_smooth", fixtures::random_smooth_quartic(o.seed)}};
    for (const auto& [name, p] : curves) {
        const auto c = curve_from_polynomial(p);
        CurveClassifier cc(c, eps);
        record(name, riemann_roch_suite(cc.paired().sigma, rng, o.trials));
        record(name, bezout_suite(c, rng, 2 * o.trials));
        record(name, canonical_section_suite(cc, rng, o.trials / 2));
        record(name, theta_suite(cc));
        const auto rep = verify_main_theorem(c);
        SuiteResult v{"main_theorem", 1, rep.failures};
        record(name, v);
    }
    record("random_polygons", pick_suite(rng, 4 * o.trials));
    j["suites"] = std::move(suites);
    j["passed"] = ok;
    emit(o, j);
    return ok ? kExitOk : kExitTheorem;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2 || !kCommands.count(argv[1])) {
        std::cerr << kUsage;
        return kExitUsage;
    }
    const std::string command = argv[1];
    Options o;
    CLI::App app{"tropical bitangents of plane quartics", "tropbt " + command};
    if (command != "selftest") app.add_option("file", o.file, "curve or family JSON file")->required();
    app.add_option("--out", o.out, "write output to PATH instead of standard output");
    app.add_option("--epsilon", o.epsilon, "loop length of the paired graph, p/q");
    app.add_flag("--json", o.json, "machine output (the default)");
    if (command == "family") {
        app.add_option("--param", o.param, "family parameter name");
        app.add_option("--values", o.values, "comma-separated parameter values");
    }
    if (command == "selftest") {
        app.add_option("--seed", o.seed, "random seed");
        app.add_option("--trials", o.trials, "trials per suite")->check(CLI::Range(1, 100000));
    }
    try {
        app.parse(argc - 1, argv + 1);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }
    try {
        if (command == "curve") return cmd_curve(o);
        if (command == "theta") return cmd_theta(o);
        if (command == "bitangents") return cmd_bitangents(o);
        if (command == "verify") return cmd_verify(o);
        if (command == "family") return cmd_family(o);
        if (command == "render") return cmd_render(o);
        return cmd_selftest(o);
    } catch (const Error& e) {
        Json j = report_header(command);
        j["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
        std::cout << j.dump(2) << "\n";
        std::cerr << "tropbt: " << e.what() << "\n";
        return kExitInput;
    }
}
