#include "linkform/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace linkform;

namespace {

enum Exit { Ok = 0, Usage = 1, InvalidData = 2, NotRealizable = 3, VerificationFailure = 4 };

struct Options {
    std::string input;
    std::string prime;
    std::string mode = "auto";
    std::uint64_t seed = 20240611;
    std::size_t trials = 0;
    std::size_t max_r = 5;
    long max_alpha = 8;
    long max_beta = 7;
    std::uint64_t oracle_bound = 1u << 12;
    unsigned threads = 0;
    std::string json_out;
    std::string suite = "all";
};

Json load_input(const std::string& arg)
{
    if (arg.empty()) throw ParseError("missing input");
    if (arg.front() == '{' || arg.front() == '[') return read_json_text(arg);
    std::stringstream ss;
    if (arg == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(arg);
        if (!in) throw ParseError("cannot read '" + arg + "'");
        ss << in.rdbuf();
    }
    return read_json_text(ss.str());
}

void emit(const Json& j, const Options& o)
{
    const std::string text = j.dump(2) + "\n";
    if (o.json_out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.json_out);
    if (!out) throw std::runtime_error("cannot write '" + o.json_out + "'");
    out << text;
}

SearchBounds bounds_of(const Options& o)
{
    SearchBounds b;
    b.max_r = o.max_r;
    b.max_beta = o.max_beta;
    b.oracle_bound = o.oracle_bound;
    b.alphas.clear();
    for (long a = 2; a <= o.max_alpha; a *= 2) b.alphas.push_back(a);
    return b;
}

int cmd_compute(const Options& o)
{
    SeifertData s = seifert_from_json(load_input(o.input));
    std::optional<Integer> p;
    if (!o.prime.empty()) p = Integer(o.prime);
    emit(compute_report(s, p), o);
    return Ok;
}

int cmd_classify(const Options& o)
{
    Json in = load_input(o.input);
    std::vector<GramPairing> grams;
    if (in.is_array())
        for (const auto& g : in) grams.push_back(gram_from_json(g));
    else
        grams.push_back(gram_from_json(in));
    Json violations = Json::array();
    for (const auto& g : grams)
        for (const auto& v : welldefined_check(g, o.oracle_bound).violations) violations.push_back(v);
    if (!violations.empty()) {
        std::cerr << Json{{"error", "ill-defined pairing"}, {"violations", violations}}.dump(2) << "\n";
        return InvalidData;
    }
    ClassificationReport rep = classify(grams);
    Json out = to_json(rep);
    out["witt"] = to_json(witt_pairing(rep.form));
    emit(out, o);
    return Ok;
}

int cmd_realize(const Options& o)
{
    StandardForm target = form_from_json(load_input(o.input));
    emit(to_json(realize(target, parse_mode(o.mode))), o);
    return Ok;
}

int cmd_witt(const Options& o)
{
    Json in = load_input(o.input);
    if (in.is_object() && in.contains("atoms")) {
        StandardForm f = form_from_json(in);
        emit(Json{{"standard_form", to_json(f)["atoms"]}, {"witt", to_json(witt_pairing(f))}}, o);
        return Ok;
    }
    SeifertData s = seifert_from_json(in);
    require_valid(s);
    std::vector<GramPairing> grams;
    if (s.size() >= 2)
        for (const auto& p : relevant_primes(s)) {
            GramPairing g = gram_matrix(s, p);
            if (!g.empty()) grams.push_back(g);
        }
    StandardForm f = classify(grams).form;
    WittElement from_formula = witt_seifert(s);
    WittElement from_pairing = witt_pairing(f);
    emit(Json{{"seifert", to_json(s)},
              {"witt_seifert", to_json(from_formula)},
              {"witt_pairing", to_json(from_pairing)},
              {"agree", from_formula == from_pairing}},
         o);
    return Ok;
}

int cmd_verify(const Options& o)
{
    RunConfig cfg;
    cfg.seed = o.seed;
    cfg.trials = o.trials;
    cfg.bounds = bounds_of(o);
    cfg.oracle_bound = o.oracle_bound;
    cfg.threads = o.threads;
    std::vector<std::string> suites;
    if (o.suite == "all") suites = suite_names();
    else suites.push_back(o.suite);
    Json reports = Json::array();
    bool ok = true;
    for (const auto& s : suites) {
        SuiteReport r = run_suite(s, cfg);
        ok = ok && r.passed;
        reports.push_back(to_json(r));
    }
    emit(Json{{"seed", cfg.seed}, {"suites", reports}, {"passed", ok}}, o);
    return ok ? Ok : VerificationFailure;
}

int cmd_search(const Options& o)
{
    StandardForm target = form_from_json(load_input(o.input));
    SearchBounds b = bounds_of(o);
    auto found = exhaustive_search(target, b);
    Json list = Json::array();
    for (const auto& s : found) list.push_back(to_json(s));
    Json alphas = Json::array();
    for (const auto& a : b.alphas) alphas.push_back(integer_json(a));
    emit(Json{{"target", to_json(target)["atoms"]},
              {"bounds", {{"max_r", b.max_r}, {"alphas", alphas}, {"max_beta", b.max_beta}}},
              {"count", found.size()},
              {"realizations", list}},
         o);
    return Ok;
}

void error_json(const std::string& kind, const std::string& what, const Json& extra = Json::object())
{
    Json j{{"error", kind}, {"message", what}};
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    std::cerr << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv)
{
    Options o;
    if (const char* env = std::getenv("LINKFORM_SEED")) {
        try {
            o.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "LINKFORM_SEED is not an unsigned integer\n";
            return Usage;
        }
    }

    CLI::App app{"Torsion linking pairings of Seifert fibred 3-manifolds"};
    app.require_subcommand(1);
    app.add_option("--json-out", o.json_out, "Write the JSON result to this file");

    auto input = [&](CLI::App* c, const std::string& what) {
        c->add_option("input", o.input, what + " (file, '-' for stdin, or inline JSON)")->required();
    };
    auto bounds = [&](CLI::App* c) {
        c->add_option("--max-r", o.max_r, "Maximum number of cone points")->check(CLI::PositiveNumber);
        c->add_option("--max-alpha", o.max_alpha, "Cone orders 2, 4, ... up to this bound")->check(CLI::Range(2L, 1L << 20));
        c->add_option("--max-beta", o.max_beta, "Maximum |beta|")->check(CLI::PositiveNumber);
        c->add_option("--oracle-bound", o.oracle_bound, "Group order bound for brute-force oracles")->check(CLI::PositiveNumber);
    };

    auto* compute = app.add_subcommand("compute", "Torsion, Gram matrices, classification and Witt class of M(g;S)");
    input(compute, "Seifert data {\"genus\":g,\"pairs\":[[a,b],...]}");
    compute->add_option("--prime", o.prime, "Restrict to one prime");

    auto* cls = app.add_subcommand("classify", "Classify a Gram pairing (or a list of them)");
    input(cls, "Gram pairing {\"prime\",\"orders\",\"gram\"}");
    cls->add_option("--oracle-bound", o.oracle_bound, "Group order bound for the nonsingularity check");

    auto* rz = app.add_subcommand("realize", "Seifert data realizing a standard form");
    input(rz, "Standard form {\"atoms\":[...]}");
    rz->add_option("--mode", o.mode, "flat, sphere or auto")->check(CLI::IsMember({"flat", "sphere", "auto"}));

    auto* wt = app.add_subcommand("witt", "Witt class of Seifert data or of a standard form");
    input(wt, "Seifert data or standard form");

    auto* vf = app.add_subcommand("verify", "Run seeded verification suites");
    std::vector<std::string> choices = suite_names();
    choices.push_back("all");
    vf->add_option("suite", o.suite, "Suite name or 'all'")->check(CLI::IsMember(choices));
    vf->add_option("--seed", o.seed, "Random seed (default: $LINKFORM_SEED or 20240611)");
    vf->add_option("--trials", o.trials, "Trials per suite (0: suite default)");
    vf->add_option("--threads", o.threads, "Worker threads (0: all cores)");
    bounds(vf);

    auto* sr = app.add_subcommand("search", "Exhaustive search for Seifert data realizing a 2-primary form");
    input(sr, "Standard form {\"atoms\":[...]}");
    bounds(sr);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (*compute) return cmd_compute(o);
        if (*cls) return cmd_classify(o);
        if (*rz) return cmd_realize(o);
        if (*wt) return cmd_witt(o);
        if (*vf) return cmd_verify(o);
        if (*sr) return cmd_search(o);
    } catch (const InvalidSeifertData& e) {
        error_json("invalid Seifert data", e.what(), Json{{"violations", e.violations}});
        return InvalidData;
    } catch (const ParseError& e) {
        error_json("invalid input", e.what());
        return InvalidData;
    } catch (const Unrealizable& e) {
        error_json("unrealizable", e.what());
        return NotRealizable;
    } catch (const RealizationFailure& e) {
        error_json("realization failed verification", e.what(), Json{{"trace", e.trace}});
        return VerificationFailure;
    } catch (const Unsupported& e) {
        error_json("unsupported", e.what());
        return InvalidData;
    } catch (const DomainError& e) {
        error_json("invalid input", e.what());
        return InvalidData;
    } catch (const std::exception& e) {
        error_json("internal error", e.what());
        return VerificationFailure;
    }
    return Usage;
}
