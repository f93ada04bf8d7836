// invdef: tangent spaces, universal deformations and flat limits for invariant
// Hilbert schemes.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "invdef/deformation.hpp"
#include "invdef/degeneration.hpp"
#include "invdef/fingerprint.hpp"
#include "invdef/problem_io.hpp"

using namespace invdef;

namespace {

enum Exit { kOk = 0, kValidation = 2, kCap = 3, kVerify = 4, kInternal = 5 };

struct Common {
    bool json = false;
    int threads = 1;
};

void emit(const Common& c, const Json& j, const std::string& text) {
    if (c.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

Json strings(const std::vector<Polynomial>& ps) {
    Json a = Json::array();
    for (const auto& p : ps) a.push_back(to_string(p));
    return a;
}

std::string join(const std::vector<long>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::vector<long> parse_tuple(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stol(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError("bad integer tuple: " + s);
        }
    }
    if (out.empty()) throw ValidationError("empty integer tuple");
    return out;
}

ProblemFile load_valid(const std::string& path) {
    auto pf = load_problem(path);
    pf.spec.validate();
    return pf;
}

int cmd_tangent(const Common& c, const std::string& path) {
    auto pf = load_valid(path);
    auto pres = build_presentation(pf.spec);
    auto cov = covariant_basis(pf.spec, pres);
    auto tb = tangent_space(pf.spec, pres, cov);
    Json j;
    j["d"] = tb.dim();
    j["t_weights"] = tb.t_weights;
    j["n1"] = pres.n1();
    j["n2"] = pres.n2();
    Json rows = Json::array();
    std::ostringstream os;
    os << "n1 = " << pres.n1() << ", n2 = " << pres.n2() << ", covariants " << cov.size() << "\n";
    os << "d = " << tb.dim() << "\nt-weights: " << join(tb.t_weights) << "\n";
    for (int i = 0; i < tb.dim(); ++i) {
        Json row = Json::array();
        const auto& r = tb.rows[static_cast<std::size_t>(i)];
        os << "s" << i + 1 << " = [";
        for (int k = 0; k < r.cols(); ++k) {
            row.push_back(to_string(r.at(0, k)));
            os << (k ? ", " : "") << to_string(r.at(0, k));
        }
        os << "]\n";
        rows.push_back(row);
    }
    j["rows"] = rows;
    emit(c, j, os.str());
    return kOk;
}

int cmd_deform(const Common& c, const std::string& path, std::optional<int> max_order, bool positive_only,
               const std::string& out) {
    auto pf = load_valid(path);
    if (max_order) pf.spec.options.max_order = max_order;
    if (positive_only) pf.spec.options.positive_weight_only = true;
    auto pres = build_presentation(pf.spec);
    auto tb = tangent_space(pf.spec, pres, covariant_basis(pf.spec, pres));
    std::cerr << "tangent dimension " << tb.dim() << "\n";
    auto res = run(pf.spec, pres, tb, [](const DeformationState& s, double secs) {
        std::cerr << "order " << s.order << ": " << s.K.size() << " generators in K, " << secs << " s\n";
    });
    Json j = result_to_json(res);
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw ValidationError("cannot write " + out);
        f << j.dump(2) << "\n";
    }
    if (c.json || out.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "stopped: " << (res.stopped ? "yes" : "no") << " at order " << res.stop_order << "\n";
        std::cout << "t-weights: " << join(res.t_ring->vars().gm_weights) << "\n";
        std::cout << "K (" << res.K.size() << " generators):\n";
        for (const auto& g : res.K) std::cout << "  " << to_string(g) << "\n";
    }
    return kOk;
}

int cmd_verify(const Common& c, const std::string& result_path, const std::string& problem_path) {
    auto pf = load_valid(problem_path);
    auto res = result_from_json(read_json(result_path), pf.spec);
    auto rep = verify(res, pf.spec);
    Json j;
    Json checks = Json::object();
    std::ostringstream os;
    for (const auto& [name, ok] : rep.checks) {
        checks[name] = ok;
        os << (ok ? "pass " : "FAIL ") << name << "\n";
    }
    for (const auto& d : rep.details) os << "  " << d << "\n";
    j["checks"] = checks;
    j["details"] = rep.details;
    j["ok"] = rep.ok();
    emit(c, j, os.str());
    return rep.ok() ? kOk : kVerify;
}

int cmd_limit(const Common& c, const std::string& path, const std::string& psg, const std::string& target) {
    auto pf = load_problem(path);
    const auto& ring = pf.spec.ring;
    if (!pf.psg) throw ValidationError("problem has no one_parameter_subgroup section");
    auto n = parse_tuple(psg);
    auto a = psg_weights(n, pf.psg->column, pf.psg->sign);
    auto L0 = flat_limit(ring, pf.spec.ideal_gens, a);
    Json j;
    j["n"] = n;
    j["variable_weights"] = a;
    j["limit"] = strings(L0);
    std::ostringstream os;
    os << "n = (" << join(n) << ") gives variable weights (" << join(a) << ")\n";
    os << "limit ideal (" << L0.size() << " generators):\n";
    for (const auto& g : L0) os << "  " << to_string(g) << "\n";

    std::optional<std::vector<Polynomial>> want;
    if (!target.empty()) {
        auto tf = parse_ideal_file(read_json(target));
        std::vector<Polynomial> gens;
        for (const auto& g : tf.gens) gens.push_back(parse_polynomial(to_string(g), ring));
        want = gens;
    } else if (pf.raw.contains("limit_targets")) {
        for (const auto& t : pf.raw.at("limit_targets"))
            if (t.at("n").get<std::vector<long>>() == n) {
                std::vector<Polynomial> gens;
                for (const auto& s : t.at("ideal")) gens.push_back(parse_polynomial(s.get<std::string>(), ring));
                want = gens;
                if (t.contains("name")) j["target"] = t.at("name");
            }
    }
    int code = kOk;
    if (want) {
        bool eq = ideal_equal(ring, L0, *want);
        j["matches_target"] = eq;
        os << (eq ? "pass" : "FAIL") << " limit equals the target ideal\n";
        if (!eq) code = kVerify;
    }
    emit(c, j, os.str());
    return code;
}

int cmd_fiber(const Common& c, const std::string& result_path, const std::string& problem_path) {
    auto pf = load_valid(problem_path);
    auto res = result_from_json(read_json(result_path), pf.spec);
    if (pf.spec.invariants.empty()) throw ValidationError("problem lists no invariants");
    auto K0 = fiber_over_zero(res, pf.spec.invariants, pf.spec.action);
    const int dim = krull_dimension(res.t_ring, K0);
    Json j;
    // readable back as an ideal file
    j["ring"] = {{"variables", res.t_ring->vars().names}, {"gm_weights", res.t_ring->vars().gm_weights}};
    j["ideal"] = strings(K0);
    j["dimension"] = dim;
    std::ostringstream os;
    os << "fiber over 0: " << K0.size() << " generators, dimension " << dim << "\n";
    for (const auto& g : K0) os << "  " << to_string(g) << "\n";
    emit(c, j, os.str());
    return kOk;
}

int cmd_analyze(const Common& c, const std::string& path, const std::string& weights, const std::string& compare) {
    auto f = parse_ideal_file(read_json(path));
    auto w = weights.empty() ? f.ring->vars().gm_weights : parse_tuple(weights);
    if (static_cast<int>(w.size()) != f.ring->nvars()) throw ValidationError("--weights has the wrong length");
    auto fp = fingerprint(f.ring, f.gens, w);
    Json j;
    j["dimension"] = fp.dimension;
    j["hilbert_numerator"] = fp.numerator.to_string();
    std::ostringstream os;
    os << "dimension " << fp.dimension << "\nHilbert numerator " << fp.numerator.to_string() << "\n";
    int code = kOk;
    if (!compare.empty()) {
        // the other ideal is graded by its own weights; the series are comparable
        // when the two weight multisets agree
        auto g = parse_ideal_file(read_json(compare));
        auto w2 = g.ring->vars().gm_weights;
        auto fp2 = fingerprint(g.ring, g.gens, w2);
        const bool same = fp == fp2;
        j["compare_weights"] = w2;
        j["compare_dimension"] = fp2.dimension;
        j["compare_hilbert_numerator"] = fp2.numerator.to_string();
        j["fingerprint_match"] = same;
        os << "compared: weights " << join(w2) << ", dimension " << fp2.dimension << ", Hilbert numerator "
           << fp2.numerator.to_string() << "\n";
        if (fp.weights != fp2.weights) os << "weight multisets differ\n";
        os << (same ? "pass" : "FAIL") << " fingerprints agree\n";
        if (!same) code = kVerify;
    }
    emit(c, j, os.str());
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invdef: universal deformations of invariant Hilbert schemes"};
    app.require_subcommand(1);
    app.fallthrough();
    Common c;
    if (const char* env = std::getenv("INVDEF_THREADS")) c.threads = std::max(1, std::atoi(env));
    app.add_flag("--json", c.json, "machine-readable output");
    app.add_option("--threads", c.threads, "worker threads (default $INVDEF_THREADS or 1)")->check(CLI::PositiveNumber);

    std::string problem, result, out, psg, target, weights, compare;
    std::optional<int> max_order;
    bool positive_only = false;

    auto* tangent = app.add_subcommand("tangent", "tangent space at the fixed point");
    tangent->add_option("problem", problem)->required()->check(CLI::ExistingFile);

    auto* deform = app.add_subcommand("deform", "universal deformation");
    deform->add_option("problem", problem)->required()->check(CLI::ExistingFile);
    deform->add_option("--max-order", max_order, "truncate at this order")->check(CLI::PositiveNumber);
    deform->add_flag("--positive-only", positive_only, "keep only positive-weight tangent directions");
    deform->add_option("--out", out, "result file");

    auto* ver = app.add_subcommand("verify", "check a result file");
    ver->add_option("result", result)->required()->check(CLI::ExistingFile);
    ver->add_option("problem", problem)->required()->check(CLI::ExistingFile);

    auto* limit = app.add_subcommand("limit", "flat limit under a one-parameter subgroup");
    limit->add_option("problem", problem)->required()->check(CLI::ExistingFile);
    limit->add_option("--psg", psg, "comma-separated n-tuple")->required();
    limit->add_option("--target", target, "ideal file to compare with")->check(CLI::ExistingFile);

    auto* fiber = app.add_subcommand("fiber", "fiber of the family over 0 of the quotient");
    fiber->add_option("result", result)->required()->check(CLI::ExistingFile);
    fiber->add_option("problem", problem)->required()->check(CLI::ExistingFile);

    auto* analyze = app.add_subcommand("analyze", "dimension and weighted Hilbert series of an ideal");
    analyze->add_option("ideal", problem)->required()->check(CLI::ExistingFile);
    analyze->add_option("--weights", weights, "comma-separated weights");
    analyze->add_option("--compare", compare, "second ideal file for a fingerprint comparison")
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*tangent) return cmd_tangent(c, problem);
        if (*deform) return cmd_deform(c, problem, max_order, positive_only, out);
        if (*ver) return cmd_verify(c, result, problem);
        if (*limit) return cmd_limit(c, problem, psg, target);
        if (*fiber) return cmd_fiber(c, result, problem);
        if (*analyze) return cmd_analyze(c, problem, weights, compare);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kValidation;
    } catch (const CapError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kCap;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
