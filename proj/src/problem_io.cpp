#include "invdef/problem_io.hpp"

#include <fstream>
#include <sstream>

namespace invdef {

namespace {

Rational parse_rational(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        Rational r;
        if (r.set_str(j.get<std::string>(), 10) != 0) throw ValidationError("bad rational: " + j.get<std::string>());
        r.canonicalize();
        return r;
    }
    throw ValidationError("matrix entries must be integers or rational strings");
}

const Json& need(const Json& j, const char* key) {
    if (!j.contains(key)) throw ValidationError(std::string("missing key: ") + key);
    return j.at(key);
}

std::vector<Polynomial> parse_polys(const Json& arr, const RingPtr& ring) {
    std::vector<Polynomial> out;
    if (!arr.is_array()) throw ValidationError("expected an array of polynomial strings");
    for (const auto& s : arr) out.push_back(parse_polynomial(s.get<std::string>(), ring));
    return out;
}

RingPtr parse_ring(const Json& r) {
    auto names = need(r, "variables").get<std::vector<std::string>>();
    std::vector<long> w(names.size(), 1);
    if (r.contains("gm_weights")) w = r.at("gm_weights").get<std::vector<long>>();
    try {
        return make_ring(VariableSet(names, w));
    } catch (const AlgebraError& e) {
        throw ValidationError(std::string("ring: ") + e.what());
    }
}

std::vector<QMatrix> parse_matrices(const Json& arr) {
    std::vector<QMatrix> out;
    for (const auto& m : arr) out.push_back(parse_qmatrix(m));
    return out;
}

Json matrix_strings(const PolyMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

PolyMatrix parse_matrix_strings(const Json& rows, const RingPtr& ring, int nrows, int ncols) {
    PolyMatrix m(ring, nrows, ncols);
    if (static_cast<int>(rows.size()) != nrows) throw ValidationError("matrix has the wrong number of rows");
    for (int i = 0; i < nrows; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (static_cast<int>(row.size()) != ncols) throw ValidationError("matrix has the wrong number of columns");
        for (int j = 0; j < ncols; ++j)
            m.at(i, j) = parse_polynomial(row.at(static_cast<std::size_t>(j)).get<std::string>(), ring);
    }
    return m;
}

}  // namespace

QMatrix parse_qmatrix(const Json& j) {
    if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a nonempty array of rows");
    const int r = static_cast<int>(j.size());
    const int c = static_cast<int>(j.at(0).size());
    QMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != c) throw ValidationError("matrix is not rectangular");
        for (int k = 0; k < c; ++k) m(i, k) = parse_rational(row.at(static_cast<std::size_t>(k)));
    }
    return m;
}

Json qmatrix_to_json(const QMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k).get_str());
        rows.push_back(row);
    }
    return rows;
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return Json::parse(in, nullptr, true, true);
    } catch (const Json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

ProblemFile parse_problem(const Json& j) {
    ProblemFile pf;
    pf.raw = j;
    try {
        ProblemSpec& s = pf.spec;
        s.ring = parse_ring(need(j, "ring"));
        GroupAction& a = s.action;
        a.vars = s.ring->vars().names;
        const int n = s.ring->nvars();
        const Json group = j.contains("group") ? j.at("group") : Json::object();
        if (group.contains("variables")) a.vars = group.at("variables").get<std::vector<std::string>>();
        const int na = static_cast<int>(a.vars.size());
        std::vector<QMatrix> fin;
        if (group.contains("finite_part")) fin = parse_matrices(group.at("finite_part"));
        if (fin.empty()) fin.push_back(QMatrix::identity(na));
        for (const auto& g : fin)
            if (g.rows() != na || g.cols() != na) throw ValidationError("finite_part matrix of the wrong size");
        try {
            a.finite = finite_closure(fin);
        } catch (const AlgebraError& e) {
            throw ValidationError(std::string("finite_part: ") + e.what());
        }
        if (group.contains("torus_part")) a.torus = group.at("torus_part").get<std::vector<std::vector<long>>>();
        if (group.contains("lie_basis")) a.lie = parse_matrices(group.at("lie_basis"));
        if (group.contains("lie_dual_basis")) a.lie_dual = parse_matrices(group.at("lie_dual_basis"));
        if (group.contains("krylov_cap")) a.krylov_cap = group.at("krylov_cap").get<std::size_t>();
        (void)n;

        s.ideal_gens = parse_polys(need(j, "ideal"), s.ring);
        if (j.contains("n1_decomposition"))
            for (const auto& e : j.at("n1_decomposition"))
                s.n1_decomposition.push_back({need(e, "multiplicity").get<int>(), need(e, "hilbert_value").get<int>()});
        if (j.contains("invariants")) s.invariants = parse_polys(j.at("invariants"), s.ring);
        if (j.contains("options")) {
            const auto& o = j.at("options");
            if (o.contains("max_order") && !o.at("max_order").is_null()) s.options.max_order = o.at("max_order").get<int>();
            if (o.contains("max_covariant_degree"))
                s.options.max_covariant_degree = o.at("max_covariant_degree").get<int>();
            if (o.contains("positive_weight_only")) s.options.positive_weight_only = o.at("positive_weight_only").get<bool>();
            if (o.contains("order_cap")) s.options.order_cap = o.at("order_cap").get<int>();
        }
        if (j.contains("one_parameter_subgroup")) {
            const auto& p = j.at("one_parameter_subgroup");
            PsgSpec ps;
            ps.column = need(p, "variable_index").get<std::vector<int>>();
            if (static_cast<int>(ps.column.size()) != n) throw ValidationError("one_parameter_subgroup has the wrong length");
            ps.sign.assign(ps.column.size(), 1);
            if (p.contains("sign")) {
                if (p.at("sign").is_array())
                    ps.sign = p.at("sign").get<std::vector<int>>();
                else
                    ps.sign.assign(ps.column.size(), p.at("sign").get<int>());
            }
            if (ps.sign.size() != ps.column.size()) throw ValidationError("one_parameter_subgroup sign has the wrong length");
            for (int x : ps.sign)
                if (x != 1 && x != -1) throw ValidationError("one_parameter_subgroup signs must be +1 or -1");
            pf.psg = ps;
        }
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("problem file: ") + e.what());
    }
    return pf;
}

ProblemFile load_problem(const std::string& path) { return parse_problem(read_json(path)); }

IdealFile parse_ideal_file(const Json& j) {
    IdealFile f;
    try {
        if (!j.contains("ring") && j.contains("K")) {  // a result file: its base ideal
            f.ring = make_ring(VariableSet(need(j, "t_variables").get<std::vector<std::string>>(),
                                           need(j, "t_weights").get<std::vector<long>>()));
            f.gens = parse_polys(j.at("K"), f.ring);
            return f;
        }
        f.ring = parse_ring(need(j, "ring"));
        f.gens = parse_polys(need(j, "ideal"), f.ring);
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("ideal file: ") + e.what());
    }
    return f;
}

Json result_to_json(const UniversalDeformation& res) {
    Json j;
    j["t_variables"] = res.t_ring->vars().names;
    j["t_weights"] = res.t_ring->vars().gm_weights;
    Json K = Json::array();
    for (const auto& g : res.K) K.push_back(to_string(g));
    j["K"] = K;
    j["U"] = matrix_strings(res.U);
    j["V"] = matrix_strings(res.V);
    j["stop_order"] = res.stop_order;
    j["stopped"] = res.stopped;
    j["log"] = res.log;
    return j;
}

UniversalDeformation result_from_json(const Json& j, const ProblemSpec& spec) {
    UniversalDeformation res;
    try {
        auto tn = need(j, "t_variables").get<std::vector<std::string>>();
        auto tw = need(j, "t_weights").get<std::vector<long>>();
        res.t_ring = make_ring(VariableSet(tn, tw));
        auto names = spec.ring->vars().names;
        auto w = spec.ring->vars().gm_weights;
        names.insert(names.end(), tn.begin(), tn.end());
        w.insert(w.end(), tw.begin(), tw.end());
        res.combined = make_ring(VariableSet(names, w));
        res.K = parse_polys(need(j, "K"), res.t_ring);
        const Json& U = need(j, "U");
        const Json& V = need(j, "V");
        const int n1 = U.empty() ? 0 : static_cast<int>(U.at(0).size());
        const int n2 = V.empty() ? 0 : static_cast<int>(V.at(0).size());
        res.U = parse_matrix_strings(U, res.combined, 1, n1);
        res.V = parse_matrix_strings(V, res.combined, n1, n2);
        res.stop_order = need(j, "stop_order").get<int>();
        res.stopped = need(j, "stopped").get<bool>();
        if (j.contains("log")) res.log = j.at("log").get<std::vector<std::string>>();
    } catch (const Json::exception& e) {
        throw ValidationError(std::string("result file: ") + e.what());
    } catch (const ParseError& e) {
        throw ValidationError(std::string("result file: ") + e.what());
    }
    return res;
}

}  // namespace invdef
