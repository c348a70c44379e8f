#include "sumlab/jsonio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sumlab {

cplx complex_from_json(const json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw input_error("complex value needs two entries");
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (j.is_object())
        return {j.value("re", 0.0), j.value("im", 0.0)};
    if (j.is_number()) return {j.get<double>(), 0.0};
    throw input_error("complex value must be [re,im] or {re,im}");
}

static json complex_pair(const cplx& z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const cvector& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back(complex_pair(z));
    return out;
}

cvector vector_from_json(const json& j) {
    if (!j.is_array()) throw input_error("vector must be a JSON array");
    cvector v;
    for (const auto& e : j) v.push_back(complex_from_json(e));
    return v;
}

json series_to_json(const SeriesSpec& s) {
    json out;
    switch (s.kind()) {
    case SeriesSpec::Kind::List:
        out["kind"] = "list";
        out["terms"] = vector_to_json(s.list_terms());
        break;
    case SeriesSpec::Kind::Geometric:
        out["kind"] = "geometric";
        out["a"] = {{"re", s.ratio().real()}, {"im", s.ratio().imag()}};
        break;
    case SeriesSpec::Kind::WeightedGeometric:
        out["kind"] = "weighted-geometric";
        out["a"] = {{"re", s.ratio().real()}, {"im", s.ratio().imag()}};
        out["degree"] = s.degree();
        break;
    case SeriesSpec::Kind::Custom:
        out["kind"] = "custom";
        out["rule"] = s.rule_id();
        break;
    }
    return out;
}

SeriesSpec series_from_json(const json& j) {
    std::string kind = j.value("kind", "");
    if (kind == "list") return SeriesSpec::list(vector_from_json(j.at("terms")));
    if (kind == "geometric")
        return SeriesSpec::geometric(complex_from_json(j.at("a")));
    if (kind == "weighted-geometric")
        return SeriesSpec::weighted_geometric(complex_from_json(j.at("a")),
                                              j.value("degree", 1));
    if (kind == "custom") return SeriesSpec::custom(j.at("rule").get<std::string>());
    throw input_error("series: unknown kind '" + kind + "'");
}

json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_pair(m.at(i, j)));
        out.push_back(row);
    }
    return out;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw input_error("matrix must be a JSON array");
    std::size_t n = j.size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n)
            throw input_error("matrix must be square");
        for (std::size_t k = 0; k < n; ++k) m.at(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

json convex_to_json(const ConvexSpec& c) {
    json out;
    if (const auto* s = std::get_if<Subspace>(&c)) {
        out["kind"] = "subspace";
        out["basis"] = json::array();
        for (const auto& b : s->basis) out["basis"].push_back(vector_to_json(b));
    } else if (const auto* b = std::get_if<Box>(&c)) {
        out["kind"] = "box";
        out["lo"] = b->lo;
        out["hi"] = b->hi;
    } else {
        const auto& ball = std::get<Ball>(c);
        out["kind"] = "ball";
        out["center"] = vector_to_json(ball.center);
        out["radius"] = ball.radius;
    }
    return out;
}

ConvexSpec convex_from_json(const json& j) {
    std::string kind = j.value("kind", "");
    if (kind == "subspace") {
        Subspace s;
        for (const auto& b : j.at("basis")) s.basis.push_back(vector_from_json(b));
        return s;
    }
    if (kind == "box") {
        Box b;
        b.lo = j.at("lo").get<std::vector<double>>();
        b.hi = j.at("hi").get<std::vector<double>>();
        return b;
    }
    if (kind == "ball") {
        Ball b;
        b.center = vector_from_json(j.at("center"));
        b.radius = j.at("radius").get<double>();
        return b;
    }
    throw input_error("convex set: unknown kind '" + kind + "'");
}

json shift_system_to_json(const ShiftSystem& s) {
    return {{"alphabet", s.alphabet}, {"weights", s.weights}, {"depth", s.depth}};
}

ShiftSystem shift_system_from_json(const json& j) {
    ShiftSystem s;
    s.alphabet = j.at("alphabet").get<std::size_t>();
    s.weights = j.at("weights").get<std::vector<double>>();
    s.depth = j.value("depth", 12L);
    s.validate();
    return s;
}

json finite_system_to_json(const FiniteSystem& s) {
    return {{"permutation", s.perm}, {"weights", s.mu}};
}

FiniteSystem finite_system_from_json(const json& j) {
    FiniteSystem s;
    s.perm = j.at("permutation").get<std::vector<std::size_t>>();
    if (j.contains("weights"))
        s.mu = j.at("weights").get<std::vector<double>>();
    else
        s.mu.assign(s.perm.size(), 1.0);
    s.validate();
    return s;
}

json ultrametric_space_to_json(const UltrametricSpace& s) {
    return {{"alphabet", s.alphabet},
            {"rho", s.rho},
            {"depth", s.depth},
            {"weights", s.weights}};
}

UltrametricSpace ultrametric_space_from_json(const json& j) {
    UltrametricSpace s;
    s.alphabet = j.at("alphabet").get<std::size_t>();
    s.rho = j.at("rho").get<double>();
    s.depth = j.value("depth", std::size_t(12));
    if (j.contains("weights"))
        s.weights = j.at("weights").get<std::vector<double>>();
    else
        s.weights.assign(s.alphabet, 1.0 / double(s.alphabet));
    s.validate();
    return s;
}

json report_to_json(const Report& r) {
    json out;
    out["name"] = r.name;
    out["seed"] = r.seed;
    out["pass"] = r.pass();
    out["checks"] = json::array();
    for (const auto& c : r.checks)
        out["checks"].push_back({{"name", c.name},
                                 {"pass", c.pass},
                                 {"observed", c.observed},
                                 {"bound", c.bound}});
    out["values"] = json::object();
    for (const auto& [k, v] : r.values) out["values"][k] = v;
    out["notes"] = r.notes;
    out["tables"] = json::array();
    for (const auto& t : r.tables) {
        json rows = json::array();
        for (const auto& row : t.rows) rows.push_back(row);
        out["tables"].push_back(
            {{"name", t.name}, {"columns", t.columns}, {"rows", rows}});
    }
    return out;
}

json summability_report_to_json(const SummabilityReport& r) {
    json out;
    switch (r.method) {
    case SummabilityReport::Method::Classical: out["method"] = "classical"; break;
    case SummabilityReport::Method::Cesaro: out["method"] = "cesaro"; break;
    case SummabilityReport::Method::Abel: out["method"] = "abel"; break;
    }
    if (r.estimate)
        out["estimate"] = complex_pair(*r.estimate);
    else
        out["estimate"] = nullptr;
    out["divergent"] = r.divergent();
    out["trace"] = vector_to_json(r.trace.values);
    out["diagnostics"] = r.diagnostics;
    out["stabilization_spread"] = r.stabilization_spread;
    out["trailing_term_over_index"] = r.trailing_term_over_index;
    out["notes"] = r.notes;
    return out;
}

json spectral_report_to_json(const SpectralReport& r) {
    json out;
    out["trace_indices"] = r.trace_indices;
    out["gelfand_trace"] = r.gelfand_trace;
    out["gelfand_estimate"] = r.gelfand_estimate;
    out["fekete_inf"] = r.fekete_inf;
    if (r.eigen_available) out["eigen_radius"] = r.eigen_radius;
    out["consistent"] = r.consistent;
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string grid_function_to_csv(const GridFunction& f) {
    std::ostringstream out;
    out << "j,re,im\n";
    for (std::size_t i = 0; i < f.values.size(); ++i)
        out << (f.lo + long(i)) << ',' << format_double(f.values[i].real()) << ','
            << format_double(f.values[i].imag()) << '\n';
    return out.str();
}

GridFunction grid_function_from_csv(const std::string& text) {
    GridFunction f;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    std::vector<std::pair<long, cplx>> entries;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.find("re") != std::string::npos) {
            first = false;
            continue;
        }
        first = false;
        long j;
        double re, im;
        if (std::sscanf(line.c_str(), "%ld,%lf,%lf", &j, &re, &im) != 3)
            throw input_error("grid function CSV: expected 'j,re,im' rows");
        entries.emplace_back(j, cplx(re, im));
    }
    if (entries.empty()) throw input_error("grid function CSV: no rows");
    long lo = entries.front().first, hi = lo;
    for (const auto& [j, z] : entries) {
        lo = std::min(lo, j);
        hi = std::max(hi, j);
    }
    f.lo = lo;
    f.values.assign(std::size_t(hi - lo + 1), cplx(0.0, 0.0));
    for (const auto& [j, z] : entries) f.values[std::size_t(j - lo)] = z;
    return f;
}

std::string circle_function_to_csv(const SampledCircleFunction& f) {
    std::ostringstream out;
    out << "theta,re,im\n";
    for (std::size_t k = 0; k < f.m; ++k)
        out << format_double(f.node(k)) << ',' << format_double(f.values[k].real())
            << ',' << format_double(f.values[k].imag()) << '\n';
    return out.str();
}

std::string table_to_csv(const Table& t) {
    std::ostringstream out;
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << (c ? "," : "") << t.columns[c];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_double(row[c]);
        out << '\n';
    }
    return out.str();
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw io_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw io_error("rename failed for " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace sumlab
