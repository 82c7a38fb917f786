// JSON formats for pairs, realizations, example specs, one-variable moments
// and the reports. Complex numbers are [re, im]; matrices are row-major in
// canonical index order. Every document written carries "schema_version": 1.
//
// Malformed input raises std::invalid_argument naming the offending field.

#ifndef HVMS_JSON_IO_HPP
#define HVMS_JSON_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include <hvms/asymptotics.hpp>
#include <hvms/example_family.hpp>
#include <hvms/hankel_pair.hpp>
#include <hvms/realization.hpp>

namespace hvms::json_io
{

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

inline Json parse_text(const std::string& text, const std::string& source = "input")
{
    try
    {
        return Json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw std::invalid_argument(source + ": malformed JSON: " + e.what());
    }
}

inline Json read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::string& path, const Json& j)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file '" + path + "'");
    out << dump(j);
}

namespace detail
{

[[noreturn]] inline void fail(const std::string& field, const std::string& what)
{
    throw std::invalid_argument("field '" + field + "': " + what);
}

inline const Json& member(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object())
        fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(where.empty() ? key : where + "." + key, "missing");
    return *it;
}

inline double number(const Json& j, const std::string& field)
{
    if (!j.is_number())
        fail(field, "expected a number");
    return j.get<double>();
}

inline int integer(const Json& j, const std::string& field)
{
    if (!j.is_number_integer())
        fail(field, "expected an integer");
    return j.get<int>();
}

inline void check_schema(const Json& j)
{
    if (!j.is_object())
        fail("<root>", "expected an object");
    auto it = j.find("schema_version");
    if (it != j.end() && (!it->is_number_integer() || it->get<int>() != schema_version))
        fail("schema_version", "unsupported version " + it->dump() + ", expected " +
                                   std::to_string(schema_version));
}

} // namespace detail

inline Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const Json& j, const std::string& field)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2)
        detail::fail(field, "expected [re, im]");
    return {detail::number(j[0], field + "[0]"), detail::number(j[1], field + "[1]")};
}

inline Json to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            row.push_back(to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const Vector& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(to_json(v(i)));
    return out;
}

inline Matrix matrix_from_json(const Json& j, Eigen::Index rows, Eigen::Index cols,
                               const std::string& field)
{
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
        detail::fail(field, "expected " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
    {
        const auto& row = j[static_cast<std::size_t>(i)];
        const std::string rf = field + "[" + std::to_string(i) + "]";
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            detail::fail(rf, "expected " + std::to_string(cols) + " columns");
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)],
                                        rf + "[" + std::to_string(k) + "]");
    }
    return m;
}

inline Vector vector_from_json(const Json& j, Eigen::Index size, const std::string& field)
{
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != size)
        detail::fail(field, "expected " + std::to_string(size) + " entries");
    Vector v(size);
    for (Eigen::Index i = 0; i < size; ++i)
        v(i) = complex_from_json(j[static_cast<std::size_t>(i)],
                                 field + "[" + std::to_string(i) + "]");
    return v;
}

inline Json to_json(MultiIndex n) { return Json::array({n.n1, n.n2}); }

inline Json index_order_json(int N)
{
    Json out = Json::array();
    for (auto n : IndexSet(N))
        out.push_back(to_json(n));
    return out;
}

inline Json to_json(const Tolerances& t)
{
    return Json{{"hermitian", t.hermitian}, {"psd", t.psd},   {"equality", t.equality},
                {"kernel", t.kernel},       {"rank", t.rank}, {"fit", t.fit},
                {"decay", t.decay}};
}

inline Tolerances tolerances_from_json(const Json& j, const std::string& field = "tol")
{
    Tolerances t;
    if (!j.is_object())
        detail::fail(field, "expected an object");
    const std::pair<const char*, double*> slots[] = {
        {"hermitian", &t.hermitian}, {"psd", &t.psd},   {"equality", &t.equality},
        {"kernel", &t.kernel},       {"rank", &t.rank}, {"fit", &t.fit},
        {"decay", &t.decay}};
    for (const auto& [key, slot] : slots)
        if (auto it = j.find(key); it != j.end())
            *slot = detail::number(*it, field + "." + key);
    for (const auto& [key, value] : j.items())
    {
        const bool known = std::any_of(std::begin(slots), std::end(slots),
                                       [&](const auto& s) { return key == s.first; });
        if (!known)
            detail::fail(field + "." + key, "unknown tolerance");
    }
    try
    {
        t.validate();
    }
    catch (const std::invalid_argument& e)
    {
        detail::fail(field, e.what());
    }
    return t;
}

// HankelPair --------------------------------------------------------------

inline Json to_json(const HankelPair& p)
{
    return Json{{"schema_version", schema_version},
                {"N", p.N},
                {"order", index_order_json(p.N)},
                {"a1", to_json(p.a1)},
                {"a2", to_json(p.a2)},
                {"tol", to_json(p.tol)}};
}

inline void check_order(const Json& j, int N)
{
    auto it = j.find("order");
    if (it == j.end())
        return;
    if (*it != index_order_json(N))
        detail::fail("order", "must list I_N in canonical order (graded, descending n1)");
}

inline HankelPair hankel_pair_from_json(const Json& j)
{
    detail::check_schema(j);
    const int N = detail::integer(detail::member(j, "N", ""), "N");
    if (N < 1)
        detail::fail("N", "must be positive");
    check_order(j, N);
    const auto n = static_cast<Eigen::Index>(graded_cardinality(N));
    HankelPair p;
    p.N  = N;
    p.a1 = matrix_from_json(detail::member(j, "a1", ""), n, n, "a1");
    p.a2 = matrix_from_json(detail::member(j, "a2", ""), n, n, "a2");
    if (auto it = j.find("tol"); it != j.end())
        p.tol = tolerances_from_json(*it);
    return p;
}

// Realization --------------------------------------------------------------

inline Json to_json(const Realization& r)
{
    Json moments = Json::object();
    const IndexSet idx(r.N);
    for (std::size_t k = 0; k < idx.size(); ++k)
        moments[idx[k].to_string()] = to_json(Vector(r.moments.col(static_cast<Eigen::Index>(k))));
    return Json{{"schema_version", schema_version},
                {"dim", r.dim()},
                {"N", r.N},
                {"Y", to_json(r.Y)},
                {"A", to_json(r.A)},
                {"alpha", to_json(r.alpha)},
                {"moments", std::move(moments)}};
}

inline Realization realization_from_json(const Json& j)
{
    detail::check_schema(j);
    const int d = detail::integer(detail::member(j, "dim", ""), "dim");
    const int N = detail::integer(detail::member(j, "N", ""), "N");
    if (d < 0)
        detail::fail("dim", "must be nonnegative");
    if (N < 1)
        detail::fail("N", "must be positive");
    Realization r;
    r.N     = N;
    r.Y     = matrix_from_json(detail::member(j, "Y", ""), d, d, "Y");
    r.A     = matrix_from_json(detail::member(j, "A", ""), d, d, "A");
    r.alpha = vector_from_json(detail::member(j, "alpha", ""), d, "alpha");
    const auto& mj = detail::member(j, "moments", "");
    if (!mj.is_object())
        detail::fail("moments", "expected an object keyed by \"[n1,n2]\"");
    const IndexSet idx(N);
    r.moments = Matrix(d, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k)
    {
        const auto key = idx[k].to_string();
        auto it        = mj.find(key);
        if (it == mj.end())
            detail::fail("moments." + key, "missing");
        r.moments.col(static_cast<Eigen::Index>(k)) = vector_from_json(*it, d, "moments." + key);
    }
    if (mj.size() != idx.size())
        detail::fail("moments", "expected exactly the keys of I_" + std::to_string(N));
    try
    {
        r.validate();
    }
    catch (const std::invalid_argument& e)
    {
        detail::fail("<realization>", e.what());
    }
    return r;
}

// ExampleSpec, Moments1D ------------------------------------------------

inline Json to_json(const ExampleSpec& s)
{
    Json terms = Json::array();
    for (const auto& t : s.terms)
        terms.push_back(Json::array({t.w, t.lambda, t.t}));
    return Json{{"schema_version", schema_version}, {"terms", std::move(terms)}};
}

inline ExampleSpec example_spec_from_json(const Json& j)
{
    detail::check_schema(j);
    const auto& tj = detail::member(j, "terms", "");
    if (!tj.is_array())
        detail::fail("terms", "expected an array of [w, lambda, t]");
    ExampleSpec s;
    for (std::size_t k = 0; k < tj.size(); ++k)
    {
        const std::string f = "terms[" + std::to_string(k) + "]";
        if (!tj[k].is_array() || tj[k].size() != 3)
            detail::fail(f, "expected [w, lambda, t]");
        s.terms.push_back({detail::number(tj[k][0], f + "[0]"), detail::number(tj[k][1], f + "[1]"),
                           detail::number(tj[k][2], f + "[2]")});
    }
    try
    {
        s.validate();
    }
    catch (const std::invalid_argument& e)
    {
        detail::fail("terms", e.what());
    }
    return s;
}

inline Json to_json(const Moments1D& m)
{
    return Json{{"schema_version", schema_version}, {"rho", m.rho}};
}

inline Moments1D moments1d_from_json(const Json& j)
{
    detail::check_schema(j);
    const auto& rj = detail::member(j, "rho", "");
    if (!rj.is_array())
        detail::fail("rho", "expected an array of numbers");
    Moments1D m;
    for (std::size_t k = 0; k < rj.size(); ++k)
        m.rho.push_back(detail::number(rj[k], "rho[" + std::to_string(k) + "]"));
    if (m.rho.empty() || m.rho.size() % 2 == 0)
        detail::fail("rho", "length must be odd (2N-1), got " + std::to_string(m.rho.size()));
    return m;
}

// Coefficient tables ------------------------------------------------------

inline Json to_json(const CoefficientTable& c)
{
    Json out = Json::object();
    for (std::size_t k = 0; k < c.size(); ++k)
        out[index_at(k).to_string()] = c.values()[k];
    return out;
}

/// Accepts {"[n1,n2]": value, ...} optionally wrapped as {"residues": {...}}.
inline CoefficientTable coefficient_table_from_json(const Json& j, const std::string& field)
{
    const Json* src = &j;
    if (j.is_object() && j.contains("residues"))
        src = &j["residues"];
    if (!src->is_object())
        detail::fail(field, "expected an object keyed by \"[n1,n2]\"");
    int K = 0;
    std::vector<std::pair<MultiIndex, double>> entries;
    for (const auto& [key, value] : src->items())
    {
        if (key == "schema_version")
            continue;
        MultiIndex n;
        char tail = 0;
        if (std::sscanf(key.c_str(), "[%d,%d]%c", &n.n1, &n.n2, &tail) != 2 || !n.nonnegative() ||
            n.order() < 1)
            detail::fail(field + "." + key, "expected a key of the form \"[n1,n2]\" with |n| >= 1");
        entries.emplace_back(n, detail::number(value, field + "." + key));
        K = std::max(K, n.order());
    }
    CoefficientTable c(K);
    for (const auto& [n, v] : entries)
        c(n) = v;
    return c;
}

// Reports --------------------------------------------------------------------

inline Json witness_json(const Witness& w)
{
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return nullptr;
            else if constexpr (std::is_same_v<T, EigenvalueWitness>)
                return Json{{"kind", "eigenvalue"},
                            {"matrix", x.matrix},
                            {"eigenvalue", x.eigenvalue},
                            {"eigenvector", to_json(x.eigenvector)}};
            else if constexpr (std::is_same_v<T, EntryWitness>)
                return Json{{"kind", "entry"},   {"matrix", x.matrix},
                            {"row", to_json(x.row)}, {"col", to_json(x.col)},
                            {"lhs", to_json(x.lhs)}, {"rhs", to_json(x.rhs)}};
            else
                return Json{{"kind", "kernel_vector"},
                            {"kernel_eigenvalue", x.kernel_eigenvalue},
                            {"kernel_vector", to_json(x.kernel_vector)},
                            {"image", to_json(x.image)}};
        },
        w);
}

inline Json to_json(const VerdictReport& v)
{
    Json conds = Json::array();
    for (const auto& c : v.conditions)
        conds.push_back(Json{{"name", c.name},
                             {"passed", c.passed},
                             {"vacuous", c.vacuous},
                             {"margin", c.margin},
                             {"threshold", c.threshold},
                             {"witness", witness_json(c.witness)}});
    return Json{{"passed", v.passed}, {"conditions", std::move(conds)}};
}

inline Json to_json(const ExpansionReport& r, bool include_table = true)
{
    Json rays = Json::array();
    for (const auto& ray : r.rays)
        rays.push_back(Json{{"b", Json::array({ray.b1, ray.b2})},
                            {"aperture", ray.aperture},
                            {"final_scaled_error", ray.final_scaled_error},
                            {"decreasing", ray.decreasing},
                            {"passed", ray.passed}});
    Json levels = Json::array();
    for (const auto& l : r.levels)
        levels.push_back(Json{{"level", l.level},
                               {"condition", l.condition},
                               {"error_estimate", l.error_estimate},
                               {"converged", l.converged}});
    Json out{{"order", r.order},
             {"certified", r.certified},
             {"threshold", r.threshold},
             {"residues", to_json(r.residues)},
             {"rays", std::move(rays)}};
    if (!r.levels.empty())
        out["levels"] = std::move(levels);
    if (include_table)
    {
        Json table = Json::array();
        for (const auto& row : r.decay_table)
            table.push_back(Json::array({row.b1, row.b2, row.s, row.scaled_error}));
        out["decay_table"] = Json{{"columns", Json::array({"b1", "b2", "s", "scaled_error"})},
                                  {"rows", std::move(table)}};
    }
    return out;
}

inline Json to_json(const TypeOneReport& r)
{
    Json est = Json::array();
    for (std::size_t k = 0; k < r.estimates.size(); ++k)
        est.push_back(Json{{"s", r.s_values[k]},
                           {"estimate", to_json(Complex(static_cast<double>(r.estimates[k].real()),
                                                        static_cast<double>(r.estimates[k].imag())))}});
    return Json{{"type_one", r.type_one},
                {"limit", to_json(Complex(static_cast<double>(r.limit.real()),
                                          static_cast<double>(r.limit.imag())))},
                {"spread", r.spread},
                {"estimates", std::move(est)}};
}

inline Json to_json(const ResidueReport& r)
{
    return Json{{"residues", to_json(r.rho)},
                {"residues_inner_product", to_json(r.rho_inner_product)},
                {"discrepancy", r.discrepancy},
                {"max_imag", r.max_imag}};
}

inline Json to_json(const InvariantReport& r)
{
    return Json{{"y_hermitian", r.y_hermitian},       {"a_hermitian", r.a_hermitian},
                {"y_contraction", r.y_contraction},   {"corners", r.corners},
                {"shift_relation", r.shift_relation}, {"alpha_sum", r.alpha_sum}};
}

} // namespace hvms::json_io

#endif // HVMS_JSON_IO_HPP
