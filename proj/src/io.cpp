#include "schurbd/io.hpp"

#include <cmath>
#include <numbers>

namespace schurbd {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw InputError(path + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object()) {
        fail(path, "expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        fail(path, "missing field '" + key + "'");
    }
    return *it;
}

double number(const Json& j, const std::string& path)
{
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    return j.get<double>();
}

Complex complex_from(const Json& j, const std::string& path)
{
    return {number(field(j, "re", path), path + ".re"), number(field(j, "im", path), path + ".im")};
}

std::vector<Complex> complex_list(const Json& j, const std::string& path)
{
    if (!j.is_array()) {
        fail(path, "expected an array");
    }
    std::vector<Complex> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(complex_from(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Json complex_list_json(const std::vector<Complex>& v)
{
    Json a = Json::array();
    for (auto z : v) {
        a.push_back(complex_to_json(z));
    }
    return a;
}

Json vector_json(const CVector& v)
{
    return complex_list_json(std::vector<Complex>(v.data(), v.data() + v.size()));
}

Json matrix_json(const CMatrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(complex_to_json(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

CVector vector_from(const Json& j, const std::string& path)
{
    const auto v = complex_list(j, path);
    CVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = v[i];
    }
    return out;
}

CMatrix matrix_from(const Json& j, Eigen::Index n, const std::string& path)
{
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
        fail(path, "expected " + std::to_string(n) + " rows");
    }
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::string rp = path + "[" + std::to_string(i) + "]";
        const auto row = complex_list(j[static_cast<std::size_t>(i)], rp);
        if (static_cast<Eigen::Index>(row.size()) != n) {
            fail(rp, "expected " + std::to_string(n) + " entries");
        }
        for (Eigen::Index k = 0; k < n; ++k) {
            m(i, k) = row[static_cast<std::size_t>(k)];
        }
    }
    return m;
}

Json coefficient_matrix_json(const CoefficientMatrix& S)
{
    return Json{{"t0", complex_to_json(S.t0())},
                {"n", S.n()},
                {"M", vector_json(S.M())},
                {"P", matrix_json(S.P())},
                {"Ptilde", matrix_json(S.Ptilde())},
                {"alpha", S.alpha()},
                {"beta", S.beta()}};
}

std::shared_ptr<const CoefficientMatrix> coefficient_matrix_from(const Json& j, const std::string& path)
{
    const Json& nj = field(j, "n", path);
    if (!nj.is_number_integer() || nj.get<int>() < 1) {
        fail(path + ".n", "expected a positive integer");
    }
    const int n = nj.get<int>();
    CVector M = vector_from(field(j, "M", path), path + ".M");
    if (M.size() != n) {
        fail(path + ".M", "expected " + std::to_string(n) + " entries");
    }
    CMatrix P = matrix_from(field(j, "P", path), n, path + ".P");
    CMatrix Pt = matrix_from(field(j, "Ptilde", path), n, path + ".Ptilde");
    const double alpha = number(field(j, "alpha", path), path + ".alpha");
    const double beta = number(field(j, "beta", path), path + ".beta");
    const Complex t0 = complex_from(field(j, "t0", path), path + ".t0");
    try {
        return std::make_shared<const CoefficientMatrix>(
            CoefficientMatrix::from_parts(t0, std::move(M), std::move(P), std::move(Pt), alpha, beta));
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

AnalyticFunction function_at(const Json& j, const std::string& path)
{
    const Json& kj = field(j, "kind", path);
    if (!kj.is_string()) {
        fail(path + ".kind", "expected a string");
    }
    const std::string kind = kj.get<std::string>();
    try {
        if (kind == "constant") {
            return AnalyticFunction::constant(complex_from(field(j, "value", path), path + ".value"));
        }
        if (kind == "polynomial") {
            return AnalyticFunction::polynomial(complex_from(field(j, "center", path), path + ".center"),
                                                complex_list(field(j, "coeffs", path), path + ".coeffs"));
        }
        if (kind == "rational") {
            const Json& sj = field(j, "shift", path);
            if (!sj.is_number_unsigned()) {
                fail(path + ".shift", "expected a non-negative integer");
            }
            return AnalyticFunction::rational(complex_from(field(j, "center", path), path + ".center"),
                                              complex_list(field(j, "poly", path), path + ".poly"),
                                              sj.get<std::size_t>(),
                                              complex_list(field(j, "num", path), path + ".num"),
                                              complex_list(field(j, "den", path), path + ".den"));
        }
        if (kind == "blaschke") {
            return AnalyticFunction::blaschke(complex_from(field(j, "gamma", path), path + ".gamma"),
                                              complex_list(field(j, "zeros", path), path + ".zeros"));
        }
        if (kind == "lft") {
            return AnalyticFunction::lft(coefficient_matrix_from(field(j, "S", path), path + ".S"),
                                         function_at(field(j, "param", path), path + ".param"));
        }
        if (kind == "lft_inverse") {
            return AnalyticFunction::lft_inverse(coefficient_matrix_from(field(j, "S", path), path + ".S"),
                                                 function_at(field(j, "f", path), path + ".f"));
        }
    } catch (const InputError&) {
        throw;
    } catch (const Error& e) {
        fail(path, e.what());
    }
    fail(path + ".kind", "unknown kind '" + kind + "'");
}

Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("$: malformed JSON: ") + e.what());
    }
}

} // namespace

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

ProblemFile problem_from_json(const Json& j)
{
    ProblemFile p;
    const Json& tj = field(j, "t0", "$");
    Complex t0;
    if (tj.is_object() && tj.contains("angle")) {
        p.angle = number(tj["angle"], "$.t0.angle");
        t0 = std::polar(1.0, *p.angle);
    } else {
        t0 = complex_from(tj, "$.t0");
        const double dev = std::abs(std::abs(t0) - 1.0);
        if (dev > 1e-9) {
            fail("$.t0", "t0 not unimodular");
        }
        if (dev > 1e-12) {
            t0 /= std::abs(t0);
        }
    }
    std::vector<Complex> s = complex_list(field(j, "s", "$"), "$.s");
    if (s.empty()) {
        fail("$.s", "at least one coefficient is required");
    }
    if (j.contains("tol")) {
        p.tol = number(j["tol"], "$.tol");
        if (!(*p.tol > 0.0)) {
            fail("$.tol", "must be positive");
        }
    }
    if (j.contains("samples")) {
        if (!j["samples"].is_number_integer() || j["samples"].get<int>() < 0) {
            fail("$.samples", "expected a nonnegative integer");
        }
        p.samples = j["samples"].get<int>();
    }
    p.data = BoundaryJet(t0, std::move(s));
    return p;
}

ProblemFile parse_problem(std::string_view text) { return problem_from_json(parse_json(text)); }

Json problem_to_json(const ProblemFile& p)
{
    Json j;
    j["t0"] = p.angle ? Json{{"angle", *p.angle}} : complex_to_json(p.data.t0());
    j["s"] = complex_list_json(p.data.s());
    if (p.tol) {
        j["tol"] = *p.tol;
    }
    if (p.samples) {
        j["samples"] = *p.samples;
    }
    return j;
}

std::string serialize_problem(const ProblemFile& p) { return problem_to_json(p).dump(2); }

Json function_to_json(const AnalyticFunction& f)
{
    using AF = AnalyticFunction;
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, AF::Constant>) {
                return Json{{"kind", "constant"}, {"value", complex_to_json(v.value)}};
            } else if constexpr (std::is_same_v<T, AF::Polynomial>) {
                return Json{{"kind", "polynomial"}, {"center", complex_to_json(v.center)},
                            {"coeffs", complex_list_json(v.coeffs)}};
            } else if constexpr (std::is_same_v<T, AF::Rational>) {
                return Json{{"kind", "rational"}, {"center", complex_to_json(v.center)},
                            {"poly", complex_list_json(v.poly)}, {"shift", v.shift},
                            {"num", complex_list_json(v.num)}, {"den", complex_list_json(v.den)}};
            } else if constexpr (std::is_same_v<T, AF::BlaschkeProduct>) {
                return Json{{"kind", "blaschke"}, {"gamma", complex_to_json(v.gamma)},
                            {"zeros", complex_list_json(v.zeros)}};
            } else if constexpr (std::is_same_v<T, AF::LftComposite>) {
                return Json{{"kind", "lft"}, {"S", coefficient_matrix_json(*v.S)},
                            {"param", function_to_json(*v.param)}};
            } else {
                return Json{{"kind", "lft_inverse"}, {"S", coefficient_matrix_json(*v.S)},
                            {"f", function_to_json(*v.f)}};
            }
        },
        f.variant());
}

AnalyticFunction function_from_json(const Json& j) { return function_at(j, "$"); }

AnalyticFunction parse_function(std::string_view text) { return function_from_json(parse_json(text)); }

std::string serialize_function(const AnalyticFunction& f) { return function_to_json(f).dump(2); }

Json classification_to_json(const Classification& c)
{
    Json j;
    j["verdict"] = std::string(to_string(c.verdict));
    j["case_tag"] = std::string(to_string(c.case_tag));
    j["n"] = c.n;
    j["rank"] = c.rank ? Json(*c.rank) : Json(nullptr);
    j["u"] = c.u ? Json(*c.u) : Json(nullptr);
    Json orders = Json::array();
    for (std::size_t k = 0; k < c.diagnostics.size(); ++k) {
        const PsdReport& r = c.diagnostics[k];
        orders.push_back(Json{{"order", k + 1},
                              {"hermitian", r.hermitian},
                              {"herm_residual", r.herm_residual},
                              {"min_eig", r.min_eig},
                              {"rank", r.rank},
                              {"fragile", r.fragile}});
    }
    j["orders"] = std::move(orders);
    j["fragile"] = c.fragile;
    j["tol"] = c.tol;
    j["reason"] = c.reason;
    return j;
}

Json verification_to_json(const VerificationReport& r)
{
    Json ratios = Json::array();
    for (auto [d, q] : r.remainder_ratios) {
        ratios.push_back(Json{{"delta", d}, {"ratio", q}});
    }
    return Json{{"passed", r.passed},
                {"fitted_decay_exponent",
                 std::isfinite(r.fitted_decay_exponent) ? Json(r.fitted_decay_exponent) : Json(nullptr)},
                {"supnorm", r.supnorm},
                {"jet_checked", r.jet_checked},
                {"jet_error", r.jet_error},
                {"remainder_ratios", std::move(ratios)},
                {"details", r.details}};
}

Json function_samples(const AnalyticFunction& f, Complex t0, int count)
{
    Json circle = Json::array();
    for (int k = 0; k < count; ++k) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / count);
        circle.push_back(Json{{"z", complex_to_json(z)}, {"f", complex_to_json(f.eval(z))}});
    }
    Json radial = Json::array();
    for (int k = 1; k <= 24; ++k) {
        const double delta = std::ldexp(1.0, -k);
        const Complex z = t0 * (1.0 - delta);
        radial.push_back(Json{{"delta", delta}, {"z", complex_to_json(z)}, {"f", complex_to_json(f.eval(z))}});
    }
    return Json{{"circle", std::move(circle)}, {"radial", std::move(radial)}};
}

} // namespace schurbd
