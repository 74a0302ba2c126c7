#include "ssmp/io.hpp"
#include "ssmp/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace ssmp {

using nlohmann::json;

namespace {

json parse_text(const std::string& text, const char* what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Validation, std::string("malformed ") + what + " JSON: " + e.what());
    }
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx)
{
    if (!j.is_object())
        fail(ErrorKind::Validation, ctx + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            fail(ErrorKind::Validation, "unknown key '" + it.key() + "' in " + ctx);
}

double number(const json& j, const std::string& key, const std::string& ctx)
{
    if (!j.contains(key))
        fail(ErrorKind::Validation, ctx + " is missing '" + key + "'");
    if (!j.at(key).is_number())
        fail(ErrorKind::Validation, "'" + key + "' in " + ctx + " must be a number");
    return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& key, double fallback, const std::string& ctx)
{
    return j.contains(key) ? number(j, key, ctx) : fallback;
}

std::vector<Atom> parse_atoms(const json& j, const std::string& ctx)
{
    if (!j.is_array())
        fail(ErrorKind::Validation, ctx + " atoms must be an array");
    std::vector<Atom> atoms;
    for (const json& a : j) {
        check_keys(a, {"location", "mass"}, ctx + " atom");
        atoms.push_back({number(a, "location", ctx + " atom"), number(a, "mass", ctx + " atom")});
    }
    return atoms;
}

TabulatedDensity parse_density(const json& j, const std::string& ctx)
{
    check_keys(j, {"y_min", "y_max", "values", "lower_exponent", "upper_exponent"}, ctx);
    TabulatedDensity d;
    d.y_min = number(j, "y_min", ctx);
    d.y_max = number(j, "y_max", ctx);
    d.lower_exponent = number(j, "lower_exponent", ctx);
    d.upper_exponent = number(j, "upper_exponent", ctx);
    if (!j.contains("values") || !j.at("values").is_array())
        fail(ErrorKind::Validation, ctx + " needs a 'values' array");
    for (const json& v : j.at("values")) {
        if (!v.is_number())
            fail(ErrorKind::Validation, ctx + " values must be numbers");
        d.values.push_back(v.get<double>());
    }
    return d;
}

TailMetadata parse_metadata(const json& j)
{
    const std::string ctx = "metadata";
    check_keys(j, {"nu_bar_finite", "nu_bar_at_zero", "rv_index", "quasi_monotone", "mass_m"}, ctx);
    TailMetadata m;
    if (j.contains("nu_bar_finite")) {
        if (!j.at("nu_bar_finite").is_boolean())
            fail(ErrorKind::Validation, "nu_bar_finite must be a boolean");
        m.nu_bar_finite = j.at("nu_bar_finite").get<bool>();
    }
    m.nu_bar_at_zero = number_or(j, "nu_bar_at_zero", 0.0, ctx);
    if (j.contains("rv_index"))
        m.rv_index = number(j, "rv_index", ctx);
    if (j.contains("quasi_monotone")) {
        if (!j.at("quasi_monotone").is_boolean())
            fail(ErrorKind::Validation, "quasi_monotone must be a boolean");
        m.quasi_monotone = j.at("quasi_monotone").get<bool>();
    }
    if (j.contains("mass_m"))
        m.mass_m = number(j, "mass_m", ctx);
    return m;
}

BernsteinFunction family_from(const json& j)
{
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
        fail(ErrorKind::Validation, "family JSON needs a string 'family'");
    std::string name = j.at("family").get<std::string>();
    const std::string ctx = "family '" + name + "'";
    auto keys = [&](std::set<std::string> k) {
        k.insert("family");
        k.insert("metadata");
        check_keys(j, k, ctx);
    };
    auto finish = [&](BernsteinFunction f) {
        if (j.contains("metadata"))
            return f.with_metadata(parse_metadata(j.at("metadata")));
        return f;
    };
    if (name == "drift") {
        keys({"d"});
        return finish(BernsteinFunction::drift_only(number_or(j, "d", 1.0, ctx)));
    }
    if (name == "affine") {
        keys({"d", "c"});
        return finish(BernsteinFunction::affine(number(j, "d", ctx), number(j, "c", ctx)));
    }
    if (name == "stable") {
        keys({"beta"});
        return finish(BernsteinFunction::stable(number(j, "beta", ctx)));
    }
    if (name == "gamma-ratio-plus") {
        keys({"alpha_tilde"});
        return finish(BernsteinFunction::gamma_ratio_plus(number(j, "alpha_tilde", ctx)));
    }
    if (name == "gamma-ratio-minus") {
        keys({"alpha", "rho"});
        return finish(BernsteinFunction::gamma_ratio_minus(number(j, "alpha", ctx), number(j, "rho", ctx)));
    }
    if (name == "compound-poisson") {
        keys({"phi0", "drift", "atoms"});
        if (!j.contains("atoms"))
            fail(ErrorKind::Validation, ctx + " is missing 'atoms'");
        return finish(BernsteinFunction::compound_poisson(number_or(j, "phi0", 0.0, ctx),
                                                          number_or(j, "drift", 0.0, ctx),
                                                          parse_atoms(j.at("atoms"), ctx)));
    }
    if (name == "tabulated-density") {
        keys({"phi0", "drift", "density"});
        if (!j.contains("density"))
            fail(ErrorKind::Validation, ctx + " is missing 'density'");
        return finish(BernsteinFunction::tabulated(number_or(j, "phi0", 0.0, ctx), number_or(j, "drift", 0.0, ctx),
                                                   parse_density(j.at("density"), ctx + " density")));
    }
    fail(ErrorKind::Validation, "unknown family '" + name + "'");
}

LevyQuadruplet quadruplet_from(const json& j)
{
    const std::string ctx = "quadruplet";
    check_keys(j, {"psi0", "b", "sigma2", "mu"}, ctx);
    LevyMeasure mu;
    if (j.contains("mu")) {
        const json& m = j.at("mu");
        check_keys(m, {"atoms", "positive", "negative"}, "mu");
        if (m.contains("atoms"))
            mu.atoms = parse_atoms(m.at("atoms"), "mu");
        if (m.contains("positive"))
            mu.positive = parse_density(m.at("positive"), "mu.positive");
        if (m.contains("negative"))
            mu.negative = parse_density(m.at("negative"), "mu.negative");
    }
    return LevyQuadruplet(number_or(j, "psi0", 0.0, ctx), number_or(j, "b", 0.0, ctx),
                          number_or(j, "sigma2", 0.0, ctx), std::move(mu));
}

WienerHopfPair pair_from(const json& j)
{
    check_keys(j, {"plus", "minus"}, "pair");
    if (!j.contains("plus") || !j.contains("minus"))
        fail(ErrorKind::Validation, "pair needs 'plus' and 'minus'");
    return {family_from(j.at("plus")), family_from(j.at("minus"))};
}

std::string fmt17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

double parse_double(const std::string& s, const std::string& ctx)
{
    const char* b = s.c_str();
    char* e = nullptr;
    double v = std::strtod(b, &e);
    if (e == b || *e != '\0')
        fail(ErrorKind::Validation, "cannot read number '" + s + "' in " + ctx);
    return v;
}

} // namespace

BernsteinFunction parse_family(const std::string& text)
{
    return family_from(parse_text(text, "family"));
}

Exponent parse_exponent(const std::string& text)
{
    json j = parse_text(text, "exponent");
    check_keys(j, {"pair", "quadruplet"}, "exponent");
    bool has_pair = j.contains("pair"), has_quad = j.contains("quadruplet");
    if (has_pair && has_quad)
        return Exponent(quadruplet_from(j.at("quadruplet")), pair_from(j.at("pair")));
    if (has_pair)
        return Exponent(pair_from(j.at("pair")));
    if (has_quad)
        return Exponent(quadruplet_from(j.at("quadruplet")));
    fail(ErrorKind::Validation, "exponent needs 'pair' or 'quadruplet'");
}

GridSpec parse_grid(const std::string& text)
{
    json j = parse_text(text, "grid");
    check_keys(j, {"x_min", "x_max", "n"}, "grid");
    GridSpec g;
    g.x_min = number_or(j, "x_min", g.x_min, "grid");
    g.x_max = number_or(j, "x_max", g.x_max, "grid");
    if (j.contains("n")) {
        if (!j.at("n").is_number_integer())
            fail(ErrorKind::Validation, "grid 'n' must be an integer");
        g.n = j.at("n").get<int>();
    }
    validate_grid(g);
    return g;
}

std::string report_json(const SpectrumReport& r)
{
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["branch"] = r.branch;
    j["theta_plus_lower"] = r.theta_plus.lower;
    j["theta_plus_upper"] = r.theta_plus.upper;
    j["theta_plus_err"] = r.theta_plus_err;
    j["theta_minus_lower"] = r.theta_minus.lower;
    j["theta_minus_upper"] = r.theta_minus.upper;
    j["theta_minus_err"] = r.theta_minus_err;
    j["l2_mass_m"] = r.l2_mass_m;
    j["l2_m_finite"] = r.l2_m_finite;
    j["l2_mass_inv"] = r.l2_mass_inv;
    j["l2_inv_finite"] = r.l2_inv_finite;
    j["slope_m"] = r.slope_m;
    j["bounded_above"] = r.bounded_above;
    j["bounded_below"] = r.bounded_below;
    j["table_rule_fired"] = r.table_rule_fired ? json(*r.table_rule_fired) : json(nullptr);
    j["grid_x_min"] = r.evidence_grid.x_min;
    j["grid_x_max"] = r.evidence_grid.x_max;
    j["grid_n"] = r.evidence_grid.n;
    return j.dump();
}

void write_csv(const std::string& path, const CsvTable& table)
{
    require(table.columns.size() == table.header.size(), "CSV header and column count differ");
    std::size_t rows = table.rows();
    for (const auto& c : table.columns)
        require(c.size() == rows, "CSV columns differ in length");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
    for (std::size_t k = 0; k < table.header.size(); ++k)
        out << (k ? "," : "") << table.header[k];
    out << '\n';
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < table.columns.size(); ++k)
            out << (k ? "," : "") << fmt17(table.columns[k][i]);
        out << '\n';
    }
    if (!out)
        fail(ErrorKind::Io, "write to '" + path + "' failed");
}

CsvTable read_csv(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
    CsvTable t;
    std::string line;
    if (!std::getline(in, line))
        fail(ErrorKind::Io, "'" + path + "' is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    t.header = split(line, ',');
    t.columns.assign(t.header.size(), {});
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cells = split(line, ',');
        std::string ctx = path + ":" + std::to_string(lineno);
        if (cells.size() != t.header.size())
            fail(ErrorKind::Validation, ctx + " has the wrong number of fields");
        for (std::size_t k = 0; k < cells.size(); ++k)
            t.columns[k].push_back(parse_double(cells[k], ctx));
    }
    return t;
}

namespace {

std::vector<std::string> spec_fields(const std::string& spec)
{
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    if (kind == "csv")
        return {kind, colon == std::string::npos ? "" : spec.substr(colon + 1)};
    return split(spec, ':');
}

GridFunction read_grid_csv(const std::string& path, const GridSpec& grid)
{
    CsvTable t = read_csv(path);
    if (t.header != std::vector<std::string>{"x", "re", "im"})
        fail(ErrorKind::Validation, "'" + path + "' must have columns x,re,im");
    if (t.rows() != std::size_t(grid.n))
        fail(ErrorKind::Validation, "'" + path + "' has " + std::to_string(t.rows()) + " rows, grid has " +
                                        std::to_string(grid.n));
    GridFunction f{grid, std::vector<cplx>(grid.n)};
    for (int j = 0; j < grid.n; ++j) {
        if (std::abs(t.columns[0][j] - grid.x(j)) > 1e-9 * grid.dx())
            fail(ErrorKind::Validation, "'" + path + "' x column does not match the grid");
        f.values[j] = cplx(t.columns[1][j], t.columns[2][j]);
    }
    return f;
}

} // namespace

GridFunction function_on_grid(const std::string& spec, const GridSpec& grid)
{
    validate_grid(grid);
    std::vector<std::string> p = spec_fields(spec);
    const std::string& kind = p[0];
    if (kind == "h" && p.size() == 3)
        return h_fixture(grid, parse_double(p[1], spec), parse_double(p[2], spec));
    if (kind == "gauss" && p.size() == 2)
        return gaussian(grid, parse_double(p[1], spec));
    if (kind == "csv" && p.size() == 2 && !p[1].empty())
        return read_grid_csv(p[1], grid);
    fail(ErrorKind::Validation, "unknown function spec '" + spec + "' (want h:eps:beta, gauss:a or csv:path)");
}

std::function<double(double)> function_on_r(const std::string& spec, const GridSpec* grid)
{
    std::vector<std::string> p = spec_fields(spec);
    const std::string& kind = p[0];
    if (kind == "r" && p.size() == 1)
        return [](double r) { return r; };
    if (kind == "h" && p.size() == 3) {
        double eps = parse_double(p[1], spec), beta = parse_double(p[2], spec);
        return [=](double r) { return h_fixture(eps, beta, std::log(r)); };
    }
    if (kind == "gauss" && p.size() == 2) {
        double a = parse_double(p[1], spec);
        return [=](double r) {
            double u = std::log(r) - a;
            return std::exp(-u * u);
        };
    }
    if (kind == "csv" && p.size() == 2 && !p[1].empty()) {
        if (!grid)
            fail(ErrorKind::Validation, "csv function specs need a grid");
        GridFunction f = read_grid_csv(p[1], *grid);
        return [f](double r) { return interpolate(f, std::log(r)).real(); };
    }
    fail(ErrorKind::Validation, "unknown function spec '" + spec + "' (want r, h:eps:beta, gauss:a or csv:path)");
}

} // namespace ssmp
