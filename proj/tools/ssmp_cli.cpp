#include "ssmp/ssmp.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

const int exit_ok = 0;
const int exit_validation = 2;
const int exit_inconclusive = 3;
const int exit_numerical = 4;
const int exit_internal = 1;

struct Failure {
    int status;
    std::string message;
};

int exit_code(int status)
{
    switch (status) {
    case SSMP_OK:
        return exit_ok;
    case SSMP_QUADRATURE:
    case SSMP_CONVERGENCE:
    case SSMP_BRANCH:
    case SSMP_OVERFLOW:
        return exit_numerical;
    case SSMP_INTERNAL:
        return exit_internal;
    default:
        return exit_validation;
    }
}

void check(int status)
{
    if (status != SSMP_OK)
        throw Failure{status, ssmp_last_error()};
}

[[noreturn]] void invalid(const std::string& msg)
{
    throw Failure{SSMP_INVALID, msg};
}

// "@path" reads the argument from a file
std::string inline_or_file(const std::string& v)
{
    if (v.empty() || v[0] != '@')
        return v;
    std::ifstream in(v.substr(1), std::ios::binary);
    if (!in)
        throw Failure{SSMP_IO, "cannot read '" + v.substr(1) + "'"};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ExponentHandle {
    ssmp_exponent* e = nullptr;
    ~ExponentHandle() { ssmp_exponent_free(e); }
};

struct ExponentArgs {
    std::string exponent, pair, quadruplet;

    void add(CLI::App* app, bool with_quadruplet = true)
    {
        app->add_option("--exponent", exponent, "exponent JSON {\"pair\":…} and/or {\"quadruplet\":…}");
        app->add_option("--pair", pair, "pair JSON {\"plus\":<family>,\"minus\":<family>}");
        if (with_quadruplet)
            app->add_option("--quadruplet", quadruplet, "quadruplet JSON {\"psi0\",\"b\",\"sigma2\",\"mu\"}");
    }

    void load(ExponentHandle& h) const
    {
        std::string text;
        if (!exponent.empty()) {
            if (!pair.empty() || !quadruplet.empty())
                invalid("--exponent excludes --pair and --quadruplet");
            text = inline_or_file(exponent);
        } else {
            if (pair.empty() && quadruplet.empty())
                invalid("an exponent is required (--pair, --quadruplet or --exponent)");
            std::string body;
            if (!pair.empty())
                body += "\"pair\":" + inline_or_file(pair);
            if (!quadruplet.empty())
                body += std::string(body.empty() ? "" : ",") + "\"quadruplet\":" + inline_or_file(quadruplet);
            text = "{" + body + "}";
        }
        check(ssmp_exponent_from_json(text.c_str(), &h.e));
    }
};

ssmp_grid load_grid(const std::string& text)
{
    if (text.empty())
        return ssmp_default_grid();
    ssmp_grid g;
    check(ssmp_grid_from_json(inline_or_file(text).c_str(), &g));
    return g;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<const std::vector<double>*>& cols)
{
    std::vector<const char*> h;
    std::vector<const double*> c;
    for (const auto& s : header)
        h.push_back(s.c_str());
    for (const auto* v : cols)
        c.push_back(v->data());
    std::size_t rows = cols.empty() ? 0 : cols[0]->size();
    check(ssmp_write_csv(path.c_str(), h.size(), h.data(), rows, c.data()));
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Failure{SSMP_IO, "cannot open '" + path + "' for writing"};
    out << text << '\n';
}

std::vector<double> grid_x(ssmp_grid g)
{
    std::vector<double> x(g.n);
    check(ssmp_grid_points(g, x.data(), nullptr));
    return x;
}

struct Sampled {
    std::vector<double> re, im;
};

Sampled sample(const std::string& spec, ssmp_grid g)
{
    Sampled s{std::vector<double>(g.n), std::vector<double>(g.n)};
    check(ssmp_sample(spec.c_str(), g, s.re.data(), s.im.data()));
    return s;
}

// --- commands ---

struct BgammaCmd {
    std::string family, out;
    double a = 0.5, xi_min = -30.0, xi_max = 30.0, tol = 1e-8;
    int points = 121;

    void add(CLI::App& root)
    {
        CLI::App* c = root.add_subcommand("bgamma", "W_phi(a + i xi) on a vertical line; CSV xi,re,im,abs");
        c->add_option("--family", family, "Bernstein family JSON")->required();
        c->add_option("--a", a, "real part of the line");
        c->add_option("--xi-min", xi_min);
        c->add_option("--xi-max", xi_max);
        c->add_option("--points", points)->check(CLI::Range(1, 1000000));
        c->add_option("--tol-w", tol, "Bernstein-gamma tolerance");
        c->add_option("--out", out, "output CSV")->required();
        c->callback([this] { run(); });
    }

    void run()
    {
        ssmp_bernstein* phi = nullptr;
        check(ssmp_bernstein_from_json(inline_or_file(family).c_str(), &phi));
        std::unique_ptr<ssmp_bernstein, void (*)(ssmp_bernstein*)> guard(phi, ssmp_bernstein_free);
        std::vector<double> xi(points), re(points, a), wr(points), wi(points), ab(points);
        for (int k = 0; k < points; ++k)
            xi[k] = points == 1 ? xi_min : xi_min + (xi_max - xi_min) * k / (points - 1);
        check(ssmp_bgamma(phi, tol, points, re.data(), xi.data(), wr.data(), wi.data()));
        for (int k = 0; k < points; ++k)
            ab[k] = std::hypot(wr[k], wi[k]);
        write_csv(out, {"xi", "re", "im", "abs"}, {&xi, &wr, &wi, &ab});
    }
};

struct MultiplierCmd {
    ExponentArgs ex;
    std::string grid, out, kind = "H";
    double tol = 1e-8;

    void add(CLI::App& root)
    {
        CLI::App* c = root.add_subcommand("multiplier", "H or Lambda multiplier on the grid; CSV xi,re,im,abs");
        ex.add(c, false);
        c->add_option("--grid", grid, "grid JSON {\"x_min\",\"x_max\",\"n\"}");
        c->add_option("--kind", kind)->check(CLI::IsMember({"H", "Lambda"}));
        c->add_option("--tol-w", tol, "Bernstein-gamma tolerance");
        c->add_option("--out", out, "output CSV")->required();
        c->callback([this] { run(); });
    }

    void run()
    {
        ExponentHandle h;
        ex.load(h);
        ssmp_grid g = load_grid(grid);
        std::vector<double> xi(g.n), re(g.n), im(g.n), ab(g.n);
        check(ssmp_grid_points(g, nullptr, xi.data()));
        check(ssmp_multiplier(h.e, g, kind == "H" ? SSMP_MULTIPLIER_H : SSMP_MULTIPLIER_LAMBDA, tol, re.data(),
                              im.data()));
        for (int k = 0; k < g.n; ++k)
            ab[k] = std::hypot(re[k], im[k]);
        write_csv(out, {"xi", "re", "im", "abs"}, {&xi, &re, &im, &ab});
    }
};

struct ClassifyCmd {
    ExponentArgs ex;
    std::string grid, out;
    double xi_max = 100.0;
    int* exit_status;

    explicit ClassifyCmd(int* status) : exit_status(status) {}

    void add(CLI::App& root)
    {
        CLI::App* c = root.add_subcommand("classify", "spectrum verdict; JSON report (stdout or --out) and a table");
        ex.add(c, false);
        c->add_option("--grid", grid, "grid JSON");
        c->add_option("--xi-max", xi_max, "largest frequency of the Theta samples");
        c->add_option("--out", out, "output JSON; the table then goes to stdout");
        c->callback([this] { run(); });
    }

    void run()
    {
        ExponentHandle h;
        ex.load(h);
        int verdict = 0;
        std::size_t len = 0;
        check(ssmp_classify(h.e, load_grid(grid), xi_max, &verdict, nullptr, 0, &len));
        std::string buf(len + 1, '\0');
        check(ssmp_classify(h.e, load_grid(grid), xi_max, &verdict, buf.data(), buf.size(), &len));
        buf.resize(len);
        write_text(out, buf);
        json r = json::parse(buf);
        std::ostream& table = out.empty() ? std::cerr : std::cout;
        for (auto it = r.begin(); it != r.end(); ++it)
            table << std::left << std::setw(20) << it.key() << ' ' << it.value().dump() << '\n';
        if (verdict == SSMP_VERDICT_INCONCLUSIVE)
            *exit_status = exit_inconclusive;
    }
};

struct EigenfnCmd {
    ExponentArgs ex;
    std::string grid, out, method = "fft", variant = "statement";

    void add(CLI::App& root)
    {
        CLI::App* c = root.add_subcommand("eigenfn", "eigenfunction J on the grid; CSV x,J");
        ex.add(c, false);
        c->add_option("--grid", grid, "grid JSON");
        c->add_option("--method", method)->check(CLI::IsMember({"series", "wright", "fft"}));
        c->add_option("--variant", variant, "Wright argument scaling")
            ->check(CLI::IsMember({"statement", "proof"}));
        c->add_option("--out", out, "output CSV")->required();
        c->callback([this] { run(); });
    }

    void run()
    {
        ExponentHandle h;
        ex.load(h);
        ssmp_grid g = load_grid(grid);
        int m = method == "series" ? SSMP_EIGEN_SERIES : method == "wright" ? SSMP_EIGEN_WRIGHT : SSMP_EIGEN_FFT;
        std::vector<double> x = grid_x(g), J(g.n);
        check(ssmp_eigenfunction(h.e, g, m, variant == "proof" ? 1 : 0, J.data()));
        int lost = 0;
        for (double v : J)
            lost += std::isnan(v) ? 1 : 0;
        if (lost)
            std::cerr << lost << " grid points left as nan: the series cannot be certified there\n";
        write_csv(out, {"x", "J"}, {&x, &J});
    }
};

struct EvolveCmd {
    ExponentArgs ex;
    std::string grid, out, f;
    double t = 0.0, tail = 1e-6;
    bool force = false;

    void add(CLI::App& root)
    {
        CLI::App* c = root.add_subcommand("evolve", "P_t f by diagonalization; CSV x,re,im");
        ex.add(c);
        c->add_option("--t", t)->required()->check(CLI::NonNegativeNumber);
        c->add_option("--f", f, "h:eps:beta | gauss:a | csv:path")->required();
        c->add_option("--grid", grid, "grid JSON");
        c->add_option("--tail-fraction", tail, "domain gate threshold");
        c->add_flag("--force", force, "evaluate even outside the discretized domain");
        c->add_option("--out", out, "output CSV")->required();
        c->callback([this] { run(); });
    }

    void run()
    {
        ExponentHandle h;
        ex.load(h);
        ssmp_grid g = load_grid(grid);
        Sampled in = sample(f, g);
        std::vector<double> x = grid_x(g), re(g.n), im(g.n);
        int warn = 0;
        check(ssmp_evolve(h.e, g, t, in.re.data(), in.im.data(), force, tail, re.data(), im.data(), &warn));
        if (warn)
            std::cerr << "warning: input or output spectrum is near the grid resolution limit\n";
        write_csv(out, {"x", "re", "im"}, {&x, &re, &im});
    }
};

struct SimulateCmd {
    ExponentArgs ex;
    std::string f, out, grid;
    double x = 1.0, t = 0.0;
    ssmp_sim_config cfg = ssmp_default_sim_config();

    void add(CLI::App& root)
    {
        CLI::App* c = root.add_subcommand("simulate", "Monte Carlo E_x[f(X_t)]; JSON {mean,stderr,n,absorbed_fraction}");
        ex.add(c);
        c->add_option("--x", x, "starting point on the r scale (> 0)")->required();
        c->add_option("--t", t)->required()->check(CLI::NonNegativeNumber);
        c->add_option("--f", f, "r | h:eps:beta | gauss:a | csv:path (log-scale specs read at log r)")->required();
        c->add_option("--paths", cfg.n_paths);
        c->add_option("--dt", cfg.dt);
        c->add_option("--jump-eps", cfg.jump_eps);
        c->add_option("--t-max", cfg.t_max, "longest Levy horizon");
        c->add_option("--seed", cfg.seed);
        c->add_option("--grid", grid, "grid JSON for csv:path");
        c->add_option("--out", out, "output JSON (default stdout)");
        c->callback([this] { run(); });
    }

    void run()
    {
        ExponentHandle h;
        ex.load(h);
        ssmp_grid g{};
        if (!grid.empty())
            g = load_grid(grid);
        ssmp_estimate est;
        check(ssmp_simulate(h.e, f.c_str(), grid.empty() ? nullptr : &g, x, t, &cfg, &est));
        json j = {{"mean", est.mean}, {"stderr", est.stderr_}, {"n", est.n_effective},
                  {"absorbed_fraction", est.absorbed_fraction}};
        write_text(out, j.dump());
    }
};

struct GeneratorCheckCmd {
    ExponentArgs ex;
    std::string grid, out, f = "gauss:0";

    void add(CLI::App& root)
    {
        CLI::App* c = root.add_subcommand("generator-check",
                                          "PDO vs IDO generator on f; CSV x,pdo_re,pdo_im,ido_re,ido_im,abs_diff");
        ex.add(c);
        c->add_option("--f", f, "h:eps:beta | gauss:a | csv:path");
        c->add_option("--grid", grid, "grid JSON");
        c->add_option("--out", out, "output CSV")->required();
        c->callback([this] { run(); });
    }

    void run()
    {
        ExponentHandle h;
        ex.load(h);
        ssmp_grid g = load_grid(grid);
        Sampled in = sample(f, g);
        std::vector<double> x = grid_x(g), pr(g.n), pi(g.n), ir(g.n), ii(g.n), d(g.n);
        check(ssmp_generator_check(h.e, g, in.re.data(), in.im.data(), pr.data(), pi.data(), ir.data(),
                                   ii.data()));
        for (int j = 0; j < g.n; ++j)
            d[j] = std::hypot(pr[j] - ir[j], pi[j] - ii[j]);
        write_csv(out, {"x", "pdo_re", "pdo_im", "ido_re", "ido_im", "abs_diff"}, {&x, &pr, &pi, &ir, &ii, &d});
    }
};

// A config file holds "command" plus the command's flags as keys, with
// underscores for dashes; objects stand for JSON-valued flags.
std::vector<std::string> config_to_args(const std::string& path)
{
    json j;
    try {
        j = json::parse(inline_or_file("@" + path));
    } catch (const json::parse_error& e) {
        invalid(std::string("malformed config JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("command") || !j["command"].is_string())
        invalid("config needs a string 'command'");
    std::vector<std::string> args{j["command"].get<std::string>()};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "command")
            continue;
        std::string flag = "--" + it.key();
        for (char& ch : flag)
            if (ch == '_')
                ch = '-';
        const json& v = it.value();
        if (v.is_boolean()) {
            if (v.get<bool>())
                args.push_back(flag);
        } else {
            args.push_back(flag);
            args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        }
    }
    return args;
}

void emit_error(const std::string& kind, const std::string& msg, int code)
{
    json j = {{"error", kind}, {"message", msg}, {"exit_code", code}};
    std::cerr << j.dump() << '\n';
}

void build(CLI::App& app, int* status, std::vector<std::shared_ptr<void>>& keep)
{
    auto bg = std::make_shared<BgammaCmd>();
    bg->add(app);
    auto mu = std::make_shared<MultiplierCmd>();
    mu->add(app);
    auto cl = std::make_shared<ClassifyCmd>(status);
    cl->add(app);
    auto ef = std::make_shared<EigenfnCmd>();
    ef->add(app);
    auto ev = std::make_shared<EvolveCmd>();
    ev->add(app);
    auto si = std::make_shared<SimulateCmd>();
    si->add(app);
    auto gc = std::make_shared<GeneratorCheckCmd>();
    gc->add(app);
    keep = {bg, mu, cl, ef, ev, si, gc};
}

int dispatch(std::vector<std::string> args)
{
    int status = exit_ok;
    CLI::App app{"spectral-ssmp: spectral theory of positive self-similar Markov semigroups.\n"
                 "JSON-valued flags accept inline text or @file. SPECTRAL_SSMP_THREADS caps\n"
                 "the Monte Carlo worker count. Exit codes: 0 ok, 2 validation, 3 inconclusive\n"
                 "classification, 4 numerical failure."};
    app.require_subcommand(1);
    std::string config;
    app.add_option("--config", config, "run the command described by a JSON config file");
    std::vector<std::shared_ptr<void>> keep;
    build(app, &status, keep);
    try {
        std::reverse(args.begin(), args.end());
        if (args.size() >= 2 && args.back() == "--config") {
            args.pop_back();
            std::string path = args.back();
            args.pop_back();
            if (!args.empty())
                invalid("--config takes no further arguments");
            std::vector<std::string> a = config_to_args(path);
            std::reverse(a.begin(), a.end());
            args = a;
        }
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("validation", e.what(), exit_validation);
        return exit_validation;
    } catch (const Failure& f) {
        int code = exit_code(f.status);
        emit_error(ssmp_status_name(f.status), f.message, code);
        return code;
    } catch (const std::exception& e) {
        emit_error("internal", e.what(), exit_internal);
        return exit_internal;
    }
    return status;
}

} // namespace

int main(int argc, char** argv)
{
    return dispatch(std::vector<std::string>(argv + 1, argv + argc));
}
