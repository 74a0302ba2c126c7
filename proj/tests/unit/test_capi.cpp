#include "doctest.h"

#include "ssmp/ssmp.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const char* id_pair = R"({"pair":{"plus":{"family":"drift"},"minus":{"family":"drift"}}})";

struct Handle {
    ssmp_exponent* e = nullptr;
    explicit Handle(const char* json) { REQUIRE(ssmp_exponent_from_json(json, &e) == SSMP_OK); }
    ~Handle() { ssmp_exponent_free(e); }
};

} // namespace

TEST_CASE("status reporting")
{
    CHECK(std::string(ssmp_status_name(SSMP_OK)) != "");
    CHECK(std::string(ssmp_status_name(SSMP_DOMAIN)) != std::string(ssmp_status_name(SSMP_INVALID)));
    CHECK(std::string(ssmp_verdict_name(SSMP_VERDICT_CONTINUOUS)) == "Continuous");

    ssmp_exponent* e = nullptr;
    CHECK(ssmp_exponent_from_json("{\"pair\":", &e) == SSMP_INVALID);
    CHECK(e == nullptr);
    CHECK(std::strlen(ssmp_last_error()) > 0);
    CHECK(ssmp_exponent_from_json(R"({"pair":{"plus":{"family":"drift"}}})", &e) == SSMP_INVALID);

    double re, im;
    CHECK(ssmp_exponent_psi(nullptr, 1.0, &re, &im) == SSMP_INVALID);
    ssmp_exponent_free(nullptr);
    ssmp_bernstein_free(nullptr);

    ssmp_grid bad{0.0, -1.0, 1024};
    std::vector<double> x(1024);
    CHECK(ssmp_grid_points(bad, x.data(), nullptr) == SSMP_INVALID);
}

TEST_CASE("defaults and grid points")
{
    ssmp_grid g = ssmp_default_grid();
    CHECK(g.x_min == -20.0);
    CHECK(g.x_max == 40.0);
    CHECK(g.n == 4096);
    std::vector<double> x(g.n), xi(g.n);
    REQUIRE(ssmp_grid_points(g, x.data(), xi.data()) == SSMP_OK);
    CHECK(x[0] == g.x_min);
    CHECK(x[1] - x[0] == doctest::Approx((g.x_max - g.x_min) / g.n));

    ssmp_grid parsed;
    REQUIRE(ssmp_grid_from_json(R"({"x_min":-5,"x_max":5,"n":512})", &parsed) == SSMP_OK);
    CHECK(parsed.n == 512);
    CHECK(ssmp_grid_from_json(R"({"n":512,"cells":3})", &parsed) == SSMP_INVALID);

    ssmp_sim_config c = ssmp_default_sim_config();
    CHECK(c.dt == 1e-3);
    CHECK(c.n_paths > 0);
}

TEST_CASE("Bernstein handle and bgamma")
{
    ssmp_bernstein* phi = nullptr;
    REQUIRE(ssmp_bernstein_from_json(R"({"family":"drift"})", &phi) == SSMP_OK);
    double re, im;
    REQUIRE(ssmp_bernstein_eval(phi, 2.0, 3.0, &re, &im) == SSMP_OK);
    CHECK(re == 2.0);
    CHECK(im == 3.0);

    // |Gamma(1/2 + i xi)|^2 = pi / cosh(pi xi)
    std::vector<double> a, xi, wr, wi;
    for (double s = -30.0; s <= 30.0; s += 0.5) {
        a.push_back(0.5);
        xi.push_back(s);
    }
    wr.resize(a.size());
    wi.resize(a.size());
    REQUIRE(ssmp_bgamma(phi, 0.0, a.size(), a.data(), xi.data(), wr.data(), wi.data()) == SSMP_OK);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double want = std::sqrt(M_PI / std::cosh(M_PI * xi[k]));
        worst = std::max(worst, std::abs(std::hypot(wr[k], wi[k]) / want - 1.0));
    }
    CHECK(worst <= 1e-8);
    ssmp_bernstein_free(phi);
}

TEST_CASE("exponent, multiplier and classification")
{
    Handle h(id_pair);
    double re, im;
    REQUIRE(ssmp_exponent_psi(h.e, 3.0, &re, &im) == SSMP_OK);
    CHECK(re == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(std::abs(im) < 1e-14);

    ssmp_grid g{-20.0, 40.0, 1024};
    std::vector<double> lr(g.n), li(g.n);
    REQUIRE(ssmp_multiplier(h.e, g, SSMP_MULTIPLIER_LAMBDA, 0.0, lr.data(), li.data()) == SSMP_OK);
    double worst = 0.0;
    for (int k = 0; k < g.n; ++k)
        worst = std::max(worst, std::hypot(lr[k] - 1.0, li[k]));
    CHECK(worst <= 1e-8);
    CHECK(ssmp_multiplier(h.e, g, 7, 0.0, lr.data(), li.data()) == SSMP_INVALID);

    int verdict = -1;
    std::size_t len = 0;
    REQUIRE(ssmp_classify(h.e, g, 100.0, &verdict, nullptr, 0, &len) == SSMP_OK);
    CHECK(verdict == SSMP_VERDICT_CONTINUOUS);
    std::string buf(len + 1, '\0');
    REQUIRE(ssmp_classify(h.e, g, 100.0, &verdict, buf.data(), buf.size(), &len) == SSMP_OK);
    CHECK(std::strlen(buf.c_str()) == len);
    CHECK(buf.find("\"verdict\":\"Continuous\"") != std::string::npos);
}

TEST_CASE("eigenfunction methods")
{
    Handle h(R"({"pair":{"plus":{"family":"drift"},"minus":{"family":"affine","d":1,"c":1}}})");
    ssmp_grid g = ssmp_default_grid();
    std::vector<double> x(g.n), J(g.n);
    REQUIRE(ssmp_grid_points(g, x.data(), nullptr) == SSMP_OK);
    REQUIRE(ssmp_eigenfunction(h.e, g, SSMP_EIGEN_FFT, 0, J.data()) == SSMP_OK);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j)
        if (x[j] >= -10.0 && x[j] <= 5.0) {
            double u = std::exp(x[j] / 2.0);
            worst = std::max(worst, std::abs(J[j] - std::cyl_bessel_j(1.0, 2.0 * u) / u));
        }
    CHECK(worst <= 1e-3);
    // Wright needs gamma-ratio factors
    CHECK(ssmp_eigenfunction(h.e, g, SSMP_EIGEN_WRIGHT, 0, J.data()) != SSMP_OK);
}

TEST_CASE("evolve, sample and generator check")
{
    Handle h(id_pair);
    ssmp_grid g{-20.0, 40.0, 1024};
    std::vector<double> fr(g.n), fi(g.n), out_r(g.n), out_i(g.n);
    REQUIRE(ssmp_sample("gauss:1", g, fr.data(), fi.data()) == SSMP_OK);
    int warn = -1;
    REQUIRE(ssmp_evolve(h.e, g, 0.0, fr.data(), fi.data(), 0, 1e-6, out_r.data(), out_i.data(), &warn) == SSMP_OK);
    double worst = 0.0;
    for (int j = 0; j < g.n; ++j)
        worst = std::max(worst, std::hypot(out_r[j] - fr[j], out_i[j] - fi[j]));
    CHECK(worst <= 1e-8);
    CHECK(warn == 0);

    // positivity and contraction at t > 0
    REQUIRE(ssmp_evolve(h.e, g, 1.0, fr.data(), fi.data(), 0, 1e-6, out_r.data(), out_i.data(), &warn) == SSMP_OK);
    double lo = 0.0, hi = 0.0;
    for (int j = 0; j < g.n; ++j) {
        lo = std::min(lo, out_r[j]);
        hi = std::max(hi, out_r[j]);
    }
    CHECK(lo >= -1e-6);
    CHECK(hi <= 1.0 + 1e-8);

    CHECK(ssmp_sample("nope:1", g, fr.data(), fi.data()) == SSMP_INVALID);

    Handle both(R"({"pair":{"plus":{"family":"drift"},"minus":{"family":"drift"}},"quadruplet":{"sigma2":1}})");
    std::vector<double> pr(g.n), pi(g.n), ir(g.n), ii(g.n);
    REQUIRE(ssmp_sample("gauss:0", g, fr.data(), fi.data()) == SSMP_OK);
    REQUIRE(ssmp_generator_check(both.e, g, fr.data(), fi.data(), pr.data(), pi.data(), ir.data(), ii.data()) ==
            SSMP_OK);
    std::vector<double> x(g.n);
    ssmp_grid_points(g, x.data(), nullptr);
    worst = 0.0;
    for (int j = 0; j < g.n; ++j)
        if (std::abs(x[j]) <= 5.0)
            worst = std::max(worst, std::hypot(pr[j] - ir[j], pi[j] - ii[j]));
    CHECK(worst <= 1e-4);
    CHECK(ssmp_generator_check(h.e, g, fr.data(), fi.data(), pr.data(), pi.data(), ir.data(), ii.data()) !=
          SSMP_OK);
}

TEST_CASE("simulation")
{
    Handle drift(R"({"quadruplet":{"b":0.8}})");
    ssmp_sim_config c = ssmp_default_sim_config();
    c.n_paths = 64;
    ssmp_estimate est;
    REQUIRE(ssmp_simulate(drift.e, "r", nullptr, 0.7, 1.2, &c, &est) == SSMP_OK);
    CHECK(est.mean == doctest::Approx(0.7 + 0.8 * 1.2).epsilon(1e-14));
    CHECK(est.n_effective == 64);

    c.dt = 0.5;
    CHECK(ssmp_simulate(drift.e, "r", nullptr, 0.7, 1.2, &c, &est) == SSMP_CONFIG);

    Handle pair_only(id_pair);
    c = ssmp_default_sim_config();
    CHECK(ssmp_simulate(pair_only.e, "r", nullptr, 1.0, 1.0, &c, &est) == SSMP_INVALID);
}

TEST_CASE("CSV writer")
{
    std::string path = "/tmp/ssmp_test_capi.csv";
    std::vector<double> a{1.0, 0.1}, b{-2.0, 3.0};
    const char* header[] = {"a", "b"};
    const double* cols[] = {a.data(), b.data()};
    REQUIRE(ssmp_write_csv(path.c_str(), 2, header, 2, cols) == SSMP_OK);
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "a,b\n1,-2\n0.10000000000000001,3\n");
    std::remove(path.c_str());
    CHECK(ssmp_write_csv("/nonexistent/dir/x.csv", 2, header, 2, cols) == SSMP_IO);
}
