#include "ssmp/quadrature.hpp"
#include "ssmp/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace ssmp {

namespace {

template <int N>
GaussRule make_rule()
{
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& a = G::abscissa();
    const auto& w = G::weights();
    GaussRule r;
    // boost stores the nonnegative half; zero is first when N is odd
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] == 0.0)
            continue;
        r.nodes.push_back(-a[i]);
        r.weights.push_back(w[i]);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        r.nodes.push_back(a[i]);
        r.weights.push_back(w[i]);
    }
    return r;
}

const double bernoulli[] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
};

} // namespace

const GaussRule& gauss_legendre(int points)
{
    static const GaussRule r4 = make_rule<4>();
    static const GaussRule r8 = make_rule<8>();
    static const GaussRule r16 = make_rule<16>();
    static const GaussRule r32 = make_rule<32>();
    switch (points) {
    case 4: return r4;
    case 8: return r8;
    case 16: return r16;
    case 32: return r32;
    }
    fail(ErrorKind::Validation, "unsupported Gauss-Legendre order");
}

std::span<const double> bernoulli_even()
{
    return bernoulli;
}

} // namespace ssmp
