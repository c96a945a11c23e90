#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "common.hpp"
#include "fanocav/errors.hpp"
#include "fanocav/fit.hpp"

using namespace fanocav;
using testutil::rel;

namespace {

std::vector<DataPoint> sample(const FitModel& m, double x0, double x1, int n) {
    std::vector<DataPoint> d;
    for (int i = 0; i < n; ++i) {
        const double x = x0 + (x1 - x0) * i / (n - 1);
        d.push_back({x, eval_model(m, x)});
    }
    return d;
}

double chi2(const FitModel& m, const std::vector<DataPoint>& d) {
    double s = 0.0;
    for (const auto& p : d) s += (eval_model(m, p.x) - p.y) * (eval_model(m, p.x) - p.y);
    return s;
}

}  // namespace

TEST_SUITE("fit") {

TEST_CASE("model evaluation") {
    const Moffat m{2.0, 0.3, 0.1, 1.0};
    CHECK(eval_model(m, 0.3) == 2.0);
    CHECK(eval_model(m, 0.4) == doctest::Approx(1.0).epsilon(1e-14));
    const GeneralizedLogistic l{0.1, 2.0, 1.0, 5.0, 0.7};
    CHECK(eval_model(l, 0.7) == doctest::Approx(1.1).epsilon(1e-14));
    // Saturation instead of overflow.
    CHECK(eval_model(l, -1e6) == doctest::Approx(0.1));
    CHECK(eval_model(l, 1e6) == doctest::Approx(2.1));
    const GeneralizedLogistic r{0.0, 1.0, 2.5, 3.0, 0.0};
    const double x = 0.4;
    CHECK(eval_model(r, x) == doctest::Approx(std::pow(1.0 + 2.5 * std::exp(-3.0 * x), -1.0 / 2.5)).epsilon(1e-14));
}

TEST_CASE("model bookkeeping") {
    CHECK(parameter_count(ModelKind::Moffat) == 4);
    CHECK(parameter_count(ModelKind::GeneralizedLogistic) == 5);
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0, 5.0};
    const auto m = make_model(ModelKind::GeneralizedLogistic, v);
    CHECK(parameters(m) == v);
    CHECK(kind_of(m) == ModelKind::GeneralizedLogistic);
    CHECK(parse_model_kind("moffat") == ModelKind::Moffat);
    CHECK(parse_model_kind(to_string(ModelKind::GeneralizedLogistic)) == ModelKind::GeneralizedLogistic);
    CHECK_THROWS_AS(validate(Moffat{1.0, 0.0, 0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(validate(GeneralizedLogistic{0.0, 1.0, -1.0, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(make_model(ModelKind::Moffat, v), DomainError);
}

TEST_CASE("noiseless Moffat data is recovered") {
    const Moffat truth{1.0, 0.8, 0.1, 2.0};
    const auto data = sample(truth, 0.4, 1.2, 50);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> jitter(0.8, 1.2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> init = parameters(truth);
        for (auto& v : init) v *= jitter(rng);
        const auto r = fit_least_squares(ModelKind::Moffat, data, init);
        const auto got = parameters(r.model);
        CAPTURE(trial);
        CHECK(r.converged);
        CHECK(r.chi2_per_dof < 1e-20);
        CHECK(rel(got[0], 1.0) < 1e-6);
        CHECK(rel(got[1], 0.8) < 1e-6);
        CHECK(rel(std::abs(got[2]), 0.1) < 1e-6);
        CHECK(rel(got[3], 2.0) < 1e-6);
        CHECK(r.residuals.size() == data.size());
    }
}

TEST_CASE("chi2 per degree of freedom") {
    const Moffat truth{1.0, 0.8, 0.1, 2.0};
    auto data = sample(truth, 0.4, 1.2, 30);
    for (std::size_t i = 0; i < data.size(); ++i) data[i].y += (i % 2 ? 1e-3 : -1e-3);
    const auto init = parameters(truth);
    const auto r = fit_least_squares(ModelKind::Moffat, data, init);
    double ss = 0.0;
    for (double e : r.residuals) ss += e * e;
    CHECK(rel(r.chi2_per_dof, ss / (data.size() - 4)) < 1e-12);
    // Accepted steps never raise chi2, so the result is no worse than the start.
    CHECK(r.chi2_per_dof * (data.size() - 4) <= chi2(truth, data));
}

TEST_CASE("flat data is flagged as degenerate") {
    std::vector<DataPoint> data;
    for (int i = 0; i < 20; ++i) data.push_back({0.1 * i, 0.25});
    const std::vector<double> init{0.25, 1.0, 0.5, 0.1};
    const auto r = fit_least_squares(ModelKind::Moffat, data, init);
    CHECK(r.chi2_per_dof < 1e-12);
    CHECK(r.degenerate);
}

TEST_CASE("fits do not depend on data order") {
    const GeneralizedLogistic truth{0.005, 0.045, 2.0, 20.0, 0.8};
    auto data = sample(truth, 0.4, 1.0, 25);
    for (std::size_t i = 0; i < data.size(); ++i) data[i].y += (i % 3 == 0 ? 2e-5 : -1e-5);
    const auto init = default_inits(ModelKind::GeneralizedLogistic, data);
    const auto a = fit_least_squares(ModelKind::GeneralizedLogistic, data, init);
    auto shuffled = data;
    std::reverse(shuffled.begin(), shuffled.end());
    std::rotate(shuffled.begin(), shuffled.begin() + 7, shuffled.end());
    const auto b = fit_least_squares(ModelKind::GeneralizedLogistic, shuffled, init);
    CHECK(rel(a.chi2_per_dof, b.chi2_per_dof) < 1e-6);
}

TEST_CASE("shifting x shifts the location parameters") {
    const double s = 0.3;
    {
        const Moffat truth{1.0, 0.8, 0.1, 2.0};
        const auto data = sample(truth, 0.4, 1.2, 50);
        auto moved = data;
        for (auto& d : moved) d.x += s;
        const std::vector<double> init{1.1, 0.78, 0.11, 1.8};
        const std::vector<double> init_moved{1.1, 0.78 + s, 0.11, 1.8};
        const auto a = parameters(fit_least_squares(ModelKind::Moffat, data, init).model);
        const auto b = parameters(fit_least_squares(ModelKind::Moffat, moved, init_moved).model);
        CHECK(std::abs(b[1] - a[1] - s) < 1e-8);
        CHECK(std::abs(b[0] - a[0]) < 1e-8);
        CHECK(std::abs(std::abs(b[2]) - std::abs(a[2])) < 1e-8);
        CHECK(std::abs(b[3] - a[3]) < 1e-8);
    }
    {
        const GeneralizedLogistic truth{0.005, 0.045, 2.0, 20.0, 0.8};
        const auto data = sample(truth, 0.4, 1.0, 40);
        auto moved = data;
        for (auto& d : moved) d.x += s;
        const std::vector<double> init{0.0055, 0.04, 1.8, 22.0, 0.78};
        const std::vector<double> init_moved{0.0055, 0.04, 1.8, 22.0, 0.78 + s};
        const auto a = parameters(fit_least_squares(ModelKind::GeneralizedLogistic, data, init).model);
        const auto b = parameters(fit_least_squares(ModelKind::GeneralizedLogistic, moved, init_moved).model);
        CHECK(std::abs(b[4] - a[4] - s) < 1e-8);
        for (int k = 0; k < 4; ++k) CHECK(std::abs(b[k] - a[k]) < 1e-8 * std::max(1.0, std::abs(a[k])));
    }
}

TEST_CASE("forward-difference Jacobian agrees with central differences") {
    const Moffat truth{1.0, 0.8, 0.1, 2.0};
    const auto data = sample(truth, 0.4, 1.2, 50);
    const auto params = parameters(truth);
    const auto fwd = finite_difference_jacobian(ModelKind::Moffat, data, params, 1e-7);
    const auto ctr = finite_difference_jacobian(ModelKind::Moffat, data, params, 0.5e-7, true);
    CHECK((fwd - ctr).norm() / ctr.norm() < 1e-4);
}

TEST_CASE("default starting points") {
    std::vector<DataPoint> bell;
    for (int i = -5; i <= 5; ++i) bell.push_back({0.1 * i + 1.0, 1.0 / (1.0 + 0.01 * i * i * 100)});
    const auto m = default_inits(ModelKind::Moffat, bell);
    CHECK(m[0] == 1.0);
    CHECK(m[1] == 1.0);
    CHECK(m[2] == doctest::Approx(0.5));
    CHECK(m[3] == 2.0);
    const auto l = default_inits(ModelKind::GeneralizedLogistic, bell);
    CHECK(l[0] == doctest::Approx(bell.front().y));
    CHECK(l[2] == 1.0);
    CHECK(l[4] == doctest::Approx(1.0));

    const std::vector<DataPoint> single{{0.5, 2.0}};
    for (auto k : {ModelKind::Moffat, ModelKind::GeneralizedLogistic}) {
        const auto v = default_inits(k, single);
        CHECK(v.size() == parameter_count(k));
        CHECK_NOTHROW(validate(make_model(k, v)));
    }
}

TEST_CASE("fit preconditions") {
    const std::vector<DataPoint> few{{0.0, 1.0}, {1.0, 2.0}};
    const std::vector<double> init{1.0, 0.0, 1.0, 1.0};
    CHECK_THROWS_AS(fit_least_squares(ModelKind::Moffat, few, init), DomainError);
    const std::vector<DataPoint> enough{{0.0, 1.0}, {1.0, 2.0}, {2.0, 1.0}, {3.0, 0.5}, {4.0, 0.2}};
    const std::vector<double> bad{1.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(fit_least_squares(ModelKind::Moffat, enough, bad), DomainError);
}

}
