#include <doctest.h>

#include "common.hpp"
#include "fanocav/errors.hpp"
#include "fanocav/lineshape.hpp"
#include "fanocav/spectrum.hpp"

using namespace fanocav;
using testutil::preset_at;

TEST_SUITE("spectrum") {

TEST_CASE("grid") {
    GridSpec g;
    CHECK(g.at(0) == 0.98);
    CHECK(g.at(g.n_points - 1) == 1.02);
    GridSpec bad{1.0, 1.0, 10};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    GridSpec tiny{0.98, 1.02, 1};
    CHECK_THROWS_AS(tiny.validate(), DomainError);
    CHECK(parse_method("closed") == Method::ClosedForm);
    CHECK_THROWS_AS(parse_method("exact"), DomainError);
}

TEST_CASE("two-point grid") {
    const auto spec = compute_spectrum(preset_at(0.3), Topology::DoubleMovable, GridSpec{0.98, 1.02, 2});
    REQUIRE(spec.points.size() == 2);
    CHECK(std::isfinite(spec.points[0].t_b));
    CHECK(std::isfinite(spec.points[1].t_b));
    CHECK(spec.points[0].omega_over_om < spec.points[1].omega_over_om);
}

TEST_CASE("uncoupled spectrum is the bare cavity") {
    auto p = preset_at(0.0);
    p.pull1 = p.pull2 = 0.0;
    const auto spec = compute_spectrum(p, Topology::DoubleMovable, GridSpec{0.98, 1.02, 201});
    for (const auto& pt : spec.points) {
        const cdouble d1(-p.kappa / 2.0, p.detuning1 + pt.omega_over_om * p.omega_m());
        CHECK(std::abs(pt.t_b - std::norm(1.0 + p.external_rate() / d1)) < 1e-10);
    }
}

TEST_CASE("transparency feature without tunneling") {
    const auto p = preset_at(0.0);
    const auto spec = compute_spectrum(p, Topology::DoubleMovable, GridSpec{});
    const auto y = spec.reflection();
    const auto x = spec.omegas();
    // Local extremum within 2 gamma of the mechanical resonance.
    const double window = 2.0 * p.damping1 / p.omega_m();
    bool found = false;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        const bool ext = (y[i] > y[i - 1] && y[i] > y[i + 1]) || (y[i] < y[i - 1] && y[i] < y[i + 1]);
        if (ext && std::abs(x[i] - 1.0) < window) found = true;
    }
    CHECK(found);
}

TEST_CASE("topologies coincide without tunneling") {
    const auto p = preset_at(0.0);
    const GridSpec grid{0.98, 1.02, 401};
    const double gs[] = {0.0};
    const auto a = sweep_tunneling(p, Topology::FixedEnds, grid, gs);
    const auto b = compute_spectrum(p, Topology::DoubleMovable, grid);
    REQUIRE(a.size() == 1);
    REQUIRE(a[0].spectrum);
    for (std::size_t i = 0; i < b.points.size(); ++i) CHECK(std::abs(a[0].spectrum->points[i].t_b - b.points[i].t_b) < 1e-10);
    const auto c = compute_spectrum(p, Topology::FixedEnds, grid);
    for (std::size_t i = 0; i < c.points.size(); ++i) CHECK(a[0].spectrum->points[i].t_b == c.points[i].t_b);
}

TEST_CASE("dip count grows with tunneling") {
    const double gs[] = {0.4, 0.6};
    const auto sweep = sweep_tunneling(paper_preset(), Topology::DoubleMovable, GridSpec{}, gs);
    REQUIRE(sweep.size() == 2);
    for (const auto& e : sweep) {
        REQUIRE(e.spectrum);
        CHECK(e.spectrum->g_over_om == e.g_over_om);
        CHECK(find_dips(*e.spectrum).size() == 2);
    }
}

TEST_CASE("parallel and serial evaluation agree") {
    const auto p = preset_at(0.4);
    const GridSpec grid{0.98, 1.02, 801};
    SpectrumOptions serial;
    serial.threads = 1;
    SpectrumOptions wide;
    wide.threads = 4;
    const auto a = compute_spectrum(p, Topology::DoubleMovable, grid, Method::MatrixSolve, serial);
    const auto b = compute_spectrum(p, Topology::DoubleMovable, grid, Method::MatrixSolve, wide);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].t_b == b.points[i].t_b);
}

TEST_CASE("closed-form method") {
    const auto p = preset_at(0.3);
    const GridSpec grid{0.98, 1.02, 201};
    const auto m = compute_spectrum(p, Topology::FixedEnds, grid);
    const auto c = compute_spectrum(p, Topology::FixedEnds, grid, Method::ClosedForm);
    REQUIRE(c.gaps.empty());
    for (std::size_t i = 0; i < m.points.size(); ++i) {
        CHECK(std::abs(m.points[i].t_b - c.points[i].t_b) <= 1e-8 * std::max(1.0, m.points[i].t_b));
    }
    // Unequal effective detunings violate the double-Fano assumption at every point.
    const auto d = compute_spectrum(p, Topology::DoubleMovable, grid, Method::ClosedForm);
    CHECK(d.points.empty());
    CHECK(d.gaps.size() == 201);

    auto s = solve_steady_state(p, Topology::DoubleMovable);
    s.detuning2_eff = s.detuning1_eff;
    const auto e = compute_spectrum_from_state(p, s, grid, Method::ClosedForm);
    const auto f = compute_spectrum_from_state(p, s, grid, Method::MatrixSolve);
    REQUIRE(e.points.size() == f.points.size());
    for (std::size_t i = 0; i < e.points.size(); ++i) {
        CHECK(std::abs(e.points[i].t_b - f.points[i].t_b) <= 1e-8 * std::max(1.0, f.points[i].t_b));
    }
}

TEST_CASE("photon numbers") {
    const double gs[] = {0.0, 0.1, 0.2, 0.4, 0.7, 1.0};
    const auto p = paper_preset();
    const auto rows = intensity_table(p, Topology::DoubleMovable, gs);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].n_b == 0.0);
    CHECK(rows[0].ratio == 0.0);
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(rows[i].n_b > rows[i - 1].n_b);
    for (const auto& r : rows) {
        auto pg = p;
        pg.tunneling = r.g_over_om * p.omega_m();
        const auto s = solve_steady_state(pg, Topology::DoubleMovable);
        const double g = pg.tunneling, d2 = s.detuning2_eff;
        CHECK(std::abs(r.ratio - g * g / (d2 * d2 + p.kappa * p.kappa / 4.0)) <= 1e-12 * std::max(r.ratio, 1e-300));
    }
    // Cavity B stays far weaker than cavity A at weak tunneling.
    CHECK(rows[1].n_b < 0.01 * rows[1].n_a);
}

TEST_CASE("sweep input checks") {
    const std::vector<double> none;
    CHECK_THROWS_AS(sweep_tunneling(paper_preset(), Topology::FixedEnds, GridSpec{}, none), DomainError);
    const double neg[] = {-0.1};
    CHECK_THROWS_AS(sweep_tunneling(paper_preset(), Topology::FixedEnds, GridSpec{}, neg), DomainError);
}

TEST_CASE("parallel_for visits each index once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                        if (i == 7) throw DomainError("boom");
                    }),
                    DomainError);
}

}
