#include <doctest.h>

#include "common.hpp"
#include "fanocav/errors.hpp"
#include "fanocav/model.hpp"

using namespace fanocav;
using testutil::rel;

TEST_SUITE("model") {

TEST_CASE("drive amplitude") {
    CHECK(drive_amplitude(0.0, 1e15) == 0.0);
    CHECK(rel(drive_amplitude(kHbar * 1e15, 1e15), 1.0) < 1e-15);
    // 1 mW at 1064 nm: omega = 2 pi c / lambda = 1.7704e15 rad/s, hbar omega = 1.8670e-19 J.
    const double omega = 2.0 * M_PI * 299792458.0 / 1.064e-6;
    const double expected = std::sqrt(1e-3 / (1.054571817e-34 * omega));
    CHECK(rel(drive_amplitude(1e-3, omega), expected) < 1e-14);
    CHECK(rel(drive_amplitude(1e-3, omega), 7.3186e7) < 1e-4);
    CHECK(rel(drive_amplitude(4e-3, omega), 2.0 * drive_amplitude(1e-3, omega)) < 1e-14);
    CHECK_THROWS_AS(drive_amplitude(-1.0, omega), DomainError);
    CHECK_THROWS_AS(drive_amplitude(1.0, 0.0), DomainError);
}

TEST_CASE("effective detunings") {
    auto p = paper_preset();
    const auto d0 = effective_detunings(p, Topology::DoubleMovable, 0.0, 0.0);
    CHECK(d0.first == p.detuning1);
    CHECK(d0.second == p.detuning2);

    const auto fe = effective_detunings(p, Topology::FixedEnds, 1e-15, 0.0);
    CHECK(rel(fe.second, p.detuning2 - kTwoPi * 1.3e4) < 1e-12);
    CHECK(rel(fe.first, p.detuning1 + kTwoPi * 1.3e4) < 1e-12);

    const auto dm = effective_detunings(p, Topology::DoubleMovable, 3e-15, 3e-15);
    CHECK(rel(dm.second, p.detuning2) < 1e-15);

    // Linear in the displacements.
    const double a = 2.5;
    for (auto t : {Topology::FixedEnds, Topology::DoubleMovable}) {
        const auto f1 = effective_detunings(p, t, 1e-15, -4e-15);
        const auto f2 = effective_detunings(p, t, a * 1e-15, a * -4e-15);
        CHECK(rel(f2.first - p.detuning1, a * (f1.first - p.detuning1)) < 1e-9);
        CHECK(rel(f2.second - p.detuning2, a * (f1.second - p.detuning2)) < 1e-9);
    }
}

TEST_CASE("mechanical susceptibility") {
    const double m = 2e-11, w = kTwoPi * 51.8e6, gam = kTwoPi * 41e3;
    const auto chi0 = mechanical_susceptibility(m, w, gam, 0.0);
    CHECK(chi0.imag() == 0.0);
    CHECK(rel(chi0.real(), 1.0 / (m * w * w)) < 1e-15);

    const auto chir = mechanical_susceptibility(m, w, gam, w);
    CHECK(std::abs(chir.real()) < 1e-12 * std::abs(chir));
    CHECK(rel(chir, 1.0 / cdouble(0.0, -m * gam * w / 2.0)) < 1e-12);

    const double om = 1.01 * w;
    const cdouble expected = 1.0 / (m * cdouble(w * w - om * om, -gam * om / 2.0));
    CHECK(rel(mechanical_susceptibility(m, w, gam, om), expected) < 1e-14);
    CHECK(rel(std::conj(mechanical_susceptibility(m, w, gam, om)), 1.0 / (m * cdouble(w * w - om * om, gam * om / 2.0))) <
          1e-14);

    CHECK_THROWS_AS(mechanical_susceptibility(m, w, 0.0, w), SingularityError);
}

TEST_CASE("derived coefficients") {
    const auto p = paper_preset();
    const auto z = derived_coefficients(p, -p.omega_m(), -0.5 * p.omega_m(), 0.0);
    CHECK(z.d1 == z.theta1);
    CHECK(z.d2 == z.theta1);
    CHECK(z.d3 == z.theta2);
    CHECK(z.d4 == z.theta2);

    const auto eq = derived_coefficients(p, 1e6, 1e6, 3e8);
    CHECK(eq.d1 == eq.d3);
    CHECK(eq.d2 == eq.d4);

    const auto r = derived_coefficients(p, -p.omega_m(), 0.0, p.omega_m());
    CHECK(r.d1.real() == -p.kappa / 2.0);
    CHECK(std::abs(r.d1.imag()) < 1e-6);
    CHECK(r.theta1.real() < 0.0);
    CHECK(r.theta2.real() < 0.0);
    CHECK(r.d2.real() == r.d1.real());
}

TEST_CASE("parameter validation") {
    auto p = paper_preset();
    CHECK_NOTHROW(p.validate());
    p.kappa = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = paper_preset();
    p.eta = 1.5;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = paper_preset();
    p.tunneling = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("topology names") {
    CHECK(parse_topology("fixed_ends") == Topology::FixedEnds);
    CHECK(parse_topology("double") == Topology::DoubleMovable);
    CHECK(parse_topology(to_string(Topology::DoubleMovable)) == Topology::DoubleMovable);
    CHECK_THROWS_AS(parse_topology("triple"), DomainError);
}

}
