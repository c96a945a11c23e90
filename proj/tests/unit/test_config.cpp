#include <doctest.h>

#include <string>

#include "common.hpp"
#include "fanocav/config.hpp"
#include "fanocav/errors.hpp"

using namespace fanocav;
using testutil::rel;

namespace {

std::string parse_error(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("empty document gives the reference device") {
    const auto cfg = parse_config("");
    const auto ref = paper_preset();
    CHECK(cfg.params.mass1 == ref.mass1);
    CHECK(cfg.params.kappa == ref.kappa);
    CHECK(cfg.params.pull1 == ref.pull1);
    CHECK(cfg.params.detuning1 == ref.detuning1);
    CHECK(cfg.params.probe_power == ref.probe_power);
    CHECK(cfg.topology == Topology::DoubleMovable);
    CHECK(cfg.g_over_om.size() == 6);
    CHECK(cfg.grid.n_points == 4001);
    CHECK(cfg.method == Method::MatrixSolve);
    CHECK(cfg.prominence == kDefaultProminence);
}

TEST_CASE("values and units") {
    const auto cfg = parse_config(R"(# device
m1_kg = 1e-11
Omega_m_Hz = 40e6      # mechanical frequency
gamma_Hz = 1e3
G1_Hz_per_nm = 10e9
kappa_Hz = 15e6
P_c_W = 2e-3
Delta1_over_Om = 1
topology = fixed_ends
g_over_Om = [0.0, 0.6]
grid_points = 11
)");
    CHECK(cfg.params.mass1 == 1e-11);
    CHECK(rel(cfg.params.mech_freq1, kTwoPi * 40e6) < 1e-15);
    CHECK(rel(cfg.params.damping2, kTwoPi * 1e3) < 1e-15);
    CHECK(rel(cfg.params.pull1, kTwoPi * 1e19) < 1e-15);
    CHECK(rel(cfg.params.kappa, kTwoPi * 15e6) < 1e-15);
    CHECK(rel(cfg.params.detuning1, kTwoPi * 40e6) < 1e-15);
    CHECK(rel(cfg.params.detuning2, -kTwoPi * 40e6) < 1e-15);
    CHECK(cfg.params.probe_power == 2e-5);
    CHECK(cfg.topology == Topology::FixedEnds);
    CHECK(cfg.g_over_om == std::vector<double>{0.0, 0.6});
    CHECK(cfg.grid.n_points == 11);
}

TEST_CASE("every documented key is accepted") {
    for (auto key : config_keys()) {
        std::string value = "1";
        if (key == "topology") value = "double_movable";
        if (key == "g_over_Om") value = "[0.5]";
        if (key == "eta") value = "0.5";
        if (key == "grid_min" || key == "fig5_grid_min") value = "0.9";
        if (key == "grid_max" || key == "fig5_grid_max") value = "1.1";
        if (key == "grid_points" || key == "fig5_grid_points" || key == "fig5_n_g") value = "5";
        if (key == "fig5_g_min") value = "0.2";
        CAPTURE(key);
        CHECK_NOTHROW(parse_config(std::string(key) + " = " + value));
    }
}

TEST_CASE("errors name the key and line") {
    const auto unknown = parse_error("eta = 0.5\nfoo = 1\n");
    CHECK(unknown.find("foo") != std::string::npos);
    CHECK(unknown.find("line 2") != std::string::npos);
    CHECK(parse_error("kappa_Hz = -1").find("kappa_Hz") != std::string::npos);
    CHECK(parse_error("kappa_Hz = abc").find("kappa_Hz") != std::string::npos);
    CHECK(parse_error("eta = 1.5").find("eta") != std::string::npos);
    CHECK(parse_error("eta = 0.5\neta = 0.4").find("repeated") != std::string::npos);
    CHECK(parse_error("just text").find("line 1") != std::string::npos);
    CHECK(!parse_error("g_over_Om = [0.1,]").empty());
    CHECK(!parse_error("g_over_Om = 0.1").empty());
    CHECK(!parse_error("topology = triple").empty());
    CHECK(!parse_error("grid_min = 1.1\ngrid_max = 1.0").empty());
    CHECK(!parse_error("grid_points = 1").empty());
    CHECK(!parse_error("grid_points = 2.5").empty());
    CHECK(!parse_error("P_c_W =").empty());
}

TEST_CASE("config files") {
    CHECK_THROWS_AS(load_config("/nonexistent/fanocav.cfg"), IoError);
}

}
