#include "frontlab/config.hpp"
#include "frontlab/output.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace frontlab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Trajectory<double> tiny_trajectory(int snapshots) {
    SimulationSettings settings;
    settings.grid.n_modes = 32;
    settings.dt = 1e-3;
    ModelParams<double> params;
    params.beta = 10.0;
    params.eps = 0.01;
    params.dt = settings.dt;
    const Stepper<double> stepper(settings.grid, params);
    return simulate(preset_initial(settings.grid, "sin"), stepper,
                    settings.dt * 10.0 * snapshots, 10);
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("frontlab_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("defaults fill in around a minimal document") {
        const auto cfg = parse_config(R"({"mode":"simulate","beta":10,"eps":0.1,"psi0":"sin"})");
        CHECK(cfg.mode == RunMode::Simulate);
        CHECK(cfg.beta == 10.0);
        CHECK(cfg.eps == 0.1);
        CHECK(cfg.n_modes == 256);
        CHECK(cfg.dt == 1e-4);
        CHECK(cfg.psi0.preset == "sin");
        CHECK(cfg.snapshot_stride == 100);
    }
    SUBCASE("figure configuration") {
        const auto cfg = parse_config(R"({"mode":"figure","figure_id":13})");
        CHECK(cfg.mode == RunMode::Figure);
        CHECK(cfg.figure_id == 13);
        const auto spec = figure_spec(cfg.figure_id);
        CHECK(spec.beta == 108.0);
        CHECK(spec.eps == 0.0001);
        CHECK(spec.psi0 == "tri");
    }
    SUBCASE("violations name the offending field") {
        CHECK_THROWS_WITH_AS(parse_config(R"({"mode":"simulate","eps":-1})"),
                             doctest::Contains("eps"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(parse_config(R"({"mode":"simulate","n_modes":7})"),
                             doctest::Contains("n_modes"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(parse_config(R"({"mode":"warp"})"), doctest::Contains("mode"),
                             std::invalid_argument);
    }
    SUBCASE("unknown keys are rejected") {
        CHECK_THROWS_WITH_AS(parse_config(R"({"mode":"simulate","epz":0.1})"),
                             doctest::Contains("epz"), std::invalid_argument);
    }
    SUBCASE("malformed JSON is rejected") {
        CHECK_THROWS_WITH_AS(parse_config("{not json"), doctest::Contains("malformed"),
                             std::invalid_argument);
    }
    SUBCASE("unknown preset rejected, inline coefficients accepted") {
        CHECK_THROWS_AS(parse_config(R"({"mode":"simulate","psi0":"box"})"),
                        std::invalid_argument);
        const auto cfg =
            parse_config(R"({"mode":"simulate","psi0":[[1, 0.0, -0.5],[3, 0.1, 0.2]]})");
        const auto field = cfg.psi0.build(cfg.grid());
        CHECK(field.coeff(1) == std::complex<double>(0.0, -0.5));
        CHECK(field.coeff(3) == std::complex<double>(0.1, 0.2));
    }
    SUBCASE("eps_list must decrease") {
        CHECK_THROWS_WITH_AS(parse_config(R"({"mode":"converge","eps_list":[0.01,0.1]})"),
                             doctest::Contains("eps_list"), std::invalid_argument);
    }
}

TEST_CASE("trajectory CSV") {
    TempDir dir;
    SUBCASE("single snapshot gives header plus one row") {
        auto traj = tiny_trajectory(1);
        traj.snapshots.resize(1);
        traj.times.resize(1);
        const std::string path = dir.file("one.csv");
        write_trajectory_csv(traj, path);
        const std::string text = slurp(path);
        CHECK(text.substr(0, 6) == "t,x_0,");
        int newlines = 0;
        for (char c : text) newlines += (c == '\n');
        CHECK(newlines == 2);
    }
    SUBCASE("round-trip is exact at 17 significant digits") {
        const auto traj = tiny_trajectory(4);
        const std::string path = dir.file("traj.csv");
        write_trajectory_csv(traj, path);
        const auto table = read_trajectory_csv(path);
        REQUIRE(table.times.size() == traj.snapshots.size());
        for (std::size_t s = 0; s < table.times.size(); ++s) {
            CHECK(table.times[s] == traj.times[s]);
            const Eigen::ArrayXd nodal = to_physical(traj.snapshots[s]);
            REQUIRE(table.rows[s].size() == nodal.size());
            for (Eigen::Index j = 0; j < nodal.size(); ++j)
                CHECK(std::abs(table.rows[s][j] - nodal[j]) <= 1e-15 * std::abs(nodal[j]));
        }
    }
    SUBCASE("identical trajectories serialize to identical bytes") {
        const auto a = tiny_trajectory(4);
        const auto b = tiny_trajectory(4);
        write_trajectory_csv(a, dir.file("a.csv"));
        write_trajectory_csv(b, dir.file("b.csv"));
        CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
    }
    SUBCASE("empty trajectory is an error and creates no file") {
        Trajectory<double> empty;
        const std::string path = dir.file("empty.csv");
        CHECK_THROWS_AS(write_trajectory_csv(empty, path), std::invalid_argument);
        CHECK(!std::filesystem::exists(path));
    }
}

TEST_CASE("waterfall SVG") {
    TempDir dir;
    const auto traj = tiny_trajectory(4);
    const std::string path = dir.file("water.svg");
    write_waterfall_svg(traj, path);
    const std::string text = slurp(path);
    CHECK(text.find("<svg") != std::string::npos);
    std::size_t polylines = 0, pos = 0;
    while ((pos = text.find("<polyline", pos)) != std::string::npos) {
        ++polylines;
        pos += 9;
    }
    CHECK(polylines == traj.snapshots.size());

    write_waterfall_svg(traj, dir.file("water2.svg"));
    CHECK(slurp(dir.file("water2.svg")) == text);  // byte-deterministic

    Trajectory<double> empty;
    CHECK_THROWS_AS(write_waterfall_svg(empty, dir.file("e.svg")), std::invalid_argument);
    CHECK(!std::filesystem::exists(dir.file("e.svg")));
}

TEST_CASE("config edge cases") {
    SUBCASE("non-integer integer fields are rejected by name") {
        CHECK_THROWS_WITH_AS(parse_config(R"({"mode":"simulate","snapshot_stride":2.5})"),
                             doctest::Contains("snapshot_stride"), std::invalid_argument);
        CHECK_THROWS_WITH_AS(parse_config(R"({"mode":"figure","figure_id":"four"})"),
                             doctest::Contains("figure_id"), std::invalid_argument);
    }
    SUBCASE("figure_id range enforced") {
        CHECK_THROWS_WITH_AS(parse_config(R"({"mode":"figure","figure_id":14})"),
                             doctest::Contains("figure_id"), std::invalid_argument);
    }
    SUBCASE("inline psi0 with out-of-range mode index is rejected") {
        CHECK_THROWS_WITH_AS(
            parse_config(R"({"mode":"simulate","n_modes":16,"psi0":[[9,1.0,0.0]]})"),
            doctest::Contains("psi0"), std::invalid_argument);
        // the builder itself also guards, for specs assembled in code
        Psi0Spec spec;
        spec.coeffs.emplace_back(9, 1.0, 0.0);
        CHECK_THROWS_WITH_AS(spec.build(GridConfig<double>{16}), doctest::Contains("psi0"),
                             std::invalid_argument);
    }
    SUBCASE("missing config file") {
        CHECK_THROWS_AS(load_config_file("/nonexistent/frontlab.json"), std::invalid_argument);
    }
}

TEST_CASE("CSV reader rejects malformed input") {
    TempDir dir;
    {
        std::ofstream out(dir.file("bad.csv"));
        out << "t,x_0\n1.0,not_a_number\n";
    }
    CHECK_THROWS_AS(read_trajectory_csv(dir.file("bad.csv")), std::runtime_error);
    CHECK_THROWS_AS(read_trajectory_csv(dir.file("missing.csv")), std::runtime_error);
}

TEST_CASE("17-digit shortest formatting round-trips doubles") {
    testing::TestRng rng(57);
    for (int i = 0; i < 200; ++i) {
        const double v = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-12.0, 12.0));
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}
