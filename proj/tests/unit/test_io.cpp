#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "wealth/io.hpp"

using namespace wealth;

namespace {

std::filesystem::path scratch(const char* name) {
    auto p = std::filesystem::temp_directory_path() / ("wealthop_io_" + std::string(name));
    std::filesystem::remove_all(p);
    return p;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("io") {
    TEST_CASE("density csv round-trips bit for bit") {
        const Grid g = make_grid(4097, 40.0 / 3.0);
        const Density y = Density::sample(g, [](double x) { return std::exp(-x) / 3.0 + 1e-310 * x; });
        const Density back = io::parse_density_csv(io::density_csv(y));
        REQUIRE(back.size() == y.size());
        CHECK(back.grid() == y.grid());
        for (std::size_t i = 0; i < y.size(); ++i) CHECK(same_bits(back[i], y[i]));

        const auto dir = scratch("roundtrip");
        io::write_all(dir, {{"y.csv", io::density_csv(y)}});
        const Density from_file = io::read_density_csv(dir / "y.csv");
        for (std::size_t i = 0; i < y.size(); ++i) CHECK(same_bits(from_file[i], y[i]));
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("density csv layout") {
        const Density y = Density::sample(make_grid(16, 15.0), [](double x) { return x; });
        const std::string text = io::density_csv(y);
        CHECK(text.rfind("x,density\n0,0\n1,1\n", 0) == 0);
        CHECK(io::format_double(0.1) == "0.10000000000000001");
    }

    TEST_CASE("malformed density files are rejected") {
        std::string ok = "x,density\n";
        for (int i = 0; i < 16; ++i) ok += std::to_string(i) + ",1\n";
        CHECK_NOTHROW(io::parse_density_csv(ok));
        CHECK_THROWS_AS(io::parse_density_csv(""), io::FormatError);
        CHECK_THROWS_AS(io::parse_density_csv("a,b\n0,1\n"), io::FormatError);

        std::string short_file = "x,density\n0,1\n1,1\n";
        CHECK_THROWS_AS(io::parse_density_csv(short_file), io::FormatError);

        std::string uneven = ok;
        uneven.replace(uneven.find("\n3,1"), 4, "\n3.5,1");
        CHECK_THROWS_AS(io::parse_density_csv(uneven), io::FormatError);

        std::string negative = ok;
        negative.replace(negative.find("\n3,1"), 4, "\n3,-1");
        CHECK_THROWS_AS(io::parse_density_csv(negative), io::FormatError);

        std::string garbage = ok;
        garbage.replace(garbage.find("\n3,1"), 4, "\n3,x1");
        CHECK_THROWS_AS(io::parse_density_csv(garbage), io::FormatError);

        std::string shifted = "x,density\n";
        for (int i = 1; i <= 16; ++i) shifted += std::to_string(i) + ",1\n";
        CHECK_THROWS_AS(io::parse_density_csv(shifted), io::FormatError);

        CHECK_THROWS_AS(io::read_density_csv("/nonexistent/y.csv"), io::FormatError);
    }

    TEST_CASE("report csv") {
        const Grid g = make_grid(1025, 40.0);
        const auto t = iterate_T(Density::sample(g, [](double x) { return std::exp(-x); }), 2);
        const std::string csv = io::report_csv(t);
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        CHECK(line == "step,norm,mean,mass_defect,dist_to_target,step_delta");
        int rows = 0;
        while (std::getline(in, line)) {
            CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
            ++rows;
        }
        CHECK(rows == 3);
    }

    TEST_CASE("ensemble, histogram and fit outputs") {
        auto e = AgentEnsemble::equal(3, 1.0, 42);
        e.run_transactions(5);
        const std::string ens = io::ensemble_csv(e);
        CHECK(ens.rfind("agent_id,money\n0,", 0) == 0);
        CHECK(std::count(ens.begin(), ens.end(), '\n') == 4);

        const auto h = histogram(e, 4, 3.0);
        const std::string hist = io::histogram_csv(h);
        CHECK(hist.rfind("bin_left,bin_right,density\n0,0.75,", 0) == 0);

        const auto j = nlohmann::json::parse(io::fit_json(fit_exponential(e), e));
        CHECK(j.at("beta_hat").get<double>() == doctest::Approx(1.0));
        CHECK(j.at("n_samples").get<int>() == 3);
        CHECK(j.at("transactions_done").get<int>() == 5);
        CHECK(j.at("seed").get<int>() == 42);
        CHECK(j.contains("ks_statistic"));
    }

    TEST_CASE("write_all creates the directory and leaves no temporaries") {
        const auto dir = scratch("write_all") / "nested";
        io::write_all(dir, {{"a.txt", "alpha\n"}, {"b.txt", "beta\n"}});
        CHECK(slurp(dir / "a.txt") == "alpha\n");
        CHECK(slurp(dir / "b.txt") == "beta\n");
        std::size_t files = 0;
        for ([[maybe_unused]] const auto& entry : std::filesystem::directory_iterator(dir)) ++files;
        CHECK(files == 2);
        std::filesystem::remove_all(dir.parent_path());
    }
}
