#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "mccub/rng.hpp"
#include "mccub/sampler.hpp"

using namespace mccub;

TEST_CASE("uniform batches are deterministic and land in [0,1)") {
    const auto a = sample_uniform_cube(2, 3, 7, 0);
    const auto b = sample_uniform_cube(2, 3, 7, 0);
    CHECK(a.points == b.points);

    const auto big = sample_uniform_cube(3, 1000, 42, 1);
    for (std::size_t i = 0; i < big.count(); ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(big.points(i, j) >= 0.0);
            CHECK(big.points(i, j) < 1.0);
        }

    const auto other_seed = sample_uniform_cube(2, 3, 8, 0);
    CHECK_FALSE(a.points == other_seed.points);
}

TEST_CASE("prefix property: a longer batch extends a shorter one") {
    const auto small = sample_uniform_cube(3, 50, 99, 4);
    const auto large = sample_uniform_cube(3, 120, 99, 4);
    for (std::size_t i = 0; i < small.count(); ++i)
        for (int j = 0; j < 3; ++j) CHECK(small.points(i, j) == large.points(i, j));

    const auto gs = sample_gaussian(2, 30, 5, 2);
    const auto gl = sample_gaussian(2, 80, 5, 2);
    for (std::size_t i = 0; i < gs.count(); ++i)
        for (int j = 0; j < 2; ++j) CHECK(gs.points(i, j) == gl.points(i, j));
}

TEST_CASE("uniform empirical mean near 1/2 at n = 1e5") {
    const auto batch = sample_uniform_cube(2, 100000, 2024, 0);
    for (int j = 0; j < 2; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < batch.count(); ++i) mean += batch.points(i, j);
        mean /= static_cast<double>(batch.count());
        CHECK(std::abs(mean - 0.5) < 0.01); // ~6 standard errors
    }
}

TEST_CASE("gaussian determinism, mean and variance at n = 1e5") {
    const auto a = sample_gaussian(2, 10, 3, 0);
    const auto b = sample_gaussian(2, 10, 3, 0);
    CHECK(a.points == b.points);

    const auto batch = sample_gaussian(2, 100000, 77, 0);
    for (int j = 0; j < 2; ++j) {
        double mean = 0.0, sq = 0.0;
        for (std::size_t i = 0; i < batch.count(); ++i) {
            mean += batch.points(i, j);
            sq += batch.points(i, j) * batch.points(i, j);
        }
        mean /= static_cast<double>(batch.count());
        const double var = sq / static_cast<double>(batch.count()) - mean * mean;
        CHECK(std::abs(mean) < 0.02);
        CHECK(std::abs(var - 1.0) < 0.05);
    }
}

TEST_CASE("distinct streams do not overlap") {
    CounterRng r0(sampler_key(123, 0));
    CounterRng r1(sampler_key(123, 1));
    std::set<std::uint64_t> seen;
    bool collision = false;
    for (int i = 0; i < 10000; ++i) seen.insert(r0.next_u64());
    for (int i = 0; i < 10000; ++i)
        if (seen.count(r1.next_u64())) collision = true;
    CHECK_FALSE(collision);
}

TEST_CASE("csv loading: good file, bad cell, bad width") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path();

    const auto good = dir / "mccub_samples_good.csv";
    {
        std::ofstream out(good);
        out << "# two points\n0.25, 0.5\n0.75,0.1\n";
    }
    const auto batch = load_samples(good, 2);
    REQUIRE(batch.count() == 2);
    CHECK(batch.points(0, 0) == doctest::Approx(0.25));
    CHECK(batch.points(1, 1) == doctest::Approx(0.1));
    CHECK(batch.source == SampleSource::file);

    const auto bad_cell = dir / "mccub_samples_badcell.csv";
    {
        std::ofstream out(bad_cell);
        out << "0.1,0.2\n0.3,oops\n";
    }
    CHECK_THROWS_WITH_AS(load_samples(bad_cell, 2),
                         doctest::Contains(":2:"), std::runtime_error);

    const auto bad_width = dir / "mccub_samples_badwidth.csv";
    {
        std::ofstream out(bad_width);
        out << "0.1,0.2,0.3\n";
    }
    CHECK_THROWS(load_samples(bad_width, 2));

    fs::remove(good);
    fs::remove(bad_cell);
    fs::remove(bad_width);
}
