#include "mccub/sampler.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mccub {

std::uint64_t sampler_key(std::uint64_t seed, std::uint64_t stream) {
    return CounterRng::derive_key({seed, stream});
}

SampleBatch sample_uniform_cube(int s, std::size_t n, std::uint64_t seed,
                                std::uint64_t stream) {
    if (s < 1) throw std::invalid_argument("sample_uniform_cube: s must be >= 1");
    if (n < 1) throw std::invalid_argument("sample_uniform_cube: n must be >= 1");
    SampleBatch batch{Matrix(n, s), SampleSource::uniform_cube, seed, stream, {}};
    const std::uint64_t key = sampler_key(seed, stream);
    for (std::size_t i = 0; i < n; ++i) {
        CounterRng rng(key, static_cast<std::uint64_t>(i) * s);
        for (int j = 0; j < s; ++j) batch.points(i, j) = rng.next_unit();
    }
    return batch;
}

SampleBatch sample_gaussian(int s, std::size_t n, std::uint64_t seed,
                            std::uint64_t stream) {
    if (s < 1) throw std::invalid_argument("sample_gaussian: s must be >= 1");
    if (n < 1) throw std::invalid_argument("sample_gaussian: n must be >= 1");
    SampleBatch batch{Matrix(n, s), SampleSource::gaussian, seed, stream, {}};
    const std::uint64_t key = sampler_key(seed, stream);
    for (std::size_t i = 0; i < n; ++i) {
        CounterRng rng(key, 2 * static_cast<std::uint64_t>(i) * s);
        for (int j = 0; j < s; ++j) batch.points(i, j) = rng.next_gaussian();
    }
    return batch;
}

SampleBatch load_samples(const std::filesystem::path& path, int s) {
    if (s < 1) throw std::invalid_argument("load_samples: s must be >= 1");
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_samples: cannot open " + path.string());

    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;

        std::stringstream ss(line);
        std::string cell;
        int fields = 0;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() &&
                       (cell[used] == ' ' || cell[used] == '\t' || cell[used] == '\r'))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument("trailing junk");
                values.push_back(v);
            } catch (const std::exception&) {
                throw std::runtime_error("load_samples: " + path.string() + ":" +
                                         std::to_string(lineno) + ": bad value '" + cell + "'");
            }
            ++fields;
        }
        if (fields != s)
            throw std::runtime_error("load_samples: " + path.string() + ":" +
                                     std::to_string(lineno) + ": expected " + std::to_string(s) +
                                     " fields, got " + std::to_string(fields));
    }
    if (values.empty()) throw std::runtime_error("load_samples: no points in " + path.string());

    const std::size_t n = values.size() / s;
    SampleBatch batch{Matrix(n, s), SampleSource::file, 0, 0, path.string()};
    for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j < s; ++j) batch.points(i, j) = values[i * s + j];
    return batch;
}

} // namespace mccub
