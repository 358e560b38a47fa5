#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qnewton/objective.hpp"

namespace qnewton {

using Params = std::map<std::string, std::string>;

struct Fixture {
    std::string name;
    Vector x0;
};

struct BenchmarkInfo {
    std::string id;
    std::vector<std::string> aliases;
    int example = 0; // appendix example number, 0 when not an appendix entry
    std::size_t min_dim = 1;
    std::size_t max_dim = 0; // 0 = unbounded
    std::size_t default_dim = 1;
    /// Known global minimum value; when per_coordinate_min is set the value is
    /// per coordinate and scales with the dimension.
    std::optional<double> known_min;
    bool per_coordinate_min = false;
    bool analytic = true;  // false: finite-difference derivatives
    bool optional = false; // excluded from default suites
    std::string formula;
    std::vector<std::string> fixtures;
    std::function<Objective(std::size_t dim, const Params& params)> build;
};

const std::vector<BenchmarkInfo>& benchmark_catalog();

/// Looks up by id or alias; throws UnknownNameError.
const BenchmarkInfo& find_benchmark(const std::string& name);

/// dim = 0 selects the entry's default dimension. Throws UnknownNameError for
/// unknown names and InvalidInputError for a dimension outside the entry's range.
Objective make_benchmark(const std::string& name, std::size_t dim = 0, const Params& params = {});

/// Known minimum for a given dimension, if the catalog records one.
std::optional<double> known_minimum(const BenchmarkInfo& info, std::size_t dim);

/// Catalog listing as a JSON document (id, aliases, example, dims, minimum, fixtures).
std::string catalog_json();

/// Initial points shipped with the library (appendix examples and table setups).
const std::vector<Fixture>& fixtures();
/// Throws UnknownNameError.
const Vector& named_fixture(const std::string& name);

/// Cosine integral Ci(x) for x > 0.
double cosine_integral(double x);

} // namespace qnewton
