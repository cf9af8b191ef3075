#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace bibnov {

inline constexpr std::array<double, 9> kStandardPercentiles{1, 5, 10, 25, 50, 75, 90, 95, 99};

/// q-th percentile (0..100) of `values` with linear interpolation between
/// closest ranks on the sorted data. `values` need not be sorted. Empty input
/// throws.
double percentile(std::span<const double> values, double q);
/// Same, for data already sorted ascending.
double percentile_sorted(std::span<const double> sorted, double q);
std::vector<double> standard_percentiles(std::span<const double> sorted);

double mean(std::span<const double> values);
/// Denominator n.
double population_std(std::span<const double> values);

/// nullopt when fewer than two points or either side has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);
/// Pearson on average ranks.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace bibnov
