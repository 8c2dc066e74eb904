#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "infodyn/io/table.hpp"

// Reproducible demonstrations. Each regenerates its synthetic data from the
// seed, runs its computation and reports data tables plus a text summary.
namespace infodyn::io {

struct DemoReport {
  std::string name;
  /// (file stem, table) pairs, written as <stem>.csv.
  std::vector<std::pair<std::string, DataTable>> tables;
  std::string summary;
};

/// schreiber_tent, schreiber_ulam, lag_sweep, null_study, ca.
std::vector<std::string_view> demo_names();
DemoReport run_demo(std::string_view name, std::uint64_t seed);
/// Writes every table as CSV and the summary as <name>_summary.txt into `dir`.
void write_report(const DemoReport& report, const std::filesystem::path& dir);

enum class MapKind { tent, ulam };

/// Ring of `sites` maps coupled one way: x^m_{n+1} = f(eps x^{m-1}_n + (1 - eps) x^m_n).
/// The tent map has slope 1.99999 rather than 2 so that binary floating
/// point does not collapse orbits onto 0; the Ulam map is f(x) = 2 - x^2.
RealMatrix coupled_map_lattice(MapKind kind, double epsilon, std::size_t sites, std::size_t steps,
                               std::size_t transient, std::uint64_t seed);

/// Transfer entropy (bits) from site m-1 to site m, pooled over all sites,
/// with a two-symbol partition at the midpoint of each site's range and k = 1.
double lattice_te(const RealMatrix& lattice);

struct LagSweep {
  std::vector<int> lags;
  std::vector<double> discrete, ksg, kernel;
};

/// Sources coupled into destinations with a delay of 3 steps: a binary copy
/// with 10% flips for the discrete estimator and a linear Gaussian coupling
/// for KSG and kernel; TE for u = 1..max_lag.
LagSweep lag_sweep(std::size_t n, int max_lag, std::uint64_t seed);

struct NullStudy {
  double actual = 0.0;
  std::vector<double> surrogates;
  double analytic_mean = 0.0;
  double surrogate_mean = 0.0;
};

/// Discrete MI of independent binary series with `n_surrogates` permutations.
NullStudy null_study(std::size_t n, std::size_t n_surrogates, std::uint64_t seed);

struct CaGliderStats {
  std::size_t glider_cells = 0;
  double glider_mean = 0.0;    // rightward local TE on right-moving glider cells
  double grid_mean = 0.0;      // rightward local TE over all cells with history
  double grid_std = 0.0;
  double control_right = 0.0;  // rule 204 pooled TE, both directions
  double control_left = 0.0;
};

/// Rule 54 on `runs` random rings (width, steps), pooled; rule 204 control on the same initial rows.
CaGliderStats ca_glider_stats(std::size_t width, std::size_t steps, int k, std::size_t runs, std::uint64_t seed);

}  // namespace infodyn::io
