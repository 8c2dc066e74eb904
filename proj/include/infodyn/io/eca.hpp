#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "infodyn/matrix.hpp"

// Elementary cellular automata on a ring, and local information profiles
// computed by pooling observations over every cell (the rule is the same at
// every cell, so all cells are treated as realisations of one process).
namespace infodyn::io {

struct EcaConfig {
  int rule = 54;
  std::size_t width = 35;
  /// Rows of the space-time grid, the initial row included.
  std::size_t steps = 55;
  /// Seed of the random initial row, used when `init` is empty.
  std::uint64_t seed = 0;
  std::vector<int> init;

  void validate() const;
};

/// Next row: cell i becomes bit ((left << 2) | (centre << 1) | right) of the rule.
std::vector<int> eca_step(std::span<const int> state, int rule);

/// Space-time grid, rows are time steps and row 0 is the initial state.
SymbolMatrix eca_run(const EcaConfig& cfg);

enum class CaMeasure { ais, te_left, te_right, separable };

/// ais, te_left, te_right, separable.
CaMeasure parse_ca_measure(std::string_view name);

/// Local values on the (time, cell) grid. Rows before `offset` have no
/// history and are zero. `average` is the pooled average over all other cells.
struct CaProfile {
  RealMatrix local;
  double average = 0.0;
  std::size_t offset = 0;
};

/// te_right takes the left neighbour as source (information moving right),
/// te_left the right neighbour; separable uses both. History length k, lag 1.
/// Counts are pooled over all cells of all the given grids.
std::vector<CaProfile> ca_profiles(const std::vector<SymbolMatrix>& grids, CaMeasure measure, int k);
CaProfile ca_profile(const EcaConfig& cfg, CaMeasure measure, int k);

/// Domain filter for rule 54. The rule-54 domain is spatially periodic with
/// words (0001)* and (1110)*; a cell is domain (0) when the seven cells
/// centred on it read as a factor of either word, and particle (1) otherwise.
SymbolMatrix rule54_particles(const SymbolMatrix& grid);

/// Particle cells on a glider moving one cell per step to the right: the
/// particle run through the cell extends `half_length` steps each way along
/// the rising diagonal but not along the falling diagonal or the vertical.
/// Rows within `half_length` of either end are never marked.
SymbolMatrix right_moving(const SymbolMatrix& particles, int half_length = 4);
SymbolMatrix left_moving(const SymbolMatrix& particles, int half_length = 4);

}  // namespace infodyn::io
