#include "infodyn/io/eca.hpp"

#include <random>
#include <string>

#include "infodyn/calculator.hpp"
#include "infodyn/errors.hpp"

namespace infodyn::io {

namespace {

std::size_t wrap(std::ptrdiff_t c, std::size_t w) {
  const auto n = static_cast<std::ptrdiff_t>(w);
  return static_cast<std::size_t>(((c % n) + n) % n);
}

/// True when every cell (t + j * dt, c + j * dc) for |j| <= h is a particle.
bool run_through(const SymbolMatrix& p, std::size_t t, std::size_t c, int dt, int dc, int h) {
  for (int j = -h; j <= h; ++j) {
    const auto tt = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(t) + j * dt);
    const auto cc = wrap(static_cast<std::ptrdiff_t>(c) + j * dc, p.cols());
    if (p(tt, cc) == 0) return false;
  }
  return true;
}

SymbolMatrix moving(const SymbolMatrix& p, int h, int direction) {
  if (h < 1) throw UsageError("half_length must be >= 1");
  SymbolMatrix out(p.rows(), p.cols(), 0);
  const auto hh = static_cast<std::size_t>(h);
  for (std::size_t t = hh; t + hh < p.rows(); ++t)
    for (std::size_t c = 0; c < p.cols(); ++c)
      if (p(t, c) && run_through(p, t, c, 1, direction, h) && !run_through(p, t, c, 1, -direction, h) &&
          !run_through(p, t, c, 1, 0, h))
        out(t, c) = 1;
  return out;
}

}  // namespace

void EcaConfig::validate() const {
  if (rule < 0 || rule > 255) throw UsageError("rule must be in [0, 256)");
  if (width < 3) throw UsageError("width must be >= 3");
  if (steps < 1) throw UsageError("steps must be >= 1");
  if (!init.empty()) {
    if (init.size() != width) throw UsageError("initial row length differs from width");
    for (int v : init)
      if (v != 0 && v != 1) throw DataError("initial row must hold bits");
  }
}

std::vector<int> eca_step(std::span<const int> state, int rule) {
  if (rule < 0 || rule > 255) throw UsageError("rule must be in [0, 256)");
  const std::size_t w = state.size();
  std::vector<int> next(w);
  for (std::size_t i = 0; i < w; ++i) {
    const int l = state[(i + w - 1) % w], c = state[i], r = state[(i + 1) % w];
    next[i] = (rule >> ((l << 2) | (c << 1) | r)) & 1;
  }
  return next;
}

SymbolMatrix eca_run(const EcaConfig& cfg) {
  cfg.validate();
  std::vector<int> row = cfg.init;
  if (row.empty()) {
    std::mt19937_64 rng(cfg.seed);
    row.resize(cfg.width);
    for (auto& v : row) v = static_cast<int>(rng() >> 63);
  }
  SymbolMatrix grid(0, cfg.width);
  grid.append_row(row);
  for (std::size_t t = 1; t < cfg.steps; ++t) {
    row = eca_step(row, cfg.rule);
    grid.append_row(row);
  }
  return grid;
}

CaMeasure parse_ca_measure(std::string_view name) {
  if (name == "ais") return CaMeasure::ais;
  if (name == "te_left") return CaMeasure::te_left;
  if (name == "te_right") return CaMeasure::te_right;
  if (name == "separable") return CaMeasure::separable;
  throw UsageError("unknown CA measure '" + std::string(name) + "' (ais, te_left, te_right, separable)");
}

std::vector<CaProfile> ca_profiles(const std::vector<SymbolMatrix>& grids, CaMeasure measure, int k) {
  if (grids.empty()) throw UsageError("no grids");
  const Measure m = measure == CaMeasure::ais ? Measure::ais
                    : measure == CaMeasure::separable ? Measure::separable
                                                      : Measure::te;
  Calculator calc(m, Estimator::discrete);
  calc.set_property("k", std::to_string(k));
  calc.set_property("alphabet", "2");
  calc.initialise();
  for (const auto& g : grids) {
    const RealMatrix cells = matrix_cast<double>(g);
    const std::size_t w = g.cols();
    for (std::size_t c = 0; c < w; ++c) {
      const RealMatrix dest = cells.select_columns(std::vector<std::size_t>{c});
      const std::size_t left = (c + w - 1) % w, right = (c + 1) % w;
      RealMatrix source;
      if (measure == CaMeasure::te_right) source = cells.select_columns(std::vector<std::size_t>{left});
      if (measure == CaMeasure::te_left) source = cells.select_columns(std::vector<std::size_t>{right});
      if (measure == CaMeasure::separable) source = cells.select_columns(std::vector<std::size_t>{left, right});
      calc.add_observations(source, dest);
    }
  }
  const MeasureResult r = calc.compute();
  std::vector<CaProfile> out;
  std::size_t pos = 0;
  for (const auto& g : grids) {
    CaProfile p;
    p.offset = r.offset;
    p.average = r.average;
    p.local = RealMatrix(g.rows(), g.cols(), 0.0);
    for (std::size_t c = 0; c < g.cols(); ++c)
      for (std::size_t t = r.offset; t < g.rows(); ++t) p.local(t, c) = r.local[pos++];
    out.push_back(std::move(p));
  }
  return out;
}

CaProfile ca_profile(const EcaConfig& cfg, CaMeasure measure, int k) {
  return std::move(ca_profiles({eca_run(cfg)}, measure, k).front());
}

SymbolMatrix rule54_particles(const SymbolMatrix& grid) {
  // every length-7 factor of (0001)^inf and (1110)^inf, as 7-bit words
  bool domain[128] = {};
  for (const int base : {0b0001, 0b1110})
    for (int phase = 0; phase < 4; ++phase) {
      int word = 0;
      for (int i = 0; i < 7; ++i) word = (word << 1) | ((base >> (3 - (phase + i) % 4)) & 1);
      domain[word] = true;
    }
  SymbolMatrix out(grid.rows(), grid.cols(), 0);
  for (std::size_t t = 0; t < grid.rows(); ++t)
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      int word = 0;
      for (int i = -3; i <= 3; ++i) word = (word << 1) | grid(t, wrap(static_cast<std::ptrdiff_t>(c) + i, grid.cols()));
      out(t, c) = domain[word] ? 0 : 1;
    }
  return out;
}

SymbolMatrix right_moving(const SymbolMatrix& particles, int half_length) { return moving(particles, half_length, 1); }
SymbolMatrix left_moving(const SymbolMatrix& particles, int half_length) { return moving(particles, half_length, -1); }

}  // namespace infodyn::io
