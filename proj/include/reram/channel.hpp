#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reram/bit_matrix.hpp"
#include "reram/random.hpp"

namespace reram {

// Resistance levels in ohms plus the additive read-noise sigma. gamma and
// gamma_prime are the half level gaps in noise units for unaffected and
// sneak-path-affected low-resistance cells.
struct ResistiveParams {
  double r0 = 1000.0;
  double r1 = 100.0;
  double rs = 250.0;
  double sigma = 100.0;

  double r0_prime() const { return r0 * rs / (r0 + rs); }
  double gamma() const { return (r0 - r1) / (2.0 * sigma); }
  double gamma_prime() const { return (r0_prime() - r1) / (2.0 * sigma); }

  // Throws std::invalid_argument unless r0 > r1 > 0, rs > 0, sigma > 0 and
  // the parallel combination stays above r1.
  void validate() const;
};

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

// Set of cells with sneak-path faults. Coordinates are 0-based internally;
// serialization uses 1-based pairs.
struct SfPattern {
  int n = 0;
  std::vector<Cell> cells;

  int size() const { return static_cast<int>(cells.size()); }
};

struct DataArray {
  BitMatrix bits;
  int n() const { return bits.n(); }
};

// v bit set means the cell stores 0 but reads at the degraded level r0'.
// Construction guarantees v=1 only where x=0.
struct IndicatorArray {
  BitMatrix bits;
  int n() const { return bits.n(); }
};

struct ReadbackArray {
  int n = 0;
  std::vector<double> r;  // row-major n*n

  double at(int i, int j) const { return r[static_cast<std::size_t>(i) * n + j]; }
  double& at(int i, int j) { return r[static_cast<std::size_t>(i) * n + j]; }
};

// Each bit is 1 independently with probability q.
DataArray sample_data_array(int n, double q, Rng& rng);

// Pattern cardinality k drawn from weights (index = k), then k cells placed
// uniformly without replacement among the n^2 positions.
SfPattern sample_sf_pattern(const std::vector<double>& cardinality_weights,
                            int n, Rng& rng);

// Uniform over patterns with k distinct rows and k distinct columns
// (k rows x k columns x random bijection).
SfPattern sample_scattered_pattern(int n, int k, Rng& rng);

// True when no two cells share a row and no two share a column.
bool is_scattered(const SfPattern& phi);

// Number of cells of phi that hold a 1 in x (only those launch sneak paths).
int active_sf_count(const DataArray& x, const SfPattern& phi);

// OR over active faults (i,j) of x[m][j] & x[i][n'], i.e. the bracket of the
// indicator equation before the (1-x) gate. Exposed for the density
// estimator, which needs the affected level for cells regardless of x.
BitMatrix sneak_or_mask(const DataArray& x, const SfPattern& phi);

IndicatorArray sneak_path_indicators(const DataArray& x, const SfPattern& phi);

// Fraction of the n^2 cells whose readback level is shifted by sneak paths,
// i.e. the mean of the OR mask (x=1 cells count as affected per the model's
// rate definition; their level is r1 either way).
double sp_rate(const DataArray& x, const SfPattern& phi);

// y = level(x, v) + sigma * z with z iid standard normal, row-major order.
ReadbackArray readback(const DataArray& x, const IndicatorArray& v,
                       const ResistiveParams& params, Rng& rng);

// Dense text grid: n lines of n '0'/'1' characters.
std::string to_text_grid(const BitMatrix& m);
BitMatrix parse_text_grid(const std::string& text);

// {"n": n, "cells": [[row, col], ...]} with 1-based coordinates.
std::string sf_pattern_to_json(const SfPattern& phi);
SfPattern sf_pattern_from_json(const std::string& json_text);

}  // namespace reram
