#include "reram/channel.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "reram/kernels.hpp"

namespace reram {

void ResistiveParams::validate() const {
  if (!(r1 > 0.0) || !(r0 > r1))
    throw std::invalid_argument("ResistiveParams: need r0 > r1 > 0");
  if (!(rs > 0.0)) throw std::invalid_argument("ResistiveParams: need rs > 0");
  if (!(sigma > 0.0))
    throw std::invalid_argument("ResistiveParams: need sigma > 0");
  if (!(r0_prime() > r1))
    throw std::invalid_argument(
        "ResistiveParams: parallel level r0' must stay above r1");
}

DataArray sample_data_array(int n, double q, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_data_array: n < 1");
  if (!(q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("sample_data_array: q outside [0,1]");
  DataArray x{BitMatrix(n)};
  for (int i = 0; i < n; ++i) {
    std::uint64_t* row = x.bits.row(i);
    for (int j = 0; j < n; ++j)
      if (rng.uniform01() < q) row[j >> 6] |= std::uint64_t{1} << (j & 63);
  }
  return x;
}

SfPattern sample_sf_pattern(const std::vector<double>& cardinality_weights,
                            int n, Rng& rng) {
  if (cardinality_weights.empty())
    throw std::invalid_argument("sample_sf_pattern: empty weight vector");
  std::int64_t cells = static_cast<std::int64_t>(n) * n;
  if (static_cast<std::int64_t>(cardinality_weights.size()) - 1 > cells)
    throw std::invalid_argument("sample_sf_pattern: kmax exceeds cell count");
  double u = rng.uniform01();
  int k = static_cast<int>(cardinality_weights.size()) - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < cardinality_weights.size(); ++i) {
    acc += cardinality_weights[i];
    if (u < acc) {
      k = static_cast<int>(i);
      break;
    }
  }
  SfPattern phi;
  phi.n = n;
  std::vector<int> flat = rng.sample_subset(static_cast<int>(cells), k);
  phi.cells.reserve(k);
  for (int idx : flat) phi.cells.push_back(Cell{idx / n, idx % n});
  return phi;
}

SfPattern sample_scattered_pattern(int n, int k, Rng& rng) {
  if (k < 0 || k > n)
    throw std::invalid_argument("sample_scattered_pattern: need 0 <= k <= n");
  SfPattern phi;
  phi.n = n;
  std::vector<int> rows = rng.sample_subset(n, k);
  std::vector<int> cols = rng.sample_subset(n, k);
  rng.shuffle(cols);
  phi.cells.reserve(k);
  for (int i = 0; i < k; ++i) phi.cells.push_back(Cell{rows[i], cols[i]});
  return phi;
}

bool is_scattered(const SfPattern& phi) {
  std::vector<char> row_seen(phi.n, 0), col_seen(phi.n, 0);
  for (const Cell& c : phi.cells) {
    if (row_seen[c.row] || col_seen[c.col]) return false;
    row_seen[c.row] = 1;
    col_seen[c.col] = 1;
  }
  return true;
}

int active_sf_count(const DataArray& x, const SfPattern& phi) {
  int count = 0;
  for (const Cell& c : phi.cells)
    if (x.bits.get(c.row, c.col)) ++count;
  return count;
}

BitMatrix sneak_or_mask(const DataArray& x, const SfPattern& phi) {
  const kernels::Ops& ops = kernels::active_ops();
  int n = x.n();
  int wpr = x.bits.words_per_row();
  BitMatrix u(n);
  for (const Cell& c : phi.cells) {
    if (!x.bits.get(c.row, c.col)) continue;  // fault without a 1 is inert
    const std::uint64_t* src = x.bits.row(c.row);
    for (int m = 0; m < n; ++m) {
      if (!x.bits.get(m, c.col)) continue;
      ops.or_rows(u.row(m), src, wpr);
    }
  }
  return u;
}

IndicatorArray sneak_path_indicators(const DataArray& x, const SfPattern& phi) {
  BitMatrix u = sneak_or_mask(x, phi);
  const kernels::Ops& ops = kernels::active_ops();
  ops.andnot_rows(u.data(), x.bits.data(),
                  static_cast<int>(u.word_count()));
  return IndicatorArray{std::move(u)};
}

double sp_rate(const DataArray& x, const SfPattern& phi) {
  BitMatrix u = sneak_or_mask(x, phi);
  const kernels::Ops& ops = kernels::active_ops();
  std::uint64_t ones = ops.popcount_words(u.data(), u.word_count());
  return static_cast<double>(ones) /
         (static_cast<double>(x.n()) * static_cast<double>(x.n()));
}

ReadbackArray readback(const DataArray& x, const IndicatorArray& v,
                       const ResistiveParams& params, Rng& rng) {
  params.validate();
  int n = x.n();
  if (v.n() != n)
    throw std::invalid_argument("readback: array size mismatch");
  ReadbackArray y;
  y.n = n;
  y.r.resize(static_cast<std::size_t>(n) * n);
  double r0p = params.r0_prime();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double mu = x.bits.get(i, j) ? params.r1
                  : v.bits.get(i, j) ? r0p
                                     : params.r0;
      y.at(i, j) = mu + params.sigma * rng.gaussian();
    }
  }
  return y;
}

std::string to_text_grid(const BitMatrix& m) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.n()) * (m.n() + 1));
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) out.push_back(m.get(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

BitMatrix parse_text_grid(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      if (!cur.empty()) lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  int n = static_cast<int>(lines.size());
  if (n == 0) throw std::invalid_argument("parse_text_grid: empty grid");
  BitMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(lines[i].size()) != n)
      throw std::invalid_argument("parse_text_grid: grid is not square");
    for (int j = 0; j < n; ++j) {
      char ch = lines[i][j];
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("parse_text_grid: expected '0' or '1'");
      if (ch == '1') m.set(i, j, true);
    }
  }
  return m;
}

std::string sf_pattern_to_json(const SfPattern& phi) {
  nlohmann::ordered_json j;
  j["n"] = phi.n;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const Cell& c : phi.cells)
    cells.push_back({c.row + 1, c.col + 1});
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

SfPattern sf_pattern_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("sf_pattern_from_json: ") +
                                e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("cells"))
    throw std::invalid_argument(
        "sf_pattern_from_json: need object with n and cells");
  SfPattern phi;
  phi.n = j.at("n").get<int>();
  if (phi.n < 1) throw std::invalid_argument("sf_pattern_from_json: n < 1");
  for (const auto& item : j.at("cells")) {
    if (!item.is_array() || item.size() != 2)
      throw std::invalid_argument(
          "sf_pattern_from_json: cells must be [row, col] pairs");
    int r = item.at(0).get<int>();
    int c = item.at(1).get<int>();
    if (r < 1 || r > phi.n || c < 1 || c > phi.n)
      throw std::invalid_argument(
          "sf_pattern_from_json: cell outside 1..n range");
    phi.cells.push_back(Cell{r - 1, c - 1});
  }
  for (std::size_t a = 0; a < phi.cells.size(); ++a)
    for (std::size_t b = a + 1; b < phi.cells.size(); ++b)
      if (phi.cells[a] == phi.cells[b])
        throw std::invalid_argument("sf_pattern_from_json: duplicate cell");
  return phi;
}

}  // namespace reram
