#pragma once

// Seeded MIMO channel realizations: one N x M matrix per direct link and one
// per directed interference edge, entries i.i.d. circularly-symmetric complex
// Gaussian with unit variance. Gaussians come from an explicit Box-Muller
// over mt19937_64 (std::normal_distribution is implementation-defined, which
// would break byte-identical replay). Draw order is fixed: direct matrices in
// vertex order, then cross matrices in directed-edge order. Matrices failing
// the full-rank guard (sigma_min <= 1e-12) are redrawn and counted.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hexdof/graph.hpp"
#include "hexdof/linalg.hpp"

namespace hexdof {

inline constexpr double kFullRankFloor = 1e-12;

class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : eng_(seed) {}

  double uniform01() {
    // 53-bit mantissa in (0, 1]; never 0 so log() below is finite.
    return (double((eng_() >> 11)) + 1.0) * 0x1.0p-53;
  }

  // CN(0,1): real and imaginary parts N(0, 1/2).
  cxd complex_normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double rad = std::sqrt(-std::log(u1));
    const double ang = 6.28318530717958647692 * u2;
    return {rad * std::cos(ang), rad * std::sin(ang)};
  }

  CMat matrix(int rows, int cols) {
    CMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = complex_normal();
    return m;
  }

  CVec unit_vector(int n) {
    CVec v(n);
    double norm2 = 0.0;
    do {
      for (int i = 0; i < n; ++i) v(i) = complex_normal();
      norm2 = v.norm();
    } while (norm2 < 1e-6);
    return v / norm2;
  }

  // Random unitary via QR of a Gaussian draw (Haar up to phases).
  CMat unitary(int n) {
    Eigen::HouseholderQR<CMat> qr(matrix(n, n));
    CMat q = qr.householderQ() * CMat::Identity(n, n);
    return q;
  }

 private:
  std::mt19937_64 eng_;
};

struct ChannelSet {
  int M = 0;
  int N = 0;
  std::uint64_t seed = 0;
  double power = 1.0;
  int resamples = 0;  // rank-guard redraws during generation

  std::vector<CMat> direct;                       // by vertex index
  std::map<std::pair<int, int>, CMat> cross;      // (tx, rx) -> N x M

  const CMat& cross_at(int tx, int rx) const {
    auto it = cross.find({tx, rx});
    if (it == cross.end()) {
      throw std::logic_error("ChannelSet: no matrix for edge (" + std::to_string(tx) + "," +
                             std::to_string(rx) + ")");
    }
    return it->second;
  }

  friend bool operator==(const ChannelSet& x, const ChannelSet& y) {
    if (x.M != y.M || x.N != y.N || x.seed != y.seed || x.direct.size() != y.direct.size() ||
        x.cross.size() != y.cross.size())
      return false;
    for (std::size_t i = 0; i < x.direct.size(); ++i)
      if (x.direct[i] != y.direct[i]) return false;
    auto it = x.cross.begin();
    auto jt = y.cross.begin();
    for (; it != x.cross.end(); ++it, ++jt)
      if (it->first != jt->first || it->second != jt->second) return false;
    return true;
  }
};

using MatrixDrawer = std::function<CMat(int rows, int cols)>;

// Generation with an injectable entry source; tests stub the drawer to force
// the resample path.
inline ChannelSet generate_channels_with(const InterferenceGraph& g, int M, int N,
                                         const MatrixDrawer& draw, std::uint64_t seed_tag,
                                         double power = 1.0) {
  if (M < 1 || N < 1) throw std::invalid_argument("generate_channels: M, N must be >= 1");
  ChannelSet cs;
  cs.M = M;
  cs.N = N;
  cs.seed = seed_tag;
  cs.power = power;

  auto full_rank_draw = [&]() {
    for (int attempt = 0; attempt < 100; ++attempt) {
      CMat h = draw(N, M);
      if (smallest_singular_value(h) > kFullRankFloor) return h;
      ++cs.resamples;
    }
    throw NumericalError("generate_channels: drawer kept producing singular matrices");
  };

  cs.direct.reserve(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) cs.direct.push_back(full_rank_draw());
  for (auto [tx, rx] : g.directed_edges) cs.cross.emplace(std::make_pair(tx, rx), full_rank_draw());
  return cs;
}

inline ChannelSet generate_channels(const InterferenceGraph& g, int M, int N, std::uint64_t seed,
                                    double power = 1.0) {
  auto src = std::make_shared<GaussianSource>(seed);
  return generate_channels_with(
      g, M, N, [src](int rows, int cols) { return src->matrix(rows, cols); }, seed, power);
}

}  // namespace hexdof
