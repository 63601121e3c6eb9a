#include "ipsjoin/lsh/hyperplane.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ipsjoin/simd/kernels.hpp"

namespace ipsjoin::lsh {
namespace {

std::uint32_t code_from_planes(std::span<const double> planes, std::span<const double> x, unsigned k) {
  std::uint32_t code = 0;
  for (unsigned b = 0; b < k; ++b) {
    const double proj = simd::dot(planes.subspan(static_cast<std::size_t>(b) * x.size(), x.size()), x);
    if (proj >= 0.0) code |= std::uint32_t{1} << b;
  }
  return code;
}

}  // namespace

void HyperplaneFamily::validate() const {
  if (k < 1 || k > 32) throw std::invalid_argument("hyperplane family needs 1 <= k <= 32");
}

std::vector<double> HyperplaneFamily::planes(std::size_t dim, std::uint64_t fn_index) const {
  validate();
  std::vector<double> g(static_cast<std::size_t>(k) * dim);
  for (unsigned b = 0; b < k; ++b) {
    for (std::size_t i = 0; i < dim; ++i) {
      const std::uint64_t counter = (static_cast<std::uint64_t>(b) << 40) | i;
      g[b * dim + i] = counter_rng::gaussian(seed.value, fn_index, counter);
    }
  }
  return g;
}

std::uint32_t HyperplaneFamily::hash(std::span<const double> x, std::uint64_t fn_index) const {
  const std::vector<double> g = planes(x.size(), fn_index);
  return code_from_planes(g, x, k);
}

void HyperplaneFamily::hash_batch(std::span<const RealVector> xs, std::uint64_t fn_index,
                                  std::span<std::uint32_t> out) const {
  if (out.size() != xs.size()) throw std::invalid_argument("hash_batch: output size mismatch");
  if (xs.empty()) return;
  const std::size_t dim = xs.front().dim();
  const std::vector<double> g = planes(dim, fn_index);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].dim() != dim) throw std::invalid_argument("hash_batch: mixed dimensions");
    out[i] = code_from_planes(g, xs[i].values(), k);
  }
}

std::uint32_t hyperplane_hash(const HyperplaneFamily& family, const RealVector& x, std::uint64_t fn_index) {
  const double norm = x.norm();
  if (std::fabs(norm - 1.0) > 1e-9) {
    throw std::invalid_argument("hyperplane_hash expects a unit vector, got norm " + std::to_string(norm));
  }
  return family.hash(x.values(), fn_index);
}

}  // namespace ipsjoin::lsh
