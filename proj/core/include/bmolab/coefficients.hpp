#ifndef BMOLAB_COEFFICIENTS_HPP
#define BMOLAB_COEFFICIENTS_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bmolab/grid.hpp"

namespace bmolab {

/// Finitely supported map J -> a_J in R^d, housing wavelet coefficient arrays
/// {<psi_J, f>} as well as synthetic inputs.  Deterministic iteration order.
class CoefficientArray {
 public:
  explicit CoefficientArray(VectorSpaceDescriptor space, std::string provenance = "synthetic")
      : space_(space), provenance_(std::move(provenance)) {}

  const VectorSpaceDescriptor& space() const { return space_; }
  const std::string& provenance() const { return provenance_; }
  bool scalar() const { return space_.dimension == 1; }

  void set(const DyadicInterval& j, std::span<const double> value) {
    if (static_cast<int>(value.size()) != space_.dimension)
      throw DomainError("CoefficientArray::set: dimension mismatch");
    entries_[j] = std::vector<double>(value.begin(), value.end());
  }
  void set_scalar(const DyadicInterval& j, double value) { set(j, {&value, 1}); }

  bool contains(const DyadicInterval& j) const { return entries_.count(j) != 0; }
  std::span<const double> at(const DyadicInterval& j) const {
    const auto it = entries_.find(j);
    if (it == entries_.end()) throw DomainError("CoefficientArray: no entry at " + j.str());
    return it->second;
  }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Smallest scale present in the support; nullopt when empty.
  std::optional<int> min_scale() const {
    std::optional<int> m;
    for (const auto& [j, v] : entries_)
      if (!m || j.scale < *m) m = j.scale;
    return m;
  }

  CoefficientArray scaled(double factor) const {
    CoefficientArray out(space_, provenance_);
    for (const auto& [j, v] : entries_) {
      std::vector<double> w = v;
      for (double& x : w) x *= factor;
      out.set(j, w);
    }
    return out;
  }

 private:
  VectorSpaceDescriptor space_;
  std::string provenance_;
  std::map<DyadicInterval, std::vector<double>> entries_;
};

}  // namespace bmolab

#endif
