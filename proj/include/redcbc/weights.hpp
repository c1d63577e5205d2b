#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace redcbc {

/// Coordinate weights: either product weights gamma_j (one per dimension) or
/// general subset weights gamma_u keyed by bitmask (bit j-1 <=> coordinate j).
/// The empty subset always has weight 1.
class Weights {
 public:
  enum class Kind { product, general };

  static Weights product(std::vector<double> gamma);
  static Weights general(std::map<std::uint32_t, double> gamma_u, int dimension);

  /// Product weights gamma_j = c * j^(-a) for j = 1..dimension.
  static Weights from_rule(const std::string& rule, int dimension);

  Kind kind() const { return kind_; }
  int dimension() const { return dimension_; }

  /// gamma_j, 1-based; product kind only.
  double gamma(int j) const;
  const std::vector<double>& gammas() const;

  /// gamma_u for a subset bitmask; product kind multiplies out.
  double gamma_subset(std::uint32_t mask) const;
  const std::map<std::uint32_t, double>& subset_map() const;

  /// Product kind expanded to explicit subset weights (dimension <= 20).
  Weights expanded() const;

  /// Truncation to the first s coordinates.
  Weights prefix(int s) const;

  bool is_product() const { return kind_ == Kind::product; }

 private:
  Weights() = default;
  Kind kind_ = Kind::product;
  int dimension_ = 0;
  std::vector<double> gamma_;                  // product kind
  std::map<std::uint32_t, double> gamma_u_;    // general kind
};

/// Parsed weight rule gamma_j = c * j^(-a).
struct WeightRule {
  double c = 1.0;
  double a = 0.0;
};

/// Restricted grammar: "j^-3", "0.1*j^-2", "3/2*j^-1.5", or a plain constant.
WeightRule parse_weight_rule(const std::string& text);

/// Weight map for the unanchored Sobolev correspondence: gamma_u -> (2 pi^2)^|u| gamma_u.
Weights map_weights_sobolev(const Weights& w);

/// Weight map for tent-transformed rules: gamma_u -> pi^(2|u|) gamma_u.
Weights map_weights_tent(const Weights& w);

/// Componentwise x -> 1 - |1 - 2x|; folds [0,1] onto itself.
std::vector<double> tent_transform(const std::vector<double>& point);

}  // namespace redcbc
