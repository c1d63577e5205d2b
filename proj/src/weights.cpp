#include "redcbc/weights.hpp"

#include <cmath>
#include <bit>
#include <cctype>
#include <numbers>

#include "redcbc/errors.hpp"
#include "redcbc/numeric.hpp"

namespace redcbc {

Weights Weights::product(std::vector<double> gamma) {
  if (gamma.empty()) throw ValidationError("Weights: empty product weight list");
  for (double g : gamma) {
    if (!(g > 0.0)) throw ValidationError("Weights: weights must be strictly positive");
  }
  Weights w;
  w.kind_ = Kind::product;
  w.dimension_ = static_cast<int>(gamma.size());
  w.gamma_ = std::move(gamma);
  return w;
}

Weights Weights::general(std::map<std::uint32_t, double> gamma_u, int dimension) {
  if (dimension < 1 || dimension > 20) {
    throw CapacityError("Weights: general weights support 1 <= s <= 20");
  }
  const std::uint32_t full = (dimension == 32) ? ~0u : ((1u << dimension) - 1u);
  for (const auto& [mask, g] : gamma_u) {
    if (mask == 0) throw ValidationError("Weights: the empty subset weight is fixed to 1");
    if ((mask & ~full) != 0) throw ValidationError("Weights: subset outside [s]");
    if (!(g > 0.0)) throw ValidationError("Weights: weights must be strictly positive");
  }
  Weights w;
  w.kind_ = Kind::general;
  w.dimension_ = dimension;
  w.gamma_u_ = std::move(gamma_u);
  return w;
}

Weights Weights::from_rule(const std::string& rule, int dimension) {
  if (dimension < 1) throw ValidationError("Weights: dimension must be >= 1");
  const WeightRule r = parse_weight_rule(rule);
  std::vector<double> gamma(dimension);
  for (int j = 1; j <= dimension; ++j) {
    gamma[j - 1] = r.c * std::pow(static_cast<double>(j), -r.a);
  }
  return product(std::move(gamma));
}

double Weights::gamma(int j) const {
  if (kind_ != Kind::product) throw ValidationError("Weights: gamma(j) needs product weights");
  if (j < 1 || j > dimension_) throw ValidationError("Weights: index out of range");
  return gamma_[j - 1];
}

const std::vector<double>& Weights::gammas() const {
  if (kind_ != Kind::product) throw ValidationError("Weights: gammas() needs product weights");
  return gamma_;
}

double Weights::gamma_subset(std::uint32_t mask) const {
  if (mask == 0) return 1.0;
  if (kind_ == Kind::product) {
    double g = 1.0;
    for (int j = 0; j < dimension_; ++j) {
      if (mask & (1u << j)) g *= gamma_[j];
    }
    return g;
  }
  const auto it = gamma_u_.find(mask);
  return it == gamma_u_.end() ? 0.0 : it->second;
}

const std::map<std::uint32_t, double>& Weights::subset_map() const {
  if (kind_ != Kind::general) throw ValidationError("Weights: subset_map() needs general weights");
  return gamma_u_;
}

Weights Weights::expanded() const {
  if (kind_ == Kind::general) return *this;
  if (dimension_ > 20) throw CapacityError("Weights: expansion limited to s <= 20");
  std::map<std::uint32_t, double> out;
  const std::uint32_t full = (1u << dimension_) - 1u;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    out[mask] = gamma_subset(mask);
  }
  return general(std::move(out), dimension_);
}

Weights Weights::prefix(int s) const {
  if (s < 1 || s > dimension_) throw ValidationError("Weights: bad prefix length");
  if (s == dimension_) return *this;
  if (kind_ == Kind::product) {
    return product(std::vector<double>(gamma_.begin(), gamma_.begin() + s));
  }
  const std::uint32_t full = (1u << s) - 1u;
  std::map<std::uint32_t, double> out;
  for (const auto& [mask, g] : gamma_u_) {
    if ((mask & ~full) == 0) out[mask] = g;
  }
  return general(std::move(out), s);
}

WeightRule parse_weight_rule(const std::string& text) {
  // forms: "<c>", "j^<a>", "<c>*j^<a>"; c and a rational or decimal
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw ValidationError("weight rule: empty");

  WeightRule out;
  const auto jpos = s.find("j^");
  if (jpos == std::string::npos) {
    out.c = Rational::parse(s).to_double();
    out.a = 0.0;
    if (!(out.c > 0.0)) throw ValidationError("weight rule: constant must be positive");
    return out;
  }
  if (jpos > 0) {
    if (s[jpos - 1] != '*') throw ValidationError("weight rule: expected '*' before j^");
    out.c = Rational::parse(s.substr(0, jpos - 1)).to_double();
  }
  const std::string expo = s.substr(jpos + 2);
  if (expo.empty()) throw ValidationError("weight rule: missing exponent");
  out.a = -Rational::parse(expo).to_double();
  if (!(out.c > 0.0)) throw ValidationError("weight rule: constant must be positive");
  return out;
}

namespace {

Weights scale_per_coordinate(const Weights& w, double factor) {
  if (w.is_product()) {
    std::vector<double> gamma = w.gammas();
    for (double& g : gamma) g *= factor;
    return Weights::product(std::move(gamma));
  }
  std::map<std::uint32_t, double> out;
  for (const auto& [mask, g] : w.subset_map()) {
    out[mask] = g * std::pow(factor, std::popcount(mask));
  }
  return Weights::general(std::move(out), w.dimension());
}

}  // namespace

Weights map_weights_sobolev(const Weights& w) {
  return scale_per_coordinate(w, 2.0 * std::numbers::pi * std::numbers::pi);
}

Weights map_weights_tent(const Weights& w) {
  return scale_per_coordinate(w, std::numbers::pi * std::numbers::pi);
}

std::vector<double> tent_transform(const std::vector<double>& point) {
  std::vector<double> out(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double x = point[i];
    if (!(x >= 0.0 && x <= 1.0)) {
      throw ValidationError("tent_transform: coordinate outside [0,1]");
    }
    out[i] = 1.0 - std::abs(1.0 - 2.0 * x);
  }
  return out;
}

}  // namespace redcbc
