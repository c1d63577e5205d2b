#include "redcbc/omega.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "redcbc/errors.hpp"
#include "redcbc/numeric.hpp"

namespace redcbc {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1u) r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// smallest primitive root mod prime b
std::uint64_t primitive_root_mod_prime(std::uint64_t b) {
  if (b == 2) return 1;
  const std::vector<std::uint64_t> factors = prime_factors(b - 1);
  for (std::uint64_t g = 2; g < b; ++g) {
    bool ok = true;
    for (std::uint64_t p : factors) {
      if (pow_mod(g, (b - 1) / p, b) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw DomainError("primitive_root_mod_prime: none found");
}

int ceil_log2(std::uint64_t n) {
  int bits = 0;
  std::uint64_t v = 1;
  while (v < n) {
    v <<= 1;
    ++bits;
  }
  return bits;
}

}  // namespace

UnitGroupStructure unit_group_structure(std::uint64_t b, int k) {
  if (!is_prime(b)) throw ValidationError("unit_group_structure: b must be prime");
  if (k < 1) throw ValidationError("unit_group_structure: k must be >= 1");

  UnitGroupStructure s;
  s.b = b;
  s.k = k;
  s.modulus = pow_u64(b, k);
  s.order = (b - 1) * pow_u64(b, k - 1);

  if (b == 2) {
    if (k == 1) {
      s.generators = {};
      s.gen_orders = {};
      s.units_by_exponent = {1};
      return s;
    }
    if (k == 2) {
      s.generators = {3};
      s.gen_orders = {2};
      s.units_by_exponent = {1, 3};
      return s;
    }
    s.generators = {s.modulus - 1, 3};
    s.gen_orders = {2, s.order / 2};
    s.units_by_exponent.reserve(s.order);
    for (std::uint64_t sign = 0; sign < 2; ++sign) {
      std::uint64_t u = sign == 0 ? 1 : s.modulus - 1;
      for (std::uint64_t a = 0; a < s.gen_orders[1]; ++a) {
        s.units_by_exponent.push_back(u);
        u = u * 3 % s.modulus;
      }
    }
    return s;
  }

  // odd prime: lift a primitive root mod b to one mod b^k
  std::uint64_t g = primitive_root_mod_prime(b);
  if (k > 1 && pow_mod(g, b - 1, b * b) == 1) g += b;
  s.generators = {g % s.modulus};
  s.gen_orders = {s.order};
  s.units_by_exponent.reserve(s.order);
  std::uint64_t u = 1;
  for (std::uint64_t a = 0; a < s.order; ++a) {
    s.units_by_exponent.push_back(u);
    u = u * s.generators[0] % s.modulus;
  }
  return s;
}

std::vector<std::uint64_t> unit_list(std::uint64_t b, int k) {
  const std::uint64_t modulus = pow_u64(b, k);
  std::vector<std::uint64_t> out;
  out.reserve((modulus / b) * (b - 1));
  for (std::uint64_t z = 1; z < modulus; ++z) {
    if (z % b != 0) out.push_back(z);
  }
  return out;
}

std::vector<double> fold_vector(std::span<const double> x, std::uint64_t parts) {
  if (parts == 0 || x.size() % parts != 0) {
    throw ValidationError("fold_vector: parts must divide the vector length");
  }
  const std::size_t block = x.size() / parts;
  std::vector<double> out(x.begin(), x.begin() + block);
  for (std::uint64_t r = 1; r < parts; ++r) {
    const double* src = x.data() + r * block;
    for (std::size_t i = 0; i < block; ++i) out[i] += src[i];
  }
  return out;
}

// One column class n = b^t u: a correlation over the units modulo b^j,
// j = k - t, evaluated by FFT in generator-exponent coordinates.
struct OmegaOperator::Level {
  UnitGroupStructure group;
  std::uint64_t length = 0;                  // group order
  std::vector<std::uint64_t> gather_units;   // unit value at negated exponent
  std::vector<std::complex<double>> kernel_spectrum;  // FFT(kernel)/length
  std::unique_ptr<FftPlan> forward;
  std::unique_ptr<FftPlan> backward;

  Level(const KernelProfile& profile, std::uint64_t b, int j) {
    group = unit_group_structure(b, j);
    length = group.order;

    if (group.gen_orders.size() == 2) {
      forward = std::make_unique<FftPlan>(group.gen_orders[0], group.gen_orders[1], false);
      backward = std::make_unique<FftPlan>(group.gen_orders[0], group.gen_orders[1], true);
    } else {
      forward = std::make_unique<FftPlan>(length, false);
      backward = std::make_unique<FftPlan>(length, true);
    }

    gather_units.resize(length);
    if (group.gen_orders.size() == 2) {
      const std::uint64_t o0 = group.gen_orders[0];
      const std::uint64_t o1 = group.gen_orders[1];
      for (std::uint64_t e0 = 0; e0 < o0; ++e0) {
        for (std::uint64_t e1 = 0; e1 < o1; ++e1) {
          const std::uint64_t neg = ((o0 - e0) % o0) * o1 + (o1 - e1) % o1;
          gather_units[e0 * o1 + e1] = group.units_by_exponent[neg];
        }
      }
    } else {
      for (std::uint64_t e = 0; e < length; ++e) {
        gather_units[e] = group.units_by_exponent[(length - e) % length];
      }
    }

    // kernel in exponent order: K[e] = phi(units_by_exponent[e] / b^j)
    const std::uint64_t stride = profile.size() / group.modulus;
    std::vector<std::complex<double>> kernel(length);
    for (std::uint64_t e = 0; e < length; ++e) {
      kernel[e] = profile.values[group.units_by_exponent[e] * stride];
    }
    kernel_spectrum.resize(length);
    forward->execute(kernel.data(), kernel_spectrum.data());
    const double inv_len = 1.0 / static_cast<double>(length);
    for (auto& c : kernel_spectrum) c *= inv_len;
  }
};

OmegaOperator::OmegaOperator(const KernelProfile& profile, std::uint64_t b, int k)
    : b_(b), k_(k), profile_(&profile) {
  if (k < 1) throw ValidationError("OmegaOperator: level must be >= 1");
  n_columns_ = pow_u64(b, k);
  if (profile.size() == 0 || profile.size() % n_columns_ != 0) {
    throw ValidationError("OmegaOperator: profile size is not a multiple of b^k");
  }
  n_rows_ = (n_columns_ / b) * (b - 1);

  levels_.reserve(k);
  for (int j = 1; j <= k; ++j) {
    levels_.push_back(std::make_unique<Level>(profile, b, j));
    const std::uint64_t len = levels_.back()->length;
    setup_flops_ += 5ull * len * ceil_log2(len);
    flops_per_apply_ += len * 9 + 10ull * len * ceil_log2(len);
  }
  flops_per_apply_ += 2;
}

OmegaOperator::~OmegaOperator() = default;
OmegaOperator::OmegaOperator(OmegaOperator&&) noexcept = default;
OmegaOperator& OmegaOperator::operator=(OmegaOperator&&) noexcept = default;

std::vector<double> OmegaOperator::apply_fast(std::span<const double> x) const {
  if (x.size() != n_columns_) throw ValidationError("OmegaOperator: wrong input length");

  // acc over residues modulo b^j, unit entries only; level j folds in the
  // column class t = k - j, then inherits the coarser classes via z mod b^(j-1)
  std::vector<double> acc{profile_->values[0] * x[0]};
  std::vector<std::complex<double>> buf;
  std::vector<std::complex<double>> spec;
  std::uint64_t modulus = 1;
  for (int j = 1; j <= k_; ++j) {
    const Level& level = *levels_[j - 1];
    const std::uint64_t len = level.length;
    const std::uint64_t bt = n_columns_ / level.group.modulus;  // b^(k-j)

    buf.resize(len);
    spec.resize(len);
    for (std::uint64_t e = 0; e < len; ++e) {
      buf[e] = x[bt * level.gather_units[e]];
    }
    level.forward->execute(buf.data(), spec.data());
    for (std::uint64_t f = 0; f < len; ++f) spec[f] *= level.kernel_spectrum[f];
    level.backward->execute(spec.data(), buf.data());

    std::vector<double> next(level.group.modulus, 0.0);
    for (std::uint64_t e = 0; e < len; ++e) {
      const std::uint64_t u = level.group.units_by_exponent[e];
      next[u] = buf[e].real() + acc[u % modulus];
    }
    acc = std::move(next);
    modulus = level.group.modulus;
  }

  std::vector<double> y;
  y.reserve(n_rows_);
  for (std::uint64_t z = 1; z < n_columns_; ++z) {
    if (z % b_ != 0) y.push_back(acc[z]);
  }
  return y;
}

double OmegaOperator::naive_row(std::uint64_t z, std::span<const double> x) const {
  const std::uint64_t stride = profile_->size() / n_columns_;
  NeumaierSum sum;
  std::uint64_t idx = 0;
  for (std::uint64_t n = 0; n < n_columns_; ++n) {
    sum.add(profile_->values[idx * stride] * x[n]);
    idx += z;
    if (idx >= n_columns_) idx -= n_columns_;
  }
  return sum.value();
}

std::vector<double> OmegaOperator::apply_naive(std::span<const double> x) const {
  if (x.size() != n_columns_) throw ValidationError("OmegaOperator: wrong input length");
  std::vector<double> y;
  y.reserve(n_rows_);
  for (std::uint64_t z = 1; z < n_columns_; ++z) {
    if (z % b_ != 0) y.push_back(naive_row(z, x));
  }
  return y;
}

}  // namespace redcbc
