#include "redcbc/reduction.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>

#include "redcbc/errors.hpp"

namespace redcbc {

ReductionSpec ReductionSpec::explicit_list(std::vector<int> w) {
  ReductionSpec s;
  s.kind = Kind::explicit_list;
  s.list = std::move(w);
  return s;
}

ReductionSpec ReductionSpec::log_rule(Rational c) {
  if (c.negative()) throw ValidationError("reduction rule: factor must be >= 0");
  ReductionSpec s;
  s.kind = Kind::log_rule;
  s.c = c;
  return s;
}

ReductionSpec ReductionSpec::parse(const std::string& text, std::uint64_t base) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw ValidationError("reduction rule: empty");
  if (s == "0" || s == "w=0") return log_rule(Rational(0, 1));

  // floor(<c>*log<base>(j)) with <base> a number or the letter b
  const std::string prefix = "floor(";
  if (s.rfind(prefix, 0) != 0 || s.back() != ')') {
    throw ValidationError("reduction rule: expected floor(c*log_b(j)) or an explicit list");
  }
  std::string body = s.substr(prefix.size(), s.size() - prefix.size() - 1);
  const auto star = body.find('*');
  if (star == std::string::npos) throw ValidationError("reduction rule: missing '*'");
  const Rational c = Rational::parse(body.substr(0, star));
  std::string logpart = body.substr(star + 1);
  if (logpart.rfind("log", 0) != 0) throw ValidationError("reduction rule: expected log");
  logpart = logpart.substr(3);
  if (!logpart.empty() && logpart[0] == '_') logpart = logpart.substr(1);
  const auto paren = logpart.find("(j)");
  if (paren == std::string::npos || paren + 3 != logpart.size()) {
    throw ValidationError("reduction rule: expected (j) argument");
  }
  const std::string base_text = logpart.substr(0, paren);
  if (base_text != "b" && !base_text.empty()) {
    std::uint64_t stated = 0;
    try {
      stated = std::stoull(base_text);
    } catch (const std::exception&) {
      throw ValidationError("reduction rule: bad log base");
    }
    if (stated != base) {
      throw ValidationError("reduction rule: log base does not match the lattice base b");
    }
  } else if (base_text.empty()) {
    throw ValidationError("reduction rule: missing log base");
  }
  return log_rule(c);
}

ReductionSchedule make_reduction_schedule(const ReductionSpec& spec, int s,
                                          const SpaceParams& params) {
  if (s < 1) throw ValidationError("reduction schedule: dimension must be >= 1");

  ReductionSchedule out;
  out.w.resize(s);
  switch (spec.kind) {
    case ReductionSpec::Kind::explicit_list: {
      if (static_cast<int>(spec.list.size()) < s) {
        throw ValidationError("reduction schedule: explicit list shorter than s");
      }
      for (int j = 0; j < s; ++j) {
        if (spec.list[j] < 0) throw ValidationError("reduction schedule: negative exponent");
        if (j > 0 && spec.list[j] < spec.list[j - 1]) {
          throw ValidationError("reduction schedule: exponents must be nondecreasing");
        }
        out.w[j] = spec.list[j];
      }
      break;
    }
    case ReductionSpec::Kind::log_rule: {
      for (int j = 1; j <= s; ++j) {
        out.w[j - 1] = floor_scaled_log(params.b, static_cast<std::uint64_t>(j), spec.c);
      }
      break;
    }
  }

  if (out.w[0] > 0) {
    std::cerr << "warning: w_1 = " << out.w[0]
              << " > 0; every point is repeated b^(w_1) times\n";
  }

  out.y.resize(s);
  out.s_star = s + 1;
  for (int j = 0; j < s; ++j) {
    const int we = std::min(out.w[j], params.m);
    std::uint64_t y = 1;
    for (int i = 0; i < we; ++i) y *= params.b;
    out.y[j] = y;
    if (out.w[j] >= params.m && out.s_star == s + 1) out.s_star = j + 1;
  }
  return out;
}

std::uint64_t candidate_count(const ReductionSchedule& schedule, int j,
                              const SpaceParams& params) {
  if (j < 1 || j > schedule.dimension()) {
    throw ValidationError("candidate_count: index out of range");
  }
  const int w = schedule.w[j - 1];
  if (w >= params.m) return 1;
  std::uint64_t count = params.b - 1;
  for (int i = 0; i < params.m - w - 1; ++i) count *= params.b;
  return count;
}

std::vector<std::uint64_t> candidate_set(const ReductionSchedule& schedule, int j,
                                         const SpaceParams& params) {
  if (j < 1 || j > schedule.dimension()) {
    throw ValidationError("candidate_set: index out of range");
  }
  const int w = schedule.w[j - 1];
  if (w >= params.m) return {1};

  std::uint64_t limit = 1;
  for (int i = 0; i < params.m - w; ++i) limit *= params.b;

  std::vector<std::uint64_t> out;
  out.reserve(candidate_count(schedule, j, params));
  for (std::uint64_t z = 1; z < limit; ++z) {
    if (z % params.b != 0) out.push_back(z);
  }
  return out;
}

}  // namespace redcbc
