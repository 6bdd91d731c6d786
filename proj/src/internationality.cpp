#include "scigraph/internationality.hpp"

#include <cmath>
#include <string>

#include "scigraph/error.hpp"

namespace scigraph {

namespace {

void validate(const std::vector<double>& x, const std::vector<double>& alpha,
              const ScoreParams& params) {
  if (x.empty() || x.size() != alpha.size()) {
    throw Error(Errc::DimensionMismatch, "x has " + std::to_string(x.size()) +
                                             " entries, alpha has " + std::to_string(alpha.size()));
  }
  for (double v : x) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(Errc::NegativeInput, "inputs must be finite and non-negative");
    }
  }
  for (double a : alpha) {
    if (!std::isfinite(a) || a < 0.0) {
      throw Error(Errc::NegativeElasticity, "elasticities must be finite and non-negative");
    }
  }
  if (!std::isfinite(params.scale) || params.scale <= 0.0) {
    throw Error(Errc::NonPositiveScale, "scale must be positive and finite");
  }
}

void require_positive(const std::vector<double>& x) {
  for (double v : x) {
    if (v == 0.0) throw Error(Errc::ZeroInput, "all inputs must be strictly positive");
  }
}

}  // namespace

double score(const std::vector<double>& x, const std::vector<double>& alpha,
             const ScoreParams& params) {
  validate(x, alpha, params);
  double log_product = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      if (alpha[i] > 0.0) return 0.0;
      continue;  // 0^0 := 1
    }
    log_product += alpha[i] * std::log(x[i]);
  }
  return params.scale * std::exp(log_product);
}

std::vector<double> gradient(const std::vector<double>& x, const std::vector<double>& alpha,
                             const ScoreParams& params) {
  validate(x, alpha, params);
  require_positive(x);
  double y = score(x, alpha, params);
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    grad[i] = alpha[i] * y / x[i];
  }
  return grad;
}

OptimalElasticities optimal_elasticities(const std::vector<double>& x, const ScoreParams& params) {
  std::vector<double> uniform(x.size(), 0.0);
  validate(x, uniform, params);
  require_positive(x);
  // log y = log A + sum alpha_i log x_i is linear in alpha, so the simplex
  // maximum is the vertex selecting the largest x_i; first index wins ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] > x[best]) best = i;
  }
  OptimalElasticities result;
  result.alpha.assign(x.size(), 0.0);
  result.alpha[best] = 1.0;
  result.value = score(x, result.alpha, params);
  return result;
}

double score_journal(const JournalIndicators& ind, const std::vector<double>& alpha,
                     const ScoreParams& params) {
  return score({ind.x1, ind.x2, ind.x3, ind.x4}, alpha, params);
}

}  // namespace scigraph
