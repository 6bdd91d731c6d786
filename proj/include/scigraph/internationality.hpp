#pragma once

#include <vector>

#include "scigraph/indicators.hpp"

namespace scigraph {

/// Scale factor of the production function (the multiplicative constant).
struct ScoreParams {
  double scale = 1.0;  // must be positive and finite
};

struct OptimalElasticities {
  std::vector<double> alpha;
  double value = 0.0;
};

/// Internationality score y = scale * prod_i x_i^alpha_i, evaluated in the
/// log domain for positive inputs. x_i = 0 with alpha_i > 0 yields 0;
/// x_i = 0 with alpha_i = 0 contributes a factor of 1 (0^0 := 1).
///
/// Throws DimensionMismatch, NegativeInput (negative or non-finite x),
/// NegativeElasticity, NonPositiveScale.
double score(const std::vector<double>& x, const std::vector<double>& alpha,
             const ScoreParams& params = {});

/// Partial derivatives d y / d x_i = alpha_i * y / x_i. Requires every
/// x_i > 0 (throws ZeroInput otherwise).
std::vector<double> gradient(const std::vector<double>& x, const std::vector<double>& alpha,
                             const ScoreParams& params = {});

/// Maximizer of the score over the elasticity simplex {alpha_i >= 0,
/// sum alpha_i = 1} for fixed inputs. The objective is linear in alpha on
/// the log scale, so the maximum sits at a vertex: all weight on the
/// largest x_i (ties broken by lowest index). Requires every x_i > 0.
OptimalElasticities optimal_elasticities(const std::vector<double>& x,
                                         const ScoreParams& params = {});

/// Scores a journal from its indicator vector (x1, x2, x3, x4).
double score_journal(const JournalIndicators& ind, const std::vector<double>& alpha,
                     const ScoreParams& params = {});

}  // namespace scigraph
