#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scigraph {

/// Token multiset: token -> positive count.
using TokenMultiset = std::map<std::string, int>;

/// Canonical text form used everywhere names are compared or stored.
///
/// Lowercases, folds Latin letters with diacritics/ligatures to their ASCII
/// base form, drops combining marks and control characters, turns every
/// other non-alphanumeric character into a space, collapses whitespace runs
/// and trims. Output is pure ASCII [a-z0-9 ]. Total: empty in, empty out.
std::string normalize_text(std::string_view raw);

/// Tokenization used by the cosine metric: per-word character bigrams.
/// A one-character word contributes itself; counts accumulate across words.
/// Input must already be normalized.
TokenMultiset tokenize(std::string_view normalized);

/// Precomputed token-count vector, for comparing one string against many
/// without re-tokenizing. Tokens are packed into integers (normalized text
/// is ASCII, so a bigram fits in 16 bits).
class TokenVector {
 public:
  TokenVector() = default;

  static TokenVector from_normalized(std::string_view normalized);
  static TokenVector from_raw(std::string_view raw);

  double cosine(const TokenVector& other) const;

  bool empty() const { return counts_.empty(); }
  /// Total token occurrences (sum of counts).
  int total() const { return total_; }
  /// Largest single-token count.
  int max_count() const { return max_count_; }
  double norm() const { return norm_; }

 private:
  std::vector<std::pair<std::uint32_t, int>> counts_;  // sorted by token code
  double norm_ = 0.0;
  int total_ = 0;
  int max_count_ = 0;
};

/// Cosine similarity of the bigram count vectors of the two strings,
/// normalization and tokenization applied internally. Range [0,1].
/// Both inputs empty => 1; exactly one empty => 0.
double cosine(std::string_view a, std::string_view b);

/// True iff cosine(a, b) >= threshold. Throws InvalidThreshold unless
/// 0 < threshold <= 1.
bool same_entity(std::string_view a, std::string_view b, double threshold);

}  // namespace scigraph
