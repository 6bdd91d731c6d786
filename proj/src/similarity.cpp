#include "scigraph/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "scigraph/error.hpp"

namespace scigraph {

namespace {

// Decode one UTF-8 code point starting at i; advances i. Malformed bytes
// decode as U+FFFD one byte at a time so normalization stays total.
std::uint32_t next_codepoint(std::string_view s, std::size_t& i) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    i += 1;
    return b0;
  }
  auto cont = [&](std::size_t k) { return k < s.size() && (byte(k) & 0xC0) == 0x80; };
  if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
    std::uint32_t cp = (static_cast<std::uint32_t>(b0 & 0x1F) << 6) | (byte(i + 1) & 0x3F);
    i += 2;
    return cp >= 0x80 ? cp : 0xFFFD;
  }
  if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
    std::uint32_t cp = (static_cast<std::uint32_t>(b0 & 0x0F) << 12) |
                       (static_cast<std::uint32_t>(byte(i + 1) & 0x3F) << 6) | (byte(i + 2) & 0x3F);
    i += 3;
    return cp >= 0x800 ? cp : 0xFFFD;
  }
  if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
    std::uint32_t cp = (static_cast<std::uint32_t>(b0 & 0x07) << 18) |
                       (static_cast<std::uint32_t>(byte(i + 1) & 0x3F) << 12) |
                       (static_cast<std::uint32_t>(byte(i + 2) & 0x3F) << 6) | (byte(i + 3) & 0x3F);
    i += 4;
    return cp >= 0x10000 ? cp : 0xFFFD;
  }
  i += 1;
  return 0xFFFD;
}

// ASCII folds for Latin-1 Supplement letters U+00C0..U+00FF.
const char* fold_latin1(std::uint32_t cp) {
  static const char* const table[64] = {
      "a", "a", "a", "a", "a", "a", "ae", "c",  // C0-C7
      "e", "e", "e", "e", "i", "i", "i",  "i",  // C8-CF
      "d", "n", "o", "o", "o", "o", "o",  " ",  // D0-D7 (D7 = multiplication sign)
      "o", "u", "u", "u", "u", "y", "th", "ss", // D8-DF
      "a", "a", "a", "a", "a", "a", "ae", "c",  // E0-E7
      "e", "e", "e", "e", "i", "i", "i",  "i",  // E8-EF
      "d", "n", "o", "o", "o", "o", "o",  " ",  // F0-F7 (F7 = division sign)
      "o", "u", "u", "u", "u", "y", "th", "y",  // F8-FF
  };
  return table[cp - 0xC0];
}

// ASCII folds for Latin Extended-A U+0100..U+017F.
const char* fold_latin_ext_a(std::uint32_t cp) {
  static const char* const table[128] = {
      "a",  "a",  "a", "a", "a", "a",                               // 0100-0105
      "c",  "c",  "c", "c", "c", "c", "c", "c",                     // 0106-010D
      "d",  "d",  "d", "d",                                         // 010E-0111
      "e",  "e",  "e", "e", "e", "e", "e", "e", "e", "e",           // 0112-011B
      "g",  "g",  "g", "g", "g", "g", "g", "g",                     // 011C-0123
      "h",  "h",  "h", "h",                                         // 0124-0127
      "i",  "i",  "i", "i", "i", "i", "i", "i", "i", "i",           // 0128-0131
      "ij", "ij",                                                   // 0132-0133
      "j",  "j",                                                    // 0134-0135
      "k",  "k",  "k",                                              // 0136-0138
      "l",  "l",  "l", "l", "l", "l", "l", "l", "l", "l",           // 0139-0142
      "n",  "n",  "n", "n", "n", "n", "n", "n", "n",                // 0143-014B
      "o",  "o",  "o", "o", "o", "o",                               // 014C-0151
      "oe", "oe",                                                   // 0152-0153
      "r",  "r",  "r", "r", "r", "r",                               // 0154-0159
      "s",  "s",  "s", "s", "s", "s", "s", "s",                     // 015A-0161
      "t",  "t",  "t", "t", "t", "t",                               // 0162-0167
      "u",  "u",  "u", "u", "u", "u", "u", "u", "u", "u", "u", "u", // 0168-0173
      "w",  "w",                                                    // 0174-0175
      "y",  "y",  "y",                                              // 0176-0178
      "z",  "z",  "z", "z", "z", "z",                               // 0179-017E
      "s",                                                          // 017F
  };
  return table[cp - 0x100];
}

// Folds one code point to its contribution: lowercase ASCII letters/digits,
// "" for dropped marks, or " " as a separator.
const char* fold(std::uint32_t cp, char* scratch) {
  if (cp < 0x80) {
    char c = static_cast<char>(cp);
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      scratch[0] = c;
      scratch[1] = '\0';
      return scratch;
    }
    return " ";
  }
  if (cp >= 0x300 && cp <= 0x36F) return "";  // combining diacritics
  if (cp >= 0xC0 && cp <= 0xFF) return fold_latin1(cp);
  if (cp >= 0x100 && cp <= 0x17F) return fold_latin_ext_a(cp);
  return " ";
}

std::uint32_t pack_token(std::string_view tok) {
  std::uint32_t code = 0;
  for (char c : tok) code = (code << 8) | static_cast<unsigned char>(c);
  return code;
}

template <typename Sink>
void for_each_token(std::string_view normalized, Sink&& sink) {
  std::size_t i = 0;
  const std::size_t n = normalized.size();
  while (i < n) {
    while (i < n && normalized[i] == ' ') ++i;
    std::size_t start = i;
    while (i < n && normalized[i] != ' ') ++i;
    std::size_t len = i - start;
    if (len == 0) continue;
    if (len == 1) {
      sink(normalized.substr(start, 1));
    } else {
      for (std::size_t k = 0; k + 1 < len; ++k) sink(normalized.substr(start + k, 2));
    }
  }
}

}  // namespace

std::string normalize_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  char scratch[2];
  std::size_t i = 0;
  while (i < raw.size()) {
    std::uint32_t cp = next_codepoint(raw, i);
    const char* piece = fold(cp, scratch);
    if (piece[0] == '\0') continue;
    if (piece[0] == ' ' && piece[1] == '\0') {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.append(piece);
  }
  return out;
}

TokenMultiset tokenize(std::string_view normalized) {
  TokenMultiset tokens;
  for_each_token(normalized, [&](std::string_view tok) { ++tokens[std::string(tok)]; });
  return tokens;
}

TokenVector TokenVector::from_normalized(std::string_view normalized) {
  // Token codes for bigrams over [a-z0-9] fit in 16 bits; use a flat map.
  std::map<std::uint32_t, int> acc;
  for_each_token(normalized, [&](std::string_view tok) { ++acc[pack_token(tok)]; });
  TokenVector v;
  v.counts_.assign(acc.begin(), acc.end());
  double sq = 0.0;
  for (const auto& [code, count] : v.counts_) {
    sq += static_cast<double>(count) * count;
    v.total_ += count;
    v.max_count_ = std::max(v.max_count_, count);
  }
  v.norm_ = std::sqrt(sq);
  return v;
}

TokenVector TokenVector::from_raw(std::string_view raw) {
  return from_normalized(normalize_text(raw));
}

double TokenVector::cosine(const TokenVector& other) const {
  if (counts_.empty() && other.counts_.empty()) return 1.0;
  if (counts_.empty() || other.counts_.empty()) return 0.0;
  std::int64_t dot = 0;
  auto a = counts_.begin();
  auto b = other.counts_.begin();
  while (a != counts_.end() && b != other.counts_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      dot += static_cast<std::int64_t>(a->second) * b->second;
      ++a;
      ++b;
    }
  }
  double value = static_cast<double>(dot) / (norm_ * other.norm_);
  // Clamp float noise so the result honors the [0,1] contract.
  if (value > 1.0) value = 1.0;
  if (value < 0.0) value = 0.0;
  return value;
}

double cosine(std::string_view a, std::string_view b) {
  return TokenVector::from_raw(a).cosine(TokenVector::from_raw(b));
}

bool same_entity(std::string_view a, std::string_view b, double threshold) {
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw Error(Errc::InvalidThreshold, "threshold must be in (0,1], got " + std::to_string(threshold));
  }
  return cosine(a, b) >= threshold;
}

}  // namespace scigraph
