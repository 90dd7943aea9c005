#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tent {

/// Address symbol. The underlying values realise the order 0 < C < 1.
enum class Symbol : std::uint8_t { Zero = 0, Crit = 1, One = 2 };

using Word = std::vector<Symbol>;

char to_char(Symbol s);
Symbol symbol_from_char(char ch);
std::string to_string(const Word& w);
/// Parses a bare word over {0, 1, C}.
Word parse_word(std::string_view text);

enum class Parity { Even, Odd };

const char* to_string(Parity p);
Parity parity(const Word& w);
/// Parity of the first `n` symbols of `w`.
Parity parity(const Word& w, std::size_t n);
std::size_t count_ones(const Word& w);

/// Eventually periodic sequence pre (per)^inf, always held in canonical form:
/// the period is primitive and the preperiod cannot be shortened.
class EPSeq {
 public:
  EPSeq(Word preperiod, Word period);

  const Word& preperiod() const { return pre_; }
  const Word& period() const { return per_; }

  Symbol at(std::size_t i) const {
    if (i < pre_.size()) return pre_[i];
    return per_[(i - pre_.size()) % per_.size()];
  }
  Word prefix(std::size_t n) const;
  EPSeq shift(std::size_t n) const;
  bool contains(Symbol s) const;
  /// Index of the first occurrence of `s`, if any.
  std::optional<std::size_t> find(Symbol s) const;

  std::string to_string() const;

  friend bool operator==(const EPSeq& a, const EPSeq& b) {
    return a.pre_ == b.pre_ && a.per_ == b.per_;
  }
  friend bool operator<(const EPSeq& a, const EPSeq& b) {
    return a.pre_ != b.pre_ ? a.pre_ < b.pre_ : a.per_ < b.per_;
  }

 private:
  Word pre_;
  Word per_;
};

/// Re-canonicalises a (pre, per) pair; exposed for property tests.
EPSeq canonical(const EPSeq& e);

/// Uniform read access to either an exact eventually periodic sequence or a
/// finite word whose continuation is unknown.
class SeqView {
 public:
  static constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

  SeqView(EPSeq seq);  // NOLINT(google-explicit-constructor)
  SeqView(Word finite);  // NOLINT(google-explicit-constructor)

  std::size_t known_length() const;
  bool is_exact() const { return exact_.has_value(); }
  const EPSeq& exact() const { return *exact_; }

  /// Throws InsufficientPrefix when i >= known_length().
  Symbol at(std::size_t i) const;
  Word prefix(std::size_t n) const;
  SeqView shift(std::size_t n) const;

  std::string to_string() const;

 private:
  SeqView(std::shared_ptr<const Word> word, std::size_t offset)
      : word_(std::move(word)), offset_(offset) {}

  std::optional<EPSeq> exact_;
  std::shared_ptr<const Word> word_;
  std::size_t offset_ = 0;
};

/// `PRE(PERIOD)` gives an eventually periodic sequence, a bare word gives a
/// finite word. An empty period `()` is rejected.
SeqView parse_sequence(std::string_view text);
EPSeq parse_epseq(std::string_view text);

enum class Order { LT, GT, EqToDepth };

const char* to_string(Order o);

/// Least k < depth with s_k != t_k.
std::optional<std::size_t> discrepancy(const SeqView& s, const SeqView& t,
                                       std::size_t depth);
Order plex_compare(const SeqView& s, const SeqView& t, std::size_t depth);

/// Decides the order at a known discrepancy index k given the parity of the
/// agreeing prefix.
inline Order order_at(Parity prefix, Symbol a, Symbol b) {
  bool less = prefix == Parity::Even ? a < b : a > b;
  return less ? Order::LT : Order::GT;
}

/// Start positions p, from <= p <= horizon - |needle|, where needle occurs.
std::vector<std::size_t> find_segment(const Word& needle, const SeqView& hay,
                                      std::size_t from, std::size_t horizon);

}  // namespace tent
