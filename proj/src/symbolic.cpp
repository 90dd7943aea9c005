#include "tent/symbolic.hpp"

#include <algorithm>

#include "tent/error.hpp"

namespace tent {

char to_char(Symbol s) {
  switch (s) {
    case Symbol::Zero: return '0';
    case Symbol::Crit: return 'C';
    case Symbol::One: return '1';
  }
  return '?';
}

Symbol symbol_from_char(char ch) {
  switch (ch) {
    case '0': return Symbol::Zero;
    case '1': return Symbol::One;
    case 'C':
    case 'c': return Symbol::Crit;
    default: break;
  }
  throw Error(ErrorCode::ParseError, std::string("bad symbol '") + ch + "'");
}

std::string to_string(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (Symbol s : w) out.push_back(to_char(s));
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char ch : text) w.push_back(symbol_from_char(ch));
  return w;
}

const char* to_string(Parity p) { return p == Parity::Even ? "EVEN" : "ODD"; }

std::size_t count_ones(const Word& w) {
  return static_cast<std::size_t>(std::count(w.begin(), w.end(), Symbol::One));
}

Parity parity(const Word& w) { return parity(w, w.size()); }

Parity parity(const Word& w, std::size_t n) {
  n = std::min(n, w.size());
  auto ones = std::count(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n),
                         Symbol::One);
  return ones % 2 == 0 ? Parity::Even : Parity::Odd;
}

namespace {

Word primitive_root(const Word& per) {
  const std::size_t p = per.size();
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < p && ok; ++i) ok = per[i] == per[i - d];
    if (ok) return Word(per.begin(), per.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return per;
}

}  // namespace

EPSeq::EPSeq(Word preperiod, Word period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw Error(ErrorCode::InvalidArgument, "empty period");
  per_ = primitive_root(per_);
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.pop_back();
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
  }
}

Word EPSeq::prefix(std::size_t n) const {
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

EPSeq EPSeq::shift(std::size_t n) const {
  if (n <= pre_.size()) {
    return EPSeq(Word(pre_.begin() + static_cast<std::ptrdiff_t>(n), pre_.end()),
                 per_);
  }
  Word per = per_;
  std::size_t r = (n - pre_.size()) % per.size();
  std::rotate(per.begin(), per.begin() + static_cast<std::ptrdiff_t>(r), per.end());
  return EPSeq({}, std::move(per));
}

bool EPSeq::contains(Symbol s) const { return find(s).has_value(); }

std::optional<std::size_t> EPSeq::find(Symbol s) const {
  for (std::size_t i = 0; i < pre_.size() + per_.size(); ++i) {
    if (at(i) == s) return i;
  }
  return std::nullopt;
}

std::string EPSeq::to_string() const {
  return tent::to_string(pre_) + "(" + tent::to_string(per_) + ")";
}

EPSeq canonical(const EPSeq& e) { return EPSeq(e.preperiod(), e.period()); }

SeqView::SeqView(EPSeq seq) : exact_(std::move(seq)) {}

SeqView::SeqView(Word finite)
    : word_(std::make_shared<const Word>(std::move(finite))) {}

std::size_t SeqView::known_length() const {
  return exact_ ? kInfinite : word_->size() - offset_;
}

Symbol SeqView::at(std::size_t i) const {
  if (exact_) return exact_->at(i);
  if (i >= known_length()) {
    throw Error(ErrorCode::InsufficientPrefix,
                "index " + std::to_string(i) + " beyond known prefix of length " +
                    std::to_string(known_length()));
  }
  return (*word_)[offset_ + i];
}

Word SeqView::prefix(std::size_t n) const {
  if (n > known_length()) {
    throw Error(ErrorCode::InsufficientPrefix,
                "prefix of length " + std::to_string(n) + " requested from " +
                    std::to_string(known_length()) + " known symbols");
  }
  if (exact_) return exact_->prefix(n);
  auto first = word_->begin() + static_cast<std::ptrdiff_t>(offset_);
  return Word(first, first + static_cast<std::ptrdiff_t>(n));
}

SeqView SeqView::shift(std::size_t n) const {
  if (exact_) return SeqView(exact_->shift(n));
  if (n > known_length()) {
    throw Error(ErrorCode::InsufficientPrefix, "shift beyond known prefix");
  }
  return SeqView(word_, offset_ + n);
}

std::string SeqView::to_string() const {
  if (exact_) return exact_->to_string();
  return tent::to_string(prefix(known_length()));
}

SeqView parse_sequence(std::string_view text) {
  auto open = text.find('(');
  if (open == std::string_view::npos) {
    if (text.find(')') != std::string_view::npos) {
      throw Error(ErrorCode::ParseError, "unbalanced ')' in sequence");
    }
    return SeqView(parse_word(text));
  }
  auto close = text.find(')', open);
  if (close == std::string_view::npos || close + 1 != text.size()) {
    throw Error(ErrorCode::ParseError,
                "expected PRE(PERIOD) with ')' as the last character");
  }
  Word pre = parse_word(text.substr(0, open));
  Word per = parse_word(text.substr(open + 1, close - open - 1));
  if (per.empty()) throw Error(ErrorCode::ParseError, "empty period '()'");
  return SeqView(EPSeq(std::move(pre), std::move(per)));
}

EPSeq parse_epseq(std::string_view text) {
  SeqView v = parse_sequence(text);
  if (!v.is_exact()) {
    throw Error(ErrorCode::ParseError,
                "expected an eventually periodic sequence PRE(PERIOD), got '" +
                    std::string(text) + "'");
  }
  return v.exact();
}

const char* to_string(Order o) {
  switch (o) {
    case Order::LT: return "LT";
    case Order::GT: return "GT";
    case Order::EqToDepth: return "EQ_TO_DEPTH";
  }
  return "?";
}

namespace {

void require_depth(const SeqView& v, std::size_t depth) {
  if (v.known_length() < depth) {
    throw Error(ErrorCode::InsufficientPrefix,
                "sequence known to " + std::to_string(v.known_length()) +
                    " symbols, depth " + std::to_string(depth) + " requested");
  }
}

}  // namespace

std::optional<std::size_t> discrepancy(const SeqView& s, const SeqView& t,
                                       std::size_t depth) {
  require_depth(s, depth);
  require_depth(t, depth);
  for (std::size_t k = 0; k < depth; ++k) {
    if (s.at(k) != t.at(k)) return k;
  }
  return std::nullopt;
}

Order plex_compare(const SeqView& s, const SeqView& t, std::size_t depth) {
  require_depth(s, depth);
  require_depth(t, depth);
  bool odd = false;
  for (std::size_t k = 0; k < depth; ++k) {
    Symbol a = s.at(k);
    Symbol b = t.at(k);
    if (a != b) return order_at(odd ? Parity::Odd : Parity::Even, a, b);
    if (a == Symbol::One) odd = !odd;
  }
  return Order::EqToDepth;
}

std::vector<std::size_t> find_segment(const Word& needle, const SeqView& hay,
                                      std::size_t from, std::size_t horizon) {
  require_depth(hay, horizon);
  std::vector<std::size_t> hits;
  if (needle.size() > horizon) return hits;
  for (std::size_t p = from; p + needle.size() <= horizon; ++p) {
    bool match = true;
    for (std::size_t i = 0; i < needle.size() && match; ++i) {
      match = hay.at(p + i) == needle[i];
    }
    if (match) hits.push_back(p);
  }
  return hits;
}

}  // namespace tent
