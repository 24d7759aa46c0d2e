#include "gasket/words.hpp"

#include <bit>
#include <cctype>
#include <charconv>

namespace gasket {

Trit make_trit(int v) {
  if (v < -1 || v > 1) throw DomainError("ternary digit out of range: " + std::to_string(v));
  return static_cast<Trit>(v);
}

TernaryWord make_word(std::initializer_list<int> digits) {
  TernaryWord w;
  w.reserve(digits.size());
  for (int d : digits) w.push_back(make_trit(d));
  return w;
}

int tau(std::uint64_t i) noexcept { return std::popcount(i) & 1; }

Trit lambda(std::uint64_t i) {
  if (i == 0) throw DomainError("lambda is indexed from 1");
  return static_cast<Trit>(tau(i) - tau(i - 1));
}

TernaryWord eps(int n, int max_exponent) {
  if (n < 0) throw DomainError("block exponent must be nonnegative");
  if (n > max_exponent || n > kHardMaxBlockExponent) {
    throw ResourceError("block exponent " + std::to_string(n) + " exceeds cap " +
                        std::to_string(std::min(max_exponent, kHardMaxBlockExponent)));
  }
  const std::uint64_t len = std::uint64_t{1} << n;
  TernaryWord w;
  w.reserve(len);
  for (std::uint64_t i = 1; i <= len; ++i) w.push_back(static_cast<Trit>(tau(i) - tau(i - 1)));
  return w;
}

TernaryWord reflect(std::span<const Trit> w) {
  TernaryWord out;
  out.reserve(w.size());
  for (Trit t : w) out.push_back(negate(t));
  return out;
}

TernarySeq reflect(const TernarySeq& s) { return s.transformed(negate); }

TernaryWord inc_last(TernaryWord w) {
  if (w.empty()) throw DomainError("inc_last of empty word");
  if (w.back() == Trit::kPlus) throw DomainError("inc_last: last digit already maximal");
  w.back() = static_cast<Trit>(value(w.back()) + 1);
  return w;
}

TernaryWord dec_last(TernaryWord w) {
  if (w.empty()) throw DomainError("dec_last of empty word");
  if (w.back() == Trit::kMinus) throw DomainError("dec_last: last digit already minimal");
  w.back() = static_cast<Trit>(value(w.back()) - 1);
  return w;
}

TernaryWord concat(std::initializer_list<std::span<const Trit>> parts) {
  std::size_t total = 0;
  for (auto p : parts) total += p.size();
  TernaryWord out;
  out.reserve(total);
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

TernarySeq shift(const TernarySeq& s, std::size_t i) { return s.shifted(i); }

TernarySeq eps_pair_tail(int n, int max_exponent) {
  if (n == -1) return TernarySeq::constant(Trit::kZero);
  const TernaryWord e = eps(n, max_exponent);
  return TernarySeq({}, concat({e, reflect(e)}));
}

std::size_t count_zeros(std::span<const Trit> w) noexcept {
  std::size_t z = 0;
  for (Trit t : w) z += (t == Trit::kZero);
  return z;
}

std::string to_string(std::span<const Trit> w) {
  std::string s;
  s.reserve(w.size());
  for (Trit t : w) s.push_back(t == Trit::kMinus ? '-' : t == Trit::kZero ? '0' : '+');
  return s;
}

std::string to_string(const TernarySeq& s) {
  if (s.preperiod().empty()) return to_string(s.period()) + "^inf";
  return to_string(s.preperiod()) + ";" + to_string(s.period()) + "^inf";
}

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

TernaryWord parse_word_stripped(std::string_view s) {
  TernaryWord w;
  if (s.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t end = std::min(s.find(',', pos), s.size());
      const std::string_view tok = s.substr(pos, end - pos);
      int v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw DomainError("bad digit '" + std::string(tok) + "' in word literal");
      }
      w.push_back(make_trit(v));
      pos = end + 1;
    }
    return w;
  }
  for (char c : s) {
    switch (c) {
      case '-': w.push_back(Trit::kMinus); break;
      case '0': w.push_back(Trit::kZero); break;
      case '+': w.push_back(Trit::kPlus); break;
      default: throw DomainError(std::string("bad character '") + c + "' in word literal");
    }
  }
  return w;
}

}  // namespace

TernaryWord parse_word(std::string_view text) { return parse_word_stripped(strip_spaces(text)); }

TernarySeq parse_seq(std::string_view text) {
  std::string s = strip_spaces(text);
  constexpr std::string_view kSuffix = "^inf";
  if (s.size() < kSuffix.size() || s.compare(s.size() - kSuffix.size(), kSuffix.size(), kSuffix) != 0) {
    throw DomainError("sequence literal must end with ^inf: '" + std::string(text) + "'");
  }
  s.resize(s.size() - kSuffix.size());
  const std::size_t semi = s.find(';');
  std::string_view pre, per;
  if (semi == std::string::npos) {
    per = s;
  } else {
    pre = std::string_view(s).substr(0, semi);
    per = std::string_view(s).substr(semi + 1);
  }
  if (per.empty()) throw DomainError("sequence literal has an empty period");
  return TernarySeq(pre.empty() ? TernaryWord{} : parse_word_stripped(pre), parse_word_stripped(per));
}

}  // namespace gasket
