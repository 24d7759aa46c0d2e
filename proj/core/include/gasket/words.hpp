#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gasket/periodic.hpp"

namespace gasket {

/// A digit of the symmetric ternary alphabet {-1, 0, 1}.
enum class Trit : std::int8_t { kMinus = -1, kZero = 0, kPlus = 1 };

constexpr int value(Trit t) noexcept { return static_cast<int>(t); }
constexpr Trit negate(Trit t) noexcept { return static_cast<Trit>(-static_cast<int>(t)); }

/// Checked conversion; throws DomainError outside {-1, 0, 1}.
Trit make_trit(int v);

using TernaryWord = std::vector<Trit>;
using TernarySeq = EventuallyPeriodic<Trit>;

TernaryWord make_word(std::initializer_list<int> digits);

inline constexpr int kDefaultMaxBlockExponent = 24;
inline constexpr int kHardMaxBlockExponent = 30;

/// Thue-Morse bit, 0-based: tau(0) = 0, tau(2i) = tau(i), tau(2i+1) = 1 - tau(i).
int tau(std::uint64_t i) noexcept;

/// First difference of Thue-Morse, 1-based: lambda(i) = tau(i) - tau(i-1).
/// Throws DomainError for i == 0.
Trit lambda(std::uint64_t i);

/// The block lambda_1 ... lambda_{2^n}. Throws ResourceError for n > max_exponent.
TernaryWord eps(int n, int max_exponent = kDefaultMaxBlockExponent);

/// Digitwise negation (reflection with respect to {-1, 0, 1}).
TernaryWord reflect(std::span<const Trit> w);
TernarySeq reflect(const TernarySeq& s);

/// Last digit +1 / -1. Throws DomainError on an empty word or when the
/// last digit is already 1 (resp. -1).
TernaryWord inc_last(TernaryWord w);
TernaryWord dec_last(TernaryWord w);

TernaryWord concat(std::initializer_list<std::span<const Trit>> parts);

/// Left shift by i positions.
TernarySeq shift(const TernarySeq& s, std::size_t i);

/// (eps_n reflect(eps_n))^inf for n >= 0; for n == -1 the convention
/// eps_{-1} reflect(eps_{-1}) := 00 gives 0^inf.
TernarySeq eps_pair_tail(int n, int max_exponent = kDefaultMaxBlockExponent);

std::size_t count_zeros(std::span<const Trit> w) noexcept;

// Text form. Words are packed over the characters '-', '0', '+', or listed
// as comma-separated integers ("-1,0,1"). Sequences are written
// "pre;per^inf"; the preperiod and the ';' may be omitted. Whitespace is
// ignored. to_string always emits the packed canonical form.
std::string to_string(std::span<const Trit> w);
std::string to_string(const TernarySeq& s);
TernaryWord parse_word(std::string_view text);
TernarySeq parse_seq(std::string_view text);

}  // namespace gasket
