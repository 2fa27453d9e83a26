#pragma once

// Arithmetic in GF(2^8) modulo x^8 + x^4 + x^3 + x^2 + 1 (0x11D), with
// log/antilog tables generated at compile time.

#include <array>
#include <cstdint>
#include <stdexcept>

namespace frlab::gf256 {

using Element = std::uint8_t;

inline constexpr unsigned kPolynomial = 0x11D;

namespace detail {

struct Tables {
  std::array<Element, 512> exp{};
  std::array<int, 256> log{};
};

constexpr Tables make_tables() {
  Tables t;
  unsigned x = 1;
  for (int i = 0; i < 255; ++i) {
    t.exp[i] = static_cast<Element>(x);
    t.log[x] = i;
    x <<= 1;
    if (x & 0x100) x ^= kPolynomial;
  }
  // doubled so exp[log a + log b] needs no reduction
  for (int i = 255; i < 512; ++i) t.exp[i] = t.exp[i - 255];
  t.log[0] = -1;
  return t;
}

inline constexpr Tables kTables = make_tables();

}  // namespace detail

constexpr Element add(Element a, Element b) { return a ^ b; }
constexpr Element sub(Element a, Element b) { return a ^ b; }

constexpr Element mul(Element a, Element b) {
  if (a == 0 || b == 0) return 0;
  return detail::kTables.exp[detail::kTables.log[a] + detail::kTables.log[b]];
}

inline Element inv(Element a) {
  if (a == 0) throw std::domain_error("zero has no inverse in GF(256)");
  return detail::kTables.exp[255 - detail::kTables.log[a]];
}

inline Element div(Element a, Element b) { return mul(a, inv(b)); }

}  // namespace frlab::gf256
