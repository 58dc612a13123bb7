#pragma once

#include <stdexcept>
#include <string>

namespace prufer {

// Exact counters for the enumerator. 128 bits cover every enumerable order
// with a wide margin; the multiply still checks, so an impossible request
// fails loudly instead of wrapping.
using u128 = unsigned __int128;

inline u128 u128_mul_checked(u128 a, u128 b) {
  if (a != 0 && b > ~u128{0} / a) {
    throw std::overflow_error("128-bit counter overflow");
  }
  return a * b;
}

inline u128 u128_pow(u128 base, int exp) {
  u128 out = 1;
  for (int i = 0; i < exp; ++i) out = u128_mul_checked(out, base);
  return out;
}

inline u128 u128_gcd(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::string u128_to_string(u128 x) {
  if (x == 0) return "0";
  std::string out;
  while (x != 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  return out;
}

// Reduced fraction "p/q".
inline std::string fraction_string(u128 num, u128 den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  const u128 g = num == 0 ? den : u128_gcd(num, den);
  return u128_to_string(num / g) + "/" + u128_to_string(den / g);
}

}  // namespace prufer
