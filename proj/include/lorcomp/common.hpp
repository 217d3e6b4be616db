#ifndef LORCOMP_COMMON_HPP_
#define LORCOMP_COMMON_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace lorcomp {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double k, const Vec3& v) {
  return {k * v[0], k * v[1], k * v[2]};
}

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// Default tolerances. Closed-form identities are held to kTolExact;
// sprinkle scans accumulate over two realizations and a gluing and get
// the looser kTolScan.
constexpr double kTolExact = 1e-9;
constexpr double kTolScan = 1e-7;

struct InvalidPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CausalityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SizeBoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidTriangleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Seedable RNG with a platform-independent uniform double, so generated
// instances are reproducible byte for byte across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  int uniformInt(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

}  // namespace lorcomp

#endif  // LORCOMP_COMMON_HPP_
