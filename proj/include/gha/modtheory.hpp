#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gha/dynamics.hpp"
#include "gha/matrix.hpp"

namespace gha {

// Finite-dimensional simple modules, realized on the basis t^0..t^{n-1}.
// In all three families z acts as the scalar z_value.

/// x permutes the weight spaces cyclically and x^n = a:
///   h t^i = w(i) t^i,  x t^i = t^{i+1},  y t^i = (w(i) + z) t^{i-1},
/// with t^n = a t^0 and t^{-1} = a^{-1} t^{n-1}.
struct XCyclicModule {
  Orbit weights;
  Scalar z_value;
  Scalar a;
};

/// y permutes the weight spaces cyclically and y^n = a^{-1}:
///   h t^i = w(i) t^i,  x t^i = (w(i+1) + z) t^{i+1},  y t^i = t^{i-1}.
/// Simple only when w(i) + z = 0 for some i, which makes x nilpotent.
struct YCyclicModule {
  Orbit weights;
  Scalar z_value;
  Scalar a;
};

/// x is a single nilpotent Jordan block, y t^0 = 0:
///   h t^i = f^{(i)}(-z) t^i,  x t^i = t^{i+1},  y t^i = (z + f^{(i)}(-z)) t^{i-1}.
/// Requires z + f^{(n)}(-z) = 0; simple iff z + f^{(i)}(-z) != 0 for 0 < i < n.
struct NilpotentModule {
  Scalar z_value;
  unsigned dim;
};

using ModuleDescriptor = std::variant<XCyclicModule, YCyclicModule, NilpotentModule>;

unsigned dimension(const ModuleDescriptor& d);
Backend backend(const ModuleDescriptor& d);
std::string kind_name(const ModuleDescriptor& d);

struct Violation {
  std::string message;
  /// An inequality held only within tolerance.
  bool borderline = false;
};

struct ValidateOptions {
  /// Also check the conditions that make the module simple (some w(i) + z = 0
  /// for y-cyclic; the nonvanishing conditions for nilpotent).
  bool simplicity = true;
};

/// Constraint violations of `d` against f (empty when valid). Approximate
/// equalities hold within 10*tol; an inequality whose value is within 10*tol
/// of zero is a borderline violation.
std::vector<Violation> validate(const ModuleDescriptor& d, const Poly& f, const ValidateOptions& opts = {});

struct MatrixModule {
  std::size_t n = 0;
  Matrix X{0, Backend::exact};
  Matrix H{0, Backend::exact};
  Matrix Y{0, Backend::exact};

  Backend backend() const { return X.backend(); }
};

/// Throws DomainError naming the first violated constraint.
MatrixModule build(const ModuleDescriptor& d, const Poly& f, const ValidateOptions& opts = {});

struct RelationReport {
  bool ok = false;
  /// Max-entry residuals of hx - x f(h), yh - f(h) y, yx - xy - (f(h) - h).
  std::array<double, 3> residuals{};
};

RelationReport verify_relations(const MatrixModule& m, const Poly& f);

std::size_t burnside_dimension(const MatrixModule& m);
bool is_simple(const MatrixModule& m);

/// The descriptor of a simple module, with canonical weights. Exact
/// weights are searched in Q(zeta_N), N = lcm(conductor, entry and f
/// conductors); failing that the result is approximate.
ModuleDescriptor classify(const MatrixModule& m, const Poly& f, unsigned conductor = 1);

bool modules_isomorphic(const ModuleDescriptor& a, const ModuleDescriptor& b);

struct EnumerateConfig {
  unsigned conductor = 1;
  unsigned samples = 2;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// x-cyclic modules over one orbit: z_value and a != 0 are free.
struct XCyclicFamily {
  Orbit weights;
  std::vector<XCyclicModule> samples;
};

/// y-cyclic modules over one orbit: z_value in {-w(i)}, a != 0 free.
struct YCyclicFamily {
  Orbit weights;
  std::vector<Scalar> z_values;
  std::vector<YCyclicModule> samples;
};

/// Both cyclic families over every orbit center + b*multiplier^i, b != 0.
struct ContinuumFamily {
  OrbitFamily orbits;
  std::vector<XCyclicModule> x_samples;
  std::vector<YCyclicModule> y_samples;
};

struct RejectedNilpotent {
  Scalar z_value;
  unsigned index;  // first i with z + f^{(i)}(-z) = 0
  bool borderline = false;
};

struct SimpleModules {
  unsigned dim = 0;
  std::vector<XCyclicFamily> x_cyclic;
  std::vector<YCyclicFamily> y_cyclic;
  std::optional<ContinuumFamily> continuum;
  /// Finitely many nilpotent modules, unless nilpotent_free.
  std::vector<NilpotentModule> nilpotent;
  /// z + f^{(n)}(-z) vanishes identically: every z outside
  /// nilpotent_excluded gives a simple nilpotent module.
  bool nilpotent_free = false;
  std::vector<Scalar> nilpotent_excluded;
  std::vector<NilpotentModule> nilpotent_samples;
  std::vector<RejectedNilpotent> rejected;
  /// Roots that could not be grouped into orbits.
  std::vector<Scalar> residual_roots;

  bool empty() const;
};

/// All n-dimensional simple modules up to isomorphism. Throws DomainError
/// for f = h (commutative case).
SimpleModules enumerate_simples(const Poly& f, unsigned n, const EnumerateConfig& config = {});

}  // namespace gha
