#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hkp {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle into [-pi, pi).
double reduce_angle(double theta);

enum class SingularityClass { kJump, kOscillatory, kBlowup };

/// Monotone change of variables around a singular point. `phase` maps the
/// offset x = theta - location to the oscillation variable t, with |t| -> inf
/// as x -> 0; the integrand oscillates with half-period `half_period` in t.
struct PhaseHint {
  std::function<double(double)> phase;
  std::function<double(double)> offset;
  std::function<double(double)> doffset;
  double half_period = kPi;

  /// t = scale * cot(x / 2), valid for 0 < |x| < pi.
  static PhaseHint cot_half(double scale);
  /// t = scale / x, valid for 0 < |x| < pi.
  static PhaseHint reciprocal(double scale);
};

struct SingularityDescriptor {
  double location = 0.0;
  SingularityClass cls = SingularityClass::kJump;
  std::optional<PhaseHint> phase_hint;
};

enum class TraceKind {
  kClosedForm,
  kPiecewiseConstant,
  kSpikeFamily,
  kSineMode,
  kSlowDecay,
  kTabulated,
};

std::string_view to_string(TraceKind kind) noexcept;

struct Spike {
  double center = 0.0;
  double half_width = 0.0;
  double height = 0.0;
};

struct SineModeData {
  int n = 1;
  double amplitude = 1.0;
  bool cosine = false;
};

/// Everything a caller needs to define an arbitrary trace.
struct ClosedFormSpec {
  std::function<double(double)> value;
  std::function<double(double)> derivative;  // optional
  std::vector<SingularityDescriptor> singularities;
  std::vector<double> hints;  // smooth but steep features worth a panel split
  std::string label = "closed-form";
};

namespace detail {
class TraceModel;
}

/// A 2pi-periodic real boundary trace. Immutable; copies share state.
class BoundaryFunction {
 public:
  static BoundaryFunction constant(double c);
  static BoundaryFunction sine(int n, double amplitude = 1.0);
  static BoundaryFunction cosine(int n, double amplitude = 1.0);
  /// chi_[a, b) on the circle, b - a <= 2pi.
  static BoundaryFunction indicator(double a, double b);
  /// values[i] holds on [breaks[i], breaks[i+1]); the last piece wraps.
  static BoundaryFunction piecewise_constant(std::vector<double> breaks,
                                             std::vector<double> values);
  static BoundaryFunction spikes(std::vector<Spike> spikes);
  /// Periodic linear interpolation of strictly increasing samples in [-pi, pi).
  static BoundaryFunction tabulated(std::vector<double> theta, std::vector<double> values);
  /// Equals `on_unit(theta)` for 0 < theta < 1 and vanishes elsewhere.
  static BoundaryFunction slow_decay(std::function<double(double)> on_unit, std::string label);
  static BoundaryFunction closed_form(ClosedFormSpec spec);
  static BoundaryFunction linear_combination(
      const std::vector<std::pair<double, BoundaryFunction>>& terms);

  BoundaryFunction scaled(double factor) const;
  BoundaryFunction operator+(const BoundaryFunction& other) const;
  BoundaryFunction operator-(const BoundaryFunction& other) const;

  TraceKind kind() const;
  const std::string& label() const;

  /// Convention-aware evaluation: right limit at jumps, throws
  /// undefined-at-singularity exactly at oscillatory/blowup points.
  double operator()(double theta) const;
  /// Raw evaluation after angle reduction; no singularity checks.
  double value(double theta) const;
  double left_limit(double theta) const;
  double right_limit(double theta) const;

  bool has_derivative() const;
  /// Derivative off the singular set. Requires has_derivative().
  double derivative(double theta) const;

  const std::vector<SingularityDescriptor>& singularities() const;
  const std::vector<double>& hints() const;
  /// Sorted locations of jump singularities.
  std::vector<double> jump_locations() const;
  bool has_nonabsolute_singularity() const;

  /// Kind payloads; nullptr / nullopt when the kind differs.
  std::optional<SineModeData> sine_mode() const;
  const std::vector<Spike>* spike_data() const;
  std::optional<std::pair<std::vector<double>, std::vector<double>>> pieces() const;
  std::optional<std::pair<std::vector<double>, std::vector<double>>> samples() const;

  /// Exact total variation when the kind admits one.
  std::optional<double> exact_variation() const;
  std::optional<double> exact_inf_abs() const;

  const detail::TraceModel& model() const { return *model_; }

 private:
  explicit BoundaryFunction(std::shared_ptr<const detail::TraceModel> model);
  std::shared_ptr<const detail::TraceModel> model_;
};

double evaluate(const BoundaryFunction& f, double theta);

/// Reads "theta,value" rows (optional header) into a tabulated trace.
BoundaryFunction read_tabulated_csv(std::istream& is);

/// A boundary function of bounded variation with its cached variation.
class BVFunction {
 public:
  /// Computes the variation; throws not-bounded-variation for oscillatory or
  /// blowup singularities.
  explicit BVFunction(BoundaryFunction base);

  const BoundaryFunction& base() const { return base_; }
  double variation() const { return variation_; }
  bool right_continuous() const { return right_continuous_; }
  bool normalized_at_minus_pi() const { return normalized_; }
  bool is_nbv() const { return right_continuous_ && normalized_; }

 private:
  BoundaryFunction base_;
  double variation_ = 0.0;
  bool right_continuous_ = true;
  bool normalized_ = false;
};

/// Total variation over one period including the wrap point.
double variation(const BVFunction& g);
double variation(const BoundaryFunction& g);
/// inf over [-pi, pi] of |g|, one-sided limits included.
double inf_abs(const BVFunction& g);
/// Right-continuous representative shifted to vanish at -pi.
BVFunction nbv_normalize(const BVFunction& g);

/// Finite positive Borel measure on the circle: atoms plus a density.
class RadialMeasure {
 public:
  struct Atom {
    double location = 0.0;
    double mass = 0.0;
  };

  RadialMeasure(std::vector<Atom> atoms, std::optional<BoundaryFunction> density = std::nullopt);

  static RadialMeasure dirac(double location, double mass = 1.0);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<BoundaryFunction>& density() const { return density_; }
  double total_mass() const { return total_mass_; }

  RadialMeasure operator+(const RadialMeasure& other) const;
  RadialMeasure scaled(double factor) const;

 private:
  std::vector<Atom> atoms_;
  std::optional<BoundaryFunction> density_;
  double total_mass_ = 0.0;
};

}  // namespace hkp
