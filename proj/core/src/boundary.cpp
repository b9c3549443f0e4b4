#include "hkp/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "csv.hpp"
#include "hkp/error.hpp"
#include "hkp/parallel.hpp"
#include "hkp/quadrature.hpp"

namespace hkp {

double reduce_angle(double theta) {
  if (theta >= -kPi && theta < kPi) return theta;
  double r = std::remainder(theta, kTwoPi);
  if (r >= kPi) r -= kTwoPi;
  if (r < -kPi) r += kTwoPi;
  return r;
}

std::string_view to_string(TraceKind kind) noexcept {
  switch (kind) {
    case TraceKind::kClosedForm: return "ClosedForm";
    case TraceKind::kPiecewiseConstant: return "PiecewiseConstant";
    case TraceKind::kSpikeFamily: return "SpikeFamily";
    case TraceKind::kSineMode: return "SineMode";
    case TraceKind::kSlowDecay: return "SlowDecay";
    case TraceKind::kTabulated: return "Tabulated";
  }
  return "unknown";
}

PhaseHint PhaseHint::cot_half(double scale) {
  PhaseHint h;
  h.phase = [scale](double x) { return scale * std::cos(0.5 * x) / std::sin(0.5 * x); };
  h.offset = [scale](double t) { return 2.0 * std::atan(scale / t); };
  h.doffset = [scale](double t) { return -2.0 * scale / (t * t + scale * scale); };
  return h;
}

PhaseHint PhaseHint::reciprocal(double scale) {
  PhaseHint h;
  h.phase = [scale](double x) { return scale / x; };
  h.offset = [scale](double t) { return scale / t; };
  h.doffset = [scale](double t) { return -scale / (t * t); };
  return h;
}

namespace detail {

class TraceModel {
 public:
  virtual ~TraceModel() = default;
  virtual TraceKind kind() const = 0;
  /// theta already reduced into [-pi, pi).
  virtual double raw(double theta) const = 0;
  virtual bool has_derivative() const { return false; }
  virtual double derivative(double) const { return std::numeric_limits<double>::quiet_NaN(); }
  virtual std::optional<double> exact_variation() const { return std::nullopt; }
  virtual std::optional<double> exact_inf_abs() const { return std::nullopt; }

  std::vector<SingularityDescriptor> singularities;
  std::vector<double> hints;
  std::string label;
};

namespace {

class PiecewiseModel : public TraceModel {
 public:
  PiecewiseModel(std::vector<double> breaks, std::vector<double> values, TraceKind kind)
      : breaks_(std::move(breaks)), values_(std::move(values)), kind_(kind) {
    const std::size_t n = breaks_.size();
    for (std::size_t i = 0; i < n; ++i) {
      double prev = values_[(i + n - 1) % n];
      if (n > 1 && prev != values_[i]) {
        singularities.push_back({breaks_[i], SingularityClass::kJump, std::nullopt});
      }
    }
  }

  TraceKind kind() const override { return kind_; }

  double raw(double theta) const override {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), theta);
    if (it == breaks_.begin()) return values_.back();
    return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
  }

  bool has_derivative() const override { return true; }
  double derivative(double) const override { return 0.0; }

  std::optional<double> exact_variation() const override {
    const std::size_t n = values_.size();
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += std::abs(values_[(i + 1) % n] - values_[i]);
    return v;
  }

  std::optional<double> exact_inf_abs() const override {
    double m = std::numeric_limits<double>::infinity();
    for (double v : values_) m = std::min(m, std::abs(v));
    return m;
  }

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }

  std::vector<Spike> spikes;

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
  TraceKind kind_;
};

class SineModel : public TraceModel {
 public:
  explicit SineModel(SineModeData d) : data(d) {}

  TraceKind kind() const override { return TraceKind::kSineMode; }
  double raw(double theta) const override {
    double a = data.n * theta;
    return data.amplitude * (data.cosine ? std::cos(a) : std::sin(a));
  }
  bool has_derivative() const override { return true; }
  double derivative(double theta) const override {
    double a = data.n * theta;
    return data.amplitude * data.n * (data.cosine ? -std::sin(a) : std::cos(a));
  }
  std::optional<double> exact_variation() const override {
    return 4.0 * data.n * std::abs(data.amplitude);
  }
  std::optional<double> exact_inf_abs() const override { return 0.0; }

  SineModeData data;
};

class TabulatedModel : public TraceModel {
 public:
  TabulatedModel(std::vector<double> theta, std::vector<double> values)
      : theta_(std::move(theta)), values_(std::move(values)) {}

  TraceKind kind() const override { return TraceKind::kTabulated; }

  double raw(double t) const override {
    auto [x0, x1, y0, y1] = segment(t);
    if (t < x0) t += kTwoPi;
    return y0 + (y1 - y0) * (t - x0) / (x1 - x0);
  }
  bool has_derivative() const override { return true; }
  double derivative(double t) const override {
    auto [x0, x1, y0, y1] = segment(t);
    return (y1 - y0) / (x1 - x0);
  }
  std::optional<double> exact_variation() const override {
    const std::size_t n = values_.size();
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += std::abs(values_[(i + 1) % n] - values_[i]);
    return v;
  }
  std::optional<double> exact_inf_abs() const override {
    const std::size_t n = values_.size();
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double a = values_[i], b = values_[(i + 1) % n];
      if (a == 0.0 || a * b < 0.0) return 0.0;
      m = std::min(m, std::abs(a));
    }
    return m;
  }

  const std::vector<double>& theta() const { return theta_; }
  const std::vector<double>& values() const { return values_; }

 private:
  struct Seg {
    double x0, x1, y0, y1;
  };
  Seg segment(double t) const {
    const std::size_t n = theta_.size();
    auto it = std::upper_bound(theta_.begin(), theta_.end(), t);
    if (it == theta_.begin() || it == theta_.end()) {
      // wrap segment from the last sample to the first one plus a period
      return {theta_.back(), theta_.front() + kTwoPi, values_.back(), values_.front()};
    }
    std::size_t i = static_cast<std::size_t>(it - theta_.begin()) - 1;
    (void)n;
    return {theta_[i], theta_[i + 1], values_[i], values_[i + 1]};
  }

  std::vector<double> theta_;
  std::vector<double> values_;
};

class SlowDecayModel : public TraceModel {
 public:
  explicit SlowDecayModel(std::function<double(double)> on_unit) : on_unit_(std::move(on_unit)) {
    singularities.push_back({0.0, SingularityClass::kJump, std::nullopt});
    singularities.push_back({1.0, SingularityClass::kJump, std::nullopt});
  }
  TraceKind kind() const override { return TraceKind::kSlowDecay; }
  double raw(double theta) const override {
    return (theta > 0.0 && theta < 1.0) ? on_unit_(theta) : 0.0;
  }

 private:
  std::function<double(double)> on_unit_;
};

class ClosedFormModel : public TraceModel {
 public:
  explicit ClosedFormModel(ClosedFormSpec spec)
      : value_(std::move(spec.value)), derivative_(std::move(spec.derivative)) {
    singularities = std::move(spec.singularities);
    hints = std::move(spec.hints);
    label = std::move(spec.label);
  }
  TraceKind kind() const override { return TraceKind::kClosedForm; }
  double raw(double theta) const override { return value_(theta); }
  bool has_derivative() const override { return static_cast<bool>(derivative_); }
  double derivative(double theta) const override { return derivative_(theta); }

 private:
  std::function<double(double)> value_;
  std::function<double(double)> derivative_;
};

class CombinationModel : public TraceModel {
 public:
  explicit CombinationModel(std::vector<std::pair<double, BoundaryFunction>> terms)
      : terms_(std::move(terms)) {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& [c, f] = terms_[i];
      if (i) os << " + ";
      os << c << "*" << f.label();
      for (const auto& s : f.singularities()) {
        bool dup = std::any_of(singularities.begin(), singularities.end(), [&](const auto& o) {
          return o.location == s.location && o.cls == s.cls;
        });
        if (!dup) singularities.push_back(s);
      }
      hints.insert(hints.end(), f.hints().begin(), f.hints().end());
    }
    // A jump shadowed by a stronger singularity at the same point is dropped.
    std::erase_if(singularities, [&](const SingularityDescriptor& s) {
      return s.cls == SingularityClass::kJump &&
             std::any_of(singularities.begin(), singularities.end(), [&](const auto& o) {
               return o.location == s.location && o.cls != SingularityClass::kJump;
             });
    });
    std::sort(hints.begin(), hints.end());
    hints.erase(std::unique(hints.begin(), hints.end()), hints.end());
    label = os.str();
    derivative_ok_ = std::all_of(terms_.begin(), terms_.end(),
                                 [](const auto& t) { return t.second.has_derivative(); });
  }
  TraceKind kind() const override { return TraceKind::kClosedForm; }
  double raw(double theta) const override {
    double s = 0.0;
    for (const auto& [c, f] : terms_) s += c * f.model().raw(theta);
    return s;
  }
  bool has_derivative() const override { return derivative_ok_; }
  double derivative(double theta) const override {
    double s = 0.0;
    for (const auto& [c, f] : terms_) s += c * f.model().derivative(theta);
    return s;
  }

 private:
  std::vector<std::pair<double, BoundaryFunction>> terms_;
  bool derivative_ok_ = false;
};

void reduce_locations(TraceModel& m) {
  for (auto& s : m.singularities) s.location = reduce_angle(s.location);
  for (auto& h : m.hints) h = reduce_angle(h);
  std::sort(m.hints.begin(), m.hints.end());
  m.hints.erase(std::unique(m.hints.begin(), m.hints.end()), m.hints.end());
}

}  // namespace
}  // namespace detail

using detail::TraceModel;

BoundaryFunction::BoundaryFunction(std::shared_ptr<const TraceModel> model)
    : model_(std::move(model)) {}

BoundaryFunction BoundaryFunction::constant(double c) {
  auto m = std::make_shared<detail::PiecewiseModel>(std::vector<double>{-kPi}, std::vector<double>{c},
                                                    TraceKind::kPiecewiseConstant);
  std::ostringstream os;
  os << "const(" << c << ")";
  m->label = os.str();
  return BoundaryFunction(std::move(m));
}

BoundaryFunction BoundaryFunction::sine(int n, double amplitude) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "sine mode needs n >= 1");
  auto m = std::make_shared<detail::SineModel>(SineModeData{n, amplitude, false});
  std::ostringstream os;
  os << "sine(" << n << "," << amplitude << ")";
  m->label = os.str();
  return BoundaryFunction(std::move(m));
}

BoundaryFunction BoundaryFunction::cosine(int n, double amplitude) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "cosine mode needs n >= 1");
  auto m = std::make_shared<detail::SineModel>(SineModeData{n, amplitude, true});
  std::ostringstream os;
  os << "cosine(" << n << "," << amplitude << ")";
  m->label = os.str();
  return BoundaryFunction(std::move(m));
}

BoundaryFunction BoundaryFunction::indicator(double a, double b) {
  if (!(b > a)) throw Error(ErrorKind::kInvalidArgument, "indicator needs a < b");
  if (b - a > kTwoPi * (1.0 + 1e-15)) {
    throw Error(ErrorKind::kInvalidArgument, "indicator interval longer than 2pi");
  }
  std::ostringstream os;
  os << "chi(" << a << "," << b << ")";
  BoundaryFunction f = [&] {
    if (b - a >= kTwoPi) return constant(1.0);
    double ra = reduce_angle(a), rb = reduce_angle(b);
    if (ra < rb) return piecewise_constant({ra, rb}, {1.0, 0.0});
    return piecewise_constant({rb, ra}, {0.0, 1.0});
  }();
  auto m = std::make_shared<detail::PiecewiseModel>(
      static_cast<const detail::PiecewiseModel&>(f.model()));
  m->label = os.str();
  return BoundaryFunction(std::move(m));
}

BoundaryFunction BoundaryFunction::piecewise_constant(std::vector<double> breaks,
                                                      std::vector<double> values) {
  if (breaks.empty() || breaks.size() != values.size()) {
    throw Error(ErrorKind::kInvalidArgument, "piecewise constant needs matching breaks/values");
  }
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (breaks[i] < -kPi || breaks[i] >= kPi || (i && !(breaks[i] > breaks[i - 1]))) {
      throw Error(ErrorKind::kInvalidArgument,
                  "piecewise constant breakpoints must increase strictly within [-pi, pi)");
    }
  }
  auto m = std::make_shared<detail::PiecewiseModel>(std::move(breaks), std::move(values),
                                                    TraceKind::kPiecewiseConstant);
  m->label = "piecewise";
  return BoundaryFunction(std::move(m));
}

BoundaryFunction BoundaryFunction::spikes(std::vector<Spike> spikes) {
  if (spikes.empty()) throw Error(ErrorKind::kInvalidArgument, "spike family is empty");
  std::sort(spikes.begin(), spikes.end(),
            [](const Spike& a, const Spike& b) { return a.center < b.center; });
  std::vector<double> breaks;
  std::vector<double> values;
  for (std::size_t i = 0; i < spikes.size(); ++i) {
    const Spike& s = spikes[i];
    double lo = s.center - s.half_width, hi = s.center + s.half_width;
    if (!(s.half_width > 0.0) || lo < -kPi || hi >= kPi) {
      throw Error(ErrorKind::kInvalidArgument, "spike interval must lie inside (-pi, pi)");
    }
    if (i && lo < spikes[i - 1].center + spikes[i - 1].half_width) {
      throw Error(ErrorKind::kInvalidArgument, "spike intervals overlap");
    }
    if (!breaks.empty() && breaks.back() == lo) {
      values.back() = s.height;
    } else {
      breaks.push_back(lo);
      values.push_back(s.height);
    }
    breaks.push_back(hi);
    values.push_back(0.0);
  }
  auto m = std::make_shared<detail::PiecewiseModel>(std::move(breaks), std::move(values),
                                                    TraceKind::kSpikeFamily);
  m->spikes = std::move(spikes);
  m->label = "spikes";
  return BoundaryFunction(std::move(m));
}

BoundaryFunction BoundaryFunction::tabulated(std::vector<double> theta, std::vector<double> values) {
  if (theta.size() < 2 || theta.size() != values.size()) {
    throw Error(ErrorKind::kInvalidArgument, "tabulated trace needs >= 2 matching samples");
  }
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] < -kPi || theta[i] >= kPi || (i && !(theta[i] > theta[i - 1]))) {
      throw Error(ErrorKind::kInvalidArgument,
                  "tabulated theta must increase strictly within [-pi, pi)");
    }
  }
  auto m = std::make_shared<detail::TabulatedModel>(std::move(theta), std::move(values));
  m->label = "tab";
  return BoundaryFunction(std::move(m));
}

BoundaryFunction BoundaryFunction::slow_decay(std::function<double(double)> on_unit,
                                              std::string label) {
  auto m = std::make_shared<detail::SlowDecayModel>(std::move(on_unit));
  m->label = std::move(label);
  return BoundaryFunction(std::move(m));
}

BoundaryFunction BoundaryFunction::closed_form(ClosedFormSpec spec) {
  if (!spec.value) throw Error(ErrorKind::kInvalidArgument, "closed form needs an evaluator");
  for (const auto& s : spec.singularities) {
    if (s.cls == SingularityClass::kOscillatory && !s.phase_hint) {
      throw Error(ErrorKind::kInvalidArgument,
                  "oscillatory-nonabsolute singularity needs a phase hint");
    }
  }
  auto m = std::make_shared<detail::ClosedFormModel>(std::move(spec));
  detail::reduce_locations(*m);
  return BoundaryFunction(std::move(m));
}

BoundaryFunction BoundaryFunction::linear_combination(
    const std::vector<std::pair<double, BoundaryFunction>>& terms) {
  if (terms.empty()) return constant(0.0);
  if (terms.size() == 1) return terms.front().second.scaled(terms.front().first);

  bool all_piecewise = std::all_of(terms.begin(), terms.end(), [](const auto& t) {
    return t.second.kind() == TraceKind::kPiecewiseConstant ||
           t.second.kind() == TraceKind::kSpikeFamily;
  });
  if (all_piecewise) {
    std::vector<double> breaks;
    for (const auto& [c, f] : terms) {
      auto p = f.pieces();
      breaks.insert(breaks.end(), p->first.begin(), p->first.end());
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    std::vector<double> values;
    for (double b : breaks) {
      double s = 0.0;
      for (const auto& [c, f] : terms) s += c * f.model().raw(b);
      values.push_back(s);
    }
    auto out = piecewise_constant(std::move(breaks), std::move(values));
    auto m = std::make_shared<detail::PiecewiseModel>(
        static_cast<const detail::PiecewiseModel&>(out.model()));
    m->label = detail::CombinationModel(terms).label;
    return BoundaryFunction(std::move(m));
  }
  return BoundaryFunction(std::make_shared<detail::CombinationModel>(terms));
}

BoundaryFunction BoundaryFunction::scaled(double factor) const {
  if (auto s = sine_mode()) {
    return s->cosine ? cosine(s->n, s->amplitude * factor) : sine(s->n, s->amplitude * factor);
  }
  if (kind() == TraceKind::kPiecewiseConstant) {
    auto p = pieces();
    for (double& v : p->second) v *= factor;
    auto out = piecewise_constant(std::move(p->first), std::move(p->second));
    auto m = std::make_shared<detail::PiecewiseModel>(
        static_cast<const detail::PiecewiseModel&>(out.model()));
    std::ostringstream os;
    os << factor << "*" << label();
    m->label = os.str();
    return BoundaryFunction(std::move(m));
  }
  return BoundaryFunction(std::make_shared<detail::CombinationModel>(
      std::vector<std::pair<double, BoundaryFunction>>{{factor, *this}}));
}

BoundaryFunction BoundaryFunction::operator+(const BoundaryFunction& other) const {
  return linear_combination({{1.0, *this}, {1.0, other}});
}

BoundaryFunction BoundaryFunction::operator-(const BoundaryFunction& other) const {
  return linear_combination({{1.0, *this}, {-1.0, other}});
}

TraceKind BoundaryFunction::kind() const { return model_->kind(); }
const std::string& BoundaryFunction::label() const { return model_->label; }

double BoundaryFunction::operator()(double theta) const {
  if (!std::isfinite(theta)) throw Error(ErrorKind::kInvalidArgument, "non-finite angle");
  double t = reduce_angle(theta);
  for (const auto& s : model_->singularities) {
    if (s.location != t) continue;
    if (s.cls != SingularityClass::kJump) {
      std::ostringstream os;
      os << "evaluation at theta = " << t << " of " << label();
      throw Error(ErrorKind::kUndefinedAtSingularity, os.str());
    }
    return right_limit(t);
  }
  return model_->raw(t);
}

double BoundaryFunction::value(double theta) const { return model_->raw(reduce_angle(theta)); }

double BoundaryFunction::right_limit(double theta) const {
  double t = reduce_angle(theta);
  double u = std::nextafter(t, kInfinity);
  if (u >= kPi) u = -kPi;
  return model_->raw(u);
}

double BoundaryFunction::left_limit(double theta) const {
  double t = reduce_angle(theta);
  double u = (t == -kPi) ? std::nextafter(kPi, 0.0) : std::nextafter(t, -kInfinity);
  return model_->raw(u);
}

bool BoundaryFunction::has_derivative() const { return model_->has_derivative(); }
double BoundaryFunction::derivative(double theta) const {
  return model_->derivative(reduce_angle(theta));
}

const std::vector<SingularityDescriptor>& BoundaryFunction::singularities() const {
  return model_->singularities;
}
const std::vector<double>& BoundaryFunction::hints() const { return model_->hints; }

std::vector<double> BoundaryFunction::jump_locations() const {
  std::vector<double> out;
  for (const auto& s : model_->singularities) {
    if (s.cls == SingularityClass::kJump) out.push_back(s.location);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool BoundaryFunction::has_nonabsolute_singularity() const {
  return std::any_of(model_->singularities.begin(), model_->singularities.end(),
                     [](const auto& s) { return s.cls != SingularityClass::kJump; });
}

std::optional<SineModeData> BoundaryFunction::sine_mode() const {
  if (auto* m = dynamic_cast<const detail::SineModel*>(model_.get())) return m->data;
  return std::nullopt;
}

const std::vector<Spike>* BoundaryFunction::spike_data() const {
  auto* m = dynamic_cast<const detail::PiecewiseModel*>(model_.get());
  if (!m || m->kind() != TraceKind::kSpikeFamily) return nullptr;
  return &m->spikes;
}

std::optional<std::pair<std::vector<double>, std::vector<double>>> BoundaryFunction::pieces() const {
  if (auto* m = dynamic_cast<const detail::PiecewiseModel*>(model_.get())) {
    return std::make_pair(m->breaks(), m->values());
  }
  return std::nullopt;
}

std::optional<std::pair<std::vector<double>, std::vector<double>>> BoundaryFunction::samples() const {
  if (auto* m = dynamic_cast<const detail::TabulatedModel*>(model_.get())) {
    return std::make_pair(m->theta(), m->values());
  }
  return std::nullopt;
}

std::optional<double> BoundaryFunction::exact_variation() const { return model_->exact_variation(); }
std::optional<double> BoundaryFunction::exact_inf_abs() const { return model_->exact_inf_abs(); }

double evaluate(const BoundaryFunction& f, double theta) { return f(theta); }

BoundaryFunction read_tabulated_csv(std::istream& is) {
  std::vector<double> theta, values;
  for (const auto& row : detail::read_numeric_csv(is, 2)) {
    theta.push_back(row[0]);
    values.push_back(row[1]);
  }
  return BoundaryFunction::tabulated(std::move(theta), std::move(values));
}

// ---------------------------------------------------------------------------
// Variation and infimum by sampling with extremum polishing.

namespace {

constexpr int kSamplesPerPeriod = 4096;

struct Segment {
  double start;
  double end;
  bool closed;  // no jumps at all: start and end are the same point
};

std::vector<Segment> continuity_segments(const BoundaryFunction& g) {
  auto jumps = g.jump_locations();
  if (jumps.empty()) return {{-kPi, kPi, true}};
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    double e = (i + 1 < jumps.size()) ? jumps[i + 1] : jumps[0] + kTwoPi;
    segs.push_back({jumps[i], e, false});
  }
  return segs;
}

struct Samples {
  std::vector<double> x;
  std::vector<double> v;
};

Samples sample_segment(const BoundaryFunction& g, const Segment& seg) {
  double len = seg.end - seg.start;
  int m = std::max(64, static_cast<int>(std::ceil(kSamplesPerPeriod * len / kTwoPi)));
  Samples s;
  for (int i = 0; i <= m; ++i) s.x.push_back(seg.start + len * i / m);
  for (double h : g.hints()) {
    for (double shift : {0.0, kTwoPi}) {
      double x = h + shift;
      if (x > seg.start && x < seg.end) s.x.push_back(x);
    }
  }
  std::sort(s.x.begin(), s.x.end());
  s.x.erase(std::unique(s.x.begin(), s.x.end()), s.x.end());
  s.v.resize(s.x.size());
  const std::size_t last = s.x.size() - 1;
  parallel_for(s.x.size(), [&](std::size_t i) {
    if (!seg.closed && i == 0) {
      s.v[i] = g.right_limit(seg.start);
    } else if (!seg.closed && i == last) {
      s.v[i] = g.left_limit(seg.end);
    } else {
      s.v[i] = g.value(s.x[i]);
    }
  });
  if (seg.closed) s.v[last] = s.v[0];
  return s;
}

double polish_extremum(const BoundaryFunction& g, double lo, double hi, bool is_max, double current) {
  const int bits = std::numeric_limits<double>::digits / 2;
  double best = current;
  if (g.has_derivative()) {
    double dlo = g.derivative(lo), dhi = g.derivative(hi);
    if (std::isfinite(dlo) && std::isfinite(dhi) && dlo * dhi < 0.0) {
      boost::uintmax_t iters = 100;
      auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 3);
      auto [a, b] = boost::math::tools::toms748_solve(
          [&](double x) { return g.derivative(x); }, lo, hi, dlo, dhi, tol, iters);
      double v = g.value(0.5 * (a + b));
      if (is_max ? v > best : v < best) best = v;
      return best;
    }
  }
  auto res = boost::math::tools::brent_find_minima(
      [&](double x) { return is_max ? -g.value(x) : g.value(x); }, lo, hi, bits);
  double v = is_max ? -res.second : res.second;
  if (is_max ? v > best : v < best) best = v;
  return best;
}

void polish_samples(const BoundaryFunction& g, Samples& s, bool closed) {
  const std::size_t n = s.x.size();
  if (n < 3) return;
  std::vector<std::size_t> idx;
  std::vector<int> type;  // +1 max, -1 min
  auto classify = [&](double prev, double cur, double next) {
    if (cur >= prev && cur >= next && (cur > prev || cur > next)) return 1;
    if (cur <= prev && cur <= next && (cur < prev || cur < next)) return -1;
    return 0;
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    int t = classify(s.v[i - 1], s.v[i], s.v[i + 1]);
    if (t) {
      idx.push_back(i);
      type.push_back(t);
    }
  }
  if (closed) {
    int t = classify(s.v[n - 2], s.v[0], s.v[1]);
    if (t) {
      idx.push_back(0);
      type.push_back(t);
    }
  }
  std::vector<double> polished(idx.size());
  parallel_for(idx.size(), [&](std::size_t k) {
    std::size_t i = idx[k];
    double lo = (i == 0) ? s.x[n - 2] - kTwoPi : s.x[i - 1];
    double hi = s.x[i + 1];
    polished[k] = polish_extremum(g, lo, hi, type[k] > 0, s.v[i]);
  });
  for (std::size_t k = 0; k < idx.size(); ++k) {
    s.v[idx[k]] = polished[k];
    if (idx[k] == 0 && closed) s.v[n - 1] = polished[k];
  }
}

void require_bv(const BoundaryFunction& g) {
  if (g.has_nonabsolute_singularity()) {
    throw Error(ErrorKind::kNotBoundedVariation,
                g.label() + " has an oscillatory or blowup singularity");
  }
}

}  // namespace

double variation(const BoundaryFunction& g) {
  require_bv(g);
  if (auto v = g.exact_variation()) return *v;
  double total = 0.0;
  for (const auto& seg : continuity_segments(g)) {
    Samples s = sample_segment(g, seg);
    polish_samples(g, s, seg.closed);
    for (std::size_t i = 0; i + 1 < s.v.size(); ++i) total += std::abs(s.v[i + 1] - s.v[i]);
  }
  for (double j : g.jump_locations()) total += std::abs(g.right_limit(j) - g.left_limit(j));
  return total;
}

BVFunction::BVFunction(BoundaryFunction base) : base_(std::move(base)) {
  variation_ = hkp::variation(base_);
  for (double j : base_.jump_locations()) {
    double raw = base_.value(j), right = base_.right_limit(j);
    if (std::abs(raw - right) > 1e-12 * (1.0 + std::abs(right))) right_continuous_ = false;
  }
  normalized_ = std::abs(base_(-kPi)) <= 1e-14;
}

double variation(const BVFunction& g) { return g.variation(); }

double inf_abs(const BVFunction& bv) {
  const BoundaryFunction& g = bv.base();
  if (auto v = g.exact_inf_abs()) return *v;
  double best = kInfinity;
  double best_x = 0.0, best_lo = 0.0, best_hi = 0.0;
  bool interior = false;
  for (const auto& seg : continuity_segments(g)) {
    Samples s = sample_segment(g, seg);
    for (std::size_t i = 0; i < s.v.size(); ++i) {
      if (s.v[i] == 0.0) return 0.0;
      if (i + 1 < s.v.size() && s.v[i] * s.v[i + 1] < 0.0) return 0.0;
      if (std::abs(s.v[i]) < best) {
        best = std::abs(s.v[i]);
        best_x = s.x[i];
        interior = i > 0 && i + 1 < s.v.size();
        if (interior) {
          best_lo = s.x[i - 1];
          best_hi = s.x[i + 1];
        }
      }
    }
  }
  if (interior) {
    auto res = boost::math::tools::brent_find_minima(
        [&](double x) { return std::abs(g.value(x)); }, best_lo, best_hi,
        std::numeric_limits<double>::digits / 2);
    best = std::min(best, res.second);
  }
  (void)best_x;
  return best;
}

BVFunction nbv_normalize(const BVFunction& bv) {
  const BoundaryFunction& g = bv.base();
  const double shift = g(-kPi);
  if (auto p = g.pieces()) {
    for (double& v : p->second) v -= shift;
    return BVFunction(BoundaryFunction::piecewise_constant(std::move(p->first), std::move(p->second)));
  }
  ClosedFormSpec spec;
  auto jumps = g.jump_locations();
  spec.value = [g, jumps, shift](double t) {
    if (std::binary_search(jumps.begin(), jumps.end(), t)) return g.right_limit(t) - shift;
    return g.value(t) - shift;
  };
  if (g.has_derivative()) spec.derivative = [g](double t) { return g.derivative(t); };
  spec.singularities = g.singularities();
  spec.hints = g.hints();
  spec.label = "nbv(" + g.label() + ")";
  return BVFunction(BoundaryFunction::closed_form(std::move(spec)));
}

// ---------------------------------------------------------------------------

RadialMeasure::RadialMeasure(std::vector<Atom> atoms, std::optional<BoundaryFunction> density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
  for (auto& a : atoms_) {
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
      throw Error(ErrorKind::kInvalidArgument, "measure atoms need strictly positive mass");
    }
    a.location = reduce_angle(a.location);
    total_mass_ += a.mass;
  }
  if (density_) {
    if (density_->has_nonabsolute_singularity()) {
      throw Error(ErrorKind::kInvalidArgument, "measure density must be absolutely integrable");
    }
    for (int i = 0; i < 256; ++i) {
      if (density_->value(-kPi + kTwoPi * (i + 0.5) / 256) < 0.0) {
        throw Error(ErrorKind::kInvalidArgument, "measure density must be nonnegative");
      }
    }
    total_mass_ += integrate(*density_, -kPi, kPi).value;
  }
  if (!(total_mass_ > 0.0)) throw Error(ErrorKind::kInvalidArgument, "measure has no mass");
}

RadialMeasure RadialMeasure::dirac(double location, double mass) {
  return RadialMeasure({{location, mass}});
}

RadialMeasure RadialMeasure::operator+(const RadialMeasure& other) const {
  std::vector<Atom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  std::optional<BoundaryFunction> density;
  if (density_ && other.density_) {
    density = *density_ + *other.density_;
  } else if (density_) {
    density = density_;
  } else if (other.density_) {
    density = other.density_;
  }
  return RadialMeasure(std::move(atoms), std::move(density));
}

RadialMeasure RadialMeasure::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorKind::kInvalidArgument, "measures scale by positive factors only");
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.mass *= factor;
  std::optional<BoundaryFunction> density;
  if (density_) density = density_->scaled(factor);
  return RadialMeasure(std::move(atoms), std::move(density));
}

}  // namespace hkp
