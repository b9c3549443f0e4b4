#include "hkp_cli/spec_parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "hkp/constructions.hpp"
#include "hkp/error.hpp"

namespace hkp::cli {

namespace {

struct Value {
  enum class Kind { kScalar, kFunction, kMeasure } kind = Kind::kScalar;
  double scalar = 0.0;
  std::optional<BoundaryFunction> f;
  std::optional<RadialMeasure> mu;

  static Value of(double s) { return {Kind::kScalar, s, {}, {}}; }
  static Value of(BoundaryFunction f) { return {Kind::kFunction, 0.0, std::move(f), {}}; }
  static Value of(RadialMeasure mu) { return {Kind::kMeasure, 0.0, {}, std::move(mu)}; }
};

class Parser {
 public:
  Parser(std::string_view text, std::filesystem::path base) : src_(text), base_(std::move(base)) {}

  Value parse() {
    skip_ws();
    if (pos_ == src_.size()) fail(pos_, "empty spec");
    Value v = expr();
    skip_ws();
    if (pos_ != src_.size()) fail(pos_, std::string("unexpected '") + src_[pos_] + "'");
    if (v.kind == Value::Kind::kScalar) fail(0, "spec is a bare number; use const(c)");
    return v;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    throw Error(ErrorKind::kParse, "column " + std::to_string(at + 1) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      fail(pos_, pos_ < src_.size() ? std::string("expected '") + c + "' but found '" + src_[pos_] + "'"
                                    : std::string("expected '") + c + "' at end of input");
    }
  }

  Value expr() {
    Value v = term();
    while (true) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('+')) {
        v = add(v, term(), 1.0, at);
      } else if (accept('-')) {
        v = add(v, term(), -1.0, at);
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = factor();
    while (true) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('*')) {
        v = multiply(v, factor(), at);
      } else if (accept('/')) {
        Value d = factor();
        if (d.kind != Value::Kind::kScalar) fail(at, "can only divide by a number");
        if (d.scalar == 0.0) fail(at, "division by zero");
        v = multiply(v, Value::of(1.0 / d.scalar), at);
      } else {
        return v;
      }
    }
  }

  Value factor() {
    skip_ws();
    std::size_t at = pos_;
    if (pos_ == src_.size()) fail(pos_, "unexpected end of input");
    char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      return multiply(Value::of(-1.0), factor(), at);
    }
    if (c == '(') {
      ++pos_;
      Value v = expr();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Value::of(number());
    if (std::isalpha(static_cast<unsigned char>(c))) return call(identifier(), at);
    fail(at, std::string("unexpected '") + c + "'");
  }

  double number() {
    const char* begin = src_.data() + pos_;
    std::string buf(begin, src_.size() - pos_);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str()) fail(pos_, "malformed number");
    pos_ += static_cast<std::size_t>(end - buf.c_str());
    return v;
  }

  std::string identifier() {
    std::size_t start = pos_;
    auto word = [&] {
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
    };
    word();
    std::string id(src_.substr(start, pos_ - start));
    // example-b / example-c are single tokens.
    if (id == "example" && pos_ + 1 < src_.size() && src_[pos_] == '-' &&
        std::isalpha(static_cast<unsigned char>(src_[pos_ + 1]))) {
      ++pos_;
      word();
      id = std::string(src_.substr(start, pos_ - start));
    }
    return id;
  }

  double scalar_arg() {
    skip_ws();
    std::size_t at = pos_;
    Value v = expr();
    if (v.kind != Value::Kind::kScalar) fail(at, "expected a number");
    return v.scalar;
  }

  int integer_arg() {
    skip_ws();
    std::size_t at = pos_;
    double v = scalar_arg();
    if (v != std::floor(v) || std::abs(v) > 1e6) fail(at, "expected an integer");
    return static_cast<int>(v);
  }

  /// Numeric argument list up to ')'; the opening '(' is consumed already.
  std::vector<double> scalar_args(const std::string& name, std::size_t lo, std::size_t hi, std::size_t at) {
    std::vector<double> out;
    if (!accept(')')) {
      do {
        out.push_back(scalar_arg());
      } while (accept(','));
      expect(')');
    }
    if (out.size() < lo || out.size() > hi) {
      std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi);
      fail(at, name + " takes " + want + " arguments, got " + std::to_string(out.size()));
    }
    return out;
  }

  std::filesystem::path file_arg(const std::string& name, std::size_t at) {
    skip_ws();
    std::size_t close = src_.find(')', pos_);
    if (close == std::string_view::npos) fail(pos_, "expected ')' after file name");
    std::string raw(src_.substr(pos_, close - pos_));
    raw.erase(raw.find_last_not_of(" \t") + 1);
    if (raw.empty()) fail(at, name + " takes a file name");
    pos_ = close + 1;
    std::filesystem::path p(raw);
    return p.is_relative() && !base_.empty() ? base_ / p : p;
  }

  std::ifstream open(const std::filesystem::path& p, std::size_t at) {
    std::ifstream in(p);
    if (!in) fail(at, "cannot open '" + p.string() + "'");
    return in;
  }

  Value slowdecay(std::size_t at) {
    std::optional<std::string> kind;
    std::optional<double> p;
    if (!accept(')')) {
      do {
        skip_ws();
        std::size_t key_at = pos_;
        if (pos_ == src_.size() || !std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
          fail(pos_, "expected key=value");
        }
        std::string key = identifier();
        expect('=');
        if (key == "kind") {
          skip_ws();
          std::size_t val_at = pos_;
          std::string v = identifier();
          if (v != "exp" && v != "poly") fail(val_at, "kind must be exp or poly");
          kind = v;
        } else if (key == "p") {
          std::size_t val_at = pos_;
          p = scalar_arg();
          if (!(*p >= 1.0) || std::isinf(*p)) fail(val_at, "p must be a finite real >= 1");
        } else {
          fail(key_at, "unknown slowdecay key '" + key + "'");
        }
      } while (accept(','));
      expect(')');
    }
    if (!kind) fail(at, "slowdecay needs kind=exp|poly");
    DecayProfile profile = *kind == "exp" ? DecayProfile::exponential() : DecayProfile::linear();
    return Value::of(build_slow_decay(profile, p));
  }

  Value call(const std::string& name, std::size_t at) {
    if (name == "pi") return Value::of(kPi);
    if (name == "example-b" || name == "example-c") {
      if (accept('(')) expect(')');
      return Value::of(name == "example-b" ? example_b().f : example_c().f);
    }
    static const char* const kKnown[] = {"const", "sine", "cosine", "chi",   "spikes",
                                         "tab",   "slowdecay", "dirac", "atoms"};
    bool known = std::any_of(std::begin(kKnown), std::end(kKnown), [&](const char* k) { return name == k; });
    if (!known) fail(at, "unknown identifier '" + name + "'");
    expect('(');
    try {
      if (name == "const") return Value::of(BoundaryFunction::constant(scalar_args(name, 1, 1, at)[0]));
      if (name == "sine" || name == "cosine") {
        skip_ws();
        int n = integer_arg();
        double amp = 1.0;
        if (accept(',')) amp = scalar_arg();
        expect(')');
        return Value::of(name == "sine" ? BoundaryFunction::sine(n, amp) : BoundaryFunction::cosine(n, amp));
      }
      if (name == "chi") {
        auto a = scalar_args(name, 2, 2, at);
        return Value::of(BoundaryFunction::indicator(a[0], a[1]));
      }
      if (name == "spikes") {
        auto in = open(file_arg(name, at), at);
        return Value::of(read_spikes_csv(in));
      }
      if (name == "tab") {
        auto in = open(file_arg(name, at), at);
        return Value::of(read_tabulated_csv(in));
      }
      if (name == "slowdecay") return slowdecay(at);
      if (name == "dirac") {
        auto a = scalar_args(name, 1, 2, at);
        return Value::of(RadialMeasure::dirac(a[0], a.size() > 1 ? a[1] : 1.0));
      }
      auto a = scalar_args(name, 2, 1u << 20, at);
      if (a.size() % 2) fail(at, "atoms takes theta,mass pairs");
      std::vector<RadialMeasure::Atom> atoms;
      for (std::size_t i = 0; i < a.size(); i += 2) atoms.push_back({a[i], a[i + 1]});
      return Value::of(RadialMeasure(std::move(atoms)));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kParse && std::string_view(e.what()).find(": column ") != std::string_view::npos) throw;
      fail(at, name + ": " + e.what());
    }
  }

  Value add(const Value& a, const Value& b, double sign, std::size_t at) {
    using K = Value::Kind;
    if (a.kind == K::kScalar && b.kind == K::kScalar) return Value::of(a.scalar + sign * b.scalar);
    if ((a.kind == K::kFunction && b.kind == K::kMeasure) || (a.kind == K::kMeasure && b.kind == K::kFunction)) {
      fail(at, "mixing function and measure");
    }
    if (a.kind == K::kScalar || b.kind == K::kScalar) fail(at, "cannot add a number to a function; use const(c)");
    if (a.kind == K::kFunction) return Value::of(sign > 0 ? *a.f + *b.f : *a.f - *b.f);
    if (sign < 0) fail(at, "measures are positive only; subtraction is not supported");
    return Value::of(*a.mu + *b.mu);
  }

  Value multiply(const Value& a, const Value& b, std::size_t at) {
    using K = Value::Kind;
    if (a.kind == K::kScalar && b.kind == K::kScalar) return Value::of(a.scalar * b.scalar);
    if (a.kind != K::kScalar && b.kind != K::kScalar) fail(at, "product of two functions or measures");
    const Value& obj = a.kind == K::kScalar ? b : a;
    const double s = a.kind == K::kScalar ? a.scalar : b.scalar;
    if (obj.kind == K::kFunction) return Value::of(obj.f->scaled(s));
    if (!(s > 0.0)) fail(at, "measures are positive only; multiplier must be > 0");
    return Value::of(obj.mu->scaled(s));
  }

  std::string_view src_;
  std::filesystem::path base_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedSpec parse_spec(std::string_view text, const std::filesystem::path& base_dir) {
  Value v = Parser(text, base_dir).parse();
  if (v.kind == Value::Kind::kFunction) return *v.f;
  return *v.mu;
}

BoundaryFunction parse_function(std::string_view text, const std::filesystem::path& base_dir) {
  ParsedSpec s = parse_spec(text, base_dir);
  if (auto* f = std::get_if<BoundaryFunction>(&s)) return *f;
  throw Error(ErrorKind::kParse, "expected a function, got a measure");
}

RadialMeasure parse_measure(std::string_view text, const std::filesystem::path& base_dir) {
  ParsedSpec s = parse_spec(text, base_dir);
  if (auto* m = std::get_if<RadialMeasure>(&s)) return *m;
  throw Error(ErrorKind::kParse, "expected a measure, got a function");
}

}  // namespace hkp::cli
