#include "toeplitz/symbols.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

#include "toeplitz/errors.hpp"

namespace toeplitz {

namespace {

constexpr double kPoleCircleGuard = 1e-12;
constexpr long kStartNodes = 256;

cplx unit_node(long m, long n) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) /
                             static_cast<double>(n));
}

long nodes_for(long max_index) {
  long n = kStartNodes;
  while (n < 4 * max_index) n *= 2;
  return n;
}

// Forward FFT scaled by 1/N: out[j mod N] = (1/N) sum_m x_m w^{-jm}.
std::vector<cplx> scaled_fft(const std::vector<cplx>& samples) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, samples);
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (auto& c : out) c *= inv;
  return out;
}

double band_tail(const std::vector<cplx>& c) {
  const long n = static_cast<long>(c.size());
  double tail = 0.0;
  for (long j = n / 4 + 1; j < n / 2; ++j)
    tail = std::max({tail, std::abs(c[static_cast<std::size_t>(j)]),
                     std::abs(c[static_cast<std::size_t>(n - j)])});
  return tail;
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

Annulus intersect(Annulus a, Annulus b) {
  return {std::max(a.inner, b.inner), std::min(a.outer, b.outer)};
}

void check_finite(cplx v, const char* where) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw SingularSymbolError(std::string(where) + ": non-finite symbol sample");
}

}  // namespace

const char* to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::AnalyticSampled: return "analytic-sampled";
    case SymbolKind::RationalCombo: return "rational-combo";
    case SymbolKind::PlainRational: return "plain-rational";
    case SymbolKind::Product: return "product";
    case SymbolKind::IsingDiagonal: return "ising-diagonal";
    case SymbolKind::TwoValuedJump: return "two-valued-jump";
  }
  return "unknown";
}

cplx ipow(cplx base, long exponent) {
  if (exponent < 0) return 1.0 / ipow(base, -exponent);
  cplx result = 1.0;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

// ---- Symbol ----------------------------------------------------------------

struct Symbol::Impl {
  Parts parts;

  mutable std::mutex cache_mutex;
  mutable long cache_nodes = 0;
  mutable double cache_tol = 0.0;
  mutable double cache_tail = 0.0;
  mutable std::vector<cplx> cache;  // FFT layout, length cache_nodes
};

Symbol::Symbol(Parts parts) {
  if (!parts.eval) throw ParameterError("Symbol: missing evaluator");
  for (const auto& p : parts.poles) {
    if (std::abs(std::abs(p.location) - 1.0) < kPoleCircleGuard) {
      std::ostringstream msg;
      msg << "Symbol: pole " << p.location << " lies on the unit circle";
      throw ParameterError(msg.str());
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->parts = std::move(parts);
  impl_ = std::move(impl);
}

cplx Symbol::operator()(cplx z) const { return impl_->parts.eval(z); }
SymbolKind Symbol::kind() const { return impl_->parts.kind; }
const std::vector<Pole>& Symbol::poles() const { return impl_->parts.poles; }
Annulus Symbol::annulus() const { return impl_->parts.annulus; }
std::optional<int> Symbol::winding_hint() const { return impl_->parts.winding_hint; }
const std::string& Symbol::label() const { return impl_->parts.label; }
bool Symbol::has_exact_coefficients() const { return static_cast<bool>(impl_->parts.exact); }
cplx Symbol::exact_coefficient(long j) const { return impl_->parts.exact(j); }
const Symbol::Evaluator& Symbol::evaluator() const { return impl_->parts.eval; }
const Symbol::CoefficientRule& Symbol::coefficient_rule() const { return impl_->parts.exact; }

std::vector<cplx> Symbol::sampled_coefficients(long max_index, double tol, double* tail,
                                               long node_cap) const {
  if (!(tol > 0.0)) throw ParameterError("fourier_coeffs: tol must be positive");
  const Impl& im = *impl_;
  if (im.parts.derived) {
    const IndexMap& map = *im.parts.derived;
    const long reach = max_index + std::abs(map.offset);
    const auto base = map.base->sampled_coefficients(reach, tol, tail, node_cap);
    std::vector<cplx> out(static_cast<std::size_t>(2 * max_index + 1));
    for (long j = -max_index; j <= max_index; ++j) {
      const long b = (map.reflected ? -j : j) - map.offset;
      out[static_cast<std::size_t>(j + max_index)] =
          map.factor * base[static_cast<std::size_t>(b + reach)];
    }
    return out;
  }
  auto extract = [&](const std::vector<cplx>& fftc, long n) {
    std::vector<cplx> out(static_cast<std::size_t>(2 * max_index + 1));
    for (long j = -max_index; j <= max_index; ++j)
      out[static_cast<std::size_t>(j + max_index)] =
          fftc[static_cast<std::size_t>(((j % n) + n) % n)];
    return out;
  };

  std::lock_guard<std::mutex> lock(im.cache_mutex);
  if (im.cache_nodes > 0 && im.cache_tol <= tol && im.cache_nodes / 4 >= max_index) {
    if (tail) *tail = im.cache_tail;
    return extract(im.cache, im.cache_nodes);
  }

  long n = std::max(nodes_for(max_index), im.cache_nodes);
  double last_tail = std::numeric_limits<double>::infinity();
  while (n <= node_cap) {
    std::vector<cplx> samples(static_cast<std::size_t>(n));
    for (long m = 0; m < n; ++m) {
      samples[static_cast<std::size_t>(m)] = im.parts.eval(unit_node(m, n));
      check_finite(samples[static_cast<std::size_t>(m)], "fourier_coeffs");
    }
    auto c = scaled_fft(samples);
    last_tail = band_tail(c);
    const double scale = std::max(1.0, max_abs(samples));
    if (last_tail <= tol * scale) {
      im.cache_nodes = n;
      im.cache_tol = tol;
      im.cache_tail = last_tail;
      im.cache = std::move(c);
      if (tail) *tail = last_tail;
      return extract(im.cache, n);
    }
    n *= 2;
  }
  std::ostringstream msg;
  msg << "fourier_coeffs: tail " << last_tail << " above tolerance " << tol
      << " at node cap " << node_cap;
  throw AccuracyError(msg.str(), last_tail);
}

cplx FourierSeries::at(long j) const {
  if (!contains(j)) {
    std::ostringstream msg;
    msg << "FourierSeries: index " << j << " outside [" << j_min << ", " << j_max() << "]";
    throw IndexError(msg.str());
  }
  return coeffs[static_cast<std::size_t>(j - j_min)];
}

FourierSeries fourier_coeffs(const Symbol& symbol, long j_min, long j_max, double tol,
                             long node_cap) {
  if (j_max < j_min) throw RangeError("fourier_coeffs: empty index range");
  FourierSeries out;
  out.j_min = j_min;
  out.coeffs.resize(static_cast<std::size_t>(j_max - j_min + 1));
  if (symbol.has_exact_coefficients()) {
    for (long j = j_min; j <= j_max; ++j)
      out.coeffs[static_cast<std::size_t>(j - j_min)] = symbol.exact_coefficient(j);
    return out;
  }
  const long reach = std::max(std::abs(j_min), std::abs(j_max));
  double tail = 0.0;
  auto all = symbol.sampled_coefficients(reach, tol, &tail, node_cap);
  for (long j = j_min; j <= j_max; ++j)
    out.coeffs[static_cast<std::size_t>(j - j_min)] = all[static_cast<std::size_t>(j + reach)];
  out.tail_bound = tail;
  return out;
}

int winding_number(const Symbol& symbol, long node_cap) {
  for (long n = kStartNodes; n <= node_cap; n *= 2) {
    std::vector<cplx> s(static_cast<std::size_t>(n));
    double peak = 0.0;
    for (long m = 0; m < n; ++m) {
      s[static_cast<std::size_t>(m)] = symbol(unit_node(m, n));
      check_finite(s[static_cast<std::size_t>(m)], "winding_number");
      peak = std::max(peak, std::abs(s[static_cast<std::size_t>(m)]));
    }
    for (const auto& v : s)
      if (std::abs(v) < 1e-12 * peak || peak == 0.0)
        throw SingularSymbolError("winding_number: symbol vanishes on the circle");
    double total = 0.0;
    bool resolved = true;
    for (long m = 0; m < n; ++m) {
      const double d = std::arg(s[static_cast<std::size_t>((m + 1) % n)] /
                                s[static_cast<std::size_t>(m)]);
      if (std::abs(d) >= std::numbers::pi / 2) {
        resolved = false;
        break;
      }
      total += d;
    }
    if (resolved) return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
  }
  throw AccuracyError("winding_number: phase not resolved at node cap", std::numbers::pi);
}

// ---- factories -------------------------------------------------------------

Symbol constant_symbol(cplx value) {
  Symbol::Parts p;
  p.kind = SymbolKind::PlainRational;
  p.eval = [value](cplx) { return value; };
  p.exact = [value](long j) { return j == 0 ? value : cplx(0.0); };
  if (value != cplx(0.0)) p.winding_hint = 0;
  p.label = "constant";
  return Symbol(std::move(p));
}

Symbol monomial(long power, cplx coefficient) {
  Symbol::Parts p;
  p.kind = SymbolKind::PlainRational;
  p.eval = [power, coefficient](cplx z) { return coefficient * ipow(z, power); };
  p.exact = [power, coefficient](long j) { return j == power ? coefficient : cplx(0.0); };
  if (power < 0) p.annulus.inner = 0.0;
  p.winding_hint = static_cast<int>(power);
  p.label = "monomial";
  return Symbol(std::move(p));
}

Symbol rational(const RationalSpec& spec) {
  Symbol::Parts p;
  p.kind = SymbolKind::PlainRational;
  p.poles = spec.poles;
  for (const auto& pole : spec.poles) {
    const double r = std::abs(pole.location);
    if (r < 1.0) p.annulus.inner = std::max(p.annulus.inner, r);
    if (r > 1.0) p.annulus.outer = std::min(p.annulus.outer, r);
  }
  p.eval = [spec](cplx z) {
    cplx v = 0.0;
    for (std::size_t k = 0; k < spec.poly.size(); ++k)
      v += spec.poly[k] * ipow(z, spec.poly_min + static_cast<long>(k));
    for (const auto& pole : spec.poles) v += pole.coefficient / (z - pole.location);
    return v;
  };
  p.exact = [spec](long j) {
    cplx v = 0.0;
    const long k = j - spec.poly_min;
    if (k >= 0 && k < static_cast<long>(spec.poly.size()))
      v += spec.poly[static_cast<std::size_t>(k)];
    for (const auto& pole : spec.poles) {
      const cplx c = pole.location;
      if (std::abs(c) > 1.0) {
        if (j >= 0) v -= pole.coefficient * ipow(1.0 / c, j + 1);
      } else if (j <= -1) {
        v += pole.coefficient * ipow(c, -j - 1);
      }
    }
    return v;
  };
  p.label = "rational";
  return Symbol(std::move(p));
}

Symbol exp_laurent(cplx log0, std::vector<cplx> plus, std::vector<cplx> minus) {
  Symbol::Parts p;
  p.kind = SymbolKind::AnalyticSampled;
  p.eval = [log0, plus, minus](cplx z) {
    cplx e = log0;
    cplx zp = 1.0, zm = 1.0;
    const cplx w = 1.0 / z;
    for (const auto& a : plus) e += a * (zp *= z);
    for (const auto& b : minus) e += b * (zm *= w);
    return std::exp(e);
  };
  p.winding_hint = 0;
  p.label = "exp";
  return Symbol(std::move(p));
}

Symbol ising_diagonal(double k) {
  if (!(k > 1.0)) throw ParameterError("ising_diagonal: requires k > 1");
  Symbol::Parts p;
  p.kind = SymbolKind::IsingDiagonal;
  // Each factor has positive real part on the annulus, so principal roots are
  // analytic there and the quotient is the continuous branch.
  p.eval = [k](cplx z) { return std::sqrt(1.0 - 1.0 / (k * z)) / std::sqrt(1.0 - z / k); };
  p.annulus = {1.0 / k, k};
  p.winding_hint = 0;
  p.label = "ising-diagonal";
  return Symbol(std::move(p));
}

Symbol jump_g() {
  Symbol::Parts p;
  p.kind = SymbolKind::TwoValuedJump;
  p.eval = [](cplx z) { return z.real() >= 0.0 ? cplx(1.0) : cplx(-1.0); };
  p.exact = [](long j) -> cplx {
    if (j % 2 == 0) return 0.0;
    const double sign = (((j - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    return sign * 2.0 / (std::numbers::pi * static_cast<double>(j));
  };
  p.annulus = {1.0, 1.0};
  p.label = "jump-g";
  return Symbol(std::move(p));
}

// ---- combinators -----------------------------------------------------------

Symbol shift(const Symbol& s, long k) {
  Symbol::Parts p;
  p.kind = s.kind();
  p.eval = [s, k](cplx z) { return ipow(z, k) * s(z); };
  if (s.has_exact_coefficients())
    p.exact = [s, k](long j) { return s.exact_coefficient(j - k); };
  else
    p.derived = Symbol::IndexMap{std::make_shared<const Symbol>(s), false, k, 1.0};
  p.annulus = s.annulus();
  p.poles = s.poles();
  if (s.winding_hint()) p.winding_hint = *s.winding_hint() + static_cast<int>(k);
  p.label = "shift(" + s.label() + ")";
  return Symbol(std::move(p));
}

Symbol reflect(const Symbol& s) {
  Symbol::Parts p;
  p.kind = s.kind();
  p.eval = [s](cplx z) { return s(1.0 / z); };
  if (s.has_exact_coefficients())
    p.exact = [s](long j) { return s.exact_coefficient(-j); };
  else
    p.derived = Symbol::IndexMap{std::make_shared<const Symbol>(s), true, 0, 1.0};
  const Annulus a = s.annulus();
  const double inf = std::numeric_limits<double>::infinity();
  p.annulus = {a.outer == inf ? 0.0 : 1.0 / a.outer, a.inner == 0.0 ? inf : 1.0 / a.inner};
  for (const auto& pole : s.poles())
    if (pole.location != cplx(0.0))
      p.poles.push_back({1.0 / pole.location, -pole.coefficient / (pole.location * pole.location)});
  if (s.winding_hint()) p.winding_hint = -*s.winding_hint();
  p.label = "reflect(" + s.label() + ")";
  return Symbol(std::move(p));
}

Symbol scale(const Symbol& s, cplx factor) {
  Symbol::Parts p;
  p.kind = s.kind();
  p.eval = [s, factor](cplx z) { return factor * s(z); };
  if (s.has_exact_coefficients())
    p.exact = [s, factor](long j) { return factor * s.exact_coefficient(j); };
  else
    p.derived = Symbol::IndexMap{std::make_shared<const Symbol>(s), false, 0, factor};
  p.annulus = s.annulus();
  for (auto pole : s.poles()) {
    pole.coefficient *= factor;
    p.poles.push_back(pole);
  }
  if (factor != cplx(0.0)) p.winding_hint = s.winding_hint();
  p.label = "scale(" + s.label() + ")";
  return Symbol(std::move(p));
}

Symbol add(const Symbol& a, const Symbol& b) {
  Symbol::Parts p;
  const bool both_rational =
      a.kind() == SymbolKind::PlainRational && b.kind() == SymbolKind::PlainRational;
  p.kind = both_rational ? SymbolKind::PlainRational : SymbolKind::AnalyticSampled;
  p.eval = [a, b](cplx z) { return a(z) + b(z); };
  if (a.has_exact_coefficients() && b.has_exact_coefficients())
    p.exact = [a, b](long j) { return a.exact_coefficient(j) + b.exact_coefficient(j); };
  p.annulus = intersect(a.annulus(), b.annulus());
  p.poles = a.poles();
  p.poles.insert(p.poles.end(), b.poles().begin(), b.poles().end());
  p.label = "add(" + a.label() + "," + b.label() + ")";
  return Symbol(std::move(p));
}

Symbol multiply(const Symbol& a, const Symbol& b) {
  Symbol::Parts p;
  p.kind = SymbolKind::AnalyticSampled;
  p.eval = [a, b](cplx z) { return a(z) * b(z); };
  p.annulus = intersect(a.annulus(), b.annulus());
  if (a.winding_hint() && b.winding_hint())
    p.winding_hint = *a.winding_hint() + *b.winding_hint();
  p.label = "mul(" + a.label() + "," + b.label() + ")";
  return Symbol(std::move(p));
}

Symbol product(const Symbol& r, const Symbol& phi) {
  Symbol::Parts p;
  p.kind = SymbolKind::Product;
  p.eval = [r, phi](cplx z) { return r(z) * phi(z); };
  p.annulus = intersect(r.annulus(), phi.annulus());
  p.poles = r.poles();
  p.label = "product(" + r.label() + "," + phi.label() + ")";
  return Symbol(std::move(p));
}

Symbol product_reflected(const Symbol& r, const Symbol& phi) {
  return product(r, reflect(phi));
}

Symbol rational_combo(const Symbol& q1, const Symbol& phi, const Symbol& q2) {
  const Symbol q1phi = product(q1, phi);
  Symbol::Parts p;
  p.kind = SymbolKind::RationalCombo;
  p.eval = [q1phi, q2](cplx z) { return q1phi(z) + q2(z); };
  p.annulus = intersect(q1phi.annulus(), q2.annulus());
  p.poles = q1.poles();
  p.poles.insert(p.poles.end(), q2.poles().begin(), q2.poles().end());
  p.label = "combo(" + q1.label() + "," + phi.label() + "," + q2.label() + ")";
  return Symbol(std::move(p));
}

Symbol make_family(const std::string& name, const FamilyParams& params) {
  if (name == "constant") return constant_symbol(params.value);
  if (name == "jump-g") return jump_g();
  if (name == "ising-diagonal") return ising_diagonal(params.value);
  if (name == "exp") {
    if (params.plus.empty() && params.minus.empty())
      return exp_laurent(params.log0, {params.value}, {params.value});
    return exp_laurent(params.log0, params.plus, params.minus);
  }
  if (name == "rational") return rational(params.rational);
  throw ParameterError("make_family: unknown family '" + name + "'");
}

// ---- Szego data ------------------------------------------------------------

std::vector<cplx> series_exp(const std::vector<cplx>& h, std::size_t terms) {
  std::vector<cplx> f(terms, 0.0);
  if (terms == 0) return f;
  f[0] = 1.0;
  for (std::size_t n = 1; n < terms; ++n) {
    cplx acc = 0.0;
    const std::size_t top = std::min(n, h.empty() ? 0 : h.size() - 1);
    for (std::size_t k = 1; k <= top; ++k)
      acc += static_cast<double>(k) * h[k] * f[n - k];
    f[n] = acc / static_cast<double>(n);
  }
  return f;
}

LogSymbolData szego_data(const Symbol& symbol, int trunc, double tol) {
  if (trunc < 1) throw RangeError("szego_data: trunc must be >= 1");
  if (const int w = winding_number(symbol); w != 0) {
    std::ostringstream msg;
    msg << "szego_data: winding number " << w << " is not zero";
    throw WindingError(msg.str());
  }

  std::vector<cplx> logc;
  double last_tail = std::numeric_limits<double>::infinity();
  long n = nodes_for(trunc);
  for (; n <= kDefaultNodeCap; n *= 2) {
    std::vector<cplx> lg(static_cast<std::size_t>(n));
    cplx prev = symbol(1.0);
    check_finite(prev, "szego_data");
    if (prev == cplx(0.0)) throw SingularSymbolError("szego_data: symbol vanishes at z=1");
    lg[0] = std::log(prev);  // principal branch anchored at z = 1
    bool resolved = true;
    for (long m = 1; m < n; ++m) {
      const cplx cur = symbol(unit_node(m, n));
      check_finite(cur, "szego_data");
      const cplx step = std::log(cur / prev);
      if (std::abs(step.imag()) >= std::numbers::pi / 2) {
        resolved = false;
        break;
      }
      lg[static_cast<std::size_t>(m)] = lg[static_cast<std::size_t>(m - 1)] + step;
      prev = cur;
    }
    if (!resolved) continue;
    auto c = scaled_fft(lg);
    last_tail = band_tail(c);
    if (last_tail <= tol * std::max(1.0, max_abs(lg))) {
      logc = std::move(c);
      break;
    }
  }
  if (logc.empty()) throw AccuracyError("szego_data: log-symbol coefficients did not converge",
                                        last_tail);

  LogSymbolData d;
  d.trunc = trunc;
  d.log_coeffs.j_min = -trunc;
  d.log_coeffs.tail_bound = last_tail;
  d.log_coeffs.coeffs.resize(static_cast<std::size_t>(2 * trunc + 1));
  for (long j = -trunc; j <= trunc; ++j)
    d.log_coeffs.coeffs[static_cast<std::size_t>(j + trunc)] =
        logc[static_cast<std::size_t>(((j % n) + n) % n)];

  double peak = 0.0, end_band = 0.0;
  for (long k = 1; k <= trunc; ++k) {
    const double m = std::max(std::abs(d.log_coeff(k)), std::abs(d.log_coeff(-k)));
    peak = std::max(peak, m);
    if (4 * k >= 3 * trunc) end_band = std::max(end_band, m);
  }
  if (end_band > 1e-12 * std::max(1.0, peak)) {
    std::ostringstream msg;
    msg << "szego_data: log coefficients not decayed at trunc=" << trunc << " (" << end_band
        << ")";
    throw AccuracyError(msg.str(), end_band);
  }

  d.G = std::exp(d.log_coeff(0));
  cplx e_sum = 0.0;
  for (long k = 1; k <= trunc; ++k)
    e_sum += static_cast<double>(k) * d.log_coeff(k) * d.log_coeff(-k);
  d.E = std::exp(e_sum);

  const auto terms = static_cast<std::size_t>(trunc + 1);
  std::vector<cplx> hp(terms), hm(terms), hneg(terms);
  for (long k = 1; k <= trunc; ++k) {
    hp[static_cast<std::size_t>(k)] = d.log_coeff(k);
    hm[static_cast<std::size_t>(k)] = d.log_coeff(-k);
    hneg[static_cast<std::size_t>(k)] = -d.log_coeff(-k);
  }
  d.phi_plus = series_exp(hp, terms);
  d.phi_minus = series_exp(hm, terms);
  d.alpha_outside = series_exp(hneg, terms);
  d.alpha_inside = d.phi_plus;
  for (auto& a : d.alpha_inside) a *= d.G;
  return d;
}

namespace {

// Horner evaluation with a check that the truncated tail is negligible.
cplx eval_series(const std::vector<cplx>& a, cplx x, const char* what) {
  cplx v = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * x + *it;
  const double r = std::abs(x);
  double last = 0.0;
  const std::size_t n = a.size();
  for (std::size_t k = n > 8 ? n - 8 : 0; k < n; ++k)
    last = std::max(last, std::abs(a[k]) * std::pow(r, static_cast<double>(k)));
  if (last > 1e-12 * std::max(1.0, std::abs(v))) {
    std::ostringstream msg;
    msg << what << ": truncated series not converged at |x|=" << r;
    throw AccuracyError(msg.str(), last);
  }
  return v;
}

void check_off_circle(cplx z, const char* what) {
  if (std::abs(std::abs(z) - 1.0) < 1e-12)
    throw BoundaryError(std::string(what) + ": point on the unit circle; pick a side");
}

}  // namespace

cplx eval_alpha(const LogSymbolData& data, cplx z) {
  check_off_circle(z, "eval_alpha");
  if (std::abs(z) < 1.0) return eval_series(data.alpha_inside, z, "eval_alpha");
  return eval_series(data.alpha_outside, 1.0 / z, "eval_alpha");
}

cplx eval_phi_plus(const LogSymbolData& data, cplx z) {
  return eval_series(data.phi_plus, z, "eval_phi_plus");
}

cplx eval_phi_minus(const LogSymbolData& data, cplx z) {
  return eval_series(data.phi_minus, 1.0 / z, "eval_phi_minus");
}

cplx alpha_taylor_at_zero(const LogSymbolData& data, int ell) {
  if (ell < 0 || ell > data.trunc) {
    std::ostringstream msg;
    msg << "alpha_taylor_at_zero: order " << ell << " outside [0, " << data.trunc << "]";
    throw RangeError(msg.str());
  }
  return data.alpha_inside[static_cast<std::size_t>(ell)];
}

}  // namespace toeplitz
