#include "radarnet/multiuser.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

#include "radarnet/waveform.hpp"

namespace radarnet {

namespace {

inline bool below_tol(const Rational& c, double tol) {
  if (tol <= 0.0) return false;
  return std::abs(static_cast<double>(c)) < tol;
}

inline bool below_tol(double c, double tol) { return std::abs(c) < tol; }

// subtract and force-cancel the leading exponent (float subtraction may
// leave a rounding residual there)
template <class C>
void cancel_leading(DelayPoly<C>& g, const DelayPoly<C>& sub, int exponent) {
  g = g - sub;
  const C leftover = g.coeff(exponent);
  if (!(leftover == C(0))) g.add_term(C(0) - leftover, exponent);
}

}  // namespace

template <class C>
SingleDivisionResult<C> divide_single(const DelayPoly<C>& y,
                                      const DelayPoly<C>& x0, int max_delay,
                                      double amp_tol) {
  if (x0.is_zero())
    throw std::invalid_argument("divide_single: division by zero polynomial");
  SingleDivisionResult<C> res;
  const auto [cx, ex] = x0.leading_term();
  DelayPoly<C> g = y;
  while (!g.is_zero()) {
    const auto [cg, eg] = g.leading_term();
    if (eg >= ex) {
      const C q = cg / cx;
      const int delay = eg - ex;
      if (!below_tol(q, amp_tol)) {
        if (delay > max_delay) res.exceeded_max_delay = true;
        res.branches.emplace_back(q, delay);
        cancel_leading(g, x0 * DelayPoly<C>::monomial(q, delay), eg);
        continue;
      }
    }
    res.residue.add_term(cg, eg);
    g.add_term(C(0) - cg, eg);
  }
  return res;
}

template <class C>
DecompositionResult<C> divide_multi(const DelayPoly<C>& y,
                                    const std::vector<DelayPoly<C>>& basis,
                                    const std::vector<int>& order_bounds) {
  if (basis.empty())
    throw std::invalid_argument("divide_multi: empty basis");
  for (const auto& p : basis)
    if (p.is_zero())
      throw std::invalid_argument("divide_multi: zero basis polynomial");

  DecompositionResult<C> res;
  res.quotients.assign(basis.size(), DelayPoly<C>());
  res.improper.assign(basis.size(), false);

  DelayPoly<C> g = y;
  while (!g.is_zero()) {
    const auto [cg, eg] = g.leading_term();
    bool matched = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto [cp, ep] = basis[i].leading_term();
      if (eg >= ep) {  // LT(p_i) divides LT(g)
        const C h = cg / cp;
        const int delay = eg - ep;
        if (i < order_bounds.size() && delay > order_bounds[i])
          res.improper[i] = true;
        res.quotients[i].add_term(h, delay);
        cancel_leading(g, basis[i] * DelayPoly<C>::monomial(h, delay), eg);
        matched = true;
        break;
      }
    }
    if (!matched) {
      res.residue.add_term(cg, eg);
      g.add_term(C(0) - cg, eg);
    }
  }
  return res;
}

template SingleDivisionResult<Rational> divide_single(const RationalPoly&,
                                                      const RationalPoly&, int,
                                                      double);
template SingleDivisionResult<double> divide_single(const FloatPoly&,
                                                    const FloatPoly&, int,
                                                    double);
template DecompositionResult<Rational> divide_multi(
    const RationalPoly&, const std::vector<RationalPoly>&,
    const std::vector<int>&);
template DecompositionResult<double> divide_multi(const FloatPoly&,
                                                  const std::vector<FloatPoly>&,
                                                  const std::vector<int>&);

BranchPartition classify_branches(const std::vector<Branch>& branches,
                                  double max_range, double fs) {
  if (!(fs > 0.0)) throw std::invalid_argument("classify_branches: fs > 0");
  const double threshold = 2.0 * max_range * fs / kLightSpeed;
  BranchPartition part;
  for (const auto& b : branches)
    (b.delay > threshold ? part.interference : part.legitimate).push_back(b);
  return part;
}

std::vector<Branch> freq_domain_estimate(const SampledSignal& y,
                                         const SampledSignal& waveform,
                                         const std::vector<double>& delay_grid,
                                         double amp_tol) {
  if (waveform.samples.size() == 0)
    throw std::invalid_argument("freq_domain_estimate: empty waveform");
  if (y.samples.size() == 0) return {};

  int n = 1;
  while (n < y.samples.size() + waveform.samples.size()) n <<= 1;

  Eigen::VectorXcd ypad = Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd ppad = Eigen::VectorXcd::Zero(n);
  ypad.head(y.samples.size()) = y.samples;
  ppad.head(waveform.samples.size()) = waveform.samples;

  Eigen::FFT<double> fft;
  Eigen::VectorXcd yf(n), pf(n);
  fft.fwd(yf, ypad);
  fft.fwd(pf, ppad);

  const double pmax = pf.cwiseAbs().maxCoeff();
  const double gate = amp_tol * pmax;
  if (pmax <= 0.0 || pf.cwiseAbs().maxCoeff() <= gate)
    throw std::runtime_error("freq_domain_estimate: waveform spectrum below threshold");

  Eigen::VectorXcd hf = Eigen::VectorXcd::Zero(n);
  int live_bins = 0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(pf[k]) > gate) {
      hf[k] = yf[k] / pf[k];
      ++live_bins;
    }
  }
  if (live_bins == 0)
    throw std::runtime_error("freq_domain_estimate: waveform spectrum below threshold");

  Eigen::VectorXcd h(n);
  fft.inv(h, hf);
  Eigen::VectorXd mag = h.cwiseAbs();

  int k_max = n - 1;
  if (!delay_grid.empty()) {
    double max_delay_s = 0.0;
    for (double d : delay_grid) max_delay_s = std::max(max_delay_s, d);
    k_max = std::min<int>(k_max, static_cast<int>(std::ceil(max_delay_s * y.fs)) + 1);
  }

  std::vector<Branch> out;
  for (int k = 0; k <= k_max; ++k) {
    const double m = mag[k];
    if (m <= amp_tol) continue;
    const double prev = (k > 0) ? mag[k - 1] : 0.0;
    const double next = (k < n - 1) ? mag[k + 1] : 0.0;
    if (m < prev || m < next) continue;  // not a local peak
    if (m == prev && k > 0) continue;    // plateau: keep the first sample
    // local quadratic interpolation for sub-sample delay
    double offset = 0.0;
    const double denom = prev - 2.0 * m + next;
    if (denom < 0.0) offset = 0.5 * (prev - next) / denom;
    if (offset > 0.5) offset = 0.5;
    if (offset < -0.5) offset = -0.5;
    // round to the nearest half sample
    const double delay = k + std::round(offset * 2.0) / 2.0;
    out.push_back({m, delay});
  }
  return out;
}

}  // namespace radarnet
