#ifndef RADARNET_MULTIUSER_HPP
#define RADARNET_MULTIUSER_HPP

#include <vector>

#include "radarnet/delay_poly.hpp"
#include "radarnet/rx_chain.hpp"

namespace radarnet {

// One propagation branch: amplitude and delay in sample periods. The delay
// is fractional only for frequency-domain estimates; polynomial division
// always produces integer delays.
struct Branch {
  double amplitude = 0.0;
  double delay = 0.0;
};

template <class C>
struct SingleDivisionResult {
  std::vector<std::pair<C, int>> branches;  // quotient monomials (coeff, delay)
  DelayPoly<C> residue;
  bool exceeded_max_delay = false;
};

// Long division of y by the single known waveform x0 in leading-term order.
// Quotient monomials with |coeff| < amp_tol are dropped into the residue;
// pass amp_tol = 0 for exact mode. Delays above max_delay are flagged but
// division continues. Reconstruction y = x0 * sum(branches) + residue holds.
template <class C>
SingleDivisionResult<C> divide_single(const DelayPoly<C>& y,
                                      const DelayPoly<C>& x0, int max_delay,
                                      double amp_tol);

template <class C>
struct DecompositionResult {
  std::vector<DelayPoly<C>> quotients;  // one per basis waveform
  DelayPoly<C> residue;
  std::vector<bool> improper;  // quotient order exceeded its bound
};

// Multi-waveform decomposition: repeatedly divide LT(g) by the first basis
// leading term that divides it, else move LT(g) to the residue.
template <class C>
DecompositionResult<C> divide_multi(const DelayPoly<C>& y,
                                    const std::vector<DelayPoly<C>>& basis,
                                    const std::vector<int>& order_bounds);

struct BranchPartition {
  std::vector<Branch> legitimate;
  std::vector<Branch> interference;
};

// Delays implying a range beyond max_range are interference.
BranchPartition classify_branches(const std::vector<Branch>& branches,
                                  double max_range, double fs);

// Frequency-domain branch estimation: spectral division Y/P on bins where
// |P| exceeds amp_tol * max|P|, inverse transform, peak picking with local
// quadratic interpolation to half-sample delays. delay_grid (seconds) bounds
// the delay search range; empty means no bound.
std::vector<Branch> freq_domain_estimate(const SampledSignal& y,
                                         const SampledSignal& waveform,
                                         const std::vector<double>& delay_grid,
                                         double amp_tol);

extern template SingleDivisionResult<Rational> divide_single(
    const RationalPoly&, const RationalPoly&, int, double);
extern template SingleDivisionResult<double> divide_single(const FloatPoly&,
                                                           const FloatPoly&,
                                                           int, double);
extern template DecompositionResult<Rational> divide_multi(
    const RationalPoly&, const std::vector<RationalPoly>&,
    const std::vector<int>&);
extern template DecompositionResult<double> divide_multi(
    const FloatPoly&, const std::vector<FloatPoly>&, const std::vector<int>&);

}  // namespace radarnet

#endif  // RADARNET_MULTIUSER_HPP
