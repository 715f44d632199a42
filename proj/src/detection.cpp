#include "radarnet/detection.hpp"

#include <cmath>
#include <complex>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "radarnet/rng.hpp"

namespace radarnet {

double power_ratio(const Eigen::VectorXcd& spec, bool* degenerate) {
  const auto m = spec.size();
  if (m < 4 || (m % 2) != 0)
    throw std::invalid_argument("power_ratio: need even M >= 4");
  if (degenerate) *degenerate = false;
  const auto half = m / 2;
  double lower = 0.0, upper = 0.0;
  for (Eigen::Index k = 0; k < half; ++k) lower += std::norm(spec[k]);
  for (Eigen::Index k = half; k < m; ++k) upper += std::norm(spec[k]);
  if (lower == 0.0 && upper == 0.0) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  return upper / (lower + 1e-30);
}

namespace {

// angle of the globally strongest bin; false if the chirp is all zero
bool peak_phase(const Eigen::VectorXcd& spec, double* phase) {
  double best = 0.0;
  Eigen::Index best_k = -1;
  for (Eigen::Index k = 0; k < spec.size(); ++k) {
    const double p = std::norm(spec[k]);
    if (p > best) {
      best = p;
      best_k = k;
    }
  }
  if (best_k < 0 || best <= 0.0) return false;
  *phase = std::arg(spec[best_k]);
  return true;
}

}  // namespace

double doppler_feature(const std::array<Eigen::VectorXcd, 4>& chirp_spectra,
                       double wavelength, double T_c, bool* degenerate) {
  if (degenerate) *degenerate = false;
  std::vector<double> phases(4);
  for (int k = 0; k < 4; ++k) {
    if (!peak_phase(chirp_spectra[k], &phases[k])) {
      if (degenerate) *degenerate = true;
      return 0.0;
    }
  }
  const std::vector<double> v = estimate_velocity(phases, wavelength, T_c);
  double acc = 0.0;
  for (double vi : v) acc += std::abs(vi);
  return acc / static_cast<double>(v.size());
}

FeatureVector extract_features(const std::array<Eigen::VectorXcd, 4>& spectra,
                               double wavelength, double T_c) {
  FeatureVector f;
  bool deg_r = false, deg_v = false;
  Eigen::VectorXd pooled = Eigen::VectorXd::Zero(spectra[0].size());
  for (const auto& s : spectra) pooled += s.cwiseAbs2();
  // power_ratio on the pooled power spectrum (complex vector with the same
  // squared magnitudes)
  Eigen::VectorXcd pooled_c = pooled.cwiseSqrt().cast<std::complex<double>>();
  f.power_ratio_R = power_ratio(pooled_c, &deg_r);
  f.doppler_mag_V = doppler_feature(spectra, wavelength, T_c, &deg_v);
  f.degenerate = deg_r || deg_v;
  return f;
}

Dataset gen_synthetic_dataset(int n_per_class, double snr_lo_db,
                              double snr_hi_db, const ChirpConfig& cfg,
                              const IFConfig& ifc, std::uint64_t seed) {
  cfg.validate();
  ifc.validate();
  if (n_per_class < 1)
    throw std::invalid_argument("gen_synthetic_dataset: n_per_class >= 1");

  Dataset ds;
  ds.seed = seed;
  ds.snr_lo_db = snr_lo_db;
  ds.snr_hi_db = snr_hi_db;
  ds.samples.reserve(2 * static_cast<std::size_t>(n_per_class));

  const double wavelength = cfg.wavelength();
  const int m = ifc.n_samples_M;
  const auto window = static_cast<Eigen::Index>(
      std::min<double>(m, std::floor(cfg.T_c * ifc.fs)));

  auto make_frame = [&](Rng& rng, bool interference) {
    const double snr_db = rng.uniform(snr_lo_db, snr_hi_db);
    const double noise_std =
        std::sqrt(0.5 * std::pow(10.0, -snr_db / 10.0));

    // legitimate echo: beat in the lower half, coherent phase progression
    const double beat = rng.uniform(0.05, 0.8) * ifc.passband_B;
    const double tau = beat / cfg.slope_S;
    const double v_true = rng.uniform(-1.0, 1.0);  // near-static target
    const double theta0 = rng.uniform(0.0, 2.0 * M_PI);
    const double dphi = 4.0 * M_PI * cfg.T_c * v_true / wavelength;

    // interferer: random lead/lag timing, independent per-chirp phase
    const double mag = rng.uniform(0.05, 0.8) * ifc.passband_B / cfg.slope_S;
    const double tau_prime = (rng.uniform() < 0.5) ? -mag : mag;

    std::array<Eigen::VectorXcd, 4> spectra;
    for (int k = 0; k < 4; ++k) {
      DechirpScene scene;
      if (interference) {
        scene.interferers.push_back(
            {tau_prime, 0.0, 1.0, rng.uniform(0.0, 2.0 * M_PI), 0.0});
      } else {
        scene.target = TargetEcho{tau, 1.0, theta0 + k * dphi};
      }
      SampledSignal sig = synth_if_output(scene, cfg, ifc);
      for (Eigen::Index i = 0; i < window; ++i)
        sig.samples[i] += std::complex<double>(noise_std * rng.normal(),
                                               noise_std * rng.normal());
      spectra[k] = spectrum(sig, m);
    }
    return extract_features(spectra, wavelength, cfg.T_c);
  };

  for (int i = 0; i < n_per_class; ++i) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
    ds.samples.push_back({make_frame(rng, false), Label::Signal});
  }
  for (int i = 0; i < n_per_class; ++i) {
    Rng rng(mix_seed(seed ^ 0x1f2e3d4cu, static_cast<std::uint64_t>(i)));
    ds.samples.push_back({make_frame(rng, true), Label::Interference});
  }
  return ds;
}

LinearClassifier train_classifier(const Dataset& data) {
  std::size_t n_sig = 0, n_int = 0;
  for (const auto& s : data.samples)
    (s.y == Label::Signal ? n_sig : n_int)++;
  if (n_sig == 0 || n_int == 0)
    throw std::invalid_argument("train_classifier: both classes required");

  const auto n = static_cast<Eigen::Index>(data.samples.size());
  Eigen::MatrixXd x(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, 0) = data.samples[i].x.power_ratio_R;
    x(i, 1) = data.samples[i].x.doppler_mag_V;
    y(i) = data.samples[i].y == Label::Signal ? 1.0 : -1.0;
  }

  LinearClassifier clf;
  clf.feature_means = x.colwise().mean();
  Eigen::Vector2d var =
      (x.rowwise() - clf.feature_means.transpose()).array().square().colwise().mean();
  clf.feature_scales = var.cwiseSqrt().cwiseMax(1e-12);
  Eigen::MatrixXd z = (x.rowwise() - clf.feature_means.transpose()).array().rowwise() /
                      clf.feature_scales.transpose().array();

  // full-batch subgradient descent on hinge loss with a small ridge term
  const double ridge = 1e-4;
  Eigen::Vector2d w = Eigen::Vector2d::Zero();
  double b = 0.0;
  const int iters = 4000;
  for (int t = 0; t < iters; ++t) {
    Eigen::Vector2d gw = ridge * w;
    double gb = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double margin = y(i) * (z.row(i).dot(w) + b);
      if (margin < 1.0) {
        gw -= y(i) * z.row(i).transpose() / static_cast<double>(n);
        gb -= y(i) / static_cast<double>(n);
      }
    }
    const double lr = 1.0 / std::sqrt(1.0 + t);
    w -= lr * gw;
    b -= lr * gb;
  }
  clf.weights = w;
  clf.bias = b;
  return clf;
}

Label classify(const LinearClassifier& clf, const FeatureVector& x) {
  if (!std::isfinite(x.power_ratio_R) || !std::isfinite(x.doppler_mag_V))
    throw std::invalid_argument("classify: non-finite feature");
  Eigen::Vector2d raw(x.power_ratio_R, x.doppler_mag_V);
  const Eigen::Vector2d z =
      (raw - clf.feature_means).cwiseQuotient(clf.feature_scales);
  const double score = clf.weights.dot(z) + clf.bias;
  return score > 0.0 ? Label::Signal : Label::Interference;
}

double classifier_accuracy(const LinearClassifier& clf,
                           const std::vector<LabeledFeature>& samples) {
  if (samples.empty()) return 0.0;
  std::size_t ok = 0;
  for (const auto& s : samples)
    if (classify(clf, s.x) == s.y) ++ok;
  return static_cast<double>(ok) / static_cast<double>(samples.size());
}

void write_dataset(std::ostream& os, const Dataset& data) {
  os << "# radarnet dataset seed=" << data.seed << " snr_lo_db=" << data.snr_lo_db
     << " snr_hi_db=" << data.snr_hi_db << "\n";
  os << "label power_ratio doppler_mag\n";
  os.precision(17);
  for (const auto& s : data.samples) {
    os << (s.y == Label::Signal ? "signal" : "interference") << ' '
       << s.x.power_ratio_R << ' ' << s.x.doppler_mag_V << '\n';
  }
}

Dataset read_dataset(std::istream& is) {
  Dataset ds;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# radarnet dataset", 0) != 0)
    throw std::runtime_error("read_dataset: bad header");
  {
    std::istringstream hs(line);
    std::string tok;
    while (hs >> tok) {
      if (tok.rfind("seed=", 0) == 0) ds.seed = std::stoull(tok.substr(5));
      if (tok.rfind("snr_lo_db=", 0) == 0) ds.snr_lo_db = std::stod(tok.substr(10));
      if (tok.rfind("snr_hi_db=", 0) == 0) ds.snr_hi_db = std::stod(tok.substr(10));
    }
  }
  std::getline(is, line);  // column header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string label;
    LabeledFeature s;
    if (!(ls >> label >> s.x.power_ratio_R >> s.x.doppler_mag_V))
      throw std::runtime_error("read_dataset: bad row");
    if (label == "signal")
      s.y = Label::Signal;
    else if (label == "interference")
      s.y = Label::Interference;
    else
      throw std::runtime_error("read_dataset: unknown label " + label);
    ds.samples.push_back(s);
  }
  return ds;
}

}  // namespace radarnet
