#ifndef RADARNET_DETECTION_HPP
#define RADARNET_DETECTION_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "radarnet/rx_chain.hpp"

namespace radarnet {

struct FeatureVector {
  double power_ratio_R = 0.0;  // upper-half to lower-half spectral power
  double doppler_mag_V = 0.0;  // m/s
  bool degenerate = false;     // all-zero frame, not classifiable
};

enum class Label { Signal, Interference };

struct LabeledFeature {
  FeatureVector x;
  Label y = Label::Signal;
};

struct Dataset {
  std::vector<LabeledFeature> samples;
  std::uint64_t seed = 0;
  double snr_lo_db = 0.0;
  double snr_hi_db = 0.0;
};

// R = sum_{k=M/2}^{M-1} |X_k|^2 / (sum_{k=0}^{M/2-1} |X_k|^2 + eps).
// All-zero spectrum returns 0 and sets *degenerate when provided.
double power_ratio(const Eigen::VectorXcd& spec, bool* degenerate = nullptr);

// Mean |v| over the 3 successive-chirp velocity estimates from the peak-bin
// phases of a 4-chirp frame.
double doppler_feature(const std::array<Eigen::VectorXcd, 4>& chirp_spectra,
                       double wavelength, double T_c,
                       bool* degenerate = nullptr);

FeatureVector extract_features(const std::array<Eigen::VectorXcd, 4>& spectra,
                               double wavelength, double T_c);

// Synthetic two-class frame generator standing in for hardware capture:
// coherent targets vs interferers with independent pulse phases and random
// lead/lag timing. Deterministic per seed.
Dataset gen_synthetic_dataset(int n_per_class, double snr_lo_db,
                              double snr_hi_db, const ChirpConfig& cfg,
                              const IFConfig& ifc, std::uint64_t seed);

struct LinearClassifier {
  Eigen::Vector2d weights = Eigen::Vector2d::Zero();  // standardized space
  double bias = 0.0;
  Eigen::Vector2d feature_means = Eigen::Vector2d::Zero();
  Eigen::Vector2d feature_scales = Eigen::Vector2d::Ones();
};

// Deterministic max-margin linear separator on standardized features
// (full-batch squared-hinge minimization with a small ridge term).
LinearClassifier train_classifier(const Dataset& data);

// Sign decision; exact ties resolve to Interference.
Label classify(const LinearClassifier& clf, const FeatureVector& x);

double classifier_accuracy(const LinearClassifier& clf,
                           const std::vector<LabeledFeature>& samples);

// Delimited-text dataset round trip: header with seed/SNR metadata, then
// one "label power_ratio doppler_mag" row per sample.
void write_dataset(std::ostream& os, const Dataset& data);
Dataset read_dataset(std::istream& is);

}  // namespace radarnet

#endif  // RADARNET_DETECTION_HPP
