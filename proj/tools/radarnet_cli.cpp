// radarnet command-line front end: simulate | analyze | detect | decouple |
// worldline | verify. Exit codes: 0 success, 1 validation failure, 2 bad
// usage or unreadable input.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radarnet/detection.hpp"
#include "radarnet/harness.hpp"
#include "radarnet/multiuser.hpp"
#include "radarnet/scenario_config.hpp"
#include "radarnet/stats.hpp"
#include "radarnet/traffic_sim.hpp"
#include "radarnet/worldline.hpp"

namespace fs = std::filesystem;
using namespace radarnet;

namespace {

std::string hash8(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(8) << std::setfill('0') << (h >> 32 ^ (h & 0xffffffffu));
  return os.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::uint64_t seed_override, bool has_seed) {
  ScenarioConfig cfg;
  if (!config_path.empty()) cfg = load_scenario_config(config_path);
  if (has_seed) cfg.seed = seed_override;
  cfg.validate();
  const std::uint64_t h = config_hash(cfg);
  const std::string tag = hash8(h);
  fs::create_directories(out_dir);

  auto res = run_scenario(cfg);
  res.log.config_hash = h;

  {
    auto out = open_out(fs::path(out_dir) / ("simulate_" + tag + "_events.txt"));
    write_event_log(out, res.log);
  }
  {
    auto out = open_out(fs::path(out_dir) / ("simulate_" + tag + "_clouds.txt"));
    out << "# config_hash=" << std::hex << h << std::dec
        << " seed=" << cfg.seed << "\n";
    write_clouds(out, res.clouds);
  }
  {
    auto out = open_out(fs::path(out_dir) / ("simulate_" + tag + "_truth.txt"));
    out << "# config_hash=" << std::hex << h << std::dec
        << " seed=" << cfg.seed << "\n";
    write_truth(out, res.truth);
  }
  {
    auto out = open_out(fs::path(out_dir) / ("simulate_" + tag + "_stats.txt"));
    out << "# radarnet simulate stats config_hash=" << std::hex << h
        << std::dec << " seed=" << cfg.seed << "\n";
    out << "vehicles_spawned " << res.vehicles_spawned << "\n";
    out << "vehicles_finished " << res.vehicles_finished << "\n";
    out << "events " << res.log.events.size() << "\n";
    out << "interfered_vehicles " << res.interfered_vehicles.size() << "\n";
  }
  std::cout << "simulate: " << res.log.events.size() << " events, "
            << res.vehicles_spawned << " vehicles, artifacts simulate_" << tag
            << "_* in " << out_dir << "\n";
  return 0;
}

int cmd_analyze(const std::string& log_path, const std::string& out_dir,
                double merge_gap, double quantum, double alpha, long mc_reps,
                std::uint64_t seed) {
  std::ifstream in(log_path);
  if (!in) {
    std::cerr << "analyze: cannot open " << log_path << "\n";
    return 2;
  }
  EventLog log = read_event_log(in);
  auto ana = analyze_log(log, merge_gap, quantum);
  fs::create_directories(out_dir);
  const std::string tag = hash8(log.config_hash ^ log.seed);
  auto out = open_out(fs::path(out_dir) / ("analyze_" + tag + ".json"));

  out << "{\n  \"config_hash\": \"" << std::hex << log.config_hash << std::dec
      << "\",\n  \"seed\": " << log.seed
      << ",\n  \"n_events\": " << ana.n_events
      << ",\n  \"n_decision_events\": " << ana.n_decision_events
      << ",\n  \"n_victims\": " << ana.n_victims
      << ",\n  \"amplitude_mode_dbw\": " << ana.amplitude_mode_dbw << ",\n  ";

  auto emit_block = [&](const std::string& name,
                        const std::vector<double>& data) {
    auto [hist, ecdf] = empirical_distribution(data, 24);
    write_histogram_json(out, name + "_hist", hist);
    out << ",\n  \"" << name << "_n\": " << data.size();
    if (data.size() >= 8) {
      auto [rate, test] = exponential_fit_test(data, alpha, mc_reps, seed);
      out << ",\n  \"" << name << "_exp_rate\": " << rate << ",\n  \"" << name
          << "_exp_ks\": " << test.statistic << ",\n  \"" << name
          << "_exp_crit\": " << test.critical_value << ",\n  \"" << name
          << "_exp_reject\": " << (test.reject ? "true" : "false");
    }
  };
  emit_block("episode_intervals", ana.episode_intervals);
  out << ",\n  ";
  emit_block("episode_durations", ana.episode_durations);
  out << ",\n  ";
  emit_block("impulse_intervals", ana.impulse_intervals);
  out << "\n}\n";
  std::cout << "analyze: " << ana.n_events << " events, " << ana.n_victims
            << " victims, " << ana.episode_intervals.size()
            << " episode intervals -> analyze_" << tag << ".json\n";
  return 0;
}

int cmd_detect(std::uint64_t seed, int trials, const std::string& out_dir) {
  ChirpConfig chirp;
  IFConfig ifc;
  Dataset train = gen_synthetic_dataset(trials, 10.0, 30.0, chirp, ifc, seed);
  Dataset test =
      gen_synthetic_dataset(trials, 10.0, 30.0, chirp, ifc, seed ^ 0x7e57u);
  auto clf = train_classifier(train);
  double acc_train = classifier_accuracy(clf, train.samples);
  double acc_test = classifier_accuracy(clf, test.samples);

  fs::create_directories(out_dir);
  std::string tag = hash8(seed ^ (std::uint64_t)trials << 32);
  {
    auto out = open_out(fs::path(out_dir) / ("detect_" + tag + "_dataset.txt"));
    write_dataset(out, train);
  }
  {
    auto out = open_out(fs::path(out_dir) / ("detect_" + tag + "_metrics.txt"));
    out << "# radarnet detect seed=" << seed << " trials=" << trials << "\n";
    out << std::setprecision(10);
    out << "train_accuracy " << acc_train << "\n";
    out << "test_accuracy " << acc_test << "\n";
    out << "weights " << clf.weights(0) << " " << clf.weights(1) << " bias "
        << clf.bias << "\n";
  }
  std::cout << std::setprecision(6) << "detect: train acc " << acc_train
            << ", test acc " << acc_test << " -> detect_" << tag << "_*\n";
  return acc_test >= 0.99 ? 0 : 1;
}

template <class C>
int run_decouple(const DelayPoly<C>& y, const std::vector<DelayPoly<C>>& basis,
                 std::vector<int> bounds, int max_delay, double amp_tol,
                 double max_range, double fs, std::ostream& out) {
  if (bounds.empty()) bounds.assign(basis.size(), 1 << 20);
  if (bounds.size() != basis.size())
    throw std::runtime_error("bounds count does not match basis count");
  auto multi = divide_multi(y, basis, bounds);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out << "quotient[" << i << "] = " << to_string(multi.quotients[i])
        << (multi.improper[i] ? "   (order bound exceeded)" : "") << "\n";
  }
  out << "residue = " << to_string(multi.residue) << "\n";
  DelayPoly<C> recon = multi.residue;
  for (std::size_t i = 0; i < basis.size(); ++i)
    recon = recon + basis[i] * multi.quotients[i];
  out << "reconstruction_exact " << (recon == y ? "yes" : "no") << "\n";

  if (basis.size() == 1) {
    auto single = divide_single(y, basis[0], max_delay, amp_tol);
    std::vector<Branch> branches;
    for (const auto& [c, e] : single.branches)
      branches.push_back({static_cast<double>(c), static_cast<double>(e)});
    auto parts = classify_branches(branches, max_range, fs);
    out << "branches " << branches.size() << " (legitimate "
        << parts.legitimate.size() << ", interference "
        << parts.interference.size() << ")\n";
    for (const auto& b : parts.legitimate)
      out << "  legit delay=" << b.delay << " amp=" << b.amplitude << "\n";
    for (const auto& b : parts.interference)
      out << "  intf  delay=" << b.delay << " amp=" << b.amplitude << "\n";
    if (single.exceeded_max_delay) out << "max_delay_exceeded yes\n";
  }
  return 0;
}

int cmd_decouple(const std::string& fixture_path, const std::string& out_dir,
                 double max_range, double fs) {
  std::string text = slurp(fixture_path);
  std::istringstream in(text);
  std::string mode = "rational";
  std::string y_text;
  std::vector<std::string> p_texts;
  std::vector<int> bounds;
  int max_delay = 1 << 20;
  double amp_tol = 0.0;
  std::string line;
  while (std::getline(in, line)) {
    auto hashpos = line.find('#');
    if (hashpos != std::string::npos) line.erase(hashpos);
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon);
    std::string val = line.substr(colon + 1);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t"));
      auto e = s.find_last_not_of(" \t\r");
      s.erase(e == std::string::npos ? 0 : e + 1);
    };
    trim(key);
    trim(val);
    if (key == "mode") mode = val;
    else if (key == "y") y_text = val;
    else if (key == "p") p_texts.push_back(val);
    else if (key == "max_delay") max_delay = std::stoi(val);
    else if (key == "amp_tol") amp_tol = std::stod(val);
    else if (key == "bounds") {
      std::istringstream bs(val);
      int b;
      while (bs >> b) bounds.push_back(b);
    } else {
      throw std::runtime_error("unknown fixture key: " + key);
    }
  }
  if (y_text.empty() || p_texts.empty())
    throw std::runtime_error("fixture needs a y: line and at least one p: line");

  fs::create_directories(out_dir);
  std::string tag = hash8(fnv1a(text));
  auto out = open_out(fs::path(out_dir) / ("decouple_" + tag + ".txt"));
  out << "# radarnet decouple input_hash=" << tag << " mode=" << mode << "\n";
  int rc;
  if (mode == "rational") {
    std::vector<RationalPoly> basis;
    for (const auto& t : p_texts) basis.push_back(parse_poly<Rational>(t));
    rc = run_decouple(parse_poly<Rational>(y_text), basis, bounds, max_delay,
                      amp_tol, max_range, fs, out);
  } else if (mode == "float") {
    std::vector<FloatPoly> basis;
    for (const auto& t : p_texts) basis.push_back(parse_poly<double>(t));
    rc = run_decouple(parse_poly<double>(y_text), basis, bounds, max_delay,
                      amp_tol, max_range, fs, out);
  } else {
    throw std::runtime_error("mode must be rational or float");
  }
  std::cout << "decouple: wrote decouple_" << tag << ".txt\n";
  return rc;
}

int cmd_worldline(const std::string& clouds_path, const std::string& truth_path,
                  const std::string& out_dir, double v_max, int max_clouds) {
  std::ifstream in(clouds_path);
  if (!in) {
    std::cerr << "worldline: cannot open " << clouds_path << "\n";
    return 2;
  }
  std::string first;
  std::getline(in, first);  // optional provenance comment before the table
  if (first.rfind("# config_hash", 0) != 0) {
    in.seekg(0);
    first.clear();
  }
  auto clouds = read_clouds(in);
  if (max_clouds > 0 && static_cast<int>(clouds.size()) > max_clouds) {
    // deterministic stride subsample, keeps time ordering
    std::vector<UncertaintyCloud> kept;
    double stride = static_cast<double>(clouds.size()) / max_clouds;
    for (int i = 0; i < max_clouds; ++i)
      kept.push_back(clouds[static_cast<std::size_t>(i * stride)]);
    clouds = std::move(kept);
  }
  auto lines = cluster_worldlines(clouds, v_max);

  fs::create_directories(out_dir);
  std::string tag = hash8(fnv1a(first.empty() ? clouds_path : first));
  auto out = open_out(fs::path(out_dir) / ("worldline_" + tag + "_tracks.txt"));
  out << "# radarnet worldlines clouds=" << clouds.size()
      << " v_max=" << v_max << "\n";
  out << std::setprecision(10);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& wl = lines[i];
    out << "track " << i << " anchor " << wl.anchor(0) << " " << wl.anchor(1)
        << " t0 " << wl.t0 << " v " << wl.velocity(0) << " " << wl.velocity(1)
        << " members";
    for (int m : wl.members) out << " " << m;
    out << "\n";
  }
  std::cout << "worldline: " << lines.size() << " tracks from "
            << clouds.size() << " clouds\n";

  if (!truth_path.empty()) {
    std::ifstream tin(truth_path);
    if (!tin) {
      std::cerr << "worldline: cannot open " << truth_path << "\n";
      return 2;
    }
    std::string th;
    std::getline(tin, th);
    if (th.rfind("# config_hash", 0) != 0) tin.seekg(0);
    auto truth = read_truth(tin);
    auto stats = evaluate_tracks(lines, clouds, truth);
    auto eout =
        open_out(fs::path(out_dir) / ("worldline_" + tag + "_errors.txt"));
    eout << std::setprecision(10);
    eout << "pooled_median " << stats.pooled_median << "\n";
    eout << "pooled_mean " << stats.pooled_mean << "\n";
    for (std::size_t i = 0; i < stats.per_line_median.size(); ++i)
      eout << "track " << i << " median " << stats.per_line_median[i]
           << " mean " << stats.per_line_mean[i] << "\n";
    std::cout << std::setprecision(4) << "worldline: pooled median error "
              << stats.pooled_median << " m\n";
  }
  return 0;
}

int cmd_verify(const std::string& out_dir, long trials, std::uint64_t seed) {
  auto rep = build_compat_report(trials, seed);
  fs::create_directories(out_dir);
  std::ostringstream body;
  write_compat_report(body, rep);
  {
    auto out = open_out(fs::path(out_dir) / "verify_report.txt");
    out << "# trials=" << trials << " seed=" << seed << "\n" << body.str();
  }
  std::cout << body.str();
  bool ok = true;
  for (const auto& e : rep.entries)
    if (e.note.find("EXCEEDS") != std::string::npos ||
        e.note.find("REJECTS") != std::string::npos)
      ok = false;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radar-network interference toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", log_path, fixture_path;
  std::string clouds_path, truth_path;
  std::uint64_t seed = 1;
  bool seed_given = false;
  long trials = 20000;
  int n_per_class = 300;
  double alpha = 0.05, merge_gap = 0.5, quantum = 0.1, v_max = 30.0;
  double max_range = 600.0, fs = 10e6;
  int max_clouds = 400;

  auto* sim = app.add_subcommand("simulate", "run a traffic scenario");
  sim->add_option("--config", config_path, "scenario config file");
  sim->add_option("--out", out_dir, "output directory");
  sim->add_option("--seed", seed, "seed override")->each([&](const std::string&) {
    seed_given = true;
  });

  auto* ana = app.add_subcommand("analyze", "statistics from an event log");
  ana->add_option("--log", log_path, "event log path")->required();
  ana->add_option("--out", out_dir, "output directory");
  ana->add_option("--gap", merge_gap, "episode merge gap, s");
  ana->add_option("--quantum", quantum, "onset dequantization width, s");
  ana->add_option("--alpha", alpha, "significance level");
  ana->add_option("--trials", trials, "Monte Carlo replications");
  ana->add_option("--seed", seed, "test seed");

  auto* det = app.add_subcommand("detect", "train/evaluate the classifier");
  det->add_option("--seed", seed, "dataset seed");
  det->add_option("--trials", n_per_class, "frames per class");
  det->add_option("--out", out_dir, "output directory");

  auto* dec = app.add_subcommand("decouple", "polynomial division fixtures");
  dec->add_option("--fixtures", fixture_path, "fixture file")->required();
  dec->add_option("--out", out_dir, "output directory");
  dec->add_option("--max-range", max_range, "range gate, m");
  dec->add_option("--fs", fs, "sample rate, Hz");

  auto* wl = app.add_subcommand("worldline", "cluster clouds into tracks");
  wl->add_option("--clouds", clouds_path, "cloud file")->required();
  wl->add_option("--truth", truth_path, "truth file (optional)");
  wl->add_option("--out", out_dir, "output directory");
  wl->add_option("--vmax", v_max, "maximum track speed, m/s");
  wl->add_option("--max-clouds", max_clouds, "subsample cap (0 = none)");

  auto* ver = app.add_subcommand("verify", "formula-vs-oracle report");
  ver->add_option("--out", out_dir, "output directory");
  ver->add_option("--trials", trials, "Monte Carlo trials");
  ver->add_option("--seed", seed, "Monte Carlo seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(config_path, out_dir, seed, seed_given);
    if (ana->parsed())
      return cmd_analyze(log_path, out_dir, merge_gap, quantum, alpha, trials, seed);
    if (det->parsed()) return cmd_detect(seed, n_per_class, out_dir);
    if (dec->parsed()) return cmd_decouple(fixture_path, out_dir, max_range, fs);
    if (wl->parsed())
      return cmd_worldline(clouds_path, truth_path, out_dir, v_max, max_clouds);
    if (ver->parsed()) return cmd_verify(out_dir, trials, seed);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
