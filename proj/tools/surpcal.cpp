// surpcal: score review bundles, evaluate error bounds, run accuracy sweeps.

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "surpcal/beta_model.hpp"
#include "surpcal/bounds.hpp"
#include "surpcal/bundle_json.hpp"
#include "surpcal/model.hpp"
#include "surpcal/montecarlo.hpp"
#include "surpcal/noise.hpp"
#include "surpcal/scoring.hpp"
#include "surpcal/svg.hpp"

namespace {

using nlohmann::json;
using namespace surpcal;

json score_to_json(const CalibratedScore& s) {
  switch (s.kind) {
    case ScoreKind::PosInf: return "+inf";
    case ScoreKind::NegInf: return "-inf";
    case ScoreKind::Undefined: return "undefined";
    case ScoreKind::Finite: break;
  }
  return s.value;
}

const char* cause_name(UndefinedCause c) {
  switch (c) {
    case UndefinedCause::MissingSignal: return "missing signal";
    case UndefinedCause::NonPositiveDet: return "det(U_hat) <= 0";
    case UndefinedCause::SanityGate: return "sanity gate P11 <= P01";
    case UndefinedCause::BadReconstruction: return "prior reconstruction failed";
    case UndefinedCause::None: break;
  }
  return "none";
}

void warn_if_undefined(const char* name, const CalibratedScore& s) {
  if (s.is_undefined())
    std::cerr << "warning: " << name << " score undefined (" << cause_name(s.cause) << ")\n";
}

int cmd_score(const std::string& bundlePath) {
  std::ifstream in(bundlePath);
  if (!in) {
    std::cerr << "error: cannot open bundle file '" << bundlePath << "'\n";
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ReviewBundle bundle = bundle_from_json_text(buf.str());

  const CalibratedScore surp = bundle.dim() == 2 ? empirical_score_binary(bundle)
                                                 : empirical_score_general(bundle);
  const CalibratedScore sp = sp_inspired_score(bundle);
  warn_if_undefined("surprisal", surp);
  warn_if_undefined("sp_inspired", sp);

  json out;
  out["surprisal"] = score_to_json(surp);
  out["baseline"] = baseline_score(bundle);
  out["sp_inspired"] = score_to_json(sp);
  std::cout << out.dump(2) << "\n";
  return 0;
}

Vec parse_csv_doubles(const std::string& text) {
  Vec out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

int cmd_bound(const std::string& waText, const std::string& wbText, const std::string& phiText,
              double lambdaA, double lambdaB, const std::string& biasAText,
              const std::string& biasBText, std::uint64_t na, std::uint64_t nb,
              const std::string& jointText) {
  const Vec wa = parse_csv_doubles(waText);
  const Vec wb = parse_csv_doubles(wbText);
  const std::size_t d = wa.size();
  Vec phi;
  if (!phiText.empty()) phi = parse_csv_doubles(phiText);
  else
    for (std::size_t s = 0; s < d; ++s) phi.push_back(double(s));
  const Vec biasA = biasAText.empty() ? Vec(d, 1.0 / double(d)) : parse_csv_doubles(biasAText);
  const Vec biasB = biasBText.empty() ? Vec(d, 1.0 / double(d)) : parse_csv_doubles(biasBText);

  std::optional<JointMatrix> joint;
  if (!jointText.empty()) {
    const Vec flat = parse_csv_doubles(jointText);
    if (flat.size() != d * d)
      throw InvalidArgument("--joint must have d*d comma-separated entries");
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = flat[i * d + j];
    joint.emplace(std::move(m));
  }

  const BoundInput in(StateVector(wa), StateVector(wb), NoiseModel(lambdaA, biasA),
                      NoiseModel(lambdaB, biasB), na, nb, phi, joint);
  json out;
  const double general = general_error_bound(in);
  out["general"] = general;
  double worst = general;
  if (d == 2) {
    const double binary = binary_error_bound(in);
    out["binary"] = binary;
    worst = std::min(worst, binary);
  }
  if (joint) out["lemma_ideal"] = lemma_ideal_bound(in);
  out["vacuous"] = worst >= 1.0;
  std::cout << out.dump(2) << "\n";
  return 0;
}

// Scalar-or-array config field.
template <class T>
std::vector<T> as_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

BiasMode parse_bias_mode(std::string s) {
  for (char& c : s) c = char(std::tolower(c));
  if (s == "opposite") return BiasMode::Opposite;
  if (s == "same") return BiasMode::Same;
  throw InvalidArgument("biasMode must be \"opposite\" or \"same\"");
}

std::string format_double_short(double v) {
  std::ostringstream os;
  os << v;
  std::string s = os.str();
  for (char& c : s) if (c == '.') c = 'p';
  return s;
}

int cmd_simulate(const std::string& configPath, const std::string& outPath, bool svg,
                 std::optional<std::uint64_t> seedOverride,
                 std::optional<std::uint64_t> trialsOverride, std::size_t threads) {
  std::ifstream in(configPath);
  if (!in) {
    std::cerr << "error: cannot open config file '" << configPath << "'\n";
    return 2;
  }
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  }

  std::vector<BetaPrior> priors;
  try {
    if (cfg.contains("priors"))
      for (const auto& p : cfg.at("priors"))
        priors.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    else if (cfg.contains("prior"))
      priors.emplace_back(cfg.at("prior").at("alpha").get<double>(),
                          cfg.at("prior").at("beta").get<double>());
    else
      throw InvalidArgument("config needs \"prior\" or \"priors\"");

    const auto nList = cfg.contains("nReviewers") ? as_list<std::size_t>(cfg.at("nReviewers"))
                                                  : std::vector<std::size_t>{3};
    const auto lambdaAList = cfg.contains("lambdaA") ? as_list<double>(cfg.at("lambdaA"))
                                                     : std::vector<double>{0.0};
    std::vector<BiasMode> modes;
    if (cfg.contains("biasMode"))
      for (const auto& m : as_list<std::string>(cfg.at("biasMode")))
        modes.push_back(parse_bias_mode(m));
    else
      modes.push_back(BiasMode::Opposite);
    const auto grid = cfg.contains("lambdaBGrid") ? cfg.at("lambdaBGrid").get<std::vector<double>>()
                                                  : default_lambda_grid();
    const std::uint64_t trials =
        trialsOverride.value_or(cfg.value("trials", std::uint64_t{200000}));
    const std::uint64_t masterSeed =
        seedOverride.value_or(cfg.value("masterSeed", std::uint64_t{1}));

    std::vector<AccuracyResult> all;
    std::uint64_t scenarioIndex = 0;
    struct SvgJob {
      std::string name;
      std::vector<AccuracyResult> results;
    };
    std::vector<SvgJob> svgJobs;
    for (const auto& prior : priors)
      for (const auto mode : modes)
        for (const auto n : nList)
          for (const double lambdaA : lambdaAList) {
            ExperimentConfig ec{prior, n, lambdaA, grid, mode, trials, masterSeed};
            auto results = estimate_accuracy(ec, threads, scenarioIndex * 100000ULL);
            if (svg) {
              std::string name = "beta" + format_double_short(prior.alpha) + "_" +
                                 format_double_short(prior.beta) + "_" + to_string(mode) +
                                 "_n" + std::to_string(n) + "_lA" +
                                 format_double_short(lambdaA);
              svgJobs.push_back({name, results});
            }
            all.insert(all.end(), results.begin(), results.end());
            ++scenarioIndex;
          }

    std::ofstream out(outPath);
    if (!out) {
      std::cerr << "error: cannot write output file '" << outPath << "'\n";
      return 3;
    }
    out << results_to_csv(all);
    out.close();

    for (const auto& job : svgJobs) {
      std::vector<ChartSeries> series = {{"surprisal", "red", {}, {}},
                                         {"baseline", "green", {}, {}},
                                         {"sp_inspired", "blue", {}, {}}};
      for (const auto& r : job.results) {
        std::size_t idx = r.method == "surprisal" ? 0 : (r.method == "baseline" ? 1 : 2);
        series[idx].x.push_back(r.lambdaB);
        series[idx].y.push_back(r.accuracy);
      }
      const std::string stem =
          outPath.size() > 4 && outPath.substr(outPath.size() - 4) == ".csv"
              ? outPath.substr(0, outPath.size() - 4)
              : outPath;
      const std::string path = stem + "_" + job.name + ".svg";
      std::ofstream sf(path);
      if (!sf) {
        std::cerr << "error: cannot write SVG file '" << path << "'\n";
        return 3;
      }
      sf << render_line_chart(job.name, series, grid.front(), grid.back(), 0.5, 1.0);
    }
    return 0;
  } catch (const json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  }
}

void print_matrix(const char* name, const Matrix& m) {
  std::printf("%s =\n", name);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    std::printf("  [");
    for (std::size_t j = 0; j < m.dim(); ++j)
      std::printf(" %.6f", m(i, j));
    std::printf(" ]\n");
  }
}

// Self-verifying walkthrough of the three-state binary example.
int cmd_demo() {
  const DiscretePrior prior({StateVector({0.8, 0.2}), StateVector({0.5, 0.5}),
                             StateVector({0.2, 0.8})},
                            {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const JointMatrix u = joint_from_discrete_prior(prior);
  const PredictionMatrix p = prediction_from_joint(u);
  std::printf("Three equally likely states: [0.8,0.2], [0.5,0.5], [0.2,0.8]\n\n");
  print_matrix("clean joint U", u.u);
  print_matrix("clean prediction P", p.p);

  const NoiseModel noise(0.5, {1.0, 0.0});
  const JointMatrix uhat = apply_to_joint(noise, u);
  const PredictionMatrix phat = prediction_from_joint(uhat);
  std::printf("\nnoise: lambda=0.5, bias=[1,0]  (50%% chance of a careless reject)\n\n");
  print_matrix("noisy joint U_hat", uhat.u);
  print_matrix("noisy prediction P_hat", phat.p);

  const StateVector w({0.2, 0.8});
  const StateVector what = apply_to_state(noise, w);
  const Vec phi = {0.0, 1.0};
  const double clean = surprisal_score(w, u, phi);
  const double noisy = surprisal_score(what, uhat, phi);
  std::printf("\nstate w = [0.2, 0.8] -> noisy state [%.2f, %.2f]\n", what[0], what[1]);
  std::printf("surprisal score, clean model:  %.9f\n", clean);
  std::printf("surprisal score, noisy model:  %.9f\n", noisy);
  std::printf("difference:                    %.3e  (invariance)\n", std::fabs(clean - noisy));
  return std::fabs(clean - noisy) < 1e-9 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise-robust calibration of subjective ratings"};
  app.require_subcommand(1);

  auto* score = app.add_subcommand("score", "Score a review bundle from a JSON file");
  std::string bundlePath;
  score->add_option("bundle", bundlePath, "Bundle JSON file")->required();

  auto* bound = app.add_subcommand("bound", "Evaluate closed-form error bounds");
  std::string waText = "0.8,0.2", wbText = "0.2,0.8", phiText, biasAText, biasBText, jointText;
  double lambdaA = 0.0, lambdaB = 0.0;
  std::uint64_t na = 5, nb = 5;
  bound->add_option("--wa", waText, "Clean state of paper A (comma separated)");
  bound->add_option("--wb", wbText, "Clean state of paper B (comma separated)");
  bound->add_option("--phi", phiText, "Score map values (default: signal index)");
  bound->add_option("--lambda-a", lambdaA, "Noise level of paper A");
  bound->add_option("--lambda-b", lambdaB, "Noise level of paper B");
  bound->add_option("--bias-a", biasAText, "Bias vector of paper A (default uniform)");
  bound->add_option("--bias-b", biasBText, "Bias vector of paper B (default uniform)");
  bound->add_option("--na", na, "Reviewers of paper A");
  bound->add_option("--nb", nb, "Reviewers of paper B");
  bound->add_option("--joint", jointText, "Clean joint matrix, row-major (enables lemma bound)");

  auto* simulate = app.add_subcommand("simulate", "Run accuracy sweeps and write CSV");
  std::string configPath, outPath = "results.csv";
  bool svg = false;
  std::optional<std::uint64_t> seedOverride, trialsOverride;
  std::size_t threads = 0;
  simulate->add_option("--config", configPath, "Experiment config JSON")->required();
  simulate->add_option("--out", outPath, "Output CSV path");
  simulate->add_flag("--svg", svg, "Also emit one SVG chart per scenario");
  simulate->add_option("--seed", seedOverride, "Override masterSeed");
  simulate->add_option("--trials", trialsOverride, "Override trials per grid point");
  simulate->add_option("--threads", threads, "Worker threads (0 = hardware)");

  app.add_subcommand("demo", "Print the worked three-state example");

  CLI11_PARSE(app, argc, argv);

  try {
    if (score->parsed()) return cmd_score(bundlePath);
    if (bound->parsed())
      return cmd_bound(waText, wbText, phiText, lambdaA, lambdaB, biasAText, biasBText, na, nb,
                       jointText);
    if (simulate->parsed())
      return cmd_simulate(configPath, outPath, svg, seedOverride, trialsOverride, threads);
    return cmd_demo();
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
