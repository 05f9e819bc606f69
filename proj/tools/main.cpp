// entropic: command-line front end.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "entropic/annexe.hpp"
#include "entropic/parallel.hpp"
#include "entropic/report.hpp"
#include "entropic/words.hpp"

using namespace entropic;

namespace {

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << text;
  return static_cast<bool>(out);
}

int emit(const Json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  return write_file(path, text) ? kExitOk : kExitIo;
}

struct AnalyzeFlags {
  std::string config_file;
  std::optional<std::string> model, program, oracle, filter, profile, input, output, csv,
      volume_csv;
  std::optional<int> n, alpha, threads;
  std::optional<std::size_t> cap, samples;
  std::optional<std::uint64_t> seed;
};

int run_analyze(const AnalyzeFlags& f) {
  RunConfig config;
  if (!f.config_file.empty()) apply_config_file(config, f.config_file);
  const auto set = [&](const char* key, const auto& opt) {
    if (!opt) return;
    if constexpr (std::is_same_v<std::decay_t<decltype(*opt)>, std::string>) {
      apply_setting(config, key, *opt);
    } else {
      apply_setting(config, key, std::to_string(*opt));
    }
  };
  set("model", f.model);
  set("program", f.program);
  set("oracle", f.oracle);
  set("n", f.n);
  set("alphabet", f.alpha);
  set("filter", f.filter);
  set("profile", f.profile);
  set("input", f.input);
  set("output", f.output);
  set("csv", f.csv);
  set("volume-csv", f.volume_csv);
  set("threads", f.threads);
  set("samples", f.samples);
  set("seed", f.seed);
  set("cap", f.cap);
  apply_environment(config);

  const AnalyzeResult result = analyze(config);
  if (const int rc = emit(result.report, config.json_path); rc != kExitOk) return rc;
  if (!config.csv_path.empty() && !write_file(config.csv_path, result.trace_csv)) return kExitIo;
  if (!config.volume_csv_path.empty() && !write_file(config.volume_csv_path, result.volume_csv)) {
    return kExitIo;
  }
  return result.ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic weights of algorithm events over enumerated input domains"};
  app.require_subcommand(1);

  AnalyzeFlags af;
  auto* analyze_cmd = app.add_subcommand("analyze", "Build the event index and report weights");
  analyze_cmd->add_option("--config", af.config_file, "key=value file mirroring the flags");
  analyze_cmd->add_option("--model", af.model, "xor, maxps-a0 or maxps-a1");
  analyze_cmd->add_option("--program", af.program, "Program file instead of a builtin model");
  analyze_cmd->add_option("--oracle", af.oracle, "parity or maxps, required with --program");
  analyze_cmd->add_option("--n", af.n, "Input length");
  analyze_cmd->add_option("--alphabet", af.alpha, "Alphabet size");
  analyze_cmd->add_option("--filter", af.filter, "weeded or essential");
  analyze_cmd->add_option("--profile", af.profile, "trace, volume or trace,volume");
  analyze_cmd->add_option("--input", af.input, "Input word for the trace profile");
  analyze_cmd->add_option("--output", af.output, "JSON report path (default stdout)");
  analyze_cmd->add_option("--csv", af.csv, "Trace profile CSV path");
  analyze_cmd->add_option("--volume-csv", af.volume_csv, "Volume profile CSV path");
  analyze_cmd->add_option("--cap", af.cap, "Enumeration cap");
  analyze_cmd->add_option("--threads", af.threads, "Worker threads (0: all)");
  analyze_cmd->add_option("--samples", af.samples, "Random samples per property check");
  analyze_cmd->add_option("--seed", af.seed, "Sampler seed");

  int w_alpha = 2;
  std::optional<int> w_gamma, w_big_gamma, w_primitive, w_preimages;
  std::optional<long long> w_mobius;
  bool w_first_eq_third = false;
  bool w_json = false;
  auto* words_cmd = app.add_subcommand("words", "Primitive-word counts");
  words_cmd->add_option("--alphabet", w_alpha, "Alphabet size")->capture_default_str();
  words_cmd->add_option("--gamma", w_gamma, "Primitive words of length s");
  words_cmd->add_option("--big-gamma", w_big_gamma, "Primitive words of length s with w(1)=w(3)");
  words_cmd->add_option("--mobius", w_mobius, "Mobius function");
  words_cmd->add_option("--primitive", w_primitive, "Brute-force primitive count");
  words_cmd->add_flag("--first-eq-third", w_first_eq_third, "Constrain --primitive by w(1)=w(3)");
  words_cmd->add_option("--preimages", w_preimages, "maxPS preimage sizes for length n");
  words_cmd->add_flag("--json", w_json, "JSON output");

  int b_n = 12;
  int b_alpha = 2;
  std::string b_output;
  std::optional<std::size_t> b_cap;
  int b_threads = 0;
  auto* bounds_cmd = app.add_subcommand("bounds", "Validate the bound chains for maxPS");
  bounds_cmd->add_option("--n", b_n, "Even input length")->capture_default_str();
  bounds_cmd->add_option("--alphabet", b_alpha, "Alphabet size")->capture_default_str();
  bounds_cmd->add_option("--output", b_output, "JSON path (default stdout)");
  bounds_cmd->add_option("--cap", b_cap, "Enumeration cap");
  bounds_cmd->add_option("--threads", b_threads, "Worker threads (0: all)");

  std::string o_model;
  std::string o_input;
  auto* oracle_cmd = app.add_subcommand("oracle", "Evaluate an oracle on one word");
  oracle_cmd->add_option("--model", o_model, "parity, xor, maxps or a model name")->required();
  oracle_cmd->add_option("--input", o_input, "Word")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*analyze_cmd) return run_analyze(af);

    if (*words_cmd) {
      Json j;
      std::vector<std::string> lines;
      if (w_gamma) {
        j["gamma"] = gamma_mobius(*w_gamma, w_alpha);
        lines.push_back(std::to_string(gamma_mobius(*w_gamma, w_alpha)));
      }
      if (w_big_gamma) {
        j["big_gamma"] = big_gamma_recursive(*w_big_gamma, w_alpha);
        lines.push_back(std::to_string(big_gamma_recursive(*w_big_gamma, w_alpha)));
      }
      if (w_mobius) {
        j["mobius"] = mobius(*w_mobius);
        lines.push_back(std::to_string(mobius(*w_mobius)));
      }
      if (w_primitive) {
        const auto c = brute_primitive(*w_primitive, w_alpha,
                                       w_first_eq_third ? WordConstraint::FirstEqualsThird
                                                        : WordConstraint::None);
        j["primitive"] = c;
        lines.push_back(std::to_string(c));
      }
      if (w_preimages) {
        const auto counts = preimage_counts(*w_preimages, w_alpha);
        j["preimages"] = counts;
        std::string line;
        for (std::size_t k = 0; k < counts.size(); ++k) {
          line += (k ? " " : "") + std::to_string(counts[k]);
        }
        lines.push_back(line);
      }
      if (lines.empty()) {
        std::cerr << "error: words needs at least one query\n";
        return kExitConfig;
      }
      if (w_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& l : lines) std::cout << l << "\n";
      }
      return kExitOk;
    }

    if (*bounds_cmd) {
      if (b_threads > 0) set_thread_count(b_threads);
      RunConfig env;
      if (b_cap) env.cap = *b_cap;
      apply_environment(env);
      const BoundChainReport r = validate_annexe(b_n, b_alpha, env.cap);
      Json j = bound_chain_json(r);
      j["timestamp"] = utc_timestamp();
      if (const int rc = emit(j, b_output); rc != kExitOk) return rc;
      return r.all_hold() ? kExitOk : kExitCheckFailed;
    }

    if (*oracle_cmd) {
      std::optional<OracleKind> kind = parse_oracle(o_model);
      if (!kind) {
        if (const auto id = parse_model(o_model)) kind = oracle_of(*id);
      }
      if (!kind) {
        std::cerr << "error: unknown oracle '" << o_model << "'\n";
        return kExitConfig;
      }
      const auto word = parse_word(o_input);
      std::cout << oracle_value(*kind, word) << "\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "enumeration error: " << e.what() << "\n";
    return kExitEnumeration;
  } catch (const ParseError& e) {
    std::cerr << "program error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RunError& e) {
    std::cerr << "run error: " << e.what() << "\n";
    return kExitRun;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRun;
  }
  return kExitOk;
}
