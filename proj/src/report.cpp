#include "entropic/report.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "entropic/entropy.hpp"
#include "entropic/parallel.hpp"

namespace entropic {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

long long parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("setting '" + key + "' expects an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw ConfigError("setting '" + key + "' expects true or false, got '" + value + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json rational_json(const Rational& r) { return to_string(r); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

}  // namespace

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "model") {
    config.model = value;
  } else if (key == "program") {
    config.program_path = value;
  } else if (key == "oracle") {
    config.oracle = value;
  } else if (key == "n") {
    config.n = static_cast<int>(parse_integer(key, value));
  } else if (key == "alphabet") {
    config.alpha = static_cast<int>(parse_integer(key, value));
  } else if (key == "filter") {
    if (value == "weeded") {
      config.filter = EventFilter::Weeded;
    } else if (value == "essential") {
      config.filter = EventFilter::Essential;
    } else {
      throw ConfigError("filter must be weeded or essential, got '" + value + "'");
    }
  } else if (key == "profile") {
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item == "trace") {
        config.trace_profile = true;
      } else if (item == "volume") {
        config.volume_profile = true;
      } else if (!item.empty()) {
        throw ConfigError("profile must be trace or volume, got '" + item + "'");
      }
    }
  } else if (key == "input") {
    config.input = value;
  } else if (key == "output") {
    config.json_path = value;
  } else if (key == "csv") {
    config.csv_path = value;
  } else if (key == "volume-csv") {
    config.volume_csv_path = value;
  } else if (key == "cap") {
    const long long cap = parse_integer(key, value);
    if (cap <= 0) throw ConfigError("cap must be positive");
    config.cap = static_cast<std::size_t>(cap);
  } else if (key == "threads") {
    config.threads = static_cast<int>(parse_integer(key, value));
  } else if (key == "samples") {
    const long long s = parse_integer(key, value);
    if (s < 0) throw ConfigError("samples must be non-negative");
    config.samples = static_cast<std::size_t>(s);
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_integer(key, value));
  } else if (key == "trace") {
    config.trace_profile = parse_bool(key, value);
  } else if (key == "volume") {
    config.volume_profile = parse_bool(key, value);
  } else {
    throw ConfigError("unknown setting '" + key + "'");
  }
}

void apply_config_file(RunConfig& config, const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(number) + ": expected key=value");
    }
    apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_environment(RunConfig& config) {
  if (const char* cap = std::getenv("ENTROPIC_CAP"); cap != nullptr && *cap != '\0') {
    apply_setting(config, "cap", cap);
  }
}

void validate_config(const RunConfig& config) {
  if (config.program_path.empty()) {
    if (!parse_model(config.model)) {
      throw ConfigError("unknown model '" + config.model + "' (xor, maxps-a0, maxps-a1)");
    }
  } else if (config.oracle.empty() || !parse_oracle(config.oracle)) {
    throw ConfigError("a program file needs --oracle parity or --oracle maxps");
  }
  if (config.n < 1) throw ConfigError("n must be positive");
  if (config.alpha < 2) throw ConfigError("alphabet size must be at least 2");
  if (config.threads < 0) throw ConfigError("threads must be non-negative");
  if (config.trace_profile && config.input.empty()) {
    throw ConfigError("the trace profile needs --input");
  }
  if (!config.input.empty() && static_cast<int>(config.input.size()) != config.n) {
    throw ConfigError("input '" + config.input + "' does not have length n = " +
                      std::to_string(config.n));
  }
  if (!config.csv_path.empty() && !config.trace_profile) {
    throw ConfigError("--csv needs the trace profile");
  }
  if (!config.volume_csv_path.empty() && !config.volume_profile) {
    throw ConfigError("--volume-csv needs the volume profile");
  }
}

ResolvedModel resolve_model(const RunConfig& config) {
  if (config.program_path.empty()) {
    const ModelId id = *parse_model(config.model);
    return {builtin_program(id), oracle_of(id), std::string(model_name(id))};
  }
  return {parse_program(read_file(config.program_path)), *parse_oracle(config.oracle),
          config.program_path};
}

Json config_json(const RunConfig& config) {
  Json j;
  if (config.program_path.empty()) {
    j["model"] = config.model;
  } else {
    j["program"] = config.program_path;
    j["oracle"] = config.oracle;
  }
  j["n"] = config.n;
  j["alphabet"] = config.alpha;
  j["filter"] = config.filter == EventFilter::Essential ? "essential" : "weeded";
  Json profiles = Json::array();
  if (config.trace_profile) profiles.push_back("trace");
  if (config.volume_profile) profiles.push_back("volume");
  j["profile"] = profiles;
  if (!config.input.empty()) j["input"] = config.input;
  j["cap"] = config.cap;
  j["samples"] = config.samples;
  j["seed"] = config.seed;
  return j;
}

Json check_json(const BoundCheck& c) {
  Json j;
  j["name"] = c.name;
  if (c.skipped) {
    j["skipped"] = true;
    j["reason"] = c.reason;
    return j;
  }
  j["holds"] = c.holds;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["slack"] = c.slack;
  if (!c.exact_lhs.empty()) j["exact_lhs"] = c.exact_lhs;
  if (!c.exact_rhs.empty()) j["exact_rhs"] = c.exact_rhs;
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

Json bound_chain_json(const BoundChainReport& r) {
  Json j;
  j["n"] = r.n;
  j["alphabet"] = r.alpha;
  j["pr_g"] = r.pr_g;
  j["weight_g"] = r.weight_g;
  if (r.n >= 12) {
    j["explicit_g_floor"] = r.explicit_g_floor;
    j["implied_c"] = r.implied_c;
  }
  j["pr_h"] = r.pr_h;
  j["weight_h"] = r.weight_h;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  Json links = Json::array();
  for (const auto& l : r.links) {
    if (l.skipped) {
      ++skipped;
    } else if (!l.holds) {
      ++failed;
    }
    links.push_back(check_json(l));
  }
  j["links_total"] = r.links.size();
  j["links_failed"] = failed;
  j["links_skipped"] = skipped;
  j["all_hold"] = r.all_hold();
  j["failures_localised"] = r.failures_localised();
  j["links"] = links;
  j["notes"] = r.notes;
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json strip_timestamp(Json report) {
  report.erase("timestamp");
  return report;
}

AnalyzeResult analyze(const RunConfig& config) {
  validate_config(config);
  if (config.threads > 0) set_thread_count(config.threads);
  const ResolvedModel model = resolve_model(config);
  const Domain dom = build_domain(model.oracle, config.n, config.alpha, config.cap);

  IndexOptions options;
  options.filter = config.filter;
  const EventIndex index = build_event_index(model.program, dom, options);
  const std::vector<double> weights = class_weights(dom, index);

  AnalyzeResult result;
  Json& rep = result.report;
  rep["config"] = config_json(config);

  Json d;
  d["oracle"] = std::string(oracle_name(dom.oracle()));
  d["n"] = dom.n();
  d["alphabet"] = dom.alpha();
  d["inputs"] = dom.size();
  d["range_size"] = dom.range_size();
  d["range"] = dom.range();
  Json sizes = Json::array();
  for (std::size_t k = 0; k < dom.range_size(); ++k) sizes.push_back(dom.preimage_size(k));
  d["preimage_sizes"] = sizes;
  rep["domain"] = d;

  Json ix;
  ix["filter"] = config.filter == EventFilter::Essential ? "essential" : "weeded";
  ix["init_time"] = index.init_time();
  ix["total_events"] = index.total_events();
  ix["class_count"] = index.classes().size();
  rep["index"] = ix;

  Json classes = Json::array();
  for (std::size_t c = 0; c < index.classes().size(); ++c) {
    const EventClass& cls = index.classes()[c];
    Json j;
    j["key"] = cls.key;
    j["size"] = cls.occurrences.count();
    j["probability"] = rational_json(measure(dom, cls.occurrences));
    j["weight"] = weights[c];
    j["first_time"] = cls.first_time;
    j["last_time"] = cls.last_time;
    j["occurrences"] = cls.count;
    classes.push_back(j);
  }
  rep["classes"] = classes;

  std::vector<BoundCheck> checks;
  Json notes = Json::array();

  // Output classes must reproduce the preimage partition.
  {
    InputSet covered = dom.empty_set();
    bool exact = true;
    std::string witness;
    for (const auto& cls : index.classes()) {
      const TraceLiteral& lit = index.pool().literal(cls.literal);
      if (lit.kind != TraceLiteral::Kind::Output) continue;
      const auto k = dom.class_of_value(lit.value.v);
      if (!k || !(cls.occurrences == dom.preimage(*k))) {
        exact = false;
        if (witness.empty()) witness = "class " + cls.key + " differs from the oracle preimage";
      }
      covered |= cls.occurrences;
    }
    if (!(covered == dom.full_set())) {
      exact = false;
      if (witness.empty()) witness = "some inputs have no output event";
    }
    BoundCheck c = make_check("output_classes_match_preimages", 0, 0);
    c.holds = exact;
    c.reason = witness;
    checks.push_back(c);
  }

  if (config.trace_profile) {
    const std::size_t x = dom.index_of(config.input);
    const ConvergenceProfile profile = trace_profile(model.program, dom, index, x, weights);
    Json points = Json::array();
    std::ostringstream csv;
    csv << "t,literal_key,D\n";
    for (const auto& p : profile.points) {
      points.push_back(Json{{"t", p.t}, {"literal_key", p.key}, {"D", p.weight}});
      csv << p.t << ',' << csv_field(p.key) << ',' << format_double(p.weight) << '\n';
    }
    rep["profiles"]["trace"] = Json{{"input", profile.input}, {"points", points}};
    result.trace_csv = csv.str();
  }

  if (config.volume_profile) {
    const WeightedVolumeProfile profile = weighted_volume_profile(dom, index, weights);
    Json points = Json::array();
    std::ostringstream csv;
    csv << "t,literal_key,D\n";
    bool nonincreasing = true;
    std::string witness;
    for (std::size_t i = 0; i < profile.points.size(); ++i) {
      const auto& p = profile.points[i];
      points.push_back(Json{{"t", p.t}, {"D", p.volume}, {"classes", p.classes}});
      csv << p.t << ",DGamma," << format_double(p.volume) << '\n';
      if (i > 0 && p.volume > profile.points[i - 1].volume + kTolerance) {
        nonincreasing = false;
        if (witness.empty()) witness = "volume grows at t = " + std::to_string(p.t);
      }
    }
    rep["profiles"]["volume"] = Json{{"init_time", profile.init_time},
                                     {"init_weight", profile.init_weight},
                                     {"points", points}};
    result.volume_csv = csv.str();
    BoundCheck c = make_check("volume_nonincreasing", 0, 0);
    c.holds = nonincreasing;
    c.reason = witness;
    checks.push_back(c);

    if (dom.oracle() == OracleKind::Parity) {
      std::ostringstream note;
      note << "volume at t = 2+3k against n-k+1 and n-(t+1)/3 = n-k-1:";
      for (int k = 0; k <= dom.n(); ++k) {
        const std::size_t t = 2 + 3 * static_cast<std::size_t>(k);
        note << " k=" << k << ":" << format_double(profile.at(t)) << "/" << (dom.n() - k + 1)
             << "/" << (dom.n() - k - 1);
      }
      notes.push_back(note.str());
    }
  }

  if (config.samples > 0) {
    for (auto& c : property_checks(dom, config.samples, config.seed)) checks.push_back(c);
  }

  Json cj = Json::array();
  for (const auto& c : checks) {
    cj.push_back(check_json(c));
    if (!c.skipped && !c.holds) result.ok = false;
  }
  rep["checks"] = cj;
  rep["notes"] = notes;
  rep["ok"] = result.ok;
  rep["timestamp"] = utc_timestamp();
  return result;
}

}  // namespace entropic
