#include "capifqos/harness/cli.hpp"

#include "capifqos/error.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace capifqos::harness {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

struct Setting {
  std::string value;
  Errc source;  // BadFlag or BadConfig
};

class Applier {
 public:
  explicit Applier(RunOptions& opts) : o_(opts) {}

  void apply(const std::string& key, const Setting& s) {
    const auto it = table().find(key);
    if (it == table().end()) throw Error(s.source, "unknown key '" + key + "'");
    current_ = &s;
    currentKey_ = key;
    it->second(*this, s.value);
  }

 private:
  using Handler = std::function<void(Applier&, const std::string&)>;

  [[noreturn]] void bad(const std::string& why) const {
    throw Error(current_->source, currentKey_ + ": " + why);
  }

  double number(const std::string& v) const {
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) bad("not a number: " + v);
    return d;
  }

  long long integer(const std::string& v) const {
    errno = 0;
    char* end = nullptr;
    const long long n = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) bad("not an integer: " + v);
    return n;
  }

  double positive(const std::string& v) const {
    const double d = number(v);
    if (!(d > 0.0)) bad("must be > 0");
    return d;
  }

  double unit_interval(const std::string& v) const {
    const double d = number(v);
    if (!(d > 0.0 && d <= 1.0)) bad("must be in (0, 1]");
    return d;
  }

  bool boolean(const std::string& v) const {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    bad("not a boolean: " + v);
  }

  static const std::map<std::string, Handler>& table() {
    static const std::map<std::string, Handler> t = {
        {"scenario",
         [](Applier& a, const std::string& v) {
           const auto n = a.integer(v);
           if (n < 1 || n > 3) a.bad("must be 1, 2 or 3");
           a.o_.spec.scenario = static_cast<ScenarioKind>(n);
         }},
        {"position",
         [](Applier& a, const std::string& v) {
           if (v == "centre" || v == "center") {
             a.o_.spec.videoEfficiency = kCentreEfficiency;
           } else if (v == "edge") {
             a.o_.spec.videoEfficiency = kEdgeEfficiency;
           } else {
             a.bad("must be centre or edge");
           }
         }},
        {"capacity", [](Applier& a, const std::string& v) { a.o_.spec.cellCapacity = a.positive(v); }},
        {"ticks",
         [](Applier& a, const std::string& v) {
           const auto n = a.integer(v);
           if (n <= 0 || n > 10'000'000) a.bad("must be in [1, 10000000]");
           a.o_.spec.ticks = static_cast<int>(n);
         }},
        {"threshold",
         [](Applier& a, const std::string& v) { a.o_.spec.adaptation.lowerThreshold = a.positive(v); }},
        {"out", [](Applier& a, const std::string& v) { a.o_.out = v; }},
        {"seed",
         [](Applier& a, const std::string& v) {
           const auto n = a.integer(v);
           if (n < 0) a.bad("must be >= 0");
           a.o_.spec.seed = static_cast<std::uint64_t>(n);
         }},
        {"live", [](Applier& a, const std::string& v) { a.o_.live = a.boolean(v); }},
        {"ccf", [](Applier& a, const std::string& v) { a.o_.ccfUrl = v; }},
        {"nef", [](Applier& a, const std::string& v) { a.o_.nefUrl = v; }},
        {"tick_ms",
         [](Applier& a, const std::string& v) {
           const auto n = a.integer(v);
           if (n < 0 || n > 60'000) a.bad("must be in [0, 60000]");
           a.o_.tickMs = static_cast<int>(n);
         }},
        {"gbr_fraction",
         [](Applier& a, const std::string& v) { a.o_.spec.gbrCapacityFraction = a.unit_interval(v); }},
        {"video_demand",
         [](Applier& a, const std::string& v) { a.o_.spec.videoDemand = a.positive(v); }},
        {"ramp_interval",
         [](Applier& a, const std::string& v) {
           const auto n = a.integer(v);
           if (n <= 0) a.bad("must be > 0");
           a.o_.spec.ramp.interval = static_cast<int>(n);
         }},
        {"ramp_max_flows",
         [](Applier& a, const std::string& v) {
           const auto n = a.integer(v);
           if (n < 0 || n > 1000) a.bad("must be in [0, 1000]");
           a.o_.spec.ramp.maxFlows = static_cast<int>(n);
         }},
        {"bg_demand",
         [](Applier& a, const std::string& v) { a.o_.spec.ramp.perFlowDemand = a.positive(v); }},
        {"debounce",
         [](Applier& a, const std::string& v) {
           const auto n = a.integer(v);
           if (n < 1 || n > 1000) a.bad("must be in [1, 1000]");
           a.o_.spec.adaptation.debounceSamples = static_cast<int>(n);
         }},
        {"monitor_threshold",
         [](Applier& a, const std::string& v) {
           a.o_.spec.adaptation.monitorCellLoadThreshold = a.unit_interval(v);
         }},
        {"edge_routing",
         [](Applier& a, const std::string& v) {
           a.o_.spec.adaptation.requestEdgeRouting = a.boolean(v);
         }},
    };
    return t;
  }

  RunOptions& o_;
  const Setting* current_ = nullptr;
  std::string currentKey_;
};

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::BadConfig, "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::BadConfig, "line " + std::to_string(lineNo) + ": expected key=value");
    }
    auto key = normalize_key(trim(std::string_view(t).substr(0, eq)));
    if (key.empty()) throw Error(Errc::BadConfig, "line " + std::to_string(lineNo) + ": empty key");
    if (key == "config") {
      throw Error(Errc::BadConfig, "line " + std::to_string(lineNo) + ": nested config");
    }
    out[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

std::string run_usage() {
  return "usage: capifqos run [--scenario 1|2|3] [--position centre|edge] [--capacity Mbps]\n"
         "                    [--ticks n] [--threshold Mbps] [--out path] [--config file]\n"
         "                    [--live --ccf url --nef url [--tick-ms ms]] [--seed n]\n"
         "                    [--gbr-fraction f] [--video-demand Mbps] [--ramp-interval n]\n"
         "                    [--ramp-max-flows n] [--bg-demand Mbps] [--debounce n]\n"
         "                    [--monitor-threshold f] [--edge-routing true|false]\n";
}

RunOptions build_scenario_spec(const std::vector<std::string>& args) {
  static const char* kValueFlags[] = {
      "scenario", "position",     "capacity",  "ticks",      "threshold",      "out",
      "seed",     "ccf",          "nef",       "tick-ms",    "gbr-fraction",   "video-demand",
      "ramp-interval", "ramp-max-flows", "bg-demand", "debounce", "monitor-threshold",
      "edge-routing"};

  CLI::App app{"capifqos run"};
  app.set_help_flag();
  app.allow_extras(false);
  std::map<std::string, std::string> flagValues;
  std::vector<std::pair<std::string, CLI::Option*>> options;
  for (const char* name : kValueFlags) {
    options.emplace_back(name, app.add_option(std::string("--") + name, flagValues[name]));
  }
  std::string configPath;
  auto* configOpt = app.add_option("--config", configPath);
  auto* liveOpt = app.add_flag("--live");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw Error(Errc::BadFlag, e.what());
  }

  std::map<std::string, Setting> merged;
  if (configOpt->count() > 0) {
    for (auto& [k, v] : read_config_file(configPath)) merged[k] = {v, Errc::BadConfig};
  }
  for (const auto& [name, opt] : options) {
    if (opt->count() > 0) merged[normalize_key(name)] = {flagValues[name], Errc::BadFlag};
  }
  if (liveOpt->count() > 0) merged["live"] = {"true", Errc::BadFlag};

  RunOptions opts;
  Applier applier(opts);
  for (const auto& [key, setting] : merged) applier.apply(key, setting);

  opts.spec.backgroundSchedule = ramp_schedule(opts.spec.ramp, opts.spec.ticks);
  opts.spec.adaptation.targetRate = opts.spec.videoDemand;

  if (opts.live && (opts.ccfUrl.empty() || opts.nefUrl.empty())) {
    throw Error(Errc::BadFlag, "--live requires --ccf and --nef");
  }
  validate(opts.spec);
  return opts;
}

}  // namespace capifqos::harness
