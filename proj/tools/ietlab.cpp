// ietlab: batch front-end for the iet library.

#include "json_config.hpp"

#include "iet/cocycle.hpp"
#include "iet/errors.hpp"
#include "iet/gordon.hpp"
#include "iet/io.hpp"
#include "iet/parallel.hpp"
#include "iet/permutation.hpp"
#include "iet/sampling.hpp"
#include "iet/spectrum.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#ifndef IETLAB_VERSION
#define IETLAB_VERSION "0.0.0"
#endif

using iet::Json;

namespace {

constexpr const char* kTool = "ietlab";
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

// Options whose config values are whole JSON documents.
const std::set<std::string> kJsonOptions{"iet", "function"};
// Global options that do not change the output and are left out of the echo.
const std::set<std::string> kNotEchoed{"threads", "out", "config", "help", "version"};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// A command result: either a table (CSV-shaped) or a JSON document.
struct Output {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Json document;
  bool is_table = false;
  /// Pre-rendered text (DOT); bypasses format handling.
  std::optional<std::string> raw;
};

void flatten(const Json& j, const std::string& path, std::vector<std::vector<std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), rows);
  } else {
    rows.push_back({path, j.is_string() ? j.get<std::string>() : j.dump()});
  }
}

struct Settings {
  std::string config;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  std::string format;
};

// ---------------------------------------------------------------------------
// Option parsing helpers

iet::IetSpec read_iet(const std::string& text) {
  if (text.empty()) throw iet::ArgumentError("--iet is required");
  return iet::IetSpec::from_json(iet::json_inline_or_file(text));
}

iet::SamplingFunction read_function(const std::string& text) {
  if (text.empty()) throw iet::ArgumentError("--function is required");
  return iet::function_from_json(iet::json_inline_or_file(text));
}

std::vector<double> read_number_list(const std::string& text, const char* what) {
  std::vector<double> out;
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') {
    const Json j = iet::json_inline_or_file(text);
    for (const auto& x : j) {
      if (!x.is_number()) throw iet::ArgumentError(std::string(what) + " must contain numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      throw iet::ParseError(std::string("bad number in ") + what + ": '" + item + "'", 0);
    }
  }
  return out;
}

std::vector<long> read_long_list(const std::string& text, const char* what) {
  std::vector<long> out;
  for (double x : read_number_list(text, what)) {
    if (x != std::floor(x)) throw iet::ArgumentError(std::string(what) + " must be integers");
    out.push_back(static_cast<long>(x));
  }
  return out;
}

/// "lo:hi:count" (inclusive, evenly spaced), a JSON array, or "a,b,c".
std::vector<double> read_energies(const std::string& text) {
  if (std::count(text.begin(), text.end(), ':') == 2) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    const double lo = std::stod(text.substr(0, a));
    const double hi = std::stod(text.substr(a + 1, b - a - 1));
    const long count = std::stol(text.substr(b + 1));
    if (count < 1 || (count == 1 && lo != hi) || !(hi >= lo)) {
      throw iet::ArgumentError("energy grid lo:hi:count needs lo <= hi and count >= 1");
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
      out[static_cast<std::size_t>(i)] =
          count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return out;
  }
  auto out = read_number_list(text, "energies");
  if (out.empty()) throw iet::ArgumentError("energy grid is empty");
  return out;
}

template <class Real>
Real read_point(const std::string& text) {
  if constexpr (std::is_same_v<Real, double>) {
    return text.find('/') != std::string::npos ? iet::HighPrecision(iet::parse_rational(text)).convert_to<double>()
                                               : std::stod(text);
  } else if constexpr (std::is_same_v<Real, iet::Rational>) {
    return iet::parse_rational(text);
  } else {
    return iet::HighPrecision(iet::parse_rational(text));
  }
}

template <class Real>
std::string point_text(const Real& x) {
  if constexpr (std::is_same_v<Real, double>) {
    return num(x);
  } else if constexpr (std::is_same_v<Real, iet::Rational>) {
    return iet::to_string(x);
  } else {
    return x.str(60);
  }
}

/// Calls fn with the exchange in the arithmetic mode of its spec.
template <class Fn>
auto with_mode(const iet::IetSpec& spec, Fn&& fn) {
  switch (spec.mode) {
    case iet::ArithmeticMode::exact_rational: return fn(spec.to_rational());
    case iet::ArithmeticMode::high_precision: return fn(spec.to_high_precision());
    case iet::ArithmeticMode::float64: break;
  }
  return fn(spec.to_float());
}

// ---------------------------------------------------------------------------
// Commands

struct PermArgs {
  std::string perm;
  std::string function;
  bool dot = false;
};

Output cmd_perm(const PermArgs& a) {
  const auto p = iet::Permutation::parse(a.perm);
  Output out;
  Json j;
  j["permutation"] = p.to_string();
  j["irreducible"] = iet::is_irreducible(p);
  const auto rc = iet::rotation_class(p);
  j["rotation_class"] = rc ? Json(*rc) : Json(nullptr);
  if (!iet::is_irreducible(p)) {
    j["warning"] = "reducible permutation: the discontinuity graph, Type W and the classification are not defined";
    out.document = j;
    return out;
  }
  const auto g = iet::build_graph(p);
  if (a.dot) {
    out.raw = g.to_dot();
    return out;
  }
  j["graph"] = Json::parse(g.to_json());
  const auto w = iet::is_type_w(p);
  j["type_w"] = {{"a", w.a}, {"s", w.s}, {"verdict", w.verdict}};
  iet::FunctionMetadata meta;
  if (!a.function.empty()) meta = read_function(a.function).metadata();
  j["classification"] = Json::parse(iet::classify(p, meta).to_json());
  out.document = j;
  return out;
}

struct OrbitArgs {
  std::string iet;
  std::string w = "0";
  long from = 0;
  long to = 10;
};

Output cmd_orbit(const OrbitArgs& a) {
  if (a.from > a.to) throw iet::ArgumentError("--from must be <= --to");
  const auto spec = read_iet(a.iet);
  Output out;
  out.is_table = true;
  out.columns = {"n", "x"};
  with_mode(spec, [&](const auto& t) {
    using Real = typename std::decay_t<decltype(t)>::value_type;
    const auto orbit = t.orbit(read_point<Real>(a.w), a.from, a.to);
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      out.rows.push_back({std::to_string(a.from + static_cast<long>(i)), point_text(orbit[i])});
    }
    return 0;
  });
  return out;
}

struct KeaneArgs {
  std::string iet;
  long horizon = 100000;
};

Output cmd_keane(const KeaneArgs& a) {
  const auto spec = read_iet(a.iet);
  Output out;
  out.document = with_mode(spec, [&](const auto& t) {
    Json j = iet::to_json(iet::keane_falsify(t, a.horizon));
    j["mode"] = iet::to_string(spec.mode);
    return j;
  });
  return out;
}

struct ScanArgs {
  std::string iet;
  std::string function;
  long n_max = 20;
  double tau = 1e-6;
};

Output cmd_scan(const ScanArgs& a) {
  const auto t = read_iet(a.iet).to_float();
  const auto f = read_function(a.function);
  const auto w = iet::scan_maincond(t, f, a.n_max, a.tau);
  Output out;
  out.document["n_max"] = a.n_max;
  out.document["tau"] = a.tau;
  out.document["witness"] = w ? iet::to_json(*w) : Json(nullptr);
  if (!w) out.document["note"] = "no witness up to n_max; this proves nothing";
  return out;
}

struct PairArgs {
  std::string iet;
  std::string function;
  long n = 0;
  double wd = -1.0;
  long n_max = 20;
  long depth = 50;
  std::string ks = "100,1000,10000";
};

Output cmd_pair_witness(const PairArgs& a) {
  const auto t = read_iet(a.iet).to_float();
  const auto f = read_function(a.function);
  long n = a.n;
  double wd = a.wd;
  if (n < 1 || wd < 0) {
    const auto w = iet::scan_maincond(t, f, a.n_max);
    if (!w) throw iet::NumericError("no discontinuity witness up to n_max; pass --n and --wd");
    n = w->n;
    wd = w->wd;
  }
  Output out;
  out.document = iet::to_json(iet::kotani_pair_witness(t, f, n, wd, a.depth, read_long_list(a.ks, "ks")));
  return out;
}

struct LyapunovArgs {
  std::string iet;
  std::string function;
  std::string energies;
  long n = 100000;
  long m = 8;
};

Output cmd_lyapunov(const LyapunovArgs& a, const Settings& s) {
  const auto t = read_iet(a.iet).to_float();
  const auto f = read_function(a.function);
  const auto grid = iet::lyapunov_grid(t, f, read_energies(a.energies), a.n, a.m, s.seed, s.threads);
  Output out;
  out.is_table = true;
  out.columns = {"E", "mean", "stderr", "n", "m"};
  for (const auto& e : grid) {
    out.rows.push_back({num(e.energy), num(e.mean), num(e.std_error), std::to_string(e.n),
                        std::to_string(e.m_samples)});
  }
  return out;
}

struct SpectrumArgs {
  std::string iet;
  std::string function;
  double w = 0.0;
  long M = 200;
};

Output cmd_spectrum(const SpectrumArgs& a) {
  const auto t = read_iet(a.iet).to_float();
  const auto f = read_function(a.function);
  const auto s = iet::truncated_spectrum(iet::potential(t, f, a.w, 0, a.M), a.M, a.w);
  Output out;
  out.is_table = true;
  out.columns = {"k", "eigenvalue"};
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    out.rows.push_back({std::to_string(k + 1), num(s.eigenvalues[k])});
  }
  return out;
}

struct ACArgs {
  std::string iet;
  std::string function;
  double w = 0.0;
  long M = 1000;
  long points = 200;
  long n = 100000;
  long m = 1;
  double tau = 0.01;
};

Output cmd_ac_report(const ACArgs& a, const Settings& s) {
  const auto t = read_iet(a.iet).to_float();
  const auto f = read_function(a.function);
  const auto spec = iet::truncated_spectrum(iet::potential(t, f, a.w, 0, a.M), a.M, a.w);
  const auto est = iet::lyapunov_grid(t, f, iet::spectrum_grid(spec, a.points), a.n, a.m, s.seed, s.threads);
  const auto report = iet::ac_indicator(est, spec, a.tau);
  Output out;
  out.document = iet::to_json(report);
  out.document["spectrum_min"] = spec.eigenvalues.front();
  out.document["spectrum_max"] = spec.eigenvalues.back();
  Json grid = Json::array();
  for (const auto& e : est) grid.push_back({e.energy, e.mean, e.std_error});
  out.document["grid"] = grid;
  return out;
}

struct GordonArgs {
  std::string iet;
  std::string function;
  std::string w = "0";
  std::string qs;
  std::string Cs = "1";
  long q_max = 100;
  long top = 5;
  std::string liouville;
  int k_max = 2;
};

Output cmd_gordon(const GordonArgs& a) {
  const auto f = read_function(a.function);
  const auto Cs = read_number_list(a.Cs, "C");
  Output out;
  if (!a.liouville.empty()) {
    const auto rot = iet::build_liouville_rotation(iet::GrowthSpec::parse(a.liouville), a.k_max);
    std::vector<long> qs;
    if (!a.qs.empty()) {
      qs = read_long_list(a.qs, "qs");
    } else {
      for (std::size_t k = 1; k <= rot.cf.size(); ++k) {
        if (rot.cf.q(k) > iet::kMaxOrbitCheck) break;
        qs.push_back(rot.cf.q(k).convert_to<long>());
      }
    }
    if (qs.empty()) throw iet::NumericError("no convergent denominator is small enough for an orbit check");
    out.document = iet::to_json(iet::gordon_certificate(rot.iet(), f, read_point<iet::HighPrecision>(a.w), qs, Cs));
    out.document["continued_fraction"] = rot.cf.to_string();
    return out;
  }
  const auto spec = read_iet(a.iet);
  const auto run = [&](const auto& t) {
    using Real = typename std::decay_t<decltype(t)>::value_type;
    const Real w = read_point<Real>(a.w);
    std::vector<long> qs;
    Json times = Json::array();
    if (!a.qs.empty()) {
      qs = read_long_list(a.qs, "qs");
    } else {
      for (const auto& r : iet::find_return_times(t, w, a.q_max, a.top)) {
        qs.push_back(r.q);
        times.push_back(iet::to_json(r));
      }
      std::sort(qs.begin(), qs.end());
    }
    Json j = iet::to_json(iet::gordon_certificate(t, f, w, qs, Cs));
    if (!times.empty()) j["return_times"] = times;
    return j;
  };
  if (spec.mode == iet::ArithmeticMode::float64) {
    out.document = run(spec.to_float());
  } else {
    // Rational exchanges are evaluated at 200 digits.
    out.document = run(spec.to_high_precision());
  }
  return out;
}

struct LiouvilleArgs {
  std::string growth = "exp:3";
  int k_max = 2;
};

Output cmd_liouville_build(const LiouvilleArgs& a) {
  Output out;
  out.document = iet::to_json(iet::build_liouville_rotation(iet::GrowthSpec::parse(a.growth), a.k_max));
  return out;
}

struct AlignArgs {
  std::string iet;
  double w = 0.1;
  double w2 = 0.6;
  long n = 10;
  double eps = 1e-3;
  long search_limit = 1000000;
};

Output cmd_align(const AlignArgs& a) {
  const auto t = read_iet(a.iet).to_float();
  const auto al = iet::find_alignment(t, a.w, a.w2, a.n, a.eps, a.search_limit);
  Output out;
  out.document["alignment"] = al ? iet::to_json(*al) : Json(nullptr);
  if (!al) out.document["note"] = "no alignment up to the search limit";
  return out;
}

// ---------------------------------------------------------------------------
// Config echo and artifact rendering

bool is_flag(const CLI::Option* opt) { return opt->get_expected_min() == 0; }

void echo_options(const CLI::App* app, Json& into) {
  for (const CLI::Option* opt : app->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || kNotEchoed.count(name)) continue;
    std::string value;
    if (is_flag(opt)) {
      value = opt->as<bool>() ? "true" : "false";
    } else if (opt->count() > 0) {
      value = opt->results().back();
    } else {
      value = opt->get_default_str();
      if (value.empty()) continue;
    }
    if (kJsonOptions.count(name) && !value.empty() && (value[0] == '{' || value[0] == '[')) {
      into[name] = Json::parse(value);
    } else {
      into[name] = value;
    }
  }
}

Json config_echo(const CLI::App& app, std::vector<std::string>& command) {
  Json config;
  echo_options(&app, config);
  const CLI::App* cur = &app;
  Json* slot = &config;
  while (true) {
    const auto subs = cur->get_subcommands();
    if (subs.empty()) break;
    cur = subs.front();
    command.push_back(cur->get_name());
    slot = &((*slot)[cur->get_name()] = Json::object());
    echo_options(cur, *slot);
  }
  return config;
}

std::string render(const Output& out, const std::string& format, const Json& header) {
  std::ostringstream s;
  const std::string command = header["command"].get<std::string>();
  if (out.raw) {
    s << "// tool=" << kTool << " version=" << IETLAB_VERSION << " command=" << command
      << " config_hash=" << header["config_hash"].get<std::string>() << "\n";
    s << "// config=" << header["config"].dump() << "\n";
    s << *out.raw;
    return s.str();
  }
  const std::string fmt = format.empty() ? (out.is_table ? "csv" : "json") : format;
  if (fmt == "json") {
    Json j;
    j["header"] = header;
    if (out.is_table) {
      Json rows = Json::array();
      for (const auto& r : out.rows) {
        Json row;
        for (std::size_t i = 0; i < out.columns.size(); ++i) row[out.columns[i]] = r[i];
        rows.push_back(row);
      }
      j["result"] = rows;
    } else {
      j["result"] = out.document;
    }
    s << j.dump(2) << "\n";
    return s.str();
  }
  s << "# tool=" << kTool << " version=" << IETLAB_VERSION << " command=" << command
    << " config_hash=" << header["config_hash"].get<std::string>() << "\n";
  s << "# config=" << header["config"].dump() << "\n";
  std::vector<std::string> columns = out.columns;
  std::vector<std::vector<std::string>> rows = out.rows;
  if (!out.is_table) {
    columns = {"key", "value"};
    rows.clear();
    flatten(out.document, "", rows);
  }
  for (std::size_t i = 0; i < columns.size(); ++i) s << (i ? "," : "") << csv_field(columns[i]);
  s << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s << (i ? "," : "") << csv_field(r[i]);
    s << "\n";
  }
  return s.str();
}

// Rebuilds command-line tokens from an echoed config.
void config_to_args(const Json& config, std::vector<std::string>& args) {
  std::vector<std::pair<std::string, const Json*>> sections;
  for (const auto& [key, value] : config.items()) {
    if (value.is_object() && !kJsonOptions.count(key)) {
      sections.emplace_back(key, &value);
    } else {
      args.push_back("--" + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump()));
    }
  }
  for (const auto& [name, section] : sections) {
    args.push_back(name);
    config_to_args(*section, args);
  }
}

Json embedded_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw iet::ArgumentError("cannot open artifact '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (!text.empty() && text[0] == '{') return Json::parse(text).at("header").at("config");
  for (const std::string marker : {"# config=", "// config="}) {
    const auto at = text.find(marker);
    if (at != std::string::npos) {
      const auto end = text.find('\n', at);
      return Json::parse(text.substr(at + marker.size(), end - at - marker.size()));
    }
  }
  throw iet::ArgumentError("'" + path + "' carries no config echo");
}

int run(std::vector<std::string> args);

int run_app(std::vector<std::string> args) {
  CLI::App app{"Interval exchange transformations, Schrodinger cocycles and Gordon certificates", kTool};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>(kJsonOptions));

  Settings s;
  app.set_config("--config", "", "JSON config file; command-line values take precedence");
  app.add_option("--seed", s.seed, "Seed for sampled base points");
  app.add_option("--threads", s.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", s.out, "Write the artifact here instead of stdout");
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.set_version_flag("--version", IETLAB_VERSION);

  const auto iet_opt = [](CLI::App* sub, std::string& target) {
    sub->add_option("--iet", target, "IET spec: inline JSON or file path");
  };
  const auto fn_opt = [](CLI::App* sub, std::string& target) {
    sub->add_option("--function", target, "Sampling function spec: inline JSON or file path");
  };
  std::function<Output()> action;

  PermArgs perm;
  auto* sp = app.add_subcommand("perm", "Permutation combinatorics: graph, Type W, classification");
  sp->add_option("permutation,--perm", perm.perm, "One-line notation, e.g. \"3 2 1\"")->required();
  fn_opt(sp, perm.function);
  sp->add_flag("--dot", perm.dot, "Print the discontinuity graph as DOT");
  sp->callback([&] { action = [&] { return cmd_perm(perm); }; });

  OrbitArgs orbit;
  auto* si = app.add_subcommand("iet", "IET dynamics");
  si->require_subcommand(1);
  auto* so = si->add_subcommand("orbit", "Orbit T^n(w) for from <= n <= to");
  iet_opt(so, orbit.iet);
  so->add_option("--w", orbit.w, "Base point (decimal or p/q)");
  so->add_option("--from", orbit.from);
  so->add_option("--to", orbit.to);
  so->callback([&] { action = [&] { return cmd_orbit(orbit); }; });

  KeaneArgs keane;
  auto* sk = app.add_subcommand("keane", "Search endpoint orbits for Keane violations");
  iet_opt(sk, keane.iet);
  sk->add_option("--horizon", keane.horizon);
  sk->callback([&] { action = [&] { return cmd_keane(keane); }; });

  ScanArgs scan;
  auto* ss = app.add_subcommand("scan", "Discontinuity scan for a witness (n, wd, gap)");
  iet_opt(ss, scan.iet);
  fn_opt(ss, scan.function);
  ss->add_option("--n-max", scan.n_max);
  ss->add_option("--tau", scan.tau);
  ss->callback([&] { action = [&] { return cmd_scan(scan); }; });

  PairArgs pair;
  auto* spw = app.add_subcommand("pair-witness", "Forward gaps and backward differences at a witness");
  iet_opt(spw, pair.iet);
  fn_opt(spw, pair.function);
  spw->add_option("--n", pair.n, "Witness power; scanned for when unset");
  spw->add_option("--wd", pair.wd, "Witness discontinuity; scanned for when unset");
  spw->add_option("--n-max", pair.n_max);
  spw->add_option("--depth", pair.depth);
  spw->add_option("--ks", pair.ks, "Comma list or JSON array");
  spw->callback([&] { action = [&] { return cmd_pair_witness(pair); }; });

  LyapunovArgs lyap;
  auto* sl = app.add_subcommand("lyapunov", "Lyapunov exponents on an energy grid (CSV)");
  iet_opt(sl, lyap.iet);
  fn_opt(sl, lyap.function);
  sl->add_option("--energies", lyap.energies, "lo:hi:count, comma list or JSON array")->required();
  sl->add_option("--n", lyap.n, "Orbit length");
  sl->add_option("--m", lyap.m, "Number of base points");
  sl->callback([&] { action = [&] { return cmd_lyapunov(lyap, s); }; });

  SpectrumArgs spectrum;
  auto* sspec = app.add_subcommand("spectrum", "Eigenvalues of the M-site truncation (CSV)");
  iet_opt(sspec, spectrum.iet);
  fn_opt(sspec, spectrum.function);
  sspec->add_option("--w", spectrum.w);
  sspec->add_option("--M", spectrum.M);
  sspec->callback([&] { action = [&] { return cmd_spectrum(spectrum); }; });

  ACArgs ac;
  auto* sac = app.add_subcommand("ac-report", "Lyapunov-based indicator near the truncated spectrum");
  iet_opt(sac, ac.iet);
  fn_opt(sac, ac.function);
  sac->add_option("--w", ac.w);
  sac->add_option("--M", ac.M);
  sac->add_option("--points", ac.points);
  sac->add_option("--n", ac.n);
  sac->add_option("--m", ac.m);
  sac->add_option("--tau", ac.tau);
  sac->callback([&] { action = [&] { return cmd_ac_report(ac, s); }; });

  GordonArgs gordon;
  auto* sg = app.add_subcommand("gordon", "Gordon certificate at return times");
  iet_opt(sg, gordon.iet);
  fn_opt(sg, gordon.function);
  sg->add_option("--w", gordon.w);
  sg->add_option("--qs", gordon.qs, "Return times; found with --q-max/--top when unset");
  sg->add_option("--C", gordon.Cs, "Exponents C, comma list or JSON array");
  sg->add_option("--q-max", gordon.q_max);
  sg->add_option("--top", gordon.top);
  sg->add_option("--liouville", gordon.liouville, "Use the Liouville rotation for this growth instead of --iet");
  sg->add_option("--k-max", gordon.k_max);
  sg->callback([&] { action = [&] { return cmd_gordon(gordon); }; });

  LiouvilleArgs liou;
  auto* slb = app.add_subcommand("liouville-build", "Continued fraction of a Liouville rotation");
  slb->add_option("--growth", liou.growth, "exp:RATE or power:RATE");
  slb->add_option("--k-max", liou.k_max);
  slb->callback([&] { action = [&] { return cmd_liouville_build(liou); }; });

  AlignArgs align;
  auto* sa = app.add_subcommand("align", "Find l with |T^m w - T^(m+l) w2| < eps for |m| <= n");
  iet_opt(sa, align.iet);
  sa->add_option("--w", align.w);
  sa->add_option("--w2", align.w2);
  sa->add_option("--n", align.n);
  sa->add_option("--eps", align.eps);
  sa->add_option("--search-limit", align.search_limit);
  sa->callback([&] { action = [&] { return cmd_align(align); }; });

  std::string artifact;
  auto* sr = app.add_subcommand("replay", "Re-run the command recorded in an artifact");
  sr->add_option("artifact", artifact)->required();
  bool replay = false;
  sr->callback([&] { replay = true; });

  for (auto* sub : {sp, si, so, sk, ss, spw, sl, sspec, sac, sg, slb, sa}) sub->configurable();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (replay) {
    std::vector<std::string> again;
    config_to_args(embedded_config(artifact), again);
    if (!s.out.empty()) again.insert(again.begin(), "--out=" + s.out);
    again.insert(again.begin(), "--threads=" + std::to_string(s.threads));
    return run(again);
  }

  const Output out = action();
  std::vector<std::string> command;
  Json header;
  header["tool"] = kTool;
  header["version"] = IETLAB_VERSION;
  const Json config = config_echo(app, command);
  std::string joined;
  for (const auto& c : command) joined += (joined.empty() ? "" : " ") + c;
  header["command"] = joined;
  header["config_hash"] = hex(fnv1a(config.dump()));
  header["config"] = config;
  const std::string text = render(out, s.format, header);
  if (s.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(s.out, std::ios::binary);
    if (!f) throw iet::ArgumentError("cannot write '" + s.out + "'");
    f << text;
  }
  return 0;
}

int run(std::vector<std::string> args) {
  try {
    return run_app(std::move(args));
  } catch (const iet::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const iet::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const iet::ReducibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  return run(std::vector<std::string>(argv + 1, argv + argc));
}
