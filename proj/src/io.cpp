#include "iet/io.hpp"

#include <fstream>
#include <sstream>

namespace iet {

namespace {

bool is_fraction(const std::string& text) { return text.find('/') != std::string::npos; }

double length_as_double(const std::string& text) {
  if (is_fraction(text)) {
    const Rational q = parse_rational(text);
    return HighPrecision(q).convert_to<double>();
  }
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("length '" + text + "' is not a number", 0);
  }
  if (used != text.size()) throw ParseError("trailing characters in length '" + text + "'", used);
  return x;
}

HighPrecision length_as_high_precision(const std::string& text) {
  return HighPrecision(parse_rational(text));
}

std::string preset_digits(const HighPrecision& x) { return decimal_string(x, kHighPrecisionDigits + 10); }

IetSpec preset(const std::string& name) {
  IetSpec s;
  if (name == "golden_rotation") {
    const HighPrecision g = (sqrt(HighPrecision(5)) - 1) / 2;
    s.perm = Permutation({2, 1});
    s.lengths = {preset_digits(1 - g), preset_digits(g)};
  } else if (name == "perturbed_reversal") {
    const HighPrecision a = HighPrecision("0.2") + HighPrecision("1e-3") * sqrt(HighPrecision(2));
    const HighPrecision b = HighPrecision("0.3") + HighPrecision("1e-3") * sqrt(HighPrecision(3));
    s.perm = Permutation::reversal(3);
    s.lengths = {preset_digits(a), preset_digits(b), preset_digits(1 - a - b)};
  } else {
    throw ArgumentError("unknown IET preset '" + name + "'");
  }
  return s;
}

std::vector<double> number_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ArgumentError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw ArgumentError(std::string(what) + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

double number(const Json& params, const char* key, std::optional<double> fallback = std::nullopt) {
  if (!params.contains(key)) {
    if (fallback) return *fallback;
    throw ArgumentError(std::string("function params need '") + key + "'");
  }
  if (!params[key].is_number()) throw ArgumentError(std::string("'") + key + "' must be a number");
  return params[key].get<double>();
}

Json nullable(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

IetSpec IetSpec::from_json(const Json& j) {
  if (!j.is_object()) throw ArgumentError("IET spec must be a JSON object");
  IetSpec s;
  if (j.contains("preset")) {
    s = preset(j["preset"].get<std::string>());
  } else {
    if (!j.contains("perm") || !j.contains("lengths")) {
      throw ArgumentError("IET spec needs 'perm' and 'lengths' (or a 'preset')");
    }
    const auto& p = j["perm"];
    if (p.is_string()) {
      s.perm = Permutation::parse(p.get<std::string>());
    } else if (p.is_array()) {
      s.perm = Permutation(p.get<std::vector<int>>());
    } else {
      throw ArgumentError("'perm' must be a string or an array");
    }
    if (!j["lengths"].is_array()) throw ArgumentError("'lengths' must be an array");
    for (const auto& l : j["lengths"]) {
      if (l.is_string()) s.lengths.push_back(l.get<std::string>());
      else if (l.is_number()) s.lengths.push_back(l.dump());
      else throw ArgumentError("lengths must be numbers or strings");
    }
  }
  if (j.contains("mode")) s.mode = parse_arithmetic_mode(j["mode"].get<std::string>());
  return s;
}

Json IetSpec::to_json() const {
  Json j;
  j["perm"] = perm.to_string();
  j["lengths"] = lengths;
  j["mode"] = iet::to_string(mode);
  return j;
}

Iet IetSpec::to_float() const {
  std::vector<double> l;
  for (const auto& t : lengths) l.push_back(length_as_double(t));
  return Iet(perm, l);
}

RationalIet IetSpec::to_rational() const {
  std::vector<Rational> l;
  for (const auto& t : lengths) l.push_back(parse_rational(t));
  return RationalIet(perm, l);
}

HighPrecisionIet IetSpec::to_high_precision() const {
  std::vector<HighPrecision> l;
  for (const auto& t : lengths) l.push_back(length_as_high_precision(t));
  return HighPrecisionIet(perm, l);
}

FunctionMetadata metadata_from_json(const Json& j) {
  if (!j.is_object()) throw ArgumentError("function metadata must be a JSON object");
  FunctionMetadata m;
  const auto present = [&](const char* key) { return j.contains(key) && !j[key].is_null(); };
  if (present("lipschitz_constant")) m.lipschitz_constant = j["lipschitz_constant"].get<double>();
  if (present("level_set_bound")) m.level_set_bound = j["level_set_bound"].get<int>();
  if (present("nondeg_max")) {
    const auto& nd = j["nondeg_max"];
    NondegenerateMax x;
    x.location = nd.at("location").get<double>();
    if (nd.contains("modulus")) {
      for (const auto& e : nd["modulus"]) x.modulus.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    }
    m.nondeg_max = x;
  }
  m.is_constant = j.value("is_constant", m.is_constant);
  m.continuous = j.value("continuous", m.continuous);
  m.circle_continuous = j.value("circle_continuous", m.circle_continuous);
  m.continuously_differentiable = j.value("continuously_differentiable", m.continuously_differentiable);
  return m;
}

Json to_json(const FunctionMetadata& m) {
  Json j;
  j["lipschitz_constant"] = m.lipschitz_constant ? Json(*m.lipschitz_constant) : Json(nullptr);
  j["level_set_bound"] = m.level_set_bound ? Json(*m.level_set_bound) : Json(nullptr);
  if (m.nondeg_max) {
    Json nd;
    nd["location"] = m.nondeg_max->location;
    nd["modulus"] = Json::array();
    for (const auto& [e, d] : m.nondeg_max->modulus) nd["modulus"].push_back({e, d});
    j["nondeg_max"] = nd;
  } else {
    j["nondeg_max"] = nullptr;
  }
  j["is_constant"] = m.is_constant;
  j["continuous"] = m.continuous;
  j["circle_continuous"] = m.circle_continuous;
  j["continuously_differentiable"] = m.continuously_differentiable;
  return j;
}

SamplingFunction function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ArgumentError("function spec needs a 'kind'");
  const auto kind = j["kind"].get<std::string>();
  const Json params = j.value("params", Json::object());
  SamplingFunction f = SamplingFunction::constant(0.0);
  if (kind == "constant") {
    f = SamplingFunction::constant(number(params, "c"));
  } else if (kind == "cosine") {
    f = SamplingFunction::cosine(number(params, "lambda"));
  } else if (kind == "piecewise_linear") {
    f = SamplingFunction::piecewise_linear(number_list(params.at("xs"), "xs"), number_list(params.at("ys"), "ys"));
  } else if (kind == "step") {
    f = SamplingFunction::step(number_list(params.at("xs"), "xs"), number_list(params.at("ys"), "ys"));
  } else if (kind == "trig_polynomial") {
    f = SamplingFunction::trig_polynomial(number(params, "c0", 0.0),
                                          number_list(params.value("cos", Json::array()), "cos"),
                                          number_list(params.value("sin", Json::array()), "sin"));
  } else {
    throw ArgumentError("unknown function kind '" + kind + "'");
  }
  if (j.contains("metadata")) f = f.with_metadata(metadata_from_json(j["metadata"]));
  return f;
}

Json to_json(const LyapunovEstimate& e) {
  Json j;
  j["energy"] = e.energy;
  j["mean"] = e.mean;
  j["std_error"] = e.std_error;
  j["n"] = e.n;
  j["m_samples"] = e.m_samples;
  j["seed"] = e.seed;
  return j;
}

Json to_json(const SpectrumApprox& s) {
  Json j;
  j["M"] = s.M;
  j["w"] = s.w;
  j["eigenvalues"] = s.eigenvalues;
  return j;
}

Json to_json(const ACReport& r) {
  Json j;
  j["tau"] = r.tau;
  j["M"] = r.M;
  j["n"] = r.n;
  j["grid_points"] = r.grid_points;
  j["near_points"] = r.near_points;
  j["near_mass"] = r.near_mass;
  j["low_mass"] = r.low_mass;
  j["fraction"] = r.fraction;
  j["note"] = r.note;
  return j;
}

Json to_json(const MainCondWitness& w) {
  Json j;
  j["n"] = w.n;
  j["wd"] = w.wd;
  j["gap"] = w.gap;
  return j;
}

Json to_json(const WitnessReport& r) {
  Json j;
  j["n"] = r.n;
  j["wd"] = r.wd;
  j["depth"] = r.depth;
  j["gap"] = r.gap;
  j["ks"] = r.ks;
  j["forward_gaps"] = r.forward_gaps;
  j["backward_max"] = r.backward_max;
  j["forward_converges"] = r.forward_converges;
  j["backward_shrinks"] = r.backward_shrinks;
  j["verdict"] = r.verdict;
  return j;
}

Json to_json(const KeaneVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["horizon"] = v.horizon;
  j["min_separation"] = nullable(v.min_separation);
  if (v.witness) {
    Json w;
    w["endpoint"] = v.witness->endpoint;
    w["step"] = v.witness->step;
    w["hit_breakpoint"] = v.witness->hit_breakpoint;
    w["value"] = v.witness->value;
    w["exact_value"] = v.witness->exact_value;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const Alignment& a) {
  Json j;
  j["l"] = a.l;
  j["max_displacement"] = a.max_displacement;
  j["isometry_left"] = a.isometry_left;
  j["isometry_right"] = a.isometry_right;
  return j;
}

Json to_json(const ReturnTime& r) {
  Json j;
  j["q"] = r.q;
  j["displacement"] = r.displacement;
  return j;
}

Json to_json(const ContinuedFraction& cf) {
  Json j;
  j["text"] = cf.to_string();
  Json p = Json::array(), q = Json::array();
  for (std::size_t k = 0; k <= cf.size(); ++k) {
    p.push_back(cf.p(k).str());
    q.push_back(cf.q(k).str());
  }
  j["p"] = p;
  j["q"] = q;
  return j;
}

Json to_json(const GordonCertificate& c) {
  Json j;
  j["alpha_digits"] = c.alpha_digits ? Json(*c.alpha_digits) : Json(nullptr);
  j["qs"] = c.qs;
  j["sup_diffs"] = c.sup_diffs;
  Json verdicts = Json::array();
  for (const auto& v : c.verdicts) {
    Json e;
    e["C"] = v.C;
    Json products = Json::array();
    for (double p : v.products) products.push_back(nullable(p));
    e["products"] = products;
    e["verdict"] = v.verdict;
    verdicts.push_back(e);
  }
  j["C_verdicts"] = verdicts;
  j["displacements"] = c.displacements;
  j["chain_bounds"] = c.chain_bounds;
  j["chain_ok"] = c.chain_ok;
  return j;
}

Json to_json(const LiouvilleRotation& r) {
  Json j;
  j["growth"] = r.growth.to_string();
  j["continued_fraction"] = to_json(r.cf);
  j["alpha_digits"] = decimal_string(r.alpha);
  Json bounds = Json::array();
  for (const auto& b : r.bounds) {
    Json e;
    e["k"] = b.k;
    e["q"] = b.q.str();
    e["q_next"] = b.q_next.str();
    e["log_growth"] = b.log_growth.str(20);
    e["log_bound"] = b.log_bound.str(20);
    e["holds"] = b.holds;
    e["orbit_displacement"] = b.orbit_displacement ? Json(b.orbit_displacement->str(20)) : Json(nullptr);
    bounds.push_back(e);
  }
  j["bounds"] = bounds;
  j["notes"] = r.notes;
  return j;
}

Json json_inline_or_file(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    try {
      return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
    }
  }
  std::ifstream in(text);
  if (!in) throw ArgumentError("cannot open JSON file '" + text + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid JSON in '" + text + "': " + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
}

}  // namespace iet
