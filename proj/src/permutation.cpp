#include "iet/permutation.hpp"

#include "iet/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace iet {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  const int r = size();
  if (r < 2) throw ArgumentError("permutation needs r >= 2, got r = " + std::to_string(r));
  inverse_.assign(image_.size(), 0);
  for (int j = 1; j <= r; ++j) {
    const int v = image_[static_cast<std::size_t>(j - 1)];
    if (v < 1 || v > r) {
      throw ArgumentError("permutation value " + std::to_string(v) + " outside {1.." +
                          std::to_string(r) + "}");
    }
    int& slot = inverse_[static_cast<std::size_t>(v - 1)];
    if (slot != 0) throw ArgumentError("permutation value " + std::to_string(v) + " repeated");
    slot = j;
  }
}

Permutation Permutation::identity(int r) {
  std::vector<int> image(static_cast<std::size_t>(std::max(r, 0)));
  for (int j = 1; j <= r; ++j) image[static_cast<std::size_t>(j - 1)] = j;
  return Permutation(std::move(image));
}

Permutation Permutation::reversal(int r) {
  std::vector<int> image(static_cast<std::size_t>(std::max(r, 0)));
  for (int j = 1; j <= r; ++j) image[static_cast<std::size_t>(j - 1)] = r + 1 - j;
  return Permutation(std::move(image));
}

Permutation Permutation::rotation(int r, int k) {
  if (r < 2 || k < 0 || k >= r) throw ArgumentError("rotation needs r >= 2 and 0 <= k < r");
  std::vector<int> image(static_cast<std::size_t>(r));
  for (int j = 1; j <= r; ++j) image[static_cast<std::size_t>(j - 1)] = (j + k) % r + 1;
  return Permutation(std::move(image));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> image;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError(std::string("unexpected character '") + c + "' in permutation", i);
    }
    const std::size_t start = i;
    long value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      if (value > 1'000'000) throw ParseError("permutation entry too large", start);
      ++i;
    }
    image.push_back(static_cast<int>(value));
  }
  if (image.size() < 2) throw ParseError("permutation needs at least two entries", text.size());
  try {
    return Permutation(std::move(image));
  } catch (const ArgumentError& e) {
    throw ParseError(e.what(), 0);
  }
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(image_[i]);
  }
  return out;
}

bool is_irreducible(const Permutation& p) {
  const int r = p.size();
  // pi({1..k}) = {1..k} iff max(pi(1..k)) == k.
  int running_max = 0;
  for (int k = 1; k < r; ++k) {
    running_max = std::max(running_max, p(k));
    if (running_max == k) return false;
  }
  return true;
}

std::optional<int> rotation_class(const Permutation& p) {
  const int r = p.size();
  const int k = ((p(1) - 1 - 1) % r + r) % r;
  for (int j = 1; j <= r; ++j) {
    if (((p(j) - 1 - j - k) % r + r) % r != 0) return std::nullopt;
  }
  return k;
}

std::vector<Permutation> irreducible_permutations(int r) {
  std::vector<Permutation> out;
  for_each_permutation(r, [&](const Permutation& p) {
    if (is_irreducible(p)) out.push_back(p);
  });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_irreducible(const Permutation& p) {
  if (!is_irreducible(p)) {
    throw ReducibleError("permutation (" + p.to_string() + ") is reducible");
  }
}

}  // namespace

DiscontinuityGraph build_graph(const Permutation& p) {
  require_irreducible(p);
  const int r = p.size();
  DiscontinuityGraph g;
  g.r_ = r;
  g.successor_.assign(static_cast<std::size_t>(r + 1), -1);
  g.special_.assign(static_cast<std::size_t>(r + 1), false);

  const VertexId zero = 0;
  const VertexId one = r;
  // A vertex whose left limit lands at the start of image slot pi(1) continues
  // at 0; one landing at the start of slot pi(k+1) continues at w_k.
  auto after_slot_end = [&](int slot) -> VertexId {
    if (slot + 1 == p(1)) return zero;
    return p.inverse(slot + 1) - 1;
  };

  g.successor_[zero] = p.inverse(1) - 1;
  g.special_[zero] = true;
  for (int j = 1; j < r; ++j) {
    if (p(j) == r) {
      g.successor_[static_cast<std::size_t>(j)] = one;
      g.special_[static_cast<std::size_t>(j)] = true;
    } else {
      g.successor_[static_cast<std::size_t>(j)] = after_slot_end(p(j));
    }
  }
  // T_-(1) is the right end of the image of I_r; pi(r) = r is excluded by
  // irreducibility.
  g.successor_[static_cast<std::size_t>(one)] = after_slot_end(p(r));

  std::vector<bool> seen(static_cast<std::size_t>(r + 1), false);
  for (VertexId start = 0; start <= r; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    GraphCycle cycle;
    VertexId v = start;
    while (!seen[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = true;
      cycle.vertices.push_back(v);
      if (g.special_[static_cast<std::size_t>(v)]) ++cycle.special_count;
      if (v != zero && v != one) ++cycle.discontinuity_count;
      v = g.successor_[static_cast<std::size_t>(v)];
    }
    g.cycles_.push_back(std::move(cycle));
  }
  return g;
}

std::vector<GraphEdge> DiscontinuityGraph::edges() const {
  std::vector<GraphEdge> out;
  out.reserve(successor_.size());
  for (VertexId v = 0; v < vertex_count(); ++v) out.push_back({v, successor(v), special_out(v)});
  return out;
}

std::size_t DiscontinuityGraph::cycle_of(VertexId v) const {
  for (std::size_t i = 0; i < cycles_.size(); ++i) {
    const auto& vs = cycles_[i].vertices;
    if (std::find(vs.begin(), vs.end(), v) != vs.end()) return i;
  }
  throw ArgumentError("vertex " + std::to_string(v) + " not in graph");
}

std::string DiscontinuityGraph::label(VertexId v) const {
  if (v == 0) return "0";
  if (v == r_) return "1";
  return "w" + std::to_string(v);
}

std::string DiscontinuityGraph::to_json() const {
  nlohmann::ordered_json j;
  auto& vertices = j["vertices"] = nlohmann::ordered_json::array();
  for (VertexId v = 0; v < vertex_count(); ++v) vertices.push_back(label(v));
  auto& edge_list = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : edges()) {
    edge_list.push_back({{"from", label(e.from)}, {"to", label(e.to)}, {"special", e.special}});
  }
  auto& cycle_list = j["cycles"] = nlohmann::ordered_json::array();
  for (const auto& c : cycles_) {
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (VertexId v : c.vertices) labels.push_back(label(v));
    cycle_list.push_back({{"vertices", labels}, {"special_count", c.special_count}});
  }
  return j.dump();
}

std::string DiscontinuityGraph::to_dot() const {
  std::ostringstream out;
  out << "digraph G {\n";
  for (VertexId v = 0; v < vertex_count(); ++v) out << "  \"" << label(v) << "\";\n";
  int special_index = 0;
  for (const auto& e : edges()) {
    out << "  \"" << label(e.from) << "\" -> \"" << label(e.to) << "\"";
    if (e.special) out << " [style=bold, label=\"e" << ++special_index << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

TypeWTrace is_type_w(const Permutation& p) {
  require_irreducible(p);
  const int r = p.size();
  const int stop_target = p.inverse(1);
  TypeWTrace trace;
  trace.a.push_back(1);
  // Each step visits a new vertex of the cycle through 0, so r + 1 steps bound
  // the recursion.
  for (int k = 0; k <= r + 1; ++k) {
    const int a = trace.a.back();
    if (a == stop_target || a == r + 1) {
      trace.s = k;
      trace.verdict = (a == stop_target);
      return trace;
    }
    trace.a.push_back(p.inverse(p(a) - 1) + 1);
  }
  throw std::logic_error("Type W recursion did not terminate for (" + p.to_string() + ")");
}

bool cross_check_type_w(const Permutation& p) {
  const auto trace = is_type_w(p);
  const auto g = build_graph(p);
  const bool graph_verdict = g.cycles()[g.cycle_of(0)].special_count == 1;
  return trace.verdict == graph_verdict;
}

int max_distinct_discontinuity_path(const DiscontinuityGraph& g) {
  int best = 0;
  for (const auto& c : g.cycles()) best = std::max(best, c.discontinuity_count);
  return best;
}

// ---------------------------------------------------------------------------

bool ClassificationReport::any_criterion_applies() const {
  return std::any_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.applies; });
}

std::string ClassificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["permutation"] = permutation;
  j["rotation_class"] = rotation_class ? nlohmann::ordered_json(*rotation_class) : nullptr;
  j["type_w"] = {{"a", type_w.a}, {"s", type_w.s}, {"verdict", type_w.verdict}};
  j["cycle_special_counts"] = cycle_special_counts;
  j["ell"] = ell;
  j["one_special_edge_cycle"] = one_special_edge_cycle;
  auto& list = j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& c : criteria) {
    list.push_back({{"name", c.name}, {"applies", c.applies}, {"detail", c.detail}});
  }
  j["topologically_weakly_mixing"] = topologically_weakly_mixing;
  j["topologically_prime"] = topologically_prime;
  j["summary"] = summary;
  return j.dump();
}

ClassificationReport classify(const Permutation& p, const FunctionMetadata& meta) {
  const auto g = build_graph(p);
  ClassificationReport report;
  report.permutation = p.to_string();
  report.rotation_class = rotation_class(p);
  report.type_w = is_type_w(p);
  for (const auto& c : g.cycles()) report.cycle_special_counts.push_back(c.special_count);
  report.ell = max_distinct_discontinuity_path(g);
  report.one_special_edge_cycle =
      std::any_of(g.cycles().begin(), g.cycles().end(), [](const auto& c) { return c.special_count == 1; });
  // Both conclusions need Keane lengths.
  report.topologically_weakly_mixing = report.type_w.verdict;
  report.topologically_prime = report.type_w.verdict;

  const bool nonconstant_continuous = meta.continuous && !meta.is_constant;
  const bool rotation = report.rotation_class.has_value();

  CriterionVerdict special{"one_special_edge_cycle", false, ""};
  if (!report.one_special_edge_cycle) {
    special.detail = "every cycle has 0 or 2 special edges";
  } else if (!nonconstant_continuous) {
    special.detail = "graph qualifies but f is not a non-constant continuous function";
  } else {
    special.applies = true;
    special.detail = "sigma_ac empty for every non-constant continuous f under Keane lengths";
  }

  CriterionVerdict preimage{"preimage_cardinality", false, ""};
  const std::string ell_text = "ell = " + std::to_string(report.ell);
  if (!meta.level_set_bound) {
    preimage.detail = ell_text + "; no level-set bound declared";
  } else if (!meta.continuous) {
    preimage.detail = ell_text + "; f is not continuous";
  } else if (*meta.level_set_bound > report.ell - 1) {
    preimage.detail = ell_text + "; needs level sets of size <= " + std::to_string(report.ell - 1) +
                      ", declared bound " + std::to_string(*meta.level_set_bound);
  } else {
    preimage.applies = true;
    preimage.detail = ell_text + "; level sets of size <= " +
                      std::to_string(*meta.level_set_bound) + " <= ell - 1, Keane lengths";
  }

  CriterionVerdict lipschitz{"lipschitz", false, ""};
  if (!meta.lipschitz_constant) {
    lipschitz.detail = "no Lipschitz constant declared";
  } else if (meta.is_constant) {
    lipschitz.detail = "f is constant";
  } else if (rotation) {
    lipschitz.detail = "rotation class: the exchange is never weakly mixing";
  } else {
    lipschitz.applies = true;
    lipschitz.detail =
        "sigma_ac empty for Lebesgue-almost every length vector (Keane and weakly mixing)";
  }

  CriterionVerdict maximum{"nondegenerate_max", false, ""};
  if (!meta.nondeg_max) {
    maximum.detail = "no non-degenerate maximum declared";
  } else if (!meta.continuously_differentiable) {
    maximum.detail = "f is not declared C^1";
  } else if (meta.is_constant) {
    maximum.detail = "f is constant";
  } else if (rotation) {
    maximum.detail = "rotation class excluded";
  } else {
    maximum.applies = true;
    maximum.detail = "some power of T has a discontinuous f o T^n under Keane lengths";
  }

  report.criteria = {special, preimage, lipschitz, maximum};

  if (special.applies) {
    report.summary = "sigma_ac = empty by one-special-edge-cycle criterion (Keane lengths required)";
  } else if (report.any_criterion_applies()) {
    for (const auto& c : report.criteria) {
      if (c.applies) {
        report.summary = "sigma_ac = empty by " + c.name + " criterion (Keane lengths required)";
        break;
      }
    }
  } else {
    report.summary =
        "no combinatorial criterion applies; spectral verdict requires dynamics-level scan";
  }
  return report;
}

}  // namespace iet
