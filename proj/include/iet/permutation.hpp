#pragma once

// Combinatorics of the permutation of an interval exchange: irreducibility,
// rotation class, the discontinuity graph and the Type W recursion.

#include "iet/function_metadata.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iet {

/// A bijection of {1..r}, r >= 2, stored in one-line notation.
class Permutation {
 public:
  /// Throws ArgumentError unless `image` is a bijection of {1..r} with r >= 2.
  explicit Permutation(std::vector<int> image);

  static Permutation identity(int r);
  static Permutation reversal(int r);
  /// The rotation-class permutation pi(j) = ((j + k) mod r) + 1.
  static Permutation rotation(int r, int k);
  /// Parses one-line notation such as "3 2 1" (commas are accepted too).
  static Permutation parse(std::string_view text);

  int size() const noexcept { return static_cast<int>(image_.size()); }
  /// pi(j) for 1 <= j <= r.
  int operator()(int j) const { return image_[static_cast<std::size_t>(j - 1)]; }
  /// pi^{-1}(v) for 1 <= v <= r.
  int inverse(int v) const { return inverse_[static_cast<std::size_t>(v - 1)]; }
  std::span<const int> image() const noexcept { return image_; }

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> image_;
  std::vector<int> inverse_;
};

bool is_irreducible(const Permutation& p);

/// The unique k in {0..r-1} with pi(j) - 1 == j + k (mod r) for all j, if any.
std::optional<int> rotation_class(const Permutation& p);

/// Calls `visit` on every permutation of size r in lexicographic order.
template <class Visitor>
void for_each_permutation(int r, Visitor&& visit);

std::vector<Permutation> irreducible_permutations(int r);

// ---------------------------------------------------------------------------
// Discontinuity graph

/// Vertex ids: 0 is the point 0, j in 1..r-1 is the breakpoint w_j, and r is
/// the point 1. The id order is the canonical order used for reporting.
using VertexId = int;

struct GraphEdge {
  VertexId from = 0;
  VertexId to = 0;
  bool special = false;
};

struct GraphCycle {
  /// Starts at the smallest vertex id in the cycle and follows successors.
  std::vector<VertexId> vertices;
  int special_count = 0;
  /// Number of distinct breakpoint vertices w_j in the cycle.
  int discontinuity_count = 0;
};

class DiscontinuityGraph {
 public:
  int r() const noexcept { return r_; }
  int vertex_count() const noexcept { return r_ + 1; }
  VertexId successor(VertexId v) const { return successor_.at(static_cast<std::size_t>(v)); }
  /// Whether the edge leaving v is one of the two special edges.
  bool special_out(VertexId v) const { return special_.at(static_cast<std::size_t>(v)); }
  std::vector<GraphEdge> edges() const;
  const std::vector<GraphCycle>& cycles() const noexcept { return cycles_; }
  /// Index into cycles() of the cycle containing v.
  std::size_t cycle_of(VertexId v) const;

  std::string label(VertexId v) const;

  std::string to_json() const;
  std::string to_dot() const;

 private:
  friend DiscontinuityGraph build_graph(const Permutation& p);
  int r_ = 0;
  std::vector<VertexId> successor_;
  std::vector<bool> special_;
  std::vector<GraphCycle> cycles_;
};

/// Builds the graph purely from pi. Throws ReducibleError for reducible pi.
DiscontinuityGraph build_graph(const Permutation& p);

struct TypeWTrace {
  std::vector<int> a;
  /// Stop index: a[s] is the first element in {pi^{-1}(1), r + 1}.
  int s = 0;
  bool verdict = false;
};

/// Runs the a_k recursion. Throws ReducibleError for reducible pi.
TypeWTrace is_type_w(const Permutation& p);

/// True iff the recursion verdict agrees with "the cycle through 0 has exactly
/// one special edge" on the graph.
bool cross_check_type_w(const Permutation& p);

/// Maximum number of distinct breakpoint vertices on a directed path.
int max_distinct_discontinuity_path(const DiscontinuityGraph& g);

// ---------------------------------------------------------------------------
// Classification

struct CriterionVerdict {
  std::string name;
  bool applies = false;
  std::string detail;
};

struct ClassificationReport {
  std::string permutation;
  std::optional<int> rotation_class;
  TypeWTrace type_w;
  std::vector<int> cycle_special_counts;
  int ell = 0;
  bool one_special_edge_cycle = false;
  /// Sufficient conditions for an empty absolutely continuous spectrum, in a
  /// fixed order: one-special-edge cycle, preimage cardinality, Lipschitz,
  /// non-degenerate maximum.
  std::vector<CriterionVerdict> criteria;
  bool topologically_weakly_mixing = false;
  bool topologically_prime = false;
  std::string summary;

  bool any_criterion_applies() const;
  std::string to_json() const;
};

/// Throws ReducibleError for reducible pi.
ClassificationReport classify(const Permutation& p, const FunctionMetadata& meta);

// ---------------------------------------------------------------------------

template <class Visitor>
void for_each_permutation(int r, Visitor&& visit) {
  std::vector<int> image(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) image[static_cast<std::size_t>(i)] = i + 1;
  do {
    visit(Permutation(image));
  } while (std::next_permutation(image.begin(), image.end()));
}

}  // namespace iet
