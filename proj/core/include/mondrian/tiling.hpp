#pragma once

// Exhaustive search for perfect Mondrian tilings: an n x n square covered by
// pairwise incongruent integer rectangles that all share one area d.
//
// The search fills the topmost-leftmost empty cell first and tries every
// unused shape in both orientations. Congruence ignores orientation, so a
// shape is the normalized pair base >= height.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mondrian/divisor.hpp"

namespace mondrian {

inline constexpr u32 kMaxTilingSide = 32;

struct RectangleShape {
  u32 base = 1;
  u32 height = 1;

  static RectangleShape normalized(u32 a, u32 b) {
    return a >= b ? RectangleShape{a, b} : RectangleShape{b, a};
  }
  u64 area() const { return static_cast<u64>(base) * height; }

  friend auto operator<=>(const RectangleShape&, const RectangleShape&) = default;
};

// Unrotated: `base` columns wide, `height` rows tall. Rotated swaps the two.
struct Placement {
  RectangleShape shape;
  u32 col = 0;
  u32 row = 0;
  bool rotated = false;

  u32 width() const { return rotated ? shape.height : shape.base; }
  u32 rows() const { return rotated ? shape.base : shape.height; }

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct TilingInstance {
  u32 n = 0;
  u64 area_d = 0;
  std::vector<Placement> placements;

  friend bool operator==(const TilingInstance&, const TilingInstance&) = default;
};

// Checks placements are in bounds and pairwise disjoint and cover the
// width x height board exactly. Returns a description of the first problem.
std::optional<std::string> validate_cover(u32 width, u32 height,
                                          std::span<const Placement> placements);

// validate_cover plus: shapes pairwise incongruent, all of area area_d,
// |placements| == n^2 / area_d, and |placements| <= tau2*(area_d).
std::optional<std::string> validate(const TilingInstance& t);

std::string to_json(const TilingInstance& t);
TilingInstance tiling_from_json(std::string_view text);

// All shapes of area d with both sides <= side, in increasing order.
std::vector<RectangleShape> fitting_shapes(u64 d, u32 side);

struct CandidateArea {
  u64 d = 0;
  std::vector<RectangleShape> shapes;
};

// d | n^2, d < n^2, d * tau2*(d) >= n^2, and at least n^2 / d shapes of area
// d fit in the square. 3 <= n <= 32.
std::vector<CandidateArea> candidate_areas(u32 n);

enum class SearchStatus { kFound, kAbsent, kIndeterminate };

std::string_view to_string(SearchStatus s);

// State after each placement or removal.
struct SearchNode {
  u64 covered = 0;
  u32 placed = 0;
};

struct SearchOptions {
  u64 node_budget = 50'000'000;
  // When false every divisor d < n^2 of n^2 is searched, with no appeal to
  // the d * tau2*(d) bound; the search must then rule each one out itself.
  bool necessary_condition_filter = true;
  // Abandon a branch when the unused shapes cannot cover the empty area.
  bool area_prune = true;
  std::function<void(u64 area_d, const SearchNode&)> observer;
};

struct CoverResult {
  SearchStatus status = SearchStatus::kAbsent;
  std::vector<Placement> placements;
  u64 nodes = 0;
};

// Exact cover of a width x height board (width <= 64) using each of
// `shapes` at most once.
CoverResult find_cover(u32 width, u32 height, std::span<const RectangleShape> shapes,
                       u64 node_budget, bool area_prune = true,
                       const std::function<void(const SearchNode&)>& observer = {});

struct TilingOutcome {
  SearchStatus status = SearchStatus::kAbsent;
  std::optional<TilingInstance> instance;
  u64 nodes = 0;
};

// 3 <= n <= 32.
TilingOutcome perfect_tiling_exists(u32 n, const SearchOptions& options = {});

enum class Lemma1Verdict { kSkipped, kConfirmedAbsent, kIndeterminate, kViolation };

std::string_view to_string(Lemma1Verdict v);

struct Lemma1Row {
  u32 n = 0;
  bool criterion_holds = false;
  Lemma1Verdict verdict = Lemma1Verdict::kSkipped;
  u64 nodes = 0;
  std::optional<TilingInstance> counterexample;
};

struct Lemma1Report {
  u32 n_max = 0;
  std::vector<Lemma1Row> rows;
  u32 criterion_true = 0;
  u32 confirmed_absent = 0;
  u32 indeterminate = 0;
  u32 violations = 0;
  u32 skipped = 0;
};

// For each 3 <= n <= n_max where the criterion holds, runs the search over
// every divisor area with necessary_condition_filter and area_prune off, so
// the verdict rests on placement alone. n_max <= 32.
Lemma1Report validate_lemma1(u32 n_max, u64 node_budget = 50'000'000);

}  // namespace mondrian
