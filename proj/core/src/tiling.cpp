#include "mondrian/tiling.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "mondrian/criterion.hpp"

namespace mondrian {

namespace {

void require_side(u32 n) {
  if (n < 3 || n > kMaxTilingSide) {
    throw std::domain_error("tiling search: n must lie in [3, 32]");
  }
}

inline u64 span_mask(u32 col, u32 width) {
  const u64 ones = width >= 64 ? ~0ULL : ((1ULL << width) - 1);
  return ones << col;
}

struct BudgetHit {};

class CoverSearch {
 public:
  CoverSearch(u32 width, u32 height, std::span<const RectangleShape> shapes,
              u64 budget, bool area_prune,
              const std::function<void(const SearchNode&)>& observer)
      : width_(width),
        height_(height),
        full_(span_mask(0, width)),
        shapes_(shapes),
        used_(shapes.size(), false),
        rows_(height, 0),
        budget_(budget),
        area_prune_(area_prune),
        observer_(observer) {
    for (const auto& s : shapes_) unused_area_ += s.area();
  }

  CoverResult run() {
    CoverResult out;
    try {
      out.status = dfs(0) ? SearchStatus::kFound : SearchStatus::kAbsent;
    } catch (const BudgetHit&) {
      out.status = SearchStatus::kIndeterminate;
    }
    if (out.status == SearchStatus::kFound) out.placements = placed_;
    out.nodes = nodes_;
    return out;
  }

 private:
  bool dfs(u32 first_row) {
    const u64 board = static_cast<u64>(width_) * height_;
    if (covered_ == board) return true;
    if (area_prune_ && unused_area_ < board - covered_) return false;
    u32 row = first_row;
    while (rows_[row] == full_) ++row;
    const u32 col = static_cast<u32>(std::countr_one(rows_[row]));
    for (std::size_t i = 0; i < shapes_.size(); ++i) {
      if (used_[i]) continue;
      const RectangleShape s = shapes_[i];
      for (int orient = 0; orient < 2; ++orient) {
        const bool rotated = orient == 1;
        if (rotated && s.base == s.height) break;
        const Placement p{s, col, row, rotated};
        if (!fits(p)) continue;
        if (++nodes_ > budget_) throw BudgetHit{};
        apply(p, i, true);
        if (dfs(row)) return true;
        apply(p, i, false);
      }
    }
    return false;
  }

  bool fits(const Placement& p) const {
    if (p.col + p.width() > width_ || p.row + p.rows() > height_) return false;
    const u64 m = span_mask(p.col, p.width());
    for (u32 r = p.row; r < p.row + p.rows(); ++r) {
      if (rows_[r] & m) return false;
    }
    return true;
  }

  void apply(const Placement& p, std::size_t index, bool place) {
    const u64 m = span_mask(p.col, p.width());
    for (u32 r = p.row; r < p.row + p.rows(); ++r) rows_[r] ^= m;
    used_[index] = place;
    if (place) {
      placed_.push_back(p);
      covered_ += p.shape.area();
      unused_area_ -= p.shape.area();
    } else {
      placed_.pop_back();
      covered_ -= p.shape.area();
      unused_area_ += p.shape.area();
    }
    if (observer_) observer_(SearchNode{covered_, static_cast<u32>(placed_.size())});
  }

  u32 width_;
  u32 height_;
  u64 full_;
  std::span<const RectangleShape> shapes_;
  std::vector<bool> used_;
  std::vector<u64> rows_;
  std::vector<Placement> placed_;
  u64 covered_ = 0;
  u64 unused_area_ = 0;
  u64 nodes_ = 0;
  u64 budget_;
  bool area_prune_;
  const std::function<void(const SearchNode&)>& observer_;
};

}  // namespace

std::optional<std::string> validate_cover(u32 width, u32 height,
                                          std::span<const Placement> placements) {
  std::vector<char> grid(static_cast<std::size_t>(width) * height, 0);
  u64 covered = 0;
  for (std::size_t i = 0; i < placements.size(); ++i) {
    const Placement& p = placements[i];
    if (p.shape.base < p.shape.height || p.shape.height == 0) {
      return "placement " + std::to_string(i) + " has a non-normalized shape";
    }
    if (p.col + p.width() > width || p.row + p.rows() > height) {
      return "placement " + std::to_string(i) + " leaves the board";
    }
    for (u32 r = p.row; r < p.row + p.rows(); ++r) {
      for (u32 c = p.col; c < p.col + p.width(); ++c) {
        char& cell = grid[static_cast<std::size_t>(r) * width + c];
        if (cell) return "placement " + std::to_string(i) + " overlaps another";
        cell = 1;
      }
    }
    covered += p.shape.area();
  }
  if (covered != static_cast<u64>(width) * height) {
    return "placements cover " + std::to_string(covered) + " of " +
           std::to_string(static_cast<u64>(width) * height) + " cells";
  }
  return std::nullopt;
}

std::optional<std::string> validate(const TilingInstance& t) {
  if (t.area_d == 0) return "area_d must be positive";
  if (auto err = validate_cover(t.n, t.n, t.placements)) return err;
  std::set<RectangleShape> seen;
  for (const auto& p : t.placements) {
    if (p.shape.area() != t.area_d) return "shape area differs from area_d";
    if (!seen.insert(p.shape).second) return "two placements are congruent";
  }
  const u64 square = static_cast<u64>(t.n) * t.n;
  if (t.placements.size() != square / t.area_d || square % t.area_d != 0) {
    return "placement count differs from n^2 / area_d";
  }
  if (t.placements.size() > tau2_star(t.area_d)) {
    return "more placements than factor pairs of area_d";
  }
  return std::nullopt;
}

std::string to_json(const TilingInstance& t) {
  nlohmann::ordered_json j;
  j["n"] = t.n;
  j["area_d"] = t.area_d;
  auto& arr = j["placements"] = nlohmann::ordered_json::array();
  for (const auto& p : t.placements) {
    arr.push_back({{"base", p.shape.base},
                   {"height", p.shape.height},
                   {"col", p.col},
                   {"row", p.row},
                   {"rotated", p.rotated}});
  }
  return j.dump();
}

TilingInstance tiling_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  TilingInstance t;
  t.n = j.at("n").get<u32>();
  t.area_d = j.at("area_d").get<u64>();
  for (const auto& e : j.at("placements")) {
    Placement p;
    p.shape = RectangleShape{e.at("base").get<u32>(), e.at("height").get<u32>()};
    p.col = e.at("col").get<u32>();
    p.row = e.at("row").get<u32>();
    p.rotated = e.at("rotated").get<bool>();
    t.placements.push_back(p);
  }
  return t;
}

std::vector<RectangleShape> fitting_shapes(u64 d, u32 side) {
  std::vector<RectangleShape> out;
  for (u64 h = 1; h * h <= d; ++h) {
    if (d % h != 0) continue;
    const u64 b = d / h;
    if (b <= side) out.push_back({static_cast<u32>(b), static_cast<u32>(h)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CandidateArea> candidate_areas(u32 n) {
  require_side(n);
  const u64 square = static_cast<u64>(n) * n;
  std::vector<CandidateArea> out;
  for (u64 d : divisors(square)) {
    if (d == square) continue;
    if (d * tau2_star(d) < square) continue;
    auto shapes = fitting_shapes(d, n);
    if (shapes.size() < square / d) continue;
    out.push_back({d, std::move(shapes)});
  }
  return out;
}

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return "FOUND";
    case SearchStatus::kAbsent: return "ABSENT";
    case SearchStatus::kIndeterminate: return "INDETERMINATE";
  }
  return "?";
}

std::string_view to_string(Lemma1Verdict v) {
  switch (v) {
    case Lemma1Verdict::kSkipped: return "SKIPPED";
    case Lemma1Verdict::kConfirmedAbsent: return "ABSENT";
    case Lemma1Verdict::kIndeterminate: return "INDETERMINATE";
    case Lemma1Verdict::kViolation: return "VIOLATION";
  }
  return "?";
}

CoverResult find_cover(u32 width, u32 height, std::span<const RectangleShape> shapes,
                       u64 node_budget, bool area_prune,
                       const std::function<void(const SearchNode&)>& observer) {
  if (width == 0 || width > 64 || height == 0) {
    throw std::domain_error("find_cover: board must be 1..64 columns wide");
  }
  return CoverSearch(width, height, shapes, node_budget, area_prune, observer).run();
}

TilingOutcome perfect_tiling_exists(u32 n, const SearchOptions& options) {
  require_side(n);
  const u64 square = static_cast<u64>(n) * n;
  std::vector<CandidateArea> areas;
  if (options.necessary_condition_filter) {
    areas = candidate_areas(n);
  } else {
    for (u64 d : divisors(square)) {
      if (d < square) areas.push_back({d, fitting_shapes(d, n)});
    }
  }
  TilingOutcome out;
  bool indeterminate = false;
  for (const auto& cand : areas) {
    const u64 remaining = options.node_budget > out.nodes ? options.node_budget - out.nodes : 0;
    std::function<void(const SearchNode&)> hook;
    if (options.observer) {
      hook = [&](const SearchNode& s) { options.observer(cand.d, s); };
    }
    const CoverResult r = find_cover(n, n, cand.shapes, remaining, options.area_prune, hook);
    out.nodes += r.nodes;
    if (r.status == SearchStatus::kFound) {
      out.status = SearchStatus::kFound;
      out.instance = TilingInstance{n, cand.d, r.placements};
      return out;
    }
    if (r.status == SearchStatus::kIndeterminate) indeterminate = true;
  }
  out.status = indeterminate ? SearchStatus::kIndeterminate : SearchStatus::kAbsent;
  return out;
}

Lemma1Report validate_lemma1(u32 n_max, u64 node_budget) {
  if (n_max > kMaxTilingSide) {
    throw std::domain_error("validate_lemma1: n_max must be <= 32");
  }
  Lemma1Report rep;
  rep.n_max = n_max;
  SearchOptions opts;
  opts.node_budget = node_budget;
  opts.necessary_condition_filter = false;
  opts.area_prune = false;
  for (u32 n = 3; n <= n_max; ++n) {
    Lemma1Row row;
    row.n = n;
    row.criterion_holds = criterion_direct(n).holds;
    if (!row.criterion_holds) {
      ++rep.skipped;
      rep.rows.push_back(row);
      continue;
    }
    ++rep.criterion_true;
    const TilingOutcome t = perfect_tiling_exists(n, opts);
    row.nodes = t.nodes;
    switch (t.status) {
      case SearchStatus::kAbsent:
        row.verdict = Lemma1Verdict::kConfirmedAbsent;
        ++rep.confirmed_absent;
        break;
      case SearchStatus::kIndeterminate:
        row.verdict = Lemma1Verdict::kIndeterminate;
        ++rep.indeterminate;
        break;
      case SearchStatus::kFound:
        row.verdict = Lemma1Verdict::kViolation;
        row.counterexample = t.instance;
        ++rep.violations;
        break;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace mondrian
