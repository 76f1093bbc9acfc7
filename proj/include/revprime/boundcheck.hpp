#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace revprime {

// One verification outcome.  Exact mode carries a verdict (lhs <= rhs up to
// the checker's stated tolerance); ratio mode only reports lhs/rhs because the
// underlying statement has an implicit constant nobody is allowed to invent.
struct BoundCheck {
  enum class Mode { exact, ratio };

  std::string lemma_id;
  std::vector<std::pair<std::string, double>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs in exact mode, lhs / rhs in ratio mode
  Mode mode = Mode::exact;
  bool pass = true;  // meaningful in exact mode only

  static BoundCheck exact(std::string id, std::vector<std::pair<std::string, double>> p,
                          double lhs_, double rhs_, double tol_abs, double tol_rel = 0.0) {
    BoundCheck b;
    b.lemma_id = std::move(id);
    b.params = std::move(p);
    b.lhs = lhs_;
    b.rhs = rhs_;
    b.slack = rhs_ - lhs_;
    b.mode = Mode::exact;
    b.pass = lhs_ <= rhs_ + tol_abs + tol_rel * std::abs(rhs_);
    return b;
  }

  static BoundCheck ratio(std::string id, std::vector<std::pair<std::string, double>> p,
                          double lhs_, double rhs_) {
    BoundCheck b;
    b.lemma_id = std::move(id);
    b.params = std::move(p);
    b.lhs = lhs_;
    b.rhs = rhs_;
    b.slack = rhs_ != 0.0 ? lhs_ / rhs_ : 0.0;
    b.mode = Mode::ratio;
    b.pass = true;
    return b;
  }
};

inline std::int64_t count_violations(const std::vector<BoundCheck>& checks) {
  std::int64_t n = 0;
  for (const auto& c : checks)
    if (c.mode == BoundCheck::Mode::exact && !c.pass) ++n;
  return n;
}

// splitmix64: tiny, seedable, identical across platforms.  All sampling in the
// verification lab flows from one of these so runs are reproducible bit for bit.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // [lo, hi]
    return lo + static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // derive an independent stream, e.g. one per grid cell
  Rng fork(std::uint64_t salt) {
    return Rng(state ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
  }
};

// Sampling grid shared by the checkers: which bases, which lengths, how many
// samples per cell, and the seed everything derives from.
struct SampleGrid {
  std::vector<std::int64_t> g_list;
  std::vector<int> n_list;
  int samples = 0;
  std::uint64_t seed = 1;
};

}  // namespace revprime
