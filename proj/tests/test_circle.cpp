#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "revprime/circle.hpp"

using namespace revprime;

namespace {

// totient-sum oracle for |F(Q)|
std::int64_t farey_size_oracle(std::int64_t q) {
  std::int64_t total = 1;
  for (std::int64_t r = 1; r <= q; ++r) {
    std::int64_t phi = 0;
    for (std::int64_t b = 1; b <= r; ++b)
      if (std::gcd(b, r) == 1) ++phi;
    total += phi;
  }
  return total;
}

}  // namespace

TEST_CASE("farey: classical sets and totient-sum cardinality") {
  using P = std::pair<std::int64_t, std::int64_t>;
  CHECK(farey(1) == std::vector<P>{{0, 1}, {1, 1}});
  CHECK(farey(3) == std::vector<P>{{0, 1}, {1, 3}, {1, 2}, {2, 3}, {1, 1}});
  for (std::int64_t q : {1, 2, 5, 10, 37, 100}) {
    auto f = farey(q);
    CHECK(static_cast<std::int64_t>(f.size()) == farey_size_oracle(q));
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      // ascending, consecutive pairs are unimodular
      CHECK(f[i].first * f[i + 1].second < f[i + 1].first * f[i].second);
      CHECK(f[i + 1].first * f[i].second - f[i].first * f[i + 1].second == 1);
    }
    for (auto [b, r] : f) CHECK(std::gcd(b, r) == 1);
  }
}

TEST_CASE("dissect: worked example values") {
  ArcPartition part = dissect(Window(10, 3), 10, 10);
  const FareyPoint& zero = part.points[0];
  CHECK(zero.b == 0);
  CHECK(zero.r == 1);
  CHECK(zero.eta == Rat(0));
  CHECK(zero.major);

  const FareyPoint& p333 = part.points[333];
  CHECK(p333.b == 1);
  CHECK(p333.r == 3);
  CHECK(p333.eta == Rat(-1, 3000));

  // h = 130 admits both 1/8 and 1/7; the mediant rule picks 1/8
  const FareyPoint& p130 = part.points[130];
  CHECK(p130.b == 1);
  CHECK(p130.r == 8);
  CHECK(p130.eta == Rat(1, 200));
  CHECK(part.multi_candidate > 0);
}

TEST_CASE("dissect: totality, exact eta bounds, injectivity, brute-force containment") {
  Window w(10, 4);
  const std::int64_t q_order = 50;
  ArcPartition part = dissect(w, 10, q_order);
  REQUIRE(static_cast<std::int64_t>(part.points.size()) == w.high());

  auto fq = farey(q_order);
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> seen;
  for (std::int64_t h = 0; h < w.high(); ++h) {
    const FareyPoint& pt = part.points[static_cast<std::size_t>(h)];
    CHECK(pt.h == h);
    CHECK(std::gcd(pt.b, pt.r) == 1);
    CHECK(pt.r <= q_order);
    // b/r + eta reconstructs h/g^N exactly
    Rat back = Rat(pt.b, pt.r) + pt.eta;
    CHECK(back == Rat(h, w.high()));
    // |eta| < 1/(rQ) exactly
    CHECK(detail::iabs128(pt.eta.num) * pt.r * q_order < pt.eta.den);
    // injectivity of h -> (b, r, eta)
    CHECK(seen.emplace(pt.b, pt.r, pt.eta.num, pt.eta.den).second);
  }

  // the assignment is always one of the (at most two) admissible candidates
  for (std::int64_t h = 0; h < w.high(); h += 7) {
    const FareyPoint& pt = part.points[static_cast<std::size_t>(h)];
    int candidates = 0;
    bool assigned_is_candidate = false;
    for (auto [b, r] : fq) {
      i128 diff = detail::iabs128(i128(h) * r - i128(b) * w.high());
      if (diff * q_order < w.high()) {
        ++candidates;
        if (b == pt.b && r == pt.r) assigned_is_candidate = true;
      }
    }
    CHECK(candidates >= 1);
    CHECK(candidates <= 2);
    CHECK(assigned_is_candidate);
  }
}

TEST_CASE("arc classification is monotone in P") {
  Window w(10, 3);
  std::int64_t prev = -1;
  for (std::int64_t P : {1, 2, 5, 10, 20, 31}) {
    ArcPartition part = dissect(w, P, 31);
    CHECK(part.major_count >= prev);
    prev = part.major_count;
    for (const auto& pt : part.points) {
      bool is_major = pt.r <= P && detail::iabs128(i128(pt.eta.num) * w.high()) <=
                                       i128(P) * pt.eta.den;
      CHECK(pt.major == is_major);
    }
  }
  // P = Q = g^{N/2} style: every point lands major
  Window w4(10, 4);
  ArcPartition all_major = dissect(w4, 100, 100);
  CHECK(all_major.major_count == w4.high());
}

TEST_CASE("remainder: empty k-sum cases give exactly zero") {
  // q = 1: no k at all
  CHECK(remainder_spectral(Window(10, 3), Query(0, 1)) == 0.0);
  // q = 9 divides g^2 - 1 = 99: every k is excluded
  CHECK(remainder_k_values(Window(10, 3), 9).empty());
  CHECK(remainder_spectral(Window(10, 3), Query(4, 9)) == 0.0);
  // census agrees: the remainder is identically zero for q | 99
  auto rows = census_all(Window(10, 3), 9);
  for (const auto& r : rows) CHECK(r.remainder == Rat(0));
}

TEST_CASE("spectral remainder equals census remainder") {
  Window w(10, 4);
  const std::int64_t q = 7;
  RemainderKSums ks = remainder_ksums(w, q);
  auto rows = census_all(w, q);
  for (std::int64_t a = 0; a < q; ++a) {
    double spectral = remainder_from_ksums(ks, a);
    CHECK(std::abs(spectral - rows[static_cast<std::size_t>(a)].remainder.to_double()) < 1e-6);
  }
  // explicit worked point
  CHECK(std::abs(remainder_spectral(w, Query(3, 7)) -
                 rows[3].remainder.to_double()) < 1e-6);

  Window w2(2, 9);
  for (std::int64_t q2 : {5, 7, 9}) {
    RemainderKSums ks2 = remainder_ksums(w2, q2);
    auto rows2 = census_all(w2, q2);
    for (std::int64_t a = 0; a < q2; ++a)
      CHECK(std::abs(remainder_from_ksums(ks2, a) -
                     rows2[static_cast<std::size_t>(a)].remainder.to_double()) < 1e-6);
  }
}

TEST_CASE("spectral remainder with moduli sharing factors with the base") {
  // g = 10, q = 16: gcd(16, 99 * 10^3) = 8 captures only half the congruence,
  // and the surviving k are exactly the odd ones
  Window w(10, 3);
  auto ks = remainder_k_values(w, 16);
  CHECK(ks.size() == 8);
  for (std::int64_t k : ks) CHECK(k % 2 == 1);
  RemainderKSums sums = remainder_ksums(w, 16);
  auto rows = census_all(w, 16);
  for (std::int64_t a = 0; a < 16; ++a)
    CHECK(std::abs(remainder_from_ksums(sums, a) -
                   rows[static_cast<std::size_t>(a)].remainder.to_double()) < 1e-6);

  // q = 4 divides (g^2-1) g^N outright: empty k-sum, identically zero remainder
  CHECK(remainder_k_values(w, 4).empty());
  for (const auto& r : census_all(w, 4)) CHECK(r.remainder == Rat(0));

  // binary window with q = 20: only k divisible by 5 drop out
  Window w2(2, 9);
  auto ks2 = remainder_k_values(w2, 20);
  CHECK(ks2.size() == 16);
  RemainderKSums sums2 = remainder_ksums(w2, 20);
  auto rows2 = census_all(w2, 20);
  for (std::int64_t a = 0; a < 20; ++a)
    CHECK(std::abs(remainder_from_ksums(sums2, a) -
                   rows2[static_cast<std::size_t>(a)].remainder.to_double()) < 1e-6);
}

TEST_CASE("one thread and many threads produce identical remainders") {
  Window w(10, 4);
  Query query(3, 7);
  double one = remainder_spectral(w, query, 1);
  double four = remainder_spectral(w, query, 4);
  CHECK(one == four);  // fixed chunking makes this bit-exact
}

TEST_CASE("arc split: triangle inequality and count bookkeeping") {
  Window w(10, 4);
  ArcPartition part = dissect(w, 10, 50);
  ArcReport rep = arc_split_report(part, Query(3, 7));
  CHECK(rep.major_count + rep.minor_count == w.high());
  CHECK(rep.triangle_ok);
  CHECK(std::abs(rep.remainder) <= rep.r_major + rep.r_minor + 1e-6);
  CHECK(rep.r_major >= 0.0);
  CHECK(rep.r_minor >= 0.0);
  CHECK(std::isfinite(rep.major_p3_ratio));
  CHECK(rep.major_p3_ratio > 0.0);
  CHECK(rep.major_p3_ratio < 10.0);
  CHECK(std::isfinite(rep.minor_envelope_ratio));
  CHECK(rep.minor_envelope_ratio >= 0.0);

  // degenerate split: everything major means the minor sum vanishes
  ArcPartition allm = dissect(w, 100, 100);
  ArcReport rep2 = arc_split_report(allm, Query(3, 7));
  CHECK(rep2.r_minor == 0.0);
  CHECK(rep2.triangle_ok);

  // binary window, modulus with a partially captured congruence
  Window w2(2, 10);
  ArcPartition part2 = dissect(w2, 8, 32);
  ArcReport rep3 = arc_split_report(part2, Query(2, 9));
  CHECK(rep3.triangle_ok);
  CHECK(rep3.major_count + rep3.minor_count == w2.high());
  CHECK(std::isfinite(rep3.major_bound_ratio));
}

TEST_CASE("sn ratio rows are finite and positive") {
  Window w(10, 4);
  ArcPartition part = dissect(w, 10, 50);
  auto rows = sn_ratio_report(w, part, 40, 99);
  CHECK(!rows.empty());
  bool saw_eta_variant = false;
  for (const auto& r : rows) {
    CHECK(std::isfinite(r.slack));
    CHECK(r.slack >= 0.0);
    CHECK(r.rhs > 0.0);
    if (r.lemma_id == "sn_eta") saw_eta_variant = true;
  }
  CHECK(saw_eta_variant);

  // h = 0 is always sampled: |S_N(0)| = pi(g^N - 1) = 1229, r = 1, eta = 0
  REQUIRE(rows[0].lemma_id == "sn_pure");
  CHECK(rows[0].lhs == doctest::Approx(1229.0).epsilon(1e-9));
  CHECK(rows[0].params[1].second == 1.0);  // r
}

TEST_CASE("tally is identical across thread counts") {
  Window w(10, 5);
  auto one = reversed_prime_tally(w, 7, 1);
  auto four = reversed_prime_tally(w, 7, 4);
  CHECK(one == four);
  std::int64_t total = 0;
  for (auto c : one) total += c;
  CHECK(total == 9592 - 1229);  // primes between 10^4 and 10^5
}
