#include <doctest.h>

#include <cmath>

#include "rwre/environment.hpp"
#include "rwre/errors.hpp"
#include "rwre/rng.hpp"

using namespace rwre;

namespace {

GroupElement g(std::int32_t c) { return GroupElement({c}); }

// Oracle laws reused across the suite.
EnvironmentLaw deterministic_half_law() {
  // p(+1) = p(+2) = 1/2, a single deterministic atom on {1,2}.
  JumpSet jumps({g(1), g(2)});
  return EnvironmentLaw::mixture(jumps, {{1.0, SiteLaw{{0.5, 0.5}}}});
}

EnvironmentLaw two_atom_law() {
  // atoms (0.9,0.1)/(0.1,0.9) on {-1,+1} with weights 1/2.
  JumpSet jumps({g(-1), g(1)});
  return EnvironmentLaw::mixture(jumps, {{0.5, SiteLaw{{0.9, 0.1}}},
                                         {0.5, SiteLaw{{0.1, 0.9}}}});
}

EnvironmentLaw dirichlet21_law() {
  // alpha_{+1} = 2, alpha_{-1} = 1; canonical order is [-1], [1].
  JumpSet jumps({g(-1), g(1)});
  return EnvironmentLaw::dirichlet(jumps, {1.0, 2.0});
}

MultiIndex idx(std::vector<std::pair<std::int32_t, std::uint32_t>> items) {
  std::vector<MultiIndex::Entry> entries;
  for (auto& [c, n] : items) entries.push_back({g(c), n});
  return MultiIndex(std::move(entries));
}

}  // namespace

TEST_SUITE_BEGIN("environment");

TEST_CASE("law validation") {
  JumpSet jumps({g(-1), g(1)});
  CHECK_THROWS_AS(EnvironmentLaw::mixture(jumps, {{0.5, SiteLaw{{0.9, 0.1}}}}), ValidationError);
  CHECK_THROWS_AS(EnvironmentLaw::mixture(jumps, {{1.0, SiteLaw{{0.9, 0.2}}}}), ValidationError);
  CHECK_THROWS_AS(EnvironmentLaw::dirichlet(jumps, {1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(EnvironmentLaw::dirichlet(jumps, {1.0}), ValidationError);
}

TEST_CASE("mixed_moment: deterministic, mixture, dirichlet") {
  CHECK(mixed_moment(deterministic_half_law(), idx({{1, 3}})) == doctest::Approx(0.125));
  CHECK(mixed_moment(two_atom_law(), idx({{1, 2}})) == doctest::Approx(0.41));
  CHECK(mixed_moment(dirichlet21_law(), idx({{1, 2}})) == doctest::Approx(0.5));
  // Outside the support: zero.
  CHECK(mixed_moment(two_atom_law(), idx({{7, 1}})) == 0.0);
  CHECK(mixed_moment(two_atom_law(), MultiIndex{}) == doctest::Approx(1.0));
}

TEST_CASE("analytic_v examples") {
  CHECK(analytic_v(deterministic_half_law(), idx({{1, 4}, {2, 2}}), g(1)) == doctest::Approx(0.5));
  CHECK(analytic_v(two_atom_law(), MultiIndex{}, g(1)) == doctest::Approx(0.5));
  CHECK(analytic_v(two_atom_law(), idx({{1, 1}}), g(1)) == doctest::Approx(0.82));
  CHECK(analytic_v(dirichlet21_law(), MultiIndex{}, g(1)) == doctest::Approx(2.0 / 3.0));
  CHECK(analytic_v(dirichlet21_law(), idx({{1, 1}}), g(1)) == doctest::Approx(0.75));
}

TEST_CASE("analytic_v rejects impossible histories") {
  // Point-mass mixture on {1}: histories involving -1 have zero moment.
  JumpSet jumps({g(-1), g(1)});
  auto law = EnvironmentLaw::mixture(jumps, {{1.0, SiteLaw{{0.0, 1.0}}}});
  CHECK_THROWS_AS(analytic_v(law, idx({{-1, 1}}), g(1)), ImpossibleHistoryError);
}

TEST_CASE("V sums to one over the jump set") {
  for (const auto& law : {two_atom_law(), dirichlet21_law()}) {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      MultiIndex n = idx({{-1, static_cast<std::uint32_t>(rng.next_u64() % 5)},
                          {1, static_cast<std::uint32_t>(rng.next_u64() % 5)}});
      SiteLaw v = analytic_v_law(law, n);
      double sum = 0.0;
      for (double p : v.probs) sum += p;
      CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("dirichlet analytic_v equals the closed posterior-mean form") {
  Rng rng(11);
  JumpSet jumps({g(-1), g(0), g(1)});
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> alphas = {0.5 + rng.uniform() * 3, 0.5 + rng.uniform() * 3,
                                  0.5 + rng.uniform() * 3};
    auto law = EnvironmentLaw::dirichlet(jumps, alphas);
    MultiIndex n = idx({{-1, static_cast<std::uint32_t>(rng.next_u64() % 4)},
                        {0, static_cast<std::uint32_t>(rng.next_u64() % 4)},
                        {1, static_cast<std::uint32_t>(rng.next_u64() % 4)}});
    double asum = alphas[0] + alphas[1] + alphas[2];
    double total = static_cast<double>(n.total());
    for (std::size_t i = 0; i < jumps.size(); ++i) {
      double closed = (alphas[i] + n.count(jumps.at(i))) / (asum + total);
      CHECK(analytic_v(law, n, jumps.at(i)) == doctest::Approx(closed).epsilon(1e-12));
    }
  }
}

TEST_CASE("mixed moments agree with Monte Carlo over site-law draws") {
  // 20 random multi-indices of total <= 4, 10^5 draws each law, 3.5 sigma
  // guard band (fixed seed).
  const int draws = 100000;
  for (const auto& law : {two_atom_law(), dirichlet21_law()}) {
    Environment env(law, derive_substream(5150, "mc"));
    Rng rng(31337);
    std::vector<MultiIndex> indices;
    for (int i = 0; i < 20; ++i) {
      std::uint32_t a = rng.next_u64() % 3, b = rng.next_u64() % 3;
      if (a + b == 0) a = 1;
      indices.push_back(idx({{-1, a}, {1, b}}));
    }
    for (const auto& n : indices) {
      double sum = 0.0, sumsq = 0.0;
      for (int i = 0; i < draws; ++i) {
        const SiteLaw& site = env.site_law(g(static_cast<std::int32_t>(i)));
        double prod = 1.0;
        for (const auto& [jump, count] : n.entries()) {
          double p = site.prob_of(law.jumps(), jump);
          for (std::uint32_t k = 0; k < count; ++k) prod *= p;
        }
        sum += prod;
        sumsq += prod * prod;
      }
      double mean = sum / draws;
      double var = std::max(0.0, sumsq / draws - mean * mean);
      double se = std::sqrt(var / draws);
      double exact = mixed_moment(law, n);
      CHECK(std::fabs(mean - exact) <= 3.5 * se + 1e-12);
    }
  }
}

TEST_CASE("environment determinism and atom frequencies") {
  auto law = two_atom_law();
  Environment env1(law, 77), env2(law, 77);
  CHECK(env1.site_law(g(3)).probs == env2.site_law(g(3)).probs);
  CHECK(env1.site_law(g(3)).probs == env1.site_law(g(3)).probs);

  // Example-1 style coin toss: atom frequency ~ 1/2 over 10^4 sites.
  JumpSet jumps({g(1), g(2)});
  auto coin = EnvironmentLaw::mixture(jumps, {{0.5, SiteLaw{{1.0, 0.0}}},
                                              {0.5, SiteLaw{{0.0, 1.0}}}});
  Environment env(coin, 123);
  int first_atom = 0;
  const int sites = 10000;
  for (int i = 0; i < sites; ++i) {
    if (env.site_law(g(i)).probs[0] == 1.0) ++first_atom;
  }
  CHECK(std::fabs(first_atom / static_cast<double>(sites) - 0.5) <= 0.02);
}

TEST_CASE("single-atom degenerate law at any site") {
  JumpSet jumps({g(1)});
  auto law = EnvironmentLaw::mixture(jumps, {{1.0, SiteLaw{{1.0}}}});
  Environment env(law, 9);
  CHECK(env.site_law(g(-5)).probs == std::vector<double>{1.0});
  CHECK(env.site_law(g(12345)).probs == std::vector<double>{1.0});
}

TEST_CASE("R/T classification: paper examples") {
  auto rt = classify_r_t_analytic(JumpSet({g(1), g(-1)}), 8);
  CHECK(rt.r == JumpSet({g(1), g(-1)}));
  CHECK(rt.t.empty());

  rt = classify_r_t_analytic(JumpSet({g(1), g(2)}), 8);
  CHECK(rt.r.empty());
  CHECK(rt.t == JumpSet({g(1), g(2)}));

  rt = classify_r_t_analytic(JumpSet({g(0), g(1), g(2)}), 8);
  CHECK(rt.r == JumpSet({g(0)}));
  CHECK(rt.t == JumpSet({g(1), g(2)}));
}

TEST_CASE("R/T bound monotonicity and saturation certificate") {
  // -3 = 2+2+2 - 3*3: mixing {2,-3} reaches every integer; R should grow
  // with the bound and eventually cover both jumps.
  JumpSet jumps({g(2), g(-3)});
  JumpSet prev_r;
  for (int bound = 1; bound <= 6; ++bound) {
    auto rt = classify_r_t_analytic(jumps, bound);
    for (const auto& e : prev_r) CHECK(rt.r.contains(e));
    prev_r = rt.r;
  }
  CHECK(classify_r_t_analytic(jumps, 6).r == jumps);

  // A saturating case: {0} alone closes immediately.
  auto rt0 = classify_r_t_analytic(JumpSet({g(0)}), 3);
  CHECK(rt0.saturated);
  CHECK(rt0.r == JumpSet({g(0)}));
}

TEST_SUITE_END();
