// Acceptance suite: one line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "entanglekit/geomviz.hpp"
#include "entanglekit/locc.hpp"
#include "entanglekit/measures.hpp"
#include "entanglekit/sampling.hpp"
#include "entanglekit/separability.hpp"
#include "entanglekit/states.hpp"

using namespace entanglekit;

namespace {

struct Result {
  bool ok = true;
  std::string detail;
  int failures = 0;

  void check(bool cond, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Result::check(bool cond, const char* fmt, ...) {
  if (cond) return;
  ok = false;
  if (++failures > 4) {
    if (failures == 5) detail += "; ...";
    return;
  }
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  if (!detail.empty()) detail += "; ";
  detail += buf;
}

std::vector<double> grid(int points) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(double(i) / (points - 1));
  return g;
}

bool detected(const CriterionVerdict& v) { return v.outcome == Outcome::EntanglementDetected; }

// 1
Result werner_threshold() {
  Result r;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (detected(ppt_criterion(werner(2, mid), 0.0)) ? hi : lo) = mid;
  }
  r.check(std::abs(hi - 1.0 / 3.0) < 1e-9, "boundary at %.12f", hi);
  for (double x : grid(21)) {
    const auto ev = hermitian_eigenvalues(partial_transpose(werner(2, x), Side::A));
    std::vector<double> want{(1 + x) / 4, (1 + x) / 4, (1 + x) / 4, (1 - 3 * x) / 4};
    std::sort(want.rbegin(), want.rend());
    for (int i = 0; i < 4; ++i) r.check(std::abs(ev[i] - want[i]) < 1e-10, "PT eig x=%g", x);
  }
  return r;
}

// 2
Result werner_measures() {
  Result r;
  for (double x : grid(21)) {
    const DensityMatrix rho = werner(2, x);
    const double want = std::max(0.0, (3 * x - 1) / 2);
    const double c = concurrence_2q(rho);
    r.check(std::abs(c - want) < 1e-10, "C x=%g: %.3e", x, c - want);
    r.check(std::abs(negativity(rho) - want) < 1e-10, "N x=%g", x);
    r.check(std::abs(eof_2q(rho) - eof_from_concurrence(c)) < 1e-12, "EoF x=%g", x);
  }
  return r;
}

// 3
Result sigma_h_family() {
  Result r;
  for (int i = 0; i <= 10; ++i) {
    const double a = i / 10.0;
    const DensityMatrix rho = sigma_h(a);
    r.check(std::abs(concurrence_2q(rho) - a) < 1e-9, "C a=%g", a);
    const double n = std::sqrt((1 - a) * (1 - a) + a * a) + a - 1;
    r.check(std::abs(negativity(rho) - n) < 1e-9, "N a=%g", a);
    r.check(eof_2q(rho) >= er_sigma_h(a) - 1e-9, "EoF < ER a=%g", a);
  }
  return r;
}

// 4
Result sigma_b_family() {
  Result r;
  for (double b : grid(11)) {
    const DensityMatrix rho = sigma_b(b);
    const double fm = std::max(b, 1 - b);
    r.check(std::abs(max_fidelity_2q(rho) - fm) < 1e-9, "Fm b=%g", b);
    r.check(std::abs(concurrence_2q(rho) - (2 * fm - 1)) < 1e-9, "C b=%g", b);
    r.check(std::abs(negativity(rho) - (2 * fm - 1)) < 1e-9, "N b=%g", b);
  }
  return r;
}

// 5
Result rho_m_family() {
  Result r;
  for (double y : grid(11)) {
    const DensityMatrix rho = rho_m(y);
    r.check(std::abs(concurrence_2q(rho) - y) < 1e-9, "C y=%g", y);
    const double p = y <= 2.0 / 3.0 ? 1.0 / 3.0 + y * y / 2 : 1 - 2 * y * (1 - y);
    r.check(std::abs(rho.purity() - p) < 1e-10, "purity y=%g", y);
  }
  return r;
}

// 6
Result pure_identities() {
  Result r;
  Rng rng(6);
  double halved = 0.0;
  for (int n : {2, 3}) {
    for (int k = 0; k < 1000; ++k) {
      const PureState psi = random_pure({n, n}, rng);
      const DensityMatrix rho = DensityMatrix::from_pure(psi);
      const double half = std::exp(renyi_entanglement(psi, 0.5)) - 1;
      const double nt = negativity(rho), nr = reshuffling_negativity(rho);
      r.check(std::abs(nt - half) < 1e-8 && std::abs(nr - half) < 1e-8, "negativity N=%d k=%d", n, k);
      const double e2 = renyi_entanglement(psi, 2.0);
      const double db = std::sqrt(2 - 2 * std::exp(-e2));
      // the half-exponent variant does not reduce to the concurrence
      halved = std::max(halved, std::abs(std::sqrt(2 - 2 * std::exp(-e2 / 2)) - concurrence_pure(psi)));
      r.check(std::abs(bures_distance_to_separable(psi) - db) < 1e-8, "Bures N=%d k=%d", n, k);
      r.check(std::abs(concurrence_pure(psi) - db) < 1e-8, "concurrence N=%d k=%d", n, k);
    }
  }
  std::printf("    sqrt(2-2exp(-E2/2)) vs concurrence: max deviation %.3e\n", halved);
  for (int n = 2; n <= 6; ++n) {
    const double nt = negativity(DensityMatrix::from_pure(max_entangled(n)));
    r.check(std::abs(nt - (n - 1)) < 1e-9, "max entangled N=%d", n);
  }
  return r;
}

// 7
constexpr double kTilesReshuffling = 0.087412464837522;

Result tiles_fixture() {
  Result r;
  const DensityMatrix rho = tiles_upb_state();
  r.check(std::abs(rho.matrix().trace().real() - 1) < 1e-12, "trace");
  const auto spec = rho.spectrum();
  int rank = 0;
  for (double v : spec) rank += v > 1e-10;
  r.check(rank == 4, "rank %d", rank);
  const auto pt = ppt_criterion(rho);
  r.check(pt.evidence >= -1e-10, "PT min eig %.3e", pt.evidence);
  for (const auto& v : tiles_upb_vectors()) {
    r.check((rho.matrix() * v).norm() < 1e-12, "not orthogonal to UPB vector");
  }
  const auto rs = reshuffling_criterion(rho);
  std::printf("    tiles reshuffling evidence %.15f (%s)\n", rs.evidence, to_string(rs.outcome));
  r.check(std::abs(rs.evidence - kTilesReshuffling) < 1e-10, "reshuffling evidence %.15f", rs.evidence);
  r.check(detected(rs), "reshuffling does not detect");
  return r;
}

// 8
Result insphere() {
  Result r;
  const DensityMatrix w = werner(2, 1.0 / 3.0);
  const double d2 = d2_distance(w, DensityMatrix::maximally_mixed({2, 2}));
  r.check(std::abs(d2 - 1 / std::sqrt(24.0)) < 1e-10, "d2 %.15f", d2);
  r.check(std::abs(d2 - insphere_radius(4)) < 1e-10, "not on insphere");
  Rng rng(8);
  int inside = 0;
  for (int k = 0; k < 10000; ++k) {
    const DensityMatrix rho = random_density_hs({2, 2}, rng);
    const bool ball = in_separable_ball(rho);
    r.check(ball == (mehta_ball_test(rho) == BallMembership::InsideSeparableBall), "ball tests disagree k=%d", k);
    if (ball) {
      ++inside;
      r.check(!detected(ppt_criterion(rho)), "NPT inside ball k=%d", k);
    }
  }
  std::printf("    %d of 10000 states inside the ball\n", inside);
  return r;
}

// 9
Result orbit_table() {
  Result r;
  struct Row { int n; std::vector<int> m; int d; };
  const std::vector<Row> rows{{2, {0, 1, 1}, 5}, {2, {1, 1}, 4}, {2, {0, 2}, 3},
                              {3, {0, 1, 1, 1}, 14}, {3, {1, 1, 1}, 13}, {3, {0, 1, 2}, 12},
                              {3, {1, 2}, 11}, {3, {2, 1}, 8}, {3, {0, 3}, 8}};
  for (const auto& row : rows) {
    const int d = orbit_dimension(row.n, row.m);
    r.check(d == row.d, "N=%d m0=%d: %d != %d", row.n, row.m[0], d, row.d);
  }
  return r;
}

// 10
Result locc_probability() {
  Result r;
  const double p = vidal_probability(SchmidtVector({0.7, 0.25, 0.05}), SchmidtVector({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  r.check(std::abs(p - 0.15) < 1e-12, "p_c %.15f", p);
  Rng rng(10);
  int convertible = 0;
  for (int k = 0; k < 10000; ++k) {
    const int n = 2 + k % 4;
    const auto a = SchmidtVector::of(random_pure({n, n}, rng));
    const auto b = SchmidtVector::of(random_pure({n, n}, rng));
    const double pc = vidal_probability(a, b);
    const bool nc = nielsen_convertible(a, b);
    convertible += nc;
    r.check((pc == 1.0) == nc, "p_c=%.17g nielsen=%d k=%d", pc, int(nc), k);
  }
  std::printf("    %d of 10000 pairs convertible\n", convertible);
  for (int n = 2; n <= 5; ++n) {
    std::vector<double> src(n, 0.0), tgt(n, 1.0 / n);
    src[0] = 0.6;
    src[1] = 0.4;
    if (n == 2) tgt = {0.5, 0.5}, src = {1.0, 0.0};
    r.check(vidal_probability(SchmidtVector(src), SchmidtVector(tgt)) == 0.0, "rank increase n=%d", n);
  }
  return r;
}

// 11
Result monte_carlo() {
  Result r;
  SamplingSpec spec;
  spec.n = 100000;
  spec.seed = 11;
  const auto c = mc_average(MeasureId::Concurrence, spec);
  const auto n = mc_average(MeasureId::Negativity, spec);
  const auto e = mc_average(MeasureId::EntanglementEntropy, spec);
  const double want = 3 * std::numbers::pi / 16;
  std::printf("    <C>=%.5f+-%.5f  <N>=%.5f+-%.5f  <E>=%.5f+-%.5f\n", c.mean, c.standard_error, n.mean,
              n.standard_error, e.mean, e.standard_error);
  r.check(std::abs(c.mean - want) < 3 * c.standard_error, "<C>");
  r.check(std::abs(n.mean - want) < 3 * n.standard_error, "<N>");
  r.check(std::abs(e.mean - 1.0 / 3.0) < 3 * e.standard_error, "<E>");
  return r;
}

// 12
Result bound_suite() {
  Result r;
  Rng rng(12);
  int bad_neg = 0, bad_fid = 0;
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const DensityMatrix rho = random_density_hs({2, 2}, rng);
    const double c = concurrence_2q(rho), n = negativity(rho), f = max_fidelity_2q(rho);
    if (!(c >= n - 1e-9 && n >= neg_lower_bound(c) - 1e-9)) ++bad_neg;
    const Interval iv = fid_bounds_from_c(c);
    if (!(f <= iv.hi + 1e-9 && f >= iv.lo - 1e-9)) {
      ++bad_fid;
      worst = std::max(worst, iv.lo - f);
    }
  }
  r.check(bad_neg == 0, "%d concurrence/negativity violations", bad_neg);
  r.check(bad_fid == 0, "%d fidelity violations (worst %.3e)", bad_fid, worst);
  return r;
}

// 13
Result oracle_equivalence() {
  Result r;
  Rng rng(13);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = random_density_hs({2, 2}, rng);
    EofSearchConfig cfg;
    cfg.seed = 1000 + k;
    const double diff = std::abs(eof_ensemble_search(rho, cfg) - eof_2q(rho));
    worst = std::max(worst, diff);
  }
  std::printf("    EoF search worst deviation %.3e\n", worst);
  r.check(worst < 1e-3, "EoF search deviation %.3e", worst);
  double worst_f = 0.0;
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho = random_density_hs({2, 2}, rng);
    const double exact = max_fidelity_2q(rho);
    const double brute = max_fidelity_bruteforce(rho, 100000, 2000 + k);
    r.check(brute <= exact + 1e-12, "brute force exceeds closed form k=%d", k);
    worst_f = std::max(worst_f, exact - brute);
  }
  std::printf("    fidelity brute force worst gap %.3e\n", worst_f);
  r.check(worst_f < 2e-3, "fidelity gap %.3e", worst_f);
  return r;
}

// 14
Result criterion_soundness() {
  Result r;
  Rng rng(14);
  const std::vector<BipartiteDims> dims{{2, 2}, {2, 3}, {3, 3}, {2, 4}};
  int detections = 0;
  for (int k = 0; k < 10000; ++k) {
    const BipartiteDims d = dims[k % dims.size()];
    const DensityMatrix rho = random_separable(d, 1 + k % 6, rng);
    const auto rep = aggregate_report(rho);
    for (const auto& v : rep.verdicts) {
      if (detected(v)) {
        ++detections;
        r.check(false, "%s detects separable state k=%d (%.3e)", v.criterion.c_str(), k, v.evidence);
      }
    }
    if (detections > 5) break;
  }
  for (auto kind : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus}) {
    const auto rep = aggregate_report(DensityMatrix::from_pure(bell(kind)));
    for (const auto& v : rep.verdicts) {
      r.check(v.outcome != Outcome::Passed, "%s misses Bell state", v.criterion.c_str());
    }
    r.check(rep.aggregate == Aggregate::Entangled, "aggregate");
  }
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
      {"werner threshold", werner_threshold},
      {"werner measures", werner_measures},
      {"sigma_H family", sigma_h_family},
      {"sigma_B family", sigma_b_family},
      {"rho_M family", rho_m_family},
      {"pure-state identities", pure_identities},
      {"tiles UPB fixture", tiles_fixture},
      {"separable ball", insphere},
      {"orbit dimensions", orbit_table},
      {"LOCC probability", locc_probability},
      {"Monte Carlo averages", monte_carlo},
      {"bound suite", bound_suite},
      {"oracle equivalence", oracle_equivalence},
      {"criterion soundness", criterion_soundness},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = fn();
    } catch (const std::exception& e) {
      res.ok = false;
      res.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %-24s %8.2fs %s\n", res.ok ? "PASS" : "FAIL", index++, name, secs, res.detail.c_str());
    std::fflush(stdout);
    failed += !res.ok;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
