// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures.  Tolerances are pinned in this file; nothing is calibrated at
// run time.  Optionally pass criterion numbers to run a subset.

#include <sys/wait.h>

#include <cinttypes>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>
#include <vector>

#include "gcdb/gcdb.hpp"

using namespace gcdb;

namespace {

int g_failures = 0;
std::set<int> g_selected;

bool selected(int criterion) { return g_selected.empty() || g_selected.count(criterion); }

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

int workers() { return resolve_workers(0); }

// ---------------------------------------------------------------------------

void criterion_1() {
  const auto w = density_estimate(1, 1, 4000, workers());
  const double target = 6.0 / (M_PI * M_PI);
  const bool pass = std::abs(w.estimate - target) <= 2e-3 &&
                    std::abs(w.target - target) <= 1e-9;
  report(1, pass, "visible density, b=1, T_4000 within 2e-3 of 6/pi^2",
         fmt("estimate=%.6f target=%.6f err=%.2e", w.estimate, target,
             std::abs(w.estimate - target)));
}

void criterion_2() {
  const auto w = density_estimate(2, 1, 2000, workers());
  const double zeta3 = zeta(3.0, 1e-9).value;  // own series oracle
  const double target = 1.0 / zeta3;
  const bool pass = std::abs(w.estimate - target) <= 5e-3;
  report(2, pass, "visible density, b=2, T_2000 within 5e-3 of 1/zeta(3)",
         fmt("estimate=%.6f target=%.6f err=%.2e", w.estimate, target,
             std::abs(w.estimate - target)));
}

void criterion_3() {
  const int64_t n = 2000;
  const auto hist = gcd_b_histogram(2, n, workers());
  const double zeta3 = zeta(3.0, 1e-9).value;
  long long partition = 0;
  for (int64_t k = 1; k <= n; ++k) partition += hist[static_cast<size_t>(k)];
  bool pass = partition == n * n;
  std::string detail = fmt("partition=%lld/%lld", partition, n * n);
  long long head = 0;
  for (int64_t k = 1; k <= 3; ++k) {
    const double est = static_cast<double>(hist[static_cast<size_t>(k)]) /
                       (static_cast<double>(n) * static_cast<double>(n));
    const double target = 1.0 / (static_cast<double>(k * k * k) * zeta3);
    const double err = std::abs(est - target);
    pass = pass && err <= 5e-3;
    head += hist[static_cast<size_t>(k)];
    detail += fmt(" k=%lld:err=%.2e", static_cast<long long>(k), err);
  }
  const long long remainder = n * n - head;
  pass = pass && remainder >= 0;
  detail += fmt(" k>=4 remainder=%lld", remainder);
  report(3, pass, "gcd_2 distribution, k in {1,2,3}, N=2000, exact partition", detail);
}

void criterion_4() {
  const int64_t n_max = 200;
  bool pass = true;
  long long comparisons = 0;
  std::string first_bad;
  for (int b = 1; b <= 3 && pass; ++b) {
    const SpfTable spf(n_max);
    std::vector<int64_t> gcd_table(static_cast<size_t>((n_max + 1) * (n_max + 1)));
    for (int64_t r = 1; r <= n_max; ++r)
      for (int64_t s = 1; s <= n_max; ++s)
        gcd_table[static_cast<size_t>(r * (n_max + 1) + s)] = gcd_b_with_spf(r, s, b, spf);

    const struct {
      const char* name;
      ArithTable table;
    } fs[] = {{"u", unit_table(n_max)},
              {"e", delta_table(n_max)},
              {"mu", mobius_sieve(n_max)},
              {"phi", phi_sieve(n_max)},
              {"floor-inverse", floor_inverse_table(n_max)}};
    for (const auto& f : fs) {
      const ArithTable g = dirichlet_convolve(f.table, mobius_sieve(n_max));
      long long naive = 0;
      for (int64_t n = 1; n <= n_max; ++n) {
        // grow the naive window sum by the new row, column, and corner
        for (int64_t s = 1; s < n; ++s)
          naive += f.table.at(gcd_table[static_cast<size_t>(n * (n_max + 1) + s)]);
        for (int64_t r = 1; r < n; ++r)
          naive += f.table.at(gcd_table[static_cast<size_t>(r * (n_max + 1) + n)]);
        naive += f.table.at(gcd_table[static_cast<size_t>(n * (n_max + 1) + n)]);
        const long long fast = lambda_g_weighted_sum(g, b, n);
        ++comparisons;
        if (fast != naive) {
          pass = false;
          first_bad = fmt("b=%d f=%s N=%lld fast=%lld naive=%lld", b, f.name,
                          static_cast<long long>(n), fast, naive);
          break;
        }
      }
      if (!pass) break;
    }
  }
  report(4, pass, "fast/naive oracle equality, N<=200, b in {1,2,3}, five tables",
         pass ? fmt("%lld exact comparisons", comparisons) : first_bad);
}

void criterion_5() {
  bool pass = true;
  std::string detail;
  // exact path against the naive double loop at small x
  for (int64_t x = 1; x <= 40 && pass; ++x) {
    BigInt naive = 0;
    for (int64_t r = 1; r <= x; ++r)
      for (int64_t s = 1; s <= x * x; ++s) naive += gcd_b(r, s, 2);
    if (naive != avg_gcd_b_exact(2, x)) {
      pass = false;
      detail = fmt("identity mismatch at x=%lld", static_cast<long long>(x));
    }
  }
  double prev = 1.0;
  for (int64_t x : {75, 150, 300}) {
    const double exact = static_cast<double>(avg_gcd_b_exact(2, x));
    const double main = avg_gcd_b_main_term(2, static_cast<double>(x));
    const double dev = std::abs(exact / main - 1.0);
    if (!(dev < prev)) pass = false;
    if (x == 300 && dev > 0.05) pass = false;
    detail += fmt(" x=%lld:dev=%.4f", static_cast<long long>(x), dev);
    prev = dev;
  }
  report(5, pass, "avg gcd_2 vs x^3 zeta(2)/zeta(3): <=5% at x=300, decreasing", detail);
}

void criterion_6() {
  // constants re-derived here, then the frozen values must agree
  const double gamma = euler_gamma_series();
  const double zp2 = zeta_prime_2_series();
  bool pass = std::abs(gamma - kEulerGamma) <= 1e-8 && std::abs(zp2 - kZetaPrime2) <= 1e-8;
  const double exact = static_cast<double>(avg_gcd_b_exact(1, 2000));
  const double main = avg_gcd_1_main_term(2000.0);
  const double rel = std::abs(exact / main - 1.0);
  pass = pass && rel <= 0.01;
  report(6, pass, "b=1 average gcd at x=2000 within 1% of the constant-built main term",
         fmt("gamma=%.10f zeta'(2)=%.10f rel=%.5f", gamma, zp2, rel));
}

void criterion_7() {
  const auto b1 = mean_connectivity_estimate(1, 4000, workers());
  const auto b2 = mean_connectivity_estimate(2, 2000, workers());
  const double t1 = 4.0 / zeta(2.0).value;
  const double t2 = 4.0 / zeta(3.0).value;
  const bool pass = std::abs(b1.estimate - t1) <= 0.02 && std::abs(b2.estimate - t2) <= 0.02;
  report(7, pass, "mean connectivity: b=1 N=4000 and b=2 N=2000 within 0.02",
         fmt("b1: %.5f vs %.5f; b2: %.5f vs %.5f", b1.estimate, t1, b2.estimate, t2));
}

void criterion_8() {
  const int64_t r0 = 6001645;
  const int64_t s0 = 49747967748324;
  bool pass = gcd_b(r0, s0, 2) == 1;
  const int64_t expected[8] = {19, 6, 11, 13, 5, 17, 2, 7};
  std::string detail = "ring:";
  for (int i = 0; i < 8; ++i) {
    const int64_t got =
        gcd_b(r0 + kRingOffsets[i].first, s0 + kRingOffsets[i].second, 2);
    pass = pass && got == expected[i];
    detail += fmt(" %" PRId64, got);
  }
  report(8, pass, "lonesome point (6001645, 49747967748324): exact ring gcd_2 values", detail);
}

void criterion_9() {
  const int64_t bound = 100000;
  const auto census = translate_mask_census(3, 4, 2, bound, bound, workers());

  // sanity: every recorded witness must actually show its mask
  bool pass = true;
  std::string detail;
  for (uint32_t mask = 0; mask < census.first_u.size() && pass; ++mask) {
    if (!census.seen(mask)) continue;
    const int64_t u = census.first_u[mask];
    const int64_t v = census.first_v[mask];
    for (int64_t s = 1; s <= 4 && pass; ++s) {
      for (int64_t r = 1; r <= 3; ++r) {
        const bool invisible = !is_b_visible(u + r, v + s, 2);
        const bool bit = mask & (uint32_t{1} << static_cast<uint32_t>((s - 1) * 3 + (r - 1)));
        if (invisible != bit) {
          pass = false;
          detail = fmt("census witness wrong at mask=%u u=%lld v=%lld", mask,
                       static_cast<long long>(u), static_cast<long long>(v));
        }
      }
    }
  }

  long long checked = 0, realized = 0, unrealizable = 0;
  for (int64_t w = 1; w <= 3 && pass; ++w) {
    for (int64_t h = 1; h <= 4 && pass; ++h) {
      if (h > w * w) continue;  // not a valid b-pattern box at b = 2
      const auto sub = project_census(census, w, h);
      const uint32_t nmasks = uint32_t{1} << static_cast<uint32_t>(w * h);
      for (uint32_t mask = 0; mask < nmasks && pass; ++mask) {
        BPattern pat = make_pattern(2, w, h, Cell::Circle);
        for (int64_t s = 1; s <= h; ++s)
          for (int64_t r = 1; r <= w; ++r)
            if (mask & (uint32_t{1} << static_cast<uint32_t>((s - 1) * w + (r - 1))))
              pat.set(r, s, Cell::Cross);
        ++checked;
        const auto rep = is_realizable(pat);
        if (!rep.realizable) {
          ++unrealizable;
          if (sub.seen(mask)) {
            pass = false;
            detail = fmt("w=%lld h=%lld mask=%u: search found a witness but criterion says no",
                         static_cast<long long>(w), static_cast<long long>(h), mask);
          }
          continue;
        }
        const auto real = realize(pat);
        const auto verify = verify_realization(pat, real.u, real.v, &real.prov);
        if (!verify.all_ok || verify.unverified != 0) {
          pass = false;
          detail = fmt("w=%lld h=%lld mask=%u: realize() output failed verification",
                       static_cast<long long>(w), static_cast<long long>(h), mask);
        }
        ++realized;
      }
    }
  }
  if (pass)
    detail = fmt("%lld patterns, %lld realized+verified, %lld confirmed unrealizable at bound 1e5",
                 checked, realized, unrealizable);
  report(9, pass, "exhaustive w<=3, h<=4, b=2: criterion vs translate search vs realize()",
         detail);
}

void criterion_10() {
  const auto bd = boundary_corollary_check(4, 4, 2);
  bool pass = !bd.realizable && bd.witness_prime == 2;

  // exhibit the complete rectangle mod (2,4) independently
  BPattern boundary = make_pattern(2, 4, 4, Cell::Cross);
  for (int64_t r = 1; r <= 4; ++r) {
    boundary.set(r, 1, Cell::Circle);
    boundary.set(r, 4, Cell::Circle);
  }
  for (int64_t s = 1; s <= 4; ++s) {
    boundary.set(1, s, Cell::Circle);
    boundary.set(4, s, Cell::Circle);
  }
  std::set<std::pair<int64_t, int64_t>> residues;
  for (const auto& c : boundary.marked(Cell::Circle)) residues.insert({c.r % 2, c.s % 4});
  pass = pass && residues.size() == 8;

  const auto sq = square_corollary_check(2, 2);
  pass = pass && sq.realizable && sq.discrepancy_stated;
  const auto witness = brute_force_realize(make_pattern(2, 2, 2, Cell::Circle), 100);
  pass = pass && witness.has_value() && witness->u == 1 && witness->v == 0;
  for (const auto& [r, s] : {std::pair<int64_t, int64_t>{2, 1}, {2, 2}, {3, 1}, {3, 2}})
    pass = pass && is_b_visible(r, s, 2);

  // the CLI must surface the discrepancy through exit code 2
  int exit_sq = -1;
  {
    const std::string cmd =
        std::string(GCDB_TOOL_PATH) + " pattern corollary-square --N 2 --b 2 >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    exit_sq = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  pass = pass && exit_sq == 2;
  report(10, pass, "corollary reports: boundary 4x4 impossible, square N=2 witness, exit 2",
         fmt("boundary witness p=%lld, residues=%zu/8, square realizable=%d, cli exit=%d",
             static_cast<long long>(bd.witness_prime), residues.size(), sq.realizable ? 1 : 0,
             exit_sq));
}

void criterion_11() {
  const auto row = largest_component_density(1, 2000, workers());
  const bool pass = row.largest_density >= 0.55 && row.largest_density <= 0.61 &&
                    row.largest_over_visible >= 0.93 && row.largest_over_visible <= 0.99;
  report(11, pass, "Vardi bands: b=1 N=2000 density in [0.55,0.61], ratio in [0.93,0.99]",
         fmt("density=%.5f ratio=%.5f", row.largest_density, row.largest_over_visible));
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) g_selected.insert(std::atoi(argv[i]));
  if (selected(1)) criterion_1();
  if (selected(2)) criterion_2();
  if (selected(3)) criterion_3();
  if (selected(4)) criterion_4();
  if (selected(5)) criterion_5();
  if (selected(6)) criterion_6();
  if (selected(7)) criterion_7();
  if (selected(8)) criterion_8();
  if (selected(9)) criterion_9();
  if (selected(10)) criterion_10();
  if (selected(11)) criterion_11();
  std::printf("%s: %d failure(s)\n", g_failures ? "RESULT FAIL" : "RESULT PASS", g_failures);
  return g_failures;
}
