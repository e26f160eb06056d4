// Command-line front end: reproducible experiment runner over the library,
// emitting JSON (default) or CSV rows with every estimate next to its
// analytic target.  Exit codes: 0 success, 1 error, 2 when a corollary
// checker reports a discrepancy between criterion and stated condition.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcdb/gcdb.hpp"

using nlohmann::json;
using namespace gcdb;

namespace {

constexpr const char* kSchema = "gcdb-lab/1";
constexpr const char* kCsvHeader = "op,b,k,f,N,x,estimate,target,abs_error,flagged";

struct GlobalOpts {
  std::string format = "json";
  int workers = 0;  // 0: resolve from hardware
  uint64_t seed = 0;
  int64_t trunc_k = 100;
  int64_t factor_budget_ms = 2000;
  int64_t bound = 100000;
};

int workers_or_env(const GlobalOpts& g) {
  if (g.workers > 0) return g.workers;
  if (const char* env = std::getenv("GCDB_LAB_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return resolve_workers(0);
}

// budget in milliseconds maps to a fixed iteration count so runs stay
// deterministic across machines
uint64_t rho_budget_from_ms(int64_t ms) { return static_cast<uint64_t>(ms) * 20000ull; }

std::string target_formula(const WindowStats& w) {
  if (w.op == "density") return "1/(k^(b+1) zeta(b+1))";
  if (w.op == "set_density") return "zeta_S(b+1)/zeta(b+1)";
  if (w.op == "mean_connectivity") return "4/zeta(b+1)";
  if (w.op.rfind("mean_value", 0) == 0) return "zeta_f(b+1)/zeta(b+1)";
  return "";
}

json stats_json(const WindowStats& w) {
  json j;
  j["op"] = w.op;
  j["b"] = w.b;
  j["N"] = w.n;
  if (w.k > 0) j["k"] = w.k;
  j["raw_sum"] = w.raw_sum;
  j["estimate"] = w.estimate;
  j["target"] = w.target;
  if (const auto formula = target_formula(w); !formula.empty()) j["target_formula"] = formula;
  j["abs_error"] = w.abs_error;
  j["flagged"] = w.flagged;
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

std::string csv_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string stats_csv_row(const WindowStats& w, const std::string& f_name = "",
                          int64_t x_val = 0) {
  std::ostringstream os;
  os << w.op << ',' << w.b << ',' << (w.k > 0 ? std::to_string(w.k) : "") << ',' << f_name << ','
     << w.n << ',' << (x_val > 0 ? std::to_string(x_val) : "") << ',' << csv_num(w.estimate)
     << ',' << csv_num(w.target) << ',' << csv_num(w.abs_error) << ',' << (w.flagged ? 1 : 0);
  return os.str();
}

void emit_stats(const GlobalOpts& g, const std::vector<WindowStats>& rows,
                const std::string& f_name = "", int64_t x_val = 0) {
  if (g.format == "csv") {
    std::cout << kCsvHeader << "\n";
    for (const auto& w : rows) std::cout << stats_csv_row(w, f_name, x_val) << "\n";
    return;
  }
  json out;
  out["schema"] = kSchema;
  out["seed"] = g.seed;
  if (rows.size() == 1) {
    out.update(stats_json(rows[0]));
  } else {
    out["op"] = rows.empty() ? "" : rows[0].op;
    json arr = json::array();
    for (const auto& w : rows) arr.push_back(stats_json(w));
    out["rows"] = arr;
  }
  std::cout << out.dump() << "\n";
}

ArithTable table_from_name(const std::string& name, int64_t n, int64_t k) {
  if (name == "unit") return unit_table(n);
  if (name == "floor-inverse") return floor_inverse_table(n);
  if (name == "phi") return phi_sieve(n);
  if (name == "mobius") return mobius_sieve(n);
  if (name == "indicator-k") {
    if (k < 1) throw std::invalid_argument("indicator-k needs --k >= 1");
    return scaled_indicator_table(n, k);
  }
  throw std::invalid_argument("unknown f-name '" + name +
                              "' (choose unit, indicator-k, floor-inverse, phi, mobius)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read pattern file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json pattern_json(const BPattern& p) {
  json j;
  j["b"] = p.b;
  j["w"] = p.w;
  j["h"] = p.h;
  j["circles"] = p.count(Cell::Circle);
  j["crosses"] = p.count(Cell::Cross);
  return j;
}

json verify_json(const VerifyReport& rep) {
  json cells = json::array();
  for (const auto& c : rep.cells) {
    json cj;
    cj["r"] = c.r;
    cj["s"] = c.s;
    cj["cell"] = c.cell == Cell::Circle ? "circle" : "cross";
    cj["verdict"] = c.verdict == CellVerdict::Ok
                        ? "ok"
                        : (c.verdict == CellVerdict::Violated ? "violated" : "unverified");
    if (c.detail != 0) cj["detail"] = c.detail.str();
    cells.push_back(cj);
  }
  json j;
  j["all_ok"] = rep.all_ok;
  j["violated"] = rep.violated;
  j["unverified"] = rep.unverified;
  j["cells"] = cells;
  return j;
}

json realization_json(const Realization& real) {
  json j;
  j["u"] = real.u.str();
  j["v"] = real.v.str();
  json s1 = json::array();
  for (const auto& m : real.prov.stage1)
    s1.push_back({{"p", m.p}, {"r_res", m.r_res}, {"s_res", m.s_res}});
  json s2 = json::array();
  for (const auto& [cell, q] : real.prov.stage2)
    s2.push_back({{"r", cell.r}, {"s", cell.s}, {"q", q}});
  json s3 = json::array();
  for (const auto& q : real.prov.stage3) s3.push_back(q.str());
  j["congruences"] = {{"stage1_avoided_residues", s1},
                      {"stage2_planted_primes", s2},
                      {"stage3_extra_primes", s3},
                      {"u_modulus", real.prov.u_modulus.str()},
                      {"v_modulus", real.prov.v_modulus.str()}};
  return j;
}

json corollary_json(const CorollaryReport& rep) {
  json j;
  j["op"] = "pattern.corollary-" + rep.name;
  j["b"] = rep.b;
  j["M"] = rep.m;
  j["N"] = rep.n;
  j["realizable"] = rep.realizable;
  j["stated_condition"] = rep.stated_condition;
  if (rep.has_proof_variant) j["proof_condition"] = rep.proof_condition;
  j["discrepancy_vs_stated"] = rep.discrepancy_stated;
  if (rep.has_proof_variant) j["discrepancy_vs_proof"] = rep.discrepancy_proof;
  if (rep.witness_prime > 0) j["witness_prime"] = rep.witness_prime;
  return j;
}

std::vector<int64_t> parse_schedule(const std::string& spec) {
  std::vector<int64_t> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoll(tok));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gcd_b laboratory: lattice visibility statistics and b-patterns"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--workers", g.workers, "worker threads (default: GCDB_LAB_WORKERS or hardware)");
  app.add_option("--seed", g.seed, "random-probe seed recorded in the output");
  app.add_option("--trunc-K", g.trunc_k, "series truncation for set/sphere targets");
  app.add_option("--factor-budget-ms", g.factor_budget_ms,
                 "stage-3 factorization budget (mapped to a fixed iteration count)");
  app.add_option("--bound", g.bound, "search bound for brute-force pattern scans");

  // --- zeta ---
  auto* cmd_zeta = app.add_subcommand("zeta", "Riemann zeta with a rigorous tail bound");
  double zeta_s = 2.0;
  double zeta_tail = 1e-9;
  cmd_zeta->add_option("--s", zeta_s)->required();
  cmd_zeta->add_option("--tail", zeta_tail);

  // --- density ---
  auto* cmd_density = app.add_subcommand("density", "density of gcd_b = k (or gcd_b in S) over T_N");
  int den_b = 1;
  int64_t den_k = 1, den_n = 1000;
  std::string den_schedule, den_set;
  cmd_density->add_option("--b", den_b)->required();
  cmd_density->add_option("--k", den_k);
  cmd_density->add_option("--N", den_n)->required();
  cmd_density->add_option("--schedule", den_schedule, "comma-separated N values");
  cmd_density->add_option("--set", den_set,
                          "membership set: even, odd, square, or a comma list; "
                          "target series truncated at --trunc-K");

  // --- mean-value ---
  auto* cmd_mean = app.add_subcommand("mean-value", "window mean of f(gcd_b) vs zeta ratio");
  std::string mean_f = "floor-inverse";
  int mean_b = 1;
  int64_t mean_n = 1000, mean_k = 0;
  std::string mean_schedule;
  cmd_mean->add_option("--f", mean_f, "unit | indicator-k | floor-inverse | phi | mobius");
  cmd_mean->add_option("--b", mean_b)->required();
  cmd_mean->add_option("--N", mean_n)->required();
  cmd_mean->add_option("--k", mean_k, "k for indicator-k");
  cmd_mean->add_option("--schedule", mean_schedule);

  // --- avg-gcd ---
  auto* cmd_avg = app.add_subcommand("avg-gcd", "average gcd_b over the x by x^b box");
  int avg_b = 2;
  int64_t avg_x = 100;
  std::string avg_schedule;
  cmd_avg->add_option("--b", avg_b)->required();
  cmd_avg->add_option("--x", avg_x)->required();
  cmd_avg->add_option("--schedule", avg_schedule);

  // --- pattern ---
  auto* cmd_pattern = app.add_subcommand("pattern", "b-pattern realizability toolbox");
  cmd_pattern->require_subcommand(1);
  std::string pat_file;
  std::string pat_u = "0", pat_v = "0";
  int64_t cor_n = 2, cor_m = 2;
  int cor_b = 2;
  auto* pat_check = cmd_pattern->add_subcommand("check", "realizability criterion");
  pat_check->add_option("--file", pat_file)->required();
  auto* pat_realize = cmd_pattern->add_subcommand("realize", "construct a translate by CRT");
  pat_realize->add_option("--file", pat_file)->required();
  auto* pat_verify = cmd_pattern->add_subcommand("verify", "verify a translate cell by cell");
  pat_verify->add_option("--file", pat_file)->required();
  pat_verify->add_option("--u", pat_u)->required();
  pat_verify->add_option("--v", pat_v)->required();
  auto* pat_brute = cmd_pattern->add_subcommand("brute", "translate scan up to --bound");
  pat_brute->add_option("--file", pat_file)->required();
  auto* pat_sq = cmd_pattern->add_subcommand("corollary-square", "all-circle N x N square");
  pat_sq->add_option("--N", cor_n)->required();
  pat_sq->add_option("--b", cor_b)->required();
  auto* pat_bd = cmd_pattern->add_subcommand("corollary-boundary",
                                             "circle boundary, cross interior M x N");
  pat_bd->add_option("--M", cor_m)->required();
  pat_bd->add_option("--N", cor_n)->required();
  pat_bd->add_option("--b", cor_b)->required();

  // --- graph ---
  auto* cmd_graph = app.add_subcommand("graph", "the unit-distance graph on b-visible points");
  cmd_graph->require_subcommand(1);
  int graph_b = 1;
  int64_t graph_n = 1000;
  std::string lonesome_strategy = "scan";
  auto* graph_conn = cmd_graph->add_subcommand("connectivity", "mean visible-neighbor count");
  graph_conn->add_option("--b", graph_b)->required();
  graph_conn->add_option("--N", graph_n)->required();
  auto* graph_comp = cmd_graph->add_subcommand("components", "connected components of T_N");
  std::string dump_pbm, dump_pgm;
  graph_comp->add_option("--b", graph_b)->required();
  graph_comp->add_option("--N", graph_n)->required();
  graph_comp->add_option("--dump-visibility-pbm", dump_pbm, "write the visibility bitmap as P1");
  graph_comp->add_option("--dump-labels-pgm", dump_pgm, "write component labels as P2");
  auto* graph_lone = cmd_graph->add_subcommand("lonesome", "find a fully fenced visible point");
  graph_lone->add_option("--b", graph_b)->required();
  graph_lone->add_option("--N", graph_n, "scan window edge (scan strategy)");
  graph_lone->add_option("--strategy", lonesome_strategy)
      ->check(CLI::IsMember({"scan", "construct"}));

  // let the global flags (--format, --workers, ...) appear after subcommands
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* inner : sub->get_subcommands({})) inner->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const int workers = workers_or_env(g);

    if (cmd_zeta->parsed()) {
      const auto z = zeta(zeta_s, zeta_tail);
      json out;
      out["schema"] = kSchema;
      out["op"] = "zeta";
      out["s"] = z.s;
      out["value"] = z.value;
      out["terms_used"] = z.terms_used;
      out["tail_bound"] = z.tail_bound;
      out["seed"] = g.seed;
      std::cout << out.dump() << "\n";
      return 0;
    }

    if (cmd_density->parsed()) {
      std::vector<int64_t> ns = den_schedule.empty() ? std::vector<int64_t>{den_n}
                                                     : parse_schedule(den_schedule);
      std::vector<WindowStats> rows;
      if (!den_set.empty()) {
        std::function<bool(int64_t)> member;
        if (den_set == "even")
          member = [](int64_t k) { return k % 2 == 0; };
        else if (den_set == "odd")
          member = [](int64_t k) { return k % 2 == 1; };
        else if (den_set == "square")
          member = [](int64_t k) {
            const auto r = static_cast<int64_t>(std::sqrt(static_cast<double>(k)));
            return r * r == k || (r + 1) * (r + 1) == k;
          };
        else {
          const auto list = parse_schedule(den_set);
          std::set<int64_t> items(list.begin(), list.end());
          member = [items](int64_t k) { return items.count(k) > 0; };
        }
        for (int64_t n : ns) {
          auto res = set_density_estimate(den_b, member, g.trunc_k, n, workers);
          res.stats.note = "target series truncated at K=" + std::to_string(g.trunc_k) +
                           ", tail bound " + csv_num(res.target_tail_bound);
          rows.push_back(res.stats);
        }
      } else {
        for (int64_t n : ns) rows.push_back(density_estimate(den_b, den_k, n, workers));
      }
      emit_stats(g, rows);
      return 0;
    }

    if (cmd_mean->parsed()) {
      std::vector<int64_t> ns = mean_schedule.empty() ? std::vector<int64_t>{mean_n}
                                                      : parse_schedule(mean_schedule);
      std::vector<WindowStats> rows;
      for (int64_t n : ns)
        rows.push_back(mean_value_estimate(table_from_name(mean_f, n, mean_k), mean_f, mean_b, n,
                                           workers));
      emit_stats(g, rows, mean_f);
      return 0;
    }

    if (cmd_avg->parsed()) {
      std::vector<int64_t> xs =
          avg_schedule.empty() ? std::vector<int64_t>{avg_x} : parse_schedule(avg_schedule);
      if (g.format == "csv") std::cout << kCsvHeader << "\n";
      json arr = json::array();
      for (int64_t x : xs) {
        const BigInt exact = avg_gcd_b_exact(avg_b, x);
        const double main = avg_b == 1 ? avg_gcd_1_main_term(static_cast<double>(x))
                                       : avg_gcd_b_main_term(avg_b, static_cast<double>(x));
        const double est = static_cast<double>(exact);
        if (g.format == "csv") {
          WindowStats w = make_window_stats("avg_gcd", avg_b, 0, 0, 0, est, main);
          std::cout << stats_csv_row(w, "", x) << "\n";
        } else {
          json row;
          row["op"] = "avg_gcd";
          row["b"] = avg_b;
          row["x"] = x;
          row["exact"] = exact.str();
          row["main_term"] = main;
          row["ratio"] = est / main;
          row["error_scale"] =
              avg_b == 1 ? "x^(1+theta+eps), 1/4 <= theta <= 131/416"
                         : (avg_b == 2 ? "x^2 log x" : "x^b");
          arr.push_back(row);
        }
      }
      if (g.format == "json") {
        json out;
        out["schema"] = kSchema;
        out["op"] = "avg_gcd";
        out["seed"] = g.seed;
        out["rows"] = arr;
        std::cout << out.dump() << "\n";
      }
      return 0;
    }

    if (cmd_pattern->parsed()) {
      json out;
      out["schema"] = kSchema;
      out["seed"] = g.seed;
      int exit_code = 0;
      if (pat_check->parsed()) {
        const BPattern p = parse_pattern(read_file(pat_file));
        const auto rep = is_realizable(p);
        out["op"] = "pattern.check";
        out["pattern"] = pattern_json(p);
        out["realizable"] = rep.realizable;
        if (!rep.realizable) out["witness_prime"] = rep.witness_prime;
        json missing = json::array();
        for (const auto& m : rep.missing)
          missing.push_back({{"p", m.p}, {"r_res", m.r_res}, {"s_res", m.s_res}});
        out["missing_residues"] = missing;
      } else if (pat_realize->parsed()) {
        const BPattern p = parse_pattern(read_file(pat_file));
        RealizeOptions opt;
        opt.rho_iteration_budget = rho_budget_from_ms(g.factor_budget_ms);
        const auto real = realize(p, opt);
        out["op"] = "pattern.realize";
        out["pattern"] = pattern_json(p);
        out.update(realization_json(real));
        out["verify"] = verify_json(verify_realization(p, real.u, real.v, &real.prov));
      } else if (pat_verify->parsed()) {
        const BPattern p = parse_pattern(read_file(pat_file));
        const auto rep = verify_realization(p, BigInt(pat_u), BigInt(pat_v));
        out["op"] = "pattern.verify";
        out["pattern"] = pattern_json(p);
        out["u"] = pat_u;
        out["v"] = pat_v;
        out.update(verify_json(rep));
      } else if (pat_brute->parsed()) {
        const BPattern p = parse_pattern(read_file(pat_file));
        const auto t = brute_force_realize(p, g.bound);
        out["op"] = "pattern.brute";
        out["pattern"] = pattern_json(p);
        out["bound"] = g.bound;
        out["found"] = t.has_value();
        if (t) {
          out["u"] = t->u;
          out["v"] = t->v;
        }
      } else if (pat_sq->parsed()) {
        const auto rep = square_corollary_check(cor_n, cor_b);
        out.update(corollary_json(rep));
        if (rep.discrepancy_stated) exit_code = 2;
      } else if (pat_bd->parsed()) {
        const auto rep = boundary_corollary_check(cor_m, cor_n, cor_b);
        out.update(corollary_json(rep));
        if (rep.discrepancy_stated) exit_code = 2;
      }
      std::cout << out.dump() << "\n";
      return exit_code;
    }

    if (cmd_graph->parsed()) {
      if (graph_conn->parsed()) {
        emit_stats(g, {mean_connectivity_estimate(graph_b, graph_n, workers)});
        return 0;
      }
      json out;
      out["schema"] = kSchema;
      out["seed"] = g.seed;
      if (graph_comp->parsed()) {
        const Rect window{1, graph_n, 1, graph_n};
        const VisibilityBitmap vis(graph_b, window, workers);
        const auto stats = components(vis);
        if (!dump_pbm.empty()) {
          std::ofstream pbm(dump_pbm);
          pbm << "P1\n" << window.width() << " " << window.height() << "\n";
          for (int64_t s = window.s_hi; s >= window.s_lo; --s) {
            for (int64_t r = window.r_lo; r <= window.r_hi; ++r)
              pbm << (vis.visible(r, s) ? "1" : "0") << (r < window.r_hi ? " " : "");
            pbm << "\n";
          }
          out["visibility_pbm"] = dump_pbm;
        }
        if (!dump_pgm.empty()) {
          const auto labels = component_labels(vis);
          int32_t maxval = 1;
          for (int32_t l : labels) maxval = std::max(maxval, l);
          maxval = std::min(maxval, 65535);
          std::ofstream pgm(dump_pgm);
          pgm << "P2\n" << window.width() << " " << window.height() << "\n" << maxval << "\n";
          for (int64_t s = window.s_hi; s >= window.s_lo; --s) {
            for (int64_t r = window.r_lo; r <= window.r_hi; ++r) {
              const int32_t l =
                  labels[static_cast<size_t>((s - 1) * window.width() + (r - 1))];
              pgm << (l % (maxval + 1)) << (r < window.r_hi ? " " : "");
            }
            pgm << "\n";
          }
          out["labels_pgm"] = dump_pgm;
        }
        out["op"] = "graph.components";
        out["b"] = graph_b;
        out["N"] = graph_n;
        out["visible"] = stats.visible_count;
        out["components"] = stats.component_count;
        out["largest"] = stats.largest_size;
        out["largest_over_area"] = stats.largest_over_area;
        out["largest_over_visible"] = stats.largest_over_visible;
        out["largest_touches_boundary"] = stats.largest_touches_boundary;
        out["boundary_components"] = stats.boundary_component_count;
        json hist = json::array();
        for (const auto& [size, count] : stats.size_histogram)
          hist.push_back({{"size", size}, {"count", count}});
        out["size_histogram"] = hist;
      } else if (graph_lone->parsed()) {
        out["op"] = "graph.lonesome";
        out["b"] = graph_b;
        out["strategy"] = lonesome_strategy;
        if (lonesome_strategy == "scan") {
          const auto res = find_lonesome_scan(graph_b, Rect{1, graph_n, 1, graph_n}, workers);
          out["found"] = res.found;
          if (res.found) {
            out["r"] = res.point.r;
            out["s"] = res.point.s;
            json ring = json::array();
            for (int i = 0; i < 8; ++i)
              ring.push_back({{"di", kRingOffsets[i].first},
                              {"dj", kRingOffsets[i].second},
                              {"gcd_b", res.neighbor_gcd[static_cast<size_t>(i)]}});
            out["ring"] = ring;
          }
        } else {
          RealizeOptions opt;
          opt.rho_iteration_budget = rho_budget_from_ms(g.factor_budget_ms);
          const auto res = find_lonesome_construct(graph_b, opt);
          out["found"] = true;
          out["r"] = res.r.str();
          out["s"] = res.s.str();
          out["realization"] = realization_json(res.realization);
          out["verify"] = verify_json(res.verify);
        }
      }
      std::cout << out.dump() << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
