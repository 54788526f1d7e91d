// Acceptance gate: eleven go/no-go checks over the whole library, one
// PASS/FAIL line each, exit status = number of failures.
//
//   acceptance [--only K] [--data DIR] [--tool PATH]
//
// --data points at the shipped reference files (classification table),
// --tool at the command-line binary; both are only needed by criterion 9.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "reiflab/analysis.hpp"
#include "reiflab/families.hpp"
#include "reiflab/io.hpp"
#include "reiflab/localview.hpp"
#include "reiflab/reifenberg.hpp"
#include "reiflab/rotation.hpp"
#include "reiflab/sample.hpp"

using namespace reiflab;

namespace {

struct Ctx {
  std::string data_dir = "data";
  std::string tool;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::vector<ThetaSequence> presets() {
  return {ThetaSequence::constant(0.05), ThetaSequence::constant(0.12), triple_preset()};
}

DyadicAddress interior_address(std::mt19937_64& rng, std::uint32_t len, int max_run = 3) {
  std::uniform_int_distribution<int> coin(0, 1);
  DyadicAddress a;
  a.bits = {1, 0};
  while (a.bits.size() < len) {
    int b = coin(rng);
    int run = 1;
    while (run <= max_run && a.bits.size() >= static_cast<std::size_t>(run) &&
           a.bits[a.bits.size() - run] == b) {
      ++run;
    }
    if (run > max_run) b = 1 - b;
    a.bits.push_back(static_cast<std::uint8_t>(b));
  }
  return a;
}

// --- criterion 1: every edge has the closed-form length ---

bool c1_edge_lengths(const Ctx&, std::string& m) {
  // Frame-relative measurement covers every edge up to depth 20; absolute
  // stored vertices can only resolve the formula to 1e-12 up to depth ~10,
  // so they are cross-checked there.
  double worst = 0.0;
  std::uint64_t edges = 0;
  double worst_abs = 0.0;
  for (const ThetaSequence& theta : presets()) {
    const std::uint32_t depth = 20;
    const auto extrema = measure_edge_lengths(theta, depth);
    double expect = 1.0;
    for (std::uint32_t n = 0; n <= depth; ++n) {
      if (n > 0) expect /= 2.0 * std::cos(theta.at(n));
      worst = std::max(worst, std::fabs(extrema[n].min_len - expect) / expect);
      worst = std::max(worst, std::fabs(extrema[n].max_len - expect) / expect);
      edges += std::uint64_t{1} << n;
    }

    const Construction c(theta, 10);
    expect = 1.0;
    for (std::uint32_t n = 0; n <= 10; ++n) {
      if (n > 0) expect /= 2.0 * std::cos(theta.at(n));
      const auto& v = c.vertices(n);
      for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        worst_abs = std::max(worst_abs, std::fabs(dist(v[k], v[k + 1]) - expect) / expect);
      }
    }
  }
  m = fmt("max relative error %.3g over %llu edges to depth 20 "
          "(vertex cross-check to depth 10: %.3g), limit 1e-12",
          worst, static_cast<unsigned long long>(edges), worst_abs);
  return worst <= 1e-12 && worst_abs <= 1e-12;
}

// --- criterion 2: geometric turn signs obey the parity law ---

bool c2_sign_law(const Ctx&, std::string& m) {
  std::uint64_t checked = 0, mismatches = 0;
  for (const ThetaSequence& theta : presets()) {
    const std::uint32_t depth = 14;
    const Construction c(theta, depth);
    for (std::uint32_t n = 1; n <= depth; ++n) {
      for (std::uint64_t i = 1; i <= (std::uint64_t{1} << n); ++i) {
        if (theta_sign_geometric(c, n, i) != theta_sign(n, i)) ++mismatches;
        ++checked;
      }
    }
  }
  m = fmt("%llu signs checked across 3 presets, %llu mismatches",
          static_cast<unsigned long long>(checked), static_cast<unsigned long long>(mismatches));
  return mismatches == 0;
}

// --- criterion 3: similitude words enumerate the caps ---

bool c3_attractor(const Ctx&, std::string& m) {
  double worst = 0.0;
  std::size_t words = 0;
  bool bijective = true;
  for (std::uint32_t n = 1; n <= 10; ++n) {
    const AttractorReport rep = verify_attractor(0.12, n);
    worst = std::max(worst, rep.max_discrepancy);
    words += rep.words_checked;
    bijective = bijective && rep.bijection_ok;
  }
  m = fmt("%zu words, bijective %s, max vertex discrepancy %.3g (limit 1e-9)", words,
          bijective ? "yes" : "NO", worst);
  return bijective && worst <= 1e-9;
}

// --- criterion 4: box-counting dimension of two cap curves ---

bool c4_box_dimension(const Ctx&, std::string& m) {
  const SampleCloud flat = cloud_from_construction(Construction(ThetaSequence::constant(0.13), 16));
  const BoxCountResult r1 = box_dimension(flat, dyadic_grid_ladder(4, 12));
  const double target = 1.0123765728804226;  // ln 2 / ln(2 cos 0.13)

  const SampleCloud staged = cloud_from_construction(Construction(triple_preset(), 18));
  const BoxCountResult r2 = box_dimension(staged, dyadic_grid_ladder(4, 12));

  m = fmt("constant 0.13: slope %.4f vs %.4f (tol 0.02); staged: slope %.4f vs 1.00 (tol 0.03)",
          r1.slope, target, r2.slope);
  return std::fabs(r1.slope - target) <= 0.02 && std::fabs(r2.slope - 1.0) <= 0.03;
}

// --- criterion 5: weak defect never exceeds tan(1/2) ---

bool c5_defect_bound(const Ctx&, std::string& m) {
  const SampleCloud s = cloud_from_construction(Construction(ThetaSequence::constant(0.1), 14));
  const double bound = std::tan(0.5);
  const double lo = 4.0 * s.resolution_floor * 1.0001, hi = 0.4;

  std::vector<double> radii;
  for (int k = 39; k >= 0; --k) {
    radii.push_back(lo * std::pow(hi / lo, k / 39.0));  // descending
  }
  std::mt19937_64 rng(905);
  std::uniform_int_distribution<std::size_t> pick(0, s.points.size() - 1);
  const DefectOptions opt{128, 1200};

  double worst = 0.0;
  std::size_t pairs = 0, violations = 0;
  for (int c = 0; c < 250; ++c) {
    const DefectProfile p = defect_profile(s, s.points[pick(rng)], radii, opt);
    for (double d : p.weak) {
      worst = std::max(worst, d);
      if (d > bound) ++violations;
      ++pairs;
    }
  }
  m = fmt("%zu (center, radius) pairs, worst defect %.4f, bound %.4f, %zu violations", pairs,
          worst, bound, violations);
  return pairs >= 10000 && violations == 0;
}

// --- criterion 6: descent profiles decay for staged angles, stall at corners ---

bool c6_profiles(const Ctx&, std::string& m) {
  std::mt19937_64 rng(906);
  const ThetaSequence staged = triple_preset();
  std::size_t decay_fail = 0;
  double worst_tail = 0.0;
  for (int it = 0; it < 100; ++it) {
    const DyadicAddress a = interior_address(rng, 40);
    const auto prof = descent_profile(staged, a);
    if (prof.size() < 6) {
      ++decay_fail;
      continue;
    }
    double head = 1e9, tail = 0.0;
    for (std::size_t k = 0; k < 3; ++k) head = std::min(head, prof[k].defect);
    for (std::size_t k = prof.size() - 3; k < prof.size(); ++k) {
      tail = std::max(tail, prof[k].defect);
    }
    worst_tail = std::max(worst_tail, tail);
    if (!(tail < 0.05 && tail < head)) ++decay_fail;
  }

  const ThetaSequence flat = ThetaSequence::constant(0.13);
  const double stall_floor = 0.5 * std::tan(0.13);
  std::size_t stall_fail = 0;
  double worst_min = 1e9;
  for (int it = 0; it < 100; ++it) {
    DyadicAddress a = interior_address(rng, 6);
    while (a.bits.size() < 40) a.bits.push_back(1);  // tail pinned to a vertex
    const auto prof = descent_profile(flat, a);
    if (prof.size() < 6) {
      ++stall_fail;
      continue;
    }
    double mn = 1e9;
    for (const auto& p : prof) mn = std::min(mn, p.defect);
    worst_min = std::min(worst_min, mn);
    if (mn < stall_floor) ++stall_fail;
  }

  m = fmt("staged: 100 addresses, worst tail %.4f (limit 0.05), %zu bad; "
          "corner: worst min %.4f (floor %.4f), %zu bad",
          worst_tail, decay_fail, worst_min, stall_floor, stall_fail);
  return decay_fail == 0 && stall_fail == 0;
}

// --- criterion 7: pattern measures match exhaustive enumeration ---

std::uint64_t brute_count(const PatternSpec& spec) {
  const std::uint32_t n = spec.horizon;
  const std::size_t m = spec.word.size();
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    bool hit = false;
    for (std::uint32_t off = spec.offset_min; off + m <= n && !hit; ++off) {
      bool match = true;
      for (std::size_t k = 0; k < m && match; ++k) {
        match = (((code >> (n - 1 - (off + k))) & 1) == spec.word[k]);
      }
      hit = match;
    }
    if (hit) ++count;
  }
  return count;
}

bool c7_patterns(const Ctx&, std::string& m) {
  std::mt19937_64 rng(907);
  std::uniform_int_distribution<std::uint32_t> len(1, 4), off(0, 3), hor(8, 14);
  std::uniform_int_distribution<int> bit(0, 1);

  std::size_t mismatches = 0, non_monotone = 0;
  for (int it = 0; it < 200; ++it) {
    std::string word;
    const std::uint32_t l = len(rng);
    for (std::uint32_t k = 0; k < l; ++k) word += bit(rng) ? '1' : '0';
    const std::uint32_t o = off(rng);
    const std::uint32_t n = std::max(hor(rng), o + l);
    const PatternSpec spec = PatternSpec::make(o, word, n);
    if (pattern_measure(spec).count != BigInt(brute_count(spec))) ++mismatches;
    const double below = pattern_measure(PatternSpec::make(o, word, n - 1)).to_double();
    if (pattern_measure(spec).to_double() < below) ++non_monotone;
  }
  const bool pin = find_min_horizon(0, "1", 0.5) == 1;
  m = fmt("200 specs vs enumeration: %zu mismatches, %zu monotonicity breaks, pin %s",
          mismatches, non_monotone, pin ? "ok" : "BAD");
  return mismatches == 0 && non_monotone == 0 && pin;
}

// --- criterion 8: pushforward length bound on random dyadic unions ---

bool c8_pushforward(const Ctx&, std::string& m) {
  const Construction c(ThetaSequence::constant(0.12), 18);
  std::mt19937_64 rng(908);
  std::uniform_int_distribution<std::uint32_t> nparts(1, 8), lvl(0, 10);

  std::size_t violations = 0;
  double min_ratio = 1e9;
  for (int it = 0; it < 50; ++it) {
    std::vector<DyadicInterval> K;
    const std::uint32_t parts = nparts(rng);
    for (std::uint32_t k = 0; k < parts; ++k) {
      const std::uint32_t L = lvl(rng);
      std::uniform_int_distribution<std::uint64_t> num(0, (std::uint64_t{1} << L) - 1);
      K.push_back({num(rng), L});
    }
    const PushforwardReport rep = pushforward_lower_bound(c, K);
    if (!rep.ok) ++violations;
    min_ratio = std::min(min_ratio, rep.measured / rep.bound);
  }
  m = fmt("50 unions at depth 18: %zu bound violations, min measured/bound %.2f", violations,
          min_ratio);
  return violations == 0;
}

// --- criterion 9: the shipped tool reproduces table and verdicts ---

bool c9_cli(const Ctx& ctx, std::string& m) {
  if (ctx.tool.empty()) {
    m = "no --tool given";
    return false;
  }
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "reiflab_acceptance";
  fs::create_directories(dir);
  auto run = [&](const std::string& args) {
    const std::string cmd = "\"" + ctx.tool + "\" " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };

  const std::string table = (dir / "table.md").string();
  if (!run("analyze table --out \"" + table + "\"")) {
    m = "analyze table exited nonzero";
    return false;
  }
  const std::string want = load_text(ctx.data_dir + "/classification_table.md");
  if (load_text(table) != want) {
    m = "classification table differs from the shipped reference";
    return false;
  }

  struct Run {
    std::string args;
    std::string verdict;
  };
  const std::vector<Run> runs = {
      {"check --theta constant:0.13 --depth 12 --property w,rho0,0.45 --rho0 0.2",
       "holds-at-resolution"},
      {"check --theta constant:0.13 --depth 12 --property w,rho,fine", "fails"},
      {"check --theta triple --depth 18 --property w,rho,fine --end-floor 0.1 --budget 16",
       "holds-at-resolution"},
      {"check --set N --property s,rho,fine", "holds-at-resolution"},
      {"check --set lambda --property s,none,fine", "holds-at-resolution"},
  };
  std::string got;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const std::string out = (dir / fmt("check%zu.json", k)).string();
    if (!run(runs[k].args + " --out \"" + out + "\"")) {
      m = fmt("run %zu exited nonzero (%s)", k, runs[k].args.c_str());
      return false;
    }
    const std::string verdict = load_json(out)["verdict"].get<std::string>();
    got += (k ? ", " : "") + verdict;
    if (verdict != runs[k].verdict) {
      m = fmt("run %zu: verdict \"%s\", expected \"%s\"", k, verdict.c_str(),
              runs[k].verdict.c_str());
      return false;
    }
  }
  m = "table byte-identical; verdicts: " + got;
  return true;
}

// --- criterion 10: cap separation audits ---

bool c10_separation(const Ctx&, std::string& m) {
  double worst_angle = 0.0, worst_bound = 0.0;
  bool all_pass = true;
  for (const ThetaSequence& theta : presets()) {
    const Construction c(theta, 16);
    const SeparationAudit audit = separation_audit(c, 10);
    all_pass = all_pass && audit.passed();
    worst_angle = std::max(worst_angle, audit.max_pair_angle);
    worst_bound = std::max(worst_bound, 2.0 * theta.at(1));
  }
  m = fmt("3 presets, levels 1..10 at depth 16: max pair angle %.4f (bound %.4f), %s",
          worst_angle, worst_bound, all_pass ? "no violations" : "VIOLATIONS");
  return all_pass;
}

// --- criterion 11: rotation windows force direction spirals ---

bool c11_spiral(const Ctx&, std::string& m) {
  const ThetaSequence theta = ThetaSequence::constant(0.12);
  std::mt19937_64 rng(911);
  std::uniform_int_distribution<std::uint32_t> plen(2, 6);
  std::uniform_int_distribution<int> bit(0, 1);

  std::size_t found = 0, spirals = 0;
  double min_tv = 1e9;
  for (int it = 0; it < 20; ++it) {
    DyadicAddress a;
    const std::uint32_t p = plen(rng);
    for (std::uint32_t k = 0; k < p; ++k) a.bits.push_back(static_cast<std::uint8_t>(bit(rng)));
    // Parity-aligned alternating run: all window levels turn the same way.
    for (std::uint32_t k = 0; k < 56; ++k) {
      a.bits.push_back(static_cast<std::uint8_t>((p % 2 == 0) ? (k + 1) % 2 : k % 2));
    }
    const auto witness = spiral_witness(theta, a);
    if (!witness) continue;
    ++found;
    const auto prof = descent_profile(theta, a);
    double tv = 0.0;
    bool have = false;
    double prev = 0.0;
    for (const auto& pt : prof) {
      if (pt.level < witness->m1 || pt.level > witness->m2) continue;
      if (have) tv += direction_distance(prev, pt.direction);
      prev = pt.direction;
      have = true;
    }
    min_tv = std::min(min_tv, tv);
    if (tv > kPi) ++spirals;
  }
  m = fmt("20 addresses: %zu witness windows, %zu with direction TV > pi (min TV %.3f)", found,
          spirals, min_tv);
  return found == 20 && spirals == 20;
}

}  // namespace

int main(int argc, char** argv) {
  Ctx ctx;
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    const std::string arg = argv[k];
    if (arg == "--only" && k + 1 < argc) {
      only = std::atoi(argv[++k]);
    } else if (arg == "--data" && k + 1 < argc) {
      ctx.data_dir = argv[++k];
    } else if (arg == "--tool" && k + 1 < argc) {
      ctx.tool = argv[++k];
    } else {
      std::fprintf(stderr, "usage: acceptance [--only K] [--data DIR] [--tool PATH]\n");
      return 64;
    }
  }

  struct Criterion {
    const char* name;
    bool (*fn)(const Ctx&, std::string&);
  };
  const std::vector<Criterion> criteria = {
      {"edge lengths match the closed form", c1_edge_lengths},
      {"turn signs obey the parity law", c2_sign_law},
      {"similitude words enumerate the caps", c3_attractor},
      {"box-counting dimension of two presets", c4_box_dimension},
      {"weak defect bounded by tan(1/2)", c5_defect_bound},
      {"descent profiles decay or stall as designed", c6_profiles},
      {"pattern measures match enumeration", c7_patterns},
      {"pushforward length bound holds", c8_pushforward},
      {"tool reproduces table and verdicts", c9_cli},
      {"cap separation audits pass", c10_separation},
      {"rotation windows force spirals", c11_spiral},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (only != 0 && only != id) continue;
    std::string metrics;
    bool ok = false;
    try {
      ok = criteria[k].fn(ctx, metrics);
    } catch (const std::exception& e) {
      metrics = fmt("exception: %s", e.what());
    }
    std::printf("%s: criterion %d — %s (%s)\n", ok ? "PASS" : "FAIL", id, criteria[k].name,
                metrics.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
