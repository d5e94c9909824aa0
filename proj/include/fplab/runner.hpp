#pragma once

#include <atomic>
#include <fstream>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "fplab/checks.hpp"
#include "fplab/config.hpp"
#include "fplab/oracle.hpp"

namespace fplab {

// Fixed catalogue families; sizes are re-stamped by sweeps.
inline std::vector<FamilySpec> default_families(std::size_t size = 12) {
  std::vector<FamilySpec> v;
  v.push_back(FamilySpec::parse("interval(start=1;size=" + std::to_string(size) + ")"));
  v.push_back(FamilySpec::parse("ap(start=2;step=3;size=" + std::to_string(size) + ")"));
  v.push_back(FamilySpec::parse("gp(start=1;ratio=0;size=" + std::to_string(size) + ")"));
  v.push_back(FamilySpec::parse("subgroup(order=0;size=" + std::to_string(size) + ")"));
  v.push_back(
      FamilySpec::parse("random(size=" + std::to_string(size) + ";seed=1;zero_free=1)"));
  return v;
}

namespace detail {

inline FamilySpec with_size(FamilySpec s, std::size_t size) {
  if (s.kind == FamilySpec::Kind::union_) {
    for (auto& c : s.children) c = with_size(std::move(c), size);
  } else if (s.kind != FamilySpec::Kind::subgroup || s.order == 0) {
    s.size = size;
  }
  return s;
}

// Deterministic companion of a family: structured kinds shift their start,
// random draws advance the seed. Used to bind B and C from A's family.
inline FamilySpec companion(FamilySpec s, u64 which) {
  using K = FamilySpec::Kind;
  switch (s.kind) {
    case K::interval: s.start += s.size * which; break;
    case K::ap: s.start += which; break;
    case K::gp: s.start += which; break;
    case K::subgroup: break;  // subgroups are their own companions
    case K::random: s.seed += which; break;
    case K::union_:
      for (auto& c : s.children) c = companion(std::move(c), which);
      break;
  }
  return s;
}

inline u64 fnv1a(std::string_view s) {
  u64 h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

template <typename Fn>
void parallel_for(std::size_t jobs, unsigned threads, Fn&& fn) {
  if (threads <= 1 || jobs <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(jobs));
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace detail

// One (p, family) instance with its derived companions and scalars.
inline CheckInputs build_instance(const PrimeField& field, const FamilySpec& fam, u64 seed,
                                  u64 d) {
  const u64 p = field.modulus();
  CheckInputs in{field,
                 generate(fam, field, seed),
                 generate(detail::companion(fam, 1), field, seed),
                 generate(detail::companion(fam, 2), field, seed),
                 1,
                 1,
                 d,
                 fam.to_string(),
                 seed};
  detail::SplitMix64 rng(detail::mix_seeds(seed ^ p, detail::fnv1a(in.family)));
  in.alpha = 1 + rng.below(p - 1);
  in.beta = 1 + rng.below(p - 1);
  return in;
}

inline std::vector<CheckInputs> build_instances(const RunConfig& cfg,
                                                const std::vector<FamilySpec>& fams) {
  std::vector<CheckInputs> out;
  for (u64 p : cfg.p_list) {
    PrimeField field(p);
    for (const FamilySpec& fam : fams) out.push_back(build_instance(field, fam, cfg.seed, cfg.d));
  }
  return out;
}

inline std::vector<const CheckSpec*> selected_checks(const RunConfig& cfg) {
  std::vector<const CheckSpec*> sel;
  if (cfg.checks.empty()) {
    for (const CheckSpec& s : check_registry()) sel.push_back(&s);
    return sel;
  }
  for (const std::string& want : cfg.checks) {
    // exact name, or a registered prefix group like "distances"
    bool hit = false;
    for (const CheckSpec& s : check_registry()) {
      if (s.name == want || (s.name.size() > want.size() && s.name.rfind(want + "_", 0) == 0)) {
        sel.push_back(&s);
        hit = true;
      }
    }
    if (!hit) throw usage_error("unknown check: " + want);
  }
  return sel;
}

inline void sort_reports(std::vector<CheckReport>& rows) {
  std::sort(rows.begin(), rows.end(), [](const CheckReport& a, const CheckReport& b) {
    return std::tie(a.name, a.p, a.family, a.params, a.seed) <
           std::tie(b.name, b.p, b.family, b.params, b.seed);
  });
}

inline std::vector<CheckReport> run_checks(const RunConfig& cfg) {
  auto fams = cfg.families.empty() ? default_families() : cfg.families;
  auto instances = build_instances(cfg, fams);
  auto checks = selected_checks(cfg);
  std::vector<CheckReport> rows(instances.size() * checks.size());
  detail::parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
    const CheckInputs& in = instances[i / checks.size()];
    const CheckSpec* spec = checks[i % checks.size()];
    rows[i] = spec->run(in);
  });
  sort_reports(rows);
  return rows;
}

inline const std::vector<std::string>& quantity_names() {
  static const std::vector<std::string> names = {
      "sumset_size",  "product_size",  "energy",         "mult_energy", "power_energy",
      "collision_energy", "triples",   "lines",          "directions",  "crossratio",
      "distances",    "incidences",    "pencil",         "max_collinear", "image_set_size"};
  return names;
}

inline CheckReport compute_quantity(const std::string& name, const CheckInputs& in) {
  CheckReport r;
  r.name = name;
  r.p = in.field.modulus();
  r.family = in.family;
  r.size_a = in.a.size();
  r.size_b = in.b.size();
  r.seed = in.seed;
  r.pass = PassState::report_only;
  r.has_bound = false;
  auto val = [&]() -> double {
    if (name == "sumset_size") return static_cast<double>(sumset(in.a, in.b).size());
    if (name == "product_size") return static_cast<double>(productset(in.a, in.b).size());
    if (name == "energy") return static_cast<double>(additive_energy(in.a, in.b));
    if (name == "mult_energy") return static_cast<double>(multiplicative_energy(in.a, in.b));
    if (name == "power_energy") return static_cast<double>(power_energy(in.a, in.d));
    if (name == "collision_energy")
      return static_cast<double>(collision_energy(grid_lines_product(in.b, in.c), in.a));
    if (name == "triples") return static_cast<double>(collinear_triples(in.a));
    if (name == "lines") {
      if (in.a.size() * in.a.size() < 2) return 0;
      return static_cast<double>(line_and_direction_sets(in.a, in.a).lines);
    }
    if (name == "directions") {
      if (in.a.size() * in.a.size() < 2) return 0;
      return static_cast<double>(line_and_direction_sets(in.a, in.a).directions);
    }
    if (name == "crossratio") return static_cast<double>(cross_ratio_sets(in.a).r_inf.size());
    if (name == "distances") return static_cast<double>(distance_sets(in.a).quadratic.size());
    if (name == "incidences") {
      auto [q, pi] = collision_points_planes(grid_lines_product(in.b, in.c), in.a);
      return static_cast<double>(point_plane_incidences(q, pi, false).count);
    }
    if (name == "pencil")
      return static_cast<double>(pencil_stat(grid_lines_product(in.b, in.c)));
    if (name == "max_collinear") {
      auto [q, pi] = collision_points_planes(grid_lines_product(in.b, in.c), in.a);
      return static_cast<double>(max_collinear(q));
    }
    if (name == "image_set_size")
      return static_cast<double>(image_set(grid_lines_product(in.b, in.c), in.a).size());
    throw usage_error("unknown quantity: " + name);
  };
  r.lhs = val();
  return r;
}

inline std::vector<CheckReport> run_compute(const RunConfig& cfg) {
  auto fams = cfg.families.empty() ? default_families() : cfg.families;
  auto instances = build_instances(cfg, fams);
  const auto& names = cfg.quantities.empty() ? quantity_names() : cfg.quantities;
  for (const auto& n : names)
    if (std::find(quantity_names().begin(), quantity_names().end(), n) == quantity_names().end())
      throw usage_error("unknown quantity: " + n);
  std::vector<CheckReport> rows(instances.size() * names.size());
  detail::parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
    rows[i] = compute_quantity(names[i % names.size()], instances[i / names.size()]);
  });
  sort_reports(rows);
  return rows;
}

// Sweep over the size grid; per (check, family, p) a log-log exponent fit of
// lhs against |A| is appended ("<check>_fit": lhs=slope, rhs=intercept,
// ratio=RMS residual).
inline std::vector<CheckReport> run_sweep(const RunConfig& cfg) {
  auto base = cfg.families.empty() ? default_families() : cfg.families;
  std::vector<CheckReport> rows;
  for (std::size_t size : cfg.sizes) {
    std::vector<FamilySpec> fams;
    fams.reserve(base.size());
    for (const auto& f : base) fams.push_back(detail::with_size(f, size));
    RunConfig sub = cfg;
    sub.families = fams;
    auto part = run_checks(sub);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  // group by (check name, p, family kind)
  auto family_kind = [](const std::string& family) {
    return family.substr(0, family.find('('));
  };
  std::map<std::tuple<std::string, u64, std::string>, std::vector<std::pair<double, double>>>
      groups;
  for (const CheckReport& r : rows) {
    if (!r.constraint_ok || r.lhs <= 0 || r.size_a == 0) continue;
    groups[{r.name, r.p, family_kind(r.family)}].emplace_back(
        static_cast<double>(r.size_a), r.lhs);
  }
  std::vector<CheckReport> fits;
  for (auto& [key, pts] : groups) {
    auto& [name, p, kind] = key;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](auto& a, auto& b) { return a.first == b.first; }),
              pts.end());
    CheckReport fit_row;
    fit_row.name = name + "_fit";
    fit_row.p = p;
    fit_row.family = kind;
    fit_row.seed = cfg.seed;
    fit_row.pass = PassState::report_only;
    if (pts.size() < 3) {
      fit_row.constraint_ok = false;  // warning row: not enough points to fit
      detail::append_param(fit_row.params, "points", static_cast<double>(pts.size()));
    } else {
      ExponentFit fit = exponent_fit(pts);
      fit_row.lhs = fit.slope;
      fit_row.rhs = fit.intercept;
      fit_row.ratio = fit.residual;
      detail::append_param(fit_row.params, "points", static_cast<double>(pts.size()));
    }
    fits.push_back(std::move(fit_row));
  }
  sort_reports(fits);
  rows.insert(rows.end(), fits.begin(), fits.end());
  return rows;
}

// ---- report emission ----

inline constexpr const char* kCsvHeader =
    "check_name,p,family,params,size_A,size_B,lhs,rhs,ratio,constraint_ok,seed";

inline void write_csv(std::ostream& os, const std::vector<CheckReport>& rows) {
  os << kCsvHeader << "\n";
  for (const CheckReport& r : rows) {
    os << r.name << ',' << r.p << ',' << r.family << ',' << r.params << ',' << r.size_a << ','
       << r.size_b << ',' << detail::fmt_num(r.lhs) << ',';
    if (r.has_bound) os << detail::fmt_num(r.rhs);
    os << ',';
    if (r.has_bound) os << detail::fmt_num(r.ratio);
    os << ',' << (r.constraint_ok ? 1 : 0) << ',' << r.seed << "\n";
  }
}

inline void write_json(std::ostream& os, const std::vector<CheckReport>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckReport& r : rows) {
    nlohmann::ordered_json row;
    row["check_name"] = r.name;
    row["p"] = r.p;
    row["family"] = r.family;
    row["params"] = r.params;
    row["size_A"] = r.size_a;
    row["size_B"] = r.size_b;
    row["lhs"] = r.lhs;
    if (r.has_bound) {
      row["rhs"] = r.rhs;
      row["ratio"] = r.ratio;
    } else {
      row["rhs"] = nullptr;
      row["ratio"] = nullptr;
    }
    row["constraint_ok"] = r.constraint_ok;
    row["seed"] = r.seed;
    arr.push_back(std::move(row));
  }
  os << arr.dump(2) << "\n";
}

inline void emit_rows(const RunConfig& cfg, const std::vector<CheckReport>& rows,
                      std::ostream& fallback) {
  auto write = [&](std::ostream& os) {
    if (cfg.format == "json") write_json(os, rows);
    else write_csv(os, rows);
  };
  if (cfg.out.empty()) {
    write(fallback);
  } else {
    std::ofstream os(cfg.out, std::ios::binary);
    if (!os) throw usage_error("cannot open output file: " + cfg.out);
    write(os);
  }
}

inline bool any_exact_failure(const std::vector<CheckReport>& rows) {
  for (const CheckReport& r : rows)
    if (r.pass == PassState::fail) return true;
  return false;
}

// ---- oracle battery ----

struct OracleOutcome {
  std::string name;
  bool ok = true;
};

// Runs every brute-force oracle against its fast counterpart on seeded
// desk-scale instances. cfg.corrupt deliberately breaks the first comparison
// (negative control).
inline std::vector<OracleOutcome> run_oracles(const RunConfig& cfg) {
  if (cfg.oracle_size > 14 || cfg.oracle_trials > 50)
    throw usage_error("oracle limits exceeded: oracle_size <= 14, oracle_trials <= 50");
  std::vector<OracleOutcome> out;
  bool corrupt_pending = cfg.corrupt;
  auto record = [&](const std::string& name, u64 fast, u64 brute) {
    if (corrupt_pending) {
      fast += 1;
      corrupt_pending = false;
    }
    out.push_back({name, fast == brute});
  };

  PrimeField f101(101), f31(31), f7(7);
  detail::SplitMix64 rng(cfg.seed);
  const std::size_t n = std::max<std::size_t>(2, cfg.oracle_size);

  for (std::size_t trial = 0; trial < cfg.oracle_trials; ++trial) {
    FSet a = random_subset(f101, 1 + rng.below(n), rng.next());
    FSet b = random_subset(f101, 1 + rng.below(n), rng.next());
    std::string tag = "#" + std::to_string(trial);
    record("sumset" + tag, sumset(a, b).size(), oracle::sumset(a, b).size());
    record("productset" + tag, productset(a, b).size(), oracle::productset(a, b).size());
    record("ratioset" + tag, ratioset(a, b).size(), oracle::ratioset(a, b).size());
    record("additive_energy" + tag, additive_energy(a, b), oracle::additive_energy(a, b));
    record("multiplicative_energy" + tag, multiplicative_energy(a, b),
           oracle::multiplicative_energy(a, b));
    record("power_energy" + tag, power_energy(a, 2 + trial % 3),
           oracle::power_energy(a, 2 + trial % 3));

    FSet c = random_subset(f101, 1 + rng.below(n), rng.next(), true);
    LineSet l = grid_lines_product(c, b);
    if (!l.empty()) {
      record("collision_energy" + tag, collision_energy(l, a), oracle::collision_energy(l, a));
      auto [q, pi] = collision_points_planes(l, a);
      record("collision_incidence" + tag, collision_energy(l, a),
             point_plane_incidences(q, pi, false).count);
      record("pencil" + tag, pencil_stat(l), oracle::pencil_stat(l));
    }
    record("triples" + tag, collinear_triples(a), oracle::collinear_triples(a));
    auto st_pts = grid_points(a, b);
    if (st_pts.size() >= 2) {
      auto fast = line_and_direction_sets(a, b);
      auto ref = oracle::lines_and_directions(f101, st_pts);
      record("lines" + tag, fast.lines, ref.lines);
      record("directions" + tag, fast.directions, ref.directions);
    }
    Bindings bind;
    bind.emplace("A", a);
    bind.emplace("B", c);
    bind.emplace("C", b);
    record("image_vs_expr" + tag, image_set(l, a).size(),
           eval_expr("B*A + C", f101, bind).size());
  }

  for (std::size_t trial = 0; trial < cfg.oracle_trials; ++trial) {
    std::vector<std::pair<Point3, u64>> pts;
    std::vector<std::pair<Plane3, u64>> pls;
    for (std::size_t i = 0; i < 20 * n; ++i) {
      pts.push_back({Point3{rng.below(31), rng.below(31), rng.below(31)}, 1 + rng.below(3)});
      pls.push_back({Plane3{rng.below(31), rng.below(31), 1 + rng.below(30), rng.below(31)},
                     1 + rng.below(3)});
    }
    PointSet3 q = PointSet3::weighted(f31, std::move(pts));
    PlaneSet3 pi = PlaneSet3::weighted(f31, std::move(pls));
    auto inc = point_plane_incidences(q, pi, false);
    std::string tag = "#" + std::to_string(trial);
    record("point_plane" + tag, inc.count, oracle::point_plane_incidences(q, pi));
    record("point_plane_weighted" + tag, inc.weighted,
           oracle::point_plane_incidences_weighted(q, pi));
    record("max_collinear" + tag, max_collinear(q), oracle::max_collinear(q));

    FSet aa = random_subset(f31, 1 + rng.below(std::min<std::size_t>(n, 30)), rng.next());
    FSet bb = random_subset(f31, 1 + rng.below(std::min<std::size_t>(n, 30)), rng.next());
    std::vector<Line> lines;
    for (std::size_t i = 0; i < 8 * n; ++i) {
      if (i % 7 == 0) lines.push_back(Line{0, rng.below(31), true});
      else lines.push_back(Line{rng.below(31), rng.below(31), false});
    }
    LineSet ll(f31, std::move(lines));
    auto ps = grid_points(aa, bb);
    record("point_line" + tag, point_line_incidences(f31, ps, ll),
           oracle::point_line_incidences(f31, ps, ll));
  }
  return out;
}

}  // namespace fplab
