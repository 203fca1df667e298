#include "kaleido/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "kaleido/render.hpp"

namespace kaleido {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + path);
  f << data;
}

struct lam_source {
  std::string file;
  int depth = 8;
  lamination load() const { return file.empty() ? generate(depth) : parse_lamination(read_file(file)); }
};

void add_lamination_options(CLI::App* app, lam_source& src, int default_depth, const std::string& depth_help) {
  src.depth = default_depth;
  app->add_option("--depth", src.depth, depth_help)->check(CLI::NonNegativeNumber)->capture_default_str();
  app->add_option("--lamination", src.file, "Lamination file (default: generate at --depth)");
}

gap_class class_arg(const std::string& text, const lamination& L) {
  auto c = L.classify(angle::parse(text));
  if (!c) throw std::invalid_argument(text + " is not an angle of a branch class");
  return *c;
}

// Search budget of a run: never below the lamination depth, capped by the
// environment.
int run_budget(const lamination& L, int requested) {
  if (requested < L.depth()) throw std::invalid_argument("--budget must be at least the lamination depth");
  int budget = capped_budget(requested);
  if (budget < L.depth()) throw resource_error("KALEIDO_MAX_DEPTH is below the lamination depth");
  return budget;
}

// Accumulates PASS/FAIL lines.
struct report {
  std::ostringstream text;
  bool ok = true;
  void line(bool pass, const std::string& name, const std::string& detail) {
    ok = ok && pass;
    text << (pass ? "PASS" : "FAIL") << "\t" << name << "\t" << detail << "\n";
  }
};

gap_class random_class(std::mt19937_64& rng, const std::vector<gap_class>& pool) {
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

std::vector<gap_class> first_points(const lamination& L, std::size_t n) {
  auto all = default_enumeration(L);
  if (all.size() > n) all.resize(n);
  return all;
}

void suite_unlinked(const lamination& L, report& r) {
  auto cs = L.classes();
  std::size_t pairs = 0, bad = 0;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      ++pairs;
      bad += !unlinked(cs[i], cs[j]);
    }
  r.line(bad == 0, "unlinked", "pairs=" + std::to_string(pairs) + " linked=" + std::to_string(bad));
}

void suite_forward(const lamination& L, report& r) {
  std::size_t bad = 0;
  for (const auto& c : L.classes()) {
    std::vector<angle> image;
    for (const auto& a : c.angles()) image.push_back(double_angle(a));
    std::sort(image.begin(), image.end());
    const gap_class* target = L.find(image.front());
    int expected = std::max(0, c.depth() - 1);
    if (!target || target->angles() != image || target->depth() != expected) ++bad;
  }
  r.line(bad == 0, "forward", "classes=" + std::to_string(L.size()) + " bad=" + std::to_string(bad));
}

void suite_coloring(const lamination& L, const std::string& file, std::size_t points, report& r) {
  if (file.empty()) throw std::invalid_argument("verify coloring: --coloring is required");
  raw_coloring raw = parse_coloring(read_file(file), L);
  r.line(verify_orientation_compatibility(raw), "orientation", "colored=" + std::to_string(raw.size()));
  coloring C;
  try {
    C = from_raw(raw);
  } catch (const std::invalid_argument& e) {
    r.line(false, "window", e.what());
    return;
  }
  auto en = first_points(L, points);
  std::size_t checked = 0, missing = 0;
  for (std::size_t a = 0; a < en.size(); ++a)
    for (std::size_t b = 0; b < en.size(); ++b) {
      if (a == b) continue;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
          if (i == j) continue;
          ++checked;
          if (!C.is_colored(en[a]) || !C.is_colored(en[b]) || !check_kaleidoscopic_window(C, en[a], en[b], i, j))
            ++missing;
        }
    }
  r.line(missing == 0, "window", "points=" + std::to_string(en.size()) + " checks=" + std::to_string(checked) +
                                     " missing=" + std::to_string(missing));
}

void suite_cocycle(const lamination& L, std::uint64_t seed, int samples, int points, int budget, report& r) {
  std::mt19937_64 rng(seed);
  coloring base = build_kaleidoscopic(L, first_points(L, 30), budget, 30);
  auto pool = L.classes();
  std::size_t checks = 0, cocycle_bad = 0, odd = 0, inverse_bad = 0;
  for (int s = 0; s < samples; ++s) {
    auto g = random_element(rng, L, std::min(5, L.depth()), budget);
    auto h = random_element(rng, L, std::min(5, L.depth()), budget);
    auto gh = compose(g, h);
    auto gi = g.inverse();
    std::vector<gap_class> xs;
    for (int p = 0; p < points; ++p) xs.push_back(random_class(rng, pool));
    coloring C = base;
    for (const auto& x : xs) {
      gap_class hx = h(x);
      extend_coloring(C, {x, hx, g(hx)});
    }
    for (const auto& x : xs) {
      ++checks;
      auto lhs = local_action(gh, x, C);
      auto rhs = compose_perm(local_action(g, h(x), C), local_action(h, x, C));
      cocycle_bad += lhs != rhs;
      odd += !is_even(lhs);
      inverse_bad += !(gi(g(x)) == x);
    }
  }
  r.line(cocycle_bad == 0, "cocycle", "checks=" + std::to_string(checks) + " bad=" + std::to_string(cocycle_bad));
  r.line(odd == 0, "even", "checks=" + std::to_string(checks) + " odd=" + std::to_string(odd));
  r.line(inverse_bad == 0, "inverse", "checks=" + std::to_string(checks) + " bad=" + std::to_string(inverse_bad));
}

std::vector<std::pair<std::string, group_element>> elements_for(const lamination& L, const std::string& file,
                                                                std::uint64_t seed, int samples, int budget) {
  std::vector<std::pair<std::string, group_element>> out;
  if (!file.empty()) {
    out.emplace_back(file, parse_element(read_file(file), L, budget));
    return out;
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s)
    out.emplace_back("random-" + std::to_string(s), random_element(rng, L, std::min(5, L.depth()), budget));
  return out;
}

void suite_orbits(const lamination& L, std::uint64_t seed, int samples, int budget, report& r) {
  std::mt19937_64 rng(seed);
  std::vector<angle> angles;
  for (const auto& c : L.classes())
    for (const auto& a : c.angles()) angles.push_back(a);
  std::size_t checks = 0, changed = 0;
  for (int s = 0; s < samples; ++s) {
    auto g = random_element(rng, L, std::min(5, L.depth()), budget);
    for (const auto& z : angles) {
      ++checks;
      changed += orbit_label(act_on_class_angle(g, z), L) != orbit_kind::branch;
    }
  }
  r.line(changed == 0, "class-size", "checks=" + std::to_string(checks) + " changed=" + std::to_string(changed));
  std::size_t connected = 0;
  std::uniform_int_distribution<std::size_t> pick(0, angles.size() - 1);
  for (int s = 0; s < samples; ++s) {
    angle a = angles[pick(rng)], b = angles[pick(rng)];
    connected += act_on_class_angle(angle_transporter(a, b, L, budget), a) == b;
  }
  r.line(connected == static_cast<std::size_t>(samples), "transporter",
         "pairs=" + std::to_string(samples) + " connected=" + std::to_string(connected));
  angle zero{};
  r.line(orbit_label(zero, L) == orbit_kind::end_or_regular, "label-0", to_string(orbit_label(zero, L)));
}

void suite_dt2(const lamination& L, report& r) {
  rooted_structure R;
  for (const auto& a : check_dt2_axioms(L.classes(), R))
    r.line(a.pass, "axiom-" + std::to_string(a.axiom), a.pass ? "ok" : a.counterexample);
}

std::string witness_table(const nonsmooth_result& w) {
  std::ostringstream out;
  out << "#stage\tsource\ttarget\tx\tx_image\td\td_image\tbound\tpass\n";
  for (const auto& s : w.stages)
    out << s.stage << "\t" << s.source.id_str() << "\t" << s.target.id_str() << "\t" << s.x.str() << "\t"
        << s.x_image.str() << "\t" << to_string(s.d_source) << "\t" << to_string(s.d_image) << "\t" << s.bound << "\t"
        << (s.pass ? "pass" : "fail") << "\n";
  return out.str();
}

std::vector<gap_class> witness_sources(const nonsmooth_result& w) {
  std::vector<gap_class> out;
  for (const auto& s : w.stages) out.push_back(s.source);
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact finite-depth model of the kaleidoscopic group acting on the circle", "kaleidocircle"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::function<int()> action;

  // generate
  auto* gen = app.add_subcommand("generate", "Generate the invariant lamination up to a depth");
  int gen_depth = 0;
  std::string gen_out;
  gen->add_option("--depth", gen_depth, "Pullback depth")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("--out", gen_out, "Output file (default: stdout)");
  gen->callback([&] { action = [&] { emit(gen_out, serialize(generate(gen_depth)), out); return 0; }; });

  // color
  auto* col = app.add_subcommand("color", "Build a kaleidoscopic coloring");
  lam_source col_lam;
  add_lamination_options(col, col_lam, 8, "Lamination depth");
  std::size_t col_points = 30, col_window = 30;
  int col_budget = default_search_budget();
  std::string col_out, col_log;
  col->add_option("--points", col_points, "Number of enumerated branch points")->capture_default_str();
  col->add_option("--window", col_window, "Enumerated points whose pairs get witnesses")->capture_default_str();
  col->add_option("--budget", col_budget, "Depth budget of witness searches")->capture_default_str();
  col->add_option("--out", col_out, "Coloring file (default: stdout)");
  col->add_option("--log", col_log, "Stage log file");
  col->callback([&] {
    action = [&] {
      lamination L = col_lam.load();
      coloring C = build_kaleidoscopic(L, first_points(L, col_points), run_budget(L, col_budget), col_window);
      emit(col_out, serialize(C), out);
      if (!col_log.empty()) {
        std::ostringstream log;
        log << "#stage\tx\ty\ti\tj\twitness\n";
        for (const auto& e : C.stage_log())
          log << e.stage << "\t" << e.x.id_str() << "\t" << e.y.id_str() << "\t" << e.i << "\t" << e.j << "\t"
              << e.witness.id_str() << "\n";
        emit(col_log, log.str(), out);
      }
      return 0;
    };
  });

  // element
  auto* elem = app.add_subcommand("element", "Construct a group element");
  elem->require_subcommand(1);
  lam_source el_lam;
  int el_budget = default_search_budget();
  std::string el_out;
  auto element_common = [&](CLI::App* sub) {
    add_lamination_options(sub, el_lam, 8, "Lamination depth");
    sub->add_option("--budget", el_budget, "Depth budget of extension searches")->capture_default_str();
    sub->add_option("--out", el_out, "Element file (default: stdout)");
  };
  auto* rot = elem->add_subcommand("rotation", "Rotation of the branches at a branch point");
  std::string rot_at = "1/7";
  int rot_turns = 1;
  rot->add_option("--at", rot_at, "Angle of the branch point")->capture_default_str();
  rot->add_option("--turns", rot_turns, "1 or 2")->check(CLI::Range(1, 2))->capture_default_str();
  element_common(rot);
  rot->callback([&] {
    action = [&] {
      lamination L = el_lam.load();
      emit(el_out, serialize(rotation_at(class_arg(rot_at, L), rot_turns, L, run_budget(L, el_budget))), out);
      return 0;
    };
  });
  auto* tra = elem->add_subcommand("transporter", "Element sending one branch point to another");
  std::string tra_from, tra_to;
  int tra_rotation = 0;
  tra->add_option("--from", tra_from, "Angle of the source branch point")->required();
  tra->add_option("--to", tra_to, "Angle of the target branch point")->required();
  tra->add_option("--rotation", tra_rotation, "Branch rotation 0, 1 or 2")->check(CLI::Range(0, 2))->capture_default_str();
  element_common(tra);
  tra->callback([&] {
    action = [&] {
      lamination L = el_lam.load();
      anchor_map a;
      a.add(class_arg(tra_from, L), class_arg(tra_to, L), tra_rotation);
      emit(el_out, serialize(group_element::from_anchors(a, L, run_budget(L, el_budget))), out);
      return 0;
    };
  });
  auto* shr = elem->add_subcommand("shrinker", "Element sending a branch onto another branch");
  std::string shr_from, shr_to;
  int shr_from_branch = 1, shr_to_branch = 1;
  shr->add_option("--from", shr_from, "Angle of the source branch point")->required();
  shr->add_option("--from-branch", shr_from_branch, "Source branch index")->check(CLI::Range(1, 3))->required();
  shr->add_option("--to", shr_to, "Angle of the target branch point")->required();
  shr->add_option("--to-branch", shr_to_branch, "Target branch index")->check(CLI::Range(1, 3))->required();
  element_common(shr);
  shr->callback([&] {
    action = [&] {
      lamination L = el_lam.load();
      emit(el_out,
           serialize(shrinker(class_arg(shr_from, L), shr_from_branch, class_arg(shr_to, L), shr_to_branch, L,
                              run_budget(L, el_budget))),
           out);
      return 0;
    };
  });
  auto* wit = elem->add_subcommand("witness", "Non-smoothability witness element");
  std::string wit_omega = "pow:1", wit_report, wit_coloring;
  int wit_stages = 5;
  wit->add_option("--omega", wit_omega, "Modulus spec: pow:p/q or step:t1:v1,...")->capture_default_str();
  wit->add_option("--stages", wit_stages, "Number of stages")->capture_default_str();
  wit->add_option("--report", wit_report, "Witness table file");
  wit->add_option("--coloring", wit_coloring, "Coloring file constraining witness colors");
  element_common(wit);
  wit->callback([&] {
    action = [&] {
      lamination L = el_lam.load();
      coloring C = wit_coloring.empty() ? coloring{} : from_raw(parse_coloring(read_file(wit_coloring), L));
      auto w = nonsmooth_witness(modulus::parse(wit_omega), wit_stages, L, C, run_budget(L, el_budget));
      emit(el_out, serialize(w.element), out);
      if (!wit_report.empty()) emit(wit_report, witness_table(w), out);
      for (const auto& s : w.stages)
        if (!s.pass) return static_cast<int>(exit_verification);
      return 0;
    };
  });
  auto* ff = elem->add_subcommand("fromfile", "Validate an element file and write it back canonically");
  std::string ff_in;
  ff->add_option("--in", ff_in, "Element file")->required();
  element_common(ff);
  ff->callback([&] {
    action = [&] {
      lamination L = el_lam.load();
      emit(el_out, serialize(parse_element(read_file(ff_in), L, run_budget(L, el_budget))), out);
      return 0;
    };
  });

  // act
  auto* act = app.add_subcommand("act", "Induce the circle homeomorphism of an element");
  lam_source act_lam;
  std::string act_element, act_out;
  int act_budget = default_search_budget();
  add_lamination_options(act, act_lam, 6, "Breakpoint depth (and lamination depth when generated)");
  act->add_option("--element", act_element, "Element file")->required();
  act->add_option("--budget", act_budget, "Depth budget of extension searches")->capture_default_str();
  act->add_option("--out", act_out, "Homeomorphism file (default: stdout)");
  act->callback([&] {
    action = [&] {
      lamination L = act_lam.load();
      auto g = parse_element(read_file(act_element), L, run_budget(L, act_budget));
      emit(act_out, serialize(induce(g, std::min(act_lam.depth, L.depth()))), out);
      return 0;
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  lam_source ver_lam;
  std::uint64_t ver_seed = 1;
  int ver_samples = 20, ver_points = 20, ver_budget = default_search_budget();
  std::string ver_element, ver_homeo, ver_coloring, ver_out;
  std::size_t ver_window_points = 30;
  ver->add_option("suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember({"unlinked", "forward", "coloring", "cocycle", "semiconjugacy", "lamination-preserved",
                             "orbits", "dt2"}));
  add_lamination_options(ver, ver_lam, 8, "Lamination depth (also the breakpoint depth)");
  ver->add_option("--seed", ver_seed, "Seed of randomized probes")->capture_default_str();
  ver->add_option("--samples", ver_samples, "Random elements or pairs")->capture_default_str();
  ver->add_option("--points", ver_points, "Points per element pair (cocycle)")->capture_default_str();
  ver->add_option("--window-points", ver_window_points, "Enumerated points checked (coloring)")->capture_default_str();
  ver->add_option("--budget", ver_budget, "Depth budget of searches")->capture_default_str();
  ver->add_option("--element", ver_element, "Element file (default: random elements)");
  ver->add_option("--homeo", ver_homeo, "Homeomorphism file (lamination-preserved)");
  ver->add_option("--coloring", ver_coloring, "Coloring file (coloring)");
  ver->add_option("--out", ver_out, "Report file (default: stdout)");
  ver->callback([&] {
    action = [&] {
      lamination L = ver_lam.load();
      int budget = run_budget(L, ver_budget);
      report r;
      r.text << "#suite=" << suite << " depth=" << L.depth() << " seed=" << ver_seed << "\n";
      if (suite == "unlinked") suite_unlinked(L, r);
      if (suite == "forward") suite_forward(L, r);
      if (suite == "coloring") suite_coloring(L, ver_coloring, ver_window_points, r);
      if (suite == "cocycle") suite_cocycle(L, ver_seed, ver_samples, ver_points, budget, r);
      if (suite == "semiconjugacy")
        for (const auto& [name, g] : elements_for(L, ver_element, ver_seed, ver_samples, budget))
          r.line(verify_semiconjugacy(g, induce(g, L.depth()), L), "semiconjugacy", name);
      if (suite == "lamination-preserved") {
        if (!ver_homeo.empty()) {
          r.line(verify_lamination_preserved(parse_homeo(read_file(ver_homeo)), L), "lamination-preserved", ver_homeo);
        } else {
          for (const auto& [name, g] : elements_for(L, ver_element, ver_seed, ver_samples, budget))
            r.line(verify_lamination_preserved(induce(g, L.depth()), L), "lamination-preserved", name);
        }
      }
      if (suite == "orbits") suite_orbits(L, ver_seed, ver_samples, budget, r);
      if (suite == "dt2") suite_dt2(L, r);
      emit(ver_out, r.text.str(), out);
      return r.ok ? 0 : static_cast<int>(exit_verification);
    };
  });

  // measure
  auto* mea = app.add_subcommand("measure", "Run a measurement");
  mea->require_subcommand(1);
  auto* mod = mea->add_subcommand("modulus", "Modulus ratios along the non-smoothability witness");
  lam_source mod_lam;
  std::string mod_omega = "pow:1", mod_out;
  int mod_stages = 5, mod_budget = default_search_budget();
  add_lamination_options(mod, mod_lam, 8, "Lamination depth");
  mod->add_option("--omega", mod_omega, "Modulus spec: pow:p/q or step:t1:v1,...")->capture_default_str();
  mod->add_option("--stages", mod_stages, "Number of stages")->capture_default_str();
  mod->add_option("--budget", mod_budget, "Depth budget of witness searches")->capture_default_str();
  mod->add_option("--out", mod_out, "Report file (default: stdout)");
  mod->callback([&] {
    action = [&] {
      lamination L = mod_lam.load();
      auto omega = modulus::parse(mod_omega);
      auto w = nonsmooth_witness(omega, mod_stages, L, coloring{}, run_budget(L, mod_budget));
      auto h = induce(w.element, std::min(2, L.depth()), witness_sources(w));
      std::string text = modulus_report(w, omega, h);
      emit(mod_out, text, out);
      return text.find("\tfail") == std::string::npos ? 0 : static_cast<int>(exit_verification);
    };
  });
  auto* mini = mea->add_subcommand("minimality", "Density of an orbit under a fixed generating set");
  lam_source min_lam;
  std::string min_eps = "1/10", min_seed = "1/7", min_out;
  int min_words = 4, min_budget = default_search_budget();
  add_lamination_options(mini, min_lam, 8, "Lamination depth");
  mini->add_option("--eps", min_eps, "Largest allowed gap")->capture_default_str();
  mini->add_option("--seed-angle", min_seed, "Starting angle")->capture_default_str();
  mini->add_option("--word-length", min_words, "Maximal word length")->capture_default_str();
  mini->add_option("--budget", min_budget, "Depth budget of extension searches")->capture_default_str();
  mini->add_option("--out", min_out, "Report file (default: stdout)");
  mini->callback([&] {
    action = [&] {
      lamination L = min_lam.load();
      int budget = run_budget(L, min_budget);
      std::vector<group_element> gens{rotation_at(root(), 1, L, budget), transporter(root(), first_child(), L, budget),
                                      rotation_at(first_child(), 1, L, budget)};
      rational eps = parse_rational(min_eps);
      angle seed = angle::parse(min_seed);
      bool dense = minimality_probe(seed, gens, eps, min_words, std::min(6, L.depth()));
      std::ostringstream row;
      row << "#kind\tseed\teps\tword_length\tdense\n"
          << "minimality\t" << seed.str() << "\t" << to_string(eps) << "\t" << min_words << "\t"
          << (dense ? "true" : "false") << "\n";
      emit(min_out, row.str(), out);
      return 0;
    };
  });

  // render
  auto* ren = app.add_subcommand("render", "Render a picture");
  ren->require_subcommand(1);
  svg_options svg;
  std::string ren_out;
  auto render_common = [&](CLI::App* sub) {
    sub->add_option("--size", svg.size, "Picture size in pixels")->capture_default_str();
    sub->add_option("--digits", svg.digits, "Decimal digits of coordinates")->capture_default_str();
    sub->add_option("--out", ren_out, "Output file (default: stdout)");
  };
  auto* rlam = ren->add_subcommand("lamination", "Geodesic chord diagram");
  lam_source rlam_src;
  add_lamination_options(rlam, rlam_src, 4, "Lamination depth");
  render_common(rlam);
  rlam->callback([&] { action = [&] { emit(ren_out, lamination_svg(rlam_src.load(), svg), out); return 0; }; });
  auto* rjul = ren->add_subcommand("julia", "Escape-time raster of z^2+i (binary PGM)");
  int jw = 513, jh = 513, jit = 200;
  viewport vp;
  rjul->add_option("--width", jw, "Width in pixels")->check(CLI::PositiveNumber)->capture_default_str();
  rjul->add_option("--height", jh, "Height in pixels")->check(CLI::PositiveNumber)->capture_default_str();
  rjul->add_option("--max-iter", jit, "Iteration cap")->check(CLI::PositiveNumber)->capture_default_str();
  rjul->add_option("--center-re", vp.center_re, "Viewport center, real part")->capture_default_str();
  rjul->add_option("--center-im", vp.center_im, "Viewport center, imaginary part")->capture_default_str();
  rjul->add_option("--half-width", vp.half_width, "Half of the horizontal extent")->capture_default_str();
  rjul->add_option("--out", ren_out, "Output file (default: stdout)");
  rjul->callback([&] { action = [&] { emit(ren_out, to_pgm(julia_raster(jw, jh, jit, vp)), out); return 0; }; });
  auto* rcs = ren->add_subcommand("csst", "Iterates of the self-similar tree");
  int cs_iter = 4;
  rcs->add_option("--iterations", cs_iter, "Number of iterations")->check(CLI::NonNegativeNumber)->capture_default_str();
  render_common(rcs);
  rcs->callback([&] { action = [&] { emit(ren_out, csst_svg(cs_iter, svg), out); return 0; }; });
  auto* rho = ren->add_subcommand("homeo", "Graph of a circle homeomorphism");
  std::string rho_in;
  rho->add_option("--homeo", rho_in, "Homeomorphism file")->required();
  render_common(rho);
  rho->callback([&] {
    action = [&] {
      emit(ren_out, homeo_plot(parse_homeo(read_file(rho_in)), svg), out);
      return 0;
    };
  });

  // dt2-check
  auto* dt2 = app.add_subcommand("dt2-check", "Check the rooted-structure axioms on a depth sample");
  lam_source dt2_lam;
  std::string dt2_dump, dt2_out;
  add_lamination_options(dt2, dt2_lam, 6, "Lamination depth");
  dt2->add_option("--dump", dt2_dump, "Write the relations (leq, r1, r2) to this file");
  dt2->add_option("--out", dt2_out, "Report file (default: stdout)");
  dt2->callback([&] {
    action = [&] {
      lamination L = dt2_lam.load();
      report r;
      r.text << "#suite=dt2 depth=" << L.depth() << " base=0/1 sample=" << L.size() << "\n";
      suite_dt2(L, r);
      emit(dt2_out, r.text.str(), out);
      if (!dt2_dump.empty()) emit(dt2_dump, rooted_dump(L.classes(), rooted_structure{}), out);
      return r.ok ? 0 : static_cast<int>(exit_verification);
    };
  });

  std::vector<std::string> storage{"kaleidocircle"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? static_cast<int>(exit_ok) : static_cast<int>(exit_usage);
  }
  try {
    return action ? action() : static_cast<int>(exit_usage);
  } catch (const budget_exhausted& e) {
    err << "error: " << e.what() << "\n";
    return exit_resource;
  } catch (const resource_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_resource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

}  // namespace kaleido
