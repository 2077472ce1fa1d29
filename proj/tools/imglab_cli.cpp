// imglab: command-line laboratory for the iterated monodromy group of z^2+i.
// Exit codes: 0 success, 1 assertion failure, 2 input error.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "imglab/errors.hpp"
#include "imglab/format.hpp"
#include "imglab/measure.hpp"
#include "imglab/mealy.hpp"
#include "imglab/normal_form.hpp"
#include "imglab/presentation.hpp"
#include "imglab/schreier.hpp"
#include "imglab/spectral.hpp"
#include "imglab/word.hpp"
#include "imglab/word_problem.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using imglab::fmt_real;
using imglab::Word;

// Thrown by handlers when a verification ran and failed.
struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunContext {
  std::string output_path;  // empty: stdout, no sidecar
  std::vector<std::string> argv;
  std::string subcommand;
  nlohmann::json options = nlohmann::json::object();
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void emit(const std::string& primary) const {
    if (output_path.empty()) {
      std::cout << primary;
      return;
    }
    {
      std::ofstream out(output_path, std::ios::binary);
      if (!out) throw imglab::InputError("cannot write " + output_path);
      out << primary;
    }
    nlohmann::json meta;
    meta["tool"] = "imglab";
    meta["version"] = kVersion;
    meta["subcommand"] = subcommand;
    meta["argv"] = argv;
    meta["options"] = options;
    meta["output"] = output_path;
    meta["wall_ms"] = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    std::ofstream side(output_path + ".meta.json", std::ios::binary);
    side << meta.dump(2) << "\n";
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw imglab::InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// All numeric output carries 12 significant digits; JSON values are rounded
// through the same formatter the CSV writers use.
double r12(double x) { return std::stod(fmt_real(x)); }

nlohmann::json measure_json(const imglab::measure::FiniteMeasure& m) {
  return {{"e", r12(m.e)}, {"a", r12(m.a)}, {"b", r12(m.b)}, {"c", r12(m.c)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "imglab: exact arithmetic, Schreier graphs, Markov spectra and "
      "self-affine measures for the iterated monodromy group of z^2+i"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key=value file mirroring the flags; flags override");
  app.set_version_flag("--version", kVersion);

  RunContext ctx;
  ctx.argv.assign(argv, argv + argc);
  int threads = 1;
  app.add_option("--threads", threads, "worker cap for data-parallel steps")
      ->capture_default_str();
  app.add_option("-o,--output", ctx.output_path,
                 "primary output file (stdout when omitted); a "
                 "<output>.meta.json sidecar records the run");

  // ---- word ----------------------------------------------------------
  auto* word = app.add_subcommand("word", "word arithmetic and tree action");
  word->require_subcommand(1);
  std::string word_arg, vertex_arg;
  int order_cap = 64;

  auto* w_reduce = word->add_subcommand("reduce", "freely reduce a word");
  w_reduce->add_option("word", word_arg, "word over {a,b,c} or e")->required();
  w_reduce->callback([&] {
    ctx.subcommand = "word reduce";
    ctx.emit(Word::parse(word_arg).str() + "\n");
  });

  auto* w_order = word->add_subcommand("order", "element order up to a cap");
  w_order->add_option("word", word_arg)->required();
  w_order->add_option("--cap", order_cap, "search bound")->capture_default_str();
  w_order->callback([&] {
    ctx.subcommand = "word order";
    ctx.options["cap"] = order_cap;
    auto result = imglab::element_order(Word::parse(word_arg), order_cap);
    ctx.emit(result ? std::to_string(*result) + "\n" : "exceeds-cap\n");
  });

  auto* w_trivial = word->add_subcommand("trivial", "word problem");
  w_trivial->add_option("word", word_arg)->required();
  w_trivial->callback([&] {
    ctx.subcommand = "word trivial";
    ctx.emit(imglab::is_trivial(Word::parse(word_arg)) ? "true\n" : "false\n");
  });

  auto* w_act = word->add_subcommand("act", "image of a vertex");
  w_act->add_option("word", word_arg)->required();
  w_act->add_option("vertex", vertex_arg, "binary string")->required();
  w_act->callback([&] {
    ctx.subcommand = "word act";
    ctx.emit(imglab::act(Word::parse(word_arg), vertex_arg) + "\n");
  });

  auto* w_section = word->add_subcommand("section", "section at a vertex");
  w_section->add_option("word", word_arg)->required();
  w_section->add_option("vertex", vertex_arg)->required();
  w_section->callback([&] {
    ctx.subcommand = "word section";
    ctx.emit(imglab::section_at(Word::parse(word_arg), vertex_arg).str() + "\n");
  });

  // ---- automaton -----------------------------------------------------
  auto* automaton = app.add_subcommand("automaton", "the four-state automaton");
  automaton->require_subcommand(1);
  std::string automaton_input;
  int automaton_depth = 10;

  auto load_automaton = [&automaton_input] {
    return automaton_input.empty()
               ? imglab::mealy::img_automaton()
               : imglab::mealy::automaton_from_json(read_file(automaton_input));
  };

  auto* a_dot = automaton->add_subcommand("dot", "Moore diagram as DOT");
  a_dot->add_option("--input", automaton_input, "automaton JSON file");
  a_dot->callback([&] {
    ctx.subcommand = "automaton dot";
    ctx.emit(imglab::mealy::moore_dot(load_automaton()));
  });

  auto* a_json = automaton->add_subcommand("json", "automaton as JSON");
  a_json->add_option("--input", automaton_input, "automaton JSON file");
  a_json->callback([&] {
    ctx.subcommand = "automaton json";
    ctx.emit(imglab::mealy::automaton_to_json(load_automaton()));
  });

  auto* a_check = automaton->add_subcommand(
      "check", "invertibility plus action cross-validation");
  a_check->add_option("--input", automaton_input, "automaton JSON file");
  a_check->add_option("--depth", automaton_depth, "vertex depth to compare")
      ->capture_default_str();
  a_check->callback([&] {
    ctx.subcommand = "automaton check";
    ctx.options["depth"] = automaton_depth;
    auto m = load_automaton();
    if (!imglab::mealy::is_invertible(m)) {
      throw AssertionFailure("automaton is not invertible");
    }
    if (automaton_input.empty()) {
      // The built-in automaton must reproduce the wreath recursion action.
      for (const char* q : {"a", "b", "c"}) {
        Word w = Word::parse(q);
        for (int level = 0; level <= automaton_depth; ++level) {
          for (std::uint64_t v = 0; v < (1ull << level); ++v) {
            std::string bits(level, '0');
            for (int i = 0; i < level; ++i) {
              if ((v >> (level - 1 - i)) & 1ull) bits[i] = '1';
            }
            if (imglab::mealy::automaton_act(m, q, bits) !=
                imglab::act(w, bits)) {
              throw AssertionFailure("automaton action diverges from the "
                                     "wreath recursion at " +
                                     bits);
            }
          }
        }
      }
    }
    ctx.emit("ok\n");
  });

  // ---- relators ------------------------------------------------------
  auto* relators = app.add_subcommand("relators", "L-presentation machinery");
  relators->require_subcommand(1);
  int max_n = 4;
  int branch_depth = 10;
  std::string report_path;

  auto* r_verify = relators->add_subcommand(
      "verify", "check triviality of the seven relator families");
  r_verify->add_option("--max-n", max_n, "substitution depth 0..8")
      ->capture_default_str();
  r_verify->add_option("--report", report_path, "CSV report path");
  r_verify->callback([&] {
    ctx.subcommand = "relators verify";
    ctx.options["max_n"] = max_n;
    auto checks = imglab::presentation::verify_relators(max_n);
    std::string csv = imglab::presentation::relator_report_csv(checks);
    if (!report_path.empty()) {
      std::ofstream out(report_path, std::ios::binary);
      if (!out) throw imglab::InputError("cannot write " + report_path);
      out << csv;
      ctx.options["report"] = report_path;
      ctx.emit(imglab::presentation::all_verified(checks) ? "ok\n" : "FAILED\n");
    } else {
      ctx.emit(csv);
    }
    if (!imglab::presentation::all_verified(checks)) {
      throw AssertionFailure("a relator acted nontrivially");
    }
  });

  auto* r_u = relators->add_subcommand("u-words", "the six U-words");
  r_u->callback([&] {
    ctx.subcommand = "relators u-words";
    std::ostringstream os;
    auto words = imglab::presentation::u_words();
    for (std::size_t i = 0; i < words.size(); ++i) {
      os << "U" << i + 1 << "," << words[i].str() << "\n";
    }
    ctx.emit(os.str());
  });

  auto* r_branch = relators->add_subcommand(
      "branch", "branch identities [b,c]=([a,b],1), [c,b^a]=([b,c],1)");
  r_branch->add_option("--depth", branch_depth, "action comparison depth")
      ->capture_default_str();
  r_branch->callback([&] {
    ctx.subcommand = "relators branch";
    ctx.options["depth"] = branch_depth;
    if (!imglab::presentation::branch_identity_check(branch_depth)) {
      throw AssertionFailure("branch identity check failed");
    }
    ctx.emit("ok\n");
  });

  auto* r_hnn = relators->add_subcommand(
      "hnn", "finitely presented HNN extension data");
  r_hnn->callback([&] {
    ctx.subcommand = "relators hnn";
    ctx.emit(imglab::presentation::hnn_presentation());
  });

  // ---- schreier ------------------------------------------------------
  auto* schreier = app.add_subcommand("schreier", "level Schreier graphs");
  schreier->require_subcommand(1);
  int level = 1;
  std::string format = "csv";
  bool loops = true;

  auto* s_build = schreier->add_subcommand("build", "build and export");
  s_build->add_option("--level", level, "tree level 0..16")->required();
  s_build->add_option("--format", format, "dot|csv")->capture_default_str();
  s_build->add_flag("--loops,!--no-loops", loops, "keep generator loops")
      ->capture_default_str();
  s_build->callback([&] {
    ctx.subcommand = "schreier build";
    ctx.options = {{"level", level}, {"format", format}, {"loops", loops}};
    auto g = imglab::schreier::build(level, loops);
    imglab::schreier::ExportFormat fmt;
    if (format == "dot") {
      fmt = imglab::schreier::ExportFormat::Dot;
    } else if (format == "csv") {
      fmt = imglab::schreier::ExportFormat::Csv;
    } else {
      throw imglab::InputError("unknown format '" + format + "'");
    }
    ctx.emit(imglab::schreier::export_graph(g, fmt));
  });

  // ---- spectrum ------------------------------------------------------
  auto* spectrum = app.add_subcommand("spectrum", "Markov operator spectra");
  spectrum->require_subcommand(1);
  int bins = 64;
  double spec_tol = 1e-12;
  double merge_tol = 1e-9;
  int line_grid = 10000;

  auto* sp_eigs = spectrum->add_subcommand("eigs", "eigenvalues of M_n");
  sp_eigs->add_option("--level", level)->required();
  sp_eigs->add_option("--tol", spec_tol, "eigensolver residual tolerance")
      ->capture_default_str();
  sp_eigs->add_option("--merge-tol", merge_tol, "multiplicity clustering")
      ->capture_default_str();
  sp_eigs->callback([&] {
    ctx.subcommand = "spectrum eigs";
    ctx.options = {{"level", level}, {"tol", spec_tol}, {"merge_tol", merge_tol}};
    auto report = imglab::spectral::eigenvalues(imglab::spectral::markov(level),
                                                spec_tol);
    ctx.emit(imglab::spectral::spectrum_csv(report, merge_tol));
  });

  auto* sp_hist = spectrum->add_subcommand("histogram", "spectral histogram");
  sp_hist->add_option("--level", level)->required();
  sp_hist->add_option("--bins", bins)->capture_default_str();
  sp_hist->add_option("--tol", spec_tol)->capture_default_str();
  sp_hist->callback([&] {
    ctx.subcommand = "spectrum histogram";
    ctx.options = {{"level", level}, {"bins", bins}, {"tol", spec_tol}};
    auto report = imglab::spectral::eigenvalues(imglab::spectral::markov(level),
                                                spec_tol);
    ctx.emit(imglab::spectral::histogram_csv(report, bins));
  });

  auto* sp_line = spectrum->add_subcommand(
      "line", "spectrum candidates on the line y = z = 1");
  sp_line->add_option("--level", level)->required();
  sp_line->add_option("--grid", line_grid)->capture_default_str();
  sp_line->add_option("--tol", spec_tol, "bisection tolerance")
      ->capture_default_str();
  sp_line->callback([&] {
    ctx.subcommand = "spectrum line";
    ctx.options = {{"level", level}, {"grid", line_grid}, {"tol", spec_tol}};
    std::ostringstream os;
    os << "lambda\n";
    for (double root :
         imglab::spectral::line_spectrum_candidates(level, line_grid, spec_tol)) {
      os << fmt_real(root) << "\n";
    }
    ctx.emit(os.str());
  });

  // ---- pencil --------------------------------------------------------
  auto* pencil = app.add_subcommand("pencil", "pencil and Schur renormalization");
  pencil->require_subcommand(1);
  double pencil_tol = 1e-9;
  std::vector<double> point_opt;
  int samples = 100;
  std::uint64_t seed = 1;

  auto* p_schur = pencil->add_subcommand(
      "schur-check", "(1/y) S1(M~_n(p)) = M~_{n-1}(F(p))");
  p_schur->add_option("--level", level, "pencil level n >= 1")->required();
  p_schur->add_option("--tol", pencil_tol)->capture_default_str();
  p_schur->add_option("--point", point_opt, "y z lambda")->expected(3);
  p_schur->add_option("--samples", samples, "random admissible points")
      ->capture_default_str();
  p_schur->add_option("--seed", seed)->capture_default_str();
  p_schur->callback([&] {
    ctx.subcommand = "pencil schur-check";
    ctx.options = {{"level", level}, {"tol", pencil_tol}, {"seed", seed}};
    nlohmann::json j;
    j["level"] = level;
    j["tol"] = pencil_tol;
    double worst = 0.0;
    if (!point_opt.empty()) {
      imglab::spectral::Point3 p{point_opt[0], point_opt[1], point_opt[2]};
      worst = imglab::spectral::schur_identity_residual(level, p);
      j["points"] = 1;
    } else {
      std::mt19937_64 rng(seed);
      auto u = [&rng] { return (rng() >> 11) * 0x1.0p-53 * 4.0 - 2.0; };
      int checked = 0;
      while (checked < samples) {
        imglab::spectral::Point3 p{u(), u(), u()};
        const double z1 =
            (p.z - p.lambda - p.y) * (p.z - p.lambda + p.y);
        if (std::abs(p.y) < 1e-3 || std::abs(z1) < 1e-3) continue;
        worst = std::max(worst,
                         imglab::spectral::schur_identity_residual(level, p));
        ++checked;
      }
      j["points"] = samples;
    }
    j["max_residual"] = r12(worst);
    j["ok"] = worst <= pencil_tol;
    ctx.emit(j.dump(2) + "\n");
    if (worst > pencil_tol) {
      throw AssertionFailure("Schur identity residual " + fmt_real(worst) +
                             " exceeds tolerance");
    }
  });

  auto* p_incl = pencil->add_subcommand(
      "inclusion", "eigenvalues of a_n+b_n+c_n against P, Z1, Z2 preimages");
  p_incl->add_option("--level", level, "1..8")->required();
  p_incl->add_option("--tol", pencil_tol)->capture_default_str();
  p_incl->callback([&] {
    ctx.subcommand = "pencil inclusion";
    ctx.options = {{"level", level}, {"tol", pencil_tol}};
    auto report = imglab::spectral::inclusion_check(level, pencil_tol);
    nlohmann::json j;
    j["level"] = report.level;
    j["tol"] = report.tol;
    j["all_accounted"] = report.all_accounted;
    j["conjecture_fraction"] = r12(report.conjecture_fraction);
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
      rows.push_back({{"lambda", r12(row.lambda)},
                      {"multiplicity", row.multiplicity},
                      {"k", row.k},
                      {"variety", std::string(1, row.variety)},
                      {"residual", r12(row.residual)},
                      {"refined", row.refined},
                      {"accounted", row.accounted},
                      {"conjecture_hit", row.conjecture_hit}});
    }
    j["rows"] = rows;
    ctx.emit(j.dump(2) + "\n");
    if (!report.all_accounted) {
      throw AssertionFailure("an eigenvalue escaped P, Z1 and Z2 preimages");
    }
  });

  auto* p_special = pencil->add_subcommand(
      "special-point", "4 in sp((a_{n-1}+1)(c_{n-1}+1))");
  p_special->add_option("--level", level, "n >= 2")->required();
  p_special->add_option("--tol", pencil_tol)->capture_default_str();
  p_special->callback([&] {
    ctx.subcommand = "pencil special-point";
    ctx.options = {{"level", level}, {"tol", pencil_tol}};
    if (!imglab::spectral::special_point_check(level, pencil_tol)) {
      throw AssertionFailure("4 is not an eigenvalue within tolerance");
    }
    ctx.emit("ok\n");
  });

  // ---- attractor -----------------------------------------------------
  int depth = 4;
  int grid = 200;
  std::vector<double> box_opt;
  double pole_tol = 1e-9;
  auto* attractor = app.add_subcommand(
      "attractor", "point cloud of F-preimages of the plane P");
  attractor->add_option("--depth", depth, "preimage depth 0..6")
      ->capture_default_str();
  attractor->add_option("--grid", grid, "grid points per axis (<= 400)")
      ->capture_default_str();
  attractor->add_option("--box", box_opt, "ymin ymax zmin zmax lmin lmax")
      ->expected(6);
  attractor->add_option("--tol", pole_tol, "pole guard")->capture_default_str();
  attractor->callback([&] {
    ctx.subcommand = "attractor";
    imglab::spectral::BoxBounds box;
    if (!box_opt.empty()) {
      box = {box_opt[0], box_opt[1], box_opt[2],
             box_opt[3], box_opt[4], box_opt[5]};
    }
    ctx.options = {{"depth", depth},
                   {"grid", grid},
                   {"box", {box.ymin, box.ymax, box.zmin, box.zmax, box.lmin,
                            box.lmax}},
                   {"tol", pole_tol}};
    auto points = imglab::spectral::attractor_cloud(depth, grid, box, pole_tol);
    ctx.emit(imglab::spectral::points_csv(points));
  });

  // ---- measure -------------------------------------------------------
  auto* measure = app.add_subcommand("measure", "self-affine measures");
  measure->require_subcommand(1);
  double we = 0.0, wa = 1.0 / 3, wb = 1.0 / 3, wc = 1.0 / 3;
  double measure_tol = 1e-10;
  std::uint64_t returns = 1000000;
  int streams = 1;

  auto add_weights = [&](CLI::App* cmd) {
    cmd->add_option("--e", we, "identity weight")->capture_default_str();
    cmd->add_option("--a", wa, "weight of a")->capture_default_str();
    cmd->add_option("--b", wb, "weight of b")->capture_default_str();
    cmd->add_option("--c", wc, "weight of c")->capture_default_str();
  };

  auto* m_fixed = measure->add_subcommand("fixed-point", "the self-affine point");
  m_fixed->add_option("--tol", measure_tol)->capture_default_str();
  m_fixed->callback([&] {
    ctx.subcommand = "measure fixed-point";
    ctx.options = {{"tol", measure_tol}};
    auto fp = imglab::measure::fixed_point(measure_tol);
    nlohmann::json j{{"x", r12(fp.x)},
                     {"y", r12(fp.y)},
                     {"z", r12(fp.z)},
                     {"alpha", r12(fp.alpha)},
                     {"cubic_residual", r12(fp.cubic_residual)},
                     {"map_residual", r12(fp.map_residual)}};
    ctx.emit(j.dump(2) + "\n");
  });

  auto* m_restrict = measure->add_subcommand("restrict", "mu|_0 in closed form");
  add_weights(m_restrict);
  m_restrict->callback([&] {
    ctx.subcommand = "measure restrict";
    auto m = imglab::measure::make_measure(we, wa, wb, wc);
    ctx.options = {{"measure", measure_json(m)}};
    auto r = imglab::measure::restrict0(m);
    ctx.emit(measure_json(r).dump(2) + "\n");
  });

  auto* m_affine = measure->add_subcommand("self-affine",
                                           "mu|_0 = alpha e + (1-alpha) mu?");
  add_weights(m_affine);
  m_affine->add_option("--tol", measure_tol)->capture_default_str();
  m_affine->callback([&] {
    ctx.subcommand = "measure self-affine";
    auto m = imglab::measure::make_measure(we, wa, wb, wc);
    ctx.options = {{"measure", measure_json(m)}, {"tol", measure_tol}};
    ctx.emit(imglab::measure::self_affinity_check(m, measure_tol) ? "true\n"
                                                                  : "false\n");
  });

  auto* m_unique = measure->add_subcommand("uniqueness", "fixed point scan");
  int scan_grid = 100;
  m_unique->add_option("--grid", scan_grid)->capture_default_str();
  m_unique->callback([&] {
    ctx.subcommand = "measure uniqueness";
    ctx.options = {{"grid", scan_grid}};
    auto report = imglab::measure::uniqueness_scan(scan_grid);
    nlohmann::json j;
    j["grid"] = report.grid;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : report.interior_fixed_points) {
      pts.push_back({r12(p[0]), r12(p[1]), r12(p[2])});
    }
    j["interior_fixed_points"] = pts;
    j["plus_branch_y"] = r12(report.plus_branch_y);
    j["fixed_point_y"] = r12(report.fixed_point_y);
    ctx.emit(j.dump(2) + "\n");
  });

  auto* m_walk = measure->add_subcommand("walk", "Monte-Carlo oracle for mu|_0");
  add_weights(m_walk);
  m_walk->add_option("--returns", returns)->capture_default_str();
  m_walk->add_option("--seed", seed)->capture_default_str();
  m_walk->add_option("--streams", streams)->capture_default_str();
  m_walk->callback([&] {
    ctx.subcommand = "measure walk";
    auto m = imglab::measure::make_measure(we, wa, wb, wc);
    ctx.options = {{"measure", measure_json(m)},
                   {"returns", returns},
                   {"seed", seed},
                   {"streams", streams}};
    auto report = imglab::measure::walk_oracle(m, returns, seed, streams, threads);
    auto closed = imglab::measure::restrict0(m);
    nlohmann::json j;
    j["seed"] = report.seed;
    j["streams"] = report.streams;
    j["returns"] = report.returns;
    j["rng"] = report.rng;
    j["tallies"] = {{"e", report.tallies[0]},
                    {"a", report.tallies[1]},
                    {"b", report.tallies[2]},
                    {"c", report.tallies[3]}};
    j["empirical"] = measure_json(report.empirical);
    j["closed_form"] = measure_json(closed);
    j["l1_distance"] = r12(imglab::measure::l1_distance(report.empirical, closed));
    ctx.emit(j.dump(2) + "\n");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const imglab::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const imglab::PoleError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const imglab::VarietyError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const imglab::SingularAlgebraError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const AssertionFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
