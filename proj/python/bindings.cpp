#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "imglab/errors.hpp"
#include "imglab/measure.hpp"
#include "imglab/mealy.hpp"
#include "imglab/normal_form.hpp"
#include "imglab/presentation.hpp"
#include "imglab/schreier.hpp"
#include "imglab/spectral.hpp"
#include "imglab/word.hpp"
#include "imglab/word_problem.hpp"

namespace py = pybind11;

namespace {

using imglab::Word;

Word parse(const std::string& text) { return Word::parse(text); }

py::dict measure_dict(const imglab::measure::FiniteMeasure& m) {
  py::dict d;
  d["e"] = m.e;
  d["a"] = m.a;
  d["b"] = m.b;
  d["c"] = m.c;
  return d;
}

imglab::measure::FiniteMeasure measure_from(const py::dict& d) {
  return imglab::measure::make_measure(
      d.contains("e") ? d["e"].cast<double>() : 0.0, d["a"].cast<double>(),
      d["b"].cast<double>(), d["c"].cast<double>());
}

imglab::spectral::Point3 point_from(const std::array<double, 3>& p) {
  return {p[0], p[1], p[2]};
}

std::array<double, 3> point_to(const imglab::spectral::Point3& p) {
  return {p.y, p.z, p.lambda};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Computational laboratory for the iterated monodromy group of z^2+i: "
      "word problem, Schreier graphs, Markov spectra, self-affine measures.";

  py::register_exception<imglab::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<imglab::PoleError>(m, "PoleError",
                                            PyExc_ArithmeticError);
  py::register_exception<imglab::VarietyError>(m, "VarietyError",
                                               PyExc_ArithmeticError);
  py::register_exception<imglab::SingularAlgebraError>(m, "SingularAlgebraError",
                                                       PyExc_ArithmeticError);
  py::register_exception<imglab::SupportViolationError>(
      m, "SupportViolationError", PyExc_RuntimeError);
  py::register_exception<imglab::InvalidAutomatonError>(
      m, "InvalidAutomatonError", PyExc_ValueError);

  // ---- words ----
  m.def("reduce", [](const std::string& raw) { return imglab::reduce(raw).str(); },
        "Freely reduce a word over {a,b,c}.");
  m.def("multiply", [](const std::string& g, const std::string& h) {
    return imglab::multiply(parse(g), parse(h)).str();
  });
  m.def("inverse",
        [](const std::string& g) { return imglab::inverse(parse(g)).str(); });
  m.def("sections", [](const std::string& g) {
    auto dec = imglab::sections(parse(g));
    return py::make_tuple(dec.root == imglab::BitPerm::Swap ? "swap" : "id",
                          dec.left.str(), dec.right.str());
  });
  m.def("section_at", [](const std::string& g, const std::string& v) {
    return imglab::section_at(parse(g), v).str();
  });
  m.def("act", [](const std::string& g, const std::string& v) {
    return imglab::act(parse(g), v);
  });
  m.def("gamma_length",
        [](const std::string& g) { return imglab::gamma_length(parse(g)); });
  m.def("gamma_canonical", [](const std::string& g) {
    return imglab::gamma_canonical(parse(g)).str();
  });
  m.def("is_trivial",
        [](const std::string& g) { return imglab::is_trivial(parse(g)); });
  m.def("element_order", [](const std::string& g, int cap) -> py::object {
    auto order = imglab::element_order(parse(g), cap);
    if (!order) return py::none();
    return py::int_(*order);
  }, py::arg("word"), py::arg("cap") = 64);

  // ---- automaton ----
  m.def("img_automaton_json",
        [] { return imglab::mealy::automaton_to_json(imglab::mealy::img_automaton()); });
  m.def("automaton_act", [](const std::string& state, const std::string& v) {
    return imglab::mealy::automaton_act(imglab::mealy::img_automaton(), state, v);
  });
  m.def("moore_dot",
        [] { return imglab::mealy::moore_dot(imglab::mealy::img_automaton()); });

  // ---- presentation ----
  m.def("substitute", [](const std::string& w, int n) {
    return imglab::presentation::substitute(parse(w), n).str();
  }, py::arg("word"), py::arg("n") = 1);
  m.def("relator", [](int family, int n) {
    return imglab::presentation::relator(family, n).str();
  });
  m.def("u_words", [] {
    std::vector<std::string> out;
    for (const Word& w : imglab::presentation::u_words()) out.push_back(w.str());
    return out;
  });
  m.def("verify_relators", [](int max_n) {
    py::list rows;
    for (const auto& row : imglab::presentation::verify_relators(max_n)) {
      py::dict d;
      d["family"] = row.family;
      d["n"] = row.n;
      d["length"] = row.length;
      d["verified"] = row.verified;
      d["depth"] = row.depth;
      d["milliseconds"] = row.millis;
      rows.append(d);
    }
    return rows;
  }, py::arg("max_n") = 4);
  m.def("phi_section_check", [](const std::string& w) {
    return imglab::presentation::phi_section_check(parse(w));
  });
  m.def("branch_identity_check", &imglab::presentation::branch_identity_check,
        py::arg("depth") = 10);
  m.def("hnn_presentation", [] {
    return py::module_::import("json").attr("loads")(
        imglab::presentation::hnn_presentation());
  });

  // ---- schreier ----
  m.def("schreier_adjacency", [](int level) {
    return imglab::schreier::adjacency_matrix(imglab::schreier::build(level, true));
  });
  m.def("schreier_connected", [](int level) {
    return imglab::schreier::is_connected(imglab::schreier::build(level, true));
  });
  m.def("schreier_export", [](int level, const std::string& format, bool loops) {
    auto g = imglab::schreier::build(level, loops);
    auto fmt = format == "dot" ? imglab::schreier::ExportFormat::Dot
                               : imglab::schreier::ExportFormat::Csv;
    return imglab::schreier::export_graph(g, fmt);
  }, py::arg("level"), py::arg("format") = "csv", py::arg("loops") = true);

  // ---- spectral ----
  m.def("level_ops", [](int n) {
    auto ops = imglab::spectral::level_ops(n);
    return py::make_tuple(ops.a, ops.b, ops.c);
  });
  m.def("markov", &imglab::spectral::markov);
  m.def("eigenvalues", [](const Eigen::MatrixXd& mat, double tol) {
    return imglab::spectral::eigenvalues(mat, tol).eigenvalues;
  }, py::arg("matrix"), py::arg("tol") = 1e-12);
  m.def("spectrum_csv", [](int level, double tol, double merge_tol) {
    auto report = imglab::spectral::eigenvalues(imglab::spectral::markov(level), tol);
    return imglab::spectral::spectrum_csv(report, merge_tol);
  }, py::arg("level"), py::arg("tol") = 1e-12, py::arg("merge_tol") = 1e-9);
  m.def("histogram_csv", [](int level, int bins, double tol) {
    auto report = imglab::spectral::eigenvalues(imglab::spectral::markov(level), tol);
    return imglab::spectral::histogram_csv(report, bins);
  }, py::arg("level"), py::arg("bins") = 64, py::arg("tol") = 1e-12);
  m.def("pencil_matrix", [](int n, const std::array<double, 3>& p) {
    return imglab::spectral::pencil_matrix(n, point_from(p));
  });
  m.def("map_F", [](const std::array<double, 3>& p) {
    return point_to(imglab::spectral::map_F(point_from(p)));
  });
  m.def("map_G", [](const std::array<double, 3>& p) {
    return point_to(imglab::spectral::map_G(point_from(p)));
  });
  m.def("conjugator_C", [](const std::array<double, 3>& p) {
    return point_to(imglab::spectral::conjugator_C(point_from(p)));
  });
  m.def("variety_member",
        [](const std::array<double, 3>& p, const std::string& tag, double tol) {
          imglab::spectral::Variety v;
          if (tag == "P") v = imglab::spectral::Variety::P;
          else if (tag == "Z1") v = imglab::spectral::Variety::Z1;
          else if (tag == "Z2") v = imglab::spectral::Variety::Z2;
          else if (tag == "Z3") v = imglab::spectral::Variety::Z3;
          else throw imglab::InputError("variety tag must be P, Z1, Z2 or Z3");
          return imglab::spectral::variety_member(point_from(p), v, tol);
        }, py::arg("point"), py::arg("tag"), py::arg("tol") = 1e-9);
  m.def("schur_identity_residual", [](int n, const std::array<double, 3>& p) {
    return imglab::spectral::schur_identity_residual(n, point_from(p));
  });
  m.def("line_spectrum_candidates", &imglab::spectral::line_spectrum_candidates,
        py::arg("level"), py::arg("grid") = 10000, py::arg("tol") = 1e-12);
  m.def("inclusion_check", [](int n, double tol) {
    auto report = imglab::spectral::inclusion_check(n, tol);
    py::dict d;
    d["level"] = report.level;
    d["tol"] = report.tol;
    d["all_accounted"] = report.all_accounted;
    d["conjecture_fraction"] = report.conjecture_fraction;
    py::list rows;
    for (const auto& row : report.rows) {
      py::dict r;
      r["lambda"] = row.lambda;
      r["multiplicity"] = row.multiplicity;
      r["k"] = row.k;
      r["variety"] = std::string(1, row.variety);
      r["residual"] = row.residual;
      r["refined"] = row.refined;
      r["accounted"] = row.accounted;
      r["conjecture_hit"] = row.conjecture_hit;
      rows.append(r);
    }
    d["rows"] = rows;
    return d;
  }, py::arg("level"), py::arg("tol") = 1e-6);
  m.def("special_point_check", &imglab::spectral::special_point_check,
        py::arg("level"), py::arg("tol") = 1e-8);
  m.def("attractor_cloud",
        [](int depth, int grid, const std::array<double, 6>& box, double tol) {
          imglab::spectral::BoxBounds b{box[0], box[1], box[2],
                                        box[3], box[4], box[5]};
          auto points = imglab::spectral::attractor_cloud(depth, grid, b, tol);
          Eigen::MatrixXd out(points.size(), 3);
          for (std::size_t i = 0; i < points.size(); ++i) {
            out(i, 0) = points[i].y;
            out(i, 1) = points[i].z;
            out(i, 2) = points[i].lambda;
          }
          return out;
        },
        py::arg("depth"), py::arg("grid") = 200,
        py::arg("box") = std::array<double, 6>{-3, 3, -3, 3, -3, 3},
        py::arg("tol") = 1e-9);

  // ---- measure ----
  m.def("restrict0", [](const py::dict& d) {
    return measure_dict(imglab::measure::restrict0(measure_from(d)));
  });
  m.def("phi_transform", [](const py::dict& d) {
    return measure_dict(imglab::measure::phi_transform(measure_from(d)));
  });
  m.def("coefficient_map", &imglab::measure::coefficient_map);
  m.def("fixed_point", [](double tol) {
    auto fp = imglab::measure::fixed_point(tol);
    py::dict d;
    d["x"] = fp.x;
    d["y"] = fp.y;
    d["z"] = fp.z;
    d["alpha"] = fp.alpha;
    d["cubic_residual"] = fp.cubic_residual;
    d["map_residual"] = fp.map_residual;
    return d;
  }, py::arg("tol") = 1e-12);
  m.def("self_affinity_check", [](const py::dict& d, double tol) {
    return imglab::measure::self_affinity_check(measure_from(d), tol);
  }, py::arg("measure"), py::arg("tol") = 1e-10);
  m.def("uniqueness_scan", [](int grid) {
    auto report = imglab::measure::uniqueness_scan(grid);
    py::dict d;
    d["grid"] = report.grid;
    d["interior_fixed_points"] = report.interior_fixed_points;
    d["plus_branch_y"] = report.plus_branch_y;
    d["fixed_point_y"] = report.fixed_point_y;
    return d;
  }, py::arg("grid") = 100);
  m.def("walk_oracle",
        [](const py::dict& d, std::uint64_t returns, std::uint64_t seed,
           int streams, int threads) {
          auto report = imglab::measure::walk_oracle(measure_from(d), returns,
                                                     seed, streams, threads);
          py::dict out;
          out["returns"] = report.returns;
          out["seed"] = report.seed;
          out["streams"] = report.streams;
          out["rng"] = report.rng;
          out["tallies"] = report.tallies;
          out["empirical"] = measure_dict(report.empirical);
          return out;
        },
        py::arg("measure"), py::arg("returns"), py::arg("seed") = 1,
        py::arg("streams") = 1, py::arg("threads") = 1);
  m.def("l1_distance", [](const py::dict& lhs, const py::dict& rhs) {
    return imglab::measure::l1_distance(measure_from(lhs), measure_from(rhs));
  });

  m.attr("__version__") = "0.1.0";
}
