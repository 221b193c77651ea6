#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bks/certificate.hpp"
#include "bks/error.hpp"
#include "bks/oracle.hpp"

namespace py = pybind11;
using namespace bks;

namespace {

GenerateOptions make_options(const std::string& seed_axis,
                             const std::optional<std::string>& target,
                             int max_links, long precision_bits) {
  GenerateOptions opt;
  opt.seed_axis = parse_axis_text(seed_axis);
  if (target) opt.target = parse_target_text(*target);
  opt.max_links = max_links;
  opt.precision.bits = static_cast<mpfr_prec_t>(precision_bits);
  if (opt.precision.max_bits < opt.precision.bits)
    opt.precision.max_bits = opt.precision.bits;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Machine-checkable uncolorability certificates: exact derivation rules "
      "over an algebraic scalar tower, compiled orthogonality instances, and "
      "an independent combinatorial coloring oracle.";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      std::string msg =
          std::string(error_kind_name(e.kind())) + " error: " + e.what();
      PyErr_SetString(PyExc_ValueError, msg.c_str());
    }
  });

  m.attr("format_version") = kCertificateFormatVersion;

  m.def(
      "generate",
      [](const std::string& seed_axis, const std::optional<std::string>& target,
         int max_links, long precision_bits) {
        GenerateOptions opt =
            make_options(seed_axis, target, max_links, precision_bits);
        Certificate cert = make_certificate(generate_derivation(opt), opt);
        return serialize_certificate(cert);
      },
      py::arg("seed_axis") = "all", py::arg("target") = std::nullopt,
      py::arg("max_links") = 64, py::arg("precision_bits") = 256,
      "Build an uncolorability derivation and return the serialized "
      "certificate text. seed_axis is '1', '2', '3' or 'all'; target is an "
      "optional comma-separated exact scalar triple.");

  m.def(
      "verify",
      [](const std::string& text) {
        Certificate cert = parse_certificate(text);
        CertificateCheck check = verify_certificate(cert);
        py::dict d;
        d["status"] = "verified";
        d["nodes"] = check.stats.nodes;
        d["contexts"] = check.stats.contexts;
        d["checked_triples"] = check.stats.triples;
        d["sign_checks"] = check.stats.sign_checks;
        d["points"] = check.instance.points.size();
        d["triples"] = check.instance.triples.size();
        return d;
      },
      py::arg("text"),
      "Re-check a certificate end to end: every derivation step, the stored "
      "orthogonality instance, the seed frames, and the content digest. "
      "Raises ValueError on the first failure.");

  m.def(
      "instance",
      [](const std::string& text) {
        Certificate cert = parse_certificate(text);
        ContextSet cs = expand_to_triples(cert.derivation);
        py::list coords;
        for (int rep : cs.points) {
          const Vec3& v = cert.derivation.vectors.at(static_cast<size_t>(rep));
          coords.append(py::make_tuple(v[0].str(), v[1].str(), v[2].str()));
        }
        py::list triples;
        for (const auto& t : cs.triples)
          triples.append(py::make_tuple(t[0], t[1], t[2]));
        py::dict d;
        d["points"] = cs.points.size();
        d["coordinates"] = coords;
        d["triples"] = triples;
        d["seeds"] = seed_point_indices(cert, cs);
        return d;
      },
      py::arg("text"),
      "Expand a certificate into its combinatorial instance: exact point "
      "coordinates (as scalar expressions), orthogonal triples as point index "
      "tuples, and the seed point indices.");

  m.def(
      "color",
      [](const std::string& text, const std::string& mode,
         const std::vector<std::pair<int, int>>& pins) {
        Certificate cert = parse_certificate(text);
        ContextSet cs = expand_to_triples(cert.derivation);

        ColoringProblem problem;
        problem.num_points = static_cast<int>(cs.points.size());
        problem.triples = cs.triples;

        // Hypothesis seeds are part of a conditional certificate's claim and
        // are always pinned to 1, exactly as the command line does.
        int hypothesis_pins = 0;
        for (int node_id : cert.derivation.seeds) {
          const Node& n = cert.derivation.nodes.at(static_cast<size_t>(node_id));
          int point = cs.point_of.at(static_cast<size_t>(n.vecs.at("point")));
          if (point < 0)
            throw Error(ErrorKind::Validate, "seed point is not part of the instance");
          problem.pins.push_back({point, 1});
          ++hypothesis_pins;
        }
        for (const auto& [point, value] : pins) {
          if (value != 0 && value != 1)
            throw Error(ErrorKind::Usage, "pin value must be 0 or 1");
          problem.pins.push_back({point, value});
        }

        ColorMode m;
        if (mode == "exhaustive") {
          m = ColorMode::Exhaustive;
        } else if (mode == "backtracking") {
          m = ColorMode::Backtracking;
        } else {
          throw Error(ErrorKind::Usage, "mode must be exhaustive or backtracking");
        }

        ColoringResult res = color_problem(problem, m);
        py::dict d;
        d["colorable"] = res.colorable;
        d["points"] = problem.num_points;
        d["triples"] = problem.triples.size();
        d["pins"] = problem.pins.size();
        d["hypothesis_pins"] = hypothesis_pins;
        d["nodes"] = res.nodes;
        d["propagations"] = res.propagations;
        d["wall_seconds"] = res.wall_seconds;
        if (res.colorable) d["witness"] = res.witness;
        return d;
      },
      py::arg("text"), py::arg("mode") = "backtracking",
      py::arg("pins") = std::vector<std::pair<int, int>>{},
      "Decide colorability of a certificate's instance with the independent "
      "oracle. Seed hypotheses are pinned to 1 automatically; extra pins are "
      "(point_index, value) pairs. Returns the verdict, search statistics, "
      "and a witness assignment when colorable.");
}
