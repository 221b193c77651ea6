#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bks/certificate.hpp"
#include "bks/chain.hpp"
#include "bks/error.hpp"
#include "bks/oracle.hpp"

namespace {

using namespace bks;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return 2;
    case ErrorKind::Precision: return 3;
    default: return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Usage, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PrecisionConfig precision_from_bits(long bits) {
  PrecisionConfig cfg;
  cfg.bits = static_cast<mpfr_prec_t>(bits);
  if (cfg.max_bits < cfg.bits) cfg.max_bits = cfg.bits;
  return cfg;
}

int run_generate(const std::string& axis_flag, const std::string& target_flag,
                 long precision_bits, const std::string& out_path) {
  GenerateOptions opt;
  opt.seed_axis = parse_axis_text(axis_flag);
  if (!target_flag.empty()) opt.target = parse_target_text(target_flag);
  opt.precision = precision_from_bits(precision_bits);

  Certificate cert = make_certificate(generate_derivation(opt), opt);
  std::string text = serialize_certificate(cert);

  std::ostream& report = out_path.empty() ? std::cerr : std::cout;
  for (const SeedReport& s : cert.seeds)
    report << "axis " << s.axis + 1 << ": links = " << s.links
           << ", scale_downs = " << s.scale_downs << "\n";
  report << "nodes = " << cert.derivation.nodes.size() << "\n"
         << "contexts = " << cert.derivation.contexts.size() << "\n"
         << "vectors = " << cert.derivation.vectors.size() << "\n"
         << "points = " << cert.context_set.points.size() << "\n"
         << "triples = " << cert.context_set.triples.size() << "\n";

  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Usage, "cannot write file: " + out_path);
    out << text;
    report << "wrote " << out_path << " (" << text.size() << " bytes)\n";
  }
  return 0;
}

int run_verify(const std::string& path) {
  Certificate cert = parse_certificate(read_file(path));
  CertificateCheck check = verify_certificate(cert);
  std::cout << "status = verified\n"
            << "nodes = " << check.stats.nodes << "\n"
            << "contexts = " << check.stats.contexts << "\n"
            << "checked_triples = " << check.stats.triples << "\n"
            << "sign_checks = " << check.stats.sign_checks << "\n"
            << "points = " << check.instance.points.size() << "\n"
            << "context_triples = " << check.instance.triples.size() << "\n";
  return 0;
}

int run_color(const std::string& path, const std::string& mode_flag,
              const std::vector<std::string>& pin_flags) {
  Certificate cert = parse_certificate(read_file(path));
  // Expansion re-verifies the derivation, so a corrupt certificate cannot
  // reach the oracle.
  ContextSet cs = expand_to_triples(cert.derivation);

  ColoringProblem problem;
  problem.num_points = static_cast<int>(cs.points.size());
  problem.triples = cs.triples;

  auto pin_point = [&](int point, int value) {
    problem.pins.push_back({point, value});
  };
  // The certificate's hypotheses are part of the claim: a conditional
  // derivation asserts uncolorability relative to its assumed seed facts.
  int hypothesis_pins = 0;
  for (int node_id : cert.derivation.seeds) {
    const Node& n = cert.derivation.nodes.at(static_cast<size_t>(node_id));
    int vec = n.vecs.at("point");
    int point = cs.point_of.at(static_cast<size_t>(vec));
    if (point < 0)
      throw Error(ErrorKind::Validate, "seed point is not part of the instance");
    pin_point(point, 1);
    ++hypothesis_pins;
  }
  for (const std::string& flag : pin_flags) {
    size_t eq = flag.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::Usage, "pins take the form <point>=<value> or seed=<value>");
    std::string key = flag.substr(0, eq);
    std::string val = flag.substr(eq + 1);
    if (val != "0" && val != "1")
      throw Error(ErrorKind::Usage, "pin value must be 0 or 1");
    int value = val == "1" ? 1 : 0;
    if (key == "seed") {
      if (cert.derivation.seeds.empty())
        throw Error(ErrorKind::Usage,
                    "certificate has no seed hypotheses to pin; use a point index");
      for (int node_id : cert.derivation.seeds) {
        const Node& n = cert.derivation.nodes.at(static_cast<size_t>(node_id));
        pin_point(cs.point_of.at(static_cast<size_t>(n.vecs.at("point"))), value);
      }
    } else {
      int point = 0;
      try {
        size_t used = 0;
        point = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Usage, "pin point must be an integer index or 'seed'");
      }
      pin_point(point, value);
    }
  }

  ColorMode mode;
  if (mode_flag == "exhaustive") {
    mode = ColorMode::Exhaustive;
  } else if (mode_flag == "backtracking") {
    mode = ColorMode::Backtracking;
  } else {
    throw Error(ErrorKind::Usage, "mode must be exhaustive or backtracking");
  }

  ColoringResult res = color_problem(problem, mode);
  std::cout << "verdict = " << (res.colorable ? "colorable" : "uncolorable") << "\n"
            << "mode = " << mode_flag << "\n"
            << "points = " << problem.num_points << "\n"
            << "triples = " << problem.triples.size() << "\n"
            << "pins = " << problem.pins.size()
            << " (hypotheses: " << hypothesis_pins << ")\n"
            << "nodes = " << res.nodes << "\n"
            << "propagations = " << res.propagations << "\n"
            << "wall_seconds = " << res.wall_seconds << "\n";
  if (res.colorable) {
    std::cout << "witness = ";
    for (int v : res.witness) std::cout << v;
    std::cout << "\n";
    return 1;
  }
  return 0;
}

// Reproduces the worked descent example: plane points X, Y around the first
// axis with plane norms 1 and 3 and plane angle arccos(-1/sqrt(3)), descended
// by the real rule emitter. Every printed value is an interval enclosure of
// the exact quantity or an integer taken from the emitted derivation.
int run_repro(long precision_bits) {
  PrecisionConfig cfg = precision_from_bits(precision_bits);
  mpfr_prec_t bits = cfg.bits;

  ScalarTower tower;
  DerivationBuilder b(tower, cfg);
  SFrame frame = SFrame::standard(0, tower);
  int pole = emit_assumption(b, frame.g);

  Vec3 xp = vadd(frame.g, frame.h1);
  Vec3 xm = vsub(frame.g, frame.h1);
  int sr = emit_sum_rule(b, 0, pole, xp, xm, frame.g);
  CaseSplitResult split = emit_case_split(b, 0, sr, pole);

  ExactScalar rt2 = tower.constant(FieldElem::sqrt_int(2));
  Vec3 y = vadd(vadd(frame.g, frame.h1), vscale(rt2, frame.h2));
  DescentResult descent =
      emit_descent(b, frame, split.contexts[0], pole, split.y_facts[0], xm, y);
  VerifyStats stats = verify_derivation(b.peek(), false);

  ExactScalar c = tower.constant(FieldElem(-1) / FieldElem::sqrt_int(3));
  ChainSearch search = chain_search(c, mpq_class(3), cfg, 64);

  Interval theta = c.eval(bits).acos_clamped();
  Interval theta_deg = theta * Interval::from_long(180, bits) / Interval::pi(bits);
  Interval rt3 = Interval::sqrt_ui(3, bits);

  auto power = [&](int k) -> const Interval& {
    for (const auto& [kk, iv] : search.cos_powers) {
      if (kk == k) return iv;
    }
    throw Error(ErrorKind::Arithmetic, "missing chain power " + std::to_string(k));
  };

  std::cout << "theta_deg = " << theta_deg.str(18) << "\n"
            << "cos_quarter_pow4 = " << power(4).str(18) << "\n"
            << "cos_fifth_pow5 = " << power(5).str(18) << "\n"
            << "alpha_at_4 = " << (rt3 * power(4)).str(18) << "\n"
            << "alpha = " << (rt3 * power(5)).str(18) << "\n"
            << "n_minimal = " << search.n << "\n"
            << "links = " << descent.links << "\n"
            << "scale_downs = " << descent.scale_downs << "\n"
            << "chain_length = " << descent.links + 2 * descent.scale_downs << "\n"
            << "verified_nodes = " << stats.nodes << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Kochen-Specker collapse certificates"};
  app.require_subcommand(1);

  std::string axis_flag = "all";
  std::string target_flag;
  long precision_bits = 256;
  std::string out_path;
  CLI::App* gen = app.add_subcommand(
      "generate", "Build a derivation certificate and its orthogonality instance");
  gen->add_option("--seed-axis", axis_flag, "Seed axis: 1, 2, 3 or all")
      ->default_str("all");
  gen->add_option("--target", target_flag,
                  "Flank target as three comma-separated exact scalars");
  gen->add_option("--precision-bits", precision_bits,
                  "Starting interval precision in bits")
      ->default_val(256);
  gen->add_option("--out", out_path, "Output path (default: stdout)");

  std::string verify_path;
  CLI::App* ver = app.add_subcommand("verify", "Recheck a certificate end to end");
  ver->add_option("file", verify_path, "Certificate file")->required();

  std::string color_path;
  std::string mode_flag = "backtracking";
  std::vector<std::string> pin_flags;
  CLI::App* col = app.add_subcommand(
      "color", "Decide 101-colorability of a certificate's instance");
  col->add_option("file", color_path, "Certificate file")->required();
  col->add_option("--mode", mode_flag, "exhaustive or backtracking")
      ->default_str("backtracking");
  col->add_option("--pin", pin_flags, "Pin a point: <point>=<value> or seed=<value>");

  long repro_bits = 256;
  CLI::App* rep = app.add_subcommand(
      "repro", "Reproduce the worked descent example with certified enclosures");
  rep->add_option("--precision-bits", repro_bits,
                  "Starting interval precision in bits")
      ->default_val(256);

  try {
    app.parse(argc, argv);
    if (gen->parsed())
      return run_generate(axis_flag, target_flag, precision_bits, out_path);
    if (ver->parsed()) return run_verify(verify_path);
    if (col->parsed()) return run_color(color_path, mode_flag, pin_flags);
    if (rep->parsed()) return run_repro(repro_bits);
    return 2;
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << error_kind_name(e.kind()) << " error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
