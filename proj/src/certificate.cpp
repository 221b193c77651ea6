#include "bks/certificate.hpp"

#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bks/error.hpp"

namespace bks {

namespace {

using nlohmann::json;

constexpr const char* kDigestPrefix = "fnv1a64:";

// Content digest over the canonical serialization with a blank digest slot.
// The point is tamper evidence, not authentication: any token change that
// survives the semantic checks still flips the digest.
std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  static const char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = kDigits[h & 0xf];
    h >>= 4;
  }
  return out;
}

[[noreturn]] void parse_fail(const std::string& msg) {
  throw Error(ErrorKind::Parse, msg);
}

const json& member(const json& j, const char* key, const char* where) {
  if (!j.is_object()) parse_fail(std::string(where) + " must be an object");
  auto it = j.find(key);
  if (it == j.end())
    parse_fail(std::string(where) + " is missing field '" + key + "'");
  return *it;
}

long long as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer())
    parse_fail("malformed " + what + ": expected an integer");
  return j.get<long long>();
}

int as_index(const json& j, const std::string& what, long long lo, long long hi) {
  long long v = as_int(j, what);
  if (v < lo || v > hi) parse_fail("malformed " + what + ": value out of range");
  return static_cast<int>(v);
}

std::string as_str(const json& j, const std::string& what) {
  if (!j.is_string()) parse_fail("malformed " + what + ": expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& what) {
  if (!j.is_array()) parse_fail("malformed " + what + ": expected an array");
  return j;
}

// Reference resolution: ids must land inside the table they point into.
int resolve(const json& j, const std::string& what, long long limit) {
  long long v = as_int(j, what + " id");
  if (v < 0 || v >= limit) parse_fail("unresolved " + what + " id " + std::to_string(v));
  return static_cast<int>(v);
}

int resolve_or_none(const json& j, const std::string& what, long long limit) {
  long long v = as_int(j, what + " id");
  if (v == -1) return -1;
  if (v < 0 || v >= limit) parse_fail("unresolved " + what + " id " + std::to_string(v));
  return static_cast<int>(v);
}

ExactScalar scalar_from(const json& j, const ScalarTower& tower,
                        const std::string& where) {
  std::string text = as_str(j, where);
  try {
    return parse_scalar(text, tower);
  } catch (const Error& e) {
    parse_fail("malformed scalar expression in " + where + ": " + e.what());
  }
}

constexpr std::pair<ConclusionType, const char*> kConclusionNames[] = {
    {ConclusionType::None, "none"}, {ConclusionType::Fact, "fact"},
    {ConclusionType::Sum2, "sum2"}, {ConclusionType::Sum3, "sum3"},
    {ConclusionType::Leq, "leq"},   {ConclusionType::Bottom, "bottom"},
};

const char* conclusion_type_name(ConclusionType t) {
  for (const auto& [type, name] : kConclusionNames) {
    if (type == t) return name;
  }
  return "unknown";
}

// Which side conditions each rule kind carries, and whether the verifier
// decides them by exact ring identities or by certified interval signs.
json side_condition_table() {
  auto cond = [](const char* check, const char* condition) {
    return json{{"check", check}, {"condition", condition}};
  };
  json t;
  t["assumption"] = json::array({cond("interval", "seed point norm is positive")});
  t["branch_fact"] = json::array(
      {cond("exact", "conclusion is a fact injected by the governing split branch")});
  t["case_split"] = json::array(
      {cond("exact", "branch contexts partition the split")});
  t["contradiction"] = json::array(
      {cond("exact", "facts value the pair 0, 0 and the combination 1")});
  t["fact_from_leq"] = json::array(
      {cond("exact", "bound and zero fact share the right-hand point")});
  t["fact_from_sum"] = json::array(
      {cond("exact", "facts value both summands of the sum")});
  t["merge"] = json::array(
      {cond("exact", "every branch of the split derives the identical conclusion")});
  t["monotone"] = json::array({
      cond("exact", "pole norm minus one vanishes"),
      cond("exact", "point lies on the unit-inner-product plane"),
      cond("exact", "displacement is orthogonal to pole and point"),
      cond("interval", "displacement norm is positive"),
      cond("exact",
           "target, auxiliary point, axis and completion match their defining "
           "expressions"),
      cond("exact", "gadget triples are pairwise orthogonal"),
      cond("interval", "gadget triple members have positive norm"),
  });
  t["orth_force"] = json::array({
      cond("exact", "point is orthogonal to the pole"),
      cond("exact", "completion matches pole cross point"),
      cond("exact", "forcing triple is pairwise orthogonal"),
      cond("interval", "forcing triple members have positive norm"),
  });
  t["scale"] = json::array({
      cond("exact", "source and image share a ray"),
      cond("interval", "source and image norms are positive"),
  });
  t["scalar_symbols"] = json::array({
      cond("exact", "chain pair satisfies c^2 + s^2 = 1 against its angle"),
      cond("interval", "chain sine is positive"),
      cond("interval", "root radicand is positive"),
  });
  t["sum_rule"] = json::array({
      cond("exact", "pole norm minus one vanishes"),
      cond("exact", "both summands lie on the unit-inner-product plane"),
      cond("exact", "ambient inner product of the pair vanishes"),
      cond("exact", "difference, axis and completion match their defining expressions"),
      cond("exact", "combination point lies on its defining ray"),
      cond("exact", "gadget triples are pairwise orthogonal"),
      cond("interval", "gadget triple members have positive norm"),
  });
  t["triple_split"] = json::array(
      {cond("exact", "branch contexts partition the split")});
  t["triple_sum"] = json::array({
      cond("exact", "members are pairwise orthogonal"),
      cond("interval", "members have positive norm"),
  });
  return t;
}

json conclusion_json(const Conclusion& c) {
  json j;
  j["type"] = conclusion_type_name(c.type);
  if (!c.vecs.empty()) j["vecs"] = c.vecs;
  if (c.type == ConclusionType::Fact) j["value"] = c.value;
  return j;
}

json build_content(const Certificate& c) {
  const Derivation& d = c.derivation;
  json j;
  j["format_version"] = c.format_version;

  json syms = json::array();
  const TowerData* td = d.tower.raw();
  for (VarRef v : td->order) {
    if (v.kind == VarKind::Root) {
      const RootVarDef& rd = d.tower.root_def(v.id);
      syms.push_back({{"kind", "root"}, {"radicand", rd.radicand.str()}});
    } else {
      const ChainVarDef& cd = d.tower.chain_def(v.id);
      syms.push_back({{"cos", cd.cos_theta.str()},
                      {"kind", "chain"},
                      {"n", cd.n},
                      {"sin", cd.sin_theta.str()}});
    }
  }
  j["scalars"] = json{{"symbols", std::move(syms)}};

  json vecs = json::array();
  for (const Vec3& v : d.vectors)
    vecs.push_back(json::array({v[0].str(), v[1].str(), v[2].str()}));
  j["vectors"] = std::move(vecs);

  json contexts = json::array();
  for (const Context& ctx : d.contexts)
    contexts.push_back({{"branch", ctx.branch},
                        {"id", ctx.id},
                        {"parent", ctx.parent},
                        {"split_node", ctx.split_node}});
  json nodes = json::array();
  for (const Node& n : d.nodes) {
    json e;
    e["conclusion"] = conclusion_json(n.conclusion);
    e["context"] = n.context;
    e["id"] = n.id;
    e["kind"] = node_kind_name(n.kind);
    if (!n.inputs.empty()) e["inputs"] = n.inputs;
    if (!n.children.empty()) e["children"] = n.children;
    if (!n.vecs.empty()) e["vecs"] = n.vecs;
    nodes.push_back(std::move(e));
  }
  j["derivation"] = json{{"contexts", std::move(contexts)},
                         {"goal", d.goal},
                         {"nodes", std::move(nodes)},
                         {"seeds", d.seeds}};

  j["context_set"] = json{{"points", c.context_set.points},
                          {"provenance", c.context_set.provenance},
                          {"triples", c.context_set.triples}};

  json frame = json::array();
  json descents = json::array();
  for (const SeedReport& s : c.seeds) {
    frame.push_back(
        {{"axis", s.axis + 1}, {"g", s.seed_point}, {"h1", s.h1}, {"h2", s.h2}});
    descents.push_back(
        {{"axis", s.axis + 1}, {"links", s.links}, {"scale_downs", s.scale_downs}});
  }
  j["frame"] = std::move(frame);

  json meta;
  meta["counts"] = json{{"contexts", d.contexts.size()},
                        {"nodes", d.nodes.size()},
                        {"points", c.context_set.points.size()},
                        {"triples", c.context_set.triples.size()},
                        {"vectors", d.vectors.size()}};
  meta["descents"] = std::move(descents);
  meta["generator"] = json{
      {"max_links", c.max_links},
      {"seed_axis", c.axis_label},
      {"target", c.target_text ? json(*c.target_text) : json(nullptr)}};
  meta["precision"] = json{{"bits", static_cast<long long>(d.precision.bits)},
                           {"max_bits", static_cast<long long>(d.precision.max_bits)}};
  meta["side_conditions"] = side_condition_table();
  j["metadata"] = std::move(meta);
  return j;
}

std::string digest_of(json content) {
  content["digest"] = "";
  return std::string(kDigestPrefix) + fnv1a64_hex(content.dump(1));
}

}  // namespace

Certificate make_certificate(GenerateResult gen, const GenerateOptions& opt) {
  Certificate c;
  c.axis_label = opt.seed_axis < 0 ? "all" : std::to_string(opt.seed_axis + 1);
  c.max_links = opt.max_links;
  if (opt.target) {
    const std::array<FieldElem, 3>& t = *opt.target;
    c.target_text = "(" + t[0].str() + ", " + t[1].str() + ", " + t[2].str() + ")";
  }
  c.derivation = std::move(gen.derivation);
  c.seeds = std::move(gen.seeds);
  c.context_set = expand_to_triples(c.derivation);
  return c;
}

std::string serialize_certificate(const Certificate& c) {
  json j = build_content(c);
  j["digest"] = digest_of(j);
  return j.dump(1) + "\n";
}

Certificate parse_certificate(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // Recover line/column from the byte offset so the error points at the
    // offending token.
    size_t pos = e.byte > 0 ? static_cast<size_t>(e.byte) - 1 : 0;
    if (pos > text.size()) pos = text.size();
    int line = 1, column = 1;
    for (size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(std::string("certificate syntax error: ") + e.what(), line,
                     column);
  }
  if (!root.is_object()) parse_fail("certificate root must be an object");

  long long version = as_int(member(root, "format_version", "certificate"),
                             "format version");
  if (version != kCertificateFormatVersion)
    parse_fail("unsupported format version " + std::to_string(version));

  Certificate c;
  c.format_version = static_cast<int>(version);

  const json& jmeta = member(root, "metadata", "certificate");
  const json& jprec = member(jmeta, "precision", "metadata");
  PrecisionConfig cfg;
  cfg.bits = as_index(member(jprec, "bits", "precision"), "precision bits", 2,
                      1 << 24);
  cfg.max_bits = as_index(member(jprec, "max_bits", "precision"),
                          "precision max_bits", cfg.bits, 1 << 28);

  ScalarTower tower;
  const json& jsyms = as_array(
      member(member(root, "scalars", "certificate"), "symbols", "scalars"),
      "scalar symbols");
  for (size_t i = 0; i < jsyms.size(); ++i) {
    const json& e = jsyms[i];
    std::string where = "scalar symbol " + std::to_string(i);
    std::string kind = as_str(member(e, "kind", where.c_str()), where + " kind");
    if (kind == "chain") {
      int n = as_index(member(e, "n", where.c_str()), where + " n", 2, 1 << 20);
      ExactScalar cs = scalar_from(member(e, "cos", where.c_str()), tower,
                                   where + " cosine");
      ExactScalar sn = scalar_from(member(e, "sin", where.c_str()), tower,
                                   where + " sine");
      tower.add_chain_var(n, cs, sn, cfg);
    } else if (kind == "root") {
      ExactScalar r = scalar_from(member(e, "radicand", where.c_str()), tower,
                                  where + " radicand");
      tower.add_root_var(r, cfg);
    } else {
      parse_fail("malformed " + where + ": unknown kind '" + kind + "'");
    }
  }

  Derivation d;
  d.tower = tower;
  d.precision = cfg;

  const json& jvecs = as_array(member(root, "vectors", "certificate"), "vectors");
  long long nvec = static_cast<long long>(jvecs.size());
  for (size_t i = 0; i < jvecs.size(); ++i) {
    const json& e = as_array(jvecs[i], "vector " + std::to_string(i));
    if (e.size() != 3)
      parse_fail("malformed vector " + std::to_string(i) + ": expected 3 components");
    Vec3 v;
    for (size_t k = 0; k < 3; ++k)
      v[k] = scalar_from(e[k], tower,
                         "vector " + std::to_string(i) + " component " +
                             std::to_string(k));
    d.vectors.push_back(std::move(v));
  }

  const json& jd = member(root, "derivation", "certificate");
  const json& jctx = as_array(member(jd, "contexts", "derivation"), "contexts");
  const json& jnodes = as_array(member(jd, "nodes", "derivation"), "nodes");
  long long nctx = static_cast<long long>(jctx.size());
  long long nnodes = static_cast<long long>(jnodes.size());

  for (size_t i = 0; i < jctx.size(); ++i) {
    const json& e = jctx[i];
    std::string where = "context " + std::to_string(i);
    Context ctx;
    ctx.id = as_index(member(e, "id", where.c_str()), where + " id", 0, nctx - 1);
    if (ctx.id != static_cast<int>(i))
      parse_fail("malformed " + where + ": ids must be sequential");
    ctx.parent = resolve_or_none(member(e, "parent", where.c_str()), "context", nctx);
    ctx.split_node =
        resolve_or_none(member(e, "split_node", where.c_str()), "node", nnodes);
    ctx.branch = as_index(member(e, "branch", where.c_str()), where + " branch",
                          -1, 1 << 20);
    d.contexts.push_back(ctx);
  }

  for (size_t i = 0; i < jnodes.size(); ++i) {
    const json& e = jnodes[i];
    std::string where = "node " + std::to_string(i);
    Node n;
    n.id = as_index(member(e, "id", where.c_str()), where + " id", 0, nnodes - 1);
    if (n.id != static_cast<int>(i))
      parse_fail("malformed " + where + ": ids must be sequential");
    std::string kind = as_str(member(e, "kind", where.c_str()), where + " kind");
    std::optional<NodeKind> nk = node_kind_from_name(kind);
    if (!nk) parse_fail("malformed " + where + ": unknown kind '" + kind + "'");
    n.kind = *nk;
    n.context = resolve(member(e, "context", where.c_str()), "context", nctx);
    if (auto it = e.find("inputs"); it != e.end()) {
      for (const json& x : as_array(*it, where + " inputs"))
        n.inputs.push_back(resolve(x, "node", nnodes));
    }
    if (auto it = e.find("children"); it != e.end()) {
      for (const json& x : as_array(*it, where + " children"))
        n.children.push_back(resolve(x, "context", nctx));
    }
    if (auto it = e.find("vecs"); it != e.end()) {
      if (!it->is_object()) parse_fail("malformed " + where + " vecs: expected an object");
      for (const auto& [role, idj] : it->items())
        n.vecs[role] = resolve(idj, "vector", nvec);
    }
    const json& jc = member(e, "conclusion", where.c_str());
    std::string tname =
        as_str(member(jc, "type", "conclusion"), where + " conclusion type");
    Conclusion concl;
    bool known = false;
    for (const auto& [type, name] : kConclusionNames) {
      if (tname == name) {
        concl.type = type;
        known = true;
        break;
      }
    }
    if (!known)
      parse_fail("malformed " + where + ": unknown conclusion type '" + tname + "'");
    if (auto it = jc.find("vecs"); it != jc.end()) {
      for (const json& x : as_array(*it, where + " conclusion vecs"))
        concl.vecs.push_back(resolve(x, "vector", nvec));
    }
    if (concl.type == ConclusionType::Fact)
      concl.value = as_index(member(jc, "value", "conclusion"),
                             where + " conclusion value", 0, 1);
    n.conclusion = concl;
    d.nodes.push_back(std::move(n));
  }

  d.goal = resolve_or_none(member(jd, "goal", "derivation"), "node", nnodes);
  for (const json& x : as_array(member(jd, "seeds", "derivation"), "seeds"))
    d.seeds.push_back(resolve(x, "node", nnodes));

  const json& jcs = member(root, "context_set", "certificate");
  ContextSet cs;
  for (const json& x : as_array(member(jcs, "points", "context set"), "points"))
    cs.points.push_back(resolve(x, "vector", nvec));
  long long npts = static_cast<long long>(cs.points.size());
  for (const json& tj : as_array(member(jcs, "triples", "context set"), "triples")) {
    const json& t = as_array(tj, "triple");
    if (t.size() != 3) parse_fail("malformed triple: expected 3 point ids");
    cs.triples.push_back({resolve(t[0], "point", npts), resolve(t[1], "point", npts),
                          resolve(t[2], "point", npts)});
  }
  const json& jprov = as_array(member(jcs, "provenance", "context set"), "provenance");
  if (jprov.size() != cs.triples.size())
    parse_fail("malformed context set: provenance and triple counts differ");
  for (const json& pj : jprov) {
    std::vector<int> contributors;
    for (const json& x : as_array(pj, "provenance entry"))
      contributors.push_back(resolve(x, "node", nnodes));
    cs.provenance.push_back(std::move(contributors));
  }
  cs.point_of.assign(static_cast<size_t>(nvec), -1);
  for (size_t i = 0; i < cs.points.size(); ++i)
    cs.point_of[static_cast<size_t>(cs.points[i])] = static_cast<int>(i);

  const json& jframe = as_array(member(root, "frame", "certificate"), "frame");
  const json& jdesc = as_array(member(jmeta, "descents", "metadata"), "descents");
  if (jframe.size() != jdesc.size())
    parse_fail("malformed frame: descent table length differs");
  for (size_t i = 0; i < jframe.size(); ++i) {
    const json& fe = jframe[i];
    const json& de = jdesc[i];
    std::string where = "frame entry " + std::to_string(i);
    SeedReport r;
    r.axis = as_index(member(fe, "axis", where.c_str()), where + " axis", 1, 3) - 1;
    r.seed_point = resolve(member(fe, "g", where.c_str()), "vector", nvec);
    r.h1 = resolve(member(fe, "h1", where.c_str()), "vector", nvec);
    r.h2 = resolve(member(fe, "h2", where.c_str()), "vector", nvec);
    if (as_index(member(de, "axis", "descent entry"), "descent axis", 1, 3) - 1 !=
        r.axis)
      parse_fail("malformed descent table: axis disagrees with the frame");
    r.links = as_index(member(de, "links", "descent entry"), "descent links", 0,
                       1 << 28);
    r.scale_downs = as_index(member(de, "scale_downs", "descent entry"),
                             "descent scale_downs", 0, 1 << 28);
    c.seeds.push_back(r);
  }

  const json& jgen = member(jmeta, "generator", "metadata");
  c.axis_label = as_str(member(jgen, "seed_axis", "generator"), "generator seed axis");
  if (c.axis_label != "1" && c.axis_label != "2" && c.axis_label != "3" &&
      c.axis_label != "all")
    parse_fail("malformed generator seed axis: '" + c.axis_label + "'");
  c.max_links = as_index(member(jgen, "max_links", "generator"),
                         "generator max_links", 1, 1 << 28);
  const json& jtarget = member(jgen, "target", "generator");
  if (jtarget.is_null()) {
    c.target_text.reset();
  } else {
    c.target_text = as_str(jtarget, "generator target");
  }

  c.derivation = std::move(d);
  c.context_set = std::move(cs);

  // Digest bookkeeping: remember both the stored value and the digest of the
  // document as received, so verification can detect any token change even in
  // fields that carry no independent semantic check.
  if (auto it = root.find("digest"); it != root.end())
    c.digest = as_str(*it, "digest");
  json recompute = root;
  c.text_digest = digest_of(std::move(recompute));
  return c;
}

CertificateCheck verify_certificate(const Certificate& c) {
  if (c.format_version != kCertificateFormatVersion)
    throw Error(ErrorKind::Validate,
                "unsupported format version " + std::to_string(c.format_version));

  CertificateCheck out;
  out.stats = verify_derivation(c.derivation, true);
  out.instance = expand_to_triples(c.derivation);
  if (out.instance.points != c.context_set.points ||
      out.instance.triples != c.context_set.triples ||
      out.instance.provenance != c.context_set.provenance)
    throw Error(ErrorKind::Validate,
                "stored context set does not match its derivation");

  const Derivation& d = c.derivation;
  bool all_mode = c.axis_label == "all";
  if (all_mode ? !d.seeds.empty() || c.seeds.size() != 3
               : d.seeds.size() != 1 || c.seeds.size() != 1 ||
                     c.axis_label != std::to_string(c.seeds[0].axis + 1))
    throw Error(ErrorKind::Validate,
                "generator seed axis label does not match the derivation");

  ExactScalar one = d.tower.integer(1);
  for (size_t i = 0; i < c.seeds.size(); ++i) {
    const SeedReport& s = c.seeds[i];
    const Vec3& g = d.vectors.at(static_cast<size_t>(s.seed_point));
    const Vec3& h1 = d.vectors.at(static_cast<size_t>(s.h1));
    const Vec3& h2 = d.vectors.at(static_cast<size_t>(s.h2));
    bool axis_vec = true;
    for (int k = 0; k < 3; ++k) {
      ExactScalar want = k == s.axis ? one : d.tower.integer(0);
      if (!(g[static_cast<size_t>(k)] - want).is_zero()) axis_vec = false;
    }
    if (!axis_vec)
      throw Error(ErrorKind::Validate, "frame seed " + std::to_string(i) +
                                           " is not its declared axis vector");
    if (!(vdot(h1, h1) - one).is_zero() || !vdot(g, h1).is_zero() ||
        !vzero(vsub(h2, vcross(g, h1))))
      throw Error(ErrorKind::Validate,
                  "frame entry " + std::to_string(i) +
                      " is not an orthonormal completion of its seed");
  }

  if ((!c.digest.empty() || !c.text_digest.empty()) && c.digest != c.text_digest)
    throw Error(ErrorKind::Validate,
                "stored digest does not match certificate content");
  return out;
}

std::vector<int> seed_point_indices(const Certificate& c, const ContextSet& cs) {
  std::vector<int> out;
  for (const SeedReport& s : c.seeds) {
    int idx = s.seed_point >= 0 &&
                      s.seed_point < static_cast<int>(cs.point_of.size())
                  ? cs.point_of[static_cast<size_t>(s.seed_point)]
                  : -1;
    if (idx < 0)
      throw Error(ErrorKind::Validate, "seed point is not part of the instance");
    out.push_back(idx);
  }
  return out;
}

int parse_axis_text(const std::string& text) {
  if (text == "all") return -1;
  if (text == "1" || text == "2" || text == "3") return text[0] - '1';
  throw Error(ErrorKind::Usage, "seed axis must be 1, 2, 3 or all");
}

std::array<FieldElem, 3> parse_target_text(const std::string& text) {
  std::string body = text;
  auto strip = [&](char open, char close) {
    size_t a = body.find_first_not_of(" \t");
    size_t z = body.find_last_not_of(" \t");
    if (a == std::string::npos) return;
    if (body[a] == open && body[z] == close)
      body = body.substr(a + 1, z - a - 1);
  };
  strip('(', ')');
  strip('[', ']');
  std::vector<std::string> parts;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3)
    throw Error(ErrorKind::Usage,
                "target must be three comma-separated exact scalars");
  ScalarTower plain;
  std::array<FieldElem, 3> out;
  for (size_t i = 0; i < 3; ++i) {
    try {
      auto f = parse_scalar(parts[i], plain).as_field();
      if (!f) throw Error(ErrorKind::Usage, "target components must be field scalars");
      out[i] = *f;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Usage) throw;
      throw Error(ErrorKind::Usage,
                  "bad target component " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace bks
