#include "toric/report_json.hpp"

#include <limits>
#include <set>

#include "toric/errors.hpp"

namespace toric {

namespace {

const char* kProvenance =
    "Strata group the torus orbits by the subgroup G(O) of Cl(X) generated by the classes of the invariant prime "
    "divisors not containing the orbit. Two orbits lie in one Aut(X)^0-orbit exactly when these subgroups agree, so "
    "each stratum is reported as one Aut(X)^0-orbit; that identification is a proven equivalence, not a computation "
    "of automorphisms. Orbits of the full group Aut(X) are unions of strata and are not resolved here.";

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::string msg = e.what();
    if (auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
    throw InputError("malformed JSON (byte " + std::to_string(e.byte) + "): " + msg);
  }
}

void require_object(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(where, "unknown field \"" + key + "\"");
  }
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string sub(const std::string& where, const std::string& key) { return where + "." + key; }
std::string sub(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

Integer read_integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                                           : Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t start = !s.empty() && s[0] == '-';
    bool digits = s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos;
    if (digits) return Integer(s);
  }
  fail(where, "expected an integer, got " + j.dump());
}

std::size_t read_size(const Json& j, const std::string& where) {
  Integer x = read_integer(j, where);
  if (x < 0 || x > Integer(std::to_string(std::numeric_limits<std::uint32_t>::max())))
    fail(where, "expected a nonnegative count, got " + x.get_str());
  return x.get_ui();
}

bool read_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where, "expected true or false");
  return j.get<bool>();
}

std::string read_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

const Json& read_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

IntVector read_vector(const Json& j, const std::string& where) {
  IntVector out;
  std::size_t i = 0;
  for (const auto& x : read_array(j, where)) out.push_back(read_integer(x, sub(where, i++)));
  return out;
}

std::vector<IntVector> read_vectors(const Json& j, const std::string& where) {
  std::vector<IntVector> out;
  std::size_t i = 0;
  for (const auto& x : read_array(j, where)) out.push_back(read_vector(x, sub(where, i++)));
  return out;
}

// 1-based positions in [1, limit], returned 0-based.
std::vector<std::size_t> read_positions(const Json& j, const std::string& where, std::size_t limit) {
  std::vector<std::size_t> out;
  std::size_t i = 0;
  for (const auto& x : read_array(j, where)) {
    std::size_t p = read_size(x, sub(where, i++));
    if (p < 1 || p > limit) fail(where, "position " + std::to_string(p) + " outside 1.." + std::to_string(limit));
    out.push_back(p - 1);
  }
  return out;
}

std::size_t read_position(const Json& j, const std::string& where, std::size_t limit) {
  return read_positions(Json::array({j}), where, limit).front();
}

void check_schema(const Json& j, const std::string& where) {
  Integer v = read_integer(field(j, "schema", where), sub(where, "schema"));
  if (v != kSchemaVersion) fail(where, "unsupported schema " + v.get_str() + ", expected " + std::to_string(kSchemaVersion));
}

FgAbGroup read_group(const Json& j, const std::string& where) {
  require_object(j, where, {"free_rank", "torsion", "description"});
  return FgAbGroup(read_size(field(j, "free_rank", where), sub(where, "free_rank")),
                   read_vector(field(j, "torsion", where), sub(where, "torsion")));
}

GroupElement read_element(const FgAbGroup& g, const Json& j, const std::string& where) {
  IntVector v = read_vector(j, where);
  if (v.size() != g.coord_count())
    fail(where, "element has " + std::to_string(v.size()) + " coordinates, " + g.describe() + " needs " +
                    std::to_string(g.coord_count()));
  try {
    return g.element(std::move(v));
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

SubgroupHandle read_subgroup(const FgAbGroup& g, const Json& j, const std::string& where) {
  require_object(j, where, {"basis", "description"});
  auto rows = read_vectors(field(j, "basis", where), sub(where, "basis"));
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != g.coord_count()) fail(sub(sub(where, "basis"), i), "wrong length");
    gens.push_back(g.reduce(rows[i]));
  }
  SubgroupHandle h = subgroup_canon(g, gens);
  if (h.canonical_basis() != IntegerMatrix::from_rows(rows, g.coord_count()))
    fail(where, "basis is not in canonical form");
  return h;
}

DemazureRoot read_root(const Json& j, const std::string& where, std::size_t rays) {
  require_object(j, where, {"e", "ray"});
  return DemazureRoot{read_vector(field(j, "e", where), sub(where, "e")),
                      read_position(field(j, "ray", where), sub(where, "ray"), rays)};
}

ConnectionVerdict::Status read_status(const std::string& s, const std::string& where) {
  for (auto k : {ConnectionVerdict::Status::Yes, ConnectionVerdict::Status::No, ConnectionVerdict::Status::Inconclusive})
    if (s == to_string(k)) return k;
  fail(where, "unknown status \"" + s + "\"");
}

ConnectionVerdict::Certificate read_certificate(const std::string& s, const std::string& where) {
  using C = ConnectionVerdict::Certificate;
  for (auto k : {C::None, C::Combinatorial, C::IntegralEqualities, C::Rational})
    if (s == to_string(k)) return k;
  fail(where, "unknown certificate \"" + s + "\"");
}

Json optional_integer(const std::optional<Integer>& x) { return x ? to_json(*x) : Json(nullptr); }

}  // namespace

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const IntegerMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row_vector(i)));
  return out;
}

Json to_json(const FgAbGroup& g) {
  return Json{{"free_rank", g.free_rank()}, {"torsion", to_json(g.torsion())}, {"description", g.describe()}};
}

Json to_json(const SubgroupHandle& s) {
  return Json{{"basis", to_json(s.canonical_basis())}, {"description", subgroup_structure(s).describe()}};
}

Json positions_to_json(const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

Json to_json(const ConnectionVerdict& v) {
  Json out{{"status", to_string(v.status)}, {"certificate", to_string(v.certificate)}};
  out["witness"] = v.witness ? Json{{"e", to_json(v.witness->e)}, {"ray", v.witness->distinguished_ray + 1}}
                             : Json(nullptr);
  out["bound"] = v.status == ConnectionVerdict::Status::No ? Json(nullptr) : to_json(v.bound);
  out["reason"] = v.reason;
  return out;
}

ConeInput parse_cone_file(const std::string& text) {
  Json j = parse_text(text);
  const std::string w = "cone file";
  require_object(j, w, {"schema", "rank", "rays", "normalize"});
  check_schema(j, w);
  ConeInput in;
  in.rank = read_size(field(j, "rank", w), "rank");
  if (in.rank == 0) fail(w, "rank must be positive");
  in.rays = read_vectors(field(j, "rays", w), "rays");
  for (std::size_t i = 0; i < in.rays.size(); ++i)
    if (in.rays[i].size() != in.rank)
      fail("rays[" + std::to_string(i) + "]", "ray " + std::to_string(i + 1) + " has " +
                                                  std::to_string(in.rays[i].size()) + " entries, rank is " +
                                                  std::to_string(in.rank));
  if (j.contains("normalize")) in.normalize = read_bool(j["normalize"], "normalize");
  return in;
}

WeightSystem parse_weight_file(const std::string& text) {
  Json j = parse_text(text);
  const std::string w = "weight file";
  require_object(j, w, {"schema", "free_rank", "torsion", "weights"});
  check_schema(j, w);
  FgAbGroup g(read_size(field(j, "free_rank", w), "free_rank"), read_vector(field(j, "torsion", w), "torsion"));
  WeightSystem out{g, {}};
  const Json& ws = read_array(field(j, "weights", w), "weights");
  for (std::size_t i = 0; i < ws.size(); ++i) out.weights.push_back(read_element(g, ws[i], sub("weights", i)));
  return out;
}

Json report_to_json(const StratificationReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["input"] = Json{{"rank", r.input_rank}, {"rays", Json::array()}, {"normalize", r.options.normalize}};
  for (const auto& v : r.input_rays) j["input"]["rays"].push_back(to_json(v));
  j["options"] = Json{{"box_bound", optional_integer(r.options.box_bound)},
                      {"coeff_bound", to_json(r.options.coeff_bound)},
                      {"strict", r.options.strict}};
  j["box_bound"] = to_json(r.box_bound);
  j["torus_rank"] = r.torus_rank;
  j["sublattice_basis"] = to_json(r.sublattice_basis);
  j["cone"] = Json{{"rank", r.cone.ambient_rank()}, {"rays", Json::array()}};
  for (const auto& v : r.cone.rays()) j["cone"]["rays"].push_back(to_json(v));
  j["class_group"] = to_json(r.class_group);
  j["divisor_classes"] = Json::array();
  for (const auto& c : r.divisor_classes) j["divisor_classes"].push_back(to_json(c.coords));

  j["faces"] = Json::array();
  for (std::size_t i = 0; i < r.faces.size(); ++i) {
    const FaceRecord& f = r.faces[i];
    Json fj;
    fj["id"] = i + 1;
    fj["rays"] = positions_to_json(f.data.face.rays);
    fj["dim"] = f.data.face.dim;
    fj["dset"] = positions_to_json(f.data.dset);
    fj["g_subgroup"] = to_json(f.data.g_subgroup);
    fj["local_class_group"] = to_json(f.data.local_class_group);
    fj["orbit_dim"] = f.data.orbit_dim;
    fj["smooth"] = f.data.smooth;
    fj["semigroup"] = Json{{"status", f.semigroup.status == SemigroupCheck::Status::Verified ? "verified" : "inconclusive"},
                           {"unresolved", positions_to_json(f.semigroup.unresolved)},
                           {"details", f.semigroup.details}};
    fj["stratum"] = f.stratum + 1;
    j["faces"].push_back(std::move(fj));
  }

  j["strata"] = Json::array();
  for (std::size_t i = 0; i < r.strata.size(); ++i) {
    const Stratum& s = r.strata[i];
    j["strata"].push_back(Json{{"id", i + 1},
                               {"subgroup", to_json(s.subgroup)},
                               {"faces", positions_to_json(s.faces)},
                               {"dim", s.dim},
                               {"smooth", s.smooth},
                               {"principal", s.principal}});
  }
  j["closure"] = Json::array();
  for (const auto& e : r.closure) j["closure"].push_back(Json{{"lower", e.lower + 1}, {"upper", e.upper + 1}});

  Json cands = Json::array();
  for (const auto& c : r.connections.candidates) {
    Json cj{{"from", c.from + 1}, {"to", c.to + 1}};
    Json vj = to_json(c.verdict);
    for (auto& [k, v] : vj.items()) cj[k] = v;
    cands.push_back(std::move(cj));
  }
  j["connections"] = Json{{"box_bound", to_json(r.connections.box_bound)}, {"candidates", std::move(cands)}};

  const CrossChecks& c = r.checks;
  j["checks"] = Json{{"luna_agrees", c.luna_agrees},
                     {"bridge_verified", c.bridge_verified},
                     {"principal_is_smooth_locus", c.principal_is_smooth_locus},
                     {"connections", c.connections},
                     {"connection_pairs", c.connection_pairs},
                     {"connection_inconclusive", c.connection_inconclusive},
                     {"semigroup_verified", c.semigroup_verified},
                     {"semigroup_inconclusive", c.semigroup_inconclusive}};
  j["warnings"] = r.warnings;
  j["provenance"] = kProvenance;
  return j;
}

StratificationReport report_from_json(const Json& j) {
  const std::string w = "report";
  require_object(j, w,
                 {"schema", "input", "options", "box_bound", "torus_rank", "sublattice_basis", "cone", "class_group",
                  "divisor_classes", "faces", "strata", "closure", "connections", "checks", "warnings", "provenance"});
  check_schema(j, w);
  StratificationReport r;

  const Json& in = field(j, "input", w);
  require_object(in, "input", {"rank", "rays", "normalize"});
  r.input_rank = read_size(field(in, "rank", "input"), "input.rank");
  r.input_rays = read_vectors(field(in, "rays", "input"), "input.rays");
  r.options.normalize = read_bool(field(in, "normalize", "input"), "input.normalize");

  const Json& opt = field(j, "options", w);
  require_object(opt, "options", {"box_bound", "coeff_bound", "strict"});
  if (const Json& b = field(opt, "box_bound", "options"); !b.is_null()) r.options.box_bound = read_integer(b, "options.box_bound");
  r.options.coeff_bound = read_integer(field(opt, "coeff_bound", "options"), "options.coeff_bound");
  r.options.strict = read_bool(field(opt, "strict", "options"), "options.strict");

  r.box_bound = read_integer(field(j, "box_bound", w), "box_bound");
  r.torus_rank = read_size(field(j, "torus_rank", w), "torus_rank");
  r.sublattice_basis = IntegerMatrix::from_rows(read_vectors(field(j, "sublattice_basis", w), "sublattice_basis"), r.input_rank);

  const Json& cj = field(j, "cone", w);
  require_object(cj, "cone", {"rank", "rays"});
  std::size_t cone_rank = read_size(field(cj, "rank", "cone"), "cone.rank");
  auto cone_rays = read_vectors(field(cj, "rays", "cone"), "cone.rays");
  if (cone_rank != 0 || !cone_rays.empty()) r.cone = build_cone(cone_rank, cone_rays);
  const std::size_t m = r.cone.ray_count();

  r.class_group = read_group(field(j, "class_group", w), "class_group");
  const Json& dc = read_array(field(j, "divisor_classes", w), "divisor_classes");
  for (std::size_t i = 0; i < dc.size(); ++i)
    r.divisor_classes.push_back(read_element(r.class_group, dc[i], sub("divisor_classes", i)));

  const Json& faces = read_array(field(j, "faces", w), "faces");
  const Json& strata = read_array(field(j, "strata", w), "strata");
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const std::string fw = sub("faces", i);
    const Json& f = faces[i];
    require_object(f, fw, {"id", "rays", "dim", "dset", "g_subgroup", "local_class_group", "orbit_dim", "smooth",
                           "semigroup", "stratum"});
    if (read_size(field(f, "id", fw), sub(fw, "id")) != i + 1) fail(fw, "ids must run 1, 2, ...");
    Face face{read_positions(field(f, "rays", fw), sub(fw, "rays"), m), read_size(field(f, "dim", fw), sub(fw, "dim"))};
    FaceOrbitData data{std::move(face),
                       read_positions(field(f, "dset", fw), sub(fw, "dset"), m),
                       read_subgroup(r.class_group, field(f, "g_subgroup", fw), sub(fw, "g_subgroup")),
                       read_group(field(f, "local_class_group", fw), sub(fw, "local_class_group")),
                       read_size(field(f, "orbit_dim", fw), sub(fw, "orbit_dim")),
                       read_bool(field(f, "smooth", fw), sub(fw, "smooth"))};
    const Json& sg = field(f, "semigroup", fw);
    require_object(sg, sub(fw, "semigroup"), {"status", "unresolved", "details"});
    SemigroupCheck check;
    std::string st = read_string(field(sg, "status", fw), sub(fw, "semigroup.status"));
    if (st != "verified" && st != "inconclusive") fail(sub(fw, "semigroup.status"), "unknown status \"" + st + "\"");
    check.status = st == "verified" ? SemigroupCheck::Status::Verified : SemigroupCheck::Status::Inconclusive;
    check.unresolved = read_positions(field(sg, "unresolved", fw), sub(fw, "semigroup.unresolved"), m);
    check.details = read_string(field(sg, "details", fw), sub(fw, "semigroup.details"));
    FaceRecord rec{std::move(data), std::move(check),
                   read_position(field(f, "stratum", fw), sub(fw, "stratum"), strata.size())};
    r.faces.push_back(std::move(rec));
  }

  for (std::size_t i = 0; i < strata.size(); ++i) {
    const std::string sw = sub("strata", i);
    const Json& s = strata[i];
    require_object(s, sw, {"id", "subgroup", "faces", "dim", "smooth", "principal"});
    if (read_size(field(s, "id", sw), sub(sw, "id")) != i + 1) fail(sw, "ids must run 1, 2, ...");
    r.strata.push_back(Stratum{read_subgroup(r.class_group, field(s, "subgroup", sw), sub(sw, "subgroup")),
                               read_positions(field(s, "faces", sw), sub(sw, "faces"), r.faces.size()),
                               read_size(field(s, "dim", sw), sub(sw, "dim")),
                               read_bool(field(s, "smooth", sw), sub(sw, "smooth")),
                               read_bool(field(s, "principal", sw), sub(sw, "principal"))});
  }
  const Json& closure = read_array(field(j, "closure", w), "closure");
  for (std::size_t i = 0; i < closure.size(); ++i) {
    const std::string ew = sub("closure", i);
    require_object(closure[i], ew, {"lower", "upper"});
    r.closure.push_back({read_position(field(closure[i], "lower", ew), sub(ew, "lower"), r.strata.size()),
                         read_position(field(closure[i], "upper", ew), sub(ew, "upper"), r.strata.size())});
  }

  const Json& conn = field(j, "connections", w);
  require_object(conn, "connections", {"box_bound", "candidates"});
  r.connections.box_bound = read_integer(field(conn, "box_bound", "connections"), "connections.box_bound");
  for (const auto& f : r.faces) r.connections.faces.push_back(f.data.face);
  const Json& cands = read_array(field(conn, "candidates", "connections"), "connections.candidates");
  for (std::size_t i = 0; i < cands.size(); ++i) {
    const std::string cw = sub("connections.candidates", i);
    const Json& c = cands[i];
    require_object(c, cw, {"from", "to", "status", "certificate", "witness", "bound", "reason"});
    ConnectionGraph::Candidate cand;
    cand.from = read_position(field(c, "from", cw), sub(cw, "from"), r.faces.size());
    cand.to = read_position(field(c, "to", cw), sub(cw, "to"), r.faces.size());
    auto status = read_status(read_string(field(c, "status", cw), sub(cw, "status")), sub(cw, "status"));
    auto cert = read_certificate(read_string(field(c, "certificate", cw), sub(cw, "certificate")), sub(cw, "certificate"));
    std::string reason = read_string(field(c, "reason", cw), sub(cw, "reason"));
    const Json& wit = field(c, "witness", cw);
    const Json& bound = field(c, "bound", cw);
    if (status == ConnectionVerdict::Status::Yes) {
      if (wit.is_null()) fail(cw, "a yes verdict needs a witness");
      try {
        cand.verdict = ConnectionVerdict::yes(r.cone, r.faces[cand.from].data.face, r.faces[cand.to].data.face,
                                              read_root(wit, sub(cw, "witness"), m), read_integer(bound, sub(cw, "bound")));
      } catch (const TheoryViolation& e) {
        fail(cw, e.what());
      }
    } else if (status == ConnectionVerdict::Status::No) {
      cand.verdict = ConnectionVerdict::no(cert, reason);
    } else {
      cand.verdict = ConnectionVerdict::inconclusive(read_integer(bound, sub(cw, "bound")));
    }
    if (to_json(cand.verdict) != Json{{"status", to_string(status)}, {"certificate", to_string(cert)}, {"witness", wit},
                                      {"bound", bound}, {"reason", reason}})
      fail(cw, "verdict fields are inconsistent");
    r.connections.candidates.push_back(std::move(cand));
  }

  const Json& ch = field(j, "checks", w);
  require_object(ch, "checks", {"luna_agrees", "bridge_verified", "principal_is_smooth_locus", "connections",
                                "connection_pairs", "connection_inconclusive", "semigroup_verified",
                                "semigroup_inconclusive"});
  r.checks.luna_agrees = read_bool(field(ch, "luna_agrees", "checks"), "checks.luna_agrees");
  r.checks.bridge_verified = read_bool(field(ch, "bridge_verified", "checks"), "checks.bridge_verified");
  r.checks.principal_is_smooth_locus =
      read_bool(field(ch, "principal_is_smooth_locus", "checks"), "checks.principal_is_smooth_locus");
  r.checks.connections = read_string(field(ch, "connections", "checks"), "checks.connections");
  r.checks.connection_pairs = read_size(field(ch, "connection_pairs", "checks"), "checks.connection_pairs");
  r.checks.connection_inconclusive =
      read_size(field(ch, "connection_inconclusive", "checks"), "checks.connection_inconclusive");
  r.checks.semigroup_verified = read_size(field(ch, "semigroup_verified", "checks"), "checks.semigroup_verified");
  r.checks.semigroup_inconclusive =
      read_size(field(ch, "semigroup_inconclusive", "checks"), "checks.semigroup_inconclusive");

  const Json& warn = read_array(field(j, "warnings", w), "warnings");
  for (std::size_t i = 0; i < warn.size(); ++i) r.warnings.push_back(read_string(warn[i], sub("warnings", i)));
  return r;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace toric
