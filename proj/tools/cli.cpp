#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "toric/errors.hpp"
#include "toric/report_json.hpp"

namespace toric::cli {

namespace {

struct Flags {
  std::string path;
  std::string bound;
  std::string coeff_bound;
  std::string format = "text";
  bool strict = false;
  bool normalize = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Integer parse_bound(const std::string& text, const char* flag) {
  std::size_t start = !text.empty() && text[0] == '-';
  if (text.size() <= start || text.find_first_not_of("0123456789", start) != std::string::npos)
    throw InputError(std::string(flag) + " expects an integer, got \"" + text + "\"");
  Integer x(text);
  if (x < 1) throw InputError(std::string(flag) + " must be at least 1");
  return x;
}

std::string set_text(const std::vector<std::size_t>& idx) {
  std::string out = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + std::to_string(idx[i] + 1);
  return out + "}";
}

std::string subgroup_text(const SubgroupHandle& s) {
  std::string gens = s.describe();
  std::string iso = subgroup_structure(s).describe();
  return gens == "0" ? iso : iso + " = " + gens;
}

// "S3 < S2 < S1" for a chain, covering pairs otherwise.
std::string closure_text(const StratificationReport& r) {
  if (r.closure.empty()) return r.strata.size() == 1 ? "single stratum" : "no relations";
  const std::size_t k = r.strata.size();
  std::vector<int> up(k, -1), down_count(k, 0);
  bool chain = r.closure.size() + 1 == k;
  for (const auto& e : r.closure) {
    chain = chain && up[e.lower] == -1 && ++down_count[e.upper] == 1;
    up[e.lower] = static_cast<int>(e.upper);
  }
  std::string out;
  if (chain) {
    std::size_t bottom = 0;
    while (bottom < k && down_count[bottom] != 0) ++bottom;
    for (int s = static_cast<int>(bottom); s != -1; s = up[s]) out += (out.empty() ? "S" : " < S") + std::to_string(s + 1);
    return out;
  }
  for (const auto& e : r.closure)
    out += (out.empty() ? "" : ", ") + ("S" + std::to_string(e.lower + 1)) + " < S" + std::to_string(e.upper + 1);
  return out;
}

struct LoadedCone {
  ConeInput input;
  DegenerateSplit split;
};

// Validates in the file's coordinates, then splits off any torus factor.
LoadedCone load_cone(const Flags& f) {
  ConeInput in = parse_cone_file(read_file(f.path));
  in.normalize = in.normalize || f.normalize;
  std::vector<IntVector> rays;
  if (!in.rays.empty()) rays = build_cone(in.rank, in.rays, in.normalize).rays();
  DegenerateSplit split = split_degenerate(in.rank, rays);
  return {std::move(in), std::move(split)};
}

void print_split_note(std::ostream& out, const LoadedCone& c) {
  if (c.split.torus_rank == 0) return;
  out << "torus factor of rank " << c.split.torus_rank << " split off; cone coordinates below refer to the basis "
      << c.split.sublattice_basis.to_string() << "\n";
}

Json split_json(const LoadedCone& c) {
  Json j{{"torus_rank", c.split.torus_rank}, {"sublattice_basis", to_json(c.split.sublattice_basis)}};
  j["rays"] = Json::array();
  for (const auto& r : c.split.induced.rays()) j["rays"].push_back(to_json(r));
  return j;
}

Integer box_of(const Flags& f, const Cone& c) {
  return f.bound.empty() ? default_box_bound(c) : parse_bound(f.bound, "--bound");
}

bool want_json(const Flags& f) { return f.format == "json"; }

// ---------------------------------------------------------------------------

int cmd_stratify(const Flags& f, std::ostream& out) {
  ConeInput in = parse_cone_file(read_file(f.path));
  StratifyOptions opt;
  if (!f.bound.empty()) opt.box_bound = parse_bound(f.bound, "--bound");
  if (!f.coeff_bound.empty()) opt.coeff_bound = parse_bound(f.coeff_bound, "--coeff-bound");
  opt.strict = f.strict;
  opt.normalize = in.normalize || f.normalize;
  StratificationReport r = stratify(in.rank, in.rays, opt);

  if (want_json(f)) {
    out << dump_json(report_to_json(r));
  } else {
    out << "class group: " << r.class_group.describe() << "\n";
    if (r.torus_rank > 0) out << "torus factor: rank " << r.torus_rank << " (included in all dimensions)\n";
    out << "faces: " << r.faces.size() << ", box bound for roots: " << r.box_bound << "\n\n";
    out << "strata (" << r.strata.size() << "):\n";
    for (std::size_t i = 0; i < r.strata.size(); ++i) {
      const Stratum& s = r.strata[i];
      out << "  S" << i + 1 << "  dim " << s.dim << "  subgroup " << subgroup_text(s.subgroup) << "  "
          << (s.smooth ? "smooth" : "singular") << (s.principal ? "  principal" : "") << "\n      faces:";
      for (auto fi : s.faces) out << " " << set_text(r.faces[fi].data.face.rays);
      out << "\n";
    }
    out << "\nclosure order: " << closure_text(r) << "\n";
    out << "\nchecks:\n"
        << "  G(O) classes match Luna strata: " << (r.checks.luna_agrees ? "yes" : "no") << "\n"
        << "  faces match closed supports: " << (r.checks.bridge_verified ? "yes" : "no") << "\n"
        << "  principal stratum is the smooth locus: " << (r.checks.principal_is_smooth_locus ? "yes" : "no") << "\n"
        << "  root connections: " << r.checks.connections << " (" << r.checks.connection_pairs << " pairs, "
        << r.checks.connection_inconclusive << " inconclusive)\n"
        << "  semigroup equals group: " << r.checks.semigroup_verified << " of " << r.faces.size()
        << " faces verified\n";
    out << "\nwarnings:" << (r.warnings.empty() ? " none" : "") << "\n";
    for (const auto& w : r.warnings) out << "  " << w << "\n";
  }
  return r.strict_failure() ? kStrictFailure : kOk;
}

int cmd_roots(const Flags& f, std::ostream& out) {
  LoadedCone c = load_cone(f);
  const Cone& cone = c.split.induced;
  Integer box = box_of(f, cone);
  auto roots = enumerate_roots(cone, box);
  if (want_json(f)) {
    Json j{{"schema", kSchemaVersion}, {"cone", split_json(c)}, {"box_bound", to_json(box)}, {"roots", Json::array()}};
    for (const auto& r : roots) j["roots"].push_back(Json{{"ray", r.distinguished_ray + 1}, {"e", to_json(r.e)}});
    out << dump_json(j);
    return kOk;
  }
  print_split_note(out, c);
  out << "box bound: " << box << "\n";
  std::size_t k = 0;
  for (std::size_t t = 0; t < cone.ray_count(); ++t) {
    std::size_t start = k;
    while (k < roots.size() && roots[k].distinguished_ray == t) ++k;
    out << "ray " << t + 1 << " " << to_string(cone.rays()[t]) << ": " << k - start << " roots\n";
    for (std::size_t i = start; i < k; ++i) out << "  " << to_string(roots[i].e) << "\n";
  }
  out << "total: " << roots.size() << " roots\n";
  return kOk;
}

int cmd_connections(const Flags& f, std::ostream& out) {
  LoadedCone c = load_cone(f);
  const Cone& cone = c.split.induced;
  ConnectionGraph g = connection_graph(cone, box_of(f, cone));
  auto components = connected_components(g);
  auto isolated = isolated_faces(g);
  std::size_t unresolved = 0;
  for (const auto& cand : g.candidates) unresolved += !cand.verdict.conclusive();

  if (want_json(f)) {
    Json j{{"schema", kSchemaVersion}, {"cone", split_json(c)}, {"box_bound", to_json(g.box_bound)}};
    j["faces"] = Json::array();
    for (std::size_t i = 0; i < g.faces.size(); ++i)
      j["faces"].push_back(Json{{"id", i + 1}, {"rays", positions_to_json(g.faces[i].rays)}, {"component", components[i] + 1}});
    j["candidates"] = Json::array();
    for (const auto& cand : g.candidates) {
      Json cj{{"from", cand.from + 1}, {"to", cand.to + 1}};
      Json vj = to_json(cand.verdict);
      for (auto& [key, v] : vj.items()) cj[key] = v;
      j["candidates"].push_back(std::move(cj));
    }
    j["isolated"] = Json::array();
    for (const auto& iso : isolated)
      j["isolated"].push_back(Json{{"rays", positions_to_json(iso.face.rays)}, {"fully_certified", iso.fully_certified}});
    out << dump_json(j);
  } else {
    print_split_note(out, c);
    out << "box bound: " << g.box_bound << "\n";
    for (const auto& cand : g.candidates) {
      const ConnectionVerdict& v = cand.verdict;
      out << set_text(g.faces[cand.from].rays) << " -> " << set_text(g.faces[cand.to].rays) << ": "
          << to_string(v.status);
      if (v.witness) out << "  e = " << to_string(v.witness->e) << " (ray " << v.witness->distinguished_ray + 1 << ")";
      if (v.status == ConnectionVerdict::Status::No) out << "  [" << to_string(v.certificate) << "] " << v.reason;
      if (v.status == ConnectionVerdict::Status::Inconclusive) out << "  " << v.reason;
      out << "\n";
    }
    out << "isolated faces:";
    if (isolated.empty()) out << " none";
    for (const auto& iso : isolated)
      out << " " << set_text(iso.face.rays) << (iso.fully_certified ? " (certified)" : " (unresolved)");
    out << "\n";
  }
  return f.strict && unresolved > 0 ? kStrictFailure : kOk;
}

int cmd_luna(const Flags& f, std::ostream& out) {
  WeightSystem w = parse_weight_file(read_file(f.path));
  auto strata = luna_strata(w);
  if (want_json(f)) {
    Json j{{"schema", kSchemaVersion}, {"group", to_json(w.group)}, {"strata", Json::array()}};
    for (std::size_t i = 0; i < strata.size(); ++i) {
      Json sj{{"id", i + 1}, {"subgroup", to_json(strata[i].subgroup)}, {"dim", strata[i].dim}, {"supports", Json::array()}};
      for (const auto& s : strata[i].supports) sj["supports"].push_back(positions_to_json(s.indices));
      j["strata"].push_back(std::move(sj));
    }
    out << dump_json(j);
    return kOk;
  }
  out << "weights: " << w.weights.size() << " in " << w.group.describe() << "\n";
  out << "strata (" << strata.size() << "):\n";
  for (std::size_t i = 0; i < strata.size(); ++i) {
    out << "  L" << i + 1 << "  dim " << strata[i].dim << "  stabilizer characters " << subgroup_text(strata[i].subgroup)
        << "\n      supports (" << strata[i].supports.size() << "):";
    for (const auto& s : strata[i].supports) out << " " << set_text(s.indices);
    out << "\n";
  }
  return kOk;
}

int cmd_stable(const Flags& f, std::ostream& out) {
  WeightSystem w = parse_weight_file(read_file(f.path));
  StabilityVerdict v = check_strongly_stable(w);
  if (want_json(f)) {
    Json j{{"schema", kSchemaVersion}, {"stable", v.stable}, {"offending", Json::array()}};
    for (const auto& s : v.offending) j["offending"].push_back(positions_to_json(s.indices));
    out << dump_json(j);
    return kOk;
  }
  out << (v.stable ? "Stable" : "Unstable") << "\n";
  if (!v.stable) {
    out << "offending supports:";
    for (const auto& s : v.offending) out << " " << set_text(s.indices);
    out << "\n";
  }
  return kOk;
}

int cmd_classgroup(const Flags& f, std::ostream& out) {
  LoadedCone c = load_cone(f);
  ToricData t = build_toric(c.split.induced);
  std::vector<FaceOrbitData> faces;
  for (const auto& face : t.faces) faces.push_back(face_orbit_data(t, face));

  if (want_json(f)) {
    Json j{{"schema", kSchemaVersion}, {"cone", split_json(c)}, {"class_group", to_json(t.class_group)}};
    j["divisor_classes"] = Json::array();
    for (const auto& d : t.divisor_classes) j["divisor_classes"].push_back(to_json(d.coords));
    j["faces"] = Json::array();
    for (const auto& d : faces)
      j["faces"].push_back(Json{{"rays", positions_to_json(d.face.rays)},
                                {"g_subgroup", to_json(d.g_subgroup)},
                                {"local_class_group", to_json(d.local_class_group)},
                                {"smooth", d.smooth}});
    out << dump_json(j);
    return kOk;
  }
  print_split_note(out, c);
  out << "class group: " << t.class_group.describe() << "\n";
  out << "divisor classes:\n";
  for (std::size_t i = 0; i < t.divisor_classes.size(); ++i)
    out << "  D" << i + 1 << " = " << to_string(t.divisor_classes[i].coords) << "   ray "
        << to_string(t.cone.rays()[i]) << "\n";
  out << "faces:\n";
  for (const auto& d : faces)
    out << "  " << set_text(d.face.rays) << "  G(O) = " << subgroup_text(d.g_subgroup)
        << "  Cl(X,x) = " << d.local_class_group.describe() << (d.smooth ? "  smooth" : "") << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Automorphism orbit strata of affine toric varieties", "toricstrata"};
  app.require_subcommand(1);
  Flags flags;

  struct Command {
    const char* name;
    const char* help;
    bool cone_input;
    int (*fn)(const Flags&, std::ostream&);
  };
  const Command commands[] = {
      {"stratify", "strata, closure order and cross-checks for a cone file", true, cmd_stratify},
      {"roots", "Demazure roots in a box, grouped by distinguished ray", true, cmd_roots},
      {"connections", "root connections between neighbouring faces", true, cmd_connections},
      {"classgroup", "class group, divisor classes and per-face subgroups", true, cmd_classgroup},
      {"luna", "Luna strata of a weight file", false, cmd_luna},
      {"stable", "strong stability of a weight file", false, cmd_stable},
  };
  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("file", flags.path, c.cone_input ? "cone file (JSON)" : "weight file (JSON)")->required();
    sub->add_option("--format", flags.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    std::string name = c.name;
    if (c.cone_input) sub->add_flag("--normalize", flags.normalize, "divide rays by their content");
    if (name == "stratify" || name == "roots" || name == "connections")
      sub->add_option("--bound", flags.bound, "box bound for root searches");
    if (name == "stratify") sub->add_option("--coeff-bound", flags.coeff_bound, "coefficient bound for semigroup checks");
    if (name == "stratify" || name == "connections")
      sub->add_flag("--strict", flags.strict, "exit 2 when any finding is unresolved");
    sub->callback([&chosen, &c] { chosen = &c; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    return chosen->fn(flags, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const TheoryViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace toric::cli
