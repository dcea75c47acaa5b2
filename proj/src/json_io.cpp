#include "relpres/json_io.hpp"

#include <algorithm>

namespace relpres {

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::SchemaError, path + ": " + message);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) schema_fail(path + "/" + key, "missing field");
  return j.at(key);
}

std::string need_string(const Json& j, const char* key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_string()) schema_fail(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

long long need_int(const Json& j, const char* key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_number_integer()) schema_fail(path + "/" + key, "expected an integer");
  return v.get<long long>();
}

}  // namespace

GroupBackend parse_backend(const Json& j, const std::string& path) {
  std::string kind = need_string(j, "kind", path);
  try {
    if (kind == "free_abelian")
      return GroupBackend::free_abelian(static_cast<int>(need_int(j, "rank", path)));
    if (kind == "free") {
      const Json& basis = need(j, "basis", path);
      if (!basis.is_array()) schema_fail(path + "/basis", "expected an array");
      return GroupBackend::free_group(basis.get<std::vector<std::string>>());
    }
    if (kind == "formal") {
      const Json& alpha = need(j, "alphabet", path);
      if (!alpha.is_array()) schema_fail(path + "/alphabet", "expected an array");
      std::map<std::string, std::string> phi;
      if (j.contains("phi")) phi = j.at("phi").get<std::map<std::string, std::string>>();
      return GroupBackend::formal(alpha.get<std::vector<std::string>>(), phi);
    }
    if (kind == "finite_table") {
      const Json& table = need(j, "table", path);
      if (!table.is_array()) schema_fail(path + "/table", "expected an array");
      return GroupBackend::finite_table(table.get<std::vector<std::vector<int>>>());
    }
  } catch (const Json::exception& e) {
    schema_fail(path, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    schema_fail(path, e.what());
  }
  schema_fail(path + "/kind", "unknown backend kind: " + kind);
}

Element parse_element(const GroupBackend& b, const Json& j, const std::string& path) {
  try {
    switch (b.kind()) {
      case BackendKind::FreeAbelian: {
        if (!j.is_array()) schema_fail(path, "expected an integer vector");
        Element e{j.get<ZVec>()};
        b.check_element(e);
        return e;
      }
      case BackendKind::Free:
      case BackendKind::FormalSymbols: {
        if (!j.is_array()) schema_fail(path, "expected a list of [symbol, exp] pairs");
        std::vector<std::pair<Element, long long>> expr;
        for (size_t i = 0; i < j.size(); ++i) {
          const Json& pair = j[i];
          if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
              !pair[1].is_number_integer())
            schema_fail(path + "/" + std::to_string(i), "expected [symbol, exp]");
          expr.emplace_back(b.symbol_element(pair[0].get<std::string>()),
                            pair[1].get<long long>());
        }
        return evaluate(b, expr);
      }
      case BackendKind::FiniteTable: {
        if (!j.is_number_integer()) schema_fail(path, "expected an element index");
        Element e{static_cast<int>(j.get<long long>())};
        b.check_element(e);
        return e;
      }
    }
  } catch (const Json::exception& e) {
    schema_fail(path, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    schema_fail(path, e.what());
  }
  schema_fail(path, "unreachable");
}

Alphabet parse_alphabet(const Json& j, const std::string& path) {
  Alphabet a;
  if (j.contains("factors")) {
    const Json& factors = j.at("factors");
    if (!factors.is_array()) schema_fail(path + "/factors", "expected an array");
    for (size_t i = 0; i < factors.size(); ++i) {
      std::string fpath = path + "/factors/" + std::to_string(i);
      std::string name = need_string(factors[i], "name", fpath);
      a.add_factor(name, parse_backend(need(factors[i], "backend", fpath), fpath + "/backend"));
    }
  }
  if (j.contains("free_gens")) {
    const Json& gens = j.at("free_gens");
    if (!gens.is_array()) schema_fail(path + "/free_gens", "expected an array");
    for (const auto& g : gens) {
      if (!g.is_string()) schema_fail(path + "/free_gens", "expected generator names");
      a.add_free_gen(g.get<std::string>());
    }
  }
  return a;
}

Word parse_word(const Alphabet& a, const Json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected a syllable list");
  std::vector<Syllable> raw;
  for (size_t i = 0; i < j.size(); ++i) {
    const Json& s = j[i];
    std::string spath = path + "/" + std::to_string(i);
    if (!s.is_object()) schema_fail(spath, "expected a syllable object");
    if (s.contains("factor")) {
      std::string f = need_string(s, "factor", spath);
      if (!a.has_factor(f)) schema_fail(spath + "/factor", "undeclared factor " + f);
      raw.push_back(FactorSyllable{f, parse_element(a.backend(f), need(s, "elem", spath),
                                                    spath + "/elem")});
    } else if (s.contains("gen")) {
      std::string g = need_string(s, "gen", spath);
      if (!a.has_free_gen(g)) schema_fail(spath + "/gen", "undeclared generator " + g);
      raw.push_back(FreeSyllable{g, need_int(s, "exp", spath)});
    } else {
      schema_fail(spath, "syllable needs either factor/elem or gen/exp");
    }
  }
  return reduce(a, raw);
}

RelativePresentation parse_presentation(const Json& j) {
  RelativePresentation p;
  p.alphabet = parse_alphabet(j, "");
  p.relator = parse_word(p.alphabet, need(j, "relator", ""), "/relator");
  if (j.contains("t_factor")) {
    std::string t = j.at("t_factor").get<std::string>();
    if (!p.alphabet.has_factor(t)) schema_fail("/t_factor", "undeclared factor " + t);
    p.t_factor = t;
  }
  validate_presentation(p);
  return p;
}

SubproductSpec parse_subproduct(const Alphabet& a, const Json& j, const std::string& path) {
  SubproductSpec s;
  if (j.contains("factors"))
    for (const auto& f : j.at("factors")) {
      std::string name = f.get<std::string>();
      if (!a.has_factor(name)) schema_fail(path + "/factors", "undeclared factor " + name);
      s.factors.insert(name);
    }
  if (j.contains("free_gens"))
    for (const auto& g : j.at("free_gens")) {
      std::string name = g.get<std::string>();
      if (!a.has_free_gen(name)) schema_fail(path + "/free_gens", "undeclared generator " + name);
      s.free_gens.insert(name);
    }
  return s;
}

RelatorsInput parse_relators(const Json& j) {
  RelatorsInput in;
  in.alphabet = parse_alphabet(j, "");
  const Json& rel = need(j, "relators", "");
  if (!rel.is_array()) schema_fail("/relators", "expected an array of words");
  for (size_t i = 0; i < rel.size(); ++i)
    in.relators.push_back(parse_word(in.alphabet, rel[i], "/relators/" + std::to_string(i)));
  return in;
}

UpInput parse_up_sets(const Json& j) {
  UpInput in;
  GroupBackend b = parse_backend(need(j, "backend", ""), "/backend");
  in.x.backend = b;
  in.y.backend = b;
  const Json& X = need(j, "X", "");
  const Json& Y = need(j, "Y", "");
  if (!X.is_array() || !Y.is_array()) schema_fail("/X", "expected element arrays");
  for (size_t i = 0; i < X.size(); ++i)
    in.x.elements.push_back(parse_element(b, X[i], "/X/" + std::to_string(i)));
  for (size_t i = 0; i < Y.size(); ++i)
    in.y.elements.push_back(parse_element(b, Y[i], "/Y/" + std::to_string(i)));
  return in;
}

SetSystem parse_set_system(const Json& j) {
  SetSystem s;
  const Json& elems = need(j, "elements", "");
  if (!elems.is_array()) schema_fail("/elements", "expected an array");
  std::map<std::string, int> index;
  for (const auto& e : elems) {
    std::string name = e.get<std::string>();
    if (index.count(name)) schema_fail("/elements", "duplicate element " + name);
    index[name] = static_cast<int>(s.elements.size());
    s.elements.push_back(name);
  }
  const Json& omega = need(j, "omega", "");
  if (!omega.is_array()) schema_fail("/omega", "expected an array of subsets");
  for (size_t i = 0; i < omega.size(); ++i) {
    std::vector<int> set;
    for (const auto& e : omega[i]) {
      std::string name = e.get<std::string>();
      auto it = index.find(name);
      if (it == index.end())
        schema_fail("/omega/" + std::to_string(i), "unknown element " + name);
      set.push_back(it->second);
    }
    s.omegas.push_back(std::move(set));
  }
  if (j.contains("n_flags")) {
    s.n_flags = j.at("n_flags").get<std::vector<bool>>();
    if (s.n_flags.size() != s.omegas.size())
      schema_fail("/n_flags", "flag count must match omega count");
  } else {
    s.n_flags.assign(s.omegas.size(), false);
  }
  return s;
}

namespace {

FaceType parse_face_type(const std::string& t, const std::string& path) {
  if (t == "B_FACE") return FaceType::B;
  if (t == "C_FACE") return FaceType::C;
  if (t == "W_FACE") return FaceType::W;
  if (t == "W_INV_FACE") return FaceType::WInv;
  schema_fail(path, "unknown face type " + t);
}

std::string face_type_name(FaceType t) {
  switch (t) {
    case FaceType::B: return "B_FACE";
    case FaceType::C: return "C_FACE";
    case FaceType::W: return "W_FACE";
    case FaceType::WInv: return "W_INV_FACE";
  }
  return "?";
}

}  // namespace

HowieDiagram parse_diagram(const Json& j) {
  HowieDiagram d;
  d.m = static_cast<int>(need_int(j, "m", ""));
  d.exterior = need_string(j, "exterior", "");
  const Json& verts = need(j, "vertices", "");
  if (!verts.is_array()) schema_fail("/vertices", "expected an array");
  d.vertices = verts.get<std::vector<std::string>>();

  const Json& alpha = need(j, "corner_alphabet", "");
  if (!alpha.is_array()) schema_fail("/corner_alphabet", "expected an array");
  std::map<std::string, std::string> phi;
  if (j.contains("phi")) phi = j.at("phi").get<std::map<std::string, std::string>>();
  try {
    d.corners = GroupBackend::formal(alpha.get<std::vector<std::string>>(), phi);
  } catch (const Error& e) {
    schema_fail("/corner_alphabet", e.what());
  }

  const Json& classes = need(j, "corner_classes", "");
  auto read_class = [&](const char* key, CornerClass cls) {
    if (!classes.contains(key)) return;
    for (const auto& s : classes.at(key)) {
      std::string name = s.get<std::string>();
      if (!d.corners.symbol_id(name))
        schema_fail(std::string("/corner_classes/") + key, "unknown symbol " + name);
      d.corner_classes[name] = cls;
    }
  };
  read_class("b", CornerClass::B);
  read_class("c", CornerClass::C);
  read_class("a", CornerClass::A);
  read_class("w_b", CornerClass::WB);

  const Json& edges = need(j, "edges", "");
  if (!edges.is_array()) schema_fail("/edges", "expected an array");
  for (size_t i = 0; i < edges.size(); ++i) {
    std::string path = "/edges/" + std::to_string(i);
    HowieDiagram::Edge e;
    e.id = need_string(edges[i], "id", path);
    e.from = need_string(edges[i], "from", path);
    e.to = need_string(edges[i], "to", path);
    std::string label = need_string(edges[i], "label", path);
    if (label != "t" && label != "x") schema_fail(path + "/label", "label must be t or x");
    e.label = label[0];
    d.edges.push_back(std::move(e));
  }

  const Json& faces = need(j, "faces", "");
  if (!faces.is_array()) schema_fail("/faces", "expected an array");
  for (size_t i = 0; i < faces.size(); ++i) {
    std::string path = "/faces/" + std::to_string(i);
    HowieDiagram::Face f;
    f.id = need_string(faces[i], "id", path);
    f.type = parse_face_type(need_string(faces[i], "type", path), path + "/type");
    const Json& boundary = need(faces[i], "boundary", path);
    if (!boundary.is_array()) schema_fail(path + "/boundary", "expected an array");
    for (size_t p = 0; p < boundary.size(); ++p) {
      std::string bpath = path + "/boundary/" + std::to_string(p);
      HowieDiagram::BoundaryItem item;
      item.edge = need_string(boundary[p], "edge", bpath);
      const Json& along = need(boundary[p], "along", bpath);
      if (!along.is_boolean()) schema_fail(bpath + "/along", "expected a boolean");
      item.along = along.get<bool>();
      std::string corner;
      if (boundary[p].contains("corner")) corner = boundary[p].at("corner").get<std::string>();
      try {
        item.corner = parse_corner(d.corners, corner);
      } catch (const Error& e) {
        schema_fail(bpath + "/corner", e.what());
      }
      f.boundary.push_back(std::move(item));
    }
    d.faces.push_back(std::move(f));
  }
  return d;
}

Json diagram_to_json(const HowieDiagram& d) {
  Json j;
  j["m"] = d.m;
  j["exterior"] = d.exterior;
  j["vertices"] = d.vertices;
  j["corner_alphabet"] = d.corners.symbols();
  Json classes = Json::object();
  auto dump_class = [&](const char* key, CornerClass cls) {
    Json arr = Json::array();
    for (const auto& [name, c] : d.corner_classes)
      if (c == cls) arr.push_back(name);
    if (!arr.empty()) classes[key] = arr;
  };
  dump_class("b", CornerClass::B);
  dump_class("c", CornerClass::C);
  dump_class("a", CornerClass::A);
  dump_class("w_b", CornerClass::WB);
  j["corner_classes"] = classes;
  if (d.corners.has_phi()) {
    Json phi = Json::object();
    for (const std::string& s : d.corners.symbols()) {
      try {
        Element img = d.corners.apply_phi(d.corners.symbol_element(s));
        phi[s] = d.corners.element_str(img);
      } catch (const Error&) {
        // phi partial: skip symbols without an image
      }
    }
    j["phi"] = phi;
  }
  Json edges = Json::array();
  for (const auto& e : d.edges)
    edges.push_back({{"id", e.id}, {"from", e.from}, {"to", e.to},
                     {"label", std::string(1, e.label)}});
  j["edges"] = edges;
  Json faces = Json::array();
  for (const auto& f : d.faces) {
    Json boundary = Json::array();
    for (const auto& item : f.boundary)
      boundary.push_back({{"edge", item.edge},
                          {"along", item.along},
                          {"corner", d.corners.element_str(item.corner) == "1"
                                         ? ""
                                         : d.corners.element_str(item.corner)}});
    faces.push_back({{"id", f.id}, {"type", face_type_name(f.type)}, {"boundary", boundary}});
  }
  j["faces"] = faces;
  return j;
}

Json element_to_json(const GroupBackend& b, const Element& e) {
  switch (b.kind()) {
    case BackendKind::FreeAbelian:
      return Json(e.zvec());
    case BackendKind::Free:
    case BackendKind::FormalSymbols: {
      Json arr = Json::array();
      const SymWord& w = e.symword();
      size_t i = 0;
      while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        long long run = static_cast<long long>(j - i);
        int id = w[i] < 0 ? -w[i] : w[i];
        arr.push_back(Json::array({b.symbol_name(id), w[i] < 0 ? -run : run}));
        i = j;
      }
      return arr;
    }
    case BackendKind::FiniteTable:
      return Json(e.index());
  }
  return Json();
}

Json word_to_json(const Alphabet& a, const Word& w) {
  Json arr = Json::array();
  for (const Syllable& s : w.syllables) {
    if (const auto* f = std::get_if<FactorSyllable>(&s))
      arr.push_back({{"factor", f->factor}, {"elem", element_to_json(a.backend(f->factor), f->elem)}});
    else {
      const auto& g = std::get<FreeSyllable>(s);
      arr.push_back({{"gen", g.gen}, {"exp", g.exp}});
    }
  }
  return arr;
}

Json report_to_json(const Alphabet& a, const CPrimeReport& r) {
  Json j;
  j["holds"] = r.holds;
  j["lambda"] = r.lambda.str();
  j["max_piece_syllables"] = r.pieces.max_piece_syllables;
  j["min_relator_syllables"] = r.pieces.min_relator_syllables;
  j["ratio"] = r.pieces.ratio.str();
  if (r.pieces.witness) {
    Json w;
    w["first"] = word_str(a, r.pieces.witness->first);
    w["second"] = word_str(a, r.pieces.witness->second);
    w["shared_prefix"] = word_str(a, r.pieces.witness->shared_prefix);
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json report_to_json(const GroupBackend& b, const UniqueProductsReport& r) {
  Json j;
  j["pair_count"] = r.pair_count;
  Json table = Json::array();
  for (const auto& e : r.table) {
    Json row;
    row["product"] = element_to_json(b, e.product);
    row["count"] = e.count;
    if (e.count == 1) {
      row["x"] = e.x_index;
      row["y"] = e.y_index;
    }
    table.push_back(row);
  }
  j["table"] = table;
  j["unique_count"] = r.uniques.size();
  return j;
}

Json report_to_json(const GroupBackend& b, const StrongUpReport& r) {
  Json j;
  switch (r.verdict) {
    case StrongUpReport::Verdict::NotApplicable: j["verdict"] = "not_applicable"; break;
    case StrongUpReport::Verdict::True: j["verdict"] = true; break;
    case StrongUpReport::Verdict::False: j["verdict"] = false; break;
  }
  auto witness = [&](const std::optional<ProductEntry>& w) -> Json {
    if (!w) return nullptr;
    return Json{{"product", element_to_json(b, w->product)}, {"x", w->x_index}, {"y", w->y_index}};
  };
  j["witness1"] = witness(r.witness1);
  j["witness2"] = witness(r.witness2);
  j["x_also_distinct"] = r.x_also_distinct;
  return j;
}

namespace {

Json family_names(const SetSystem& s, uint32_t mask) {
  Json arr = Json::array();
  for (size_t w = 0; w < s.omegas.size(); ++w)
    if (mask & (1u << w)) arr.push_back(static_cast<int>(w));
  return arr;
}

}  // namespace

Json report_to_json(const SetSystem& s, const OmegaReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["families_checked"] = r.families_checked;
  if (r.failing_family)
    j["failing_family"] = family_names(s, *r.failing_family);
  else
    j["failing_family"] = nullptr;
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json e;
    e["family"] = family_names(s, w.family_mask);
    e["ok"] = w.ok;
    if (w.min_elem >= 0) {
      e["min"] = s.elements[w.min_elem];
      e["omega_min"] = w.omega_min;
    }
    if (w.max_elem >= 0) {
      e["max"] = s.elements[w.max_elem];
      e["omega_max"] = w.omega_max;
    }
    ws.push_back(e);
  }
  j["witnesses"] = ws;
  return j;
}

Json report_to_json(const ValidationReport& r) {
  Json j;
  j["valid"] = r.valid();
  j["spherical"] = r.spherical;
  j["face_templates_ok"] = r.face_templates_ok;
  j["interior_labels_trivial"] = r.interior_labels_trivial;
  j["exterior_label"] = r.exterior_label;
  Json issues = Json::array();
  for (const auto& i : r.issues)
    issues.push_back({{"code", error_code_name(i.code)}, {"detail", i.detail}});
  j["issues"] = issues;
  return j;
}

Json report_to_json(const CollisionReport& r) {
  Json j;
  Json events = Json::array();
  for (const auto& e : r.events) {
    Json ev;
    ev["time"] = e.time.str();
    if (e.at_vertex) {
      ev["location"] = Json{{"kind", "vertex"}, {"id", e.location}};
    } else {
      ev["location"] = Json{{"kind", "edge"}, {"id", e.location}, {"offset", e.edge_offset.str()}};
    }
    ev["faces"] = e.faces;
    ev["complete"] = e.complete;
    events.push_back(ev);
  }
  j["events"] = events;
  j["complete_points"] = r.complete_points;
  j["complete_point_count"] = r.complete_points.size();
  return j;
}

Json report_to_json(const ParityReport& r) {
  Json j;
  j["t_edges_ok"] = r.t_edges_ok;
  j["x_edges_ok"] = r.x_edges_ok;
  Json vs = Json::array();
  for (const auto& v : r.violations)
    vs.push_back({{"face", v.face},
                  {"segment", v.segment},
                  {"from", v.t0.str()},
                  {"to", v.t1.str()},
                  {"reason", v.reason}});
  j["violations"] = vs;
  return j;
}

Json report_to_json(const ReducednessReport& r) {
  Json j;
  j["reduced"] = r.reduced;
  j["strongly_reduced"] = r.strongly_reduced;
  j["witness_edge"] = r.witness_edge ? Json(*r.witness_edge) : Json(nullptr);
  return j;
}

namespace {

const char* cert_name(Cert c) {
  switch (c) {
    case Cert::Certified: return "certified";
    case Cert::Failed: return "failed";
    case Cert::Unverified: return "unverified";
  }
  return "?";
}

}  // namespace

Json report_to_json(const RelativePresentation& p, const GeneralizedReport& r) {
  Json j;
  j["cond1_infinite_order"] = cert_name(r.cond1);
  j["cond2_normal"] = cert_name(r.cond2);
  j["cond3_strong_up"] = cert_name(r.cond3);
  j["verdict"] = r.verdict;
  if (p.t_factor && p.alphabet.backend(*p.t_factor).kind() == BackendKind::FreeAbelian) {
    j["t_product"] = element_to_json(p.alphabet.backend(*p.t_factor), r.t_product);
    j["gcd"] = r.gcd;
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json report_to_json(const RelativePresentation& p, const CaseSplitReport& r) {
  Json j;
  j["erased_relator"] = word_to_json(p.alphabet, r.wprime);
  j["proper_power"] = r.proper_power;
  if (r.proper_power) {
    j["root"] = word_to_json(p.alphabet, r.root);
    j["k"] = r.k;
  } else {
    Json rels = Json::array();
    for (const Word& w : r.t_relators) rels.push_back(word_to_json(p.alphabet, w));
    j["central_extension_relators"] = rels;
    j["abelianization_rank"] = r.abelianization_rank;
  }
  return j;
}

Json report_to_json(const RelativePresentation& p, const HypothesisReport& r) {
  Json j;
  j["unimodular"] = r.unimodular;
  Json coeffs = Json::array();
  for (const auto& c : r.coefficients)
    coeffs.push_back({{"word", word_to_json(p.alphabet, c.coefficient)},
                      {"infinite_order", c.infinite_order}});
  j["coefficients"] = coeffs;
  j["coefficients_ok"] = r.coefficients_ok;
  j["not_conjugate_into_subfamily"] = r.not_conjugate_into_subfamily;
  j["splitting"] = r.splitting;
  j["all_green"] = r.all_green();
  return j;
}

Json coset_form_to_json(const RelativePresentation& p, const CosetForm& cf) {
  const GroupBackend& tb = p.alphabet.backend(*p.t_factor);
  Json j;
  j["t"] = element_to_json(tb, cf.t);
  Json entries = Json::array();
  for (const auto& e : cf.entries)
    entries.push_back({{"g", word_to_json(p.alphabet, e.g)},
                       {"coset_rep", Json(e.coset_rep)},
                       {"k", e.k}});
  j["entries"] = entries;
  Json labels = Json::array();
  for (const auto& rep : cf.coset_labels) labels.push_back(Json(rep));
  j["coset_labels"] = labels;
  j["label_count"] = cf.coset_labels.size();
  j["source_relator"] = word_to_json(p.alphabet, cf.source_relator);
  return j;
}

}  // namespace relpres
