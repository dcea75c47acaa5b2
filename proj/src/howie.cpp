#include "relpres/howie.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace relpres {

namespace {

struct TraversalRef {
  size_t face = SIZE_MAX;
  size_t pos = SIZE_MAX;
  bool valid() const { return face != SIZE_MAX; }
};

// Indexed view of a diagram: id maps, the (edge, direction) -> traversal
// map, and per-face template alignment data.
struct DiagramIndex {
  std::map<std::string, size_t> vertex_idx, edge_idx, face_idx;
  // side[e][0] = traversal along, side[e][1] = traversal against
  std::vector<std::array<TraversalRef, 2>> sides;
  std::vector<std::string> structural_errors;

  const HowieDiagram* d = nullptr;

  const HowieDiagram::Edge& edge(const std::string& id) const {
    return d->edges[edge_idx.at(id)];
  }
  // endpoint the traversal starts at / ends at
  std::string tail_of(const HowieDiagram::BoundaryItem& it) const {
    const auto& e = edge(it.edge);
    return it.along ? e.from : e.to;
  }
  std::string head_of(const HowieDiagram::BoundaryItem& it) const {
    const auto& e = edge(it.edge);
    return it.along ? e.to : e.from;
  }
};

DiagramIndex build_index(const HowieDiagram& d) {
  DiagramIndex ix;
  ix.d = &d;
  for (size_t i = 0; i < d.vertices.size(); ++i)
    if (!ix.vertex_idx.emplace(d.vertices[i], i).second)
      ix.structural_errors.push_back("duplicate vertex id " + d.vertices[i]);
  for (size_t i = 0; i < d.edges.size(); ++i) {
    const auto& e = d.edges[i];
    if (!ix.edge_idx.emplace(e.id, i).second)
      ix.structural_errors.push_back("duplicate edge id " + e.id);
    if (!ix.vertex_idx.count(e.from) || !ix.vertex_idx.count(e.to))
      ix.structural_errors.push_back("edge " + e.id + " references unknown vertex");
    if (e.label != 't' && e.label != 'x')
      ix.structural_errors.push_back("edge " + e.id + " has label other than t/x");
  }
  ix.sides.resize(d.edges.size());
  for (size_t f = 0; f < d.faces.size(); ++f) {
    const auto& face = d.faces[f];
    if (!ix.face_idx.emplace(face.id, f).second)
      ix.structural_errors.push_back("duplicate face id " + face.id);
    if (face.boundary.empty()) {
      ix.structural_errors.push_back("face " + face.id + " has empty boundary");
      continue;
    }
    for (size_t p = 0; p < face.boundary.size(); ++p) {
      const auto& item = face.boundary[p];
      auto eit = ix.edge_idx.find(item.edge);
      if (eit == ix.edge_idx.end()) {
        ix.structural_errors.push_back("face " + face.id + " references unknown edge " + item.edge);
        continue;
      }
      TraversalRef& slot = ix.sides[eit->second][item.along ? 0 : 1];
      if (slot.valid())
        ix.structural_errors.push_back("edge " + item.edge + " traversed twice in the same direction");
      else
        slot = TraversalRef{f, p};
      try {
        d.corners.check_element(item.corner);
      } catch (const Error& err) {
        ix.structural_errors.push_back("face " + face.id + " has a bad corner: " + err.what());
      }
    }
    // closed walk
    for (size_t p = 0; p < face.boundary.size(); ++p) {
      const auto& cur = face.boundary[p];
      const auto& nxt = face.boundary[(p + 1) % face.boundary.size()];
      if (!ix.edge_idx.count(cur.edge) || !ix.edge_idx.count(nxt.edge)) continue;
      if (ix.head_of(cur) != ix.tail_of(nxt))
        ix.structural_errors.push_back("face " + face.id + " boundary is not a closed walk");
    }
  }
  for (size_t e = 0; e < d.edges.size(); ++e) {
    if (!ix.sides[e][0].valid() || !ix.sides[e][1].valid())
      ix.structural_errors.push_back("edge " + d.edges[e].id +
                                     " is not traversed once in each direction");
  }
  return ix;
}

// A corner is identified with the traversal it follows; it sits at the head
// vertex of that traversal.
struct CornerRef {
  size_t face, pos;
  bool operator<(const CornerRef& o) const { return std::tie(face, pos) < std::tie(o.face, o.pos); }
  bool operator==(const CornerRef& o) const { return face == o.face && pos == o.pos; }
};

// Clockwise successor around the head vertex: cross the next boundary edge
// of the face to the neighbouring face.
std::optional<CornerRef> clockwise_next(const DiagramIndex& ix, const CornerRef& c) {
  const auto& face = ix.d->faces[c.face];
  const auto& out = face.boundary[(c.pos + 1) % face.boundary.size()];
  auto eit = ix.edge_idx.find(out.edge);
  if (eit == ix.edge_idx.end()) return std::nullopt;
  TraversalRef rev = ix.sides[eit->second][out.along ? 1 : 0];
  if (!rev.valid()) return std::nullopt;
  return CornerRef{rev.face, rev.pos};
}

CornerClass class_of(const HowieDiagram& d, int symbol_id) {
  auto it = d.corner_classes.find(d.corners.symbol_name(symbol_id));
  if (it == d.corner_classes.end())
    throw Error(ErrorCode::TemplateMismatch,
                "corner symbol " + d.corners.symbol_name(symbol_id) + " has no declared class");
  return it->second;
}

bool corner_in_class(const HowieDiagram& d, const Element& corner, CornerClass cls,
                     bool single_symbol) {
  const SymWord& w = corner.symword();
  if (w.empty()) return false;
  if (single_symbol && w.size() != 1) return false;
  for (int32_t s : w)
    if (class_of(d, s < 0 ? -s : s) != cls) return false;
  return true;
}

struct FaceShape {
  size_t x_traversal = SIZE_MAX;  // B: the against-x traversal; C: the against-t traversal
  bool ok = false;
  std::string error;
};

FaceShape match_template(const HowieDiagram& d, const DiagramIndex& ix,
                         const HowieDiagram::Face& face) {
  FaceShape shape;
  const size_t k = face.boundary.size();
  auto label_of = [&](size_t p) { return ix.edge(face.boundary[p].edge).label; };

  switch (face.type) {
    case FaceType::B:
    case FaceType::C: {
      const char want = face.type == FaceType::B ? 'x' : 't';
      if (k != 2) { shape.error = "bigon face must have 2 boundary edges"; return shape; }
      if (label_of(0) != want || label_of(1) != want) {
        shape.error = std::string("bigon edges must be labelled ") + want;
        return shape;
      }
      if (face.boundary[0].along == face.boundary[1].along) {
        shape.error = "bigon must traverse one edge along and one against";
        return shape;
      }
      size_t ag = face.boundary[0].along ? 1 : 0;
      const Element& c_ag = face.boundary[ag].corner;      // corner after the against edge
      const Element& c_al = face.boundary[1 - ag].corner;  // corner after the along edge
      if (d.corners.is_identity(c_ag) || d.corners.is_identity(c_al)) {
        shape.error = "bigon corners must be nonidentity";
        return shape;
      }
      if (face.type == FaceType::C) {
        if (!corner_in_class(d, c_ag, CornerClass::C, false)) {
          shape.error = "commutator face corner outside the C class";
          return shape;
        }
        if (!d.corners.equal(c_al, d.corners.inverse(c_ag))) {
          shape.error = "commutator face corners are not mutually inverse";
          return shape;
        }
      } else {
        if (!corner_in_class(d, c_ag, CornerClass::B, false)) {
          shape.error = "conjugation face corner outside the B class";
          return shape;
        }
        if (!d.corners.has_phi()) {
          shape.error = "diagram has no phi map for B faces";
          return shape;
        }
        Element expect = d.corners.apply_phi(d.corners.inverse(c_ag));
        if (!d.corners.equal(c_al, expect)) {
          shape.error = "conjugation face corners are not phi-paired";
          return shape;
        }
      }
      shape.x_traversal = ag;
      shape.ok = true;
      return shape;
    }
    case FaceType::W:
    case FaceType::WInv: {
      const size_t expect_len = 2 * static_cast<size_t>(d.m) + 3;
      if (k != expect_len) {
        shape.error = "long face must have 2m+3 boundary edges";
        return shape;
      }
      size_t x_count = 0, x_pos = 0;
      for (size_t p = 0; p < k; ++p)
        if (label_of(p) == 'x') { ++x_count; x_pos = p; }
      if (x_count != 1) { shape.error = "long face must have exactly one x-edge"; return shape; }
      const bool want_along = face.type == FaceType::WInv;
      if (face.boundary[x_pos].along != want_along) {
        shape.error = "x-edge orientation does not match the face type";
        return shape;
      }
      for (size_t i = 1; i <= 2 * static_cast<size_t>(d.m) + 2; ++i) {
        const auto& item = face.boundary[(x_pos + i) % k];
        if (ix.edge(item.edge).label != 't') { shape.error = "expected a t-edge"; return shape; }
        const bool want_against = (i % 2) == 1;
        if (item.along == want_against) {
          shape.error = "t-edge orientation pattern broken";
          return shape;
        }
        // corners after t-edges: coefficient symbols, single letters
        CornerClass cls = want_against ? CornerClass::A : CornerClass::WB;
        if (!corner_in_class(d, item.corner, cls, true)) {
          shape.error = "coefficient corner outside its class";
          return shape;
        }
      }
      if (!corner_in_class(d, face.boundary[x_pos].corner, CornerClass::WB, true)) {
        shape.error = "corner after the x-edge outside the coefficient class";
        return shape;
      }
      shape.x_traversal = x_pos;
      shape.ok = true;
      return shape;
    }
  }
  shape.error = "unknown face type";
  return shape;
}

std::string format_label(const GroupBackend& corners, const Element& e) {
  return corners.element_str(e);
}

}  // namespace

Element parse_corner(const GroupBackend& corners, const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  Element acc = corners.identity();
  while (is >> tok) {
    std::string name = tok;
    long long exp = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      name = tok.substr(0, caret);
      try {
        exp = std::stoll(tok.substr(caret + 1));
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::SchemaError, "bad corner exponent in: " + text);
      }
    }
    acc = corners.multiply(acc, corners.symbol_element(name, exp));
  }
  return acc;
}

ValidationReport validate(const HowieDiagram& d) {
  ValidationReport rep;
  DiagramIndex ix = build_index(d);

  if (d.m < 1) ix.structural_errors.push_back("m must be >= 1");
  for (const std::string& err : ix.structural_errors)
    rep.issues.push_back({ErrorCode::NotSpherical, err});
  if (!ix.structural_errors.empty()) return rep;

  if (!ix.vertex_idx.count(d.exterior)) {
    rep.issues.push_back({ErrorCode::NoExteriorVertex, "exterior vertex not declared"});
    return rep;
  }

  // connectivity over vertices
  {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& e : d.edges) {
      adj[e.from].push_back(e.to);
      adj[e.to].push_back(e.from);
    }
    std::set<std::string> seen;
    std::vector<std::string> stack = {d.vertices[0]};
    while (!stack.empty()) {
      std::string v = stack.back();
      stack.pop_back();
      if (!seen.insert(v).second) continue;
      for (const auto& w : adj[v]) stack.push_back(w);
    }
    if (seen.size() != d.vertices.size())
      rep.issues.push_back({ErrorCode::NotSpherical, "diagram is not connected"});
  }

  long long chi = static_cast<long long>(d.vertices.size()) -
                  static_cast<long long>(d.edges.size()) +
                  static_cast<long long>(d.faces.size());
  if (chi != 2)
    rep.issues.push_back({ErrorCode::NotSpherical,
                          "Euler characteristic V-E+F = " + std::to_string(chi)});

  // single rotation orbit at every vertex
  std::map<std::string, std::vector<CornerRef>> corners_at;
  for (size_t f = 0; f < d.faces.size(); ++f)
    for (size_t p = 0; p < d.faces[f].boundary.size(); ++p)
      corners_at[ix.head_of(d.faces[f].boundary[p])].push_back({f, p});

  std::map<std::string, std::vector<CornerRef>> orbit_at;
  bool orbits_ok = true;
  for (const std::string& v : d.vertices) {
    auto& cs = corners_at[v];
    if (cs.empty()) {
      rep.issues.push_back({ErrorCode::NotSpherical, "isolated vertex " + v});
      orbits_ok = false;
      continue;
    }
    std::sort(cs.begin(), cs.end());
    std::vector<CornerRef> orbit;
    CornerRef cur = cs[0];
    for (size_t step = 0; step < cs.size(); ++step) {
      orbit.push_back(cur);
      auto nxt = clockwise_next(ix, cur);
      if (!nxt) { orbits_ok = false; break; }
      cur = *nxt;
      if (cur == cs[0]) break;
    }
    if (!(cur == cs[0]) || orbit.size() != cs.size()) {
      rep.issues.push_back({ErrorCode::NotSpherical, "vertex link at " + v + " is not a single cycle"});
      orbits_ok = false;
      continue;
    }
    orbit_at[v] = std::move(orbit);
  }

  rep.spherical = chi == 2 && orbits_ok &&
                  std::none_of(rep.issues.begin(), rep.issues.end(), [](const DiagramIssue& i) {
                    return i.code == ErrorCode::NotSpherical;
                  });

  // face templates
  rep.face_templates_ok = true;
  for (const auto& face : d.faces) {
    try {
      FaceShape s = match_template(d, ix, face);
      if (!s.ok) {
        rep.face_templates_ok = false;
        rep.issues.push_back({ErrorCode::TemplateMismatch, face.id + ": " + s.error});
      }
    } catch (const Error& e) {
      rep.face_templates_ok = false;
      rep.issues.push_back({ErrorCode::TemplateMismatch, face.id + ": " + e.what()});
    }
  }

  // interior vertex labels
  rep.interior_labels_trivial = true;
  if (rep.spherical) {
    for (const std::string& v : d.vertices) {
      Element prod = d.corners.identity();
      for (const CornerRef& c : orbit_at[v])
        prod = d.corners.multiply(prod, d.faces[c.face].boundary[c.pos].corner);
      if (v == d.exterior) {
        rep.exterior_label = format_label(d.corners, prod);
      } else if (!d.corners.is_identity(prod)) {
        rep.interior_labels_trivial = false;
        rep.issues.push_back({ErrorCode::NontrivialInteriorLabel,
                              "vertex " + v + " has label " + format_label(d.corners, prod)});
      }
    }
  }
  return rep;
}

DiagramLabels labels(const HowieDiagram& d) {
  DiagramIndex ix = build_index(d);
  if (!ix.structural_errors.empty())
    throw Error(ErrorCode::NotSpherical, ix.structural_errors.front());
  DiagramLabels out;

  std::map<std::string, std::vector<CornerRef>> corners_at;
  for (size_t f = 0; f < d.faces.size(); ++f)
    for (size_t p = 0; p < d.faces[f].boundary.size(); ++p)
      corners_at[ix.head_of(d.faces[f].boundary[p])].push_back({f, p});
  for (const std::string& v : d.vertices) {
    auto cs = corners_at[v];
    if (cs.empty()) continue;
    std::sort(cs.begin(), cs.end());
    Element prod = d.corners.identity();
    CornerRef cur = cs[0];
    for (size_t step = 0; step < cs.size(); ++step) {
      prod = d.corners.multiply(prod, d.faces[cur.face].boundary[cur.pos].corner);
      auto nxt = clockwise_next(ix, cur);
      if (!nxt) break;
      cur = *nxt;
      if (cur == cs[0]) break;
    }
    out.vertex_labels[v] = format_label(d.corners, prod);
  }

  for (const auto& face : d.faces) {
    std::ostringstream os;
    bool first = true;
    for (const auto& item : face.boundary) {
      if (!first) os << " ";
      first = false;
      os << ix.edge(item.edge).label;
      if (!item.along) os << "^-1";
      if (!d.corners.is_identity(item.corner))
        os << " " << format_label(d.corners, item.corner);
    }
    out.face_labels[face.id] = os.str();
  }
  return out;
}

namespace {

// Boundary-as-word items for the reducibility test: edge letters carry
// their orientation, corners their formal value.
struct LabelItem {
  bool is_edge = false;
  char letter = 't';
  bool positive = true;
  Element corner;
};

std::vector<LabelItem> label_items_from(const DiagramIndex& ix, const HowieDiagram::Face& face,
                                        size_t start) {
  std::vector<LabelItem> out;
  const size_t k = face.boundary.size();
  for (size_t i = 0; i < k; ++i) {
    const auto& item = face.boundary[(start + i) % k];
    LabelItem e;
    e.is_edge = true;
    e.letter = ix.edge(item.edge).label;
    e.positive = item.along;
    out.push_back(e);
    LabelItem c;
    c.corner = item.corner;
    out.push_back(c);
  }
  return out;
}

bool items_mutually_inverse(const GroupBackend& corners, const std::vector<LabelItem>& u,
                            const std::vector<LabelItem>& v) {
  if (u.size() != v.size()) return false;
  const size_t n = u.size();
  for (size_t p = 0; p < n; ++p) {
    const LabelItem& a = v[p];
    const LabelItem& b = u[(n - p) % n];
    if (a.is_edge != b.is_edge) return false;
    if (a.is_edge) {
      if (a.letter != b.letter || a.positive == b.positive) return false;
    } else {
      if (!corners.equal(a.corner, corners.inverse(b.corner))) return false;
    }
  }
  return true;
}

}  // namespace

ReducednessReport reducedness_report(const HowieDiagram& d) {
  DiagramIndex ix = build_index(d);
  if (!ix.structural_errors.empty())
    throw Error(ErrorCode::NotSpherical, ix.structural_errors.front());
  ReducednessReport rep;
  rep.reduced = true;
  rep.strongly_reduced = true;
  for (size_t e = 0; e < d.edges.size(); ++e) {
    const TraversalRef& al = ix.sides[e][0];
    const TraversalRef& ag = ix.sides[e][1];
    if (al.face == ag.face) continue;
    const auto& f = d.faces[al.face];
    const auto& g = d.faces[ag.face];
    auto u = label_items_from(ix, f, al.pos);
    auto v = label_items_from(ix, g, ag.pos);
    if (items_mutually_inverse(d.corners, u, v)) {
      if (rep.reduced) {
        rep.reduced = false;
        rep.strongly_reduced = false;
        if (!rep.witness_edge) rep.witness_edge = d.edges[e].id;
      }
    }
    const bool same_bigon_type = f.type == g.type && (f.type == FaceType::B || f.type == FaceType::C);
    if (same_bigon_type && rep.strongly_reduced) {
      rep.strongly_reduced = false;
      if (!rep.witness_edge) rep.witness_edge = d.edges[e].id;
    }
  }
  return rep;
}

HowieDiagram reduce_step(const HowieDiagram& d, const std::string& edge_id) {
  DiagramIndex ix = build_index(d);
  if (!ix.structural_errors.empty())
    throw Error(ErrorCode::NotSpherical, ix.structural_errors.front());
  auto eit = ix.edge_idx.find(edge_id);
  if (eit == ix.edge_idx.end())
    throw Error(ErrorCode::NotMergeable, "unknown edge " + edge_id);
  TraversalRef al = ix.sides[eit->second][0];
  TraversalRef ag = ix.sides[eit->second][1];
  if (al.face == ag.face)
    throw Error(ErrorCode::NotMergeable, "edge borders a single face");
  const auto& f = d.faces[al.face];
  const auto& g = d.faces[ag.face];
  if (f.type != g.type || (f.type != FaceType::B && f.type != FaceType::C))
    throw Error(ErrorCode::NotMergeable, "faces at the edge are not a same-type bigon pair");

  const size_t kf = f.boundary.size(), kg = g.boundary.size();
  const Element a_f = f.boundary[(al.pos + kf - 1) % kf].corner;
  const Element b_f = f.boundary[al.pos].corner;
  const Element a_g = g.boundary[(ag.pos + kg - 1) % kg].corner;
  const Element b_g = g.boundary[ag.pos].corner;
  Element at_tail = d.corners.multiply(a_f, b_g);  // merged corner at the traversal tail
  Element at_head = d.corners.multiply(a_g, b_f);  // merged corner at the traversal head
  if (d.corners.is_identity(at_tail) || d.corners.is_identity(at_head))
    throw Error(ErrorCode::NotMergeable, "pair is reducible; erasing would create identity corners");

  HowieDiagram out = d;
  // splice: f's items after the edge ... before it, then g's likewise
  HowieDiagram::Face merged;
  merged.id = f.id + "+" + g.id;
  merged.type = f.type;
  for (size_t i = 1; i < kf; ++i) merged.boundary.push_back(f.boundary[(al.pos + i) % kf]);
  for (size_t i = 1; i < kg; ++i) merged.boundary.push_back(g.boundary[(ag.pos + i) % kg]);
  merged.boundary[kf - 2].corner = at_tail;           // replaces a_f
  merged.boundary[kf - 1 + kg - 2].corner = at_head;  // replaces a_g

  std::vector<HowieDiagram::Face> faces;
  for (size_t i = 0; i < d.faces.size(); ++i)
    if (i != al.face && i != ag.face) faces.push_back(d.faces[i]);
  faces.push_back(std::move(merged));
  out.faces = std::move(faces);
  out.edges.erase(out.edges.begin() + static_cast<long>(eit->second));
  return out;
}

namespace {

struct ShapeInfo {
  FaceShape shape;
  size_t face_index;
};

FaceShape checked_shape(const HowieDiagram& d, const DiagramIndex& ix,
                        const HowieDiagram::Face& face) {
  FaceShape s = match_template(d, ix, face);
  if (!s.ok) throw Error(ErrorCode::TemplateMismatch, face.id + ": " + s.error);
  return s;
}

}  // namespace

FaceSchedule schedule_of(const HowieDiagram& d, const std::string& face_id) {
  DiagramIndex ix = build_index(d);
  if (!ix.structural_errors.empty())
    throw Error(ErrorCode::NotSpherical, ix.structural_errors.front());
  auto fit = ix.face_idx.find(face_id);
  if (fit == ix.face_idx.end()) throw Error(ErrorCode::TemplateMismatch, "unknown face " + face_id);
  const auto& face = d.faces[fit->second];
  FaceShape shape = checked_shape(d, ix, face);

  const long long m = d.m;
  const size_t k = face.boundary.size();
  FaceSchedule sched;
  sched.face = face_id;
  sched.boundary_len = k;
  sched.period = Rat(4 * m);
  sched.minimal_period = face.type == FaceType::C ? Rat(2) : Rat(4 * m);

  // traversal sequence starting at the anchor corner, with speeds
  std::vector<std::pair<size_t, Rat>> legs;  // (traversal index, speed)
  switch (face.type) {
    case FaceType::B: {
      // anchored at the corner after the against-x traversal, speed 1/(2m)
      size_t start = (shape.x_traversal + 1) % k;
      legs = {{start, Rat(1, 2 * m)}, {(start + 1) % k, Rat(1, 2 * m)}};
      break;
    }
    case FaceType::C: {
      // anchored at the corner after the against-t traversal, unit speed,
      // unrolled to the full 4m period
      size_t start = (shape.x_traversal + 1) % k;
      for (long long rep = 0; rep < 2 * m; ++rep) {
        legs.push_back({start, Rat(1)});
        legs.push_back({(start + 1) % k, Rat(1)});
      }
      break;
    }
    case FaceType::W: {
      // at the a0 corner at time zero; 2m unit t-edges to a_m, then t at
      // speed 2, x at speed 1/(2m-1), t at speed 2
      size_t p = (shape.x_traversal + 2) % k;
      for (long long i = 0; i < 2 * m; ++i) legs.push_back({(p + i) % k, Rat(1)});
      legs.push_back({(p + 2 * m) % k, Rat(2)});
      legs.push_back({shape.x_traversal, Rat(1, 2 * m - 1)});
      legs.push_back({(shape.x_traversal + 1) % k, Rat(2)});
      break;
    }
    case FaceType::WInv: {
      // at the a0^-1 corner at time zero; t at speed 2, x at speed
      // 1/(2m-1), t at speed 2 reaching a_m^-1 at 2m, then 2m unit t-edges
      size_t p = (shape.x_traversal + 2 * static_cast<size_t>(m) + 2) % k;
      legs.push_back({p, Rat(2)});
      legs.push_back({shape.x_traversal, Rat(1, 2 * m - 1)});
      legs.push_back({(shape.x_traversal + 1) % k, Rat(2)});
      for (long long i = 0; i < 2 * m; ++i)
        legs.push_back({(shape.x_traversal + 2 + i) % k, Rat(1)});
      break;
    }
  }

  Rat t = Rat(0);
  for (const auto& [traversal, speed] : legs) {
    ScheduleSegment seg;
    seg.t0 = t;
    seg.speed = speed;
    seg.traversal = traversal;
    t = t + Rat(1) / speed;
    seg.t1 = t;
    sched.segments.push_back(seg);
  }
  if (t != sched.period)
    throw Error(ErrorCode::TemplateMismatch, "schedule does not close up over one period");
  return sched;
}

std::vector<FaceSchedule> schedules_of(const HowieDiagram& d) {
  std::vector<FaceSchedule> out;
  out.reserve(d.faces.size());
  for (const auto& f : d.faces) out.push_back(schedule_of(d, f.id));
  return out;
}

std::vector<Rat> FaceSchedule::times_at_position(size_t corner_pos) const {
  std::vector<Rat> out;
  for (const ScheduleSegment& seg : segments)
    if (seg.traversal == corner_pos) out.push_back(seg.t0);
  std::sort(out.begin(), out.end());
  return out;
}

Rat FaceSchedule::position_at(const Rat& tau) const {
  Rat t = tau.mod(period);
  for (const ScheduleSegment& seg : segments) {
    if (!(t < seg.t1)) continue;
    if (t < seg.t0) break;
    Rat frac = (t - seg.t0) * seg.speed;
    Rat pos = Rat(static_cast<long long>(seg.traversal)) + frac;
    return pos.mod(Rat(static_cast<long long>(boundary_len)));
  }
  // tau == period boundary
  return Rat(static_cast<long long>(segments.front().traversal));
}

CollisionReport simulate(const HowieDiagram& d) {
  ValidationReport v = validate(d);
  if (!v.valid()) {
    ErrorCode code = v.issues.empty() ? ErrorCode::NotSpherical : v.issues.front().code;
    throw Error(code, "diagram fails validation; not simulating");
  }
  return simulate(d, schedules_of(d));
}

CollisionReport simulate(const HowieDiagram& d, const std::vector<FaceSchedule>& schedules) {
  DiagramIndex ix = build_index(d);
  if (!ix.structural_errors.empty())
    throw Error(ErrorCode::NotSpherical, ix.structural_errors.front());

  std::map<std::string, const FaceSchedule*> by_face;
  for (const auto& s : schedules) by_face[s.face] = &s;
  for (const auto& f : d.faces)
    if (!by_face.count(f.id))
      throw Error(ErrorCode::TemplateMismatch, "missing schedule for face " + f.id);

  CollisionReport rep;

  // --- edge meetings ---
  // car position along the edge from its tail: along gives s = frac,
  // against gives s = 1 - frac; meetings solve a linear equation exactly.
  for (size_t e = 0; e < d.edges.size(); ++e) {
    const TraversalRef al = ix.sides[e][0];
    const TraversalRef ag = ix.sides[e][1];
    if (al.face == ag.face) continue;  // one car cannot meet itself
    const auto& fa = d.faces[al.face];
    const auto& fg = d.faces[ag.face];
    const FaceSchedule& sa = *by_face.at(fa.id);
    const FaceSchedule& sg = *by_face.at(fg.id);
    for (const auto& seg_a : sa.segments) {
      if (seg_a.traversal != al.pos) continue;
      for (const auto& seg_g : sg.segments) {
        if (seg_g.traversal != ag.pos) continue;
        Rat lo = std::max(seg_a.t0, seg_g.t0);
        Rat hi = std::min(seg_a.t1, seg_g.t1);
        if (!(lo < hi)) continue;
        // s_a(t) = (t - a0) * va ; s_g(t) = 1 - (t - g0) * vg
        // meet: t = (1 + a0*va + g0*vg) / (va + vg)
        Rat va = seg_a.speed, vg = seg_g.speed;
        Rat tstar = (Rat(1) + seg_a.t0 * va + seg_g.t0 * vg) / (va + vg);
        if (!(lo <= tstar) || !(tstar <= hi)) continue;
        Rat s = (tstar - seg_a.t0) * va;
        if (!(Rat(0) < s) || !(s < Rat(1))) continue;  // endpoint meetings belong to vertices
        CollisionEvent ev;
        ev.time = tstar.mod(sa.period);
        ev.at_vertex = false;
        ev.location = d.edges[e].id;
        ev.edge_offset = s;
        ev.faces = {fa.id, fg.id};
        std::sort(ev.faces.begin(), ev.faces.end());
        ev.complete = true;  // edge multiplicity is 2 and both cars are present
        rep.events.push_back(std::move(ev));
      }
    }
  }

  // --- vertex events ---
  std::map<std::string, std::vector<CornerRef>> corners_at;
  for (size_t f = 0; f < d.faces.size(); ++f)
    for (size_t p = 0; p < d.faces[f].boundary.size(); ++p)
      corners_at[ix.head_of(d.faces[f].boundary[p])].push_back({f, p});

  for (const std::string& vtx : d.vertices) {
    const auto& cs = corners_at[vtx];
    const size_t degree = cs.size();
    // arrival times per face (a face may touch the vertex at several corners)
    std::map<std::string, std::set<Rat, std::less<Rat>>> arrivals;
    for (const CornerRef& c : cs) {
      const auto& face = d.faces[c.face];
      const FaceSchedule& s = *by_face.at(face.id);
      // the corner after traversal p sits at position (p+1) mod k
      size_t pos = (c.pos + 1) % face.boundary.size();
      for (const Rat& t : s.times_at_position(pos)) arrivals[face.id].insert(t);
    }
    std::set<Rat> candidates;
    for (const auto& [fid, times] : arrivals) candidates.insert(times.begin(), times.end());
    for (const Rat& t : candidates) {
      std::vector<std::string> present;
      for (const auto& [fid, times] : arrivals)
        if (times.count(t)) present.push_back(fid);
      if (present.size() < 2) continue;
      CollisionEvent ev;
      ev.time = t;
      ev.at_vertex = true;
      ev.location = vtx;
      ev.faces = present;
      ev.complete = present.size() == degree;
      rep.events.push_back(std::move(ev));
    }
  }

  std::sort(rep.events.begin(), rep.events.end(), [](const CollisionEvent& a, const CollisionEvent& b) {
    if (a.time != b.time) return a.time < b.time;
    if (a.at_vertex != b.at_vertex) return a.at_vertex < b.at_vertex;
    if (a.location != b.location) return a.location < b.location;
    return a.edge_offset < b.edge_offset;
  });
  std::set<std::string> complete_locs;
  for (const auto& ev : rep.events)
    if (ev.complete) complete_locs.insert(ev.location);
  rep.complete_points.assign(complete_locs.begin(), complete_locs.end());
  return rep;
}

ParityReport check_parity_invariant(const HowieDiagram& d) {
  return check_parity_invariant(d, schedules_of(d));
}

ParityReport check_parity_invariant(const HowieDiagram& d,
                                    const std::vector<FaceSchedule>& schedules) {
  DiagramIndex ix = build_index(d);
  if (!ix.structural_errors.empty())
    throw Error(ErrorCode::NotSpherical, ix.structural_errors.front());
  ParityReport rep;
  const Rat two_m = Rat(2 * d.m);
  const Rat four_m = Rat(4 * d.m);
  for (const FaceSchedule& s : schedules) {
    auto fit = ix.face_idx.find(s.face);
    if (fit == ix.face_idx.end())
      throw Error(ErrorCode::TemplateMismatch, "schedule for unknown face " + s.face);
    const auto& face = d.faces[fit->second];
    for (size_t i = 0; i < s.segments.size(); ++i) {
      const ScheduleSegment& seg = s.segments[i];
      const auto& item = face.boundary[seg.traversal % face.boundary.size()];
      const char label = ix.edge(item.edge).label;
      if (label == 't') {
        long long k0 = seg.t0.floor();
        bool within = Rat(k0) <= seg.t0 && seg.t1 <= Rat(k0 + 1);
        bool even = (k0 % 2 + 2) % 2 == 0;
        bool ok = within && (item.along == even);
        if (!ok) {
          rep.t_edges_ok = false;
          rep.violations.push_back(
              {s.face, i, seg.t0, seg.t1,
               within ? "t-edge direction disagrees with the parity of floor(tau)"
                      : "t-edge occupancy crosses an integer time"});
        }
      } else {
        bool in_first = Rat(0) <= seg.t0 && seg.t1 <= two_m;
        bool in_second = two_m <= seg.t0 && seg.t1 <= four_m;
        bool ok = (in_first && item.along) || (in_second && !item.along);
        if (!ok) {
          rep.x_edges_ok = false;
          rep.violations.push_back(
              {s.face, i, seg.t0, seg.t1,
               (in_first || in_second) ? "x-edge direction disagrees with the half-period"
                                       : "x-edge occupancy crosses the half-period boundary"});
        }
      }
    }
  }
  return rep;
}

}  // namespace relpres
