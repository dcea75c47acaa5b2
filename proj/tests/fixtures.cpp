#include "fixtures.hpp"

namespace relpres::fixtures {

namespace {

using Edge = HowieDiagram::Edge;
using Face = HowieDiagram::Face;
using Item = HowieDiagram::BoundaryItem;

Item item(const HowieDiagram& d, const std::string& edge, bool along, const std::string& corner) {
  return Item{edge, along, parse_corner(d.corners, corner)};
}

std::string inv(const std::string& sym) { return sym + "^-1"; }

}  // namespace

HowieDiagram c_balloon(int m) {
  HowieDiagram d;
  d.m = m;
  d.vertices = {"v0", "v1"};
  d.exterior = "v0";
  d.corners = GroupBackend::formal({"c"});
  d.corner_classes = {{"c", CornerClass::C}};
  d.edges = {{"e1", "v0", "v1", 't'}, {"e2", "v0", "v1", 't'}};
  Face f1{"f1", FaceType::C, {item(d, "e1", true, "c"), item(d, "e2", false, "c^-1")}};
  Face f2{"f2", FaceType::C, {item(d, "e2", true, "c^-1"), item(d, "e1", false, "c")}};
  d.faces = {f1, f2};
  return d;
}

HowieDiagram c_beachball(int lunes, int m) {
  if (lunes < 2 || lunes % 2 != 0) throw std::invalid_argument("lunes must be even and >= 2");
  HowieDiagram d;
  d.m = m;
  d.vertices = {"N", "S"};
  d.exterior = "N";
  std::vector<std::string> alpha;
  for (int i = 0; i < lunes / 2; ++i) alpha.push_back("c" + std::to_string(i));
  d.corners = GroupBackend::formal(alpha);
  for (const auto& s : alpha) d.corner_classes[s] = CornerClass::C;
  for (int i = 1; i <= lunes; ++i)
    d.edges.push_back({"e" + std::to_string(i), "N", "S", 't'});
  // lune i sits between edge i (west, walked up = against) and edge i+1
  // (east, walked down = along); corner values cancel in adjacent pairs
  for (int i = 1; i <= lunes; ++i) {
    std::string base = "c" + std::to_string((i - 1) / 2);
    std::string after_against = i % 2 == 1 ? inv(base) : base;
    std::string after_along = i % 2 == 1 ? base : inv(base);
    std::string east = "e" + std::to_string(i % lunes + 1);
    std::string west = "e" + std::to_string(i);
    Face f{"f" + std::to_string(i), FaceType::C,
           {item(d, west, false, after_against), item(d, east, true, after_along)}};
    d.faces.push_back(std::move(f));
  }
  return d;
}

HowieDiagram c_flower3(int m) {
  HowieDiagram d;
  d.m = m;
  d.vertices = {"N", "S"};
  d.exterior = "N";
  d.corners = GroupBackend::formal({"c", "d"});
  d.corner_classes = {{"c", CornerClass::C}, {"d", CornerClass::C}};
  d.edges = {{"e1", "N", "S", 't'}, {"e2", "N", "S", 't'}, {"e3", "N", "S", 't'}};
  // values c, d, (c^-1 d^-1); poles telescope
  Face f1{"f1", FaceType::C, {item(d, "e1", false, "c^-1"), item(d, "e2", true, "c")}};
  Face f2{"f2", FaceType::C, {item(d, "e2", false, "d^-1"), item(d, "e3", true, "d")}};
  Face f3{"f3", FaceType::C,
          {item(d, "e3", false, "d c"), item(d, "e1", true, "c^-1 d^-1")}};
  d.faces = {f1, f2, f3};
  return d;
}

namespace {

// Corner value of the long face after its i-th t-traversal (1-based):
// odd i -> a_{(i-1)/2}, even i -> b_{i/2}.
std::string w_corner(int i) {
  if (i % 2 == 1) return "a" + std::to_string((i - 1) / 2);
  return "b" + std::to_string(i / 2);
}

}  // namespace

HowieDiagram mirror_sphere(int m, bool tweak_corner) {
  HowieDiagram d;
  d.m = m;
  const int n = 2 * m + 3;  // boundary length
  for (int i = 0; i < n; ++i) d.vertices.push_back("v" + std::to_string(i));
  d.exterior = "v0";

  std::vector<std::string> alpha;
  for (int i = 0; i <= m; ++i) alpha.push_back("a" + std::to_string(i));
  for (int i = 0; i <= m + 1; ++i) alpha.push_back("b" + std::to_string(i));
  if (tweak_corner) alpha.push_back("p");
  d.corners = GroupBackend::formal(alpha);
  for (int i = 0; i <= m; ++i) d.corner_classes["a" + std::to_string(i)] = CornerClass::A;
  for (int i = 0; i <= m + 1; ++i) d.corner_classes["b" + std::to_string(i)] = CornerClass::WB;
  if (tweak_corner) d.corner_classes["p"] = CornerClass::WB;

  auto v = [&](int i) { return "v" + std::to_string(((i % n) + n) % n); };
  // the long face walks v0 -> v1 (x-edge, against) then v1 -> ... -> v0 on
  // t-edges, odd traversals against, even along
  d.edges.push_back({"ex", v(1), v(0), 'x'});
  for (int i = 1; i <= 2 * m + 2; ++i) {
    bool against = i % 2 == 1;
    std::string id = "e" + std::to_string(i);
    if (against)
      d.edges.push_back({id, v(i + 1), v(i), 't'});
    else
      d.edges.push_back({id, v(i), v(i + 1), 't'});
  }

  Face w{"w", FaceType::W, {}};
  w.boundary.push_back(item(d, "ex", false, "b0"));
  for (int i = 1; i <= 2 * m + 2; ++i) {
    bool against = i % 2 == 1;
    std::string corner = i == 2 * m + 2 ? "b" + std::to_string(m + 1) : w_corner(i);
    w.boundary.push_back(item(d, "e" + std::to_string(i), !against, corner));
  }

  Face wi{"wi", FaceType::WInv, {}};
  std::string at_v0 = tweak_corner ? "p" : inv("b" + std::to_string(m + 1));
  wi.boundary.push_back(item(d, "ex", true, at_v0));
  for (int j = 1; j <= 2 * m + 2; ++j) {
    int i = 2 * m + 3 - j;  // edge index, walked opposite to the W face
    bool w_against = i % 2 == 1;
    // head of this traversal is v_i; the corner there inverts the W corner
    std::string corner = i == 1 ? inv("b0") : inv(w_corner(i - 1));
    wi.boundary.push_back(item(d, "e" + std::to_string(i), w_against, corner));
  }
  d.faces = {w, wi};
  return d;
}

namespace {

// Shared geometry of the lune spheres: the W pair on the u-path, the
// inverse pair on the w-path, and B lunes between the x-meridians.
struct LuneBuilder {
  HowieDiagram d;
  int m;

  explicit LuneBuilder(int m_, std::vector<std::string> b_symbols,
                       std::map<std::string, std::string> phi)
      : m(m_) {
    d.m = m;
    d.vertices = {"N", "S"};
    for (int i = 1; i <= 2 * m + 1; ++i) d.vertices.push_back("u" + std::to_string(i));
    for (int i = 1; i <= 2 * m + 1; ++i) d.vertices.push_back("w" + std::to_string(i));
    d.exterior = "N";

    std::vector<std::string> alpha;
    for (int i = 0; i <= m; ++i) {
      alpha.push_back("A" + std::to_string(i));
      alpha.push_back("Q" + std::to_string(i));
    }
    for (int i = 0; i <= m + 1; ++i) {
      alpha.push_back("B" + std::to_string(i));
      alpha.push_back("P" + std::to_string(i));
    }
    for (const auto& s : b_symbols) alpha.push_back(s);
    d.corners = GroupBackend::formal(alpha, phi);
    for (int i = 0; i <= m; ++i) {
      d.corner_classes["A" + std::to_string(i)] = CornerClass::A;
      d.corner_classes["Q" + std::to_string(i)] = CornerClass::A;
    }
    for (int i = 0; i <= m + 1; ++i) {
      d.corner_classes["B" + std::to_string(i)] = CornerClass::WB;
      d.corner_classes["P" + std::to_string(i)] = CornerClass::WB;
    }
    for (const auto& s : b_symbols) d.corner_classes[s] = CornerClass::B;

    // x-meridians
    d.edges.push_back({"e1", "N", "S", 'x'});
    d.edges.push_back({"e2", "S", "N", 'x'});
    d.edges.push_back({"e3", "N", "S", 'x'});
    d.edges.push_back({"e4", "S", "N", 'x'});
    // t-paths: g (N..S via u) and h (S..N via w); odd-index edges point
    // towards the pole end of the walk so the long faces alternate
    // against/along as their templates require
    for (int i = 1; i <= 2 * m + 2; ++i) {
      std::string gu = upath(i - 1), gv = upath(i);
      if (i % 2 == 1)
        d.edges.push_back({"g" + std::to_string(i), gv, gu, 't'});
      else
        d.edges.push_back({"g" + std::to_string(i), gu, gv, 't'});
      std::string hu = wpath(i - 1), hv = wpath(i);
      if (i % 2 == 1)
        d.edges.push_back({"h" + std::to_string(i), hv, hu, 't'});
      else
        d.edges.push_back({"h" + std::to_string(i), hu, hv, 't'});
    }

    build_w_pair();
    build_winv_pair();
  }

  // walk stations: u-path runs N, u1, ..., u_{2m+1}, S
  std::string upath(int i) const {
    if (i == 0) return "N";
    if (i == 2 * m + 2) return "S";
    return "u" + std::to_string(i);
  }
  // w-path runs S, w1, ..., w_{2m+1}, N
  std::string wpath(int i) const {
    if (i == 0) return "S";
    if (i == 2 * m + 2) return "N";
    return "w" + std::to_string(i);
  }

  void build_w_pair() {
    Face w1{"w1", FaceType::W, {}};
    w1.boundary.push_back(item(d, "e1", false, "B0"));  // S -> N
    for (int i = 1; i <= 2 * m + 2; ++i) {
      bool against = i % 2 == 1;
      std::string corner =
          i == 2 * m + 2 ? "B" + std::to_string(m + 1) : cap_corner(i);
      w1.boundary.push_back(item(d, "g" + std::to_string(i), !against, corner));
    }
    // w2 walks the u-path upward and uses e2 as its meridian
    Face w2{"w2", FaceType::W, {}};
    w2.boundary.push_back(item(d, "e2", false, inv("B" + std::to_string(m + 1))));  // N -> S
    for (int j = 1; j <= 2 * m + 2; ++j) {
      int i = 2 * m + 3 - j;
      bool w1_against = i % 2 == 1;
      std::string corner = i == 1 ? inv("B0") : inv(cap_corner(i - 1));
      w2.boundary.push_back(item(d, "g" + std::to_string(i), w1_against, corner));
    }
    d.faces.push_back(std::move(w1));
    d.faces.push_back(std::move(w2));
  }

  void build_winv_pair() {
    Face wi1{"wi1", FaceType::WInv, {}};
    wi1.boundary.push_back(item(d, "e3", true, inv("P" + std::to_string(m + 1))));  // N -> S
    for (int i = 1; i <= 2 * m + 2; ++i) {
      bool against = i % 2 == 1;
      std::string corner = i == 2 * m + 2 ? inv("P0") : inv(pq_corner(i));
      wi1.boundary.push_back(item(d, "h" + std::to_string(i), !against, corner));
    }
    Face wi2{"wi2", FaceType::WInv, {}};
    wi2.boundary.push_back(item(d, "e4", true, "P0"));  // S -> N
    for (int j = 1; j <= 2 * m + 2; ++j) {
      int i = 2 * m + 3 - j;
      bool wi1_against = i % 2 == 1;
      std::string corner = i == 1 ? "P" + std::to_string(m + 1) : pq_corner(i - 1);
      wi2.boundary.push_back(item(d, "h" + std::to_string(i), wi1_against, corner));
    }
    d.faces.push_back(std::move(wi1));
    d.faces.push_back(std::move(wi2));
  }

  // coefficient corner after the i-th t-traversal of w1: odd -> A, even -> B
  std::string cap_corner(int i) const {
    if (i % 2 == 1) return "A" + std::to_string((i - 1) / 2);
    return "B" + std::to_string(i / 2);
  }
  // same for the inverse pair: odd -> Q_{m-(i-1)/2}, even -> P_{m+1-i/2}
  std::string pq_corner(int i) const {
    if (i % 2 == 1) return "Q" + std::to_string(m - (i - 1) / 2);
    return "P" + std::to_string(m + 1 - i / 2);
  }
};

}  // namespace

HowieDiagram lune_sphere(int m) {
  LuneBuilder lb(m, {"b", "bp"}, {{"b", "bp"}, {"bp", "b"}});
  HowieDiagram& d = lb.d;
  // B2 between e2 and e4, B1 between e3 and e1
  Face b2{"b2", FaceType::B,
          {item(d, "e4", false, "b^-1"), item(d, "e2", true, "bp")}};
  Face b1{"b1", FaceType::B,
          {item(d, "e3", false, "bp^-1"), item(d, "e1", true, "b")}};
  d.faces.push_back(std::move(b2));
  d.faces.push_back(std::move(b1));
  return d;
}

HowieDiagram lune_sphere_split_b(int m) {
  LuneBuilder lb(m, {"b", "bp", "b1", "b2"},
                 {{"b", "bp"}, {"bp", "b"}, {"b1", "b1"}, {"b2", "b2"}});
  HowieDiagram& d = lb.d;
  d.edges.push_back({"e5", "S", "N", 'x'});
  Face b2a{"b2a", FaceType::B,
           {item(d, "e5", false, "b1^-1"), item(d, "e2", true, "b1")}};
  Face b2b{"b2b", FaceType::B,
           {item(d, "e4", false, "b2^-1"), item(d, "e5", true, "b2")}};
  Face b1{"b1", FaceType::B,
          {item(d, "e3", false, "b2^-1 b1^-1"), item(d, "e1", true, "b1 b2")}};
  d.faces.push_back(std::move(b2a));
  d.faces.push_back(std::move(b2b));
  d.faces.push_back(std::move(b1));
  return d;
}

HowieDiagram corrupted_balloon() {
  HowieDiagram d = c_balloon();
  d.corners = GroupBackend::formal({"c", "c2"});
  d.corner_classes = {{"c", CornerClass::C}, {"c2", CornerClass::C}};
  // second face keeps a consistent template but stops cancelling the first
  d.faces[1].boundary[0].corner = parse_corner(d.corners, "c2^-1");
  d.faces[1].boundary[1].corner = parse_corner(d.corners, "c2");
  return d;
}

HowieDiagram single_face_diagram() {
  HowieDiagram d = c_balloon();
  d.faces.pop_back();
  return d;
}

HowieDiagram balloon_with_isolated_vertex() {
  HowieDiagram d = c_balloon();
  d.vertices.push_back("v2");
  return d;
}

}  // namespace relpres::fixtures
