#include "relpres/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace relpres {

namespace {

constexpr int kMaxTableSize = 256;

// Extended gcd: returns g = gcd(a,b) >= 0 and (s,u) with s*a + u*b = g.
long long ext_gcd(long long a, long long b, long long& s, long long& u) {
  if (b == 0) {
    s = (a < 0) ? -1 : 1;
    u = 0;
    return a < 0 ? -a : a;
  }
  long long s1, u1;
  long long g = ext_gcd(b, a % b, s1, u1);
  s = u1;
  u = s1 - (a / b) * u1;
  return g;
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SymWord reduce_symword(const SymWord& w) {
  SymWord out;
  out.reserve(w.size());
  for (int32_t s : w) {
    if (s == 0) continue;
    if (!out.empty() && out.back() == -s)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

GroupBackend GroupBackend::free_abelian(int rank) {
  if (rank < 1) throw Error(ErrorCode::InvalidElement, "free abelian rank must be positive");
  GroupBackend b;
  b.kind_ = BackendKind::FreeAbelian;
  b.rank_ = rank;
  return b;
}

GroupBackend GroupBackend::free_group(std::vector<std::string> basis) {
  GroupBackend b;
  b.kind_ = BackendKind::Free;
  b.symbols_ = std::move(basis);
  for (size_t i = 0; i < b.symbols_.size(); ++i) {
    if (b.symbols_[i].empty())
      throw Error(ErrorCode::InvalidElement, "empty symbol name");
    if (!b.symbol_ids_.emplace(b.symbols_[i], static_cast<int>(i) + 1).second)
      throw Error(ErrorCode::InvalidElement, "duplicate symbol: " + b.symbols_[i]);
  }
  return b;
}

GroupBackend GroupBackend::formal(std::vector<std::string> alphabet,
                                  std::map<std::string, std::string> phi) {
  GroupBackend b = free_group(std::move(alphabet));
  b.kind_ = BackendKind::FormalSymbols;
  if (!phi.empty()) {
    b.phi_.assign(b.symbols_.size() + 1, 0);
    for (const auto& [from, to] : phi) {
      auto fi = b.symbol_ids_.find(from);
      auto ti = b.symbol_ids_.find(to);
      if (fi == b.symbol_ids_.end() || ti == b.symbol_ids_.end())
        throw Error(ErrorCode::InvalidElement, "phi references unknown symbol");
      b.phi_[fi->second] = ti->second;
    }
  }
  return b;
}

GroupBackend GroupBackend::finite_table(std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n < 1 || n > kMaxTableSize)
    throw Error(ErrorCode::InvalidTable, "table size out of range [1,256]");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n)
      throw Error(ErrorCode::InvalidTable, "table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(ErrorCode::InvalidTable, "table entry out of range");
  }
  // identity: e with e*x == x and x*e == x for all x
  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = table[e][x] == x && table[x][e] == x;
    if (ok) { identity = e; break; }
  }
  if (identity < 0) throw Error(ErrorCode::InvalidTable, "no identity element");
  std::vector<int> inverse(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (table[x][y] == identity && table[y][x] == identity) { inverse[x] = y; break; }
    }
    if (inverse[x] < 0) throw Error(ErrorCode::InvalidTable, "element without inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorCode::InvalidTable, "table is not associative");

  GroupBackend b;
  b.kind_ = BackendKind::FiniteTable;
  b.table_ = std::move(table);
  b.inverse_ = std::move(inverse);
  b.identity_ = identity;
  return b;
}

void GroupBackend::check_element(const Element& g) const {
  switch (kind_) {
    case BackendKind::FreeAbelian: {
      const ZVec* v = std::get_if<ZVec>(&g.value);
      if (!v) throw Error(ErrorCode::MixedBackend, "expected integer vector element");
      if (static_cast<int>(v->size()) != rank_)
        throw Error(ErrorCode::InvalidElement, "vector length does not match rank");
      return;
    }
    case BackendKind::Free:
    case BackendKind::FormalSymbols: {
      const SymWord* w = std::get_if<SymWord>(&g.value);
      if (!w) throw Error(ErrorCode::MixedBackend, "expected symbol word element");
      const int n = static_cast<int>(symbols_.size());
      for (int32_t s : *w) {
        int a = s < 0 ? -s : s;
        if (a < 1 || a > n) throw Error(ErrorCode::InvalidElement, "symbol id out of range");
      }
      if (reduce_symword(*w) != *w)
        throw Error(ErrorCode::InvalidElement, "symbol word is not freely reduced");
      return;
    }
    case BackendKind::FiniteTable: {
      const int* i = std::get_if<int>(&g.value);
      if (!i) throw Error(ErrorCode::MixedBackend, "expected table index element");
      if (*i < 0 || *i >= table_size())
        throw Error(ErrorCode::InvalidElement, "table index out of range");
      return;
    }
  }
}

Element GroupBackend::identity() const {
  switch (kind_) {
    case BackendKind::FreeAbelian: return Element(ZVec(rank_, 0));
    case BackendKind::Free:
    case BackendKind::FormalSymbols: return Element(SymWord{});
    case BackendKind::FiniteTable: return Element(identity_);
  }
  return Element();
}

bool GroupBackend::is_identity(const Element& g) const {
  check_element(g);
  switch (kind_) {
    case BackendKind::FreeAbelian:
      return std::all_of(g.zvec().begin(), g.zvec().end(), [](long long v) { return v == 0; });
    case BackendKind::Free:
    case BackendKind::FormalSymbols:
      return g.symword().empty();
    case BackendKind::FiniteTable:
      return g.index() == identity_;
  }
  return false;
}

bool GroupBackend::equal(const Element& a, const Element& b) const {
  check_element(a);
  check_element(b);
  return a.value == b.value;
}

Element GroupBackend::multiply(const Element& a, const Element& b) const {
  check_element(a);
  check_element(b);
  switch (kind_) {
    case BackendKind::FreeAbelian: {
      ZVec r = a.zvec();
      for (int i = 0; i < rank_; ++i) r[i] += b.zvec()[i];
      return Element(std::move(r));
    }
    case BackendKind::Free:
    case BackendKind::FormalSymbols: {
      SymWord r = a.symword();
      r.insert(r.end(), b.symword().begin(), b.symword().end());
      return Element(reduce_symword(r));
    }
    case BackendKind::FiniteTable:
      return Element(table_[a.index()][b.index()]);
  }
  return Element();
}

Element GroupBackend::inverse(const Element& g) const {
  check_element(g);
  switch (kind_) {
    case BackendKind::FreeAbelian: {
      ZVec r = g.zvec();
      for (auto& v : r) v = -v;
      return Element(std::move(r));
    }
    case BackendKind::Free:
    case BackendKind::FormalSymbols: {
      SymWord r(g.symword().rbegin(), g.symword().rend());
      for (auto& s : r) s = -s;
      return Element(std::move(r));
    }
    case BackendKind::FiniteTable:
      return Element(inverse_[g.index()]);
  }
  return Element();
}

Element GroupBackend::power(const Element& g, long long k) const {
  check_element(g);
  if (k == 0) return identity();
  Element base = k < 0 ? inverse(g) : g;
  long long n = k < 0 ? -k : k;
  if (kind_ == BackendKind::FreeAbelian) {
    ZVec r = base.zvec();
    for (auto& v : r) v *= n;
    return Element(std::move(r));
  }
  Element acc = identity();
  for (long long i = 0; i < n; ++i) acc = multiply(acc, base);
  return acc;
}

OrderResult GroupBackend::order(const Element& g) const {
  check_element(g);
  if (is_identity(g)) return OrderResult::of(1);
  switch (kind_) {
    case BackendKind::FreeAbelian:
    case BackendKind::Free:
    case BackendKind::FormalSymbols:
      return OrderResult::infinite();
    case BackendKind::FiniteTable: {
      int x = g.index();
      long long n = 1;
      while (x != identity_) {
        x = table_[x][g.index()];
        ++n;
      }
      return OrderResult::of(n);
    }
  }
  return OrderResult::infinite();
}

Element GroupBackend::symbol_element(const std::string& name, long long exp) const {
  auto id = symbol_id(name);
  if (!id) throw Error(ErrorCode::InvalidElement, "unknown symbol: " + name);
  SymWord w;
  int32_t letter = exp < 0 ? -*id : *id;
  long long n = exp < 0 ? -exp : exp;
  for (long long i = 0; i < n; ++i) w.push_back(letter);
  return Element(std::move(w));
}

std::optional<int> GroupBackend::symbol_id(const std::string& name) const {
  auto it = symbol_ids_.find(name);
  if (it == symbol_ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& GroupBackend::symbol_name(int id) const {
  return symbols_.at(static_cast<size_t>(id) - 1);
}

Element GroupBackend::apply_phi(const Element& g) const {
  check_element(g);
  if (phi_.empty()) throw Error(ErrorCode::InvalidElement, "backend has no phi map");
  SymWord r;
  r.reserve(g.symword().size());
  for (int32_t s : g.symword()) {
    int a = s < 0 ? -s : s;
    int img = phi_[a];
    if (img == 0) throw Error(ErrorCode::InvalidElement, "phi undefined on " + symbol_name(a));
    r.push_back(s < 0 ? -img : img);
  }
  return Element(reduce_symword(r));
}

CosetDecomposition GroupBackend::coset_decompose(const Element& t, const Element& x) const {
  if (kind_ != BackendKind::FreeAbelian)
    throw Error(ErrorCode::MixedBackend, "coset decomposition needs a free abelian backend");
  check_element(t);
  check_element(x);
  if (is_identity(t)) throw Error(ErrorCode::ZeroDirection, "direction must be nonzero");

  const int n = rank_;
  const ZVec& tv = t.zvec();
  long long g = 0;
  for (long long v : tv) g = std::gcd(g, v < 0 ? -v : v);
  ZVec d(n);
  for (int i = 0; i < n; ++i) d[i] = tv[i] / g;

  // Row-reduce d to e1 with a unimodular transform V; track only V's first
  // row, which is all we need for the coordinate along d.
  std::vector<long long> vrow(n, 0);
  vrow[0] = 1;
  ZVec c = d;
  for (int i = 1; i < n; ++i) {
    if (c[i] == 0) continue;
    if (c[0] == 0) {
      std::swap(c[0], c[i]);
      // row swap: V row0 becomes e_i
      std::fill(vrow.begin(), vrow.end(), 0);
      vrow[i] = 1;
      continue;
    }
    long long s, u;
    long long g2 = ext_gcd(c[0], c[i], s, u);
    std::vector<long long> nrow(n);
    for (int j = 0; j < n; ++j) nrow[j] = s * vrow[j];
    nrow[i] += u;  // V started as identity; row i of V is still e_i here
    c[0] = g2;
    c[i] = 0;
    vrow = std::move(nrow);
  }
  if (c[0] < 0) {
    c[0] = -c[0];
    for (auto& v : vrow) v = -v;
  }
  // d primitive => c[0] == 1, so alpha below is the exact d-coordinate.
  long long alpha = 0;
  for (int i = 0; i < n; ++i) alpha += vrow[i] * x.zvec()[i];
  long long l = floor_div(alpha, g);
  ZVec rep = x.zvec();
  for (int i = 0; i < n; ++i) rep[i] -= l * tv[i];
  return CosetDecomposition{std::move(rep), l};
}

std::string GroupBackend::element_key(const Element& g) const {
  check_element(g);
  std::ostringstream os;
  switch (kind_) {
    case BackendKind::FreeAbelian:
      for (long long v : g.zvec()) os << v << ",";
      break;
    case BackendKind::Free:
    case BackendKind::FormalSymbols:
      for (int32_t s : g.symword()) os << s << ",";
      break;
    case BackendKind::FiniteTable:
      os << g.index();
      break;
  }
  return os.str();
}

std::string GroupBackend::element_str(const Element& g) const {
  check_element(g);
  std::ostringstream os;
  switch (kind_) {
    case BackendKind::FreeAbelian: {
      os << "(";
      for (int i = 0; i < rank_; ++i) {
        if (i) os << ",";
        os << g.zvec()[i];
      }
      os << ")";
      break;
    }
    case BackendKind::Free:
    case BackendKind::FormalSymbols: {
      if (g.symword().empty()) { os << "1"; break; }
      // run-length print: a a a^-1 -> "a^2 a^-1" style per maximal run
      const SymWord& w = g.symword();
      size_t i = 0;
      bool first = true;
      while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        long long run = static_cast<long long>(j - i);
        int a = w[i] < 0 ? -w[i] : w[i];
        long long exp = w[i] < 0 ? -run : run;
        if (!first) os << " ";
        first = false;
        os << symbol_name(a);
        if (exp != 1) os << "^" << exp;
        i = j;
      }
      break;
    }
    case BackendKind::FiniteTable:
      os << g.index();
      break;
  }
  return os.str();
}

Element evaluate(const GroupBackend& backend,
                 const std::vector<std::pair<Element, long long>>& expr) {
  Element acc = backend.identity();
  for (const auto& [g, k] : expr) acc = backend.multiply(acc, backend.power(g, k));
  return acc;
}

}  // namespace relpres
