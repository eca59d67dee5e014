#include "bangnce/isomorphism.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

namespace bangnce {

namespace {

// Integer view of a graph. Vertex and edge labels are replaced by their rank
// in a sorted label table, which keeps every derived quantity invariant under
// vertex renaming.
struct Dense {
  int n = 0;
  std::vector<VertexId> ids;
  std::vector<int> vlabel;
  std::vector<std::vector<std::pair<int, int>>> out;  // (edge label, target)
  std::vector<std::vector<std::pair<int, int>>> in;   // (edge label, source)
  std::set<std::tuple<int, int, int>> edges;          // (src, label, tgt)
};

struct LabelTables {
  std::vector<Label> vertex_labels;
  std::vector<Label> edge_labels;

  int vertex_rank(const Label& l) const {
    return int(std::lower_bound(vertex_labels.begin(), vertex_labels.end(), l) -
               vertex_labels.begin());
  }
  int edge_rank(const Label& l) const {
    return int(std::lower_bound(edge_labels.begin(), edge_labels.end(), l) -
               edge_labels.begin());
  }
};

LabelTables tables_for(std::initializer_list<const LabeledGraph*> graphs) {
  std::set<Label> vl, el;
  for (const auto* g : graphs) {
    for (const auto& [_, l] : g->vertices()) vl.insert(l);
    for (const auto& e : g->edges()) el.insert(e.label);
  }
  return {{vl.begin(), vl.end()}, {el.begin(), el.end()}};
}

// Appends `g` (restricted to `keep` when non-null) to `d`.
void append(Dense& d, const LabeledGraph& g, const LabelTables& t,
            const std::set<VertexId>* keep = nullptr) {
  std::map<VertexId, int> index;
  for (const auto& [id, l] : g.vertices()) {
    if (keep && !keep->count(id)) continue;
    index.emplace(id, d.n++);
    d.ids.push_back(id);
    d.vlabel.push_back(t.vertex_rank(l));
  }
  d.out.resize(d.n);
  d.in.resize(d.n);
  for (const auto& e : g.edges()) {
    auto s = index.find(e.src);
    auto r = index.find(e.tgt);
    if (s == index.end() || r == index.end()) continue;
    int el = t.edge_rank(e.label);
    d.out[s->second].push_back({el, r->second});
    d.in[r->second].push_back({el, s->second});
    d.edges.insert({s->second, el, r->second});
  }
}

int count_colours(const std::vector<int>& col) {
  return col.empty() ? 0 : *std::max_element(col.begin(), col.end()) + 1;
}

// Splits colour classes by neighbourhood colour multisets until stable.
// Colours stay dense (0..k-1) and each new class sorts inside its parent, so
// the ordered partition only ever gets finer.
std::vector<int> refine(const Dense& d, std::vector<int> col) {
  int k = count_colours(col);
  std::vector<std::vector<int>> sig(d.n);
  std::vector<int> order(d.n);
  while (true) {
    for (int v = 0; v < d.n; ++v) {
      auto& s = sig[v];
      s.clear();
      s.push_back(col[v]);
      std::vector<std::pair<int, int>> nb;
      for (auto [el, w] : d.out[v]) nb.push_back({el, col[w]});
      std::sort(nb.begin(), nb.end());
      for (auto [a, b] : nb) { s.push_back(a); s.push_back(b); }
      s.push_back(-1);
      nb.clear();
      for (auto [el, w] : d.in[v]) nb.push_back({el, col[w]});
      std::sort(nb.begin(), nb.end());
      for (auto [a, b] : nb) { s.push_back(a); s.push_back(b); }
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    std::vector<int> next(d.n);
    int c = -1;
    for (int i = 0; i < d.n; ++i) {
      if (i == 0 || sig[order[i]] != sig[order[i - 1]]) ++c;
      next[order[i]] = c;
    }
    int nk = c + 1;
    col = std::move(next);
    if (nk == k) return col;
    k = nk;
  }
}

std::vector<int> initial_colours(const Dense& d) {
  std::set<int> labels(d.vlabel.begin(), d.vlabel.end());
  std::vector<int> ranks(labels.begin(), labels.end());
  std::vector<int> col(d.n);
  for (int v = 0; v < d.n; ++v) {
    col[v] = int(std::lower_bound(ranks.begin(), ranks.end(), d.vlabel[v]) - ranks.begin());
  }
  return col;
}

std::vector<int> individualize(const std::vector<int>& col, int v) {
  std::vector<int> next(col);
  for (std::size_t u = 0; u < col.size(); ++u) {
    if (col[u] > col[v] || (col[u] == col[v] && int(u) != v)) ++next[u];
  }
  return next;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

class Canonizer {
 public:
  explicit Canonizer(const Dense& d) : d_(d) {}

  std::vector<int> run() {
    search(refine(d_, initial_colours(d_)), {});
    return best_cert_;
  }

 private:
  std::vector<int> certificate(const std::vector<int>& order) const {
    std::vector<int> pos(d_.n);
    for (int p = 0; p < d_.n; ++p) pos[order[p]] = p;
    std::vector<int> cert;
    cert.reserve(d_.n + 3 * d_.edges.size());
    for (int p = 0; p < d_.n; ++p) cert.push_back(d_.vlabel[order[p]]);
    std::vector<std::tuple<int, int, int>> es;
    for (auto [s, l, t] : d_.edges) es.push_back({pos[s], l, pos[t]});
    std::sort(es.begin(), es.end());
    for (auto [s, l, t] : es) {
      cert.push_back(s);
      cert.push_back(l);
      cert.push_back(t);
    }
    return cert;
  }

  void record_automorphism(const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> gamma(d_.n);
    for (int p = 0; p < d_.n; ++p) gamma[from[p]] = to[p];
    autos_.push_back(std::move(gamma));
  }

  void leaf(const std::vector<int>& col) {
    std::vector<int> order(d_.n);
    for (int v = 0; v < d_.n; ++v) order[col[v]] = v;
    auto cert = certificate(order);
    if (!have_leaf_) {
      have_leaf_ = true;
      first_cert_ = best_cert_ = cert;
      first_order_ = best_order_ = order;
      return;
    }
    if (cert == first_cert_) {
      record_automorphism(first_order_, order);
    } else if (cert == best_cert_) {
      record_automorphism(best_order_, order);
    } else if (cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_order_ = std::move(order);
    }
  }

  bool is_twin(int u, int v) const {
    if (d_.out[u].size() != d_.out[v].size() || d_.in[u].size() != d_.in[v].size()) {
      return false;
    }
    auto swap = [&](int x) { return x == u ? v : (x == v ? u : x); };
    for (int x : {u, v}) {
      for (auto [el, w] : d_.out[x]) {
        if (!d_.edges.count({swap(x), el, swap(w)})) return false;
      }
      for (auto [el, w] : d_.in[x]) {
        if (!d_.edges.count({swap(w), el, swap(x)})) return false;
      }
    }
    return true;
  }

  bool same_orbit(int u, int v, const std::vector<int>& prefix) const {
    UnionFind uf(d_.n);
    bool any = false;
    for (const auto& g : autos_) {
      bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int p) { return g[p] == p; });
      if (!fixes) continue;
      any = true;
      for (int x = 0; x < d_.n; ++x) uf.unite(x, g[x]);
    }
    return any && uf.find(u) == uf.find(v);
  }

  void search(const std::vector<int>& col, const std::vector<int>& prefix) {
    int k = count_colours(col);
    if (k == d_.n) {
      leaf(col);
      return;
    }
    std::vector<int> size(k, 0);
    for (int c : col) ++size[c];
    int target = int(std::find_if(size.begin(), size.end(), [](int s) { return s > 1; }) -
                     size.begin());
    std::vector<int> explored;
    for (int v = 0; v < d_.n; ++v) {
      if (col[v] != target) continue;
      bool pruned = std::any_of(explored.begin(), explored.end(), [&](int u) {
        return is_twin(u, v) || same_orbit(u, v, prefix);
      });
      if (pruned) continue;
      auto next_prefix = prefix;
      next_prefix.push_back(v);
      search(refine(d_, individualize(col, v)), next_prefix);
      explored.push_back(v);
    }
  }

  const Dense& d_;
  bool have_leaf_ = false;
  std::vector<int> first_cert_, best_cert_;
  std::vector<int> first_order_, best_order_;
  std::vector<std::vector<int>> autos_;
};

void put_string(std::string& out, const std::string& s) {
  out += std::to_string(s.size());
  out += ':';
  out += s;
}

std::vector<std::set<VertexId>> weak_components(const LabeledGraph& g) {
  std::vector<std::set<VertexId>> comps;
  std::set<VertexId> seen;
  for (const auto& [id, _] : g.vertices()) {
    if (seen.count(id)) continue;
    std::set<VertexId> comp;
    std::vector<VertexId> stack{id};
    seen.insert(id);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      comp.insert(v);
      auto visit = [&](const VertexId& w) {
        if (seen.insert(w).second) stack.push_back(w);
      };
      for (const auto& e : g.out_edges(v)) visit(e.tgt);
      for (const auto& e : g.in_edges(v)) visit(e.src);
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

std::string component_key(const LabeledGraph& g, const std::set<VertexId>& comp) {
  LabeledGraph sub = g.induced(comp);
  LabelTables t = tables_for({&sub});
  Dense d;
  append(d, sub, t);
  auto cert = Canonizer(d).run();
  std::string key = "{";
  key += std::to_string(t.vertex_labels.size());
  for (const auto& l : t.vertex_labels) put_string(key, l);
  key += std::to_string(t.edge_labels.size());
  for (const auto& l : t.edge_labels) put_string(key, l);
  key += '#';
  key += std::to_string(d.n);
  for (int x : cert) {
    key += ',';
    key += std::to_string(x);
  }
  key += '}';
  return key;
}

}  // namespace

std::string canonical_key(const LabeledGraph& g) {
  std::vector<std::string> parts;
  for (const auto& comp : weak_components(g)) parts.push_back(component_key(g, comp));
  std::sort(parts.begin(), parts.end());
  std::string key = "G" + std::to_string(g.vertex_count()) + ";";
  for (const auto& p : parts) key += p;
  return key;
}

namespace {

class Matcher {
 public:
  Matcher(const Dense& d, int n, std::vector<int> col) : d_(d), n_(n), col_(std::move(col)) {}

  std::optional<std::vector<int>> run() {
    plan_order();
    image_.assign(n_, -1);
    used_.assign(n_, false);
    if (extend(0)) return image_;
    return std::nullopt;
  }

 private:
  // Left vertices are 0..n-1, right vertices n..2n-1 in the joint Dense.
  void plan_order() {
    std::vector<int> freq(count_colours(col_), 0);
    for (int v = 0; v < n_; ++v) ++freq[col_[v]];
    std::vector<bool> placed(n_, false);
    std::vector<int> links(n_, 0);
    for (int step = 0; step < n_; ++step) {
      int best = -1;
      for (int v = 0; v < n_; ++v) {
        if (placed[v]) continue;
        if (best < 0 || std::tuple(-links[v], freq[col_[v]], v) <
                            std::tuple(-links[best], freq[col_[best]], best)) {
          best = v;
        }
      }
      placed[best] = true;
      order_.push_back(best);
      for (auto [_, w] : d_.out[best]) ++links[w];
      for (auto [_, w] : d_.in[best]) ++links[w];
    }
  }

  bool consistent(int a, int b) const {
    int mapped_a = 0;
    for (auto [el, w] : d_.out[a]) {
      if (image_[w] < 0) continue;
      ++mapped_a;
      if (!d_.edges.count({b, el, image_[w]})) return false;
    }
    for (auto [el, w] : d_.in[a]) {
      if (image_[w] < 0) continue;
      ++mapped_a;
      if (!d_.edges.count({image_[w], el, b})) return false;
    }
    int mapped_b = 0;
    for (auto [_, w] : d_.out[b]) mapped_b += used_[w - n_] ? 1 : 0;
    for (auto [_, w] : d_.in[b]) mapped_b += used_[w - n_] ? 1 : 0;
    return mapped_a == mapped_b;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    int a = order_[depth];
    for (int b = n_; b < 2 * n_; ++b) {
      if (used_[b - n_] || col_[b] != col_[a]) continue;
      if (!consistent(a, b)) continue;
      image_[a] = b;
      used_[b - n_] = true;
      if (extend(depth + 1)) return true;
      image_[a] = -1;
      used_[b - n_] = false;
    }
    return false;
  }

  const Dense& d_;
  int n_;
  std::vector<int> col_;
  std::vector<int> order_;
  std::vector<int> image_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<Isomorphism> find_isomorphism(const LabeledGraph& a, const LabeledGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) {
    return std::nullopt;
  }
  LabelTables t = tables_for({&a, &b});
  Dense d;
  append(d, a, t);
  append(d, b, t);
  int n = int(a.vertex_count());
  auto col = refine(d, initial_colours(d));
  std::vector<int> left(count_colours(col), 0), right(count_colours(col), 0);
  for (int v = 0; v < n; ++v) ++left[col[v]];
  for (int v = n; v < 2 * n; ++v) ++right[col[v]];
  if (left != right) return std::nullopt;
  auto image = Matcher(d, n, std::move(col)).run();
  if (!image) return std::nullopt;
  Isomorphism iso;
  for (int v = 0; v < n; ++v) iso.emplace(d.ids[v], d.ids[(*image)[v]]);
  return iso;
}

}  // namespace bangnce
