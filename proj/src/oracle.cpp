#include "bibnov/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "bibnov/errors.hpp"
#include "bibnov/resampling.hpp"

namespace bibnov::oracle {

namespace {

std::vector<const DocumentRecord*> docs_where(const CorpusStore& store, const std::function<bool(int)>& keep) {
  std::vector<const DocumentRecord*> out;
  for (const auto& d : store.documents())
    if (keep(d.year)) out.push_back(&d);
  return out;
}

std::set<std::string> entity_set(const DocumentRecord& doc, EntityKind kind) {
  std::set<std::string> out;
  if (kind == EntityKind::Journals) {
    for (const auto& r : doc.references)
      if (r.source) out.insert(*r.source);
  } else {
    out.insert(doc.keywords.begin(), doc.keywords.end());
  }
  return out;
}

struct Dense {
  std::vector<std::string> nodes;
  std::map<std::string, int> index;
  Eigen::MatrixXd w;

  double at(const std::string& a, const std::string& b) const {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end() || ib == index.end()) return 0.0;
    return w(ia->second, ib->second);
  }
};

Dense dense_graph(const std::vector<const DocumentRecord*>& docs, EntityKind kind) {
  Dense g;
  std::set<std::string> all;
  for (const auto* d : docs)
    for (const auto& e : entity_set(*d, kind)) all.insert(e);
  g.nodes.assign(all.begin(), all.end());
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) g.index[g.nodes[i]] = i;
  const auto v = static_cast<Eigen::Index>(g.nodes.size());
  g.w = Eigen::MatrixXd::Zero(v, v);
  for (const auto* d : docs) {
    const auto names = entity_set(*d, kind);
    std::vector<std::string> e(names.begin(), names.end());
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = 0; b < e.size(); ++b)
        if (a != b) g.w(g.index[e[a]], g.index[e[b]]) += 1.0;
  }
  return g;
}

std::vector<std::pair<std::string, std::string>> doc_pairs(const DocumentRecord& doc, EntityKind kind) {
  std::vector<std::string> e;
  for (const auto& x : entity_set(doc, kind)) e.push_back(x);
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = a + 1; b < e.size(); ++b) out.emplace_back(e[a], e[b]);
  return out;
}

struct Moments {
  double mean;
  double std;
};

// Two-pass population moments.
Moments moments_of(const std::vector<double>& xs) {
  double sum = 0;
  for (double x : xs) sum += x;
  const double m = sum / static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / static_cast<double>(xs.size()))};
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

struct OracleStratum {
  std::vector<int> slots;
  std::vector<std::string> labels;
};

std::map<int, OracleStratum> strata_of(const std::vector<const DocumentRecord*>& docs, EntityKind kind) {
  std::map<int, OracleStratum> strata;
  for (int slot = 0; slot < static_cast<int>(docs.size()); ++slot) {
    const auto* d = docs[slot];
    if (kind == EntityKind::Journals) {
      for (const auto& r : d->references)
        if (r.source) {
          auto& s = strata[r.year ? *r.year : std::numeric_limits<int>::min()];
          s.slots.push_back(slot);
          s.labels.push_back(*r.source);
        }
    } else {
      for (const auto& k : d->keywords) {
        auto& s = strata[std::numeric_limits<int>::min()];
        s.slots.push_back(slot);
        s.labels.push_back(k);
      }
    }
  }
  return strata;
}

std::vector<const DocumentRecord*> year_docs(const CorpusStore& store, int year) {
  auto docs = docs_where(store, [year](int y) { return y == year; });
  std::sort(docs.begin(), docs.end(), [](auto* a, auto* b) { return a->id < b->id; });
  return docs;
}

Result uzzi(const CorpusStore& store, const Params& p) {
  Result res;
  res.indicator = "uzzi";
  auto docs = year_docs(store, p.year);
  auto observed = dense_graph(docs, p.kind);

  // Moments per observed edge, keyed by label.
  std::map<std::string, std::pair<Moments, bool>> z_input;  // (moments, obs == mean)
  std::map<std::string, double> obs;
  for (int i = 0; i < static_cast<int>(observed.nodes.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(observed.nodes.size()); ++j)
      if (observed.w(i, j) > 0) obs[edge_label(observed.nodes[i], observed.nodes[j])] = observed.w(i, j);
  if (obs.empty()) throw Error(ErrorCode::NoDocuments, "no pair in year " + std::to_string(p.year));

  bool enumerate = p.uzzi_mode == UzziMode::Enumerate ||
                   (p.uzzi_mode == UzziMode::Auto && arrangement_count(store, p.kind, p.year) <= p.enumeration_limit);
  std::map<std::string, Moments> moments;
  if (enumerate) {
    auto exact = exact_uzzi(store, p.kind, p.year, std::numeric_limits<std::uint64_t>::max());
    for (const auto& [label, w] : obs) {
      auto it = exact.moments.find(label);
      moments[label] = it == exact.moments.end() ? Moments{0.0, 0.0} : Moments{it->second.mean, it->second.std};
    }
  } else {
    DocumentView view(docs.begin(), docs.end());
    auto plan = build_plan(view, p.kind, p.samples, p.seed);
    std::map<std::string, std::vector<double>> series;
    for (const auto& [label, w] : obs) series[label].assign(p.samples, 0.0);
    for (std::uint32_t k = 0; k < p.samples; ++k) {
      auto sample = draw_sample(plan, k);
      for (const auto& labels : sample) {
        std::set<std::string> names;
        for (auto l : labels) names.insert(plan.entities[static_cast<std::size_t>(l)]);
        std::vector<std::string> e(names.begin(), names.end());
        for (std::size_t a = 0; a < e.size(); ++a)
          for (std::size_t b = a + 1; b < e.size(); ++b) {
            auto it = series.find(edge_label(e[a], e[b]));
            if (it != series.end()) it->second[k] += 1.0;
          }
      }
    }
    for (const auto& [label, xs] : series) moments[label] = moments_of(xs);
  }

  std::map<std::string, std::optional<double>> z;  // nullopt = degenerate
  for (const auto& [label, w] : obs) {
    const auto& m = moments[label];
    if (m.std > 0)
      z[label] = (w - m.mean) / m.std;
    else if (w == m.mean)
      z[label] = 0.0;
    else
      z[label] = std::nullopt;
    if (z[label]) res.edge_values[label] = *z[label];
  }

  for (const auto* d : docs) {
    auto pairs = doc_pairs(*d, p.kind);
    if (pairs.empty()) continue;
    std::vector<double> dist;
    for (const auto& [a, b] : pairs)
      if (auto v = z.at(edge_label(a, b))) dist.push_back(*v);
    auto& s = res.scores[d->id];
    if (dist.empty()) {
      s["novelty"] = std::nullopt;
      s["conventionality"] = std::nullopt;
    } else {
      s["novelty"] = percentile(dist, 10);
      s["conventionality"] = percentile(dist, 50);
    }
    res.cardinalities[d->id]["pairs"] = static_cast<double>(pairs.size());
  }
  return res;
}

Result lee(const CorpusStore& store, const Params& p) {
  Result res;
  res.indicator = "lee";
  auto docs = year_docs(store, p.year);
  if (docs.empty()) return res;
  auto g = dense_graph(docs, p.kind);
  const double n_t = g.w.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().sum();
  const Eigen::VectorXd k = g.w.rowwise().sum();
  std::map<std::string, double> c;
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(g.nodes.size()); ++j)
      if (g.w(i, j) > 0) c[edge_label(g.nodes[i], g.nodes[j])] = g.w(i, j) * n_t / (k[i] * k[j]);
  res.edge_values = c;
  for (const auto* d : docs) {
    auto pairs = doc_pairs(*d, p.kind);
    if (pairs.empty()) continue;
    std::vector<double> dist;
    for (const auto& [a, b] : pairs) dist.push_back(c.at(edge_label(a, b)));
    res.scores[d->id]["commonness"] = -std::log(percentile(dist, 10));
  }
  return res;
}

Result foster(const CorpusStore& store, const Params& p) {
  Result res;
  res.indicator = "foster";
  auto focal = year_docs(store, p.year);
  if (focal.empty()) return res;
  auto g = dense_graph(docs_where(store, [&](int y) { return y <= p.year; }), p.kind);
  if (g.nodes.empty()) return res;
  auto community = louvain(g.w, p.resolution);
  for (const auto* d : focal) {
    auto pairs = doc_pairs(*d, p.kind);
    if (pairs.empty()) continue;
    double across = 0;
    for (const auto& [a, b] : pairs) across += community[g.index.at(a)] != community[g.index.at(b)] ? 1.0 : 0.0;
    res.scores[d->id]["novelty"] = across / static_cast<double>(pairs.size());
  }
  return res;
}

Result wang(const CorpusStore& store, const Params& p) {
  Result res;
  res.indicator = "wang";
  auto focal = year_docs(store, p.year);
  if (focal.empty()) return res;
  const int t = p.year;
  auto g_t = dense_graph(focal, p.kind);
  auto g_p = dense_graph(docs_where(store, [&](int y) { return y < t; }), p.kind);
  auto g_f = dense_graph(docs_where(store, [&](int y) { return y > t && y <= t + p.forward; }), p.kind);
  auto g_b = dense_graph(docs_where(store, [&](int y) { return y >= t - p.backward && y < t; }), p.kind);

  auto cos = [&](const std::string& a, const std::string& b) {
    auto ia = g_b.index.find(a), ib = g_b.index.find(b);
    if (ia == g_b.index.end() || ib == g_b.index.end()) return 0.0;
    Eigen::VectorXd u = g_b.w.row(ia->second), v = g_b.w.row(ib->second);
    double dot = 0, nu = 0, nv = 0;
    for (Eigen::Index x = 0; x < u.size(); ++x) {
      dot += u[x] * v[x];
      nu += u[x] * u[x];
      nv += v[x] * v[x];
    }
    if (nu == 0 || nv == 0) return 0.0;
    return dot / (std::sqrt(nu) * std::sqrt(nv));
  };

  for (const auto* d : focal) {
    auto pairs = doc_pairs(*d, p.kind);
    if (pairs.empty()) continue;
    double sum = 0;
    double fresh = 0;
    for (const auto& [a, b] : pairs) {
      const bool in_t = g_t.at(a, b) > 0;
      const bool in_p = g_p.at(a, b) > 0;
      const bool in_f = g_f.at(a, b) >= static_cast<double>(p.reuse);
      if (in_t && in_f && !in_p) {
        const double c = 1.0 - cos(a, b);
        res.edge_values[edge_label(a, b)] = c;
        sum += c;
        fresh += 1;
      }
    }
    res.scores[d->id]["novelty"] = sum;
    res.cardinalities[d->id]["new_pairs"] = fresh;
  }
  return res;
}

Result shibayama(const CorpusStore& store, const Params& p) {
  Result res;
  res.indicator = "shibayama";
  if (!p.embeddings) throw Error(ErrorCode::InvalidArgument, "shibayama oracle needs embeddings");
  for (const auto* d : year_docs(store, p.year)) {
    std::set<std::string> refs;
    for (const auto& r : d->references)
      if (r.ref_id && *r.ref_id != d->id) refs.insert(*r.ref_id);
    std::vector<std::vector<double>> vecs;
    for (const auto& id : refs) {
      const DocumentRecord* cited = nullptr;
      for (const auto& other : store.documents())
        if (other.id == id) cited = &other;
      if (!cited) continue;
      const auto& vid = p.field == TextField::Title ? cited->title_vector_id : cited->abstract_vector_id;
      if (!vid) continue;
      auto row = p.embeddings->row_of(*vid);
      if (!row) continue;
      auto v = p.embeddings->row(*row);
      vecs.emplace_back(v.data(), v.data() + v.size());
    }
    if (vecs.size() < 2) continue;
    std::vector<double> dist;
    for (std::size_t a = 0; a < vecs.size(); ++a)
      for (std::size_t b = a + 1; b < vecs.size(); ++b) {
        double dot = 0, na = 0, nb = 0;
        for (std::size_t x = 0; x < vecs[a].size(); ++x) {
          dot += vecs[a][x] * vecs[b][x];
          na += vecs[a][x] * vecs[a][x];
          nb += vecs[b][x] * vecs[b][x];
        }
        double cos = (na == 0 || nb == 0) ? 0.0 : dot / (std::sqrt(na) * std::sqrt(nb));
        cos = std::max(-1.0, std::min(1.0, cos));
        dist.push_back(1.0 - cos);
      }
    res.scores[d->id]["novelty"] = percentile(dist, p.q);
    res.cardinalities[d->id]["resolved_references"] = static_cast<double>(vecs.size());
  }
  return res;
}

Result disruption(const CorpusStore& store, const Params& p) {
  Result res;
  res.indicator = "disruption";
  std::set<std::string> ids;
  for (const auto& d : store.documents()) ids.insert(d.id);
  std::map<std::string, std::set<std::string>> cites;  // document -> in-corpus references
  for (const auto& d : store.documents()) {
    auto& s = cites[d.id];
    for (const auto& r : d.references)
      if (r.ref_id && *r.ref_id != d.id && ids.count(*r.ref_id)) s.insert(*r.ref_id);
  }
  auto shares = [&](const std::string& a, const std::string& b) {
    std::size_t n = 0;
    for (const auto& x : cites[a]) n += cites[b].count(x);
    return n;
  };

  for (const auto& d : store.documents()) {
    if (d.year != p.year) continue;
    const auto& fp = d.id;
    std::set<std::string> out;
    for (const auto& [c, refs] : cites)
      if (refs.count(fp)) out.insert(c);
    std::set<std::string> k_set;
    for (const auto& [v, refs] : cites) {
      if (v == fp || out.count(v)) continue;
      if (shares(v, fp) > 0) k_set.insert(v);
    }
    auto& s = res.scores[fp];
    auto& card = res.cardinalities[fp];
    const double n = static_cast<double>(out.size());
    card["out"] = n;
    card["k"] = static_cast<double>(k_set.size());
    std::vector<int> ls = p.l_values;
    if (std::find(ls.begin(), ls.end(), 1) == ls.end()) ls.push_back(1);
    for (int l : ls) {
      double i = 0, j = 0;
      for (const auto& c : out) (shares(c, fp) >= static_cast<std::size_t>(l) ? j : i) += 1;
      const double k = static_cast<double>(k_set.size());
      s["di" + std::to_string(l)] = (i + j + k) > 0 ? std::optional<double>((i - j) / (i + j + k)) : std::nullopt;
      s["dinok" + std::to_string(l)] = (i + j) > 0 ? std::optional<double>((i - j) / (i + j)) : std::nullopt;
      card["i" + std::to_string(l)] = i;
      card["j" + std::to_string(l)] = j;
    }
    if (out.empty()) {
      s["depth"] = s["breadth"] = s["dependence"] = s["independence"] = std::nullopt;
      continue;
    }
    double deep = 0, shared = 0, independent = 0;
    for (const auto& c : out) {
      bool cites_citer = false;
      for (const auto& r : cites[c]) cites_citer = cites_citer || out.count(r) > 0;
      deep += cites_citer ? 1 : 0;
      const auto sh = shares(c, fp);
      shared += static_cast<double>(sh);
      independent += sh == 0 ? 1 : 0;
    }
    s["depth"] = deep / n;
    s["breadth"] = (n - deep) / n;
    s["dependence"] = shared / n;
    s["independence"] = independent / n;
  }
  return res;
}

}  // namespace

std::string edge_label(const std::string& a, const std::string& b) { return a < b ? a + "|" + b : b + "|" + a; }

double percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const double pos = q / 100.0 * static_cast<double>(values.size() - 1);
  const double below = std::floor(pos);
  const auto lo = static_cast<std::size_t>(below);
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] * (1.0 - (pos - below)) + values[lo + 1] * (pos - below);
}

std::uint64_t arrangement_count(const CorpusStore& store, EntityKind kind, int year) {
  std::uint64_t total = 1;
  for (const auto& [key, s] : strata_of(year_docs(store, year), kind)) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& l : s.labels) ++counts[l];
    std::uint64_t placed = 0;
    for (const auto& [label, c] : counts) {
      placed += c;
      total = saturating_mul(total, binomial(placed, c));
    }
  }
  return total;
}

ExactUzzi exact_uzzi(const CorpusStore& store, EntityKind kind, int year, std::uint64_t limit) {
  const auto count = arrangement_count(store, kind, year);
  if (count > limit) throw Error(ErrorCode::CorpusTooLarge, std::to_string(count) + " arrangements");
  auto docs = year_docs(store, year);
  auto strata_map = strata_of(docs, kind);
  std::vector<OracleStratum> strata;
  for (auto& [key, s] : strata_map) {
    // Slots stay fixed; the labels run through every distinct arrangement.
    std::sort(s.labels.begin(), s.labels.end());
    strata.push_back(std::move(s));
  }

  ExactUzzi out;
  auto g = dense_graph(docs, kind);
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(g.nodes.size()); ++j)
      if (g.w(i, j) > 0) out.observed[edge_label(g.nodes[i], g.nodes[j])] = static_cast<Weight>(g.w(i, j));

  std::map<std::string, std::array<long double, 4>> power_sums;
  std::vector<std::vector<std::string>> current(strata.size());
  std::function<void(std::size_t)> recurse = [&](std::size_t level) {
    if (level == strata.size()) {
      ++out.arrangements;
      std::vector<std::set<std::string>> per_doc(docs.size());
      for (std::size_t s = 0; s < strata.size(); ++s)
        for (std::size_t p = 0; p < strata[s].slots.size(); ++p) per_doc[strata[s].slots[p]].insert(current[s][p]);
      std::map<std::string, long double> weights;
      for (const auto& names : per_doc) {
        std::vector<std::string> e(names.begin(), names.end());
        for (std::size_t a = 0; a < e.size(); ++a)
          for (std::size_t b = a + 1; b < e.size(); ++b) weights[edge_label(e[a], e[b])] += 1;
      }
      for (const auto& [label, w] : weights) {
        auto& ps = power_sums[label];
        ps[0] += w;
        ps[1] += w * w;
        ps[2] += w * w * w;
        ps[3] += w * w * w * w;
      }
      return;
    }
    auto labels = strata[level].labels;  // sorted
    do {
      current[level] = labels;
      recurse(level + 1);
    } while (std::next_permutation(labels.begin(), labels.end()));
  };
  recurse(0);

  const auto n = static_cast<long double>(out.arrangements);
  auto add = [&](const std::string& label, const std::array<long double, 4>& ps) {
    const long double m1 = ps[0] / n, m2 = ps[1] / n, m3 = ps[2] / n, m4 = ps[3] / n;
    long double var = m2 - m1 * m1;
    if (var < 0) var = 0;
    const long double c4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
    out.moments[label] = {static_cast<double>(m1), static_cast<double>(std::sqrt(var)),
                          static_cast<double>(std::max<long double>(c4, 0))};
  };
  for (const auto& [label, ps] : power_sums) add(label, ps);
  for (const auto& [label, w] : out.observed)
    if (!out.moments.count(label)) add(label, {0, 0, 0, 0});
  return out;
}

std::vector<std::int32_t> louvain(const Eigen::MatrixXd& adjacency, double resolution) {
  const auto n0 = static_cast<std::int32_t>(adjacency.rows());
  std::vector<std::int32_t> membership(n0);
  for (std::int32_t i = 0; i < n0; ++i) membership[i] = i;
  Eigen::MatrixXd a = adjacency;

  auto renumber = [](std::vector<std::int32_t>& c) {
    std::map<std::int32_t, std::int32_t> seen;
    for (auto& x : c) {
      auto it = seen.find(x);
      if (it == seen.end()) it = seen.emplace(x, static_cast<std::int32_t>(seen.size())).first;
      x = it->second;
    }
    return static_cast<std::int32_t>(seen.size());
  };

  for (;;) {
    const auto n = static_cast<std::int32_t>(a.rows());
    const Eigen::VectorXd k = a.rowwise().sum();
    const double two_m = k.sum();
    std::vector<std::int32_t> comm(n);
    std::vector<double> tot(n);
    for (std::int32_t i = 0; i < n; ++i) {
      comm[i] = i;
      tot[i] = k[i];
    }
    bool level_moved = false;
    for (int pass = 0; pass < 10000; ++pass) {
      bool moved = false;
      for (std::int32_t i = 0; i < n; ++i) {
        const auto old = comm[i];
        tot[old] -= k[i];
        auto k_in = [&](std::int32_t c) {
          double s = 0;
          for (std::int32_t j = 0; j < n; ++j)
            if (j != i && comm[j] == c) s += a(i, j);
          return s;
        };
        std::set<std::int32_t> candidates;
        for (std::int32_t j = 0; j < n; ++j)
          if (j != i && a(i, j) > 0) candidates.insert(comm[j]);
        std::int32_t best = old;
        double best_gain = two_m * k_in(old) - resolution * tot[old] * k[i];
        for (auto c : candidates) {
          if (c == old) continue;
          const double g = two_m * k_in(c) - resolution * tot[c] * k[i];
          if (g > best_gain) {
            best_gain = g;
            best = c;
          }
        }
        tot[best] += k[i];
        comm[i] = best;
        moved = moved || best != old;
      }
      if (!moved) break;
      level_moved = true;
    }
    if (!level_moved) break;
    const auto count = renumber(comm);
    for (auto& m : membership) m = comm[m];
    if (count == n) break;
    Eigen::MatrixXd assign = Eigen::MatrixXd::Zero(n, count);
    for (std::int32_t i = 0; i < n; ++i) assign(i, comm[i]) = 1.0;
    a = assign.transpose() * a * assign;
  }
  renumber(membership);
  return membership;
}

double dense_modularity(const Eigen::MatrixXd& adjacency, const std::vector<std::int32_t>& community,
                        double resolution) {
  const Eigen::VectorXd k = adjacency.rowwise().sum();
  const double two_m = k.sum();
  if (two_m == 0) return 0.0;
  double q = 0;
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i)
    for (Eigen::Index j = 0; j < adjacency.cols(); ++j)
      if (community[i] == community[j]) q += adjacency(i, j) - resolution * k[i] * k[j] / two_m;
  return q / two_m;
}

std::pair<double, std::vector<std::int32_t>> best_partition(const Eigen::MatrixXd& adjacency, double resolution) {
  const auto n = static_cast<std::int32_t>(adjacency.rows());
  std::vector<std::int32_t> rgs(n, 0), best;
  double best_q = -std::numeric_limits<double>::infinity();
  std::function<void(std::int32_t, std::int32_t)> rec = [&](std::int32_t i, std::int32_t max_used) {
    if (i == n) {
      const double q = dense_modularity(adjacency, rgs, resolution);
      if (q > best_q + 1e-12) {
        best_q = q;
        best = rgs;
      }
      return;
    }
    for (std::int32_t c = 0; c <= max_used + 1; ++c) {
      rgs[i] = c;
      rec(i + 1, std::max(max_used, c));
    }
  };
  if (n == 0) return {0.0, {}};
  rgs[0] = 0;
  rec(1, 0);
  return {best_q, best};
}

Result score(std::string_view indicator, const CorpusStore& store, const Params& params) {
  if (store.size() > params.size_guard)
    throw Error(ErrorCode::CorpusTooLarge, std::to_string(store.size()) + " documents exceed the oracle guard of " +
                                               std::to_string(params.size_guard));
  const bool cooc = indicator == "uzzi" || indicator == "lee" || indicator == "foster" || indicator == "wang";
  if (cooc && year_docs(store, params.year).empty())
    throw Error(ErrorCode::NoDocuments, "no documents in year " + std::to_string(params.year));
  if (indicator == "uzzi") return uzzi(store, params);
  if (indicator == "lee") return lee(store, params);
  if (indicator == "foster") return foster(store, params);
  if (indicator == "wang") return wang(store, params);
  if (indicator == "shibayama") return shibayama(store, params);
  if (indicator == "disruption") return disruption(store, params);
  throw Error(ErrorCode::InvalidArgument, "unknown indicator " + std::string(indicator));
}

}  // namespace bibnov::oracle
