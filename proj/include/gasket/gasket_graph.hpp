#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

namespace gasket {

/// Family parameter N with every derived constant used elsewhere.
struct GasketParams {
  int N = 1;
  std::int64_t c = 5;  // Laplacian renormalization, 3N + 2N^2
  double rho = 5.0 / 3.0;  // energy renormalization, c / 3N
  double alpha = 0.0;
  double d_H = 0.0;  // Hausdorff dimension w.r.t. the geodesic metric
  double d_w = 0.0;  // walk dimension
  double d_s = 0.0;  // spectral dimension
};

inline GasketParams params(int N) {
  if (N < 1) throw std::invalid_argument("params: N must be positive");
  GasketParams p;
  p.N = N;
  p.c = 3LL * N + 2LL * N * N;
  p.rho = static_cast<double>(p.c) / (3.0 * N);
  const double logN1 = std::log(static_cast<double>(N + 1));
  p.alpha = std::log(p.rho) / logN1;
  p.d_H = std::log(3.0 * N) / logN1;
  p.d_w = p.alpha + p.d_H;
  p.d_s = 2.0 * p.d_H / p.d_w;
  return p;
}

inline std::int64_t vertex_count(int N, int n) {
  // |V_{n+1}| = 3N|V_n| - 3N with |V_0| = 3, solved in closed form.
  std::int64_t pow = 1;
  for (int i = 0; i < n; ++i) pow *= 3LL * N;
  return (3LL * N + (6LL * N - 3) * pow) / (3LL * N - 1);
}

/// Level-n approximating graph. Vertices are equivalence classes of cell
/// addresses; ids are dense integers ordered by the lexicographically
/// smallest address in each class.
struct LevelGraph {
  int N = 1;
  int level = 0;
  std::int64_t num_vertices = 0;
  std::vector<std::pair<int, int>> edges;          // deduplicated, u < v
  std::array<int, 3> boundary{0, 1, 2};            // ids of V_0 corners
  std::vector<int> parent_map;                     // V_{n-1} id -> V_n id
  std::vector<std::vector<int>> adjacency;

  int degree(int v) const { return static_cast<int>(adjacency.at(v).size()); }
};

namespace detail {

// A vertex of V_n is the word w (cell address, letters 1..3N) extended by the
// corner letter c*N, with an implied infinite tail of N's. The one gluing
// rule rewrites ...(i)(2N)(N...N) <-> ...(i-1)(3N)(N...N); each class has at
// most two such forms, and the smaller one is canonical.
inline std::vector<int> canonical(std::vector<int> s, int N) {
  const int M = 3 * N;
  std::vector<int> best = s;
  const int L = static_cast<int>(s.size());
  for (int p = 0; p + 1 < L; ++p) {
    bool tail_n = true;
    for (int j = p + 2; j < L; ++j)
      if (s[j] != N) { tail_n = false; break; }
    if (!tail_n) continue;
    std::vector<int> alt = s;
    if (s[p + 1] == 2 * N) {
      alt[p] = (s[p] > 1) ? s[p] - 1 : M;
      alt[p + 1] = 3 * N;
    } else if (s[p + 1] == 3 * N) {
      alt[p] = (s[p] < M) ? s[p] + 1 : 1;
      alt[p + 1] = 2 * N;
    } else {
      continue;
    }
    if (alt < best) best = alt;
  }
  return best;
}

}  // namespace detail

inline LevelGraph build(int N, int n) {
  if (N < 1) throw std::invalid_argument("build: N must be positive");
  if (n < 0) throw std::invalid_argument("build: level must be nonnegative");
  if (vertex_count(N, n) > 10'000'000)
    throw std::invalid_argument("build: level too large, vertex guard exceeded");

  const int M = 3 * N;
  std::map<std::vector<int>, int> ids;
  auto vertex_id = [&](std::vector<int> s) {
    auto key = detail::canonical(std::move(s), N);
    auto [it, inserted] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
    return it->second;
  };

  LevelGraph g;
  g.N = N;
  g.level = n;

  std::set<std::pair<int, int>> edge_set;
  std::vector<int> word(n, 1);
  bool done = false;
  while (!done) {
    std::array<int, 3> corner_ids{};
    for (int c = 1; c <= 3; ++c) {
      std::vector<int> s = word;
      s.push_back(c * N);
      corner_ids[c - 1] = vertex_id(std::move(s));
    }
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        if (corner_ids[a] != corner_ids[b])
          edge_set.emplace(std::min(corner_ids[a], corner_ids[b]),
                           std::max(corner_ids[a], corner_ids[b]));
    // next word in lexicographic order
    done = true;
    for (int i = n - 1; i >= 0; --i) {
      if (word[i] < M) {
        ++word[i];
        std::fill(word.begin() + i + 1, word.end(), 1);
        done = false;
        break;
      }
    }
  }

  // Renumber so ids follow the canonical-address order.
  std::vector<int> remap(ids.size());
  {
    int next = 0;
    for (const auto& [addr, old_id] : ids) remap[old_id] = next++;
  }
  g.num_vertices = static_cast<std::int64_t>(ids.size());
  g.edges.reserve(edge_set.size());
  for (auto [u, v] : edge_set) {
    int a = remap[u], b = remap[v];
    if (a > b) std::swap(a, b);
    g.edges.emplace_back(a, b);
  }
  std::sort(g.edges.begin(), g.edges.end());

  for (int c = 1; c <= 3; ++c) {
    std::vector<int> s{c * N};
    s.insert(s.end(), n, N);
    g.boundary[c - 1] = remap[vertex_id(std::move(s))];
  }

  if (n >= 1) {
    // V_{n-1} corner (u, c) is the corner v1 of the child cell u.(cN).
    // Re-enumerate the parent's canonical addresses; the id assignment below
    // reproduces build(N, n-1) because both order by canonical address.
    std::map<std::vector<int>, int> pids;
    std::vector<int> pword(n - 1, 1);
    bool pdone = false;
    while (!pdone) {
      for (int c = 1; c <= 3; ++c) {
        std::vector<int> s = pword;
        s.push_back(c * N);
        auto key = detail::canonical(std::move(s), N);
        pids.emplace(std::move(key), 0);
      }
      pdone = true;
      for (int i = n - 2; i >= 0; --i) {
        if (pword[i] < M) {
          ++pword[i];
          std::fill(pword.begin() + i + 1, pword.end(), 1);
          pdone = false;
          break;
        }
      }
    }
    int next = 0;
    for (auto& [addr, pid] : pids) pid = next++;
    g.parent_map.assign(pids.size(), -1);
    for (const auto& [addr, pid] : pids) {
      std::vector<int> s = addr;  // length n, last letter is the corner c*N
      s.push_back(N);             // corner v1 of the child cell
      auto key = detail::canonical(std::move(s), N);
      auto it = ids.find(key);
      if (it == ids.end()) throw std::runtime_error("build: parent embedding failed");
      g.parent_map[pid] = remap[it->second];
    }
  }

  g.adjacency.assign(g.num_vertices, {});
  for (auto [u, v] : g.edges) {
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  return g;
}

inline int graph_distance(const LevelGraph& g, int x, int y) {
  if (x < 0 || y < 0 || x >= g.num_vertices || y >= g.num_vertices)
    throw std::invalid_argument("graph_distance: vertex id out of range");
  if (x == y) return 0;
  std::vector<int> dist(g.num_vertices, -1);
  std::queue<int> q;
  dist[x] = 0;
  q.push(x);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : g.adjacency[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        if (v == y) return dist[v];
        q.push(v);
      }
    }
  }
  throw std::runtime_error("graph_distance: graph not connected");
}

/// All graph distances from a source vertex.
inline std::vector<int> bfs_distances(const LevelGraph& g, int x) {
  std::vector<int> dist(g.num_vertices, -1);
  std::queue<int> q;
  dist[x] = 0;
  q.push(x);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : g.adjacency[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  return dist;
}

inline int diameter(const LevelGraph& g) {
  int d = 0;
  for (int v = 0; v < g.num_vertices; ++v)
    for (int dv : bfs_distances(g, v)) d = std::max(d, dv);
  return d;
}

/// Geodesic metric restricted to V_n: d_*(x,y) = (N+1)^{-n} d_n(x,y).
inline double geodesic_distance(const LevelGraph& g, int x, int y) {
  return std::pow(static_cast<double>(g.N + 1), -g.level) * graph_distance(g, x, y);
}

}  // namespace gasket
