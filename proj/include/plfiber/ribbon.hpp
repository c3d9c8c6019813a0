#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "plfiber/errors.hpp"

namespace plfiber {

// Cubic ribbon graph: every vertex lists its three incident half-edges in
// cyclic order; edges pair the half-edges. Faces are traced through the
// rotation system, so genus is determined combinatorially.
class RibbonGraph {
 public:
  RibbonGraph(std::vector<std::array<int, 3>> vertex_rotations,
              std::vector<std::pair<int, int>> edge_pairs)
      : rot_(std::move(vertex_rotations)), edges_(std::move(edge_pairs)) {
    int H = static_cast<int>(rot_.size()) * 3;
    if (static_cast<int>(edges_.size()) * 2 != H)
      throw ParseError("half-edge count is not twice the edge count", 0);
    vertex_of_.assign(H, -1);
    slot_of_.assign(H, -1);
    for (size_t v = 0; v < rot_.size(); ++v) {
      for (int s = 0; s < 3; ++s) {
        int h = rot_[v][s];
        if (h < 0 || h >= H) throw ParseError("half-edge id out of range", 0);
        if (vertex_of_[h] != -1) throw ParseError("half-edge listed twice", 0);
        vertex_of_[h] = static_cast<int>(v);
        slot_of_[h] = s;
      }
    }
    mate_.assign(H, -1);
    edge_of_.assign(H, -1);
    for (size_t e = 0; e < edges_.size(); ++e) {
      auto [x, y] = edges_[e];
      if (x < 0 || x >= H || y < 0 || y >= H || x == y)
        throw ParseError("bad edge pairing", 0);
      if (mate_[x] != -1 || mate_[y] != -1)
        throw ParseError("pairing is not a perfect matching", 0);
      mate_[x] = y;
      mate_[y] = x;
      edge_of_[x] = static_cast<int>(e);
      edge_of_[y] = static_cast<int>(e);
    }
    for (int h = 0; h < H; ++h)
      if (mate_[h] == -1 || vertex_of_[h] == -1)
        throw ParseError("half-edge without mate or vertex", 0);
    trace_faces();
  }

  int num_vertices() const { return static_cast<int>(rot_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_half_edges() const { return num_vertices() * 3; }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  int mate(int h) const { return mate_[h]; }
  int vertex_of(int h) const { return vertex_of_[h]; }
  int edge_of(int h) const { return edge_of_[h]; }
  const std::array<int, 3>& rotation(int v) const { return rot_[v]; }
  const std::pair<int, int>& edge(int e) const { return edges_[e]; }

  // next half-edge counterclockwise at the same vertex
  int next_at_vertex(int h) const {
    int v = vertex_of_[h];
    int s = slot_of_[h];
    return rot_[v][(s + 1) % 3];
  }

  // face traversal step: cross the edge, then turn
  int face_next(int h) const { return next_at_vertex(mate_[h]); }

  // faces as cyclic half-edge sequences
  const std::vector<std::vector<int>>& faces() const { return faces_; }
  int face_of(int h) const { return face_of_[h]; }
  int index_in_face(int h) const { return index_in_face_[h]; }

  int euler_characteristic() const {
    return num_vertices() - num_edges() + num_faces();
  }

  int genus() const {
    int chi = euler_characteristic();
    if ((2 - chi) % 2 != 0) throw ParseError("non-integer genus", 0);
    return (2 - chi) / 2;
  }

  bool connected() const {
    if (rot_.empty()) return false;
    std::vector<char> seen(rot_.size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int s = 0; s < 3; ++s) {
        int w = vertex_of_[mate_[rot_[v][s]]];
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == num_vertices();
  }

  std::string to_text() const {
    std::ostringstream os;
    for (size_t v = 0; v < rot_.size(); ++v)
      os << "v" << v << ": " << rot_[v][0] << " " << rot_[v][1] << " " << rot_[v][2]
         << "\n";
    for (size_t e = 0; e < edges_.size(); ++e)
      os << "e" << e << ": " << edges_[e].first << " " << edges_[e].second << "\n";
    return os.str();
  }

  static RibbonGraph from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::array<int, 3>> rot;
    std::vector<std::pair<int, int>> edges;
    int line_no = 0;
    while (std::getline(is, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ls(line);
      std::string head;
      if (!(ls >> head)) continue;
      if (head.size() < 2 || head.back() != ':')
        throw ParseError("expected 'v<i>:' or 'e<i>:'", line_no);
      char kind = head[0];
      int idx = 0;
      try {
        idx = std::stoi(head.substr(1, head.size() - 2));
      } catch (...) {
        throw ParseError("bad index in '" + head + "'", line_no);
      }
      if (kind == 'v') {
        int a, b, c;
        if (!(ls >> a >> b >> c)) throw ParseError("vertex needs 3 half-edges", line_no);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing tokens after vertex", line_no);
        if (idx != static_cast<int>(rot.size()))
          throw ParseError("vertices must appear in order", line_no);
        rot.push_back({a, b, c});
      } else if (kind == 'e') {
        int a, b;
        if (!(ls >> a >> b)) throw ParseError("edge needs 2 half-edges", line_no);
        if (idx != static_cast<int>(edges.size()))
          throw ParseError("edges must appear in order", line_no);
        edges.emplace_back(a, b);
      } else {
        throw ParseError("unknown record kind '" + std::string(1, kind) + "'", line_no);
      }
    }
    if (rot.empty()) throw ParseError("no vertices", line_no);
    return RibbonGraph(std::move(rot), std::move(edges));
  }

 private:
  void trace_faces() {
    int H = num_half_edges();
    face_of_.assign(H, -1);
    index_in_face_.assign(H, -1);
    faces_.clear();
    for (int h0 = 0; h0 < H; ++h0) {
      if (face_of_[h0] != -1) continue;
      std::vector<int> cyc;
      int h = h0;
      while (face_of_[h] == -1) {
        face_of_[h] = static_cast<int>(faces_.size());
        index_in_face_[h] = static_cast<int>(cyc.size());
        cyc.push_back(h);
        h = face_next(h);
      }
      if (h != h0) throw ParseError("face tracing failed to close", 0);
      faces_.push_back(std::move(cyc));
    }
  }

  std::vector<std::array<int, 3>> rot_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> mate_, vertex_of_, slot_of_, edge_of_;
  std::vector<std::vector<int>> faces_;
  std::vector<int> face_of_, index_in_face_;
};

inline std::pair<int, int> faces_and_genus(const RibbonGraph& g) {
  return {g.num_faces(), g.genus()};
}

// The theta graph: two vertices joined by three parallel edges, planar
// rotation (F = 3, genus 0).
inline RibbonGraph make_theta() {
  return RibbonGraph({{0, 1, 2}, {3, 5, 4}},
                     {{0, 3}, {1, 4}, {2, 5}});
}

// K4 with its planar rotation system (F = 4, genus 0).
inline RibbonGraph make_k4_planar() {
  // vertices 0..3; half-edges 3v..3v+2; edges (0-1, 0-2, 0-3, 1-2, 1-3, 2-3)
  return RibbonGraph(
      {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}},
      {{0, 3}, {1, 6}, {2, 9}, {4, 8}, {5, 10}, {7, 11}});
}

// Petersen graph adjacency as half-edge endpoint lists; rotations searched.
inline std::vector<std::pair<int, int>> petersen_edges() {
  // outer 5-cycle 0..4, inner pentagram 5..9, spokes i -> i+5
  std::vector<std::pair<int, int>> adj;
  for (int i = 0; i < 5; ++i) adj.emplace_back(i, (i + 1) % 5);
  for (int i = 0; i < 5; ++i) adj.emplace_back(5 + i, 5 + (i + 2) % 5);
  for (int i = 0; i < 5; ++i) adj.emplace_back(i, i + 5);
  return adj;
}

// Search vertex rotations of an abstract cubic graph until face tracing
// yields the target genus. Randomized restarts plus local slot swaps;
// the cycle-rank bound is checked first.
inline RibbonGraph find_rotation_system(int num_vertices,
                                        const std::vector<std::pair<int, int>>& adj,
                                        int target_genus, uint64_t seed = 1,
                                        int budget = 20000) {
  int V = num_vertices;
  int E = static_cast<int>(adj.size());
  if (E * 2 != V * 3) throw DomainError("graph is not cubic");
  int cycle_rank = E - V + 1;
  if (target_genus < 0 || target_genus > cycle_rank / 2)
    throw NotFoundError("target genus exceeds the cycle-rank bound (max " +
                        std::to_string(cycle_rank / 2) + ")");

  // assign half-edge ids: 2e -> adj[e].first, 2e+1 -> adj[e].second
  std::vector<std::vector<int>> incident(V);
  std::vector<std::pair<int, int>> pairs;
  for (int e = 0; e < E; ++e) {
    incident[adj[e].first].push_back(2 * e);
    incident[adj[e].second].push_back(2 * e + 1);
    pairs.emplace_back(2 * e, 2 * e + 1);
  }
  for (int v = 0; v < V; ++v)
    if (incident[v].size() != 3) throw DomainError("graph is not cubic");

  std::mt19937_64 rng(seed);
  auto build = [&](const std::vector<std::array<int, 3>>& rot) {
    return RibbonGraph(rot, pairs);
  };
  std::vector<std::array<int, 3>> rot(V);
  auto randomize = [&]() {
    for (int v = 0; v < V; ++v) {
      std::array<int, 3> r{incident[v][0], incident[v][1], incident[v][2]};
      for (int s = 2; s > 0; --s) std::swap(r[s], r[rng() % (s + 1)]);
      rot[v] = r;
    }
  };
  randomize();
  int best = -1;
  for (int iter = 0; iter < budget; ++iter) {
    RibbonGraph g = build(rot);
    int genus = g.genus();
    if (genus == target_genus && g.connected()) return g;
    int score = -std::abs(genus - target_genus);
    if (score > best) {
      best = score;
    } else {
      // local flip: swap two slots of one vertex (a transposition changes
      // the rotation system minimally); occasionally restart
      if (iter % 257 == 256) randomize();
    }
    int v = static_cast<int>(rng() % V);
    int s1 = static_cast<int>(rng() % 3), s2 = static_cast<int>(rng() % 3);
    std::swap(rot[v][s1], rot[v][s2]);
    RibbonGraph g2 = build(rot);
    if (std::abs(g2.genus() - target_genus) > std::abs(genus - target_genus))
      std::swap(rot[v][s1], rot[v][s2]);  // reject worsening moves
  }
  throw NotFoundError("rotation-system search budget exhausted");
}

// The bundled genus-3 base: the Petersen graph with a searched maximum-genus
// rotation system (one face, chi = -4).
inline RibbonGraph make_petersen_genus3() {
  return find_rotation_system(10, petersen_edges(), 3, 20240817);
}

}  // namespace plfiber
