#pragma once

#include <istream>
#include <sstream>
#include <string>

#include "rch/graph.hpp"

namespace rch {

/// Reads "n" followed by one "u v" pair per edge.
inline Graph read_graph_text(std::istream& in) {
  long long n = 0;
  if (!(in >> n)) throw ParseError("graph text: missing vertex count");
  if (n < 1 || n > kMaxVertices) throw ParseError("graph text: vertex count must lie in [1, 128]");
  GraphBuilder b(static_cast<int>(n));
  long long u = 0, v = 0;
  while (in >> u) {
    if (!(in >> v)) throw ParseError("graph text: dangling endpoint");
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("graph text: endpoint out of range");
    if (u == v) throw ParseError("graph text: self-loop");
    b.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  if (!in.eof()) throw ParseError("graph text: unexpected token");
  return b.build();
}

inline Graph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return read_graph_text(in);
}

/// Canonical text form, edges in canonical order.
inline std::string to_graph_text(const Graph& g) {
  std::string out = std::to_string(g.order()) + "\n";
  for (const Edge& e : edges(g)) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

inline std::string to_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else {
    out.push_back(126);
    out.push_back(static_cast<char>(63 + ((n >> 12) & 63)));
    out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
    out.push_back(static_cast<char>(63 + (n & 63)));
  }
  int acc = 0, bits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = bits = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>(63 + (acc << (6 - bits))));
  return out;
}

inline Graph from_graph6(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  if (s.rfind(">>graph6<<", 0) == 0) s.erase(0, 10);
  if (s.empty()) throw ParseError("graph6: empty string");
  for (char c : s)
    if (c < 63 || c > 126) throw ParseError("graph6: byte out of range");
  std::size_t pos = 0;
  int n = 0;
  if (s[0] != 126) {
    n = s[0] - 63;
    pos = 1;
  } else {
    if (s.size() < 4 || s[1] == 126) throw ParseError("graph6: unsupported vertex count");
    n = ((s[1] - 63) << 12) | ((s[2] - 63) << 6) | (s[3] - 63);
    pos = 4;
  }
  if (n < 1 || n > kMaxVertices) throw ParseError("graph6: vertex count must lie in [1, 128]");
  const std::size_t need = (static_cast<std::size_t>(n) * (n - 1) / 2 + 5) / 6;
  if (s.size() - pos != need) throw ParseError("graph6: wrong length");
  GraphBuilder b(n);
  std::size_t bit = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      int byte = s[pos + bit / 6] - 63;
      if ((byte >> (5 - bit % 6)) & 1) b.add_edge(i, j);
    }
  }
  return b.build();
}

}  // namespace rch
