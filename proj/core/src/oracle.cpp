#include "grepair/oracle.hpp"

#include <string>

#include "grepair/error.hpp"

namespace grepair {

namespace {

[[noreturn]] void bad_index(Vertex v, int i, int deg) {
  throw QueryViolation("neighbor index " + std::to_string(i) + " of vertex " + std::to_string(v) +
                       " outside 1.." + std::to_string(deg));
}

}  // namespace

int OracleHandle::degree(Vertex v) {
  bump();
  return static_cast<int>(g_->neighbors(v).size());
}

Vertex OracleHandle::neighbor(Vertex v, int i) {
  bump();
  auto list = g_->neighbors(v);
  if (i < 1 || static_cast<std::size_t>(i) > list.size()) bad_index(v, i, static_cast<int>(list.size()));
  return list[i - 1];
}

int OracleHandle::out_degree(Vertex v) {
  bump();
  return static_cast<int>(g_->out_neighbors(v).size());
}

Vertex OracleHandle::out_neighbor(Vertex v, int i) {
  bump();
  auto list = g_->out_neighbors(v);
  if (i < 1 || static_cast<std::size_t>(i) > list.size()) bad_index(v, i, static_cast<int>(list.size()));
  return list[i - 1];
}

int OracleHandle::in_degree(Vertex v) {
  bump();
  return static_cast<int>(g_->in_neighbors(v).size());
}

Vertex OracleHandle::in_neighbor(Vertex v, int i) {
  bump();
  auto list = g_->in_neighbors(v);
  if (i < 1 || static_cast<std::size_t>(i) > list.size()) bad_index(v, i, static_cast<int>(list.size()));
  return list[i - 1];
}

bool probe_edge(OracleHandle& h, Vertex u, Vertex v) {
  Vertex a = u < v ? u : v;
  Vertex b = u < v ? v : u;
  int lo = 1, hi = h.degree(a);
  while (lo <= hi) {
    int mid = lo + (hi - lo) / 2;
    Vertex w = h.neighbor(a, mid);
    if (w == b) return true;
    if (w < b)
      lo = mid + 1;
    else
      hi = mid - 1;
  }
  return false;
}

bool probe_arc(OracleHandle& h, Vertex u, Vertex v) {
  int lo = 1, hi = h.out_degree(u);
  while (lo <= hi) {
    int mid = lo + (hi - lo) / 2;
    Vertex w = h.out_neighbor(u, mid);
    if (w == v) return true;
    if (w < v)
      lo = mid + 1;
    else
      hi = mid - 1;
  }
  return false;
}

}  // namespace grepair
