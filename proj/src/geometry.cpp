#include "qglab/geometry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qglab {

MetricGraph::MetricGraph(std::vector<Point2> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (edges_.empty()) throw std::invalid_argument("MetricGraph: no edges");
  std::vector<char> used(vertices_.size(), 0);
  for (const Edge& e : edges_) {
    if (e.start < 0 || e.start >= static_cast<int>(vertices_.size()))
      throw std::invalid_argument("MetricGraph: edge start index out of range");
    if (!(e.length > 0.0)) throw std::invalid_argument("MetricGraph: edge length must be positive");
    if (std::abs(e.direction.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("MetricGraph: edge direction must be a unit vector");
    used[e.start] = 1;
    if (e.finite()) {
      // Mark the implicit end vertex as used if it coincides with one.
      const Point2 end = vertices_[e.start] + e.length * e.direction;
      for (std::size_t i = 0; i < vertices_.size(); ++i)
        if ((vertices_[i] - end).norm() < 1e-12) used[i] = 1;
    }
    for (double c : {e.direction.x, e.direction.y})
      if (!std::isfinite(c)) throw std::invalid_argument("MetricGraph: non-finite direction");
  }
  for (const Point2& v : vertices_)
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw std::invalid_argument("MetricGraph: non-finite vertex");
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (!used[i]) throw std::invalid_argument("MetricGraph: isolated vertex");
}

double MetricGraph::edge_distance(Point2 q, int j) const {
  if (j < 0 || j >= static_cast<int>(edges_.size()))
    throw std::out_of_range("MetricGraph: edge index");
  const Edge& e = edges_[j];
  const Point2 a = vertices_[e.start];
  double t = (q - a).dot(e.direction);
  t = std::clamp(t, 0.0, e.length);
  return (q - (a + t * e.direction)).norm();
}

double MetricGraph::distance(Point2 q) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < edges_.size(); ++j)
    best = std::min(best, edge_distance(q, static_cast<int>(j)));
  return best;
}

EdgeFrame MetricGraph::frame(int j) const {
  if (j < 0 || j >= static_cast<int>(edges_.size()))
    throw std::out_of_range("MetricGraph: edge index");
  const Edge& e = edges_[j];
  return EdgeFrame{vertices_[e.start], e.direction, e.direction.perp()};
}

MetricGraph MetricGraph::from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  std::vector<Point2> vertices;
  for (const auto& v : j.at("vertices"))
    vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  std::vector<Edge> edges;
  for (const auto& je : j.at("edges")) {
    Edge e;
    e.start = je.at("start").get<int>();
    if (je.contains("end")) {
      const int end = je.at("end").get<int>();
      if (end < 0 || end >= static_cast<int>(vertices.size()) || end == e.start)
        throw std::invalid_argument("graph json: bad edge end index");
      const Point2 d = vertices[end] - vertices[e.start];
      e.length = d.norm();
      if (e.length <= 0.0) throw std::invalid_argument("graph json: degenerate edge");
      e.direction = d * (1.0 / e.length);
    } else if (je.contains("direction")) {
      const auto& d = je.at("direction");
      Point2 dir{d.at(0).get<double>(), d.at(1).get<double>()};
      const double n = dir.norm();
      if (n <= 0.0) throw std::invalid_argument("graph json: zero direction");
      e.direction = dir * (1.0 / n);
      e.length = std::numeric_limits<double>::infinity();
    } else {
      throw std::invalid_argument("graph json: edge needs \"end\" or \"direction\"");
    }
    edges.push_back(e);
  }
  return MetricGraph(std::move(vertices), std::move(edges));
}

MetricGraph MetricGraph::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

MetricGraph MetricGraph::v_graph(double opening_angle) {
  const double a = 0.5 * opening_angle;
  std::vector<Point2> v = {{0.0, 0.0}};
  std::vector<Edge> e(2);
  e[0].start = 0;
  e[0].direction = {std::cos(a), std::sin(a)};
  e[1].start = 0;
  e[1].direction = {std::cos(a), -std::sin(a)};
  return MetricGraph(std::move(v), std::move(e));
}

MetricGraph MetricGraph::line_graph() {
  std::vector<Point2> v = {{0.0, 0.0}};
  std::vector<Edge> e(2);
  e[0].start = 0;
  e[0].direction = {1.0, 0.0};
  e[1].start = 0;
  e[1].direction = {-1.0, 0.0};
  return MetricGraph(std::move(v), std::move(e));
}

}  // namespace qglab
