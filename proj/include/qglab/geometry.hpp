#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace qglab {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Point2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  // Rotation by +90 degrees.
  Point2 perp() const { return {-y, x}; }
};

inline Point2 operator*(double s, Point2 p) { return p * s; }

// Straight edge: half-open ray or segment from a start vertex. `length` may
// be +infinity for a ray.
struct Edge {
  int start = 0;
  Point2 direction;  // unit vector
  double length = std::numeric_limits<double>::infinity();

  bool finite() const { return std::isfinite(length); }
};

// Orthonormal frame attached to an edge: x along the tangent from the
// origin vertex, y along the (left) normal.
struct EdgeFrame {
  Point2 origin;
  Point2 tangent;
  Point2 normal;

  // Global point -> edge coordinates (x along, y across).
  std::pair<double, double> to_local(Point2 q) const {
    const Point2 d = q - origin;
    return {d.dot(tangent), d.dot(normal)};
  }
  Point2 from_local(double x, double y) const {
    return origin + x * tangent + y * normal;
  }
};

// Planar embedded metric graph with straight edges. Immutable after
// construction; all member functions are const and thread-safe.
class MetricGraph {
 public:
  MetricGraph(std::vector<Point2> vertices, std::vector<Edge> edges);

  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Exact min over edges of the point-to-segment/ray distance. Total and
  // 1-Lipschitz in q.
  double distance(Point2 q) const;

  // Distance from q to edge j alone.
  double edge_distance(Point2 q, int j) const;

  EdgeFrame frame(int j) const;

  // Parse the graph description format:
  //   {"vertices": [[x,y],...],
  //    "edges": [{"start": i, "end": j} | {"start": i, "direction": [dx,dy]}]}
  static MetricGraph from_json_text(const std::string& text);
  static MetricGraph from_json_file(const std::string& path);

  // Two rays from the origin, symmetric about the +x axis, separated by
  // `opening_angle`.
  static MetricGraph v_graph(double opening_angle);

  // Two opposite rays through the origin: the full line y = 0.
  static MetricGraph line_graph();

 private:
  std::vector<Point2> vertices_;
  std::vector<Edge> edges_;
};

}  // namespace qglab
