#ifndef MIXEDMI_KNN_HPP
#define MIXEDMI_KNN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "mixedmi/dataset.hpp"

namespace mixedmi {

/// Inclusive counts points at distance <= r, Strict at distance < r.
/// Boundary membership is exact floating-point equality; no tolerance.
enum class CountMode { Inclusive, Strict };

/// Mixed Chebyshev distance: per-coordinate absolute difference for numeric
/// columns, 0/1 for categorical, combined by max.
inline double mixed_distance(const Dataset& ds, std::size_t i, std::size_t j) {
  if (i >= ds.n_rows() || j >= ds.n_rows()) {
    throw std::out_of_range("mixed_distance: row index");
  }
  double dist = 0.0;
  for (std::size_t c = 0; c < ds.n_cols(); ++c) {
    double coord;
    if (ds.column(c).kind == ColumnKind::Categorical) {
      coord = ds.code_at(i, c) == ds.code_at(j, c) ? 0.0 : 1.0;
    } else {
      coord = std::abs(ds.numeric_at(i, c) - ds.numeric_at(j, c));
    }
    if (coord > dist) dist = coord;
  }
  return dist;
}

/// k-th smallest distance from row i to any other row (order statistic with
/// multiplicity). Brute force; this is the contractual reference.
inline double knn_radius(const Dataset& ds, std::size_t i, std::size_t k) {
  const std::size_t n = ds.n_rows();
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("knn_radius: k must satisfy 1 <= k <= n-1");
  }
  std::vector<double> dists;
  dists.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) dists.push_back(mixed_distance(ds, i, j));
  }
  std::nth_element(dists.begin(), dists.begin() + (k - 1), dists.end());
  return dists[k - 1];
}

/// Number of rows j != i with dist(i,j) <= r (Inclusive) or < r (Strict).
inline std::size_t count_within(const Dataset& ds, std::size_t i, double r,
                                CountMode mode) {
  if (r < 0.0) throw std::invalid_argument("count_within: negative radius");
  std::size_t count = 0;
  for (std::size_t j = 0; j < ds.n_rows(); ++j) {
    if (j == i) continue;
    const double d = mixed_distance(ds, i, j);
    if (mode == CountMode::Inclusive ? d <= r : d < r) ++count;
  }
  return count;
}

/// Per-point neighborhood summary in the joint space and the XZ/YZ/Z
/// subspaces, all at the joint kNN radius rho with inclusive counting.
struct NeighborProfile {
  double rho = 0.0;
  std::size_t tilde_k = 0;
  std::size_t n_xz = 0;
  std::size_t n_yz = 0;
  std::size_t n_z = 0;

  friend bool operator==(const NeighborProfile&,
                         const NeighborProfile&) = default;
};

namespace detail {

/// Dense point matrix with categorical columns expanded to 0/1 indicator
/// coordinates; the l_inf metric on it equals mixed_distance exactly.
struct ExpandedPoints {
  std::size_t n = 0;
  std::size_t dims = 0;
  std::vector<double> values;  // row-major n x dims

  const double* row(std::size_t i) const { return values.data() + i * dims; }

  static ExpandedPoints from(const Dataset& ds) {
    ExpandedPoints pts;
    pts.n = ds.n_rows();
    std::size_t dims = 0;
    for (std::size_t j = 0; j < ds.n_cols(); ++j) {
      dims += ds.column(j).kind == ColumnKind::Categorical
                  ? ds.column(j).data->alphabet.size()
                  : 1;
    }
    pts.dims = dims;
    pts.values.assign(pts.n * dims, 0.0);
    for (std::size_t i = 0; i < pts.n; ++i) {
      double* out = pts.values.data() + i * dims;
      std::size_t c = 0;
      for (std::size_t j = 0; j < ds.n_cols(); ++j) {
        const auto& col = ds.column(j);
        if (col.kind == ColumnKind::Categorical) {
          out[c + static_cast<std::size_t>(ds.code_at(i, j))] = 1.0;
          c += col.data->alphabet.size();
        } else {
          out[c++] = ds.numeric_at(i, j);
        }
      }
    }
    return pts;
  }
};

inline double chebyshev(const double* a, const double* b, std::size_t dims) {
  double dist = 0.0;
  for (std::size_t c = 0; c < dims; ++c) {
    const double coord = std::abs(a[c] - b[c]);
    if (coord > dist) dist = coord;
  }
  return dist;
}

/// kd-tree over expanded coordinates supporting exact kNN radii and exact
/// inclusive/strict radius counts under l_inf. Pruning uses bounding boxes;
/// IEEE subtraction is monotone, so box bounds never misclassify a point
/// relative to the distance the brute-force path would compute.
class KdTree {
 public:
  explicit KdTree(ExpandedPoints pts, std::size_t leaf_size = 16)
      : pts_(std::move(pts)), leaf_size_(leaf_size) {
    order_.resize(pts_.n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    nodes_.reserve(2 * pts_.n / leaf_size_ + 8);
    root_ = build(0, pts_.n);
  }

  double knn_radius(std::size_t i, std::size_t k) const {
    if (k < 1 || k > pts_.n - 1) {
      throw std::invalid_argument("knn_radius: k must satisfy 1 <= k <= n-1");
    }
    std::priority_queue<double> best;  // max-heap of the k smallest distances
    search_knn(root_, i, k, best);
    return best.top();
  }

  std::size_t count_within(std::size_t i, double r, CountMode mode) const {
    if (r < 0.0) throw std::invalid_argument("count_within: negative radius");
    std::size_t total = count(root_, i, r, mode);
    // The query point itself matches whenever 0 <= r (inclusive) or 0 < r.
    if (mode == CountMode::Inclusive || r > 0.0) --total;
    return total;
  }

  std::size_t size() const { return pts_.n; }

 private:
  struct Node {
    std::size_t begin = 0, end = 0;  // range in order_
    int left = -1, right = -1;
    std::size_t axis = 0;
    std::vector<double> lo, hi;  // bounding box
  };

  int build(std::size_t begin, std::size_t end) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    Node& node = nodes_.back();
    node.begin = begin;
    node.end = end;
    node.lo.assign(pts_.dims, std::numeric_limits<double>::infinity());
    node.hi.assign(pts_.dims, -std::numeric_limits<double>::infinity());
    for (std::size_t t = begin; t < end; ++t) {
      const double* p = pts_.row(order_[t]);
      for (std::size_t c = 0; c < pts_.dims; ++c) {
        node.lo[c] = std::min(node.lo[c], p[c]);
        node.hi[c] = std::max(node.hi[c], p[c]);
      }
    }
    if (end - begin <= leaf_size_) return id;

    // Split on the widest axis at the midpoint of the range.
    std::size_t axis = 0;
    double width = -1.0;
    for (std::size_t c = 0; c < pts_.dims; ++c) {
      const double w = nodes_[id].hi[c] - nodes_[id].lo[c];
      if (w > width) {
        width = w;
        axis = c;
      }
    }
    if (width <= 0.0) return id;  // all points identical: keep as leaf

    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid,
                     order_.begin() + end,
                     [&](std::size_t a, std::size_t b) {
                       return pts_.row(a)[axis] < pts_.row(b)[axis];
                     });
    nodes_[id].axis = axis;
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  double box_min_dist(const Node& node, const double* q) const {
    double dist = 0.0;
    for (std::size_t c = 0; c < pts_.dims; ++c) {
      const double below = node.lo[c] - q[c];
      const double above = q[c] - node.hi[c];
      const double coord = std::max({below, above, 0.0});
      if (coord > dist) dist = coord;
    }
    return dist;
  }

  double box_max_dist(const Node& node, const double* q) const {
    double dist = 0.0;
    for (std::size_t c = 0; c < pts_.dims; ++c) {
      const double coord = std::max(q[c] - node.lo[c], node.hi[c] - q[c]);
      if (coord > dist) dist = coord;
    }
    return dist;
  }

  void search_knn(int id, std::size_t query, std::size_t k,
                  std::priority_queue<double>& best) const {
    const Node& node = nodes_[id];
    const double* q = pts_.row(query);
    if (best.size() == k && box_min_dist(node, q) > best.top()) return;
    if (node.left < 0) {
      for (std::size_t t = node.begin; t < node.end; ++t) {
        const std::size_t j = order_[t];
        if (j == query) continue;
        const double d = chebyshev(q, pts_.row(j), pts_.dims);
        if (best.size() < k) {
          best.push(d);
        } else if (d < best.top()) {
          best.pop();
          best.push(d);
        }
      }
      return;
    }
    // Visit the child containing the query's coordinate first.
    const std::size_t axis = node.axis;
    const bool left_first =
        q[axis] <= nodes_[node.left].hi[axis];
    const int first = left_first ? node.left : node.right;
    const int second = left_first ? node.right : node.left;
    search_knn(first, query, k, best);
    search_knn(second, query, k, best);
  }

  // Counts matches including the query point itself.
  std::size_t count(int id, std::size_t query, double r, CountMode mode) const {
    const Node& node = nodes_[id];
    const double* q = pts_.row(query);
    const double lo = box_min_dist(node, q);
    if (mode == CountMode::Inclusive ? lo > r : lo >= r) return 0;
    const double hi = box_max_dist(node, q);
    if (mode == CountMode::Inclusive ? hi <= r : hi < r) {
      return node.end - node.begin;
    }
    if (node.left < 0) {
      std::size_t c = 0;
      for (std::size_t t = node.begin; t < node.end; ++t) {
        const double d = chebyshev(q, pts_.row(order_[t]), pts_.dims);
        if (mode == CountMode::Inclusive ? d <= r : d < r) ++c;
      }
      return c;
    }
    return count(node.left, query, r, mode) +
           count(node.right, query, r, mode);
  }

  ExpandedPoints pts_;
  std::size_t leaf_size_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

/// One projection's neighbor-query surface: brute force or kd-tree, with
/// bit-identical results by construction.
class SubspaceIndex {
 public:
  SubspaceIndex(const Dataset& ds, bool accelerated)
      : ds_(&ds) {
    if (accelerated) tree_.emplace(ExpandedPoints::from(ds));
  }

  double knn_radius(std::size_t i, std::size_t k) const {
    return tree_ ? tree_->knn_radius(i, k) : mixedmi::knn_radius(*ds_, i, k);
  }

  std::size_t count_within(std::size_t i, double r, CountMode mode) const {
    return tree_ ? tree_->count_within(i, r, mode)
                 : mixedmi::count_within(*ds_, i, r, mode);
  }

 private:
  const Dataset* ds_;
  std::optional<KdTree> tree_;
};

}  // namespace detail

/// Shared counting core: joint-space kNN radii plus inclusive/strict counts
/// in the XZ, YZ and Z projections, behind either backend.
class NeighborEngine {
 public:
  NeighborEngine(const Dataset& ds, const RoleAssignment& roles,
                 bool accelerated = true)
      : n_(ds.n_rows()), z_empty_(roles.z_cols.empty()) {
    validate_roles(ds, roles);
    auto concat = [](std::initializer_list<const std::vector<std::size_t>*> gs) {
      std::vector<std::size_t> out;
      for (const auto* g : gs) out.insert(out.end(), g->begin(), g->end());
      return out;
    };
    joint_ds_.emplace(project(
        ds, concat({&roles.x_cols, &roles.y_cols, &roles.z_cols})));
    xz_ds_.emplace(project(ds, concat({&roles.x_cols, &roles.z_cols})));
    yz_ds_.emplace(project(ds, concat({&roles.y_cols, &roles.z_cols})));
    if (!z_empty_) z_ds_.emplace(project(ds, roles.z_cols));

    joint_.emplace(*joint_ds_, accelerated);
    xz_.emplace(*xz_ds_, accelerated);
    yz_.emplace(*yz_ds_, accelerated);
    if (!z_empty_) z_.emplace(*z_ds_, accelerated);
  }

  std::size_t n() const { return n_; }
  bool z_empty() const { return z_empty_; }

  double knn_radius(std::size_t i, std::size_t k) const {
    return joint_->knn_radius(i, k);
  }
  std::size_t count_joint(std::size_t i, double r, CountMode m) const {
    return joint_->count_within(i, r, m);
  }
  std::size_t count_xz(std::size_t i, double r, CountMode m) const {
    return xz_->count_within(i, r, m);
  }
  std::size_t count_yz(std::size_t i, double r, CountMode m) const {
    return yz_->count_within(i, r, m);
  }
  /// Z-subspace count; in the MI case (empty z) returns n for Inclusive
  /// mode, matching the reduction that fixes n_{Z,i} = n.
  std::size_t count_z(std::size_t i, double r, CountMode m) const {
    if (z_empty_) return m == CountMode::Inclusive ? n_ : n_ - 1;
    return z_->count_within(i, r, m);
  }

  NeighborProfile profile(std::size_t i, std::size_t k) const {
    NeighborProfile p;
    p.rho = knn_radius(i, k);
    p.tilde_k = count_joint(i, p.rho, CountMode::Inclusive);
    p.n_xz = count_xz(i, p.rho, CountMode::Inclusive);
    p.n_yz = count_yz(i, p.rho, CountMode::Inclusive);
    p.n_z = count_z(i, p.rho, CountMode::Inclusive);
    return p;
  }

 private:
  std::size_t n_;
  bool z_empty_;
  std::optional<Dataset> joint_ds_, xz_ds_, yz_ds_, z_ds_;
  std::optional<detail::SubspaceIndex> joint_, xz_, yz_, z_;
};

inline NeighborProfile neighbor_profile(const Dataset& ds,
                                        const RoleAssignment& roles,
                                        std::size_t i, std::size_t k,
                                        bool accelerated = true) {
  return NeighborEngine(ds, roles, accelerated).profile(i, k);
}

inline std::vector<NeighborProfile> batch_profiles(const Dataset& ds,
                                                   const RoleAssignment& roles,
                                                   std::size_t k,
                                                   bool accelerated = true) {
  NeighborEngine engine(ds, roles, accelerated);
  std::vector<NeighborProfile> out;
  out.reserve(ds.n_rows());
  for (std::size_t i = 0; i < ds.n_rows(); ++i) out.push_back(engine.profile(i, k));
  return out;
}

}  // namespace mixedmi

#endif  // MIXEDMI_KNN_HPP
