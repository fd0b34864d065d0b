#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "rateless/random.hpp"

namespace rateless {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Square observation window [0, side)^2, optionally with wrap-around edges.
struct Window {
  double side = 20.0;
  bool wraparound = true;

  void validate() const;
};

// Euclidean distance; with wraparound each coordinate difference is reduced
// to [-side/2, side/2] first.
double torus_distance(Point p, Point q, const Window& window);

// Homogeneous PPP on the window. Realizations with fewer than two points are
// redrawn, since interference needs at least one other base station.
std::vector<Point> sample_ppp(double intensity, const Window& window, Rng& rng);

// Index of the point in `sites` closest to `q` under the window metric.
class NearestSite {
 public:
  NearestSite(std::span<const Point> sites, const Window& window);
  std::size_t operator()(Point q) const;

 private:
  std::vector<Point> sites_;
  Window window_;
  int cells_per_side_;
  double cell_size_;
  std::vector<std::vector<std::size_t>> buckets_;
};

// One user per base station, uniform in that station's Voronoi cell.
// Uniform points are drawn over the whole window and each cell keeps the
// first point that lands in it, which is uniform on the cell and independent
// across cells. Throws SamplingError when 10^6 consecutive draws fill no new
// cell.
std::vector<Point> place_users(std::span<const Point> bs_points, const Window& window, Rng& rng);

// Dense matrix of distance^-alpha. Row i holds user i, column k base station k.
class PathlossMatrix {
 public:
  PathlossMatrix() = default;
  PathlossMatrix(std::size_t n, std::vector<double> values);

  std::size_t size() const { return n_; }
  double operator()(std::size_t user, std::size_t bs) const { return values_[user * n_ + bs]; }
  std::span<const double> row(std::size_t user) const {
    return {values_.data() + user * n_, n_};
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

PathlossMatrix build_pathloss(std::span<const Point> bs_points, std::span<const Point> user_points,
                              double alpha, const Window& window);

// Immutable snapshot of one network: BS i serves user i.
class NetworkRealization {
 public:
  // Samples the PPP, places users and builds the path-loss table.
  static NetworkRealization generate(double intensity, const Window& window, double alpha,
                                     Rng& rng);
  // Builds a realization from explicit coordinates (used for hand-made layouts).
  static NetworkRealization from_points(std::vector<Point> bs_points,
                                        std::vector<Point> user_points, const Window& window,
                                        double alpha);

  std::size_t size() const { return bs_points_.size(); }
  const std::vector<Point>& bs_points() const { return bs_points_; }
  const std::vector<Point>& user_points() const { return user_points_; }
  const std::vector<double>& link_distance() const { return link_distance_; }
  const PathlossMatrix& pathloss() const { return pathloss_; }
  const Window& window() const { return window_; }
  double alpha() const { return alpha_; }

  // True when every user's nearest base station is its serving one.
  bool users_in_own_cells() const;

  // CSV with columns bs_id, bs_x, bs_y, user_x, user_y, D.
  void write_csv(std::ostream& out) const;

 private:
  std::vector<Point> bs_points_;
  std::vector<Point> user_points_;
  std::vector<double> link_distance_;
  PathlossMatrix pathloss_;
  Window window_;
  double alpha_ = 0.0;
};

}  // namespace rateless
