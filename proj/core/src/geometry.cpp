#include "rateless/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include <fmt/format.h>

#include "rateless/errors.hpp"

namespace rateless {

namespace {

constexpr std::size_t kEntryWarningThreshold = 100'000'000;
constexpr std::size_t kRejectionBudget = 1'000'000;

double wrap_delta(double d, const Window& window) {
  if (!window.wraparound) return d;
  const double side = window.side;
  d -= side * std::round(d / side);
  return d;
}

double squared_distance(Point p, Point q, const Window& window) {
  const double dx = wrap_delta(p.x - q.x, window);
  const double dy = wrap_delta(p.y - q.y, window);
  return dx * dx + dy * dy;
}

}  // namespace

void Window::validate() const {
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw DomainError("Window: side must be positive");
  }
}

double torus_distance(Point p, Point q, const Window& window) {
  return std::sqrt(squared_distance(p, q, window));
}

std::vector<Point> sample_ppp(double intensity, const Window& window, Rng& rng) {
  window.validate();
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw DomainError("sample_ppp: intensity must be positive");
  }
  std::poisson_distribution<long long> count_dist(intensity * window.side * window.side);
  std::uniform_real_distribution<double> coord(0.0, window.side);
  long long count = 0;
  do {
    count = count_dist(rng);
  } while (count < 2);

  std::vector<Point> points(static_cast<std::size_t>(count));
  for (auto& p : points) {
    p.x = coord(rng);
    p.y = coord(rng);
  }
  return points;
}

NearestSite::NearestSite(std::span<const Point> sites, const Window& window)
    : sites_(sites.begin(), sites.end()), window_(window) {
  window_.validate();
  if (sites_.empty()) throw DomainError("NearestSite: no sites");
  // About one site per bucket.
  cells_per_side_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(sites_.size()))));
  cell_size_ = window_.side / cells_per_side_;
  buckets_.resize(static_cast<std::size_t>(cells_per_side_) * cells_per_side_);
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    const int cx = std::clamp(static_cast<int>(sites_[i].x / cell_size_), 0, cells_per_side_ - 1);
    const int cy = std::clamp(static_cast<int>(sites_[i].y / cell_size_), 0, cells_per_side_ - 1);
    buckets_[static_cast<std::size_t>(cy) * cells_per_side_ + cx].push_back(i);
  }
}

std::size_t NearestSite::operator()(Point q) const {
  const int g = cells_per_side_;
  const int qx = std::clamp(static_cast<int>(q.x / cell_size_), 0, g - 1);
  const int qy = std::clamp(static_cast<int>(q.y / cell_size_), 0, g - 1);

  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  auto visit = [&](int cx, int cy) {
    if (window_.wraparound) {
      cx = ((cx % g) + g) % g;
      cy = ((cy % g) + g) % g;
    } else if (cx < 0 || cy < 0 || cx >= g || cy >= g) {
      return;
    }
    for (std::size_t idx : buckets_[static_cast<std::size_t>(cy) * g + cx]) {
      const double d2 = squared_distance(q, sites_[idx], window_);
      if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
        best_d2 = d2;
        best = idx;
      }
    }
  };

  for (int ring = 0;; ++ring) {
    if (2 * ring + 1 >= g) {
      // The ring covers the whole grid: finish with an exhaustive scan.
      for (std::size_t idx = 0; idx < sites_.size(); ++idx) {
        const double d2 = squared_distance(q, sites_[idx], window_);
        if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
          best_d2 = d2;
          best = idx;
        }
      }
      return best;
    }
    if (ring == 0) {
      visit(qx, qy);
    } else {
      for (int dx = -ring; dx <= ring; ++dx) {
        visit(qx + dx, qy - ring);
        visit(qx + dx, qy + ring);
      }
      for (int dy = -ring + 1; dy <= ring - 1; ++dy) {
        visit(qx - ring, qy + dy);
        visit(qx + ring, qy + dy);
      }
    }
    // Everything outside the searched square is at least ring * cell_size away.
    const double reach = ring * cell_size_;
    if (best_d2 < reach * reach) return best;
  }
}

std::vector<Point> place_users(std::span<const Point> bs_points, const Window& window, Rng& rng) {
  window.validate();
  if (bs_points.size() < 2) throw DomainError("place_users: need at least two base stations");

  const NearestSite nearest(bs_points, window);
  std::uniform_real_distribution<double> coord(0.0, window.side);
  std::vector<Point> users(bs_points.size());
  std::vector<char> filled(bs_points.size(), 0);
  std::size_t remaining = bs_points.size();
  std::size_t since_last_fill = 0;

  while (remaining > 0) {
    Point p;
    p.x = coord(rng);
    p.y = coord(rng);
    const std::size_t cell = nearest(p);
    if (!filled[cell]) {
      filled[cell] = 1;
      users[cell] = p;
      --remaining;
      since_last_fill = 0;
    } else if (++since_last_fill > kRejectionBudget) {
      const auto missing = static_cast<std::size_t>(
          std::find(filled.begin(), filled.end(), 0) - filled.begin());
      throw SamplingError(fmt::format(
          "place_users: {} draws without reaching {} empty cell(s), e.g. BS {} at ({:.6g}, "
          "{:.6g}); its Voronoi cell is pathologically small",
          kRejectionBudget, remaining, missing, bs_points[missing].x, bs_points[missing].y));
    }
  }
  return users;
}

PathlossMatrix::PathlossMatrix(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (values_.size() != n_ * n_) throw DomainError("PathlossMatrix: size mismatch");
}

PathlossMatrix build_pathloss(std::span<const Point> bs_points, std::span<const Point> user_points,
                              double alpha, const Window& window) {
  if (!(alpha > 2.0)) throw DomainError("build_pathloss: alpha must exceed 2");
  if (bs_points.size() != user_points.size()) {
    throw DomainError("build_pathloss: one user per base station expected");
  }
  const std::size_t n = bs_points.size();
  if (n * n > kEntryWarningThreshold) {
    fmt::print(stderr, "warning: path-loss table has {} entries (> {})\n", n * n,
               kEntryWarningThreshold);
  }
  std::vector<double> values(n * n);
  const double half_alpha = 0.5 * alpha;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double d2 = squared_distance(user_points[i], bs_points[k], window);
      if (d2 == 0.0) {
        throw SamplingError(fmt::format("build_pathloss: user {} coincides with BS {}", i, k));
      }
      values[i * n + k] = std::pow(d2, -half_alpha);
    }
  }
  return PathlossMatrix(n, std::move(values));
}

NetworkRealization NetworkRealization::generate(double intensity, const Window& window,
                                                double alpha, Rng& rng) {
  auto bs = sample_ppp(intensity, window, rng);
  // A user landing exactly on a BS has probability zero; redraw if it happens.
  for (;;) {
    auto users = place_users(bs, window, rng);
    try {
      return from_points(bs, std::move(users), window, alpha);
    } catch (const SamplingError&) {
      continue;
    }
  }
}

NetworkRealization NetworkRealization::from_points(std::vector<Point> bs_points,
                                                   std::vector<Point> user_points,
                                                   const Window& window, double alpha) {
  window.validate();
  NetworkRealization net;
  net.pathloss_ = build_pathloss(bs_points, user_points, alpha, window);
  net.link_distance_.resize(bs_points.size());
  for (std::size_t i = 0; i < bs_points.size(); ++i) {
    net.link_distance_[i] = torus_distance(user_points[i], bs_points[i], window);
  }
  net.bs_points_ = std::move(bs_points);
  net.user_points_ = std::move(user_points);
  net.window_ = window;
  net.alpha_ = alpha;
  return net;
}

bool NetworkRealization::users_in_own_cells() const {
  const NearestSite nearest(bs_points_, window_);
  for (std::size_t i = 0; i < user_points_.size(); ++i) {
    if (nearest(user_points_[i]) != i) return false;
  }
  return true;
}

void NetworkRealization::write_csv(std::ostream& out) const {
  out << "bs_id,bs_x,bs_y,user_x,user_y,D\n";
  for (std::size_t i = 0; i < size(); ++i) {
    out << fmt::format("{},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}\n", i, bs_points_[i].x,
                       bs_points_[i].y, user_points_[i].x, user_points_[i].y, link_distance_[i]);
  }
}

}  // namespace rateless
