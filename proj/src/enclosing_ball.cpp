#include "polarmax/enclosing_ball.hpp"

#include <list>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace polarmax {

namespace {

// Ball through all support points, centered in their affine hull.
bool circumball(const PointSet& pts, const std::vector<Eigen::Index>& support, EnclosingBall& out) {
  if (support.empty()) {
    out.center = Point::Zero(pts.rows());
    out.radius = -1.0;
    return true;
  }
  const Point q0 = pts.col(support[0]);
  const auto k = static_cast<Eigen::Index>(support.size()) - 1;
  if (k == 0) {
    out.center = q0;
    out.radius = 0.0;
    return true;
  }
  Eigen::MatrixXd D(pts.rows(), k);
  for (Eigen::Index i = 0; i < k; ++i) D.col(i) = pts.col(support[i + 1]) - q0;
  const Eigen::MatrixXd G = D.transpose() * D;
  const Eigen::VectorXd rhs = 0.5 * G.diagonal();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
  if (lu.rank() < k) return false;
  out.center = q0 + D * lu.solve(rhs);
  out.radius = (out.center - q0).norm();
  return true;
}

class Welzl {
 public:
  explicit Welzl(const PointSet& pts) : pts_(pts) {
    for (Eigen::Index i = 0; i < pts.cols(); ++i) order_.push_back(i);
  }

  EnclosingBall run() {
    std::vector<Eigen::Index> support;
    return mtf(order_.end(), support);
  }

 private:
  bool outside(const EnclosingBall& b, Eigen::Index i) const {
    if (b.radius < 0) return true;
    const double d = (pts_.col(i) - b.center).norm();
    return d > b.radius * (1.0 + 1e-12) + 1e-15;
  }

  EnclosingBall mtf(std::list<Eigen::Index>::iterator end, std::vector<Eigen::Index>& support) {
    EnclosingBall ball;
    if (!circumball(pts_, support, ball)) {
      ball.radius = -1.0;
      return ball;
    }
    if (static_cast<Eigen::Index>(support.size()) == pts_.rows() + 1) return ball;
    for (auto it = order_.begin(); it != end;) {
      const auto idx = *it;
      auto next = std::next(it);
      if (outside(ball, idx)) {
        support.push_back(idx);
        EnclosingBall candidate = mtf(it, support);
        support.pop_back();
        if (candidate.radius >= 0) ball = candidate;
        order_.splice(order_.begin(), order_, it);
      }
      it = next;
    }
    return ball;
  }

  const PointSet& pts_;
  std::list<Eigen::Index> order_;
};

}  // namespace

EnclosingBall minimal_enclosing_ball(const PointSet& points) {
  if (points.cols() == 0) throw std::invalid_argument("minimal_enclosing_ball: no points");
  EnclosingBall ball = Welzl(points).run();
  if (ball.radius < 0) ball.center = points.rowwise().mean();
  ball.radius = (points.colwise() - ball.center).colwise().norm().maxCoeff();
  return ball;
}

}  // namespace polarmax
