#include <landflow/landmark.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace landflow {

void LandmarkConfig::validate_shape() const {
  if (d_ == 0) throw std::invalid_argument("landmark configuration needs d >= 1");
  if (n_ == 0) throw std::invalid_argument("landmark configuration needs at least one point");
}

LandmarkConfig LandmarkConfig::exact(std::size_t d, std::vector<std::vector<Rational>> points) {
  LandmarkConfig cfg;
  cfg.d_ = d;
  cfg.n_ = points.size();
  cfg.exact_ = true;
  cfg.validate_shape();
  for (const auto& p : points) {
    if (p.size() != d) throw std::invalid_argument("landmark has wrong dimension");
    for (Rational q : p) {
      // User-built rationals may not be in lowest terms; comparisons need them to be.
      q.canonicalize();
      cfg.exact_flat_.push_back(q);
      cfg.flat_.push_back(q.get_d());
    }
  }
  for (std::size_t a = 0; a < cfg.n_; ++a) {
    for (std::size_t b = a + 1; b < cfg.n_; ++b) {
      const auto pa = cfg.exact_flat_.begin() + static_cast<std::ptrdiff_t>(a * d);
      const auto pb = cfg.exact_flat_.begin() + static_cast<std::ptrdiff_t>(b * d);
      if (std::equal(pa, pa + static_cast<std::ptrdiff_t>(d), pb)) {
        throw std::invalid_argument("landmarks " + std::to_string(a) + " and " +
                                    std::to_string(b) + " coincide");
      }
    }
  }
  return cfg;
}

LandmarkConfig LandmarkConfig::floating(std::size_t d, std::vector<std::vector<double>> points,
                                        double min_separation) {
  std::vector<double> flat;
  for (const auto& p : points) {
    if (p.size() != d) throw std::invalid_argument("landmark has wrong dimension");
    flat.insert(flat.end(), p.begin(), p.end());
  }
  if (d == 0) throw std::invalid_argument("landmark configuration needs d >= 1");
  return from_flat(d, flat, min_separation);
}

LandmarkConfig LandmarkConfig::from_flat(std::size_t d, std::span<const double> flat,
                                         double min_separation) {
  LandmarkConfig cfg;
  cfg.d_ = d;
  if (d == 0 || flat.size() % d != 0) throw std::invalid_argument("flat coordinates do not match d");
  cfg.n_ = flat.size() / d;
  cfg.validate_shape();
  cfg.flat_.assign(flat.begin(), flat.end());
  for (double v : cfg.flat_) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite landmark coordinate");
  }
  for (std::size_t a = 0; a < cfg.n_; ++a) {
    for (std::size_t b = a + 1; b < cfg.n_; ++b) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double diff = cfg.flat_[a * d + j] - cfg.flat_[b * d + j];
        s += diff * diff;
      }
      if (std::sqrt(s) <= min_separation) {
        throw std::invalid_argument("landmarks " + std::to_string(a) + " and " +
                                    std::to_string(b) + " are closer than the separation guard");
      }
    }
  }
  return cfg;
}

std::span<const double> LandmarkConfig::point(std::size_t i) const {
  if (i >= n_) throw std::out_of_range("landmark index out of range");
  return std::span<const double>(flat_).subspan(i * d_, d_);
}

std::span<const Rational> LandmarkConfig::exact_point(std::size_t i) const {
  if (!exact_) throw std::logic_error("configuration has floating coordinates");
  if (i >= n_) throw std::out_of_range("landmark index out of range");
  return std::span<const Rational>(exact_flat_).subspan(i * d_, d_);
}

double LandmarkConfig::diameter() const {
  double best = 0.0;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a + 1; b < n_; ++b) {
      double s = 0.0;
      for (std::size_t j = 0; j < d_; ++j) {
        const double diff = flat_[a * d_ + j] - flat_[b * d_ + j];
        s += diff * diff;
      }
      best = std::max(best, std::sqrt(s));
    }
  }
  return best;
}

LiftedEvaluation::LiftedEvaluation(RationalMatrix exact)
    : exact_(true),
      rows_(exact.rows()),
      cols_(exact.cols()),
      exact_matrix_(std::move(exact)),
      numeric_(exact_matrix_.to_double()) {}

LiftedEvaluation::LiftedEvaluation(Eigen::MatrixXd numeric)
    : exact_(false),
      rows_(static_cast<std::size_t>(numeric.rows())),
      cols_(static_cast<std::size_t>(numeric.cols())),
      numeric_(std::move(numeric)) {}

std::size_t LiftedEvaluation::rank() const {
  return exact_ ? exact_matrix_.rank() : numeric_rank(numeric_);
}

std::vector<Rational> lifted_column(const PolyVectorField& field, const LandmarkConfig& cfg) {
  if (field.dim() != cfg.dim()) throw std::invalid_argument("lift: field and configuration dimensions differ");
  std::vector<Rational> col;
  col.reserve(cfg.size() * cfg.dim());
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    auto v = field.evaluate(cfg.exact_point(i));
    col.insert(col.end(), v.begin(), v.end());
  }
  return col;
}

std::vector<double> lifted_column_numeric(const PolyVectorField& field, const LandmarkConfig& cfg) {
  if (field.dim() != cfg.dim()) throw std::invalid_argument("lift: field and configuration dimensions differ");
  std::vector<double> col;
  col.reserve(cfg.size() * cfg.dim());
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    auto v = field.evaluate(cfg.point(i));
    col.insert(col.end(), v.begin(), v.end());
  }
  return col;
}

LiftedEvaluation lift_evaluate(std::span<const PolyVectorField> fields, const LandmarkConfig& cfg) {
  const std::size_t rows = cfg.size() * cfg.dim();
  if (cfg.is_exact()) {
    RationalMatrix m(rows, fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      auto col = lifted_column(fields[c], cfg);
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = col[r];
    }
    return LiftedEvaluation(std::move(m));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(fields.size()));
  for (std::size_t c = 0; c < fields.size(); ++c) {
    auto col = lifted_column_numeric(fields[c], cfg);
    for (std::size_t r = 0; r < rows; ++r) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
    }
  }
  return LiftedEvaluation(std::move(m));
}

namespace {

template <typename T>
T vandermonde_impl(std::span<const T> xs) {
  T det = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[j] == xs[i]) throw std::invalid_argument("vandermonde_det: repeated entries");
      det *= xs[j] - xs[i];
    }
  }
  return det;
}

std::vector<std::size_t> argsort(const LandmarkConfig& cfg) {
  std::vector<std::size_t> idx(cfg.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (cfg.is_exact()) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return cfg.exact_point(a)[0] < cfg.exact_point(b)[0];
    });
  } else {
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return cfg.point(a)[0] < cfg.point(b)[0]; });
  }
  return idx;
}

}  // namespace

Rational vandermonde_det(std::span<const Rational> xs) { return vandermonde_impl(xs); }
double vandermonde_det(std::span<const double> xs) { return vandermonde_impl(xs); }

bool same_order_component(const LandmarkConfig& a, const LandmarkConfig& b) {
  if (a.dim() != 1 || b.dim() != 1) throw std::invalid_argument("same_order_component: requires d = 1");
  if (a.size() != b.size()) throw std::invalid_argument("same_order_component: landmark counts differ");
  return argsort(a) == argsort(b);
}

PolyVectorField lift_symbolic(const PolyVectorField& x, std::size_t n) {
  const std::size_t d = x.dim();
  const std::size_t big = n * d;
  std::vector<Polynomial> comps(big, Polynomial(big));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) comps[i * d + j] = x.component(j).embedded(big, i * d);
  }
  return PolyVectorField(std::move(comps));
}

bool lifted_bracket_check(const PolyVectorField& x, const PolyVectorField& y, const LandmarkConfig& cfg) {
  if (x.dim() != y.dim() || x.dim() != cfg.dim()) {
    throw std::invalid_argument("lifted_bracket_check: dimension mismatch");
  }
  const std::size_t n = cfg.size();
  return lie_bracket(lift_symbolic(x, n), lift_symbolic(y, n)) == lift_symbolic(lie_bracket(x, y), n);
}

}  // namespace landflow
