#include "frontier/pwl.hpp"

#include <algorithm>

#include "frontier/errors.hpp"

namespace frontier {

namespace {

std::vector<Rational> merged_knots(std::span<const PiecewiseLinear> fs) {
  std::vector<Rational> xs;
  for (const auto& f : fs) xs.insert(xs.end(), f.knots().begin(), f.knots().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

PiecewiseLinear::PiecewiseLinear(Rational anchor, std::vector<Segment> segments,
                                 Rational final_slope)
    : final_slope_(std::move(final_slope)) {
  if (final_slope_.sign() <= 0) {
    throw InputError("final slope must be positive, got " + final_slope_.str());
  }
  xs_.push_back(anchor);
  ys_.push_back(Rational(0));
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const Segment& s = segments[k];
    if (s.slope.sign() < 0) throw InputError("negative slope " + s.slope.str());
    const Rational& prev = xs_.back();
    if (k == 0 ? s.end < prev : s.end <= prev) {
      throw InputError("breakpoints must be strictly increasing and not left of the anchor (at " +
                       s.end.str() + ")");
    }
    ys_.push_back(ys_.back() + s.slope * (s.end - prev));
    xs_.push_back(s.end);
  }
  canonicalize();
}

PiecewiseLinear::PiecewiseLinear(std::vector<Rational> xs, std::vector<Rational> ys,
                                 Rational final_slope)
    : xs_(std::move(xs)), ys_(std::move(ys)), final_slope_(std::move(final_slope)) {}

PiecewiseLinear PiecewiseLinear::from_knots(std::vector<Rational> xs, std::vector<Rational> ys,
                                            Rational final_slope) {
  PiecewiseLinear f(std::move(xs), std::move(ys), std::move(final_slope));
  f.canonicalize();
  return f;
}

PiecewiseLinear PiecewiseLinear::linear(Rational rho, Rational x_star) {
  if (rho.sign() <= 0) throw InputError("linear slope rho must be positive, got " + rho.str());
  return PiecewiseLinear(std::move(x_star), {}, std::move(rho));
}

void PiecewiseLinear::canonicalize() {
  // Zero-length pieces.
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  for (std::size_t k = 0; k < xs_.size(); ++k) {
    if (!xs.empty() && xs.back() == xs_[k]) continue;
    xs.push_back(xs_[k]);
    ys.push_back(ys_[k]);
  }
  // Leading flat-at-zero stretch: the anchor becomes the last zero.
  std::size_t first = 0;
  while (first + 1 < ys.size() && ys[first + 1].is_zero()) ++first;
  xs.erase(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(first));
  ys.erase(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(first));

  // Collinear neighbours.
  std::vector<Rational> cx{xs.front()};
  std::vector<Rational> cy{ys.front()};
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const Rational before = (ys[k] - cy.back()) / (xs[k] - cx.back());
    const Rational after = k + 1 < xs.size() ? (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]) : final_slope_;
    if (before == after) continue;
    cx.push_back(xs[k]);
    cy.push_back(ys[k]);
  }
  xs_ = std::move(cx);
  ys_ = std::move(cy);
}

Rational PiecewiseLinear::slope_after(std::size_t k) const {
  if (k + 1 >= xs_.size()) return final_slope_;
  return (ys_[k + 1] - ys_[k]) / (xs_[k + 1] - xs_[k]);
}

Rational PiecewiseLinear::eval(const Rational& x) const {
  if (x <= xs_.front()) return Rational(0);
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const auto k = static_cast<std::size_t>(it - xs_.begin()) - 1;
  return ys_[k] + slope_after(k) * (x - xs_[k]);
}

Rational PiecewiseLinear::right_inverse(const Rational& t) const {
  if (t.sign() < 0) throw InputError("right inverse needs t >= 0, got " + t.str());
  const auto it = std::upper_bound(ys_.begin(), ys_.end(), t);
  if (it == ys_.end()) return xs_.back() + (t - ys_.back()) / final_slope_;
  const auto k = static_cast<std::size_t>(it - ys_.begin()) - 1;
  return xs_[k] + (t - ys_[k]) / slope_after(k);
}

Rational PiecewiseLinear::level_sup(const Rational& cap, const Rational& v) const {
  if (cap < v) throw InputError("level_sup needs v <= cap (v=" + v.str() + ", cap=" + cap.str() + ")");
  return std::min(right_inverse(eval(v)), cap);
}

bool PiecewiseLinear::is_strictly_increasing_on_support() const {
  for (std::size_t k = 0; k + 1 < xs_.size(); ++k) {
    if (ys_[k + 1] == ys_[k]) return false;
  }
  return final_slope_.sign() > 0;
}

PiecewiseLinear PiecewiseLinear::shifted(const Rational& offset) const {
  std::vector<Rational> xs = xs_;
  for (auto& x : xs) x -= offset;
  return PiecewiseLinear(std::move(xs), ys_, final_slope_);
}

std::vector<Segment> PiecewiseLinear::segments() const {
  std::vector<Segment> out;
  for (std::size_t k = 1; k < xs_.size(); ++k) out.push_back({xs_[k], slope_after(k - 1)});
  return out;
}

Rational PiecewiseLinear::germ_slope() const { return slope_after(0); }

std::optional<Rational> PiecewiseLinear::germ_end() const {
  if (xs_.size() == 1) return std::nullopt;
  return xs_[1];
}

Rational PiecewiseLinear::min_slope_on_support() const {
  Rational best = final_slope_;
  for (std::size_t k = 0; k + 1 < xs_.size(); ++k) best = std::min(best, slope_after(k));
  return best;
}

Rational PiecewiseLinear::max_slope_on_support() const {
  Rational best = final_slope_;
  for (std::size_t k = 0; k + 1 < xs_.size(); ++k) best = std::max(best, slope_after(k));
  return best;
}

PiecewiseLinear sum(std::span<const PiecewiseLinear> fs) {
  if (fs.empty()) throw InputError("sum of an empty list of functions");
  std::vector<Rational> xs = merged_knots(fs);
  std::vector<Rational> ys;
  ys.reserve(xs.size());
  for (const auto& x : xs) {
    Rational y;
    for (const auto& f : fs) y += f.eval(x);
    ys.push_back(std::move(y));
  }
  Rational final_slope;
  for (const auto& f : fs) final_slope += f.final_slope();
  return PiecewiseLinear::from_knots(std::move(xs), std::move(ys), std::move(final_slope));
}

PiecewiseLinear pointwise_max(std::span<const PiecewiseLinear> fs) {
  if (fs.empty()) throw InputError("maximum of an empty list of functions");
  std::vector<Rational> base = merged_knots(fs);
  std::vector<Rational> xs = base;

  // Every pair is linear between consecutive merged knots and beyond the last
  // one; add the points where a pair changes order.
  for (std::size_t a = 0; a < fs.size(); ++a) {
    for (std::size_t b = a + 1; b < fs.size(); ++b) {
      for (std::size_t k = 0; k + 1 < base.size(); ++k) {
        const Rational d0 = fs[a].eval(base[k]) - fs[b].eval(base[k]);
        const Rational d1 = fs[a].eval(base[k + 1]) - fs[b].eval(base[k + 1]);
        if (d0.sign() * d1.sign() < 0) {
          xs.push_back(base[k] + d0 / (d0 - d1) * (base[k + 1] - base[k]));
        }
      }
      const Rational d = fs[a].eval(base.back()) - fs[b].eval(base.back());
      const Rational ds = fs[a].final_slope() - fs[b].final_slope();
      if (d.sign() * ds.sign() < 0) xs.push_back(base.back() - d / ds);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto max_at = [&](const Rational& x) {
    Rational best = fs.front().eval(x);
    for (const auto& f : fs.subspan(1)) best = std::max(best, f.eval(x));
    return best;
  };
  std::vector<Rational> ys;
  ys.reserve(xs.size());
  for (const auto& x : xs) ys.push_back(max_at(x));
  Rational final_slope = max_at(xs.back() + Rational(1)) - ys.back();
  return PiecewiseLinear::from_knots(std::move(xs), std::move(ys), std::move(final_slope));
}

}  // namespace frontier
