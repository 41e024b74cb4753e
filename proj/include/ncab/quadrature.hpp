#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "ncab/calculus.hpp"
#include "ncab/errors.hpp"
#include "ncab/paths.hpp"

namespace ncab {

struct QuadratureOptions {
    double rel_tol = 1.0e-10;
    double abs_tol = 0.0;
    int max_depth = 60;
    std::size_t max_panels = 1u << 20;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // sum of per-panel |K15 - G7|
    std::size_t panels = 0;
};

namespace detail {

// Neumaier compensated sum; order of additions is fixed by the caller.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

struct Panel {
    double kronrod = 0.0;
    double error = 0.0;
    double abs_kronrod = 0.0;
};

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> gk15_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> gk15_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
Panel gauss_kronrod_15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = gk15_weights[7] * fc;
    double gauss = g7_weights[3] * fc;
    double abs_k = std::abs(kronrod);
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * gk15_nodes[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += gk15_weights[j] * (f1 + f2);
        abs_k += gk15_weights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) {
            gauss += g7_weights[j / 2] * (f1 + f2);
        }
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half), abs_k * std::abs(half)};
}

template <class F>
class AdaptiveIntegrator {
  public:
    AdaptiveIntegrator(const F& f, double a, double b, const QuadratureOptions& opt) : f_(f), a_(a), b_(b), opt_(opt) {}

    QuadratureResult run() {
        const Panel whole = gauss_kronrod_15(f_, a_, b_);
        panels_ = 1;
        target_ = std::max({opt_.rel_tol * std::abs(whole.kronrod), opt_.abs_tol,
                            50.0 * std::numeric_limits<double>::epsilon() * whole.abs_kronrod});
        refine(a_, b_, whole, 0);
        QuadratureResult r{value_.value(), error_.value(), panels_};
        if (failed_) {
            throw ConvergenceError("adaptive quadrature did not converge within " + std::to_string(opt_.max_depth) +
                                       " subdivisions", r.value, r.error);
        }
        return r;
    }

  private:
    void refine(double lo, double hi, const Panel& panel, int depth) {
        const double share = target_ * std::abs((hi - lo) / (b_ - a_));
        if (panel.error <= share || !std::isfinite(panel.error)) {
            accept(panel);
            return;
        }
        if (depth >= opt_.max_depth || panels_ + 2 > opt_.max_panels) {
            failed_ = true;
            accept(panel);
            return;
        }
        const double mid = 0.5 * (lo + hi);
        const Panel left = gauss_kronrod_15(f_, lo, mid);
        const Panel right = gauss_kronrod_15(f_, mid, hi);
        panels_ += 2;
        refine(lo, mid, left, depth + 1);
        refine(mid, hi, right, depth + 1);
    }

    void accept(const Panel& panel) {
        if (!std::isfinite(panel.kronrod) || !std::isfinite(panel.error)) {
            failed_ = true;
        }
        value_.add(panel.kronrod);
        error_.add(panel.error);
    }

    const F& f_;
    double a_;
    double b_;
    QuadratureOptions opt_;
    double target_ = 0.0;
    std::size_t panels_ = 0;
    bool failed_ = false;
    CompensatedSum value_;
    CompensatedSum error_;
};

} // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a, b].
///
/// Panels are bisected depth-first, left before right, until each panel's
/// |K15 - G7| falls below its length share of max(rel_tol |I|, abs_tol).
/// The accumulation order is fixed, so identical inputs give bit-identical
/// results. Throws ConvergenceError once a panel needs more than
/// `max_depth` bisections or the panel budget is exhausted.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureOptions& opt = {}) {
    if (!(opt.rel_tol > 0.0) && !(opt.abs_tol > 0.0)) {
        throw DomainError("quadrature tolerance must be positive");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integration limits must be finite");
    }
    if (a == b) {
        return {};
    }
    return detail::AdaptiveIntegrator<F>(f, a, b, opt).run();
}

/// Integral over a path of integrand(point, dr/dt) dt. Polylines are split at
/// their corners so each piece is smooth.
template <class Integrand>
QuadratureResult path_integral(const PathSpec& path, const Integrand& integrand, const QuadratureOptions& opt = {}) {
    QuadratureResult total;
    detail::CompensatedSum value;
    for (const auto& piece : smooth_pieces(path)) {
        auto f = [&piece, &integrand](double t) { return integrand(point_at(piece, t), tangent_at(piece, t)); };
        const auto r = integrate(f, 0.0, 1.0, opt);
        value.add(r.value);
        total.error += r.error;
        total.panels += r.panels;
    }
    total.value = value.value();
    return total;
}

/// Line integral of F . dl along the path.
inline QuadratureResult line_integral(const VectorField& F, const PathSpec& path, const QuadratureOptions& opt = {}) {
    return path_integral(
        path, [&F](const Vec3& p, const Vec3& dr) { return dot(F(p), dr); }, opt);
}

inline QuadratureResult line_integral(const VectorField& F, const PathSpec& path, double rel_tol) {
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    return line_integral(F, path, opt);
}

} // namespace ncab
