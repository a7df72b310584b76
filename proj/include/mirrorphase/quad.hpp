#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace mirrorphase {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int panels = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK abscissae, positive half).
inline constexpr double gk15_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
void gk15_panel(F&& f, double a, double b, double& kronrod, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = gk15_wk[7] * f(c);
    double resg = gk15_wg[3] * f(c);
    for (int j = 0; j < 7; ++j) {
        const double x = h * gk15_x[j];
        const double fsum = f(c - x) + f(c + x);
        resk += gk15_wk[j] * fsum;
        if (j % 2 == 1) resg += gk15_wg[j / 2] * fsum;
    }
    kronrod = resk * h;
    err = std::abs((resk - resg) * h);
}

}  // namespace detail

// Adaptive Gauss-Kronrod refinement: worst-panel-first bisection until the
// summed error estimate meets max(abs_tol, rel_tol*|integral|) or the panel
// budget runs out. Panels are kept in interval order so the accumulation is
// deterministic.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double rel_tol,
                              double abs_tol = 0.0, int max_panels = 4096) {
    struct Seg {
        double a, b, val, err;
    };
    std::vector<Seg> segs;
    segs.reserve(64);
    double v, e;
    detail::gk15_panel(f, a, b, v, e);
    segs.push_back({a, b, v, e});

    QuadResult out;
    for (;;) {
        long double total = 0.0L, toterr = 0.0L;
        for (const Seg& s : segs) {
            total += s.val;
            toterr += s.err;
        }
        out.value = static_cast<double>(total);
        out.abs_error = static_cast<double>(toterr);
        out.panels = static_cast<int>(segs.size());
        const double tol = std::max(abs_tol, rel_tol * std::abs(out.value));
        if (out.abs_error <= tol) {
            out.converged = true;
            return out;
        }
        if (out.panels >= max_panels) return out;

        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        const Seg s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        Seg left{s.a, mid, 0.0, 0.0}, right{mid, s.b, 0.0, 0.0};
        detail::gk15_panel(f, left.a, left.b, left.val, left.err);
        detail::gk15_panel(f, right.a, right.b, right.val, right.err);
        segs[worst] = left;
        segs.insert(segs.begin() + static_cast<std::ptrdiff_t>(worst) + 1, right);
    }
}

// Composite-Simpson fallback with a Richardson acceptance check; used when
// the adaptive pass exhausts its panel budget.
template <class F>
QuadResult integrate_simpson(F&& f, double a, double b, double rel_tol,
                             double abs_tol = 0.0, int max_n = (1 << 21)) {
    auto simpson = [&](int n) {
        const double h = (b - a) / n;
        long double acc = f(a) + f(b);
        for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
        return static_cast<double>(acc * h / 3.0L);
    };
    double prev = simpson(64);
    for (int n = 128; n <= max_n; n *= 2) {
        const double cur = simpson(n);
        const double richardson = (cur - prev) / 15.0;
        QuadResult out{cur + richardson, std::abs(richardson), n, false};
        if (out.abs_error <= std::max(abs_tol, rel_tol * std::abs(out.value))) {
            out.converged = true;
            return out;
        }
        prev = cur;
    }
    return {prev, std::abs(prev), max_n, false};
}

}  // namespace mirrorphase
