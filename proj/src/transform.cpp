#include "transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sorder::detail {

std::vector<cplx> transform(const Table& table, double k, const PhaseGrid& out, Exec exec) {
    const int nt = table.grid.side();
    const int no = out.side();
    CMatrix col_phase(nt, no);
    for (int oc = 0; oc < no; ++oc) {
        const double ox = out.point(0, oc).re;
        for (int ty = 0; ty < nt; ++ty) col_phase(ty, oc) = std::polar(1.0, k * ox * table.grid.coord(ty));
    }
    std::vector<cplx> values(out.size());
    for_each_index(static_cast<std::size_t>(no), exec, [&](std::size_t orow) {
        const double oy = out.point(static_cast<int>(orow), 0).im;
        CVector row_phase(nt);
        for (int tx = 0; tx < nt; ++tx) row_phase(tx) = std::polar(1.0, -k * oy * table.grid.coord(tx));
        CVector partial(nt);
        for (int ty = 0; ty < nt; ++ty) {
            cplx acc = 0.0;
            const cplx* w = table.w.data() + static_cast<std::size_t>(ty) * nt;
            for (int tx = 0; tx < nt; ++tx) acc += w[tx] * row_phase(tx);
            partial(ty) = acc;
        }
        for (int oc = 0; oc < no; ++oc) {
            cplx acc = 0.0;
            for (int ty = 0; ty < nt; ++ty) acc += partial(ty) * col_phase(ty, oc);
            values[orow * static_cast<std::size_t>(no) + oc] = acc;
        }
    });
    return values;
}

cplx transform_at(const Table& table, double k, cplx o) {
    const int nt = table.grid.side();
    cplx total = 0.0;
    for (int ty = 0; ty < nt; ++ty) {
        cplx acc = 0.0;
        const double y = table.grid.coord(ty);
        for (int tx = 0; tx < nt; ++tx) {
            const double x = table.grid.coord(tx);
            acc += table.w[static_cast<std::size_t>(ty) * nt + tx] * std::polar(1.0, k * (o.real() * y - o.imag() * x));
        }
        total += acc;
    }
    return total;
}

Table make_table(double radius, double step, Exec exec, const std::function<cplx(cplx)>& weight) {
    return make_table(radius, step, exec, [&](cplx b, std::size_t) { return weight(b); });
}

Table make_table(double radius, double step, Exec exec, const std::function<cplx(cplx, std::size_t)>& weight) {
    Table t{PhaseGrid(radius, step), {}};
    const int n = t.grid.side();
    t.w.assign(t.grid.size(), 0.0);
    for_each_index(static_cast<std::size_t>(n), exec, [&](std::size_t r) {
        for (int c = 0; c < n; ++c) {
            const PhasePoint b = t.grid.point(static_cast<int>(r), c);
            if (b.norm2() <= radius * radius) t.w[r * n + c] = weight(b.value(), r * n + c);
        }
    });
    return t;
}

Decay decay_radius(const std::function<double(cplx)>& envelope, double rel, double accept, double cap) {
    constexpr int kRays = 16;
    constexpr double kDr = 0.25;
    constexpr int kWindow = 4;
    std::vector<double> env;
    for (int i = 0; i * kDr <= cap + 1e-12; ++i) {
        const double r = i * kDr;
        double m = 0.0;
        for (int j = 0; j < kRays; ++j) {
            const double th = 2.0 * std::numbers::pi * (j + 0.5) / kRays;
            m = std::max(m, envelope(std::polar(r, th)));
        }
        env.push_back(m);
    }
    const int n = static_cast<int>(env.size());
    Decay d;
    int best = -1;
    double best_val = std::numeric_limits<double>::infinity();
    // The peak only looks inward: amplified noise far out must not set the scale.
    double peak = env[0];
    for (int i = 1; i + kWindow <= n; ++i) {
        peak = std::max(peak, env[static_cast<std::size_t>(i - 1)]);
        if (!(peak > 0.0)) continue;
        double w = 0.0;
        for (int k = 0; k < kWindow; ++k) w = std::max(w, env[static_cast<std::size_t>(i + k)]);
        w /= peak;
        if (w < rel) {
            best = i;
            best_val = w;
            break;
        }
        if (w < best_val) {
            best = i;
            best_val = w;
        }
    }
    if (best < 0) {
        d.radius = kDr;
        d.decayed = !(peak > 0.0);
        return d;
    }
    d.radius = best * kDr;
    d.edge = best_val;
    d.spread = d.radius * d.radius;
    const int back = static_cast<int>(1.0 / kDr);
    if (best >= back && env[static_cast<std::size_t>(best)] > 0.0) {
        const double r0 = d.radius - 1.0;
        const double a = std::log(env[static_cast<std::size_t>(best - back)] / env[static_cast<std::size_t>(best)]) /
                         (d.radius * d.radius - r0 * r0);
        if (a > 0.0) d.spread = std::min(d.spread, 1.0 / a);
    }
    d.decayed = best_val < accept;
    return d;
}

double step_for_frequency(double omega) { return 2.0 * std::numbers::pi / (omega + 16.0); }

}  // namespace sorder::detail
