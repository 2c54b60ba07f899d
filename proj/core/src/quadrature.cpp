#include "genprob/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>

namespace genprob {

namespace {

// Kronrod nodes on [0, 1] (symmetric), odd indices are the embedded Gauss nodes.
constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b), half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kronrod_weights[7];
    double gauss = fc * gauss_weights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kronrod_nodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kronrod_weights[j] * sum;
        if (j % 2 == 1) gauss += gauss_weights[j / 2] * sum;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                    double rel_tol, unsigned max_intervals) {
    std::priority_queue<Segment> work;
    work.push(gauss_kronrod(f, a, b));
    QuadratureResult out;
    out.evaluations = 15;
    double value = work.top().value, error = work.top().error;
    while (error > std::max(abs_tol, rel_tol * std::abs(value)) && work.size() < max_intervals) {
        const Segment worst = work.top();
        work.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gauss_kronrod(f, worst.a, mid), right = gauss_kronrod(f, mid, worst.b);
        out.evaluations += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
    }
    // re-sum to shed accumulated cancellation
    value = 0.0;
    error = 0.0;
    for (; !work.empty(); work.pop()) {
        value += work.top().value;
        error += work.top().error;
    }
    out.value = value;
    out.error_estimate = error;
    out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
    return out;
}

}  // namespace genprob
