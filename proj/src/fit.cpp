#include <cmath>

#include "haar_besov/experiments.hpp"
#include "haar_besov/reduce.hpp"

namespace haar_besov {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ParameterError("fit needs at least two (x, y) pairs");
    const double n = static_cast<double>(x.size());
    CompensatedSum sx, sy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx.add(x[i]);
        sy.add(y[i]);
    }
    const double mx = sx.value() / n, my = sy.value() / n;
    CompensatedSum sxx, sxy, syy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx.add(dx * dx);
        sxy.add(dx * dy);
        syy.add(dy * dy);
    }
    if (!(sxx.value() > 0.0)) throw ParameterError("fit needs distinct x values");
    LineFit f;
    f.slope = sxy.value() / sxx.value();
    f.intercept = my - f.slope * mx;
    CompensatedSum sse;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        sse.add(r * r);
    }
    f.r2 = syy.value() > 0.0 ? 1.0 - sse.value() / syy.value() : 1.0;
    return f;
}

LineFit fit_log2_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() < 3) throw ParameterError("log2 slope fit needs at least three points");
    std::vector<double> ly(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(y[i] > 0.0)) throw ParameterError("log2 slope fit needs positive y");
        ly[i] = std::log2(y[i]);
    }
    return fit_line(x, ly);
}

}  // namespace haar_besov
