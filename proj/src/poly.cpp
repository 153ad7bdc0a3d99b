#include "sixv/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sixv/eigen.hpp"

namespace sixv {

std::vector<cplx> poly_from_samples(const PolySamples& s, double rel_tol) {
    const int npts = static_cast<int>(s.points.size());
    const int ncoef = s.degree_bound + 1;
    if (static_cast<int>(s.values.size()) != npts)
        throw SizeError("poly_from_samples: points/values length mismatch");
    if (npts < ncoef)
        throw SizeError("poly_from_samples: need at least degree_bound+1 samples");
    for (int i = 0; i < npts; ++i)
        for (int j = i + 1; j < npts; ++j)
            if (std::abs(s.points[i] - s.points[j]) == 0.0)
                throw Error("poly_from_samples: duplicate sample points");

    CMatrix vand(npts, ncoef);
    for (int i = 0; i < npts; ++i) {
        cplx p(1.0, 0.0);
        for (int j = 0; j < ncoef; ++j) {
            vand(i, j) = p;
            p *= s.points[i];
        }
    }
    std::vector<cplx> coeffs = lstsq(vand, s.values);

    double scale = 0.0;
    for (const auto& v : s.values) scale = std::max(scale, std::abs(v));
    scale = std::max(scale, 1.0);
    double worst = 0.0;
    for (int i = 0; i < npts; ++i)
        worst = std::max(worst, std::abs(poly_eval(coeffs, s.points[i]) - s.values[i]));
    if (worst > rel_tol * scale)
        throw Error("poly_from_samples: samples not a polynomial of claimed degree, max deviation " +
                    std::to_string(worst / scale));
    return coeffs;
}

cplx poly_eval(const std::vector<cplx>& coeffs, cplx z) {
    cplx acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<cplx> r(a.size() + b.size() - 1, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<cplx> poly_from_roots_pb(const std::vector<cplx>& roots) {
    std::vector<cplx> r{cplx(1.0, 0.0)};
    for (const auto& z : roots) {
        if (z == cplx(0.0, 0.0)) throw Error("poly_from_roots_pb: zero root");
        r = poly_mul(r, {cplx(1.0, 0.0), -1.0 / z});
    }
    return r;
}

std::vector<cplx> poly_roots(std::vector<cplx> coeffs, double strip_tol) {
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return {};
    while (coeffs.size() > 1 && std::abs(coeffs.back()) < strip_tol * scale) coeffs.pop_back();
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg < 1) return {};
    CMatrix comp(deg, deg);
    const cplx lead = coeffs[deg];
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / lead;
    return eigenvalues(comp);
}

} // namespace sixv
