#include "fracharm/poisson_symbol.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "fracharm/error.hpp"

namespace fracharm {

namespace {

using boost::math::quadrature::gauss_kronrod;

// log K_mu(a) from K_mu(a) = 1/2 int_R exp(mu u - a cosh u) du, evaluated about the
// integrand peak u* = asinh(mu/a) so nothing over- or underflows.
double log_bessel_k(double mu, double a, double tol, double r_for_error) {
    mu = std::abs(mu);
    const double us = std::asinh(mu / a);
    const double gs = mu * us - std::hypot(a, mu);
    auto g = [&](double u) {
        // a (cosh u - cosh u*) - mu (u - u*), written to avoid cancellation near u*.
        const double d = u - us;
        const double dc = 2.0 * std::sinh(0.5 * d) * std::sinh(us + 0.5 * d);  // cosh u - cosh u*
        return mu * d - a * dc;
    };
    auto edge = [&](double dir) {
        double step = 1.0;
        double lo = us, hi = us + dir * step;
        while (g(hi) > -45.0) {
            lo = hi;
            step *= 2.0;
            hi = us + dir * step;
            if (step > 1e4) throw NumericalError("s_poisson_symbol", "integrand bound search failed");
        }
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) > -45.0 ? lo : hi) = mid;
        }
        return hi;
    };
    const double u_lo = edge(-1.0), u_hi = edge(1.0);
    auto integrand = [&](double u) { return std::exp(g(u)); };
    double err_l = 0, err_r = 0;
    const double left = gauss_kronrod<double, 31>::integrate(integrand, u_lo, us, 20, tol, &err_l);
    const double right = gauss_kronrod<double, 31>::integrate(integrand, us, u_hi, 20, tol, &err_r);
    const double total = left + right;
    if (!(total > 0) || !std::isfinite(total) || (err_l + err_r) > 100.0 * tol * total) {
        std::ostringstream os;
        os.precision(17);
        os << "quadrature did not converge at r=" << r_for_error << " (order " << mu << ")";
        throw NumericalError("s_poisson_symbol", os.str());
    }
    return gs + std::log(0.5 * total);
}

struct Point {
    double log_m, slope_m, log_d, slope_d;
};

// r > 0. log m, d log m / d log r, log(-D), d log(-D) / d log r with D = r m'(r).
Point evaluate_point(double s, double r, double tol) {
    const double nu = 0.5 * s;
    const double a = 2.0 * M_PI * r;
    const double pref = (1.0 - nu) * std::log(2.0) - std::lgamma(nu);
    const double k0 = log_bessel_k(nu, a, tol, r);
    const double k1 = log_bessel_k(1.0 - nu, a, tol, r);
    const double k2 = log_bessel_k(2.0 - nu, a, tol, r);
    Point p;
    p.log_m = pref + nu * std::log(a) + k0;
    p.slope_m = -a * std::exp(k1 - k0);
    p.log_d = pref + (nu + 1.0) * std::log(a) + k1;
    p.slope_d = 2.0 - a * std::exp(k2 - k1);
    return p;
}

double hermite(double y0, double y1, double d0, double d1, double h, double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
           (t3 - t2) * h * d1;
}

}  // namespace

double poisson_symbol_kappa(double s) {
    return std::pow(M_PI, s) * std::tgamma(1.0 - 0.5 * s) / std::tgamma(1.0 + 0.5 * s);
}

double boundary_constant_closed_form(double s) {
    return std::pow(2.0, 1.0 - s) * std::tgamma(1.0 - 0.5 * s) / std::tgamma(0.5 * s);
}

double poisson_symbol_direct(double s, double r) {
    if (!(s > 0 && s < 2)) throw std::invalid_argument("poisson symbol needs s in (0,2)");
    if (r == 0) return 1.0;
    return std::exp(evaluate_point(s, r, 1e-13).log_m);
}

double poisson_symbol_t_derivative_direct(double s, double r) {
    if (!(s > 0 && s < 2)) throw std::invalid_argument("poisson symbol needs s in (0,2)");
    if (r == 0) return 0.0;
    return -std::exp(evaluate_point(s, r, 1e-13).log_d);
}

PoissonSymbol s_poisson_symbol(double s, const SymbolTableOptions& opt) {
    if (!(s > 0 && s < 2)) throw std::invalid_argument("s_poisson_symbol needs s in (0,2)");
    if (!(opt.r_min > 0 && opt.r_max > opt.r_min && opt.per_decade >= 8))
        throw std::invalid_argument("s_poisson_symbol: bad table options");
    PoissonSymbol P;
    P.s_ = s;
    P.opt_ = opt;
    P.u0_ = std::log(opt.r_min);
    P.du_ = std::log(10.0) / opt.per_decade;
    const int rows = static_cast<int>(std::ceil((std::log(opt.r_max) - P.u0_) / P.du_)) + 1;
    for (int i = 0; i < rows; ++i) {
        const double u = P.u0_ + i * P.du_;
        const Point p = evaluate_point(s, std::exp(u), opt.tolerance);
        P.u_.push_back(u);
        P.log_m_.push_back(p.log_m);
        P.slope_m_.push_back(p.slope_m);
        P.log_d_.push_back(p.log_d);
        P.slope_d_.push_back(p.slope_d);
    }
    P.finish();
    return P;
}

void PoissonSymbol::finish() {
    // Fritsch-Carlson limiting for the monotone log m table. With exact slopes on a
    // fine grid this is inactive; it guards against a bad table producing overshoot.
    for (std::size_t i = 0; i + 1 < u_.size(); ++i) {
        const double delta = (log_m_[i + 1] - log_m_[i]) / du_;
        if (delta == 0) {
            slope_m_[i] = slope_m_[i + 1] = 0;
            continue;
        }
        const double al = slope_m_[i] / delta, be = slope_m_[i + 1] / delta;
        if (al < 0) slope_m_[i] = 0;
        if (be < 0) slope_m_[i + 1] = 0;
        const double q = al * al + be * be;
        if (q > 9.0) {
            const double tau = 3.0 / std::sqrt(q);
            slope_m_[i] = tau * al * delta;
            slope_m_[i + 1] = tau * be * delta;
        }
    }
    const double rl = std::exp(u_.front());
    kappa_m_ = -log_m_.front() / std::pow(rl, s_);
    kappa_d_ = std::exp(log_d_.front()) / std::pow(rl, s_);
}

double PoissonSymbol::value(double r) const {
    if (r <= 0) return 1.0;
    const double u = std::log(r);
    if (u < u_.front()) return std::exp(-kappa_m_ * std::pow(r, s_));
    if (u >= u_.back()) return 0.0;
    const double x = (u - u0_) / du_;
    std::size_t i = std::min(static_cast<std::size_t>(x), u_.size() - 2);
    const double t = x - static_cast<double>(i);
    return std::exp(hermite(log_m_[i], log_m_[i + 1], slope_m_[i], slope_m_[i + 1], du_, t));
}

double PoissonSymbol::t_derivative(double r) const {
    if (r <= 0) return 0.0;
    const double u = std::log(r);
    if (u < u_.front()) return -kappa_d_ * std::pow(r, s_);
    if (u >= u_.back()) return 0.0;
    const double x = (u - u0_) / du_;
    std::size_t i = std::min(static_cast<std::size_t>(x), u_.size() - 2);
    const double t = x - static_cast<double>(i);
    return -std::exp(hermite(log_d_[i], log_d_[i + 1], slope_d_[i], slope_d_[i + 1], du_, t));
}

std::string PoissonSymbol::cache_file_name(double s, const SymbolTableOptions& opt) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "poisson_s%.12g_rmin%.6g_rmax%.6g_pd%d_tol%.3g.txt", s,
                  opt.r_min, opt.r_max, opt.per_decade, opt.tolerance);
    return buf;
}

void PoissonSymbol::save(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
        std::FILE* fp = std::fopen(tmp.c_str(), "w");
        if (!fp) throw std::runtime_error("cannot write symbol cache " + path);
        std::fprintf(fp,
                     "fracharm-poisson-symbol v1 s=%.17g r_min=%.17g r_max=%.17g per_decade=%d "
                     "tol=%.17g rows=%zu columns=r,m,log_r,log_m,dlog_m,log_negD,dlog_negD\n",
                     s_, opt_.r_min, opt_.r_max, opt_.per_decade, opt_.tolerance, u_.size());
        for (std::size_t i = 0; i < u_.size(); ++i)
            std::fprintf(fp, "%.17g %.17g %.17g %.17g %.17g %.17g %.17g\n", std::exp(u_[i]),
                         std::exp(log_m_[i]), u_[i], log_m_[i], slope_m_[i], log_d_[i],
                         slope_d_[i]);
        std::fclose(fp);
    }
    std::filesystem::rename(tmp, path);
}

PoissonSymbol PoissonSymbol::load(const std::string& path, double s,
                                  const SymbolTableOptions& opt) {
    auto fail = [&](const std::string& why) -> PoissonSymbol {
        throw NumericalError("symbol cache " + path, why);
    };
    std::ifstream in(path);
    if (!in) return fail("cannot open");
    std::string header;
    std::getline(in, header);
    double hs = 0, hmin = 0, hmax = 0, htol = 0;
    int hpd = 0;
    std::size_t hrows = 0;
    if (std::sscanf(header.c_str(),
                    "fracharm-poisson-symbol v1 s=%lf r_min=%lf r_max=%lf per_decade=%d tol=%lf "
                    "rows=%zu",
                    &hs, &hmin, &hmax, &hpd, &htol, &hrows) != 6)
        return fail("bad header");
    if (hs != s || hmin != opt.r_min || hmax != opt.r_max || hpd != opt.per_decade ||
        htol != opt.tolerance)
        return fail("header does not match the requested table");
    PoissonSymbol P;
    P.s_ = s;
    P.opt_ = opt;
    P.u0_ = std::log(opt.r_min);
    P.du_ = std::log(10.0) / opt.per_decade;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double r, m, u, lm, sm, ld, sd;
        if (!(ls >> r >> m >> u >> lm >> sm >> ld >> sd)) return fail("malformed row");
        for (double v : {u, lm, sm, ld, sd})
            if (!std::isfinite(v)) return fail("non-finite entry");
        const double expect = P.u0_ + static_cast<double>(P.u_.size()) * P.du_;
        if (std::abs(u - expect) > 1e-9) return fail("row grid does not match header");
        P.u_.push_back(u);
        P.log_m_.push_back(lm);
        P.slope_m_.push_back(sm);
        P.log_d_.push_back(ld);
        P.slope_d_.push_back(sd);
    }
    if (P.u_.size() != hrows || hrows < 2) return fail("row count does not match header");
    for (std::size_t i = 0; i + 1 < P.log_m_.size(); ++i)
        if (!(P.log_m_[i + 1] < P.log_m_[i])) return fail("table is not strictly decreasing");
    P.finish();
    return P;
}

std::shared_ptr<const PoissonSymbol> cached_poisson_symbol(double s) {
    static std::mutex mu;
    static std::map<double, std::shared_ptr<const PoissonSymbol>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto it = tables.find(s);
    if (it != tables.end()) return it->second;
    const SymbolTableOptions opt;
    std::shared_ptr<const PoissonSymbol> table;
    const char* dir = std::getenv("FRACHARM_CACHE_DIR");
    if (dir && *dir) {
        const auto path = std::filesystem::path(dir) / PoissonSymbol::cache_file_name(s, opt);
        if (std::filesystem::exists(path)) {
            table = std::make_shared<const PoissonSymbol>(PoissonSymbol::load(path.string(), s, opt));
        } else {
            auto fresh = std::make_shared<const PoissonSymbol>(s_poisson_symbol(s, opt));
            std::filesystem::create_directories(dir);
            fresh->save(path.string());
            table = fresh;
        }
    } else {
        table = std::make_shared<const PoissonSymbol>(s_poisson_symbol(s, opt));
    }
    tables.emplace(s, table);
    return table;
}

}  // namespace fracharm
