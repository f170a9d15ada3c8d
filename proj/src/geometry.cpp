#include "nucembed/geometry.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace nucembed {

namespace {

using boost::multiprecision::cpp_int;

constexpr int kMaxLevel = 24;
constexpr unsigned long long kCountCap = 1ULL << 62;

int worker_count() {
    if (const char* env = std::getenv("NUCEMBED_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

void check_level(int j) {
    if (j < 0 || j > kMaxLevel) throw std::invalid_argument("geometry: level j must lie in [0, 24]");
}

unsigned long long checked_add(unsigned long long a, unsigned long long b) {
    unsigned long long s = a + b;
    if (s < a || s > kCountCap) throw std::overflow_error("geometry: cube count exceeds 2^62");
    return s;
}

unsigned long long checked_mul(unsigned long long a, unsigned long long b) {
    if (a != 0 && b > kCountCap / a) throw std::overflow_error("geometry: cube count exceeds 2^62");
    return a * b;
}

// Largest v >= 0 with v^a * kpow <= rhs.
cpp_int int_power_floor(const cpp_int& rhs, const cpp_int& kpow, unsigned a) {
    if (kpow > rhs) return 0;
    cpp_int lo = 1, hi = 2;
    while (pow(hi, a) * kpow <= rhs) hi <<= 1;
    while (hi - lo > 1) {
        cpp_int mid = (lo + hi) >> 1;
        if (pow(mid, a) * kpow <= rhs) lo = mid;
        else hi = mid;
    }
    return lo;
}

unsigned long long to_u64_checked(const cpp_int& v) {
    if (v > cpp_int(kCountCap)) throw std::overflow_error("geometry: cube count exceeds 2^62");
    return v.convert_to<unsigned long long>();
}

// x * (ln x)^beta, increasing on (e, inf).
double log_cusp_scale(double x, double beta) { return x * std::pow(std::log(x), beta); }

// floor(L * 2^j) for an exact rational L.
long long floor_scaled(const Rat& len, int j) { return (len * Rat(1LL << j)).floor_ll(); }

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto next = s.find(sep, pos);
        if (next == std::string_view::npos) next = s.size();
        if (next > pos) out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

}  // namespace

DomainSpec DomainSpec::power_cusp(const Rat& alpha) {
    if (!alpha.is_positive()) throw std::invalid_argument("power_cusp: alpha must be positive");
    DomainSpec s;
    s.kind = Kind::power_cusp;
    s.d = 2;
    s.alpha = alpha;
    return s;
}

DomainSpec DomainSpec::log_cusp(const Rat& beta) {
    if (!beta.is_positive()) throw std::invalid_argument("log_cusp: beta must be positive");
    DomainSpec s;
    s.kind = Kind::log_cusp;
    s.d = 2;
    s.beta = beta;
    return s;
}

DomainSpec DomainSpec::box(std::vector<Rat> sides) {
    if (sides.empty()) throw std::invalid_argument("box: at least one side length required");
    for (const auto& l : sides)
        if (!l.is_positive()) throw std::invalid_argument("box: side lengths must be positive");
    DomainSpec s;
    s.kind = Kind::box;
    s.d = static_cast<int>(sides.size());
    s.sides = std::move(sides);
    return s;
}

std::optional<Rat> DomainSpec::analytic_b() const {
    switch (kind) {
        case Kind::power_cusp: return alpha < Rat(1) ? Rat(1) + Rat(1) / alpha : Rat(2);
        case Kind::log_cusp: return Rat(2);
        case Kind::box: return Rat(d);
        case Kind::comb: return std::nullopt;
    }
    return std::nullopt;
}

DomainSpec comb_domain(std::span<const long long> counts, int d) {
    if (d < 1) throw std::invalid_argument("comb_domain: dimension must be positive");
    for (long long n : counts)
        if (n < 0) throw std::invalid_argument("comb_domain: counts must be nonnegative");

    DomainSpec s;
    s.kind = DomainSpec::Kind::comb;
    s.d = d;
    s.comb_counts.assign(counts.begin(), counts.end());

    // Components are shrunken cubes of side 2^-j * 255/256, centred in their
    // dyadic cell; cells march along the x-axis with one-cell gaps.
    Rat cursor(0);
    for (std::size_t level = 0; level < counts.size(); ++level) {
        int j = static_cast<int>(level);
        if (j > kMaxLevel) throw std::invalid_argument("comb_domain: placement exhaustion beyond level 24");
        Rat cell(1, 1LL << j);
        Rat margin = cell * Rat(1, 512);
        Rat side = cell * Rat(255, 256);
        for (long long t = 0; t < counts[level]; ++t) {
            // next cell boundary at or after the cursor
            long long k = (cursor * Rat(1LL << j)).floor_ll();
            Rat start = Rat(k, 1LL << j);
            if (start < cursor) start = start + cell;
            DomainSpec::CombCube cube;
            cube.level = j;
            cube.lo.assign(static_cast<std::size_t>(d), margin);
            cube.hi.assign(static_cast<std::size_t>(d), margin + side);
            cube.lo[0] = start + margin;
            cube.hi[0] = start + margin + side;
            s.comb_cubes.push_back(std::move(cube));
            cursor = start + cell + cell;  // one empty cell between components
        }
    }
    return s;
}

DomainSpec DomainSpec::parse(std::string_view text) {
    std::string kind;
    std::optional<Rat> alpha, beta;
    std::vector<Rat> sides;
    std::vector<long long> counts;
    std::optional<int> d;

    std::string normalized(text);
    for (char& c : normalized)
        if (c == '\n' || c == '\t' || c == ';') c = ' ';
    for (auto token : split(normalized, ' ')) {
        auto eq = token.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("DomainSpec: expected key=value, got '" + std::string(token) + "'");
        auto key = token.substr(0, eq);
        auto val = token.substr(eq + 1);
        if (key == "kind") {
            kind = std::string(val);
        } else if (key == "alpha") {
            alpha = Rat::parse(val);
        } else if (key == "beta") {
            beta = Rat::parse(val);
        } else if (key == "side") {
            for (auto piece : split(val, ',')) sides.push_back(Rat::parse(piece));
        } else if (key == "counts") {
            for (auto piece : split(val, ',')) {
                long long v = 0;
                auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
                if (ec != std::errc() || p != piece.data() + piece.size())
                    throw std::invalid_argument("DomainSpec: malformed count '" + std::string(piece) + "'");
                counts.push_back(v);
            }
        } else if (key == "d") {
            int v = 0;
            auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
            if (ec != std::errc() || p != val.data() + val.size())
                throw std::invalid_argument("DomainSpec: malformed dimension");
            d = v;
        } else {
            throw std::invalid_argument("DomainSpec: unknown key '" + std::string(key) + "'");
        }
    }

    if (kind == "power_cusp") {
        if (!alpha) throw std::invalid_argument("DomainSpec: power_cusp requires alpha");
        return power_cusp(*alpha);
    }
    if (kind == "log_cusp") {
        if (!beta) throw std::invalid_argument("DomainSpec: log_cusp requires beta");
        return log_cusp(*beta);
    }
    if (kind == "box") {
        if (sides.empty()) throw std::invalid_argument("DomainSpec: box requires side");
        if (sides.size() == 1 && d && *d > 1) sides.assign(static_cast<std::size_t>(*d), sides[0]);
        return box(std::move(sides));
    }
    if (kind == "comb") {
        if (!d) throw std::invalid_argument("DomainSpec: comb requires d");
        return comb_domain(counts, *d);
    }
    throw std::invalid_argument("DomainSpec: unsupported kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// containment
// ---------------------------------------------------------------------------

namespace {

// Half-open dyadic interval [m 2^-j, (m+1) 2^-j) inside the open interval
// (lo, hi), exactly.
bool interval_inside(long long m, int j, const Rat& lo, const Rat& hi) {
    Rat scale(1LL << j);
    return Rat(m) > lo * scale && Rat(m + 1) <= hi * scale;
}

bool power_cusp_column_row_ok(const DomainSpec& dom, int j, long long mx, long long u) {
    // |y|max <= x1^{-alpha}  <=>  u^b (mx+1)^a <= 2^{j(a+b)} with alpha = a/b
    long long a = dom.alpha.num();
    long long b = dom.alpha.den();
    cpp_int rhs = cpp_int(1) << static_cast<unsigned>(j * (a + b));
    cpp_int lhs = pow(cpp_int(u), static_cast<unsigned>(b)) * pow(cpp_int(mx + 1), static_cast<unsigned>(a));
    return lhs <= rhs;
}

}  // namespace

bool cube_contained(const DomainSpec& domain, int j, std::span<const long long> m) {
    check_level(j);
    if (static_cast<int>(m.size()) != domain.d)
        throw std::invalid_argument("cube_contained: lattice point dimension mismatch");
    double h = std::exp2(-j);

    switch (domain.kind) {
        case DomainSpec::Kind::box: {
            for (int i = 0; i < domain.d; ++i)
                if (!(m[i] >= 1 && Rat(m[i] + 1) <= domain.sides[i] * Rat(1LL << j))) return false;
            return true;
        }
        case DomainSpec::Kind::power_cusp: {
            long long mx = m[0], my = m[1];
            if (mx <= (1LL << j)) return false;  // need x0 > 1
            long long u = std::max(std::llabs(my), std::llabs(my + 1));
            return power_cusp_column_row_ok(domain, j, mx, u);
        }
        case DomainSpec::Kind::log_cusp: {
            long long mx = m[0], my = m[1];
            double x0 = static_cast<double>(mx) * h;
            if (!(x0 > std::exp(1.0))) return false;
            double x1 = static_cast<double>(mx + 1) * h;
            double ymax = static_cast<double>(std::max(std::llabs(my), std::llabs(my + 1))) * h;
            return ymax * log_cusp_scale(x1, domain.beta.to_double()) <= 1.0;
        }
        case DomainSpec::Kind::comb: {
            for (const auto& cube : domain.comb_cubes) {
                bool inside = true;
                for (int i = 0; i < domain.d && inside; ++i)
                    inside = interval_inside(m[i], j, cube.lo[i], cube.hi[i]);
                if (inside) return true;
            }
            return false;
        }
    }
    throw std::invalid_argument("cube_contained: unsupported kind");
}

// ---------------------------------------------------------------------------
// counting
// ---------------------------------------------------------------------------

namespace {

unsigned long long count_box(const DomainSpec& dom, int j) {
    unsigned long long total = 1;
    for (int i = 0; i < dom.d; ++i) {
        long long per_axis = floor_scaled(dom.sides[i], j) - 1;
        if (per_axis <= 0) return 0;
        total = checked_mul(total, static_cast<unsigned long long>(per_axis));
    }
    return total;
}

unsigned long long count_comb(const DomainSpec& dom, int j) {
    unsigned long long total = 0;
    for (const auto& cube : dom.comb_cubes) {
        unsigned long long per_cube = 1;
        for (int i = 0; i < dom.d && per_cube > 0; ++i) {
            // #{m : lo < m 2^-j, (m+1) 2^-j <= hi}
            long long n = floor_scaled(cube.hi[i], j) - floor_scaled(cube.lo[i], j) - 1;
            per_cube = n > 0 ? checked_mul(per_cube, static_cast<unsigned long long>(n)) : 0;
        }
        total = checked_add(total, per_cube);
    }
    return total;
}

// Layer-cake count for the power cusp: rows-per-column summed as
// sum_K #{columns with at least K rows above the axis}, doubled for symmetry.
unsigned long long count_power_cusp(const DomainSpec& dom, int j) {
    long long a = dom.alpha.num();
    long long b = dom.alpha.den();
    if (a > 64 || b > 64) throw std::invalid_argument("power_cusp: alpha numerator/denominator above 64 unsupported");
    const cpp_int rhs = cpp_int(1) << static_cast<unsigned>(j * (a + b));
    const long long xmin = (1LL << j) + 1;  // columns require x0 > 1

    // A column mx supports K rows iff (mx+1)^a K^b <= 2^{j(a+b)}.
    // Largest K with any admissible column:
    cpp_int kpow_min = pow(cpp_int(xmin + 1), static_cast<unsigned>(a));
    cpp_int kmax_ci = int_power_floor(rhs, kpow_min, static_cast<unsigned>(b));
    if (kmax_ci == 0) return 0;
    unsigned long long kmax = to_u64_checked(kmax_ci);

    auto partial = [&](unsigned long long k0, unsigned long long k1) {
        unsigned long long sum = 0;
        for (unsigned long long k = k0; k < k1; ++k) {
            cpp_int kp = pow(cpp_int(k), static_cast<unsigned>(b));
            cpp_int vmax = int_power_floor(rhs, kp, static_cast<unsigned>(a));  // largest mx+1
            cpp_int cols = vmax - 1 - (xmin - 1);
            if (cols <= 0) break;
            sum = checked_add(sum, to_u64_checked(cols));
        }
        return sum;
    };

    int workers = worker_count();
    unsigned long long total = 0;
    if (workers <= 1 || kmax < 4096) {
        total = partial(1, kmax + 1);
    } else {
        std::vector<unsigned long long> chunk(static_cast<std::size_t>(workers), 0);
        std::vector<std::thread> pool;
        unsigned long long step = kmax / static_cast<unsigned long long>(workers) + 1;
        for (int w = 0; w < workers; ++w) {
            unsigned long long k0 = 1 + step * static_cast<unsigned long long>(w);
            unsigned long long k1 = std::min(kmax + 1, k0 + step);
            if (k0 > kmax) break;
            pool.emplace_back([&, k0, k1, w] { chunk[static_cast<std::size_t>(w)] = partial(k0, k1); });
        }
        for (auto& t : pool) t.join();
        for (auto c : chunk) total = checked_add(total, c);
    }
    return checked_mul(total, 2);
}

unsigned long long count_log_cusp(const DomainSpec& dom, int j) {
    const double beta = dom.beta.to_double();
    const double scale = std::exp2(j);
    const long long mx_min = static_cast<long long>(std::floor(std::exp(1.0) * scale)) + 1;

    if (j <= 12) {
        // direct column loop
        unsigned long long total = 0;
        for (long long mx = mx_min;; ++mx) {
            double x1 = static_cast<double>(mx + 1) / scale;
            double rows = std::floor(scale / log_cusp_scale(x1, beta));
            if (rows < 1.0) break;
            total = checked_add(total, checked_mul(2, static_cast<unsigned long long>(rows)));
        }
        return total;
    }

    // layer-cake: for each row count K, the admissible columns satisfy
    // x1 * (ln x1)^beta <= 2^j / K
    double x_first = static_cast<double>(mx_min + 1) / scale;
    double kmax = std::floor(scale / log_cusp_scale(x_first, beta));
    if (kmax < 1.0) return 0;
    unsigned long long total = 0;
    for (unsigned long long k = 1; k <= static_cast<unsigned long long>(kmax); ++k) {
        double target = scale / static_cast<double>(k);
        double lo = std::exp(1.0), hi = target;  // ln >= 1 there, so x <= target
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            if (log_cusp_scale(mid, beta) <= target) lo = mid;
            else hi = mid;
        }
        long long cols = static_cast<long long>(std::floor(lo * scale)) - (mx_min - 1) - 1;
        if (cols <= 0) break;
        total = checked_add(total, checked_mul(2, static_cast<unsigned long long>(cols)));
    }
    return total;
}

}  // namespace

unsigned long long count_inner_cubes(const DomainSpec& domain, int j) {
    check_level(j);
    switch (domain.kind) {
        case DomainSpec::Kind::box: return count_box(domain, j);
        case DomainSpec::Kind::comb: return count_comb(domain, j);
        case DomainSpec::Kind::power_cusp: return count_power_cusp(domain, j);
        case DomainSpec::Kind::log_cusp: return count_log_cusp(domain, j);
    }
    throw std::invalid_argument("count_inner_cubes: unsupported kind");
}

BoxPackProfile boxpack_profile(const DomainSpec& domain, int j_min, int j_max) {
    check_level(j_min);
    check_level(j_max);
    if (j_min > j_max) throw std::invalid_argument("boxpack_profile: j_min must not exceed j_max");
    BoxPackProfile p;
    p.d = domain.d;
    for (int j = j_min; j <= j_max; ++j) p.rows.push_back({j, count_inner_cubes(domain, j), false});
    return p;
}

namespace {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 40> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

}  // namespace

std::string profile_csv(const BoxPackProfile& profile) {
    std::ostringstream out;
    out << "j,b_j,log2bj_over_j\n";
    for (const auto& row : profile.rows) {
        double ratio = std::numeric_limits<double>::quiet_NaN();
        if (row.j > 0 && row.count > 0) ratio = std::log2(static_cast<double>(row.count)) / row.j;
        out << row.j << "," << row.count << "," << fmt_double(ratio) << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// growth-exponent estimation
// ---------------------------------------------------------------------------

namespace {

struct LinFit {
    double intercept = 0, slope = 0, rss = 0, slope_stderr = 0;
};

LinFit fit_line(std::span<const double> x, std::span<const double> y) {
    std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - f.intercept - f.slope * x[i];
        f.rss += r * r;
    }
    if (n > 2) f.slope_stderr = std::sqrt(f.rss / static_cast<double>(n - 2) / sxx);
    return f;
}

struct CorrectedFit {
    double slope = 0, coef = 0, rss = 0, slope_stderr = 0;
    bool ok = false;
};

// y ~ a + slope * j + coef * g(j), solved by 3x3 normal equations.
template <class G>
CorrectedFit fit_line_with(std::span<const double> x, std::span<const double> y, G&& g) {
    std::size_t n = x.size();
    CorrectedFit f;
    if (n < 4) return f;
    double m[3][3] = {};
    double rhs[3] = {};
    for (std::size_t i = 0; i < n; ++i) {
        double reg[3] = {1.0, x[i], g(x[i])};
        for (int r = 0; r < 3; ++r) {
            rhs[r] += reg[r] * y[i];
            for (int c = 0; c < 3; ++c) m[r][c] += reg[r] * reg[c];
        }
    }
    auto det3 = [](double a[3][3]) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    double det = det3(m);
    if (std::fabs(det) < 1e-12) return f;
    double coef[3];
    for (int k = 0; k < 3; ++k) {
        double tmp[3][3];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) tmp[r][c] = (c == k) ? rhs[r] : m[r][c];
        coef[k] = det3(tmp) / det;
    }
    f.slope = coef[1];
    f.coef = coef[2];
    for (std::size_t i = 0; i < n; ++i) {
        double pred = coef[0] + coef[1] * x[i] + coef[2] * g(x[i]);
        f.rss += (y[i] - pred) * (y[i] - pred);
    }
    // slope variance from the (1,1) entry of (X'X)^{-1}
    double c11 = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    if (n > 3 && c11 > 0) f.slope_stderr = std::sqrt(f.rss / static_cast<double>(n - 3) * c11);
    f.ok = true;
    return f;
}

}  // namespace

BExponentEstimate estimate_b(const BoxPackProfile& profile) {
    std::vector<double> xs, ys;
    for (const auto& row : profile.rows) {
        if (row.unbounded) throw std::invalid_argument("estimate_b: profile contains an unbounded row");
        if (row.count > 0) {
            xs.push_back(static_cast<double>(row.j));
            ys.push_back(std::log2(static_cast<double>(row.count)));
        }
    }
    std::size_t n = xs.size();
    if (n < 3) throw std::invalid_argument("estimate_b: need at least 3 levels with positive counts");

    // regression window for the plain slope: top half of the positive levels
    std::size_t keep = std::max<std::size_t>(3, (n + 1) / 2);
    std::span<const double> xw(xs.data() + (n - keep), keep);
    std::span<const double> yw(ys.data() + (n - keep), keep);
    LinFit lin = fit_line(xw, yw);

    BExponentEstimate est;
    est.j_window = {static_cast<int>(xw.front()), static_cast<int>(xw.back())};
    est.b_hat = lin.slope;
    est.stderr_ = lin.slope_stderr;

    LinFit lin_full = fit_line(xs, ys);
    if (n < 5 || lin_full.rss <= 1e-8 * static_cast<double>(n)) return est;

    // Finite-level counts approach c * 2^{bj} from below; the residual trend
    // tells the boundary cases apart. A genuine log2(j) term signals the
    // limsup-infinite boundary; geometric or reciprocal corrections are
    // ordinary truncation effects and must not trip the flag. The correction
    // models use every positive level (they need the longer lever arm).
    double rho = 0.6;
    if (n >= 4) {
        double d1 = ys[n - 1] - ys[n - 2], d2 = ys[n - 2] - ys[n - 3], d3 = ys[n - 3] - ys[n - 4];
        if (std::fabs(d2 - d3) > 1e-12) rho = std::clamp((d1 - d2) / (d2 - d3), 0.25, 0.95);
    }
    auto log_model = fit_line_with(xs, ys, [](double j) { return std::log2(j + 1.0); });
    auto geo_model = fit_line_with(xs, ys, [rho](double j) { return std::pow(rho, j); });
    auto rec_model = fit_line_with(xs, ys, [](double j) { return 1.0 / (j + 1.0); });

    const CorrectedFit* best = nullptr;
    for (const CorrectedFit* cand : {&log_model, &geo_model, &rec_model})
        if (cand->ok && (!best || cand->rss < best->rss)) best = cand;
    if (!best || best->rss > 0.1 * lin_full.rss) return est;

    est.b_hat = best->slope;
    est.stderr_ = best->slope_stderr;
    est.j_window = {static_cast<int>(xs.front()), static_cast<int>(xs.back())};
    est.log_correction = best == &log_model && std::fabs(best->coef) >= 0.25;
    return est;
}

// ---------------------------------------------------------------------------
// inner-region measure route
// ---------------------------------------------------------------------------

double inner_region_measure(const DomainSpec& domain, double r) {
    if (!(r > 0) || !std::isfinite(r)) throw std::invalid_argument("inner_region_measure: r must be positive");
    using boost::math::quadrature::gauss_kronrod;

    switch (domain.kind) {
        case DomainSpec::Kind::box: {
            double vol = 1.0;
            for (const auto& l : domain.sides) vol *= std::max(0.0, l.to_double() - 2.0 * r);
            return vol;
        }
        case DomainSpec::Kind::power_cusp: {
            double alpha = domain.alpha.to_double();
            double x_hi = std::pow(r, -1.0 / alpha);  // f(x) = r
            double x_lo = 1.0 + r;
            if (x_hi <= x_lo) return 0.0;
            auto f = [&](double x) { return 2.0 * std::max(0.0, std::pow(x, -alpha) - r); };
            return gauss_kronrod<double, 15>::integrate(f, x_lo, x_hi, 12, 1e-10);
        }
        case DomainSpec::Kind::log_cusp: {
            double beta = domain.beta.to_double();
            double e = std::exp(1.0);
            double lo = e + r, hi = 1.0 / r;  // f(x) >= r forces x <= 1/r on x > e
            if (log_cusp_scale(lo, beta) >= 1.0 / r) return 0.0;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                if (log_cusp_scale(mid, beta) < 1.0 / r) lo = mid;
                else hi = mid;
            }
            auto f = [&](double x) { return 2.0 * std::max(0.0, 1.0 / log_cusp_scale(x, beta) - r); };
            return gauss_kronrod<double, 15>::integrate(f, e + r, lo, 12, 1e-10);
        }
        case DomainSpec::Kind::comb:
            throw std::invalid_argument("inner_region_measure: comb domains are unsupported");
    }
    throw std::invalid_argument("inner_region_measure: unsupported kind");
}

BExponentEstimate estimate_b_via_measure(const DomainSpec& domain, std::span<const double> r_grid) {
    if (r_grid.size() < 3) throw std::invalid_argument("estimate_b_via_measure: need at least 3 radii");
    std::vector<double> xs, ys;
    for (double r : r_grid) {
        double vol = inner_region_measure(domain, r);
        if (vol > 0) {
            xs.push_back(std::log2(r));
            ys.push_back(std::log2(vol));
        }
    }
    if (xs.size() < 3) throw std::invalid_argument("estimate_b_via_measure: inner region empty on the grid");
    LinFit lin = fit_line(xs, ys);
    BExponentEstimate est;
    est.b_hat = domain.d + std::fabs(lin.slope);
    est.stderr_ = lin.slope_stderr;
    est.j_window = {static_cast<int>(std::lround(-xs.back())), static_cast<int>(std::lround(-xs.front()))};
    return est;
}

}  // namespace nucembed
