#include "wafomlab/qmc.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "wafomlab/wafom.hpp"

namespace wafomlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_cyclic(const GroupSpec& spec, const char* what) {
    if (!spec.is_cyclic()) {
        throw error(std::string(what) + " is defined for cyclic groups only");
    }
}

// Largest T with b^T <= 2^52; digit extraction from doubles is exact below that.
std::uint32_t max_digits(std::uint64_t b) {
    std::uint32_t t = 0;
    std::uint64_t pw = 1;
    const std::uint64_t cap = std::uint64_t(1) << 52;
    while (pw <= cap / b) {
        pw *= b;
        ++t;
    }
    return t;
}

std::uint64_t pow_u64(std::uint64_t b, std::uint32_t e) {
    std::uint64_t out = 1;
    for (std::uint32_t i = 0; i < e; ++i) out *= b;
    return out;
}

// First `count` base-b digits of x in [0,1), most significant first, read off
// the nearest b-adic rational with max_digits(b) digits.
void digits_of_unit(double x, std::uint64_t b, std::uint32_t count, std::uint32_t* out) {
    if (!(x >= 0.0) || x >= 1.0) throw error("walsh argument must lie in [0,1)");
    const std::uint32_t tmax = max_digits(b);
    if (count > tmax) {
        throw capacity_error("requested more base-" + std::to_string(b) +
                             " digits than a double can hold exactly");
    }
    const std::uint64_t scale = pow_u64(b, tmax);
    std::uint64_t m = std::uint64_t(std::llround(x * double(scale)));
    if (m >= scale) m = scale - 1;
    std::uint64_t place = scale;
    for (std::uint32_t j = 0; j < count; ++j) {
        place /= b;
        out[j] = std::uint32_t((m / place) % b);
    }
}

struct SeparableParts {
    std::function<double(double)> value;           // one-coordinate factor
    std::function<double(double, double)> mean;    // average over [a, a+h)
    double integral01;                             // integral of the factor over [0,1)
};

TestFunction separable(std::string name, std::uint32_t s, SeparableParts parts,
                       std::optional<double> gradient_bound) {
    TestFunction f;
    f.name = std::move(name);
    f.dimension = s;
    f.exact_integral = std::pow(parts.integral01, double(s));
    f.gradient_bound = gradient_bound;
    f.evaluate = [parts, s](std::span<const double> x) {
        double prod = 1.0;
        for (std::uint32_t i = 0; i < s; ++i) prod *= parts.value(x[i]);
        return prod;
    };
    f.cube_average = [parts, s](const DigitMatrix& b_matrix) {
        require_cyclic(b_matrix.spec(), "cube average");
        if (b_matrix.rows() != s) throw error("cube average: dimension mismatch");
        const double h = std::pow(double(b_matrix.spec().order()), -double(b_matrix.cols()));
        const auto corner = point_of(b_matrix, false);
        double prod = 1.0;
        for (std::uint32_t i = 0; i < s; ++i) prod *= parts.mean(corner[i], h);
        return prod;
    };
    return f;
}

} // namespace

TestFunction prod_linear(std::uint32_t s) {
    return separable("prod_linear", s,
                     {[](double x) { return x; },
                      [](double a, double h) { return a + h / 2.0; }, 0.5},
                     1.0);
}

TestFunction prod_exp(std::uint32_t s) {
    return separable("prod_exp", s,
                     {[](double x) { return std::exp(x); },
                      [](double a, double h) { return std::exp(a) * std::expm1(h) / h; },
                      std::expm1(1.0)},
                     std::exp(double(s)));
}

TestFunction prod_centered(std::uint32_t s, double gamma) {
    auto f = separable("prod_centered", s,
                       {[gamma](double x) { return 1.0 + gamma * (x - 0.5); },
                        [gamma](double a, double h) { return 1.0 + gamma * (a + h / 2.0 - 0.5); },
                        1.0},
                       std::abs(gamma) *
                           std::pow(1.0 + std::abs(gamma) / 2.0, double(s > 0 ? s - 1 : 0)));
    f.exact_integral = 1.0; // pow(1.0, s) exactly, spelled out
    return f;
}

TestFunction prod_quadratic(std::uint32_t s) {
    return separable("prod_quadratic", s,
                     {[](double x) { return x * x; },
                      [](double a, double h) { return a * a + a * h + h * h / 3.0; },
                      1.0 / 3.0},
                     2.0);
}

TestFunction make_test_function(const std::string& name, std::uint32_t s, double gamma) {
    if (name == "prod_linear") return prod_linear(s);
    if (name == "prod_exp") return prod_exp(s);
    if (name == "prod_centered") return prod_centered(s, gamma);
    if (name == "prod_quadratic") return prod_quadratic(s);
    throw error("unknown test function '" + name + "'");
}

std::vector<std::string> test_function_names() {
    return {"prod_linear", "prod_exp", "prod_centered", "prod_quadratic"};
}

TestFunction step_function(const MatrixSpace& space, std::vector<double> values,
                           std::string name) {
    require_cyclic(space.spec(), "step function");
    if (values.size() != space.size()) throw error("one value per grid cell required");
    const std::uint64_t b = space.spec().order();
    const std::uint32_t s = space.rows();
    const std::uint32_t n = space.cols();

    auto shared = std::make_shared<std::vector<double>>(std::move(values));
    TestFunction f;
    f.name = std::move(name);
    f.dimension = s;
    double mean = 0.0;
    for (double v : *shared) mean += v;
    f.exact_integral = mean / double(space.size());
    f.evaluate = [shared, space, b, s, n](std::span<const double> x) {
        DigitMatrix cell(space.spec(), s, n);
        std::vector<std::uint32_t> digits(n);
        for (std::uint32_t i = 0; i < s; ++i) {
            digits_of_unit(x[i], b, n, digits.data());
            for (std::uint32_t j = 0; j < n; ++j) cell.set_entry_code(i, j, digits[j]);
        }
        return (*shared)[space.code(cell)];
    };
    f.cube_average = [shared, space](const DigitMatrix& cell) {
        return (*shared)[space.code(cell)];
    };
    return f;
}

std::vector<double> point_of(const DigitMatrix& b_matrix, bool centered) {
    require_cyclic(b_matrix.spec(), "point association");
    const std::uint64_t b = b_matrix.spec().order();
    const std::uint32_t s = b_matrix.rows();
    const std::uint32_t n = b_matrix.cols();
    if (n > max_digits(b)) {
        throw capacity_error("precision n too large for exact double coordinates");
    }
    const double scale = double(pow_u64(b, n));
    std::vector<double> out(s);
    for (std::uint32_t i = 0; i < s; ++i) {
        std::uint64_t v = 0; // sum_j b_ij b^(n-j)
        for (std::uint32_t j = 0; j < n; ++j) v = v * b + b_matrix.entry_code(i, j);
        out[i] = (centered ? double(v) + 0.5 : double(v)) / scale;
    }
    return out;
}

std::vector<std::uint64_t> phi(const DigitMatrix& a) {
    require_cyclic(a.spec(), "walsh index map");
    const std::uint64_t b = a.spec().order();
    const std::uint32_t n = a.cols();
    if (n > max_digits(b)) throw capacity_error("precision n too large for 64-bit walsh indices");
    std::vector<std::uint64_t> out(a.rows());
    for (std::uint32_t i = 0; i < a.rows(); ++i) {
        std::uint64_t k = 0;
        for (std::uint32_t j = n; j-- > 0;) k = k * b + a.entry_code(i, j);
        out[i] = k;
    }
    return out;
}

std::complex<double> walsh(std::uint64_t k, std::uint64_t b, double x) {
    const std::uint64_t ks[] = {k};
    const double xs[] = {x};
    return walsh_multi(ks, b, xs);
}

std::complex<double> walsh_multi(std::span<const std::uint64_t> k, std::uint64_t b,
                                 std::span<const double> x) {
    if (b < 2) throw error("walsh base must be at least 2");
    if (k.size() != x.size()) throw error("walsh index/point dimension mismatch");
    std::uint64_t phase = 0;
    std::uint32_t digits[64];
    for (std::size_t i = 0; i < k.size(); ++i) {
        std::uint32_t kappa[64];
        std::uint32_t t = 0;
        for (std::uint64_t kk = k[i]; kk != 0; kk /= b) kappa[t++] = std::uint32_t(kk % b);
        if (t == 0) continue;
        digits_of_unit(x[i], b, t, digits);
        for (std::uint32_t j = 0; j < t; ++j) {
            phase = (phase + std::uint64_t(kappa[j]) * digits[j]) % b;
        }
    }
    return std::polar(1.0, kTwoPi * (double(phase) / double(b)));
}

QmcResult discretized_qmc(const PointGroup& group, const TestFunction& f, unsigned threads) {
    require_cyclic(group.spec(), "discretized quadrature");
    if (f.dimension != group.rows()) {
        throw error("integrand dimension " + std::to_string(f.dimension) +
                    " does not match point set dimension " + std::to_string(group.rows()));
    }

    double sum_avg = 0.0, comp_avg = 0.0;
    double sum_ctr = 0.0, comp_ctr = 0.0;
    auto kahan = [](double& sum, double& comp, double x) {
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    };

    const auto& elems = group.elements();
    for (std::size_t e = 0; e < elems.size(); ++e) {
        const DigitMatrix cell = elems.at(e);
        kahan(sum_avg, comp_avg, f.cube_average(cell));
        const auto center = point_of(cell, true);
        kahan(sum_ctr, comp_ctr, f.evaluate(center));
    }

    QmcResult out;
    out.i_pn = (sum_avg + comp_avg) / double(group.order());
    out.i_center = (sum_ctr + comp_ctr) / double(group.order());
    out.exact = f.exact_integral;
    out.err_discretized = std::abs(out.i_pn - out.exact);
    out.err_center = std::abs(out.i_center - out.exact);
    out.wafom = wafom_fast(group, threads);
    return out;
}

WalshCheck walsh_coefficient_check(const TestFunction& f, const MatrixSpace& space,
                                   const DigitMatrix& a) {
    require_cyclic(space.spec(), "walsh coefficient check");
    if (f.dimension != space.rows()) throw error("integrand/space dimension mismatch");
    if (a.spec() != space.spec() || a.rows() != space.rows() || a.cols() != space.cols()) {
        throw spec_mismatch_error("character does not live in this matrix space");
    }

    const auto indices = phi(a);
    std::vector<std::complex<double>> table(space.size());
    std::complex<double> lhs = 0.0;
    const double volume = 1.0 / double(space.size());
    for (std::uint64_t code = 0; code < space.size(); ++code) {
        const DigitMatrix cell = space.matrix(code);
        const double fn = f.cube_average(cell);
        table[code] = fn;
        lhs += volume * fn * walsh_multi(indices, space.spec().order(), point_of(cell, false));
    }
    const std::complex<double> rhs = dft_at(space, table, a);
    return {lhs, rhs};
}

} // namespace wafomlab
