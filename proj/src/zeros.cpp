#include "ampcap/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "ampcap/errors.hpp"

namespace ampcap::zeros {
namespace {

constexpr double kBisectWidth = 1e-12;

double eval_checked(const std::function<double(double)>& f, double x) {
    const double v = f(x);
    if (!std::isfinite(v))
        throw numerical_error(
            "count_sign_changes: non-finite value at abscissa " +
                std::to_string(x),
            std::numeric_limits<double>::quiet_NaN());
    return v;
}

double bisect(const std::function<double(double)>& f, double a, double b,
              double fa) {
    while (b - a > kBisectWidth) {
        const double m = 0.5 * (a + b);
        const double fm = eval_checked(f, m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

struct ScanResult {
    std::vector<double> zeros;
    bool exact_grid_zero = false;
};

// One scan pass.  Grid values that are exactly zero extend the pending
// bracket instead of deciding it, so a crossing through a grid node is still
// counted once and a tangential touch is not counted at all.  An exact zero
// is also flagged: it can mask a crossing pair hiding inside one cell, which
// only a finer pass can resolve.
ScanResult scan_once(const std::function<double(double)>& f, double lo,
                     double hi, double step) {
    ScanResult out;
    const long cells = std::max(1L, static_cast<long>(std::ceil((hi - lo) / step)));
    double last_x = lo;
    double last_v = eval_checked(f, lo);
    out.exact_grid_zero = (last_v == 0.0);
    for (long j = 1; j <= cells; ++j) {
        const double x = (j == cells) ? hi : lo + j * step;
        const double v = eval_checked(f, x);
        if (v == 0.0) {
            out.exact_grid_zero = true;
            continue;
        }
        if (last_v != 0.0 && (last_v < 0.0) != (v < 0.0))
            out.zeros.push_back(bisect(f, last_x, x, last_v));
        last_x = x;
        last_v = v;
    }
    return out;
}

double min_gap(const std::vector<double>& zs) {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < zs.size(); ++i)
        g = std::min(g, zs[i + 1] - zs[i]);
    return g;
}

}  // namespace

ZeroCount count_sign_changes(const std::function<double(double)>& f, double lo,
                             double hi, double step) {
    if (!(lo < hi))
        throw std::domain_error("count_sign_changes: requires lo < hi");
    if (!(step > 0.0))
        throw std::domain_error("count_sign_changes: requires step > 0");
    ZeroCount out;
    out.lo = lo;
    out.hi = hi;
    out.grid_step = step;
    ScanResult scan = scan_once(f, lo, hi, step);
    if (min_gap(scan.zeros) <= 4.0 * step || scan.exact_grid_zero) {
        // one-level refinement; crossings still crowded afterwards stay
        // uncertified rather than guessed
        out.grid_step = step / 16.0;
        scan = scan_once(f, lo, hi, out.grid_step);
    }
    out.zeros = std::move(scan.zeros);
    out.count = static_cast<int>(out.zeros.size());
    out.certified = min_gap(out.zeros) > 4.0 * out.grid_step;
    return out;
}

ZeroCount count_extreme_points(
    const DiscreteInput& input,
    std::optional<std::pair<double, double>> interval) {
    const double A = input.amplitude();
    const double extent = 2.0 * A + 1.0;
    double lo = -extent, hi = extent;
    if (interval) {
        lo = interval->first;
        hi = interval->second;
        if (!(lo < hi))
            throw std::domain_error("count_extreme_points: bad interval");
    }
    double step = 0.01;
    if (input.size() > 1) step = std::min(step, input.min_gap() / 20.0);
    step = std::max(step, (hi - lo) * 1e-7);
    const auto f = [&input](double y) { return output_pdf_deriv(input, y); };
    return count_sign_changes(f, lo, hi, step);
}

namespace {

bool lexicographically_before(const DiscreteInput& a, const DiscreteInput& b) {
    if (a.points() != b.points()) return a.points() < b.points();
    return a.probs() < b.probs();
}

class CandidateFactory {
public:
    CandidateFactory(double A, int k_max, std::uint64_t seed)
        : A_(A), k_max_(k_max), rng_(seed) {}

    DiscreteInput equispaced_uniform(int k) {
        return DiscreteInput(equispaced_points(k),
                             std::vector<double>(k, 1.0 / k));
    }

    DiscreteInput random_candidate() {
        const int k = 2 + static_cast<int>(rng_() % (k_max_ - 1));
        std::vector<double> pts = equispaced_points(k);
        if (coin()) jitter_locations(pts);
        return DiscreteInput(std::move(pts), random_probs(k));
    }

    DiscreteInput perturb(const DiscreteInput& base, double scale) {
        std::vector<double> pts = base.points();
        std::vector<double> pr = base.probs();
        const int k = static_cast<int>(pts.size());
        if (coin()) {
            const int i = static_cast<int>(rng_() % k);
            pts[i] = std::clamp(pts[i] + scale * A_ * normal(), -A_, A_);
            std::sort(pts.begin(), pts.end());
            enforce_separation(pts);
        } else {
            const int i = static_cast<int>(rng_() % k);
            pr[i] = std::max(1e-4, pr[i] * std::exp(0.5 * normal()));
            double s = 0.0;
            for (double p : pr) s += p;
            for (double& p : pr) p /= s;
        }
        return DiscreteInput(std::move(pts), std::move(pr));
    }

private:
    std::vector<double> equispaced_points(int k) {
        std::vector<double> pts(k);
        for (int i = 0; i < k; ++i)
            pts[i] = -A_ + 2.0 * A_ * i / (k - 1.0);
        return pts;
    }

    void jitter_locations(std::vector<double>& pts) {
        const double gap = 2.0 * A_ / (static_cast<double>(pts.size()) - 1.0);
        for (double& x : pts)
            x = std::clamp(x + 0.3 * gap * normal(), -A_, A_);
        std::sort(pts.begin(), pts.end());
        enforce_separation(pts);
    }

    void enforce_separation(std::vector<double>& pts) {
        const double sep = A_ / (8.0 * static_cast<double>(pts.size()));
        for (std::size_t i = 1; i < pts.size(); ++i)
            pts[i] = std::max(pts[i], pts[i - 1] + sep);
        const double over = pts.back() - A_;
        if (over > 0.0)
            for (double& x : pts) x -= over;
    }

    std::vector<double> random_probs(int k) {
        std::vector<double> pr(k);
        double s = 0.0;
        for (double& p : pr) {
            p = 1e-3 - std::log(uniform01());  // shifted exponential
            s += p;
        }
        for (double& p : pr) p /= s;
        return pr;
    }

    bool coin() { return (rng_() & 1u) != 0u; }
    double uniform01() {
        return std::uniform_real_distribution<double>(
            std::numeric_limits<double>::min(), 1.0)(rng_);
    }
    double normal() { return std::normal_distribution<double>()(rng_); }

    double A_;
    int k_max_;
    std::mt19937_64 rng_;
};

}  // namespace

WorstCaseResult worst_case_zero_search(double A, int k_max, int budget,
                                       std::uint64_t seed) {
    if (!(A > 0.0))
        throw std::domain_error("worst_case_zero_search: requires A > 0");
    if (k_max < 2)
        throw std::domain_error("worst_case_zero_search: requires k_max >= 2");
    if (budget < 1)
        throw std::domain_error("worst_case_zero_search: requires budget >= 1");

    CandidateFactory factory(A, k_max, seed);
    WorstCaseResult best{-1, DiscreteInput::point_mass(0.0), false, seed,
                         budget};
    int evals = 0;

    const auto consider = [&](const DiscreteInput& cand) {
        const ZeroCount zc = count_extreme_points(cand);
        ++evals;
        if (zc.count > best.max_count ||
            (zc.count == best.max_count &&
             lexicographically_before(cand, best.witness))) {
            best.max_count = zc.count;
            best.witness = cand;
            best.certified = zc.certified;
        }
    };

    for (int k = 2; k <= k_max && evals < budget; ++k)
        consider(factory.equispaced_uniform(k));
    const int explore = budget * 3 / 5;
    while (evals < explore) consider(factory.random_candidate());
    // local hill climbing with a shrinking move size
    while (evals < budget) {
        const double progress = static_cast<double>(evals) / budget;
        consider(factory.perturb(best.witness, 0.08 * (1.0 - progress) + 0.01));
    }
    return best;
}

int mixture_zero_oracle(std::span<const double> weights,
                        std::span<const double> means,
                        std::span<const double> variances) {
    const std::size_t m = weights.size();
    if (m < 2 || means.size() != m || variances.size() != m)
        throw std::invalid_argument(
            "mixture_zero_oracle: need k+1 >= 2 components of equal length");
    int negatives = 0;
    for (double w : weights) {
        if (w < 0.0) ++negatives;
        if (w == 0.0)
            throw std::invalid_argument("mixture_zero_oracle: zero weight");
    }
    if (negatives != 1)
        throw std::invalid_argument(
            "mixture_zero_oracle: exactly one weight must be negative");
    for (std::size_t i = 0; i < m; ++i) {
        if (!(variances[i] > 0.0))
            throw std::invalid_argument(
                "mixture_zero_oracle: variances must be positive");
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::fabs(variances[i] - variances[j]) <=
                1e-12 * std::max(variances[i], variances[j]))
                throw std::invalid_argument(
                    "mixture_zero_oracle: variances must be pairwise distinct");
    }

    const auto h = [&](double y) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double d = y - means[i];
            s += weights[i] * std::exp(-0.5 * d * d / variances[i]);
        }
        return s;
    };

    // Beyond the radius where (a) every term's ratio to the slowest-decaying
    // component is falling and (b) that component carries more than twice the
    // rest, h keeps the slow component's sign, so all zeros are inside.
    std::size_t slow = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (variances[i] > variances[slow]) slow = i;
    const double sd_max = std::sqrt(variances[slow]);
    double hi = means[slow], lo = means[slow];
    for (std::size_t i = 0; i < m; ++i) {
        hi = std::max(hi, means[i] + 6.0 * std::sqrt(variances[i]));
        lo = std::min(lo, means[i] - 6.0 * std::sqrt(variances[i]));
        if (i == slow) continue;
        const double denom = 1.0 / variances[i] - 1.0 / variances[slow];
        const double turn =
            (means[i] / variances[i] - means[slow] / variances[slow]) / denom;
        hi = std::max(hi, turn);
        lo = std::min(lo, turn);
    }
    const auto dominated = [&](double y) {
        const double dj = y - means[slow];
        const double lead =
            std::fabs(weights[slow]) * std::exp(-0.5 * dj * dj / variances[slow]);
        double rest = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == slow) continue;
            const double d = y - means[i];
            rest += std::fabs(weights[i]) * std::exp(-0.5 * d * d / variances[i]);
        }
        return rest < 0.5 * lead;
    };
    for (int guard = 0; !dominated(hi); ++guard) {
        hi += sd_max;
        if (guard > 100000)
            throw numerical_error("mixture_zero_oracle: no dominance radius",
                                  hi);
    }
    for (int guard = 0; !dominated(lo); ++guard) {
        lo -= sd_max;
        if (guard > 100000)
            throw numerical_error("mixture_zero_oracle: no dominance radius",
                                  lo);
    }

    const ZeroCount zc = count_sign_changes(h, lo, hi, (hi - lo) / 20000.0);
    const int k = static_cast<int>(m) - 1;
    if (zc.count > 2 * k)
        throw theory_violation_error(
            "mixture_zero_oracle: counted " + std::to_string(zc.count) +
            " zeros for a combination of " + std::to_string(m) +
            " distinct-variance Gaussians (limit " + std::to_string(2 * k) +
            "); this indicates a counting bug");
    return zc.count;
}

SandwichResult sandwich_check(const DiscreteInput& input, double kappa,
                              double radius) {
    if (!(kappa > 0.0))
        throw std::domain_error("sandwich_check: requires kappa > 0");
    if (!(radius > 0.0))
        throw std::domain_error("sandwich_check: requires radius > 0");
    const auto f = [&](double y) { return output_pdf(input, y) - kappa; };
    const ZeroCount zc =
        count_sign_changes(f, -radius, radius, 2e-3 * radius);
    SandwichResult out;
    out.zero_count = zc.count;
    const int k = static_cast<int>(input.size());
    out.lower_ok = zc.count <= 2 * k;
    out.upper_ok = k <= zc.count;
    return out;
}

}  // namespace ampcap::zeros
