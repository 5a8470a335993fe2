#include "perco/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "perco/sampler.hpp"

namespace perco {

namespace {
constexpr double kZ95 = 1.959963984540054;
}

ProbEstimate wilson(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("wilson needs at least one trial");
    if (successes > trials) throw std::invalid_argument("successes exceed trials");
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double center = (ph + z2 / (2 * n)) / denom;
    const double half = kZ95 * std::sqrt(ph * (1 - ph) / n + z2 / (4 * n * n)) / denom;
    ProbEstimate pe;
    pe.successes = successes;
    pe.trials = trials;
    pe.p_hat = ph;
    // exact clamps so boundary cases carry no fp residue
    pe.ci_low = successes == 0 ? 0.0 : std::max(0.0, center - half);
    pe.ci_high = successes == trials ? 1.0 : std::min(1.0, center + half);
    return pe;
}

RateEstimate rate_from_prob(const ProbEstimate& pe, int N, std::string kind,
                            std::optional<int> M) {
    RateEstimate re;
    re.N = N;
    re.M = M;
    re.kind = std::move(kind);
    re.prob = pe;
    re.ci_low = pe.ci_high >= 1.0 ? 0.0 : -std::log(pe.ci_high) / N;
    if (pe.successes == 0) {
        re.one_sided = true;
        re.rate = re.ci_low; // lower bound, not infinity
        re.ci_high = pos_inf();
    } else {
        re.rate = -std::log(pe.p_hat) / N;
        re.ci_high = pe.ci_low <= 0.0 ? pos_inf() : -std::log(pe.ci_low) / N;
    }
    return re;
}

std::uint64_t parallel_count(std::uint64_t replicas, int threads,
                             const std::function<bool(std::uint64_t)>& trial) {
    if (replicas == 0) throw std::invalid_argument("need at least one replica");
    int nt = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    nt = std::max(1, std::min<int>(nt, 64));
    if (nt == 1 || replicas < 256) {
        std::uint64_t c = 0;
        for (std::uint64_t i = 0; i < replicas; ++i) c += trial(i) ? 1 : 0;
        return c;
    }
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(nt), 0);
    std::vector<std::thread> pool;
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            std::uint64_t c = 0;
            for (std::uint64_t i = static_cast<std::uint64_t>(t); i < replicas;
                 i += static_cast<std::uint64_t>(nt))
                c += trial(i) ? 1 : 0;
            counts[static_cast<std::size_t>(t)] = c;
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

ProbEstimate estimate_prob(const EventSpec& spec, const DensityProfile& prof, int N,
                           std::uint64_t replicas, std::uint64_t seed, int threads) {
    prof.validate();
    std::uint64_t succ = parallel_count(replicas, threads, [&](std::uint64_t rep) {
        LazyBonds src{SeedSpec{seed, rep}, prof, N};
        return evaluate_event(src, spec);
    });
    return wilson(succ, replicas);
}

std::vector<ProbEstimate> estimate_probs_shared(const std::vector<EventSpec>& specs,
                                                const DensityProfile& prof, int N,
                                                std::uint64_t replicas, std::uint64_t seed,
                                                int threads) {
    prof.validate();
    if (specs.empty()) return {};
    std::vector<std::uint64_t> counts(specs.size(), 0);
    for (std::size_t j = 0; j < specs.size(); ++j) {
        counts[j] = parallel_count(replicas, threads, [&](std::uint64_t rep) {
            LazyBonds src{SeedSpec{seed, rep}, prof, N};
            return evaluate_event(src, specs[j]);
        });
    }
    std::vector<ProbEstimate> out;
    out.reserve(specs.size());
    for (auto c : counts) out.push_back(wilson(c, replicas));
    return out;
}

RateEstimate estimate_gamma(const DensityProfile& prof, int N, int M, std::uint64_t replicas,
                            std::uint64_t seed, int threads, int trunc) {
    if (M < 1) throw std::invalid_argument("estimate_gamma needs M >= 1");
    EventSpec e;
    e.kind = EventKind::NoEscape;
    e.N = N;
    e.M = M;
    e.trunc = trunc;
    return rate_from_prob(estimate_prob(e, prof, N, replicas, seed, threads), N, "gamma", M);
}

RateEstimate estimate_alpha(double r, int N, std::uint64_t replicas, std::uint64_t seed,
                            int threads, int half_height) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("alpha needs r in (0,1]");
    if (r == 1.0) {
        // sure event, rate 0
        ProbEstimate pe = wilson(replicas, replicas);
        return rate_from_prob(pe, N, "alpha", std::nullopt);
    }
    EventSpec e;
    e.kind = EventKind::PointToLine;
    e.N = N;
    // Truncation mirrors the a = ceil(6 gamma / zeta) window trick; with
    // both rates of the same order the default margin is 6N.
    e.M = half_height > 0 ? half_height : 6 * N;
    auto prof = DensityProfile::uniform(r);
    return rate_from_prob(estimate_prob(e, prof, N, replicas, seed, threads), N, "alpha");
}

RateEstimate estimate_mu(const DensityProfile& prof, int N, int M, std::uint64_t replicas,
                         std::uint64_t seed, int threads) {
    if (M < 1) throw std::invalid_argument("estimate_mu needs M >= 1");
    EventSpec e;
    e.kind = EventKind::DualBottom;
    e.N = N;
    e.M = M;
    return rate_from_prob(estimate_prob(e, prof, N, replicas, seed, threads), N, "mu", M);
}

DecayFit fit_dual_decay(double p, const std::vector<int>& distances, std::uint64_t replicas,
                        std::uint64_t seed, int threads, int window_height) {
    if (!(p > 0.5)) throw std::invalid_argument("fit_dual_decay needs supercritical p > 1/2");
    if (distances.size() < 2) throw std::invalid_argument("need at least two distances");
    auto prof = DensityProfile::uniform(p);
    std::vector<double> xs, ys;
    DecayFit fit;
    for (int d : distances) {
        EventSpec e;
        e.kind = EventKind::DualCorner;
        e.N = d;
        e.M = window_height > 0 ? window_height : std::max(4, d);
        ProbEstimate pe = estimate_prob(e, prof, d, replicas, seed + static_cast<std::uint64_t>(d),
                                        threads);
        if (pe.successes == 0) {
            ++fit.dropped;
            continue;
        }
        xs.push_back(d);
        ys.push_back(std::log(pe.p_hat));
        fit.used_distances.push_back(d);
    }
    if (xs.size() < 2)
        throw std::runtime_error("fit_dual_decay: fewer than two usable distances");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.log_c = (sy - slope * sx) / n;
    fit.zeta = -slope;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.residuals.push_back(ys[i] - (fit.log_c + slope * xs[i]));
    return fit;
}

RussoResult russo_derivative(double p, int N, int m, std::uint64_t replicas,
                             std::uint64_t seed, int threads, double h) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("russo needs p in (0,1)");
    if (!(p - h > 0.0 && p + h < 1.0)) throw std::invalid_argument("fd step leaves (0,1)");
    EventSpec e;
    e.kind = EventKind::WideCross;
    e.N = N;
    e.m = m;
    const Region win = e.required_region();
    const std::int64_t nb = win.bond_count();

    // covariance route
    std::vector<double> omega(replicas), ind(replicas);
    auto prof = DensityProfile::uniform(p);
    parallel_count(replicas, threads, [&](std::uint64_t rep) {
        LazyBonds src{SeedSpec{seed, rep}, prof, N};
        std::uint64_t open = 0;
        for (std::int64_t i = 0; i < nb; ++i) open += src.open(win.bond_at(i)) ? 1 : 0;
        omega[rep] = static_cast<double>(open);
        ind[rep] = evaluate_event(src, e) ? 1.0 : 0.0;
        return false;
    });
    const double n = static_cast<double>(replicas);
    double mo = 0, mi = 0;
    for (std::uint64_t i = 0; i < replicas; ++i) {
        mo += omega[i];
        mi += ind[i];
    }
    mo /= n;
    mi /= n;
    double cov = 0, var_z = 0;
    for (std::uint64_t i = 0; i < replicas; ++i) {
        double z = (omega[i] - mo) * (ind[i] - mi);
        cov += z;
    }
    cov /= (n - 1);
    for (std::uint64_t i = 0; i < replicas; ++i) {
        double z = (omega[i] - mo) * (ind[i] - mi) - cov;
        var_z += z * z;
    }
    var_z /= (n - 1);

    RussoResult out;
    out.h = h;
    const double scale = 1.0 / (p * (1.0 - p));
    out.cov_estimate = scale * cov;
    out.cov_se = scale * std::sqrt(var_z / n);

    // coupled central finite difference on a fresh replica stream
    auto lo = DensityProfile::uniform(p - h);
    auto hi = DensityProfile::uniform(p + h);
    std::vector<double> diff(replicas);
    parallel_count(replicas, threads, [&](std::uint64_t rep) {
        SeedSpec s{seed ^ 0x9e3779b97f4a7c15ULL, rep};
        LazyBonds src_lo{s, lo, N}, src_hi{s, hi, N};
        double a = evaluate_event(src_hi, e) ? 1.0 : 0.0;
        double b = evaluate_event(src_lo, e) ? 1.0 : 0.0;
        diff[rep] = (a - b) / (2 * h);
        return false;
    });
    double md = 0;
    for (std::uint64_t i = 0; i < replicas; ++i) md += diff[i];
    md /= n;
    double vd = 0;
    for (std::uint64_t i = 0; i < replicas; ++i) vd += (diff[i] - md) * (diff[i] - md);
    vd /= (n - 1);
    out.fd_estimate = md;
    out.fd_se = std::sqrt(vd / n);
    return out;
}

RateFit extrapolate_rate(const std::vector<RateEstimate>& series) {
    std::vector<double> xs, ys, ws;
    for (const auto& re : series) {
        if (re.one_sided || re.prob.successes == 0) continue; // no point estimate
        double y = -std::log(re.prob.p_hat);
        double half = 0.5 * (std::log(std::max(re.prob.p_hat, 1e-300) /
                                      std::max(re.prob.ci_low, 1e-300)) +
                             std::log(std::max(re.prob.ci_high, 1e-300) /
                                      std::max(re.prob.p_hat, 1e-300)));
        double w = half > 0 ? 1.0 / (half * half) : 1.0;
        xs.push_back(re.N);
        ys.push_back(y);
        ws.push_back(w);
    }
    if (xs.size() < 3) throw std::invalid_argument("extrapolate_rate needs >= 3 usable points");
    RateFit fit;
    for (std::size_t i = 1; i < ys.size(); ++i)
        if (ys[i] < ys[i - 1]) fit.monotone_warning = true;
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sw += ws[i];
        sx += ws[i] * xs[i];
        sy += ws[i] * ys[i];
        sxx += ws[i] * xs[i] * xs[i];
        sxy += ws[i] * xs[i] * ys[i];
    }
    const double denom = sw * sxx - sx * sx;
    fit.rate = (sw * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.rate * sx) / sw;
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.residuals.push_back(ys[i] - (fit.intercept + fit.rate * xs[i]));
    return fit;
}

} // namespace perco
