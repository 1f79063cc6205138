#ifndef POLEST_NORMS_HPP
#define POLEST_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "error.hpp"
#include "form.hpp"
#include "lp_space.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace polest {

enum class EstimateKind { lower_certified, heuristic };

inline std::string to_string(EstimateKind k) {
    return k == EstimateKind::lower_certified ? "lower-certified" : "heuristic";
}

/// An estimate of a supremum over unit spheres. A lower-certified estimate is
/// the largest value actually achieved at the witness vectors, so it never
/// exceeds the true supremum (up to floating-point rounding).
struct NormEstimate {
    double value = 0.0;
    EstimateKind kind = EstimateKind::lower_certified;
    std::uint64_t evaluations = 0;
    std::uint64_t seed = 0;
    Partition partition;
    std::vector<Vector> witness;
};

struct NormOptions {
    int budget = 256;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    int max_iterations = 200;
    bool vertex_polish = true;
};

namespace detail {

inline double surrogate_p(double p) {
    if (std::isinf(p)) return 100.0;
    if (p == 1.0) return 1.01;
    return p;
}

inline bool needs_polish_phase(double p) { return std::isinf(p) || p == 1.0; }

inline void normalize_in_place(Vector& x, double p) {
    double r = LpSpace::lp_norm(x, p);
    if (r > 0.0)
        for (auto& v : x) v /= r;
}

/// Gradient of ||x||_p at a unit vector (smooth p only).
inline void norm_gradient(const Vector& x, double p, Vector& out) {
    out.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        double a = std::abs(x[j]);
        out[j] = a == 0.0 ? 0.0 : std::copysign(std::pow(a, p - 1.0), x[j]);
    }
}

/// |L^(x)| on one sphere.
class PolyObjective {
public:
    explicit PolyObjective(const SymmetricForm& form) : eval_(form), grad_(static_cast<std::size_t>(form.dim())) {}

    double value(std::span<const Vector> x) { return eval_.value(x[0]); }
    double value_and_gradient(std::span<const Vector> x, std::span<Vector> g) {
        return eval_.value_and_gradient(x[0], g[0]);
    }
    double certify(std::span<const Vector> x, double p) {
        double r = LpSpace::lp_norm(x[0], p);
        return std::abs(eval_.value(x[0])) / std::pow(r, eval_.form().degree());
    }

private:
    PolyEvaluator eval_;
    Vector grad_;
};

/// |L(x_1^{k_1} ... x_n^{k_n})| on a product of spheres.
class MixedObjective {
public:
    static constexpr int kGroupedDegreeLimit = 12;

    MixedObjective(const SymmetricForm& form, const Partition& partition)
        : form_(&form), parts_(partition.parts()) {
        if (form.degree() <= kGroupedDegreeLimit) {
            grouped_.emplace(form, parts_);
        } else {
            for (int j = 0; j < form.dim(); ++j) partials_.push_back(form.partial(j));
        }
    }

    double value(std::span<const Vector> x) {
        if (grouped_) return grouped_->value(x);
        return mixed_value_expanded(*form_, parts_, x);
    }

    double value_and_gradient(std::span<const Vector> x, std::span<Vector> g) {
        if (grouped_) return grouped_->value_and_gradient(x, g);
        const int m = form_->degree();
        std::vector<int> k = parts_;
        for (std::size_t i = 0; i < k.size(); ++i) {
            --k[i];
            for (std::size_t j = 0; j < partials_.size(); ++j)
                g[i][j] = parts_[i] / static_cast<double>(m) * mixed_value_expanded(partials_[j], k, x);
            ++k[i];
        }
        return mixed_value_expanded(*form_, parts_, x);
    }

    double certify(std::span<const Vector> x, double p) {
        double scale = 1.0;
        for (std::size_t i = 0; i < x.size(); ++i) scale *= std::pow(LpSpace::lp_norm(x[i], p), parts_[i]);
        return std::abs(mixed_value_expanded(*form_, parts_, x)) / scale;
    }

private:
    const SymmetricForm* form_;
    std::vector<int> parts_;
    std::optional<GroupedMixedEvaluator> grouped_;
    std::vector<SymmetricForm> partials_;
};

struct AscentStats {
    std::uint64_t evaluations = 0;
};

/// Projected gradient ascent of |F| over a product of l_p spheres with
/// backtracking. On smooth spheres the step follows the tangential gradient of
/// |F(x)| / prod ||x_i||^{k_i}; otherwise the raw gradient, followed by projection.
/// Directions are normalized to unit length, so the trajectory does not depend on
/// the overall scale of F.
template <class Objective>
double ascend(Objective& obj, std::vector<Vector>& x, double p, std::span<const int> degrees, int max_iterations,
              bool smooth, AscentStats& stats) {
    const std::size_t n = x.size();
    for (auto& v : x) normalize_in_place(v, p);
    std::vector<Vector> grad(n, Vector(x[0].size()));
    std::vector<Vector> dir = grad;
    std::vector<Vector> trial = x;
    Vector normal;
    double f = obj.value_and_gradient(x, grad);
    ++stats.evaluations;
    double step = 0.5;
    for (int iter = 0; iter < max_iterations; ++iter) {
        const double s = f >= 0.0 ? 1.0 : -1.0;
        double gnorm2 = 0.0;
        for (const auto& g : grad)
            for (double v : g) gnorm2 += v * v;
        const double gnorm = std::sqrt(gnorm2);
        if (!(gnorm > 0.0)) break;
        double dnorm = gnorm;
        if (smooth && f != 0.0) {
            double t2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                norm_gradient(x[i], p, normal);
                for (std::size_t j = 0; j < normal.size(); ++j) {
                    dir[i][j] = s * grad[i][j] - degrees[i] * std::abs(f) * normal[j];
                    t2 += dir[i][j] * dir[i][j];
                }
            }
            dnorm = std::sqrt(t2);
            if (dnorm <= 1e-10 * gnorm) break;
        } else {
            // on the l_inf sphere, saturated coordinates cannot move outward
            const bool box = std::isinf(p);
            double d2 = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < grad[i].size(); ++j) {
                    double v = s * grad[i][j];
                    if (box && std::abs(x[i][j]) >= 1.0 - 1e-12 && v * x[i][j] > 0.0) v = 0.0;
                    dir[i][j] = v;
                    d2 += v * v;
                }
            dnorm = std::sqrt(d2);
            if (!(dnorm > 1e-14 * gnorm)) break;
        }
        bool moved = false;
        while (step >= 1e-12) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < x[i].size(); ++j) trial[i][j] = x[i][j] + step * dir[i][j] / dnorm;
                normalize_in_place(trial[i], p);
            }
            double ft = obj.value(trial);
            ++stats.evaluations;
            if (std::abs(ft) > std::abs(f)) {
                x.swap(trial);
                f = obj.value_and_gradient(x, grad);
                ++stats.evaluations;
                step = std::min(2.0 * step, 1.0);
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return std::abs(f);
}

struct Candidate {
    double value = -1.0;
    Partition partition;
    std::vector<Vector> point;
};

/// Larger value wins; ties go to the lexicographically smaller partition,
/// then to the earlier candidate.
inline bool better(const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.partition < b.partition;
}

/// One full restart: surrogate/true-sphere ascent, then certification on the true sphere.
template <class Objective>
Candidate run_restart(Objective& obj, std::vector<Vector> start, double p, const Partition& partition,
                      const NormOptions& options, AscentStats& stats) {
    const bool polish = needs_polish_phase(p);
    const double ps = surrogate_p(p);
    ascend(obj, start, ps, partition.parts(), options.max_iterations, true, stats);
    if (polish) {
        for (auto& v : start) normalize_in_place(v, p);
        ascend(obj, start, p, partition.parts(), options.max_iterations / 2, false, stats);
    }
    for (auto& v : start) normalize_in_place(v, p);
    Candidate c;
    c.value = obj.certify(start, p);
    ++stats.evaluations;
    c.partition = partition;
    c.point = std::move(start);
    return c;
}

/// Ascent on the true sphere starting from an existing candidate; keeps the
/// candidate unless the certified value improves.
template <class Objective>
void polish_candidate(Objective& obj, Candidate& c, double p, const NormOptions& options, std::uint64_t& evaluations) {
    if (c.point.empty()) return;
    AscentStats stats;
    std::vector<Vector> pt = c.point;
    ascend(obj, pt, p, c.partition.parts(), options.max_iterations, !needs_polish_phase(p), stats);
    for (auto& v : pt) normalize_in_place(v, p);
    const double value = obj.certify(pt, p);
    evaluations += stats.evaluations + 1;
    if (value > c.value) {
        c.value = value;
        c.point = std::move(pt);
    }
}

/// Sign-vertex directions: {-1,0,1}^d (or {-1,1}^d) with first nonzero entry positive.
inline std::vector<Vector> vertex_directions(int d, bool with_zeros) {
    std::vector<Vector> out;
    const int base = with_zeros ? 3 : 2;
    std::size_t total = 1;
    for (int j = 0; j < d; ++j) total *= static_cast<std::size_t>(base);
    for (std::size_t code = 0; code < total; ++code) {
        Vector v(static_cast<std::size_t>(d));
        std::size_t r = code;
        bool nonzero = false, first_positive = true;
        for (int j = 0; j < d; ++j) {
            int digit = static_cast<int>(r % static_cast<std::size_t>(base));
            r /= static_cast<std::size_t>(base);
            double e = with_zeros ? static_cast<double>(digit - 1) : (digit ? -1.0 : 1.0);
            if (!nonzero && e != 0.0) {
                nonzero = true;
                first_positive = e > 0.0;
            }
            v[static_cast<std::size_t>(j)] = e;
        }
        if (nonzero && first_positive) out.push_back(std::move(v));
    }
    return out;
}

inline std::vector<Vector> poly_vertex_directions(int d) {
    if (d <= 8) return vertex_directions(d, true);
    if (d <= 16) return vertex_directions(d, false);
    return {};
}

/// Vertex directions per vector for n-vector tuples, or empty when too many.
inline std::vector<Vector> mixed_vertex_directions(int d, int n, std::size_t max_tuples = 2048) {
    for (bool zeros : {true, false}) {
        if (d > 16) break;
        auto dirs = vertex_directions(d, zeros);
        double tuples = std::pow(static_cast<double>(dirs.size()), n);
        if (tuples <= static_cast<double>(max_tuples)) return dirs;
    }
    return {};
}

inline Partition lift_partition(const Partition& from, std::vector<Vector>& vectors, int n) {
    std::vector<std::pair<int, Vector>> blocks;
    for (int i = 0; i < from.n(); ++i)
        blocks.emplace_back(from[static_cast<std::size_t>(i)], vectors[static_cast<std::size_t>(i)]);
    while (static_cast<int>(blocks.size()) < n) {
        auto it = std::max_element(blocks.begin(), blocks.end(),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it == blocks.end() || it->first < 2) throw invalid_input("cannot lift witness: too few parts");
        --it->first;
        Vector copy = it->second;
        blocks.emplace_back(1, std::move(copy));
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<int> parts;
    vectors.clear();
    for (auto& [k, v] : blocks) {
        parts.push_back(k);
        vectors.push_back(std::move(v));
    }
    return Partition(parts);
}

} // namespace detail

/// Lower-certified estimate of ||L^|| = sup{|L^(x)| : ||x||_p = 1} by multistart
/// projected gradient ascent plus sign-vertex candidates.
inline NormEstimate estimate_poly_norm(const SymmetricForm& form, const LpSpace& space, const NormOptions& options = {}) {
    detail::require(space.dim() == form.dim(), "space dimension differs from form dimension");
    detail::require(options.budget >= 1, "restart budget must be at least 1");
    const int d = form.dim();
    const int m = form.degree();
    const double p = space.p();
    NormEstimate est;
    est.seed = options.seed;
    est.partition = Partition({m});
    if (form.is_zero() || m == 0) {
        Vector e(static_cast<std::size_t>(d), 0.0);
        e[0] = 1.0;
        est.value = form.is_zero() ? 0.0 : std::abs(form.coefficient(0));
        est.witness = {e};
        return est;
    }
    const auto budget = static_cast<std::size_t>(options.budget);
    std::vector<detail::Candidate> results(budget);
    std::vector<std::uint64_t> evals(budget, 0);
    parallel_for(budget, options.threads, [&](std::size_t r) {
        detail::PolyObjective obj(form);
        Stream rng(options.seed, r);
        std::vector<Vector> start{rng.normal_vector(d)};
        detail::AscentStats stats;
        results[r] = detail::run_restart(obj, std::move(start), p, est.partition, options, stats);
        evals[r] = stats.evaluations;
    });
    detail::Candidate best;
    for (std::size_t r = 0; r < budget; ++r) {
        est.evaluations += evals[r];
        if (detail::better(results[r], best)) best = std::move(results[r]);
    }
    if (options.vertex_polish) {
        detail::PolyObjective obj(form);
        for (auto& v : detail::poly_vertex_directions(d)) {
            detail::normalize_in_place(v, p);
            std::vector<Vector> pt{v};
            detail::Candidate c{obj.certify(pt, p), est.partition, pt};
            ++est.evaluations;
            if (c.value > best.value) best = std::move(c);
        }
        detail::polish_candidate(obj, best, p, options, est.evaluations);
    }
    est.value = best.value;
    est.witness = std::move(best.point);
    return est;
}

namespace detail {

/// Stream-id prefix for a partition, so restarts depend only on the partition itself.
inline std::uint64_t partition_stream(const Partition& k) {
    std::uint64_t h = 0x6A09E667F3BCC908ull;
    for (int part : k.parts()) h = splitmix64(h ^ static_cast<std::uint64_t>(part));
    return h;
}

inline Candidate best_vertex_tuple(const SymmetricForm& form, const Partition& part, double p, std::uint64_t& evaluations) {
    const int n = part.n();
    auto dirs = mixed_vertex_directions(form.dim(), n);
    if (dirs.empty()) return {};
    for (auto& v : dirs) normalize_in_place(v, p);
    MixedObjective obj(form, part);
    double screen_best = -1.0;
    std::vector<Vector> screen_point;
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    std::vector<Vector> pt(static_cast<std::size_t>(n));
    while (true) {
        for (std::size_t i = 0; i < pt.size(); ++i) pt[i] = dirs[idx[i]];
        double v = std::abs(obj.value(pt));
        ++evaluations;
        if (v > screen_best) {
            screen_best = v;
            screen_point = pt;
        }
        std::size_t i = 0;
        while (i < idx.size() && idx[i] + 1 == dirs.size()) idx[i++] = 0;
        if (i == idx.size()) break;
        ++idx[i];
    }
    ++evaluations;
    return {obj.certify(screen_point, p), part, screen_point};
}

} // namespace detail

/// Lower-certified estimate of sup |L(x_1^{k_1} ... x_n^{k_n})| over unit vectors for one
/// fixed partition.
inline NormEstimate estimate_partition_value(const SymmetricForm& form, const Partition& part, const LpSpace& space,
                                             const NormOptions& options = {}) {
    detail::require(part.m() == form.degree(), "partition order differs from form degree");
    detail::require(space.dim() == form.dim(), "space dimension differs from form dimension");
    detail::require(options.budget >= 1, "restart budget must be at least 1");
    const int d = form.dim();
    const int n = part.n();
    const double p = space.p();
    NormEstimate est;
    est.seed = options.seed;
    est.partition = part;
    if (n == 1) {
        est = estimate_poly_norm(form, space, options);
        est.partition = part;
        return est;
    }
    if (form.is_zero()) {
        Vector e(static_cast<std::size_t>(d), 0.0);
        e[0] = 1.0;
        est.witness.assign(static_cast<std::size_t>(n), e);
        return est;
    }
    const auto budget = static_cast<std::size_t>(options.budget);
    const std::uint64_t prefix = detail::partition_stream(part);
    std::vector<detail::Candidate> results(budget);
    std::vector<std::uint64_t> evals(budget, 0);
    parallel_for(budget, options.threads, [&](std::size_t r) {
        detail::MixedObjective obj(form, part);
        Stream rng(options.seed, prefix + r);
        std::vector<Vector> start;
        for (int i = 0; i < n; ++i) start.push_back(rng.normal_vector(d));
        detail::AscentStats stats;
        results[r] = detail::run_restart(obj, std::move(start), p, part, options, stats);
        evals[r] = stats.evaluations;
    });
    detail::Candidate best;
    for (std::size_t r = 0; r < budget; ++r) {
        est.evaluations += evals[r];
        if (detail::better(results[r], best)) best = std::move(results[r]);
    }
    if (options.vertex_polish) {
        auto c = detail::best_vertex_tuple(form, part, p, est.evaluations);
        if (c.value > best.value) best = std::move(c);
        detail::MixedObjective obj(form, part);
        detail::polish_candidate(obj, best, p, options, est.evaluations);
    }
    est.value = best.value;
    est.witness = std::move(best.point);
    return est;
}

/// Lower-certified estimate of ||L||_(n): exhaustive over partitions of m into n positive
/// parts, multistart joint ascent over n unit vectors for each. Pooled estimates (for
/// example of ||L^|| or ||L||_(n-1)) are lifted into n-part candidates, which makes the
/// chain ||L^|| <= ||L||_(n) hold for the certified values.
inline NormEstimate estimate_mixed_norm(const SymmetricForm& form, int n, const LpSpace& space,
                                        const NormOptions& options = {}, std::span<const NormEstimate> pool = {}) {
    const int m = form.degree();
    detail::require(n >= 1, "mixed norm needs n >= 1");
    detail::require(n <= std::max(m, 1), "mixed norm needs n <= m");
    detail::require(space.dim() == form.dim(), "space dimension differs from form dimension");
    if (n == 1 && pool.empty()) return estimate_poly_norm(form, space, options);

    NormEstimate est;
    est.seed = options.seed;
    detail::Candidate best;
    std::vector<Partition> parts = n == 1 ? std::vector<Partition>{Partition({m})} : partitions_into(m, n);
    for (const auto& part : parts) {
        auto e = estimate_partition_value(form, part, space, options);
        est.evaluations += e.evaluations;
        detail::Candidate c{e.value, part, std::move(e.witness)};
        if (detail::better(c, best)) best = std::move(c);
    }
    if (!form.is_zero()) {
        for (const auto& prior : pool) {
            if (prior.witness.empty() || prior.partition.n() > n || prior.partition.m() != m) continue;
            std::vector<Vector> vecs = prior.witness;
            Partition lifted = detail::lift_partition(prior.partition, vecs, n);
            detail::MixedObjective obj(form, lifted);
            // the lifted tuple is the same point, so the prior's achieved value carries over
            detail::Candidate c{std::max(obj.certify(vecs, space.p()), prior.value), lifted, vecs};
            ++est.evaluations;
            if (detail::better(c, best)) best = std::move(c);
        }
    }
    est.value = best.value;
    est.partition = best.partition;
    est.witness = std::move(best.point);
    return est;
}

// ---------------------------------------------------------------------------
// Grid oracle
// ---------------------------------------------------------------------------

struct GridCaps {
    int max_dim = 4;
    std::uint64_t max_points = std::uint64_t{1} << 26;
};

/// Exhaustive |L^| over a deterministic mesh of the unit sphere: hyperspherical angles
/// for p = 2, otherwise the boundary of the cube mesh [-1,1]^d mapped radially.
inline NormEstimate grid_norm_oracle(const SymmetricForm& form, const LpSpace& space, int resolution,
                                     const GridCaps& caps = {}) {
    const int d = form.dim();
    detail::require(space.dim() == d, "space dimension differs from form dimension");
    detail::require(resolution >= 2, "grid resolution must be at least 2");
    if (d > caps.max_dim) throw cap_exceeded("grid_norm_oracle: dimension exceeds cap");
    double planned = space.p() == 2.0 ? std::pow(static_cast<double>(resolution), d - 1)
                                      : 2.0 * d * std::pow(static_cast<double>(resolution), d - 1);
    if (planned > static_cast<double>(caps.max_points)) throw cap_exceeded("grid_norm_oracle: mesh exceeds point cap");

    NormEstimate est;
    est.partition = Partition({form.degree()});
    PolyEvaluator eval(form);
    const double p = space.p();
    Vector best_x;
    double best = -1.0;
    auto visit = [&](Vector x) {
        detail::normalize_in_place(x, p);
        double r = LpSpace::lp_norm(x, p);
        double v = std::abs(eval.value(x)) / std::pow(r, form.degree());
        ++est.evaluations;
        if (v > best) {
            best = v;
            best_x = std::move(x);
        }
    };
    const int res = resolution;
    if (d == 1) {
        visit({1.0});
        visit({-1.0});
    } else if (p == 2.0) {
        // angles theta_1..theta_{d-2} in [0, pi] (endpoints included), last angle in [0, 2pi)
        std::vector<int> idx(static_cast<std::size_t>(d - 1), 0);
        while (true) {
            std::vector<double> ang(static_cast<std::size_t>(d - 1));
            for (int a = 0; a < d - 2; ++a) ang[static_cast<std::size_t>(a)] = std::numbers::pi * idx[static_cast<std::size_t>(a)] / (res - 1);
            ang[static_cast<std::size_t>(d - 2)] = 2.0 * std::numbers::pi * idx[static_cast<std::size_t>(d - 2)] / res;
            Vector x(static_cast<std::size_t>(d));
            double sin_prod = 1.0;
            for (int a = 0; a < d - 1; ++a) {
                x[static_cast<std::size_t>(a)] = sin_prod * std::cos(ang[static_cast<std::size_t>(a)]);
                sin_prod *= std::sin(ang[static_cast<std::size_t>(a)]);
            }
            x[static_cast<std::size_t>(d - 1)] = sin_prod;
            visit(std::move(x));
            int a = 0;
            while (a < d - 1 && idx[static_cast<std::size_t>(a)] + 1 == res) idx[static_cast<std::size_t>(a++)] = 0;
            if (a == d - 1) break;
            ++idx[static_cast<std::size_t>(a)];
        }
    } else {
        for (int face = 0; face < d; ++face) {
            for (double side : {1.0, -1.0}) {
                std::vector<int> idx(static_cast<std::size_t>(d - 1), 0);
                while (true) {
                    Vector x(static_cast<std::size_t>(d));
                    int a = 0;
                    for (int j = 0; j < d; ++j) {
                        if (j == face) {
                            x[static_cast<std::size_t>(j)] = side;
                        } else {
                            x[static_cast<std::size_t>(j)] = -1.0 + 2.0 * idx[static_cast<std::size_t>(a)] / (res - 1);
                            ++a;
                        }
                    }
                    visit(std::move(x));
                    a = 0;
                    while (a < d - 1 && idx[static_cast<std::size_t>(a)] + 1 == res) idx[static_cast<std::size_t>(a++)] = 0;
                    if (a == d - 1) break;
                    ++idx[static_cast<std::size_t>(a)];
                }
            }
        }
    }
    est.value = best;
    est.witness = {best_x};
    return est;
}

/// (||L||_(n) / ||L^||)^{1/m} from the two estimators, with the polynomial-norm
/// witness pooled into the mixed estimate.
inline double ratio_statistic(const SymmetricForm& form, int n, const LpSpace& space, const NormOptions& options = {}) {
    auto poly = estimate_poly_norm(form, space, options);
    detail::require(poly.value > 0.0, "ratio_statistic: polynomial norm estimate is zero");
    if (n == 1) return 1.0;
    NormEstimate pool[] = {poly};
    auto mixed = estimate_mixed_norm(form, n, space, options, pool);
    return std::pow(mixed.value / poly.value, 1.0 / form.degree());
}

} // namespace polest

#endif
