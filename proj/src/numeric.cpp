#include "torres/numeric.hpp"

#include <cmath>
#include <string>
#include <thread>

#include "torres/differentials.hpp"
#include "torres/errors.hpp"

namespace torres {

namespace {

using cdouble = std::complex<double>;

constexpr int kBlocks = 512;
constexpr double kPi = 3.14159265358979323846;

// Deterministic per-block substream: splitmix64 over (seed, block).
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed, std::uint64_t block) {
        state = seed ^ (0x9E3779B97F4A7C15ull * (block + 1));
        next_u64();
        next_u64();
    }
    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
};

// Dehomogenized polynomial compiled to doubles for fast evaluation.
struct CompiledPoly {
    struct Term {
        std::vector<int> e;
        double coeff;
    };
    std::vector<Term> terms;

    static CompiledPoly from(const Polynomial& p) {
        CompiledPoly c;
        for (const auto& [e, q] : p.terms()) c.terms.push_back({e, q.get_d()});
        return c;
    }

    cdouble eval(const std::vector<cdouble>& u) const {
        cdouble acc = 0.0;
        for (const auto& t : terms) {
            cdouble v = t.coeff;
            for (size_t i = 0; i < u.size(); ++i) {
                for (int k = 0; k < t.e[i]; ++k) v *= u[i];
            }
            acc += v;
        }
        return acc;
    }
};

cdouble det_small(const std::vector<std::vector<cdouble>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (n == 3) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
    throw InternalError("det_small: unsupported size");
}

struct BlockSums {
    cdouble sum{0.0, 0.0};
    double sum_sq = 0.0;  // sum of |value|^2
};

// Runs the sampler over all blocks with a fixed block decomposition and a
// fixed reduction order, so results are bit-identical for any thread count.
template <typename PerSample>
IntegralEstimate run_sampler(long samples, std::uint64_t seed, int dim,
                             const PerSample& body) {
    if (samples < 1000)
        throw InputError("sampler: at least 1000 samples are required");
    std::vector<BlockSums> blocks(kBlocks);
    long base = samples / kBlocks;
    long extra = samples % kBlocks;

    auto run_block = [&](int b) {
        long count = base + (b < extra ? 1 : 0);
        long offset = b * base + std::min<long>(b, extra);
        Rng rng(seed, static_cast<std::uint64_t>(b));
        BlockSums s;
        std::vector<double> angles(2 * dim);
        for (long k = 0; k < count; ++k) {
            long global = offset + k;
            // stratify the first radial angle over the whole run
            angles[0] = (static_cast<double>(global) + rng.next_double()) /
                        static_cast<double>(samples) * (kPi / 2);
            for (int j = 1; j < 2 * dim; ++j) {
                angles[j] = rng.next_double() *
                            (j % 2 == 0 ? kPi / 2 : 2 * kPi);
            }
            cdouble v = body(angles);
            s.sum += v;
            s.sum_sq += std::norm(v);
        }
        blocks[b] = s;
    };

    unsigned hw = std::thread::hardware_concurrency();
    int nthreads = static_cast<int>(hw == 0 ? 1 : std::min<unsigned>(hw, 16));
    if (nthreads > 1) {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(nthreads);
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (int b = t; b < kBlocks; b += nthreads) run_block(b);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    } else {
        for (int b = 0; b < kBlocks; ++b) run_block(b);
    }

    cdouble total{0.0, 0.0};
    double total_sq = 0.0;
    for (const auto& b : blocks) {  // fixed order
        total += b.sum;
        total_sq += b.sum_sq;
    }
    IntegralEstimate est;
    double n = static_cast<double>(samples);
    est.value = total / n;
    double var = total_sq / n - std::norm(est.value);
    est.std_error = var > 0 ? std::sqrt(var / n) : 0.0;
    est.samples_used = samples;
    return est;
}

// angles (theta_1, phi_1, theta_2, phi_2, ...) -> chart point and the
// change-of-variables weight prod tan(theta) sec^2(theta), with the per-pair
// domain volume (pi/2)(2 pi) folded in.
double chart_point(const std::vector<double>& angles, int dim, std::vector<cdouble>& u) {
    double w = 1.0;
    for (int j = 0; j < dim; ++j) {
        double theta = angles[2 * j];
        double phi = angles[2 * j + 1];
        double t = std::tan(theta);
        double sec2 = 1.0 + t * t;
        u[j] = cdouble(t * std::cos(phi), t * std::sin(phi));
        w *= t * sec2 * (kPi / 2) * (2 * kPi);
    }
    return w;
}

}  // namespace

IntegralEstimate residue_integral(const Fan& fan, const ClassGroup& cg, const DegreeClass& beta,
                                  const std::vector<Polynomial>& f, const Polynomial& g,
                                  const SamplerConfig& config) {
    int n = fan.rank;
    if (!fan.smooth || !fan.simplicial)
        throw PreconditionError("residue_integral: fan must be smooth and simplicial");
    if (n > 2) throw PreconditionError("residue_integral: rank > 2 is not supported");
    if (static_cast<int>(f.size()) != n + 1)
        throw PreconditionError("residue_integral: expected rank+1 sections");
    if (config.chart < 0 || config.chart >= static_cast<int>(fan.max_cones.size()))
        throw InputError("residue_integral: chart index out of range");
    for (size_t i = 0; i < f.size(); ++i) {
        auto d = is_homogeneous(fan, cg, f[i]);
        if (!d || !(*d == beta))
            throw PreconditionError("residue_integral: section " + std::to_string(i) +
                                    " is not homogeneous of the stated class");
    }
    DegreeClass rho = cg.lin(n + 1, beta, -1, beta0(fan, cg));
    if (!g.is_zero()) {
        auto dg = is_homogeneous(fan, cg, g);
        if (!dg || !(*dg == rho))
            throw PreconditionError("residue_integral: g must have the critical degree");
    }

    std::vector<int> I = fan.max_cones[config.chart];
    long dn = det_n(fan, I);
    int orient = omega_orientation(fan);

    CompiledPoly gg = CompiledPoly::from(dehomogenize(fan, g, I));
    std::vector<CompiledPoly> ff, dff;  // f_j and d f_j / d u_i, row-major
    for (const auto& fj : f) ff.push_back(CompiledPoly::from(dehomogenize(fan, fj, I)));
    for (int i = 0; i < n; ++i) {
        for (const auto& fj : f) {
            dff.push_back(CompiledPoly::from(dehomogenize(fan, fj.partial(I[i]), I)));
        }
    }

    double constant = 1.0;
    for (int k = 2; k <= n; ++k) constant *= k;  // n!
    constant /= std::pow(kPi, n);
    constant *= static_cast<double>(orient * dn);

    auto body = [&](const std::vector<double>& angles) -> cdouble {
        std::vector<cdouble> u(n);
        double w = chart_point(angles, n, u);
        std::vector<std::vector<cdouble>> m(n + 1, std::vector<cdouble>(n + 1));
        double denom = 0.0;
        for (int j = 0; j <= n; ++j) {
            m[0][j] = ff[j].eval(u);
            denom += std::norm(m[0][j]);
        }
        if (!(denom > 0.0))
            throw PreconditionError("residue_integral: integrand singularity encountered "
                                    "(the sections appear to share a zero)");
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= n; ++j) m[i + 1][j] = dff[i * (n + 1) + j].eval(u);
        }
        cdouble det = det_small(m);
        double dpow = 1.0;
        for (int k = 0; k <= n; ++k) dpow *= denom;
        cdouble v = constant * gg.eval(u) * std::conj(det) / dpow * w;
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw PreconditionError("residue_integral: integrand singularity encountered "
                                    "(the sections appear to share a zero)");
        return v;
    };

    return run_sampler(config.sample_count, config.seed, n, body);
}

IntegralEstimate appendix_normalization(int n, const SamplerConfig& config) {
    if (n != 1 && n != 2) throw InputError("appendix_normalization: only n in {1,2}");
    double constant = n == 1 ? 1.0 : 2.0;  // n!
    constant /= std::pow(kPi, n);
    auto body = [&](const std::vector<double>& angles) -> cdouble {
        std::vector<cdouble> u(n);
        double w = chart_point(angles, n, u);
        double denom = 1.0;
        for (int j = 0; j < n; ++j) denom += std::norm(u[j]);
        double dpow = 1.0;
        for (int k = 0; k <= n; ++k) dpow *= denom;
        return constant / dpow * w;
    };
    return run_sampler(config.sample_count, config.seed, n, body);
}

}  // namespace torres
