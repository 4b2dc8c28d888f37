#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <random>

#include "pwlbif/parallel.hpp"

namespace pwlbif::detail {

inline constexpr std::size_t kPsiChunk = 1024;

/// Rejection sampler for Psi in (a, b) coordinates of the saddle frame.
class PsiSampler {
public:
    PsiSampler(const NormalFormParams& params, const ReducedParams& rp);

    [[nodiscard]] std::optional<PlanarPoint> draw(std::mt19937_64& rng) const;
    [[nodiscard]] double epsilon() const noexcept { return eps_; }

private:
    SaddleData saddle_;
    double eps_ = 0.0;
    double a_lo_ = 0.0;
    double a_hi_ = 0.0;
};

[[nodiscard]] bool in_psi0(const ReturnRecord& rec, const ReducedParams& rp);

[[nodiscard]] inline std::size_t chunk_count(std::size_t n) { return (n + kPsiChunk - 1) / kPsiChunk; }

[[nodiscard]] inline std::size_t chunk_quota(std::size_t n, std::size_t chunk) {
    return std::min(kPsiChunk, n - chunk * kPsiChunk);
}

}  // namespace pwlbif::detail

namespace pwlbif {

template <class Visit>
void for_each_psi_sample(const NormalFormParams& params, const ReducedParams& rp, const PsiSampleOptions& opts,
                         Visit&& visit) {
    const detail::PsiSampler sampler(params, rp);
    for (std::size_t c = 0; c < detail::chunk_count(opts.n_samples); ++c) {
        auto rng = stream_rng(opts.seed, c);
        const std::size_t quota = detail::chunk_quota(opts.n_samples, c);
        for (std::size_t done = 0; done < quota;) {
            const auto p = sampler.draw(rng);
            if (!p) continue;
            ++done;
            const ReturnResult res = first_return(params, *p, opts.max_steps);
            visit(res, res.returned() && detail::in_psi0(res.record, rp));
        }
    }
}

}  // namespace pwlbif
