// Copyright 2026 The qcorral Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCORRAL_DISORDER_HPP
#define QCORRAL_DISORDER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qcorral/analysis.hpp"
#include "qcorral/coin.hpp"
#include "qcorral/lattice.hpp"
#include "qcorral/protocol.hpp"

namespace qcorral {

/// Philox4x32-10 (Salmon et al., SC'11). Stateless: one call maps a 128-bit
/// counter and a 64-bit key to 128 random bits.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter counter, Key key) noexcept;
};

/// Uniform double in [0, 1) from two 32-bit words (53 bits used).
double unit_double(std::uint32_t hi, std::uint32_t lo) noexcept;

enum class DisorderKind { static_, dynamic, fluctuating };
enum class DisorderVariant { all, q_only, phase_only };

std::string_view disorder_kind_name(DisorderKind kind) noexcept;
std::string_view disorder_variant_name(DisorderVariant variant) noexcept;
/// Throws ParseError on unknown names.
DisorderKind parse_disorder_kind(std::string_view name);
DisorderVariant parse_disorder_variant(std::string_view name);

struct DisorderSpec {
    DisorderKind kind = DisorderKind::fluctuating;
    /// Maximum deviation as a fraction (0.0005 is 0.05%).
    double p = 0.0;
    /// Update period in steps; ignored for static disorder.
    int tau = 1;
    DisorderVariant variant = DisorderVariant::all;
    std::uint64_t master_seed = 0;

    bool operator==(const DisorderSpec &) const noexcept = default;
};

/// Throws ParameterError unless p >= 0 and tau >= 1.
void validate(const DisorderSpec &spec);

/// The (dq, dtheta, dphi) triple drawn for one (realization, site, epoch).
/// Each component is uniform on [-p, p] before the variant mask.
struct Deviation {
    double q = 0.0;
    double theta = 0.0;
    double phi = 0.0;
};

/// Site key used by dynamic disorder, where every site shares one draw.
inline constexpr std::uint32_t kSharedSiteKey = 0xffffffffu;

Deviation draw_deviation(const DisorderSpec &spec, std::uint64_t realization, std::uint32_t site_key, std::uint32_t epoch);

/// Wraps an angle into [-pi, pi].
double wrap_angle(double a) noexcept;

/// q <- min(1, |q + dq|), theta <- theta + pi dtheta, phi <- phi + pi dphi.
/// Returns true when the clamp at 1 fired.
bool apply_deviation(CoinParams &params, const Deviation &d) noexcept;

/// One disorder update of every site of `lattice` (params[i] is site
/// lattice.site(i)). Static and fluctuating disorder draw per site, dynamic
/// disorder draws once. Returns the number of clamps.
std::size_t perturb_coins(
    std::span<CoinParams> params, const Lattice &lattice, const DisorderSpec &spec, std::uint32_t epoch,
    std::uint64_t realization);

/// tau = round(0.1 t_M), at least 1.
int default_tau(int t_measure);

/// Lattice wide enough that nothing leaking through an imperfect wall can
/// reach the edge before t_measure.
Lattice light_cone_lattice(const Schedule &schedule, const GaussianSpec &spec, int t_measure);

struct DisorderedRun {
    double fidelity;
    std::size_t clamps;
};

/// Evolves the compiled protocol under disorder and measures F at its clean
/// t_measure. Gate switches keep the deviation accumulated at that site.
DisorderedRun run_disordered(
    const CompiledProtocol &protocol, const GaussianSpec &gaussian, const BlochSpin &spin, const DisorderSpec &spec,
    std::uint64_t realization, std::optional<Lattice> lattice = std::nullopt);

struct SweepPoint {
    DisorderKind kind;
    DisorderVariant variant;
    double p;
    /// One value per realization, in realization order.
    std::vector<double> fidelities;
    FidelityStats stats;
    std::size_t clamps = 0;
};

struct SweepReport {
    int t_measure = 0;
    int tau = 0;
    std::uint64_t master_seed = 0;
    int realizations = 0;
    std::vector<SweepPoint> points;

    const SweepPoint &at(DisorderKind kind, DisorderVariant variant, double p) const;
};

struct SweepRequest {
    std::vector<double> p_grid;
    std::vector<DisorderKind> kinds{DisorderKind::fluctuating};
    std::vector<DisorderVariant> variants{DisorderVariant::all};
    int realizations = 100;
    std::uint64_t master_seed = 0;
    /// 0 = default_tau(t_measure).
    int tau = 0;
    unsigned threads = 0;
};

/// Runs every (kind, variant, p, realization) combination of the request.
/// The spin should be (|up> + i|down>)/sqrt2 to match the reference study.
SweepReport disorder_sweep(
    const CompiledProtocol &protocol, const GaussianSpec &gaussian, const BlochSpin &spin, const SweepRequest &request);

/// p values 0, step, 2 step, ..., up to p_max inclusive (to within 1e-9 step).
std::vector<double> p_range(double p_max, double p_step);

}  // namespace qcorral

#endif
