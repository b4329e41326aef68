#pragma once

#include "minmod/modulus.hpp"

#include <optional>
#include <string>
#include <vector>

namespace minmod {

enum class OrbitStatus { escaped, bounded, hit_zero, max_iterations };

// values[n] = log m^n(seed), values[0] = log seed. event_step is the step at
// which escape / the zero hit happened. resource_escape marks escape declared
// because the next radius left the evaluable range rather than because the
// threshold was crossed.
struct OrbitRecord {
    double seed = 0.0;
    std::vector<double> values;
    OrbitStatus status = OrbitStatus::max_iterations;
    int event_step = 0;
    bool strictly_increasing = false;
    double escape_log_threshold = 0.0;
    bool resource_escape = false;
};

// ln 10^300
inline constexpr double kDefaultEscapeLogThreshold = 690.77552789821368;

OrbitRecord iterate_min_modulus(const EntireFunctionSpec& spec, double seed,
                                int max_iter = 64,
                                double escape_log_threshold = kDefaultEscapeLogThreshold,
                                const CircleParams& params = {});

struct SeedSearchParams {
    int orbit_max_iter = 12;
    double evidence_decades = 2.0; // escape evidence: orbit grows this many decades
    double grid_ratio = 1.02;
    int tilde_check_points = 40;
    const char* unused = nullptr;
};

// Searches for a seed whose forward orbit under r -> m(r) increases strictly
// through evidence_decades decades within orbit_max_iter steps. Candidates
// are the local maxima of m on [t_min, t_max] in ascending radius, the first
// being the argmax of m over [t_min, tilde-m(t_min)]. Returns nothing when
// tilde-m(t) > t already fails somewhere on the subgrid.
std::optional<double> find_strict_seed(const EntireFunctionSpec& spec, double t_min,
                                       double t_max, const SeedSearchParams& sp = {},
                                       const CircleParams& params = {});

// Finite proxies for the escape equivalences: (a) a sampled orbit escapes,
// (b) a sampled orbit exceeds t_max, (c) tilde-m(t) > t across the grid,
// (e) an increasing chain t_{n+1} <= m(t_n) reaches t_max.
struct EquivalenceReport {
    bool orbit_escapes = false;      // (a)
    bool orbit_unbounded = false;    // (b)
    bool tilde_dominates = false;    // (c)
    bool chain_exists = false;       // (e)
    bool inconsistent = false;
    double witness_seed = 0.0;
    std::vector<double> grid_t;
    std::vector<double> grid_tilde_log;
};

EquivalenceReport check_equivalences(const EntireFunctionSpec& spec, double T,
                                     double T_max, const CircleParams& params = {});

// Finite-horizon evidence verdict for the iterated-minimum-modulus property.
struct PropertyVerdict {
    enum class Kind { holds, fails_evidence, inconclusive } kind;
    double witness_seed = 0.0;         // holds
    OrbitRecord witness_orbit;         // holds
    double tilde_ratio_bound = 0.0;    // fails_evidence: max tilde-m(r)/r
    double range_min = 0.0, range_max = 0.0;
    double dominance_from = 0.0;       // first grid radius with tilde-m(t) > t onward
};

PropertyVerdict classify_property(const EntireFunctionSpec& spec,
                                  std::optional<double> range_min = std::nullopt,
                                  std::optional<double> range_max = std::nullopt,
                                  const CircleParams& params = {});

// CSV columns: step, log_radius, log_min_modulus, status.
void export_orbit_csv(const OrbitRecord& orbit, const std::string& path);

const char* orbit_status_name(OrbitStatus s);

} // namespace minmod
