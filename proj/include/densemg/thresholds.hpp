#pragma once

// Pass/fail thresholds used by the experiments and the acceptance suite.
// Every number an assertion compares against lives here.

#include <cstddef>
#include <cstdint>

namespace densemg::thresholds {

// exact-small: floating-point certificates.
inline constexpr double kExactIdentity = 1e-12;     // closed-form identities, table vs formula
inline constexpr double kChainStationarity = 1e-10;  // solved kernel vs closed form
inline constexpr double kNormalization = 1e-12;

// degree-gamma: median KS distance over replicas at the largest n.
inline constexpr double kDegreeKs = 0.06;

// edge-poisson: per-pair p-value floor and number of pairs that must clear it.
inline constexpr double kPoissonPValueFloor = 0.001;
inline constexpr double kPoissonPassFraction = 0.8;

// density-convergence: |t(A,G) - t(A,W)| < sigma * combined stderr + slack.
inline constexpr double kDensitySigma = 3.0;
inline constexpr double kDensitySlack = 0.01;
inline constexpr std::uint32_t kDensityMaxOffDiagonal = 3;
inline constexpr std::uint32_t kDensityMaxDiagonal = 4;

// spag-check: pointwise identity on the interior grid.
inline constexpr double kSpagIdentity = 1e-12;
inline constexpr std::size_t kSpagGrid = 19;

// ui-diagnostic: tail at the largest truncation level relative to the mean.
inline constexpr double kUiTailFraction = 0.05;
inline constexpr double kUiLevels[] = {0, 1, 2, 4, 8, 16, 32, 64, 128};

// moment identity: sigma multiplier for empirical moments.
inline constexpr double kMomentSigma = 4.0;

// Statistical experiments default to this many seed replicas.
inline constexpr std::size_t kDefaultReplicas = 10;

}  // namespace densemg::thresholds
